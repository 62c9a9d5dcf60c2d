import pytest

from trigspline.grid import attach_samples, make_grid

REF = (2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0)


@pytest.fixture
def ref0():
    return attach_samples(make_grid(0, 9), REF)


@pytest.fixture
def ref1():
    return attach_samples(make_grid(1, 9), REF)
