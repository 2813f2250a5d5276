import pytest

from geproci.cli import fixture_text
from geproci.fields import parse_field_spec
from geproci.projgeom import PointSet, enumerate_projective_space, read_point_set
from geproci.spreads import read_spread


@pytest.fixture(scope="session")
def F2():
    return parse_field_spec("p=2")


@pytest.fixture(scope="session")
def F3():
    return parse_field_spec("p=3")


@pytest.fixture(scope="session")
def F4():
    return parse_field_spec("p=2;ext=2")


@pytest.fixture(scope="session")
def F5():
    return parse_field_spec("p=5")


@pytest.fixture(scope="session")
def P3F2(F2):
    return PointSet(F2, enumerate_projective_space(F2, 3), 3)


@pytest.fixture(scope="session")
def P3F3(F3):
    return PointSet(F3, enumerate_projective_space(F3, 3), 3)


@pytest.fixture(scope="session")
def forty_points_q7():
    return read_point_set(fixture_text("complement-40-q7.points"))


@pytest.fixture(scope="session")
def mps7_q3():
    return read_spread(fixture_text("mps7-q3.spread"))
