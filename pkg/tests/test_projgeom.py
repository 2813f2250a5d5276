"""PG(3,q) points, lines, incidence, and file formats."""
import pytest

from geproci.projgeom import (
    EqualPoints,
    PointSet,
    ProjectivePoint,
    all_lines,
    collinear_subsets,
    enumerate_projective_space,
    is_coplanar,
    line_through,
    lines_skew,
    matrix_rank,
    read_point_set,
    write_point_set,
)


@pytest.mark.parametrize("spec,npts,nlines", [
    ("p=2", 15, 35),
    ("p=3", 40, 130),
    ("p=2;ext=2", 85, 357),
])
def test_point_and_line_counts(spec, npts, nlines):
    from geproci.fields import parse_field_spec

    F = parse_field_spec(spec)
    pts = enumerate_projective_space(F, 3)
    assert len(pts) == npts
    assert len({p.key() for p in pts}) == npts
    lines = all_lines(F)
    assert len(lines) == nlines
    assert len({L.key() for L in lines}) == nlines


def test_plane_point_count(F3):
    assert len(enumerate_projective_space(F3, 2)) == 13


def test_each_line_has_q_plus_1_points(F3):
    for L in all_lines(F3)[:20]:
        pts = L.points()
        assert len(pts) == 4
        assert len({p.key() for p in pts}) == 4
        for p in pts:
            assert L.contains(p)


def test_point_normalization(F5):
    a = ProjectivePoint(F5, [2, 4, 0, 2])
    b = ProjectivePoint(F5, [1, 2, 0, 1])
    assert a.key() == b.key()


def test_line_through_is_order_independent(F2):
    a = ProjectivePoint(F2, [1, 0, 0, 0])
    b = ProjectivePoint(F2, [0, 1, 1, 0])
    assert line_through(a, b).key() == line_through(b, a).key()
    with pytest.raises(EqualPoints):
        line_through(a, ProjectivePoint(F2, [1, 0, 0, 0]))


def test_skewness_symmetric_and_meets_self(F2):
    lines = all_lines(F2)
    for L in lines[:8]:
        assert not lines_skew(L, L)
        for M in lines[:8]:
            assert lines_skew(L, M) == lines_skew(M, L)


def test_point_line_incidence_totals(F3):
    # each point of PG(3,3) lies on q^2+q+1 = 13 lines
    lines = all_lines(F3)
    p = ProjectivePoint(F3, [1, 2, 0, 1])
    assert sum(1 for L in lines if L.contains(p)) == 13


def test_collinear_subsets_full_space(F2, P3F2):
    subs = collinear_subsets(P3F2, 3)
    assert len(subs) == 35
    for line, members in subs:
        assert len(members) == 3


def test_is_coplanar(F2):
    plane = [p for p in enumerate_projective_space(F2, 3)
             if p.reps[3] == 0]
    assert is_coplanar(PointSet(F2, plane, 3))


def test_matrix_rank(F3):
    assert matrix_rank(F3, [[1, 1], [1, 2]]) == 2  # det = 1
    assert matrix_rank(F3, [[1, 2], [2, 1]]) == 1  # det = -3 = 0 mod 3


def test_point_set_file_roundtrip(P3F3):
    text = write_point_set(P3F3)
    Z = read_point_set(text)
    assert Z.field.size == 3
    assert [p.key() for p in Z.points] == [p.key() for p in P3F3.points]
    assert write_point_set(Z) == text


def test_point_set_file_extension_field(F4):
    pts = list(enumerate_projective_space(F4, 3).points)[:7]
    Z = PointSet(F4, pts, 3)
    back = read_point_set(write_point_set(Z))
    assert [p.key() for p in back.points] == [p.key() for p in Z.points]


def test_point_set_minus(F2, P3F2):
    L = all_lines(F2)[0]
    rest = P3F2.minus(PointSet(F2, L.points(), 3))
    assert len(rest) == 12
