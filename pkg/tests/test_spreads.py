"""Spreads and maximal partial spreads of PG(3,q)."""
import pytest

from geproci.fields import parse_field_spec
from geproci.projgeom import PointSet, all_lines, enumerate_projective_space
from geproci.spreads import (
    NoPartition,
    PartialSpread,
    SpreadError,
    build_regular_spread,
    complement_points,
    deficiency_window,
    partition_into_lines,
    read_spread,
    search_maximal_partial_spreads,
    spread_fingerprint,
    verify_spread,
    write_spread,
)


@pytest.mark.parametrize("spec", ["p=2", "p=3", "p=2;ext=2", "p=5"])
def test_regular_spread(spec):
    F = parse_field_spec(spec)
    q = F.size
    S = build_regular_spread(F)
    assert len(S.lines) == q * q + 1
    rep = verify_spread(S)
    assert rep.clean
    assert not rep.skew_violations and not rep.uncovered and not rep.doubly_covered
    assert len(S.point_cover()) == (q + 1) * (q * q + 1)


def test_spread_of_pg32_count(F2):
    # PG(3,2) has exactly 56 spreads
    res = search_maximal_partial_spreads(F2, sizes=[5], mode="exhaustive")
    assert len(res.spreads) == 56
    assert not res.truncated
    fps = {spread_fingerprint(S) for S in res.spreads}
    assert len(fps) == 1  # all regular, a single equivalence fingerprint


def test_search_first_mode(F3):
    res = search_maximal_partial_spreads(F3, mode="first")
    assert len(res.spreads) == 1
    assert verify_spread(res.spreads[0]).clean


def test_search_sample_requires_seed(F2):
    with pytest.raises(SpreadError):
        search_maximal_partial_spreads(F2, mode="sample")


def test_search_budget_truncation(F3):
    res = search_maximal_partial_spreads(F3, node_budget=200)
    assert res.truncated


def test_deficiency_window():
    lo, hi = deficiency_window(9)
    assert lo == 4 and hi == 64


def test_complement_and_fingerprint(mps7_q3):
    S = mps7_q3
    assert len(S.lines) == 7
    assert S.deficiency == 3
    assert verify_spread(S).clean
    assert S.check_maximality()
    Z = complement_points(S)
    assert len(Z) == 12
    fp1 = spread_fingerprint(S)
    assert fp1 == spread_fingerprint(S)  # deterministic


def test_partial_spread_rejects_non_skew(F2):
    lines = all_lines(F2)
    meeting = [L for L in lines if L.contains(lines[0].points()[0])][:2]
    sp = PartialSpread(F2, meeting)
    assert not sp.is_pairwise_skew()


def test_partition_into_lines_full_space(F2, P3F2):
    part = partition_into_lines(P3F2)
    assert not isinstance(part, NoPartition)
    assert len(part) == 5


def test_partition_into_lines_impossible(mps7_q3):
    # a maximal partial spread complement contains no full line
    Z = complement_points(mps7_q3)
    part = partition_into_lines(Z)
    assert isinstance(part, NoPartition)


def test_spread_file_roundtrip(mps7_q3):
    text = write_spread(mps7_q3)
    back = read_spread(text)
    assert sorted(L.key() for L in back.lines) == sorted(L.key() for L in mps7_q3.lines)
    assert write_spread(back) == text
