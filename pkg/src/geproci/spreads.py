"""Regular spreads of PG(3,q), maximal partial spread search, complements.

The search works on the skew graph of all lines: vertices are the
canonically ordered lines, adjacency is skewness, and maximal partial
spreads are exactly the maximal cliques.  Adjacency is kept as Python int
bitmasks, so the inner loop is a few bit operations per node.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from .fields import parse_field_spec
from .projgeom import (
    GeometryError,
    PointSet,
    ProjectiveLine3,
    ProjectivePoint,
    all_lines,
    enumerate_projective_space,
    line_through,
    lines_skew,
    _format_coord,
    _parse_coord,
)


class SpreadError(Exception):
    pass


class LimitExceeded(SpreadError):
    """Raised internally when the node budget runs out; callers receive a
    truncated result instead of the exception."""


class PartialSpread:
    """A list of lines of PG(3,q), canonically ordered by line key.

    Pairwise skewness is an intended invariant but is *verified*, not
    assumed: `verify_spread` reports violations rather than raising.
    """

    def __init__(self, field, lines, maximal: Optional[bool] = None):
        self.field = field
        self.lines = tuple(sorted(lines, key=lambda l: l.key()))
        self.maximal = maximal

    @property
    def q(self):
        return self.field.size

    @property
    def deficiency(self):
        return self.q ** 2 + 1 - len(self.lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __eq__(self, other):
        return (
            isinstance(other, PartialSpread)
            and self.field == other.field
            and tuple(l.key() for l in self.lines) == tuple(l.key() for l in other.lines)
        )

    def point_cover(self) -> "SpreadPointCover":
        return SpreadPointCover(self)

    def is_pairwise_skew(self) -> bool:
        ls = self.lines
        return all(
            lines_skew(ls[i], ls[j])
            for i in range(len(ls))
            for j in range(i + 1, len(ls))
        )

    def check_maximality(self) -> bool:
        """Scan every line of PG(3,q) for a possible extension."""
        for cand in all_lines(self.field):
            if all(lines_skew(cand, l) for l in self.lines):
                if cand not in self.lines:
                    return False
        return True

    def __repr__(self):
        return f"<PartialSpread q={self.q} size={len(self.lines)} deficiency={self.deficiency}>"


class SpreadPointCover:
    """The covered point set with the unique covering line per point."""

    def __init__(self, spread: PartialSpread):
        cover = {}
        for line in spread.lines:
            for p in line.points():
                if p.key() in cover:
                    raise SpreadError(f"point {p} covered twice")
                cover[p.key()] = (p, line)
        self.spread = spread
        self.covering_line = {k: line for k, (p, line) in cover.items()}
        self.point_set = PointSet(spread.field, [p for p, _ in cover.values()], 3)

    def __len__(self):
        return len(self.point_set)


# ---------------------------------------------------------------------------
# regular spread

def line_at_infinity(field) -> ProjectiveLine3:
    z = field.zero()
    o = field.one()
    return ProjectiveLine3(field, [[z, z, o, z], [z, z, z, o]])


def build_regular_spread(field) -> PartialSpread:
    """The regular spread: q² reguli lines plus the line at infinity.

    Odd q uses a non-square r and lines through (1,0,a,b), (0,1,rb,a);
    even q uses an r with x²+x+r irreducible and lines through
    (1,0,a,b), (0,1,br,a+b).
    """
    from .fields import find_artin_schreier_r, find_nonsquare

    z = field.zero()
    o = field.one()
    lines = [line_at_infinity(field)]
    if field.char == 2:
        r = find_artin_schreier_r(field)
        for a in field.elements():
            for b in field.elements():
                p1 = ProjectivePoint(field, [o, z, a, b])
                p2 = ProjectivePoint(field, [z, o, b * r, a + b])
                lines.append(line_through(p1, p2))
    else:
        r = find_nonsquare(field)
        for a in field.elements():
            for b in field.elements():
                p1 = ProjectivePoint(field, [o, z, a, b])
                p2 = ProjectivePoint(field, [z, o, r * b, a])
                lines.append(line_through(p1, p2))
    return PartialSpread(field, lines)


# ---------------------------------------------------------------------------
# verification

@dataclass
class SpreadReport:
    size: int
    deficiency: int
    skew_violations: list
    uncovered: list
    doubly_covered: list

    @property
    def clean(self):
        return not (self.skew_violations or self.doubly_covered) and (
            self.deficiency > 0 or not self.uncovered
        )

    @property
    def is_spread(self):
        return self.clean and self.deficiency == 0


def verify_spread(S: PartialSpread) -> SpreadReport:
    """Pairwise-skew and cover check; uncovered points only matter for
    deficiency-0 inputs (a valid partial spread never covers everything)."""
    ls = S.lines
    violations = []
    for i in range(len(ls)):
        for j in range(i + 1, len(ls)):
            if not lines_skew(ls[i], ls[j]):
                violations.append((ls[i], ls[j]))
    seen: dict = {}
    doubly = []
    for line in ls:
        for p in line.points():
            k = p.key()
            if k in seen and seen[k] is not line:
                doubly.append(p)
            seen[k] = line
    space = enumerate_projective_space(S.field, 3)
    uncovered = [p for p in space.points if p.key() not in seen]
    return SpreadReport(
        size=len(ls),
        deficiency=S.deficiency,
        skew_violations=violations,
        uncovered=uncovered,
        doubly_covered=doubly,
    )


def complement_points(S: PartialSpread) -> PointSet:
    space = enumerate_projective_space(S.field, 3)
    return space.minus(S.point_cover().point_set)


# ---------------------------------------------------------------------------
# search

@dataclass
class SearchResult:
    spreads: list
    nodes: int
    truncated: bool
    anomalies: list = dataclass_field(default_factory=list)

    def __iter__(self):
        return iter(self.spreads)

    def __len__(self):
        return len(self.spreads)


def _skew_masks(lines):
    n = len(lines)
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if lines_skew(lines[i], lines[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def deficiency_window(q: int):
    """Mesner–Glynn window for the deficiency of a proper maximal partial
    spread: sqrt(q)+1 <= d <= (q-1)²."""
    return (math.sqrt(q) + 1, (q - 1) ** 2)


def search_maximal_partial_spreads(
    field,
    sizes=None,
    mode: str = "exhaustive",
    seed: Optional[int] = None,
    node_budget: int = 10 ** 8,
) -> SearchResult:
    """Enumerate maximal partial spreads as maximal cliques of the skew graph.

    Branches extend only with lines of larger canonical index, so every
    clique is generated exactly once, in its sorted order.  `sizes` filters
    the emitted sets (None keeps all).  Modes: `exhaustive` walks the whole
    tree, `first` stops at the first emitted spread, `sample` visits
    branches in a seeded pseudorandom order (seed required).
    """
    if mode not in ("first", "exhaustive", "sample"):
        raise SpreadError(f"unknown mode {mode!r}")
    if mode == "sample" and seed is None:
        raise SpreadError("sample mode requires a seed")
    rng = random.Random(seed) if mode == "sample" else None
    lines = sorted(all_lines(field), key=lambda l: l.key())
    masks = _skew_masks(lines)
    n = len(lines)
    full = (1 << n) - 1
    sizes_set = set(sizes) if sizes is not None else None
    min_size = min(sizes_set) if sizes_set else 0

    found = []
    state = {"nodes": 0, "truncated": False, "stop": False}

    def bits(mask):
        order = []
        while mask:
            low = mask & -mask
            order.append(low.bit_length() - 1)
            mask ^= low
        if rng is not None:
            rng.shuffle(order)
        return order

    def dfs(chosen, cand_gt, cand_all):
        if state["stop"] or state["truncated"]:
            return
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            state["truncated"] = True
            return
        if cand_all == 0:
            if sizes_set is None or len(chosen) in sizes_set:
                found.append(PartialSpread(field, [lines[i] for i in chosen], maximal=True))
                if mode == "first":
                    state["stop"] = True
            return
        if sizes_set is not None and len(chosen) + bin(cand_gt).count("1") < min_size:
            return
        for i in bits(cand_gt):
            m = masks[i]
            gt_mask = full ^ ((1 << (i + 1)) - 1)
            dfs(chosen + [i], cand_gt & m & gt_mask, cand_all & m)
            # lines skipped here reappear in cand_all of siblings, so no
            # maximal clique is lost by the index-increasing restriction
            if state["stop"] or state["truncated"]:
                return

    dfs([], full, full)
    anomalies = []
    lo, hi = deficiency_window(field.size)
    for S in found:
        d = S.deficiency
        if d > 0 and not (lo <= d <= hi):
            anomalies.append((S, d))
    found.sort(key=lambda S: tuple(l.key() for l in S.lines))
    return SearchResult(
        spreads=found,
        nodes=state["nodes"],
        truncated=state["truncated"],
        anomalies=anomalies,
    )


# ---------------------------------------------------------------------------
# fingerprints

_fingerprint_tables: dict = {}


def _fingerprint_table(field):
    """Per-field incidence tables shared across fingerprint calls: line
    index by key, point indices per line, and a meeting-lines bitmask per
    line (self excluded)."""
    key = field.spec_string()
    tab = _fingerprint_tables.get(key)
    if tab is None:
        lines = sorted(all_lines(field), key=lambda l: l.key())
        index = {l.key(): i for i, l in enumerate(lines)}
        space = enumerate_projective_space(field, 3)
        pt_index = {p.key(): i for i, p in enumerate(space.points)}
        line_pts = [[pt_index[p.key()] for p in l.points()] for l in lines]
        meet = [0] * len(lines)
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                if not lines_skew(lines[i], lines[j]):
                    meet[i] |= 1 << j
                    meet[j] |= 1 << i
        tab = (index, line_pts, meet, len(space))
        _fingerprint_tables[key] = tab
    return tab


def spread_fingerprint(S: PartialSpread):
    """Projective-equivalence invariant: sorted point-degree multiset and
    sorted profile of how many spread members each line of PG(3,q) meets."""
    index, line_pts, meet, npts = _fingerprint_table(S.field)
    members = [index[l.key()] for l in S.lines]
    bits = 0
    cover = [0] * npts
    for i in members:
        bits |= 1 << i
        for p in line_pts[i]:
            cover[p] += 1
    degrees = tuple(sorted(cover))
    profile = tuple(sorted((m & bits).bit_count() for m in meet))
    return (degrees, profile)


# ---------------------------------------------------------------------------
# exact cover by full lines

@dataclass
class NoPartition:
    reason: str


def partition_into_lines(Z: PointSet):
    """Partition Z into full (q+1)-point lines, or report NoPartition."""
    q = Z.field.size
    if len(Z) % (q + 1) != 0:
        return NoPartition(f"|Z| = {len(Z)} is not a multiple of q+1 = {q + 1}")
    # every collinear (q+1)-subset is a complete line of PG(3,q)
    full_lines = []
    for line, members in _full_lines_inside(Z):
        full_lines.append((line, frozenset(p.key() for p in members)))
    keys = [p.key() for p in Z.points]
    key_index = {k: i for i, k in enumerate(keys)}
    line_masks = []
    for line, members in full_lines:
        m = 0
        for k in members:
            m |= 1 << key_index[k]
        line_masks.append(m)
    target = (1 << len(keys)) - 1

    point_lines = [[] for _ in keys]
    for idx, lm in enumerate(line_masks):
        m = lm
        while m:
            point_lines[(m & -m).bit_length() - 1].append(idx)
            m &= m - 1

    chosen: list = []

    def cover(mask):
        if mask == 0:
            return True
        # branch on the uncovered point with the fewest available lines
        best_opts = None
        m = mask
        while m:
            low = (m & -m).bit_length() - 1
            m &= m - 1
            opts = [i for i in point_lines[low]
                    if line_masks[i] & mask == line_masks[i]]
            if best_opts is None or len(opts) < len(best_opts):
                best_opts = opts
                if len(opts) <= 1:
                    break
        for idx in best_opts:
            chosen.append(idx)
            if cover(mask & ~line_masks[idx]):
                return True
            chosen.pop()
        return False

    if not cover(target):
        return NoPartition("no exact cover by full lines exists")
    return [full_lines[i][0] for i in chosen]


def _full_lines_inside(Z: PointSet):
    q = Z.field.size
    from .projgeom import collinear_subsets

    out = []
    for line, members in collinear_subsets(Z, q + 1):
        if len(members) == q + 1:
            out.append((line, members))
    return out


# ---------------------------------------------------------------------------
# spread file format

def write_spread(S: PartialSpread) -> str:
    out = [f"field: {S.field.spec_string()}"]
    for line in S.lines:
        rows = []
        for row in line.rows:
            rows.append(",".join(_format_coord(S.field, r) for r in row))
        out.append("|".join(rows))
    return "\n".join(out) + "\n"


def read_spread(text: str) -> PartialSpread:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or not rows[0].startswith("field:"):
        raise GeometryError("spread file must start with a 'field:' header")
    field = parse_field_spec(rows[0].split(":", 1)[1].strip())
    lines = []
    for ln in rows[1:]:
        parts = ln.split("|")
        if len(parts) != 2:
            raise GeometryError("each spread line needs two point rows separated by '|'")
        mat = []
        for part in parts:
            mat.append([_parse_coord(field, tok) for tok in part.split(",")])
        lines.append(ProjectiveLine3(field, mat))
    return PartialSpread(field, lines)
