"""Points and lines of P^n over a finite field: enumeration and incidence."""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .fields import FieldElement, FieldError, parse_field_spec

DEFAULT_POINT_CAP = 10 ** 7


class GeometryError(Exception):
    pass


class EqualPoints(GeometryError):
    pass


class TooLarge(GeometryError):
    pass


# ---------------------------------------------------------------------------
# small exact linear algebra over a finite field (rows of FieldElement reps)

def _row_rref(field, rows):
    """RREF of a list of rep-rows; returns (pivot_cols, reduced nonzero rows)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not field.rep_is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv_rep(rows[r][c])
        rows[r] = [field.mul_rep(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.rep_is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub_rep(x, field.mul_rep(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


def matrix_rank(field, rows) -> int:
    if not rows:
        return 0
    pivots, _ = _row_rref(field, rows)
    return len(pivots)


class ProjectivePoint:
    """Homogeneous coordinates, normalized so the first nonzero entry is 1."""

    __slots__ = ("field", "reps")

    def __init__(self, field, coords: Sequence):
        reps = []
        for c in coords:
            e = field.element(c)
            reps.append(e.rep)
        lead = None
        for r in reps:
            if not field.rep_is_zero(r):
                lead = r
                break
        if lead is None:
            raise GeometryError("the zero vector is not a projective point")
        inv = field.inv_rep(lead)
        self.field = field
        self.reps = tuple(field.mul_rep(r, inv) for r in reps)

    @property
    def coords(self) -> tuple:
        return tuple(FieldElement(self.field, r) for r in self.reps)

    @property
    def dim(self) -> int:
        return len(self.reps) - 1

    def key(self) -> tuple:
        return tuple(self.field.rep_to_index(r) for r in self.reps)

    def __eq__(self, other):
        return (
            isinstance(other, ProjectivePoint)
            and self.field == other.field
            and self.reps == other.reps
        )

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.reps)

    def __repr__(self):
        return "(" + ",".join(str(i) for i in self.key()) + ")"


class ProjectiveLine3:
    """A line of P^3 as the row span of a canonical 2x4 RREF matrix."""

    __slots__ = ("field", "rows", "_points")

    def __init__(self, field, rows: Sequence[Sequence]):
        rep_rows = []
        for row in rows:
            rep_rows.append([field.element(c).rep for c in row])
        pivots, reduced = _row_rref(field, rep_rows)
        if len(reduced) != 2:
            raise GeometryError("line requires a rank-2 spanning set")
        self.field = field
        self.rows = (tuple(reduced[0]), tuple(reduced[1]))
        self._points = None

    def key(self) -> tuple:
        f = self.field
        return tuple(f.rep_to_index(c) for row in self.rows for c in row)

    def points(self) -> tuple:
        """The q+1 rational points on the line, canonically sorted."""
        if self._points is None:
            f = self.field
            r0, r1 = self.rows
            pts = [ProjectivePoint(f, r1)]
            for t in f.elements():
                coords = [
                    f.add_rep(a, f.mul_rep(t.rep, b)) for a, b in zip(r0, r1)
                ]
                pts.append(ProjectivePoint(f, coords))
            self._points = tuple(sorted(pts))
        return self._points

    def contains(self, p: ProjectivePoint) -> bool:
        f = self.field
        return matrix_rank(f, [list(self.rows[0]), list(self.rows[1]), list(p.reps)]) == 2

    def pluecker(self) -> tuple:
        """Derived Plücker fingerprint (normalized), for reporting only."""
        f = self.field
        r0, r1 = self.rows
        coords = []
        for i in range(4):
            for j in range(i + 1, 4):
                coords.append(
                    f.sub_rep(f.mul_rep(r0[i], r1[j]), f.mul_rep(r0[j], r1[i]))
                )
        lead = next(c for c in coords if not f.rep_is_zero(c))
        inv = f.inv_rep(lead)
        return tuple(f.rep_to_index(f.mul_rep(c, inv)) for c in coords)

    def __eq__(self, other):
        return (
            isinstance(other, ProjectiveLine3)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Line[{self.key()}]"


class PointSet:
    """A sorted, duplicate-free set of points of P^n over a fixed field."""

    def __init__(self, field, points: Iterable[ProjectivePoint], dim: int = None):
        pts = sorted(set(points))
        if dim is None:
            if not pts:
                raise GeometryError("empty point set needs an explicit dimension")
            dim = pts[0].dim
        for p in pts:
            if p.dim != dim:
                raise GeometryError("mixed ambient dimensions")
        self.field = field
        self.dim = dim
        self.points = tuple(pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in set(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and self.field == other.field
            and self.points == other.points
        )

    def minus(self, other: "PointSet") -> "PointSet":
        drop = set(other.points)
        return PointSet(self.field, [p for p in self.points if p not in drop], self.dim)

    def __repr__(self):
        return f"PointSet({len(self.points)} points in P^{self.dim} over {self.field!r})"


# ---------------------------------------------------------------------------
# operations

def enumerate_projective_space(field, n: int, cap: int = DEFAULT_POINT_CAP) -> PointSet:
    """All points of P^n(F_q), canonically ordered."""
    if n < 1:
        raise GeometryError("ambient dimension must be >= 1")
    q = field.size
    count = (q ** (n + 1) - 1) // (q - 1)
    if count > cap:
        raise TooLarge(f"P^{n}(F_{q}) has {count} points, above cap {cap}")
    pts = []
    elems = list(field.elements())
    one = field.one()
    for pivot in range(n + 1):
        # points with first nonzero coordinate at `pivot`
        def rec(i, acc):
            if i > n:
                pts.append(ProjectivePoint(field, acc))
                return
            for e in elems:
                rec(i + 1, acc + [e])

        rec(pivot + 1, [field.zero()] * pivot + [one])
    return PointSet(field, pts, n)


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> ProjectiveLine3:
    if p == q:
        raise EqualPoints("line through equal points is undefined")
    return ProjectiveLine3(p.field, [p.reps, q.reps])


def lines_skew(l1: ProjectiveLine3, l2: ProjectiveLine3) -> bool:
    f = l1.field
    rows = [list(l1.rows[0]), list(l1.rows[1]), list(l2.rows[0]), list(l2.rows[1])]
    return matrix_rank(f, rows) == 4


def all_lines(field) -> list:
    """Every line of PG(3,q) exactly once, in canonical RREF key order."""
    elems = list(field.elements())
    one, zero = field.one(), field.zero()
    lines = []
    for i in range(4):
        for j in range(i + 1, 4):
            free0 = [k for k in range(i + 1, 4) if k != j]
            free1 = [k for k in range(j + 1, 4)]
            n0, n1 = len(free0), len(free1)

            def fill(template, positions, values):
                row = list(template)
                for pos, v in zip(positions, values):
                    row[pos] = v
                return row

            base0 = [zero] * 4
            base0[i] = one
            base1 = [zero] * 4
            base1[j] = one
            stack0 = _tuples(elems, n0)
            stack1 = _tuples(elems, n1)
            for v0 in stack0:
                r0 = fill(base0, free0, v0)
                for v1 in stack1:
                    r1 = fill(base1, free1, v1)
                    lines.append(ProjectiveLine3(field, [[e.rep for e in r0], [e.rep for e in r1]]))
    return sorted(lines)


def _tuples(elems, n):
    if n == 0:
        return [()]
    out = [()]
    for _ in range(n):
        out = [t + (e,) for t in out for e in elems]
    return out


def collinear_subsets(Z: PointSet, k: int = 3) -> list:
    """All lines containing at least k points of Z, with their incidences."""
    if k < 2:
        raise GeometryError("threshold must be >= 2")
    buckets: dict = {}
    pts = Z.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            line = line_through(pts[i], pts[j])
            key = line.key()
            if key not in buckets:
                buckets[key] = (line, set())
            buckets[key][1].update((pts[i], pts[j]))
    out = []
    for key in sorted(buckets):
        line, members = buckets[key]
        if len(members) >= k:
            out.append((line, tuple(sorted(members))))
    return out


def is_coplanar(Z: PointSet) -> bool:
    rows = [list(p.reps) for p in Z.points]
    return matrix_rank(Z.field, rows) <= 3


# ---------------------------------------------------------------------------
# point-set file format

def _format_coord(field, rep) -> str:
    idx = field.rep_to_index(rep)
    return str(idx)


def write_point_set(Z: PointSet) -> str:
    lines = [f"field: {Z.field.spec_string()}; dim: {Z.dim}"]
    for p in Z.points:
        lines.append(",".join(_format_coord(Z.field, r) for r in p.reps))
    return "\n".join(lines) + "\n"


def _parse_coord(field, token: str):
    token = token.strip()
    if token.startswith("(") and token.endswith(")"):
        coeffs = [int(t) for t in token[1:-1].split()]
        return field.element(coeffs)
    return field.from_index(int(token))


def read_point_set(text: str) -> PointSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("field:"):
        raise GeometryError("point-set file must start with a 'field:' header")
    header = lines[0]
    # the field spec may itself contain ';', so the dim part is the tail
    field_part, _, dim_part = header.rpartition(";")
    field = parse_field_spec(field_part.split(":", 1)[1].strip())
    if "dim:" not in dim_part:
        raise GeometryError("header must declare 'dim:'")
    dim = int(dim_part.split(":", 1)[1].strip())
    pts = []
    for ln in lines[1:]:
        coords = [_parse_coord(field, tok) for tok in ln.split(",")]
        if len(coords) != dim + 1:
            raise GeometryError(f"expected {dim + 1} coordinates, got {len(coords)}")
        pts.append(ProjectivePoint(field, coords))
    return PointSet(field, pts, dim)
