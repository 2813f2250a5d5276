"""Homogeneous forms over a pluggable coefficient field, exact kernels,
and coprimality certification via resultants.

Scalars are either :class:`FieldElement` (finite coefficient field) or
:class:`RationalFunction` (generic-point mode).  Finite-field matrices are
reduced by plain Gaussian elimination; function-field matrices go through
fraction-free (Bareiss) elimination on cleared-denominator polynomial rows
to control intermediate blowup.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from .fields import (
    FieldElement,
    FunctionField,
    MultiPoly,
    PrimeField,
    RationalFunction,
    mp_gcd,
    mp_gcd_list,
)
from .projgeom import PointSet

VAR_NAMES = ("x", "y", "z", "w")


class PolyError(Exception):
    pass


class DimensionMismatch(PolyError):
    pass


class DependentDirection(PolyError):
    pass


class ZeroInput(PolyError):
    pass


# ---------------------------------------------------------------------------
# scalar rings

class ScalarRing:
    """Adapter unifying finite-field and function-field coefficients."""

    def __init__(self, obj):
        if isinstance(obj, FunctionField):
            self.function_field = obj
            self.field = obj.field
            self.finite = False
        else:
            self.function_field = None
            self.field = obj
            self.finite = True

    def zero(self):
        if self.finite:
            return self.field.zero()
        return self.function_field.zero()

    def one(self):
        if self.finite:
            return self.field.one()
        return self.function_field.one()

    def const(self, v):
        if self.finite:
            return self.field.element(v)
        return self.function_field.const(v)

    def coerce_point_coords(self, point) -> list:
        """Coordinates of a ProjectivePoint as scalars of this ring."""
        coords = point.coords if hasattr(point, "coords") else list(point)
        out = []
        for c in coords:
            if isinstance(c, (int, FieldElement)) and not self.finite:
                out.append(self.const(c))
            elif isinstance(c, int):
                out.append(self.const(c))
            else:
                out.append(c)
        return out

    def distinct_scalars(self, n: int) -> list:
        """n pairwise distinct scalars, deterministic canonical order."""
        if self.finite:
            F = self.field
            if F.size >= n:
                return [F.from_index(i) for i in range(n)]
            from .fields import extend_field
            m = 2
            while F.size ** m < n:
                m += 1
            E = extend_field(F, m)
            return [E.from_index(i) for i in range(n)]
        # powers of the first generator variable are pairwise distinct
        ff = self.function_field
        out = [ff.zero(), ff.one()]
        a = ff.gens()[0]
        t = a
        while len(out) < n:
            out.append(t)
            t = t * a
        return out[:n]

    @property
    def char(self):
        return self.field.char

    def __eq__(self, other):
        return (
            isinstance(other, ScalarRing)
            and self.finite == other.finite
            and self.field == other.field
            and (self.finite or self.function_field.names == other.function_field.names)
        )


def scalar_is_zero(x) -> bool:
    return x.is_zero()


# ---------------------------------------------------------------------------
# monomials

def monomials(nvars: int, degree: int) -> list:
    """Exponent vectors of total degree `degree`, graded-lex, x > y > z > w."""
    out = []

    def rec(i, rem, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [rem]))
            return
        for e in range(rem, -1, -1):
            rec(i + 1, rem - e, acc + [e])

    rec(0, degree, [])
    return out


def monomial_count(nvars: int, degree: int) -> int:
    return math.comb(degree + nvars - 1, nvars - 1)


class HomogeneousForm:
    """Sparse homogeneous polynomial; zero coefficients are never stored."""

    def __init__(self, ring: ScalarRing, nvars: int, degree: int, coeffs: dict):
        clean = {}
        for exps, c in coeffs.items():
            if len(exps) != nvars:
                raise DimensionMismatch("exponent arity mismatch")
            if sum(exps) != degree:
                raise PolyError(f"term {exps} does not have degree {degree}")
            if not scalar_is_zero(c):
                clean[exps] = c
        self.ring = ring
        self.nvars = nvars
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def from_coeff_vector(cls, ring, nvars, degree, vec, monos=None):
        monos = monos or monomials(nvars, degree)
        return cls(ring, nvars, degree, dict(zip(monos, vec)))

    def is_zero(self):
        return not self.coeffs

    def coeff_vector(self, monos=None) -> list:
        monos = monos or monomials(self.nvars, self.degree)
        z = self.ring.zero()
        return [self.coeffs.get(e, z) for e in monos]

    def map_coefficients(self, fn, ring=None) -> "HomogeneousForm":
        return HomogeneousForm(
            ring or self.ring, self.nvars, self.degree,
            {e: fn(c) for e, c in self.coeffs.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return HomogeneousForm(self.ring, self.nvars, self.degree + other.degree, out)

    def __add__(self, other):
        if not isinstance(other, HomogeneousForm) or other.degree != self.degree:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, self.ring.zero()) + c
        return HomogeneousForm(self.ring, self.nvars, self.degree, out)

    def scale(self, s) -> "HomogeneousForm":
        return HomogeneousForm(
            self.ring, self.nvars, self.degree,
            {e: c * s for e, c in self.coeffs.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.degree != other.degree or self.nvars != other.nvars:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        z = self.ring.zero()
        return all(self.coeffs.get(k, z) == other.coeffs.get(k, z) for k in keys)

    def proportional_to(self, other: "HomogeneousForm") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.coeffs) != set(other.coeffs):
            return False
        e0 = next(iter(sorted(self.coeffs)))
        ratio_num, ratio_den = other.coeffs[e0], self.coeffs[e0]
        return all(
            other.coeffs[e] * ratio_den == self.coeffs[e] * ratio_num
            for e in self.coeffs
        )

    def serialize(self) -> str:
        """Canonical text form: `<coeff> x^i y^j z^k w^l` terms joined by `+`."""
        if self.is_zero():
            return "0"
        names = VAR_NAMES[: self.nvars] if self.nvars <= 4 else tuple(
            f"x{i}" for i in range(self.nvars)
        )
        parts = []
        for exps in sorted(self.coeffs, key=lambda e: tuple(-x for x in e)):
            c = self.coeffs[exps]
            mono = " ".join(
                f"{n}^{e}" if e > 1 else n for n, e in zip(names, exps) if e
            )
            cs = _scalar_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif " " in cs or "/" in cs:
                parts.append(f"({cs}) {mono}")
            else:
                parts.append(f"{cs} {mono}")
        return " + ".join(parts)

    def __repr__(self):
        return self.serialize()


def _scalar_str(c) -> str:
    if isinstance(c, FieldElement):
        return str(c.index)
    return repr(c)


def form_from_exponent_map(ring: ScalarRing, nvars: int, degree: int, coeffs: dict):
    """Coefficients may be ints; they are coerced through the ring."""
    return HomogeneousForm(
        ring, nvars, degree,
        {e: (ring.const(c) if isinstance(c, int) else c) for e, c in coeffs.items()},
    )


# ---------------------------------------------------------------------------
# evaluation and derivatives

def _coord_powers(coords, max_exp):
    pows = []
    for c in coords:
        row = [None] * (max_exp + 1)
        row[0] = None  # unused sentinel; exponent 0 contributes nothing
        if max_exp >= 1:
            row[1] = c
            for k in range(2, max_exp + 1):
                row[k] = row[k - 1] * c
        pows.append(row)
    return pows


def evaluate(f: HomogeneousForm, point) -> object:
    """Exact evaluation at a point (coordinates: scalars or a ProjectivePoint)."""
    coords = point.coords if hasattr(point, "coords") else list(point)
    if len(coords) != f.nvars:
        raise DimensionMismatch(
            f"form in {f.nvars} variables evaluated at a {len(coords)}-tuple"
        )
    pows = _coord_powers(coords, f.degree)
    total = None
    for exps, c in f.coeffs.items():
        term = c
        for i, e in enumerate(exps):
            if e:
                term = term * pows[i][e]
        total = term if total is None else total + term
    return total if total is not None else f.ring.zero()


def partial_derivative(f: HomogeneousForm, i: int) -> HomogeneousForm:
    out = {}
    for exps, c in f.coeffs.items():
        if exps[i] == 0:
            continue
        e = list(exps)
        mult = e[i]
        e[i] -= 1
        scaled = c * mult
        if not scalar_is_zero(scaled):
            out[tuple(e)] = scaled
    return HomogeneousForm(f.ring, f.nvars, max(f.degree - 1, 0), out)


def directional_derivative(f: HomogeneousForm, point, direction) -> object:
    """Sum_i v_i d f/d x_i evaluated at the point (formal partials)."""
    pc = point.coords if hasattr(point, "coords") else list(point)
    dc = direction.coords if hasattr(direction, "coords") else list(direction)
    if len(pc) != f.nvars or len(dc) != f.nvars:
        raise DimensionMismatch("coordinate arity mismatch")
    if _proportional(pc, dc):
        raise DependentDirection("direction must be independent of the point")
    total = f.ring.zero()
    for i, v in enumerate(dc):
        if scalar_is_zero(v) if hasattr(v, "is_zero") else v == 0:
            continue
        total = total + v * evaluate(partial_derivative(f, i), pc)
    return total


def _proportional(u, v):
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if not scalar_is_zero(u[i] * v[j] - u[j] * v[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# evaluation matrices and kernels

@dataclass
class EvaluationMatrix:
    ring: ScalarRing
    nvars: int
    degree: int
    rows: list  # list of list-of-scalars, one per linear condition
    monos: list = dataclass_field(default=None)

    def __post_init__(self):
        if self.monos is None:
            self.monos = monomials(self.nvars, self.degree)
        for r in self.rows:
            if len(r) != len(self.monos):
                raise DimensionMismatch("condition row width mismatch")

    @property
    def ncols(self):
        return len(self.monos)


def evaluation_row(ring: ScalarRing, coords, monos) -> list:
    degree = sum(monos[0]) if monos else 0
    pows = _coord_powers(coords, degree)
    row = []
    one = ring.one()
    for exps in monos:
        term = None
        for i, e in enumerate(exps):
            if e:
                term = pows[i][e] if term is None else term * pows[i][e]
        row.append(term if term is not None else one)
    return row


def derivative_row(ring: ScalarRing, coords, direction, monos) -> list:
    """Row of Sum_i v_i d(mono)/d x_i evaluated at coords."""
    degree = sum(monos[0]) if monos else 0
    pows = _coord_powers(coords, degree)
    zero = ring.zero()

    def mono_eval(exps):
        term = None
        for i, e in enumerate(exps):
            if e:
                term = pows[i][e] if term is None else term * pows[i][e]
        return term if term is not None else ring.one()

    row = []
    for exps in monos:
        total = zero
        for i, v in enumerate(direction):
            if exps[i] == 0 or scalar_is_zero(v):
                continue
            e = list(exps)
            e[i] -= 1
            total = total + v * mono_eval(tuple(e)) * exps[i]
        row.append(total)
    return row


def point_evaluation_matrix(ring: ScalarRing, points, degree: int, nvars: int) -> EvaluationMatrix:
    monos = monomials(nvars, degree)
    rows = []
    for p in points:
        coords = p.coords if hasattr(p, "coords") else list(p)
        rows.append(evaluation_row(ring, coords, monos))
    return EvaluationMatrix(ring, nvars, degree, rows, monos)


class KernelBasis:
    """Canonical basis of the nullspace of an EvaluationMatrix."""

    def __init__(self, matrix: EvaluationMatrix, forms: list, rank: int):
        self.matrix = matrix
        self.forms = forms
        self.rank = rank

    @property
    def dimension(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __len__(self):
        return len(self.forms)

    def recheck(self) -> bool:
        """Exhaustively re-evaluate every basis form on every condition row."""
        for f in self.forms:
            vec = f.coeff_vector(self.matrix.monos)
            for row in self.matrix.rows:
                total = None
                for c, v in zip(row, vec):
                    if scalar_is_zero(v):
                        continue
                    term = c * v
                    total = term if total is None else total + term
                if total is not None and not scalar_is_zero(total):
                    return False
        return True


def _finite_kernel(mat: EvaluationMatrix):
    F = mat.ring.field
    rows = [[c.rep for c in row] for row in mat.rows]
    ncols = mat.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not F.rep_is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv_rep(rows[r][c])
        rows[r] = [F.mul_rep(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not F.rep_is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub_rep(x, F.mul_rep(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        vec = [F.zero_rep] * ncols
        vec[fcol] = F.one_rep
        for ridx, pcol in enumerate(pivots):
            vec[pcol] = F.neg_rep(rows[ridx][fcol])
        basis.append([FieldElement(F, v) for v in vec])
    forms = [
        HomogeneousForm.from_coeff_vector(mat.ring, mat.nvars, mat.degree, vec, mat.monos)
        for vec in basis
    ]
    return KernelBasis(mat, forms, rank)


def _to_poly_rows(mat: EvaluationMatrix):
    """Clear denominators, returning MultiPoly rows."""
    rows = []
    for row in mat.rows:
        dens = [c.den for c in row if not c.den.is_constant()]
        if dens:
            common = dens[0]
            for d in dens[1:]:
                g = mp_gcd(common, d) if isinstance(common.field, PrimeField) else None
                common = common * (d.exact_div(g) if g is not None and not g.is_constant() else d)
            rows.append([c.num * common.exact_div(c.den) for c in row])
        else:
            rows.append([c.num for c in row])
    return rows


def _bareiss_echelon(field, names, rows):
    """Fraction-free elimination; returns (pivot_cols, echelon poly rows)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    prev = MultiPoly.const(field, names, 1)
    pivots = []
    r = 0
    for c in range(ncols):
        # pick the structurally cheapest pivot in this column
        best = None
        for i in range(r, len(rows)):
            e = rows[i][c]
            if e.is_zero():
                continue
            score = (e.degree(), len(e.terms))
            if best is None or score < best[0]:
                best = (score, i)
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        prev_is_one = prev.is_constant() and prev.constant_value().index == 1
        for k in range(r + 1, len(rows)):
            entry = rows[k][c]
            new = []
            for j in range(ncols):
                val = piv * rows[k][j] - entry * rows[r][j]
                if not prev_is_one and not val.is_zero():
                    val = val.exact_div(prev)
                new.append(val)
            rows[k] = new
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


def _function_kernel(mat: EvaluationMatrix):
    ff = mat.ring.function_field
    field, names = ff.field, ff.names
    poly_rows = _to_poly_rows(mat)
    pivots, ech = _bareiss_echelon(field, names, poly_rows)
    rank = len(pivots)
    ncols = mat.ncols
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fcol in free:
        # fraction-free back-substitution: kernel vectors are projective,
        # so instead of dividing by a pivot we rescale the whole vector by
        # it, keeping every entry a polynomial; normalization strips the
        # accumulated content at the end
        vec = [MultiPoly.zero(field, names) for _ in range(ncols)]
        vec[fcol] = MultiPoly.const(field, names, 1)
        for ridx in range(rank - 1, -1, -1):
            pcol = pivots[ridx]
            acc = MultiPoly.zero(field, names)
            for j in range(pcol + 1, ncols):
                v = vec[j]
                if v.is_zero():
                    continue
                entry = ech[ridx][j]
                if entry.is_zero():
                    continue
                acc = acc + entry * v
            piv = ech[ridx][pcol]
            if not acc.is_zero():
                if not (piv.is_constant() and piv.constant_value().index == 1):
                    vec = [v if v.is_zero() else piv * v for v in vec]
                vec[pcol] = -acc
        basis.append(_normalize_function_vector(ff, [RationalFunction(v, reduce=False)
                                                     for v in vec]))
    forms = [
        HomogeneousForm.from_coeff_vector(mat.ring, mat.nvars, mat.degree, vec, mat.monos)
        for vec in basis
    ]
    return KernelBasis(mat, forms, rank)


def _normalize_function_vector(ff: FunctionField, vec):
    """Clear denominators, strip content, make first nonzero entry lead-monic."""
    field, names = ff.field, ff.names
    dens = [v.den for v in vec if not v.is_zero() and not v.den.is_constant()]
    common = MultiPoly.const(field, names, 1)
    for d in dens:
        if isinstance(field, PrimeField):
            g = mp_gcd(common, d)
            extra = d.exact_div(g) if not g.is_constant() else d
        else:
            extra = d
        common = common * extra
    nums = []
    for v in vec:
        if v.is_zero():
            nums.append(MultiPoly.zero(field, names))
        else:
            nums.append(v.num * common.exact_div(v.den))
    if isinstance(field, PrimeField):
        nonzero = [n for n in nums if not n.is_zero()]
        if nonzero:
            content = mp_gcd_list(nonzero)
            if not content.is_constant():
                nums = [n if n.is_zero() else n.exact_div(content) for n in nums]
    lead = next((n for n in nums if not n.is_zero()), None)
    if lead is not None:
        _, lc = lead.leading()
        inv = field.inv_rep(lc)
        scale = FieldElement(field, inv)
        nums = [
            MultiPoly(field, names, {e: field.mul_rep(c, scale.rep) for e, c in n.terms.items()})
            for n in nums
        ]
    return [RationalFunction(n) for n in nums]


def kernel_of_conditions(mat: EvaluationMatrix) -> KernelBasis:
    """Exact nullspace basis; dimension = columns - rank."""
    if mat.ring.finite:
        return _finite_kernel(mat)
    return _function_kernel(mat)


def matrix_rank_of(mat: EvaluationMatrix) -> int:
    return kernel_of_conditions(mat).rank


# ---------------------------------------------------------------------------
# coprimality via resultants

@dataclass
class CoprimalityWitness:
    variable: str
    shear: Optional[tuple]
    resultant_nonzero: bool
    note: str = ""


@dataclass
class CommonFactor:
    variable: str
    note: str = ""


def _as_univariate(f: HomogeneousForm, var: int):
    """Coefficients of f as a poly in x_var; each coeff a form in the others."""
    out: dict = {}
    keep = [i for i in range(f.nvars) if i != var]
    for exps, c in f.coeffs.items():
        e = exps[var]
        rest = tuple(exps[i] for i in keep)
        out.setdefault(e, {})[rest] = c
    return out, keep


def _shear_form(f: HomogeneousForm, var: int, other: int, t) -> HomogeneousForm:
    """Substitute x_other -> x_other + t * x_var."""
    ring = f.ring
    out: dict = {}
    for exps, c in f.coeffs.items():
        e_o = exps[other]
        for k in range(e_o + 1):
            e = list(exps)
            e[other] = e_o - k
            e[var] += k
            coeff = c * math.comb(e_o, k)
            if k:
                coeff = coeff * (t ** k)
            key = tuple(e)
            if scalar_is_zero(coeff):
                continue
            out[key] = out.get(key, ring.zero()) + coeff
    return HomogeneousForm(ring, f.nvars, f.degree, out)


def _univariate_resultant(a: list, b: list, ring: ScalarRing):
    """Resultant of two univariate polys (scalar coefficient lists, low-to-high)."""
    n, m = len(a) - 1, len(b) - 1
    if n < 0 or m < 0:
        return ring.zero()
    size = n + m
    zero = ring.zero()
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    # determinant by Gaussian elimination over the scalar field
    det = ring.one()
    neg = False
    for c in range(size):
        piv = None
        for r in range(c, size):
            if not scalar_is_zero(rows[r][c]):
                piv = r
                break
        if piv is None:
            return zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            neg = not neg
        p = rows[c][c]
        det = det * p
        for r in range(c + 1, size):
            if scalar_is_zero(rows[r][c]):
                continue
            fac = rows[r][c] / p
            rows[r] = [x - fac * y for x, y in zip(rows[r], rows[c])]
    if neg:
        det = zero - det
    return det


def _specialize_line(f: HomogeneousForm, var: int, v_scalars):
    """Restrict to x_i = u_i for the two non-`var` variables; poly in x_var."""
    uni, keep = _as_univariate(f, var)
    out = []
    for e in range(f.degree + 1):
        coeffs = uni.get(e)
        if coeffs is None:
            out.append(f.ring.zero())
            continue
        total = f.ring.zero()
        for rest, c in coeffs.items():
            term = c
            for val, ex in zip(v_scalars, rest):
                for _ in range(ex):
                    term = term * val
            total = total + term
        out.append(total)
    while out and scalar_is_zero(out[-1]):
        out.pop()
    return out


def _specialize_coefficients(form: HomogeneousForm, ring: ScalarRing, values):
    coeffs = {e: c.eval(values) for e, c in form.coeffs.items()}
    return HomogeneousForm(ring, form.nvars, form.degree, coeffs)


def _coprime_by_specialization(f: HomogeneousForm, g: HomogeneousForm):
    """Function-field fast path: specialize (a,b,c,...) into a large
    extension.  A nonzero specialized resultant certifies generic
    coprimality exactly (degrees cannot drop once a shear has produced
    constant leading coefficients, and those survive specialization);
    a genuine common factor makes every specialization vanish.
    """
    base = f.ring.field
    m = 1
    while base.size ** m < 2 ** 20:
        m += 1
    from .fields import extend_field

    E = extend_field(base, m) if m > 1 else base
    spec_ring = ScalarRing(E)
    nvals = len(f.ring.function_field.names)
    rng = random.Random(0xC0FFEE)
    for _ in range(3):
        values = [E.from_index(rng.randrange(E.size)) for _ in range(nvals)]
        try:
            fs = _specialize_coefficients(f, spec_ring, values)
            gs = _specialize_coefficients(g, spec_ring, values)
            result = coprime_certificate(fs, gs)
        except (ZeroDivisionError, ZeroInput):
            continue
        if isinstance(result, CoprimalityWitness):
            result.note = "via deterministic specialization"
            return result
    return CommonFactor(
        variable="",
        note="resultant vanished under 3 deterministic specializations",
    )


def coprime_certificate(f: HomogeneousForm, g: HomogeneousForm):
    """Certify gcd(f, g) is a unit (plane forms, 3 variables).

    Eliminates a variable in which both forms have full-degree leading
    terms (after deterministic shears if necessary).  The resultant, a
    binary form of degree deg(f)*deg(g), is nonzero iff it is nonzero at
    one of deg(f)*deg(g)+1 distinct test points; either outcome is exact.
    Over a function field the resultant is decided through deterministic
    specializations: a nonzero value is an exact certificate, and three
    vanishing specializations are reported as a common factor.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroInput("coprimality of a zero form is undefined")
    if f.nvars != 3 or g.nvars != 3:
        raise DimensionMismatch("coprime_certificate expects plane forms")
    if not f.ring.finite:
        return _coprime_by_specialization(f, g)
    ring = f.ring
    D = f.degree * g.degree
    # one scalar pool for shears and resultant test points, so everything
    # lives in a single common extension
    pool = ring.distinct_scalars(max(3, D + 1))
    test_points = pool[: D + 1]
    candidates = [(var, None) for var in range(3)]
    others = {0: (1, 2), 1: (0, 2), 2: (0, 1)}
    # simultaneous shears x_j -> x_j + t_j * x_var for both other variables;
    # the sheared pure-power coefficient is the form's value at (1, t1, t2),
    # so a candidate is usable once (1, t1, t2) is off both curves -- try
    # whole rows of the pool before giving up
    shear_pool = []
    for var in range(3):
        for t1 in pool[:3]:
            row = 0
            for t2 in pool:
                if scalar_is_zero(t1) and scalar_is_zero(t2):
                    continue
                shear_pool.append((var, (t1, t2)))
                row += 1
                # with t1 fixed the points (1, t1, t2) run along a line,
                # which meets f*g in at most deg f + deg g <= D + 1 points
                if row > D + 1:
                    break
    candidates += shear_pool

    names = VAR_NAMES[:3]
    for var, shear in candidates:
        ff_, gg_ = f, g
        shear_desc = None
        if shear is not None:
            t1, t2 = shear
            o1, o2 = others[var]
            ff_ = _shear_form(_shear_form(f, var, o1, t1), var, o2, t2)
            gg_ = _shear_form(_shear_form(g, var, o1, t1), var, o2, t2)
            shear_desc = (names[var], _scalar_str(t1), _scalar_str(t2))
        pure_f = tuple(f.degree if i == var else 0 for i in range(3))
        pure_g = tuple(g.degree if i == var else 0 for i in range(3))
        if pure_f not in ff_.coeffs or pure_g not in gg_.coeffs:
            continue
        # the pure-power coefficients are nonzero constants, so the
        # specialized degrees never drop and each evaluation below equals
        # the degree-D binary resultant form at the point (1, t)
        found_nonzero = False
        for t in test_points:
            a = _specialize_line(ff_, var, [ring.one(), t])
            b = _specialize_line(gg_, var, [ring.one(), t])
            r = _univariate_resultant(a, b, ring)
            if not scalar_is_zero(r):
                found_nonzero = True
                break
        if found_nonzero:
            return CoprimalityWitness(
                variable=names[var], shear=shear_desc, resultant_nonzero=True
            )
        # a nonzero degree-D binary form has at most D projective roots,
        # so vanishing at D+1 distinct points forces the resultant to be 0
        return CommonFactor(
            variable=names[var],
            note="resultant vanishes identically",
        )
    return CommonFactor(variable="", note="no usable elimination direction found")


# ---------------------------------------------------------------------------
# Hilbert-function values

def hilbert_value(Z, d: int) -> int:
    """dim [I(Z)]_d = C(d+n, n) - rank of the degree-d condition matrix."""
    if d < 1:
        raise PolyError("degree must be >= 1")
    if isinstance(Z, PointSet):
        ring = ScalarRing(Z.field)
        mat = point_evaluation_matrix(ring, Z.points, d, Z.dim + 1)
    else:
        mat = Z.condition_rows(d)
    kern = kernel_of_conditions(mat)
    return mat.ncols - kern.rank
