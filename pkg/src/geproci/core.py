"""General projection, complete-intersection certification, and cones.

The central question: project a point set (or fat-point scheme) of P³ from
a general point P onto the plane w=0, and decide whether the image is the
complete intersection of curves of degrees (alpha, beta).

Two working modes:
  GENERIC — P = (a,b,c,1) with a,b,c independent transcendentals; all
            linear algebra runs over F_q(a,b,c); verdicts are conclusive.
  RANDOM  — P sampled from a large extension F_{q^m} with a seed; positive
            verdicts are probabilistic (bound reported), negative verdicts
            are conclusive by semicontinuity.
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
    RationalFunction,
    extend_field,
)
from .multipoly import (
    CommonFactor,
    CoprimalityWitness,
    EvaluationMatrix,
    HomogeneousForm,
    KernelBasis,
    ScalarRing,
    coprime_certificate,
    derivative_row,
    evaluate,
    evaluation_row,
    kernel_of_conditions,
    monomial_count,
    monomials,
    scalar_is_zero,
)
from .projgeom import PointSet, ProjectivePoint, all_lines, collinear_subsets, is_coplanar, line_through, lines_skew


class CoreError(Exception):
    pass


class CollisionDetected(CoreError):
    pass


class LengthMismatch(CoreError):
    pass


class NoCurveOfDegree(CoreError):
    def __init__(self, degree):
        super().__init__(f"no curve of degree {degree} through the projected scheme")
        self.degree = degree


class AllPairsShareComponent(CoreError):
    pass


class SharedGeneratorMissing(CoreError):
    pass


# ---------------------------------------------------------------------------
# the general point

RANDOM_MIN_FIELD = 2 ** 31


class GeneralPoint:
    """Projection center (a,b,c,1): transcendental or randomly sampled."""

    def __init__(self, mode, ring, coords, m=None, seed=None):
        self.mode = mode
        self.ring = ring
        self.coords = coords  # 4 scalars, last = 1
        self.m = m
        self.seed = seed

    @classmethod
    def generic(cls, field) -> "GeneralPoint":
        ff = FunctionField(field, ("a", "b", "c"))
        ring = ScalarRing(ff)
        a, b, c = ff.gens()
        return cls("generic", ring, [a, b, c, ff.one()])

    @classmethod
    def random(cls, field, seed: int, avoid: Optional[PointSet] = None) -> "GeneralPoint":
        """Sample from F_{q^m}, q^m >= 2^31, off every secant of `avoid`."""
        m = 1
        while field.size ** m < RANDOM_MIN_FIELD:
            m += 1
        E = extend_field(field, m) if m > 1 else field
        ring = ScalarRing(E)
        rng = random.Random(seed)
        secants = _secant_lines(avoid) if avoid is not None else []
        for _ in range(1000):
            coords = [E.from_index(rng.randrange(E.size)) for _ in range(3)]
            coords.append(E.one())
            if any(c.index >= field.size for c in coords[:3]):
                p = ProjectivePoint(E, coords)
                if all(not _on_line(p, l, E) for l in secants):
                    return cls("random", ring, coords, m=m, seed=seed)
        raise CoreError("could not sample a general point off all secants")


def _secant_lines(Z: PointSet):
    seen = {}
    pts = Z.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            l = line_through(pts[i], pts[j])
            seen[l.key()] = l
    return list(seen.values())


def _on_line(p: ProjectivePoint, line, E) -> bool:
    from .projgeom import matrix_rank

    rows = [
        [E.lift_rep(line.field, c) for c in line.rows[0]],
        [E.lift_rep(line.field, c) for c in line.rows[1]],
        list(p.reps),
    ]
    return matrix_rank(E, rows) == 2


# ---------------------------------------------------------------------------
# projection

@dataclass
class ProjectedScheme:
    ring: ScalarRing
    entries: list  # (coords3, None) or (coords3, tangent_dir3)
    point: GeneralPoint

    @property
    def length(self):
        return sum(1 if d is None else 2 for _, d in self.entries)

    def condition_rows(self, degree: int) -> EvaluationMatrix:
        monos = monomials(3, degree)
        rows = []
        for coords, direction in self.entries:
            rows.append(evaluation_row(self.ring, coords, monos))
            if direction is not None:
                rows.append(derivative_row(self.ring, coords, direction, monos))
        return EvaluationMatrix(self.ring, 3, degree, rows, monos)


def _entries_of(Z):
    """(ProjectivePoint, direction-point-or-None) pairs for sets or schemes."""
    if hasattr(Z, "as_projection_entries"):
        return Z.as_projection_entries()
    return [(p, None) for p in Z.points]


def _image_coords(ring: ScalarRing, P: GeneralPoint, point) -> list:
    """Image of Q under projection from P=(a,b,c,1) onto w=0."""
    q = ring.coerce_point_coords(point)
    a, b, c, _ = P.coords
    return [q[0] - q[3] * a, q[1] - q[3] * b, q[2] - q[3] * c]


def project(Z, P: GeneralPoint) -> ProjectedScheme:
    """Project a PointSet or fat-point scheme from P onto the plane w=0.

    Points already on the target plane map to themselves and come first,
    which keeps later eliminations cheap (their condition rows are free of
    the transcendentals).
    """
    ring = P.ring
    constant_entries = []
    moving_entries = []
    for point, direction in _entries_of(Z):
        img = _image_coords(ring, P, point)
        dir_img = None if direction is None else _image_coords(ring, P, direction)
        coords = point.coords if hasattr(point, "coords") else point
        on_plane = _coord_is_zero(coords[3])
        (constant_entries if on_plane and direction is None else moving_entries).append(
            (img, dir_img)
        )
    entries = constant_entries + moving_entries
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if _proj_equal(entries[i][0], entries[j][0]):
                raise CollisionDetected(
                    f"projected images {i} and {j} coincide; P is not general"
                )
    return ProjectedScheme(ring=ring, entries=entries, point=P)


def _coord_is_zero(c) -> bool:
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def _proj_equal(u, v) -> bool:
    for i in range(3):
        for j in range(i + 1, 3):
            if not scalar_is_zero(u[i] * v[j] - u[j] * v[i]):
                return False
    return True


def interpolate_curve(S: ProjectedScheme, degree: int) -> KernelBasis:
    """All plane curves of the given degree through the projected scheme."""
    if degree < 1:
        raise CoreError("degree must be >= 1")
    return kernel_of_conditions(S.condition_rows(degree))


# ---------------------------------------------------------------------------
# Frobenius cone

def _scalar_pow_q(x, q):
    return x ** q


def frobenius_cone(field, P: GeneralPoint) -> HomogeneousForm:
    """det of rows (a,b,c,d), (a^q,..), (x,y,z,w), (x^q,..), degree q+1.

    Expanded by Laplace along the two scalar rows: the complementary-minor
    pairing gives six terms (p_i p_j^q - p_j p_i^q) * (x_k x_l^q - x_l x_k^q).
    """
    q = field.size
    ring = P.ring
    p = P.coords
    pq = [_scalar_pow_q(c, q) for c in p]
    coeffs: dict = {}

    def add_term(exps, c):
        if exps in coeffs:
            coeffs[exps] = coeffs[exps] + c
        else:
            coeffs[exps] = c

    idx = list(range(4))
    for i in range(4):
        for j in range(i + 1, 4):
            k, l = [t for t in idx if t not in (i, j)]
            # minor of rows (P, P^q) in columns (i, j)
            m = p[i] * pq[j] - p[j] * pq[i]
            if scalar_is_zero(m):
                continue
            sign = (-1) ** (i + j + 1)
            m = m * sign
            # complementary minor of rows (X, X^q) in columns (k, l)
            e1 = [0, 0, 0, 0]
            e1[k] = 1
            e1[l] = q
            add_term(tuple(e1), m)
            e2 = [0, 0, 0, 0]
            e2[k] = q
            e2[l] = 1
            add_term(tuple(e2), ring.zero() - m)
    return HomogeneousForm(ring, 4, q + 1, coeffs)


def frobenius_membership_terms(field, P: GeneralPoint):
    """The six I(P)^(q+1) generators whose signed sum is the cone.

    Each term is (p_i x_j - p_j x_i)^q * (p_k x_l - p_l x_k) with the
    Laplace sign; both factors vanish at P, so the product sits in
    I(P)^(q+1).  Used to certify cone membership by a syntactic identity.
    """
    q = field.size
    ring = P.ring
    p = P.coords
    terms = []
    idx = list(range(4))
    for i in range(4):
        for j in range(i + 1, 4):
            k, l = [t for t in idx if t not in (i, j)]
            sign = (-1) ** (i + j)
            lin1 = {_unit4(j): p[i], _unit4(i): ring.zero() - p[j]}
            lin2 = {_unit4(l): p[k], _unit4(k): ring.zero() - p[l]}
            f1 = HomogeneousForm(ring, 4, 1, lin1)
            f2 = HomogeneousForm(ring, 4, 1, lin2)
            power = f1
            for _ in range(q - 1):
                power = power * f1
            terms.append(((i, j), sign, power * f2))
    return terms


def _unit4(i):
    e = [0, 0, 0, 0]
    e[i] = 1
    return tuple(e)


def frobenius_membership_check(field, P: GeneralPoint) -> bool:
    """Verify det == signed sum of the six I(P)^(q+1) products."""
    F = frobenius_cone(field, P)
    total = None
    for _, sign, term in frobenius_membership_terms(field, P):
        signed = term if sign == 1 else term.scale(P.ring.const(-1))
        total = signed if total is None else total + signed
    return total is not None and total == F


def restrict_to_plane(F: HomogeneousForm) -> HomogeneousForm:
    """Set w=0; for a cone with vertex (a,b,c,1) this is its plane curve."""
    out = {e[:3]: c for e, c in F.coeffs.items() if e[3] == 0}
    return HomogeneousForm(F.ring, 3, F.degree, out)


@dataclass
class TransversalityReport:
    total: int
    violations: list
    rational_vanishing_ok: bool

    @property
    def all_transversal(self):
        return not self.violations


def cone_line_transversality(F: HomogeneousForm, field) -> TransversalityReport:
    """Check the cone restricts to a nonzero binary form on every line.

    The restriction has degree q+1 and vanishes at all q+1 rational
    parameter values, so it is identically zero iff it also vanishes at
    one additional parameter from a proper extension.
    """
    q = field.size
    if F.ring.finite and F.ring.field.size > field.size:
        E = F.ring.field
    else:
        E = extend_field(field, 2)
    lifted = _lift_form(F, E)
    # first q indices of the extension are the lifted base-field elements;
    # index q is the first genuinely new parameter
    rational_params = [E.from_index(i) for i in range(q)]
    extra_param = E.from_index(field.size)
    violations = []
    rational_ok = True
    for line in all_lines(field):
        A = [FieldElement(E, E.lift_rep(field, c)) for c in line.rows[0]]
        B = [FieldElement(E, E.lift_rep(field, c)) for c in line.rows[1]]

        def at(t):
            return evaluate(lifted, [a + t * b for a, b in zip(A, B)])

        rational_values = [at(t) for t in rational_params]
        rational_values.append(evaluate(lifted, B))  # parameter (0,1)
        nonzero_rational = [v for v in rational_values if not scalar_is_zero(v)]
        if nonzero_rational:
            rational_ok = False
            continue  # visibly nonzero restriction: transversal
        # all q+1 rational roots present; one more root would exceed the
        # degree, so a single extension evaluation decides
        if scalar_is_zero(at(extra_param)):
            violations.append(line)
    return TransversalityReport(
        total=len(all_lines(field)), violations=violations, rational_vanishing_ok=rational_ok
    )


def _lift_form(F: HomogeneousForm, E) -> HomogeneousForm:
    """Re-express a form over F_q(a,b,c) as a form over F_{q^2}(a,b,c)."""
    ring = F.ring
    if ring.finite:
        new_ring = ScalarRing(E)
        return F.map_coefficients(
            lambda c: FieldElement(E, E.lift_rep(c.field, c.rep)), new_ring
        )
    ff = FunctionField(E, ring.function_field.names)
    new_ring = ScalarRing(ff)

    def lift_poly(p: MultiPoly) -> MultiPoly:
        return MultiPoly(E, p.names, {e: E.lift_rep(p.field, c) for e, c in p.terms.items()})

    return F.map_coefficients(
        lambda c: RationalFunction(lift_poly(c.num), lift_poly(c.den), reduce=False),
        new_ring,
    )


# ---------------------------------------------------------------------------
# unexpected cones

def unexpected_cone_dim(Z: PointSet, d: int, P: GeneralPoint):
    """(lhs, rhs, unexpected): lhs = dim [I(Z) ∩ I(P)^d]_d.

    Degree-d forms in I(P)^d are exactly pullbacks of plane degree-d
    curves under projection from P, so lhs equals the kernel dimension of
    the projected point conditions — a much smaller elimination than the
    stacked 4-variable matrix.
    """
    from .multipoly import hilbert_value

    S = project(Z, P)
    lhs = interpolate_curve(S, d).dimension
    n = Z.dim
    rhs = max(0, hilbert_value(Z, d) - math.comb(d + n - 1, n))
    return lhs, rhs, lhs > rhs


def unexpectedness_inequality(q: int):
    """C(q²−q+2, 2) > C(q²+4, 3) − (q²+1)(q+1) − C(q²+3, 3), exactly."""
    if q < 2:
        raise CoreError("q must be >= 2")
    lhs = math.comb(q * q - q + 2, 2)
    rhs = math.comb(q * q + 4, 3) - (q * q + 1) * (q + 1) - math.comb(q * q + 3, 3)
    return lhs, rhs, lhs > rhs


# ---------------------------------------------------------------------------
# certification

@dataclass
class GeprociCertificate:
    alpha: int
    beta: int
    f: HomogeneousForm
    g: HomogeneousForm
    coprimality: CoprimalityWitness
    length: int
    mode: str
    seed: Optional[int] = None
    m: Optional[int] = None
    flags: dict = dataclass_field(default_factory=dict)

    def recheck(self, S: ProjectedScheme) -> bool:
        """Self-contained re-verification against the projected scheme."""
        if self.alpha * self.beta != S.length:
            return False
        if not (_vanishes_on(self.f, S) and _vanishes_on(self.g, S)):
            return False
        return isinstance(coprime_certificate(self.f, self.g), CoprimalityWitness)

    def to_dict(self) -> dict:
        return {
            "degrees": [self.alpha, self.beta],
            "forms": [self.f.serialize(), self.g.serialize()],
            "coprimality": {
                "variable": self.coprimality.variable,
                "resultant_nonzero": self.coprimality.resultant_nonzero,
            },
            "length": self.length,
            "flags": self.flags,
            "mode": self.mode,
            "seed": self.seed,
            "m": self.m,
        }


def _vanishes_on(f: HomogeneousForm, S: ProjectedScheme) -> bool:
    from .multipoly import directional_derivative

    for coords, direction in S.entries:
        if not scalar_is_zero(evaluate(f, coords)):
            return False
        if direction is not None:
            if not scalar_is_zero(directional_derivative(f, coords, direction)):
                return False
    return True


PAIR_CAP = 64


def _candidates_for_degree(S: ProjectedScheme, degree: int, hints: list,
                           with_kernel: bool = True) -> list:
    """Verified candidate curves of one degree, structural hints first.

    The interpolation kernel is appended only when requested: when a
    verified structural candidate exists it usually suffices, and the
    kernel elimination is the expensive step in both modes.
    """
    out = []
    for h in hints:
        if h.degree == degree and _vanishes_on(h, S):
            out.append(h)
    if with_kernel:
        kern = interpolate_curve(S, degree)
        for f in kern.forms:
            if not any(f.proportional_to(c) for c in out):
                out.append(f)
    return out


def certify_complete_intersection(
    S: ProjectedScheme, alpha: int, beta: int, hints: Optional[list] = None
) -> GeprociCertificate:
    """Find coprime curves of degrees (alpha, beta) through the scheme.

    With length = alpha*beta already contained in both curves, Bézout
    forces the intersection to be exactly the scheme, so coprimality of
    one vanishing pair suffices.  Structural hints are tried first; the
    interpolation kernels are only computed if the hint pairs fail.
    """
    if S.length != alpha * beta:
        raise LengthMismatch(f"scheme length {S.length} != {alpha}*{beta}")
    hints = hints or []
    mode = "generic" if not S.ring.finite else "random"
    cand_a = _candidates_for_degree(S, alpha, hints, with_kernel=False)
    cand_b = _candidates_for_degree(S, beta, hints, with_kernel=False)
    tried = 0
    n_hint_a, n_hint_b = len(cand_a), len(cand_b)

    def try_pairs(skip_hint_pairs: bool):
        nonlocal tried
        for i, f in enumerate(cand_a):
            for j, g in enumerate(cand_b):
                if skip_hint_pairs and i < n_hint_a and j < n_hint_b:
                    continue
                if tried >= PAIR_CAP:
                    return None
                tried += 1
                w = coprime_certificate(f, g)
                if isinstance(w, CoprimalityWitness):
                    return GeprociCertificate(
                        alpha=alpha, beta=beta, f=f, g=g, coprimality=w,
                        length=S.length, mode=mode,
                        seed=S.point.seed, m=S.point.m,
                    )
        return None

    if cand_a and cand_b:
        cert = try_pairs(skip_hint_pairs=False)
        if cert is not None:
            return cert
    cand_a = _candidates_for_degree(S, alpha, hints)
    if not cand_a:
        raise NoCurveOfDegree(alpha)
    cand_b = _candidates_for_degree(S, beta, hints)
    if not cand_b:
        raise NoCurveOfDegree(beta)
    cert = try_pairs(skip_hint_pairs=bool(n_hint_a and n_hint_b))
    if cert is not None:
        return cert
    # canonical linear combinations within each kernel before giving up
    for combo in _combinations(cand_a)[:8]:
        for g in cand_b[:8]:
            if tried >= 2 * PAIR_CAP:
                break
            tried += 1
            if not _vanishes_on(combo, S):
                continue
            w = coprime_certificate(combo, g)
            if isinstance(w, CoprimalityWitness):
                return GeprociCertificate(
                    alpha=alpha, beta=beta, f=combo, g=g, coprimality=w,
                    length=S.length, mode=mode, seed=S.point.seed, m=S.point.m,
                )
    raise AllPairsShareComponent(
        f"every candidate pair of degrees ({alpha},{beta}) shares a factor"
    )


def _combinations(cands: list) -> list:
    if len(cands) < 2:
        return []
    out = []
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            s = cands[i] + cands[j]
            if not s.is_zero():
                out.append(s)
    return out


# ---------------------------------------------------------------------------
# structural candidate curves

def line_product_candidates(Z, S: ProjectedScheme, degree: int) -> list:
    """Degree-d products of projected lines from a d-class collinear cover."""
    if not isinstance(Z, PointSet):
        return []
    part = _collinear_partition(Z, degree)
    if part is None:
        return []
    ring = S.ring
    P = S.point
    forms = []
    prod = None
    for members in part:
        a = _image_coords(ring, P, members[0])
        b = _image_coords(ring, P, members[1])
        # line through two plane points: coefficients are the 2x2 minors
        lin = {
            (1, 0, 0): a[1] * b[2] - a[2] * b[1],
            (0, 1, 0): a[2] * b[0] - a[0] * b[2],
            (0, 0, 1): a[0] * b[1] - a[1] * b[0],
        }
        l = HomogeneousForm(ring, 3, 1, lin)
        prod = l if prod is None else prod * l
    if prod is not None and prod.degree == degree:
        forms.append(prod)
    return forms


def _collinear_partition(Z: PointSet, parts: int):
    """Partition Z into exactly `parts` collinear classes (each >= 2 pts)."""
    classes = []
    for line, members in collinear_subsets(Z, 2):
        classes.append(tuple(members))
    # try larger classes first so the part count shrinks fastest
    classes.sort(key=lambda ms: (-len(ms), ms))
    keys = sorted(p.key() for p in Z.points)
    index = {k: i for i, k in enumerate(keys)}
    masks = []
    for ms in classes:
        m = 0
        for p in ms:
            m |= 1 << index[p.key()]
        masks.append((m, ms))
    target = (1 << len(keys)) - 1
    chosen = []
    max_class = max((len(ms) for ms in classes), default=0)

    def rec(mask, used):
        if mask == 0:
            return used == parts
        if used >= parts:
            return False
        if mask.bit_count() > (parts - used) * max_class:
            return False
        low = (mask & -mask).bit_length() - 1
        for m, ms in masks:
            if m & (1 << low) and m & mask == m:
                chosen.append(ms)
                if rec(mask & ~m, used + 1):
                    return True
                chosen.pop()
        return False

    if rec(target, 0):
        return list(chosen)
    return None


def frobenius_curve_candidate(Z, S: ProjectedScheme, degree: int, field) -> list:
    """The Frobenius cone's plane curve, valid whenever Z is F_q-rational."""
    if degree != field.size + 1:
        return []
    F = frobenius_cone(field, S.point)
    return [restrict_to_plane(F)]


# ---------------------------------------------------------------------------
# the main verdict

@dataclass
class GeprociVerdict:
    geproci: bool
    alpha: int
    beta: int
    mode: str
    certificate: Optional[GeprociCertificate]
    trials: int = 1
    failure_bound: Optional[str] = None
    reason: str = ""

    def to_dict(self) -> dict:
        d = {
            "geproci": self.geproci,
            "degrees": [self.alpha, self.beta],
            "mode": self.mode,
            "trials": self.trials,
            "reason": self.reason,
        }
        if self.failure_bound:
            d["failure_bound"] = self.failure_bound
        if self.certificate:
            d["certificate"] = self.certificate.to_dict()
        return d


def _scheme_field(Z):
    return Z.field


def _scheme_length(Z) -> int:
    if hasattr(Z, "scheme_length"):
        return Z.scheme_length()
    return len(Z)


def _structural_hints(Z, S: ProjectedScheme, alpha: int, beta: int, field) -> list:
    hints = []
    for degree in sorted({alpha, beta}):
        hints.extend(frobenius_curve_candidate(Z, S, degree, field))
        hints.extend(line_product_candidates(Z, S, degree))
    return hints


def geproci_check(
    Z,
    alpha: int,
    beta: int,
    mode: str = "generic",
    trials: int = 3,
    seed: int = 0,
) -> GeprociVerdict:
    """Decide whether Z is (alpha, beta)-geproci.

    GENERIC mode runs once and is conclusive.  RANDOM mode runs `trials`
    seeded instances; a negative at any random point is conclusive (the
    kernel dimension can only grow under specialization), while uniform
    success is reported with a polynomial-identity-testing failure bound.
    """
    field = _scheme_field(Z)
    length = _scheme_length(Z)
    if length != alpha * beta:
        raise LengthMismatch(f"scheme length {length} != {alpha}*{beta}")
    if mode == "generic":
        P = GeneralPoint.generic(field)
        S = project(Z, P)
        hints = _structural_hints(Z, S, alpha, beta, field)
        try:
            cert = certify_complete_intersection(S, alpha, beta, hints)
        except (NoCurveOfDegree, AllPairsShareComponent) as e:
            return GeprociVerdict(False, alpha, beta, mode, None, reason=str(e))
        return GeprociVerdict(True, alpha, beta, mode, cert, reason="complete intersection certified")
    if mode != "random":
        raise CoreError(f"unknown mode {mode!r}")

    avoid = Z if isinstance(Z, PointSet) else getattr(Z, "support_points", lambda: None)()
    cert = None
    m = None
    for t in range(trials):
        trial_seed = seed + t
        for attempt in range(32):
            P = GeneralPoint.random(field, trial_seed * 1000 + attempt, avoid=avoid)
            m = P.m
            try:
                S = project(Z, P)
            except CollisionDetected:
                continue
            break
        else:
            raise CoreError("could not find a collision-free random point")
        hints = _structural_hints(Z, S, alpha, beta, field)
        try:
            cert = certify_complete_intersection(S, alpha, beta, hints)
        except (NoCurveOfDegree, AllPairsShareComponent) as e:
            return GeprociVerdict(
                False, alpha, beta, mode, None, trials=t + 1,
                reason=f"trial {t}: {e}",
            )
    degree_bound = alpha * beta + alpha + beta
    bound = f"{trials} * {degree_bound} / {field.size}^{m}"
    return GeprociVerdict(
        True, alpha, beta, mode, cert, trials=trials,
        failure_bound=bound, reason="all trials certified (probabilistic)",
    )


# ---------------------------------------------------------------------------
# classification

@dataclass
class ClassificationFlags:
    degenerate: bool
    grid: bool
    half_grid_cover: bool
    nontrivial: bool
    cover: Optional[list] = None

    def to_dict(self):
        return {
            "degenerate": self.degenerate,
            "grid": self.grid,
            "half_grid_cover": self.half_grid_cover,
            "nontrivial": self.nontrivial,
        }


def skew_line_cover(Z: PointSet, count: int, per: int):
    """Cover of Z by `count` pairwise-skew lines with exactly `per` points
    of Z each, or None."""
    if count * per != len(Z):
        return None
    usable = []
    for line, members in collinear_subsets(Z, per):
        if len(members) == per:
            usable.append((line, members))
    keys = sorted(p.key() for p in Z.points)
    index = {k: i for i, k in enumerate(keys)}
    masks = []
    for line, members in usable:
        m = 0
        for p in members:
            m |= 1 << index[p.key()]
        masks.append((m, line))
    target = (1 << len(keys)) - 1
    chosen = []

    def rec(mask):
        if mask == 0:
            return True
        low = (mask & -mask).bit_length() - 1
        for m, line in masks:
            if m & (1 << low) and m & mask == m:
                if all(lines_skew(line, c) for c in chosen):
                    chosen.append(line)
                    if rec(mask & ~m):
                        return True
                    chosen.pop()
        return False

    if rec(target):
        return list(chosen)
    return None


def classify(Z: PointSet, alpha: int, beta: int) -> ClassificationFlags:
    """Combinatorial flags: degenerate / grid / half grid cover / nontrivial."""
    degenerate = is_coplanar(Z)
    cover_ab = skew_line_cover(Z, alpha, beta)
    cover_ba = skew_line_cover(Z, beta, alpha)
    grid = cover_ab is not None and cover_ba is not None
    half = (cover_ab is not None or cover_ba is not None) and not grid
    cover = cover_ab if cover_ab is not None else cover_ba
    return ClassificationFlags(
        degenerate=degenerate,
        grid=grid and not degenerate,
        half_grid_cover=half and not degenerate,
        nontrivial=not degenerate and not grid and not half,
        cover=cover,
    )


# ---------------------------------------------------------------------------
# residual sets

@dataclass
class ResidualVerdict:
    verdict: Optional[GeprociVerdict]
    degenerate_case: bool
    shared_generator: Optional[HomogeneousForm]


def residual_check(Z: PointSet, Zp: PointSet, alpha: int, gamma: int, beta: int) -> ResidualVerdict:
    """If Z is {alpha,beta}- and Z' {gamma,beta}-geproci with a shared
    degree-beta generator, the residual Z∖Z' is {alpha−gamma, beta}-geproci."""
    for p in Zp.points:
        if p not in Z:
            raise CoreError("Z' must be a subset of Z")
    if len(Zp) == len(Z):
        return ResidualVerdict(None, True, None)
    P = GeneralPoint.generic(Z.field)
    S = project(Z, P)
    # I(Z) ⊆ I(Z'), so any degree-beta curve through the projection of Z
    # works for both; structural candidates are tried before interpolation
    hints = _structural_hints(Z, S, beta, beta, Z.field)
    shared = None
    Sp = project(Zp, P)
    for h in _candidates_for_degree(S, beta, hints):
        if _vanishes_on(h, Sp):
            shared = h
            break
    if shared is None:
        raise SharedGeneratorMissing(f"no degree-{beta} curve through both projections")
    Zpp = Z.minus(Zp)
    verdict = geproci_check(Zpp, alpha - gamma, beta, mode="generic")
    return ResidualVerdict(verdict, False, shared)
