"""Exact arithmetic: prime fields, extension towers, and rational functions.

Elements carry a raw ``rep`` (an int for a prime field, a tuple of
lower-layer reps for an extension layer) so inner loops can work on plain
Python data; the :class:`FieldElement` wrapper adds operators on top.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence


class FieldError(Exception):
    pass


class NonPrimeModulus(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class NotASubfield(FieldError):
    pass


class WrongCharacteristic(FieldError):
    pass


class UnsupportedFieldOperation(FieldError):
    pass


# ---------------------------------------------------------------------------
# univariate polynomial helpers over an arbitrary field (reps, low-to-high)

def _pnorm(f):
    while f and _rep_is_zero(f[-1]):
        f.pop()
    return f


def _rep_is_zero(r):
    if isinstance(r, tuple):
        return all(_rep_is_zero(x) for x in r)
    return r == 0


def _padd(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero_rep
        b = g[i] if i < len(g) else F.zero_rep
        out.append(F.add_rep(a, b))
    return _pnorm(out)


def _pneg(F, f):
    return [F.neg_rep(c) for c in f]


def _psub(F, f, g):
    return _padd(F, f, _pneg(F, g))


def _pmul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero_rep] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if _rep_is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add_rep(out[i + j], F.mul_rep(a, b))
    return _pnorm(out)


def _pdivmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv_lead = F.inv_rep(g[-1])
    q = [F.zero_rep] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = F.mul_rep(f[-1], inv_lead)
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = F.sub_rep(f[k + i], F.mul_rep(c, b))
        _pnorm(f)
        if not f:
            break
    return _pnorm(q), f


def _pmod(F, f, g):
    return _pdivmod(F, f, g)[1]


def _pgcd(F, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, _pmod(F, f, g)
    if f:  # make monic
        inv = F.inv_rep(f[-1])
        f = [F.mul_rep(c, inv) for c in f]
    return f


def _ppowmod(F, f, e, m):
    """f**e mod m by square-and-multiply; e may be a large int."""
    result = [F.one_rep]
    f = _pmod(F, list(f), m)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, f), m)
        f = _pmod(F, _pmul(F, f, f), m)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, m) -> bool:
    """Irreducibility of a monic poly over F via the x^(s^i) gcd criterion."""
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    s = F.size
    x = [F.zero_rep, F.one_rep]
    # x^(s^n) == x (mod m)
    if _psub(F, _ppowmod(F, x, s ** n, m), x):
        return False
    for ell in _prime_factors(n):
        g = _pgcd(F, _psub(F, _ppowmod(F, x, s ** (n // ell), m), x), m)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# fields

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with elements represented by ints in range(p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        self.p = p
        self.char = p
        self.size = p
        self.degree = 1
        self.base = None
        self.zero_rep = 0
        self.one_rep = 1

    # rep-level ops
    def add_rep(self, a, b):
        return (a + b) % self.p

    def sub_rep(self, a, b):
        return (a - b) % self.p

    def neg_rep(self, a):
        return (-a) % self.p

    def mul_rep(self, a, b):
        return (a * b) % self.p

    def inv_rep(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def rep_is_zero(self, a):
        return a % self.p == 0

    def rep_to_index(self, a):
        return a % self.p

    def index_to_rep(self, i):
        return i % self.p

    # element-level API
    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise FieldError("element of a different field")
            return value
        return FieldElement(self, int(value) % self.p)

    def from_index(self, i: int) -> "FieldElement":
        return FieldElement(self, self.index_to_rep(i))

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.size):
            yield FieldElement(self, i)

    def lift_rep(self, sub, rep):
        """Lift a rep of the subfield `sub` (a prefix of this tower) to here."""
        if sub is self or sub == self:
            return rep
        raise NotASubfield("not a layer of this tower")

    def spec_string(self) -> str:
        return f"p={self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class FieldTower:
    """One extension layer F_s[t]/(m) over a base field of size s."""

    def __init__(self, base, modulus: Sequence, check: bool = True):
        self.base = base
        self.char = base.char
        mod = [base.index_to_rep(c) if isinstance(c, int) else c for c in modulus]
        mod = _pnorm(list(mod))
        if len(mod) < 2:
            raise ReducibleModulus("modulus must have degree >= 1")
        inv = base.inv_rep(mod[-1])
        mod = [base.mul_rep(c, inv) for c in mod]  # monic
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.size = base.size ** self.degree
        self.zero_rep = tuple([base.zero_rep] * self.degree)
        one = [base.zero_rep] * self.degree
        one[0] = base.one_rep
        self.one_rep = tuple(one)
        if check and not is_irreducible(base, list(self.modulus)):
            raise ReducibleModulus("modulus is reducible over the base field")
        self._kron = self._kron_setup()

    def _kron_setup(self):
        """Packed-integer multiplication tables over a prime base field.

        Coefficients are packed into fixed-width bit slots of one Python
        integer so one big-int product performs the whole convolution;
        slot widths are chosen so no slot can overflow into its neighbor
        during multiplication or modular reduction.
        """
        base = self.base
        if not isinstance(base, PrimeField):
            return None
        p, n = base.p, self.degree
        conv_max = n * (p - 1) ** 2
        acc_max = conv_max * (1 + (n - 1) * (p - 1))
        bits = acc_max.bit_length() + 1
        mask = (1 << bits) - 1
        # x^(n+k) mod modulus for k = 0..n-2, as packed integers
        mod = [c % p for c in self.modulus]
        rem = [(-mod[i]) % p for i in range(n)]  # x^n mod modulus
        tails = []
        for _ in range(n - 1):
            tails.append(sum(c << (bits * i) for i, c in enumerate(rem)))
            carry = rem[-1]
            rem = [0] + rem[:-1]
            if carry:
                rem = [(rem[i] + carry * ((-mod[i]) % p)) % p for i in range(n)]
        return (p, n, bits, mask, tails)

    def _pad(self, f):
        f = list(f) + [self.base.zero_rep] * (self.degree - len(f))
        return tuple(f[: self.degree])

    def add_rep(self, a, b):
        B = self.base
        return tuple(B.add_rep(x, y) for x, y in zip(a, b))

    def sub_rep(self, a, b):
        B = self.base
        return tuple(B.sub_rep(x, y) for x, y in zip(a, b))

    def neg_rep(self, a):
        B = self.base
        return tuple(B.neg_rep(x) for x in a)

    def mul_rep(self, a, b):
        if self._kron is not None:
            p, n, bits, mask, tails = self._kron
            pa = pb = 0
            for i in range(n):
                pa |= a[i] << (bits * i)
                pb |= b[i] << (bits * i)
            prod = pa * pb
            for k in range(n - 1):
                c = (prod >> (bits * (n + k))) & mask
                if c:
                    prod += c * tails[k]
            return tuple(((prod >> (bits * i)) & mask) % p for i in range(n))
        B = self.base
        prod = _pmul(B, list(a), list(b))
        if len(prod) >= len(self.modulus):
            prod = _pmod(B, prod, list(self.modulus))
        return self._pad(prod)

    def inv_rep(self, a):
        B = self.base
        # extended Euclid on (a, modulus)
        r0, r1 = list(self.modulus), _pnorm(list(a))
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        s0, s1 = [], [B.one_rep]
        while r1:
            q, r = _pdivmod(B, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(B, s0, _pmul(B, q, s1))
        inv = B.inv_rep(r0[-1])  # r0 is a nonzero constant for coprime inputs
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible")
        return self._pad([B.mul_rep(c, inv) for c in s0])

    def rep_is_zero(self, a):
        return all(self.base.rep_is_zero(x) for x in a)

    def rep_to_index(self, a):
        idx = 0
        for c in reversed(a):
            idx = idx * self.base.size + self.base.rep_to_index(c)
        return idx

    def index_to_rep(self, i):
        out = []
        for _ in range(self.degree):
            i, r = divmod(i, self.base.size)
            out.append(self.base.index_to_rep(r))
        return tuple(out)

    def zero(self):
        return FieldElement(self, self.zero_rep)

    def one(self):
        return FieldElement(self, self.one_rep)

    def gen(self) -> "FieldElement":
        """The class of t, the adjoined root of the modulus."""
        rep = [self.base.zero_rep] * self.degree
        rep[1 if self.degree > 1 else 0] = self.base.one_rep
        if self.degree == 1:
            # degenerate degree-1 layer: t is a base element
            rep[0] = self.base.neg_rep(self.modulus[0])
        return FieldElement(self, tuple(rep))

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is self:
                return value
            return FieldElement(self, self.lift_rep(value.field, value.rep))
        if isinstance(value, int):
            # integer -> image of Z in this field (repeated 1s), i.e. value mod p
            c = value % self.char
            rep = [self.base.zero_rep] * self.degree
            rep[0] = self.base.element(c).rep if isinstance(self.base, FieldTower) else c
            return FieldElement(self, tuple(rep))
        if isinstance(value, (list, tuple)):
            rep = [self.base.element(c).rep for c in value]
            rep += [self.base.zero_rep] * (self.degree - len(rep))
            return FieldElement(self, tuple(rep[: self.degree]))
        raise FieldError(f"cannot coerce {value!r}")

    def from_index(self, i: int) -> "FieldElement":
        return FieldElement(self, self.index_to_rep(i))

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.size):
            yield self.from_index(i)

    def degree_over_prime(self) -> int:
        d, F = 1, self
        while isinstance(F, FieldTower):
            d *= F.degree
            F = F.base
        return d

    def lift_rep(self, sub, rep):
        if sub is self or sub == self:
            return rep
        lifted = self.base.lift_rep(sub, rep)
        out = [self.base.zero_rep] * self.degree
        out[0] = lifted
        return tuple(out)

    def spec_string(self) -> str:
        if isinstance(self.base, PrimeField):
            coeffs = ",".join(str(self.base.rep_to_index(c)) for c in self.modulus)
            return f"p={self.base.p};mod={coeffs}"
        return f"{self.base.spec_string()};ext={self.degree}"

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("FieldTower", self.base, self.modulus))

    def __repr__(self):
        return f"F_{self.size}"


def field_degree_over_prime(F) -> int:
    d = 1
    while isinstance(F, FieldTower):
        d *= F.degree
        F = F.base
    return d


class FieldElement:
    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _pair(self, other):
        """Coerce both operands into a common field (the larger tower)."""
        if isinstance(other, int):
            return self, self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is self.field or other.field == self.field:
            return self, other
        try:
            lifted = FieldElement(self.field, self.field.lift_rep(other.field, other.rep))
            return self, lifted
        except NotASubfield:
            pass
        try:
            lifted = FieldElement(other.field, other.field.lift_rep(self.field, self.rep))
            return lifted, other
        except NotASubfield:
            raise FieldError("elements of incompatible fields")

    def _coerce(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if a.field is not self.field:
            raise FieldError("elements of incompatible fields")
        return b

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field.add_rep(a.rep, b.rep))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field.sub_rep(a.rep, b.rep))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field.sub_rep(b.rep, a.rep))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_rep(self.rep))

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field.mul_rep(a.rep, b.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field.mul_rep(a.rep, a.field.inv_rep(b.rep)))

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, a.field.mul_rep(b.rep, a.field.inv_rep(a.rep)))

    def __pow__(self, e: int):
        if e < 0:
            return (self.inverse()) ** (-e)
        result = FieldElement(self.field, self.field.one_rep)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        return FieldElement(self.field, self.field.inv_rep(self.rep))

    def is_zero(self) -> bool:
        return self.field.rep_is_zero(self.rep)

    @property
    def index(self) -> int:
        return self.field.rep_to_index(self.rep)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            try:
                a, b = self._pair(other)
            except FieldError:
                return False
            return a.rep == b.rep
        return self.rep == other.rep

    def __hash__(self):
        return hash((id(type(self.field)), self.field.size, self.rep))

    def __repr__(self):
        return f"<{self.index} in {self.field!r}>"


# ---------------------------------------------------------------------------
# construction

def smallest_irreducible(base, degree: int):
    """Lexicographically smallest monic irreducible of given degree.

    Candidates are ordered by the canonical index of their coefficient
    vector (c_0 least significant).
    """
    if degree == 1:
        return [base.zero_rep, base.one_rep]
    for i in range(base.size ** degree):
        coeffs = []
        k = i
        for _ in range(degree):
            k, r = k // base.size, k % base.size
            coeffs.append(base.index_to_rep(r))
        cand = coeffs + [base.one_rep]
        if is_irreducible(base, cand):
            return cand
    raise FieldError("no irreducible polynomial found")  # unreachable


def make_field(p: int, layers: Iterable = (1,)):
    """Build a field tower over F_p.

    Each layer is either an int degree (modulus auto-chosen as the smallest
    irreducible) or an explicit modulus given as a coefficient list
    (low-to-high, ints or lower-layer elements).
    """
    F = PrimeField(p)
    for layer in layers:
        if isinstance(layer, int):
            if layer < 1:
                raise FieldError("layer degree must be >= 1")
            if layer == 1:
                continue
            F = FieldTower(F, smallest_irreducible(F, layer), check=False)
        else:
            F = FieldTower(F, layer, check=True)
    return F


def extend_field(F, m: int) -> FieldTower:
    """Degree-m extension of F with the smallest irreducible modulus."""
    if m < 2:
        raise FieldError("extension degree must be >= 2")
    return FieldTower(F, smallest_irreducible(F, m), check=False)


def frobenius(x: FieldElement, q: int) -> FieldElement:
    """x -> x**q where q is the size of a subfield of x's field."""
    F = x.field
    p = F.char
    k, n = 0, field_degree_over_prime(F)
    qq = q
    while qq > 1 and qq % p == 0:
        qq //= p
        k += 1
    if qq != 1 or k == 0 or n % k != 0:
        raise NotASubfield(f"{q} is not the size of a subfield of F_{F.size}")
    return x ** q


def find_nonsquare(F) -> FieldElement:
    """Smallest r (canonical order) with x^2 - r irreducible; odd char only."""
    if F.char == 2:
        raise WrongCharacteristic("field has characteristic 2")
    half = (F.size - 1) // 2
    for i in range(1, F.size):
        r = F.from_index(i)
        if (r ** half).index != 1:
            return r
    raise FieldError("no nonsquare found")  # unreachable for q > 1


def find_artin_schreier_r(F) -> FieldElement:
    """Smallest r (canonical order) with x^2 + x + r irreducible; char 2 only."""
    if F.char != 2:
        raise WrongCharacteristic("field has odd characteristic")
    image = {(y * y + y).rep for y in F.elements()}
    for i in range(F.size):
        r = F.from_index(i)
        if r.rep not in image:
            return r
    raise FieldError("no Artin-Schreier element found")  # unreachable


# ---------------------------------------------------------------------------
# field spec strings:  p=<int>[;mod=<c0,c1,...>][;ext=<degree>]

def parse_field_spec(spec: str):
    parts = [s.strip() for s in spec.split(";") if s.strip()]
    p = None
    layers = []
    for part in parts:
        if "=" not in part:
            raise FieldError(f"bad field spec component {part!r}")
        key, _, val = part.partition("=")
        key = key.strip()
        if key == "p":
            p = int(val)
        elif key == "mod":
            layers.append([int(c) for c in val.split(",")])
        elif key == "ext":
            layers.append(int(val))
        else:
            raise FieldError(f"unknown field spec key {key!r}")
    if p is None:
        raise FieldError("field spec must contain p=<prime>")
    return make_field(p, layers or [1])


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over a (finite) coefficient field

_SYMPY_RINGS: dict = {}


def _sympy_ring(p: int, names: tuple):
    key = (p, names)
    if key not in _SYMPY_RINGS:
        from sympy.polys.rings import ring as _ring
        from sympy.polys.domains import GF
        R, *gens = _ring(",".join(names), GF(p))
        _SYMPY_RINGS[key] = R
    return _SYMPY_RINGS[key]


class MultiPoly:
    """Sparse multivariate polynomial; coefficients are raw field reps."""

    __slots__ = ("field", "names", "terms")

    def __init__(self, field, names: tuple, terms: dict):
        self.field = field
        self.names = names
        self.terms = terms  # dict exps-tuple -> nonzero rep

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field, names):
        return cls(field, names, {})

    @classmethod
    def const(cls, field, names, value):
        e = field.element(value) if not isinstance(value, FieldElement) else value
        if e.is_zero():
            return cls.zero(field, names)
        return cls(field, names, {(0,) * len(names): e.rep})

    @classmethod
    def var(cls, field, names, name):
        i = names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(names)))
        return cls(field, names, {exps: field.one_rep})

    # basics -----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return len(self.terms) == 0 or (
            len(self.terms) == 1 and next(iter(self.terms)) == (0,) * len(self.names)
        )

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def constant_value(self) -> FieldElement:
        z = (0,) * len(self.names)
        rep = self.terms.get(z, self.field.zero_rep)
        return FieldElement(self.field, rep)

    def leading(self):
        """(exps, rep) of the graded-lex leading term."""
        key = max(self.terms, key=lambda e: (sum(e), e))
        return key, self.terms[key]

    def monic(self):
        if self.is_zero():
            return self
        _, c = self.leading()
        inv = self.field.inv_rep(c)
        F = self.field
        return MultiPoly(F, self.names, {e: F.mul_rep(v, inv) for e, v in self.terms.items()})

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.const(self.field, self.names, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        for e, v in o.terms.items():
            if e in out:
                s = F.add_rep(out[e], v)
                if F.rep_is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = v
        return MultiPoly(F, self.names, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly(F, self.names, {e: F.neg_rep(v) for e, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        if not self.terms or not o.terms:
            return MultiPoly.zero(F, self.names)
        a, b = self.terms, o.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        add_rep, mul_rep, is0 = F.add_rep, F.mul_rep, F.rep_is_zero
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = mul_rep(v1, v2)
                if e in out:
                    s = add_rep(out[e], prod)
                    if is0(s):
                        del out[e]
                    else:
                        out[e] = s
                elif not is0(prod):
                    out[e] = prod
        return MultiPoly(F, self.names, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiPoly.const(self.field, self.names, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.terms.items()))))

    # evaluation & division --------------------------------------------
    def eval(self, values: Sequence[FieldElement]) -> FieldElement:
        """Evaluate at field elements (one per variable)."""
        F = values[0].field if values else self.field
        reps = [v.rep for v in values]
        total = F.zero_rep
        powers: dict = {}
        for exps, c in self.terms.items():
            prod = F.lift_rep(self.field, c) if F is not self.field else c
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in powers:
                        r = F.one_rep
                        b, k = reps[i], e
                        while k:
                            if k & 1:
                                r = F.mul_rep(r, b)
                            b = F.mul_rep(b, b)
                            k >>= 1
                        powers[key] = r
                    prod = F.mul_rep(prod, powers[key])
            total = F.add_rep(total, prod)
        return FieldElement(F, total)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact division (raises if the division is not exact)."""
        F = self.field
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if divisor.is_constant():
            inv = F.inv_rep(divisor.constant_value().rep)
            return MultiPoly(F, self.names, {e: F.mul_rep(v, inv) for e, v in self.terms.items()})
        rem = dict(self.terms)
        out: dict = {}
        dlead_e, dlead_c = divisor.leading()
        dinv = F.inv_rep(dlead_c)
        while rem:
            e = max(rem, key=lambda x: (sum(x), x))
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, dlead_e))
            if any(x < 0 for x in qe):
                raise ValueError("inexact polynomial division")
            qc = F.mul_rep(c, dinv)
            out[qe] = qc
            for de, dv in divisor.terms.items():
                te = tuple(a + b for a, b in zip(qe, de))
                s = F.sub_rep(rem.get(te, F.zero_rep), F.mul_rep(qc, dv))
                if F.rep_is_zero(s):
                    rem.pop(te, None)
                else:
                    rem[te] = s
        return MultiPoly(F, self.names, out)

    def content_gcd(self, other: "MultiPoly" = None) -> "MultiPoly":
        """gcd with another polynomial (prime coefficient fields only)."""
        return mp_gcd(self, other) if other is not None else self

    def __repr__(self):
        return poly_str(self)


def mp_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    F = f.field
    if not isinstance(F, PrimeField):
        raise UnsupportedFieldOperation("multivariate gcd needs a prime coefficient field")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    R = _sympy_ring(F.p, f.names)
    a = R.from_dict({e: int(c) for e, c in f.terms.items()})
    b = R.from_dict({e: int(c) for e, c in g.terms.items()})
    h = a.gcd(b)
    out = {tuple(e): int(c) % F.p for e, c in h.to_dict().items()}
    return MultiPoly(F, f.names, {e: c for e, c in out.items() if c}).monic()


def mp_gcd_list(polys: Sequence[MultiPoly]) -> MultiPoly:
    g = None
    for f in polys:
        if f.is_zero():
            continue
        g = f.monic() if g is None else mp_gcd(g, f)
        if g.is_constant():
            break
    if g is None:
        raise ZeroDivisionError("gcd of all-zero list")
    return g


def poly_str(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for exps in sorted(f.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = f.terms[exps]
        idx = f.field.rep_to_index(c)
        mono = " ".join(
            f"{n}^{e}" if e > 1 else n for n, e in zip(f.names, exps) if e
        )
        if not mono:
            parts.append(str(idx))
        elif idx == 1:
            parts.append(mono)
        else:
            parts.append(f"{idx} {mono}")
    return " + ".join(parts)


class RationalFunction:
    """num/den with MultiPoly parts; denominator nonzero.

    Over prime coefficient fields fractions are kept reduced with a monic
    (graded-lex) denominator, making equality testing syntactic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly = None, reduce: bool = True):
        if den is None:
            den = MultiPoly.const(num.field, num.names, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = _rf_reduce(num, den)
        self.num = num
        self.den = den

    # helpers ----------------------------------------------------------
    @property
    def field(self):
        return self.num.field

    @property
    def names(self):
        return self.num.names

    @classmethod
    def const(cls, field, names, value):
        return cls(MultiPoly.const(field, names, value))

    @classmethod
    def var(cls, field, names, name):
        return cls(MultiPoly.var(field, names, name))

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction.const(self.field, self.names, other)
        return None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, reduce=False)

    def inverse(self):
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den) == (o.num * self.den)

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def eval(self, values: Sequence[FieldElement]) -> FieldElement:
        d = self.den.eval(values)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.eval(values) / d

    def __repr__(self):
        if self.den.is_constant():
            c = self.den.constant_value()
            if c.index == 1:
                return poly_str(self.num)
        return f"({poly_str(self.num)}) / ({poly_str(self.den)})"


def _rf_reduce(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return num, MultiPoly.const(den.field, den.names, 1)
    if den.is_constant():
        inv = den.field.inv_rep(den.constant_value().rep)
        F = den.field
        num = MultiPoly(F, num.names, {e: F.mul_rep(v, inv) for e, v in num.terms.items()})
        return num, MultiPoly.const(F, den.names, 1)
    if isinstance(num.field, PrimeField):
        g = mp_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    # monic denominator convention
    _, lead = den.leading()
    inv = den.field.inv_rep(lead)
    F = den.field
    scale = lambda f: MultiPoly(F, f.names, {e: F.mul_rep(v, inv) for e, v in f.terms.items()})
    return scale(num), scale(den)


class FunctionField:
    """F_q(a, b, c, ...): convenience wrapper producing RationalFunction values."""

    def __init__(self, field, names: Sequence[str] = ("a", "b", "c")):
        self.field = field
        self.names = tuple(names)
        self.char = field.char

    def gens(self) -> tuple:
        return tuple(RationalFunction.var(self.field, self.names, n) for n in self.names)

    def const(self, value) -> RationalFunction:
        return RationalFunction.const(self.field, self.names, value)

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def __repr__(self):
        return f"{self.field!r}({', '.join(self.names)})"
