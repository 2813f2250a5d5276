"""Field towers: arithmetic laws, Frobenius, subfield embeddings."""
import random

import pytest

from geproci.fields import (
    FieldError,
    FunctionField,
    MultiPoly,
    NotASubfield,
    RationalFunction,
    ReducibleModulus,
    extend_field,
    field_degree_over_prime,
    frobenius,
    make_field,
    mp_gcd,
    parse_field_spec,
)

TOWERS = ["p=2", "p=3", "p=5", "p=2;ext=2", "p=3;ext=2", "p=2;ext=2;ext=2"]


@pytest.mark.parametrize("spec", TOWERS)
def test_field_axioms_random(spec):
    F = parse_field_spec(spec)
    rng = random.Random(42)
    zero = F.from_index(0)
    one = F.from_index(1)
    for _ in range(1000):
        x = F.from_index(rng.randrange(F.size))
        y = F.from_index(rng.randrange(F.size))
        z = F.from_index(rng.randrange(F.size))
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + zero == x
        assert x * one == x
        assert x - x == zero
        if y != zero:
            assert (x / y) * y == x


@pytest.mark.parametrize("spec", TOWERS)
def test_frobenius_is_homomorphism(spec):
    F = parse_field_spec(spec)
    p = F.char
    rng = random.Random(7)
    for _ in range(1000):
        x = F.from_index(rng.randrange(F.size))
        y = F.from_index(rng.randrange(F.size))
        assert (x + y) ** p == x ** p + y ** p
        assert (x * y) ** p == x ** p * y ** p


@pytest.mark.parametrize("spec,size", [("p=2", 2), ("p=3;ext=2", 9), ("p=2;ext=4", 16)])
def test_from_index_bijection(spec, size):
    F = parse_field_spec(spec)
    assert F.size == size
    seen = {F.from_index(i).rep for i in range(size)}
    assert len(seen) == size


def test_multiplicative_group_order():
    F = parse_field_spec("p=3;ext=2")
    for i in range(1, F.size):
        x = F.from_index(i)
        assert x ** (F.size - 1) == F.from_index(1)


def test_frobenius_fixes_exactly_the_subfield():
    F = parse_field_spec("p=2;ext=4")  # F_16 contains F_4
    fixed = [i for i in range(F.size) if frobenius(F.from_index(i), 4) == F.from_index(i)]
    assert len(fixed) == 4


def test_frobenius_rejects_non_subfield_size():
    F = parse_field_spec("p=2;ext=2")
    with pytest.raises(NotASubfield):
        frobenius(F.from_index(1), 8)


def test_subfield_elements_coerce_into_extension():
    F = parse_field_spec("p=3")
    E = extend_field(F, 2)
    a = F.from_index(2)
    b = E.from_index(5)
    assert (a + b) - b == E.element(a)
    assert a * b == b * a


def test_incompatible_fields_refuse_arithmetic():
    F = parse_field_spec("p=2")
    G = parse_field_spec("p=3")
    with pytest.raises(FieldError):
        F.from_index(1) + G.from_index(1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(2, [[1, 0, 1]])  # t^2 + 1 = (t+1)^2 over F_2


def test_spec_string_roundtrip():
    for spec in TOWERS:
        F = parse_field_spec(spec)
        G = parse_field_spec(F.spec_string())
        assert G.size == F.size and G.char == F.char


def test_degree_over_prime():
    assert field_degree_over_prime(parse_field_spec("p=2;ext=2;ext=3")) == 6


def test_multipoly_arithmetic_and_gcd():
    F = parse_field_spec("p=3")
    ff = FunctionField(F, ("a", "b"))
    a, b = ff.gens()
    x = (a + b) * (a - b)
    assert x == a * a - b * b
    g = mp_gcd((a.num * b.num), (a.num * a.num))
    assert g.degree() == 1


def test_rational_function_reduction():
    F = parse_field_spec("p=5")
    ff = FunctionField(F, ("a",))
    (a,) = ff.gens()
    r = (a * a - ff.one()) / (a - ff.one())
    assert r == a + ff.one()
