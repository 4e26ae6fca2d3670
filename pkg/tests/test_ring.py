import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from incidence_lie.ring import (
    INTEGER,
    INTPOLY,
    RATIONAL,
    AdditiveDerivation,
    DerivationRingError,
    ModularRing,
    RingMismatchError,
    RingPayloadError,
    ring_from_name,
    validate_torsionfree,
)
from oracles import T, from_sympy_poly, has_torsion, to_sympy

ints = st.integers(-10**6, 10**6)
rats = st.fractions(max_denominator=50)
polys = st.lists(st.integers(-20, 20), max_size=5).map(INTPOLY.parse)
MOD15 = ModularRing(15)
mods = st.integers(0, 14)

RING_STRATEGIES = [
    (INTEGER, ints),
    (RATIONAL, rats),
    (MOD15, mods),
    (INTPOLY, polys),
]


def test_integer_addition():
    assert INTEGER.add(2, 3) == 5


def test_rational_product():
    assert RATIONAL.mul(Fraction(1, 2), Fraction(2, 3)) == Fraction(1, 3)


def test_polynomial_product_matches_sympy():
    got = INTPOLY.mul((1, 1), (-1, 1))
    assert got == from_sympy_poly((T + 1) * (T - 1)) == (-1, 0, 1)


@given(polys, polys)
def test_polynomial_product_oracle(a, b):
    want = from_sympy_poly(to_sympy(INTPOLY, a) * to_sympy(INTPOLY, b))
    assert INTPOLY.mul(a, b) == want


@given(polys)
def test_polynomial_derivative_oracle(a):
    d = AdditiveDerivation.poly_times_ddt((1,))
    assert d.apply(INTPOLY, a) == from_sympy_poly(sympy.diff(to_sympy(INTPOLY, a), T))


@pytest.mark.parametrize("ring,strategy", RING_STRATEGIES, ids=lambda r: getattr(r, "name", ""))
def test_ring_axioms(ring, strategy):
    @given(strategy, strategy, strategy)
    def run(a, b, c):
        add, mul = ring.add, ring.mul
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
        assert ring.is_zero(add(a, ring.neg(a)))
        assert mul(a, ring.one) == a
        assert ring.sub(a, b) == add(a, ring.neg(b))

    run()


@pytest.mark.parametrize("ring,strategy", RING_STRATEGIES, ids=lambda r: getattr(r, "name", ""))
def test_format_parse_round_trip(ring, strategy):
    @given(strategy)
    def run(a):
        assert ring.parse(ring.format(a)) == a

    run()


def test_serialisation_shapes():
    assert INTEGER.format(-12) == "-12"
    assert RATIONAL.format(Fraction(-3, 6)) == "-1/2"
    assert RATIONAL.format(Fraction(4)) == "4"
    assert MOD15.format(7) == "7 mod 15"
    assert INTPOLY.format((0, 2, 1)) == [0, 2, 1]


def test_canonical_payloads():
    assert RATIONAL.parse("-4/2") == Fraction(-2)
    assert INTPOLY.parse([1, 0, 0]) == (1,)
    assert INTPOLY.parse([0, 0]) == ()
    with pytest.raises(RingPayloadError):
        INTPOLY.check((1, 0))
    with pytest.raises(RingPayloadError):
        RATIONAL.parse("1/0")
    with pytest.raises(RingPayloadError):
        MOD15.parse("3 mod 7")
    with pytest.raises(RingPayloadError):
        INTEGER.parse(True)


def test_ring_names():
    assert ring_from_name("int") == INTEGER
    assert ring_from_name("rat") == RATIONAL
    assert ring_from_name("intpoly") == INTPOLY
    assert ring_from_name("mod:9") == ModularRing(9)
    with pytest.raises(ValueError):
        ring_from_name("gf:4")
    with pytest.raises(ValueError):
        ModularRing(1)


def test_value_wrapper_rejects_mixed_rings():
    a, b = INTEGER.value(2), RATIONAL.value(Fraction(1, 2))
    assert (a + INTEGER.value(3)).value == 5
    assert (-a * a).value == -4
    with pytest.raises(RingMismatchError):
        a + b


@pytest.mark.parametrize(
    "ring,n,expected",
    [(ModularRing(15), 3, True), (ModularRing(6), 2, False), (INTEGER, 7, True), (ModularRing(9), 4, False)],
)
def test_torsion_examples(ring, n, expected):
    assert validate_torsionfree(ring, n) is expected


@pytest.mark.parametrize("m", range(2, 40))
@pytest.mark.parametrize("n", range(2, 8))
def test_torsion_matches_exhaustion(m, n):
    want = not has_torsion(m, 2) and not has_torsion(m, n - 1)
    assert validate_torsionfree(ModularRing(m), n) is want


def test_torsionfree_rings_admissible_for_all_n():
    for n in range(2, 20):
        assert validate_torsionfree(INTEGER, n)
        assert validate_torsionfree(RATIONAL, n)
        assert validate_torsionfree(INTPOLY, n)


def test_derivation_examples():
    ddt = AdditiveDerivation.poly_times_ddt((1,))
    t_ddt = AdditiveDerivation.poly_times_ddt((0, 1))
    assert ddt.apply(INTPOLY, (0, 0, 1)) == (0, 2)
    assert t_ddt.apply(INTPOLY, (0, 0, 1)) == (0, 0, 2)
    assert AdditiveDerivation.zero().apply(INTEGER, 17) == 0
    assert AdditiveDerivation.poly_times_ddt(()).kind == "zero"
    with pytest.raises(DerivationRingError):
        ddt.apply(INTEGER, 3)


def test_derivation_json():
    d = AdditiveDerivation.poly_times_ddt((0, 3))
    assert d.to_json() == ["poly_times_ddt", [0, 3]]
    assert AdditiveDerivation.from_json(d.to_json()) == d
    assert AdditiveDerivation.from_json(["zero", None]).is_zero
    with pytest.raises(ValueError):
        AdditiveDerivation.from_json(["table", {}])


DERIVATIONS = [
    (INTPOLY, AdditiveDerivation.poly_times_ddt((1,))),
    (INTPOLY, AdditiveDerivation.poly_times_ddt((0, 1))),
    (INTPOLY, AdditiveDerivation.poly_times_ddt((3, -1, 2))),
    (INTPOLY, AdditiveDerivation.zero()),
    (INTEGER, AdditiveDerivation.zero()),
    (RATIONAL, AdditiveDerivation.zero()),
    (MOD15, AdditiveDerivation.zero()),
]


@pytest.mark.parametrize("ring,d", DERIVATIONS, ids=lambda x: str(x))
def test_derivation_laws_on_random_pairs(ring, d):
    rng = random.Random(1234)

    def draw():
        if ring is INTPOLY:
            return INTPOLY.parse([rng.randint(-9, 9) for _ in range(rng.randint(0, 5))])
        if ring is RATIONAL:
            return Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        return ring.from_int(rng.randint(-100, 100))

    for _ in range(1000):
        r, s = draw(), draw()
        f = lambda v: d.apply(ring, v)  # noqa: E731
        assert f(ring.add(r, s)) == ring.add(f(r), f(s))
        assert f(ring.mul(r, s)) == ring.add(ring.mul(f(r), s), ring.mul(r, f(s)))
    assert ring.is_zero(d.apply(ring, ring.zero))
    assert ring.is_zero(d.apply(ring, ring.one))
