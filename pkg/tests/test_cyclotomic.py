from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from noetherpg.cyclotomic import (
    CycloNumber, RootOfUnity, ZOmegaElem, cyclotomic_poly, euler_phi, phi_p_reduce, root_mul, zomega_solve,
)

T = sympy.Symbol("T")
MODULI = [1, 2, 3, 4, 8, 9, 16, 25, 27]


def test_root_mul_examples():
    assert root_mul(RootOfUnity(4, 1), RootOfUnity(4, 1)) == RootOfUnity(4, 2)
    assert RootOfUnity(4, 2).to_cyclo() == CycloNumber.scalar(4, -1)
    assert root_mul(RootOfUnity(9, 3), RootOfUnity(9, 6)) == RootOfUnity(9, 0)


def test_omega_has_order_p():
    # omega = zeta_9^3 at p = 3, n = 4
    w = RootOfUnity(9, 3)
    assert w.order() == 3
    assert root_mul(w, w ** 2).is_one()


def test_root_of_unity_normalization():
    r = RootOfUnity(8, -3)
    assert r.exponent == 5 and r.inverse() == RootOfUnity(8, 3)
    assert RootOfUnity(8, 4).simplify() == RootOfUnity(2, 1)
    assert RootOfUnity(4, 1).lift(8) == RootOfUnity(8, 2)


def test_cyclotomic_polys_match_sympy():
    for m in MODULI:
        assert list(cyclotomic_poly(m)) == [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, T)).all_coeffs())]
        assert euler_phi(m) == sympy.totient(m)


def test_roots_primitive():
    for m in MODULI:
        z = CycloNumber.root(m, 1)
        acc = CycloNumber.one(m)
        for k in range(1, m + 1):
            acc = acc * z
            assert (acc == CycloNumber.one(m)) == (k == m)


def test_phi_p_reduce_examples():
    assert phi_p_reduce([0, 0, 1], 3) == ZOmegaElem(3, (-1, -1))
    for p in (2, 3, 5):
        assert not phi_p_reduce([1] * p, p)
        assert phi_p_reduce([0] * p + [1], p) == ZOmegaElem.one(p)
        w = ZOmegaElem.omega(p)
        assert w * ZOmegaElem.omega(p, p - 1) == ZOmegaElem.one(p)


def test_phi_p_reduce_cube_against_division():
    # (1 + T)^3 = -T^6 = -1 modulo T^2 + T + 1; checked by polynomial division
    want = sympy.rem(sympy.expand((1 + T) ** 3), sympy.cyclotomic_poly(3, T), T)
    assert want == -1
    assert phi_p_reduce([1, 3, 3, 1], 3) == ZOmegaElem(3, (-1, 0))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(-9, 9), min_size=1, max_size=12))
def test_phi_p_reduce_matches_division(p, poly):
    want = sympy.Poly(sympy.rem(sum(c * T ** i for i, c in enumerate(poly)), sympy.cyclotomic_poly(p, T), T), T)
    coeffs = [int(c) for c in reversed(want.all_coeffs())] if want.as_expr() != 0 else []
    coeffs += [0] * (p - 1 - len(coeffs))
    assert phi_p_reduce(poly, p).coeffs == tuple(coeffs)


def test_zomega_solve_examples():
    p = 3
    one, zero = ZOmegaElem.one(p), ZOmegaElem.zero(p)
    b = [ZOmegaElem(p, (2, -1)), ZOmegaElem(p, (0, 5))]
    assert zomega_solve([[one, zero], [zero, one]], b) == b
    a = ZOmegaElem(p, (1, 1))
    assert zomega_solve([[a]], [a]) == [one]
    # 1 - omega is not a unit: (1 - omega) x = 1 has no solution
    assert zomega_solve([[ZOmegaElem(p, (1, -1))]], [one]) is None


def _cyclo(m, data):
    return CycloNumber(m, [Fraction(a, b) for a, b in data])


def _sympy_val(c: CycloNumber):
    return sum(sympy.Rational(x.numerator, x.denominator) * T ** i if isinstance(x, Fraction)
               else sympy.Integer(x) * T ** i for i, x in enumerate(c.coeffs))


coeff = st.tuples(st.integers(-5, 5), st.integers(1, 4))
cyclo_args = st.sampled_from([3, 4, 8, 9]).flatmap(
    lambda m: st.tuples(st.just(m), *(st.lists(coeff, min_size=0, max_size=m) for _ in range(3))))


@settings(max_examples=200, deadline=None)
@given(cyclo_args)
def test_cyclo_ring_axioms(args):
    m, a, b, c = args
    x, y, z = _cyclo(m, a), _cyclo(m, b), _cyclo(m, c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == CycloNumber.zero(m)
    if x:
        assert x * x.inverse() == CycloNumber.one(m)


@settings(max_examples=100, deadline=None)
@given(cyclo_args)
def test_cyclo_mul_matches_sympy_remainder(args):
    m, a, b, _ = args
    x, y = _cyclo(m, a), _cyclo(m, b)
    phi = sympy.cyclotomic_poly(m, T)
    want = sympy.rem(sympy.expand(_sympy_val(x) * _sympy_val(y)), phi, T)
    assert sympy.expand(_sympy_val(x * y) - want) == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 8, 9, 16, 27]), st.integers(-50, 50), st.integers(-50, 50))
def test_root_embedding_homomorphism(m, e1, e2):
    a, b = RootOfUnity(m, e1), RootOfUnity(m, e2)
    assert root_mul(a, b).to_cyclo() == a.to_cyclo() * b.to_cyclo()
    assert a.order() == m // sympy.gcd(m, a.exponent)


zo = st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.tuples(st.just(p), *(st.lists(st.integers(-6, 6), min_size=p - 1, max_size=p - 1)
                                      for _ in range(3))))


@settings(max_examples=200, deadline=None)
@given(zo)
def test_zomega_ring_axioms(args):
    p, a, b, c = args
    x, y, z = (ZOmegaElem(p, tuple(v)) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=100, deadline=None)
@given(zo)
def test_zomega_solve_recovers_solution(args):
    p, a, b, _ = args
    x = ZOmegaElem(p, tuple(a))
    u = ZOmegaElem.omega(p, 1)
    # triangular unimodular system: [[1, u], [0, 1]] (x, y) = (x + u y, y)
    y = ZOmegaElem(p, tuple(b))
    sol = zomega_solve([[ZOmegaElem.one(p), u], [ZOmegaElem.zero(p), ZOmegaElem.one(p)]], [x + u * y, y])
    assert sol == [x, y]
