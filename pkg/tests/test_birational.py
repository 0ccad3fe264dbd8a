from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from noetherpg.birational import (
    DegenerateSubstitutionError, Poly, RationalFn, affine_shift_check, apply, build_t_substitution, mobius,
    mobius_inverse, monomial_substitution, t_names, variables, verify_linearization,
)
from noetherpg.monomial import MonomialAutomorphism, cyclic_inversion, monomial_from_rule


def cyclic_tau(p):
    return monomial_from_rule(p - 1, 1, cyclic_inversion(p - 1))


def test_identity_substitution():
    names = ("v1", "v2")
    v1, v2 = variables(names)
    f = (v1 + 3) / (v1 * v2 - 2)
    assert apply({}, f, names) == f
    assert apply({"v1": v1, "v2": v2}, f) == f


def test_inversion_example():
    names = ("v1",)
    (v1,) = variables(names)
    one = RationalFn.const(names, 1)
    f = one / (one + v1)
    assert apply({"v1": one / v1}, f) == v1 / (one + v1)


def test_tau_on_t2_p3():
    p = 3
    t = build_t_substitution(p)
    tau = monomial_substitution(cyclic_tau(p), t_names(p))
    one = RationalFn.const(t_names(p), 1)
    assert apply(tau, t[2]) == t[3]
    assert apply(tau, t[2]) == one - t[1] - t[2]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_t_sum_is_one(p):
    t = build_t_substitution(p)
    total = t[1]
    for x in t[2:]:
        total = total + x
    assert total == RationalFn.const(t_names(p), 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_linearization(p):
    t = build_t_substitution(p)
    res = verify_linearization(cyclic_tau(p), t, p)
    assert res.ok and res.roundtrip_v and res.roundtrip_t and res.t0_image_ok
    assert affine_shift_check(t, p, cyclic_tau(p))
    assert all(f.degree() <= p for f in t[1:])


def test_linearization_negative():
    p = 3
    t = build_t_substitution(p)
    res = verify_linearization(MonomialAutomorphism.identity(p - 1), t, p)
    assert not res.ok and res.sum_is_one
    assert not affine_shift_check(t, p, MonomialAutomorphism.identity(p - 1))


def test_affine_shift_rank_one():
    # p = 2: T_1 = t_1 - 1/2 goes to -T_1
    t = build_t_substitution(2)
    tau = monomial_substitution(cyclic_tau(2), t_names(2))
    T1 = t[1] - Fraction(1, 2)
    assert apply(tau, T1) == -T1


def test_mobius_at_zero():
    names = ("u",)
    zero = RationalFn.const(names, 0)
    one = RationalFn.const(names, 1)
    assert mobius(zero, 1) == one and mobius(zero, -1) == one


@pytest.mark.parametrize("flag", [1, -1])
def test_mobius_round_trip(flag):
    names = ("u",)
    (u,) = variables(names)
    assert mobius_inverse(mobius(u, flag), flag) == u
    # u -> -u becomes v -> 1/v, and u -> 1/u becomes v -> -v
    v = mobius(u, flag)
    assert apply({"u": -u}, v) == v.inverse()
    assert apply({"u": u.inverse()}, v) == -v


def test_degenerate_substitution():
    names = ("v1",)
    (v1,) = variables(names)
    one = RationalFn.const(names, 1)
    with pytest.raises(DegenerateSubstitutionError):
        apply({"v1": one}, one / (v1 - one))


def test_canonical_form_matches_sympy():
    names = ("v1", "v2")
    v1, v2 = variables(names)
    f = (v1 * v1 - v2 * v2) / (v1 + v2)
    assert f == v1 - v2
    x, y = sympy.symbols("v1 v2")
    assert sympy.cancel((x ** 2 - y ** 2) / (x + y)) == x - y


NAMES = ("v1", "v2")
terms = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=4)


def _poly(ts):
    out = Poly.const(NAMES, 0)
    for a, b, c in ts:
        out = out + Poly.monomial(NAMES, [a, b], c)
    return RationalFn(out)


def _sym(ts):
    x, y = sympy.symbols("v1 v2")
    return sum(c * x ** a * y ** b for a, b, c in ts)


SUBS = [
    lambda v1, v2: {"v1": v2, "v2": (v1 * v2).inverse()},
    lambda v1, v2: {"v1": v1.inverse(), "v2": v1 * v2},
]


def _sub(make):
    return make(*variables(NAMES))


@settings(max_examples=120, deadline=None)
@given(terms, terms, st.sampled_from(SUBS))
def test_apply_is_homomorphism(a, b, spec):
    f, g = _poly(a), _poly(b)
    s = _sub(spec)
    assert apply(s, f + g) == apply(s, f) + apply(s, g)
    assert apply(s, f * g) == apply(s, f) * apply(s, g)
    if g.num:
        assert apply(s, f / g) == apply(s, f) / apply(s, g)


@settings(max_examples=80, deadline=None)
@given(terms, terms)
def test_arithmetic_matches_sympy(a, b):
    f, g = _poly(a), _poly(b)
    x, y = sympy.symbols("v1 v2")
    if not g.num:
        return
    got = f / g
    num = sum(c * x ** e[0] * y ** e[1] for e, c in got.num.terms.items())
    den = sum(c * x ** e[0] * y ** e[1] for e, c in got.den.terms.items())
    assert sympy.simplify(num / den - _sym(a) / _sym(b)) == 0
