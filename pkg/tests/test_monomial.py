import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from noetherpg import intmat
from noetherpg.certpipe import tables
from noetherpg.certpipe.common import action_mismatches
from noetherpg.monomial import (
    LatticeBasis, MonomialAutomorphism, MonomialGroupAction, NotStandardizableError, brute_force_fixed_lattice,
    chain_pairs, check_generators, companion_phi, cyclic_standardize, fixed_lattice, from_perm_table,
    induced_on_basis, quotient_action,
)


def sigma_omega(p=3):
    """sigma: u_i -> omega u_i on two variables, modulus p."""
    return MonomialGroupAction({"sigma": MonomialAutomorphism.make(intmat.identity(2), [1, 1], p)},
                               ("u1", "u2"), p)


def test_fixed_lattice_congruence():
    act = sigma_omega()
    fl = fixed_lattice(act, ["sigma"])
    assert intmat.hnf_rows(fl.vectors, 2) == intmat.hnf_rows([[3, 0], [-1, 1]], 2)
    assert brute_force_fixed_lattice(act, ["sigma"], 6) == intmat.hnf_rows(fl.vectors, 2)


def test_fixed_lattice_trivial_subgroup():
    act = sigma_omega()
    assert intmat.hnf_rows(fixed_lattice(act, []).vectors, 2) == intmat.identity(2)


def test_check_generators_examples():
    act = sigma_omega()
    good = check_generators(LatticeBasis([[3, 0], [-1, 1]]), act, ["sigma"])
    assert good.contained and good.index == 1
    bad = check_generators(LatticeBasis([[6, 0], [-1, 1]]), act, ["sigma"])
    assert bad.contained and bad.index == 2
    empty = MonomialGroupAction({}, (), 1)
    assert check_generators(LatticeBasis([]), empty, []).index == 1


def test_not_contained():
    act = sigma_omega()
    res = check_generators(LatticeBasis([[1, 0], [0, 1]]), act, ["sigma"])
    assert not res.contained and res.index == 0


def test_perm_table_to_matrices():
    p, n = 3, 3
    act = from_perm_table(tables.translate_table(1, p, n))
    tau = act.gens["tau"].matrix()
    assert all(sorted(row) == [0] * 5 + [1] for row in tau)
    assert not any(act.gens["tau"].s)
    for g in ("sigma", "lambda"):
        assert act.gens[g].matrix() == intmat.identity(6)
    assert list(act.gens["sigma"].s) == [0, 1, 2, 1, 1, 1]
    ident = from_perm_table(tables.translate_table(1, p, n)).gens["tau"] ** 3
    assert ident.is_identity()


def test_signed_scalars_preserved():
    h = 4
    table = tables.two_xy_table(15, 5)
    act = from_perm_table(table)
    assert act.gens["sigma"].s[3] == h and act.gens["sigma"].s[2] == h - 2


def test_quotient_empty():
    act = from_perm_table(tables.translate_table(1, 3, 3))
    q = quotient_action(act, [])
    assert q.rank == 0 and all(a.is_identity() for a in q.gens.values())


@pytest.mark.parametrize("p,n", [(3, 3), (3, 4), (5, 3), (5, 4)])
def test_case1_quotient_table(p, n):
    act = from_perm_table(tables.translate_table(1, p, n))
    pairs = chain_pairs(list(range(p))) + chain_pairs(list(range(p, 2 * p)))
    q = quotient_action(act, pairs, tables.uv_names(p))
    assert action_mismatches(q, tables.quotient_table(1, p, n)) == []


@pytest.mark.parametrize("case,p,n", [(4, 3, 4), (5, 3, 4), (5, 5, 4), (6, 3, 4)])
def test_pair_case_quotient_tables(case, p, n):
    a = 2 if case == 6 else 1
    act = from_perm_table(tables.translate_table(case, p, n, a))
    pairs = chain_pairs(list(range(p))) + chain_pairs(list(range(p, 2 * p)))
    q = quotient_action(act, pairs, tables.uv_names(p))
    assert action_mismatches(q, tables.quotient_table(case, p, n, a)) == []


@pytest.mark.parametrize("p", [3, 5])
def test_z_table_standardizes(p):
    L = tables.z_table(p, p).matrix()
    P = cyclic_standardize(L, p)
    assert abs(intmat.det(P)) == 1
    assert intmat.matmul(intmat.inverse_unimodular(P), intmat.matmul(L, P)) == companion_phi(p)
    # companion-matrix conjugation oracle: same characteristic polynomial as Phi_p
    x = sympy.Symbol("x")
    assert sympy.Matrix(L).charpoly(x).as_expr() == sympy.cyclotomic_poly(p, x)


def test_standard_form_identity_change():
    for p in (2, 3, 5):
        assert cyclic_standardize(companion_phi(p), p) == intmat.identity(p - 1)


def test_not_standardizable():
    with pytest.raises(NotStandardizableError):
        cyclic_standardize(intmat.identity(2), 3)


def test_identity_action_induced():
    act = MonomialGroupAction({"g": MonomialAutomorphism.identity(3, 4)}, ("a", "b", "c"), 4)
    basis = LatticeBasis([[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    assert induced_on_basis(act, basis).gens["g"].is_identity()


def _random_action(perm, signs, scal, k, m):
    A = intmat.zeros(k, k)
    for j in range(k):
        A[perm[j]][j] = signs[j]
    return MonomialAutomorphism.make(A, scal, m)


action_data = st.integers(1, 3).flatmap(lambda k: st.tuples(
    st.just(k), st.sampled_from([2, 3, 4, 9]),
    st.permutations(range(k)), st.lists(st.sampled_from([1, -1]), min_size=k, max_size=k),
    st.lists(st.integers(0, 8), min_size=k, max_size=k)))


def _make(data):
    k, m, perm, signs, scal = data
    return MonomialGroupAction({"g": _random_action(perm, signs, scal, k, m)},
                               tuple(f"x{i}" for i in range(k)), m)


@settings(max_examples=120, deadline=None)
@given(action_data)
def test_oracle_agreement(data):
    """Smith-form fixed lattice equals the brute-force span whenever the box can contain a basis."""
    act = _make(data)
    fl = fixed_lattice(act, ["g"])
    # the box [-6, 6]^k only sees lattices with a basis inside it
    if any(abs(x) > 6 for v in fl.vectors for x in v):
        return
    assert brute_force_fixed_lattice(act, ["g"], 6) == intmat.hnf_rows(fl.vectors, act.rank)


@settings(max_examples=120, deadline=None)
@given(action_data, st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_index_invariant_under_unimodular_change(data, entries):
    act = _make(data)
    fl = fixed_lattice(act, ["g"]).vectors
    if not fl:
        return
    r = len(fl)
    U = [entries[i * 3:i * 3 + r] for i in range(r)]
    if abs(intmat.det(U)) != 1:
        return
    scaled = [[2 * x for x in fl[0]]] + [list(v) for v in fl[1:]]
    for claim in (fl, scaled):
        base = check_generators(LatticeBasis(claim), act, ["g"])
        moved = check_generators(LatticeBasis(intmat.matmul(U, claim)), act, ["g"])
        assert base.index == moved.index
        assert base.index == (1 if claim is fl else 2)


@settings(max_examples=80, deadline=None)
@given(action_data, action_data)
def test_homomorphism_composition(d1, d2):
    if d1[0] != d2[0] or d1[1] != d2[1]:
        return
    a, b = _make(d1).gens["g"], _make(d2).gens["g"]
    k = d1[0]
    for e in itertools.product(range(-2, 3), repeat=k):
        s1, v1 = b.apply_exponent(list(e))
        s2, v2 = a.apply_exponent(v1)
        s3, v3 = (a @ b).apply_exponent(list(e))
        assert v3 == v2 and (s1 + s2 - s3) % d1[1] == 0
