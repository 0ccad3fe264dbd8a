import pytest
from hypothesis import given, settings, strategies as st

from noetherpg.certpipe import tables
from noetherpg.certpipe.common import table_mismatches
from noetherpg.cyclotomic import CycloNumber, RootOfUnity
from noetherpg.fpgroups import FamilySpec, Presentation, build_presentation, closure, realize
from noetherpg.regrep import (
    DegenerateEigenvectorError, DependentBasisError, GroupVector, NotMonomialError, act, action_kernel,
    character_average, extract_action, faithful_check, orbit_sum, powers, rank, translate_basis,
)


def case1_group(p, n):
    return realize(build_presentation(FamilySpec("3.1", 1, p, n)))


def case1_vectors(G, p, n):
    m, om = p ** (n - 2), p ** (n - 3)
    s, l = G["sigma"], G["lambda"]
    Y1 = character_average(G, orbit_sum(G, powers(G, s, m), modulus=m), l, RootOfUnity(m, om), p)
    Y2 = character_average(G, orbit_sum(G, powers(G, l, p), modulus=m), s, RootOfUnity(m, 1), m)
    return Y1, Y2


def test_act_examples():
    G = case1_group(3, 3)
    v = GroupVector.basis(3, 0)
    assert act(G, G.identity, v) == v
    assert act(G, G["sigma"], v) == GroupVector.basis(3, G["sigma"])


def test_orbit_sum_trivial_subgroup():
    G = case1_group(3, 3)
    assert orbit_sum(G, [G.identity], modulus=3) == GroupVector.basis(3, 0)


def test_character_average_identity():
    G = case1_group(3, 3)
    v = GroupVector.basis(3, 5)
    assert character_average(G, v, G.identity, RootOfUnity(3, 0), 1) == v


def test_character_average_degenerate():
    G = case1_group(3, 3)
    X = orbit_sum(G, powers(G, G["sigma"], 3), modulus=3)
    # X is sigma-invariant, so averaging with a nontrivial character vanishes
    with pytest.raises(DegenerateEigenvectorError):
        character_average(G, X, G["sigma"], RootOfUnity(3, 1), 3)


@pytest.mark.parametrize("p,n", [(3, 3), (3, 4), (5, 3)])
def test_case1_eigen_equations(p, n):
    G = case1_group(p, n)
    m, om = p ** (n - 2), p ** (n - 3)
    Y1, Y2 = case1_vectors(G, p, n)
    s, l = G["sigma"], G["lambda"]
    assert act(G, s, Y1) == Y1 and act(G, l, Y1) == Y1.times_root(om)
    assert act(G, s, Y2) == Y2.times_root(1) and act(G, l, Y2) == Y2
    assert len(Y1.coeffs) == m * p and len(Y2.coeffs) == m * p


@pytest.mark.parametrize("p,n", [(3, 3), (3, 4), (3, 5), (5, 3), (5, 4)])
def test_case1_table_reproduced(p, n):
    G = case1_group(p, n)
    basis = translate_basis(G, list(case1_vectors(G, p, n)), G["tau"], p)
    table = extract_action(G, basis)
    assert table_mismatches(table, tables.translate_table(1, p, n)) == []
    assert table.relators_ok(G.presentation.relators)
    assert faithful_check(G, table)


def test_single_eigenvector_not_faithful():
    p, n = 3, 3
    G = case1_group(p, n)
    Y1, Y2 = case1_vectors(G, p, n)
    # the line K.Y1 is fixed by sigma, and is not even tau-stable
    assert act(G, G["sigma"], Y1) == Y1
    with pytest.raises(NotMonomialError):
        extract_action(G, [Y1])
    # the tau-translates of Y2 alone: the central lambda acts trivially
    table = extract_action(G, translate_basis(G, [Y2], G["tau"], p))
    assert not faithful_check(G, table)
    assert action_kernel(G, table) == sorted(closure(G, [G["lambda"]]))
    # the tau-translates of Y1 alone already separate the 27 elements
    assert faithful_check(G, extract_action(G, translate_basis(G, [Y1], G["tau"], p)))


def test_trivial_group_identity_table():
    T = realize(Presentation.from_text("g^1\n"))
    table = extract_action(T, [GroupVector.basis(1, 0)])
    assert table.is_identity(table.entries["g"])
    assert faithful_check(T, table)


def test_translate_identity_unchanged():
    G = case1_group(3, 3)
    v = GroupVector.basis(3, 4)
    assert translate_basis(G, [v], G.identity, 1) == [v]


def test_dependent_translates_rejected():
    G = case1_group(3, 3)
    X = orbit_sum(G, powers(G, G["sigma"], 3), modulus=3)
    with pytest.raises(DependentBasisError):
        translate_basis(G, [X], G["sigma"], 2)


def test_not_monomial_detected():
    G = case1_group(3, 3)
    v = GroupVector.basis(3, 0) + GroupVector.basis(3, G["tau"])
    with pytest.raises(NotMonomialError):
        extract_action(G, [v, GroupVector.basis(3, G["sigma"])])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26), st.lists(st.tuples(st.integers(0, 26), st.integers(-3, 3)), max_size=6))
def test_action_is_a_group_action(g, h, data):
    G = case1_group(3, 3)
    v = GroupVector(9, {k: CycloNumber.scalar(9, c) for k, c in data})
    assert act(G, g, act(G, h, v)) == act(G, G.m(g, h), v)
    assert rank([v]) == (1 if v else 0)
