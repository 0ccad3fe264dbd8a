import pytest
from hypothesis import given, settings, strategies as st

from noetherpg.fpgroups import (
    FamilySpec, ParameterRangeError, Presentation, build_presentation, center, closure,
    direct_product_check, element_order, family_indices, in_range, metacyclic_check, order_spectrum,
    realize, subgroup_props, verify_family_claims,
)
from noetherpg.fpgroups.families import ODD, TWO

GRID = {3: (3, 4, 5), 5: (3, 4), 2: (4, 5, 6)}


def group(theorem, idx, p, n):
    return realize(build_presentation(FamilySpec(theorem, idx, p, n)))


def grid_instances():
    out = []
    for theorem, primes in ((ODD, (3, 5)), (TWO, (2,))):
        for idx in family_indices(theorem):
            for p in primes:
                for n in GRID[p]:
                    if in_range(theorem, idx, p, n) and p ** n <= 729:
                        out.append((theorem, idx, p, n))
    return out


def test_printed_relators_odd_family_1():
    pres = build_presentation(FamilySpec(ODD, 1, 3, 3))
    assert pres.generators == ("sigma", "tau", "lambda")
    rels = set(pres.relators)
    assert (("sigma", 3),) in rels and (("tau", 3),) in rels and (("lambda", 3),) in rels
    assert (("sigma", 1), ("lambda", 1), ("sigma", -1), ("lambda", -1)) in rels
    assert (("tau", 1), ("lambda", 1), ("tau", -1), ("lambda", -1)) in rels
    assert (("tau", -1), ("sigma", 1), ("tau", 1), ("lambda", -1), ("sigma", -1)) in rels
    assert len(rels) == 6


def test_printed_relators_two_family_1():
    pres = build_presentation(FamilySpec(TWO, 1, 2, 4))
    assert set(pres.relators) == {(("sigma", 4),), (("tau", 4),),
                                  (("tau", -1), ("sigma", 1), ("tau", 1), ("sigma", -3))}


def test_parameter_range_error_names_bound():
    with pytest.raises(ParameterRangeError, match="n >= 4"):
        build_presentation(FamilySpec(ODD, 2, 3, 3))


@pytest.mark.parametrize("bad", [(ODD, 1, 2, 4), (TWO, 1, 3, 4), (ODD, 11, 5, 4), (ODD, 12, 3, 4)])
def test_invalid_instances_rejected(bad):
    with pytest.raises(ParameterRangeError):
        build_presentation(FamilySpec(*bad))


def test_text_round_trip():
    pres = build_presentation(FamilySpec(ODD, 6, 3, 4))
    assert Presentation.from_text(pres.to_text()) == pres


def test_degrees():
    assert group(ODD, 1, 3, 3).degree == 27
    assert group(ODD, 9, 3, 5).degree == 243
    trivial = Presentation(("g",), ((("g", 1),),))
    assert realize(trivial).degree == 1


def test_element_orders():
    G = group(ODD, 1, 3, 4)
    assert element_order(G, G.identity) == 1
    assert element_order(G, G["sigma"]) == 9
    H = group(ODD, 2, 3, 4)
    assert element_order(H, H["tau"]) == 9


def test_family_claims_examples():
    rep = verify_family_claims(3, 3, group(ODD, 1, 3, 3))
    assert rep.ok and rep.order == 27 and rep.exponent == 3
    rep = verify_family_claims(2, 4, group(TWO, 1, 2, 4))
    assert rep.ok and rep.order == 16 and rep.order_spectrum.get(8) is None and 4 in rep.order_spectrum


def test_abelian_presentation_fails_claims():
    pres = Presentation.from_text("a^9\nb^3\na^1 b^1 a^-1 b^-1\n")
    rep = verify_family_claims(3, 3, realize(pres))
    assert not rep.non_abelian and not rep.ok
    assert "group is abelian" in rep.failures()


def test_subgroup_props_examples():
    G = group(ODD, 4, 3, 4)
    pr = subgroup_props(G, [G["sigma"], G["tau"]])
    assert pr.is_abelian and pr.order == 27
    pr = subgroup_props(G, [G.identity])
    assert (pr.order, pr.is_abelian, pr.is_normal, pr.is_cyclic) == (1, True, True, True)
    G = group(TWO, 4, 2, 5)
    pr = subgroup_props(G, [G["sigma"], G["tau"]])
    assert pr.is_abelian and pr.is_normal and pr.quotient_order == 2 and pr.quotient_cyclic


def test_direct_product_examples():
    G = group(ODD, 3, 3, 4)
    assert direct_product_check(G, [G["sigma"], G["tau"]], G["lambda"])
    C2 = realize(Presentation.from_text("g^2\n"))
    assert direct_product_check(C2, [C2["g"]], C2.identity)
    G = group(TWO, 2, 2, 4)
    invols = [z for z in center(G) if element_order(G, z) == 2]
    found = False
    for c in invols:
        for h in G.elements():
            for k in G.elements():
                if len(closure(G, [h, k])) == 8 and direct_product_check(G, [h, k], c):
                    found = True
                    break
            if found:
                break
    assert found


def test_metacyclic_examples():
    G = group(ODD, 2, 3, 4)
    assert metacyclic_check(G, G["sigma"], G["tau"])
    C = realize(Presentation.from_text("g^9\n"))
    assert metacyclic_check(C, C["g"], C.identity)
    G = group(ODD, 1, 3, 3)
    assert not metacyclic_check(G, G["sigma"], G["tau"])


@pytest.mark.parametrize("inst", grid_instances())
def test_realization_invariants(inst):
    theorem, idx, p, n = inst
    G = group(*inst)
    assert G.order == p ** n
    assert G.relators_trivial()
    assert G.check_associativity(samples=1000, full_limit=81)
    assert max(order_spectrum(G)) == p ** (n - 2)
    assert subgroup_props(G, list(G.gens.values())).order == G.order


def test_realize_deterministic():
    pres = build_presentation(FamilySpec(TWO, 12, 2, 5))
    a, b = realize(pres), realize(pres)
    assert (a.mul == b.mul).all()
    assert realize(pres, strategy="felsch").order == a.order


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_multiplication_associative(x, y, z):
    G = group(ODD, 7, 3, 4)
    assert G.m(G.m(x, y), z) == G.m(x, G.m(y, z))
