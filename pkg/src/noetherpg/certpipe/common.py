"""Steps shared by the case scripts: realization, claims, comparisons, linearization."""

from __future__ import annotations

from math import lcm
from typing import Optional, Sequence

from .. import intmat
from ..birational import affine_shift_check, build_t_substitution, verify_linearization
from ..cyclotomic import RootOfUnity
from ..fpgroups import FamilySpec, PermGroup, build_presentation, printed_presentation, realize, verify_family_claims
from ..fpgroups.families import ODD, family_def
from ..monomial import (LatticeBasis, MonomialAutomorphism, MonomialGroupAction, brute_force_fixed_lattice,
                        check_generators, cyclic_standardize, fixed_lattice)
from ..regrep import GroupVector, MonomialPermTable, act, character_average
from .certificate import CaseRun
from .gates import gate_t2_6

DEFAULT_ORACLE_DEPTH = 6
ORACLE_MAX_RANK = 4

INDEX_P_NOTE = ("odd-prime families: the printed hypothesis on cyclic subgroups 'of order p' is read as "
                "'of index p', i.e. no element of order p^(n-1); every odd certificate checks that reading")


def prefix(run: CaseRun, spec: FamilySpec) -> PermGroup:
    """Realize the group and check the classification claims."""
    pres = build_presentation(spec)
    G = realize(pres)
    p, n = spec.p, spec.n
    run.check("realize", "classification", G.order == p ** n and G.relators_trivial(),
              {"degree": G.degree, "relators": pres.to_text().splitlines()[1:]})
    rep = verify_family_claims(p, n, G)
    run.check("claims", "classification", rep.ok, rep.as_dict())
    printed = printed_presentation(spec)
    if printed is not None:
        fam = family_def(spec.theorem, spec.family_index)
        try:
            P = realize(printed)
            porder = P.order
            prep = verify_family_claims(p, n, P)
            pfail = prep.failures()
        except Exception as e:  # noqa: BLE001
            porder, pfail = None, [f"realization failed: {e}"]
        run.discrepancy("printed-presentation", "classification", rep.ok and bool(pfail),
                        {"printed_relators": printed.to_text().splitlines()[1:], "printed_order": porder,
                         "printed_failures": pfail, "used_relators": pres.to_text().splitlines()[1:]},
                        note=fam.printed_note)
    if spec.theorem == ODD:
        run.discrepancy("no-index-p-cyclic", "odd-classification", rep.no_order_p_n1,
                        {"max_element_order": max(rep.order_spectrum), "forbidden_order": p ** (n - 1)},
                        note=INDEX_P_NOTE)
    return G


def eigen_vector(G: PermGroup, m: int, chars: Sequence[tuple[int, int, int]]) -> GroupVector:
    """Successive character averages from ``x(1)``: ``(element, exponent of zeta_m, length)``."""
    v = GroupVector.basis(m, 0)
    for g, e, length in chars:
        v = character_average(G, v, g, RootOfUnity(m, e), length)
    return v


def eigen_check(G: PermGroup, Y: GroupVector, expected: dict[str, tuple[int, int]]) -> dict:
    """``g . Y == zeta^e Y`` for each ``name: (element, e)``; returns name -> bool."""
    return {name: act(G, g, Y) == Y.times_root(e) for name, (g, e) in expected.items()}


def _col(a: MonomialAutomorphism, j: int) -> list[int]:
    return [a.A[i][j] for i in range(a.rank)]


def action_mismatches(computed: MonomialGroupAction, expected: MonomialGroupAction,
                      gens: Optional[Sequence[str]] = None) -> list[dict]:
    """Per-variable differences between two actions on the same variables."""
    out = []
    for g in gens or sorted(expected.gens):
        a, b = computed.gens[g], expected.gens[g]
        M = lcm(a.modulus, b.modulus)
        al, bl = a.lift(M), b.lift(M)
        da, db = a.describe(computed.names), b.describe(expected.names)
        for j in range(a.rank):
            if _col(al, j) != _col(bl, j) or al.s[j] != bl.s[j]:
                out.append({"generator": g, "variable": computed.names[j], "computed": da[j], "expected": db[j]})
    return out


def table_mismatches(computed: MonomialPermTable, expected: MonomialPermTable) -> list[dict]:
    out = []
    for g in sorted(expected.entries):
        for i, (row_c, row_e) in enumerate(zip(computed.entries[g], expected.entries[g])):
            tc, ec = row_c
            te, ee = row_e
            if tc != te or (ec - ee) % computed.modulus:
                out.append({"generator": g, "index": i, "computed": [tc, ec], "expected": [te, ee]})
    return out


def fixed_lattice_step(run: CaseRun, name: str, anchor: str, action: MonomialGroupAction, words,
                       claimed: LatticeBasis, oracle_depth: int) -> bool:
    """Claimed invariant monomials: fixed, of index 1, and (small rank) equal to the brute-force lattice."""
    chk = check_generators(claimed, action, words)
    wit = {"claimed": claimed.as_json(), **chk.as_dict()}
    ok = chk.contained and chk.index == 1
    if action.rank <= ORACLE_MAX_RANK:
        brute = brute_force_fixed_lattice(action, words, oracle_depth)
        snf = intmat.hnf_rows(fixed_lattice(action, words).vectors, action.rank)
        wit["brute_force_bound"] = oracle_depth
        wit["brute_force_agrees"] = brute == snf
        ok = ok and brute == snf
    else:
        wit["brute_force"] = f"not run: rank {action.rank} > {ORACLE_MAX_RANK}"
    return run.check(name, anchor, ok, wit)


def standard_cyclic(auto: MonomialAutomorphism, p: int) -> bool:
    """``y_1 -> y_2 -> ... -> y_{p-1} -> (y_1 ... y_{p-1})^-1`` with no scalars."""
    r = p - 1
    if auto.rank != r or any(auto.s):
        return False
    for j in range(r - 1):
        if _col(auto, j) != [int(i == j + 1) for i in range(r)]:
            return False
    return _col(auto, r - 1) == [-1] * r


def linearize_step(run: CaseRun, name: str, anchor: str, auto: MonomialAutomorphism, p: int) -> bool:
    """The ``t``-substitution linearizes a standard cyclic action; also the affine shift."""
    t = build_t_substitution(p)
    lin = verify_linearization(auto, t, p)
    shift = affine_shift_check(t, p, auto)
    return run.check(name, anchor, lin.ok and shift, {"linearization": lin.as_dict(), "affine_shift": shift})


def standardize_step(run: CaseRun, name: str, anchor: str, auto: MonomialAutomorphism, p: int,
                     start: Sequence[int]) -> Optional[MonomialAutomorphism]:
    """``s_1 = start``, ``s_i = g^{i-1} s_1``: unimodular and in standard cyclic form.

    ``cyclic_standardize`` (generic search) is run alongside as an independent route.
    """
    L = auto.matrix()
    cols = [list(start)]
    for _ in range(p - 2):
        cols.append(intmat.matvec(L, cols[-1]))
    P = intmat.from_columns(cols, p - 1)
    d = intmat.det(P)
    ok = abs(d) == 1 and not any(auto.s)
    std = None
    if ok:
        B = intmat.matmul(intmat.inverse_unimodular(P), intmat.matmul(L, P))
        std = MonomialAutomorphism.make(B, None, auto.modulus)
        ok = standard_cyclic(std, p)
    try:
        Q = cyclic_standardize(L, p)
        search_ok = True
    except Exception:  # noqa: BLE001
        Q, search_ok = None, False
    run.check(name, anchor, ok and search_ok,
              {"s_basis": cols, "det": d, "search_basis": Q, "standard": ok})
    return std if ok else None


def t26_step(run: CaseRun, anchor: str, p: int, roots: int, linear: bool, order: int = 0) -> bool:
    ok, wit = gate_t2_6(order or p, p, True, linear, roots)
    return run.gate("abelian-linear", anchor, ok, wit)
