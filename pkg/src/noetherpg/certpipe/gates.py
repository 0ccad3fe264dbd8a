"""Hypothesis checks for the cited rationality results.

Each gate checks only the hypotheses that the cited result needs and returns
``(ok, witness)``.  The cited results themselves are trusted.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .. import intmat
from ..fpgroups import PermGroup, closure, direct_product_check, element_order, exponent, is_normal
from ..fpgroups.permgroup import coset_order, is_abelian_set
from ..monomial import MonomialGroupAction, UnstableSpanError, restrict_variables
from ..regrep import MonomialPermTable, action_kernel

# n with Z[zeta_n] a unique factorization domain, restricted to n <= 22
UFD_CYCLOTOMIC = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22})

Gate = tuple[bool, dict]


def _divides(a: int, b: int) -> bool:
    return b % a == 0


def _names(G: PermGroup, elems: Sequence[int]) -> list[str]:
    return [G.word_of(g) for g in elems]


def gate_t1_1(G: PermGroup, p: int, n: int) -> Gate:
    """Non-abelian p-group of order at most p^4 whose exponent divides the available root order p^(n-2)."""
    e = exponent(G)
    non_ab = not is_abelian_set(G, list(G.gens.values()))
    ok = non_ab and G.order <= p ** 4 and _divides(e, p ** (n - 2))
    return ok, {"order": G.order, "exponent": e, "non_abelian": non_ab, "roots_available": p ** (n - 2)}


def metacyclic_in(G: PermGroup, H: Sequence[int], s: int, t: int) -> bool:
    """``<s>`` normal in ``H = <s, t>`` with ``H/<s>`` generated by the image of ``t``."""
    Hs = set(H)
    if set(closure(G, [s, t])) != Hs:
        return False
    S = closure(G, [s])
    Ss = set(S)
    for h in H:
        hi = G.inverse(h)
        if any(G.m(hi, x, h) not in Ss for x in S):
            return False
    return coset_order(G, t, Ss) == len(H) // len(S)


def gate_t1_2(G: PermGroup, p: int, n: int, pairs: Optional[Sequence[tuple[str, str]]] = None) -> Gate:
    """Non-abelian metacyclic group whose exponent divides p^(n-2); both generator orders are tried."""
    pairs = pairs or [("sigma", "tau"), ("tau", "sigma")]
    e = exponent(G)
    non_ab = not is_abelian_set(G, list(G.gens.values()))
    found = None
    elems = list(G.elements())
    for a, b in pairs:
        if metacyclic_in(G, elems, G[a], G[b]):
            found = (a, b)
            break
    ok = found is not None and non_ab and _divides(e, p ** (n - 2))
    return ok, {"normal_cyclic": found[0] if found else None, "complement_generator": found[1] if found else None,
                "pairs_tried": [list(x) for x in pairs], "exponent": e, "non_abelian": non_ab}


def gate_t1_5(G: PermGroup, n: int) -> Gate:
    """Non-abelian group of order 32 whose exponent divides 2^(n-2)."""
    e = exponent(G)
    non_ab = not is_abelian_set(G, list(G.gens.values()))
    ok = G.order == 32 and non_ab and _divides(e, 2 ** (n - 2))
    return ok, {"order": G.order, "exponent": e, "non_abelian": non_ab}


def gate_t1_7(G: PermGroup, H: Sequence[int], p: int, n: int) -> Gate:
    """``H`` non-abelian of order p^k with an element of order p^(k-1); p^(k-2) divides p^(n-2)."""
    k, rest = 0, len(H)
    while rest % p == 0:
        rest //= p
        k += 1
    non_ab = not is_abelian_set(G, list(H))
    big = next((h for h in H if element_order(G, h) == len(H) // p), None)
    ok = rest == 1 and k >= 3 and non_ab and big is not None and _divides(p ** (k - 2), p ** (n - 2))
    return ok, {"subgroup_order": len(H), "non_abelian": non_ab,
                "index_p_cyclic_generator": None if big is None else G.word_of(big)}


def gate_t2_2(G: PermGroup, table: MonomialPermTable) -> Gate:
    """Faithful action on the chosen subspace; a permutation-with-scalars action is linear."""
    ker = action_kernel(G, table)
    return ker == [0], {"kernel": _names(G, ker), "shape": "permutation with root-of-unity scalars"}


def _kernel_on(G: PermGroup, action: MonomialGroupAction, idx: Sequence[int]) -> list[int]:
    sub = restrict_variables(action, idx)
    return sub.kernel(G)


def gate_t2_2_relative(G: PermGroup, action: MonomialGroupAction, base: Sequence[int],
                       adjoined: Sequence[int], affine_ok: bool) -> Gate:
    """Field ``L(adjoined)`` over ``L = K(base)``: ``L`` stable, the group acting on the whole
    field acts faithfully on ``L``, and the adjoined generators transform affinely.

    Faithfulness of the induced group means: whatever fixes ``L`` pointwise also fixes
    the adjoined variables.
    """
    try:
        kb = _kernel_on(G, action, base)
    except UnstableSpanError as e:
        return False, {"unstable": str(e)}
    ka = action.kernel(G)
    ok = set(kb) <= set(ka) and affine_ok
    return ok, {"kernel_on_base": _names(G, kb), "kernel_on_all": _names(G, ka), "affine": affine_ok}


def gate_t2_3(action: MonomialGroupAction, base_vectors: Sequence[Sequence[int]],
              adjoined: Sequence[int], same_variable: bool = True) -> Gate:
    """Each generator maps each adjoined variable to an ``L``-multiple of an adjoined variable,
    where ``L`` is spanned by the monomials ``base_vectors``; ``L`` itself must be stable.

    With ``same_variable`` the multiple must be of the same variable (one variable at a time).
    """
    k = action.rank
    images = {}
    for gname, a in action.gens.items():
        for v in base_vectors:
            _, img = a.apply_exponent(v)
            if intmat.coordinates(list(base_vectors), img) is None:
                return False, {"unstable_generator": gname}
        for j in adjoined:
            col = [a.A[i][j] for i in range(k)]
            hit = None
            for b in ([j] if same_variable else adjoined):
                diff = list(col)
                diff[b] -= 1
                if intmat.coordinates(list(base_vectors), diff) is not None:
                    hit = b
                    break
            if hit is None:
                return False, {"generator": gname, "variable": action.names[j]}
            images[f"{gname}({action.names[j]})"] = f"L*{action.names[hit]}"
    return True, {"images": images}


def gate_t2_4(G: PermGroup, h_gens: Sequence[int], c: int) -> Gate:
    """``G`` is the internal direct product ``<h_gens> x <c>``."""
    ok = direct_product_check(G, h_gens, c)
    return ok, {"H": _names(G, h_gens), "C": G.word_of(c), "H_order": len(closure(G, h_gens)),
                "C_order": element_order(G, c)}


def gate_t2_5(action: MonomialGroupAction, idx: Sequence[int]) -> Gate:
    """The chosen two variables carry a monomial action of their own (rank two)."""
    try:
        sub = restrict_variables(action, idx)
    except UnstableSpanError as e:
        return False, {"unstable": str(e)}
    return len(idx) == 2, {"variables": list(sub.names), "action": sub.describe()}


def gate_t2_6(group_order: int, group_exponent: int, abelian: bool, linear: bool, roots: int) -> Gate:
    """Abelian group acting linearly, with a primitive root of unity of order its exponent available."""
    ok = abelian and linear and _divides(group_exponent, roots)
    return ok, {"group_order": group_order, "exponent": group_exponent, "abelian": abelian,
                "linear": linear, "roots_available": roots}


def gate_t2_7(G: PermGroup, h_gens: Sequence[int], roots: Optional[int] = None) -> Gate:
    """``H = <h_gens>`` abelian normal with ``G/H`` cyclic of order ``q``, ``Z[zeta_q]`` a UFD,
    and the exponent of ``G`` dividing the available root order."""
    H = closure(G, h_gens)
    abel = is_abelian_set(G, list(h_gens)) if h_gens else True
    normal = is_normal(G, H)
    q = G.order // len(H)
    Hs = set(H)
    cyclic = normal and any(coset_order(G, g, Hs) == q for g in G.elements())
    e = exponent(G)
    roots_ok = roots is None or _divides(e, roots)
    ok = abel and normal and cyclic and q in UFD_CYCLOTOMIC and roots_ok
    return ok, {"H": _names(G, h_gens), "H_order": len(H), "abelian": abel, "normal": normal,
                "quotient_order": q, "quotient_cyclic": cyclic, "exponent": e}
