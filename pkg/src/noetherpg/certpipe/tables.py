"""Expected action tables, as functions of ``(p, n, a)``.

Scalars are exponents of ``zeta_m`` with ``m = p^(n-2)``; ``omega = zeta_m^(p^(n-3))``.
Translate tables index ``x_i`` as ``i`` and ``y_i`` as ``p + i`` (``z_i`` as ``2p + i``);
quotient tables index ``u_i`` as ``i - 1`` and ``v_i`` as ``p - 2 + i``.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from ..monomial import MonomialAutomorphism, MonomialGroupAction, cyclic_inversion, diagonal_rule, monomial_from_rule
from ..regrep import MonomialPermTable, table_from_rules


def _cyc(p: int, offset: int) -> list[tuple[int, int]]:
    return [(offset + (i + 1) % p, 0) for i in range(p)]


def _diag(offset: int, exps: Sequence[int]) -> list[tuple[int, int]]:
    return [(offset + i, e) for i, e in enumerate(exps)]


def translate_table(case: int, p: int, n: int, a: int = 1) -> MonomialPermTable:
    """Translate-basis tables for the odd cases 1, 4, 5, 6 (``x_i, y_i``) and 7 (``x_i, y_i, z_i``)."""
    m, om = p ** (n - 2), p ** (n - 3)
    I = range(p)
    if case == 1:
        rules = {"sigma": _diag(0, [i * om for i in I]) + _diag(p, [1] * p),
                 "tau": _cyc(p, 0) + _cyc(p, p),
                 "lambda": _diag(0, [om] * p) + _diag(p, [0] * p)}
        return table_from_rules(m, 2 * p, rules)
    if case in (4, 5, 6):
        aa = 0 if case == 4 else (1 if case == 5 else a)
        sx = [0] * p if case == 4 else [i * om for i in I]
        sy = [1 + comb(i, 2) * aa * om for i in I]
        ty = [i * (1 if case == 4 else aa) * om for i in I]
        rules = {"sigma": _diag(0, sx) + _diag(p, sy),
                 "tau": _diag(0, [om] * p) + _diag(p, ty),
                 "lambda": _cyc(p, 0) + _cyc(p, p)}
        return table_from_rules(m, 2 * p, rules)
    if case == 7:
        sig = [(i + 1, 0) for i in range(p - 1)] + [(0, p)]
        rules = {"sigma": sig + _cyc(p, p) + _cyc(p, 2 * p),
                 "tau": _diag(0, [-i * om for i in I]) + _diag(p, [om] * p) + _diag(2 * p, [0] * p),
                 "lambda": _diag(0, [comb(i, 2) * om for i in I]) + _diag(p, [-i * om for i in I])
                 + _diag(2 * p, [om] * p)}
        return table_from_rules(m, 3 * p, rules)
    raise ValueError(f"no translate table for case {case}")


def sigma_p_row(p: int, n: int) -> list[tuple[int, int]]:
    """``sigma^p`` on ``x_i, y_i, z_i`` in the three-block case: ``xi = zeta^p`` on the ``x``'s."""
    m = p ** (n - 2)
    return [(i, p % m) for i in range(p)] + [(p + i, 0) for i in range(p)] + [(2 * p + i, 0) for i in range(p)]


def uv_names(p: int, first: str = "u", second: str = "v") -> tuple[str, ...]:
    return tuple(f"{first}{i}" for i in range(1, p)) + tuple(f"{second}{i}" for i in range(1, p))


def _auto(k: int, m: int, *rules: dict) -> MonomialAutomorphism:
    merged: dict = {}
    for r in rules:
        merged.update(r)
    return monomial_from_rule(k, m, merged)


def quotient_table(case: int, p: int, n: int, a: int = 1) -> MonomialGroupAction:
    """Action on ``u_i, v_i`` (odd cases 1, 4, 5, 6) or ``U_i, v_i`` (case 7)."""
    m, om = p ** (n - 2), p ** (n - 3)
    r = p - 1
    k = 2 * r
    J = range(1, p)
    cyc = {**cyclic_inversion(r, 0), **cyclic_inversion(r, r)}
    if case == 1:
        gens = {"sigma": _auto(k, m, diagonal_rule([om] * r, 0)),
                "tau": _auto(k, m, cyc),
                "lambda": MonomialAutomorphism.identity(k, m)}
    elif case in (4, 5, 6):
        aa = 1 if case in (4, 5) else a
        su = [0] * r if case == 4 else [om] * r
        sv = [0] * r if case == 4 else [(i - 1) * aa * om for i in J]
        gens = {"sigma": _auto(k, m, diagonal_rule(su, 0), diagonal_rule(sv, r)),
                "tau": _auto(k, m, diagonal_rule([aa * om] * r, r)),
                "lambda": _auto(k, m, cyc)}
    elif case == 7:
        gens = {"sigma": _auto(k, m, cyc),
                "tau": _auto(k, m, diagonal_rule([-om] * r, 0)),
                "lambda": _auto(k, m, diagonal_rule([(i - 1) * om for i in J], 0), diagonal_rule([-om] * r, r))}
        return MonomialGroupAction(gens, uv_names(p, "U", "v"), m)
    else:
        raise ValueError(f"no quotient table for case {case}")
    return MonomialGroupAction(gens, uv_names(p), m)


def z_chain(p: int) -> list[list[int]]:
    """Exponent vectors of ``z_2, z_3, ..., z_{p-1}, N_1, N_2`` (then back to ``z_2``) along the
    cyclic action, with ``N_1 = (z_1 z_2^{p-1} ... z_{p-1}^2)^-1`` and
    ``N_2 = z_1 z_2^{p-2} ... z_{p-1}``."""
    r = p - 1
    out = []
    for i in range(1, r):
        e = [0] * r
        e[i] = 1
        out.append(e)
    out.append([-1] + [-(p + 1 - j) for j in range(2, p)])
    out.append([1] + [p - j for j in range(2, p)])
    return out


def z_table(p: int, modulus: int) -> MonomialAutomorphism:
    """``z_1 -> z_1 z_2^p``, ``z_2 -> z_3 -> ... -> z_{p-1} -> N_1``."""
    r = p - 1
    A = [[0] * r for _ in range(r)]
    A[0][0] = 1
    A[1][0] = p
    chain = z_chain(p)
    for j in range(1, r):
        for i in range(r):
            A[i][j] = chain[j][i]
    return MonomialAutomorphism.make(A, None, modulus)


def zw_table_known_part(p: int) -> tuple[list[list[int]], list[int]]:
    """Columns of the ``(z, w)`` action whose entries are all specified, and the ``w``-part of the
    last ``w`` column (whose ``z``-part is the unspecified monomial).

    Returns the columns for ``z_1..z_{p-1}, w_1..w_{p-2}`` and the ``w``-part of the image of ``w_{p-1}``.
    """
    r = p - 1
    zt = z_table(p, 1)
    cols = []
    for j in range(r):
        cols.append([zt.A[i][j] for i in range(r)] + [0] * r)
    w1 = [0] * (2 * r)
    w1[0], w1[1], w1[r], w1[r + 1] = 1, p, 1, p
    cols.append(w1)
    for j in range(2, r):
        e = [0] * (2 * r)
        e[r + j] = 1
        cols.append(e)
    last_w = [-1] + [-(p + 1 - j) for j in range(2, p)]
    return cols, last_w


# --- p = 2 ---

def two_xy_table(family: int, n: int) -> MonomialPermTable:
    """Translate tables for the families handled by the ``<sigma^2, tau>`` construction
    with ``x_0 = Y_1, x_1 = sigma Y_1, x_2 = lambda Y_1, x_3 = lambda sigma Y_1`` (same for ``y``).

    ``xi = zeta_m^2``, ``-1 = zeta_m^(m/2)``.
    """
    m = 2 ** (n - 2)
    h = m // 2
    xi, mxi_inv = 2, h - 2
    sigma = [(1, 0), (0, xi), (3, mxi_inv), (2, h), (5, 0), (4, 0), (7, 0), (6, 0)]
    lam = [(2, 0), (3, 0), (0, 0), (1, 0), (6, 0), (7, 0), (4, 0), (5, 0)]
    if family == 15:
        tau = [(0, 0), (1, h), (2, 0), (3, h)] + [(4 + i, h) for i in range(4)]
    elif family == 16:
        tau = [(0, 0), (1, h), (2, h), (3, 0)] + [(4 + i, h) for i in range(4)]
    else:
        raise ValueError(f"no printed translate table for G{family}")
    return table_from_rules(m, 8, {"sigma": sigma, "tau": tau, "lambda": lam})


U_NAMES = ("u1", "u2", "u3", "u4")
U_PAIRS = [(2, 0), (3, 1), (6, 4), (7, 5)]


def two_u_table(family: int, n: int) -> MonomialGroupAction:
    """Printed ``u``-tables; ``lambda: u -> 1/u`` throughout."""
    m = 2 ** (n - 2)
    h = m // 2
    inv = {j: (0, {j: -1}) for j in range(4)}
    if family in (15, 16):
        sig = {0: (h - 2, {1: 1}), 1: (h - 2, {0: 1}), 2: (0, {3: 1}), 3: (0, {2: 1})}
    elif family == 18:
        sig = {0: (-2, {1: 1}), 1: (h - 2, {0: 1}), 2: (h, {3: 1}), 3: (h, {2: 1})}
    else:
        raise ValueError(f"no printed u-table for G{family}")
    tau = {0: (h, {0: 1}), 1: (h, {1: 1})} if family == 16 else {}
    gens = {"sigma": monomial_from_rule(4, m, sig), "tau": monomial_from_rule(4, m, tau),
            "lambda": monomial_from_rule(4, m, inv)}
    return MonomialGroupAction(gens, U_NAMES, m)
