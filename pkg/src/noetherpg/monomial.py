"""Monomial actions on Laurent lattices and their fixed lattices.

A monomial automorphism on variables ``x_1..x_k`` is a pair ``(A, s)`` over a
root-of-unity modulus ``m``::

    x_j  ->  zeta_m^{s_j} * prod_i x_i^{A[i][j]}

so column ``j`` of ``A`` is the exponent vector of the image of ``x_j``.  On a
monomial ``x^e`` it acts as ``x^e -> zeta_m^{s.e} x^{A e}``.  A monomial is fixed
exactly when ``A e = e`` and ``s.e = 0 (mod m)``; every "the invariant field is
generated by ..." claim is checked against that integer lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import lcm
from typing import Mapping, Optional, Sequence

import numpy as np

from . import intmat
from .intmat import Matrix, Vector
from .regrep import MonomialPermTable


class UnstableSpanError(ValueError):
    def __init__(self, msg: str, generator: str | None = None):
        super().__init__(msg)
        self.generator = generator


class NotStandardizableError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialAutomorphism:
    A: tuple[tuple[int, ...], ...]
    s: tuple[int, ...]
    modulus: int

    @classmethod
    def make(cls, A: Sequence[Sequence[int]], s: Sequence[int] | None, modulus: int) -> "MonomialAutomorphism":
        k = len(A)
        s = [0] * k if s is None else list(s)
        return cls(tuple(tuple(int(x) for x in row) for row in A),
                   tuple(int(x) % modulus for x in s), modulus)

    @classmethod
    def identity(cls, k: int, modulus: int = 1) -> "MonomialAutomorphism":
        return cls.make(intmat.identity(k), None, modulus)

    @property
    def rank(self) -> int:
        return len(self.s)

    def matrix(self) -> Matrix:
        return [list(r) for r in self.A]

    def lift(self, modulus: int) -> "MonomialAutomorphism":
        if modulus % self.modulus:
            raise ValueError("can only lift to a multiple modulus")
        f = modulus // self.modulus
        return MonomialAutomorphism(self.A, tuple(x * f % modulus for x in self.s), modulus)

    def apply_exponent(self, e: Sequence[int]) -> tuple[int, Vector]:
        """Image of ``x^e`` as ``(scalar exponent, new exponent vector)``."""
        sc = sum(a * b for a, b in zip(self.s, e)) % self.modulus
        return sc, intmat.matvec(self.A, e)

    def __matmul__(self, other: "MonomialAutomorphism") -> "MonomialAutomorphism":
        """``self @ other`` acts as ``self(other(f))``."""
        m = lcm(self.modulus, other.modulus)
        a, b = self.lift(m), other.lift(m)
        A = intmat.matmul(a.matrix(), b.matrix())
        At = intmat.transpose(b.matrix())
        s = [x + y for x, y in zip(b.s, intmat.matvec(At, a.s))]
        return MonomialAutomorphism.make(A, s, m)

    def inverse(self) -> "MonomialAutomorphism":
        Ai = intmat.inverse_unimodular(self.matrix())
        # self @ inv == id forces s' + A'^T s = 0
        s = [-x for x in intmat.matvec(intmat.transpose(Ai), self.s)]
        return MonomialAutomorphism.make(Ai, s, self.modulus)

    def __pow__(self, k: int) -> "MonomialAutomorphism":
        base = self if k >= 0 else self.inverse()
        out = MonomialAutomorphism.identity(self.rank, self.modulus)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def is_identity(self) -> bool:
        return self.A == tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)) \
            and not any(self.s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialAutomorphism):
            return NotImplemented
        if self.A != other.A:
            return False
        m = self.modulus * other.modulus
        return self.lift(m).s == other.lift(m).s

    def __hash__(self):
        return hash(self.A)

    def as_json(self) -> dict:
        return {"matrix": [list(r) for r in self.A], "scalars": [[x, self.modulus] for x in self.s]}

    def describe(self, names: Sequence[str], root: str = "z") -> list[str]:
        out = []
        for j, nm in enumerate(names):
            parts = []
            if self.s[j]:
                parts.append(f"{root}_{self.modulus}^{self.s[j]}")
            for i in range(self.rank):
                e = self.A[i][j]
                if e == 1:
                    parts.append(names[i])
                elif e:
                    parts.append(f"{names[i]}^{e}")
            out.append(f"{nm} -> " + ("*".join(parts) if parts else "1"))
        return out


@dataclass
class MonomialGroupAction:
    gens: dict[str, MonomialAutomorphism]
    names: tuple[str, ...]
    modulus: int

    @property
    def rank(self) -> int:
        return len(self.names)

    def word(self, word) -> MonomialAutomorphism:
        out = MonomialAutomorphism.identity(self.rank, self.modulus)
        for g, e in word:
            out = out @ (self.gens[g] ** e)
        return out

    def relators_ok(self, relators) -> bool:
        return all(self.word(r).is_identity() for r in relators)

    def element_actions(self, G) -> list[MonomialAutomorphism]:
        return [self.word(G.words[g]) for g in G.elements()]

    def kernel(self, G) -> list[int]:
        return [g for g, a in enumerate(self.element_actions(G)) if a.is_identity()]

    def restrict(self, gens: Sequence[str]) -> "MonomialGroupAction":
        return MonomialGroupAction({g: self.gens[g] for g in gens}, self.names, self.modulus)

    def as_json(self) -> dict:
        return {"variables": list(self.names),
                "generators": {g: a.as_json() for g, a in sorted(self.gens.items())}}

    def describe(self) -> dict[str, list[str]]:
        return {g: a.describe(self.names) for g, a in sorted(self.gens.items())}


@dataclass
class LatticeBasis:
    """New variables ``X_j = zeta_m^{offsets_j} x^{vectors_j}``."""

    vectors: list[Vector]
    offsets: list[int] = field(default_factory=list)
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.offsets:
            self.offsets = [0] * len(self.vectors)
        if not self.names:
            self.names = tuple(f"X{j + 1}" for j in range(len(self.vectors)))
        if self.vectors and intmat.rank(self.vectors) != len(self.vectors):
            raise ValueError("lattice basis vectors are linearly dependent")

    def as_json(self) -> dict:
        return {"names": list(self.names), "vectors": [list(v) for v in self.vectors],
                "offsets": list(self.offsets)}


def from_perm_table(table: MonomialPermTable, names: Sequence[str] | None = None) -> MonomialGroupAction:
    k, m = table.size, table.modulus
    gens = {}
    for g, rows in table.entries.items():
        A = intmat.zeros(k, k)
        s = [0] * k
        for i, (t, e) in enumerate(rows):
            A[t][i] = 1
            s[i] = e
        gens[g] = MonomialAutomorphism.make(A, s, m)
    return MonomialGroupAction(gens, tuple(names or (f"x{i}" for i in range(k))), m)


def induced_on_basis(action: MonomialGroupAction, basis: LatticeBasis) -> MonomialGroupAction:
    """The action rewritten in the variables of ``basis`` (scalars included)."""
    B = basis.vectors
    k = basis.offsets
    gens = {}
    for gname, a in action.gens.items():
        A = intmat.zeros(len(B), len(B))
        s = []
        for j, b in enumerate(B):
            sc, img = a.apply_exponent(b)
            c = intmat.coordinates(B, img)
            if c is None:
                raise UnstableSpanError(f"{gname} moves the span of the new variables", gname)
            for i in range(len(B)):
                A[i][j] = c[i]
            s.append(k[j] + sc - sum(ki * ci for ki, ci in zip(k, c)))
        gens[gname] = MonomialAutomorphism.make(A, s, a.modulus)
    return MonomialGroupAction(gens, tuple(basis.names), action.modulus)


def quotient_action(action: MonomialGroupAction, pairs: Sequence[tuple[int, int]],
                    names: Sequence[str] | None = None) -> MonomialGroupAction:
    """Action on ``u = x_a / x_b`` for each ``(a, b)`` in ``pairs``."""
    k = action.rank
    vecs = []
    for a, b in pairs:
        v = [0] * k
        v[a] += 1
        v[b] -= 1
        vecs.append(v)
    if not vecs:
        return MonomialGroupAction({g: MonomialAutomorphism.identity(0, action.modulus)
                                    for g in action.gens}, (), action.modulus)
    basis = LatticeBasis(vecs, names=tuple(names or (f"u{i + 1}" for i in range(len(vecs)))))
    return induced_on_basis(action, basis)


def restrict_variables(action: MonomialGroupAction, indices: Sequence[int],
                       names: Sequence[str] | None = None) -> MonomialGroupAction:
    """The action on the variables ``indices`` alone (they must be mapped among themselves)."""
    idx = list(indices)
    pos = {j: k for k, j in enumerate(idx)}
    gens = {}
    for gname, a in action.gens.items():
        A = intmat.zeros(len(idx), len(idx))
        for j in idx:
            for i in range(action.rank):
                if a.A[i][j] and i not in pos:
                    raise UnstableSpanError(f"{gname} moves {action.names[j]} outside the chosen variables", gname)
                if i in pos:
                    A[pos[i]][pos[j]] = a.A[i][j]
        gens[gname] = MonomialAutomorphism.make(A, [a.s[j] for j in idx], a.modulus)
    return MonomialGroupAction(gens, tuple(names or (action.names[j] for j in idx)), action.modulus)


def chain_pairs(indices: Sequence[int]) -> list[tuple[int, int]]:
    """``[(i_1, i_0), (i_2, i_1), ...]`` for successive quotients along a chain."""
    return [(indices[j], indices[j - 1]) for j in range(1, len(indices))]


def _fixed_system(action: MonomialGroupAction, autos: Sequence[MonomialAutomorphism]) -> Matrix:
    k = action.rank
    rows = []
    nslack = len(autos)
    for t, a in enumerate(autos):
        A = a.matrix()
        for i in range(k):
            rows.append([A[i][j] - (i == j) for j in range(k)] + [0] * nslack)
        slack = [0] * nslack
        slack[t] = -a.modulus
        rows.append(list(a.s) + slack)
    return rows


def _autos(action: MonomialGroupAction, subgroup_words) -> list[MonomialAutomorphism]:
    out = []
    for w in subgroup_words:
        if isinstance(w, MonomialAutomorphism):
            out.append(w)
        elif isinstance(w, str):
            out.append(action.gens[w])
        else:
            out.append(action.word(w))
    return out


def fixed_lattice(action: MonomialGroupAction, subgroup_words) -> LatticeBasis:
    """Basis of ``{e : A(g) e = e, s(g).e = 0 mod m}`` for the listed generators.

    ``subgroup_words`` entries may be generator names, words, or automorphisms.
    """
    k = action.rank
    autos = _autos(action, subgroup_words)
    if not autos or k == 0:
        return LatticeBasis(intmat.identity(k)) if k else LatticeBasis([])
    ker = intmat.kernel(_fixed_system(action, autos), k + len(autos))
    return LatticeBasis(intmat.hnf_rows([v[:k] for v in ker], k))


def is_fixed(action: MonomialGroupAction, subgroup_words, e: Sequence[int]) -> bool:
    for a in _autos(action, subgroup_words):
        sc, img = a.apply_exponent(e)
        if sc or img != list(e):
            return False
    return True


@dataclass
class GeneratorCheck:
    contained: bool
    index: int
    fixed_basis: list[Vector]

    def as_dict(self) -> dict:
        return {"contained": self.contained, "index": self.index,
                "fixed_lattice": [list(v) for v in self.fixed_basis]}


def check_generators(claimed: LatticeBasis, action: MonomialGroupAction, subgroup_words) -> GeneratorCheck:
    """Are the claimed monomials fixed, and do they span the whole fixed lattice?"""
    fixed = fixed_lattice(action, subgroup_words)
    contained = all(is_fixed(action, subgroup_words, v) for v in claimed.vectors)
    if not fixed.vectors:
        idx = 1 if not claimed.vectors else 0
    else:
        idx = intmat.index_in(fixed.vectors, claimed.vectors) if contained else 0
    return GeneratorCheck(contained, idx, fixed.vectors)


def brute_force_fixed_lattice(action: MonomialGroupAction, subgroup_words, bound: int = 6) -> list[Vector]:
    """HNF of the lattice spanned by all fixed exponent vectors in ``[-bound, bound]^k``.

    Independent of the Smith-form route; used as an oracle for small ranks.
    """
    k = action.rank
    if k == 0:
        return []
    grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=k)), dtype=np.int64)
    ok = np.ones(len(grid), dtype=bool)
    for a in _autos(action, subgroup_words):
        A = np.array(a.matrix(), dtype=np.int64)
        ok &= np.all(grid @ A.T == grid, axis=1)
        ok &= (grid @ np.array(a.s, dtype=np.int64)) % a.modulus == 0
    return intmat.hnf_rows(grid[ok].tolist(), k)


def companion_phi(p: int) -> Matrix:
    """Action ``s_1 -> s_2 -> ... -> s_{p-1} -> -(s_1 + ... + s_{p-1})`` (columns are images)."""
    r = p - 1
    C = intmat.zeros(r, r)
    for j in range(r - 1):
        C[j + 1][j] = 1
    for i in range(r):
        C[i][r - 1] = -1
    return C


def phi_of_matrix(L: Sequence[Sequence[int]], p: int) -> Matrix:
    """``Phi_p(L) = I + L + ... + L^{p-1}``."""
    n = len(L)
    acc = intmat.identity(n)
    P = intmat.identity(n)
    for _ in range(p - 1):
        P = intmat.matmul(P, L)
        acc = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(acc, P)]
    return acc


def _candidate_vectors(n: int, radius: int):
    yield from (v for v in (tuple(int(i == j) for j in range(n)) for i in range(n)))
    for r in range(1, radius + 1):
        for v in itertools.product(range(-r, r + 1), repeat=n):
            if max(abs(x) for x in v) == r:
                yield v


def cyclic_standardize(L: Sequence[Sequence[int]], p: int, start: Sequence[int] | None = None,
                       radius: int = 2) -> Matrix:
    """Unimodular ``P`` (columns ``v, Lv, ..., L^{p-2} v``) with ``P^-1 L P = companion_phi(p)``.

    Raises :class:`NotStandardizableError` when ``Phi_p(L) != 0`` or no cyclic
    generator is found within ``radius``.
    """
    n = len(L)
    if n != p - 1:
        raise NotStandardizableError(f"rank {n} is not p-1 = {p - 1}")
    if not intmat.is_zero(phi_of_matrix(L, p)):
        raise NotStandardizableError("the action is not annihilated by Phi_p")
    cands = _candidate_vectors(n, radius)
    if start is not None:
        cands = itertools.chain([tuple(start)], cands)
    for v in cands:
        cols = [list(v)]
        for _ in range(n - 1):
            cols.append(intmat.matvec(L, cols[-1]))
        P = intmat.from_columns(cols)
        if abs(intmat.det(P)) == 1:
            assert intmat.matmul(L, P) == intmat.matmul(P, companion_phi(p))
            return P
    raise NotStandardizableError("no cyclic Z[omega]-generator found within the search radius")


def conjugate(L: Sequence[Sequence[int]], P: Sequence[Sequence[int]]) -> Matrix:
    """``P^-1 L P`` for unimodular ``P``."""
    return intmat.matmul(intmat.inverse_unimodular(P), intmat.matmul(L, P))


def monomial_from_rule(k: int, modulus: int, images: Mapping[int, tuple[int, Mapping[int, int]]]) -> MonomialAutomorphism:
    """Automorphism from ``{j: (scalar exponent, {i: exponent})}``; unspecified ``j`` are fixed."""
    A = intmat.identity(k)
    s = [0] * k
    for j, (sc, mono) in images.items():
        for i in range(k):
            A[i][j] = mono.get(i, 0)
        s[j] = sc
    return MonomialAutomorphism.make(A, s, modulus)


def cyclic_inversion(k: int, offset: int = 0) -> dict[int, tuple[int, dict]]:
    """Rule ``y_1 -> y_2 -> ... -> y_k -> (y_1 ... y_k)^-1`` on variables ``offset..offset+k-1``."""
    rule: dict[int, tuple[int, dict]] = {}
    for j in range(k - 1):
        rule[offset + j] = (0, {offset + j + 1: 1})
    if k:
        rule[offset + k - 1] = (0, {offset + i: -1 for i in range(k)})
    return rule


def diagonal_rule(exps: Sequence[int], offset: int = 0) -> dict[int, tuple[int, dict]]:
    """Rule ``y_j -> zeta^{exps_j} y_j``."""
    return {offset + j: (e, {offset + j: 1}) for j, e in enumerate(exps)}
