"""Regular permutation realization of a presented group, and structural checks on it.

Group elements are indices into a Cayley table (``int``); index 0 is the identity.
Element ``i`` corresponds to the coset reached from coset 0 along its
breadth-first word, and ``mul[i, j]`` is the index of the product ``g_i g_j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .coset import enumerate_cosets
from .families import Presentation, Word

GroupElement = int


class PresentationError(ValueError):
    pass


@dataclass
class PermGroup:
    presentation: Presentation
    coset_table: list[list[int]]
    mul: np.ndarray
    inv: np.ndarray
    words: list[Word]
    gens: dict[str, int] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.coset_table)

    @property
    def order(self) -> int:
        return len(self.coset_table)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return self.presentation.generators

    @property
    def identity(self) -> GroupElement:
        return 0

    @property
    def generator_perms(self) -> dict[str, list[int]]:
        """Right-regular permutation of each generator on the coset space."""
        return {
            g: [row[2 * k] for row in self.coset_table]
            for k, g in enumerate(self.presentation.generators)
        }

    def __getitem__(self, name: str) -> GroupElement:
        return self.gens[name]

    def m(self, *elts: GroupElement) -> GroupElement:
        out = 0
        for e in elts:
            out = int(self.mul[out, e])
        return out

    def inverse(self, g: GroupElement) -> GroupElement:
        return int(self.inv[g])

    def power(self, g: GroupElement, k: int) -> GroupElement:
        if k < 0:
            g, k = self.inverse(g), -k
        out, base = 0, g
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def conj(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """x^-1 y x"""
        return self.m(self.inverse(x), y, x)

    def evaluate(self, word) -> GroupElement:
        out = 0
        for g, e in word:
            out = int(self.mul[out, self.power(self.gens[g], e)])
        return out

    def word_of(self, g: GroupElement) -> str:
        w = self.words[g]
        if not w:
            return "1"
        return "*".join(name if e == 1 else f"{name}^{e}" for name, e in w)

    def elements(self) -> range:
        return range(self.order)

    def relators_trivial(self) -> bool:
        T = self.coset_table
        cols = _relator_columns(self.presentation)
        for c in range(self.degree):
            for r in cols:
                d = c
                for x in r:
                    d = T[d][x]
                if d != c:
                    return False
        return True

    def check_associativity(self, samples: int = 1000, full_limit: int = 81, seed: int = 0) -> bool:
        M = self.mul
        n = self.order
        if n <= full_limit:
            left = M[M[:, :, None], np.arange(n)[None, None, :]]
            right = M[np.arange(n)[:, None, None], M[None, :, :]]
            return bool(np.array_equal(left, right))
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if M[M[a, b], c] != M[a, M[b, c]]:
                return False
        return True


def _relator_columns(pres: Presentation) -> list[list[int]]:
    idx = {g: k for k, g in enumerate(pres.generators)}
    out = []
    for r in pres.relators:
        cols = []
        for g, e in r:
            if g not in idx:
                raise PresentationError(f"unknown generator {g!r}")
            col = 2 * idx[g] + (0 if e > 0 else 1)
            cols.extend([col] * abs(e))
        out.append(cols)
    return out


def realize(pres: Presentation, max_order: int = 4096, strategy: str = "hlt") -> PermGroup:
    """Regular permutation representation of ``pres`` by coset enumeration.

    Raises :class:`~.coset.CosetLimitError` when more than ``10 * max_order``
    cosets are needed, or the group turns out larger than ``max_order``.
    """
    from .coset import CosetLimitError

    ngens = len(pres.generators)
    table = enumerate_cosets(ngens, _relator_columns(pres), max_cosets=10 * max_order, strategy=strategy)
    n = len(table)
    if n > max_order:
        raise CosetLimitError(f"group order {n} exceeds the configured bound {max_order}")
    cols = np.array(table, dtype=np.int64).T  # cols[x][c]

    # breadth-first spanning tree: element j = parent[j] * generator-column xcol[j]
    parent = [-1] * n
    xcol = [-1] * n
    words: list[Word] = [()] * n
    seen = [False] * n
    seen[0] = True
    order = [0]
    k = 0
    while k < len(order):
        c = order[k]
        for x in range(2 * ngens):
            d = table[c][x]
            if not seen[d]:
                seen[d] = True
                parent[d], xcol[d] = c, x
                name = pres.generators[x // 2]
                words[d] = _append(words[c], name, 1 if x % 2 == 0 else -1)
                order.append(d)
        k += 1
    mul = np.zeros((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for j in order[1:]:
        mul[:, j] = cols[xcol[j]][mul[:, parent[j]]]
    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    G = PermGroup(pres, table, mul, inv, words)
    for k, g in enumerate(pres.generators):
        G.gens[g] = int(table[0][2 * k])
    if not G.relators_trivial():
        raise PresentationError("a relator acts nontrivially on the enumerated cosets")
    return G


def _append(word: Word, name: str, e: int) -> Word:
    if word and word[-1][0] == name:
        tot = word[-1][1] + e
        return word[:-1] + (((name, tot),) if tot else ())
    return word + ((name, e),)


# --- element and subgroup computations ---

def element_order(G: PermGroup, g: GroupElement) -> int:
    k, x = 1, g
    while x != 0:
        x = int(G.mul[x, g])
        k += 1
    return k


def order_spectrum(G: PermGroup) -> dict[int, int]:
    spec: dict[int, int] = {}
    for g in G.elements():
        o = element_order(G, g)
        spec[o] = spec.get(o, 0) + 1
    return dict(sorted(spec.items()))


def exponent(G: PermGroup) -> int:
    e = 1
    for o in order_spectrum(G):
        e = e * o // gcd(e, o)
    return e


def is_abelian_set(G: PermGroup, elts: Sequence[GroupElement]) -> bool:
    M = G.mul
    return all(M[a, b] == M[b, a] for a in elts for b in elts)


def closure(G: PermGroup, gens: Iterable[GroupElement]) -> list[GroupElement]:
    """Elements of the subgroup generated by ``gens`` (sorted)."""
    gens = [g for g in gens if g != 0]
    seen = {0}
    frontier = [0]
    M = G.mul
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = int(M[h, g])
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen)


def center(G: PermGroup) -> list[GroupElement]:
    gens = list(G.gens.values())
    M = G.mul
    return [z for z in G.elements() if all(M[z, g] == M[g, z] for g in gens)]


def is_normal(G: PermGroup, H: Sequence[GroupElement]) -> bool:
    Hs = set(H)
    return all(G.conj(g, h) in Hs for g in G.gens.values() for h in H)


def coset_order(G: PermGroup, g: GroupElement, H: set) -> int:
    """Order of gH in G/H (H normal)."""
    k, x = 1, g
    while x not in H:
        x = int(G.mul[x, g])
        k += 1
    return k


@dataclass
class SubgroupProps:
    order: int
    is_abelian: bool
    is_normal: bool
    is_cyclic: bool
    quotient_order: Optional[int] = None
    quotient_cyclic: Optional[bool] = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def subgroup_props(G: PermGroup, gens: Sequence[GroupElement]) -> SubgroupProps:
    H = closure(G, gens)
    abel = is_abelian_set(G, list(gens)) if gens else True
    normal = is_normal(G, H)
    cyclic = any(element_order(G, h) == len(H) for h in H)
    props = SubgroupProps(len(H), abel, normal, cyclic)
    if normal:
        Hs = set(H)
        qo = G.order // len(H)
        props.quotient_order = qo
        props.quotient_cyclic = any(coset_order(G, g, Hs) == qo for g in G.elements())
    return props


def direct_product_check(G: PermGroup, h_gens: Sequence[GroupElement], c: GroupElement) -> bool:
    """True iff G = <h_gens> x <c> internally, with c central."""
    H = closure(G, h_gens)
    C = closure(G, [c])
    if set(H) & set(C) != {0}:
        return False
    if c not in center(G):
        return False
    return len(H) * len(C) == G.order


def metacyclic_check(G: PermGroup, s: GroupElement, t: GroupElement) -> bool:
    """True iff <s> is normal in G, G = <s, t>, and G/<s> is generated by the image of t."""
    if len(closure(G, [s, t])) != G.order:
        return False
    S = closure(G, [s])
    if not is_normal(G, S):
        return False
    return coset_order(G, t, set(S)) == G.order // len(S)


@dataclass
class ClaimReport:
    order: int
    expected_order: int
    non_abelian: bool
    has_order_p_n2: bool
    witness_order_p_n2: Optional[str]
    no_order_p_n1: bool
    witness_order_p_n1: Optional[str]
    exponent: int
    order_spectrum: dict
    relators_trivial: bool
    associative: bool

    @property
    def ok(self) -> bool:
        return (self.order == self.expected_order and self.non_abelian and self.has_order_p_n2
                and self.no_order_p_n1 and self.relators_trivial and self.associative)

    def failures(self) -> list[str]:
        out = []
        if self.order != self.expected_order:
            out.append(f"|G| = {self.order}, expected {self.expected_order}")
        if not self.non_abelian:
            out.append("group is abelian")
        if not self.has_order_p_n2:
            out.append("no element of order p^(n-2)")
        if not self.no_order_p_n1:
            out.append(f"element {self.witness_order_p_n1} has order p^(n-1)")
        if not self.relators_trivial:
            out.append("relators act nontrivially")
        if not self.associative:
            out.append("Cayley table not associative")
        return out

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["order_spectrum"] = {str(k): v for k, v in self.order_spectrum.items()}
        return d


def verify_family_claims(p: int, n: int, G: PermGroup) -> ClaimReport:
    spec = order_spectrum(G)
    target, forbidden = p ** (n - 2), p ** (n - 1)
    wit2 = next((g for g in G.elements() if element_order(G, g) == target), None) if target in spec else None
    wit1 = next((g for g in G.elements() if element_order(G, g) == forbidden), None) if forbidden in spec else None
    gens = list(G.gens.values())
    e = 1
    for o in spec:
        e = e * o // gcd(e, o)
    return ClaimReport(
        order=G.order,
        expected_order=p ** n,
        non_abelian=not is_abelian_set(G, gens),
        has_order_p_n2=wit2 is not None,
        witness_order_p_n2=None if wit2 is None else G.word_of(wit2),
        no_order_p_n1=wit1 is None,
        witness_order_p_n1=None if wit1 is None else G.word_of(wit1),
        exponent=e,
        order_spectrum=spec,
        relators_trivial=G.relators_trivial(),
        associative=G.check_associativity(),
    )
