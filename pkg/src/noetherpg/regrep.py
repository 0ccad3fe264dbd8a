"""Vectors in the regular representation and the monomial actions they span.

``V* = sum_g K x(g)`` with ``h . x(g) = x(hg)``.  Coefficients live in
``Q(zeta_m)`` for one fixed modulus ``m`` per vector.  Scalars in action tables
are stored as exponents of ``zeta_m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .cyclotomic import CycloNumber, RootOfUnity
from .fpgroups.permgroup import GroupElement, PermGroup


class DegenerateEigenvectorError(ValueError):
    """A character average came out as the zero vector."""


class DependentBasisError(ValueError):
    def __init__(self, msg: str, relation: Optional[list] = None):
        super().__init__(msg)
        self.relation = relation


class NotMonomialError(ValueError):
    """Some generator maps a basis vector outside the scalar multiples of the basis."""


class GroupVector:
    """Sparse vector ``sum_h c_h x(h)`` with coefficients in ``Q(zeta_m)``."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs: Mapping[GroupElement, CycloNumber] | None = None):
        self.modulus = modulus
        self.coeffs: dict[GroupElement, CycloNumber] = {
            h: c for h, c in (coeffs or {}).items() if c
        }

    @classmethod
    def basis(cls, modulus: int, h: GroupElement) -> "GroupVector":
        return cls(modulus, {h: CycloNumber.one(modulus)})

    def support(self) -> list[GroupElement]:
        return sorted(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "GroupVector") -> "GroupVector":
        out = dict(self.coeffs)
        for h, c in other.coeffs.items():
            out[h] = out[h] + c if h in out else c
        return GroupVector(self.modulus, out)

    def __sub__(self, other: "GroupVector") -> "GroupVector":
        return self + other.scale(-1)

    def scale(self, c) -> "GroupVector":
        if isinstance(c, RootOfUnity):
            e = c.lift(self.modulus).exponent
            return GroupVector(self.modulus, {h: x.times_root(e) for h, x in self.coeffs.items()})
        return GroupVector(self.modulus, {h: x * c for h, x in self.coeffs.items()})

    def times_root(self, e: int) -> "GroupVector":
        return GroupVector(self.modulus, {h: x.times_root(e) for h, x in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupVector) and self.modulus == other.modulus
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.modulus, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        return f"GroupVector(m={self.modulus}, support={len(self.coeffs)})"


def act(G: PermGroup, g: GroupElement, v: GroupVector) -> GroupVector:
    """``g . v``: relabel ``x(h) -> x(gh)``."""
    row = G.mul[g]
    return GroupVector(v.modulus, {int(row[h]): c for h, c in v.coeffs.items()})


def orbit_sum(G: PermGroup, subgroup_elems: Iterable[GroupElement], base: GroupElement = 0,
              modulus: int = 1) -> GroupVector:
    """``sum_h x(h . base)`` over the listed elements, coefficient 1 each."""
    one = CycloNumber.one(modulus)
    out: dict[GroupElement, CycloNumber] = {}
    for h in subgroup_elems:
        k = G.m(h, base)
        out[k] = out[k] + one if k in out else one
    return GroupVector(modulus, out)


def powers(G: PermGroup, g: GroupElement, count: int) -> list[GroupElement]:
    out, x = [], 0
    for _ in range(count):
        out.append(x)
        x = G.m(x, g)
    return out


def character_average(G: PermGroup, v: GroupVector, g: GroupElement, c: RootOfUnity,
                      length: int) -> GroupVector:
    """``Y = sum_{0<=j<length} c^-j g^j . v``; checks ``g . Y == c Y``."""
    m = v.modulus
    e = c.lift(m).exponent
    if (e * length) % m:
        raise ValueError("c^length must be 1")
    if act(G, G.power(g, length), v) != v:
        raise ValueError("g^length must stabilize v")
    Y = GroupVector(m)
    w = v
    for j in range(length):
        Y = Y + w.times_root(-j * e)
        w = act(G, g, w)
    if not Y:
        raise DegenerateEigenvectorError(f"character average with c = {c} vanishes")
    if act(G, g, Y) != Y.times_root(e):
        raise AssertionError("eigen-equation failed for a character average")
    return Y


def translate_basis(G: PermGroup, vecs: Sequence[GroupVector], translator: GroupElement,
                    count: int) -> list[GroupVector]:
    """``[t^i . v for v in vecs for i in range(count)]``, checked independent."""
    return translate_set(G, vecs, powers(G, translator, count))


def translate_set(G: PermGroup, vecs: Sequence[GroupVector],
                  translators: Sequence[GroupElement]) -> list[GroupVector]:
    """``[g . v for v in vecs for g in translators]``, checked independent."""
    out = [act(G, g, v) for v in vecs for g in translators]
    rel = dependency(out)
    if rel is not None:
        raise DependentBasisError("translates are linearly dependent", rel)
    return out


def dependency(vecs: Sequence[GroupVector]) -> Optional[list[CycloNumber]]:
    """A nontrivial relation ``sum a_i v_i = 0`` or ``None`` when independent (exact)."""
    if not vecs:
        return None
    m = vecs[0].modulus
    zero, one = CycloNumber.zero(m), CycloNumber.one(m)
    # rows: (vector coeffs, combination used to build it)
    reduced: list[tuple[GroupElement, dict, list]] = []
    for i, v in enumerate(vecs):
        row = dict(v.coeffs)
        comb = [zero] * len(vecs)
        comb[i] = one
        for piv, prow, pcomb in reduced:
            c = row.get(piv)
            if c:
                f = c / prow[piv]
                for h, x in prow.items():
                    y = row.get(h, zero) - f * x
                    if y:
                        row[h] = y
                    else:
                        row.pop(h, None)
                comb = [a - f * b for a, b in zip(comb, pcomb)]
        if not row:
            return comb
        reduced.append((min(row), row, comb))
    return None


def rank(vecs: Sequence[GroupVector]) -> int:
    n = 0
    kept: list[GroupVector] = []
    for v in vecs:
        if dependency(kept + [v]) is None:
            kept.append(v)
            n += 1
    return n


# --- monomial permutation tables ---

@dataclass
class MonomialPermTable:
    """For each generator ``g``: ``g . b_i = zeta_m^{e_i} b_{perm(i)}``."""

    modulus: int
    size: int
    entries: dict[str, list[tuple[int, int]]] = field(default_factory=dict)

    def image(self, gen: str, i: int) -> tuple[int, int]:
        return self.entries[gen][i]

    def identity(self) -> list[tuple[int, int]]:
        return [(i, 0) for i in range(self.size)]

    def compose(self, a: Sequence[tuple[int, int]], b: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
        """Action of ``ab`` (apply ``b`` first) from the actions of ``a`` and ``b``."""
        m = self.modulus
        out = []
        for t, e in b:
            t2, e2 = a[t]
            out.append((t2, (e + e2) % m))
        return out

    def inverse_of(self, a: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
        out = [(0, 0)] * self.size
        for i, (t, e) in enumerate(a):
            out[t] = (i, (-e) % self.modulus)
        return out

    def word_action(self, word) -> list[tuple[int, int]]:
        out = self.identity()
        for g, e in word:
            a = self.entries[g] if e > 0 else self.inverse_of(self.entries[g])
            for _ in range(abs(e)):
                out = self.compose(out, a)
        return out

    def is_identity(self, a: Sequence[tuple[int, int]]) -> bool:
        return all(t == i and e % self.modulus == 0 for i, (t, e) in enumerate(a))

    def relators_ok(self, relators) -> bool:
        return all(self.is_identity(self.word_action(r)) for r in relators)

    def element_actions(self, G: PermGroup) -> list[list[tuple[int, int]]]:
        return [self.word_action(G.words[g]) for g in G.elements()]

    def as_json(self) -> dict:
        return {g: [[t, e, self.modulus] for t, e in rows] for g, rows in sorted(self.entries.items())}

    def restrict(self, indices: Sequence[int]) -> "MonomialPermTable":
        """Table on the sub-basis ``indices`` (which must be permuted among themselves)."""
        pos = {j: k for k, j in enumerate(indices)}
        out = {}
        for g, rows in self.entries.items():
            out[g] = []
            for j in indices:
                t, e = rows[j]
                if t not in pos:
                    raise ValueError("indices are not stable under the table")
                out[g].append((pos[t], e))
        return MonomialPermTable(self.modulus, len(indices), out)


def extract_action(G: PermGroup, basis: Sequence[GroupVector],
                   generators: Optional[Sequence[str]] = None) -> MonomialPermTable:
    """Read off how each generator permutes ``basis`` up to roots of unity."""
    if not basis:
        return MonomialPermTable(1, 0, {g: [] for g in (generators or G.generator_names)})
    m = basis[0].modulus
    where: dict[GroupElement, list[int]] = {}
    for j, b in enumerate(basis):
        for h in b.coeffs:
            where.setdefault(h, []).append(j)
    entries = {}
    for gname in generators or G.generator_names:
        g = G[gname]
        rows = []
        for i, b in enumerate(basis):
            img = act(G, g, b)
            h0 = min(img.coeffs)
            found = None
            for j in where.get(h0, []):
                c = img.coeffs[h0] / basis[j].coeffs[h0]
                if img == basis[j].scale(c):
                    e = c.root_exponent()
                    if e is None:
                        raise NotMonomialError(
                            f"{gname} maps basis vector {i} to a non-root multiple of vector {j}")
                    found = (j, e)
                    break
            if found is None:
                raise NotMonomialError(f"{gname} does not map basis vector {i} to a basis multiple")
            rows.append(found)
        entries[gname] = rows
    table = MonomialPermTable(m, len(basis), entries)
    if not table.relators_ok(G.presentation.relators):
        raise AssertionError("extracted table does not respect the defining relators")
    return table


def action_kernel(G: PermGroup, table: MonomialPermTable) -> list[GroupElement]:
    acts = table.element_actions(G)
    return [g for g in G.elements() if table.is_identity(acts[g])]


def faithful_check(G: PermGroup, table: MonomialPermTable) -> bool:
    """True iff only the identity acts trivially (permutation and scalars)."""
    return action_kernel(G, table) == [0]


def table_from_rules(modulus: int, size: int, rules: Mapping[str, Sequence[tuple[int, int]]]) -> MonomialPermTable:
    """Build a table from explicit ``(target, exponent)`` rows, exponents reduced mod ``modulus``."""
    return MonomialPermTable(
        modulus, size, {g: [(t, e % modulus) for t, e in rows] for g, rows in rules.items()})
