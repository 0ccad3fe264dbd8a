"""The classified families of non-abelian p-groups with a cyclic subgroup of index p^2.

Odd primes have 11 families (theorem label "3.1"), p = 2 has 25 (label "3.2").
Each family is stored as a list of defining relations ``lhs = rhs`` in the
generators sigma, tau and (when present) lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

Word = tuple[tuple[str, int], ...]

SIGMA, TAU, LAMBDA = "sigma", "tau", "lambda"
ODD, TWO = "3.1", "3.2"


class ParameterRangeError(ValueError):
    """A (theorem, family, p, n) combination outside the family's stated range."""


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def is_quadratic_residue(a: int, p: int) -> bool:
    return any((x * x - a) % p == 0 for x in range(1, p))


def least_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if not is_quadratic_residue(a, p))


@dataclass(frozen=True)
class FamilySpec:
    theorem: str
    family_index: int
    p: int
    n: int
    a: Optional[int] = None

    def label(self) -> str:
        s = f"G{self.family_index}[{self.theorem}] p={self.p} n={self.n}"
        return s + (f" a={self.a}" if self.a is not None else "")

    def as_dict(self) -> dict:
        d = {"theorem": self.theorem, "index": self.family_index, "p": self.p, "n": self.n}
        if self.a is not None:
            d["a"] = self.a
        return d


def free_reduce(word) -> Word:
    out: list[list] = []
    for g, e in word:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def inverse_word(word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def to_text(self) -> str:
        lines = ["# generators: " + " ".join(self.generators)]
        for r in self.relators:
            lines.append(" ".join(f"{g}^{e}" for g, e in r))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, generators: tuple[str, ...] | None = None) -> "Presentation":
        gens = list(generators or ())
        rels = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("generators:") and generators is None:
                    gens = body.split(":", 1)[1].split()
                continue
            word = []
            for tok in line.split():
                g, _, e = tok.partition("^")
                word.append((g, int(e) if e else 1))
                if g not in gens:
                    gens.append(g)
            rels.append(free_reduce(word))
        return cls(tuple(gens), tuple(rels))


def _w(*gens: str) -> Word:
    return tuple((g, 1) for g in gens)


def pw(g: str, k: int) -> Word:
    return ((g, k),) if k else ()


def conj(x: str, y: str) -> Word:
    """x^-1 y x"""
    return ((x, -1), (y, 1), (x, 1))


def commute(x: str, y: str) -> tuple[Word, Word]:
    return (_w(x, y), _w(y, x))


Relation = tuple[Word, Word]


@dataclass(frozen=True)
class FamilyDef:
    theorem: str
    index: int
    min_n: int
    generators: tuple[str, ...]
    relations: Callable[[int, int, int], list[Relation]]
    exact: Optional[tuple[int, int]] = None  # forced (p, n)
    needs_a: bool = False
    # relations exactly as printed when they differ from the ones used
    printed: Optional[Callable[[int, int, int], list[Relation]]] = None
    printed_note: str = ""


S, T, L = SIGMA, TAU, LAMBDA
SGT = (S, T)
SGTL = (S, T, L)


def _odd_families() -> list[FamilyDef]:
    def base3(p, n):
        P = p ** (n - 2)
        return [(pw(S, P), ()), (pw(T, p), ()), (pw(L, p), ())]

    fams = [
        FamilyDef(ODD, 1, 3, SGTL, lambda p, n, a: base3(p, n) + [
            commute(S, L), commute(T, L), (conj(T, S), _w(S, L))]),
        FamilyDef(ODD, 2, 4, SGT, lambda p, n, a: [
            (pw(S, p ** (n - 2)), ()), (pw(T, p * p), ()),
            (conj(T, S), pw(S, 1 + p ** (n - 3)))]),
        FamilyDef(ODD, 3, 4, SGTL, lambda p, n, a: base3(p, n) + [
            commute(S, L), commute(T, L), (conj(T, S), pw(S, 1 + p ** (n - 3)))]),
        FamilyDef(ODD, 4, 4, SGTL, lambda p, n, a: base3(p, n) + [
            commute(S, T), commute(S, L), (conj(L, T), pw(S, p ** (n - 3)) + pw(T, 1))]),
        FamilyDef(ODD, 5, 4, SGTL, lambda p, n, a: base3(p, n) + [
            commute(S, T), (conj(L, S), _w(S, T)), (conj(L, T), pw(S, p ** (n - 3)) + pw(T, 1))]),
        FamilyDef(ODD, 6, 4, SGTL, lambda p, n, a: base3(p, n) + [
            commute(S, T), (conj(L, S), _w(S, T)),
            (conj(L, T), pw(S, a * p ** (n - 3)) + pw(T, 1))], needs_a=True),
        FamilyDef(ODD, 7, 4, SGTL, lambda p, n, a: base3(p, n) + [
            (conj(T, S), pw(S, 1 + p ** (n - 3))), (conj(L, S), _w(S, T)), commute(T, L)]),
        FamilyDef(ODD, 8, 5, SGT, lambda p, n, a: [
            (pw(S, p ** (n - 2)), ()), (pw(T, p * p), ()),
            (conj(T, S), pw(S, 1 + p ** (n - 4)))]),
        FamilyDef(ODD, 9, 5, SGT, lambda p, n, a: [
            (pw(S, p ** (n - 2)), ()), (pw(T, p * p), ()),
            (conj(S, T), pw(T, 1 + p))]),
        FamilyDef(ODD, 10, 6, SGT, lambda p, n, a: [
            (pw(S, p ** (n - 2)), ()), (pw(S, p ** (n - 3)), pw(T, p * p)),
            (conj(S, T), pw(T, 1 - p))]),
        FamilyDef(ODD, 11, 4, SGTL, lambda p, n, a: [
            (pw(S, 9), ()), (pw(T, 3), ()), (pw(S, 3), pw(L, 3)), commute(S, T),
            (conj(L, S), _w(S, T)), (conj(L, T), pw(S, 6) + pw(T, 1))], exact=(3, 4)),
    ]
    return fams


def _two_families() -> list[FamilyDef]:
    def P(n):
        return 2 ** (n - 2)

    def Q(n):
        return 2 ** (n - 3)

    def R(n):
        return 2 ** (n - 4)

    def base3(n):
        return [(pw(S, P(n)), ()), (pw(T, 2), ()), (pw(L, 2), ())]

    def meta(n, t_order_rel, conj_rel):
        return [(pw(S, P(n)), ())] + t_order_rel + [conj_rel]

    F = []

    def add(index, min_n, gens, rel, **kw):
        F.append(FamilyDef(TWO, index, min_n, gens, rel, **kw))

    t4 = lambda n: [(pw(T, 4), ())]  # noqa: E731
    add(1, 4, SGT, lambda p, n, a: meta(n, t4(n), (conj(T, S), pw(S, 1 + Q(n)))))
    add(2, 4, SGTL, lambda p, n, a: [
        (pw(S, P(n)), ()), (pw(L, 2), ()), (pw(S, Q(n)), pw(T, 2)),
        (conj(T, S), pw(S, -1)), commute(S, L), commute(T, L)])
    add(3, 4, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, -1)), commute(S, L), commute(T, L)])
    add(4, 4, SGTL, lambda p, n, a: base3(n) + [
        commute(S, T), commute(S, L), (conj(L, T), pw(S, Q(n)) + pw(T, 1))])
    add(5, 4, SGTL, lambda p, n, a: base3(n) + [
        commute(S, T), (conj(L, S), _w(S, T)), commute(T, L)])
    add(6, 5, SGT, lambda p, n, a: meta(n, t4(n), (conj(T, S), pw(S, -1))))
    add(7, 5, SGT, lambda p, n, a: meta(n, t4(n), (conj(T, S), pw(S, -1 + Q(n)))))
    add(8, 5, SGT, lambda p, n, a: meta(n, [(pw(S, Q(n)), pw(T, 4))], (conj(T, S), pw(S, -1))))
    add(9, 5, SGT, lambda p, n, a: meta(n, t4(n), (conj(S, T), pw(T, -1))))
    add(10, 5, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, 1 + Q(n))), commute(S, L), commute(T, L)])
    add(11, 5, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, -1 + Q(n))), commute(S, L), commute(T, L)])
    add(12, 5, SGTL, lambda p, n, a: base3(n) + [
        commute(S, T), (conj(L, S), pw(S, -1)), (conj(L, T), pw(S, Q(n)) + pw(T, 1))])
    add(13, 5, SGTL, lambda p, n, a: base3(n) + [
        commute(S, T), (conj(L, S), pw(S, -1) + pw(T, 1)), commute(T, L)])
    add(14, 5, SGTL, lambda p, n, a: [
        (pw(S, P(n)), ()), (pw(T, 2), ()), (pw(S, Q(n)), pw(L, 2)),
        commute(S, T), (conj(L, S), pw(S, -1) + pw(T, 1)), commute(T, L)])
    add(15, 5, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1 + Q(n))), commute(T, L)])
    add(16, 5, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1 + Q(n))),
        (conj(L, T), pw(S, Q(n)) + pw(T, 1))])
    add(17, 5, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), _w(S, T)), commute(T, L)])
    add(18, 5, SGTL, lambda p, n, a: [
        (pw(S, P(n)), ()), (pw(T, 2), ()), (pw(L, 2), pw(T, 1)),
        (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1) + pw(T, 1))])
    add(19, 6, SGT, lambda p, n, a: meta(n, t4(n), (conj(T, S), pw(S, 1 + R(n)))))
    add(20, 6, SGT, lambda p, n, a: meta(n, t4(n), (conj(T, S), pw(S, -1 + R(n)))))
    add(21, 6, SGT,
        lambda p, n, a: meta(n, [(pw(S, Q(n)), pw(T, 4))], (conj(S, T), pw(T, -1))),
        printed=lambda p, n, a: meta(n, [(pw(S, Q(n)), pw(T, 4))], (conj(T, S), pw(T, -1))),
        printed_note=(
            "G21 (p=2): the printed relation tau^-1 sigma tau = tau^-1 forces sigma = tau^-1 "
            "and collapses the group to an abelian one; realized with sigma^-1 tau sigma = tau^-1, "
            "the only variant of this shape not isomorphic to another listed family"))
    add(22, 6, SGTL, lambda p, n, a: base3(n) + [
        commute(S, T), (conj(L, S), pw(S, 1 + R(n)) + pw(T, 1)),
        (conj(L, T), pw(S, Q(n)) + pw(T, 1))])
    add(23, 6, SGTL, lambda p, n, a: base3(n) + [
        commute(S, T), (conj(L, S), pw(S, -1 + R(n)) + pw(T, 1)),
        (conj(L, T), pw(S, Q(n)) + pw(T, 1))])
    add(24, 6, SGTL, lambda p, n, a: base3(n) + [
        (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1 + R(n)) + pw(T, 1)), commute(T, L)],
        printed=lambda p, n, a: base3(n) + [
            (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1 + R(n))), commute(T, L)],
        printed_note=(
            "G24 (p=2): conjugation sigma -> sigma^(-1+2^(n-4)) has order 4, so the printed "
            "relations with lambda^2 = 1 collapse the group to order 2^(n-1); realized with "
            "lambda^-1 sigma lambda = sigma^(-1+2^(n-4)) tau, matching G18 and G23"))
    add(25, 6, SGTL, lambda p, n, a: [
        (pw(S, P(n)), ()), (pw(T, 2), ()), (pw(S, Q(n)), pw(L, 2)),
        (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1 + R(n)) + pw(T, 1)), commute(T, L)],
        printed=lambda p, n, a: [
            (pw(S, P(n)), ()), (pw(T, 2), ()), (pw(S, Q(n)), pw(L, 2)),
            (conj(T, S), pw(S, 1 + Q(n))), (conj(L, S), pw(S, -1 + R(n))), commute(T, L)],
        printed_note=(
            "G25 (p=2): same defect as G24; realized with "
            "lambda^-1 sigma lambda = sigma^(-1+2^(n-4)) tau"))
    return F


FAMILIES: dict[tuple[str, int], FamilyDef] = {
    (f.theorem, f.index): f for f in _odd_families() + _two_families()
}


def family_def(theorem: str, index: int) -> FamilyDef:
    try:
        return FAMILIES[(theorem, index)]
    except KeyError:
        raise ParameterRangeError(f"no family G{index} under theorem {theorem}") from None


def validate(spec: FamilySpec) -> FamilySpec:
    """Check the parameter ranges; returns the spec with the default ``a`` filled in."""
    fam = family_def(spec.theorem, spec.family_index)
    p, n = spec.p, spec.n
    if not is_prime(p):
        raise ParameterRangeError(f"p={p} is not prime")
    if spec.theorem == ODD and p == 2:
        raise ParameterRangeError("theorem 3.1 families require p odd")
    if spec.theorem == TWO and p != 2:
        raise ParameterRangeError("theorem 3.2 families require p = 2")
    if fam.exact is not None and (p, n) != fam.exact:
        raise ParameterRangeError(
            f"G{fam.index} is defined only for (p, n) = {fam.exact}, got ({p}, {n})")
    if n < fam.min_n:
        raise ParameterRangeError(f"G{fam.index} needs n >= {fam.min_n}, got n = {n}")
    a = spec.a
    if fam.needs_a:
        if a is None:
            a = least_nonresidue(p)
        if a % p == 0 or is_quadratic_residue(a % p, p):
            raise ParameterRangeError(f"a={a} is not a quadratic non-residue mod {p}")
    elif a is not None:
        raise ParameterRangeError(f"G{fam.index} takes no parameter a")
    if a != spec.a:
        spec = FamilySpec(spec.theorem, spec.family_index, p, n, a)
    return spec


def _relators(fam: FamilyDef, rels: list[Relation]) -> tuple[Word, ...]:
    out = []
    for lhs, rhs in rels:
        r = free_reduce(tuple(lhs) + inverse_word(rhs))
        if r:
            out.append(r)
    return tuple(out)


def build_presentation(spec: FamilySpec) -> Presentation:
    spec = validate(spec)
    fam = family_def(spec.theorem, spec.family_index)
    return Presentation(fam.generators, _relators(fam, fam.relations(spec.p, spec.n, spec.a or 0)))


def printed_presentation(spec: FamilySpec) -> Optional[Presentation]:
    """The literal presentation as printed, when it differs from the one realized."""
    spec = validate(spec)
    fam = family_def(spec.theorem, spec.family_index)
    if fam.printed is None:
        return None
    return Presentation(fam.generators, _relators(fam, fam.printed(spec.p, spec.n, spec.a or 0)))


def family_indices(theorem: str) -> list[int]:
    return sorted(i for (t, i) in FAMILIES if t == theorem)


def in_range(theorem: str, index: int, p: int, n: int) -> bool:
    try:
        validate(FamilySpec(theorem, index, p, n))
    except ParameterRangeError:
        return False
    return True
