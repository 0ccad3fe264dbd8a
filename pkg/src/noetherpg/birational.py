"""Exact multivariate rational functions and the non-monomial coordinate changes.

Coefficients are :class:`fractions.Fraction` or :class:`~.cyclotomic.CycloNumber`
(anything closed under ``+ - * /`` with exact equality).  Fractions are reduced
by a recursive primitive-PRS gcd; equality is decided by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .cyclotomic import CycloNumber
from .monomial import MonomialAutomorphism

Exp = tuple[int, ...]


class DegenerateSubstitutionError(ZeroDivisionError):
    """A denominator vanished identically after substitution."""


class DegreeBoundError(AssertionError):
    pass


def _coef(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, CycloNumber) and c.is_rational():
        return Fraction(c.coeffs[0])
    return c


class Poly:
    """Sparse polynomial over a fixed tuple of variable names."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.names = tuple(names)
        self.terms: dict[Exp, object] = {}
        for e, c in (terms or {}).items():
            if c:
                self.terms[tuple(e)] = _coef(c)

    # constructors
    @classmethod
    def const(cls, names, c) -> "Poly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name: str) -> "Poly":
        names = tuple(names)
        e = [0] * len(names)
        e[names.index(name)] = 1
        return cls(names, {tuple(e): 1})

    @classmethod
    def monomial(cls, names, exps: Sequence[int], c=1) -> "Poly":
        return cls(names, {tuple(exps): c})

    def _new(self, terms) -> "Poly":
        p = Poly.__new__(Poly)
        p.names = self.names
        p.terms = {e: c for e, c in terms.items() if c}
        return p

    # basic queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self):
        return self.terms.get((0,) * len(self.names), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def deg_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=-1)

    def leading(self) -> tuple[Exp, object]:
        e = max(self.terms)
        return e, self.terms[e]

    def variables(self) -> set[int]:
        return {k for e in self.terms for k, x in enumerate(e) if x}

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _coef(other)
            return self._new({e: x * c for e, x in self.terms.items()})
        out: dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.names, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.names != self.names:
                raise ValueError("polynomials over different variable lists")
            return other
        return Poly.const(self.names, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(self.names, other)
        return self.names == other.names and (self - other).terms == {}

    def __hash__(self):
        return hash((self.names, len(self.terms)))

    def scale_to_monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self * (Fraction(1) / c if not isinstance(c, CycloNumber) else c.inverse())

    # univariate view in variable k
    def coeffs_in(self, k: int) -> dict[int, "Poly"]:
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            d = e[k]
            e2 = e[:k] + (0,) + e[k + 1:]
            out.setdefault(d, {})[e2] = c
        return {d: self._new(t) for d, t in out.items()}

    def shift(self, k: int, d: int) -> "Poly":
        return self._new({e[:k] + (e[k] + d,) + e[k + 1:]: c for e, c in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(self.names, e) if x)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def exact_div(a: Poly, b: Poly) -> Poly:
    """``a / b`` when ``b`` divides ``a``; raises ``ValueError`` otherwise."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q: dict[Exp, object] = {}
    r = a
    lb, cb = b.leading()
    while r:
        lr, cr = r.leading()
        d = tuple(x - y for x, y in zip(lr, lb))
        if any(x < 0 for x in d):
            raise ValueError("not an exact division")
        f = cr / cb
        q[d] = f
        r = r - Poly.monomial(a.names, d, f) * b
    return a._new(q)


def _prem(a: Poly, b: Poly, k: int) -> Poly:
    db = b.deg_in(k)
    lcb = b.coeffs_in(k)[db]
    r = a
    while r and r.deg_in(k) >= db:
        dr = r.deg_in(k)
        lcr = r.coeffs_in(k)[dr]
        r = r * lcb - (b * lcr).shift(k, dr - db)
    return r


def _content(a: Poly, k: int) -> Poly:
    g = None
    for c in a.coeffs_in(k).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_const():
            return Poly.const(a.names, 1)
    return g if g is not None else Poly.const(a.names, 1)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the coefficient field."""
    if not a:
        return b.scale_to_monic()
    if not b:
        return a.scale_to_monic()
    vs = a.variables() | b.variables()
    if not vs:
        return Poly.const(a.names, 1)
    k = max(vs)
    if a.deg_in(k) <= 0:
        return poly_gcd(a, _content(b, k))
    if b.deg_in(k) <= 0:
        return poly_gcd(_content(a, k), b)
    ca, cb = _content(a, k), _content(b, k)
    pa, pb = exact_div(a, ca), exact_div(b, cb)
    gc = poly_gcd(ca, cb)
    if pa.deg_in(k) < pb.deg_in(k):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, k)
        if not r:
            break
        if r.deg_in(k) <= 0:
            pb = Poly.const(a.names, 1)
            break
        r = exact_div(r, _content(r, k))
        pa, pb = pb, r
    if pb.deg_in(k) > 0:
        pb = exact_div(pb, _content(pb, k))
    return (gc * pb).scale_to_monic()


class RationalFn:
    """``num / den`` with ``gcd(num, den) = 1`` and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = True):
        den = den if den is not None else Poly.const(num.names, 1)
        if not den:
            raise DegenerateSubstitutionError("zero denominator")
        if reduce:
            g = poly_gcd(num, den)
            if not g.is_const():
                num, den = exact_div(num, g), exact_div(den, g)
            _, lc = den.leading()
            if lc != 1:
                inv = Fraction(1) / lc if not isinstance(lc, CycloNumber) else lc.inverse()
                num, den = num * inv, den * inv
        self.num, self.den = num, den

    @property
    def names(self) -> tuple[str, ...]:
        return self.num.names

    @classmethod
    def const(cls, names, c) -> "RationalFn":
        return cls(Poly.const(names, c), reduce=False)

    @classmethod
    def var(cls, names, name: str) -> "RationalFn":
        return cls(Poly.var(names, name), reduce=False)

    def _lift(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, Poly):
            return RationalFn(other, reduce=False)
        return RationalFn.const(self.names, other)

    def __add__(self, other) -> "RationalFn":
        o = self._lift(other)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RationalFn":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RationalFn":
        return self._lift(other) - self

    def __mul__(self, other) -> "RationalFn":
        o = self._lift(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if not self.num:
            raise DegenerateSubstitutionError("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other) -> "RationalFn":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "RationalFn":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFn":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash(self.names)

    def degree(self) -> int:
        return max(self.num.degree(), self.den.degree())

    def is_zero(self) -> bool:
        return not self.num

    def __str__(self) -> str:
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


Substitution = Mapping[str, RationalFn]


def _eval_poly(f: Poly, sub: Substitution, target_names) -> tuple[Poly, Poly]:
    """Image of ``f`` under ``sub`` as an unreduced pair (numerator, denominator)."""
    images = [sub[n] if n in sub else RationalFn.var(target_names, n) for n in f.names]
    # common denominator: product of the highest needed power of each image denominator
    maxpow = [max((e[k] for e in f.terms), default=0) for k in range(len(f.names))]
    common = Poly.const(target_names, 1)
    for k, d in enumerate(maxpow):
        if d:
            common = common * images[k].den ** d
    num = Poly(target_names)
    for e, c in f.terms.items():
        term = Poly.const(target_names, c)
        for k, x in enumerate(e):
            if maxpow[k]:
                term = term * images[k].num ** x * images[k].den ** (maxpow[k] - x)
        num = num + term
    return num, common


def apply(sub: Substitution, f: RationalFn, target_names: Sequence[str] | None = None) -> RationalFn:
    """``f`` with each variable replaced by its image (identity on unlisted variables)."""
    tn = tuple(target_names) if target_names is not None else \
        (next(iter(sub.values())).names if sub else f.names)
    n1, d1 = _eval_poly(f.num, sub, tn)
    n2, d2 = _eval_poly(f.den, sub, tn)
    den = d1 * n2
    if not den:
        raise DegenerateSubstitutionError("denominator vanishes after substitution")
    return RationalFn(n1 * d2, den)


def variables(names: Sequence[str]) -> list[RationalFn]:
    return [RationalFn.var(names, n) for n in names]


def monomial_substitution(auto: MonomialAutomorphism, names: Sequence[str]) -> dict[str, RationalFn]:
    """The field automorphism ``x_j -> zeta^{s_j} prod x_i^{A_ij}`` as a substitution."""
    names = tuple(names)
    out = {}
    for j, nm in enumerate(names):
        c = CycloNumber.root(auto.modulus, auto.s[j])
        pos = [0] * len(names)
        neg = [0] * len(names)
        for i in range(len(names)):
            e = auto.A[i][j]
            if e > 0:
                pos[i] = e
            elif e < 0:
                neg[i] = -e
        out[nm] = RationalFn(Poly.monomial(names, pos, c), Poly.monomial(names, neg, 1), reduce=False)
    return out


# --- the t-linearization ---

def t_names(p: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, p))


def build_t_substitution(p: int, names: Sequence[str] | None = None) -> list[RationalFn]:
    """``[t_0, t_1, ..., t_p]`` in the variables ``v_1..v_{p-1}``.

    ``t_0 = 1 + v_1 + v_1 v_2 + ... + v_1...v_{p-1}``, ``t_i = v_1...v_{i-1} / t_0``.
    """
    names = tuple(names or t_names(p))
    vs = variables(names)
    prefix = [RationalFn.const(names, 1)]
    for v in vs:
        prefix.append(prefix[-1] * v)
    t0 = prefix[0]
    for q in prefix[1:]:
        t0 = t0 + q
    return [t0] + [prefix[i - 1] / t0 for i in range(1, p + 1)]


def _check_degree(fs: Sequence[RationalFn], p: int) -> None:
    for f in fs:
        if f.degree() > p:
            raise DegreeBoundError(f"reduced fraction of degree {f.degree()} exceeds {p}: {f}")


@dataclass
class LinearizationResult:
    ok: bool
    sum_is_one: bool
    images_match: bool
    t0_image_ok: bool
    roundtrip_v: bool
    roundtrip_t: bool
    images: list[str]

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def verify_linearization(tau: Substitution | MonomialAutomorphism, t_tuple: Sequence[RationalFn],
                         p: int | None = None) -> LinearizationResult:
    """``tau(t_i) = t_{i+1}`` for ``i < p-1``, ``tau(t_{p-1}) = 1 - sum t_i``, plus inverse formulas.

    ``t_tuple`` is the output of :func:`build_t_substitution`.
    """
    t = list(t_tuple)
    p = p if p is not None else len(t) - 1
    names = t[0].names
    if isinstance(tau, MonomialAutomorphism):
        tau = monomial_substitution(tau, names)
    one = RationalFn.const(names, 1)
    total = t[1]
    for x in t[2:p + 1]:
        total = total + x
    sum_is_one = total == one
    tp = one
    for x in t[1:p]:
        tp = tp - x
    imgs = [apply(tau, t[i], names) for i in range(1, p)]
    _check_degree(imgs, p)
    want = [t[i + 1] for i in range(1, p - 1)] + [tp]
    images_match = all(a == b for a, b in zip(imgs, want))
    # t_0 -> t_0 / v_1
    t0_ok = apply(tau, t[0], names) == t[0] / RationalFn.var(names, names[0]) if names else True
    # v_i = t_{i+1} / t_i, both directions
    rt_v = all(t[i + 1] / t[i] == RationalFn.var(names, names[i - 1]) for i in range(1, p))
    tn = tuple(f"t{i}" for i in range(1, p))
    ts = variables(tn)
    tp_sym = RationalFn.const(tn, 1)
    for x in ts:
        tp_sym = tp_sym - x
    tsym = ts + [tp_sym]
    back = {names[i - 1]: tsym[i] / tsym[i - 1] for i in range(1, p)}
    rt_t = all(apply(back, t[i], tn) == ts[i - 1] for i in range(1, p))
    ok = sum_is_one and images_match and t0_ok and rt_v and rt_t
    return LinearizationResult(ok, sum_is_one, images_match, t0_ok, rt_v, rt_t, [str(f) for f in imgs])


def affine_shift_check(t_tuple: Sequence[RationalFn], p: int,
                       tau: Substitution | MonomialAutomorphism) -> bool:
    """With ``T_i = t_i - 1/p``: ``T_1 -> ... -> T_{p-1} -> -(T_1 + ... + T_{p-1})``."""
    t = list(t_tuple)
    names = t[0].names
    if isinstance(tau, MonomialAutomorphism):
        tau = monomial_substitution(tau, names)
    shift = Fraction(1, p)
    T = [t[i] - shift for i in range(1, p)]
    neg_sum = RationalFn.const(names, 0)
    for x in T:
        neg_sum = neg_sum - x
    want = T[1:] + [neg_sum]
    for Ti, Wi in zip(T, want):
        img = apply(tau, Ti, names)
        if img != Wi:
            return False
    return True


# --- Moebius substitutions ---

def mobius(u: RationalFn, flag: int = 1) -> RationalFn:
    """``(1-u)/(1+u)`` for ``flag = 1``; ``(1+u)/(1-u)`` for ``flag = -1``."""
    one = RationalFn.const(u.names, 1)
    return (one - u) / (one + u) if flag == 1 else (one + u) / (one - u)


def mobius_inverse(v: RationalFn, flag: int = 1) -> RationalFn:
    """``u`` in terms of ``v`` for the map of :func:`mobius`."""
    one = RationalFn.const(v.names, 1)
    return (one - v) / (one + v) if flag == 1 else (v - one) / (v + one)


@dataclass
class MobiusResult:
    ok: bool
    computed: dict[str, dict[str, str]]
    mismatches: list[str]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "computed": self.computed, "mismatches": self.mismatches}


def mobius_check(u_action: Mapping[str, Substitution], u_names: Sequence[str], flags: Mapping[str, int],
                 expected: Mapping[str, Mapping[str, RationalFn]], v_names: Mapping[str, str] | None = None,
                 p: int = 2) -> MobiusResult:
    """Transform ``v = mobius(u)`` for the flagged ``u``'s and compare with ``expected``.

    ``u_action[g][u]`` is ``g(u)`` as a rational function of the ``u_names``;
    ``expected[g][v]`` is the predicted ``g(v)`` in the variables ``v_names``
    (``v_names`` maps each flagged ``u`` to its new name).  Unflagged ``u``'s are
    kept as they are.
    """
    u_names = tuple(u_names)
    v_names = dict(v_names or {u: "v" + u[1:] for u in flags})
    new_names = tuple(v_names.get(u, u) for u in u_names)
    back = {}
    for u in u_names:
        x = RationalFn.var(new_names, v_names.get(u, u))
        back[u] = mobius_inverse(x, flags[u]) if u in flags else x
    computed: dict[str, dict[str, str]] = {}
    mismatches = []
    for g, images in sorted(u_action.items()):
        computed[g] = {}
        for u, flag in flags.items():
            gv = mobius(images[u], flag)
            img = apply(back, gv, new_names)
            _check_degree([img], p)
            vn = v_names[u]
            computed[g][vn] = str(img)
            want = expected.get(g, {}).get(vn)
            if want is not None and img != want:
                mismatches.append(f"{g}: {vn} -> {img}, expected {want}")
    return MobiusResult(not mismatches, computed, mismatches)
