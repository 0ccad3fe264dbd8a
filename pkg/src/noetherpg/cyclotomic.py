"""Exact arithmetic in mu_m, Q(zeta_m) and the cyclotomic integers Z[omega].

``CycloNumber`` elements are stored as coefficient tuples reduced modulo the
m-th cyclotomic polynomial, so equality and hashing are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from . import intmat

Rational = Union[int, Fraction]


def _norm(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# --- integer / rational polynomials (coefficient lists, low degree first) ---

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("modulus must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q, r = _poly_divmod(num, cyclotomic_poly(d))
            assert not r
            num = q
    return tuple(int(x) for x in num)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(coeffs: list, m: int) -> tuple:
    """Reduce a coefficient list modulo the monic polynomial Phi_m."""
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        top = c[k]
        if top:
            base = k - d
            for i in range(d):
                if phi[i]:
                    c[base + i] -= top * phi[i]
            c[k] = 0
    c = c[:d] + [0] * max(0, d - len(c))
    return tuple(_norm(x) for x in c)


# --- roots of unity ---

@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The element zeta_m^e of mu_m."""

    modulus: int
    exponent: int = 0

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    def lift(self, modulus: int) -> "RootOfUnity":
        if modulus % self.modulus:
            raise ValueError(f"cannot lift mu_{self.modulus} into mu_{modulus}")
        return RootOfUnity(modulus, self.exponent * (modulus // self.modulus))

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        L = lcm(self.modulus, other.modulus)
        return RootOfUnity(L, self.lift(L).exponent + other.lift(L).exponent).simplify()

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.modulus, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.modulus, -self.exponent)

    def order(self) -> int:
        return self.modulus // gcd(self.modulus, self.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    def simplify(self) -> "RootOfUnity":
        """Same root written over the smallest modulus (its order)."""
        o = self.order()
        return RootOfUnity(o, self.exponent // (self.modulus // o))

    def to_cyclo(self, modulus: int | None = None) -> "CycloNumber":
        r = self if modulus is None else self.lift(modulus)
        return CycloNumber.root(r.modulus, r.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return "1"
        return f"zeta_{self.modulus}^{self.exponent}"


def root_mul(a: RootOfUnity, b: RootOfUnity) -> RootOfUnity:
    """Product in mu_lcm; the result keeps the lcm modulus (no simplification)."""
    L = lcm(a.modulus, b.modulus)
    return RootOfUnity(L, a.lift(L).exponent + b.lift(L).exponent)


# --- elements of Q(zeta_m) ---

class CycloNumber:
    """Element of Q(zeta_m) as a reduced coefficient vector of length phi(m)."""

    __slots__ = ("modulus", "coeffs", "_hash")

    def __init__(self, modulus: int, coeffs: Iterable[Rational] = ()):
        self.modulus = modulus
        self.coeffs = _reduce(list(coeffs), modulus)
        self._hash = None

    @classmethod
    def _raw(cls, modulus: int, coeffs: tuple) -> "CycloNumber":
        obj = cls.__new__(cls)
        obj.modulus = modulus
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, m: int) -> "CycloNumber":
        return cls._raw(m, (0,) * euler_phi(m))

    @classmethod
    def one(cls, m: int) -> "CycloNumber":
        return cls.scalar(m, 1)

    @classmethod
    def scalar(cls, m: int, x: Rational) -> "CycloNumber":
        c = [0] * euler_phi(m)
        c[0] = _norm(Fraction(x)) if isinstance(x, Fraction) else x
        return cls._raw(m, tuple(c))

    @classmethod
    def root(cls, m: int, e: int) -> "CycloNumber":
        return _root_table(m)[e % m]

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.modulus == self.modulus:
                return other
            raise ValueError(
                f"mixed cyclotomic moduli {self.modulus} and {other.modulus}; lift first"
            )
        if isinstance(other, RootOfUnity):
            return other.to_cyclo(self.modulus)
        if isinstance(other, (int, Fraction)):
            return CycloNumber.scalar(self.modulus, other)
        return NotImplemented

    def lift(self, modulus: int) -> "CycloNumber":
        if modulus % self.modulus:
            raise ValueError("target modulus must be a multiple")
        step = modulus // self.modulus
        c = [0] * ((len(self.coeffs) - 1) * step + 1)
        for i, x in enumerate(self.coeffs):
            c[i * step] = x
        return CycloNumber(modulus, c)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNumber._raw(
            self.modulus, tuple(_norm(a + b) for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._raw(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNumber._raw(
            self.modulus, tuple(_norm(a - b) for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber._raw(self.modulus, tuple(_norm(a * other) for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNumber._raw(self.modulus, _reduce(_poly_mul(self.coeffs, o.coeffs), self.modulus))

    __rmul__ = __mul__

    def times_root(self, e: int) -> "CycloNumber":
        """Multiply by zeta_m^e."""
        e %= self.modulus
        if e == 0:
            return self
        return CycloNumber._raw(self.modulus, _reduce([0] * e + list(self.coeffs), self.modulus))

    def inverse(self) -> "CycloNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_m)")
        # extended Euclid in Q[x] against Phi_m
        r0, r1 = list(cyclotomic_poly(self.modulus)), list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        _trim(r1)
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_m is irreducible
        c = Fraction(r1[0])
        return CycloNumber(self.modulus, [x / c for x in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNumber.one(self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return self.modulus == other.modulus and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, self.coeffs))
        return self._hash

    def root_exponent(self) -> Optional[int]:
        """e with self == zeta_m^e, or None if self is not in mu_m."""
        return _root_lookup(self.modulus).get(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"CycloNumber({self.modulus}, {list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            z = "z" if i == 1 else f"z^{i}"
            if c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def _root_table(m: int) -> tuple:
    out = []
    for e in range(m):
        c = [0] * e + [1]
        out.append(CycloNumber._raw(m, _reduce(c, m)))
    return tuple(out)


@lru_cache(maxsize=None)
def _root_lookup(m: int) -> dict:
    return {z.coeffs: e for e, z in enumerate(_root_table(m))}


# --- the cyclotomic integers Z[omega] = Z[T]/Phi_p(T) ---

@dataclass(frozen=True)
class ZOmegaElem:
    """Element of Z[T]/Phi_p(T) in the power basis 1, T, ..., T^{p-2}."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            object.__setattr__(self, "coeffs", phi_p_reduce(list(self.coeffs), self.p).coeffs)

    @classmethod
    def zero(cls, p: int) -> "ZOmegaElem":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def one(cls, p: int) -> "ZOmegaElem":
        return phi_p_reduce([1], p)

    @classmethod
    def omega(cls, p: int, k: int = 1) -> "ZOmegaElem":
        return phi_p_reduce([0] * (k % p) + [1], p)

    def __add__(self, other: "ZOmegaElem") -> "ZOmegaElem":
        return ZOmegaElem(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ZOmegaElem") -> "ZOmegaElem":
        return ZOmegaElem(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ZOmegaElem":
        return ZOmegaElem(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "ZOmegaElem":
        if isinstance(other, int):
            return ZOmegaElem(self.p, tuple(a * other for a in self.coeffs))
        return phi_p_reduce(_poly_mul(self.coeffs, other.coeffs), self.p)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def mult_matrix(self) -> intmat.Matrix:
        """Integer matrix of multiplication by self; column j is self * T^j."""
        cols = [(self * ZOmegaElem.omega(self.p, j)).coeffs for j in range(self.p - 1)]
        return intmat.from_columns(cols, self.p - 1)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*w^{i}")
        return " + ".join(terms) if terms else "0"


def phi_p_reduce(poly_in_T: Sequence[int], p: int) -> ZOmegaElem:
    """Canonical representative of an integer polynomial modulo Phi_p(T)."""
    c = list(poly_in_T)
    # T^p = 1 modulo Phi_p, then eliminate T^{p-1} = -(1 + ... + T^{p-2})
    folded = [0] * p
    for i, x in enumerate(c):
        folded[i % p] += x
    top = folded[p - 1]
    red = tuple(folded[i] - top for i in range(p - 1))
    obj = ZOmegaElem.__new__(ZOmegaElem)
    object.__setattr__(obj, "p", p)
    object.__setattr__(obj, "coeffs", red)
    return obj


def zomega_solve(
    A: Sequence[Sequence[ZOmegaElem]], b: Sequence[ZOmegaElem]
) -> Optional[list[ZOmegaElem]]:
    """Solve ``A x = b`` over Z[omega]; ``None`` when no solution exists.

    Z[omega] is a free Z-module of rank p-1, so the system is expanded into an
    integer block system and solved through the Smith normal form.  The answer
    is re-substituted before returning.
    """
    if not A:
        return []
    p = A[0][0].p
    d = p - 1
    r, c = len(A), len(A[0])
    big = intmat.zeros(r * d, c * d)
    for i, row in enumerate(A):
        if len(row) != c:
            raise ValueError("ragged Z[omega] matrix")
        for j, a in enumerate(row):
            M = a.mult_matrix()
            for ii in range(d):
                for jj in range(d):
                    big[i * d + ii][j * d + jj] = M[ii][jj]
    rhs = [x for e in b for x in e.coeffs]
    sol = intmat.solve(big, rhs)
    if sol is None:
        return None
    x = [ZOmegaElem(p, tuple(sol[j * d:(j + 1) * d])) for j in range(c)]
    for i, row in enumerate(A):
        acc = ZOmegaElem.zero(p)
        for a, xj in zip(row, x):
            acc = acc + a * xj
        assert acc == b[i], "substitution check failed"
    return x
