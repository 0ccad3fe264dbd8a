"""Lattices with an order-p automorphism viewed as Z[omega]-modules, and splitting of
the extension ``0 -> M1 -> M -> M2 -> 0`` when both ends are free of rank one.

Matrices act on column vectors; column ``j`` of ``L`` is the image of basis vector ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import intmat
from .cyclotomic import ZOmegaElem, zomega_solve
from .intmat import Matrix, Vector
from .monomial import NotStandardizableError, companion_phi, cyclic_standardize, phi_of_matrix


class ModuleStructureError(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


class SplitError(ValueError):
    pass


@dataclass
class CyclicModule:
    L: Matrix
    p: int

    def __post_init__(self):
        self.L = intmat.copy(self.L)
        if not intmat.matpow(self.L, self.p) == intmat.identity(self.rank):
            raise ModuleStructureError("the generator does not have order dividing p")

    @property
    def rank(self) -> int:
        return len(self.L)


def annihilation_check(M: CyclicModule) -> bool:
    """``Phi_p(L) == 0``."""
    return intmat.is_zero(phi_of_matrix(M.L, M.p))


@dataclass
class ModuleSES:
    module: CyclicModule
    sub: list[Vector]          # basis of M1 in ambient coordinates
    lifts: list[Vector]        # lifts of a basis of M2
    block: Matrix              # action in the basis sub + lifts: [[L1, X], [0, L2]]

    @property
    def r1(self) -> int:
        return len(self.sub)

    @property
    def basis(self) -> Matrix:
        return intmat.from_columns(self.sub + self.lifts, self.module.rank)

    @property
    def L1(self) -> Matrix:
        return [row[: self.r1] for row in self.block[: self.r1]]

    @property
    def X(self) -> Matrix:
        return [row[self.r1:] for row in self.block[: self.r1]]

    @property
    def L2(self) -> Matrix:
        return [row[self.r1:] for row in self.block[self.r1:]]

    def quotient(self) -> CyclicModule:
        return CyclicModule(self.L2, self.module.p)

    def submodule(self) -> CyclicModule:
        return CyclicModule(self.L1, self.module.p)


def build_ses(M: CyclicModule, sub_basis: Sequence[Sequence[int]]) -> ModuleSES:
    """The sequence ``0 -> span(sub_basis) -> M -> quotient -> 0``; checks stability and purity."""
    n = M.rank
    sub = [list(map(int, v)) for v in sub_basis]
    for v in sub:
        img = intmat.matvec(M.L, v)
        if intmat.coordinates(sub, img) is None:
            raise ModuleStructureError("submodule is not stable under the generator", v)
    if not sub:
        lifts = intmat.identity(n)
    else:
        if intmat.rank(sub) != len(sub):
            raise ModuleStructureError("submodule generators are dependent")
        U, D, V = intmat.smith_normal_form(intmat.from_columns(sub, n))
        diag = [D[i][i] for i in range(len(sub))]
        if any(d != 1 for d in diag):
            raise ModuleStructureError("submodule is not pure (quotient has torsion)", diag)
        Ui = intmat.inverse_unimodular(U)
        lifts = [[Ui[i][j] for i in range(n)] for j in range(len(sub), n)]
    P = intmat.from_columns(sub + lifts, n)
    assert abs(intmat.det(P)) == 1
    block = intmat.matmul(intmat.inverse_unimodular(P), intmat.matmul(M.L, P))
    r = len(sub)
    if any(block[i][j] for i in range(r, n) for j in range(r)):
        raise ModuleStructureError("block form is not upper triangular")
    return ModuleSES(M, sub, lifts, block)


def isomorphic_to_standard(N: CyclicModule, radii: Sequence[int] = (2, 4)) -> Optional[Matrix]:
    """Unimodular ``P`` with ``P^-1 L P`` the companion matrix of ``Phi_p``, or ``None``.

    Candidate generators are searched in boxes of growing radius.
    """
    for radius in radii:
        try:
            return cyclic_standardize(N.L, N.p, radius=radius)
        except NotStandardizableError:
            continue
    return None


def _zomega(v: Sequence[int], p: int) -> ZOmegaElem:
    return ZOmegaElem(p, tuple(v))


@dataclass
class SplitResult:
    p: int
    P1: Matrix                  # M1 standardization (in the sub coordinates)
    P2: Matrix                  # M2 standardization (in the quotient coordinates)
    Z: list[Vector]             # standardized M1 basis, ambient coordinates
    W: list[Vector]             # complement basis, ambient coordinates
    delta: list[list[int]]      # section correction, Z[omega] coefficients
    combined_det: int
    block_action: Matrix
    oracle_solution: Optional[Matrix] = None
    oracle_ok: bool = False
    candidates_searched: int = 0

    def as_dict(self) -> dict:
        return {
            "P1": self.P1, "P2": self.P2, "Z": self.Z, "W": self.W, "delta": self.delta,
            "combined_det": self.combined_det, "block_action": self.block_action,
            "oracle_solution": self.oracle_solution, "oracle_ok": self.oracle_ok,
        }


def section_system(p: int, r: Sequence[ZOmegaElem]) -> tuple[list[list[ZOmegaElem]], list[ZOmegaElem]]:
    """Equations ``d_{i+1} - w d_i = r_i`` (i < p-2) and ``-sum d_j - w d_{p-2} = r_{p-2}``."""
    k = p - 1
    zero, one, w = ZOmegaElem.zero(p), ZOmegaElem.one(p), ZOmegaElem.omega(p)
    A = []
    for i in range(k - 1):
        row = [zero] * k
        row[i] = -w
        row[i + 1] = one
        A.append(row)
    last = [-one] * k
    last[k - 1] = -one - w
    A.append(last)
    return A, list(r)


def _stable_and_unimodular(L: Matrix, Z: list[Vector], W: list[Vector], p: int) -> tuple[bool, int, Matrix]:
    n = len(L)
    Q = intmat.from_columns(Z + W, n)
    d = intmat.det(Q)
    if abs(d) != 1:
        return False, d, []
    B = intmat.matmul(intmat.inverse_unimodular(Q), intmat.matmul(L, Q))
    C = companion_phi(p)
    r = p - 1
    want = [[0] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            want[i][j] = C[i][j]
            want[r + i][r + j] = C[i][j]
    return B == want, d, B


def split_ses(ses: ModuleSES, search_radius: int = 1) -> SplitResult:
    """An L-stable complement to M1 with both summands in companion form.

    The section is found by solving the Z[omega]-linear lifting system; the
    complement with the smallest max-norm exponent vectors among ``delta_0``
    shifts within ``search_radius`` is kept, ties broken by the 1-norm and
    then lexicographically.
    An independent integer Sylvester solve is recorded as an oracle.
    """
    M = ses.module
    p = M.p
    r = p - 1
    if ses.r1 != r or M.rank != 2 * r:
        raise SplitError("expected ranks p-1 and 2(p-1)")
    if not annihilation_check(M):
        raise SplitError("module is not annihilated by Phi_p")
    P1 = isomorphic_to_standard(ses.submodule())
    P2 = isomorphic_to_standard(ses.quotient())
    if P1 is None or P2 is None:
        raise SplitError("M1 or M2 is not free of rank one over Z[omega]")
    n = M.rank
    Zb = [intmat.matvec(intmat.from_columns(ses.sub, n), col) for col in intmat.columns(P1)]
    Wb = [intmat.matvec(intmat.from_columns(ses.lifts, n), col) for col in intmat.columns(P2)]
    Q = intmat.from_columns(Zb + Wb, n)
    B = intmat.matmul(intmat.inverse_unimodular(Q), intmat.matmul(M.L, Q))
    X = [row[r:] for row in B[:r]]
    rs = [_zomega([X[i][j] for i in range(r)], p) for j in range(r)]
    A, b = section_system(p, rs)
    delta = zomega_solve(A, b)
    if delta is None:
        raise SplitError("the lifting system has no solution over Z[omega]")

    def complement(ds: Sequence[ZOmegaElem]) -> list[Vector]:
        out = []
        for j in range(r):
            v = list(Wb[j])
            for k, c in enumerate(ds[j].coeffs):
                v = [a + c * z for a, z in zip(v, Zb[k])]
            out.append(v)
        return out

    best = None
    count = 0
    w = ZOmegaElem.omega(p)
    for shift in itertools.product(range(-search_radius, search_radius + 1), repeat=r):
        h = _zomega(shift, p)
        ds, hp = [], h
        for j in range(r):
            ds.append(delta[j] + hp)
            hp = hp * w
        # re-check the section equations for the shifted solution
        for i, row in enumerate(A):
            acc = ZOmegaElem.zero(p)
            for a, x in zip(row, ds):
                acc = acc + a * x
            assert acc == b[i]
        W = complement(ds)
        count += 1
        key = (max(abs(x) for v in W for x in v), sum(abs(x) for v in W for x in v), W)
        if best is None or key < best[0]:
            best = (key, ds, W)
    _, ds, W = best
    ok, d, block = _stable_and_unimodular(M.L, Zb, W, p)
    if not ok:
        raise SplitError("complement failed the stability/unimodularity check")
    res = SplitResult(p, P1, P2, Zb, W, [list(x.coeffs) for x in ds], d, block,
                      candidates_searched=count)
    # oracle: C Y - Y C = -X over the integers, complement columns W_j + sum_i Y_ij Z_i
    Y = sylvester_section(X, p)
    res.oracle_solution = Y
    if Y is not None:
        W2 = []
        for j in range(r):
            v = list(Wb[j])
            for i in range(r):
                v = [a + Y[i][j] * z for a, z in zip(v, Zb[i])]
            W2.append(v)
        res.oracle_ok = _stable_and_unimodular(M.L, Zb, W2, p)[0]
    return res


def sylvester_section(X: Matrix, p: int) -> Optional[Matrix]:
    """Integer ``Y`` with ``C Y - Y C = -X`` (C the Phi_p companion), or ``None``."""
    r = p - 1
    C = companion_phi(p)
    rows, rhs = [], []
    for i in range(r):
        for j in range(r):
            row = [0] * (r * r)
            for k in range(r):
                row[k * r + j] += C[i][k]      # (C Y)_{ij}
                row[i * r + k] -= C[k][j]      # (Y C)_{ij}
            rows.append(row)
            rhs.append(-X[i][j])
    sol = intmat.solve(rows, rhs)
    if sol is None:
        return None
    return [sol[i * r:(i + 1) * r] for i in range(r)]


@dataclass
class MonomialBasisOut:
    names: list[str]
    vectors: list[Vector]
    exponent_matrix_det: int
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"names": self.names, "vectors": self.vectors, "det": self.exponent_matrix_det}


def monomial_basis_out(split: Optional[SplitResult], names: Sequence[str] = ("Z", "W")) -> MonomialBasisOut:
    """Exponent vectors (in the module's coordinates) of ``Z_i`` and ``W_i``."""
    if split is None or not split.Z:
        return MonomialBasisOut([], [], 1)
    r = len(split.Z)
    nm = [f"{names[0]}{i + 1}" for i in range(r)] + [f"{names[1]}{i + 1}" for i in range(r)]
    vecs = split.Z + split.W
    return MonomialBasisOut(nm, vecs, intmat.det(intmat.from_columns(vecs, len(vecs[0]))))
