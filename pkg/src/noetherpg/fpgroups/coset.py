"""Todd-Coxeter coset enumeration over the trivial subgroup (HLT or Felsch strategy)."""

from __future__ import annotations

from typing import Sequence


class CosetLimitError(RuntimeError):
    """Enumeration needed more cosets than allowed."""


class CosetTable:
    # columns: 2*i for generator i, 2*i+1 for its inverse
    def __init__(self, ngens: int, relators: Sequence[Sequence[int]], max_cosets: int):
        self.ncols = 2 * ngens
        self.inv = [c ^ 1 for c in range(self.ncols)]
        self.relators = [list(r) for r in relators if r]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.p = [0]
        self.deductions: list[tuple[int, int]] = []
        self.track_deductions = False

    # --- union-find on cosets ---
    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def is_live(self, k: int) -> bool:
        return self.p[k] == k

    def define(self, a: int, x: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitError(f"coset enumeration exceeded {self.max_cosets} cosets")
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(b)
        self.table[a][x] = b
        self.table[b][self.inv[x]] = a
        if self.track_deductions:
            self.deductions.append((a, x))
        return b

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        T, inv = self.table, self.inv
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = T[g][x]
                if d < 0:
                    continue
                T[d][inv[x]] = -1
                mu, nu = self.rep(g), self.rep(d)
                if T[mu][x] >= 0:
                    self._merge(nu, T[mu][x], queue)
                elif T[nu][inv[x]] >= 0:
                    self._merge(mu, T[nu][inv[x]], queue)
                else:
                    T[mu][x] = nu
                    T[nu][inv[x]] = mu
                    if self.track_deductions:
                        self.deductions.append((mu, x))

    def scan(self, a: int, w: Sequence[int], fill: bool) -> None:
        """Scan relator ``w`` at coset ``a``; define new cosets only when ``fill``."""
        T, inv = self.table, self.inv
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] >= 0:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][inv[w[j]]] >= 0:
                b = T[b][inv[w[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][w[i]] = b
                T[b][inv[w[i]]] = f
                if self.track_deductions:
                    self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def run_hlt(self) -> None:
        a = 0
        while a < len(self.table):
            for w in self.relators:
                if not self.is_live(a):
                    break
                self.scan(a, w, fill=True)
            if self.is_live(a):
                for x in range(self.ncols):
                    if self.table[a][x] < 0:
                        self.define(a, x)
            a += 1

    def run_felsch(self) -> None:
        self.track_deductions = True
        # cyclic conjugates of relators starting with each column
        by_col: dict[int, list[list[int]]] = {x: [] for x in range(self.ncols)}
        for w in self.relators:
            for rot in (w, [self.inv[x] for x in reversed(w)]):
                for k in range(len(rot)):
                    r = rot[k:] + rot[:k]
                    if r not in by_col[r[0]]:
                        by_col[r[0]].append(r)
        for w in self.relators:
            self.scan(0, w, fill=False)
        self._process_deductions(by_col)
        a = 0
        while a < len(self.table):
            if self.is_live(a):
                for x in range(self.ncols):
                    if self.is_live(a) and self.table[a][x] < 0:
                        self.define(a, x)
                        self._process_deductions(by_col)
            a += 1

    def _process_deductions(self, by_col) -> None:
        while self.deductions:
            a, x = self.deductions.pop()
            if not self.is_live(a):
                continue
            for w in by_col[x]:
                if not self.is_live(a):
                    break
                self.scan(a, w, fill=False)
            b = self.table[a][x]
            if b >= 0 and self.is_live(b):
                for w in by_col[self.inv[x]]:
                    if not self.is_live(b):
                        break
                    self.scan(b, w, fill=False)

    def compact(self) -> list[list[int]]:
        """Live cosets renumbered in breadth-first order from coset 0."""
        order = [0]
        label = {0: 0}
        k = 0
        while k < len(order):
            c = order[k]
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in label:
                    label[d] = len(order)
                    order.append(d)
            k += 1
        return [[label[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in order]


def enumerate_cosets(
    ngens: int,
    relators: Sequence[Sequence[int]],
    max_cosets: int = 40960,
    strategy: str = "hlt",
) -> list[list[int]]:
    """Complete coset table for the trivial subgroup; rows are cosets, columns generators
    and inverses.  Raises :class:`CosetLimitError` when ``max_cosets`` is exceeded."""
    ct = CosetTable(ngens, relators, max_cosets)
    if strategy == "hlt":
        ct.run_hlt()
    elif strategy == "felsch":
        ct.run_felsch()
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return ct.compact()
