"""Permutations as tuples, plus an incremental stabilizer chain.

The chain gives exact group orders via orbit sizes along a base, and a
membership test by sifting.  Degrees stay small (graph vertex counts), so
plain tuple composition is fine.
"""
from __future__ import annotations

Perm = tuple[int, ...]


def pmul(a: Perm, b: Perm) -> Perm:
    """Composition a∘b: first apply b, then a."""
    return tuple(a[x] for x in b)


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def orbit_partition(n: int, gens: list[Perm]) -> tuple[tuple[int, ...], ...]:
    """Orbits of <gens> on 0..n-1, each sorted, ordered by minimum."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(n):
            ri, rj = find(i), find(g[i])
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(sorted(v)) for _, v in sorted(groups.items()))


class StabilizerChain:
    """Incremental Schreier-Sims over a growing generator list.

    The chain is kept at a fixpoint where, for every level, the orbit of
    base[level] is closed under every strong generator fixing base[:level]
    pointwise and every Schreier generator sifts to the identity; the group
    order is then exactly the product of the transversal sizes.  Sift
    watermarks make the total work proportional to one batch run even when
    generators arrive one at a time.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = identity_perm(degree)
        self.base: list[int] = []
        self.strong: list[Perm] = []
        self.transversal: list[dict[int, Perm]] = []  # point -> rep u with u(base[i]) = point
        self._done: list[dict[int, int]] = []  # point -> strong-gen watermark already sifted

    def order(self) -> int:
        out = 1
        for t in self.transversal:
            out *= len(t)
        return out

    def _strip(self, p: Perm) -> tuple[Perm, int]:
        for i, b in enumerate(self.base):
            x = p[b]
            if x not in self.transversal[i]:
                return p, i
            p = pmul(pinv(self.transversal[i][x]), p)
        return p, len(self.base)

    def contains(self, p: Perm) -> bool:
        res, _ = self._strip(p)
        return res == self.identity

    def add(self, p: Perm) -> bool:
        """Add a generator; returns True if the group grew."""
        res, _ = self._strip(p)
        if res == self.identity:
            return False
        self._register(res)
        self._stabilize()
        return True

    def _register(self, res: Perm) -> None:
        if all(res[b] == b for b in self.base):
            moved = next(i for i in range(self.degree) if res[i] != i)
            self.base.append(moved)
            self.transversal.append({moved: self.identity})
            self._done.append({})
        self.strong.append(res)

    def _fixes_prefix(self, g: Perm, level: int) -> bool:
        return all(g[self.base[i]] == self.base[i] for i in range(level))

    def _stabilize(self) -> None:
        while True:
            changed = False
            for level in range(len(self.base) - 1, -1, -1):
                if self._close_once(level):
                    changed = True
                    break
            if not changed:
                return

    def _close_once(self, level: int) -> bool:
        trans = self.transversal[level]
        done = self._done[level]
        gens = [
            (i, g) for i, g in enumerate(self.strong) if self._fixes_prefix(g, level)
        ]
        changed = False
        frontier = list(trans)
        while frontier:
            nxt = []
            for x in frontier:
                ux = trans[x]
                for _, g in gens:
                    y = g[x]
                    if y not in trans:
                        trans[y] = pmul(g, ux)
                        nxt.append(y)
                        changed = True
            frontier = nxt
        watermark = len(self.strong)
        for x in sorted(trans):
            seen = done.get(x, 0)
            if seen >= watermark:
                continue
            ux = trans[x]
            for i, g in gens:
                if i < seen:
                    continue
                sg = pmul(pinv(trans[g[x]]), pmul(g, ux))
                if sg == self.identity:
                    continue
                res, _ = self._strip(sg)
                if res != self.identity:
                    # Register one residue and restart the deepest-first
                    # sweep: the stuck level's orbit absorbs it before this
                    # pair is re-examined, so each registration makes strict
                    # progress and the strong list stays lean.
                    self._register(res)
                    return True
            done[x] = watermark
        return changed


def enumerate_group_elements(gens: list[Perm], degree: int, cap: int) -> list[Perm] | None:
    """All elements of <gens>, or None once more than cap are seen."""
    ident = identity_perm(degree)
    seen = {bytes(ident)}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = pmul(g, p)
                key = bytes(q)
                if key not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(key)
                    out.append(q)
                    nxt.append(q)
        frontier = nxt
    return out
