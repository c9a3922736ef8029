"""Building generalized Cayley graphs from (group, automorphism, set) specs.

A spec (G, S, alpha) is valid when alpha squares to the identity, no x has
alpha(x^{-1})x in S (no loops), and alpha(S^{-1}) = S (undirected edges).
Vertices are the group elements; x ~ y iff alpha(x^{-1})y lies in S.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .automorphisms import AutomorphismMap, omega_set
from .caps import Caps, caps_from_env
from .errors import CapExceeded, SpecError
from .graphs import Graph
from .groups import ElementSet, FiniteGroup, SubgroupHandle, bits, mask_of, subgroup_handle


@dataclass(frozen=True)
class ValidationReport:
    cond_i: bool    # alpha is an involutory automorphism
    cond_ii: bool   # alpha(x^{-1})x never lands in S
    cond_iii: bool  # alpha(S^{-1}) = S
    witness_ii: int | None  # x with alpha(x^{-1})x in S, when cond_ii fails
    witness_iii: int | None  # s in S with alpha(s^{-1}) outside S, when cond_iii fails

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


@dataclass(frozen=True)
class GCSpec:
    group: FiniteGroup
    alpha: AutomorphismMap
    connection: ElementSet
    validation: ValidationReport

    def set_ids(self) -> tuple[int, ...]:
        return self.connection.members()


def validate_connection_set(g: FiniteGroup, alpha: AutomorphismMap, s_mask: int) -> ValidationReport:
    """Check the three defining conditions; witnesses are the first failures."""
    cond_i = alpha.group is g and alpha.order2
    cond_ii, witness_ii = True, None
    for x in range(g.order):
        if s_mask >> g.mul[alpha.perm[g.inv[x]]][x] & 1:
            cond_ii, witness_ii = False, x
            break
    cond_iii, witness_iii = True, None
    for s in bits(s_mask):
        if not s_mask >> alpha.perm[g.inv[s]] & 1:
            cond_iii, witness_iii = False, s
            break
    return ValidationReport(cond_i, cond_ii, cond_iii, witness_ii, witness_iii)


def make_spec(g: FiniteGroup, alpha: AutomorphismMap, s_ids) -> GCSpec:
    """Validate and wrap; raises SpecError when a condition fails."""
    mask = s_ids if isinstance(s_ids, int) else mask_of(s_ids)
    if mask >> g.order:
        raise SpecError("set contains ids outside the group")
    report = validate_connection_set(g, alpha, mask)
    if not report.ok:
        raise SpecError(f"invalid connection set: {report}")
    return GCSpec(g, alpha, ElementSet(g, mask), report)


def build_gc_graph(spec: GCSpec) -> Graph:
    """Adjacency x ~ alpha(x)s for s in S; loop-free and symmetric by validity."""
    g, perm = spec.group, spec.alpha.perm
    s_ids = spec.set_ids()
    rows = [0] * g.order
    for x in range(g.order):
        ax = perm[x]
        r = 0
        for s in s_ids:
            r |= 1 << g.mul[ax][s]
        rows[x] = r
    return Graph(g.order, tuple(rows))


def connection_orbits(g: FiniteGroup, alpha: AutomorphismMap) -> list[tuple[int, ...]]:
    """Orbits of s -> alpha(s^{-1}) on the complement of the omega image.

    Valid connection sets are exactly the unions of these orbits, so the
    count of valid sets is 2^(number of orbits).
    """
    if not alpha.order2:
        raise SpecError("alpha must square to the identity")
    om = omega_set(g, alpha).set.mask
    orbits = []
    seen = 0
    for s in range(g.order):
        if om >> s & 1 or seen >> s & 1:
            continue
        t = alpha.perm[g.inv[s]]
        orbit = (s,) if t == s else (s, t)
        for x in orbit:
            seen |= 1 << x
        orbits.append(orbit)
    return orbits


def enumerate_connection_sets(
    g: FiniteGroup,
    alpha: AutomorphismMap,
    *,
    nonempty_only: bool = False,
    connected_only: bool = False,
    up_to_complement: bool = False,
    caps: Caps | None = None,
) -> Iterator[GCSpec]:
    """All valid specs for (g, alpha) in a deterministic order.

    Subsets are indexed by orbit-inclusion bitmasks counting up from 0, so
    output order is reproducible.  Raises CapExceeded when the orbit count
    passes the bit budget.
    """
    caps = caps or caps_from_env()
    orbits = connection_orbits(g, alpha)
    k = len(orbits)
    if k > caps.bit_budget:
        raise CapExceeded(f"{k} orbits exceed bit budget {caps.bit_budget}")
    full = (1 << k) - 1
    for index in range(1 << k):
        if nonempty_only and index == 0:
            continue
        if up_to_complement and index > full ^ index:
            continue
        mask = 0
        for i in range(k):
            if index >> i & 1:
                for s in orbits[i]:
                    mask |= 1 << s
        spec = make_spec(g, alpha, mask)
        if connected_only and not build_gc_graph(spec).is_connected():
            continue
        yield spec


@dataclass(frozen=True)
class KernelSubgroup:
    """K = {g : alpha(g)S = S}; vertices in one left coset of K share their
    whole neighborhood."""

    sub: SubgroupHandle

    def cosets(self) -> tuple[tuple[int, ...], ...]:
        return self.sub.cosets()

    def __len__(self) -> int:
        return len(self.sub)


def kernel_subgroup(spec: GCSpec) -> KernelSubgroup:
    g, perm, s_mask = spec.group, spec.alpha.perm, spec.connection.mask
    s_ids = list(bits(s_mask))
    members = []
    for x in range(g.order):
        ax = perm[x]
        if all(s_mask >> g.mul[ax][s] & 1 for s in s_ids):
            members.append(x)
    return KernelSubgroup(subgroup_handle(g, mask_of(members)))


def quotient_by_kernel(graph: Graph, kernel: KernelSubgroup) -> Graph:
    """Graph on the left cosets of K; cosets adjacent iff any cross pair is."""
    g = kernel.sub.group
    if graph.n != g.order:
        raise SpecError("graph order does not match the kernel's group")
    cosets = kernel.cosets()
    masks = [mask_of(c) for c in cosets]
    m = len(cosets)
    rows = [0] * m
    for i in range(m):
        rep_rows = 0
        for v in cosets[i]:
            rep_rows |= graph.rows[v]
        for j in range(m):
            if i != j and rep_rows & masks[j]:
                rows[i] |= 1 << j
    return Graph(m, tuple(rows))
