"""Cayley-graph recognition and Zelinka-style stability of graphs.

A graph on n vertices is a Cayley graph iff its automorphism group contains
a regular subgroup (order n, transitive, only the identity has fixed
points).  The detector enumerates the automorphism group when it is small
enough, then searches for a regular subgroup among the fixed-point-free
elements by closure-bounded backtracking.  Positive answers carry a group
table plus an explicit isomorphism witness; negative answers carry either
an orbit-split witness or the exhausted-search marker; anything cut short
by a budget is reported as unknown rather than guessed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .canon import automorphism_group
from .caps import Caps, caps_from_env
from .errors import BudgetExceeded
from .graphs import Graph, IsomorphismWitness, bipartite_double_cover, check_witness
from .groups import FiniteGroup, Opaque, bits, group_from_table
from .perms import Perm, enumerate_group_elements


def is_vertex_transitive(g: Graph, budget: int | None = None) -> bool:
    return len(automorphism_group(g, budget).orbits) <= 1


@dataclass(frozen=True)
class CayleyVerdict:
    status: str                       # "cayley" | "not_cayley" | "unknown"
    reason: str
    group: FiniteGroup | None = None
    connection_ids: tuple[int, ...] | None = None
    witness: IsomorphismWitness | None = None
    orbit_witness: tuple[int, int] | None = None
    aut_order: int | None = None


def _closure_in(allowed: dict[bytes, Perm], seed: Sequence[Perm], limit: int) -> list[Perm] | None:
    """Closure of seed under composition, or None once it leaves `allowed`
    or exceeds `limit` elements."""
    have: dict[bytes, Perm] = {}
    frontier: list[Perm] = []
    for p in seed:
        k = bytes(p)
        if k not in have:
            have[k] = p
            frontier.append(p)
    while frontier:
        p = frontier.pop()
        for q in list(have.values()):
            for r in (tuple(p[x] for x in q), tuple(q[x] for x in p)):
                k = bytes(r)
                if k in have:
                    continue
                if k not in allowed:
                    return None
                if len(have) + 1 > limit:
                    return None
                have[k] = r
                frontier.append(r)
    return list(have.values())


def _find_regular_subgroup(
    elements: list[Perm], n: int, budget: int
) -> list[Perm] | None:
    """Search for an order-n subgroup all of whose non-identity elements are
    fixed-point-free.  Raises BudgetExceeded when the node budget runs out."""
    ident = tuple(range(n))
    fpf = [p for p in elements if all(p[v] != v for v in range(n))]
    allowed = {bytes(p): p for p in fpf}
    allowed[bytes(ident)] = ident
    if len(fpf) + 1 < n:
        return None
    nodes = [0]

    def search(current: list[Perm], current_keys: set[bytes], start: int) -> list[Perm] | None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"regular-subgroup search budget {budget} exhausted")
        if len(current) == n:
            return current
        for i in range(start, len(fpf)):
            p = fpf[i]
            if bytes(p) in current_keys:
                continue
            closed = _closure_in(allowed, current + [p], n)
            if closed is None or n % len(closed) != 0:
                continue
            res = search(closed, {bytes(q) for q in closed}, i + 1)
            if res is not None:
                return res
        return None

    return search([ident], {bytes(ident)}, 0)


def _regular_to_cayley(g: Graph, regular: list[Perm]) -> tuple[FiniteGroup, tuple[int, ...], IsomorphismWitness]:
    """Read a group table off a regular action (base point 0) and package the
    resulting Cayley isomorphism, which is the identity on vertices."""
    n = g.n
    by_image: dict[int, Perm] = {p[0]: p for p in regular}
    if len(by_image) != n:
        raise AssertionError("claimed regular subgroup is not transitive from 0")
    mul = [[by_image[v][w] for w in range(n)] for v in range(n)]
    group = group_from_table(mul, [str(v) for v in range(n)], Opaque(f"Reg{n}", n))
    connection = tuple(bits(g.rows[0]))
    # Cay(group, connection) has x ~ y iff mul(inv x, y) in S; regularity makes
    # that coincide with adjacency of g vertex-for-vertex.
    from .graphs import from_edges

    edges = []
    sset = set(connection)
    for x in range(n):
        for y in range(x + 1, n):
            if mul[group.inv[x]][y] in sset:
                edges.append((x, y))
    cay = from_edges(n, edges)
    witness = IsomorphismWitness(cay, g, tuple(range(n)))
    if not check_witness(witness):
        raise AssertionError("regular subgroup did not reproduce the adjacency")
    return group, connection, witness


def detect_cayley(g: Graph, caps: Caps | None = None) -> CayleyVerdict:
    caps = caps or caps_from_env()
    n = g.n
    if n == 0:
        return CayleyVerdict(status="unknown", reason="empty vertex set")
    ident = tuple(range(n))
    if g.edge_count() == 0 or g.edge_count() == n * (n - 1) // 2:
        kind = "edgeless" if g.edge_count() == 0 else "complete"
        mul = [[(a + b) % n for b in range(n)] for a in range(n)]
        group = group_from_table(mul, [str(v) for v in range(n)], Opaque(f"Z{n}", n))
        connection = tuple(bits(g.rows[0]))
        witness = IsomorphismWitness(g, g, ident)
        return CayleyVerdict(
            status="cayley",
            reason=f"{kind} graph is a circulant",
            group=group,
            connection_ids=connection,
            witness=witness,
        )
    try:
        desc = automorphism_group(g, caps.aut_node_budget)
    except BudgetExceeded as exc:
        return CayleyVerdict(status="unknown", reason=str(exc))
    if len(desc.orbits) > 1:
        return CayleyVerdict(
            status="not_cayley",
            reason="automorphism group is not transitive",
            orbit_witness=(desc.orbits[0][0], desc.orbits[1][0]),
            aut_order=desc.order,
        )
    if desc.order > caps.aut_enum_cap:
        return CayleyVerdict(
            status="unknown",
            reason=f"automorphism group order {desc.order} exceeds enumeration cap {caps.aut_enum_cap}",
            aut_order=desc.order,
        )
    elements = enumerate_group_elements(list(desc.generators), n, caps.aut_enum_cap)
    if elements is None:
        return CayleyVerdict(
            status="unknown",
            reason=f"automorphism enumeration exceeded cap {caps.aut_enum_cap}",
            aut_order=desc.order,
        )
    try:
        regular = _find_regular_subgroup(elements, n, caps.regular_search_budget)
    except BudgetExceeded as exc:
        return CayleyVerdict(status="unknown", reason=str(exc), aut_order=desc.order)
    if regular is None:
        return CayleyVerdict(
            status="not_cayley",
            reason="no regular subgroup in the full automorphism group",
            aut_order=desc.order,
        )
    group, connection, witness = _regular_to_cayley(g, regular)
    return CayleyVerdict(
        status="cayley",
        reason="regular subgroup of automorphisms found",
        group=group,
        connection_ids=connection,
        witness=witness,
        aut_order=desc.order,
    )


@dataclass(frozen=True)
class StabilityResult:
    status: str          # "stable" | "unstable" | "not_applicable"
    reason: str
    aut_order: int | None = None
    cover_aut_order: int | None = None


def stability_check(g: Graph, budget: int | None = None) -> StabilityResult:
    """Compare |Aut(X x K2)| against 2|Aut(X)|.

    The comparison only characterizes stability for connected non-bipartite
    graphs, so anything else is reported as not_applicable.
    """
    if not g.is_connected():
        return StabilityResult(status="not_applicable", reason="graph is disconnected")
    if g.is_bipartite():
        return StabilityResult(status="not_applicable", reason="graph is bipartite")
    a = automorphism_group(g, budget).order
    cover = bipartite_double_cover(g)
    b = automorphism_group(cover, budget).order
    if b < 2 * a:
        raise AssertionError("double cover lost automorphisms")
    status = "stable" if b == 2 * a else "unstable"
    return StabilityResult(
        status=status,
        reason=f"|Aut(cover)| = {b} vs 2|Aut| = {2 * a}",
        aut_order=a,
        cover_aut_order=b,
    )
