"""Group automorphisms: enumeration, fixed points, and the omega map.

For an automorphism a of G its omega map is x -> a(x) x^{-1}.  The image
omega(G) and fixed-point set Fix(a) drive most structural results here:
|Fix| * |omega(G)| = |G| always, Fix is always a subgroup, and omega(G) is
a subgroup whenever G is abelian (not in general).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DescriptorError, ShapeError
from .groups import (
    Dihedral,
    ElementSet,
    FiniteGroup,
    SubgroupHandle,
    bits,
    make_group,
    mask_of,
    subgroup_closure,
    subgroup_handle,
)


@dataclass(frozen=True)
class AutomorphismMap:
    group: FiniteGroup
    perm: tuple[int, ...]
    order2: bool  # composed with itself gives the identity

    def __call__(self, x: int) -> int:
        return self.perm[x]


def automorphism_from_perm(g: FiniteGroup, perm) -> AutomorphismMap:
    """Validate a candidate map exhaustively and wrap it."""
    perm = tuple(perm)
    if len(perm) != g.order or sorted(perm) != list(range(g.order)):
        raise DescriptorError("not a bijection on element ids")
    if perm[0] != 0:
        raise DescriptorError("identity not fixed")
    for a in range(g.order):
        ra, pa = g.mul[a], perm[a]
        for b in range(g.order):
            if perm[ra[b]] != g.mul[pa][perm[b]]:
                raise DescriptorError("not multiplicative")
    order2 = all(perm[perm[x]] == x for x in range(g.order))
    return AutomorphismMap(g, perm, order2)


def identity_automorphism(g: FiniteGroup) -> AutomorphismMap:
    return AutomorphismMap(g, tuple(range(g.order)), True)


def inversion_map(g: FiniteGroup) -> AutomorphismMap:
    """x -> x^{-1}; an automorphism exactly when G is abelian."""
    if not g.abelian:
        raise ShapeError("inversion is only an automorphism of abelian groups")
    return automorphism_from_perm(g, g.inv)


def generating_ids(g: FiniteGroup) -> list[int]:
    """Greedy generating set: repeatedly adjoin the smallest uncovered id."""
    gens: list[int] = []
    span = 1
    for x in range(1, g.order):
        if not span >> x & 1:
            gens.append(x)
            span = subgroup_closure(g, gens)
    return gens


def enumerate_automorphisms(g: FiniteGroup, involutory_only: bool = False) -> list[AutomorphismMap]:
    """All automorphisms (optionally only those of order <= 2), sorted by perm.

    Backtracks over generator images with closure propagation; candidates are
    pruned by element order, injectivity, and (optionally) the order-2 law.
    """
    n = g.order
    if n == 1:
        return [identity_automorphism(g)]
    gens = generating_ids(g)
    by_order: dict[int, list[int]] = {}
    for x in range(n):
        by_order.setdefault(g.element_orders[x], []).append(x)

    found: list[tuple[int, ...]] = []

    def close(phi: list[int], used: set[int], fresh: list[int]) -> bool:
        assigned = [x for x in range(n) if phi[x] >= 0]
        queue = list(fresh)
        while queue:
            a = queue.pop()
            i = 0
            while i < len(assigned):
                b = assigned[i]
                i += 1
                for x, y in (
                    (g.mul[a][b], g.mul[phi[a]][phi[b]]),
                    (g.mul[b][a], g.mul[phi[b]][phi[a]]),
                ):
                    if phi[x] < 0:
                        if y in used or g.element_orders[x] != g.element_orders[y]:
                            return False
                        phi[x] = y
                        used.add(y)
                        assigned.append(x)
                        queue.append(x)
                    elif phi[x] != y:
                        return False
        if involutory_only:
            for x in range(n):
                y = phi[x]
                if y >= 0 and phi[y] >= 0 and phi[y] != x:
                    return False
        return True

    def backtrack(level: int, phi: list[int], used: set[int]) -> None:
        if level == len(gens):
            if all(v >= 0 for v in phi):
                found.append(tuple(phi))
            return
        src = gens[level]
        if phi[src] >= 0:
            backtrack(level + 1, phi, used)
            return
        for img in by_order[g.element_orders[src]]:
            if img in used:
                continue
            if involutory_only and phi[img] >= 0 and phi[img] != src:
                continue
            phi2 = list(phi)
            used2 = set(used)
            phi2[src] = img
            used2.add(img)
            if close(phi2, used2, [src]):
                backtrack(level + 1, phi2, used2)

    phi0 = [-1] * n
    phi0[0] = 0
    backtrack(0, phi0, {0})
    out = [automorphism_from_perm(g, p) for p in sorted(found)]
    if involutory_only:
        out = [a for a in out if a.order2]
    return out


def enumerate_involutory_automorphisms(g: FiniteGroup) -> list[AutomorphismMap]:
    """Automorphisms with a.a = identity, identity included, sorted by perm.

    The identity map always sorts first, so index 0 is the identity and the
    inversion map (when distinct) appears at a stable position.
    """
    return enumerate_automorphisms(g, involutory_only=True)


def fix_set(g: FiniteGroup, alpha: AutomorphismMap) -> SubgroupHandle:
    """Fixed points of alpha; always a subgroup."""
    return subgroup_handle(g, mask_of(x for x in range(g.order) if alpha.perm[x] == x))


@dataclass(frozen=True)
class OmegaSet:
    set: ElementSet
    is_subgroup: bool


def omega_set(g: FiniteGroup, alpha: AutomorphismMap) -> OmegaSet:
    """Image of x -> alpha(x) x^{-1}, with a subgroup flag."""
    mask = mask_of(g.mul[alpha.perm[x]][g.inv[x]] for x in range(g.order))
    members = list(bits(mask))
    closed = all(mask >> g.mul[a][b] & 1 for a in members for b in members)
    return OmegaSet(ElementSet(g, mask), closed)


# ---------------------------------------------------------------------------
# structure decompositions


@dataclass(frozen=True)
class OddAbelianDecomposition:
    """G = Fix(alpha) x omega(G) internally; pair_of[x] = (fix part, omega part)."""

    fix: SubgroupHandle
    omega: SubgroupHandle
    pair_of: tuple[tuple[int, int], ...]


def decompose_odd_abelian(g: FiniteGroup, alpha: AutomorphismMap) -> OddAbelianDecomposition:
    """Split an odd-order abelian group as Fix x omega under an involutory map."""
    if not g.abelian:
        raise ShapeError("decomposition needs an abelian group")
    if g.order % 2 == 0:
        raise ShapeError("decomposition needs odd order")
    if not alpha.order2:
        raise ShapeError("alpha must square to the identity")
    fix = fix_set(g, alpha)
    om = omega_set(g, alpha)
    if not om.is_subgroup:
        raise ShapeError("omega image failed to close")
    omega = subgroup_handle(g, om.set.mask)
    if len(fix) * len(omega) != g.order:
        raise ShapeError("fixed set and omega image do not complement")
    fix_members = fix.members()
    omega_members = omega.members()
    pair_of: list[tuple[int, int]] = []
    for x in range(g.order):
        hits = [
            (a, b) for a in fix_members for b in omega_members if g.mul[a][b] == x
        ]
        if len(hits) != 1:
            raise ShapeError("decomposition is not unique")
        pair_of.append(hits[0])
    # the pairing must be an isomorphism onto the external product
    for x in range(g.order):
        for y in range(g.order):
            fx, ox = pair_of[x]
            fy, oy = pair_of[y]
            if pair_of[g.mul[x][y]] != (g.mul[fx][fy], g.mul[ox][oy]):
                raise ShapeError("decomposition is not multiplicative")
    return OddAbelianDecomposition(fix, omega, tuple(pair_of))


@dataclass(frozen=True)
class CyclicSylowDecomposition:
    """G = <z> x H1 x H2 with |z| = 2^n, H1/H2 odd; alpha acts as
    (x, y1, y2) -> (a*x, y1, y2^{-1})."""

    n: int
    a: int
    z: int
    h1: SubgroupHandle
    h2: SubgroupHandle
    coords: tuple[tuple[int, int, int], ...]  # element id -> (x, h1 member, h2 member)


def _two_part(order: int) -> tuple[int, int]:
    n = 0
    while order % 2 == 0:
        order //= 2
        n += 1
    return n, order


def decompose_cyclic_sylow(g: FiniteGroup, alpha: AutomorphismMap) -> CyclicSylowDecomposition:
    """Decompose an abelian group with cyclic Sylow 2-subgroup of order 2^n, n >= 1."""
    if not g.abelian:
        raise ShapeError("decomposition needs an abelian group")
    if not alpha.order2:
        raise ShapeError("alpha must square to the identity")
    n, odd = _two_part(g.order)
    if n == 0:
        raise ShapeError("group has odd order; no 2-part to split off")
    two_n = 1 << n
    z = next((x for x in range(g.order) if g.element_orders[x] == two_n), None)
    if z is None:
        raise ShapeError("Sylow 2-subgroup is not cyclic")
    span = subgroup_closure(g, [z])
    for x in range(g.order):
        o = g.element_orders[x]
        if o & (o - 1) == 0 and not span >> x & 1:
            raise ShapeError("Sylow 2-subgroup is not cyclic")
    # discrete log of alpha(z) in <z>
    a, cur = None, 0
    for k in range(1, two_n + 1):
        cur = g.mul[cur][z]
        if cur == alpha.perm[z]:
            a = k % two_n
            break
    if a is None:
        raise ShapeError("alpha does not preserve the Sylow 2-subgroup")
    legal = {1 % two_n, (two_n - 1) % two_n, (two_n // 2 - 1) % two_n, (two_n // 2 + 1) % two_n}
    if a not in legal:
        raise ShapeError(f"transported action {a} is not an involution mod {two_n}")
    h_mask = mask_of(x for x in range(g.order) if g.element_orders[x] % 2 == 1)
    fix = fix_set(g, alpha)
    om = omega_set(g, alpha)
    h1 = subgroup_handle(g, h_mask & fix.set.mask)
    h2 = subgroup_handle(g, h_mask & om.set.mask)
    # enumerate z^x * y1 * y2 and invert
    coords: list[tuple[int, int, int] | None] = [None] * g.order
    zx = 0
    for x in range(two_n):
        for y1 in h1.members():
            base = g.mul[zx][y1]
            for y2 in h2.members():
                e = g.mul[base][y2]
                if coords[e] is not None:
                    raise ShapeError("coordinates collide; not a direct product")
                coords[e] = (x, y1, y2)
        zx = g.mul[zx][z]
    if any(c is None for c in coords):
        raise ShapeError("coordinates do not cover the group")
    # multiplicativity and the transported action
    for p in range(g.order):
        x1, y11, y21 = coords[p]
        ax, ay1, ay2 = coords[alpha.perm[p]]
        if (ax, ay1, ay2) != ((a * x1) % two_n, y11, g.inv[y21]):
            raise ShapeError("alpha does not act coordinatewise")
        for q in range(g.order):
            x2, y12, y22 = coords[q]
            if coords[g.mul[p][q]] != ((x1 + x2) % two_n, g.mul[y11][y12], g.mul[y21][y22]):
                raise ShapeError("coordinates are not multiplicative")
    return CyclicSylowDecomposition(n, a, z, h1, h2, tuple(coords))


# ---------------------------------------------------------------------------
# dihedral involutions


@dataclass(frozen=True)
class DihedralInvolutionParams:
    """Involutory automorphism of the dihedral group of order 2p:
    r -> r^k, t -> t r^l with k^2 = 1 and l(k+1) = 0 mod p.  For k = -1 the
    halfshift is the unique k' with l = 2k' mod p."""

    p: int
    k: int
    l: int
    halfshift: int | None

    def to_automorphism(self, g: FiniteGroup) -> AutomorphismMap:
        if not isinstance(g.descriptor, Dihedral) or g.descriptor.order != 2 * self.p:
            raise ShapeError("group does not match these parameters")
        p = self.p
        perm = [0] * (2 * p)
        for i in range(p):
            perm[i] = (self.k * i) % p
            perm[p + i] = p + (self.l + self.k * i) % p
        return automorphism_from_perm(g, perm)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def classify_dihedral_involutions(p: int) -> list[DihedralInvolutionParams]:
    """All involutory automorphisms of the order-2p dihedral group, p an odd
    prime: the identity (k=1, l=0) and one entry per l with k=-1."""
    if not is_prime(p) or p == 2:
        raise ShapeError("p must be an odd prime")
    out = [DihedralInvolutionParams(p, 1, 0, None)]
    half = (p + 1) // 2  # inverse of 2 mod p
    for l in range(p):
        out.append(DihedralInvolutionParams(p, -1, l, (l * half) % p))
    return out


def dihedral_group(p: int) -> FiniteGroup:
    return make_group(f"D{2 * p}")
