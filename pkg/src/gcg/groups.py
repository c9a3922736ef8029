"""Finite groups as explicit multiplication tables.

Element ids are 0..order-1 with 0 the identity.  Groups are built from a
small descriptor grammar:

    Z<n>        cyclic of order n
    D<2n>       dihedral of order 2n (rotations r^0..r^{n-1}, then tr^0..tr^{n-1})
    A4          alternating group on four points
    Dih(<d>)    generalized dihedral over an abelian group
    <d>x<d>     direct product (element ids in row-major order)

The grammar is case-sensitive and whitespace-free.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import permutations

from .caps import Caps, caps_from_env
from .errors import CapExceeded, DescriptorError


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    order: int  # 2n


@dataclass(frozen=True)
class Alt4:
    pass


@dataclass(frozen=True)
class Dih:
    inner: "Descriptor"


@dataclass(frozen=True)
class Product:
    factors: tuple["Descriptor", ...]


@dataclass(frozen=True)
class Opaque:
    """Structural tag for groups derived at runtime (e.g. regular subgroups)."""

    label: str
    order: int


Descriptor = Cyclic | Dihedral | Alt4 | Dih | Product | Opaque


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced parentheses in {text!r}")
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise DescriptorError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_descriptor(text: str) -> Descriptor:
    """Parse the descriptor grammar; raises DescriptorError on bad input."""
    if not text or any(c.isspace() for c in text):
        raise DescriptorError(f"bad descriptor {text!r}")
    parts = _split_top(text)
    if len(parts) > 1:
        return Product(tuple(parse_descriptor(p) for p in parts))
    t = parts[0]
    if t == "A4":
        return Alt4()
    if t.startswith("Dih(") and t.endswith(")"):
        return Dih(parse_descriptor(t[4:-1]))
    if t.startswith("Z") and t[1:].isdigit():
        n = int(t[1:])
        if n < 1:
            raise DescriptorError(f"cyclic order must be >= 1, got {n}")
        return Cyclic(n)
    if t.startswith("D") and t[1:].isdigit():
        m = int(t[1:])
        if m < 2 or m % 2:
            raise DescriptorError(f"dihedral order must be even and >= 2, got {m}")
        return Dihedral(m)
    raise DescriptorError(f"bad descriptor {text!r}")


def format_descriptor(d: Descriptor) -> str:
    if isinstance(d, Cyclic):
        return f"Z{d.n}"
    if isinstance(d, Dihedral):
        return f"D{d.order}"
    if isinstance(d, Alt4):
        return "A4"
    if isinstance(d, Dih):
        return f"Dih({format_descriptor(d.inner)})"
    if isinstance(d, Product):
        return "x".join(format_descriptor(f) for f in d.factors)
    if isinstance(d, Opaque):
        return d.label
    raise DescriptorError(f"unknown descriptor {d!r}")


def descriptor_order(d: Descriptor) -> int:
    if isinstance(d, Cyclic):
        return d.n
    if isinstance(d, Dihedral):
        return d.order
    if isinstance(d, Alt4):
        return 12
    if isinstance(d, Dih):
        return 2 * descriptor_order(d.inner)
    if isinstance(d, Product):
        return reduce(lambda a, b: a * b, (descriptor_order(f) for f in d.factors), 1)
    if isinstance(d, Opaque):
        return d.order
    raise DescriptorError(f"unknown descriptor {d!r}")


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    descriptor: Descriptor
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    names: tuple[str, ...]
    abelian: bool
    element_orders: tuple[int, ...]

    def elements(self) -> range:
        return range(self.order)

    @property
    def name(self) -> str:
        return format_descriptor(self.descriptor)

    def __repr__(self) -> str:  # pragma: no cover
        return f"FiniteGroup({self.name}, order={self.order})"


def check_group_axioms(mul: list[list[int]] | tuple, order: int, full: bool = True) -> None:
    """Identity/inverse checks always; associativity only when full is set."""
    for a in range(order):
        if mul[0][a] != a or mul[a][0] != a:
            raise DescriptorError("identity axiom fails")
    for a in range(order):
        if not any(mul[a][b] == 0 for b in range(order)):
            raise DescriptorError("inverse axiom fails")
    if full:
        for a in range(order):
            ma = mul[a]
            for b in range(order):
                mab = mul[ma[b]]
                mb = mul[b]
                for c in range(order):
                    if mab[c] != ma[mb[c]]:
                        raise DescriptorError("associativity fails")


def group_from_table(mul: list[list[int]], names: list[str] | None, descriptor: Descriptor) -> FiniteGroup:
    """Wrap an explicit table, verifying axioms (full check up to order 64)."""
    order = len(mul)
    check_group_axioms(mul, order, full=order <= 64)
    inv = [0] * order
    for a in range(order):
        for b in range(order):
            if mul[a][b] == 0:
                inv[a] = b
                break
    abelian = all(mul[a][b] == mul[b][a] for a in range(order) for b in range(a))
    orders = []
    for a in range(order):
        k, x = 1, a
        while x != 0:
            x = mul[x][a]
            k += 1
        orders.append(k)
    return FiniteGroup(
        descriptor=descriptor,
        order=order,
        mul=tuple(tuple(row) for row in mul),
        inv=tuple(inv),
        names=tuple(names) if names else tuple(str(i) for i in range(order)),
        abelian=abelian,
        element_orders=tuple(orders),
    )


def _cycle_name(p: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        parts.append("(" + " ".join(str(v) for v in cyc) + ")")
    return "".join(parts) if parts else "id"


def _build(d: Descriptor) -> FiniteGroup:
    if isinstance(d, Cyclic):
        n = d.n
        mul = [[(a + b) % n for b in range(n)] for a in range(n)]
        return group_from_table(mul, [str(i) for i in range(n)], d)

    if isinstance(d, Dihedral):
        n = d.order // 2

        def enc(i: int, j: int) -> int:
            return i * n + j % n

        mul = [[0] * d.order for _ in range(d.order)]
        for i1 in range(2):
            for j1 in range(n):
                for i2 in range(2):
                    for j2 in range(n):
                        # move r^{j1} past t^{i2}: r^j t = t r^{-j}
                        j = (-j1 if i2 else j1) + j2
                        mul[enc(i1, j1)][enc(i2, j2)] = enc((i1 + i2) % 2, j)
        names = ["1"] + [f"r{j}" if j > 1 else "r" for j in range(1, n)]
        names += ["t"] + [f"tr{j}" if j > 1 else "tr" for j in range(1, n)]
        return group_from_table(mul, names, d)

    if isinstance(d, Alt4):
        elems = sorted(p for p in permutations(range(4)) if _parity(p) == 0)
        idx = {p: i for i, p in enumerate(elems)}
        mul = [[idx[tuple(a[b[i]] for i in range(4))] for b in elems] for a in elems]
        return group_from_table(mul, [_cycle_name(p) for p in elems], d)

    if isinstance(d, Dih):
        return make_generalized_dihedral(_build(d.inner), descriptor=d)

    if isinstance(d, Product):
        groups = [_build(f) for f in d.factors]
        sizes = [g.order for g in groups]
        total = reduce(lambda a, b: a * b, sizes, 1)

        def dec(x: int) -> list[int]:
            out = []
            for s in reversed(sizes):
                out.append(x % s)
                x //= s
            return out[::-1]

        def enc(parts: list[int]) -> int:
            x = 0
            for s, p in zip(sizes, parts):
                x = x * s + p
            return x

        mul = []
        for a in range(total):
            pa = dec(a)
            row = []
            for b in range(total):
                pb = dec(b)
                row.append(enc([g.mul[x][y] for g, x, y in zip(groups, pa, pb)]))
            mul.append(row)
        names = []
        for a in range(total):
            pa = dec(a)
            names.append("(" + ",".join(g.names[x] for g, x in zip(groups, pa)) + ")")
        return group_from_table(mul, names, d)

    raise DescriptorError(f"cannot build {d!r}")


def _parity(p: tuple[int, ...]) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2


def make_generalized_dihedral(inner: FiniteGroup, descriptor: Descriptor | None = None) -> FiniteGroup:
    """Group on pairs (g, i), i in {0,1}: (g1,i)(g2,0) = (g1 g2, i) and
    (g1,i)(g2,1) = (g1^{-1} g2, i+1).  Requires an abelian inner group."""
    if not inner.abelian:
        raise DescriptorError("generalized dihedral needs an abelian base group")
    m = inner.order

    def enc(g: int, i: int) -> int:
        return i * m + g

    mul = [[0] * (2 * m) for _ in range(2 * m)]
    for i1 in range(2):
        for g1 in range(m):
            for i2 in range(2):
                for g2 in range(m):
                    left = inner.inv[g1] if i2 else g1
                    mul[enc(g1, i1)][enc(g2, i2)] = enc(inner.mul[left][g2], (i1 + i2) % 2)
    names = [f"({inner.names[g]},{i})" for i in range(2) for g in range(m)]
    return group_from_table(mul, names, descriptor or Dih(inner.descriptor))


def product_group(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product with row-major element ids."""
    sizes = [g.order for g in groups]
    total = reduce(lambda a, b: a * b, sizes, 1)

    def dec(x: int) -> list[int]:
        out = []
        for s in reversed(sizes):
            out.append(x % s)
            x //= s
        return out[::-1]

    def enc(parts: list[int]) -> int:
        x = 0
        for s, p in zip(sizes, parts):
            x = x * s + p
        return x

    mul = []
    for a in range(total):
        pa = dec(a)
        mul.append([enc([g.mul[x][y] for g, x, y in zip(groups, pa, dec(b))]) for b in range(total)])
    names = ["(" + ",".join(g.names[x] for g, x in zip(groups, dec(a))) + ")" for a in range(total)]
    return group_from_table(mul, names, Product(tuple(g.descriptor for g in groups)))


def make_group(descriptor: str | Descriptor, caps: Caps | None = None) -> FiniteGroup:
    """Build a group from a descriptor, enforcing the order cap up front."""
    caps = caps or caps_from_env()
    d = parse_descriptor(descriptor) if isinstance(descriptor, str) else descriptor
    order = descriptor_order(d)
    if order > caps.order_cap:
        raise CapExceeded(f"group order {order} exceeds cap {caps.order_cap}")
    return _build(d)


# ---------------------------------------------------------------------------
# element sets and subgroups


def bits(mask: int):
    """Iterate set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class ElementSet:
    group: FiniteGroup
    mask: int

    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class SubgroupHandle:
    """A verified subgroup: closed member set plus left coset representatives."""

    set: ElementSet
    coset_reps: tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.set.group

    def members(self) -> tuple[int, ...]:
        return self.set.members()

    def __len__(self) -> int:
        return len(self.set)

    def cosets(self) -> tuple[tuple[int, ...], ...]:
        """Left cosets gH, ordered by representative; members ascending."""
        g = self.group
        return tuple(
            tuple(sorted(g.mul[rep][h] for h in self.members())) for rep in self.coset_reps
        )


def subgroup_closure(g: FiniteGroup, seed) -> int:
    """Mask of the subgroup generated by seed ids."""
    mask = 1
    members = {0}
    for s in seed:
        if s not in members:
            members.add(s)
            mask |= 1 << s
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            for c in (g.mul[a][b], g.mul[b][a], g.inv[a]):
                if c not in members:
                    members.add(c)
                    mask |= 1 << c
                    frontier.append(c)
    return mask


def subgroup_handle(g: FiniteGroup, mask: int) -> SubgroupHandle:
    """Verify closure and compute left coset representatives (ascending)."""
    if not mask >> 0 & 1:
        raise DescriptorError("subgroup must contain the identity")
    members = list(bits(mask))
    for a in members:
        if not mask >> g.inv[a] & 1:
            raise DescriptorError("subgroup not closed under inverses")
        row = g.mul[a]
        for b in members:
            if not mask >> row[b] & 1:
                raise DescriptorError("subgroup not closed under products")
    if g.order % len(members):
        raise DescriptorError("subgroup order does not divide group order")
    seen = 0
    reps = []
    for x in range(g.order):
        if seen >> x & 1:
            continue
        reps.append(x)
        for h in members:
            seen |= 1 << g.mul[x][h]
    return SubgroupHandle(ElementSet(g, mask), tuple(reps))
