"""Finite-set category infrastructure.

Sets are sizes, elements are indices below the size, and maps are lookup
tables.  On top of that this module builds everything the verification
engine consumes: commuting squares, pushouts (union-find, canonical
least-index representatives), pullbacks, exponential objects, the
correspondence between a map and its family of fibers, joins, constancy
sets, and the pushout-product / pullback-hom constructions at both the
map level and the family level, together with their functorial actions
and the explicit fiber-preservation isomorphisms.

Every derived enumeration (products, exponentials, hom sets) uses a
fixed lexicographic order, so a bijection produced here is a concrete
permutation table that is reproducible across runs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

DEFAULT_SIZE_GUARD = 10**6


class SizeGuardError(Exception):
    """An enumeration would exceed the configured size guard."""

    def __init__(self, what: str, size: int, guard: int) -> None:
        super().__init__(
            f"{what} would enumerate {size} elements, over the size guard {guard}"
        )
        self.what = what
        self.size = size
        self.guard = guard


def _check_guard(what: str, size: int, guard: int | None) -> None:
    bound = DEFAULT_SIZE_GUARD if guard is None else guard
    if size > bound:
        raise SizeGuardError(what, size, bound)


@dataclass(frozen=True)
class FinSet:
    """A finite set: its elements are 0 .. size-1.  Labels are cosmetic."""

    size: int
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("a finite set needs a nonnegative size")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.size:
                raise ValueError("label count must match the size")

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def __iter__(self):
        return iter(range(self.size))


@dataclass(frozen=True)
class FinMap:
    """A function between finite sets, stored as a full lookup table."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom.size:
            raise ValueError(
                f"table length {len(self.table)} != domain size {self.dom.size}"
            )
        c = self.cod.size
        for v in self.table:
            if not 0 <= v < c:
                raise ValueError(f"table entry {v} outside codomain of size {c}")

    def __call__(self, i: int) -> int:
        return self.table[i]


def identity(a: FinSet) -> FinMap:
    return FinMap(a, a, tuple(range(a.size)))


def compose(g: FinMap, f: FinMap) -> FinMap:
    """g after f."""
    if f.cod != g.dom:
        raise ValueError("compose: codomain/domain mismatch")
    return FinMap(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def is_injective(f: FinMap) -> bool:
    return len(set(f.table)) == f.dom.size


def is_surjective(f: FinMap) -> bool:
    return len(set(f.table)) == f.cod.size


def is_bijection(f: FinMap) -> bool:
    return f.dom.size == f.cod.size and is_injective(f)


def invert(f: FinMap) -> FinMap:
    if not is_bijection(f):
        raise ValueError("only bijections invert")
    table = [0] * f.cod.size
    for i, v in enumerate(f.table):
        table[v] = i
    return FinMap(f.cod, f.dom, tuple(table))


def enumerate_maps(a: FinSet, b: FinSet, guard: int | None = None) -> list[FinMap]:
    """All maps a -> b in lexicographic table order."""
    _check_guard(f"map set {b.size}^{a.size}", b.size**a.size, guard)
    return [
        FinMap(a, b, t) for t in itertools.product(range(b.size), repeat=a.size)
    ]


@dataclass(frozen=True)
class Square:
    """A commuting square: right . top == bottom . left.

    left : A -> B, right : X -> Y, top : A -> X, bottom : B -> Y.
    Read as an arrow of the arrow category from `left` to `right`.
    """

    left: FinMap
    right: FinMap
    top: FinMap
    bottom: FinMap

    def __post_init__(self) -> None:
        if self.top.dom != self.left.dom or self.top.cod != self.right.dom:
            raise ValueError("square: top leg has the wrong endpoints")
        if self.bottom.dom != self.left.cod or self.bottom.cod != self.right.cod:
            raise ValueError("square: bottom leg has the wrong endpoints")
        if compose(self.right, self.top) != compose(self.bottom, self.left):
            raise ValueError("square does not commute")


def identity_square(f: FinMap) -> Square:
    return Square(f, f, identity(f.dom), identity(f.cod))


def compose_squares(second: Square, first: Square) -> Square:
    """Composition in the arrow category (first: p -> q, second: q -> r)."""
    if first.right != second.left:
        raise ValueError("squares are not composable")
    return Square(
        first.left,
        second.right,
        compose(second.top, first.top),
        compose(second.bottom, first.bottom),
    )


def enumerate_squares(f: FinMap, g: FinMap, guard: int | None = None) -> list[Square]:
    """All commuting squares from f to g, top-major lexicographic order."""
    total = (g.dom.size ** f.dom.size) * (g.cod.size ** f.cod.size)
    _check_guard("square set", total, guard)
    out = []
    for top in enumerate_maps(f.dom, g.dom, guard):
        gt = compose(g, top)
        for bottom in enumerate_maps(f.cod, g.cod, guard):
            if compose(bottom, f) == gt:
                out.append(Square(f, g, top, bottom))
    return out


# ---------------------------------------------------------------------------
# Families of finite sets over a finite base.


@dataclass(frozen=True)
class Family:
    """A finite set of finite sets: one fiber per base element."""

    base: FinSet
    fibers: tuple[FinSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fibers", tuple(self.fibers))
        if len(self.fibers) != self.base.size:
            raise ValueError("one fiber per base element required")

    def total_size(self) -> int:
        return sum(f.size for f in self.fibers)


@dataclass(frozen=True)
class FamMap:
    """A fiberwise map of families: a base map plus one map per fiber."""

    src: Family
    dst: Family
    base_map: FinMap
    fiber_maps: tuple[FinMap, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fiber_maps", tuple(self.fiber_maps))
        if self.base_map.dom != self.src.base or self.base_map.cod != self.dst.base:
            raise ValueError("family map: base map has the wrong endpoints")
        if len(self.fiber_maps) != self.src.base.size:
            raise ValueError("family map: one fiber map per source base element")
        for a, fm in enumerate(self.fiber_maps):
            if fm.dom != self.src.fibers[a]:
                raise ValueError(f"family map: fiber map {a} has the wrong domain")
            if fm.cod != self.dst.fibers[self.base_map.table[a]]:
                raise ValueError(f"family map: fiber map {a} has the wrong codomain")

    def key(self) -> tuple:
        """Hashable identity used for hom-set index lookups."""
        return (self.base_map.table, tuple(fm.table for fm in self.fiber_maps))


def fam_identity(fam: Family) -> FamMap:
    return FamMap(
        fam, fam, identity(fam.base), tuple(identity(f) for f in fam.fibers)
    )


def fam_compose(g: FamMap, f: FamMap) -> FamMap:
    """g after f, fiberwise."""
    if f.dst != g.src:
        raise ValueError("family maps are not composable")
    fibers = tuple(
        compose(g.fiber_maps[f.base_map.table[a]], f.fiber_maps[a])
        for a in range(f.src.base.size)
    )
    return FamMap(f.src, g.dst, compose(g.base_map, f.base_map), fibers)


def is_fam_iso(phi: FamMap) -> bool:
    return is_bijection(phi.base_map) and all(is_bijection(m) for m in phi.fiber_maps)


def invert_fam_map(phi: FamMap) -> FamMap:
    if not is_fam_iso(phi):
        raise ValueError("only fiberwise isomorphisms invert")
    base_inv = invert(phi.base_map)
    fibers = tuple(
        invert(phi.fiber_maps[base_inv.table[x]]) for x in range(phi.dst.base.size)
    )
    return FamMap(phi.dst, phi.src, base_inv, fibers)


def fam_hom_size(src: Family, dst: Family) -> int:
    """|hom(src, dst)| by the product-over-base closed form."""
    total = 1
    for a in range(src.base.size):
        ba = src.fibers[a].size
        total *= sum(g.size**ba for g in dst.fibers)
    # An empty source base still admits exactly the empty map.
    if src.base.size == 0:
        return 1
    return total


def enumerate_sigma_pi(
    option_counts: Sequence[Sequence[int]],
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Elements of "sum over choice functions of products of payloads".

    option_counts[a][x] is the payload count for choice x at position a.
    Yields (choice tuple, payload index tuple) pairs: choice tuples in
    lexicographic order, payloads base-major within each choice.
    """
    positions = len(option_counts)
    width = len(option_counts[0]) if positions else 0
    for row in option_counts:
        if len(row) != width:
            raise ValueError("ragged option table")
    out = []
    for choice in itertools.product(range(width), repeat=positions):
        ranges = [range(option_counts[a][choice[a]]) for a in range(positions)]
        for payload in itertools.product(*ranges):
            out.append((choice, payload))
    return out


def enumerate_pi_sigma(
    option_counts: Sequence[Sequence[int]],
) -> list[tuple[tuple[int, int], ...]]:
    """Elements of "product over positions of sums of payloads".

    Each element is a tuple of (choice, payload index) pairs, base-major.
    """
    positions = len(option_counts)
    per_position = []
    for a in range(positions):
        per_position.append(
            [(x, p) for x in range(len(option_counts[a])) for p in range(option_counts[a][x])]
        )
    return [tuple(e) for e in itertools.product(*per_position)]


def distribute(element: tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Product-of-sums element -> (choice function, payload tuple)."""
    return tuple(x for x, _ in element), tuple(p for _, p in element)


def undistribute(
    choice: tuple[int, ...], payload: tuple[int, ...]
) -> tuple[tuple[int, int], ...]:
    """Inverse of distribute."""
    if len(choice) != len(payload):
        raise ValueError("choice and payload lengths differ")
    return tuple(zip(choice, payload))


def enumerate_fam_maps(
    src: Family, dst: Family, guard: int | None = None
) -> list[FamMap]:
    """The full hom set, base map lexicographic then fibers base-major.

    Built over the sum-of-products enumeration, which is the curried
    form of the product-of-sums view (see enumerate_pi_sigma).
    """
    _check_guard("family hom set", fam_hom_size(src, dst), guard)
    nbase = src.base.size
    table_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def tables(ba: int, ya: int) -> list[tuple[int, ...]]:
        key = (ba, ya)
        if key not in table_cache:
            table_cache[key] = list(itertools.product(range(ya), repeat=ba))
        return table_cache[key]

    counts = [
        [len(tables(src.fibers[a].size, g.size)) for g in dst.fibers]
        for a in range(nbase)
    ]
    out = []
    for choice, payload in enumerate_sigma_pi(counts):
        base_map = FinMap(src.base, dst.base, choice)
        fiber_maps = tuple(
            FinMap(
                src.fibers[a],
                dst.fibers[choice[a]],
                tables(src.fibers[a].size, dst.fibers[choice[a]].size)[payload[a]],
            )
            for a in range(nbase)
        )
        out.append(FamMap(src, dst, base_map, fiber_maps))
    return out


# ---------------------------------------------------------------------------
# Pushouts and pullbacks.


@dataclass(frozen=True)
class PushoutPresentation:
    """A pushout apex with its two inclusions and class representatives.

    Classes are ordered by their least member in the disjoint sum
    (left-side elements first), and `representative[c]` is that least
    member, coded as an index into the disjoint sum.
    """

    apex: FinSet
    inl: FinMap
    inr: FinMap
    representative: tuple[int, ...]

    @property
    def left_size(self) -> int:
        return self.inl.dom.size

    def members(self, c: int) -> list[int]:
        """All disjoint-sum elements in class c (left side first)."""
        na = self.inl.dom.size
        out = [a for a in range(na) if self.inl.table[a] == c]
        out.extend(na + b for b in range(self.inr.dom.size) if self.inr.table[b] == c)
        return out


def pushout(f: FinMap, g: FinMap) -> PushoutPresentation:
    """Pushout of cod(f) <-f- dom -g-> cod(g) by union-find."""
    if f.dom != g.dom:
        raise ValueError("pushout legs must share their domain")
    na, nb = f.cod.size, g.cod.size
    parent = list(range(na + nb))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # Keeping the smaller root makes each root the least member of its class.
    for c in range(f.dom.size):
        ra, rb = find(f.table[c]), find(na + g.table[c])
        if ra == rb:
            continue
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb

    roots = sorted({find(x) for x in range(na + nb)})
    klass = {r: i for i, r in enumerate(roots)}
    apex = FinSet(len(roots))
    inl = FinMap(f.cod, apex, tuple(klass[find(a)] for a in range(na)))
    inr = FinMap(g.cod, apex, tuple(klass[find(na + b)] for b in range(nb)))
    return PushoutPresentation(apex, inl, inr, tuple(roots))


class PushoutMediationError(ValueError):
    """The given cocone disagrees on some pushout class."""


def pushout_mediate(p: PushoutPresentation, pa: FinMap, pb: FinMap) -> FinMap:
    """The unique map out of the apex restricting to the given cocone."""
    if pa.dom != p.inl.dom or pb.dom != p.inr.dom:
        raise ValueError("cocone legs have the wrong domains")
    if pa.cod != pb.cod:
        raise ValueError("cocone legs must share their codomain")
    table: list[int | None] = [None] * p.apex.size
    for a in range(pa.dom.size):
        c = p.inl.table[a]
        v = pa.table[a]
        if table[c] is None:
            table[c] = v
        elif table[c] != v:
            raise PushoutMediationError(
                f"cocone disagrees on class {c}: {table[c]} vs {v} (left element {a})"
            )
    for b in range(pb.dom.size):
        c = p.inr.table[b]
        v = pb.table[b]
        if table[c] is None:
            table[c] = v
        elif table[c] != v:
            raise PushoutMediationError(
                f"cocone disagrees on class {c}: {table[c]} vs {v} (right element {b})"
            )
    if any(v is None for v in table):
        # Joint surjectivity of inl/inr makes this unreachable.
        raise PushoutMediationError("apex class with no members")
    return FinMap(p.apex, pa.cod, tuple(table))  # type: ignore[arg-type]


@dataclass(frozen=True)
class PullbackPresentation:
    """A pullback apex presented as the lex-ordered list of matching pairs."""

    apex: FinSet
    proj1: FinMap
    proj2: FinMap
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.pairs)})

    def index_of(self, a: int, b: int) -> int:
        idx = self._index.get((a, b))  # type: ignore[attr-defined]
        if idx is None:
            raise KeyError(f"({a}, {b}) is not in the pullback")
        return idx


def pullback(f: FinMap, g: FinMap) -> PullbackPresentation:
    """Pullback of dom(f) -f-> cod <-g- dom(g), pairs in lex order."""
    if f.cod != g.cod:
        raise ValueError("pullback legs must share their codomain")
    pairs = tuple(
        (a, b)
        for a in range(f.dom.size)
        for b in range(g.dom.size)
        if f.table[a] == g.table[b]
    )
    apex = FinSet(len(pairs))
    proj1 = FinMap(apex, f.dom, tuple(a for a, _ in pairs))
    proj2 = FinMap(apex, g.dom, tuple(b for _, b in pairs))
    return PullbackPresentation(apex, proj1, proj2, pairs)


def pullback_mediate(p: PullbackPresentation, za: FinMap, zb: FinMap) -> FinMap:
    """The unique map into the apex with the given cone."""
    if za.dom != zb.dom:
        raise ValueError("cone legs must share their domain")
    if za.cod != p.proj1.cod or zb.cod != p.proj2.cod:
        raise ValueError("cone legs have the wrong codomains")
    try:
        table = tuple(
            p.index_of(za.table[z], zb.table[z]) for z in range(za.dom.size)
        )
    except KeyError as exc:
        raise ValueError(f"cone does not commute with the pullback legs: {exc}")
    return FinMap(za.dom, p.apex, table)


# ---------------------------------------------------------------------------
# Products and exponentials.


@dataclass(frozen=True)
class Product:
    """Index arithmetic for a binary product, pairs in lex order."""

    a: FinSet
    b: FinSet

    @property
    def finset(self) -> FinSet:
        return FinSet(self.a.size * self.b.size)

    def index(self, i: int, j: int) -> int:
        return i * self.b.size + j

    def split(self, p: int) -> tuple[int, int]:
        return divmod(p, self.b.size)


def product_map(f: FinMap, g: FinMap) -> FinMap:
    """f x g on lex-ordered pair indices."""
    src = Product(f.dom, g.dom)
    dst = Product(f.cod, g.cod)
    table = tuple(
        dst.index(f.table[i], g.table[j])
        for i in range(f.dom.size)
        for j in range(g.dom.size)
    )
    return FinMap(src.finset, dst.finset, table)


@dataclass(frozen=True)
class Exponential:
    """All functions exponent -> values, coded as big-endian numerals.

    The table (t_0, ..., t_{n-1}) has index sum_i t_i * |values|^(n-1-i),
    so enumeration order is lexicographic on tables.
    """

    exponent: FinSet
    values: FinSet

    @property
    def size(self) -> int:
        return self.values.size**self.exponent.size

    @property
    def finset(self) -> FinSet:
        return FinSet(self.size)

    def encode(self, table: Sequence[int]) -> int:
        if len(table) != self.exponent.size:
            raise ValueError("table length mismatch")
        idx = 0
        v = self.values.size
        for t in table:
            if not 0 <= t < v:
                raise ValueError(f"table entry {t} outside values of size {v}")
            idx = idx * v + t
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.size:
            raise ValueError(f"index {idx} outside exponential of size {self.size}")
        n, v = self.exponent.size, self.values.size
        out = [0] * n
        for pos in range(n - 1, -1, -1):
            idx, out[pos] = divmod(idx, v)
        return tuple(out)

    def as_map(self, idx: int) -> FinMap:
        return FinMap(self.exponent, self.values, self.decode(idx))


def exponential(a: FinSet, x: FinSet, guard: int | None = None) -> Exponential:
    e = Exponential(a, x)
    _check_guard(f"exponential {x.size}^{a.size}", e.size, guard)
    return e


def exp_precompose(e: Exponential, f: FinMap) -> FinMap:
    """(- . f) : values^A -> values^A' for f : A' -> A, where e = values^A."""
    if f.cod != e.exponent:
        raise ValueError("precompose: map must land in the exponent")
    e2 = Exponential(f.dom, e.values)
    table = []
    for idx in range(e.size):
        t = e.decode(idx)
        table.append(e2.encode(tuple(t[f.table[a2]] for a2 in range(f.dom.size))))
    return FinMap(e.finset, e2.finset, tuple(table))


def exp_postcompose(e: Exponential, g: FinMap) -> FinMap:
    """(g . -) : values^A -> cod(g)^A, where e = values^A."""
    if g.dom != e.values:
        raise ValueError("postcompose: map must start at the values")
    e2 = Exponential(e.exponent, g.cod)
    table = []
    for idx in range(e.size):
        t = e.decode(idx)
        table.append(e2.encode(tuple(g.table[v] for v in t)))
    return FinMap(e.finset, e2.finset, tuple(table))


# ---------------------------------------------------------------------------
# The map/family correspondence.


def fibers_table(f: FinMap) -> list[list[int]]:
    """Per codomain element, its preimage in domain order."""
    out: list[list[int]] = [[] for _ in range(f.cod.size)]
    for a, b in enumerate(f.table):
        out[b].append(a)
    return out


def fiber_elements(f: FinMap, b: int) -> list[int]:
    return [a for a in range(f.dom.size) if f.table[a] == b]


def map_to_family(f: FinMap, labels: bool = False) -> Family:
    """The family of fibers of f over its codomain."""
    fibs = fibers_table(f)
    return Family(f.cod, tuple(FinSet(len(members)) for members in fibs))


def family_offsets(fam: Family) -> list[int]:
    """Start offset of each fiber inside the base-major total set."""
    out = []
    acc = 0
    for fib in fam.fibers:
        out.append(acc)
        acc += fib.size
    return out


def family_to_map(fam: Family) -> FinMap:
    """The projection from the base-major total set down to the base."""
    table = []
    for b, fib in enumerate(fam.fibers):
        table.extend([b] * fib.size)
    return FinMap(FinSet(fam.total_size()), fam.base, tuple(table))


def map_family_roundtrip(f: FinMap) -> Square:
    """The iso square between f and the projection of its fiber family.

    Top is the bijection sending a domain element to its (fiber, slot)
    position in the base-major total set; bottom is the identity.
    """
    fam = map_to_family(f)
    offsets = family_offsets(fam)
    position: dict[int, int] = {}
    counters = [0] * f.cod.size
    for a, b in enumerate(f.table):
        position[a] = offsets[b] + counters[b]
        counters[b] += 1
    proj = family_to_map(fam)
    top = FinMap(f.dom, proj.dom, tuple(position[a] for a in range(f.dom.size)))
    return Square(f, proj, top, identity(f.cod))


def square_to_fam_map(sq: Square) -> FamMap:
    """Reformulate an arrow of maps as a fiberwise map of fiber families."""
    f, g = sq.left, sq.right
    src, dst = map_to_family(f), map_to_family(g)
    fibs_f, fibs_g = fibers_table(f), fibers_table(g)
    slot_g: dict[int, int] = {}
    for members in fibs_g:
        for pos, x in enumerate(members):
            slot_g[x] = pos
    fiber_maps = []
    for b, members in enumerate(fibs_f):
        target = dst.fibers[sq.bottom.table[b]]
        fiber_maps.append(
            FinMap(
                src.fibers[b],
                target,
                tuple(slot_g[sq.top.table[a]] for a in members),
            )
        )
    return FamMap(src, dst, sq.bottom, tuple(fiber_maps))


def fam_map_to_square(phi: FamMap, f: FinMap, g: FinMap) -> Square:
    """Inverse reformulation: rebuild the square over the original maps."""
    if phi.src != map_to_family(f) or phi.dst != map_to_family(g):
        raise ValueError("family map does not match the fiber families")
    fibs_f, fibs_g = fibers_table(f), fibers_table(g)
    top_table = [0] * f.dom.size
    for b, members in enumerate(fibs_f):
        target_members = fibs_g[phi.base_map.table[b]]
        fm = phi.fiber_maps[b]
        for pos, a in enumerate(members):
            top_table[a] = target_members[fm.table[pos]]
    top = FinMap(f.dom, g.dom, tuple(top_table))
    return Square(f, g, top, phi.base_map)


# ---------------------------------------------------------------------------
# Joins and constancy sets.


def set_join(a: FinSet, b: FinSet) -> PushoutPresentation:
    """The join of two finite sets: pushout of the product projections.

    At the level of plain finite sets the join collapses: it is empty
    when both inputs are, the nonempty input when exactly one is, and a
    single point when both are nonempty.  Only that collapsed shape
    matters here, because the fiberwise computations downstream consume
    joins of fibers purely through their constancy data.
    """
    pr = Product(a, b)
    pr1 = FinMap(pr.finset, a, tuple(i for i in range(a.size) for _ in range(b.size)))
    pr2 = FinMap(pr.finset, b, tuple(j for _ in range(a.size) for j in range(b.size)))
    return pushout(pr1, pr2)


def join_map(
    src: PushoutPresentation,
    dst: PushoutPresentation,
    f: FinMap,
    g: FinMap,
) -> FinMap:
    """The action of f on the left factor and g on the right factor."""
    return pushout_mediate(src, compose(dst.inl, f), compose(dst.inr, g))


def const_values(f: FinMap) -> tuple[int, ...]:
    """The codomain points at which f is constant, ascending.

    Empty domain: every codomain point counts.  Nonempty: the single
    value when f is constant, otherwise nothing.
    """
    if f.dom.size == 0:
        return tuple(range(f.cod.size))
    first = f.table[0]
    if all(v == first for v in f.table):
        return (first,)
    return ()


def const_set(f: FinMap) -> FinSet:
    return FinSet(len(const_values(f)))


# ---------------------------------------------------------------------------
# Pushout-product and pullback-hom, map level.


@dataclass(frozen=True)
class PushoutProductMap:
    """left : A -> B and right : X -> Y assembled into the corner map.

    corner = (B x X) glued to (A x Y) along A x X; map sends the B x X
    side to (b, right x) and the A x Y side to (left a, y), landing in
    the lex-ordered product B x Y.
    """

    left: FinMap
    right: FinMap
    corner: PushoutPresentation
    map: FinMap

    def inl_index(self, b: int, x: int) -> int:
        return self.corner.inl.table[b * self.right.dom.size + x]

    def inr_index(self, a: int, y: int) -> int:
        return self.corner.inr.table[a * self.right.cod.size + y]

    def member_pair(self, tag: int) -> tuple[str, int, int]:
        """Decode a disjoint-sum tag to ("inl", b, x) or ("inr", a, y)."""
        nbx = self.left.cod.size * self.right.dom.size
        if tag < nbx:
            b, x = divmod(tag, self.right.dom.size)
            return ("inl", b, x)
        a, y = divmod(tag - nbx, self.right.cod.size)
        return ("inr", a, y)


def pushout_product_map(
    f: FinMap, g: FinMap, guard: int | None = None
) -> PushoutProductMap:
    a, b, x, y = f.dom, f.cod, g.dom, g.cod
    _check_guard(
        "pushout-product corner",
        b.size * x.size + a.size * y.size + b.size * y.size,
        guard,
    )
    left_leg = product_map(f, identity(x))  # A x X -> B x X
    right_leg = product_map(identity(a), g)  # A x X -> A x Y
    corner = pushout(left_leg, right_leg)
    by = Product(b, y)
    cocone_l = FinMap(
        corner.inl.dom,
        by.finset,
        tuple(
            by.index(bb, g.table[xx])
            for bb in range(b.size)
            for xx in range(x.size)
        ),
    )
    cocone_r = FinMap(
        corner.inr.dom,
        by.finset,
        tuple(
            by.index(f.table[aa], yy)
            for aa in range(a.size)
            for yy in range(y.size)
        ),
    )
    induced = pushout_mediate(corner, cocone_l, cocone_r)
    return PushoutProductMap(f, g, corner, induced)


@dataclass(frozen=True)
class PullbackHomMap:
    """left : A -> B and right : X -> Y assembled into the gap map.

    map : X^B -> corner, where corner is the pullback of
    X^A -> Y^A <- Y^B and a function h goes to (h . left, right . h).
    """

    left: FinMap
    right: FinMap
    exp_dom: Exponential  # X^B
    exp_xa: Exponential  # X^A
    exp_ya: Exponential  # Y^A
    exp_yb: Exponential  # Y^B
    corner: PullbackPresentation
    map: FinMap

    def corner_tables(self, c: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Decode a corner point to its (A -> X, B -> Y) pair of tables."""
        u_idx, v_idx = self.corner.pairs[c]
        return self.exp_xa.decode(u_idx), self.exp_yb.decode(v_idx)

    def corner_index(self, u_table: Sequence[int], v_table: Sequence[int]) -> int:
        return self.corner.index_of(
            self.exp_xa.encode(u_table), self.exp_yb.encode(v_table)
        )


def pullback_hom_map(
    f: FinMap, g: FinMap, guard: int | None = None
) -> PullbackHomMap:
    a, b, x, y = f.dom, f.cod, g.dom, g.cod
    exp_dom = exponential(b, x, guard)
    exp_xa = exponential(a, x, guard)
    exp_ya = exponential(a, y, guard)
    exp_yb = exponential(b, y, guard)
    _check_guard(
        "pullback-hom corner search", exp_xa.size * exp_yb.size, guard
    )
    leg1 = exp_postcompose(exp_xa, g)  # X^A -> Y^A
    leg2 = exp_precompose(exp_yb, f)  # Y^B -> Y^A
    corner = pullback(leg1, leg2)
    table = []
    for idx in range(exp_dom.size):
        h = exp_dom.decode(idx)
        u = exp_xa.encode(tuple(h[f.table[aa]] for aa in range(a.size)))
        v = exp_yb.encode(tuple(g.table[t] for t in h))
        table.append(corner.index_of(u, v))
    return PullbackHomMap(
        f, g, exp_dom, exp_xa, exp_ya, exp_yb, corner,
        FinMap(exp_dom.finset, corner.apex, tuple(table)),
    )


# ---------------------------------------------------------------------------
# Pushout-product and pullback-hom, family level.


@dataclass(frozen=True)
class PushoutProductFam:
    """Fiberwise pushout-product: joins of fibers over the product base."""

    first: Family
    second: Family
    joins: tuple[PushoutPresentation, ...]
    family: Family

    def base_index(self, a: int, x: int) -> int:
        return a * self.second.base.size + x


def pushout_product_fam(first: Family, second: Family) -> PushoutProductFam:
    joins = []
    fibers = []
    for a in range(first.base.size):
        for x in range(second.base.size):
            j = set_join(first.fibers[a], second.fibers[x])
            joins.append(j)
            fibers.append(j.apex)
    base = FinSet(first.base.size * second.base.size)
    return PushoutProductFam(first, second, tuple(joins), Family(base, tuple(fibers)))


@dataclass(frozen=True)
class PullbackHomFam:
    """Fiberwise pullback-hom: hom set as base, constancy products as fibers.

    maps[i] is the i-th family map first -> second; consts[i][a] is the
    ascending tuple of designated values of its a-th fiber map.  The
    fiber over i is the product of those constancy sets, base-major.
    """

    first: Family
    second: Family
    maps: tuple[FamMap, ...]
    consts: tuple[tuple[tuple[int, ...], ...], ...]
    family: Family

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {m.key(): i for i, m in enumerate(self.maps)}
        )

    def map_index(self, phi: FamMap) -> int:
        idx = self._index.get(phi.key())  # type: ignore[attr-defined]
        if idx is None:
            raise KeyError("family map is not in the hom enumeration")
        return idx

    def fiber_encode(self, i: int, values: Sequence[int]) -> int:
        """Designated-value tuple (one per source base point) -> fiber index."""
        consts = self.consts[i]
        if len(values) != len(consts):
            raise ValueError("value tuple length mismatch")
        idx = 0
        for a, v in enumerate(values):
            pos = consts[a].index(v)
            idx = idx * len(consts[a]) + pos
        return idx

    def fiber_decode(self, i: int, code: int) -> tuple[int, ...]:
        consts = self.consts[i]
        out = [0] * len(consts)
        for a in range(len(consts) - 1, -1, -1):
            code, pos = divmod(code, len(consts[a]))
            out[a] = consts[a][pos]
        return tuple(out)


def pullback_hom_fam(
    first: Family, second: Family, guard: int | None = None
) -> PullbackHomFam:
    maps = tuple(enumerate_fam_maps(first, second, guard))
    consts = tuple(
        tuple(const_values(fm) for fm in m.fiber_maps) for m in maps
    )
    fibers = []
    for per_map in consts:
        size = 1
        for values in per_map:
            size *= len(values)
        fibers.append(FinSet(size))
    fam = Family(FinSet(len(maps)), tuple(fibers))
    return PullbackHomFam(first, second, maps, consts, fam)


# ---------------------------------------------------------------------------
# Functorial actions on the family-level constructions.


def join_fam_action(
    src: PushoutProductFam,
    dst: PushoutProductFam,
    alpha: FamMap,
    beta: FamMap,
) -> FamMap:
    """(alpha, beta) acting on fiberwise pushout-products, covariantly."""
    if alpha.src != src.first or beta.src != src.second:
        raise ValueError("action sources do not match")
    if alpha.dst != dst.first or beta.dst != dst.second:
        raise ValueError("action targets do not match")
    nx = src.second.base.size
    base_table = []
    fiber_maps = []
    for a in range(src.first.base.size):
        for x in range(nx):
            a2 = alpha.base_map.table[a]
            x2 = beta.base_map.table[x]
            base_table.append(dst.base_index(a2, x2))
            fiber_maps.append(
                join_map(
                    src.joins[src.base_index(a, x)],
                    dst.joins[dst.base_index(a2, x2)],
                    alpha.fiber_maps[a],
                    beta.fiber_maps[x],
                )
            )
    base_map = FinMap(src.family.base, dst.family.base, tuple(base_table))
    return FamMap(src.family, dst.family, base_map, tuple(fiber_maps))


def precompose_hom_action(
    src: PullbackHomFam, dst: PullbackHomFam, alpha: FamMap
) -> FamMap:
    """From alpha : F -> F', the map (F' hom G) -> (F hom G).

    src must be the pullback-hom family over F', dst the one over F,
    with the same second argument G.
    """
    if alpha.dst != src.first or alpha.src != dst.first:
        raise ValueError("precompose action: alpha has the wrong endpoints")
    if src.second != dst.second:
        raise ValueError("precompose action: second families differ")
    base_table = []
    fiber_maps = []
    for i, m in enumerate(src.maps):
        composed = fam_compose(m, alpha)
        j = dst.map_index(composed)
        base_table.append(j)
        src_fiber = src.family.fibers[i]
        dst_fiber = dst.family.fibers[j]
        table = []
        for code in range(src_fiber.size):
            values = src.fiber_decode(i, code)
            moved = tuple(
                values[alpha.base_map.table[a]]
                for a in range(dst.first.base.size)
            )
            table.append(dst.fiber_encode(j, moved))
        fiber_maps.append(FinMap(src_fiber, dst_fiber, tuple(table)))
    base_map = FinMap(src.family.base, dst.family.base, tuple(base_table))
    return FamMap(src.family, dst.family, base_map, tuple(fiber_maps))


def postcompose_hom_action(
    src: PullbackHomFam, dst: PullbackHomFam, beta: FamMap
) -> FamMap:
    """From beta : G -> G', the map (F hom G) -> (F hom G')."""
    if beta.src != src.second or beta.dst != dst.second:
        raise ValueError("postcompose action: beta has the wrong endpoints")
    if src.first != dst.first:
        raise ValueError("postcompose action: first families differ")
    base_table = []
    fiber_maps = []
    for i, m in enumerate(src.maps):
        composed = fam_compose(beta, m)
        j = dst.map_index(composed)
        base_table.append(j)
        src_fiber = src.family.fibers[i]
        dst_fiber = dst.family.fibers[j]
        table = []
        for code in range(src_fiber.size):
            values = src.fiber_decode(i, code)
            moved = tuple(
                beta.fiber_maps[m.base_map.table[a]].table[values[a]]
                for a in range(src.first.base.size)
            )
            table.append(dst.fiber_encode(j, moved))
        fiber_maps.append(FinMap(src_fiber, dst_fiber, tuple(table)))
    base_map = FinMap(src.family.base, dst.family.base, tuple(base_table))
    return FamMap(src.family, dst.family, base_map, tuple(fiber_maps))


# ---------------------------------------------------------------------------
# Fiber-preservation isomorphisms between the map and family levels.


def pp_preservation(
    ppm: PushoutProductMap,
) -> tuple[FamMap, PushoutProductFam]:
    """The explicit iso from the corner map's fibers to the fiberwise form.

    Identity on the base (both sides index by the lex-ordered product of
    the codomains); on fibers, a corner class maps into the join of the
    two fibers according to which glued side its members came from.
    Returns the iso together with the fiberwise pushout-product it hits.
    """
    f, g = ppm.left, ppm.right
    ppf = pushout_product_fam(map_to_family(f), map_to_family(g))
    src = map_to_family(ppm.map)
    fibs_f, fibs_g = fibers_table(f), fibers_table(g)
    slot_f: dict[tuple[int, int], int] = {}
    for b, members in enumerate(fibs_f):
        for pos, a in enumerate(members):
            slot_f[(b, a)] = pos
    slot_g: dict[tuple[int, int], int] = {}
    for y, members in enumerate(fibs_g):
        for pos, x in enumerate(members):
            slot_g[(y, x)] = pos
    corner_fibers = fibers_table(ppm.map)
    ny = g.cod.size
    fiber_maps = []
    for p in range(ppm.map.cod.size):
        b, y = divmod(p, ny)
        join = ppf.joins[p]
        classes = corner_fibers[p]
        table = []
        for c in classes:
            images = set()
            for tag in ppm.corner.members(c):
                side, first, second = ppm.member_pair(tag)
                if side == "inl":
                    # (b, x) with g x = y contributes the right factor x.
                    images.add(join.inr.table[slot_g[(y, second)]])
                else:
                    # (a, y) with f a = b contributes the left factor a.
                    images.add(join.inl.table[slot_f[(b, first)]])
            if len(images) != 1:
                raise RuntimeError(
                    "fiberwise join law violated: corner class maps to "
                    f"{sorted(images)} in the join at base point {p}"
                )
            table.append(images.pop())
        fm = FinMap(src.fibers[p], ppf.family.fibers[p], tuple(table))
        if not is_bijection(fm):
            raise RuntimeError(
                f"fiberwise join law violated: fiber over {p} is not a bijection"
            )
        fiber_maps.append(fm)
    base_map = identity(src.base)
    iso = FamMap(src, ppf.family, base_map, tuple(fiber_maps))
    return iso, ppf


def ph_preservation(
    phm: PullbackHomMap, guard: int | None = None
) -> tuple[FamMap, PullbackHomFam]:
    """The explicit iso from the gap map's fibers to the fiberwise form.

    A corner point (u, v) corresponds to the family map with base v and
    fiber maps read off u; a function h over a corner point corresponds
    to its tuple of designated values h(b).  Returns the iso together
    with the fiberwise pullback-hom it hits.
    """
    f, g = phm.left, phm.right
    phf = pullback_hom_fam(map_to_family(f), map_to_family(g), guard)
    src = map_to_family(phm.map)
    fibs_f, fibs_g = fibers_table(f), fibers_table(g)
    slot_g: dict[int, int] = {}
    for members in fibs_g:
        for pos, x in enumerate(members):
            slot_g[x] = pos
    fam_f = phf.first
    base_table = []
    fiber_maps = []
    gap_fibers = fibers_table(phm.map)
    for c in range(phm.map.cod.size):
        u_table, v_table = phm.corner_tables(c)
        fiber_maps_for_point = tuple(
            FinMap(
                fam_f.fibers[b],
                phf.second.fibers[v_table[b]],
                tuple(slot_g[u_table[a]] for a in fibs_f[b]),
            )
            for b in range(f.cod.size)
        )
        phi = FamMap(
            phf.first,
            phf.second,
            FinMap(fam_f.base, phf.second.base, v_table),
            fiber_maps_for_point,
        )
        i = phf.map_index(phi)
        base_table.append(i)
        table = []
        for h_idx in gap_fibers[c]:
            h = phm.exp_dom.decode(h_idx)
            values = tuple(slot_g[h[b]] for b in range(f.cod.size))
            table.append(phf.fiber_encode(i, values))
        fm = FinMap(src.fibers[c], phf.family.fibers[i], tuple(table))
        if not is_bijection(fm):
            raise RuntimeError(
                f"constancy law violated: fiber over corner point {c} is not "
                "a bijection"
            )
        fiber_maps.append(fm)
    base_map = FinMap(src.base, phf.family.base, tuple(base_table))
    if not is_bijection(base_map):
        raise RuntimeError("constancy law violated: corner base is not a bijection")
    iso = FamMap(src, phf.family, base_map, tuple(fiber_maps))
    return iso, phf


# ---------------------------------------------------------------------------
# Serialization (canonical JSON, bit-exact round-trips).


def finmap_to_json(f: FinMap) -> str:
    return json.dumps(
        {"dom": f.dom.size, "cod": f.cod.size, "table": list(f.table)},
        sort_keys=True,
        separators=(",", ":"),
    )


def finmap_from_json(text: str) -> FinMap:
    data = json.loads(text)
    return FinMap(FinSet(data["dom"]), FinSet(data["cod"]), tuple(data["table"]))


def family_to_json(fam: Family) -> str:
    return json.dumps(
        {"base": fam.base.size, "fibers": [f.size for f in fam.fibers]},
        sort_keys=True,
        separators=(",", ":"),
    )


def family_from_json(text: str) -> Family:
    data = json.loads(text)
    return Family(FinSet(data["base"]), tuple(FinSet(s) for s in data["fibers"]))


def fam_map_to_json(phi: FamMap) -> str:
    return json.dumps(
        {
            "src": json.loads(family_to_json(phi.src)),
            "dst": json.loads(family_to_json(phi.dst)),
            "base": list(phi.base_map.table),
            "fibers": [list(fm.table) for fm in phi.fiber_maps],
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def fam_map_from_json(text: str) -> FamMap:
    data = json.loads(text)
    src = Family(
        FinSet(data["src"]["base"]), tuple(FinSet(s) for s in data["src"]["fibers"])
    )
    dst = Family(
        FinSet(data["dst"]["base"]), tuple(FinSet(s) for s in data["dst"]["fibers"])
    )
    base_map = FinMap(src.base, dst.base, tuple(data["base"]))
    fibers = tuple(
        FinMap(src.fibers[a], dst.fibers[base_map.table[a]], tuple(t))
        for a, t in enumerate(data["fibers"])
    )
    return FamMap(src, dst, base_map, fibers)
