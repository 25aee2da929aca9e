"""Lattice-valued simplices and horns.

A dimension-n point over a lattice L is a weakly decreasing tuple of
n+2 lattice elements whose first entry is the top and whose last entry
is the bottom; the n interior entries are the data, the padding makes
the flatness conditions uniform.  Position j is flat when entries j and
j+1 agree.  The (n, k) horn keeps the points that are flat somewhere
away from k.  Enumeration order is lexicographic on full coordinate
tuples (by element index), and horn enumeration preserves it, so the
horn inclusion is the order-preserving injection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import DEFAULT_SIZE_GUARD, FinMap, FinSet, SizeGuardError
from .lattice import FiniteLattice

__all__ = [
    "HornSpec",
    "SimplexPoint",
    "enumerate_horn",
    "enumerate_simplex",
    "flat_positions",
    "horn_inclusion",
    "horn_member",
    "horn_set",
    "point_label",
    "simplex_set",
    "validate_point",
]


@dataclass(frozen=True)
class SimplexPoint:
    """A padded weakly decreasing tuple: coords[0] top, coords[n+1] bottom."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(self.coords))
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.coords) != self.n + 2:
            raise ValueError(
                f"a dimension-{self.n} point needs {self.n + 2} coordinates"
            )

    @property
    def interior(self) -> tuple[int, ...]:
        return self.coords[1:-1]


@dataclass(frozen=True)
class HornSpec:
    """Which face (k) of which simplex dimension (n) is left out."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"face index {self.k} outside 0..{self.n}")

    @property
    def inner(self) -> bool:
        return 0 < self.k < self.n


def validate_point(lat: FiniteLattice, p: SimplexPoint) -> None:
    """Raise unless p is a genuine simplex point over lat."""
    coords = p.coords
    for v in coords:
        if not 0 <= v < lat.size:
            raise ValueError(f"coordinate {v} outside the lattice")
    if coords[0] != lat.top:
        raise ValueError("first padded coordinate must be the top")
    if coords[-1] != lat.bottom:
        raise ValueError("last padded coordinate must be the bottom")
    for j in range(len(coords) - 1):
        if not lat.leq(coords[j + 1], coords[j]):
            raise ValueError(
                f"coordinates must be weakly decreasing; position {j} fails"
            )


def flat_positions(p: SimplexPoint) -> tuple[int, ...]:
    """All j with coords[j] == coords[j+1]."""
    coords = p.coords
    return tuple(j for j in range(len(coords) - 1) if coords[j] == coords[j + 1])


def horn_member(lat: FiniteLattice, spec: HornSpec, p: SimplexPoint) -> bool:
    """Flat somewhere away from the left-out face."""
    if p.n != spec.n:
        raise ValueError(f"point has dimension {p.n}, horn expects {spec.n}")
    return any(j != spec.k for j in flat_positions(p))


def enumerate_simplex(
    lat: FiniteLattice, n: int, guard: int | None = None
) -> list[SimplexPoint]:
    """All dimension-n points in lexicographic coordinate order."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    bound = DEFAULT_SIZE_GUARD if guard is None else guard
    out: list[SimplexPoint] = []
    prefix = [lat.top]

    def extend(depth: int) -> None:
        if depth == n:
            if lat.leq(lat.bottom, prefix[-1]):
                out.append(SimplexPoint(n, tuple(prefix) + (lat.bottom,)))
                if len(out) > bound:
                    raise SizeGuardError(f"dimension-{n} simplex", len(out), bound)
            return
        for v in range(lat.size):
            if lat.leq(v, prefix[-1]):
                prefix.append(v)
                extend(depth + 1)
                prefix.pop()

    extend(0)
    return out


def enumerate_horn(
    lat: FiniteLattice, spec: HornSpec, guard: int | None = None
) -> list[SimplexPoint]:
    """Horn members in the same lexicographic order as the simplex."""
    return [
        p
        for p in enumerate_simplex(lat, spec.n, guard)
        if horn_member(lat, spec, p)
    ]


def point_label(lat: FiniteLattice, p: SimplexPoint) -> str:
    return "(" + ",".join(lat.label(v) for v in p.coords) + ")"


def simplex_set(lat: FiniteLattice, n: int, guard: int | None = None) -> FinSet:
    points = enumerate_simplex(lat, n, guard)
    return FinSet(len(points), tuple(point_label(lat, p) for p in points))


def horn_set(lat: FiniteLattice, spec: HornSpec, guard: int | None = None) -> FinSet:
    points = enumerate_horn(lat, spec, guard)
    return FinSet(len(points), tuple(point_label(lat, p) for p in points))


def horn_inclusion(
    lat: FiniteLattice, spec: HornSpec, guard: int | None = None
) -> FinMap:
    """The order-preserving injection of the horn into its simplex."""
    simplex = enumerate_simplex(lat, spec.n, guard)
    index = {p.coords: i for i, p in enumerate(simplex)}
    horn = [p for p in simplex if horn_member(lat, spec, p)]
    dom = FinSet(len(horn), tuple(point_label(lat, p) for p in horn))
    cod = FinSet(len(simplex), tuple(point_label(lat, p) for p in simplex))
    return FinMap(dom, cod, tuple(index[p.coords] for p in horn))
