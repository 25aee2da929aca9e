"""Finite bounded distributive lattices as explicit operation tables.

A lattice is a size, two square operation tables (meet and join), and
designated bottom and top elements.  The order is derived from the
tables: x <= y exactly when join(x, y) == y (equivalently, when
meet(x, y) == x; the equivalence is one of the tested laws).

Structural problems (ragged or out-of-range tables) raise
LatticeStructureError at construction.  Failures of the twelve lattice
equations are a matter of validation, not construction: build the
object, then ask validate_lattice for a report.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

__all__ = [
    "AXIOMS",
    "AxiomViolation",
    "FiniteLattice",
    "LatticeStructureError",
    "builtin_lattice",
    "lattice_from_json",
    "lattice_to_json",
    "leq",
    "make_boolean",
    "make_chain",
    "make_product",
    "validate_lattice",
]


class LatticeStructureError(Exception):
    """The raw data cannot even be read as a pair of operation tables."""


@dataclass(frozen=True)
class FiniteLattice:
    """Operation tables for a finite bounded lattice candidate."""

    size: int
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.size <= 0:
            raise LatticeStructureError("a bounded lattice needs at least one element")
        for name, table in (("meet", self.meet), ("join", self.join)):
            table = tuple(tuple(row) for row in table)
            object.__setattr__(self, name, table)
            if len(table) != self.size:
                raise LatticeStructureError(f"{name} table must have {self.size} rows")
            for i, row in enumerate(table):
                if len(row) != self.size:
                    raise LatticeStructureError(
                        f"{name} table row {i} must have {self.size} entries"
                    )
                for v in row:
                    if not 0 <= v < self.size:
                        raise LatticeStructureError(
                            f"{name} table entry {v} out of range"
                        )
        for name, v in (("bottom", self.bottom), ("top", self.top)):
            if not 0 <= v < self.size:
                raise LatticeStructureError(f"{name} element {v} out of range")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.size:
                raise LatticeStructureError("label count must match the size")

    def meet_of(self, x: int, y: int) -> int:
        return self.meet[x][y]

    def join_of(self, x: int, y: int) -> int:
        return self.join[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.join[x][y] == y

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)


def leq(lat: FiniteLattice, x: int, y: int) -> bool:
    """Derived order: x <= y iff join(x, y) == y."""
    return lat.leq(x, y)


# The twelve defining equations.  Each entry is (name, arity, check)
# where check takes the lattice and an argument tuple and returns True
# when the equation holds there.  Names use the term grammar's operator
# spellings so reports and symbolic terms read alike.
AXIOMS: tuple[tuple[str, int], ...] = (
    (r"x /\ x = x", 1),
    (r"x \/ x = x", 1),
    (r"x /\ y = y /\ x", 2),
    (r"x \/ y = y \/ x", 2),
    (r"x /\ (y /\ z) = (x /\ y) /\ z", 3),
    (r"x \/ (y \/ z) = (x \/ y) \/ z", 3),
    (r"x /\ (x \/ y) = x", 2),
    (r"x \/ (x /\ y) = x", 2),
    (r"x /\ (y \/ z) = (x /\ y) \/ (x /\ z)", 3),
    (r"x \/ (y /\ z) = (x \/ y) /\ (x \/ z)", 3),
    (r"x /\ 1 = x", 1),
    (r"x \/ 0 = x", 1),
)


def _axiom_holds(lat: FiniteLattice, name: str, args: tuple[int, ...]) -> bool:
    m, j = lat.meet_of, lat.join_of
    if name == r"x /\ x = x":
        (x,) = args
        return m(x, x) == x
    if name == r"x \/ x = x":
        (x,) = args
        return j(x, x) == x
    if name == r"x /\ y = y /\ x":
        x, y = args
        return m(x, y) == m(y, x)
    if name == r"x \/ y = y \/ x":
        x, y = args
        return j(x, y) == j(y, x)
    if name == r"x /\ (y /\ z) = (x /\ y) /\ z":
        x, y, z = args
        return m(x, m(y, z)) == m(m(x, y), z)
    if name == r"x \/ (y \/ z) = (x \/ y) \/ z":
        x, y, z = args
        return j(x, j(y, z)) == j(j(x, y), z)
    if name == r"x /\ (x \/ y) = x":
        x, y = args
        return m(x, j(x, y)) == x
    if name == r"x \/ (x /\ y) = x":
        x, y = args
        return j(x, m(x, y)) == x
    if name == r"x /\ (y \/ z) = (x /\ y) \/ (x /\ z)":
        x, y, z = args
        return m(x, j(y, z)) == j(m(x, y), m(x, z))
    if name == r"x \/ (y /\ z) = (x \/ y) /\ (x \/ z)":
        x, y, z = args
        return j(x, m(y, z)) == m(j(x, y), j(x, z))
    if name == r"x /\ 1 = x":
        (x,) = args
        return m(x, lat.top) == x
    if name == r"x \/ 0 = x":
        (x,) = args
        return j(x, lat.bottom) == x
    raise ValueError(f"unknown axiom {name!r}")


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple[int, ...]


def validate_lattice(lat: FiniteLattice) -> list[AxiomViolation]:
    """Check the twelve equations; one lex-first witness per failure."""
    import itertools

    violations = []
    for name, arity in AXIOMS:
        for args in itertools.product(range(lat.size), repeat=arity):
            if not _axiom_holds(lat, name, args):
                violations.append(AxiomViolation(name, args))
                break
    return violations


def make_chain(n: int) -> FiniteLattice:
    """The total order 0 < 1 < ... < n-1 with min and max."""
    if n < 1:
        raise ValueError("a chain needs at least one element")
    meet = tuple(tuple(min(x, y) for y in range(n)) for x in range(n))
    join = tuple(tuple(max(x, y) for y in range(n)) for x in range(n))
    return FiniteLattice(n, meet, join, 0, n - 1, tuple(str(i) for i in range(n)))


def make_boolean(k: int, bound: int = 4) -> FiniteLattice:
    """Subsets of a k-element set as bitmasks, labelled as bitstrings."""
    if k < 0:
        raise ValueError("the exponent must be nonnegative")
    if k > bound:
        raise ValueError(f"boolean lattice exponent {k} over the bound {bound}")
    n = 1 << k
    meet = tuple(tuple(x & y for y in range(n)) for x in range(n))
    join = tuple(tuple(x | y for y in range(n)) for x in range(n))
    labels = tuple(format(x, f"0{k}b") if k else "0" for x in range(n))
    return FiniteLattice(n, meet, join, 0, n - 1, labels)


def make_product(a: FiniteLattice, b: FiniteLattice) -> FiniteLattice:
    """Componentwise product; element (x, y) is coded as x * |b| + y."""
    n = a.size * b.size

    def code(x: int, y: int) -> int:
        return x * b.size + y

    def op(table_a, table_b):
        rows = []
        for x1 in range(a.size):
            for y1 in range(b.size):
                row = []
                for x2 in range(a.size):
                    for y2 in range(b.size):
                        row.append(code(table_a[x1][x2], table_b[y1][y2]))
                rows.append(tuple(row))
        return tuple(rows)

    labels = tuple(
        f"({a.label(x)},{b.label(y)})" for x in range(a.size) for y in range(b.size)
    )
    return FiniteLattice(
        n,
        op(a.meet, b.meet),
        op(a.join, b.join),
        code(a.bottom, b.bottom),
        code(a.top, b.top),
        labels,
    )


def lattice_to_json(lat: FiniteLattice) -> str:
    """Canonical file format: flat row-major tables, sorted keys."""
    data = {
        "size": lat.size,
        "meet": [v for row in lat.meet for v in row],
        "join": [v for row in lat.join for v in row],
        "bottom": lat.bottom,
        "top": lat.top,
    }
    if lat.labels is not None:
        data["labels"] = list(lat.labels)
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def lattice_from_json(text: str) -> FiniteLattice:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeStructureError(f"not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise LatticeStructureError("lattice file must hold a JSON object")
    try:
        size = data["size"]
        meet_flat = data["meet"]
        join_flat = data["join"]
        bottom = data["bottom"]
        top = data["top"]
    except KeyError as exc:
        raise LatticeStructureError(f"missing field {exc}")
    if not isinstance(size, int) or size <= 0:
        raise LatticeStructureError("size must be a positive integer")
    for name, flat in (("meet", meet_flat), ("join", join_flat)):
        if not isinstance(flat, list) or len(flat) != size * size:
            raise LatticeStructureError(
                f"{name} must be a flat row-major list of {size * size} entries"
            )
    meet = tuple(
        tuple(meet_flat[i * size : (i + 1) * size]) for i in range(size)
    )
    join = tuple(
        tuple(join_flat[i * size : (i + 1) * size]) for i in range(size)
    )
    labels = data.get("labels")
    return FiniteLattice(
        size, meet, join, bottom, top, tuple(labels) if labels is not None else None
    )


def _parse_builtin(source: str) -> tuple[FiniteLattice, str]:
    """Parse one builtin form from the front of the string.

    Returns the lattice and the unconsumed remainder, so product forms
    can nest: product:product:chain:2,chain:2,chain:3 parses fine.
    """
    for prefix in ("chain:", "boolean:"):
        if source.startswith(prefix):
            rest = source[len(prefix) :]
            digits = ""
            while rest and rest[0].isdigit():
                digits += rest[0]
                rest = rest[1:]
            if not digits:
                raise ValueError(f"{prefix}N needs a number, got {source!r}")
            n = int(digits)
            return (make_chain(n) if prefix == "chain:" else make_boolean(n)), rest
    if source.startswith("product:"):
        left, rest = _parse_builtin(source[len("product:") :])
        if not rest.startswith(","):
            raise ValueError(f"product needs two comma-separated factors: {source!r}")
        right, rest = _parse_builtin(rest[1:])
        return make_product(left, right), rest
    raise ValueError(
        f"unknown lattice source {source!r}; use chain:N, boolean:K, "
        "product:A,B, or a JSON file path"
    )


def builtin_lattice(source: str) -> FiniteLattice:
    """Resolve a lattice source: a file path or a builtin description."""
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            return lattice_from_json(fh.read())
    lat, rest = _parse_builtin(source)
    if rest:
        raise ValueError(f"trailing text {rest!r} in lattice source {source!r}")
    return lat
