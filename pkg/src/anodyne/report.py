"""Check records, run configuration, and report rendering.

A verification run produces one CheckRecord per check.  Statuses:
"pass" (the law held), "fail" (it did not), "xfail" (it failed exactly
as predicted; outer horns and known non-orthogonal pairs), and "skip"
(not attempted, with the reason in the witness).  Only "fail" makes a
run unsuccessful.  The JSON rendering is canonical: same config and
seed give byte-identical output apart from the duration fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .fincat import DEFAULT_SIZE_GUARD
from .lattice import FiniteLattice, builtin_lattice

__all__ = [
    "CheckRecord",
    "RunConfig",
    "VerificationReport",
    "SUITE_NAMES",
]

SUITE_NAMES = (
    "adjunction",
    "fiberwise-join",
    "orthogonality",
    "closure",
    "retract",
    "symbolic",
)


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check_id: str
    law: str
    status: str  # "pass" | "fail" | "xfail" | "skip"
    witness: str | None = None
    duration_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; echoed verbatim into the report."""

    lattices: tuple[str, ...] = ("chain:2", "chain:3", "chain:4", "boolean:2")
    nmax: int | None = None
    guard: int = DEFAULT_SIZE_GUARD
    seed: int = 0
    instances: int = 100
    suites: tuple[str, ...] = SUITE_NAMES

    def __post_init__(self) -> None:
        if self.nmax is not None and self.nmax < 1:
            raise ValueError("dimension bound must be positive")
        if self.guard < 1 or self.instances < 0:
            raise ValueError("guard must be positive and instances nonnegative")
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise ValueError(f"unknown suite: {s!r}")

    def nmax_for(self, lat: FiniteLattice) -> int:
        """Per-lattice dimension bound: 5 up to three elements, else 3."""
        if self.nmax is not None:
            return self.nmax
        return 5 if lat.size <= 3 else 3

    @property
    def symbolic_bound(self) -> int:
        return self.nmax if self.nmax is not None else 12

    def resolve_lattices(self) -> list[tuple[str, FiniteLattice]]:
        return [(src, builtin_lattice(src)) for src in self.lattices]

    def as_json(self) -> dict:
        return {
            "lattices": list(self.lattices),
            "nmax": self.nmax,
            "guard": self.guard,
            "seed": self.seed,
            "instances": self.instances,
            "suites": list(self.suites),
        }


@dataclass
class VerificationReport:
    config: RunConfig
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "xfail": 0, "skip": 0}
        for c in self.checks:
            counts[c.status] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def as_json(self) -> dict:
        return {
            "schema_version": 1,
            "tool": "anodyne",
            "version": __version__,
            "config": self.config.as_json(),
            "checks": [
                {
                    "suite": c.suite,
                    "check_id": c.check_id,
                    "law": c.law,
                    "status": c.status,
                    "witness": c.witness,
                    "duration_ms": round(c.duration_ms, 3),
                }
                for c in self.checks
            ],
            "summary": self.summary,
        }

    def render_json(self) -> str:
        return json.dumps(self.as_json(), indent=2, sort_keys=True) + "\n"

    def render_text(self) -> str:
        lines = []
        width = max((len(f"{c.suite}/{c.check_id}") for c in self.checks), default=0)
        for c in self.checks:
            name = f"{c.suite}/{c.check_id}"
            line = f"[{c.status:>5}] {name:<{width}}  {c.law}"
            if c.witness:
                line += f"  ({c.witness})"
            lines.append(line)
        s = self.summary
        lines.append(
            f"{s['total']} checks: {s['pass']} passed, {s['fail']} failed,"
            f" {s['xfail']} expected failures, {s['skip']} skipped"
            f"  [seed {self.config.seed}]"
        )
        return "\n".join(lines) + "\n"
