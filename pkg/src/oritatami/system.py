"""Oritatami system data types: alphabet, ruleset, transcript, configurations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import LatticePoint, canonicalize, is_adjacent


@dataclass(frozen=True)
class Ruleset:
    """Symmetric attraction rules, stored as unordered pairs."""

    pairs: frozenset = frozenset()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "Ruleset":
        return cls(frozenset(frozenset((a, b)) for a, b in pairs))

    def allows(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.pairs

    def sorted_pairs(self) -> list[tuple[str, str]]:
        out = []
        for pair in self.pairs:
            items = sorted(pair)
            out.append((items[0], items[-1]))
        return sorted(out)

    def symbols(self) -> set[str]:
        return {s for pair in self.pairs for s in pair}


@dataclass(frozen=True)
class Transcript:
    """A finite bead sequence, or the infinite repetition of a period word."""

    kind: str
    beads: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in ("finite", "cyclic"):
            raise ValueError(f"transcript kind must be 'finite' or 'cyclic', got {self.kind!r}")
        object.__setattr__(self, "beads", tuple(self.beads))
        if not self.beads:
            raise ValueError("transcript must be nonempty")

    @classmethod
    def cyclic(cls, beads: Sequence[str]) -> "Transcript":
        return cls("cyclic", tuple(beads))

    @classmethod
    def finite(cls, beads: Sequence[str]) -> "Transcript":
        return cls("finite", tuple(beads))

    @property
    def is_cyclic(self) -> bool:
        return self.kind == "cyclic"

    @property
    def period(self) -> int | None:
        return len(self.beads) if self.is_cyclic else None

    @property
    def length(self) -> int | None:
        """Number of beads, or ``None`` for an infinite transcript."""
        return None if self.is_cyclic else len(self.beads)

    def bead(self, t: int) -> str:
        """Bead type at 0-based transcript position ``t``."""
        if self.is_cyclic:
            return self.beads[t % len(self.beads)]
        return self.beads[t]

    def has(self, t: int) -> bool:
        return t >= 0 and (self.is_cyclic or t < len(self.beads))

    def window(self, t: int, k: int) -> tuple[str, ...]:
        """Up to ``k`` bead types starting at ``t``, truncated at the end."""
        return tuple(self.bead(s) for s in range(t, t + k) if self.has(s))

    def phase(self, t: int) -> int | None:
        return t % len(self.beads) if self.is_cyclic else None


@dataclass(frozen=True)
class Configuration:
    """A directed bead path on the lattice with its interaction set.

    Bead indices are 0-based over the whole path. ``bonds`` holds pairs
    ``(i, j)`` with ``i + 2 <= j``.
    """

    path: tuple[LatticePoint, ...]
    beads: tuple[str, ...]
    bonds: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(LatticePoint(*p) for p in self.path))
        object.__setattr__(self, "beads", tuple(self.beads))
        object.__setattr__(self, "bonds", frozenset(tuple(sorted(b)) for b in self.bonds))

    def __len__(self) -> int:
        return len(self.path)

    @property
    def head(self) -> LatticePoint:
        return self.path[-1]

    def bond_counts(self) -> list[int]:
        counts = [0] * len(self.path)
        for i, j in self.bonds:
            counts[i] += 1
            counts[j] += 1
        return counts

    def energy(self) -> int:
        return -len(self.bonds)

    def occupancy(self) -> dict[LatticePoint, int]:
        return {p: i for i, p in enumerate(self.path)}

    def prefix(self, n: int) -> "Configuration":
        bonds = frozenset(b for b in self.bonds if b[1] < n)
        return Configuration(self.path[:n], self.beads[:n], bonds)

    def extended(self, p, bead: str, partners: Iterable[int] = ()) -> "Configuration":
        n = len(self.path)
        new_bonds = frozenset((i, n) for i in partners)
        return Configuration(self.path + (LatticePoint(*p),), self.beads + (bead,), self.bonds | new_bonds)

    def conformation_key(self) -> str:
        return canonicalize(self.path, self.beads, self.bonds)

    def violations(self, ruleset: Ruleset | None = None, arity: int | None = None) -> list[str]:
        """Human-readable descriptions of every broken configuration invariant."""
        out = []
        if len(self.beads) != len(self.path):
            out.append(f"bead count {len(self.beads)} differs from path length {len(self.path)}")
        seen: dict[LatticePoint, int] = {}
        for i, p in enumerate(self.path):
            if p in seen:
                out.append(f"self-intersection: beads {seen[p]} and {i} share point {tuple(p)}")
            seen[p] = i
            if i > 0 and not is_adjacent(self.path[i - 1], p):
                out.append(f"path gap: beads {i - 1} and {i} are not adjacent")
        n = len(self.path)
        for i, j in sorted(self.bonds):
            if not (0 <= i < n and 0 <= j < n):
                out.append(f"bond ({i},{j}) references a missing bead")
                continue
            if j - i < 2:
                out.append(f"bond ({i},{j}): interaction span < 2")
            if not is_adjacent(self.path[i], self.path[j]):
                out.append(f"bond ({i},{j}): beads are not adjacent")
            if ruleset is not None and i < len(self.beads) and j < len(self.beads):
                if not ruleset.allows(self.beads[i], self.beads[j]):
                    out.append(f"bond ({i},{j}): pair ({self.beads[i]},{self.beads[j]}) not in ruleset")
        if arity is not None:
            for i, c in enumerate(self.bond_counts()):
                if c > arity:
                    out.append(f"bead {i}: arity violation ({c} interactions > {arity})")
        return out


@dataclass(frozen=True)
class Conformation:
    """Congruence class of a configuration, compared by canonical key."""

    representative: Configuration
    canonical_key: str = field(default="")

    def __post_init__(self):
        if not self.canonical_key:
            object.__setattr__(self, "canonical_key", self.representative.conformation_key())

    def __eq__(self, other):
        if not isinstance(other, Conformation):
            return NotImplemented
        return self.canonical_key == other.canonical_key

    def __hash__(self):
        return hash(self.canonical_key)


@dataclass(frozen=True)
class OritatamiSystem:
    alphabet: tuple[str, ...]
    transcript: Transcript
    ruleset: Ruleset
    delay: int
    arity: int
    seed: Configuration

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @property
    def seed_length(self) -> int:
        return len(self.seed)


class SystemValidationError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


def validate_system(system: OritatamiSystem) -> list[str]:
    """Every violated invariant of ``system``; an empty list means valid."""
    out = []
    if not system.alphabet:
        out.append("alphabet is empty")
    if len(set(system.alphabet)) != len(system.alphabet):
        out.append("alphabet symbols are not unique")
    alphabet = set(system.alphabet)
    if system.delay < 1:
        out.append(f"delay must be >= 1, got {system.delay}")
    if system.arity < 1:
        out.append(f"arity must be >= 1, got {system.arity}")
    for k, b in enumerate(system.transcript.beads):
        if b not in alphabet:
            out.append(f"transcript position {k}: symbol {b!r} not in alphabet")
    for s in sorted(system.ruleset.symbols() - alphabet):
        out.append(f"rule symbol {s!r} not in alphabet")
    if len(system.seed) == 0:
        out.append("seed is empty")
    for k, b in enumerate(system.seed.beads):
        if b not in alphabet:
            out.append(f"seed bead {k}: symbol {b!r} not in alphabet")
    out.extend("seed " + v for v in system.seed.violations(system.ruleset, system.arity))
    return out
