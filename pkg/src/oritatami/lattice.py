"""Geometry of the triangular lattice in axial coordinates.

A point ``(x, y)`` sits at ``x * (1, 0) + y * (1/2, sqrt(3)/2)`` in the plane.
The six unit directions are listed counter-clockwise starting from east, so
turning left by 60 degrees is ``+1`` on a direction index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple, Sequence


class LatticePoint(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticePoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticePoint(self.x - other[0], self.y - other[1])

    def scale(self, k: int) -> "LatticePoint":
        return LatticePoint(self.x * k, self.y * k)

    def __neg__(self):
        return LatticePoint(-self.x, -self.y)


ORIGIN = LatticePoint(0, 0)

DIRECTIONS: tuple[LatticePoint, ...] = (
    LatticePoint(1, 0),
    LatticePoint(0, 1),
    LatticePoint(-1, 1),
    LatticePoint(-1, 0),
    LatticePoint(0, -1),
    LatticePoint(1, -1),
)


def neighbors(p) -> list[LatticePoint]:
    """The six lattice neighbours of ``p`` in counter-clockwise order."""
    x, y = p
    return [LatticePoint(x + dx, y + dy) for dx, dy in DIRECTIONS]


def hex_distance(p, q) -> int:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return (abs(dx) + abs(dy) + abs(dx + dy)) // 2


def is_adjacent(p, q) -> bool:
    return hex_distance(p, q) == 1


def hex_region(center, radius: int) -> set[LatticePoint]:
    """All points within hex distance ``radius`` of ``center``."""
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    cx, cy = center
    out = set()
    for dx in range(-radius, radius + 1):
        lo = max(-radius, -dx - radius)
        hi = min(radius, -dx + radius)
        for dy in range(lo, hi + 1):
            out.add(LatticePoint(cx + dx, cy + dy))
    return out


def hex_region_size(radius: int) -> int:
    return 1 + 3 * radius * (radius + 1)


def to_plane(p) -> tuple[float, float]:
    """Cartesian coordinates of a lattice point at unit spacing."""
    return (p[0] + 0.5 * p[1], p[1] * 0.8660254037844386)


# Linear parts of the 12 point isometries as integer matrices ((a, b), (c, d))
# acting on column vectors: x' = a*x + b*y, y' = c*x + d*y.
_ROT60 = ((0, -1), (1, 1))
_REFLECT = ((0, 1), (1, 0))
_IDENTITY = ((1, 0), (0, 1))


def _matmul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def _linear(rotation: int, reflected: bool):
    m = _REFLECT if reflected else _IDENTITY
    for _ in range(rotation % 6):
        m = _matmul(_ROT60, m)
    return m


_MATRIX_TO_KEY = {_linear(r, f): (r, f) for r in range(6) for f in (False, True)}


@dataclass(frozen=True)
class Isometry:
    """Lattice isometry ``p -> rotate(reflect(p)) + translation``.

    ``rotation`` counts counter-clockwise 60 degree turns; the reflection
    swaps the two axial coordinates and is applied first.
    """

    rotation: int = 0
    reflected: bool = False
    translation: LatticePoint = ORIGIN

    def __post_init__(self):
        object.__setattr__(self, "rotation", self.rotation % 6)
        object.__setattr__(self, "translation", LatticePoint(*self.translation))

    @property
    def matrix(self):
        return _linear(self.rotation, self.reflected)

    def apply_linear(self, p) -> LatticePoint:
        (a, b), (c, d) = self.matrix
        return LatticePoint(a * p[0] + b * p[1], c * p[0] + d * p[1])

    def __call__(self, p) -> LatticePoint:
        q = self.apply_linear(p)
        return LatticePoint(q.x + self.translation.x, q.y + self.translation.y)

    def apply_all(self, points: Iterable) -> list[LatticePoint]:
        return [self(p) for p in points]

    def compose(self, other: "Isometry") -> "Isometry":
        """Return ``self ∘ other`` (apply ``other`` first)."""
        m = _matmul(self.matrix, other.matrix)
        rotation, reflected = _MATRIX_TO_KEY[m]
        return Isometry(rotation, reflected, self(other.translation))

    def inverse(self) -> "Isometry":
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        inv = ((d * det, -b * det), (-c * det, a * det))
        rotation, reflected = _MATRIX_TO_KEY[inv]
        lin = Isometry(rotation, reflected)
        t = lin.apply_linear(self.translation)
        return Isometry(rotation, reflected, LatticePoint(-t.x, -t.y))


POINT_GROUP: tuple[Isometry, ...] = tuple(
    Isometry(r, f) for f in (False, True) for r in range(6)
)


@dataclass(frozen=True)
class CanonicalForm:
    """Result of canonicalizing a decorated point sequence.

    ``transforms`` holds every isometry mapping the input onto the canonical
    frame (more than one when the input has a nontrivial symmetry).
    """

    key: str
    points: tuple[LatticePoint, ...]
    transforms: tuple[Isometry, ...]


def _serialize(points, labels, bonds):
    return (
        tuple((p[0], p[1], lab) for p, lab in zip(points, labels)),
        tuple(sorted(bonds)),
    )


def canonical_form(
    points: Sequence,
    labels: Sequence[Hashable] | None = None,
    bonds: Iterable[tuple[int, int]] = (),
) -> CanonicalForm:
    """Canonical representative of a decorated point sequence up to congruence.

    Every one of the 12 point isometries is applied, each image is translated
    so its lexicographically smallest point lands on the origin, and the
    smallest serialization wins. Sequence order is part of the data, so a
    path and its reversal are generally different.
    """
    if not points:
        raise ValueError("cannot canonicalize an empty point sequence")
    if labels is None:
        labels = [""] * len(points)
    labels = [str(lab) for lab in labels]
    bonds = [tuple(sorted(b)) for b in bonds]
    best = None
    best_points = None
    winners: list[Isometry] = []
    for g in POINT_GROUP:
        image = [g.apply_linear(p) for p in points]
        m = min(image)
        shifted = [LatticePoint(p.x - m.x, p.y - m.y) for p in image]
        ser = _serialize(shifted, labels, bonds)
        full = Isometry(g.rotation, g.reflected, LatticePoint(-m.x, -m.y))
        if best is None or ser < best:
            best, best_points, winners = ser, shifted, [full]
        elif ser == best:
            winners.append(full)
    return CanonicalForm(repr(best), tuple(best_points), tuple(winners))


def canonicalize(points: Sequence, labels=None, bonds=()) -> str:
    return canonical_form(points, labels, bonds).key

