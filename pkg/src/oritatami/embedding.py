"""Shape decompositions of curves in the bead lattice and drawing checks.

A curve becomes an alternating sequence ``S_p[1], S_l[1], S_p[2], ...`` of
point-shapes and segment-shapes. Shapes are stored in one flat tuple; a
vertex ``v`` (0-based) owns position ``2v`` and segment ``v`` owns ``2v + 1``.

Koch construction
    Curve directions map to the six second-neighbour directions of the bead
    lattice, so a segment leaves its point-hexagon (radius ``d - 1``, side
    ``d``) through a flat face. The segment-shape is ``2l + 1`` lattice rows
    parallel to that face with ``d`` and ``d + 1`` points alternately,
    shifted half a step to the left of travel. Vertex spacing is
    ``d + l`` times the second-neighbour vector.

Minkowski construction
    Square-lattice coordinates are sheared onto the axial axes (x right,
    y upper right). A vertex is the ``d x d`` rhombus at
    ``(d + l) * (x, y)``; a segment is the ``d x l`` parallelogram between
    two rhombi.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .lattice import Isometry, LatticePoint, hex_region, neighbors
from .lsystem import Curve

POINT = "point"
SEGMENT = "segment"


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class ShapeParams:
    d: int
    l: int

    def __post_init__(self):
        if self.d < 1 or self.l < 1:
            raise ValueError(f"shape parameters must be positive, got d={self.d}, l={self.l}")


@dataclass(frozen=True)
class Shape:
    kind: str
    points: frozenset
    index: int  # position in the alternating sequence

    @property
    def curve_index(self) -> int:
        """Vertex or segment number this shape stands for."""
        return self.index // 2


@dataclass(frozen=True)
class ShapeSequence:
    shapes: tuple[Shape, ...]
    params: ShapeParams
    curve: Curve | None = None
    construction: str = "custom"
    _owner: dict = field(default=None, compare=False, repr=False)

    @property
    def n_points(self) -> int:
        return (len(self.shapes) + 1) // 2

    @property
    def n_segments(self) -> int:
        return len(self.shapes) // 2

    def point_shape(self, v: int) -> Shape:
        return self.shapes[2 * v]

    def segment_shape(self, v: int) -> Shape:
        return self.shapes[2 * v + 1]

    def owner(self) -> dict:
        """Map from lattice point to the position of the shape holding it."""
        if self._owner is None:
            table = {}
            for s in self.shapes:
                for p in s.points:
                    table.setdefault(p, s.index)
            object.__setattr__(self, "_owner", table)
        return self._owner

    def transformed(self, g: Isometry) -> "ShapeSequence":
        shapes = tuple(Shape(s.kind, frozenset(g(p) for p in s.points), s.index) for s in self.shapes)
        return ShapeSequence(shapes, self.params, self.curve, self.construction)


def _koch_segment_template(params: ShapeParams) -> list[LatticePoint]:
    """Segment-shape leaving the origin hexagon towards ``(1, 1)``."""
    d, l = params.d, params.l
    out = []
    for r in range(2 * l + 1):
        m = d + r  # row is the line x + y = m
        c = d if r % 2 == 0 else d + 1
        for t in range(m + 1):
            if 2 - c <= 2 * t - m <= c:
                out.append(LatticePoint(m - t, t))
    return out


def koch_center(v, params: ShapeParams) -> LatticePoint:
    """Bead-lattice image of a Koch-lattice vertex."""
    a, b = v
    k = params.d + params.l
    return LatticePoint(k * (a - b), k * (a + 2 * b))


def _check(seq: ShapeSequence) -> ShapeSequence:
    problems = validate_shape_sequence(seq, first_only=True)
    if problems:
        raise EmbeddingError(f"invalid shape parameters {seq.params}: {problems[0]}")
    return seq


def embed_koch(curve: Curve, params: ShapeParams, check: bool = True) -> ShapeSequence:
    if curve.lattice != "triangular":
        raise EmbeddingError(f"Koch embedding needs a triangular-lattice curve, got {curve.lattice}")
    template = _koch_segment_template(params)
    rotated = [[Isometry(k).apply_linear(p) for p in template] for k in range(6)]
    shapes = []
    dirs = curve.directions()
    for v, vertex in enumerate(curve.vertices):
        c = koch_center(vertex, params)
        shapes.append(Shape(POINT, frozenset(hex_region(c, params.d - 1)), 2 * v))
        if v < len(dirs):
            pts = frozenset(LatticePoint(c.x + p.x, c.y + p.y) for p in rotated[dirs[v]])
            shapes.append(Shape(SEGMENT, pts, 2 * v + 1))
    seq = ShapeSequence(tuple(shapes), params, curve, "koch-face-strip-left")
    return _check(seq) if check else seq


def minkowski_corner(v, params: ShapeParams) -> LatticePoint:
    k = params.d + params.l
    return LatticePoint(k * v[0], k * v[1])


def rhombus_point_shape(x: int, y: int, params: ShapeParams) -> frozenset:
    """Point-shape for square-lattice vertex ``(x, y)``."""
    c = minkowski_corner((x, y), params)
    d = params.d
    return frozenset(LatticePoint(c.x + a, c.y + b) for a in range(d) for b in range(d))


def rhombus_segment_shape(x: int, y: int, dx: int, dy: int, params: ShapeParams) -> frozenset:
    """Segment-shape leaving vertex ``(x, y)`` in unit direction ``(dx, dy)``."""
    if abs(dx) + abs(dy) != 1:
        raise ValueError(f"({dx},{dy}) is not a unit square-lattice direction")
    c = minkowski_corner((x, y), params)
    d, l = params.d, params.l
    # offset along the segment axis: past the rhombus going up, before it going down
    along = [d + s for s in range(l)] if dx + dy > 0 else [-l + s for s in range(l)]
    if dx:
        return frozenset(LatticePoint(c.x + s, c.y + w) for s in along for w in range(d))
    return frozenset(LatticePoint(c.x + w, c.y + s) for s in along for w in range(d))


# aliases matching the usual S_p(x, y) / S_l(x, y, x', y') notation
S_p = rhombus_point_shape
S_l = rhombus_segment_shape


def embed_minkowski(curve: Curve, params: ShapeParams, check: bool = True) -> ShapeSequence:
    if curve.lattice != "rhombus":
        raise EmbeddingError(f"Minkowski embedding needs a rhombus-lattice curve, got {curve.lattice}")
    shapes = []
    verts = curve.vertices
    for v, (x, y) in enumerate(verts):
        shapes.append(Shape(POINT, rhombus_point_shape(x, y, params), 2 * v))
        if v + 1 < len(verts):
            nx, ny = verts[v + 1]
            shapes.append(Shape(SEGMENT, rhombus_segment_shape(x, y, nx - x, ny - y, params), 2 * v + 1))
    seq = ShapeSequence(tuple(shapes), params, curve, "minkowski-rhombus")
    return _check(seq) if check else seq


def embed_curve(curve: Curve, params: ShapeParams, check: bool = True) -> ShapeSequence:
    if curve.lattice == "triangular":
        return embed_koch(curve, params, check)
    return embed_minkowski(curve, params, check)


def _connected(points: frozenset) -> bool:
    if not points:
        return False
    start = next(iter(points))
    seen = {start}
    todo = deque([start])
    while todo:
        p = todo.popleft()
        for q in neighbors(p):
            if q in points and q not in seen:
                seen.add(q)
                todo.append(q)
    return len(seen) == len(points)


def _contact_allowed(a: int, b: int, corner_contacts: bool) -> bool:
    # two segment-shapes around one vertex-shape (positions 2v-1, 2v+1)
    return corner_contacts and b - a == 2 and a % 2 == 1


def validate_shape_sequence(seq: ShapeSequence, first_only: bool = False,
                            corner_contacts: bool | None = None) -> list[str]:
    """Connectivity, alternation, disjointness and adjacency-iff-consecutive.

    With ``corner_contacts`` the two segment-shapes flanking one point-shape
    may touch. A rhombus has two 60 degree corners, so the Minkowski
    construction needs this; by default it is allowed for that construction
    only.
    """
    if corner_contacts is None:
        corner_contacts = seq.construction == "minkowski-rhombus"
    out: list[str] = []

    def report(msg):
        out.append(msg)
        return first_only

    for k, s in enumerate(seq.shapes):
        if s.index != k:
            if report(f"shape at position {k} carries index {s.index}"):
                return out
        want = POINT if k % 2 == 0 else SEGMENT
        if s.kind != want:
            if report(f"shape {k}: expected a {want}-shape, found {s.kind}"):
                return out
        if not s.points:
            if report(f"shape {k}: empty"):
                return out
        elif not _connected(s.points):
            if report(f"shape {k}: point set is not connected"):
                return out
    owner: dict = {}
    for s in seq.shapes:
        for p in s.points:
            if p in owner:
                if report(f"shapes {owner[p]} and {s.index} overlap at {tuple(p)}"):
                    return out
            else:
                owner[p] = s.index
    touching = set()
    flagged = set()
    for p, k in owner.items():
        for q in neighbors(p):
            j = owner.get(q)
            if j is None or j == k:
                continue
            a, b = min(j, k), max(j, k)
            if b - a == 1:
                touching.add(a)
            elif not _contact_allowed(a, b, corner_contacts) and (a, b) not in flagged:
                flagged.add((a, b))
                if report(f"non-consecutive shapes {a} and {b} are adjacent"):
                    return out
    for k in range(len(seq.shapes) - 1):
        if k not in touching:
            if report(f"consecutive shapes {k} and {k + 1} are not adjacent"):
                return out
    return out


@dataclass(frozen=True)
class DrawingViolation:
    bead: int
    shape: int | None
    reason: str


@dataclass(frozen=True)
class DrawingWitness:
    """Cut indices ``i_k`` (last bead inside shape ``k``) or the first failure.

    Bead indices are global (seed included). ``counts`` holds beads per
    visited shape.
    """

    indices: tuple[int, ...]
    violation: DrawingViolation | None
    counts: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.violation is None

    def complete_counts(self, kind: str) -> list[int]:
        """Bead counts of fully traversed shapes of one kind (last shape excluded)."""
        parity = 0 if kind == POINT else 1
        return [c for k, c in enumerate(self.counts[:-1]) if k % 2 == parity]

    def constant_counts(self, kind: str) -> bool:
        return len(set(self.complete_counts(kind))) <= 1


def verify_path(points, seq_or_owner, start: int = 0) -> DrawingWitness:
    """Greedy drawing check for the bead positions ``points[start:]``.

    Shapes are disjoint, so each bead lies in at most one shape and the
    segmentation, if one exists, is forced: shape positions along the path
    must start at 0 and climb by at most one per bead.
    """
    owner = seq_or_owner.owner() if isinstance(seq_or_owner, ShapeSequence) else seq_or_owner
    indices: list[int] = []
    counts: list[int] = []
    current = -1
    for g in range(start, len(points)):
        k = owner.get(LatticePoint(*points[g]))
        if k is None:
            return DrawingWitness(tuple(indices), DrawingViolation(g, None, "bead lies outside every shape"), tuple(counts))
        if k == current:
            counts[-1] += 1
            indices[-1] = g
        elif k == current + 1:
            current = k
            indices.append(g)
            counts.append(1)
        elif k < current:
            return DrawingWitness(tuple(indices), DrawingViolation(g, k, f"bead returns to shape {k} after shape {current}"), tuple(counts))
        else:
            return DrawingWitness(tuple(indices), DrawingViolation(g, k, f"bead enters shape {k}, skipping shape {current + 1}"), tuple(counts))
    return DrawingWitness(tuple(indices), None, tuple(counts))


def verify_drawing(fold, seq: ShapeSequence) -> DrawingWitness:
    """Check whether a folded configuration draws ``seq``; seed beads are exempt."""
    return verify_path(fold.configuration.path, seq, start=fold.seed_length)
