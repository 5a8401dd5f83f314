"""Dependency depth of curve embeddings and pigeonhole impossibility checks.

For each shape pair ``S_pl[i]`` (1-based, point-shape plus following
segment-shape) the maximal horizon ``E(i, n)`` is the set of points within
``delta(n) + 1`` of ``S_pl[i]`` or of the points of ``S_l[i-1]`` touching
``S_p[i]``. ``r_i`` is the earliest point-shape reaching into it (or, with
``reach="pair"``, the earliest shape of either kind) and
``D_i = max_{j <= i} (j - r_j)`` bounds how far back stabilization in
``S_pl[i]`` can look. Once ``1 + gcd(p_o, p_pl) * 5**(D * p_pl) <= i`` two
shape pairs must repeat their whole context, which forces a periodic turn
sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from .embedding import ShapeSequence, embed_curve
from .lattice import hex_region, neighbors
from .lsystem import LSystem, TurtleSemantics, expand, interpret_turtle

DESK_SCALE_CAVEAT = (
    "constancy of D over a finite window is evidence computed at desk scale, not a proof for all i"
)


class BoundaryError(ValueError):
    """The horizon reaches the end of the expanded curve; expand deeper."""


@dataclass(frozen=True)
class DelayBoundFamily:
    """Upper delay bounds ``delta(n) = c0 + cd * d + cl * l`` per level ``n``."""

    curve: str
    bounds: dict  # n -> (c0, cd, cl)

    def __post_init__(self):
        levels = sorted(self.bounds)
        if not levels or levels[0] < 1:
            raise ValueError("delay bound levels start at n = 1")
        for a, b in zip(levels, levels[1:]):
            lo, hi = self.bounds[a], self.bounds[b]
            if any(x > y for x, y in zip(lo, hi)) or lo == hi:
                raise ValueError(f"delay bound must increase from level {a} to {b}")

    @property
    def levels(self) -> list[int]:
        return sorted(self.bounds)

    def delay(self, n: int, d: int, l: int) -> int:
        if n not in self.bounds:
            raise KeyError(f"no delay bound for level {n} of {self.curve}; supply one explicitly")
        c0, cd, cl = self.bounds[n]
        return c0 + cd * d + cl * l

    def extended(self, n: int, c0: int, cd: int, cl: int) -> "DelayBoundFamily":
        return DelayBoundFamily(self.curve, {**self.bounds, n: (c0, cd, cl)})


KOCH_DELAYS = DelayBoundFamily("koch", {1: (1, 3, 3), 2: (10, 12, 12)})
MINKOWSKI_DELAYS = DelayBoundFamily("minkowski", {1: (4, 3, 3), 2: (28, 15, 15)})


def _cube(points) -> np.ndarray:
    a = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    return np.column_stack([a[:, 0], a[:, 1], a[:, 0] + a[:, 1]])


REACH_MODES = ("point", "pair")


class ShapeIndex:
    """Spatial index over every shape point, tagged with its 1-based pair index.

    Hex distance equals Chebyshev distance in cube coordinates
    ``(x, y, x + y)``, so range queries go through a k-d tree with ``p = inf``.
    """

    def __init__(self, seq: ShapeSequence):
        self.seq = seq
        pts, tags, is_point = [], [], []
        for s in seq.shapes:
            pts.extend(s.points)
            tags.extend([s.index // 2 + 1] * len(s.points))
            is_point.extend([s.index % 2 == 0] * len(s.points))
        self.tags = np.asarray(tags, dtype=np.int64)
        self.is_point = np.asarray(is_point, dtype=bool)
        self.tree = cKDTree(_cube(pts))
        self.last = seq.n_points

    def _hits(self, centers, radius: int) -> np.ndarray:
        hits = self.tree.query_ball_point(_cube(centers), r=radius + 0.5, p=np.inf)
        return np.fromiter((k for h in hits for k in h), dtype=np.int64)

    def pairs_within(self, centers, radius: int) -> np.ndarray:
        idx = self._hits(centers, radius)
        return np.unique(self.tags[idx]) if idx.size else idx

    def split_within(self, centers, radius: int) -> tuple[np.ndarray, np.ndarray]:
        """Pairs with any shape in range, and pairs whose point-shape is in range."""
        idx = self._hits(centers, radius)
        if not idx.size:
            return idx, idx
        return np.unique(self.tags[idx]), np.unique(self.tags[idx[self.is_point[idx]]])


def horizon_centers(seq: ShapeSequence, i: int) -> set:
    """Centres of the hexagons making up ``E(i, n)`` (``i`` is 1-based)."""
    v = i - 1
    if v >= seq.n_segments:
        raise BoundaryError(f"shape pair {i} has no segment-shape in an expansion with {seq.n_points} points")
    sp = seq.point_shape(v).points
    centers = set(sp) | set(seq.segment_shape(v).points)
    if v > 0:
        prev = seq.segment_shape(v - 1).points
        centers |= {q for p in sp for q in neighbors(p) if q in prev}
    return centers


@dataclass(frozen=True)
class HorizonRegion:
    i: int
    level: int
    delay: int
    region: frozenset
    intersecting: tuple[int, ...]  # 1-based shape-pair indices, past and future


def _check_interior(seq: ShapeSequence, i: int, intersecting) -> None:
    if len(intersecting) and max(intersecting) >= seq.n_points:
        raise BoundaryError(f"horizon of shape pair {i} reaches the end of the expanded curve")


def horizon_region(i: int, n: int, seq: ShapeSequence, family: DelayBoundFamily) -> HorizonRegion:
    """Literal union-of-hexagons construction of ``E(i, n)``."""
    delay = family.delay(n, seq.params.d, seq.params.l)
    region: set = set()
    for c in horizon_centers(seq, i):
        region |= hex_region(c, delay + 1)
    owner = seq.owner()
    hits = sorted({owner[p] // 2 + 1 for p in region if p in owner})
    _check_interior(seq, i, hits)
    return HorizonRegion(i, n, delay, frozenset(region), tuple(hits))


def intersecting_pairs(i: int, n: int, seq: ShapeSequence, family: DelayBoundFamily,
                       index: ShapeIndex | None = None) -> tuple[int, ...]:
    """Shape pairs meeting ``E(i, n)``, via the spatial index (no region materialized)."""
    if index is None:
        index = ShapeIndex(seq)
    delay = family.delay(n, seq.params.d, seq.params.l)
    hits = index.pairs_within(sorted(horizon_centers(seq, i)), delay + 1)
    _check_interior(seq, i, hits)
    return tuple(int(h) for h in hits)


@dataclass(frozen=True)
class DependencyProfile:
    level: int
    delay: int
    window: tuple[int, int]
    reach: dict  # i -> r_i for 1 <= i <= window end
    depth: dict  # i -> D_i
    past_sets: dict = field(default_factory=dict, repr=False)  # i -> past pairs met, window only
    mode: str = "point"

    @property
    def window_depths(self) -> list[int]:
        a, b = self.window
        return [self.depth[i] for i in range(a, b + 1)]

    @property
    def constant(self) -> bool:
        return len(set(self.window_depths)) == 1

    @property
    def max_depth(self) -> int:
        return max(self.window_depths)

    @property
    def settled_at(self) -> int:
        """First index at which D reaches its value at the window end."""
        final = self.depth[self.window[1]]
        return min(i for i, v in self.depth.items() if v == final)


def dependency_depth(seq: ShapeSequence, family: DelayBoundFamily, n: int,
                     window: tuple[int, int], index: ShapeIndex | None = None,
                     reach: str = "point") -> DependencyProfile:
    """Reach and depth for every pair up to the window end.

    ``reach="point"`` takes ``r_i`` as the earliest point-shape meeting
    ``E(i, n)``; ``reach="pair"`` also counts segment-shapes. ``past_sets``
    always records every past pair met, of either kind.
    """
    if reach not in REACH_MODES:
        raise ValueError(f"reach must be one of {REACH_MODES}, got {reach!r}")
    a, b = window
    if not 1 <= a <= b:
        raise ValueError(f"bad window {window}")
    if index is None:
        index = ShapeIndex(seq)
    delay = family.delay(n, seq.params.d, seq.params.l)
    reaches, depth, past = {}, {}, {}
    running = 0
    for i in range(1, b + 1):
        if i > seq.n_segments:
            raise BoundaryError(f"shape pair {i} has no segment-shape in an expansion with {seq.n_points} points")
        hits, point_hits = index.split_within(sorted(horizon_centers(seq, i)), delay + 1)
        _check_interior(seq, i, hits)
        earlier = [int(h) for h in hits if h <= i]
        # S_p[i] is a centre of its own horizon, so point_hits is never empty
        pool = earlier if reach == "pair" else [int(h) for h in point_hits if h <= i]
        reaches[i] = min(pool)
        running = max(running, i - reaches[i])
        depth[i] = running
        if i >= a:
            past[i] = tuple(earlier)
    return DependencyProfile(n, delay, (a, b), reaches, depth, past, reach)


@lru_cache(maxsize=None)
def pigeonhole_threshold(depth: int, p_o: int, p_pl: int) -> int:
    """``1 + gcd(p_o, p_pl) * 5**(depth * p_pl)`` as an exact integer."""
    return 1 + math.gcd(p_o, p_pl) * 5 ** (depth * p_pl)


WITNESSED = "witnessed"
EXTRAPOLATED = "extrapolated"
HOLDS = "holds"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LevelVerdict:
    profile: DependencyProfile
    threshold: int  # at the largest depth seen in the window
    witness: int | None  # i in the window with threshold(D_i) <= i
    fixed_delay: str  # WITNESSED | EXTRAPOLATED | INCONCLUSIVE


@dataclass
class CertificateReport:
    curve: str
    d: int
    l: int
    p_o: int
    p_pl: int
    expansion_depth: int
    depth_stable: bool | None
    levels: list[LevelVerdict]
    all_delays: str = INCONCLUSIVE
    any_delay_and_period: str = INCONCLUSIVE
    caveat: str = DESK_SCALE_CAVEAT

    @property
    def conclusive(self) -> bool:
        return any(lv.fixed_delay != INCONCLUSIVE for lv in self.levels)

    def to_text(self) -> str:
        lines = [
            f"curve: {self.curve}",
            f"d: {self.d}",
            f"l: {self.l}",
            f"p_o: {self.p_o}",
            f"p_pl: {self.p_pl}",
            f"gcd: {math.gcd(self.p_o, self.p_pl)}",
            f"expansion-depth: {self.expansion_depth}",
            f"depth-stable: {'unchecked' if self.depth_stable is None else str(self.depth_stable).lower()}",
        ]
        for lv in self.levels:
            pr = lv.profile
            lines += [
                "",
                f"level: {pr.level}",
                f"delay-bound: {pr.delay}",
                f"window: {pr.window[0]}..{pr.window[1]}",
                f"D-min: {min(pr.window_depths)}",
                f"D-max: {pr.max_depth}",
                f"D-constant: {str(pr.constant).lower()}",
                f"D-settled-at: {pr.settled_at}",
                f"reach: {pr.mode}",
                f"threshold-expression: 1 + {math.gcd(self.p_o, self.p_pl)}*5^{pr.max_depth * self.p_pl}",
                f"threshold: {_decimal(lv.threshold)}",
                f"witness: {lv.witness if lv.witness is not None else 'none'}",
                f"fixed-delay-verdict: {lv.fixed_delay}",
            ]
        lines += [
            "",
            f"all-delays-verdict: {self.all_delays}",
            f"delay-and-period-independent-verdict: {self.any_delay_and_period}",
            f"caveat: {self.caveat}",
        ]
        return "\n".join(lines) + "\n"


def _decimal(v: int) -> str:
    # str() refuses very long integers by default; the expression line stays exact
    return str(v) if v.bit_length() < 12000 else f"(exact value has {v.bit_length()} bits)"


def level_verdict(profile: DependencyProfile, p_o: int, p_pl: int) -> LevelVerdict:
    a, b = profile.window
    witness = None
    for i in range(a, b + 1):
        if pigeonhole_threshold(profile.depth[i], p_o, p_pl) <= i:
            witness = i
            break
    threshold = pigeonhole_threshold(profile.max_depth, p_o, p_pl)
    if witness is not None:
        verdict = WITNESSED
    elif profile.constant:
        # D stays put, so i = threshold itself satisfies the inequality
        verdict = EXTRAPOLATED
    else:
        verdict = INCONCLUSIVE
    return LevelVerdict(profile, threshold, witness, verdict)


def certify(seq: ShapeSequence, family: DelayBoundFamily, p_o: int, p_pl: int, levels, window,
            curve: str | None = None, expansion_depth: int = -1,
            depth_stable: bool | None = None, reach: str = "point") -> CertificateReport:
    if p_o < 1 or p_pl < 1:
        raise ValueError("periods must be positive")
    index = ShapeIndex(seq)
    profiles = [dependency_depth(seq, family, n, window, index, reach) for n in levels]
    return assemble_report(curve or family.curve, seq.params, p_o, p_pl, profiles, expansion_depth, depth_stable)


def assemble_report(curve: str, params, p_o: int, p_pl: int, profiles, expansion_depth: int = -1,
                    depth_stable: bool | None = None) -> CertificateReport:
    """Verdicts for given periods from already computed profiles."""
    if p_o < 1 or p_pl < 1:
        raise ValueError("periods must be positive")
    verdicts = [level_verdict(pr, p_o, p_pl) for pr in profiles]
    report = CertificateReport(curve, params.d, params.l, p_o, p_pl, expansion_depth, depth_stable, verdicts)
    if verdicts and all(v.fixed_delay != INCONCLUSIVE for v in verdicts):
        report.all_delays = HOLDS
    if verdicts and report.all_delays == HOLDS and all(v.profile.constant for v in verdicts):
        report.any_delay_and_period = HOLDS
    return report


@dataclass(frozen=True)
class CurveSpec:
    name: str
    system: LSystem
    turtle: TurtleSemantics
    iterations: int
    d: int
    l: int
    delays: DelayBoundFamily | None = None


def build_sequence(spec: CurveSpec, depth: int | None = None, check: bool = True) -> ShapeSequence:
    from .embedding import ShapeParams

    n = spec.iterations if depth is None else depth
    curve = interpret_turtle(expand(spec.system, n), spec.turtle)
    return embed_curve(curve, ShapeParams(spec.d, spec.l), check=check)


def auto_depth(spec: CurveSpec, window_end: int, margin: int = 64) -> int:
    """Smallest expansion depth with comfortably more points than the window needs."""
    k = 0
    while True:
        curve = interpret_turtle(expand(spec.system, k), spec.turtle)
        if len(curve.vertices) >= window_end + margin:
            return k
        if k > 12:
            raise ValueError("curve does not grow; cannot cover the window")
        k += 1


def certify_curve(spec: CurveSpec, p_o: int, p_pl: int, levels=(1,), window=(10, 2000),
                  expansion_depth: int | None = None, check_stability: bool = True,
                  reach: str = "point") -> CertificateReport:
    """Certify at one expansion depth and confirm the past-reach sets one depth deeper."""
    family = spec.delays
    if family is None:
        raise ValueError(f"no delay bounds known for curve {spec.name}")
    k = auto_depth(spec, window[1]) if expansion_depth is None else expansion_depth
    seq = build_sequence(spec, k)
    report = certify(seq, family, p_o, p_pl, levels, window, spec.name, k, reach=reach)
    if check_stability:
        deeper = build_sequence(spec, k + 1, check=False)
        index = ShapeIndex(deeper)
        stable = True
        for lv in report.levels:
            other = dependency_depth(deeper, family, lv.profile.level, window, index, reach)
            if other.past_sets != lv.profile.past_sets or other.reach != lv.profile.reach:
                stable = False
        report.depth_stable = stable
    return report


def count_self_avoiding_walks(steps: int) -> int:
    """Number of ``steps``-step self-avoiding walks from the origin (exact)."""
    from .lattice import LatticePoint

    origin = LatticePoint(0, 0)
    visited = {origin}

    def rec(p, k):
        if k == 0:
            return 1
        total = 0
        for q in neighbors(p):
            if q not in visited:
                visited.add(q)
                total += rec(q, k - 1)
                visited.remove(q)
        return total

    return rec(origin, steps)
