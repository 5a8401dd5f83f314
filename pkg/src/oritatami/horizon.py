"""Event horizons: the local context that decides how a bead stabilizes.

With delay ``delta`` the nascent chain never gets farther than ``delta`` from
the previously stabilized bead, so only beads within hex distance
``delta + 1`` of it can interact with the lookahead. The horizon records
those beads together with their residual arity, which bead is the anchor,
and which transcript beads come next.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .lattice import Isometry, LatticePoint, canonical_form, hex_distance, hex_region
from .system import Configuration, Transcript


@dataclass(frozen=True)
class EventHorizon:
    index: int
    anchor: LatticePoint
    delay: int
    arity: int
    placed: dict  # relative point -> (bead type, residual arity)
    bonds: frozenset  # pairs of relative points
    tail_order: tuple  # relative points in path order, ending at the anchor
    phase: int | None
    lookahead: tuple  # bead types of the bead being stabilized and its nascent successors
    canonical_key: str
    frames: tuple  # isometries taking absolute coordinates to the canonical frame


def _key(form_key: str, phase, lookahead, delay, arity) -> str:
    raw = repr((form_key, phase, lookahead, delay, arity)).encode()
    return hashlib.sha256(raw).hexdigest()


def _check_index(conf: Configuration, i: int, seed_length: int):
    if i < 1 or i < seed_length:
        raise ValueError(f"horizon index {i} precedes the transcript (seed length {seed_length})")
    if i > len(conf):
        raise ValueError(f"horizon index {i} is beyond the stabilized prefix of length {len(conf)}")


def extract_horizon(conf: Configuration, i: int, delay: int, arity: int,
                    transcript: Transcript, seed_length: int) -> EventHorizon:
    """Horizon for stabilizing global bead ``i`` given beads ``0..i-1`` of ``conf``."""
    _check_index(conf, i, seed_length)
    anchor = conf.path[i - 1]
    radius = delay + 1
    counts = conf.prefix(i).bond_counts()
    inside = [k for k in range(i) if hex_distance(conf.path[k], anchor) <= radius]
    pos = {k: n for n, k in enumerate(inside)}
    points = [conf.path[k] for k in inside]
    labels = [
        f"{conf.beads[k]}/{arity - counts[k]}" + ("*" if k == i - 1 else "")
        for k in inside
    ]
    bonds = [(pos[a], pos[b]) for a, b in conf.bonds if a in pos and b in pos and b < i]
    form = canonical_form(points, labels, bonds)
    t = i - seed_length
    lookahead = transcript.window(t, delay)
    phase = transcript.phase(t)

    def rel(p):
        return LatticePoint(p.x - anchor.x, p.y - anchor.y)

    placed = {rel(conf.path[k]): (conf.beads[k], arity - counts[k]) for k in inside}
    rel_bonds = frozenset(
        (rel(conf.path[a]), rel(conf.path[b])) for a, b in conf.bonds if a in pos and b in pos and b < i
    )
    return EventHorizon(
        index=i,
        anchor=anchor,
        delay=delay,
        arity=arity,
        placed=placed,
        bonds=rel_bonds,
        tail_order=tuple(rel(p) for p in points),
        phase=phase,
        lookahead=lookahead,
        canonical_key=_key(form.key, phase, lookahead, delay, arity),
        frames=form.transforms,
    )


def horizons_equal(h1: EventHorizon, h2: EventHorizon) -> bool:
    if (h1.delay, h1.arity) != (h2.delay, h2.arity):
        raise ValueError(
            f"horizons built with different parameters: delay/arity {h1.delay}/{h1.arity} vs {h2.delay}/{h2.arity}"
        )
    return h1.canonical_key == h2.canonical_key and h1.phase == h2.phase


def _stabilized_image(conf: Configuration, i: int, frame: Isometry):
    partners = frozenset(frame(conf.path[a]) for a, b in conf.bonds if b == i)
    return frame(conf.path[i]), partners


def stabilizations_congruent(conf: Configuration, h1: EventHorizon, h2: EventHorizon) -> bool:
    """Whether beads ``h1.index`` and ``h2.index`` of ``conf`` were placed alike.

    Both beads are mapped into the shared canonical frame of their (equal)
    horizons; their positions and bond partners must coincide there.
    """
    ref = _stabilized_image(conf, h1.index, h1.frames[0])
    return any(_stabilized_image(conf, h2.index, g) == ref for g in h2.frames)


@dataclass(frozen=True)
class RangeHorizon:
    first: int
    last: int
    anchor: LatticePoint
    region: frozenset
    placed: dict  # absolute point -> (bead type, residual arity)
    bonds: frozenset  # index pairs among placed beads


def range_horizon(conf: Configuration, i: int, j: int, delay: int, arity: int,
                  transcript: Transcript, seed_length: int) -> RangeHorizon:
    """Union of the horizons of beads ``i..j`` as seen while stabilizing ``i``.

    Hexagon centres come from ``conf`` where it already holds the bead, and
    fall back to its last bead otherwise. Contents are limited to beads
    placed before ``i``.
    """
    if i > j:
        raise ValueError(f"empty bead range {i}..{j}")
    _check_index(conf, i, seed_length)
    last = len(conf) - 1
    region: set = set()
    for k in range(i, j + 1):
        region |= hex_region(conf.path[min(k - 1, last)], delay + 1)
    counts = conf.prefix(i).bond_counts()
    members = {k for k in range(i) if conf.path[k] in region}
    placed = {conf.path[k]: (conf.beads[k], arity - counts[k]) for k in sorted(members)}
    bonds = frozenset((a, b) for a, b in conf.bonds if a in members and b in members)
    return RangeHorizon(i, j, conf.path[i - 1], frozenset(region), placed, bonds)
