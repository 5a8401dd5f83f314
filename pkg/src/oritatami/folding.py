"""Delay-based cotranscriptional folding.

A bead is stabilized by enumerating every placement of it (position and bond
set), scoring each by the best energy reachable with the following nascent
beads, and keeping the minimizers. Nascent bonds are only used for scoring;
the stabilized bead keeps just its own bonds.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .lattice import LatticePoint, neighbors
from .system import Configuration, OritatamiSystem, Ruleset

log = logging.getLogger(__name__)

TIE_MODES = ("conformation", "position")


def energy(conf: Configuration) -> int:
    return -len(conf.bonds)


def _subsets(items, max_size):
    for k in range(min(max_size, len(items)) + 1):
        yield from combinations(items, k)


def bond_candidates(conf: Configuration, p, bead: str, ruleset: Ruleset, arity: int,
                    counts=None, occupancy=None) -> list[int]:
    """Earlier beads that a new ``bead`` at ``p`` could bond with.

    The current head is excluded (consecutive beads never interact), as are
    partners whose arity is already saturated.
    """
    if counts is None:
        counts = conf.bond_counts()
    if occupancy is None:
        occupancy = conf.occupancy()
    head = len(conf.path) - 1
    out = []
    for q in neighbors(p):
        j = occupancy.get(q)
        if j is None or j == head:
            continue
        if counts[j] < arity and ruleset.allows(conf.beads[j], bead):
            out.append(j)
    return sorted(out)


def elongations(conf: Configuration, bead: str, ruleset: Ruleset, arity: int) -> list[Configuration]:
    """Every arity-respecting one-bead elongation of ``conf`` by ``bead``."""
    counts = conf.bond_counts()
    occupancy = conf.occupancy()
    out = []
    for p in neighbors(conf.head):
        if p in occupancy:
            continue
        partners = bond_candidates(conf, p, bead, ruleset, arity, counts, occupancy)
        for chosen in _subsets(partners, arity):
            out.append(conf.extended(p, bead, chosen))
    return out


def _max_bmatching(edges, capacity) -> int:
    """Largest edge subset respecting per-vertex capacities (exact, small inputs)."""
    if not edges:
        return 0
    degree: dict = {}
    for u, v in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    if all(degree[x] <= capacity[x] for x in degree):
        return len(edges)
    cap = dict(capacity)
    best = 0
    m = len(edges)

    def rec(k, taken):
        nonlocal best
        if taken + (m - k) <= best:
            return
        if k == m:
            best = taken
            return
        u, v = edges[k]
        if cap[u] > 0 and cap[v] > 0:
            cap[u] -= 1
            cap[v] -= 1
            rec(k + 1, taken + 1)
            cap[u] += 1
            cap[v] += 1
        rec(k + 1, taken)

    rec(0, 0)
    return best


@dataclass(frozen=True)
class Candidate:
    """One placement of the bead being stabilized and its lookahead score.

    ``energy`` is the minimum energy ``-|H|`` of the whole configuration over
    all admissible nascent continuations.
    """

    position: LatticePoint
    partners: tuple[int, ...]
    energy: int


@dataclass(frozen=True)
class Stabilization:
    status: str  # "stabilized" | "tie" | "dead-end"
    index: int
    chosen: Candidate | None
    argmin: tuple[Candidate, ...]
    candidates: tuple[Candidate, ...]


def _lookahead_bonds(path, beads, counts, occupancy, word, ruleset, arity, n) -> int:
    """Most nascent bonds reachable when beads ``word`` follow position ``n``.

    ``path``/``beads``/``occupancy`` already include the bead at global index
    ``n``; ``counts`` includes its chosen bonds. Returns the maximum number of
    extra bonds over every self-avoiding continuation of length 0..len(word).
    """
    if not word:
        return 0
    capacity = {j: arity - c for j, c in enumerate(counts)}
    edges: list[tuple[int, int]] = []
    best = 0

    def dfs(k):
        nonlocal best
        g = n + k  # global index of the current head
        head = path[-1]
        extended = False
        if k < len(word):
            b = word[k]
            gi = g + 1
            for p in neighbors(head):
                if p in occupancy:
                    continue
                extended = True
                added = 0
                for q in neighbors(p):
                    j = occupancy.get(q)
                    if j is None or j >= gi - 1:
                        continue
                    if capacity[j] > 0 and ruleset.allows(beads[j], b):
                        edges.append((j, gi))
                        added += 1
                path.append(p)
                beads.append(b)
                occupancy[p] = gi
                capacity[gi] = arity
                dfs(k + 1)
                del capacity[gi]
                del occupancy[p]
                beads.pop()
                path.pop()
                for _ in range(added):
                    edges.pop()
        if not extended and edges:
            best = max(best, _max_bmatching(list(edges), capacity))

    dfs(0)
    return best


def stabilize_next(conf: Configuration, system: OritatamiSystem, tie_mode: str = "conformation") -> Stabilization:
    """Stabilize the next transcript bead onto ``conf``.

    Every placement ``(position, bond subset)`` of the next bead is scored by
    the minimum energy over continuations with up to ``delay - 1`` further
    nascent beads. A unique minimizer is stabilized; several minimizers give
    a ``"tie"`` (in ``"position"`` mode only distinct positions count).
    """
    if tie_mode not in TIE_MODES:
        raise ValueError(f"tie_mode must be one of {TIE_MODES}, got {tie_mode!r}")
    n = len(conf)
    t = n - system.seed_length
    word = system.transcript.window(t, system.delay)
    if not word:
        raise ValueError(f"transcript exhausted at position {t}")
    arity = system.arity
    ruleset = system.ruleset
    counts = conf.bond_counts()
    occupancy = conf.occupancy()
    base = len(conf.bonds)
    b = word[0]
    candidates = []
    for p in neighbors(conf.head):
        if p in occupancy:
            continue
        partners = bond_candidates(conf, p, b, ruleset, arity, counts, occupancy)
        for chosen in _subsets(partners, arity):
            c2 = list(counts) + [len(chosen)]
            for j in chosen:
                c2[j] += 1
            occ = dict(occupancy)
            occ[p] = n
            extra = _lookahead_bonds(list(conf.path) + [p], list(conf.beads) + [b], c2, occ,
                                     word[1:], ruleset, arity, n)
            candidates.append(Candidate(p, tuple(chosen), -(base + len(chosen) + extra)))
    if not candidates:
        return Stabilization("dead-end", n, None, (), ())
    low = min(c.energy for c in candidates)
    argmin = tuple(c for c in candidates if c.energy == low)
    if tie_mode == "conformation":
        unique = len(argmin) == 1
        chosen = argmin[0] if unique else None
    else:
        positions = {c.position for c in argmin}
        unique = len(positions) == 1
        # several bond sets at one position: keep the richest, then smallest
        chosen = min(argmin, key=lambda c: (-len(c.partners), c.partners)) if unique else None
    status = "stabilized" if unique else "tie"
    return Stabilization(status, n, chosen, argmin, tuple(candidates))


@dataclass(frozen=True)
class TraceStep:
    index: int
    transcript_index: int
    bead: str
    position: LatticePoint
    partners: tuple[int, ...]
    lookahead_energy: int
    energy: int


@dataclass(frozen=True)
class FoldResult:
    """Outcome of folding: status, final configuration and per-step trace.

    ``status`` is one of ``"terminal"``, ``"nondeterministic"``,
    ``"blocked"`` or ``"step-limit"``. For the two failure statuses
    ``step`` is the global bead index that could not be stabilized.
    """

    status: str
    configuration: Configuration
    seed_length: int
    trace: tuple[TraceStep, ...]
    step: int | None = None
    tie: tuple[Candidate, ...] = field(default=())

    @property
    def deterministic(self) -> bool:
        return self.status in ("terminal", "step-limit")

    @property
    def transcript_beads(self) -> int:
        return len(self.trace)


def fold(system: OritatamiSystem, max_beads: int, tie_mode: str = "conformation") -> FoldResult:
    """Fold up to ``max_beads`` transcript beads onto the seed."""
    if max_beads < 1:
        raise ValueError("max_beads must be >= 1")
    conf = system.seed
    trace = []
    s = system.seed_length
    while True:
        t = len(conf) - s
        if not system.transcript.has(t):
            return FoldResult("terminal", conf, s, tuple(trace))
        if t >= max_beads:
            return FoldResult("step-limit", conf, s, tuple(trace))
        result = stabilize_next(conf, system, tie_mode)
        if result.status == "dead-end":
            log.debug("blocked at bead %d", result.index)
            return FoldResult("blocked", conf, s, tuple(trace), step=result.index)
        if result.status == "tie":
            log.debug("tie at bead %d among %d placements", result.index, len(result.argmin))
            return FoldResult("nondeterministic", conf, s, tuple(trace), step=result.index, tie=result.argmin)
        c = result.chosen
        conf = conf.extended(c.position, system.transcript.bead(t), c.partners)
        trace.append(TraceStep(result.index, t, system.transcript.bead(t), c.position, c.partners,
                               c.energy, conf.energy()))
