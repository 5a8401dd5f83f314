import random

import pytest

from conftest import build_system
from oracles import random_system_spec
from oritatami.folding import fold
from oritatami.horizon import extract_horizon, horizons_equal, range_horizon, stabilizations_congruent
from oritatami.lattice import Isometry, LatticePoint, hex_distance
from oritatami.system import Configuration, OritatamiSystem


def horizon_violations(system, max_beads):
    """Pairs of stabilizations with equal horizons but non-congruent outcomes."""
    res = fold(system, max_beads)
    conf = res.configuration
    s = res.seed_length
    seen = {}
    bad = 0
    compared = 0
    for st in res.trace:
        h = extract_horizon(conf, st.index, system.delay, system.arity, system.transcript, s)
        first = seen.setdefault(h.canonical_key, h)
        if first is not h:
            compared += 1
            if not stabilizations_congruent(conf, first, h):
                bad += 1
    return bad, compared


def test_glider_horizons_repeat_and_agree(glider_system):
    bad, compared = horizon_violations(glider_system, 200)
    assert bad == 0 and compared > 150


def test_random_corpus_horizons_agree():
    rng = random.Random(7)
    for _ in range(80):
        bad, _ = horizon_violations(build_system(random_system_spec(rng)), 8)
        assert bad == 0


def deterministic_cyclic_systems(count, beads, seed=3, tries=20000):
    """Random cyclic systems that fold without a tie for ``beads`` beads (rare)."""
    rng = random.Random(seed)
    found = []
    for _ in range(tries):
        system = build_system(random_system_spec(rng, cyclic=True))
        if fold(system, beads).transcript_beads >= beads:
            found.append(system)
            if len(found) == count:
                break
    return found


def test_random_cyclic_systems_repeat_horizons_consistently():
    systems = deterministic_cyclic_systems(4, 20)
    assert len(systems) == 4
    total = 0
    for system in systems:
        bad, compared = horizon_violations(system, 60)
        assert bad == 0
        total += compared
    assert total > 20


def test_horizon_contents(glider_system):
    res = fold(glider_system, 30)
    conf = res.configuration
    h = extract_horizon(conf, 20, 3, 4, glider_system.transcript, res.seed_length)
    assert h.anchor == conf.path[19]
    assert h.tail_order[-1] == LatticePoint(0, 0)
    for rel in h.placed:
        assert hex_distance(rel, LatticePoint(0, 0)) <= 4
    assert len(h.placed) == sum(1 for p in conf.path[:20] if hex_distance(p, h.anchor) <= 4)
    assert h.phase == (20 - res.seed_length) % 6
    assert len(h.lookahead) == 3


def test_key_is_invariant_under_moving_the_whole_fold(glider_system):
    res = fold(glider_system, 40)
    conf = res.configuration
    g = Isometry(2, True, LatticePoint(5, -7))
    moved = Configuration(tuple(g(p) for p in conf.path), conf.beads, conf.bonds)
    for i in (10, 25, 40):
        a = extract_horizon(conf, i, 3, 4, glider_system.transcript, 4)
        b = extract_horizon(moved, i, 3, 4, glider_system.transcript, 4)
        assert horizons_equal(a, b)


def test_parameter_mismatch_and_bad_indices(glider_system):
    res = fold(glider_system, 10)
    conf = res.configuration
    a = extract_horizon(conf, 8, 3, 4, glider_system.transcript, 4)
    b = extract_horizon(conf, 8, 2, 4, glider_system.transcript, 4)
    with pytest.raises(ValueError):
        horizons_equal(a, b)
    with pytest.raises(ValueError):
        extract_horizon(conf, 2, 3, 4, glider_system.transcript, 4)
    with pytest.raises(ValueError):
        extract_horizon(conf, len(conf) + 1, 3, 4, glider_system.transcript, 4)


def test_range_horizon_covers_single_horizons(glider_system):
    res = fold(glider_system, 30)
    conf = res.configuration
    r = range_horizon(conf, 12, 14, 3, 4, glider_system.transcript, 4)
    single = extract_horizon(conf, 12, 3, 4, glider_system.transcript, 4)
    assert {LatticePoint(p.x + single.anchor.x, p.y + single.anchor.y) for p in single.placed} <= set(r.placed)
    assert all(conf.path.index(p) < 12 for p in r.placed)
    with pytest.raises(ValueError):
        range_horizon(conf, 14, 12, 3, 4, glider_system.transcript, 4)
