import random
import time
from itertools import combinations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import build_system
from oracles import literal_scores, random_system_spec
from oritatami.folding import _max_bmatching, elongations, fold, stabilize_next
from oritatami.lattice import LatticePoint
from oritatami.system import Configuration, OritatamiSystem, Ruleset, Transcript


def compare_with_oracle(system, steps=8):
    """Fold step by step, checking every stabilization against the literal oracle."""
    conf = system.seed
    s = system.seed_length
    for _ in range(steps):
        t = len(conf) - s
        if not system.transcript.has(t):
            return
        word = list(system.transcript.window(t, system.delay))
        rules = {tuple(p) for p in system.ruleset.sorted_pairs()}
        expected = literal_scores(conf.path, conf.beads, sorted(conf.bonds), word, rules, system.arity)
        got = stabilize_next(conf, system)
        mine = {(tuple(c.position), c.partners): c.energy for c in got.candidates}
        assert mine == expected
        if not expected:
            assert got.status == "dead-end"
            return
        low = min(expected.values())
        assert {(tuple(c.position), c.partners) for c in got.argmin} == {k for k, v in expected.items() if v == low}
        if got.status != "stabilized":
            return
        c = got.chosen
        conf = conf.extended(c.position, word[0], c.partners)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 2 ** 32))
def test_stabilization_matches_literal_enumeration(seed):
    compare_with_oracle(build_system(random_system_spec(random.Random(seed))))


def brute_bmatching(edges, capacity):
    for k in range(len(edges), -1, -1):
        for sub in combinations(edges, k):
            use = {}
            for u, v in sub:
                use[u] = use.get(u, 0) + 1
                use[v] = use.get(v, 0) + 1
            if all(use[x] <= capacity[x] for x in use):
                return k
    return 0


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(lambda e: e[0] != e[1]),
                max_size=9, unique=True),
       st.lists(st.integers(0, 3), min_size=6, max_size=6))
def test_bmatching_is_exact(edges, caps):
    capacity = dict(enumerate(caps))
    assert _max_bmatching(edges, capacity) == brute_bmatching(edges, capacity)


def line_system(transcript, rules, delay=1, arity=1, seed=(((0, 0), "s"),)):
    conf = Configuration(tuple(LatticePoint(*p) for p, _ in seed), tuple(b for _, b in seed))
    alphabet = tuple(sorted({b for _, b in seed} | set(transcript) | {x for r in rules for x in r}))
    return OritatamiSystem(alphabet, Transcript.finite(transcript), Ruleset.from_pairs(rules), delay, arity, conf)


def test_no_rules_means_every_direction_ties():
    res = stabilize_next(line_system("a", []).seed, line_system("a", []))
    assert res.status == "tie" and len(res.argmin) == 6


HOOK = (((0, 0), "x"), ((1, 0), "s"), ((1, -1), "s"))


def test_single_bonding_site_is_chosen():
    sys_ = line_system("a", [("x", "a")], seed=HOOK)
    res = stabilize_next(sys_.seed, sys_)
    assert res.status == "stabilized"
    assert res.chosen.position == LatticePoint(0, -1)
    assert res.chosen.partners == (0,) and res.chosen.energy == -1


def test_two_equal_bonding_sites_tie():
    seed = (((0, 0), "x"), ((1, 0), "s"))
    sys_ = line_system("a", [("x", "a")], seed=seed)
    res = stabilize_next(sys_.seed, sys_)
    assert res.status == "tie"
    assert {c.position for c in res.argmin} == {LatticePoint(0, 1), LatticePoint(1, -1)}


def test_position_mode_merges_bond_choices():
    seed = (((0, 0), "x"), ((1, 0), "s"), ((2, -1), "x"))
    sys_ = line_system("aa", [("x", "a")], delay=1, arity=2, seed=seed)
    conf = sys_.seed
    strict = stabilize_next(conf, sys_, "conformation")
    loose = stabilize_next(conf, sys_, "position")
    assert strict.status in ("stabilized", "tie")
    assert loose.status == "stabilized" or len({c.position for c in loose.argmin}) > 1


def test_dead_end_when_boxed_in():
    ring = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    seed = tuple(((x, y), "s") for x, y in ring) + (((0, 0), "s"),)
    sys_ = line_system("a", [], seed=seed)
    res = stabilize_next(sys_.seed, sys_)
    assert res.status == "dead-end"
    assert fold(sys_, 5).status == "blocked"


def test_unknown_tie_mode():
    sys_ = line_system("a", [])
    with pytest.raises(ValueError):
        stabilize_next(sys_.seed, sys_, "whatever")


def test_elongations_respect_arity():
    seed = (((0, 0), "x"), ((1, 0), "s"))
    sys_ = line_system("a", [("x", "a")], seed=seed)
    out = elongations(sys_.seed, "a", sys_.ruleset, 1)
    assert len(out) == 5 + 2  # five free sites, two of them touching bead 0
    assert all(not c.violations(sys_.ruleset, 1) for c in out)


def test_glider_first_step_energies(glider_system):
    res = stabilize_next(glider_system.seed, glider_system)
    assert {c.energy for c in res.candidates} == {-4, -3, -2}
    assert res.status == "stabilized" and res.chosen.energy == -4


def test_glider_is_periodic(glider_system):
    start = time.perf_counter()
    res = fold(glider_system, 120)
    assert res.status == "step-limit" and res.deterministic
    path = res.configuration.path
    s = res.seed_length
    v = path[s + 6] - path[s]
    assert all(path[i + 6] - path[i] == v for i in range(s, len(path) - 6))
    assert v == LatticePoint(2, -2)
    per_bead = [len(st.partners) for st in res.trace]
    assert per_bead[6:] == per_bead[:-6]
    assert time.perf_counter() - start < 5


def test_fold_stops_at_end_of_finite_transcript():
    sys_ = line_system("a", [("x", "a")], seed=HOOK)
    res = fold(sys_, 10)
    assert res.status == "terminal" and res.transcript_beads == 1


def test_max_beads_must_be_positive(glider_system):
    with pytest.raises(ValueError):
        fold(glider_system, 0)
