import pytest
from hypothesis import given
from hypothesis import strategies as st

from oritatami.lattice import LatticePoint
from oritatami.lsystem import (
    KOCH,
    KOCH_TURTLE,
    MINKOWSKI,
    MINKOWSKI_TURTLE,
    LSystem,
    TurtleSemantics,
    expand,
    interpret_turtle,
    min_period,
)


def test_koch_production():
    assert expand(KOCH, 1) == "F+F-F+F"
    s = expand(KOCH, 3)
    assert s.count("F") == 64 and len(s) == 127


def test_minkowski_production():
    assert expand(MINKOWSKI, 1) == "F+F-F-FF+F+F-F"


def test_typographic_minus_is_accepted():
    g = LSystem({"F"}, {"+", "-"}, "F", {"F": "F+F−F+F"})
    assert expand(g, 1) == "F+F-F+F"


@pytest.mark.parametrize("n", range(1, 7))
def test_koch_length_recurrence(n):
    assert len(expand(KOCH, n)) == 4 * len(expand(KOCH, n - 1)) + 3
    assert expand(KOCH, n).count("F") == 4 ** n


@pytest.mark.parametrize("n", range(1, 5))
def test_minkowski_length_recurrence(n):
    # eight moves and six turns per production: L(n) = 8 L(n-1) + 6
    assert len(expand(MINKOWSKI, n)) == 8 * len(expand(MINKOWSKI, n - 1)) + 6
    assert expand(MINKOWSKI, n).count("F") == 8 ** n


def test_koch_first_vertices():
    c = interpret_turtle(expand(KOCH, 1), KOCH_TURTLE)
    assert c.vertices == tuple(LatticePoint(*p) for p in [(0, 0), (1, 0), (1, 1), (2, 0), (3, 0)])


@pytest.mark.parametrize("n", range(0, 6))
def test_endpoints_and_self_avoidance(n):
    k = interpret_turtle(expand(KOCH, n), KOCH_TURTLE)
    assert k.vertices[-1] == LatticePoint(3 ** n, 0) and k.is_self_avoiding()
    if n <= 4:
        m = interpret_turtle(expand(MINKOWSKI, n), MINKOWSKI_TURTLE)
        assert m.vertices[-1] == LatticePoint(4 ** n, 0) and m.is_self_avoiding()


def test_consecutive_vertices_are_unit_steps():
    for g, sem in ((KOCH, KOCH_TURTLE), (MINKOWSKI, MINKOWSKI_TURTLE)):
        c = interpret_turtle(expand(g, 3), sem)
        dirs = c.directions()
        assert len(dirs) == len(c.vertices) - 1


def test_bad_grammars_and_semantics():
    with pytest.raises(ValueError):
        LSystem({"F"}, {"F"}, "F", {})
    with pytest.raises(ValueError):
        LSystem({"F"}, {"+"}, "FX", {})
    with pytest.raises(ValueError):
        TurtleSemantics.from_angles("triangular", 45, 60)
    with pytest.raises(ValueError):
        TurtleSemantics.from_angles("hexagonal", 60, 60)
    with pytest.raises(ValueError):
        interpret_turtle("F*F", KOCH_TURTLE)
    with pytest.raises(ValueError):
        expand(KOCH, -1)


def brute_period(s, max_p):
    for p in range(1, max_p + 1):
        if all(s[i] == s[i + p] for i in range(len(s) - p)):
            return p
    return None


@given(st.text(alphabet="+-", max_size=40), st.integers(1, 45))
def test_min_period_matches_brute_force(s, max_p):
    if s:
        assert min_period(s, max_p) == brute_period(s, max_p)


def test_koch_turns_show_no_short_period():
    turns = "".join(ch for ch in expand(KOCH, 4) if ch in "+-")
    assert min_period(turns, 100) is None
    assert min_period(turns, 100) == brute_period(turns, 100)
