from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exhaustive_witness
from oritatami.embedding import (
    POINT,
    SEGMENT,
    EmbeddingError,
    Shape,
    ShapeParams,
    ShapeSequence,
    embed_curve,
    embed_koch,
    embed_minkowski,
    rhombus_point_shape,
    rhombus_segment_shape,
    validate_shape_sequence,
    verify_path,
)
from oritatami.lattice import Isometry, LatticePoint, hex_region, neighbors
from oritatami.lsystem import KOCH, KOCH_TURTLE, MINKOWSKI, MINKOWSKI_TURTLE, expand, interpret_turtle

PARAMS = [ShapeParams(d, l) for d, l in product((2, 3), (3, 4))]


def koch(n):
    return interpret_turtle(expand(KOCH, n), KOCH_TURTLE)


def minkowski(n):
    return interpret_turtle(expand(MINKOWSKI, n), MINKOWSKI_TURTLE)


def touches(a, b):
    return any(q in b for p in a for q in neighbors(p))


def test_koch_shape_sizes():
    seq = embed_koch(koch(2), ShapeParams(2, 3))
    assert seq.construction == "koch-face-strip-left"
    assert len(seq.point_shape(0).points) == 7
    assert all(len(seq.segment_shape(v).points) == 2 * 2 * 3 + 2 + 3 for v in range(seq.n_segments))
    assert seq.n_points == 17 and seq.n_segments == 16
    owner = {}
    for s in seq.shapes:
        for p in s.points:
            assert p not in owner
            owner[p] = s.index


@pytest.mark.parametrize("params", PARAMS, ids=str)
def test_koch_segment_rows_alternate(params):
    seq = embed_koch(koch(1), params)
    seg = seq.segment_shape(0).points  # first segment heads east in the curve lattice
    rows = {}
    for p in seg:
        rows.setdefault(p.x + p.y, []).append(p)
    sizes = [len(rows[m]) for m in sorted(rows)]
    assert sizes == [params.d if k % 2 == 0 else params.d + 1 for k in range(2 * params.l + 1)]
    assert len(seg) == 2 * params.d * params.l + params.d + params.l


@pytest.mark.parametrize("params", PARAMS, ids=str)
def test_all_tested_embeddings_are_valid(params):
    assert validate_shape_sequence(embed_koch(koch(3), params)) == []
    assert validate_shape_sequence(embed_minkowski(minkowski(2), params)) == []


def test_consecutive_shapes_touch_and_point_shapes_do_not():
    seq = embed_koch(koch(2), ShapeParams(2, 3))
    for v in range(seq.n_segments):
        assert touches(seq.point_shape(v).points, seq.segment_shape(v).points)
        assert touches(seq.segment_shape(v).points, seq.point_shape(v + 1).points)
        assert not touches(seq.point_shape(v).points, seq.point_shape(v + 1).points)


def test_thin_koch_shapes_are_rejected():
    with pytest.raises(EmbeddingError):
        embed_koch(koch(2), ShapeParams(1, 3))
    with pytest.raises(ValueError):
        ShapeParams(0, 3)


def test_wrong_lattice_is_rejected():
    with pytest.raises(EmbeddingError):
        embed_koch(minkowski(1), ShapeParams(2, 3))
    with pytest.raises(EmbeddingError):
        embed_minkowski(koch(1), ShapeParams(2, 3))
    assert embed_curve(minkowski(1), ShapeParams(2, 3)).construction == "minkowski-rhombus"


def test_minkowski_shape_sizes_and_aliases():
    params = ShapeParams(2, 3)
    assert len(rhombus_point_shape(0, 0, params)) == 4
    up = rhombus_segment_shape(0, 0, 0, 1, params)
    assert len(up) == 6
    # the segment going up from (x, y) touches the rhombus at (x, y) and the one above
    assert touches(up, rhombus_point_shape(0, 0, params))
    assert touches(up, rhombus_point_shape(0, 1, params))
    assert rhombus_segment_shape(0, 1, 0, -1, params) == up
    with pytest.raises(ValueError):
        rhombus_segment_shape(0, 0, 1, 1, params)


def test_minkowski_corner_contacts_need_the_allowance():
    seq = embed_minkowski(minkowski(2), ShapeParams(2, 3))
    assert validate_shape_sequence(seq) == []
    strict = validate_shape_sequence(seq, corner_contacts=False)
    assert strict and all("non-consecutive" in m for m in strict)


def test_validator_reports_broken_sequences():
    a = Shape(POINT, frozenset({LatticePoint(0, 0)}), 0)
    far = Shape(SEGMENT, frozenset({LatticePoint(5, 5)}), 1)
    seq = ShapeSequence((a, far), ShapeParams(1, 1))
    assert any("not adjacent" in m for m in validate_shape_sequence(seq))
    split = Shape(SEGMENT, frozenset({LatticePoint(1, 0), LatticePoint(3, 0)}), 1)
    assert any("not connected" in m for m in validate_shape_sequence(ShapeSequence((a, split), ShapeParams(1, 1))))
    clash = Shape(SEGMENT, frozenset({LatticePoint(0, 0)}), 1)
    assert any("overlap" in m for m in validate_shape_sequence(ShapeSequence((a, clash), ShapeParams(1, 1))))


def three_cells():
    """Three disjoint consecutive shapes along the x axis."""
    return [frozenset({LatticePoint(0, 0), LatticePoint(1, 0), LatticePoint(0, 1)}),
            frozenset({LatticePoint(2, 0), LatticePoint(3, 0), LatticePoint(2, 1)}),
            frozenset({LatticePoint(4, 0), LatticePoint(5, 0), LatticePoint(4, 1)})]


def owner_of(shapes):
    return {p: k for k, s in enumerate(shapes) for p in s}


def test_monotone_path_is_drawn():
    path = [(0, 1), (0, 0), (1, 0), (2, 0), (2, 1), (3, 0), (4, 0), (4, 1)]
    w = verify_path(path, owner_of(three_cells()))
    assert w.ok and w.indices == (2, 5, 7) and w.counts == (3, 3, 2)


def test_leaving_a_shape_is_reported_at_the_first_escaping_bead():
    path = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (3, 1)]
    w = verify_path(path, owner_of(three_cells()))
    assert not w.ok and w.violation.bead == 4 and w.violation.shape is None


def test_returning_and_skipping_are_reported():
    back = verify_path([(0, 0), (1, 0), (2, 0), (1, 0)], owner_of(three_cells()))
    assert "returns" in back.violation.reason and back.violation.bead == 3
    skip = verify_path([(0, 0), (4, 0)], owner_of(three_cells()))
    assert "skipping" in skip.violation.reason


small_shapes = st.lists(
    st.frozensets(st.builds(LatticePoint, st.integers(0, 3), st.integers(0, 2)), min_size=1, max_size=4),
    min_size=1, max_size=4)


@settings(max_examples=300)
@given(small_shapes, st.lists(st.builds(LatticePoint, st.integers(0, 3), st.integers(0, 2)), max_size=12))
def test_greedy_agrees_with_exhaustive_search(raw_shapes, path):
    # make the shapes disjoint, as every valid shape sequence is
    shapes, used = [], set()
    for s in raw_shapes:
        s = frozenset(s - used)
        if not s:
            break
        shapes.append(s)
        used |= s
    found = exhaustive_witness(path, shapes)
    w = verify_path(path, owner_of(shapes))
    assert w.ok == bool(found)
    if w.ok:
        assert found == [w.indices]


@given(st.integers(0, 5), st.booleans(), st.integers(-9, 9), st.integers(-9, 9))
def test_drawing_is_invariant_under_isometry(rot, refl, dx, dy):
    seq = embed_koch(koch(1), ShapeParams(2, 3))
    path = sorted(seq.point_shape(0).points)[:1]
    g = Isometry(rot, refl, LatticePoint(dx, dy))
    assert verify_path(path, seq).ok == verify_path([g(p) for p in path], seq.transformed(g)).ok


def test_point_shapes_are_hexagons_centred_on_vertices():
    params = ShapeParams(3, 3)
    seq = embed_koch(koch(1), params)
    assert seq.point_shape(0).points == frozenset(hex_region(LatticePoint(0, 0), 2))
