"""st-orderings, orthogonal drawings, the drawing validator and SVG export."""
from __future__ import annotations

from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import random_biconnected_corpus, random_cycle_corpus
from orthosefe.constraints import Side, oracle, rotation_from_assignment
from orthosefe.drawing import (
    BAND,
    PORTS,
    SHARED,
    OrthogonalDrawing,
    _simplify,
    count_bends,
    draw,
    export_svg,
    is_st_order,
    st_order,
    validate_drawing,
)
from orthosefe.embedding import SearchTooLarge, rotation_search
from orthosefe.gadgets import generate_random
from orthosefe.instance import CycleInstance, InstanceError, SunflowerInstance, edge, to_sunflower

GOLDEN = Path(__file__).parent / "golden"


def square() -> CycleInstance:
    return CycleInstance.from_names(list("abcd"), [[], []])


def drawn_cycle(c: CycleInstance):
    v = oracle(c)
    if not v.feasible:
        return None
    r = rotation_from_assignment(c, v.witness)
    return r, draw(c, r)


def interior(path):
    return _simplify(path)[1:-1]


def check_drawing_properties(inst, r, d: OrthogonalDrawing) -> None:
    sf = to_sunflower(inst) if isinstance(inst, CycleInstance) else inst
    verdict = validate_drawing(sf, d)
    assert verdict.feasible, [v.describe(sf) for v in verdict.violations]
    for key, path in d.paths.items():
        bends = interior(path)
        if key[1] == d.root:
            assert len(bends) == 3
            continue
        (ya, yb) = sorted((d.points[key[1][0]][1], d.points[key[1][1]][1]))
        low = [p for p in bends if abs(p[1] - ya) <= 1]
        high = [p for p in bends if abs(p[1] - yb) <= 1]
        assert len(low) <= 1 and len(high) <= 2 and len(low) + len(high) == len(bends)
    # vertices on increasing rows of an st-ordering of the shared graph
    rows = sorted(d.points, key=lambda v: d.points[v][1])
    assert len({p[1] for p in d.points.values()}) == sf.n
    assert is_st_order(sf.shared, [sf.index[v] for v in rows])
    assert set(d.root) == {rows[0], rows[-1]}
    # ports follow the rotation counterclockwise
    for v, ring in r.items():
        seq = [PORTS.index(d.ports[(sf.names[v], sf.names[w])]) for w in ring]
        drops = sum(1 for a, b in zip(seq, seq[1:] + seq[:1]) if b < a)
        assert drops <= 1
    xs = [p[0] for p in d.points.values()] + [p[0] for path in d.paths.values() for p in path]
    ys = [p[1] for p in d.points.values()] + [p[1] for path in d.paths.values() for p in path]
    edges = len(sf.shared) + sum(len(es) for es in sf.exclusive)
    assert max(xs) - min(xs) <= sf.n + edges
    assert max(ys) - min(ys) <= BAND * sf.n + BAND


def test_st_order_on_c4():
    edges = [edge(0, 1), edge(1, 2), edge(2, 3), edge(3, 0)]
    assert st_order(edges, (0, 1)) == [0, 3, 2, 1]
    assert st_order(edges, (1, 0)) == [1, 2, 3, 0]


@pytest.mark.parametrize("root", [(a, b) for a in range(4) for b in range(4) if a != b])
def test_st_order_on_k4(root):
    edges = [edge(*e) for e in nx.complete_graph(4).edges()]
    order = st_order(edges, root)
    assert order[0] == root[0] and order[-1] == root[1] and is_st_order(edges, order)


def test_st_order_on_triangle():
    edges = [edge(0, 1), edge(1, 2), edge(0, 2)]
    assert st_order(edges, (0, 2)) == [0, 1, 2]


def test_st_order_errors():
    with pytest.raises(InstanceError, match="biconnected"):
        st_order([edge(0, 1), edge(1, 2), edge(0, 2), edge(2, 3)], (0, 1))
    with pytest.raises(InstanceError, match="root"):
        st_order([edge(0, 1), edge(1, 2), edge(0, 2)], (0, 3))


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_st_order_invariant_on_random_biconnected_graphs(n, seed):
    g = nx.gnp_random_graph(n, 0.5, seed=seed)
    if not nx.is_biconnected(g):
        return
    edges = [edge(*e) for e in g.edges()]
    root = edges[seed % len(edges)]
    order = st_order(edges, root)
    assert {order[0], order[-1]} == set(root) and is_st_order(edges, order)


def test_square_root_edge_has_three_bends():
    c = square()
    r, d = drawn_cycle(c)
    assert d.bends((SHARED, d.root)) == 3
    assert all(d.bends(k) == 0 for k in d.paths if k[1] != d.root)
    check_drawing_properties(c, r, d)


def test_draw_rejects_bad_rotations():
    c = CycleInstance.from_names(list("abcdef"), [[("a", "c"), ("a", "d")], [("a", "e")]])
    sf = to_sunflower(c)
    bad = rotation_from_assignment(c, {edge(0, 2): Side.LEFT, edge(0, 3): Side.LEFT, edge(0, 4): Side.RIGHT})
    with pytest.raises(InstanceError, match="orthogonality"):
        draw(sf, bad)
    with pytest.raises(InstanceError, match="not a SEFE"):
        draw(sf, {v: () for v in range(sf.n)})


def test_draw_rejects_non_biconnected_shared_graph():
    inst = SunflowerInstance.from_names(list("abcd"), [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")], [[], []])
    r = {0: (1, 2), 1: (2, 0), 2: (0, 1, 3), 3: (2,)}
    with pytest.raises(InstanceError, match="biconnected"):
        draw(inst, r)


def test_random_cycle_drawings():
    count = 0
    for c in random_cycle_corpus(60, seed=44):
        out = drawn_cycle(c)
        if out is None:
            continue
        check_drawing_properties(c, *out)
        count += 1
    assert count >= 20


def test_random_biconnected_drawings():
    count = 0
    for inst in random_biconnected_corpus(40, seed=45, nmax=12):
        try:
            v = rotation_search(inst)
        except SearchTooLarge:
            continue
        if not v.feasible:
            continue
        check_drawing_properties(inst, v.witness, draw(inst, v.witness))
        count += 1
    assert count >= 15


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 12), st.integers(0, 5), st.integers(0, 5), st.integers(0, 10**6))
def test_drawing_properties_hold(n, b1, b2, seed):
    try:
        c = generate_random(n, [b1, b2], seed=seed)
    except InstanceError:
        return
    out = drawn_cycle(c)
    if out is not None:
        check_drawing_properties(c, *out)


def unit_square(paths=None) -> OrthogonalDrawing:
    pts = {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)}
    base = {
        (SHARED, ("a", "b")): [(0, 0), (1, 0)],
        (SHARED, ("b", "c")): [(1, 0), (1, 1)],
        (SHARED, ("c", "d")): [(1, 1), (0, 1)],
        (SHARED, ("a", "d")): [(0, 0), (0, 1)],
    }
    base.update(paths or {})
    return OrthogonalDrawing(pts, base)


def test_hand_built_unit_square_is_valid():
    assert validate_drawing(square(), unit_square()).feasible


def test_four_bend_edge_is_named():
    c = CycleInstance.from_names(list("abcd"), [[("a", "c")], []])
    path = [(0, 0), (-1, 0), (-1, -1), (2, -1), (2, 1), (1, 1)]
    assert count_bends(path) == 4
    v = validate_drawing(c, unit_square({(0, ("a", "c")): path}))
    assert not v.feasible
    assert [(x.kind, x.edges) for x in v.violations] == [("too-many-bends", (edge(0, 2),))]


def test_same_graph_crossing_is_detected():
    c = CycleInstance.from_names(list("abcd"), [[("a", "c"), ("b", "d")], []])
    paths = {
        (0, ("a", "c")): [(0, 0), (0, -1), (2, -1), (2, 1), (1, 1)],
        (0, ("b", "d")): [(1, 0), (1, -2), (-1, -2), (-1, 1), (0, 1)],
    }
    v = validate_drawing(c, unit_square(paths))
    assert not v.feasible
    assert "crossing-graph-1" in {x.kind for x in v.violations}


def test_other_graph_crossing_is_allowed():
    c = CycleInstance.from_names(list("abcd"), [[("a", "c")], [("b", "d")]])
    paths = {
        (0, ("a", "c")): [(0, 0), (0, -1), (2, -1), (2, 1), (1, 1)],
        (1, ("b", "d")): [(1, 0), (1, -2), (-1, -2), (-1, 1), (0, 1)],
    }
    assert validate_drawing(c, unit_square(paths)).feasible


def test_structural_defects_are_reported():
    c = square()
    d = unit_square({(SHARED, ("a", "b")): [(0, 0), (1, 1), (1, 0)]})
    assert "not-rectilinear" in {x.kind for x in validate_drawing(c, d).violations}
    d = unit_square({(SHARED, ("a", "b")): [(0, 0), (0, 1), (1, 1), (1, 0)]})
    assert "through-vertex" in {x.kind for x in validate_drawing(c, d).violations}
    d = unit_square()
    del d.paths[(SHARED, ("a", "b"))]
    assert {x.kind for x in validate_drawing(c, d).violations} == {"missing-edge"}


def test_svg_of_empty_drawing():
    text = export_svg(OrthogonalDrawing({}, {}))
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert "<polyline" not in text and "<circle" not in text


def test_svg_of_square():
    text = export_svg(unit_square())
    assert text.count('<polyline class="shared"') == 4 and text.count("<circle") == 4


def test_svg_is_deterministic_and_matches_golden():
    c = CycleInstance.from_names(list("abcdef"), [[("a", "c"), ("a", "d")], [("b", "e")]])
    a = oracle(c).witness
    first = export_svg(draw(c, rotation_from_assignment(c, a)))
    second = export_svg(draw(c, rotation_from_assignment(c, a)))
    assert first == second
    assert 'class="g1"' in first and 'class="g2"' in first
    assert first == (GOLDEN / "hexagon.svg").read_text()
