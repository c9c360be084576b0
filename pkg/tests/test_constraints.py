"""Side-assignment verifier, oracle and rotation-system checks."""
from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import all_assignments, cycle_family, flip, rotation_feasible
from orthosefe.constraints import (
    CapExceeded,
    NotSefeError,
    Side,
    check_assignment,
    check_sefe_orthogonality,
    dump_witness,
    load_witness,
    oracle,
    rotation_from_assignment,
)
from orthosefe.gadgets import generate_random, negative_sefe_instance
from orthosefe.instance import CycleInstance, InstanceError, SunflowerInstance, edge

L, R = Side.LEFT, Side.RIGHT


def cyc(n: int, g1=(), g2=()) -> CycleInstance:
    names = [str(i) for i in range(n)]
    return CycleInstance.from_names(names, [[(str(a), str(b)) for a, b in es] for es in (g1, g2)])


def random_instance(n: int, b1: int, b2: int, seed: int) -> CycleInstance | None:
    try:
        return generate_random(n, [b1, b2], seed=seed)
    except InstanceError:
        return None


def test_side_flip_is_an_involution():
    for s in Side:
        assert s.flip().flip() is s and s.flip() is not s


def test_empty_assignment_is_feasible():
    assert check_assignment(cyc(4), {}).feasible


def test_alternating_pair_on_one_side_violates_planarity():
    c = cyc(6, [(0, 2), (1, 3)])
    v = check_assignment(c, {edge(0, 2): L, edge(1, 3): L})
    assert not v.feasible
    assert [(x.kind, x.edges) for x in v.violations] == [("planarity", (edge(0, 2), edge(1, 3)))]


def test_orthogonality_violation_names_vertex_and_edges():
    c = cyc(6, [(0, 2), (0, 3)], [(0, 4)])
    v = check_assignment(c, {edge(0, 2): L, edge(0, 3): L, edge(0, 4): R})
    assert not v.feasible
    assert [(x.kind, x.vertex) for x in v.violations] == [("orthogonality", 0)]
    assert set(v.violations[0].edges) == {edge(0, 2), edge(0, 3), edge(0, 4)}
    assert "orthogonality at 0" in v.violations[0].describe(c)


def test_partial_assignment_is_rejected():
    c = cyc(4, [(0, 2)])
    with pytest.raises(ValueError, match="partial"):
        check_assignment(c, {})


def test_oracle_examples():
    assert not oracle(negative_sefe_instance()).feasible
    v = oracle(cyc(4, [(0, 2)]))
    assert v.feasible and v.witness == {edge(0, 2): L}


def test_oracle_cap():
    c = generate_random(12, [6, 6], seed=3)
    with pytest.raises(CapExceeded):
        oracle(c, cap=11)
    assert oracle(c, cap=None).feasible == oracle(c, cap=12).feasible


@pytest.mark.parametrize("seed", range(40))
def test_oracle_matches_naive_enumeration(seed):
    rng = random.Random(seed)
    c = random_instance(8, rng.randint(0, 5), rng.randint(0, 5), seed)
    if c is None:
        pytest.skip("generator budget not reachable")
    naive = any(check_assignment(c, a).feasible for a in all_assignments(c))
    verdict = oracle(c)
    assert verdict.feasible == naive
    if verdict.feasible:
        assert check_assignment(c, verdict.witness).feasible


def test_oracle_is_deterministic_across_jobs():
    c = generate_random(10, [4, 4], seed=11)
    assert oracle(c, jobs=1).witness == oracle(c, jobs=2).witness


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 10), st.integers(0, 4), st.integers(0, 4), st.integers(0, 10**6), st.randoms())
def test_global_flip_symmetry(n, b1, b2, seed, rnd):
    c = random_instance(n, b1, b2, seed)
    if c is None:
        return
    a = {e: rnd.choice((L, R)) for _, e in c.all_exclusive}
    assert check_assignment(c, a).feasible == check_assignment(c, flip(a)).feasible


def test_witness_round_trip():
    c = cyc(6, [(0, 2)], [(1, 4)])
    a = {edge(0, 2): L, edge(1, 4): R}
    text = dump_witness(c, a)
    assert '"0-2": "L"' in text
    assert load_witness(c, text) == a
    with pytest.raises(InstanceError, match="unknown exclusive edge"):
        load_witness(c, '{"assignment": {"0-3": "L"}}')
    with pytest.raises(InstanceError, match="'L' or 'R'"):
        load_witness(c, '{"assignment": {"0-2": "X"}}')


def test_no_exclusive_edges_any_planar_embedding_is_feasible():
    c = cyc(5)
    assert check_sefe_orthogonality(c, rotation_from_assignment(c, {})).feasible


def test_rotation_of_feasible_assignment_passes_and_conversely():
    for c in cycle_family(nmax=6, emax=3):
        for a in all_assignments(c):
            r = rotation_from_assignment(c, a)
            expected = check_assignment(c, a)
            try:
                assert check_sefe_orthogonality(c, r).feasible == expected.feasible
            except NotSefeError:
                assert any(x.kind == "planarity" for x in expected.violations)


def test_oracle_equals_rotation_view_on_small_cycles():
    for c in cycle_family(nmax=6, emax=4):
        assert oracle(c).feasible == rotation_feasible(c)


def _straight_line_rotation(pos, edges):
    adj = {v: [] for v in pos}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    angle = lambda v, w: math.atan2(pos[w][1] - pos[v][1], pos[w][0] - pos[v][0])  # noqa: E731
    return {v: tuple(sorted(nb, key=lambda w: angle(v, w))) for v, nb in adj.items()}


def theta_instance():
    names = ["a", "b", "c", "d", "e", "f", "g", "h"]
    shared = [("a", "c"), ("c", "f"), ("f", "b"), ("a", "d"), ("d", "g"), ("g", "b"), ("a", "e"), ("e", "h"), ("h", "b")]
    inst = SunflowerInstance.from_names(names, shared, [[("a", "f")], [("a", "h")]])
    xy = {"a": (0, 0), "b": (6, 0), "c": (2, 2), "f": (4, 2), "d": (2, 0), "g": (4, 0), "e": (2, -2), "h": (4, -2)}
    pos = {inst.index[k]: p for k, p in xy.items()}
    edges = list(inst.shared) + [e for es in inst.exclusive for e in es]
    return inst, _straight_line_rotation(pos, edges)


def test_degree3_vertex_with_edges_in_different_gaps():
    inst, r = theta_instance()
    v = check_sefe_orthogonality(inst, r)
    assert not v.feasible
    assert [(x.kind, inst.names[x.vertex]) for x in v.violations] == [("orthogonality-degree3", "a")]


def test_non_sefe_rotation_is_reported_distinctly():
    inst, r = theta_instance()
    a = inst.index["a"]
    r[a] = r[a][1:]
    with pytest.raises(NotSefeError) as info:
        check_sefe_orthogonality(inst, r)
    assert info.value.violations[0].kind == "rotation"


def test_nonplanar_rotation_is_not_a_sefe():
    c6 = cyc(6, [(0, 3)], [(1, 4)])
    r6 = rotation_from_assignment(c6, {edge(0, 3): L, edge(1, 4): R})
    bad = dict(r6)
    bad[0] = (bad[0][1], bad[0][0], bad[0][2])
    with pytest.raises(NotSefeError, match="nonplanar"):
        check_sefe_orthogonality(c6, bad)
