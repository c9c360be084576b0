"""Data model, loader and alternation tests."""
from __future__ import annotations

import json
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthosefe.gadgets import NaeInput, generate_random, generate_theorem3, negative_sefe_instance
from orthosefe.instance import (
    CycleInstance,
    InstanceError,
    SunflowerInstance,
    alternate,
    as_cycle,
    dump_instance,
    edge,
    exclusive_degree,
    load_instance,
    max_union_degree,
)


def cyc(n: int, *graphs) -> CycleInstance:
    names = [str(i) for i in range(n)]
    graphs = graphs or ([], [])
    return CycleInstance.from_names(names, [[(str(a), str(b)) for a, b in es] for es in graphs])


def test_load_square_cycle_without_exclusive_edges():
    inst = load_instance('{"k":2,"cycle":["a","b","c","d"],"exclusive":[[],[]]}')
    assert isinstance(inst, CycleInstance)
    assert inst.n == 4 and all(not es for es in inst.exclusive)


def test_load_shared_graph_gives_sunflower_instance():
    doc = {"k": 1, "vertices": ["a", "b", "c"], "shared": [["a", "b"], ["b", "c"], ["c", "a"]], "exclusive": [[]]}
    inst = load_instance(json.dumps(doc))
    assert isinstance(inst, SunflowerInstance)
    assert len(inst.shared) == 3


def test_degree_bound_is_rejected():
    doc = {
        "k": 2,
        "cycle": ["a", "b", "c", "d", "e", "f"],
        "exclusive": [[["a", "c"], ["a", "d"], ["a", "e"]], []],
    }
    with pytest.raises(InstanceError, match="degree bound"):
        load_instance(json.dumps(doc))


@pytest.mark.parametrize(
    "doc, message",
    [
        ("not json", "parse error"),
        ("[]", "top level"),
        ('{"k":2,"exclusive":[[],[]]}', "exactly one"),
        ('{"k":2,"cycle":["a","b","c"],"shared":[],"exclusive":[[],[]]}', "exactly one"),
        ('{"k":0,"cycle":["a","b","c"],"exclusive":[]}', "positive integer"),
        ('{"k":2,"cycle":["a","b","c"],"exclusive":[[]]}', "exactly k=2"),
        ('{"k":1,"cycle":["a","b","c"],"exclusive":[[["a","a"]]]}', "self-loop"),
        ('{"k":1,"cycle":["a","b","c","d"],"exclusive":[[["a","b"]]]}', "duplicates a shared edge"),
        ('{"k":2,"cycle":["a","b","c","d"],"exclusive":[[["a","c"]],[["c","a"]]]}', "sunflower violation"),
        ('{"k":1,"cycle":["a","b","c","d"],"exclusive":[[["a","z"]]]}', "undeclared vertex"),
        ('{"k":1,"shared":[["a","b"]],"exclusive":[[]]}', "'vertices' is required"),
    ],
)
def test_malformed_inputs_name_the_problem(doc, message):
    with pytest.raises(InstanceError, match=message):
        load_instance(doc)


def test_negative_instance_loads_after_round_trip():
    c = negative_sefe_instance()
    again = load_instance(dump_instance(c))
    assert again == c


def test_alternate_examples():
    c4 = cyc(4)
    assert alternate(c4, edge(0, 2), edge(1, 3))
    c6 = cyc(6)
    assert not alternate(c6, edge(0, 2), edge(3, 5))
    assert not alternate(c6, edge(0, 2), edge(0, 4))


def test_alternate_rejects_off_cycle_endpoint():
    c = CycleInstance.from_names(["a", "b", "c", "d"], [[], []], isolated=["x"])
    with pytest.raises(InstanceError, match="not on the cycle"):
        alternate(c, edge(0, 2), edge(1, 4))


@pytest.mark.parametrize("n", range(4, 9))
def test_alternate_is_symmetric_and_dihedral_invariant(n):
    c = cyc(n)
    chords = [(a, b) for a, b in combinations(range(n), 2) if (b - a) % n not in (1, n - 1)]
    images = []
    for r in range(n):
        for s in (1, -1):
            order = [(s * i + r) % n for i in range(n)]
            images.append(CycleInstance(c.names, tuple(order), c.exclusive, c.isolated))
    for e, f in combinations(chords, 2):
        base = alternate(c, edge(*e), edge(*f))
        assert base == alternate(c, edge(*f), edge(*e))
        assert all(alternate(img, edge(*e), edge(*f)) == base for img in images)


def test_exclusive_degree_examples():
    c = cyc(6, [(0, 2), (0, 3)], [(1, 4)])
    assert exclusive_degree(c, 5, 0) == 0
    assert exclusive_degree(c, 0, 0) == 2
    assert exclusive_degree(c, 1, 1) == 1


def test_exclusive_degree_of_gadget_vertex_in_third_graph():
    c, gm = generate_theorem3(NaeInput.of(3, [(1, 2, 3)]))
    assert exclusive_degree(c, gm["w_2^1"], 2) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 12), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
def test_exclusive_degree_matches_naive_scan(n, b1, b2, seed):
    try:
        c = generate_random(n, [b1, b2], seed=seed)
    except InstanceError:
        return
    for v in range(c.n):
        for i in range(2):
            naive = sum(1 for a, b in c.exclusive[i] if v in (a, b))
            assert exclusive_degree(c, v, i) == naive


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 12), st.integers(0, 4), st.integers(0, 4), st.integers(0, 10**6))
def test_dump_then_load_is_identity(n, b1, b2, seed):
    try:
        c = generate_random(n, [b1, b2], seed=seed)
    except InstanceError:
        return
    assert load_instance(dump_instance(c)) == c
    sf = SunflowerInstance(c.names, c.shared, c.exclusive)
    again = load_instance(dump_instance(sf))
    assert again == sf


def test_as_cycle_recognizes_cycle_shared_graph():
    sf = SunflowerInstance.from_names(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], [[("a", "c")]])
    c = as_cycle(sf)
    assert c is not None and len(c.order) == 4 and c.exclusive == sf.exclusive
    theta = SunflowerInstance.from_names(
        ["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")], [[]]
    )
    assert as_cycle(theta) is None


def test_union_degree():
    c = cyc(6, [(0, 2), (0, 3)], [(0, 4)])
    assert max_union_degree(c) == 5
