"""Data model for sunflower instances and shared-cycle instances.

Vertices are interned to dense integer ids; names are kept only for I/O and
for mapping between transformed instances.  Edges are normalized tuples with
the smaller id first.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]
NameEdge = tuple[str, str]

MAX_DEGREE = 4


class InstanceError(ValueError):
    """Raised when an instance file is malformed or violates an invariant."""


def edge(u: int, v: int) -> Edge:
    """Return the normal form of the undirected edge uv."""
    if u == v:
        raise InstanceError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def _intern(names: Sequence[str]) -> dict[str, int]:
    index: dict[str, int] = {}
    for name in names:
        if not isinstance(name, str):
            raise InstanceError(f"vertex name must be a string: {name!r}")
        if name in index:
            raise InstanceError(f"duplicate vertex {name!r}")
        index[name] = len(index)
    return index


@dataclass(frozen=True)
class CycleInstance:
    """k graphs whose shared graph is the cycle `order` plus isolated vertices."""

    names: tuple[str, ...]
    order: tuple[int, ...]
    exclusive: tuple[frozenset[Edge], ...]
    isolated: frozenset[int] = frozenset()

    @property
    def k(self) -> int:
        return len(self.exclusive)

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def pos(self) -> dict[int, int]:
        """Cycle position of every on-cycle vertex."""
        return {v: i for i, v in enumerate(self.order)}

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def shared(self) -> frozenset[Edge]:
        m = len(self.order)
        return frozenset(edge(self.order[i], self.order[(i + 1) % m]) for i in range(m))

    @cached_property
    def all_exclusive(self) -> tuple[tuple[int, Edge], ...]:
        """Every exclusive edge tagged with its graph, in sorted order."""
        return tuple((i, e) for i, es in enumerate(self.exclusive) for e in sorted(es))

    @cached_property
    def incident(self) -> dict[int, list[tuple[int, Edge]]]:
        """Exclusive edges at each vertex, tagged with their graph index."""
        inc: dict[int, list[tuple[int, Edge]]] = {v: [] for v in range(self.n)}
        for i, e in self.all_exclusive:
            inc[e[0]].append((i, e))
            inc[e[1]].append((i, e))
        return inc

    def graph_of(self, e: Edge) -> int:
        for i, es in enumerate(self.exclusive):
            if e in es:
                return i
        raise KeyError(e)

    def name_edge(self, e: Edge) -> NameEdge:
        a, b = self.names[e[0]], self.names[e[1]]
        return (a, b) if a <= b else (b, a)

    def id_edge(self, ne: NameEdge) -> Edge:
        return edge(self.index[ne[0]], self.index[ne[1]])

    @classmethod
    def from_names(
        cls,
        order: Sequence[str],
        exclusive: Sequence[Iterable[NameEdge]],
        isolated: Iterable[str] = (),
        vertices: Sequence[str] | None = None,
    ) -> CycleInstance:
        """Build and validate an instance from vertex names."""
        isolated = list(isolated)
        if vertices is None:
            vertices = list(order) + isolated
        index = _intern(vertices)
        for name in list(order) + isolated:
            if name not in index:
                raise InstanceError(f"undeclared vertex {name!r}")
        graphs = []
        for i, es in enumerate(exclusive):
            normalized = set()
            for a, b in es:
                if a not in index or b not in index:
                    raise InstanceError(f"undeclared vertex in edge ({a!r}, {b!r}) of graph {i + 1}")
                e = edge(index[a], index[b])
                if e in normalized:
                    raise InstanceError(f"duplicate edge ({a!r}, {b!r}) in graph {i + 1}")
                normalized.add(e)
            graphs.append(frozenset(normalized))
        inst = cls(
            tuple(vertices),
            tuple(index[v] for v in order),
            tuple(graphs),
            frozenset(index[v] for v in isolated),
        )
        validate(inst)
        return inst


@dataclass(frozen=True)
class SunflowerInstance:
    """k graphs on one vertex set sharing exactly the edges in `shared`."""

    names: tuple[str, ...]
    shared: frozenset[Edge]
    exclusive: tuple[frozenset[Edge], ...]

    @property
    def k(self) -> int:
        return len(self.exclusive)

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def name_edge(self, e: Edge) -> NameEdge:
        a, b = self.names[e[0]], self.names[e[1]]
        return (a, b) if a <= b else (b, a)

    def id_edge(self, ne: NameEdge) -> Edge:
        return edge(self.index[ne[0]], self.index[ne[1]])

    def graph_edges(self, i: int) -> frozenset[Edge]:
        return self.shared | self.exclusive[i]

    @classmethod
    def from_names(
        cls,
        vertices: Sequence[str],
        shared: Iterable[NameEdge],
        exclusive: Sequence[Iterable[NameEdge]],
    ) -> SunflowerInstance:
        index = _intern(vertices)

        def norm(pairs: Iterable[NameEdge], label: str) -> frozenset[Edge]:
            out = set()
            for a, b in pairs:
                if a not in index or b not in index:
                    raise InstanceError(f"undeclared vertex in edge ({a!r}, {b!r}) of {label}")
                e = edge(index[a], index[b])
                if e in out:
                    raise InstanceError(f"duplicate edge ({a!r}, {b!r}) in {label}")
                out.add(e)
            return frozenset(out)

        inst = cls(
            tuple(vertices),
            norm(shared, "shared graph"),
            tuple(norm(es, f"graph {i + 1}") for i, es in enumerate(exclusive)),
        )
        validate(inst)
        return inst


def validate(inst: CycleInstance | SunflowerInstance) -> None:
    """Check every structural invariant, raising InstanceError on the first failure."""
    if inst.k < 1:
        raise InstanceError("k must be at least 1")
    if isinstance(inst, CycleInstance):
        if len(inst.order) < 3:
            raise InstanceError("cycle must have at least 3 vertices")
        if len(set(inst.order)) != len(inst.order):
            raise InstanceError("cycle visits a vertex twice")
        on_cycle = set(inst.order)
        if on_cycle & inst.isolated:
            raise InstanceError("isolated vertex also lies on the cycle")
        missing = set(range(inst.n)) - on_cycle - inst.isolated
        if missing:
            raise InstanceError(f"vertex {inst.names[min(missing)]!r} is neither on the cycle nor isolated")
    shared = inst.shared
    seen: dict[Edge, int] = {}
    for i, es in enumerate(inst.exclusive):
        for e in es:
            if e[0] == e[1]:
                raise InstanceError(f"self-loop at {inst.names[e[0]]!r}")
            if e in shared:
                raise InstanceError(
                    f"exclusive edge {inst.name_edge(e)} of graph {i + 1} duplicates a shared edge"
                )
            if e in seen:
                raise InstanceError(
                    f"sunflower violation: edge {inst.name_edge(e)} is exclusive to graphs "
                    f"{seen[e] + 1} and {i + 1}"
                )
            seen[e] = i
    base = Counter(v for e in shared for v in e)
    for i, es in enumerate(inst.exclusive):
        deg = base.copy()
        deg.update(v for e in es for v in e)
        for v, d in deg.items():
            if d > MAX_DEGREE:
                raise InstanceError(
                    f"degree bound: vertex {inst.names[v]!r} has degree {d} in graph {i + 1}"
                )


def alternate(c: CycleInstance, e: Edge, f: Edge) -> bool:
    """Whether chords e and f interleave along the cycle."""
    try:
        a, b = sorted((c.pos[e[0]], c.pos[e[1]]))
        x, y = c.pos[f[0]], c.pos[f[1]]
    except KeyError as exc:
        raise InstanceError(f"endpoint {exc.args[0]} is not on the cycle") from None
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def exclusive_degree(inst: CycleInstance | SunflowerInstance, v: int, i: int) -> int:
    """Number of exclusive edges of graph i at vertex v."""
    return sum(1 for e in inst.exclusive[i] if v in e)


def union_degree(inst: CycleInstance | SunflowerInstance, v: int) -> int:
    edges = set(inst.shared)
    for es in inst.exclusive:
        edges |= es
    return sum(1 for e in edges if v in e)


def max_union_degree(inst: CycleInstance | SunflowerInstance) -> int:
    deg: Counter[int] = Counter(v for e in inst.shared for v in e)
    for es in inst.exclusive:
        deg.update(v for e in es for v in e)
    return max(deg.values(), default=0)


def to_sunflower(c: CycleInstance) -> SunflowerInstance:
    if c.isolated and not c.order:
        raise InstanceError("empty cycle")
    return SunflowerInstance(c.names, c.shared, c.exclusive)


def shared_cycle_order(n: int, shared: Iterable[Edge]) -> list[int] | None:
    """Return a cyclic order if `shared` is one cycle through vertices of positive degree."""
    adj: dict[int, list[int]] = {}
    count = 0
    for u, v in shared:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
        count += 1
    if len(adj) < 3 or any(len(nb) != 2 for nb in adj.values()) or count != len(adj):
        return None
    start = min(adj)
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return order if len(order) == len(adj) else None


def as_cycle(inst: CycleInstance | SunflowerInstance) -> CycleInstance | None:
    """View a sunflower instance as a cycle instance when its shared graph is a cycle."""
    if isinstance(inst, CycleInstance):
        return inst
    order = shared_cycle_order(inst.n, inst.shared)
    if order is None:
        return None
    isolated = frozenset(range(inst.n)) - set(order)
    return CycleInstance(inst.names, tuple(order), inst.exclusive, isolated)


def load_instance(data: bytes | str) -> CycleInstance | SunflowerInstance:
    """Parse the JSON instance format."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceError(f"parse error: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceError("parse error: top level must be an object")
    if ("cycle" in doc) == ("shared" in doc):
        raise InstanceError("exactly one of 'cycle' and 'shared' must be present")
    k = doc.get("k")
    exclusive = doc.get("exclusive", [])
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InstanceError("'k' must be a positive integer")
    if not isinstance(exclusive, list) or len(exclusive) != k:
        raise InstanceError(f"'exclusive' must list exactly k={k} edge sets")
    exclusive = [_pairs(es, f"exclusive[{i}]") for i, es in enumerate(exclusive)]
    vertices = doc.get("vertices")
    if vertices is not None and not isinstance(vertices, list):
        raise InstanceError("'vertices' must be a list")
    if "cycle" in doc:
        order = doc["cycle"]
        isolated = doc.get("isolated", [])
        if not isinstance(order, list) or not isinstance(isolated, list):
            raise InstanceError("'cycle' and 'isolated' must be lists")
        if vertices is not None:
            declared = set(vertices)
            for name in order + isolated:
                if name not in declared:
                    raise InstanceError(f"undeclared vertex {name!r}")
            extra = [v for v in vertices if v not in set(order) and v not in set(isolated)]
            isolated = isolated + extra
            vertices = [v for v in vertices]
        return CycleInstance.from_names(order, exclusive, isolated, vertices)
    if vertices is None:
        raise InstanceError("'vertices' is required with 'shared'")
    return SunflowerInstance.from_names(vertices, _pairs(doc["shared"], "shared"), exclusive)


def _pairs(raw: object, label: str) -> list[NameEdge]:
    if not isinstance(raw, list):
        raise InstanceError(f"parse error: {label} must be a list of pairs")
    out = []
    for p in raw:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise InstanceError(f"parse error: {label} entry {p!r} is not a pair of names")
        if p[0] == p[1]:
            raise InstanceError(f"self-loop at {p[0]!r} in {label}")
        out.append((p[0], p[1]))
    return out


def instance_to_dict(inst: CycleInstance | SunflowerInstance) -> dict:
    doc: dict = {"k": inst.k, "vertices": list(inst.names)}
    if isinstance(inst, CycleInstance):
        doc["cycle"] = [inst.names[v] for v in inst.order]
        if inst.isolated:
            doc["isolated"] = [inst.names[v] for v in sorted(inst.isolated)]
    else:
        doc["shared"] = [list(inst.name_edge(e)) for e in sorted(inst.shared)]
    doc["exclusive"] = [[list(inst.name_edge(e)) for e in sorted(es)] for es in inst.exclusive]
    return doc


def dump_instance(inst: CycleInstance | SunflowerInstance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1)


def relabel(c: CycleInstance, mapping: Mapping[str, str]) -> CycleInstance:
    """Rename vertices; names missing from `mapping` are kept."""
    names = tuple(mapping.get(x, x) for x in c.names)
    if len(set(names)) != len(names):
        raise InstanceError("relabeling is not injective")
    return CycleInstance(names, c.order, c.exclusive, c.isolated)
