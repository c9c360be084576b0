"""Side-assignment and rotation-system verifiers plus the exhaustive side oracle.

A side assignment places every exclusive edge of a shared-cycle instance to the
Left (inside) or Right (outside) of the cycle, where the cycle `order` is read
counterclockwise.  Two kinds of constraints decide feasibility:

* planarity: alternating chords of the same graph lie on different sides;
* orthogonality: if a vertex has two exclusive edges of one graph on the same
  side, every exclusive edge at that vertex lies on that side.

Exclusive edges that reach isolated vertices are grouped into detached
components.  A component must lie on one side.  It imposes no planarity
constraint when it is a flexible connector (see `detached_components`).
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Mapping

from .instance import CycleInstance, Edge, InstanceError, SunflowerInstance, alternate, edge

DEFAULT_CAP = 24


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"

    def flip(self) -> Side:
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


SideAssignment = dict[Edge, Side]
RotationSystem = dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class Violation:
    kind: str
    edges: tuple[Edge, ...]
    vertex: int | None = None

    def describe(self, inst: CycleInstance | SunflowerInstance) -> str:
        where = f" at {inst.names[self.vertex]}" if self.vertex is not None else ""
        edges = ", ".join("-".join(inst.name_edge(e)) for e in self.edges)
        return f"{self.kind}{where}: {edges}"


@dataclass
class Verdict:
    feasible: bool
    witness: object | None = None
    violations: list[Violation] = field(default_factory=list)
    reason: str = ""


class CapExceeded(ValueError):
    """The instance has more exclusive edges than the oracle cap allows."""


class NotSefeError(ValueError):
    """A rotation system is not a simultaneous embedding of the input graphs."""

    def __init__(self, violations: list[Violation]):
        super().__init__("rotation system is not a SEFE: " + "; ".join(v.kind for v in violations))
        self.violations = violations


def flip_assignment(a: Mapping[Edge, Side]) -> SideAssignment:
    return {e: s.flip() for e, s in a.items()}


# ---------------------------------------------------------------------------
# Detached components (exclusive edges through isolated vertices)


@dataclass(frozen=True)
class DetachedComponent:
    edges: tuple[Edge, ...]
    anchors: tuple[int, ...]
    flexible: bool


def chords(c: CycleInstance) -> list[tuple[int, Edge]]:
    """Exclusive edges with both endpoints on the cycle, tagged by graph."""
    return [(i, e) for i, e in c.all_exclusive if e[0] in c.pos and e[1] in c.pos]


def detached_components(c: CycleInstance) -> list[DetachedComponent]:
    """Group exclusive edges that touch isolated vertices.

    A component is flexible when it has at most one anchor on the cycle, or
    when it is a path between two anchors whose edges alternate between two
    graphs and which is long enough to cross, one edge at a time, every chord
    or other component that separates or touches its anchors.  Such a path can
    be routed inside its face without a same-graph crossing, so only its side
    matters.
    """
    if not c.isolated:
        return []
    adj: dict[int, list[tuple[int, Edge]]] = {}
    for i, e in c.all_exclusive:
        if e[0] in c.isolated or e[1] in c.isolated:
            adj.setdefault(e[0], []).append((i, e))
            adj.setdefault(e[1], []).append((i, e))
    seen: set[int] = set()
    raw: list[tuple[list[tuple[int, Edge]], list[int]]] = []
    for start in sorted(c.isolated):
        if start in seen or start not in adj:
            continue
        stack, comp_edges, anchors = [start], set(), set()
        seen.add(start)
        while stack:
            x = stack.pop()
            for i, e in adj.get(x, ()):
                comp_edges.add((i, e))
                y = e[0] if e[1] == x else e[1]
                if y in c.pos:
                    anchors.add(y)
                elif y not in seen:
                    seen.add(y)
                    stack.append(y)
        raw.append((sorted(comp_edges, key=lambda t: t[1]), sorted(anchors)))
    cycle_chords = chords(c)
    out = []
    for idx, (tagged, anchors) in enumerate(raw):
        flexible = len(anchors) <= 1
        if len(anchors) == 2:
            path_graphs = _path_graph_sequence(tagged, anchors)
            if path_graphs is not None:
                a, b = anchors
                pair = edge(a, b)
                needed = sum(
                    1 for _, f in cycle_chords if set(f) & {a, b} or alternate(c, pair, f)
                )
                for jdx, (_, other) in enumerate(raw):
                    if jdx != idx and len(other) == 2:
                        o = edge(*other)
                        if set(o) & {a, b} or alternate(c, pair, o):
                            needed += 1
                alternating = all(x != y for x, y in zip(path_graphs, path_graphs[1:]))
                flexible = alternating and len(path_graphs) >= 2 * needed + 1
        out.append(DetachedComponent(tuple(e for _, e in tagged), tuple(anchors), flexible))
    return out


def _path_graph_sequence(tagged: list[tuple[int, Edge]], anchors: list[int]) -> list[int] | None:
    """Graph indices along the component if it is a simple path between the anchors."""
    adj: dict[int, list[tuple[int, Edge]]] = {}
    for i, e in tagged:
        adj.setdefault(e[0], []).append((i, e))
        adj.setdefault(e[1], []).append((i, e))
    if any(len(v) > 2 for v in adj.values()) or len(adj[anchors[0]]) != 1:
        return None
    seq, prev, cur = [], None, anchors[0]
    while True:
        nxt = [t for t in adj[cur] if t[1] != prev]
        if not nxt:
            break
        i, e = nxt[0]
        seq.append(i)
        prev, cur = e, (e[0] if e[1] == cur else e[1])
    return seq if cur == anchors[1] and len(seq) == len(tagged) else None


def _require_supported(comps: list[DetachedComponent]) -> None:
    for comp in comps:
        if not comp.flexible:
            raise InstanceError(
                "unsupported structure: exclusive edges through isolated vertices must form "
                "flexible connectors (alternating paths between two cycle vertices)"
            )


# ---------------------------------------------------------------------------
# Side-assignment verifier


def check_assignment(c: CycleInstance, a: Mapping[Edge, Side]) -> Verdict:
    """Verify the planarity and orthogonality constraints for a side assignment."""
    missing = [e for _, e in c.all_exclusive if e not in a]
    if missing:
        raise ValueError(f"partial assignment: no side for {c.name_edge(missing[0])}")
    comps = detached_components(c)
    _require_supported(comps)
    violations: list[Violation] = []
    for comp in comps:
        if len({a[e] for e in comp.edges}) > 1:
            violations.append(Violation("detached", comp.edges))
    cyc = chords(c)
    for (i, e), (j, f) in combinations(cyc, 2):
        if i == j and a[e] == a[f] and alternate(c, e, f):
            violations.append(Violation("planarity", (e, f)))
    for v in c.order:
        violations.extend(_orthogonality_at(c, v, a))
    return Verdict(not violations, dict(a) if not violations else None, violations)


def _orthogonality_at(c: CycleInstance, v: int, a: Mapping[Edge, Side]) -> list[Violation]:
    inc = c.incident[v]
    out = []
    for i in range(c.k):
        mine = [e for j, e in inc if j == i]
        for e, f in combinations(mine, 2):
            if a[e] != a[f]:
                continue
            for _, g in inc:
                if a[g] != a[e]:
                    out.append(Violation("orthogonality", (e, f, g), v))
    return out


# ---------------------------------------------------------------------------
# Oracle


@dataclass
class _Units:
    """Edges grouped into units whose relative sides are fixed by planarity."""

    unit_of: dict[Edge, int]
    base: dict[Edge, int]
    members: list[list[Edge]]


def _build_units(c: CycleInstance) -> _Units | Violation:
    by_graph: dict[int, list[Edge]] = {}
    for i, e in chords(c):
        by_graph.setdefault(i, []).append(e)
    adj: dict[Edge, list[Edge]] = {}
    for es in by_graph.values():
        for e in es:
            adj[e] = []
        for e, f in combinations(es, 2):
            if alternate(c, e, f):
                adj[e].append(f)
                adj[f].append(e)
    unit_of: dict[Edge, int] = {}
    base: dict[Edge, int] = {}
    members: list[list[Edge]] = []
    for start in sorted(adj):
        if start in unit_of:
            continue
        u = len(members)
        members.append([start])
        unit_of[start], base[start] = u, 0
        stack = [start]
        while stack:
            e = stack.pop()
            for f in adj[e]:
                if f not in unit_of:
                    unit_of[f], base[f] = u, 1 - base[e]
                    members[u].append(f)
                    stack.append(f)
                elif base[f] == base[e]:
                    return Violation("planarity", (e, f))
    for comp in detached_components(c):
        u = len(members)
        members.append(list(comp.edges))
        for e in comp.edges:
            unit_of[e], base[e] = u, 0
    return _Units(unit_of, base, [sorted(m) for m in members])


def oracle(
    c: CycleInstance, cap: int | None = DEFAULT_CAP, jobs: int = 1
) -> Verdict:
    """Decide feasibility by exhaustive search over planarity-component flips.

    The first feasible flip vector in lexicographic order (0 keeps the base
    coloring, whose smallest edge is Left) is returned as the witness.
    """
    total = sum(len(es) for es in c.exclusive)
    if cap is not None and total > cap:
        raise CapExceeded(f"{total} exclusive edges exceed the oracle cap of {cap}")
    _require_supported(detached_components(c))
    units = _build_units(c)
    if isinstance(units, Violation):
        return Verdict(False, violations=[units], reason="alternation graph is not bipartite")
    if not units.members:
        return Verdict(True, {})
    search = _FlipSearch(c, units)
    if jobs > 1 and len(units.members) > 1:
        flips = _parallel_search(c, units, jobs)
    else:
        flips = search.run({})
    if flips is None:
        return Verdict(False, reason="no side assignment satisfies all constraints")
    a = search.assignment(flips)
    verdict = check_assignment(c, a)
    assert verdict.feasible, "oracle produced an invalid witness"
    return verdict


def _parallel_search(c: CycleInstance, units: _Units, jobs: int) -> list[int] | None:
    bits = min(max(1, (jobs - 1).bit_length()), len(units.members) - 1)
    prefixes = [
        {u + 1: val for u, val in enumerate(vals)} for vals in product((0, 1), repeat=bits)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_search_with_prefix, [(c, units, p) for p in prefixes]))
    for r in results:
        if r is not None:
            return r
    return None


def _search_with_prefix(args: tuple[CycleInstance, _Units, dict[int, int]]) -> list[int] | None:
    c, units, prefix = args
    return _FlipSearch(c, units).run(prefix)


class _FlipSearch:
    """Depth-first search over unit flips with orthogonality propagation."""

    def __init__(self, c: CycleInstance, units: _Units):
        self.units = units
        # per vertex: list of (graph, unit, base side) for incident exclusive edges
        self.cons: dict[int, list[tuple[int, int, int]]] = {}
        self.unit_vertices: list[set[int]] = [set() for _ in units.members]
        for v in c.order:
            entries = [(i, units.unit_of[e], units.base[e]) for i, e in c.incident[v]]
            if len(entries) >= 2:
                self.cons[v] = entries
                for _, u, _ in entries:
                    self.unit_vertices[u].add(v)

    def assignment(self, flips: list[int]) -> SideAssignment:
        sides = (Side.LEFT, Side.RIGHT)
        return {
            e: sides[self.units.base[e] ^ flips[u]]
            for u, es in enumerate(self.units.members)
            for e in es
        }

    def run(self, prefix: dict[int, int]) -> list[int] | None:
        n = len(self.units.members)
        flips = [-1] * n
        trail: list[int] = []

        def assign(u: int, val: int) -> bool:
            queue = [(u, val)]
            while queue:
                u, val = queue.pop()
                if flips[u] != -1:
                    if flips[u] != val:
                        return False
                    continue
                flips[u] = val
                trail.append(u)
                for v in self.unit_vertices[u]:
                    forced = self._vertex(v, flips)
                    if forced is None:
                        return False
                    queue.extend(forced)
            return True

        def undo(mark: int) -> None:
            while len(trail) > mark:
                flips[trail.pop()] = -1

        for u, val in sorted(prefix.items()):
            if not assign(u, val):
                return None
        decisions: list[tuple[int, int, int]] = []
        nxt = 0
        while True:
            while nxt < n and flips[nxt] != -1:
                nxt += 1
            if nxt == n:
                return flips
            mark = len(trail)
            decisions.append((nxt, mark, 0))
            ok = assign(nxt, 0)
            while not ok:
                while decisions and decisions[-1][2] == 1:
                    u, mark, _ = decisions.pop()
                    undo(mark)
                if not decisions:
                    return None
                u, mark, _ = decisions.pop()
                undo(mark)
                if u == 0 and not prefix:
                    # flipping every unit preserves feasibility, so unit 0 stays at 0
                    return None
                decisions.append((u, mark, 1))
                ok = assign(u, 1)
                nxt = 0
            nxt = 0

    def _vertex(self, v: int, flips: list[int]) -> list[tuple[int, int]] | None:
        """Forced unit values at v, or None on a conflict."""
        entries = self.cons.get(v)
        if not entries:
            return []
        seen: dict[tuple[int, int], int] = {}
        required = -1
        assigned_sides = set()
        for i, u, b in entries:
            if flips[u] == -1:
                continue
            s = b ^ flips[u]
            assigned_sides.add(s)
            key = (i, s)
            seen[key] = seen.get(key, 0) + 1
            if seen[key] == 2:
                if required not in (-1, s):
                    return None
                required = s
        if required == -1:
            return []
        if len(assigned_sides) > 1:
            return None
        return [(u, required ^ b) for _, u, b in entries if flips[u] == -1]


# ---------------------------------------------------------------------------
# Witness files


def dump_witness(c: CycleInstance, a: Mapping[Edge, Side]) -> str:
    doc = {"-".join(c.name_edge(e)): s.value for e, s in sorted(a.items())}
    return json.dumps({"assignment": dict(sorted(doc.items()))}, indent=1)


def load_witness(c: CycleInstance, text: str) -> SideAssignment:
    doc = json.loads(text)
    raw = doc.get("assignment") if isinstance(doc, dict) else None
    if not isinstance(raw, dict):
        raise InstanceError("witness must contain an 'assignment' object")
    by_key = {"-".join(c.name_edge(e)): e for _, e in c.all_exclusive}
    out: SideAssignment = {}
    for key, val in raw.items():
        if key not in by_key:
            raise InstanceError(f"witness names unknown exclusive edge {key!r}")
        try:
            out[by_key[key]] = Side(val)
        except ValueError:
            raise InstanceError(f"side must be 'L' or 'R', got {val!r}") from None
    return out


# ---------------------------------------------------------------------------
# Rotation systems


def union_adjacency(inst: CycleInstance | SunflowerInstance) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(inst.n)}
    for e in inst.shared:
        adj[e[0]].add(e[1])
        adj[e[1]].add(e[0])
    for es in inst.exclusive:
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def count_faces(rot: Mapping[int, tuple[int, ...]]) -> int:
    """Number of face orbits of a rotation system (faces lie left of each dart)."""
    where = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
    seen: set[tuple[int, int]] = set()
    faces = 0
    for u, nb in rot.items():
        for v in nb:
            if (u, v) in seen:
                continue
            faces += 1
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                ring = rot[b]
                a, b = b, ring[where[b][a] - 1]
    return faces


def is_planar_rotation(rot: Mapping[int, tuple[int, ...]]) -> bool:
    """Euler check, component by component, for the graph carried by `rot`."""
    comp: dict[int, int] = {}
    ncomp = 0
    for s in rot:
        if s in comp:
            continue
        comp[s] = ncomp
        stack = [s]
        while stack:
            x = stack.pop()
            for y in rot[x]:
                if y not in comp:
                    comp[y] = ncomp
                    stack.append(y)
        ncomp += 1
    vertices = len(rot)
    edges = sum(len(nb) for nb in rot.values()) // 2
    faces = count_faces(rot) + sum(1 for nb in rot.values() if not nb)
    return vertices - edges + faces == 2 * ncomp


def restrict(rot: Mapping[int, tuple[int, ...]], keep: Iterable[Edge]) -> RotationSystem:
    keep = set(keep)
    return {v: tuple(w for w in nb if edge(v, w) in keep) for v, nb in rot.items()}


def check_sefe(inst: CycleInstance | SunflowerInstance, r: Mapping[int, tuple[int, ...]]) -> list[Violation]:
    """Violations of the SEFE property: r must cover the union graph and be planar per graph."""
    adj = union_adjacency(inst)
    out = []
    for v in range(inst.n):
        nb = tuple(r.get(v, ()))
        if len(nb) != len(set(nb)) or set(nb) != adj[v]:
            out.append(Violation("rotation", tuple(sorted(edge(v, w) for w in adj[v] ^ set(nb))), v))
    if out:
        return out
    for i in range(inst.k):
        sub = restrict(r, inst.shared | inst.exclusive[i])
        if not is_planar_rotation(sub):
            out.append(Violation(f"nonplanar-graph-{i + 1}", tuple(sorted(inst.exclusive[i]))))
    return out


def gap_map(inst: CycleInstance | SunflowerInstance, r: Mapping[int, tuple[int, ...]], v: int) -> dict[Edge, int]:
    """Gap of each exclusive edge at v, named by the shared neighbor opening it counterclockwise."""
    ring = r[v]
    shared_nb = [w for w in ring if edge(v, w) in inst.shared]
    if not shared_nb:
        return {edge(v, w): -1 for w in ring}
    start = ring.index(shared_nb[0])
    gaps, current = {}, shared_nb[0]
    for t in range(1, len(ring) + 1):
        w = ring[(start + t) % len(ring)]
        if edge(v, w) in inst.shared:
            current = w
        else:
            gaps[edge(v, w)] = current
    return gaps


def gap_rule_violations(
    v: int, shared_degree: int, gaps: Mapping[Edge, int], graph_of: Mapping[Edge, int]
) -> list[Violation]:
    """Orthogonality at a vertex from the gap of each incident exclusive edge."""
    if shared_degree == 3 and len(set(gaps.values())) > 1:
        return [Violation("orthogonality-degree3", tuple(sorted(gaps)), v)]
    if shared_degree != 2:
        return []
    out = []
    per_graph: dict[tuple[int, int], list[Edge]] = {}
    for e, g in gaps.items():
        per_graph.setdefault((graph_of[e], g), []).append(e)
    for (_, g), es in sorted(per_graph.items()):
        if len(es) >= 2:
            stray = tuple(sorted(f for f, h in gaps.items() if h != g))
            if stray:
                out.append(Violation("orthogonality", tuple(sorted(es)) + stray, v))
    return out


def check_sefe_orthogonality(
    inst: CycleInstance | SunflowerInstance, r: Mapping[int, tuple[int, ...]]
) -> Verdict:
    """Check a SEFE rotation system against the per-vertex gap rules.

    Raises NotSefeError when r is not a SEFE.  For shared graphs with several
    components only rotations are compared; face containment is not checked.
    """
    bad = check_sefe(inst, r)
    if bad:
        raise NotSefeError(bad)
    graph_of = {e: i for i, es in enumerate(inst.exclusive) for e in es}
    shared_deg = {v: 0 for v in range(inst.n)}
    for u, w in inst.shared:
        shared_deg[u] += 1
        shared_deg[w] += 1
    violations = []
    for v in range(inst.n):
        gaps = gap_map(inst, r, v)
        if gaps:
            violations.extend(gap_rule_violations(v, shared_deg[v], gaps, graph_of))
    return Verdict(not violations, dict(r) if not violations else None, violations)


def rotation_from_assignment(c: CycleInstance, a: Mapping[Edge, Side]) -> RotationSystem:
    """Counterclockwise rotation system realizing a side assignment on a pure cycle."""
    if c.isolated:
        raise InstanceError("rotation systems are built for pure cycle instances only")
    m = len(c.order)
    rot: RotationSystem = {}
    for p, v in enumerate(c.order):
        nxt, prv = c.order[(p + 1) % m], c.order[p - 1]
        left, right = [], []
        for _, e in c.incident[v]:
            w = e[0] if e[1] == v else e[1]
            d = (c.pos[w] - p) % m
            (left if a[e] is Side.LEFT else right).append((d, w))
        rot[v] = (
            (nxt,)
            + tuple(w for _, w in sorted(left))
            + (prv,)
            + tuple(w for _, w in sorted(right, reverse=True))
        )
    return rot
