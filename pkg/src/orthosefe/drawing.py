"""Orthogonal grid drawings of simultaneous embeddings with at most three bends per edge.

Vertices are added in an st-ordering of the shared graph, each owning a band
of three grid rows.  Every edge runs vertically between the bands of its
endpoints and bends only inside them: at most once around its lower endpoint
and at most twice around its upper endpoint.  The root edge {v_1, v_n} wraps
around the left side with exactly three bends.

Around each vertex the incident edges are split into four ports E, N, W, S in
counterclockwise order, with at most one edge of each graph per port.  Edges
of different graphs sharing a port overlap next to the vertex and separate
inside the band.  Columns are ordered by the left-to-right relation of each
graph's planar st-embedding together with the side each port forces.
"""
from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .constraints import NotSefeError, Verdict, Violation, check_sefe_orthogonality
from .instance import CycleInstance, Edge, InstanceError, NameEdge, SunflowerInstance, edge, to_sunflower

PORTS = ("E", "N", "W", "S")  # counterclockwise
SHARED = -1
BAND = 3  # grid rows per vertex
Point = tuple[int, int]


class DrawingError(ValueError):
    """No drawing could be constructed for the given rotation system."""


# ---------------------------------------------------------------------------
# st-ordering


def st_order(edges: Iterable[Edge], root: Edge) -> list[int]:
    """Vertices v_1..v_n with {v_1, v_n} = root, each interior vertex having
    a lower- and a higher-numbered neighbor."""
    g = nx.Graph(list(edges))
    s, t = root
    if not g.has_edge(s, t):
        raise InstanceError("root edge is not in the graph")
    if g.number_of_nodes() < 3 or not nx.is_biconnected(g):
        raise InstanceError("shared graph is not biconnected")
    pre: dict[int, int] = {}
    parent: dict[int, int] = {}
    low: dict[int, int] = {}
    preorder: list[int] = []

    def dfs(v: int) -> None:
        pre[v] = len(preorder)
        preorder.append(v)
        low[v] = v
        nbrs = sorted(g[v])
        if v == s:
            nbrs.remove(t)
            nbrs.insert(0, t)
        for w in nbrs:
            if w not in pre:
                parent[w] = v
                dfs(w)
                if pre[low[w]] < pre[low[v]]:
                    low[v] = low[w]
            elif w != parent.get(v) and pre[w] < pre[low[v]]:
                low[v] = w

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * g.number_of_nodes() + 100))
    try:
        dfs(s)
    finally:
        sys.setrecursionlimit(limit)
    nxt: dict[int, int | None] = {s: t, t: None}
    prv: dict[int, int | None] = {s: None, t: s}
    sign = {s: -1}
    for v in preorder[2:]:
        p = parent[v]
        if sign[low[v]] == -1:
            a, b = prv[p], p
            sign[p] = 1
        else:
            a, b = p, nxt[p]
            sign[p] = -1
        prv[v], nxt[v] = a, b
        if a is not None:
            nxt[a] = v
        if b is not None:
            prv[b] = v
    out, v = [], s
    while v is not None:
        out.append(v)
        v = nxt[v]
    return out


def is_st_order(edges: Iterable[Edge], order: Sequence[int]) -> bool:
    idx = {v: i for i, v in enumerate(order)}
    adj: dict[int, list[int]] = {v: [] for v in order}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    if order[-1] not in adj[order[0]]:
        return False
    return all(
        min(idx[w] for w in adj[v]) < idx[v] < max(idx[w] for w in adj[v]) for v in order[1:-1]
    )


# ---------------------------------------------------------------------------
# Drawings


@dataclass
class OrthogonalDrawing:
    """Vertex points and rectilinear edge paths keyed by (graph, edge).

    Graph is SHARED (-1) for shared edges and the 0-based graph index
    otherwise; edges are name pairs in the instance's normalized order.
    """

    points: dict[str, Point]
    paths: dict[tuple[int, NameEdge], list[Point]]
    root: NameEdge | None = None
    ports: dict[tuple[str, str], str] = field(default_factory=dict)  # (vertex, neighbor) -> port

    def bends(self, key: tuple[int, NameEdge]) -> int:
        return count_bends(self.paths[key])


def count_bends(path: Sequence[Point]) -> int:
    pts = _simplify(path)
    return max(len(pts) - 2, 0)


def _simplify(path: Sequence[Point]) -> list[Point]:
    pts: list[Point] = []
    for p in path:
        if pts and pts[-1] == p:
            continue
        if len(pts) >= 2:
            (x0, y0), (x1, y1) = pts[-2], pts[-1]
            if (x0 == x1 == p[0]) or (y0 == y1 == p[1]):
                pts[-1] = p
                continue
        pts.append(p)
    return pts


# ---------------------------------------------------------------------------
# Ports


def _graph_of(inst: SunflowerInstance) -> dict[Edge, int]:
    g = {e: SHARED for e in inst.shared}
    for i, es in enumerate(inst.exclusive):
        g.update({e: i for e in es})
    return g


def _port_choices(
    v: int,
    ring: Sequence[int],
    kind: Mapping[int, int],
    lower: set[int],
    first: bool,
    last: bool,
    root_nb: int | None,
    strict: bool = True,
) -> list[dict[int, str]]:
    """Valid port maps at v, best first (fewest bends next to v)."""
    d = len(ring)
    seen, scored = set(), []
    for start in range(d):
        seq = list(ring[start:]) + list(ring[:start])
        for a, b, c in combinations_with_replacement(range(d + 1), 3):
            groups = (seq[:a], seq[a:b], seq[b:c], seq[c:])
            pm = {w: PORTS[j] for j, grp in enumerate(groups) for w in grp}
            key = tuple(sorted(pm.items()))
            if key in seen:
                continue
            seen.add(key)
            score = _port_score(groups, kind, lower, first, last, root_nb, strict)
            if score is not None:
                scored.append((score, key, pm))
    scored.sort(key=lambda x: (x[0], x[1]))
    return [pm for _, _, pm in scored]


def _port_score(groups, kind, lower, first, last, root_nb, strict) -> int | None:
    e_, n_, w_, s_ = groups
    for grp in groups:
        kinds = [kind[w] for w in grp]
        if SHARED in kinds and len(grp) > 1:
            return None
        if len(set(kinds)) != len(kinds):
            return None
    if first and s_ != [root_nb]:
        return None
    if last and w_ != [root_nb]:
        return None
    if not first and any(w not in lower for w in s_):
        return None
    if strict and sum(1 for w in n_ if w not in lower) > 1:
        return None  # the second edge would bend twice next to its lower end
    bends = 0
    for port, grp in zip(PORTS, groups):
        ins = [w for w in grp if w in lower]
        outs = [w for w in grp if w not in lower]
        if port in "EW":
            bends += len(grp)
        elif port == "N":
            bends += 2 * len(ins) + 2 * max(len(outs) - 1, 0)
        elif first:
            bends += 2
        else:
            bends += 2 * max(len(ins) - 1, 0)
    return bends


# ---------------------------------------------------------------------------
# Left-to-right relation of one graph's planar st-embedding


class _Relation:
    def __init__(self, rot: Mapping[int, Sequence[int]], idx: Mapping[int, int], s: int, t: int):
        self.idx = idx
        face: dict[tuple[int, int], int] = {}
        nf = 0
        for v in sorted(rot):
            for w in rot[v]:
                if (v, w) in face:
                    continue
                a, b = v, w
                while (a, b) not in face:
                    face[(a, b)] = nf
                    ring = rot[b]
                    a, b = b, ring[ring.index(a) - 1]
                nf += 1
        outer = face[(s, t)]
        self.left_of_root = nf
        self.face = face
        succ: dict[int, set[int]] = {f: set() for f in range(nf + 1)}
        self.lf: dict[object, int] = {}
        self.rf: dict[object, int] = {}
        for v in rot:
            for w in rot[v]:
                if idx[v] < idx[w]:
                    lf, rf = face[(v, w)], face[(w, v)]
                    if (v, w) == (s, t):
                        lf = self.left_of_root
                    elif lf == outer:
                        raise DrawingError("outer face lies left of a non-root edge")
                    self.lf[edge(v, w)] = lf
                    self.rf[edge(v, w)] = rf
                    succ[lf].add(rf)
        for v in rot:
            if v in (s, t):
                continue
            ring = list(rot[v])
            m = len(ring)
            for j in range(m):
                x, u = ring[j], ring[(j + 1) % m]
                if idx[x] > idx[v] and idx[u] < idx[v]:
                    self.lf[v] = face[(u, v)]
                if idx[x] < idx[v] and idx[u] > idx[v]:
                    self.rf[v] = face[(u, v)]
            if v not in self.lf or v not in self.rf:
                raise DrawingError("vertex is not bimodal in the st-orientation")
        self.reach: dict[int, set[int]] = {}
        for f in succ:
            seen, stack = {f}, [f]
            while stack:
                for g in succ[stack.pop()]:
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
            self.reach[f] = seen

    def left(self, a: object, b: object) -> bool:
        return self.lf[b] in self.reach[self.rf[a]]


# ---------------------------------------------------------------------------
# Construction


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[object, object] = {}

    def find(self, x: object) -> object:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: object, b: object) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)


def _sort_key(obj: object) -> tuple:
    return (0, obj[1]) if obj[0] == "v" else (1, obj[1], obj[2])


def draw(
    inst: SunflowerInstance | CycleInstance, r: Mapping[int, Sequence[int]], root: Edge | None = None
) -> OrthogonalDrawing:
    """Orthogonal drawing realizing rotation system r (counterclockwise)."""
    if isinstance(inst, CycleInstance):
        if inst.isolated:
            raise InstanceError("drawings need a biconnected shared graph")
        inst = to_sunflower(inst)
    try:
        verdict = check_sefe_orthogonality(inst, r)
    except NotSefeError as exc:
        raise InstanceError(str(exc)) from exc
    if not verdict.feasible:
        raise InstanceError("rotation system violates the orthogonality constraints")
    g = nx.Graph(list(inst.shared))
    g.add_nodes_from(range(inst.n))
    if inst.n < 3 or not nx.is_biconnected(g):
        raise InstanceError("drawings need a biconnected shared graph")
    candidates = [root] if root is not None else [e for a, b in sorted(inst.shared) for e in ((a, b), (b, a))]
    last_error: DrawingError | None = None
    # strict layouts keep every edge to one bend next to its lower end
    for strict, cand in product((True, False), candidates):
        try:
            return _draw_rooted(inst, r, cand, strict)
        except DrawingError as exc:
            last_error = exc
    raise DrawingError(f"no root edge admits a drawing: {last_error}")


def _draw_rooted(
    inst: SunflowerInstance, r: Mapping[int, Sequence[int]], root: Edge, strict: bool = True
) -> OrthogonalDrawing:
    s, t = root
    order = st_order(inst.shared, (s, t))
    idx = {v: i for i, v in enumerate(order)}
    gof = _graph_of(inst)
    ports: dict[tuple[int, int], str] = {}
    for v in order:
        ring = list(r[v])
        kind = {w: gof[edge(v, w)] for w in ring}
        lower = {w for w in ring if idx[w] < idx[v]}
        root_nb = t if v == s else s if v == t else None
        choices = _port_choices(v, ring, kind, lower, v == s, v == t, root_nb, strict)
        if not choices:
            raise DrawingError(f"no port assignment at {inst.names[v]}")
        for w, p in choices[0].items():
            ports[(v, w)] = p
    # edges sharing N (two outgoing) or S (two incoming): one runs straight
    doubles: list[tuple[int, list[int]]] = []
    for v in order:
        for port, pick in (("N", lambda w: idx[w] > idx[v]), ("S", lambda w: idx[w] < idx[v])):
            grp = [w for w in r[v] if ports[(v, w)] == port and pick(w)]
            if len(grp) == 2:
                doubles.append((v, grp))
    last_error: DrawingError | None = None
    budget = [MAX_LAYOUTS]
    for bits in product((0, 1), repeat=len(doubles)):
        straight = {}
        for (v, grp), b in zip(doubles, bits):
            straight[(v, grp[b])] = True
            straight[(v, grp[1 - b])] = False
        try:
            return _repair(inst, r, root, order, idx, gof, ports, straight, budget, strict)
        except DrawingError as exc:
            last_error = exc
    raise DrawingError(str(last_error))


MAX_LAYOUTS = 400


class _Conflict(DrawingError):
    """Column constraints are cyclic; `links` are the straight port links on the cycle."""

    def __init__(self, links: list[tuple[int, int]]):
        super().__init__("column constraints are cyclic")
        self.links = links


def _repair(inst, r, root, order, idx, gof, ports, straight, budget, strict, depth: int = 0) -> OrthogonalDrawing:
    """Lay out, bending straight links on a constraint cycle until the columns are acyclic.

    Two straight column chains cannot cross, but exclusive edges of different
    graphs sometimes must; bending one link lets the crossing happen in a band.
    In strict mode only links at upper ends are bent, so every edge keeps at
    most one bend next to its lower end.
    """
    if budget[0] <= 0:
        raise DrawingError("layout search budget exhausted")
    budget[0] -= 1
    try:
        return _layout(inst, r, root, order, idx, gof, ports, straight)
    except _Conflict as exc:
        if depth >= 8:
            raise
        last: DrawingError = exc
        for link in exc.links:
            if strict and idx[link[0]] < idx[link[1]]:
                continue
            try:
                bent = {**straight, link: False}
                return _repair(inst, r, root, order, idx, gof, ports, bent, budget, strict, depth + 1)
            except DrawingError as inner:
                last = inner
        raise last


def _layout(inst, r, root, order, idx, gof, ports, straight) -> OrthogonalDrawing:
    s, t = root
    up = {e: (e if idx[e[0]] < idx[e[1]] else (e[1], e[0])) for e in gof}

    def is_straight(v: int, w: int) -> bool:
        return straight.get((v, w), True)

    # lower and upper end shapes
    lo_kind: dict[Edge, str] = {}
    hi_kind: dict[Edge, str] = {}
    for e, (a, b) in up.items():
        p = ports[(a, b)]
        if (a, b) == (s, t):
            lo_kind[e] = "root"
        elif p == "N":
            lo_kind[e] = "N" if is_straight(a, b) else "Nbent"
        elif p in "EW":
            lo_kind[e] = p
        else:
            raise DrawingError("an edge leaves its lower endpoint downward")
        q = ports[(b, a)]
        if q == "S":
            hi_kind[e] = "S" if is_straight(b, a) else "Sbent"
        elif q == "N":
            hi_kind[e] = "Nwrap"
        else:
            hi_kind[e] = q
    cost = {"N": 0, "E": 1, "W": 1, "Nbent": 2, "root": 2, "S": 0, "Sbent": 2, "Nwrap": 2}
    for e in up:
        if cost[lo_kind[e]] + cost[hi_kind[e]] > 3:
            raise DrawingError(f"edge {inst.name_edge(e)} would need more than three bends")
    uf = _UnionFind()
    col = {e: ("e", idx[up[e][0]], idx[up[e][1]]) for e in up}
    xv = {v: ("v", idx[v]) for v in order}
    links: list[tuple[tuple[int, int], object]] = []
    for e, (a, b) in up.items():
        if lo_kind[e] == "N":
            uf.union(col[e], xv[a])
            links.append(((a, b), col[e]))
        if hi_kind[e] == "S":
            uf.union(col[e], xv[b])
            links.append(((b, a), col[e]))
    before: dict[object, set[object]] = {}

    def less(a: object, b: object) -> None:
        ra, rb = uf.find(a), uf.find(b)
        if ra == rb:
            raise _Conflict(sorted(link for link, obj in links if uf.find(obj) == ra))
        before.setdefault(ra, set()).add(rb)

    # per-graph left-to-right relation
    for k in range(inst.k):
        es = [e for e, g in gof.items() if g in (SHARED, k)]
        keep = set(es)
        rot_k = {v: [w for w in r[v] if edge(v, w) in keep] for v in order}
        rel = _Relation(rot_k, idx, s, t)
        span = {e: (idx[up[e][0]], idx[up[e][1]]) for e in es}
        for e, f in ((e, f) for i, e in enumerate(es) for f in es[i + 1 :]):
            if max(span[e][0], span[f][0]) < min(span[e][1], span[f][1]):
                if rel.left(e, f):
                    less(col[e], col[f])
                elif rel.left(f, e):
                    less(col[f], col[e])
                else:
                    raise DrawingError("edges are incomparable")
        for e in es:
            for i in range(span[e][0] + 1, span[e][1]):
                v = order[i]
                if rel.left(e, v):
                    less(col[e], xv[v])
                elif rel.left(v, e):
                    less(xv[v], col[e])
                else:
                    raise DrawingError("edge and vertex are incomparable")
    # sides forced by ports
    for e, (a, b) in up.items():
        lk, hk = lo_kind[e], hi_kind[e]
        if lk == "W" or lk == "root":
            less(col[e], xv[a])
        elif lk == "E":
            less(xv[a], col[e])
        if hk == "W":
            less(col[e], xv[b])
        elif hk == "E":
            less(xv[b], col[e])
        elif hk == "Nwrap":
            if _wraps_left(inst, r, gof, idx, b, a, t):
                less(col[e], xv[b])
            else:
                less(xv[b], col[e])
    root_e = edge(s, t)
    for other in list(col.values()) + list(xv.values()):
        if uf.find(other) != uf.find(col[root_e]):
            less(col[root_e], other)
    # columns: topological order of the constraint graph
    classes = {uf.find(o) for o in list(col.values()) + list(xv.values())}
    indeg = {c: 0 for c in classes}
    for a, bs in before.items():
        for b in bs:
            indeg[b] += 1
    heap = [(_sort_key(c), c) for c in classes if indeg[c] == 0]
    heapq.heapify(heap)
    rank: dict[object, int] = {}
    while heap:
        _, c = heapq.heappop(heap)
        rank[c] = len(rank)
        for b in sorted(before.get(c, ()), key=_sort_key):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (_sort_key(b), b))
    if len(rank) != len(classes):
        rest = nx.DiGraph((a, b) for a, bs in before.items() for b in bs if a not in rank and b not in rank)
        cyc = {a for a, _ in nx.find_cycle(rest)}
        raise _Conflict(sorted(link for link, obj in links if uf.find(obj) in cyc))

    def x_of(obj: object) -> int:
        return rank[uf.find(obj)]

    pts = {v: (x_of(xv[v]), BAND * (idx[v] + 1)) for v in order}
    paths: dict[tuple[int, NameEdge], list[Point]] = {}
    for e, (a, b) in up.items():
        (xa, ya), (xb, yb) = pts[a], pts[b]
        c = x_of(col[e])
        lk, hk = lo_kind[e], hi_kind[e]
        path = [(xa, ya)]
        if lk == "Nbent":
            path += [(xa, ya + 1), (c, ya + 1)]
        elif lk in "EW":
            path += [(c, ya)]
        elif lk == "root":
            path += [(xa, ya - 1), (c, ya - 1)]
        if hk == "Sbent":
            path += [(c, yb - 1), (xb, yb - 1)]
        elif hk in ("E", "W"):
            path += [(c, yb)]
        elif hk == "Nwrap":
            path += [(c, yb + 1), (xb, yb + 1)]
        path.append((xb, yb))
        path = _simplify(path)
        name = inst.name_edge(e)
        paths[(gof[e], name)] = path
    nm = inst.names
    return OrthogonalDrawing(
        {nm[v]: p for v, p in pts.items()},
        paths,
        inst.name_edge(root_e),
        {(nm[v], nm[w]): p for (v, w), p in ports.items()},
    )


def _wraps_left(inst, r, gof, idx, v: int, w: int, t: int) -> bool:
    """Whether the incoming edge vw entering v from above wraps around v's left side."""
    if v == t:
        return False
    g = gof[edge(v, w)]
    ring = list(r[v])
    j = ring.index(w)
    for step in range(1, len(ring)):
        x = ring[(j + step) % len(ring)]
        h = gof[edge(v, x)]
        if (g == SHARED and h == SHARED) or (g != SHARED and h in (SHARED, g)):
            return idx[x] < idx[v]
    return True


# ---------------------------------------------------------------------------
# Validation


def _segments(path: Sequence[Point]) -> list[tuple[Point, Point]]:
    return list(zip(path, path[1:]))


def _seg_intersection(p: tuple[Point, Point], q: tuple[Point, Point]) -> set[Point] | None:
    """Intersection of two axis-parallel segments: None if empty, else the set of
    its extreme points (one point, or the two ends of an overlap)."""
    (ax0, ay0), (ax1, ay1) = p
    (bx0, by0), (bx1, by1) = q
    lo_x, hi_x = max(min(ax0, ax1), min(bx0, bx1)), min(max(ax0, ax1), max(bx0, bx1))
    lo_y, hi_y = max(min(ay0, ay1), min(by0, by1)), min(max(ay0, ay1), max(by0, by1))
    if lo_x > hi_x or lo_y > hi_y:
        return None
    return {(lo_x, lo_y), (hi_x, hi_y)}


def validate_drawing(inst: SunflowerInstance | CycleInstance, d: OrthogonalDrawing) -> Verdict:
    """Check grid points, rectilinear paths, bend counts and per-graph planarity."""
    if isinstance(inst, CycleInstance):
        inst = to_sunflower(inst)
    bad: list[Violation] = []
    names = inst.names
    index = inst.index
    for v in names:
        if v not in d.points:
            bad.append(Violation("missing-vertex", (), index[v]))
    if len(set(d.points.values())) != len(d.points):
        bad.append(Violation("vertex-overlap", ()))
    gof = _graph_of(inst)
    expected = {(g, inst.name_edge(e)) for e, g in gof.items()}
    for key in expected - set(d.paths):
        bad.append(Violation("missing-edge", (inst.id_edge(key[1]),)))
    for key in set(d.paths) - expected:
        bad.append(Violation("unknown-edge", ()))
    if bad:
        return Verdict(False, violations=bad, reason="drawing does not cover the instance")
    vertex_at = {p: v for v, p in d.points.items()}
    for key, path in d.paths.items():
        e = inst.id_edge(key[1])
        a, b = key[1]
        if any(not isinstance(c, int) for p in path for c in p):
            bad.append(Violation("non-integer", (e,)))
            continue
        if {path[0], path[-1]} != {d.points[a], d.points[b]}:
            bad.append(Violation("endpoint-mismatch", (e,)))
        if any(p[0] != q[0] and p[1] != q[1] for p, q in _segments(path)):
            bad.append(Violation("not-rectilinear", (e,)))
            continue
        if count_bends(path) > 3:
            bad.append(Violation("too-many-bends", (e,)))
        for p in _simplify(path)[1:-1]:
            if p in vertex_at:
                bad.append(Violation("through-vertex", (e,), index[vertex_at[p]]))
        for p, q in _segments(_simplify(path)):
            for pt, v in vertex_at.items():
                if pt in (path[0], path[-1]):
                    continue
                if _seg_intersection((p, q), (pt, pt)):
                    bad.append(Violation("through-vertex", (e,), index[v]))
    for k in range(inst.k):
        keys = sorted(key for key in d.paths if key[0] in (SHARED, k))
        for i, ka in enumerate(keys):
            for kb in keys[i + 1 :]:
                if _paths_cross(d.paths[ka], d.paths[kb]):
                    bad.append(Violation(f"crossing-graph-{k + 1}", (inst.id_edge(ka[1]), inst.id_edge(kb[1]))))
        for key in keys:
            if _self_cross(d.paths[key]):
                bad.append(Violation(f"self-crossing-graph-{k + 1}", (inst.id_edge(key[1]),)))
    if bad:
        return Verdict(False, violations=sorted(set(bad), key=repr), reason="invalid drawing")
    return Verdict(True, witness=d, reason="valid drawing")


def _paths_cross(pa: Sequence[Point], pb: Sequence[Point]) -> bool:
    ends = ({pa[0], pa[-1]} & {pb[0], pb[-1]})
    for i, s1 in enumerate(_segments(pa)):
        for j, s2 in enumerate(_segments(pb)):
            hit = _seg_intersection(s1, s2)
            if hit is None:
                continue
            if len(hit) == 1:
                (pt,) = hit
                at_a_end = (i == 0 and pt == pa[0]) or (i == len(pa) - 2 and pt == pa[-1])
                at_b_end = (j == 0 and pt == pb[0]) or (j == len(pb) - 2 and pt == pb[-1])
                if pt in ends and at_a_end and at_b_end:
                    continue
            return True
    return False


def _self_cross(path: Sequence[Point]) -> bool:
    segs = _segments(_simplify(path))
    for i, s1 in enumerate(segs):
        for j in range(i + 2, len(segs)):
            if _seg_intersection(s1, segs[j]) is not None:
                return True
    return False


# ---------------------------------------------------------------------------
# Export

GRAPH_COLORS = ("#d62728", "#1f77b4", "#2ca02c")  # red, blue, green


def export_svg(d: OrthogonalDrawing, scale: int = 20, colors: Sequence[str] = GRAPH_COLORS) -> str:
    """Deterministic SVG text: shared edges black, exclusive edges colored per graph."""
    pts = list(d.points.values()) + [p for path in d.paths.values() for p in path]
    if pts:
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    else:
        x0 = x1 = y0 = y1 = 0
    w, h = (x1 - x0) * scale, (y1 - y0) * scale

    def px(p: Point) -> str:
        return f"{(p[0] - x0) * scale},{(y1 - p[1]) * scale}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        "<style>.shared{stroke:#000}"
        + "".join(f".g{i + 1}{{stroke:{c}}}" for i, c in enumerate(colors))
        + " polyline{fill:none;stroke-width:2}</style>",
    ]
    for (g, (a, b)), path in sorted(d.paths.items()):
        cls = "shared" if g == SHARED else f"g{g + 1}"
        pts_text = " ".join(px(p) for p in path)
        lines.append(f'<polyline class="{cls}" data-edge="{a} {b}" points="{pts_text}"/>')
    for v, p in sorted(d.points.items()):
        cx, cy = px(p).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="{scale // 4}" fill="#000"><title>{v}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
