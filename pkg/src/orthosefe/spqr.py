"""SPQR decomposition of a biconnected shared graph and the reduction of
two-graph instances with a biconnected shared graph to shared-cycle instances.

The decomposition splits the graph at separation pairs until only bonds,
polygons and 3-connected pieces remain, then merges adjacent bonds and
adjacent polygons.  Q-nodes are kept implicit: every real skeleton edge stands
for the Q-node of that edge.  The tree is augmented with two-edge S-nodes so
that P- and R-nodes are only adjacent to S-nodes.

The reduction first moves exclusive edges off shared vertices of degree 3,
then builds one instance per S-node in which each neighboring P- or R-node is
represented by the cycle of its attachments, and finally replaces each such
cycle by a path carrying a small gadget so that the shared graph is a cycle.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, count, permutations
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .constraints import Verdict
from .cyclesolver import solve_cycle
from .instance import (
    CycleInstance,
    Edge,
    InstanceError,
    NameEdge,
    SunflowerInstance,
    edge,
    max_union_degree,
)

KINDS = ("S", "P", "R")


class NotEmbeddable(Exception):
    """The shared graph admits no embedding compatible with the exclusive edges."""


# ---------------------------------------------------------------------------
# Decomposition


@dataclass(frozen=True)
class SkelEdge:
    """Skeleton edge.  Real edges carry the index of a shared edge; a virtual
    edge carries an id shared with its twin in the neighboring skeleton."""

    id: int
    u: int
    v: int
    virtual: bool
    twin: int | None = None  # node holding the twin virtual edge


@dataclass
class SpqrNode:
    id: int
    kind: str
    edges: list[SkelEdge]

    @property
    def vertices(self) -> list[int]:
        return sorted({x for e in self.edges for x in (e.u, e.v)})

    def edge(self, eid: int) -> SkelEdge:
        return next(e for e in self.edges if e.id == eid)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in (e.u, e.v))


@dataclass
class SpqrTree:
    n: int
    real: list[Edge]
    nodes: list[SpqrNode]

    def neighbors(self, node: int) -> list[tuple[int, int]]:
        """(virtual edge id, neighbor node) pairs."""
        return [(e.id, e.twin) for e in self.nodes[node].edges if e.virtual]

    def beyond(self, node: int, vid: int) -> list[int]:
        """Nodes of the subtree reached through virtual edge `vid` of `node`."""
        start = self.nodes[node].edge(vid).twin
        seen, stack = {node, start}, [start]
        out = [start]
        while stack:
            x = stack.pop()
            for _, y in self.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    stack.append(y)
        return out

    def expansion(self, node: int, vid: int) -> tuple[set[int], set[int]]:
        """Real edge ids and vertices of the expansion graph of `vid` at `node`."""
        edges: set[int] = set()
        verts: set[int] = set()
        for x in self.beyond(node, vid):
            for e in self.nodes[x].edges:
                if not e.virtual:
                    edges.add(e.id)
                    verts.update((e.u, e.v))
        return edges, verts

    def expand(self) -> set[Edge]:
        """Union of the real edges of all skeletons (the decomposed graph)."""
        return {self.real[e.id] for node in self.nodes for e in node.edges if not e.virtual}

    def snodes(self) -> list[int]:
        return [x.id for x in self.nodes if x.kind == "S"]

    def dump(self, names: Sequence[str] | None = None) -> str:
        """Indented text: node type, skeleton edges and twin links."""
        nm = (lambda v: names[v]) if names else str
        lines = []
        for node in self.nodes:
            lines.append(f"{node.kind}{node.id}")
            for e in sorted(node.edges, key=lambda e: (e.virtual, nm(e.u), nm(e.v), e.id)):
                a, b = sorted((nm(e.u), nm(e.v)))
                if e.virtual:
                    lines.append(f"  virtual {a} {b} -> {self.nodes[e.twin].kind}{e.twin}")
                else:
                    lines.append(f"  real {a} {b}")
        return "\n".join(lines) + "\n"


def _separation_classes(comp: Mapping[int, Edge], verts: set[int], a: int, b: int) -> list[set[int]]:
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for eid, (x, y) in comp.items():
        adj[x].append((eid, y))
        adj[y].append((eid, x))
    classes: list[set[int]] = []
    seen: set[int] = set()
    for s in sorted(verts - {a, b}):
        if s in seen:
            continue
        seen.add(s)
        stack, cls = [s], set()
        while stack:
            x = stack.pop()
            for eid, y in adj[x]:
                cls.add(eid)
                if y not in (a, b) and y not in seen:
                    seen.add(y)
                    stack.append(y)
        classes.append(cls)
    classes.extend({eid} for eid, (x, y) in comp.items() if {x, y} == {a, b})
    return classes


def _find_split(comp: Mapping[int, Edge], verts: set[int]) -> tuple[Edge, set[int]] | None:
    for a, b in combinations(sorted(verts), 2):
        classes = _separation_classes(comp, verts, a, b)
        if len(classes) < 2:
            continue
        sizes = sorted(len(c) for c in classes)
        if len(classes) == 2 and sizes[0] == 1:
            continue
        if len(classes) == 3 and sizes[-1] == 1:
            continue
        part = next(c for c in classes if len(c) >= 2)
        return (a, b), part
    return None


def _split_components(edges: Mapping[int, Edge], ids: Iterable[int]) -> list[tuple[str, dict[int, Edge]]]:
    fresh = iter(ids)
    work = [dict(edges)]
    out: list[tuple[str, dict[int, Edge]]] = []
    while work:
        comp = work.pop()
        verts = {x for e in comp.values() for x in e}
        if len(verts) == 2:
            out.append(("P", comp))
            continue
        groups: dict[Edge, list[int]] = defaultdict(list)
        for eid, (x, y) in sorted(comp.items()):
            groups[edge(x, y)].append(eid)
        multi = next((g for _, g in sorted(groups.items()) if len(g) > 1), None)
        if multi is not None:
            vid = next(fresh)
            pair = comp[multi[0]]
            bond = {eid: comp[eid] for eid in multi}
            bond[vid] = pair
            rest = {eid: e for eid, e in comp.items() if eid not in multi}
            rest[vid] = pair
            out.append(("P", bond))
            work.append(rest)
            continue
        deg: dict[int, int] = defaultdict(int)
        for x, y in comp.values():
            deg[x] += 1
            deg[y] += 1
        if all(d == 2 for d in deg.values()):
            out.append(("S", comp))
            continue
        split = _find_split(comp, verts)
        if split is None:
            out.append(("R", comp))
            continue
        pair, part = split
        vid = next(fresh)
        c1 = {eid: comp[eid] for eid in part}
        c1[vid] = pair
        c2 = {eid: e for eid, e in comp.items() if eid not in part}
        c2[vid] = pair
        work.extend((c1, c2))
    return out


def _merge(comps: list[tuple[str, dict[int, Edge]]], first_virtual: int) -> list[tuple[str, dict[int, Edge]]]:
    """Merge bonds sharing a virtual edge, and polygons sharing one."""
    parent = list(range(len(comps)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    holders: dict[int, list[int]] = defaultdict(list)
    for i, (_, comp) in enumerate(comps):
        for eid in comp:
            if eid >= first_virtual:
                holders[eid].append(i)
    internal: set[int] = set()
    for vid, (i, j) in sorted(holders.items()):
        if comps[i][0] == comps[j][0] and comps[i][0] in "PS":
            parent[find(i)] = find(j)
            internal.add(vid)
    merged: dict[int, tuple[str, dict[int, Edge]]] = {}
    for i, (kind, comp) in enumerate(comps):
        root = find(i)
        _, acc = merged.setdefault(root, (kind, {}))
        acc.update({eid: e for eid, e in comp.items() if eid not in internal})
    return list(merged.values())


def build_spqr(n: int, shared: Iterable[Edge]) -> SpqrTree:
    """SPQR-tree of a biconnected simple graph on vertices 0..n-1."""
    real = sorted(edge(*e) for e in shared)
    g = nx.Graph()
    g.add_edges_from(real)
    if g.number_of_nodes() < 3 or not nx.is_biconnected(g):
        raise InstanceError("shared graph is not biconnected")
    edges = dict(enumerate(real))
    comps = _merge(_split_components(edges, count(len(real))), len(real))
    comps.sort(key=lambda kc: (min((e for e in kc[1] if e < len(real)), default=len(real) + min(kc[1])), kc[0]))
    # augment: a two-edge S-node between any two adjacent P/R nodes
    holders: dict[int, list[int]] = defaultdict(list)
    for i, (_, comp) in enumerate(comps):
        for eid in comp:
            if eid >= len(real):
                holders[eid].append(i)
    fresh = count(max([len(real), *holders]) + 1)
    for vid, (i, j) in sorted(holders.items()):
        if comps[i][0] != "S" and comps[j][0] != "S":
            pair = comps[i][1].pop(vid)
            del comps[j][1][vid]
            x, y = next(fresh), next(fresh)
            comps[i][1][x] = pair
            comps[j][1][y] = pair
            comps.append(("S", {x: pair, y: pair}))
    holders = defaultdict(list)
    for i, (_, comp) in enumerate(comps):
        for eid in comp:
            if eid >= len(real):
                holders[eid].append(i)
    nodes = []
    for i, (kind, comp) in enumerate(comps):
        skel = []
        for eid, (u, v) in sorted(comp.items()):
            if eid < len(real):
                skel.append(SkelEdge(eid, u, v, False))
            else:
                other = next(h for h in holders[eid] if h != i)
                skel.append(SkelEdge(eid, u, v, True, other))
        nodes.append(SpqrNode(i, kind, skel))
    tree = SpqrTree(n, real, nodes)
    check_tree(tree, real)
    return tree


def check_tree(tree: SpqrTree, real: Iterable[Edge]) -> None:
    """Assert skeleton types, twin involution, tree shape and exact expansion."""
    seen_real: list[int] = []
    for node in tree.nodes:
        verts = node.vertices
        if node.kind == "P":
            assert len(verts) == 2 and len(node.edges) >= 3, f"bad bond {node.id}"
        elif node.kind == "S":
            assert len(node.edges) >= 2 and all(node.degree(v) == 2 for v in verts), f"bad polygon {node.id}"
        else:
            g = nx.MultiGraph()
            g.add_edges_from((e.u, e.v) for e in node.edges)
            assert nx.number_of_selfloops(g) == 0 and not g.is_multigraph() or all(
                len(g[a][b]) == 1 for a, b in g.edges()
            ), f"rigid skeleton {node.id} has parallel edges"
            assert nx.node_connectivity(nx.Graph(g)) >= 3, f"rigid skeleton {node.id} is not 3-connected"
        for e in node.edges:
            if e.virtual:
                back = tree.nodes[e.twin].edge(e.id)
                assert back.twin == node.id and {back.u, back.v} == {e.u, e.v}, "twin mismatch"
            else:
                seen_real.append(e.id)
    assert sorted(seen_real) == list(range(len(tree.real))), "real edges not partitioned"
    tree_edges = {tuple(sorted((node.id, t))) for node in tree.nodes for _, t in tree.neighbors(node.id)}
    tg = nx.Graph(list(tree_edges))
    tg.add_nodes_from(range(len(tree.nodes)))
    assert nx.is_tree(tg), "decomposition is not a tree"
    for a, b in tree_edges:
        kinds = {tree.nodes[a].kind, tree.nodes[b].kind}
        assert "S" in kinds and kinds != {"S"}, "P/R nodes must only neighbor S-nodes"
    assert tree.expand() == set(real), "expansion does not recover the graph"


# ---------------------------------------------------------------------------
# Skeleton embeddings


Rotation = dict[int, list[int]]  # vertex -> skeleton edge ids, counterclockwise


def _faces(edges: Mapping[int, Edge], rot: Rotation) -> list[tuple[list[int], set[int]]]:
    """Faces as (vertex walk, edge ids), each face to the left of its darts."""
    where = {(v, eid): i for v, es in rot.items() for i, eid in enumerate(es)}
    seen: set[tuple[int, int]] = set()
    faces = []
    for eid in sorted(edges):
        for tail in edges[eid]:
            if (eid, tail) in seen:
                continue
            walk, fe = [], set()
            cur, a = eid, tail
            while (cur, a) not in seen:
                seen.add((cur, a))
                walk.append(a)
                fe.add(cur)
                x, y = edges[cur]
                head = y if x == a else x
                cur, a = rot[head][where[(head, cur)] - 1], head
            faces.append((walk, fe))
    return faces


def _is_planar_rotation(edges: Mapping[int, Edge], rot: Rotation) -> bool:
    verts = {x for e in edges.values() for x in e}
    return len(verts) - len(edges) + len(_faces(edges, rot)) == 2


def _skeleton_edges(node: SpqrNode) -> dict[int, Edge]:
    return {e.id: (e.u, e.v) for e in node.edges}


def _p_rotations(node: SpqrNode) -> Iterable[Rotation]:
    a, b = node.vertices
    ids = sorted(e.id for e in node.edges)
    for rest in permutations(ids[1:]):
        order = [ids[0], *rest]
        yield {a: order, b: order[::-1]}


def _r_rotation(node: SpqrNode) -> Rotation:
    g = nx.Graph()
    by_pair = {}
    for e in node.edges:
        g.add_edge(e.u, e.v)
        by_pair[edge(e.u, e.v)] = e.id
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NotEmbeddable(f"rigid skeleton {node.id} is not planar")
    return {v: [by_pair[edge(v, w)] for w in reversed(list(emb.neighbors_cw_order(v)))] for v in g}


def _s_rotation(node: SpqrNode) -> Rotation:
    rot: Rotation = defaultdict(list)
    for e in node.edges:
        rot[e.u].append(e.id)
        rot[e.v].append(e.id)
    return dict(rot)


class _Parts:
    """Locate vertices inside the parts (vertices and virtual edges) of skeletons."""

    def __init__(self, tree: SpqrTree):
        self.tree = tree
        self.inner: dict[tuple[int, int], set[int]] = {}
        self.real: dict[tuple[int, int], set[int]] = {}
        for node in tree.nodes:
            for e in node.edges:
                if e.virtual:
                    es, vs = tree.expansion(node.id, e.id)
                    self.real[(node.id, e.id)] = es
                    self.inner[(node.id, e.id)] = vs - {e.u, e.v}

    def part(self, node: int, x: int) -> tuple[str, int]:
        skel = self.tree.nodes[node]
        if x in skel.vertices:
            return ("v", x)
        for e in skel.edges:
            if e.virtual and x in self.inner[(node, e.id)]:
                return ("e", e.id)
        raise AssertionError(f"vertex {x} not found in node {node}")


def _shares_face(faces, p: tuple[str, int], q: tuple[str, int]) -> bool:
    def on(face, part):
        walk, fe = face
        return part[1] in walk if part[0] == "v" else part[1] in fe

    return any(on(f, p) and on(f, q) for f in faces)


def reference_embedding(
    tree: SpqrTree, exclusive: Iterable[Edge], parts: _Parts | None = None
) -> dict[int, Rotation]:
    """Skeleton rotations in which every exclusive edge's parts share a face.

    P-node orders are searched exhaustively (at most four parallel edges);
    rigid skeletons have one embedding up to mirroring.  Raises NotEmbeddable
    when some skeleton has no such embedding.
    """
    parts = parts or _Parts(tree)
    exclusive = sorted(exclusive)
    rots: dict[int, Rotation] = {}
    for node in tree.nodes:
        if node.kind == "S":
            rots[node.id] = _s_rotation(node)
            continue
        needs = []
        for x, y in exclusive:
            p, q = parts.part(node.id, x), parts.part(node.id, y)
            if p != q:
                needs.append((p, q))
        candidates = _p_rotations(node) if node.kind == "P" else [_r_rotation(node)]
        for rot in candidates:
            faces = _faces(_skeleton_edges(node), rot)
            if all(_shares_face(faces, p, q) for p, q in needs):
                rots[node.id] = rot
                break
        else:
            raise NotEmbeddable(f"{node.kind}-node {node.id} cannot host every exclusive edge in a face")
    return rots


def compose(tree: SpqrTree, rots: Mapping[int, Rotation], root: int = 0) -> dict[int, list[int]]:
    """Planar rotation of the whole graph (real edge ids) glued from skeletons."""

    def expand(node: int, parent_vid: int | None) -> Rotation:
        rot = {v: list(es) for v, es in rots[node].items()}
        for e in tree.nodes[node].edges:
            if not e.virtual or e.id == parent_vid:
                continue
            sub = expand(e.twin, e.id)
            for v, seq in sub.items():
                if v in (e.u, e.v):
                    i = seq.index(e.id)
                    block = seq[i + 1 :] + seq[:i]
                    j = rot[v].index(e.id)
                    rot[v][j : j + 1] = block
                else:
                    rot[v] = seq
        return rot

    out = expand(root, None)
    assert _is_planar_rotation(dict(enumerate(tree.real)), out), "composed rotation is not planar"
    return out


# ---------------------------------------------------------------------------
# Moving exclusive edges off shared vertices of degree 3


def _shared_degree(inst: SunflowerInstance) -> dict[int, int]:
    deg = {v: 0 for v in range(inst.n)}
    for u, v in inst.shared:
        deg[u] += 1
        deg[v] += 1
    return deg


def _exclusive_at(inst: SunflowerInstance, v: int) -> list[tuple[int, Edge]]:
    return [(i, e) for i, es in enumerate(inst.exclusive) for e in sorted(es) if v in e]


def _drop_isolated_intrapole(inst: SunflowerInstance, tree: SpqrTree) -> SunflowerInstance:
    adjacent = {edge(e.u, e.v) for node in tree.nodes for e in node.edges}
    count_at: dict[int, int] = defaultdict(int)
    for es in inst.exclusive:
        for u, v in es:
            count_at[u] += 1
            count_at[v] += 1
    drop = [
        {e for e in es if e in adjacent and count_at[e[0]] == 1 and count_at[e[1]] == 1}
        for es in inst.exclusive
    ]
    if not any(drop):
        return inst
    return SunflowerInstance(inst.names, inst.shared, tuple(es - d for es, d in zip(inst.exclusive, drop)))


def _edge_into(tree: SpqrTree, parts: _Parts, node: int, skel: SkelEdge, u: int) -> Edge:
    """The shared edge at u inside skeleton edge `skel` of `node`."""
    if not skel.virtual:
        return tree.real[skel.id]
    hits = [tree.real[r] for r in parts.real[(node, skel.id)] if u in tree.real[r]]
    assert len(hits) == 1, "pole has more than one edge into a virtual edge"
    return hits[0]


def _forced_edge(inst: SunflowerInstance, tree: SpqrTree, parts: _Parts, u: int, e: Edge) -> Edge:
    """A shared edge ux whose face must host the exclusive edge e at u."""
    node = next(x for x in tree.nodes if x.kind != "S" and u in x.vertices and x.degree(u) == 3)
    at_u = [s for s in node.edges if u in (s.u, s.v)]
    v = e[0] if e[1] == u else e[1]
    if node.kind == "R":
        rot = _r_rotation(node)
        faces = _faces(_skeleton_edges(node), rot)
        pv = parts.part(node.id, v)
        common = [f for f in faces if u in f[0] and _shares_face([f], ("v", u), pv)]
        if not common:
            raise NotEmbeddable("exclusive edge endpoints share no face of a rigid skeleton")
        pick = [s for s in at_u if all(s.id in f[1] for f in common)]
        return _edge_into(tree, parts, node.id, pick[0], u)
    pole = next(x for x in node.vertices if x != u)
    if v != pole:
        _, vid = parts.part(node.id, v)
        return _edge_into(tree, parts, node.id, node.edge(vid), u)
    # intra-pole edge: follow another exclusive edge at u or at the other pole
    for x in (u, pole):
        for _, f in _exclusive_at(inst, x):
            if f == e:
                continue
            y = f[0] if f[1] == x else f[1]
            kind, vid = parts.part(node.id, y)
            if kind == "e":
                return _edge_into(tree, parts, node.id, node.edge(vid), u)
    raise AssertionError("isolated intra-pole edge survived preprocessing")


def _fresh_name(taken: set[str], base: str) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def normalize_attachments(inst: SunflowerInstance) -> SunflowerInstance:
    """Equivalent instance whose exclusive edges all end at shared degree 2.

    Isolated exclusive edges between two vertices adjacent in some skeleton
    are deleted.  Then, for an exclusive endpoint u of shared degree 3, a
    shared edge ux is chosen whose incident faces must host u's exclusive
    edges; ux is subdivided by w1, w2, w3, the shared edge w1w3 is added, and
    u's exclusive edges move to w2.
    """
    _require_two_biconnected(inst)
    while True:
        tree = build_spqr(inst.n, inst.shared)
        inst = _drop_isolated_intrapole(inst, tree)
        deg = _shared_degree(inst)
        todo = sorted(
            (inst.names[v], v) for v in range(inst.n) if deg[v] >= 3 and _exclusive_at(inst, v)
        )
        if not todo:
            return inst
        _, u = todo[0]
        if deg[u] > 3:
            raise InstanceError(f"vertex {inst.names[u]!r} has shared degree {deg[u]} and an exclusive edge")
        parts = _Parts(tree)
        moving = _exclusive_at(inst, u)
        ux = _forced_edge(inst, tree, parts, u, moving[0][1])
        x = ux[0] if ux[1] == u else ux[1]
        taken = set(inst.names)
        w1, w2, w3 = (_fresh_name(taken, f"{inst.names[u]}.{r}") for r in ("w1", "w2", "w3"))
        names = list(inst.names) + [w1, w2, w3]
        i1, i2, i3 = len(inst.names), len(inst.names) + 1, len(inst.names) + 2
        shared = set(inst.shared) - {ux}
        shared |= {edge(u, i1), edge(i1, i2), edge(i2, i3), edge(i3, x), edge(i1, i3)}
        exclusive = []
        for es in inst.exclusive:
            moved = set()
            for a, b in es:
                if u in (a, b):
                    other = b if a == u else a
                    moved.add(edge(i2, other))
                else:
                    moved.add((a, b))
            exclusive.append(frozenset(moved))
        inst = SunflowerInstance(tuple(names), frozenset(shared), tuple(exclusive))


def _require_two_biconnected(inst: SunflowerInstance) -> None:
    if inst.k != 2:
        raise InstanceError("exactly two graphs are required")
    g = nx.Graph()
    g.add_nodes_from(range(inst.n))
    g.add_edges_from(inst.shared)
    if inst.n < 3 or not nx.is_biconnected(g):
        raise InstanceError("shared graph is not biconnected")


# ---------------------------------------------------------------------------
# Per-S-node instances


@dataclass(frozen=True)
class Segment:
    """Stretch of an S-node skeleton between consecutive vertices.

    A plain segment is one shared edge.  Otherwise it is the cycle of a
    neighboring P- or R-node: the attachment names along each of its two
    boundary paths, both listed from the segment's start to its end.
    """

    start: str
    end: str
    side_a: tuple[str, ...] = ()
    side_b: tuple[str, ...] = ()
    plain: bool = True


@dataclass(frozen=True)
class SNodeInstance:
    node: int
    segments: tuple[Segment, ...]
    exclusive: tuple[tuple[NameEdge, ...], ...]

    @property
    def cycle_vertices(self) -> list[str]:
        return [s.start for s in self.segments]

    def realize(self) -> SunflowerInstance:
        """A biconnected instance whose only S-node instance is this one.

        Each attachment cycle gets a new vertex at the start of both sides and
        a shared rung between them, so the cycle bounds a rigid piece and
        nothing else can be embedded inside it.
        """
        names = list(self.cycle_vertices)
        taken = set(names)
        for s in self.segments:
            taken.update(s.side_a + s.side_b)
        shared = []
        for s in self.segments:
            if s.plain:
                shared.append((s.start, s.end))
                continue
            ends = []
            for side, tag in ((s.side_a, "a"), (s.side_b, "b")):
                d = _fresh_name(taken, f"{s.start}~{s.end}.{tag}")
                ends.append(d)
                seq = [s.start, d, *side, s.end]
                names.extend(seq[1:-1])
                shared.extend(zip(seq, seq[1:]))
            shared.append(tuple(ends))
        return SunflowerInstance.from_names(names, shared, self.exclusive)


def _snode_cycle(node: SpqrNode) -> list[tuple[int, SkelEdge]]:
    """Skeleton cycle as (start vertex, edge) pairs from the smallest vertex."""
    start = node.vertices[0]
    out = []
    v, prev = start, None
    for _ in range(len(node.edges)):
        e = next(e for e in sorted(node.edges, key=lambda e: e.id) if v in (e.u, e.v) and e is not prev)
        out.append((v, e))
        v = e.v if e.u == v else e.u
        prev = e
    assert v == start
    return out


def attachment_order(
    tree: SpqrTree, parts: _Parts, node: int, vid: int, attach: Iterable[int]
) -> tuple[list[int], list[int]]:
    """Attachments of a virtual edge along the two outer paths of its expansion.

    A new vertex joined to both poles and every attachment keeps the graph
    planar exactly when all attachments fit on one face with the poles; its
    rotation then lists both paths (unique up to reversal).  Both paths are
    returned from the edge's first pole to its second.
    """
    e = tree.nodes[node].edge(vid)
    u, v = e.u, e.v
    g = nx.Graph(tree.real[r] for r in parts.real[(node, vid)])
    hub = -1
    g.add_edges_from((hub, x) for x in (u, v, *sorted(attach)))
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NotEmbeddable("an attachment is not on the outer face of its expansion graph")
    ring = list(reversed(list(emb.neighbors_cw_order(hub))))
    i = ring.index(u)
    ring = ring[i:] + ring[:i]
    j = ring.index(v)
    return ring[1:j], list(reversed(ring[j + 1 :]))


def extract_snode_instances(inst: SunflowerInstance) -> list[SNodeInstance]:
    """One instance per S-node; requires every exclusive endpoint at shared degree 2."""
    _require_two_biconnected(inst)
    deg = _shared_degree(inst)
    for es in inst.exclusive:
        for e in es:
            if deg[e[0]] != 2 or deg[e[1]] != 2:
                raise InstanceError("exclusive edges must end at shared degree 2; normalize first")
    tree = build_spqr(inst.n, inst.shared)
    parts = _Parts(tree)
    reference_embedding(tree, [e for es in inst.exclusive for e in es], parts)
    name = inst.names
    out = []
    for mu in tree.snodes():
        node = tree.nodes[mu]
        important = [
            tuple(sorted(inst.name_edge(e) for e in es if parts.part(mu, e[0]) != parts.part(mu, e[1])))
            for es in inst.exclusive
        ]
        if not any(important):
            continue
        ends = {x for es in inst.exclusive for e in es if parts.part(mu, e[0]) != parts.part(mu, e[1]) for x in e}
        segments = []
        for start, e in _snode_cycle(node):
            end = e.v if e.u == start else e.u
            if not e.virtual:
                segments.append(Segment(name[start], name[end]))
                continue
            attach = ends & parts.inner[(mu, e.id)]
            if not attach:
                segments.append(Segment(name[start], name[end]))
                continue
            a, b = attachment_order(tree, parts, mu, e.id, attach)
            if (e.u, e.v) != (start, end):
                a, b = a[::-1], b[::-1]
            side_a, side_b = tuple(name[x] for x in a), tuple(name[x] for x in b)
            segments.append(Segment(name[start], name[end], side_a, side_b, plain=False))
        out.append(SNodeInstance(mu, tuple(segments), tuple(important)))
    return out


# ---------------------------------------------------------------------------
# Cycle-to-path gadget

GADGET_VARIANTS = ("x3", "x4")


def flatten_cycle(sn: SNodeInstance, variant: str = "x3") -> CycleInstance:
    """Replace every attachment cycle by a path so the shared graph is a cycle.

    A cycle with poles u, v becomes the path u, a1, a2, side a, x1..x4,
    side b, b1, b2, v.  Graph 1 gets (a2,x3), (x1,x3), (x2,x4), (x2,b1) and
    graph 2 gets (x2,b2) plus (a1,x3); `variant="x4"` uses (a1,x4) instead.
    """
    if variant not in GADGET_VARIANTS:
        raise ValueError(f"unknown gadget variant {variant!r}")
    taken = {s.start for s in sn.segments}
    for s in sn.segments:
        taken.update(s.side_a + s.side_b)
    order: list[str] = []
    ex: list[list[NameEdge]] = [list(sn.exclusive[0]), list(sn.exclusive[1])]
    for k, s in enumerate(sn.segments):
        order.append(s.start)
        if s.plain:
            continue
        d = {r: _fresh_name(taken, f"{r}.{k}") for r in ("a1", "a2", "x1", "x2", "x3", "x4", "b1", "b2")}
        order += [d["a1"], d["a2"], *s.side_a, d["x1"], d["x2"], d["x3"], d["x4"], *s.side_b, d["b1"], d["b2"]]
        ex[0] += [(d["a2"], d["x3"]), (d["x1"], d["x3"]), (d["x2"], d["x4"]), (d["x2"], d["b1"])]
        ex[1] += [(d["x2"], d["b2"]), (d["a1"], d["x3"] if variant == "x3" else d["x4"])]
    return CycleInstance.from_names(order, ex)


# ---------------------------------------------------------------------------
# Driver


@dataclass
class BiconnectedReport:
    verdict: Verdict
    normalized: SunflowerInstance | None = None
    snodes: list[SNodeInstance] = field(default_factory=list)
    flattened: list[CycleInstance] = field(default_factory=list)
    degrees: list[tuple[str, int]] = field(default_factory=list)


def solve_biconnected_detailed(inst: SunflowerInstance, variant: str = "x3", jobs: int = 1) -> BiconnectedReport:
    _require_two_biconnected(inst)
    if max_union_degree(inst) > 5:
        raise InstanceError("union graph exceeds degree 5")
    report = BiconnectedReport(Verdict(True))
    report.degrees.append(("input", max_union_degree(inst)))
    try:
        norm = normalize_attachments(inst)
        report.normalized = norm
        report.degrees.append(("normalized", max_union_degree(norm)))
        sns = extract_snode_instances(norm)
    except NotEmbeddable as exc:
        report.verdict = Verdict(False, reason=str(exc))
        return report
    report.snodes = sns
    for sn in sns:
        report.degrees.append((f"snode {sn.node}", max_union_degree(sn.realize())))
        flat = flatten_cycle(sn, variant)
        report.degrees.append((f"flattened {sn.node}", max_union_degree(flat)))
        report.flattened.append(flat)
    verdicts = _solve_all(report.flattened, jobs)
    for sn, v in zip(sns, verdicts):
        if not v.feasible:
            report.verdict = Verdict(False, violations=v.violations, reason=f"S-node {sn.node}: {v.reason or 'infeasible'}")
            return report
    report.verdict = Verdict(True, witness=_direct_witness(inst, report), reason="all S-node instances feasible")
    return report


def _solve_all(instances: list[CycleInstance], jobs: int) -> list[Verdict]:
    if jobs <= 1 or len(instances) < 2:
        return [solve_cycle(c) for c in instances]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(solve_cycle, instances))


def _direct_witness(inst: SunflowerInstance, report: BiconnectedReport):
    """Side assignment when the shared graph is a plain cycle; None otherwise."""
    if report.normalized is not inst or len(report.flattened) != 1:
        return None
    flat = report.flattened[0]
    if len(flat.order) != inst.n:
        return None
    v = solve_cycle(flat)
    return {inst.id_edge(flat.name_edge(e)): s for e, s in v.witness.items()}


def solve_biconnected(inst: SunflowerInstance, variant: str = "x3", jobs: int = 1) -> Verdict:
    """Decide an instance whose shared graph is biconnected (union degree at most 5)."""
    return solve_biconnected_detailed(inst, variant, jobs).verdict
