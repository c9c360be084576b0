"""Polynomial decision pipeline for two graphs whose shared graph is a cycle.

The pipeline splits degree-4 vertices of the first graph, removes alternating
pairs of first-graph chords with a splicing gadget, reduces the remaining
orthogonality constraints to not-all-equal satisfiability, and pulls the
resulting side assignment back to the input instance.

Convention: graph index 0 is the graph that gets simplified (outerplanar, max
degree 3); graph index 1 is the other graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, NamedTuple, Sequence

from .constraints import Side, SideAssignment, Verdict, Violation, check_assignment
from .instance import CycleInstance, Edge, InstanceError, NameEdge, alternate, edge, max_union_degree
from .naesat import NaeFormula, nae_eval, nae_solve, variable_clause_graph


class PreconditionError(InstanceError):
    """The instance does not satisfy an operation's precondition."""


class InternalError(AssertionError):
    """A produced witness failed re-verification on the input instance."""


def _ne(a: str, b: str) -> NameEdge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class TransformationTrace:
    """One gadget splice: its kind, site, dummy roles, and the side back-map.

    `edge_map` sends every exclusive edge of the input instance whose side is
    read from a different edge of the output instance to that edge; edges not
    listed keep their own side.
    """

    kind: str
    site: tuple[str, ...]
    roles: dict[str, str]
    edge_map: dict[NameEdge, NameEdge]

    def to_dict(self) -> dict:
        return {
            "transformation": self.kind,
            "site": list(self.site),
            "roles": dict(sorted(self.roles.items())),
            "edge_map": {"-".join(k): "-".join(v) for k, v in sorted(self.edge_map.items())},
        }


def pull_back(
    original: CycleInstance,
    traces: Sequence[TransformationTrace],
    final: CycleInstance,
    a: Mapping[Edge, Side],
) -> SideAssignment:
    """Map a side assignment of the final instance back through the traces."""
    out: SideAssignment = {}
    for _, e in original.all_exclusive:
        ne = original.name_edge(e)
        for t in traces:
            ne = t.edge_map.get(ne, ne)
        out[e] = a[final.id_edge(ne)]
    return out


# ---------------------------------------------------------------------------
# Mutable name-level workspace for splicing


class _Work:
    def __init__(self, c: CycleInstance):
        self.order = [c.names[v] for v in c.order]
        self.ex = [set(c.name_edge(e) for e in es) for es in c.exclusive]
        self.taken = set(c.names)
        self.step = 0

    @classmethod
    def of(cls, c: CycleInstance) -> _Work:
        return cls(c)

    def fresh(self, role: str) -> str:
        name = f"{role}#{self.step}"
        while name in self.taken:
            name += "'"
        self.taken.add(name)
        return name

    def build(self) -> CycleInstance:
        return CycleInstance.from_names(self.order, [sorted(es) for es in self.ex])

    def incident(self, g: int, v: str) -> list[NameEdge]:
        return sorted(e for e in self.ex[g] if v in e)

    def splice(self, seq: list[str], start: str, end: str) -> None:
        """Replace the forward stretch start..end (inclusive) by `seq`."""
        m = len(self.order)
        i = self.order.index(start)
        rotated = self.order[i:] + self.order[:i]
        j = rotated.index(end)
        self.order = seq + rotated[j + 1 :]
        assert len(self.order) >= m


def _other(e: NameEdge, v: str) -> str:
    return e[1] if e[0] == v else e[0]


def _require_two(c: CycleInstance) -> None:
    if c.k != 2:
        raise PreconditionError("exactly two graphs are required")
    if c.isolated:
        raise PreconditionError("the shared graph must be a single cycle without isolated vertices")


# ---------------------------------------------------------------------------
# Reduction to not-all-equal satisfiability


@dataclass(frozen=True)
class ReductionCertificate:
    instance: CycleInstance
    formula: NaeFormula
    components: tuple[tuple[tuple[Edge, ...], tuple[Edge, ...]], ...]
    edge_vars: dict[Edge, int]
    clause_log: tuple[tuple[str, Edge], ...]

    def var_meaning(self, var: int) -> str:
        if var <= len(self.components):
            first = self.components[var - 1][0][0]
            return f"component of {'-'.join(self.instance.name_edge(first))} (first part inside)"
        for e, x in self.edge_vars.items():
            if x == var:
                return f"edge {'-'.join(self.instance.name_edge(e))} outside"
        raise KeyError(var)


class Infeasible(NamedTuple):
    reason: str
    violation: Violation


def alternation_components(
    c: CycleInstance, g: int
) -> list[tuple[tuple[Edge, ...], tuple[Edge, ...]]] | Violation:
    """Bipartitions of the alternation graph of graph g, by smallest member edge.

    The first part of every component holds its smallest edge.  Returns the
    offending pair when some component is not bipartite.
    """
    es = sorted(c.exclusive[g])
    adj: dict[Edge, list[Edge]] = {e: [] for e in es}
    for e, f in combinations(es, 2):
        if alternate(c, e, f):
            adj[e].append(f)
            adj[f].append(e)
    color: dict[Edge, int] = {}
    comps = []
    for s in es:
        if s in color:
            continue
        color[s] = 0
        parts: tuple[list[Edge], list[Edge]] = ([s], [])
        stack = [s]
        while stack:
            e = stack.pop()
            for f in adj[e]:
                if f not in color:
                    color[f] = 1 - color[e]
                    parts[color[f]].append(f)
                    stack.append(f)
                elif color[f] == color[e]:
                    return Violation("planarity", (e, f))
        comps.append((tuple(sorted(parts[0])), tuple(sorted(parts[1]))))
    return comps


def _check_reducible(c: CycleInstance) -> None:
    _require_two(c)
    for v in c.order:
        if sum(1 for e in c.exclusive[0] if v in e) > 1:
            raise PreconditionError(f"graph 1 has degree 4 at {c.names[v]!r}")
    for e, f in combinations(sorted(c.exclusive[0]), 2):
        if alternate(c, e, f):
            raise PreconditionError(
                f"graph 1 is not outerplanar: {c.name_edge(e)} and {c.name_edge(f)} alternate"
            )


def reduce_to_nae(c: CycleInstance) -> ReductionCertificate | Infeasible:
    """Encode the remaining constraints as a not-all-equal formula.

    One variable per alternation component of graph 2 (true: first part
    inside) and one helper per graph-1 chord.  For a graph-1 chord (v, w)
    whose endpoint v carries two graph-2 chords with literals a, b (true
    meaning inside), the clause (a, b, x_e) is added; at w the clause
    (not x_e, not c, not d).  A true x_e means the chord is outside.  An
    endpoint with fewer than two graph-2 chords forces nothing, so its clause
    is omitted.
    """
    _check_reducible(c)
    comps = alternation_components(c, 1)
    if isinstance(comps, Violation):
        return Infeasible("graph 2 violates its planarity constraints", comps)
    literal: dict[Edge, int] = {}
    for idx, (first, second) in enumerate(comps):
        for e in first:
            literal[e] = idx + 1
        for e in second:
            literal[e] = -(idx + 1)
    edge_vars: dict[Edge, int] = {}
    clauses: list[tuple[int, ...]] = []
    log: list[tuple[str, Edge]] = []
    nvars = len(comps)
    for e in sorted(c.exclusive[0]):
        nvars += 1
        x = edge_vars[e] = nvars
        v, w = e
        at_v = [literal[f] for f in sorted(c.exclusive[1]) if v in f]
        at_w = [literal[f] for f in sorted(c.exclusive[1]) if w in f]
        if len(at_v) == 2:
            clauses.append((at_v[0], at_v[1], x))
            log.append(("first", e))
        if len(at_w) == 2:
            clauses.append((-x, -at_w[0], -at_w[1]))
            log.append(("second", e))
    formula = NaeFormula.of(nvars, clauses)
    return ReductionCertificate(c, formula, tuple(comps), edge_vars, tuple(log))


def decode(cert: ReductionCertificate, t: Mapping[int, bool]) -> SideAssignment:
    """Side assignment described by a satisfying truth assignment."""
    if not nae_eval(cert.formula, t):
        raise ValueError("truth assignment does not satisfy the formula")
    a: SideAssignment = {}
    for idx, (first, second) in enumerate(cert.components):
        inside = t[idx + 1]
        for e in first:
            a[e] = Side.LEFT if inside else Side.RIGHT
        for e in second:
            a[e] = Side.RIGHT if inside else Side.LEFT
    for e, x in cert.edge_vars.items():
        a[e] = Side.RIGHT if t[x] else Side.LEFT
    return a


# ---------------------------------------------------------------------------
# Removing alternating chord pairs of graph 1


def alternating_pairs(c: CycleInstance, g: int = 0) -> list[tuple[Edge, Edge]]:
    return [
        (e, f) for e, f in combinations(sorted(c.exclusive[g]), 2) if alternate(c, e, f)
    ]


def _choose_pair(c: CycleInstance) -> tuple[int, int, int, int] | None:
    """Labeling u, w, v, z (forward order) of an alternating pair with the shortest u..z stretch.

    Labelings that would make a second graph-1 chord at w or v cross the
    spliced gadget are skipped; they only arise next to degree-4 vertices.
    """
    m = len(c.order)
    best = None
    for e, f in alternating_pairs(c):
        ends = sorted(list(e) + list(f), key=lambda x: c.pos[x])
        for s in range(4):
            u, w, v, z = (ends[(s + t) % 4] for t in range(4))
            if edge(u, v) not in (e, f) or not _splice_safe(c, u, w, v, z):
                continue
            length = (c.pos[z] - c.pos[u]) % m
            key = (length, min(e, f), max(e, f), (u, w, v, z))
            if best is None or key < best[0]:
                best = (key, (u, w, v, z))
    if best is None and alternating_pairs(c):
        raise InternalError("no alternating pair admits a gadget")
    return None if best is None else best[1]


def _splice_safe(c: CycleInstance, u: int, w: int, v: int, z: int) -> bool:
    m = len(c.order)

    def between(a: int, x: int, b: int) -> bool:
        return 0 < (c.pos[x] - c.pos[a]) % m < (c.pos[b] - c.pos[a]) % m

    for g in c.exclusive[0]:
        if g in (edge(u, v), edge(w, z)):
            continue
        if v in g:
            y = g[0] if g[1] == v else g[1]
            if between(u, y, v):
                return False
        if w in g:
            y = g[0] if g[1] == w else g[1]
            if between(v, y, z) or y == v:
                return False
        if z in g:
            y = g[0] if g[1] == z else g[1]
            if between(w, y, v):
                return False
    return True


def _check_outerplanarize(c: CycleInstance, allow_degree4: bool) -> None:
    _require_two(c)
    if allow_degree4:
        bad = [v for v in c.order if _separation_violated(c, v)]
        if bad:
            raise PreconditionError(
                f"degree-4 vertex {c.names[bad[0]]!r} of graph 1 has a degree-4 nearest neighbor"
            )
        return
    for v in c.order:
        if sum(1 for e in c.exclusive[0] if v in e) > 1:
            raise PreconditionError(f"graph 1 has degree 4 at {c.names[v]!r}")


def outerplanarize(
    c: CycleInstance, allow_degree4: bool = False, max_steps: int | None = None
) -> tuple[CycleInstance, list[TransformationTrace]]:
    """Splice gadgets until no two graph-1 chords alternate.

    Each step picks alternating chords e=(u,v), f=(w,z) with u, w, v, z in
    forward order and the shortest stretch from u to z, moves w and v into a
    dummy path, and adds two new graph-1 chords e'=(u',v'), f'=(w',z').  Graph-2
    chords at w and v move to w' and v'.  With `allow_degree4`, degree-4
    vertices of graph 1 are accepted when no nearest chord-carrying neighbor
    also has degree 4.  `max_steps` stops after that many splices.
    """
    _check_outerplanarize(c, allow_degree4)
    traces: list[TransformationTrace] = []
    measure = len(alternating_pairs(c))
    while True:
        pick = _choose_pair(c)
        if pick is None or (max_steps is not None and len(traces) >= max_steps):
            return c, traces
        u, w, v, z = (c.names[x] for x in pick)
        work = _Work.of(c)
        work.step = len(traces)
        roles = ["w'", "z'", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "u'", "x11", "v'"]
        d = {r: work.fresh(r) for r in roles}
        seq_from_u = work.order[work.order.index(u):] + work.order[: work.order.index(u)]
        iw, iv, iz = seq_from_u.index(w), seq_from_u.index(v), seq_from_u.index(z)
        h1, h2, h3 = seq_from_u[1:iw], seq_from_u[iw + 1 : iv], seq_from_u[iv + 1 : iz]
        if not h2:
            # keep f'=(w',z') a proper chord when w and v are cycle neighbors
            h2 = [work.fresh("h")]
            d["h"] = h2[0]
        new_path = (
            [u] + h1 + [d["w'"]] + h2
            + [d["z'"], d["x1"], d["x2"], d["x3"], v, d["x4"], d["x5"], d["x6"], d["x7"], w]
            + [d["x8"], d["x9"], d["x10"], d["u'"], d["x11"], d["v'"]] + h3 + [z]
        )
        work.splice(new_path, u, z)
        edge_map: dict[NameEdge, NameEdge] = {}
        moved = {w: d["w'"], v: d["v'"]}
        new_e2 = set()
        for g in sorted(work.ex[1]):
            if w in g or v in g:
                a, b = (moved.get(x, x) for x in g)
                ng = _ne(a, b)
                edge_map[g] = ng
                new_e2.add(ng)
            else:
                new_e2.add(g)
        gadget = [
            ("z'", "x2"), ("z'", "x3"), ("x1", v), ("x3", "x4"), (v, "x6"),
            ("x5", w), ("x7", "x8"), (w, "x10"), ("x8", "u'"), ("x9", "u'"),
        ]
        for a, b in gadget:
            new_e2.add(_ne(d.get(a, a), d.get(b, b)))
        work.ex[1] = new_e2
        # a second graph-1 chord at w or v (degree 4) follows the graph-2 chords
        e, f = _ne(u, v), _ne(w, z)
        new_e1 = set()
        for g in sorted(work.ex[0]):
            if g not in (e, f) and (w in g or v in g):
                a, b = (moved.get(x, x) for x in g)
                edge_map[g] = _ne(a, b)
                new_e1.add(_ne(a, b))
            else:
                new_e1.add(g)
        work.ex[0] = new_e1 | {_ne(d["u'"], d["v'"]), _ne(d["w'"], d["z'"])}
        out = work.build()
        new_measure = len(alternating_pairs(out))
        assert new_measure < measure, "alternating pair count did not decrease"
        measure = new_measure
        traces.append(
            TransformationTrace(
                "outerplanarize",
                (u, w, v, z),
                {name: role for role, name in d.items()},
                edge_map,
            )
        )
        c = out


# ---------------------------------------------------------------------------
# Splitting degree-4 vertices of graph 1


def degree4_vertices(c: CycleInstance, g: int = 0) -> list[int]:
    count = {v: 0 for v in c.order}
    for a, b in c.exclusive[g]:
        count[a] += 1
        count[b] += 1
    return [v for v in c.order if count[v] >= 2]


def _check_split(c: CycleInstance) -> None:
    _require_two(c)
    for v in c.order:
        d1 = sum(1 for e in c.exclusive[0] if v in e)
        d2 = sum(1 for e in c.exclusive[1] if v in e)
        if d1 >= 2 and d2 >= 2:
            raise PreconditionError(f"vertex {c.names[v]!r} has degree 4 in both graphs")


def reduce_degree(
    c: CycleInstance, max_steps: int | None = None
) -> tuple[CycleInstance, list[TransformationTrace]]:
    """Replace every degree-4 vertex v of graph 1 by a dummy path.

    The two graph-1 chords at v are labeled e=(v,u_e), f=(v,u_f) so that u_f
    comes first when walking forward from v; this keeps their replacements
    e''=(v_e,u_e) and f''=(v_f,u_f) nested.  A graph-2 chord h=(v,u_h), when
    present, moves to h''=(v_h,u_h).  Without h the z-part of the path and
    the chord h' are omitted.
    """
    _check_split(c)
    traces: list[TransformationTrace] = []
    while True:
        todo = degree4_vertices(c)
        if not todo or (max_steps is not None and len(traces) >= max_steps):
            return c, traces
        vid = todo[0]
        m = len(c.order)
        v = c.names[vid]
        work = _Work.of(c)
        work.step = len(traces)
        e1 = work.incident(0, v)
        a, b = (_other(x, v) for x in e1)
        dist = lambda x: (c.pos[c.index[x]] - c.pos[vid]) % m  # noqa: E731
        u_f, u_e = sorted((a, b), key=dist)
        e, f = _ne(v, u_e), _ne(v, u_f)
        hs = work.incident(1, v)
        h = hs[0] if hs else None
        roles = ["x1", "x2", "v_e", "x3", "y1", "y2", "v_f", "y3", "v'"]
        if h is not None:
            roles += ["z1", "z2", "v_h", "z3"]
        d = {r: work.fresh(r) for r in roles}
        i = work.order.index(v)
        work.order[i : i + 1] = [d[r] for r in roles]
        work.ex[0] -= {e, f}
        work.ex[0] |= {_ne(d["v_e"], u_e), _ne(d["v_f"], u_f)}
        edge_map = {e: _ne(d["v_e"], u_e), f: _ne(d["v_f"], u_f)}
        e2 = [("x1", "v_e"), ("x2", "x3"), ("y1", "v_f"), ("y2", "y3"), ("v_e", "v'"), ("v_f", "v'")]
        if h is not None:
            u_h = _other(h, v)
            work.ex[1].discard(h)
            work.ex[0].add(_ne(d["v_h"], d["v'"]))
            e2 += [("z1", "v_h"), ("z2", "z3")]
            work.ex[1].add(_ne(d["v_h"], u_h))
            edge_map[h] = _ne(d["v_h"], u_h)
        work.ex[1] |= {_ne(d[x], d[y]) for x, y in e2}
        out = work.build()
        assert len(degree4_vertices(out)) < len(todo), "degree-4 count did not decrease"
        traces.append(
            TransformationTrace("reduce-degree", (v,), {n: r for r, n in d.items()}, edge_map)
        )
        c = out


# ---------------------------------------------------------------------------
# Separating degree-4 vertices of graph 1


def _nearest_carriers(c: CycleInstance, vid: int) -> tuple[int, int]:
    """Closest vertices forward and backward from v that carry a graph-1 chord."""
    m = len(c.order)
    carriers = {x for e in c.exclusive[0] for x in e}
    p = c.pos[vid]
    fwd = next(c.order[(p + t) % m] for t in range(1, m + 1) if c.order[(p + t) % m] in carriers)
    bwd = next(c.order[(p - t) % m] for t in range(1, m + 1) if c.order[(p - t) % m] in carriers)
    return fwd, bwd


def _separation_violated(c: CycleInstance, vid: int) -> bool:
    deg4 = set(degree4_vertices(c))
    if vid not in deg4:
        return False
    fwd, bwd = _nearest_carriers(c, vid)
    return fwd in deg4 or bwd in deg4


def separation_violations(c: CycleInstance) -> list[int]:
    """Degree-4 vertices of graph 1 whose nearest chord-carrying neighbor has degree 4."""
    return [v for v in c.order if _separation_violated(c, v)]


def separated_degree4(c: CycleInstance) -> bool:
    """Whether no degree-4 vertex of graph 1 has a degree-4 nearest chord-carrying neighbor."""
    return not separation_violations(c)


def separate_degree4(
    c: CycleInstance, max_steps: int | None = None
) -> tuple[CycleInstance, list[TransformationTrace]]:
    """Isolate every degree-4 vertex of graph 1 whose nearest carrier has degree 4.

    For chords e=(u,v), f=(v,w) with w reached first walking forward from v,
    v is replaced by x1, x2, v_a, x3..x8, u', x9, x10, v, y1, y2, w', y3..y8,
    v_b, y9, y10.  Graph 1 gets e'=(u,v_a), e''=(u',v), f''=(v,w'),
    f'=(v_b,w) in place of e and f; graph 2 gets fourteen gadget chords.
    """
    _require_two(c)
    traces: list[TransformationTrace] = []
    while True:
        bad = [v for v in c.order if _separation_violated(c, v)]
        if not bad or (max_steps is not None and len(traces) >= max_steps):
            return c, traces
        before = len(bad)
        vid = bad[0]
        m = len(c.order)
        v = c.names[vid]
        work = _Work.of(c)
        work.step = len(traces)
        a, b = (_other(x, v) for x in work.incident(0, v))
        dist = lambda x: (c.pos[c.index[x]] - c.pos[vid]) % m  # noqa: E731
        w, u = sorted((a, b), key=dist)
        e, f = _ne(u, v), _ne(v, w)
        left = ["x1", "x2", "v_a", "x3", "x4", "x5", "x6", "x7", "x8", "u'", "x9", "x10"]
        right = ["y1", "y2", "w'", "y3", "y4", "y5", "y6", "y7", "y8", "v_b", "y9", "y10"]
        d = {r: work.fresh(r) for r in left + right}
        i = work.order.index(v)
        work.order[i : i + 1] = [d[r] for r in left] + [v] + [d[r] for r in right]
        work.ex[0] -= {e, f}
        e_new, f_new = _ne(u, d["v_a"]), _ne(d["v_b"], w)
        work.ex[0] |= {e_new, _ne(d["u'"], v), _ne(v, d["w'"]), f_new}
        gadget = [
            ("x1", "v_a"), ("x2", "x3"), ("v_a", "x5"), ("x4", "x7"), ("x6", "u'"),
            ("x8", "x9"), ("u'", "x10"), ("y1", "w'"), ("y2", "y3"), ("w'", "y5"),
            ("y4", "y7"), ("y6", "v_b"), ("y8", "y9"), ("v_b", "y10"),
        ]
        work.ex[1] |= {_ne(d[x], d[y]) for x, y in gadget}
        out = work.build()
        after = sum(1 for x in out.order if _separation_violated(out, x))
        assert after < before, "separation violations did not decrease"
        traces.append(
            TransformationTrace(
                "separate-degree4", (v,), {n: r for r, n in d.items()}, {e: e_new, f: f_new}
            )
        )
        c = out


def lemma7_transform(c: CycleInstance) -> tuple[CycleInstance, list[TransformationTrace]]:
    """Separate degree-4 vertices of graph 1, then make graph 1 outerplanar.

    Outerplanarization may move a degree-4 vertex next to another one, so the
    two phases alternate until both properties hold.
    """
    traces: list[TransformationTrace] = []
    while True:
        c, t1 = separate_degree4(c)
        c, t2 = outerplanarize(c, allow_degree4=True)
        traces += t1 + t2
        if separated_degree4(c):
            return c, traces


# ---------------------------------------------------------------------------
# End-to-end solver


@dataclass
class CycleSolution:
    verdict: Verdict
    traces: list[TransformationTrace] = field(default_factory=list)
    certificate: ReductionCertificate | None = None
    reduced: CycleInstance | None = None


def check_solvable(c: CycleInstance) -> None:
    _require_two(c)
    if max_union_degree(c) > 5:
        raise PreconditionError("the union graph has a vertex of degree more than 5")


def _translate(src: CycleInstance, dst: CycleInstance, v: Violation) -> list[Violation]:
    """The violation in dst's edge ids, or nothing when it involves gadget edges."""
    ours = {frozenset(dst.name_edge(e)) for _, e in dst.all_exclusive}
    named = [src.name_edge(e) for e in v.edges]
    if not all(frozenset(e) in ours for e in named):
        return []
    vertex = None if v.vertex is None else dst.index.get(src.names[v.vertex])
    return [Violation(v.kind, tuple(dst.id_edge(e) for e in named), vertex)]


def solve_cycle_detailed(c: CycleInstance) -> CycleSolution:
    check_solvable(c)
    comps = alternation_components(c, 0)
    if isinstance(comps, Violation):
        return CycleSolution(Verdict(False, violations=[comps], reason="graph 1 violates its planarity constraints"))
    c1, t1 = reduce_degree(c)
    c2, t2 = outerplanarize(c1)
    traces = t1 + t2
    cert = reduce_to_nae(c2)
    if isinstance(cert, Infeasible):
        found = _translate(c2, c, cert.violation)
        return CycleSolution(Verdict(False, violations=found, reason=cert.reason), traces, None, c2)
    _, planar = variable_clause_graph(cert.formula)
    assert planar, "variable-clause graph is not planar"
    t = nae_solve(cert.formula)
    if t is None:
        return CycleSolution(Verdict(False, reason="the orthogonality formula is not NAE-satisfiable"), traces, cert, c2)
    a = pull_back(c, traces, c2, decode(cert, t))
    verdict = check_assignment(c, a)
    if not verdict.feasible:
        raise InternalError("pulled-back witness fails the constraint check")
    return CycleSolution(verdict, traces, cert, c2)


def solve_cycle(c: CycleInstance) -> Verdict:
    """Decide a two-graph shared-cycle instance with union max degree 5."""
    return solve_cycle_detailed(c).verdict
