"""Instance generators: the NAE3SAT hardness constructions, random cycle and
biconnected instances, and a small negative instance that still admits a SEFE.

Vertex names carry their gadget role, e.g. "w_3^2" is vertex w of the gadget
for variable 3 in clause 2, and "beta^1" is vertex beta of clause 1's gadget.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .constraints import Side, detached_components
from .instance import CycleInstance, InstanceError, SunflowerInstance, alternate, edge
from .naesat import NaeFormula

VARIABLE_PATH = ("s", "u", "w", "v", "z", "r")  # t is the next gadget's s
CLAUSE_PATH = (
    "s", "alpha", "y_a", "beta", "y_b", "d_1", "d_2", "d_3", "d_4", "d_5", "d_6",
    "gamma", "y_c", "delta",
)
CLAUSE_GREEN = (
    ("alpha", "beta"), ("beta", "gamma"), ("gamma", "delta"),
    ("d_1", "d_3"), ("d_2", "d_4"), ("d_3", "d_5"), ("d_4", "d_6"),
)
CLAUSE_RED = (("beta", "d_3"), ("d_4", "gamma"))


@dataclass(frozen=True)
class NaeInput:
    """Positive exactly-three NAE3SAT formula with 1-based variables."""

    n: int
    clauses: tuple[tuple[int, int, int], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("at least one variable is required")
        for clause in self.clauses:
            if len(clause) != 3 or len(set(clause)) != 3:
                raise ValueError(f"clause {clause} must have three distinct variables")
            if any(not 1 <= x <= self.n for x in clause):
                raise ValueError(f"clause {clause} references an undeclared variable")

    @classmethod
    def of(cls, n: int, clauses: Iterable[Sequence[int]]) -> NaeInput:
        return cls(n, tuple(tuple(c) for c in clauses))  # type: ignore[misc]

    def ordered(self, j: int) -> tuple[int, int, int]:
        """Clause j (1-based) as (a, b, c): descending for odd j, ascending for even j."""
        return tuple(sorted(self.clauses[j - 1], reverse=j % 2 == 1))  # type: ignore[return-value]

    def formula(self) -> NaeFormula:
        return NaeFormula.of(self.n, self.clauses)

    def variable_name(self, i: int) -> str:
        return self.names[i - 1] if self.names else f"x{i}"


def parse_nae3sat(text: str) -> NaeInput:
    """One clause per line, three variable names each; '#' starts a comment."""
    index: dict[str, int] = {}
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        names = line.replace(",", " ").split()
        if len(names) != 3:
            raise ValueError(f"line {lineno}: expected three variables, got {len(names)}")
        clauses.append(tuple(index.setdefault(x, len(index) + 1) for x in names))
    if not clauses:
        raise ValueError("formula has no clauses")
    return NaeInput(len(index), tuple(clauses), tuple(index))  # type: ignore[arg-type]


@dataclass
class GadgetMap:
    """Gadget roles ("w_3^2", "t_1^1", "beta^2", "p_1^1.2", ...) to vertex ids."""

    roles: dict[str, int] = field(default_factory=dict)
    n: int = 0
    m: int = 0

    def __getitem__(self, role: str) -> int:
        return self.roles[role]

    def truth_edge(self, i: int) -> tuple[int, int]:
        return edge(self.roles[f"u_{i}^1"], self.roles[f"v_{i}^1"])


def _cycle_layout(f: NaeInput) -> tuple[list[str], dict[str, str]]:
    """Cycle vertex names in order and the identified roles (t's) they absorb."""
    order: list[str] = []
    alias: dict[str, str] = {}
    for j in range(1, len(f.clauses) + 1):
        seq = range(1, f.n + 1) if j % 2 == 1 else range(f.n, 0, -1)
        prev_gadget = None
        for i in seq:
            names = [f"{r}_{i}^{j}" for r in VARIABLE_PATH]
            if prev_gadget is not None:
                alias[f"t_{prev_gadget}^{j}"] = names[0]
            order.extend(names)
            prev_gadget = i
        names = [f"{r}^{j}" if r != "s" else f"s^{j}" for r in CLAUSE_PATH]
        alias[f"t_{prev_gadget}^{j}"] = names[0]
        order.extend(names)
        first_next = 1 if (j + 1) % 2 == 1 else f.n
        alias[f"t^{j}"] = f"s_{first_next}^{j + 1}" if j < len(f.clauses) else order[0]
    return order, alias


def _three_graph_edges(f: NaeInput) -> tuple[list[str], list[list[tuple[str, str]]], dict[str, str]]:
    m = len(f.clauses)
    order, alias = _cycle_layout(f)
    red: list[tuple[str, str]] = []
    blue: list[tuple[str, str]] = []
    green: list[tuple[str, str]] = []
    for j in range(1, m + 1):
        a, b, c = f.ordered(j)
        slot = {a: "y_a", b: "y_b", c: "y_c"}
        for i in range(1, f.n + 1):
            green.append((f"u_{i}^{j}", f"v_{i}^{j}"))
            green.append((f"w_{i}^{j}", f"z_{i}^{j}"))
            target = f"{slot[i]}^{j}" if i in slot else f"r_{i}^{j}"
            green.append((f"w_{i}^{j}", target))
            if j < m:
                (blue if j % 2 == 1 else red).append((f"w_{i}^{j}", f"w_{i}^{j + 1}"))
        green.extend((f"{x}^{j}", f"{y}^{j}") for x, y in CLAUSE_GREEN)
        red.extend((f"{x}^{j}", f"{y}^{j}") for x, y in CLAUSE_RED)
    return order, [red, blue, green], alias


def _gadget_map(c: CycleInstance, f: NaeInput, alias: Mapping[str, str]) -> GadgetMap:
    index = {name: v for v, name in enumerate(c.names)}
    roles = dict(index)
    roles.update({role: index[target] for role, target in alias.items()})
    return GadgetMap(roles, f.n, len(f.clauses))


def _assert_outerplanar_deg3(c: CycleInstance, graphs: Iterable[int]) -> None:
    for g in graphs:
        es = sorted(c.exclusive[g])
        for e, h in combinations(es, 2):
            assert not alternate(c, e, h), f"graph {g + 1} is not outerplanar"
        for v in c.order:
            assert sum(1 for e in es if v in e) <= 1, f"graph {g + 1} exceeds degree 3"


def _assert_membership_nested(c: CycleInstance, f: NaeInput, gm: GadgetMap, g: int) -> None:
    for j in range(1, len(f.clauses) + 1):
        members = [edge(gm[f"w_{i}^{j}"], gm[f"{y}^{j}"]) for i, y in zip(f.ordered(j), ("y_a", "y_b", "y_c"))]
        for e, h in combinations(members, 2):
            assert not alternate(c, e, h), "variable-clause edges alternate"
        assert all(e in c.exclusive[g] for e in members)


def generate_theorem3(f: NaeInput) -> tuple[CycleInstance, GadgetMap]:
    """Three-graph instance feasible iff f is NAE-satisfiable.

    Graph 1 holds the red edges, graph 2 the blue ones and graph 3 the green
    ones.  The gadget sequence for clause j lists the variable gadgets in
    increasing variable order for odd j and decreasing for even j, followed
    by the clause gadget; the last clause gadget closes the cycle.
    """
    order, (red, blue, green), alias = _three_graph_edges(f)
    c = CycleInstance.from_names(order, [red, blue, green])
    gm = _gadget_map(c, f, alias)
    _assert_outerplanar_deg3(c, (0, 1))
    _assert_membership_nested(c, f, gm, 2)
    return c, gm


def generate_theorem4(f: NaeInput) -> tuple[CycleInstance, GadgetMap]:
    """Two-graph variant: the shared graph is the cycle plus isolated vertices.

    Red edges stay in graph 1 and green edges form graph 2.  Each blue
    transmission edge becomes a path through new isolated vertices whose
    edges alternate red, green, ..., red.  Its length is 2t + 1, where t
    counts the chords and other transmission paths that alternate with or
    touch its two ends, so the path can cross each of them with an edge of
    the other color.
    """
    order, (red, blue, green), alias = _three_graph_edges(f)
    pos = {name: p for p, name in enumerate(order)}
    def alt(e: tuple[str, str], h: tuple[str, str]) -> bool:
        a, b = sorted((pos[e[0]], pos[e[1]]))
        x, y = pos[h[0]], pos[h[1]]
        if set(e) & set(h):
            return True
        return (a < x < b) != (a < y < b)

    red_paths, green_paths = list(red), list(green)
    isolated: list[str] = []
    for e in blue:
        t = sum(1 for h in red + green if alt(e, h))
        t += sum(1 for h in blue if h != e and alt(e, h))
        length = 2 * t + 1
        (i, j) = _wj(e[0])
        inner = [f"p_{i}^{j}.{k}" for k in range(1, length)]
        isolated.extend(inner)
        path = [e[0], *inner, e[1]]
        for k, (x, y) in enumerate(zip(path, path[1:])):
            (red_paths if k % 2 == 0 else green_paths).append((x, y))
    c = CycleInstance.from_names(order, [red_paths, green_paths], isolated=isolated)
    gm = _gadget_map(c, f, alias)
    assert all(comp.flexible for comp in detached_components(c)), "transmission path too short"
    _assert_membership_nested(c, f, gm, 1)
    return c, gm


def _wj(name: str) -> tuple[int, int]:
    """(i, j) of a role name "w_i^j"."""
    i, j = name[2:].split("^")
    return int(i), int(j)


def decode_truth(c: CycleInstance, gm: GadgetMap, witness: Mapping) -> dict[int, bool]:
    """x_i is true iff the truth edge {u_i^1, v_i^1} lies inside (Left)."""
    return {i: witness[gm.truth_edge(i)] is Side.LEFT for i in range(1, gm.n + 1)}


# ---------------------------------------------------------------------------
# Random instances


def generate_random(
    n: int,
    budget: int | Sequence[int],
    degree_cap: int = 5,
    seed: int = 0,
    k: int = 2,
    attempts: int = 10000,
) -> CycleInstance:
    """Seeded random cycle instance with `budget` exclusive chords per graph.

    Chords are drawn uniformly and rejected when they repeat an edge or push
    a vertex beyond degree 4 in its graph or `degree_cap` in the union.
    """
    budgets = [budget] * k if isinstance(budget, int) else list(budget)
    if len(budgets) != k:
        raise InstanceError(f"expected {k} budgets, got {len(budgets)}")
    if n < 3:
        raise InstanceError("a cycle needs at least 3 vertices")
    if degree_cap < 2:
        raise InstanceError("degree cap below the cycle degree")
    free = n * min(degree_cap - 2, 2 * k)
    if any(b < 0 for b in budgets) or 2 * sum(budgets) > free:
        raise InstanceError(f"budgets {budgets} cannot be placed under degree cap {degree_cap}")
    for b in budgets:
        if 2 * b > 2 * n or b > n * (n - 3) // 2:
            raise InstanceError(f"budget {b} exceeds the chords available to one graph")
    rng = random.Random(seed)
    chords = [(a, b) for a in range(n) for b in range(a + 2, n) if not (a == 0 and b == n - 1)]
    gdeg = [[0] * n for _ in range(k)]
    udeg = [2] * n
    used: set[tuple[int, int]] = set()
    exclusive: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for _ in range(attempts):
        open_graphs = [g for g in range(k) if len(exclusive[g]) < budgets[g]]
        if not open_graphs:
            break
        g = rng.choice(open_graphs)
        a, b = rng.choice(chords)
        if (a, b) in used or gdeg[g][a] >= 2 or gdeg[g][b] >= 2:
            continue
        if udeg[a] >= degree_cap or udeg[b] >= degree_cap:
            continue
        used.add((a, b))
        exclusive[g].append((a, b))
        for x in (a, b):
            gdeg[g][x] += 1
            udeg[x] += 1
    else:
        raise InstanceError(f"could not place the budgets within {attempts} attempts")
    names = [str(v) for v in range(n)]
    return CycleInstance.from_names(
        names, [[(names[a], names[b]) for a, b in es] for es in exclusive]
    )


def generate_random_biconnected(n: int, m: int, seed: int = 0, attempts: int = 200) -> SunflowerInstance:
    """Seeded random two-graph instance whose shared graph is biconnected.

    The shared graph is a cycle grown by ears of up to three new vertices,
    plus occasional chords, keeping it planar with maximum degree 4.  Up to
    `m` exclusive edges follow, each keeping its graph planar, its graph's
    degree at most 4 and the union degree at most 5.  The result may have
    fewer than `n` vertices or `m` exclusive edges when placements run out.
    """
    if n < 3:
        raise InstanceError("a biconnected shared graph needs at least 3 vertices")
    rng = random.Random(seed)
    c = rng.randint(3, max(3, n - 2))
    g = nx.cycle_graph(c)
    nv = c
    for _ in range(attempts):
        if nv >= n:
            break
        a, b = rng.sample(range(nv), 2)
        length = rng.randint(1 if g.has_edge(a, b) else 0, min(3, n - nv))
        path = [a, *range(nv, nv + length), b]
        h = g.copy()
        h.add_edges_from(zip(path, path[1:]))
        if max(d for _, d in h.degree()) <= 4 and nx.check_planarity(h)[0]:
            g, nv = h, nv + length
    for _ in range(rng.randint(0, 2)):
        a, b = rng.sample(range(nv), 2)
        h = g.copy()
        h.add_edge(a, b)
        if not g.has_edge(a, b) and max(d for _, d in h.degree()) <= 4 and nx.check_planarity(h)[0]:
            g = h
    shared = {edge(*e) for e in g.edges()}
    exclusive: list[set[tuple[int, int]]] = [set(), set()]
    udeg = dict(g.degree())
    gdeg = [dict(udeg), dict(udeg)]
    for _ in range(4 * m):
        if sum(map(len, exclusive)) >= m:
            break
        i = rng.randrange(2)
        a, b = rng.sample(range(nv), 2)
        e = edge(a, b)
        if e in shared or e in exclusive[0] or e in exclusive[1]:
            continue
        if udeg[a] >= 5 or udeg[b] >= 5 or gdeg[i][a] >= 4 or gdeg[i][b] >= 4:
            continue
        if not nx.check_planarity(nx.Graph(list(shared | exclusive[i] | {e})))[0]:
            continue
        exclusive[i].add(e)
        for x in (a, b):
            udeg[x] += 1
            gdeg[i][x] += 1
    names = tuple(f"v{i}" for i in range(nv))
    return SunflowerInstance(names, frozenset(shared), (frozenset(exclusive[0]), frozenset(exclusive[1])))


# ---------------------------------------------------------------------------
# Negative instance with a SEFE


def negative_sefe_instance() -> CycleInstance:
    """Two graphs on a 14-cycle that admit a SEFE but no orthogonal one.

    The cycle is u, a1..a6, v, b1..b6.  The red chords at u, (u,a2) and
    (u,a4), alternate with (a1,a6), which alternates with (a5,b1), which
    alternates with the red chords at v, (v,b2) and (v,b4).  So the chords
    at u and the chords at v lie on different sides, and each pair bends its
    vertex toward its own side.  The blue chord (u,v) would need both sides
    at once.  The chords (a1,b5) and (b1,b6) mirror this chain from v.
    """
    order = ["u", "a1", "a2", "a3", "a4", "a5", "a6", "v", "b1", "b2", "b3", "b4", "b5", "b6"]
    red = [
        ("u", "a2"), ("u", "a4"), ("a1", "a6"), ("a5", "b1"),
        ("v", "b2"), ("v", "b4"), ("b1", "b6"), ("a1", "b5"),
    ]
    blue = [("u", "v")]
    return CycleInstance.from_names(order, [red, blue])
