"""Not-all-equal satisfiability: formulas, evaluation, a complete solver, and
the variable-clause incidence graph.

Literals are nonzero integers: `v` is variable v (1-based) and `-v` its
negation.  A clause is satisfied when it holds at least one true and at least
one false literal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import networkx as nx

NaeAssignment = dict[int, bool]


@dataclass(frozen=True)
class NaeFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} references an undeclared variable")

    @classmethod
    def of(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> NaeFormula:
        return cls(num_vars, tuple(tuple(c) for c in clauses))


def literal_value(lit: int, t: Mapping[int, bool]) -> bool:
    return t[lit] if lit > 0 else not t[-lit]


def nae_eval(f: NaeFormula, t: Mapping[int, bool]) -> bool:
    """True iff every clause has a true and a false literal under t."""
    for clause in f.clauses:
        values = {literal_value(lit, t) for lit in clause}
        if len(values) < 2:
            return False
    return True


def complement(t: Mapping[int, bool]) -> NaeAssignment:
    return {v: not b for v, b in t.items()}


def nae_solve(f: NaeFormula) -> NaeAssignment | None:
    """Return a NAE-satisfying assignment, or None when none exists.

    Each NAE clause becomes the CNF pair (a or b or c) and (not a or not b or
    not c); the search is DPLL with unit propagation.  Because complementing a
    solution gives another, the most frequent variable is fixed to False.
    """
    cnf: list[tuple[int, ...]] = []
    for clause in f.clauses:
        lits = tuple(dict.fromkeys(clause))
        if any(-lit in lits for lit in lits):
            continue  # a complementary pair always has both values
        if len(lits) == 1:
            return None
        cnf.append(lits)
        cnf.append(tuple(-lit for lit in lits))
    n = f.num_vars
    value = [0] * (n + 1)  # 0 unassigned, 1 true, -1 false
    occ: list[list[int]] = [[] for _ in range(n + 1)]
    for ci, clause in enumerate(cnf):
        for lit in clause:
            occ[abs(lit)].append(ci)
    order = sorted(range(1, n + 1), key=lambda v: (-len(occ[v]), v))
    trail: list[int] = []

    def lit_val(lit: int) -> int:
        x = value[abs(lit)]
        return x if lit > 0 else -x

    def assign(lit: int) -> bool:
        queue = [lit]
        while queue:
            lit = queue.pop()
            cur = lit_val(lit)
            if cur == 1:
                continue
            if cur == -1:
                return False
            value[abs(lit)] = 1 if lit > 0 else -1
            trail.append(abs(lit))
            for ci in occ[abs(lit)]:
                free = None
                nfree = 0
                sat = False
                for x in cnf[ci]:
                    val = lit_val(x)
                    if val == 1:
                        sat = True
                        break
                    if val == 0:
                        nfree += 1
                        free = x
                if sat:
                    continue
                if nfree == 0:
                    return False
                if nfree == 1:
                    queue.append(free)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            value[trail.pop()] = 0

    if order and occ[order[0]]:
        if not assign(-order[0]):
            return None
    decisions: list[tuple[int, int]] = []  # (variable, trail mark); first try is False
    while True:
        var = next((v for v in order if value[v] == 0), None)
        if var is None:
            return {v: value[v] == 1 for v in range(1, n + 1)}
        mark = len(trail)
        ok = assign(-var)
        decisions.append((var, mark))
        while not ok:
            # flip the most recent decision still on its first branch
            while decisions and decisions[-1][0] < 0:
                undo(decisions.pop()[1])
            if not decisions:
                return None
            var, mark = decisions.pop()
            undo(mark)
            decisions.append((-var, mark))
            ok = assign(var)


def brute_force(f: NaeFormula) -> NaeAssignment | None:
    """Truth-table search; only for small formulas."""
    from itertools import product

    for bits in product((False, True), repeat=f.num_vars):
        t = {v + 1: b for v, b in enumerate(bits)}
        if nae_eval(f, t):
            return t
    return None


def variable_clause_graph(f: NaeFormula) -> tuple[nx.Graph, bool]:
    """Bipartite variable-clause incidence graph and whether it is planar."""
    g = nx.Graph()
    g.add_nodes_from((("x", v) for v in range(1, f.num_vars + 1)), bipartite=0)
    for j, clause in enumerate(f.clauses):
        g.add_node(("c", j), bipartite=1)
        for lit in clause:
            g.add_edge(("x", abs(lit)), ("c", j))
    planar, _ = nx.check_planarity(g)
    return g, planar


def dump_dimacs(f: NaeFormula) -> str:
    lines = [f"p nae {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in f.clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> NaeFormula:
    num_vars, clauses = None, []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            num_vars = int(parts[2])
            continue
        lits = [int(x) for x in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        clauses.append(lits)
    if num_vars is None:
        raise ValueError("missing header line")
    return NaeFormula.of(num_vars, clauses)
