"""Exhaustive rotation-system search, independent of the side characterization.

Two search routes are provided:

* `cycle_rotation_search` enumerates, per graph, every rotation system of the
  shared cycle plus that graph's exclusive edges, keeps the planar ones by an
  Euler face count, and combines the graphs through the gap each exclusive
  edge occupies at its endpoints.
* `rotation_search` handles any biconnected shared graph: it enumerates planar
  embeddings of the shared graph, places each exclusive edge into a face that
  contains both endpoints, and checks the result.

Both certify a positive answer with `check_sefe_orthogonality`.
"""
from __future__ import annotations

from itertools import permutations, product
from typing import Iterator, Mapping, Sequence

from .constraints import (
    RotationSystem,
    Verdict,
    check_sefe_orthogonality,
    gap_rule_violations,
)
from .instance import CycleInstance, Edge, SunflowerInstance, edge

DEFAULT_LIMIT = 1 << 16


class SearchTooLarge(ValueError):
    """The rotation space exceeds the configured enumeration limit."""


def cyclic_orders(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All cyclic orders of `items`, each listed once starting with items[0]."""
    if len(items) <= 2:
        yield tuple(items)
        return
    first, rest = items[0], items[1:]
    for p in permutations(rest):
        yield (first,) + p


# ---------------------------------------------------------------------------
# Shared cycle: per-graph enumeration


def graph_gap_signatures(c: CycleInstance, i: int) -> dict[tuple[int, ...], RotationSystem]:
    """Planar rotations of cycle + graph i, keyed by the gap of every edge end.

    The key lists, for each exclusive edge of graph i in sorted order and each
    endpoint, 0 when the edge leaves through the gap opened by the cycle
    successor and 1 for the gap opened by the cycle predecessor.
    """
    m = len(c.order)
    nxt = {v: c.order[(p + 1) % m] for p, v in enumerate(c.order)}
    prv = {v: c.order[p - 1] for p, v in enumerate(c.order)}
    es = sorted(c.exclusive[i])
    nbrs: dict[int, list[int]] = {v: [nxt[v], prv[v]] for v in c.order}
    for u, v in es:
        nbrs[u].append(v)
        nbrs[v].append(u)
    busy = [v for v in c.order if len(nbrs[v]) > 2]
    fixed = {v: tuple(nbrs[v]) for v in c.order if len(nbrs[v]) == 2}
    # face successor of dart a->v is v->ring[idx(a) - 1]; precompute per ring
    succ = {v: {ring[i]: ring[i - 1] for i in range(len(ring))} for v, ring in fixed.items()}
    options = [[(ring, {ring[i]: ring[i - 1] for i in range(len(ring))}) for ring in cyclic_orders(nbrs[v])] for v in busy]
    darts = [(v, w) for v in c.order for w in nbrs[v]]
    target = 2 + len(es)  # Euler: V - E + F = 2 with V = m, E = m + |es|
    out: dict[tuple[int, ...], RotationSystem] = {}
    for choice in product(*options):
        for v, (_, nxt_map) in zip(busy, choice):
            succ[v] = nxt_map
        if _face_count(darts, succ) != target:
            continue
        rot = dict(fixed)
        rot.update((v, ring) for v, (ring, _) in zip(busy, choice))
        key = []
        for u, v in es:
            for a, b in ((u, v), (v, u)):
                ring = rot[a]
                # walk counterclockwise from b back to a cycle neighbor: the gap opener
                j = ring.index(b)
                while ring[j] not in (nxt[a], prv[a]):
                    j -= 1
                key.append(0 if ring[j] == nxt[a] else 1)
        out.setdefault(tuple(key), rot)
    return out


def _face_count(darts: list[tuple[int, int]], succ: Mapping[int, Mapping[int, int]]) -> int:
    seen: set[tuple[int, int]] = set()
    faces = 0
    for d in darts:
        if d in seen:
            continue
        faces += 1
        a, b = d
        while (a, b) not in seen:
            seen.add((a, b))
            a, b = b, succ[b][a]
    return faces


def merge_rotations(c: CycleInstance, rots: Sequence[RotationSystem]) -> RotationSystem:
    """Union rotation keeping each graph's order within every gap."""
    m = len(c.order)
    merged: RotationSystem = {}
    for p, v in enumerate(c.order):
        nxt, prv = c.order[(p + 1) % m], c.order[p - 1]
        gaps: dict[int, list[int]] = {nxt: [], prv: []}
        for rot in rots:
            ring = rot[v]
            j = ring.index(nxt)
            current = nxt
            for t in range(1, len(ring)):
                w = ring[(j + t) % len(ring)]
                if w == prv:
                    current = prv
                elif w != nxt:
                    gaps[current].append(w)
        merged[v] = (nxt, *gaps[nxt], prv, *gaps[prv])
    for v in c.isolated:
        merged[v] = ()
    return merged


def signature_gaps(c: CycleInstance, sigs: Sequence[tuple[int, ...]]) -> dict[int, dict[Edge, int]]:
    """Gap (named by the opening cycle neighbor) of each exclusive edge at each vertex."""
    m = len(c.order)
    gaps: dict[int, dict[Edge, int]] = {}
    for i, sig in enumerate(sigs):
        for idx, (u, v) in enumerate(sorted(c.exclusive[i])):
            for off, a in enumerate((u, v)):
                p = c.pos[a]
                opener = c.order[(p + 1) % m] if sig[2 * idx + off] == 0 else c.order[p - 1]
                gaps.setdefault(a, {})[edge(u, v)] = opener
    return gaps


def cycle_rotation_search(
    c: CycleInstance,
    signatures: Sequence[Mapping[tuple[int, ...], RotationSystem]] | None = None,
) -> Verdict:
    """Exhaustive search over per-graph planar rotations of a pure cycle instance."""
    if signatures is None:
        signatures = [graph_gap_signatures(c, i) for i in range(c.k)]
    graph_of = {e: i for i, es in enumerate(c.exclusive) for e in es}
    for combo in product(*(sorted(s) for s in signatures)):
        gaps = signature_gaps(c, combo)
        if any(gap_rule_violations(v, 2, g, graph_of) for v, g in gaps.items()):
            continue
        rot = merge_rotations(c, [signatures[i][s] for i, s in enumerate(combo)])
        verdict = check_sefe_orthogonality(c, rot)
        assert verdict.feasible, "gap signature accepted but rotation rejected"
        return verdict
    return Verdict(False, reason="no planar rotation system satisfies the gap rules")


# ---------------------------------------------------------------------------
# Biconnected shared graphs: embeddings and face placement


def planar_embeddings(
    n: int, shared: Sequence[Edge], limit: int = DEFAULT_LIMIT
) -> Iterator[tuple[RotationSystem, list[list[int]]]]:
    """Planar rotation systems of a connected shared graph, one per mirror pair.

    Yields the rotation and its faces as vertex walks (face to the left).
    """
    nbrs: dict[int, list[int]] = {}
    for u, v in shared:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    vertices = sorted(nbrs)
    options = [list(cyclic_orders(sorted(nbrs[v]))) for v in vertices]
    total = 1
    for o in options:
        total *= len(o)
    if total > limit:
        raise SearchTooLarge(f"{total} shared rotation systems exceed the limit {limit}")
    nedges = len(shared)
    for choice in product(*options):
        rot = dict(zip(vertices, choice))
        mirror = tuple(_canon(tuple(reversed(o))) for o in choice)
        if mirror < tuple(choice):
            continue
        faces = face_walks(rot)
        if len(vertices) - nedges + len(faces) == 2:
            yield rot, faces


def _canon(order: tuple[int, ...]) -> tuple[int, ...]:
    j = order.index(min(order))
    return order[j:] + order[:j]


def face_walks(rot: Mapping[int, tuple[int, ...]]) -> list[list[int]]:
    where = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                a, b = b, rot[b][where[b][a] - 1]
            faces.append(walk)
    return faces


def _alternates(pos: Mapping[int, int], e: Edge, f: Edge) -> bool:
    a, b = sorted((pos[e[0]], pos[e[1]]))
    x, y = pos[f[0]], pos[f[1]]
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def rotation_search(inst: SunflowerInstance | CycleInstance, limit: int = DEFAULT_LIMIT) -> Verdict:
    """Exhaustive SEFE search for an instance with a biconnected shared graph."""
    shared = sorted(inst.shared)
    shared_deg: dict[int, int] = {}
    for u, v in shared:
        shared_deg[u] = shared_deg.get(u, 0) + 1
        shared_deg[v] = shared_deg.get(v, 0) + 1
    tagged = sorted((e, i) for i, es in enumerate(inst.exclusive) for e in es)
    graph_of = {e: i for e, i in tagged}
    incident: dict[int, list[Edge]] = {}
    for e, _ in tagged:
        incident.setdefault(e[0], []).append(e)
        incident.setdefault(e[1], []).append(e)
    # a vertex is checked once its last incident edge is placed
    last_at: dict[int, list[int]] = {}
    for v, es in incident.items():
        last_at.setdefault(max(tagged.index((e, graph_of[e])) for e in es), []).append(v)
    for rot, faces in planar_embeddings(inst.n, shared, limit):
        positions = [{v: j for j, v in enumerate(f)} for f in faces]
        cands = [[fi for fi, pos in enumerate(positions) if e[0] in pos and e[1] in pos] for e, _ in tagged]
        if any(not c for c in cands):
            continue
        placed: list[int] = [-1] * len(tagged)
        result = _place(0, tagged, cands, placed, positions, faces, shared_deg, graph_of, incident, last_at)
        if result is not None:
            r = _assemble(inst, rot, faces, positions, tagged, result)
            verdict = check_sefe_orthogonality(inst, r)
            assert verdict.feasible, "face placement accepted but rotation rejected"
            return verdict
    return Verdict(False, reason="no SEFE rotation system satisfies the gap rules")


def _gap_of(faces: list[list[int]], positions: list[dict[int, int]], fi: int, v: int) -> int:
    walk = faces[fi]
    return walk[(positions[fi][v] + 1) % len(walk)]


def _place(idx, tagged, cands, placed, positions, faces, shared_deg, graph_of, incident, last_at):
    if idx == len(tagged):
        return list(placed)
    e, i = tagged[idx]
    for fi in cands[idx]:
        pos = positions[fi]
        if any(
            placed[j] == fi and tagged[j][1] == i and _alternates(pos, e, tagged[j][0])
            for j in range(idx)
        ):
            continue
        placed[idx] = fi
        ok = True
        for v in last_at.get(idx, ()):
            gaps = {
                f: _gap_of(faces, positions, placed[tagged.index((f, graph_of[f]))], v)
                for f in incident[v]
            }
            if gap_rule_violations(v, shared_deg.get(v, 0), gaps, graph_of):
                ok = False
                break
        if ok:
            res = _place(idx + 1, tagged, cands, placed, positions, faces, shared_deg, graph_of, incident, last_at)
            if res is not None:
                return res
        placed[idx] = -1
    return None


def _assemble(inst, rot, faces, positions, tagged, placement) -> RotationSystem:
    """Union rotation: inside each face angle, chords sorted by walk distance."""
    by_gap: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (e, _), fi in zip(tagged, placement):
        walk, pos = faces[fi], positions[fi]
        for a, b in ((e[0], e[1]), (e[1], e[0])):
            d = (pos[b] - pos[a]) % len(walk)
            opener = walk[(pos[a] + 1) % len(walk)]
            by_gap.setdefault((a, opener), []).append((d, b))
    r: RotationSystem = {}
    for v in range(inst.n):
        ring = []
        for s in rot.get(v, ()):
            ring.append(s)
            ring.extend(w for _, w in sorted(by_gap.get((v, s), [])))
        if v not in rot:
            ring.extend(w for _, w in sorted(by_gap.get((v, -1), [])))
        r[v] = tuple(ring)
    return r
