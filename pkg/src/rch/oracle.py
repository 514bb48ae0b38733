"""Brute-force ground truth used to cross-check the algebraic computations.

Everything here is computed by a route that shares as little as possible with
the main pipeline: coloring counts of circle adjacency graphs, a recursive
bracket whose circles are counted by a flag walk on the state graph, direct
edge-coloring and Klein-group flow enumeration, and dense row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .complex import ChainComplex
from .linalg import dense_rank
from .ribbon import AbstractGraph, PMDiagram, count_faces
from .scalar import LaurentPoly
from .states import Hypercube, state_graph

MAX_DENSE_BLOCK = 2000
BRUTE_FORCE_NODES = 10


@dataclass(frozen=True)
class CircleMultigraph:
    """One node per circle of a state and one edge per matched band.

    ``edges[k]`` joins the circles on the two sides of the ``k``-th matched
    edge; it is a loop when both sides lie on the same circle.
    """

    nodes: int
    edges: Tuple[Tuple[int, int], ...]

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.edges)

    def simple_edges(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((min(a, b), max(a, b)) for a, b in self.edges if a != b)


def circle_multigraph(pm: PMDiagram, alpha: int, cube: Optional[Hypercube] = None) -> CircleMultigraph:
    """Adjacency of the circles of state ``alpha`` across the matched edges."""
    cube = cube if cube is not None else Hypercube(pm)
    state = cube.state(alpha)
    return CircleMultigraph(state.count, tuple(state.matching_sides))


# ---------------------------------------------------------------------------
# Proper colorings
# ---------------------------------------------------------------------------


@lru_cache(maxsize=200_000)
def _colorings(nodes: int, edges: FrozenSet[Tuple[int, int]], n: int) -> int:
    """Deletion-contraction on a simple graph with nodes ``0 .. nodes-1``."""
    if not edges:
        return n ** nodes
    degree = [0] * nodes
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    isolated = sum(1 for d in degree if d == 0)
    leaf = next((v for v, d in enumerate(degree) if d == 1), None)
    if isolated or leaf is not None:
        # Drop isolated nodes (factor n) and one leaf (factor n - 1).
        drop = {v for v, d in enumerate(degree) if d == 0}
        factor = n ** isolated
        remaining = set(edges)
        if leaf is not None:
            drop.add(leaf)
            remaining = {e for e in remaining if leaf not in e}
            factor *= n - 1
        return factor * _colorings(*_compact(nodes, remaining, drop), n)
    a, b = max(edges)
    deleted = edges - {(a, b)}
    contracted = set()
    for u, v in deleted:
        u, v = (a if u == b else u), (a if v == b else v)
        contracted.add((min(u, v), max(u, v)))
    return _colorings(nodes, deleted, n) - _colorings(*_compact(nodes, contracted, {b}), n)


def _compact(nodes: int, edges, drop) -> Tuple[int, FrozenSet[Tuple[int, int]]]:
    keep = [v for v in range(nodes) if v not in drop]
    new = {v: i for i, v in enumerate(keep)}
    return len(keep), frozenset(
        (min(new[u], new[v]), max(new[u], new[v])) for u, v in edges
    )


def proper_coloring_count(graph: CircleMultigraph, n: int) -> int:
    """Number of colorings of the nodes with ``n`` colors, distinct across every edge."""
    if n < 1:
        raise ValueError("at least one color is required")
    if graph.has_loop():
        return 0
    return _colorings(graph.nodes, graph.simple_edges(), n)


def brute_force_coloring_count(graph: CircleMultigraph, n: int) -> int:
    """Backtracking enumeration of proper colorings; small graphs only."""
    if graph.nodes > BRUTE_FORCE_NODES:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_NODES} nodes")
    if graph.has_loop():
        return 0
    neighbours: List[List[int]] = [[] for _ in range(graph.nodes)]
    for a, b in graph.simple_edges():
        neighbours[max(a, b)].append(min(a, b))
    colors = [0] * graph.nodes

    def extend(v: int) -> int:
        if v == graph.nodes:
            return 1
        total = 0
        for c in range(n):
            if all(colors[w] != c for w in neighbours[v]):
                colors[v] = c
                total += extend(v + 1)
        return total

    return extend(0)


# ---------------------------------------------------------------------------
# Recursive bracket
# ---------------------------------------------------------------------------


def _quantum_dimension(n: int) -> LaurentPoly:
    m = n // 2
    return LaurentPoly.from_terms((m - k, 1) for k in range(n))


def bracket_recursion(pm: PMDiagram, n: int, max_matching: int = 16) -> LaurentPoly:
    """Resolve the matched edges one at a time: ``<G> = <G_0> - q^m <G_1>``.

    Circles at the leaves are counted by the flag walk on the state graph,
    independently of the circle tracer used by the state sum.
    """
    if n < 2:
        raise ValueError("the color count n must be at least 2")
    length = len(pm.matching)
    if length > max_matching:
        raise RecursionError(f"{length} matched edges exceed the recursion cap of {max_matching}")
    qdim = _quantum_dimension(n)
    step = LaurentPoly.monomial(n // 2, -1)
    extra = pm.graph.circles

    def resolve(position: int, mask: int) -> LaurentPoly:
        if position == length:
            circles = extra + (count_faces(state_graph(pm, mask)) if length else 0)
            return qdim ** circles
        return resolve(position + 1, mask) + step * resolve(position + 1, mask | 1 << position)

    return resolve(0, 0)


# ---------------------------------------------------------------------------
# Edge colorings and Klein-group flows
# ---------------------------------------------------------------------------


def edge_coloring_count(graph: AbstractGraph, colors: int = 3) -> int:
    """Proper edge colorings of a trivalent graph by backtracking."""
    if not graph.is_trivalent():
        raise ValueError("edge coloring counts are defined here for trivalent graphs only")
    if any(e.is_loop for e in graph.edges):
        return 0
    order = list(graph.edges)
    used: Dict[str, set] = {v: set() for v in graph.vertices}
    count = 0

    def extend(k: int) -> None:
        nonlocal count
        if k == len(order):
            count += 1
            return
        e = order[k]
        for c in range(colors):
            if c in used[e.u] or c in used[e.v]:
                continue
            used[e.u].add(c)
            used[e.v].add(c)
            extend(k + 1)
            used[e.u].discard(c)
            used[e.v].discard(c)

    extend(0)
    return count


def nowhere_zero_flow_count(graph: AbstractGraph, k: int) -> int:
    """Labelings of the edges by nonzero elements of ``Z_2^j`` (``k = 2^j``) summing to zero at each vertex.

    Every element is its own inverse, so orientations play no role.  The
    labels on the edges outside a spanning forest determine the forest labels;
    a labeling counts when all forest labels are nonzero.
    """
    if k < 2 or k & (k - 1):
        raise ValueError("Klein-group flows need k to be a power of two")
    parent: Dict[str, Tuple[Optional[str], Optional[int]]] = {}
    depth_order: List[str] = []
    adjacency: Dict[str, List[Tuple[str, int]]] = {v: [] for v in graph.vertices}
    for index, e in enumerate(graph.edges):
        adjacency[e.u].append((e.v, index))
        adjacency[e.v].append((e.u, index))
    tree_edges = set()
    for root in graph.vertices:
        if root in parent:
            continue
        parent[root] = (None, None)
        stack = [root]
        while stack:
            u = stack.pop()
            depth_order.append(u)
            for w, index in adjacency[u]:
                if w not in parent:
                    parent[w] = (u, index)
                    tree_edges.add(index)
                    stack.append(w)
    free = [i for i in range(len(graph.edges)) if i not in tree_edges]
    endpoints = [(e.u, e.v) for e in graph.edges]
    total = 0
    labels = [0] * len(graph.edges)

    def settle() -> bool:
        excess = {v: 0 for v in graph.vertices}
        for i in free:
            u, v = endpoints[i]
            excess[u] ^= labels[i]
            excess[v] ^= labels[i]
        for v in reversed(depth_order):
            up, index = parent[v]
            if up is None:
                if excess[v]:
                    return False
                continue
            if not excess[v]:
                return False
            labels[index] = excess[v]
            excess[up] ^= excess[v]
        return True

    def extend(position: int) -> None:
        nonlocal total
        if position == len(free):
            total += settle()
            return
        for value in range(1, k):
            labels[free[position]] = value
            extend(position + 1)

    extend(0)
    return total


# ---------------------------------------------------------------------------
# Dense homology
# ---------------------------------------------------------------------------


def dense_homology_check(complex_: ChainComplex, degree: int, key: int) -> int:
    """Homology dimension of one block by dense row reduction."""
    size = len(complex_.block(degree, key))
    if size > MAX_DENSE_BLOCK:
        raise ValueError(f"block of {size} generators exceeds the dense limit {MAX_DENSE_BLOCK}")
    outgoing = 0
    if degree < complex_.length:
        outgoing = dense_rank(complex_.differential(degree, key).to_dense())
    incoming = 0
    if degree > 0:
        incoming = dense_rank(complex_.differential(degree - 1, key).to_dense())
    return size - outgoing - incoming
