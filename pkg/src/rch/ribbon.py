"""Graphs, signed ribbon diagrams, perfect matching diagrams and the blowup.

A ribbon diagram is a signed rotation system: every vertex carries the cyclic
order of its incident half-edges and every edge carries a sign, ``-1`` meaning
the band of that edge has a half twist.  A perfect matching diagram adds a set
of matched edges covering each vertex exactly once.
"""

from __future__ import annotations

import hashlib
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple


class DiagramError(ValueError):
    """Raised when a diagram violates its structural invariants."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class HalfEdge(NamedTuple):
    """One end of an edge: ``end`` is 0 for the first endpoint, 1 for the second."""

    edge: str
    end: int

    def other(self) -> "HalfEdge":
        return HalfEdge(self.edge, 1 - self.end)

    def __str__(self):
        return f"{self.edge}.{self.end}"


class Edge(NamedTuple):
    id: str
    u: str
    v: str

    def endpoint(self, end: int) -> str:
        return self.u if end == 0 else self.v

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class AbstractGraph:
    """A finite multigraph; loops and parallel edges are allowed.

    ``circles`` counts vertex-free circle components.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    circles: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))

    def edge(self, eid: str) -> Edge:
        return self._edge_index()[eid]

    def _edge_index(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def half_edges_at(self, v: str) -> List[HalfEdge]:
        found = []
        for e in self.edges:
            if e.u == v:
                found.append(HalfEdge(e.id, 0))
            if e.v == v:
                found.append(HalfEdge(e.id, 1))
        return found

    def valence(self, v: str) -> int:
        return sum((e.u == v) + (e.v == v) for e in self.edges)

    def is_trivalent(self) -> bool:
        return all(self.valence(v) == 3 for v in self.vertices)

    def components(self, skip: Optional[str] = None) -> List[set]:
        """Connected components of the vertex set, optionally ignoring one edge."""
        adjacency = defaultdict(list)
        for e in self.edges:
            if e.id == skip:
                continue
            adjacency[e.u].append(e.v)
            adjacency[e.v].append(e.u)
        seen, parts = set(), []
        for start in self.vertices:
            if start in seen:
                continue
            part, stack = {start}, [start]
            seen.add(start)
            while stack:
                for w in adjacency[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        part.add(w)
                        stack.append(w)
            parts.append(part)
        return parts

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bridges(self) -> List[str]:
        """Edges whose removal increases the number of components."""
        base = len(self.components())
        return [
            e.id for e in self.edges if not e.is_loop and len(self.components(skip=e.id)) > base
        ]


def _normalize_cycle(cycle: Sequence[HalfEdge], order: Mapping[str, int]) -> Tuple[HalfEdge, ...]:
    """Rotate a cyclic sequence so that its smallest half-edge comes first."""
    cycle = tuple(HalfEdge(*h) for h in cycle)
    if not cycle:
        return cycle
    key = lambda h: (order.get(h.edge, len(order)), h.edge, h.end)
    start = min(range(len(cycle)), key=lambda i: key(cycle[i]))
    return cycle[start:] + cycle[:start]


@dataclass(frozen=True)
class RibbonDiagram:
    """A signed rotation system on an abstract graph."""

    graph: AbstractGraph
    rotation: Mapping[str, Tuple[HalfEdge, ...]]
    sign: Mapping[str, int]
    name: str = "diagram"

    def __post_init__(self):
        order = {e.id: i for i, e in enumerate(self.graph.edges)}
        rotation = {v: _normalize_cycle(self.rotation.get(v, ()), order) for v in self.graph.vertices}
        for v, cycle in self.rotation.items():
            if v not in rotation:
                rotation[v] = _normalize_cycle(cycle, order)
        sign = {e.id: int(self.sign.get(e.id, 1)) for e in self.graph.edges}
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "sign", sign)

    def __eq__(self, other):
        if not isinstance(other, RibbonDiagram):
            return NotImplemented
        return (
            self.graph == other.graph
            and dict(self.rotation) == dict(other.rotation)
            and dict(self.sign) == dict(other.sign)
        )

    def __hash__(self):
        return hash(self.normal_form())

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self.graph.edges

    def position(self) -> Dict[HalfEdge, Tuple[str, int]]:
        """Map each half-edge to ``(vertex, index in that vertex's rotation)``."""
        where = {}
        for v, cycle in self.rotation.items():
            for i, h in enumerate(cycle):
                where[h] = (v, i)
        return where

    def successor(self, h: HalfEdge) -> HalfEdge:
        v, i = self.position()[h]
        cycle = self.rotation[v]
        return cycle[(i + 1) % len(cycle)]

    def predecessor(self, h: HalfEdge) -> HalfEdge:
        v, i = self.position()[h]
        cycle = self.rotation[v]
        return cycle[(i - 1) % len(cycle)]

    def normal_form(self) -> str:
        """Canonical text used for hashing and caching."""
        from .dsl import dump

        return dump(self)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.normal_form().encode("utf-8")).hexdigest()[:16]

    def with_signs(self, sign: Mapping[str, int], name: Optional[str] = None) -> "RibbonDiagram":
        return RibbonDiagram(self.graph, self.rotation, sign, name or self.name)


@dataclass(frozen=True)
class PMDiagram:
    """A ribbon diagram together with a perfect matching.

    The order of ``matching`` is the order of the edges in the graph; it fixes
    the bit positions of state indices.
    """

    diagram: RibbonDiagram
    matching: Tuple[str, ...]

    def __post_init__(self):
        chosen = set(self.matching)
        ordered = tuple(e.id for e in self.diagram.edges if e.id in chosen)
        unknown = chosen - set(ordered)
        if unknown:
            raise DiagramError([f"matching names unknown edge {eid!r}" for eid in sorted(unknown)])
        object.__setattr__(self, "matching", ordered)

    @property
    def name(self) -> str:
        return self.diagram.name

    @property
    def graph(self) -> AbstractGraph:
        return self.diagram.graph

    def normal_form(self) -> str:
        from .dsl import dump

        return dump(self)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.normal_form().encode("utf-8")).hexdigest()[:16]

    def reorder(self, order: Sequence[str]) -> "PMDiagram":
        """Return the same diagram with the matching edges listed in ``order``.

        Edge order in the graph is permuted so that the matched edges appear in
        the requested order; everything else is unchanged.
        """
        if sorted(order) != sorted(self.matching):
            raise ValueError("order must be a permutation of the matching")
        matched = {e.id: e for e in self.graph.edges if e.id in set(order)}
        queue = iter(matched[eid] for eid in order)
        reordered = [next(queue) if e.id in matched else e for e in self.graph.edges]
        graph = AbstractGraph(self.graph.vertices, tuple(reordered), self.graph.circles)
        diagram = RibbonDiagram(graph, self.diagram.rotation, self.diagram.sign, self.name)
        return PMDiagram(diagram, tuple(order))


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def _parse_half(token) -> HalfEdge:
    if isinstance(token, HalfEdge):
        return token
    if isinstance(token, tuple):
        return HalfEdge(*token)
    eid, _, end = str(token).rpartition(".")
    return HalfEdge(eid, int(end))


def make_diagram(
    edges: Iterable[Sequence],
    rotation: Mapping[str, Iterable],
    name: str = "diagram",
    circles: int = 0,
    vertices: Optional[Sequence[str]] = None,
) -> RibbonDiagram:
    """Build a diagram from ``(eid, u, v[, sign])`` tuples and rotations of ``"eid.end"`` tokens."""
    edge_list, signs = [], {}
    for item in edges:
        eid, u, v = item[0], item[1], item[2]
        edge_list.append(Edge(eid, u, v))
        signs[eid] = item[3] if len(item) > 3 else 1
    if vertices is None:
        vertices = list(rotation)
        for e in edge_list:
            for w in (e.u, e.v):
                if w not in vertices:
                    vertices.append(w)
    graph = AbstractGraph(tuple(vertices), tuple(edge_list), circles)
    rot = {v: tuple(_parse_half(t) for t in cycle) for v, cycle in rotation.items()}
    return RibbonDiagram(graph, rot, signs, name)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _validate_ribbon(d: RibbonDiagram) -> List[str]:
    problems = []
    vertex_set = set(d.graph.vertices)
    if len(vertex_set) != len(d.graph.vertices):
        problems.append("duplicate vertex ids")
    ids = [e.id for e in d.graph.edges]
    for eid, count in Counter(ids).items():
        if count > 1:
            problems.append(f"edge id {eid!r} used {count} times")
    for e in d.graph.edges:
        for w in (e.u, e.v):
            if w not in vertex_set:
                problems.append(f"edge {e.id!r} has unknown endpoint {w!r}")
    for eid, s in d.sign.items():
        if s not in (1, -1):
            problems.append(f"edge {eid!r} has sign {s}; signs must be +1 or -1")
    placed = Counter()
    for v, cycle in d.rotation.items():
        if v not in vertex_set:
            problems.append(f"rotation given for unknown vertex {v!r}")
            continue
        expected = Counter(d.graph.half_edges_at(v))
        listed = Counter(cycle)
        for h, count in listed.items():
            placed[h] += count
            if h not in expected:
                problems.append(f"half-edge {h} listed at {v!r} but not incident to it")
        for h in expected:
            if h not in listed:
                problems.append(f"half-edge {h} incident to {v!r} is missing from its rotation")
    for h, count in placed.items():
        if count > 1:
            problems.append(f"half-edge {h} appears {count} times in rotations")
    if d.graph.vertices and not d.graph.is_connected():
        problems.append("graph is disconnected")
    return problems


def validate(d) -> List[str]:
    """Return every invariant violation of a ribbon or perfect matching diagram.

    The report is empty exactly when the diagram is valid.
    """
    if isinstance(d, PMDiagram):
        problems = _validate_ribbon(d.diagram)
        matched = set(d.matching)
        cover = Counter()
        for e in d.graph.edges:
            if e.id in matched:
                cover[e.u] += 1
                cover[e.v] += 1
            elif d.diagram.sign[e.id] != 1:
                problems.append(f"non-matching edge {e.id!r} is negative; only matched edges may carry sign -1")
        for v in d.graph.vertices:
            if cover[v] != 1:
                problems.append(f"not a perfect matching: vertex {v!r} is covered {cover[v]} times")
            if d.graph.valence(v) != 3:
                problems.append(
                    f"vertex {v!r} has valence {d.graph.valence(v)}; state circles need trivalent vertices"
                )
        return problems
    if isinstance(d, RibbonDiagram):
        return _validate_ribbon(d)
    raise TypeError(f"cannot validate {type(d).__name__}")


def require_valid(d) -> None:
    problems = validate(d)
    if problems:
        raise DiagramError(problems)


# ---------------------------------------------------------------------------
# Moves and constructions
# ---------------------------------------------------------------------------


def blowup(d: RibbonDiagram) -> PMDiagram:
    """Replace each vertex by a cycle of trivalent vertices joined by positive rim edges.

    The vertex created for position ``i`` of the rotation at ``v`` is named
    ``v~i`` and the rim edge leaving it is ``v~ri``.  Original edges become the
    matching and keep their signs.  A vertex without edges becomes a
    vertex-free circle.
    """
    require_valid(d)
    new_vertices: List[str] = []
    rim_edges: List[Edge] = []
    rotation: Dict[str, Tuple[HalfEdge, ...]] = {}
    attach: Dict[HalfEdge, str] = {}
    circles = d.graph.circles
    for v in d.graph.vertices:
        cycle = d.rotation[v]
        k = len(cycle)
        if k == 0:
            circles += 1
            continue
        for i, h in enumerate(cycle):
            w = f"{v}~{i}"
            new_vertices.append(w)
            attach[h] = w
            rim_edges.append(Edge(f"{v}~r{i}", w, f"{v}~{(i + 1) % k}"))
        for i, h in enumerate(cycle):
            rotation[f"{v}~{i}"] = (
                h,
                HalfEdge(f"{v}~r{i}", 0),
                HalfEdge(f"{v}~r{(i - 1) % k}", 1),
            )
    original = [Edge(e.id, attach[HalfEdge(e.id, 0)], attach[HalfEdge(e.id, 1)]) for e in d.graph.edges]
    signs = dict(d.sign)
    signs.update({r.id: 1 for r in rim_edges})
    graph = AbstractGraph(tuple(new_vertices), tuple(original) + tuple(rim_edges), circles)
    diagram = RibbonDiagram(graph, rotation, signs, f"{d.name}^blowup")
    return PMDiagram(diagram, tuple(e.id for e in d.graph.edges))


def vertex_flip(d: RibbonDiagram, v: str) -> RibbonDiagram:
    """Turn the disk of ``v`` over: reverse its rotation and negate incident edge signs."""
    if v not in d.rotation:
        raise KeyError(f"unknown vertex {v!r}")
    rotation = dict(d.rotation)
    rotation[v] = tuple(reversed(d.rotation[v]))
    signs = dict(d.sign)
    for e in d.graph.edges:
        flips = (e.u == v) + (e.v == v)
        if flips % 2:
            signs[e.id] = -signs[e.id]
    return RibbonDiagram(d.graph, rotation, signs, d.name)


def orientable(graph: AbstractGraph, sign: Mapping[str, int]) -> bool:
    """True when every cycle has positive sign product.

    Signs are propagated along a spanning forest; each remaining edge must
    agree with the product of the vertex orientations at its ends.
    """
    adjacency = defaultdict(list)
    for e in graph.edges:
        adjacency[e.u].append((e.v, sign[e.id]))
        adjacency[e.v].append((e.u, sign[e.id]))
    orient: Dict[str, int] = {}
    for root in graph.vertices:
        if root in orient:
            continue
        orient[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for w, s in adjacency[u]:
                if w not in orient:
                    orient[w] = orient[u] * s
                    stack.append(w)
    return all(orient[e.u] * orient[e.v] == sign[e.id] for e in graph.edges)


def count_faces(d: RibbonDiagram) -> int:
    """Number of boundary components of the ribbon surface, by the signed flag walk.

    A walker is a half-edge together with a direction flag.  Crossing an edge
    keeps the flag on a positive edge and flips it on a negative one; at the
    far vertex the walker moves to the rotation successor (flag +1) or
    predecessor (flag -1).  Every face is traced once in each direction, so
    the number of faces is half the number of orbits.
    """
    where = d.position()
    seen = set()
    orbits = 0
    for v in d.graph.vertices:
        for h in d.rotation[v]:
            for flag in (1, -1):
                if (h, flag) in seen:
                    continue
                orbits += 1
                state = (h, flag)
                while state not in seen:
                    seen.add(state)
                    half, direction = state
                    if d.sign[half.edge] < 0:
                        direction = -direction
                    w, i = where[half.other()]
                    cycle = d.rotation[w]
                    state = (cycle[(i + direction) % len(cycle)], direction)
    return orbits // 2


@dataclass(frozen=True)
class SurfaceStats:
    faces: int
    euler_characteristic: int
    orientable: bool
    genus: Optional[int]
    crosscaps: Optional[int]

    def as_dict(self) -> dict:
        return {
            "faces": self.faces,
            "euler_characteristic": self.euler_characteristic,
            "orientable": self.orientable,
            "genus": self.genus,
            "crosscaps": self.crosscaps,
        }


def surface_from_counts(vertices: int, edges: int, faces: int, is_orientable: bool) -> SurfaceStats:
    chi = vertices - edges + faces
    if is_orientable:
        return SurfaceStats(faces, chi, True, (2 - chi) // 2, None)
    return SurfaceStats(faces, chi, False, None, 2 - chi)


def surface_stats(d: RibbonDiagram) -> SurfaceStats:
    """Face count, Euler characteristic and orientability of the closed ribbon surface.

    Faces are the circles of the all-zero state of the blowup.
    """
    if not d.graph.is_connected():
        raise DiagramError(["surface statistics need a connected diagram"])
    from .states import trace_circles

    pm = blowup(d)
    faces = trace_circles(pm, 0).count - pm.graph.circles
    return surface_from_counts(
        len(d.graph.vertices), len(d.graph.edges), faces, orientable(d.graph, d.sign)
    )
