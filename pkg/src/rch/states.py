"""The hypercube of states of a perfect matching diagram.

Every vertex ``u`` of a perfect matching diagram is trivalent: one matched
half-edge ``h`` and two cycle half-edges, the rotation predecessor and
successor of ``h``.  Each vertex therefore owns two *ports*, the
predecessor side and the successor side of its matched band.  A state circle
alternates between

* strands, one per non-matching edge, joining the ports of its two ends, and
* band sides, two per matched edge ``e = (u, v)``.  With effective sign
  ``+1`` the sides join ``pred(u)`` to ``succ(v)`` and ``succ(u)`` to
  ``pred(v)``; with effective sign ``-1`` they join ``pred(u)`` to
  ``pred(v)`` and ``succ(u)`` to ``succ(v)``.

The effective sign of a matched edge is its diagram sign times ``(-1)**bit``.
Ports are numbered ``2*i`` (predecessor side) and ``2*i + 1`` (successor
side) for the ``i``-th vertex; circles are numbered by their smallest port.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .ribbon import (
    AbstractGraph,
    Edge,
    HalfEdge,
    PMDiagram,
    RibbonDiagram,
    SurfaceStats,
    orientable,
    require_valid,
    surface_from_counts,
)

DEFAULT_MAX_MATCHING = 20


class CapExceeded(RuntimeError):
    """Raised when a computation would exceed a configured resource cap."""


class EdgeKind(str, Enum):
    MERGE = "Merge"
    SPLIT = "Split"
    SELF_TOUCH = "SelfTouch"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def format_state(mask: int, length: int) -> str:
    """Bit string of a state, matching-edge position 0 first."""
    return "0b" + "".join("1" if mask >> k & 1 else "0" for k in range(length))


def state_from_bits(bits: Sequence[int]) -> int:
    mask = 0
    for k, bit in enumerate(bits):
        if bit not in (0, 1):
            raise ValueError("state bits must be 0 or 1")
        mask |= bit << k
    return mask


@dataclass(frozen=True)
class CircleDecomposition:
    """Circles of one state.

    ``port_circle[p]`` is the circle through port ``p``; ``matching_sides[k]``
    holds the circles on the predecessor and successor sides of the ``k``-th
    matched band (measured at its first endpoint); ``strand_circle`` maps each
    non-matching edge to the circle running along it.  Vertex-free circles
    come last.
    """

    state: int
    count: int
    port_circle: Tuple[int, ...]
    matching_sides: Tuple[Tuple[int, int], ...]
    strand_circle: Dict[str, int]
    circle_ports: Tuple[Tuple[int, ...], ...]

    def debug_line(self, length: int) -> str:
        circles = ",".join("{" + " ".join(str(p) for p in ports) + "}" for ports in self.circle_ports)
        return f"alpha={format_state(self.state, length)} k={self.count} circles=[{circles}]"


@dataclass(frozen=True)
class HyperEdge:
    """The hypercube edge that changes bit ``position`` of ``source`` from 0 to 1.

    ``inputs`` are the source circles touching the band and ``outputs`` the
    target circles touching it; ``carry`` maps every other source circle to
    its target circle.
    """

    source: int
    position: int
    kind: EdgeKind
    sign: int
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]
    carry: Tuple[Tuple[int, int], ...]
    target_count: int

    @property
    def target(self) -> int:
        return self.source | (1 << self.position)


class StateTracer:
    """Precomputed port structure of a perfect matching diagram."""

    def __init__(self, pm: PMDiagram, max_matching: int = DEFAULT_MAX_MATCHING):
        require_valid(pm)
        self.pm = pm
        self.length = len(pm.matching)
        if self.length > max_matching:
            raise CapExceeded(
                f"{self.length} matched edges exceed the state enumeration cap of {max_matching}"
            )
        diagram = pm.diagram
        self.vertices = diagram.graph.vertices
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.extra_circles = diagram.graph.circles
        matched = set(pm.matching)
        self.matched_half: Dict[str, HalfEdge] = {}
        port_of: Dict[HalfEdge, int] = {}
        for v in self.vertices:
            cycle = diagram.rotation[v]
            where_index = next(idx for idx, h in enumerate(cycle) if h.edge in matched)
            self.matched_half[v] = cycle[where_index]
            i = self.vertex_index[v]
            port_of[cycle[(where_index - 1) % 3]] = 2 * i
            port_of[cycle[(where_index + 1) % 3]] = 2 * i + 1
        self.port_of_half = port_of
        self.half_at_port = {port: half for half, port in port_of.items()}
        nports = 2 * len(self.vertices)
        self.nports = nports
        strand = [0] * nports
        self.strand_edges: List[Tuple[str, int]] = []
        for e in diagram.graph.edges:
            if e.id in matched:
                continue
            a = port_of[HalfEdge(e.id, 0)]
            b = port_of[HalfEdge(e.id, 1)]
            strand[a], strand[b] = b, a
            self.strand_edges.append((e.id, a))
        self.strand = strand
        self.bands: List[Tuple[int, int]] = []
        self.band_sign: List[int] = []
        for eid in pm.matching:
            e = diagram.graph.edge(eid)
            self.bands.append((self.vertex_index[e.u], self.vertex_index[e.v]))
            self.band_sign.append(diagram.sign[eid])

    def effective_sign(self, mask: int, k: int) -> int:
        return -self.band_sign[k] if mask >> k & 1 else self.band_sign[k]

    def band_links(self, mask: int) -> List[int]:
        band = [0] * self.nports
        for k, (u, v) in enumerate(self.bands):
            pu, su, pv, sv = 2 * u, 2 * u + 1, 2 * v, 2 * v + 1
            if self.effective_sign(mask, k) > 0:
                band[pu], band[sv] = sv, pu
                band[su], band[pv] = pv, su
            else:
                band[pu], band[pv] = pv, pu
                band[su], band[sv] = sv, su
        return band

    def trace(self, mask: int) -> CircleDecomposition:
        band = self.band_links(mask)
        strand = self.strand
        port_circle = [-1] * self.nports
        circle_ports: List[Tuple[int, ...]] = []
        for start in range(self.nports):
            if port_circle[start] >= 0:
                continue
            cid = len(circle_ports)
            visited = []
            p = start
            while True:
                port_circle[p] = cid
                visited.append(p)
                q = strand[p]
                port_circle[q] = cid
                visited.append(q)
                p = band[q]
                if p == start:
                    break
            circle_ports.append(tuple(sorted(visited)))
        traced = len(circle_ports)
        sides = tuple((port_circle[2 * u], port_circle[2 * u + 1]) for u, _ in self.bands)
        strands = {eid: port_circle[p] for eid, p in self.strand_edges}
        return CircleDecomposition(
            state=mask,
            count=traced + self.extra_circles,
            port_circle=tuple(port_circle),
            matching_sides=sides,
            strand_circle=strands,
            circle_ports=tuple(circle_ports) + ((),) * self.extra_circles,
        )

    def classify(
        self,
        source: CircleDecomposition,
        position: int,
        target: Optional[CircleDecomposition] = None,
    ) -> HyperEdge:
        mask = source.state
        if mask >> position & 1:
            raise ValueError(f"bit {position} of {format_state(mask, self.length)} is already 1")
        if target is None:
            target = self.trace(mask | (1 << position))
        u, _ = self.bands[position]
        pu, su = 2 * u, 2 * u + 1
        c_pred, c_succ = source.port_circle[pu], source.port_circle[su]
        t_pred, t_succ = target.port_circle[pu], target.port_circle[su]
        if c_pred != c_succ:
            kind, inputs, outputs = EdgeKind.MERGE, (c_pred, c_succ), (t_pred,)
        elif t_pred != t_succ:
            kind, inputs, outputs = EdgeKind.SPLIT, (c_pred,), (t_pred, t_succ)
        else:
            kind, inputs, outputs = EdgeKind.SELF_TOUCH, (c_pred,), (t_pred,)
        traced = len(source.circle_ports) - self.extra_circles
        carry = []
        for cid, ports in enumerate(source.circle_ports):
            if cid in inputs:
                continue
            if cid >= traced:
                carry.append((cid, cid - source.count + target.count))
            else:
                carry.append((cid, target.port_circle[ports[0]]))
        sign = -1 if popcount(mask & ((1 << position) - 1)) % 2 else 1
        return HyperEdge(mask, position, kind, sign, inputs, outputs, tuple(carry), target.count)


def trace_circles(pm: PMDiagram, alpha) -> CircleDecomposition:
    """Circles of the state ``alpha`` (an int mask or a bit sequence)."""
    mask = alpha if isinstance(alpha, int) else state_from_bits(alpha)
    return StateTracer(pm).trace(mask)


def classify_edge(pm: PMDiagram, alpha, position: int) -> HyperEdge:
    """Kind, sign and circle correspondence of the hypercube edge at ``position``."""
    mask = alpha if isinstance(alpha, int) else state_from_bits(alpha)
    tracer = StateTracer(pm)
    return tracer.classify(tracer.trace(mask), position)


def gray_code(length: int) -> Iterator[int]:
    for i in range(1 << length):
        yield i ^ (i >> 1)


class Hypercube:
    """All states of a perfect matching diagram with their circle decompositions."""

    def __init__(self, pm: PMDiagram, max_matching: int = DEFAULT_MAX_MATCHING, order: str = "lex"):
        self.tracer = StateTracer(pm, max_matching=max_matching)
        self.pm = pm
        self.length = self.tracer.length
        if order not in ("lex", "gray"):
            raise ValueError("order must be 'lex' or 'gray'")
        self.order = order
        masks = range(1 << self.length) if order == "lex" else gray_code(self.length)
        self._states: Dict[int, CircleDecomposition] = {}
        self._sequence = []
        for mask in masks:
            self._states[mask] = self.tracer.trace(mask)
            self._sequence.append(mask)
        self._edges: Optional[List[HyperEdge]] = None

    def __iter__(self) -> Iterator[Tuple[int, CircleDecomposition]]:
        for mask in self._sequence:
            yield mask, self._states[mask]

    def __len__(self):
        return len(self._sequence)

    def state(self, mask: int) -> CircleDecomposition:
        return self._states[mask]

    def circle_count(self, mask: int) -> int:
        return self._states[mask].count

    def edges_from(self, mask: int) -> List[HyperEdge]:
        source = self._states[mask]
        return [
            self.tracer.classify(source, k, self._states[mask | (1 << k)])
            for k in range(self.length)
            if not mask >> k & 1
        ]

    def edges(self) -> List[HyperEdge]:
        if self._edges is None:
            self._edges = [edge for mask in sorted(self._states) for edge in self.edges_from(mask)]
        return self._edges

    def debug_dump(self) -> str:
        return "\n".join(state.debug_line(self.length) for _, state in self)


def enumerate_hypercube(pm: PMDiagram, max_matching: int = DEFAULT_MAX_MATCHING, order: str = "lex"):
    """Return ``(states, hyperedges)``; states are ``(mask, decomposition)`` pairs in the chosen order."""
    cube = Hypercube(pm, max_matching=max_matching, order=order)
    return list(cube), cube.edges()


# ---------------------------------------------------------------------------
# State graphs and their surfaces
# ---------------------------------------------------------------------------


def cycles_of_complement(pm: PMDiagram) -> List[List[Tuple[str, int]]]:
    """Cycles of the graph minus the matching.

    Each cycle is a list of ``(vertex, side)`` pairs in traversal order, where
    ``side`` is ``+1`` when the walk enters the vertex along the rotation
    predecessor of its matched half-edge.
    """
    tracer = StateTracer(pm)
    diagram = pm.diagram
    seen = set()
    cycles = []
    for start in tracer.vertices:
        if start in seen:
            continue
        cycle = []
        v, side = start, 1
        while True:
            seen.add(v)
            cycle.append((v, side))
            leave_port = 2 * tracer.vertex_index[v] + (1 if side > 0 else 0)
            arriving = tracer.half_at_port[leave_port].other()
            v = diagram.graph.edge(arriving.edge).endpoint(arriving.end)
            side = 1 if tracer.port_of_half[arriving] % 2 == 0 else -1
            if v == start:
                break
        cycles.append(cycle)
    return cycles


def state_graph(pm: PMDiagram, alpha) -> RibbonDiagram:
    """The signed ribbon diagram whose faces are the circles of ``alpha``.

    Each cycle of the graph minus the matching becomes one vertex whose
    rotation lists the matched half-edges in traversal order.  A matched edge
    gets its effective sign times the side of each of its two attachments.
    """
    mask = alpha if isinstance(alpha, int) else state_from_bits(alpha)
    tracer = StateTracer(pm)
    diagram = pm.diagram
    rotation: Dict[str, Tuple[HalfEdge, ...]] = {}
    owner: Dict[str, str] = {}
    side_of: Dict[str, int] = {}
    for cycle in cycles_of_complement(pm):
        name = cycle[0][0]
        rotation[name] = tuple(tracer.matched_half[v] for v, _ in cycle)
        for v, side in cycle:
            owner[v] = name
            side_of[v] = side
    edges, signs = [], {}
    for k, eid in enumerate(pm.matching):
        e = diagram.graph.edge(eid)
        edges.append(Edge(eid, owner[e.u], owner[e.v]))
        signs[eid] = tracer.effective_sign(mask, k) * side_of[e.u] * side_of[e.v]
    graph = AbstractGraph(tuple(rotation), tuple(edges), diagram.graph.circles)
    return RibbonDiagram(graph, rotation, signs, f"{pm.name}[{format_state(mask, tracer.length)}]")


def state_surface(pm: PMDiagram, alpha) -> SurfaceStats:
    """Face count, Euler characteristic and orientability of the state surface."""
    mask = alpha if isinstance(alpha, int) else state_from_bits(alpha)
    graph = state_graph(pm, mask)
    faces = trace_circles(pm, mask).count - pm.graph.circles
    return surface_from_counts(
        len(graph.graph.vertices), len(graph.graph.edges), faces, orientable(graph.graph, graph.sign)
    )
