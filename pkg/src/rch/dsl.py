"""Line-oriented text format for ribbon and perfect matching diagrams.

::

    graph <name>
    edge <eid> <v> <v> [sign=+|-] [matched]
    vertex <vid>: <eid>.<0|1>, ...
    circles <count>

``#`` starts a comment.  Every half-edge must be listed exactly once among
the vertex lines, in the cyclic order around its vertex.  A file with at least
one ``matched`` edge describes a perfect matching diagram.
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple, Union

from .ribbon import (
    AbstractGraph,
    DiagramError,
    Edge,
    HalfEdge,
    PMDiagram,
    RibbonDiagram,
    require_valid,
)

Diagram = Union[RibbonDiagram, PMDiagram]

_IDENT = r"[A-Za-z0-9_~+\-']+"
_HALF = re.compile(rf"^({_IDENT})\.([01])$")


class ParseError(ValueError):
    """Syntax error with the offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse(text: str) -> Diagram:
    """Parse a diagram file; raise :class:`ParseError` or :class:`DiagramError`."""
    name = "diagram"
    edges: List[Edge] = []
    signs: Dict[str, int] = {}
    matched: List[str] = []
    rotation: Dict[str, Tuple[HalfEdge, ...]] = {}
    vertex_order: List[str] = []
    circles = 0
    placed: Dict[HalfEdge, int] = {}
    seen_graph = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "graph":
            if seen_graph:
                raise ParseError(lineno, "more than one graph line")
            if not rest or len(rest.split()) != 1:
                raise ParseError(lineno, "expected 'graph <name>'")
            name, seen_graph = rest, True
        elif keyword == "edge":
            fields = rest.split()
            if len(fields) < 3:
                raise ParseError(lineno, "expected 'edge <eid> <v> <v> [sign=+|-] [matched]'")
            eid, u, v, *options = fields
            if eid in signs:
                raise ParseError(lineno, f"edge {eid!r} declared twice")
            sign = 1
            is_matched = False
            for option in options:
                if option in ("sign=+", "sign=-"):
                    sign = 1 if option.endswith("+") else -1
                elif option == "matched":
                    is_matched = True
                else:
                    raise ParseError(lineno, f"unknown edge option {option!r}")
            edges.append(Edge(eid, u, v))
            signs[eid] = sign
            if is_matched:
                matched.append(eid)
        elif keyword == "vertex":
            head, colon, body = rest.partition(":")
            vid = head.strip()
            if not colon or not vid or " " in vid:
                raise ParseError(lineno, "expected 'vertex <vid>: <eid>.<end>, ...'")
            if vid in rotation:
                raise ParseError(lineno, f"vertex {vid!r} declared twice")
            halves = []
            for token in (t.strip() for t in body.split(",")):
                if not token:
                    continue
                match = _HALF.match(token)
                if not match:
                    raise ParseError(lineno, f"bad half-edge {token!r}; expected <eid>.<0|1>")
                half = HalfEdge(match.group(1), int(match.group(2)))
                if half in placed:
                    raise ParseError(
                        lineno, f"half-edge {half} already placed on line {placed[half]}"
                    )
                placed[half] = lineno
                halves.append(half)
            rotation[vid] = tuple(halves)
            vertex_order.append(vid)
        elif keyword == "circles":
            try:
                circles = int(rest)
            except ValueError:
                raise ParseError(lineno, "expected 'circles <count>'") from None
            if circles < 0:
                raise ParseError(lineno, "circle count must be nonnegative")
        else:
            raise ParseError(lineno, f"unknown keyword {keyword!r}")
    for e in edges:
        for w in (e.u, e.v):
            if w not in rotation:
                raise DiagramError([f"edge {e.id!r} ends at {w!r}, which has no vertex line"])
    graph = AbstractGraph(tuple(vertex_order), tuple(edges), circles)
    diagram = RibbonDiagram(graph, rotation, signs, name)
    require_valid(diagram)
    if matched:
        pm = PMDiagram(diagram, tuple(matched))
        require_valid(pm)
        return pm
    return diagram


def load(path) -> Diagram:
    with open(path, encoding="utf-8") as handle:
        return parse(handle.read())


def dump(d: Diagram) -> str:
    """Canonical text of a diagram; ``parse(dump(d)) == d``."""
    if isinstance(d, PMDiagram):
        diagram, matched = d.diagram, set(d.matching)
    else:
        diagram, matched = d, set()
    lines = [f"graph {diagram.name}"]
    for e in diagram.graph.edges:
        options = []
        if diagram.sign[e.id] < 0:
            options.append("sign=-")
        if e.id in matched:
            options.append("matched")
        lines.append(" ".join(["edge", e.id, e.u, e.v, *options]))
    for v in diagram.graph.vertices:
        lines.append(f"vertex {v}: " + ", ".join(str(h) for h in diagram.rotation[v]))
    if diagram.graph.circles:
        lines.append(f"circles {diagram.graph.circles}")
    return "\n".join(lines) + "\n"
