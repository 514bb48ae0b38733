"""Hypothesis strategies producing small random ribbon and matched diagrams."""

from __future__ import annotations

from hypothesis import strategies as st

from rch.ribbon import blowup, make_diagram, require_valid


@st.composite
def ribbon_diagrams(draw, max_edges: int = 6, max_vertices: int = 4, orientable: bool = False):
    """A connected ribbon diagram with random rotations and band signs."""
    vertex_count = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(vertex_count)]
    edge_count = draw(st.integers(max(1, vertex_count - 1), max_edges))
    endpoints = []
    for i in range(1, vertex_count):
        endpoints.append((vertices[draw(st.integers(0, i - 1))], vertices[i]))
    while len(endpoints) < edge_count:
        u = draw(st.sampled_from(vertices))
        v = draw(st.sampled_from(vertices))
        endpoints.append((u, v))
    edges = []
    incident = {v: [] for v in vertices}
    for k, (u, v) in enumerate(endpoints):
        sign = 1 if orientable else draw(st.sampled_from([1, -1]))
        edges.append((f"e{k}", u, v, sign))
        incident[u].append(f"e{k}.0")
        incident[v].append(f"e{k}.1")
    rotation = {}
    for v in vertices:
        rotation[v] = draw(st.permutations(incident[v]))
    diagram = make_diagram(edges, rotation, "random", vertices=vertices)
    require_valid(diagram)
    return diagram


def matched_diagrams(max_edges: int = 6, orientable: bool = False):
    """Blowups of random ribbon diagrams: at most ``max_edges`` matched edges."""
    return ribbon_diagrams(max_edges=max_edges, orientable=orientable).map(blowup)
