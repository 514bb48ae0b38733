import pytest
from hypothesis import given, settings

from rch import catalog
from rch.dsl import ParseError, dump, parse
from rch.ribbon import (
    DiagramError,
    PMDiagram,
    blowup,
    count_faces,
    make_diagram,
    orientable,
    surface_stats,
    validate,
    vertex_flip,
)

from diagrams import matched_diagrams, ribbon_diagrams

LOOP = """
graph loop
edge e1 a a
vertex a: e1.0, e1.1
"""


def test_loop_file_is_a_valid_one_vertex_diagram():
    d = parse(LOOP)
    assert not validate(d)
    assert len(d.graph.vertices) == 1 and d.graph.edges[0].is_loop
    assert surface_stats(d).genus == 0


def test_matched_edge_makes_a_perfect_matching_diagram():
    d = catalog.get("theta-pm").diagram
    assert isinstance(d, PMDiagram)
    assert d.matching == ("e1",)


def test_half_edge_listed_twice_is_a_parse_error():
    with pytest.raises(ParseError) as info:
        parse("graph bad\nedge e1 a b\nvertex a: e1.0, e1.0\nvertex b: e1.1\n")
    assert info.value.line == 3


def test_unknown_keyword_reports_its_line():
    with pytest.raises(ParseError) as info:
        parse("graph bad\nbogus line\n")
    assert info.value.line == 2


def test_missing_half_edge_is_a_diagram_error():
    with pytest.raises(DiagramError):
        parse("graph bad\nedge e1 a b\nvertex a: e1.0\nvertex b:\n")


def test_matching_must_cover_every_vertex_once():
    text = "graph bad\nedge e1 a b matched\nedge e2 a b matched\nedge e3 a b\n" \
        "vertex a: e1.0, e2.0, e3.0\nvertex b: e1.1, e3.1, e2.1\n"
    with pytest.raises(DiagramError):
        parse(text)


@settings(max_examples=40, deadline=None)
@given(ribbon_diagrams())
def test_dump_parse_round_trip_ribbon(d):
    assert parse(dump(d)) == d


@settings(max_examples=40, deadline=None)
@given(matched_diagrams())
def test_dump_parse_round_trip_matched(pm):
    assert parse(dump(pm)) == pm
    assert pm.fingerprint() == parse(dump(pm)).fingerprint()


@pytest.mark.parametrize("name", catalog.names())
def test_every_fixture_validates(name):
    assert not validate(catalog.get(name).diagram)


@settings(max_examples=40, deadline=None)
@given(ribbon_diagrams())
def test_blowup_is_trivalent_with_original_edges_matched(d):
    pm = blowup(d)
    assert not validate(pm)
    assert pm.graph.is_trivalent()
    assert set(pm.matching) == {e.id for e in d.graph.edges}


@settings(max_examples=40, deadline=None)
@given(ribbon_diagrams())
def test_face_count_agrees_with_blowup_circles(d):
    assert count_faces(d) == surface_stats(d).faces


@settings(max_examples=40, deadline=None)
@given(ribbon_diagrams())
def test_vertex_flip_preserves_the_surface(d):
    flipped = vertex_flip(d, d.graph.vertices[0])
    assert surface_stats(flipped) == surface_stats(d)
    assert vertex_flip(flipped, d.graph.vertices[0]) == d


@settings(max_examples=40, deadline=None)
@given(ribbon_diagrams(orientable=True))
def test_all_positive_diagrams_are_orientable_with_even_euler_characteristic(d):
    stats = surface_stats(d)
    assert stats.orientable and stats.euler_characteristic % 2 == 0


@pytest.mark.parametrize(
    "name, genus",
    [("B_1s", 0), ("B_2t", 1), ("theta", 0), ("K4s", 0), ("K4t", 1), ("K5", 2), ("K6", 4), ("K33-torus", 1)],
)
def test_fixture_genus(name, genus):
    assert surface_stats(catalog.get(name).ribbon).genus == genus


@pytest.mark.parametrize("name, crosscaps", [("B_1p", 1), ("B_2k", 2), ("B_2p", 1), ("Petersen", 6)])
def test_fixture_crosscaps(name, crosscaps):
    stats = surface_stats(catalog.get(name).ribbon)
    assert not stats.orientable and stats.crosscaps == crosscaps


def test_orientability_is_a_cycle_sign_condition():
    d = catalog.get("B_2k").ribbon
    assert not orientable(d.graph, d.sign)
    assert orientable(d.graph, {e.id: 1 for e in d.graph.edges})


def test_isolated_vertex_blows_up_to_a_circle():
    d = make_diagram([], {"a": []}, "point")
    assert blowup(d).graph.circles == 1


def test_bridges_are_found():
    d = catalog.get("dumbbell").ribbon
    assert len(d.graph.bridges()) == 1
    assert not catalog.get("theta").ribbon.graph.bridges()


def test_reorder_keeps_the_diagram():
    pm = catalog.get("K33-pm").pm
    reordered = pm.reorder(tuple(reversed(pm.matching)))
    assert reordered.matching == tuple(reversed(pm.matching))
    with pytest.raises(ValueError):
        pm.reorder(pm.matching[:1])
