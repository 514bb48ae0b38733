from fractions import Fraction

import pytest
from hypothesis import given, settings

from rch import catalog
from rch.complex import ColorAlgebra, assemble, edge_map_table, psi_class, verify_complex, verify_deformation
from rch.ribbon import orientable
from rch.states import CapExceeded, EdgeKind

from diagrams import matched_diagrams


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_merge_is_multiplication_at_t_zero(n):
    table = edge_map_table(EdgeKind.MERGE, ColorAlgebra(n))
    for (a, b), image in table.items():
        if a + b < n:
            assert image == [((a + b,), 1)]
        else:
            assert image == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_deformed_merge_wraps_around(n):
    table = edge_map_table(EdgeKind.MERGE, ColorAlgebra(n, 1))
    assert table[(n - 1, 1)] == [((0,), 1)]


def test_sqrt_of_non_square_color_count_is_irrational():
    assert not isinstance(ColorAlgebra(3).sqrt_n(), Fraction)
    assert ColorAlgebra(4).sqrt_n() == 2


def test_color_count_must_be_at_least_two():
    with pytest.raises(ValueError):
        ColorAlgebra(1)


@pytest.mark.parametrize("name", ["theta-pm", "K33-pm", "theta2-pm-b", "Loop", "K4t", "B_2k"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_differential_squares_to_zero_on_fixtures(name, n):
    reports = verify_deformation(catalog.get(name).pm, n)
    assert all(report.ok for report in reports.values()), reports


@settings(max_examples=15, deadline=None)
@given(matched_diagrams(max_edges=4))
def test_differential_squares_to_zero_on_random_diagrams(pm):
    for n in (2, 3):
        for t, report in verify_deformation(pm, n).items():
            assert report.ok, (t, report.failures)


@settings(max_examples=15, deadline=None)
@given(matched_diagrams(max_edges=4, orientable=True))
def test_psi_is_a_cycle_on_orientable_random_diagrams(pm):
    for n in (2, 3, 4, 5):
        assert psi_class(pm, n).cycle


def test_psi_grading_is_integral_and_as_predicted():
    pm = catalog.get("K33-pm").pm
    for n in (2, 3, 4, 5):
        psi = psi_class(pm, n)
        assert psi.j == psi.expected_j


def test_odd_color_count_on_non_orientable_diagram_warns():
    pm = catalog.get("B_1p").pm
    assert not orientable(pm.graph, pm.diagram.sign)
    psi = psi_class(pm, 3)
    assert psi.warning is not None


def test_generator_cap_is_enforced():
    with pytest.raises(CapExceeded):
        complex_ = assemble(catalog.get("K33-torus").pm, ColorAlgebra(4), max_generators=10)
        for key in complex_.keys(4):
            complex_.block(4, key)


def test_verify_complex_counts_blocks():
    report = verify_complex(assemble(catalog.get("theta2-pm-b").pm, ColorAlgebra(2, 1)))
    assert report.ok and report.checked_blocks > 0
