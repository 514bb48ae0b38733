"""Named example diagrams with their expected invariant values.

Each fixture is a diagram file under ``rch/fixtures`` read through the text
parser.  Expected values carry a provenance tag: ``reference`` for values
quoted from the published tables and examples, ``derived`` for values fixed
by an independent computation before being frozen here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict, List, Optional, Tuple

from .dsl import Diagram, parse
from .homology import bigraded_homology, filtered_homology, psi_survival, spectral_invariant
from .invariants import (
    n_color_number,
    n_color_polynomial,
    penrose_polynomial,
    total_face_color_at,
    total_face_color_interpolated,
)
from .oracle import edge_coloring_count
from .ribbon import PMDiagram, RibbonDiagram, blowup, surface_stats
from .scalar import BiPoly, LaurentPoly, VarPoly

REFERENCE = "reference"
DERIVED = "derived"


@dataclass(frozen=True)
class Expectation:
    invariant: str
    parameters: Tuple[Tuple[str, object], ...]
    value: object
    provenance: str

    @property
    def params(self) -> Dict[str, object]:
        return dict(self.parameters)


@dataclass
class NamedExample:
    name: str
    filename: str
    description: str
    diagram: Diagram
    expected: List[Expectation] = field(default_factory=list)

    @property
    def pm(self) -> PMDiagram:
        """The diagram itself if it has a matching, otherwise its blowup."""
        return self.diagram if isinstance(self.diagram, PMDiagram) else blowup(self.diagram)

    @property
    def ribbon(self) -> RibbonDiagram:
        if not isinstance(self.diagram, RibbonDiagram):
            raise TypeError(f"{self.name} is a perfect matching diagram, not a ribbon diagram")
        return self.diagram


@dataclass
class CheckResult:
    example: str
    expectation: Expectation
    actual: object
    ok: bool

    def as_dict(self) -> dict:
        return {
            "example": self.example,
            "invariant": self.expectation.invariant,
            "parameters": self.expectation.params,
            "provenance": self.expectation.provenance,
            "expected": _render(self.expectation.value),
            "actual": _render(self.actual),
            "ok": self.ok,
        }


def _render(value) -> object:
    if isinstance(value, (LaurentPoly, VarPoly, BiPoly)):
        return value.to_text()
    if isinstance(value, dict):
        return [[*k, v] if isinstance(k, tuple) else [k, v] for k, v in sorted(value.items())]
    if isinstance(value, Fraction):
        return str(value)
    return value


# ---------------------------------------------------------------------------
# Building expected values
# ---------------------------------------------------------------------------


def _n_poly(*factors) -> VarPoly:
    """Product of linear factors ``n - a`` (given as ``a``) or explicit VarPolys."""
    result = VarPoly.constant("n", 1)
    for f in factors:
        result = result * (f if isinstance(f, VarPoly) else VarPoly("n", {1: 1, 0: -f}))
    return result


def _n_coeffs(*coeffs) -> VarPoly:
    """Polynomial in ``n`` from coefficients of ``n^0, n^1, ...``."""
    return VarPoly("n", dict(enumerate(coeffs)))


def _t_poly(terms: Dict[int, int]) -> VarPoly:
    return VarPoly("t", terms)


def _nt_poly(terms: Dict[int, VarPoly]) -> BiPoly:
    coeffs = {}
    for i, poly in terms.items():
        for e, c in poly.terms():
            coeffs[(e, i)] = c
    return BiPoly(("n", "t"), coeffs)


def _q_poly(terms: Dict[int, int]) -> LaurentPoly:
    return LaurentPoly(terms)


def _expect(invariant: str, value, provenance: str = REFERENCE, **params) -> Expectation:
    return Expectation(invariant, tuple(sorted(params.items())), value, provenance)


_EDGE = _n_poly(0, 1)  # n (n - 1)
_THETA = _n_poly(0, 1, 2)

_FIXTURES: List[Tuple[str, str, str, Callable[[], List[Expectation]]]] = [
    ("B_1s", "b_1s.rg", "one positive loop (sphere)", lambda: [
        _expect("penrose", _EDGE),
        _expect("total_face_color_interpolated", _nt_poly({0: _EDGE})),
        _expect("genus", 0, DERIVED),
    ]),
    ("B_1p", "b_1p.rg", "one half-twisted loop (projective plane)", lambda: [
        _expect("penrose", -_EDGE),
        _expect("total_face_color_interpolated", _nt_poly({1: _EDGE})),
    ]),
    ("B_2t", "b_2t.rg", "two interleaved loops (torus)", lambda: [
        _expect("penrose", _EDGE),
        _expect("total_face_color_interpolated", _nt_poly({2: _EDGE})),
        _expect("genus", 1, DERIVED),
    ]),
    ("B_2k", "b_2k.rg", "a positive and a half-twisted loop (Klein bottle)", lambda: [
        _expect("penrose", -_EDGE),
        _expect("total_face_color", _t_poly({1: 12}), n=4),
        _expect("total_face_color_interpolated", _nt_poly({1: _EDGE})),
        _expect("crosscaps", 2, DERIVED),
    ]),
    ("B_2p", "b_2p.rg", "two loops in the projective plane", lambda: [
        _expect("penrose", _EDGE),
        _expect("total_face_color_interpolated", _nt_poly({0: _EDGE})),
        _expect("crosscaps", 1, DERIVED),
    ]),
    ("theta", "theta.rg", "theta graph in the sphere", lambda: [
        _expect("penrose", _THETA),
        _expect("total_face_color_interpolated", _nt_poly({0: _THETA})),
        _expect("total_face_color", _t_poly({0: 24}), DERIVED, n=4),
        _expect("spectral_invariant", 2, n=2),
        _expect("psi_dies_at", "infinity", DERIVED, n=4),
    ]),
    ("P3", "p3.rg", "triangular prism in the sphere", lambda: [
        _expect("penrose", _n_poly(0, 1, 2, 2, 2)),
        _expect("total_face_color_interpolated", _nt_poly({
            0: _n_poly(0, 1, 2, 3, 3),
            6: _n_poly(0, 1, 2) * VarPoly("n", {1: 2, 0: -5}),
        })),
        _expect("edge_colorings", 6, DERIVED),
    ]),
    ("P4", "p4.rg", "cube in the sphere", lambda: [
        _expect("penrose", _n_coeffs(0, -208, 420, -284, 83, -12, 1)),
        _expect("total_face_color", _t_poly({0: 96, 4: 144, 6: 288, 8: 72, 10: 144, 12: 24}), n=4),
        _expect("total_face_color_interpolated", _nt_poly({
            0: _n_poly(0, 1, 2, _n_coeffs(-32, 29, -9, 1)),
            4: _n_poly(0, 1, 2, 2) * 3,
            6: _n_poly(0, 1, 2, 3) * 12,
            8: _n_poly(0, 1, 2, 3) * 3,
            10: _n_poly(0, 1, 2, 3) * 6,
            12: _n_poly(0, 1, 2, 3),
        })),
    ]),
    ("K3", "k3.rg", "triangle in the sphere", lambda: [
        _expect("penrose", _EDGE * 4),
        _expect("total_face_color_interpolated", _nt_poly({0: _EDGE, 2: _EDGE * 3})),
    ]),
    ("K4s", "k4s.rg", "K4 in the sphere", lambda: [
        _expect("penrose", _n_poly(0, 1, 2, 2)),
        _expect("total_face_color_interpolated", _nt_poly({0: _n_poly(0, 1, 2, 3), 6: _THETA})),
        _expect("edge_colorings", 6, DERIVED),
    ]),
    ("K4t", "k4t.rg", "K4 in the torus", lambda: [
        _expect("penrose", _n_poly(0, 1, 2, 2)),
        _expect("total_face_color_interpolated", _nt_poly({2: _THETA, 4: _n_poly(0, 1, 2, 3)})),
        _expect("genus", 1, DERIVED),
    ]),
    ("K5", "k5.rg", "K5 in the genus two surface", lambda: [
        _expect("penrose", _n_coeffs(0, 176, -396, 316, -115, 20, -1)),
        _expect("total_face_color", _t_poly({0: 36, 3: 120, 4: 180, 5: 120, 6: 1560}), n=4),
        _expect("genus", 2),
    ]),
    ("K6", "k6.rg", "K6 in the genus four surface", lambda: [
        _expect("penrose", _n_coeffs(0, -368, 1472, -2488, 2328, -1327, 478, -109, 15, -1)),
        _expect("total_face_color", _t_poly({3: 72, 6: 384, 7: 3024, 9: 5256, 10: 864}), n=4),
        _expect("genus", 4),
    ]),
    ("K33-pm", "k33-pm.rg", "K33 with the three long diagonals of a hexagon as matching", lambda: [
        _expect("n_color_polynomial", _q_poly({-3: 1, -2: 3, -1: 3, 0: 1, 1: -1, 2: -2, 3: -2, 4: -2, 5: -1}), n=3),
        _expect("n_color_number", Fraction(0), n=3),
        _expect("bigraded_homology", {
            (0, -3): 1, (0, -2): 3, (0, -1): 3, (0, 0): 1, (1, 1): 1, (1, 2): 1,
            (3, 2): 1, (3, 3): 2, (3, 4): 2, (3, 5): 1,
        }, n=3),
        _expect("filtered_homology", {0: 6, 3: 6}, n=3),
        _expect("spectral_invariant", 2, DERIVED, n=3),
    ]),
    ("K33-torus", "k33.rg", "K33 in the torus", lambda: [
        _expect("penrose", VarPoly("n")),
        _expect("total_face_color", _t_poly({2: 24, 3: 48, 4: 24, 5: 24, 6: 48, 7: 24}), n=4),
        _expect("filtered_homology", {2: 24, 3: 48, 4: 24, 5: 24, 6: 48, 7: 24}, n=4),
        _expect("n_color_polynomial", _q_poly({
            -3: 1, -2: 2, -1: 1, 0: 4, 1: -2, 2: -15, 3: 11, 4: -14, 5: 14, 6: -11,
            7: 15, 8: 2, 9: -4, 10: -1, 11: -2, 12: -1,
        }), n=3),
        _expect("total_face_color_at_one", 12, n=3),
        _expect("edge_colorings", 12),
        _expect("genus", 1),
    ]),
    ("Petersen", "petersen.rg", "Petersen graph with every band half-twisted", lambda: [
        _expect("penrose", VarPoly("n")),
        _expect("total_face_color", VarPoly("t"), n=4),
        _expect("total_face_color", _t_poly({4: 1200, 6: 600, 7: 600, 8: 600, 9: 2400, 10: 600}), n=5),
        _expect("total_face_color_at_one", 0, n=3),
        _expect("edge_colorings", 0),
    ]),
    ("Loop", "loop.rg", "one vertex with one positive loop", lambda: [
        _expect("bigraded_degree_totals", {0: 12}, n=4),
        _expect("filtered_homology", {0: 12}, n=4),
        _expect("spectral_invariant", 1, n=4),
        _expect("psi_dies_at", "infinity", DERIVED, n=4),
    ]),
    ("theta-pm", "theta-pm.rg", "plane theta graph with one matched edge", lambda: [
        _expect("n_color_polynomial", _q_poly({1: 1, 0: 2, -1: 2, -2: 1}), n=3),
        _expect("n_color_number", Fraction(6), DERIVED, n=3),
        _expect("spectral_invariant", 1, DERIVED, n=2),
    ]),
    ("theta2-pm-a", "theta2-pm-a.rg", "two digons, one edge of each matched", lambda: [
        _expect("n_color_number", Fraction(2), n=2),
    ]),
    ("theta2-pm-b", "theta2-pm-b.rg", "two digons joined by two matched edges", lambda: [
        _expect("n_color_number", Fraction(4), n=2),
        _expect("bigraded_homology", {(0, 0): 1, (0, 1): 1, (1, 1): 1, (2, 3): 2, (2, 4): 1}, n=2),
        _expect("filtered_homology", {0: 2, 2: 2}, n=2),
        _expect("spectral_invariant", 2, DERIVED, n=2),
    ]),
    ("digon", "digon.rg", "two vertices and two edges in the sphere", lambda: [
        _expect("penrose", _EDGE * 2, DERIVED),
        _expect("n_color_number", Fraction(4), n=2),
    ]),
    ("dumbbell", "dumbbell.rg", "two loops joined by a bridge", lambda: [
        _expect("penrose", VarPoly("n"), DERIVED),
        _expect("filtered_homology", {}, DERIVED, n=4),
    ]),
    ("triangles-bridge", "triangles-bridge.rg", "two triangles joined by a bridge", lambda: [
        _expect("penrose", VarPoly("n"), DERIVED),
        _expect("filtered_homology", {}, DERIVED, n=3),
        _expect("psi_dies_at", 2, DERIVED, n=4),
    ]),
]

_INDEX = {name: (filename, description, expected) for name, filename, description, expected in _FIXTURES}


# ---------------------------------------------------------------------------
# Access
# ---------------------------------------------------------------------------


def fixture_path(filename: str):
    return resources.files("rch") / "fixtures" / filename


def names() -> List[str]:
    return [name for name, *_ in _FIXTURES]


list_names = names


@lru_cache(maxsize=None)
def get(name: str) -> NamedExample:
    if name not in _INDEX:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(names())}")
    filename, description, expected = _INDEX[name]
    diagram = parse(fixture_path(filename).read_text(encoding="utf-8"))
    return NamedExample(name, filename, description, diagram, expected())


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def _evaluate(example: NamedExample, invariant: str, params: Dict[str, object]):
    n = params.get("n")
    if invariant == "penrose":
        return penrose_polynomial(example.ribbon)
    if invariant == "total_face_color":
        return total_face_color_at(example.ribbon, n)
    if invariant == "total_face_color_at_one":
        return int(total_face_color_at(example.ribbon, n).evaluate(1))
    if invariant == "total_face_color_interpolated":
        return total_face_color_interpolated(example.ribbon)
    if invariant == "genus":
        return surface_stats(example.ribbon).genus
    if invariant == "crosscaps":
        return surface_stats(example.ribbon).crosscaps
    if invariant == "edge_colorings":
        return edge_coloring_count(example.ribbon.graph, 3)
    if invariant == "n_color_polynomial":
        return n_color_polynomial(example.pm, n)
    if invariant == "n_color_number":
        return n_color_number(example.pm, n)
    if invariant == "bigraded_homology":
        return bigraded_homology(example.pm, n).dims
    if invariant == "bigraded_degree_totals":
        return bigraded_homology(example.pm, n).by_degree()
    if invariant == "filtered_homology":
        return filtered_homology(example.pm, n).dims
    if invariant == "spectral_invariant":
        return spectral_invariant(example.pm, n)
    if invariant == "psi_dies_at":
        dies = psi_survival(example.pm, n).dies_at
        return "infinity" if dies is None else dies
    raise ValueError(f"no evaluator for invariant {invariant!r}")


def check(name: Optional[str] = None) -> List[CheckResult]:
    """Recompute every expected value of one example, or of all examples."""
    results = []
    for example_name in [name] if name else names():
        example = get(example_name)
        for expectation in example.expected:
            actual = _evaluate(example, expectation.invariant, expectation.params)
            results.append(CheckResult(example_name, expectation, actual, actual == expectation.value))
    return results
