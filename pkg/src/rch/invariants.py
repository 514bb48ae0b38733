"""Polynomial invariants built from the hypercube of states.

Every state sum only needs the joint distribution of ``(|alpha|, k_alpha)``
over the states, which :func:`state_distribution` tabulates once.  The total
face color polynomial instead needs per-state coloring counts and is computed
either from the circle adjacency graphs (fast) or from filtered homology of
the blowup (slow, used for verification).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from .homology import BigradedTable, bigraded_homology, filtered_homology
from .oracle import circle_multigraph, proper_coloring_count
from .ribbon import AbstractGraph, DiagramError, PMDiagram, RibbonDiagram, blowup, make_diagram
from .scalar import BiPoly, LaurentPoly, VarPoly, poly_interpolate
from .states import DEFAULT_MAX_MATCHING, Hypercube, popcount

Value = Union[LaurentPoly, VarPoly, BiPoly, Fraction, int]


@dataclass
class InvariantReport:
    """One computed invariant with the parameters it was computed for."""

    fingerprint: str
    invariant: str
    parameters: Dict[str, object]
    value: Value

    def as_dict(self) -> dict:
        value = self.value
        if isinstance(value, (LaurentPoly, VarPoly, BiPoly)):
            payload = {"text": value.to_text(), **value.to_json()}
        else:
            payload = {"text": str(value)}
        return {
            "fingerprint": self.fingerprint,
            "invariant": self.invariant,
            "parameters": dict(self.parameters),
            "value": payload,
        }


def _check_colors(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError("the color count n must be an integer >= 2")


def state_distribution(pm: PMDiagram, max_matching: int = DEFAULT_MAX_MATCHING) -> Counter:
    """Number of states with each ``(|alpha|, k_alpha)``."""
    cube = Hypercube(pm, max_matching=max_matching)
    return Counter((popcount(mask), state.count) for mask, state in cube)


def quantum_dimension(n: int) -> LaurentPoly:
    """``q^m + q^(m-1) + ... + q^(m-n+1)`` with ``m = n // 2``."""
    m = n // 2
    return LaurentPoly.from_terms((m - k, 1) for k in range(n))


# ---------------------------------------------------------------------------
# State sums
# ---------------------------------------------------------------------------


def n_color_polynomial(pm: PMDiagram, n: int, max_matching: int = DEFAULT_MAX_MATCHING) -> LaurentPoly:
    """``sum_alpha (-q^m)^|alpha| (qdim V)^k_alpha``."""
    _check_colors(n)
    qdim = quantum_dimension(n)
    total = LaurentPoly()
    for (size, circles), count in state_distribution(pm, max_matching).items():
        sign = -count if size % 2 else count
        total = total + LaurentPoly.monomial((n // 2) * size, sign) * qdim**circles
    return total


def n_color_number(pm: PMDiagram, n: int, max_matching: int = DEFAULT_MAX_MATCHING) -> Fraction:
    """The n-color polynomial at ``q = 1``: ``sum_alpha (-1)^|alpha| n^k_alpha``."""
    _check_colors(n)
    total = 0
    for (size, circles), count in state_distribution(pm, max_matching).items():
        total += (-1) ** size * count * n**circles
    return Fraction(total)


def _require_connected(d: RibbonDiagram) -> None:
    if not d.graph.is_connected():
        raise DiagramError(["this invariant is defined for connected diagrams"])


def penrose_polynomial(d: RibbonDiagram, max_matching: int = DEFAULT_MAX_MATCHING) -> VarPoly:
    """``sum_alpha (-1)^|alpha| n^k_alpha`` over the states of the blowup, as a polynomial in ``n``."""
    _require_connected(d)
    coeffs: Dict[int, int] = {}
    for (size, circles), count in state_distribution(blowup(d), max_matching).items():
        coeffs[circles] = coeffs.get(circles, 0) + (-1) ** size * count
    return VarPoly("n", coeffs)


def two_variable_penrose(pm: PMDiagram, max_matching: int = DEFAULT_MAX_MATCHING) -> BiPoly:
    """``sum_alpha (-q)^|alpha| n^k_alpha`` as a polynomial in ``(q, n)``."""
    if pm.graph.vertices and not pm.graph.is_connected():
        raise DiagramError(["this invariant is defined for connected diagrams"])
    coeffs: Dict[Tuple[int, int], int] = {}
    for (size, circles), count in state_distribution(pm, max_matching).items():
        coeffs[(size, circles)] = coeffs.get((size, circles), 0) + (-1) ** size * count
    return BiPoly(("q", "n"), coeffs)


def abstract_penrose(graph: AbstractGraph, max_matching: int = DEFAULT_MAX_MATCHING) -> Tuple[VarPoly, RibbonDiagram]:
    """Penrose polynomial of a connected trivalent graph via a nonnegative representative.

    Any two ribbon structures of a trivalent graph have Penrose polynomials
    equal up to sign; one half-twist on a band changes the parity.  The
    representative starts from the edge-order rotation with positive bands
    and twists the first band when the leading coefficient is negative.
    """
    if not graph.is_trivalent():
        raise DiagramError(["the abstract Penrose polynomial needs a trivalent graph"])
    edges = [(e.id, e.u, e.v) for e in graph.edges]
    rotation = {v: [str(h) for h in graph.half_edges_at(v)] for v in graph.vertices}
    diagram = make_diagram(edges, rotation, "representative", vertices=graph.vertices)
    value = penrose_polynomial(diagram, max_matching)
    if not value.is_zero() and value.coefficient(value.degree()) < 0:
        first = graph.edges[0].id
        signs = dict(diagram.sign)
        signs[first] = -signs[first]
        diagram = diagram.with_signs(signs)
        value = penrose_polynomial(diagram, max_matching)
    return value, diagram


# ---------------------------------------------------------------------------
# Total face color polynomial
# ---------------------------------------------------------------------------


def _coloring_counts(pm: PMDiagram, colors: Iterable[int], max_matching: int) -> Dict[int, Counter]:
    """Per color count ``n``: the sum of state coloring counts for each ``|alpha|``."""
    cube = Hypercube(pm, max_matching=max_matching)
    colors = list(colors)
    out: Dict[int, Counter] = {n: Counter() for n in colors}
    for mask, _ in cube:
        graph = circle_multigraph(pm, mask, cube=cube)
        if graph.has_loop():
            continue
        size = popcount(mask)
        for n in colors:
            out[n][size] += proper_coloring_count(graph, n)
    return out


def total_face_color_at(
    d: RibbonDiagram,
    n: int,
    via_linear_algebra: bool = False,
    max_matching: int = DEFAULT_MAX_MATCHING,
    **caps,
) -> VarPoly:
    """``sum_i t^i (number of n-face colorings over the degree-i state graphs)``.

    The default counts proper colorings of each state's circle adjacency
    graph; ``via_linear_algebra`` instead reads the filtered homology of the
    blowup.
    """
    _check_colors(n)
    pm = blowup(d)
    if via_linear_algebra:
        table = filtered_homology(pm, n, max_matching=max_matching, **caps)
        return VarPoly("t", dict(table.dims))
    counts = _coloring_counts(pm, [n], max_matching)[n]
    return VarPoly("t", dict(counts))


class InterpolationMismatch(AssertionError):
    """The interpolated polynomial disagrees with a held-out evaluation."""


def total_face_color_interpolated(d: RibbonDiagram, max_matching: int = DEFAULT_MAX_MATCHING) -> BiPoly:
    """The total face color polynomial as a polynomial in ``(n, t)``.

    Each ``t``-coefficient is a sum of chromatic evaluations in ``n`` of
    degree at most the largest circle count; it is evaluated on enough color
    counts, divided by ``n (n - 1)``, interpolated, and confirmed on one
    extra color count.
    """
    _require_connected(d)
    pm = blowup(d)
    cube = Hypercube(pm, max_matching=max_matching)
    bound = max(state.count for _, state in cube) - 1
    sample = list(range(2, bound + 3))
    held_out = bound + 3
    counts = _coloring_counts(pm, sample + [held_out], max_matching)
    degrees = sorted({i for n in counts for i, v in counts[n].items() if v})
    coeffs: Dict[Tuple[int, int], Fraction] = {}
    for i in degrees:
        points = [(n, Fraction(counts[n][i], n * (n - 1))) for n in sample]
        quotient = poly_interpolate(points, "n")
        factor = VarPoly("n", {2: 1, 1: -1})
        polynomial = quotient * factor
        if polynomial.evaluate(held_out) != counts[held_out][i]:
            raise InterpolationMismatch(
                f"t^{i}: interpolation predicts {polynomial.evaluate(held_out)} at n={held_out}, "
                f"direct count is {counts[held_out][i]}"
            )
        for e, c in polynomial.terms():
            coeffs[(e, i)] = c
    return BiPoly(("n", "t"), coeffs)


# ---------------------------------------------------------------------------
# Poincare polynomial of bigraded homology and the Euler characteristic
# ---------------------------------------------------------------------------


def tsharp(pm: PMDiagram, n: int, table: Optional[BigradedTable] = None, **caps) -> BiPoly:
    """``sum t^i q^j dim CH^{i,j}`` as a polynomial in ``(t, q)``."""
    _check_colors(n)
    table = table if table is not None else bigraded_homology(pm, n, **caps)
    return BiPoly(("t", "q"), dict(table.dims))


@dataclass
class EulerReport:
    ok: bool
    euler_characteristic: LaurentPoly
    polynomial: LaurentPoly

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "euler_characteristic": self.euler_characteristic.to_text(),
            "n_color_polynomial": self.polynomial.to_text(),
        }


def graded_euler_characteristic(table: BigradedTable) -> LaurentPoly:
    return LaurentPoly.from_terms((j, (-1) ** i * d) for (i, j), d in table.dims.items())


def euler_check(pm: PMDiagram, n: int, table: Optional[BigradedTable] = None, **caps) -> EulerReport:
    """Compare the graded Euler characteristic of bigraded homology with the n-color polynomial."""
    table = table if table is not None else bigraded_homology(pm, n, **caps)
    chi = graded_euler_characteristic(table)
    polynomial = n_color_polynomial(pm, n)
    return EulerReport(chi == polynomial, chi, polynomial)
