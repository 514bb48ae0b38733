"""Homology dimensions, spectral sequence pages and the fate of the psi class.

The deformed differential ``D = d + d~`` on the ``t = 1`` complex either keeps
the quantum grading ``j`` (the bigraded part ``d``) or raises it by exactly
``n`` (the part ``d~``).  Within one residue class of ``j`` modulo ``n`` we
write ``s = (j - residue) / n`` and obtain a decreasing filtration by ``s``.

All pages come from a single column reduction of ``D`` with generators ordered
by decreasing ``s``.  Every pivot pairs a generator ``x`` of degree ``i`` with a
generator ``y`` of degree ``i + 1``; the pair has gap ``s(y) - s(x)`` and
contributes to the pages ``E_0 .. E_gap`` before being cancelled by
``d_gap``.  Unpaired generators survive to ``E_infinity``.  Thus ``E_1`` is the
bigraded homology, the limit is the filtered homology, and the rank of ``d_r``
out of ``(i, j)`` is the number of pairs of gap ``r`` starting there.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .complex import ColorAlgebra, ChainComplex, assemble, psi_class
from .linalg import SparseSolver, reduce_columns
from .ribbon import PMDiagram
from .states import Hypercube


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


@dataclass
class BigradedTable:
    """Dimensions of bigraded homology keyed by ``(i, j)``; zero entries omitted."""

    dims: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {key: d for key, d in sorted(self.dims.items()) if d}

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.dims.get(key, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (i, _), d in self.dims.items():
            out[i] = out.get(i, 0) + d
        return out

    def to_json(self) -> dict:
        return {"bigraded": [[i, j, d] for (i, j), d in self.dims.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "BigradedTable":
        return cls({(i, j): d for i, j, d in data["bigraded"]})


@dataclass
class FilteredTable:
    """Dimensions of filtered homology keyed by homological degree; zero entries omitted."""

    dims: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {i: d for i, d in sorted(self.dims.items()) if d}

    def __getitem__(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def sequence(self, length: int) -> List[int]:
        """Dimensions for degrees ``0 .. length``."""
        return [self[i] for i in range(length + 1)]

    def to_json(self) -> dict:
        return {"filtered": [[i, d] for i, d in self.dims.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "FilteredTable":
        return cls({i: d for i, d in data["filtered"]})


@dataclass
class SpectralPage:
    """Page ``E_r``: dimensions and the rank of ``d_r`` out of each ``(i, j)``.

    ``d_r`` maps ``(i, j)`` to ``(i + 1, j + r n)``.
    """

    r: int
    n: int
    dims: Dict[Tuple[int, int], int]
    differential_ranks: Dict[Tuple[int, int], int]

    def __post_init__(self):
        self.dims = {key: d for key, d in sorted(self.dims.items()) if d}
        self.differential_ranks = {
            key: d for key, d in sorted(self.differential_ranks.items()) if d
        }

    def rank_into(self, i: int, j: int) -> int:
        return self.differential_ranks.get((i - 1, j - self.r * self.n), 0)

    def next_dims(self) -> Dict[Tuple[int, int], int]:
        """Dimensions of ``E_{r+1}`` predicted from this page and its differential."""
        keys = set(self.dims)
        out = {}
        for i, j in keys:
            d = self.dims[(i, j)] - self.differential_ranks.get((i, j), 0) - self.rank_into(i, j)
            if d:
                out[(i, j)] = d
        return out

    def total(self) -> int:
        return sum(self.dims.values())

    def to_json(self) -> dict:
        return {
            "page": self.r,
            "dims": [[i, j, d] for (i, j), d in self.dims.items()],
            "differential_ranks": [[i, j, d] for (i, j), d in self.differential_ranks.items()],
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "SpectralPage":
        return cls(
            data["page"],
            n,
            {(i, j): d for i, j, d in data["dims"]},
            {(i, j): d for i, j, d in data.get("differential_ranks", [])},
        )


# ---------------------------------------------------------------------------
# Column reduction of a whole complex
# ---------------------------------------------------------------------------


def _reduce_block_chain(complex_: ChainComplex, key: int, level) -> Dict[int, Dict[int, int]]:
    """Reduce every differential in the residue class ``key``.

    ``level(j)`` is the filtration level of a generator of grading ``j``;
    generators are ordered by decreasing level.  Returns, per degree ``i``,
    the pairing from generators of degree ``i`` to generators of degree ``i+1``.
    Columns already known to be pivot rows of the previous differential are
    skipped (the clearing optimisation).
    """
    pairings: Dict[int, Dict[int, int]] = {}
    cleared: set = set()
    rank_of: Dict[int, List[int]] = {}

    def ranks(degree: int) -> List[int]:
        cached = rank_of.get(degree)
        if cached is None:
            block = complex_.block(degree, key)
            order = sorted(range(len(block)), key=lambda c: (-level(block.gradings[c]), c))
            cached = [0] * len(order)
            for position, c in enumerate(order):
                cached[c] = position
            rank_of[degree] = cached
        return cached

    for degree in range(complex_.length + 1):
        source = complex_.block(degree, key)
        if not len(source):
            cleared = set()
            continue
        if degree == complex_.length:
            pairings[degree] = {}
            break
        column_rank = ranks(degree)
        order = sorted(range(len(source)), key=column_rank.__getitem__)
        matrix = complex_.differential(degree, key)
        reduction = reduce_columns(matrix.columns, order, ranks(degree + 1), skip=cleared)
        pairings[degree] = reduction.pairs
        cleared = set(reduction.pairs.values())
    return pairings


@dataclass
class PersistenceData:
    """Per residue class: generator gradings and the pairing of each degree."""

    n: int
    length: int
    gradings: Dict[Tuple[int, int], List[int]]
    pairings: Dict[Tuple[int, int], Dict[int, int]]

    def _records(self):
        """Yield ``(i, j, gap)`` per generator; ``gap`` is ``None`` for survivors."""
        paired_rows: Dict[Tuple[int, int], Dict[int, int]] = {}
        for (degree, key), pairs in self.pairings.items():
            target = paired_rows.setdefault((degree + 1, key), {})
            for col, row in pairs.items():
                target[row] = col
        for (degree, key), grades in self.gradings.items():
            pairs = self.pairings.get((degree, key), {})
            rows = paired_rows.get((degree, key), {})
            previous = self.gradings.get((degree - 1, key), [])
            following = self.gradings.get((degree + 1, key), [])
            for c, j in enumerate(grades):
                if c in pairs:
                    gap = (following[pairs[c]] - j) // self.n
                elif c in rows:
                    gap = (j - previous[rows[c]]) // self.n
                else:
                    gap = None
                yield degree, j, gap, c in pairs

    def page(self, r: int) -> SpectralPage:
        dims: Counter = Counter()
        ranks: Counter = Counter()
        for degree, j, gap, is_source in self._records():
            if gap is None or gap >= r:
                dims[(degree, j)] += 1
            if is_source and gap == r:
                ranks[(degree, j)] += 1
        return SpectralPage(r, self.n, dict(dims), dict(ranks))

    def max_gap(self) -> int:
        return max((gap for _, _, gap, _ in self._records() if gap is not None), default=0)

    def limit(self) -> FilteredTable:
        dims: Counter = Counter()
        for degree, _, gap, _ in self._records():
            if gap is None:
                dims[degree] += 1
        return FilteredTable(dict(dims))


def persistence(pm: PMDiagram, n: int, **caps) -> PersistenceData:
    """Reduce the ``t = 1`` complex of ``pm`` with the quantum filtration."""
    complex_ = assemble(pm, ColorAlgebra(n, Fraction(1)), **caps)
    gradings: Dict[Tuple[int, int], List[int]] = {}
    pairings: Dict[Tuple[int, int], Dict[int, int]] = {}
    for key in complex_.all_keys():
        for degree, pairs in _reduce_block_chain(complex_, key, lambda j: j // n).items():
            pairings[(degree, key)] = pairs
        for degree in range(complex_.length + 1):
            block = complex_.block(degree, key)
            if len(block):
                gradings[(degree, key)] = list(block.gradings)
    return PersistenceData(n, complex_.length, gradings, pairings)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def bigraded_homology(pm: PMDiagram, n: int, **caps) -> BigradedTable:
    """Bigraded homology from the ``t = 0`` complex, one ``j`` at a time."""
    complex_ = assemble(pm, ColorAlgebra(n, Fraction(0)), **caps)
    dims: Dict[Tuple[int, int], int] = {}
    for j in complex_.all_keys():
        pairings = _reduce_block_chain(complex_, j, lambda _: 0)
        for degree in range(complex_.length + 1):
            size = len(complex_.block(degree, j))
            if not size:
                continue
            outgoing = len(pairings.get(degree, {}))
            incoming = len(pairings.get(degree - 1, {}))
            dims[(degree, j)] = size - outgoing - incoming
    return BigradedTable(dims)


def filtered_homology(pm: PMDiagram, n: int, **caps) -> FilteredTable:
    """Dimensions of the homology of the ``t = 1`` complex."""
    return persistence(pm, n, **caps).limit()


def spectral_page(pm: PMDiagram, n: int, r: int, **caps) -> SpectralPage:
    """The page ``E_r`` of the spectral sequence from bigraded to filtered homology."""
    if r < 0:
        raise ValueError("page index must be nonnegative")
    return persistence(pm, n, **caps).page(r)


def spectral_pages(pm: PMDiagram, n: int, **caps) -> List[SpectralPage]:
    """Pages ``E_0 .. E_S`` where ``S`` is the spectral invariant (the last one is the limit)."""
    data = persistence(pm, n, **caps)
    last = max(1, data.max_gap() + 1)
    return [data.page(r) for r in range(last + 1)]


def spectral_invariant(pm: PMDiagram, n: int, **caps) -> int:
    """Least page index ``r >= 1`` from which every page equals the limit."""
    return max(1, persistence(pm, n, **caps).max_gap() + 1)


# ---------------------------------------------------------------------------
# The psi class through the pages
# ---------------------------------------------------------------------------


@dataclass
class PsiSurvival:
    """Outcome of tracking the psi class.

    ``dies_at`` is the first page on which the class is zero, or ``None``
    when it survives to the limit; ``witness`` is then a cycle of the
    deformed complex of the form ``psi + (terms of higher filtration)``.
    """

    n: int
    j: int
    dies_at: Optional[int]
    witness: Optional[Dict[str, str]]

    @property
    def survives(self) -> bool:
        return self.dies_at is None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "j": self.j,
            "dies_at": "infinity" if self.dies_at is None else self.dies_at,
            "witness_terms": None if self.witness is None else len(self.witness),
            "witness": self.witness,
        }


def psi_survival(pm: PMDiagram, n: int, **caps) -> PsiSurvival:
    """Follow the psi class from ``E_1`` until it dies or the pages stabilize.

    The class lives in degree zero, so it is never a boundary; it survives to
    ``E_{r+1}`` exactly when some ``y`` of strictly higher filtration makes
    ``D(psi + y)`` vanish below filtration ``s(psi) + r + 1``.  Each step is an
    exact linear solve on a truncated system.
    """
    psi = psi_class(pm, n, **caps)
    complex_ = assemble(pm, ColorAlgebra(n, Fraction(1)), **caps)
    key = psi.j % n
    level = psi.j // n
    source = complex_.block(0, key)
    target = complex_.block(1, key)
    matrix = complex_.differential(0, key)
    psi_column = matrix.columns[source.index[psi.generator]]
    top = max([level] + [j // n for j in target.gradings])
    window: List[int] = []
    solution: Dict[int, object] = {}
    for r in range(1, top - level + 2):
        ceiling = level + r
        window = [
            c for c, j in enumerate(source.gradings) if level < j // n <= ceiling
        ]
        rows = [row for row, j in enumerate(target.gradings) if j // n <= ceiling]
        row_index = {row: position for position, row in enumerate(rows)}
        columns = [
            {row_index[row]: v for row, v in matrix.columns[c].items() if row in row_index}
            for c in window
        ]
        rhs = {row_index[row]: -v for row, v in psi_column.items() if row in row_index}
        solution = SparseSolver(columns).solve(rhs)
        if solution is None:
            return PsiSurvival(n, psi.j, r + 1, None)
    cycle = {source.generators[window[c]]: v for c, v in solution.items()}
    cycle[psi.generator] = Fraction(1)
    witness = {
        complex_.generator_label(g): str(v) for g, v in sorted(cycle.items())
    }
    return PsiSurvival(n, psi.j, None, witness)


def harmonic_state_dims(pm: PMDiagram, n: int, max_matching: Optional[int] = None) -> Dict[int, int]:
    """Per state, the number of proper ``n``-colorings of its circle multigraph."""
    from .oracle import circle_multigraph, proper_coloring_count

    cube = Hypercube(pm) if max_matching is None else Hypercube(pm, max_matching=max_matching)
    return {
        mask: proper_coloring_count(circle_multigraph(pm, mask, cube=cube), n)
        for mask, _ in cube
    }
