"""Exact sparse linear algebra over Q and Q(sqrt(n)).

Columns are dictionaries from row index to a nonzero Fraction or QuadExt.
The central routine is a column reduction in a prescribed order (the
persistence algorithm): the pivot of a column is its largest row index, and a
column is reduced by earlier columns until its pivot is new or it vanishes.
Pivot positions of such a reduction are independent of the choices made, which
is what makes the pairing meaningful for spectral sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Column = Dict[int, object]


def _axpy(target: Column, factor, source: Column) -> None:
    """``target -= factor * source`` in place, dropping zeros."""
    for row, value in source.items():
        updated = target.get(row, 0) - factor * value
        if updated:
            target[row] = updated
        else:
            target.pop(row, None)


def _scaled(column: Column, factor) -> Column:
    return {row: value * factor for row, value in column.items()}


@dataclass
class Reduction:
    """Outcome of reducing the columns of one matrix.

    ``pairs`` maps a column index to the row index of its pivot; columns not
    in ``pairs`` reduced to zero (or were skipped as known cycles).
    """

    pairs: Dict[int, int]
    zero_columns: List[int]

    @property
    def rank(self) -> int:
        return len(self.pairs)

    @property
    def pivot_rows(self) -> Dict[int, int]:
        return {row: col for col, row in self.pairs.items()}


def reduce_columns(
    columns: Sequence[Column],
    column_order: Sequence[int],
    row_rank: Sequence[int],
    skip: Iterable[int] = (),
) -> Reduction:
    """Reduce ``columns`` in ``column_order`` with pivots chosen by ``row_rank``.

    ``row_rank[r]`` is the position of row ``r`` in the total row order; the
    pivot of a column is its row of largest rank.  Columns listed in ``skip``
    are known to reduce to zero and are not processed.
    """
    skipped = set(skip)
    pivots: Dict[int, Column] = {}
    pairs: Dict[int, int] = {}
    zero: List[int] = []
    for c in column_order:
        if c in skipped:
            zero.append(c)
            continue
        col = {row_rank[r]: v for r, v in columns[c].items()}
        while col:
            low = max(col)
            pivot = pivots.get(low)
            if pivot is None:
                inverse = 1 / col[low]
                pivots[low] = _scaled(col, inverse)
                pairs[c] = low
                break
            _axpy(col, col[low], pivot)
        else:
            zero.append(c)
    inverse_rank = {rank: r for r, rank in enumerate(row_rank)}
    return Reduction({c: inverse_rank[low] for c, low in pairs.items()}, zero)


def rank(columns: Sequence[Column], nrows: int) -> int:
    """Rank of a sparse matrix given by columns."""
    return reduce_columns(columns, range(len(columns)), list(range(nrows))).rank


class SparseSolver:
    """Solve ``A y = b`` exactly for a fixed sparse matrix ``A``."""

    def __init__(self, columns: Sequence[Column]):
        self._pivots: Dict[int, Tuple[Column, Column]] = {}
        for c, source in enumerate(columns):
            col = dict(source)
            combo: Column = {c: 1}
            while col:
                low = max(col)
                entry = self._pivots.get(low)
                if entry is None:
                    inverse = 1 / col[low]
                    self._pivots[low] = (_scaled(col, inverse), _scaled(combo, inverse))
                    break
                pivot, pivot_combo = entry
                factor = col[low]
                _axpy(col, factor, pivot)
                _axpy(combo, factor, pivot_combo)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, rhs: Column) -> Optional[Column]:
        """A particular solution, or ``None`` when ``rhs`` is not in the column span."""
        residual = dict(rhs)
        solution: Column = {}
        while residual:
            low = max(residual)
            entry = self._pivots.get(low)
            if entry is None:
                return None
            pivot, combo = entry
            factor = residual[low]
            _axpy(residual, factor, pivot)
            _axpy(solution, -factor, combo)
        return solution


def dense_rank(matrix: List[List[object]]) -> int:
    """Rank by textbook row reduction on a dense list-of-rows matrix."""
    rows = [list(row) for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank_found = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank_found, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank_found], rows[pivot] = rows[pivot], rows[rank_found]
        lead = rows[rank_found][col]
        for r in range(len(rows)):
            if r != rank_found and rows[r][col]:
                factor = rows[r][col] / lead
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank_found])]
        rank_found += 1
    return rank_found
