"""scikit-learn compatible feature extraction from diagrams.

``ColorHomologyFeatures`` turns a sequence of diagrams into an integer matrix
whose row ``k`` holds, per homological degree, the filtered homology
dimensions or the total face color coefficients of diagram ``k``.  ``fit``
only fixes the number of columns, so the transformer composes with
``sklearn.pipeline.Pipeline``.
"""

from __future__ import annotations

from typing import List, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .homology import filtered_homology
from .invariants import total_face_color_at
from .ribbon import PMDiagram, RibbonDiagram, blowup

_MODES = ("filtered", "total_face_color")


class ColorHomologyFeatures(TransformerMixin, BaseEstimator):
    """Per-degree color homology counts as integer features.

    Parameters
    ----------
    n : int
        Number of colors.
    mode : {"filtered", "total_face_color"}
        ``filtered`` reads dimensions from filtered homology (linear algebra);
        ``total_face_color`` counts colorings state by state (fast).  Both
        agree on ribbon diagrams.
    max_generators : int
        Cap on the size of one chain block in ``filtered`` mode.
    """

    def __init__(self, n: int = 4, mode: str = "total_face_color", max_generators: int = 5_000_000):
        self.n = n
        self.mode = mode
        self.max_generators = max_generators

    def _row(self, diagram) -> List[int]:
        if self.mode == "total_face_color":
            if not isinstance(diagram, RibbonDiagram):
                raise ValueError("total_face_color features need ribbon diagrams")
            poly = total_face_color_at(diagram, self.n)
            coeffs = poly.coeffs
            return [int(coeffs.get(i, 0)) for i in range(len(diagram.graph.edges) + 1)]
        pm = diagram if isinstance(diagram, PMDiagram) else blowup(diagram)
        table = filtered_homology(pm, self.n, max_generators=self.max_generators)
        return table.sequence(len(pm.matching))

    def _validate_params(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("n must be an integer >= 2")

    def fit(self, X: Sequence, y=None):
        self._validate_params()
        rows = [self._row(d) for d in X]
        self.n_features_out_ = max((len(r) for r in rows), default=0)
        return self

    def transform(self, X: Sequence) -> np.ndarray:
        if not hasattr(self, "n_features_out_"):
            raise NotFittedError("ColorHomologyFeatures must be fitted before transform")
        self._validate_params()
        out = np.zeros((len(X), self.n_features_out_), dtype=np.int64)
        for k, diagram in enumerate(X):
            row = self._row(diagram)
            if any(row[self.n_features_out_:]):
                raise ValueError(
                    f"diagram {k} has homology beyond the {self.n_features_out_} fitted degrees"
                )
            width = min(len(row), self.n_features_out_)
            out[k, :width] = row[:width]
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        if not hasattr(self, "n_features_out_"):
            raise NotFittedError("ColorHomologyFeatures must be fitted first")
        return np.array([f"{self.mode}_degree_{i}" for i in range(self.n_features_out_)], dtype=object)
