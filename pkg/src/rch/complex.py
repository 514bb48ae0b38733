"""Chain complexes of perfect matching diagrams with deformation parameter ``t``.

The algebra is ``V = k[x]/(x^n)`` with ``deg(x^k) = m - k``, where ``m`` is
``n // 2``.  A generator is a state together with one exponent per circle.
Along a hypercube edge the differential applies multiplication (two circles
fuse), comultiplication (one circle splits) or the self-touch map (one circle
becomes one circle), each deformed by ``t``:

* ``m_t(x^a, x^b) = x^(a+b)`` if ``a + b < n``, else ``t * x^(a+b-n)``;
* ``Delta_t(x^k) = sum_{i+j=k+2m} x^i (x) x^j + t * sum_{i+j=k+2m-n} x^i (x) x^j``;
* ``eta_t(x^k) = sqrt(n) x^(k+m)`` if ``k + m < n``, else ``t sqrt(n) x^(k+m-n)``.

``t = 0`` gives the bigraded complex (the differential preserves the quantum
grading ``j``); ``t = 1`` gives the filtered complex, whose ``t``-part raises
``j`` by exactly ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .ribbon import PMDiagram
from .scalar import QuadExt, as_rat, scalar_parts
from .states import (
    DEFAULT_MAX_MATCHING,
    CapExceeded,
    EdgeKind,
    HyperEdge,
    Hypercube,
    format_state,
    popcount,
    state_surface,
)

DEFAULT_MAX_GENERATORS = 5_000_000

Label = Tuple[int, ...]
Generator = Tuple[int, Label]


@dataclass(frozen=True)
class ColorAlgebra:
    """Color count ``n``, grading shift ``m`` and deformation parameter ``t``."""

    n: int
    t: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("the color count n must be an integer >= 2")
        object.__setattr__(self, "t", as_rat(self.t))

    @property
    def m(self) -> int:
        return self.n // 2

    def degree(self, exponent: int) -> int:
        return self.m - exponent

    def sqrt_n(self):
        """``sqrt(n)`` as a Fraction when ``n`` is a square, otherwise a QuadExt."""
        root = QuadExt.sqrt(self.n)
        return root.a if root.is_rational() else root

    def scale(self, coeff):
        """Normalize a coefficient: rational values become Fractions."""
        if isinstance(coeff, QuadExt) and coeff.is_rational():
            return coeff.a
        return coeff


def edge_map_table(kind: EdgeKind, algebra: ColorAlgebra) -> Dict[Label, List[Tuple[Label, object]]]:
    """Exact table of the deformed edge map ``kind`` on monomial labels."""
    return _edge_map_table(EdgeKind(kind), algebra.n, algebra.t)


@lru_cache(maxsize=None)
def _edge_map_table(kind: EdgeKind, n: int, t: Fraction) -> Dict[Label, List[Tuple[Label, object]]]:
    algebra = ColorAlgebra(n, t)
    m = algebra.m
    table: Dict[Label, List[Tuple[Label, object]]] = {}
    if kind is EdgeKind.MERGE:
        for a in range(n):
            for b in range(n):
                if a + b < n:
                    table[(a, b)] = [((a + b,), Fraction(1))]
                elif t:
                    table[(a, b)] = [((a + b - n,), t)]
                else:
                    table[(a, b)] = []
    elif kind is EdgeKind.SPLIT:
        for k in range(n):
            terms = []
            total = k + 2 * m
            for i in range(n):
                if 0 <= total - i < n:
                    terms.append(((i, total - i), Fraction(1)))
            if t:
                for i in range(n):
                    if 0 <= total - n - i < n:
                        terms.append(((i, total - n - i), t))
            table[(k,)] = terms
    elif kind is EdgeKind.SELF_TOUCH:
        root = algebra.sqrt_n()
        for k in range(n):
            if k + m < n:
                table[(k,)] = [((k + m,), root)]
            elif t:
                table[(k,)] = [((k + m - n,), algebra.scale(root * t))]
            else:
                table[(k,)] = []
    else:
        raise ValueError(f"unknown edge kind {kind!r}")
    return table


def compositions(total: int, parts: int, top: int) -> Iterator[Label]:
    """All tuples of ``parts`` integers in ``0..top`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < 0 or total > parts * top:
        return
    low = max(0, total - (parts - 1) * top)
    for first in range(low, min(top, total) + 1):
        for rest in compositions(total - first, parts - 1, top):
            yield (first,) + rest


@dataclass
class GradedBlock:
    """Generators of homological degree ``i`` whose quantum grading lies in one class.

    For ``t = 0`` the class is a single value of ``j``; otherwise it is a
    residue of ``j`` modulo ``n``.  ``gradings[c]`` is the ``j`` of generator ``c``.
    """

    degree: int
    key: int
    generators: List[Generator]
    gradings: List[int]
    index: Dict[Generator, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {g: c for c, g in enumerate(self.generators)}

    def __len__(self):
        return len(self.generators)


@dataclass
class SparseMat:
    """Sparse matrix stored by columns: ``columns[c]`` maps row index to value."""

    rows: int
    cols: int
    columns: List[Dict[int, object]]

    def entries(self) -> Iterator[Tuple[int, int, object]]:
        for c, column in enumerate(self.columns):
            for r in sorted(column):
                yield r, c, column[r]

    def nnz(self) -> int:
        return sum(len(column) for column in self.columns)

    def dump(self) -> str:
        """Coordinate triplets ``row col a b`` meaning ``a + b*sqrt(n)``."""
        lines = []
        for r, c, value in self.entries():
            a, b = scalar_parts(value)
            lines.append(f"{r} {c} {a} {b}")
        return "\n".join(lines)

    def to_dense(self) -> List[List[object]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, c, value in self.entries():
            dense[r][c] = value
        return dense

    def apply(self, vector: Dict[int, object]) -> Dict[int, object]:
        out: Dict[int, object] = {}
        for c, coeff in vector.items():
            for r, value in self.columns[c].items():
                total = out.get(r, 0) + coeff * value
                if total:
                    out[r] = total
                else:
                    out.pop(r, None)
        return out


def _j_of(algebra: ColorAlgebra, degree: int, labels: Label) -> int:
    return sum(algebra.m - a for a in labels) + algebra.m * degree


class ChainComplex:
    """Lazily assembled chain complex of a perfect matching diagram."""

    def __init__(
        self,
        pm: PMDiagram,
        algebra: ColorAlgebra,
        cube: Optional[Hypercube] = None,
        max_generators: int = DEFAULT_MAX_GENERATORS,
        max_matching: int = DEFAULT_MAX_MATCHING,
        sign_rule: Optional[Callable[[HyperEdge], int]] = None,
    ):
        self.pm = pm
        self.algebra = algebra
        self.cube = cube if cube is not None else Hypercube(pm, max_matching=max_matching)
        self.length = self.cube.length
        self.max_generators = max_generators
        self.sign_rule = sign_rule
        self._blocks: Dict[Tuple[int, int], GradedBlock] = {}
        self._maps: Dict[Tuple[int, int], SparseMat] = {}
        self._edges_by_source: Dict[int, List[HyperEdge]] = {}
        self.masks_by_degree: Dict[int, List[int]] = {}
        for mask, _ in self.cube:
            self.masks_by_degree.setdefault(popcount(mask), []).append(mask)
        for masks in self.masks_by_degree.values():
            masks.sort()

    # -- grading bookkeeping ------------------------------------------------
    @property
    def deformed(self) -> bool:
        return bool(self.algebra.t)

    def key_of(self, j: int) -> int:
        return j % self.algebra.n if self.deformed else j

    def gradings(self, degree: int) -> List[int]:
        """All quantum gradings occurring in homological degree ``degree``."""
        algebra = self.algebra
        found = set()
        for mask in self.masks_by_degree.get(degree, ()):
            k = self.cube.circle_count(mask)
            base = algebra.m * k + algebra.m * degree
            found.update(base - s for s in range(k * (algebra.n - 1) + 1))
        return sorted(found)

    def keys(self, degree: int) -> List[int]:
        return sorted({self.key_of(j) for j in self.gradings(degree)})

    def all_keys(self) -> List[int]:
        return sorted({key for i in range(self.length + 1) for key in self.keys(i)})

    def total_dimension(self, degree: int) -> int:
        return sum(self.algebra.n ** self.cube.circle_count(m) for m in self.masks_by_degree.get(degree, ()))

    # -- blocks ---------------------------------------------------------------
    def block(self, degree: int, key: int) -> GradedBlock:
        cached = self._blocks.get((degree, key))
        if cached is not None:
            return cached
        algebra = self.algebra
        generators: List[Generator] = []
        gradings: List[int] = []
        for mask in self.masks_by_degree.get(degree, ()):
            k = self.cube.circle_count(mask)
            base = algebra.m * k + algebra.m * degree
            for total in range(k * (algebra.n - 1) + 1):
                j = base - total
                if self.key_of(j) != key:
                    continue
                for labels in compositions(total, k, algebra.n - 1):
                    generators.append((mask, labels))
                    gradings.append(j)
                if len(generators) > self.max_generators:
                    raise CapExceeded(
                        f"block (i={degree}, key={key}) exceeds {self.max_generators} generators"
                    )
        block = GradedBlock(degree, key, generators, gradings)
        self._blocks[(degree, key)] = block
        return block

    def edges_from(self, mask: int) -> List[HyperEdge]:
        edges = self._edges_by_source.get(mask)
        if edges is None:
            edges = self.cube.edges_from(mask)
            self._edges_by_source[mask] = edges
        return edges

    def image(self, generator: Generator) -> Dict[Generator, object]:
        """The differential of one generator as a map target generator -> coefficient."""
        mask, labels = generator
        out: Dict[Generator, object] = {}
        for edge in self.edges_from(mask):
            sign = self.sign_rule(edge) if self.sign_rule else edge.sign
            table = _edge_map_table(edge.kind, self.algebra.n, self.algebra.t)
            source = tuple(labels[c] for c in edge.inputs)
            terms = table[source]
            if not terms:
                continue
            target = [0] * edge.target_count
            for src, dst in edge.carry:
                target[dst] = labels[src]
            for outputs, coeff in terms:
                for position, value in zip(edge.outputs, outputs):
                    target[position] = value
                key = (edge.target, tuple(target))
                total = out.get(key, 0) + (coeff if sign > 0 else -coeff)
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return out

    def differential(self, degree: int, key: int) -> SparseMat:
        """Matrix of the differential from block ``(degree, key)`` to ``(degree + 1, key)``."""
        cached = self._maps.get((degree, key))
        if cached is not None:
            return cached
        source = self.block(degree, key)
        target = self.block(degree + 1, key)
        columns = []
        for generator in source.generators:
            column = {}
            for image, coeff in self.image(generator).items():
                row = target.index.get(image)
                if row is None:
                    raise AssertionError(
                        f"image {image} of {generator} falls outside block ({degree + 1}, {key})"
                    )
                column[row] = coeff
            columns.append(column)
        mat = SparseMat(len(target), len(source), columns)
        self._maps[(degree, key)] = mat
        return mat

    def generator_label(self, generator: Generator) -> str:
        mask, labels = generator
        return f"{format_state(mask, self.length)}:" + "(x)".join(f"x^{a}" for a in labels)


def assemble(
    pm: PMDiagram,
    algebra: ColorAlgebra,
    max_generators: int = DEFAULT_MAX_GENERATORS,
    max_matching: int = DEFAULT_MAX_MATCHING,
) -> ChainComplex:
    """Build the chain complex of ``pm`` over ``algebra``."""
    return ChainComplex(pm, algebra, max_generators=max_generators, max_matching=max_matching)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass
class ComplexReport:
    ok: bool
    checked_blocks: int
    failures: List[str]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked_blocks": self.checked_blocks, "failures": self.failures}


def verify_complex(complex_: ChainComplex, limit: int = 10) -> ComplexReport:
    """Check that the differential squares to zero, block by block.

    A failure names the generator, the offending target and the square face
    (source state, two flipped positions) through which the composite passes.
    """
    failures: List[str] = []
    checked = 0
    for degree in range(complex_.length - 1):
        for key in complex_.keys(degree):
            source = complex_.block(degree, key)
            first = complex_.differential(degree, key)
            second = complex_.differential(degree + 1, key)
            target = complex_.block(degree + 2, key)
            checked += 1
            for c, column in enumerate(first.columns):
                composite = second.apply(column)
                for row, value in composite.items():
                    if len(failures) >= limit:
                        break
                    mask = source.generators[c][0]
                    end = target.generators[row][0]
                    flipped = [k for k in range(complex_.length) if (end ^ mask) >> k & 1]
                    failures.append(
                        f"d^2 != 0 on {complex_.generator_label(source.generators[c])} -> "
                        f"{complex_.generator_label(target.generators[row])} "
                        f"(coefficient {value}; square face at {format_state(mask, complex_.length)} "
                        f"flipping positions {flipped})"
                    )
    return ComplexReport(not failures, checked, failures)


def verify_deformation(pm: PMDiagram, n: int, **caps) -> Dict[str, ComplexReport]:
    """Run :func:`verify_complex` at ``t = 0, 1/2, 1``.

    ``d_t^2 = d^2 + t (d d~ + d~ d) + t^2 d~^2`` is a polynomial of degree two
    in ``t``; vanishing at three values makes each coefficient vanish.
    """
    reports = {}
    for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
        reports[str(t)] = verify_complex(assemble(pm, ColorAlgebra(n, t), **caps))
    return reports


# ---------------------------------------------------------------------------
# The psi class
# ---------------------------------------------------------------------------


@dataclass
class PsiClass:
    generator: Generator
    j: int
    expected_j: Fraction
    cycle: Optional[bool]
    warning: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "state": 0,
            "labels": list(self.generator[1]),
            "j": self.j,
            "expected_j": str(self.expected_j),
            "is_cycle": self.cycle,
            "warning": self.warning,
        }


def psi_class(pm: PMDiagram, n: int, **caps) -> PsiClass:
    """The all-zero state generator labelled ``x^(n-1)`` on every circle.

    ``expected_j`` is ``(1 - n/2) f`` for even ``n`` and ``(1/2 - n/2) f`` for
    odd ``n``, where ``f`` is the number of circles.  The cycle condition is
    asserted for even ``n`` and for odd ``n`` on orientable diagrams; for odd
    ``n`` on a non-orientable diagram the cycle test is reported with a
    warning instead.
    """
    complex_ = assemble(pm, ColorAlgebra(n, 0), **caps)
    f = complex_.cube.circle_count(0)
    labels = (n - 1,) * f
    generator = (0, labels)
    j = _j_of(complex_.algebra, 0, labels)
    if n % 2 == 0:
        expected = (1 - Fraction(n, 2)) * f
    else:
        expected = (Fraction(1, 2) - Fraction(n, 2)) * f
    is_cycle = not complex_.image(generator)
    warning = None
    if n % 2 and not state_surface(pm, 0).orientable:
        warning = "odd n on a non-orientable diagram: the cycle property is not guaranteed"
    elif not is_cycle:
        raise AssertionError(f"psi is not a cycle for {pm.name} at n={n}")
    return PsiClass(generator, j, expected, is_cycle, warning)
