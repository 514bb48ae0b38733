"""Exact scalars and polynomial containers.

Every computation in the package is carried out with Python integers and
:class:`fractions.Fraction`.  The only irrational number that appears is the
square root of the color count ``n`` (a coefficient of the self-touch map), so
:class:`QuadExt` implements the quadratic field Q(sqrt(n)) directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Rat = Fraction

Scalar = Union[int, Fraction, "QuadExt"]


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or rational-valued QuadExt to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, QuadExt):
        if value.b:
            raise ValueError(f"{value} is irrational")
        return value.a
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _square_root(radicand: int) -> int | None:
    root = math.isqrt(radicand)
    return root if root * root == radicand else None


class QuadExt:
    """The number ``a + b*sqrt(radicand)`` with rational ``a`` and ``b``.

    A perfect-square radicand is folded into the rational part on construction,
    so ``QuadExt(0, 1, 4)`` is the rational number 2 with ``b == 0``.
    """

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a=0, b=0, radicand: int = 1):
        if not isinstance(radicand, int) or radicand < 1:
            raise ValueError("radicand must be a positive integer")
        a = as_rat(a)
        b = as_rat(b)
        root = _square_root(radicand)
        if root is not None:
            a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, radicand: int) -> "QuadExt":
        """Return the positive square root of ``radicand``."""
        return cls(0, 1, radicand)

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.radicand != self.radicand and other.b and self.b:
                raise ValueError(
                    f"radicand mismatch: {self.radicand} vs {other.radicand}"
                )
            if other.radicand != self.radicand and not other.b:
                return QuadExt(other.a, 0, self.radicand)
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.radicand)
        return NotImplemented

    def _result_radicand(self, other: "QuadExt") -> int:
        if self.b or not other.b:
            return self.radicand
        return other.radicand

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self._result_radicand(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        radicand = self._result_radicand(other)
        a = self.a * other.a + self.b * other.b * radicand
        b = self.a * other.b + self.b * other.a
        return QuadExt(a, b, radicand)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.radicand)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - radicand*b^2``; zero only for the zero element."""
        return self.a * self.a - self.radicand * self.b * self.b

    def inverse(self) -> "QuadExt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt(n))")
        norm = self.norm()
        return QuadExt(self.a / norm, -self.b / norm, self.radicand)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    # -- predicates and display ---------------------------------------------
    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        if isinstance(other, QuadExt):
            if not self.b and not other.b:
                return self.a == other.a
            return (self.a, self.b, self.radicand) == (other.a, other.b, other.radicand)
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.radicand))

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.radicand})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.radicand})"
        tail = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if not self.a:
            return tail
        sign = "-" if tail.startswith("-") else "+"
        return f"{self.a} {sign} {tail.lstrip('-')}"


def quad_arith(x: QuadExt, y: QuadExt | None, op: str) -> QuadExt:
    """Apply ``op`` (one of add, mul, neg, inv) to elements of Q(sqrt(n))."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def scalar_parts(value: Scalar) -> Tuple[Fraction, Fraction]:
    """Return ``(a, b)`` with ``value == a + b*sqrt(n)``."""
    if isinstance(value, QuadExt):
        return value.a, value.b
    return as_rat(value), Fraction(0)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _format_number(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _format_terms(terms: Sequence[Tuple[str, object]]) -> str:
    """Join ``(monomial, coefficient)`` pairs as ``a*x^k + ...``."""
    if not terms:
        return "0"
    pieces = []
    for monomial, coeff in terms:
        coeff = Fraction(coeff)
        negative = coeff < 0
        size = -coeff if negative else coeff
        if not monomial:
            body = _format_number(size)
        elif size == 1:
            body = monomial
        else:
            body = f"{_format_number(size)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def _power(var: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return var
    return f"{var}^{exponent}"


class LaurentPoly:
    """Laurent polynomial in ``q`` with integer coefficients."""

    __slots__ = ("_coeffs",)
    var = "q"

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for exp, coeff in (coeffs or {}).items():
            if coeff:
                if isinstance(coeff, Fraction):
                    if coeff.denominator != 1:
                        raise ValueError("LaurentPoly coefficients must be integers")
                    coeff = coeff.numerator
                clean[int(exp)] = int(coeff)
        self._coeffs: Dict[int, int] = clean

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, int]]) -> "LaurentPoly":
        acc: Dict[int, int] = {}
        for exp, coeff in terms:
            acc[exp] = acc.get(exp, 0) + coeff
        return cls(acc)

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def terms(self) -> list:
        return sorted(self._coeffs.items())

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.terms())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other):
        other = _as_laurent(other)
        acc = dict(self._coeffs)
        for exp, coeff in other._coeffs.items():
            acc[exp] = acc.get(exp, 0) + coeff
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        acc: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if power < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPoly({0: 1})
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self.terms()))

    def evaluate(self, q0) -> Fraction:
        return laurent_eval(self, q0)

    def to_text(self) -> str:
        return _format_terms([(_power("q", e), c) for e, c in self.terms()])

    def to_json(self) -> dict:
        return {"var": "q", "terms": [[e, c] for e, c in self.terms()]}

    @classmethod
    def from_json(cls, payload: Mapping) -> "LaurentPoly":
        if payload.get("var", "q") != "q":
            raise ValueError("expected a polynomial in q")
        return cls.from_terms((int(e), int(c)) for e, c in payload["terms"])

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"


def _as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly({0: value})
    raise TypeError(f"cannot combine LaurentPoly with {type(value).__name__}")


def laurent_eval(p: LaurentPoly, q0) -> Fraction:
    """Substitute the rational ``q0`` for ``q``."""
    q0 = as_rat(q0)
    total = Fraction(0)
    for exp, coeff in p.terms():
        if exp < 0 and q0 == 0:
            raise ZeroDivisionError("zero substituted into a negative exponent")
        total += coeff * q0**exp
    return total


class VarPoly:
    """Ordinary polynomial with rational coefficients in one named variable."""

    __slots__ = ("var", "_coeffs")

    def __init__(self, var: str, coeffs: Mapping[int, object] | None = None):
        if var not in ("n", "t", "q"):
            raise ValueError(f"unsupported variable {var!r}")
        clean = {}
        for exp, coeff in (coeffs or {}).items():
            if exp < 0:
                raise ValueError("VarPoly exponents must be nonnegative")
            coeff = as_rat(coeff)
            if coeff:
                clean[int(exp)] = coeff
        self.var = var
        self._coeffs: Dict[int, Fraction] = clean

    @classmethod
    def constant(cls, var: str, value) -> "VarPoly":
        return cls(var, {0: value})

    @classmethod
    def variable(cls, var: str) -> "VarPoly":
        return cls(var, {1: 1})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> list:
        return sorted(self._coeffs.items())

    def coefficient(self, exponent: int) -> Fraction:
        return self._coeffs.get(exponent, Fraction(0))

    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other) -> "VarPoly":
        if isinstance(other, (int, Fraction)):
            return VarPoly(self.var, {0: other})
        if not isinstance(other, VarPoly):
            raise TypeError(f"cannot combine VarPoly with {type(other).__name__}")
        if other.var != self.var and not (other.is_zero() or other.degree() == 0):
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        return other

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self._coeffs)
        for exp, coeff in other._coeffs.items():
            acc[exp] = acc.get(exp, 0) + coeff
        return VarPoly(self.var, acc)

    __radd__ = __add__

    def __neg__(self):
        return VarPoly(self.var, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        acc: Dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return VarPoly(self.var, acc)

    __rmul__ = __mul__

    def divmod(self, divisor: "VarPoly") -> Tuple["VarPoly", "VarPoly"]:
        """Polynomial long division over the rationals."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_exp = divisor.degree()
        lead = divisor._coeffs[lead_exp]
        remainder = dict(self._coeffs)
        quotient: Dict[int, Fraction] = {}
        while remainder and max(remainder) >= lead_exp:
            top = max(remainder)
            factor = remainder[top] / lead
            quotient[top - lead_exp] = factor
            for exp, coeff in divisor._coeffs.items():
                key = exp + top - lead_exp
                value = remainder.get(key, 0) - factor * coeff
                if value:
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return VarPoly(self.var, quotient), VarPoly(self.var, remainder)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = VarPoly(self.var, {0: other})
        if not isinstance(other, VarPoly):
            return NotImplemented
        if self._coeffs != other._coeffs:
            return False
        return self.var == other.var or self.degree() <= 0

    def __hash__(self):
        return hash((self.var, tuple(self.terms())))

    def evaluate(self, value) -> Fraction:
        value = as_rat(value)
        total = Fraction(0)
        for exp in range(self.degree(), -1, -1):
            total = total * value + self._coeffs.get(exp, 0)
        return total

    def to_text(self) -> str:
        return _format_terms([(_power(self.var, e), c) for e, c in self.terms()])

    def to_json(self) -> dict:
        return {"var": self.var, "terms": [[e, _format_number(c)] for e, c in self.terms()]}

    @classmethod
    def from_json(cls, payload: Mapping) -> "VarPoly":
        return cls(payload["var"], {int(e): Fraction(c) for e, c in payload["terms"]})

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"VarPoly({self.var!r}, {self.to_text()!r})"


_BIPOLY_PAIRS = {("q", "n"), ("n", "t"), ("t", "q")}


class BiPoly:
    """Polynomial in two named variables with rational coefficients.

    Exponents of ``q`` may be negative; exponents of ``n`` and ``t`` may not.
    """

    __slots__ = ("vars", "_coeffs")

    def __init__(self, variables: Tuple[str, str], coeffs: Mapping[Tuple[int, int], object] | None = None):
        variables = tuple(variables)
        if variables not in _BIPOLY_PAIRS:
            raise ValueError(f"unsupported variable pair {variables!r}")
        clean = {}
        for (e1, e2), coeff in (coeffs or {}).items():
            for var, exp in zip(variables, (e1, e2)):
                if exp < 0 and var != "q":
                    raise ValueError(f"negative exponent of {var}")
            coeff = as_rat(coeff)
            if coeff:
                clean[(int(e1), int(e2))] = coeff
        self.vars = variables
        self._coeffs: Dict[Tuple[int, int], Fraction] = clean

    @property
    def coeffs(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def terms(self) -> list:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "BiPoly"):
        if other.vars != self.vars:
            raise ValueError("variable pair mismatch")
        acc = dict(self._coeffs)
        for key, coeff in other._coeffs.items():
            acc[key] = acc.get(key, 0) + coeff
        return BiPoly(self.vars, acc)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.vars == other.vars and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.vars, tuple(self.terms())))

    def evaluate(self, first, second) -> Fraction:
        x, y = as_rat(first), as_rat(second)
        return sum((c * x**e1 * y**e2 for (e1, e2), c in self._coeffs.items()), Fraction(0))

    def specialize(self, position: int, value) -> VarPoly:
        """Substitute ``value`` for the variable at ``position`` (0 or 1)."""
        value = as_rat(value)
        keep = self.vars[1 - position]
        acc: Dict[int, Fraction] = {}
        for exps, coeff in self._coeffs.items():
            fixed, free = exps[position], exps[1 - position]
            acc[free] = acc.get(free, 0) + coeff * value**fixed
        return VarPoly(keep, acc)

    def coefficient_in(self, position: int, exponent: int) -> VarPoly:
        """Coefficient of ``var[position]**exponent`` as a polynomial in the other variable."""
        keep = self.vars[1 - position]
        acc = {
            exps[1 - position]: coeff
            for exps, coeff in self._coeffs.items()
            if exps[position] == exponent
        }
        return VarPoly(keep, acc)

    def to_text(self) -> str:
        v1, v2 = self.vars
        terms = []
        for (e1, e2), coeff in self.terms():
            monomial = "*".join(part for part in (_power(v1, e1), _power(v2, e2)) if part)
            terms.append((monomial, coeff))
        return _format_terms(terms)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[e1, e2, _format_number(c)] for (e1, e2), c in self.terms()],
        }

    @classmethod
    def from_json(cls, payload: Mapping) -> "BiPoly":
        return cls(
            tuple(payload["vars"]),
            {(int(e1), int(e2)): Fraction(c) for e1, e2, c in payload["terms"]},
        )

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"BiPoly({self.vars!r}, {self.to_text()!r})"


def poly_interpolate(points: Sequence[Tuple[object, object]], var: str = "n") -> VarPoly:
    """Lagrange interpolation through ``points`` with exact rational arithmetic."""
    xs = [as_rat(x) for x, _ in points]
    ys = [as_rat(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    result = VarPoly(var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = VarPoly.constant(var, 1)
        denom = Fraction(1)
        for k, xk in enumerate(xs):
            if k == i:
                continue
            basis = basis * VarPoly(var, {1: 1, 0: -xk})
            denom *= xi - xk
        result = result + basis * (yi / denom)
    return result
