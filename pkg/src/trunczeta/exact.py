"""Exact arithmetic for local zeta factors.

Polynomials live in two symbols: ``P`` (the prime) and ``X`` (standing for
``p**-s``).  Rational functions keep their denominators as a multiset of
factors ``(1 - P**a * X**b)``, which is how every local factor we care about
arrives, so equality and addition never need a bivariate gcd.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Poly",
    "DenominatorFactor",
    "RationalFunction",
    "QuadraticRational",
    "Monomial",
    "PoleError",
    "parse_poly",
    "parse_rf",
    "rf_equal",
    "rf_series",
    "rf_invert_variables",
    "rf_eval_quadratic",
    "rf_eval_real",
]


class PoleError(ZeroDivisionError):
    """A denominator factor vanishes at the evaluation point."""


class Poly:
    """Bivariate polynomial with integer coefficients in ``P`` and ``X``.

    Terms are stored as ``{(p_exp, x_exp): coeff}`` with zero coefficients
    dropped.  Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]] = ()):
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (((a, b), c) for c, a, b in terms)
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in term P^{a} X^{b}")
            c = int(c)
            if c:
                key = (int(a), int(b))
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def monomial(cls, coeff: int = 1, a: int = 0, b: int = 0) -> Poly:
        return cls({(a, b): coeff})

    @classmethod
    def constant(cls, c: int) -> Poly:
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, a: int, b: int) -> int:
        return self._terms.get((a, b), 0)

    def degree_p(self) -> int:
        return max((a for a, _ in self._terms), default=0)

    def degree_x(self) -> int:
        return max((b for _, b in self._terms), default=0)

    def __add__(self, other: Poly | int) -> Poly:
        other = _as_poly(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return Poly(acc)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Poly | int) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: int) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other: Poly | int) -> Poly:
        other = _as_poly(other)
        acc: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return Poly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def specialize(self, p: int) -> list[int]:
        """Coefficients in ``X`` after substituting ``P := p``."""
        out = [0] * (self.degree_x() + 1)
        for (a, b), c in self._terms.items():
            out[b] += c * p**a
        return out

    def evaluate(self, p, x):
        """Evaluate at arbitrary ring elements (int, Fraction, float, ...)."""
        total = 0
        for (a, b), c in self._terms.items():
            total = total + c * (p**a) * (x**b)
        return total

    def reversed(self) -> Poly:
        """``P**A X**B f(1/P, 1/X)`` with ``A, B`` the maximal exponents."""
        A, B = self.degree_p(), self.degree_x()
        return Poly({(A - a, B - b): c for (a, b), c in self._terms.items()})

    def content_monomial(self) -> tuple[int, int]:
        """Largest monomial ``P**a X**b`` dividing every term."""
        if not self._terms:
            return (0, 0)
        return (min(a for a, _ in self._terms), min(b for _, b in self._terms))

    def shift(self, da: int, db: int) -> Poly:
        return Poly({(a + da, b + db): c for (a, b), c in self._terms.items()})


def _as_poly(value: Poly | int) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, int):
        return Poly.constant(value)
    raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for (a, b), c in f.items():
        mono = "*".join(s for s in (_sym("P", a), _sym("X", b)) if s)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    text = "".join(f" {s} {b}" for s, b in parts).strip()
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _sym(name: str, e: int) -> str:
    return "" if e == 0 else name if e == 1 else f"{name}^{e}"


@dataclass(frozen=True, order=True)
class DenominatorFactor:
    """``(1 - P**a X**b) ** multiplicity``."""

    b: int
    a: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.a < 0 or self.b < 1 or self.multiplicity < 1:
            raise ValueError(f"bad denominator factor {self!r}")

    def poly(self) -> Poly:
        return (Poly.constant(1) - Poly.monomial(1, self.a, self.b)) ** self.multiplicity

    def __str__(self) -> str:
        mono = "*".join(s for s in (_sym("P", self.a), _sym("X", self.b)) if s)
        base = f"(1 - {mono})"
        return base if self.multiplicity == 1 else f"{base}^{self.multiplicity}"


class RationalFunction:
    """``numerator / prod (1 - P^a X^b)^m``.

    ``==`` is exact equality of rational functions (cross-multiplication);
    instances are therefore unhashable.
    """

    __slots__ = ("numerator", "_den")

    def __init__(self, numerator: Poly | int, denominator: Iterable[tuple[int, int]] | Mapping[tuple[int, int], int] = ()):
        self.numerator = _as_poly(numerator)
        den: Counter[tuple[int, int]] = Counter()
        if isinstance(denominator, Mapping):
            for (a, b), m in denominator.items():
                if m:
                    den[(a, b)] += m
        else:
            for item in denominator:
                if isinstance(item, DenominatorFactor):
                    den[(item.a, item.b)] += item.multiplicity
                else:
                    a, b = item
                    den[(a, b)] += 1
        for (a, b), m in den.items():
            DenominatorFactor(b=b, a=a, multiplicity=m)
        self._den = dict(den)

    __hash__ = None  # type: ignore[assignment]

    @property
    def denominator(self) -> tuple[DenominatorFactor, ...]:
        return tuple(sorted(DenominatorFactor(b=b, a=a, multiplicity=m) for (a, b), m in self._den.items()))

    @property
    def factor_counts(self) -> dict[tuple[int, int], int]:
        return dict(self._den)

    def denominator_poly(self) -> Poly:
        out = Poly.constant(1)
        for f in self.denominator:
            out = out * f.poly()
        return out

    def _over(self, den: Mapping[tuple[int, int], int]) -> Poly:
        """Numerator after rewriting over the (larger) factor multiset ``den``."""
        num = self.numerator
        for (a, b), m in den.items():
            extra = m - self._den.get((a, b), 0)
            if extra < 0:
                raise ValueError("target denominator does not contain ours")
            if extra:
                num = num * DenominatorFactor(b=b, a=a, multiplicity=extra).poly()
        return num

    def __add__(self, other: RationalFunction | Poly | int) -> RationalFunction:
        other = _as_rf(other)
        keys = set(self._den) | set(other._den)
        den = {k: max(self._den.get(k, 0), other._den.get(k, 0)) for k in keys}
        return RationalFunction(self._over(den) + other._over(den), den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numerator, self._den)

    def __sub__(self, other: RationalFunction | Poly | int) -> RationalFunction:
        return self + (-_as_rf(other))

    def __rsub__(self, other: Poly | int) -> RationalFunction:
        return _as_rf(other) - self

    def __mul__(self, other: RationalFunction | Poly | int) -> RationalFunction:
        other = _as_rf(other)
        den = Counter(self._den)
        den.update(other._den)
        return RationalFunction(self.numerator * other.numerator, den)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Poly, int)):
            other = _as_rf(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return rf_equal(self, other)

    def __repr__(self) -> str:
        den = "".join(str(f) for f in self.denominator) or "1"
        return f"RationalFunction(({format_poly(self.numerator)}) / {den})"

    def series(self, p: int, order: int) -> list[int]:
        return rf_series(self, p, order)


def _as_rf(value: RationalFunction | Poly | int) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(_as_poly(value))


def rf_equal(f: RationalFunction, g: RationalFunction) -> bool:
    """Exact equality by cross-multiplying the factored denominators."""
    keys = set(f._den) | set(g._den)
    # cancel the shared part of both multisets before expanding
    common = {k: min(f._den.get(k, 0), g._den.get(k, 0)) for k in keys}
    f_rest = {k: f._den.get(k, 0) - common[k] for k in keys}
    g_rest = {k: g._den.get(k, 0) - common[k] for k in keys}
    lhs, rhs = f.numerator, g.numerator
    for (a, b), m in g_rest.items():
        if m:
            lhs = lhs * DenominatorFactor(b=b, a=a, multiplicity=m).poly()
    for (a, b), m in f_rest.items():
        if m:
            rhs = rhs * DenominatorFactor(b=b, a=a, multiplicity=m).poly()
    return lhs == rhs


def rf_series(f: RationalFunction, p: int, order: int) -> list[int]:
    """Power-series coefficients ``c_0..c_order`` in ``X`` after ``P := p``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = f.numerator.specialize(p)
    out = (coeffs + [0] * (order + 1))[: order + 1]
    for (a, b), m in f._den.items():
        c = p**a
        for _ in range(m):
            # multiply by 1/(1 - c X^b) in place
            for n in range(b, order + 1):
                out[n] += c * out[n - b]
    return out


@dataclass(frozen=True)
class Monomial:
    """``sign * P**u * X**v`` with possibly negative exponents."""

    sign: int
    u: int
    v: int

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.sign * other.sign, self.u + other.u, self.v + other.v)

    def inverse(self) -> Monomial:
        return Monomial(self.sign, -self.u, -self.v)

    def substitute_inverse(self) -> Monomial:
        """The monomial with ``P -> 1/P``, ``X -> 1/X``."""
        return Monomial(self.sign, -self.u, -self.v)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.u, self.v, self.sign)


def normalize(f: RationalFunction) -> tuple[Monomial, RationalFunction]:
    """Split ``f = m * g`` with ``g``'s numerator free of monomial content and
    its lowest term (ordered by X-degree, then P-degree) positive."""
    num = f.numerator
    if num.is_zero():
        raise ValueError("cannot normalize the zero function")
    a0, b0 = num.content_monomial()
    num = num.shift(-a0, -b0)
    _, lead = next(num.items())
    sign = 1 if lead > 0 else -1
    if sign < 0:
        num = -num
    return Monomial(sign, a0, b0), RationalFunction(num, f._den)


def rf_invert_variables(f: RationalFunction) -> tuple[Monomial, RationalFunction]:
    """Return ``(m, g)`` with ``f(1/P, 1/X) == m(P, X) * g(P, X)``.

    ``g`` is in normalized form: polynomial numerator with no monomial
    content and a positive lowest term, denominator of ``(1 - P^a X^b)``
    factors.
    """
    num = f.numerator
    if num.is_zero():
        raise ValueError("numerator must be nonzero")
    A, B = num.degree_p(), num.degree_x()
    # (1 - P^-a X^-b) = -P^-a X^-b (1 - P^a X^b)
    m_total = sum(f._den.values())
    u = sum(a * m for (a, _), m in f._den.items()) - A
    v = sum(b * m for (_, b), m in f._den.items()) - B
    head = Monomial((-1) ** m_total, u, v)
    inner, g = normalize(RationalFunction(num.reversed(), f._den))
    return head * inner, g


def rf_eval_real(f: RationalFunction, p: int, s: float) -> float:
    """Floating-point value at ``P = p``, ``X = p**-s``.  No exactness claim."""
    x = float(p) ** (-s)
    value = math.fsum(c * float(p) ** a * x**b for (a, b), c in f.numerator.items())
    for (a, b), m in f._den.items():
        if math.isclose(a, b * s, rel_tol=0.0, abs_tol=1e-12):
            raise PoleError(f"factor (1 - P^{a} X^{b}) vanishes at p={p}, s={s}")
        value /= (1.0 - float(p) ** a * x**b) ** m
    return value


# --- Q(sqrt 2) ---------------------------------------------------------------


class QuadraticRational:
    """``a + b*sqrt(2)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a: Fraction | int = 0, b: Fraction | int = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def sqrt2(cls) -> QuadraticRational:
        return cls(0, 1)

    def _coerce(self, other) -> QuadraticRational:
        if isinstance(other, QuadraticRational):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticRational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticRational(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticRational(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticRational(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticRational(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> QuadraticRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        return QuadraticRational(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QuadraticRational:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadraticRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __float__(self) -> float:
        # a + b*sqrt2 loses precision when a ~ -b*sqrt2; (a^2-2b^2)/(a-b*sqrt2) keeps it
        direct = float(self.a) + float(self.b) * math.sqrt(2)
        conj = float(self.a) - float(self.b) * math.sqrt(2)
        if abs(conj) > abs(direct) and conj != 0:
            return float(self.norm()) / conj
        return direct

    def __repr__(self) -> str:
        return f"QuadraticRational({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt(2)"


# x = 2^(-3/2) = sqrt(2)/4
SQRT2_OVER_4 = QuadraticRational(0, Fraction(1, 4))


def rf_eval_quadratic(f: RationalFunction, p: int = 2, x: QuadraticRational = SQRT2_OVER_4) -> QuadraticRational:
    """Exact value in Q(sqrt 2); by default at ``P = 2``, ``X = 2**(-3/2)``."""
    value = QuadraticRational(0)
    for (a, b), c in f.numerator.items():
        value = value + c * p**a * x**b
    for (a, b), m in f._den.items():
        factor = 1 - p**a * x**b
        if factor == 0:
            raise PoleError(f"factor (1 - P^{a} X^{b}) vanishes at the evaluation point")
        value = value / factor**m
    return value


# --- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([pPxX])|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[str]:
    text = text.replace("−", "-").replace("·", "*")
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return ["^" if t == "**" else t for t in out]


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        total = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> Poly:
        out = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                out = out * self.power()
            elif tok is not None and (tok == "(" or tok.isdigit() or tok.isalpha()):
                out = out * self.power()
            else:
                return out

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ValueError(f"exponent must be a non-negative integer, got {exp!r}")
            base = base ** int(exp)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok.isdigit():
            return Poly.constant(int(tok))
        if tok in ("p", "P"):
            return Poly.monomial(1, 1, 0)
        if tok in ("x", "X"):
            return Poly.monomial(1, 0, 1)
        raise ValueError(f"unexpected token {tok!r}")


def parse_poly(text: str) -> Poly:
    """Parse an integer polynomial in ``p``/``x`` (``^`` or ``**`` for powers,
    implicit multiplication allowed)."""
    parser = _Parser(text)
    out = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing input {parser.peek()!r} in {text!r}")
    return out


_FACTOR = re.compile(r"\(([^()]*)\)(?:\s*\^\s*(\d+))?")


def parse_denominator(text: str) -> Counter[tuple[int, int]]:
    """Parse a product like ``(1-p^2x^2)(1-x)^2`` into factor multiplicities."""
    den: Counter[tuple[int, int]] = Counter()
    rest = _FACTOR.sub("", text).replace("*", "").strip()
    if rest:
        raise ValueError(f"denominator must be a product of (1 - p^a x^b) factors: {text!r}")
    for body, mult in _FACTOR.findall(text):
        poly = parse_poly(body)
        terms = poly.terms
        others = [k for k in terms if k != (0, 0)]
        if terms.get((0, 0)) != 1 or len(others) != 1 or terms[others[0]] != -1:
            raise ValueError(f"factor ({body}) is not of the form 1 - p^a x^b")
        a, b = others[0]
        den[(a, b)] += int(mult) if mult else 1
    return den


def parse_rf(numerator: str, denominator: str = "") -> RationalFunction:
    return RationalFunction(parse_poly(numerator), parse_denominator(denominator) if denominator else ())
