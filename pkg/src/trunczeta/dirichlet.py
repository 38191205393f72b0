"""Global Dirichlet series: coefficients, partial sums and growth constants.

Local series come from enumeration-verified sources only: the theorem forms
for odd primes, and for ``p = 2`` the case sums (the subring T-sum, and the
cocyclic E-sum with its sixth case re-summed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal

from .closed_forms import CATALOG, DERIVED, subring_two_case_sum
from .enumeration import BudgetExceeded, budget
from .exact import QuadraticRational, RationalFunction, rf_eval_quadratic, rf_series

Kind = Literal["subring", "cocyclic"]
IndexFilter = Literal["all", "odd"]

DEFAULT_SIEVE_BUDGET = 10**6


def local_factor(p: int, kind: Kind) -> RationalFunction:
    if kind == "subring":
        return CATALOG["SUBRING_ODD"] if p != 2 else subring_two_case_sum()
    if kind == "cocyclic":
        return CATALOG["COCYCLIC_ODD_THM"] if p != 2 else DERIVED["COCYCLIC_TWO_CORRECTED"]
    raise ValueError(f"kind must be 'subring' or 'cocyclic', got {kind!r}")


@dataclass
class GlobalCoefficientCache:
    """Per-prime local series, extended on demand."""

    kind: Kind
    _series: dict[int, list[int]] = field(default_factory=dict)

    def local(self, p: int, e: int) -> int:
        s = self._series.get(p)
        if s is None or len(s) <= e:
            depth = max(e, 2 * len(s) if s else 8)
            s = rf_series(local_factor(p, self.kind), p, depth)
            self._series[p] = s
        return s[e]


_CACHES: dict[str, GlobalCoefficientCache] = {}


def _cache(kind: Kind) -> GlobalCoefficientCache:
    if kind not in ("subring", "cocyclic"):
        raise ValueError(f"kind must be 'subring' or 'cocyclic', got {kind!r}")
    if kind not in _CACHES:
        _CACHES[kind] = GlobalCoefficientCache(kind)
    return _CACHES[kind]


def factorize(n: int, cap: int | None = None) -> list[tuple[int, int]]:
    """Trial division; refuses when sqrt(n) exceeds the budget."""
    if n < 1:
        raise ValueError("n must be positive")
    cap = budget(DEFAULT_SIEVE_BUDGET) if cap is None else cap
    if math.isqrt(n) > cap:
        raise BudgetExceeded(f"factoring {n} needs trial division past {cap}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def coefficient(n: int, kind: Kind = "subring") -> int:
    """Number of (cocyclic) subrings of index ``n``."""
    cache = _cache(kind)
    out = 1
    for p, e in factorize(n):
        out *= cache.local(p, e)
    return out


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def coefficient_table(B: int, kind: Kind = "subring") -> list[int]:
    """``a(0..B)`` (``a(0) = 0``) by a smallest-prime-factor sieve."""
    cap = budget(DEFAULT_SIEVE_BUDGET)
    if B > cap:
        raise BudgetExceeded(f"sieve bound {B} exceeds budget {cap}")
    cache = _cache(kind)
    spf = list(range(B + 1))
    for i in range(2, math.isqrt(B) + 1):
        if spf[i] == i:
            for j in range(i * i, B + 1, i):
                if spf[j] == j:
                    spf[j] = i
    a = [0] * (B + 1)
    exp = [0] * (B + 1)
    rest = [1] * (B + 1)
    if B >= 1:
        a[1] = 1
    local: dict[int, list[int]] = {}
    for n in range(2, B + 1):
        p = spf[n]
        q = n // p
        if q % p == 0:
            exp[n] = exp[q] + 1
            rest[n] = rest[q]
        else:
            exp[n] = 1
            rest[n] = q
        row = local.get(p)
        if row is None:
            row = local[p] = []
        e = exp[n]
        while len(row) <= e:
            row.append(cache.local(p, len(row)))
        a[n] = a[rest[n]] * row[e]
    return a


def partial_sum(B: int, kind: Kind = "subring", index_filter: IndexFilter = "all") -> int:
    if B < 1:
        raise ValueError("B must be positive")
    a = coefficient_table(B, kind)
    if index_filter == "all":
        return sum(a)
    if index_filter == "odd":
        return sum(a[1::2])
    raise ValueError(f"filter must be 'all' or 'odd', got {index_filter!r}")


def growth_diagnostic(
    B_values: Iterable[int], kind: Kind = "subring", index_filter: IndexFilter = "all"
) -> list[tuple[int, int, float]]:
    """Rows ``(B, s(B), s(B) / B^(3/2))``."""
    Bs = sorted(set(int(b) for b in B_values))
    if not Bs or Bs[0] < 1:
        raise ValueError("bounds must be positive")
    a = coefficient_table(Bs[-1], kind)
    if index_filter == "odd":
        a = [v if n % 2 else 0 for n, v in enumerate(a)]
    elif index_filter != "all":
        raise ValueError(f"filter must be 'all' or 'odd', got {index_filter!r}")
    rows, running, pos = [], 0, 0
    for B in Bs:
        running += sum(a[pos : B + 1])
        pos = B + 1
        rows.append((B, running, running / B**1.5))
    return rows


# --- Riemann zeta ------------------------------------------------------------


def riemann_zeta_real(s: float, tol: float = 1e-10) -> float:
    """zeta(s) for real s > 1 by Euler-Maclaurin with two Bernoulli corrections.

    After summing n < N the remainder is
    N^(1-s)/(s-1) + N^-s/2 + s N^(-s-1)/12 - s(s+1)(s+2) N^(-s-3)/720 + R
    with |R| below the next term; N is chosen so that term is under ``tol``.
    """
    if not s > 1:
        raise ValueError("riemann_zeta_real needs s > 1")
    N = 10
    while s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240 * N ** (-s - 5) > tol / 10:
        N *= 2
    head = math.fsum(n**-s for n in range(N - 1, 0, -1))
    tail = (
        N ** (1 - s) / (s - 1)
        + 0.5 * N**-s
        + s * N ** (-s - 1) / 12
        - s * (s + 1) * (s + 2) * N ** (-s - 3) / 720
    )
    return head + tail


# --- Euler products ----------------------------------------------------------

# Per-prime factors written in y = p^(-1/2): coefficient list index j <-> y^j.
C_FACTOR = {0: 1, 4: 1, 5: 1, 7: -1, 8: -2, 9: -2, 10: -1, 12: 1, 13: 1, 17: 1}
D_FACTOR = {0: 1, 3: 2, 5: -1, 6: -1, 7: -1}

C_PREFACTOR = QuadraticRational(Fraction(29256, 194481), Fraction(18556, 194481))


def numerator_in_y(f: RationalFunction, s_half: int = 3) -> dict[int, int]:
    """Numerator of ``f`` at ``X = p^(-s_half/2)`` as a polynomial in ``y = p^(-1/2)``."""
    out: dict[int, int] = {}
    for (a, b), c in f.numerator.items():
        j = s_half * b - 2 * a
        if j < 0:
            raise ValueError("numerator grows with p; not a polynomial in p^(-1/2)")
        out[j] = out.get(j, 0) + c
    return {j: c for j, c in out.items() if c}


def log_coefficients(poly: dict[int, int], n_max: int) -> list[Fraction]:
    """``lam[n]`` with ``log f(y) = sum lam[n] y^n`` (``f(0) = 1``)."""
    if poly.get(0) != 1:
        raise ValueError("factor must have constant term 1")
    a = [Fraction(poly.get(i, 0)) for i in range(n_max + 1)]
    lam = [Fraction(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = n * a[n] - sum(a[k] * (n - k) * lam[n - k] for k in range(1, n))
        lam[n] = acc / n
    return lam


def _mobius(n: int) -> int:
    out = 1
    for _, e in factorize(n, cap=n):
        if e > 1:
            return 0
        out = -out
    return out


def cyclotomic_exponents(poly: dict[int, int], J: int) -> dict[int, int]:
    """``e_j`` with ``f(y) = prod_j (1 - y^j)^(-e_j) * (1 + O(y^(J+1)))``."""
    lam = log_coefficients(poly, J)
    out = {}
    for j in range(1, J + 1):
        val = sum(_mobius(j // d) * d * lam[d] for d in range(1, j + 1) if j % d == 0) / j
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral exponent at j={j}")
        if val:
            out[j] = int(val)
    return out


@dataclass(frozen=True)
class ConstantEstimate:
    """A truncated Euler product.

    ``tail`` bounds ``|log(value) - log(full value)|`` coming from primes
    above ``prime_bound``; the zeta values used carry an extra ~1e-10.
    """

    value: float
    prime_bound: int
    tail: float
    odd_product: float = 0.0
    accelerated: bool = True


def odd_euler_product(poly: dict[int, int], prime_bound: int, accelerate: int = 12) -> tuple[float, float]:
    """``prod_{3 <= p <= bound} f(p^(-1/2))`` and a bound on the log tail.

    With ``accelerate = J > 0`` the factors ``(1 - p^(-j/2))^(-e_j)``, j <= J, are
    pulled out and replaced by ``zeta(j/2) (1 - 2^(-j/2))`` so the remaining
    product converges like ``sum p^(-(J+1)/2)``.
    """
    if prime_bound < 3:
        raise ValueError("prime_bound must be at least 3")
    degree = max(poly)
    lowest = min((j for j in poly if j > 0), default=degree + 1)
    exps = cyclotomic_exponents(poly, accelerate) if accelerate else {}
    if any(j <= 2 for j in exps):
        raise ValueError("cannot accelerate through zeta(j/2) with j <= 2")
    n0 = max(accelerate + 1, lowest) if accelerate else lowest
    if n0 <= 2:
        raise ValueError("product does not converge absolutely")

    log_total = 0.0
    for j, e in exps.items():
        log_total += e * math.log(riemann_zeta_real(j / 2) * (1 - 2 ** (-j / 2)))
    terms = []
    for p in primes_up_to(prime_bound):
        if p == 2:
            continue
        y = p**-0.5
        f = math.fsum(c * y**j for j, c in poly.items())
        g = math.log(f) + sum(e * math.log1p(-(y**j)) for j, e in exps.items())
        terms.append(g)
    log_total += math.fsum(terms)

    # |log-coefficient n| <= d*rho^n + sum|e_j| where rho bounds the reciprocal roots
    lead = poly[degree]
    rho = 1 + max(abs(c) for j, c in poly.items() if j < degree) / abs(lead)
    y_max = (prime_bound + 1) ** -0.5
    if rho * y_max >= 1:
        raise ValueError("prime_bound too small for the tail estimate")
    K = degree * rho**n0 / (1 - rho * y_max) + sum(abs(e) for e in exps.values()) / (1 - y_max)
    tail = K * prime_bound ** (1 - n0 / 2) / (n0 / 2 - 1)
    return math.exp(log_total), tail


def constant_C(prime_bound: int = 10**4, accelerate: int = 12, prefactor: QuadraticRational = C_PREFACTOR) -> ConstantEstimate:
    """Growth constant of the subring count with the stated 2-adic prefactor."""
    z = riemann_zeta_real
    prod, tail = odd_euler_product(C_FACTOR, prime_bound, accelerate)
    value = float(prefactor) * z(1.5) ** 2 * z(2) * z(4) * prod
    return ConstantEstimate(value, prime_bound, tail, prod, bool(accelerate))


def two_adic_subring_prefactor() -> QuadraticRational:
    """``zeta_{R,2}(3/2)`` times the 2-Euler factors removed by the zeta values
    and the Tauberian 1/3 (residue 1/2 of zeta(2s-2) divided by 3/2)."""
    x = QuadraticRational(0, Fraction(1, 4))
    z2 = rf_eval_quadratic(subring_two_case_sum())
    return Fraction(1, 3) * z2 * Fraction(15, 16) * Fraction(3, 4) * Fraction(1, 2) * (1 - x) ** 2


def cocyclic_two_value(which: Literal["stated", "corrected"] = "stated") -> QuadraticRational:
    """``zeta^cc_{R,2}(3/2)``: the stated E-sum value or the corrected one."""
    name = "E_SUM" if which == "stated" else "COCYCLIC_TWO_CORRECTED"
    return rf_eval_quadratic(DERIVED[name])


def constant_D(prime_bound: int = 10**4, accelerate: int = 12, which: Literal["stated", "corrected"] = "stated") -> ConstantEstimate:
    prod, tail = odd_euler_product(D_FACTOR, prime_bound, accelerate)
    ab = cocyclic_two_value(which) / 8
    value = riemann_zeta_real(2) * float(ab) * prod
    return ConstantEstimate(value, prime_bound, tail, prod, bool(accelerate))
