"""The ring Z[t]/(t^4) on Z^4 and Hermite-form bases of its sublattices.

Coordinates are ordered ``(t^3, t^2, t, 1)`` so that a unital subring of
index ``p^(k+l+r)`` has a lower-triangular basis

    [ p^k   0     0    0 ]
    [ a21   p^l   0    0 ]
    [ a31   a32   p^r  0 ]
    [ 0     0     0    1 ]
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

Vector = tuple[int, ...]


class CocyclicityMismatch(AssertionError):
    """The explicit 3x3-minor gcd and the generic one disagree."""


@dataclass(frozen=True)
class RingStructure:
    """Commutative ring structure on Z^n given by structure constants.

    ``constants[i][j]`` is the coordinate vector of ``e_i * e_j``.
    """

    constants: tuple[tuple[Vector, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.constants)

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        n = self.rank
        out = [0] * n
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.constants[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for m, cm in enumerate(row[j]):
                    if cm:
                        out[m] += c * cm
        return tuple(out)

    def is_commutative(self) -> bool:
        n = self.rank
        return all(self.constants[i][j] == self.constants[j][i] for i in range(n) for j in range(n))

    def identity(self) -> Vector | None:
        n = self.rank
        for k in range(n):
            if all(self.constants[k][i] == _unit(n, i) for i in range(n)):
                return _unit(n, k)
        return None


def _unit(n: int, i: int) -> Vector:
    return tuple(1 if m == i else 0 for m in range(n))


def truncated_polynomial_ring(n: int = 4) -> RingStructure:
    """Z[t]/(t^n) with basis ``(t^(n-1), ..., t, 1)``."""
    degree = [n - 1 - i for i in range(n)]

    def index(d: int) -> int:
        return n - 1 - d

    constants = []
    for i in range(n):
        row = []
        for j in range(n):
            d = degree[i] + degree[j]
            row.append(_unit(n, index(d)) if d < n else (0,) * n)
        constants.append(tuple(row))
    return RingStructure(tuple(constants))


TRUNCATED_T4 = truncated_polynomial_ring(4)


@dataclass(frozen=True)
class HNFSubringMatrix:
    p: int
    k: int
    l: int
    r: int
    a21: int = 0
    a31: int = 0
    a32: int = 0

    def __post_init__(self):
        if min(self.k, self.l, self.r) < 0:
            raise ValueError("diagonal exponents must be non-negative")
        pk, pl = self.p**self.k, self.p**self.l
        if not (0 <= self.a21 < pk and 0 <= self.a31 < pk and 0 <= self.a32 < pl):
            raise ValueError(f"off-diagonal entries out of Hermite range: {self!r}")

    @property
    def index(self) -> int:
        return self.p ** (self.k + self.l + self.r)

    @cached_property
    def rows(self) -> tuple[Vector, ...]:
        p = self.p
        return (
            (p**self.k, 0, 0, 0),
            (self.a21, p**self.l, 0, 0),
            (self.a31, self.a32, p**self.r, 0),
            (0, 0, 0, 1),
        )


def solve_lower_triangular(rows: Sequence[Sequence[int]], w: Sequence[int]) -> Vector | None:
    """Integer ``c`` with ``w == sum c_i rows[i]``, or None if ``w`` is not in
    the row span.  ``rows`` must be lower triangular with nonzero diagonal."""
    n = len(rows)
    c = [0] * n
    for j in range(n - 1, -1, -1):
        rem = w[j] - sum(c[i] * rows[i][j] for i in range(j + 1, n))
        q, rest = divmod(rem, rows[j][j])
        if rest:
            return None
        c[j] = q
    return tuple(c)


def hnf_membership(M: HNFSubringMatrix, w: Sequence[int]) -> Vector | None:
    return solve_lower_triangular(M.rows, w)


def lattice_is_closed(rows: Sequence[Sequence[int]], ring: RingStructure = TRUNCATED_T4) -> bool:
    """All pairwise products of basis rows lie in the row span."""
    n = len(rows)
    pairs = (
        itertools.combinations_with_replacement(range(n), 2)
        if ring.is_commutative()
        else itertools.product(range(n), repeat=2)
    )
    for i, j in pairs:
        if solve_lower_triangular(rows, ring.multiply(rows[i], rows[j])) is None:
            return False
    return True


def is_subring(M: HNFSubringMatrix, ring: RingStructure = TRUNCATED_T4) -> bool:
    return lattice_is_closed(M.rows, ring)


def valuation(n: int, p: int) -> float:
    """p-adic valuation; ``valuation(0) == inf``."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def closure_conditions(M: HNFSubringMatrix) -> bool:
    k, l, r, p = M.k, M.l, M.r, M.p
    if l > 2 * r or k > l + r:
        return False
    return valuation(2 * p**l * M.a32 - p**r * M.a21, p) >= k + l - r


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(n) if m[0][j])


def minor_gcd(rows: Sequence[Sequence[int]], size: int) -> int:
    n = len(rows)
    g = 0
    for rs in itertools.combinations(range(n), size):
        for cs in itertools.combinations(range(n), size):
            g = math.gcd(g, _det([[rows[i][j] for j in cs] for i in rs]))
            if g == 1:
                return 1
    return g


def cotype_of_rows(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """``(alpha_1, ..., alpha_n)`` with ``alpha_{i+1} | alpha_i`` from the gcds
    of the k x k minors: ``alpha_{n-k+1} ... alpha_n = d_k``."""
    n = len(rows)
    d = [1] + [minor_gcd(rows, k) for k in range(1, n + 1)]
    if d[n] == 0:
        raise ValueError("lattice is not of full rank")
    # alpha_{n-k+1} = d_k / d_{k-1}
    return tuple(d[n - i] // d[n - i - 1] for i in range(n))


def cotype(M: HNFSubringMatrix) -> tuple[int, int, int, int]:
    return cotype_of_rows(M.rows)  # type: ignore[return-value]


def explicit_three_minor_gcd(M: HNFSubringMatrix) -> int:
    """The closed-form gcd of the nonzero 3x3 minors of the Hermite basis."""
    p, k, l, r = M.p, M.k, M.l, M.r
    return math.gcd(
        p ** (k + l + r),
        p ** (l + r),
        p**r * M.a21,
        M.a21 * M.a32 - p**l * M.a31,
        p ** (k + r),
        p**k * M.a32,
        p ** (k + l),
    )


def is_cocyclic(M: HNFSubringMatrix) -> bool:
    explicit = explicit_three_minor_gcd(M)
    generic = minor_gcd(M.rows, 3)
    if explicit != generic:
        raise CocyclicityMismatch(f"explicit gcd {explicit} != generic gcd {generic} for {M!r}")
    return generic == 1
