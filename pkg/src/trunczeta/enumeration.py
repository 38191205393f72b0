"""Counting subrings of Z[t]/(t^4) of index p^m cell by cell.

A cell ``(k, l, r)`` collects the Hermite bases with diagonal
``(p^k, p^l, p^r, 1)``.  Two independent counting paths are provided: the
valuation test on ``(a21, a32)`` and a generic closure check of every basis.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .ring import HNFSubringMatrix, closure_conditions, is_cocyclic, is_subring

DEFAULT_ORACLE_BUDGET = 10**7
BUDGET_ENV = "TRUNCZETA_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


def budget(default: int = DEFAULT_ORACLE_BUDGET) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


class Cell(NamedTuple):
    k: int
    l: int
    r: int

    @property
    def weight(self) -> int:
        return self.k + self.l + self.r

    def is_valid(self) -> bool:
        return self.l <= 2 * self.r and self.k <= self.l + self.r


def valid_cells(m: int) -> list[Cell]:
    """All cells of weight ``m`` with ``l <= 2r`` and ``k <= l + r``, lexicographic."""
    out = []
    for k in range(m + 1):
        for l in range(m - k + 1):
            c = Cell(k, l, m - k - l)
            if c.is_valid():
                out.append(c)
    return out


def all_cells(m: int) -> list[Cell]:
    return [Cell(k, l, m - k - l) for k in range(m + 1) for l in range(m - k + 1)]


def _require_valid(c: Cell) -> Cell:
    c = Cell(*c)
    if not c.is_valid():
        raise ValueError(f"cell {tuple(c)} violates l <= 2r or k <= l + r")
    return c


def _closed_pairs(p: int, c: Cell) -> Iterator[tuple[int, int]]:
    """``(a21, a32)`` in Hermite range with ``p^(k+l-r) | 2 p^l a32 - p^r a21``."""
    k, l, r = c
    e = k + l - r
    pl, pr = p**l, p**r
    for a21 in range(p**k):
        if e <= 0:
            for a32 in range(pl):
                yield a21, a32
            continue
        mod = p**e
        base = pr * a21
        for a32 in range(pl):
            if (2 * pl * a32 - base) % mod == 0:
                yield a21, a32


def count_cell(p: int, c: Cell) -> int:
    """Subrings in a cell via the valuation criterion; ``a31`` is free."""
    c = _require_valid(c)
    return sum(1 for _ in _closed_pairs(p, c)) * p**c.k


def iter_cell(p: int, c: Cell) -> Iterator[HNFSubringMatrix]:
    k, l, r = c
    for a21 in range(p**k):
        for a31 in range(p**k):
            for a32 in range(p**l):
                yield HNFSubringMatrix(p, k, l, r, a21, a31, a32)


def count_cell_oracle(p: int, c: Cell, cap: int | None = None) -> int:
    """Same count as :func:`count_cell`, checking closure of every basis."""
    c = _require_valid(c)
    cap = budget() if cap is None else cap
    size = p ** (2 * c.k + c.l)
    if size > cap:
        raise BudgetExceeded(f"cell {tuple(c)} at p={p} needs {size} checks (cap {cap})")
    return sum(1 for M in iter_cell(p, c) if is_subring(M))


def enumeration_work(p: int, m: int) -> int:
    """Number of ``(a21, a32)`` pairs the fast path visits at index ``p^m``."""
    return sum(p ** (c.k + c.l) for c in valid_cells(m))


def _check_work(p: int, m: int, cap: int | None) -> None:
    cap = budget() if cap is None else cap
    work = enumeration_work(p, m)
    if work > cap:
        raise BudgetExceeded(f"p={p}, m={m} needs {work} residue pairs (cap {cap})")


def count_subrings(p: int, m: int, cap: int | None = None) -> int:
    _check_work(p, m, cap)
    return sum(count_cell(p, c) for c in valid_cells(m))


def count_cell_cocyclic(p: int, c: Cell) -> int:
    """Cocyclic subrings in a cell.

    Enumerates the closed ``(a21, a32)`` pairs and counts the ``a31`` residues
    directly: every 3x3 minor except ``a21*a32 - p^l*a31`` is a multiple of
    a fixed power ``p^g``, so for ``g > 0`` cocyclicity needs
    ``p`` not dividing ``a21*a32 - p^l*a31``.
    """
    c = _require_valid(c)
    k, l, r = c
    pk = p**k
    total = 0
    for a21, a32 in _closed_pairs(p, c):
        g = math.gcd(p ** (k + l + r), p ** (l + r), p**r * a21, p ** (k + r), p**k * a32, p ** (k + l))
        if g == 1:
            total += pk
        elif l > 0:
            # p | p^l a31, so only a21*a32 matters
            if (a21 * a32) % p:
                total += pk
        else:
            # l = 0: need a31 not congruent to a21*a32 mod p; k = 0 forces a31 = 0
            if k == 0:
                total += 1 if (a21 * a32) % p else 0
            else:
                total += pk - pk // p
    return total


def count_cell_cocyclic_oracle(p: int, c: Cell, cap: int | None = None) -> int:
    c = _require_valid(c)
    cap = budget() if cap is None else cap
    size = p ** (2 * c.k + c.l)
    if size > cap:
        raise BudgetExceeded(f"cell {tuple(c)} at p={p} needs {size} checks (cap {cap})")
    return sum(1 for M in iter_cell(p, c) if is_subring(M) and is_cocyclic(M))


def count_cocyclic(p: int, m: int, oracle: bool = False, cap: int | None = None) -> int:
    _check_work(p, m, cap)
    count = count_cell_cocyclic_oracle if oracle else count_cell_cocyclic
    return sum(count(p, c) for c in valid_cells(m))


@dataclass(frozen=True)
class CountRow:
    m: int
    subrings: int
    cocyclic: int
    method: str


@dataclass
class CountTable:
    prime: int
    rows: list[CountRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "rows": [
                {"m": r.m, "subrings": str(r.subrings), "cocyclic": str(r.cocyclic), "method": r.method}
                for r in self.rows
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> CountTable:
        rows = [CountRow(int(r["m"]), int(r["subrings"]), int(r["cocyclic"]), str(r["method"])) for r in data["rows"]]
        ms = [r.m for r in rows]
        if any(b <= a for a, b in zip(ms, ms[1:])):
            raise ValueError("table rows must have strictly increasing m")
        return cls(int(data["prime"]), rows)


def closure_agrees(M: HNFSubringMatrix) -> bool:
    return is_subring(M) == closure_conditions(M)
