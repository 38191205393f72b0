"""Haar volumes of the closure condition inside each cell.

``mu(p; k, l, r)`` is the measure of ``(a21, a32)`` in Z_p^2 with
``v(2 p^l a32 - p^r a21) >= k + l - r``.  It is given here by a table of
closed-form case rules and, independently, by a finite residue count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .enumeration import Cell, valid_cells

Rule = Callable[[int, int, int], bool]


@dataclass(frozen=True)
class VolumeCaseRule:
    label: str
    applies: Rule
    log_volume: Callable[[int, int, int], int]  # exponent of p

    def value(self, p: int, c: Cell) -> Fraction:
        return Fraction(p) ** self.log_volume(*c)


_COMMON_R_LT_L = [
    VolumeCaseRule("r<l, r<k", lambda k, l, r: r < l and r < k, lambda k, l, r: 2 * r - k - l),
    VolumeCaseRule("r<l, r>=k, k+l>2r", lambda k, l, r: r < l and r >= k and k + l > 2 * r, lambda k, l, r: 2 * r - k - l),
    VolumeCaseRule("r<l, r>=k, k+l<=2r", lambda k, l, r: r < l and r >= k and k + l <= 2 * r, lambda k, l, r: 0),
]

ODD_RULES = [
    VolumeCaseRule("r>=l, r>=k", lambda k, l, r: r >= l and r >= k, lambda k, l, r: 0),
    VolumeCaseRule("r>=l, r<k", lambda k, l, r: r >= l and r < k, lambda k, l, r: r - k),
    *_COMMON_R_LT_L,
]

# at p = 2 the factor 2 in 2 p^l a32 adds one to the valuation when r > l
TWO_RULES = [
    VolumeCaseRule("r>=l, r>=k", lambda k, l, r: r >= l and r >= k, lambda k, l, r: 0),
    VolumeCaseRule("r>l, r<k", lambda k, l, r: r > l and r < k, lambda k, l, r: r - k + 1),
    VolumeCaseRule("r=l, r<k", lambda k, l, r: r == l and r < k, lambda k, l, r: r - k),
    *_COMMON_R_LT_L,
]


class InvalidCell(ValueError):
    pass


def rules_for(p: int) -> list[VolumeCaseRule]:
    return TWO_RULES if p == 2 else ODD_RULES


def matching_rule(p: int, c: Cell) -> VolumeCaseRule:
    c = Cell(*c)
    if not c.is_valid():
        raise InvalidCell(f"cell {tuple(c)} violates l <= 2r or k <= l + r")
    hits = [rule for rule in rules_for(p) if rule.applies(*c)]
    if len(hits) != 1:
        raise AssertionError(f"{len(hits)} volume rules match cell {tuple(c)} at p={p}")
    return hits[0]


def mu_closed(p: int, c: Cell) -> Fraction:
    return matching_rule(p, c).value(p, Cell(*c))


def oracle_moduli(c: Cell) -> tuple[int, int]:
    """Exponents ``(A, B)`` such that the condition depends only on
    ``a21 mod p^A`` and ``a32 mod p^B``."""
    k, l, r = c
    e = k + l - r
    return max(0, e - r), max(0, e - l)


def mu_oracle(p: int, c: Cell, full_modulus: bool = False) -> Fraction:
    """Residue count of the valuation condition divided by the number of residues.

    By default each variable runs modulo the smallest power of ``p`` the
    condition can see (``a21`` mod ``p^(k+l-2r)``, ``a32`` mod ``p^(k-r)``);
    ``full_modulus`` uses ``p^(k+l+1)`` for both, which is slower but makes no
    use of that argument.
    """
    c = Cell(*c)
    if not c.is_valid():
        raise InvalidCell(f"cell {tuple(c)} violates l <= 2r or k <= l + r")
    k, l, r = c
    e = k + l - r
    if full_modulus:
        A = B = k + l + 1
    else:
        A, B = oracle_moduli(c)
    if e <= 0:
        return Fraction(1)
    mod = p**e
    two_pl, pr = 2 * p**l, p**r
    hits = 0
    for a21 in range(p**A):
        base = pr * a21
        for a32 in range(p**B):
            if (two_pl * a32 - base) % mod == 0:
                hits += 1
    return Fraction(hits, p ** (A + B))


class NonIntegralCell(ArithmeticError):
    pass


def local_series_via_cells(p: int, order: int) -> list[int]:
    """``c_m = sum over cells of weight m of p^(2k+l) * mu``."""
    out = []
    for m in range(order + 1):
        total = 0
        for c in valid_cells(m):
            contrib = p ** (2 * c.k + c.l) * mu_closed(p, c)
            if contrib.denominator != 1:
                raise NonIntegralCell(f"cell {tuple(c)} at p={p} gives {contrib}")
            total += contrib.numerator
        out.append(total)
    return out
