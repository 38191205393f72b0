"""Catalog of the displayed local factors and their case sums.

Each entry is a verbatim transcription.  The p = 2 displays are written with
``p`` in place of the literal base ``2`` (``2^12 x^13`` becomes ``p^12 x^13``)
so that they become the printed integers under ``P := 2``.

Truth policy when sources disagree: enumeration, then case sums, then the
consolidated displays.  A display that disagrees with enumeration stays in
the catalog unchanged and is reported as an erratum candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .exact import Monomial, RationalFunction, normalize, parse_rf, rf_equal, rf_invert_variables, rf_series

Parity = Literal["odd", "two"]

_SOURCES: dict[str, tuple[str, str]] = {
    # consolidated factors
    "SUBRING_ODD": (
        "1+p x^2+p^2x^3-p^4x^5-2p^5x^6-2p^6x^7-p^7x^8+p^9x^10+p^10x^11+p^11x^13",
        "(1-p^5x^6)(1-p^4x^4)(1-p^3x^3)(1-p^2x^2)(1-x)",
    ),
    "SUBRING_TWO_DISPLAYED": (
        "p^12x^13-p^12x^12+p^11x^12+p^10x^11+p^9x^10-p^7x^8-p^7x^7"
        "+p^7x^6-p^6x^7-p^6x^6-p^5x^6-p^4x^5+p^2x^3+p x^2+1",
        "(1-x)(1-p x^2)(1-p^4x^4)(1-p^3x^3)(1-p^5x^6)",
    ),
    "COCYCLIC_ODD_THM": (
        "1+x+(p^3-p^2)x^3-p^3x^4-p^4x^5",
        "(1-p^2x^2)(1-p^4x^4)",
    ),
    "COCYCLIC_ODD_ALT": (
        "-p^3x^4+(p^2-p)x^2+(1-p)x+1",
        "(1-p x)(1-p^4x^4)",
    ),
    "COCYCLIC_TWO_DISPLAYED": (
        "1+x+p^2x^2-p^3x^4-p^4x^5+p^4x^6-p^5x^6-p^6x^6"
        "+p^7x^6+p^7x^8-p^7x^9-p^9x^8+p^8x^9+p^9x^8-p^8x^10+p^9x^10",
        "(1-p^4x^4)(1-p^3x^3)",
    ),
    # subrings, odd p
    "F1": ("p^4x^4", "(1-p^2x^2)(1-p^3x^3)(1-p^4x^4)"),
    "F2": ("1-p^3x^4", "(1-x)(1-p^2x^2)(1-p^3x^3)(1-p x^2)"),
    "F3": ("p^4x^5(1+p x-p^4x^4-p^8x^9)", "(1-p^3x^3)(1-p^3x^4)(1-p^4x^4)(1-p^5x^6)"),
    "F4": ("p^3x^4", "(1-p^3x^3)(1-p^3x^4)(1-p^2x^3)"),
    "F5": ("p^2x^3", "(1-p x^2)(1-p^2x^3)(1-p^3x^3)"),
    # subrings, p = 2 (T3..T6 are identified with F2..F5)
    "T1": ("p^7x^6", "(1-p^2x^2)(1-p^3x^3)(1-p^4x^4)"),
    "T2": ("p^4x^4", "(1-p^3x^3)(1-p^4x^4)"),
    # cocyclic, odd p
    "Z1": ("p x^2+x+1", "(1-p^2x^3)"),
    "Z2": ("p(p-1)x^2", "(1-x)(1-p^2x^2)"),
    "Z3": ("p(p-1)^2x^4(-p^3x^3-p^2x^2+p^2x+1)", "(1-x)(1-p^2x^2)(1-p^3x^3)(1-p x^2)"),
    "Z4": ("p^3(p-1)^2x^6", "(1-p x^2)(1-p^3x^3)(1-p^2x^3)"),
    "Z5": ("p(p-1)^2x^3", "(1-p x^2)(1-p^3x^3)"),
    "Z6": ("p^3(p-1)x^4", "(1-p^3x^3)(1-p^4x^4)"),
    # cocyclic, p = 2
    "E1": ("p x^2+x+1", "(1-p^2x^3)"),
    "E2": ("p(p-1)x^2", "(1-x)(1-p^2x^2)"),
    "E3": (
        "p(p-1)^2x^5(p^7x^6-p^7x^5-p^6x^4+p^5x^5+p^6x^3"
        "-p^5x^4-p^4x^3+p^4x^2-p^3x^3-p^2x^2+p^2x+1)",
        "(1-x)(1-p^2x^2)(1-p^3x^3)(1-p x^2)",
    ),
    "E4": ("p(p-1)^2x^3", "(1-p x^2)(1-p^3x^3)(1-p^2x^3)"),
    "E5": ("p(p-1)^2x^4(1+p^2x-p^3x^3+p^4x^2-p^5x^4)", "(1-p x^2)(1-p^3x^3)"),
    "E6": ("p^4(p-1)x^6(p^4x^4+p^3x^3-1)", "(1-p^3x^3)(1-p^4x^4)"),
}

CATALOG: dict[str, RationalFunction] = {name: parse_rf(*src) for name, src in _SOURCES.items()}
CATALOG["T3"] = CATALOG["F2"]
CATALOG["T4"] = CATALOG["F3"]
CATALOG["T5"] = CATALOG["F4"]
CATALOG["T6"] = CATALOG["F5"]
CATALOG["COCYCLIC_ODD_DERIVED"] = CATALOG["COCYCLIC_ODD_ALT"]


def _sum(names: list[str]) -> RationalFunction:
    total = RationalFunction(0)
    for n in names:
        total = total + CATALOG[n]
    return total


# Not transcriptions.  The sixth p = 2 cocyclic case runs over
# l + 3 <= k <= l + r = 2l + 1; summing that range gives the entry below,
# and the corrected E-sum matches enumeration where the displayed E6 does not.
DERIVED: dict[str, RationalFunction] = {
    "E6_CORRECTED": parse_rf("p^10(p-1)x^10", "(1-p^3x^3)(1-p^4x^4)"),
    "E_SUM": _sum([f"E{i}" for i in range(1, 7)]),
}
DERIVED["COCYCLIC_TWO_CORRECTED"] = _sum([f"E{i}" for i in range(1, 6)]) + DERIVED["E6_CORRECTED"]

# entries that only make sense at P = 2
TWO_ONLY = frozenset({"SUBRING_TWO_DISPLAYED", "COCYCLIC_TWO_DISPLAYED", "T1", "T2", "E1", "E2", "E3", "E4", "E5", "E6"})


class UnknownFormula(KeyError):
    pass


class UnavailableForm(LookupError):
    pass


def case_sum(name: str) -> RationalFunction:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownFormula(name) from None


def subring_local_factor(parity: Parity) -> RationalFunction:
    if parity == "odd":
        return CATALOG["SUBRING_ODD"]
    if parity == "two":
        return CATALOG["SUBRING_TWO_DISPLAYED"]
    raise ValueError(f"parity must be 'odd' or 'two', got {parity!r}")


def subring_two_case_sum() -> RationalFunction:
    return _sum(["T1", "T2", "T3", "T4", "T5", "T6"])


def subring_odd_case_sum() -> RationalFunction:
    return _sum(["F1", "F2", "F3", "F4", "F5"])


def cocyclic_odd_case_sum() -> RationalFunction:
    return _sum([f"Z{i}" for i in range(1, 7)])


def cocyclic_two_case_sum() -> RationalFunction:
    return DERIVED["E_SUM"]


def cocyclic_two_corrected() -> RationalFunction:
    return DERIVED["COCYCLIC_TWO_CORRECTED"]


def cocyclic_local_factor(parity: Parity, form: Literal["theorem", "derived"] = "theorem") -> RationalFunction:
    if parity == "odd":
        if form == "theorem":
            return CATALOG["COCYCLIC_ODD_THM"]
        if form == "derived":
            return CATALOG["COCYCLIC_ODD_ALT"]
        raise ValueError(f"form must be 'theorem' or 'derived', got {form!r}")
    if parity == "two":
        if form == "derived":
            raise UnavailableForm("only the displayed p = 2 cocyclic factor exists")
        return CATALOG["COCYCLIC_TWO_DISPLAYED"]
    raise ValueError(f"parity must be 'odd' or 'two', got {parity!r}")


def first_mismatch(f: RationalFunction, g: RationalFunction, p: int, order: int) -> tuple[int, int, int] | None:
    """``(m, f_m, g_m)`` for the first differing series coefficient, if any."""
    for m, (a, b) in enumerate(zip(rf_series(f, p, order), rf_series(g, p, order))):
        if a != b:
            return (m, a, b)
    return None


@dataclass
class IdentityVerdict:
    left: str
    right: str
    equal: bool
    prime: int
    mismatch: tuple[int, int, int] | None = None

    def to_dict(self) -> dict:
        out = {"left": self.left, "right": self.right, "equal": self.equal, "prime": self.prime}
        if self.mismatch is not None:
            m, a, b = self.mismatch
            out["first_mismatch"] = {"m": m, "left": a, "right": b}
        return out


@dataclass
class IdentityReport:
    verdicts: list[IdentityVerdict] = field(default_factory=list)

    def by_pair(self, left: str, right: str) -> IdentityVerdict:
        for v in self.verdicts:
            if (v.left, v.right) == (left, right):
                return v
        raise KeyError((left, right))


def verify_case_identities(order: int = 20) -> IdentityReport:
    """Compare each consolidated display with the sum of its cases.

    Symbolic equality is decided for odd-p identities.  Entries only valid at
    ``P = 2`` are compared through their series at ``p = 2``.
    """
    checks = [
        ("F1+..+F5", subring_odd_case_sum(), "SUBRING_ODD", None),
        ("T1+..+T6", subring_two_case_sum(), "SUBRING_TWO_DISPLAYED", 2),
        ("Z1+..+Z6", cocyclic_odd_case_sum(), "COCYCLIC_ODD_DERIVED", None),
        ("Z1+..+Z6", cocyclic_odd_case_sum(), "COCYCLIC_ODD_THM", None),
        ("COCYCLIC_ODD_THM", CATALOG["COCYCLIC_ODD_THM"], "COCYCLIC_ODD_ALT", None),
        ("E1+..+E6", cocyclic_two_case_sum(), "COCYCLIC_TWO_DISPLAYED", 2),
    ]
    report = IdentityReport()
    for left_name, left, right_name, p in checks:
        right = CATALOG[right_name]
        if p is None:
            equal = rf_equal(left, right)
            probe = 3
        else:
            equal = rf_series(left, p, order) == rf_series(right, p, order)
            probe = p
        mismatch = None if equal else first_mismatch(left, right, probe, order)
        report.verdicts.append(IdentityVerdict(left_name, right_name, equal, probe, mismatch))
    return report


def functional_equation_monomial(f: RationalFunction) -> tuple[int, int, int] | None:
    """``(u, v, sign)`` with ``f(1/P, 1/X) == sign * P^u X^v * f(P, X)``, or None."""
    m_f, f_norm = normalize(f)
    m_inv, g = rf_invert_variables(f)
    # f(1/P,1/X) = m_inv * g ; f = m_f * f_norm
    if rf_equal(g, f_norm):
        rel = m_inv
    elif rf_equal(g, -f_norm):
        rel = m_inv * Monomial(-1, 0, 0)
    else:
        return None
    # g = +-f_norm = +-f / m_f
    total = rel * m_f.inverse()
    return total.as_tuple()
