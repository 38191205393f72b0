"""Acceptance criteria 1-9.

Each test prints one ``criterion N: PASS|FAIL`` line (outside pytest's
capture, so it shows up in a plain ``pytest -v`` log) and then asserts.
"""

import itertools
import time
from fractions import Fraction

import pytest

from trunczeta import closed_forms as cf
from trunczeta import dirichlet as dz
from trunczeta.enumeration import Cell, count_cell, count_cell_oracle, count_cocyclic, count_subrings, valid_cells
from trunczeta.exact import QuadraticRational, rf_eval_quadratic, rf_eval_real, rf_series
from trunczeta.ring import HNFSubringMatrix, closure_conditions, is_subring
from trunczeta.volume import mu_closed, mu_oracle


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}" + (f" - {detail}" if detail else ""))
        return ok

    return emit


@pytest.fixture
def note(capsys):
    def emit(text):
        with capsys.disabled():
            print(f"  {text}")

    return emit


def _first_divergence(a, b):
    return next(((m, x, y) for m, (x, y) in enumerate(zip(a, b)) if x != y), None)


def test_criterion_1_lemma_equivalence(report):
    start = time.perf_counter()
    bad, checked = [], 0
    for p in (2, 3, 5):
        for m in range(6):
            for k, l, r in valid_cells(m):
                for a21, a31, a32 in itertools.product(range(p**k), range(p**k), range(p**l)):
                    M = HNFSubringMatrix(p, k, l, r, a21, a31, a32)
                    checked += 1
                    if is_subring(M) != closure_conditions(M):
                        bad.append((p, k, l, r, a21, a31, a32))
                if count_cell(p, Cell(k, l, r)) != count_cell_oracle(p, Cell(k, l, r)):
                    bad.append((p, k, l, r))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(1, ok, f"{checked} HNF bases, {len(bad)} disagreements, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 60


def test_criterion_2_odd_subring_counts(report):
    start = time.perf_counter()
    mismatches = []
    for p in (3, 5, 7):
        series = rf_series(cf.CATALOG["SUBRING_ODD"], p, 8)
        counts = [count_subrings(p, m) for m in range(9)]
        if series != counts:
            mismatches.append((p, _first_divergence(counts, series)))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    report(2, ok, f"p in (3,5,7), m<=8, {elapsed:.1f}s" + (f", mismatches {mismatches}" if mismatches else ""))
    assert not mismatches
    assert elapsed < 60


def test_criterion_3_two_subring_counts(report, note):
    counts = [count_subrings(2, m) for m in range(11)]
    tsum = rf_series(cf.subring_two_case_sum(), 2, 10)
    display = rf_series(cf.CATALOG["SUBRING_TWO_DISPLAYED"], 2, 10)
    ok = tsum == counts
    report(3, ok, "T-case sum == enumeration for m<=10")
    div = _first_divergence(counts, display)
    if div:
        note(f"consolidated p=2 display first diverges at X^{div[0]}: enumerated {div[1]}, displayed {div[2]}")
    else:
        note("consolidated p=2 display agrees with enumeration for m<=10")
    assert ok


def test_criterion_4_cocyclic_counts(report, note):
    odd_ok = all(
        rf_series(cf.CATALOG["COCYCLIC_ODD_THM"], p, 8) == [count_cocyclic(p, m) for m in range(9)] for p in (3, 5)
    )
    counts = [count_cocyclic(2, m) for m in range(11)]
    display = rf_series(cf.CATALOG["COCYCLIC_TWO_DISPLAYED"], 2, 10)
    esum = rf_series(cf.cocyclic_two_case_sum(), 2, 10)
    corrected = rf_series(cf.cocyclic_two_corrected(), 2, 10)
    hand_ok = counts[:4] == display[:4] == [1, 1, 4, 8]
    corrected_ok = corrected == counts
    ok = odd_ok and hand_ok and corrected_ok
    report(4, ok, "p in (3,5) m<=8 exact; p=2 display m<=3 exact; re-summed E-case sum m<=10 exact")
    div = _first_divergence(counts, display)
    if div:
        note(f"p=2 cocyclic display first diverges at X^{div[0]}: enumerated {div[1]}, displayed {div[2]}")
        ediv = _first_divergence(counts, esum)
        note(f"E1+..+E6 at that point: {esum[div[0]]}; E-case sum first diverges at "
             + (f"X^{ediv[0]} ({ediv[1]} vs {ediv[2]})" if ediv else "nowhere"))
        note(f"enumerated p=2 cocyclic counts m<=10: {counts}")
    assert odd_ok
    assert hand_ok
    assert corrected_ok


def test_criterion_5_volume_identity(report):
    bad = []
    for p in (2, 3, 5):
        for k, l, r in itertools.product(range(5), repeat=3):
            c = Cell(k, l, r)
            if not c.is_valid():
                continue
            mu = mu_closed(p, c)
            if not isinstance(mu, Fraction) or mu != mu_oracle(p, c) or p ** (2 * k + l) * mu != count_cell(p, c):
                bad.append((p, k, l, r))
    ok = not bad
    report(5, ok, "mu_closed == mu_oracle and p^(2k+l) mu == cell count, k,l,r<=4, p in (2,3,5)"
           + (f"; bad {bad}" if bad else ""))
    assert ok


def test_criterion_6_symbolic_identities(report):
    results = {
        "F-sum == SUBRING_ODD": cf.subring_odd_case_sum() == cf.CATALOG["SUBRING_ODD"],
        "Z-sum == COCYCLIC_ODD_DERIVED": cf.cocyclic_odd_case_sum() == cf.CATALOG["COCYCLIC_ODD_DERIVED"],
        "THM == ALT": cf.CATALOG["COCYCLIC_ODD_THM"] == cf.CATALOG["COCYCLIC_ODD_ALT"],
        "FE monomial (3,3,-1)": cf.functional_equation_monomial(cf.CATALOG["SUBRING_ODD"]) == (3, 3, -1),
    }
    ok = all(results.values())
    report(6, ok, ", ".join(f"{k}: {v}" for k, v in results.items()))
    assert ok


def test_criterion_7_two_adic_special_value(report, note):
    target = QuadraticRational(Fraction(758, 336), Fraction(277, 336))
    value = rf_eval_quadratic(cf.cocyclic_two_case_sum())
    numeric = float(value)
    real_path = rf_eval_real(cf.cocyclic_two_case_sum(), 2, 1.5)
    ok = value == target and abs(numeric - 3.42184) < 5e-6 and abs(numeric - 3.422) < 5e-4 and abs(real_path - numeric) < 1e-12
    report(7, ok, f"E1+..+E6 at s=3/2 = {value} = {numeric:.6f}")
    display = rf_eval_quadratic(cf.CATALOG["COCYCLIC_TWO_DISPLAYED"])
    corrected = rf_eval_quadratic(cf.cocyclic_two_corrected())
    note(f"consolidated display evaluates to {display} = {float(display):.6f}")
    note(f"re-summed (enumeration-verified) factor evaluates to {corrected} = {float(corrected):.6f}")
    assert ok


def test_criterion_8_constants(report, note):
    c4, c5 = dz.constant_C(10**4), dz.constant_C(10**5)
    d4, d5 = dz.constant_D(10**4), dz.constant_D(10**5)
    rel_c = abs(c5.value - c4.value) / c5.value
    rel_d = abs(d5.value - d4.value) / d5.value
    z2 = abs(dz.riemann_zeta_real(2) - 1.6449340668482264)
    z4 = abs(dz.riemann_zeta_real(4) - 1.0823232337111382)
    ok = rel_c < 1e-4 and rel_d < 1e-4 and z2 < 1e-10 and z4 < 1e-10
    report(8, ok, f"C={c5.value:.8f} (rel drift {rel_c:.1e}), D={d5.value:.8f} (rel drift {rel_d:.1e}), "
                  f"zeta(2) err {z2:.1e}, zeta(4) err {z4:.1e}")
    plain4, plain5 = dz.constant_D(10**4, accelerate=0), dz.constant_D(10**5, accelerate=0)
    note(f"without acceleration D drifts {abs(plain5.value - plain4.value) / plain5.value:.1e} between the same bounds")
    assert ok


def test_criterion_9_growth(report, note):
    start = time.perf_counter()
    B = 10**6
    (_, s, ratio), = dz.growth_diagnostic([B])
    C = dz.constant_C(10**5).value
    C_alt = dz.constant_C(10**5, prefactor=dz.two_adic_subring_prefactor()).value
    elapsed_sub = time.perf_counter() - start
    cc_all = dz.growth_diagnostic([10**4, 10**5, B], "cocyclic", "all")
    cc_odd = dz.growth_diagnostic([10**4, 10**5, B], "cocyclic", "odd")
    D = dz.constant_D(10**5).value
    elapsed = time.perf_counter() - start
    ok = 0.5 * C <= ratio <= 1.5 * C and elapsed < 300
    report(9, ok, f"s(10^6)/10^9 = {ratio:.4f}, band [{0.5 * C:.4f}, {1.5 * C:.4f}] around C = {C:.5f}, {elapsed:.1f}s")
    note(f"with the re-derived 2-adic prefactor C = {C_alt:.5f}; ratio/C = {ratio / C_alt:.3f}")
    for label, rows in (("all indices", cc_all), ("odd indices", cc_odd)):
        note(f"cocyclic, {label}: " + ", ".join(f"B={b}: {r:.4f} ({r / D:.3f} D)" for b, _, r in rows))
    note(f"D = {D:.6f}; odd-index constant zeta(2)/8 * odd product = {dz.riemann_zeta_real(2) / 8 * dz.constant_D(10**5).odd_product:.6f}")
    note(f"subring sieve time {elapsed_sub:.1f}s")
    assert ok
