import pytest

from trunczeta import closed_forms as cf
from trunczeta.closed_forms import CATALOG, DERIVED, TWO_ONLY
from trunczeta.enumeration import count_cocyclic, count_subrings
from trunczeta.exact import parse_rf, rf_equal, rf_series


def test_odd_subring_factor():
    f = cf.subring_local_factor("odd")
    assert rf_series(f, 3, 2) == [1, 1, 13]
    assert rf_series(f, 5, 1) == [1, 1]


def test_two_subring_display_and_case_sum():
    assert rf_series(cf.subring_local_factor("two"), 2, 2) == [1, 1, 5]
    t = cf.subring_two_case_sum()
    assert rf_series(t, 2, 3) == [1, 1, 7, 19]
    assert rf_series(t, 2, 0) == [1]


def test_cocyclic_factor_forms():
    thm = cf.cocyclic_local_factor("odd", "theorem")
    alt = cf.cocyclic_local_factor("odd", "derived")
    assert rf_equal(thm, alt)
    assert rf_series(thm, 3, 2) == [1, 1, 9]
    assert rf_series(cf.cocyclic_local_factor("two"), 2, 3) == [1, 1, 4, 8]
    with pytest.raises(cf.UnavailableForm):
        cf.cocyclic_local_factor("two", "derived")
    with pytest.raises(ValueError):
        cf.cocyclic_local_factor("three")


def test_case_sum_lookup():
    assert rf_equal(cf.case_sum("T3"), CATALOG["F2"])
    with pytest.raises(cf.UnknownFormula):
        cf.case_sum("F9")


def test_identity_report():
    rep = cf.verify_case_identities()
    assert rep.by_pair("F1+..+F5", "SUBRING_ODD").equal
    assert rep.by_pair("Z1+..+Z6", "COCYCLIC_ODD_DERIVED").equal
    assert rep.by_pair("COCYCLIC_ODD_THM", "COCYCLIC_ODD_ALT").equal
    t = rep.by_pair("T1+..+T6", "SUBRING_TWO_DISPLAYED")
    assert not t.equal and t.mismatch == (2, 7, 5)
    e = rep.by_pair("E1+..+E6", "COCYCLIC_TWO_DISPLAYED")
    assert not e.equal and e.mismatch == (6, 112, 176)


def test_functional_equation():
    assert cf.functional_equation_monomial(CATALOG["SUBRING_ODD"]) == (3, 3, -1)
    assert cf.functional_equation_monomial(parse_rf("1", "(1-x)")) == (0, 1, -1)
    # recorded finding: the cocyclic odd factor has no such symmetry
    assert cf.functional_equation_monomial(CATALOG["COCYCLIC_ODD_THM"]) is None


def _primes_for(name):
    if name in TWO_ONLY or name in DERIVED:
        return (2,)
    return (2, 3, 5, 7)


@pytest.mark.parametrize("name", sorted(set(CATALOG) | set(DERIVED)))
def test_series_are_nonnegative_integers(name):
    f = CATALOG.get(name) or DERIVED[name]
    for p in _primes_for(name):
        s = rf_series(f, p, 12)
        assert all(isinstance(c, int) for c in s)
        if name == "E6":
            # a single case with a negative count: the displayed E6 is mis-summed
            assert s[6] == -16
            continue
        assert min(s) >= 0, (name, p, s)


def _e6_direct(order, top):
    # cells (k, l, l + 1), l + 3 <= k <= top(l), each holding 2^k (2^(2l+2) - 2^(2l+1)) cocyclic subrings
    out = [0] * (order + 1)
    for l in range(1, order):
        for k in range(l + 3, top(l) + 1):
            m = k + 2 * l + 1
            if m <= order:
                out[m] += 2**k * (2 ** (2 * l + 2) - 2 ** (2 * l + 1))
    return out


def test_corrected_e6_is_the_summed_range():
    order = 30
    assert rf_series(DERIVED["E6_CORRECTED"], 2, order) == _e6_direct(order, lambda l: 2 * l + 1)
    # the printed range stops at k = 2l, one short of k = l + r
    printed = _e6_direct(order, lambda l: 2 * l)
    assert printed[10] == 0 and printed[13] == 8192
    # and the displayed closed form matches neither
    assert rf_series(CATALOG["E6"], 2, 13)[13] == 2048


def test_corrected_cocyclic_two_matches_enumeration():
    counts = [count_cocyclic(2, m) for m in range(15)]
    assert rf_series(cf.cocyclic_two_corrected(), 2, 14) == counts
    assert rf_series(cf.cocyclic_two_case_sum(), 2, 14)[6] == 112


def test_two_case_sum_matches_enumeration_far_out():
    assert rf_series(cf.subring_two_case_sum(), 2, 12) == [count_subrings(2, m) for m in range(13)]
