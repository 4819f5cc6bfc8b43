import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from racahdist import dist
from racahdist.dist import (
    BadRow,
    OutOfCone,
    NotSpecialCase,
    Params,
    build_table,
    casimir_check,
    casimir_eta,
    casimir_eta_printed,
    cdf,
    expectation_half,
    moments,
    pmf_hahn,
    pmf_racah,
    pmf_special,
    recurrence_residual,
    recurrence_residual_printed,
    special_case_name,
    support_max,
    two_row_dim,
    validate_params,
    zonal_omega,
)


def cone_tuples(n_lo, n_hi):
    for n in range(n_lo, n_hi + 1):
        for m in range(n + 1):
            for k in range(n + 1):
                for l in range(max(0, m + k - n), min(m, k) + 1):
                    yield Params(n, m, k, l)


@st.composite
def cone_params(draw, n_max=20):
    n = draw(st.integers(0, n_max))
    m = draw(st.integers(0, n))
    k = draw(st.integers(0, n))
    l = draw(st.integers(max(0, m + k - n), min(m, k)))
    return Params(n, m, k, l)


# ------------------------------------------------------------ validation

@pytest.mark.parametrize("n,m,k,l", [
    (4, 5, 2, 1),    # m > n
    (4, -1, 2, 1),   # m < 0
    (4, 2, 5, 2),    # k > n
    (4, 2, 2, 3),    # l > min(m, k)
    (6, 4, 4, 1),    # l < m + k - n
    (-1, 0, 0, 0),   # n < 0
])
def test_validate_rejects(n, m, k, l):
    with pytest.raises(OutOfCone):
        validate_params(n, m, k, l)


def test_params_derived_quantities():
    p = validate_params(10, 4, 5, 2)
    assert (p.M, p.N, p.K) == (2, 3, 3)
    assert p.reduced() == p
    q = validate_params(10, 7, 5, 2)
    assert q.reduced() == Params(10, 3, 5, 3)
    assert support_max(q) == 3


def test_two_row_dim():
    assert [two_row_dim(4, x) for x in range(3)] == [1, 3, 2]
    assert two_row_dim(0, 0) == 1
    with pytest.raises(BadRow):
        two_row_dim(4, 3)
    with pytest.raises(BadRow):
        two_row_dim(4, -1)


def test_zonal_omega_is_normalized():
    # omega(i=0) = 1, and omega(i) at x = 0 is 1 as well
    for n, m in [(6, 2), (6, 3), (9, 4)]:
        for i in range(m + 1):
            assert zonal_omega(n, m, 0, i) == 1
        for x in range(m + 1):
            assert zonal_omega(n, m, x, 0) == 1


# ------------------------------------------------------------ pmf routes

def test_pmf_hand_values():
    p = validate_params(4, 2, 2, 1)
    table = [mpq(1, 3), mpq(1, 2), mpq(1, 6)]
    for x, want in enumerate(table):
        assert pmf_hahn(p, x) == want
        assert pmf_racah(p, x) == want
    # a Dicke state alone: p(x) = dim / binom(n, m)
    q = validate_params(2, 1, 1, 0)
    assert pmf_racah(q, 0) == mpq(1, 2)
    assert pmf_racah(q, 1) == mpq(1, 2)


def test_pmf_outside_support_is_zero():
    p = validate_params(9, 4, 3, 2)
    s = support_max(p)
    assert s == 3
    for x in (s + 1, s + 2, p.n // 2, -1):
        assert pmf_hahn(p, x) == 0
        assert pmf_racah(p, x) == 0


def test_routes_agree_exhaustively_small():
    for p in cone_tuples(0, 6):
        s = support_max(p)
        for x in range(s + 1):
            assert pmf_hahn(p, x) == pmf_racah(p, x), (p, x)


@settings(max_examples=120, deadline=None)
@given(cone_params(n_max=18))
def test_routes_agree_random(p):
    x = random.Random(hash(p) & 0xFFFF).randint(0, max(support_max(p), 0))
    assert pmf_hahn(p, x) == pmf_racah(p, x)


@settings(max_examples=80, deadline=None)
@given(cone_params(n_max=16))
def test_row_swap_symmetry(p):
    """Swapping m -> n - m, l -> k - l leaves the distribution alone."""
    q = Params(p.n, p.n - p.m, p.k, p.k - p.l)
    assert build_table(p) == build_table(q)


# ------------------------------------------------------------ special cases

@pytest.mark.parametrize("n,m,k,l,name", [
    (8, 3, 3, 3, "mn_zero"),     # M = m - l = 0
    (7, 3, 2, 2, "k_eq_l"),
    (9, 4, 3, 0, "l_zero"),
    (8, 3, 2, 1, None),
])
def test_special_case_names(n, m, k, l, name):
    assert special_case_name(validate_params(n, m, k, l)) == name


def test_special_routes_match_racah():
    for p in cone_tuples(0, 7):
        name = special_case_name(p)
        if name is None:
            with pytest.raises(NotSpecialCase):
                pmf_special(p, 0)
            continue
        for x in range(support_max(p) + 1):
            assert pmf_special(p, x) == pmf_racah(p, x), (p, x, name)


def test_mn_zero_is_pure_dimension_ratio():
    # M*N = 0 collapses the law to dim(x) / binom(n, m)
    p = validate_params(10, 4, 4, 4)
    from racahdist.exact import binom
    for x in range(support_max(p) + 1):
        assert pmf_racah(p, x) == mpq(two_row_dim(10, x), binom(10, 4))


# ------------------------------------------------------------ table / cdf

@settings(max_examples=60, deadline=None)
@given(cone_params(n_max=24))
def test_table_is_distribution(p):
    table = build_table(p)
    assert sum(table) == 1
    assert all(v >= 0 for v in table)
    assert len(table) == support_max(p) + 1


def test_cdf_matches_prefix_sums():
    for p in cone_tuples(0, 6):
        table = build_table(p)
        acc = mpq(0)
        for x, v in enumerate(table):
            acc += v
            assert cdf(p, x) == acc
        assert cdf(p, support_max(p)) == 1
        assert cdf(p, p.n) == 1
        assert cdf(p, -1) == 0


def test_build_table_thread_env(monkeypatch):
    monkeypatch.setenv(dist.THREADS_ENV, "3")
    p = validate_params(20, 8, 10, 5)
    threaded = build_table(p)
    monkeypatch.delenv(dist.THREADS_ENV)
    assert threaded == build_table(p)


# ------------------------------------------------------------ recurrence

def test_recurrence_residual_vanishes():
    for p in cone_tuples(1, 7):
        r = p.reduced()
        table = build_table(r)
        for x in range(len(table)):
            prev = table[x - 1] if x >= 1 else mpq(0)
            nxt = table[x + 1] if x + 1 < len(table) else mpq(0)
            assert recurrence_residual(r, x, prev, table[x], nxt) == 0, (p, x)


def test_recurrence_rejects_bad_index():
    p = validate_params(6, 2, 3, 1)
    with pytest.raises(ValueError):
        recurrence_residual(p, 3, mpq(0), mpq(0), mpq(0))


def test_transposed_fraction_variant_fails():
    # regression witness: the variant with the two weight fractions
    # transposed is not satisfied by the actual distribution
    p = validate_params(4, 2, 2, 1)
    table = build_table(p)
    bad = recurrence_residual_printed(p, 1, table[0], table[1], table[2])
    assert bad == mpq(-317, 2592)
    good = recurrence_residual(p, 1, table[0], table[1], table[2])
    assert good == 0


# ------------------------------------------------------------ moments

def test_moments_hand_value():
    p = validate_params(4, 2, 2, 1)
    assert moments(p, 0) == 1
    assert moments(p, 1) == mpq(5, 6)
    assert moments(p, 2) == mpq(7, 6)
    with pytest.raises(ValueError):
        moments(p, 3)


def test_casimir_identity_exhaustive():
    for p in cone_tuples(1, 7):
        eta, residual = casimir_check(p)
        assert residual == 0, p
        table = build_table(p)
        spectral = sum(mpq((p.n - 2 * x) * (p.n - 2 * x + 2)) * v
                       for x, v in enumerate(table))
        assert spectral == (p.n - 2 * p.m) ** 2 + 2 * p.n + 4 * p.M * p.N, p


def test_casimir_eta_printed_variant_differs():
    p = validate_params(4, 2, 2, 1)
    assert casimir_eta(p) == mpq(3, 16)
    assert casimir_eta_printed(p) == mpq(7, 16)
    # the printed numerator only agrees when m = n
    q = validate_params(5, 5, 2, 2)
    assert casimir_eta(q) == casimir_eta_printed(q)


def test_eta_undefined_at_zero():
    with pytest.raises(ValueError):
        casimir_eta(Params(0, 0, 0, 0))


# ------------------------------------------------------------ half filling

@pytest.mark.parametrize("m", range(0, 7))
def test_expectation_half_matches_table(m):
    for k in range(2 * m + 1):
        for l in range(max(0, k - m), min(m, k) + 1):
            p = validate_params(2 * m, m, k, l)
            assert expectation_half(m, k, l) == moments(p, 1), (m, k, l)
