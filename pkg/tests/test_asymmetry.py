import math
from fractions import Fraction

import pytest

from racahdist.asympt import Ratios, RegimeMismatch, limit_profile
from racahdist.asymmetry import (
    BadDeltas,
    BadEpsilon,
    distinguishability_bounds,
    entropy_avg,
    entropy_type1_approx,
    entropy_type2_constants,
    h_spectral,
)
from racahdist.dist import validate_params

LN2 = math.log(2.0)


def test_entropy_avg_hand_value():
    # table (1/3, 1/2, 1/6) against dimensions (1, 3, 2)
    p = validate_params(4, 2, 2, 1)
    want = math.log(3) / 3 + math.log(6) / 2 + math.log(12) / 6
    assert entropy_avg(p) == pytest.approx(want, abs=1e-14)
    assert entropy_avg(p, bits=True) == pytest.approx(want / LN2, abs=1e-14)


def test_entropy_avg_degenerate_cases():
    assert entropy_avg(validate_params(0, 0, 0, 0)) == 0.0
    # point mass on x = 0 with dim = 1: zero entropy
    assert entropy_avg(validate_params(5, 0, 0, 0)) == 0.0
    # when p(x) = dim(x)/binom(n,m) every term contributes log binom(n,m)
    p = validate_params(4, 2, 2, 2)
    assert entropy_avg(p) == pytest.approx(math.log(6), abs=1e-14)


def test_type1_approx_tracks_exact_entropy():
    xi, k, l = Fraction(1, 2), 2, 1
    gaps = []
    for n in (100, 1000):
        p = validate_params(n, n // 2, k, l)
        gaps.append(abs(entropy_avg(p)
                        - entropy_type1_approx(n, xi, k, l)))
    assert gaps[1] < gaps[0]
    assert gaps[1] < 0.1


def test_type1_approx_bits_scaling():
    a = entropy_type1_approx(300, 0.4, 3, 1)
    b = entropy_type1_approx(300, 0.4, 3, 1, bits=True)
    assert b == pytest.approx(a / LN2, rel=1e-14)
    with pytest.raises(ValueError):
        entropy_type1_approx(0, 0.4, 3, 1)


def test_type2_constants_reference_family():
    r = Ratios(0.3, 0.2, 0.0, 0.5)
    c = entropy_type2_constants(r)
    prof = limit_profile(r)
    mu = prof.mu
    # C1 is the binary entropy of mu
    assert c["c1"] == pytest.approx(-mu * math.log(mu)
                                    - (1 - mu) * math.log(1 - mu),
                                    abs=1e-13)
    assert c["mu"] == mu
    assert c["sigma2"] == prof.sigma2
    for key in ("c2", "c3", "c4", "c5", "c6", "phi"):
        assert math.isfinite(c[key])


def test_type2_constants_leading_order():
    # S(n)/n converges to C1 along the ray
    r = Ratios(0.3, 0.2, 0.0, 0.5)
    c = entropy_type2_constants(r)
    for n, tol in ((200, 0.1), (800, 0.03)):
        p = validate_params(n, n // 2, 3 * n // 10, 3 * n // 10)
        assert abs(entropy_avg(p) / n - c["c1"]) < tol


def test_type2_constants_refuses_wrong_family():
    with pytest.raises(RegimeMismatch):
        entropy_type2_constants(Ratios(0.2, 0.2, 0.2, 0.4))  # gamma != 0
    with pytest.raises(RegimeMismatch):
        entropy_type2_constants(Ratios(0.25, 0.0, 0.0, 0.75))  # degenerate


def test_h_spectral_levels():
    p = validate_params(4, 2, 2, 1)
    assert h_spectral(p, 0.1) == pytest.approx(math.log(3), abs=1e-14)
    assert h_spectral(p, 0.4) == pytest.approx(math.log(6), abs=1e-14)
    assert h_spectral(p, 0.9) == pytest.approx(math.log(12), abs=1e-14)
    assert h_spectral(p, 0.4, bits=True) == pytest.approx(
        math.log2(6), abs=1e-14)


def test_h_spectral_boundary_is_strict():
    # table (3/4, 1/4) with dim (1, 3) has levels {4/3: 3/4, 12: 1/4};
    # inclusive cumulative mass must strictly exceed eps, and 0.75 is
    # exactly representable, so the first level is skipped right at it
    p = validate_params(4, 1, 1, 0)
    assert h_spectral(p, 0.74) == pytest.approx(math.log(4 / 3), abs=1e-14)
    assert h_spectral(p, 0.75) == pytest.approx(math.log(12), abs=1e-14)


def test_h_spectral_monotone_in_eps():
    p = validate_params(12, 5, 6, 3)
    grid = [0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95]
    vals = [h_spectral(p, e) for e in grid]
    assert vals == sorted(vals)
    assert vals[0] <= entropy_avg(p) <= vals[-1]


def test_h_spectral_rejects_bad_eps():
    p = validate_params(4, 2, 2, 1)
    for eps in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(BadEpsilon):
            h_spectral(p, eps)


def test_distinguishability_bounds():
    lo, hi = distinguishability_bounds(5.0, 7.0, 0.1, 0.01)
    assert lo == pytest.approx(5.0 - math.log(1.0 / 0.001), abs=1e-13)
    assert hi == pytest.approx(7.0 + math.log(1.0 / 1e-5), abs=1e-13)
    lo2, hi2 = distinguishability_bounds(5.0, 7.0, 0.1, 0.01, bits=True)
    assert lo2 == pytest.approx(lo / LN2, abs=1e-13)
    assert hi2 == pytest.approx(hi / LN2, abs=1e-13)
    with pytest.raises(BadDeltas):
        distinguishability_bounds(5.0, 7.0, 0.0, 0.01)
    with pytest.raises(BadDeltas):
        distinguishability_bounds(5.0, 7.0, 0.1, -1.0)
