"""Entropy-based asymmetry measures of the projected state.

The averaged (symmetrized) state is block diagonal with eigenvalue
p(x)/dim(n-x,x) repeated dim(n-x,x) times, so its von Neumann entropy is
S = sum_x p(x) (log dim - log p(x)), and the smoothed spectral entropy
H_s^eps is a quantile of the random variable log dim - log p(X).  Exact
rationals are kept until the final logarithm, which keeps tiny tail masses
(far below float range) honest.
"""

from __future__ import annotations

import math
from fractions import Fraction

from gmpy2 import mpq

from .asympt import Ratios, Regime, RegimeMismatch, limit_profile, type1_table
from .dist import Params, build_table, two_row_dim, validate_params
from .exact import log_rational

LN2 = math.log(2.0)


class BadEpsilon(ValueError):
    """Smoothing parameter must satisfy 0 < eps < 1."""


class BadDeltas(ValueError):
    """Smoothing splits must be positive (and small enough to use)."""


def _scaled(value_nats: float, bits: bool) -> float:
    return value_nats / LN2 if bits else value_nats


def entropy_avg(p: Params, bits: bool = False) -> float:
    """von Neumann entropy of the symmetrized state, S = sum p (log dim/p).

    Computed from the exact pmf table; each log is taken on the exact
    rational dim/p(x), so underflowing tail terms still contribute.
    """
    p = validate_params(p.n, p.m, p.k, p.l)
    table = build_table(p)
    total = 0.0
    for x, v in enumerate(table):
        if v == 0:
            continue
        ratio = mpq(two_row_dim(p.n, x)) / v
        total += float(v) * log_rational(ratio)
    return _scaled(total, bits)


def entropy_type1_approx(n: int, xi, k: int, l: int,
                         bits: bool = False) -> float:
    """Closed-form entropy approximation in the fixed-(k, l) limit.

    Uses the Stirling expansion log C(n,x) = x log n + x - (x + 1/2) log x
    - log sqrt(2 pi) + o(1) termwise against the limit law q(x), with the
    x = 0 term taken exactly (log C(n,0) = 0):

        a(n) = sum_x q(x) (L(x) - log q(x)),
        L(0) = 0,  L(x) = x log n + x - (x + 1/2) log x - log sqrt(2 pi).

    The mean of log dim under q grows like u log n with
    u = (k - l) xi + l (1 - xi).
    """
    if n <= 0:
        raise ValueError("n must be positive")
    table = type1_table(xi, k, l)
    log_n = math.log(n)
    half_log_2pi = 0.5 * math.log(2.0 * math.pi)
    total = 0.0
    for x, q in enumerate(table):
        qf = float(q)
        if qf == 0.0:
            continue
        if x == 0:
            stirling = 0.0
        else:
            stirling = (x * log_n + x - (x + 0.5) * math.log(x)
                        - half_log_2pi)
        total += qf * (stirling - math.log(qf))
    return _scaled(total, bits)


def entropy_type2_constants(r: Ratios) -> dict[str, float]:
    """Expansion coefficients of S = n C1 + C2 + C3 phi + C4 sigma2 + o(1).

    Valid in the generic regime with gamma = 0 and xi <= 1/2.  Returns all
    six coefficients of the quadratic spectral expansion (C5, C6 weight the
    z/n and z^2/n^2 terms) plus mu and sigma2; C1 always equals the binary
    entropy h(mu), which the tests verify separately.
    """
    prof = limit_profile(r)
    if r.gamma != 0.0:
        raise RegimeMismatch("entropy expansion requires gamma = 0")
    if prof.regime is not Regime.GENERIC or prof.xi > 0.5:
        raise RegimeMismatch("entropy expansion needs alpha, beta, delta "
                             "> 0 and xi <= 1/2")
    alpha, beta = r.alpha, r.beta
    xi, mu = prof.xi, prof.mu

    def h(t: float) -> float:
        if t <= 0.0 or t >= 1.0:
            return 0.0
        return -t * math.log(t) - (1.0 - t) * math.log(1.0 - t)

    def h1(t: float) -> float:
        return math.log((1.0 - t) / t)

    def h2(t: float) -> float:
        return -1.0 / (t * (1.0 - t))

    rest = 1.0 - alpha - mu          # 1 - alpha - mu, the third block size
    frac = beta / rest
    c1 = h(xi) + xi * h(mu / xi) - alpha * h(mu / alpha) - rest * h(frac)
    c2 = 0.5 * math.log(alpha * beta / (xi ** 2 * (1.0 - xi)) * (1.0 - frac))
    c3 = h1(mu / xi) - h1(mu / alpha) + h(frac) - frac * h1(frac)
    c4 = (h2(mu / xi) / (2.0 * xi) - h2(mu / alpha) / (2.0 * alpha)
          - beta ** 2 / (2.0 * rest ** 3) * h2(frac))
    c5 = -0.5 * beta / (rest * (rest - beta))
    c6 = 0.25 * (1.0 / rest ** 2 - 1.0 / (rest - beta) ** 2)
    return {"c1": c1, "c2": c2, "c3": c3, "c4": c4, "c5": c5, "c6": c6,
            "mu": mu, "sigma2": prof.sigma2, "phi": prof.phi}


def h_spectral(p: Params, eps: float, bits: bool = False) -> float:
    """Smoothed spectral entropy H_s^eps of the symmetrized state.

    H_s^eps = sup{ lambda : P[log dim - log p(X) <= lambda] <= eps }.
    The attained values are sorted by the exact ratio dim/p(x) and the sup
    is the first value whose inclusive cumulative mass exceeds eps; the
    comparison against eps is performed in exact arithmetic.
    """
    if not 0.0 < eps < 1.0:
        raise BadEpsilon(f"need 0 < eps < 1, got {eps}")
    p = validate_params(p.n, p.m, p.k, p.l)
    table = build_table(p)
    levels: dict[mpq, mpq] = {}
    for x, v in enumerate(table):
        if v == 0:
            continue
        ratio = mpq(two_row_dim(p.n, x)) / v
        levels[ratio] = levels.get(ratio, mpq(0)) + v
    threshold = mpq(Fraction(eps))
    cum = mpq(0)
    for ratio in sorted(levels):
        cum += levels[ratio]
        if cum > threshold:
            return _scaled(log_rational(ratio), bits)
    raise AssertionError("unreachable: total mass 1 exceeds eps < 1")


def distinguishability_bounds(h_lo: float, h_hi: float, delta1: float,
                              delta2: float,
                              bits: bool = False) -> tuple[float, float]:
    """Two-sided bounds on the log size of a distinguishable message set.

    Given H_s^(eps - delta1 - delta2) as h_lo and H_s^(eps + delta1 +
    2 delta2) as h_hi (both in nats), the achievable log count is within

        [h_lo - log(1/(delta1 delta2)), h_hi + log(1/(delta1 delta2^2))].

    Computing the two shifted quantiles is the caller's job; this helper
    just applies the penalty terms.
    """
    if not (0.0 < delta1 and 0.0 < delta2):
        raise BadDeltas(f"deltas must be positive, got {delta1}, {delta2}")
    lower = h_lo - math.log(1.0 / (delta1 * delta2))
    upper = h_hi + math.log(1.0 / (delta1 * delta2 ** 2))
    return _scaled(lower, bits), _scaled(upper, bits)
