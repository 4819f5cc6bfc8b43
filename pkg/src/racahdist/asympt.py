"""Large-n behavior: limit profiles, local limit laws, the CLT comparison,
and large-deviation rate functions.

Everything here works in floating point; the exact layer (dist) supplies
reference values where tests need them.  Ratios (alpha, beta, gamma, delta)
are the n -> infinity scaling limits of (l, m-l, k-l, n-m-k+l)/n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import minimize_scalar

from .dist import Params, build_table, support_max, validate_params

SUM_TOL = 1e-9


class DomainError(ValueError):
    """Argument outside the domain of a rate function or profile."""


class RegimeMismatch(ValueError):
    """The requested quantity is not defined in this limit regime."""


class Regime(enum.Enum):
    """Trichotomy of the n -> infinity limit shape.

    GENERIC: alpha+gamma, beta, delta all positive; Gaussian fluctuation.
    DEGENERATE: mass piles up at an edge with geometric O(1) corrections.
    UNDEFINED: the boundary case beta*delta = 0 with xi = 1/2, where the
    scale sqrt(n) takes over (Rayleigh profile) and the (E, V) expansion
    of the other regimes has no meaning.
    """

    GENERIC = "generic"
    DEGENERATE = "degenerate"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class Ratios:
    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass(frozen=True)
class Profile:
    """Derived limit quantities for a ratio tuple."""

    ratios: Ratios
    xi: float
    kappa: float
    eta: float
    D: float
    mu: float
    nu: float
    sigma2: float
    phi: float
    regime: Regime


def ratios_from_params(p: Params) -> Ratios:
    """Ratios (l, m-l, k-l, n-m-k+l)/n for a concrete parameter tuple."""
    p = validate_params(p.n, p.m, p.k, p.l)
    if p.n == 0:
        raise DomainError("ratios undefined at n = 0")
    n = p.n
    return Ratios(p.l / n, (p.m - p.l) / n, (p.k - p.l) / n, p.N / n)


def limit_profile(r: Ratios) -> Profile:
    """Classify the limit regime and compute its derived constants.

    eta = alpha*gamma + alpha*delta + beta*gamma, D = 1 - 4 eta,
    mu, nu = (1 -+ sqrt(D))/2, sigma2 = (alpha+gamma) beta delta / D,
    phi = (sigma2 - mu)/(1 - 2 mu).  sigma2 and phi are NaN exactly when
    D = 0, which only happens inside the UNDEFINED regime.
    """
    vals = (r.alpha, r.beta, r.gamma, r.delta)
    if any(v < -SUM_TOL for v in vals):
        raise DomainError(f"ratios must be nonnegative: {r}")
    if abs(sum(vals) - 1.0) > SUM_TOL:
        raise DomainError(f"ratios must sum to 1: {r}")
    alpha, beta, gamma, delta = (max(v, 0.0) for v in vals)
    xi = alpha + beta
    kappa = alpha + gamma
    eta = alpha * gamma + alpha * delta + beta * gamma
    D = max(1.0 - 4.0 * eta, 0.0)
    sqrt_d = math.sqrt(D)
    mu = (1.0 - sqrt_d) / 2.0
    nu = (1.0 + sqrt_d) / 2.0
    if beta * delta == 0.0 and xi == 0.5:
        regime = Regime.UNDEFINED
    elif kappa > 0.0 and beta > 0.0 and delta > 0.0:
        regime = Regime.GENERIC
    else:
        regime = Regime.DEGENERATE
    if D > 0.0:
        sigma2 = kappa * beta * delta / D
        phi = (sigma2 - mu) / sqrt_d
    else:
        sigma2 = math.nan
        phi = math.nan
    return Profile(Ratios(alpha, beta, gamma, delta), xi, kappa, eta, D,
                   mu, nu, sigma2, phi, regime)


def type1_pmf(xi, k: int, l: int, x: int):
    """Limit law q(x) when k, l stay fixed and m/n -> xi.

    The convolution of Binomial(k - l, xi) with Binomial(l, 1 - xi).
    Exact when xi is given as an exact rational; float xi gives floats.
    """
    if not 0 <= l <= k:
        raise DomainError(f"need 0 <= l <= k, got l={l}, k={k}")
    if not 0 <= xi <= 1:
        raise DomainError(f"need 0 <= xi <= 1, got {xi}")
    if not 0 <= x <= k:
        return 0 * xi
    total = 0 * xi
    for u in range(max(0, x - (k - l)), min(l, x) + 1):
        total += (math.comb(k - l, x - u) * xi ** (x - u)
                  * (1 - xi) ** (k - l - x + u)
                  * math.comb(l, u) * (1 - xi) ** u * xi ** (l - u))
    return total


def type1_table(xi, k: int, l: int) -> list:
    """Full limit table q(0..k); sums to 1 with mean (k-l)xi + l(1-xi)."""
    return [type1_pmf(xi, k, l, x) for x in range(k + 1)]


def normal_density(r: Ratios, n: int, x) -> float:
    """Gaussian local-limit density at x for the GENERIC regime."""
    prof = limit_profile(r)
    if prof.regime is not Regime.GENERIC:
        raise RegimeMismatch(f"normal density needs the generic regime, "
                             f"got {prof.regime.value}")
    var = n * prof.sigma2
    return math.exp(-(x - n * prof.mu) ** 2 / (2.0 * var)) \
        / math.sqrt(2.0 * math.pi * var)


def normal_cdf(z: float) -> float:
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def kolmogorov_distance(p: Params) -> float:
    """sup_y |P[X <= y] - Phi((y - n mu)/sqrt(n sigma^2))|, exactly located.

    Both one-sided gaps at every jump point are inspected, which is where
    the sup of a step-vs-continuous comparison lives.
    """
    prof = limit_profile(ratios_from_params(p))
    if prof.regime is not Regime.GENERIC:
        raise RegimeMismatch("CLT comparison needs the generic regime")
    n = p.n
    scale = math.sqrt(n * prof.sigma2)
    table = build_table(p)
    worst = 0.0
    cum = 0.0
    for x, v in enumerate(table):
        phi_here = normal_cdf((x - n * prof.mu) / scale)
        worst = max(worst, abs(cum - phi_here))
        cum += float(v)
        worst = max(worst, abs(cum - phi_here))
    return worst


def ev_asymptotics(r: Ratios, n: int) -> tuple[float, float]:
    """Leading-plus-constant approximations of E[X] and V[X].

    GENERIC: (n mu + phi, n sigma2).  DEGENERATE: the geometric-tail
    corrections (n mu - mu/(1-2mu), mu(1-mu)/(1-2mu)^2).  The UNDEFINED
    regime scales with sqrt(n) instead; use rayleigh_ev for it.
    """
    prof = limit_profile(r)
    if prof.regime is Regime.GENERIC:
        return n * prof.mu + prof.phi, n * prof.sigma2
    if prof.regime is Regime.DEGENERATE:
        mu = prof.mu
        shrink = 1.0 - 2.0 * mu
        return n * mu - mu / shrink, mu * (1.0 - mu) / shrink ** 2
    raise RegimeMismatch("E/V expansion undefined for the sqrt(n)-scale "
                         "boundary regime; see rayleigh_ev")


def rayleigh_ev(n: int) -> tuple[float, float]:
    """(E[X], V[X]) approximations in the boundary regime xi = 1/2.

    There (n/2 - X)/sqrt(n) converges to the fixed Rayleigh density
    4 s exp(-2 s^2), hence E = n/2 - sqrt(n pi / 8), V = n (1/2 - pi/8).
    """
    return n / 2.0 - math.sqrt(n * math.pi / 8.0), n * (0.5 - math.pi / 8.0)


def geometric_mass(r: Ratios, i: int) -> float:
    """Limit mass of P[X = floor(n mu) - i] in the DEGENERATE regime.

    A geometric profile hanging off the top of the support:
    (mu/(1-mu))^i (1-2mu)/(1-mu).
    """
    if i < 0:
        raise DomainError("offset i must be >= 0")
    prof = limit_profile(r)
    if prof.regime is not Regime.DEGENERATE:
        raise RegimeMismatch(f"geometric profile needs the degenerate "
                             f"regime, got {prof.regime.value}")
    mu = prof.mu
    return (mu / (1.0 - mu)) ** i * (1.0 - 2.0 * mu) / (1.0 - mu)


def rayleigh_mass(t: float, u: float = math.inf) -> float:
    """Mass the limiting Rayleigh law puts on [t, u].

    Integral of 4 s exp(-2 s^2) ds, i.e. exp(-2 t^2) - exp(-2 u^2).
    """
    if t < 0 or u < t:
        raise DomainError(f"need 0 <= t <= u, got t={t}, u={u}")
    upper = 0.0 if math.isinf(u) else math.exp(-2.0 * u * u)
    return math.exp(-2.0 * t * t) - upper


def _entropy2(t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    return -t * math.log(t) - (1.0 - t) * math.log(1.0 - t)


def _rate_profile(r: Ratios) -> Profile:
    prof = limit_profile(r)
    if r.gamma != 0.0:
        raise RegimeMismatch("rate functions are implemented for the "
                             "gamma = 0 (contained-witness) family")
    if prof.regime is not Regime.GENERIC or prof.xi > 0.5:
        raise RegimeMismatch("rate functions need alpha, beta, delta > 0 "
                             "and xi <= 1/2")
    return prof


def rate_function_f(r: Ratios, t: float) -> float:
    """Exponential decay profile f(t) = lim (1/n) log p(floor(nt)).

    Defined on 0 < t < alpha; f(mu) = 0 at the concentration point and
    f < 0 elsewhere, so -f is the large-deviation rate.
    """
    prof = _rate_profile(r)
    alpha, beta = r.alpha, r.beta
    xi = prof.xi
    if not 0.0 < t < alpha:
        raise DomainError(f"t must lie in (0, alpha) = (0, {alpha})")
    h = _entropy2
    return (h(t) - h(xi) + alpha * h(t / alpha) - xi * h(t / xi)
            + (1.0 - alpha - t) * h(beta / (1.0 - alpha - t)))


def rate_function_f_prime(r: Ratios, t: float) -> float:
    """Derivative of rate_function_f, in closed logarithmic form."""
    prof = _rate_profile(r)
    alpha = r.alpha
    xi = prof.xi
    if not 0.0 < t < alpha:
        raise DomainError(f"t must lie in (0, alpha) = (0, {alpha})")
    delta = r.delta
    return math.log((1.0 - t) * (delta - t) * (alpha - t)) \
        - math.log(t * (1.0 - alpha - t) * (xi - t))


def cgf_limit(r: Ratios, s: float) -> float:
    """Scaled cumulant generating function u(s) = max_t (s t + f(t)).

    Computed by bounded scalar maximization on (0, alpha) at 1e-12
    tolerance; u is convex with u'(0) = mu and u''(0) = sigma2.
    """
    _rate_profile(r)
    res = minimize_scalar(lambda t: -(s * t + rate_function_f(r, t)),
                          bounds=(0.0, r.alpha), method="bounded",
                          options={"xatol": 1e-12})
    return -float(res.fun)


def tail_exponent(r: Ratios, big_r: float) -> float:
    """Upper-tail rate lim -(1/n) log P[X >= n R] for mu <= R < alpha.

    Evaluated through the Legendre dual max_{s >= 0} (s R - u(s)); by
    convex duality this equals -f(R) on [mu, alpha), which the tests
    confirm independently.
    """
    prof = _rate_profile(r)
    if not prof.mu <= big_r < r.alpha:
        raise DomainError(f"R must lie in [mu, alpha) = "
                          f"[{prof.mu}, {r.alpha})")
    slope = -rate_function_f_prime(r, big_r) if big_r > prof.mu else 0.0
    hi = max(1.0, 2.0 * slope)
    res = minimize_scalar(lambda s: -(s * big_r - cgf_limit(r, s)),
                          bounds=(0.0, hi), method="bounded",
                          options={"xatol": 1e-10})
    return -float(res.fun)
