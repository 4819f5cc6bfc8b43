"""Exact distribution of the two-row irreducible block drawn by projecting a
fixed subset state: pmf and cdf in two hypergeometric presentations, special
closed forms, moments, and the three-term recurrence.

Parameters (n, m, k, l) describe n sites, an m-subset and a k-subset whose
intersection has size l.  The random variable X is the depth of the two-row
Young diagram (n - x, x) selected by the isotypic projection, supported on
0 <= x <= min(m, n - m, k).  All values here are exact rationals.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

from gmpy2 import mpq

from .exact import binom, hyp_terminating

THREADS_ENV = "RACAH_DIST_THREADS"


class OutOfCone(ValueError):
    """Parameters violate one of the defining inequalities."""


class BadRow(ValueError):
    """(n - x, x) is not a partition: need 0 <= x <= n - x."""


class NotSpecialCase(ValueError):
    """None of the closed-form special cases applies."""


class DegenerateDenominator(ArithmeticError):
    """A recurrence fraction hits a zero denominator with nonzero weight."""


class InvariantViolation(AssertionError):
    """An exact internal invariant (normalization, positivity) failed."""


@dataclass(frozen=True)
class Params:
    """Validated parameter tuple (n, m, k, l).

    M, N, K are the shorthands m - l, n - m - k + l, k - l; all three are
    nonnegative exactly on the admissible cone.
    """

    n: int
    m: int
    k: int
    l: int

    @property
    def M(self) -> int:
        return self.m - self.l

    @property
    def N(self) -> int:
        return self.n - self.m - self.k + self.l

    @property
    def K(self) -> int:
        return self.k - self.l

    def reduced(self) -> "Params":
        """Equivalent parameters with m <= n - m.

        The distribution satisfies p(x | n, m, k, l) = p(x | n, n-m, k, k-l),
        so every computation may assume the reduced form.
        """
        if 2 * self.m <= self.n:
            return self
        return Params(self.n, self.n - self.m, self.k, self.k - self.l)


def validate_params(n: int, m: int, k: int, l: int) -> Params:
    """Build a Params tuple, raising OutOfCone naming the violated bound."""
    for name, v in (("n", n), ("m", m), ("k", k), ("l", l)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"{name} must be an int, got {v!r}")
    if n < 0:
        raise OutOfCone(f"n >= 0 violated: n={n}")
    if not 0 <= m <= n:
        raise OutOfCone(f"0 <= m <= n violated: m={m}, n={n}")
    if not 0 <= k <= n:
        raise OutOfCone(f"0 <= k <= n violated: k={k}, n={n}")
    if l < 0:
        raise OutOfCone(f"l >= 0 violated: l={l}")
    if l > m:
        raise OutOfCone(f"l <= m violated: l={l}, m={m}")
    if l > k:
        raise OutOfCone(f"l <= k violated: l={l}, k={k}")
    if l < m + k - n:
        raise OutOfCone(f"l >= m + k - n violated: l={l}, m+k-n={m + k - n}")
    return Params(n, m, k, l)


def _check(p: Params) -> Params:
    return validate_params(p.n, p.m, p.k, p.l)


def support_max(p: Params) -> int:
    """Largest x with p(x) possibly nonzero: min(m, n - m, k)."""
    _check(p)
    return min(p.m, p.n - p.m, p.k)


def two_row_dim(n: int, x: int) -> int:
    """Dimension of the irreducible S_n module labelled (n - x, x)."""
    if x < 0 or n - x < x:
        raise BadRow(f"(n-x, x) = ({n - x}, {x}) is not a partition")
    return binom(n, x) - binom(n, x - 1)


def zonal_omega(n: int, m: int, x: int, i: int) -> mpq:
    """Zonal spherical function of the pair (S_n, S_m x S_{n-m}).

    Value on the i-th orbit as a terminating 3F2 evaluated at unit argument,
    a Hahn polynomial in disguise.  Requires 0 <= x, i <= m <= n - m.
    """
    if not 0 <= m <= n - m:
        raise ValueError(f"need 0 <= m <= n - m, got (n, m) = ({n}, {m})")
    if not 0 <= x <= m or not 0 <= i <= m:
        raise ValueError(f"need x, i in [0, m]: x={x}, i={i}, m={m}")
    return hyp_terminating([-i, -x, x - n - 1], [-m, m - n], 1)


def _in_support(p: Params, x) -> bool:
    return isinstance(x, int) and 0 <= x <= min(p.m, p.n - p.m, p.k)


def pmf_hahn(p: Params, x: int) -> mpq:
    """pmf via the linearization over zonal spherical values.

    p(x) = (C(n,x)/C(n,m)) ((n-2x+1)/(n-x+1))
           * sum_i C(M,i) C(N,i) omega_{(n-x,x)}(i).
    """
    _check(p)
    if not _in_support(p, x):
        return mpq(0)
    r = p.reduced()
    n, m = r.n, r.m
    acc = mpq(0)
    for i in range(min(r.M, r.N) + 1):
        acc += binom(r.M, i) * binom(r.N, i) * zonal_omega(n, m, x, i)
    return mpq(binom(n, x), binom(n, m)) * mpq(n - 2 * x + 1, n - x + 1) * acc


def pmf_racah(p: Params, x: int) -> mpq:
    """pmf as a single terminating 4F3 (Racah polynomial evaluation).

    p(x) = C(n-k, m-l) (C(n,x)/C(n,m)) ((n-2x+1)/(n-x+1))
           * 4F3(-x, x-n-1, -M, -N; -m, m-n, -M-N; 1).
    """
    _check(p)
    if not _in_support(p, x):
        return mpq(0)
    r = p.reduced()
    n, m = r.n, r.m
    series = hyp_terminating([-x, x - n - 1, -r.M, -r.N],
                             [-m, m - n, -r.M - r.N], 1)
    return (binom(n - r.k, r.M) * mpq(binom(n, x), binom(n, m))
            * mpq(n - 2 * x + 1, n - x + 1) * series)


def special_case_name(p: Params) -> str | None:
    """Which closed-form family the reduced parameters fall in, if any."""
    r = _check(p).reduced()
    if r.M == 0 or r.N == 0:
        return "mn_zero"
    if r.k == r.l:
        return "k_eq_l"
    if r.l == 0:
        return "l_zero"
    return None


def pmf_special(p: Params, x: int) -> mpq:
    """pmf via a hypergeometric-free closed form.

    Covers MN = 0 (spectrum of the plain m-subset state), k = l (the
    k-subset contains the m-subset overlap entirely), and l = 0 (disjoint
    witness), always on the reduced parameters.  Raises NotSpecialCase
    otherwise.
    """
    name = special_case_name(p)
    if name is None:
        raise NotSpecialCase(f"no closed form for {p}")
    if not _in_support(p, x):
        return mpq(0)
    r = p.reduced()
    n, m = r.n, r.m
    if name == "mn_zero":
        return mpq(two_row_dim(n, x), binom(n, m))
    shape = mpq(binom(n, x), binom(n, m)) * mpq(n - 2 * x + 1, n - x + 1)
    if name == "k_eq_l":
        if x > r.l:
            return mpq(0)
        return shape * mpq(binom(r.l, x), binom(m, x)) * binom(n - r.l - x, r.M)
    # l == 0
    if x > r.k:
        return mpq(0)
    return (shape * mpq(binom(r.k, x), binom(n - m, x))
            * binom(n - r.k - x, n - m - r.k))


def cdf(p: Params, x: int) -> mpq:
    """P[X <= x], exactly.

    For x below the support edge this is the terminating 4F3 with second
    numerator parameter x - n (one unit off the pmf kernel); at and above
    the edge it is exactly 1.
    """
    _check(p)
    if x < 0:
        return mpq(0)
    s = support_max(p)
    if x >= s:
        return mpq(1)
    r = p.reduced()
    n, m = r.n, r.m
    series = hyp_terminating([-x, x - n, -r.M, -r.N],
                             [-m, m - n, -r.M - r.N], 1)
    return binom(n - r.k, r.M) * mpq(binom(n, x), binom(n, m)) * series


def _rec_a(n: int, m: int, k: int, x: int) -> mpq:
    # The factor (m - x) vanishes at x = m; returning 0 outright also dodges
    # the 0/0 that the raw formula develops there when n = 2m.
    if x >= m:
        return mpq(0)
    return mpq((m - x) * (n - m - x) * (n - k - x) * (n - x + 1),
               (n - 2 * x) * (n - 2 * x + 1))


def _rec_c(n: int, m: int, k: int, x: int) -> mpq:
    if x == 0:
        return mpq(0)
    return mpq(x * (x - k - 1) * (m - x + 1) * (n - m - x + 1),
               (n - 2 * x + 1) * (n - 2 * x + 2))


def recurrence_residual(p: Params, x: int, p_minus, p_zero, p_plus) -> mpq:
    """Exact residual of the three-term recurrence at x; zero on true pmfs.

    Callers supply p(x-1), p(x), p(x+1); for x = 0 and x = m the off-edge
    value is ignored.  The guaranteed identity assumes m <= n - m, so the
    parameters are reduced first (the pmf values are unchanged by that).

    Note the fractions multiply as (n-x)/(n-2x-1) etc.; the transposed
    orientation (n-2x-1)/(n-x) fails on explicit small cases, see
    recurrence_residual_printed.
    """
    r = _check(p).reduced()
    n, m, k = r.n, r.m, r.k
    if not 0 <= x <= m:
        raise ValueError(f"x must lie in [0, m] after reduction, got {x}")
    a = _rec_a(n, m, k, x)
    c = _rec_c(n, m, k, x)
    res = -(a + c - r.M * r.N) * mpq(n - x + 1, n - 2 * x + 1) \
        / binom(n, x) * p_zero
    if a != 0:
        if n - 2 * x - 1 == 0:
            raise DegenerateDenominator(
                f"n - 2x - 1 = 0 at x={x} with nonzero up-coefficient")
        res += a * mpq(n - x, n - 2 * x - 1) / binom(n, x + 1) * p_plus
    if c != 0:
        res += c * mpq(n - x + 2, n - 2 * x + 3) / binom(n, x - 1) * p_minus
    return res


def recurrence_residual_printed(p: Params, x: int,
                                p_minus, p_zero, p_plus) -> mpq:
    """Same recurrence but with the fractions transposed.

    Kept as a regression witness: this orientation does NOT annihilate the
    pmf (try (n,m,k,l) = (4,2,2,1) at x = 1), which is how the corrected
    form in recurrence_residual was pinned down.
    """
    r = _check(p).reduced()
    n, m, k = r.n, r.m, r.k
    if not 0 <= x <= m:
        raise ValueError(f"x must lie in [0, m] after reduction, got {x}")
    a = _rec_a(n, m, k, x)
    c = _rec_c(n, m, k, x)
    res = -(a + c - r.M * r.N) * mpq(n - 2 * x + 1, n - x + 1) \
        / binom(n, x) * p_zero
    if a != 0:
        res += a * mpq(n - 2 * x - 1, n - x) / binom(n, x + 1) * p_plus
    if c != 0:
        res += c * mpq(n - 2 * x + 3, n - x + 2) / binom(n, x - 1) * p_minus
    return res


def build_table(p: Params) -> list[mpq]:
    """Exact pmf table for x = 0 .. support_max.

    Uses a closed special form when one applies, the 4F3 route otherwise.
    Honors the RACAH_DIST_THREADS environment variable for per-x parallelism
    (results are ordered by x either way).  Verifies nonnegativity and exact
    normalization, raising InvariantViolation on failure.
    """
    _check(p)
    s = support_max(p)
    route = pmf_racah if special_case_name(p) is None else pmf_special
    threads = int(os.environ.get(THREADS_ENV, "1") or "1")
    xs = range(s + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            table = list(pool.map(lambda x: route(p, x), xs))
    else:
        table = [route(p, x) for x in xs]
    if any(v < 0 for v in table):
        raise InvariantViolation(f"negative pmf value for {p}")
    if sum(table) != 1:
        raise InvariantViolation(f"pmf does not sum to 1 for {p}")
    return table


def moments(p: Params, order: int) -> mpq:
    """Exact raw moment E[X^order] for order 0, 1, or 2."""
    if order not in (0, 1, 2):
        raise ValueError(f"only moments of order 0, 1, 2; got {order}")
    table = build_table(p)
    return sum(mpq(x) ** order * v for x, v in enumerate(table)) if order \
        else sum(table, mpq(0))


def casimir_eta(p: Params) -> mpq:
    """eta = (m(n - m) - MN) / n^2, the Casimir-normalizing constant."""
    _check(p)
    if p.n == 0:
        raise ValueError("eta undefined at n = 0")
    return mpq(p.m * (p.n - p.m) - p.M * p.N, p.n ** 2)


def casimir_eta_printed(p: Params) -> mpq:
    """Transposed variant (n(n-m) - MN)/n^2; regression witness only.

    This version does not close the variance identity, see casimir_check.
    """
    _check(p)
    if p.n == 0:
        raise ValueError("eta undefined at n = 0")
    return mpq(p.n * (p.n - p.m) - p.M * p.N, p.n ** 2)


def casimir_check(p: Params) -> tuple[mpq, mpq]:
    """Return (eta, residual) for the exact mean/variance identity.

    The identity V/n^2 = (E/n)(1 - E/n) + E/n^2 - eta holds exactly with
    eta = (m(n-m) - MN)/n^2, so residual is 0 for every admissible tuple.
    """
    eta = casimir_eta(p)
    e1 = moments(p, 1)
    v = moments(p, 2) - e1 ** 2
    n = p.n
    residual = v / n ** 2 - ((e1 / n) * (1 - e1 / n) + e1 / n ** 2 - eta)
    return eta, residual


def expectation_half(m: int, k: int, l: int) -> mpq:
    """Closed-form E[X] in the balanced case n = 2m.

    E[X] = m + 1/2 - (1/2) * sum_r (-1)^r 4^(m-r) C(N,r) C(M+N-r, N)
           / C(2(m-r), m-r), with M = m - l and N = m - k + l.
    """
    validate_params(2 * m, m, k, l)
    M, N = m - l, m - k + l
    acc = mpq(0)
    for r_ in range(min(M, N) + 1):
        t = mpq(4 ** (m - r_) * binom(N, r_) * binom(M + N - r_, N),
                binom(2 * (m - r_), m - r_))
        acc += -t if r_ % 2 else t
    return m + mpq(1, 2) - acc / 2
