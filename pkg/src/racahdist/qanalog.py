"""q-deformation of the distribution (quantum-group / Hecke picture).

All quantities degenerate to their classical counterparts at q = 1, which
the series evaluator handles by exponent bookkeeping.  The q-side is only
defined for m <= n - m: the classical reflection symmetry has no q-analog,
so unreduced parameters are rejected rather than silently flipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .exact import (InvalidQ, q_binom, q_hyp_terminating, q_int, q_power,
                    to_rational)
from .dist import Params, validate_params


class UnsupportedParams(ValueError):
    """q-side quantities need m <= n - m; there is no symmetry fallback."""


@dataclass(frozen=True)
class QContext:
    """Holds a validated base q; all q-functions take one of these."""

    q: mpq

    def __init__(self, q):
        q = to_rational(q)
        if q <= 0:
            raise InvalidQ(f"q must be a positive rational, got {q}")
        object.__setattr__(self, "q", q)


@lru_cache(maxsize=None)
def _qb(n: int, m: int, q: mpq) -> mpq:
    return q_binom(n, m, q)


def _require_reduced(p: Params) -> Params:
    p = validate_params(p.n, p.m, p.k, p.l)
    if 2 * p.m > p.n:
        raise UnsupportedParams(
            f"q-analog needs m <= n - m, got (n, m) = ({p.n}, {p.m})")
    return p


def q_two_row_dim(ctx: QContext, n: int, x: int) -> mpq:
    """Quantum dimension of the (n - x, x) block:
    q^x [n-2x+1]/[n-x+1] * qbinom(n, x)."""
    q = ctx.q
    return (q_power(q, x) * q_int(n - 2 * x + 1, q) / q_int(n - x + 1, q)
            * _qb(n, x, q))


def q_zonal(ctx: QContext, n: int, m: int, x: int, i: int) -> mpq:
    """q-zonal spherical value: 3phi2 with parameter exponents
    (-i, -x, x-n-1; -m, m-n) at argument q.  Classical 3F2 at q = 1."""
    if not 0 <= m <= n - m:
        raise ValueError(f"need 0 <= m <= n - m, got (n, m) = ({n}, {m})")
    if not 0 <= x <= m or not 0 <= i <= m:
        raise ValueError(f"need x, i in [0, m]: x={x}, i={i}, m={m}")
    return q_hyp_terminating([-i, -x, x - n - 1], [-m, m - n], ctx.q, ctx.q)


def q_pmf(ctx: QContext, p: Params, x: int, route: str = "racah") -> mpq:
    """Exact q-pmf at x, by either presentation.

    route='racah': single terminating 4phi3 with exponents
        (-x, x-n-1, -M, -N; -m, m-n, -M-N) at argument q.
    route='hahn': linearization sum_i q^(i^2) qbinom(M,i) qbinom(N,i)
        times the q-zonal value.
    Both carry the prefactor qbinom(n,x)/qbinom(n,m) * q^x [n-2x+1]/[n-x+1]
    (and qbinom(n-k, M) for the racah route).
    """
    p = _require_reduced(p)
    n, m = p.n, p.m
    if not isinstance(x, int) or x < 0 or x > min(m, p.k):
        return mpq(0)
    q = ctx.q
    shape = (_qb(n, x, q) / _qb(n, m, q) * q_power(q, x)
             * q_int(n - 2 * x + 1, q) / q_int(n - x + 1, q))
    if route == "racah":
        series = q_hyp_terminating([-x, x - n - 1, -p.M, -p.N],
                                   [-m, m - n, -p.M - p.N], q, q)
        return _qb(n - p.k, p.M, q) * shape * series
    if route == "hahn":
        acc = mpq(0)
        for i in range(min(p.M, p.N) + 1):
            acc += (q_power(q, i * i) * _qb(p.M, i, q) * _qb(p.N, i, q)
                    * q_zonal(ctx, n, m, x, i))
        return shape * acc
    raise ValueError(f"unknown route {route!r}; use 'racah' or 'hahn'")


def q_cdf(ctx: QContext, p: Params, x: int) -> mpq:
    """Exact q-cdf P_q[X <= x]; the same 4phi3 with x - n in place of
    x - n - 1, telescoping to exactly 1 at the support edge."""
    p = _require_reduced(p)
    if x < 0:
        return mpq(0)
    s = min(p.m, p.k)
    if x >= s:
        return mpq(1)
    n, m = p.n, p.m
    q = ctx.q
    series = q_hyp_terminating([-x, x - n, -p.M, -p.N],
                               [-m, m - n, -p.M - p.N], q, q)
    return _qb(n - p.k, p.M, q) * _qb(n, x, q) / _qb(n, m, q) * series


def q_table(ctx: QContext, p: Params, route: str = "racah") -> list[mpq]:
    """Exact q-pmf table for x = 0 .. min(m, k); verified to sum to 1."""
    p = _require_reduced(p)
    table = [q_pmf(ctx, p, x, route) for x in range(min(p.m, p.k) + 1)]
    if sum(table) != 1:
        raise AssertionError(f"q-pmf does not sum to 1 for {p}, q={ctx.q}")
    return table
