"""Exact rational arithmetic helpers: binomials, Pochhammer symbols, and
terminating (basic) hypergeometric sums.

Everything in this module is computed over arbitrary-precision rationals
(gmpy2.mpq), so results are exact.  Floats are deliberately rejected as
inputs; convert to a rational first if you really mean an exact value.
"""

from __future__ import annotations

import math
from fractions import Fraction

from gmpy2 import mpq, mpz

# Public alias so callers do not need to import gmpy2 themselves.
BigRational = mpq


class DenominatorPole(ArithmeticError):
    """A denominator Pochhammer vanishes before the series terminates."""


class InvalidQ(ValueError):
    """The base q of a q-series must be a positive rational."""


def to_rational(value) -> mpq:
    """Coerce ints, Fractions, strings like '3/7', and mpq to an exact mpq.

    Floats are rejected: silently converting 0.1 to 3602879701896397/2**55
    is never what an exact computation wants.
    """
    if isinstance(value, float):
        raise TypeError("refusing to coerce float to exact rational; "
                        "pass a Fraction, string, or integer instead")
    if isinstance(value, mpq):
        return value
    if isinstance(value, (int, mpz)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value)
    return mpq(value)


def binom(a: int, r: int) -> int:
    """Generalized binomial coefficient for integer a, via falling factorials.

    binom(a, r) = a(a-1)...(a-r+1)/r!.  Returns 0 for r < 0, and for
    0 <= a < r.  For negative a the usual reflection
    binom(a, r) = (-1)^r binom(r-a-1, r) applies, so the value is a
    (possibly negative) integer.
    """
    if r < 0:
        return 0
    if a >= 0:
        return math.comb(a, r)
    val = math.comb(r - a - 1, r)
    return -val if r % 2 else val


def pochhammer(a, r: int, rising: bool = True):
    """Pochhammer symbol of an integer or rational a.

    rising=True gives a(a+1)...(a+r-1); rising=False the falling product
    a(a-1)...(a-r+1).  r must be a nonnegative integer.
    """
    if r < 0:
        raise ValueError("pochhammer length r must be >= 0")
    step = 1 if rising else -1
    out = mpq(1)
    for i in range(r):
        out *= a + step * i
    return out


def hyp_terminating(num_params: list[int], den_params: list[int], z) -> mpq:
    """Evaluate a terminating hypergeometric sum pFq(num; den; z) exactly.

    All parameters are integers; at least one numerator parameter must be a
    nonpositive integer, and the series is summed up to the first index at
    which that parameter kills every later term.  Raises DenominatorPole if
    a denominator Pochhammer vanishes strictly before termination (the sum
    is then not defined by this truncation).
    """
    stop = None
    for a in num_params:
        if a <= 0 and (stop is None or -a < stop):
            stop = -a
    if stop is None:
        raise ValueError("series does not terminate: "
                         "no nonpositive numerator parameter")
    z = to_rational(z)
    if z == 0 or stop == 0:
        return mpq(1)
    for b in den_params:
        if b <= 0 and -b < stop:
            raise DenominatorPole(
                f"denominator parameter {b} vanishes at index {-b + 1} "
                f"before termination index {stop}")
    total = mpq(1)
    term = mpq(1)
    for i in range(stop):
        for a in num_params:
            term *= a + i
        for b in den_params:
            term /= b + i
        term *= z
        term /= i + 1
        total += term
    return total


def q_int(j: int, q) -> mpq:
    """q-integer [j]_q = 1 + q + ... + q^(j-1) for j >= 0."""
    q = to_rational(q)
    if q <= 0:
        raise InvalidQ(f"q must be positive, got {q}")
    if j < 0:
        raise ValueError("q_int needs j >= 0")
    if q == 1:
        return mpq(j)
    return (q ** j - 1) / (q - 1)


def q_pochhammer(a, q, r: int) -> mpq:
    """q-shifted factorial (a; q)_r = prod_{i<r} (1 - a q^i)."""
    q = to_rational(q)
    if q <= 0:
        raise InvalidQ(f"q must be positive, got {q}")
    if r < 0:
        raise ValueError("q_pochhammer length r must be >= 0")
    a = to_rational(a)
    out = mpq(1)
    power = mpq(1)
    for _ in range(r):
        out *= 1 - a * power
        power *= q
    return out


def q_binom(n: int, m: int, q) -> mpq:
    """Gaussian binomial coefficient [n choose m]_q.

    Computed from the product formula prod_{j=1..m} [n-m+j]_q / [j]_q, which
    stays well defined at q = 1 where it degenerates to the ordinary
    binomial coefficient.  Returns 0 outside 0 <= m <= n.
    """
    q = to_rational(q)
    if q <= 0:
        raise InvalidQ(f"q must be positive, got {q}")
    if m < 0 or n < 0 or m > n:
        return mpq(0)
    if q == 1:
        return mpq(math.comb(n, m))
    out = mpq(1)
    for j in range(1, m + 1):
        out *= (1 - q ** (n - m + j)) / (1 - q ** j)
    return out


def q_power(q, e: int) -> mpq:
    """q**e for integer e of either sign, exactly."""
    q = to_rational(q)
    if e >= 0:
        return q ** e
    return 1 / (q ** (-e))


def q_hyp_terminating(num_exps: list[int], den_exps: list[int], q, z,
                      power_exponent: int | None = None) -> mpq:
    """Terminating basic hypergeometric sum r_phi_s with q-power parameters.

    Parameters are passed as integer exponents: the j-th numerator parameter
    is q**num_exps[j], and similarly for denominators.  Exponent encoding is
    required because at q = 1 the parameter values all collapse to 1 and the
    classical limit would be lost; with exponents in hand, q = 1 dispatches
    to the ordinary terminating pFq with the same integer parameters (this
    needs r = s + 1, which is the only shape used here).

    Each term carries the balancing factor ((-1)^i q^binom(i,2)) raised to
    power_exponent; when power_exponent is None it defaults to 1 + s - r.
    """
    q = to_rational(q)
    if q <= 0:
        raise InvalidQ(f"q must be positive, got {q}")
    r, s = len(num_exps), len(den_exps)
    if power_exponent is None:
        power_exponent = 1 + s - r
    stop = None
    for e in num_exps:
        if e <= 0 and (stop is None or -e < stop):
            stop = -e
    if stop is None:
        raise ValueError("q-series does not terminate: "
                         "no nonpositive numerator exponent")
    if q == 1:
        if r != s + 1:
            raise InvalidQ("q = 1 degeneration is only defined for r = s + 1")
        return hyp_terminating(num_exps, den_exps, z)
    z = to_rational(z)
    if z == 0 or stop == 0:
        return mpq(1)
    for e in den_exps:
        if e <= 0 and -e < stop:
            raise DenominatorPole(
                f"denominator exponent {e} vanishes at index {-e + 1} "
                f"before termination index {stop}")
    total = mpq(1)
    term = mpq(1)
    qi = mpq(1)        # q ** i
    sign = 1 if power_exponent % 2 == 0 else -1
    for i in range(stop):
        for e in num_exps:
            term *= 1 - q_power(q, e) * qi
        for e in den_exps:
            term /= 1 - q_power(q, e) * qi
        term /= 1 - q * qi
        # ((-1)^i q^C(i,2)) ** power_exponent contributes the step factor
        # (-1)^pe * q^(i * pe) when going from index i to i + 1.
        if sign < 0:
            term = -term
        if power_exponent:
            term *= q_power(q, i * power_exponent)
        term *= z
        total += term
        qi *= q
    return total


_LOG2 = math.log(2)


def log_int(n) -> float:
    """Natural log of a positive integer, safe for values far beyond floats."""
    n = int(n)
    if n <= 0:
        raise ValueError("log_int needs a positive integer")
    shift = n.bit_length() - 53
    if shift <= 0:
        return math.log(n)
    return math.log(n >> shift) + shift * _LOG2


def log_rational(value) -> float:
    """Natural log of a positive rational, immune to float under/overflow."""
    value = to_rational(value)
    if value <= 0:
        raise ValueError("log_rational needs a positive value")
    return log_int(value.numerator) - log_int(value.denominator)
