"""Formula-free cross-checks computed directly over the symmetric group.

The pmf here is obtained from first principles: project the normalized
superposition of basis subsets onto each two-row isotypic component using
the character projector, summing over all n! permutations.  Nothing from
the hypergeometric presentations enters, so agreement with dist.* is a
genuine two-route check.  Sizes are capped (n <= 9) because the group sum,
even reorganized, is exponential.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations

from gmpy2 import mpq

from .dist import BadRow, Params, validate_params

MAX_N = 9

CycleType = tuple[int, ...]


class TooLarge(ValueError):
    """Requested brute-force size exceeds the n <= 9 cost guard."""


def cycle_type_of(perm: tuple[int, ...]) -> CycleType:
    """Cycle type of a permutation given in one-line notation (0-indexed)."""
    seen = [False] * len(perm)
    lens = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        c = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            c += 1
        lens.append(c)
    lens.sort(reverse=True)
    return tuple(lens)


def partitions(n: int, largest: int | None = None):
    """Yield the partitions of n as descending tuples (the cycle types)."""
    if n == 0:
        yield ()
        return
    if largest is None or largest > n:
        largest = n
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def class_size(n: int, ct: CycleType) -> int:
    """Number of permutations in S_n with the given cycle type."""
    if sum(ct) != n:
        raise ValueError(f"cycle type {ct} does not sum to {n}")
    counts = Counter(ct)
    denom = 1
    for length, mult in counts.items():
        denom *= length ** mult * math.factorial(mult)
    return math.factorial(n) // denom


@lru_cache(maxsize=None)
def _fixed_subset_counts(ct: CycleType) -> tuple[int, ...]:
    # coefficient list of prod_cycles (1 + t^len): entry j counts the
    # j-subsets left invariant by any permutation of this cycle type
    n = sum(ct)
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    for length in ct:
        for j in range(n, length - 1, -1):
            coeffs[j] += coeffs[j - length]
    return tuple(coeffs)


def char_two_row(n: int, x: int, ct: CycleType) -> int:
    """Irreducible S_n character of shape (n - x, x) at a cycle type.

    Computed as Fix_x - Fix_{x-1} where Fix_j counts invariant j-subsets;
    that difference is the classical branching formula for two-row shapes.
    """
    if x < 0 or n - x < x:
        raise BadRow(f"(n-x, x) = ({n - x}, {x}) is not a partition")
    if sum(ct) != n:
        raise ValueError(f"cycle type {ct} does not sum to {n}")
    fixed = _fixed_subset_counts(tuple(sorted(ct, reverse=True)))
    prev = fixed[x - 1] if x >= 1 else 0
    return fixed[x] - prev


@lru_cache(maxsize=None)
def _coset_class_counts(n: int, m: int, i: int) -> tuple[tuple[CycleType, int], ...]:
    """Cycle-type census of {g in S_n : g(W0) = Wi}.

    W0 = {0..m-1} and Wi is the canonical m-set meeting W0 in m - i points.
    Any pair of m-sets with that intersection size is equivalent to
    (Wi, W0) under relabeling, and cycle types are relabeling-invariant,
    so this census only depends on (n, m, i).
    """
    base = list(range(n))
    for j in range(i):
        base[m - i + j], base[m + j] = base[m + j], base[m - i + j]
    counts: Counter[CycleType] = Counter()
    for left in permutations(range(m)):
        for right in permutations(range(m, n)):
            h = left + right
            g = tuple(base[h[v]] for v in range(n))
            counts[cycle_type_of(g)] += 1
    return tuple(sorted(counts.items()))


def pmf_bruteforce(p: Params) -> list[mpq]:
    """Exact pmf table for x = 0 .. floor(n/2) straight from the projector.

    p(x) = dim(n-x, x) / (n! B) * sum_g chi_{(n-x,x)}(g) <Xi| pi(g) |Xi>,
    where |Xi> superposes the B = C(n-k, m-l) basis m-subsets that contain
    the first l points and avoid the rest of the first k.  The group sum is
    reorganized over ordered subset pairs and evaluated coset by coset.
    """
    p = validate_params(p.n, p.m, p.k, p.l)
    n, m, k, l = p.n, p.m, p.k, p.l
    if n > MAX_N:
        raise TooLarge(f"n = {n} exceeds brute-force cap {MAX_N}")
    head = frozenset(range(l))
    basis = [head | set(tail)
             for tail in combinations(range(k, n), m - l)]
    nbases = len(basis)
    assert nbases == math.comb(n - k, m - l)
    pair_counts: Counter[int] = Counter()
    for w1 in basis:
        for w2 in basis:
            pair_counts[m - len(w1 & w2)] += 1
    denom = math.factorial(n) * nbases
    table = []
    for x in range(n // 2 + 1):
        group_sum = 0
        for i, pairs in sorted(pair_counts.items()):
            coset = 0
            for ct, mult in _coset_class_counts(n, m, i):
                coset += mult * char_two_row(n, x, ct)
            group_sum += pairs * coset
        dim = math.comb(n, x) - (math.comb(n, x - 1) if x else 0)
        table.append(mpq(dim * group_sum, denom))
    return table


def casimir_bruteforce(p: Params) -> mpq:
    """Spectral average sum_x (n-2x)(n-2x+2) p(x) from the brute-force table.

    Equals (n-2m)^2 + 2n + 4MN on the nose; the closed form is checked
    against this in the test suite.
    """
    n = p.n
    table = pmf_bruteforce(p)
    return sum(mpq((n - 2 * x) * (n - 2 * x + 2)) * v
               for x, v in enumerate(table))


def eberlein_direct(n: int, m: int, x: int, i: int) -> int:
    """Unnormalized Eberlein value E_i(x) by direct triple-binomial sum.

    E_i(x) = sum_r (-1)^r C(x,r) C(m-x, i-r) C(n-m-x, i-r).  Dividing by
    C(m,i) C(n-m,i) gives the zonal spherical value, which is how
    dist.zonal_omega is cross-checked without any 3F2 evaluation.
    """
    total = 0
    for r in range(min(i, x) + 1):
        t = (math.comb(x, r) * math.comb(m - x, i - r)
             * math.comb(n - m - x, i - r))
        total += -t if r % 2 else t
    return total
