import math
from itertools import permutations

import pytest
from gmpy2 import mpq

from racahdist import oracle
from racahdist.dist import (
    Params,
    build_table,
    support_max,
    validate_params,
    zonal_omega,
)
from racahdist.oracle import (
    TooLarge,
    char_two_row,
    class_size,
    cycle_type_of,
    eberlein_direct,
    partitions,
    pmf_bruteforce,
)


def test_cycle_type_of():
    assert cycle_type_of((0, 1, 2)) == (1, 1, 1)
    assert cycle_type_of((1, 0, 2)) == (2, 1)
    assert cycle_type_of((1, 2, 0)) == (3,)
    assert cycle_type_of(()) == ()


def test_partitions_of_four():
    got = sorted(partitions(4))
    assert got == sorted([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])


def test_class_sizes_sum_to_group_order():
    for n in range(1, 8):
        assert sum(class_size(n, ct) for ct in partitions(n)) \
            == math.factorial(n)


def test_class_size_s4():
    sizes = {ct: class_size(4, ct) for ct in partitions(4)}
    assert sizes[(1, 1, 1, 1)] == 1
    assert sizes[(2, 1, 1)] == 6
    assert sizes[(2, 2)] == 3
    assert sizes[(3, 1)] == 8
    assert sizes[(4,)] == 6


S4_CHARS = {
    # cycle type: (chi_{(4)}, chi_{(3,1)}, chi_{(2,2)})
    (1, 1, 1, 1): (1, 3, 2),
    (2, 1, 1): (1, 1, 0),
    (2, 2): (1, -1, 2),
    (3, 1): (1, 0, -1),
    (4,): (1, -1, 0),
}


@pytest.mark.parametrize("ct,chis", sorted(S4_CHARS.items()))
def test_char_two_row_s4_table(ct, chis):
    for x, want in enumerate(chis):
        assert char_two_row(4, x, ct) == want


def test_char_agrees_with_permutation_count():
    # chi_{(n-x,x)} = fix_x - fix_{x-1} where fix_j counts fixed j-subsets;
    # recount fix_j by enumeration for every element of S_5
    n = 5
    from itertools import combinations
    for perm in permutations(range(n)):
        ct = cycle_type_of(perm)
        for x in range(n // 2 + 1):
            fix = sum(1 for s in combinations(range(n), x)
                      if {perm[v] for v in s} == set(s))
            fix_prev = sum(1 for s in combinations(range(n), x - 1)
                           if {perm[v] for v in s} == set(s)) if x else 0
            assert char_two_row(n, x, ct) == fix - fix_prev


def test_character_norm_is_group_order():
    for n in range(2, 7):
        for x in range(n // 2 + 1):
            total = sum(class_size(n, ct) * char_two_row(n, x, ct) ** 2
                        for ct in partitions(n))
            assert total == math.factorial(n), (n, x)


def test_eberlein_matches_zonal():
    for n, m in [(6, 2), (7, 3), (9, 4)]:
        for x in range(m + 1):
            for i in range(m + 1):
                scale = math.comb(m, i) * math.comb(n - m, i)
                assert eberlein_direct(n, m, x, i) \
                    == zonal_omega(n, m, x, i) * scale


def test_bruteforce_cap():
    with pytest.raises(TooLarge):
        pmf_bruteforce(validate_params(10, 2, 2, 1))


def test_bruteforce_matches_formula_small():
    for n in range(0, 7):
        for m in range(n + 1):
            for k in range(n + 1):
                for l in range(max(0, m + k - n), min(m, k) + 1):
                    p = Params(n, m, k, l)
                    brute = pmf_bruteforce(p)
                    table = build_table(p)
                    s = support_max(p)
                    for x, v in enumerate(brute):
                        want = table[x] if x <= s else mpq(0)
                        assert v == want, (p, x)


@pytest.mark.parametrize("n,m,k,l", [
    (8, 3, 4, 2), (8, 4, 4, 2), (9, 4, 3, 1), (9, 4, 5, 3), (9, 3, 6, 2),
])
def test_bruteforce_spot_checks_larger(n, m, k, l):
    p = validate_params(n, m, k, l)
    brute = pmf_bruteforce(p)
    table = build_table(p)
    assert brute[:len(table)] == table
    assert all(v == 0 for v in brute[len(table):])


def test_casimir_bruteforce():
    for n, m, k, l in [(6, 2, 3, 1), (7, 3, 3, 2), (8, 4, 2, 1)]:
        p = validate_params(n, m, k, l)
        got = oracle.casimir_bruteforce(p)
        assert got == (n - 2 * m) ** 2 + 2 * n + 4 * p.M * p.N
