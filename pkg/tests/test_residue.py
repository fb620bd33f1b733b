import math

import pytest
from hypothesis import given, strategies as st

from hctgroups.residue import (
    GapConditionError,
    Parameters,
    ResidueClass,
    block,
    classes_disjoint,
    gap_condition,
    lcm_up_to,
    prime_power,
)


@pytest.mark.parametrize("n, expected", [(2, 2), (4, 12), (7, 420)])
def test_lcm_up_to(n, expected):
    assert lcm_up_to(n) == expected


def test_lcm_up_to_is_exact_beyond_64_bits():
    # from the factorization: highest prime powers up to 22
    expected = 2**4 * 3**2 * 5 * 7 * 11 * 13 * 17 * 19
    assert lcm_up_to(22) == expected
    assert lcm_up_to(60) > 2**64


def test_lcm_up_to_rejects_small_n():
    with pytest.raises(ValueError):
        lcm_up_to(1)


@pytest.mark.parametrize("m, expected", [(5, (5, 1)), (8, (2, 3)), (12, None), (2, (2, 1)), (81, (3, 4)), (1, "err")])
def test_prime_power(m, expected):
    if expected == "err":
        with pytest.raises(ValueError):
            prime_power(m)
    else:
        assert prime_power(m) == expected


def _factor(m):
    out, d = {}, 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def test_prime_power_against_factorization():
    for m in range(2, 3000):
        f = _factor(m)
        expected = next(iter(f.items())) if len(f) == 1 else None
        assert prime_power(m) == expected


@pytest.mark.parametrize("n, expected", [(4, True), (5, False), (7, True), (2, True), (3, True), (6, True)])
def test_gap_condition(n, expected):
    assert gap_condition(n) is expected


def test_gap_condition_matches_prime_powers():
    for n in range(2, 500):
        assert gap_condition(n) == (prime_power(n + 1) is not None)


@pytest.mark.parametrize(
    "a, b, expected",
    [((0, 2), (1, 2), True), ((0, 2), (0, 4), False), ((1, 4), (3, 6), False)],
)
def test_classes_disjoint_examples(a, b, expected):
    assert classes_disjoint(ResidueClass(*a), ResidueClass(*b)) is expected


def test_classes_disjoint_exhaustive_small_moduli():
    for m1 in range(2, 31):
        for m2 in range(m1, 31):
            period = math.lcm(m1, m2)
            for r1 in range(m1):
                hits = [False] * m2
                for x in range(r1, period, m1):
                    hits[x % m2] = True
                for r2 in range(m2):
                    assert classes_disjoint(ResidueClass(r1, m1), ResidueClass(r2, m2)) is not hits[r2]


@given(st.integers(2, 200), st.integers(2, 200), st.data())
def test_classes_disjoint_symmetric(m1, m2, data):
    a = ResidueClass(data.draw(st.integers(0, m1 - 1)), m1)
    b = ResidueClass(data.draw(st.integers(0, m2 - 1)), m2)
    assert classes_disjoint(a, b) == classes_disjoint(b, a)


def test_residue_class_validation_and_membership():
    c = ResidueClass(3, 7)
    assert 10 in c and -4 in c and 4 not in c
    assert str(c) == "3(7)"
    with pytest.raises(ValueError):
        ResidueClass(7, 7)
    with pytest.raises(ValueError):
        ResidueClass(0, 1)


@pytest.mark.parametrize(
    "n, j, expected",
    [(2, 0, [0, 1]), (5, 7, [35, 36, 37, 38, 39]), (12, 2, list(range(24, 36)))],
)
def test_block(n, j, expected):
    assert list(block(n, j)) == expected


@given(st.integers(2, 40), st.integers(1, 30))
def test_blocks_partition(n, count):
    P = n * count
    seen = [0] * P
    for j in range(count):
        for x in block(n, j):
            seen[x] += 1
    assert seen == [1] * P


def test_block_rejects_bad_arguments():
    with pytest.raises(ValueError):
        block(1, 0)
    with pytest.raises(ValueError):
        block(3, -1)


def test_parameters_gap_case():
    P = Parameters.from_n(4)
    assert (P.N, P.p, P.k, P.M, P.pk, P.degree) == (12, 5, 1, 12, 5, 60)
    P = Parameters.from_n(7)
    assert (P.N, P.p, P.k, P.M, P.pk, P.degree) == (420, 2, 3, 105, 8, 840)
    assert P.M * P.pk == P.degree


def test_parameters_without_gap_fail_fast():
    P = Parameters.from_n(5)
    assert not P.has_gap and P.N == 60
    with pytest.raises(GapConditionError, match="6 divides lcm"):
        P.require_gap()
    with pytest.raises(GapConditionError):
        P.degree
