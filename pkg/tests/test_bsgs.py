import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hctgroups.bsgs import (
    NotAMemberError,
    WordTooLongError,
    build_chain,
    contains,
    decompose,
    falling_factorial,
    is_k_transitive,
    order,
    order_upper_bound,
    orbit,
    orbit_partition,
)
from hctgroups.gens import (
    GeneratorSet,
    combined_generators,
    ct_family_generators,
    ct_n_generators,
    embedded_block_generators,
    omega_pk_stab2,
)
from hctgroups.perm import Permutation, evaluate, from_cycles, parity
from hctgroups.residue import Parameters

from small_groups import SMALL_GROUPS


def explicit(cycle_lists, degree):
    return GeneratorSet.from_permutations([from_cycles(c, degree) for c in cycle_lists])


def test_build_chain_examples():
    assert order(build_chain(explicit([[(0, 1)]], 2))) == 2
    assert order(build_chain(ct_n_generators(5, 5))) == 120
    assert order(build_chain(ct_family_generators(4, 12))) == 479001600


def test_trivial_group():
    gs = GeneratorSet.from_permutations([Permutation.identity(4)])
    chain = build_chain(gs)
    assert chain.order() == 1 and chain.base == []
    assert order(GeneratorSet.from_permutations([], degree=3)) == 1


def test_synchronous_copies_do_not_inflate_order():
    assert order(embedded_block_generators(12, 5)) == math.factorial(12)
    assert order(embedded_block_generators(5, 12)) == math.factorial(5)


def test_order_of_ct_family_5():
    assert order(ct_family_generators(5, 60)) == math.factorial(60)


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_orders_of_small_groups(name):
    build, expected = SMALL_GROUPS[name]
    chain = build_chain(build())
    assert chain.order() == expected
    # each basic orbit length divides the order
    assert all(expected % length == 0 for length in chain.basic_orbit_lengths)


def test_membership():
    gs = ct_n_generators(4, 4)
    chain = build_chain(gs)
    assert contains(chain, Permutation.identity(4))
    assert all(contains(chain, g) for g in gs)
    evens = explicit([[(0, 1, 2)], [(1, 2, 3)]], 4)
    chain = build_chain(evens)
    assert chain.order() == 12
    assert not contains(chain, from_cycles([(0, 1)], 4))
    assert contains(chain, from_cycles([(0, 1), (2, 3)], 4))
    with pytest.raises(ValueError, match="degree mismatch"):
        contains(chain, Permutation.identity(5))


def test_decompose_examples():
    gs = ct_family_generators(4, 12)
    chain = build_chain(gs)
    assert len(decompose(chain, Permutation.identity(12))) == 0
    for g in gs:
        assert evaluate(decompose(chain, g), gs) == g


def test_decompose_non_member():
    chain = build_chain(explicit([[(0, 1, 2)], [(1, 2, 3)]], 4))
    with pytest.raises(NotAMemberError) as err:
        decompose(chain, from_cycles([(0, 1)], 4))
    assert not err.value.residue.is_identity()


def test_decompose_length_limit():
    gs = ct_family_generators(4, 12)
    chain = build_chain(gs)
    g = Permutation(np.random.default_rng(1).permutation(12))
    with pytest.raises(WordTooLongError):
        decompose(chain, g, max_length=3)


@settings(max_examples=25)
@given(st.permutations(range(12)))
def test_decompose_round_trip(images):
    gs = ct_family_generators(4, 12)
    chain = _chain_4_12()
    g = Permutation(images)
    assert evaluate(decompose(chain, g), gs) == g


_cache = {}


def _chain_4_12():
    if "c" not in _cache:
        _cache["c"] = build_chain(ct_family_generators(4, 12))
    return _cache["c"]


def test_decompose_in_a_proper_subgroup():
    build, _ = SMALL_GROUPS["pgl2_5_on_6"]
    gs = build()
    chain = build_chain(gs)
    rng = np.random.default_rng(3)
    for _ in range(20):
        w = [int(i) for i in rng.integers(0, len(gs), size=15)]
        g = Permutation.identity(6)
        for i in w:
            g = g * gs[i]
        assert evaluate(decompose(chain, g), gs) == g


def test_transversal_words():
    gs = ct_family_generators(3, 6)
    chain = build_chain(gs)
    b = chain.base[0]
    for pt in chain.basic_orbit(0):
        assert evaluate(chain.transversal_word(0, pt), gs)(b) == pt


def test_base_prefix():
    chain = build_chain(ct_n_generators(6, 6), base_prefix=[3, 1])
    assert chain.base[:2] == [3, 1]
    assert chain.order() == 720
    with pytest.raises(ValueError):
        build_chain(ct_n_generators(6, 6), base_prefix=[1, 1])
    with pytest.raises(ValueError):
        build_chain(ct_n_generators(6, 6), base_prefix=[6])


def test_orbit_examples():
    gs = explicit([[(0, 1)]], 4)
    assert orbit(gs, 0).points == {0, 1}
    gs = ct_family_generators(4, 12)
    o = orbit(gs, 0)
    assert o.points == set(range(12))
    for y, w in o.witnesses.items():
        assert evaluate(w, gs)(0) == y
    assert orbit(omega_pk_stab2(Parameters.from_n(4)), 2).points == {2}


def test_orbit_partition_and_bound():
    gs = explicit([[(0, 1)], [(2, 3, 4)]], 6)
    assert orbit_partition(gs).tolist() == [0, 0, 2, 2, 2, 5]
    assert order_upper_bound(gs) == 2 * 6
    evens = explicit([[(0, 1, 2)]], 3)
    assert order_upper_bound(evens) == 3


def test_is_k_transitive_examples():
    s6 = ct_n_generators(6, 6)
    assert is_k_transitive(s6, 6)
    a5 = explicit([[(0, 1, 2)], [(0, 1, 2, 3, 4)]], 5)
    assert is_k_transitive(a5, 3)
    assert not is_k_transitive(a5, 4)
    with pytest.raises(ValueError):
        is_k_transitive(a5, 6)
    with pytest.raises(ValueError):
        is_k_transitive(a5, 0)


def test_is_k_transitive_reuses_a_matching_chain():
    gs = ct_family_generators(3, 6)
    chain = build_chain(gs, base_prefix=range(4))
    assert is_k_transitive(gs, 3, chain=chain)
    assert not is_k_transitive(gs, 4, chain=chain)


def test_six_transitive_at_degree_60():
    gs = embedded_block_generators(12, 5) + embedded_block_generators(5, 12)
    assert is_k_transitive(gs, 6)
    assert order(gs) % (math.factorial(60) // 2) == 0


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_transitivity_implies_falling_factorial_divides_order(name):
    build, expected = SMALL_GROUPS[name]
    gs = build()
    for k in range(1, min(4, gs.degree) + 1):
        if is_k_transitive(gs, k):
            assert expected % falling_factorial(gs.degree, k) == 0


def test_six_transitivity_forces_alternating_group():
    # with an odd generator the order is then the full factorial
    for gs in (ct_n_generators(7, 7), combined_generators(Parameters.from_n(4))):
        if is_k_transitive(gs, 6):
            full = math.factorial(gs.degree)
            o = order(gs)
            assert o % (full // 2) == 0
            if any(parity(g) for g in gs):
                assert o == full


def test_falling_factorial():
    assert falling_factorial(60, 6) == 60 * 59 * 58 * 57 * 56 * 55
    assert falling_factorial(5, 0) == 1
