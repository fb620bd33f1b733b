import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hctgroups.bridges import exceptional_set
from hctgroups.gens import (
    PUNCTURE,
    GeneratorSet,
    HorizontalClassTransposition as T,
    combined_generators,
    ct_family_generators,
    ct_n_generators,
    embedded_block_generators,
    format_label,
    omega_N_stab,
    omega_pk_stab2,
    parse_label,
    tau,
)
from hctgroups.perm import compose, cycles, from_cycles, parity
from hctgroups.residue import Parameters


@pytest.mark.parametrize(
    "t, degree, cyc",
    [
        (T(2, 0, 1), 4, [(0, 1), (2, 3)]),
        (T(3, 0, 2), 6, [(0, 2), (3, 5)]),
        (T(4, 1, 3), 12, [(1, 3), (5, 7), (9, 11)]),
    ],
)
def test_tau_examples(t, degree, cyc):
    g = tau(t, degree)
    assert cycles(g) == cyc
    assert parity(g) == len(cyc) % 2


def test_transposition_validation():
    with pytest.raises(ValueError):
        T(1, 0, 0)
    with pytest.raises(ValueError):
        T(4, 2, 1)
    with pytest.raises(ValueError):
        T(4, 1, 4)
    with pytest.raises(ValueError, match="does not divide"):
        tau(T(4, 0, 1), 6)


def transpositions(max_modulus=12):
    return st.integers(2, max_modulus).flatmap(
        lambda m: st.tuples(st.just(m), st.integers(0, m - 2)).flatmap(
            lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.integers(t[1] + 1, t[0] - 1))
        )
    )


@given(transpositions(), st.integers(1, 8))
def test_tau_invariants(row, copies):
    m, r1, r2 = row
    P = m * copies
    g = tau(T(m, r1, r2), P)
    img = g.images
    x = np.arange(P)
    assert compose(g, g).is_identity()
    assert (img // m == x // m).all()
    assert (img[m:] == img[:-m] + m).all()
    assert parity(g) == (P // m) % 2


def test_labels_round_trip():
    t = T(12, 3, 7)
    assert format_label("tau", t) == "tau 3(12),7(12)"
    assert parse_label("tau 3(12),7(12)") == ("tau", t)
    assert parse_label(format_label("omega", t)) == ("omega", t)
    with pytest.raises(ValueError):
        parse_label("tau 3(12),7(11)")
    with pytest.raises(ValueError):
        parse_label("sigma 0(2),1(2)")


def test_ct_n_generators_examples():
    g = ct_n_generators(2, 2)
    assert len(g) == 1 and cycles(g[0]) == [(0, 1)]
    assert len(ct_n_generators(3, 6)) == 3
    g = ct_n_generators(5, 60)
    assert len(g) == 10
    assert all(len(cycles(x)) == 12 for x in g)
    with pytest.raises(ValueError):
        ct_n_generators(5, 12)


@pytest.mark.parametrize("n, degree, count", [(3, 6, 4), (4, 12, 10), (5, 60, 20)])
def test_ct_family_counts(n, degree, count):
    assert len(ct_family_generators(n, degree)) == count


def test_generator_order_is_fixed():
    g = ct_family_generators(4, 12)
    assert g.labels[:5] == [
        "tau 0(2),1(2)",
        "tau 0(3),1(3)",
        "tau 0(3),2(3)",
        "tau 1(3),2(3)",
        "tau 0(4),1(4)",
    ]
    for label, t in zip(g.labels, g.transpositions):
        assert parse_label(label) == ("tau", t)


@pytest.mark.parametrize("m, copies, count", [(12, 5, 66), (5, 12, 10), (2, 1, 1)])
def test_embedded_block_counts(m, copies, count):
    g = embedded_block_generators(m, copies)
    assert len(g) == count and g.degree == m * copies


def test_every_generator_is_an_involution():
    P = Parameters.from_n(4)
    for gs in (ct_family_generators(5, 60), combined_generators(P), omega_pk_stab2(P),
               omega_N_stab(P, [2, 22])):
        for g in gs:
            assert compose(g, g).is_identity()


def test_metadata_shortcuts_match_permutations():
    gs = ct_family_generators(5, 60)
    for i, g in enumerate(gs):
        assert gs.support_size(i) == g.support().size
        assert gs.is_odd(i) == (parity(g) == 1)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_modulus_four_generators_are_odd(n):
    N = Parameters.from_n(n).N
    gs = ct_family_generators(n, N)
    odd = [i for i, t in enumerate(gs.transpositions) if t.modulus == 4]
    assert odd and all(gs.is_odd(i) for i in odd)
    assert parity(gs[odd[0]]) == 1


def test_omega_pk_stab2():
    P = Parameters.from_n(4)
    gs = omega_pk_stab2(P)
    assert len(gs) == 6 and gs.degree == 60
    assert {(t.r1, t.r2) for t in gs.transpositions} == {(a, b) for a in (0, 1, 3, 4) for b in (0, 1, 3, 4) if a < b}
    assert all(g(PUNCTURE) == PUNCTURE and g(57) == 57 for g in gs)
    assert all(lbl.startswith("omega ") for lbl in gs.labels)


@pytest.mark.parametrize("n", [4, 7])
def test_omega_pk_stab2_fixes_exceptional_set(n):
    P = Parameters.from_n(n)
    gs = omega_pk_stab2(P)
    e = np.array(list(exceptional_set(P).points))
    for g in gs:
        assert (g.images[e] == e).all()


def test_omega_N_stab_counts():
    P = Parameters.from_n(4)
    assert len(omega_N_stab(P, [2])) == 55
    assert len(omega_N_stab(P, [])) == 66


@given(st.sets(st.sampled_from([2, 12, 22, 32, 42, 52]), max_size=6))
def test_omega_N_stab_fixes_delta(delta):
    P = Parameters.from_n(4)
    gs = omega_N_stab(P, delta)
    assert len(gs) == math.comb(12 - len(delta), 2)
    for g in gs:
        assert all(g(x) == x for x in delta)


def test_omega_N_stab_rejects_points_outside_e():
    with pytest.raises(ValueError, match="not in the exceptional set"):
        omega_N_stab(Parameters.from_n(4), [3])


def test_combined_generators_layout():
    P = Parameters.from_n(4)
    gs = combined_generators(P)
    assert len(gs) == 66 + 10 and gs.degree == 60
    assert gs.transpositions[0].modulus == 12 and gs.transpositions[66].modulus == 5


def test_generator_set_concatenation():
    a = GeneratorSet.from_permutations([from_cycles([(0, 1)], 3)], labels=["a"])
    b = GeneratorSet.from_permutations([from_cycles([(1, 2)], 3)], labels=["b"])
    c = a + b
    assert c.labels == ["a", "b"] and c[1] == b[0] and c.transpositions is None
    with pytest.raises(ValueError):
        a + GeneratorSet.from_permutations([from_cycles([(0, 1)], 4)])
    with pytest.raises(ValueError):
        GeneratorSet(3, [from_cycles([(0, 1)], 4)], ["x"])
