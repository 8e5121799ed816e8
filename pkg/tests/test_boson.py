from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockvoa import boson
from fockvoa.boson import (
    BosonState,
    HeisenbergElement,
    act_mode,
    commutative_act_mode,
    derived_field_coefficient,
    lie_bracket,
    partitions,
    translation,
    virasoro_mode,
    z_lambda,
)
from fockvoa.errors import UnsupportedChargeError

from oracles import PARTITION_COUNTS

b = HeisenbergElement.b
vac = BosonState.vacuum


def state(*parts, charge=0, c=1):
    return BosonState(charge, {boson.make_partition(parts): c})


# -- frozen examples ---------------------------------------------------------


def test_lie_bracket_examples():
    assert lie_bracket(b(2), b(-2)) == HeisenbergElement({}, 2)
    assert lie_bracket(b(1), b(3)) == HeisenbergElement({}, 0)
    assert lie_bracket(b(1, 3) + b(-4), b(-1, 2)) == HeisenbergElement({}, 6)


def test_act_mode_examples():
    assert act_mode(1, state(1)) == vac()
    assert act_mode(0, vac(5)) == vac(5) * 5
    assert act_mode(-3, vac()) == state(3)
    assert act_mode(2, state(2, 2)) == state(2) * 4


def test_translation_examples():
    assert translation(vac()).is_zero()
    assert translation(state(1)) == state(2)
    assert translation(state(1, 1)) == state(2, 1) * 2


def test_translation_charge_guard():
    with pytest.raises(UnsupportedChargeError):
        translation(vac(1))


@pytest.mark.parametrize(
    "n, j, expected",
    [(1, 5, (5, 1)), (2, 0, (0, -1)), (3, 1, (1, 3))],
)
def test_derived_field_coefficient(n, j, expected):
    assert derived_field_coefficient(n, j) == expected


def test_derived_field_matches_literal_differentiation():
    # coefficient of z^{-j-n} in d^{n-1}/dz^{n-1} z^{-j-1} / (n-1)!
    for n in range(1, 6):
        for j in range(-5, 6):
            exp, coeff = -j - 1, Fraction(1)
            for _ in range(n - 1):
                coeff *= exp
                exp -= 1
            for k in range(1, n):
                coeff /= k
            assert exp == -j - n
            assert derived_field_coefficient(n, j) == (j, coeff)


def test_virasoro_examples():
    assert virasoro_mode(0, vac()).is_zero()
    assert virasoro_mode(0, state(3)) == state(3) * 3
    lhs = boson.commutator(lambda w: virasoro_mode(2, w), lambda w: virasoro_mode(-2, w), vac())
    assert lhs - virasoro_mode(0, vac()) * 4 == vac() * Fraction(1, 2)


def test_virasoro_zero_mode_on_charged_vacuum():
    for m in range(-3, 4):
        assert virasoro_mode(0, vac(m)) == vac(m) * Fraction(m * m, 2)


def test_commutative_examples():
    assert commutative_act_mode(1, state(1)).is_zero()
    assert commutative_act_mode(-2, vac()) == state(2)
    assert commutative_act_mode(0, state(1)).is_zero()


# -- combinatorics -----------------------------------------------------------


def test_partition_counts():
    assert [len(partitions(n)) for n in range(len(PARTITION_COUNTS))] == PARTITION_COUNTS


def test_z_lambda_sums_to_one():
    # sum over |lam| = n of 1/z_lam is 1 (class sizes of S_n over n!)
    for n in range(9):
        assert sum(Fraction(1, z_lambda(lam)) for lam in partitions(n)) == 1


# -- exhaustive sweeps at the stated sizes ------------------------------------


def test_vacuum_annihilation():
    for m in range(-5, 6):
        for n in range(1, 9):
            assert act_mode(n, vac(m)).is_zero()
        assert act_mode(0, vac(m)) == vac(m) * m


def test_translation_bracket():
    for d in range(8):
        for lam in partitions(d):
            v = BosonState(0, {lam: 1})
            for k in range(-6, 0):
                lhs = translation(act_mode(k, v)) - act_mode(k, translation(v))
                assert lhs == act_mode(k - 1, v) * -k


def test_l_minus_one_is_translation():
    for d in range(9):
        for lam in partitions(d):
            v = BosonState(0, {lam: 1})
            assert virasoro_mode(-1, v) == translation(v)


# -- properties --------------------------------------------------------------

small_states = st.dictionaries(
    st.sampled_from([lam for d in range(6) for lam in partitions(d)]),
    st.integers(-5, 5).filter(bool),
    min_size=1,
    max_size=4,
)


@given(small_states, st.integers(-4, 4), st.integers(-4, 4), st.integers(-2, 2))
def test_heisenberg_on_combinations(terms, n, m, charge):
    v = BosonState(charge, terms)
    lhs = act_mode(n, act_mode(m, v)) - act_mode(m, act_mode(n, v))
    assert lhs == (v * n if n == -m else BosonState.zero(charge))


@given(small_states, st.integers(-6, 6))
def test_virasoro_zero_mode_measures_degree(terms, charge):
    for lam, c in terms.items():
        v = BosonState(charge, {lam: c})
        assert virasoro_mode(0, v) == v * (sum(lam) + Fraction(charge * charge, 2))


@given(small_states)
def test_json_round_trip(terms):
    v = BosonState(-2, terms)
    assert BosonState.from_json(v.to_json()) == v


def test_json_format():
    v = state(2, 1, c=Fraction(3, 4), charge=1)
    assert v.to_json() == {"charge": 1, "terms": [{"partition": [2, 1], "coeff": "3/4"}]}


def test_mixed_charges_rejected():
    with pytest.raises(UnsupportedChargeError):
        state(1) + state(1, charge=1)
