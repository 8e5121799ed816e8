from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockvoa.laurent import (
    LaurentPoly,
    OneForm,
    circ_action,
    cocycle,
    derivative,
    pair,
    residue,
    symmetric_product,
)

z = LaurentPoly.monomial


def form(coeffs):
    return OneForm(LaurentPoly(coeffs))


laurent_polys = st.dictionaries(
    st.integers(-10, 10), st.fractions(max_denominator=7).filter(bool), max_size=6
).map(LaurentPoly)


# -- frozen examples ---------------------------------------------------------


@pytest.mark.parametrize(
    "mu, expected",
    [({-1: 1}, 1), ({3: 1}, 0), ({-1: 2, -2: 5, 1: 1}, 2)],
)
def test_residue_examples(mu, expected):
    assert residue(form(mu)) == expected


def test_residue_rejects_functions():
    with pytest.raises(TypeError):
        residue(z(-1))


@pytest.mark.parametrize(
    "f, expected",
    [
        (z(3), {2: 3}),
        (z(0), {}),
        (z(-2) + z(1, 4), {-3: -2, 0: 4}),
    ],
)
def test_derivative_examples(f, expected):
    assert derivative(f) == form(expected)


@pytest.mark.parametrize(
    "mu, f, expected",
    [({-1: 1}, z(0), 1), ({-3: 1}, z(2), 1), ({-3: 1}, z(1), 0)],
)
def test_pair_examples(mu, f, expected):
    assert pair(form(mu), f) == expected


def test_pair_is_typed():
    with pytest.raises(TypeError):
        pair(z(-1), z(0))


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (z(2), z(-2), 2),
        (z(0), z(5), 0),
        (z(-3) + z(1, 2), z(3), -3),
    ],
)
def test_cocycle_examples(f, g, expected):
    assert cocycle(f, g) == expected


@pytest.mark.parametrize(
    "f, g, expected",
    [(z(0), z(-1), 1), (z(2), z(-3), 1), (z(2), z(2), 0)],
)
def test_symmetric_product_examples(f, g, expected):
    assert symmetric_product(f, g) == expected


@pytest.mark.parametrize(
    "n, f, expected",
    [(1, z(3), z(2, 3)), (2, z(3), z(1, 6)), (1, z(0, 7), LaurentPoly())],
)
def test_circ_action_examples(n, f, expected):
    assert circ_action(n, f) == expected


def test_circ_action_needs_positive_order():
    with pytest.raises(ValueError):
        circ_action(0, z(1))


# -- exhaustive small sweeps -------------------------------------------------


def test_cocycle_on_monomials():
    for n in range(-10, 11):
        for m in range(-10, 11):
            assert cocycle(z(n), z(m)) == (n if n == -m else 0)


def test_cocycle_vanishes_on_negative_span():
    for n in range(1, 11):
        for m in range(1, 11):
            assert cocycle(z(-n), z(-m)) == 0


def test_symmetric_product_null_subspaces():
    for n in range(0, 8):
        for m in range(0, 8):
            assert symmetric_product(z(n), z(m)) == 0
            assert symmetric_product(z(-n - 1), z(-m - 1)) == 0


# -- properties --------------------------------------------------------------


@given(laurent_polys, laurent_polys)
def test_cocycle_antisymmetric(f, g):
    assert cocycle(f, g) == -cocycle(g, f)


@given(laurent_polys, laurent_polys)
def test_symmetric_product_symmetric(f, g):
    assert symmetric_product(f, g) == symmetric_product(g, f)


@given(laurent_polys)
def test_total_derivative_has_no_residue(f):
    assert residue(derivative(f)) == 0


@given(laurent_polys, laurent_polys, laurent_polys)
def test_cocycle_bilinear(f, g, h):
    assert cocycle(f + g, h) == cocycle(f, h) + cocycle(g, h)


@given(laurent_polys)
def test_json_round_trip(f):
    assert LaurentPoly.from_json(f.to_json()) == f


def test_json_format():
    f = LaurentPoly({-1: 2, 3: Fraction(-5, 7)})
    assert f.to_json() == {"-1": "2", "3": "-5/7"}
    assert LaurentPoly.from_json('{"-1": "2", "3": "-5/7"}') == f
