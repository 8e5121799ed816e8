import math
from fractions import Fraction

import pytest

from fockvoa import boson, fermion
from fockvoa.bosefermi import (
    complete_homogeneous,
    schur_oracle,
    schur_polynomial,
    sigma,
    verify_intertwining,
    wedge_to_schur_check,
    x,
)
from fockvoa.boson import BosonState, partitions
from fockvoa.fermion import FermionState
from fockvoa.polynomial import Poly

from oracles import _rank

mono = FermionState.monomial


def test_sigma_examples():
    assert sigma(mono(psi=(-1,))) == BosonState.vacuum(-1)
    assert sigma(mono(star=(0,))) == BosonState.vacuum(1)
    # sign fixed by the psi-before-psi* ordering
    assert sigma(mono(psi=(-1,), star=(0,))) == BosonState.basis_vector((1,)) * -1


def test_sigma_of_charge_vacua():
    for m in range(-4, 5):
        assert sigma(fermion.big_psi_state(m)) == BosonState.vacuum(m)


@pytest.mark.parametrize("caps", [(4, 3), (1, 1), (0, 0)])
def test_verify_intertwining_examples(caps):
    report = verify_intertwining(*caps)
    assert report.passed
    assert report.failures == []


def test_verify_intertwining_negative_cap_is_vacuous():
    report = verify_intertwining(-1, 3)
    assert report.passed and report.cases == 0


def test_schur_oracle_examples():
    assert schur_oracle((1,)) == BosonState.basis_vector((1,))
    assert schur_oracle(()) == BosonState.vacuum(0)
    # s_(2) = x_1^2/2 + x_2 with x_i = b_{-i}/i
    expected = BosonState(0, {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)})
    assert schur_oracle((2,)) == expected
    assert schur_polynomial((2,)) == x(1) * x(1) * Fraction(1, 2) + x(2)


def test_schur_polynomials_by_hand():
    x1, x2, x3 = x(1), x(2), x(3)
    assert schur_polynomial((1, 1)) == x1 * x1 * Fraction(1, 2) - x2
    assert schur_polynomial((2, 1)) == x1 * x1 * x1 * Fraction(1, 3) - x3
    assert complete_homogeneous(3) == x1 * x1 * x1 * Fraction(1, 6) + x1 * x2 + x3


def test_schur_sum_rule():
    # s_lam(1, 0, 0, ...) = dim(lam) / n! and sum_lam dim(lam)^2 = n!
    for n in range(1, 7):
        total = Fraction(0)
        for lam in partitions(n):
            total += schur_polynomial(lam).evaluate({i: int(i == 1) for i in range(1, n + 1)}) ** 2
        assert total * math.factorial(n) == 1


def test_wedge_to_schur_examples():
    assert wedge_to_schur_check(0).passed
    assert wedge_to_schur_check(5).passed
    assert fermion.monomial_partition(fermion.FermionMonomial((-1,), (0,))) == (1,)


def test_sigma_preserves_charge_and_degree():
    for c in range(-3, 4):
        for m in fermion.basis(c, 6):
            image = sigma(FermionState({m: 1}))
            assert image.charge == c
            assert image.degrees() == {m.degree}


def test_sigma_injective():
    for c in (-2, 0, 1):
        for d in range(7):
            monos = [m for m in fermion.basis(c, d) if m.degree == d]
            parts = partitions(d)
            rows = [[sigma(FermionState({m: 1})).terms.get(lam, Fraction(0)) for lam in parts] for m in monos]
            assert _rank(rows) == len(monos)


def test_sigma_is_linear():
    a = mono(psi=(-2,), star=(0,))
    b = mono(psi=(-1,), star=(-1,))
    assert sigma(a * 3 + b * Fraction(-1, 2)) == sigma(a) * 3 + sigma(b) * Fraction(-1, 2)


def test_intertwining_stated_sweep():
    assert verify_intertwining(5, 4, charge_cap=2).passed


def test_intertwining_on_combinations():
    v = mono(psi=(-3,), star=(0,)) - mono(psi=(-2,), star=(-1,)) * 2
    sv = sigma(v)
    for n in range(-4, 5):
        assert sigma(fermion.h_mode(n, v)) == boson.act_mode(n, sv)
