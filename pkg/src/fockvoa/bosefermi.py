"""Boson-fermion correspondence between the charge sectors of the two Fock spaces.

``sigma`` sends a fermionic state ``v`` of charge ``m`` to
``sum_lam c_lam / z_lam * b_{-lam}|m>`` where ``c_lam`` is the coefficient of
``Psi_m`` in ``h_{lam_1} h_{lam_2} ... v``.  Positive h-modes commute, so the
order of application is immaterial.

Sign dictionary: a charge-0 monomial ``w`` equals ``wedge_sign(w)`` times the
descending wedge ``nu_{s1} ^ nu_{s2} ^ ...`` of its Maya diagram, and that
descending wedge maps to the Schur state of ``monomial_partition(w)``.  Hence
``sigma(w) = wedge_sign(w) * schur_oracle(monomial_partition(w))``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import boson, fermion
from .boson import BosonState, Partition, partitions, z_lambda
from .fermion import FermionMonomial, FermionState
from .polynomial import Poly
from .report import Report


def _vacuum_coefficient(v: FermionState, m: int) -> Fraction:
    vac = fermion.big_psi_state(m)
    (mono,) = vac.terms
    return v.terms.get(mono, Fraction(0))


@lru_cache(maxsize=4096)
def _sigma_monomial(mono: FermionMonomial) -> BosonState:
    m = mono.charge
    d = mono.degree
    v = FermionState({mono: 1})
    out: dict[Partition, Fraction] = {}
    for lam in partitions(d):
        w = v
        for part in lam:
            w = fermion.h_mode(part, w)
            if w.is_zero():
                break
        c = _vacuum_coefficient(w, m)
        if c:
            out[lam] = c / z_lambda(lam)
    return BosonState(m, out)


def sigma(v: FermionState) -> BosonState:
    """Image of a charge-homogeneous fermionic state in the bosonic module of equal charge."""
    m = fermion.charge(v)
    out = BosonState.zero(m)
    for mono, c in sorted(v.terms.items()):
        out = out + _sigma_monomial(mono) * c
    return out


def verify_intertwining(degree_cap: int, mode_cap: int, charge_cap: int = 2) -> Report:
    """Check ``sigma(h_n v) = b_n sigma(v)`` on basis monomials.

    Covers charges ``|m| <= charge_cap``, degrees ``<= degree_cap`` and modes
    ``|n| <= mode_cap``.  Negative caps give an empty sweep.
    """
    report = Report("sigma-intertwining")
    if degree_cap < 0 or mode_cap < 0:
        return report
    for m in range(-charge_cap, charge_cap + 1):
        for mono in fermion.basis(m, degree_cap):
            v = FermionState({mono: 1})
            sv = sigma(v)
            for n in range(-mode_cap, mode_cap + 1):
                lhs = sigma(fermion.h_mode(n, v))
                rhs = boson.act_mode(n, sv)
                report.check(f"m={m} n={n} v={mono}", rhs, lhs)
    return report


# --------------------------------------------------------------------------
# Schur oracle (independent of sigma)
# --------------------------------------------------------------------------


def x(i: int) -> Poly:
    return Poly.var(i)


@lru_cache(maxsize=None)
def complete_homogeneous(n: int) -> Poly:
    """Elementary Schur polynomial ``h_n(x)``: ``exp(sum x_i t^i) = sum h_n t^n``."""
    if n < 0:
        return Poly()
    if n == 0:
        return Poly.const(1)
    acc = Poly()
    for i in range(1, n + 1):
        acc = acc + x(i) * complete_homogeneous(n - i) * i
    return acc * Fraction(1, n)


def _det(rows: list[list[Poly]]) -> Poly:
    n = len(rows)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return rows[0][0]
    total = Poly()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


@lru_cache(maxsize=None)
def schur_polynomial(lam: Partition) -> Poly:
    """Jacobi-Trudi ``det(h_{lam_i - i + j})`` in the variables ``x_i``."""
    n = len(lam)
    rows = [[complete_homogeneous(lam[i] - i + j) for j in range(n)] for i in range(n)]
    return _det(rows)


def state_from_x_polynomial(p: Poly) -> BosonState:
    """Charge-0 state obtained by reading ``x_i`` as ``b_{-i} / i``."""
    out: dict[Partition, Fraction] = {}
    for mono, c in p.terms.items():
        parts: list[int] = []
        coeff = c
        for i, e in mono:
            parts.extend([i] * e)
            coeff /= Fraction(i) ** e
        lam = tuple(sorted(parts, reverse=True))
        out[lam] = out.get(lam, 0) + coeff
    return BosonState(0, out)


def schur_oracle(lam) -> BosonState:
    """Charge-0 state whose tau polynomial is the Schur polynomial ``s_lam``."""
    return state_from_x_polynomial(schur_polynomial(boson.make_partition(lam)))


def wedge_to_schur_check(degree_cap: int) -> Report:
    """Every charge-0 monomial maps to its signed Schur state."""
    report = Report("wedge-to-schur")
    for mono in fermion.basis(0, degree_cap):
        lam = fermion.monomial_partition(mono)
        expected = schur_oracle(lam) * fermion.wedge_sign(mono)
        report.check(f"w={mono} lam={lam}", expected, sigma(FermionState({mono: 1})))
    return report
