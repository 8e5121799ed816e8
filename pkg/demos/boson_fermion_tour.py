"""A walk from the Heisenberg Fock space to charged fermions and back.

Run with ``python3 demos/boson_fermion_tour.py``.  Each cell prints what it
computes; everything is exact rational arithmetic.
"""

# %% Bosons: states are polynomials in b_{-1}, b_{-2}, ... on a charged vacuum
from fractions import Fraction

from fockvoa import boson, fermion
from fockvoa.bosefermi import schur_oracle, sigma
from fockvoa.boson import BosonState, partitions
from fockvoa.fermion import FermionState

vac = BosonState.vacuum()
v = boson.act_mode(-2, boson.act_mode(-1, vac))
print("b_-2 b_-1 |0>          =", v)
print("b_2 of that            =", boson.act_mode(2, v))  # [b_2, b_-2] = 2

# %% Heisenberg relation [b_n, b_m] = n delta_{n+m,0}, checked on a small sweep
bad = 0
for lam in partitions(4):
    w = BosonState(0, {lam: 1})
    for n in range(-3, 4):
        for m in range(-3, 4):
            lhs = boson.commutator(lambda s: boson.act_mode(n, s), lambda s: boson.act_mode(m, s), w)
            bad += lhs != w * (n if n + m == 0 else 0)
print("Heisenberg mismatches on degree 4:", bad)

# %% Virasoro: the central term for a single free boson is 1/2
L = boson.virasoro_mode
c = boson.commutator(lambda s: L(2, s), lambda s: L(-2, s), vac) - L(0, vac) * 4
print("([L_2, L_-2] - 4 L_0)|0> =", c)  # c/12 * (2^3 - 2) = c/2, so c = 1
assert c == vac * Fraction(1, 2)

# %% Fermions: psi_n and psi*_n anticommute to delta
w = FermionState.monomial(psi=(-1,), star=(0,))
print("psi_-1 psi*_0 |0>      =", w, " charge", fermion.charge(w))
print("h_1 of it              =", fermion.h_mode(1, w))

# %% The Psi_m states carry charge m under h_0
for m in range(-2, 3):
    s = fermion.big_psi_state(m)
    print(f"h_0 Psi_{m:+d} = {fermion.h_mode(0, s)}")

# %% sigma: fermionic monomials land on Schur functions, up to a sign
for mono in fermion.basis(0, 3):
    f = FermionState({mono: 1})
    lam = fermion.monomial_partition(mono)
    print(f"{str(f):28s} -> {sigma(f)}   (Schur s_{lam} = {schur_oracle(lam)})")
