"""Tau functions from Grassmannian frames, tested against the Hirota equations.

Run with ``python3 demos/hirota_frames.py``.
"""

# %% Schur polynomials are tau functions: their bilinear residual vanishes
import random

from fockvoa.tauhirota import (
    TauPolynomial,
    hirota_bilinear_operator,
    hirota_residual,
    lowest_hirota_equation,
    plucker_check,
    random_frame,
    schur_tau,
    tau_from_frame,
)

for lam in [(1,), (2, 1), (3, 1, 1), (2, 2)]:
    r = hirota_residual(schur_tau(lam), schur_tau(lam), weight_cap=8)
    print(f"s_{lam}: residual is zero -> {r.is_zero()}")

# %% x1^2 is not: its residual already shows up at weight 3
x1 = TauPolynomial.x(1)
r = hirota_residual(x1 * x1, x1 * x1, weight_cap=3)
print("x1^2 residual:", r)

# %% The lowest equation, (D1^4/12 + D2^2/4 - D1 D3/3) tau.tau
print("operator:", hirota_bilinear_operator(4))  # variable i stands for D_i
print("on x1^2: ", lowest_hirota_equation(x1 * x1))
print("on s_21: ", lowest_hirota_equation(schur_tau((2, 1))))

# %% A random 2 x 5 frame gives Pluecker coordinates and a tau
rng = random.Random(7)
F = random_frame(2, 5, rng)
tau = tau_from_frame(F)
print("frame rows:", [[str(c) for c in row] for row in F.rows], "window", F.window)
print("Pluecker relations hold:", plucker_check(F).passed)
print("tau =", tau)
print("Hirota residual to weight 8 is zero:", hirota_residual(tau, tau, weight_cap=8).is_zero())

# %% Perturb one coefficient and the identity breaks
broken = tau + x1 * x1 * x1
print("perturbed residual is zero:", hirota_residual(broken, broken, weight_cap=8).is_zero())
