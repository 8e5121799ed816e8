"""From a tau function to a dressing operator, a Lax operator and the KP flows.

Run with ``python3 demos/kp_sato_chain.py``.
"""

# %% The generic Lax operator L = d + u1 d^-1 + u2 d^-2 + ...
from fockvoa import psdo
from fockvoa.errors import VacuumNormalizationError
from fockvoa.tauhirota import TauPolynomial, tau_from_frame
from fockvoa.verify import DEFAULT_SEED, vacuum_normalized_frames



def show(report):
    status = "PASS" if report.passed else "FAIL"
    print(f"{report.name}: {status} ({report.cases} cases)")
    for f in report.failures[:3]:
        print(f"  {f.input}: expected {f.expected}, got {f.actual}")
    for n in report.notes[:3]:
        print("  note:", n)


L = psdo.generic_lax_operator(4)
print("L =", L)

# %% Flows dL/dt_k = [(L^k)_+, L]; the first two for u1
for k in (1, 2, 3):
    print(f"du1/dt{k} =", psdo.flows(L, k)[1])

# %% Compatibility of t2 and t3 yields the KP equation; flipping the t3 sign breaks it
show(psdo.kp_compatibility_check(4))
show(psdo.kp_compatibility_check(4, t3_sign=-1))

# %% The differential part P = (L^2)_+ has a square root Q with Q^2 = P
P = psdo.plus_part(psdo.power(L, 2, depth=4))
Q = psdo.nth_root(P, 2, depth=4)
print("P =", P)
print("Q =", Q)
print("Q^2 agrees with P:", psdo.power(Q, 2).agrees_with(P, 4))

# %% A tau function from a frame gives a dressing operator W and L = W d W^-1
F = vacuum_normalized_frames(DEFAULT_SEED, 1)[0]
tau = tau_from_frame(F)
print("tau =", tau)
W = psdo.dressing_from_tau(tau, depth=3, degree=2)
print("W =", W)
show(psdo.wave_checks(tau, k_max=3, depth=6, degree=5))

# %% Non-examples: x1^2 vanishes at t = 0, and 1 + x1^2 fails the flows
x1 = TauPolynomial.x(1)
try:
    psdo.wave_checks(x1 * x1, 3, 6, 5)
except VacuumNormalizationError as exc:
    print("x1^2 rejected:", exc)
show(psdo.wave_checks(TauPolynomial.one() + x1 * x1, 3, 6, 5))
