"""Independent reference implementations used only by the tests.

None of these import the code paths they check: the wedge model re-derives
fermion signs from exterior algebra, the sympy routines redo operator
composition and the bilinear residue with a different arithmetic engine.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import sympy as sp

# partition numbers p(0..12), OEIS A000041
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


# --------------------------------------------------------------------------
# semi-infinite wedge, truncated at a floor
# --------------------------------------------------------------------------


class Wedge:
    """Sites ``<= floor`` are implicitly occupied; ``sites`` lists the others in descending order."""

    def __init__(self, floor: int):
        self.floor = floor

    def vacuum(self) -> dict:
        return {tuple(range(-1, self.floor, -1)): 1}

    def wedge(self, site: int, state: dict) -> dict:
        """``nu_site ^ (.)`` placed in front, then sorted (one sign per greater site)."""
        assert site > self.floor
        out: dict = {}
        for sites, c in state.items():
            if site in sites:
                continue
            greater = sum(1 for s in sites if s > site)
            new = tuple(sorted(sites + (site,), reverse=True))
            out[new] = out.get(new, 0) + c * (-1) ** greater
        return {k: v for k, v in out.items() if v}

    def contract(self, site: int, state: dict) -> dict:
        """Interior product removing ``nu_site`` (sign from its position)."""
        assert site > self.floor
        out: dict = {}
        for sites, c in state.items():
            if site not in sites:
                continue
            pos = sites.index(site)
            new = sites[:pos] + sites[pos + 1 :]
            out[new] = out.get(new, 0) + c * (-1) ** pos
        return {k: v for k, v in out.items() if v}

    # psi*_l wedges nu_{-l}; psi_n contracts nu_n
    def psi_star(self, l: int, state: dict) -> dict:
        return self.wedge(-l, state)

    def psi(self, n: int, state: dict) -> dict:
        return self.contract(n, state)

    def monomial(self, psi, star) -> dict:
        state = self.vacuum()
        for l in reversed(star):
            state = self.psi_star(l, state)
        for n in reversed(psi):
            state = self.psi(n, state)
        return state


def fermion_state_to_wedge(v, floor: int) -> dict:
    """Map a library ``FermionState`` into the wedge model (through its public fields only)."""
    model = Wedge(floor)
    out: dict = {}
    for mono, c in v.terms.items():
        for sites, s in model.monomial(mono.psi, mono.star).items():
            out[sites] = out.get(sites, 0) + Fraction(c) * s
    return {k: v for k, v in out.items() if v}


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def is_decomposable(v, floor: int = -12) -> bool:
    """A finite p-vector is decomposable iff ``{x : x ^ w = 0}`` has dimension ``p``.

    All states in the tests have the same number of sites above ``floor``
    (charge 0), so the wedge lives in the exterior algebra of the window.
    """
    w = fermion_state_to_wedge(v, floor)
    if not w:
        return False
    sizes = {len(s) for s in w}
    assert len(sizes) == 1
    p = sizes.pop()
    window = list(range(-floor - 1, floor, -1))  # generous: covers every touched site
    window = [s for s in window if s > floor]
    # matrix of x -> x ^ w, columns indexed by basis vectors e_s
    targets = sorted({tuple(sorted(set(S) | {s}, reverse=True)) for S in w for s in window if s not in S})
    index = {t: i for i, t in enumerate(targets)}
    cols = []
    for s in window:
        col = [Fraction(0)] * len(targets)
        for S, c in w.items():
            if s in S:
                continue
            greater = sum(1 for t in S if t > s)
            key = tuple(sorted(S + (s,), reverse=True))
            col[index[key]] += Fraction(c) * (-1) ** greater
        cols.append(col)
    rows = [list(r) for r in zip(*cols)] if targets else []
    kernel = len(window) - (_rank(rows) if rows else 0)
    return kernel == p


# --------------------------------------------------------------------------
# sympy pseudo-differential operators
# --------------------------------------------------------------------------

X = sp.Symbol("x")


def sym_u(i: int):
    return sp.Function(f"u{i}")(X)


def sym_compose(A: dict, B: dict, depth: int) -> dict:
    """Generalized Leibniz with ``sympy.binomial`` and ``sympy.diff``."""
    out: dict = {}
    for k, a in A.items():
        for m, b in B.items():
            j = 0
            while True:
                p = k + m - j
                if p < -depth or (k >= 0 and j > k):
                    break
                term = a * sp.diff(b, X, j) * sp.binomial(k, j)
                out[p] = sp.expand(out.get(p, 0) + term)
                j += 1
    return {p: c for p, c in out.items() if c != 0}


def sym_lax(depth: int) -> dict:
    L = {1: sp.Integer(1)}
    for i in range(1, depth + 1):
        L[-i] = sym_u(i)
    return L


def sym_flow(k: int, depth: int) -> dict:
    """``[L^k_+, L]`` computed from scratch in sympy, kept to ``d^-(depth-k+1)``."""
    L = sym_lax(depth + 1)
    Lk = L
    for _ in range(k - 1):
        Lk = sym_compose(Lk, L, depth + k)
    plus = {p: c for p, c in Lk.items() if p >= 0}
    a = sym_compose(plus, L, depth + 1)
    b = sym_compose(L, plus, depth + 1)
    keys = set(a) | set(b)
    return {p: sp.expand(a.get(p, 0) - b.get(p, 0)) for p in keys if p >= -(depth - k + 1)}


def diffpoly_to_sympy(p) -> sp.Expr:
    """Library ``DiffPolynomial`` to a sympy expression via its JSON form."""
    expr = sp.Integer(0)
    for term in p.to_json():
        factor = sp.Rational(term["coeff"])
        for i, j, e in term["vars"]:
            factor *= sp.diff(sym_u(i), X, j) ** e
        expr += factor
    return sp.expand(expr)


# --------------------------------------------------------------------------
# sympy bilinear residue
# --------------------------------------------------------------------------


def sympy_hirota_residual(tau_terms: dict, nvars: int, weight: int) -> dict:
    """Residual of ``(tau, tau)`` up to total weight ``weight`` by direct series expansion.

    ``tau_terms`` maps exponent tuples to rationals.  Returns a dict from
    ``(exps_x, exps_xprime)`` to rationals, nonzero entries only.
    """
    n = max(nvars, weight + 1)
    xs = sp.symbols(f"a1:{n + 1}")
    ys = sp.symbols(f"b1:{n + 1}")
    q, eps = sp.symbols("q eps")

    def tau(args):
        return sum(
            sp.Rational(str(c)) * sp.Mul(*[args[i] ** e for i, e in enumerate(exps)])
            for exps, c in tau_terms.items()
        )

    # grade x_i, x'_i by eps^i so total weight can be truncated
    gx = [xs[i] * eps ** (i + 1) for i in range(n)]
    gy = [ys[i] * eps ** (i + 1) for i in range(n)]
    # k = 1/q; exp(sum (x_i - x'_i) k^i) = exp(sum (x_i - x'_i) q^-i)
    t1 = tau([gx[i] - q ** (i + 1) / sp.Integer(i + 1) for i in range(nvars)])
    t2 = tau([gy[i] + q ** (i + 1) / sp.Integer(i + 1) for i in range(nvars)])
    prod = sp.expand(t1 * t2)
    # residue in k of exp(...) * prod(q): sum_m [k^m]exp * [q^{m+1}] prod
    d = [gx[i] - gy[i] for i in range(n)]
    s = sp.Symbol("s")
    top = sp.Poly(prod, q).degree()
    # exp(sum d_i s^i) truncated at s^top, as a plain power sum
    P = sum(d[i] * s ** (i + 1) for i in range(min(n, top)))
    gen, term = sp.Integer(1), sp.Integer(1)
    for j in range(1, top + 1):
        term = sp.expand(term * P / j)
        term = sum(term.coeff(s, e) * s**e for e in range(top + 1))
        gen += term
    result = sp.Integer(0)
    for (deg,), coeff in sp.Poly(prod, q).terms():
        if deg >= 1:
            result += sp.expand(gen.coeff(s, deg - 1) * coeff)
    result = sp.expand(result)
    truncated = sum(result.coeff(eps, w) for w in range(weight + 1))
    out = {}
    for mono, c in sp.Poly(sp.expand(truncated), *xs, *ys).terms():
        if c != 0:
            out[(tuple(mono[:n]), tuple(mono[n:]))] = Fraction(int(sp.numer(c)), int(sp.denom(c)))
    return out
