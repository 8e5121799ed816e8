"""Tau polynomials, Grassmannian frames and the Hirota bilinear identity.

The Sato times ``x_1, x_2, ...`` are the integers ``1, 2, ...`` as polynomial
variables, with ``deg x_i = i``.  ``b_{-n}`` acts as multiplication by
``n x_n`` and ``b_n`` as ``d/dx_n``.

Bilinear residual.  With ``[q] = (q, q^2/2, q^3/3, ...)`` and ``k = 1/q``,

    R(x, x') = coefficient of k^-1 in
               exp(sum (x_i - x'_i) k^i) tau1(x - [k^-1]) tau2(x' + [k^-1])

which is the residue form of the vertex-operator identity once ``b_{-i}/i``
is multiplication by ``x_i`` and ``b_j/j`` is ``(1/j) d/dx_j``.  ``R == 0`` iff
``tau1 = tau2`` is a KP tau function.  The dk-normalized coefficient of
``k^-1`` is validated by requiring every Schur polynomial to pass and
``x_1^2`` to fail.

Frames.  A ``k x n`` frame on the window ``(w, w+1, ..., w+n-1)`` spans the
subspace ``rows + span{nu_j : j < w}``.  It is a charge-0 point exactly when
the window holds ``k`` negative sites.  For a column subset ``S`` (ascending)
the minor ``Delta_S = det(F[:, S])`` is the Pluecker coordinate of the
partition read off the Maya diagram ``{window[j] : j in S} + {j < w}``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from . import bosefermi
from .boson import BosonState, Partition
from .errors import DegenerateFrameError, UnsupportedChargeError
from .fermion import FermionMonomial, FermionState, partition_monomial, wedge_sign
from .polynomial import Poly
from .report import Mismatch, Report

# --------------------------------------------------------------------------
# tau polynomials
# --------------------------------------------------------------------------


def weight(mono) -> int:
    return sum(i * e for i, e in mono)


class TauPolynomial:
    """Polynomial in ``x_1 .. x_nvars`` with rational coefficients."""

    __slots__ = ("poly", "nvars")

    def __init__(self, poly: Poly | None = None, nvars: int | None = None):
        poly = poly if poly is not None else Poly()
        used = max((v for m in poly.terms for v, _ in m), default=0)
        if nvars is None:
            nvars = used
        if used > nvars:
            raise ValueError(f"polynomial uses x_{used} but nvars={nvars}")
        self.poly = poly
        self.nvars = nvars

    @classmethod
    def from_terms(cls, terms: dict, nvars: int | None = None) -> "TauPolynomial":
        """``terms`` maps exponent vectors ``(e_1, ..., e_M)`` to coefficients."""
        poly = Poly({tuple((i + 1, e) for i, e in enumerate(exps) if e): c for exps, c in terms.items()})
        if nvars is None:
            nvars = max((len(k) for k in terms), default=0)
        return cls(poly, nvars)

    @classmethod
    def one(cls) -> "TauPolynomial":
        return cls(Poly.const(1), 0)

    @classmethod
    def x(cls, i: int) -> "TauPolynomial":
        return cls(Poly.var(i), i)

    def __add__(self, other: "TauPolynomial") -> "TauPolynomial":
        return TauPolynomial(self.poly + other.poly, max(self.nvars, other.nvars))

    def __sub__(self, other: "TauPolynomial") -> "TauPolynomial":
        return TauPolynomial(self.poly - other.poly, max(self.nvars, other.nvars))

    def __mul__(self, other) -> "TauPolynomial":
        if isinstance(other, TauPolynomial):
            return TauPolynomial(self.poly * other.poly, max(self.nvars, other.nvars))
        return TauPolynomial(self.poly * other, self.nvars)

    __rmul__ = __mul__

    def __neg__(self) -> "TauPolynomial":
        return TauPolynomial(-self.poly, self.nvars)

    def __eq__(self, other) -> bool:
        if isinstance(other, TauPolynomial):
            return self.poly == other.poly
        if isinstance(other, Poly):
            return self.poly == other
        return self.poly == Poly.const(other)

    def __hash__(self) -> int:
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def weight(self) -> int:
        return max((weight(m) for m in self.poly.terms), default=0)

    def truncate(self, weight_cap: int) -> "TauPolynomial":
        return TauPolynomial(self.poly.filter(lambda m: weight(m) <= weight_cap), self.nvars)

    def constant_term(self) -> Fraction:
        return self.poly.constant_term()

    def __repr__(self) -> str:
        return f"TauPolynomial({self.poly.to_str(lambda i: f'x{i}')})"

    def to_json(self) -> dict:
        M = self.nvars
        terms = []
        for m, c in self.poly.terms.items():
            exps = [0] * M
            for i, e in m:
                exps[i - 1] = e
            terms.append({"exps": exps, "coeff": str(c)})
        terms.sort(key=lambda t: (sum((i + 1) * e for i, e in enumerate(t["exps"])), t["exps"]))
        return {"vars": M, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "TauPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        M = int(data["vars"])
        terms = {}
        for t in data["terms"]:
            exps = tuple(int(e) for e in t["exps"])
            if len(exps) != M:
                raise ValueError(f"exponent vector {list(exps)} does not have {M} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {list(exps)}")
            terms[exps] = terms.get(exps, 0) + Fraction(t["coeff"])
        return cls.from_terms(terms, M)


def tau_from_boson(v: BosonState) -> TauPolynomial:
    """``b_{-lam}|0> -> prod_i lam_i x_{lam_i}``."""
    if v.charge != 0 and not v.is_zero():
        raise UnsupportedChargeError("tau polynomials live in the charge-0 module")
    terms = {}
    for lam, c in v.terms.items():
        mono: dict[int, int] = {}
        coeff = c
        for part in lam:
            mono[part] = mono.get(part, 0) + 1
            coeff *= part
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, 0) + coeff
    return TauPolynomial(Poly(terms), max((lam[0] for lam in v.terms if lam), default=0))


def tau_from_fermion(v: FermionState) -> TauPolynomial:
    from .fermion import charge

    if charge(v) != 0:
        raise UnsupportedChargeError("tau polynomials need a charge-0 fermionic state")
    return tau_from_boson(bosefermi.sigma(v))


def schur_tau(lam) -> TauPolynomial:
    """``s_lam`` as a tau polynomial, via the Jacobi-Trudi state."""
    return tau_from_boson(bosefermi.schur_oracle(lam))


# --------------------------------------------------------------------------
# Hirota bilinear residual
# --------------------------------------------------------------------------

Q = ("q", 0)


def _xweight(mono) -> int:
    return sum(v[1] * e for v, e in mono if v[0] != "q")


@lru_cache(maxsize=None)
def _shift_poly(i: int, name: str, sign: int) -> Poly:
    # x_i -> X_i + sign * q^i / i
    return Poly.var((name, i)) + Poly.var(Q, i) * Fraction(sign, i)


def _shifted(tau: Poly, name: str, sign: int, cap: int) -> Poly:
    mapping = {i: _shift_poly(i, name, sign) for i in {v for m in tau.terms for v, _ in m}}
    keep = lambda m: _xweight(m) <= cap  # noqa: E731
    return tau.substitute(mapping, keep)


def _difference_schur(n: int, cap: int, cache: dict) -> Poly:
    # h_n(x - x') with weight <= cap
    if n in cache:
        return cache[n]
    if n == 0:
        cache[0] = Poly.const(1)
        return cache[0]
    keep = lambda m: _xweight(m) <= cap  # noqa: E731
    acc = Poly()
    for i in range(1, n + 1):
        d = (Poly.var(("x", i)) - Poly.var(("x'", i))) * i
        acc = acc + d.mul(_difference_schur(n - i, cap, cache), keep)
    cache[n] = acc * Fraction(1, n)
    return cache[n]


def _as_poly(t) -> Poly:
    return t.poly if isinstance(t, TauPolynomial) else t


def hirota_residual(tau1, tau2, weight_cap: int | None = 8) -> Poly:
    """Bilinear residual ``R(x, x')`` truncated to total weight ``<= weight_cap``.

    The result is a polynomial in the variables ``("x", i)`` and ``("x'", i)``;
    it is zero iff the pair satisfies the bilinear identity to that weight.
    ``weight_cap=None`` returns the full (finite) residual.
    """
    p1, p2 = _as_poly(tau1), _as_poly(tau2)
    if p1.is_zero() or p2.is_zero():
        return Poly()
    full = max(map(weight, p1.terms)) + max(map(weight, p2.terms))
    cap = full if weight_cap is None else min(weight_cap, full)
    keep = lambda m: _xweight(m) <= cap  # noqa: E731
    a = _shifted(p1, "x", -1, cap)
    b = _shifted(p2, "x'", +1, cap)
    prod = a.mul(b, keep)
    by_q: dict[int, dict] = {}
    for m, c in prod.terms.items():
        qpow = 0
        rest = []
        for v, e in m:
            if v == Q:
                qpow = e
            else:
                rest.append((v, e))
        by_q.setdefault(qpow, {})[tuple(rest)] = c
    cache: dict[int, Poly] = {}
    result = Poly()
    for qpow, terms in sorted(by_q.items()):
        n = qpow - 1  # k^n from the exponential times k^{-(n+1)}
        if n < 0:
            continue
        h = _difference_schur(n, cap, cache)
        if h.is_zero():
            continue
        result = result + h.mul(Poly._raw(terms), keep)
    return result


def hirota_bilinear_operator(weight: int = 4, symmetric: bool = True) -> Poly:
    """Hirota operator ``P(D)`` of the given weight, derived from the residue expansion.

    Passing to ``x = u + y, x' = u - y`` turns the residual into
    ``sum_n p_n(2y) p_{n+1}(-D~) exp(y.D) tau.tau`` with ``D~_i = D_i / i``
    (``p_n`` the elementary Schur polynomials).  The coefficient of the single
    variable ``y_{weight-1}`` is returned as a polynomial in ``D_1, D_2, ...``
    (integer variables).  With ``symmetric=True`` monomials of odd total
    order are dropped, since they annihilate ``tau.tau``.
    """
    j = weight - 1
    if j < 1:
        raise ValueError("weight must be at least 2")
    Y = ("y", j)
    D = lambda i: Poly.var(("D", i))  # noqa: E731
    # exp(2 y_j k^j) and exp(y_j D_j), both to first order in y_j
    exp_y_k = {0: Poly.const(1), j: Poly.var(Y) * 2}
    exp_yD = Poly.const(1) + Poly.var(Y) * D(j)
    total = Poly()
    for n, pn in exp_y_k.items():
        minus_dtilde = {i: D(i) * Fraction(-1, i) for i in range(1, n + 2)}
        p_next = bosefermi.complete_homogeneous(n + 1).substitute(minus_dtilde)
        total = total + pn * p_next * exp_yD
    op = _untupled(total.coefficient_in(Y, 1))
    if symmetric:
        op = op.filter(lambda m: sum(e for _, e in m) % 2 == 0)
    return op


def apply_bilinear(op: Poly, f, g) -> Poly:
    """``(op(D) f.g)(u)`` with ``f(u+y) g(u-y) = exp(y.D) f.g``; result in the variables of ``f``."""
    f, g = _as_poly(f), _as_poly(g)
    plus = {i: Poly.var(i) + Poly.var(("y", i)) for i in f.variables() | g.variables()}
    minus = {i: Poly.var(i) - Poly.var(("y", i)) for i in plus}
    # integer variables sort before tuples is not defined; keep everything as tuples
    fp = _tupled(f).substitute({("u", i): _tupled(p) for i, p in plus.items()})
    gm = _tupled(g).substitute({("u", i): _tupled(p) for i, p in minus.items()})
    prod = fp * gm
    out = Poly()
    for mono, c in op.terms.items():
        ycoeff = prod
        scale = 1
        for i, e in mono:
            ycoeff = ycoeff.coefficient_in(("y", i), e)
            scale *= factorial(e)
        ycoeff = ycoeff.filter(lambda m: all(v[0] != "y" for v, _ in m))
        out = out + ycoeff * (c * scale)
    return _untupled(out)


def _tupled(p: Poly) -> Poly:
    return Poly({tuple(((("u", v) if isinstance(v, int) else v), e) for v, e in m): c for m, c in p.terms.items()})


def _untupled(p: Poly) -> Poly:
    return Poly({tuple((v[1], e) for v, e in m): c for m, c in p.terms.items()})


def lowest_hirota_equation(tau) -> Poly:
    """Weight-4 component of the residual in sum/difference variables.

    Substitutes ``x = u + y``, ``x' = u - y`` into the full residual of
    ``(tau, tau)`` and returns the coefficient of ``y_3`` (other ``y`` set to
    zero) as a polynomial in ``u_i`` (integer variables).  Equals
    ``(hirota_bilinear_operator(4)(D) tau.tau)(u)``.
    """
    p = _as_poly(tau)
    R = hirota_residual(p, p, None)
    if R.is_zero():
        return Poly()
    y = ("y", 3)
    mapping = {}
    for v in R.variables():
        name, i = v
        base = Poly.var(("u", i))
        if i == 3:
            base = base + (Poly.var(y) if name == "x" else -Poly.var(y))
        mapping[v] = base
    return _untupled(R.substitute(mapping).coefficient_in(y, 1))


# --------------------------------------------------------------------------
# frames and Pluecker coordinates
# --------------------------------------------------------------------------


def rational_det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def rational_rank(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
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


@dataclass(frozen=True)
class GrassmannFrame:
    """``k x n`` rational matrix whose columns stand for ``z^window[0] .. z^window[-1]``."""

    rows: tuple
    window: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        window = tuple(int(w) for w in self.window)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "window", window)
        if any(len(r) != len(window) for r in rows):
            raise ValueError("every row needs one entry per window exponent")
        if any(b != a + 1 for a, b in zip(window, window[1:])):
            raise ValueError(f"window must be consecutive exponents: {window}")
        negatives = sum(1 for w in window if w < 0)
        if window and window[0] < 0 and negatives != len(rows):
            raise ValueError(
                f"a charge-0 frame needs as many rows ({len(rows)}) as negative window sites ({negatives})"
            )

    @classmethod
    def standard(cls, rows) -> "GrassmannFrame":
        """Frame on the window ``-k, ..., n-k-1``."""
        k, n = len(rows), len(rows[0])
        return cls(rows, tuple(range(-k, n - k)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.window)

    def rank(self) -> int:
        return rational_rank(self.rows)

    def minors(self) -> dict[tuple, Fraction]:
        k, n = self.shape
        return {
            cols: rational_det([[r[c] for c in cols] for r in self.rows])
            for cols in combinations(range(n), k)
        }

    def column_partition(self, cols) -> Partition:
        """Partition of the Maya diagram ``{window[c] : c in cols} + {j < window[0]}``."""
        sites = sorted((self.window[c] for c in cols), reverse=True)
        lam = [s + i for i, s in enumerate(sites, start=1)]
        return tuple(p for p in lam if p > 0)

    def to_json(self) -> dict:
        return {"window": list(self.window), "rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data) -> "GrassmannFrame":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(Fraction(x) for x in r) for r in data["rows"]), tuple(data["window"]))


def random_frame(k: int, n: int, rng: random.Random, bound: int = 3) -> GrassmannFrame:
    """Seeded full-rank frame with small rational entries on the standard window."""
    while True:
        rows = [
            [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
            for _ in range(k)
        ]
        frame = GrassmannFrame.standard(rows)
        if frame.rank() == k:
            return frame


def _require_full_rank(frame: GrassmannFrame):
    if frame.rank() != len(frame.rows):
        raise DegenerateFrameError(f"frame of shape {frame.shape} is rank deficient")


def tau_from_frame(frame: GrassmannFrame, weight_cap: int | None = None) -> TauPolynomial:
    """``sum_lam Delta_lam s_lam`` over partitions fitting the frame (``|lam| <= weight_cap``)."""
    _require_full_rank(frame)
    out = TauPolynomial.one() * 0
    for cols, delta in sorted(frame.minors().items()):
        if not delta:
            continue
        lam = frame.column_partition(cols)
        if weight_cap is not None and sum(lam) > weight_cap:
            continue
        out = out + schur_tau(lam) * delta
    return out


def frame_to_fermion(frame: GrassmannFrame) -> FermionState:
    """Charge-0 fermionic state of the frame, normalized so the vacuum frame gives ``|0>``."""
    _require_full_rank(frame)
    terms: dict[FermionMonomial, Fraction] = {}
    for cols, delta in frame.minors().items():
        if not delta:
            continue
        mono = partition_monomial(frame.column_partition(cols), 0)
        terms[mono] = terms.get(mono, 0) + delta * wedge_sign(mono)
    return FermionState(terms)


def plucker_relations(minors: dict, k: int, n: int) -> list[tuple]:
    """Violated quadratic Pluecker relations among the given maximal minors.

    For every ``I`` of size ``k-1`` and ``J`` of size ``k+1``:
    ``sum_l (-1)^l p(I + j_l) p(J - j_l) = 0`` with ``p`` extended antisymmetrically.
    """

    def p(idx):
        if len(set(idx)) < len(idx):
            return Fraction(0)
        order = sorted(range(len(idx)), key=lambda t: idx[t])
        inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
        return minors.get(tuple(sorted(idx)), Fraction(0)) * (-1) ** inv

    bad = []
    for I in combinations(range(n), k - 1):
        for J in combinations(range(n), k + 1):
            total = Fraction(0)
            for l, j in enumerate(J):
                rest = J[:l] + J[l + 1 :]
                total += (-1) ** l * p(I + (j,)) * p(rest)
            if total:
                bad.append((I, J, total))
    return bad


def plucker_check(frame_or_minors, k: int | None = None, n: int | None = None) -> Report:
    """Verify all quadratic Pluecker relations, for a frame or a raw minor table."""
    if isinstance(frame_or_minors, GrassmannFrame):
        k, n = frame_or_minors.shape
        minors = frame_or_minors.minors()
    else:
        minors = frame_or_minors
    report = Report("plucker")
    bad = plucker_relations(minors, k, n)
    total = len(list(combinations(range(n), k - 1))) * len(list(combinations(range(n), k + 1)))
    report.cases = total
    for I, J, val in bad:
        report.failures.append(Mismatch(f"I={I} J={J}", "0", str(val)))
    return report
