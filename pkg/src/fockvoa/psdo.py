"""Pseudo-differential operators, Lax flows and the dressing/wave-function chain.

An operator ``sum_k a_k d^k`` is stored as a map ``power -> coefficient``
together with a depth ``K``: every coefficient at a power ``>= -K`` is exact,
lower powers are unknown.  ``depth=None`` marks an exact finite expression.

Coefficients come from one of two rings sharing a tiny protocol
(``+ - *``, scalar multiplication, ``deriv()``, ``is_zero()``, ``ring``):

* ``DiffPolynomial``: polynomials in symbols ``u_i^(j)`` with ``d/dx`` acting
  by the Leibniz rule.
* ``SeriesCoeff``: power series in ``t_1 .. t_M`` known up to a total degree
  (their ``prec``), with ``t_1`` playing the role of ``x``.

Depth bookkeeping: if ``A`` is exact to ``-K_A`` and ``B`` to ``-K_B`` then
``A o B`` is exact to ``-min(K_A - ord B, K_B - ord A)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial

import gmpy2

from .errors import IncompatibleCoefficientsError, InvalidOperatorError, VacuumNormalizationError
from .polynomial import Poly
from .report import Report

# --------------------------------------------------------------------------
# differential polynomials
# --------------------------------------------------------------------------


def _symbol_name(v) -> str:
    i, j = v
    if j <= 3:
        return f"u{i}" + "'" * j
    return f"u{i}^({j})"


class DiffPolynomial:
    """Rational polynomial in ``u_i^(j)`` (level ``i >= 1``, derivative order ``j >= 0``)."""

    ring = "diffpoly"
    __slots__ = ("poly",)

    def __init__(self, poly: Poly | None = None):
        self.poly = poly if poly is not None else Poly()

    @classmethod
    def u(cls, i: int, j: int = 0) -> "DiffPolynomial":
        if i < 1 or j < 0:
            raise ValueError(f"no symbol u_{i}^({j})")
        return cls(Poly.var((i, j)))

    @classmethod
    def const(cls, c) -> "DiffPolynomial":
        return cls(Poly.const(c))

    def zero(self) -> "DiffPolynomial":
        return DiffPolynomial()

    def one(self) -> "DiffPolynomial":
        return DiffPolynomial.const(1)

    def __add__(self, other):
        if not isinstance(other, DiffPolynomial):
            other = DiffPolynomial.const(other)
        return DiffPolynomial(self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, DiffPolynomial):
            other = DiffPolynomial.const(other)
        return DiffPolynomial(self.poly - other.poly)

    def __neg__(self):
        return DiffPolynomial(-self.poly)

    def __mul__(self, other):
        if isinstance(other, DiffPolynomial):
            return DiffPolynomial(self.poly * other.poly)
        return DiffPolynomial(self.poly * other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffPolynomial):
            return self.poly == other.poly
        return self.poly == Poly.const(other)

    def __hash__(self) -> int:
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def deriv(self) -> "DiffPolynomial":
        """Total ``d/dx``: ``u_i^(j) -> u_i^(j+1)`` with the Leibniz rule."""
        out = Poly()
        for v in self.poly.variables():
            i, j = v
            out = out + self.poly.diff(v) * Poly.var((i, j + 1))
        return DiffPolynomial(out)

    def partial(self, i: int, j: int) -> "DiffPolynomial":
        return DiffPolynomial(self.poly.diff((i, j)))

    def symbols(self) -> set[tuple[int, int]]:
        return set(self.poly.variables())

    def levels(self) -> set[int]:
        return {i for i, _ in self.poly.variables()}

    def __repr__(self) -> str:
        return self.poly.to_str(_symbol_name)

    __str__ = __repr__

    def to_json(self) -> list:
        terms = [
            {"vars": [[i, j, e] for (i, j), e in m], "coeff": str(c)}
            for m, c in sorted(self.poly.terms.items())
        ]
        return terms

    @classmethod
    def from_json(cls, data) -> "DiffPolynomial":
        return cls(
            Poly({tuple(((int(i), int(j)), int(e)) for i, j, e in t["vars"]): Fraction(t["coeff"]) for t in data})
        )


def time_derivative(p: DiffPolynomial, flows: dict[int, DiffPolynomial]) -> DiffPolynomial:
    """``d/dt p`` given ``du_i/dt = flows[i]``; uses ``d(u_i^(j))/dt = d^j flows[i] / dx^j``."""
    out = DiffPolynomial()
    for i, j in sorted(p.symbols()):
        if i not in flows:
            raise KeyError(f"no flow supplied for u{i}")
        f = flows[i]
        for _ in range(j):
            f = f.deriv()
        out = out + p.partial(i, j) * f
    return out


# --------------------------------------------------------------------------
# truncated power series in t_1 .. t_M
# --------------------------------------------------------------------------

_BITS = 8
_MASK = (1 << _BITS) - 1
_DEGREE: dict[int, int] = {}


def _pack(exps) -> int:
    out = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= _MASK:
            raise ValueError(f"exponent {e} out of range")
        out |= int(e) << (_BITS * i)
    return out


def _unpack(m: int, nvars: int) -> tuple:
    return tuple((m >> (_BITS * i)) & _MASK for i in range(nvars))


def _degree(m: int) -> int:
    d = _DEGREE.get(m)
    if d is None:
        d, k = 0, m
        while k:
            d += k & _MASK
            k >>= _BITS
        _DEGREE[m] = d
    return d


def _mpq(c):
    if isinstance(c, Fraction):
        return gmpy2.mpq(c.numerator, c.denominator)
    return gmpy2.mpq(c)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class SeriesCoeff:
    """Power series in ``t_1 .. t_nvars`` known exactly up to total degree ``prec``.

    Arithmetic propagates precision: products are exact to
    ``min(prec_a + val_b, prec_b + val_a)`` and each derivative costs one degree.
    """

    ring = "series"
    __slots__ = ("nvars", "prec", "_terms", "_graded")

    def __init__(self, nvars: int, prec: int, terms: dict | None = None):
        self.nvars = nvars
        self.prec = prec
        packed = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have {nvars} entries")
            m = _pack(exps)
            if _degree(m) <= prec and c:
                packed[m] = packed.get(m, 0) + _mpq(c)
        self._terms = {m: c for m, c in packed.items() if c}
        self._graded = None

    @classmethod
    def _raw(cls, nvars: int, prec: int, terms: dict) -> "SeriesCoeff":
        obj = cls.__new__(cls)
        obj.nvars, obj.prec, obj._terms, obj._graded = nvars, prec, terms, None
        return obj

    @classmethod
    def constant(cls, c, nvars: int, prec: int) -> "SeriesCoeff":
        return cls._raw(nvars, prec, {0: _mpq(c)} if c and prec >= 0 else {})

    @classmethod
    def t(cls, i: int, nvars: int, prec: int) -> "SeriesCoeff":
        """The coordinate ``t_i`` (1-based)."""
        m = 1 << (_BITS * (i - 1))
        return cls._raw(nvars, prec, {m: gmpy2.mpq(1)} if prec >= 1 else {})

    @classmethod
    def from_poly(cls, p: Poly, nvars: int, prec: int) -> "SeriesCoeff":
        """Polynomial in integer variables ``1..nvars`` truncated at ``prec``."""
        terms = {}
        for mono, c in p.terms.items():
            exps = [0] * nvars
            for v, e in mono:
                if not 1 <= v <= nvars:
                    raise ValueError(f"variable t_{v} outside 1..{nvars}")
                exps[v - 1] = e
            terms[tuple(exps)] = c
        return cls(nvars, prec, terms)

    def zero(self) -> "SeriesCoeff":
        return SeriesCoeff._raw(self.nvars, self.prec, {})

    def one(self) -> "SeriesCoeff":
        return SeriesCoeff.constant(1, self.nvars, self.prec)

    # -- views ----------------------------------------------------------
    @property
    def terms(self) -> dict[tuple, Fraction]:
        return {_unpack(m, self.nvars): _frac(c) for m, c in self._terms.items()}

    def coefficient(self, exps) -> Fraction:
        return _frac(self._terms.get(_pack(exps), gmpy2.mpq(0)))

    def graded(self) -> list[tuple[int, list]]:
        if self._graded is None:
            by: dict[int, list] = {}
            for m, c in self._terms.items():
                by.setdefault(_degree(m), []).append((m, c))
            self._graded = sorted(by.items())
        return self._graded

    def valuation(self) -> int | None:
        g = self.graded()
        return g[0][0] if g else None

    def is_zero(self) -> bool:
        return not self._terms

    def truncate(self, prec: int) -> "SeriesCoeff":
        prec = min(prec, self.prec)
        return SeriesCoeff._raw(self.nvars, prec, {m: c for m, c in self._terms.items() if _degree(m) <= prec})

    def _check(self, other: "SeriesCoeff"):
        if self.nvars != other.nvars:
            raise IncompatibleCoefficientsError(f"series in {self.nvars} and {other.nvars} variables")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SeriesCoeff):
            other = SeriesCoeff.constant(other, self.nvars, self.prec)
        self._check(other)
        prec = min(self.prec, other.prec)
        out = {m: c for m, c in self._terms.items() if _degree(m) <= prec}
        for m, c in other._terms.items():
            if _degree(m) <= prec:
                s = out.get(m, 0) + c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return SeriesCoeff._raw(self.nvars, prec, out)

    __radd__ = __add__

    def __neg__(self):
        return SeriesCoeff._raw(self.nvars, self.prec, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SeriesCoeff):
            other = SeriesCoeff.constant(other, self.nvars, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SeriesCoeff):
            c = _mpq(other)
            if not c:
                return self.zero()
            return SeriesCoeff._raw(self.nvars, self.prec, {m: v * c for m, v in self._terms.items()})
        self._check(other)
        va, vb = self.valuation(), other.valuation()
        if va is None or vb is None:
            prec = min(self.prec + (vb if vb is not None else other.prec + 1),
                       other.prec + (va if va is not None else self.prec + 1))
            return SeriesCoeff._raw(self.nvars, prec, {})
        prec = min(self.prec + vb, other.prec + va)
        out: dict[int, object] = {}
        gb = other.graded()
        for da, la in self.graded():
            if da + vb > prec:
                break
            for db, lb in gb:
                if da + db > prec:
                    break
                for ma, ca in la:
                    for mb, cb in lb:
                        k = ma + mb
                        out[k] = out.get(k, 0) + ca * cb
        return SeriesCoeff._raw(self.nvars, prec, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def deriv(self, var: int = 1) -> "SeriesCoeff":
        """``d/dt_var``; ``var = 1`` is the x-derivative.  Costs one degree of precision."""
        shift = _BITS * (var - 1)
        unit = 1 << shift
        out = {}
        for m, c in self._terms.items():
            e = (m >> shift) & _MASK
            if e:
                out[m - unit] = c * e
        return SeriesCoeff._raw(self.nvars, self.prec - 1, out)

    def inverse(self) -> "SeriesCoeff":
        """Multiplicative inverse via the degree-by-degree recurrence; needs a nonzero constant term."""
        c0 = self._terms.get(0)
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        parts = {d: lst for d, lst in self.graded()}
        inv0 = 1 / c0
        g: dict[int, dict] = {0: {0: inv0}}
        for d in range(1, self.prec + 1):
            acc: dict[int, object] = {}
            for e in range(1, d + 1):
                for ma, ca in parts.get(e, ()):
                    for mb, cb in g[d - e].items():
                        k = ma + mb
                        acc[k] = acc.get(k, 0) + ca * cb
            g[d] = {m: -c * inv0 for m, c in acc.items() if c}
        out = {m: c for part in g.values() for m, c in part.items()}
        return SeriesCoeff._raw(self.nvars, self.prec, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, SeriesCoeff):
            prec = min(self.prec, other.prec)
            return (self - other).truncate(prec).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self._terms:
            return f"O(t^{self.prec + 1})"
        names = [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda t: (_degree(t[0]), _unpack(t[0], self.nvars))):
            exps = _unpack(m, self.nvars)
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
            parts.append(str(_frac(c)) if not mono else f"{_frac(c)}*{mono}")
        return " + ".join(parts) + f" + O(t^{self.prec + 1})"

    def to_json(self) -> dict:
        terms = [
            {"exps": list(exps), "coeff": str(c)}
            for exps, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        ]
        return {"vars": self.nvars, "prec": self.prec, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "SeriesCoeff":
        return cls(
            int(data["vars"]),
            int(data["prec"]),
            {tuple(int(e) for e in t["exps"]): Fraction(t["coeff"]) for t in data["terms"]},
        )


# --------------------------------------------------------------------------
# operators
# --------------------------------------------------------------------------


def _min_depth(*ds):
    ds = [d for d in ds if d is not None]
    return min(ds) if ds else None


@lru_cache(maxsize=None)
def gbinom(k: int, j: int) -> Fraction:
    """``binom(k, j)`` for any integer ``k`` and ``j >= 0``."""
    num = 1
    for i in range(j):
        num *= k - i
    return Fraction(num, factorial(j))


class PsdOp:
    """``sum_k coeffs[k] d^k`` exact for powers ``>= -depth``."""

    __slots__ = ("coeffs", "depth", "ring")

    def __init__(self, coeffs: dict, depth: int | None = None, ring: str | None = None):
        clean = {}
        for k, c in coeffs.items():
            k = int(k)
            if depth is not None and k < -depth:
                continue
            if ring is None:
                ring = c.ring
            elif c.ring != ring:
                raise IncompatibleCoefficientsError(f"mixed rings {ring} and {c.ring}")
            if not c.is_zero():
                clean[k] = c
        if ring is None:
            raise ValueError("cannot infer the coefficient ring of an empty operator; pass ring=")
        self.coeffs = dict(sorted(clean.items(), reverse=True))
        self.depth = depth
        self.ring = ring

    @classmethod
    def dpow(cls, n: int, one, depth: int | None = None) -> "PsdOp":
        """``d^n`` with unit coefficient ``one`` from the desired ring."""
        return cls({n: one}, depth, one.ring)

    @classmethod
    def identity(cls, one, depth: int | None = None) -> "PsdOp":
        return cls.dpow(0, one, depth)

    def order(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def coefficient(self, k: int):
        return self.coeffs.get(k)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, depth: int | None) -> "PsdOp":
        return PsdOp(self.coeffs, _min_depth(depth, self.depth), self.ring)

    def _check(self, other: "PsdOp"):
        if self.ring != other.ring:
            raise IncompatibleCoefficientsError(f"cannot combine {self.ring} and {other.ring} operators")

    def __add__(self, other: "PsdOp") -> "PsdOp":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return PsdOp(out, _min_depth(self.depth, other.depth), self.ring)

    def __neg__(self) -> "PsdOp":
        return PsdOp({k: -c for k, c in self.coeffs.items()}, self.depth, self.ring)

    def __sub__(self, other: "PsdOp") -> "PsdOp":
        return self + (-other)

    def scale(self, c) -> "PsdOp":
        return PsdOp({k: v * c for k, v in self.coeffs.items()}, self.depth, self.ring)

    def __matmul__(self, other: "PsdOp") -> "PsdOp":
        return compose(self, other)

    def agrees_with(self, other: "PsdOp", depth: int) -> bool:
        """Coefficients at every power ``>= -depth`` coincide."""
        diff = (self - other).truncate(depth)
        return diff.is_zero()

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({c})*d^{k}" if k else f"({c})" for k, c in self.coeffs.items()]
        tail = f" + O(d^{-self.depth - 1})" if self.depth is not None else ""
        return " + ".join(parts) + tail

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "depth": self.depth,
            "coeffs": {str(k): c.to_json() for k, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, data) -> "PsdOp":
        if isinstance(data, str):
            data = json.loads(data)
        ring = data["ring"]
        decode = {"diffpoly": DiffPolynomial.from_json, "series": SeriesCoeff.from_json}.get(ring)
        if decode is None:
            raise ValueError(f"unknown coefficient ring {ring!r}")
        return cls({int(k): decode(v) for k, v in data["coeffs"].items()}, data["depth"], ring)


def compose(A: PsdOp, B: PsdOp, depth: int | None = None) -> PsdOp:
    """``A o B`` by the generalized Leibniz rule ``d^k a = sum_j binom(k, j) a^(j) d^(k-j)``."""
    A._check(B)
    if A.is_zero() or B.is_zero():
        return PsdOp({}, _min_depth(depth, A.depth, B.depth), A.ring)
    K = _min_depth(
        depth,
        None if A.depth is None else A.depth - B.order(),
        None if B.depth is None else B.depth - A.order(),
    )
    if K is None and min(A.coeffs) < 0 and not _constant(B):
        raise ValueError("composition with negative powers needs a finite depth")
    out: dict[int, object] = {}
    derivs: dict[int, list] = {}
    for k, a in A.coeffs.items():
        for m, b in B.coeffs.items():
            chain = derivs.setdefault(m, [b])
            j = 0
            while True:
                p = k + m - j
                if K is not None and p < -K:
                    break
                if k >= 0 and j > k:
                    break
                if j >= len(chain):
                    chain.append(chain[-1].deriv())
                bj = chain[j]
                if K is None and bj.is_zero():
                    break
                c = gbinom(k, j)
                term = a * bj * c
                out[p] = out[p] + term if p in out else term
                j += 1
    return PsdOp(out, K, A.ring)


def _constant(B: PsdOp) -> bool:
    return all(c.deriv().is_zero() for c in B.coeffs.values())


def power(L: PsdOp, n: int, depth: int | None = None) -> PsdOp:
    """``L^n``; intermediate products are kept deep enough for the result to reach ``depth``."""
    if n < 0:
        raise ValueError("only nonnegative powers")
    if n == 0:
        one = next(iter(L.coeffs.values())).one()
        return PsdOp.identity(one, _min_depth(depth, L.depth))
    step = max(L.order() or 0, 0)
    out = L
    for j in range(2, n + 1):
        out = compose(out, L, None if depth is None else depth + (n - j) * step)
    return out


def plus_part(A: PsdOp) -> PsdOp:
    """Differential part: powers ``>= 0``.  Exact as soon as ``A`` is exact at ``d^0``."""
    if A.depth is not None and A.depth < 0:
        raise ValueError("operator is not known down to d^0")
    return PsdOp({k: c for k, c in A.coeffs.items() if k >= 0}, None, A.ring)


def minus_part(A: PsdOp) -> PsdOp:
    return PsdOp({k: c for k, c in A.coeffs.items() if k < 0}, A.depth, A.ring)


def inverse(S: PsdOp, depth: int) -> PsdOp:
    """``S^-1`` for ``S = 1 + X`` with ``X`` of negative order, as ``sum_n (-X)^n``."""
    one = S.coeffs.get(0)
    if S.order() != 0 or one is None or not (one - one.one()).is_zero():
        raise InvalidOperatorError("geometric inverse needs S = 1 + (negative powers)")
    depth = _min_depth(depth, S.depth)
    ident = PsdOp.identity(one.one(), depth)
    X = (S - ident).truncate(depth)
    term = ident
    total = ident
    for _ in range(depth):
        term = compose(term, -X, depth)
        if term.is_zero():
            break
        total = total + term
    return total.truncate(depth)


# --------------------------------------------------------------------------
# roots and Lax flows
# --------------------------------------------------------------------------


def nth_root(P: PsdOp, N: int, depth: int) -> PsdOp:
    """``L = d + sum_i l_i d^-i`` with ``L^N = P``; exact enough that ``L^N`` matches to ``d^-depth``.

    The returned operator carries depth ``depth + N - 1``.
    """
    if N < 1:
        raise InvalidOperatorError("root index must be positive")
    if P.order() != N or min(P.coeffs) < 0:
        raise InvalidOperatorError(f"expected a differential operator of order {N}")
    lead = P.coeffs[N]
    if not (lead - lead.one()).is_zero():
        raise InvalidOperatorError("operator is not monic")
    if N > 1 and (N - 1) in P.coeffs:
        raise InvalidOperatorError("operator is not normalized (nonzero subleading coefficient)")
    one = lead.one()
    K = depth + N - 1
    L = PsdOp({1: one}, K, P.ring)
    for i in range(1, K + 1):
        # coefficient of d^(N-1-i) in L^N is N l_i + (terms in l_1 .. l_{i-1})
        c = power(L, N, max(i - N + 1, 0)).coefficient(N - 1 - i)
        target = P.coeffs.get(N - 1 - i)
        li = (target if target is not None else one.zero()) - (c if c is not None else one.zero())
        coeffs = dict(L.coeffs)
        coeffs[-i] = li * Fraction(1, N)
        L = PsdOp(coeffs, K, P.ring)
    return L


def generic_lax_operator(depth: int) -> PsdOp:
    """``d + u_1 d^-1 + ... + u_depth d^-depth`` with symbolic coefficients."""
    one = DiffPolynomial.const(1)
    coeffs = {1: one}
    for i in range(1, depth + 1):
        coeffs[-i] = DiffPolynomial.u(i)
    return PsdOp(coeffs, depth, "diffpoly")


def lax_rhs(L: PsdOp, k: int, depth: int | None = None) -> PsdOp:
    """``[L^k_+, L]``.  Coefficient of ``d^-i`` is the ``t_k``-flow of ``u_i``.

    ``L^k_+`` has constant leading coefficient, so the leading error terms of
    the two products cancel and the bracket is exact one power deeper than
    plain composition bookkeeping would claim: to ``d^-(K - k + 1)``.
    """
    K = L.depth
    if K is not None and K < k - 1:
        raise ValueError(f"L must be known to depth {k - 1} to form L^{k}_+")
    Lk = power(L, k, None if K is None else max(K - k + 1, 0))
    A = plus_part(Lk)
    out_depth = _min_depth(depth, None if K is None else K - k + 1)
    # pretend L is known one power deeper; the bracket at d^-(K-k+1) cannot see it
    deeper = L if K is None else PsdOp(L.coeffs, K + 1, L.ring)
    bracket = compose(A, deeper, out_depth) - compose(deeper, A, out_depth)
    return bracket.truncate(out_depth)


def flows(L: PsdOp, k: int) -> dict[int, object]:
    """``{i: du_i/dt_k}`` for every ``i`` the bracket determines exactly."""
    R = lax_rhs(L, k)
    top = R.depth if R.depth is not None else max((-p for p in R.coeffs), default=0)
    zero = next(iter(L.coeffs.values())).zero()
    return {i: R.coeffs.get(-i, zero) for i in range(1, top + 1)}


def kp_compatibility_check(depth: int, t3_sign: int = 1) -> Report:
    """Mixed partials ``d_t3 d_t2 u_i = d_t2 d_t3 u_i`` under the symbolic Lax flows.

    Only levels ``i`` whose flows (and the flows they depend on) are exact at
    this depth are compared; at depth 4 this is ``u_1`` and the identity is
    the KP equation.  ``t3_sign=-1`` corrupts the ``t_3`` flow of the compared
    level only (flipping every ``t_3`` flow at once is the symmetry
    ``t_3 -> -t_3`` and would leave the residual zero).
    """
    report = Report("kp-compatibility")
    L = generic_lax_operator(depth)
    f2 = flows(L, 2) if depth >= 1 else {}
    f3 = flows(L, 3) if depth >= 2 else {}
    checked = []
    for i in sorted(set(f2) & set(f3)):
        if not f2[i].levels() <= set(f3) or not f3[i].levels() <= set(f2):
            continue
        lhs = time_derivative(f2[i], f3)
        rhs = time_derivative(f3[i] * t3_sign, f2)
        residual = lhs - rhs
        checked.append(i)
        report.check(f"u{i}: d_t3(d_t2 u{i}) - d_t2(d_t3 u{i})", "0", str(residual))
    if not checked:
        report.notes.append(f"depth {depth}: no level has exact t2 and t3 flows; nothing to compare")
    else:
        report.notes.append(f"depth {depth}: compared levels {checked}")
    return report


# --------------------------------------------------------------------------
# dressing operator and wave function
# --------------------------------------------------------------------------


def _tau_poly(tau) -> tuple[Poly, int]:
    from .tauhirota import TauPolynomial

    if isinstance(tau, TauPolynomial):
        return tau.poly, tau.nvars
    return tau, max((v for m in tau.terms for v, _ in m), default=0)


def dressing_from_tau(tau, depth: int, degree: int, nvars: int | None = None) -> PsdOp:
    """``S = 1 + sum_j s_j d^-j`` from ``tau(t - [z]) / tau(t) = 1 + sum_j s_j z^j``.

    Coefficients are ``SeriesCoeff`` in ``t_1 .. t_M`` exact to total degree
    ``degree``; ``M`` defaults to the number of variables of ``tau`` (at least 1).
    """
    p, used = _tau_poly(tau)
    if not p.constant_term():
        raise VacuumNormalizationError("tau vanishes at t = 0; the wave function is undefined")
    M = max(used, nvars or 0, 1)
    z = ("z", 0)
    shift = {i: Poly.var(("t", i)) - Poly.var(z, i) * Fraction(1, i) for i in range(1, used + 1)}
    shifted = p.substitute(shift, lambda m: sum(e for v, e in m if v == z) <= depth)
    inv = SeriesCoeff.from_poly(p, M, degree).inverse()
    one = SeriesCoeff.constant(1, M, degree)
    coeffs = {0: one}
    for j in range(1, depth + 1):
        num = shifted.coefficient_in(z, j)
        num = Poly({tuple((v[1], e) for v, e in m): c for m, c in num.terms.items()})
        coeffs[-j] = SeriesCoeff.from_poly(num, M, degree) * inv
    return PsdOp(coeffs, depth, "series")


def apply_to_wave(op: PsdOp, f: dict[int, object], zmax: int) -> dict[int, object]:
    """``op (f e^xi)`` as ``g e^xi`` with ``d^m (s e^xi) = sum_i binom(m, i) s^(i) z^(i-m) e^xi``.

    ``f`` maps powers of ``z`` to coefficients; only powers ``<= zmax`` are produced.
    """
    out: dict[int, object] = {}
    for m, a in op.coeffs.items():
        for j, s in f.items():
            si = s
            i = 0
            while True:
                q = j + i - m
                if q > zmax or (m >= 0 and i > m):
                    break
                term = a * si * gbinom(m, i)
                out[q] = out[q] + term if q in out else term
                i += 1
                si = si.deriv()
    return out


_SHORT = "precision >= "


def _compare_wave(report: Report, label: str, lhs: dict, rhs: dict, qrange, degree: int):
    for q in qrange:
        a, b = lhs.get(q), rhs.get(q)
        if a is None and b is None:
            report.cases += 1
            continue
        ref = a if a is not None else b
        diff = (a if a is not None else ref.zero()) - (b if b is not None else ref.zero())
        _compare_series(report, f"{label} z^{q}", diff, degree)


def _compare_series(report: Report, case: str, diff, degree: int):
    if diff is not None and diff.prec < degree:
        report.expect(case, False, f"{_SHORT}{degree}", f"precision {diff.prec}")
        return
    residual = None if diff is None else diff.truncate(degree)
    report.check(case, "0", "0" if residual is None or residual.is_zero() else str(residual))


def _wave_report(p: Poly, M: int, k_max: int, depth: int, degree: int, pad: int) -> Report:
    report = Report("wave")
    S = dressing_from_tau(p, depth + 1, degree + pad, M)
    Sinv = inverse(S, depth + 1)
    one = S.coeffs[0].one()
    check = compose(S, Sinv, depth + 1) - PsdOp.identity(one)
    for k in range(0, -(depth + 1) - 1, -1):
        _compare_series(report, f"S Sinv - 1 at d^{k}", check.coeffs.get(k), degree)
    L = compose(compose(S, PsdOp.dpow(1, one), depth + 1), Sinv, depth + 1).truncate(depth)
    f = {0: one}
    for j in range(1, depth + 2):
        f[j] = S.coeffs.get(-j, one.zero())
    f_max = depth + 1

    # (a) eigenvalue relation
    qmax = min(L.depth, f_max - 1)
    lhs = apply_to_wave(L, f, qmax)
    rhs = {j - 1: s for j, s in f.items() if j - 1 <= qmax}
    before = len(report.failures)
    _compare_wave(report, "L w = z^-1 w:", lhs, rhs, range(-1, qmax + 1), degree)
    status = "pass" if len(report.failures) == before else "FAIL"
    report.notes.append(f"eigenvalue z^-1..z^{qmax}: {status}")

    # (b) linear flows
    for k in range(2, k_max + 1):
        A = plus_part(power(L, k, max(L.depth - k + 1, 0)))
        qmax = f_max - k
        lhs = {j - k: s for j, s in f.items() if j - k <= qmax}
        for j, s in f.items():
            if j <= qmax:
                ds = s.deriv(k)
                lhs[j] = lhs[j] + ds if j in lhs else ds
        rhs = apply_to_wave(A, f, qmax)
        before = len(report.failures)
        _compare_wave(report, f"k={k} d_k w = L^k_+ w:", lhs, rhs, range(-k, qmax + 1), degree)
        status = "pass" if len(report.failures) == before else "FAIL"
        report.notes.append(f"k={k}: {status}")
    return report


def wave_checks(tau, k_max: int, depth: int, degree: int, pad: int | None = None) -> Report:
    """Sato chain for ``tau``: ``S S^-1 = 1``, ``L w = z^-1 w`` and ``d_k w = L^k_+ w`` (``2 <= k <= k_max``).

    ``L = S d S^-1`` with ``S`` from ``dressing_from_tau``; residuals are
    compared exactly through t-degree ``degree`` and ``d``-depth ``depth``.

    Every derivative costs the series one degree of precision, so ``S`` is
    built ``pad`` degrees deeper than reported.  With ``pad=None`` the pad
    starts at 2 and grows until no residual falls short of ``degree``; a
    shortfall that survives is reported as a failure, never as a pass.
    """
    p, used = _tau_poly(tau)
    M = max(used, k_max, 1)
    if pad is not None:
        return _wave_report(p, M, k_max, depth, degree, pad)
    for pad in range(2, depth + k_max + 3):
        report = _wave_report(p, M, k_max, depth, degree, pad)
        if not any(f.expected.startswith(_SHORT) for f in report.failures):
            break
    report.notes.append(f"series carried {pad} degrees past the reported degree")
    return report


def lax_from_tau(tau, depth: int, degree: int, pad: int = 4, nvars: int | None = None) -> PsdOp:
    """``L = S d S^-1`` for the dressing operator of ``tau``."""
    S = dressing_from_tau(tau, depth + 1, degree + pad, nvars)
    one = S.coeffs[0].one()
    Sinv = inverse(S, depth + 1)
    return compose(compose(S, PsdOp.dpow(1, one), depth + 1), Sinv, depth + 1).truncate(depth)
