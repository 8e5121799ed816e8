"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
so any hashable, mutually comparable objects can serve as variables: plain
integers for the Sato times ``x_i``, ``(level, order)`` pairs for the jet
symbols ``u_i^(j)``, and so on.  The empty tuple is the constant monomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

Monomial = tuple


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


class Poly:
    """Immutable sparse polynomial ``{monomial: Fraction}`` without zero entries."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[m] = c
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, v, power: int = 1) -> "Poly":
        return cls({((v, power),): 1}) if power else cls.const(1)

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # caller guarantees Fraction values without zeros
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _coerce(other)
            if not c:
                return Poly()
            return Poly._raw({m: v * c for m, v in self.terms.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Poly", keep: Callable[[Monomial], bool] | None = None) -> "Poly":
        """Product, optionally discarding monomials for which ``keep`` is false.

        ``keep`` must describe a down-closed set (e.g. a weight bound) for the
        truncated product to agree with truncating the full product.
        """
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                if keep is not None and not keep(m):
                    continue
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c) -> "Poly":
        return self * (Fraction(1) / _coerce(c))

    # comparisons --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure ----------------------------------------------------------
    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coefficient(self, monomial: Iterable) -> Fraction:
        return self.terms.get(tuple(sorted(monomial)), Fraction(0))

    def degree(self, v=None) -> int:
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(v, 0) for m in self.terms)

    def filter(self, keep: Callable[[Monomial], bool]) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if keep(m)})

    def map_coefficients(self, f: Callable[[Fraction], object]) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()})

    def diff(self, v) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if not e:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, 0) + c * e
        return Poly({m: c for m, c in out.items()})

    def coefficient_in(self, v, power: int) -> "Poly":
        """Coefficient of ``v**power`` viewed as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(v, 0) != power:
                continue
            d.pop(v, None)
            out[tuple(sorted(d.items()))] = c
        return Poly._raw(out)

    def substitute(self, mapping: Mapping, keep: Callable[[Monomial], bool] | None = None) -> "Poly":
        """Replace variables by polynomials (variables absent from ``mapping`` stay)."""
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = mapping[v] ** e
            return powers[key]

        result = Poly()
        for m, c in self.terms.items():
            acc = Poly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    acc = acc.mul(power(v, e), keep)
                else:
                    rest.append((v, e))
            if rest:
                acc = acc.mul(Poly._raw({tuple(rest): Fraction(1)}), keep)
            result = result + acc
        return result

    def evaluate(self, values: Mapping) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= _coerce(values[v]) ** e
            total += t
        return total

    # printing -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"

    def to_str(self, name: Callable[[object], str] = str) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            c = self.terms[m]
            factors = "*".join(name(v) if e == 1 else f"{name(v)}^{e}" for v, e in m)
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(factors)
            elif c == -1:
                parts.append("-" + factors)
            else:
                parts.append(f"{c}*{factors}")
        return " + ".join(parts).replace("+ -", "- ")
