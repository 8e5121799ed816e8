"""Formal Laurent polynomials in ``z`` and one-forms ``f(z) dz``.

Coefficients are exact rationals.  Functions and one-forms are kept as
separate types so the residue pairing always takes one of each.

>>> f = LaurentPoly({-3: 1, 1: 2})
>>> cocycle(f, LaurentPoly({3: 1}))
Fraction(-3, 1)
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

Rational = Fraction


class LaurentPoly:
    """Finite Laurent polynomial ``sum_k c_k z^k``; zero coefficients are dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        for k, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(k)] = c
        self.coeffs: dict[int, Fraction] = clean

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            out: dict[int, Fraction] = {}
            for i, a in self.coeffs.items():
                for j, b in other.coeffs.items():
                    out[i + j] = out.get(i + j, 0) + a * b
            return LaurentPoly(out)
        c = Fraction(other)
        return LaurentPoly({k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "LaurentPoly(0)"
        body = " + ".join(f"{c}*z^{k}" for k, c in sorted(self.coeffs.items()))
        return f"LaurentPoly({body})"

    def principal_part(self) -> "LaurentPoly":
        return LaurentPoly({k: c for k, c in self.coeffs.items() if k < 0})

    def regular_part(self) -> "LaurentPoly":
        return LaurentPoly({k: c for k, c in self.coeffs.items() if k >= 0})

    def to_json(self) -> dict:
        return {str(k): str(c) for k, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(k): Fraction(v) for k, v in data.items()})


class OneForm:
    """The differential ``body(z) dz``."""

    __slots__ = ("body",)

    def __init__(self, body: LaurentPoly | Mapping[int, object]):
        self.body = body if isinstance(body, LaurentPoly) else LaurentPoly(body)

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.body + other.body)

    def __mul__(self, f) -> "OneForm":
        # multiplying a form by a function (or scalar) gives a form
        return OneForm(self.body * f)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, OneForm) and self.body == other.body

    def __hash__(self) -> int:
        return hash(("dz", self.body))

    def __repr__(self) -> str:
        return f"OneForm({self.body!r} dz)"


def residue(mu: OneForm) -> Fraction:
    """Coefficient of ``z^-1 dz``."""
    if not isinstance(mu, OneForm):
        raise TypeError("residue is taken of a one-form")
    return mu.body[-1]


def derivative(f: LaurentPoly) -> OneForm:
    """``f -> f'(z) dz``."""
    return OneForm({k - 1: k * c for k, c in f.coeffs.items()})


def pair(mu: OneForm, f: LaurentPoly) -> Fraction:
    """Residue pairing ``<mu, f> = Res_{z=0} f mu``."""
    if not isinstance(mu, OneForm) or not isinstance(f, LaurentPoly):
        raise TypeError("pair takes (OneForm, LaurentPoly)")
    return residue(mu * f)


def cocycle(f: LaurentPoly, g: LaurentPoly) -> Fraction:
    """The antisymmetric form ``-Res f dg``; on monomials ``(z^n, z^m) = n delta_{n,-m}``."""
    return -pair(derivative(g), f)


def symmetric_product(f: LaurentPoly, g: LaurentPoly) -> Fraction:
    """``Res f g dz``; null on ``z^n, n >= 0`` and on ``z^n, n < 0`` separately."""
    return residue(OneForm(f * g))


def circ_action(n: int, f: LaurentPoly) -> LaurentPoly:
    """Action of ``z^-n`` as the n-th derivative operator."""
    if n < 1:
        raise ValueError(f"circ_action needs n >= 1, got {n}")
    out = dict(f.coeffs)
    for _ in range(n):
        out = {k - 1: k * c for k, c in out.items() if k}
    return LaurentPoly(out)
