"""Heisenberg algebra and its bosonic Fock modules.

A basis vector ``b_{-l1} b_{-l2} ... |m>`` of the charge-``m`` module is
indexed by the partition ``(l1, l2, ...)``.  Partitions are plain tuples of
positive integers in weakly decreasing order; ``()`` is the vacuum.

Infinite sums (Virasoro modes) are never materialized: each operator only
visits the finitely many terms that act nontrivially on the given state.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import UnsupportedChargeError

Partition = tuple  # weakly decreasing tuple of positive ints


def make_partition(parts) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` with parts at most ``max_part``, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def z_lambda(lam: Partition) -> int:
    """``prod_i i^{m_i} m_i!``, the squared norm of ``b_{-lam}|m>``."""
    out = 1
    for part, mult in Counter(lam).items():
        out *= part**mult * math.factorial(mult)
    return out


# --------------------------------------------------------------------------
# the Lie algebra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HeisenbergElement:
    """``sum_n c_n b_n + central * 1``."""

    modes: Mapping[int, Fraction] = field(default_factory=dict)
    central: Fraction = Fraction(0)

    def __post_init__(self):
        clean = {int(n): Fraction(c) for n, c in self.modes.items() if c}
        object.__setattr__(self, "modes", clean)
        object.__setattr__(self, "central", Fraction(self.central))

    @classmethod
    def b(cls, n: int, c=1) -> "HeisenbergElement":
        return cls({n: c})

    def __add__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        modes = dict(self.modes)
        for n, c in other.modes.items():
            modes[n] = modes.get(n, 0) + c
        return HeisenbergElement(modes, self.central + other.central)

    def __mul__(self, c) -> "HeisenbergElement":
        c = Fraction(c)
        return HeisenbergElement({n: v * c for n, v in self.modes.items()}, self.central * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeisenbergElement)
            and self.modes == other.modes
            and self.central == other.central
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.modes.items()), self.central))


def lie_bracket(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    """``[b_n, b_m] = n delta_{n,-m} 1`` extended bilinearly; the result is central."""
    central = Fraction(0)
    for n, c in a.modes.items():
        d = b.modes.get(-n)
        if d:
            central += n * c * d
    return HeisenbergElement({}, central)


# --------------------------------------------------------------------------
# Fock states
# --------------------------------------------------------------------------


class BosonState:
    """Rational combination of ``b_{-lam}|charge>``."""

    __slots__ = ("charge", "terms")

    def __init__(self, charge: int = 0, terms: Mapping[Partition, object] | None = None):
        self.charge = int(charge)
        clean: dict[Partition, Fraction] = {}
        for lam, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                lam = tuple(lam)
                clean[lam] = clean.get(lam, 0) + c
                if not clean[lam]:
                    del clean[lam]
        self.terms = clean

    @classmethod
    def vacuum(cls, charge: int = 0) -> "BosonState":
        return cls(charge, {(): 1})

    @classmethod
    def basis_vector(cls, lam, charge: int = 0) -> "BosonState":
        return cls(charge, {make_partition(lam): 1})

    @classmethod
    def zero(cls, charge: int = 0) -> "BosonState":
        return cls(charge)

    def _check(self, other: "BosonState"):
        if self.charge != other.charge:
            raise UnsupportedChargeError(
                f"cannot combine states of charge {self.charge} and {other.charge}"
            )

    def __add__(self, other: "BosonState") -> "BosonState":
        if not other.terms:
            return self
        if not self.terms:
            return other
        self._check(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return BosonState(self.charge, out)

    def __neg__(self) -> "BosonState":
        return BosonState(self.charge, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BosonState") -> "BosonState":
        return self + (-other)

    def __mul__(self, c) -> "BosonState":
        c = Fraction(c)
        return BosonState(self.charge, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BosonState):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.charge == other.charge and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.charge, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(lam) for lam in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam in sorted(self.terms, key=lambda p: (sum(p), p)):
            ops = "".join(f"b_{-p}" for p in lam)
            parts.append(f"{self.terms[lam]}*{ops}|{self.charge}>")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "charge": self.charge,
            "terms": [
                {"partition": list(lam), "coeff": str(c)}
                for lam, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BosonState":
        return cls(
            data["charge"],
            {make_partition(t["partition"]): Fraction(t["coeff"]) for t in data["terms"]},
        )


def basis(charge: int, max_degree: int) -> Iterator[BosonState]:
    """Basis vectors of the charge-``charge`` module up to the given degree."""
    for d in range(max_degree + 1):
        for lam in partitions(d):
            yield BosonState(charge, {lam: 1})


def _insert(lam: Partition, part: int) -> Partition:
    return tuple(sorted(lam + (part,), reverse=True))


def _remove(lam: Partition, part: int) -> Partition:
    i = lam.index(part)
    return lam[:i] + lam[i + 1 :]


def act_mode(n: int, v: BosonState) -> BosonState:
    """Apply ``b_n``: creation for ``n < 0``, charge for ``n = 0``, contraction for ``n > 0``."""
    if n < 0:
        return BosonState(v.charge, {_insert(lam, -n): c for lam, c in v.terms.items()})
    if n == 0:
        return v * v.charge
    out: dict[Partition, Fraction] = {}
    for lam, c in v.terms.items():
        k = lam.count(n)
        if k:
            mu = _remove(lam, n)
            out[mu] = out.get(mu, 0) + c * n * k
    return BosonState(v.charge, out)


def commutative_act_mode(n: int, v: BosonState) -> BosonState:
    """Mode action with the cocycle switched off: only creation survives."""
    if n < 0:
        return act_mode(n, v)
    return BosonState.zero(v.charge)


def translation(v: BosonState) -> BosonState:
    """The operator ``T`` with ``[T, b_k] = -k b_{k-1}`` and ``T|0> = 0``.

    On a creation monomial ``T`` acts as a derivation raising one part by one.
    """
    if v.charge != 0:
        raise UnsupportedChargeError("translation is only defined on the charge-0 module")
    out: dict[Partition, Fraction] = {}
    for lam, c in v.terms.items():
        for i, part in enumerate(lam):
            # [T, b_{-p}] = p b_{-p-1}
            mu = _insert(lam[:i] + lam[i + 1 :], part + 1)
            out[mu] = out.get(mu, 0) + c * part
    return BosonState(0, out)


def derived_field_coefficient(n: int, j: int) -> tuple[int, Fraction]:
    """Mode content of ``Y(b_{-n}, z) = d^{n-1} b(z) / (n-1)!`` at ``z^{-j-n}``.

    Returns ``(j, scale)`` with ``scale = (-j-1)(-j-2)...(-j-n+1) / (n-1)!``, i.e.
    literal differentiation of ``sum_j b_j z^{-j-1}``.
    """
    if n < 1:
        raise ValueError(f"derived field index must be positive, got {n}")
    num = 1
    for i in range(1, n):
        num *= -j - i
    return j, Fraction(num, math.factorial(n - 1))


def _normal_ordered_pair(p: int, q: int, v: BosonState) -> BosonState:
    # annihilators (index >= 0) act first
    if p >= 0 and q < 0:
        p, q = q, p
    return act_mode(p, act_mode(q, v))


def _active_modes(v: BosonState) -> set[int]:
    active = {part for lam in v.terms for part in lam}
    if v.charge:
        active.add(0)
    return active


def virasoro_mode(n: int, v: BosonState) -> BosonState:
    """``L_n = 1/2 sum_j :b_j b_{n-j}:`` with annihilation modes on the right."""
    js = set(range(min(n, 0), max(n, 0) + 1))
    for a in _active_modes(v):
        js.add(a)
        js.add(n - a)
    out = BosonState.zero(v.charge)
    half = Fraction(1, 2)
    for j in sorted(js):
        out = out + _normal_ordered_pair(j, n - j, v) * half
    return out


def commutator(op_a, op_b, v: BosonState) -> BosonState:
    """``(AB - BA) v`` for two linear maps given as callables."""
    return op_a(op_b(v)) - op_b(op_a(v))
