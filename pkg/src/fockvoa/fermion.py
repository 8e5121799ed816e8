"""Fermionic Fock space spanned by normal-ordered Clifford monomials.

A basis vector is

    psi_{n1} ... psi_{nk} psi*_{l1} ... psi*_{lm} |0>,   n1 < ... < nk < 0,  l1 < ... < lm <= 0

with relations ``{psi_n, psi*_m} = delta_{n,-m}``, all other anticommutators
zero, ``psi_n|0> = 0`` for ``n >= 0`` and ``psi*_n|0> = 0`` for ``n > 0``.

Semi-infinite wedge picture: ``|0> = nu_{-1} ^ nu_{-2} ^ ...``, ``psi*_l``
wedges ``nu_{-l}`` on the left and ``psi_n`` contracts ``nu_n``.  So a
monomial is the Maya diagram obtained from the vacuum sites ``{-1, -2, ...}``
by emptying the sites ``n_i`` and filling the sites ``-l_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .boson import Partition, partitions
from .errors import InhomogeneousStateError


@dataclass(frozen=True, order=True)
class FermionMonomial:
    psi: tuple = ()
    star: tuple = ()

    def __post_init__(self):
        psi, star = tuple(self.psi), tuple(self.star)
        if any(a >= b for a, b in zip(psi, psi[1:])) or any(n >= 0 for n in psi):
            raise ValueError(f"psi indices must be strictly increasing negatives: {psi}")
        if any(a >= b for a, b in zip(star, star[1:])) or any(n > 0 for n in star):
            raise ValueError(f"psi* indices must be strictly increasing and <= 0: {star}")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "star", star)

    @property
    def charge(self) -> int:
        return len(self.star) - len(self.psi)

    @property
    def parity(self) -> int:
        return (len(self.psi) + len(self.star)) % 2

    @property
    def degree(self) -> int:
        """Energy above the charge vacuum ``Psi_m``; equals ``|lambda|`` of the Maya diagram."""
        c = self.charge
        return -sum(self.psi) - sum(self.star) - c * (c - 1) // 2

    def __str__(self) -> str:
        ops = "".join(f"psi_{n}" for n in self.psi) + "".join(f"psi*_{n}" for n in self.star)
        return f"{ops}|0>" if ops else "|0>"


VACUUM = FermionMonomial()


class FermionState:
    """Finite rational combination of basis monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[FermionMonomial, object] | None = None):
        clean: dict[FermionMonomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @classmethod
    def vacuum(cls) -> "FermionState":
        return cls({VACUUM: 1})

    @classmethod
    def monomial(cls, psi=(), star=(), coeff=1) -> "FermionState":
        return cls({FermionMonomial(tuple(psi), tuple(star)): coeff})

    def __add__(self, other: "FermionState") -> "FermionState":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return FermionState(out)

    def __neg__(self) -> "FermionState":
        return FermionState({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FermionState") -> "FermionState":
        return self + (-other)

    def __mul__(self, c) -> "FermionState":
        c = Fraction(c)
        return FermionState({m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FermionState) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in sorted(self.terms.items()))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"psi": list(m.psi), "star": list(m.star), "coeff": str(c)}
                for m, c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "FermionState":
        return cls(
            {
                FermionMonomial(tuple(t["psi"]), tuple(t["star"])): Fraction(t["coeff"])
                for t in data["terms"]
            }
        )


# --------------------------------------------------------------------------
# single-operator action on monomials: return (sign, monomial) or None
# --------------------------------------------------------------------------


def _psi_on(n: int, m: FermionMonomial):
    if n < 0:
        if n in m.psi:
            return None
        p = sum(1 for a in m.psi if a < n)
        psi = m.psi[:p] + (n,) + m.psi[p:]
        return (-1) ** p, FermionMonomial(psi, m.star)
    # annihilator: pass all psi's, contract psi*_{-n}
    if -n not in m.star:
        return None
    q = m.star.index(-n)
    star = m.star[:q] + m.star[q + 1 :]
    return (-1) ** (len(m.psi) + q), FermionMonomial(m.psi, star)


def _psi_star_on(n: int, m: FermionMonomial):
    if n <= 0:
        if n in m.star:
            return None
        q = sum(1 for a in m.star if a < n)
        star = m.star[:q] + (n,) + m.star[q:]
        return (-1) ** (len(m.psi) + q), FermionMonomial(m.psi, star)
    # annihilator: contracts psi_{-n}; the remainder reaches the vacuum and dies
    if -n not in m.psi:
        return None
    p = m.psi.index(-n)
    psi = m.psi[:p] + m.psi[p + 1 :]
    return (-1) ** p, FermionMonomial(psi, m.star)


def _apply(single, n: int, v: FermionState) -> FermionState:
    out: dict[FermionMonomial, Fraction] = {}
    for m, c in v.terms.items():
        r = single(n, m)
        if r is not None:
            sign, m2 = r
            out[m2] = out.get(m2, 0) + sign * c
    return FermionState(out)


def apply_psi(n: int, v: FermionState) -> FermionState:
    """Left multiplication by ``psi_n``, rewritten in the monomial basis."""
    return _apply(_psi_on, n, v)


def apply_psi_star(n: int, v: FermionState) -> FermionState:
    """Left multiplication by ``psi*_n``, rewritten in the monomial basis."""
    return _apply(_psi_star_on, n, v)


def big_psi_state(n: int) -> FermionState:
    """The charge-``n`` vacuum ``Psi_n``.

    ``Psi_{-n} = psi_{-n} ... psi_{-1}|0>`` and ``Psi_n = psi*_{-n+1} ... psi*_0|0>``
    for ``n > 0``; ``Psi_0 = |0>``.
    """
    if n < 0:
        return FermionState.monomial(psi=tuple(range(n, 0)))
    return FermionState.monomial(star=tuple(range(-n + 1, 1)))


def charge(v: FermionState) -> int:
    charges = {m.charge for m in v.terms}
    if len(charges) > 1:
        raise InhomogeneousStateError(f"state mixes charges {sorted(charges)}")
    return charges.pop() if charges else 0


def _touched(v: FermionState) -> set[int]:
    return {n for m in v.terms for n in m.psi + m.star}


def h_mode(N: int, v: FermionState) -> FermionState:
    """Bosonic bilinear ``h_N``.

    ``h_N = sum_k psi*_k psi_{N-k}`` for ``N != 0``.  For ``N = 0`` the
    normal-ordered charge operator ``sum_{k<=0} psi*_k psi_{-k} - sum_{k>0} psi_{-k} psi*_k``.
    """
    if N == 0:
        return _h0(v)
    ks = set()
    if N < 0:
        ks.update(range(N + 1, 1))  # both factors create
    for m in v.terms:
        ks.update(-a for a in m.psi)  # psi*_k removes psi_{-k}
        ks.update(l + N for l in m.star)  # psi_{N-k} removes psi*_{k-N}
    out = FermionState()
    for k in sorted(ks):
        out = out + apply_psi_star(k, apply_psi(N - k, v))
    return out


def _h0(v: FermionState) -> FermionState:
    out = FermionState()
    for l in sorted({l for m in v.terms for l in m.star}):
        out = out + apply_psi_star(l, apply_psi(-l, v))
    for n in sorted({n for m in v.terms for n in m.psi}):
        out = out - apply_psi(n, apply_psi_star(-n, v))
    return out


def h0_as_printed(v: FermionState) -> FermionState:
    """``sum_{k>=1} psi*_{-k} psi_k + sum_{k<=0} psi_k psi*_{-k}``, summed literally.

    This is the other ordering of the zero mode.  It is *not* the charge
    operator: it gives ``h0|0> = |0>``.  Kept for documentation and tests.
    """
    out = FermionState()
    # k >= 1: psi_k must contract a psi*_{-k}
    for k in sorted({-l for m in v.terms for l in m.star if l < 0}):
        out = out + apply_psi_star(-k, apply_psi(k, v))
    # k <= 0: k = 0 always acts; k < 0 needs psi*_{-k} to contract psi_k
    for k in sorted({0} | {n for m in v.terms for n in m.psi}):
        out = out + apply_psi(k, apply_psi_star(-k, v))
    return out


def field_mode_psi(exponent: int) -> int:
    """Mode index ``n`` whose ``psi_n`` multiplies ``z^exponent`` in ``Psi(z) = sum psi_n z^{-n-1}``."""
    return -exponent - 1


def field_mode_psi_star(exponent: int) -> int:
    """Mode index ``n`` whose ``psi*_n`` multiplies ``z^exponent`` in ``Psi*(z) = sum psi*_n z^{-n}``."""
    return -exponent


# --------------------------------------------------------------------------
# Maya diagrams
# --------------------------------------------------------------------------


def maya_sites(m: FermionMonomial, floor: int) -> list[int]:
    """Occupied sites ``> floor`` in descending order (all sites ``<= floor`` are occupied)."""
    emptied = set(m.psi)
    filled = {-l for l in m.star}
    sites = [s for s in range(-1, floor, -1) if s not in emptied]
    return sorted(set(sites) | filled, reverse=True)


def monomial_partition(m: FermionMonomial) -> Partition:
    """Partition read off the Maya diagram: ``lambda_i = s_i + i - charge``."""
    c = m.charge
    floor = min((*m.psi, *(-l for l in m.star), 0)) - 1
    sites = maya_sites(m, floor)
    lam = [s + i - c for i, s in enumerate(sites, start=1)]
    return tuple(p for p in lam if p > 0)


def partition_monomial(lam: Partition, charge: int = 0) -> FermionMonomial:
    """Inverse of :func:`monomial_partition` at the given charge."""
    ell = len(lam)
    # sites s_i = lam_i - i + charge; every site <= charge - ell - 1 is occupied
    occupied = {p - i + charge for i, p in enumerate(lam, start=1)}
    occupied |= {charge - i for i in range(ell + 1, charge + 1)}
    psi = tuple(n for n in range(charge - ell, 0) if n not in occupied)
    star = tuple(sorted(-s for s in occupied if s >= 0))
    return FermionMonomial(psi, star)


def basis(charge: int, max_degree: int) -> Iterator[FermionMonomial]:
    """Basis monomials of the given charge with degree at most ``max_degree``."""
    for d in range(max_degree + 1):
        for lam in partitions(d):
            yield partition_monomial(lam, charge)


def wedge_sign(m: FermionMonomial) -> int:
    """Sign ``e`` with ``m = e * nu_{s1} ^ nu_{s2} ^ ...`` (sites in descending order).

    Computed by running the operator word of ``m`` on the vacuum wedge.
    """
    floor = min((*m.psi, *(-l for l in m.star), 0)) - 1
    seq = list(range(-1, floor, -1))
    sign = 1
    for l in reversed(m.star):
        site = -l
        if site in seq:
            return 0
        seq.insert(0, site)
    for n in reversed(m.psi):
        p = seq.index(n)
        sign *= (-1) ** p
        del seq[p]
    # parity of the sorting permutation
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] < seq[j])
    return sign * (-1) ** inversions
