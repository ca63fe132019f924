"""Closed-form descriptions of some groups in small algebras.

Two families are covered: coefficient conditions for Cl(p,q,1) with p+q = 2,
and identifications of groups in the Grassmann algebras Cl(0,0,n), n <= 3.
They are compared against :func:`cliffgroups.groups.member`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Multivector, Signature
from .groups import GroupId, Mode, member
from .linalg import inverse_data
from .subspaces import BladeSubspace, evaluate

# blade masks of e, e1, e2, e3, e12, e13, e23, e123
COEFF_MASKS = (0, 1, 2, 4, 3, 5, 6, 7)
COEFF_NAMES = ("u", "u1", "u2", "u3", "u12", "u13", "u23", "u123")


def from_coefficients(sig: Signature, coeffs) -> Multivector:
    return Multivector(sig, dict(zip(COEFF_MASKS, coeffs)))


def _etas(sig: Signature) -> tuple[int, int]:
    if sig.n != 3 or sig.r != 1:
        raise ValueError("coefficient conditions are stated for Cl(p,q,1) with p+q = 2")
    return tuple(-1 if sig.negative_mask >> i & 1 else 1 for i in range(2))


def bc01_conditions(sig: Signature, c, printed: bool = False) -> bool:
    """Coefficient test for the twisted group B-check-01 in Cl(p,q,1), p+q = 2.

    ``printed=True`` uses the quadratic term as printed (u12 to the first power).
    """
    u, u1, u2, u3, u12, u13, u23, u123 = c
    e1, e2 = _etas(sig)
    u12_term = u12 if printed else u12 * u12
    return u * u123 + u2 * u13 - u1 * u23 - u3 * u12 == 0 and (
        u * u - u1 * u1 * e1 - u2 * u2 * e2 + u12_term * e1 * e2 != 0
    )


def aux_a_conditions(sig: Signature, c, printed: bool = False) -> bool:
    """Coefficient test for the auxiliary group A-check in Cl(p,q,1), p+q = 2.

    The e3 coefficient of psi(T) also receives 2 u12 u123 eta11 eta22 from the
    products of e12 and e123; ``printed=True`` leaves that term out.
    """
    u, u1, u2, u3, u12, u13, u23, u123 = c
    e1, e2 = _etas(sig)
    e3_term = 0 if printed else u12 * u123 * e1 * e2
    return (
        u * u1 - u2 * u12 * e2 == 0
        and u * u2 + u1 * u12 * e1 == 0
        and u * u3 + u1 * u13 * e1 + u2 * u23 * e2 + e3_term == 0
        and u * u + u1 * u1 * e1 + u2 * u2 * e2 + u12 * u12 * e1 * e2 != 0
    )


def grassmann_bc01_conditions(c) -> bool:
    """B-check-01 in Cl(0,0,3)."""
    u, u1, u2, u3, u12, u13, u23, u123 = c
    return u != 0 and u * u123 - u1 * u23 + u2 * u13 - u3 * u12 == 0


def sample_bc01_coefficients(rng: random.Random, bound: int = 3) -> tuple[Fraction, ...]:
    """Half the draws are forced onto the bilinear constraint by solving for u123."""
    c = [Fraction(rng.randint(-bound, bound)) for _ in range(8)]
    if rng.random() < 0.5 and c[0] != 0:
        u, u1, u2, u3, u12, u13, u23, _ = c
        c[7] = (u1 * u23 + u3 * u12 - u2 * u13) / u
    return tuple(c)


def sample_aux_a_coefficients(sig: Signature, rng: random.Random, bound: int = 3) -> tuple[Fraction, ...]:
    """Half the draws solve the three constraints for (u1, u2) and u3."""
    c = [Fraction(rng.randint(-bound, bound)) for _ in range(8)]
    if rng.random() < 0.5:
        e1, e2 = _etas(sig)
        u, u12 = c[0], c[4]
        # [[u, -u12 e2], [u12 e1, u]] (u1, u2) = 0
        if u * u + u12 * u12 * e1 * e2 == 0 and (u or u12):
            scale = Fraction(rng.randint(-bound, bound))
            c[1], c[2] = scale * u12 * e2, scale * u
        else:
            c[1] = c[2] = Fraction(0)
        if u != 0:
            c[3] = -(c[1] * c[5] * e1 + c[2] * c[6] * e2 + u12 * c[7] * e1 * e2) / u
    return tuple(c)


@dataclass(frozen=True)
class Identification:
    """All listed groups equal the units of ``span`` in ``sig``."""

    sig: Signature
    groups: tuple[GroupId, ...]
    span: str

    def units_span(self) -> BladeSubspace:
        return evaluate(self.span, self.sig)


def _ids(names: str) -> tuple[GroupId, ...]:
    return tuple(GroupId.parse(x) for x in names.split(","))


_S1, _S2, _S3 = Signature(0, 0, 1), Signature(0, 0, 2), Signature(0, 0, 3)
GRASSMANN_IDENTIFICATIONS: tuple[Identification, ...] = (
    Identification(_S1, _ids("AuxAc,Ac03"), "C^{0}"),
    Identification(_S1, _ids("Bc01,Bc23,B12,B03,Ac12,A01,A23,Qt01,Qt23,Qt12,Qt03"), "L"),
    Identification(_S2, _ids("AuxAc,Ac03,A01"), "L0"),
    Identification(_S2, _ids("Bc01,Bc23,B12,B03,Ac12,A23,Qt01,Qt23,Qt12,Qt03"), "L"),
    # listed among the n = 2 identities; it is a statement about Cl(0,0,3)
    Identification(_S3, _ids("B03"), "L"),
    Identification(_S3, _ids("AuxAc,Ac03,Ac12,A01"), "C^{0} + C^{2} + C^{3}"),
    Identification(_S3, _ids("A23,Qt01,Qt23,Qt12,Qt03"), "L"),
)


def sample_identification_element(ident: Identification, rng: random.Random, bound: int = 3) -> Multivector:
    """Alternate between units of the claimed span and arbitrary invertible elements."""
    sig = ident.sig
    blades = ident.units_span().sorted_blades() if rng.random() < 0.5 else list(range(sig.dim))
    while True:
        t = Multivector(sig, {m: rng.randint(-bound, bound) for m in blades})
        if inverse_data(t) is not None:
            return t


def identification_agrees(ident: Identification, t: Multivector) -> dict[GroupId, bool]:
    claimed = ident.units_span().contains(t)
    return {g: member(g, t, Mode.NORM) == claimed for g in ident.groups}

