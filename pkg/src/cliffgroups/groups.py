"""Adjoint representations, membership predicates, sampling and factorization.

Each group has up to two characterizations:

* a stabilizer form: an adjoint representation and a target span that the
  representation must map into itself;
* a norm form: the spans that psi(T) = rev(T) T and chi(T) = conj(T) T must
  land in.

Both are implemented independently so they can be compared.
"""

from __future__ import annotations

import enum
import functools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Grade, LambdaParityEven, Multivector, Parity, Qt, Signature, _int64_safe, project, tables
from .centralizers import centralizer_closed_form
from .linalg import (
    LinearSubspace,
    NotInvertible,
    contains,
    inverse,
    inverse_data,
    left_operator,
    right_operator,
)
from .subspaces import BladeSubspace, Center, LambdaAll, evaluate, named_subspace

log = logging.getLogger(__name__)


class Representation(enum.Enum):
    AD = "ad"
    AD_CHECK = "ad_check"
    AD_TILDE = "ad_tilde"


class Mode(enum.Enum):
    STABILIZER = "stab"
    NORM = "norm"


class GroupId(enum.Enum):
    A01 = "A01"
    A23 = "A23"
    B12 = "B12"
    B03 = "B03"
    Ac12 = "Ac12"
    Ac03 = "Ac03"
    Bc01 = "Bc01"
    Bc23 = "Bc23"
    Qt01 = "Qt01"
    Qt23 = "Qt23"
    Qt12 = "Qt12"
    Qt03 = "Qt03"
    AuxAc = "AuxAc"
    AuxBc = "AuxBc"
    Gamma = "Gamma"
    GammaPM = "GammaPM"

    @classmethod
    def parse(cls, text: str) -> GroupId:
        for member in cls:
            if member.value.lower() == text.strip().lower():
                return member
        raise ValueError(f"unknown group id {text!r}")


@dataclass(frozen=True)
class GroupSpec:
    """Stabilizer form (rep, target) and norm form (psi_set, chi_set).

    ``target`` is a string of quaternion types such as ``"01"``, or ``"1"``
    with ``grade_one=True`` for the classical groups. Norm sets name a
    closed-form centralizer, or ``"L0"`` for the even degenerate span.
    """

    rep: Representation | None
    target: str | None
    psi_set: str | None
    chi_set: str | None
    grade_one: bool = False


GROUPS: dict[GroupId, GroupSpec] = {
    GroupId.A01: GroupSpec(Representation.AD, "01", "Z1", None),
    GroupId.A23: GroupSpec(Representation.AD, "23", "Z2&Z3", None),
    GroupId.B12: GroupSpec(Representation.AD, "12", None, "Z1"),
    GroupId.B03: GroupSpec(Representation.AD, "03", None, "Z3"),
    GroupId.Ac12: GroupSpec(Representation.AD_CHECK, "12", "Zc1&Zc2", None),
    GroupId.Ac03: GroupSpec(Representation.AD_CHECK, "03", "Z3&C(0)", None),
    GroupId.Bc01: GroupSpec(Representation.AD_CHECK, "01", None, "L0"),
    GroupId.Bc23: GroupSpec(Representation.AD_CHECK, "23", None, "Zc2&Zc3"),
    GroupId.Qt01: GroupSpec(Representation.AD_TILDE, "01", "Z4", "Zc1"),
    GroupId.Qt23: GroupSpec(Representation.AD_TILDE, "23", "Z2", "Zc3"),
    GroupId.Qt12: GroupSpec(Representation.AD_TILDE, "12", "Zc1", "Z2"),
    GroupId.Qt03: GroupSpec(Representation.AD_TILDE, "03", "Zc3", "Z4"),
    GroupId.AuxAc: GroupSpec(None, None, "L0", None),
    GroupId.AuxBc: GroupSpec(Representation.AD_CHECK, "01", None, "L0"),
    GroupId.Gamma: GroupSpec(Representation.AD, "1", None, None, grade_one=True),
    GroupId.GammaPM: GroupSpec(Representation.AD_CHECK, "1", None, None, grade_one=True),
}

GENERALIZED_GROUPS: tuple[GroupId, ...] = tuple(GROUPS)[:12]
EQUIVALENCE_GROUPS: tuple[GroupId, ...] = GENERALIZED_GROUPS + (GroupId.Gamma, GroupId.GammaPM)


def norm_set(sig: Signature, name: str) -> BladeSubspace:
    if name == "L0":
        return evaluate("L0", sig)
    return centralizer_closed_form(sig, name)


def stabilizer_target(sig: Signature, g: GroupId) -> BladeSubspace:
    spec = GROUPS[g]
    if spec.rep is None:
        raise ValueError(f"{g.value} has no stabilizer characterization")
    selector = Grade(1) if spec.grade_one else Qt(spec.target)
    return named_subspace(sig, selector)


# Representations


def norms(t: Multivector) -> tuple[Multivector, Multivector]:
    """(psi, chi) = (rev(t) t, conj(t) t)."""
    return t.reversion() * t, t.clifford_conjugation() * t


def psi(t: Multivector) -> Multivector:
    return t.reversion() * t


def chi(t: Multivector) -> Multivector:
    return t.clifford_conjugation() * t


def _require_inverse(t: Multivector) -> Multivector:
    inv = inverse(t)
    if isinstance(inv, NotInvertible):
        raise ValueError(f"{t} is not invertible")
    return inv


def apply_rep(rep: Representation, t: Multivector, u: Multivector) -> Multivector:
    inv = _require_inverse(t)
    if rep is Representation.AD:
        return t * u * inv
    hat_t = t.grade_involution()
    if rep is Representation.AD_CHECK:
        return hat_t * u * inv
    even = project(u, Parity(0))
    odd = u - even
    return t * even * inv + hat_t * odd * inv


@dataclass(frozen=True)
class _RepMatrices:
    """Integer matrices equal to ``scale`` times ad_t and ad_check_t."""

    ad: np.ndarray
    check: np.ndarray
    scale: int
    even: np.ndarray  # boolean mask of even blades

    def matrix(self, rep: Representation) -> np.ndarray:
        if rep is Representation.AD:
            return self.ad
        if rep is Representation.AD_CHECK:
            return self.check
        return np.where(self.even[None, :], self.ad, self.check)


@functools.lru_cache(maxsize=2048)
def _rep_matrices(t: Multivector) -> _RepMatrices | None:
    data = inverse_data(t)
    if data is None:
        return None
    sig = t.sig
    tab = tables(sig)
    num = data.numerators
    right = right_operator(sig, data.inverse_scaled)
    left, left_hat = left_operator(sig, num), left_operator(sig, num * tab.hat)
    if _int64_safe(num, data.inverse_scaled, sig.dim):
        right, left, left_hat = (m.astype(np.int64) for m in (right, left, left_hat))
    ad = left.dot(right)
    check = left_hat.dot(right)
    scale = data.denominator * data.inverse_scale
    # t = num/den and t^{-1} = inverse_scaled/inverse_scale
    return _RepMatrices(ad, check, scale, tab.grade % 2 == 0)


def preserves(t: Multivector, s: BladeSubspace, rep: Representation) -> bool:
    mats = _rep_matrices(t)
    if mats is None:
        raise ValueError(f"{t} is not invertible")
    cols = np.array(s.sorted_blades(), dtype=np.intp)
    if cols.size == 0:
        return True
    inside = np.zeros(t.sig.dim, dtype=bool)
    inside[cols] = True
    block = mats.matrix(rep)[np.ix_(~inside, cols)]
    return not np.any(block != 0)


def acts_as_identity(rep: Representation, t: Multivector) -> bool:
    mats = _rep_matrices(t)
    if mats is None:
        raise ValueError(f"{t} is not invertible")
    m = mats.matrix(rep)
    return bool(np.all(m == mats.scale * np.eye(t.sig.dim, dtype=np.int64)))


def kernel_of_rep(rep: Representation, sig: Signature) -> BladeSubspace:
    if rep is Representation.AD:
        return named_subspace(sig, Center())
    if rep is Representation.AD_CHECK:
        return named_subspace(sig, LambdaParityEven())
    return named_subspace(sig, LambdaAll())


# Membership


def _intertwines(t: Multivector, twisted: bool) -> bool:
    """Inverse-free test that h(t) e_a t^{-1} is a vector for every generator."""
    sig = t.sig
    left = t.grade_involution() if twisted else t
    images = LinearSubspace.span(sig.dim, [Multivector.blade(sig, 1 << b) * t for b in range(sig.n)])
    return all(contains(images, left * Multivector.blade(sig, 1 << a)) for a in range(sig.n))


def member(g: GroupId, t: Multivector, mode: Mode = Mode.NORM) -> bool:
    if g not in GROUPS:
        raise ValueError(f"unknown group {g!r}")
    spec = GROUPS[g]
    if inverse_data(t) is None:
        return False
    sig = t.sig
    if mode is Mode.STABILIZER:
        return preserves(t, stabilizer_target(sig, g), spec.rep)
    if spec.grade_one:
        return _intertwines(t, twisted=spec.rep is Representation.AD_CHECK)
    if spec.psi_set is not None and not norm_set(sig, spec.psi_set).contains(psi(t)):
        return False
    if spec.chi_set is not None and not norm_set(sig, spec.chi_set).contains(chi(t)):
        return False
    return True


def has_stabilizer_form(g: GroupId) -> bool:
    return GROUPS[g].rep is not None


# Sampling


class SamplingError(RuntimeError):
    pass


def sample_invertible(sig: Signature, seed: int, coeff_bound: int = 3, *, budget: int = 1000) -> Multivector:
    """Seeded random multivector with integer coefficients, resampled until invertible."""
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be at least 1")
    rng = random.Random(seed)
    for rejections in range(budget):
        t = Multivector(sig, {m: rng.randint(-coeff_bound, coeff_bound) for m in range(sig.dim)})
        if inverse_data(t) is not None:
            log.debug("sample_invertible seed=%d rejections=%d", seed, rejections)
            return t
    raise SamplingError(f"no invertible sample for {sig} after {budget} draws (seed {seed})")


def member_unit_set(sig: Signature, g: GroupId) -> BladeSubspace:
    """Span whose units all belong to g (a subalgebra closed under the involutions)."""
    spec = GROUPS[g]
    if spec.grade_one:
        kernel = Representation.AD if spec.rep is Representation.AD else Representation.AD_CHECK
        return kernel_of_rep(kernel, sig)
    sets = [norm_set(sig, s) for s in (spec.psi_set, spec.chi_set) if s is not None]
    result = sets[0]
    for other in sets[1:]:
        result = result & other
    return result


def random_unit(sig: Signature, span: BladeSubspace, rng: random.Random, bound: int = 3) -> Multivector:
    blades = [m for m in span.sorted_blades() if m]
    for _ in range(1000):
        alpha = rng.choice([c for c in range(-bound, bound + 1) if c])
        coeffs = {0: alpha}
        for m in blades:
            coeffs[m] = rng.randint(-bound, bound)
        y = Multivector(sig, coeffs)
        if inverse_data(y) is not None:
            return y
    raise SamplingError(f"no invertible element found in span of {sorted(span.blades)}")


def random_nonnull_vector(sig: Signature, rng: random.Random, bound: int = 3) -> Multivector:
    for _ in range(1000):
        coords = [rng.randint(-bound, bound) for _ in range(sig.n)]
        v = Multivector.vector(sig, coords)
        if (v * v).scalar_part != 0:
            return v
    raise SamplingError("no non-null vector found")


def sample_group_member(g: GroupId, sig: Signature, seed: int) -> Multivector:
    """Certified member: product of non-null vectors times a unit of the group's norm set."""
    rng = random.Random(seed)
    t = Multivector.scalar(sig)
    if sig.p + sig.q > 0:
        for _ in range(rng.randint(1, 3)):
            t = t * random_nonnull_vector(sig, rng)
    t = t * random_unit(sig, member_unit_set(sig, g), rng)
    if not member(g, t, Mode.NORM):
        raise SamplingError(f"constructed element {t} is not in {g.value} (seed {seed})")
    return t


# Factorization


@dataclass(frozen=True)
class _FactorPlan:
    norm: str  # "psi" or "chi"
    unit_set: str
    aux: GroupId


FACTOR_PLANS: dict[GroupId, _FactorPlan] = {
    GroupId.A01: _FactorPlan("psi", "Z1", GroupId.AuxAc),
    GroupId.A23: _FactorPlan("psi", "Z2&Z3", GroupId.AuxAc),
    GroupId.Ac12: _FactorPlan("psi", "Zc1&Zc2", GroupId.AuxAc),
    GroupId.Ac03: _FactorPlan("psi", "Z3&C(0)", GroupId.AuxAc),
    GroupId.B12: _FactorPlan("chi", "Z1", GroupId.AuxBc),
    GroupId.B03: _FactorPlan("chi", "Z3", GroupId.AuxBc),
    GroupId.Bc23: _FactorPlan("chi", "Zc2&Zc3", GroupId.AuxBc),
}


class FactorizationError(ValueError):
    pass


def nilpotent_series_inverse(alpha: Fraction, x: Multivector) -> Multivector:
    """(alpha e + x)^{-1} for nilpotent x by the finite geometric series."""
    sig = x.sig
    alpha = Fraction(alpha)
    term = Multivector.scalar(sig, 1 / alpha)
    total = term
    ratio = x.scale(-1 / alpha)
    for _ in range(sig.dim + 1):
        term = term * ratio
        if term.is_zero():
            return total
        total = total + term
    raise ValueError("series did not terminate; x is not nilpotent")


def _split_norm(nu: Multivector) -> tuple[Fraction, Multivector, Multivector]:
    alpha = nu.scalar_part
    x = project(nu, LambdaParityEven()) - alpha
    w = nu - alpha - x
    return alpha, x, w


def _generic_step(t: Multivector, plan: _FactorPlan) -> tuple[Multivector, Multivector, Multivector]:
    """One application of the constructive proof: returns (t y^{-1}, y, y^{-1})."""
    sig = t.sig
    nu = psi(t) if plan.norm == "psi" else chi(t)
    alpha, x, w = _split_norm(nu)
    if alpha == 0:
        raise FactorizationError("scalar part of the norm vanished; t is not invertible")
    if not (w * w).is_zero():
        raise FactorizationError(f"hypothesis W^2 = 0 fails for W = {w}")
    half_w = nilpotent_series_inverse(alpha, x) * w / 2
    one = Multivector.scalar(sig)
    y = one + half_w
    y_inv = one - half_w
    return t * y_inv, y, y_inv


def _b03_degree_five_step(t: Multivector) -> tuple[Multivector, Multivector, Multivector]:
    """Y = e + W/(2 alpha) with the three-term inverse, for n = 5."""
    sig = t.sig
    alpha, _, w = _split_norm(chi(t))
    if alpha == 0:
        raise FactorizationError("scalar part of chi vanished")
    if not (w * w * w).is_zero():
        raise FactorizationError("hypothesis W^3 = 0 fails")
    one = Multivector.scalar(sig)
    half = w / (2 * alpha)
    y = one + half
    y_inv = one - half + w * w / (4 * alpha * alpha)
    return t * y_inv, y, y_inv


def factor(g: GroupId, t: Multivector) -> tuple[Multivector, Multivector]:
    """Split a member t of g as t0 * y with t0 in the auxiliary group and y a unit of the centralizer set."""
    if g not in FACTOR_PLANS:
        raise FactorizationError(f"{g.value} has no factorization (supported: {[k.value for k in FACTOR_PLANS]})")
    sig = t.sig
    if sig.r == 0:
        raise FactorizationError("factorization needs a degenerate algebra (r >= 1)")
    if not member(g, t, Mode.NORM):
        raise FactorizationError(f"input is not a member of {g.value}")
    plan = FACTOR_PLANS[g]
    one = Multivector.scalar(sig)
    n = sig.n
    if g is GroupId.B03 and n == 5:
        t0, y, _ = _b03_degree_five_step(t)
        if not member(GroupId.AuxBc, t0, Mode.NORM):
            # fallback: the step is only guaranteed to reach B12 = B_check Z^x
            if not member(GroupId.B12, t0, Mode.NORM):
                raise FactorizationError("degree-five step did not land in B12")
            t0, y2, _ = _generic_step(t0, FACTOR_PLANS[GroupId.B12])
            y = y2 * y
    elif g is GroupId.B03 and n == 3:
        # the group is all of Z3^x here
        t0, y = one, t
    elif (g is GroupId.B03 or g is GroupId.Bc23) and n <= 2:
        t0, y = t, one
    elif g is GroupId.Ac03 and n <= 3:
        t0, y = t, one
    else:
        t0, y, _ = _generic_step(t, plan)
    unit_span = norm_set(sig, plan.unit_set)
    checks = factor_checks(g, t, t0, y)
    if not all(checks.values()):
        raise FactorizationError(f"postconditions failed for {g.value}: {checks}")
    assert unit_span.contains(y)
    return t0, y


def factor_checks(g: GroupId, t: Multivector, t0: Multivector, y: Multivector) -> dict[str, bool]:
    plan = FACTOR_PLANS[g]
    sig = t.sig
    return {
        "t0_in_aux": member(plan.aux, t0, Mode.NORM),
        "y_in_unit_set": norm_set(sig, plan.unit_set).contains(y) and inverse_data(y) is not None,
        "product": t0 * y == t,
    }
