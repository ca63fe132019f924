import random
from fractions import Fraction

import pytest

from cliffgroups.algebra import Grade, Multivector, Parity, Qt, Signature, parse_multivector, signatures_up_to
from cliffgroups.groups import (
    EQUIVALENCE_GROUPS,
    FACTOR_PLANS,
    GENERALIZED_GROUPS,
    GROUPS,
    FactorizationError,
    GroupId,
    Mode,
    Representation,
    SamplingError,
    acts_as_identity,
    apply_rep,
    chi,
    factor,
    factor_checks,
    has_stabilizer_form,
    kernel_of_rep,
    member,
    nilpotent_series_inverse,
    norms,
    preserves,
    psi,
    sample_group_member,
    sample_invertible,
    stabilizer_target,
)
from cliffgroups.linalg import inverse
from cliffgroups.subspaces import named_subspace


def mv(text, p, q, r):
    return parse_multivector(text, Signature(p, q, r))


def test_group_ids():
    assert GroupId.parse("bc01") is GroupId.Bc01
    with pytest.raises(ValueError):
        GroupId.parse("B13")
    assert len(GENERALIZED_GROUPS) == 12
    assert EQUIVALENCE_GROUPS[-2:] == (GroupId.Gamma, GroupId.GammaPM)
    assert not has_stabilizer_form(GroupId.AuxAc)


def test_apply_rep_examples():
    e1, e2 = mv("e1", 2, 0, 0), mv("e2", 2, 0, 0)
    assert apply_rep(Representation.AD, e1, e2) == -e2
    assert apply_rep(Representation.AD_CHECK, e1, e2) == e2
    one = Multivector.scalar(e1.sig)
    u = mv("1 + 2*e1 - e12", 2, 0, 0)
    for rep in Representation:
        assert apply_rep(rep, one, u) == u
    with pytest.raises(ValueError):
        apply_rep(Representation.AD, mv("e3", 0, 0, 3), e2.__class__.scalar(Signature(0, 0, 3)))


def test_tilde_rep_mixes_parities():
    sig = Signature(2, 0, 1)
    t = mv("e1 + e3", 2, 0, 1)
    u = mv("1 + e2 + e12", 2, 0, 1)
    inv = inverse(t)
    even = Multivector(sig, {0: 1, 3: 1})
    odd = mv("e2", 2, 0, 1)
    assert apply_rep(Representation.AD_TILDE, t, u) == t * even * inv + t.grade_involution() * odd * inv


def test_preserves_examples():
    sig = Signature(2, 0, 0)
    g1 = named_subspace(sig, Grade(1))
    assert preserves(mv("e1", 2, 0, 0), g1, Representation.AD)
    assert preserves(mv("1 + e12", 2, 0, 0), g1, Representation.AD)


def test_preserves_agrees_with_products():
    """Acting on the 23 types of Cl(1,0,2), compared with direct products."""
    sig = Signature(1, 0, 2)
    s = named_subspace(sig, Qt("23"))
    # e + e1 squares to 2(e + e1), a zero divisor since e1^2 = e
    with pytest.raises(ValueError):
        preserves(mv("1 + e1", 1, 0, 2), s, Representation.AD)
    for text in ("2 + e1", "1 + e2 + e13", "e1 + e123"):
        t = mv(text, 1, 0, 2)
        inv = inverse(t)
        direct = all(s.contains(t * Multivector.blade(sig, m) * inv) for m in s.blades)
        assert preserves(t, s, Representation.AD) == direct


def test_norm_examples():
    assert norms(mv("e1", 1, 0, 0)) == (mv("1", 1, 0, 0), mv("-1", 1, 0, 0))
    assert norms(mv("1 + e1", 0, 0, 1)) == (mv("1 + 2*e1", 0, 0, 1), mv("1", 0, 0, 1))
    lam = Multivector.scalar(Signature(1, 1, 1), Fraction(-3, 2))
    assert norms(lam) == (lam * lam, lam * lam)


def test_membership_examples():
    assert member(GroupId.AuxAc, mv("e1", 2, 0, 1))
    assert not member(GroupId.AuxAc, mv("1 + e1", 1, 0, 1))
    assert member(GroupId.Qt01, Multivector.scalar(Signature(1, 1, 1)))
    assert not member(GroupId.A01, mv("e3", 2, 0, 1))  # zero divisor
    assert member(GroupId.Gamma, mv("e1 + e2", 2, 0, 1))
    assert member(GroupId.GammaPM, mv("e1 + e2", 2, 0, 1))
    assert not member(GroupId.Gamma, mv("1 + e1", 2, 0, 1))


def test_b_check_coefficient_example():
    # u u123 + u2 u13 - u1 u23 - u3 u12 = 0 with u^2 - u1^2 - u2^2 + u12^2 != 0
    t = mv("2 + e1 + e13 + e23 + 1/2*e123", 2, 0, 1)
    assert member(GroupId.Bc01, t)


def test_kernel_examples():
    assert named_subspace(Signature(0, 0, 1), Grade(0)).blades | {1} == kernel_of_rep(
        Representation.AD, Signature(0, 0, 1)
    ).blades
    assert kernel_of_rep(Representation.AD_CHECK, Signature(2, 0, 1)).blades == {0}
    assert kernel_of_rep(Representation.AD_TILDE, Signature(2, 0, 1)).blades == {0, 4}


def test_acts_as_identity_on_kernel():
    sig = Signature(1, 1, 2)
    t = mv("2 + e34", 1, 1, 2)
    for rep in Representation:
        assert acts_as_identity(rep, t)
    v = mv("2 + e3", 1, 1, 2)
    assert acts_as_identity(Representation.AD_TILDE, v)
    assert not acts_as_identity(Representation.AD_CHECK, v)
    assert not acts_as_identity(Representation.AD, mv("e1", 1, 1, 2))
    assert sig.n == 4


def test_sampled_members():
    for seed in range(5):
        assert member(GroupId.AuxAc, sample_group_member(GroupId.AuxAc, Signature(2, 0, 1), seed))
    sig = Signature(1, 0, 2)
    t = mv("e1", 1, 0, 2) * mv("1 + e23", 1, 0, 2)
    assert member(GroupId.A23, t)


def test_sample_invertible_is_seeded():
    sig = Signature(1, 1, 1)
    assert sample_invertible(sig, 7) == sample_invertible(sig, 7)
    with pytest.raises(ValueError):
        sample_invertible(sig, 7, coeff_bound=0)
    with pytest.raises(SamplingError):
        sample_invertible(Signature(0, 0, 2), 1, coeff_bound=1, budget=0)


@pytest.mark.parametrize("sig", signatures_up_to(3), ids=str)
def test_stabilizer_and_norm_modes_agree(sig):
    for g in EQUIVALENCE_GROUPS:
        for i in range(8):
            t = sample_invertible(sig, hash((str(sig), g.value, i)) & 0xFFFF)
            assert member(g, t, Mode.STABILIZER) == member(g, t, Mode.NORM)
        if has_stabilizer_form(g):
            t = sample_group_member(g, sig, 11)
            assert member(g, t, Mode.STABILIZER)


def test_stabilizer_targets():
    sig = Signature(1, 0, 1)
    assert stabilizer_target(sig, GroupId.Gamma) == named_subspace(sig, Grade(1))
    assert stabilizer_target(sig, GroupId.B03) == named_subspace(sig, Qt("03"))
    with pytest.raises(ValueError):
        stabilizer_target(sig, GroupId.AuxAc)


def test_norm_codomains_spot_check():
    rng = random.Random(0)
    sig = Signature(2, 1, 1)
    for _ in range(20):
        t = Multivector(sig, {m: rng.randint(-3, 3) for m in range(16)})
        assert named_subspace(sig, Qt("01")).contains(psi(t))
        assert named_subspace(sig, Qt("03")).contains(chi(t))
        assert named_subspace(sig, Parity(0)).dim == 8


def test_nilpotent_series_inverse():
    sig = Signature(1, 0, 3)
    x = mv("e23 + e24 - e34", 1, 0, 3)
    y = mv("3", 1, 0, 3) + x
    assert nilpotent_series_inverse(Fraction(3), x) * y == Multivector.scalar(sig)
    with pytest.raises(ValueError):
        nilpotent_series_inverse(Fraction(1), mv("e1", 1, 0, 3))


def test_factor_examples():
    sig = Signature(1, 0, 2)
    t = mv("e1", 1, 0, 2) * mv("1 + e123", 1, 0, 2)
    t0, y = factor(GroupId.A01, t)
    assert factor_checks(GroupId.A01, t, t0, y) == {"t0_in_aux": True, "y_in_unit_set": True, "product": True}
    aux = mv("e1", 1, 0, 2) * mv("1 + e23", 1, 0, 2)
    assert factor(GroupId.A01, aux) == (aux, Multivector.scalar(sig))


def test_factor_b03_degree_five():
    sig = Signature(2, 1, 2)
    for seed in range(3):
        t = sample_group_member(GroupId.B03, sig, seed)
        t0, y = factor(GroupId.B03, t)
        assert all(factor_checks(GroupId.B03, t, t0, y).values())


def test_factor_errors():
    with pytest.raises(FactorizationError):
        factor(GroupId.Qt01, mv("1", 1, 0, 1))
    with pytest.raises(FactorizationError):
        factor(GroupId.A01, mv("e1", 2, 0, 0))
    with pytest.raises(FactorizationError):
        factor(GroupId.AuxAc if GroupId.AuxAc in FACTOR_PLANS else GroupId.A01, mv("1 + e1", 1, 0, 1))


def test_group_table_shape():
    assert all(GROUPS[g].rep is not None for g in GENERALIZED_GROUPS)
    assert set(FACTOR_PLANS) <= set(GENERALIZED_GROUPS)
