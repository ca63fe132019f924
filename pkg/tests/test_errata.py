"""Rows and statements that disagree with brute force, pinned to the exact cases.

Each test reproduces the printed version, checks that it fails exactly where
the decisions ledger says, and that the corrected version holds everywhere.
"""

from fractions import Fraction

import pytest

from cliffgroups.algebra import Qt, Signature, parse_multivector, signatures_up_to
from cliffgroups.centralizers import bruteforce_target, centralizer_closed_form, printed_closed_form
from cliffgroups.groups import GROUPS, GroupId, Mode, member, norm_set, norms
from cliffgroups.lie import PRINTED_ROWS, TABLE_ROWS, dim_q, dim_q_printed, eval_dim_formula, lie_algebra, table_row
from cliffgroups.linalg import intersect
from cliffgroups.special_cases import aux_a_conditions, bc01_conditions, from_coefficients
from cliffgroups.subspaces import evaluate, named_subspace


def test_z2_z3_printed_even_case_misses_pseudoscalar():
    wrong = []
    for sig in signatures_up_to(6):
        brute = bruteforce_target(sig, "Z2&Z3")
        assert centralizer_closed_form(sig, "Z2&Z3").to_linear() == brute
        if printed_closed_form(sig, "Z2&Z3").to_linear() != brute:
            wrong.append(sig)
    expected = [s for s in signatures_up_to(6) if s.n % 2 == 0 and s.r in (s.n - 2, s.n - 1)]
    assert wrong == expected and len(wrong) == 15


def test_dim_q_printed_is_not_integral():
    assert dim_q_printed(1, 1) - dim_q(1, 1) == Fraction(1, 2)
    assert dim_q_printed(1, 1).denominator == 2
    for n in range(1, 13):
        for r in range(n + 1):
            assert dim_q(n, r).denominator == 1
            if r % 4 == 0:
                assert dim_q_printed(n, r) == dim_q(n, r)


def _lie_mismatches(rows, sigs):
    bad = set()
    for sig in sigs:
        for g in GROUPS:
            if g not in {row for r in rows for row in r.groups}:
                continue
            row = table_row(g, sig, rows)
            computed = lie_algebra(g, sig)
            if computed != evaluate(row.algebra, sig).to_linear() or computed.dim != eval_dim_formula(row.dimension, sig):
                bad.add((g, sig))
    return bad


def test_printed_lie_rows_fail_exactly_where_recorded():
    sigs = [s for s in signatures_up_to(6) if s.r]
    expected = {(GroupId.A23, s) for s in sigs if s.n == 4 and s.r in (2, 3)}
    expected |= {(GroupId.Qt23, s) for s in sigs if s.n == 4 and s.r == 1}
    assert _lie_mismatches(PRINTED_ROWS, sigs) == expected
    assert _lie_mismatches(TABLE_ROWS, sigs) == set()


def test_qt01_dimension_at_seven():
    sig = Signature(1, 0, 6)
    printed = table_row(GroupId.Qt01, sig, PRINTED_ROWS)
    corrected = table_row(GroupId.Qt01, sig)
    computed = lie_algebra(GroupId.Qt01, sig)
    assert computed.dim == 91 == eval_dim_formula(corrected.dimension, sig)
    assert computed == evaluate(printed.algebra, sig).to_linear()
    assert eval_dim_formula(printed.dimension, sig) != 91


# At r = 0 each Q-tilde group should match Q (norms central)
# or Q+- (norms scalar) depending on n mod 4.
_Q, _PM = "Q", "Q+-"
_EXPECTED_R0 = {
    1: {GroupId.Qt01: _Q, GroupId.Qt23: _Q, GroupId.Qt12: _PM, GroupId.Qt03: _PM},
    2: dict.fromkeys((GroupId.Qt01, GroupId.Qt23, GroupId.Qt12, GroupId.Qt03), _PM),
    3: {GroupId.Qt01: _PM, GroupId.Qt23: _PM, GroupId.Qt12: _Q, GroupId.Qt03: _Q},
}


def _r0_failures(n):
    sig = Signature(n, 0, 0)
    c01, c03 = (named_subspace(sig, Qt(t)).to_linear() for t in ("01", "03"))
    center = evaluate("C^{0} + C^{n}" if n % 2 else "C^{0}", sig).to_linear()
    scalars = evaluate("C^{0}", sig).to_linear()
    out = set()
    for g, kind in _EXPECTED_R0[n % 4].items():
        spec = GROUPS[g]
        want = center if kind == _Q else scalars
        got_psi = intersect(norm_set(sig, spec.psi_set).to_linear(), c01)
        got_chi = intersect(norm_set(sig, spec.chi_set).to_linear(), c03)
        if got_psi != intersect(want, c01) or got_chi != intersect(want, c03):
            out.add((n, g))
    return out


def test_qt_at_r_zero_fails_only_for_small_n():
    failures = set().union(*(_r0_failures(n) for n in (1, 2, 3, 5, 6, 7)))
    assert failures == {(1, GroupId.Qt03), (2, GroupId.Qt01), (2, GroupId.Qt03), (3, GroupId.Qt01)}


def test_qt_at_r_zero_group_witness():
    sig = Signature(3, 0, 0)
    t = parse_multivector("2 + e1", sig)
    assert member(GroupId.Qt01, t, Mode.NORM) and member(GroupId.Qt01, t, Mode.STABILIZER)
    psi, _ = norms(t)
    assert psi == parse_multivector("5 + 4*e1", sig)
    assert not evaluate("C^{0} + C^{n}", sig).contains(psi)


def test_bc01_printed_quadratic_term():
    sig = Signature(2, 0, 1)
    # 2e - 4e12: the printed scalar test gives 4 - 4 = 0, the squared one 4 + 16
    c = [Fraction(x) for x in (2, 0, 0, 0, -4, 0, 0, 0)]
    assert member(GroupId.Bc01, from_coefficients(sig, c))
    assert bc01_conditions(sig, c)
    assert not bc01_conditions(sig, c, printed=True)
    # the two versions agree when u12 is 0 or 1
    for u12 in (0, 1):
        c[4] = Fraction(u12)
        assert bc01_conditions(sig, c) == bc01_conditions(sig, c, printed=True)


def test_aux_a_printed_conditions_miss_a_term():
    sig = Signature(2, 0, 1)
    c = [Fraction(x) for x in (1, 0, 0, 0, 1, 0, 0, 1)]
    t = from_coefficients(sig, c)
    assert t == parse_multivector("1 + e12 + e123", sig)
    assert aux_a_conditions(sig, c, printed=True)
    assert not aux_a_conditions(sig, c) and not member(GroupId.AuxAc, t)
    psi, _ = norms(t)
    assert psi == parse_multivector("2 + 2*e3", sig)


@pytest.mark.parametrize("sig", [Signature(2, 0, 2), Signature(1, 0, 3)], ids=str)
def test_even_n_equality_fails_at_four(sig):
    t = parse_multivector("1 + e1234", sig)
    assert member(GroupId.A23, t, Mode.STABILIZER)
    assert not member(GroupId.Ac12, t, Mode.STABILIZER)


@pytest.mark.parametrize("sig", [Signature(2, 0, 4), Signature(1, 0, 5), Signature(3, 0, 3)], ids=str)
def test_even_n_equality_pseudoscalar_at_six(sig):
    t = parse_multivector("1 + e123456", sig)
    assert member(GroupId.A23, t, Mode.STABILIZER) == member(GroupId.Ac12, t, Mode.STABILIZER)
