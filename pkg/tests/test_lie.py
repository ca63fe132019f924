import pytest

from cliffgroups.algebra import Multivector, Signature, format_blade, parse_multivector, signatures_up_to
from cliffgroups.groups import GENERALIZED_GROUPS, GroupId, member
from cliffgroups.lie import (
    PRINTED_ROWS,
    TABLE_ROWS,
    NoTableRow,
    binom,
    bracket_closure_check,
    dim_a,
    dim_b,
    dim_q,
    eval_dim_formula,
    exp_nilpotent,
    exp_nilpotent_check,
    expected_lie,
    lambda_qt_dim,
    lie_algebra,
    lie_algebra_norm_form,
    lie_result,
    table_row,
)
from cliffgroups.linalg import LinearSubspace
from cliffgroups.subspaces import evaluate, qt_dim


def test_binom_outside_range_is_zero():
    assert binom(3, 4) == 0 and binom(3, -1) == 0 and binom(4, 2) == 6


@pytest.mark.parametrize("n", range(1, 13))
def test_dimension_formulas_are_grade_sums(n):
    for r in range(n + 1):
        assert dim_a(n, r) == lambda_qt_dim(r, "0") + qt_dim(n, 2) + qt_dim(n, 3)
        assert dim_b(n, r) == lambda_qt_dim(r, "0") + qt_dim(n, 1) + qt_dim(n, 2)
        assert dim_q(n, r) == lambda_qt_dim(r, "013") + qt_dim(n, 2)


def test_formula_evaluator():
    sig = Signature(2, 1, 3)
    assert eval_dim_formula("dimQ + (p+q)*binom(r, n-3)", sig) == dim_q(6, 3) + 3
    assert eval_dim_formula("n*(n+1)/2", sig) == 21
    for bad in ("__import__('os')", "n ** 2", "binom(n)", "x + 1"):
        with pytest.raises(ValueError):
            eval_dim_formula(bad, sig)


def test_a01_example():
    sig = Signature(0, 0, 2)
    algebra = lie_algebra(GroupId.A01, sig)
    assert sorted(format_blade(m, sig) for m in algebra.blade_support()) == ["e", "e12"]
    assert algebra.dim == dim_a(2, 2) == 2


@pytest.mark.parametrize(
    "g, sig, algebra, dimension",
    [
        (GroupId.A23, Signature(1, 0, 2), "Lq^{0} + Cq^{23} + L^{n-2}", "dimA + binom(r, n-2)"),
        (GroupId.B03, Signature(0, 0, 5), "Lq^{0} + Cq^{12} + L^{n-2}", "dimB + n*(n-1)/2"),
        (GroupId.Qt01, Signature(2, 0, 2), "Lq^{013} + Cq^{2}", "dimQ"),
    ],
)
def test_table_lookup_examples(g, sig, algebra, dimension):
    row = table_row(g, sig)
    assert (row.algebra, row.dimension) == (algebra, dimension)
    span, dim = expected_lie(g, sig)
    assert lie_algebra(g, sig) == span.to_linear() and span.dim == dim


def test_missing_row_raises():
    with pytest.raises(NoTableRow):
        table_row(GroupId.A23, Signature(2, 0, 0), rows=())
    assert table_row(GroupId.A23, Signature(2, 0, 0)).guard == ("r<=n-2",)


def test_every_degenerate_case_has_a_row():
    for n in range(1, 17):
        for r in range(1, n + 1):
            sig_n, sig_r = n, r
            for g in GENERALIZED_GROUPS:
                hits = [row for row in TABLE_ROWS if g in row.groups and sig_n % 4 in row.n_mod4]
                assert any(_guard(row, sig_n, sig_r) for row in hits), (g, n, r)


def _guard(row, n, r):
    from cliffgroups.guards import holds

    return holds(row.guard, n, r)


def test_printed_rows_are_kept():
    assert len(PRINTED_ROWS) < len(TABLE_ROWS)


def test_bracket_closure():
    sig = Signature(1, 0, 1)
    assert bracket_closure_check(LinearSubspace.full(4), sig)
    assert bracket_closure_check(LinearSubspace.span(4, [{0: 1}]), sig)
    assert not bracket_closure_check(LinearSubspace.span(4, [{1: 1}, {2: 1}]), sig)


@pytest.mark.parametrize("sig", signatures_up_to(4), ids=str)
def test_linearizations_agree_and_close(sig):
    for g in GENERALIZED_GROUPS:
        algebra = lie_algebra(g, sig)
        assert algebra == lie_algebra_norm_form(g, sig)
        assert bracket_closure_check(algebra, sig)


def test_exp_nilpotent():
    sig = Signature(1, 0, 2)
    assert exp_nilpotent(Multivector.zero(sig)) == Multivector.scalar(sig)
    u = parse_multivector("e123", sig)
    assert exp_nilpotent(u) == parse_multivector("1 + e123", sig)
    assert exp_nilpotent_check(GroupId.A01, sig, u)
    with pytest.raises(ValueError):
        exp_nilpotent(parse_multivector("e1", sig))
    with pytest.raises(ValueError):
        exp_nilpotent_check(GroupId.A01, sig, parse_multivector("e1", sig))


@pytest.mark.parametrize("sig", [s for s in signatures_up_to(4) if s.r], ids=str)
def test_exp_of_nilpotent_basis_elements(sig):
    for g in GENERALIZED_GROUPS:
        for m in lie_algebra(g, sig).blade_support():
            u = Multivector.blade(sig, m)
            if m and (u * u).is_zero():
                assert member(g, exp_nilpotent(u)), (g, m)


def test_evaluate_matches_expected_span():
    sig = Signature(1, 1, 2)
    span, _ = expected_lie(GroupId.Bc01, sig)
    assert span == evaluate("Lq^{0} + Cq^{12}", sig)
