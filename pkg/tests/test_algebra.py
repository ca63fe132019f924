from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffgroups.algebra import (
    Grade,
    LambdaParityEven,
    Multivector,
    Parity,
    Qt,
    Signature,
    blade_product,
    clifford_conjugation,
    format_multivector,
    grade_involution,
    parse_multivector,
    project,
    reversion,
    signatures,
    signatures_up_to,
)


def mv(text, p, q, r):
    return parse_multivector(text, Signature(p, q, r))


def test_blade_product_examples():
    assert blade_product(1, 1, Signature(1, 0, 0)) == (1, 0)
    assert blade_product(4, 4, Signature(2, 0, 1))[0] == 0
    assert blade_product(2, 1, Signature(2, 0, 0)) == (-1, 3)


def test_negative_generator_squares_to_minus_one():
    sig = Signature(0, 1, 0)
    assert mv("e1", 0, 1, 0) * mv("e1", 0, 1, 0) == Multivector.scalar(sig, -1)


def test_geometric_product_examples():
    assert mv("e1 + e2", 1, 1, 0) * mv("e1 - e2", 1, 1, 0) == mv("2 - 2*e12", 1, 1, 0)
    assert mv("e1", 1, 0, 2) * mv("e123", 1, 0, 2) == mv("e23", 1, 0, 2)
    v = mv("3 + e13 - 1/2*e2", 1, 0, 2)
    assert Multivector.scalar(v.sig) * v == v


def test_involutions_examples():
    assert reversion(mv("e123", 3, 0, 0)) == mv("-e123", 3, 0, 0)
    assert grade_involution(mv("e12", 2, 0, 0)) == mv("e12", 2, 0, 0)
    assert clifford_conjugation(mv("e1 + e12", 2, 0, 0)) == mv("-e1 - e12", 2, 0, 0)


def test_projection_examples():
    sig = Signature(3, 0, 0)
    u = mv("1 + e1 + e12 + e123", 3, 0, 0)
    assert project(u, Parity(0)) == mv("1 + e12", 3, 0, 0)
    assert project(u, Qt("3")) == mv("e123", 3, 0, 0)
    assert project(u, Grade(1)) == Multivector.blade(sig, 1)
    w = mv("1 + e3 + e34", 2, 0, 2)
    assert project(w, LambdaParityEven()) == mv("1 + e34", 2, 0, 2)


def test_signature_enumeration():
    assert [str(s) for s in signatures(1)] == ["Cl(1,0,0)", "Cl(0,1,0)", "Cl(0,0,1)"]
    assert len(signatures_up_to(6)) == 83
    assert {s.n for s in signatures(4)} == {4}


@pytest.mark.parametrize("args", [(0, 0, 0), (-1, 1, 1), (5, 5, 5)])
def test_signature_rejects_out_of_range(args):
    with pytest.raises(ValueError):
        Signature(*args)


def test_signature_cap_from_environment(monkeypatch):
    monkeypatch.setenv("GA_N_MAX", "10")
    assert Signature(5, 5, 0).n == 10
    monkeypatch.setenv("GA_N_MAX", "13")
    with pytest.raises(ValueError):
        Signature(1, 0, 0)


def test_parse_forms(monkeypatch):
    monkeypatch.setenv("GA_N_MAX", "11")
    sig = Signature(5, 0, 6)
    u = parse_multivector("2/3*e{1,11} - e{2}", sig)
    assert u[1 | 1 << 10] == Fraction(2, 3) and u[2] == -1
    assert format_multivector(u) == "-e{2} + 2/3*e{1,11}"
    with pytest.raises(ValueError):
        parse_multivector("e12", sig)
    with pytest.raises(ValueError):
        parse_multivector("e11", Signature(2, 0, 0))
    with pytest.raises(ValueError):
        parse_multivector("e1 e2", Signature(2, 0, 0))


def test_zero_formats():
    assert str(Multivector.zero(Signature(1, 0, 0))) == "0"


sigs = st.sampled_from(signatures_up_to(4))
coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def multivectors(draw, sig=None):
    sig = sig or draw(sigs)
    return Multivector(sig, {m: draw(coeff) for m in range(sig.dim)})


@given(multivectors())
def test_parse_format_round_trip(u):
    assert parse_multivector(format_multivector(u), u.sig) == u


@given(sigs.flatmap(lambda s: st.tuples(multivectors(s), multivectors(s), multivectors(s))))
def test_associativity_and_distributivity(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(sigs.flatmap(lambda s: st.tuples(multivectors(s), multivectors(s))))
def test_involution_laws(pair):
    a, b = pair
    assert reversion(a * b) == reversion(b) * reversion(a)
    assert grade_involution(a * b) == grade_involution(a) * grade_involution(b)
    assert clifford_conjugation(a * b) == clifford_conjugation(b) * clifford_conjugation(a)
    assert reversion(reversion(a)) == a
