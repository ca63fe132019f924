import pytest

from cliffgroups import config as cfg
from cliffgroups.algebra import Signature
from cliffgroups.groups import GroupId
from cliffgroups.verify import (
    FAIL,
    case_seed,
    check_centralizer,
    check_inclusion,
    equality_exception,
    run_verify,
)


def test_case_seed_is_stable():
    assert case_seed(1, "a", 2) == case_seed(1, "a", 2) != case_seed(2, "a", 2)


def test_single_centralizer_check():
    result = check_centralizer(Signature(1, 0, 1), "Z2")
    assert result.status == "pass"


def test_max_n_one_covers_three_signatures():
    report = run_verify(cfg.SweepConfig(max_n=1, samples_per_case=3))
    assert {r.signature for r in report.results} == {"Cl(1,0,0)", "Cl(0,1,0)", "Cl(0,0,1)"}


def test_report_is_deterministic():
    conf = cfg.SweepConfig(max_n=2, samples_per_case=4, seed=3)
    assert run_verify(conf).to_dict(timing=False) == run_verify(conf).to_dict(timing=False)


@pytest.mark.slow
def test_sweep_to_three_passes():
    report = run_verify(cfg.SweepConfig(max_n=3, samples_per_case=10, seed=42))
    assert report.ok, report.text()
    assert report.summary[FAIL] == 0


def test_max_n_out_of_range():
    with pytest.raises(ValueError):
        run_verify(cfg.SweepConfig(max_n=0))
    with pytest.raises(ValueError):
        run_verify(cfg.SweepConfig(max_n=cfg.n_max() + 1))


def test_equality_exception_cases():
    hits = [s for s in (Signature(2, 0, 2), Signature(1, 0, 3), Signature(4, 0, 0), Signature(0, 0, 4))
            if equality_exception(GroupId.Ac12, GroupId.A23, s)]
    assert hits == [Signature(2, 0, 2), Signature(1, 0, 3)]
    assert not equality_exception(GroupId.Bc01, GroupId.B12, Signature(2, 0, 2))


def test_inclusion_exception_is_reported_strict():
    sig = Signature(2, 0, 2)
    relaxed = check_inclusion(sig, GroupId.Ac12, GroupId.A23, True, 6, 0)
    assert relaxed.status == "pass" and relaxed.group_or_target == "Ac12<A23"
    literal = check_inclusion(sig, GroupId.Ac12, GroupId.A23, True, 30, 0, literal=True)
    assert literal.status == FAIL
