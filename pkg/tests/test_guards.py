import pytest

from cliffgroups.guards import holds, parse_condition


@pytest.mark.parametrize(
    "text, true_at, false_at",
    [
        ("r=n-1,n", [(4, 3), (4, 4)], [(4, 2)]),
        ("r=n, r<=n-4", [(5, 5), (5, 1), (5, 0)], [(5, 2), (5, 4)]),
        ("r!=n", [(3, 2)], [(3, 3)]),
        ("r<=n-3,r=n", [(4, 1), (4, 4)], [(4, 2), (4, 3)]),
        ("r>=n-2", [(3, 1), (3, 3)], [(3, 0)]),
        ("n odd", [(3, 0)], [(4, 0)]),
        ("n>=7", [(7, 6)], [(3, 2)]),
        ("n=3", [(3, 2)], [(7, 6)]),
        ("r=0", [(2, 0)], [(2, 1)]),
    ],
)
def test_conditions(text, true_at, false_at):
    pred = parse_condition(text)
    assert all(pred(n, r) for n, r in true_at)
    assert not any(pred(n, r) for n, r in false_at)


def test_guard_is_conjunction():
    assert holds(("n even", "r=n-2,n-1"), 4, 2)
    assert not holds(("n even", "r=n-2,n-1"), 5, 3)
    assert holds((), 1, 0)


@pytest.mark.parametrize("bad", ["", "x=1", "4", "r=n*2", "r=n,"])
def test_malformed_conditions(bad):
    with pytest.raises(ValueError):
        parse_condition(bad)
