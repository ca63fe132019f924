from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from cliffgroups.algebra import Multivector, Signature

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_mv(sig: Signature, rng: random.Random, bound: int = 3, density: float = 1.0) -> Multivector:
    return Multivector(
        sig, {m: rng.randint(-bound, bound) for m in range(sig.dim) if rng.random() < density}
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
