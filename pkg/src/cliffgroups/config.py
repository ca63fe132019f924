"""Global limits and defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass

N_MAX_DEFAULT = 8
N_MAX_HARD_CAP = 12

# Dense sign tables are built only up to this many generators.
DENSE_TABLE_MAX = 10


def n_max() -> int:
    """Largest supported n, taken from GA_N_MAX when set."""
    raw = os.environ.get("GA_N_MAX")
    if raw is None:
        return N_MAX_DEFAULT
    value = int(raw)
    if not 1 <= value <= N_MAX_HARD_CAP:
        raise ValueError(f"GA_N_MAX must lie in [1, {N_MAX_HARD_CAP}], got {value}")
    return value


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of a verification sweep."""

    max_n: int = 6
    samples_per_case: int = 20
    seed: int = 0
    coeff_bound: int = 3
