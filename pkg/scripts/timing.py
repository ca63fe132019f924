"""Time one representative check of each kind per dimension n.

    python scripts/timing.py --max-n 5 --samples 20
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from cliffgroups.algebra import Signature
from cliffgroups.centralizers import CLOSED_FORM_TARGETS
from cliffgroups.groups import EQUIVALENCE_GROUPS, FACTOR_PLANS, GENERALIZED_GROUPS
from cliffgroups.verify import check_centralizer, check_equivalence, check_factor, check_lie


@dataclass(frozen=True)
class TimingOptions:
    max_n: int = 5
    samples: int = 20
    seed: int = 0


def timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--samples", type=int, default=20)
    args = ap.parse_args()
    opts = TimingOptions(args.max_n, args.samples)
    print(f"{'n':>2} {'centralizers':>13} {'equivalence':>12} {'factor':>8} {'lie':>8}   (seconds, one signature)")
    for n in range(2, opts.max_n + 1):
        sig = Signature(n - 2, 0, 2)
        cols = [
            timed(lambda: [check_centralizer(sig, t) for t in CLOSED_FORM_TARGETS]),
            timed(lambda: [check_equivalence(sig, g, opts.samples, opts.seed) for g in EQUIVALENCE_GROUPS]),
            timed(lambda: [check_factor(sig, g, opts.samples, opts.seed) for g in FACTOR_PLANS]),
            timed(lambda: [check_lie(sig, g) for g in GENERALIZED_GROUPS]),
        ]
        print(f"{n:>2} " + " ".join(f"{c:>12.2f}" for c in cols))


if __name__ == "__main__":
    main()
