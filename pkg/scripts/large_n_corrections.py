"""Check the corrected Lie table rows at n = 7 and n = 8, past the acceptance range.

Each case compares the computed algebra with both the printed and the corrected
row. Needs GA_N_MAX >= 8 (the default).
"""

from __future__ import annotations

import sys
import time

from cliffgroups.algebra import Signature
from cliffgroups.groups import GroupId
from cliffgroups.lie import PRINTED_ROWS, TABLE_ROWS, eval_dim_formula, lie_algebra, table_row
from cliffgroups.subspaces import evaluate

CASES = [
    (GroupId.A23, Signature(2, 0, 6)),
    (GroupId.A23, Signature(1, 0, 7)),
    (GroupId.A23, Signature(4, 0, 4)),
    (GroupId.Qt23, Signature(3, 0, 5)),
    (GroupId.Qt23, Signature(2, 1, 5)),
    (GroupId.Qt01, Signature(1, 0, 6)),
    (GroupId.Qt01, Signature(0, 1, 6)),
]


def agrees(rows, g, sig, computed) -> bool:
    row = table_row(g, sig, rows)
    span = evaluate(row.algebra, sig).to_linear()
    return computed == span and computed.dim == eval_dim_formula(row.dimension, sig)


def main() -> int:
    ok = True
    for g, sig in CASES:
        start = time.perf_counter()
        computed = lie_algebra(g, sig)
        printed, corrected = agrees(PRINTED_ROWS, g, sig, computed), agrees(TABLE_ROWS, g, sig, computed)
        ok &= corrected
        print(f"{g.value:5} {str(sig):10} dim {computed.dim:4}  printed={printed!s:5} corrected={corrected!s:5} "
              f"({time.perf_counter() - start:.1f}s)")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
