"""Compare every Lie algebra table row with the computed algebra and write a CSV.

    python scripts/lie_table_sweep.py --max-n 6 --out lie_sweep.csv [--printed]
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from cliffgroups.algebra import signatures_up_to
from cliffgroups.groups import GENERALIZED_GROUPS
from cliffgroups.lie import PRINTED_ROWS, TABLE_ROWS, NoTableRow, eval_dim_formula, lie_algebra, table_row
from cliffgroups.subspaces import evaluate


@dataclass(frozen=True)
class SweepOptions:
    max_n: int = 6
    printed: bool = False
    include_r0: bool = False


def sweep(opts: SweepOptions):
    rows = PRINTED_ROWS if opts.printed else TABLE_ROWS
    for sig in signatures_up_to(opts.max_n):
        if sig.r == 0 and not opts.include_r0:
            continue
        for g in GENERALIZED_GROUPS:
            computed = lie_algebra(g, sig)
            record = {"group": g.value, "signature": str(sig), "computed_dim": computed.dim}
            try:
                row = table_row(g, sig, rows)
            except NoTableRow:
                yield {**record, "row": "NoTableRow", "formula_dim": "", "span_match": "", "dim_match": ""}
                continue
            formula = eval_dim_formula(row.dimension, sig)
            yield {
                **record,
                "row": row.citation,
                "formula_dim": formula,
                "span_match": computed == evaluate(row.algebra, sig).to_linear(),
                "dim_match": computed.dim == formula,
            }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--printed", action="store_true", help="use the rows as printed")
    ap.add_argument("--include-r0", action="store_true")
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args()
    opts = SweepOptions(args.max_n, args.printed, args.include_r0)
    fields = ["group", "signature", "row", "computed_dim", "formula_dim", "span_match", "dim_match"]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fields)
    writer.writeheader()
    mismatches = 0
    for rec in sweep(opts):
        writer.writerow(rec)
        mismatches += rec["span_match"] is False or rec["dim_match"] is False
    if args.out:
        fh.close()
    print(f"{mismatches} mismatching (group, signature) pairs", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
