"""Case conditions on (n, r) written the way the tables print them.

A condition string is a comma-separated list of clauses joined by OR, e.g.
``"r=n, r<=n-4"``. A clause without a variable inherits the variable and
operator of the previous clause, so ``"r=n-1,n"`` means r in {n-1, n}.
``"n odd"`` and ``"n even"`` are accepted as clauses. A guard is a tuple of
condition strings joined by AND.
"""

from __future__ import annotations

import functools
import operator
import re
from typing import Callable, Sequence

_OPS = {
    "=": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
}

_CLAUSE = re.compile(r"^(?P<var>[nr])\s*(?P<op>!=|<=|>=|=|<|>)\s*(?P<expr>.+)$")
_EXPR = re.compile(r"^(?:(?P<n>n)\s*(?P<off>[+-]\s*\d+)?|(?P<const>\d+))$")

Predicate = Callable[[int, int], bool]


def _expr(text: str) -> Callable[[int], int]:
    match = _EXPR.match(text.strip())
    if not match:
        raise ValueError(f"bad expression {text!r} in guard")
    if match["const"] is not None:
        value = int(match["const"])
        return lambda n: value
    offset = int(match["off"].replace(" ", "")) if match["off"] else 0
    return lambda n: n + offset


@functools.lru_cache(maxsize=None)
def parse_condition(text: str) -> Predicate:
    clauses: list[Predicate] = []
    last: tuple[str, str] | None = None
    for raw in text.split(","):
        item = raw.strip()
        if not item:
            raise ValueError(f"empty clause in guard {text!r}")
        if item in ("n odd", "n even"):
            parity = 1 if item == "n odd" else 0
            clauses.append(lambda n, r, parity=parity: n % 2 == parity)
            last = None
            continue
        match = _CLAUSE.match(item)
        if match:
            var, op = match["var"], match["op"]
            rhs = _expr(match["expr"])
            last = (var, op)
        elif last is not None:
            var, op = last
            rhs = _expr(item)
        else:
            raise ValueError(f"clause {item!r} in {text!r} has no variable to inherit")
        fn = _OPS[op]
        if var == "n":
            clauses.append(lambda n, r, fn=fn, rhs=rhs: fn(n, rhs(n)))
        else:
            clauses.append(lambda n, r, fn=fn, rhs=rhs: fn(r, rhs(n)))
    return lambda n, r: any(c(n, r) for c in clauses)


def holds(guard: Sequence[str], n: int, r: int) -> bool:
    return all(parse_condition(cond)(n, r) for cond in guard)
