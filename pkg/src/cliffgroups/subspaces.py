"""Blade-spanned subspaces and a small expression language for direct sums.

Every subspace the group theory needs is spanned by basis blades, so it is
stored as a frozen set of masks. Expressions such as
``"L0 + L^{n-2} + C1L^{n-3} + C^{n}"`` are instantiated for a signature by
:func:`evaluate`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import (
    Center,
    Full,
    Grade,
    GradeGeq,
    GradeLeq,
    LambdaAll,
    LambdaGrade,
    LambdaGradeGeq,
    LambdaParityEven,
    LambdaQt,
    MixedSpan,
    MixedSpanGeq,
    Multivector,
    Parity,
    Qt,
    QtSum,
    Radical,
    Signature,
    Zero,
)
from .linalg import LinearSubspace

__all__ = [
    "BladeSubspace",
    "Center",
    "Full",
    "Grade",
    "GradeGeq",
    "GradeLeq",
    "LambdaAll",
    "LambdaGrade",
    "LambdaGradeGeq",
    "LambdaParityEven",
    "LambdaQt",
    "MixedSpan",
    "MixedSpanGeq",
    "Parity",
    "Qt",
    "QtSum",
    "Radical",
    "Zero",
    "evaluate",
    "named_subspace",
    "orth_complement",
    "parse_name",
    "qt_dim",
    "qt_dim_closed_form",
    "trig_pair",
]


class OverlapError(ValueError):
    """A direct sum was requested between spans sharing a blade."""


@dataclass(frozen=True)
class BladeSubspace:
    sig: Signature
    blades: frozenset[int]

    @property
    def dim(self) -> int:
        return len(self.blades)

    def selects(self, mask: int, sig: Signature) -> bool:
        return mask in self.blades

    def contains(self, u: Multivector) -> bool:
        return u.support <= self.blades

    def __contains__(self, u: Multivector) -> bool:
        return self.contains(u)

    def _same(self, other: BladeSubspace) -> None:
        if self.sig != other.sig:
            raise ValueError(f"subspaces live in different algebras {self.sig}, {other.sig}")

    def direct_sum(self, other: BladeSubspace) -> BladeSubspace:
        self._same(other)
        overlap = self.blades & other.blades
        if overlap:
            raise OverlapError(f"direct sum of overlapping spans (shared blades {sorted(overlap)})")
        return BladeSubspace(self.sig, self.blades | other.blades)

    __add__ = direct_sum

    def union(self, other: BladeSubspace) -> BladeSubspace:
        self._same(other)
        return BladeSubspace(self.sig, self.blades | other.blades)

    def __and__(self, other: BladeSubspace) -> BladeSubspace:
        self._same(other)
        return BladeSubspace(self.sig, self.blades & other.blades)

    def __le__(self, other: BladeSubspace) -> bool:
        self._same(other)
        return self.blades <= other.blades

    def even(self) -> BladeSubspace:
        return BladeSubspace(self.sig, frozenset(m for m in self.blades if m.bit_count() % 2 == 0))

    def to_linear(self) -> LinearSubspace:
        return LinearSubspace.span(self.sig.dim, ({m: Fraction(1)} for m in sorted(self.blades)))

    def sorted_blades(self) -> list[int]:
        return sorted(self.blades)


def named_subspace(sig: Signature, name) -> BladeSubspace:
    """Span of the blades selected by ``name`` (any selector with ``selects``)."""
    return BladeSubspace(sig, frozenset(m for m in range(sig.dim) if name.selects(m, sig)))


def orth_complement(d: BladeSubspace, h: BladeSubspace) -> BladeSubspace:
    """Blades of ``h`` outside ``d``; requires ``d`` to lie inside ``h``."""
    if not d.blades <= h.blades:
        raise ValueError("orthogonal complement needs d to be contained in h")
    return BladeSubspace(h.sig, h.blades - d.blades)


_NAME_PATTERNS = [
    (re.compile(r"grade:(\d+)$"), lambda m: Grade(int(m[1]))),
    (re.compile(r"grade>=(\d+)$"), lambda m: GradeGeq(int(m[1]))),
    (re.compile(r"grade<=(\d+)$"), lambda m: GradeLeq(int(m[1]))),
    (re.compile(r"parity:([01])$"), lambda m: Parity(int(m[1]))),
    (re.compile(r"qt:([0-3]{1,4})$"), lambda m: Qt(m[1])),
    (re.compile(r"lambda:(\d+)$"), lambda m: LambdaGrade(int(m[1]))),
    (re.compile(r"lambda:even$"), lambda m: LambdaParityEven()),
    (re.compile(r"mixed:(\d+),(\d+)$"), lambda m: MixedSpan(int(m[1]), int(m[2]))),
    (re.compile(r"center$"), lambda m: Center()),
    (re.compile(r"radical$"), lambda m: Radical()),
    (re.compile(r"full$"), lambda m: Full()),
    (re.compile(r"zero$"), lambda m: Zero()),
]


def parse_name(text: str):
    """Selector for a CLI subspace string such as ``qt:23`` or ``mixed:1,2``."""
    text = text.strip().lower()
    for pattern, build in _NAME_PATTERNS:
        match = pattern.match(text)
        if match:
            return build(match)
    raise ValueError(f"unknown subspace name {text!r}")


# Direct-sum expressions.
#
#   L0            even-grade degenerate blades (including e)
#   L             all degenerate-only blades
#   L^{k}         degenerate-only blades of grade k;   L^{>=k} grade at least k
#   Lq^{013}      degenerate-only blades of the listed grades mod 4
#   C^{k}         all blades of grade k
#   Cq^{23}       blades of the listed quaternion types
#   C{i}L^{k}     i non-degenerate and k degenerate generators (k may be >=k)
#   Ceven         the even subalgebra
#
# Grade arguments are affine in n, e.g. "n-2". Terms are joined by " + ",
# which asserts that the pieces are blade-disjoint.

_TERM = re.compile(
    r"""^(?:
        (?P<l0>L0)
      | (?P<lq>Lq\^\{(?P<lqt>[0-3]+)\})
      | (?P<cq>Cq\^\{(?P<cqt>[0-3]+)\})
      | (?P<ceven>Ceven)
      | C(?P<mixed>\d+)L\^\{(?P<mgeq>>=)?(?P<mk>[^}]+)\}
      | L\^\{(?P<lgeq>>=)?(?P<lk>[^}]+)\}
      | C\^\{(?P<ck>[^}]+)\}
      | (?P<lall>L)
    )$""",
    re.VERBOSE,
)


def _affine(text: str, sig: Signature) -> int:
    text = text.replace(" ", "")
    match = re.fullmatch(r"(n)?([+-]\d+)?|(\d+)", text)
    if not match or not text:
        raise ValueError(f"bad grade expression {text!r}")
    if match[3] is not None:
        return int(match[3])
    return (sig.n if match[1] else 0) + int(match[2] or 0)


def term_selector(term: str, sig: Signature):
    match = _TERM.match(term.strip())
    if not match:
        raise ValueError(f"bad subspace term {term!r}")
    if match["l0"]:
        return LambdaParityEven()
    if match["lq"]:
        return LambdaQt(match["lqt"])
    if match["cq"]:
        return Qt(match["cqt"])
    if match["ceven"]:
        return Parity(0)
    if match["mixed"] is not None:
        k = _affine(match["mk"], sig)
        i = int(match["mixed"])
        if match["mgeq"]:
            return MixedSpanGeq(i, max(k, 0))
        return MixedSpan(i, k) if k >= 0 else Zero()
    if match["lk"] is not None:
        k = _affine(match["lk"], sig)
        if match["lgeq"]:
            return LambdaGradeGeq(max(k, 0))
        return LambdaGrade(k) if k >= 0 else Zero()
    if match["ck"] is not None:
        k = _affine(match["ck"], sig)
        return Grade(k) if k >= 0 else Zero()
    return LambdaAll()


def evaluate(expr: str, sig: Signature) -> BladeSubspace:
    """Instantiate a direct-sum expression; overlapping pieces raise."""
    result = BladeSubspace(sig, frozenset())
    for term in expr.split("+"):
        if term.strip() in ("", "0"):
            continue
        result = result.direct_sum(named_subspace(sig, term_selector(term, sig)))
    return result


# Dimensions of the quaternion-type subspaces.

# (2^{m/2} cos(pi m/4), 2^{m/2} sin(pi m/4)) for m = 0..7; the pattern
# repeats with a factor 16 every 8 steps.
_TRIG_PERIOD = ((1, 0), (1, 1), (0, 2), (-2, 2), (-4, 0), (-4, -4), (0, -8), (8, -8))


def trig_pair(m: int) -> tuple[int, int]:
    """Exact (2^{m/2} cos(pi m/4), 2^{m/2} sin(pi m/4)) for m >= 0."""
    c, s = _TRIG_PERIOD[m % 8]
    scale = 16 ** (m // 8)
    return c * scale, s * scale


def qt_dim(n: int, k: int) -> int:
    """Number of blades of grade congruent to k mod 4 among n generators."""
    return sum(comb(n, j) for j in range(k % 4, n + 1, 4))


def qt_dim_closed_form(n: int, k: int) -> Fraction:
    """2^{n-2} plus the trigonometric correction for quaternion type k."""
    c, s = trig_pair(n)
    base = Fraction(2) ** (n - 2)
    half = Fraction(1, 2)
    correction = {0: c, 1: s, 2: -c, 3: -s}[k % 4]
    return base + half * correction
