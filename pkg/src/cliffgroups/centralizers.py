"""Centralizers and twisted centralizers: brute-force kernels and closed forms.

The closed forms are stored as data (case guard, direct-sum expression) and
instantiated with :func:`cliffgroups.subspaces.evaluate`. The brute-force
solver is independent of them: it builds the linear constraints from the
geometric product and takes an exact kernel.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass

from .algebra import Grade, Multivector, Parity, Qt, Signature, grade
from .guards import holds
from .linalg import LinearSubspace, RationalMatrix, intersect, kernel
from .subspaces import BladeSubspace, evaluate, named_subspace


class CentralizerKind(enum.Enum):
    PLAIN = "Z"
    CHECK = "Zc"
    TILDE = "Zt"


class NoClosedForm(KeyError):
    """The requested centralizer has no closed form in the source tables."""


def _twisted(kind: CentralizerKind, v_mask: int) -> bool:
    if kind is CentralizerKind.CHECK:
        return True
    if kind is CentralizerKind.TILDE:
        return grade(v_mask) % 2 == 1
    return False


def constraint_matrix(s: BladeSubspace, kind: CentralizerKind) -> RationalMatrix:
    """Stacked matrices of X -> h(X) V - V X over the basis blades V of s."""
    sig = s.sig
    size = sig.dim
    basis = [Multivector.blade(sig, m) for m in range(size)]
    rows: dict[tuple[int, int], dict[int, object]] = {}
    for v_mask in s.sorted_blades():
        v = basis[v_mask]
        twist = _twisted(kind, v_mask)
        for x_mask, x in enumerate(basis):
            left = x.grade_involution() if twist else x
            image = left * v - v * x
            for out_mask, value in image.coeffs.items():
                rows.setdefault((v_mask, out_mask), {})[x_mask] = value
    ordered = [rows[key] for key in sorted(rows)]
    return RationalMatrix(len(ordered), size, ordered)


@functools.lru_cache(maxsize=None)
def _bruteforce_cached(sig: Signature, blades: frozenset[int], kind: CentralizerKind) -> LinearSubspace:
    return kernel(constraint_matrix(BladeSubspace(sig, blades), kind))


def centralizer_bruteforce(s: BladeSubspace, kind: CentralizerKind) -> LinearSubspace:
    return _bruteforce_cached(s.sig, s.blades, kind)


# Closed forms for the fixed-grade centralizers. Each entry lists
# (guard, expression); exactly one guard holds for every (n, r).
GRADE_FORMS: dict[str, list[tuple[tuple[str, ...], str]]] = {
    "Z1": [
        (("n odd",), "L0 + C^{n}"),
        (("n even",), "L0"),
    ],
    "Z2": [
        (("r!=n",), "L + C^{n}"),
        (("r=n",), "L"),
    ],
    "Z3": [
        (("n odd",), "L0 + L^{n-2} + C1L^{n-3} + C1L^{n-2} + C2L^{n-3} + C^{n}"),
        (("n even",), "L0 + L^{n-1} + C1L^{>=n-2} + C2L^{n-2}"),
    ],
    "Z4": [
        (("r!=n",), "L + C1L^{n-3} + C1L^{n-2} + C2L^{n-4} + C2L^{n-3} + C^{n}"),
        (("r=n",), "L"),
    ],
    "Zc1": [((), "L")],
    "Zc2": [
        (("n odd",), "L0 + L^{n} + C1L^{n-1}"),
        (("n even", "r!=n"), "L0 + L^{n-1} + C1L^{n-2} + C^{n}"),
        (("n even", "r=n"), "L0 + L^{n-1}"),
    ],
    "Zc3": [((), "L + C1L^{>=n-2} + C2L^{>=n-3}")],
    # explicit intersections used by the group definitions
    # The printed even-n case omits C^n, which lies in both Z2 and Z3 when
    # p+q is 1 or 2; the split on r restores it (see PRINTED_FORMS).
    "Z2&Z3": [
        (("n odd",), "L0 + L^{n-2} + C^{n}"),
        (("n even", "r=n, r<=n-3"), "L0 + L^{n-1}"),
        (("n even", "r=n-2,n-1"), "L0 + L^{n-1} + C^{n}"),
    ],
    "Zc1&Zc2": [
        (("n odd",), "L0 + L^{n}"),
        (("n even",), "L0 + L^{n-1}"),
    ],
    "Z3&C(0)": [
        (("n odd",), "L0 + C1L^{n-2} + C2L^{n-3}"),
        (("n even",), "L0 + C1L^{n-1} + C2L^{n-2}"),
    ],
    "Zc2&Zc3": [
        (("n odd",), "L0 + L^{n} + C1L^{n-1}"),
        (("n even",), "L0 + L^{n-1} + C1L^{n-2} + C1L^{n-1} + C2L^{n-2}"),
    ],
}

# Rows exactly as printed where they differ from GRADE_FORMS.
PRINTED_FORMS: dict[str, list[tuple[tuple[str, ...], str]]] = {
    "Z2&Z3": [
        (("n odd",), "L0 + L^{n-2} + C^{n}"),
        (("n even",), "L0 + L^{n-1}"),
    ],
}

# Targets whose closed form is another target, or its even part.
DERIVED_FORMS: dict[str, tuple[str, str]] = {
    "Zt1": ("same", "Zc1"),
    "Zt2": ("same", "Z2"),
    "Zt3": ("same", "Zc3"),
    "Zt4": ("same", "Z4"),
    "Z^0bar": ("same", "Z4"),
    "Z^1bar": ("same", "Z1"),
    "Z^2bar": ("same", "Z2"),
    "Z^3bar": ("same", "Z3"),
    "Zc^0bar": ("even", "Z4"),
    "Zc^1bar": ("same", "Zc1"),
    "Zc^2bar": ("same", "Zc2"),
    "Zc^3bar": ("same", "Zc3"),
    "Z^01bar": ("same", "Z1"),
    "Z^12bar": ("same", "Z1"),
    "Z^13bar": ("same", "Z1"),
    "Z^23bar": ("same", "Z2&Z3"),
    "Z^02bar": ("same", "Z2"),
    "Z^03bar": ("same", "Z3"),
    "Zc^12bar": ("same", "Zc1&Zc2"),
    "Zc^23bar": ("same", "Zc2&Zc3"),
    "Zc^13bar": ("same", "Zc1"),
    "Zc^01bar": ("even", "Z1"),
    "Zc^02bar": ("even", "Z2"),
    "Zc^03bar": ("even", "Z3"),
}

CLOSED_FORM_TARGETS: tuple[str, ...] = tuple(GRADE_FORMS) + tuple(DERIVED_FORMS)
# Zc4 has no closed form but can still be computed by brute force.
ALL_TARGETS: tuple[str, ...] = CLOSED_FORM_TARGETS + ("Zc4",)


@dataclass(frozen=True)
class CentralizerTarget:
    name: str

    def __post_init__(self) -> None:
        _parse_target(self.name)

    @property
    def has_closed_form(self) -> bool:
        return self.name in GRADE_FORMS or self.name in DERIVED_FORMS


_SINGLE = re.compile(r"^(?P<kind>Zc|Zt|Z)(?P<m>\d+)$")
_QT = re.compile(r"^(?P<kind>Zc|Z)\^(?P<types>[0-3]{1,2})bar$")


def _parse_target(name: str):
    """Brute-force recipe: list of (subspace selector or 'C(0)', kind)."""
    parts = name.split("&")
    recipe = []
    for part in parts:
        if part == "C(0)" and len(parts) > 1:
            recipe.append(("C(0)", None))
            continue
        match = _SINGLE.match(part)
        if match:
            recipe.append((Grade(int(match["m"])), CentralizerKind(match["kind"])))
            continue
        match = _QT.match(part)
        if match:
            types = match["types"]
            if len(types) == 2 and types[0] >= types[1]:
                raise ValueError(f"write quaternion pairs in increasing order: {name!r}")
            recipe.append((Qt(types), CentralizerKind(match["kind"])))
            continue
        raise ValueError(f"unknown centralizer target {name!r}")
    return recipe


def bruteforce_target(sig: Signature, target: str | CentralizerTarget) -> LinearSubspace:
    name = target.name if isinstance(target, CentralizerTarget) else target
    result: LinearSubspace | None = None
    for selector, kind in _parse_target(name):
        if selector == "C(0)":
            piece = named_subspace(sig, Parity(0)).to_linear()
        else:
            piece = centralizer_bruteforce(named_subspace(sig, selector), kind)
        result = piece if result is None else intersect(result, piece)
    assert result is not None
    return result


def printed_closed_form(sig: Signature, name: str) -> BladeSubspace:
    """Closed form using the rows as printed, errata included."""
    if name not in PRINTED_FORMS:
        return centralizer_closed_form(sig, name)
    matches = [expr for guard, expr in PRINTED_FORMS[name] if holds(guard, sig.n, sig.r)]
    return evaluate(matches[0], sig)


def centralizer_closed_form(sig: Signature, target: str | CentralizerTarget) -> BladeSubspace:
    name = target.name if isinstance(target, CentralizerTarget) else target
    if name in DERIVED_FORMS:
        how, base = DERIVED_FORMS[name]
        span = centralizer_closed_form(sig, base)
        return span.even() if how == "even" else span
    if name not in GRADE_FORMS:
        _parse_target(name)  # raises for malformed names
        raise NoClosedForm(f"no closed form for {name}")
    matches = [expr for guard, expr in GRADE_FORMS[name] if holds(guard, sig.n, sig.r)]
    if len(matches) != 1:
        raise AssertionError(f"{len(matches)} closed-form cases match {name} at {sig}")
    return evaluate(matches[0], sig)


def tilde_rule(m: int) -> str:
    """Name of the centralizer that the twisted-tilde one equals for grade m."""
    return f"Z{m}" if m % 2 == 0 else f"Zc{m}"
