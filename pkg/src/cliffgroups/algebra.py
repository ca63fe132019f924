"""Signatures, blades and exact multivectors of Cl(p,q,r).

Blades are integer bitmasks: bit ``a-1`` is set when generator ``e_a``
participates. Generators ``1..p`` square to ``+1``, ``p+1..p+q`` to ``-1``
and the last ``r`` generators square to zero.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import config


@dataclass(frozen=True, order=True)
class Signature:
    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        for name in ("p", "q", "r"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        n = self.p + self.q + self.r
        cap = config.n_max()
        if not 1 <= n <= cap:
            raise ValueError(f"n = {n} outside the supported range [1, {cap}]")

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def negative_mask(self) -> int:
        return ((1 << self.q) - 1) << self.p

    @property
    def null_mask(self) -> int:
        return ((1 << self.r) - 1) << (self.p + self.q)

    @property
    def nondegenerate_mask(self) -> int:
        return (1 << (self.p + self.q)) - 1

    @classmethod
    def parse(cls, text: str) -> Signature:
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"signature must look like 'p,q,r', got {text!r}")
        return cls(*(int(s) for s in parts))

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q},{self.r})"


def signatures(n: int) -> list[Signature]:
    """All splits p+q+r = n, ordered by decreasing p then decreasing q."""
    return [Signature(p, q, n - p - q) for p in range(n, -1, -1) for q in range(n - p, -1, -1)]


def signatures_up_to(max_n: int) -> list[Signature]:
    return [sig for n in range(1, max_n + 1) for sig in signatures(n)]


def grade(mask: int) -> int:
    return mask.bit_count()


def _swap_parity(a: int, b: int) -> int:
    # pairs (i in a, j in b) with i > j; each needs one transposition
    a >>= 1
    count = 0
    while a:
        count += (a & b).bit_count()
        a >>= 1
    return count & 1


def _blade_sign(a: int, b: int, sig: Signature) -> int:
    common = a & b
    if common & sig.null_mask:
        return 0
    flips = _swap_parity(a, b) + (common & sig.negative_mask).bit_count()
    return -1 if flips & 1 else 1


def blade_product(a: int, b: int, sig: Signature) -> tuple[Fraction, int]:
    """Product of two canonical blades as ``(coefficient, a ^ b)``."""
    limit = sig.dim
    if not (0 <= a < limit and 0 <= b < limit):
        raise ValueError(f"blade masks {a}, {b} invalid for {sig}")
    return Fraction(_blade_sign(a, b, sig)), a ^ b


# Involution signs indexed by grade mod 4.
_HAT = (1, -1, 1, -1)
_REV = (1, 1, -1, -1)
_CONJ = (1, -1, -1, 1)


class _Tables:
    """Dense sign tables of one signature, used by the vectorized product."""

    def __init__(self, sig: Signature):
        size = sig.dim
        idx = np.arange(size)
        self.xor = idx[:, None] ^ idx[None, :]
        a, b = idx[:, None], idx[None, :]
        flips = np.bitwise_count(a & b & sig.negative_mask).astype(np.int64)
        for shift in range(1, sig.n):
            flips += np.bitwise_count((a >> shift) & b)
        sign = np.where(flips % 2 == 1, -1, 1).astype(np.int64)
        sign[(a & b & sig.null_mask) != 0] = 0
        self.sign = sign
        # row c, column a: sign of e_a * e_(a^c), the term landing on blade c
        self.product_sign = sign[idx[None, :], self.xor]
        # left operator of t: entry (c, b) = sign(c^b, b) t[c^b]
        self.left_sign = sign[self.xor, idx[None, :]]
        # right operator of t: entry (c, b) = sign(b, c^b) t[c^b]
        self.right_sign = sign[idx[None, :], self.xor]
        self.sign_list = sign.tolist()
        grades = np.array([grade(m) for m in range(size)])
        self.grade = grades
        self.hat = np.array([_HAT[g % 4] for g in grades], dtype=np.int64)
        self.rev = np.array([_REV[g % 4] for g in grades], dtype=np.int64)
        self.conj = np.array([_CONJ[g % 4] for g in grades], dtype=np.int64)


@functools.lru_cache(maxsize=None)
def tables(sig: Signature) -> _Tables:
    if sig.n > config.DENSE_TABLE_MAX:
        raise ValueError(f"dense tables unavailable for n = {sig.n}")
    return _Tables(sig)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, np.integer)):
        return Fraction(int(value)) if isinstance(value, (int, np.integer)) else Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class Multivector:
    """Immutable element of Cl(p,q,r) with exact rational coefficients."""

    __slots__ = ("sig", "_coeffs", "_hash")

    def __init__(self, sig: Signature, coeffs: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        limit = sig.dim
        for mask, value in (coeffs or {}).items():
            mask = int(mask)
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} invalid for {sig}")
            value = _as_fraction(value)
            if value:
                clean[mask] = value
        self.sig = sig
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _trusted(cls, sig: Signature, coeffs: dict[int, Fraction]) -> Multivector:
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, sig: Signature) -> Multivector:
        return cls._trusted(sig, {})

    @classmethod
    def scalar(cls, sig: Signature, value=1) -> Multivector:
        return cls(sig, {0: value})

    @classmethod
    def blade(cls, sig: Signature, mask: int, coeff=1) -> Multivector:
        return cls(sig, {mask: coeff})

    @classmethod
    def vector(cls, sig: Signature, coords: Iterable) -> Multivector:
        return cls(sig, {1 << i: c for i, c in enumerate(coords)})

    @classmethod
    def from_dense(cls, sig: Signature, values, denominator=1) -> Multivector:
        den = Fraction(denominator)
        coeffs = {}
        for mask, value in enumerate(values):
            if value:
                coeffs[mask] = Fraction(int(value)) / den
        return cls._trusted(sig, coeffs)

    # inspection

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._coeffs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._coeffs)

    def __getitem__(self, mask: int) -> Fraction:
        return self._coeffs.get(mask, Fraction(0))

    def __len__(self) -> int:
        return len(self._coeffs)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def scalar_part(self) -> Fraction:
        return self[0]

    def grades(self) -> set[int]:
        return {grade(m) for m in self._coeffs}

    def to_dense(self) -> tuple[np.ndarray, int]:
        """Integer numerators over a common positive denominator."""
        den = 1
        for value in self._coeffs.values():
            den = den * value.denominator // math.gcd(den, value.denominator)
        out = [0] * self.sig.dim
        for mask, value in self._coeffs.items():
            out[mask] = value.numerator * (den // value.denominator)
        return np.array(out, dtype=object), den

    # arithmetic

    def _check(self, other: Multivector) -> None:
        if other.sig != self.sig:
            raise ValueError(f"incompatible algebras {self.sig} and {other.sig}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            if isinstance(other, (int, Rational)):
                other = Multivector.scalar(self.sig, other)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for mask, value in other._coeffs.items():
            total = out.get(mask, 0) + value
            if total:
                out[mask] = total
            else:
                out.pop(mask, None)
        return Multivector._trusted(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._trusted(self.sig, {m: -v for m, v in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = Multivector.scalar(self.sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> Multivector:
        factor = _as_fraction(factor)
        if not factor:
            return Multivector.zero(self.sig)
        return Multivector._trusted(self.sig, {m: v * factor for m, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(Fraction(1) / _as_fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Multivector.scalar(self.sig)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.sig == other.sig and self._coeffs == other._coeffs
        if isinstance(other, (int, Rational)):
            return self._coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self._coeffs.items())))
        return self._hash

    # involutions

    def _signed(self, table: tuple[int, int, int, int]) -> Multivector:
        return Multivector._trusted(
            self.sig, {m: v if table[grade(m) % 4] > 0 else -v for m, v in self._coeffs.items()}
        )

    def grade_involution(self) -> Multivector:
        return self._signed(_HAT)

    def reversion(self) -> Multivector:
        return self._signed(_REV)

    def clifford_conjugation(self) -> Multivector:
        return self._signed(_CONJ)

    def __str__(self) -> str:
        return format_multivector(self)

    def __repr__(self) -> str:
        return f"Multivector({self.sig}, {format_multivector(self)!r})"


def grade_involution(u: Multivector) -> Multivector:
    return u.grade_involution()


def reversion(u: Multivector) -> Multivector:
    return u.reversion()


def clifford_conjugation(u: Multivector) -> Multivector:
    return u.clifford_conjugation()


# Products with fewer term pairs than this use the sparse loop.
_SPARSE_PAIR_LIMIT = 96


def _int64_safe(a: np.ndarray, b: np.ndarray, terms: int) -> bool:
    bound_a = max((abs(x) for x in a), default=1) or 1
    bound_b = max((abs(x) for x in b), default=1) or 1
    return bound_a * bound_b * max(terms, 1) < (1 << 62)


def dense_product(sig: Signature, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two integer coefficient vectors (object dtype in and out)."""
    tab = tables(sig)
    if _int64_safe(a, b, sig.dim):
        ai = a.astype(np.int64)
        bi = b.astype(np.int64)
        out = (tab.product_sign * ai[None, :] * bi[tab.xor]).sum(axis=1)
        return out.astype(object)
    return (tab.product_sign * a[None, :] * b[tab.xor]).sum(axis=1)


def geometric_product(u: Multivector, v: Multivector) -> Multivector:
    if u.sig != v.sig:
        raise ValueError(f"incompatible algebras {u.sig} and {v.sig}")
    sig = u.sig
    cu, cv = u._coeffs, v._coeffs
    if not cu or not cv:
        return Multivector.zero(sig)
    if len(cu) * len(cv) <= _SPARSE_PAIR_LIMIT or sig.n > config.DENSE_TABLE_MAX:
        out: dict[int, Fraction] = {}
        if sig.n <= config.DENSE_TABLE_MAX:
            signs = tables(sig).sign_list
            sign_of = lambda a, b: signs[a][b]  # noqa: E731
        else:
            sign_of = lambda a, b: _blade_sign(a, b, sig)  # noqa: E731
        for a, x in cu.items():
            for b, y in cv.items():
                s = sign_of(a, b)
                if s:
                    c = a ^ b
                    out[c] = out.get(c, 0) + (x * y if s > 0 else -x * y)
        return Multivector._trusted(sig, {m: Fraction(val) for m, val in out.items() if val})
    a, da = u.to_dense()
    b, db = v.to_dense()
    return Multivector.from_dense(sig, dense_product(sig, a, b), da * db)


# Grade selectors. Each answers whether a blade belongs to the named span.


@dataclass(frozen=True)
class Grade:
    k: int

    def selects(self, mask: int, sig: Signature) -> bool:
        return grade(mask) == self.k


@dataclass(frozen=True)
class GradeGeq:
    k: int

    def selects(self, mask: int, sig: Signature) -> bool:
        return grade(mask) >= self.k


@dataclass(frozen=True)
class GradeLeq:
    k: int

    def selects(self, mask: int, sig: Signature) -> bool:
        return grade(mask) <= self.k


@dataclass(frozen=True)
class Parity:
    l: int  # noqa: E741

    def selects(self, mask: int, sig: Signature) -> bool:
        return grade(mask) % 2 == self.l % 2


@dataclass(frozen=True)
class Qt:
    """Union of quaternion types, e.g. ``Qt("2")`` or ``Qt("23")``."""

    types: str

    def __post_init__(self) -> None:
        if not self.types or any(ch not in "0123" for ch in self.types):
            raise ValueError(f"quaternion types must be digits 0..3, got {self.types!r}")

    def selects(self, mask: int, sig: Signature) -> bool:
        return str(grade(mask) % 4) in self.types


def QtSum(k: int, l: int) -> Qt:  # noqa: E741, N802
    return Qt(f"{k}{l}")


def _split(mask: int, sig: Signature) -> tuple[int, int]:
    return (mask & sig.nondegenerate_mask).bit_count(), (mask & sig.null_mask).bit_count()


@dataclass(frozen=True)
class LambdaGrade:
    """Grade-k blades built only from degenerate generators."""

    k: int

    def selects(self, mask: int, sig: Signature) -> bool:
        return _split(mask, sig) == (0, self.k)


@dataclass(frozen=True)
class LambdaGradeGeq:
    k: int

    def selects(self, mask: int, sig: Signature) -> bool:
        nd, d = _split(mask, sig)
        return nd == 0 and d >= self.k


@dataclass(frozen=True)
class LambdaQt:
    """Degenerate-only blades whose grade mod 4 is among ``types``."""

    types: str

    def selects(self, mask: int, sig: Signature) -> bool:
        nd, d = _split(mask, sig)
        return nd == 0 and str(d % 4) in self.types


@dataclass(frozen=True)
class LambdaParityEven:
    def selects(self, mask: int, sig: Signature) -> bool:
        nd, d = _split(mask, sig)
        return nd == 0 and d % 2 == 0


@dataclass(frozen=True)
class LambdaAll:
    def selects(self, mask: int, sig: Signature) -> bool:
        return not mask & sig.nondegenerate_mask


@dataclass(frozen=True)
class MixedSpan:
    """Exactly k non-degenerate and l degenerate generators."""

    k: int
    l: int  # noqa: E741

    def selects(self, mask: int, sig: Signature) -> bool:
        return _split(mask, sig) == (self.k, self.l)


@dataclass(frozen=True)
class MixedSpanGeq:
    """Exactly k non-degenerate and at least l degenerate generators."""

    k: int
    l: int  # noqa: E741

    def selects(self, mask: int, sig: Signature) -> bool:
        nd, d = _split(mask, sig)
        return nd == self.k and d >= self.l


@dataclass(frozen=True)
class Center:
    def selects(self, mask: int, sig: Signature) -> bool:
        if sig.n % 2 == 1 and mask == sig.dim - 1:
            return True
        return LambdaParityEven().selects(mask, sig)


@dataclass(frozen=True)
class Radical:
    def selects(self, mask: int, sig: Signature) -> bool:
        return bool(mask & sig.null_mask)


@dataclass(frozen=True)
class Full:
    def selects(self, mask: int, sig: Signature) -> bool:
        return True


@dataclass(frozen=True)
class Zero:
    def selects(self, mask: int, sig: Signature) -> bool:
        return False


def project(u: Multivector, sel) -> Multivector:
    """Keep the blades of ``u`` that ``sel`` selects."""
    sig = u.sig
    return Multivector._trusted(sig, {m: v for m, v in u._coeffs.items() if sel.selects(m, sig)})


# Text format


def format_blade(mask: int, sig: Signature) -> str:
    indices = [i + 1 for i in range(sig.n) if mask >> i & 1]
    if sig.n <= 9:
        return "e" + "".join(map(str, indices))
    return "e{" + ",".join(map(str, indices)) + "}"


def format_multivector(u: Multivector) -> str:
    if u.is_zero():
        return "0"
    parts = []
    for mask, value in u.items():
        negative = value < 0
        mag = -value if negative else value
        if mask == 0:
            body = str(mag)
        elif mag == 1:
            body = format_blade(mask, u.sig)
        else:
            body = f"{mag}*{format_blade(mask, u.sig)}"
        if parts:
            parts.append(("- " if negative else "+ ") + body)
        else:
            parts.append(("-" if negative else "") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?(?:\s*\*\s*(?P<blade1>e(?:\{[\d,\s]*\}|\d*)))?
          | (?P<blade2>e(?:\{[\d,\s]*\}|\d*))
        )\s*""",
    re.VERBOSE,
)


def _parse_blade(token: str, sig: Signature) -> int:
    body = token[1:]
    if body.startswith("{"):
        items = [s.strip() for s in body[1:-1].split(",") if s.strip()]
    else:
        if sig.n > 9 and body:
            raise ValueError(f"use the e{{...}} form for blades when n > 9: {token!r}")
        items = list(body)
    mask = 0
    for item in items:
        index = int(item)
        if not 1 <= index <= sig.n:
            raise ValueError(f"generator index {index} invalid for {sig}")
        bit = 1 << (index - 1)
        if mask & bit:
            raise ValueError(f"repeated generator in blade {token!r}")
        mask |= bit
    return mask


def parse_multivector(text: str, sig: Signature) -> Multivector:
    """Inverse of :func:`format_multivector` (also accepts a leading sign)."""
    text = text.strip()
    if not text:
        raise ValueError("empty multivector text")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse multivector text at {text[pos:]!r}")
        if not first and match.group("sign") is None:
            raise ValueError(f"missing '+' or '-' before {text[pos:]!r}")
        sign = -1 if match.group("sign") == "-" else 1
        if match.group("num") is not None:
            value = Fraction(int(match.group("num")), int(match.group("den") or 1))
            blade = match.group("blade1")
        else:
            value = Fraction(1)
            blade = match.group("blade2")
        mask = _parse_blade(blade, sig) if blade else 0
        coeffs[mask] = coeffs.get(mask, 0) + sign * value
        pos = match.end()
        first = False
    return Multivector(sig, coeffs)
