"""Exact rational linear algebra on the blade coefficient space.

Matrices are stored as sparse rows of Fractions because the operators that
arise here (centralizer constraints, multiplication by a blade) are mostly
zero. Multivector inversion peels off degenerate generators one at a time
(t = a + b e_n is invertible iff a is) and runs fraction-free (Bareiss)
elimination on integer numpy object arrays for the nondegenerate rest.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import Multivector, Signature, _blade_sign, dense_product, tables

SparseRow = dict[int, Fraction]


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class RationalMatrix:
    """Exact rational matrix backed by sparse rows."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        clean: list[SparseRow] = []
        for row in rows or [{} for _ in range(nrows)]:
            entries = {}
            for j, value in row.items():
                if not 0 <= j < ncols:
                    raise ValueError(f"column {j} out of range for {ncols} columns")
                value = Fraction(value)
                if value:
                    entries[j] = value
            clean.append(entries)
        if len(clean) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(clean)}")
        self.rows = tuple(clean)

    @classmethod
    def from_dense(cls, values: Sequence[Sequence[object]]) -> RationalMatrix:
        values = [list(row) for row in values]
        ncols = len(values[0]) if values else 0
        return cls(len(values), ncols, [{j: v for j, v in enumerate(row) if v} for row in values])

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls(size, size, [{i: 1} for i in range(size)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RationalMatrix:
        return cls(nrows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i].get(j, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        return [[row.get(j, Fraction(0)) for j in range(self.ncols)] for row in self.rows]

    def matvec(self, vec: Sequence[object]) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols} columns")
        return [sum((v * vec[j] for j, v in row.items()), Fraction(0)) for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols}, {self.to_dense()})"


def mul_operator(t: Multivector, side: Side) -> RationalMatrix:
    """Matrix of ``x -> t x`` (LEFT) or ``x -> x t`` (RIGHT) in the blade basis."""
    sig = t.sig
    rows: list[SparseRow] = [{} for _ in range(sig.dim)]
    for a, coeff in t.coeffs.items():
        for b in range(sig.dim):
            s = _blade_sign(a, b, sig) if side is Side.LEFT else _blade_sign(b, a, sig)
            if s:
                rows[a ^ b][b] = rows[a ^ b].get(b, 0) + s * coeff
    return RationalMatrix(sig.dim, sig.dim, rows)


# Row reduction


def rref(rows: Iterable[Mapping[int, Fraction]]) -> tuple[list[SparseRow], list[int]]:
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns)."""
    pivot_rows: dict[int, SparseRow] = {}
    for raw in rows:
        row = {j: Fraction(v) for j, v in raw.items() if v}
        # reduce against existing pivots until the leading column is new
        while row:
            lead = min(row)
            prow = pivot_rows.get(lead)
            if prow is None:
                break
            factor = row[lead]
            for j, v in prow.items():
                value = row.get(j, 0) - factor * v
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {j: v * inv for j, v in row.items()}
        pivot_rows[lead] = row
    # back substitution to clear entries above pivots
    pivots = sorted(pivot_rows)
    for lead in reversed(pivots):
        prow = pivot_rows[lead]
        for other in pivots:
            if other >= lead:
                break
            target = pivot_rows[other]
            factor = target.get(lead)
            if factor:
                for j, v in prow.items():
                    value = target.get(j, 0) - factor * v
                    if value:
                        target[j] = value
                    else:
                        target.pop(j, None)
    return [pivot_rows[p] for p in pivots], pivots


@dataclass(frozen=True, eq=False)
class LinearSubspace:
    """Subspace of Q^ambient_dim with a canonical RREF basis."""

    ambient_dim: int
    basis: tuple[SparseRow, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping[int, object]]) -> LinearSubspace:
        rows, pivots = rref(_as_sparse(v, ambient_dim) for v in vectors)
        return cls(ambient_dim, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> LinearSubspace:
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> LinearSubspace:
        return cls(ambient_dim, tuple({i: Fraction(1)} for i in range(ambient_dim)), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> RationalMatrix:
        return RationalMatrix(self.dim, self.ambient_dim, self.basis)

    def basis_multivectors(self, sig: Signature) -> list[Multivector]:
        if sig.dim != self.ambient_dim:
            raise ValueError("signature does not match the ambient dimension")
        return [Multivector(sig, row) for row in self.basis]

    def blade_support(self) -> frozenset[int] | None:
        """Blade set when every basis row is a single blade, else None."""
        if all(len(row) == 1 for row in self.basis):
            return frozenset(self.pivots)
        return None

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, tuple(frozenset(r.items()) for r in self.basis)))

    def __contains__(self, vec) -> bool:
        return contains(self, vec)

    def __le__(self, other: LinearSubspace) -> bool:
        return all(contains(other, row) for row in self.basis)

    def __repr__(self) -> str:
        return f"LinearSubspace(dim={self.dim}, ambient={self.ambient_dim})"


def _as_sparse(vec, ambient_dim: int) -> SparseRow:
    if isinstance(vec, Multivector):
        if vec.sig.dim != ambient_dim:
            raise ValueError("dimension mismatch")
        return dict(vec.coeffs)
    if isinstance(vec, Mapping):
        out = {int(j): Fraction(v) for j, v in vec.items() if v}
        if any(not 0 <= j < ambient_dim for j in out):
            raise ValueError("dimension mismatch")
        return out
    seq = list(vec)
    if len(seq) != ambient_dim:
        raise ValueError(f"dimension mismatch: {len(seq)} != {ambient_dim}")
    return {j: Fraction(v) for j, v in enumerate(seq) if v}


def kernel(m: RationalMatrix) -> LinearSubspace:
    rows, pivots = rref(m.rows)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    vectors = []
    for f in free:
        vec = {f: Fraction(1)}
        for row, p in zip(rows, pivots):
            value = row.get(f)
            if value:
                vec[p] = -value
        vectors.append(vec)
    return LinearSubspace.span(m.ncols, vectors)


def annihilator(s: LinearSubspace) -> LinearSubspace:
    return kernel(RationalMatrix(s.dim, s.ambient_dim, s.basis))


def subspace_sum(a: LinearSubspace, b: LinearSubspace) -> LinearSubspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    return LinearSubspace.span(a.ambient_dim, list(a.basis) + list(b.basis))


def intersect(a: LinearSubspace, b: LinearSubspace) -> LinearSubspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    return annihilator(subspace_sum(annihilator(a), annihilator(b)))


def reduce_vector(s: LinearSubspace, vec) -> SparseRow:
    """Remainder of ``vec`` after elimination against the RREF basis."""
    row = _as_sparse(vec, s.ambient_dim)
    for prow, p in zip(s.basis, s.pivots):
        factor = row.get(p)
        if factor:
            for j, v in prow.items():
                value = row.get(j, 0) - factor * v
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)
    return row


def contains(s: LinearSubspace, vec) -> bool:
    return not reduce_vector(s, vec)


# Inversion


class NotInvertible:
    """Marker value returned when a multivector has no inverse."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotInvertible"

    def __bool__(self) -> bool:
        return False


NOT_INVERTIBLE = NotInvertible()


def left_operator(sig: Signature, coeffs: np.ndarray) -> np.ndarray:
    """Integer matrix of ``x -> t x`` for an integer coefficient vector."""
    tab = tables(sig)
    return tab.left_sign * coeffs[tab.xor]


def right_operator(sig: Signature, coeffs: np.ndarray) -> np.ndarray:
    tab = tables(sig)
    return tab.right_sign * coeffs[tab.xor]


def bareiss_solve(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, int] | None:
    """Solve ``a x = b`` over the integers, returning ``(d x, d)`` with ``d != 0``.

    ``a`` is a square integer object array. Returns None when singular.
    """
    size = a.shape[0]
    m = np.empty((size, size + 1), dtype=object)
    m[:, :size] = a
    m[:, size] = b
    prev = 1
    for k in range(size):
        column = m[k:, k]
        nz = np.flatnonzero(column != 0)
        if nz.size == 0:
            return None
        piv = k + int(nz[0])
        if piv != k:
            m[[k, piv]] = m[[piv, k]]
        pk = m[k, k]
        if k + 1 < size:
            below = m[k + 1 :, k : k + 1]
            m[k + 1 :, k + 1 :] = (pk * m[k + 1 :, k + 1 :] - below * m[k, k + 1 :]) // prev
            m[k + 1 :, k] = 0
        prev = pk
    det = m[size - 1, size - 1]
    # Cramer: det * x is integral, so every division below is exact.
    y = np.zeros(size, dtype=object)
    for i in range(size - 1, -1, -1):
        acc = det * m[i, size]
        if i + 1 < size:
            acc -= np.dot(m[i, i + 1 : size], y[i + 1 :])
        quotient, remainder = divmod(acc, m[i, i])
        assert remainder == 0
        y[i] = quotient
    return y, det


@dataclass(frozen=True)
class InverseData:
    """Inverse of t as an integer vector over a common denominator.

    ``t`` itself equals ``numerators / denominator`` and ``t^{-1}`` equals
    ``inverse_scaled / inverse_scale``.
    """

    numerators: np.ndarray
    denominator: int
    inverse_scaled: np.ndarray
    inverse_scale: int


def _inverse_integer(p: int, q: int, r: int, num: np.ndarray) -> tuple[np.ndarray, int] | None:
    """Integer vector x and scale d with (num) x = d e, or None when num is singular.

    With e_n degenerate, (a + b e_n)(c + d e_n) = ac + (ad + b c^) e_n, so the
    inverse is a^{-1} - a^{-1} b (a^{-1})^ e_n and only ``a`` needs inverting.
    """
    n = p + q + r
    if n == 0:
        value = int(num[0])
        return (np.array([1], dtype=object), value) if value else None
    if r == 0:
        sig = Signature(p, q, 0)
        rhs = np.zeros(sig.dim, dtype=object)
        rhs[0] = 1
        return bareiss_solve(left_operator(sig, num), rhs)
    half = num.shape[0] // 2
    inner = _inverse_integer(p, q, r - 1, num[:half])
    if inner is None:
        return None
    c, scale = inner
    if n == 1:
        d = -num[1] * c * c
    else:
        sub = Signature(p, q, r - 1)
        d = -dense_product(sub, dense_product(sub, c, num[half:]), c * tables(sub).hat)
    out = np.empty(2 * half, dtype=object)
    out[:half] = c * scale
    out[half:] = d
    return out, scale * scale


@functools.lru_cache(maxsize=4096)
def inverse_data(t: Multivector) -> InverseData | None:
    sig = t.sig
    num, den = t.to_dense()
    solved = _inverse_integer(sig.p, sig.q, sig.r, num)
    if solved is None:
        return None
    scaled, det = solved
    # t^{-1} = den * (scaled / det); keep numerators integral
    g = math.gcd(det, *[int(v) for v in scaled if v])
    scaled = scaled // g
    scale = det // g
    if scale < 0:
        scaled, scale = -scaled, -scale
    scaled = scaled * den
    g = math.gcd(scale, *[int(v) for v in scaled if v])
    return InverseData(num, den, scaled // g, scale // g)


def inverse(t: Multivector) -> Multivector | NotInvertible:
    """Two-sided inverse, or ``NOT_INVERTIBLE`` when t is a zero divisor."""
    data = inverse_data(t)
    if data is None:
        return NOT_INVERTIBLE
    inv = Multivector.from_dense(t.sig, data.inverse_scaled, data.inverse_scale)
    one = Multivector.scalar(t.sig)
    assert t * inv == one and inv * t == one, "inverse failed the two-sided check"
    return inv


def is_invertible(t: Multivector) -> bool:
    return inverse_data(t) is not None
