"""Exact arithmetic in the normed division algebras of dimension 2, 4 and 8.

The octonion basis products are generated from the seven oriented triples

    W = {(1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5)}

with ``e_a e_b = e_c = -e_b e_a`` cyclically inside each triple, ``e_0``
acting as the two-sided identity and ``e_i^2 = -1`` for ``i >= 1``.  The
complex (m=2) and quaternion (m=4) tables are the restrictions of the
octonion table to basis indices {0, 1} and {0, 1, 2, 3}, so they are
literal subalgebras.

Multiplication is neither commutative nor associative for m=8; products
are evaluated exactly as parenthesised by the caller and nothing in this
module commutes or reassociates them.  Elements are immutable, every
function is pure, and the tables are built once and shared read-only.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Sequence

import numpy as np

SUPPORTED_DIMS = (2, 4, 8)

#: Oriented quaternionic triples generating the octonion product.
W = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


class UnsupportedDimensionError(ValueError):
    """Raised for algebra dimensions other than 2, 4 or 8."""


class DimensionMismatchError(ValueError):
    """Raised when operands live in algebras of different dimension."""


def _require_dim(m: int) -> None:
    if m not in SUPPORTED_DIMS:
        raise UnsupportedDimensionError(
            f"algebra dimension must be one of {SUPPORTED_DIMS}, got {m!r}"
        )


@dataclass(frozen=True)
class MultiplicationTable:
    """Structure constants e_i e_j = sign[i,j] * e_{index[i,j]}.

    ``tensor[i, j, k]`` holds the signed coefficient of ``e_k`` in
    ``e_i e_j`` (so each (i, j) slice has exactly one nonzero entry).
    """

    dim: int
    sign: np.ndarray
    index: np.ndarray
    tensor: np.ndarray


def _build_octonion_arrays() -> tuple[np.ndarray, np.ndarray]:
    sign = np.ones((8, 8), dtype=np.int8)
    index = np.zeros((8, 8), dtype=np.intp)
    assigned = np.zeros((8, 8), dtype=bool)

    for j in range(8):
        index[0, j] = j
        index[j, 0] = j
        assigned[0, j] = assigned[j, 0] = True
    for i in range(1, 8):
        sign[i, i] = -1
        index[i, i] = 0
        assigned[i, i] = True

    for a, b, c in W:
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            sign[p, q] = 1
            index[p, q] = r
            sign[q, p] = -1
            index[q, p] = r
            assigned[p, q] = assigned[q, p] = True

    if not assigned.all():
        raise AssertionError("triple set W does not cover the basis products")
    return sign, index


def _make_table(m: int) -> MultiplicationTable:
    sign8, index8 = _build_octonion_arrays()
    sign = sign8[:m, :m].copy()
    index = index8[:m, :m].copy()
    if index.max() >= m:
        raise AssertionError(f"basis indices {{0..{m - 1}}} are not closed under products")
    tensor = np.zeros((m, m, m))
    for i in range(m):
        for j in range(m):
            tensor[i, j, index[i, j]] = sign[i, j]
    for arr in (sign, index, tensor):
        arr.setflags(write=False)
    return MultiplicationTable(dim=m, sign=sign, index=index, tensor=tensor)


_TABLES: dict[int, MultiplicationTable] = {}


def build_table(m: int) -> MultiplicationTable:
    """Multiplication table for the dimension-m algebra (cached, read-only)."""
    _require_dim(m)
    table = _TABLES.get(m)
    if table is None:
        table = _make_table(m)
        _TABLES[m] = table
    return table


@dataclass(frozen=True, eq=False)
class Element:
    """A number in the dimension-m algebra, stored as m real coefficients.

    Index 0 is the real part; index i carries the coefficient of e_i.
    Coefficients must be finite.  Addition, subtraction and real scaling
    are available as operators; algebra products must go through
    :func:`mul` so the association order stays explicit.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=np.float64, copy=True)
        if arr.ndim != 1:
            raise ValueError("coefficients must be a flat sequence")
        _require_dim(arr.shape[0])
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def dim(self) -> int:
        return int(self.coeffs.shape[0])

    @property
    def re(self) -> float:
        return float(self.coeffs[0])

    @classmethod
    def zero(cls, m: int) -> "Element":
        _require_dim(m)
        return cls(np.zeros(m))

    @classmethod
    def basis(cls, m: int, i: int) -> "Element":
        _require_dim(m)
        if not 0 <= i < m:
            raise ValueError(f"basis index {i} out of range for dimension {m}")
        c = np.zeros(m)
        c[i] = 1.0
        return cls(c)

    @classmethod
    def scalar(cls, m: int, t: float) -> "Element":
        _require_dim(m)
        c = np.zeros(m)
        c[0] = t
        return cls(c)

    def _check_same(self, other: "Element") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element(self.coeffs + other.coeffs)

    def __sub__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element(self.coeffs - other.coeffs)

    def __neg__(self) -> "Element":
        return Element(-self.coeffs)

    def __mul__(self, t):
        if isinstance(t, Element):
            raise TypeError("use mul(x, y) for algebra products; '*' is scalar-only")
        if not isinstance(t, numbers.Real):
            return NotImplemented
        return Element(self.coeffs * float(t))

    __rmul__ = __mul__

    def __truediv__(self, t):
        if not isinstance(t, numbers.Real):
            return NotImplemented
        return Element(self.coeffs / float(t))

    def __repr__(self) -> str:
        body = np.array2string(self.coeffs, separator=", ", max_line_width=200)
        return f"Element({body})"


def _as_element_pair(x: Element, y: Element) -> int:
    if not isinstance(x, Element) or not isinstance(y, Element):
        raise TypeError("expected Element operands")
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dimensions differ: {x.dim} vs {y.dim}")
    return x.dim


def mul(x: Element, y: Element) -> Element:
    """Algebra product xy, expanded bilinearly through the basis table."""
    m = _as_element_pair(x, y)
    tensor = build_table(m).tensor
    return Element(np.einsum("i,j,ijk->k", x.coeffs, y.coeffs, tensor))


def conj(x: Element) -> Element:
    """Conjugate: real part kept, vector part negated."""
    c = x.coeffs.copy()
    c[1:] = -c[1:]
    return Element(c)


def norm(x: Element) -> float:
    """Euclidean length of the coefficient vector."""
    return float(np.sqrt(np.dot(x.coeffs, x.coeffs)))


def inverse(x: Element) -> Element:
    """Multiplicative inverse conj(x) / |x|^2; the zero element has none."""
    n2 = float(np.dot(x.coeffs, x.coeffs))
    if n2 == 0.0:
        raise ZeroDivisionError("the zero element has no inverse")
    return conj(x) / n2


def associator(x: Element, y: Element, z: Element) -> Element:
    """(xy)z - x(yz), with exactly that parenthesisation."""
    _as_element_pair(x, y)
    _as_element_pair(y, z)
    return mul(mul(x, y), z) - mul(x, mul(y, z))


# ---------------------------------------------------------------------------
# Vectorised operations on arrays of shape (n, m).  These power the
# quadrature engine and the bulk identity checks; they use the same
# tables and therefore the same sign conventions as the scalar API.
# ---------------------------------------------------------------------------


def _as_batch(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("batch operands must have shape (n, m)")
    _require_dim(X.shape[1])
    return X


def mul_batch(X, Y) -> np.ndarray:
    """Rowwise algebra products.  Y may be (n, m) or a single (m,) element."""
    X = _as_batch(X)
    m = X.shape[1]
    Y = np.asarray(Y, dtype=np.float64)
    tensor = build_table(m).tensor
    out = np.empty_like(X)
    if Y.ndim == 1:
        if Y.shape[0] != m:
            raise DimensionMismatchError(f"dimensions differ: {m} vs {Y.shape[0]}")
        for k in range(m):
            out[:, k] = (X @ tensor[:, :, k]) @ Y
    else:
        if Y.shape != X.shape:
            raise DimensionMismatchError(f"batch shapes differ: {X.shape} vs {Y.shape}")
        for k in range(m):
            out[:, k] = np.einsum("ni,ni->n", X @ tensor[:, :, k], Y)
    return out


def conj_batch(X) -> np.ndarray:
    X = _as_batch(X)
    out = X.copy()
    out[:, 1:] = -out[:, 1:]
    return out


def norm2_batch(X) -> np.ndarray:
    X = _as_batch(X)
    return np.einsum("ni,ni->n", X, X)


def norm_batch(X) -> np.ndarray:
    return np.sqrt(norm2_batch(X))


def elements_from_rows(rows: np.ndarray) -> list[Element]:
    """Convenience: wrap the rows of an (n, m) array as Elements."""
    return [Element(r) for r in np.asarray(rows, dtype=np.float64)]
