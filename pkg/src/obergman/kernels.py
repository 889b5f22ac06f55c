"""Closed-form kernels: Cauchy kernel, half-space and ball Bergman kernels.

Conventions, for the dimension-m algebra (m in {2, 4, 8}):

    E(x)      = conj(x) / |x|^m                      (Cauchy kernel)
    B(x, a)   = -2 d/dx0 E(x + conj(a))              (half-space kernel)
              = ((2(m-2) Re v) e0 + 2 v) v / |v|^(m+2),  v = a + conj(x)

    B01(x, a) = ((6 (1 - |a|^2 |x|^2)) e0 + 2 w) w / |w|^10,  w = e0 - conj(x) a
                                                     (unit-ball kernel, m = 8)
    Bpr(x, a) = r^-8 B01((x - p)/r, (a - p)/r)       (ball of radius r at p)

The two half-space forms agree exactly because every element satisfies
its quadratic v^2 = 2 Re(v) v - |v|^2, so
2m Re(v) v - 2|v|^2 = 2(m-2) Re(v) v + 2 v^2.  For m = 2 the half-space
kernel reduces to 2/(z + conj(a))^2, i.e. 2 pi times the classical
Bergman kernel 1/(pi (z + conj(a))^2) of the right half plane, which
serves as an independent oracle.

Every multi-factor product below is evaluated with explicit pairwise
calls in the stated parenthesisation; non-associativity makes the order
part of the definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DimensionMismatchError,
    Element,
    _require_dim,
    conj_batch,
    mul_batch,
    norm,
    norm2_batch,
)
from .analysis import Decay, FieldFunction


class SingularPointError(ValueError):
    """Kernel evaluated at (numerically) a singular point."""


class OutOfHalfSpaceError(ValueError):
    """Half-space kernel argument with nonpositive real part."""


class OutOfBallError(ValueError):
    """Ball kernel argument outside the open ball."""


class InvalidParameterError(ValueError):
    """Catalog function parameter violates its precondition."""


#: Surface area of the unit sphere in R^m: 2 pi^(m/2) / Gamma(m/2).
SPHERE_AREA = {
    2: 2.0 * math.pi,
    4: 2.0 * math.pi**2,
    8: math.pi**4 / 3.0,
}


def sphere_area(m: int) -> float:
    _require_dim(m)
    return SPHERE_AREA[m]


@dataclass(frozen=True)
class KernelParams:
    """Algebra dimension and the matching unit-sphere area constant."""

    dim: int
    omega: float

    @classmethod
    def for_dim(cls, m: int) -> "KernelParams":
        return cls(dim=m, omega=sphere_area(m))


_NORM_FLOOR = 1e-300
_V_FLOOR2 = 1e-24  # squared |v| guard: |v| < 1e-12 means a caller bug


def _norm2_guarded(X: np.ndarray, what: str) -> np.ndarray:
    n2 = norm2_batch(X)
    if np.any(np.sqrt(n2) < _NORM_FLOOR):
        raise SingularPointError(f"{what} evaluated at a singular point")
    return n2


def cauchy_E_batch(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    m = X.shape[1]
    n2 = _norm2_guarded(X, "Cauchy kernel")
    return conj_batch(X) * (n2 ** (-m / 2.0))[:, None]


def dE_dx0_batch(X) -> np.ndarray:
    """Exact d/dx0 of the Cauchy kernel: e0/|x|^m - m x0 conj(x)/|x|^(m+2)."""
    X = np.asarray(X, dtype=np.float64)
    m = X.shape[1]
    n2 = _norm2_guarded(X, "Cauchy kernel derivative")
    out = conj_batch(X) * (-m * X[:, 0] * n2 ** (-(m + 2) / 2.0))[:, None]
    out[:, 0] += n2 ** (-m / 2.0)
    return out


def bergman_halfspace_batch(X, a) -> np.ndarray:
    """Half-space Bergman kernel rows B(x_i, a) (a may be (m,) or rowwise)."""
    X = np.asarray(X, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    m = X.shape[1]
    if a.shape[-1] != m:
        raise DimensionMismatchError(f"dimensions differ: {m} vs {a.shape[-1]}")
    if not (np.all(X[:, 0] > 0.0) and np.all(a[..., 0] > 0.0)):
        raise OutOfHalfSpaceError("half-space kernel needs Re x > 0 and Re a > 0")
    V = conj_batch(X) + a
    n2 = norm2_batch(V)
    if np.any(n2 < _V_FLOOR2):
        raise SingularPointError("half-space kernel: |a + conj(x)| below guard")
    U = 2.0 * V
    U[:, 0] += (2.0 * (m - 2)) * V[:, 0]
    return mul_batch(U, V) * (n2 ** (-(m + 2) / 2.0))[:, None]


def bergman_ball_unit_batch(X, a) -> np.ndarray:
    """Unit-ball Bergman kernel rows B01(x_i, a); octonions only."""
    X = np.asarray(X, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    if X.shape[1] != 8 or a.shape[-1] != 8:
        raise DimensionMismatchError("the ball kernel is defined for m = 8 only")
    nx2 = norm2_batch(X)
    na2 = np.einsum("...i,...i->...", a, a)
    if np.any(nx2 >= 1.0) or np.any(na2 >= 1.0):
        raise OutOfBallError("ball kernel needs |x| < 1 and |a| < 1")
    Wm = -mul_batch(conj_batch(X), a)
    Wm[:, 0] += 1.0
    w2 = norm2_batch(Wm)
    if np.any(w2 < _V_FLOOR2):
        raise SingularPointError("ball kernel: |1 - conj(x) a| below guard")
    U = 2.0 * Wm
    U[:, 0] += 6.0 * (1.0 - na2 * nx2)
    return mul_batch(U, Wm) * (w2**-5.0)[:, None]


def bergman_ball_batch(p, r: float, X, a) -> np.ndarray:
    """Kernel of the radius-r ball centered at p: r^-8 B01((x-p)/r, (a-p)/r)."""
    if not r > 0:
        raise ValueError("ball radius must be positive")
    p = np.asarray(p, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    Xs = (X - p) / r
    as_ = (a - p) / r
    return bergman_ball_unit_batch(Xs, as_) / r**8


def _scalar(fn, *arrays):
    rows = [np.asarray(c, dtype=np.float64)[None, :] for c in arrays]
    return Element(fn(*rows)[0])


def cauchy_E(x: Element) -> Element:
    """E(x) = conj(x) / |x|^m."""
    return _scalar(cauchy_E_batch, x.coeffs)


def dE_dx0(x: Element) -> Element:
    """Exact x0-derivative of E at x (no stencil)."""
    return _scalar(dE_dx0_batch, x.coeffs)


def bergman_halfspace(x: Element, a: Element) -> Element:
    """B(x, a) for the half space Re > 0; equals -2 dE_dx0(x + conj(a))."""
    if x.dim != a.dim:
        raise DimensionMismatchError(f"dimensions differ: {x.dim} vs {a.dim}")
    return _scalar(bergman_halfspace_batch, x.coeffs, a.coeffs)


def bergman_ball_unit(x: Element, a: Element) -> Element:
    """B01(x, a) on the open unit ball of the octonions."""
    return _scalar(bergman_ball_unit_batch, x.coeffs, a.coeffs)


def bergman_ball(p: Element, r: float, x: Element, a: Element) -> Element:
    """Bergman kernel of the ball |y - p| < r (octonions)."""
    if not r > 0:
        raise ValueError("ball radius must be positive")
    row = bergman_ball_batch(p.coeffs, float(r), x.coeffs[None, :], a.coeffs)
    return Element(row[0])


# ---------------------------------------------------------------------------
# Catalog of analytic test functions.  All members are left analytic and,
# except for constants, square integrable on the half space; the decay
# envelopes below use |x - q| >= (3/4)|x| for |x| >= 4(|q| + 1).
# ---------------------------------------------------------------------------


def cauchy_kernel_field(m: int) -> FieldFunction:
    """E itself as a field function (singular at the origin)."""
    _require_dim(m)
    return FieldFunction(
        dim=m,
        name=f"cauchy_kernel(m={m})",
        batch=cauchy_E_batch,
        domain=lambda X: norm2_batch(X) > 0.0,
        singular_distance=lambda X: np.sqrt(norm2_batch(X)),
        decay=Decay(coeff=1.0, power=m - 1, min_radius=1.0),
    )


def make_test_function(kind: str, param: Element) -> FieldFunction:
    """Catalog members: constant(c), shifted_cauchy(q), halfspace_kernel(b).

    shifted_cauchy requires Re q < 0 and evaluates x -> E(x - q);
    halfspace_kernel requires Re b > 0 and evaluates x -> B(x, b).
    """
    if not isinstance(param, Element):
        raise InvalidParameterError("catalog parameter must be an Element")
    m = param.dim

    if kind == "constant":
        c = param.coeffs

        return FieldFunction(
            dim=m,
            name=f"constant({np.array2string(c, separator=',')})",
            batch=lambda X: np.broadcast_to(c, X.shape).copy(),
        )

    if kind == "shifted_cauchy":
        if not param.re < 0:
            raise InvalidParameterError("shifted_cauchy needs Re q < 0")
        q = param.coeffs

        return FieldFunction(
            dim=m,
            name=f"shifted_cauchy(q={np.array2string(q, separator=',')})",
            batch=lambda X: cauchy_E_batch(X - q),
            domain=lambda X: norm2_batch(X - q) > 0.0,
            singular_distance=lambda X: np.sqrt(norm2_batch(X - q)),
            decay=Decay(
                coeff=(4.0 / 3.0) ** (m - 1),
                power=m - 1,
                min_radius=4.0 * (norm(param) + 1.0),
            ),
        )

    if kind == "halfspace_kernel":
        if not param.re > 0:
            raise InvalidParameterError("halfspace_kernel needs Re b > 0")
        b = param.coeffs
        minus_b_conj = -np.concatenate(([b[0]], -b[1:]))

        return FieldFunction(
            dim=m,
            name=f"halfspace_kernel(b={np.array2string(b, separator=',')})",
            batch=lambda X: bergman_halfspace_batch(X, b),
            domain=lambda X: X[:, 0] > 0.0,
            singular_distance=lambda X: np.sqrt(norm2_batch(X - minus_b_conj)),
            decay=Decay(
                coeff=2.0 * (m - 1) * (4.0 / 3.0) ** m,
                power=m,
                min_radius=4.0 * (norm(param) + 1.0),
            ),
        )

    raise InvalidParameterError(f"unknown catalog kind {kind!r}")
