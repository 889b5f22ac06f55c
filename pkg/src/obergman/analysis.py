"""Numerical Cauchy-Riemann operators for algebra-valued field functions.

The generalized Cauchy-Riemann operator and its conjugate act on a
C^1 function f from R^m into the dimension-m algebra as

    D f  = sum_i e_i (df/dx_i)          (left action)
    f D  = sum_i (df/dx_i) e_i          (right action)
    Dbar f = df/dx_0 - sum_{i>=1} e_i (df/dx_i)

with f left analytic when Df = 0 and right analytic when fD = 0.  All
partial derivatives here are central finite differences of order 2 or 4;
nothing is differentiated symbolically.  Because left analytic functions
are harmonic, the componentwise Laplacian doubles as an independent
cross-check on the stencils.

Differentiation points must sit inside the function's domain with margin:
a point closer than 10 h to the function's singular set is rejected, since
the stencil would straddle the singularity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import Element, _require_dim, build_table


class PointOutsideDomainError(ValueError):
    """Raised when a stencil cannot be placed inside the function's domain."""


@dataclass(frozen=True)
class Decay:
    """Power-law envelope |f(x)| <= coeff * |x|^(-power) for |x| >= min_radius.

    Used by the quadrature layer to bound truncated tails analytically.
    """

    coeff: float
    power: float
    min_radius: float

    @staticmethod
    def product(a: Optional["Decay"], b: Optional["Decay"]) -> Optional["Decay"]:
        if a is None or b is None:
            return None
        return Decay(a.coeff * b.coeff, a.power + b.power, max(a.min_radius, b.min_radius))

    @staticmethod
    def difference_squared(a: Optional["Decay"], b: Optional["Decay"]) -> Optional["Decay"]:
        """Envelope for |f - g|^2 given envelopes for f and g."""
        if a is None or b is None:
            return None
        k = min(a.power, b.power)
        r0 = max(a.min_radius, b.min_radius, 1.0)
        return Decay((a.coeff + b.coeff) ** 2, 2 * k, r0)


@dataclass(frozen=True)
class FieldFunction:
    """An evaluatable map from points of R^m into the dimension-m algebra.

    ``batch`` maps an (n, m) array of points to an (n, m) array of values
    and must be deterministic and reentrant.  ``domain`` (optional) maps
    points to a boolean mask of admissibility; ``singular_distance``
    (optional) gives the rowwise distance to the singular set.  ``decay``
    or ``tail_bound`` let the quadrature layer bound truncated mass.
    """

    dim: int
    name: str
    batch: Callable[[np.ndarray], np.ndarray]
    domain: Optional[Callable[[np.ndarray], np.ndarray]] = None
    singular_distance: Optional[Callable[[np.ndarray], np.ndarray]] = None
    decay: Optional[Decay] = None
    tail_bound: Optional[Callable[[float], float]] = None

    def __post_init__(self) -> None:
        _require_dim(self.dim)

    def eval_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise ValueError(f"expected points of shape (n, {self.dim})")
        out = np.asarray(self.batch(X), dtype=np.float64)
        if out.shape != X.shape:
            raise ValueError(f"field function {self.name!r} returned shape {out.shape}")
        return out

    def eval(self, x: Element) -> Element:
        return Element(self.eval_batch(x.coeffs[None, :])[0])

    def in_domain(self, x: Element) -> bool:
        if self.domain is None:
            return True
        return bool(np.asarray(self.domain(x.coeffs[None, :]))[0])

    def shifted(self, delta: float) -> "FieldFunction":
        """The translate x -> f(x + delta e_0)."""
        offset = np.zeros(self.dim)
        offset[0] = float(delta)
        base = self
        return FieldFunction(
            dim=self.dim,
            name=f"{self.name} shifted by {delta}e0",
            batch=lambda X: base.batch(X + offset),
            domain=None if base.domain is None else (lambda X: base.domain(X + offset)),
            singular_distance=None
            if base.singular_distance is None
            else (lambda X: base.singular_distance(X + offset)),
            # shifting toward positive x0 can only increase |x| on the half
            # space, so the envelope stays valid
            decay=base.decay,
            tail_bound=base.tail_bound,
        )


@dataclass(frozen=True)
class StencilSpec:
    """Central-difference step size and accuracy order."""

    h: float = 1e-3
    order: int = 4

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ValueError("stencil step h must be positive")
        if self.order not in (2, 4):
            raise ValueError("stencil order must be 2 or 4")


# offset multiples of h and weights; first-derivative weights carry a 1/h,
# second-derivative weights a 1/h^2
_D1 = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1.0 / 12.0), (-1, -2.0 / 3.0), (1, 2.0 / 3.0), (2, -1.0 / 12.0)),
}
_D2 = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: (
        (-2, -1.0 / 12.0),
        (-1, 4.0 / 3.0),
        (0, -5.0 / 2.0),
        (1, 4.0 / 3.0),
        (2, -1.0 / 12.0),
    ),
}

SINGULAR_MARGIN_STEPS = 10.0


def _admit(f: FieldFunction, x: Element, s: StencilSpec, pts: np.ndarray) -> None:
    if f.singular_distance is not None:
        d = float(np.asarray(f.singular_distance(x.coeffs[None, :]))[0])
        if d < SINGULAR_MARGIN_STEPS * s.h:
            raise PointOutsideDomainError(
                f"point at distance {d:.3g} from the singular set of {f.name!r}; "
                f"need at least {SINGULAR_MARGIN_STEPS * s.h:.3g}"
            )
    if f.domain is not None:
        ok = np.asarray(f.domain(pts), dtype=bool)
        if not ok.all():
            raise PointOutsideDomainError(
                f"stencil around {x!r} leaves the domain of {f.name!r}"
            )


def _stencil_values(
    f: FieldFunction, x: Element, s: StencilSpec, scheme
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate f on the full cross stencil; returns (values, weights).

    values has shape (m * k, m) where k = len(scheme), grouped by
    coordinate; weights has shape (k,).
    """
    if x.dim != f.dim:
        raise PointOutsideDomainError(
            f"point of dimension {x.dim} for a field of dimension {f.dim}"
        )
    m = f.dim
    offsets = np.array([o for o, _ in scheme], dtype=np.float64)
    weights = np.array([w for _, w in scheme], dtype=np.float64)
    k = offsets.shape[0]
    pts = np.repeat(x.coeffs[None, :], m * k, axis=0)
    for i in range(m):
        pts[i * k : (i + 1) * k, i] += offsets * s.h
    _admit(f, x, s, pts)
    return f.eval_batch(pts), weights


def _partials(f: FieldFunction, x: Element, s: StencilSpec, second: bool) -> np.ndarray:
    scheme = (_D2 if second else _D1)[s.order]
    vals, weights = _stencil_values(f, x, s, scheme)
    m = f.dim
    k = weights.shape[0]
    scale = s.h * s.h if second else s.h
    return np.einsum("t,itc->ic", weights, vals.reshape(m, k, m)) / scale


def _basis_mul_left(i: int, u: np.ndarray, m: int) -> np.ndarray:
    """Coefficients of e_i * u."""
    table = build_table(m)
    out = np.zeros(m)
    np.add.at(out, table.index[i], table.sign[i] * u)
    return out


def _basis_mul_right(u: np.ndarray, i: int, m: int) -> np.ndarray:
    """Coefficients of u * e_i."""
    table = build_table(m)
    out = np.zeros(m)
    np.add.at(out, table.index[:, i], table.sign[:, i] * u)
    return out


def apply_left_D(f: FieldFunction, x: Element, s: StencilSpec = StencilSpec()) -> Element:
    """sum_i e_i (df/dx_i)(x) with stencil partials (left action)."""
    P = _partials(f, x, s, second=False)
    m = f.dim
    acc = np.zeros(m)
    for i in range(m):
        acc += _basis_mul_left(i, P[i], m)
    return Element(acc)


def apply_right_D(f: FieldFunction, x: Element, s: StencilSpec = StencilSpec()) -> Element:
    """sum_i (df/dx_i)(x) e_i (right action)."""
    P = _partials(f, x, s, second=False)
    m = f.dim
    acc = np.zeros(m)
    for i in range(m):
        acc += _basis_mul_right(P[i], i, m)
    return Element(acc)


def apply_left_Dbar(f: FieldFunction, x: Element, s: StencilSpec = StencilSpec()) -> Element:
    """Conjugated operator: df/dx_0 - sum_{i>=1} e_i (df/dx_i)."""
    P = _partials(f, x, s, second=False)
    m = f.dim
    acc = P[0].copy()
    for i in range(1, m):
        acc -= _basis_mul_left(i, P[i], m)
    return Element(acc)


def laplacian(f: FieldFunction, x: Element, s: StencilSpec = StencilSpec()) -> Element:
    """Componentwise sum of second central differences over all coordinates."""
    P2 = _partials(f, x, s, second=True)
    return Element(P2.sum(axis=0))


@dataclass(frozen=True)
class PointCheck:
    point: Element
    residual: Optional[float]
    analytic: Optional[bool]
    skipped: bool = False
    reason: Optional[str] = None


@dataclass(frozen=True)
class AnalyticityReport:
    tol: float
    records: list[PointCheck] = field(default_factory=list)

    @property
    def checked(self) -> list[PointCheck]:
        return [r for r in self.records if not r.skipped]

    @property
    def all_analytic(self) -> bool:
        cs = self.checked
        return bool(cs) and all(r.analytic for r in cs)

    @property
    def max_residual(self) -> float:
        cs = self.checked
        return max(r.residual for r in cs) if cs else float("nan")


def analyticity_report(
    f: FieldFunction,
    points: Sequence[Element],
    s: StencilSpec = StencilSpec(),
    tol: float = 1e-5,
) -> AnalyticityReport:
    """Left-D residuals (max-abs component) and verdicts at each point.

    Points where the stencil cannot be placed are flagged as skipped
    rather than raising.
    """
    records: list[PointCheck] = []
    for p in points:
        try:
            r = apply_left_D(f, p, s)
        except PointOutsideDomainError as exc:
            records.append(PointCheck(p, None, None, skipped=True, reason=str(exc)))
            continue
        resid = float(np.max(np.abs(r.coeffs)))
        records.append(PointCheck(p, resid, resid <= tol))
    return AnalyticityReport(tol=tol, records=records)
