"""Seeded stochastic quadrature over half spaces, balls and spheres in R^m.

Half-space integrals are importance sampled with a product proposal:
x0 from a half Student-t with ``tail_exponent`` degrees of freedom
(half-Cauchy by default), each remaining coordinate from the symmetric
Student-t of the same family, truncated to |x| <= truncation_radius.
The proposal tails are heavier than every catalog integrand, which keeps
the weights bounded; mass outside the truncation radius is bounded
analytically from the integrand's decay envelope and folded into the
reported standard error.

Sample generation is partitioned into fixed-size blocks with per-block
deterministic sub-seeds and the partial sums are combined by a
pairwise-tree reduction in index order, so results are bitwise
reproducible for a given (spec, integrand) no matter how the blocks are
scheduled.  Low-discrepancy mode uses seeded scrambled Sobol points in
16 independently randomized replicates; the spread of the replicate
means supplies the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import gamma as _gamma_fn, gammaincc, ndtri
from scipy.stats import qmc

from .algebra import Element, conj_batch, mul_batch, norm2_batch
from .analysis import Decay, FieldFunction
from .kernels import DimensionMismatchError, cauchy_E_batch, sphere_area


class QuadratureSpecError(ValueError):
    """Quadrature spec violates an invariant."""


class NonFiniteSampleError(RuntimeError):
    """An integrand produced a non-finite value; carries the offending point."""

    def __init__(self, message: str, point: Element):
        super().__init__(message)
        self.point = point


class BoundaryPointError(ValueError):
    """Cauchy integral evaluation point lies on the integration sphere."""


_METHODS = ("monte_carlo", "low_discrepancy")
_BLOCK = 1 << 19
_REPLICATES = 16
_UMIN = 1e-16
_UMAX = float(np.nextafter(1.0, 0.0))

# spawn-key stream tags, so the half-space / sphere / ball samplers and the
# two methods never share random streams for one seed
_MC_HALF, _LD_HALF, _MC_SPHERE, _LD_SPHERE, _MC_BALL, _LD_BALL = range(6)


@dataclass(frozen=True)
class QuadratureSpec:
    """Sampling method, budget, seed and half-space proposal parameters."""

    method: str = "monte_carlo"
    samples: int = 1_000_000
    seed: int = 42
    truncation_radius: float = 50.0
    tail_exponent: float = 1.0

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise QuadratureSpecError(f"method must be one of {_METHODS}")
        if self.samples < 1000:
            raise QuadratureSpecError("need at least 10^3 samples")
        if not self.truncation_radius > 0:
            raise QuadratureSpecError("truncation radius must be positive")
        if not self.tail_exponent > 0:
            raise QuadratureSpecError("tail exponent must be positive")
        if not 0 <= self.seed < 2**64:
            raise QuadratureSpecError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class Estimate:
    """Quadrature result: value, componentwise-max standard error, budget."""

    value: Element
    std_error: float
    samples_used: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.std_error) or self.std_error < 0:
            raise ValueError("standard error must be finite and nonnegative")

    def scaled(self, c: float) -> "Estimate":
        return Estimate(self.value * c, self.std_error * abs(c), self.samples_used)


def _rng(seed: int, stream: int, index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, index))
    return np.random.default_rng(ss)


def _blocks(total: int):
    start = 0
    index = 0
    while start < total:
        yield index, min(_BLOCK, total - start)
        start += _BLOCK
        index += 1


def _tree_sum(parts: list[np.ndarray]) -> np.ndarray:
    """Fixed pairwise-tree reduction (order independent of scheduling)."""
    if not parts:
        raise ValueError("nothing to reduce")
    items = list(parts)
    while len(items) > 1:
        items = [
            items[i] + items[i + 1] if i + 1 < len(items) else items[i]
            for i in range(0, len(items), 2)
        ]
    return items[0]


def _check_finite(values: np.ndarray, points: np.ndarray) -> None:
    bad = ~np.all(np.isfinite(values), axis=1)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NonFiniteSampleError(
            f"integrand returned a non-finite value at {points[i].tolist()}",
            point=Element(points[i]),
        )


# -- half-space proposal ----------------------------------------------------


def _t_pdf(x: np.ndarray, kappa: float) -> np.ndarray:
    if kappa == 1.0:
        return 1.0 / (math.pi * (1.0 + x * x))
    c = math.exp(math.lgamma((kappa + 1.0) / 2.0) - math.lgamma(kappa / 2.0))
    c /= math.sqrt(kappa * math.pi)
    return c * (1.0 + x * x / kappa) ** (-(kappa + 1.0) / 2.0)


def _halfspace_points(U: np.ndarray, kappa: float) -> np.ndarray:
    U = np.clip(U, _UMIN, _UMAX)
    if kappa == 1.0:
        x0 = np.tan(0.5 * np.pi * U[:, 0])
        rest = np.tan(np.pi * (U[:, 1:] - 0.5))
    else:
        from scipy.stats import t as _t

        x0 = _t.ppf(0.5 + 0.5 * U[:, 0], df=kappa)
        rest = _t.ppf(U[:, 1:], df=kappa)
    return np.column_stack([x0, rest])


def _halfspace_density(X: np.ndarray, kappa: float) -> np.ndarray:
    d = 2.0 * _t_pdf(X[:, 0], kappa)
    for j in range(1, X.shape[1]):
        d *= _t_pdf(X[:, j], kappa)
    return d


def _tail_bound(g: FieldFunction, R: float, m: int) -> float:
    """Analytic bound on the integral of |g| over the truncated tail."""
    if g.tail_bound is not None:
        return max(0.0, float(g.tail_bound(R)))
    d = g.decay
    if d is None:
        return 0.0
    if d.power <= m:
        raise ValueError(
            f"decay envelope of {g.name!r} (power {d.power}) does not certify "
            f"an integrable tail in dimension {m}"
        )
    if R < d.min_radius:
        raise ValueError(
            f"truncation radius {R} is below the envelope's valid radius "
            f"{d.min_radius} for {g.name!r}"
        )
    return sphere_area(m) / 2.0 * d.coeff * R ** (m - d.power) / (d.power - m)


def _halfspace_block_sums(
    g: FieldFunction, spec: QuadratureSpec, U: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    m = g.dim
    X = _halfspace_points(U, spec.tail_exponent)
    keep = norm2_batch(X) <= spec.truncation_radius**2
    Xk = X[keep]
    if Xk.shape[0] == 0:
        return np.zeros(m), np.zeros(m)
    w = 1.0 / _halfspace_density(Xk, spec.tail_exponent)
    V = g.eval_batch(Xk) * w[:, None]
    _check_finite(V, Xk)
    return V.sum(axis=0), (V * V).sum(axis=0)


def integrate_halfspace(g: FieldFunction, spec: QuadratureSpec) -> Estimate:
    """Importance-sampled estimate of the integral of g over Re x > 0."""
    m = g.dim
    tail = _tail_bound(g, spec.truncation_radius, m)

    if spec.method == "monte_carlo":
        parts = []
        for bi, count in _blocks(spec.samples):
            U = _rng(spec.seed, _MC_HALF, bi).random((count, m))
            parts.append(np.stack(_halfspace_block_sums(g, spec, U)))
        sums = _tree_sum(parts)
        n = spec.samples
        mean = sums[0] / n
        var = np.maximum((sums[1] - sums[0] ** 2 / n) / (n - 1), 0.0)
        se = float(np.max(np.sqrt(var / n)))
        return Estimate(Element(mean), se + tail, n)

    n_rep = max(256, 1 << math.ceil(math.log2(max(1, spec.samples // _REPLICATES))))
    means = []
    for rep in range(_REPLICATES):
        engine = qmc.Sobol(d=m, scramble=True, seed=_rng(spec.seed, _LD_HALF, rep))
        U = engine.random(n_rep)
        s1, _ = _halfspace_block_sums(g, spec, U)
        means.append(s1 / n_rep)
    value = _tree_sum(means) / _REPLICATES
    spread = np.std(np.stack(means), axis=0, ddof=1) / math.sqrt(_REPLICATES)
    return Estimate(Element(value), float(np.max(spread)) + tail, n_rep * _REPLICATES)


# -- sphere and ball --------------------------------------------------------


def _directions(Z: np.ndarray) -> np.ndarray:
    n = np.sqrt(np.einsum("ni,ni->n", Z, Z))
    n = np.where(n == 0.0, 1.0, n)
    return Z / n[:, None]


def _surface_mean(
    F: Callable[[np.ndarray], np.ndarray],
    points_of: Callable[[np.ndarray], np.ndarray],
    gauss_dims: int,
    extra_uniform: bool,
    spec: QuadratureSpec,
    streams: tuple[int, int],
    m: int,
) -> tuple[np.ndarray, float, int]:
    """Mean (and componentwise-max se of the mean) of F over sampled points.

    ``points_of`` receives a (n, gauss_dims [+1]) array: standard normals
    for the direction, plus one trailing uniform column when
    ``extra_uniform`` is set (used for the radial coordinate on balls).
    """
    mc_stream, ld_stream = streams

    if spec.method == "monte_carlo":
        parts = []
        for bi, count in _blocks(spec.samples):
            rng = _rng(spec.seed, mc_stream, bi)
            Z = rng.standard_normal((count, gauss_dims))
            if extra_uniform:
                Z = np.column_stack([Z, np.clip(rng.random(count), _UMIN, _UMAX)])
            P = points_of(Z)
            V = F(P)
            _check_finite(V, P)
            parts.append(np.stack([V.sum(axis=0), (V * V).sum(axis=0)]))
        sums = _tree_sum(parts)
        n = spec.samples
        mean = sums[0] / n
        var = np.maximum((sums[1] - sums[0] ** 2 / n) / (n - 1), 0.0)
        return mean, float(np.max(np.sqrt(var / n))), n

    d = gauss_dims + (1 if extra_uniform else 0)
    n_rep = max(256, 1 << math.ceil(math.log2(max(1, spec.samples // _REPLICATES))))
    means = []
    for rep in range(_REPLICATES):
        engine = qmc.Sobol(d=d, scramble=True, seed=_rng(spec.seed, ld_stream, rep))
        U = np.clip(engine.random(n_rep), _UMIN, _UMAX)
        Z = ndtri(U[:, :gauss_dims])
        if extra_uniform:
            Z = np.column_stack([Z, U[:, gauss_dims]])
        P = points_of(Z)
        V = F(P)
        _check_finite(V, P)
        means.append(V.mean(axis=0))
    value = _tree_sum(means) / _REPLICATES
    spread = np.std(np.stack(means), axis=0, ddof=1) / math.sqrt(_REPLICATES)
    return value, float(np.max(spread)), n_rep * _REPLICATES


def integrate_sphere(
    F: Callable[[np.ndarray], np.ndarray],
    center: Element,
    radius: float,
    spec: QuadratureSpec,
) -> Estimate:
    """Integral of F over the sphere |y - center| = radius (surface measure)."""
    if not radius > 0:
        raise ValueError("sphere radius must be positive")
    m = center.dim
    c = center.coeffs

    def points_of(Z: np.ndarray) -> np.ndarray:
        return c + radius * _directions(Z)

    mean, se, n = _surface_mean(
        F, points_of, m, False, spec, (_MC_SPHERE, _LD_SPHERE), m
    )
    area = sphere_area(m) * radius ** (m - 1)
    return Estimate(Element(mean * area), se * area, n)


def integrate_ball(
    F: Callable[[np.ndarray], np.ndarray],
    p: Element,
    r: float,
    spec: QuadratureSpec,
) -> Estimate:
    """Integral of F over the solid ball |y - p| < r (volume measure)."""
    if not r > 0:
        raise ValueError("ball radius must be positive")
    m = p.dim
    c = p.coeffs

    def points_of(Z: np.ndarray) -> np.ndarray:
        radii = r * Z[:, m] ** (1.0 / m)
        return c + _directions(Z[:, :m]) * radii[:, None]

    mean, se, n = _surface_mean(F, points_of, m, True, spec, (_MC_BALL, _LD_BALL), m)
    volume = sphere_area(m) * r**m / m
    return Estimate(Element(mean * volume), se * volume, n)


# -- the inner products and integral formulas --------------------------------


def inner_product_halfspace(
    f: FieldFunction, g: FieldFunction, spec: QuadratureSpec
) -> Estimate:
    """(f, g) = (1/omega_m) * integral of conj(g(x)) f(x) over Re x > 0."""
    if f.dim != g.dim:
        raise DimensionMismatchError(f"dimensions differ: {f.dim} vs {g.dim}")
    m = f.dim

    integrand = FieldFunction(
        dim=m,
        name=f"pairing[{g.name} | {f.name}]",
        batch=lambda X: mul_batch(conj_batch(g.eval_batch(X)), f.eval_batch(X)),
        decay=Decay.product(f.decay, g.decay),
    )
    return integrate_halfspace(integrand, spec).scaled(1.0 / sphere_area(m))


def inner_product_ball(
    f: FieldFunction,
    g: FieldFunction,
    p: Element,
    r: float,
    spec: QuadratureSpec,
) -> Estimate:
    """Weighted ball pairing (1/omega_8) int (gbar u_conj)(u f) dV.

    u is the unit radial direction (x - p)/|x - p|; the two inner products
    are formed first and multiplied last, exactly in that grouping.  The
    measure-zero center point contributes zero if sampled.
    """
    if f.dim != 8 or g.dim != 8 or p.dim != 8:
        raise DimensionMismatchError("the ball inner product is defined for m = 8")

    pc = p.coeffs

    def F(X: np.ndarray) -> np.ndarray:
        D = X - pc
        dn2 = norm2_batch(D)
        safe = dn2 > 0.0
        U = np.zeros_like(X)
        U[safe] = D[safe] / np.sqrt(dn2[safe])[:, None]
        A = mul_batch(conj_batch(g.eval_batch(X)), conj_batch(U))
        Bv = mul_batch(U, f.eval_batch(X))
        G = mul_batch(A, Bv)
        G[~safe] = 0.0
        return G

    return integrate_ball(F, p, r, spec).scaled(1.0 / sphere_area(8))


def cauchy_integral(
    f: FieldFunction,
    center: Element,
    radius: float,
    x: Element,
    spec: QuadratureSpec,
) -> Estimate:
    """(1/omega_m) int_{|y-c|=r} E(y - x) (n(y) f(y)) dS.

    Reproduces f(x) for x inside the sphere when f is left analytic on a
    neighborhood of the closed ball, and vanishes for x outside.
    """
    if f.dim != center.dim or f.dim != x.dim:
        raise DimensionMismatchError("dimension mismatch in Cauchy integral")
    dist = float(np.sqrt(np.sum((x.coeffs - center.coeffs) ** 2)))
    if abs(dist - radius) <= 1e-9 * max(1.0, radius):
        raise BoundaryPointError("evaluation point lies on the integration sphere")

    xc = x.coeffs
    cc = center.coeffs

    def F(Y: np.ndarray) -> np.ndarray:
        inner = mul_batch((Y - cc) / radius, f.eval_batch(Y))
        return mul_batch(cauchy_E_batch(Y - xc), inner)

    return integrate_sphere(F, center, radius, spec).scaled(1.0 / sphere_area(f.dim))


def _difference_squared_field(f: FieldFunction, g: FieldFunction) -> FieldFunction:
    if f.dim != g.dim:
        raise DimensionMismatchError(f"dimensions differ: {f.dim} vs {g.dim}")

    def batch(X: np.ndarray) -> np.ndarray:
        D = f.eval_batch(X) - g.eval_batch(X)
        out = np.zeros_like(D)
        out[:, 0] = np.einsum("ni,ni->n", D, D)
        return out

    return FieldFunction(
        dim=f.dim,
        name=f"|{f.name} - {g.name}|^2",
        batch=batch,
        decay=Decay.difference_squared(f.decay, g.decay),
    )


def l2_distance_halfspace(
    f: FieldFunction, g: FieldFunction, spec: QuadratureSpec
) -> float:
    """L2(half-space) distance between f and g."""
    return l2_distance_halfspace_estimate(f, g, spec)[0]


def l2_distance_halfspace_estimate(
    f: FieldFunction, g: FieldFunction, spec: QuadratureSpec
) -> tuple[float, Estimate]:
    """L2 distance plus the underlying squared-norm estimate."""
    est = integrate_halfspace(_difference_squared_field(f, g), spec)
    d = math.sqrt(max(float(est.value.coeffs[0]), 0.0))
    return d, est


def zero_field(m: int) -> FieldFunction:
    return FieldFunction(dim=m, name="zero", batch=lambda X: np.zeros_like(X))


def gaussian_reference(m: int) -> tuple[FieldFunction, float]:
    """exp(-|x|^2) e0 and its exact half-space integral pi^(m/2) / 2."""

    def batch(X: np.ndarray) -> np.ndarray:
        out = np.zeros_like(X)
        out[:, 0] = np.exp(-norm2_batch(X))
        return out

    def tail(R: float) -> float:
        # (omega_m / 2) * int_R^inf exp(-r^2) r^(m-1) dr, via the upper
        # incomplete gamma function
        radial = 0.5 * _gamma_fn(m / 2.0) * gammaincc(m / 2.0, R * R)
        return sphere_area(m) / 2.0 * radial

    field = FieldFunction(
        dim=m, name=f"gaussian(m={m})", batch=batch, tail_bound=tail
    )
    return field, math.pi ** (m / 2.0) / 2.0
