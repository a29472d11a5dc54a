"""Closed-form limit objects: the Logan-Shepp-Vershik-Kerov curve, the
triangle diagram, and the semicircle / arcsine measures with their CDFs,
quantiles, interaction energies, and CLT variances."""

from __future__ import annotations

from dataclasses import dataclass
from math import asin, cos, erf, pi, sqrt
from typing import Callable

from .diagrams import CurveParametrization

SQRT2 = sqrt(2.0)

_BISECT_ITERS = 60  # halves a width-4 bracket below 1e-17
_CURVE_TOL = 1e-10


def omega_star(u: float) -> float:
    """The Plancherel limit curve: (2/pi)(u*arcsin(u/2) + sqrt(4-u^2)) on [-2,2], |u| outside."""
    if abs(u) >= 2.0:
        return abs(u)
    return (2.0 / pi) * (u * asin(0.5 * u) + sqrt(4.0 - u * u))


def triangle(u: float) -> float:
    """The staircase limit curve: sqrt(2) on [-sqrt(2), sqrt(2)], |u| outside."""
    return max(abs(u), SQRT2)


@dataclass(frozen=True)
class LimitMeasureSpec:
    """Density / CDF / quantile / interaction-energy bundle of a closed-form limit measure."""

    support: tuple[float, float]
    density: Callable[[float], float]
    cdf: Callable[[float], float]
    quantile: Callable[[float], float]
    energy: Callable[[float], float]


def _bisect_increasing(f: Callable[[float], float], target: float, lo: float, hi: float) -> float:
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _check_quantile_arg(z: float, support: tuple[float, float]) -> float | None:
    if z < 0.0 or z > 1.0:
        raise ValueError(f"quantile argument must lie in [0, 1], got {z}")
    if z == 0.0:
        return support[0]
    if z == 1.0:
        return support[1]
    return None


def semicircle() -> LimitMeasureSpec:
    """Semicircle measure on [-2, 2]: transition measure of the Plancherel limit shape."""
    support = (-2.0, 2.0)

    def density(u: float) -> float:
        if abs(u) >= 2.0:
            return 0.0
        return sqrt(4.0 - u * u) / (2.0 * pi)

    def cdf(u: float) -> float:
        if u <= -2.0:
            return 0.0
        if u >= 2.0:
            return 1.0
        return 0.5 + u * sqrt(4.0 - u * u) / (4.0 * pi) + asin(0.5 * u) / pi

    def quantile(z: float) -> float:
        endpoint = _check_quantile_arg(z, support)
        if endpoint is not None:
            return endpoint
        return _bisect_increasing(cdf, z, -2.0, 2.0)

    def energy(u: float) -> float:
        if abs(u) >= 2.0:
            return 0.0
        return (4.0 - u * u) ** 1.5 / (12.0 * pi)

    return LimitMeasureSpec(support, density, cdf, quantile, energy)


def arcsine() -> LimitMeasureSpec:
    """Arcsine measure on [-sqrt(2), sqrt(2)]: transition measure of the triangle diagram."""
    support = (-SQRT2, SQRT2)

    def density(u: float) -> float:
        if abs(u) >= SQRT2:
            return 0.0
        return 1.0 / (pi * sqrt(2.0 - u * u))

    def cdf(u: float) -> float:
        if u <= -SQRT2:
            return 0.0
        if u >= SQRT2:
            return 1.0
        return 0.5 + asin(u / SQRT2) / pi

    def quantile(z: float) -> float:
        endpoint = _check_quantile_arg(z, support)
        if endpoint is not None:
            return endpoint
        return -SQRT2 * cos(pi * z)

    def energy(u: float) -> float:
        if abs(u) >= SQRT2:
            return 0.0
        return 1.0 / (4.0 * SQRT2)

    return LimitMeasureSpec(support, density, cdf, quantile, energy)


_SC = semicircle()


def rsk_cos(z: float) -> float:
    """Semicircle quantile; the u-coordinate of the area-proportional point on the limit curve."""
    return _SC.quantile(z)


def rsk_sin(z: float) -> float:
    """Height of the limit curve over rsk_cos(z); endpoints map to (+-2, 2)."""
    return omega_star(rsk_cos(z))


def clt_variance_sc(u0: float) -> float:
    """Insertion-fluctuation variance (pi/3) sqrt(4 - u0^2) for the Plancherel family."""
    if abs(u0) > 2.0:
        raise ValueError("u0 must lie in [-2, 2]")
    return (pi / 3.0) * sqrt(4.0 - u0 * u0)


def clt_variance_as(u0: float) -> float:
    """Insertion-fluctuation variance pi^2/(4 sqrt(2)) * (2 - u0^2) for the staircase family."""
    if abs(u0) > SQRT2:
        raise ValueError("u0 must lie in [-sqrt(2), sqrt(2)]")
    return pi * pi / (4.0 * SQRT2) * (2.0 - u0 * u0)


def normal_cdf(x: float) -> float:
    """Standard normal CDF."""
    return 0.5 * (1.0 + erf(x / SQRT2))


def _half_profile_solver(curve: Callable[[float], float], span: float) -> Callable[[float], float]:
    # x_of_y for an even curve: find u in [-span, span] with (curve(u)-u)/2 = y
    # (strictly decreasing in u), then return (curve(u)+u)/2; 0 beyond the support.
    def x_of_y(y: float) -> float:
        if y < 0:
            raise ValueError("curve parametrization is defined for y >= 0")
        if y >= span:
            return 0.0
        lo, hi = -span, span
        while hi - lo > _CURVE_TOL:
            mid = 0.5 * (lo + hi)
            if (curve(mid) - mid) / 2.0 > y:
                lo = mid
            else:
                hi = mid
        u = 0.5 * (lo + hi)
        return max((curve(u) + u) / 2.0, 0.0)

    return x_of_y


def omega_star_parametrization() -> CurveParametrization:
    """French-coordinate parametrization of the Plancherel limit curve, with X(0) = 2.

    By the curve's symmetry the two maps coincide; each solves for the profile
    point by bisection to 1e-10.
    """
    solver = _half_profile_solver(omega_star, 2.0)
    return CurveParametrization(x_of_y=solver, y_of_x=solver)


def triangle_parametrization() -> CurveParametrization:
    """French-coordinate parametrization of the triangle diagram: the segment x + y = sqrt(2)."""

    def x_of_y(y: float) -> float:
        if y < 0:
            raise ValueError("curve parametrization is defined for y >= 0")
        return max(SQRT2 - y, 0.0)

    return CurveParametrization(x_of_y=x_of_y, y_of_x=x_of_y)
