"""Monte Carlo estimation of the double cumulative function and the
transition-zone machinery around it.

The double cumulative function of a shape is the probability that inserting z
into a uniform Poissonized tableau of that shape creates a box at u-coordinate
>= u, equivalently that the tableau's cumulative function at u is <= z.  One
sampled tableau serves every grid cell, which makes each row of estimates
exactly monotone in z and cuts the cost by the grid size.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from math import sqrt
from typing import Callable, Sequence

import numpy as np

from .diagrams import YoungDiagram
from .limit_shapes import normal_cdf
from .rsk import RealTableau, cumulative_F
from .sampling import FixedShapeSampler, poissonized_array
from .stats import binomial_std_error


@dataclass(frozen=True)
class TransitionFrame:
    """Center (u0, z0) with local slope f0 and energy E0 for the n-box transition zone.

    The zone coordinates are U = sqrt(n)*u0 + n**(1/4)*q and
    Z = z0 + xi/n**(1/4).
    """

    n: int
    u0: float
    z0: float
    f0: float
    E0: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 < self.z0 < 1.0:
            raise ValueError("z0 must lie in (0, 1)")
        if self.f0 <= 0 or self.E0 <= 0:
            raise ValueError("f0 and E0 must be positive")


def transition_coords(f: TransitionFrame, q: float, xi: float) -> tuple[float, float]:
    """Map zone coordinates (q, xi) to the raw point (U, Z); Z outside [0, 1] is a hard error."""
    root4 = f.n**0.25
    U = sqrt(f.n) * f.u0 + root4 * q
    Z = f.z0 + xi / root4
    if not 0.0 <= Z <= 1.0:
        raise ValueError(f"Z = {Z} falls outside [0, 1]; shrink xi")
    return U, Z


def x_stat(t: RealTableau, f: TransitionFrame, q: float) -> float:
    """Normalized insertion statistic n**(1/4)/sqrt(E0) * [F_T(U) - (z0 + f0*q/n**(1/4))]."""
    root4 = f.n**0.25
    U = sqrt(f.n) * f.u0 + root4 * q
    return root4 / sqrt(f.E0) * (cumulative_F(t, U) - (f.z0 + f.f0 * q / root4))


def chebyshev_bound(K: Callable[[float], float], u: float, u_prime: float, z: float) -> float:
    """Upper bound 1 / ((u - u') (K(u') - z)^2) on the double cumulative function at (u, z).

    Valid whenever u' < u and 0 <= z < K(u'); the value may exceed 1.
    """
    if u_prime >= u:
        raise ValueError("need u_prime < u")
    k = K(u_prime)
    if not 0.0 <= z < k:
        raise ValueError(f"need 0 <= z < K(u_prime) = {k}")
    return 1.0 / ((u - u_prime) * (k - z) ** 2)


@dataclass
class DcfGrid:
    """Estimates of the double cumulative function on a (u, z) grid.

    All cells of one grid share the same tableau samples, so estimates are
    exactly weakly increasing along z; counts are kept so grids from disjoint
    sample chunks merge exactly.
    """

    u_grid: np.ndarray
    z_grid: np.ndarray
    counts: np.ndarray
    samples: int
    shape_descriptor: list[int]
    seed_info: dict

    @property
    def estimates(self) -> np.ndarray:
        return self.counts / self.samples

    @property
    def std_errors(self) -> np.ndarray:
        est = self.estimates
        out = np.empty_like(est)
        for idx, p in np.ndenumerate(est):
            out[idx] = binomial_std_error(float(p), self.samples)
        return out

    @staticmethod
    def merge(grids: Sequence["DcfGrid"]) -> "DcfGrid":
        """Exact merge of grids over disjoint sample chunks (same grid, same shape)."""
        first = grids[0]
        for g in grids[1:]:
            if not (np.array_equal(g.u_grid, first.u_grid) and np.array_equal(g.z_grid, first.z_grid)):
                raise ValueError("cannot merge grids with different axes")
            if g.shape_descriptor != first.shape_descriptor:
                raise ValueError("cannot merge grids of different shapes")
        counts = sum(g.counts for g in grids)
        samples = sum(g.samples for g in grids)
        streams = sorted({s for g in grids for s in g.seed_info.get("streams", [])})
        seed_info = dict(first.seed_info, streams=streams)
        return DcfGrid(first.u_grid, first.z_grid, counts, samples, first.shape_descriptor, seed_info)

    def write_csv(self, path) -> None:
        """Row-major CSV with header u,z,estimate,std_error."""
        est = self.estimates
        se = self.std_errors
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["u", "z", "estimate", "std_error"])
            for i, u in enumerate(self.u_grid):
                for j, z in enumerate(self.z_grid):
                    wr.writerow([repr(float(u)), repr(float(z)), repr(float(est[i, j])), repr(float(se[i, j]))])

    def to_json_dict(self, wall_clock_s: float | None = None) -> dict:
        env = {
            "shape": self.shape_descriptor,
            "samples": self.samples,
            "seed_info": self.seed_info,
            "u_grid": [float(u) for u in self.u_grid],
            "z_grid": [float(z) for z in self.z_grid],
            "estimates": [[float(v) for v in row] for row in self.estimates],
            "std_errors": [[float(v) for v in row] for row in self.std_errors],
        }
        if wall_clock_s is not None:
            env["wall_clock_s"] = wall_clock_s
        return env


def _dcf_counts(
    shape: YoungDiagram,
    u_grid: np.ndarray,
    z_grid: np.ndarray,
    samples: int,
    rng: np.random.Generator,
) -> np.ndarray:
    sampler = FixedShapeSampler(shape)
    counts = np.zeros((len(u_grid), len(z_grid)), dtype=np.int64)
    for _ in range(samples):
        at = sampler.poissonized_array(rng)
        f_vals = at.f_values(u_grid)
        counts += f_vals[:, None] <= z_grid[None, :]
    return counts


def estimate_dcf(
    shape: YoungDiagram,
    u_grid: Sequence[float],
    z_grid: Sequence[float],
    samples: int,
    rng: np.random.Generator,
    seed_info: dict | None = None,
) -> DcfGrid:
    """Shared-sample Monte Carlo estimate of the double cumulative function on a grid.

    For each sampled tableau the cumulative function is evaluated once per u;
    cell (u, z) counts the event F_T(u) <= z.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    u = np.asarray(u_grid, dtype=float)
    z = np.asarray(z_grid, dtype=float)
    counts = _dcf_counts(shape, u, z, samples, rng)
    return DcfGrid(u, z, counts, samples, list(shape.parts), seed_info or {})


def gaussian_profile_target(f: TransitionFrame, q: float, xi: float) -> float:
    """Limit value Phi((xi - f0*q)/sqrt(E0)) of the double cumulative function in zone coordinates."""
    return normal_cdf((xi - f.f0 * q) / sqrt(f.E0))


def gaussian_profile_cells(
    shape: YoungDiagram,
    f: TransitionFrame,
    q_grid: Sequence[float],
    xi_grid: Sequence[float],
    samples: int,
    rng: np.random.Generator,
) -> tuple[DcfGrid, np.ndarray]:
    """Estimate the double cumulative function over the (q, xi) zone grid.

    Returns the estimate grid (axes are the raw U and Z values) together with
    the matrix of Gaussian targets.
    """
    if f.n != shape.n:
        raise ValueError(f"frame is for n = {f.n} but shape has {shape.n} boxes")
    coords = [[transition_coords(f, q, xi) for xi in xi_grid] for q in q_grid]
    u_vals = np.array([row[0][0] for row in coords])
    z_vals = np.array([c[1] for c in coords[0]])
    grid = estimate_dcf(shape, u_vals, z_vals, samples, rng)
    target = np.array([[gaussian_profile_target(f, q, xi) for xi in xi_grid] for q in q_grid])
    return grid, target


def gaussian_profile_residual(
    shape: YoungDiagram,
    f: TransitionFrame,
    q_grid: Sequence[float],
    xi_grid: Sequence[float],
    samples: int,
    rng: np.random.Generator,
) -> float:
    """Sup over the zone grid of |estimated double cumulative function - Gaussian target|."""
    grid, target = gaussian_profile_cells(shape, f, q_grid, xi_grid, samples, rng)
    return float(np.max(np.abs(grid.estimates - target)))


def x_stat_samples(
    shape: YoungDiagram,
    f: TransitionFrame,
    q: float,
    samples: int,
    rng: np.random.Generator,
    gaussian_q: bool = False,
) -> np.ndarray:
    """Samples of the normalized statistic at zone coordinate q.

    With ``gaussian_q`` the spatial coordinate is redrawn as q + standard
    normal noise per sample (exploratory mode; the deterministic grid is what
    the experiments gate on).
    """
    root4 = f.n**0.25
    scale = root4 / sqrt(f.E0)
    out = np.empty(samples)
    for s in range(samples):
        qq = q + rng.standard_normal() if gaussian_q else q
        at = poissonized_array(shape, rng)
        U = sqrt(f.n) * f.u0 + root4 * qq
        out[s] = scale * (at.cumulative_f(U) - (f.z0 + f.f0 * qq / root4))
    return out


def dcf_csv_and_envelope(grid: DcfGrid, csv_path, json_path=None, wall_clock_s: float | None = None) -> dict:
    """Write the CSV grid and return (optionally writing) the JSON envelope."""
    grid.write_csv(csv_path)
    env = grid.to_json_dict(wall_clock_s=wall_clock_s)
    if json_path is not None:
        with open(json_path, "w") as fh:
            json.dump(env, fh, sort_keys=True, indent=2)
    return env
