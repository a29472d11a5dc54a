"""Config-driven Monte Carlo experiments over the insertion machinery.

Each experiment fans its samples over a fixed schedule of 32 generator
streams; workers pull whole chunks and the merge happens in chunk order, so
the report payload is identical for any worker count.  Theorem-grade gates
(determinism, staircase CLT, Gaussian profile, moment oracle) drive the CLI
exit code; conjecture replications (Plancherel CLT, d_XY scaling) are
reported with loose bands but never gate.
"""

from __future__ import annotations

import dataclasses
import json
import multiprocessing
import time
from dataclasses import dataclass
from math import log10, sqrt
from typing import Callable

import numpy as np

from . import __version__
from .dcf import DcfGrid, TransitionFrame, _dcf_counts, gaussian_profile_target, transition_coords
from .diagrams import YoungDiagram, d_xy_to_curve, from_parts, staircase
from .limit_shapes import (
    arcsine,
    clt_variance_as,
    clt_variance_sc,
    normal_cdf,
    omega_star_parametrization,
    semicircle,
)
from .sampling import FixedShapeSampler, make_rng, plancherel_poissonized_array
from .stats import (
    empirical_cumulants,
    fit_power_law,
    ks_statistic,
    mean_std_error,
    variance_std_error,
)
from .transition import cumulative_K, interaction_energy, transition_measure

N_CHUNKS = 32
DEFAULT_SEED = 20250711

THEOREM = "theorem"
CONJECTURE = "conjecture replication"

EXPERIMENT_KINDS = (
    "determinism",
    "staircase-clt",
    "plancherel-clt",
    "dxy-scaling",
    "gaussian-profile",
    "moment-oracle",
    "dcf",
)


@dataclass
class ExperimentConfig:
    """Knob set shared by all experiments; each runner validates the fields it reads."""

    kind: str
    family: str = "staircase"
    sizes: tuple[int, ...] = ()
    z: float = 0.5
    samples: int = 1000
    seed: int = DEFAULT_SEED
    workers: int = 1
    out: str | None = None
    tolerance: float | None = None
    variance_band: float | None = None
    ks_limit: float = 0.05
    q_grid: tuple[float, ...] = (-1.0, 0.0, 1.0)
    xi_grid: tuple[float, ...] = (-1.0, 0.0, 1.0)
    shapes: tuple[tuple[int, ...], ...] = ((1,), (2, 1), (3, 1))
    u_values: tuple[float, ...] = (-1.0, 0.0, 1.0)
    u_grid: tuple[float, ...] = ()
    z_grid: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.family not in ("staircase", "plancherel"):
            raise ValueError(f"unknown shape family {self.family!r}")
        if any(s < 1 for s in self.sizes):
            raise ValueError("all sizes must be >= 1")
        if self.samples < 100:
            raise ValueError("samples must be >= 100")
        if not 0.0 < self.z < 1.0:
            raise ValueError("z must lie in (0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out.pop("out")
        return out

    @staticmethod
    def from_mapping(kind: str, mapping: dict) -> "ExperimentConfig":
        """Build a config from a key-value document; unknown keys are rejected."""
        allowed = {f.name for f in dataclasses.fields(ExperimentConfig)} - {"kind"}
        unknown = set(mapping) - allowed
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(mapping)
        for key in ("sizes", "q_grid", "xi_grid", "u_values", "u_grid", "z_grid"):
            if key in kwargs:
                value = kwargs[key]
                kwargs[key] = tuple(value) if isinstance(value, (list, tuple)) else (value,)
        if "shapes" in kwargs:
            value = kwargs["shapes"]
            if isinstance(value, (int, float)):
                value = [[value]]
            kwargs["shapes"] = tuple(
                tuple(int(p) for p in (s if isinstance(s, (list, tuple)) else [s])) for s in value
            )
        return ExperimentConfig(kind=kind, **kwargs)


@dataclass
class ExperimentReport:
    """Reproducible summary of one experiment run.

    Everything except ``wall_clock_s`` is a pure function of (config, seed),
    independent of the worker count; ``canonical_json`` drops the timing so
    reproducibility can be asserted bytewise.
    """

    experiment: str
    config: dict
    seed: int
    workers: int
    library_version: str
    results: list[dict]
    statistics: dict
    gates: list[dict]
    wall_clock_s: float

    def to_json_dict(self, include_timing: bool = True) -> dict:
        out = {
            "experiment": self.experiment,
            "config": self.config,
            "seed": self.seed,
            "library_version": self.library_version,
            "results": self.results,
            "statistics": self.statistics,
            "pass": self.gates,
        }
        if include_timing:
            out["workers"] = self.workers
            out["wall_clock_s"] = self.wall_clock_s
        return out

    def canonical_json(self) -> str:
        return json.dumps(_plain(self.to_json_dict(include_timing=False)), sort_keys=True)

    def to_json(self) -> str:
        return json.dumps(_plain(self.to_json_dict()), sort_keys=True, indent=2)

    @property
    def theorem_gates_pass(self) -> bool:
        return all(g["passed"] for g in self.gates if g["grade"] == THEOREM)

    def exit_code(self) -> int:
        return 0 if self.theorem_gates_pass else 2


def _plain(obj):
    # JSON-encodable copy: numpy scalars/arrays down to Python numbers/lists
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    return obj


# ---------------------------------------------------------------------------
# chunked sampling engine


def _chunk_counts(total: int) -> list[int]:
    base, extra = divmod(total, N_CHUNKS)
    return [base + (1 if i < extra else 0) for i in range(N_CHUNKS)]


def _run_chunks(fn: Callable, tasks: list[tuple], workers: int) -> list:
    """Run chunk tasks with a fixed task order; the caller merges in that order."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with multiprocessing.get_context("fork").Pool(processes=workers) as pool:
        return pool.map(fn, tasks)


def _u_ins_chunk(task) -> np.ndarray:
    family, size, z, seed, stream, count = task
    rng = make_rng(seed, stream)
    out = np.empty(count, dtype=np.int64)
    if family == "staircase":
        sampler = FixedShapeSampler(staircase(size))
        for i in range(count):
            out[i] = sampler.poissonized_array(rng).u_ins(z)
    else:
        for i in range(count):
            out[i] = plancherel_poissonized_array(size, rng).u_ins(z)
    return out


def _collect_u_ins(family: str, size: int, z: float, samples: int, seed: int, workers: int,
                   phase: int) -> np.ndarray:
    tasks = [
        (family, size, z, seed, phase * N_CHUNKS + c, count)
        for c, count in enumerate(_chunk_counts(samples))
        if count > 0
    ]
    return np.concatenate(_run_chunks(_u_ins_chunk, tasks, workers))


def _dxy_chunk(task) -> np.ndarray:
    n, seed, stream, count = task
    rng = make_rng(seed, stream)
    curve = omega_star_parametrization()
    c = 1.0 / sqrt(n)
    out = np.empty(count)
    for i in range(count):
        shape = plancherel_poissonized_array(n, rng).shape()
        out[i] = d_xy_to_curve(shape, c, curve)
    return out


def _dcf_chunk(task) -> np.ndarray:
    parts, u_grid, z_grid, seed, stream, count = task
    rng = make_rng(seed, stream)
    return _dcf_counts(from_parts(parts), np.asarray(u_grid), np.asarray(z_grid), count, rng)


def _collect_dcf_counts(shape: YoungDiagram, u_grid, z_grid, samples: int, seed: int,
                        workers: int, phase: int) -> tuple[np.ndarray, list[int]]:
    tasks = []
    streams = []
    for c, count in enumerate(_chunk_counts(samples)):
        if count > 0:
            stream = phase * N_CHUNKS + c
            tasks.append((tuple(shape.parts), tuple(u_grid), tuple(z_grid), seed, stream, count))
            streams.append(stream)
    counts = _run_chunks(_dcf_chunk, tasks, workers)
    return sum(counts), streams


def _f_values_chunk(task) -> np.ndarray:
    parts, u_values, seed, stream, count = task
    rng = make_rng(seed, stream)
    sampler = FixedShapeSampler(from_parts(parts))
    out = np.empty((count, len(u_values)))
    for i in range(count):
        out[i] = sampler.poissonized_array(rng).f_values(np.asarray(u_values))
    return out


def _collect_f_values(shape: YoungDiagram, u_values, samples: int, seed: int, workers: int,
                      phase: int) -> np.ndarray:
    tasks = [
        (tuple(shape.parts), tuple(u_values), seed, phase * N_CHUNKS + c, count)
        for c, count in enumerate(_chunk_counts(samples))
        if count > 0
    ]
    return np.concatenate(_run_chunks(_f_values_chunk, tasks, workers))


# ---------------------------------------------------------------------------
# experiments


def _gate(name: str, value: float, passed: bool, grade: str, **extra) -> dict:
    return {"criterion": name, "value": value, "passed": bool(passed), "grade": grade, **extra}


def _report(cfg: ExperimentConfig, results, statistics, gates, t0: float) -> ExperimentReport:
    return ExperimentReport(
        experiment=cfg.kind,
        config=_plain(cfg.to_dict()),
        seed=cfg.seed,
        workers=cfg.workers,
        library_version=__version__,
        results=_plain(results),
        statistics=_plain(statistics),
        gates=_plain(gates),
        wall_clock_s=time.perf_counter() - t0,
    )


def _family_sizes(cfg: ExperimentConfig) -> list[tuple[int, int]]:
    # (schedule entry, box count): staircase schedules N, plancherel schedules n
    if cfg.family == "staircase":
        return [(N, N * (N + 1) // 2) for N in cfg.sizes]
    return [(n, n) for n in cfg.sizes]


def run_determinism(cfg: ExperimentConfig) -> ExperimentReport:
    """First-order check: the rescaled insertion coordinate approaches the limit quantile.

    For each scheduled size the error |mean of u_ins/sqrt(n) - quantile| must
    decrease along the schedule (within two pooled standard errors) and fall
    below the tolerance at the largest size.
    """
    t0 = time.perf_counter()
    if not cfg.sizes:
        raise ValueError("determinism needs a size schedule")
    quantile = (arcsine() if cfg.family == "staircase" else semicircle()).quantile(cfg.z)
    tol = 0.05 if cfg.tolerance is None else cfg.tolerance

    results = []
    for phase, (size, n) in enumerate(_family_sizes(cfg)):
        u = _collect_u_ins(cfg.family, size, cfg.z, cfg.samples, cfg.seed, cfg.workers, phase)
        x = u / sqrt(n)
        se = mean_std_error(x)
        results.append(
            {
                "size": size,
                "n": n,
                "samples": cfg.samples,
                "mean": float(x.mean()),
                "std": float(x.std(ddof=1)),
                "std_error": se,
                "quantile": quantile,
                "abs_error": abs(float(x.mean()) - quantile),
            }
        )

    errors = [r["abs_error"] for r in results]
    ses = [r["std_error"] for r in results]
    decreasing = all(
        errors[i + 1] <= errors[i] + 2.0 * sqrt(ses[i] ** 2 + ses[i + 1] ** 2)
        for i in range(len(errors) - 1)
    )
    gates = [
        _gate("abs_error_decreasing_within_2se", float(errors[-1] - errors[0]), decreasing, THEOREM),
        _gate("final_abs_error", errors[-1], errors[-1] < tol, THEOREM, tolerance=tol),
    ]
    stats = {"family": cfg.family, "z": cfg.z, "quantile": quantile, "errors": errors}
    return _report(cfg, results, stats, gates, t0)


def _clt_point(cfg: ExperimentConfig, family: str, size: int, n: int, u0: float,
               target_var: float, phase: int) -> dict:
    u = _collect_u_ins(family, size, cfg.z, cfg.samples, cfg.seed, cfg.workers, phase)
    x = n**0.25 * (u / sqrt(n) - u0)
    k = empirical_cumulants(x, 2)
    sigma = sqrt(target_var)
    return {
        "size": size,
        "n": n,
        "samples": cfg.samples,
        "mean": k[0],
        "mean_std_error": mean_std_error(x),
        "variance": k[1],
        "variance_std_error": variance_std_error(x),
        "target_variance": target_var,
        "ks_to_normal": ks_statistic(x, lambda t: normal_cdf(t / sigma)),
    }


def run_staircase_clt(cfg: ExperimentConfig) -> ExperimentReport:
    """Gaussian fluctuations of the insertion coordinate for staircase tableaux.

    Sizes schedule the staircase parameter N (box counts are triangular); at
    the largest N the empirical variance of n**(1/4)(u_ins/sqrt(n) - u0) must
    sit within the declared band of pi^2/(4 sqrt(2)) (2 - u0^2) and the KS
    distance to that Gaussian must stay below the limit.
    """
    t0 = time.perf_counter()
    if not cfg.sizes:
        raise ValueError("staircase-clt needs an N schedule")
    u0 = arcsine().quantile(cfg.z)
    target = clt_variance_as(u0)
    band = 0.15 if cfg.variance_band is None else cfg.variance_band

    results = [
        _clt_point(cfg, "staircase", N, N * (N + 1) // 2, u0, target, phase)
        for phase, N in enumerate(cfg.sizes)
    ]
    last = results[-1]
    mean_allow = 3.0 * last["mean_std_error"] + 0.15
    gates = [
        _gate("variance_within_band", last["variance"],
              abs(last["variance"] - target) <= band * target, THEOREM,
              target=target, band=band),
        _gate("ks_to_normal", last["ks_to_normal"], last["ks_to_normal"] < cfg.ks_limit,
              THEOREM, limit=cfg.ks_limit),
        _gate("mean_near_zero", last["mean"], abs(last["mean"]) <= mean_allow, THEOREM,
              allowance=mean_allow),
    ]
    stats = {"z": cfg.z, "u0": u0, "target_variance": target}
    return _report(cfg, results, stats, gates, t0)


def run_plancherel_clt(cfg: ExperimentConfig) -> ExperimentReport:
    """Conjecture replication: Gaussian insertion fluctuations for Plancherel tableaux.

    Same statistic as the staircase experiment with targets from the
    semicircle family; the variance band is informational and never gates.
    """
    t0 = time.perf_counter()
    if not cfg.sizes:
        raise ValueError("plancherel-clt needs an n schedule")
    sc = semicircle()
    u0 = sc.quantile(cfg.z)
    target = clt_variance_sc(u0)
    band = 0.25 if cfg.variance_band is None else cfg.variance_band

    results = [
        _clt_point(cfg, "plancherel", n, n, u0, target, phase)
        for phase, n in enumerate(cfg.sizes)
    ]
    last = results[-1]
    gates = [
        _gate("variance_within_band", last["variance"],
              abs(last["variance"] - target) <= band * target, CONJECTURE,
              target=target, band=band),
        _gate("mean_near_zero", last["mean"],
              abs(last["mean"]) <= 3.0 * last["mean_std_error"] + 0.15, CONJECTURE),
    ]
    stats = {"z": cfg.z, "u0": u0, "target_variance": target, "note": CONJECTURE}
    return _report(cfg, results, stats, gates, t0)


def run_dxy_scaling(cfg: ExperimentConfig) -> ExperimentReport:
    """Conjecture replication: power-law decay of E d_XY(rescaled Plancherel shape, limit curve).

    Fits log E d_XY against log n by least squares; the reported exponent and
    prefactor are compared against the loose bands (-0.37, -0.27) and (1, 4)
    without gating.
    """
    t0 = time.perf_counter()
    if len(cfg.sizes) < 3:
        raise ValueError("dxy-scaling needs at least 3 schedule points")
    span = log10(max(cfg.sizes)) - log10(min(cfg.sizes))
    if span < 2.5:
        raise ValueError(f"n schedule must span >= 2.5 decades, got {span:.2f}")

    results = []
    for phase, n in enumerate(cfg.sizes):
        tasks = [
            (n, cfg.seed, phase * N_CHUNKS + c, count)
            for c, count in enumerate(_chunk_counts(cfg.samples))
            if count > 0
        ]
        vals = np.concatenate(_run_chunks(_dxy_chunk, tasks, cfg.workers))
        results.append(
            {
                "n": n,
                "samples": cfg.samples,
                "mean_dxy": float(vals.mean()),
                "std_error": mean_std_error(vals),
            }
        )

    C, alpha, resid = fit_power_law([r["n"] for r in results], [r["mean_dxy"] for r in results])
    gates = [
        _gate("alpha_in_band", alpha, -0.37 < alpha < -0.27, CONJECTURE, band=[-0.37, -0.27]),
        _gate("prefactor_in_band", C, 1.0 < C < 4.0, CONJECTURE, band=[1.0, 4.0]),
    ]
    stats = {"C": C, "alpha": alpha, "fit_rms_residual": resid, "note": CONJECTURE}
    return _report(cfg, results, stats, gates, t0)


def staircase_frame(N: int, z0: float) -> TransitionFrame:
    """Transition frame for the staircase family from the arcsine closed forms."""
    asn = arcsine()
    u0 = asn.quantile(z0)
    return TransitionFrame(n=N * (N + 1) // 2, u0=u0, z0=z0, f0=asn.density(u0), E0=asn.energy(u0))


def run_gaussian_profile(cfg: ExperimentConfig) -> ExperimentReport:
    """Transition-zone profile: the double cumulative function against the Gaussian target.

    Estimates the double cumulative function of the staircase at the zone grid
    (q, xi) and gates on the sup-residual against Phi((xi - f0 q)/sqrt(E0)).
    """
    t0 = time.perf_counter()
    if cfg.family != "staircase":
        raise ValueError("gaussian-profile runs on the staircase family")
    if len(cfg.sizes) != 1:
        raise ValueError("gaussian-profile needs exactly one staircase size N")
    N = cfg.sizes[0]
    frame = staircase_frame(N, cfg.z)
    shape = staircase(N)
    tol = 0.08 if cfg.tolerance is None else cfg.tolerance

    coords = [[transition_coords(frame, q, xi) for xi in cfg.xi_grid] for q in cfg.q_grid]
    u_vals = np.array([row[0][0] for row in coords])
    z_vals = np.array([zz for _, zz in coords[0]])
    counts, streams = _collect_dcf_counts(shape, u_vals, z_vals, cfg.samples, cfg.seed,
                                          cfg.workers, phase=0)
    grid = DcfGrid(u_vals, z_vals, counts, cfg.samples, list(shape.parts),
                   {"seed": cfg.seed, "streams": streams})

    est = grid.estimates
    se = grid.std_errors
    results = []
    sup = 0.0
    for i, q in enumerate(cfg.q_grid):
        for j, xi in enumerate(cfg.xi_grid):
            target = gaussian_profile_target(frame, q, xi)
            resid = abs(float(est[i, j]) - target)
            sup = max(sup, resid)
            results.append(
                {
                    "q": q, "xi": xi,
                    "U": float(u_vals[i]), "Z": float(z_vals[j]),
                    "estimate": float(est[i, j]), "std_error": float(se[i, j]),
                    "target": target, "abs_residual": resid,
                }
            )
    gates = [_gate("sup_abs_residual", sup, sup < tol, THEOREM, tolerance=tol)]
    stats = {
        "N": N, "n": frame.n, "z0": cfg.z, "u0": frame.u0, "f0": frame.f0, "E0": frame.E0,
        "sup_abs_residual": sup,
    }
    return _report(cfg, results, stats, gates, t0)


def run_moment_oracle(cfg: ExperimentConfig) -> ExperimentReport:
    """Monte Carlo mean/variance of the tableau cumulative function against the exact formulas.

    The mean target is the transition-measure CDF and the variance target the
    eps = 1 regularized interaction energy; gates require |z-score| <= 4 for
    both, per shape and evaluation point.
    """
    t0 = time.perf_counter()
    z_limit = 4.0 if cfg.tolerance is None else cfg.tolerance

    results = []
    gates = []
    for phase, parts in enumerate(cfg.shapes):
        shape = from_parts(parts)
        m = transition_measure(shape)
        f_vals = _collect_f_values(shape, cfg.u_values, cfg.samples, cfg.seed, cfg.workers, phase)
        for col, u in enumerate(cfg.u_values):
            x = f_vals[:, col]
            exact_mean = cumulative_K(m, u)
            exact_var = interaction_energy(m, u, eps=1.0)
            mean, var = empirical_cumulants(x, 2)
            se_mean = mean_std_error(x)
            se_var = variance_std_error(x)
            z_mean = (mean - exact_mean) / se_mean if se_mean > 0 else 0.0
            z_var = (var - exact_var) / se_var if se_var > 0 else 0.0
            results.append(
                {
                    "shape": list(parts), "u": u, "samples": cfg.samples,
                    "mean": mean, "exact_mean": exact_mean, "mean_z_score": z_mean,
                    "variance": var, "exact_variance": exact_var, "variance_z_score": z_var,
                }
            )
            label = f"shape={list(parts)},u={u}"
            gates.append(_gate(f"mean_z[{label}]", z_mean, abs(z_mean) <= z_limit, THEOREM,
                               limit=z_limit))
            gates.append(_gate(f"variance_z[{label}]", z_var, abs(z_var) <= z_limit, THEOREM,
                               limit=z_limit))
    stats = {"u_values": list(cfg.u_values), "z_limit": z_limit}
    return _report(cfg, results, stats, gates, t0)


def run_dcf_grid(cfg: ExperimentConfig) -> tuple[ExperimentReport, DcfGrid]:
    """Estimate the double cumulative function of one shape on an explicit grid."""
    t0 = time.perf_counter()
    if len(cfg.shapes) != 1:
        raise ValueError("dcf needs exactly one shape")
    if not cfg.u_grid or not cfg.z_grid:
        raise ValueError("dcf needs non-empty u_grid and z_grid")
    shape = from_parts(cfg.shapes[0])
    counts, streams = _collect_dcf_counts(shape, cfg.u_grid, cfg.z_grid, cfg.samples,
                                          cfg.seed, cfg.workers, phase=0)
    grid = DcfGrid(np.asarray(cfg.u_grid, dtype=float), np.asarray(cfg.z_grid, dtype=float),
                   counts, cfg.samples, list(shape.parts), {"seed": cfg.seed, "streams": streams})
    results = [
        {"u": float(u), "z": float(z), "estimate": float(grid.estimates[i, j]),
         "std_error": float(grid.std_errors[i, j])}
        for i, u in enumerate(grid.u_grid)
        for j, z in enumerate(grid.z_grid)
    ]
    report = _report(cfg, results, {"shape": list(shape.parts)}, [], t0)
    return report, grid


RUNNERS: dict[str, Callable[[ExperimentConfig], ExperimentReport]] = {
    "determinism": run_determinism,
    "staircase-clt": run_staircase_clt,
    "plancherel-clt": run_plancherel_clt,
    "dxy-scaling": run_dxy_scaling,
    "gaussian-profile": run_gaussian_profile,
    "moment-oracle": run_moment_oracle,
}
