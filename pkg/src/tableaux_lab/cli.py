"""``tableaux-lab`` command line interface.

Inspection subcommands (transition, rsk, limits, dcf) print exact values or
CSV/JSON grids; experiment subcommands emit a JSON report and exit with 0 on
pass or informational runs, 2 when a theorem-grade gate fails, and 1 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .dcf import dcf_csv_and_envelope
from .diagrams import parse_parts
from .experiments import (
    RUNNERS,
    DEFAULT_SEED,
    ExperimentConfig,
    ExperimentReport,
    run_dcf_grid,
)
from .limit_shapes import arcsine, clt_variance_as, clt_variance_sc, semicircle
from .rsk import insert, jdt_lazy_path, p_tableau, q_tableau, responsibility_matrix, rsk_shape
from .transition import transition_weights_exact

USAGE_ERROR = 1
GATE_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _shapes(text: str) -> tuple[tuple[int, ...], ...]:
    # semicolon-separated comma lists: "1;2,1;3,1"
    return tuple(tuple(int(p) for p in block.split(",")) for block in text.split(";") if block.strip())


def _parse_config_value(raw: str):
    raw = raw.strip()
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        pass
    if ";" in raw:
        return [[int(p) for p in block.split(",")] for block in raw.split(";")]
    if "," in raw:
        toks = [t.strip() for t in raw.split(",") if t.strip()]
        try:
            return [int(t) for t in toks]
        except ValueError:
            return [float(t) for t in toks]
    return raw


def read_config_file(path: str) -> dict:
    """Parse a ``key = value`` experiment config document (one key per line, # comments)."""
    mapping = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, raw = line.partition("=")
            mapping[key.strip()] = _parse_config_value(raw)
    return mapping


def _experiment_parser(sub, name: str, help_text: str) -> argparse.ArgumentParser:
    p = sub.add_parser(name, help=help_text)
    p.add_argument("--seed", type=int, default=None, help="64-bit master seed")
    p.add_argument("--workers", type=int, default=None, help="worker process count")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--sizes", type=_ints, default=None,
                   help="comma list: staircase N or Plancherel n schedule")
    p.add_argument("--z", type=float, default=None, help="inserted value / center z0")
    p.add_argument("--samples", type=int, default=None, help="Monte Carlo samples per point")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tableaux-lab",
                     description="Schensted insertion experiments on random Young tableaux")
    parser.add_argument("--version", action="version", version=f"tableaux-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transition", help="print the exact transition measure of a diagram")
    p.add_argument("parts", help='comma-separated parts, e.g. "4,2,2,2" (empty string for the empty diagram)')

    p = sub.add_parser("rsk", help="ad-hoc Schensted/RSK inspection")
    rsub = p.add_subparsers(dest="rsk_command", required=True)
    pi = rsub.add_parser("insert", help="insert z into P(w) and show the new box and bumping route")
    pi.add_argument("word", type=_floats, help="comma-separated reals in [0,1]")
    pi.add_argument("z", type=float)
    ps = rsub.add_parser("shape", help="RSK shape of a word")
    ps.add_argument("word", type=_floats)
    pr = rsub.add_parser("responsibility", help="responsibility matrix of a word")
    pr.add_argument("word", type=_floats)
    pj = rsub.add_parser("jdt", help="lazy jeu-de-taquin path of the recording tableau of a word")
    pj.add_argument("word", type=_floats)
    pj.add_argument("--n-max", type=int, default=None, help="largest lazy index (default: word length)")

    p = sub.add_parser("limits", help="closed-form limit measures")
    lsub = p.add_subparsers(dest="limits_command", required=True)
    pe = lsub.add_parser("eval", help="print density/cdf/energy/variance at u")
    pe.add_argument("which", choices=["semicircle", "arcsine"])
    pe.add_argument("u", type=float)

    p = _experiment_parser(sub, "dcf", "estimate the double cumulative function on a grid")
    p.add_argument("--shape", default=None, help='diagram parts, e.g. "3,1"')
    p.add_argument("--u-grid", type=_floats, default=None)
    p.add_argument("--z-grid", type=_floats, default=None)
    p.add_argument("--csv", default=None, help="write the u,z,estimate,std_error grid here")

    p = _experiment_parser(sub, "determinism", "first-order insertion determinism check")
    p.add_argument("--family", choices=["staircase", "plancherel"], default=None)
    p.add_argument("--tolerance", type=float, default=None)

    p = _experiment_parser(sub, "staircase-clt", "staircase insertion-fluctuation CLT")
    p.add_argument("--variance-band", type=float, default=None)
    p.add_argument("--ks-limit", type=float, default=None)

    p = _experiment_parser(sub, "plancherel-clt", "Plancherel CLT conjecture replication")
    p.add_argument("--variance-band", type=float, default=None)

    _experiment_parser(sub, "dxy-scaling", "d_XY power-law scaling conjecture replication")

    p = _experiment_parser(sub, "gaussian-profile", "transition-zone Gaussian profile check")
    p.add_argument("--q-grid", type=_floats, default=None)
    p.add_argument("--xi-grid", type=_floats, default=None)
    p.add_argument("--tolerance", type=float, default=None)

    p = _experiment_parser(sub, "moment-oracle", "cumulative-function moment oracle check")
    p.add_argument("--shapes", type=_shapes, default=None, help='semicolon list, e.g. "1;2,1;3,1"')
    p.add_argument("--u-values", type=_floats, default=None)
    p.add_argument("--tolerance", type=float, default=None, help="|z-score| limit (default 4)")

    return parser


def _cmd_transition(args) -> int:
    d = parse_parts(args.parts)
    print(f"diagram: {list(d.parts)} (n = {d.n})")
    for u, w in transition_weights_exact(d):
        print(f"  u = {u:>4d}   weight = {w!s:>10}   = {float(w):.12f}")
    total = sum((w for _, w in transition_weights_exact(d)), Fraction(0))
    print(f"  total weight: {total}")
    return 0


def _print_tableau(label: str, rows) -> None:
    print(f"{label}:")
    for row in reversed(list(rows)):
        print("   " + " ".join(f"{v:.4g}" if isinstance(v, float) else str(v) for v in row))


def _cmd_rsk(args) -> int:
    if args.rsk_command == "shape":
        print(json.dumps({"shape": list(rsk_shape(args.word).parts)}))
        return 0
    if args.rsk_command == "insert":
        t = p_tableau(args.word)
        new_t, box, route = insert(t, args.z)
        _print_tableau("P(w)", t.rows)
        _print_tableau(f"P(w) <- {args.z}", new_t.rows)
        print(f"new box: (x={box.x}, y={box.y}), u = {box.u}")
        print("bumping route:", [(b.x, b.y) for b in route])
        return 0
    if args.rsk_command == "responsibility":
        entries = {f"({b.x},{b.y})": v for b, v in sorted(
            responsibility_matrix(args.word).items(), key=lambda kv: (kv[0].y, kv[0].x))}
        print(json.dumps(entries, indent=2))
        return 0
    q = q_tableau(args.word)
    n_max = args.n_max if args.n_max is not None else len(args.word)
    path = jdt_lazy_path(q, n_max)
    out = {
        "path": [[b.x, b.y] for b in path.path],
        "j": [[b.x, b.y] for b in path.j],
        "truncated": path.truncated,
    }
    print(json.dumps(out))
    return 0


def _cmd_limits(args) -> int:
    spec = semicircle() if args.which == "semicircle" else arcsine()
    variance = clt_variance_sc if args.which == "semicircle" else clt_variance_as
    u = args.u
    print(f"{args.which} at u = {u}")
    print(f"  density  = {spec.density(u)!r}")
    print(f"  cdf      = {spec.cdf(u)!r}")
    print(f"  energy   = {spec.energy(u)!r}")
    lo, hi = spec.support
    print(f"  variance = {variance(u)!r}" if lo <= u <= hi else "  variance = (outside support)")
    return 0


def _merged_config(kind: str, args, cli_keys: dict) -> ExperimentConfig:
    mapping = {}
    if args.config:
        mapping.update(read_config_file(args.config))
    for key, value in cli_keys.items():
        if value is not None:
            mapping[key] = value
    return ExperimentConfig.from_mapping(kind, mapping)


def _common_cli_keys(args) -> dict:
    return {
        "seed": args.seed if args.seed is not None else None,
        "workers": args.workers,
        "sizes": args.sizes,
        "z": args.z,
        "samples": args.samples,
    }


def _emit_report(report: ExperimentReport, out_path: str | None) -> int:
    text = report.to_json()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
        for gate in report.gates:
            status = "PASS" if gate["passed"] else "FAIL"
            print(f"[{status}] ({gate['grade']}) {gate['criterion']} = {gate['value']:.6g}")
        print(f"report written to {out_path}")
    else:
        print(text)
    return report.exit_code()


def _cmd_experiment(kind: str, args) -> int:
    keys = _common_cli_keys(args)
    for extra in ("family", "tolerance", "variance_band", "ks_limit", "q_grid", "xi_grid",
                  "shapes", "u_values"):
        if hasattr(args, extra):
            keys[extra] = getattr(args, extra)
    cfg = _merged_config(kind, args, keys)
    report = RUNNERS[kind](cfg)
    return _emit_report(report, args.out)


def _cmd_dcf(args) -> int:
    keys = _common_cli_keys(args)
    if args.shape is not None:
        keys["shapes"] = (tuple(parse_parts(args.shape).parts),)
    if args.u_grid is not None:
        keys["u_grid"] = args.u_grid
    if args.z_grid is not None:
        keys["z_grid"] = args.z_grid
    cfg = _merged_config("dcf", args, keys)
    report, grid = run_dcf_grid(cfg)
    if args.csv:
        env = dcf_csv_and_envelope(grid, args.csv, wall_clock_s=report.wall_clock_s)
        print(f"grid written to {args.csv}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json() + "\n")
        print(f"report written to {args.out}")
    elif not args.csv:
        print(report.to_json())
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "transition":
            return _cmd_transition(args)
        if args.command == "rsk":
            return _cmd_rsk(args)
        if args.command == "limits":
            return _cmd_limits(args)
        if args.command == "dcf":
            return _cmd_dcf(args)
        return _cmd_experiment(args.command, args)
    except (ValueError, OSError) as exc:
        print(f"tableaux-lab: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
