"""Command-line front end: JSON/grid specs in, CSV/JSON reports out.

Subcommands: ``scan`` samples a Blaschke product on a circle (CSV), ``trace``
follows one radial ray (CSV), ``probe`` judges boundary limits along several
approach paths (JSON), ``frostman`` classifies the boundary sum at one angle
(JSON) or over a grid (CSV), ``series`` evaluates a weighted inner-function
series (JSON or CSV), ``arakeljan`` runs the raster hole checks (JSON),
``kernels`` reports Poisson-kernel mass and concentration (JSON), and
``selftest`` runs the bundled acceptance criteria.

Every report goes through one deterministic text layer (17 significant
digits, fixed key order), so identical inputs and flags produce byte-identical
output; ``--out -`` streams to standard output.  Exit codes: 0 success, 1
computation failure (any partial report is still written), 2 validation
failure with a diagnostic naming the offending input.
"""

from __future__ import annotations

import argparse
import cmath
import contextlib
import json
import sys
from dataclasses import dataclass, field

from . import acceptance, config
from .blaschke import (
    BlaschkeProduct,
    boundary_scan,
    default_radius_schedule,
    limit_probe,
    radial_trace,
)
from .errors import EvaluationError, ValidationError
from .frostman import FrostmanPolicy, frostman_classify, frostman_profile
from .grid import GridPlane, hole_independence, is_arakeljan, union_check
from .herglotz import approx_identity_report
from .series import SeriesSpec, eval_series
from .textio import json_text, write_csv
from .unitdisc import TWO_PI, ZeroSequence

# flag destination -> config key, for every override the CLI accepts
_FLOAT_OVERRIDES = {
    "truncation_tolerance": "truncation_tolerance",
    "verdict_tolerance": "verdict_tolerance",
    "quad_tolerance": "quad_tolerance",
    "series_tolerance": "series_tolerance",
    "delta": "scan_delta",
    "divergence_threshold": "frostman_divergence_threshold",
    "cauchy_tolerance": "frostman_cauchy_tolerance",
}
_INT_OVERRIDES = {
    "radius_levels": "radius_levels",
    "window": "oscillation_window",
    "growth_window": "frostman_growth_window",
    "seed": "seed",
    "threads": "threads",
}


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: subcommand, files, and validated overrides."""

    subcommand: str
    input_paths: tuple[str, ...]
    output_path: str | None
    tolerance_overrides: dict[str, float] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        for key, value in self.tolerance_overrides.items():
            if not value > 0.0:
                raise ValidationError(f"override {key} must be positive, got {value!r}")
        if self.seed < 0:
            raise ValidationError(f"seed must be a nonnegative integer, got {self.seed!r}")


def _d(key: str) -> str:
    return f"(default {config.DEFAULTS[key]})"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="key = value config file; flags win over it (default none)")
    common.add_argument("--out", metavar="PATH", default="-",
                        help="output path, - for standard output (default -)")
    common.add_argument("--seed", type=int, metavar="N",
                        help=f"seed for randomized fixtures {_d('seed')}")
    common.add_argument("--threads", type=int, metavar="N",
                        help=f"worker threads; output never depends on it {_d('threads')}")

    parser = argparse.ArgumentParser(
        prog="boundarylab",
        description="Boundary behaviour of bounded analytic functions on the unit disc.",
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    p = sub.add_parser("scan", parents=[common],
                       help="sample a Blaschke product on the circle |z| = r (CSV)")
    p.add_argument("--zeros", metavar="FILE", required=True,
                   help="zero-sequence JSON ({'zeros': [...]} or {'generator': {...}})")
    p.add_argument("--r", type=float, default=0.999, help="scan radius in (0, 1) (default 0.999)")
    p.add_argument("--angles", type=int, default=4096,
                   help="number of uniform sample angles (default 4096)")
    p.add_argument("--delta", type=float, metavar="X",
                   help=f"'near modulus one' means modulus > 1 - X {_d('scan_delta')}")
    p.add_argument("--truncation-tolerance", type=float, metavar="TOL",
                   help=f"certified truncation tail bound {_d('truncation_tolerance')}")

    p = sub.add_parser("trace", parents=[common],
                       help="sample a Blaschke product along one radial ray (CSV)")
    p.add_argument("--zeros", metavar="FILE", required=True, help="zero-sequence JSON")
    p.add_argument("--angle", type=float, default=0.0,
                   help="ray angle in radians (default 0.0)")
    p.add_argument("--radius-levels", type=int, metavar="N",
                   help=f"radii 1 - 2^-n for n = 1..N {_d('radius_levels')}")
    p.add_argument("--window", type=int, metavar="N",
                   help=f"trailing samples judged for oscillation {_d('oscillation_window')}")
    p.add_argument("--verdict-tolerance", type=float, metavar="TOL",
                   help=f"oscillation below this counts as a limit {_d('verdict_tolerance')}")
    p.add_argument("--truncation-tolerance", type=float, metavar="TOL",
                   help=f"certified truncation tail bound {_d('truncation_tolerance')}")

    p = sub.add_parser("probe", parents=[common],
                       help="boundary-limit probe along several approach paths (JSON)")
    p.add_argument("--zeros", metavar="FILE", required=True, help="zero-sequence JSON")
    p.add_argument("--angle", type=float, default=0.0,
                   help="boundary angle in radians (default 0.0)")
    p.add_argument("--radius-levels", type=int, metavar="N",
                   help=f"radii 1 - 2^-n for n = 1..N {_d('radius_levels')}")
    p.add_argument("--window", type=int, metavar="N",
                   help=f"trailing samples judged for oscillation {_d('oscillation_window')}")
    p.add_argument("--verdict-tolerance", type=float, metavar="TOL",
                   help=f"oscillation below this counts as a limit {_d('verdict_tolerance')}")

    p = sub.add_parser("frostman", parents=[common],
                       help="Frostman sum classification at one angle (JSON) or a grid (CSV)")
    p.add_argument("--zeros", metavar="FILE", required=True, help="zero-sequence JSON")
    p.add_argument("--theta", type=float, metavar="T",
                   help="classify this single angle instead of a grid (default none)")
    p.add_argument("--angles", type=int, default=256,
                   help="grid size when --theta is absent (default 256)")
    p.add_argument("--divergence-threshold", type=float, metavar="X",
                   help=f"partial sums this large mean divergent {_d('frostman_divergence_threshold')}")
    p.add_argument("--growth-window", type=int, metavar="N",
                   help=f"prefix doublings inspected for the tail {_d('frostman_growth_window')}")
    p.add_argument("--cauchy-tolerance", type=float, metavar="TOL",
                   help=f"tail below this means convergent {_d('frostman_cauchy_tolerance')}")

    p = sub.add_parser("series", parents=[common],
                       help="evaluate a weighted inner-function series (JSON or CSV)")
    p.add_argument("--spec", metavar="FILE", required=True, help="series spec JSON")
    p.add_argument("--at", nargs=2, type=float, metavar=("RE", "IM"),
                   help="evaluate at one point and emit JSON (default: circle CSV)")
    p.add_argument("--r", type=float, default=0.999,
                   help="circle radius for the CSV mode (default 0.999)")
    p.add_argument("--angles", type=int, default=256,
                   help="sample angles for the CSV mode (default 256)")
    p.add_argument("--series-tolerance", type=float, metavar="TOL",
                   help=f"unused weight mass allowed in the tail {_d('series_tolerance')}")

    p = sub.add_parser("arakeljan", parents=[common],
                       help="raster hole checks: verdict, independence, union law (JSON)")
    p.add_argument("--grid", metavar="FILE", required=True,
                   help="grid file (text format or JSON)")
    p.add_argument("--subject", default="F", metavar="SEL",
                   help="subject selector: F, E, E+F or none (default F)")
    p.add_argument("--independence", nargs=2, metavar=("E_SEL", "F_SEL"),
                   help="report hole independence of two subjects instead")
    p.add_argument("--union", action="store_true",
                   help="report the full union-law check for E and F instead")

    p = sub.add_parser("kernels", parents=[common],
                       help="Poisson kernel mass and concentration numbers (JSON)")
    p.add_argument("--r", type=float, default=0.99,
                   help="kernel radius in [0, 1) (default 0.99)")
    p.add_argument("--delta", type=float, default=0.1,
                   help="tail threshold angle in (0, pi] (default 0.1)")

    p = sub.add_parser("selftest", parents=[common],
                       help="run the bundled acceptance criteria; exit 0 iff all pass")
    p.add_argument("--only", metavar="LIST",
                   help="comma-separated criterion indices, e.g. 1,5,13 (default all)")

    return parser


def _effective(args: argparse.Namespace) -> dict:
    overrides: dict[str, object] = {}
    for dest, key in {**_FLOAT_OVERRIDES, **_INT_OVERRIDES}.items():
        value = getattr(args, dest, None)
        if value is not None:
            overrides[key] = value
    cfg = config.effective_config(getattr(args, "config", None), overrides)
    for key in ("radius_levels", "oscillation_window", "frostman_growth_window", "threads"):
        if int(cfg[key]) < 1:
            raise ValidationError(f"config key {key} must be at least 1, got {cfg[key]!r}")
    return cfg


def _run_config(args: argparse.Namespace, cfg: dict) -> RunConfig:
    paths = [getattr(args, name, None) for name in ("zeros", "spec", "grid", "config")]
    tolerances = {
        key: float(cfg[key])
        for key in _FLOAT_OVERRIDES.values()
    }
    return RunConfig(
        subcommand=args.subcommand,
        input_paths=tuple(p for p in paths if p is not None),
        output_path=args.out,
        tolerance_overrides=tolerances,
        seed=int(cfg["seed"]),
    )


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path!r}: {exc}") from exc


def _read_json(path: str) -> dict:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from exc


@contextlib.contextmanager
def _out_handle(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise ValidationError(f"cannot write {path!r}: {exc}") from exc
    try:
        yield fh
    finally:
        fh.close()


def _load_product(args: argparse.Namespace, cfg: dict) -> BlaschkeProduct:
    seq = ZeroSequence.from_json(_read_json(args.zeros))
    return BlaschkeProduct(seq, truncation_tolerance=float(cfg["truncation_tolerance"]))


def _load_grid(path: str) -> GridPlane:
    text = _read_text(path)
    if text.lstrip().startswith("grid "):
        return GridPlane.parse_text(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: neither a 'grid <w> <h> <unbounded>' text file nor JSON: {exc}"
        ) from exc
    return GridPlane.from_json(data)


def _cmd_scan(args: argparse.Namespace, cfg: dict) -> int:
    product = _load_product(args, cfg)
    kwargs = dict(r=args.r, angle_count=args.angles, delta=float(cfg["scan_delta"]))
    code = 0
    try:
        scan = boundary_scan(product, strict=True, **kwargs)
    except EvaluationError as exc:
        # partial report: best-effort samples below the certified tolerance
        print(f"boundarylab scan: {exc}; writing best-effort samples", file=sys.stderr)
        scan = boundary_scan(product, strict=False, **kwargs)
        code = 1
    with _out_handle(args.out) as fh:
        scan.write_csv(fh)
    return code


def _cmd_trace(args: argparse.Namespace, cfg: dict) -> int:
    product = _load_product(args, cfg)
    trace = radial_trace(
        product,
        args.angle,
        radii=default_radius_schedule(int(cfg["radius_levels"])),
        verdict_tolerance=float(cfg["verdict_tolerance"]),
        window=int(cfg["oscillation_window"]),
    )
    with _out_handle(args.out) as fh:
        trace.write_csv(fh)
    return 0


def _cmd_probe(args: argparse.Namespace, cfg: dict) -> int:
    product = _load_product(args, cfg)
    report = limit_probe(
        product,
        args.angle,
        radii=default_radius_schedule(int(cfg["radius_levels"])),
        verdict_tolerance=float(cfg["verdict_tolerance"]),
        window=int(cfg["oscillation_window"]),
    )
    with _out_handle(args.out) as fh:
        fh.write(json_text(report.to_json()))
    return 0


def _cmd_frostman(args: argparse.Namespace, cfg: dict) -> int:
    seq = ZeroSequence.from_json(_read_json(args.zeros))
    policy = FrostmanPolicy(
        divergence_threshold=float(cfg["frostman_divergence_threshold"]),
        growth_window=int(cfg["frostman_growth_window"]),
        cauchy_tolerance=float(cfg["frostman_cauchy_tolerance"]),
    )
    if args.theta is not None:
        report = frostman_classify(seq, args.theta, policy)
        payload = {
            "theta": float(report.theta),
            "classification": report.classification,
            "schedule": [int(n) for n in report.schedule],
            "partial_sums": [float(s) for s in report.partial_sums],
            "tail": float(report.tail),
        }
        with _out_handle(args.out) as fh:
            fh.write(json_text(payload))
        return 0
    profile = frostman_profile(seq, args.angles, policy=policy)
    with _out_handle(args.out) as fh:
        profile.write_csv(fh)
    return 0


def _cmd_series(args: argparse.Namespace, cfg: dict) -> int:
    spec = SeriesSpec.from_json(_read_json(args.spec))
    tol = float(cfg["series_tolerance"])
    if args.at is not None:
        z = complex(args.at[0], args.at[1])
        if abs(z) >= 1.0:
            raise ValidationError(f"--at point must lie inside the unit disc, got |z| = {abs(z)}")
        ev = eval_series(spec, z, tol=tol)
        payload = {
            "re": ev.value.real,
            "im": ev.value.imag,
            "modulus": abs(ev.value),
            "terms_used": int(ev.terms_used),
            "tail_bound": float(ev.tail_bound),
        }
        with _out_handle(args.out) as fh:
            fh.write(json_text(payload))
        return 0
    if not (0.0 < args.r < 1.0):
        raise ValidationError(f"--r must lie in (0, 1), got {args.r!r}")
    if args.angles < 1:
        raise ValidationError(f"--angles must be positive, got {args.angles!r}")

    def rows():
        for k in range(args.angles):
            t = TWO_PI * k / args.angles
            v = eval_series(spec, args.r * cmath.exp(1j * t), tol=tol).value
            yield (float(t), float(v.real), float(v.imag), float(abs(v)))

    with _out_handle(args.out) as fh:
        write_csv(fh, ("angle", "re", "im", "modulus"), rows())
    return 0


def _cmd_arakeljan(args: argparse.Namespace, cfg: dict) -> int:
    grid = _load_grid(args.grid)
    if args.independence is not None:
        report = hole_independence(grid, args.independence[0], args.independence[1])
        payload = report.to_json()
    elif args.union:
        payload = union_check(grid, "e", "f").to_json()
    else:
        payload = is_arakeljan(grid, args.subject).to_json()
    with _out_handle(args.out) as fh:
        fh.write(json_text(payload))
    return 0


def _cmd_kernels(args: argparse.Namespace, cfg: dict) -> int:
    report = approx_identity_report(args.r, args.delta)
    with _out_handle(args.out) as fh:
        fh.write(json_text(report.to_json()))
    return 0


def _parse_only(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        indices = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValidationError(f"--only takes comma-separated integers, got {text!r}") from exc
    if not indices:
        raise ValidationError("--only selected no criteria")
    for idx in indices:
        if not 1 <= idx <= len(acceptance.CRITERIA):
            raise ValidationError(
                f"--only index {idx} outside 1..{len(acceptance.CRITERIA)}"
            )
    return indices


def _cmd_selftest(args: argparse.Namespace, cfg: dict) -> int:
    indices = _parse_only(args.only)
    results = acceptance.run_acceptance(seed=int(cfg["seed"]), indices=indices)
    with _out_handle(args.out) as fh:
        fh.write(acceptance.format_table(results) + "\n")
    return 0 if acceptance.all_passed(results) else 1


_HANDLERS = {
    "scan": _cmd_scan,
    "trace": _cmd_trace,
    "probe": _cmd_probe,
    "frostman": _cmd_frostman,
    "series": _cmd_series,
    "arakeljan": _cmd_arakeljan,
    "kernels": _cmd_kernels,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed its diagnostic; unknown subcommands
        # and malformed flags land here with code 2
        return int(exc.code or 0)
    if args.subcommand is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        cfg = _effective(args)
        _run_config(args, cfg)
        return _HANDLERS[args.subcommand](args, cfg)
    except ValidationError as exc:
        print(f"boundarylab {args.subcommand}: {exc}", file=sys.stderr)
        return 2
    except EvaluationError as exc:
        print(f"boundarylab {args.subcommand}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
