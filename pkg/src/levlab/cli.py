"""Command line front end.

Subcommands:

* ``point``      solvable point interaction, per-sector winding reports
* ``potential``  full pipeline for a potential described by a JSON config
* ``tables``     recompute every golden table row and compare
* ``verify-r``   multiplier identity residuals for the probe-function suite

Exit codes: 0 success, 1 a verification failed or a numerical certificate
could not be produced, 2 configuration problems.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

from .dilation import MellinEvaluator, suite_residuals
from .errors import ConfigError, LevlabError
from .loops import Sector, WindingReport
from .point import DELTA, DELTA_PRIME, PointInteraction, verify_levinson
from .potentials import Potential, gaussian_wells, square_well, tabulated_potential
from .reporting import check_golden, render_rows, reproduce_tables
from .scattering import PotentialAnalysis, ScatteringData, SolverSettings

IDENTITY_TOL = 1e-6
DELAY_TOL = 1e-3
SUITE_TOL = 1e-3

_SECTOR_BY_NAME = {s.value: s for s in Sector}


def _parse_param(text: str) -> float:
    try:
        return math.inf if text.strip().lower() == "inf" else float(text)
    except ValueError:
        raise ConfigError(f"coupling parameter {text!r} is not a number or 'inf'")


def _report_line(sector: Sector, report: WindingReport) -> str:
    w = ", ".join(f"{v:+.6f}" for v in report.w)
    tag = report.resonance.tag if report.resonance is not None else "-"
    return (
        f"  [{sector.value:<4}] w = ({w})  total = {report.total:+.6f}  "
        f"n = {report.n_bound}  threshold = {tag}  residual = {report.residual:.2e}"
    )


# ---------------------------------------------------------------------------
# point


def _run_point_system(interaction: PointInteraction, as_json: bool) -> int:
    print(interaction.describe())
    reports = {}
    for sector in (Sector.EVEN, Sector.ODD):
        report = verify_levinson(interaction, sector)
        reports[sector.value] = report
        print(_report_line(sector, report))
    if as_json:
        print(json.dumps({k: r.to_dict() for k, r in reports.items()}, sort_keys=True))
    worst = max(r.residual for r in reports.values())
    print(f"index identity: {'OK' if worst < IDENTITY_TOL else 'FAIL'}")
    return 0 if worst < IDENTITY_TOL else 1


def _cmd_point(args) -> int:
    try:
        interaction = PointInteraction(args.kind, _parse_param(args.param))
    except ValueError as exc:
        raise ConfigError(str(exc))
    return _run_point_system(interaction, args.json)


# ---------------------------------------------------------------------------
# potential


def _build_potential(cfg) -> Potential:
    if not isinstance(cfg, dict):
        raise ConfigError("'potential' must be an object")
    kind = cfg.get("kind")
    try:
        if kind == "square-well":
            return square_well(float(cfg["depth"]), float(cfg["half_width"]))
        if kind == "gaussian-sum":
            return gaussian_wells([tuple(map(float, well)) for well in cfg["wells"]])
        if kind == "tabulated":
            return tabulated_potential(
                [float(v) for v in cfg["xs"]],
                [float(v) for v in cfg["values"]],
                decay_exponent=float(cfg.get("decay_exponent", math.inf)),
            )
    except KeyError as exc:
        raise ConfigError(f"potential config is missing {exc.args[0]!r}")
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad potential config: {exc}")
    raise ConfigError(f"unknown potential kind {kind!r}")


def _build_settings(config: dict) -> SolverSettings:
    overrides = config.get("numerics", {})
    if not isinstance(overrides, dict):
        raise ConfigError("'numerics' must be an object")
    valid = {f.name for f in dataclasses.fields(SolverSettings)}
    unknown = sorted(set(overrides) - valid)
    if unknown:
        raise ConfigError(f"unknown numerics keys: {', '.join(unknown)}")
    if "dead_zone" in overrides:
        overrides = dict(overrides, dead_zone=tuple(overrides["dead_zone"]))
    try:
        return SolverSettings(**overrides)
    except TypeError as exc:
        raise ConfigError(f"bad numerics value: {exc}")


def _sectors_from(config: dict, potential: Potential) -> list[Sector]:
    names = config.get("sectors")
    if names is None:
        sectors = [Sector.FULL]
        if potential.symmetric:
            sectors += [Sector.EVEN, Sector.ODD]
        return sectors
    if not isinstance(names, list) or not names:
        raise ConfigError("'sectors' must be a nonempty list")
    sectors = []
    for name in names:
        if name not in _SECTOR_BY_NAME:
            raise ConfigError(f"unknown sector {name!r}")
        sectors.append(_SECTOR_BY_NAME[name])
    return sectors


def _write_phase_csv(path: str, data: ScatteringData) -> None:
    eo = data.in_even_odd()
    det = eo.det_phases()
    phases = eo.eigenphase_curves()
    rows = ["kappa,arg_det,phase1,phase2"]
    for k, d, pair in zip(eo.kappas, det, phases):
        rows.append(",".join(repr(float(v)) for v in (k, d, pair[0], pair[1])))
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            config = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    return config


def _cmd_potential(args) -> int:
    config = _load_config(args.config)
    system = config.get("system", "potential")
    if system in (DELTA, DELTA_PRIME):
        if "param" not in config:
            raise ConfigError(f"system {system!r} needs a 'param' entry")
        try:
            interaction = PointInteraction(system, float(config["param"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc))
        return _run_point_system(interaction, args.json)
    if system != "potential":
        raise ConfigError(f"unknown system {system!r}")
    if "potential" not in config:
        raise ConfigError("config needs a 'potential' entry")

    potential = _build_potential(config["potential"])
    settings = _build_settings(config)
    sectors = _sectors_from(config, potential)
    analysis = PotentialAnalysis(potential, settings)

    print(f"potential: {potential.label}")
    print(f"truncation radius: {analysis.radius:g}")
    resonance = analysis.resonance
    if resonance.is_exceptional:
        print(f"threshold: exceptional (gamma = {resonance.gamma:.9g})")
    else:
        print("threshold: generic")
    print(
        "bound states: "
        f"zero-energy nodes = {analysis.n_bound_shooting}, "
        f"finite-difference box = {analysis.n_bound_fd}"
    )
    analysis.bound_states()  # raises if the two routes disagree

    reports = {}
    for sector in sectors:
        report = analysis.report(sector)
        reports[sector.value] = report
        print(_report_line(sector, report))

    full = reports.get(Sector.FULL.value)
    delay_gap = 0.0
    if full is not None:
        delay = analysis.time_delay()
        predicted = full.n_bound + full.correction
        delay_gap = abs(delay - predicted)
        print(
            f"time delay integral: {delay:.6f}  "
            f"(n + correction = {predicted:.6f}, gap = {delay_gap:.2e})"
        )

    output = config.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("'output' must be an object")
    csv_path = args.csv or output.get("csv")
    if csv_path:
        analysis.scattering.write_csv(csv_path)
        print(f"wrote scattering matrices to {csv_path}")
    phase_path = args.phase_csv or output.get("phase_csv")
    if phase_path:
        _write_phase_csv(phase_path, analysis.scattering)
        print(f"wrote phase curves to {phase_path}")
    if args.json:
        print(json.dumps({k: r.to_dict() for k, r in reports.items()}, sort_keys=True))

    worst = max(r.residual for r in reports.values())
    ok = worst < IDENTITY_TOL and delay_gap < DELAY_TOL
    print(f"index identity: {'OK' if ok else 'FAIL'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# tables, verify-r


def _cmd_tables(args) -> int:
    rows = reproduce_tables()
    print(render_rows(rows))
    check_golden(rows, tol=1e-6)
    print("all golden rows reproduced")
    return 0


def _cmd_verify_r(args) -> int:
    sign = -1.0 if args.flip_mellin_sign else 1.0
    evaluator = MellinEvaluator(sign=sign)
    results = suite_residuals(evaluator)
    for label, residual in results:
        print(f"  {label:<36} residual = {residual:.3e}")
    worst = max(residual for _, residual in results)
    ok = worst < SUITE_TOL
    print(f"multiplier identity: {'OK' if ok else 'FAIL'} (worst {worst:.3e})")
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levlab",
        description="Winding-number verification of Levinson's theorem in 1d scattering",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="solvable point interaction")
    p_point.add_argument("--kind", choices=(DELTA, DELTA_PRIME), required=True)
    p_point.add_argument("--param", required=True, help="coupling, a float or 'inf'")
    p_point.add_argument("--json", action="store_true", help="also print JSON reports")
    p_point.set_defaults(func=_cmd_point)

    p_pot = sub.add_parser("potential", help="potential described by a JSON config")
    p_pot.add_argument("--config", required=True, help="path to the JSON config")
    p_pot.add_argument("--csv", help="write scattering matrices to this CSV file")
    p_pot.add_argument("--phase-csv", help="write unwrapped phase curves to this CSV file")
    p_pot.add_argument("--json", action="store_true", help="also print JSON reports")
    p_pot.set_defaults(func=_cmd_potential)

    p_tables = sub.add_parser("tables", help="recompute and check the golden tables")
    p_tables.set_defaults(func=_cmd_tables)

    p_verify = sub.add_parser("verify-r", help="multiplier identity residuals")
    p_verify.add_argument("--flip-mellin-sign", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=_cmd_verify_r)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except LevlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
