"""Command-line interface: ``ppcg analyze|sweep|generate|bounds|verify|delta-sweep``.

Exit codes: 0 success, 2 enumeration budget exceeded, 3 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import bounds, verifier
from .equilibria import DEFAULT_BUDGET, BudgetExceeded, is_nash, ratios_from_scan, scan_profiles
from .game import Game, GameError, social_cost
from .generators import CONSTRUCTIONS, ConstructionOutput
from .io import dump_json, game_to_json, load_game, network_to_json, ratio_json
from .network import NetworkError, NetworkGame, profile_from_paths, to_congestion_game
from .rational import as_fraction, format_fraction, to_decimal

log = logging.getLogger("ppcg")

EXIT_OK, EXIT_BUDGET, EXIT_INVALID = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with the budget code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class Range:
    lo: Fraction
    hi: Fraction
    step: Fraction

    def values(self) -> list[Fraction]:
        out, v = [], self.lo
        while v <= self.hi:
            out.append(v)
            v += self.step
        return out


def parse_range(text: str) -> Range:
    """``"x"`` or ``"lo:hi:step"`` with rational entries."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = as_fraction(parts[0])
            return Range(v, v, Fraction(1))
        if len(parts) == 3:
            lo, hi, step = (as_fraction(p) for p in parts)
        else:
            raise ValueError
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"expected a rational or lo:hi:step, got {text!r}") from None
    if lo > hi or step <= 0:
        raise argparse.ArgumentTypeError("need lo <= hi and step > 0")
    return Range(lo, hi, step)


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


@dataclass(frozen=True)
class SweepSpec:
    rho: Range
    sigma: Range | None  # None means sigma = rho at every point
    construction: str | None
    params: dict
    game_file: Path | None
    out: Path | None
    budget: int


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _compiled(game: Game | NetworkGame) -> Game:
    return to_congestion_game(game) if isinstance(game, NetworkGame) else game


def _bound_fields(rho: Fraction, sigma: Fraction) -> dict:
    poa = bounds.poa_upper_bound(rho, sigma)
    out = {"poa_bound": poa.value, "poa_region_ok": poa.region_ok, "poa_region": poa.region_label}
    if sigma > 0:
        pos = bounds.pos_upper_bound(rho, sigma)
        out.update(pos_bound=pos.value, pos_region_ok=pos.region_ok, pos_region=pos.region_label)
        out["h_sigma"] = bounds.h_sigma(sigma)
    else:
        out.update(pos_bound=None, pos_region_ok=False, pos_region="sigma must be positive", h_sigma=None)
    out["delta_sigma"] = bounds.delta_sigma(sigma) if sigma >= Fraction(1, 2) else None
    return out


# --- analyze ---------------------------------------------------------------------------


def analyze(game: Game | NetworkGame, rho: Fraction, sigma: Fraction, budget: int) -> dict:
    compiled = _compiled(game)
    scan = scan_profiles(compiled, rho, sigma, budget)
    poa, pos = ratios_from_scan(scan)
    report = {
        "rho": rho,
        "sigma": sigma,
        "profiles": scan.total,
        "ne_count": scan.ne_count,
        "poa": ratio_json(poa.value),
        "pos": ratio_json(pos.value),
        "opt": {"profile": list(scan.opt_profile), "cost": ratio_json(scan.opt_cost)},
        "worst_ne": {"profile": list(scan.worst_ne), "cost": ratio_json(scan.worst_ne_cost)},
        "best_ne": {"profile": list(scan.best_ne), "cost": ratio_json(scan.best_ne_cost)},
        "potential_minimizer": {"profile": list(scan.potential_argmin), "potential": ratio_json(scan.potential_min)},
    }
    bf = _bound_fields(rho, sigma)
    report["bounds"] = {
        "poa": {"value": bf["poa_bound"], "region_ok": bf["poa_region_ok"], "region": bf["poa_region"]},
        "pos": {"value": bf["pos_bound"], "region_ok": bf["pos_region_ok"], "region": bf["pos_region"]},
    }
    if bf["poa_region_ok"] and isinstance(poa.value, Fraction):
        report["bounds"]["poa"]["respected"] = float(poa.value) <= bf["poa_bound"] + 1e-9
    if bf["pos_region_ok"] and isinstance(pos.value, Fraction):
        report["bounds"]["pos"]["respected"] = float(pos.value) <= bf["pos_bound"] + 1e-9
    return report


def _profile_report(game: Game | NetworkGame, profiles: dict, rho: Fraction, sigma: Fraction) -> dict:
    compiled = _compiled(game)
    out = {}
    for key in ("designated_ne", "comparison"):
        if key not in profiles:
            continue
        raw = profiles[key]
        if isinstance(game, NetworkGame):
            prof = profile_from_paths(compiled.strategies[0], raw)
        else:
            prof = compiled.check_profile(raw)
        out[key] = {
            "profile": list(prof),
            "cost": ratio_json(social_cost(compiled, prof, sigma)),
            "is_nash": is_nash(compiled, prof, rho),
        }
    return out


def cmd_analyze(args) -> int:
    game = load_game(args.game)
    report = analyze(game, args.rho, args.sigma, args.budget)
    if args.profiles:
        report["designated"] = _profile_report(game, json.loads(Path(args.profiles).read_text()), args.rho, args.sigma)
    _emit(dump_json(report), args.out)
    return EXIT_OK


# --- sweep -----------------------------------------------------------------------------


def _construction_params(args) -> dict:
    params = {}
    for key in ("n", "i", "n1", "n2", "eps"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    return params


def _build(name: str, params: dict, rho: Fraction) -> ConstructionOutput:
    if name not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTIONS)}")
    kwargs = dict(params)
    if name != "singleton_pos":
        kwargs["rho"] = rho
    try:
        return CONSTRUCTIONS[name](**kwargs)
    except TypeError as exc:
        raise UsageError(f"bad parameters for {name}: {exc}") from None


SWEEP_HEADER = [
    "rho",
    "sigma",
    "brute_poa",
    "brute_poa_decimal",
    "brute_pos",
    "brute_pos_decimal",
    "poa_bound",
    "poa_region_ok",
    "pos_bound",
    "pos_region_ok",
    "status",
]


def sweep_rows(spec: SweepSpec) -> list[list]:
    points = []
    for rho in spec.rho.values():
        sigmas = [rho] if spec.sigma is None else spec.sigma.values()
        points += [(sigma, rho) for sigma in sigmas]
    fixed = load_game(spec.game_file) if spec.game_file else None
    compiled_fixed = _compiled(fixed) if fixed is not None else None
    rows = []
    for sigma, rho in sorted(points):
        bf = _bound_fields(rho, sigma)
        row = [format_fraction(rho), format_fraction(sigma)]
        try:
            if compiled_fixed is not None:
                game = compiled_fixed
            else:
                game = _compiled(_build(spec.construction, spec.params, rho).game)
            scan = scan_profiles(game, rho, sigma, spec.budget)
            poa, pos = ratios_from_scan(scan)
            row += [format_fraction(poa.value), to_decimal(poa.value), format_fraction(pos.value), to_decimal(pos.value)]
            status = "ok"
        except BudgetExceeded as exc:
            row += ["", "", "", ""]
            status = f"budget_exceeded:{exc.count}"
        pos_bound = "" if bf["pos_bound"] is None else repr(bf["pos_bound"])
        row += [repr(bf["poa_bound"]), int(bf["poa_region_ok"]), pos_bound, int(bf["pos_region_ok"]), status]
        rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    if (args.construction is None) == (args.game is None):
        raise UsageError("give exactly one of --construction or --game")
    if args.diagonal and args.sigma is not None:
        raise UsageError("--diagonal sets sigma = rho; do not pass --sigma")
    spec = SweepSpec(
        rho=args.rho,
        sigma=None if args.diagonal else (args.sigma or parse_range("1")),
        construction=args.construction,
        params=_construction_params(args),
        game_file=Path(args.game) if args.game else None,
        out=args.out,
        budget=args.budget,
    )
    rows = sweep_rows(spec)
    if args.format == "json":
        _emit(dump_json([dict(zip(SWEEP_HEADER, r)) for r in rows]), spec.out)
    else:
        _emit(_csv_text(SWEEP_HEADER, rows), spec.out)
    return EXIT_OK


# --- generate --------------------------------------------------------------------------


def cmd_generate(args) -> int:
    params = _construction_params(args)
    con = _build(args.name, params, args.rho if args.rho is not None else Fraction(1))
    prefix = Path(args.out) if args.out else Path(args.name)
    game_path = prefix.with_name(prefix.name + ".game.json")
    prof_path = prefix.with_name(prefix.name + ".profiles.json")
    payload = network_to_json(con.game) if con.is_network else game_to_json(con.game)
    dump_json(payload, game_path)
    dump_json(
        {
            "construction": con.name,
            "params": con.params,
            "rho": con.rho,
            "designated_ne": [list(p) for p in con.designated_ne] if con.is_network else list(con.designated_ne),
            "comparison": [list(p) for p in con.comparison] if con.is_network else list(con.comparison),
        },
        prof_path,
    )
    sigma = args.sigma
    summary = {
        "game_file": str(game_path),
        "profiles_file": str(prof_path),
        "resources": len(con.game.arcs) if con.is_network else con.game.m,
        "sigma": sigma,
        "predicted_ne_cost": ratio_json(con.predicted_ne_cost(sigma)),
        "predicted_comparison_cost": ratio_json(con.predicted_comparison_cost(sigma)),
    }
    print(dump_json(summary))
    return EXIT_OK


# --- bounds ----------------------------------------------------------------------------

BOUNDS_HEADER = ["rho", "sigma", "poa_bound", "region_ok", "pos_bound", "pos_region_ok", "h_sigma", "delta_sigma"]


def cmd_bounds(args) -> int:
    sigma_range = args.sigma or parse_range("1")
    single = args.rho.lo == args.rho.hi and sigma_range.lo == sigma_range.hi
    if single and args.format != "csv":
        rho, sigma = args.rho.lo, sigma_range.lo
        out = {"rho": rho, "sigma": sigma, **_bound_fields(rho, sigma)}
        if sigma == 1 and rho > 0:
            nb = bounds.network_pos_bound(rho)
            out["network_pos_bound"] = nb.value
        if rho == sigma:
            out["generalized_affine_pos"] = bounds.generalized_affine_pos(sigma)
        _emit(dump_json(out), args.out)
        return EXIT_OK
    records = []
    for sigma in sigma_range.values():
        for rho in args.rho.values():
            bf = _bound_fields(rho, sigma)
            records.append(
                {
                    "rho": rho,
                    "sigma": sigma,
                    "poa_bound": bf["poa_bound"],
                    "region_ok": bf["poa_region_ok"],
                    "pos_bound": bf["pos_bound"],
                    "pos_region_ok": bf["pos_region_ok"],
                    "h_sigma": bf["h_sigma"],
                    "delta_sigma": bf["delta_sigma"],
                }
            )
    if args.format == "json":
        _emit(dump_json(records), args.out)
    else:
        _emit(_csv_text(BOUNDS_HEADER, [[_csv_cell(r[k]) for k in BOUNDS_HEADER] for r in records]), args.out)
    return EXIT_OK


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, Fraction):
        return format_fraction(v)
    return repr(v)


# --- verify / delta-sweep --------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        report = verifier.verify(args.name, args.rho, args.sigma, args.grid)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    _emit(dump_json(report.to_json()), args.out)
    return EXIT_OK


def cmd_delta_sweep(args) -> int:
    report = verifier.delta_sweep(args.lo, args.hi, args.step, args.tol)
    sigmas, values = report.extra.pop("_grid")
    if args.format == "json":
        _emit(dump_json(report.to_json()), args.out)
    else:
        rows = [[repr(float(s)), repr(float(v)), int(v >= -args.tol)] for s, v in zip(sigmas, values)]
        _emit(_csv_text(["sigma", "delta", "holds"], rows), args.out)
        print(
            f"min delta {report.extra['min_delta']:.6g} at sigma {report.extra['argmin_sigma']:.6g}; "
            f"holds={report.holds}",
            file=sys.stderr,
        )
    return EXIT_OK


# --- parser ----------------------------------------------------------------------------


def _add_construction_params(p) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int, help="singleton_pos: even i, rho = i/(n-1)")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--eps", type=_rational)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppcg", description="Perception-parameterized congestion games")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="brute-force equilibria, PoA and PoS of a game file")
    p.add_argument("game")
    p.add_argument("--rho", type=_rational, default=Fraction(1))
    p.add_argument("--sigma", type=_rational, default=Fraction(1))
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--profiles", help="profiles JSON written by 'generate'")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="PoA/PoS over a (rho, sigma) grid")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--construction", choices=sorted(CONSTRUCTIONS))
    src.add_argument("--game")
    _add_construction_params(p)
    p.add_argument("--rho", type=parse_range, required=True, help="value or lo:hi:step")
    p.add_argument("--sigma", type=parse_range, help="value or lo:hi:step (default 1)")
    p.add_argument("--diagonal", action="store_true", help="sigma = rho")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generate", help="write a lower-bound construction to JSON")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    _add_construction_params(p)
    p.add_argument("--rho", type=_rational)
    p.add_argument("--sigma", type=_rational, default=Fraction(1), help="for the printed predictions")
    p.add_argument("--out", help="output prefix (default: construction name)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bounds", help="closed-form bounds; ranges give a CSV sweep")
    p.add_argument("--rho", type=parse_range, required=True)
    p.add_argument("--sigma", type=parse_range)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="grid-check a per-resource inequality")
    p.add_argument("name", choices=sorted(verifier.INEQUALITIES))
    p.add_argument("--rho", type=_rational, default=Fraction(1))
    p.add_argument("--sigma", type=_rational, default=Fraction(1))
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("delta-sweep", help="evaluate Delta(sigma) on a grid")
    p.add_argument("--lo", type=float, default=0.5)
    p.add_argument("--hi", type=float, default=2.0)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=verifier.DELTA_TOL)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_delta_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"ppcg: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GameError, NetworkError, ValueError, OSError) as exc:
        print(f"ppcg: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
