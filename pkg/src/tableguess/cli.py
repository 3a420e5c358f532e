"""Command-line front end.

Subcommands: ``stats``, ``verify``, ``mae``, ``r2``, ``predict``,
``evaluate``. Exit codes are a stable contract: 0 success, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterator, Sequence

from . import league, permstats, predictor, regression
from .permstats import DEFAULT_ORACLE_CAP

TABLE_FIELDS = ("position", "team")


@contextlib.contextmanager
def _out(path: str | None) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit_json(obj, fh: IO[str]) -> None:
    json.dump(obj, fh, indent=2)
    fh.write("\n")


def _exact(value: Fraction) -> dict:
    return {"exact": str(value), "decimal": float(value)}


def read_table_file(path: str | Path) -> list[str]:
    """Read a table file: CSV ``position,team`` or a JSON array of names.

    Returns the team names in table order (position 1 first).
    """
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("["):
        teams = json.loads(text)
        if not isinstance(teams, list) or not all(isinstance(t, str) for t in teams):
            raise ValueError(f"{path}: JSON table must be an array of team names")
    else:
        reader = csv.reader(text.splitlines())
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty table file") from None
        if tuple(h.strip() for h in header) != TABLE_FIELDS:
            raise ValueError(f"{path}: expected header position,team")
        entries = []
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: malformed row {row!r}")
            entries.append((int(row[0]), row[1].strip()))
        positions = sorted(pos for pos, _ in entries)
        if positions != list(range(1, len(entries) + 1)):
            raise ValueError(f"{path}: positions must be exactly 1..{len(entries)}")
        entries.sort()
        teams = [team for _, team in entries]
    if len(set(teams)) != len(teams):
        raise ValueError(f"{path}: duplicate team names")
    if len(teams) < 2:
        raise ValueError(f"{path}: need at least 2 teams")
    return teams


def _cmd_stats(args: argparse.Namespace) -> int:
    stats = permstats.score_stats(args.n, oracle_cap=args.oracle_cap)
    fields: list[tuple[str, object]] = [
        ("n", stats.n),
        ("expected_score", stats.expected_score),
        ("expected_mae", stats.expected_mae),
        ("variance_score", stats.variance_score),
        ("variance_mae", stats.variance_mae),
        ("max_score", stats.max_score),
        ("max_mae", stats.max_mae),
        ("worst_count", stats.worst_count),
        ("worst_probability", stats.worst_probability),
        ("correct_probability", stats.correct_probability),
        ("generalized", stats.generalized),
    ]
    with _out(args.output) as fh:
        if args.format == "json":
            obj = {}
            for name, value in fields:
                if isinstance(value, Fraction):
                    obj[name] = _exact(value)
                else:
                    obj[name] = value
            _emit_json(obj, fh)
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["field", "exact", "decimal"])
            for name, value in fields:
                if value is None:
                    writer.writerow([name, "", ""])
                elif isinstance(value, Fraction):
                    writer.writerow([name, str(value), repr(float(value))])
                elif isinstance(value, bool):
                    writer.writerow([name, str(value).lower(), str(value).lower()])
                else:
                    writer.writerow([name, value, value])
    return 0


_RANGE_RE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


def _parse_range(text: str) -> tuple[int, int]:
    m = _RANGE_RE.match(text.strip())
    if not m:
        raise ValueError(f"range must look like 4 or 2..8, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _verify_exact(lo: int, hi: int, cap: int) -> tuple[list[str], bool]:
    lines = []
    ok = True

    def check(n: int, name: str, got, want) -> None:
        nonlocal ok
        if got == want:
            lines.append(f"n={n} {name}: PASS")
        else:
            ok = False
            lines.append(f"n={n} {name}: FAIL (enumerated {got}, closed form {want})")

    for n in range(lo, hi + 1):
        dist = permstats.brute_force_distribution(n, max_n=cap)
        mean, variance, top, top_count = permstats.distribution_moments(dist)
        stats = permstats.score_stats(n, oracle_cap=cap)
        check(n, "expected_score", mean, stats.expected_score)
        check(n, "variance_score", variance, stats.variance_score)
        check(n, "max_score", top, stats.max_score)
        if n % 2 == 0:
            check(n, "worst_count", top_count, stats.worst_count)
        else:
            lines.append(f"n={n} worst_count: SKIP (no closed form for odd n)")
    return lines, ok


def _verify_mc(n: int, samples: int, seed: int) -> tuple[list[str], bool]:
    stats = permstats.score_stats(n)
    summary = permstats.monte_carlo_mae(n, samples, seed)
    tolerance = 3.0 * math.sqrt(float(stats.variance_mae) / samples)
    delta = abs(float(summary.mean) - float(stats.expected_mae))
    verdict = "PASS" if delta <= tolerance else "FAIL"
    line = (
        f"n={n} mc_mean_mae: {verdict} (sample {float(summary.mean):.6f}, "
        f"expected {float(stats.expected_mae):.6f}, tolerance {tolerance:.6f}, "
        f"samples {samples}, seed {seed})"
    )
    return [line], verdict == "PASS"


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.exact is None and not args.mc:
        raise ValueError("choose --exact RANGE and/or --mc")
    if args.samples is not None and args.seed is None:
        raise ValueError("--samples requires --seed for reproducibility")
    lines: list[str] = []
    ok = True
    if args.exact is not None:
        lo, hi = _parse_range(args.exact)
        if lo < 2:
            raise ValueError(f"league size must be at least 2, got {lo}")
        if hi > args.oracle_cap:
            raise ValueError(
                f"exact range ends at {hi}, above the oracle cap {args.oracle_cap}"
            )
        exact_lines, exact_ok = _verify_exact(lo, hi, args.oracle_cap)
        lines.extend(exact_lines)
        ok = ok and exact_ok
    if args.mc:
        if args.n is None or args.samples is None or args.seed is None:
            raise ValueError("--mc requires --n, --samples and --seed")
        mc_lines, mc_ok = _verify_mc(args.n, args.samples, args.seed)
        lines.extend(mc_lines)
        ok = ok and mc_ok
    for line in lines:
        print(line)
    return 0 if ok else 1


def _cmd_mae(args: argparse.Namespace) -> int:
    actual_order = read_table_file(args.actual)
    predicted_order = read_table_file(args.pred)
    ranking = permstats.ranking_from_orders(actual_order, predicted_order)
    payload = {
        "footrule": permstats.footrule_score(ranking),
        "mae": float(permstats.mae(ranking)),
        "mse": float(permstats.mse(ranking)),
    }
    with _out(args.output) as fh:
        if args.format == "json":
            _emit_json(payload, fh)
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["footrule", "mae", "mse"])
            writer.writerow(
                [payload["footrule"], repr(payload["mae"]), repr(payload["mse"])]
            )
    return 0


def _cmd_r2(args: argparse.Namespace) -> int:
    dataset = league.parse_matches(args.matches)
    curves = [regression.r2_curve(dataset, kind) for kind in regression.CURVE_KINDS]
    thresholds = None
    if args.threshold is not None:
        thresholds = {
            curve.kind: regression.threshold_round(curve, args.threshold)
            for curve in curves
        }
    with _out(args.output) as fh:
        if args.format == "json":
            obj: dict = {"records": regression.curve_records(curves)}
            if thresholds is not None:
                obj["threshold"] = args.threshold
                obj["threshold_rounds"] = thresholds
            _emit_json(obj, fh)
        else:
            regression.curves_to_csv(curves, fh)
    if thresholds is not None and args.format == "csv":
        for kind, rnd in thresholds.items():
            where = "never" if rnd is None else f"round {rnd}"
            print(f"{kind}: reaches {args.threshold} at {where}", file=sys.stderr)
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    dataset = league.parse_matches(args.matches)
    rnd = dataset.rounds if args.round is None else args.round
    table = league.standings_at_round(dataset, rnd)
    if args.strategy == predictor.STRATEGY_GD:
        order = predictor.predicted_order_by_gd(table)
    else:
        order = predictor.predicted_order_by_rank(table)
    with _out(args.output) as fh:
        if args.format == "json":
            _emit_json(list(order), fh)
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(TABLE_FIELDS)
            for position, team in enumerate(order, start=1):
                writer.writerow([position, team])
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    dataset = league.parse_matches(args.matches)
    report = predictor.evaluate_season(
        dataset, baseline_fraction=args.baseline_fraction
    )
    with _out(args.output) as fh:
        if args.format == "json":
            _emit_json(
                {
                    "records": predictor.report_records(report),
                    "summary": predictor.report_summary(report),
                },
                fh,
            )
        else:
            predictor.report_to_csv(report, fh)
    if args.summary is not None:
        with open(args.summary, "w", encoding="utf-8") as fh:
            _emit_json(predictor.report_summary(report), fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    output_flags = argparse.ArgumentParser(add_help=False)
    output_flags.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output encoding"
    )
    output_flags.add_argument(
        "--output", metavar="PATH", help="write output here instead of stdout"
    )

    parser = argparse.ArgumentParser(
        prog="tableguess",
        description="Score table predictions and build parsimonious forecasts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "stats", parents=[output_flags], help="exact random-guess statistics for a league of size n"
    )
    p.add_argument("--n", type=int, required=True, help="league size")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser(
        "verify", help="check the closed forms against enumeration and Monte Carlo"
    )
    p.add_argument("--exact", metavar="RANGE", help="league sizes to enumerate, e.g. 2..8")
    p.add_argument("--mc", action="store_true", help="run the Monte Carlo check")
    p.add_argument("--n", type=int, help="league size for --mc")
    p.add_argument("--samples", type=int, help="sample count for --mc")
    p.add_argument("--seed", type=int, help="seed for --mc")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser(
        "mae", parents=[output_flags], help="score a predicted table against the actual one"
    )
    p.add_argument("--pred", required=True, metavar="PATH", help="predicted table file")
    p.add_argument("--actual", required=True, metavar="PATH", help="actual table file")
    p.set_defaults(func=_cmd_mae)

    p = sub.add_parser(
        "r2", parents=[output_flags], help="per-round explanatory-power curves from match data"
    )
    p.add_argument("matches", help="match CSV file")
    p.add_argument("--threshold", type=float, help="also report when each curve reaches this")
    p.set_defaults(func=_cmd_r2)

    p = sub.add_parser(
        "predict", parents=[output_flags], help="predicted final table from a given round"
    )
    p.add_argument("matches", help="match CSV file")
    p.add_argument("--round", type=int, help="round to predict from (default: last)")
    p.add_argument(
        "--strategy", choices=predictor.STRATEGIES, default=predictor.STRATEGY_RANK
    )
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser(
        "evaluate", parents=[output_flags], help="score both strategies at every round"
    )
    p.add_argument("matches", help="match CSV file")
    p.add_argument(
        "--baseline-fraction",
        type=float,
        default=0.5,
        help="threshold as a fraction of the random-guess MAE (default 0.5)",
    )
    p.add_argument("--summary", metavar="PATH", help="also write the JSON summary here")
    p.set_defaults(func=_cmd_evaluate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
