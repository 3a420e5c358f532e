"""Parsimonious table forecasts and their evaluation against the final table.

Two strategies, both model-free: predict the final table to be the current
table ("rank"), or the teams sorted by current goal difference ("gd"). The
season report scores both at every round against the random-guess baseline
so the early-season gd advantage, when present, is visible rather than
baked in.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

from . import league, permstats
from .league import SeasonDataset, StandingsTable
from .permstats import Ranking

STRATEGY_RANK = "rank"
STRATEGY_GD = "gd"
STRATEGIES = (STRATEGY_RANK, STRATEGY_GD)
REPORT_FIELDS = ("season", "round", "strategy", "mae", "mse")


def predicted_order_by_rank(table: StandingsTable) -> tuple[str, ...]:
    """Predicted final order = the current table order."""
    return tuple(row.team for row in table.rows)


def predicted_order_by_gd(table: StandingsTable) -> tuple[str, ...]:
    """Predicted final order = teams sorted by goal difference.

    Ties fall back to points, goals for, then name, so the order is total.
    """
    return tuple(
        row.team
        for row in sorted(
            table.rows,
            key=lambda r: (-r.goal_difference, -r.points, -r.goals_for, r.team),
        )
    )


def predict_by_rank(table: StandingsTable, final_order: Sequence[str]) -> Ranking:
    """Current-table prediction expressed against the final-table index."""
    return permstats.ranking_from_orders(final_order, predicted_order_by_rank(table))


def predict_by_gd(table: StandingsTable, final_order: Sequence[str]) -> Ranking:
    """Goal-difference prediction expressed against the final-table index."""
    return permstats.ranking_from_orders(final_order, predicted_order_by_gd(table))


@dataclass(frozen=True)
class RoundForecast:
    round: int
    strategy: str
    ranking: Ranking
    mae: Fraction
    mse: Fraction


@dataclass(frozen=True)
class ForecastReport:
    """Per-round forecast quality for both strategies over one season.

    ``threshold_rounds`` holds, per strategy, the earliest round whose MAE
    drops below ``baseline_fraction`` times the random-guess expectation.
    ``gd_better_rounds`` lists rounds where gd strictly beats rank.
    """

    season: str
    n: int
    baseline_expected_mae: Fraction
    baseline_fraction: float
    records: tuple[RoundForecast, ...]
    threshold_rounds: dict[str, int | None]
    gd_better_rounds: tuple[int, ...]


def evaluate_season(
    dataset: SeasonDataset, *, baseline_fraction: float = 0.5
) -> ForecastReport:
    """Score both strategies at every round against the final table."""
    if not 0.0 < baseline_fraction:
        raise ValueError(f"baseline fraction must be positive, got {baseline_fraction}")
    series = league.standings_series(dataset)
    final_order = [row.team for row in series[-1].rows]
    n = len(final_order)
    baseline = permstats.score_stats(n).expected_mae
    cutoff = baseline_fraction * float(baseline)
    records: list[RoundForecast] = []
    threshold_rounds: dict[str, int | None] = {s: None for s in STRATEGIES}
    gd_better: list[int] = []
    for table in series:
        by_strategy: dict[str, Fraction] = {}
        for strategy, predict in (
            (STRATEGY_RANK, predict_by_rank),
            (STRATEGY_GD, predict_by_gd),
        ):
            ranking = predict(table, final_order)
            value = permstats.mae(ranking)
            by_strategy[strategy] = value
            records.append(
                RoundForecast(
                    round=table.round,
                    strategy=strategy,
                    ranking=ranking,
                    mae=value,
                    mse=permstats.mse(ranking),
                )
            )
            if threshold_rounds[strategy] is None and float(value) < cutoff:
                threshold_rounds[strategy] = table.round
        if by_strategy[STRATEGY_GD] < by_strategy[STRATEGY_RANK]:
            gd_better.append(table.round)
    return ForecastReport(
        season=dataset.season,
        n=n,
        baseline_expected_mae=baseline,
        baseline_fraction=baseline_fraction,
        records=tuple(records),
        threshold_rounds=threshold_rounds,
        gd_better_rounds=tuple(gd_better),
    )


def report_records(report: ForecastReport) -> list[dict]:
    return [
        {
            "season": report.season,
            "round": rec.round,
            "strategy": rec.strategy,
            "mae": float(rec.mae),
            "mse": float(rec.mse),
        }
        for rec in report.records
    ]


def report_summary(report: ForecastReport) -> dict:
    """The JSON summary object: baseline stats plus threshold/crossover info."""
    return {
        "season": report.season,
        "n": report.n,
        "baseline_expected_mae": {
            "exact": str(report.baseline_expected_mae),
            "decimal": float(report.baseline_expected_mae),
        },
        "baseline_fraction": report.baseline_fraction,
        "threshold_rounds": dict(report.threshold_rounds),
        "gd_better_rounds": list(report.gd_better_rounds),
    }


def report_to_csv(report: ForecastReport, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for rec in report_records(report):
        writer.writerow(
            [rec["season"], rec["round"], rec["strategy"], repr(rec["mae"]), repr(rec["mse"])]
        )


def parse_report_csv(fh: IO[str]) -> list[dict]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None or tuple(reader.fieldnames) != REPORT_FIELDS:
        raise ValueError(f"expected header {','.join(REPORT_FIELDS)}")
    return [
        {
            "season": rec["season"],
            "round": int(rec["round"]),
            "strategy": rec["strategy"],
            "mae": float(rec["mae"]),
            "mse": float(rec["mse"]),
        }
        for rec in reader
    ]
