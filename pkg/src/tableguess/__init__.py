"""Footrule metrics, exact random-guess statistics, and parsimonious
forecasts for football league tables."""

from .league import (
    MatchFileError,
    MatchRecord,
    SeasonDataset,
    StandingsRow,
    StandingsTable,
    final_standings,
    gd_vector,
    parse_matches,
    rank_vector,
    standings_at_round,
    standings_series,
    synthetic_season,
)
from .permstats import (
    DimensionMismatchError,
    MonteCarloSummary,
    OracleCapError,
    Ranking,
    ScoreDistribution,
    ScoreStats,
    brute_force_distribution,
    distribution_moments,
    footrule_score,
    identity,
    mae,
    monte_carlo_mae,
    mse,
    parse_ranking,
    ranking_from_orders,
    render_ranking,
    reversal,
    score_stats,
)
from .predictor import (
    ForecastReport,
    evaluate_season,
    predict_by_gd,
    predict_by_rank,
)
from .regression import (
    DegeneratePredictorError,
    OlsFit,
    R2Curve,
    r2_curve,
    simple_ols,
    threshold_round,
)

__version__ = "0.1.0"

__all__ = [
    "DegeneratePredictorError",
    "DimensionMismatchError",
    "ForecastReport",
    "MatchFileError",
    "MatchRecord",
    "MonteCarloSummary",
    "OlsFit",
    "OracleCapError",
    "R2Curve",
    "Ranking",
    "ScoreDistribution",
    "ScoreStats",
    "SeasonDataset",
    "StandingsRow",
    "StandingsTable",
    "brute_force_distribution",
    "distribution_moments",
    "evaluate_season",
    "final_standings",
    "footrule_score",
    "gd_vector",
    "identity",
    "mae",
    "monte_carlo_mae",
    "mse",
    "parse_matches",
    "parse_ranking",
    "predict_by_gd",
    "predict_by_rank",
    "r2_curve",
    "rank_vector",
    "ranking_from_orders",
    "render_ranking",
    "reversal",
    "score_stats",
    "simple_ols",
    "standings_at_round",
    "standings_series",
    "synthetic_season",
    "threshold_round",
]
