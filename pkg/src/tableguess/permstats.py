"""Permutation-distance metrics for table predictions and their exact
statistics under uniform random guessing.

A prediction is a permutation of the true final order: entry i holds the
predicted place of the team that actually finished i-th. All metrics and
closed forms are exact (integers and ``Fraction``); floats appear only in
Monte Carlo summaries and rendered output.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterator, Sequence

from . import _kernels

DEFAULT_ORACLE_CAP = 9


class DimensionMismatchError(ValueError):
    """Two rankings of different length were compared."""


class OracleCapError(ValueError):
    """Enumeration was requested beyond the configured factorial cap."""


@dataclass(frozen=True)
class Ranking:
    """A bijection on 1..n: places[i-1] is the predicted place of the team
    that finished i-th."""

    places: tuple[int, ...]

    def __post_init__(self) -> None:
        places = tuple(operator.index(p) for p in self.places)
        object.__setattr__(self, "places", places)
        n = len(places)
        if n < 2:
            raise ValueError(f"a ranking needs at least 2 entries, got {n}")
        if sorted(places) != list(range(1, n + 1)):
            raise ValueError(
                f"places must be a permutation of 1..{n}, got {places}"
            )

    @property
    def n(self) -> int:
        return len(self.places)

    def __len__(self) -> int:
        return len(self.places)

    def __iter__(self) -> Iterator[int]:
        return iter(self.places)


def identity(n: int) -> Ranking:
    """The perfect guess: every team placed where it finished."""
    return Ranking(tuple(range(1, n + 1)))


def reversal(n: int) -> Ranking:
    """The order-reversing guess; attains the maximal score for even n."""
    return Ranking(tuple(range(n, 0, -1)))


def ranking_from_orders(
    actual_order: Sequence[Hashable], predicted_order: Sequence[Hashable]
) -> Ranking:
    """Build a Ranking from two orderings of the same labels.

    ``actual_order`` lists labels by true final position, ``predicted_order``
    by predicted position; entry i of the result is the predicted place of
    ``actual_order[i-1]``.
    """
    if len(actual_order) != len(predicted_order):
        raise DimensionMismatchError(
            f"orders differ in length: {len(actual_order)} vs {len(predicted_order)}"
        )
    place = {label: k for k, label in enumerate(predicted_order, start=1)}
    if len(place) != len(predicted_order):
        raise ValueError("predicted order contains duplicate labels")
    try:
        return Ranking(tuple(place[label] for label in actual_order))
    except KeyError as exc:
        raise ValueError(f"label {exc.args[0]!r} missing from predicted order") from None


def parse_ranking(text: str) -> Ranking:
    """Deserialize a ranking: a JSON array or one integer per line, 1-based."""
    stripped = text.strip()
    if stripped.startswith("["):
        values = json.loads(stripped)
        if not all(isinstance(v, int) for v in values):
            raise ValueError("JSON ranking must be an array of integers")
    else:
        values = [int(line) for line in stripped.splitlines() if line.strip()]
    return Ranking(tuple(values))


def render_ranking(ranking: Ranking | Sequence[int], fmt: str = "csv") -> str:
    """Serialize a ranking as a single CSV column or a JSON array."""
    places = _coerce(ranking).places
    if fmt == "json":
        return json.dumps(list(places))
    if fmt == "csv":
        return "\n".join(str(p) for p in places) + "\n"
    raise ValueError(f"format must be csv or json, got {fmt!r}")


def _coerce(ranking: Ranking | Sequence[int]) -> Ranking:
    return ranking if isinstance(ranking, Ranking) else Ranking(tuple(ranking))


def _pair(
    pred: Ranking | Sequence[int], actual: Ranking | Sequence[int] | None
) -> tuple[Ranking, Ranking]:
    p = _coerce(pred)
    a = identity(p.n) if actual is None else _coerce(actual)
    if p.n != a.n:
        raise DimensionMismatchError(f"ranking sizes differ: {p.n} vs {a.n}")
    return p, a


def footrule_score(
    pred: Ranking | Sequence[int], actual: Ranking | Sequence[int] | None = None
) -> int:
    """Sum of absolute place errors; 0 iff the prediction is exact.

    ``actual`` defaults to the identity (true final order).
    """
    p, a = _pair(pred, actual)
    return sum(abs(x - y) for x, y in zip(p.places, a.places))


def mae(
    pred: Ranking | Sequence[int], actual: Ranking | Sequence[int] | None = None
) -> Fraction:
    """Mean absolute place error as an exact rational."""
    p, a = _pair(pred, actual)
    return Fraction(footrule_score(p, a), p.n)


def mse(
    pred: Ranking | Sequence[int], actual: Ranking | Sequence[int] | None = None
) -> Fraction:
    """Mean squared place error as an exact rational."""
    p, a = _pair(pred, actual)
    return Fraction(sum((x - y) ** 2 for x, y in zip(p.places, a.places)), p.n)


@dataclass(frozen=True)
class ScoreStats:
    """Exact distributional summary of the score and MAE of a uniformly
    random guess for a league of size n.

    For odd n the maximum and its count fall outside the closed-form theory
    (which assumes n even): the maximum uses the floor(n^2/2) generalisation,
    the count comes from enumeration and is None beyond the oracle cap. Such
    values carry ``generalized=True``.
    """

    n: int
    expected_score: Fraction
    expected_mae: Fraction
    variance_score: Fraction
    variance_mae: Fraction
    max_score: int
    max_mae: Fraction
    worst_count: int | None
    worst_probability: Fraction | None
    correct_probability: Fraction
    generalized: bool


def score_stats(n: int, *, oracle_cap: int = DEFAULT_ORACLE_CAP) -> ScoreStats:
    """Evaluate every closed form exactly for a league of size n."""
    if n < 2:
        raise ValueError(f"league size must be at least 2, got {n}")
    expected_score = Fraction(n * n - 1, 3)
    variance_score = Fraction((n + 1) * (2 * n * n + 7), 45)
    max_score = n * n // 2
    if n % 2 == 0:
        worst_count: int | None = math.factorial(n // 2) ** 2
        generalized = False
    elif n <= oracle_cap:
        counts = _kernels.score_distribution_counts(n)
        top = max(s for s, c in enumerate(counts) if c)
        if top != max_score:
            raise AssertionError(
                f"enumerated maximum {top} disagrees with floor(n^2/2) for n={n}"
            )
        worst_count = int(counts[top])
        generalized = True
    else:
        worst_count = None
        generalized = True
    worst_probability = (
        Fraction(worst_count, math.factorial(n)) if worst_count is not None else None
    )
    return ScoreStats(
        n=n,
        expected_score=expected_score,
        expected_mae=expected_score / n,
        variance_score=variance_score,
        variance_mae=variance_score / n**2,
        max_score=max_score,
        max_mae=Fraction(max_score, n),
        worst_count=worst_count,
        worst_probability=worst_probability,
        correct_probability=Fraction(1, math.factorial(n)),
        generalized=generalized,
    )


@dataclass(frozen=True)
class ScoreDistribution:
    """Exact distribution of the footrule score over all n! permutations."""

    n: int
    counts: dict[int, int]


def brute_force_distribution(
    n: int, *, max_n: int = DEFAULT_ORACLE_CAP
) -> ScoreDistribution:
    """Enumerate all n! permutations and tally their scores.

    The independent oracle behind the closed forms; refuses n above the cap
    because the factorial blowup is never worth it for testing.
    """
    if n < 2:
        raise ValueError(f"league size must be at least 2, got {n}")
    if n > max_n:
        raise OracleCapError(
            f"enumeration of {n}! permutations exceeds the cap of {max_n}; "
            f"raise max_n explicitly if you really want this"
        )
    counts = _kernels.score_distribution_counts(n)
    return ScoreDistribution(
        n=n, counts={s: int(c) for s, c in enumerate(counts) if c}
    )


def distribution_moments(
    dist: ScoreDistribution,
) -> tuple[Fraction, Fraction, int, int]:
    """Exact (mean, variance, max, count at max) of an enumerated distribution."""
    total = math.factorial(dist.n)
    mean = Fraction(sum(s * c for s, c in dist.counts.items()), total)
    second = Fraction(sum(s * s * c for s, c in dist.counts.items()), total)
    top = max(dist.counts)
    return mean, second - mean**2, top, dist.counts[top]


@dataclass(frozen=True)
class MonteCarloSummary:
    """Sample summary of MAE over uniform random guesses.

    ``variance`` is the population variance of the sampled MAE values. All
    fields are exact rationals derived from integer score moments, so equal
    seeds give equal summaries bit for bit.
    """

    n: int
    samples: int
    seed: int
    mean: Fraction
    variance: Fraction
    minimum: Fraction
    maximum: Fraction


def monte_carlo_mae(n: int, samples: int, seed: int) -> MonteCarloSummary:
    """Sample ``samples`` uniform random guesses and summarise their MAE.

    Reproducible for a fixed (n, samples, seed) regardless of backend,
    chunking, or parallelism; see tableguess._kernels for the guarantee.
    """
    if n < 2:
        raise ValueError(f"league size must be at least 2, got {n}")
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    total, total_sq, lo, hi = _kernels.mc_score_moments(n, samples, seed)
    mean = Fraction(total, samples * n)
    variance = Fraction(
        samples * total_sq - total * total, samples * samples * n * n
    )
    return MonteCarloSummary(
        n=n,
        samples=samples,
        seed=int(seed),
        mean=mean,
        variance=variance,
        minimum=Fraction(lo, n),
        maximum=Fraction(hi, n),
    )
