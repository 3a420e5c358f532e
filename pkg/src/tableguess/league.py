"""Match ingestion and round-by-round league standings.

Match files are plain CSV with header
``season,round,home_team,away_team,home_goals,away_goals``, one row per
match. Standings use 3/1/0 points and a fully deterministic ordering:
points desc, goal difference desc, goals for desc, team name asc. The name
fallback makes every table a total order, which downstream code relies on
to build valid permutations.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .permstats import Ranking

MATCH_FIELDS = ("season", "round", "home_team", "away_team", "home_goals", "away_goals")
STANDINGS_FIELDS = (
    "round",
    "rank",
    "team",
    "played",
    "won",
    "drawn",
    "lost",
    "gf",
    "ga",
    "gd",
    "points",
)


class MatchFileError(ValueError):
    """A match file failed validation; the message names the offending line."""


@dataclass(frozen=True)
class MatchRecord:
    season: str
    round: int
    home_team: str
    away_team: str
    home_goals: int
    away_goals: int

    def __post_init__(self) -> None:
        if self.round < 1:
            raise ValueError(f"round must be >= 1, got {self.round}")
        if self.home_goals < 0 or self.away_goals < 0:
            raise ValueError("goals must be nonnegative")
        if self.home_team == self.away_team:
            raise ValueError(f"{self.home_team!r} cannot play itself")


@dataclass(frozen=True)
class SeasonDataset:
    season: str
    teams: tuple[str, ...]
    matches: tuple[MatchRecord, ...]
    rounds: int


@dataclass(frozen=True)
class StandingsRow:
    team: str
    played: int
    won: int
    drawn: int
    lost: int
    goals_for: int
    goals_against: int
    goal_difference: int
    points: int
    rank: int


@dataclass(frozen=True)
class StandingsTable:
    season: str
    round: int
    rows: tuple[StandingsRow, ...]


def build_dataset(matches: Iterable[MatchRecord]) -> SeasonDataset:
    """Assemble and validate a dataset from already-parsed match records."""
    records = tuple(matches)
    if not records:
        raise MatchFileError("no matches given")
    season = records[0].season
    seen: set[tuple[int, str]] = set()
    teams: set[str] = set()
    for m in records:
        if m.season != season:
            raise MatchFileError(
                f"mixed season ids in one dataset: {season!r} and {m.season!r}"
            )
        for team in (m.home_team, m.away_team):
            key = (m.round, team)
            if key in seen:
                raise MatchFileError(
                    f"team {team!r} appears twice in round {m.round}"
                )
            seen.add(key)
            teams.add(team)
    return SeasonDataset(
        season=season,
        teams=tuple(sorted(teams)),
        matches=records,
        rounds=max(m.round for m in records),
    )


def _parse_int(value: str, field: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise MatchFileError(
            f"line {line}: {field} must be an integer, got {value!r}"
        ) from None


def parse_matches(source: str | Path | IO[str]) -> SeasonDataset:
    """Read and validate a match CSV into a single-season dataset."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return parse_matches(fh)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise MatchFileError("empty input: no header row") from None
    header = [h.strip() for h in header]
    if set(header) != set(MATCH_FIELDS) or len(header) != len(MATCH_FIELDS):
        raise MatchFileError(
            f"line 1: expected header {','.join(MATCH_FIELDS)}, got {','.join(header)}"
        )
    col = {name: header.index(name) for name in MATCH_FIELDS}
    matches: list[MatchRecord] = []
    season: str | None = None
    seen: set[tuple[int, str]] = set()
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(MATCH_FIELDS):
            raise MatchFileError(
                f"line {line}: expected {len(MATCH_FIELDS)} fields, got {len(row)}"
            )
        rnd = _parse_int(row[col["round"]], "round", line)
        home = row[col["home_team"]].strip()
        away = row[col["away_team"]].strip()
        record_season = row[col["season"]].strip()
        try:
            record = MatchRecord(
                season=record_season,
                round=rnd,
                home_team=home,
                away_team=away,
                home_goals=_parse_int(row[col["home_goals"]], "home_goals", line),
                away_goals=_parse_int(row[col["away_goals"]], "away_goals", line),
            )
        except ValueError as exc:
            raise MatchFileError(f"line {line}: {exc}") from None
        if season is None:
            season = record_season
        elif record_season != season:
            raise MatchFileError(
                f"line {line}: mixed season ids {season!r} and {record_season!r}"
            )
        for team in (home, away):
            key = (rnd, team)
            if key in seen:
                raise MatchFileError(
                    f"line {line}: team {team!r} appears twice in round {rnd}"
                )
            seen.add(key)
        matches.append(record)
    if not matches:
        raise MatchFileError("empty input: no match rows")
    return build_dataset(matches)


class _Tally:
    __slots__ = ("played", "won", "drawn", "lost", "gf", "ga")

    def __init__(self) -> None:
        self.played = self.won = self.drawn = self.lost = self.gf = self.ga = 0

    def add(self, scored: int, conceded: int) -> None:
        self.played += 1
        self.gf += scored
        self.ga += conceded
        if scored > conceded:
            self.won += 1
        elif scored == conceded:
            self.drawn += 1
        else:
            self.lost += 1


def _table(season: str, rnd: int, tallies: dict[str, _Tally]) -> StandingsTable:
    def sort_key(item: tuple[str, _Tally]):
        team, t = item
        points = 3 * t.won + t.drawn
        return (-points, -(t.gf - t.ga), -t.gf, team)

    rows = []
    for rank, (team, t) in enumerate(sorted(tallies.items(), key=sort_key), start=1):
        rows.append(
            StandingsRow(
                team=team,
                played=t.played,
                won=t.won,
                drawn=t.drawn,
                lost=t.lost,
                goals_for=t.gf,
                goals_against=t.ga,
                goal_difference=t.gf - t.ga,
                points=3 * t.won + t.drawn,
                rank=rank,
            )
        )
    return StandingsTable(season=season, round=rnd, rows=tuple(rows))


def standings_series(dataset: SeasonDataset) -> list[StandingsTable]:
    """Standings after each round 1..R, computed in one pass."""
    tallies = {team: _Tally() for team in dataset.teams}
    by_round: dict[int, list[MatchRecord]] = {}
    for m in dataset.matches:
        by_round.setdefault(m.round, []).append(m)
    tables = []
    for rnd in range(1, dataset.rounds + 1):
        for m in by_round.get(rnd, ()):
            tallies[m.home_team].add(m.home_goals, m.away_goals)
            tallies[m.away_team].add(m.away_goals, m.home_goals)
        tables.append(_table(dataset.season, rnd, tallies))
    return tables


def standings_at_round(dataset: SeasonDataset, r: int) -> StandingsTable:
    """Table after all matches with round <= r.

    Postponed matches are fine: teams may show unequal played counts.
    """
    if not 1 <= r <= dataset.rounds:
        raise ValueError(f"round must be in 1..{dataset.rounds}, got {r}")
    tallies = {team: _Tally() for team in dataset.teams}
    for m in dataset.matches:
        if m.round <= r:
            tallies[m.home_team].add(m.home_goals, m.away_goals)
            tallies[m.away_team].add(m.away_goals, m.home_goals)
    return _table(dataset.season, r, tallies)


def final_standings(dataset: SeasonDataset) -> StandingsTable:
    return standings_at_round(dataset, dataset.rounds)


def _check_order(table: StandingsTable, team_order: Sequence[str]) -> None:
    table_teams = {row.team for row in table.rows}
    order_teams = set(team_order)
    if len(order_teams) != len(team_order):
        raise ValueError("team order contains duplicates")
    missing = order_teams - table_teams
    if missing:
        raise ValueError(f"teams not in table: {sorted(missing)}")
    if table_teams - order_teams:
        raise ValueError(f"teams missing from order: {sorted(table_teams - order_teams)}")


def rank_vector(table: StandingsTable, team_order: Sequence[str]) -> Ranking:
    """Each team's rank in ``table``, listed in ``team_order``.

    With the final-table order this is exactly the prediction permutation:
    entry i is the current place of the team that finished i-th.
    """
    _check_order(table, team_order)
    rank = {row.team: row.rank for row in table.rows}
    return Ranking(tuple(rank[team] for team in team_order))


def gd_vector(table: StandingsTable, team_order: Sequence[str]) -> tuple[int, ...]:
    """Each team's goal difference in ``table``, listed in ``team_order``."""
    _check_order(table, team_order)
    gd = {row.team: row.goal_difference for row in table.rows}
    return tuple(gd[team] for team in team_order)


def standings_records(table: StandingsTable) -> list[dict]:
    """Row dicts in the wire-format field order (gf/ga/gd short names)."""
    return [
        {
            "round": table.round,
            "rank": row.rank,
            "team": row.team,
            "played": row.played,
            "won": row.won,
            "drawn": row.drawn,
            "lost": row.lost,
            "gf": row.goals_for,
            "ga": row.goals_against,
            "gd": row.goal_difference,
            "points": row.points,
        }
        for row in table.rows
    ]


def standings_to_csv(table: StandingsTable, fh: IO[str]) -> None:
    writer = csv.DictWriter(fh, fieldnames=STANDINGS_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(standings_records(table))


def parse_standings_csv(fh: IO[str]) -> list[dict]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None or tuple(reader.fieldnames) != STANDINGS_FIELDS:
        raise ValueError(f"expected header {','.join(STANDINGS_FIELDS)}")
    out = []
    for rec in reader:
        out.append(
            {
                key: (rec[key] if key == "team" else int(rec[key]))
                for key in STANDINGS_FIELDS
            }
        )
    return out


def matches_to_csv(dataset: SeasonDataset, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(MATCH_FIELDS)
    for m in dataset.matches:
        writer.writerow(
            [m.season, m.round, m.home_team, m.away_team, m.home_goals, m.away_goals]
        )


def synthetic_season(
    n_teams: int = 14, *, seed: int = 0, season: str | None = None
) -> SeasonDataset:
    """A double round-robin season with seeded random scorelines.

    Uses the circle method, so n teams give 2(n-1) rounds and each pair
    meets twice with home advantage swapped. Odd team counts get a bye per
    round. Goal counts are drawn uniformly from 0..4.
    """
    if n_teams < 2:
        raise ValueError(f"need at least 2 teams, got {n_teams}")
    if season is None:
        season = f"synthetic-{n_teams}t-s{seed}"
    teams: list[str | None] = [f"Team{i:02d}" for i in range(1, n_teams + 1)]
    if n_teams % 2:
        teams.append(None)
    half = len(teams) // 2
    rng = random.Random(seed)
    rotation = teams[1:]
    matches: list[MatchRecord] = []
    single_rounds = len(teams) - 1
    for cycle in range(2):
        for k in range(single_rounds):
            rnd = cycle * single_rounds + k + 1
            lineup = [teams[0]] + rotation[k:] + rotation[:k]
            for i in range(half):
                a, b = lineup[i], lineup[-1 - i]
                if a is None or b is None:
                    continue
                home, away = (a, b) if (i + k + cycle) % 2 == 0 else (b, a)
                matches.append(
                    MatchRecord(
                        season=season,
                        round=rnd,
                        home_team=home,
                        away_team=away,
                        home_goals=rng.randint(0, 4),
                        away_goals=rng.randint(0, 4),
                    )
                )
    return build_dataset(matches)
