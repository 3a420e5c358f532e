import io

import pytest

from tableguess import league
from tableguess.bundled import (
    MERSON_PREDICTION,
    PL_FINAL,
    SYNTHETIC_SEASON,
    bundled_path,
)
from tableguess.cli import read_table_file
from tableguess.permstats import Ranking, ranking_from_orders

# Deviations column of the 2016/17 PL prediction fixture: predicted place of
# the team that finished i-th.
MERSON_PLACES = (1, 6, 2, 5, 4, 3, 8, 9, 18, 17, 7, 11, 10, 12, 15, 20, 16, 19, 13, 14)

# round-robin fixture where the table after every round equals the final table
FLAT_SEASON_CSV = """\
season,round,home_team,away_team,home_goals,away_goals
flat,1,A,D,3,0
flat,1,B,C,1,0
flat,2,A,C,2,0
flat,2,B,D,1,0
flat,3,A,B,1,0
flat,3,C,D,1,0
"""

# opening round is all draws, so goal difference is degenerate at round 1
DRAWISH_SEASON_CSV = """\
season,round,home_team,away_team,home_goals,away_goals
drawish,1,A,B,0,0
drawish,1,C,D,0,0
drawish,2,A,C,1,0
drawish,2,B,D,2,0
"""


@pytest.fixture
def merson_ranking() -> Ranking:
    return Ranking(MERSON_PLACES)


@pytest.fixture
def merson_files() -> tuple[str, str]:
    return str(bundled_path(MERSON_PREDICTION)), str(bundled_path(PL_FINAL))


@pytest.fixture
def merson_from_files(merson_files) -> Ranking:
    pred_path, actual_path = merson_files
    return ranking_from_orders(read_table_file(actual_path), read_table_file(pred_path))


@pytest.fixture
def synthetic_path() -> str:
    return str(bundled_path(SYNTHETIC_SEASON))


@pytest.fixture
def synthetic_dataset(synthetic_path) -> league.SeasonDataset:
    return league.parse_matches(synthetic_path)


@pytest.fixture
def flat_dataset() -> league.SeasonDataset:
    return league.parse_matches(io.StringIO(FLAT_SEASON_CSV))


@pytest.fixture
def drawish_dataset() -> league.SeasonDataset:
    return league.parse_matches(io.StringIO(DRAWISH_SEASON_CSV))
