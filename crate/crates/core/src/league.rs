//! Fixture lists and expected-points standings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scoremodel::{predict_match, ForecastOptions, MatchForecast};
use crate::strength::{LeagueAverages, StrengthTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fixture {
    pub home_team: String,
    pub away_team: String,
}

impl Fixture {
    pub fn new(home_team: impl Into<String>, away_team: impl Into<String>) -> Result<Self> {
        let fixture = Fixture {
            home_team: home_team.into(),
            away_team: away_team.into(),
        };
        if fixture.home_team == fixture.away_team {
            return Err(Error::Domain(format!(
                "team `{}` cannot play itself",
                fixture.home_team
            )));
        }
        Ok(fixture)
    }

    pub fn involves(&self, team: &str) -> bool {
        self.home_team == team || self.away_team == team
    }
}

/// Every ordered pair of distinct teams once: a full double round robin,
/// sorted by home team then away team.
pub fn round_robin_fixtures<S: AsRef<str>>(teams: impl IntoIterator<Item = S>) -> Result<Vec<Fixture>> {
    let teams: BTreeSet<String> = teams.into_iter().map(|t| t.as_ref().to_string()).collect();
    if teams.len() < 2 {
        return Err(Error::TooFewTeams(teams.len()));
    }
    Ok(teams
        .iter()
        .flat_map(|home| {
            teams.iter().filter(move |away| *away != home).map(move |away| Fixture {
                home_team: home.clone(),
                away_team: away.clone(),
            })
        })
        .collect())
}

/// Read a fixture list (`HomeTeam,AwayTeam`, other columns ignored) in file
/// order. Rows are numbered from 1, excluding the header.
pub fn load_fixtures(bytes: &[u8]) -> Result<Vec<Fixture>> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(bytes);
    let header = reader.headers()?.clone();
    let column = |names: &[&str]| {
        names
            .iter()
            .find_map(|n| {
                header
                    .iter()
                    .position(|h| h.trim_start_matches('\u{feff}').trim() == *n)
            })
            .ok_or_else(|| Error::MissingColumn(names[0].to_string()))
    };
    let home_col = column(&["HomeTeam", "HT", "Home"])?;
    let away_col = column(&["AwayTeam", "AT", "Away"])?;

    let mut fixtures = Vec::new();
    let mut row = 0;
    for record in reader.records() {
        row += 1;
        let record = record.map_err(|e| Error::malformed(row, e.to_string()))?;
        if record.iter().all(|f| f.trim().is_empty()) {
            row -= 1;
            continue;
        }
        let home = record.get(home_col).map(str::trim).unwrap_or("");
        let away = record.get(away_col).map(str::trim).unwrap_or("");
        if home.is_empty() || away.is_empty() {
            return Err(Error::malformed(row, "missing team name"));
        }
        fixtures.push(Fixture::new(home, away).map_err(|e| Error::malformed(row, e.to_string()))?);
    }
    if fixtures.is_empty() {
        return Err(Error::EmptyFile);
    }
    Ok(fixtures)
}

/// A forecast tagged with the fixture it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureForecast {
    pub fixture: Fixture,
    pub forecast: MatchForecast,
}

/// Forecast every fixture independently.
pub fn forecast_fixtures(
    fixtures: &[Fixture],
    strengths: &StrengthTable,
    league: &LeagueAverages,
    options: ForecastOptions,
) -> Result<Vec<FixtureForecast>> {
    fixtures
        .iter()
        .map(|fixture| {
            let forecast =
                predict_match(&fixture.home_team, &fixture.away_team, strengths, league, options).map_err(|err| {
                    match err {
                        Error::UnknownTeam { team, .. } => Error::UnknownTeam {
                            team,
                            context: Some(format!("fixture {} vs {}", fixture.home_team, fixture.away_team)),
                        },
                        other => other,
                    }
                })?;
            Ok(FixtureForecast {
                fixture: fixture.clone(),
                forecast,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandingsRow {
    pub rank: usize,
    pub team: String,
    pub expected_points: f64,
    pub expected_goal_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandingsTable {
    pub rows: Vec<StandingsRow>,
    pub fixtures_count: usize,
    /// Mean grid coverage across fixtures.
    pub total_coverage: f64,
}

impl StandingsTable {
    pub fn row(&self, team: &str) -> Option<&StandingsRow> {
        self.rows.iter().find(|r| r.team == team)
    }

    pub fn rank_of(&self, team: &str) -> Option<usize> {
        self.row(team).map(|r| r.rank)
    }

    pub fn points_of(&self, team: &str) -> Option<f64> {
        self.row(team).map(|r| r.expected_points)
    }

    pub fn total_points(&self) -> f64 {
        self.rows.iter().map(|r| r.expected_points).sum()
    }
}

/// Order-independent sum: terms are sorted before adding, so any
/// permutation of the inputs gives the same bits.
fn canonical_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

/// Accumulate points and goal difference per team and rank the result.
pub fn accumulate(forecasts: &[FixtureForecast]) -> Result<StandingsTable> {
    let mut points: BTreeMap<&str, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for FixtureForecast { fixture, forecast } in forecasts {
        let gd = forecast.expected_goal_diff();
        let home = points.entry(&fixture.home_team).or_default();
        home.0.push(forecast.expected_points_home);
        home.1.push(gd);
        let away = points.entry(&fixture.away_team).or_default();
        away.0.push(forecast.expected_points_away);
        away.1.push(-gd);
    }
    let totals = points
        .into_iter()
        .map(|(team, (pts, gd))| (team.to_string(), (canonical_sum(pts), canonical_sum(gd))))
        .collect();
    let mut table = rank_table(&totals)?;
    table.fixtures_count = forecasts.len();
    table.total_coverage = if forecasts.is_empty() {
        0.0
    } else {
        canonical_sum(forecasts.iter().map(|f| f.forecast.grid_coverage).collect()) / forecasts.len() as f64
    };
    Ok(table)
}

/// Rank by expected points, then expected goal difference (both
/// descending), then team name.
pub fn rank_table(accumulated: &BTreeMap<String, (f64, f64)>) -> Result<StandingsTable> {
    if accumulated.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut rows: Vec<StandingsRow> = accumulated
        .iter()
        .map(|(team, &(expected_points, expected_goal_diff))| StandingsRow {
            rank: 0,
            team: team.clone(),
            expected_points,
            expected_goal_diff,
        })
        .collect();
    rows.sort_by(|a, b| {
        b.expected_points
            .total_cmp(&a.expected_points)
            .then(b.expected_goal_diff.total_cmp(&a.expected_goal_diff))
            .then_with(|| a.team.cmp(&b.team))
    });
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = i + 1;
    }
    Ok(StandingsTable {
        rows,
        fixtures_count: 0,
        total_coverage: 0.0,
    })
}

/// Forecast every fixture and build the expected-points table.
pub fn simulate_standings(
    fixtures: &[Fixture],
    strengths: &StrengthTable,
    league: &LeagueAverages,
    options: ForecastOptions,
) -> Result<StandingsTable> {
    let forecasts = forecast_fixtures(fixtures, strengths, league, options)?;
    accumulate(&forecasts)
}
