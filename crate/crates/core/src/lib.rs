//! Football league forecasting from historical results.
//!
//! The pipeline runs in five steps:
//!
//! 1. [`ingest`] parses football-data.co.uk style CSV files into match records
//!    and pools them over a season window.
//! 2. [`strength`] turns venue-split goal averages into attack and defence
//!    ratios relative to the league.
//! 3. [`scoremodel`] forecasts a fixture with two independent Poisson goal
//!    counts on a truncated score grid.
//! 4. [`league`] sums expected points over a fixture list into a table.
//! 5. [`scenario`] edits one team's strengths and compares the tables.
//!
//! ```
//! use league_forecast::ingest::{parse_csv, ParseOptions};
//! use league_forecast::league::{round_robin_fixtures, simulate_standings};
//! use league_forecast::scoremodel::ForecastOptions;
//! use league_forecast::strength::estimate;
//!
//! let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nA,B,2,0\nB,A,1,1\nA,C,3,1\nC,A,0,2\nB,C,1,0\nC,B,2,2\n";
//! let data = parse_csv(csv.as_bytes(), &ParseOptions::default())?;
//! let model = estimate(&data)?;
//! let fixtures = round_robin_fixtures(data.teams())?;
//! let table = simulate_standings(&fixtures, &model.table, &model.league, ForecastOptions::default())?;
//! assert_eq!(table.rows[0].team, "A");
//! # Ok::<(), league_forecast::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod ingest;
pub mod league;
pub mod report;
pub mod repro;
pub mod scenario;
pub mod scoremodel;
pub mod strength;

pub use error::{Error, Result};
pub use ingest::{Dataset, MatchRecord, Season, SeasonWindow};
pub use league::{Fixture, StandingsTable};
pub use scenario::{ScenarioReport, ScenarioSpec};
pub use scoremodel::{GoalCap, MatchForecast, MatchRates};
pub use strength::{LeagueAverages, StrengthModel, StrengthTable, StrengthVector};
