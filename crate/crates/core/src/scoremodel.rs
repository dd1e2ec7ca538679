//! Independent-Poisson score model.
//!
//! Each side's goals are Poisson with a rate built from its attack, the
//! opponent's defence and the league multiplier for its venue. Outcome
//! probabilities are sums over a square score grid truncated at `goal_cap`
//! goals per side; the mass outside the grid is reported as lost coverage
//! and never redistributed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strength::{LeagueAverages, StrengthTable, StrengthVector, UnknownTeamPolicy};

/// Largest number of goals per side included in the score grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GoalCap(u32);

impl GoalCap {
    pub const DEFAULT: GoalCap = GoalCap(10);

    pub fn new(cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidGoalCap(cap));
        }
        Ok(GoalCap(cap))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for GoalCap {
    fn default() -> Self {
        GoalCap::DEFAULT
    }
}

impl TryFrom<u32> for GoalCap {
    type Error = Error;

    fn try_from(cap: u32) -> Result<Self> {
        GoalCap::new(cap)
    }
}

impl From<GoalCap> for u32 {
    fn from(cap: GoalCap) -> u32 {
        cap.0
    }
}

impl fmt::Display for GoalCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// Beyond this e^-λ underflows and the recurrence would return zeros.
const RECURRENCE_LIMIT: f64 = 700.0;

fn check_rate(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Poisson rate must be finite and non-negative, got {lambda}"
        )))
    }
}

/// `P(X = x)` for `X ~ Poisson(lambda)`.
///
/// Built by the recurrence `p(k) = p(k-1) * lambda / k` from `p(0) = e^-lambda`,
/// so no factorial is ever formed. Very large rates switch to log space.
pub fn poisson_pmf(x: u32, lambda: f64) -> Result<f64> {
    check_rate(lambda)?;
    if lambda > RECURRENCE_LIMIT {
        let log_factorial: f64 = (1..=x).map(|k| f64::from(k).ln()).sum();
        return Ok((f64::from(x) * lambda.ln() - lambda - log_factorial).exp());
    }
    let mut p = (-lambda).exp();
    for k in 1..=x {
        p *= lambda / f64::from(k);
    }
    Ok(p)
}

/// `[P(X = 0), ..., P(X = cap)]`, bit-identical to calling [`poisson_pmf`]
/// for each count.
pub fn poisson_pmf_row(lambda: f64, cap: u32) -> Result<Vec<f64>> {
    check_rate(lambda)?;
    if lambda > RECURRENCE_LIMIT {
        return (0..=cap).map(|x| poisson_pmf(x, lambda)).collect();
    }
    let mut row = Vec::with_capacity(cap as usize + 1);
    let mut p = (-lambda).exp();
    row.push(p);
    for k in 1..=cap {
        p *= lambda / f64::from(k);
        row.push(p);
    }
    Ok(row)
}

/// Expected goals for each side of one fixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchRates {
    pub lambda_home: f64,
    pub lambda_away: f64,
}

impl MatchRates {
    pub fn new(lambda_home: f64, lambda_away: f64) -> Result<Self> {
        check_rate(lambda_home)?;
        check_rate(lambda_away)?;
        Ok(MatchRates {
            lambda_home,
            lambda_away,
        })
    }
}

/// Home rate is home attack × away side's away defence × home multiplier;
/// the away rate mirrors it.
pub fn match_rates(home: &StrengthVector, away: &StrengthVector, league: &LeagueAverages) -> Result<MatchRates> {
    MatchRates::new(
        home.home_attack * away.away_defense * league.overall_home_scored,
        away.away_attack * home.home_defense * league.overall_away_scored,
    )
}

/// Joint probabilities of every scoreline up to the cap, home goals major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreGrid {
    cap: u32,
    cells: Vec<f64>,
}

impl ScoreGrid {
    pub fn new(rates: MatchRates, cap: GoalCap) -> Result<Self> {
        let cap = cap.get();
        let home = poisson_pmf_row(rates.lambda_home, cap)?;
        let away = poisson_pmf_row(rates.lambda_away, cap)?;
        let cells = home.iter().flat_map(|ph| away.iter().map(move |pa| ph * pa)).collect();
        Ok(ScoreGrid { cap, cells })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Probability of the exact score `home_goals`–`away_goals`, `None`
    /// outside the grid.
    pub fn get(&self, home_goals: u32, away_goals: u32) -> Option<f64> {
        if home_goals > self.cap || away_goals > self.cap {
            return None;
        }
        let width = self.cap as usize + 1;
        Some(self.cells[home_goals as usize * width + away_goals as usize])
    }

    fn cell(&self, home_goals: u32, away_goals: u32) -> f64 {
        self.cells[(home_goals * (self.cap + 1) + away_goals) as usize]
    }

    /// `(home goals, away goals, probability)` in home-major order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        let width = self.cap + 1;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, p)| (i as u32 / width, i as u32 % width, *p))
    }

    /// Most likely scoreline inside the grid; ties go to the lowest score.
    pub fn most_likely(&self) -> (u32, u32, f64) {
        self.iter().fold(
            (0, 0, f64::NEG_INFINITY),
            |best, cell| if cell.2 > best.2 { cell } else { best },
        )
    }
}

/// Outcome probabilities and expected points for one fixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchForecast {
    pub rates: MatchRates,
    pub prob_home_win: f64,
    pub prob_away_win: f64,
    pub prob_draw: f64,
    pub expected_points_home: f64,
    pub expected_points_away: f64,
    /// Probability mass inside the truncated grid.
    pub grid_coverage: f64,
    pub goal_cap: GoalCap,
}

impl MatchForecast {
    /// Expected goal difference from the home side's point of view.
    pub fn expected_goal_diff(&self) -> f64 {
        self.rates.lambda_home - self.rates.lambda_away
    }

    pub fn total_points(&self) -> f64 {
        self.expected_points_home + self.expected_points_away
    }
}

/// Sum the score grid into home/draw/away probabilities and expected points.
pub fn forecast(rates: MatchRates, goal_cap: GoalCap) -> Result<MatchForecast> {
    let grid = ScoreGrid::new(rates, goal_cap)?;
    Ok(forecast_from_grid(rates, &grid, goal_cap))
}

fn forecast_from_grid(rates: MatchRates, grid: &ScoreGrid, goal_cap: GoalCap) -> MatchForecast {
    let (mut home_win, mut away_win, mut draw) = (0.0, 0.0, 0.0);
    // Mirrored cells are added in the same order, so equal rates give
    // bit-identical win probabilities.
    for x in 0..=grid.cap {
        for y in 0..x {
            home_win += grid.cell(x, y);
            away_win += grid.cell(y, x);
        }
        draw += grid.cell(x, x);
    }
    MatchForecast {
        rates,
        prob_home_win: home_win,
        prob_away_win: away_win,
        prob_draw: draw,
        expected_points_home: 3.0 * home_win + draw,
        expected_points_away: 3.0 * away_win + draw,
        grid_coverage: home_win + away_win + draw,
        goal_cap,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ForecastOptions {
    pub goal_cap: GoalCap,
    pub unknown_teams: UnknownTeamPolicy,
}

/// Forecast a fixture between two named teams.
pub fn predict_match(
    home_team: &str,
    away_team: &str,
    strengths: &StrengthTable,
    league: &LeagueAverages,
    options: ForecastOptions,
) -> Result<MatchForecast> {
    let home = strengths.resolve(home_team, options.unknown_teams)?;
    let away = strengths.resolve(away_team, options.unknown_teams)?;
    forecast(match_rates(&home, &away, league)?, options.goal_cap)
}
