//! Venue-split attack and defence strengths.
//!
//! For every team the mean goals scored and conceded at home and away are
//! divided by the league-wide mean of the same quantity. League means are
//! taken over teams (a mean of per-team means), not over matches; the two
//! agree whenever every team played the same number of games at each venue.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::Dataset;

/// Per-team venue-split goal means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamGoalAverages {
    pub team: String,
    pub home_scored: f64,
    pub home_conceded: f64,
    pub away_scored: f64,
    pub away_conceded: f64,
    pub home_matches: u32,
    pub away_matches: u32,
}

#[derive(Default)]
struct Tally {
    home_for: u64,
    home_against: u64,
    away_for: u64,
    away_against: u64,
    home_matches: u32,
    away_matches: u32,
}

/// Means of goals scored and conceded per venue, one entry per team, sorted
/// by team name.
///
/// Goal totals are integers, so the result does not depend on record order.
pub fn team_goal_averages(data: &Dataset) -> Result<Vec<TeamGoalAverages>> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut tallies: BTreeMap<&str, Tally> = BTreeMap::new();
    for record in data.records() {
        let home = tallies.entry(&record.home_team).or_default();
        home.home_for += u64::from(record.home_goals);
        home.home_against += u64::from(record.away_goals);
        home.home_matches += 1;
        let away = tallies.entry(&record.away_team).or_default();
        away.away_for += u64::from(record.away_goals);
        away.away_against += u64::from(record.home_goals);
        away.away_matches += 1;
    }

    let one_sided: Vec<String> = tallies
        .iter()
        .filter(|(_, t)| t.home_matches == 0 || t.away_matches == 0)
        .map(|(team, _)| team.to_string())
        .collect();
    if !one_sided.is_empty() {
        return Err(Error::OneSidedTeam(one_sided));
    }

    Ok(tallies
        .into_iter()
        .map(|(team, t)| {
            let home = f64::from(t.home_matches);
            let away = f64::from(t.away_matches);
            TeamGoalAverages {
                team: team.to_string(),
                home_scored: t.home_for as f64 / home,
                home_conceded: t.home_against as f64 / home,
                away_scored: t.away_for as f64 / away,
                away_conceded: t.away_against as f64 / away,
                home_matches: t.home_matches,
                away_matches: t.away_matches,
            }
        })
        .collect())
}

/// League-wide scoring means and the two overall goal multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeagueAverages {
    pub league_home_scored: f64,
    pub league_home_conceded: f64,
    pub league_away_scored: f64,
    pub league_away_conceded: f64,
    /// Expected goals for a home side: mean of home scored and away conceded.
    pub overall_home_scored: f64,
    /// Expected goals for an away side: mean of home conceded and away scored.
    pub overall_away_scored: f64,
}

impl LeagueAverages {
    pub fn from_components(home_scored: f64, home_conceded: f64, away_scored: f64, away_conceded: f64) -> Result<Self> {
        for (name, value) in [
            ("league_home_scored", home_scored),
            ("league_home_conceded", home_conceded),
            ("league_away_scored", away_scored),
            ("league_away_conceded", away_conceded),
        ] {
            if value == 0.0 {
                return Err(Error::ZeroLeagueAverage(name));
            }
            if !value.is_finite() || value < 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(LeagueAverages {
            league_home_scored: home_scored,
            league_home_conceded: home_conceded,
            league_away_scored: away_scored,
            league_away_conceded: away_conceded,
            overall_home_scored: (home_scored + away_conceded) / 2.0,
            overall_away_scored: (home_conceded + away_scored) / 2.0,
        })
    }

    /// League averages known only through their two multipliers.
    ///
    /// The four component means are filled in as on a balanced schedule,
    /// where home scored equals away conceded and vice versa.
    pub fn from_multipliers(home: f64, away: f64) -> Result<Self> {
        Self::from_components(home, away, away, home)
    }

    fn check(&self) -> Result<()> {
        let rebuilt = Self::from_components(
            self.league_home_scored,
            self.league_home_conceded,
            self.league_away_scored,
            self.league_away_conceded,
        )?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(1.0);
        if !close(rebuilt.overall_home_scored, self.overall_home_scored)
            || !close(rebuilt.overall_away_scored, self.overall_away_scored)
        {
            return Err(Error::InvalidStrengths(
                "overall multipliers disagree with the league means".into(),
            ));
        }
        Ok(())
    }
}

/// Unweighted means over teams of the per-team venue means.
pub fn league_averages(per_team: &[TeamGoalAverages]) -> Result<LeagueAverages> {
    if per_team.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mean = |f: fn(&TeamGoalAverages) -> f64| per_team.iter().map(f).sum::<f64>() / per_team.len() as f64;
    LeagueAverages::from_components(
        mean(|t| t.home_scored),
        mean(|t| t.home_conceded),
        mean(|t| t.away_scored),
        mean(|t| t.away_conceded),
    )
}

/// Four dimensionless ratios; 1.0 is league-typical for each.
///
/// Higher attack is better, higher defence means more goals conceded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrengthVector {
    pub home_attack: f64,
    pub home_defense: f64,
    pub away_attack: f64,
    pub away_defense: f64,
}

impl StrengthVector {
    pub const NEUTRAL: StrengthVector = StrengthVector {
        home_attack: 1.0,
        home_defense: 1.0,
        away_attack: 1.0,
        away_defense: 1.0,
    };

    pub fn new(home_attack: f64, home_defense: f64, away_attack: f64, away_defense: f64) -> Result<Self> {
        let v = StrengthVector {
            home_attack,
            home_defense,
            away_attack,
            away_defense,
        };
        if v.to_array().iter().all(|c| c.is_finite() && *c >= 0.0) {
            Ok(v)
        } else {
            Err(Error::InvalidStrengths(format!(
                "components must be finite and non-negative, got {:?}",
                v.to_array()
            )))
        }
    }

    pub fn from_array(values: [f64; 4]) -> Result<Self> {
        Self::new(values[0], values[1], values[2], values[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.home_attack, self.home_defense, self.away_attack, self.away_defense]
    }

    /// Component-wise product.
    pub fn scaled(self, by: [f64; 4]) -> Result<Self> {
        let a = self.to_array();
        Self::from_array([a[0] * by[0], a[1] * by[1], a[2] * by[2], a[3] * by[3]])
    }
}

/// A team's strength vector with its name attached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamStrength {
    pub team: String,
    #[serde(flatten)]
    pub strength: StrengthVector,
}

/// Divide each team's means by the league means.
pub fn normalize_strengths(per_team: &[TeamGoalAverages], league: &LeagueAverages) -> Result<Vec<TeamStrength>> {
    league.check()?;
    per_team
        .iter()
        .map(|t| {
            Ok(TeamStrength {
                team: t.team.clone(),
                strength: StrengthVector::new(
                    t.home_scored / league.league_home_scored,
                    t.home_conceded / league.league_home_conceded,
                    t.away_scored / league.league_away_scored,
                    t.away_conceded / league.league_away_conceded,
                )?,
            })
        })
        .collect()
}

/// What to do when a fixture names a team the strength table lacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownTeamPolicy {
    #[default]
    Error,
    /// Treat the team as league-typical (all components 1.0).
    Neutral,
}

/// Strength vectors keyed by team name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StrengthTable {
    teams: BTreeMap<String, StrengthVector>,
}

impl StrengthTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, team: impl Into<String>, strength: StrengthVector) -> Option<StrengthVector> {
        self.teams.insert(team.into(), strength)
    }

    pub fn get(&self, team: &str) -> Option<StrengthVector> {
        self.teams.get(team).copied()
    }

    pub fn contains(&self, team: &str) -> bool {
        self.teams.contains_key(team)
    }

    pub fn resolve(&self, team: &str, policy: UnknownTeamPolicy) -> Result<StrengthVector> {
        match (self.get(team), policy) {
            (Some(v), _) => Ok(v),
            (None, UnknownTeamPolicy::Neutral) => Ok(StrengthVector::NEUTRAL),
            (None, UnknownTeamPolicy::Error) => Err(Error::unknown_team(team)),
        }
    }

    pub fn teams(&self) -> impl Iterator<Item = &str> {
        self.teams.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, StrengthVector)> {
        self.teams.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }

    pub fn to_rows(&self) -> Vec<TeamStrength> {
        self.iter()
            .map(|(team, strength)| TeamStrength {
                team: team.to_string(),
                strength,
            })
            .collect()
    }

    pub fn from_rows(rows: impl IntoIterator<Item = TeamStrength>) -> Result<Self> {
        let mut table = StrengthTable::new();
        for row in rows {
            let strength = StrengthVector::from_array(row.strength.to_array())?;
            if table.insert(row.team.clone(), strength).is_some() {
                return Err(Error::InvalidStrengths(format!("team `{}` listed twice", row.team)));
            }
        }
        Ok(table)
    }

    /// Unweighted mean of each component over all teams.
    pub fn component_means(&self) -> [f64; 4] {
        let mut sums = [0.0; 4];
        for (_, v) in self.iter() {
            for (s, c) in sums.iter_mut().zip(v.to_array()) {
                *s += c;
            }
        }
        sums.map(|s| s / self.len() as f64)
    }

    /// `Team,HomeAttack,HomeDefense,AwayAttack,AwayDefense`.
    ///
    /// With `decimals = None` values are written at full precision.
    pub fn to_csv(&self, decimals: Option<usize>) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["Team", "HomeAttack", "HomeDefense", "AwayAttack", "AwayDefense"])
            .expect("writing to memory");
        for (team, v) in self.iter() {
            let mut row = vec![team.to_string()];
            row.extend(v.to_array().iter().map(|c| match decimals {
                Some(d) => format!("{c:.d$}"),
                None => c.to_string(),
            }));
            writer.write_record(&row).expect("writing to memory");
        }
        String::from_utf8(writer.into_inner().expect("writing to memory")).expect("utf-8")
    }

    pub fn from_csv(bytes: &[u8]) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
        let header = reader.headers()?.clone();
        let column = |name: &str| {
            header
                .iter()
                .position(|h| h.trim_start_matches('\u{feff}') == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))
        };
        let team_col = column("Team")?;
        let value_cols = [
            column("HomeAttack")?,
            column("HomeDefense")?,
            column("AwayAttack")?,
            column("AwayDefense")?,
        ];
        let mut rows = Vec::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record?;
            let row = idx + 1;
            let team = record.get(team_col).unwrap_or("");
            if team.is_empty() {
                return Err(Error::malformed(row, "missing team"));
            }
            let mut values = [0.0; 4];
            for (slot, col) in values.iter_mut().zip(value_cols) {
                let raw = record.get(col).unwrap_or("");
                *slot = raw
                    .parse()
                    .map_err(|_| Error::malformed(row, format!("`{raw}` is not a number")))?;
            }
            let strength = StrengthVector::from_array(values).map_err(|e| Error::malformed(row, e.to_string()))?;
            rows.push(TeamStrength {
                team: team.to_string(),
                strength,
            });
        }
        if rows.is_empty() {
            return Err(Error::EmptyFile);
        }
        Self::from_rows(rows)
    }
}

impl<S: Into<String>> FromIterator<(S, StrengthVector)> for StrengthTable {
    fn from_iter<I: IntoIterator<Item = (S, StrengthVector)>>(iter: I) -> Self {
        let mut table = StrengthTable::new();
        for (team, strength) in iter {
            table.insert(team, strength);
        }
        table
    }
}

impl FromIterator<TeamStrength> for StrengthTable {
    fn from_iter<I: IntoIterator<Item = TeamStrength>>(iter: I) -> Self {
        let mut table = StrengthTable::new();
        for row in iter {
            table.insert(row.team, row.strength);
        }
        table
    }
}

/// A strength table together with the league averages it was normalised by.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthModel {
    pub league: LeagueAverages,
    pub table: StrengthTable,
}

#[derive(Serialize, Deserialize)]
struct StrengthFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    league: Option<LeagueAverages>,
    teams: Vec<TeamStrength>,
}

impl StrengthModel {
    pub fn to_json(&self) -> String {
        let file = StrengthFile {
            league: Some(self.league),
            teams: self.table.to_rows(),
        };
        serde_json::to_string_pretty(&file).expect("serialisable")
    }

    /// Parse a strength JSON document. The `league` block is optional; the
    /// returned league is `None` when the file has none.
    pub fn table_from_json(bytes: &[u8]) -> Result<(StrengthTable, Option<LeagueAverages>)> {
        let file: StrengthFile = serde_json::from_slice(bytes)?;
        if let Some(league) = &file.league {
            league.check()?;
        }
        Ok((StrengthTable::from_rows(file.teams)?, file.league))
    }
}

/// Goal means, league averages and strengths for a dataset in one pass.
pub fn estimate(data: &Dataset) -> Result<StrengthModel> {
    let per_team = team_goal_averages(data)?;
    let league = league_averages(&per_team)?;
    let table = normalize_strengths(&per_team, &league)?.into_iter().collect();
    Ok(StrengthModel { league, table })
}

/// Re-derive league averages and ratios after a table has been edited.
///
/// Each ratio is turned back into goal means with the current league means,
/// the league means are recomputed from those, and the ratios normalised
/// again. An untouched table comes back unchanged up to rounding.
pub fn renormalize(table: &StrengthTable, league: &LeagueAverages) -> Result<StrengthModel> {
    if table.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let per_team: Vec<TeamGoalAverages> = table
        .iter()
        .map(|(team, v)| TeamGoalAverages {
            team: team.to_string(),
            home_scored: v.home_attack * league.league_home_scored,
            home_conceded: v.home_defense * league.league_home_conceded,
            away_scored: v.away_attack * league.league_away_scored,
            away_conceded: v.away_defense * league.league_away_conceded,
            home_matches: 1,
            away_matches: 1,
        })
        .collect();
    let league = league_averages(&per_team)?;
    let table = normalize_strengths(&per_team, &league)?.into_iter().collect();
    Ok(StrengthModel { league, table })
}
