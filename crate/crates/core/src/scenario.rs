//! Counterfactual edits to a strength table and their effect on standings.
//!
//! A scenario either transplants a donor vector onto a team (the takeover
//! experiment: give a club another club's post-investment profile) or
//! scales the team's four components. Both runs share the fixtures and, by
//! default, the baseline league averages.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::league::{simulate_standings, Fixture, StandingsTable};
use crate::scoremodel::ForecastOptions;
use crate::strength::{renormalize, LeagueAverages, StrengthTable, StrengthVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioAction {
    /// Replace the target's vector outright.
    Transplant(StrengthVector),
    /// Multiply `[home_attack, home_defense, away_attack, away_defense]`.
    Scale([f64; 4]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub target_team: String,
    pub action: ScenarioAction,
    pub label: String,
}

impl ScenarioSpec {
    pub fn transplant(team: impl Into<String>, donor: StrengthVector) -> Self {
        let team = team.into();
        ScenarioSpec {
            label: format!("{team} transplant"),
            target_team: team,
            action: ScenarioAction::Transplant(donor),
        }
    }

    pub fn scale(team: impl Into<String>, multipliers: [f64; 4]) -> Result<Self> {
        let team = team.into();
        let spec = ScenarioSpec {
            label: format!("{team} scaled"),
            target_team: team,
            action: ScenarioAction::Scale(multipliers),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn validate(&self) -> Result<()> {
        if self.target_team.trim().is_empty() {
            return Err(Error::InvalidScenario("team: must not be empty".into()));
        }
        match &self.action {
            ScenarioAction::Transplant(v) => {
                StrengthVector::from_array(v.to_array())
                    .map_err(|_| Error::InvalidScenario("transplant: components must be finite and >= 0".into()))?;
            }
            ScenarioAction::Scale(m) => {
                if !m.iter().all(|c| c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidScenario(
                        "scale: multipliers must be finite and > 0".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Parse a scenario document:
    ///
    /// ```json
    /// {"team": "Newcastle", "transplant": [1.271318, 0.980392, 1.568627, 0.775194]}
    /// {"team": "Newcastle", "scale": [1.2, 1.0, 1.2, 1.0], "label": "partial uplift"}
    /// {"team": "Newcastle", "transplant_from": "Man City"}
    /// ```
    ///
    /// `transplant_from` names a team in `donors`, which must then be given.
    /// Errors carry the JSON path of the offending field.
    pub fn from_json(bytes: &[u8], donors: Option<&StrengthTable>) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_slice(bytes);
        let doc: ScenarioDocument = serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            Error::InvalidScenario(format!("{path}: {}", err.into_inner()))
        })?;

        let action = match (doc.transplant, doc.scale, doc.transplant_from) {
            (Some(v), None, None) => ScenarioAction::Transplant(StrengthVector {
                home_attack: v[0],
                home_defense: v[1],
                away_attack: v[2],
                away_defense: v[3],
            }),
            (None, Some(m), None) => ScenarioAction::Scale(m),
            (None, None, Some(donor)) => {
                let donors = donors.ok_or_else(|| {
                    Error::InvalidScenario(format!("transplant_from: no donor table supplied to look up `{donor}`"))
                })?;
                let vector = donors
                    .get(&donor)
                    .ok_or_else(|| Error::InvalidScenario(format!("transplant_from: `{donor}` not in donor table")))?;
                ScenarioAction::Transplant(vector)
            }
            _ => {
                return Err(Error::InvalidScenario(
                    ".: exactly one of `transplant`, `scale` or `transplant_from` is required".into(),
                ))
            }
        };
        let label = doc.label.unwrap_or_else(|| match action {
            ScenarioAction::Transplant(_) => format!("{} transplant", doc.team),
            ScenarioAction::Scale(_) => format!("{} scaled", doc.team),
        });
        let spec = ScenarioSpec {
            target_team: doc.team,
            action,
            label,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let (transplant, scale) = match self.action {
            ScenarioAction::Transplant(v) => (Some(v.to_array()), None),
            ScenarioAction::Scale(m) => (None, Some(m)),
        };
        let doc = ScenarioDocument {
            team: self.target_team.clone(),
            label: Some(self.label.clone()),
            transplant,
            scale,
            transplant_from: None,
        };
        serde_json::to_string_pretty(&doc).expect("serialisable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDocument {
    team: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transplant: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transplant_from: Option<String>,
}

/// Copy of `strengths` with the scenario applied to its target.
pub fn apply_scenario(strengths: &StrengthTable, spec: &ScenarioSpec) -> Result<StrengthTable> {
    spec.validate()?;
    let current = strengths
        .get(&spec.target_team)
        .ok_or_else(|| Error::unknown_team(&spec.target_team))?;
    let updated = match spec.action {
        ScenarioAction::Transplant(donor) => donor,
        ScenarioAction::Scale(by) => current.scaled(by)?,
    };
    let mut table = strengths.clone();
    table.insert(spec.target_team.clone(), updated);
    Ok(table)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScenarioOptions {
    pub forecast: ForecastOptions,
    /// Recompute league averages and all ratios after the edit instead of
    /// keeping the baseline normalisation.
    pub renormalize: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub label: String,
    pub target_team: String,
    pub baseline: StandingsTable,
    pub counterfactual: StandingsTable,
    pub target_rank_before: usize,
    pub target_rank_after: usize,
    pub target_points_before: f64,
    pub target_points_after: f64,
    /// Counterfactual minus baseline expected points, per team.
    pub per_team_point_delta: BTreeMap<String, f64>,
}

impl ScenarioReport {
    /// Positive when the target moves up the table.
    pub fn rank_gain(&self) -> i64 {
        self.target_rank_before as i64 - self.target_rank_after as i64
    }

    /// Largest absolute point change among teams other than the target.
    pub fn max_bystander_shift(&self) -> f64 {
        self.per_team_point_delta
            .iter()
            .filter(|(team, _)| **team != self.target_team)
            .map(|(_, d)| d.abs())
            .fold(0.0, f64::max)
    }
}

/// Simulate the fixtures with and without the scenario.
pub fn compare_scenarios(
    fixtures: &[Fixture],
    strengths: &StrengthTable,
    league: &LeagueAverages,
    spec: &ScenarioSpec,
    options: ScenarioOptions,
) -> Result<ScenarioReport> {
    let modified = apply_scenario(strengths, spec)?;
    let (modified, modified_league) = if options.renormalize {
        let model = renormalize(&modified, league)?;
        (model.table, model.league)
    } else {
        (modified, *league)
    };

    let baseline = simulate_standings(fixtures, strengths, league, options.forecast)?;
    let counterfactual = simulate_standings(fixtures, &modified, &modified_league, options.forecast)?;

    let target = &spec.target_team;
    let missing = || Error::UnknownTeam {
        team: target.clone(),
        context: Some("target plays no fixture".into()),
    };
    let before = baseline.row(target).ok_or_else(missing)?;
    let after = counterfactual.row(target).ok_or_else(missing)?;

    let per_team_point_delta = baseline
        .rows
        .iter()
        .map(|row| {
            let after = counterfactual.points_of(&row.team).unwrap_or(0.0);
            (row.team.clone(), after - row.expected_points)
        })
        .collect();

    Ok(ScenarioReport {
        label: spec.label.clone(),
        target_team: target.clone(),
        target_rank_before: before.rank,
        target_rank_after: after.rank,
        target_points_before: before.expected_points,
        target_points_after: after.expected_points,
        per_team_point_delta,
        baseline,
        counterfactual,
    })
}
