//! Text, CSV and JSON renderings of the library's results.
//!
//! Text and CSV print floats at a fixed number of decimals (6 unless
//! overridden); JSON always carries full precision.

use std::fmt::Write as _;

use serde::Serialize;

use crate::league::StandingsTable;
use crate::scenario::ScenarioReport;
use crate::scoremodel::MatchForecast;
use crate::strength::{LeagueAverages, StrengthModel};

pub const DEFAULT_DECIMALS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("writing to memory");
    for row in rows {
        writer
            .write_record(row.into_iter().collect::<Vec<_>>())
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("utf-8")
}

fn name_width<'a>(names: impl Iterator<Item = &'a str>, header: &str) -> usize {
    names.map(|n| n.chars().count()).max().unwrap_or(0).max(header.len())
}

pub fn league_text(league: &LeagueAverages, decimals: usize) -> String {
    let d = decimals;
    format!(
        "League home scored    {:.d$}\nLeague home conceded  {:.d$}\nLeague away scored    {:.d$}\nLeague away conceded  {:.d$}\nOverall home scored   {:.d$}\nOverall away scored   {:.d$}\n",
        league.league_home_scored,
        league.league_home_conceded,
        league.league_away_scored,
        league.league_away_conceded,
        league.overall_home_scored,
        league.overall_away_scored,
    )
}

pub fn strengths(model: &StrengthModel, format: Format, decimals: usize) -> String {
    match format {
        Format::Json => {
            let mut s = model.to_json();
            s.push('\n');
            s
        }
        Format::Csv => model.table.to_csv(Some(decimals)),
        Format::Text => {
            let w = name_width(model.table.teams(), "Team");
            let c = decimals + 6;
            let mut out = format!(
                "{:<w$}  {:>c$}  {:>c$}  {:>c$}  {:>c$}\n",
                "Team", "HomeAttack", "HomeDefense", "AwayAttack", "AwayDefense"
            );
            for (team, v) in model.table.iter() {
                let d = decimals;
                let _ = writeln!(
                    out,
                    "{team:<w$}  {:>c$.d$}  {:>c$.d$}  {:>c$.d$}  {:>c$.d$}",
                    v.home_attack, v.home_defense, v.away_attack, v.away_defense
                );
            }
            out.push('\n');
            out.push_str(&league_text(&model.league, decimals));
            out
        }
    }
}

#[derive(Serialize)]
struct NamedForecast<'a> {
    home_team: &'a str,
    away_team: &'a str,
    #[serde(flatten)]
    forecast: &'a MatchForecast,
}

pub fn forecast(home: &str, away: &str, f: &MatchForecast, format: Format, decimals: usize) -> String {
    let d = decimals;
    match format {
        Format::Json => to_json(&NamedForecast {
            home_team: home,
            away_team: away,
            forecast: f,
        }),
        Format::Csv => csv_rows(
            &[
                "HomeTeam",
                "AwayTeam",
                "LambdaHome",
                "LambdaAway",
                "ProbHome",
                "ProbDraw",
                "ProbAway",
                "ExpPointsHome",
                "ExpPointsAway",
                "Coverage",
                "GoalCap",
            ],
            [vec![
                home.to_string(),
                away.to_string(),
                format!("{:.d$}", f.rates.lambda_home),
                format!("{:.d$}", f.rates.lambda_away),
                format!("{:.d$}", f.prob_home_win),
                format!("{:.d$}", f.prob_draw),
                format!("{:.d$}", f.prob_away_win),
                format!("{:.d$}", f.expected_points_home),
                format!("{:.d$}", f.expected_points_away),
                format!("{:.d$}", f.grid_coverage),
                f.goal_cap.to_string(),
            ]],
        ),
        Format::Text => {
            let w = name_width([home, away].into_iter(), "");
            format!(
                "{home:<w$}  expected goals {:.d$}  win {:.d$}  expected points {:.d$}\n\
                 {away:<w$}  expected goals {:.d$}  win {:.d$}  expected points {:.d$}\n\
                 draw {:.d$}  grid coverage {:.d$} (0..={} goals)\n",
                f.rates.lambda_home,
                f.prob_home_win,
                f.expected_points_home,
                f.rates.lambda_away,
                f.prob_away_win,
                f.expected_points_away,
                f.prob_draw,
                f.grid_coverage,
                f.goal_cap,
            )
        }
    }
}

pub fn standings(table: &StandingsTable, format: Format, decimals: usize) -> String {
    let d = decimals;
    match format {
        Format::Json => to_json(table),
        Format::Csv => csv_rows(
            &["Rank", "Team", "ExpPoints", "ExpGD"],
            table.rows.iter().map(|r| {
                vec![
                    r.rank.to_string(),
                    r.team.clone(),
                    format!("{:.d$}", r.expected_points),
                    format!("{:.d$}", r.expected_goal_diff),
                ]
            }),
        ),
        Format::Text => {
            let w = name_width(table.rows.iter().map(|r| r.team.as_str()), "Team");
            let c = decimals + 5;
            let mut out = format!("{:>4}  {:<w$}  {:>c$}  {:>c$}\n", "Rank", "Team", "ExpPoints", "ExpGD");
            for r in &table.rows {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<w$}  {:>c$.d$}  {:>+c$.d$}",
                    r.rank, r.team, r.expected_points, r.expected_goal_diff
                );
            }
            let _ = writeln!(
                out,
                "\n{} fixtures, mean grid coverage {:.d$}",
                table.fixtures_count, table.total_coverage
            );
            out
        }
    }
}

pub fn scenario(report: &ScenarioReport, format: Format, decimals: usize) -> String {
    let d = decimals;
    match format {
        Format::Json => to_json(report),
        Format::Csv => csv_rows(
            &[
                "Team",
                "RankBefore",
                "PointsBefore",
                "RankAfter",
                "PointsAfter",
                "PointsDelta",
            ],
            report.baseline.rows.iter().map(|r| {
                let after = report.counterfactual.row(&r.team);
                vec![
                    r.team.clone(),
                    r.rank.to_string(),
                    format!("{:.d$}", r.expected_points),
                    after.map(|a| a.rank.to_string()).unwrap_or_default(),
                    after.map(|a| format!("{:.d$}", a.expected_points)).unwrap_or_default(),
                    format!(
                        "{:.d$}",
                        report.per_team_point_delta.get(&r.team).copied().unwrap_or(0.0)
                    ),
                ]
            }),
        ),
        Format::Text => {
            let names = report
                .baseline
                .rows
                .iter()
                .chain(&report.counterfactual.rows)
                .map(|r| r.team.as_str());
            let w = name_width(names, "Team");
            let c = decimals + 4;
            let mut out = format!("Scenario: {}\n\n", report.label);
            let _ = writeln!(
                out,
                "  {:>4}  {:<w$}  {:>c$}  |  {:>4}  {:<w$}  {:>c$}  {:>c$}",
                "Rank", "Baseline", "Points", "Rank", "Scenario", "Points", "Delta"
            );
            for (before, after) in report.baseline.rows.iter().zip(&report.counterfactual.rows) {
                let mark = |team: &str| if team == report.target_team { '*' } else { ' ' };
                let delta = report.per_team_point_delta.get(&after.team).copied().unwrap_or(0.0);
                let _ = writeln!(
                    out,
                    "{} {:>4}  {:<w$}  {:>c$.d$}  |{} {:>4}  {:<w$}  {:>c$.d$}  {:>+c$.d$}",
                    mark(&before.team),
                    before.rank,
                    before.team,
                    before.expected_points,
                    mark(&after.team),
                    after.rank,
                    after.team,
                    after.expected_points,
                    delta,
                );
            }
            let _ = writeln!(
                out,
                "\n{}: rank {} -> {} ({:+}), points {:.d$} -> {:.d$} ({:+.d$})",
                report.target_team,
                report.target_rank_before,
                report.target_rank_after,
                report.rank_gain(),
                report.target_points_before,
                report.target_points_after,
                report.target_points_after - report.target_points_before,
            );
            out
        }
    }
}
