mod common;

use std::collections::BTreeSet;

use common::{demo_dir, demo_pool, demo_season, DEMO_SEASONS};
use league_forecast::ingest::{parse_csv, pool_seasons, Dataset, ParseOptions};
use league_forecast::league::{load_fixtures, round_robin_fixtures, simulate_standings};
use league_forecast::scenario::{apply_scenario, compare_scenarios, ScenarioOptions};
use league_forecast::scoremodel::ForecastOptions;
use league_forecast::strength::{estimate, renormalize, team_goal_averages, UnknownTeamPolicy};
use league_forecast::{Error, Fixture, MatchRecord, ScenarioSpec, SeasonWindow, StrengthTable, StrengthVector};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn shuffled(data: &Dataset, seed: u64) -> Dataset {
    let mut records = data.records().to_vec();
    records.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    Dataset::from_records(records, false).unwrap()
}

fn demo_fixtures() -> Vec<Fixture> {
    load_fixtures(&std::fs::read(demo_dir().join("fixtures_2425.csv")).unwrap()).unwrap()
}

fn neutral_options() -> ForecastOptions {
    ForecastOptions {
        unknown_teams: UnknownTeamPolicy::Neutral,
        ..ForecastOptions::default()
    }
}

#[test]
fn complete_season_league_identities() {
    for file in DEMO_SEASONS {
        let data = demo_season(file);
        assert_eq!(data.len(), 90);
        let league = estimate(&data).unwrap().league;
        assert!(
            (league.league_home_scored - league.league_away_conceded).abs() < 1e-12,
            "{file}"
        );
        assert!(
            (league.league_home_conceded - league.league_away_scored).abs() < 1e-12,
            "{file}"
        );
    }
}

#[test]
fn strengths_average_to_one() {
    for data in DEMO_SEASONS.iter().map(|f| demo_season(f)).chain([demo_pool()]) {
        for mean in estimate(&data).unwrap().table.component_means() {
            assert!((mean - 1.0).abs() < 1e-12, "{mean}");
        }
    }
}

#[test]
fn record_order_does_not_change_strengths() {
    let data = demo_pool();
    let reference = estimate(&data).unwrap();
    for seed in 0..5 {
        assert_eq!(estimate(&shuffled(&data, seed)).unwrap(), reference);
    }
}

#[test]
fn scaling_goals_leaves_strengths_unchanged() {
    let data = demo_season("D1_2223.csv");
    let reference = estimate(&data).unwrap();
    for factor in [2, 3, 7] {
        let scaled: Vec<MatchRecord> = data
            .records()
            .iter()
            .map(|r| MatchRecord::new(&r.home_team, &r.away_team, r.home_goals * factor, r.away_goals * factor))
            .collect();
        let model = estimate(&Dataset::from_records(scaled, false).unwrap()).unwrap();
        for (team, v) in model.table.iter() {
            let base = reference.table.get(team).unwrap().to_array();
            for (x, y) in v.to_array().iter().zip(base) {
                assert!((x - y).abs() < 1e-12, "{team}");
            }
        }
    }
}

#[test]
fn pooling_respects_window() {
    let seasons: Vec<Dataset> = DEMO_SEASONS.iter().map(|f| demo_season(f)).collect();
    let two = pool_seasons(&seasons, &"2022-23..2023-24".parse::<SeasonWindow>().unwrap()).unwrap();
    assert_eq!(two.len(), 180);
    assert!(two.teams().contains("Kelby Athletic"));
    let one = pool_seasons(&seasons, &"2021-22".parse::<SeasonWindow>().unwrap()).unwrap();
    assert!(!one.teams().contains("Kelby Athletic"));
    assert_eq!(demo_pool().teams().len(), 11);
    let err = pool_seasons(&seasons, &"2010-11..2011-12".parse::<SeasonWindow>().unwrap()).unwrap_err();
    assert!(matches!(err, Error::EmptyWindow(_)));
}

#[test]
fn team_seen_at_one_venue_is_rejected() {
    let mut records = demo_season("D1_2223.csv").records().to_vec();
    records.push(MatchRecord::new("Nowhere FC", "Greyhaven", 1, 1));
    let err = team_goal_averages(&Dataset::from_records(records, false).unwrap()).unwrap_err();
    assert!(
        matches!(err, Error::OneSidedTeam(ref t) if t == &vec!["Nowhere FC".to_string()]),
        "{err}"
    );
}

#[test]
fn duplicate_rows_rejected_unless_allowed() {
    let data = demo_season("D1_2122.csv");
    let mut records = data.records().to_vec();
    records.push(records[0].clone());
    assert!(matches!(
        Dataset::from_records(records.clone(), false),
        Err(Error::DuplicateRecord { .. })
    ));
    assert_eq!(Dataset::from_records(records, true).unwrap().len(), 91);
}

#[test]
fn round_robin_counts() {
    for n in 2..12 {
        let teams: Vec<String> = (0..n).map(|i| format!("T{i:02}")).collect();
        let fixtures = round_robin_fixtures(&teams).unwrap();
        assert_eq!(fixtures.len(), n * (n - 1));
        let distinct: BTreeSet<_> = fixtures.iter().map(|f| (&f.home_team, &f.away_team)).collect();
        assert_eq!(distinct.len(), fixtures.len());
        for t in &teams {
            assert_eq!(fixtures.iter().filter(|f| &f.home_team == t).count(), n - 1);
            assert_eq!(fixtures.iter().filter(|f| &f.away_team == t).count(), n - 1);
        }
    }
    assert!(round_robin_fixtures(["Solo"]).is_err());
}

#[test]
fn fixture_order_does_not_change_standings() {
    let model = estimate(&demo_pool()).unwrap();
    let mut fixtures = demo_fixtures();
    let reference = simulate_standings(&fixtures, &model.table, &model.league, neutral_options()).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..5 {
        fixtures.shuffle(&mut rng);
        let again = simulate_standings(&fixtures, &model.table, &model.league, neutral_options()).unwrap();
        assert_eq!(again, reference);
    }
}

#[test]
fn unknown_team_named_or_neutral() {
    let model = estimate(&demo_pool()).unwrap();
    let err = simulate_standings(
        &demo_fixtures(),
        &model.table,
        &model.league,
        ForecastOptions::default(),
    )
    .unwrap_err();
    match err {
        Error::UnknownTeam { team, context } => {
            assert_eq!(team, "Lowther Town");
            assert!(context.unwrap().contains("Lowther Town"));
        }
        other => panic!("{other}"),
    }
    let table = simulate_standings(&demo_fixtures(), &model.table, &model.league, neutral_options()).unwrap();
    assert_eq!(table.rows.len(), 10);
    assert!(table.row("Lowther Town").is_some());
}

#[test]
fn identical_teams_share_identical_points() {
    let model = estimate(&demo_pool()).unwrap();
    let teams: Vec<String> = (0..8).map(|i| format!("Club {i}")).collect();
    let table: StrengthTable = teams.iter().map(|t| (t.clone(), StrengthVector::NEUTRAL)).collect();
    let standings = simulate_standings(
        &round_robin_fixtures(&teams).unwrap(),
        &table,
        &model.league,
        ForecastOptions::default(),
    )
    .unwrap();
    let first = standings.rows[0].expected_points;
    assert!(standings.rows.iter().all(|r| r.expected_points == first));
    let ranks: Vec<usize> = standings.rows.iter().map(|r| r.rank).collect();
    assert_eq!(ranks, (1..=8).collect::<Vec<_>>());
    assert_eq!(standings.rows[0].team, "Club 0");
}

#[test]
fn total_points_conserved() {
    let model = estimate(&demo_pool()).unwrap();
    let fixtures = demo_fixtures();
    let table = simulate_standings(&fixtures, &model.table, &model.league, neutral_options()).unwrap();
    let n = fixtures.len() as f64;
    assert!(table.total_points() >= 2.0 * n * table.total_coverage - 1e-9);
    assert!(table.total_points() <= 3.0 * n * table.total_coverage + 1e-9);
    let gd: f64 = table.rows.iter().map(|r| r.expected_goal_diff).sum();
    assert!(gd.abs() < 1e-9);
}

#[test]
fn points_depend_only_on_own_fixtures() {
    let model = estimate(&demo_pool()).unwrap();
    let fixtures = demo_fixtures();
    let full = simulate_standings(&fixtures, &model.table, &model.league, neutral_options()).unwrap();
    let kept: Vec<Fixture> = fixtures
        .iter()
        .filter(|f| !(f.involves("Calder Town") && f.involves("Greyhaven")))
        .cloned()
        .collect();
    let partial = simulate_standings(&kept, &model.table, &model.league, neutral_options()).unwrap();
    for team in ["Ashford Rovers", "Dunmore United", "Lowther Town"] {
        assert_eq!(full.points_of(team), partial.points_of(team), "{team}");
    }
    assert!(partial.points_of("Calder Town").unwrap() < full.points_of("Calder Town").unwrap());
}

fn demo_report(spec: &ScenarioSpec) -> league_forecast::ScenarioReport {
    let model = estimate(&demo_pool()).unwrap();
    let options = ScenarioOptions {
        forecast: neutral_options(),
        renormalize: false,
    };
    compare_scenarios(&demo_fixtures(), &model.table, &model.league, spec, options).unwrap()
}

#[test]
fn scenario_only_touches_target_fixtures() {
    let model = estimate(&demo_pool()).unwrap();
    let spec = ScenarioSpec::scale("Greyhaven", [1.4, 0.8, 1.4, 0.8]).unwrap();
    let modified = apply_scenario(&model.table, &spec).unwrap();
    let fixtures = demo_fixtures();
    let options = neutral_options();
    let before = league_forecast::league::forecast_fixtures(&fixtures, &model.table, &model.league, options).unwrap();
    let after = league_forecast::league::forecast_fixtures(&fixtures, &modified, &model.league, options).unwrap();
    for (b, a) in before.iter().zip(&after) {
        if b.fixture.involves("Greyhaven") {
            assert_ne!(b.forecast, a.forecast);
        } else {
            assert_eq!(b.forecast, a.forecast);
        }
    }
}

#[test]
fn stronger_target_gains_points() {
    let report = demo_report(&ScenarioSpec::scale("Greyhaven", [1.4, 0.8, 1.4, 0.8]).unwrap());
    assert!(report.target_points_after > report.target_points_before);
    assert!(report.target_rank_after <= report.target_rank_before);
    for (team, delta) in &report.per_team_point_delta {
        if team != "Greyhaven" {
            assert!(*delta <= 0.0, "{team} {delta}");
        }
    }
}

#[test]
fn scenario_baseline_matches_plain_simulation() {
    let model = estimate(&demo_pool()).unwrap();
    let report = demo_report(&ScenarioSpec::scale("Greyhaven", [1.1, 1.0, 1.0, 1.0]).unwrap());
    let direct = simulate_standings(&demo_fixtures(), &model.table, &model.league, neutral_options()).unwrap();
    assert_eq!(report.baseline, direct);
}

#[test]
fn identity_scenarios_change_nothing() {
    let model = estimate(&demo_pool()).unwrap();
    let own = model.table.get("Brackenfield").unwrap();
    for spec in [
        ScenarioSpec::scale("Brackenfield", [1.0; 4]).unwrap(),
        ScenarioSpec::transplant("Brackenfield", own),
    ] {
        let report = demo_report(&spec);
        assert_eq!(report.baseline, report.counterfactual);
        assert!(report.per_team_point_delta.values().all(|d| *d == 0.0));
    }
}

#[test]
fn transplant_is_idempotent() {
    let model = estimate(&demo_pool()).unwrap();
    let spec = ScenarioSpec::transplant("Calder Town", model.table.get("Ashford Rovers").unwrap());
    let once = apply_scenario(&model.table, &spec).unwrap();
    assert_eq!(apply_scenario(&once, &spec).unwrap(), once);
}

#[test]
fn renormalizing_an_untouched_table_is_stable() {
    let model = estimate(&demo_pool()).unwrap();
    let again = renormalize(&model.table, &model.league).unwrap();
    for (team, v) in again.table.iter() {
        for (x, y) in v.to_array().iter().zip(model.table.get(team).unwrap().to_array()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn scenario_json_round_trip() {
    let spec = ScenarioSpec::scale("Mossvale", [1.2, 0.9, 1.1, 1.0])
        .unwrap()
        .with_label("tuned");
    assert_eq!(ScenarioSpec::from_json(spec.to_json().as_bytes(), None).unwrap(), spec);
}

#[test]
fn strength_serialisations_round_trip() {
    let model = estimate(&demo_pool()).unwrap();
    assert_eq!(
        StrengthTable::from_csv(model.table.to_csv(None).as_bytes()).unwrap(),
        model.table
    );
    let (table, league) = league_forecast::StrengthModel::table_from_json(model.to_json().as_bytes()).unwrap();
    assert_eq!(table, model.table);
    assert_eq!(league, Some(model.league));
}

fn team_name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["Alpha", "Beta", "Gamma, FC", "Delta \"D\"", "Épsilon"]).prop_map(String::from)
}

proptest! {
    #[test]
    fn dataset_csv_round_trip(rows in prop::collection::vec((team_name(), team_name(), 0u32..12, 0u32..12, 0u32..300), 1..40)) {
        let records: Vec<MatchRecord> = rows
            .into_iter()
            .filter(|(h, a, ..)| h != a)
            .map(|(h, a, hg, ag, day)| {
                let date = chrono::NaiveDate::from_ymd_opt(2020, 8, 1).unwrap() + chrono::Days::new(u64::from(day));
                MatchRecord::new(h, a, hg, ag).on(date)
            })
            .collect();
        prop_assume!(!records.is_empty());
        let data = Dataset::from_records(records, true).unwrap();
        let options = ParseOptions { allow_duplicates: true, ..ParseOptions::default() };
        let back = parse_csv(data.to_csv().as_bytes(), &options).unwrap();
        prop_assert_eq!(back.records(), data.records());
    }
}
