//! Transplant one club's strengths onto another and compare the tables.
//!
//! Runs on the bundled demo league. With the Premier League files under
//! `FOOTBALL_DATA_DIR` it also runs the Newcastle takeover study.
//!
//! ```text
//! cargo run --example takeover_scenario
//! FOOTBALL_DATA_DIR=data/football-data cargo run --example takeover_scenario
//! ```

use std::path::PathBuf;

use league_forecast::ingest::{pool_seasons, read_csv_file, ParseOptions};
use league_forecast::league::load_fixtures;
use league_forecast::report::{self, Format};
use league_forecast::repro;
use league_forecast::scenario::{compare_scenarios, ScenarioOptions};
use league_forecast::scoremodel::ForecastOptions;
use league_forecast::strength::{estimate, UnknownTeamPolicy};
use league_forecast::ScenarioSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let demo = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/demo");
    let seasons = ["D1_2122.csv", "D1_2223.csv", "D1_2324.csv"]
        .iter()
        .map(|f| read_csv_file(demo.join(f), &ParseOptions::default()))
        .collect::<Result<Vec<_>, _>>()?;
    let model = estimate(&pool_seasons(&seasons, &"2021-22..2023-24".parse()?)?)?;
    let fixtures = load_fixtures(&std::fs::read(demo.join("fixtures_2425.csv"))?)?;
    let spec = ScenarioSpec::from_json(
        &std::fs::read(demo.join("scenario_transplant.json"))?,
        Some(&model.table),
    )?;

    for renormalize in [false, true] {
        let options = ScenarioOptions {
            forecast: ForecastOptions {
                unknown_teams: UnknownTeamPolicy::Neutral,
                ..ForecastOptions::default()
            },
            renormalize,
        };
        let report = compare_scenarios(&fixtures, &model.table, &model.league, &spec, options)?;
        println!("renormalize = {renormalize}");
        print!("{}", report::scenario(&report, Format::Text, 3));
        println!("largest bystander shift {:.3}\n", report.max_bystander_shift());
    }

    match std::env::var_os("FOOTBALL_DATA_DIR") {
        Some(dir) => {
            let outcome = repro::run(PathBuf::from(dir).as_path(), ScenarioOptions::default())?;
            print!("{}", report::scenario(&outcome.report, Format::Text, 3));
        }
        None => print!("{}", repro::recipe_text()),
    }
    Ok(())
}
