//! Expected-points table for a fixture list, with a promoted club that has
//! no history.
//!
//! ```text
//! cargo run --example season_standings
//! ```

use std::path::PathBuf;

use league_forecast::ingest::{pool_seasons, read_csv_file, ParseOptions};
use league_forecast::league::{load_fixtures, round_robin_fixtures, simulate_standings};
use league_forecast::report::{self, Format};
use league_forecast::scoremodel::ForecastOptions;
use league_forecast::strength::{estimate, UnknownTeamPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let demo = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/demo");
    let seasons = ["D1_2122.csv", "D1_2223.csv", "D1_2324.csv"]
        .iter()
        .map(|f| read_csv_file(demo.join(f), &ParseOptions::default()))
        .collect::<Result<Vec<_>, _>>()?;
    let model = estimate(&pool_seasons(&seasons, &"2021-22..2023-24".parse()?)?)?;
    let fixtures = load_fixtures(&std::fs::read(demo.join("fixtures_2425.csv"))?)?;

    match simulate_standings(&fixtures, &model.table, &model.league, ForecastOptions::default()) {
        Ok(_) => println!("every club has history"),
        Err(err) => println!("strict mode: {err}\n"),
    }

    let options = ForecastOptions {
        unknown_teams: UnknownTeamPolicy::Neutral,
        ..ForecastOptions::default()
    };
    let table = simulate_standings(&fixtures, &model.table, &model.league, options)?;
    println!("2024-25 fixtures, newcomers treated as league-typical\n");
    print!("{}", report::standings(&table, Format::Text, 3));

    let all_pairs = round_robin_fixtures(model.table.teams())?;
    let full = simulate_standings(&all_pairs, &model.table, &model.league, options)?;
    println!("\nall {} clubs, double round robin\n", model.table.len());
    print!("{}", report::standings(&full, Format::Csv, 3));
    Ok(())
}
