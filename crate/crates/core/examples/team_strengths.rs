//! Estimate attack and defence strengths over a pool of seasons.
//!
//! ```text
//! cargo run --example team_strengths
//! ```

use std::path::PathBuf;

use league_forecast::ingest::{pool_seasons, read_csv_file, ParseOptions};
use league_forecast::report::{self, Format};
use league_forecast::strength::{estimate, team_goal_averages};
use league_forecast::SeasonWindow;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let demo = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/demo");
    let seasons = ["D1_2122.csv", "D1_2223.csv", "D1_2324.csv"]
        .iter()
        .map(|f| read_csv_file(demo.join(f), &ParseOptions::default()))
        .collect::<Result<Vec<_>, _>>()?;
    let window: SeasonWindow = "2021-22..2023-24".parse()?;
    let pooled = pool_seasons(&seasons, &window)?;

    println!("Goal averages per venue\n");
    println!("{:<18} {:>6} {:>6} {:>6} {:>6}", "Team", "HS", "HC", "AS", "AC");
    for t in team_goal_averages(&pooled)? {
        println!(
            "{:<18} {:>6.3} {:>6.3} {:>6.3} {:>6.3}",
            t.team, t.home_scored, t.home_conceded, t.away_scored, t.away_conceded
        );
    }

    let model = estimate(&pooled)?;
    println!("\nStrengths over {window}\n");
    print!("{}", report::strengths(&model, Format::Text, 4));

    let means = model.table.component_means();
    println!("\ncomponent means {means:?}");
    Ok(())
}
