//! Parse results files, inspect rejected rows and pool seasons.
//!
//! ```text
//! cargo run --example parse_results [-- path/to/E0.csv ...]
//! ```

use std::path::PathBuf;

use league_forecast::ingest::{parse_rows, pool_seasons, read_csv_file, season_from_path, ParseOptions, TeamAliases};
use league_forecast::SeasonWindow;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let demo = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/demo");
    let mut paths: Vec<PathBuf> = std::env::args_os().skip(1).map(PathBuf::from).collect();
    if paths.is_empty() {
        paths = ["D1_2122.csv", "D1_2223.csv", "D1_2324.csv"]
            .iter()
            .map(|f| demo.join(f))
            .collect();
    }

    let mut seasons = Vec::new();
    for path in &paths {
        let data = read_csv_file(path, &ParseOptions::default())?;
        let label = season_from_path(path).map_or("unlabelled".to_string(), |s| s.to_string());
        println!(
            "{:<40} {label:>10}  {} matches, {} teams",
            path.display(),
            data.len(),
            data.teams().len()
        );
        seasons.push(data);
    }

    if let Ok(window) = "2022-23..2023-24".parse::<SeasonWindow>() {
        if let Ok(pooled) = pool_seasons(&seasons, &window) {
            println!(
                "\npooled {window}: {} matches across {} teams",
                pooled.len(),
                pooled.teams().len()
            );
        }
    }

    // A messy file: alternative headers, an alias, a bad score and a blank line.
    let messy = "\u{feff}Date,HT,AT,HG,AG\n12/08/2023,Ashford R.,Greyhaven,2,1\n19/08/2023,Greyhaven,Calder Town,one,0\n\n26/08/2023,Calder Town,Ashford Rovers,0,0\n";
    let mut aliases = TeamAliases::new();
    aliases.insert("Ashford R.", "Ashford Rovers");
    let options = ParseOptions {
        season: Some("2023-24".parse()?),
        aliases,
        ..ParseOptions::default()
    };
    let report = parse_rows(messy.as_bytes(), &options)?;
    println!(
        "\nmessy input: {} of {} rows kept",
        report.records.len(),
        report.data_rows
    );
    for (row, record) in &report.records {
        println!(
            "  row {row}: {} {}-{} {}",
            record.home_team, record.home_goals, record.away_goals, record.away_team
        );
    }
    for err in &report.rejected {
        println!("  rejected: {err}");
    }
    Ok(())
}
