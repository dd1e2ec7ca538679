//! Forecast single fixtures from goal rates or strength vectors.
//!
//! ```text
//! cargo run --example match_forecast
//! ```

use league_forecast::report::{self, Format};
use league_forecast::scoremodel::{forecast, match_rates, poisson_pmf, ScoreGrid};
use league_forecast::{GoalCap, LeagueAverages, MatchRates, StrengthVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Arsenal average 1.842 goals, Leicester 1.5.
    let rates = MatchRates::new(1.842, 1.5)?;
    let p_two = poisson_pmf(2, rates.lambda_home)?;
    let p_one = poisson_pmf(1, rates.lambda_away)?;
    println!("P(Arsenal score 2)   = {:.4}", p_two);
    println!("P(Leicester score 1) = {:.4}", p_one);

    let grid = ScoreGrid::new(rates, GoalCap::DEFAULT)?;
    println!("P(2-1)               = {:.4}", grid.get(2, 1).unwrap_or(0.0));
    let (h, a, p) = grid.most_likely();
    println!("most likely score    = {h}-{a} ({p:.4})\n");
    print!(
        "{}",
        report::forecast(
            "Arsenal",
            "Leicester",
            &forecast(rates, GoalCap::DEFAULT)?,
            Format::Text,
            4
        )
    );

    // Strength vectors: Man City 2005-09 at home to Newcastle 2015-20.
    let league = LeagueAverages::from_multipliers(1.37, 1.37)?;
    let city = StrengthVector::new(0.797301, 0.890951, 0.958914, 1.005413)?;
    let newcastle = StrengthVector::new(0.945096, 0.890281, 0.791403, 1.006886)?;
    let f = forecast(match_rates(&city, &newcastle, &league)?, GoalCap::DEFAULT)?;
    println!();
    print!("{}", report::forecast("Man City", "Newcastle", &f, Format::Text, 4));

    println!("\ncoverage by goal cap at rates 2.5 / 2.5");
    for cap in [4, 6, 8, 10, 12] {
        let f = forecast(MatchRates::new(2.5, 2.5)?, GoalCap::new(cap)?)?;
        println!("  0..={cap:<2} {:.8}", f.grid_coverage);
    }
    Ok(())
}
