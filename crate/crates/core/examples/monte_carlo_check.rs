//! Compare the analytic score grid with simulated Poisson matches.
//!
//! ```text
//! cargo run --release --example monte_carlo_check [-- SAMPLES]
//! ```

use league_forecast::scoremodel::forecast;
use league_forecast::{GoalCap, MatchRates};
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Poisson};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(200_000);
    let cap = GoalCap::DEFAULT;
    let mut rng = rand::rngs::StdRng::seed_from_u64(1);

    println!(
        "{:>6} {:>6}  {:>9} {:>9} {:>9}  {:>6}",
        "λH", "λA", "home", "draw", "away", "max z"
    );
    for _ in 0..8 {
        let (lh, la) = (rng.gen_range(0.2..4.0), rng.gen_range(0.2..4.0));
        let f = forecast(MatchRates::new(lh, la)?, cap)?;
        let (hd, ad) = (Poisson::new(lh)?, Poisson::new(la)?);
        let mut counts = [0u64; 3];
        for _ in 0..samples {
            let (x, y): (f64, f64) = (hd.sample(&mut rng), ad.sample(&mut rng));
            if x > f64::from(cap.get()) || y > f64::from(cap.get()) {
                continue;
            }
            counts[if x > y {
                0
            } else if x == y {
                1
            } else {
                2
            }] += 1;
        }
        let n = samples as f64;
        let z = [f.prob_home_win, f.prob_draw, f.prob_away_win]
            .iter()
            .zip(counts)
            .map(|(p, c)| (c as f64 / n - p).abs() / (p * (1.0 - p) / n).sqrt())
            .fold(0.0, f64::max);
        println!(
            "{lh:>6.3} {la:>6.3}  {:>9.5} {:>9.5} {:>9.5}  {z:>6.2}",
            f.prob_home_win, f.prob_draw, f.prob_away_win
        );
    }
    Ok(())
}
