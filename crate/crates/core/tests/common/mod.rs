#![allow(dead_code)]

use std::path::{Path, PathBuf};

use league_forecast::ingest::{pool_seasons, read_csv_file, Dataset, ParseOptions};
use league_forecast::SeasonWindow;

pub fn demo_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/demo")
}

pub const DEMO_SEASONS: [&str; 3] = ["D1_2122.csv", "D1_2223.csv", "D1_2324.csv"];

pub fn demo_season(file: &str) -> Dataset {
    read_csv_file(demo_dir().join(file), &ParseOptions::default()).unwrap()
}

pub fn demo_pool() -> Dataset {
    let seasons: Vec<Dataset> = DEMO_SEASONS.iter().map(|f| demo_season(f)).collect();
    pool_seasons(&seasons, &"2021-22..2023-24".parse::<SeasonWindow>().unwrap()).unwrap()
}

/// Independent reference: λ^x e^-λ / x! with an explicit factorial.
pub fn pmf_by_factorial(x: u32, lambda: f64) -> f64 {
    let factorial: f64 = (1..=x).map(f64::from).product();
    lambda.powi(x as i32) * (-lambda).exp() / factorial
}

/// Brute-force 11x11 (or any cap) grid sum, written without the library.
pub fn brute_force_outcomes(lambda_home: f64, lambda_away: f64, cap: u32) -> (f64, f64, f64) {
    let (mut home, mut away, mut draw) = (0.0, 0.0, 0.0);
    for x in 0..=cap {
        for y in 0..=cap {
            let p = pmf_by_factorial(x, lambda_home) * pmf_by_factorial(y, lambda_away);
            match x.cmp(&y) {
                std::cmp::Ordering::Greater => home += p,
                std::cmp::Ordering::Less => away += p,
                std::cmp::Ordering::Equal => draw += p,
            }
        }
    }
    (home, away, draw)
}
