//! The Newcastle takeover study, packaged as a recipe over local copies of
//! the football-data.co.uk Premier League files.
//!
//! Nothing is downloaded here. Lay the files out as
//! `<dir>/<code>/E0.csv` (mirroring `mmz4281/<code>/E0.csv`) or as
//! `<dir>/E0_<code>.csv`, where `<code>` is the compact season code (`1516`).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::ingest::{pool_seasons, read_csv_file, Dataset, ParseOptions, Season, SeasonWindow};
use crate::league::{round_robin_fixtures, Fixture};
use crate::scenario::{compare_scenarios, ScenarioOptions, ScenarioReport, ScenarioSpec};
use crate::strength::{estimate, StrengthModel, StrengthVector};

pub const SOURCE_URL: &str = "https://www.football-data.co.uk/mmz4281";
pub const DIVISION: &str = "E0";
pub const TARGET_TEAM: &str = "Newcastle";
pub const DONOR_TEAM: &str = "Man City";

/// Man City pooled over 2005-06..2008-09, before their takeover.
pub const MAN_CITY_PRE_TAKEOVER: [f64; 4] = [0.797301, 0.890951, 0.958914, 1.005413];
/// Man City in 2009-10, the season after their takeover. This is the donor vector.
pub const MAN_CITY_POST_TAKEOVER: [f64; 4] = [1.271318, 0.980392, 1.568627, 0.775194];
/// Newcastle pooled over 2015-16..2019-20.
pub const NEWCASTLE_BASELINE: [f64; 4] = [0.945096, 0.890281, 0.791403, 1.006886];

/// Reported expected points and ranks for the target, before and after.
pub const NEWCASTLE_POINTS_BEFORE: f64 = 45.066317;
pub const NEWCASTLE_RANK_BEFORE: usize = 13;
pub const NEWCASTLE_POINTS_AFTER: f64 = 63.786796;
pub const NEWCASTLE_RANK_AFTER: usize = 7;

fn season(label: &str) -> Season {
    label.parse().expect("valid season literal")
}

pub fn man_city_window() -> SeasonWindow {
    SeasonWindow::new(season("2005-06"), season("2008-09")).expect("ordered")
}

pub fn man_city_post_window() -> SeasonWindow {
    SeasonWindow::single(season("2009-10"))
}

/// Newcastle spent 2016-17 in the second tier, so only four of these five
/// top-flight files contain them.
pub fn baseline_window() -> SeasonWindow {
    SeasonWindow::new(season("2015-16"), season("2019-20")).expect("ordered")
}

/// Season whose twenty clubs make up the simulated league.
pub fn fixture_season() -> Season {
    season("2018-19")
}

pub fn donor_vector() -> StrengthVector {
    StrengthVector::from_array(MAN_CITY_POST_TAKEOVER).expect("valid vector")
}

pub fn transplant_spec() -> ScenarioSpec {
    ScenarioSpec::transplant(TARGET_TEAM, donor_vector()).with_label("Newcastle with Man City 2009-10 strengths")
}

/// Download URL for one season's file.
pub fn season_url(season: Season, division: &str) -> String {
    format!("{SOURCE_URL}/{}/{division}.csv", season.compact_code())
}

/// Find a season file under `dir` in either supported layout.
pub fn locate_season_file(dir: &Path, season: Season, division: &str) -> Option<PathBuf> {
    let code = season.compact_code();
    [
        dir.join(&code).join(format!("{division}.csv")),
        dir.join(format!("{division}_{code}.csv")),
    ]
    .into_iter()
    .find(|p| p.is_file())
}

/// Load every season of `window` for `division`; all files must exist.
pub fn load_window(dir: &Path, window: &SeasonWindow, division: &str) -> Result<Dataset> {
    let datasets = window
        .seasons()
        .map(|s| {
            let path = locate_season_file(dir, s, division).ok_or_else(|| {
                Error::Io(std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    format!(
                        "no {division} file for {s} under {} (get it from {})",
                        dir.display(),
                        season_url(s, division)
                    ),
                ))
            })?;
            read_csv_file(&path, &ParseOptions::with_season(s))
        })
        .collect::<Result<Vec<_>>>()?;
    pool_seasons(&datasets, window)
}

pub fn strengths_for_window(dir: &Path, window: &SeasonWindow) -> Result<StrengthModel> {
    estimate(&load_window(dir, window, DIVISION)?)
}

/// Everything the recipe produces.
#[derive(Debug, Clone)]
pub struct ReproOutcome {
    pub baseline_model: StrengthModel,
    pub fixtures: Vec<Fixture>,
    pub report: ScenarioReport,
}

/// Estimate strengths over the baseline window, simulate a double round
/// robin of the fixture season's clubs, and transplant the donor vector
/// onto the target.
pub fn run(dir: &Path, options: ScenarioOptions) -> Result<ReproOutcome> {
    let baseline_model = strengths_for_window(dir, &baseline_window())?;
    let fixture_clubs = load_window(dir, &SeasonWindow::single(fixture_season()), DIVISION)?;
    let fixtures = round_robin_fixtures(fixture_clubs.teams())?;
    let report = compare_scenarios(
        &fixtures,
        &baseline_model.table,
        &baseline_model.league,
        &transplant_spec(),
        options,
    )?;
    Ok(ReproOutcome {
        baseline_model,
        fixtures,
        report,
    })
}

/// Human-readable recipe: files to fetch, layout, and equivalent commands.
pub fn recipe_text() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Takeover study reproduction recipe\n");
    let _ = writeln!(
        out,
        "1. Download these files (football-data.co.uk, Premier League = {DIVISION}):"
    );
    let mut seasons: Vec<Season> = man_city_window()
        .seasons()
        .chain(man_city_post_window().seasons())
        .chain(baseline_window().seasons())
        .collect();
    seasons.dedup();
    for s in &seasons {
        let _ = writeln!(out, "     {s}  {}", season_url(*s, DIVISION));
    }
    let _ = writeln!(
        out,
        "   Optional, second-tier season of the target: {}",
        season_url(season("2016-17"), "E1")
    );
    let _ = writeln!(
        out,
        "\n2. Store each as DATA/<code>/{DIVISION}.csv, e.g. DATA/1516/{DIVISION}.csv.\n"
    );
    let _ = writeln!(out, "3. Run:");
    let files = |w: SeasonWindow| {
        w.seasons()
            .map(|s| format!("--matches DATA/{}/{DIVISION}.csv", s.compact_code()))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        out,
        "   league-forecast strengths {} --window {}",
        files(man_city_window()),
        man_city_window()
    );
    let _ = writeln!(
        out,
        "   league-forecast strengths {} --window {}",
        files(baseline_window()),
        baseline_window()
    );
    let _ = writeln!(
        out,
        "   league-forecast simulate {} --window {} --round-robin --teams-from DATA/{}/{DIVISION}.csv",
        files(baseline_window()),
        baseline_window(),
        fixture_season().compact_code()
    );
    let v = MAN_CITY_POST_TAKEOVER;
    let _ = writeln!(
        out,
        "   echo '{{\"team\": \"{TARGET_TEAM}\", \"transplant\": [{}, {}, {}, {}]}}' > takeover.json",
        v[0], v[1], v[2], v[3]
    );
    let _ = writeln!(
        out,
        "   league-forecast scenario {} --window {} --round-robin --teams-from DATA/{}/{DIVISION}.csv --spec takeover.json",
        files(baseline_window()),
        baseline_window(),
        fixture_season().compact_code()
    );
    let _ = writeln!(out, "\n   or in one step: league-forecast repro --data-dir DATA\n");
    let _ = writeln!(
        out,
        "Reference: {TARGET_TEAM} {NEWCASTLE_POINTS_BEFORE:.6} pts (rank {NEWCASTLE_RANK_BEFORE}) -> {NEWCASTLE_POINTS_AFTER:.6} pts (rank {NEWCASTLE_RANK_AFTER})"
    );
    out
}
