//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::ingest::{pool_seasons, read_csv_file, Dataset, ParseOptions, Season, SeasonWindow, TeamAliases};
use crate::league::{load_fixtures, round_robin_fixtures, simulate_standings, Fixture};
use crate::report::{self, Format};
use crate::repro;
use crate::scenario::{compare_scenarios, ScenarioOptions, ScenarioSpec};
use crate::scoremodel::{predict_match, ForecastOptions, GoalCap};
use crate::strength::{estimate, LeagueAverages, StrengthModel, StrengthTable, UnknownTeamPolicy};

#[derive(Debug, Parser)]
#[command(
    name = "league-forecast",
    version,
    about = "Poisson expected-points league forecasts"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate attack/defence strengths and league averages from results
    Strengths {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Forecast a single fixture
    Predict {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        home: String,
        away: String,
    },
    /// Build an expected-points table over a fixture list
    Simulate {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        fixtures: FixtureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare standings before and after a strength edit
    Scenario {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        fixtures: FixtureArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Scenario JSON document
        #[arg(long)]
        spec: PathBuf,
        /// Strength table (JSON or CSV) for `transplant_from` lookups; defaults to the baseline table
        #[arg(long)]
        donor_strengths: Option<PathBuf>,
        /// Recompute league averages and ratios after the edit
        #[arg(long)]
        renormalize: bool,
    },
    /// Print the takeover reproduction recipe, or run it over local files
    Repro {
        /// Directory holding the season files; without it only the recipe is printed
        #[arg(long)]
        data_dir: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        renormalize: bool,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Results CSV (repeatable); season inferred from the path unless --season is given
    #[arg(long = "matches", value_name = "CSV")]
    matches: Vec<PathBuf>,
    /// Season label applied to every --matches file
    #[arg(long)]
    season: Option<String>,
    /// Pool only these seasons, e.g. 2015-16..2019-20
    #[arg(long)]
    window: Option<String>,
    /// CSV of `Alias,Team` spellings to merge
    #[arg(long)]
    aliases: Option<PathBuf>,
    #[arg(long)]
    allow_duplicates: bool,
    /// Precomputed strength table (JSON or CSV) instead of --matches
    #[arg(long, conflicts_with = "matches")]
    strengths: Option<PathBuf>,
    /// Overall home,away goal multipliers for a CSV strength table
    #[arg(long, value_name = "HOME,AWAY")]
    multipliers: Option<String>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 10)]
    goal_cap: u32,
    /// Treat teams missing from the strength table as league-typical
    #[arg(long)]
    neutral_fallback: bool,
}

#[derive(Debug, Args)]
struct FixtureArgs {
    /// Fixture CSV with HomeTeam,AwayTeam columns
    #[arg(long, conflicts_with = "round_robin")]
    fixtures: Option<PathBuf>,
    /// Generate a full double round robin
    #[arg(long)]
    round_robin: bool,
    /// Take the round-robin clubs from this CSV's HomeTeam/AwayTeam columns
    #[arg(long, requires = "round_robin", conflicts_with = "teams")]
    teams_from: Option<PathBuf>,
    /// Comma-separated round-robin clubs
    #[arg(long, requires = "round_robin")]
    teams: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = report::DEFAULT_DECIMALS)]
    decimals: usize,
}

impl OutputArgs {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Data(err)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<Vec<u8>> {
    std::fs::read(path).map_err(|e| Failure::Data(Error::from(e).in_file(path)))
}

impl ModelArgs {
    fn options(&self) -> Outcome<ForecastOptions> {
        Ok(ForecastOptions {
            goal_cap: GoalCap::new(self.goal_cap).map_err(|e| Failure::Usage(e.to_string()))?,
            unknown_teams: if self.neutral_fallback {
                UnknownTeamPolicy::Neutral
            } else {
                UnknownTeamPolicy::Error
            },
        })
    }
}

fn parse_multipliers(raw: &str) -> Outcome<LeagueAverages> {
    let usage = || Failure::Usage(format!("--multipliers expects HOME,AWAY, got `{raw}`"));
    let (home, away) = raw.split_once(',').ok_or_else(usage)?;
    let home: f64 = home.trim().parse().map_err(|_| usage())?;
    let away: f64 = away.trim().parse().map_err(|_| usage())?;
    Ok(LeagueAverages::from_multipliers(home, away)?)
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn load_table(path: &Path) -> Outcome<(StrengthTable, Option<LeagueAverages>)> {
    let bytes = read(path)?;
    let loaded = if is_json(path) {
        StrengthModel::table_from_json(&bytes)
    } else {
        StrengthTable::from_csv(&bytes).map(|t| (t, None))
    };
    loaded.map_err(|e| Failure::Data(e.in_file(path)))
}

impl DataArgs {
    fn dataset(&self) -> Outcome<Dataset> {
        if self.matches.is_empty() {
            return Err(Failure::Usage("at least one --matches file is required".into()));
        }
        let season = self
            .season
            .as_deref()
            .map(str::parse::<Season>)
            .transpose()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let window = self
            .window
            .as_deref()
            .map(str::parse::<SeasonWindow>)
            .transpose()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let aliases = match &self.aliases {
            Some(path) => TeamAliases::from_csv(&read(path)?).map_err(|e| Failure::Data(e.in_file(path)))?,
            None => TeamAliases::new(),
        };
        let options = ParseOptions {
            season,
            allow_duplicates: self.allow_duplicates,
            aliases,
        };
        let datasets = self
            .matches
            .iter()
            .map(|p| read_csv_file(p, &options))
            .collect::<Result<Vec<_>, _>>()?;
        let pooled = match window {
            Some(window) => pool_seasons(&datasets, &window)?,
            None => {
                let records = datasets.iter().flat_map(|d| d.records().iter().cloned()).collect();
                Dataset::from_records(records, self.allow_duplicates)?
            }
        };
        Ok(pooled)
    }

    fn model(&self) -> Outcome<StrengthModel> {
        let multipliers = self.multipliers.as_deref().map(parse_multipliers).transpose()?;
        match &self.strengths {
            Some(path) => {
                let (table, league) = load_table(path)?;
                let league = multipliers.or(league).ok_or_else(|| {
                    Failure::Usage("strength table has no league averages; pass --multipliers HOME,AWAY".into())
                })?;
                Ok(StrengthModel { league, table })
            }
            None => {
                if multipliers.is_some() {
                    return Err(Failure::Usage("--multipliers only applies with --strengths".into()));
                }
                Ok(estimate(&self.dataset()?)?)
            }
        }
    }
}

impl FixtureArgs {
    fn fixtures(&self, model: &StrengthModel) -> Outcome<Vec<Fixture>> {
        match (&self.fixtures, self.round_robin) {
            (Some(path), false) => load_fixtures(&read(path)?).map_err(|e| Failure::Data(e.in_file(path))),
            (None, true) => {
                let teams: Vec<String> = if let Some(path) = &self.teams_from {
                    let listed = load_fixtures(&read(path)?).map_err(|e| Failure::Data(e.in_file(path)))?;
                    listed.into_iter().flat_map(|f| [f.home_team, f.away_team]).collect()
                } else if let Some(list) = &self.teams {
                    list.split(',')
                        .map(|t| t.trim().to_string())
                        .filter(|t| !t.is_empty())
                        .collect()
                } else {
                    model.table.teams().map(str::to_string).collect()
                };
                Ok(round_robin_fixtures(teams)?)
            }
            _ => Err(Failure::Usage("give exactly one of --fixtures or --round-robin".into())),
        }
    }
}

fn emit(output: &OutputArgs, text: String, stdout: &mut dyn Write) -> Outcome<()> {
    match &output.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Data(Error::from(e).in_file(path))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(Error::from(e))),
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Outcome<()> {
    match cli.command {
        Command::Strengths { data, output } => {
            if data.strengths.is_some() {
                return Err(Failure::Usage("strengths estimates from --matches files".into()));
            }
            let model = estimate(&data.dataset()?)?;
            emit(
                &output,
                report::strengths(&model, output.format(), output.decimals),
                stdout,
            )
        }
        Command::Predict {
            data,
            model,
            output,
            home,
            away,
        } => {
            let options = model.options()?;
            let strengths = data.model()?;
            let forecast = predict_match(&home, &away, &strengths.table, &strengths.league, options)?;
            emit(
                &output,
                report::forecast(&home, &away, &forecast, output.format(), output.decimals),
                stdout,
            )
        }
        Command::Simulate {
            data,
            model,
            fixtures,
            output,
        } => {
            let options = model.options()?;
            let strengths = data.model()?;
            let fixtures = fixtures.fixtures(&strengths)?;
            let table = simulate_standings(&fixtures, &strengths.table, &strengths.league, options)?;
            emit(
                &output,
                report::standings(&table, output.format(), output.decimals),
                stdout,
            )
        }
        Command::Scenario {
            data,
            model,
            fixtures,
            output,
            spec,
            donor_strengths,
            renormalize,
        } => {
            let options = ScenarioOptions {
                forecast: model.options()?,
                renormalize,
            };
            let strengths = data.model()?;
            let donors = match donor_strengths.as_deref() {
                Some(path) => load_table(path)?.0,
                None => strengths.table.clone(),
            };
            let spec =
                ScenarioSpec::from_json(&read(&spec)?, Some(&donors)).map_err(|e| Failure::Data(e.in_file(&spec)))?;
            let fixtures = fixtures.fixtures(&strengths)?;
            let report = compare_scenarios(&fixtures, &strengths.table, &strengths.league, &spec, options)?;
            emit(
                &output,
                report::scenario(&report, output.format(), output.decimals),
                stdout,
            )
        }
        Command::Repro {
            data_dir,
            model,
            output,
            renormalize,
        } => match data_dir {
            None => emit(&output, repro::recipe_text(), stdout),
            Some(dir) => {
                let options = ScenarioOptions {
                    forecast: model.options()?,
                    renormalize,
                };
                let outcome = repro::run(&dir, options)?;
                emit(
                    &output,
                    report::scenario(&outcome.report, output.format(), output.decimals),
                    stdout,
                )
            }
        },
    }
}

/// Parse `args` and run the command, returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let rendered = err.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Data(err)) => {
            let _ = writeln!(stderr, "error: {err}");
            2
        }
    }
}
