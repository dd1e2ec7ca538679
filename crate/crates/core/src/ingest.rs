//! Match-result ingestion for the football-data.co.uk CSV dialect.
//!
//! Columns are located by header name, so the varying column sets of the
//! archive (betting odds, shots, referees...) are ignored rather than
//! tripping a positional parser. Only the home team, away team and the two
//! full-time goal columns are required.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use chrono::NaiveDate;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A league season, identified by the calendar year it starts in.
///
/// Displayed as `2018-19`. Parses `2018-19`, `2018/19`, `2018-2019`, `2018_19`
/// and the compact football-data.co.uk code `1819`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Season {
    start_year: i32,
}

impl Season {
    pub fn starting(start_year: i32) -> Self {
        Season { start_year }
    }

    pub fn start_year(self) -> i32 {
        self.start_year
    }

    pub fn next(self) -> Self {
        Season::starting(self.start_year + 1)
    }

    /// Earliest and latest dates accepted for a match of this season.
    ///
    /// Runs from 1 July to 31 August of the following year; the tail covers
    /// seasons that overran their usual May finish.
    pub fn date_span(self) -> (NaiveDate, NaiveDate) {
        let first = NaiveDate::from_ymd_opt(self.start_year, 7, 1).expect("valid date");
        let last = NaiveDate::from_ymd_opt(self.start_year + 1, 8, 31).expect("valid date");
        (first, last)
    }

    pub fn contains_date(self, date: NaiveDate) -> bool {
        let (first, last) = self.date_span();
        first <= date && date <= last
    }

    /// The four-digit code football-data.co.uk uses in its URLs (`1819`).
    pub fn compact_code(self) -> String {
        format!(
            "{:02}{:02}",
            self.start_year.rem_euclid(100),
            (self.start_year + 1).rem_euclid(100)
        )
    }
}

impl fmt::Display for Season {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{:02}", self.start_year, (self.start_year + 1).rem_euclid(100))
    }
}

fn season_pattern() -> &'static Regex {
    static PATTERN: OnceLock<Regex> = OnceLock::new();
    PATTERN.get_or_init(|| Regex::new(r"^(?:(\d{4})[-/_](\d{2}|\d{4})|(\d{2})(\d{2}))$").expect("valid regex"))
}

impl FromStr for Season {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let invalid = || Error::InvalidSeason(s.to_string());
        let caps = season_pattern().captures(s).ok_or_else(invalid)?;
        let (start, end) = if let (Some(start), Some(end)) = (caps.get(1), caps.get(2)) {
            let start: i32 = start.as_str().parse().map_err(|_| invalid())?;
            let end_digits = end.as_str();
            let end: i32 = end_digits.parse().map_err(|_| invalid())?;
            let end = if end_digits.len() == 2 {
                start - start.rem_euclid(100) + end + if end < start.rem_euclid(100) { 100 } else { 0 }
            } else {
                end
            };
            (start, end)
        } else {
            let first: i32 = caps[3].parse().map_err(|_| invalid())?;
            let second: i32 = caps[4].parse().map_err(|_| invalid())?;
            // football-data.co.uk codes start at 9394
            let start = if first >= 90 { 1900 + first } else { 2000 + first };
            let end = start - start.rem_euclid(100) + second + if second < first { 100 } else { 0 };
            (start, end)
        };
        if end != start + 1 {
            return Err(invalid());
        }
        Ok(Season::starting(start))
    }
}

impl Serialize for Season {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Season {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inclusive, contiguous range of seasons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeasonWindow {
    pub first: Season,
    pub last: Season,
}

impl SeasonWindow {
    pub fn new(first: Season, last: Season) -> Result<Self> {
        if last < first {
            return Err(Error::InvalidSeason(format!("{first}..{last}")));
        }
        Ok(SeasonWindow { first, last })
    }

    pub fn single(season: Season) -> Self {
        SeasonWindow {
            first: season,
            last: season,
        }
    }

    pub fn contains(&self, season: Season) -> bool {
        self.first <= season && season <= self.last
    }

    pub fn seasons(&self) -> impl Iterator<Item = Season> {
        (self.first.start_year..=self.last.start_year).map(Season::starting)
    }
}

impl fmt::Display for SeasonWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "{}", self.first)
        } else {
            write!(f, "{}..{}", self.first, self.last)
        }
    }
}

/// Parses `2015-16..2019-20` or a single season label.
impl FromStr for SeasonWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once("..") {
            Some((first, last)) => SeasonWindow::new(first.parse()?, last.parse()?),
            None => Ok(SeasonWindow::single(s.parse()?)),
        }
    }
}

/// Infer a season from a file path such as `data/1516/E0.csv`,
/// `E0_2015-16.csv` or `2015-2016/results.csv`.
///
/// The component closest to the file name wins.
pub fn season_from_path(path: &Path) -> Option<Season> {
    static TOKEN: OnceLock<Regex> = OnceLock::new();
    let token = TOKEN.get_or_init(|| {
        Regex::new(r"(?:^|[^0-9])(\d{4}[-_]\d{4}|\d{4}[-_]\d{2}|\d{4})(?:$|[^0-9])").expect("valid regex")
    });
    let mut parts: Vec<String> = path
        .components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect();
    if let Some(stem) = path.file_stem() {
        if let Some(last) = parts.last_mut() {
            *last = stem.to_string_lossy().into_owned();
        }
    }
    parts.iter().rev().find_map(|part| {
        token
            .captures_iter(part)
            .filter_map(|c| c[1].parse::<Season>().ok())
            .last()
    })
}

/// Optional mapping from alternative team spellings to a canonical name.
///
/// Names are otherwise matched exactly after trimming; nothing is merged
/// unless it is listed here.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TeamAliases {
    map: HashMap<String, String>,
}

impl TeamAliases {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, alias: impl Into<String>, canonical: impl Into<String>) {
        self.map
            .insert(alias.into().trim().to_string(), canonical.into().trim().to_string());
    }

    /// Reads a two-column CSV `Alias,Team` (header required).
    pub fn from_csv(bytes: &[u8]) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
        let mut aliases = TeamAliases::new();
        for (idx, row) in reader.records().enumerate() {
            let row = row?;
            match (row.get(0), row.get(1)) {
                (Some(alias), Some(team)) if !alias.is_empty() && !team.is_empty() => aliases.insert(alias, team),
                _ => return Err(Error::malformed(idx + 1, "alias rows need two non-empty fields")),
            }
        }
        Ok(aliases)
    }

    pub fn resolve<'a>(&'a self, name: &'a str) -> &'a str {
        self.map.get(name).map(String::as_str).unwrap_or(name)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Season label stamped on every record. Never guessed from dates.
    pub season: Option<Season>,
    pub allow_duplicates: bool,
    pub aliases: TeamAliases,
}

impl ParseOptions {
    pub fn with_season(season: Season) -> Self {
        ParseOptions {
            season: Some(season),
            ..Default::default()
        }
    }
}

/// One completed fixture.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchRecord {
    pub home_team: String,
    pub away_team: String,
    pub home_goals: u32,
    pub away_goals: u32,
    pub date: Option<NaiveDate>,
    pub season: Option<Season>,
}

impl MatchRecord {
    pub fn new(home_team: impl Into<String>, away_team: impl Into<String>, home_goals: u32, away_goals: u32) -> Self {
        MatchRecord {
            home_team: home_team.into(),
            away_team: away_team.into(),
            home_goals,
            away_goals,
            date: None,
            season: None,
        }
    }

    pub fn on(mut self, date: NaiveDate) -> Self {
        self.date = Some(date);
        self
    }

    pub fn in_season(mut self, season: Season) -> Self {
        self.season = Some(season);
        self
    }

    fn validate(&self, row: usize) -> Result<()> {
        if self.home_team.trim().is_empty() || self.away_team.trim().is_empty() {
            return Err(Error::malformed(row, "empty team name"));
        }
        if self.home_team != self.away_team {
            if let (Some(date), Some(season)) = (self.date, self.season) {
                if !season.contains_date(date) {
                    return Err(Error::SeasonDateMismatch {
                        row,
                        date: date.format("%d/%m/%Y").to_string(),
                        season: season.to_string(),
                    });
                }
            }
            Ok(())
        } else {
            Err(Error::malformed(
                row,
                format!("team `{}` listed as both home and away", self.home_team),
            ))
        }
    }
}

/// A validated collection of match records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dataset {
    records: Vec<MatchRecord>,
    teams: BTreeSet<String>,
    seasons: BTreeSet<Season>,
    #[serde(skip)]
    allow_duplicates: bool,
}

impl Dataset {
    /// Validates records (rows numbered from 1 in the given order).
    pub fn from_records(records: Vec<MatchRecord>, allow_duplicates: bool) -> Result<Self> {
        for (idx, record) in records.iter().enumerate() {
            record.validate(idx + 1)?;
        }
        if !allow_duplicates {
            check_duplicates(records.iter().enumerate().map(|(i, r)| (i + 1, r)))?;
        }
        Ok(Self::assemble(records, allow_duplicates))
    }

    fn assemble(records: Vec<MatchRecord>, allow_duplicates: bool) -> Self {
        let teams = records
            .iter()
            .flat_map(|r| [r.home_team.clone(), r.away_team.clone()])
            .collect();
        let seasons = records.iter().filter_map(|r| r.season).collect();
        Dataset {
            records,
            teams,
            seasons,
            allow_duplicates,
        }
    }

    pub fn records(&self) -> &[MatchRecord] {
        &self.records
    }

    pub fn teams(&self) -> &BTreeSet<String> {
        &self.teams
    }

    pub fn seasons(&self) -> &BTreeSet<Season> {
        &self.seasons
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn allows_duplicates(&self) -> bool {
        self.allow_duplicates
    }

    /// Records involving `team` at either venue.
    pub fn matches_of<'a>(&'a self, team: &'a str) -> impl Iterator<Item = &'a MatchRecord> + 'a {
        self.records
            .iter()
            .filter(move |r| r.home_team == team || r.away_team == team)
    }

    /// Canonical CSV: `Date,HomeTeam,AwayTeam,FTHG,FTAG`, dates as dd/mm/yyyy.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("Date,HomeTeam,AwayTeam,FTHG,FTAG\n");
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for r in &self.records {
            let date = r.date.map(|d| d.format("%d/%m/%Y").to_string()).unwrap_or_default();
            writer
                .write_record([
                    date.as_str(),
                    &r.home_team,
                    &r.away_team,
                    &r.home_goals.to_string(),
                    &r.away_goals.to_string(),
                ])
                .expect("writing to memory");
        }
        let body = writer.into_inner().expect("writing to memory");
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        out
    }
}

fn check_duplicates<'a>(rows: impl Iterator<Item = (usize, &'a MatchRecord)>) -> Result<()> {
    let mut seen: HashMap<&MatchRecord, usize> = HashMap::new();
    for (row, record) in rows {
        if let Some(&first) = seen.get(record) {
            return Err(Error::DuplicateRecord {
                row,
                first,
                home: record.home_team.clone(),
                away: record.away_team.clone(),
            });
        }
        seen.insert(record, row);
    }
    Ok(())
}

/// Outcome of a row-by-row parse: accepted records plus one error per
/// rejected row. `records.len() + rejected.len() == data_rows`.
#[derive(Debug)]
pub struct ParseReport {
    pub records: Vec<(usize, MatchRecord)>,
    pub rejected: Vec<Error>,
    pub data_rows: usize,
}

struct Columns {
    home: usize,
    away: usize,
    home_goals: usize,
    away_goals: usize,
    date: Option<usize>,
}

const HOME_TEAM: &[&str] = &["HomeTeam", "HT", "Home"];
const AWAY_TEAM: &[&str] = &["AwayTeam", "AT", "Away"];
const HOME_GOALS: &[&str] = &["FTHG", "HG"];
const AWAY_GOALS: &[&str] = &["FTAG", "AG"];

impl Columns {
    fn locate(header: &csv::StringRecord) -> Result<Self> {
        let names: Vec<&str> = header
            .iter()
            .enumerate()
            .map(|(i, h)| {
                if i == 0 {
                    h.trim_start_matches('\u{feff}').trim()
                } else {
                    h.trim()
                }
            })
            .collect();
        let find = |candidates: &[&str]| candidates.iter().find_map(|c| names.iter().position(|n| n == c));
        let require =
            |candidates: &[&str]| find(candidates).ok_or_else(|| Error::MissingColumn(candidates[0].to_string()));
        Ok(Columns {
            home: require(HOME_TEAM)?,
            away: require(AWAY_TEAM)?,
            home_goals: require(HOME_GOALS)?,
            away_goals: require(AWAY_GOALS)?,
            date: find(&["Date"]),
        })
    }
}

fn parse_date(raw: &str, row: usize) -> Result<Option<NaiveDate>> {
    if raw.is_empty() {
        return Ok(None);
    }
    let year_digits = raw.rsplit('/').next().map(str::len).unwrap_or(0);
    let format = match year_digits {
        2 => "%d/%m/%y",
        4 => "%d/%m/%Y",
        _ => return Err(Error::malformed(row, format!("bad date `{raw}`"))),
    };
    NaiveDate::parse_from_str(raw, format)
        .map(Some)
        .map_err(|_| Error::malformed(row, format!("bad date `{raw}`")))
}

fn parse_goals(raw: &str, column: &str, row: usize) -> Result<u32> {
    if raw.is_empty() {
        return Err(Error::malformed(row, format!("missing {column}")));
    }
    raw.parse()
        .map_err(|_| Error::malformed(row, format!("{column} `{raw}` is not a non-negative integer")))
}

fn parse_row(record: &csv::StringRecord, cols: &Columns, row: usize, options: &ParseOptions) -> Result<MatchRecord> {
    let field = |idx: usize| record.get(idx).map(str::trim).unwrap_or("");
    let team = |idx: usize, what: &str| -> Result<String> {
        let name = field(idx);
        if name.is_empty() {
            return Err(Error::malformed(row, format!("missing {what}")));
        }
        Ok(options.aliases.resolve(name).to_string())
    };
    let parsed = MatchRecord {
        home_team: team(cols.home, "home team")?,
        away_team: team(cols.away, "away team")?,
        home_goals: parse_goals(field(cols.home_goals), "home goals", row)?,
        away_goals: parse_goals(field(cols.away_goals), "away goals", row)?,
        date: match cols.date {
            Some(idx) => parse_date(field(idx), row)?,
            None => None,
        },
        season: options.season,
    };
    parsed.validate(row)?;
    Ok(parsed)
}

/// Parse every data row, collecting per-row failures instead of stopping.
///
/// Header problems, empty input and duplicate detection are still fatal at
/// the `parse_csv` level; here only structural failures (no header, no rows,
/// missing columns) return `Err`. Rows whose fields are all blank (trailing
/// comma lines are common in the archive) are not data rows.
pub fn parse_rows(bytes: &[u8], options: &ParseOptions) -> Result<ParseReport> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(bytes);
    let header = reader.headers()?.clone();
    if header.iter().all(|h| h.trim().is_empty()) {
        return Err(Error::EmptyFile);
    }
    let cols = Columns::locate(&header)?;

    let mut report = ParseReport {
        records: Vec::new(),
        rejected: Vec::new(),
        data_rows: 0,
    };
    for result in reader.records() {
        let row = report.data_rows + 1;
        let record = match result {
            Ok(record) => record,
            Err(err) => {
                report.data_rows += 1;
                report.rejected.push(Error::malformed(row, err.to_string()));
                continue;
            }
        };
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        report.data_rows += 1;
        match parse_row(&record, &cols, row, options) {
            Ok(parsed) => report.records.push((row, parsed)),
            Err(err) => report.rejected.push(err),
        }
    }
    if report.data_rows == 0 {
        return Err(Error::EmptyFile);
    }
    Ok(report)
}

/// Parse a results file into a [`Dataset`], failing on the first bad row.
pub fn parse_csv(bytes: &[u8], options: &ParseOptions) -> Result<Dataset> {
    let mut report = parse_rows(bytes, options)?;
    if !report.rejected.is_empty() {
        return Err(report.rejected.swap_remove(0));
    }
    if !options.allow_duplicates {
        check_duplicates(report.records.iter().map(|(row, r)| (*row, r)))?;
    }
    let records = report.records.into_iter().map(|(_, r)| r).collect();
    Ok(Dataset::assemble(records, options.allow_duplicates))
}

/// Read and parse a file, inferring the season from its path when the
/// options do not carry one.
pub fn read_csv_file(path: impl AsRef<Path>, options: &ParseOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::from(e).in_file(path))?;
    let mut options = options.clone();
    if options.season.is_none() {
        options.season = season_from_path(path);
    }
    parse_csv(&bytes, &options).map_err(|e| e.in_file(path))
}

/// Concatenate the records of `datasets` whose season lies in `window`.
///
/// Seasons come out in chronological order; records keep their relative
/// order within a season.
pub fn pool_seasons(datasets: &[Dataset], window: &SeasonWindow) -> Result<Dataset> {
    let mut records = Vec::new();
    for dataset in datasets {
        for record in dataset.records() {
            let season = record.season.ok_or(Error::UnlabelledSeason)?;
            if window.contains(season) {
                records.push(record.clone());
            }
        }
    }
    if records.is_empty() {
        return Err(Error::EmptyWindow(window.to_string()));
    }
    records.sort_by_key(|r| r.season);
    let allow_duplicates = datasets.iter().any(Dataset::allows_duplicates);
    Dataset::from_records(records, allow_duplicates)
}

/// Season label of the most recent season in the dataset, if any.
pub fn latest_season(dataset: &Dataset) -> Option<Season> {
    dataset.seasons().iter().next_back().copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "Div,Date,HomeTeam,AwayTeam,FTHG,FTAG,FTR\nE0,14/08/18,Newcastle,Tottenham,1,2,A\n";

    #[test]
    fn maps_a_football_data_row() {
        let data = parse_csv(SAMPLE.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!(data.len(), 1);
        let r = &data.records()[0];
        assert_eq!(r.home_team, "Newcastle");
        assert_eq!(r.away_team, "Tottenham");
        assert_eq!((r.home_goals, r.away_goals), (1, 2));
        assert_eq!(r.date, NaiveDate::from_ymd_opt(2018, 8, 14));
        assert_eq!(r.season, None);
    }

    #[test]
    fn header_only_is_empty() {
        let err = parse_csv(b"Div,Date,HomeTeam,AwayTeam,FTHG,FTAG\n", &ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::EmptyFile));
        assert!(matches!(
            parse_csv(b"", &ParseOptions::default()),
            Err(Error::EmptyFile)
        ));
    }

    #[test]
    fn non_integer_goals_report_row() {
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nA,B,1,0\nC,D,abc,1\n";
        match parse_csv(csv.as_bytes(), &ParseOptions::default()) {
            Err(Error::MalformedRow { row, .. }) => assert_eq!(row, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_goal_value_rejected() {
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nA,B,,0\n";
        let err = parse_csv(csv.as_bytes(), &ParseOptions::default()).unwrap_err();
        assert!(err.to_string().contains("missing home goals"), "{err}");
    }

    #[test]
    fn missing_column_named() {
        let err = parse_csv(b"HomeTeam,AwayTeam,FTHG\nA,B,1\n", &ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::MissingColumn(ref c) if c == "FTAG"));
    }

    #[test]
    fn both_date_forms_and_extra_columns() {
        let csv = "Referee,Date,AwayTeam,HomeTeam,FTAG,FTHG\nX,01/09/2019,B,A,0,3\nY,02/09/19,A,B,1,1\n";
        let data = parse_csv(csv.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!(data.records()[0].date, NaiveDate::from_ymd_opt(2019, 9, 1));
        assert_eq!(data.records()[1].date, NaiveDate::from_ymd_opt(2019, 9, 2));
        assert_eq!(data.records()[0].home_team, "A");
        assert_eq!(data.records()[0].home_goals, 3);
    }

    #[test]
    fn bad_date_rejected() {
        let csv = "Date,HomeTeam,AwayTeam,FTHG,FTAG\n31/02/2019,A,B,1,1\n";
        assert!(matches!(
            parse_csv(csv.as_bytes(), &ParseOptions::default()),
            Err(Error::MalformedRow { row: 1, .. })
        ));
    }

    #[test]
    fn trims_team_names_and_bom() {
        let csv = "\u{feff}HomeTeam,AwayTeam,FTHG,FTAG\n  Man City ,Newcastle ,2,1\n";
        let data = parse_csv(csv.as_bytes(), &ParseOptions::default()).unwrap();
        assert!(data.teams().contains("Man City"));
        assert!(data.teams().contains("Newcastle"));
    }

    #[test]
    fn self_fixture_rejected() {
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nA,A,1,1\n";
        assert!(matches!(
            parse_csv(csv.as_bytes(), &ParseOptions::default()),
            Err(Error::MalformedRow { row: 1, .. })
        ));
    }

    #[test]
    fn duplicates_rejected_unless_allowed() {
        let csv = "Date,HomeTeam,AwayTeam,FTHG,FTAG\n01/09/19,A,B,1,0\n01/09/19,A,B,1,0\n";
        match parse_csv(csv.as_bytes(), &ParseOptions::default()) {
            Err(Error::DuplicateRecord { row, first, .. }) => assert_eq!((row, first), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
        let options = ParseOptions {
            allow_duplicates: true,
            ..Default::default()
        };
        assert_eq!(parse_csv(csv.as_bytes(), &options).unwrap().len(), 2);
    }

    #[test]
    fn blank_trailing_rows_skipped() {
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nA,B,1,0\n,,,\n";
        let report = parse_rows(csv.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!(report.data_rows, 1);
        assert_eq!(report.records.len(), 1);
    }

    #[test]
    fn lenient_parse_accounts_for_every_row() {
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nA,B,1,0\nA,C,x,0\nB,C,2\nC,A,0,0\n";
        let report = parse_rows(csv.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!(report.data_rows, 4);
        assert_eq!(report.records.len() + report.rejected.len(), 4);
        assert_eq!(report.rejected.len(), 2);
    }

    #[test]
    fn alias_map_applied() {
        let mut aliases = TeamAliases::new();
        aliases.insert("Manchester City", "Man City");
        let options = ParseOptions {
            aliases,
            ..Default::default()
        };
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nManchester City,Man City,1,0\n";
        // aliasing onto the opponent makes a self-fixture
        assert!(parse_csv(csv.as_bytes(), &options).is_err());
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nManchester City,Newcastle,1,0\n";
        let data = parse_csv(csv.as_bytes(), &options).unwrap();
        assert!(data.teams().contains("Man City"));
    }

    #[test]
    fn no_fuzzy_merging() {
        let csv = "HomeTeam,AwayTeam,FTHG,FTAG\nManchester City,Newcastle,1,0\nMan City,Newcastle,2,0\n";
        let data = parse_csv(csv.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!(data.teams().len(), 3);
    }

    #[test]
    fn season_labels() {
        let s: Season = "2018-19".parse().unwrap();
        assert_eq!(s.start_year(), 2018);
        assert_eq!("2018/2019".parse::<Season>().unwrap(), s);
        assert_eq!("1819".parse::<Season>().unwrap(), s);
        assert_eq!("9900".parse::<Season>().unwrap().start_year(), 1999);
        assert_eq!("1999-00".parse::<Season>().unwrap().start_year(), 1999);
        assert_eq!(s.to_string(), "2018-19");
        assert_eq!(s.compact_code(), "1819");
        assert!("2018-20".parse::<Season>().is_err());
        assert!("abc".parse::<Season>().is_err());
    }

    #[test]
    fn season_inferred_from_paths() {
        let s = |p: &str| season_from_path(Path::new(p)).map(|s| s.to_string());
        assert_eq!(s("data/1516/E0.csv").as_deref(), Some("2015-16"));
        assert_eq!(s("E0_2015-16.csv").as_deref(), Some("2015-16"));
        assert_eq!(s("x/2015-2016/results.csv").as_deref(), Some("2015-16"));
        assert_eq!(s("D1_2324.csv").as_deref(), Some("2023-24"));
        assert_eq!(s("results.csv"), None);
    }

    #[test]
    fn season_date_mismatch() {
        let csv = "Date,HomeTeam,AwayTeam,FTHG,FTAG\n14/08/2018,A,B,1,0\n";
        let options = ParseOptions::with_season("2019-20".parse().unwrap());
        assert!(matches!(
            parse_csv(csv.as_bytes(), &options),
            Err(Error::SeasonDateMismatch { row: 1, .. })
        ));
        let options = ParseOptions::with_season("2018-19".parse().unwrap());
        assert!(parse_csv(csv.as_bytes(), &options).is_ok());
    }

    #[test]
    fn window_parsing() {
        let w: SeasonWindow = "2015-16..2019-20".parse().unwrap();
        assert_eq!(w.seasons().count(), 5);
        assert!(w.contains("2016-17".parse().unwrap()));
        assert!(!w.contains("2020-21".parse().unwrap()));
        assert!("2019-20..2015-16".parse::<SeasonWindow>().is_err());
        assert_eq!(w.to_string(), "2015-16..2019-20");
    }

    fn season_file(season: &str, rows: &[(&str, &str)]) -> Dataset {
        let mut csv = String::from("HomeTeam,AwayTeam,FTHG,FTAG\n");
        for (h, a) in rows {
            csv.push_str(&format!("{h},{a},1,0\n"));
        }
        parse_csv(csv.as_bytes(), &ParseOptions::with_season(season.parse().unwrap())).unwrap()
    }

    #[test]
    fn pooling_orders_seasons_and_filters() {
        let later = season_file("2019-20", &[("C", "D")]);
        let earlier = season_file("2018-19", &[("A", "B"), ("B", "A")]);
        let pooled = pool_seasons(&[later.clone(), earlier.clone()], &"2018-19..2019-20".parse().unwrap()).unwrap();
        assert_eq!(pooled.len(), 3);
        assert_eq!(pooled.records()[0].home_team, "A");
        assert_eq!(pooled.records()[2].home_team, "C");
        assert_eq!(pooled.teams().len(), 4);

        let only = pool_seasons(&[later.clone(), earlier], &"2019-20".parse().unwrap()).unwrap();
        assert_eq!(only.teams().len(), 2);

        let err = pool_seasons(&[later], &"2010-11".parse().unwrap()).unwrap_err();
        assert!(matches!(err, Error::EmptyWindow(_)));
    }

    #[test]
    fn pooling_requires_labels() {
        let data = parse_csv(b"HomeTeam,AwayTeam,FTHG,FTAG\nA,B,1,0\n", &ParseOptions::default()).unwrap();
        assert!(matches!(
            pool_seasons(&[data], &"2018-19".parse().unwrap()),
            Err(Error::UnlabelledSeason)
        ));
    }

    #[test]
    fn canonical_csv_reparses() {
        let csv = "Div,Date,HomeTeam,AwayTeam,FTHG,FTAG\nE0,14/08/18,\"Brighton, Hove\",Tottenham,1,2\nE0,,A,B,0,0\n";
        let data = parse_csv(csv.as_bytes(), &ParseOptions::default()).unwrap();
        let out = data.to_csv();
        assert!(out.starts_with("Date,HomeTeam,AwayTeam,FTHG,FTAG\n14/08/2018,"));
        assert_eq!(parse_csv(out.as_bytes(), &ParseOptions::default()).unwrap(), data);
    }
}
