use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Row numbers are 1-based and count data rows only; the header is not row 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input has no data rows")]
    EmptyFile,

    #[error("header is missing required column `{0}`")]
    MissingColumn(String),

    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },

    #[error("row {row}: duplicate of row {first} ({home} vs {away}); pass allow_duplicates to keep it")]
    DuplicateRecord {
        row: usize,
        first: usize,
        home: String,
        away: String,
    },

    #[error("row {row}: date {date} lies outside season {season}")]
    SeasonDateMismatch { row: usize, date: String, season: String },

    #[error("invalid season label `{0}`")]
    InvalidSeason(String),

    #[error("records without a season label cannot be pooled by window")]
    UnlabelledSeason,

    #[error("no records fall inside season window {0}")]
    EmptyWindow(String),

    #[error("dataset has no records")]
    EmptyDataset,

    #[error("teams without both home and away matches: {}", .0.join(", "))]
    OneSidedTeam(Vec<String>),

    #[error("league average `{0}` is zero")]
    ZeroLeagueAverage(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("goal cap must be at least 1, got {0}")]
    InvalidGoalCap(u32),

    #[error("unknown team `{team}`{}", .context.as_ref().map(|c| format!(" ({c})")).unwrap_or_default())]
    UnknownTeam { team: String, context: Option<String> },

    #[error("need at least two teams for a round robin, got {0}")]
    TooFewTeams(usize),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid strength table: {0}")]
    InvalidStrengths(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(row: usize, message: impl Into<String>) -> Self {
        Error::MalformedRow {
            row,
            message: message.into(),
        }
    }

    pub(crate) fn unknown_team(team: impl Into<String>) -> Self {
        Error::UnknownTeam {
            team: team.into(),
            context: None,
        }
    }

    /// Attach the path of the file the error came from.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Strip any file context and return the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::File { source, .. } => source.root(),
            other => other,
        }
    }
}
