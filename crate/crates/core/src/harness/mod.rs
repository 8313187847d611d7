//! Job configuration, command drivers and output plumbing behind the CLI.

mod commands;
mod verify;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

pub use commands::{cmd_bounds, cmd_count, cmd_export_code, cmd_ratio_table, RatioRow};
pub use verify::{cmd_verify, CheckRecord, VerifyReport};

use crate::bounds::BoundsError;
use crate::counting::CountError;
use crate::group::{GroupError, GroupSpec};
use crate::limits::Limits;

/// Environment variable naming the directory for output files when `--out` is absent.
pub const OUT_DIR_ENV: &str = "SUBSET_SUMS_OUT_DIR";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("methods disagree for group {group}: {left} and {right} first differ at h = {h}, a_index = {a}")]
    Disagreement {
        group: String,
        left: Method,
        right: Method,
        h: usize,
        a: usize,
    },
    #[error("configuration error: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Brute,
    Dp,
    Recurrence,
    All,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Dp => "dp",
            Method::Recurrence => "recurrence",
            Method::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Plain codebook listing (export-code only).
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Text => "txt",
        }
    }
}

/// A subset size given either literally or relative to the group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HSpec {
    Fixed(usize),
    /// `floor(n/2)`.
    Half,
    /// `floor(n/2) + 1`.
    HalfPlusOne,
}

impl HSpec {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            HSpec::Fixed(h) => h,
            HSpec::Half => n / 2,
            HSpec::HalfPlusOne => n / 2 + 1,
        }
    }
}

impl FromStr for HSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "half" => Ok(HSpec::Half),
            "half+1" => Ok(HSpec::HalfPlusOne),
            other => other
                .parse()
                .map(HSpec::Fixed)
                .map_err(|_| format!("expected an integer, `half` or `half+1`, got {other:?}")),
        }
    }
}

/// Requested subset sizes. Unset ends fall back to a per-command default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HRange {
    pub min: Option<HSpec>,
    pub max: Option<HSpec>,
}

impl HRange {
    pub fn single(h: HSpec) -> Self {
        HRange {
            min: Some(h),
            max: Some(h),
        }
    }

    pub(crate) fn resolve(&self, n: usize, default: (usize, usize)) -> (usize, usize) {
        (
            self.min.map_or(default.0, |h| h.resolve(n)),
            self.max.map_or(default.1, |h| h.resolve(n)),
        )
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub groups: Vec<GroupSpec>,
    pub h: HRange,
    pub method: Method,
    pub limits: Limits,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub allow_out_of_range: bool,
    /// Target element index for code export.
    pub a_index: usize,
}

impl JobConfig {
    pub fn new(groups: Vec<GroupSpec>) -> Self {
        JobConfig {
            groups,
            h: HRange::default(),
            method: Method::Dp,
            limits: Limits::default(),
            format: Format::Csv,
            out: None,
            seed: crate::code::DEFAULT_SEED,
            allow_out_of_range: false,
            a_index: 0,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.groups.is_empty() {
            return Err(HarnessError::Config(
                "at least one --group is required".into(),
            ));
        }
        if self.limits.enumeration == 0
            || self.limits.dp_additions == 0
            || self.limits.exact_x_max_n == 0
        {
            return Err(HarnessError::Config("limits must be positive".into()));
        }
        for g in &self.groups {
            let n = g.order();
            let (lo, hi) = self.h.resolve(n, (0, n));
            if lo > hi || hi > n {
                return Err(HarnessError::Config(format!(
                    "h range {lo}..={hi} is not within [0, {n}] for group {g}"
                )));
            }
        }
        Ok(())
    }

    /// File name used when only an output directory is known.
    pub fn default_file_name(&self, command: &str) -> String {
        let groups: Vec<String> = self
            .groups
            .iter()
            .map(|g| g.to_string().replace(',', "x"))
            .collect();
        format!("{command}-{}.{}", groups.join("_"), self.format.extension())
    }
}

/// Where a job's output goes: `--out`, else `$SUBSET_SUMS_OUT_DIR/<default name>`,
/// else standard output (`None`).
pub fn output_path(config: &JobConfig, command: &str) -> Option<PathBuf> {
    if let Some(p) = &config.out {
        return Some(p.clone());
    }
    std::env::var_os(OUT_DIR_ENV).map(|dir| Path::new(&dir).join(config.default_file_name(command)))
}

pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), HarnessError> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(p, contents)?;
        }
        None => {
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(contents.as_bytes())?;
        }
    }
    Ok(())
}
