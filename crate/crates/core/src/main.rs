use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use subset_sums::group::{abelian_groups_of_order, GroupSpec};
use subset_sums::harness::{
    cmd_bounds, cmd_count, cmd_export_code, cmd_ratio_table, cmd_verify, emit, output_path, Format,
    HRange, HSpec, HarnessError, JobConfig, Method,
};
use subset_sums::limits::{
    Limits, DEFAULT_DP_LIMIT, DEFAULT_ENUMERATION_LIMIT, DEFAULT_EXACT_X_MAX_N,
};

#[derive(Parser)]
#[command(
    name = "subset-sums",
    version,
    about = "Exact h-subset sum counts over finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count f_a(h) for every a and write the table.
    Count(Common),
    /// Run the property suite and print a JSON report; exit status 1 on any violation.
    Verify(Common),
    /// Check the deviation bound over a grid of (group, h).
    Bounds(Common),
    /// Tabulate min/max ratios against 1 - X(h).
    RatioTable(Common),
    /// Write F_a(h) as a constant-weight code.
    ExportCode {
        #[command(flatten)]
        common: Common,
        /// Canonical index of the target sum a.
        #[arg(long, default_value_t = 0)]
        a: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Group as comma-separated cyclic orders, e.g. "2,2,2". Repeatable.
    #[arg(long = "group", value_parser = parse_group)]
    groups: Vec<GroupSpec>,
    /// Every abelian group of order 1..=N (appended to --group).
    #[arg(long)]
    all_groups_up_to: Option<usize>,
    /// Single subset size: an integer, `half` or `half+1`.
    #[arg(long, conflicts_with_all = ["h_min", "h_max"])]
    h: Option<HSpec>,
    #[arg(long)]
    h_min: Option<HSpec>,
    #[arg(long)]
    h_max: Option<HSpec>,
    #[arg(long, value_enum, default_value_t = Method::Dp)]
    method: Method,
    /// Output format (default: csv, or text for export-code).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; defaults to $SUBSET_SUMS_OUT_DIR/<name> or standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = subset_sums::code::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    enum_limit: u64,
    #[arg(long, default_value_t = DEFAULT_DP_LIMIT)]
    dp_limit: u128,
    #[arg(long, default_value_t = DEFAULT_EXACT_X_MAX_N)]
    exact_limit: usize,
    /// Permit h outside the range the bound statements cover.
    #[arg(long)]
    allow_out_of_range: bool,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e| format!("{e}"))
}

impl Common {
    fn into_config(self, default_format: Format) -> JobConfig {
        let mut groups = self.groups;
        if let Some(max) = self.all_groups_up_to {
            groups.extend((1..=max).flat_map(abelian_groups_of_order));
        }
        let h = match self.h {
            Some(h) => HRange::single(h),
            None => HRange {
                min: self.h_min,
                max: self.h_max,
            },
        };
        JobConfig {
            groups,
            h,
            method: self.method,
            limits: Limits {
                enumeration: self.enum_limit,
                dp_additions: self.dp_limit,
                exact_x_max_n: self.exact_limit,
            },
            format: self.format.unwrap_or(default_format),
            out: self.out,
            seed: self.seed,
            allow_out_of_range: self.allow_out_of_range,
            a_index: 0,
        }
    }
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Count(c) => {
            let cfg = c.into_config(Format::Csv);
            let text = cmd_count(&cfg)?;
            emit(output_path(&cfg, "count").as_deref(), &text)?;
            Ok(true)
        }
        Command::Verify(c) => {
            let cfg = c.into_config(Format::Json);
            let report = cmd_verify(&cfg)?;
            emit(
                output_path(&cfg, "verify").as_deref(),
                &report.to_json_string(),
            )?;
            Ok(report.passed)
        }
        Command::Bounds(c) => {
            let cfg = c.into_config(Format::Csv);
            let (text, ok) = cmd_bounds(&cfg)?;
            emit(output_path(&cfg, "bounds").as_deref(), &text)?;
            Ok(ok)
        }
        Command::RatioTable(c) => {
            let cfg = c.into_config(Format::Csv);
            let (text, rows) = cmd_ratio_table(&cfg)?;
            emit(output_path(&cfg, "ratio-table").as_deref(), &text)?;
            Ok(rows.iter().all(|r| r.holds))
        }
        Command::ExportCode { common, a } => {
            let mut cfg = common.into_config(Format::Text);
            cfg.a_index = a;
            let text = cmd_export_code(&cfg)?;
            emit(output_path(&cfg, "export-code").as_deref(), &text)?;
            Ok(true)
        }
    }
}

/// Parses the command line; invalid values are reported together with the usage line
/// of the offending subcommand.
fn parse_cli() -> Result<Cli, ExitCode> {
    Cli::try_parse().map_err(|e| {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            e.exit();
        }
        let mut cmd = Cli::command();
        cmd.build();
        let sub = std::env::args().nth(1).unwrap_or_default();
        let usage = match cmd.find_subcommand_mut(&sub) {
            Some(s) => s.render_usage(),
            None => cmd.render_usage(),
        };
        let message = e.render().to_string();
        if message.contains("Usage:") {
            eprint!("{message}");
        } else {
            eprint!("{message}\n{usage}\n");
        }
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = match parse_cli() {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
