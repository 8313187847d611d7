use serde::Serialize;

use super::{Format, HarnessError, JobConfig, Method};
use crate::bignat::BigNat;
use crate::bounds::{self, BoundReport};
use crate::code::{build_codebook, min_pairwise_hamming, SamplingConfig};
use crate::counting::{
    count_brute_force_with_limit, count_dp_with_limit, count_via_recurrence, CountTable,
};
use crate::group::GroupSpec;

/// Runs the configured counting method(s) and renders rows `h_min..=h_max` of each
/// group's table. With [`Method::All`] the three methods must agree on every rendered
/// row.
pub fn cmd_count(config: &JobConfig) -> Result<String, HarnessError> {
    config.validate()?;
    let mut csv_buf = Vec::new();
    let mut json_tables = Vec::new();
    for (k, group) in config.groups.iter().enumerate() {
        let n = group.order();
        let (lo, hi) = config.h.resolve(n, (0, n));
        let table = count_table(group, lo, hi, config)?;
        match config.format {
            Format::Json => json_tables.push(table.to_json_range(lo, hi)),
            _ => {
                let mut part = Vec::new();
                table.write_csv_range(&mut part, lo, hi)?;
                // keep a single header across groups
                let body = if k == 0 {
                    &part[..]
                } else {
                    let cut = part
                        .iter()
                        .position(|&b| b == b'\n')
                        .map_or(part.len(), |p| p + 1);
                    &part[cut..]
                };
                csv_buf.extend_from_slice(body);
            }
        }
    }
    Ok(match config.format {
        Format::Json => to_pretty(&json_tables),
        _ => String::from_utf8(csv_buf).expect("csv output is utf-8"),
    })
}

/// Table holding rows `0..=hi`, with rows `lo..=hi` filled by the selected method.
fn count_table(
    group: &GroupSpec,
    lo: usize,
    hi: usize,
    config: &JobConfig,
) -> Result<CountTable, HarnessError> {
    let brute = || -> Result<CountTable, HarnessError> {
        let mut rows = Vec::with_capacity(hi + 1);
        for h in 0..=hi {
            rows.push(if h < lo {
                vec![BigNat::zero(); group.order()]
            } else {
                count_brute_force_with_limit(group, h, config.limits.enumeration)?
            });
        }
        Ok(CountTable::from_rows(group.clone(), rows)?)
    };
    let dp = || count_dp_with_limit(group, hi, config.limits.dp_additions);
    match config.method {
        Method::Brute => brute(),
        Method::Dp => Ok(dp()?),
        Method::Recurrence => Ok(count_via_recurrence(group, hi)?),
        Method::All => {
            let dp = dp()?;
            let rec = count_via_recurrence(group, hi)?;
            let bf = brute()?;
            for (other, name) in [(&rec, Method::Recurrence), (&bf, Method::Brute)] {
                let diff = (lo..=hi).find_map(|h| {
                    (0..group.order())
                        .find(|&a| dp.get(h, a) != other.get(h, a))
                        .map(|a| (h, a))
                });
                if let Some((h, a)) = diff {
                    return Err(HarnessError::Disagreement {
                        group: group.to_string(),
                        left: Method::Dp,
                        right: name,
                        h,
                        a,
                    });
                }
            }
            Ok(dp)
        }
    }
}

#[derive(Serialize)]
struct BoundCsvRow<'a> {
    group: &'a str,
    n: usize,
    h: usize,
    deviation: String,
    bound_float: f64,
    holds: bool,
}

/// Deviation-bound reports over every configured group and `h`, plus whether all held.
pub fn cmd_bounds(config: &JobConfig) -> Result<(String, bool), HarnessError> {
    config.validate()?;
    let mut reports: Vec<BoundReport> = Vec::new();
    for group in &config.groups {
        let n = group.order();
        // the bound is stated for n >= 4; smaller groups get an empty default range
        let default = if n >= 4 { (2, n / 2 + 1) } else { (1, 0) };
        let (lo, hi) = config.h.resolve(n, default);
        if hi < lo {
            continue;
        }
        let table = count_dp_with_limit(group, hi, config.limits.dp_additions)?;
        for h in lo..=hi {
            let report = if config.allow_out_of_range {
                bounds::deviation_bound_report(&table, h)?
            } else {
                bounds::check_deviation_bound(&table, h)?
            };
            reports.push(report);
        }
    }
    let all_hold = reports.iter().all(BoundReport::holds);
    let text = match config.format {
        Format::Json => to_pretty(&reports),
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &reports {
                w.serialize(BoundCsvRow {
                    group: &r.group,
                    n: r.n,
                    h: r.h,
                    deviation: r.deviation.to_string(),
                    bound_float: r.bound_float,
                    holds: r.holds(),
                })?;
            }
            csv_string(w)?
        }
    };
    Ok((text, all_hold))
}

/// One row of the min/max ratio table.
#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub group: String,
    pub n: usize,
    pub h: usize,
    pub min: BigNat,
    pub max: BigNat,
    pub ratio: f64,
    pub one_minus_x: f64,
    pub holds: bool,
}

#[derive(Serialize)]
struct RatioCsvRow<'a> {
    group: &'a str,
    n: usize,
    h: usize,
    min: String,
    max: String,
    ratio: f64,
    one_minus_x: f64,
    holds: bool,
}

/// Exact min/max per `(group, h)` with `1 - X(h)`, sorted by `(n, h)`.
pub fn ratio_rows(config: &JobConfig) -> Result<Vec<RatioRow>, HarnessError> {
    config.validate()?;
    let mut rows = Vec::new();
    for group in &config.groups {
        let n = group.order();
        let (lo, hi) = config.h.resolve(n, (4, n / 2 + 1));
        if hi < lo {
            continue;
        }
        let table = count_dp_with_limit(group, hi, config.limits.dp_additions)?;
        for h in lo..=hi {
            let report = if config.allow_out_of_range {
                bounds::ratio_bound_report(&table, h, config.limits.exact_x_max_n)?
            } else {
                bounds::ratio_bound_check(&table, h, config.limits.exact_x_max_n)?
            };
            rows.push(RatioRow {
                group: report.group,
                n,
                h,
                min: report.min,
                max: report.max,
                ratio: report.ratio,
                one_minus_x: report.one_minus_x,
                holds: report.holds && report.holds_with_x,
            });
        }
    }
    rows.sort_by_key(|r| (r.n, r.h));
    Ok(rows)
}

pub fn cmd_ratio_table(config: &JobConfig) -> Result<(String, Vec<RatioRow>), HarnessError> {
    let rows = ratio_rows(config)?;
    let text = match config.format {
        Format::Json => to_pretty(&rows),
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(RatioCsvRow {
                    group: &r.group,
                    n: r.n,
                    h: r.h,
                    min: r.min.to_string(),
                    max: r.max.to_string(),
                    ratio: r.ratio,
                    one_minus_x: r.one_minus_x,
                    holds: r.holds,
                })?;
            }
            csv_string(w)?
        }
    };
    Ok((text, rows))
}

/// Codebook of `F_a(h)` for the first configured group, with its minimum distance in
/// the header.
pub fn cmd_export_code(config: &JobConfig) -> Result<String, HarnessError> {
    config.validate()?;
    let group = &config.groups[0];
    let n = group.order();
    let h = match (config.h.min, config.h.max) {
        (Some(lo), Some(hi)) if lo.resolve(n) == hi.resolve(n) => lo.resolve(n),
        (Some(h), None) | (None, Some(h)) => h.resolve(n),
        _ => {
            return Err(HarnessError::Config(
                "export-code needs a single --h".into(),
            ))
        }
    };
    let a = group.element_from_index(config.a_index)?;
    let book = build_codebook(group, h, &a, config.limits.enumeration)?;
    let sampling = SamplingConfig {
        seed: config.seed,
        ..SamplingConfig::default()
    };
    let distance = min_pairwise_hamming(&book, &sampling);
    Ok(match config.format {
        Format::Json => to_pretty(&book.to_json(Some(&distance))),
        _ => {
            let mut buf = Vec::new();
            book.write_text(&mut buf, Some(&distance))?;
            String::from_utf8(buf).expect("codewords are ascii")
        }
    })
}

pub(super) fn to_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, HarnessError> {
    let bytes = w
        .into_inner()
        .map_err(|e| HarnessError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
