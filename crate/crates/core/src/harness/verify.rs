//! The property suite behind `verify`.
//!
//! Each check runs per group and records its inputs, a verdict and, on failure,
//! the first counterexample. Checks whose cost grows quickly are gated on the
//! group order (see the constants below); a skipped check is not recorded.

use serde::Serialize;

use super::commands::to_pretty;
use super::{HarnessError, JobConfig};
use crate::bignat::BigNat;
use crate::bounds;
use crate::code::{
    build_all_codebooks, check_code_size_bounds, min_pairwise_hamming, Distance, SamplingConfig,
};
use crate::counting::{
    bad_set_row, count_brute_force_with_limit, count_dp_with_limit, count_via_recurrence,
    g_recurrence_holds, CountError, CountTable,
};
use crate::group::GroupSpec;

/// `g` recurrence is checked exhaustively up to this order.
pub const G_RECURRENCE_MAX_N: usize = 8;
/// `f` via the bad-set identity is checked up to this order.
pub const BAD_SET_MAX_N: usize = 16;
/// Codebook distance and weight checks run up to this order.
pub const CODEBOOK_MAX_N: usize = 14;
/// Recurrence table is rebuilt up to this order.
pub const RECURRENCE_MAX_N: usize = 40;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub group: String,
    pub inputs: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn to_json_string(&self) -> String {
        to_pretty(self)
    }
}

struct Recorder<'a> {
    group: &'a GroupSpec,
    checks: Vec<CheckRecord>,
}

impl Recorder<'_> {
    fn record(&mut self, name: &str, inputs: String, failure: Option<String>) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            group: self.group.to_string(),
            inputs,
            passed: failure.is_none(),
            detail: failure,
        });
    }
}

/// Runs the full suite for every configured group. A violated property yields a
/// failed record; an infrastructure failure (limits, arithmetic) is an error.
pub fn cmd_verify(config: &JobConfig) -> Result<VerifyReport, HarnessError> {
    config.validate()?;
    let mut checks = Vec::new();
    for group in &config.groups {
        let mut rec = Recorder {
            group,
            checks: Vec::new(),
        };
        verify_group(group, config, &mut rec)?;
        checks.extend(rec.checks);
    }
    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn verify_group(
    group: &GroupSpec,
    config: &JobConfig,
    rec: &mut Recorder<'_>,
) -> Result<(), HarnessError> {
    let n = group.order();
    let dp = count_dp_with_limit(group, n, config.limits.dp_additions)?;

    // cross-method equality
    let mut brute_failure = None;
    let mut brute_rows = 0;
    for h in 0..=n {
        match count_brute_force_with_limit(group, h, config.limits.enumeration) {
            Ok(row) => {
                brute_rows += 1;
                if let Some(a) = (0..n).find(|&a| row[a] != dp.rows()[h][a]) {
                    brute_failure.get_or_insert(format!("h={h} a_index={a}"));
                }
            }
            Err(CountError::EnumerationLimit { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    rec.record(
        "brute_force_equals_dp",
        format!("rows={brute_rows}"),
        brute_failure,
    );
    if n <= RECURRENCE_MAX_N {
        let rt = count_via_recurrence(group, n)?;
        rec.record(
            "recurrence_equals_dp",
            format!("hmax={n}"),
            rt.first_difference(&dp)
                .map(|(h, a)| format!("h={h} a_index={a}")),
        );
    }

    rec.record(
        "sum_identity",
        format!("h=0..={n}"),
        sum_identity_failure(&dp),
    );
    rec.record(
        "duality",
        format!("h=0..={n}"),
        duality_failure(group, &dp)?,
    );
    rec.record(
        "translation",
        format!("h=0..={n}"),
        translation_failure(group, &dp),
    );
    rec.record(
        "terminal_g_bound",
        format!("h=1..={n}"),
        terminal_bound_failure(group),
    );

    if (3..=BAD_SET_MAX_N).contains(&n) {
        let mut failure = None;
        for h in 2..n {
            let row = bad_set_row(group, h)?;
            if let Some(a) = (0..n).find(|&a| row[a] != dp.rows()[h][a]) {
                failure.get_or_insert(format!("h={h} a_index={a}"));
            }
        }
        rec.record(
            "bad_set_identity_equals_dp",
            format!("h=2..={}", n - 1),
            failure,
        );
    }

    if n <= G_RECURRENCE_MAX_N {
        let mut failure = None;
        let mut count = 0u64;
        'outer: for h in 3..=n {
            for i in 1..=h - 2 {
                for a in group.elements() {
                    for x in group.elements() {
                        count += 1;
                        if !g_recurrence_holds(group, h, i, &a, &x, &dp)? {
                            failure = Some(format!(
                                "h={h} i={i} a={:?} x={:?}",
                                a.residues(),
                                x.residues()
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        rec.record("g_recurrence", format!("cases={count}"), failure);
    }

    if n >= 4 {
        let top = n / 2 + 1;
        let mut failure = None;
        for h in 2..=top {
            let r = bounds::check_deviation_bound(&dp, h)?;
            if !r.holds() {
                failure.get_or_insert(format!("h={h} deviation={}", r.deviation));
            }
        }
        rec.record("deviation_bound", format!("h=2..={top}"), failure);

        let (b2, b3) = bounds::base_case_bounds(&dp)?;
        rec.record(
            "base_case_bounds",
            "h=2,3".into(),
            (!(b2 && b3)).then(|| format!("2*D2<=n: {b2}, 3*D3<=n: {b3}")),
        );

        if n <= config.limits.exact_x_max_n {
            let mut failure = None;
            for h in 4..=top {
                let r = bounds::ratio_bound_check(&dp, h, config.limits.exact_x_max_n)?;
                if !(r.holds && r.holds_with_x) {
                    failure.get_or_insert(format!("h={h} ratio={}", r.ratio));
                }
            }
            rec.record("ratio_bound", format!("h=4..={top}"), failure);
        }
    }

    if n >= 2 {
        let r = check_code_size_bounds(&dp)?;
        rec.record(
            "code_size_bounds",
            format!("h*={}", r.h_star),
            (!r.holds()).then(|| format!("max={} upper={}", r.max_family, r.upper_bound)),
        );
    }

    if (4..=CODEBOOK_MAX_N).contains(&n) {
        let sampling = SamplingConfig {
            seed: config.seed,
            ..SamplingConfig::default()
        };
        let mut failure = None;
        for h in 2..=n - 2 {
            for book in build_all_codebooks(group, h, config.limits.enumeration)? {
                let a = book.a_index();
                if book.words().iter().any(|w| w.weight() != h) {
                    failure.get_or_insert(format!("weight h={h} a_index={a}"));
                }
                if BigNat::from(book.len() as u64) != dp.rows()[h][a] {
                    failure.get_or_insert(format!("cardinality h={h} a_index={a}"));
                }
                let d = min_pairwise_hamming(&book, &sampling).distance;
                if d < Distance::Finite(4) {
                    failure.get_or_insert(format!("distance {d} at h={h} a_index={a}"));
                }
            }
        }
        rec.record("codebooks", format!("h=2..={}", n - 2), failure);
    }
    Ok(())
}

fn sum_identity_failure(table: &CountTable) -> Option<String> {
    let n = table.group().order() as u64;
    (0..=table.hmax()).find_map(|h| {
        let sum = table.row_sum(h).expect("row exists");
        (sum != BigNat::binomial(n, h as u64)).then(|| format!("h={h} sum={sum}"))
    })
}

fn duality_failure(group: &GroupSpec, table: &CountTable) -> Result<Option<String>, HarnessError> {
    let n = group.order();
    let s = group.element_to_index(&group.total_sum())?;
    for h in 0..=n {
        for a in 0..n {
            if table.get(h, a) != table.get(n - h, group.sub_index(s, a)) {
                return Ok(Some(format!("h={h} a_index={a}")));
            }
        }
    }
    Ok(None)
}

fn translation_failure(group: &GroupSpec, table: &CountTable) -> Option<String> {
    let n = group.order();
    for h in 0..=table.hmax() {
        for t in 0..n {
            let shift = group.scalar_mul_index(h as i64, t);
            for a in 0..n {
                if table.get(h, a) != table.get(h, group.add_index(a, shift)) {
                    return Some(format!("h={h} t={t} a_index={a}"));
                }
            }
        }
    }
    None
}

fn terminal_bound_failure(group: &GroupSpec) -> Option<String> {
    let n = group.order();
    for h in 1..=n {
        let mut hits = vec![0usize; n];
        for x in 0..n {
            hits[group.scalar_mul_index(h as i64, x)] += 1;
        }
        if let Some(a) = (0..n).find(|&a| hits[a] > n) {
            return Some(format!("h={h} a_index={a}"));
        }
        if hits.iter().sum::<usize>() != n {
            return Some(format!("h={h} total"));
        }
    }
    None
}
