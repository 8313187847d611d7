//! The recurrence route to `f_a(h)` and the `g` functions it is built from.
//!
//! `g^x_a(h, i)` counts `(h - i)`-subsets of `G` that contain `x` and sum to
//! `a - i x`. Removing `x` from such a subset leaves an `(h - i - 1)`-subset of
//! `G \ {x}` summing to `a - (i + 1) x`, which gives
//!
//! ```text
//! g^x_a(h, i) = f_{a-(i+1)x}(h-i-1) - g^x_a(h, i+1),   1 <= i <= h-2
//! g^x_a(h, h-1) = [h x = a]
//! ```
//!
//! Every `(h-1)`-subset either extends to a unique member of `F_a(h)` or its missing
//! element would repeat one of its members; counting both kinds gives
//! `h f_a(h) = C(n, h-1) - sum_x g^x_a(h, 1)`. Unrolling the `g` recurrence turns that
//! into an alternating sum over lower rows of the count table.

use super::dp::layered_counts;
use super::{CountError, CountTable};
use crate::bignat::BigNat;
use crate::group::{Element, GroupSpec};

/// `g^x_a(h, h-1)`: true iff `h x = a`.
pub fn g_terminal(
    group: &GroupSpec,
    h: usize,
    a: &Element,
    x: &Element,
) -> Result<bool, CountError> {
    Ok(group.scalar_mul(h as i64, x)? == *a)
}

/// `g^x_a(h, i)` for `1 <= i <= h - 1`, counted over `G \ {x}` by the DP.
pub fn g_value(
    group: &GroupSpec,
    h: usize,
    i: usize,
    a: &Element,
    x: &Element,
) -> Result<BigNat, CountError> {
    if i == 0 || i >= h {
        return Err(CountError::IndexOutOfRange { i, h });
    }
    let a = group.element_to_index(a)?;
    let x = group.element_to_index(x)?;
    let size = h - i - 1;
    if size + 1 > group.order() {
        return Ok(BigNat::zero());
    }
    let rows = layered_counts(group, Some(x), size);
    let target = group.sub_index(a, group.scalar_mul_index((i + 1) as i64, x));
    Ok(rows[size][target].clone())
}

/// `f_a(h)` as `(C(n, h-1) - sum_x g^x_a(h, 1)) / h`.
pub fn f_via_eq3(group: &GroupSpec, h: usize, a: &Element) -> Result<BigNat, CountError> {
    check_recurrence_range(group, h)?;
    let a = group.element_to_index(a)?;
    let row = bad_set_row_impl(group, h, Some(a))?;
    Ok(row.into_iter().next().expect("one requested entry"))
}

/// The same identity evaluated for every `a` at once, reusing one DP per `x`.
pub fn bad_set_row(group: &GroupSpec, h: usize) -> Result<Vec<BigNat>, CountError> {
    check_recurrence_range(group, h)?;
    bad_set_row_impl(group, h, None)
}

fn bad_set_row_impl(
    group: &GroupSpec,
    h: usize,
    only: Option<usize>,
) -> Result<Vec<BigNat>, CountError> {
    let n = group.order();
    let targets: Vec<usize> = match only {
        Some(a) => vec![a],
        None => (0..n).collect(),
    };
    // bad[k] = sum_x g^x_{targets[k]}(h, 1)
    let mut bad = vec![BigNat::zero(); targets.len()];
    let size = h - 2;
    for x in 0..n {
        let rows = layered_counts(group, Some(x), size);
        let twice_x = group.scalar_mul_index(2, x);
        for (acc, &a) in bad.iter_mut().zip(&targets) {
            *acc += &rows[size][group.sub_index(a, twice_x)];
        }
    }
    let good_total = BigNat::binomial(n as u64, h as u64 - 1);
    let divisor = BigNat::from(h as u64);
    bad.iter()
        .map(|b| Ok(good_total.checked_sub(b)?.div_exact(&divisor)?))
        .collect()
}

/// `f_a(h)` from the alternating-sign recurrence over rows `1..=h-2` of `lower`:
///
/// ```text
/// h f_a(h) = C(n, h-1) - sum_{i=2}^{h-1} (-1)^i sum_x f_{a-ix}(h-i)
///            + (-1)^(h-1) sum_x [h x = a]
/// ```
///
/// Positive and negative contributions are accumulated separately and the
/// difference must be nonnegative and divisible by `h`.
pub fn f_via_lemma(
    group: &GroupSpec,
    h: usize,
    a: &Element,
    lower: &CountTable,
) -> Result<BigNat, CountError> {
    check_recurrence_range(group, h)?;
    let a = group.element_to_index(a)?;
    f_via_lemma_index(group, h, a, lower)
}

fn f_via_lemma_index(
    group: &GroupSpec,
    h: usize,
    a: usize,
    lower: &CountTable,
) -> Result<BigNat, CountError> {
    let n = group.order();
    let mut positive = BigNat::binomial(n as u64, h as u64 - 1);
    let mut negative = BigNat::zero();

    for i in 2..h {
        let row = lower.require_row(h - i)?;
        let mut term = BigNat::zero();
        for x in 0..n {
            term += &row[group.sub_index(a, group.scalar_mul_index(i as i64, x))];
        }
        if i % 2 == 0 {
            negative += &term;
        } else {
            positive += &term;
        }
    }

    let terminal = (0..n)
        .filter(|&x| group.scalar_mul_index(h as i64, x) == a)
        .count() as u64;
    if (h - 1).is_multiple_of(2) {
        positive += &BigNat::from(terminal);
    } else {
        negative += &BigNat::from(terminal);
    }

    Ok(positive
        .checked_sub(&negative)?
        .div_exact(&BigNat::from(h as u64))?)
}

/// Checks `g^x_a(h, i) + g^x_a(h, i+1) = f_{a-(i+1)x}(h-i-1)` exactly.
pub fn g_recurrence_holds(
    group: &GroupSpec,
    h: usize,
    i: usize,
    a: &Element,
    x: &Element,
    lower: &CountTable,
) -> Result<bool, CountError> {
    if i == 0 || i + 2 > h {
        return Err(CountError::IndexOutOfRange { i, h });
    }
    let g_i = g_value(group, h, i, a, x)?;
    let g_next = g_value(group, h, i + 1, a, x)?;
    let shifted = group.sub(a, &group.scalar_mul((i + 1) as i64, x)?)?;
    let f = lower
        .get(h - i - 1, group.element_to_index(&shifted)?)
        .ok_or(CountError::MissingRow(h - i - 1))?;
    Ok(&g_i + &g_next == *f)
}

/// Rows `0..=hmax` built only from the base rows and [`f_via_lemma`].
///
/// Row `n` (reachable only when `hmax = n`) is the closed form: the single
/// `n`-subset is `G` itself.
pub fn count_via_recurrence(group: &GroupSpec, hmax: usize) -> Result<CountTable, CountError> {
    let n = group.order();
    if hmax > n {
        return Err(CountError::SizeOutOfRange {
            h: hmax,
            min: 0,
            max: n,
        });
    }
    let indicator = |target: usize| -> Vec<BigNat> {
        (0..n).map(|a| BigNat::from((a == target) as u64)).collect()
    };
    let mut rows = vec![indicator(0)];
    if hmax >= 1 {
        rows.push(vec![BigNat::one(); n]);
    }
    let full = group.element_to_index(&group.total_sum())?;
    for h in 2..=hmax {
        let row = if h == n {
            indicator(full)
        } else {
            let lower = CountTable::from_rows_unchecked(group.clone(), rows.clone());
            (0..n)
                .map(|a| f_via_lemma_index(group, h, a, &lower))
                .collect::<Result<Vec<_>, _>>()?
        };
        rows.push(row);
    }
    Ok(CountTable::from_rows_unchecked(group.clone(), rows))
}

fn check_recurrence_range(group: &GroupSpec, h: usize) -> Result<(), CountError> {
    let n = group.order();
    if h < 2 || h + 1 > n {
        return Err(CountError::SizeOutOfRange {
            h,
            min: 2,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}
