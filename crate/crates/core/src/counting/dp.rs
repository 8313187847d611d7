use super::{CountError, CountTable};
use crate::bignat::BigNat;
use crate::group::GroupSpec;
use crate::limits::DEFAULT_DP_LIMIT;

/// All rows `0..=hmax` by coefficient extraction from `prod_x (1 + t[x])`.
pub fn count_dp(group: &GroupSpec, hmax: usize) -> Result<CountTable, CountError> {
    count_dp_with_limit(group, hmax, DEFAULT_DP_LIMIT)
}

pub fn count_dp_with_limit(
    group: &GroupSpec,
    hmax: usize,
    limit: u128,
) -> Result<CountTable, CountError> {
    let n = group.order();
    if hmax > n {
        return Err(CountError::SizeOutOfRange {
            h: hmax,
            min: 0,
            max: n,
        });
    }
    let work = (n as u128) * (n as u128) * (hmax as u128);
    if work > limit {
        return Err(CountError::DpLimit { work, limit });
    }
    let rows = layered_counts(group, None, hmax);
    Ok(CountTable::from_rows_unchecked(group.clone(), rows))
}

/// Subset counts over `G` (or `G \ {excluded}`) for sizes `0..=hmax`.
///
/// Elements are folded in one at a time. For each element `x` the layers are
/// updated from `hmax` down to 1 with `rows[h][a] += rows[h-1][a - x]`, so layer
/// `h - 1` is still the pre-`x` state when layer `h` reads it.
pub(crate) fn layered_counts(
    group: &GroupSpec,
    excluded: Option<usize>,
    hmax: usize,
) -> Vec<Vec<BigNat>> {
    let n = group.order();
    let mut rows = vec![vec![BigNat::zero(); n]; hmax + 1];
    rows[0][0] = BigNat::one();
    let mut folded = 0usize;
    for x in (0..n).filter(|&x| Some(x) != excluded) {
        let shift = group.translation_by_neg(x);
        folded += 1;
        for h in (1..=hmax.min(folded)).rev() {
            let (lower, upper) = rows.split_at_mut(h);
            let src = &lower[h - 1];
            for (a, dst) in upper[0].iter_mut().enumerate() {
                let v = &src[shift[a]];
                if !v.is_zero() {
                    *dst += v;
                }
            }
        }
    }
    rows
}
