use super::CountError;
use crate::bignat::BigNat;
use crate::group::GroupSpec;
use crate::limits::DEFAULT_ENUMERATION_LIMIT;

/// Visits every `h`-subset of `G` in lexicographic order of canonical indices,
/// passing the sorted member indices and the index of their sum.
///
/// Fails before visiting anything if `C(n, h)` exceeds `limit`.
pub fn for_each_subset<F>(
    group: &GroupSpec,
    h: usize,
    limit: u64,
    mut visit: F,
) -> Result<(), CountError>
where
    F: FnMut(&[usize], usize),
{
    let n = group.order();
    if h > n {
        return Err(CountError::SizeOutOfRange { h, min: 0, max: n });
    }
    let total = BigNat::binomial(n as u64, h as u64);
    if total > BigNat::from(limit) {
        return Err(CountError::EnumerationLimit {
            n,
            h,
            subsets: total.to_string(),
            limit,
        });
    }

    let mut members: Vec<usize> = (0..h).collect();
    // partial[t] = index of members[0] + ... + members[t-1]
    let mut partial = vec![0usize; h + 1];
    let refresh = |members: &[usize], partial: &mut [usize], from: usize| {
        for t in from..members.len() {
            partial[t + 1] = group.add_index(partial[t], members[t]);
        }
    };
    refresh(&members, &mut partial, 0);

    loop {
        visit(&members, partial[h]);
        let Some(i) = (0..h).rev().find(|&i| members[i] < n - h + i) else {
            return Ok(());
        };
        members[i] += 1;
        for j in i + 1..h {
            members[j] = members[j - 1] + 1;
        }
        refresh(&members, &mut partial, i);
    }
}

/// Row `h` of the count table by direct enumeration, with the default limit.
pub fn count_brute_force(group: &GroupSpec, h: usize) -> Result<Vec<BigNat>, CountError> {
    count_brute_force_with_limit(group, h, DEFAULT_ENUMERATION_LIMIT)
}

pub fn count_brute_force_with_limit(
    group: &GroupSpec,
    h: usize,
    limit: u64,
) -> Result<Vec<BigNat>, CountError> {
    let n = group.order();
    if h > n {
        return Err(CountError::SizeOutOfRange { h, min: 0, max: n });
    }
    if h == 0 || h == n {
        let target = if h == 0 {
            0
        } else {
            group.element_to_index(&group.total_sum())?
        };
        return Ok((0..n).map(|a| BigNat::from((a == target) as u64)).collect());
    }
    let mut buckets = vec![0u64; n];
    for_each_subset(group, h, limit, |_, sum| buckets[sum] += 1)?;
    Ok(buckets.into_iter().map(BigNat::from).collect())
}
