//! Exact counts `f_a(h)`: the number of `h`-element subsets of `G` whose elements sum
//! to `a`.
//!
//! Three independent routes produce the same [`CountTable`]:
//!
//! * [`count_brute_force`] enumerates every `h`-subset,
//! * [`count_dp`] extracts coefficients of `prod_{x in G} (1 + t[x])` in the group
//!   semiring, one element at a time,
//! * [`count_via_recurrence`] builds rows bottom-up from the alternating-sign
//!   recurrence in `h`, using only the two base rows.
//!
//! The `g` functions (`g_terminal`, `g_value`) count subsets that contain a fixed
//! element `x` and are the bridge between the latter two.

mod dp;
mod enumerate;
mod recurrence;
mod table;

pub use dp::{count_dp, count_dp_with_limit};
pub use enumerate::{count_brute_force, count_brute_force_with_limit, for_each_subset};
pub use recurrence::{
    bad_set_row, count_via_recurrence, f_via_eq3, f_via_lemma, g_recurrence_holds, g_terminal,
    g_value,
};
pub use table::CountTable;

use thiserror::Error;

use crate::bignat::ArithError;
use crate::group::GroupError;

#[derive(Debug, Error)]
pub enum CountError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("exact arithmetic failed: {0}")]
    Arith(#[from] ArithError),
    #[error("enumerating C({n},{h}) = {subsets} subsets exceeds the limit of {limit}; use the DP method")]
    EnumerationLimit {
        n: usize,
        h: usize,
        subsets: String,
        limit: u64,
    },
    #[error("DP needs {work} additions, above the limit of {limit}")]
    DpLimit { work: u128, limit: u128 },
    #[error("subset size {h} is out of range (allowed {min}..={max})")]
    SizeOutOfRange { h: usize, min: usize, max: usize },
    #[error("index i = {i} is out of range for h = {h}")]
    IndexOutOfRange { i: usize, h: usize },
    #[error("count table is missing row h = {0}")]
    MissingRow(usize),
    #[error("malformed count table: {0}")]
    Malformed(String),
}
