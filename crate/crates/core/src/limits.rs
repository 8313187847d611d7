/// Resource caps shared by the counting, bounds and code modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of subsets a brute-force enumeration may visit.
    pub enumeration: u64,
    /// Maximum `n^2 * hmax` big-integer additions for the group-algebra DP.
    pub dp_additions: u128,
    /// Largest `n` for which `X(h)^4` is evaluated as an exact rational.
    pub exact_x_max_n: usize,
}

pub const DEFAULT_ENUMERATION_LIMIT: u64 = 2_000_000;
pub const DEFAULT_DP_LIMIT: u128 = 1_000_000_000;
pub const DEFAULT_EXACT_X_MAX_N: usize = 200;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_ENUMERATION_LIMIT,
            dp_additions: DEFAULT_DP_LIMIT,
            exact_x_max_n: DEFAULT_EXACT_X_MAX_N,
        }
    }
}
