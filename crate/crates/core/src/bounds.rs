//! Quantitative uniformity bounds for the rows of a count table.
//!
//! Two kinds of checks live here:
//!
//! * the deviation bound `max_a f_a(h) - min_a f_a(h) <= 2^{3h/4} n^e / P(h)`, where
//!   `P(h)` is the product of every second integer below `h` (even `h`) or `h + 1`
//!   (odd `h`) and `e = ceil(h / 2)`;
//! * the certificate `X(h) = 2^{3h/4} n^{h/2+1} (n-h)! sqrt(h!) / n!`, which bounds
//!   `1 - min/max` from above.
//!
//! `2^{3h/4}` and `sqrt(h!)` are irrational in general, so every verdict is taken on
//! fourth powers in exact integer arithmetic. Floating values are reported only as
//! decimal renderings.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::bignat::{ln_biguint, BigNat};
use crate::counting::{CountError, CountTable};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("h = {h} must be {expected} for this product")]
    Parity { h: usize, expected: &'static str },
    #[error("h = {h} is outside {min}..={max} for n = {n}")]
    OutOfRange {
        n: usize,
        h: usize,
        min: usize,
        max: usize,
    },
    #[error("exact evaluation limited to n <= {limit}, got n = {n}")]
    ExactLimit { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(h: usize) -> Parity {
        if h.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Exact verdict of `lhs <= rhs` on fourth powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourthPowerComparison {
    pub lhs: BigNat,
    pub rhs: BigNat,
    pub holds: bool,
}

impl FourthPowerComparison {
    fn new(lhs: BigNat, rhs: BigNat) -> Self {
        let holds = lhs <= rhs;
        FourthPowerComparison { lhs, rhs, holds }
    }
}

/// Outcome of the deviation bound for one row.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub group: String,
    pub n: usize,
    pub h: usize,
    pub parity: Parity,
    pub deviation: BigNat,
    pub comparison: FourthPowerComparison,
    pub bound_float: f64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.comparison.holds
    }
}

/// `h (h-2) ... 2` for even `h >= 2`.
pub fn even_product(h: usize) -> Result<BigNat, BoundsError> {
    if h < 2 || !h.is_multiple_of(2) {
        return Err(BoundsError::Parity {
            h,
            expected: "even and at least 2",
        });
    }
    Ok(step_two_product(h))
}

/// `(h+1) (h-1) ... 2` for odd `h >= 3`.
pub fn odd_product(h: usize) -> Result<BigNat, BoundsError> {
    if h < 3 || h % 2 != 1 {
        return Err(BoundsError::Parity {
            h,
            expected: "odd and at least 3",
        });
    }
    Ok(step_two_product(h + 1))
}

fn step_two_product(top: usize) -> BigNat {
    let mut acc = BigUint::one();
    let mut k = top;
    while k >= 2 {
        acc *= k;
        k -= 2;
    }
    acc.into()
}

/// Denominator `P(h)` and exponent `e` of the deviation bound `2^{3h/4} n^e / P(h)`.
pub fn deviation_bound_shape(h: usize) -> Result<(BigNat, u32), BoundsError> {
    match Parity::of(h) {
        Parity::Even => Ok((even_product(h)?, (h / 2) as u32)),
        Parity::Odd => Ok((odd_product(h)?, (h.div_ceil(2)) as u32)),
    }
}

/// Deviation bound for row `h`, restricted to `n >= 4` and `2 <= h <= n/2 + 1`.
pub fn check_deviation_bound(table: &CountTable, h: usize) -> Result<BoundReport, BoundsError> {
    let n = table.group().order();
    let max = n / 2 + 1;
    if n < 4 || h < 2 || h > max {
        return Err(BoundsError::OutOfRange { n, h, min: 2, max });
    }
    deviation_bound_report(table, h)
}

/// Same comparison without the range restriction (`h >= 2` is still required).
///
/// Verifies `(D P)^4 <= 2^{3h} n^{4e}` where `D` is the row's deviation.
pub fn deviation_bound_report(table: &CountTable, h: usize) -> Result<BoundReport, BoundsError> {
    let n = table.group().order();
    let deviation = table.deviation(h)?;
    let (p, e) = deviation_bound_shape(h)?;
    let lhs = (&deviation * &p).pow(4);
    let rhs = &BigNat::from(2).pow(3 * h as u32) * &BigNat::from(n as u64).pow(4 * e);
    let bound_float =
        (0.75 * h as f64 * std::f64::consts::LN_2 + e as f64 * (n as f64).ln() - p.ln()).exp();
    Ok(BoundReport {
        group: table.group().to_string(),
        n,
        h,
        parity: Parity::of(h),
        deviation,
        comparison: FourthPowerComparison::new(lhs, rhs),
        bound_float,
    })
}

/// Exact base cases: `2 D_2 <= n` and `3 D_3 <= n`.
pub fn base_case_bounds(table: &CountTable) -> Result<(bool, bool), BoundsError> {
    let n = BigNat::from(table.group().order() as u64);
    let d2 = table.deviation(2)?;
    let d3 = table.deviation(3)?;
    Ok((&d2 * &BigNat::from(2) <= n, &d3 * &BigNat::from(3) <= n))
}

/// `ln X(h)` through log-gamma; valid for any `0 <= h <= n`.
pub fn x_of_h_log(n: usize, h: usize) -> f64 {
    assert!(h <= n, "X(h) needs h <= n");
    let (nf, hf) = (n as f64, h as f64);
    0.75 * hf * std::f64::consts::LN_2
        + (hf / 2.0 + 1.0) * nf.ln()
        + ln_gamma(nf - hf + 1.0)
        + 0.5 * ln_gamma(hf + 1.0)
        - ln_gamma(nf + 1.0)
}

/// `X(h)^4 = 2^{3h} n^{2h+4} ((n-h)!)^4 (h!)^2 / (n!)^4` as an exact rational.
pub fn x_of_h_exact4(n: usize, h: usize, max_n: usize) -> Result<BigRational, BoundsError> {
    if n > max_n {
        return Err(BoundsError::ExactLimit { n, limit: max_n });
    }
    if h > n {
        return Err(BoundsError::OutOfRange {
            n,
            h,
            min: 0,
            max: n,
        });
    }
    let num = BigNat::from(2).pow(3 * h as u32)
        * BigNat::from(n as u64).pow(2 * h as u32 + 4)
        * BigNat::factorial((n - h) as u64).pow(4)
        * BigNat::factorial(h as u64).pow(2);
    let den = BigNat::factorial(n as u64).pow(4);
    Ok(ratio(num, den))
}

/// Odd-`h` analogue built from the odd-case deviation bound:
/// `X'(h)^4 = 2^{3h} n^{2h+6} ((n-h)!)^4 ((h+1)!)^2 / ((h+1)^4 (n!)^4)`.
///
/// Dividing the odd-case bound by the pigeonhole floor `C(n,h)/n` leaves the
/// factor `h!! / (h+1)`, and `h!! <= sqrt((h+1)!)`.
pub fn x_odd_exact4(n: usize, h: usize, max_n: usize) -> Result<BigRational, BoundsError> {
    if n > max_n {
        return Err(BoundsError::ExactLimit { n, limit: max_n });
    }
    if h > n || h.is_multiple_of(2) {
        return Err(BoundsError::Parity {
            h,
            expected: "odd and at most n",
        });
    }
    let num = BigNat::from(2).pow(3 * h as u32)
        * BigNat::from(n as u64).pow(2 * h as u32 + 6)
        * BigNat::factorial((n - h) as u64).pow(4)
        * BigNat::factorial(h as u64 + 1).pow(2);
    let den = BigNat::from(h as u64 + 1).pow(4) * BigNat::factorial(n as u64).pow(4);
    Ok(ratio(num, den))
}

fn ratio(num: BigNat, den: BigNat) -> BigRational {
    BigRational::new(
        BigInt::from(num.into_biguint()),
        BigInt::from(den.into_biguint()),
    )
}

/// Natural log of a positive rational.
pub fn ln_rational(r: &BigRational) -> f64 {
    assert!(r.is_positive(), "logarithm of a nonpositive rational");
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// `X(h+1) / X(h) = 2^{3/4} sqrt(n (h+1)) / (n - h)`.
pub fn x_ratio(n: usize, h: usize) -> Result<f64, BoundsError> {
    if h >= n {
        return Err(BoundsError::OutOfRange {
            n,
            h,
            min: 0,
            max: n.saturating_sub(1),
        });
    }
    let (nf, hf) = (n as f64, h as f64);
    Ok(2f64.powf(0.75) * (nf * (hf + 1.0)).sqrt() / (nf - hf))
}

/// Growth rate of `ln X(n/2 + 1) / n`: `1/4 - (3/8) ln 2`.
pub fn asymptotic_exponent() -> f64 {
    0.25 - 0.375 * std::f64::consts::LN_2
}

/// `X(4)` in closed form, `8 sqrt(24) n^3 / (n (n-1) (n-2) (n-3))`.
pub fn x4_closed_form(n: usize) -> f64 {
    let nf = n as f64;
    8.0 * 24f64.sqrt() * nf.powi(3) / (nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateValues {
    pub n: usize,
    pub h: usize,
    pub ln_x: f64,
    pub x: f64,
    pub ratio_lower_bound: f64,
}

pub fn certificate(n: usize, h: usize) -> CertificateValues {
    let ln_x = x_of_h_log(n, h);
    let x = ln_x.exp();
    CertificateValues {
        n,
        h,
        ln_x,
        x,
        ratio_lower_bound: 1.0 - x,
    }
}

/// `min/max >= 1 - X` checked exactly for one row.
#[derive(Debug, Clone, Serialize)]
pub struct RatioBoundReport {
    pub group: String,
    pub n: usize,
    pub h: usize,
    pub min: BigNat,
    pub max: BigNat,
    pub ratio: f64,
    /// `1 - X(h)`.
    pub one_minus_x: f64,
    /// `min/max >= 1 - X(h)`, exact.
    pub holds_with_x: bool,
    /// Verdict against the certificate that matches the parity of `h` (`X(h)` for
    /// even `h`, the odd analogue otherwise), exact.
    pub holds: bool,
    pub one_minus_certificate: f64,
}

/// Ratio bound for `4 <= h <= n/2 + 1`.
pub fn ratio_bound_check(
    table: &CountTable,
    h: usize,
    exact_max_n: usize,
) -> Result<RatioBoundReport, BoundsError> {
    let n = table.group().order();
    let max = n / 2 + 1;
    if h < 4 || h > max {
        return Err(BoundsError::OutOfRange { n, h, min: 4, max });
    }
    ratio_bound_report(table, h, exact_max_n)
}

/// Ratio bound without the range restriction.
///
/// With `D = max - min`, `min/max >= 1 - X` is `D/max <= X`, decided on fourth powers
/// as `D^4 den <= num max^4` for `X^4 = num/den`.
pub fn ratio_bound_report(
    table: &CountTable,
    h: usize,
    exact_max_n: usize,
) -> Result<RatioBoundReport, BoundsError> {
    let n = table.group().order();
    let (min, max) = table.min_max(h)?;
    let deviation = max.checked_sub(&min).map_err(CountError::from)?;

    let x4 = x_of_h_exact4(n, h, exact_max_n)?;
    let holds_with_x = fourth_power_le(&deviation, &max, &x4);
    let (holds, one_minus_certificate) = match Parity::of(h) {
        Parity::Even => (holds_with_x, 1.0 - x_of_h_log(n, h).exp()),
        Parity::Odd => {
            let odd4 = x_odd_exact4(n, h, exact_max_n)?;
            (
                fourth_power_le(&deviation, &max, &odd4),
                1.0 - (ln_rational(&odd4) / 4.0).exp(),
            )
        }
    };

    let ratio = if max.is_zero() {
        1.0
    } else {
        (min.ln() - max.ln()).exp()
    };
    Ok(RatioBoundReport {
        group: table.group().to_string(),
        n,
        h,
        ratio,
        one_minus_x: 1.0 - x_of_h_log(n, h).exp(),
        min,
        max,
        holds_with_x,
        holds,
        one_minus_certificate,
    })
}

/// `(deviation / max)^4 <= x4`, exactly. A zero `max` means an empty row, which
/// trivially satisfies the bound.
fn fourth_power_le(deviation: &BigNat, max: &BigNat, x4: &BigRational) -> bool {
    if max.is_zero() {
        return true;
    }
    let lhs = BigInt::from(deviation.pow(4).into_biguint()) * x4.denom();
    let rhs = BigInt::from(max.pow(4).into_biguint()) * x4.numer();
    lhs <= rhs
}
