//! The families `F_a(h)` viewed as binary constant-weight codes.
//!
//! Codeword bit `i` is the membership of the element with canonical index `i`.
//! Two distinct `h`-subsets with the same sum cannot share `h - 1` elements (the
//! remaining element would be forced), so every family is a code of minimum
//! distance at least 4.

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bignat::BigNat;
use crate::counting::{for_each_subset, CountError, CountTable};
use crate::group::{Element, GroupSpec};

/// Books with at most this many pairs are checked exhaustively.
pub const DEFAULT_EXHAUSTIVE_PAIRS: u64 = 1_000_000;
/// Pairs drawn when a book is too large for the exhaustive check.
pub const DEFAULT_SAMPLED_PAIRS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A length-`n` binary word packed most-significant-bit first, so that comparing
/// the blocks compares the `0/1` strings lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    len: usize,
    blocks: Vec<u64>,
}

impl Word {
    pub fn from_members(len: usize, members: &[usize]) -> Word {
        let mut blocks = vec![0u64; len.div_ceil(64)];
        for &i in members {
            assert!(i < len, "member {i} outside word of length {len}");
            blocks[i / 64] |= 1u64 << (63 - i % 64);
        }
        Word { len, blocks }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (63 - i % 64) & 1 == 1
    }

    pub fn hamming(&self, other: &Word) -> usize {
        assert_eq!(self.len, other.len, "words of different length");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn intersection(&self, other: &Word) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

/// All members of `F_a(h)` as sorted characteristic vectors.
#[derive(Debug, Clone)]
pub struct Codebook {
    group: GroupSpec,
    h: usize,
    a_index: usize,
    words: Vec<Word>,
}

pub fn build_codebook(
    group: &GroupSpec,
    h: usize,
    a: &Element,
    limit: u64,
) -> Result<Codebook, CountError> {
    let a_index = group.element_to_index(a)?;
    let n = group.order();
    let mut words = Vec::new();
    for_each_subset(group, h, limit, |members, sum| {
        if sum == a_index {
            words.push(Word::from_members(n, members));
        }
    })?;
    words.sort();
    Ok(Codebook {
        group: group.clone(),
        h,
        a_index,
        words,
    })
}

/// Every family `F_a(h)` for one `h` from a single enumeration, indexed by `a`.
pub fn build_all_codebooks(
    group: &GroupSpec,
    h: usize,
    limit: u64,
) -> Result<Vec<Codebook>, CountError> {
    let n = group.order();
    let mut words: Vec<Vec<Word>> = vec![Vec::new(); n];
    for_each_subset(group, h, limit, |members, sum| {
        words[sum].push(Word::from_members(n, members));
    })?;
    Ok(words
        .into_iter()
        .enumerate()
        .map(|(a_index, mut words)| {
            words.sort();
            Codebook {
                group: group.clone(),
                h,
                a_index,
                words,
            }
        })
        .collect())
}

#[derive(Serialize)]
struct CodebookJson {
    group: String,
    n: usize,
    h: usize,
    a_index: usize,
    min_distance: Option<String>,
    words: Vec<String>,
}

impl Codebook {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn a_index(&self) -> usize {
        self.a_index
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn header(&self) -> String {
        format!(
            "n={} h={} a={} group={}",
            self.group.order(),
            self.h,
            self.a_index,
            self.group
        )
    }

    /// Header line (optionally followed by ` min_distance=<d>`), then one word per line.
    pub fn write_text<W: Write>(
        &self,
        mut out: W,
        distance: Option<&HammingSummary>,
    ) -> std::io::Result<()> {
        match distance {
            Some(d) => writeln!(out, "{} min_distance={}", self.header(), d.distance)?,
            None => writeln!(out, "{}", self.header())?,
        }
        for w in &self.words {
            writeln!(out, "{w}")?;
        }
        Ok(())
    }

    pub fn to_json(&self, distance: Option<&HammingSummary>) -> serde_json::Value {
        serde_json::to_value(CodebookJson {
            group: self.group.to_string(),
            n: self.group.order(),
            h: self.h,
            a_index: self.a_index,
            min_distance: distance.map(|d| d.distance.to_string()),
            words: self.words.iter().map(Word::to_string).collect(),
        })
        .expect("codebook serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Distance {
    Finite(usize),
    /// Fewer than two words.
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingConfig {
    pub exhaustive_pairs: u64,
    pub sampled_pairs: u64,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            exhaustive_pairs: DEFAULT_EXHAUSTIVE_PAIRS,
            sampled_pairs: DEFAULT_SAMPLED_PAIRS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HammingSummary {
    pub distance: Distance,
    pub pairs_checked: u64,
    pub exhaustive: bool,
}

/// Minimum distance over all unordered pairs, or over a seeded sample of pairs
/// for books above `config.exhaustive_pairs` pairs.
pub fn min_pairwise_hamming(book: &Codebook, config: &SamplingConfig) -> HammingSummary {
    let words = book.words();
    let m = words.len() as u64;
    let pairs = m * m.saturating_sub(1) / 2;
    if m < 2 {
        return HammingSummary {
            distance: Distance::Infinite,
            pairs_checked: 0,
            exhaustive: true,
        };
    }
    if pairs <= config.exhaustive_pairs {
        let mut best = usize::MAX;
        for (i, w) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                best = best.min(w.hamming(v));
            }
        }
        return HammingSummary {
            distance: Distance::Finite(best),
            pairs_checked: pairs,
            exhaustive: true,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best = usize::MAX;
    for _ in 0..config.sampled_pairs {
        let i = rng.gen_range(0..words.len());
        let mut j = rng.gen_range(0..words.len() - 1);
        if j >= i {
            j += 1;
        }
        best = best.min(words[i].hamming(&words[j]));
    }
    HammingSummary {
        distance: Distance::Finite(best),
        pairs_checked: config.sampled_pairs,
        exhaustive: false,
    }
}

/// Size of the largest family at `h* = floor(n/2) + 1` against the classical
/// bounds `C(n, h*) / n <= max <= (2/n) C(n, floor(n/2))` for distance-4 codes.
#[derive(Debug, Clone, Serialize)]
pub struct CodeSizeReport {
    pub group: String,
    pub n: usize,
    pub h_star: usize,
    pub max_family: BigNat,
    /// `ceil(C(n, h*) / n)`.
    pub pigeonhole_floor: BigNat,
    /// `C(n, h*) / n`, the best-known lower bound for the extremal family.
    pub lower_bound: f64,
    /// `(2/n) C(n, floor(n/2))`.
    pub upper_bound: f64,
    pub pigeonhole_holds: bool,
    pub upper_holds: bool,
}

impl CodeSizeReport {
    pub fn holds(&self) -> bool {
        self.pigeonhole_holds && self.upper_holds
    }
}

pub fn check_code_size_bounds(table: &CountTable) -> Result<CodeSizeReport, CountError> {
    let n = table.group().order();
    let h_star = n / 2 + 1;
    if h_star > n {
        return Err(CountError::SizeOutOfRange {
            h: h_star,
            min: 0,
            max: n,
        });
    }
    let (_, max) = table.min_max(h_star)?;
    let nn = BigNat::from(n as u64);
    let total = BigNat::binomial(n as u64, h_star as u64);
    let middle = BigNat::binomial(n as u64, (n / 2) as u64);
    let floor = {
        let (q, r) = num_integer::Integer::div_rem(total.as_biguint(), nn.as_biguint());
        let q = BigNat::from(q);
        if num_traits::Zero::is_zero(&r) {
            q
        } else {
            &q + &BigNat::one()
        }
    };
    Ok(CodeSizeReport {
        group: table.group().to_string(),
        n,
        h_star,
        pigeonhole_holds: &max * &nn >= total,
        upper_holds: &max * &nn <= &middle * &BigNat::from(2),
        lower_bound: (total.ln() - (n as f64).ln()).exp(),
        upper_bound: 2.0 * (middle.ln() - (n as f64).ln()).exp(),
        max_family: max,
        pigeonhole_floor: floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_dp;

    fn g(orders: &[usize]) -> GroupSpec {
        GroupSpec::new(orders).unwrap()
    }

    fn strings(book: &Codebook) -> Vec<String> {
        book.words().iter().map(Word::to_string).collect()
    }

    #[test]
    fn z4_books() {
        let z4 = g(&[4]);
        let b0 = build_codebook(&z4, 2, &z4.element(vec![0]).unwrap(), 100).unwrap();
        assert_eq!(strings(&b0), vec!["0101"]);
        let b1 = build_codebook(&z4, 2, &z4.element(vec![1]).unwrap(), 100).unwrap();
        assert_eq!(strings(&b1), vec!["0011", "1100"]);
        let d = min_pairwise_hamming(&b1, &SamplingConfig::default());
        assert_eq!(d.distance, Distance::Finite(4));
        assert_eq!(
            min_pairwise_hamming(&b0, &SamplingConfig::default()).distance,
            Distance::Infinite
        );
    }

    #[test]
    fn singleton_books() {
        let grp = g(&[2, 3]);
        for a in 0..6 {
            let book = build_codebook(&grp, 1, &grp.element_from_index(a).unwrap(), 100).unwrap();
            assert_eq!(book.len(), 1);
            let w = &book.words()[0];
            assert!((0..6).all(|i| w.bit(i) == (i == a)));
        }
    }

    #[test]
    fn word_packing_orders_like_strings() {
        let a = Word::from_members(70, &[0, 65]);
        let b = Word::from_members(70, &[1, 2]);
        assert!(b < a);
        assert!(b.to_string() < a.to_string());
        assert_eq!(a.weight(), 2);
        assert_eq!(a.hamming(&b), 4);
        assert_eq!(a.to_string().len(), 70);
    }

    #[test]
    fn text_format() {
        let z4 = g(&[4]);
        let b1 = build_codebook(&z4, 2, &z4.element(vec![1]).unwrap(), 100).unwrap();
        let mut buf = Vec::new();
        b1.write_text(&mut buf, None).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n=4 h=2 a=1 group=4\n0011\n1100\n"
        );
        let d = min_pairwise_hamming(&b1, &SamplingConfig::default());
        let mut buf = Vec::new();
        b1.write_text(&mut buf, Some(&d)).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("n=4 h=2 a=1 group=4 min_distance=4\n"));
        let json = b1.to_json(Some(&d));
        assert_eq!(json["words"][1], "1100");
        assert_eq!(json["min_distance"], "4");
    }

    #[test]
    fn sampling_is_seeded() {
        let grp = g(&[16]);
        let book = build_codebook(&grp, 8, &grp.identity(), 1_000_000).unwrap();
        let cfg = SamplingConfig {
            exhaustive_pairs: 10,
            sampled_pairs: 2000,
            seed: 7,
        };
        let a = min_pairwise_hamming(&book, &cfg);
        let b = min_pairwise_hamming(&book, &cfg);
        assert_eq!(a, b);
        assert!(!a.exhaustive);
        assert!(a.distance >= Distance::Finite(4));
    }

    #[test]
    fn all_books_agree_with_single_builds() {
        let grp = g(&[2, 4]);
        let all = build_all_codebooks(&grp, 3, 1000).unwrap();
        for (a, book) in all.iter().enumerate() {
            let single =
                build_codebook(&grp, 3, &grp.element_from_index(a).unwrap(), 1000).unwrap();
            assert_eq!(book.words(), single.words());
        }
    }

    #[test]
    fn code_size_examples() {
        let r = check_code_size_bounds(&count_dp(&g(&[10]), 6).unwrap()).unwrap();
        assert_eq!(r.h_star, 6);
        assert_eq!(r.pigeonhole_floor, BigNat::from(21));
        assert!((r.upper_bound - 50.4).abs() < 1e-9);
        assert!(r.holds());
        let max = r.max_family.to_u64().unwrap();
        assert!((21..=50).contains(&max));

        let r = check_code_size_bounds(&count_dp(&g(&[2, 2, 2]), 5).unwrap()).unwrap();
        assert_eq!(r.pigeonhole_floor, BigNat::from(7));
        assert!((r.upper_bound - 17.5).abs() < 1e-9);
        assert!(r.holds());
    }
}
