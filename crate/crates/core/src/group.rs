//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! A group is given by its list of cyclic orders `[d_1, ..., d_k]`. Elements are
//! residue vectors, and every element has a canonical index in `[0, n)` obtained by
//! reading the residues as a mixed-radix number with the last factor varying
//! fastest. All tables, codewords and serialized outputs use that index order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest group order accepted by [`GroupSpec::new`].
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic order {0} is invalid, every factor must be at least 2")]
    InvalidOrder(usize),
    #[error("group order exceeds the configured maximum of {max}")]
    TooLarge { max: usize },
    #[error("element index {index} is out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element {residues:?} does not belong to group {group}")]
    Mismatch { residues: Vec<usize>, group: String },
    #[error("cannot parse group spec {0:?}")]
    Parse(String),
}

/// A finite abelian group `Z_{d_1} x ... x Z_{d_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<usize>,
    strides: Vec<usize>,
    n: usize,
}

/// One group element as a residue vector, `residues[i] < d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    residues: Vec<usize>,
}

impl Element {
    pub fn residues(&self) -> &[usize] {
        &self.residues
    }
}

impl GroupSpec {
    pub fn new(orders: &[usize]) -> Result<Self, GroupError> {
        Self::with_max_order(orders, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(orders: &[usize], max: usize) -> Result<Self, GroupError> {
        let mut n: usize = 1;
        for &d in orders {
            if d < 2 {
                return Err(GroupError::InvalidOrder(d));
            }
            n = n
                .checked_mul(d)
                .filter(|&n| n <= max)
                .ok_or(GroupError::TooLarge { max })?;
        }
        if n > max {
            return Err(GroupError::TooLarge { max });
        }
        let mut strides = vec![1; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Ok(GroupSpec {
            orders: orders.to_vec(),
            strides,
            n,
        })
    }

    pub fn trivial() -> Self {
        GroupSpec {
            orders: Vec::new(),
            strides: Vec::new(),
            n: 1,
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(&[n])
        }
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Group order `n`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn identity(&self) -> Element {
        Element {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn reduce(&self, values: &[i64]) -> Result<Element, GroupError> {
        if values.len() != self.rank() {
            return Err(self.mismatch(values.iter().map(|&v| v.unsigned_abs() as usize)));
        }
        let residues = values
            .iter()
            .zip(&self.orders)
            .map(|(&v, &d)| v.rem_euclid(d as i64) as usize)
            .collect();
        Ok(Element { residues })
    }

    pub fn element(&self, residues: Vec<usize>) -> Result<Element, GroupError> {
        let e = Element { residues };
        self.check(&e)?;
        Ok(e)
    }

    pub fn element_from_index(&self, index: usize) -> Result<Element, GroupError> {
        if index >= self.n {
            return Err(GroupError::IndexOutOfRange {
                index,
                order: self.n,
            });
        }
        Ok(self.decode(index))
    }

    pub fn element_to_index(&self, e: &Element) -> Result<usize, GroupError> {
        self.check(e)?;
        Ok(self.encode(e))
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n).map(move |i| self.decode(i))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.orders)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        Ok(Element { residues })
    }

    pub fn neg(&self, a: &Element) -> Result<Element, GroupError> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        Ok(Element { residues })
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        self.add(a, &self.neg(b)?)
    }

    /// `k * a`; negative `k` multiplies the inverse.
    pub fn scalar_mul(&self, k: i64, a: &Element) -> Result<Element, GroupError> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| {
                let d = d as i128;
                ((k as i128).rem_euclid(d) * x as i128 % d) as usize
            })
            .collect();
        Ok(Element { residues })
    }

    /// The sum of every element of the group.
    ///
    /// Coordinate `i` runs through each residue `n / d_i` times, so it contributes
    /// `(n / d_i) * d_i (d_i - 1) / 2 mod d_i`.
    pub fn total_sum(&self) -> Element {
        let residues = self
            .orders
            .iter()
            .map(|&d| {
                let reps = (self.n / d) as u128;
                let tri = (d as u128) * (d as u128 - 1) / 2;
                (reps % d as u128 * (tri % d as u128) % d as u128) as usize
            })
            .collect();
        Element { residues }
    }

    // Index-level arithmetic used by the hot loops.

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let x = a / s % d;
            let y = b / s % d;
            out += (x + y) % d * s;
        }
        out
    }

    pub fn neg_index(&self, a: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            out += (d - a / s % d) % d * s;
        }
        out
    }

    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.add_index(a, self.neg_index(b))
    }

    pub fn scalar_mul_index(&self, k: i64, a: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let x = (a / s % d) as i128;
            let d128 = d as i128;
            out += ((k as i128).rem_euclid(d128) * x % d128) as usize * s;
        }
        out
    }

    /// Permutation table `a -> a - x` over canonical indices.
    pub fn translation_by_neg(&self, x: usize) -> Vec<usize> {
        let nx = self.neg_index(x);
        (0..self.n).map(|a| self.add_index(a, nx)).collect()
    }

    fn decode(&self, index: usize) -> Element {
        let residues = self
            .orders
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| index / s % d)
            .collect();
        Element { residues }
    }

    fn encode(&self, e: &Element) -> usize {
        e.residues
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| r * s)
            .sum()
    }

    fn check(&self, e: &Element) -> Result<(), GroupError> {
        let ok = e.residues.len() == self.rank()
            && e.residues.iter().zip(&self.orders).all(|(&r, &d)| r < d);
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(e.residues.iter().copied()))
        }
    }

    fn mismatch(&self, residues: impl Iterator<Item = usize>) -> GroupError {
        GroupError::Mismatch {
            residues: residues.collect(),
            group: self.to_string(),
        }
    }
}

/// Comma-separated orders, or `trivial` for the one-element group.
impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("trivial") {
            return Ok(GroupSpec::trivial());
        }
        let orders = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::Parse(s.to_string()))?;
        GroupSpec::new(&orders)
    }
}

/// Every abelian group of order `n` up to isomorphism, in invariant-factor form
/// (`d_1 >= d_2 >= ...`, each dividing the previous).
///
/// Each prime power `p^e` of `n` contributes a partition of `e`; partitions are listed
/// with the largest first part first (`[e]`, `[e-1, 1]`, ...), and the combination
/// over primes varies the largest prime fastest. Order 8 yields `8`, `4,2`, `2,2,2`.
pub fn abelian_groups_of_order(n: usize) -> Vec<GroupSpec> {
    assert!(n >= 1, "group order must be positive");
    let factors = factorize(n);
    let per_prime: Vec<Vec<Vec<u32>>> = factors.iter().map(|&(_, e)| partitions(e)).collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let width = choice
            .iter()
            .zip(&per_prime)
            .map(|(&c, parts)| parts[c].len())
            .max()
            .unwrap_or(0);
        let mut orders = vec![1usize; width];
        for ((&(p, _), &c), parts) in factors.iter().zip(&choice).zip(&per_prime) {
            for (slot, &k) in orders.iter_mut().zip(&parts[c]) {
                *slot *= p.pow(k);
            }
        }
        out.push(GroupSpec::new(&orders).expect("factors of n are at least 2"));

        // odometer step, last prime fastest
        let mut i = factors.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < per_prime[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Every abelian group of order `1..=max_order`, ordered by `n` then as in
/// [`abelian_groups_of_order`].
pub fn abelian_groups_up_to(max_order: usize) -> Vec<GroupSpec> {
    (1..=max_order).flat_map(abelian_groups_of_order).collect()
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `e` into non-increasing parts, reverse lexicographic.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[usize]) -> GroupSpec {
        GroupSpec::new(orders).unwrap()
    }

    #[test]
    fn make_group_orders() {
        assert_eq!(g(&[]).order(), 1);
        assert_eq!(g(&[4]).order(), 4);
        assert_eq!(g(&[2, 2, 2]).order(), 8);
    }

    #[test]
    fn make_group_rejects_bad_orders() {
        assert_eq!(GroupSpec::new(&[1, 4]), Err(GroupError::InvalidOrder(1)));
        assert_eq!(GroupSpec::new(&[0]), Err(GroupError::InvalidOrder(0)));
        assert!(matches!(
            GroupSpec::new(&[1000, 1001]),
            Err(GroupError::TooLarge { .. })
        ));
        assert!(GroupSpec::with_max_order(&[5, 5], 24).is_err());
        assert!(GroupSpec::new(&[usize::MAX, 3]).is_err());
    }

    #[test]
    fn index_order_is_last_fastest() {
        assert_eq!(g(&[4]).element_from_index(3).unwrap().residues(), &[3]);
        assert_eq!(
            g(&[2, 3]).element_from_index(5).unwrap().residues(),
            &[1, 2]
        );
        assert_eq!(
            g(&[2, 3]).element_from_index(1).unwrap().residues(),
            &[0, 1]
        );
        assert!(matches!(
            g(&[2, 3]).element_from_index(6),
            Err(GroupError::IndexOutOfRange { .. })
        ));
        let t = GroupSpec::trivial();
        assert_eq!(t.element_from_index(0).unwrap().residues(), &[] as &[usize]);
    }

    #[test]
    fn small_arithmetic() {
        let z4 = g(&[4]);
        let three = z4.element(vec![3]).unwrap();
        let two = z4.element(vec![2]).unwrap();
        assert_eq!(z4.add(&three, &two).unwrap().residues(), &[1]);

        let z5 = g(&[5]);
        let two = z5.element(vec![2]).unwrap();
        assert_eq!(z5.scalar_mul(3, &two).unwrap().residues(), &[1]);
        assert_eq!(z5.scalar_mul(-1, &two).unwrap().residues(), &[3]);
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let z4 = g(&[4]);
        let z2z2 = g(&[2, 2]);
        let e = z2z2.identity();
        assert!(z4.add(&e, &e).is_err());
        assert!(z4.element(vec![4]).is_err());
        assert!(z4.element_to_index(&e).is_err());
    }

    #[test]
    fn total_sum_examples() {
        assert_eq!(g(&[5]).total_sum().residues(), &[0]);
        assert_eq!(g(&[4]).total_sum().residues(), &[2]);
        assert_eq!(g(&[2, 2]).total_sum().residues(), &[0, 0]);
        assert_eq!(g(&[2]).total_sum().residues(), &[1]);
        assert_eq!(GroupSpec::trivial().total_sum().residues(), &[] as &[usize]);
    }

    #[test]
    fn parse_and_display() {
        let spec: GroupSpec = "6,10".parse().unwrap();
        assert_eq!(spec.orders(), &[6, 10]);
        assert_eq!(spec.to_string(), "6,10");
        assert_eq!(
            "trivial".parse::<GroupSpec>().unwrap(),
            GroupSpec::trivial()
        );
        assert_eq!(" 2, 2 ,2".parse::<GroupSpec>().unwrap().order(), 8);
        assert!("1,4".parse::<GroupSpec>().is_err());
        assert!("a,4".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn group_enumeration() {
        let names = |n| -> Vec<String> {
            abelian_groups_of_order(n)
                .iter()
                .map(|g| g.to_string())
                .collect()
        };
        assert_eq!(names(1), vec!["trivial"]);
        assert_eq!(names(8), vec!["8", "4,2", "2,2,2"]);
        assert_eq!(names(12), vec!["12", "6,2"]);
        assert_eq!(names(16), vec!["16", "8,2", "4,4", "4,2,2", "2,2,2,2"]);
        assert_eq!(names(36), vec!["36", "12,3", "18,2", "6,6"]);
        // number of abelian groups of order <= 16
        assert_eq!(abelian_groups_up_to(16).len(), 25);
    }
}
