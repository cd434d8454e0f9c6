//! Boxed Young's lattices `L(m,n)`.
//!
//! An element of `L(m,n)` is a partition with at most `m` parts, each at
//! most `n`. Partitions are always stored with exactly `m` entries (trailing
//! zeros included), so `(3,2)` in `L(3,n)` is `[3,2,0]`.
//!
//! The derived `Ord` on [`Partition`] is the lexicographic order used
//! throughout the crate: the first differing coordinate decides.

mod gaussian;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gaussian::{gaussian_binomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("box dimensions must be positive, got {m}x{n}")]
    EmptyBox { m: usize, n: usize },
    #[error("parts {parts:?} are not weakly decreasing at position {index}")]
    NotWeaklyDecreasing { parts: Vec<i64>, index: usize },
    #[error("part {value} at position {index} lies outside 0..={n}")]
    OutOfBox { value: i64, index: usize, n: usize },
    #[error("expected {expected} parts, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("rank {rank} outside 0..={max}")]
    RankOutOfRange { rank: usize, max: usize },
}

/// The ambient `m x n` rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct BoxShape {
    m: usize,
    n: usize,
}

impl BoxShape {
    pub fn new(m: usize, n: usize) -> Result<Self, PosetError> {
        if m == 0 || n == 0 {
            return Err(PosetError::EmptyBox { m, n });
        }
        Ok(BoxShape { m, n })
    }

    /// Number of rows.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of columns, i.e. the largest admissible part.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the top element `(n,...,n)`.
    pub fn area(&self) -> usize {
        self.m * self.n
    }

    /// `floor(mn/2)`: every Sperner chain meets this level.
    pub fn middle_rank(&self) -> usize {
        self.area() / 2
    }

    /// `d_{m,n} = floor((mn+1)/2)`, the top rank of the half lattice.
    pub fn u_rank(&self) -> usize {
        self.area().div_ceil(2)
    }

    /// `|L(m,n)| = binomial(m+n, m)`.
    pub fn cardinality(&self) -> BigUint {
        binomial(self.m + self.n, self.m)
    }

    pub fn top(&self) -> Partition {
        Partition(vec![self.n as u32; self.m])
    }

    pub fn bottom(&self) -> Partition {
        Partition(vec![0; self.m])
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.m, self.n)
    }
}

impl From<BoxShape> for [usize; 2] {
    fn from(b: BoxShape) -> Self {
        [b.m, b.n]
    }
}

impl TryFrom<[usize; 2]> for BoxShape {
    type Error = PosetError;

    fn try_from([m, n]: [usize; 2]) -> Result<Self, Self::Error> {
        BoxShape::new(m, n)
    }
}

/// A weakly decreasing sequence of nonnegative parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition without reference to a box. Only the weakly
    /// decreasing condition is checked.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self, PosetError> {
        if let Some(index) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(PosetError::NotWeaklyDecreasing {
                parts: parts.iter().map(|&p| p as i64).collect(),
                index: index + 1,
            });
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part in row `row` (0-based).
    pub fn part(&self, row: usize) -> u32 {
        self.0[row]
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn fits(&self, shape: BoxShape) -> bool {
        self.0.len() == shape.m && self.0.first().is_none_or(|&p| p as usize <= shape.n)
    }

    /// Componentwise order of Young's lattice.
    pub fn is_below(&self, other: &Partition) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `(n - λ_m, ..., n - λ_1)`. The caller guarantees that `self` fits.
    pub fn complement(&self, n: usize) -> Partition {
        Partition(self.0.iter().rev().map(|&p| n as u32 - p).collect())
    }

    /// `n ⊕ λ = (n, λ_1, ..., λ_{m-1})`.
    pub fn prepend(&self, first: u32) -> Partition {
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(first);
        parts.extend_from_slice(&self.0);
        Partition(parts)
    }

    /// Adds one cell to `row`, without checking that the result is a
    /// partition.
    pub fn bumped(&self, row: usize) -> Partition {
        let mut parts = self.0.clone();
        parts[row] += 1;
        Partition(parts)
    }

    /// Whether one cell can be added to `row` inside a box of width `n`.
    pub fn can_grow(&self, row: usize, n: usize) -> bool {
        (self.0[row] as usize) < n && (row == 0 || self.0[row - 1] > self.0[row])
    }

    /// Whether one cell can be removed from `row`.
    pub fn can_shrink(&self, row: usize) -> bool {
        self.0[row] > 0 && (row + 1 == self.0.len() || self.0[row + 1] < self.0[row])
    }

    /// The unique row in which `upper` exceeds `self` by one cell, if
    /// `upper` covers `self`.
    pub fn added_row(&self, upper: &Partition) -> Option<usize> {
        if self.0.len() != upper.0.len() || upper.rank() != self.rank() + 1 {
            return None;
        }
        let mut row = None;
        for (i, (a, b)) in self.0.iter().zip(&upper.0).enumerate() {
            match b.cmp(a) {
                Ordering::Equal => {}
                Ordering::Greater if b - a == 1 && row.is_none() => row = Some(i),
                _ => return None,
            }
        }
        row
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&p| p as i64).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Validates `parts` as an element of `L(m,n)`.
pub fn make_partition(parts: &[i64], shape: BoxShape) -> Result<Partition, PosetError> {
    if parts.len() != shape.m {
        return Err(PosetError::WrongLength { expected: shape.m, found: parts.len() });
    }
    for (index, &value) in parts.iter().enumerate() {
        if value < 0 || value > shape.n as i64 {
            return Err(PosetError::OutOfBox { value, index, n: shape.n });
        }
    }
    if let Some(index) = parts.windows(2).position(|w| w[0] < w[1]) {
        return Err(PosetError::NotWeaklyDecreasing { parts: parts.to_vec(), index: index + 1 });
    }
    Ok(Partition(parts.iter().map(|&p| p as u32).collect()))
}

pub fn rank(lambda: &Partition) -> usize {
    lambda.rank()
}

fn check_fits(lambda: &Partition, shape: BoxShape) -> Result<(), PosetError> {
    if lambda.len() != shape.m {
        return Err(PosetError::WrongLength { expected: shape.m, found: lambda.len() });
    }
    if let Some(&first) = lambda.0.first() {
        if first as usize > shape.n {
            return Err(PosetError::OutOfBox { value: first as i64, index: 0, n: shape.n });
        }
    }
    Ok(())
}

/// `λ* = (n - λ_m, ..., n - λ_1)`.
pub fn dual(lambda: &Partition, shape: BoxShape) -> Result<Partition, PosetError> {
    check_fits(lambda, shape)?;
    Ok(lambda.complement(shape.n))
}

/// Elements covering `lambda`, lexicographically ascending.
pub fn covers(lambda: &Partition, shape: BoxShape) -> Vec<Partition> {
    // Growing a lower row gives a lexicographically smaller result.
    (0..lambda.len()).rev().filter(|&row| lambda.can_grow(row, shape.n)).map(|row| lambda.bumped(row)).collect()
}

/// Elements covered by `lambda`, lexicographically ascending.
pub fn cocovers(lambda: &Partition, _shape: BoxShape) -> Vec<Partition> {
    (0..lambda.len())
        .filter(|&row| lambda.can_shrink(row))
        .map(|row| {
            let mut parts = lambda.0.clone();
            parts[row] -= 1;
            Partition(parts)
        })
        .collect()
}

/// All rank-`i` partitions in the box, lexicographically ascending.
pub fn enumerate_level(shape: BoxShape, i: usize) -> Result<Vec<Partition>, PosetError> {
    if i > shape.area() {
        return Err(PosetError::RankOutOfRange { rank: i, max: shape.area() });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(shape.m);
    fill_level(&mut prefix, shape.m, shape.n, i, &mut out);
    Ok(out)
}

fn fill_level(prefix: &mut Vec<u32>, rows: usize, cap: usize, remaining: usize, out: &mut Vec<Partition>) {
    if rows == 0 {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
        }
        return;
    }
    // The current part must leave room for the rest: v * rows >= remaining.
    let lo = remaining.div_ceil(rows);
    let hi = cap.min(remaining);
    for v in lo..=hi {
        prefix.push(v as u32);
        fill_level(prefix, rows - 1, v, remaining - v, out);
        prefix.pop();
    }
}

/// Every element of `L(m,n)`, ordered by rank and then lexicographically.
pub fn enumerate_all(shape: BoxShape) -> Vec<Partition> {
    (0..=shape.area()).flat_map(|i| enumerate_level(shape, i).expect("rank within range")).collect()
}

/// Level sizes `p_0, ..., p_{mn}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    #[serde(with = "decimal_strings")]
    sizes: Vec<BigUint>,
}

impl RankProfile {
    pub fn from_sizes(sizes: Vec<BigUint>) -> Self {
        RankProfile { sizes }
    }

    pub fn sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn get(&self, rank: usize) -> Option<&BigUint> {
        self.sizes.get(rank)
    }

    /// Level size as a machine integer. Panics if it does not fit, which
    /// never happens for boxes small enough to enumerate.
    pub fn size(&self, rank: usize) -> usize {
        let v = &self.sizes[rank];
        usize::try_from(v).unwrap_or_else(|_| panic!("level size {v} exceeds usize"))
    }

    pub fn total(&self) -> BigUint {
        self.sizes.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.sizes.iter().eq(self.sizes.iter().rev())
    }

    /// Nondecreasing up to the middle rank, nonincreasing after it.
    pub fn is_unimodal(&self) -> bool {
        let mid = (self.sizes.len() - 1) / 2;
        self.sizes[..=mid].windows(2).all(|w| w[0] <= w[1]) && self.sizes[mid..].windows(2).all(|w| w[0] >= w[1])
    }

    pub fn max(&self) -> BigUint {
        self.sizes.iter().max().cloned().unwrap_or_default()
    }

    /// Ranks at which the maximum level size is attained.
    pub fn argmax(&self) -> Vec<usize> {
        let max = self.max();
        self.sizes.iter().enumerate().filter(|(_, v)| **v == max).map(|(i, _)| i).collect()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

mod decimal_strings {
    use num_bigint::BigUint;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse::<BigUint>().map_err(D::Error::custom)).collect()
    }
}

/// Level sizes by listing every partition and tallying ranks.
pub fn rank_profile_by_enumeration(shape: BoxShape) -> RankProfile {
    let mut sizes = vec![BigUint::zero(); shape.area() + 1];
    let mut prefix = Vec::with_capacity(shape.m);
    tally(&mut prefix, shape.m, shape.n, &mut sizes);
    RankProfile { sizes }
}

fn tally(prefix: &mut Vec<u32>, rows: usize, cap: usize, sizes: &mut [BigUint]) {
    if rows == 0 {
        let r: usize = prefix.iter().map(|&p| p as usize).sum();
        sizes[r] += 1u32;
        return;
    }
    for v in 0..=cap {
        prefix.push(v as u32);
        tally(prefix, rows - 1, v, sizes);
        prefix.pop();
    }
}

/// Level sizes as coefficients of the Gaussian binomial `[m+n choose m]_q`.
pub fn rank_profile_by_gaussian(shape: BoxShape) -> RankProfile {
    let poly = gaussian_binomial(shape.m + shape.n, shape.m);
    let sizes = (0..=shape.area())
        .map(|i| poly.coeff(i).to_biguint().expect("Gaussian binomial coefficients are nonnegative"))
        .collect();
    RankProfile { sizes }
}

/// Rank profile of the box, computed by enumeration and by the q-binomial
/// product and required to agree.
pub fn rank_profile(shape: BoxShape) -> RankProfile {
    let by_gaussian = rank_profile_by_gaussian(shape);
    let by_count = rank_profile_by_enumeration(shape);
    assert_eq!(by_gaussian, by_count, "q-binomial coefficients disagree with enumeration for {shape}");
    by_gaussian
}

/// Exact `binomial(a, b)`.
pub fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}
