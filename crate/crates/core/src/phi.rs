//! The explicit order matching `φ` of `L(3,n)`.
//!
//! `φ` maps `L(3,n) \ E_{3,n}` bijectively onto `L(3,n) \ S_{3,n}` and each
//! image covers its source. Starting sets are
//! `S_{3,n} = {(4k+ℓ, 2k, 0) : ℓ ≠ 1, 4k+ℓ ≤ n, 6k+ℓ ≤ 3n/2}` and the end sets
//! are their duals.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{BoxShape, Partition, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("{0} is not a 3-row partition of width at most {1}")]
    NotInLattice(Partition, usize),
    #[error("{0} lies in the end set E_3,{1}; φ is undefined there")]
    NotInDomain(Partition, usize),
    #[error("{0} lies in the start set S_3,{1}; it has no φ-preimage")]
    NotInRange(Partition, usize),
    #[error("no case of φ applies to {0}")]
    ExhaustiveCaseViolation(Partition),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Membership of an arbitrary integer triple in `E_{3,width}`.
///
/// Triples that are not partitions of first part `width` are rejected, so
/// the neighbour tests inside `φ` may pass negative or increasing triples.
pub fn in_e3(triple: [i64; 3], width: i64) -> bool {
    let [a, b, c] = triple;
    if !(a >= b && b >= c && c >= 0 && a == width) {
        return false;
    }
    let excess = 2 * b - a - c;
    (a - b) % 2 == 0 && excess >= 0 && excess != 1
}

fn triple(lambda: &Partition) -> [i64; 3] {
    let p = lambda.parts();
    [p[0] as i64, p[1] as i64, p[2] as i64]
}

fn check_l3(lambda: &Partition, n: usize) -> Result<(), PhiError> {
    if lambda.len() != 3 || lambda.part(0) as usize > n {
        return Err(PhiError::NotInLattice(lambda.clone(), n));
    }
    Ok(())
}

/// `λ ∈ E_{3, λ_1}`.
pub fn in_own_end_set(lambda: &Partition) -> bool {
    let t = triple(lambda);
    in_e3(t, t[0])
}

/// `λ ∈ E_{3,n}`.
pub fn in_end_set(lambda: &Partition, n: usize) -> bool {
    lambda.len() == 3 && in_e3(triple(lambda), n as i64)
}

/// `λ ∈ S_{3,n}`, decided from the closed form without enumerating.
pub fn in_start_set(lambda: &Partition, n: usize) -> bool {
    if lambda.len() != 3 || lambda.part(2) != 0 || lambda.part(0) as usize > n {
        return false;
    }
    let (first, second) = (lambda.part(0) as i64, lambda.part(1) as i64);
    if second % 2 != 0 {
        return false;
    }
    let k = second / 2;
    let ell = first - 4 * k;
    ell >= 0 && ell != 1 && 2 * (6 * k + ell) <= 3 * n as i64
}

/// `S_{3,n}` and `E_{3,n}`, both sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySets {
    pub n: usize,
    pub starts: Vec<Partition>,
    pub ends: Vec<Partition>,
}

pub fn boundary_sets(n: usize) -> BoundarySets {
    let mut starts = Vec::new();
    for k in 0..=n / 4 {
        for ell in (0..=n - 4 * k).filter(|&l| l != 1) {
            // 6k + ℓ ≤ 3n/2, compared without division.
            if 2 * (6 * k + ell) <= 3 * n {
                starts.push(Partition::from_parts(vec![(4 * k + ell) as u32, (2 * k) as u32, 0]).unwrap());
            }
        }
    }
    starts.sort();
    let mut ends: Vec<_> = starts.iter().map(|s| s.complement(n)).collect();
    ends.sort();
    BoundarySets { n, starts, ends }
}

/// The four classes that decide which row `φ` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FClass {
    /// `λ ∈ E_{3,λ1}`: grow row 1.
    F1,
    /// `λ2+λ3` even: grow row 2.
    F2e,
    /// `λ2+λ3` odd, neighbour in `E`: grow row 2.
    F2o,
    /// `λ2+λ3` odd, neighbour not in `E`: grow row 3.
    F3o,
}

impl FClass {
    /// 0-based row incremented by `φ`.
    pub fn row(self) -> usize {
        match self {
            FClass::F1 => 0,
            FClass::F2e | FClass::F2o => 1,
            FClass::F3o => 2,
        }
    }
}

/// Classifies a 3-row partition of any width.
pub fn f_classify(lambda: &Partition) -> Result<FClass, PhiError> {
    if lambda.len() != 3 {
        return Err(PhiError::NotInLattice(lambda.clone(), lambda.parts().first().copied().unwrap_or(0) as usize));
    }
    let [a, b, c] = triple(lambda);
    if in_e3([a, b, c], a) {
        return Ok(FClass::F1);
    }
    let even = (b + c) % 2 == 0;
    if even {
        if !in_e3([a - 1, b + 1, c], a - 1) {
            return Ok(FClass::F2e);
        }
        // The fifth combination, shown to be empty.
        return Err(PhiError::ExhaustiveCaseViolation(lambda.clone()));
    }
    if in_e3([a - 1, b, c + 1], a - 1) {
        Ok(FClass::F2o)
    } else {
        Ok(FClass::F3o)
    }
}

/// Whether `λ` falls in the combination `λ ∉ E_{3,λ1}`, `λ2+λ3` even and
/// `(λ1-1, λ2+1, λ3) ∈ E_{3,λ1-1}`, which never happens.
pub fn is_impossible_case(lambda: &Partition) -> bool {
    let [a, b, c] = triple(lambda);
    !in_e3([a, b, c], a) && (b + c) % 2 == 0 && in_e3([a - 1, b + 1, c], a - 1)
}

pub fn phi(lambda: &Partition, n: usize) -> Result<Partition, PhiError> {
    check_l3(lambda, n)?;
    if in_end_set(lambda, n) {
        return Err(PhiError::NotInDomain(lambda.clone(), n));
    }
    let class = f_classify(lambda)?;
    Ok(lambda.bumped(class.row()))
}

/// `φ⁻¹(μ) = [φ(μ*)]*`.
pub fn phi_inverse(mu: &Partition, n: usize) -> Result<Partition, PhiError> {
    check_l3(mu, n)?;
    if in_start_set(mu, n) {
        return Err(PhiError::NotInRange(mu.clone(), n));
    }
    Ok(phi(&mu.complement(n), n)?.complement(n))
}

/// `*φ(λ) = [φ(λ)]*`, an involution on `L(3,n) \ E_{3,n}`.
pub fn star_phi(lambda: &Partition, n: usize) -> Result<Partition, PhiError> {
    Ok(phi(lambda, n)?.complement(n))
}

/// Iterates `φ` from `lambda` until it reaches the end set.
pub fn phi_trace(lambda: &Partition, n: usize) -> Result<Vec<Partition>, PhiError> {
    check_l3(lambda, n)?;
    let mut trace = vec![lambda.clone()];
    loop {
        match phi(trace.last().unwrap(), n) {
            Ok(next) => trace.push(next),
            Err(PhiError::NotInDomain(..)) => return Ok(trace),
            Err(e) => return Err(e),
        }
    }
}

/// `(λ, φ(λ))` for every `λ` in the domain, sources in rank-then-lex order.
pub fn phi_table(n: usize) -> Result<Vec<(Partition, Partition)>, PhiError> {
    let shape = BoxShape::new(3, n)?;
    crate::poset::enumerate_all(shape)
        .into_iter()
        .filter(|l| !in_end_set(l, n))
        .map(|l| phi(&l, n).map(|img| (l, img)))
        .collect()
}
