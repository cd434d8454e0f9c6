//! Half-lattices, U-decompositions, kneading, and the recursions that build
//! U-decompositions and starting sets of `L(m,n)` from `L(m,n-1)` and
//! `L(m-1,n)`.

use std::collections::{BTreeSet, HashMap};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::chains::{
    chains_from_phi, validate_decomposition, Chain, ChainDecomposition, ChainError, DecompositionKind, ValidationReport,
};
use crate::poset::{enumerate_all, BoxShape, Partition, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KneadFailure {
    #[error("chain top {0} has no gluing partner among the dual chains")]
    Unmatched(Partition),
    #[error("dual chain through {0} was never glued, so its upper part is lost")]
    UnusedDual(Partition),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecUdError {
    #[error("no candidate chain starts at {alpha} + e1")]
    Failure { alpha: Partition },
    #[error("kneading the left decomposition failed: {0}")]
    Knead(#[from] KneadFailure),
    #[error("expected a U-decomposition of {expected}, got {found}")]
    ShapeMismatch { expected: BoxShape, found: BoxShape },
    #[error("U-decomposition invalid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("E' is not contained in S; missing {missing:?}")]
pub struct RecSmnFailure {
    pub missing: Vec<Partition>,
}

/// All partitions of `L(m,n)` with rank at most `d = floor((mn+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfLattice {
    pub shape: BoxShape,
    pub d: usize,
    pub elements: Vec<Partition>,
}

pub fn half_lattice(shape: BoxShape) -> HalfLattice {
    let d = shape.u_rank();
    let elements = enumerate_all(shape).into_iter().filter(|x| x.rank() <= d).collect();
    HalfLattice { shape, d, elements }
}

/// Disjoint saturated chains covering the half-lattice, each ending at
/// rank `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UDecomposition {
    pub shape: BoxShape,
    pub chains: Vec<Chain>,
}

impl UDecomposition {
    pub fn new(shape: BoxShape, mut chains: Vec<Chain>) -> Self {
        chains.sort_by(|a, b| a.start().cmp(b.start()));
        UDecomposition { shape, chains }
    }

    pub fn to_decomposition(&self) -> ChainDecomposition {
        ChainDecomposition::new(self.shape, DecompositionKind::UDecomposition, self.chains.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        validate_decomposition(&self.to_decomposition(), &half_lattice(self.shape).elements)
    }

    pub fn starts(&self) -> Vec<Partition> {
        let mut s: Vec<_> = self.chains.iter().map(|c| c.start().clone()).collect();
        s.sort();
        s
    }
}

impl Serialize for UDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_decomposition().serialize(s)
    }
}

/// Result of kneading, with the dual-chain minima dropped when `mn` is odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kneaded {
    pub decomposition: ChainDecomposition,
    pub dropped: Vec<Partition>,
}

/// Glues each U-chain to the dual of another U-chain, giving a Sperner
/// decomposition of the whole box.
pub fn knead(u: &UDecomposition) -> Result<ChainDecomposition, KneadFailure> {
    knead_detailed(u).map(|k| k.decomposition)
}

pub fn knead_detailed(u: &UDecomposition) -> Result<Kneaded, KneadFailure> {
    let shape = u.shape;
    let (n, d) = (shape.n(), shape.u_rank());
    let duals: Vec<Vec<Partition>> =
        u.chains.iter().map(|c| c.elements.iter().rev().map(|x| x.complement(n)).collect()).collect();
    // Key each dual chain by the element the U-chain top must equal.
    let mut partner: HashMap<&Partition, usize> = HashMap::new();
    for (idx, dc) in duals.iter().enumerate() {
        if let Some(x) = dc.iter().find(|x| x.rank() == d) {
            partner.insert(x, idx);
        }
    }
    let odd = shape.area() % 2 == 1;
    let mut used = vec![false; duals.len()];
    let mut chains = Vec::with_capacity(u.chains.len());
    let mut dropped = Vec::new();
    for chain in &u.chains {
        let top = chain.end();
        let &idx = partner.get(top).ok_or_else(|| KneadFailure::Unmatched(top.clone()))?;
        used[idx] = true;
        let dc = &duals[idx];
        if odd {
            dropped.extend(dc.iter().filter(|x| x.rank() < d).cloned());
        }
        let mut elements = chain.elements.clone();
        elements.extend(dc.iter().filter(|x| x.rank() > d).cloned());
        chains.push(Chain::from_elements_unchecked(elements));
    }
    for (idx, dc) in duals.iter().enumerate() {
        if !used[idx] && dc.iter().any(|x| x.rank() > d) {
            return Err(KneadFailure::UnusedDual(dc[0].clone()));
        }
    }
    Ok(Kneaded { decomposition: ChainDecomposition::new(shape, DecompositionKind::Sperner, chains), dropped })
}

/// U-decomposition for a single row or a single column: one chain.
pub fn base_udec(shape: BoxShape) -> Option<UDecomposition> {
    let (m, d) = (shape.m(), shape.u_rank());
    let elements: Vec<Partition> = if m == 1 {
        (0..=d as u32).map(|i| Partition::from_parts(vec![i]).unwrap()).collect()
    } else if shape.n() == 1 {
        (0..=d).map(|i| Partition::from_parts((0..m).map(|r| u32::from(r < i)).collect()).unwrap()).collect()
    } else {
        return None;
    };
    Some(UDecomposition::new(shape, vec![Chain::from_elements_unchecked(elements)]))
}

/// One step of the recursion: a U-decomposition of `L^U(m,n)` from ones of
/// `L^U(m,n-1)` and `L^U(m-1,n)`.
pub fn rec_ud(u_left: &UDecomposition, u_top: &UDecomposition) -> Result<UDecomposition, RecUdError> {
    let (m, n) = (u_left.shape.m(), u_left.shape.n() + 1);
    let shape = BoxShape::new(m, n)?;
    let top_shape = BoxShape::new(m - 1, n)?;
    if u_top.shape != top_shape {
        return Err(RecUdError::ShapeMismatch { expected: top_shape, found: u_top.shape });
    }
    let d = shape.u_rank();
    let full = knead(u_left)?;

    let mut good = Vec::new();
    let mut bad = Vec::new();
    for chain in full.chains {
        if chain.max_rank() < d {
            bad.push(chain);
        } else {
            let kept: Vec<_> = chain.elements.into_iter().filter(|x| x.rank() <= d).collect();
            good.push(Chain::from_elements_unchecked(kept));
        }
    }

    let mut candidates: HashMap<Partition, Vec<Partition>> = HashMap::new();
    for chain in &u_top.chains {
        let lifted: Vec<_> = chain.elements.iter().map(|x| x.prepend(n as u32)).filter(|x| x.rank() <= d).collect();
        if let Some(first) = lifted.first() {
            candidates.insert(first.clone(), lifted);
        }
    }

    let mut out = good;
    for chain in bad {
        let alpha = chain.end().clone();
        let target = alpha.bumped(0);
        let Some(tail) = candidates.remove(&target) else {
            return Err(RecUdError::Failure { alpha });
        };
        let mut elements = chain.elements;
        elements.extend(tail);
        out.push(Chain::from_elements_unchecked(elements));
    }
    out.extend(candidates.into_values().map(Chain::from_elements_unchecked));
    Ok(UDecomposition::new(shape, out))
}

/// U-decomposition of `L^U(m,n)` by running the recursion up from the
/// single-row and single-column boxes.
pub fn iterated_udec(shape: BoxShape) -> Result<UDecomposition, RecUdError> {
    let (m, n) = (shape.m(), shape.n());
    let mut table: HashMap<(usize, usize), UDecomposition> = HashMap::new();
    for mm in 1..=m {
        for nn in 1..=n {
            let here = BoxShape::new(mm, nn)?;
            let u = match base_udec(here) {
                Some(u) => u,
                None => rec_ud(&table[&(mm, nn - 1)], &table[&(mm - 1, nn)])?,
            };
            table.insert((mm, nn), u);
        }
    }
    Ok(table.remove(&(m, n)).expect("filled above"))
}

/// Cuts a Sperner decomposition down to the half-lattice. Every chain must
/// reach rank `d`.
pub fn truncate_to_udec(d: &ChainDecomposition) -> Result<UDecomposition, RecUdError> {
    let top = d.shape.u_rank();
    let mut chains = Vec::with_capacity(d.chains.len());
    for c in &d.chains {
        if c.max_rank() < top {
            return Err(RecUdError::Invalid(format!("chain from {} stops below rank {top}", c.start())));
        }
        chains.push(Chain::from_elements_unchecked(c.elements.iter().filter(|x| x.rank() <= top).cloned().collect()));
    }
    Ok(UDecomposition::new(d.shape, chains))
}

/// U-decomposition of `L^U(4,n)` where each step takes the `φ`
/// decomposition of `L(3,w)` as the upper input.
pub fn udec_l4_from_phi(n: usize) -> Result<UDecomposition, RecUdError> {
    let mut u = base_udec(BoxShape::new(4, 1)?).expect("single column");
    for w in 2..=n {
        let top = truncate_to_udec(&chains_from_phi(w)?)?;
        u = rec_ud(&u, &top)?;
    }
    Ok(u)
}

/// One step of the starting-set recursion.
pub fn rec_smn(s_left: &[Partition], s_top: &[Partition], shape: BoxShape) -> Result<Vec<Partition>, RecSmnFailure> {
    let (n, d) = (shape.n(), shape.u_rank());
    let e_prime: BTreeSet<Partition> =
        s_left.iter().map(|x| x.complement(n - 1)).filter(|x| x.rank() < d).map(|x| x.bumped(0)).collect();
    let s: BTreeSet<Partition> = s_top.iter().map(|x| x.prepend(n as u32)).filter(|x| x.rank() <= d).collect();
    let missing: Vec<_> = e_prime.difference(&s).cloned().collect();
    if !missing.is_empty() {
        return Err(RecSmnFailure { missing });
    }
    let mut out: BTreeSet<Partition> = s_left.iter().cloned().collect();
    out.extend(s.difference(&e_prime).cloned());
    Ok(out.into_iter().collect())
}

/// Starting set of `L(m,n)` from `S_{1,n} = {(0)}` and `S_{m,1} = {0^m}`.
pub fn iterated_smn(shape: BoxShape) -> Result<Vec<Partition>, RecSmnFailure> {
    let (m, n) = (shape.m(), shape.n());
    let mut table: HashMap<(usize, usize), Vec<Partition>> = HashMap::new();
    for mm in 1..=m {
        for nn in 1..=n {
            let s = if mm == 1 || nn == 1 {
                vec![Partition::from_parts(vec![0; mm]).unwrap()]
            } else {
                let here = BoxShape::new(mm, nn).expect("positive");
                rec_smn(&table[&(mm, nn - 1)], &table[&(mm - 1, nn)], here)?
            };
            table.insert((mm, nn), s);
        }
    }
    Ok(table.remove(&(m, n)).expect("filled above"))
}

/// `{(2k, 0) : 0 <= 2k <= n}`.
pub fn s2_formula(n: usize) -> Vec<Partition> {
    (0..=n / 2).map(|k| Partition::from_parts(vec![2 * k as u32, 0]).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::validate_full;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    fn b(m: usize, n: usize) -> BoxShape {
        BoxShape::new(m, n).unwrap()
    }

    fn chain(elems: &[&[u32]]) -> Chain {
        Chain::new(elems.iter().map(|e| p(e)).collect()).unwrap()
    }

    #[test]
    fn half_lattice_sizes() {
        let h = half_lattice(b(3, 3));
        assert_eq!((h.d, h.elements.len()), (5, 13));
        assert_eq!(half_lattice(b(1, 1)).elements, vec![p(&[0]), p(&[1])]);
        let h25 = half_lattice(b(2, 5));
        assert_eq!(h25.d, 5);
        assert!(h25.elements.iter().all(|x| x.rank() <= 5));
        assert_eq!(h25.elements.len(), 1 + 1 + 2 + 2 + 3 + 3);
    }

    #[test]
    fn knead_single_cell() {
        let u = UDecomposition::new(b(1, 1), vec![chain(&[&[0], &[1]])]);
        let k = knead_detailed(&u).unwrap();
        assert_eq!(k.decomposition.chains, vec![chain(&[&[0], &[1]])]);
        assert_eq!(k.dropped, vec![p(&[0])]);
    }

    #[test]
    fn knead_two_by_two() {
        let u = UDecomposition::new(b(2, 2), vec![chain(&[&[0, 0], &[1, 0], &[1, 1]]), chain(&[&[2, 0]])]);
        assert!(u.validate().is_valid());
        let d = knead(&u).unwrap();
        assert_eq!(d.chains, vec![chain(&[&[0, 0], &[1, 0], &[1, 1], &[2, 1], &[2, 2]]), chain(&[&[2, 0]])]);
        assert!(validate_full(&d).is_valid());
    }

    #[test]
    fn knead_three_by_three() {
        let u = iterated_udec(b(3, 3)).unwrap();
        assert_eq!(u.chains.len(), 3);
        let d = knead(&u).unwrap();
        assert!(validate_full(&d).is_valid());
        assert_eq!(d.chains.len(), 3);
    }

    #[test]
    fn knead_reports_missing_partner() {
        let u = UDecomposition::new(b(2, 2), vec![chain(&[&[0, 0], &[1, 0], &[2, 0]]), chain(&[&[1, 1]])]);
        // Both tops are self-dual, so gluing works; break it with a chain
        // ending below the middle.
        assert!(knead(&u).is_ok());
        let broken = UDecomposition::new(b(2, 2), vec![chain(&[&[0, 0], &[1, 0]])]);
        assert_eq!(knead(&broken), Err(KneadFailure::Unmatched(p(&[1, 0]))));
    }

    #[test]
    fn rec_ud_two_by_two() {
        let u = rec_ud(&base_udec(b(2, 1)).unwrap(), &base_udec(b(1, 2)).unwrap()).unwrap();
        assert_eq!(u.chains.len(), 2);
        assert!(u.validate().is_valid(), "{:?}", u.validate());
    }

    #[test]
    fn rec_ud_three_by_five() {
        let u = rec_ud(&iterated_udec(b(3, 4)).unwrap(), &iterated_udec(b(2, 5)).unwrap()).unwrap();
        assert!(u.validate().is_valid());
    }

    #[test]
    fn rec_ud_rejects_wrong_shapes() {
        let err = rec_ud(&base_udec(b(2, 1)).unwrap(), &base_udec(b(1, 3)).unwrap()).unwrap_err();
        assert!(matches!(err, RecUdError::ShapeMismatch { .. }));
    }

    #[test]
    fn s2_examples() {
        assert_eq!(s2_formula(4), vec![p(&[0, 0]), p(&[2, 0]), p(&[4, 0])]);
        assert_eq!(s2_formula(5), vec![p(&[0, 0]), p(&[2, 0]), p(&[4, 0])]);
        assert_eq!(s2_formula(1), vec![p(&[0, 0])]);
    }

    #[test]
    fn rec_smn_two_rows() {
        for n in 1..=12 {
            assert_eq!(iterated_smn(b(2, n)).unwrap(), s2_formula(n), "n={n}");
        }
    }

    #[test]
    fn rec_smn_single_step_from_4t() {
        // S_{3,4} to S_{3,5}: the dual of (4,2,0) is itself and E' = {(5,2,0)}.
        let s_left = iterated_smn(b(3, 4)).unwrap();
        let s_top = iterated_smn(b(2, 5)).unwrap();
        let s = rec_smn(&s_left, &s_top, b(3, 5)).unwrap();
        assert!(!s.contains(&p(&[5, 2, 0])));
        assert!(s_top.iter().any(|x| x.prepend(5) == p(&[5, 2, 0])));
    }

    #[test]
    fn rec_smn_reports_missing() {
        // (3,0) is self-dual in width 3, so E' = {(4,0)} must come from S.
        let err = rec_smn(&[p(&[3, 0])], &[], b(2, 4)).unwrap_err();
        assert_eq!(err.missing, vec![p(&[4, 0])]);
    }
}
