use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Chain, ChainDecomposition, ChainError, DecompositionKind};
use crate::phi::{boundary_sets, in_start_set, phi_trace};
use crate::poset::{BoxShape, Partition};

/// One chain per element of `S_{3,n}`, obtained by iterating `φ`.
pub fn chains_from_phi(n: usize) -> Result<ChainDecomposition, ChainError> {
    let shape = BoxShape::new(3, n)?;
    let chains = boundary_sets(n)
        .starts
        .iter()
        .map(|s| phi_trace(s, n).map(Chain::from_elements_unchecked))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChainDecomposition::new(shape, DecompositionKind::Sperner, chains))
}

/// The chain from `μ ∈ S_{3,n}` built from its row-increment pattern,
/// without consulting `φ`.
pub fn closed_form_chain_l3(mu: &Partition, n: usize) -> Result<Chain, ChainError> {
    if !in_start_set(mu, n) {
        return Err(ChainError::NotAStart(mu.clone(), n));
    }
    let k = mu.part(1) as usize / 2;
    let ell = mu.part(0) as usize - 4 * k;
    let mut rows = Vec::new();
    if ell == 0 {
        for _ in 0..n - 4 * k {
            rows.extend([0, 1, 2]);
        }
    } else {
        for _ in 0..ell - 2 {
            rows.extend([1, 2]);
        }
        rows.extend([1, 1]);
        for _ in 0..n - 4 * k - ell {
            rows.extend([0, 1]);
        }
    }
    let mut elements = vec![mu.clone()];
    for row in rows {
        let next = elements.last().unwrap().bumped(row);
        elements.push(next);
    }
    Chain::new(elements)
}

/// Pairs chain starts so that paired chains have mirrored rank ranges:
/// `(4k,2k,0)` is fixed and `(4k+ℓ,2k,0)` goes to `(n-ℓ+2,2k,0)`.
pub fn psi(mu: &Partition, n: usize) -> Result<Partition, ChainError> {
    if !in_start_set(mu, n) {
        return Err(ChainError::NotAStart(mu.clone(), n));
    }
    let second = mu.part(1);
    let ell = mu.part(0) as usize - 2 * second as usize;
    if ell == 0 {
        return Ok(mu.clone());
    }
    Ok(Partition::from_parts(vec![(n - ell + 2) as u32, second, 0])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum L3Type {
    A1,
    A2,
    A3,
    B2,
    B3,
    C1,
    C2,
}

impl fmt::Display for L3Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl L3Type {
    pub fn family(self) -> char {
        match self {
            L3Type::A1 | L3Type::A2 | L3Type::A3 => 'A',
            L3Type::B2 | L3Type::B3 => 'B',
            L3Type::C1 | L3Type::C2 => 'C',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationL3 {
    #[serde(rename = "type")]
    pub tag: L3Type,
    pub k: u32,
    pub c: u32,
    pub ell: Option<u32>,
    pub alpha: i64,
    pub beta: i64,
}

impl ClassificationL3 {
    pub fn reconstruct(&self) -> Partition {
        let (k, c, l) = (self.k, self.c, self.ell.unwrap_or(0));
        let parts = match self.tag {
            L3Type::A1 => [4 * k + c, 2 * k + c, c],
            L3Type::A2 => [4 * k + c + 1, 2 * k + c, c],
            L3Type::A3 => [4 * k + c + 1, 2 * k + c + 1, c],
            L3Type::B2 => [4 * k + l, 2 * k + c, c],
            L3Type::B3 => [4 * k + l, 2 * k + c + 1, c],
            L3Type::C1 => [4 * k + l + c, 2 * k + l + c, l - 2],
            L3Type::C2 => [4 * k + l + c + 1, 2 * k + l + c, l - 2],
        };
        Partition::from_parts(parts.to_vec()).expect("type forms are partitions")
    }
}

/// Resolves the type of a 3-row partition from `α = λ1-λ2`, `β = λ2-λ3`.
pub fn classify_l3(lambda: &Partition) -> Result<ClassificationL3, ChainError> {
    if lambda.len() != 3 {
        return Err(ChainError::WrongRows { expected: 3, found: lambda.clone() });
    }
    let p = lambda.as_i64();
    let (a, b) = (p[0] - p[1], p[1] - p[2]);
    let d = a - b;
    let even = |x: i64| x % 2 == 0;
    let x3 = p[2];
    // (type, k, c, ℓ)
    let (tag, k, c, ell) = match () {
        _ if d == 0 && even(a) && even(b) => (L3Type::A1, a / 2, x3, None),
        _ if d == 1 && !even(a) && even(b) => (L3Type::A2, b / 2, x3, None),
        _ if d == -1 && even(a) && !even(b) => (L3Type::A3, a / 2, x3, None),
        _ if d >= 2 && even(b) => (L3Type::B2, b / 2, x3, Some(d + x3)),
        _ if d >= 0 && !even(b) => (L3Type::B3, (b - 1) / 2, x3, Some(d + x3 + 2)),
        _ if d <= -2 && even(a) => (L3Type::C1, a / 2, -d - 2, Some(x3 + 2)),
        _ if d <= -1 && !even(a) => (L3Type::C2, (a - 1) / 2, -d - 1, Some(x3 + 2)),
        _ => return Err(ChainError::ClassificationFailure(lambda.clone())),
    };
    let class = ClassificationL3 { tag, k: k as u32, c: c as u32, ell: ell.map(|l| l as u32), alpha: a, beta: b };
    if class.reconstruct() != *lambda {
        return Err(ChainError::ClassificationFailure(lambda.clone()));
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn phi_chains_examples() {
        let d8 = chains_from_phi(8).unwrap();
        assert_eq!(d8.chains.len(), 13);
        assert_eq!(d8.chain_starting_at(&p(&[8, 4, 0])).unwrap().elements, vec![p(&[8, 4, 0])]);
        let zero = d8.chain_starting_at(&p(&[0, 0, 0])).unwrap();
        assert_eq!(zero.len(), 25);
        assert_eq!(zero.end(), &p(&[8, 8, 8]));

        let d2 = chains_from_phi(2).unwrap();
        assert_eq!(d2.chains.len(), 2);
        assert_eq!(d2.chains[0].len(), 7);
        assert_eq!(d2.chains[1].elements, vec![p(&[2, 0, 0]), p(&[2, 1, 0]), p(&[2, 2, 0])]);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_chain_l3(&p(&[2, 0, 0]), 2).unwrap().elements,
            vec![p(&[2, 0, 0]), p(&[2, 1, 0]), p(&[2, 2, 0])]
        );
        assert_eq!(closed_form_chain_l3(&p(&[8, 4, 0]), 8).unwrap().elements, vec![p(&[8, 4, 0])]);
        assert!(matches!(closed_form_chain_l3(&p(&[1, 0, 0]), 8), Err(ChainError::NotAStart(..))));
    }

    #[test]
    fn closed_form_equals_phi_iteration() {
        for n in 1..=12 {
            let d = chains_from_phi(n).unwrap();
            for chain in &d.chains {
                assert_eq!(&closed_form_chain_l3(chain.start(), n).unwrap(), chain, "n={n}");
            }
        }
    }

    #[test]
    fn closed_form_last_labels() {
        let n = 11;
        for s in boundary_sets(n).starts {
            let k = s.part(1) as usize / 2;
            let ell = s.part(0) as usize - 4 * k;
            let chain = closed_form_chain_l3(&s, n).unwrap();
            let expected = if ell == 0 { 3 * n - 12 * k } else { 2 * n - 8 * k - 2 };
            assert_eq!(chain.last_label(), expected, "{s}");
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_l3(&p(&[4, 2, 0])).unwrap();
        assert_eq!((c.tag, c.k, c.c, c.ell), (L3Type::A1, 1, 0, None));
        let c = classify_l3(&p(&[6, 2, 0])).unwrap();
        assert_eq!((c.tag, c.k, c.c, c.ell), (L3Type::B2, 1, 0, Some(2)));
        let c = classify_l3(&p(&[5, 5, 0])).unwrap();
        assert_eq!((c.tag, c.k, c.c, c.ell), (L3Type::C1, 0, 3, Some(2)));
        assert!(classify_l3(&p(&[1, 0])).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&p(&[4, 2, 0]), 8).unwrap(), p(&[4, 2, 0]));
        assert_eq!(psi(&p(&[2, 0, 0]), 8).unwrap(), p(&[8, 0, 0]));
        assert_eq!(psi(&p(&[8, 0, 0]), 8).unwrap(), p(&[2, 0, 0]));
        assert_eq!(psi(&p(&[5, 0, 0]), 8).unwrap(), p(&[5, 0, 0]));
    }
}
