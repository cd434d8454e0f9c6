//! Saturated chains, chain decompositions and their validation.

mod l3;
mod l4;
mod tableau;

use std::collections::{HashMap, HashSet};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::greedy::{Direction, OrderMatching};
use crate::phi::PhiError;
use crate::poset::{enumerate_all, BoxShape, Partition, PosetError};

pub use l3::{chains_from_phi, classify_l3, closed_form_chain_l3, psi, ClassificationL3, L3Type};
pub use l4::{
    chains_l4, classify_l4, l4_family, matching_l4_rows, s4_starting_set, type_iv_report, ClassificationL4, L4Family,
    L4Type, TypeIvObservation,
};
pub use tableau::{render, render_svg_document, tableau_of_chain, ChainTableau, RenderFormat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{0} is not in the starting set for width {1}")]
    NotAStart(Partition, usize),
    #[error("chain is not saturated between {0} and {1}")]
    NotSaturated(Partition, Partition),
    #[error("chain is empty")]
    EmptyChain,
    #[error("expected a {expected}-row partition, got {found}")]
    WrongRows { expected: usize, found: Partition },
    #[error("no classification row reconstructs {0}")]
    ClassificationFailure(Partition),
    #[error("decomposition invalid: {0}")]
    DecompositionInvalid(String),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A sequence of partitions, each covering the previous one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub struct Chain {
    pub elements: Vec<Partition>,
}

impl Chain {
    pub fn new(elements: Vec<Partition>) -> Result<Self, ChainError> {
        let chain = Chain { elements };
        chain.check_saturated()?;
        Ok(chain)
    }

    /// Builds a chain without checking saturation.
    pub fn from_elements_unchecked(elements: Vec<Partition>) -> Self {
        Chain { elements }
    }

    pub fn check_saturated(&self) -> Result<(), ChainError> {
        if self.elements.is_empty() {
            return Err(ChainError::EmptyChain);
        }
        for w in self.elements.windows(2) {
            if w[0].added_row(&w[1]).is_none() {
                return Err(ChainError::NotSaturated(w[0].clone(), w[1].clone()));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> &Partition {
        &self.elements[0]
    }

    pub fn end(&self) -> &Partition {
        self.elements.last().expect("chains are nonempty")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min_rank(&self) -> usize {
        self.start().rank()
    }

    pub fn max_rank(&self) -> usize {
        self.end().rank()
    }

    /// Index of the last step label in the chain's tableau.
    pub fn last_label(&self) -> usize {
        self.len() - 1
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Chain", 2)?;
        st.serialize_field("start", self.elements.first().unwrap_or(&Partition::from_parts(vec![]).unwrap()))?;
        st.serialize_field("elements", &self.elements)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    Sperner,
    Symmetric,
    UDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    #[serde(rename = "box")]
    pub shape: BoxShape,
    pub kind: DecompositionKind,
    pub chains: Vec<Chain>,
}

impl ChainDecomposition {
    /// Chains are kept in ascending order of their starting partitions.
    pub fn new(shape: BoxShape, kind: DecompositionKind, mut chains: Vec<Chain>) -> Self {
        chains.sort_by(|a, b| a.start().cmp(b.start()));
        ChainDecomposition { shape, kind, chains }
    }

    pub fn starts(&self) -> Vec<Partition> {
        let mut s: Vec<_> = self.chains.iter().map(|c| c.start().clone()).collect();
        s.sort();
        s
    }

    pub fn ends(&self) -> Vec<Partition> {
        let mut e: Vec<_> = self.chains.iter().map(|c| c.end().clone()).collect();
        e.sort();
        e
    }

    pub fn element_count(&self) -> usize {
        self.chains.iter().map(Chain::len).sum()
    }

    pub fn chain_starting_at(&self, start: &Partition) -> Option<&Chain> {
        self.chains.iter().find(|c| c.start() == start)
    }

    pub fn with_kind(mut self, kind: DecompositionKind) -> Self {
        self.kind = kind;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptyChain { chain: usize },
    NotSaturated { chain: usize, lower: Partition, upper: Partition },
    OutsideGround { element: Partition },
    Duplicate { element: Partition },
    Missing { element: Partition },
    NotSperner { chain: usize, start_rank: usize, end_rank: usize, middle_rank: usize },
    NotSymmetric { chain: usize, start_rank: usize, end_rank: usize, area: usize },
    TopRank { chain: usize, top_rank: usize, expected: usize },
    ChainCount { found: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub kind: DecompositionKind,
    pub chains: usize,
    pub elements: usize,
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.valid
    }
}

/// Checks that `d` partitions `ground` into saturated chains and that each
/// chain meets the rank conditions of `d.kind`. Reports the first failure.
pub fn validate_decomposition(d: &ChainDecomposition, ground: &[Partition]) -> ValidationReport {
    let violation = find_violation(d, ground);
    ValidationReport {
        kind: d.kind,
        chains: d.chains.len(),
        elements: d.element_count(),
        valid: violation.is_none(),
        violation,
    }
}

fn find_violation(d: &ChainDecomposition, ground: &[Partition]) -> Option<Violation> {
    for (idx, chain) in d.chains.iter().enumerate() {
        if chain.is_empty() {
            return Some(Violation::EmptyChain { chain: idx });
        }
        for w in chain.elements.windows(2) {
            if w[0].added_row(&w[1]).is_none() {
                return Some(Violation::NotSaturated { chain: idx, lower: w[0].clone(), upper: w[1].clone() });
            }
        }
    }
    let ground_set: HashSet<&Partition> = ground.iter().collect();
    let mut seen: HashSet<&Partition> = HashSet::with_capacity(ground.len());
    for element in d.chains.iter().flat_map(|c| &c.elements) {
        if !ground_set.contains(element) {
            return Some(Violation::OutsideGround { element: element.clone() });
        }
        if !seen.insert(element) {
            return Some(Violation::Duplicate { element: element.clone() });
        }
    }
    if let Some(missing) = ground.iter().find(|g| !seen.contains(g)) {
        return Some(Violation::Missing { element: missing.clone() });
    }

    let shape = d.shape;
    let middle = shape.middle_rank();
    let target_rank = match d.kind {
        DecompositionKind::Sperner | DecompositionKind::Symmetric => middle,
        DecompositionKind::UDecomposition => shape.u_rank(),
    };
    for (idx, chain) in d.chains.iter().enumerate() {
        let (lo, hi) = (chain.min_rank(), chain.max_rank());
        match d.kind {
            DecompositionKind::Sperner | DecompositionKind::Symmetric => {
                if lo > middle || hi < middle {
                    return Some(Violation::NotSperner {
                        chain: idx,
                        start_rank: lo,
                        end_rank: hi,
                        middle_rank: middle,
                    });
                }
                if d.kind == DecompositionKind::Symmetric && lo + hi != shape.area() {
                    return Some(Violation::NotSymmetric {
                        chain: idx,
                        start_rank: lo,
                        end_rank: hi,
                        area: shape.area(),
                    });
                }
            }
            DecompositionKind::UDecomposition => {
                if hi != target_rank {
                    return Some(Violation::TopRank { chain: idx, top_rank: hi, expected: target_rank });
                }
            }
        }
    }
    let expected = ground.iter().filter(|g| g.rank() == target_rank).count();
    if d.chains.len() != expected {
        return Some(Violation::ChainCount { found: d.chains.len(), expected });
    }
    None
}

/// Validates against the whole lattice `L(m,n)`.
pub fn validate_full(d: &ChainDecomposition) -> ValidationReport {
    validate_decomposition(d, &enumerate_all(d.shape))
}

/// Threads the pairs of an order matching into maximal chains.
///
/// Every element has at most one matched element above it and at most one
/// below, so the pairs form disjoint paths. Incomplete matchings still give
/// a disjoint cover; validation decides whether it is Sperner.
pub fn chains_from_matching(om: &OrderMatching) -> ChainDecomposition {
    let mut up: HashMap<&Partition, &Partition> = HashMap::new();
    for level in &om.levels {
        for (s, t) in &level.pairs {
            match level.direction {
                Direction::Up => up.insert(s, t),
                Direction::Down => up.insert(t, s),
            };
        }
    }
    let has_lower: HashSet<&Partition> = up.values().copied().collect();
    let mut chains = Vec::new();
    for start in enumerate_all(om.shape) {
        if has_lower.contains(&start) {
            continue;
        }
        let mut elements = vec![start];
        while let Some(&next) = up.get(elements.last().unwrap()) {
            elements.push(next.clone());
        }
        chains.push(Chain { elements });
    }
    ChainDecomposition::new(om.shape, DecompositionKind::Sperner, chains)
}
