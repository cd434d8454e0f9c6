//! Greedy per-level order matchings.
//!
//! Sources of a level are visited in ascending order; each takes the
//! smallest cover that no earlier source has claimed. Levels above the
//! middle rank are matched downward by running the upward greedy pass on
//! the dual level and complementing the pairs.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::phi::{in_end_set, phi};
use crate::poset::{covers, enumerate_level, BoxShape, Partition, PosetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// A partial injection from one level to an adjacent one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMatching {
    pub shape: BoxShape,
    pub from_rank: usize,
    pub direction: Direction,
    /// `(source, target)` in the order sources were processed.
    pub pairs: Vec<(Partition, Partition)>,
    /// Sources for which every candidate target was already taken.
    pub unmatched: Vec<Partition>,
}

impl LevelMatching {
    pub fn is_complete(&self) -> bool {
        self.unmatched.is_empty()
    }

    pub fn to_rank(&self) -> usize {
        match self.direction {
            Direction::Up => self.from_rank + 1,
            Direction::Down => self.from_rank - 1,
        }
    }

    pub fn target_of(&self, source: &Partition) -> Option<&Partition> {
        self.pairs.iter().find(|(s, _)| s == source).map(|(_, t)| t)
    }
}

impl Serialize for LevelMatching {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LevelMatching", 5)?;
        st.serialize_field("rank", &self.from_rank)?;
        st.serialize_field("direction", &self.direction)?;
        st.serialize_field("complete", &self.is_complete())?;
        st.serialize_field("pairs", &self.pairs)?;
        st.serialize_field("unmatched", &self.unmatched)?;
        st.end()
    }
}

/// Level matchings for every rank: upward below the middle rank, downward
/// from every rank above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMatching {
    pub shape: BoxShape,
    pub levels: Vec<LevelMatching>,
}

impl OrderMatching {
    pub fn is_complete(&self) -> bool {
        self.levels.iter().all(LevelMatching::is_complete)
    }

    pub fn incomplete_levels(&self) -> impl Iterator<Item = &LevelMatching> {
        self.levels.iter().filter(|l| !l.is_complete())
    }
}

impl Serialize for OrderMatching {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrderMatching", 3)?;
        st.serialize_field("box", &self.shape)?;
        st.serialize_field("complete", &self.is_complete())?;
        st.serialize_field("levels", &self.levels)?;
        st.end()
    }
}

/// Greedy matching from level `i` to level `i+1` under lexicographic order.
pub fn ga_level(shape: BoxShape, i: usize) -> Result<LevelMatching, PosetError> {
    ga_level_by(shape, i, Ord::cmp)
}

/// Greedy matching with a caller-supplied total order on each level.
pub fn ga_level_by<F>(shape: BoxShape, i: usize, order: F) -> Result<LevelMatching, PosetError>
where
    F: Fn(&Partition, &Partition) -> Ordering,
{
    if i >= shape.area() {
        return Err(PosetError::RankOutOfRange { rank: i, max: shape.area().saturating_sub(1) });
    }
    let mut sources = enumerate_level(shape, i)?;
    sources.sort_by(&order);
    let mut used: HashSet<Partition> = HashSet::new();
    let mut pairs = Vec::with_capacity(sources.len());
    let mut unmatched = Vec::new();
    for lambda in sources {
        let mut candidates = covers(&lambda, shape);
        candidates.sort_by(&order);
        match candidates.into_iter().find(|mu| !used.contains(mu)) {
            Some(mu) => {
                used.insert(mu.clone());
                pairs.push((lambda, mu));
            }
            None => unmatched.push(lambda),
        }
    }
    Ok(LevelMatching { shape, from_rank: i, direction: Direction::Up, pairs, unmatched })
}

/// Downward matching out of level `j` (`j > 0`), the complement of the
/// upward greedy matching out of level `mn - j`.
pub fn ga_level_down(shape: BoxShape, j: usize) -> Result<LevelMatching, PosetError> {
    if j == 0 || j > shape.area() {
        return Err(PosetError::RankOutOfRange { rank: j, max: shape.area() });
    }
    let n = shape.n();
    let up = ga_level(shape, shape.area() - j)?;
    let mut pairs: Vec<_> = up.pairs.iter().map(|(lo, hi)| (lo.complement(n), hi.complement(n))).collect();
    pairs.sort();
    let mut unmatched: Vec<_> = up.unmatched.iter().map(|u| u.complement(n)).collect();
    unmatched.sort();
    Ok(LevelMatching { shape, from_rank: j, direction: Direction::Down, pairs, unmatched })
}

pub fn ga_full(shape: BoxShape) -> OrderMatching {
    let mid = shape.middle_rank();
    let mut levels = Vec::with_capacity(shape.area());
    for i in 0..mid {
        levels.push(ga_level(shape, i).expect("rank below area"));
    }
    for j in mid + 1..=shape.area() {
        levels.push(ga_level_down(shape, j).expect("rank within area"));
    }
    OrderMatching { shape, levels }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub partition: Partition,
    pub greedy: Option<Partition>,
    pub phi: Option<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub n: usize,
    pub checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares the greedy matching of `L(3,n)` with `φ` on every rank below
/// `floor(3n/2)`.
pub fn compare_with_phi(n: usize) -> Result<AgreementReport, PosetError> {
    let shape = BoxShape::new(3, n)?;
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for i in 0..shape.middle_rank() {
        let level = ga_level(shape, i)?;
        for lambda in enumerate_level(shape, i)? {
            checked += 1;
            let greedy = level.target_of(&lambda).cloned();
            let expected = if in_end_set(&lambda, n) { None } else { phi(&lambda, n).ok() };
            if greedy != expected {
                disagreements.push(Disagreement { partition: lambda, greedy, phi: expected });
            }
        }
    }
    Ok(AgreementReport { n, checked, disagreements })
}
