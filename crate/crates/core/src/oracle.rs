//! Brute-force certification independent of `φ` and the greedy pass.
//!
//! Cover tests here compare parts directly instead of going through the
//! poset helpers used by the constructions.

use std::collections::HashMap;

use serde::Serialize;

use crate::chains::{chains_from_matching, chains_from_phi, chains_l4, validate_full, ChainDecomposition};
use crate::greedy::{ga_full, Direction, LevelMatching, OrderMatching};
use crate::phi::{in_end_set, in_start_set, phi, phi_inverse};
use crate::poset::{enumerate_level, rank_profile, BoxShape, Partition};
use crate::recursive::{iterated_udec, knead};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    #[serde(rename = "box")]
    pub shape: BoxShape,
    pub rank: usize,
    pub max: usize,
    pub full: bool,
}

fn is_cover(lower: &Partition, upper: &Partition) -> bool {
    let (a, b) = (lower.parts(), upper.parts());
    if a.len() != b.len() {
        return false;
    }
    let mut diff = 0u32;
    for (x, y) in a.iter().zip(b) {
        if y < x {
            return false;
        }
        diff += y - x;
    }
    diff == 1
}

/// Kuhn's augmenting-path search from `u`.
fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(w, adj, seen, match_right)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Size of a maximum matching in the cover graph between levels `i` and
/// `i+1`.
pub fn max_level_matching(shape: BoxShape, i: usize) -> MatchingCertificate {
    let lower = enumerate_level(shape, i).unwrap_or_default();
    let upper = enumerate_level(shape, i + 1).unwrap_or_default();
    let adj: Vec<Vec<usize>> =
        lower.iter().map(|x| (0..upper.len()).filter(|&j| is_cover(x, &upper[j])).collect()).collect();
    let mut match_right = vec![None; upper.len()];
    let mut max = 0;
    for u in 0..lower.len() {
        let mut seen = vec![false; upper.len()];
        if augment(u, &adj, &mut seen, &mut match_right) {
            max += 1;
        }
    }
    MatchingCertificate { shape, rank: i, max, full: max == lower.len().min(upper.len()) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "witness", rename_all = "snake_case")]
pub enum Witness {
    DuplicateTarget { target: Partition, sources: [Partition; 2] },
    NotACover { source: Partition, target: Partition },
    ShortOfMaximum { pairs: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCertification {
    pub rank: usize,
    pub direction: Direction,
    pub pairs: usize,
    pub max: usize,
    pub injective: bool,
    pub covers_ok: bool,
    pub certified: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    #[serde(rename = "box")]
    pub shape: BoxShape,
    pub certified: bool,
    pub levels: Vec<LevelCertification>,
}

fn certify_level(level: &LevelMatching) -> LevelCertification {
    let mut witness = None;
    let mut injective = true;
    let mut covers_ok = true;
    let mut by_target: HashMap<&Partition, &Partition> = HashMap::new();
    for (s, t) in &level.pairs {
        let (lo, hi) = match level.direction {
            Direction::Up => (s, t),
            Direction::Down => (t, s),
        };
        if let Some(prev) = by_target.insert(t, s) {
            if injective {
                injective = false;
                witness
                    .get_or_insert(Witness::DuplicateTarget { target: t.clone(), sources: [prev.clone(), s.clone()] });
            }
        }
        if covers_ok && !is_cover(lo, hi) {
            covers_ok = false;
            witness.get_or_insert(Witness::NotACover { source: s.clone(), target: t.clone() });
        }
    }
    let lower_rank = level.from_rank.min(level.to_rank());
    let max = max_level_matching(level.shape, lower_rank).max;
    let pairs = level.pairs.len();
    if witness.is_none() && pairs != max {
        witness = Some(Witness::ShortOfMaximum { pairs, max });
    }
    LevelCertification {
        rank: level.from_rank,
        direction: level.direction,
        pairs,
        max,
        injective,
        covers_ok,
        certified: witness.is_none(),
        witness,
    }
}

/// Checks every level for injectivity and covers, and compares its size
/// with the maximum matching between the same two levels.
pub fn certify_matching(om: &OrderMatching) -> MatchingReport {
    let levels: Vec<_> = om.levels.iter().map(certify_level).collect();
    MatchingReport { shape: om.shape, certified: levels.iter().all(|l| l.certified), levels }
}

/// `φ` below the middle rank and `φ⁻¹` above it, laid out like the greedy
/// matching.
pub fn phi_order_matching(n: usize) -> OrderMatching {
    let shape = BoxShape::new(3, n).expect("n >= 1");
    let mid = shape.middle_rank();
    let mut levels = Vec::new();
    for i in 0..mid {
        let mut pairs = Vec::new();
        let mut unmatched = Vec::new();
        for x in enumerate_level(shape, i).expect("rank in range") {
            if in_end_set(&x, n) {
                unmatched.push(x);
            } else {
                let y = phi(&x, n).expect("outside the end set");
                pairs.push((x, y));
            }
        }
        levels.push(LevelMatching { shape, from_rank: i, direction: Direction::Up, pairs, unmatched });
    }
    for j in mid + 1..=shape.area() {
        let mut pairs = Vec::new();
        let mut unmatched = Vec::new();
        for x in enumerate_level(shape, j).expect("rank in range") {
            if in_start_set(&x, n) {
                unmatched.push(x);
            } else {
                let y = phi_inverse(&x, n).expect("outside the start set");
                pairs.push((x, y));
            }
        }
        levels.push(LevelMatching { shape, from_rank: j, direction: Direction::Down, pairs, unmatched });
    }
    OrderMatching { shape, levels }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    #[serde(rename = "box")]
    pub shape: BoxShape,
    pub symmetric: bool,
    pub unimodal: bool,
    /// Largest level size, in decimal.
    pub max: String,
    pub argmax: Vec<usize>,
    pub witness_method: String,
    pub witness_chains: Option<usize>,
    pub sperner_certified: bool,
}

/// A Sperner decomposition of `L(m,n)` from whichever construction applies.
pub fn sperner_witness(shape: BoxShape) -> (String, Option<ChainDecomposition>) {
    let (m, n) = (shape.m(), shape.n());
    if m == 3 {
        return ("phi".into(), chains_from_phi(n).ok());
    }
    if m == 4 {
        if let Ok(d) = chains_l4(n) {
            return ("greedy".into(), Some(d));
        }
    }
    if let Ok(d) = iterated_udec(shape).map_err(|_| ()).and_then(|u| knead(&u).map_err(|_| ())) {
        if validate_full(&d).is_valid() {
            return ("recud".into(), Some(d));
        }
    }
    ("greedy".into(), Some(chains_from_matching(&ga_full(shape))))
}

/// Symmetry and unimodality of the rank profile, plus a chain
/// decomposition with as many chains as the middle level has elements.
pub fn certify_profile(shape: BoxShape) -> ProfileReport {
    let profile = rank_profile(shape);
    let (method, witness) = sperner_witness(shape);
    let middle = profile.size(shape.middle_rank());
    let (chains, certified) = match &witness {
        Some(d) => (Some(d.chains.len()), validate_full(d).is_valid() && d.chains.len() == middle),
        None => (None, false),
    };
    ProfileReport {
        shape,
        symmetric: profile.is_symmetric(),
        unimodal: profile.is_unimodal(),
        max: profile.max().to_string(),
        argmax: profile.argmax(),
        witness_method: method,
        witness_chains: chains,
        sperner_certified: certified,
    }
}
