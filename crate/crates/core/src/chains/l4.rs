use std::fmt;

use serde::{Deserialize, Serialize};

use super::{chains_from_matching, validate_full, ChainDecomposition, ChainError};
use crate::greedy::ga_full;
use crate::poset::{BoxShape, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum L4Type {
    A1,
    A2,
    A3,
    A4,
    B1,
    B3,
    B2,
    B4,
    Ca2,
    Ca3,
    Ca4,
    Cb2,
    Cb3,
    Cb1,
    Da3,
    Da4,
    Db2,
    Db3,
    Dc1,
    Dc2,
}

impl L4Type {
    pub const ALL: [L4Type; 20] = [
        L4Type::A1,
        L4Type::A2,
        L4Type::A3,
        L4Type::A4,
        L4Type::B1,
        L4Type::B3,
        L4Type::B2,
        L4Type::B4,
        L4Type::Ca2,
        L4Type::Ca3,
        L4Type::Ca4,
        L4Type::Cb2,
        L4Type::Cb3,
        L4Type::Cb1,
        L4Type::Da3,
        L4Type::Da4,
        L4Type::Db2,
        L4Type::Db3,
        L4Type::Dc1,
        L4Type::Dc2,
    ];

    /// Leading letter: `A`, `B`, `C` or `D`.
    pub fn family(self) -> char {
        format!("{self:?}").chars().next().unwrap()
    }
}

impl fmt::Display for L4Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy)]
enum Cmp {
    Any,
    Eq(i64),
    Ge(i64),
    Le(i64),
}

impl Cmp {
    fn test(self, x: i64) -> bool {
        match self {
            Cmp::Any => true,
            Cmp::Eq(v) => x == v,
            Cmp::Ge(v) => x >= v,
            Cmp::Le(v) => x <= v,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Par {
    Any,
    Even,
    Odd,
}

impl Par {
    fn test(self, x: i64) -> bool {
        match self {
            Par::Any => true,
            Par::Even => x % 2 == 0,
            Par::Odd => x % 2 != 0,
        }
    }
}

struct Row {
    a_b: Cmp,
    a_g: Cmp,
    b_g: Cmp,
    a: Par,
    b: Par,
    g: Par,
    tag: L4Type,
}

const fn row(a_b: Cmp, a_g: Cmp, b_g: Cmp, a: Par, b: Par, g: Par, tag: L4Type) -> Row {
    Row { a_b, a_g, b_g, a, b, g, tag }
}

use Cmp::{Any as X, Eq, Ge, Le};
use Par::{Any as P, Even as E, Odd as O};

/// Conditions on `α-β, α-γ, β-γ` and the parities of `α, β, γ`.
const DECISION_TABLE: [Row; 20] = [
    row(Eq(0), Eq(0), Eq(0), E, E, E, L4Type::A1),
    row(Eq(1), Eq(1), Eq(0), O, E, E, L4Type::A2),
    row(Eq(-1), Eq(0), Eq(1), E, O, E, L4Type::A3),
    row(Eq(0), Eq(-1), Eq(-1), E, E, O, L4Type::A4),
    row(Le(-2), Eq(0), Ge(2), E, P, E, L4Type::B1),
    row(Le(-1), Eq(1), Ge(2), O, P, E, L4Type::B3),
    row(Le(0), Eq(0), Ge(0), O, P, O, L4Type::B2),
    row(Le(-2), Eq(-1), Ge(1), E, P, O, L4Type::B4),
    row(Ge(2), Ge(2), Eq(0), P, E, E, L4Type::Ca2),
    row(Ge(0), Ge(1), Eq(1), P, O, E, L4Type::Ca3),
    row(Ge(2), Ge(1), Eq(-1), P, E, O, L4Type::Ca4),
    row(Eq(1), Le(0), Le(-1), O, E, P, L4Type::Cb2),
    row(Eq(-1), Le(-1), Le(0), E, O, P, L4Type::Cb3),
    row(Eq(0), Le(-2), Le(-2), E, E, P, L4Type::Cb1),
    row(X, Ge(2), Ge(2), P, P, E, L4Type::Da3),
    row(X, Ge(1), Ge(0), P, P, O, L4Type::Da4),
    row(Ge(2), X, Le(-2), P, E, P, L4Type::Db2),
    row(Ge(0), X, Le(-1), P, O, P, L4Type::Db3),
    row(Le(-2), Le(-2), X, E, P, P, L4Type::Dc1),
    row(Le(-1), Le(-1), X, O, P, P, L4Type::Dc2),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationL4 {
    #[serde(rename = "type")]
    pub tag: L4Type,
    pub k: u32,
    pub c: u32,
    pub ell: Option<u32>,
    pub r: Option<u32>,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl ClassificationL4 {
    /// The partition described by the type form, or `None` if the
    /// parameters violate the form's side conditions.
    pub fn reconstruct(&self) -> Option<Partition> {
        let (k, c) = (self.k as i64, self.c as i64);
        let l = self.ell.map_or(0, i64::from);
        let r = self.r.map_or(0, i64::from);
        use L4Type::*;
        let needs_l = matches!(self.tag, B1 | B3 | B2 | B4 | Da3 | Da4 | Db2 | Db3 | Dc1 | Dc2);
        let needs_r = matches!(self.tag, Ca2 | Ca3 | Ca4 | Cb2 | Cb3 | Cb1 | Da3 | Da4 | Db2 | Db3 | Dc1 | Dc2);
        if needs_l != self.ell.is_some() || needs_r != self.r.is_some() {
            return None;
        }
        if (needs_l && l < 2) || (needs_r && r < 2) {
            return None;
        }
        let side_ok = match self.tag {
            Ca2 | Ca3 | Db2 | Db3 => c <= r - 2,
            Ca4 => c <= r - 3,
            Da3 | Da4 => c <= l - 2,
            _ => true,
        };
        if !side_ok {
            return None;
        }
        let parts = match self.tag {
            A1 => [6 * k + c, 4 * k + c, 2 * k + c, c],
            A2 => [6 * k + c + 1, 4 * k + c, 2 * k + c, c],
            A3 => [6 * k + c + 1, 4 * k + c + 1, 2 * k + c, c],
            A4 => [6 * k + c + 1, 4 * k + c + 1, 2 * k + c + 1, c],
            B1 => [6 * k + l + c, 4 * k + l + c, 2 * k + c, c],
            B3 => [6 * k + l + c + 1, 4 * k + l + c, 2 * k + c, c],
            B2 => [6 * k + l + c + 1, 4 * k + l + c, 2 * k + c + 1, c],
            B4 => [6 * k + l + c + 1, 4 * k + l + c + 1, 2 * k + c + 1, c],
            Ca2 => [6 * k + r, 4 * k + c, 2 * k + c, c],
            Ca3 => [6 * k + r, 4 * k + c + 1, 2 * k + c, c],
            Ca4 => [6 * k + r, 4 * k + c + 1, 2 * k + c + 1, c],
            Cb2 => [6 * k + r + c, 4 * k + r - 1 + c, 2 * k + r - 1 + c, r - 2],
            Cb3 => [6 * k + r + c, 4 * k + r + c, 2 * k + r - 1 + c, r - 2],
            Cb1 => [6 * k + r + c, 4 * k + r + c, 2 * k + r + c, r - 2],
            Da3 => [6 * k + l + r, 4 * k + l, 2 * k + c, c],
            Da4 => [6 * k + l + r, 4 * k + l, 2 * k + c + 1, c],
            Db2 => [6 * k + l + r, 4 * k + l + c, 2 * k + l + c, l - 2],
            Db3 => [6 * k + l + r, 4 * k + l + c + 1, 2 * k + l + c, l - 2],
            Dc1 => [6 * k + l + r + c, 4 * k + l + r + c, 2 * k + l + r - 2, l - 2],
            Dc2 => [6 * k + l + r + c + 1, 4 * k + l + r + c, 2 * k + l + r - 2, l - 2],
        };
        Partition::from_parts(parts.iter().map(|&x| x as u32).collect()).ok()
    }
}

fn half(x: i64) -> Option<i64> {
    (x % 2 == 0).then_some(x / 2)
}

/// Parameters `(k, c, ℓ, r)` of type `tag` read off from `α, β, γ, λ4`.
fn solve(tag: L4Type, a: i64, b: i64, g: i64, x4: i64) -> Option<(i64, i64, Option<i64>, Option<i64>)> {
    use L4Type::*;
    let out = match tag {
        A1 | A3 | A4 => (half(a)?, x4, None, None),
        A2 => (half(b)?, x4, None, None),
        B1 | B4 => (half(a)?, x4, Some(-(a - b)), None),
        B3 => (half(a - 1)?, x4, Some(-(a - b) + 1), None),
        B2 => (half(a - 1)?, x4, Some(-(a - b) + 2), None),
        Ca2 => (half(b)?, x4, None, Some((a - b) + x4)),
        Ca3 => (half(b - 1)?, x4, None, Some((a - b) + x4 + 2)),
        Ca4 => (half(b)?, x4, None, Some((a - b) + x4 + 1)),
        Cb2 => (half(b)?, -(b - g) - 1, None, Some(x4 + 2)),
        Cb3 => (half(a)?, -(a - g) - 1, None, Some(x4 + 2)),
        Cb1 => (half(a)?, -(a - g) - 2, None, Some(x4 + 2)),
        Da3 => (half(g)?, x4, Some((b - g) + x4), Some(a - g)),
        Da4 => (half(g - 1)?, x4, Some((b - g) + x4 + 2), Some(a - g + 1)),
        Db2 => (half(b)?, -(b - g) - 2, Some(x4 + 2), Some((a - b) - (b - g) - 2)),
        Db3 => (half(b - 1)?, -(b - g) - 1, Some(x4 + 2), Some((a - b) - (b - g) + 1)),
        Dc1 => (half(a)?, -(a - b) - 2, Some(x4 + 2), Some(g - a)),
        Dc2 => (half(a - 1)?, -(a - b) - 1, Some(x4 + 2), Some(g - a + 1)),
    };
    Some(out)
}

fn differences(lambda: &Partition) -> Result<(i64, i64, i64, i64), ChainError> {
    if lambda.len() != 4 {
        return Err(ChainError::WrongRows { expected: 4, found: lambda.clone() });
    }
    let p = lambda.as_i64();
    Ok((p[0] - p[1], p[1] - p[2], p[2] - p[3], p[3]))
}

fn to_u32(v: i64) -> Option<u32> {
    u32::try_from(v).ok()
}

fn opt_u32(v: Option<i64>) -> Option<Option<u32>> {
    match v {
        None => Some(None),
        Some(x) => to_u32(x).map(Some),
    }
}

/// Every decision-table row whose predicates hold at `λ`.
pub fn matching_l4_rows(lambda: &Partition) -> Result<Vec<L4Type>, ChainError> {
    let (a, b, g, _) = differences(lambda)?;
    Ok(DECISION_TABLE
        .iter()
        .filter(|r| {
            r.a_b.test(a - b) && r.a_g.test(a - g) && r.b_g.test(b - g) && r.a.test(a) && r.b.test(b) && r.g.test(g)
        })
        .map(|r| r.tag)
        .collect())
}

/// Resolves the type of a 4-row partition. The first table row whose
/// predicates hold and whose parameters reconstruct `λ` wins.
pub fn classify_l4(lambda: &Partition) -> Result<ClassificationL4, ChainError> {
    let (a, b, g, x4) = differences(lambda)?;
    for tag in matching_l4_rows(lambda)? {
        let Some((k, c, ell, r)) = solve(tag, a, b, g, x4) else { continue };
        let (Some(k), Some(c), Some(ell), Some(r)) = (to_u32(k), to_u32(c), opt_u32(ell), opt_u32(r)) else {
            continue;
        };
        let class = ClassificationL4 { tag, k, c, ell, r, alpha: a, beta: b, gamma: g };
        if class.reconstruct().as_ref() == Some(lambda) {
            return Ok(class);
        }
    }
    Err(ChainError::ClassificationFailure(lambda.clone()))
}

/// `S_{4,n}`: all `(6k+s+ℓ, 4k+ℓ, 2k, 0)` with `s, ℓ ≠ 1` and first part
/// at most `n`, sorted.
pub fn s4_starting_set(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for k in 0..=n / 6 {
        for ell in (0..=n - 6 * k).filter(|&l| l != 1) {
            for s in (0..=n - 6 * k - ell).filter(|&s| s != 1) {
                let parts = vec![(6 * k + s + ell) as u32, (4 * k + ell) as u32, (2 * k) as u32, 0];
                out.push(Partition::from_parts(parts).expect("decreasing by construction"));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Chain families of `L(4,n)`, keyed by their starting partition
/// `(6k+s+ℓ, 4k+ℓ, 2k, 0)`; `r` is the value of `s` when it is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum L4Family {
    A { k: u32 },
    B { k: u32, ell: u32 },
    C { k: u32, r: u32 },
    D { k: u32, ell: u32, r: u32 },
}

impl L4Family {
    /// Last step label of the chain as fixed by the family's closed form.
    /// Not available for `D`.
    pub fn expected_last_label(&self, n: usize) -> Option<usize> {
        let n = n as i64;
        let v = match *self {
            L4Family::A { k } => 4 * n - 24 * k as i64,
            L4Family::B { k, ell } => 4 * n - 24 * k as i64 - 4 * ell as i64,
            L4Family::C { k, .. } => 3 * n - 18 * k as i64 - 2,
            L4Family::D { .. } => return None,
        };
        usize::try_from(v).ok()
    }

    pub fn letter(&self) -> char {
        match self {
            L4Family::A { .. } => 'A',
            L4Family::B { .. } => 'B',
            L4Family::C { .. } => 'C',
            L4Family::D { .. } => 'D',
        }
    }
}

pub fn l4_family(start: &Partition, n: usize) -> Result<L4Family, ChainError> {
    let not_start = || ChainError::NotAStart(start.clone(), n);
    if start.len() != 4 || start.part(3) != 0 || !start.part(2).is_multiple_of(2) || start.part(0) as usize > n {
        return Err(not_start());
    }
    let k = start.part(2) / 2;
    let ell = start.part(1).checked_sub(4 * k).ok_or_else(not_start)?;
    let s = start.part(0).checked_sub(6 * k + ell).ok_or_else(not_start)?;
    if s == 1 || ell == 1 {
        return Err(not_start());
    }
    Ok(match (ell, s) {
        (0, 0) => L4Family::A { k },
        (ell, 0) => L4Family::B { k, ell },
        (0, r) => L4Family::C { k, r },
        (ell, r) => L4Family::D { k, ell, r },
    })
}

/// Greedy-threaded chains of `L(4,n)`, checked to be a Sperner
/// decomposition whose starts are `S_{4,n}` and whose `A`, `B`, `C`
/// chains have the closed-form lengths.
pub fn chains_l4(n: usize) -> Result<ChainDecomposition, ChainError> {
    let shape = BoxShape::new(4, n)?;
    let d = chains_from_matching(&ga_full(shape));
    let report = validate_full(&d);
    if let Some(v) = report.violation {
        return Err(ChainError::DecompositionInvalid(format!("{v:?}")));
    }
    if d.starts() != s4_starting_set(n) {
        return Err(ChainError::DecompositionInvalid("chain starts differ from S_{4,n}".into()));
    }
    for chain in &d.chains {
        let family = l4_family(chain.start(), n)
            .map_err(|_| ChainError::DecompositionInvalid(format!("unexpected start {}", chain.start())))?;
        if let Some(expected) = family.expected_last_label(n) {
            if chain.last_label() != expected {
                return Err(ChainError::DecompositionInvalid(format!(
                    "chain from {} has last label {}, expected {}",
                    chain.start(),
                    chain.last_label(),
                    expected
                )));
            }
        }
    }
    Ok(d)
}

/// Observed data for one `D`-family chain next to the two caption
/// constants attached to that family. Informational only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeIvObservation {
    pub start: Partition,
    pub end: Partition,
    pub k: u32,
    pub ell: u32,
    pub r: u32,
    pub last_label: usize,
    pub caption_d: i64,
    pub caption_e: i64,
}

pub fn type_iv_report(n: usize) -> Result<Vec<TypeIvObservation>, ChainError> {
    let d = chains_l4(n)?;
    let mut out = Vec::new();
    for chain in &d.chains {
        if let L4Family::D { k, ell, r } = l4_family(chain.start(), n)? {
            out.push(TypeIvObservation {
                start: chain.start().clone(),
                end: chain.end().clone(),
                k,
                ell,
                r,
                last_label: chain.last_label(),
                caption_d: 2 * ell as i64 + 2 * r as i64 - 7,
                caption_e: 2 * n as i64 - 12 * k as i64 - 5,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify_l4(&p(&[6, 4, 2, 0])).unwrap();
        assert_eq!((c.tag, c.k, c.c), (L4Type::A1, 1, 0));
        let c = classify_l4(&p(&[1, 0, 0, 0])).unwrap();
        assert_eq!((c.tag, c.k, c.c), (L4Type::A2, 0, 0));
        let c = classify_l4(&p(&[4, 2, 0, 0])).unwrap();
        assert_eq!((c.tag, c.k, c.c, c.ell, c.r), (L4Type::Da3, 0, 0, Some(2), Some(2)));
    }

    #[test]
    fn corrected_parameter_rows() {
        // Ca4: (6k+r, 4k+c+1, 2k+c+1, c) with k=0, r=4, c=1.
        let c = classify_l4(&p(&[4, 2, 2, 1])).unwrap();
        assert_eq!((c.tag, c.k, c.c, c.r), (L4Type::Ca4, 0, 1, Some(4)));
        // Dc1: k=0, ℓ=2, r=3, c=0 gives (5,5,3,0).
        let c = classify_l4(&p(&[5, 5, 3, 0])).unwrap();
        assert_eq!((c.tag, c.ell, c.r), (L4Type::Dc1, Some(2), Some(3)));
        // Dc2: k=0, ℓ=2, r=3, c=0 gives (6,5,3,0).
        let c = classify_l4(&p(&[6, 5, 3, 0])).unwrap();
        assert_eq!((c.tag, c.ell, c.r), (L4Type::Dc2, Some(2), Some(3)));
    }

    #[test]
    fn starting_set_small() {
        let s4 = s4_starting_set(4);
        assert_eq!(s4.len(), 8);
        for x in [
            [0, 0, 0, 0],
            [2, 0, 0, 0],
            [3, 0, 0, 0],
            [4, 0, 0, 0],
            [2, 2, 0, 0],
            [3, 3, 0, 0],
            [4, 4, 0, 0],
            [4, 2, 0, 0],
        ] {
            assert!(s4.contains(&p(&x)), "{x:?}");
        }
        assert_eq!(s4_starting_set(1), vec![p(&[0, 0, 0, 0])]);
        assert!(s4_starting_set(8).contains(&p(&[8, 4, 2, 0])));
    }

    #[test]
    fn l4_chains_small() {
        let d = chains_l4(4).unwrap();
        assert_eq!(d.chains.len(), 8);
        assert_eq!(d.element_count(), 70);
        let zero = d.chain_starting_at(&p(&[0, 0, 0, 0])).unwrap();
        assert_eq!(zero.len(), 17);
        assert_eq!(zero.end(), &p(&[4, 4, 4, 4]));
        let d6 = chains_l4(6).unwrap();
        assert_eq!(d6.chain_starting_at(&p(&[6, 4, 2, 0])).unwrap().len(), 1);
    }

    #[test]
    fn l48_examples() {
        let d = chains_l4(8).unwrap();
        let a = d.chain_starting_at(&p(&[2, 0, 0, 0])).unwrap();
        assert_eq!((a.last_label(), a.end().clone()), (22, p(&[8, 8, 8, 0])));
        let b = d.chain_starting_at(&p(&[8, 4, 2, 0])).unwrap();
        assert_eq!((b.last_label(), b.end().clone()), (4, p(&[8, 6, 4, 0])));
        let mut counts = std::collections::BTreeMap::new();
        for c in &d.chains {
            *counts.entry(l4_family(c.start(), 8).unwrap().letter()).or_insert(0) += 1;
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![('A', 2), ('B', 8), ('C', 8), ('D', 15)]);
    }

    #[test]
    fn family_of_non_start_is_rejected() {
        assert!(l4_family(&p(&[1, 0, 0, 0]), 4).is_err());
        assert!(l4_family(&p(&[3, 1, 0, 0]), 4).is_err());
    }
}
