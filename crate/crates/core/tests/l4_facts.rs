use std::collections::HashSet;

use ylattice_core::chains::{
    chains_l4, classify_l4, l4_family, matching_l4_rows, s4_starting_set, type_iv_report, L4Family, L4Type,
};
use ylattice_core::poset::{enumerate_all, BoxShape};

/// Middle-level size of `L(4,n)` counted directly.
fn middle_size(n: u32) -> usize {
    let mid = 2 * n;
    let mut count = 0;
    for a in 0..=n {
        for b in 0..=a {
            for c in 0..=b {
                for d in 0..=c {
                    count += usize::from(a + b + c + d == mid);
                }
            }
        }
    }
    count
}

#[test]
fn classify_l4_is_total_and_injective() {
    for n in 1..=8 {
        let mut seen = HashSet::new();
        for x in enumerate_all(BoxShape::new(4, n).unwrap()) {
            let rows = matching_l4_rows(&x).unwrap();
            assert_eq!(rows.len(), 1, "{x}: {rows:?}");
            let c = classify_l4(&x).unwrap();
            assert_eq!(c.tag, rows[0]);
            assert_eq!(c.reconstruct().as_ref(), Some(&x));
            assert!(seen.insert((c.tag, c.k, c.c, c.ell, c.r)));
        }
    }
}

#[test]
fn every_type_occurs() {
    let mut tags = HashSet::new();
    for x in enumerate_all(BoxShape::new(4, 10).unwrap()) {
        tags.insert(classify_l4(&x).unwrap().tag);
    }
    assert_eq!(tags.len(), L4Type::ALL.len());
}

#[test]
fn starting_set_size_is_middle_level_size() {
    for n in 1..=12 {
        assert_eq!(s4_starting_set(n).len(), middle_size(n as u32), "n={n}");
    }
}

#[test]
fn greedy_l4_decompositions() {
    let counts = [1, 3, 5, 8, 12, 18, 24, 33];
    for n in 1..=8 {
        let d = chains_l4(n).unwrap();
        assert_eq!(d.chains.len(), counts[n - 1], "n={n}");
        assert_eq!(d.starts(), s4_starting_set(n));
        for chain in &d.chains {
            match l4_family(chain.start(), n).unwrap() {
                L4Family::A { k } => {
                    assert_eq!(chain.len(), 4 * n - 24 * k as usize + 1);
                    assert_eq!(chain.min_rank() + chain.max_rank(), 4 * n, "A chains are symmetric");
                }
                L4Family::C { k, .. } => assert_eq!(chain.len(), 3 * n - 18 * k as usize - 1),
                L4Family::B { k, ell } => assert_eq!(chain.last_label(), 4 * n - 24 * k as usize - 4 * ell as usize),
                L4Family::D { .. } => {}
            }
        }
    }
}

/// Frozen from the greedy output: along an `A` chain the types cycle
/// A1, A2, A3, A4, and every chain stays inside its start's family.
#[test]
fn type_pattern_along_chains() {
    for n in 1..=8 {
        for chain in chains_l4(n).unwrap().chains {
            let family = l4_family(chain.start(), n).unwrap();
            let tags: Vec<L4Type> = chain.elements.iter().map(|x| classify_l4(x).unwrap().tag).collect();
            if let L4Family::A { .. } = family {
                let cycle = [L4Type::A1, L4Type::A2, L4Type::A3, L4Type::A4];
                for (i, t) in tags.iter().enumerate() {
                    assert_eq!(*t, cycle[i % 4], "n={n} chain from {}", chain.start());
                }
            }
            for (x, t) in chain.elements.iter().zip(&tags) {
                assert_eq!(t.family(), family.letter(), "n={n} {x} in chain from {}", chain.start());
            }
        }
    }
}

#[test]
fn type_iv_report_lists_all_d_chains() {
    let report = type_iv_report(8).unwrap();
    assert_eq!(report.len(), 15);
    for obs in &report {
        assert!(obs.ell >= 2 && obs.r >= 2);
        assert_eq!(obs.caption_e, 2 * 8 - 12 * obs.k as i64 - 5);
    }
}
