use std::collections::{BTreeSet, HashSet};

use ylattice_core::chains::{chains_from_phi, classify_l3, closed_form_chain_l3, psi, validate_full, L3Type};
use ylattice_core::greedy::compare_with_phi;
use ylattice_core::phi::{boundary_sets, f_classify, in_e3, in_end_set, is_impossible_case, phi, phi_inverse, FClass};
use ylattice_core::poset::{enumerate_all, BoxShape, Partition};

fn p(parts: [u32; 3]) -> Partition {
    Partition::from_parts(parts.to_vec()).unwrap()
}

/// Level sizes counted by a plain triple loop.
fn level_size(n: usize, rank: usize) -> usize {
    let mut count = 0;
    for a in 0..=n {
        for b in 0..=a {
            for c in 0..=b {
                count += usize::from(a + b + c == rank);
            }
        }
    }
    count
}

fn in_e(x: [i64; 3]) -> bool {
    in_e3(x, x[0])
}

/// Instantiates one family of the row-choice facts for every parameter
/// value with first part at most `n_max`.
fn family(n_max: i64, build: impl Fn(i64, i64, i64) -> Option<[i64; 3]>) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for k in 0..=n_max {
        for c in 0..=n_max {
            for l in 0..=n_max {
                if let Some(x) = build(k, c, l) {
                    if x[0] <= n_max && x[0] >= x[1] && x[1] >= x[2] && x[2] >= 0 {
                        out.push(x);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn row_choice_facts() {
    let n = 12;
    let even = |x: [i64; 3]| (x[1] + x[2]) % 2 == 0;
    let row2_neighbour = |x: [i64; 3]| in_e([x[0] - 1, x[1] + 1, x[2]]);
    let row3_neighbour = |x: [i64; 3]| in_e([x[0] - 1, x[1], x[2] + 1]);

    for x in family(n, |k, c, _| Some([4 * k + c, 2 * k + c, c])) {
        assert!(in_e(x), "A1 {x:?}");
    }
    for x in family(n, |k, c, _| (k >= 1).then_some([4 * k + c + 1, 2 * k + c, c])) {
        assert!(!in_e(x) && even(x) && !row2_neighbour(x), "A2 {x:?}");
    }
    for x in family(n, |k, c, _| (k >= 1).then_some([4 * k + c + 1, 2 * k + c + 1, c])) {
        assert!(!in_e(x) && !even(x) && !row3_neighbour(x), "A3 {x:?}");
    }
    for x in family(n, |k, c, l| (l >= 2 && 1 <= c && c <= l - 2).then_some([4 * k + l, 2 * k + c, c])) {
        assert!(!in_e(x) && even(x) && !row2_neighbour(x), "B2 {x:?}");
    }
    for x in family(n, |k, c, l| (l >= 2 && 1 <= c && c <= l - 3).then_some([4 * k + l, 2 * k + c + 1, c])) {
        assert!(!in_e(x) && !even(x) && !row3_neighbour(x), "B3 {x:?}");
    }
    for x in family(n, |k, c, l| (l >= 2).then_some([4 * k + l + c, 2 * k + l + c, l - 2])) {
        assert!(in_e(x), "C1 {x:?}");
    }
    for x in family(n, |k, c, l| (l >= 2).then_some([4 * k + l + c + 1, 2 * k + l + c, l - 2])) {
        assert!(!in_e(x), "C2 {x:?}");
        assert!((even(x) && !row2_neighbour(x)) || (!even(x) && row3_neighbour(x)), "C2 {x:?}");
    }
}

#[test]
fn phi_is_a_bijection_onto_the_complement_of_the_start_set() {
    for n in 1..=16 {
        let shape = BoxShape::new(3, n).unwrap();
        let sets = boundary_sets(n);
        let starts: HashSet<_> = sets.starts.iter().cloned().collect();
        let mut images = HashSet::new();
        for x in enumerate_all(shape) {
            assert!(!is_impossible_case(&x), "{x}");
            if in_end_set(&x, n) {
                continue;
            }
            let y = phi(&x, n).unwrap();
            assert!(images.insert(y.clone()), "φ not injective at {x}, n={n}");
            assert!(!starts.contains(&y));
            assert_eq!(phi_inverse(&y, n).unwrap(), x);
        }
        assert_eq!(images.len() + starts.len(), enumerate_all(shape).len());
    }
}

#[test]
fn greedy_agrees_with_phi() {
    for n in 1..=12 {
        let r = compare_with_phi(n).unwrap();
        assert!(r.agrees(), "n={n}: {:?}", r.disagreements.first());
    }
}

#[test]
fn phi_decomposition_is_sperner_with_middle_level_many_chains() {
    for n in 1..=16 {
        let d = chains_from_phi(n).unwrap();
        let report = validate_full(&d);
        assert!(report.is_valid(), "n={n}: {report:?}");
        let mid = 3 * n / 2;
        assert_eq!(d.chains.len(), level_size(n, mid), "n={n}");
        assert_eq!(d.starts(), boundary_sets(n).starts);
        assert_eq!(d.ends(), boundary_sets(n).ends);
    }
}

#[test]
fn chain_ends_are_duals_of_paired_starts() {
    for n in 1..=12 {
        for chain in chains_from_phi(n).unwrap().chains {
            let mu = chain.start();
            let partner = psi(mu, n).unwrap();
            assert_eq!(psi(&partner, n).unwrap(), *mu);
            assert_eq!(*chain.end(), partner.complement(n), "n={n} start {mu}");
        }
    }
}

#[test]
fn psi_fixed_points() {
    for n in 1..=16 {
        let fixed: BTreeSet<_> = boundary_sets(n).starts.into_iter().filter(|s| psi(s, n).unwrap() == *s).collect();
        let mut expected = BTreeSet::new();
        for s in boundary_sets(n).starts {
            let k = s.part(1) as usize / 2;
            let ell = s.part(0) as usize - 4 * k;
            if ell == 0 || n == 4 * k + 2 * ell - 2 {
                expected.insert(s);
            }
        }
        assert_eq!(fixed, expected, "n={n}");
    }
    assert_eq!(psi(&p([6, 2, 0]), 8).unwrap(), p([8, 2, 0]));
    assert_eq!(psi(&p([8, 2, 0]), 8).unwrap(), p([6, 2, 0]));
}

#[test]
fn chains_consist_of_their_family_types() {
    for n in 1..=12 {
        for s in boundary_sets(n).starts {
            let chain = closed_form_chain_l3(&s, n).unwrap();
            let k = s.part(1) / 2;
            let ell = s.part(0) - 4 * k;
            for x in &chain.elements {
                let c = classify_l3(x).unwrap();
                assert_eq!(c.k, k, "{x} in chain from {s}");
                if ell == 0 {
                    assert_eq!(c.tag.family(), 'A', "{x}");
                } else {
                    assert!(matches!(c.tag.family(), 'B' | 'C'), "{x}");
                    assert_eq!(c.ell, Some(ell), "{x}");
                }
            }
        }
    }
}

#[test]
fn classify_l3_is_total_and_injective() {
    for n in 1..=12 {
        let mut seen = HashSet::new();
        for x in enumerate_all(BoxShape::new(3, n).unwrap()) {
            let c = classify_l3(&x).unwrap();
            assert_eq!(c.reconstruct(), x);
            assert!(seen.insert((c.tag, c.k, c.c, c.ell)));
        }
    }
    let c = classify_l3(&p([4, 1, 0])).unwrap();
    assert_eq!(c.tag, L3Type::B3);
}

#[test]
fn f_classes_match_types() {
    for n in 1..=12 {
        for x in enumerate_all(BoxShape::new(3, n).unwrap()) {
            let class = f_classify(&x).unwrap();
            let tag = classify_l3(&x).unwrap().tag;
            if matches!(tag, L3Type::A1 | L3Type::C1) {
                assert_eq!(class, FClass::F1, "{x}");
            }
        }
    }
}
