//! Inputs shared by the benchmarks.

use ylattice_core::BoxShape;

/// Boxes large enough to be measurable, small enough for a quick run.
pub fn bench_boxes() -> Vec<BoxShape> {
    [(3, 12), (4, 8), (5, 5)].into_iter().map(|(m, n)| BoxShape::new(m, n).expect("positive")).collect()
}
