//! Shared inputs for the pipeline benchmarks.

use mzv_core::{Renormalizer, WindowPolicy, Word};

/// Non-positive arguments of increasing depth and weight.
pub const NONPOS_CASES: &[&[i64]] =
    &[&[-3], &[-1, -1], &[-3, -3], &[0, 0, 0], &[-2, -1, -2], &[-4, -3, -2, -1]];

/// Positive arguments exercising the leading-ones recursion.
pub const POSITIVE_CASES: &[&[i64]] = &[&[1, 1], &[1, 2, 1], &[1, 1, 1, 3]];

/// Every cell `(−s₁, −s₂)` of the depth-two table.
pub fn table_cells() -> Vec<[i64; 2]> {
    (1..=8).flat_map(|i| (1..=7).map(move |j| [-i, -j])).collect()
}

/// Evaluates the whole depth-two table with one shared evaluator.
pub fn whole_table() -> usize {
    let r = Renormalizer::new(WindowPolicy::default());
    table_cells().iter().filter(|s| r.gzeta_nonpos(&s[..]).is_ok()).count()
}

/// A pair of words on the δ-path for product benchmarks.
pub fn product_pair(depth: usize) -> (Word, Word) {
    let a: Vec<i64> = (0..depth as i64).map(|i| -(i % 3)).collect();
    let b: Vec<i64> = (0..depth as i64).map(|i| -((i + 1) % 4)).collect();
    (Word::with_delta_directions(&a), Word::with_delta_directions(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_evaluate() {
        assert_eq!(table_cells().len(), 56);
        assert_eq!(whole_table(), 56);
        let (a, b) = product_pair(3);
        assert_eq!((a.depth(), b.depth()), (3, 3));
    }
}
