//! Benchmark inputs shared by the criterion targets.

use sgs_core::{FamilySpec, GeneratorSet};

/// `(family, sizes)` pairs timed by the `build` bench.
pub const CASES: &[(&str, &[usize])] = &[
    ("two-gen", &[32, 64]),
    ("stairs-adjacent", &[16, 32]),
    ("stairs-cycle", &[16, 32]),
    ("stairs-random", &[12, 24]),
    ("doubling-relabeled", &[6, 8]),
];

/// Generator set for `family` at `size`; random families use seed 1.
pub fn instance(family: &str, size: usize) -> GeneratorSet {
    let spec: FamilySpec = family.parse().expect("known family");
    let spec = spec.with_size(size);
    let spec = if spec.is_random() {
        spec.with_seed(1)
    } else {
        spec
    };
    spec.generate().expect("valid size")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_generates() {
        for (family, sizes) in CASES {
            for &size in *sizes {
                assert!(!instance(family, size).is_empty());
            }
        }
    }
}
