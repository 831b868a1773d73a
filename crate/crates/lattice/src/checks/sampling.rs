//! Seeded random states.

use num_complex::Complex64;
use rand::Rng;

use crate::fock::{FockVector, Partition, State};
use crate::spec::LatticeSpec;

/// A random partition of `level` built from random parts.
pub fn random_partition<R: Rng>(rng: &mut R, level: u32) -> Partition {
    let mut parts = Vec::new();
    let mut left = level;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    Partition::from_parts(&parts)
}

/// e^{qγ} plus up to two Heisenberg dressings of level at most `max_level`,
/// with random complex coefficients.
pub fn dressed<R: Rng>(rng: &mut R, spec: &LatticeSpec, q: i64, max_level: u32) -> FockVector {
    let mut v = FockVector::basis(spec, State::exp(q));
    if max_level == 0 {
        return v;
    }
    for _ in 0..rng.gen_range(1..=2) {
        let level = rng.gen_range(1..=max_level);
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        v.add_term(State::new(q, random_partition(rng, level)), c);
    }
    v
}
