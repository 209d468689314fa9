//! Exhaustive ring-axiom checking. For orders up to 256 every pair and
//! triple is checked; above that, triples are sampled with a fixed seed.

use super::FiniteRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EXHAUSTIVE_LIMIT: usize = 256;
const SAMPLE_TRIPLES: usize = 200_000;
const SAMPLE_SEED: u64 = 0xDEC0DE;

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub exhaustive: bool,
    /// First failing axiom with its witness, when invalid.
    pub failure: Option<String>,
}

impl ValidationReport {
    pub fn describe(&self) -> String {
        match &self.failure {
            None => "valid".to_string(),
            Some(f) => f.clone(),
        }
    }
}

/// Check every FiniteRing invariant; reports the first failing witness.
pub fn validate_ring(r: &FiniteRing) -> ValidationReport {
    let n = r.order();
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let fail = |msg: String| ValidationReport {
        valid: false,
        exhaustive,
        failure: Some(msg),
    };

    if n > 1 && r.zero() == r.one() {
        return fail("zero = one in a ring of order > 1".into());
    }
    for x in 0..n {
        if r.add(x, r.zero()) != x || r.add(r.zero(), x) != x {
            return fail(format!("zero is not an additive identity at x={x}"));
        }
        if r.mul(x, r.one()) != x || r.mul(r.one(), x) != x {
            return fail(format!("one is not a multiplicative identity at x={x}"));
        }
        // each row of the addition table is a permutation
        let mut seen = vec![false; n];
        for y in 0..n {
            let s = r.add(x, y);
            if seen[s] {
                return fail(format!("addition row {x} is not a permutation"));
            }
            seen[s] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            if r.add(x, y) != r.add(y, x) {
                return fail(format!("addition not commutative at ({x},{y})"));
            }
        }
    }

    let check_triple = |x: usize, y: usize, z: usize| -> Option<String> {
        if r.add(r.add(x, y), z) != r.add(x, r.add(y, z)) {
            return Some(format!("addition not associative at ({x},{y},{z})"));
        }
        if r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z)) {
            return Some(format!("multiplication not associative at ({x},{y},{z})"));
        }
        if r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z)) {
            return Some(format!("left distributivity fails at ({x},{y},{z})"));
        }
        if r.mul(r.add(y, z), x) != r.add(r.mul(y, x), r.mul(z, x)) {
            return Some(format!("right distributivity fails at ({x},{y},{z})"));
        }
        None
    };

    if exhaustive {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let Some(msg) = check_triple(x, y, z) {
                        return fail(msg);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_TRIPLES {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if let Some(msg) = check_triple(x, y, z) {
                return fail(msg);
            }
        }
    }

    ValidationReport {
        valid: true,
        exhaustive,
        failure: None,
    }
}
