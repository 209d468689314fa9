//! Structural subsets of a finite ring: units, idempotents, nilpotents,
//! the Jacobson radical J(R), J#(R) (elements with a power in J), the
//! quasinilpotents R^qnil, and commutants.
//!
//! Everything is computed from the raw definitions by enumeration. The
//! radical uses the quasi-regularity criterion: x is in J(R) iff 1 - rx
//! is a unit for every r. In a finite ring one-sided invertibility is
//! two-sided, so the two-sided unit check below matches the radical.

use crate::ring::FiniteRing;
use std::collections::BTreeMap;

/// Memoized structural subsets of one ring. Immutable once computed.
#[derive(Debug)]
pub struct StructureCache {
    /// inverse[x] = Some(y) with xy = yx = 1, if x is a unit.
    inverse: Vec<Option<usize>>,
    idem_mask: Vec<bool>,
    /// nil_index[x] = least m >= 1 with x^m = 0, if x is nilpotent.
    nil_index: Vec<Option<usize>>,
    jac_mask: Vec<bool>,
    /// j_sharp_index[x] = least m >= 1 with x^m in J(R), if any.
    j_sharp_index: Vec<Option<usize>>,
    qnil_mask: Vec<bool>,
}

impl StructureCache {
    pub fn compute(r: &FiniteRing) -> Self {
        let n = r.order();
        let one = r.one();
        let zero = r.zero();

        let inverse: Vec<Option<usize>> = (0..n)
            .map(|x| (0..n).find(|&y| r.mul(x, y) == one && r.mul(y, x) == one))
            .collect();

        let idem_mask: Vec<bool> = (0..n).map(|x| r.mul(x, x) == x).collect();

        // power sequence with cycle detection, at most `n` steps
        let power_scan = |x: usize, target: &dyn Fn(usize) -> bool| -> Option<usize> {
            let mut seen = vec![false; n];
            let mut p = x;
            for m in 1..=n {
                if target(p) {
                    return Some(m);
                }
                if seen[p] {
                    return None;
                }
                seen[p] = true;
                p = r.mul(p, x);
            }
            None
        };

        let nil_index: Vec<Option<usize>> =
            (0..n).map(|x| power_scan(x, &|p| p == zero)).collect();

        let jac_mask: Vec<bool> = (0..n)
            .map(|x| (0..n).all(|t| inverse[r.sub(one, r.mul(t, x))].is_some()))
            .collect();

        let j_sharp_index: Vec<Option<usize>> =
            (0..n).map(|x| power_scan(x, &|p| jac_mask[p])).collect();

        let qnil_mask: Vec<bool> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&x| r.mul(a, x) == r.mul(x, a))
                    .all(|x| inverse[r.add(one, r.mul(a, x))].is_some())
            })
            .collect();

        StructureCache {
            inverse,
            idem_mask,
            nil_index,
            jac_mask,
            j_sharp_index,
            qnil_mask,
        }
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.inverse[x].is_some()
    }

    pub fn inverse_of(&self, x: usize) -> Option<usize> {
        self.inverse[x]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.idem_mask[x]
    }

    pub fn nilpotency_index(&self, x: usize) -> Option<usize> {
        self.nil_index[x]
    }

    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.nil_index[x].is_some()
    }

    pub fn in_jacobson(&self, x: usize) -> bool {
        self.jac_mask[x]
    }

    pub fn j_sharp_index(&self, x: usize) -> Option<usize> {
        self.j_sharp_index[x]
    }

    pub fn in_j_sharp(&self, x: usize) -> bool {
        self.j_sharp_index[x].is_some()
    }

    pub fn in_qnil(&self, x: usize) -> bool {
        self.qnil_mask[x]
    }

    fn mask_members(mask: &[bool]) -> Vec<usize> {
        mask.iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect()
    }

    /// x -> x^{-1}, in ascending element order.
    pub fn units(&self) -> BTreeMap<usize, usize> {
        self.inverse
            .iter()
            .enumerate()
            .filter_map(|(x, inv)| inv.map(|y| (x, y)))
            .collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        Self::mask_members(&self.idem_mask)
    }

    pub fn nilpotents(&self) -> BTreeMap<usize, usize> {
        self.nil_index
            .iter()
            .enumerate()
            .filter_map(|(x, m)| m.map(|m| (x, m)))
            .collect()
    }

    pub fn jacobson(&self) -> Vec<usize> {
        Self::mask_members(&self.jac_mask)
    }

    pub fn j_sharp(&self) -> BTreeMap<usize, usize> {
        self.j_sharp_index
            .iter()
            .enumerate()
            .filter_map(|(x, m)| m.map(|m| (x, m)))
            .collect()
    }

    pub fn qnil(&self) -> Vec<usize> {
        Self::mask_members(&self.qnil_mask)
    }
}

/// comm(a) as a membership mask.
pub fn commutant(r: &FiniteRing, a: usize) -> Vec<bool> {
    (0..r.order()).map(|x| r.mul(x, a) == r.mul(a, x)).collect()
}

/// comm^2(a): everything commuting with every member of comm(a).
pub fn bicommutant(r: &FiniteRing, a: usize) -> Vec<bool> {
    let comm: Vec<usize> = commutant(r, a)
        .iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i))
        .collect();
    (0..r.order())
        .map(|x| comm.iter().all(|&y| r.mul(x, y) == r.mul(y, x)))
        .collect()
}

pub fn is_central(r: &FiniteRing, a: usize) -> bool {
    (0..r.order()).all(|x| r.mul(x, a) == r.mul(a, x))
}
