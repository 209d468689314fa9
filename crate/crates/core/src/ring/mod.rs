//! Finite unital rings represented by explicit Cayley tables.
//!
//! Every ring here is a concrete finite structure: addition and
//! multiplication are `order x order` lookup tables over dense element
//! indices. Constructors are provided for Z/nZ, full and upper-triangular
//! matrix rings, direct products, corner rings eRe, and user-supplied
//! tables. Arithmetic is O(1) table lookup, which keeps the exhaustive
//! theorem loops in the verifier feasible.

mod label;
mod spec;
mod table;
mod validate;

pub use spec::RingSpec;
pub use validate::{validate_ring, ValidationReport};

use std::sync::Arc;

use thiserror::Error;

/// Default cap on ring order for the built-in constructors.
pub const DEFAULT_ORDER_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("ring order {order} exceeds cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("element {0} is not idempotent")]
    NotIdempotent(String),
    #[error("ring mismatch: operands belong to different rings")]
    RingMismatch,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("invalid element literal {literal:?} for ring {ring}: {reason}")]
    BadLiteral {
        literal: String,
        ring: String,
        reason: String,
    },
    #[error("invalid ring spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("invalid ring table {path}: {reason}")]
    BadTable { path: String, reason: String },
    #[error("ring failed validation: {0}")]
    InvalidRing(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// How a ring was constructed. Drives element formatting and parsing.
#[derive(Debug)]
pub enum RingKind {
    ZMod(u64),
    Matrix { k: usize, base: Arc<FiniteRing> },
    Triangular { k: usize, base: Arc<FiniteRing> },
    Product { left: Arc<FiniteRing>, right: Arc<FiniteRing> },
    Corner { parent: Arc<FiniteRing>, idempotent: usize },
    Table,
}

/// A finite unital ring given by full addition and multiplication tables.
///
/// Elements are indices in `[0, order)`; index 0 is always the zero
/// element. Immutable after construction, so shared reads are safe.
#[derive(Debug)]
pub struct FiniteRing {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
    kind: RingKind,
    spec: String,
    /// For corner rings: representative index of each element in the parent.
    reps: Vec<usize>,
}

impl FiniteRing {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// The RingSpec string this ring was built from.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    /// Corner rings only: the parent-ring representative of each element,
    /// in element order. Empty for every other kind.
    pub fn corner_reps(&self) -> &[usize] {
        &self.reps
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// x^k by iterated multiplication, with x^0 = 1.
    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Parse an element literal in this ring's label grammar.
    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<Element, RingError> {
        let index = label::parse(self, text)?;
        Ok(Element {
            ring: Arc::clone(self),
            index,
        })
    }

    pub fn element(self: &Arc<Self>, index: usize) -> Element {
        assert!(index < self.order, "element index out of range");
        Element {
            ring: Arc::clone(self),
            index,
        }
    }
}

/// An element of one specific ring. Binary operations are checked: both
/// operands must belong to the same ring instance.
#[derive(Debug, Clone)]
pub struct Element {
    pub ring: Arc<FiniteRing>,
    pub index: usize,
}

impl Element {
    fn same_ring(&self, other: &Element) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, RingError> {
        self.same_ring(other)?;
        Ok(self.ring.element(self.ring.add(self.index, other.index)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element, RingError> {
        self.same_ring(other)?;
        Ok(self.ring.element(self.ring.mul(self.index, other.index)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element, RingError> {
        self.same_ring(other)?;
        Ok(self.ring.element(self.ring.sub(self.index, other.index)))
    }

    pub fn neg(&self) -> Element {
        self.ring.element(self.ring.neg(self.index))
    }

    pub fn pow(&self, k: i64) -> Result<Element, RingError> {
        if k < 0 {
            return Err(RingError::NegativeExponent(k));
        }
        Ok(self.ring.element(self.ring.pow(self.index, k as u64)))
    }

    pub fn label(&self) -> &str {
        self.ring.label(self.index)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.index == other.index
    }
}
impl Eq for Element {}

fn check_cap(order: u128, cap: usize) -> Result<usize, RingError> {
    if order == 0 {
        return Err(RingError::BadSpec {
            spec: String::new(),
            reason: "ring order must be positive".into(),
        });
    }
    if order > cap as u128 {
        return Err(RingError::CapExceeded { order, cap });
    }
    Ok(order as usize)
}

fn neg_table(order: usize, add: &[u16]) -> Vec<u16> {
    (0..order)
        .map(|x| {
            (0..order)
                .find(|&y| add[x * order + y] == 0)
                .expect("additive inverse exists") as u16
        })
        .collect()
}

/// Z/nZ with canonical labels "0".."n-1".
pub fn build_zmod(n: u64, cap: usize) -> Result<Arc<FiniteRing>, RingError> {
    let order = check_cap(n as u128, cap)?;
    let n = n as usize;
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            add[x * n + y] = ((x + y) % n) as u16;
            mul[x * n + y] = ((x * y) % n) as u16;
        }
    }
    let neg = neg_table(order, &add);
    Ok(Arc::new(FiniteRing {
        order,
        add,
        mul,
        neg,
        zero: 0,
        one: if n == 1 { 0 } else { 1 },
        labels: (0..n).map(|i| i.to_string()).collect(),
        kind: RingKind::ZMod(n as u64),
        spec: format!("zmod:{n}"),
        reps: Vec::new(),
    }))
}

/// Mixed-radix decode: `index` to `digits` digits in base `radix`,
/// most significant first.
pub(crate) fn to_digits(index: usize, radix: usize, digits: usize) -> Vec<usize> {
    let mut out = vec![0; digits];
    let mut rest = index;
    for d in (0..digits).rev() {
        out[d] = rest % radix;
        rest /= radix;
    }
    out
}

pub(crate) fn from_digits(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

/// The full k x k matrix ring over `base`. Elements are encoded as the
/// mixed-radix index of the row-major entry vector.
pub fn build_matrix_ring(
    base: &Arc<FiniteRing>,
    k: usize,
    cap: usize,
) -> Result<Arc<FiniteRing>, RingError> {
    build_matrix_like(base, k, cap, false)
}

/// The ring of upper-triangular k x k matrices over `base`. Only the
/// entries with row <= col are stored, row-major.
pub fn build_upper_triangular(
    base: &Arc<FiniteRing>,
    k: usize,
    cap: usize,
) -> Result<Arc<FiniteRing>, RingError> {
    build_matrix_like(base, k, cap, true)
}

fn build_matrix_like(
    base: &Arc<FiniteRing>,
    k: usize,
    cap: usize,
    triangular: bool,
) -> Result<Arc<FiniteRing>, RingError> {
    assert!(k >= 1, "matrix dimension must be positive");
    let m = base.order();
    let positions: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !triangular || i <= j)
        .collect();
    let d = positions.len();
    let order = check_cap((m as u128).pow(d as u32), cap)?;
    // position -> slot in the entry vector (triangular rings skip i > j)
    let mut slot = vec![usize::MAX; k * k];
    for (s, &(i, j)) in positions.iter().enumerate() {
        slot[i * k + j] = s;
    }
    let entry = |digits: &[usize], i: usize, j: usize| -> usize {
        let s = slot[i * k + j];
        if s == usize::MAX {
            base.zero()
        } else {
            digits[s]
        }
    };
    let all_digits: Vec<Vec<usize>> = (0..order).map(|x| to_digits(x, m, d)).collect();
    let mut add = vec![0u16; order * order];
    let mut mul = vec![0u16; order * order];
    for x in 0..order {
        let dx = &all_digits[x];
        for y in 0..order {
            let dy = &all_digits[y];
            let sum: Vec<usize> = (0..d).map(|s| base.add(dx[s], dy[s])).collect();
            add[x * order + y] = from_digits(&sum, m) as u16;
            let mut prod = vec![0; d];
            for (s, &(i, j)) in positions.iter().enumerate() {
                let mut acc = base.zero();
                for l in 0..k {
                    acc = base.add(acc, base.mul(entry(dx, i, l), entry(dy, l, j)));
                }
                prod[s] = acc;
            }
            mul[x * order + y] = from_digits(&prod, m) as u16;
        }
    }
    let identity: Vec<usize> = positions
        .iter()
        .map(|&(i, j)| if i == j { base.one() } else { base.zero() })
        .collect();
    let one = from_digits(&identity, m);
    let labels = (0..order)
        .map(|x| {
            let dx = &all_digits[x];
            let rows: Vec<String> = (0..k)
                .map(|i| {
                    let cells: Vec<&str> =
                        (0..k).map(|j| base.label(entry(dx, i, j))).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    let neg = neg_table(order, &add);
    let (kind, spec) = if triangular {
        (
            RingKind::Triangular {
                k,
                base: Arc::clone(base),
            },
            format!("tri:{k}:{}", base.spec()),
        )
    } else {
        (
            RingKind::Matrix {
                k,
                base: Arc::clone(base),
            },
            format!("mat:{k}:{}", base.spec()),
        )
    };
    Ok(Arc::new(FiniteRing {
        order,
        add,
        mul,
        neg,
        zero: 0,
        one,
        labels,
        kind,
        spec,
        reps: Vec::new(),
    }))
}

/// Componentwise ring structure on pairs; index = left * right.order + right.
pub fn build_product(
    r1: &Arc<FiniteRing>,
    r2: &Arc<FiniteRing>,
    cap: usize,
) -> Result<Arc<FiniteRing>, RingError> {
    let order = check_cap(r1.order() as u128 * r2.order() as u128, cap)?;
    let n2 = r2.order();
    let mut add = vec![0u16; order * order];
    let mut mul = vec![0u16; order * order];
    for x in 0..order {
        let (x1, x2) = (x / n2, x % n2);
        for y in 0..order {
            let (y1, y2) = (y / n2, y % n2);
            add[x * order + y] = (r1.add(x1, y1) * n2 + r2.add(x2, y2)) as u16;
            mul[x * order + y] = (r1.mul(x1, y1) * n2 + r2.mul(x2, y2)) as u16;
        }
    }
    let one = r1.one() * n2 + r2.one();
    let labels = (0..order)
        .map(|x| format!("({},{})", r1.label(x / n2), r2.label(x % n2)))
        .collect();
    let neg = neg_table(order, &add);
    Ok(Arc::new(FiniteRing {
        order,
        add,
        mul,
        neg,
        zero: 0,
        one,
        labels,
        kind: RingKind::Product {
            left: Arc::clone(r1),
            right: Arc::clone(r2),
        },
        spec: format!("prod:{},{}", r1.spec(), r2.spec()),
        reps: Vec::new(),
    }))
}

/// The corner ring eRe for an idempotent e, with identity e. Elements are
/// stored as a sorted list of parent representatives; `corner_reps` is the
/// injection back into the parent.
pub fn build_corner(r: &Arc<FiniteRing>, e: usize) -> Result<Arc<FiniteRing>, RingError> {
    if r.mul(e, e) != e {
        return Err(RingError::NotIdempotent(r.label(e).to_string()));
    }
    let mut reps: Vec<usize> = r.elements().map(|x| r.mul(r.mul(e, x), e)).collect();
    reps.sort_unstable();
    reps.dedup();
    let order = reps.len();
    let pos = |p: usize| reps.binary_search(&p).expect("corner is closed");
    let mut add = vec![0u16; order * order];
    let mut mul = vec![0u16; order * order];
    for x in 0..order {
        for y in 0..order {
            add[x * order + y] = pos(r.add(reps[x], reps[y])) as u16;
            mul[x * order + y] = pos(r.mul(reps[x], reps[y])) as u16;
        }
    }
    let one = pos(e);
    let zero = pos(r.zero());
    let labels = reps.iter().map(|&p| r.label(p).to_string()).collect();
    let neg = neg_table(order, &add);
    let ring = Arc::new(FiniteRing {
        order,
        add,
        mul,
        neg,
        zero,
        one,
        labels,
        kind: RingKind::Corner {
            parent: Arc::clone(r),
            idempotent: e,
        },
        spec: format!("corner:{}:{}", r.spec(), r.label(e)),
        reps,
    });
    let report = validate_ring(&ring);
    if !report.valid {
        return Err(RingError::InvalidRing(report.describe()));
    }
    Ok(ring)
}

/// Build a ring directly from raw tables. `zero` is fixed as index 0.
/// The caller is responsible for validation; the table-file loader runs
/// `validate_ring` automatically.
pub fn from_raw_tables(
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    one: usize,
    spec: String,
) -> Result<Arc<FiniteRing>, RingError> {
    if order == 0 || add.len() != order * order || mul.len() != order * order {
        return Err(RingError::BadTable {
            path: spec,
            reason: "tables must be order x order".into(),
        });
    }
    if one >= order {
        return Err(RingError::BadTable {
            path: spec,
            reason: format!("one = {one} out of range"),
        });
    }
    for &v in add.iter().chain(mul.iter()) {
        if v as usize >= order {
            return Err(RingError::BadTable {
                path: spec,
                reason: format!("table entry {v} out of range"),
            });
        }
    }
    // neg lookup needs every row of add to reach 0; report via validation
    for x in 0..order {
        if !(0..order).any(|y| add[x * order + y] == 0) {
            return Err(RingError::BadTable {
                path: spec,
                reason: format!("element {x} has no additive inverse"),
            });
        }
    }
    let neg = neg_table(order, &add);
    Ok(Arc::new(FiniteRing {
        order,
        add,
        mul,
        neg,
        zero: 0,
        one,
        labels: (0..order).map(|i| i.to_string()).collect(),
        kind: RingKind::Table,
        spec,
        reps: Vec::new(),
    }))
}

#[cfg(test)]
mod tests;
