//! Table-file rings: a TOML document with fields `order`, `add`, `mul`
//! (each order^2 integers, row-major) and `one`. Zero is fixed as index 0.
//! User tables are untrusted, so the full axiom check runs on load.

use super::{validate_ring, FiniteRing, RingError};
use serde::Deserialize;
use std::path::Path;
use std::sync::Arc;

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    one: usize,
}

pub(super) fn load_table_ring(path: &Path, cap: usize) -> Result<Arc<FiniteRing>, RingError> {
    let bad = |reason: String| RingError::BadTable {
        path: path.display().to_string(),
        reason,
    };
    let text = std::fs::read_to_string(path)?;
    let file: TableFile = toml::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if file.order > cap {
        return Err(RingError::CapExceeded {
            order: file.order as u128,
            cap,
        });
    }
    let ring = super::from_raw_tables(
        file.order,
        file.add,
        file.mul,
        file.one,
        format!("table:{}", path.display()),
    )?;
    let report = validate_ring(&ring);
    if !report.valid {
        return Err(RingError::InvalidRing(report.describe()));
    }
    Ok(ring)
}
