//! Element literal parsing. The grammar per ring kind is exactly the
//! grammar of the labels `format_element` produces, so parse(format(x)) = x.

use super::{FiniteRing, RingError, RingKind};
use std::sync::Arc;

fn bad(ring: &FiniteRing, literal: &str, reason: impl Into<String>) -> RingError {
    RingError::BadLiteral {
        literal: literal.to_string(),
        ring: ring.spec().to_string(),
        reason: reason.into(),
    }
}

/// Split `text` at commas that sit at bracket/paren depth 0.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Strip one matching outer delimiter pair, requiring it to enclose the
/// whole string (not just the first and last character by accident).
fn strip_delims<'a>(text: &'a str, open: char, close: char) -> Option<&'a str> {
    let t = text.trim();
    if !t.starts_with(open) || !t.ends_with(close) {
        return None;
    }
    let inner = &t[open.len_utf8()..t.len() - close.len_utf8()];
    // reject e.g. "[..],[..]" where the outer brackets do not match
    let mut depth = 0i32;
    for c in inner.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    (depth == 0).then_some(inner)
}

pub(super) fn parse(ring: &Arc<FiniteRing>, text: &str) -> Result<usize, RingError> {
    let t = text.trim();
    match ring.kind() {
        RingKind::ZMod(n) => {
            let v: u64 = t
                .parse()
                .map_err(|_| bad(ring, text, "expected an integer"))?;
            if v >= *n {
                return Err(bad(ring, text, format!("literal out of range [0, {n})")));
            }
            Ok(v as usize)
        }
        RingKind::Table => {
            let v: usize = t
                .parse()
                .map_err(|_| bad(ring, text, "expected an element index"))?;
            if v >= ring.order() {
                return Err(bad(ring, text, "element index out of range"));
            }
            Ok(v)
        }
        RingKind::Matrix { k, base } | RingKind::Triangular { k, base } => {
            let triangular = matches!(ring.kind(), RingKind::Triangular { .. });
            let inner = strip_delims(t, '[', ']')
                .ok_or_else(|| bad(ring, text, "expected [[..],..]"))?;
            let rows = split_top_level(inner);
            if rows.len() != *k {
                return Err(bad(ring, text, format!("expected {k} rows")));
            }
            let mut digits = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let row_inner = strip_delims(row, '[', ']')
                    .ok_or_else(|| bad(ring, text, "expected a bracketed row"))?;
                let cells = split_top_level(row_inner);
                if cells.len() != *k {
                    return Err(bad(ring, text, format!("expected {k} columns")));
                }
                for (j, cell) in cells.iter().enumerate() {
                    let e = parse(base, cell)?;
                    if triangular && i > j {
                        if e != base.zero() {
                            return Err(bad(
                                ring,
                                text,
                                "entries below the diagonal must be zero",
                            ));
                        }
                    } else {
                        digits.push(e);
                    }
                }
            }
            Ok(super::from_digits(&digits, base.order()))
        }
        RingKind::Product { left, right } => {
            let inner = strip_delims(t, '(', ')')
                .ok_or_else(|| bad(ring, text, "expected (left,right)"))?;
            let parts = split_top_level(inner);
            if parts.len() != 2 {
                return Err(bad(ring, text, "expected exactly two components"));
            }
            let l = parse(left, parts[0])?;
            let r = parse(right, parts[1])?;
            Ok(l * right.order() + r)
        }
        RingKind::Corner { parent, .. } => {
            let p = parse(parent, t)?;
            ring.corner_reps()
                .binary_search(&p)
                .map_err(|_| bad(ring, text, "not an element of the corner ring"))
        }
    }
}
