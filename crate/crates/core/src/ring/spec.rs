//! RingSpec: the constructor-expression grammar for rings.
//!
//! Grammar: `zmod:<n>`, `mat:<k>:<spec>`, `tri:<k>:<spec>`,
//! `prod:<spec>,<spec>`, `corner:<spec>:<element-literal>`, `table:<path>`.

use super::{FiniteRing, RingError};
use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    ZMod(u64),
    Mat(usize, Box<RingSpec>),
    Tri(usize, Box<RingSpec>),
    Prod(Box<RingSpec>, Box<RingSpec>),
    Corner(Box<RingSpec>, String),
    Table(PathBuf),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZMod(n) => write!(f, "zmod:{n}"),
            RingSpec::Mat(k, b) => write!(f, "mat:{k}:{b}"),
            RingSpec::Tri(k, b) => write!(f, "tri:{k}:{b}"),
            RingSpec::Prod(a, b) => write!(f, "prod:{a},{b}"),
            RingSpec::Corner(b, e) => write!(f, "corner:{b}:{e}"),
            RingSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

struct Cursor<'a> {
    full: &'a str,
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, reason: impl Into<String>) -> RingError {
        RingError::BadSpec {
            spec: self.full.to_string(),
            reason: reason.into(),
        }
    }

    fn expect_colon(&mut self) -> Result<(), RingError> {
        if let Some(r) = self.rest.strip_prefix(':') {
            self.rest = r;
            Ok(())
        } else {
            Err(self.err("expected ':'"))
        }
    }

    /// Consume up to (not including) the next top-level comma or the end.
    fn take_until_top_comma(&mut self) -> &'a str {
        let mut depth = 0i32;
        for (i, c) in self.rest.char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                ',' if depth == 0 => {
                    let out = &self.rest[..i];
                    self.rest = &self.rest[i..];
                    return out;
                }
                _ => {}
            }
        }
        std::mem::take(&mut self.rest)
    }

    fn take_integer(&mut self) -> Result<u64, RingError> {
        let end = self
            .rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(self.rest.len());
        if end == 0 {
            return Err(self.err("expected an integer"));
        }
        let v = self.rest[..end]
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.rest = &self.rest[end..];
        Ok(v)
    }

    fn parse_spec(&mut self) -> Result<RingSpec, RingError> {
        let head_end = self.rest.find(':').ok_or_else(|| {
            self.err("expected one of zmod | mat | tri | prod | corner | table")
        })?;
        let head = &self.rest[..head_end];
        self.rest = &self.rest[head_end + 1..];
        match head {
            "zmod" => Ok(RingSpec::ZMod(self.take_integer()?)),
            "mat" | "tri" => {
                let k = self.take_integer()? as usize;
                if k == 0 {
                    return Err(self.err("matrix dimension must be positive"));
                }
                self.expect_colon()?;
                let base = Box::new(self.parse_spec()?);
                Ok(if head == "mat" {
                    RingSpec::Mat(k, base)
                } else {
                    RingSpec::Tri(k, base)
                })
            }
            "prod" => {
                let left = Box::new(self.parse_spec()?);
                if let Some(r) = self.rest.strip_prefix(',') {
                    self.rest = r;
                } else {
                    return Err(self.err("expected ',' between product components"));
                }
                let right = Box::new(self.parse_spec()?);
                Ok(RingSpec::Prod(left, right))
            }
            "corner" => {
                let base = Box::new(self.parse_spec()?);
                self.expect_colon()?;
                let lit = self.take_until_top_comma().trim().to_string();
                if lit.is_empty() {
                    return Err(self.err("expected an idempotent element literal"));
                }
                Ok(RingSpec::Corner(base, lit))
            }
            "table" => {
                let path = self.take_until_top_comma().trim().to_string();
                if path.is_empty() {
                    return Err(self.err("expected a table file path"));
                }
                Ok(RingSpec::Table(PathBuf::from(path)))
            }
            other => Err(self.err(format!("unknown constructor {other:?}"))),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cursor = Cursor {
            full: s,
            rest: s.trim(),
        };
        let spec = cursor.parse_spec()?;
        if !cursor.rest.is_empty() {
            return Err(cursor.err(format!("trailing input {:?}", cursor.rest)));
        }
        Ok(spec)
    }
}

impl RingSpec {
    /// Build the ring this spec describes, enforcing the order cap.
    pub fn build(&self, cap: usize) -> Result<Arc<FiniteRing>, RingError> {
        match self {
            RingSpec::ZMod(n) => super::build_zmod(*n, cap),
            RingSpec::Mat(k, base) => super::build_matrix_ring(&base.build(cap)?, *k, cap),
            RingSpec::Tri(k, base) => super::build_upper_triangular(&base.build(cap)?, *k, cap),
            RingSpec::Prod(a, b) => super::build_product(&a.build(cap)?, &b.build(cap)?, cap),
            RingSpec::Corner(base, lit) => {
                let parent = base.build(cap)?;
                let e = parent.parse_element(lit)?;
                super::build_corner(&parent, e.index)
            }
            RingSpec::Table(path) => super::table::load_table_ring(path, cap),
        }
    }
}
