use std::collections::BTreeMap;

use serde_json::Value;

use crate::coeff::{Laurent, Ring};
use crate::error::{Error, Result};

/// A sparse matrix over a [`Ring`]. Entries are kept sorted by `(row, col)`
/// with no stored zeros, so equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Ctx,
    entries: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn zero(rows: usize, cols: usize, ctx: &R::Ctx) -> Self {
        SparseMatrix {
            rows,
            cols,
            ctx: ctx.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, ctx: &R::Ctx) -> Self {
        let mut m = Self::zero(n, n, ctx);
        for i in 0..n {
            m.entries.insert((i, i), R::one(ctx));
        }
        m
    }

    pub fn scalar(x: R) -> Self {
        let mut m = Self::zero(1, 1, &x.ctx());
        m.set(0, 0, x);
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        ctx: &R::Ctx,
        entries: impl IntoIterator<Item = (usize, usize, R)>,
    ) -> Self {
        let mut m = Self::zero(rows, cols, ctx);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    /// Build from a dense row-major table.
    pub fn from_rows(rows: Vec<Vec<R>>, ctx: &R::Ctx) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(i, r)| r.into_iter().enumerate().map(move |(j, v)| (i, j, v)));
        Self::from_entries(nr, nc, ctx, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> R {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &R) {
        if v.is_zero() {
            return;
        }
        let sum = match self.entries.get(&(r, c)) {
            Some(old) => old.add(v),
            None => v.clone(),
        };
        self.set(r, c, sum);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &R)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols, &self.ctx);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out.add_to(r, c, &a.mul(b));
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` is the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols, &self.ctx);
        for (&(r1, c1), a) in &self.entries {
            for (&(r2, c2), b) in &other.entries {
                out.set(r1 * other.rows + r2, c1 * other.cols + c2, a.mul(b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows, &self.ctx);
        for (&(r, c), v) in &self.entries {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero(self.rows, self.cols, &self.ctx);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v.mul(k));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::invalid("matrix shapes differ"));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&R::from_int(&self.ctx, -1)))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.entries.iter().all(|(&(r, c), v)| r == c && v.is_one())
    }

    pub fn trace(&self) -> R {
        let mut acc = R::zero(&self.ctx);
        for (&(r, c), v) in &self.entries {
            if r == c {
                acc.add_assign(v);
            }
        }
        acc
    }

    /// The single entry of a 1×1 matrix.
    pub fn as_scalar(&self) -> Option<R> {
        if self.rows == 1 && self.cols == 1 {
            Some(self.get(0, 0))
        } else {
            None
        }
    }

    /// Apply `f` to every entry (zeros are dropped afterwards).
    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> SparseMatrix<S> {
        SparseMatrix::from_entries(
            self.rows,
            self.cols,
            ctx,
            self.entries.iter().map(|(&(r, c), v)| (r, c, f(v))),
        )
    }

    /// `{rows, cols, entries: [[r, c, "value"], ...]}` with values rendered by `render`.
    pub fn to_json_with(&self, render: impl Fn(&R) -> Value) -> Value {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self
                .entries
                .iter()
                .map(|(&(r, c), v)| serde_json::json!([r, c, render(v)]))
                .collect::<Vec<_>>(),
        })
    }
}

impl SparseMatrix<Laurent> {
    pub fn to_json(&self) -> Value {
        self.to_json_with(|v| Value::String(v.canonical_string()))
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value["rows"]
            .as_u64()
            .ok_or_else(|| Error::parse(0, "matrix JSON needs 'rows'"))? as usize;
        let cols = value["cols"]
            .as_u64()
            .ok_or_else(|| Error::parse(0, "matrix JSON needs 'cols'"))? as usize;
        let list = value["entries"]
            .as_array()
            .ok_or_else(|| Error::parse(0, "matrix JSON needs 'entries'"))?;
        let mut var = None;
        let mut parsed = Vec::new();
        for e in list {
            let (r, c, v) = match e.as_array().map(|a| a.as_slice()) {
                Some([r, c, v]) => (r, c, v),
                _ => return Err(Error::parse(0, "entries must be [row, col, value]")),
            };
            let r = r.as_u64().ok_or_else(|| Error::parse(0, "bad row index"))? as usize;
            let c = c.as_u64().ok_or_else(|| Error::parse(0, "bad column index"))? as usize;
            if r >= rows || c >= cols {
                return Err(Error::invalid(format!("entry ({}, {}) out of range", r, c)));
            }
            let p = Laurent::parse(v.as_str().ok_or_else(|| Error::parse(0, "values must be strings"))?)?;
            var.get_or_insert(p.var());
            parsed.push((r, c, p));
        }
        let var = var.unwrap_or(crate::coeff::Var::A);
        Ok(SparseMatrix::from_entries(
            rows,
            cols,
            &var,
            parsed.into_iter().map(|(r, c, p)| (r, c, p.with_var(var))),
        ))
    }
}
