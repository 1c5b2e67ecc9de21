use std::collections::HashMap;
use std::sync::Arc;

use super::matrix::SparseMatrix;
use crate::coeff::Ring;
use crate::diagram::{Gen, TangleWord};
use crate::error::{Error, Result};

/// States wider than this many components are accumulated sparsely.
pub const DENSE_LIMIT: usize = 1 << 14;

/// One generator applied in place: `I_left ⊗ matrix ⊗ I_right`.
#[derive(Clone, Debug)]
pub struct Step<R: Ring> {
    pub left: usize,
    pub right: usize,
    pub matrix: Arc<SparseMatrix<R>>,
}

/// Push every domain basis vector through `steps`. The result has one column
/// per domain basis vector.
pub fn propagate<R: Ring>(domain_dim: usize, steps: &[Step<R>], ctx: &R::Ctx) -> SparseMatrix<R> {
    let mut dim = domain_dim;
    let mut state: Vec<(usize, R)> = (0..domain_dim).map(|b| (b * domain_dim + b, R::one(ctx))).collect();
    for step in steps {
        let m = &step.matrix;
        let (ins, outs) = (m.cols(), m.rows());
        debug_assert_eq!(step.left * ins * step.right, dim);
        let mut columns: Vec<Vec<(usize, &R)>> = vec![Vec::new(); ins];
        for (r, c, v) in m.entries() {
            columns[c].push((r, v));
        }
        let new_dim = step.left * outs * step.right;
        let total = domain_dim * new_dim;
        let right = step.right;
        let emit = |acc: &mut dyn FnMut(usize, R)| {
            for (g, v) in &state {
                let (b, idx) = (g / dim, g % dim);
                let r = idx % right;
                let x = (idx / right) % ins;
                let l = idx / (right * ins);
                for &(y, coeff) in &columns[x] {
                    let out = b * new_dim + (l * outs + y) * right + r;
                    acc(out, v.mul(coeff));
                }
            }
        };
        let next: Vec<(usize, R)> = if total <= DENSE_LIMIT {
            let mut dense: Vec<Option<R>> = vec![None; total];
            emit(&mut |i, v| match &mut dense[i] {
                Some(old) => old.add_assign(&v),
                slot => *slot = Some(v),
            });
            dense
                .into_iter()
                .enumerate()
                .filter_map(|(i, v)| v.filter(|x| !x.is_zero()).map(|x| (i, x)))
                .collect()
        } else {
            let mut sparse: HashMap<usize, R> = HashMap::new();
            emit(&mut |i, v| match sparse.get_mut(&i) {
                Some(old) => old.add_assign(&v),
                None => {
                    sparse.insert(i, v);
                }
            });
            let mut out: Vec<(usize, R)> = sparse.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            out.sort_unstable_by_key(|(i, _)| *i);
            out
        };
        state = next;
        dim = new_dim;
    }
    SparseMatrix::from_entries(
        dim,
        domain_dim,
        ctx,
        state.into_iter().map(|(g, v)| (g % dim, g / dim, v)),
    )
}

/// Matrices for unlabeled generators, every strand carrying the same space.
pub trait GeneratorTable<R: Ring> {
    fn ctx(&self) -> R::Ctx;
    fn strand_dim(&self) -> usize;
    fn generator(&self, g: &Gen) -> Result<Arc<SparseMatrix<R>>>;
}

/// A table given by explicit matrices.
#[derive(Clone, Debug)]
pub struct MatrixTable<R: Ring> {
    ctx: R::Ctx,
    dim: usize,
    map: HashMap<Gen, Arc<SparseMatrix<R>>>,
}

impl<R: Ring> MatrixTable<R> {
    pub fn new(dim: usize, ctx: &R::Ctx) -> Self {
        let mut map = HashMap::new();
        map.insert(Gen::Id, Arc::new(SparseMatrix::identity(dim, ctx)));
        MatrixTable {
            ctx: ctx.clone(),
            dim,
            map,
        }
    }

    /// Install the matrix for `g`, checking its shape against the arity.
    pub fn set(&mut self, g: Gen, m: SparseMatrix<R>) -> Result<()> {
        let (i, o) = g.arity();
        let want = (self.dim.pow(o as u32), self.dim.pow(i as u32));
        if (m.rows(), m.cols()) != want {
            return Err(Error::invalid(format!(
                "matrix for {} must be {}x{}, got {}x{}",
                g,
                want.0,
                want.1,
                m.rows(),
                m.cols()
            )));
        }
        self.map.insert(g, Arc::new(m));
        Ok(())
    }

    pub fn with(mut self, g: Gen, m: SparseMatrix<R>) -> Result<Self> {
        self.set(g, m)?;
        Ok(self)
    }
}

impl<R: Ring> GeneratorTable<R> for MatrixTable<R> {
    fn ctx(&self) -> R::Ctx {
        self.ctx.clone()
    }
    fn strand_dim(&self) -> usize {
        self.dim
    }
    fn generator(&self, g: &Gen) -> Result<Arc<SparseMatrix<R>>> {
        self.map
            .get(g)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("no matrix for generator {}", g)))
    }
}

/// Evaluate a tangle word: the product over slices (bottom first) of the
/// Kronecker products of generator matrices.
pub fn eval_word<R: Ring, T: GeneratorTable<R> + ?Sized>(
    word: &TangleWord,
    table: &T,
) -> Result<SparseMatrix<R>> {
    word.validate()?;
    let d = table.strand_dim();
    let mut width = word.domain();
    let mut steps = Vec::new();
    for (k, slice) in word.slices().iter().enumerate() {
        let ins: usize = slice.iter().map(|g| g.arity().0).sum();
        if ins != width {
            return Err(Error::invalid(format!(
                "slice {} expects {} strands, found {}",
                k + 1,
                ins,
                width
            )));
        }
        let mut done = 0;
        let mut pending = width;
        for g in slice {
            let (i, o) = g.arity();
            pending -= i;
            if *g != Gen::Id {
                steps.push(Step {
                    left: d.pow(done as u32),
                    right: d.pow(pending as u32),
                    matrix: table.generator(g)?,
                });
            }
            done += o;
        }
        width = done;
    }
    Ok(propagate(d.pow(word.domain() as u32), &steps, &table.ctx()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Laurent, Var};
    use crate::functor::kauffman_table;

    #[test]
    fn loop_and_identities() {
        let t = kauffman_table();
        let w = TangleWord::parse("cup\ncap").unwrap();
        let v = eval_word(&w, &t).unwrap().as_scalar().unwrap();
        assert_eq!(v.canonical_string(), "-A^2 - A^-2");
        let e = eval_word(&TangleWord::empty(), &t).unwrap();
        assert!(e.as_scalar().unwrap().is_one());
        let id = eval_word(&TangleWord::parse("id, id").unwrap(), &t).unwrap();
        assert!(id.is_identity() && id.rows() == 4);
    }

    #[test]
    fn arity_error_names_slice() {
        let t = kauffman_table();
        let w = TangleWord::parse("over").unwrap();
        assert_eq!(eval_word(&w, &t).unwrap().rows(), 4);
        let bad = TangleWord::parse("cup\nover, id");
        assert!(bad.is_err());
    }

    #[test]
    fn sparse_path_matches_dense() {
        // eight nested cups give a width-16 boundary: 2^16 components
        let t = kauffman_table();
        let mut text = String::new();
        for k in 0..8 {
            text.push_str(&"id, ".repeat(k));
            text.push_str("cup");
            text.push_str(&", id".repeat(k));
            text.push('\n');
        }
        for k in (0..8).rev() {
            text.push_str(&"id, ".repeat(k));
            text.push_str("cap");
            text.push_str(&", id".repeat(k));
            text.push('\n');
        }
        let w = TangleWord::parse(&text).unwrap();
        let v = eval_word(&w, &t).unwrap().as_scalar().unwrap();
        let delta = -Laurent::var_pow(Var::A, 2) - Laurent::var_pow(Var::A, -2);
        assert_eq!(v, delta.pow(8));
    }
}
