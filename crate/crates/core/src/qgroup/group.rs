use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coeff::{Cyclotomic, CyclotomicField, Laurent, Ring, Var};
use crate::diagram::{morse_slicing, LinkDiagram};
use crate::error::{Error, Result};
use crate::functor::{eval_labeled, LabeledTable, LabeledTangle, SparseMatrix, StrandType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    R,
    RInv,
    Over,
    Under,
    Cup,
    Cap,
}

/// The represented quantum group `U_s(sl2)` over a ring containing an
/// invertible `s`. All algebra elements act only through matrices on the
/// modules `V_n` (dimension `n`, basis `v_1..v_n`) and their duals.
pub struct QGroup<R: Ring> {
    ctx: R::Ctx,
    s: R,
    s_inv: R,
    powers: Mutex<HashMap<i64, R>>,
    cache: Mutex<HashMap<(Kind, StrandType, StrandType), Arc<SparseMatrix<R>>>>,
}

impl<R: Ring> std::fmt::Debug for QGroup<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QGroup").field("s", &self.s).finish()
    }
}

impl QGroup<Laurent> {
    /// Generic `s`: coefficients are Laurent polynomials in `s`.
    pub fn generic() -> Self {
        Self::new(Laurent::var_pow(Var::S, 1), Laurent::var_pow(Var::S, -1)).expect("s is a unit")
    }
}

impl QGroup<Cyclotomic> {
    /// `s = ζ^exponent` with `ζ` a primitive `order`-th root of unity.
    pub fn at_root(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 || num_integer::gcd(exponent.rem_euclid(order as i64) as u64, order) != 1 {
            return Err(Error::invalid(format!(
                "exponent {} does not give a primitive {}-th root of unity",
                exponent, order
            )));
        }
        let field = CyclotomicField::new(order);
        Self::new(
            Cyclotomic::zeta_pow(&field, exponent),
            Cyclotomic::zeta_pow(&field, -exponent),
        )
    }
}

impl<R: Ring> QGroup<R> {
    pub fn new(s: R, s_inv: R) -> Result<Self> {
        if !s.mul(&s_inv).is_one() {
            return Err(Error::invalid("s_inv must be the inverse of s"));
        }
        Ok(QGroup {
            ctx: s.ctx(),
            s,
            s_inv,
            powers: Mutex::new(HashMap::new()),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn s(&self) -> &R {
        &self.s
    }

    pub fn zero(&self) -> R {
        R::zero(&self.ctx)
    }

    pub fn one(&self) -> R {
        R::one(&self.ctx)
    }

    pub fn int(&self, n: i64) -> R {
        R::from_int(&self.ctx, n)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(&self, k: i64) -> R {
        if let Some(v) = self.powers.lock().unwrap().get(&k) {
            return v.clone();
        }
        let base = if k >= 0 { &self.s } else { &self.s_inv };
        let v = base.pow(k.unsigned_abs());
        self.powers.lock().unwrap().insert(k, v.clone());
        v
    }

    /// `[n] = s^{2(n-1)} + s^{2(n-3)} + ... + s^{-2(n-1)}`, with `[-n] = -[n]`.
    pub fn qint(&self, n: i64) -> R {
        let m = n.abs();
        let mut acc = self.zero();
        for j in 0..m {
            acc.add_assign(&self.s_pow(2 * (m - 1 - 2 * j)));
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    /// `[n]!`.
    pub fn qfactorial(&self, n: usize) -> R {
        (1..=n as i64).fold(self.one(), |acc, k| acc.mul(&self.qint(k)))
    }

    /// Gaussian binomial `[m choose k]`, built by the recursion
    /// `[m;k] = s^{-2k}[m-1;k] + s^{2(m-k)}[m-1;k-1]`.
    pub fn qbinom(&self, m: usize, k: usize) -> R {
        if k > m {
            return self.zero();
        }
        let mut row = vec![self.one()];
        for mm in 1..=m {
            let mut next = Vec::with_capacity(mm + 1);
            for kk in 0..=mm.min(k) {
                let a = if kk < row.len() && kk < mm {
                    row[kk].mul(&self.s_pow(-2 * kk as i64))
                } else {
                    self.zero()
                };
                let b = if kk >= 1 {
                    row[kk - 1].mul(&self.s_pow(2 * (mm - kk) as i64))
                } else {
                    self.zero()
                };
                next.push(a.add(&b));
            }
            row = next;
        }
        row[k].clone()
    }

    /// The twist `θ_n = s^{n²-1}`: a +1 framing change on a `V_n` component.
    pub fn twist(&self, n: usize) -> R {
        self.s_pow((n * n) as i64 - 1)
    }

    /// `h`-eigenvalues on the basis of `V_n` (or its dual when `t.up` is false).
    pub fn weights(&self, t: StrandType) -> Vec<i64> {
        let n = t.label as i64;
        (1..=n)
            .map(|i| {
                let w = n - 2 * i + 1;
                if t.up {
                    w
                } else {
                    -w
                }
            })
            .collect()
    }

    /// The action of `h` on `V_n`.
    pub fn rep_h(&self, n: usize) -> SparseMatrix<R> {
        let w = self.weights(StrandType::up(n));
        SparseMatrix::from_entries(n, n, &self.ctx, w.iter().enumerate().map(|(i, &e)| (i, i, self.int(e))))
    }

    /// `x v_i = [i-1] v_{i-1}`.
    pub fn rep_x(&self, n: usize) -> SparseMatrix<R> {
        SparseMatrix::from_entries(n, n, &self.ctx, (1..n).map(|i| (i - 1, i, self.qint(i as i64))))
    }

    /// `y v_i = [n-i] v_{i+1}`.
    pub fn rep_y(&self, n: usize) -> SparseMatrix<R> {
        SparseMatrix::from_entries(
            n,
            n,
            &self.ctx,
            (0..n.saturating_sub(1)).map(|i| (i + 1, i, self.qint((n - 1 - i) as i64))),
        )
    }

    /// The diagonal operator `s^{k·h}`.
    pub fn s_to_h(&self, t: StrandType, k: i64) -> SparseMatrix<R> {
        let w = self.weights(t);
        let n = w.len();
        SparseMatrix::from_entries(n, n, &self.ctx, w.iter().enumerate().map(|(i, &e)| (i, i, self.s_pow(k * e))))
    }

    /// `x^k / [k]!` on `V_n` or its dual. On `V_n` it sends `v_i` to
    /// `[i-1 choose k] v_{i-k}`; on the dual it acts by the transpose of the
    /// antipode image, `S(x) = -s^2 x`.
    pub fn divided_x(&self, t: StrandType, k: usize) -> SparseMatrix<R> {
        let n = t.label;
        let m = SparseMatrix::from_entries(n, n, &self.ctx, (k..n).map(|i| (i - k, i, self.qbinom(i, k))));
        if t.up {
            m
        } else {
            let f = self.s_pow(2 * k as i64);
            let f = if k % 2 == 1 { f.neg() } else { f };
            m.transpose().scale(&f)
        }
    }

    /// `y^k` on `V_n` or its dual, where `S(y) = -s^{-2} y`.
    pub fn y_power(&self, t: StrandType, k: usize) -> SparseMatrix<R> {
        let n = t.label;
        let entries = (0..n.saturating_sub(k)).map(|i| {
            let c = (0..k).fold(self.one(), |acc, j| acc.mul(&self.qint((n - 1 - i - j) as i64)));
            (i + k, i, c)
        });
        let m = SparseMatrix::from_entries(n, n, &self.ctx, entries);
        if t.up {
            m
        } else {
            let f = self.s_pow(-2 * k as i64);
            let f = if k % 2 == 1 { f.neg() } else { f };
            m.transpose().scale(&f)
        }
    }

    fn cached(
        &self,
        key: (Kind, StrandType, StrandType),
        build: impl FnOnce() -> SparseMatrix<R>,
    ) -> Arc<SparseMatrix<R>> {
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = Arc::new(build());
        self.cache.lock().unwrap().insert(key, m.clone());
        m
    }

    fn check(&self, t: StrandType) -> Result<()> {
        if t.label == 0 {
            Err(Error::invalid("label 0 is not a representation"))
        } else {
            Ok(())
        }
    }

    fn hh(&self, a: StrandType, b: StrandType, sign: i64) -> SparseMatrix<R> {
        let (wa, wb) = (self.weights(a), self.weights(b));
        let nb = wb.len();
        let entries = wa.iter().enumerate().flat_map(|(i, &x)| {
            wb.iter()
                .enumerate()
                .map(move |(j, &y)| (i * nb + j, i * nb + j, sign * x * y))
        });
        let entries: Vec<_> = entries.map(|(r, c, e)| (r, c, self.s_pow(e))).collect();
        SparseMatrix::from_entries(wa.len() * nb, wa.len() * nb, &self.ctx, entries)
    }

    /// The nilpotent part `M` of `R = (1 + M) s^{h⊗h}`:
    /// `M = Σ_{k≥1} s^{k-k²} (1-s^{-4})^k (x^k/[k]!) s^{-kh} ⊗ y^k s^{kh}`.
    fn r_nilpotent(&self, a: StrandType, b: StrandType) -> SparseMatrix<R> {
        let dim = a.label * b.label;
        let mut m = SparseMatrix::zero(dim, dim, &self.ctx);
        let base = self.one().sub(&self.s_pow(-4));
        for k in 1..a.label.min(b.label) {
            let ki = k as i64;
            let c = self.s_pow(ki - ki * ki).mul(&base.pow(k as u64));
            let left = self.divided_x(a, k).mul(&self.s_to_h(a, -ki)).expect("same shape");
            let right = self.y_power(b, k).mul(&self.s_to_h(b, ki)).expect("same shape");
            m = m.add(&left.kron(&right).scale(&c)).expect("same shape");
        }
        m
    }

    /// The R-matrix acting on `V_a ⊗ V_b` (either factor possibly dual).
    pub fn r_matrix(&self, a: StrandType, b: StrandType) -> Result<Arc<SparseMatrix<R>>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cached((Kind::R, a, b), || {
            let dim = a.label * b.label;
            SparseMatrix::identity(dim, &self.ctx)
                .add(&self.r_nilpotent(a, b))
                .expect("same shape")
                .mul(&self.hh(a, b, 1))
                .expect("same shape")
        }))
    }

    /// `R^{-1} = s^{-h⊗h} Σ_j (-M)^j`.
    pub fn r_inverse(&self, a: StrandType, b: StrandType) -> Result<Arc<SparseMatrix<R>>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cached((Kind::RInv, a, b), || {
            let dim = a.label * b.label;
            let neg_m = self.r_nilpotent(a, b).scale(&self.int(-1));
            let mut sum = SparseMatrix::identity(dim, &self.ctx);
            let mut term = SparseMatrix::identity(dim, &self.ctx);
            loop {
                term = term.mul(&neg_m).expect("same shape");
                if term.nnz() == 0 {
                    break;
                }
                sum = sum.add(&term).expect("same shape");
            }
            self.hh(a, b, -1).mul(&sum).expect("same shape")
        }))
    }

    /// The flip `V_a ⊗ V_b → V_b ⊗ V_a`.
    pub fn flip(&self, na: usize, nb: usize) -> SparseMatrix<R> {
        SparseMatrix::from_entries(
            na * nb,
            na * nb,
            &self.ctx,
            (0..na).flat_map(|i| (0..nb).map(move |j| (j * na + i, i * nb + j))).map(|(r, c)| (r, c, self.one())),
        )
    }

    /// The represented coproduct `Δ(g)` on `V_a ⊗ V_b` for `g` one of `h`,
    /// `x`, `y` (given by name).
    pub fn coproduct(&self, g: char, a: usize, b: usize) -> Result<SparseMatrix<R>> {
        let (ia, ib) = (SparseMatrix::identity(a, &self.ctx), SparseMatrix::identity(b, &self.ctx));
        let (ua, ub) = (StrandType::up(a), StrandType::up(b));
        Ok(match g {
            'h' => self.rep_h(a).kron(&ib).add(&ia.kron(&self.rep_h(b)))?,
            'x' => self
                .rep_x(a)
                .kron(&self.s_to_h(ub, 1))
                .add(&self.s_to_h(ua, -1).kron(&self.rep_x(b)))?,
            'y' => self
                .rep_y(a)
                .kron(&self.s_to_h(ub, 1))
                .add(&self.s_to_h(ua, -1).kron(&self.rep_y(b)))?,
            _ => return Err(Error::invalid(format!("unknown generator '{}'", g))),
        })
    }

    /// `qtr(f) = tr(G f)` on `V_n`, with `G = s^{2h}`.
    pub fn qtr(&self, f: &SparseMatrix<R>, n: usize) -> Result<R> {
        if f.rows() != n || f.cols() != n {
            return Err(Error::invalid(format!(
                "quantum trace on V{} needs a {}x{} matrix, got {}x{}",
                n,
                n,
                n,
                f.rows(),
                f.cols()
            )));
        }
        Ok(self.s_to_h(StrandType::up(n), 2).mul(f)?.trace())
    }

    pub fn qdim(&self, n: usize) -> R {
        self.qint(n as i64)
    }

    /// The colored invariant of a framed link: component `k` carries `V_{labels[k]}`
    /// and has framing `framings[k]`.
    pub fn colored_invariant(&self, d: &LinkDiagram, labels: &[usize], framings: &[i64]) -> Result<R> {
        let c = d.component_count();
        if labels.len() != c || framings.len() != c {
            return Err(Error::invalid(format!(
                "{} components need {} labels and framings, got {} and {}",
                c,
                c,
                labels.len(),
                framings.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&n| n == 0) {
            return Err(Error::invalid(format!("label {} is not a representation", bad)));
        }
        let slicing = morse_slicing(d)?;
        let lt = LabeledTangle::<R>::from_slicing(&slicing, labels)?;
        let mut v = eval_labeled(&lt, self)?
            .as_scalar()
            .ok_or_else(|| Error::invalid("a closed diagram must evaluate to a scalar"))?;
        for k in 0..c {
            let offset = framings[k] - d.self_writhe(k)?;
            let n = labels[k] as i64;
            v = v.mul(&self.s_pow((n * n - 1) * offset));
        }
        Ok(v)
    }
}

impl<R: Ring> LabeledTable<R> for QGroup<R> {
    fn ctx(&self) -> R::Ctx {
        self.ctx.clone()
    }

    /// `σ ∘ R`.
    fn over(&self, a: StrandType, b: StrandType) -> Result<Arc<SparseMatrix<R>>> {
        let r = self.r_matrix(a, b)?;
        Ok(self.cached((Kind::Over, a, b), || {
            self.flip(a.label, b.label).mul(&r).expect("same shape")
        }))
    }

    /// `R^{-1} ∘ σ`, the inverse of the crossing with the strands exchanged.
    fn under(&self, a: StrandType, b: StrandType) -> Result<Arc<SparseMatrix<R>>> {
        let r = self.r_inverse(b, a)?;
        Ok(self.cached((Kind::Under, a, b), || {
            r.mul(&self.flip(a.label, b.label)).expect("same shape")
        }))
    }

    /// Upward left end: `Σ v_i ⊗ v_i*`. Downward: `Σ v_i* ⊗ s^{-2h} v_i`.
    fn cup(&self, left: StrandType) -> Result<Arc<SparseMatrix<R>>> {
        self.check(left)?;
        Ok(self.cached((Kind::Cup, left, left), || {
            let n = left.label;
            let w = self.weights(StrandType::up(n));
            let entries = (0..n).map(|i| {
                let v = if left.up { self.one() } else { self.s_pow(-2 * w[i]) };
                (i * n + i, 0, v)
            });
            SparseMatrix::from_entries(n * n, 1, &self.ctx, entries)
        }))
    }

    /// Downward left end: `v_i* ⊗ v_j ↦ δ_ij`. Upward: `v_i ⊗ v_j* ↦ δ_ij s^{2h_i}`.
    fn cap(&self, left: StrandType) -> Result<Arc<SparseMatrix<R>>> {
        self.check(left)?;
        Ok(self.cached((Kind::Cap, left, left), || {
            let n = left.label;
            let w = self.weights(StrandType::up(n));
            let entries = (0..n).map(|i| {
                let v = if left.up { self.s_pow(2 * w[i]) } else { self.one() };
                (0, i * n + i, v)
            });
            SparseMatrix::from_entries(1, n * n, &self.ctx, entries)
        }))
    }
}
