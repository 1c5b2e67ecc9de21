use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use super::group::QGroup;
use crate::coeff::{Cyclotomic, CyclotomicField, Laurent, Ring, SqrtExt, SqrtExtField};
use crate::diagram::{BraidWord, LinkDiagram};
use crate::error::{Error, Result};

/// Which root of unity `s` is: `s = ζ^exponent` with `ζ` a primitive
/// `order`-th root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSpec {
    pub order: u64,
    pub exponent: i64,
}

impl RootSpec {
    /// `s = e^{2πi/4l}`, the unitary choice.
    pub fn default_for(l: usize) -> Self {
        RootSpec {
            order: 4 * l as u64,
            exponent: 1,
        }
    }

    /// A primitive `4l`-th root `ζ_{4l}^exponent`.
    pub fn with_exponent(l: usize, exponent: i64) -> Self {
        RootSpec {
            order: 4 * l as u64,
            exponent,
        }
    }

    /// For odd `l`, a primitive `2l`-th root.
    pub fn half_order(l: usize, exponent: i64) -> Self {
        RootSpec {
            order: 2 * l as u64,
            exponent,
        }
    }

    fn validate(&self, l: usize) -> Result<()> {
        let n = self.order;
        let ok_order = n == 4 * l as u64 || (l % 2 == 1 && n == 2 * l as u64);
        if !ok_order {
            return Err(Error::invalid(format!(
                "root order {} is neither 4l = {} nor (for odd l) 2l",
                n,
                4 * l
            )));
        }
        let e = self.exponent.rem_euclid(n as i64) as u64;
        if num_integer::gcd(e, n) != 1 {
            return Err(Error::invalid(format!(
                "exponent {} does not give a primitive {}-th root of unity",
                self.exponent, n
            )));
        }
        Ok(())
    }
}

/// Truncated fusion multiplicity `N_{n,m}^k` at level `l`.
pub fn fusion_coefficient(n: usize, m: usize, k: usize, l: usize) -> u32 {
    if n == 0 || m == 0 || k == 0 || n >= l || m >= l || k >= l {
        return 0;
    }
    let lo = n.abs_diff(m) + 1;
    let hi = (n + m - 1).min(2 * l - 1 - n - m);
    (k >= lo && k <= hi && (k + n + m) % 2 == 1) as u32
}

/// Decompose `V_n ⊗ V_m` in the truncated representation ring at level `l`.
pub fn fusion(n: usize, m: usize, l: usize) -> Result<Vec<(usize, u32)>> {
    if n == 0 || m == 0 || n >= l || m >= l {
        return Err(Error::invalid(format!(
            "labels must lie in 1..{} at l = {}, got {} and {}",
            l - 1,
            l,
            n,
            m
        )));
    }
    Ok((1..l)
        .map(|k| (k, fusion_coefficient(n, m, k, l)))
        .filter(|&(_, c)| c > 0)
        .collect())
}

fn hopf_cache() -> &'static Mutex<HashMap<(usize, usize), Laurent>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Laurent>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn generic_group() -> &'static QGroup<Laurent> {
    static G: OnceLock<QGroup<Laurent>> = OnceLock::new();
    G.get_or_init(QGroup::generic)
}

/// The 0-framed Hopf link as the closure of `σ_1^2`.
pub fn hopf_link() -> LinkDiagram {
    BraidWord::parse("braid 2 : s1 s1").expect("static braid").closure()
}

/// The colored Hopf-link value with labels `(i, j)`, computed generically
/// through the labeled functor.
pub fn hopf_value_generic(i: usize, j: usize) -> Result<Laurent> {
    let key = (i.min(j), i.max(j));
    if let Some(v) = hopf_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = generic_group().colored_invariant(&hopf_link(), &[key.0, key.1], &[0, 0])?;
    hopf_cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Determinant over a field by Gaussian elimination.
pub fn determinant(m: &[Vec<Cyclotomic>]) -> Result<Cyclotomic> {
    let n = m.len();
    let mut a: Vec<Vec<Cyclotomic>> = m.to_vec();
    let field = match m.first().and_then(|r| r.first()) {
        Some(x) => x.field().clone(),
        None => return Err(Error::invalid("determinant of an empty matrix")),
    };
    let mut det = Cyclotomic::from_int(&field, 1);
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Ok(Cyclotomic::zero(&field)),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        let pinv = p.inv()?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&pinv);
            for c in col..n {
                let v = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&v);
            }
        }
    }
    Ok(det)
}

/// Everything the surgery invariant needs at one root of unity. Labels are
/// `V_1..V_{l-1}`; vectors and matrices are indexed by `label - 1`.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub l: usize,
    pub root: RootSpec,
    pub field: Arc<CyclotomicField>,
    pub qdims: Vec<Cyclotomic>,
    pub fusion: Vec<Vec<Vec<u32>>>,
    pub hopf: Vec<Vec<Cyclotomic>>,
    pub hopf_det: Cyclotomic,
    pub twists: Vec<Cyclotomic>,
    /// Coefficients of `ω = Σ qdim(λ_i) λ_i`.
    pub omega: Vec<Cyclotomic>,
    /// `qdim(ω) = Σ [n]^2`.
    pub qdim_omega: Cyclotomic,
    /// `Σ [n]^2 θ_n^{±1}`.
    pub p_plus: Cyclotomic,
    pub p_minus: Cyclotomic,
    pub sqrt_field: Arc<SqrtExtField>,
    /// `K = qdim(Ω) = qdim(ω)^{1/2}`.
    pub k: SqrtExt,
    pub k_inv: SqrtExt,
    /// `u±(Ω)`: the ±1-framed unknot labeled by `Ω`.
    pub u_plus: SqrtExt,
    pub u_minus: SqrtExt,
    /// `C = 1/u+(Ω)`.
    pub c: SqrtExt,
    pub c_inv: SqrtExt,
}

impl ModularData {
    pub fn new(l: usize, root: RootSpec) -> Result<Self> {
        if l < 2 {
            return Err(Error::invalid("the truncation order l must be at least 2"));
        }
        root.validate(l)?;
        let field = CyclotomicField::new(root.order);
        let q = QGroup::at_root(root.order, root.exponent)?;
        let spec = |p: &Laurent| Cyclotomic::from_laurent(p, &field, root.exponent);
        let labels = l - 1;
        let qdims: Vec<Cyclotomic> = (1..l).map(|n| q.qint(n as i64)).collect();
        if let Some(n) = qdims.iter().position(|x| x.is_zero()) {
            return Err(Error::invalid(format!("quantum dimension of V{} vanishes", n + 1)));
        }
        if !q.qint(l as i64).is_zero() {
            return Err(Error::invalid(format!("[{}] does not vanish at this root", l)));
        }
        let mut hopf = vec![vec![Cyclotomic::zero(&field); labels]; labels];
        for i in 1..l {
            for j in 1..l {
                let formula = q.qint((i * j) as i64);
                let functor = spec(&hopf_value_generic(i, j)?);
                if formula != functor {
                    return Err(Error::invalid(format!(
                        "Hopf link value for ({}, {}) disagrees with [{}]",
                        i,
                        j,
                        i * j
                    )));
                }
                hopf[i - 1][j - 1] = formula;
            }
        }
        let hopf_det = determinant(&hopf)?;
        if hopf_det.is_zero() {
            return Err(Error::invalid(format!("the Hopf matrix is singular at l = {}", l)));
        }
        let fusion = (1..l)
            .map(|i| (1..l).map(|j| (1..l).map(|k| fusion_coefficient(i, j, k, l)).collect()).collect())
            .collect();
        let twists: Vec<Cyclotomic> = (1..l).map(|n| q.twist(n)).collect();
        let sq: Vec<Cyclotomic> = qdims.iter().map(|d| d.mul(d)).collect();
        let sum = |f: &dyn Fn(usize) -> Cyclotomic| {
            (0..labels).fold(Cyclotomic::zero(&field), |acc, i| acc.add(&f(i)))
        };
        let qdim_omega = sum(&|i| sq[i].clone());
        let p_plus = sum(&|i| sq[i].mul(&twists[i]));
        let p_minus = sum(&|i| sq[i].mul(&twists[i].inv().expect("roots of unity are units")));
        let sqrt_field = SqrtExtField::new(qdim_omega.clone());
        let k = SqrtExt::sqrt(&sqrt_field);
        let k_inv = k.inv()?;
        let base = |x: &Cyclotomic| SqrtExt::from_base(&sqrt_field, x.clone());
        let u_plus = base(&p_plus).mul(&k_inv);
        let u_minus = base(&p_minus).mul(&k_inv);
        let c = u_plus.inv()?;
        Ok(ModularData {
            l,
            root,
            field,
            omega: qdims.clone(),
            qdims,
            fusion,
            hopf,
            hopf_det,
            twists,
            qdim_omega,
            p_plus,
            p_minus,
            sqrt_field,
            k,
            k_inv,
            c_inv: u_plus.clone(),
            u_plus,
            u_minus,
            c,
        })
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.l - 1
    }

    pub fn label_count(&self) -> usize {
        self.l - 1
    }

    /// The Hopf link with one component labeled `λ_i` and the other by `ω`.
    pub fn omega_hopf(&self, i: usize) -> Cyclotomic {
        (0..self.label_count()).fold(Cyclotomic::zero(&self.field), |acc, j| {
            acc.add(&self.omega[j].mul(&self.hopf[i - 1][j]))
        })
    }

    /// `Σ_j N_{i,j}^m qdim(λ_j)` for every `m`, i.e. the fusion matrix of
    /// `λ_i` applied to the vector of quantum dimensions.
    pub fn fusion_times_qdims(&self, i: usize) -> Vec<Cyclotomic> {
        (0..self.label_count())
            .map(|m| {
                (0..self.label_count()).fold(Cyclotomic::zero(&self.field), |acc, j| {
                    let n = self.fusion[i - 1][j][m];
                    if n == 0 {
                        acc
                    } else {
                        acc.add(&self.qdims[j].scale_int(n as i64))
                    }
                })
            })
            .collect()
    }

    /// Lift a base-field element into the square-root extension.
    pub fn lift(&self, x: &Cyclotomic) -> SqrtExt {
        SqrtExt::from_base(&self.sqrt_field, x.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "root": {"order": self.root.order, "exponent": self.root.exponent},
            "labels": self.labels().collect::<Vec<_>>(),
            "qdims": self.qdims,
            "fusion": self.fusion,
            "hopf": self.hopf,
            "twists": self.twists,
            "omega": self.omega,
            "qdim_omega": self.qdim_omega,
            "K": self.k,
            "u_plus": self.u_plus,
            "u_minus": self.u_minus,
            "C": self.c,
        })
    }
}
