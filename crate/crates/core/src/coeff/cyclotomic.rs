use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Laurent, Ring};
use crate::error::{Error, Result};

/// The cyclotomic field `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(PartialEq, Eq)]
pub struct CyclotomicField {
    order: u64,
    phi: usize,
    /// Monic `Φ_N`, low degree first.
    modulus: Vec<BigInt>,
    /// `ζ^j` reduced, for `j in 0..N`.
    powers: Vec<Vec<BigInt>>,
    units: Vec<u64>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d, memo);
            p = int_poly_div_exact(&p, &q);
        }
    }
    memo.insert(n, p.clone());
    p
}

impl CyclotomicField {
    /// The field of `N`-th roots of unity. Fields are interned, so repeated calls
    /// with the same order share one table.
    pub fn new(order: u64) -> Arc<CyclotomicField> {
        assert!(order > 0, "cyclotomic order must be positive");
        static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let table = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = table.lock().unwrap();
        guard
            .entry(order)
            .or_insert_with(|| Arc::new(Self::build(order)))
            .clone()
    }

    fn build(order: u64) -> CyclotomicField {
        let modulus = cyclotomic_poly(order, &mut HashMap::new());
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by ζ: shift and reduce the overflow with the monic modulus
            let top = cur[phi - 1].clone();
            let mut next = vec![BigInt::zero(); phi];
            next[1..phi].clone_from_slice(&cur[..phi - 1]);
            if !top.is_zero() {
                for i in 0..phi {
                    next[i] -= &top * &modulus[i];
                }
            }
            cur = next;
        }
        let units = (1..=order).filter(|j| j.gcd(&order) == 1).map(|j| j % order).collect();
        CyclotomicField {
            order,
            phi,
            modulus,
            powers,
            units,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Φ_N`, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Exponents `j` with `gcd(j, N) = 1`; these index the Galois group.
    pub fn units(&self) -> &[u64] {
        &self.units
    }
}

/// An element of `Q(ζ_N)`, stored as an integer vector over a positive common
/// denominator in lowest terms. Equality is structural.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Cyclotomic {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = Cyclotomic { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            num: vec![BigInt::zero(); field.phi],
            den: BigInt::one(),
        }
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.phi];
        num[0] = q.numer().clone();
        Self::from_parts(field.clone(), num, q.denom().clone())
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let idx = k.rem_euclid(field.order as i64) as usize;
        Cyclotomic {
            field: field.clone(),
            num: field.powers[idx].clone(),
            den: BigInt::one(),
        }
    }

    /// Specialise a Laurent polynomial at `x = ζ^exponent`.
    pub fn from_laurent(p: &Laurent, field: &Arc<CyclotomicField>, exponent: i64) -> Self {
        let n = field.order as i64;
        let mut num = vec![BigInt::zero(); field.phi];
        for &(e, c) in p.terms() {
            let idx = (e * exponent).rem_euclid(n) as usize;
            let c = BigInt::from(c);
            for (slot, b) in num.iter_mut().zip(&field.powers[idx]) {
                if !b.is_zero() {
                    *slot += &c * b;
                }
            }
        }
        Self::from_parts(field.clone(), num, BigInt::one())
    }

    /// Evaluate `p` at an arbitrary element of the field.
    pub fn eval_laurent(p: &Laurent, x: &Cyclotomic) -> Result<Cyclotomic> {
        let field = x.field.clone();
        let mut acc = Self::zero(&field);
        if p.is_zero() {
            return Ok(acc);
        }
        let inv = if p.min_exp().unwrap() < 0 {
            Some(x.inv()?)
        } else {
            None
        };
        for &(e, c) in p.terms() {
            let base = if e >= 0 { x } else { inv.as_ref().unwrap() };
            let term = base.pow(e.unsigned_abs()).scale_int(c);
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * &k).collect(),
            self.den.clone(),
        )
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Self::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * q.numer()).collect(),
            &self.den * q.denom(),
        )
    }

    fn reduce(&self, wide: Vec<BigInt>, den: BigInt) -> Self {
        let n = self.field.order as usize;
        let phi = self.field.phi;
        let mut num = vec![BigInt::zero(); phi];
        for (k, c) in wide.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                num[k] += c;
            } else {
                for (slot, b) in num.iter_mut().zip(&self.field.powers[k % n]) {
                    if !b.is_zero() {
                        *slot += &c * b;
                    }
                }
            }
        }
        Self::from_parts(self.field.clone(), num, den)
    }

    /// The Galois automorphism `ζ ↦ ζ^j`.
    pub fn galois(&self, j: u64) -> Self {
        let n = self.field.order as usize;
        let mut wide = vec![BigInt::zero(); n];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                wide[(k * j as usize) % n] += c;
            }
        }
        self.reduce(wide, self.den.clone())
    }

    /// The field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for &j in &self.field.units {
            if j != 1 {
                acc = acc.mul(&self.galois(j));
            }
        }
        acc.as_rational()
            .expect("norm of a cyclotomic element is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        let mut conj = Cyclotomic::from_int(&self.field, 1);
        for &j in &self.field.units {
            if j != 1 {
                conj = conj.mul(&self.galois(j));
            }
        }
        let norm = self
            .mul(&conj)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        Ok(conj.scale_rational(&norm.recip()))
    }

    pub fn pow_i64(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs()))
        }
    }

    /// Numeric value under the embedding `ζ ↦ e^{2πi/N}`.
    pub fn to_complex(&self) -> Complex64 {
        self.embed(1)
    }

    /// Numeric value under `ζ ↦ e^{2πij/N}`.
    pub fn embed(&self, j: u64) -> Complex64 {
        let n = self.field.order as f64;
        let den = big_to_f64(&self.den);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let ang = 2.0 * std::f64::consts::PI * ((k as u64 * j) % self.field.order) as f64 / n;
                Complex64::from_polar(big_to_f64(c) / den, ang)
            })
            .sum()
    }

    /// An exact square root inside this field, if one exists.
    ///
    /// Candidates are assembled from numeric square roots under every embedding
    /// (one sign choice per complex-conjugate pair), mapped back to the power
    /// basis, rounded to small rationals and then verified exactly. A `None`
    /// result means no candidate survived verification.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let field = &self.field;
        let phi = field.phi;
        if phi == 1 {
            let q = self.as_rational()?;
            let (n, d) = (q.numer(), q.denom());
            if n.is_negative() {
                return None;
            }
            let (rn, rd) = (n.sqrt(), d.sqrt());
            if &(&rn * &rn) == n && &(&rd * &rd) == d {
                return Some(Self::from_rational(field, BigRational::new(rn, rd)));
            }
            return None;
        }
        let n = field.order;
        let reps: Vec<u64> = field.units.iter().copied().filter(|&j| 2 * j < n).collect();
        if reps.len() > 12 {
            return None;
        }
        let vinv = vandermonde_inverse(field)?;
        let roots: Vec<Complex64> = reps.iter().map(|&j| self.embed(j).sqrt()).collect();
        for mask in 0u32..(1 << reps.len()) {
            let mut target = vec![Complex64::new(0.0, 0.0); phi];
            for (pos, &u) in field.units.iter().enumerate() {
                let (idx, conj) = match reps.iter().position(|&j| j == u) {
                    Some(i) => (i, false),
                    None => (reps.iter().position(|&j| j == n - u)?, true),
                };
                let mut b = roots[idx];
                if mask >> idx & 1 == 1 {
                    b = -b;
                }
                target[pos] = if conj { b.conj() } else { b };
            }
            let mut coeffs = Vec::with_capacity(phi);
            let mut ok = true;
            for row in &vinv {
                let c: Complex64 = row.iter().zip(&target).map(|(a, b)| a * b).sum();
                if c.im.abs() > 1e-6 * (1.0 + c.re.abs()) {
                    ok = false;
                    break;
                }
                match rational_approx(c.re, 100_000) {
                    Some(q) => coeffs.push(q),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let num = coeffs
                .iter()
                .map(|q| q.numer() * (&den / q.denom()))
                .collect();
            let cand = Self::from_parts(field.clone(), num, den);
            if cand.mul(&cand) == *self {
                return Some(cand);
            }
        }
        None
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn rational_approx(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 != 0 && (h1 as f64 / k1 as f64 - x).abs() <= 1e-9 * (1.0 + x.abs()) {
        Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}

/// Inverse of `V[u][k] = ω^{u·k}` for units `u` and `k < φ(N)`.
fn vandermonde_inverse(field: &CyclotomicField) -> Option<Vec<Vec<Complex64>>> {
    let phi = field.phi;
    let n = field.order as f64;
    let mut a: Vec<Vec<Complex64>> = field
        .units
        .iter()
        .map(|&u| {
            let mut row: Vec<Complex64> = (0..phi)
                .map(|k| {
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (u as f64) * k as f64 / n)
                })
                .collect();
            row.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(phi));
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..phi {
            row[phi + j] = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
    }
    for col in 0..phi {
        let piv = (col..phi).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col].norm() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..phi {
            if r != col {
                let f = a[r][col];
                if f.norm() != 0.0 {
                    let pivot_row = a[col].clone();
                    for (v, pv) in a[r].iter_mut().zip(pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
    }
    // rows of the augmented part: V^{-1}[k][u]
    Some(a.into_iter().map(|row| row[phi..].to_vec()).collect())
}

impl Ring for Cyclotomic {
    type Ctx = Arc<CyclotomicField>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Cyclotomic::zero(ctx)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Cyclotomic::from_int(ctx, 1)
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Cyclotomic::from_int(ctx, n)
    }
    fn ctx(&self) -> Self::Ctx {
        self.field.clone()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field.order, other.field.order);
        if self.den == other.den {
            return Self::from_parts(
                self.field.clone(),
                self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect(),
                self.den.clone(),
            );
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field.order, other.field.order);
        let phi = self.field.phi;
        let mut wide = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        self.reduce(wide, &self.den * &other.den)
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", k),
            };
            let body = if mono.is_empty() {
                c.abs().to_string()
            } else if c.abs().is_one() {
                mono
            } else {
                format!("{}*{}", c.abs(), mono)
            };
            parts.push((c.is_negative(), body));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(2))?;
        map.serialize_entry("order", &self.field.order)?;
        let coeffs: Vec<String> = self.coeffs().iter().map(|q| q.to_string()).collect();
        map.serialize_entry("coeffs", &coeffs)?;
        map.end()
    }
}

impl Cyclotomic {
    /// Inverse of the JSON form `{"order": N, "coeffs": ["p/q", ...]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let order = value["order"]
            .as_u64()
            .ok_or_else(|| Error::invalid("cyclotomic JSON needs an integer 'order'"))?;
        let field = CyclotomicField::new(order);
        let arr = value["coeffs"]
            .as_array()
            .ok_or_else(|| Error::invalid("cyclotomic JSON needs a 'coeffs' array"))?;
        if arr.len() != field.phi {
            return Err(Error::invalid(format!(
                "expected {} coefficients, found {}",
                field.phi,
                arr.len()
            )));
        }
        let mut acc = Cyclotomic::zero(&field);
        for (k, v) in arr.iter().enumerate() {
            let text = v
                .as_str()
                .ok_or_else(|| Error::invalid("coefficients must be strings"))?;
            let q: BigRational = text
                .parse()
                .map_err(|_| Error::invalid(format!("bad rational '{}'", text)))?;
            acc = acc.add(&Cyclotomic::zeta_pow(&field, k as i64).scale_rational(&q));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{quantum_integer, Var};
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        let f = CyclotomicField::new(12);
        let m: Vec<i64> = f.modulus().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(m, vec![1, 0, -1, 0, 1]);
        assert_eq!(CyclotomicField::new(20).degree(), 8);
        assert_eq!(CyclotomicField::new(48).degree(), 16);
        assert_eq!(CyclotomicField::new(1).degree(), 1);
    }

    #[test]
    fn zeta_has_exact_order() {
        let f = CyclotomicField::new(20);
        let z = Cyclotomic::zeta_pow(&f, 1);
        assert!(z.pow(20).is_one());
        assert!(!z.pow(10).is_one());
        assert_eq!(z.pow(7), Cyclotomic::zeta_pow(&f, 7));
        assert_eq!(z.inv().unwrap(), Cyclotomic::zeta_pow(&f, -1));
    }

    #[test]
    fn quantum_integer_vanishes_at_l() {
        // s = ζ_20, s^{4·5} = 1: [5] = sin(π)/sin(π/5) = 0
        let f = CyclotomicField::new(20);
        let q5 = Cyclotomic::from_laurent(&quantum_integer(5, Var::S), &f, 1);
        assert!(q5.is_zero());
        for n in 1..5 {
            let qn = Cyclotomic::from_laurent(&quantum_integer(n, Var::S), &f, 1);
            let numeric = (n as f64 * std::f64::consts::PI / 5.0).sin()
                / (std::f64::consts::PI / 5.0).sin();
            assert!((qn.to_complex().re - numeric).abs() < 1e-12);
            assert!(!qn.is_zero());
        }
    }

    #[test]
    fn laurent_eval_examples() {
        let f = CyclotomicField::new(20);
        let z = Cyclotomic::zeta_pow(&f, 1);
        let a = Laurent::var_pow(Var::A, 1);
        assert_eq!(Cyclotomic::eval_laurent(&a, &z).unwrap(), z);
        let loop_value = -Laurent::var_pow(Var::A, 2) - Laurent::var_pow(Var::A, -2);
        let v = Cyclotomic::eval_laurent(&loop_value, &z).unwrap();
        let expected = -2.0 * (std::f64::consts::PI / 5.0).cos();
        assert!((v.to_complex().re - expected).abs() < 1e-12);
        assert!(v.to_complex().im.abs() < 1e-12);
        assert!(Cyclotomic::eval_laurent(&Laurent::zero(Var::A), &z)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn square_roots() {
        let f = CyclotomicField::new(8);
        let two = Cyclotomic::from_int(&f, 2);
        let r = two.sqrt().expect("sqrt 2 lies in Q(ζ_8)");
        assert_eq!(r.mul(&r), two);
        let three = Cyclotomic::from_int(&f, 3);
        assert!(three.sqrt().is_none());
        let q = CyclotomicField::new(12);
        let three = Cyclotomic::from_int(&q, 3);
        assert!(three.sqrt().is_some());
        let g = CyclotomicField::new(1);
        assert!(Cyclotomic::from_int(&g, 9).sqrt().is_some());
        assert!(Cyclotomic::from_int(&g, 8).sqrt().is_none());
    }

    #[test]
    fn json_roundtrip() {
        let f = CyclotomicField::new(12);
        let x = Cyclotomic::zeta_pow(&f, 5).scale_rational(&BigRational::new(3.into(), 7.into()));
        let js = serde_json::to_value(&x).unwrap();
        assert_eq!(Cyclotomic::from_json(&js).unwrap(), x);
    }

    fn arb_elem(order: u64) -> impl Strategy<Value = Cyclotomic> {
        let f = CyclotomicField::new(order);
        let phi = f.degree();
        (prop::collection::vec(-9i64..9, phi), 1i64..5).prop_map(move |(c, d)| {
            let num = c.into_iter().map(BigInt::from).collect();
            Cyclotomic::from_parts(f.clone(), num, BigInt::from(d))
        })
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((-12i64..12, -5i64..5), 0..5)
            .prop_map(|t| Laurent::from_terms(Var::S, t))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elem(20), b in arb_elem(20), c in arb_elem(20)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn specialisation_is_a_homomorphism(p in arb_laurent(), q in arb_laurent(), e in prop::sample::select(vec![1i64, 3, 7, 9])) {
            let f = CyclotomicField::new(20);
            let ev = |x: &Laurent| Cyclotomic::from_laurent(x, &f, e);
            prop_assert_eq!(ev(&(&p * &q)), ev(&p).mul(&ev(&q)));
            prop_assert_eq!(ev(&(&p + &q)), ev(&p).add(&ev(&q)));
            prop_assert_eq!(ev(&(&p - &q)), ev(&p).sub(&ev(&q)));
        }
    }
}
