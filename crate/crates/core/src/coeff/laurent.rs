use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Ring;
use crate::error::{Error, Result};

/// The formal variable of a Laurent polynomial.
///
/// `T4` is the quarter power `t^{1/4}`: an exponent `e` stands for `t^{e/4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    A,
    #[serde(rename = "s")]
    S,
    #[serde(rename = "t")]
    T4,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::S => "s",
            Var::T4 => "t",
        }
    }

    fn from_symbol(s: &str) -> Option<Var> {
        match s {
            "A" => Some(Var::A),
            "s" => Some(Var::S),
            "t" => Some(Var::T4),
            _ => None,
        }
    }
}

/// A Laurent polynomial with integer coefficients in one variable.
///
/// Terms are kept sorted by exponent with no zero coefficients, so structural
/// equality is polynomial equality. Coefficient arithmetic is checked and panics
/// on `i64` overflow rather than wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    var: Var,
    terms: Vec<(i64, i64)>,
}

impl Laurent {
    pub fn zero(var: Var) -> Self {
        Laurent {
            var,
            terms: Vec::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, 1)
    }

    pub fn constant(var: Var, c: i64) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: Var, coeff: i64, exp: i64) -> Self {
        let terms = if coeff == 0 {
            Vec::new()
        } else {
            vec![(exp, coeff)]
        };
        Laurent { var, terms }
    }

    /// The variable itself raised to `exp`.
    pub fn var_pow(var: Var, exp: i64) -> Self {
        Self::monomial(var, 1, exp)
    }

    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert(0);
            *slot = checked_add(*slot, c);
        }
        Laurent {
            var,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms
            .binary_search_by_key(&exp, |&(e, _)| e)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            var: self.var,
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.var);
        }
        Laurent {
            var: self.var,
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e, checked_mul(c, k)))
                .collect(),
        }
    }

    /// Substitute `var ↦ new_var^factor`, i.e. exponent `e ↦ factor·e`.
    pub fn substitute(&self, new_var: Var, factor: i64) -> Self {
        Self::from_terms(
            new_var,
            self.terms.iter().map(|&(e, c)| (e * factor, c)),
        )
    }

    /// `p(x) ↦ p(x^{-1})`.
    pub fn invert_var(&self) -> Self {
        self.substitute(self.var, -1)
    }

    pub fn with_var(&self, var: Var) -> Self {
        Laurent {
            var,
            terms: self.terms.clone(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        Ring::pow(self, e)
    }

    /// `var^k` for any integer `k`; the only units of this ring are `±var^k`.
    pub fn unit_pow(&self, k: i64) -> Result<Self> {
        match self.terms.as_slice() {
            [(e, c)] if c.abs() == 1 => {
                let sign = if *c < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
                Ok(Self::monomial(self.var, sign, e * k))
            }
            _ if k >= 0 => Ok(self.pow(k as u64)),
            _ => Err(Error::Arithmetic(format!(
                "{} is not a unit in Z[{v},{v}^-1]",
                self,
                v = self.var.symbol()
            ))),
        }
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Laurent) -> Result<Laurent> {
        if divisor.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let (&(dlo, _), &(dhi, dlead)) = (
            divisor.terms.first().unwrap(),
            divisor.terms.last().unwrap(),
        );
        let mut rem: BTreeMap<i64, i64> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some((top, c)) = rem.iter().next_back().map(|(&e, &c)| (e, c)) {
            if c % dlead != 0 || top - dhi < self.min_exp().unwrap_or(0) - dlo {
                return Err(Error::Arithmetic(format!(
                    "{} does not divide {}",
                    divisor, self
                )));
            }
            let q = c / dlead;
            let qe = top - dhi;
            quot.push((qe, q));
            for &(e, dc) in &divisor.terms {
                let slot = rem.entry(qe + e).or_insert(0);
                *slot = checked_sub(*slot, checked_mul(q, dc));
                if *slot == 0 {
                    rem.remove(&(qe + e));
                }
            }
        }
        Ok(Self::from_terms(self.var, quot))
    }

    /// Terms in strictly decreasing exponent order, e.g. `A^7 + A^3 + A^-1 - A^-9`.
    pub fn canonical_string(&self) -> String {
        format_terms(self.var, self.terms.iter().rev().copied())
    }

    /// Terms in increasing exponent order.
    pub fn ascending_string(&self) -> String {
        format_terms(self.var, self.terms.iter().copied())
    }

    pub fn parse(text: &str) -> Result<Laurent> {
        parse_laurent(text)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(e, c)| c as f64 * x.powi(e as i32))
            .sum()
    }

    pub fn eval_complex(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|&(e, c)| x.powi(e as i32) * c as f64)
            .sum()
    }
}

/// `[n]_q = (s^{2n} - s^{-2n}) / (s^2 - s^{-2})` written division-free as
/// `s^{2(n-1)} + s^{2(n-3)} + ... + s^{-2(n-1)}`.
pub fn quantum_integer(n: i64, var: Var) -> Laurent {
    let m = n.abs();
    let sign = n.signum();
    Laurent::from_terms(var, (0..m).map(|j| (2 * (m - 1 - 2 * j), sign)))
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

fn checked_sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("Laurent coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

fn exponent_string(var: Var, e: i64) -> Option<String> {
    match var {
        Var::T4 => {
            if e == 0 {
                None
            } else if e % 4 == 0 {
                Some(if e == 4 {
                    String::new()
                } else {
                    format!("^{}", e / 4)
                })
            } else {
                let g = num_integer::gcd(e.abs(), 4);
                Some(format!("^({}/{})", e / g, 4 / g))
            }
        }
        _ => match e {
            0 => None,
            1 => Some(String::new()),
            _ => Some(format!("^{}", e)),
        },
    }
}

fn format_terms(var: Var, terms: impl Iterator<Item = (i64, i64)>) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let neg = c < 0;
        let mag = c.unsigned_abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match exponent_string(var, e) {
            None => out.push_str(&mag.to_string()),
            Some(exp) => {
                if mag != 1 {
                    out.push_str(&format!("{}*", mag));
                }
                out.push_str(var.symbol());
                out.push_str(&exp);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_laurent(text: &str) -> Result<Laurent> {
    let s: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut var: Option<Var> = None;
    let mut terms = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        if *i < s.len() && (s[*i] == '-' || s[*i] == '+') {
            *i += 1;
        }
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        let tok: String = s[start..*i].iter().collect();
        tok.parse().ok()
    };
    skip_ws(&mut i);
    if s.iter().collect::<String>().trim() == "0" {
        return Ok(Laurent::zero(Var::A));
    }
    let mut first = true;
    while i < s.len() {
        skip_ws(&mut i);
        let mut sign = 1;
        if i < s.len() && (s[i] == '+' || s[i] == '-') {
            if s[i] == '-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(Error::parse(i, "expected '+' or '-' between terms"));
        }
        first = false;
        let mut coeff = 1i64;
        let mut have_coeff = false;
        if i < s.len() && s[i].is_ascii_digit() {
            coeff = read_int(&mut i).ok_or_else(|| Error::parse(i, "bad coefficient"))?;
            have_coeff = true;
            skip_ws(&mut i);
            if i < s.len() && s[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }
        let mut exp = 0i64;
        if i < s.len() && s[i].is_alphabetic() {
            let sym = s[i].to_string();
            let v = Var::from_symbol(&sym)
                .ok_or_else(|| Error::parse(i, format!("unknown variable '{}'", sym)))?;
            if let Some(prev) = var {
                if prev != v {
                    return Err(Error::parse(i, "mixed variables"));
                }
            }
            var = Some(v);
            i += 1;
            exp = if v == Var::T4 { 4 } else { 1 };
            if i < s.len() && s[i] == '^' {
                i += 1;
                if i < s.len() && s[i] == '(' {
                    i += 1;
                    let num = read_int(&mut i).ok_or_else(|| Error::parse(i, "bad exponent"))?;
                    let den = if i < s.len() && s[i] == '/' {
                        i += 1;
                        read_int(&mut i).ok_or_else(|| Error::parse(i, "bad exponent"))?
                    } else {
                        1
                    };
                    if i >= s.len() || s[i] != ')' {
                        return Err(Error::parse(i, "expected ')'"));
                    }
                    i += 1;
                    let scale = if v == Var::T4 { 4 } else { 1 };
                    if den == 0 || (num * scale) % den != 0 {
                        return Err(Error::parse(i, "fractional exponent not allowed here"));
                    }
                    exp = num * scale / den;
                } else {
                    let e = read_int(&mut i).ok_or_else(|| Error::parse(i, "bad exponent"))?;
                    exp = if v == Var::T4 { 4 * e } else { e };
                }
            }
        } else if !have_coeff {
            return Err(Error::parse(i, "expected a term"));
        }
        terms.push((exp, sign * coeff));
        skip_ws(&mut i);
    }
    Ok(Laurent::from_terms(var.unwrap_or(Var::A), terms))
}

fn mul_terms(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let lo = a[0].0 + b[0].0;
    let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
    let span = (hi - lo + 1) as usize;
    if span <= 1 << 14 {
        let mut buf = vec![0i64; span];
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                let slot = &mut buf[(ea + eb - lo) as usize];
                *slot = checked_add(*slot, checked_mul(ca, cb));
            }
        }
        buf.into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (lo + k as i64, c))
            .collect()
    } else {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                let slot = acc.entry(ea + eb).or_insert(0);
                *slot = checked_add(*slot, checked_mul(ca, cb));
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }
}

fn add_terms(a: &[(i64, i64)], b: &[(i64, i64)], sign: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, checked_mul(sign, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = checked_add(a[i].1, checked_mul(sign, b[j].1));
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Ring for Laurent {
    type Ctx = Var;

    fn zero(ctx: &Var) -> Self {
        Laurent::zero(*ctx)
    }
    fn one(ctx: &Var) -> Self {
        Laurent::one(*ctx)
    }
    fn from_int(ctx: &Var, n: i64) -> Self {
        Laurent::constant(*ctx, n)
    }
    fn ctx(&self) -> Var {
        self.var
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        Laurent {
            var: self.var,
            terms: add_terms(&self.terms, &other.terms, 1),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        Laurent {
            var: self.var,
            terms: add_terms(&self.terms, &other.terms, -1),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        Laurent {
            var: self.var,
            terms: mul_terms(&self.terms, &other.terms),
        }
    }
    fn neg(&self) -> Self {
        self.scale(-1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $ring:ident) => {
        impl $tr<&Laurent> for &Laurent {
            type Output = Laurent;
            fn $method(self, rhs: &Laurent) -> Laurent {
                Ring::$ring(self, rhs)
            }
        }
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $method(self, rhs: Laurent) -> Laurent {
                Ring::$ring(&self, &rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $method(self, rhs: &Laurent) -> Laurent {
                Ring::$ring(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{}]({})", self.var.symbol(), self.canonical_string())
    }
}

impl std::str::FromStr for Laurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_laurent(s)
    }
}

struct Coeffs<'a>(&'a [(i64, i64)]);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.0.iter().rev() {
            map.serialize_entry(&e.to_string(), c)?;
        }
        map.end()
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(2))?;
        map.serialize_entry("var", &self.var)?;
        map.serialize_entry("coeffs", &Coeffs(&self.terms))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: Var,
            coeffs: BTreeMap<String, i64>,
        }
        let raw = Raw::deserialize(de)?;
        let mut terms = Vec::with_capacity(raw.coeffs.len());
        for (k, c) in raw.coeffs {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent key '{}'", k)))?;
            terms.push((e, c));
        }
        Ok(Laurent::from_terms(raw.var, terms))
    }
}
