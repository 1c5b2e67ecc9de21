use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Cyclotomic, CyclotomicField, Ring};
use crate::error::Result;

/// `Q(ζ_N)(√r)` for a fixed radicand `r`. When `r` is already a square in the
/// cyclotomic field the extension is trivial and elements collapse to `(a, 0)`.
#[derive(Debug)]
pub struct SqrtExtField {
    radicand: Cyclotomic,
    root: Option<Cyclotomic>,
}

impl SqrtExtField {
    pub fn new(radicand: Cyclotomic) -> Arc<SqrtExtField> {
        let root = radicand.sqrt().map(|r| {
            let principal = radicand.to_complex().sqrt();
            if (r.to_complex() - principal).norm() <= (r.neg().to_complex() - principal).norm() {
                r
            } else {
                r.neg()
            }
        });
        Arc::new(SqrtExtField { radicand, root })
    }

    pub fn radicand(&self) -> &Cyclotomic {
        &self.radicand
    }

    pub fn base(&self) -> &Arc<CyclotomicField> {
        self.radicand.field()
    }

    /// The square root as a base-field element, if `r` is a square.
    pub fn exact_root(&self) -> Option<&Cyclotomic> {
        self.root.as_ref()
    }
}

impl PartialEq for SqrtExtField {
    fn eq(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
}

/// `a + b·√r`.
#[derive(Clone)]
pub struct SqrtExt {
    ctx: Arc<SqrtExtField>,
    a: Cyclotomic,
    b: Cyclotomic,
}

impl PartialEq for SqrtExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.ctx.radicand == other.ctx.radicand
    }
}

impl SqrtExt {
    pub fn new(ctx: &Arc<SqrtExtField>, a: Cyclotomic, b: Cyclotomic) -> Self {
        match &ctx.root {
            Some(root) if !b.is_zero() => SqrtExt {
                ctx: ctx.clone(),
                a: a.add(&b.mul(root)),
                b: Cyclotomic::zero(ctx.base()),
            },
            _ => SqrtExt {
                ctx: ctx.clone(),
                a,
                b,
            },
        }
    }

    pub fn from_base(ctx: &Arc<SqrtExtField>, a: Cyclotomic) -> Self {
        Self::new(ctx, a, Cyclotomic::zero(ctx.base()))
    }

    /// The distinguished square root `√r`.
    pub fn sqrt(ctx: &Arc<SqrtExtField>) -> Self {
        Self::new(ctx, Cyclotomic::zero(ctx.base()), Cyclotomic::from_int(ctx.base(), 1))
    }

    pub fn parts(&self) -> (&Cyclotomic, &Cyclotomic) {
        (&self.a, &self.b)
    }

    pub fn context(&self) -> &Arc<SqrtExtField> {
        &self.ctx
    }

    /// The base-field value when the `√r` component vanishes.
    pub fn as_base(&self) -> Option<&Cyclotomic> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let r = &self.ctx.radicand;
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(r));
        let ninv = norm.inv()?;
        Ok(Self::new(&self.ctx, self.a.mul(&ninv), self.b.neg().mul(&ninv)))
    }

    pub fn to_complex(&self) -> Complex64 {
        self.a.to_complex() + self.b.to_complex() * self.ctx.radicand.to_complex().sqrt()
    }
}

impl Ring for SqrtExt {
    type Ctx = Arc<SqrtExtField>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_base(ctx, Cyclotomic::zero(ctx.base()))
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_base(ctx, Cyclotomic::from_int(ctx.base(), 1))
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_base(ctx, Cyclotomic::from_int(ctx.base(), n))
    }
    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Self::new(&self.ctx, self.a.add(&other.a), self.b.add(&other.b))
    }
    fn sub(&self, other: &Self) -> Self {
        Self::new(&self.ctx, self.a.sub(&other.a), self.b.sub(&other.b))
    }
    fn mul(&self, other: &Self) -> Self {
        let r = &self.ctx.radicand;
        let a = self.a.mul(&other.a).add(&self.b.mul(&other.b).mul(r));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        Self::new(&self.ctx, a, b)
    }
    fn neg(&self) -> Self {
        Self::new(&self.ctx, self.a.neg(), self.b.neg())
    }
}

impl fmt::Debug for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", self.b, self.ctx.radicand)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.ctx.radicand)
        }
    }
}

impl Serialize for SqrtExt {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(3))?;
        map.serialize_entry("a", &self.a)?;
        map.serialize_entry("b", &self.b)?;
        map.serialize_entry("radicand", &self.ctx.radicand)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: u64, r: i64) -> Arc<SqrtExtField> {
        SqrtExtField::new(Cyclotomic::from_int(&CyclotomicField::new(n), r))
    }

    #[test]
    fn nontrivial_extension() {
        let c = ctx(8, 3);
        assert!(c.exact_root().is_none());
        let d = SqrtExt::sqrt(&c);
        assert_eq!(d.mul(&d), SqrtExt::from_int(&c, 3));
        assert!((d.to_complex().re - 3f64.sqrt()).abs() < 1e-12);
        let x = d.add(&SqrtExt::one(&c));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn trivial_extension_uses_principal_root() {
        let c = ctx(8, 2);
        let d = SqrtExt::sqrt(&c);
        assert!(d.as_base().is_some());
        assert!((d.to_complex().re - 2f64.sqrt()).abs() < 1e-12);
        assert!(d.to_complex().im.abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn ring_axioms(xs in prop::collection::vec(-6i64..6, 8)) {
            let c = ctx(12, 5);
            let f = c.base().clone();
            let z = |k: i64| Cyclotomic::zeta_pow(&f, k);
            let mk = |p: i64, q: i64, k: i64| SqrtExt::new(&c, z(k).scale_int(p), z(k + 1).scale_int(q));
            let a = mk(xs[0], xs[1], xs[2]);
            let b = mk(xs[3], xs[4], xs[5]);
            let e = mk(xs[6], xs[7], 1);
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&e), a.mul(&b.mul(&e)));
            prop_assert_eq!(a.mul(&b.add(&e)), a.mul(&b).add(&a.mul(&e)));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            let num = a.mul(&b).to_complex() - a.to_complex() * b.to_complex();
            prop_assert!(num.norm() < 1e-8);
        }
    }
}
