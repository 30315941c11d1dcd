use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::mpoly::{forward_binop, Vars};
use super::ratfn::RatFn;
use super::ring::{Field, IntegralDomain, Ring};
use super::Rat;
use crate::error::{Error, Result};

/// `a + b*u` with `u^2 = -c*u - 1`.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: RatFn,
    b: RatFn,
    c: Arc<RatFn>,
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (Arc::ptr_eq(&self.c, &o.c) || self.c == o.c)
    }
}

/// Shared modulus handle for one computation context.
#[derive(Clone, Debug)]
pub struct Modulus(Arc<RatFn>);

impl Modulus {
    pub fn new(c: RatFn) -> Modulus {
        Modulus(Arc::new(c))
    }

    /// `c = z` over `x, y, z`.
    pub fn tautological() -> Modulus {
        Modulus::new(RatFn::xyz("z"))
    }

    pub fn c(&self) -> &RatFn {
        &self.0
    }

    pub fn vars(&self) -> &Vars {
        self.0.vars()
    }

    pub fn elem(&self, a: RatFn, b: RatFn) -> QuadExt {
        QuadExt { a, b, c: self.0.clone() }
    }

    pub fn base(&self, a: RatFn) -> QuadExt {
        let b = RatFn::zero(a.vars());
        self.elem(a, b)
    }

    pub fn zero(&self) -> QuadExt {
        self.base(RatFn::zero(self.vars()))
    }

    pub fn one(&self) -> QuadExt {
        self.base(RatFn::one(self.vars()))
    }

    pub fn rat(&self, r: Rat) -> QuadExt {
        self.base(RatFn::constant(self.vars(), r))
    }

    pub fn u(&self) -> QuadExt {
        self.elem(RatFn::zero(self.vars()), RatFn::one(self.vars()))
    }
}

impl QuadExt {
    pub fn a(&self) -> &RatFn {
        &self.a
    }

    pub fn b(&self) -> &RatFn {
        &self.b
    }

    pub fn modulus(&self) -> Modulus {
        Modulus(self.c.clone())
    }

    pub fn vars(&self) -> &Vars {
        self.a.vars()
    }

    /// The base-field value when the `u`-component vanishes.
    pub fn to_base(&self) -> Option<&RatFn> {
        self.b.is_zero().then_some(&self.a)
    }

    fn check(&self, o: &QuadExt) -> Result<()> {
        if Arc::ptr_eq(&self.c, &o.c) || self.c == o.c {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("moduli {} vs {}", self.c, o.c)))
        }
    }

    fn with(&self, a: RatFn, b: RatFn) -> QuadExt {
        QuadExt { a, b, c: self.c.clone() }
    }

    pub fn try_add(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        Ok(self.with(self.a.try_add(&o.a)?, self.b.try_add(&o.b)?))
    }

    pub fn try_sub(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        Ok(self.with(self.a.try_sub(&o.a)?, self.b.try_sub(&o.b)?))
    }

    pub fn try_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        self.check(o)?;
        if self.b.is_zero() {
            return Ok(self.with(&self.a * &o.a, &self.a * &o.b));
        }
        if o.b.is_zero() {
            return Ok(self.with(&self.a * &o.a, &self.b * &o.a));
        }
        let bb = &self.b * &o.b;
        let a = &(&self.a * &o.a) - &bb;
        let b = &(&(&self.a * &o.b) + &(&self.b * &o.a)) - &(&*self.c * &bb);
        Ok(self.with(a, b))
    }

    pub fn scale(&self, r: &Rat) -> QuadExt {
        self.with(self.a.scale(r), self.b.scale(r))
    }

    pub fn mul_base(&self, r: &RatFn) -> QuadExt {
        self.with(&self.a * r, &self.b * r)
    }

    /// `a^2 - a*b*c + b^2`.
    pub fn norm(&self) -> RatFn {
        let ab = &self.a * &self.b;
        &(&(&self.a * &self.a) - &(&ab * &*self.c)) + &(&self.b * &self.b)
    }

    /// Conjugate `a + b*(-c - u)`.
    pub fn conj(&self) -> QuadExt {
        self.with(&self.a - &(&self.b * &*self.c), -&self.b)
    }

    /// Derivation extending `d/dv` with `u' = -c' u / (2u + c)`.
    pub fn derive(&self, var: &str) -> Result<QuadExt> {
        let i = self.vars().index_of(var)?;
        let da = self.a.derive_at(i);
        let db = self.b.derive_at(i);
        let mut out = self.with(da, db);
        if !self.b.is_zero() {
            let dc = self.c.derive_at(i);
            if !dc.is_zero() {
                let zero = self.a.zero_like();
                let one = self.a.one_like();
                let two_u_c = self.with((*self.c).clone(), one.scale(&Rat::from_integer(2.into())));
                let u = self.with(zero, one);
                let du = u.try_mul(&two_u_c.inv()?)?.mul_base(&-(&self.b * &dc));
                out = out.try_add(&du)?;
            }
        }
        Ok(out)
    }

    /// Evaluates with a numeric root `u0` of `t^2 + c(point) t + 1`.
    pub fn specialize(&self, point: &[Rat], u0: &Rat) -> Result<Rat> {
        let c = self.c.eval(point)?;
        if !(u0 * u0 + &c * u0 + Rat::from_integer(1.into())).is_zero() {
            return Err(Error::Input(format!("{u0} is not a root of the modulus")));
        }
        Ok(self.a.eval(point)? + self.b.eval(point)? * u0)
    }

    /// The symbolic pair `(a(point), b(point))`.
    pub fn specialize_pair(&self, point: &[Rat]) -> Result<(Rat, Rat)> {
        Ok((self.a.eval(point)?, self.b.eval(point)?))
    }

    /// Image in the extension of ℚ by a root of `t^2 + c(point) t + 1`.
    pub fn specialize_ext(&self, point: &[Rat], target: &Modulus) -> Result<QuadExt> {
        let vars = target.vars();
        let (a, b) = self.specialize_pair(point)?;
        Ok(target.elem(RatFn::constant(vars, a), RatFn::constant(vars, b)))
    }

    pub fn specialize_named(&self, point: &BTreeMap<String, Rat>, target: &Modulus) -> Result<QuadExt> {
        let vars = target.vars();
        let a = self.a.eval_named(point)?;
        let b = self.b.eval_named(point)?;
        Ok(target.elem(RatFn::constant(vars, a), RatFn::constant(vars, b)))
    }
}

/// The constant modulus `c(point)` over the empty variable set.
pub fn point_modulus(c: &RatFn, point: &[Rat]) -> Result<Modulus> {
    let v = c.eval(point)?;
    Ok(Modulus::new(RatFn::constant(&Vars::new(Vec::<String>::new()), v)))
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        self.with(self.a.zero_like(), self.a.zero_like())
    }
    fn one_like(&self) -> Self {
        self.with(self.a.one_like(), self.a.zero_like())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
    fn rat_like(&self, r: &Rat) -> Self {
        self.with(self.a.rat_like(r), self.a.zero_like())
    }
}

impl IntegralDomain for QuadExt {
    const IS_FIELD: bool = true;
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        Field::div(self, rhs)
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(self.with(self.a.inv()?, self.b.clone()));
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DegenerateModulus(self.to_string()));
        }
        let ni = n.inv()?;
        Ok(self.conj().mul_base(&ni))
    }
}

forward_binop!(QuadExt, Add, add, try_add);
forward_binop!(QuadExt, Sub, sub, try_sub);
forward_binop!(QuadExt, Mul, mul, try_mul);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, c: self.c }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |r: &RatFn| {
            if r.is_poly() && r.num().num_terms() == 1 {
                r.to_string()
            } else {
                format!("({r})")
            }
        };
        let single = self.b.is_poly() && self.b.num().num_terms() == 1;
        let negative = single && self.b.to_string().starts_with('-');
        let (sign, b) = if negative { ("-", -self.b.clone()) } else { ("+", self.b.clone()) };
        let bu = if b.is_one() { "u".to_string() } else { format!("{}*u", wrap(&b)) };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if negative => write!(f, "-{bu}"),
            (true, false) => write!(f, "{bu}"),
            (false, false) => write!(f, "{} {sign} {bu}", self.a),
        }
    }
}
