use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gcd::gcd;
use super::mpoly::{forward_binop, MPoly, Vars};
use super::ring::{Field, IntegralDomain, Ring};
use super::Rat;
use crate::error::{Error, Result};

/// Reduced fraction of polynomials; the denominator is monic in the
/// graded-lex order.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(Error::RingMismatch("numerator and denominator variables differ".into()));
        }
        if num.is_zero() {
            return Ok(RatFn::zero(num.vars()));
        }
        if let Some(c) = den.constant_value() {
            let one = MPoly::one(den.vars());
            return Ok(RatFn { num: num.scale(&c.recip()), den: one });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.try_div_exact(&g)?, den.try_div_exact(&g)?)
        };
        Ok(RatFn::from_coprime(num, den))
    }

    fn from_coprime(num: MPoly, den: MPoly) -> RatFn {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let s = lc.recip();
            RatFn { num: num.scale(&s), den: den.scale(&s) }
        }
    }

    pub fn zero(vars: &Vars) -> RatFn {
        RatFn { num: MPoly::zero(vars), den: MPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> RatFn {
        RatFn::from_poly(MPoly::one(vars))
    }

    pub fn constant(vars: &Vars, c: Rat) -> RatFn {
        RatFn::from_poly(MPoly::constant(vars, c))
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        let den = MPoly::one(p.vars());
        RatFn { num: p, den }
    }

    /// `x`, `y` or `z` in the standard variable set.
    pub fn xyz(name: &str) -> RatFn {
        RatFn::from_poly(MPoly::xyz(name))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_poly() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn check_vars(&self, o: &RatFn) -> Result<()> {
        if self.vars() == o.vars() {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "variables {:?} vs {:?}",
                self.vars().names(),
                o.vars().names()
            )))
        }
    }

    pub fn try_add(&self, o: &RatFn) -> Result<RatFn> {
        self.check_vars(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.den == o.den {
            let num = self.num.try_add(&o.num)?;
            return RatFn::new(num, self.den.clone());
        }
        if self.is_poly() {
            let num = self.num.try_mul(&o.den)?.try_add(&o.num)?;
            return Ok(RatFn { num, den: o.den.clone() });
        }
        if o.is_poly() {
            let num = o.num.try_mul(&self.den)?.try_add(&self.num)?;
            return Ok(RatFn { num, den: self.den.clone() });
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.try_mul(&o.den)?.try_add(&self.den.try_mul(&o.num)?)?;
            let den = self.den.try_mul(&o.den)?;
            return Ok(RatFn::from_coprime(num, den));
        }
        let b1 = self.den.try_div_exact(&g)?;
        let d1 = o.den.try_div_exact(&g)?;
        let num = self.num.try_mul(&d1)?.try_add(&o.num.try_mul(&b1)?)?;
        if num.is_zero() {
            return Ok(RatFn::zero(self.vars()));
        }
        let g2 = gcd(&num, &g);
        let (num, g) = if g2.is_one() {
            (num, g)
        } else {
            (num.try_div_exact(&g2)?, g.try_div_exact(&g2)?)
        };
        let den = b1.try_mul(&d1)?.try_mul(&g)?;
        Ok(RatFn::from_coprime(num, den))
    }

    pub fn try_sub(&self, o: &RatFn) -> Result<RatFn> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &RatFn) -> Result<RatFn> {
        self.check_vars(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(RatFn::zero(self.vars()));
        }
        if self.is_poly() && o.is_poly() {
            return Ok(RatFn::from_poly(self.num.try_mul(&o.num)?));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.try_div_exact(&g1)?;
        let d = o.den.try_div_exact(&g1)?;
        let c = o.num.try_div_exact(&g2)?;
        let b = self.den.try_div_exact(&g2)?;
        Ok(RatFn::from_coprime(a.try_mul(&c)?, b.try_mul(&d)?))
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.vars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derive_at(&self, i: usize) -> RatFn {
        let dn = self.num.derive_at(i);
        if self.is_poly() {
            return RatFn::from_poly(dn);
        }
        let dd = self.den.derive_at(i);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        RatFn::new(num, den).expect("nonzero denominator")
    }

    pub fn derive(&self, var: &str) -> Result<RatFn> {
        Ok(self.derive_at(self.vars().index_of(var)?))
    }

    /// Evaluates at a full point in variable order.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_named(&self, point: &BTreeMap<String, Rat>) -> Result<Rat> {
        let d = self.den.eval_named(point)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_named(point)? / d)
    }

    pub fn embed(&self, target: &Vars) -> Result<RatFn> {
        Ok(RatFn { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> RatFn {
        RatFn::from_poly(p)
    }
}

impl Ring for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.is_poly() && self.num.is_one()
    }
    fn rat_like(&self, r: &Rat) -> Self {
        RatFn::constant(self.vars(), r.clone())
    }
}

impl IntegralDomain for RatFn {
    const IS_FIELD: bool = true;
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        Field::div(self, rhs)
    }
}

impl Field for RatFn {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::from_coprime(self.den.clone(), self.num.clone()))
    }
}

forward_binop!(RatFn, Add, add, try_add);
forward_binop!(RatFn, Sub, sub, try_sub);
forward_binop!(RatFn, Mul, mul, try_mul);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -self.num, den: self.den }
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -self.clone()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
