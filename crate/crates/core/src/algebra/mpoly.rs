use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::Signed;
use smallvec::SmallVec;

use super::rat::{fmt_rat_abs, rat};
use super::ring::{IntegralDomain, Ring};
use super::Rat;
use crate::error::{Error, Result};

/// Ordered variable names. `x`, `y`, `z` come first, anything else follows
/// alphabetically.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<[String]>);

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

fn var_rank(name: &str) -> (usize, &str) {
    match name {
        "x" => (0, ""),
        "y" => (1, ""),
        "z" => (2, ""),
        other => (3, other),
    }
}

impl Vars {
    pub fn new<I, S>(names: I) -> Vars
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort_by(|a, b| var_rank(a).cmp(&var_rank(b)));
        v.dedup();
        if v.len() == 3 && v[0] == "x" && v[1] == "y" && v[2] == "z" {
            return Vars::xyz();
        }
        Vars(v.into())
    }

    /// The shared `x, y, z` variable set.
    pub fn xyz() -> Vars {
        static XYZ: OnceLock<Vars> = OnceLock::new();
        XYZ.get_or_init(|| Vars(vec!["x".to_string(), "y".into(), "z".into()].into()))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Exponent vector, ordered graded-lexicographically with the last variable
/// most significant among equal degrees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u32) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = e;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> MPoly {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rat) -> MPoly {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> MPoly {
        MPoly::constant(vars, rat(1))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<MPoly> {
        let i = vars.index_of(name)?;
        Ok(MPoly::var_at(vars, i, 1))
    }

    pub(crate) fn var_at(vars: &Vars, i: usize, e: u32) -> MPoly {
        let mut p = MPoly::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i, e), rat(1));
        p
    }

    /// Builds from `(coefficient, exponents)` pairs; repeated monomials add up.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Rat, Vec<u32>)>,
    {
        let mut p = MPoly::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e.into()), c);
        }
        p
    }

    /// The polynomial `x`, `y` or `z` in the standard variable set.
    pub fn xyz(name: &str) -> MPoly {
        MPoly::var(&Vars::xyz(), name).expect("standard variable")
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(|| rat(0)))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(|| rat(0))
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &MPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "variables {:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )))
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = MPoly::zero(&self.vars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rat) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Multivariate division with remainder by a single divisor: returns
    /// `(q, r)` with `self = q*d + r` and no term of `r` divisible by
    /// the leading monomial of `d`.
    pub fn divrem(&self, d: &MPoly) -> Result<(MPoly, MPoly)> {
        self.check_vars(d)?;
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.recip();
        let mut q = MPoly::zero(&self.vars);
        let mut r = MPoly::zero(&self.vars);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = m.div(lm);
                let qc = &c * &lc_inv;
                p = p.try_sub(&d.mul_term(&qm, &qc))?;
                q.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient; fails as soon as the division is seen not to be exact.
    pub fn try_div_exact(&self, d: &MPoly) -> Result<MPoly> {
        self.check_vars(d)?;
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let lc_inv = lc.recip();
        let mut q = MPoly::zero(&self.vars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(Error::Structural("inexact polynomial division".into()));
            }
            let qm = m.div(lm);
            let qc = &c * &lc_inv;
            p = p.try_sub(&d.mul_term(&qm, &qc))?;
            q.add_term(qm, qc);
        }
        Ok(q)
    }

    /// True when `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &MPoly) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        for i in 0..self.vars.len() {
            if d.degree_in(i) > self.degree_in(i) && !self.is_zero() {
                return false;
            }
        }
        self.try_div_exact(d).is_ok()
    }

    pub fn derive_at(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                out.add_term(m2, c * rat(e as i64));
            }
        }
        out
    }

    pub fn derive(&self, var: &str) -> Result<MPoly> {
        Ok(self.derive_at(self.vars.index_of(var)?))
    }

    /// Evaluates at a full point given in variable order.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut powers: Vec<Vec<Rat>> = point.iter().map(|v| vec![rat(1), v.clone()]).collect();
        let mut acc = rat(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &pw[1];
                    pw.push(next);
                }
                t *= &pw[e as usize];
            }
            acc += t;
        }
        acc
    }

    /// Evaluates at a point given by name; every variable must be assigned.
    pub fn eval_named(&self, point: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut pt = Vec::with_capacity(self.vars.len());
        for n in self.vars.names() {
            pt.push(point.get(n).cloned().ok_or_else(|| Error::UnknownVariable(n.clone()))?);
        }
        Ok(self.eval(&pt))
    }

    /// Substitutes polynomials (in a common variable set) for every variable.
    pub fn compose(&self, images: &[MPoly]) -> Result<MPoly> {
        assert_eq!(images.len(), self.vars.len(), "substitution arity");
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        let mut acc = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&Ring::pow(&images[i], e))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Coefficients as a polynomial in variable `i` (index = power); the
    /// coefficients no longer involve variable `i`.
    pub(crate) fn to_univariate(&self, i: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(&self.vars); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    pub(crate) fn from_univariate(vars: &Vars, i: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(vars);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[i] += e as u32;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    /// Largest monomial dividing every term.
    pub(crate) fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    pub(crate) fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect(),
        }
    }

    pub(crate) fn from_monomial(vars: &Vars, m: Monomial) -> MPoly {
        let mut p = MPoly::zero(vars);
        p.terms.insert(m, rat(1));
        p
    }

    /// Bit mask of the variables that occur.
    pub(crate) fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    /// Reinterprets over another variable set containing all variables in use.
    pub fn embed(&self, target: &Vars) -> Result<MPoly> {
        if self.vars == *target {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Result<_>>()?;
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.len());
            for (i, &k) in m.0.iter().enumerate() {
                e.0[map[i]] = k;
            }
            out.terms.insert(e, c.clone());
        }
        Ok(out)
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        MPoly::one(&self.vars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }
    fn rat_like(&self, r: &Rat) -> Self {
        MPoly::constant(&self.vars, r.clone())
    }
}

impl IntegralDomain for MPoly {
    const IS_FIELD: bool = false;
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        self.try_div_exact(rhs)
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $m:ident, $f:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$f(&rhs).expect("ring mismatch")
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                self.$f(rhs).expect("ring mismatch")
            }
        }
        impl<'a, 'b> $tr<&'b $ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: &'b $ty) -> $ty {
                self.$f(rhs).expect("ring mismatch")
            }
        }
    };
}
pub(crate) use forward_binop;

forward_binop!(MPoly, Add, add, try_add);
forward_binop!(MPoly, Sub, sub, try_sub);
forward_binop!(MPoly, Mul, mul, try_mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

/// Display order: largest single exponent first, then total degree, then
/// lexicographic with the first variable most significant; constants last.
fn display_key(m: &Monomial) -> (u32, u32, SmallVec<[u32; 4]>) {
    (m.0.iter().copied().max().unwrap_or(0), m.degree(), m.0.clone())
}

fn fmt_monomial(vars: &Vars, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.names()[i].clone()),
            _ => parts.push(format!("{}^{}", vars.names()[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|t| std::cmp::Reverse(display_key(t.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(&self.vars, m);
            let abs = fmt_rat_abs(c);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if c.abs().is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form: sums of `c*v^e*...` terms with integer or
/// `p/q` coefficients. Parentheses are not supported.
pub fn parse_mpoly(vars: &Vars, s: &str) -> Result<MPoly> {
    let bad = |why: &str| Error::Input(format!("cannot parse polynomial '{s}': {why}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut out = MPoly::zero(vars);
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(rest) => (-rat(1), rest),
            None => (rat(1), chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        let mut coeff = sign;
        let mut mono = Monomial::one(vars.len());
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= super::rat::parse_rat(factor)?;
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            let i = vars.index_of(name)?;
            mono.0[i] += e;
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::ratio;

    fn p(s: &str) -> MPoly {
        parse_mpoly(&Vars::xyz(), s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x + 1") * p("x - 1"), p("x^2 - 1"));
    }

    #[test]
    fn commutator_trace_prints_in_canonical_order() {
        let q = p("-2 - x*y*z + z^2 + y^2 + x^2");
        assert_eq!(q.to_string(), "x^2 + y^2 + z^2 - x*y*z - 2");
    }

    #[test]
    fn display_fractions_and_signs() {
        assert_eq!(p("-1/2*x + 3/4").to_string(), "-1/2*x + 3/4");
        assert_eq!(MPoly::zero(&Vars::xyz()).to_string(), "0");
        assert_eq!(p("-x").to_string(), "-x");
    }

    #[test]
    fn grlex_leading_term() {
        let q = p("x^2 + x*y*z + z");
        assert_eq!(q.leading().unwrap().0.exps(), &[1, 1, 1]);
        let q = p("x^2 + y^2");
        assert_eq!(q.leading().unwrap().0.exps(), &[0, 2, 0]);
    }

    #[test]
    fn derivative_and_eval() {
        assert_eq!(p("x^2*y").derive("x").unwrap(), p("2*x*y"));
        assert!(matches!(p("x").derive("w"), Err(Error::UnknownVariable(_))));
        let d = p("x^2 + y^2 + z^2 - x*y*z - 4");
        assert_eq!(d.eval(&[rat(0), rat(0), rat(0)]), rat(-4));
        assert_eq!(d.eval(&[rat(2), rat(2), rat(2)]), rat(0));
        assert_eq!(p("z^2 - 4").eval(&[rat(0), rat(0), rat(3)]), rat(5));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2*y - y^3 + z*x - z*y");
        let b = p("x - y");
        assert_eq!(a.try_div_exact(&b).unwrap(), p("x*y + y^2 + z"));
        assert!(p("x^2 + 1").try_div_exact(&b).is_err());
        let (q, r) = p("x^2 + 1").divrem(&p("x + 1")).unwrap();
        assert_eq!(q * p("x + 1") + r.clone(), p("x^2 + 1"));
        assert_eq!(r, p("2"));
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let other = Vars::new(["x", "w"]);
        let a = MPoly::var(&other, "w").unwrap();
        assert!(matches!(a.try_add(&p("x")), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn parse_round_trip() {
        let q = p("3/2*x^3*y - 7*z + 1/3");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(q.leading_coeff(), ratio(3, 2));
    }

    #[test]
    fn compose_substitutes() {
        let q = p("x*y + z");
        let r = q.compose(&[p("z"), p("y*z - x"), p("x")]).unwrap();
        assert_eq!(r, p("y*z^2 - x*z + x"));
    }
}
