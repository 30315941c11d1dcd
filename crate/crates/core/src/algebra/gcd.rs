//! Multivariate gcd over ℚ by subresultant remainder sequences, recursing
//! on contents with respect to the main variable.

use num_integer::Integer;
use num_traits::Zero;

use super::mpoly::{MPoly, Vars};
use super::ring::Ring;

type UPoly = Vec<MPoly>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> usize {
    p.len() - 1
}

fn lc(p: &UPoly) -> &MPoly {
    p.last().expect("nonzero")
}

fn div_coeffs(p: &UPoly, d: &MPoly) -> UPoly {
    if d.is_one() {
        return p.clone();
    }
    p.iter()
        .map(|c| c.try_div_exact(d).expect("exact coefficient division"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = deg(b);
    let lcb = lc(b);
    let mut r = a.clone();
    let mut k = (deg(a) + 1 - db) as u32;
    while !r.is_empty() && deg(&r) >= db {
        let s = deg(&r) - db;
        let lr = lc(&r).clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + s] = &r[i + s] - &t;
        }
        trim(&mut r);
        k -= 1;
    }
    if k > 0 && !r.is_empty() {
        let f = lcb.pow(k);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn content(p: &UPoly) -> MPoly {
    let mut g = MPoly::zero(p[0].vars());
    for c in p {
        g = gcd(&g, c);
        if g.is_constant() {
            return MPoly::one(g.vars());
        }
    }
    g
}

/// Gcd of primitive polynomials of positive degree.
fn subresultant(a: UPoly, b: UPoly) -> UPoly {
    let vars = a[0].vars().clone();
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let mut g = MPoly::one(&vars);
    let mut h = MPoly::one(&vars);
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if deg(&r) == 0 {
            return vec![MPoly::one(&vars)];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = div_coeffs(&r, &divisor);
        g = lc(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .try_div_exact(&h.pow(delta - 1))
                .expect("subresultant h update"),
        };
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return MPoly::one(&vars);
    }
    if a == b {
        return a.monic();
    }
    let ma = a.monomial_content().expect("nonzero");
    let mb = b.monomial_content().expect("nonzero");
    let mono = MPoly::from_monomial(&vars, ma.gcd(&mb));
    let a = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };
    mono.try_mul(&gcd_no_monomial(&a, &b, &vars))
        .expect("same variables")
        .monic()
}

fn gcd_no_monomial(a: &MPoly, b: &MPoly, vars: &Vars) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one(vars);
    }
    if a.num_terms() <= b.num_terms() && b.divisible_by(a) {
        return a.monic();
    }
    if b.num_terms() <= a.num_terms() && a.divisible_by(b) {
        return b.monic();
    }
    let (sa, sb) = (a.support_mask(), b.support_mask());
    if sa & sb == 0 {
        return MPoly::one(vars);
    }
    let v = 63 - (sa | sb).leading_zeros() as usize;
    if sb & (1 << v) == 0 {
        return gcd(&content(&a.to_univariate(v)), b);
    }
    if sa & (1 << v) == 0 {
        return gcd(a, &content(&b.to_univariate(v)));
    }
    let ua = a.scale(&integer_scale(a)).to_univariate(v);
    let ub = b.scale(&integer_scale(b)).to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let pa = div_coeffs(&ua, &ca);
    let pb = div_coeffs(&ub, &cb);
    let c = gcd(&ca, &cb);
    let g = subresultant(pa, pb);
    let g = if g.len() == 1 { g } else { div_coeffs(&g, &content(&g)) };
    let prim = MPoly::from_univariate(vars, v, &g);
    (&prim * &c).monic()
}

/// Gcd of a collection; monic, zero for an all-zero input.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a MPoly>>(vars: &Vars, it: I) -> MPoly {
    let mut g = MPoly::zero(vars);
    for p in it {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Numerator/denominator rescaling that clears rational coefficients.
fn integer_scale(p: &MPoly) -> super::Rat {
    let mut l = num_bigint::BigInt::from(1);
    let mut g = num_bigint::BigInt::zero();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
        g = g.gcd(c.numer());
    }
    if g.is_zero() {
        return super::Rat::from_integer(1.into());
    }
    super::Rat::new(l, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::parse_mpoly;

    fn p(s: &str) -> MPoly {
        parse_mpoly(&Vars::xyz(), s).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        assert_eq!(gcd(&p("x^2 - 1"), &p("x^2 + 2*x + 1")), p("x + 1"));
        assert_eq!(gcd(&p("x^2 + 1"), &p("x + 1")), p("1"));
    }

    #[test]
    fn multivariate_gcd() {
        let f = p("x*y - z^2 + 3");
        let a = &f * &p("x + y*z - 1");
        let b = &f * &p("x^2 - y + z^3");
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn gcd_with_monomial_factors_and_scaling() {
        let a = p("6*x^2*y*z - 6*x*y*z^2");
        let b = p("4*x*z^3 - 4*x^2*z^2");
        assert_eq!(gcd(&a, &b), p("x^2*z - x*z^2").monic());
        assert_eq!(gcd(&p("2*x"), &p("0")), p("x"));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert_eq!(gcd(&p("z^2 - 4"), &p("x^2 + y^2 + z^2 - x*y*z - 4")), p("1"));
    }

    #[test]
    fn gcd_high_degree_cofactors() {
        let f = p("x^2 + y^2 + z^2 - x*y*z - 4");
        let a = &(&f * &f) * &p("z - 2");
        let b = &f * &p("z^2 - 4") * p("x - y");
        assert_eq!(gcd(&a, &b), (&f * &p("z - 2")).monic());
    }

    #[test]
    fn integer_scale_clears_denominators() {
        let q = p("3/4*x + 9/2");
        assert_eq!(q.scale(&integer_scale(&q)), p("x + 6"));
    }
}
