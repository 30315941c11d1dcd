//! Trace polynomials of words in the free group on `a`, `b`: the coordinate
//! ring of its character variety is ℚ[x, y, z] with `x = tr a`, `y = tr b`,
//! `z = tr ab`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::algebra::{rat, MPoly, Rat, Ring, Vars};
use crate::error::{Error, Result};
use crate::words::Word;

type Cache = RwLock<HashMap<Word, MPoly>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn var(gen: u8) -> MPoly {
    MPoly::xyz(if gen == 0 { "x" } else { "y" })
}

/// `T_n(t)` with `T_0 = 2`, `T_1 = t`, so that `tr(g^n) = T_n(tr g)`.
fn chebyshev(t: &MPoly, n: usize) -> MPoly {
    let mut prev = MPoly::constant(t.vars(), rat(2));
    let mut cur = t.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Trace of `w` under the tautological representation of F₂, as a
/// polynomial in `x, y, z`.
pub fn trace_polynomial(w: &Word) -> Result<MPoly> {
    if w.max_gen().is_some_and(|g| g > 1) {
        return Err(Error::Input(format!("word '{w}' is not over the generators a, b")));
    }
    Ok(trace_rec(w))
}

fn trace_rec(w: &Word) -> MPoly {
    let key = w.cyclic_canonical();
    if key.is_empty() {
        return MPoly::constant(&Vars::xyz(), rat(2));
    }
    if let Some(p) = cache().read().expect("trace cache").get(&key) {
        return p.clone();
    }
    let value = reduce(&key);
    cache()
        .write()
        .expect("trace cache")
        .entry(key)
        .or_insert(value)
        .clone()
}

fn reduce(w: &Word) -> MPoly {
    let letters = w.letters();
    let n = letters.len();
    let first = letters[0].gen;
    if letters.iter().all(|l| l.gen == first) {
        return chebyshev(&var(first), n);
    }
    let negatives = letters.iter().filter(|l| l.inverse).count();
    if negatives == n {
        return reduce(&w.inv());
    }
    if negatives > 0 {
        // tr(X l) = tr(X) tr(l) - tr(X l⁻¹), applied to a letter l of the
        // minority sign so that the minority count drops
        let minority_inverse = negatives <= n - negatives;
        let k = letters.iter().position(|l| l.inverse == minority_inverse).expect("letter");
        let r = w.rotate(k + 1);
        let l = r.letters()[n - 1];
        let x = Word::from_letters(r.letters()[..n - 1].iter().copied());
        let flipped = x.mul(&Word::from_letters([l.inv()]));
        return &(&trace_rec(&x) * &var(l.gen)) - &trace_rec(&flipped);
    }
    if n == 2 {
        return MPoly::xyz("z");
    }
    // positive word with a repeated generator: tr(gP gQ) = tr(gP) tr(gQ) - tr(P Q⁻¹)
    let g = if letters.iter().filter(|l| l.gen == 0).count() >= 2 { 0 } else { 1 };
    let i = letters.iter().position(|l| l.gen == g).expect("occurrence");
    let r = w.rotate(i);
    let j = r.letters()[1..].iter().position(|l| l.gen == g).expect("second occurrence") + 1;
    let gp = Word::from_letters(r.letters()[..j].iter().copied());
    let gq = Word::from_letters(r.letters()[j..].iter().copied());
    let p = Word::from_letters(r.letters()[1..j].iter().copied());
    let q = Word::from_letters(r.letters()[j + 1..].iter().copied());
    &(&trace_rec(&gp) * &trace_rec(&gq)) - &trace_rec(&p.mul(&q.inv()))
}

/// `tr(α)² + tr(β)² + tr(αβ)² - tr(α) tr(β) tr(αβ) - 4`.
pub fn delta(alpha: &Word, beta: &Word) -> Result<MPoly> {
    let ta = trace_polynomial(alpha)?;
    let tb = trace_polynomial(beta)?;
    let tab = trace_polynomial(&alpha.mul(beta))?;
    let four = MPoly::constant(&Vars::xyz(), rat(4));
    Ok(&(&(&(&ta * &ta) + &(&tb * &tb)) + &(&tab * &tab)) - &(&(&(&ta * &tb) * &tab) + &four))
}

/// True when some pair has nonzero Δ at the point `(x, y, z)`.
pub fn is_irreducible_at(point: &[Rat; 3], pairs: &[(Word, Word)]) -> Result<bool> {
    for (a, b) in pairs {
        if !delta(a, b)?.eval(point).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `ψ(w) + ψ(w)⁻¹` for the homomorphism to ℚ^× with `ψ(a) = psi_a`,
/// `ψ(b) = psi_b`.
pub fn reducible_character(psi_a: &Rat, psi_b: &Rat, w: &Word) -> Result<Rat> {
    if psi_a.is_zero() || psi_b.is_zero() {
        return Err(Error::Input("multiplicative character values must be nonzero".into()));
    }
    if w.max_gen().is_some_and(|g| g > 1) {
        return Err(Error::Input(format!("word '{w}' is not over the generators a, b")));
    }
    let pow = |base: &Rat, e: i64| -> Rat {
        let p = Ring::pow(base, e.unsigned_abs() as u32);
        if e < 0 {
            p.recip()
        } else {
            p
        }
    };
    let v = pow(psi_a, w.exponent_sum(0)) * pow(psi_b, w.exponent_sum(1));
    Ok(v.recip() + v)
}

/// Checks `ψ(γδ) + ψ(γ⁻¹δ) = 2ψ(γ) + 2ψ(δ)` on every pair.
pub fn check_quadratic_tangent(psi: impl Fn(&Word) -> Rat, pairs: &[(Word, Word)]) -> bool {
    let two = rat(2);
    pairs.iter().all(|(g, d)| {
        let lhs = psi(&g.mul(d)) + psi(&g.inv().mul(d));
        let rhs = &two * psi(g) + &two * psi(d);
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_mpoly, ratio};
    use crate::words::parse_f2;

    fn w(s: &str) -> Word {
        parse_f2(s).unwrap()
    }

    fn p(s: &str) -> MPoly {
        parse_mpoly(&Vars::xyz(), s).unwrap()
    }

    fn tr(s: &str) -> MPoly {
        trace_polynomial(&w(s)).unwrap()
    }

    #[test]
    fn basic_traces() {
        assert_eq!(tr(""), p("2"));
        assert_eq!(tr("abAB"), p("x^2 + y^2 + z^2 - x*y*z - 2"));
        assert_eq!(tr("aa"), p("x^2 - 2"));
        assert_eq!(tr("ab"), p("z"));
        assert_eq!(tr("aB"), p("x*y - z"));
        assert_eq!(tr("aaa"), p("x^3 - 3*x"));
        assert_eq!(tr("AAA"), tr("aaa"));
    }

    #[test]
    fn only_f2_words() {
        let c = crate::words::parse_word("ac", &['a', 'c']).unwrap();
        assert!(trace_polynomial(&c).is_err());
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(&w("a"), &w("b")).unwrap(), p("x^2 + y^2 + z^2 - x*y*z - 4"));
        assert!(delta(&w("a"), &w("a")).unwrap().is_zero());
        let d = delta(&w("a"), &w("b")).unwrap();
        assert!(d.eval(&[rat(2), rat(2), rat(2)]).is_zero());
        assert_eq!(d, &tr("abAB") - &p("2"));
    }

    #[test]
    fn irreducibility() {
        let pairs = vec![(w("a"), w("b"))];
        assert!(is_irreducible_at(&[rat(0), rat(0), rat(0)], &pairs).unwrap());
        assert!(!is_irreducible_at(&[rat(2), rat(2), rat(2)], &pairs).unwrap());
        assert!(!is_irreducible_at(&[rat(2), rat(2), rat(2)], &[]).unwrap());
    }

    #[test]
    fn reducible_characters() {
        assert_eq!(reducible_character(&rat(1), &rat(1), &w("abbA")).unwrap(), rat(2));
        assert_eq!(reducible_character(&rat(2), &rat(1), &w("a")).unwrap(), ratio(5, 2));
        assert_eq!(reducible_character(&rat(2), &rat(3), &w("abAB")).unwrap(), rat(2));
        assert!(reducible_character(&rat(0), &rat(3), &w("a")).is_err());
    }

    #[test]
    fn quadratic_tangent() {
        let sq = |u: &Word| rat(u.exponent_sum(0) * u.exponent_sum(0));
        let pairs = vec![(w("ab"), w("aaB")), (w("bA"), w("a"))];
        assert!(check_quadratic_tangent(sq, &pairs));
        let lin = |u: &Word| rat(u.exponent_sum(0));
        assert!(!check_quadratic_tangent(lin, &[(w("a"), w("a"))]));
        assert!(check_quadratic_tangent(|_| rat(0), &pairs));
    }
}
