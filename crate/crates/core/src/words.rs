//! Free-group words, finite presentations and Fox derivatives.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::rat::fmt_rat_abs;
use crate::algebra::Rat;
use crate::error::{Error, Result};

/// A generator (`0` for `a`, `1` for `b`, ...) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u8, inverse: bool) -> Letter {
        assert!(gen < 26, "generator index out of range");
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.gen) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        if !c.is_ascii_alphabetic() {
            return None;
        }
        let gen = c.to_ascii_lowercase() as u8 - b'a';
        Some(Letter { gen, inverse: c.is_ascii_uppercase() })
    }

    pub fn gen_char(self) -> char {
        (b'a' + self.gen) as char
    }
}

/// Freely reduced word. Ordered by length, then letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn generator(gen: u8) -> Word {
        Word(vec![Letter::new(gen, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Conjugate `g w g^-1`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inv())
    }

    pub fn exponent_sum(&self, gen: u8) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    /// Strips inverse pairs from the two ends.
    pub fn cyclically_reduce(&self) -> Word {
        let mut s = 0;
        let mut e = self.0.len();
        while e >= s + 2 && self.0[s] == self.0[e - 1].inv() {
            s += 1;
            e -= 1;
        }
        Word(self.0[s..e].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let n = v.len();
            v.rotate_left(k % n);
        }
        Word(v)
    }

    /// Least rotation of the cyclic reduction of `self` and of its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduce();
        let wi = w.inv();
        let n = w.len();
        let mut best = w.clone();
        for cand in [&w, &wi] {
            for k in 0..n.max(1) {
                let r = cand.rotate(k);
                if r.0 < best.0 {
                    best = r;
                }
            }
        }
        best
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<u8> {
        self.0.iter().map(|l| l.gen).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Parses a word over the declared lowercase generators; uppercase letters
/// are inverses.
pub fn parse_word(s: &str, generators: &[char]) -> Result<Word> {
    let mut letters = Vec::with_capacity(s.len());
    for c in s.chars() {
        let l = Letter::from_char(c).ok_or_else(|| Error::Input(format!("invalid letter '{c}' in word '{s}'")))?;
        if !generators.contains(&l.gen_char()) {
            return Err(Error::UndeclaredGenerator(c));
        }
        letters.push(l);
    }
    Ok(Word::from_letters(letters))
}

/// Parses a word over `a` and `b`.
pub fn parse_f2(s: &str) -> Result<Word> {
    parse_word(s, &['a', 'b'])
}

/// Finite linear combination of group elements with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, Rat>,
}

impl GroupRingElem {
    pub fn zero() -> GroupRingElem {
        GroupRingElem::default()
    }

    pub fn one() -> GroupRingElem {
        GroupRingElem::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> GroupRingElem {
        let mut e = GroupRingElem::zero();
        e.add_term(w, Rat::one());
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &GroupRingElem) -> GroupRingElem {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, o: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, g: &Word) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (w, c) in &self.terms {
            out.add_term(g.mul(w), c.clone());
        }
        out
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = fmt_rat_abs(c);
            match (w.is_empty(), abs == "1") {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{w}")?,
                (false, false) => write!(f, "{abs}*{w}")?,
            }
        }
        Ok(())
    }
}

/// Fox derivative `∂w/∂g`.
pub fn fox_derivative(w: &Word, gen: u8) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let letters = w.letters();
    for (i, l) in letters.iter().enumerate() {
        if l.gen != gen {
            continue;
        }
        if l.inverse {
            out.add_term(Word(letters[..=i].to_vec()), -Rat::one());
        } else {
            out.add_term(Word(letters[..i].to_vec()), Rat::one());
        }
    }
    out
}

/// A boundary component, recorded by a peripheral word and the genus of the
/// boundary surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCurve {
    pub name: String,
    pub word: Word,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<char>,
    relators: Vec<Word>,
    boundary: Vec<BoundaryCurve>,
}

impl Presentation {
    pub fn new(generators: Vec<char>, relators: Vec<Word>, boundary: Vec<BoundaryCurve>) -> Result<Presentation> {
        for (i, g) in generators.iter().enumerate() {
            if !g.is_ascii_lowercase() {
                return Err(Error::Input(format!("generator '{g}' must be a lowercase letter")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Input(format!("generator '{g}' declared twice")));
            }
        }
        let check = |w: &Word| -> Result<()> {
            for l in w.letters() {
                if !generators.contains(&l.gen_char()) {
                    return Err(Error::UndeclaredGenerator(l.to_char()));
                }
            }
            Ok(())
        };
        relators.iter().try_for_each(check)?;
        for b in &boundary {
            check(&b.word)?;
            if b.genus == 0 {
                return Err(Error::Input(format!("boundary '{}' must have positive genus", b.name)));
            }
        }
        Ok(Presentation { generators, relators, boundary })
    }

    /// Parses generator, relator and boundary strings.
    pub fn parse(generators: &[&str], relators: &[&str], boundary: &[(&str, &str, u32)]) -> Result<Presentation> {
        let mut gens = Vec::new();
        for g in generators {
            let mut it = g.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => gens.push(c),
                _ => return Err(Error::Input(format!("generator '{g}' must be a single letter"))),
            }
        }
        let rels = relators.iter().map(|r| parse_word(r, &gens)).collect::<Result<_>>()?;
        let bnd = boundary
            .iter()
            .map(|(n, w, g)| Ok(BoundaryCurve { name: n.to_string(), word: parse_word(w, &gens)?, genus: *g }))
            .collect::<Result<_>>()?;
        Presentation::new(gens, rels, bnd)
    }

    /// Free group on `a`, `b`.
    pub fn free_f2() -> Presentation {
        Presentation::new(vec!['a', 'b'], vec![], vec![]).expect("valid")
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn boundary(&self) -> &[BoundaryCurve] {
        &self.boundary
    }

    pub fn gen_index(&self, g: char) -> Option<usize> {
        self.generators.iter().position(|&c| c == g)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word(s, &self.generators)
    }

    /// Expected dimension `Σ max(1, 3g - 3)` over boundary components.
    pub fn expected_dimension(&self) -> u32 {
        self.boundary.iter().map(|b| (3 * b.genus).saturating_sub(3).max(1)).sum()
    }
}
