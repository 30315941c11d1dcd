//! Representations into SL2 and their reconstruction from character values.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::quadext::point_modulus;
use crate::algebra::{rat, Field, Matrix, Modulus, QuadExt, Rat, RatFn, Ring};
use crate::error::{Error, Result};
use crate::skein::trace_polynomial;
use crate::words::{Letter, Word};

/// Inverse of a 2×2 matrix of determinant 1.
pub fn sl2_inverse<R: Ring>(m: &Matrix<R>) -> Matrix<R> {
    let mut out = m.clone();
    out[(0, 0)] = m[(1, 1)].clone();
    out[(1, 1)] = m[(0, 0)].clone();
    out[(0, 1)] = -m[(0, 1)].clone();
    out[(1, 0)] = -m[(1, 0)].clone();
    out
}

pub fn det2<R: Ring>(m: &Matrix<R>) -> R {
    m[(0, 0)].clone() * &m[(1, 1)] - m[(0, 1)].clone() * &m[(1, 0)]
}

/// A homomorphism from a free group to SL2(R), given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<R> {
    images: BTreeMap<char, (Matrix<R>, Matrix<R>)>,
    like: R,
}

impl<R: Ring> Rep<R> {
    pub fn new(images: Vec<(char, Matrix<R>)>) -> Result<Rep<R>> {
        let like = images
            .first()
            .map(|(_, m)| m.zero_elem().clone())
            .ok_or_else(|| Error::Input("representation needs at least one generator".into()))?;
        let mut map = BTreeMap::new();
        for (g, m) in images {
            if m.rows() != 2 || m.cols() != 2 {
                return Err(Error::Structural(format!("image of '{g}' is not 2x2")));
            }
            if !det2(&m).is_one() {
                return Err(Error::InconsistentInput(format!("image of '{g}' does not have determinant 1")));
            }
            let inv = sl2_inverse(&m);
            map.insert(g, (m, inv));
        }
        Ok(Rep { images: map, like })
    }

    pub fn generators(&self) -> impl Iterator<Item = char> + '_ {
        self.images.keys().copied()
    }

    pub fn like(&self) -> &R {
        &self.like
    }

    pub fn image(&self, g: char) -> Result<&Matrix<R>> {
        self.images.get(&g).map(|p| &p.0).ok_or(Error::UndeclaredGenerator(g))
    }

    pub fn letter(&self, l: Letter) -> Result<&Matrix<R>> {
        let (m, mi) = self.images.get(&l.gen_char()).ok_or(Error::UndeclaredGenerator(l.to_char()))?;
        Ok(if l.inverse { mi } else { m })
    }

    pub fn eval(&self, w: &Word) -> Result<Matrix<R>> {
        let mut acc = Matrix::identity(2, &self.like);
        for &l in w.letters() {
            acc = acc.try_mul(self.letter(l)?)?;
        }
        Ok(acc)
    }

    pub fn trace(&self, w: &Word) -> Result<R> {
        Ok(self.eval(w)?.trace())
    }

    pub fn map<S: Ring>(&self, like: &S, f: impl Fn(&R) -> Result<S>) -> Result<Rep<S>> {
        let images = self
            .images
            .iter()
            .map(|(g, (m, _))| Ok((*g, m.try_map(like, &f)?)))
            .collect::<Result<Vec<_>>>()?;
        Rep::new(images)
    }
}

/// Modulus, `A = [[x, -1], [1, 0]]` and `B = [[0, -u⁻¹], [u, y]]` over
/// `K = ℚ(x, y, z)[u]/(u² + z u + 1)`; note `-u⁻¹ = z + u`.
pub fn tautological_rep() -> Rep<QuadExt> {
    let k = Modulus::tautological();
    matrices_for(&k, k.base(RatFn::xyz("x")), k.base(RatFn::xyz("y")), k.base(RatFn::xyz("z")))
}

fn matrices_for(k: &Modulus, x: QuadExt, y: QuadExt, z: QuadExt) -> Rep<QuadExt> {
    let a = Matrix::from_rows(vec![vec![x, -k.one()], vec![k.one(), k.zero()]]).expect("2x2");
    let b = Matrix::from_rows(vec![vec![k.zero(), z + &k.u()], vec![k.u(), y]]).expect("2x2");
    Rep::new(vec![('a', a), ('b', b)]).expect("determinant one")
}

/// The tautological matrices at a rational character `(x, y, z)`, over ℚ
/// adjoined a root of `u² + z u + 1`.
pub fn rep_at_point(point: &[Rat; 3]) -> Rep<QuadExt> {
    let k = point_modulus(&RatFn::xyz("z"), point).expect("polynomial modulus");
    let c = |r: &Rat| k.rat(r.clone());
    matrices_for(&k, c(&point[0]), c(&point[1]), c(&point[2]))
}

/// Specializes a representation over `K` to a rational point.
pub fn specialize_rep(rep: &Rep<QuadExt>, point: &[Rat; 3]) -> Result<Rep<QuadExt>> {
    let k = point_modulus(rep.like().modulus().c(), point)?;
    let like = k.zero();
    rep.map(&like, |v| v.specialize_ext(point, &k))
}

type Oracle<R> = Arc<dyn Fn(&Word) -> Result<R> + Send + Sync>;

/// Character oracle: a function from words to ring elements.
#[derive(Clone)]
pub struct Character<R>(Oracle<R>);

impl<R> Character<R> {
    pub fn new(f: impl Fn(&Word) -> Result<R> + Send + Sync + 'static) -> Character<R> {
        Character(Arc::new(f))
    }

    pub fn value(&self, w: &Word) -> Result<R> {
        (self.0)(w)
    }
}

impl<R> fmt::Debug for Character<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character(..)")
    }
}

/// The generic character `w ↦ trace_polynomial(w)` with values in `K`.
pub fn tautological_character() -> Character<QuadExt> {
    let k = Modulus::tautological();
    Character::new(move |w| Ok(k.base(RatFn::from_poly(trace_polynomial(w)?))))
}

/// Trace polynomials evaluated at a rational point, embedded in `like`'s ring.
pub fn point_character(point: [Rat; 3], like: QuadExt) -> Character<QuadExt> {
    Character::new(move |w| Ok(like.rat_like(&trace_polynomial(w)?.eval(&point))))
}

/// The 4×4 trace system in the basis `(1, α, β, αβ)`.
#[derive(Clone, Debug)]
pub struct SaitoSystem<R> {
    basis_words: [Word; 4],
    basis: [Matrix<R>; 4],
    m: Matrix<R>,
    m_inv: Matrix<R>,
    delta: R,
    phi: Character<R>,
}

impl<R: Field> SaitoSystem<R> {
    pub fn new(phi: Character<R>, alpha: &Word, beta: &Word, a: Matrix<R>, b: Matrix<R>) -> Result<SaitoSystem<R>> {
        let like = a.zero_elem().clone();
        let ta = phi.value(alpha)?;
        let tb = phi.value(beta)?;
        let ab_word = alpha.mul(beta);
        let tab = phi.value(&ab_word)?;
        let ab = a.try_mul(&b)?;
        for (name, m, t) in [("α", &a, &ta), ("β", &b, &tb), ("αβ", &ab, &tab)] {
            if m.trace() != *t {
                return Err(Error::InconsistentSeed(format!("trace of the seed matrix for {name} differs from the character")));
            }
        }
        let delta = ta.clone() * &ta + &(tb.clone() * &tb) + &(tab.clone() * &tab)
            - (ta.clone() * &tb * &tab)
            - like.rat_like(&rat(4));
        if delta.is_zero() {
            return Err(Error::DegenerateCharacter("Δ vanishes, the character is reducible".into()));
        }
        let basis_words = [Word::empty(), alpha.clone(), beta.clone(), ab_word];
        let basis = [Matrix::identity(2, &like), a, b, ab];
        let mut rows = Vec::with_capacity(4);
        for gi in &basis_words {
            let mut row = Vec::with_capacity(4);
            for gj in &basis_words {
                row.push(phi.value(&gi.mul(gj))?);
            }
            rows.push(row);
        }
        let m = Matrix::from_rows(rows)?;
        let det = m.det()?;
        if det != -(delta.clone() * &delta) {
            return Err(Error::InvariantViolation("det M differs from -Δ²".into()));
        }
        let m_inv = m.adjugate()?.scale(&det.inv()?);
        Ok(SaitoSystem { basis_words, basis, m, m_inv, delta, phi })
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.m
    }

    pub fn inverse(&self) -> &Matrix<R> {
        &self.m_inv
    }

    pub fn delta(&self) -> &R {
        &self.delta
    }

    pub fn basis_words(&self) -> &[Word; 4] {
        &self.basis_words
    }

    /// Coordinates `C_γ = M⁻¹ T_γ` of `ρ(γ)` in the basis.
    pub fn coefficients(&self, gamma: &Word) -> Result<Vec<R>> {
        let t = self
            .basis_words
            .iter()
            .map(|gi| self.phi.value(&gamma.mul(gi)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.m_inv.mul_vec(&t))
    }

    pub fn reconstruct(&self, gamma: &Word) -> Result<Matrix<R>> {
        let c = self.coefficients(gamma)?;
        let mut acc = Matrix::zeros(2, 2, self.m.zero_elem());
        for (ci, bi) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                acc = acc.try_add(&bi.scale(ci))?;
            }
        }
        Ok(acc)
    }
}

/// The tautological system with `α = a`, `β = b`.
pub fn tautological_system() -> SaitoSystem<QuadExt> {
    let rep = tautological_rep();
    let a = rep.image('a').expect("a").clone();
    let b = rep.image('b').expect("b").clone();
    SaitoSystem::new(tautological_character(), &Word::generator(0), &Word::generator(1), a, b)
        .expect("generic character is irreducible")
}

/// The system at a rational character `(x, y, z)`.
pub fn system_at_point(point: &[Rat; 3]) -> Result<SaitoSystem<QuadExt>> {
    let rep = rep_at_point(point);
    let phi = point_character(point.clone(), rep.like().clone());
    let a = rep.image('a')?.clone();
    let b = rep.image('b')?.clone();
    SaitoSystem::new(phi, &Word::generator(0), &Word::generator(1), a, b)
}
