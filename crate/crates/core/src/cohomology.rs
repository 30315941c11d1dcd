//! The adjoint module sl2, twisted cochain complexes of presentations and
//! tangent cocycles.

use std::collections::BTreeMap;

use crate::algebra::{rat, Field, Matrix, QuadExt, Ring};
use crate::error::{Error, Result};
use crate::saito::{sl2_inverse, Rep};
use crate::words::{fox_derivative, GroupRingElem, Presentation, Word};

/// Trace-zero 2×2 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Elem<R> {
    m: Matrix<R>,
}

impl<R: Ring> Sl2Elem<R> {
    pub fn new(m: Matrix<R>) -> Result<Sl2Elem<R>> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Structural("sl2 element must be 2x2".into()));
        }
        if !m.trace().is_zero() {
            return Err(Error::InvariantViolation("sl2 element with nonzero trace".into()));
        }
        Ok(Sl2Elem { m })
    }

    pub fn zero(like: &R) -> Sl2Elem<R> {
        Sl2Elem { m: Matrix::zeros(2, 2, like) }
    }

    /// `p h + q e + r (f/2)`, i.e. `[[p, q], [r/2, -p]]`.
    pub fn from_coords(c: &[R]) -> Sl2Elem<R> {
        let half = c[2].rat_like(&crate::algebra::ratio(1, 2));
        let m = Matrix::from_rows(vec![
            vec![c[0].clone(), c[1].clone()],
            vec![c[2].clone() * &half, -c[0].clone()],
        ])
        .expect("2x2");
        Sl2Elem { m }
    }

    /// Coordinates in the basis `(h, e, f/2)`.
    pub fn coords(&self) -> [R; 3] {
        let two = self.m[(0, 0)].rat_like(&rat(2));
        [self.m[(0, 0)].clone(), self.m[(0, 1)].clone(), self.m[(1, 0)].clone() * &two]
    }

    /// `h`, `e`, `f/2`.
    pub fn basis(like: &R) -> [Sl2Elem<R>; 3] {
        let z = like.zero_like();
        let o = like.one_like();
        [
            Sl2Elem::from_coords(&[o.clone(), z.clone(), z.clone()]),
            Sl2Elem::from_coords(&[z.clone(), o.clone(), z.clone()]),
            Sl2Elem::from_coords(&[z.clone(), z, o]),
        ]
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, o: &Sl2Elem<R>) -> Sl2Elem<R> {
        Sl2Elem { m: self.m.try_add(&o.m).expect("2x2") }
    }

    pub fn sub(&self, o: &Sl2Elem<R>) -> Sl2Elem<R> {
        Sl2Elem { m: self.m.try_sub(&o.m).expect("2x2") }
    }

    pub fn neg(&self) -> Sl2Elem<R> {
        Sl2Elem { m: self.m.neg() }
    }

    pub fn scale(&self, s: &R) -> Sl2Elem<R> {
        Sl2Elem { m: self.m.scale(s) }
    }

    pub fn bracket(&self, o: &Sl2Elem<R>) -> Sl2Elem<R> {
        let m = (&self.m * &o.m).try_sub(&(&o.m * &self.m)).expect("2x2");
        Sl2Elem { m }
    }

    /// `tr(self · o)`.
    pub fn pairing(&self, o: &Sl2Elem<R>) -> R {
        (&self.m * &o.m).trace()
    }
}

/// `X - ½ tr(X) Id`.
pub fn project_traceless<R: Ring>(x: &Matrix<R>) -> Sl2Elem<R> {
    let t = x.trace();
    let half = t.rat_like(&crate::algebra::ratio(1, 2)) * &t;
    let mut m = x.clone();
    m[(0, 0)] = m[(0, 0)].clone() - &half;
    m[(1, 1)] = m[(1, 1)].clone() - &half;
    Sl2Elem { m }
}

/// `g⁻¹ ξ g` for `g` of determinant 1.
pub fn adjoint_action<R: Ring>(g: &Matrix<R>, xi: &Sl2Elem<R>) -> Sl2Elem<R> {
    let gi = sl2_inverse(g);
    Sl2Elem { m: &(&gi * &xi.m) * g }
}

/// `g ξ g⁻¹`.
fn conj_left<R: Ring>(g: &Matrix<R>, xi: &Sl2Elem<R>) -> Sl2Elem<R> {
    let gi = sl2_inverse(g);
    Sl2Elem { m: &(g * &xi.m) * &gi }
}

/// `ε(ζ, η, θ) = tr(ζ [η, θ])`.
pub fn killing_volume<R: Ring>(zeta: &Sl2Elem<R>, eta: &Sl2Elem<R>, theta: &Sl2Elem<R>) -> R {
    zeta.pairing(&eta.bracket(theta))
}

/// 3×3 matrix of a linear map of sl2 in the `(h, e, f/2)` basis.
fn operator_matrix<R: Ring>(like: &R, f: impl Fn(&Sl2Elem<R>) -> Sl2Elem<R>) -> Matrix<R> {
    let cols: Vec<Vec<R>> = Sl2Elem::basis(like).iter().map(|b| f(b).coords().to_vec()).collect();
    Matrix::from_columns(&cols, 3, like)
}

/// Cochain complex `C⁰ → C¹ → ...` with the standard basis in every degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedComplex<R> {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    diffs: Vec<Matrix<R>>,
}

impl<R: Field> BasedComplex<R> {
    /// `diffs[i]` maps degree `i` to degree `i + 1`; compositions must vanish.
    pub fn new(labels: Vec<Vec<String>>, diffs: Vec<Matrix<R>>) -> Result<BasedComplex<R>> {
        let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
        if diffs.len() + 1 != dims.len() {
            return Err(Error::Structural("need one differential between consecutive degrees".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::Structural(format!(
                    "d{} has shape {}x{}, expected {}x{}",
                    i,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].try_mul(&diffs[i - 1])?.is_zero() {
                return Err(Error::InvariantViolation(format!("d{} ∘ d{} is not zero", i, i - 1)));
            }
        }
        Ok(BasedComplex { dims, labels, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn differential(&self, i: usize) -> &Matrix<R> {
        &self.diffs[i]
    }

    pub fn differentials(&self) -> &[Matrix<R>] {
        &self.diffs
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn ranks(&self) -> Result<Vec<usize>> {
        self.diffs.iter().map(Matrix::rank).collect()
    }

    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        let ranks = self.ranks()?;
        Ok((0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect())
    }

    /// Cocycles of degree `i` whose classes form a basis of `Hⁱ`: the echelon
    /// kernel vectors that are independent of the image of `d^{i-1}`.
    pub fn cohomology_basis(&self, i: usize) -> Result<Vec<Vec<R>>> {
        let like = self.like();
        let n = self.dims[i];
        let kernel = match self.diffs.get(i) {
            Some(d) => d.kernel_basis()?,
            None => identity_columns(n, &like),
        };
        let image: Vec<Vec<R>> = if i > 0 {
            let d = &self.diffs[i - 1];
            (0..d.cols()).map(|j| d.column(j)).collect()
        } else {
            Vec::new()
        };
        let mut cols = image.clone();
        cols.extend(kernel.iter().cloned());
        let (_, pivots) = Matrix::from_columns(&cols, n, &like).rref()?;
        Ok(pivots
            .into_iter()
            .filter(|&p| p >= image.len())
            .map(|p| kernel[p - image.len()].clone())
            .collect())
    }

    pub fn like(&self) -> R {
        self.diffs
            .first()
            .map(|d| d.zero_elem().clone())
            .expect("complex with at least one differential")
    }

    /// Reorders the basis of every degree: new vector `k` of degree `i` is old
    /// vector `perms[i][k]`.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> Result<BasedComplex<R>> {
        if perms.len() != self.dims.len() {
            return Err(Error::Structural("one permutation per degree".into()));
        }
        for (p, &n) in perms.iter().zip(&self.dims) {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
                return Err(Error::Structural("not a permutation".into()));
            }
        }
        let labels = perms
            .iter()
            .zip(&self.labels)
            .map(|(p, l)| p.iter().map(|&k| l[k].clone()).collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| d.submatrix(&perms[i + 1], &perms[i]))
            .collect();
        BasedComplex::new(labels, diffs)
    }

    pub fn map<S: Field>(&self, like: &S, f: impl Fn(&R) -> Result<S>) -> Result<BasedComplex<S>> {
        let diffs = self.diffs.iter().map(|d| d.try_map(like, &f)).collect::<Result<Vec<_>>>()?;
        BasedComplex::new(self.labels.clone(), diffs)
    }
}

fn identity_columns<R: Ring>(n: usize, like: &R) -> Vec<Vec<R>> {
    (0..n)
        .map(|j| (0..n).map(|i| if i == j { like.one_like() } else { like.zero_like() }).collect())
        .collect()
}

fn cell_labels(cells: &[String]) -> Vec<String> {
    cells
        .iter()
        .flat_map(|c| ["h", "e", "f/2"].into_iter().map(move |b| format!("{c}.{b}")))
        .collect()
}

/// `Σ c_w ρ(w) ξ ρ(w)⁻¹` as a 3×3 matrix.
fn group_ring_operator<R: Ring>(rep: &Rep<R>, e: &GroupRingElem) -> Result<Matrix<R>> {
    let like = rep.like().clone();
    let mut acc = Matrix::zeros(3, 3, &like);
    for (w, c) in e.terms() {
        let g = rep.eval(w)?;
        let op = operator_matrix(&like, |xi| conj_left(&g, xi));
        acc = acc.try_add(&op.scale(&like.rat_like(c)))?;
    }
    Ok(acc)
}

fn d0_block<R: Ring>(g: &Matrix<R>, like: &R) -> Matrix<R> {
    operator_matrix(like, |xi| adjoint_action(g, xi).sub(xi))
}

fn place<R: Ring>(target: &mut Matrix<R>, block: &Matrix<R>, r0: usize, c0: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            target[(r0 + i, c0 + j)] = block[(i, j)].clone();
        }
    }
}

/// Cochain complex of the presentation 2-complex with coefficients in the
/// adjoint representation, right-twisted: `d⁰ξ = (ρ(g)⁻¹ξρ(g) - ξ)_g` and
/// `(d¹ψ)_r = ψ(r)`, assembled from Fox derivatives.
pub fn presentation_complex<R: Field>(p: &Presentation, rep: &Rep<R>) -> Result<BasedComplex<R>> {
    let like = rep.like().clone();
    let id = Matrix::identity(2, &like);
    for r in p.relators() {
        if rep.eval(r)? != id {
            return Err(Error::InconsistentInput(format!("relator {r} is not sent to the identity")));
        }
    }
    let gens = p.generators();
    let n = gens.len();
    let m = p.relators().len();
    let mut d0 = Matrix::zeros(3 * n, 3, &like);
    for (j, &g) in gens.iter().enumerate() {
        place(&mut d0, &d0_block(rep.image(g)?, &like), 3 * j, 0);
    }
    let mut d1 = Matrix::zeros(3 * m, 3 * n, &like);
    for (i, r) in p.relators().iter().enumerate() {
        for (j, &g) in gens.iter().enumerate() {
            let fox = fox_derivative(r, g as u8 - b'a');
            if fox.is_zero() {
                continue;
            }
            let lg = operator_matrix(&like, |xi| conj_left(rep.image(g).expect("declared"), xi));
            let block = group_ring_operator(rep, &fox)?.try_mul(&lg)?;
            place(&mut d1, &block, 3 * i, 3 * j);
        }
    }
    let v = vec!["*".to_string()];
    let edges: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let faces: Vec<String> = p.relators().iter().map(|r| r.to_string()).collect();
    BasedComplex::new(vec![cell_labels(&v), cell_labels(&edges), cell_labels(&faces)], vec![d0, d1])
}

/// Complex of (free group) × circle with `ρ(t) = ±Id`: cells `*`, the
/// generators and `t` in degree one, `g×t` in degree two;
/// `d⁰ξ = (Ad ξ - ξ, ..., 0)` and `d¹(ζ, ..., θ) = (ρ(g)⁻¹θρ(g) - θ)_g`.
pub fn product_circle_complex<R: Field>(p: &Presentation, rep: &Rep<R>, sign: i8) -> Result<BasedComplex<R>> {
    if !p.relators().is_empty() {
        return Err(Error::Input("product with a circle needs a free presentation".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Input("sign must be +1 or -1".into()));
    }
    let like = rep.like().clone();
    let gens = p.generators();
    let n = gens.len();
    let mut d0 = Matrix::zeros(3 * (n + 1), 3, &like);
    let mut d1 = Matrix::zeros(3 * n, 3 * (n + 1), &like);
    for (j, &g) in gens.iter().enumerate() {
        let block = d0_block(rep.image(g)?, &like);
        place(&mut d0, &block, 3 * j, 0);
        place(&mut d1, &block, 3 * j, 3 * n);
    }
    let v = vec!["*".to_string()];
    let mut edges: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    edges.push("t".into());
    let faces: Vec<String> = gens.iter().map(|g| format!("{g}t")).collect();
    BasedComplex::new(vec![cell_labels(&v), cell_labels(&edges), cell_labels(&faces)], vec![d0, d1])
}

/// A 1-cocycle given by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle<R> {
    values: BTreeMap<char, Sl2Elem<R>>,
}

impl<R: Ring> Cocycle<R> {
    pub fn new(values: BTreeMap<char, Sl2Elem<R>>) -> Cocycle<R> {
        Cocycle { values }
    }

    pub fn value(&self, g: char) -> Result<&Sl2Elem<R>> {
        self.values.get(&g).ok_or(Error::UndeclaredGenerator(g))
    }

    /// Coordinates in `C¹` for the given generator order.
    pub fn to_vector(&self, gens: &[char]) -> Result<Vec<R>> {
        let mut out = Vec::with_capacity(3 * gens.len());
        for &g in gens {
            out.extend(self.value(g)?.coords());
        }
        Ok(out)
    }

    pub fn from_vector(gens: &[char], v: &[R]) -> Cocycle<R> {
        let values = gens
            .iter()
            .enumerate()
            .map(|(j, &g)| (g, Sl2Elem::from_coords(&v[3 * j..3 * j + 3])))
            .collect();
        Cocycle { values }
    }
}

/// `ψ(γδ) = ρ(δ)⁻¹ψ(γ)ρ(δ) + ψ(δ)`, `ψ(g⁻¹) = -ρ(g)ψ(g)ρ(g)⁻¹`.
pub fn cocycle_eval<R: Ring>(psi: &Cocycle<R>, rep: &Rep<R>, w: &Word) -> Result<Sl2Elem<R>> {
    let mut acc = Sl2Elem::zero(rep.like());
    for &l in w.letters() {
        let g = rep.letter(l)?;
        let base = psi.value(l.gen_char())?;
        let step = if l.inverse {
            conj_left(rep.image(l.gen_char())?, base).neg()
        } else {
            base.clone()
        };
        acc = adjoint_action(g, &acc).add(&step);
    }
    Ok(acc)
}

/// `ψ_v(g) = ρ(g)⁻¹ ∂_v ρ(g)` for `v = x, y, z`.
pub fn tangent_cocycles(rep: &Rep<QuadExt>) -> Result<[Cocycle<QuadExt>; 3]> {
    let like = rep.like().clone();
    let mk = |var: &str| -> Result<Cocycle<QuadExt>> {
        let mut values = BTreeMap::new();
        for g in rep.generators() {
            let m = rep.image(g)?;
            let dm = m.try_map(&like, |e| e.derive(var))?;
            values.insert(g, Sl2Elem::new(&sl2_inverse(m) * &dm)?);
        }
        Ok(Cocycle::new(values))
    };
    Ok([mk("x")?, mk("y")?, mk("z")?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_mpoly, ratio, Modulus, RatFn, Vars};
    use crate::saito::tautological_rep;
    use crate::words::parse_f2;

    fn base(s: &str) -> QuadExt {
        Modulus::tautological().base(RatFn::from_poly(parse_mpoly(&Vars::xyz(), s).unwrap()))
    }

    fn q(rows: [[i64; 2]; 2]) -> Matrix<crate::algebra::Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn projection() {
        assert!(project_traceless(&q([[1, 0], [0, 1]])).is_zero());
        let x = q([[1, 2], [3, -1]]);
        assert_eq!(project_traceless(&x).matrix(), &x);
        let a = tautological_rep().image('a').unwrap().clone();
        let a0 = project_traceless(&a);
        let expected = Matrix::from_rows(vec![
            vec![base("1/2*x"), base("-1")],
            vec![base("1"), base("-1/2*x")],
        ])
        .unwrap();
        assert_eq!(a0.matrix(), &expected);
    }

    #[test]
    fn killing_form_values() {
        let [h, e, f2] = Sl2Elem::basis(&rat(0));
        let f = f2.scale(&rat(2));
        assert_eq!(killing_volume(&h, &e, &f), rat(2));
        assert_eq!(killing_volume(&h, &e, &f2), rat(1));
        assert_eq!(killing_volume(&h, &h, &e), rat(0));
    }

    #[test]
    fn adjoint_action_properties() {
        let g = q([[2, 1], [1, 1]]);
        let xi = Sl2Elem::new(q([[1, 2], [3, -1]])).unwrap();
        let eta = Sl2Elem::new(q([[0, 1], [-2, 0]])).unwrap();
        assert_eq!(adjoint_action(&Matrix::identity(2, &rat(0)), &xi), xi);
        assert_eq!(
            adjoint_action(&g, &xi.bracket(&eta)),
            adjoint_action(&g, &xi).bracket(&adjoint_action(&g, &eta))
        );
        let gx = adjoint_action(&g, &xi);
        assert_eq!(gx.pairing(&gx), xi.pairing(&xi));
    }

    #[test]
    fn coordinates_round_trip() {
        let xi = Sl2Elem::new(q([[1, 2], [3, -1]])).unwrap();
        let c = xi.coords();
        assert_eq!(c, [rat(1), rat(2), rat(6)]);
        assert_eq!(Sl2Elem::from_coords(&c), xi);
        let half = Sl2Elem::from_coords(&[rat(0), rat(0), rat(1)]);
        assert_eq!(half.matrix()[(1, 0)], ratio(1, 2));
    }

    #[test]
    fn free_group_complex() {
        let rep = tautological_rep();
        let c = presentation_complex(&Presentation::free_f2(), &rep).unwrap();
        assert_eq!(c.dims(), &[3, 6, 0]);
        assert_eq!(c.ranks().unwrap()[0], 3);
        assert_eq!(c.cohomology_dims().unwrap(), vec![0, 3, 0]);
    }

    #[test]
    fn trivial_rep_complex() {
        let id = Matrix::identity(2, &rat(0));
        let rep = Rep::new(vec![('a', id.clone()), ('b', id)]).unwrap();
        let c = presentation_complex(&Presentation::free_f2(), &rep).unwrap();
        assert!(c.differential(0).is_zero());
        assert_eq!(c.cohomology_dims().unwrap()[0], 3);
        let pc = product_circle_complex(&Presentation::free_f2(), &rep, 1).unwrap();
        assert_eq!(pc.cohomology_dims().unwrap()[0], 3);
    }

    #[test]
    fn product_circle_dims() {
        let rep = tautological_rep();
        let c = product_circle_complex(&Presentation::free_f2(), &rep, 1).unwrap();
        assert_eq!(c.dims(), &[3, 9, 6]);
        assert_eq!(c.cohomology_dims().unwrap(), vec![0, 3, 3]);
    }

    #[test]
    fn relator_check() {
        let rep = tautological_rep();
        let p = Presentation::parse(&["a", "b"], &["abAB"], &[]).unwrap();
        assert!(matches!(presentation_complex(&p, &rep), Err(Error::InconsistentInput(_))));
    }

    #[test]
    fn tangent_cocycle_values() {
        let rep = tautological_rep();
        let [px, _, _] = tangent_cocycles(&rep).unwrap();
        let a = rep.image('a').unwrap();
        let k = Modulus::tautological();
        let e11 = Matrix::from_rows(vec![vec![k.one(), k.zero()], vec![k.zero(), k.zero()]]).unwrap();
        assert_eq!(px.value('a').unwrap().matrix(), &(&sl2_inverse(a) * &e11));
        assert!(px.value('b').unwrap().is_zero());
    }

    #[test]
    fn cocycle_extension() {
        let rep = tautological_rep();
        let [px, _, pz] = tangent_cocycles(&rep).unwrap();
        let w = |s: &str| parse_f2(s).unwrap();
        assert!(cocycle_eval(&px, &rep, &w("")).unwrap().is_zero());
        assert_eq!(&cocycle_eval(&px, &rep, &w("a")).unwrap(), px.value('a').unwrap());
        for (psi, var) in [(&px, "x"), (&pz, "z")] {
            for s in ["aa", "aB", "bAb"] {
                let m = rep.eval(&w(s)).unwrap();
                let dm = m.try_map(rep.like(), |e| e.derive(var)).unwrap();
                let direct = &sl2_inverse(&m) * &dm;
                assert_eq!(cocycle_eval(psi, &rep, &w(s)).unwrap().matrix(), &direct, "{s} {var}");
            }
        }
    }

    #[test]
    fn fox_complex_kills_coboundaries_with_relators() {
        // <a, b, t | a t A T, b t B T> with t ↦ Id
        let rep = tautological_rep();
        let id = Matrix::identity(2, rep.like());
        let rep3 = Rep::new(vec![
            ('a', rep.image('a').unwrap().clone()),
            ('b', rep.image('b').unwrap().clone()),
            ('t', id),
        ])
        .unwrap();
        let p = Presentation::parse(&["a", "b", "t"], &["atAT", "btBT"], &[]).unwrap();
        let c = presentation_complex(&p, &rep3).unwrap();
        assert_eq!(c.cohomology_dims().unwrap(), vec![0, 3, 3]);
    }
}
