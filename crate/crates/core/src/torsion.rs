//! Reidemeister torsion of based complexes, the torsion volume forms of the
//! genus two handlebody and of (three-holed sphere) × circle, and the
//! determinant formula for mapping tori.

use std::fmt;

use crate::algebra::{rat, ratio, Field, MPoly, Matrix, Modulus, QuadExt, Rat, RatFn, Ring, Vars};
use crate::cohomology::{
    cocycle_eval, presentation_complex, project_traceless, tangent_cocycles, BasedComplex, Cocycle, Sl2Elem,
};
use crate::error::{Error, Result};
use crate::saito::{rep_at_point, tautological_rep, Rep};
use crate::skein::{delta, trace_polynomial};
use crate::words::{parse_f2, Presentation, Word};

/// Per degree, vectors whose images form a basis of the image of `dⁱ`.
pub type Lifts<R> = Vec<Vec<Vec<R>>>;

fn columns_matrix<R: Ring>(cols: &[Vec<R>], n: usize, like: &R) -> Matrix<R> {
    Matrix::from_columns(cols, n, like)
}

/// Standard basis vectors at the pivot columns of each differential.
pub fn canonical_lifts<R: Field>(c: &BasedComplex<R>) -> Result<Lifts<R>> {
    let like = c.like();
    let mut out = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let n = c.dims()[i];
        let pivots = match c.differentials().get(i) {
            Some(d) => d.rref()?.1,
            None => Vec::new(),
        };
        out.push(
            pivots
                .into_iter()
                .map(|p| (0..n).map(|k| if k == p { like.one_like() } else { like.zero_like() }).collect())
                .collect(),
        );
    }
    Ok(out)
}

/// Replaces each lift basis by a random invertible recombination plus random
/// kernel vectors; `next` supplies the random coefficients.
pub fn perturb_lifts<R: Field>(
    c: &BasedComplex<R>,
    lifts: &Lifts<R>,
    next: &mut dyn FnMut() -> Rat,
) -> Result<Lifts<R>> {
    let like = c.like();
    let mut out = Vec::with_capacity(lifts.len());
    for (i, b) in lifts.iter().enumerate() {
        let n = c.dims()[i];
        let k = b.len();
        if k == 0 {
            out.push(Vec::new());
            continue;
        }
        let kernel = c.differentials()[i].kernel_basis()?;
        let mut mix = Matrix::from_fn(k, k, &rat(0), |_, _| next());
        if mix.det()?.is_zero() {
            mix = Matrix::identity(k, &rat(0));
        }
        let mut new = Vec::with_capacity(k);
        for j in 0..k {
            let mut v = vec![like.zero_like(); n];
            for (l, bl) in b.iter().enumerate() {
                let s = like.rat_like(&mix[(l, j)]);
                for (t, e) in bl.iter().enumerate() {
                    v[t] = v[t].clone() + &(s.clone() * e);
                }
            }
            for kv in &kernel {
                let s = like.rat_like(&next());
                for (t, e) in kv.iter().enumerate() {
                    v[t] = v[t].clone() + &(s.clone() * e);
                }
            }
            new.push(v);
        }
        out.push(new);
    }
    Ok(out)
}

/// Torsion with the canonical lifts.
pub fn torsion_of_based_complex<R: Field>(c: &BasedComplex<R>, h_bases: &[Vec<Vec<R>>]) -> Result<R> {
    torsion_with_lifts(c, h_bases, &canonical_lifts(c)?)
}

/// `Π Dᵢ^{(-1)^{i+1}}` with `Dᵢ = det[dⁱ⁻¹(bᵢ₋₁) | hᵢ | bᵢ]` in the
/// distinguished basis of `Cⁱ`. Well defined up to sign.
pub fn torsion_with_lifts<R: Field>(c: &BasedComplex<R>, h_bases: &[Vec<Vec<R>>], lifts: &Lifts<R>) -> Result<R> {
    if h_bases.len() != c.len() || lifts.len() != c.len() {
        return Err(Error::Structural("one cohomology basis and one lift basis per degree".into()));
    }
    let like = c.like();
    let dims = c.dims();
    let hdims = c.cohomology_dims()?;
    let ranks = c.ranks()?;
    let mut tau = like.one_like();
    for i in 0..c.len() {
        let n = dims[i];
        if h_bases[i].len() != hdims[i] {
            return Err(Error::Rank(format!(
                "degree {i}: {} classes supplied, cohomology has dimension {}",
                h_bases[i].len(),
                hdims[i]
            )));
        }
        if lifts[i].len() != ranks.get(i).copied().unwrap_or(0) {
            return Err(Error::Rank(format!("degree {i}: lift count differs from the rank of d{i}")));
        }
        let mut cols: Vec<Vec<R>> = Vec::with_capacity(n);
        if i > 0 {
            let d = c.differential(i - 1);
            cols.extend(lifts[i - 1].iter().map(|b| d.mul_vec(b)));
        }
        for h in &h_bases[i] {
            if h.len() != n {
                return Err(Error::InvalidBasis(format!("degree {i}: class of wrong length")));
            }
            if let Some(d) = c.differentials().get(i) {
                if d.mul_vec(h).iter().any(|e| !e.is_zero()) {
                    return Err(Error::InvalidBasis(format!("degree {i}: supplied class is not a cocycle")));
                }
            }
        }
        cols.extend(h_bases[i].iter().cloned());
        cols.extend(lifts[i].iter().cloned());
        let di = if n == 0 {
            like.one_like()
        } else {
            columns_matrix(&cols, n, &like).det()?
        };
        if di.is_zero() {
            return Err(Error::InvalidBasis(format!(
                "degree {i}: classes and lifts do not form a basis of the cochains"
            )));
        }
        tau = if i % 2 == 1 { tau * &di } else { Field::div(&tau, &di)? };
    }
    Ok(tau)
}

/// `coefficient · dv₁ ∧ ... ∧ dvₖ`, always up to sign.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    coefficient: QuadExt,
    wedge: Vec<String>,
    sign_ambiguous: bool,
}

impl VolumeForm {
    /// Fails unless the coefficient lies in the base field.
    pub fn new(coefficient: QuadExt, wedge: Vec<String>) -> Result<VolumeForm> {
        if coefficient.to_base().is_none() {
            return Err(Error::InvariantViolation(format!("torsion coefficient {coefficient} is not rational")));
        }
        for (i, l) in wedge.iter().enumerate() {
            if wedge[..i].contains(l) {
                return Err(Error::Structural(format!("repeated differential {l}")));
            }
        }
        Ok(VolumeForm { coefficient, wedge, sign_ambiguous: true })
    }

    pub fn coefficient(&self) -> &QuadExt {
        &self.coefficient
    }

    /// The coefficient as an element of ℚ(x, y, z).
    pub fn rational_coefficient(&self) -> &RatFn {
        self.coefficient.to_base().expect("checked at construction")
    }

    pub fn wedge(&self) -> &[String] {
        &self.wedge
    }

    pub fn sign_ambiguous(&self) -> bool {
        self.sign_ambiguous
    }

    /// Equality up to sign.
    pub fn equals_up_to_sign(&self, o: &VolumeForm) -> bool {
        self.wedge == o.wedge
            && (self.rational_coefficient() == o.rational_coefficient()
                || self.rational_coefficient() == &-o.rational_coefficient())
    }
}

fn fmt_coefficient(c: &RatFn) -> String {
    match c.constant_value() {
        Some(r) => crate::algebra::rat::fmt_rat(&r),
        None if c.is_poly() && c.num().num_terms() == 1 => c.to_string(),
        None => format!("({c})"),
    }
}

impl fmt::Display for VolumeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", fmt_coefficient(self.rational_coefficient()), self.wedge.join("^"))?;
        if self.sign_ambiguous {
            write!(f, " (up to sign)")?;
        }
        Ok(())
    }
}

/// `ξ = ρ(γ)₀` for a boundary curve, with `tr(ξ²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryGenerator<R = QuadExt> {
    pub curve: Word,
    pub xi: Sl2Elem<R>,
    pub norm_sq: R,
}

impl<R: Ring> BoundaryGenerator<R> {
    pub fn new(rep: &Rep<R>, curve: &Word) -> Result<BoundaryGenerator<R>> {
        let xi = project_traceless(&rep.eval(curve)?);
        let norm_sq = xi.pairing(&xi);
        Ok(BoundaryGenerator { curve: curve.clone(), xi, norm_sq })
    }

    /// `s ξ`, with `tr((sξ)²) = s² tr(ξ²)`.
    pub fn scaled(&self, s: &R) -> BoundaryGenerator<R> {
        let norm_sq = self.norm_sq.clone() * &(s.clone() * s);
        BoundaryGenerator { curve: self.curve.clone(), xi: self.xi.scale(s), norm_sq }
    }
}

/// Scale `2/√radicand` turning `ξ` into a generator with `tr(ξ²) = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleFactor {
    pub numerator: Rat,
    pub radicand: MPoly,
}

impl fmt::Display for ScaleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/sqrt({})", crate::algebra::rat::fmt_rat(&self.numerator), self.radicand)
    }
}

/// Since `tr(ξ²) = (tr(γ)² - 4)/2`, the factor is `2/√(tr(γ)² - 4)`.
pub fn normalize_generators(gens: &[BoundaryGenerator]) -> Result<Vec<ScaleFactor>> {
    gens.iter()
        .map(|g| {
            if g.norm_sq.is_zero() {
                return Err(Error::ParabolicBoundary(format!("boundary curve {} has trace ±2", g.curve)));
            }
            let t = trace_polynomial(&g.curve)?;
            let radicand = &(&t * &t) - &MPoly::constant(t.vars(), rat(4));
            Ok(ScaleFactor { numerator: rat(2), radicand })
        })
        .collect()
}

/// Torsion after rescaling every `ξᵢ` to `tr(ξᵢ²) = 2`: `Π sᵢ` times the
/// coefficient, kept as a rational part over a product of square roots.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedForm {
    pub coefficient: RatFn,
    pub radicands: Vec<MPoly>,
    pub wedge: Vec<String>,
}

impl NormalizedForm {
    pub fn new(form: &VolumeForm, factors: &[ScaleFactor]) -> NormalizedForm {
        let mut c = form.rational_coefficient().clone();
        for s in factors {
            c = c.scale(&s.numerator);
        }
        NormalizedForm {
            coefficient: c,
            radicands: factors.iter().map(|s| s.radicand.clone()).collect(),
            wedge: form.wedge.clone(),
        }
    }
}

impl fmt::Display for NormalizedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", fmt_coefficient(&self.coefficient), self.wedge.join("^"))?;
        if !self.radicands.is_empty() {
            let r: Vec<String> = self.radicands.iter().map(|p| format!("({p})")).collect();
            write!(f, " / sqrt({})", r.join("*"))?;
        }
        write!(f, " (up to sign)")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionKind {
    Handlebody,
    ProductCircle,
}

/// A representation of F₂ with its three tangent cocycles `ψ_x, ψ_y, ψ_z`.
#[derive(Clone, Debug)]
pub struct TorsionInput<R = QuadExt> {
    pub rep: Rep<R>,
    pub cocycles: [Cocycle<R>; 3],
}

impl<R: Field> TorsionInput<R> {
    pub fn tangent_vectors(&self) -> Result<Vec<Vec<R>>> {
        let gens: Vec<char> = self.rep.generators().collect();
        self.cocycles.iter().map(|c| c.to_vector(&gens)).collect()
    }
}

impl TorsionInput<Rat> {
    /// Specialization over ℚ at a character where `u² + z u + 1` has the
    /// rational root `u0`.
    pub fn at_root(point: &[Rat; 3], u0: &Rat) -> Result<TorsionInput<Rat>> {
        check_branch_locus(point)?;
        if delta(&parse_f2("a")?, &parse_f2("b")?)?.eval(point).is_zero() {
            return Err(Error::DegenerateCharacter("Δ vanishes at the point".into()));
        }
        let generic = TorsionInput::generic()?;
        let rep = generic.rep.map(&rat(0), |e| e.specialize(point, u0))?;
        let gens: Vec<char> = rep.generators().collect();
        let spec = |c: &Cocycle<QuadExt>| -> Result<Cocycle<Rat>> {
            let v = c.to_vector(&gens)?;
            let v = v.iter().map(|e| e.specialize(point, u0)).collect::<Result<Vec<_>>>()?;
            Ok(Cocycle::from_vector(&gens, &v))
        };
        let cocycles = [spec(&generic.cocycles[0])?, spec(&generic.cocycles[1])?, spec(&generic.cocycles[2])?];
        Ok(TorsionInput { rep, cocycles })
    }
}

impl TorsionInput<QuadExt> {
    /// The tautological representation over `K`.
    pub fn generic() -> Result<TorsionInput> {
        let rep = tautological_rep();
        let cocycles = tangent_cocycles(&rep)?;
        Ok(TorsionInput { rep, cocycles })
    }

    /// Specialization at an irreducible rational character.
    pub fn at_point(point: &[Rat; 3]) -> Result<TorsionInput> {
        check_branch_locus(point)?;
        let pairs = [(parse_f2("a")?, parse_f2("b")?)];
        if delta(&pairs[0].0, &pairs[0].1)?.eval(point).is_zero() {
            return Err(Error::DegenerateCharacter("Δ vanishes at the point".into()));
        }
        let generic = TorsionInput::generic()?;
        let rep = rep_at_point(point);
        let k = rep.like().modulus();
        let spec = |c: &Cocycle<QuadExt>| -> Result<Cocycle<QuadExt>> {
            let gens: Vec<char> = rep.generators().collect();
            let v = c.to_vector(&gens)?;
            let v = v.iter().map(|e| e.specialize_ext(point, &k)).collect::<Result<Vec<_>>>()?;
            Ok(Cocycle::from_vector(&gens, &v))
        };
        let cocycles = [spec(&generic.cocycles[0])?, spec(&generic.cocycles[1])?, spec(&generic.cocycles[2])?];
        Ok(TorsionInput { rep, cocycles })
    }
}

/// Output of [`torsion_form`]: the form, the handlebody torsion `f`, and for
/// the product with a circle the torsion `g` of the boundary evaluation
/// complex together with the boundary generators.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub form: VolumeForm,
    pub f: RatFn,
    pub g: Option<RatFn>,
    pub boundary: Vec<BoundaryGenerator>,
}

impl TorsionReport {
    pub fn normalized(&self) -> Result<NormalizedForm> {
        Ok(NormalizedForm::new(&self.form, &normalize_generators(&self.boundary)?))
    }
}

fn check_branch_locus(point: &[Rat; 3]) -> Result<()> {
    if (point[2].clone() * &point[2] - rat(4)).is_zero() {
        return Err(Error::DegenerateCharacter("z = ±2 is a branch point of u² + z u + 1".into()));
    }
    Ok(())
}

fn check_free_f2(p: &Presentation) -> Result<()> {
    if p.generators() != ['a', 'b'] || !p.relators().is_empty() {
        return Err(Error::Input("torsion forms are defined for the free group on a, b".into()));
    }
    Ok(())
}

fn rational(q: &QuadExt, what: &str) -> Result<RatFn> {
    q.to_base()
        .cloned()
        .ok_or_else(|| Error::InvariantViolation(format!("{what} = {q} is not rational")))
}

/// Handlebody torsion `f` of `sl₂ → sl₂²` with `H¹` spanned by the tangent
/// cocycles.
pub fn handlebody_torsion<R: Field>(input: &TorsionInput<R>) -> Result<R> {
    let c = presentation_complex(&Presentation::free_f2(), &input.rep)?;
    torsion_of_based_complex(&c, &[vec![], input.tangent_vectors()?, vec![]])
}

/// The acyclic complex `sl₂ → sl₂² → K³` whose second map is
/// `ψ ↦ (tr(ψ(γᵢ) ξᵢ))ᵢ`.
pub fn boundary_evaluation_complex<R: Field>(
    input: &TorsionInput<R>,
    gens: &[BoundaryGenerator<R>],
) -> Result<BasedComplex<R>> {
    let c = presentation_complex(&Presentation::free_f2(), &input.rep)?;
    let like = input.rep.like().clone();
    let letters = ['a', 'b'];
    let mut eval = Matrix::zeros(gens.len(), 6, &like);
    for j in 0..6 {
        let mut v = vec![like.zero_like(); 6];
        v[j] = like.one_like();
        let psi = Cocycle::from_vector(&letters, &v);
        for (i, g) in gens.iter().enumerate() {
            eval[(i, j)] = cocycle_eval(&psi, &input.rep, &g.curve)?.pairing(&g.xi);
        }
    }
    let mut labels = c.labels()[..2].to_vec();
    labels.push(gens.iter().map(|g| format!("<{}>", g.curve)).collect());
    BasedComplex::new(labels, vec![c.differential(0).clone(), eval])
}

/// Torsion `g` of [`boundary_evaluation_complex`].
pub fn boundary_evaluation_torsion<R: Field>(input: &TorsionInput<R>, gens: &[BoundaryGenerator<R>]) -> Result<R> {
    let c = boundary_evaluation_complex(input, gens)?;
    if c.cohomology_dims()?.iter().any(|&h| h != 0) {
        return Err(Error::DegenerateBoundary("boundary evaluation map is singular".into()));
    }
    torsion_of_based_complex(&c, &[vec![], vec![], vec![]])
}

/// Torsion volume form on `dx ∧ dy ∧ dz`: `f` for the handlebody and `f/g`
/// for the product with a circle, `ρ(t) = sign · Id`.
pub fn torsion_form(
    p: &Presentation,
    kind: TorsionKind,
    sign: i8,
    boundary: &[Word],
    input: &TorsionInput,
) -> Result<TorsionReport> {
    check_free_f2(p)?;
    if sign != 1 && sign != -1 {
        return Err(Error::Input("sign must be +1 or -1".into()));
    }
    let wedge: Vec<String> = ["dx", "dy", "dz"].iter().map(|s| s.to_string()).collect();
    let f = handlebody_torsion(input)?;
    let f_rat = rational(&f, "handlebody torsion")?;
    match kind {
        TorsionKind::Handlebody => Ok(TorsionReport { form: VolumeForm::new(f, wedge)?, f: f_rat, g: None, boundary: vec![] }),
        TorsionKind::ProductCircle => {
            if boundary.len() != 3 {
                return Err(Error::Input("the three-holed sphere needs three boundary words".into()));
            }
            let gens = boundary
                .iter()
                .map(|w| BoundaryGenerator::new(&input.rep, w))
                .collect::<Result<Vec<_>>>()?;
            if let Some(g) = gens.iter().find(|g| g.norm_sq.is_zero()) {
                return Err(Error::ParabolicBoundary(format!("boundary curve {} has trace ±2", g.curve)));
            }
            let g = boundary_evaluation_torsion(input, &gens)?;
            let g_rat = rational(&g, "boundary evaluation torsion")?;
            let t = Field::div(&f, &g)?;
            Ok(TorsionReport { form: VolumeForm::new(t, wedge)?, f: f_rat, g: Some(g_rat), boundary: gens })
        }
    }
}

/// Monodromy of a once-punctured torus or three-holed sphere bundle, given
/// by the images of `a` and `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedSpec {
    pub phi_images: [Word; 2],
    pub boundary: Vec<Word>,
    /// `φ*x, φ*y, φ*z`.
    pub induced_map: [MPoly; 3],
    /// `∂(φ*xᵢ)/∂xⱼ`.
    pub jacobian: Matrix<RatFn>,
}

impl FiberedSpec {
    pub fn new(phi_a: Word, phi_b: Word, boundary: Vec<Word>) -> Result<FiberedSpec> {
        if boundary.is_empty() {
            return Err(Error::Input("fibered torsion needs boundary curves".into()));
        }
        let induced_map = [
            trace_polynomial(&phi_a)?,
            trace_polynomial(&phi_b)?,
            trace_polynomial(&phi_a.mul(&phi_b))?,
        ];
        for w in &boundary {
            trace_polynomial(w)?;
        }
        let zero = RatFn::zero(&Vars::xyz());
        let vars = ["x", "y", "z"];
        let jacobian = Matrix::from_fn(3, 3, &zero, |i, j| {
            RatFn::from_poly(induced_map[i].derive(vars[j]).expect("x, y, z"))
        });
        Ok(FiberedSpec { phi_images: [phi_a, phi_b], boundary, induced_map, jacobian })
    }

    /// Gradients of the boundary traces `Y_γ` as rows.
    pub fn gradients(&self) -> Result<Matrix<RatFn>> {
        let mut rows = Vec::with_capacity(self.boundary.len());
        for w in &self.boundary {
            let t = trace_polynomial(w)?;
            rows.push(
                ["x", "y", "z"]
                    .iter()
                    .map(|v| Ok(RatFn::from_poly(t.derive(v)?)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Matrix::from_rows(rows)
    }

    pub fn wedge_labels(&self) -> Vec<String> {
        self.boundary.iter().map(|w| format!("dY_{w}")).collect()
    }

    /// `φ*xᵢ - xᵢ`.
    pub fn fixed_locus_ideal(&self) -> Vec<MPoly> {
        ["x", "y", "z"]
            .iter()
            .zip(&self.induced_map)
            .map(|(v, p)| p - &MPoly::xyz(v))
            .collect()
    }
}

/// Symbolic output: the Jacobian, the gradient covectors and, when the
/// gradients span all directions, the form `½ ⋀dY_γ` rewritten on
/// `dx ∧ dy ∧ dz`.
#[derive(Clone, Debug)]
pub struct FiberedSymbolic {
    pub jacobian: Matrix<RatFn>,
    pub gradients: Matrix<RatFn>,
    pub wedge: Vec<String>,
    pub form: Option<VolumeForm>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum FiberedTorsion {
    Symbolic(FiberedSymbolic),
    Value(Rat),
}

pub fn fibered_torsion(spec: &FiberedSpec, point: Option<&[Rat; 3]>) -> Result<FiberedTorsion> {
    match point {
        Some(p) => fibered_at_point(spec, p).map(FiberedTorsion::Value),
        None => fibered_symbolic(spec).map(FiberedTorsion::Symbolic),
    }
}

pub fn fibered_symbolic(spec: &FiberedSpec) -> Result<FiberedSymbolic> {
    let gradients = spec.gradients()?;
    let form = if gradients.rows() == 3 && gradients.rank()? == 3 {
        let d = gradients.det()?.scale(&ratio(1, 2));
        let k = Modulus::tautological();
        Some(VolumeForm::new(k.base(d), vec!["dx".into(), "dy".into(), "dz".into()])?)
    } else {
        None
    };
    Ok(FiberedSymbolic { jacobian: spec.jacobian.clone(), gradients, wedge: spec.wedge_labels(), form })
}

/// `½ / det((J - I)|_W)` with `W` the common kernel of the boundary trace
/// differentials at a fixed point.
pub fn fibered_at_point(spec: &FiberedSpec, point: &[Rat; 3]) -> Result<Rat> {
    for (v, p) in ["x", "y", "z"].iter().zip(spec.fixed_locus_ideal()) {
        if !p.eval(point).is_zero() {
            return Err(Error::Input(format!("point is not fixed by the monodromy (φ*{v} ≠ {v})")));
        }
    }
    let at = |m: &Matrix<RatFn>| m.try_map(&rat(0), |e| e.eval(point));
    let j = at(&spec.jacobian)?;
    let g = at(&spec.gradients()?)?;
    if g.rank()? < g.rows() {
        return Err(Error::NonRegularPoint("boundary trace differentials are dependent".into()));
    }
    let w = g.kernel_basis()?;
    let m = w.len();
    if m == 0 {
        return Ok(ratio(1, 2));
    }
    let wm = Matrix::from_columns(&w, 3, &rat(0));
    let jm = j.try_sub(&Matrix::identity(3, &rat(0)))?;
    let image = jm.try_mul(&wm)?;
    let mut coef = Matrix::zeros(m, m, &rat(0));
    for k in 0..m {
        let col = image.column(k);
        let Some(sol) = wm.solve(&col)? else {
            return Err(Error::Convention("J - I does not preserve the kernel of the boundary differentials".into()));
        };
        for (r, s) in sol.into_iter().enumerate() {
            coef[(r, k)] = s;
        }
    }
    let d = coef.det()?;
    if d.is_zero() {
        return Err(Error::NonRegularPoint("det((J - I)|W) = 0".into()));
    }
    Ok(ratio(1, 2) / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_mpoly;
    use num_traits::Signed;

    fn w(s: &str) -> Word {
        parse_f2(s).unwrap()
    }

    fn constant(q: &QuadExt) -> Rat {
        q.to_base().and_then(RatFn::constant_value).expect("rational constant")
    }

    fn magic(input: &TorsionInput) -> TorsionReport {
        torsion_form(&Presentation::free_f2(), TorsionKind::ProductCircle, 1, &[w("a"), w("b"), w("BA")], input)
            .unwrap()
    }

    #[test]
    fn identity_differential_is_trivially_acyclic() {
        let id = Matrix::identity(3, &rat(0));
        let c = BasedComplex::new(vec![vec!["p".into(); 3], vec!["q".into(); 3]], vec![id]).unwrap();
        assert_eq!(torsion_of_based_complex(&c, &[vec![], vec![]]).unwrap(), rat(1));
        let two = Matrix::identity(3, &rat(0)).scale(&rat(2));
        let c2 = BasedComplex::new(vec![vec!["p".into(); 3], vec!["q".into(); 3]], vec![two]).unwrap();
        assert_eq!(torsion_of_based_complex(&c2, &[vec![], vec![]]).unwrap(), rat(8));
    }

    #[test]
    fn wrong_class_counts() {
        let input = TorsionInput::generic().unwrap();
        let c = presentation_complex(&Presentation::free_f2(), &input.rep).unwrap();
        let v = input.tangent_vectors().unwrap();
        let err = torsion_of_based_complex(&c, &[vec![], v[..2].to_vec(), vec![]]).unwrap_err();
        assert!(matches!(err, Error::Rank(_)));
        let dup = vec![v[0].clone(), v[0].clone(), v[1].clone()];
        let err = torsion_of_based_complex(&c, &[vec![], dup, vec![]]).unwrap_err();
        assert!(matches!(err, Error::InvalidBasis(_)));
    }

    #[test]
    fn handlebody_value() {
        let input = TorsionInput::generic().unwrap();
        let r = torsion_form(&Presentation::free_f2(), TorsionKind::Handlebody, 1, &[], &input).unwrap();
        assert_eq!(constant(r.form.coefficient()).abs(), rat(4));
        assert_eq!(r.form.to_string(), "4 dx^dy^dz (up to sign)");
    }

    #[test]
    fn magic_manifold_values() {
        let input = TorsionInput::generic().unwrap();
        let r = magic(&input);
        assert_eq!(r.g.as_ref().and_then(RatFn::constant_value).map(|g| g.abs()), Some(rat(4)));
        assert_eq!(constant(r.form.coefficient()).abs(), rat(1));
        let n = r.normalized().unwrap();
        assert_eq!(n.coefficient.constant_value().map(|c| c.abs()), Some(rat(8)));
        assert_eq!(n.radicands.len(), 3);
        assert_eq!(n.radicands[2], parse_mpoly(&Vars::xyz(), "z^2 - 4").unwrap());
    }

    #[test]
    fn lift_choice_only_changes_sign() {
        let input = TorsionInput::generic().unwrap();
        let c = presentation_complex(&Presentation::free_f2(), &input.rep).unwrap();
        let h = [vec![], input.tangent_vectors().unwrap(), vec![]];
        let base = torsion_of_based_complex(&c, &h).unwrap();
        let mut k = 0i64;
        let mut next = || {
            k += 1;
            ratio(k % 7 - 3, 1 + k % 4)
        };
        let lifts = perturb_lifts(&c, &canonical_lifts(&c).unwrap(), &mut next).unwrap();
        let t = torsion_with_lifts(&c, &h, &lifts).unwrap();
        assert!(t == base || t == -base.clone());
    }

    #[test]
    fn parabolic_boundary() {
        let input = TorsionInput::generic().unwrap();
        let id = BoundaryGenerator::new(&input.rep, &w("")).unwrap();
        assert!(matches!(normalize_generators(&[id]), Err(Error::ParabolicBoundary(_))));
        let a = BoundaryGenerator::new(&input.rep, &w("a")).unwrap();
        let s = normalize_generators(std::slice::from_ref(&a)).unwrap();
        assert_eq!(s[0].to_string(), "2/sqrt(x^2 - 4)");
        let expected = Modulus::tautological().base(RatFn::from_poly(parse_mpoly(&Vars::xyz(), "1/2*x^2 - 2").unwrap()));
        assert_eq!(a.norm_sq, expected);
    }

    #[test]
    fn fibered_identity_three_holed_sphere() {
        let spec = FiberedSpec::new(w("a"), w("b"), vec![w("a"), w("b"), w("BA")]).unwrap();
        let s = fibered_symbolic(&spec).unwrap();
        assert_eq!(s.form.unwrap().to_string(), "1/2 dx^dy^dz (up to sign)");
        let v = fibered_at_point(&spec, &[rat(3), ratio(1, 2), rat(5)]).unwrap();
        assert_eq!(v, ratio(1, 2));
    }

    #[test]
    fn fibered_identity_punctured_torus_is_not_regular() {
        let spec = FiberedSpec::new(w("a"), w("b"), vec![w("abAB")]).unwrap();
        let err = fibered_at_point(&spec, &[rat(3), ratio(1, 2), rat(5)]).unwrap_err();
        assert!(matches!(err, Error::NonRegularPoint(_)));
    }

    #[test]
    fn fibered_off_fixed_locus() {
        let spec = FiberedSpec::new(w("ab"), w("bab"), vec![w("abAB")]).unwrap();
        let err = fibered_at_point(&spec, &[rat(3), ratio(1, 2), rat(5)]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        // x = w + 1/w, y = x/(x - 1), z = x is fixed by a ↦ ab, b ↦ bab
        let x = ratio(5, 2);
        let v = fibered_at_point(&spec, &[x.clone(), ratio(5, 3), x]).unwrap();
        assert_eq!(v, ratio(-3, 32));
        // evaluated on the tangent (1, -4/9, 1) of the fixed curve, where dκ = 80/27
        assert_eq!(v * ratio(80, 27), ratio(-5, 18));
    }

    #[test]
    fn specialized_torsion_matches_generic() {
        for p in [[rat(3), ratio(1, 2), rat(5)], [ratio(-7, 3), rat(1), ratio(1, 5)]] {
            let input = TorsionInput::at_point(&p).unwrap();
            let hb = handlebody_torsion(&input).unwrap();
            assert_eq!(constant(&hb).abs(), rat(4));
            assert_eq!(constant(magic(&input).form.coefficient()).abs(), rat(1));
        }
        assert!(matches!(
            TorsionInput::at_point(&[rat(2), rat(2), rat(2)]),
            Err(Error::DegenerateCharacter(_))
        ));
    }
}
