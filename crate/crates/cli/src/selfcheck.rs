//! Randomized identities from every module, run as independent suites.
//!
//! Each suite draws from its own generator seeded with `seed` and the suite
//! index, so reports do not depend on thread scheduling.

use std::fmt;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sl2char::algebra::{rat, ratio, Rat, RatFn, Ring};
use sl2char::cohomology::{cocycle_eval, presentation_complex};
use sl2char::saito::{tautological_rep, tautological_system};
use sl2char::skein::{check_quadratic_tangent, trace_polynomial};
use sl2char::torsion::{
    boundary_evaluation_complex, canonical_lifts, perturb_lifts, torsion_form, torsion_of_based_complex,
    torsion_with_lifts, BoundaryGenerator, TorsionInput, TorsionKind,
};
use sl2char::words::{parse_f2, Letter, Presentation, Word};
use sl2char::{ErrorKind, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    TraceRelation,
    Reconstruction,
    Cocycle,
    QuadraticTangent,
    SignStability,
    Specialization,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::TraceRelation,
        Suite::Reconstruction,
        Suite::Cocycle,
        Suite::QuadraticTangent,
        Suite::SignStability,
        Suite::Specialization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TraceRelation => "trace-relation",
            Suite::Reconstruction => "reconstruction",
            Suite::Cocycle => "cocycle",
            Suite::QuadraticTangent => "quadratic-tangent",
            Suite::SignStability => "sign-stability",
            Suite::Specialization => "specialization",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::TraceRelation => 200,
            Suite::Reconstruction => 100,
            Suite::Cocycle => 100,
            Suite::QuadraticTangent => 50,
            Suite::SignStability => 10,
            Suite::Specialization => 20,
        }
    }

    fn default_word_len(self) -> usize {
        match self {
            Suite::TraceRelation | Suite::QuadraticTangent => 8,
            _ => 10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelfcheckConfig {
    pub seed: u64,
    /// Maximal random word length; per-suite defaults otherwise.
    pub max_word_len: Option<usize>,
    /// Trial count for every suite; per-suite defaults otherwise.
    pub trials: Option<usize>,
    /// Perturbs the reference side of one suite, to check that failures are
    /// caught and reported.
    pub tamper: Option<Suite>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub total: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SelfcheckFailure {
    pub suite: Suite,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn first_failure(&self) -> Option<SelfcheckFailure> {
        self.suites.iter().find_map(|s| {
            s.counterexample
                .as_ref()
                .map(|d| SelfcheckFailure { suite: s.suite, detail: d.clone() })
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let status = if s.counterexample.is_some() { "FAILED" } else { "ok" };
            let _ = writeln!(out, "{}: {}/{} passed ({status})", s.suite, s.passed, s.total);
            if let Some(c) = &s.counterexample {
                let _ = writeln!(out, "  counterexample: {c}");
            }
        }
        let failed = self.suites.iter().filter(|s| s.counterexample.is_some()).count();
        if failed == 0 {
            out.push_str("all suites passed\n");
        } else {
            let _ = writeln!(out, "{failed} suite(s) failed");
        }
        out
    }
}

/// Runs every suite on its own thread and merges the reports in suite order.
pub fn run(cfg: &SelfcheckConfig) -> Report {
    let suites = std::thread::scope(|s| {
        let handles: Vec<_> = Suite::ALL
            .iter()
            .enumerate()
            .map(|(i, &suite)| s.spawn(move || run_suite(suite, i as u64, cfg)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    Report { suites }
}

/// Outcome of one trial: `Ok(None)` passes, `Ok(Some(text))` is a
/// counterexample.
type Trial = Result<Option<String>>;

pub fn run_suite(suite: Suite, index: u64, cfg: &SelfcheckConfig) -> SuiteReport {
    let total = cfg.trials.unwrap_or_else(|| suite.default_trials());
    let len = cfg.max_word_len.unwrap_or_else(|| suite.default_word_len());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index));
    let tamper = cfg.tamper == Some(suite);
    let mut report = SuiteReport { suite, passed: 0, total, counterexample: None };
    if total == 0 {
        return report;
    }
    let mut ctx = match Context::new(suite) {
        Ok(c) => c,
        Err(e) => {
            report.counterexample = Some(format!("setup failed: {e}"));
            return report;
        }
    };
    for _ in 0..total {
        let outcome = match suite {
            Suite::TraceRelation => trace_relation(&mut rng, len, tamper),
            Suite::Reconstruction => reconstruction(&mut rng, len, tamper),
            Suite::Cocycle => cocycle(&mut rng, len, tamper),
            Suite::QuadraticTangent => quadratic(&mut rng, len, tamper),
            Suite::SignStability => sign_stability(&mut rng, tamper, &mut ctx),
            Suite::Specialization => specialization(&mut rng, tamper, &ctx),
        };
        match outcome {
            Ok(None) => report.passed += 1,
            Ok(Some(c)) => {
                report.counterexample = Some(c);
                break;
            }
            Err(e) => {
                report.counterexample = Some(format!("library error: {e}"));
                break;
            }
        }
    }
    report
}

/// Generic data shared by the trials of one suite.
struct Context {
    /// Generic handlebody and product-circle torsion coefficients.
    generic: Option<(RatFn, RatFn)>,
    round: usize,
}

fn magic_words() -> Vec<Word> {
    ["a", "b", "BA"].iter().map(|s| parse_f2(s).expect("word")).collect()
}

impl Context {
    fn new(suite: Suite) -> Result<Context> {
        let mut ctx = Context { generic: None, round: 0 };
        if suite == Suite::Specialization {
            let input = TorsionInput::generic()?;
            let p = Presentation::free_f2();
            let h = torsion_form(&p, TorsionKind::Handlebody, 1, &[], &input)?;
            let m = torsion_form(&p, TorsionKind::ProductCircle, 1, &magic_words(), &input)?;
            ctx.generic = Some((h.form.rational_coefficient().clone(), m.form.rational_coefficient().clone()));
        }
        Ok(ctx)
    }
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    Word::from_letters((0..n).map(|_| Letter::new(rng.gen_range(0..2), rng.gen())))
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn trace_relation(rng: &mut ChaCha8Rng, len: usize, tamper: bool) -> Trial {
    let a = random_word(rng, len);
    let b = random_word(rng, len);
    let lhs = &trace_polynomial(&a.mul(&b))? + &trace_polynomial(&a.mul(&b.inv()))?;
    let mut rhs = &trace_polynomial(&a)? * &trace_polynomial(&b)?;
    if tamper {
        rhs = -rhs;
    }
    Ok((lhs != rhs).then(|| format!("A = {a}, B = {b}: tr(AB) + tr(AB^-1) = {lhs}, tr(A) tr(B) = {rhs}")))
}

fn reconstruction(rng: &mut ChaCha8Rng, len: usize, tamper: bool) -> Trial {
    let w = random_word(rng, len);
    let rep = tautological_rep();
    let mut direct = rep.eval(&w)?;
    if tamper {
        direct = direct.neg();
    }
    let rec = tautological_system().reconstruct(&w)?;
    if rec != direct {
        return Ok(Some(format!("w = {w}: reconstructed {rec}, product {direct}")));
    }
    let det = sl2char::saito::det2(&rec);
    if !det.is_one() {
        return Ok(Some(format!("w = {w}: det = {det}")));
    }
    let tr = rec.trace();
    let expected = trace_polynomial(&w)?;
    if tr.to_base().and_then(|r| r.as_poly()) != Some(&expected) {
        return Ok(Some(format!("w = {w}: trace {tr}, trace polynomial {expected}")));
    }
    Ok(None)
}

type M2 = [[Rat; 2]; 2];

fn m2_mul(p: &M2, q: &M2) -> M2 {
    let e = |i: usize, j: usize| p[i][0].clone() * &q[0][j] + p[i][1].clone() * &q[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn m2_add(p: &M2, q: &M2) -> M2 {
    let e = |i: usize, j: usize| p[i][j].clone() + &q[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Inverse of a determinant-one matrix.
fn m2_inv(p: &M2) -> M2 {
    [[p[1][1].clone(), -p[0][1].clone()], [-p[1][0].clone(), p[0][0].clone()]]
}

fn m2_neg(p: &M2) -> M2 {
    [[-p[0][0].clone(), -p[0][1].clone()], [-p[1][0].clone(), -p[1][1].clone()]]
}

/// `ρ(w)` and `∂_v ρ(w)` at a rational point by forward differentiation,
/// with `∂_z u = -u / (2u + z)` from the defining quadratic.
fn dual_eval(point: &[Rat; 3], u0: &Rat, v: usize, w: &Word) -> (M2, M2) {
    let [x, y, z] = point.clone();
    let zero = || rat(0);
    let a: M2 = [[x, rat(-1)], [rat(1), zero()]];
    let b: M2 = [[zero(), z.clone() + u0], [u0.clone(), y]];
    let du = -u0.clone() / (rat(2) * u0 + &z);
    let da: M2 = if v == 0 { [[rat(1), zero()], [zero(), zero()]] } else { [[zero(), zero()], [zero(), zero()]] };
    let db: M2 = match v {
        1 => [[zero(), zero()], [zero(), rat(1)]],
        2 => [[zero(), rat(1) + &du], [du, zero()]],
        _ => [[zero(), zero()], [zero(), zero()]],
    };
    let mut m: M2 = [[rat(1), zero()], [zero(), rat(1)]];
    let mut d: M2 = [[zero(), zero()], [zero(), zero()]];
    for l in w.letters() {
        let (g, dg) = if l.gen_char() == 'a' { (&a, &da) } else { (&b, &db) };
        let (g, dg) = if l.inverse {
            let gi = m2_inv(g);
            let dgi = m2_neg(&m2_mul(&m2_mul(&gi, dg), &gi));
            (gi, dgi)
        } else {
            (g.clone(), dg.clone())
        };
        d = m2_add(&m2_mul(&m, &dg), &m2_mul(&d, &g));
        m = m2_mul(&m, &g);
    }
    (m, d)
}

fn cocycle(rng: &mut ChaCha8Rng, len: usize, tamper: bool) -> Trial {
    let (input, point, u0) = loop {
        let w = small_rat(rng);
        if w.is_zero() || w == rat(1) || w == rat(-1) {
            continue;
        }
        let point = [small_rat(rng), small_rat(rng), w.clone() + w.recip()];
        match TorsionInput::at_root(&point, &-w.clone()) {
            Ok(i) => break (i, point, -w),
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            Err(e) => return Err(e),
        }
    };
    let w = random_word(rng, len);
    for (k, (psi, v)) in input.cocycles.iter().zip(["x", "y", "z"]).enumerate() {
        let lhs = cocycle_eval(psi, &input.rep, &w)?;
        let (m, dm) = dual_eval(&point, &u0, k, &w);
        let mut rhs = m2_mul(&m2_inv(&m), &dm);
        if tamper {
            rhs = m2_neg(&rhs);
        }
        let l = lhs.matrix();
        if (0..2).any(|i| (0..2).any(|j| l[(i, j)] != rhs[i][j])) {
            return Ok(Some(format!(
                "w = {w}, v = {v} at ({}, {}, {}), u = {u0}: psi(w) = {l}, rho(w)^-1 d rho(w) = {:?}",
                point[0], point[1], point[2], rhs
            )));
        }
    }
    Ok(None)
}

fn quadratic(rng: &mut ChaCha8Rng, len: usize, tamper: bool) -> Trial {
    let la = [small_rat(rng), small_rat(rng)];
    let mu = [small_rat(rng), small_rat(rng)];
    let hom = |c: &[Rat; 2], w: &Word| c[0].clone() * rat(w.exponent_sum(0)) + c[1].clone() * rat(w.exponent_sum(1));
    let psi = |w: &Word| hom(&la, w) * hom(&mu, w);
    let g = random_word(rng, len);
    let d = random_word(rng, len);
    let pair = [(g.clone(), d.clone())];
    let ok = if tamper {
        check_quadratic_tangent(|w: &Word| -psi(w) + rat(1), &pair)
    } else {
        check_quadratic_tangent(psi, &pair)
    };
    if ok {
        return Ok(None);
    }
    let lhs = psi(&g.mul(&d)) + psi(&g.inv().mul(&d));
    let rhs = rat(2) * psi(&g) + rat(2) * psi(&d);
    Ok(Some(format!(
        "lambda = ({}, {}), mu = ({}, {}), gamma = {g}, delta = {d}: psi(gd) + psi(g^-1 d) = {lhs}, 2psi(g) + 2psi(d) = {rhs}",
        la[0], la[1], mu[0], mu[1]
    )))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn permute_vec<R: Clone>(v: &[R], perm: &[usize]) -> Vec<R> {
    perm.iter().map(|&k| v[k].clone()).collect()
}

/// A random regular point with `z = w + 1/w`, so that `u = -w` is rational.
fn rational_point(rng: &mut ChaCha8Rng) -> Result<TorsionInput<Rat>> {
    loop {
        let w = small_rat(rng);
        if w.is_zero() || w == rat(1) || w == rat(-1) {
            continue;
        }
        let point = [small_rat(rng), small_rat(rng), w.clone() + w.recip()];
        match TorsionInput::at_root(&point, &-w) {
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            other => return other,
        }
    }
}

/// Torsion of the handlebody or magic complex at a rational point is
/// compared under random basis orderings and lift choices.
fn sign_stability(rng: &mut ChaCha8Rng, tamper: bool, ctx: &mut Context) -> Trial {
    ctx.round += 1;
    let (c, h, reference, label) = loop {
        let input = rational_point(rng)?;
        let (c, h, label) = if ctx.round.is_multiple_of(2) {
            let gens = magic_words()
                .iter()
                .map(|w| BoundaryGenerator::new(&input.rep, w))
                .collect::<Result<Vec<_>>>()?;
            let m = match boundary_evaluation_complex(&input, &gens) {
                Ok(m) => m,
                Err(e) if e.kind() == ErrorKind::Degenerate => continue,
                Err(e) => return Err(e),
            };
            (m, vec![vec![], vec![], vec![]], "product with a circle")
        } else {
            let c = presentation_complex(&Presentation::free_f2(), &input.rep)?;
            (c, vec![vec![], input.tangent_vectors()?, vec![]], "handlebody")
        };
        match torsion_of_based_complex(&c, &h) {
            Ok(t) => break (c, h, t, label),
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            Err(e) => return Err(e),
        }
    };
    let perms: Vec<Vec<usize>> = c.dims().iter().map(|&n| random_perm(rng, n)).collect();
    let pc = c.permuted(&perms)?;
    let ph: Vec<Vec<Vec<Rat>>> = h
        .iter()
        .zip(&perms)
        .map(|(hs, p)| hs.iter().map(|v| permute_vec(v, p)).collect())
        .collect();
    let mut next = || small_rat(rng);
    let lifts = perturb_lifts(&pc, &canonical_lifts(&pc)?, &mut next)?;
    let mut t = torsion_with_lifts(&pc, &ph, &lifts)?;
    if tamper {
        t *= rat(2);
    }
    if t == reference || t == -reference.clone() {
        Ok(None)
    } else {
        Ok(Some(format!("{label}, permutations {perms:?}: torsion {t}, reference {reference}")))
    }
}

fn specialization(rng: &mut ChaCha8Rng, tamper: bool, ctx: &Context) -> Trial {
    let (gen_h, gen_m) = ctx.generic.as_ref().expect("generic torsion");
    let p = Presentation::free_f2();
    let words = magic_words();
    for _ in 0..1000 {
        let point = [small_rat(rng), small_rat(rng), small_rat(rng)];
        let attempt = (|| -> Result<(Rat, Rat)> {
            let input = TorsionInput::at_point(&point)?;
            let h = torsion_form(&p, TorsionKind::Handlebody, 1, &[], &input)?;
            let m = torsion_form(&p, TorsionKind::ProductCircle, 1, &words, &input)?;
            let value = |f: &sl2char::torsion::VolumeForm| f.rational_coefficient().eval(&[]);
            Ok((value(&h.form)?, value(&m.form)?))
        })();
        let (sh, sm) = match attempt {
            Ok(v) => v,
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            Err(e) => return Err(e),
        };
        let mut eh = gen_h.eval(&point)?;
        let em = gen_m.eval(&point)?;
        if tamper {
            eh *= rat(3);
        }
        let same = |a: &Rat, b: &Rat| a == b || a == &-b.clone();
        if !same(&sh, &eh) || !same(&sm, &em) {
            return Ok(Some(format!(
                "point ({}, {}, {}): specialized torsion ({sh}, {sm}), specialized generic torsion ({eh}, {em})",
                point[0], point[1], point[2]
            )));
        }
        return Ok(None);
    }
    Ok(Some("no regular random point found in 1000 draws".into()))
}
