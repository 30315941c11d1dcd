use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sl2char::algebra::{rat, ratio, Field, Rat, RatFn};
use sl2char::torsion::{
    boundary_evaluation_torsion, handlebody_torsion, torsion_form, BoundaryGenerator, TorsionInput, TorsionKind,
};
use sl2char::words::{parse_f2, Presentation, Word};
use sl2char::{Error, ErrorKind};

fn w(s: &str) -> Word {
    parse_f2(s).unwrap()
}

fn magic_words() -> [Word; 3] {
    [w("a"), w("b"), w("BA")]
}

fn constant(r: &RatFn) -> Rat {
    r.constant_value().expect("constant")
}

#[test]
fn normalized_generators_scale_the_torsion() {
    // x² - 4, y² - 4, z² - 4 are squares: (3/2)², (8/3)², (15/4)²; u = -4 solves u² + z u + 1
    let point = [ratio(5, 2), ratio(10, 3), ratio(17, 4)];
    let input = TorsionInput::at_root(&point, &rat(-4)).unwrap();
    let f = handlebody_torsion(&input).unwrap();
    let gens: Vec<BoundaryGenerator<Rat>> =
        magic_words().iter().map(|c| BoundaryGenerator::new(&input.rep, c).unwrap()).collect();
    let t = f.clone() / boundary_evaluation_torsion(&input, &gens).unwrap();
    assert_eq!(t.abs(), rat(1));

    let scales = [ratio(4, 3), ratio(3, 4), ratio(8, 15)];
    let normalized: Vec<_> = gens.iter().zip(&scales).map(|(g, s)| g.scaled(s)).collect();
    for g in &normalized {
        assert_eq!(g.norm_sq, rat(2));
    }
    let tn = f / boundary_evaluation_torsion(&input, &normalized).unwrap();
    assert_eq!(tn.abs(), ratio(8, 15) * t.abs());

    // the formal normalized form: 8 over √((x²-4)(y²-4)(z²-4)) = 8 / (3/2 · 8/3 · 15/4)
    let generic = TorsionInput::generic().unwrap();
    let report =
        torsion_form(&Presentation::free_f2(), TorsionKind::ProductCircle, 1, &magic_words(), &generic).unwrap();
    let n = report.normalized().unwrap();
    let roots = [ratio(3, 2), ratio(8, 3), ratio(15, 4)];
    for (rad, root) in n.radicands.iter().zip(&roots) {
        assert_eq!(rad.eval(&point), root.clone() * root);
    }
    let value = constant(&n.coefficient) / (roots[0].clone() * &roots[1] * &roots[2]);
    assert_eq!(value.abs(), tn.abs());
    assert_eq!(
        n.to_string(),
        "8 dx^dy^dz / sqrt((x^2 - 4)*(y^2 - 4)*(z^2 - 4)) (up to sign)"
    );
}

#[test]
fn specialization_commutes_with_torsion() {
    let generic = TorsionInput::generic().unwrap();
    let p = Presentation::free_f2();
    let gf = torsion_form(&p, TorsionKind::Handlebody, 1, &[], &generic).unwrap();
    let gm = torsion_form(&p, TorsionKind::ProductCircle, -1, &magic_words(), &generic).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 20 {
        let mut r = || ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        let point = [r(), r(), r()];
        let input = match TorsionInput::at_point(&point) {
            Ok(i) => i,
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            Err(e) => panic!("{e}"),
        };
        let sf = match torsion_form(&p, TorsionKind::Handlebody, 1, &[], &input) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            Err(e) => panic!("{e}"),
        };
        let sm = match torsion_form(&p, TorsionKind::ProductCircle, -1, &magic_words(), &input) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::Degenerate => continue,
            Err(e) => panic!("{e}"),
        };
        let at = |r: &RatFn| r.eval(&point).unwrap().abs();
        assert_eq!(constant(sf.form.rational_coefficient()).abs(), at(gf.form.rational_coefficient()));
        assert_eq!(constant(sm.form.rational_coefficient()).abs(), at(gm.form.rational_coefficient()));
        assert_eq!(constant(sm.g.as_ref().unwrap()).abs(), at(gm.g.as_ref().unwrap()));
        checked += 1;
    }
}

#[test]
fn degenerate_boundary_is_reported() {
    let generic = TorsionInput::generic().unwrap();
    let err = torsion_form(&Presentation::free_f2(), TorsionKind::ProductCircle, 1, &[w("a"), w("a"), w("b")], &generic)
        .unwrap_err();
    assert!(matches!(err, Error::DegenerateBoundary(_)), "{err}");
    let err = torsion_form(&Presentation::free_f2(), TorsionKind::ProductCircle, 1, &[w("a"), w("b"), w("")], &generic)
        .unwrap_err();
    assert!(matches!(err, Error::ParabolicBoundary(_)), "{err}");
}

#[test]
fn handlebody_and_product_share_f() {
    let generic = TorsionInput::generic().unwrap();
    let p = Presentation::free_f2();
    let h = torsion_form(&p, TorsionKind::Handlebody, 1, &[], &generic).unwrap();
    let m = torsion_form(&p, TorsionKind::ProductCircle, 1, &magic_words(), &generic).unwrap();
    assert_eq!(h.f, m.f);
    let ratio_fg = Field::div(&m.f, m.g.as_ref().unwrap()).unwrap();
    assert_eq!(&ratio_fg, m.form.rational_coefficient());
    // the other orientation of the third curve gives the same value
    let m2 = torsion_form(&p, TorsionKind::ProductCircle, 1, &[w("a"), w("b"), w("ab")], &generic).unwrap();
    assert!(m2.form.equals_up_to_sign(&m.form));
}
