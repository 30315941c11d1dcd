use proptest::prelude::*;

use sl2char::algebra::{rat, Field, MPoly, Matrix, Modulus, QuadExt, Rat, RatFn, Ring, Vars};
use sl2char::saito::{sl2_inverse, tautological_rep, tautological_system};
use sl2char::skein::trace_polynomial;
use sl2char::words::{fox_derivative, GroupRingElem, Letter, Word};

fn poly_strategy(max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..=5), 0..=max_terms).prop_map(|terms| {
        let vars = Vars::xyz();
        terms.into_iter().fold(MPoly::zero(&vars), |acc, (a, b, c, k)| {
            let m = &(&MPoly::xyz("x").pow(a) * &MPoly::xyz("y").pow(b)) * &MPoly::xyz("z").pow(c);
            &acc + &m.scale(&rat(k))
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    poly_strategy(3).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn_strategy() -> impl Strategy<Value = RatFn> {
    (poly_strategy(3), nonzero_poly()).prop_map(|(n, d)| RatFn::new(n, d).unwrap())
}

fn quadext_strategy() -> impl Strategy<Value = QuadExt> {
    (poly_strategy(2), poly_strategy(2))
        .prop_map(|(a, b)| Modulus::tautological().elem(RatFn::from_poly(a), RatFn::from_poly(b)))
}

fn letters_strategy(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0u8..2, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max_len)
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    letters_strategy(max_len).prop_map(Word::from_letters)
}

fn point_strategy() -> impl Strategy<Value = [Rat; 3]> {
    prop::array::uniform3((-9i64..=9, 1i64..=5).prop_map(|(n, d)| sl2char::algebra::ratio(n, d)))
}

fn cofactor_det(m: &Matrix<MPoly>) -> MPoly {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = MPoly::zero(&Vars::xyz());
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = &m[(0, j)] * &cofactor_det(&m.submatrix(&rows, &cols));
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn ratfn_field_axioms(a in ratfn_strategy(), b in ratfn_strategy(), c in ratfn_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn quadext_field_axioms(a in quadext_strategy(), b in quadext_strategy(), c in quadext_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(entries in prop::collection::vec(poly_strategy(2), 9..=9)) {
        let m = Matrix::from_fn(3, 3, &MPoly::zero(&Vars::xyz()), |i, j| entries[3 * i + j].clone());
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn specialization_is_a_homomorphism(a in ratfn_strategy(), b in ratfn_strategy(), p in point_strategy()) {
        if let (Ok(va), Ok(vb)) = (a.eval(&p), b.eval(&p)) {
            prop_assert_eq!((&a * &b).eval(&p).unwrap(), va.clone() * &vb);
            prop_assert_eq!((&a + &b).eval(&p).unwrap(), va + vb);
        }
    }

    #[test]
    fn quadext_specialization_at_a_root(a in quadext_strategy(), b in quadext_strategy(), w in 2i64..9) {
        // z = w + 1/w has the root u = -w
        let wq = rat(w);
        let z = wq.clone() + wq.recip();
        let p = [rat(1), rat(3), z];
        let u0 = -wq;
        let sa = a.specialize(&p, &u0).unwrap();
        let sb = b.specialize(&p, &u0).unwrap();
        prop_assert_eq!((&a * &b).specialize(&p, &u0).unwrap(), sa * sb);
    }

    #[test]
    fn leibniz_rule(a in quadext_strategy(), b in quadext_strategy()) {
        for v in ["x", "y", "z"] {
            let lhs = (&a * &b).derive(v).unwrap();
            let rhs = &(&a.derive(v).unwrap() * &b) + &(&a * &b.derive(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fox_fundamental_identity(w in word_strategy(12)) {
        // w - 1 = Σ_g (∂w/∂g)(g - 1)
        let mut rhs = GroupRingElem::zero();
        for g in 0..2u8 {
            let gm1 = GroupRingElem::from_word(Word::generator(g)).sub(&GroupRingElem::one());
            rhs = rhs.add(&fox_derivative(&w, g).mul(&gm1));
        }
        prop_assert_eq!(GroupRingElem::from_word(w).sub(&GroupRingElem::one()), rhs);
    }

    #[test]
    fn free_reduction_is_confluent(u in letters_strategy(10), v in letters_strategy(10)) {
        let whole = Word::from_letters(u.iter().chain(v.iter()).copied());
        let parts = Word::from_letters(u.iter().copied()).mul(&Word::from_letters(v.iter().copied()));
        prop_assert_eq!(&whole, &parts);
        prop_assert!(whole.mul(&whole.inv()).is_empty());
    }

    #[test]
    fn trace_invariances(w in word_strategy(10), k in 0usize..10) {
        let t = trace_polynomial(&w).unwrap();
        let c = w.cyclically_reduce();
        prop_assert_eq!(&trace_polynomial(&c.rotate(k)).unwrap(), &t);
        prop_assert_eq!(&trace_polynomial(&w.inv()).unwrap(), &t);
    }

    #[test]
    fn skein_relation(u in word_strategy(7), v in word_strategy(7)) {
        let lhs = &trace_polynomial(&u.mul(&v)).unwrap() + &trace_polynomial(&u.mul(&v.inv())).unwrap();
        let rhs = &trace_polynomial(&u).unwrap() * &trace_polynomial(&v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_polynomial_matches_matrix_product(w in word_strategy(14)) {
        let rep = tautological_rep();
        let tr = rep.trace(&w).unwrap();
        let base = tr.to_base().expect("u-free trace");
        let poly = base.as_poly().expect("polynomial trace");
        prop_assert_eq!(poly, &trace_polynomial(&w).unwrap());
    }

    #[test]
    fn reconstruction_matches_product(w in word_strategy(10)) {
        let rep = tautological_rep();
        let sys = tautological_system();
        let direct = rep.eval(&w).unwrap();
        let rec = sys.reconstruct(&w).unwrap();
        prop_assert_eq!(&rec, &direct);
        prop_assert!(sl2char::saito::det2(&rec).is_one());
        let inv = sl2_inverse(&rec);
        prop_assert!((&rec * &inv) == Matrix::identity(2, rep.like()));
    }
}
