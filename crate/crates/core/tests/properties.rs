//! Property tests for the algebraic invariants of the engine.

use std::sync::{Arc, OnceLock};

use ncgalois::action::LeftAction;
use ncgalois::bimodule::{Calculus, DualElement};
use ncgalois::galois::Side;
use ncgalois::suites::numeric_point;
use ncgalois::*;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn catalog() -> &'static Catalog<Scalar> {
    static CAT: OnceLock<Catalog<Scalar>> = OnceLock::new();
    CAT.get_or_init(|| Catalog::new(Arc::new(Registry::standard()), Arc::new(Symbolic)))
}

fn hopf() -> Arc<HopfStructure<Scalar>> {
    static H: OnceLock<Arc<HopfStructure<Scalar>>> = OnceLock::new();
    H.get_or_init(|| Arc::new(HopfStructure::from_catalog(catalog()).unwrap())).clone()
}

fn action() -> &'static LeftAction<Scalar> {
    static A: OnceLock<LeftAction<Scalar>> = OnceLock::new();
    A.get_or_init(|| LeftAction::from_catalog(catalog(), hopf(), "frame_action").unwrap())
}

fn cotangent() -> &'static Calculus<Scalar> {
    static C: OnceLock<Calculus<Scalar>> = OnceLock::new();
    C.get_or_init(|| Calculus::cotangent(catalog()).unwrap())
}

fn alg(name: &str) -> Arc<Algebra<Scalar>> {
    catalog().algebra(name).unwrap()
}

/// A polynomial over raw (not necessarily normal) words.
fn raw_poly(alg: &Algebra<Scalar>, rng: &mut ChaCha8Rng, max_len: usize, terms: usize) -> Poly<Scalar> {
    let n = alg.alphabet().len() as Letter;
    let mut f = Poly::zero();
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let w = Word::from_letters(&(0..len).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>());
        let c = Scalar::laurent(rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        f.add_term(w, c.apply(ScalarOp::Mul, &Scalar::from_int(rng.gen_range(1..=3))).unwrap());
    }
    f
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i32..=2, -2i32..=2, -3i64..=3, 0i32..=2).prop_map(|(a, i, j, b, k)| {
        let t = Scalar::from_int(a).apply(ScalarOp::Mul, &Scalar::laurent(i, j)).unwrap();
        let u = Scalar::from_int(b).apply(ScalarOp::Mul, &Scalar::laurent(k, 0)).unwrap();
        let num = t.apply(ScalarOp::Add, &u).unwrap();
        let den = Scalar::q().apply(ScalarOp::Add, &Scalar::from_int(1)).unwrap();
        num.apply(ScalarOp::Div, &den).unwrap()
    })
}

const CONFLUENT: &[&str] = &["quantum_plane", "gl2", "frame_bundle", "cotangent_calculus", "tangent_calculus"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_form_a_field(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn specialization_is_a_ring_map(a in scalar_strategy(), b in scalar_strategy(), seed in any::<u64>()) {
        let pt = numeric_point(seed);
        let ev = |s: &Scalar| s.specialize(&pt.p, &pt.q);
        if let (Ok(x), Ok(y)) = (ev(&a), ev(&b)) {
            prop_assert_eq!(ev(&(&a * &b)).unwrap(), &x * &y);
            prop_assert_eq!(ev(&(&a + &b)).unwrap(), &x + &y);
        }
    }

    #[test]
    fn word_order_is_a_monomial_order(
        u in prop::collection::vec(0u8..4, 0..5),
        v in prop::collection::vec(0u8..4, 0..5),
        w in prop::collection::vec(0u8..4, 0..5),
    ) {
        let (u, v, w) = (Word::from_letters(&u), Word::from_letters(&v), Word::from_letters(&w));
        let o = u.cmp(&v);
        prop_assert_eq!(w.concat(&u).cmp(&w.concat(&v)), o);
        prop_assert_eq!(u.concat(&w).cmp(&v.concat(&w)), o);
        prop_assert!(Word::empty() <= u);
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in any::<u64>(), which in 0..CONFLUENT.len()) {
        let a = alg(CONFLUENT[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = raw_poly(&a, &mut rng, 4, 3);
        let g = raw_poly(&a, &mut rng, 4, 3);
        let nf = a.nf(&f);
        prop_assert_eq!(a.nf(&nf), nf.clone());
        let (s, t) = (Scalar::p(), Scalar::laurent(0, -1));
        let lhs = a.nf(&f.scale(&s).add(&g.scale(&t)));
        prop_assert_eq!(lhs, nf.scale(&s).add(&a.nf(&g).scale(&t)));
    }

    #[test]
    fn normal_form_is_multiplicative(seed in any::<u64>(), which in 0..CONFLUENT.len()) {
        let a = alg(CONFLUENT[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = raw_poly(&a, &mut rng, 3, 2);
        let g = raw_poly(&a, &mut rng, 3, 2);
        prop_assert_eq!(a.nf(&f.mul(&g)), a.nf(&a.nf(&f).mul(&a.nf(&g))));
    }

    #[test]
    fn reduction_order_does_not_matter(seed in any::<u64>(), which in 0..CONFLUENT.len()) {
        let a = alg(CONFLUENT[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = raw_poly(&a, &mut rng, 5, 3);
        let mut strategy = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        prop_assert_eq!(a.system().reduce_with(&f, &mut strategy), a.nf(&f));
    }

    #[test]
    fn printing_then_parsing_is_the_identity(seed in any::<u64>(), which in 0..CONFLUENT.len()) {
        let a = alg(CONFLUENT[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = a.random_element(&mut rng, 4, 4);
        prop_assert_eq!(a.parse(&a.fmt(&f)).unwrap(), f);
    }

    #[test]
    fn specialization_commutes_with_normal_form(seed in any::<u64>(), which in 0..CONFLUENT.len()) {
        let name = CONFLUENT[which];
        let a = alg(name);
        let pt = numeric_point(seed);
        let num = Catalog::<Rational>::new(Arc::new(Registry::standard()), Arc::new(pt.clone()));
        let b = num.algebra(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = raw_poly(&a, &mut rng, 4, 3);
        let sym = a.nf(&f).map_coeffs(|c| pt.lift(c)).unwrap();
        let numeric = b.nf(&f.map_coeffs(|c| pt.lift(c)).unwrap());
        prop_assert_eq!(sym, numeric);
    }

    #[test]
    fn coproduct_is_multiplicative(seed in any::<u64>()) {
        let h = hopf();
        let a = h.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = a.random_element(&mut rng, 2, 2);
        let g = a.random_element(&mut rng, 2, 2);
        let sq = h.square();
        prop_assert_eq!(h.coproduct(&a.mul(&f, &g)), sq.mul(&h.coproduct(&f), &h.coproduct(&g)));
    }

    #[test]
    fn antipode_and_counit_laws(seed in any::<u64>()) {
        let h = hopf();
        let a = h.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = a.random_element(&mut rng, 3, 3);
        let mut left = Poly::zero();
        let mut right = Poly::zero();
        let mut counit_left = Poly::zero();
        for (ws, c) in h.sweedler_poly(&f, 2) {
            let (x, y) = (Poly::word(ws[0].clone()), Poly::word(ws[1].clone()));
            left.add_scaled(&a.mul(&h.antipode(&x), &y), &c);
            right.add_scaled(&a.mul(&x, &h.antipode(&y)), &c);
            counit_left.add_scaled(&y.scale(&h.counit(&x)), &c);
        }
        let unit = Poly::constant(h.counit(&f));
        prop_assert_eq!(a.nf(&left), unit.clone());
        prop_assert_eq!(a.nf(&right), unit);
        prop_assert_eq!(a.nf(&counit_left), f);
    }

    #[test]
    fn action_satisfies_the_product_rule(seed in any::<u64>()) {
        let act = action();
        let h = act.hopf();
        let (ha, b) = (h.algebra(), act.module());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ha.random_element(&mut rng, 2, 2);
        let u = b.random_element(&mut rng, 2, 2);
        let v = b.random_element(&mut rng, 2, 2);
        let lhs = act.apply(&g, &b.mul(&u, &v));
        let mut rhs = Poly::zero();
        for (ws, c) in h.sweedler_poly(&g, 2) {
            let x = act.apply(&Poly::word(ws[0].clone()), &u);
            let y = act.apply(&Poly::word(ws[1].clone()), &v);
            rhs.add_scaled(&b.mul(&x, &y), &c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_obeys_leibniz(seed in any::<u64>()) {
        let cot = cotangent();
        let base = &cot.base;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = base.random_element(&mut rng, 3, 3);
        let v = base.random_element(&mut rng, 3, 3);
        let lhs = cot.differential(&base.mul(&u, &v)).unwrap();
        let du_v = cot.differential(&u).unwrap().mul(&cot.from_base(&v).unwrap());
        let u_dv = cot.from_base(&u).unwrap().mul(&cot.differential(&v).unwrap());
        prop_assert_eq!(lhs, cot.right.nf(&du_v.add(&u_dv)));
    }

    #[test]
    fn calculus_coefficients_reassemble(seed in any::<u64>(), left in any::<bool>()) {
        let cot = cotangent();
        let side = if left { Side::Left } else { Side::Right };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c0 = cot.base.random_element(&mut rng, 3, 2);
        let c1 = cot.base.random_element(&mut rng, 3, 2);
        let m = cot.combine([&c0, &c1], side).unwrap();
        let [d0, d1] = cot.coefficients(&m, side).unwrap();
        prop_assert_eq!((d0, d1), (c0, c1));
        prop_assert_eq!(cot.nf(&cot.nf(&m, Side::Left).unwrap(), Side::Right).unwrap(), m);
    }

    #[test]
    fn duals_are_bimodules(seed in any::<u64>(), left in any::<bool>(), i in 0usize..2) {
        let cot = cotangent();
        let base = &cot.base;
        let side = if left { Side::Left } else { Side::Right };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = base.random_element(&mut rng, 2, 2);
        let b2 = base.random_element(&mut rng, 2, 2);
        let x = DualElement::basis(side, i);
        let act = |g: &Poly<Scalar>, y: &DualElement<Scalar>, s| cot.dual_action(g, y, s).unwrap();
        // (b X) b2 = b (X b2)
        prop_assert_eq!(act(&b2, &act(&b, &x, Side::Left), Side::Right), act(&b, &act(&b2, &x, Side::Right), Side::Left));
        // (b b2) X = b (b2 X)
        prop_assert_eq!(act(&base.mul(&b, &b2), &x, Side::Left), act(&b, &act(&b2, &x, Side::Left), Side::Left));
        // X (b b2) = (X b) b2
        prop_assert_eq!(act(&base.mul(&b, &b2), &x, Side::Right), act(&b2, &act(&b, &x, Side::Right), Side::Right));
    }
}

#[test]
fn numeric_points_are_nondegenerate_and_seeded() {
    for seed in 0..50 {
        let pt = numeric_point(seed);
        assert!(!pt.is_degenerate());
        assert_eq!(pt, numeric_point(seed));
        assert_ne!(&pt.p * &pt.q, BigRational::from_integer(1.into()));
    }
}
