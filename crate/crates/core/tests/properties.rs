use proptest::prelude::*;
use skeinrec::oracle::{BracketConvention, Pinned};
use skeinrec::{
    braid_to_morse, eval_homfly, eval_kauffman, verify_recursion, Bmw2, BraidWord, ClosureSide, FunctorSpec, Hecke2,
    LaurentPoly, Monomial, MorseWord, Scalar, Var,
};

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-3i32..=3, 5).prop_map(|e| {
        let vars = [Var::Q, Var::T, Var::S, Var::U, Var::A];
        let s = Scalar::mono(&vars.iter().copied().zip(e).collect::<Vec<_>>());
        s.numerator().as_unit_monomial().unwrap().1
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (prop::collection::vec((-4i64..=4, monomial()), 0..4), 0u32..3).prop_map(|(terms, k)| {
        let num: Scalar = terms.into_iter().map(|(c, m)| Scalar::monomial(c, m)).sum();
        &num * &Scalar::inv_z_pow(k)
    })
}

/// A unit monomial in the non-`q` variables.
fn binding_value() -> impl Strategy<Value = LaurentPoly> {
    (prop::sample::select(vec![1i64, -1]), -2i32..=2, -2i32..=2, -1i32..=1).prop_map(|(c, t, s, a)| {
        let m = Scalar::mono(&[(Var::T, t), (Var::S, s), (Var::A, a)]);
        LaurentPoly::term(c, m.numerator().as_unit_monomial().unwrap().1)
    })
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let g = (1..n as i32).prop_flat_map(|k| prop::sample::select(vec![k, -k]));
        prop::collection::vec(g, 0..=max_len).prop_map(move |gens| BraidWord { strands: n, generators: gens })
    })
}

fn closures(b: &BraidWord) -> (MorseWord, MorseWord) {
    (braid_to_morse(b, ClosureSide::Left), braid_to_morse(b, ClosureSide::Right))
}

fn hecke() -> impl Strategy<Value = Hecke2> {
    (scalar(), scalar()).prop_map(|(c_id, c_x)| Hecke2 { c_id, c_x })
}

fn bmw() -> impl Strategy<Value = Bmw2> {
    (scalar(), scalar(), scalar()).prop_map(|(c_id, c_x, c_e)| Bmw2 { c_id, c_x, c_e })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn substitution_is_a_ring_map(a in scalar(), b in scalar(), t in binding_value(), s in binding_value()) {
        let bind = [(Var::T, t), (Var::S, s)];
        let f = |x: &Scalar| x.substitute(&bind).unwrap();
        prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
        prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
    }

    #[test]
    fn rendering_is_canonical(a in scalar(), b in scalar()) {
        prop_assert_eq!(a == b, a.to_string() == b.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn typed_algebras_associate(x in hecke(), y in hecke(), z in hecke(), u in bmw(), v in bmw(), w in bmw()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_side_does_not_matter(b in braid(3, 6)) {
        let (l, r) = closures(&b);
        prop_assert_eq!(eval_homfly(&l, Var::T).unwrap(), eval_homfly(&r, Var::T).unwrap());
        prop_assert_eq!(
            eval_kauffman(&l.unoriented(Var::S)).unwrap(),
            eval_kauffman(&r.unoriented(Var::S)).unwrap()
        );
    }

    #[test]
    fn mirror_inverts_q_and_framing(b in braid(3, 6)) {
        let (l, _) = closures(&b);
        let m = l.mirror();
        prop_assert_eq!(
            eval_homfly(&m, Var::T).unwrap(),
            eval_homfly(&l, Var::T).unwrap().invert_vars(&[Var::Q, Var::T])
        );
        let u = l.unoriented(Var::S);
        prop_assert_eq!(
            eval_kauffman(&u.mirror()).unwrap(),
            eval_kauffman(&u).unwrap().invert_vars(&[Var::Q, Var::S])
        );
    }

    #[test]
    fn disjoint_union_multiplies(a in braid(3, 4), b in braid(2, 4)) {
        let (x, _) = closures(&a);
        let (y, _) = closures(&b);
        let xy = MorseWord::disjoint_union(&x, &y).unwrap();
        prop_assert_eq!(
            eval_homfly(&xy, Var::T).unwrap(),
            &eval_homfly(&x, Var::T).unwrap() * &eval_homfly(&y, Var::T).unwrap()
        );
    }

    #[test]
    fn oracle_agrees_with_skein(b in braid(4, 7)) {
        let (l, _) = closures(&b);
        let pinned = Pinned { conv: BracketConvention::Plus, component_sign: 1 };
        prop_assert!(pinned.matches(&l).unwrap(), "{:?}", b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn recursion_on_random_braids(b in braid(3, 3)) {
        let (l, _) = closures(&b);
        for spec in FunctorSpec::all() {
            let r = verify_recursion(&spec, &l).unwrap();
            prop_assert!(r.equal, "{} {:?}: {} != {}", spec.id.name(), b, r.lhs, r.rhs);
        }
    }
}
