//! Randomized property suites: cyclotomic field axioms, adjoint and
//! Kronecker identities, word-length axioms, and parser round-trips.
//! Each suite runs 1000 cases.

use proptest::prelude::*;

use qisolab::cyclotomic::CyclotomicScalar;
use qisolab::group::Group;
use qisolab::matrix::Matrix;
use qisolab::parse::parse_polynomial;
use qisolab::poly::{Atom, StarPolynomial};
use qisolab::rational::Rational;

const CASES: u32 = 1000;

fn small_orders() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 12])
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(p, q)| Rational::new(p, q))
}

fn scalar_strategy() -> impl Strategy<Value = CyclotomicScalar> {
    (
        small_orders(),
        rational_strategy(),
        prop::collection::vec((rational_strategy(), 0i64..12), 0..3),
    )
        .prop_map(|(n, c0, terms)| {
            let mut acc = CyclotomicScalar::from_rational(c0);
            for (c, k) in terms {
                let root = CyclotomicScalar::root_of_unity(n, k).expect("supported order");
                acc = acc + root.scale(&c);
            }
            acc
        })
}

fn matrix_strategy(dim: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar_strategy(), dim * dim)
        .prop_map(move |entries| Matrix::new(dim, dim, entries).expect("supported orders"))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, .. ProptestConfig::default() })]

    #[test]
    fn scalar_equality_is_canonical(x in scalar_strategy(), y in scalar_strategy()) {
        // x == y exactly when x - y reduces to the zero coefficient vector.
        prop_assert_eq!(x == y, (&x - &y).is_zero());
        // A scalar rebuilt at a doubled order is the same scalar.
        if x.order() * 2 <= 24 {
            let lifted = x.lift(x.order() * 2).unwrap();
            prop_assert_eq!(&lifted, &x);
        }
    }

    #[test]
    fn field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &CyclotomicScalar::zero(), a.clone());
        prop_assert_eq!(&a * &CyclotomicScalar::one(), a);
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in scalar_strategy(), b in scalar_strategy()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        // |a|^2 is real: fixed by conjugation.
        let n = a.abs_sq();
        prop_assert_eq!(n.conjugate(), n);
    }

    #[test]
    fn adjoint_reverses_products_2x2(a in matrix_strategy(2), b in matrix_strategy(2)) {
        prop_assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn adjoint_reverses_products_3x3(a in matrix_strategy(3), b in matrix_strategy(3)) {
        prop_assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
    }

    #[test]
    fn kronecker_mixed_product(
        a in matrix_strategy(2),
        b in matrix_strategy(2),
        c in matrix_strategy(2),
        d in matrix_strategy(2),
    ) {
        let lhs = a.kronecker(&b).unwrap().mul(&c.kronecker(&d).unwrap()).unwrap();
        let rhs = a.mul(&c).unwrap().kronecker(&b.mul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.kronecker(&b).unwrap().adjoint(),
                        a.adjoint().kronecker(&b.adjoint()).unwrap());
    }
}

fn group_strategy() -> impl Strategy<Value = Group> {
    prop::sample::select(vec![
        "cyclic:5",
        "cyclic:6",
        "cyclic:4:large",
        "s3:transpositions",
        "s3:dihedral",
        "free:2",
        "freeabelian:2",
    ])
    .prop_map(|spec| Group::parse_spec(spec).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, .. ProptestConfig::default() })]

    #[test]
    fn length_axioms(
        group in group_strategy(),
        raw_g in prop::collection::vec(0usize..6, 0..5),
        raw_h in prop::collection::vec(0usize..6, 0..5),
    ) {
        let word = |raw: &[usize]| -> Vec<usize> {
            raw.iter().map(|i| i % group.gen_count()).collect()
        };
        let g = group.reduce(&word(&raw_g)).unwrap();
        let h = group.reduce(&word(&raw_h)).unwrap();
        let lg = group.word_length(&g).unwrap();
        let lh = group.word_length(&h).unwrap();
        prop_assert_eq!(lg == 0, g == group.identity());
        prop_assert_eq!(group.word_length(&group.inverse(&g).unwrap()).unwrap(), lg);
        let gh = group.multiply(&g, &h).unwrap();
        prop_assert!(group.word_length(&gh).unwrap() <= lg + lh);
    }

    #[test]
    fn reduced_word_length_bounded_by_formal_length(
        raw in prop::collection::vec(0usize..4, 0..7),
    ) {
        let f2 = Group::free(2).unwrap();
        let g = f2.reduce(&raw).unwrap();
        let l = f2.word_length(&g).unwrap();
        prop_assert!(l <= raw.len());
        // Equality exactly when the formal word is already reduced.
        let reduced = raw.windows(2).all(|p| f2.gen_inverse_index(p[0]) != p[1]);
        prop_assert_eq!(l == raw.len(), reduced);
    }
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    (prop::sample::select(vec!["A", "B", "C"]), any::<bool>()).prop_map(|(label, star)| {
        if star {
            Atom::starred(label)
        } else {
            Atom::plain(label)
        }
    })
}

fn polynomial_strategy() -> impl Strategy<Value = StarPolynomial> {
    prop::collection::vec(
        (scalar_strategy(), prop::collection::vec(atom_strategy(), 0..4)),
        1..4,
    )
    .prop_map(StarPolynomial::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, .. ProptestConfig::default() })]

    #[test]
    fn parser_round_trips_canonical_forms(p in polynomial_strategy()) {
        let printed = p.to_string();
        let reparsed = parse_polynomial(&printed)
            .unwrap_or_else(|e| panic!("cannot reparse `{printed}`: {e}"));
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn evaluation_is_linear_and_multiplicative(
        p in polynomial_strategy(),
        q in polynomial_strategy(),
    ) {
        use qisolab::model::MatrixModel;
        use qisolab::presentation::evaluate;
        let mut model = MatrixModel::new("props", 2);
        model.assign("A", qisolab::matrix::pauli(1)).unwrap();
        model.assign("B", qisolab::matrix::pauli(2)).unwrap();
        model.assign("C", qisolab::matrix::pauli(3)).unwrap();
        let ep = evaluate(&p, &model).unwrap();
        let eq = evaluate(&q, &model).unwrap();
        prop_assert_eq!(evaluate(&p.add(&q), &model).unwrap(), ep.add(&eq).unwrap());
        prop_assert_eq!(evaluate(&p.mul(&q), &model).unwrap(), ep.mul(&eq).unwrap());
        prop_assert_eq!(evaluate(&p.adjoint(), &model).unwrap(), ep.adjoint());
    }
}
