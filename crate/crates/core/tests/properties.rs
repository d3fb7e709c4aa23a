use proptest::prelude::*;
use spincm_core::linalg::{q, QMatrix};
use spincm_core::opalg::{compose, DiffOp, LaurentPoly, RationalCoeff};
use spincm_core::rootsys::{build_root_system, Weight};

const RANK: usize = 2;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 0..4).prop_map(|terms| {
        let mut p = LaurentPoly::zero(RANK);
        for ((a, b), c) in terms {
            p.add_term(Weight(vec![a, b]), q(c));
        }
        p
    })
}

fn root() -> impl Strategy<Value = Weight> {
    let rs = build_root_system(3).unwrap();
    let roots: Vec<Weight> = rs
        .positive_roots
        .iter()
        .flat_map(|r| [r.weight.clone(), -&r.weight])
        .collect();
    prop::sample::select(roots)
}

fn coeff() -> impl Strategy<Value = RationalCoeff> {
    (poly(), prop::collection::vec(root(), 0..3)).prop_map(|(p, dens)| {
        dens.iter()
            .fold(RationalCoeff::from_poly(p), |acc, b| &acc * &RationalCoeff::one_minus_inv(b))
    })
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((coeff(), 0usize..RANK, 0u32..2, prop::collection::vec(-2i64..=2, 4)), 1..3).prop_map(
        |parts| {
            let mut out = DiffOp::zero(RANK, 2, 2);
            for (c, i, order, m) in parts {
                let mat = QMatrix::from_i64(&[m[0..2].to_vec(), m[2..4].to_vec()]);
                let mut term = DiffOp::scalar_times(&c, &mat);
                for _ in 0..order {
                    term = compose(&term, &DiffOp::theta(RANK, 2, i)).unwrap();
                }
                out = out.add(&term).unwrap();
            }
            out
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&(&a + &b) - &b) - &a).is_zero());
    }

    #[test]
    fn laurent_theta_is_a_derivation(a in poly(), b in poly(), i in 0usize..RANK) {
        prop_assert_eq!((&a * &b).theta(i), &(&a.theta(i) * &b) + &(&a * &b.theta(i)));
    }

    #[test]
    fn division_by_one_minus_inverts_multiplication(a in poly(), beta in root()) {
        let prod = &a * &LaurentPoly::one_minus(&beta);
        prop_assert_eq!(prod.div_one_minus(&beta), Some(a));
    }

    #[test]
    fn rational_field_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a + &b) - &b) == a);
    }

    #[test]
    fn rational_theta_is_a_derivation(a in coeff(), b in coeff(), i in 0usize..RANK) {
        prop_assert_eq!((&a * &b).theta(i), &(&a.theta(i) * &b) + &(&a * &b.theta(i)));
    }

    #[test]
    fn rational_eval_respects_product(a in coeff(), b in coeff(), t0 in 0.05f64..0.45, t1 in 0.55f64..0.95) {
        let t = [t0, t1];
        let lhs = (&a * &b).eval(&t);
        let rhs = a.eval(&t) * b.eval(&t);
        prop_assert!((lhs - rhs).norm() <= 1e-6 * (1.0 + rhs.norm()));
    }

    #[test]
    fn compose_is_associative(p in diffop(), r in diffop(), s in diffop()) {
        let left = compose(&compose(&p, &r).unwrap(), &s).unwrap();
        let right = compose(&p, &compose(&r, &s).unwrap()).unwrap();
        prop_assert!(left.sub(&right).unwrap().is_zero());
    }

    #[test]
    fn reflections_preserve_the_form(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let rs = build_root_system(4).unwrap();
        let x = Weight(vec![a, b, c]);
        for i in 0..3 {
            let y = rs.reflect(&x, i);
            prop_assert_eq!(rs.form(&y, &y), rs.form(&x, &x));
            prop_assert_eq!(rs.reflect(&y, i), x.clone());
        }
    }
}
