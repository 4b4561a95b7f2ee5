use proptest::prelude::*;
use stepanov::ffield::FieldCtx;
use stepanov::DensePoly;

const P: u64 = 97;

fn ctx() -> FieldCtx {
    FieldCtx::new(P).unwrap()
}

fn poly(max_len: usize) -> impl Strategy<Value = DensePoly> {
    prop::collection::vec(0..P, 0..max_len).prop_map(|c| DensePoly::new(ctx(), c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = DensePoly> {
    poly(max_len).prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn addition_is_an_abelian_group(a in poly(12), b in poly(12), c in poly(12)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &DensePoly::zero(ctx()), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn multiplication_laws(a in poly(10), b in poly(10), c in poly(10)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &DensePoly::one(ctx()), a.clone());
    }

    #[test]
    fn degree_of_product(a in nonzero_poly(10), b in nonzero_poly(10)) {
        prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
    }

    #[test]
    fn long_products_agree_with_schoolbook(a in prop::collection::vec(0..P, 60..200), b in prop::collection::vec(0..P, 60..200)) {
        let fa = DensePoly::new(ctx(), a.clone());
        let fb = DensePoly::new(ctx(), b.clone());
        let mut naive = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                naive[i + j] = (naive[i + j] + x * y) % P;
            }
        }
        prop_assert_eq!(&fa * &fb, DensePoly::new(ctx(), naive));
    }

    #[test]
    fn divrem_roundtrip(a in poly(16), b in nonzero_poly(8)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        if let Some(dr) = r.degree() {
            prop_assert!(dr < b.degree().unwrap());
        }
    }

    #[test]
    fn leibniz_rule(a in poly(10), b in poly(10)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicity_is_additive(a in nonzero_poly(8), b in nonzero_poly(8), x in 0..P) {
        let ma = a.multiplicity_at(x).unwrap();
        let mb = b.multiplicity_at(x).unwrap();
        prop_assert_eq!((&a * &b).multiplicity_at(x).unwrap(), ma + mb);
    }

    #[test]
    fn synthetic_division_is_evaluation(a in poly(12), x in 0..P) {
        let (q, v) = a.synthetic_div(x);
        prop_assert_eq!(v, a.eval(x));
        prop_assert_eq!(&(&q * &DensePoly::linear_root(ctx(), x)) + &DensePoly::constant(ctx(), v), a);
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(10), b in nonzero_poly(10), c in nonzero_poly(5)) {
        let g = (&a * &c).gcd(&(&b * &c)).unwrap();
        prop_assert!((&a * &c).exact_div(&g).unwrap().is_some());
        prop_assert!((&b * &c).exact_div(&g).unwrap().is_some());
        prop_assert!(g.exact_div(&c.monic()).unwrap().is_some());
        prop_assert_eq!(g.leading(), 1);
    }

    #[test]
    fn text_roundtrip(a in poly(12)) {
        prop_assert_eq!(DensePoly::parse(ctx(), &a.to_text()).unwrap(), a);
    }
}
