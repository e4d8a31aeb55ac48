use gv_core::linalg::{q, Q};
use gv_core::weil::{all_monomials, wo_differential, WOElement};
use gv_core::{build_family, ExactScalar, FamilySpec, MultiForm};
use num_bigint::BigInt;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-40i64..40, 1i64..40, -3i64..4, prop::bool::ANY).prop_map(|(a, b, p, root)| {
        if a == 0 {
            return ExactScalar::zero();
        }
        let r = ExactScalar::from_ratio(&Q::new(BigInt::from(a), BigInt::from(b))).unwrap();
        let r = r.mul(&ExactScalar::pi_pow(p));
        if root {
            r.mul(&ExactScalar::prime_half_pow(3, 1))
        } else {
            r
        }
    })
}

fn form(dim: usize, degree: usize) -> impl Strategy<Value = MultiForm> {
    prop::collection::vec((prop::collection::btree_set(0..dim, degree), -3i64..4), 0..6).prop_map(move |terms| {
        let mut f = MultiForm::zero(dim, degree);
        for (idx, c) in terms {
            let idx: Vec<usize> = idx.into_iter().collect();
            f = f.add(&MultiForm::monomial(dim, &idx, q(c))).unwrap();
        }
        f
    })
}

proptest! {
    #[test]
    fn scalar_mul_div_round_trip(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn scalar_text_and_json_round_trip(a in scalar()) {
        let parsed: ExactScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &a);
        prop_assert_eq!(ExactScalar::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn scalar_pow_adds_exponents(a in scalar(), m in -3i64..4, k in -3i64..4) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.pow(m).unwrap().mul(&a.pow(k).unwrap()), a.pow(m + k).unwrap());
    }

    #[test]
    fn ce_d_squared_is_zero(f in form(8, 2), g in form(8, 1)) {
        let data = build_family(FamilySpec::sl(2).unwrap()).unwrap();
        prop_assert!(f.ce_d(&data).unwrap().ce_d(&data).unwrap().is_zero());
        prop_assert!(g.ce_d(&data).unwrap().ce_d(&data).unwrap().is_zero());
    }

    #[test]
    fn ce_d_is_a_graded_derivation(f in form(10, 1), g in form(10, 2)) {
        let data = build_family(FamilySpec::so(3).unwrap()).unwrap();
        let lhs = f.wedge(&g).unwrap().ce_d(&data).unwrap();
        let rhs = f.ce_d(&data).unwrap().wedge(&g).unwrap()
            .sub(&f.wedge(&g.ce_d(&data).unwrap()).unwrap()).unwrap();
        prop_assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(a in form(7, 1), b in form(7, 2), c in form(7, 1)) {
        let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(l.same_as(&r));
        prop_assert!(a.wedge(&c).unwrap().same_as(&c.wedge(&a).unwrap().neg()));
        prop_assert!(a.wedge(&b).unwrap().same_as(&b.wedge(&a).unwrap()));
    }

    #[test]
    fn wo_d_squared_is_zero(qq in 1usize..5, picks in prop::collection::vec((0usize..64, -3i64..4), 1..5)) {
        let all = all_monomials(qq);
        let mut e = WOElement::zero(qq);
        for (i, c) in picks {
            let m = all[i % all.len()].clone();
            e = e.add(&WOElement { q: qq, terms: [(m, q(c))].into_iter().collect() });
        }
        prop_assert!(wo_differential(&wo_differential(&e)).is_zero());
    }
}
