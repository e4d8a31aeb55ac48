use gv_core::lie::{killing_form, validate_lie, Failure, Part};
use gv_core::linalg::{q, Q};
use gv_core::roots::{self, f4_positive_roots, f4_root_data};
use gv_core::{build_family, Family, FamilySpec, MultiForm};
use num_traits::Zero;

fn covector(data: &gv_core::LieAlgebraData, label: &str, c: i64) -> MultiForm {
    MultiForm::basis(data.dim(), data.label_index(label).unwrap()).scale_rational(&q(c))
}

#[test]
fn every_family_validates() {
    for spec in FamilySpec::all_in_range() {
        let data = build_family(spec).unwrap();
        let rep = validate_lie(&data);
        assert!(rep.is_valid(), "{spec}: {:?}", rep.failures);
        if data.complete {
            assert!(rep.skipped.is_empty(), "{spec}");
        }
    }
}

#[test]
fn dimensions_match_closed_forms() {
    for spec in FamilySpec::all_in_range() {
        let data = build_family(spec).unwrap();
        let n = spec.n as usize;
        let (dim, kg) = match spec.family {
            Family::Sl => ((n + 1) * (n + 1) - 1, None),
            Family::So => ((n + 2) * (n + 1) / 2, Some(n * (n + 1) / 2)),
            Family::Su => ((n + 2) * (n + 2) - 1, Some((n + 1) * (n + 1))),
            Family::Sp => ((n + 2) * (2 * n + 5), Some((n + 1) * (2 * n + 3) + 3)),
            Family::F4 => (52, None),
        };
        assert_eq!(data.dim(), dim, "{spec}");
        assert_eq!(data.indices(Part::V).len(), spec.q(), "{spec}");
        if let Some(k) = kg {
            assert_eq!(data.subspace("k_G").unwrap().len(), k, "{spec}");
        }
    }
}

#[test]
fn so_one_is_three_dimensional() {
    let data = build_family(FamilySpec::so(1).unwrap()).unwrap();
    assert_eq!(data.dim(), 3);
    assert_eq!(data.indices(Part::V).len(), 1);
}

#[test]
fn sl2_structure_equations() {
    // ω = E21^, η = 2 H^, θ = 2 E12^
    let data = build_family(FamilySpec::sl(1).unwrap()).unwrap();
    let omega = covector(&data, "E_21", 1);
    let eta = covector(&data, "H_1", 2);
    let theta = covector(&data, "E_12", 2);
    assert!(omega.ce_d(&data).unwrap().same_as(&eta.wedge(&omega).unwrap()));
    assert!(eta.ce_d(&data).unwrap().same_as(&omega.wedge(&theta).unwrap()));
    assert!(theta.ce_d(&data).unwrap().same_as(&eta.wedge(&theta).unwrap().neg()));
}

#[test]
fn perturbation_is_caught() {
    let data = build_family(FamilySpec::sl(1).unwrap()).unwrap();
    let e = data.label_index("E_12").unwrap();
    let f = data.label_index("E_21").unwrap();
    let bad = data.perturbed(e, f, e, q(1));
    let rep = validate_lie(&bad);
    assert!(rep.failures.iter().any(|x| matches!(x, Failure::Jacobi(..))));
}

#[test]
fn killing_is_trace_multiple() {
    // sl(m): 2m tr; so(n+2): n tr; sp(n+2): 2(n+3) tr
    let cases = [
        (FamilySpec::sl(2).unwrap(), q(6)),
        (FamilySpec::sl(4).unwrap(), q(10)),
        (FamilySpec::so(3).unwrap(), q(3)),
        (FamilySpec::su(1).unwrap(), q(6)),
        (FamilySpec::sp(0).unwrap(), q(6)),
        (FamilySpec::sp(1).unwrap(), q(8)),
    ];
    for (spec, c) in cases {
        let data = build_family(spec).unwrap();
        assert_eq!(data.trace_scale.clone().unwrap(), c, "{spec}");
        let b = killing_form(&data).unwrap();
        assert_eq!(b, data.killing);
    }
    let f4 = build_family(FamilySpec::f4()).unwrap();
    assert_eq!(killing_form(&f4).unwrap(), f4.killing);
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { q(18) } else { Q::zero() };
            assert_eq!(f4.killing[i][j], want);
        }
    }
}

#[test]
fn f4_roots() {
    let rs = f4_root_data();
    assert_eq!(f4_positive_roots().len(), 24);
    assert_eq!(rs.psi.len(), 15);
    assert_eq!(rs.phi.len(), 9);
    assert_eq!(rs.psi_sum(), vec![q(0), q(0), q(0), q(11)]);
}

#[test]
fn f4_cartan_differential() {
    // dλ3(E_a, E_-a) = -λ3(H_a) with B(H, H_a) = a(H)
    let data = build_family(FamilySpec::f4()).unwrap();
    let rs = f4_root_data();
    let l3 = MultiForm::basis(data.dim(), 3);
    let d = l3.ce_d(&data).unwrap();
    for (j, &ri) in rs.psi.iter().enumerate() {
        let (x, y) = rs.partners[j];
        let alpha = &rs.positive_roots[ri];
        // H_a = Σ a_i H_i / 18, so λ3(H_a) = a_3 / 18
        let want = -alpha[3].clone() / q(18);
        assert_eq!(d.coefficient(&[x, y]).to_rational().unwrap(), want);
    }
}

#[test]
fn psi_has_q_roots() {
    for spec in FamilySpec::all_in_range() {
        let data = build_family(spec).unwrap();
        let rs = roots::root_data(&data).unwrap();
        assert_eq!(rs.psi.len(), spec.q(), "{spec}");
        assert!(rs.positive_roots.iter().all(|r| r.iter().any(|c| !c.is_zero())));
    }
}

#[test]
fn out_of_range_parameters() {
    assert!(FamilySpec::sl(0).is_err());
    assert!(FamilySpec::so(0).is_err());
    assert!(FamilySpec::su(0).is_ok());
    assert!(FamilySpec::sp(0).is_ok());
}
