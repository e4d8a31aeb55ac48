use gv_core::chern_weil::{
    chern_forms, curvature, delta_h1, gv_is_basic_and_closed, pittie_connection,
};
use gv_core::form::basic_dimension;
use gv_core::lie::Part;
use gv_core::linalg::{q, Q};
use gv_core::roots::{delta_c1_root, delta_h1_root, root_data};
use gv_core::{build_family, gv_representative, ExactScalar, Family, FamilySpec, LieAlgebraData, MultiForm};

fn inv_two_pi() -> ExactScalar {
    ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1)).inv().unwrap()
}

fn matrix_specs() -> Vec<FamilySpec> {
    FamilySpec::all_in_range().into_iter().filter(|s| s.family != Family::F4).collect()
}

fn small_matrix_specs() -> Vec<FamilySpec> {
    matrix_specs().into_iter().filter(|s| s.q() <= 7).collect()
}

fn diag_functional(data: &LieAlgebraData, terms: &[(usize, i64)]) -> Vec<Q> {
    let mut c = vec![Q::from_integer(0.into()); data.dim()];
    for &(i, s) in terms {
        for (x, y) in c.iter_mut().zip(data.entry_functional(i, i)) {
            *x += y * q(s);
        }
    }
    c
}

fn mixed_part(f: &MultiForm, data: &LieAlgebraData) -> MultiForm {
    let mut out = MultiForm::zero(data.dim(), 2);
    for (idx, c) in f.terms() {
        let (a, b) = (data.parts[idx[0] as usize], data.parts[idx[1] as usize]);
        if matches!((a, b), (Part::U, Part::V) | (Part::V, Part::U)) {
            let idx: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
            out = out.add(&MultiForm::monomial(data.dim(), &idx, c.clone())).unwrap();
        }
    }
    out.scale(f.prefactor())
}

#[test]
fn curvature_is_the_mixed_part_of_d_theta() {
    for spec in small_matrix_specs() {
        let data = build_family(spec).unwrap();
        let theta = pittie_connection(&data).unwrap();
        let omega = curvature(&theta, &data).unwrap();
        for (i, row) in omega.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                let want = mixed_part(&theta.entries[i][j].ce_d(&data).unwrap(), &data);
                assert!(w.same_as(&want), "{spec} ({i},{j})");
            }
        }
    }
}

#[test]
fn so_connection_diagonal() {
    for n in 1..=5 {
        let data = build_family(FamilySpec::so(n).unwrap()).unwrap();
        let theta = pittie_connection(&data).unwrap();
        let a = data.label_index("a").unwrap();
        let minus_a = MultiForm::basis(data.dim(), a).neg();
        for i in 0..theta.size() {
            assert!(theta.entries[i][i].same_as(&minus_a), "so n={n} θ_{i}{i}");
        }
        // [tv_k, v_k] = a, and [tv_j, v_k] has no a component for j != k
        let omega = curvature(&theta, &data).unwrap();
        let mut want = MultiForm::zero(data.dim(), 2);
        for k in 2..=n as usize + 1 {
            let tv = MultiForm::basis(data.dim(), data.label_index(&format!("tv_{k}")).unwrap());
            let v = MultiForm::basis(data.dim(), data.label_index(&format!("v_{k}")).unwrap());
            want = want.add(&tv.wedge(&v).unwrap()).unwrap();
        }
        for i in 0..theta.size() {
            assert!(omega[i][i].same_as(&want), "so n={n} Ω_{i}{i}");
        }
    }
}

#[test]
fn delta_h1_closed_forms() {
    // SL: trace of [H, E_k1] = (h_k - h_1) E_k1 over k gives -(q+1) h_1
    for qq in 1..=6u32 {
        let data = build_family(FamilySpec::sl(qq).unwrap()).unwrap();
        let h1 = delta_h1(&pittie_connection(&data).unwrap()).unwrap();
        let want = MultiForm::covector(&diag_functional(&data, &[(1, -(qq as i64 + 1))])).scale(&inv_two_pi());
        assert!(h1.same_as(&want), "sl q={qq}");
    }
    // SO: every diagonal entry is -a^
    for n in 1..=6u32 {
        let data = build_family(FamilySpec::so(n).unwrap()).unwrap();
        let h1 = delta_h1(&pittie_connection(&data).unwrap()).unwrap();
        let a = data.label_index("a").unwrap();
        let want = MultiForm::basis(data.dim(), a).scale_rational(&q(-(n as i64))).scale(&inv_two_pi());
        assert!(h1.same_as(&want), "so n={n}");
    }
    // SU: (n+1)(E_mm^ - E_11^)
    for n in 0..=3u32 {
        let data = build_family(FamilySpec::su(n).unwrap()).unwrap();
        let h1 = delta_h1(&pittie_connection(&data).unwrap()).unwrap();
        let m = n as usize + 2;
        let k = n as i64 + 1;
        let want = MultiForm::covector(&diag_functional(&data, &[(m, k), (1, -k)])).scale(&inv_two_pi());
        assert!(h1.same_as(&want), "su n={n}");
    }
}

#[test]
fn roussarie_identity_for_sl2() {
    // (2π)^2 Δ(h_1 c_1) = η ∧ dη with η = 2 H^
    let data = build_family(FamilySpec::sl(1).unwrap()).unwrap();
    let rep = gv_representative(&data).unwrap();
    let eta = MultiForm::basis(data.dim(), data.label_index("H_1").unwrap()).scale_rational(&q(2));
    let want = eta.wedge(&eta.ce_d(&data).unwrap()).unwrap();
    let two_pi_sq = ExactScalar::from_i64(4).mul(&ExactScalar::pi_pow(2));
    assert!(rep.delta_gv.scale(&two_pi_sq).same_as(&want));
    let e11 = MultiForm::covector(&data.entry_functional(1, 1));
    let e12 = MultiForm::basis(data.dim(), data.label_index("E_12").unwrap());
    let e21 = MultiForm::basis(data.dim(), data.label_index("E_21").unwrap());
    let mono = MultiForm::wedge_all(data.dim(), &[e11, e12, e21]).unwrap();
    assert_eq!(want.ratio_to(&mono).unwrap(), ExactScalar::from_i64(-4));
}

#[test]
fn c1_is_d_h1_and_trace_of_curvature() {
    for spec in small_matrix_specs() {
        let data = build_family(spec).unwrap();
        let theta = pittie_connection(&data).unwrap();
        let omega = curvature(&theta, &data).unwrap();
        let h1 = delta_h1(&theta).unwrap();
        let mut tr = MultiForm::zero(data.dim(), 2);
        for (i, row) in omega.iter().enumerate() {
            tr = tr.add(&row[i]).unwrap();
        }
        let tr = tr.scale(&inv_two_pi());
        assert!(h1.ce_d(&data).unwrap().same_as(&tr), "{spec}");
        assert!(chern_forms(&omega, 1).unwrap()[0].same_as(&tr), "{spec}");
    }
}

#[test]
fn c2_is_sum_of_principal_minors() {
    for spec in [FamilySpec::so(2).unwrap(), FamilySpec::so(3).unwrap(), FamilySpec::sl(2).unwrap(), FamilySpec::su(0).unwrap()] {
        let data = build_family(spec).unwrap();
        let theta = pittie_connection(&data).unwrap();
        let omega = curvature(&theta, &data).unwrap();
        let m = omega.len();
        let mut c2 = MultiForm::zero(data.dim(), 4);
        for i in 0..m {
            for j in (i + 1)..m {
                let a = omega[i][i].wedge(&omega[j][j]).unwrap();
                let b = omega[i][j].wedge(&omega[j][i]).unwrap();
                c2 = c2.add(&a.sub(&b).unwrap()).unwrap();
            }
        }
        let c2 = c2.scale(&inv_two_pi().pow(2).unwrap());
        assert!(chern_forms(&omega, 2).unwrap()[1].same_as(&c2), "{spec}");
    }
}

#[test]
fn root_sum_agrees_with_connection() {
    for spec in small_matrix_specs() {
        let data = build_family(spec).unwrap();
        let rs = root_data(&data).unwrap();
        let h1_root = delta_h1_root(&rs).to_form(&rs, data.dim());
        let h1 = delta_h1(&pittie_connection(&data).unwrap()).unwrap();
        assert!(h1.same_as(&h1_root), "{spec}");
        let c1_root = delta_c1_root(&rs, &data).unwrap();
        assert!(c1_root.same_as(&h1.ce_d(&data).unwrap()), "{spec}");
    }
}

#[test]
fn gv_is_h1_wedge_c1_power() {
    for spec in [FamilySpec::sl(3).unwrap(), FamilySpec::so(3).unwrap(), FamilySpec::su(1).unwrap()] {
        let data = build_family(spec).unwrap();
        let rep = gv_representative(&data).unwrap();
        let mut c = MultiForm::one(data.dim());
        for _ in 0..spec.q() {
            c = c.wedge(&rep.delta_c1).unwrap();
        }
        assert!(rep.delta_h1.wedge(&c).unwrap().same_as(&rep.delta_gv), "{spec}");
        assert_eq!(rep.delta_gv.degree(), 2 * spec.q() + 1);
        assert!(!rep.gv_coefficient.is_zero());
    }
}

#[test]
fn gv_is_basic_and_closed_everywhere() {
    for spec in FamilySpec::all_in_range() {
        let data = build_family(spec).unwrap();
        let rep = gv_representative(&data).unwrap();
        let (basic, closed) = gv_is_basic_and_closed(&rep, &data).unwrap();
        assert!(basic && closed, "{spec}");
    }
}

#[test]
fn f4_root_pipeline() {
    let data = build_family(FamilySpec::f4()).unwrap();
    let rep = gv_representative(&data).unwrap();
    // Δ(h_1) = -(11/2π) λ3
    let want = MultiForm::basis(data.dim(), 3).scale_rational(&q(-11)).scale(&inv_two_pi());
    assert!(rep.delta_h1.same_as(&want));
    assert_eq!(rep.delta_gv.degree(), 31);
    assert_eq!(rep.delta_gv.num_terms(), 1);
}

#[test]
fn top_degree_basic_forms_are_one_dimensional() {
    let cases = [
        FamilySpec::so(2).unwrap(),
        FamilySpec::so(3).unwrap(),
        FamilySpec::su(1).unwrap(),
        FamilySpec::sp(0).unwrap(),
    ];
    for spec in cases {
        let data = build_family(spec).unwrap();
        let d = basic_dimension(&data, "k_P", 2 * spec.q() + 1, 1 << 20).unwrap();
        assert_eq!(d, 1, "{spec}");
    }
}

#[test]
fn basic_dimension_respects_budget() {
    let data = build_family(FamilySpec::su(2).unwrap()).unwrap();
    assert!(basic_dimension(&data, "k_P", 5, 10).is_err());
}

#[test]
fn f4_connection_agrees_with_root_sum() {
    let data = build_family(FamilySpec::f4()).unwrap();
    let theta = pittie_connection(&data).unwrap();
    assert_eq!(theta.size(), 15);
    let omega = curvature(&theta, &data).unwrap();
    let h1 = delta_h1(&theta).unwrap();
    let rs = root_data(&data).unwrap();
    assert!(h1.same_as(&delta_h1_root(&rs).to_form(&rs, data.dim())));
    let c1 = chern_forms(&omega, 1).unwrap().remove(0);
    assert!(c1.same_as(&delta_c1_root(&rs, &data).unwrap()));
}
