use gv_core::fiber::{split_basis, split_form, wedge_norm};
use gv_core::form::basic_check;
use gv_core::proportionality::compact_dual;
use gv_core::tables::{self, classify, documented_ratio, printed, table_rows, RowStatus, TableKind};
use gv_core::{
    build_family, compute_cg, compute_rg, even_sl_vanishing, gv_representative, sphere_volume, ExactScalar, Family,
    FamilySpec,
};

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_i64(n)
}

fn pi() -> ExactScalar {
    ExactScalar::pi_pow(1)
}

#[test]
fn sphere_volume_recurrence() {
    // vol S^{q+2} = 2π vol S^q / (q+1)
    for qq in 1..20usize {
        let lhs = sphere_volume(qq + 2).unwrap();
        let rhs = int(2).mul(&pi()).mul(&sphere_volume(qq).unwrap()).div(&int(qq as i64 + 1)).unwrap();
        assert_eq!(lhs, rhs, "q={qq}");
    }
}

#[test]
fn split_reconstructs_the_top_form() {
    for spec in FamilySpec::all_in_range() {
        let data = build_family(spec).unwrap();
        let split = split_basis(&data).unwrap();
        assert_eq!(split.plus.len(), spec.q(), "{spec}");
        assert_eq!(split.minus.len(), spec.q(), "{spec}");
        if spec.q() <= 7 {
            let top = split.base_form().unwrap().wedge(&split.fiber_form().unwrap()).unwrap();
            assert!(top.same_as(&split.top_form().unwrap()), "{spec}");
        }
        if spec.family != Family::Sl {
            let rep = gv_representative(&data).unwrap();
            let s = split_form(&rep.delta_gv, &split, &data).unwrap();
            assert!(!s.ratio.is_zero(), "{spec}");
        }
    }
}

#[test]
fn so_base_wedge_is_kg_basic() {
    for n in 1..=4 {
        let data = build_family(FamilySpec::so(n).unwrap()).unwrap();
        let base = split_basis(&data).unwrap().base_form().unwrap();
        assert!(basic_check(&base, &data, "k_G").unwrap(), "so n={n}");
    }
}

#[test]
fn so_base_norm_closed_form() {
    // |a^ ∧ tv^...| = 2^{-1/2} n^{-(n+1)/2}
    for n in 1..=6i64 {
        let data = build_family(FamilySpec::so(n as u32).unwrap()).unwrap();
        let split = split_basis(&data).unwrap();
        let mut base = vec![split.distinguished.clone()];
        base.extend(split.plus.iter().cloned());
        let got = wedge_norm(&base, &data.hermitian).unwrap();
        let want = ExactScalar::prime_half_pow(2, -1).mul(&gv_core::scalar::int_half_pow(n, -(n + 1)));
        assert_eq!(got, want, "so n={n}");
    }
}

#[test]
fn even_projective_rows_vanish() {
    for qq in [2, 4, 6] {
        let cert = even_sl_vanishing(qq).unwrap();
        assert_eq!(cert.det, 1);
        assert_eq!(cert.base_sign, -1);
        assert_eq!(cert.fiber_sign, -1);
        assert!(cert.gv_invariant);
        assert!(cert.integral.is_zero());
        assert!(!cert.ratio.is_zero());
    }
    assert!(even_sl_vanishing(5).is_err());
}

#[test]
fn compact_dual_rows() {
    let rp = compact_dual(FamilySpec::so(1).unwrap()).unwrap();
    assert_eq!(rp.dual_name, "RP^2");
    assert_eq!(rp.euler_number, 1);
    let hp = compact_dual(FamilySpec::sp(0).unwrap()).unwrap();
    assert_eq!(hp.dual_name, "HP^1");
    assert_eq!(hp.euler_number, 2);
    let op = compact_dual(FamilySpec::f4()).unwrap();
    assert_eq!(op.dual_name, "OP^2");
    assert_eq!(op.euler_number, 3);
    for n in 0..=3 {
        assert_eq!(compact_dual(FamilySpec::su(n).unwrap()).unwrap().euler_number, n as i64 + 2);
    }
    assert!(compact_dual(FamilySpec::sl(3).unwrap()).is_err());
}

#[test]
fn printed_rows_at_small_parameters() {
    // hand evaluations of the closed forms
    assert_eq!(tables::printed_rg(FamilySpec::so(5).unwrap()).unwrap(), int(15625));
    assert_eq!(tables::printed_base_factor(FamilySpec::su(1).unwrap()).unwrap(), ExactScalar::from_i64(1).div(&int(9)).unwrap());
    let so1 = tables::printed_gv_coefficient(FamilySpec::so(1).unwrap());
    assert_eq!(so1, -int(1).div(&int(4).mul(&pi().pow(2).unwrap())).unwrap());
}

#[test]
fn so_and_su_rows_match_exactly() {
    for kind in [TableKind::Gv, TableKind::BaseFactor, TableKind::CG, TableKind::RG] {
        for spec in table_rows(kind) {
            if !matches!(spec.family, Family::So | Family::Su) {
                continue;
            }
            let data = build_family(spec).unwrap();
            let computed = match kind {
                TableKind::Gv => gv_representative(&data).unwrap().gv_coefficient,
                TableKind::BaseFactor => {
                    let split = split_basis(&data).unwrap();
                    let mut base = vec![split.distinguished.clone()];
                    base.extend(split.plus.iter().cloned());
                    wedge_norm(&base, &data.hermitian).unwrap()
                }
                TableKind::CG => compute_cg(spec).unwrap(),
                TableKind::RG => compute_rg(spec).unwrap(),
            };
            assert_eq!(computed, printed(kind, spec).unwrap(), "{} {spec}", kind.name());
        }
    }
}

#[test]
fn symplectic_gv_matches_and_base_is_off_by_killing_scale() {
    for n in 0..=2 {
        let spec = FamilySpec::sp(n).unwrap();
        let data = build_family(spec).unwrap();
        let gv = gv_representative(&data).unwrap().gv_coefficient;
        assert_eq!(gv, printed(TableKind::Gv, spec).unwrap(), "{spec}");
        let cg = compute_cg(spec).unwrap();
        let p = printed(TableKind::CG, spec).unwrap();
        assert_eq!(classify(TableKind::CG, spec, &p, &cg), RowStatus::Erratum);
        assert_eq!(cg.div(&p).unwrap(), int(2).pow(2 * n as i64 + 2).unwrap());
    }
}

#[test]
fn documented_ratios_cover_every_disagreement() {
    for kind in [TableKind::Gv, TableKind::CG, TableKind::RG] {
        for spec in table_rows(kind) {
            if spec.q() > 7 && spec.family != Family::F4 {
                continue;
            }
            let computed = match kind {
                TableKind::Gv => gv_representative(&build_family(spec).unwrap()).unwrap().gv_coefficient,
                TableKind::CG => compute_cg(spec).unwrap(),
                _ => compute_rg(spec).unwrap(),
            };
            let p = printed(kind, spec).unwrap();
            let status = classify(kind, spec, &p, &computed);
            assert_ne!(status, RowStatus::Mismatch, "{} {spec}", kind.name());
            assert_eq!(status == RowStatus::Erratum, documented_ratio(kind, spec).is_some(), "{} {spec}", kind.name());
        }
    }
}

#[test]
fn projective_gv_differs_by_one_over_q_prime() {
    for qq in 1..=6u32 {
        let spec = FamilySpec::sl(qq).unwrap();
        let gv = gv_representative(&build_family(spec).unwrap()).unwrap().gv_coefficient;
        let p = printed(TableKind::Gv, spec).unwrap();
        assert_eq!(gv.mul(&int(qq as i64 + 1)), p, "{spec}");
    }
}
