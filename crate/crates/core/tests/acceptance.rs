//! One PASS/FAIL line per acceptance criterion. Comparisons are exact.
//!
//! Rows that disagree with a printed value are reported as FAIL together with
//! the ratio computed/printed. The process exits nonzero only when a
//! disagreement is not one of the documented ratios in `tables`, or when a
//! structural check breaks.

use std::process::ExitCode;
use std::time::Instant;

use gv_core::chern_weil::{curvature, delta_h1, gv_is_basic_and_closed, pittie_connection};
use gv_core::fiber::{split_basis, split_form};
use gv_core::form::basic_dimension;
use gv_core::lie::validate_lie;
use gv_core::linalg::q;
use gv_core::roots::{delta_h1_root, root_data};
use gv_core::tables::{classify, documented_ratio, printed, table_rows, RowStatus, TableKind};
use gv_core::weil::{independent_in_cohomology, vey_basis, wo_cohomology, wo_differential, WOElement};
use gv_core::{
    build_family, compute_cg, compute_rg, even_sl_vanishing, gv_representative, weil::gv_normalize, ExactScalar,
    FamilySpec, MultiForm,
};

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    /// Failures not explained by a documented ratio.
    unexplained: usize,
    notes: Vec<String>,
}

impl Outcome {
    fn report(&self, id: &str, title: &str) -> bool {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {id} {title}");
        if !self.failures.is_empty() {
            line.push_str(&format!(": {}", self.failures.join("; ")));
        }
        if !self.notes.is_empty() {
            line.push_str(&format!(" [{}]", self.notes.join("; ")));
        }
        println!("{line}");
        self.unexplained == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
            self.unexplained += 1;
        }
    }
}

fn table_criterion(kind: TableKind, computed: impl Fn(FamilySpec) -> gv_core::Result<ExactScalar>) -> Outcome {
    let mut out = Outcome::default();
    let rows = table_rows(kind);
    let mut exact = 0;
    for spec in &rows {
        let t = Instant::now();
        let p = printed(kind, *spec).expect("printed row");
        let c = match computed(*spec) {
            Ok(c) => c,
            Err(e) => {
                out.check(false, || format!("{spec}: {e}"));
                continue;
            }
        };
        let secs = t.elapsed().as_secs_f64();
        let limit = if spec.family == gv_core::Family::F4 { 60.0 } else { 10.0 };
        if secs > limit {
            out.notes.push(format!("{spec} took {secs:.1}s"));
        }
        match classify(kind, *spec, &p, &c) {
            RowStatus::Match => exact += 1,
            RowStatus::Erratum => {
                let (r, _) = documented_ratio(kind, *spec).expect("documented");
                out.failures.push(format!("{spec} computed/printed = {r}"));
            }
            RowStatus::Mismatch => {
                out.failures.push(format!("{spec} computed {c} printed {p}"));
                out.unexplained += 1;
            }
        }
    }
    out.notes.insert(0, format!("{exact}/{} rows exact", rows.len()));
    out
}

fn structural() -> Outcome {
    let mut out = Outcome::default();
    for spec in FamilySpec::all_in_range() {
        let data = match build_family(spec) {
            Ok(d) => d,
            Err(e) => {
                out.check(false, || format!("{spec}: {e}"));
                continue;
            }
        };
        // (a) Jacobi and Killing invariance
        let rep = validate_lie(&data);
        out.check(rep.is_valid() && rep.skipped.is_empty(), || format!("(a) {spec}: {:?} skipped {:?}", rep.failures, rep.skipped));
        // (b) d^2 = 0 on every basis covector and on products of two
        let dim = data.dim();
        for i in 0..dim {
            let e = MultiForm::basis(dim, i);
            let dd = e.ce_d(&data).and_then(|x| x.ce_d(&data));
            out.check(dd.map(|x| x.is_zero()).unwrap_or(false), || format!("(b) {spec} d^2 e{i}"));
            let j = (i * 7 + 3) % dim;
            if j != i {
                let f = e.wedge(&MultiForm::basis(dim, j)).unwrap();
                let dd = f.ce_d(&data).and_then(|x| x.ce_d(&data));
                out.check(dd.map(|x| x.is_zero()).unwrap_or(false), || format!("(b) {spec} d^2 e{i}e{j}"));
            }
        }
        // (c) curvature equals the mixed part of dΘ, (d) trace vs root sum
        let theta = pittie_connection(&data);
        out.check(theta.is_ok(), || format!("(c) {spec}: no connection"));
        if let Ok(theta) = theta {
            out.check(curvature(&theta, &data).is_ok(), || format!("(c) {spec}"));
            let rs = root_data(&data).unwrap();
            let h_root = delta_h1_root(&rs).to_form(&rs, dim);
            out.check(delta_h1(&theta).map(|h| h.same_as(&h_root)).unwrap_or(false), || format!("(d) {spec}"));
        }
        // (e) basic and closed
        match gv_representative(&data).and_then(|r| gv_is_basic_and_closed(&r, &data)) {
            Ok((b, c)) => out.check(b && c, || format!("(e) {spec}: basic {b} closed {c}")),
            Err(e) => out.check(false, || format!("(e) {spec}: {e}")),
        }
    }
    // (f) one-dimensional top basic space
    for spec in [
        FamilySpec::so(2).unwrap(),
        FamilySpec::so(3).unwrap(),
        FamilySpec::su(1).unwrap(),
        FamilySpec::sp(0).unwrap(),
    ] {
        let data = build_family(spec).unwrap();
        let d = basic_dimension(&data, "k_P", 2 * spec.q() + 1, 1 << 20);
        out.check(matches!(d, Ok(1)), || format!("(f) {spec}: {d:?}"));
    }
    out
}

fn weil_oracle() -> Outcome {
    let mut out = Outcome::default();
    let t = Instant::now();
    for qq in 1..=3 {
        let vey = vey_basis(qq).unwrap();
        let betti = wo_cohomology(qq).unwrap();
        out.check(vey.counts() == betti, || format!("q={qq}: vey {:?} betti {betti:?}", vey.counts()));
        for m in &vey.monomials {
            let e = WOElement { q: qq, terms: [(m.monomial.clone(), q(1))].into_iter().collect() };
            out.check(wo_differential(&e).is_zero(), || format!("q={qq}: d({}) != 0", m.monomial));
        }
        let mut degrees: Vec<usize> = vey.monomials.iter().map(|m| m.degree).collect();
        degrees.dedup();
        for d in degrees {
            let ms: Vec<_> = vey.monomials.iter().filter(|m| m.degree == d).map(|m| m.monomial.clone()).collect();
            out.check(independent_in_cohomology(qq, &ms), || format!("q={qq}: degree {d} dependent"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    out.check(secs < 5.0, || format!("took {secs:.1}s"));
    out
}

fn vanishing() -> Outcome {
    let mut out = Outcome::default();
    for qq in [2, 4] {
        match even_sl_vanishing(qq) {
            Ok(c) => out.check(c.base_sign == -1 && c.fiber_sign == -1 && c.gv_invariant && c.det == 1 && c.integral.is_zero(), || {
                format!("q={qq}: certificate does not close")
            }),
            Err(e) => out.check(false, || format!("q={qq}: {e}")),
        }
    }
    out
}

fn sl2_golden() -> Outcome {
    let mut out = Outcome::default();
    let data = build_family(FamilySpec::sl(1).unwrap()).unwrap();
    let dim = data.dim();
    let cov = |l: &str, c: i64| MultiForm::basis(dim, data.label_index(l).unwrap()).scale_rational(&q(c));
    let (omega, eta, theta) = (cov("E_21", 1), cov("H_1", 2), cov("E_12", 2));
    let d = |f: &MultiForm| f.ce_d(&data).unwrap();
    out.check(d(&omega).same_as(&eta.wedge(&omega).unwrap()), || "dω != η∧ω".into());
    out.check(d(&eta).same_as(&omega.wedge(&theta).unwrap()), || "dη != ω∧θ".into());
    out.check(d(&theta).same_as(&eta.wedge(&theta).unwrap().neg()), || "dθ != -η∧θ".into());
    let rep = gv_representative(&data).unwrap();
    let e11 = MultiForm::covector(&data.entry_functional(1, 1));
    let top = MultiForm::wedge_all(dim, &[e11, cov("E_12", 1), cov("E_21", 1)]).unwrap();
    let got = gv_normalize(&rep.delta_gv, 1).ratio_to(&top);
    let want = ExactScalar::from_i64(-8);
    match got {
        Some(g) if g == want => {}
        Some(g) => {
            // documented: the printed row carries q'! where the expansion gives q!
            let (r, _) = documented_ratio(TableKind::Gv, FamilySpec::sl(1).unwrap()).unwrap();
            if g == want.mul(&r) {
                out.failures.push(format!("coefficient {g}, expected {want}, computed/expected = {r}"));
                out.notes.push("η∧dη = -4 E11^∧E12^∧E21^ agrees with the computed value".into());
                let eta_deta = eta.wedge(&d(&eta)).unwrap().ratio_to(&top);
                if eta_deta != Some(g.clone()) {
                    out.unexplained += 1;
                }
            } else {
                out.check(false, || format!("coefficient {g}, expected {want}"));
            }
        }
        None => out.check(false, || "not a multiple of the top monomial".into()),
    }
    out
}

fn main() -> ExitCode {
    let mut ok = true;
    let gv = |spec: FamilySpec| -> gv_core::Result<ExactScalar> {
        Ok(gv_representative(&build_family(spec)?)?.gv_coefficient)
    };
    ok &= table_criterion(TableKind::Gv, gv).report("1", "GV coefficient table");
    ok &= table_criterion(TableKind::CG, compute_cg).report("2", "c_G table");
    ok &= table_criterion(TableKind::RG, compute_rg).report("3", "r_G table");
    let base = |spec: FamilySpec| -> gv_core::Result<ExactScalar> {
        let data = build_family(spec)?;
        let rep = gv_representative(&data)?;
        Ok(split_form(&rep.delta_gv, &split_basis(&data)?, &data)?.base_coefficient)
    };
    ok &= table_criterion(TableKind::BaseFactor, base).report("4", "split base factors");
    ok &= structural().report("5", "structural oracle suite");
    ok &= weil_oracle().report("6", "WO_q Betti numbers vs Vey basis");
    ok &= vanishing().report("7", "even-codimension vanishing certificates");
    ok &= sl2_golden().report("8", "sl2 golden test");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
