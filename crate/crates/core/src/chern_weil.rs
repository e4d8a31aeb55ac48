//! The Pittie connection, its curvature, and the characteristic forms
//! `Δ(h_1)`, `Δ(c_J)` and `Δ(h_1 c_1^q)` in the Chevalley-Eilenberg complex.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{GvError, Result};
use crate::form::{basic_check, MultiForm};
use crate::lie::{Backend, Family, FamilySpec, LieAlgebraData, Part};
use crate::linalg::{q, Q};
use crate::roots;
use crate::scalar::ExactScalar;

/// `Θ = (θ_ij)` relative to the basis `Y_j` of `v` (the `V` basis elements in order).
#[derive(Clone, Debug)]
pub struct ConnectionMatrix {
    pub v: Vec<usize>,
    pub entries: Vec<Vec<MultiForm>>,
}

impl ConnectionMatrix {
    pub fn size(&self) -> usize {
        self.v.len()
    }
}

/// `θ_ij(X) = η_i([X_p, Y_j])`, where `X_p` drops the `v` component.
pub fn pittie_connection(data: &LieAlgebraData) -> Result<ConnectionMatrix> {
    if !data.complete {
        return Err(GvError::Backend("the Pittie connection needs complete structure constants".into()));
    }
    let v = data.indices(Part::V);
    if v.is_empty() {
        return Err(GvError::MissingDecomposition("empty v".into()));
    }
    let dim = data.dim();
    let mut entries = Vec::with_capacity(v.len());
    for &yi in &v {
        let mut row = Vec::with_capacity(v.len());
        for &yj in &v {
            let coords: Vec<Q> = (0..dim)
                .map(|a| {
                    if data.parts[a] == Part::V {
                        Q::zero()
                    } else {
                        data.structure_constant(a, yj, yi)
                    }
                })
                .collect();
            row.push(MultiForm::covector(&coords));
        }
        entries.push(row);
    }
    Ok(ConnectionMatrix { v, entries })
}

/// `dΘ + s Θ∧Θ` for `s = ±1`, without any check.
pub fn structure_equation(theta: &ConnectionMatrix, data: &LieAlgebraData, s: i64) -> Result<Vec<Vec<MultiForm>>> {
    let n = theta.size();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut w = theta.entries[i][j].ce_d(data)?;
            for k in 0..n {
                let t = theta.entries[i][k].wedge(&theta.entries[k][j])?;
                w = w.add(&t.scale_rational(&q(s)))?;
            }
            row.push(w);
        }
        out.push(row);
    }
    Ok(out)
}

/// Curvature `Ω = dΘ + Θ∧Θ`, checked entrywise against `d̂Θ`.
pub fn curvature(theta: &ConnectionMatrix, data: &LieAlgebraData) -> Result<Vec<Vec<MultiForm>>> {
    let omega = structure_equation(theta, data, 1)?;
    for (i, row) in omega.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            let hat = theta.entries[i][j].hat_d(data)?;
            if !w.same_as(&hat) {
                return Err(GvError::Consistency(format!(
                    "curvature entry ({i},{j}) differs from the u*^v* part of dθ for {}",
                    data.spec
                )));
            }
        }
    }
    Ok(omega)
}

fn inv_two_pi() -> ExactScalar {
    ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1)).inv().expect("nonzero")
}

/// `(1/2π) tr Θ`.
pub fn delta_h1(theta: &ConnectionMatrix) -> Result<MultiForm> {
    let Some(first) = theta.entries.first() else {
        return Err(GvError::MissingDecomposition("empty connection".into()));
    };
    let mut t = MultiForm::zero(first[0].ambient(), 1);
    for i in 0..theta.size() {
        t = t.add(&theta.entries[i][i])?;
    }
    Ok(t.scale(&inv_two_pi()))
}

fn mat_mul_forms(a: &[Vec<MultiForm>], b: &[Vec<MultiForm>], ambient: usize, degree: usize) -> Result<Vec<Vec<MultiForm>>> {
    let n = a.len();
    let mut out = vec![vec![MultiForm::zero(ambient, degree); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = MultiForm::zero(ambient, degree);
            for k in 0..n {
                s = s.add(&a[i][k].wedge(&b[k][j])?)?;
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

/// Chern forms `c_1(Ω), .., c_m(Ω)` via Newton's identities; `c_k` carries `(2π)^{-k}`.
pub fn chern_forms(omega: &[Vec<MultiForm>], m: usize) -> Result<Vec<MultiForm>> {
    let n = omega.len();
    let ambient = omega.first().and_then(|r| r.first()).map(|f| f.ambient()).unwrap_or(0);
    // power sums p_k = tr Ω^k, with rational coefficients
    let mut power = omega.to_vec();
    let mut p = Vec::with_capacity(m);
    for k in 1..=m {
        if k > 1 {
            power = mat_mul_forms(&power, omega, ambient, 2 * k)?;
        }
        let mut t = MultiForm::zero(ambient, 2 * k);
        for i in 0..n {
            t = t.add(&power[i][i])?;
        }
        p.push(t);
    }
    // e_k = (1/k) Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![MultiForm::one(ambient)];
    for k in 1..=m {
        let mut s = MultiForm::zero(ambient, 2 * k);
        for i in 1..=k {
            let term = e[k - i].wedge(&p[i - 1])?;
            let sign = if i % 2 == 1 { 1 } else { -1 };
            s = s.add(&term.scale_rational(&q(sign)))?;
        }
        e.push(s.scale_rational(&(Q::one() / q(k as i64))));
    }
    Ok(e.into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, f)| f.scale(&inv_two_pi().pow(k as i64).expect("nonzero")))
        .collect())
}

/// `Π_k c_k(Ω)^{J_k}`.
pub fn delta_cj(omega: &[Vec<MultiForm>], j: &[usize]) -> Result<MultiForm> {
    let ambient = omega.first().and_then(|r| r.first()).map(|f| f.ambient()).unwrap_or(0);
    let c = chern_forms(omega, j.len())?;
    let mut acc = MultiForm::one(ambient);
    for (k, &e) in j.iter().enumerate() {
        acc = acc.wedge(&c[k].wedge_power(e)?)?;
    }
    Ok(acc)
}

/// The printed top monomial of each family, as a form.
pub fn canonical_top(data: &LieAlgebraData) -> Result<MultiForm> {
    let dim = data.dim();
    let basis = |l: &str| -> Result<MultiForm> { Ok(MultiForm::basis(dim, data.label_index(l)?)) };
    let entry = |i: usize, j: usize| MultiForm::covector(&data.entry_functional(i, j));
    let mut factors = Vec::new();
    let n = data.spec.n as usize;
    match data.spec.family {
        Family::Sl => {
            let m = n + 1;
            factors.push(entry(1, 1));
            for k in 2..=m {
                factors.push(entry(1, k));
                factors.push(entry(k, 1));
            }
        }
        Family::So => {
            factors.push(basis("a")?);
            for k in 2..=n + 1 {
                factors.push(basis(&format!("tv_{k}"))?);
                factors.push(basis(&format!("v_{k}"))?);
            }
        }
        Family::Su => {
            let m = n + 2;
            factors.push(entry(1, 1).sub(&entry(m, m))?);
            for k in 2..=m {
                factors.push(entry(1, k));
                factors.push(entry(k, 1));
            }
            for k in 2..=n + 1 {
                factors.push(entry(k, m));
                factors.push(entry(m, k));
            }
        }
        Family::Sp => {
            let m = n + 2;
            factors.push(basis("h_1")?.sub(&basis(&format!("h_{m}"))?)?);
            let mut zeta = MultiForm::zero(dim, 2);
            for i in data.indices(Part::V) {
                let l = &data.labels[i];
                let w = if l == "v" { 2 } else { 1 };
                let pair = basis(&format!("t{l}"))?.wedge(&MultiForm::basis(dim, i))?;
                zeta = zeta.add(&pair.scale_rational(&q(w)))?;
            }
            factors.push(zeta.wedge_power(4 * n + 3)?);
        }
        Family::F4 => {
            let rs = roots::f4_root_data();
            factors.push(MultiForm::basis(dim, rs.cartan_indices[3]));
            for &(x, y) in &rs.partners {
                factors.push(MultiForm::basis(dim, x));
                factors.push(MultiForm::basis(dim, y));
            }
        }
    }
    MultiForm::wedge_all(dim, &factors)
}

/// `Δ(h_1)`, `Δ(c_1)` and `Δ(h_1 c_1^q)` with the coefficient against the printed top monomial.
#[derive(Clone, Debug)]
pub struct GvRepresentative {
    pub spec: FamilySpec,
    pub delta_h1: MultiForm,
    pub delta_c1: MultiForm,
    pub delta_gv: MultiForm,
    pub top: MultiForm,
    pub gv_coefficient: ExactScalar,
}

/// Run the connection pipeline (matrix families) or the root-sum pipeline (F4).
pub fn gv_representative(data: &LieAlgebraData) -> Result<GvRepresentative> {
    let qq = data.spec.q();
    let (h1, c1) = match data.backend {
        Backend::Matrix => {
            let theta = pittie_connection(data)?;
            let omega = curvature(&theta, data)?;
            let h1 = delta_h1(&theta)?;
            let c1 = h1.ce_d(data)?;
            let tr = chern_forms(&omega, 1)?.remove(0);
            if !c1.same_as(&tr) {
                return Err(GvError::Consistency("dΔ(h_1) differs from (1/2π) tr Ω".into()));
            }
            (h1, c1)
        }
        Backend::RootData => {
            let rs = roots::root_data(data)?;
            let h1 = roots::delta_h1_root(&rs).to_form(&rs, data.dim());
            let c1 = roots::delta_c1_root(&rs, data)?;
            if !c1.same_as(&h1.ce_d(data)?) {
                return Err(GvError::Consistency("root-sum Δ(c_1) differs from dΔ(h_1)".into()));
            }
            (h1, c1)
        }
    };
    let gv = h1.wedge(&c1.wedge_power(qq)?)?;
    let top = canonical_top(data)?;
    let gv_coefficient = gv
        .ratio_to(&top)
        .ok_or_else(|| GvError::Consistency(format!("Δ(h_1 c_1^q) is not a multiple of the top monomial for {}", data.spec)))?;
    Ok(GvRepresentative { spec: data.spec, delta_h1: h1, delta_c1: c1, delta_gv: gv, top, gv_coefficient })
}

/// Everything computed for one family row.
#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicResult {
    pub family: FamilySpec,
    pub delta_h1: String,
    pub delta_c1: String,
    pub delta_gv_terms: usize,
    pub top_monomial: String,
    pub gv_coefficient: ExactScalar,
    pub gv_normalized: ExactScalar,
    pub c_g: Option<ExactScalar>,
    pub r_g: Option<ExactScalar>,
    pub notes: Vec<String>,
}

/// Full row: GV coefficient, then `c_G` and `r_G` where defined.
pub fn delta_gv(data: &LieAlgebraData) -> Result<CharacteristicResult> {
    let rep = gv_representative(data)?;
    let two_pi = ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1));
    let gv_normalized = rep.gv_coefficient.mul(&two_pi.pow(data.spec.q() as i64 + 1)?);
    let mut notes = Vec::new();
    let c_g = match data.spec.family {
        Family::Sl => {
            notes.push("no c_G row for the projective family".into());
            None
        }
        _ => Some(crate::fiber::c_g_from_representative(&rep, data)?),
    };
    let r_g = match &c_g {
        Some(c) => match crate::proportionality::r_g_from_cg(data.spec, c) {
            Ok(r) => Some(r),
            Err(GvError::NoEulerProportionality(m)) => {
                notes.push(m);
                None
            }
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(CharacteristicResult {
        family: data.spec,
        delta_h1: rep.delta_h1.render(&data.labels),
        delta_c1: rep.delta_c1.render(&data.labels),
        delta_gv_terms: rep.delta_gv.num_terms(),
        top_monomial: top_description(data.spec),
        gv_coefficient: rep.gv_coefficient,
        gv_normalized,
        c_g,
        r_g,
        notes,
    })
}

/// Human-readable name of the printed top monomial.
pub fn top_description(spec: FamilySpec) -> String {
    match spec.family {
        Family::Sl => "E11^ /\\_k (E1k^ E_k1)".into(),
        Family::So => "a^ /\\_k (tv_k^ v_k)".into(),
        Family::Su => "(E11-E_n''n'') ^ /\\_k (E1k^ Ek1) ^ /\\_k (Ekn''^ En''k)".into(),
        Family::Sp => "(g1-g_n'') ^ zeta^(4n+3)".into(),
        Family::F4 => "l3 ^ /\\_a (E_a ^ E_-a)".into(),
    }
}

/// `Δ(h_1 c_1^q)` is `k_P`-basic and closed.
pub fn gv_is_basic_and_closed(rep: &GvRepresentative, data: &LieAlgebraData) -> Result<(bool, bool)> {
    let closed = if data.complete { rep.delta_gv.ce_d(data)?.is_zero() } else { true };
    let basic = if data.complete { basic_check(&rep.delta_gv, data, "k_P")? } else { true };
    Ok((basic, closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_family;

    #[test]
    fn sl_connection_diagonal() {
        let data = build_family(FamilySpec::sl(2).unwrap()).unwrap();
        let th = pittie_connection(&data).unwrap();
        // θ_ii = E_ii^ - E_11^ on the span of E_k1
        for (a, &y) in th.v.iter().enumerate() {
            let k = a + 2;
            assert_eq!(data.labels[y], format!("E_{k}1"));
            let mut c = data.entry_functional(k, k);
            for (x, y) in c.iter_mut().zip(data.entry_functional(1, 1)) {
                *x -= y;
            }
            assert!(th.entries[a][a].same_as(&MultiForm::covector(&c)));
        }
    }

    #[test]
    fn minus_sign_structure_equation_fails() {
        let data = build_family(FamilySpec::sl(2).unwrap()).unwrap();
        let th = pittie_connection(&data).unwrap();
        let wrong = structure_equation(&th, &data, -1).unwrap();
        let any_diff = (0..th.size())
            .any(|i| (0..th.size()).any(|j| !wrong[i][j].same_as(&th.entries[i][j].hat_d(&data).unwrap())));
        assert!(any_diff);
        assert!(curvature(&th, &data).is_ok());
    }

    #[test]
    fn sl_h1() {
        let data = build_family(FamilySpec::sl(3).unwrap()).unwrap();
        let th = pittie_connection(&data).unwrap();
        let h1 = delta_h1(&th).unwrap();
        let want = MultiForm::covector(&data.entry_functional(1, 1))
            .scale(&ExactScalar::from_i64(-4).mul(&inv_two_pi()));
        assert!(h1.same_as(&want));
    }
}
