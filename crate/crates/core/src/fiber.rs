//! Splitting the top form into base and fiber factors, sphere volumes,
//! the constant `c_G`, and the antipodal certificate for even `q`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chern_weil::{gv_representative, GvRepresentative};
use crate::error::{GvError, Result};
use crate::form::MultiForm;
use crate::lie::{build_family, Family, FamilySpec, LieAlgebraData, Part};
use crate::linalg::{self, q, Q};
use crate::roots;
use crate::scalar::{int_half_pow, ExactScalar};

/// Covectors of the split basis in dual-basis coordinates.
#[derive(Clone, Debug)]
pub struct SplitBasisData {
    pub spec: FamilySpec,
    /// The `K_G`-basic 1-form (`a^`, `E11^ - En''n''^`, `γ_1 - γ_n''`, `λ_3`).
    pub distinguished: Vec<Q>,
    pub plus: Vec<Vec<Q>>,
    pub minus: Vec<Vec<Q>>,
    /// Norm of the fiber wedge relative to the unit sphere volume form.
    pub fiber_norm: ExactScalar,
}

impl SplitBasisData {
    pub fn base_form(&self) -> Result<MultiForm> {
        let mut f = MultiForm::covector(&self.distinguished);
        for p in &self.plus {
            f = f.wedge(&MultiForm::covector(p))?;
        }
        Ok(f)
    }

    pub fn fiber_form(&self) -> Result<MultiForm> {
        let dim = self.distinguished.len();
        let forms: Vec<MultiForm> = self.minus.iter().map(|m| MultiForm::covector(m)).collect();
        MultiForm::wedge_all(dim, &forms)
    }

    /// `distinguished ∧ plus ∧ minus` in the declared orientation.
    pub fn top_form(&self) -> Result<MultiForm> {
        let mut all = vec![self.distinguished.clone()];
        all.extend(self.plus.iter().cloned());
        all.extend(self.minus.iter().cloned());
        wedge_covectors(&all)
    }
}

/// Wedge of covectors; a determinant when they are supported on exactly as
/// many coordinates as there are covectors.
pub fn wedge_covectors(covs: &[Vec<Q>]) -> Result<MultiForm> {
    let dim = covs.first().map_or(0, |c| c.len());
    let support: Vec<usize> = (0..dim).filter(|&j| covs.iter().any(|c| !c[j].is_zero())).collect();
    if support.len() != covs.len() {
        let forms: Vec<MultiForm> = covs.iter().map(|c| MultiForm::covector(c)).collect();
        return MultiForm::wedge_all(dim, &forms);
    }
    let m: Vec<Vec<Q>> = covs.iter().map(|c| support.iter().map(|&j| c[j].clone()).collect()).collect();
    Ok(MultiForm::monomial(dim, &support, linalg::determinant(&m)))
}

fn lin(a: &[Q], sa: i64, b: &[Q], sb: i64) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x * q(sa) + y * q(sb)).collect()
}

fn unit_cov(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

/// Split basis of a family in range.
pub fn split_basis(data: &LieAlgebraData) -> Result<SplitBasisData> {
    let dim = data.dim();
    let n = data.spec.n as usize;
    let e = |i: usize, j: usize| data.entry_functional(i, j);
    let b = |l: &str| -> Result<Vec<Q>> { Ok(unit_cov(dim, data.label_index(l)?)) };
    let (distinguished, plus, minus, fiber_norm) = match data.spec.family {
        Family::Sl => {
            let m = n + 1;
            let plus = (2..=m).map(|k| lin(&e(1, k), 1, &e(k, 1), 1)).collect();
            let minus = (2..=m).map(|k| lin(&e(1, k), 1, &e(k, 1), -1)).collect();
            (e(1, 1), plus, minus, ExactScalar::one())
        }
        Family::So => {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for k in 2..=n + 1 {
                let (t, v) = (b(&format!("tv_{k}"))?, b(&format!("v_{k}"))?);
                plus.push(lin(&t, 1, &v, 1));
                minus.push(lin(&v, 1, &t, -1));
            }
            (b("a")?, plus, minus, int_half_pow(2, n as i64))
        }
        Family::Su => {
            let m = n + 2;
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for k in 2..=m {
                plus.push(lin(&e(1, k), 1, &e(k, 1), 1));
                minus.push(lin(&e(k, 1), 1, &e(1, k), -1));
            }
            for k in 2..=n + 1 {
                plus.push(lin(&e(k, m), 1, &e(m, k), 1));
                minus.push(lin(&e(m, k), 1, &e(k, m), -1));
            }
            (lin(&e(1, 1), 1, &e(m, m), -1), plus, minus, int_half_pow(2, 2 * (3 * n as i64 + 1)))
        }
        Family::Sp => {
            let m = n + 2;
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for i in data.indices(Part::V) {
                let t = b(&format!("t{}", data.labels[i]))?;
                let z = unit_cov(dim, i);
                plus.push(lin(&t, 1, &z, 1));
                minus.push(lin(&z, 1, &t, -1));
            }
            let d = lin(&b("h_1")?, 1, &b(&format!("h_{m}"))?, -1);
            (d, plus, minus, int_half_pow(2, 12 * n as i64 + 7))
        }
        Family::F4 => {
            let rs = roots::f4_root_data();
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for &(x, y) in &rs.partners {
                let (ex, ey) = (unit_cov(dim, x), unit_cov(dim, y));
                plus.push(lin(&ex, 1, &ey, 1));
                minus.push(lin(&ey, 1, &ex, -1));
            }
            let norm = ExactScalar::from_i64(2).pow(11)?.mul(&ExactScalar::from_i64(7).pow(4)?).mul(&int_half_pow(3, -23));
            (unit_cov(dim, rs.cartan_indices[3]), plus, minus, norm)
        }
    };
    Ok(SplitBasisData { spec: data.spec, distinguished, plus, minus, fiber_norm })
}

/// Result of splitting the top form.
#[derive(Clone, Debug, Serialize)]
pub struct SplitResult {
    /// `gv = ratio · distinguished ∧ plus ∧ minus`.
    pub ratio: ExactScalar,
    /// Norm of `distinguished ∧ plus` in the metric dual to the Hermitian form.
    pub base_coefficient: ExactScalar,
    pub fiber_coefficient: ExactScalar,
}

/// Norm of a wedge of covectors: `sqrt det (φ_i^T H^{-1} φ_j)`.
pub fn wedge_norm(covectors: &[Vec<Q>], metric: &[Vec<Q>]) -> Result<ExactScalar> {
    let hinv = linalg::inverse(metric).ok_or_else(|| GvError::Consistency("degenerate metric".into()))?;
    let k = covectors.len();
    let hphi: Vec<Vec<Q>> = covectors
        .iter()
        .map(|p| (0..p.len()).map(|r| (0..p.len()).map(|c| &hinv[r][c] * &p[c]).sum()).collect())
        .collect();
    let mut gram = vec![vec![Q::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = covectors[i].iter().zip(&hphi[j]).map(|(a, b)| a * b).sum();
        }
    }
    ExactScalar::sqrt_of(&linalg::determinant(&gram))
}

/// Split `gv` against the split basis, with the base norm taken in `metric`.
pub fn split_form_with_metric(gv: &MultiForm, split: &SplitBasisData, metric: &[Vec<Q>]) -> Result<SplitResult> {
    let top = split.top_form()?;
    let ratio = gv
        .ratio_to(&top)
        .ok_or_else(|| GvError::NotSplit(format!("{}: top form is not a multiple of the split wedge", split.spec)))?;
    let mut base = vec![split.distinguished.clone()];
    base.extend(split.plus.iter().cloned());
    let base_coefficient = wedge_norm(&base, metric)?;
    Ok(SplitResult { ratio, base_coefficient, fiber_coefficient: split.fiber_norm.clone() })
}

pub fn split_form(gv: &MultiForm, split: &SplitBasisData, data: &LieAlgebraData) -> Result<SplitResult> {
    split_form_with_metric(gv, split, &data.hermitian)
}

/// Volume of the unit sphere `S^q`.
pub fn sphere_volume(q: usize) -> Result<ExactScalar> {
    if q == 0 {
        return Err(GvError::ParameterOutOfRange("sphere_volume needs q >= 1".into()));
    }
    let two_pi = ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1));
    if q % 2 == 1 {
        let mut den = ExactScalar::one();
        for k in (2..q).step_by(2) {
            den = den.mul(&ExactScalar::from_i64(k as i64));
        }
        two_pi.pow((q as i64 + 1) / 2)?.div(&den)
    } else {
        let mut den = ExactScalar::one();
        for k in (1..q).step_by(2) {
            den = den.mul(&ExactScalar::from_i64(k as i64));
        }
        ExactScalar::from_i64(2).mul(&two_pi.pow(q as i64 / 2)?).div(&den)
    }
}

/// `c_G = ratio · base · fiber norm · vol(S^q)` from an already computed representative.
pub fn c_g_from_representative(rep: &GvRepresentative, data: &LieAlgebraData) -> Result<ExactScalar> {
    if data.spec.family == Family::Sl {
        return Err(GvError::ParameterOutOfRange("no c_G row for the projective family".into()));
    }
    let split = split_basis(data)?;
    let s = split_form(&rep.delta_gv, &split, data)?;
    Ok(s.ratio.mul(&s.base_coefficient).mul(&s.fiber_coefficient).mul(&sphere_volume(data.spec.q())?))
}

/// `c_G` for a family row.
pub fn compute_cg(spec: FamilySpec) -> Result<ExactScalar> {
    if spec.family == Family::Sl {
        return Err(GvError::ParameterOutOfRange("no c_G row for the projective family".into()));
    }
    let data = build_family(spec)?;
    let rep = gv_representative(&data)?;
    c_g_from_representative(&rep, &data)
}

/// Proof that the fiber integral vanishes for even `q` in the projective family.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingCertificate {
    pub q: usize,
    /// `g = diag(-1, -1, 1, ..., 1)`.
    pub antipodal: Vec<i64>,
    pub det: i64,
    pub base: String,
    pub fiber: String,
    pub base_sign: i64,
    pub fiber_sign: i64,
    pub gv_invariant: bool,
    pub ratio: ExactScalar,
    pub integral: ExactScalar,
}

/// Sign `s` with `g* f = s f`, if any.
fn pullback_sign(f: &MultiForm, m: &[Vec<Q>]) -> Result<Option<i64>> {
    let g = f.pullback(m)?;
    Ok(if g.same_as(f) {
        Some(1)
    } else if g.same_as(&f.neg()) {
        Some(-1)
    } else {
        None
    })
}

/// Even `q`: the base factor is odd under the antipodal element while
/// `Δ(h_1 c_1^q)` is invariant, so the fiber integral is zero.
pub fn even_sl_vanishing(qq: usize) -> Result<VanishingCertificate> {
    if qq == 0 || qq % 2 == 1 {
        return Err(GvError::ParameterOutOfRange(format!("vanishing certificate needs even q, got {qq}")));
    }
    let data = build_family(FamilySpec::sl(qq as u32)?)?;
    let rep = gv_representative(&data)?;
    let split = split_basis(&data)?;
    let base = split.base_form()?;
    let fiber = split.fiber_form()?;
    let ratio = rep
        .delta_gv
        .ratio_to(&base.wedge(&fiber)?)
        .ok_or_else(|| GvError::NotSplit("projective top form".into()))?;
    let m = qq + 1;
    let diag: Vec<i64> = (0..m).map(|i| if i < 2 { -1 } else { 1 }).collect();
    // Ad(g) E_ij = g_i g_j E_ij
    let mut cols = Vec::with_capacity(data.dim());
    for x in &data.matrices {
        let mut y = x.clone();
        for (i, row) in y.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c *= q(diag[i] * diag[j]);
            }
        }
        cols.push(data.coords_of(&y)?);
    }
    let ad = linalg::transpose(&cols);
    let base_sign = pullback_sign(&base, &ad)?.ok_or_else(|| GvError::Consistency("base factor not an eigenform".into()))?;
    let fiber_sign =
        pullback_sign(&fiber, &ad)?.ok_or_else(|| GvError::Consistency("fiber factor not an eigenform".into()))?;
    let gv_invariant = pullback_sign(&rep.delta_gv, &ad)? == Some(1);
    let det = diag.iter().product();
    if base_sign != -1 || fiber_sign != -1 || !gv_invariant || det != 1 {
        return Err(GvError::Consistency("antipodal certificate does not close".into()));
    }
    Ok(VanishingCertificate {
        q: qq,
        antipodal: diag,
        det,
        base: base.render(&data.labels),
        fiber: fiber.render(&data.labels),
        base_sign,
        fiber_sign,
        gv_invariant,
        ratio,
        integral: ExactScalar::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_volumes() {
        let pi = ExactScalar::pi_pow(1);
        assert_eq!(sphere_volume(1).unwrap(), ExactScalar::from_i64(2).mul(&pi));
        assert_eq!(sphere_volume(2).unwrap(), ExactScalar::from_i64(4).mul(&pi));
        assert_eq!(sphere_volume(3).unwrap(), ExactScalar::from_i64(2).mul(&pi.pow(2).unwrap()));
        assert!(sphere_volume(0).is_err());
    }

    #[test]
    fn odd_q_rejected() {
        assert!(even_sl_vanishing(1).is_err());
        assert!(even_sl_vanishing(3).is_err());
    }

    #[test]
    fn so_base_norm() {
        let data = build_family(FamilySpec::so(3).unwrap()).unwrap();
        let split = split_basis(&data).unwrap();
        // |a^| = 1/sqrt(2n)
        let a = wedge_norm(&[split.distinguished.clone()], &data.hermitian).unwrap();
        assert_eq!(a, int_half_pow(6, -1));
    }
}
