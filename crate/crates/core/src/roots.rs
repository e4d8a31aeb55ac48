//! Root data, the root-sum formula for `Δ(h_1)` and the Cartan pairing
//! evaluation of `Δ(c_1)`. F4 lives here exclusively.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{GvError, Result};
use crate::form::MultiForm;
use crate::lie::{FamilySpec, LieAlgebraData, Part};
use crate::linalg::{self, q, qf, Q};
use crate::scalar::ExactScalar;

/// Roots in coordinates dual to a basis `H_1..H_r` of a toral subalgebra.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub rank: usize,
    pub positive_roots: Vec<Vec<Q>>,
    /// Levi roots.
    pub phi: Vec<usize>,
    /// Roots whose negatives span `v`.
    pub psi: Vec<usize>,
    /// Gram matrix `B(H_i, H_j)`.
    pub cartan_pairing: Vec<Vec<Q>>,
    /// Basis indices of `H_1..H_r` in the ambient algebra.
    pub cartan_indices: Vec<usize>,
    /// For each entry of `psi`: `(index of X in u, index of Y in v)` with
    /// `X` of weight `alpha`, `Y` of weight `-alpha`.
    pub partners: Vec<(usize, usize)>,
}

/// A covector on the toral subalgebra with an exact prefactor.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanCovector {
    pub coords: Vec<Q>,
    pub prefactor: ExactScalar,
}

impl CartanCovector {
    /// As a 1-form on `g_C` (zero on all non-Cartan basis elements).
    pub fn to_form(&self, data: &RootSystemData, ambient: usize) -> MultiForm {
        let mut c = vec![Q::zero(); ambient];
        for (l, &i) in data.cartan_indices.iter().enumerate() {
            c[i] = self.coords[l].clone();
        }
        MultiForm::covector(&c).scale(&self.prefactor)
    }
}

impl RootSystemData {
    /// `(a, b)` in the pairing dual to the Killing form on the torus.
    pub fn dual_pairing(&self, a: &[Q], b: &[Q]) -> Q {
        let inv = linalg::inverse(&self.cartan_pairing).expect("nondegenerate pairing");
        let mut t = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if !inv[i][j].is_zero() {
                    t += &a[i] * &inv[i][j] * &b[j];
                }
            }
        }
        t
    }

    pub fn psi_sum(&self) -> Vec<Q> {
        let mut s = vec![Q::zero(); self.rank];
        for &i in &self.psi {
            for (x, y) in s.iter_mut().zip(&self.positive_roots[i]) {
                *x += y;
            }
        }
        s
    }
}

/// Weight of a basis element under the torus, if it is a weight vector.
fn weight_of(data: &LieAlgebraData, idx: usize) -> Option<Vec<Q>> {
    let mut w = Vec::new();
    for &h in &data.cartan {
        let br = data.bracket(h, idx);
        match br {
            [] => w.push(Q::zero()),
            [(k, c)] if *k == idx => w.push(c.clone()),
            _ => return None,
        }
    }
    Some(w)
}

/// Root data of a matrix family relative to its toral basis elements.
pub fn root_data(data: &LieAlgebraData) -> Result<RootSystemData> {
    if data.spec.family == crate::lie::Family::F4 {
        return Ok(f4_root_data());
    }
    let rank = data.cartan.len();
    let mut positive_roots = Vec::new();
    let mut psi = Vec::new();
    let mut partners = Vec::new();
    let uidx = data.indices(Part::U);
    let uweights: Vec<(usize, Vec<Q>)> = uidx
        .iter()
        .map(|&i| weight_of(data, i).map(|w| (i, w)).ok_or_else(|| not_weight(data, i)))
        .collect::<Result<_>>()?;
    for y in data.indices(Part::V) {
        let w = weight_of(data, y).ok_or_else(|| not_weight(data, y))?;
        let alpha: Vec<Q> = w.iter().map(|c| -c.clone()).collect();
        let x = uweights
            .iter()
            .find(|(i, wu)| *wu == alpha && !data.killing[*i][y].is_zero())
            .map(|(i, _)| *i)
            .ok_or_else(|| GvError::Backend(format!("no u partner for {}", data.labels[y])))?;
        psi.push(positive_roots.len());
        positive_roots.push(alpha);
        partners.push((x, y));
    }
    let mut phi = Vec::new();
    for i in data.indices(Part::R) {
        if data.cartan.contains(&i) {
            continue;
        }
        if let Some(w) = weight_of(data, i) {
            let first = w.iter().find(|c| !c.is_zero());
            if first.map_or(false, |c| *c > Q::zero()) {
                phi.push(positive_roots.len());
                positive_roots.push(w);
            }
        }
    }
    let cartan_pairing = data
        .cartan
        .iter()
        .map(|&a| data.cartan.iter().map(|&b| data.killing[a][b].clone()).collect())
        .collect();
    Ok(RootSystemData {
        rank,
        positive_roots,
        phi,
        psi,
        cartan_pairing,
        cartan_indices: data.cartan.clone(),
        partners,
    })
}

fn not_weight(data: &LieAlgebraData, i: usize) -> GvError {
    GvError::Backend(format!("{} is not a weight vector", data.labels[i]))
}

/// `Δ(h_1) = -(1/2π) Σ_{α ∈ ψ} α`.
pub fn delta_h1_root(rs: &RootSystemData) -> CartanCovector {
    CartanCovector {
        coords: rs.psi_sum(),
        prefactor: -ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1)).inv().unwrap(),
    }
}

/// `Δ(c_1) = (1/2π) Σ_j B(X_j, Y_j) (Σα, α_j) X_j^∨ ∧ Y_j^∨`.
pub fn delta_c1_root(rs: &RootSystemData, data: &LieAlgebraData) -> Result<MultiForm> {
    let sum = rs.psi_sum();
    let mut f = MultiForm::zero(data.dim(), 2);
    for (j, &ri) in rs.psi.iter().enumerate() {
        let (x, y) = rs.partners[j];
        let bxy = data.killing[x][y].clone();
        let c = bxy * rs.dual_pairing(&sum, &rs.positive_roots[ri]);
        f = f.add(&MultiForm::monomial(data.dim(), &[x, y], c))?;
    }
    Ok(f.scale(&ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1)).inv()?))
}

/// The 24 positive roots of F4 in `λ`-coordinates, as printed.
pub fn f4_positive_roots() -> Vec<Vec<Q>> {
    let e = |c: [i64; 4]| c.iter().map(|&x| q(x)).collect::<Vec<Q>>();
    let h = |c: [i64; 4]| c.iter().map(|&x| qf(x, 2)).collect::<Vec<Q>>();
    vec![
        e([1, 0, 0, 0]),
        e([0, 1, 0, 0]),
        e([0, 0, 1, 0]),
        e([0, 0, 0, 1]),
        e([1, -1, 0, 0]),
        e([1, 0, -1, 0]),
        e([-1, 0, 0, 1]),
        e([0, 1, -1, 0]),
        e([0, -1, 0, 1]),
        e([0, 0, -1, 1]),
        e([1, 1, 0, 0]),
        e([1, 0, 1, 0]),
        e([1, 0, 0, 1]),
        e([0, 1, 1, 0]),
        e([0, 1, 0, 1]),
        e([0, 0, 1, 1]),
        h([1, 1, 1, 1]),
        h([-1, -1, -1, 1]),
        h([1, 1, -1, 1]),
        h([1, -1, 1, 1]),
        h([-1, -1, 1, 1]),
        h([-1, 1, -1, 1]),
        h([1, -1, -1, 1]),
        h([-1, 1, 1, 1]),
    ]
}

/// Scale of the Killing form on the Cartan block of F4.
pub const F4_KILLING_SCALE: i64 = 18;

pub fn f4_root_data() -> RootSystemData {
    let roots = f4_positive_roots();
    let (psi, phi): (Vec<usize>, Vec<usize>) = (0..roots.len()).partition(|&i| !roots[i][3].is_zero());
    // integral roots first, then the half-integral ones
    let mut psi_sorted: Vec<usize> = psi.iter().copied().filter(|&i| roots[i][0].is_integer()).collect();
    psi_sorted.extend(psi.iter().copied().filter(|&i| !roots[i][0].is_integer()));
    let nr = roots.len();
    let partners = psi_sorted.iter().map(|&i| (4 + i, 4 + nr + i)).collect();
    RootSystemData {
        rank: 4,
        positive_roots: roots,
        phi,
        psi: psi_sorted,
        cartan_pairing: (0..4)
            .map(|i| (0..4).map(|j| if i == j { q(F4_KILLING_SCALE) } else { Q::zero() }).collect())
            .collect(),
        cartan_indices: vec![0, 1, 2, 3],
        partners,
    }
}

/// F4 as `H_0..H_3`, then `E_α`, then `E_{-α}` for the positive roots, with
/// full structure constants and `B(E_α, E_{-α}) = 1`.
pub fn f4_algebra() -> Result<LieAlgebraData> {
    let roots = f4_positive_roots();
    let nr = roots.len();
    let mut labels: Vec<String> = (0..4).map(|i| format!("H_{i}")).collect();
    let fmt_root = |r: &[Q]| -> String {
        let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    };
    for r in &roots {
        labels.push(format!("E+{}", fmt_root(r)));
    }
    for r in &roots {
        labels.push(format!("E-{}", fmt_root(r)));
    }
    let rs = f4_root_data();
    let in_psi = |i: usize| rs.psi.contains(&i);
    let mut parts = vec![Part::R; 4];
    for i in 0..nr {
        parts.push(if in_psi(i) { Part::U } else { Part::R });
    }
    for i in 0..nr {
        parts.push(if in_psi(i) { Part::V } else { Part::R });
    }
    let br = crate::exceptional::f4_structure(&roots)?;
    let dim = 4 + 2 * nr;
    let scale = q(F4_KILLING_SCALE);
    let mut killing = vec![vec![Q::zero(); dim]; dim];
    let mut herm = vec![vec![Q::zero(); dim]; dim];
    for i in 0..4 {
        killing[i][i] = scale.clone();
        herm[i][i] = scale.clone();
    }
    for ri in 0..nr {
        let (ep, em) = (4 + ri, 4 + nr + ri);
        killing[ep][em] = Q::one();
        killing[em][ep] = Q::one();
        herm[ep][ep] = Q::one();
        herm[em][em] = Q::one();
    }
    let mut data = LieAlgebraData::from_root_data(FamilySpec::f4(), labels, parts, vec![0, 1, 2, 3], br, killing, herm);
    // k_P (complexified) is the Levi part without the split direction H_3
    let k_p = (0..dim)
        .filter(|&i| data.parts[i] == Part::R && i != 3)
        .map(|i| data.unit_vector(i))
        .collect();
    data.mark_complete(k_p)?;
    Ok(data)
}

/// Positive roots as a table `(root, in psi)`.
pub fn root_table(rs: &RootSystemData) -> Vec<(Vec<Q>, bool)> {
    let psi: BTreeMap<usize, ()> = rs.psi.iter().map(|&i| (i, ())).collect();
    rs.positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), psi.contains_key(&i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_roots_and_psi_sum() {
        let rs = f4_root_data();
        assert_eq!(rs.positive_roots.len(), 24);
        assert_eq!(rs.psi.len(), 15);
        assert_eq!(rs.phi.len(), 9);
        assert_eq!(rs.psi_sum(), vec![q(0), q(0), q(0), q(11)]);
    }

    #[test]
    fn f4_killing_from_roots() {
        // sum over all 48 roots of a (x) a equals 18 I
        let rs = f4_root_data();
        for i in 0..4 {
            for j in 0..4 {
                let mut t = Q::zero();
                for r in &rs.positive_roots {
                    t += &r[i] * &r[j] * q(2);
                }
                assert_eq!(t, rs.cartan_pairing[i][j]);
            }
        }
    }
}
