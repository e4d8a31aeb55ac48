//! Complex Lie algebras with explicit bases, structure constants and
//! parabolic decompositions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{GvError, Result};
use crate::linalg::{self, q, Q};

/// Square rational matrix.
pub type Mat = Vec<Vec<Q>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `SL(q+1, R)` acting on `S^q`.
    Sl,
    /// `SO_0(n+1, 1)` acting on the conformal sphere `S^n`.
    So,
    /// `SU(n+1, 1)` acting on the CR sphere `S^{2n+1}`.
    Su,
    /// `Sp(n+1, 1)` acting on `S^{4n+3}`.
    Sp,
    /// `F_4(-20)` acting on `S^15`.
    F4,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Sl, Family::So, Family::Su, Family::Sp, Family::F4];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::So => "so",
            Family::Su => "su",
            Family::Sp => "sp",
            Family::F4 => "f4",
        }
    }

    /// Default largest parameter for which the full pipeline is run.
    pub fn n_max(self) -> u32 {
        match self {
            Family::Sl => 6,
            Family::So => 6,
            Family::Su => 3,
            Family::Sp => 2,
            Family::F4 => 0,
        }
    }

    /// Smallest admissible parameter.
    pub fn n_min(self) -> u32 {
        match self {
            Family::Sl | Family::So => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GvError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Family::Sl),
            "so" => Ok(Family::So),
            "su" => Ok(Family::Su),
            "sp" => Ok(Family::Sp),
            "f4" => Ok(Family::F4),
            other => Err(GvError::ParameterOutOfRange(format!("unknown family {other:?}"))),
        }
    }
}

/// A family together with its parameter (`q` for SL, `n` otherwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32) -> Result<Self> {
        if family == Family::F4 {
            return Ok(FamilySpec { family, n: 0 });
        }
        if n < family.n_min() {
            return Err(GvError::ParameterOutOfRange(format!(
                "{family} requires parameter >= {}, got {n}",
                family.n_min()
            )));
        }
        Ok(FamilySpec { family, n })
    }

    pub fn sl(q: u32) -> Result<Self> {
        Self::new(Family::Sl, q)
    }
    pub fn so(n: u32) -> Result<Self> {
        Self::new(Family::So, n)
    }
    pub fn su(n: u32) -> Result<Self> {
        Self::new(Family::Su, n)
    }
    pub fn sp(n: u32) -> Result<Self> {
        Self::new(Family::Sp, n)
    }
    pub fn f4() -> Self {
        FamilySpec { family: Family::F4, n: 0 }
    }

    /// Codimension of the foliation, i.e. `dim G/P`.
    pub fn q(&self) -> usize {
        let n = self.n as usize;
        match self.family {
            Family::Sl => n,
            Family::So => n,
            Family::Su => 2 * n + 1,
            Family::Sp => 4 * n + 3,
            Family::F4 => 15,
        }
    }

    /// Every in-range spec up to the default budgets.
    pub fn all_in_range() -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for fam in Family::ALL {
            if fam == Family::F4 {
                out.push(FamilySpec::f4());
                continue;
            }
            for n in fam.n_min()..=fam.n_max() {
                out.push(FamilySpec { family: fam, n });
            }
        }
        out
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::F4 => write!(f, "f4"),
            Family::Sl => write!(f, "sl q={}", self.n),
            fam => write!(f, "{fam} n={}", self.n),
        }
    }
}

/// Which summand of `g_C = r + u + v` a basis element lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    R,
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Backend {
    Matrix,
    RootData,
}

/// Cartan involution of the compact form, applied to complex matrices.
#[derive(Clone, Debug)]
pub enum Involution {
    /// `X -> -X^T`.
    NegTranspose,
    /// `X -> D X D^{-1}`.
    Conjugate(Mat),
}

impl Involution {
    fn apply(&self, x: &Mat) -> Mat {
        match self {
            Involution::NegTranspose => {
                let t = linalg::transpose(x);
                t.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect()
            }
            Involution::Conjugate(d) => {
                let dinv = linalg::inverse(d).expect("involution matrix is invertible");
                linalg::mat_mul(&linalg::mat_mul(d, x), &dinv)
            }
        }
    }
}

/// Raw description of a matrix-realized algebra before structure constants
/// are computed.
#[derive(Clone, Debug)]
pub struct MatrixBasis {
    pub labels: Vec<String>,
    pub parts: Vec<Part>,
    pub matrices: Vec<Mat>,
    /// Basis indices spanning a toral subalgebra used by the root backend.
    pub cartan: Vec<usize>,
    pub involution: Involution,
}

/// Sparse linear combination of basis elements.
pub type Sparse = Vec<(usize, Q)>;

#[derive(Clone, Debug)]
struct CoordSolver {
    positions: Vec<(usize, usize)>,
    inv: Vec<Vec<Q>>,
}

/// A complex Lie algebra with a basis adapted to `g_C = r + u + v`.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub spec: FamilySpec,
    pub backend: Backend,
    pub labels: Vec<String>,
    pub parts: Vec<Part>,
    pub cartan: Vec<usize>,
    /// Matrix realization; empty for the root-data backend.
    pub matrices: Vec<Mat>,
    /// False when only brackets with a Cartan component are recorded.
    pub complete: bool,
    brackets: Vec<Vec<Sparse>>,
    dual_d: Vec<Vec<(usize, usize, Q)>>,
    pub killing: Vec<Vec<Q>>,
    /// Hermitian metric `B_theta` on the basis.
    pub hermitian: Vec<Vec<Q>>,
    /// `c` with `B(X, Y) = c tr(XY)`, for matrix backends.
    pub trace_scale: Option<Q>,
    subspaces: BTreeMap<String, Vec<Vec<Q>>>,
    coord: Option<CoordSolver>,
    involution: Option<Involution>,
}

fn sparse_add(acc: &mut BTreeMap<usize, Q>, v: &[(usize, Q)], scale: &Q) {
    for (k, c) in v {
        let e = acc.entry(*k).or_insert_with(Q::zero);
        *e += scale * c;
    }
}

fn sparse_finish(acc: BTreeMap<usize, Q>) -> Sparse {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn mat_zero(n: usize) -> Mat {
    vec![vec![Q::zero(); n]; n]
}

/// Matrix unit `E_ij` with 1-based indices.
pub(crate) fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = mat_zero(n);
    m[i - 1][j - 1] = Q::one();
    m
}

pub(crate) fn mat_lin(terms: &[(i64, &Mat)]) -> Mat {
    let n = terms[0].1.len();
    let mut m = mat_zero(n);
    for (c, x) in terms {
        let c = q(*c);
        for i in 0..n {
            for j in 0..n {
                if !x[i][j].is_zero() {
                    m[i][j] += &c * &x[i][j];
                }
            }
        }
    }
    m
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let ab = linalg::mat_mul(a, b);
    let ba = linalg::mat_mul(b, a);
    ab.into_iter()
        .zip(ba)
        .map(|(r, s)| r.into_iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn trace_prod(a: &Mat, b: &Mat) -> Q {
    let n = a.len();
    let mut t = Q::zero();
    for i in 0..n {
        for k in 0..n {
            if !a[i][k].is_zero() && !b[k][i].is_zero() {
                t += &a[i][k] * &b[k][i];
            }
        }
    }
    t
}

impl CoordSolver {
    fn new(mats: &[Mat]) -> Result<Self> {
        let n = mats[0].len();
        let rows: Vec<Vec<Q>> = mats.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
        let mut r = rows.clone();
        let piv = linalg::rref(&mut r);
        if piv.len() != mats.len() {
            return Err(GvError::Consistency("basis matrices are linearly dependent".into()));
        }
        let positions: Vec<(usize, usize)> = piv.iter().map(|&p| (p / n, p % n)).collect();
        let a: Vec<Vec<Q>> = rows.iter().map(|row| piv.iter().map(|&p| row[p].clone()).collect()).collect();
        let inv = linalg::inverse(&a).ok_or_else(|| GvError::Consistency("singular coordinate block".into()))?;
        Ok(CoordSolver { positions, inv })
    }

    fn coords(&self, m: &Mat, mats: &[Mat]) -> Result<Vec<Q>> {
        let dim = mats.len();
        let mut c = vec![Q::zero(); dim];
        for (p, &(i, j)) in self.positions.iter().enumerate() {
            if m[i][j].is_zero() {
                continue;
            }
            for b in 0..dim {
                if !self.inv[p][b].is_zero() {
                    c[b] += &m[i][j] * &self.inv[p][b];
                }
            }
        }
        // reconstruct and compare
        let n = m.len();
        let mut rec = mat_zero(n);
        for (b, cb) in c.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    if !mats[b][i][j].is_zero() {
                        rec[i][j] += cb * &mats[b][i][j];
                    }
                }
            }
        }
        if &rec != m {
            return Err(GvError::Consistency("matrix is not in the span of the basis".into()));
        }
        Ok(c)
    }
}

impl LieAlgebraData {
    /// Build from a matrix basis: structure constants, Killing form,
    /// Hermitian metric and the named subspaces.
    pub fn from_matrices(spec: FamilySpec, mb: MatrixBasis) -> Result<Self> {
        let dim = mb.matrices.len();
        let solver = CoordSolver::new(&mb.matrices)?;
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = commutator(&mb.matrices[i], &mb.matrices[j]);
                let v = solver.coords(&c, &mb.matrices)?;
                let s: Sparse = v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                brackets[j][i] = s.iter().map(|(k, x)| (*k, -x.clone())).collect();
                brackets[i][j] = s;
            }
        }
        let mut data = LieAlgebraData {
            spec,
            backend: Backend::Matrix,
            labels: mb.labels,
            parts: mb.parts,
            cartan: mb.cartan,
            matrices: mb.matrices,
            complete: true,
            brackets,
            dual_d: Vec::new(),
            killing: Vec::new(),
            hermitian: Vec::new(),
            trace_scale: None,
            subspaces: BTreeMap::new(),
            coord: Some(solver),
            involution: Some(mb.involution),
        };
        data.finish_dual_d();
        data.killing = data.ad_trace_killing();
        data.trace_scale = Some(data.detect_trace_scale()?);
        let c = data.trace_scale.clone().unwrap();
        data.hermitian = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| &c * trace_prod(&data.matrices[a], &linalg::transpose(&data.matrices[b])))
                    .collect()
            })
            .collect();
        data.fill_subspaces()?;
        Ok(data)
    }

    /// Build a root-data algebra from explicit brackets and forms.
    pub(crate) fn from_root_data(
        spec: FamilySpec,
        labels: Vec<String>,
        parts: Vec<Part>,
        cartan: Vec<usize>,
        brackets: Vec<Vec<Sparse>>,
        killing: Vec<Vec<Q>>,
        hermitian: Vec<Vec<Q>>,
    ) -> Self {
        let mut data = LieAlgebraData {
            spec,
            backend: Backend::RootData,
            labels,
            parts,
            cartan,
            matrices: Vec::new(),
            complete: false,
            brackets,
            dual_d: Vec::new(),
            killing,
            hermitian,
            trace_scale: None,
            subspaces: BTreeMap::new(),
            coord: None,
            involution: None,
        };
        data.finish_dual_d();
        let dim = data.dim();
        let unit_vecs = |pred: &dyn Fn(usize) -> bool| -> Vec<Vec<Q>> {
            (0..dim).filter(|&i| pred(i)).map(|i| data.unit_vector(i)).collect()
        };
        let r = unit_vecs(&|i| data.parts[i] == Part::R);
        let u = unit_vecs(&|i| data.parts[i] == Part::U);
        let v = unit_vecs(&|i| data.parts[i] == Part::V);
        let h = unit_vecs(&|i| data.cartan.contains(&i));
        let p = unit_vecs(&|i| data.parts[i] != Part::V);
        let mut subs = BTreeMap::new();
        subs.insert("r".to_string(), r);
        subs.insert("u".to_string(), u);
        subs.insert("v".to_string(), v);
        subs.insert("h".to_string(), h);
        subs.insert("p".to_string(), p);
        data.subspaces = subs;
        data
    }

    /// Declare the brackets complete once the stored Killing form agrees
    /// with `tr(ad x ad y)`, and record `k_P`.
    pub(crate) fn mark_complete(&mut self, k_p: Vec<Vec<Q>>) -> Result<()> {
        if self.ad_trace_killing() != self.killing {
            return Err(GvError::Consistency(format!("{}: stored Killing form differs from tr(ad ad)", self.spec)));
        }
        self.complete = true;
        self.subspaces.insert("k_P".to_string(), k_p);
        Ok(())
    }

    fn finish_dual_d(&mut self) {
        let dim = self.dim();
        let mut dd = vec![Vec::new(); dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                for (k, c) in &self.brackets[i][j] {
                    dd[*k].push((i, j, -c.clone()));
                }
            }
        }
        self.dual_d = dd;
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.brackets[i][j]
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.brackets[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    /// `d e^k` as a list of `(i, j, coefficient)` with `i < j`.
    pub fn dual_differential(&self, k: usize) -> &[(usize, usize, Q)] {
        &self.dual_d[k]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut acc = BTreeMap::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                sparse_add(&mut acc, &self.brackets[i][j], &(xi * yj));
            }
        }
        let mut out = vec![Q::zero(); self.dim()];
        for (k, c) in acc {
            out[k] = c;
        }
        out
    }

    pub fn killing_vec(&self, x: &[Q], y: &[Q]) -> Q {
        let mut t = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.killing[i][j].is_zero() {
                    t += xi * yj * &self.killing[i][j];
                }
            }
        }
        t
    }

    /// Indices of basis elements in the given summand.
    pub fn indices(&self, part: Part) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parts[i] == part).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| GvError::Consistency(format!("no basis element {label}")))
    }

    /// Spanning vectors of a named subspace.
    pub fn subspace(&self, name: &str) -> Result<&[Vec<Q>]> {
        self.subspaces
            .get(name)
            .map(|v| v.as_slice())
            .ok_or_else(|| GvError::UnknownSubspace(name.to_string()))
    }

    pub fn subspace_names(&self) -> Vec<&str> {
        self.subspaces.keys().map(|s| s.as_str()).collect()
    }

    /// Coordinates of a matrix in the basis.
    pub fn coords_of(&self, m: &Mat) -> Result<Vec<Q>> {
        match &self.coord {
            Some(s) => s.coords(m, &self.matrices),
            None => Err(GvError::Backend("no matrix realization".into())),
        }
    }

    /// Covector `X -> X_ij` (1-based) in dual-basis coordinates.
    pub fn entry_functional(&self, i: usize, j: usize) -> Vec<Q> {
        self.matrices.iter().map(|m| m[i - 1][j - 1].clone()).collect()
    }

    /// Killing form by `tr(ad x ad y)`.
    fn ad_trace_killing(&self) -> Vec<Vec<Q>> {
        let dim = self.dim();
        let mut k = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in a..dim {
                let mut t = Q::zero();
                // sum over l of coefficient of e_l in [e_a, [e_b, e_l]]
                for l in 0..dim {
                    for (m, c) in &self.brackets[b][l] {
                        for (kk, c2) in &self.brackets[a][*m] {
                            if *kk == l {
                                t += c * c2;
                            }
                        }
                    }
                }
                k[b][a] = t.clone();
                k[a][b] = t;
            }
        }
        k
    }

    fn detect_trace_scale(&self) -> Result<Q> {
        let dim = self.dim();
        let mut scale: Option<Q> = None;
        for a in 0..dim {
            for b in 0..dim {
                let t = trace_prod(&self.matrices[a], &self.matrices[b]);
                let kab = &self.killing[a][b];
                if t.is_zero() {
                    if !kab.is_zero() {
                        return Err(GvError::Consistency("Killing form not proportional to trace form".into()));
                    }
                    continue;
                }
                let r = kab / &t;
                match &scale {
                    None => scale = Some(r),
                    Some(s) if *s != r => {
                        return Err(GvError::Consistency("Killing form not proportional to trace form".into()))
                    }
                    _ => {}
                }
            }
        }
        scale.ok_or_else(|| GvError::Consistency("trace form vanishes".into()))
    }

    /// Matrix of the Cartan involution in basis coordinates (columns are images).
    pub fn involution_matrix(&self) -> Result<Vec<Vec<Q>>> {
        let inv = self.involution.as_ref().ok_or_else(|| GvError::Backend("no involution".into()))?;
        let cols: Vec<Vec<Q>> =
            self.matrices.iter().map(|m| self.coords_of(&inv.apply(m))).collect::<Result<_>>()?;
        Ok(linalg::transpose(&cols))
    }

    fn fill_subspaces(&mut self) -> Result<()> {
        let dim = self.dim();
        let units = |pred: &dyn Fn(usize) -> bool| -> Vec<Vec<Q>> {
            (0..dim).filter(|&i| pred(i)).map(|i| self.unit_vector(i)).collect()
        };
        let r = units(&|i| self.parts[i] == Part::R);
        let u = units(&|i| self.parts[i] == Part::U);
        let v = units(&|i| self.parts[i] == Part::V);
        let p = units(&|i| self.parts[i] != Part::V);
        let h = units(&|i| self.cartan.contains(&i));

        // k_G: fixed points of the Cartan involution
        let t = self.involution_matrix()?;
        let mut t_minus = t.clone();
        for (i, row) in t_minus.iter_mut().enumerate() {
            row[i] -= Q::one();
        }
        let kg = linalg::nullspace(&t_minus, dim);

        // k_P = k_G cap p: combinations of k_G with vanishing v-coordinates
        let vidx = self.indices(Part::V);
        let cond: Vec<Vec<Q>> = vidx.iter().map(|&i| kg.iter().map(|x| x[i].clone()).collect()).collect();
        let combos = if cond.is_empty() {
            (0..kg.len())
                .map(|i| (0..kg.len()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect()
        } else {
            linalg::nullspace(&cond, kg.len())
        };
        let kp: Vec<Vec<Q>> = combos
            .iter()
            .map(|c| {
                let mut x = vec![Q::zero(); dim];
                for (coef, vec) in c.iter().zip(&kg) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (xi, vi) in x.iter_mut().zip(vec) {
                        *xi += coef * vi;
                    }
                }
                x
            })
            .collect();

        // m: Killing-orthogonal complement of k_P in k_G
        let cond_m: Vec<Vec<Q>> =
            kp.iter().map(|y| kg.iter().map(|x| self.killing_vec(x, y)).collect()).collect();
        let mcomb = if cond_m.is_empty() {
            (0..kg.len())
                .map(|i| (0..kg.len()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect()
        } else {
            linalg::nullspace(&cond_m, kg.len())
        };
        let m: Vec<Vec<Q>> = mcomb
            .iter()
            .map(|c| {
                let mut x = vec![Q::zero(); dim];
                for (coef, vec) in c.iter().zip(&kg) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (xi, vi) in x.iter_mut().zip(vec) {
                        *xi += coef * vi;
                    }
                }
                x
            })
            .collect();

        let mut subs = BTreeMap::new();
        subs.insert("r".to_string(), r);
        subs.insert("u".to_string(), u);
        subs.insert("v".to_string(), v);
        subs.insert("p".to_string(), p);
        subs.insert("h".to_string(), h);
        subs.insert("k_G".to_string(), kg);
        subs.insert("k_P".to_string(), kp);
        subs.insert("m".to_string(), m);
        self.subspaces = subs;
        Ok(())
    }

    /// Copy with `c_{ij}^k` shifted by `delta` (and `c_{ji}^k` by `-delta`).
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: Q) -> Self {
        let mut out = self.clone();
        let mut acc: BTreeMap<usize, Q> = out.brackets[i][j].iter().cloned().collect();
        *acc.entry(k).or_insert_with(Q::zero) += &delta;
        let s = sparse_finish(acc);
        out.brackets[j][i] = s.iter().map(|(kk, c)| (*kk, -c.clone())).collect();
        out.brackets[i][j] = s;
        out.finish_dual_d();
        out
    }

    /// JSON description used by `dump-algebra`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut sc = Vec::new();
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                for (k, c) in &self.brackets[i][j] {
                    sc.push(serde_json::json!([i, j, k, c.to_string()]));
                }
            }
        }
        let subs: serde_json::Map<String, serde_json::Value> = self
            .subspaces
            .iter()
            .map(|(k, v)| {
                let vs: Vec<Vec<String>> = v.iter().map(|x| x.iter().map(|c| c.to_string()).collect()).collect();
                (k.clone(), serde_json::json!(vs))
            })
            .collect();
        let parts: Vec<String> = self.parts.iter().map(|p| format!("{p:?}")).collect();
        serde_json::json!({
            "family": self.spec.family.name(),
            "n": self.spec.n,
            "backend": format!("{:?}", self.backend),
            "dim": self.dim(),
            "complete": self.complete,
            "basis": self.labels,
            "parts": parts,
            "cartan": self.cartan,
            "structure_constants": sc,
            "trace_scale": self.trace_scale.as_ref().map(|c| c.to_string()),
            "subspaces": subs,
        })
    }
}

/// A single failed axiom with witness indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Antisymmetry(usize, usize),
    Jacobi(usize, usize, usize),
    Closure(String, usize, usize),
    KillingSymmetry(usize, usize),
    KillingInvariance(usize, usize, usize),
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
    /// Checks that could not be run on this backend.
    pub skipped: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

fn in_span(basis: &[Vec<Q>], x: &[Q]) -> bool {
    if x.iter().all(|c| c.is_zero()) {
        return true;
    }
    let r0 = linalg::rank(basis);
    let mut m = basis.to_vec();
    m.push(x.to_vec());
    linalg::rank(&m) == r0
}

/// Check antisymmetry, Jacobi, subalgebra closure and Killing invariance.
pub fn validate_lie(data: &LieAlgebraData) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let dim = data.dim();
    for i in 0..dim {
        for j in 0..dim {
            let a: BTreeMap<usize, Q> = data.brackets[i][j].iter().cloned().collect();
            let b: BTreeMap<usize, Q> = data.brackets[j][i].iter().map(|(k, c)| (*k, -c.clone())).collect();
            if a != b {
                rep.failures.push(Failure::Antisymmetry(i, j));
            }
            if data.killing[i][j] != data.killing[j][i] {
                rep.failures.push(Failure::KillingSymmetry(i, j));
            }
        }
    }
    if !data.complete {
        rep.skipped.push("jacobi".into());
        rep.skipped.push("closure".into());
        rep.skipped.push("killing invariance".into());
        return rep;
    }
    let nested = |a: usize, b: usize, c: usize| -> BTreeMap<usize, Q> {
        // [[e_a, e_b], e_c]
        let mut acc = BTreeMap::new();
        for (k, x) in &data.brackets[a][b] {
            sparse_add(&mut acc, &data.brackets[*k][c], x);
        }
        acc
    };
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let mut acc = nested(i, j, k);
                for (kk, c) in nested(j, k, i) {
                    *acc.entry(kk).or_insert_with(Q::zero) += c;
                }
                for (kk, c) in nested(k, i, j) {
                    *acc.entry(kk).or_insert_with(Q::zero) += c;
                }
                if acc.values().any(|c| !c.is_zero()) {
                    rep.failures.push(Failure::Jacobi(i, j, k));
                }
            }
        }
    }
    for name in ["p", "k_G", "k_P", "r", "u", "v", "h"] {
        let Ok(s) = data.subspace(name) else { continue };
        'outer: for a in 0..s.len() {
            for b in (a + 1)..s.len() {
                let br = data.bracket_vec(&s[a], &s[b]);
                if !in_span(s, &br) {
                    rep.failures.push(Failure::Closure(name.to_string(), a, b));
                    break 'outer;
                }
            }
        }
    }
    // B([x,y],z) + B(y,[x,z]) = 0
    for x in 0..dim {
        for y in 0..dim {
            for z in y..dim {
                let mut t = Q::zero();
                for (k, c) in &data.brackets[x][y] {
                    t += c * &data.killing[*k][z];
                }
                for (k, c) in &data.brackets[x][z] {
                    t += c * &data.killing[y][*k];
                }
                if !t.is_zero() {
                    rep.failures.push(Failure::KillingInvariance(x, y, z));
                }
            }
        }
    }
    rep
}

/// The Killing form; for matrix backends it is checked against
/// `c tr(XY)` with the detected scale.
pub fn killing_form(data: &LieAlgebraData) -> Result<Vec<Vec<Q>>> {
    if data.backend == Backend::Matrix {
        let c = data.trace_scale.clone().ok_or_else(|| GvError::Backend("missing trace scale".into()))?;
        for a in 0..data.dim() {
            for b in 0..data.dim() {
                if data.killing[a][b] != &c * trace_prod(&data.matrices[a], &data.matrices[b]) {
                    return Err(GvError::Consistency(format!("Killing mismatch at ({a},{b})")));
                }
            }
        }
    }
    Ok(data.killing.clone())
}

/// Build the complexified algebra of a family with its decomposition.
pub fn build_family(spec: FamilySpec) -> Result<LieAlgebraData> {
    match spec.family {
        Family::F4 => crate::roots::f4_algebra(),
        _ => LieAlgebraData::from_matrices(spec, crate::families::matrix_basis(spec)?),
    }
}
