//! Matrix bases of the four classical families.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{GvError, Result};
use crate::lie::{mat_lin, mat_zero, unit, Family, FamilySpec, Involution, Mat, MatrixBasis, Part};
use crate::linalg::{self, q, Q};

/// The matrix `I'` of size `m`: `-1` at the two corners, identity in between.
pub fn i_prime(m: usize) -> Mat {
    let mut x = mat_zero(m);
    x[0][m - 1] = q(-1);
    x[m - 1][0] = q(-1);
    for k in 1..m - 1 {
        x[k][k] = q(1);
    }
    x
}

pub fn matrix_basis(spec: FamilySpec) -> Result<MatrixBasis> {
    let n = spec.n as usize;
    match spec.family {
        Family::Sl => Ok(sl_basis(n)),
        Family::So => Ok(so_basis(n)),
        Family::Su => Ok(su_basis(n)),
        Family::Sp => sp_basis(n),
        Family::F4 => Err(GvError::Backend("F4 has no matrix realization here".into())),
    }
}

struct Builder {
    labels: Vec<String>,
    parts: Vec<Part>,
    matrices: Vec<Mat>,
    cartan: Vec<usize>,
}

impl Builder {
    fn new() -> Self {
        Builder { labels: vec![], parts: vec![], matrices: vec![], cartan: vec![] }
    }
    fn push(&mut self, label: String, part: Part, m: Mat) {
        self.labels.push(label);
        self.parts.push(part);
        self.matrices.push(m);
    }
    fn push_cartan(&mut self, label: String, m: Mat) {
        self.cartan.push(self.labels.len());
        self.push(label, Part::R, m);
    }
    fn finish(self, involution: Involution) -> MatrixBasis {
        MatrixBasis {
            labels: self.labels,
            parts: self.parts,
            matrices: self.matrices,
            cartan: self.cartan,
            involution,
        }
    }
}

fn e_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("E_{i}{j}")
    } else {
        format!("E_{i},{j}")
    }
}

/// `sl(q+1, C)` with `v = span{E_k1}` and `u = span{E_1k}`.
fn sl_basis(qq: usize) -> MatrixBasis {
    let m = qq + 1;
    let mut b = Builder::new();
    for k in 2..=m {
        b.push(e_label(k, 1), Part::V, unit(m, k, 1));
    }
    for i in 1..m {
        let h = mat_lin(&[(1, &unit(m, i, i)), (-1, &unit(m, i + 1, i + 1))]);
        b.push_cartan(format!("H_{i}"), h);
    }
    for k in 2..=m {
        b.push(e_label(1, k), Part::U, unit(m, 1, k));
    }
    for i in 2..=m {
        for j in 2..=m {
            if i != j {
                b.push(e_label(i, j), Part::R, unit(m, i, j));
            }
        }
    }
    b.finish(Involution::NegTranspose)
}

/// `so(n+2, C)` preserving `I'`, in the basis `v_j, a, tv_j, A_kh`.
fn so_basis(n: usize) -> MatrixBasis {
    let m = n + 2;
    let n1 = n + 1;
    let mut b = Builder::new();
    for j in 2..=n1 {
        b.push(format!("v_{j}"), Part::V, mat_lin(&[(1, &unit(m, j, 1)), (1, &unit(m, m, j))]));
    }
    b.push_cartan("a".into(), mat_lin(&[(1, &unit(m, 1, 1)), (-1, &unit(m, m, m))]));
    for j in 2..=n1 {
        b.push(format!("tv_{j}"), Part::U, mat_lin(&[(1, &unit(m, 1, j)), (1, &unit(m, j, m))]));
    }
    for k in 2..=n1 {
        for h in (k + 1)..=n1 {
            b.push(format!("A_{k}{h}"), Part::R, mat_lin(&[(1, &unit(m, k, h)), (-1, &unit(m, h, k))]));
        }
    }
    b.finish(Involution::Conjugate(i_prime(m)))
}

/// `sl(n+2, C)` with `v` spanned by `E_k1` and `E_{n''k}`.
fn su_basis(n: usize) -> MatrixBasis {
    let m = n + 2;
    let n1 = n + 1;
    let mut b = Builder::new();
    let mut used = std::collections::BTreeSet::new();
    for k in 2..=m {
        b.push(e_label(k, 1), Part::V, unit(m, k, 1));
        used.insert((k, 1));
    }
    for k in 2..=n1 {
        b.push(e_label(m, k), Part::V, unit(m, m, k));
        used.insert((m, k));
    }
    for i in 1..m {
        let h = mat_lin(&[(1, &unit(m, i, i)), (-1, &unit(m, i + 1, i + 1))]);
        b.push_cartan(format!("H_{i}"), h);
    }
    for k in 2..=m {
        b.push(e_label(1, k), Part::U, unit(m, 1, k));
        used.insert((1, k));
    }
    for k in 2..=n1 {
        b.push(e_label(k, m), Part::U, unit(m, k, m));
        used.insert((k, m));
    }
    for i in 1..=m {
        for j in 1..=m {
            if i != j && !used.contains(&(i, j)) {
                b.push(e_label(i, j), Part::R, unit(m, i, j));
            }
        }
    }
    b.finish(Involution::Conjugate(i_prime(m)))
}

/// The symplectic form `J' = [[0, I'], [-I', 0]]` of size `2(n+2)`.
pub fn j_prime(n: usize) -> Mat {
    let m = n + 2;
    let ip = i_prime(m);
    let mut j = mat_zero(2 * m);
    for r in 0..m {
        for c in 0..m {
            if !ip[r][c].is_zero() {
                j[r][m + c] = ip[r][c].clone();
                j[m + r][c] = -ip[r][c].clone();
            }
        }
    }
    j
}

/// Labels and matrices of the `v` root vectors, in the order
/// `u1_k, u2_k, x1_k, x2_k, y1, y2, v`.
fn sp_v_vectors(n: usize) -> Vec<(String, Mat)> {
    let m = n + 2;
    let n1 = n + 1;
    let s = 2 * m;
    let e = |i: usize, j: usize| unit(s, i, j);
    let mut out = Vec::new();
    for k in 2..=n1 {
        out.push((format!("u1_{k}"), mat_lin(&[(1, &e(k, 1)), (1, &e(2 * m, m + k))])));
    }
    for k in 2..=n1 {
        out.push((format!("u2_{k}"), mat_lin(&[(1, &e(m, k)), (1, &e(m + k, m + 1))])));
    }
    for k in 2..=n1 {
        out.push((format!("x1_{k}"), mat_lin(&[(-1, &e(k, m + 1)), (1, &e(m, m + k))])));
    }
    for k in 2..=n1 {
        out.push((format!("x2_{k}"), mat_lin(&[(-1, &e(m + k, 1)), (1, &e(2 * m, k))])));
    }
    out.push(("y1".into(), e(m, m + 1)));
    out.push(("y2".into(), e(2 * m, 1)));
    out.push(("v".into(), mat_lin(&[(1, &e(m, 1)), (-1, &e(2 * m, m + 1))])));
    out
}

/// `sp(n+2, C)` preserving `J'`, with the Cartan basis `h_i` and root vectors.
fn sp_basis(n: usize) -> Result<MatrixBasis> {
    let m = n + 2;
    let n1 = n + 1;
    let s = 2 * m;
    let e = |i: usize, j: usize| unit(s, i, j);
    let mut cartan = vec![mat_lin(&[(1, &e(1, 1)), (-1, &e(2 * m, 2 * m))])];
    for k in 2..=n1 {
        cartan.push(mat_lin(&[(1, &e(k, k)), (-1, &e(m + k, m + k))]));
    }
    cartan.push(mat_lin(&[(1, &e(m, m)), (-1, &e(m + 1, m + 1))]));

    let weight = |x: &Mat| -> Option<Vec<Q>> {
        // diagonal Cartan: weight from any nonzero entry
        let (i, j) = (0..s).flat_map(|i| (0..s).map(move |j| (i, j))).find(|&(i, j)| !x[i][j].is_zero())?;
        Some(cartan.iter().map(|h| &h[i][i] - &h[j][j]).collect())
    };

    let vvecs = sp_v_vectors(n);
    let mut b = Builder::new();
    let mut taken: BTreeMap<Vec<Q>, ()> = BTreeMap::new();
    for (l, x) in &vvecs {
        taken.insert(weight(x).expect("nonzero"), ());
        b.push(l.clone(), Part::V, x.clone());
    }
    for (i, h) in cartan.iter().enumerate() {
        let idx = if i + 1 == cartan.len() { m } else { i + 1 };
        b.push_cartan(format!("h_{idx}"), h.clone());
    }
    for (l, x) in &vvecs {
        let t = linalg::transpose(x);
        taken.insert(weight(&t).expect("nonzero"), ());
        b.push(format!("t{l}"), Part::U, t);
    }
    // remaining root spaces: project matrix units into sp
    let j = j_prime(n);
    let jinv = linalg::inverse(&j).expect("J' invertible");
    for r in 1..=s {
        for c in 1..=s {
            if r == c {
                continue;
            }
            let eji = e(c, r);
            let proj = linalg::mat_mul(&linalg::mat_mul(&jinv, &eji), &j);
            let x = mat_lin(&[(1, &e(r, c)), (-1, &proj)]);
            let Some(w) = weight(&x) else { continue };
            if taken.contains_key(&w) {
                continue;
            }
            taken.insert(w, ());
            b.push(format!("X_{r},{c}"), Part::R, x);
        }
    }
    let mut d = mat_zero(s);
    let ip = i_prime(m);
    for r in 0..m {
        for c in 0..m {
            d[r][c] = ip[r][c].clone();
            d[m + r][m + c] = ip[r][c].clone();
        }
    }
    let expected = m * (2 * m + 1);
    if b.labels.len() != expected {
        return Err(GvError::Consistency(format!("sp basis has {} elements, expected {expected}", b.labels.len())));
    }
    Ok(b.finish(Involution::Conjugate(d)))
}
