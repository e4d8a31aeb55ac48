//! Sparse exterior forms over the dual of a Lie algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{GvError, Result};
use crate::lie::{LieAlgebraData, Part};
use crate::linalg::{self, Q};
use crate::scalar::ExactScalar;

/// `prefactor * sum_I c_I e^I` with rational `c_I` and strictly increasing `I`.
#[derive(Clone, Debug)]
pub struct MultiForm {
    ambient: usize,
    degree: usize,
    prefactor: ExactScalar,
    terms: BTreeMap<Vec<u16>, Q>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &mut [u16]) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Merge two increasing tuples, returning the sign of the shuffle.
fn merge(a: &[u16], b: &[u16]) -> Option<(Vec<u16>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a's
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, odd))
}

impl MultiForm {
    pub fn zero(ambient: usize, degree: usize) -> Self {
        MultiForm { ambient, degree, prefactor: ExactScalar::one(), terms: BTreeMap::new() }
    }

    /// The constant function 1.
    pub fn one(ambient: usize) -> Self {
        let mut f = Self::zero(ambient, 0);
        f.terms.insert(vec![], Q::one());
        f
    }

    /// The dual basis covector `e^i`.
    pub fn basis(ambient: usize, i: usize) -> Self {
        let mut f = Self::zero(ambient, 1);
        f.terms.insert(vec![i as u16], Q::one());
        f
    }

    /// A covector from dual-basis coordinates.
    pub fn covector(coords: &[Q]) -> Self {
        let mut f = Self::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                f.terms.insert(vec![i as u16], c.clone());
            }
        }
        f
    }

    /// A monomial with arbitrary index order; the sign is absorbed.
    pub fn monomial(ambient: usize, idx: &[usize], coeff: Q) -> Self {
        let mut t: Vec<u16> = idx.iter().map(|&i| i as u16).collect();
        let mut f = Self::zero(ambient, idx.len());
        if let Some(s) = sort_sign(&mut t) {
            if !coeff.is_zero() {
                f.terms.insert(t, if s < 0 { -coeff } else { coeff });
            }
        }
        f
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn prefactor(&self) -> &ExactScalar {
        &self.prefactor
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, Q> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.prefactor.is_zero()
    }

    /// Exact coefficient of a strictly increasing index tuple.
    pub fn coefficient(&self, idx: &[usize]) -> ExactScalar {
        let key: Vec<u16> = idx.iter().map(|&i| i as u16).collect();
        match self.terms.get(&key) {
            Some(c) => self.prefactor.mul_rational(c).expect("rational coefficients factor"),
            None => ExactScalar::zero(),
        }
    }

    /// Multiply by an exact scalar (kept in the prefactor).
    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.ambient, self.degree);
        }
        MultiForm { prefactor: self.prefactor.mul(s), ..self.clone() }
    }

    pub fn scale_rational(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.ambient, self.degree);
        }
        let mut f = self.clone();
        for v in f.terms.values_mut() {
            *v *= c;
        }
        f
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Q::one())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(GvError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Sum; prefactors must differ by a rational factor.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(GvError::Degree(format!("adding degrees {} and {}", self.degree, other.degree)));
        }
        let ratio = other
            .prefactor
            .div(&self.prefactor)?
            .to_rational()
            .ok_or_else(|| GvError::NotRepresentable("sum of incommensurable prefactors".into()))?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let e = out.terms.entry(k.clone()).or_insert_with(Q::zero);
            *e += v * &ratio;
            if e.is_zero() {
                out.terms.remove(k);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = MultiForm {
            ambient: self.ambient,
            degree: self.degree + other.degree,
            prefactor: self.prefactor.mul(&other.prefactor),
            terms: BTreeMap::new(),
        };
        if out.degree > self.ambient {
            return Ok(Self::zero(self.ambient, out.degree));
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((idx, odd)) = merge(a, b) {
                    let c = ca * cb;
                    let e = out.terms.entry(idx).or_insert_with(Q::zero);
                    if odd {
                        *e -= c;
                    } else {
                        *e += c;
                    }
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        if out.terms.is_empty() {
            out.prefactor = ExactScalar::one();
        }
        Ok(out)
    }

    /// `f^k` by repeated wedge.
    pub fn wedge_power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.ambient);
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Wedge of a list of forms, left to right.
    pub fn wedge_all(ambient: usize, forms: &[MultiForm]) -> Result<Self> {
        let mut acc = Self::one(ambient);
        for f in forms {
            acc = acc.wedge(f)?;
        }
        Ok(acc)
    }

    /// Interior product with the basis vector `e_x`.
    pub fn contract(&self, x: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(GvError::Degree("contracting a 0-form".into()));
        }
        let mut out = MultiForm {
            ambient: self.ambient,
            degree: self.degree - 1,
            prefactor: self.prefactor.clone(),
            terms: BTreeMap::new(),
        };
        let x = x as u16;
        for (idx, c) in &self.terms {
            if let Some(pos) = idx.iter().position(|&i| i == x) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let v = if pos % 2 == 0 { c.clone() } else { -c.clone() };
                let e = out.terms.entry(rest).or_insert_with(Q::zero);
                *e += v;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Interior product with an arbitrary vector in basis coordinates.
    pub fn contract_vec(&self, x: &[Q]) -> Result<Self> {
        let mut acc = Self::zero(self.ambient, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Err(GvError::Degree("contracting a 0-form".into()));
        }
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            acc = acc.add(&self.contract(i)?.scale_rational(xi))?;
        }
        Ok(acc)
    }

    /// Chevalley-Eilenberg differential with `d a(x, y) = -a([x, y])`.
    pub fn ce_d(&self, data: &LieAlgebraData) -> Result<Self> {
        if self.ambient != data.dim() {
            return Err(GvError::AmbientMismatch(self.ambient, data.dim()));
        }
        if !data.complete {
            for idx in self.terms.keys() {
                if idx.iter().any(|&i| !data.cartan.contains(&(i as usize))) {
                    return Err(GvError::Backend(
                        "differential on a root-data algebra is only defined on Cartan covectors".into(),
                    ));
                }
            }
        }
        let mut out = MultiForm {
            ambient: self.ambient,
            degree: self.degree + 1,
            prefactor: self.prefactor.clone(),
            terms: BTreeMap::new(),
        };
        for (idx, c) in &self.terms {
            for (s, &k) in idx.iter().enumerate() {
                // d(e^{i1} ... e^{ip}) = sum_s (-1)^s e^{i1} .. d e^{is} .. e^{ip}
                for (i, j, dc) in data.dual_differential(k as usize) {
                    let (i, j) = (*i as u16, *j as u16);
                    if idx.iter().enumerate().any(|(t, &x)| t != s && (x == i || x == j)) {
                        continue;
                    }
                    let mut full: Vec<u16> = Vec::with_capacity(idx.len() + 1);
                    full.extend_from_slice(&idx[..s]);
                    full.push(i);
                    full.push(j);
                    full.extend_from_slice(&idx[s + 1..]);
                    let Some(sign) = sort_sign(&mut full) else { continue };
                    let mut v = c * dc;
                    if (sign < 0) != (s % 2 == 1) {
                        v = -v;
                    }
                    let e = out.terms.entry(full).or_insert_with(Q::zero);
                    *e += v;
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `u* ^ v*` component of `d f` for a 1-form `f`.
    pub fn hat_d(&self, data: &LieAlgebraData) -> Result<Self> {
        if self.degree != 1 {
            return Err(GvError::Degree(format!("hat_d needs a 1-form, got degree {}", self.degree)));
        }
        let mut d = self.ce_d(data)?;
        d.terms.retain(|idx, _| {
            let (a, b) = (data.parts[idx[0] as usize], data.parts[idx[1] as usize]);
            matches!((a, b), (Part::U, Part::V) | (Part::V, Part::U))
        });
        Ok(d)
    }

    /// Lie derivative `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &[Q], data: &LieAlgebraData) -> Result<Self> {
        let a = self.ce_d(data)?.contract_vec(x)?;
        if self.degree == 0 {
            return Ok(a);
        }
        let b = self.contract_vec(x)?.ce_d(data)?;
        a.add(&b)
    }

    /// `Some(k)` when `self = k * other` exactly.
    pub fn ratio_to(&self, other: &Self) -> Option<ExactScalar> {
        if self.ambient != other.ambient || self.degree != other.degree {
            return None;
        }
        if self.is_zero() {
            return Some(ExactScalar::zero());
        }
        if other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (k0, c0) = self.terms.iter().next()?;
        let d0 = other.terms.get(k0)?;
        let r = c0 / d0;
        for (k, c) in &self.terms {
            match other.terms.get(k) {
                Some(d) if *c == d * &r => {}
                _ => return None,
            }
        }
        let s = self.prefactor.div(&other.prefactor).ok()?;
        s.mul_rational(&r).ok()
    }

    /// Exact equality as forms, independent of how the prefactor is split.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero() && self.ambient == other.ambient;
        }
        self.ratio_to(other) == Some(ExactScalar::one())
    }

    /// Keep only terms all of whose indices satisfy `pred`.
    pub fn restrict(&self, pred: impl Fn(usize) -> bool) -> Self {
        let mut f = self.clone();
        f.terms.retain(|idx, _| idx.iter().all(|&i| pred(i as usize)));
        f
    }

    /// Pull back along a linear map given as a matrix `m` (column `j` is
    /// the image of `e_j`): `(g* f)(x, ...) = f(g x, ...)`.
    pub fn pullback(&self, m: &[Vec<Q>]) -> Result<Self> {
        // g* e^k = sum_j m[k][j] e^j
        let dim = self.ambient;
        let images: Vec<MultiForm> = (0..dim).map(|k| MultiForm::covector(&m[k])).collect();
        let mut out = Self::zero(dim, self.degree);
        for (idx, c) in &self.terms {
            let factors: Vec<MultiForm> = idx.iter().map(|&i| images[i as usize].clone()).collect();
            let w = Self::wedge_all(dim, &factors)?.scale_rational(c);
            out = out.add(&w)?;
        }
        Ok(out.scale(&self.prefactor))
    }

    /// Canonical text rendering using basis labels.
    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let names: Vec<String> = idx.iter().map(|&i| format!("{}^", labels[i as usize])).collect();
                if names.is_empty() {
                    c.to_string()
                } else {
                    format!("{c} {}", names.join("∧"))
                }
            })
            .collect();
        format!("{} · ({})", self.prefactor, body.join(" + "))
    }
}

impl fmt::Display for MultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.ambient).map(|i| format!("e{i}")).collect();
        f.write_str(&self.render(&labels))
    }
}

/// `i_X f = 0` and `L_X f = 0` for every spanning vector of the subspace.
pub fn basic_check(f: &MultiForm, data: &LieAlgebraData, subspace: &str) -> Result<bool> {
    if subspace != "k_P" && subspace != "k_G" {
        return Err(GvError::UnknownSubspace(subspace.to_string()));
    }
    let span = data.subspace(subspace)?;
    for x in span {
        if f.degree() > 0 && !f.contract_vec(x)?.is_zero() {
            return Ok(false);
        }
        if !f.lie_derivative(x, data)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the space of `subspace`-basic forms of degree `d`.
///
/// Candidates are wedges of a basis of the annihilator of the subspace;
/// invariance is imposed by linear algebra. `budget` bounds the number of
/// candidate monomials.
pub fn basic_dimension(data: &LieAlgebraData, subspace: &str, d: usize, budget: usize) -> Result<usize> {
    let span = data.subspace(subspace)?.to_vec();
    let dim = data.dim();
    // annihilator: covectors a with a(x) = 0 for all x in span
    let ann = if span.is_empty() {
        (0..dim).map(|i| data.unit_vector(i)).collect()
    } else {
        linalg::nullspace(&span, dim)
    };
    let m = ann.len();
    if d > m {
        return Ok(0);
    }
    let count = binomial(m, d);
    if count > budget {
        return Err(GvError::Budget(format!("{count} candidate monomials exceed budget {budget}")));
    }
    let covs: Vec<MultiForm> = ann.iter().map(|a| MultiForm::covector(a)).collect();
    let mut candidates = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let fs: Vec<MultiForm> = subset.iter().map(|&i| covs[i].clone()).collect();
        candidates.push(MultiForm::wedge_all(dim, &fs)?);
        if !next_subset(&mut subset, m) {
            break;
        }
    }
    // linear conditions: L_X (sum c_i f_i) = 0
    let mut rows: BTreeMap<(usize, Vec<u16>), Vec<Q>> = BTreeMap::new();
    let nc = candidates.len();
    for (xi, x) in span.iter().enumerate() {
        for (ci, f) in candidates.iter().enumerate() {
            let l = f.lie_derivative(x, data)?;
            let lpre = l
                .prefactor()
                .to_rational()
                .ok_or_else(|| GvError::Consistency("irrational prefactor".into()))?;
            for (idx, c) in l.terms() {
                let row = rows.entry((xi, idx.clone())).or_insert_with(|| vec![Q::zero(); nc]);
                row[ci] += c * &lpre;
            }
        }
    }
    let mat: Vec<Vec<Q>> = rows.into_values().collect();
    let rank = if mat.is_empty() { 0 } else { linalg::rank(&mat) };
    Ok(nc - rank)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r.min(usize::MAX as u128) as usize
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
