//! The truncated Weil algebra `WO_q`.
//!
//! Generators are `h_i` (odd `i <= q`, degree `2i-1`) and `c_k` (`k <= q`,
//! degree `2k`), with `d h_i = c_i`, `d c_k = 0`, and every monomial of
//! weighted `c`-degree above `q` set to zero.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{GvError, Result};
use crate::form::MultiForm;
use crate::linalg::{self, Q};
use crate::scalar::ExactScalar;

/// Largest `q` accepted by [`wo_cohomology`].
pub const COHOMOLOGY_MAX_Q: usize = 3;

/// `h_I c^J`: `i` is a strictly increasing list of odd indices, `j[k-1]` is
/// the exponent of `c_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WOMonomial {
    pub i: Vec<u8>,
    pub j: Vec<u8>,
}

impl WOMonomial {
    pub fn c_weight(&self) -> usize {
        self.j.iter().enumerate().map(|(k, &e)| (k + 1) * e as usize).sum()
    }

    pub fn degree(&self) -> usize {
        let hi: usize = self.i.iter().map(|&i| 2 * i as usize - 1).sum();
        hi + 2 * self.c_weight()
    }
}

impl fmt::Display for WOMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for i in &self.i {
            s.push_str(&format!("h{i}"));
        }
        for (k, &e) in self.j.iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&format!("c{}", k + 1)),
                e => s.push_str(&format!("c{}^{e}", k + 1)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// A homogeneous or inhomogeneous element of `WO_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WOElement {
    pub q: usize,
    pub terms: BTreeMap<WOMonomial, Q>,
}

impl WOElement {
    pub fn zero(q: usize) -> Self {
        WOElement { q, terms: BTreeMap::new() }
    }

    pub fn one(q: usize) -> Self {
        Self::from_monomial(q, WOMonomial { i: vec![], j: vec![0; q] })
    }

    fn from_monomial(q: usize, m: WOMonomial) -> Self {
        let mut e = Self::zero(q);
        if m.c_weight() <= q {
            e.terms.insert(m, Q::one());
        }
        e
    }

    /// `h_i` for odd `i <= q`.
    pub fn h(q: usize, i: usize) -> Result<Self> {
        if i % 2 == 0 || i == 0 || i > q {
            return Err(GvError::ParameterOutOfRange(format!("h_{i} is not a generator of WO_{q}")));
        }
        Ok(Self::from_monomial(q, WOMonomial { i: vec![i as u8], j: vec![0; q] }))
    }

    /// `c_k` for `1 <= k <= q`.
    pub fn c(q: usize, k: usize) -> Result<Self> {
        if k == 0 || k > q {
            return Err(GvError::ParameterOutOfRange(format!("c_{k} is not a generator of WO_{q}")));
        }
        let mut j = vec![0; q];
        j[k - 1] = 1;
        Ok(Self::from_monomial(q, WOMonomial { i: vec![], j }))
    }

    /// `h_I c^J` directly.
    pub fn monomial(q: usize, i: &[usize], j: &[usize]) -> Result<Self> {
        let mut e = Self::one(q);
        for &x in i {
            e = e.mul(&Self::h(q, x)?);
        }
        for (k, &p) in j.iter().enumerate() {
            for _ in 0..p {
                e = e.mul(&Self::c(q, k + 1)?);
            }
        }
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.q);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Graded-commutative product with truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.q);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let j: Vec<u8> = a.j.iter().zip(&b.j).map(|(x, y)| x + y).collect();
                let m = WOMonomial { i: vec![], j };
                if m.c_weight() > self.q {
                    continue;
                }
                // merge odd generators
                let mut idx: Vec<u8> = a.i.iter().chain(&b.i).copied().collect();
                let mut sign = 1i8;
                for x in 1..idx.len() {
                    let mut y = x;
                    while y > 0 && idx[y - 1] > idx[y] {
                        idx.swap(y - 1, y);
                        sign = -sign;
                        y -= 1;
                    }
                }
                if idx.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let m = WOMonomial { i: idx, j: m.j };
                let v = ca * cb;
                let e = out.terms.entry(m.clone()).or_insert_with(Q::zero);
                if sign < 0 {
                    *e -= v;
                } else {
                    *e += v;
                }
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }
}

/// `d(h_I c^J) = Σ_t (-1)^{t-1} c_{i_t} h_{I \ i_t} c^J`, then truncate.
pub fn wo_differential(e: &WOElement) -> WOElement {
    let mut out = WOElement::zero(e.q);
    for (m, c) in &e.terms {
        for t in 0..m.i.len() {
            let mut j = m.j.clone();
            j[m.i[t] as usize - 1] += 1;
            let mut rest = m.i.clone();
            rest.remove(t);
            let nm = WOMonomial { i: rest, j };
            if nm.c_weight() > e.q {
                continue;
            }
            let v = if t % 2 == 0 { c.clone() } else { -c.clone() };
            let entry = out.terms.entry(nm.clone()).or_insert_with(Q::zero);
            *entry += v;
            if entry.is_zero() {
                out.terms.remove(&nm);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VeyTag {
    Pontryagin,
    Exotic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeyMonomial {
    pub monomial: WOMonomial,
    pub degree: usize,
    pub tag: VeyTag,
}

#[derive(Clone, Debug, Serialize)]
pub struct VeyBasis {
    pub q: usize,
    /// Non-unit basis monomials sorted by degree.
    pub monomials: Vec<VeyMonomial>,
}

impl VeyBasis {
    /// Count per degree, including the unit in degree 0.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        m.insert(0, 1);
        for v in &self.monomials {
            *m.entry(v.degree).or_insert(0) += 1;
        }
        m
    }
}

/// Exponent vectors `J` with weighted degree `<= q`.
fn c_exponents(q: usize) -> Vec<Vec<u8>> {
    fn rec(k: usize, q: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k > q {
            out.push(cur.clone());
            return;
        }
        let mut e = 0;
        while e * k <= left {
            cur.push(e as u8);
            rec(k + 1, q, left - e * k, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(1, q, q, &mut Vec::new(), &mut out);
    out
}

fn odd_subsets(q: usize) -> Vec<Vec<u8>> {
    let odds: Vec<u8> = (1..=q).filter(|i| i % 2 == 1).map(|i| i as u8).collect();
    (0..(1u32 << odds.len()))
        .map(|mask| odds.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &x)| x).collect())
        .collect()
}

/// Every monomial of `WO_q`.
pub fn all_monomials(q: usize) -> Vec<WOMonomial> {
    let mut out = Vec::new();
    for i in odd_subsets(q) {
        for j in c_exponents(q) {
            out.push(WOMonomial { i: i.clone(), j });
        }
    }
    out.sort_by_key(|m| (m.degree(), m.clone()));
    out
}

/// Vey basis: `c_J` with only even indices, and `h_I c_J` with
/// `i_1 + |J| >= q + 1` and `i_1 <= j` for every odd `j` in `J`, where
/// `|J|` is the weighted degree.
pub fn vey_basis(q: usize) -> Result<VeyBasis> {
    if q == 0 {
        return Err(GvError::ParameterOutOfRange("vey basis needs q >= 1".into()));
    }
    let mut out = Vec::new();
    for m in all_monomials(q) {
        let w = m.c_weight();
        if m.i.is_empty() {
            let all_even = m.j.iter().enumerate().all(|(k, &e)| e == 0 || (k + 1) % 2 == 0);
            if all_even && w > 0 {
                out.push(VeyMonomial { degree: m.degree(), monomial: m, tag: VeyTag::Pontryagin });
            }
            continue;
        }
        let i1 = m.i[0] as usize;
        let min_ok = m.j.iter().enumerate().all(|(k, &e)| e == 0 || (k + 1) % 2 == 0 || i1 <= k + 1);
        if i1 + w >= q + 1 && min_ok {
            out.push(VeyMonomial { degree: m.degree(), monomial: m, tag: VeyTag::Exotic });
        }
    }
    out.sort_by_key(|v| {
        let mut j = v.monomial.j.clone();
        j.reverse();
        (v.degree, v.monomial.i.clone(), j)
    });
    Ok(VeyBasis { q, monomials: out })
}

/// Matrix of `d` from degree `k` to `k+1` over the monomial bases.
fn d_matrix(q: usize, src: &[WOMonomial], dst: &[WOMonomial]) -> Vec<Vec<Q>> {
    let pos: BTreeMap<&WOMonomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = vec![vec![Q::zero(); src.len()]; dst.len()];
    for (c, m) in src.iter().enumerate() {
        let mut e = WOElement::zero(q);
        e.terms.insert(m.clone(), Q::one());
        for (dm, v) in wo_differential(&e).terms {
            mat[pos[&dm]][c] = v;
        }
    }
    mat
}

fn rank_of(m: &[Vec<Q>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        0
    } else {
        linalg::rank(m)
    }
}

/// Betti numbers of `WO_q` by exact rank computations.
pub fn wo_cohomology(q: usize) -> Result<BTreeMap<usize, usize>> {
    if q == 0 || q > COHOMOLOGY_MAX_Q {
        return Err(GvError::Budget(format!("wo_cohomology supports 1 <= q <= {COHOMOLOGY_MAX_Q}, got {q}")));
    }
    let all = all_monomials(q);
    let top = all.iter().map(|m| m.degree()).max().unwrap_or(0);
    let by_deg: Vec<Vec<WOMonomial>> =
        (0..=top + 1).map(|d| all.iter().filter(|m| m.degree() == d).cloned().collect()).collect();
    let ranks: Vec<usize> = (0..=top).map(|d| rank_of(&d_matrix(q, &by_deg[d], &by_deg[d + 1]))).collect();
    let mut out = BTreeMap::new();
    for d in 0..=top {
        let prev = if d == 0 { 0 } else { ranks[d - 1] };
        let b = by_deg[d].len() - ranks[d] - prev;
        if b > 0 {
            out.insert(d, b);
        }
    }
    Ok(out)
}

/// Rank of a set of closed monomials modulo exact ones in a fixed degree.
pub fn independent_in_cohomology(q: usize, monomials: &[WOMonomial]) -> bool {
    let Some(d) = monomials.first().map(|m| m.degree()) else { return true };
    let all = all_monomials(q);
    let cur: Vec<WOMonomial> = all.iter().filter(|m| m.degree() == d).cloned().collect();
    let prev: Vec<WOMonomial> = all.iter().filter(|m| m.degree() + 1 == d).cloned().collect();
    let pos: BTreeMap<&WOMonomial, usize> = cur.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // rows: images of d, then the candidate monomials
    let dm = d_matrix(q, &prev, &cur);
    let mut rows: Vec<Vec<Q>> = (0..prev.len()).map(|c| dm.iter().map(|r| r[c].clone()).collect()).collect();
    let base = rank_of(&rows);
    for m in monomials {
        let mut r = vec![Q::zero(); cur.len()];
        r[pos[m]] = Q::one();
        rows.push(r);
    }
    rank_of(&rows) == base + monomials.len()
}

/// Multiply by `(2π)^{q+1}`.
pub fn gv_normalize(f: &MultiForm, q: usize) -> MultiForm {
    let two_pi = ExactScalar::from_i64(2).mul(&ExactScalar::pi_pow(1));
    f.scale(&two_pi.pow(q as i64 + 1).expect("nonzero"))
}
