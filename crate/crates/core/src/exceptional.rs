//! Full structure constants of F4, obtained as the fixed points of the
//! diagram involution of E6.
//!
//! E6 is simply laced, so its brackets come from a sign cocycle on the root
//! lattice: `[E_a, E_b] = ε(a, b) E_{a+b}`, `[E_a, E_{-a}] = -h_a`. With the
//! Dynkin orientation chosen invariant under the involution, the involution
//! is an automorphism and its fixed algebra is F4.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{GvError, Result};
use crate::lie::Sparse;
use crate::linalg::{self, q, Q};

const RANK: usize = 6;

/// Bourbaki labels 1..6, shifted to 0..5: chain 1-3-4-5-6 with 2 on 4.
const EDGES: [(usize, usize); 5] = [(0, 2), (2, 3), (5, 4), (4, 3), (1, 3)];
const SIGMA: [usize; RANK] = [5, 1, 4, 3, 2, 0];

fn cartan() -> [[i64; RANK]; RANK] {
    let mut a = [[0; RANK]; RANK];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in &EDGES {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

fn pair(a: &[i64], b: &[i64]) -> i64 {
    let c = cartan();
    let mut t = 0;
    for i in 0..RANK {
        for j in 0..RANK {
            t += a[i] * c[i][j] * b[j];
        }
    }
    t
}

/// Positive roots of E6 in simple-root coordinates, by height.
fn e6_positive_roots() -> Vec<Vec<i64>> {
    let mut roots: Vec<Vec<i64>> = (0..RANK).map(|i| (0..RANK).map(|j| i64::from(i == j)).collect()).collect();
    let mut k = 0;
    while k < roots.len() {
        let r = roots[k].clone();
        for i in 0..RANK {
            let mut s = r.clone();
            s[i] += 1;
            if roots.contains(&s) {
                continue;
            }
            // r - p α_i is a root for p = 0..p_max; r + α_i is a root iff p_max > <r, α_i>
            let mut p = 0;
            let mut t = r.clone();
            loop {
                t[i] -= 1;
                if !roots.contains(&t) {
                    break;
                }
                p += 1;
            }
            let ai: Vec<i64> = (0..RANK).map(|j| i64::from(i == j)).collect();
            if p - pair(&r, &ai) > 0 {
                roots.push(s);
            }
        }
        k += 1;
    }
    roots
}

/// `ε(a, b)` for the oriented diagram, bimultiplicative with `ε(α, α) = -1`.
fn epsilon(a: &[i64], b: &[i64]) -> i64 {
    let mut e: i64 = (0..RANK).map(|i| a[i] * b[i]).sum();
    for &(i, j) in &EDGES {
        e += a[i] * b[j];
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

struct E6 {
    /// All roots; index `RANK + r` in the algebra basis.
    roots: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl E6 {
    fn new() -> Self {
        let pos = e6_positive_roots();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<i64>>()));
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), RANK + i)).collect();
        E6 { roots, index }
    }

    fn dim(&self) -> usize {
        RANK + self.roots.len()
    }

    /// Bracket of two basis elements.
    fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        match (x < RANK, y < RANK) {
            (true, true) => vec![],
            (true, false) => {
                let a = &self.roots[y - RANK];
                let hx: Vec<i64> = (0..RANK).map(|j| i64::from(x == j)).collect();
                let c = pair(a, &hx);
                if c == 0 {
                    vec![]
                } else {
                    vec![(y, c)]
                }
            }
            (false, true) => self.bracket(y, x).into_iter().map(|(k, c)| (k, -c)).collect(),
            (false, false) => {
                let a = &self.roots[x - RANK];
                let b = &self.roots[y - RANK];
                let s: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                if s.iter().all(|&c| c == 0) {
                    return (0..RANK).filter(|&i| a[i] != 0).map(|i| (i, -a[i])).collect();
                }
                match self.index.get(&s) {
                    Some(&k) => vec![(k, epsilon(a, b))],
                    None => vec![],
                }
            }
        }
    }

    fn sigma_index(&self, x: usize) -> usize {
        if x < RANK {
            return SIGMA[x];
        }
        let a = &self.roots[x - RANK];
        let mut s = vec![0; RANK];
        for i in 0..RANK {
            s[SIGMA[i]] = a[i];
        }
        self.index[&s]
    }
}

/// F4 in the fixed-point basis: each element is the sum over a
/// σ-orbit of E6 basis elements.
struct Folded {
    orbits: Vec<Vec<usize>>,
    /// E6 basis index -> (fixed basis index).
    owner: BTreeMap<usize, usize>,
    cartan: Vec<usize>,
    brackets: Vec<Vec<Vec<(usize, Q)>>>,
}

fn fold(e6: &E6) -> Result<Folded> {
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut owner = BTreeMap::new();
    for x in 0..e6.dim() {
        if owner.contains_key(&x) {
            continue;
        }
        let y = e6.sigma_index(x);
        let orb = if y == x { vec![x] } else { vec![x, y] };
        for &z in &orb {
            owner.insert(z, orbits.len());
        }
        orbits.push(orb);
    }
    let cartan: Vec<usize> = (0..orbits.len()).filter(|&i| orbits[i][0] < RANK).collect();
    let n = orbits.len();
    let mut brackets = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &x in &orbits[i] {
                for &y in &orbits[j] {
                    for (k, c) in e6.bracket(x, y) {
                        *acc.entry(k).or_insert(0) += c;
                    }
                }
            }
            acc.retain(|_, c| *c != 0);
            // read off the coefficient of each orbit and check σ-invariance
            let mut out: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &c) in &acc {
                let o = owner[&k];
                match out.get(&o) {
                    Some(&prev) if prev != c => {
                        return Err(GvError::Consistency("folded bracket is not σ-invariant".into()));
                    }
                    _ => {
                        out.insert(o, c);
                    }
                }
            }
            for (&o, _) in &out {
                if orbits[o].iter().any(|z| !acc.contains_key(z)) {
                    return Err(GvError::Consistency("folded bracket leaves the fixed algebra".into()));
                }
            }
            brackets[i][j] = out.into_iter().map(|(o, c)| (o, q(c))).collect();
        }
    }
    Ok(Folded { orbits, owner, cartan, brackets })
}

fn bracket_vec(br: &[Vec<Vec<(usize, Q)>>], x: &[Q], y: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); x.len()];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, c) in &br[i][j] {
                out[*k] += xi * yj * c;
            }
        }
    }
    out
}

fn ad_killing(br: &[Vec<Vec<(usize, Q)>>], x: &[Q], y: &[Q]) -> Q {
    let n = x.len();
    let mut t = Q::zero();
    for l in 0..n {
        let mut e = vec![Q::zero(); n];
        e[l] = Q::one();
        let z = bracket_vec(br, x, &bracket_vec(br, y, &e));
        t += &z[l];
    }
    t
}

/// Structure constants of F4 in the basis `H_0..H_3, E_{+a}, E_{-a}` for
/// the given positive roots (coordinates `a_i = a(H_i)`), normalised by
/// `B(E_a, E_{-a}) = 1`.
pub(crate) fn f4_structure(positive: &[Vec<Q>]) -> Result<Vec<Vec<Sparse>>> {
    let e6 = E6::new();
    let f = fold(&e6)?;
    let n = f.orbits.len();
    if n != 52 || f.cartan.len() != 4 || positive.len() != 24 {
        return Err(GvError::Consistency(format!("folding gave dimension {n}")));
    }
    // weight of each root orbit under the four fixed Cartan elements
    let weight = |o: usize| -> Vec<Q> {
        let x = f.orbits[o][0] - RANK;
        f.cartan
            .iter()
            .map(|&h| f.orbits[h].iter().map(|&hi| q(pair(&e6.roots[x], &unit(hi)))).sum())
            .collect()
    };
    let npos_e6 = e6.roots.len() / 2;
    let is_pos = |o: usize| f.orbits[o][0] >= RANK && f.orbits[o][0] - RANK < npos_e6;
    let simple: Vec<usize> = (0..RANK).map(|i| f.owner[&(RANK + i)]).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let pos_orbits: Vec<usize> = (0..n).filter(|&o| is_pos(o)).collect();
    // express every positive weight in the folded simple weights
    let sw: Vec<Vec<Q>> = simple.iter().map(|&o| weight(o)).collect();
    let swt = linalg::transpose(&sw);
    let in_simple: Vec<Vec<Q>> = pos_orbits
        .iter()
        .map(|&o| linalg::solve(&swt, &weight(o)).ok_or_else(|| GvError::Consistency("weight outside span".into())))
        .collect::<Result<_>>()?;
    // target simple roots: positive roots that are not sums of two positive roots
    let sum_of_two = |r: &Vec<Q>| {
        positive.iter().any(|a| {
            let d: Vec<Q> = r.iter().zip(a).map(|(x, y)| x - y).collect();
            positive.contains(&d)
        })
    };
    let target: Vec<Vec<Q>> = positive.iter().filter(|r| !sum_of_two(r)).cloned().collect();
    if target.len() != 4 {
        return Err(GvError::Consistency("printed roots do not have four simple roots".into()));
    }
    // find the assignment of simple roots that maps positive roots onto positive roots
    let mut assignment = None;
    for perm in permutations(4) {
        let image = |c: &[Q]| -> Vec<Q> {
            (0..4).map(|i| (0..4).map(|s| &c[s] * &target[perm[s]][i]).sum()).collect()
        };
        let images: Vec<Vec<Q>> = in_simple.iter().map(|c| image(c)).collect();
        if images.iter().all(|r| positive.contains(r)) {
            assignment = Some(images);
            break;
        }
    }
    let images = assignment.ok_or_else(|| GvError::Consistency("no root system isomorphism".into()))?;
    // M sends folded weights to printed coordinates: M w = image
    let ws: Vec<Vec<Q>> = pos_orbits.iter().map(|&o| weight(o)).collect();
    let mut m = Vec::new();
    for i in 0..4 {
        let rhs: Vec<Q> = images.iter().map(|r| r[i].clone()).collect();
        let row = solve_overdetermined(&ws, &rhs)?;
        m.push(row);
    }
    // new basis vectors in fixed-basis coordinates
    let mut basis: Vec<Vec<Q>> = Vec::with_capacity(52);
    for row in &m {
        let mut v = vec![Q::zero(); n];
        for (l, &h) in f.cartan.iter().enumerate() {
            v[h] = row[l].clone();
        }
        basis.push(v);
    }
    let find = |root: &[Q], positive_side: bool| -> Result<usize> {
        (0..n)
            .filter(|&o| f.orbits[o][0] >= RANK && is_pos(o) == positive_side)
            .find(|&o| {
                let w = weight(o);
                let img: Vec<Q> = m.iter().map(|row| row.iter().zip(&w).map(|(a, b)| a * b).sum()).collect();
                let want: Vec<Q> = if positive_side { root.to_vec() } else { root.iter().map(|c| -c.clone()).collect() };
                img == want
            })
            .ok_or_else(|| GvError::Consistency("root without a root vector".into()))
    };
    let unit_vec = |o: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[o] = Q::one();
        v
    };
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for r in positive {
        let xp = unit_vec(find(r, true)?);
        let xm = unit_vec(find(r, false)?);
        let b = ad_killing(&f.brackets, &xp, &xm);
        if b.is_zero() {
            return Err(GvError::Consistency("root vectors pair to zero".into()));
        }
        plus.push(xp);
        minus.push(xm.into_iter().map(|c| c / &b).collect::<Vec<Q>>());
    }
    basis.extend(plus);
    basis.extend(minus);
    // brackets in the new basis
    let cols = linalg::transpose(&basis);
    let inv = linalg::inverse(&cols).ok_or_else(|| GvError::Consistency("singular F4 basis".into()))?;
    let mut out = vec![vec![Vec::new(); 52]; 52];
    for i in 0..52 {
        for j in (i + 1)..52 {
            let z = bracket_vec(&f.brackets, &basis[i], &basis[j]);
            let c: Vec<Q> = (0..52).map(|r| inv[r].iter().zip(&z).map(|(a, b)| a * b).sum()).collect();
            let s: Sparse = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            out[j][i] = s.iter().map(|(k, x)| (*k, -x.clone())).collect();
            out[i][j] = s;
        }
    }
    Ok(out)
}

fn unit(i: usize) -> Vec<i64> {
    (0..RANK).map(|j| i64::from(i == j)).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Solve `rows · x = rhs` for a consistent overdetermined system.
fn solve_overdetermined(rows: &[Vec<Q>], rhs: &[Q]) -> Result<Vec<Q>> {
    let k = rows[0].len();
    let mut aug: Vec<Vec<Q>> = rows.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let piv = linalg::rref(&mut aug);
    if piv.contains(&k) || piv.len() != k {
        return Err(GvError::Consistency("inconsistent coordinate change".into()));
    }
    Ok((0..k).map(|i| aug[i][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e6_has_36_positive_roots() {
        let r = e6_positive_roots();
        assert_eq!(r.len(), 36);
        assert_eq!(r.iter().map(|x| x.iter().sum::<i64>()).max(), Some(11));
        assert!(r.iter().all(|x| pair(x, x) == 2));
    }

    #[test]
    fn folding_gives_52_dimensions() {
        let e6 = E6::new();
        let f = fold(&e6).unwrap();
        assert_eq!(f.orbits.len(), 52);
        assert_eq!(f.cartan.len(), 4);
    }
}
