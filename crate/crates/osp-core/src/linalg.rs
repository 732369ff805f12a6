//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are stored as sorted `(index, integer)` lists kept primitive
//! (content divided out), so elimination stays fraction free. The pivot of a
//! vector is its largest index.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::superpoly::{Monomial, Polynomial};

pub type SparseVec = Vec<(usize, BigInt)>;

/// Signed content of `v`: the gcd of its entries, carrying the sign of the
/// leading entry. Zero for the empty vector.
fn signed_content(v: &SparseVec) -> BigInt {
    let Some((_, lead)) = v.last() else { return BigInt::zero() };
    let mut g = BigInt::zero();
    for (_, c) in v.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if lead.is_negative() {
        -g
    } else {
        g
    }
}

/// Divides out the content and makes the leading coefficient positive.
pub fn make_primitive(v: &mut SparseVec) {
    let g = signed_content(v);
    if !g.is_zero() && !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// `ca·a + cb·b`.
pub fn lin_comb(ca: &BigInt, a: &SparseVec, cb: &BigInt, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, cb * &b[j].1));
            j += 1;
        } else {
            let c = ca * &a[i].1 + cb * &b[j].1;
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Multipliers `(ca, cb)` with `ca·x + cb·y = 0` and `ca > 0`.
fn cancel_factors(x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let g = x.gcd(y);
    let ca = y / &g;
    let cb = -(x / &g);
    if ca.is_negative() {
        (-ca, -cb)
    } else {
        (ca, cb)
    }
}

/// Row echelon form keyed by pivot (largest index of each row).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Reduces until the leading index is not a pivot.
    pub fn head_reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.last() {
            let Some(row) = self.rows.get(lead) else { break };
            let (ca, cb) = cancel_factors(c, &row.last().unwrap().1);
            v = lin_comb(&ca, &v, &cb, row);
            make_primitive(&mut v);
        }
        v
    }

    /// Reduces every pivot position out of `v`.
    pub fn full_reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut pos = v.len();
        while pos > 0 {
            let (idx, c) = v[pos - 1].clone();
            if let Some(row) = self.rows.get(&idx) {
                let (ca, cb) = cancel_factors(&c, &row.last().unwrap().1);
                v = lin_comb(&ca, &v, &cb, row);
                make_primitive(&mut v);
                pos = v.partition_point(|(i, _)| *i < idx);
            } else {
                pos -= 1;
            }
        }
        v
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.head_reduce(v);
        if v.is_empty() {
            return false;
        }
        make_primitive(&mut v);
        self.rows.insert(v.last().unwrap().0, v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.head_reduce(v.clone()).is_empty()
    }

    /// Number of rows whose pivot satisfies `pred`.
    pub fn count_pivots(&self, pred: impl Fn(usize) -> bool) -> usize {
        self.rows.keys().filter(|&&p| pred(p)).count()
    }

    /// Reduced echelon basis, ascending by pivot, each with pivot coefficient one.
    pub fn reduced_basis(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut done = Echelon::new();
        let mut out = Vec::with_capacity(self.rows.len());
        for row in self.rows.values() {
            let pivot = row.last().unwrap().0;
            let v = done.full_reduce(row.clone());
            let lead = v.last().unwrap().1.clone();
            out.push(
                v.iter()
                    .map(|(i, c)| (*i, BigRational::new(c.clone(), lead.clone())))
                    .collect(),
            );
            done.rows.insert(pivot, v);
        }
        out
    }
}

/// Assigns dense indices to keys in order of first appearance.
#[derive(Clone, Debug)]
pub struct Interner<K: Hash + Eq + Clone> {
    map: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Hash + Eq + Clone> Default for Interner<K> {
    fn default() -> Self {
        Self { map: HashMap::new(), keys: Vec::new() }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn id(&mut self, k: &K) -> usize {
        if let Some(&i) = self.map.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.map.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Clears denominators of `(index, rational)` pairs and sorts by index.
pub fn integerize(entries: impl IntoIterator<Item = (usize, BigRational)>) -> SparseVec {
    integerize_scaled(entries).0
}

/// Like [`integerize`], also returning the factor `c` with `result = c·input`.
pub fn integerize_scaled(entries: impl IntoIterator<Item = (usize, BigRational)>) -> (SparseVec, BigRational) {
    let entries: Vec<(usize, BigRational)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let mut l = BigInt::one();
    for (_, c) in &entries {
        l = l.lcm(c.denom());
    }
    let mut v: SparseVec = entries
        .into_iter()
        .map(|(i, c)| (i, c.numer() * (&l / c.denom())))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    let mut merged: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match merged.last_mut() {
            Some((j, d)) if *j == i => *d += c,
            _ => merged.push((i, c)),
        }
    }
    merged.retain(|(_, c)| !c.is_zero());
    let g = signed_content(&merged);
    if g.is_zero() {
        return (merged, BigRational::one());
    }
    for (_, c) in merged.iter_mut() {
        *c = &*c / &g;
    }
    (merged, BigRational::new(l, g))
}

/// Linear normal form modulo a subspace, built from its reduced echelon basis.
/// The result has no entry at any pivot, and the map is linear.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    rows: HashMap<usize, Vec<(usize, BigRational)>>,
}

impl Reducer {
    pub fn new(e: &Echelon) -> Self {
        let rows = e
            .reduced_basis()
            .into_iter()
            .map(|r| (r.last().unwrap().0, r))
            .collect();
        Self { rows }
    }

    pub fn reduce(&self, v: &[(usize, BigRational)]) -> Vec<(usize, BigRational)> {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, c) in v {
            *acc.entry(*i).or_insert_with(BigRational::zero) += c;
        }
        for (i, c) in v {
            if let Some(row) = self.rows.get(i) {
                for (j, d) in row {
                    *acc.entry(*j).or_insert_with(BigRational::zero) -= c * d;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Indexes a polynomial through a monomial interner.
pub fn poly_to_sparse(p: &Polynomial, index: &mut Interner<Monomial>) -> SparseVec {
    integerize(p.terms.iter().map(|(m, c)| (index.id(m), c.clone())))
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`.
/// Returns kernel vectors as combinations of the basis indices.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    // Each row carries its image and the combination of inputs producing it.
    let mut rows: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut img = img.clone();
        let mut combo: SparseVec = vec![(j, BigInt::one())];
        while let Some((lead, c)) = img.last() {
            let Some((rimg, rcombo)) = rows.get(lead) else { break };
            let (ca, cb) = cancel_factors(c, &rimg.last().unwrap().1);
            img = lin_comb(&ca, &img, &cb, rimg);
            combo = lin_comb(&ca, &combo, &cb, rcombo);
            // Joint content removal keeps coefficients small.
            let mut g = BigInt::zero();
            for (_, c) in img.iter().chain(combo.iter()) {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() && !g.is_zero() {
                for (_, c) in img.iter_mut().chain(combo.iter_mut()) {
                    *c = &*c / &g;
                }
            }
        }
        if img.is_empty() {
            make_primitive(&mut combo);
            out.push(combo);
        } else {
            rows.insert(img.last().unwrap().0, (img, combo));
        }
    }
    out
}

/// Rank of a list of sparse vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.dim()
}

/// Rank of a list of polynomials.
pub fn poly_rank(polys: &[Polynomial]) -> usize {
    let mut idx = Interner::new();
    let vs: Vec<SparseVec> = polys.iter().map(|p| poly_to_sparse(p, &mut idx)).collect();
    rank(&vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, BigInt::from(c))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let a = sv(&[(0, 1), (1, 2)]);
        let b = sv(&[(0, 2), (1, 4)]);
        let c = sv(&[(1, 1)]);
        assert_eq!(rank(&[a.clone(), b]), 1);
        assert_eq!(rank(&[a, c]), 2);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        // Columns: e0 -> 1, e1 -> -1, e2 -> 0.
        let imgs = vec![sv(&[(0, 1)]), sv(&[(0, -1)]), vec![]];
        let k = kernel(&imgs);
        assert_eq!(k.len(), 2);
        let mut e = Echelon::new();
        for v in &k {
            e.insert(v.clone());
        }
        assert!(e.contains(&sv(&[(0, 1), (1, 1)])));
        assert!(e.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn reduced_basis_is_reduced() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (1, 1)]));
        e.insert(sv(&[(0, 1), (1, 3), (2, 2)]));
        let rb = e.reduced_basis();
        assert_eq!(rb.len(), 2);
        // Second row has no entry in column 1.
        assert!(rb[1].iter().all(|(i, _)| *i != 1));
        assert_eq!(rb[1].last().unwrap().1, BigRational::one());
    }

    #[test]
    fn integerize_clears_denominators() {
        let v = integerize(vec![(3, BigRational::new(1.into(), 2.into())), (1, BigRational::new(1.into(), 3.into()))]);
        assert_eq!(v, sv(&[(1, 2), (3, 3)]));
        let (v, c) = integerize_scaled(vec![(0, BigRational::from_integer((-4).into())), (2, BigRational::from_integer((-6).into()))]);
        assert_eq!(v, sv(&[(0, 2), (2, 3)]));
        assert_eq!(c, BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn reducer_is_linear_and_kills_pivots() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (2, 2)]));
        let r = Reducer::new(&e);
        let q = |n: i64| BigRational::from_integer(n.into());
        let a = r.reduce(&[(2, q(1))]);
        assert_eq!(a, vec![(0, BigRational::new((-1).into(), 2.into()))]);
        let b = r.reduce(&[(2, q(2)), (1, q(1))]);
        assert_eq!(b, vec![(0, q(-1)), (1, q(1))]);
    }
}
