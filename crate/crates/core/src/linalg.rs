//! Dense exact linear algebra over the coefficient fields used here:
//! Q (at a rational point), Q(ζ_N) and Q(s).

use std::fmt::Debug;
use std::sync::Arc;

use num::{BigRational, One, Zero};

use crate::scalar::{Cyclo, CycloField, Scalar, ScalarError, Specialization};

/// A field together with the map that carries exact scalars into it.
pub trait FieldCtx: Sync + Send {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn lift(&self, x: &Scalar) -> Result<Self::E, ScalarError>;
    fn render(&self, a: &Self::E) -> String;
    fn describe(&self) -> String;
}

/// Q(s) itself: no specialization.
#[derive(Clone, Debug, Default)]
pub struct Symbolic;

impl FieldCtx for Symbolic {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.inv().expect("inverse of a nonzero element of Q(s)")
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn lift(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(x.clone())
    }
    fn render(&self, a: &Scalar) -> String {
        a.to_text()
    }
    fn describe(&self) -> String {
        "generic".into()
    }
}

/// Evaluation at `s = s0 ∈ Q`.
#[derive(Clone, Debug)]
pub struct RationalPoint {
    pub s0: BigRational,
}

impl FieldCtx for RationalPoint {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn lift(&self, x: &Scalar) -> Result<BigRational, ScalarError> {
        if x.has_spectral() {
            return Err(ScalarError::SpectralVariable);
        }
        let z = BigRational::zero();
        x.eval(&[self.s0.clone(), z.clone(), z.clone(), z])
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("rational:{}", self.s0)
    }
}

/// `s ↦ ζ_N^a` in Q(ζ_N).
#[derive(Clone, Debug)]
pub struct CyclotomicPoint {
    pub field: Arc<CycloField>,
    pub a: u32,
}

impl CyclotomicPoint {
    pub fn new(n: u32, a: u32) -> Self {
        CyclotomicPoint { field: CycloField::get(n), a }
    }
}

impl FieldCtx for CyclotomicPoint {
    type E = Cyclo;
    fn zero(&self) -> Cyclo {
        Cyclo::zero(&self.field)
    }
    fn one(&self) -> Cyclo {
        Cyclo::one(&self.field)
    }
    fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.add(b)
    }
    fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.sub(b)
    }
    fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.mul(b)
    }
    fn neg(&self, a: &Cyclo) -> Cyclo {
        a.neg()
    }
    fn inv(&self, a: &Cyclo) -> Cyclo {
        a.inv().expect("inverse of a nonzero element of Q(zeta)")
    }
    fn is_zero(&self, a: &Cyclo) -> bool {
        a.is_zero()
    }
    fn lift(&self, x: &Scalar) -> Result<Cyclo, ScalarError> {
        crate::scalar::to_cyclo(x, &self.field, self.a)
    }
    fn render(&self, a: &Cyclo) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        Specialization::Cyclotomic { n: self.field.order(), a: self.a }.to_string()
    }
}

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<K: FieldCtx>(k: &K, rows: usize, cols: usize) -> Mat<K::E> {
    vec![vec![k.zero(); cols]; rows]
}

pub fn identity<K: FieldCtx>(k: &K, n: usize) -> Mat<K::E> {
    let mut m = zeros(k, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = k.one();
    }
    m
}

pub fn mat_mul<K: FieldCtx>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> Mat<K::E> {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    let mut out = zeros(k, n, p);
    for i in 0..n {
        for (l, ail) in a[i].iter().enumerate() {
            if k.is_zero(ail) {
                continue;
            }
            for j in 0..p {
                if !k.is_zero(&b[l][j]) {
                    out[i][j] = k.add(&out[i][j], &k.mul(ail, &b[l][j]));
                }
            }
        }
    }
    out
}

pub fn mat_sub<K: FieldCtx>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> Mat<K::E> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| k.sub(x, y)).collect())
        .collect()
}

pub fn mat_scale<K: FieldCtx>(k: &K, c: &K::E, a: &Mat<K::E>) -> Mat<K::E> {
    a.iter().map(|r| r.iter().map(|x| k.mul(c, x)).collect()).collect()
}

/// `a - λ·I`.
pub fn shift_diag<K: FieldCtx>(k: &K, a: &Mat<K::E>, lambda: &K::E) -> Mat<K::E> {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = k.sub(&row[i], lambda);
    }
    m
}

pub fn is_zero_mat<K: FieldCtx>(k: &K, a: &Mat<K::E>) -> bool {
    a.iter().all(|r| r.iter().all(|x| k.is_zero(x)))
}

pub fn mat_eq<K: FieldCtx>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> bool {
    a.len() == b.len() && is_zero_mat(k, &mat_sub(k, a, b))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<K: FieldCtx>(k: &K, m: &mut Mat<K::E>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for (j, pv) in pivot_row.iter().enumerate() {
                    if !k.is_zero(pv) {
                        m[i][j] = k.sub(&m[i][j], &k.mul(&f, pv));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: FieldCtx>(k: &K, m: &Mat<K::E>) -> usize {
    let mut c = m.clone();
    rref(k, &mut c).len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<K: FieldCtx>(k: &K, m: &Mat<K::E>, cols: usize) -> Vec<Vec<K::E>> {
    let mut r = m.clone();
    let pivots = rref(k, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(&r[row][f]);
            }
            v
        })
        .collect()
}

pub fn inverse<K: FieldCtx>(k: &K, m: &Mat<K::E>) -> Option<Mat<K::E>> {
    let n = m.len();
    let mut aug: Mat<K::E> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    let piv = rref(k, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant<K: FieldCtx>(k: &K, m: &Mat<K::E>) -> K::E {
    let n = m.len();
    let mut a = m.clone();
    let mut det = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else {
            return k.zero();
        };
        if p != c {
            a.swap(p, c);
            det = k.neg(&det);
        }
        det = k.mul(&det, &a[c][c]);
        let inv = k.inv(&a[c][c]);
        for i in c + 1..n {
            if k.is_zero(&a[i][c]) {
                continue;
            }
            let f = k.mul(&a[i][c], &inv);
            for j in c..n {
                let t = k.mul(&f, &a[c][j]);
                a[i][j] = k.sub(&a[i][j], &t);
            }
        }
    }
    det
}

pub fn mat_pow<K: FieldCtx>(k: &K, a: &Mat<K::E>, e: usize) -> Mat<K::E> {
    let mut acc = identity(k, a.len());
    for _ in 0..e {
        acc = mat_mul(k, &acc, a);
    }
    acc
}

pub fn render_mat<K: FieldCtx>(k: &K, a: &Mat<K::E>) -> Vec<Vec<String>> {
    a.iter().map(|r| r.iter().map(|x| k.render(x)).collect()).collect()
}

/// Row echelon basis of a growing subspace of a sparse vector space,
/// kept fully reduced so that a single pass reduces any vector.
pub struct SparseEchelon<E> {
    /// pivot column -> row (sorted sparse entries, pivot entry = 1)
    rows: std::collections::BTreeMap<usize, Vec<(usize, E)>>,
}

impl<E: Clone + PartialEq + Debug> SparseEchelon<E> {
    pub fn new() -> Self {
        SparseEchelon { rows: Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    /// Eliminates pivot columns from a sparse vector (sorted by column).
    pub fn reduce<K: FieldCtx<E = E>>(&self, k: &K, v: &[(usize, E)]) -> Vec<(usize, E)> {
        let mut acc: std::collections::BTreeMap<usize, E> = std::collections::BTreeMap::new();
        for (c, x) in v {
            if k.is_zero(x) {
                continue;
            }
            match self.rows.get(c) {
                None => add_into(k, &mut acc, *c, x.clone()),
                Some(row) => {
                    for (rc, rx) in row {
                        if rc != c {
                            add_into(k, &mut acc, *rc, k.neg(&k.mul(x, rx)));
                        }
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Adds a vector to the span; returns false if it was already inside.
    pub fn insert<K: FieldCtx<E = E>>(&mut self, k: &K, v: &[(usize, E)]) -> bool {
        let r = self.reduce(k, v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = k.inv(&lead);
        let row: Vec<(usize, E)> = r.into_iter().map(|(c, x)| (c, k.mul(&x, &inv))).collect();
        for other in self.rows.values_mut() {
            if let Some(pos) = other.iter().position(|(c, _)| *c == p) {
                let f = other[pos].1.clone();
                let mut acc: std::collections::BTreeMap<usize, E> = other.drain(..).collect();
                for (c, x) in &row {
                    add_into(k, &mut acc, *c, k.neg(&k.mul(&f, x)));
                }
                *other = acc.into_iter().collect();
            }
        }
        self.rows.insert(p, row);
        true
    }
}

impl<E: Clone + PartialEq + Debug> Default for SparseEchelon<E> {
    fn default() -> Self {
        Self::new()
    }
}

fn add_into<K: FieldCtx>(k: &K, acc: &mut std::collections::BTreeMap<usize, K::E>, c: usize, x: K::E) {
    use std::collections::btree_map::Entry;
    match acc.entry(c) {
        Entry::Vacant(e) => {
            if !k.is_zero(&x) {
                e.insert(x);
            }
        }
        Entry::Occupied(mut e) => {
            let s = k.add(e.get(), &x);
            if k.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ctx() -> RationalPoint {
        RationalPoint { s0: q(2) }
    }

    #[test]
    fn rank_and_kernel() {
        let k = ctx();
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&k, &m), 2);
        let ker = kernel(&k, &m, 3);
        assert_eq!(ker.len(), 1);
        let v: Mat<BigRational> = ker[0].iter().map(|x| vec![x.clone()]).collect();
        assert!(is_zero_mat(&k, &mat_mul(&k, &m, &v)));
    }

    #[test]
    fn inverse_and_det() {
        let k = ctx();
        let m = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        let inv = inverse(&k, &m).unwrap();
        assert!(mat_eq(&k, &mat_mul(&k, &m, &inv), &identity(&k, 2)));
        assert_eq!(determinant(&k, &m), q(1));
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&k, &sing).is_none());
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let k = ctx();
        let mut e = SparseEchelon::new();
        assert!(e.insert(&k, &[(0, q(1)), (2, q(1))]));
        assert!(e.insert(&k, &[(1, q(1)), (2, q(-1))]));
        assert!(!e.insert(&k, &[(0, q(2)), (1, q(3)), (2, q(-1))]));
        assert!(e.insert(&k, &[(2, q(5))]));
        assert_eq!(e.rank(), 3);
        assert!(e.reduce(&k, &[(0, q(4)), (2, q(1))]).is_empty());
    }
}
