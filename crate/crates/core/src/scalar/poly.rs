//! Polynomial building blocks: multivariate Laurent polynomials over Q and
//! dense univariate polynomials over Q.

use std::collections::BTreeMap;

use num::{BigRational, One, Signed, Zero};

/// Exponent vector over the variables `s, u, v, w`.
pub type Mono = [i32; 4];

pub const ONE_MONO: Mono = [0; 4];

/// Sparse Laurent polynomial in `s, u, v, w` with rational coefficients.
/// No zero coefficients are ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub(crate) terms: BTreeMap<Mono, BigRational>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, ONE_MONO)
    }

    pub fn monomial(c: BigRational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (mono_mul(m, by), c.clone())).collect(),
        }
    }

    /// True when no term involves `u`, `v` or `w`.
    pub fn is_s_only(&self) -> bool {
        self.terms.keys().all(|m| m[1] == 0 && m[2] == 0 && m[3] == 0)
    }

    /// Groups terms by their spectral part `(u, v, w)`; each group is a
    /// Laurent polynomial in `s` returned as (lowest s-exponent, dense poly).
    pub(crate) fn s_groups(&self) -> BTreeMap<[i32; 3], (i32, UPoly)> {
        let mut raw: BTreeMap<[i32; 3], Vec<(i32, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            raw.entry([m[1], m[2], m[3]]).or_default().push((m[0], c.clone()));
        }
        raw.into_iter()
            .map(|(k, v)| {
                let lo = v.iter().map(|(e, _)| *e).min().unwrap_or(0);
                let hi = v.iter().map(|(e, _)| *e).max().unwrap_or(0);
                let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
                for (e, c) in v {
                    coeffs[(e - lo) as usize] = c;
                }
                (k, (lo, UPoly::from_coeffs(coeffs)))
            })
            .collect()
    }

    pub(crate) fn from_s_groups(groups: BTreeMap<[i32; 3], (i32, UPoly)>) -> Poly {
        let mut r = Poly::zero();
        for (k, (lo, p)) in groups {
            for (i, c) in p.coeffs.iter().enumerate() {
                r.add_term([lo + i as i32, k[0], k[1], k[2]], c.clone());
            }
        }
        r
    }

    /// Minimum and maximum exponent of variable `var` (0 = s).
    pub fn exponent_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }
}

/// Dense univariate polynomial over Q, index = exponent, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    pub(crate) coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn monomial(c: BigRational, e: usize) -> Self {
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = c;
        UPoly::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        let v = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        UPoly::from_coeffs(v)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        let v = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
            .collect();
        UPoly::from_coeffs(v)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns (g, x) with g = gcd(self, m) monic and x*self ≡ g (mod m).
    pub fn ext_gcd_mod(&self, m: &UPoly) -> (UPoly, UPoly) {
        let (mut r0, mut r1) = (m.clone(), self.divrem(m).1);
        let (mut x0, mut x1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let x2 = x0.sub(&q.mul(&x1));
            r0 = r1;
            r1 = r;
            x0 = x1;
            x1 = x2;
        }
        match r0.lead().cloned() {
            None => (UPoly::zero(), UPoly::zero()),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), x0.scale(&inv))
            }
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn content_sign_positive(&self) -> bool {
        self.lead().map_or(true, |l| l.is_positive())
    }
}
