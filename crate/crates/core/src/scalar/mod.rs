//! Exact coefficients: rational functions in the base variable `s = q^{1/4}`
//! that are Laurent polynomials in the spectral variables `u, v, w`.

mod cyclo;
mod parse;
mod poly;
mod spec;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

pub use cyclo::{cyclotomic_polynomial, Cyclo, CycloField};
pub use poly::{Mono, Poly, UPoly};
pub use spec::{Specialization, Specialized};
pub(crate) use spec::to_cyclo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not invertible in the ring of Laurent polynomials in the spectral variables")]
    NotInvertibleInRing,
    #[error("denominator vanishes at the specialization")]
    PoleAtSpecialization,
    #[error("scalar involves spectral variables; this specialization only handles s")]
    SpectralVariable,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Variables of the coefficient ring. `S` is the base variable; the other
/// three are spectral parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    U,
    V,
    W,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::S => 0,
            Var::U => 1,
            Var::V => 2,
            Var::W => 3,
        }
    }

    pub fn name(self) -> &'static str {
        ["s", "u", "v", "w"][self.index()]
    }

    pub const ALL: [Var; 4] = [Var::S, Var::U, Var::V, Var::W];
}

/// Canonical exact scalar `num / den`.
///
/// `den` is a monic polynomial in `s` with nonzero constant term; every
/// power of `s` lives in the numerator. Numerator and denominator share no
/// factor in `s`. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: UPoly,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar { num: Poly::constant(c), den: UPoly::one() }
    }

    pub fn monomial(c: BigRational, m: Mono) -> Self {
        Scalar { num: Poly::monomial(c, m), den: UPoly::one() }
    }

    /// `s^k`, i.e. `q^{k/4}`.
    pub fn s_pow(k: i32) -> Self {
        Self::monomial(rat(1), [k, 0, 0, 0])
    }

    /// `q^{k/2}` = `s^{2k}`.
    pub fn q_half_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    /// `q^k` = `s^{4k}`.
    pub fn q_pow(k: i32) -> Self {
        Self::s_pow(4 * k)
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 4];
        m[v.index()] = 1;
        Self::monomial(rat(1), m)
    }

    pub fn var_pow(v: Var, k: i32) -> Self {
        let mut m = [0; 4];
        m[v.index()] = k;
        Self::monomial(rat(1), m)
    }

    /// Loop weight `β = -q - q^{-1} = -s^4 - s^{-4}`.
    pub fn beta() -> Self {
        -(Self::s_pow(4) + Self::s_pow(-4))
    }

    /// Quantum integer `[k] = (q^k - q^{-k}) / (q - q^{-1})` written as a
    /// Laurent polynomial in `q`.
    pub fn quantum_int(k: u32) -> Self {
        let mut acc = Scalar::zero();
        for j in 0..k as i32 {
            acc = acc + Self::q_pow(k as i32 - 1 - 2 * j);
        }
        acc
    }

    /// Builds `num / den` and brings it into canonical form. `den` must be
    /// nonzero and involve `s` only.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if !den.is_s_only() {
            return Err(ScalarError::NotInvertibleInRing);
        }
        let groups = den.s_groups();
        let (lo, d) = groups.into_iter().next().map(|(_, g)| g).unwrap();
        let num = num.shift(&[-lo, 0, 0, 0]);
        Ok(Self::canon(num, d))
    }

    fn canon(num: Poly, den: UPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let lead = den.lead().cloned().expect("nonzero denominator");
        let (num, den) = if lead.is_one() {
            (num, den)
        } else {
            let inv = lead.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        if den.degree() == Some(0) {
            return Scalar { num, den };
        }
        let groups = num.s_groups();
        let mut g = den.clone();
        for (_, (_, p)) in groups.iter() {
            g = g.gcd(p);
            if g.degree() == Some(0) {
                break;
            }
        }
        if g.degree() == Some(0) {
            return Scalar { num, den };
        }
        let den = den.divrem(&g).0;
        let groups = groups
            .into_iter()
            .map(|(k, (lo, p))| (k, (lo, p.divrem(&g).0)))
            .collect();
        Scalar { num: Poly::from_s_groups(groups), den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self.num.terms().all(|(m, c)| *m == [0; 4] && c.is_one())
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn has_spectral(&self) -> bool {
        !self.num.is_s_only()
    }

    /// The rational constant if the scalar is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if !self.den.is_one() || self.num.len() != 1 {
            return None;
        }
        let (m, c) = self.num.terms().next().unwrap();
        if *m == [0; 4] {
            Some(c.clone())
        } else {
            None
        }
    }

    /// If the scalar is `c * s^a * u^b * v^c * w^d`, returns the pieces.
    pub fn as_monomial(&self) -> Option<(BigRational, Mono)> {
        if !self.den.is_one() || self.num.len() != 1 {
            return None;
        }
        self.num.terms().next().map(|(m, c)| (c.clone(), *m))
    }

    fn den_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in self.den.coeffs().iter().enumerate() {
            p.add_term([i as i32, 0, 0, 0], c.clone());
        }
        p
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let spectral: Vec<[i32; 3]> = self.num.s_groups().keys().cloned().collect();
        if spectral.len() != 1 {
            return Err(ScalarError::NotInvertibleInRing);
        }
        let sp = spectral[0];
        let shift = [0, -sp[0], -sp[1], -sp[2]];
        let s_part = self.num.shift(&shift);
        let num = self.den_poly().shift(&[0, -sp[0], -sp[1], -sp[2]]);
        Scalar::from_fraction(num, s_part)
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Evaluates at rational values of `(s, u, v, w)`.
    pub fn eval(&self, point: &[BigRational; 4]) -> Result<BigRational, ScalarError> {
        let den = self.den.eval(&point[0]);
        if den.is_zero() {
            return Err(ScalarError::PoleAtSpecialization);
        }
        let mut acc = BigRational::zero();
        for (m, c) in self.num.terms() {
            let mut t = c.clone();
            for (i, e) in m.iter().enumerate() {
                if *e != 0 {
                    if point[i].is_zero() {
                        return Err(ScalarError::PoleAtSpecialization);
                    }
                    t *= num::pow::Pow::pow(&point[i], *e);
                }
            }
            acc += t;
        }
        Ok(acc / den)
    }

    /// Replaces a variable by another scalar (which must be invertible if
    /// negative powers occur).
    pub fn substitute(&self, var: Var, value: &Scalar) -> Result<Scalar, ScalarError> {
        let idx = var.index();
        let inv = if self.num.terms().any(|(m, _)| m[idx] < 0) {
            Some(value.inv()?)
        } else {
            None
        };
        let mut acc = Scalar::zero();
        for (m, c) in self.num.terms() {
            let mut rest = *m;
            let e = rest[idx];
            rest[idx] = 0;
            let mut t = Scalar::monomial(c.clone(), rest);
            let base = if e < 0 { inv.as_ref().unwrap() } else { value };
            t = &t * &base.pow(e.abs())?;
            acc = acc + t;
        }
        if self.den.is_one() {
            return Ok(acc);
        }
        let den = Scalar { num: self.den_poly(), den: UPoly::one() };
        let den = if var == Var::S { den.substitute(Var::S, value)? } else { den };
        acc.try_div(&den)
    }

    /// Canonical text form, a sum of terms `c * s^a * u^b`, optionally over
    /// a parenthesised denominator.
    pub fn to_text(&self) -> String {
        let num = poly_text(&self.num);
        if self.den.is_one() {
            return num;
        }
        let mut dp = Poly::zero();
        for (i, c) in self.den.coeffs().iter().enumerate() {
            dp.add_term([i as i32, 0, 0, 0], c.clone());
        }
        format!("({}) / ({})", num, poly_text(&dp))
    }

    pub fn parse(text: &str) -> Result<Scalar, ScalarError> {
        parse::parse_scalar(text)
    }

    pub fn specialize(&self, sp: &Specialization) -> Result<Specialized, ScalarError> {
        sp.apply(self)
    }

    /// Exponent span of a variable over numerator and denominator.
    pub fn exponent_range(&self, v: Var) -> Option<(i32, i32)> {
        self.num.exponent_range(v.index())
    }
}

fn rat_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn poly_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // highest powers of s first reads more naturally
    let terms: Vec<_> = p.terms().collect();
    for (idx, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        for v in Var::ALL {
            let e = m[v.index()];
            if e != 0 {
                factors.push(format!("{}^{}", v.name(), e));
            }
        }
        if factors.is_empty() {
            out.push_str(&rat_text(&a));
        } else if a.is_one() {
            out.push_str(&factors.join(" * "));
        } else {
            out.push_str(&rat_text(&a));
            out.push_str(" * ");
            out.push_str(&factors.join(" * "));
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.to_text())
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return Scalar { num, den: UPoly::one() };
            }
            return Scalar::canon(num, self.den.clone());
        }
        let a = self.num.mul(&o.den_poly());
        let b = o.num.mul(&self.den_poly());
        Scalar::canon(a.add(&b), self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let num = self.num.mul(&o.num);
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num, den: UPoly::one() };
        }
        Scalar::canon(num, self.den.mul(&o.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_is_minus_q_minus_inverse() {
        let q = Scalar::q_pow(1);
        let expected = -(&q + &q.inv().unwrap());
        assert_eq!(Scalar::beta(), expected);
    }

    #[test]
    fn additive_identity() {
        let a = Scalar::parse("3 * s^2 - u^-1").unwrap();
        assert_eq!(&a + &Scalar::zero(), a);
    }

    #[test]
    fn fraction_reduces() {
        // (s^4 - 1) / (s^2 - 1) = s^2 + 1
        let a = Scalar::parse("(s^4 - 1) / (s^2 - 1)").unwrap();
        assert_eq!(a, Scalar::parse("s^2 + 1").unwrap());
        assert!(a.is_laurent());
    }

    #[test]
    fn denominator_normalized() {
        let a = Scalar::parse("1 / (2*s^3 + 4*s^5)").unwrap();
        assert_eq!(a.denominator().lead(), Some(&rat(1)));
        assert_eq!(a.to_text(), "(1/4 * s^-3) / (s^2 + 1/2)");
    }

    #[test]
    fn inverse_of_spectral_binomial_fails() {
        let a = Scalar::parse("u + 1").unwrap();
        assert_eq!(a.inv(), Err(ScalarError::NotInvertibleInRing));
        let b = Scalar::parse("(s^2 + 1) * u^3").unwrap();
        let bi = b.inv().unwrap();
        assert!((&b * &bi).is_one());
    }

    #[test]
    fn zero_division() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn quantum_integers() {
        let q = Scalar::q_pow(1);
        let two = Scalar::quantum_int(2);
        assert_eq!(two, &q + &q.inv().unwrap());
        assert_eq!(Scalar::quantum_int(1), Scalar::one());
        assert_eq!(Scalar::quantum_int(0), Scalar::zero());
    }

    #[test]
    fn substitution_by_monomial() {
        let x = Scalar::parse("u^-1 * s^2 - u * s^-2").unwrap();
        let vu = Scalar::parse("v * u^-1").unwrap();
        let y = x.substitute(Var::U, &vu).unwrap();
        assert_eq!(y, Scalar::parse("u * v^-1 * s^2 - v * u^-1 * s^-2").unwrap());
    }

    #[test]
    fn eval_point() {
        let x = Scalar::parse("(s^2 + u) / (s - 1)").unwrap();
        let p = [rat(2), rat(3), rat(0), rat(0)];
        assert_eq!(x.eval(&p).unwrap(), rat(7));
        let p1 = [rat(1), rat(3), rat(0), rat(0)];
        assert_eq!(x.eval(&p1), Err(ScalarError::PoleAtSpecialization));
    }
}
