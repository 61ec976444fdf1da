//! Exact arithmetic in the cyclotomic field Q(ζ_N), elements stored as
//! polynomials in ζ_N of degree below φ(N).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};
use num::complex::Complex64;
use num::ToPrimitive;

use super::poly::UPoly;
use super::ScalarError;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The N-th cyclotomic polynomial Φ_N.
pub fn cyclotomic_polynomial(n: u32) -> UPoly {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<u32, UPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = UPoly::monomial(rat(1), n as usize).sub(&UPoly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.divrem(&cyclotomic_polynomial(d)).0;
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

#[derive(Debug)]
pub struct CycloField {
    n: u32,
    phi: UPoly,
}

impl CycloField {
    pub fn get(n: u32) -> Arc<CycloField> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut g = fields.lock().unwrap();
        g.entry(n)
            .or_insert_with(|| Arc::new(CycloField { n, phi: cyclotomic_polynomial(n) }))
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// φ(N), the degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap()
    }

    pub fn modulus(&self) -> &UPoly {
        &self.phi
    }
}

/// Element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclo {
    field: Arc<CycloField>,
    c: UPoly,
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        self.field.n == o.field.n && self.c == o.c
    }
}

impl Eq for Cyclo {}

impl Cyclo {
    fn reduce(field: &Arc<CycloField>, p: UPoly) -> Cyclo {
        let c = if p.degree().map_or(false, |d| d >= field.degree()) {
            p.divrem(&field.phi).1
        } else {
            p
        };
        Cyclo { field: field.clone(), c }
    }

    pub fn zero(field: &Arc<CycloField>) -> Cyclo {
        Cyclo { field: field.clone(), c: UPoly::zero() }
    }

    pub fn one(field: &Arc<CycloField>) -> Cyclo {
        Cyclo { field: field.clone(), c: UPoly::one() }
    }

    pub fn from_rational(field: &Arc<CycloField>, r: BigRational) -> Cyclo {
        Cyclo { field: field.clone(), c: UPoly::from_coeffs(vec![r]) }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Cyclo {
        let e = k.rem_euclid(field.n as i64) as usize;
        Self::reduce(field, UPoly::monomial(rat(1), e))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.c.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        Cyclo { field: self.field.clone(), c: self.c.add(&o.c) }
    }

    pub fn sub(&self, o: &Cyclo) -> Cyclo {
        Cyclo { field: self.field.clone(), c: self.c.sub(&o.c) }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { field: self.field.clone(), c: self.c.scale(&rat(-1)) }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        Self::reduce(&self.field, self.c.mul(&o.c))
    }

    pub fn scale(&self, r: &BigRational) -> Cyclo {
        Cyclo { field: self.field.clone(), c: self.c.scale(r) }
    }

    pub fn inv(&self) -> Result<Cyclo, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (g, x) = self.c.ext_gcd_mod(&self.field.phi);
        debug_assert!(g.is_one(), "cyclotomic polynomial is irreducible");
        Ok(Self::reduce(&self.field, x))
    }

    pub fn pow(&self, k: i64) -> Result<Cyclo, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclo::one(&self.field);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Numerical value with ζ_N = e^{2πi/N}.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.c.coeffs().iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(cf, angle);
        }
        acc
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.c.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            if k == 0 {
                f.write_str(&coeff)?;
            } else if a.is_one() {
                write!(f, "zeta{}^{}", self.field.n, k)?;
            } else {
                write!(f, "{} * zeta{}^{}", coeff, self.field.n, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &UPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(16)), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn zeta_has_order_n() {
        let f = CycloField::get(12);
        let z = Cyclo::zeta_pow(&f, 1);
        assert_eq!(z.pow(12).unwrap(), Cyclo::one(&f));
        assert_ne!(z.pow(6).unwrap(), Cyclo::one(&f));
        assert_ne!(z.pow(4).unwrap(), Cyclo::one(&f));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = CycloField::get(16);
        let a = Cyclo::zeta_pow(&f, 3).add(&Cyclo::from_rational(&f, rat(2)));
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Cyclo::one(&f));
    }

    #[test]
    fn complex_value_matches() {
        let f = CycloField::get(12);
        let z = Cyclo::zeta_pow(&f, 5).to_complex();
        let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 5.0 / 12.0);
        assert!((z - expect).norm() < 1e-12);
    }
}
