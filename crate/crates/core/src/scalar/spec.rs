//! Specializations of the base variable `s`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::complex::Complex64;
use num::{BigRational, ToPrimitive, Zero};

use super::cyclo::{Cyclo, CycloField};
use super::{Scalar, ScalarError};

/// Where `s` is sent. Spectral variables are only kept by `Generic`.
#[derive(Clone, Debug, PartialEq)]
pub enum Specialization {
    Generic,
    /// `s ↦ ζ_N^a`.
    Cyclotomic { n: u32, a: u32 },
    Rational(BigRational),
    Complex(Complex64),
}

/// Image of a scalar under a specialization.
#[derive(Clone, Debug, PartialEq)]
pub enum Specialized {
    Symbolic(Scalar),
    Cyclotomic(Cyclo),
    Rational(BigRational),
    Complex(Complex64),
}

impl fmt::Display for Specialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialized::Symbolic(x) => write!(f, "{}", x),
            Specialized::Cyclotomic(x) => write!(f, "{}", x),
            Specialized::Rational(x) => write!(f, "{}", x),
            Specialized::Complex(x) => write!(f, "{}", x),
        }
    }
}

impl Specialization {
    /// `q` a primitive root of unity labelled by ℓ, the smallest positive
    /// integer with `q^{2ℓ} = 1`. Odd ℓ gives `q = e^{2πi/ℓ}` (N = 4ℓ),
    /// even ℓ gives `q = e^{iπ/ℓ}` (N = 8ℓ); in both cases `s = ζ_N`.
    pub fn root_of_unity(ell: u32) -> Specialization {
        assert!(ell >= 1);
        if ell % 2 == 1 {
            Specialization::Cyclotomic { n: 4 * ell, a: 1 }
        } else {
            Specialization::Cyclotomic { n: 8 * ell, a: 1 }
        }
    }

    pub fn apply(&self, x: &Scalar) -> Result<Specialized, ScalarError> {
        match self {
            Specialization::Generic => Ok(Specialized::Symbolic(x.clone())),
            Specialization::Cyclotomic { n, a } => {
                let f = CycloField::get(*n);
                Ok(Specialized::Cyclotomic(to_cyclo(x, &f, *a)?))
            }
            Specialization::Rational(s0) => {
                if x.has_spectral() {
                    return Err(ScalarError::SpectralVariable);
                }
                let z = BigRational::zero();
                x.eval(&[s0.clone(), z.clone(), z.clone(), z]).map(Specialized::Rational)
            }
            Specialization::Complex(s0) => {
                if x.has_spectral() {
                    return Err(ScalarError::SpectralVariable);
                }
                let mut den = Complex64::new(0.0, 0.0);
                for (i, c) in x.denominator().coeffs().iter().enumerate() {
                    den += s0.powi(i as i32) * c.to_f64().unwrap_or(f64::NAN);
                }
                if den.norm() == 0.0 {
                    return Err(ScalarError::PoleAtSpecialization);
                }
                let mut num = Complex64::new(0.0, 0.0);
                for (m, c) in x.numerator().terms() {
                    num += s0.powi(m[0]) * c.to_f64().unwrap_or(f64::NAN);
                }
                Ok(Specialized::Complex(num / den))
            }
        }
    }
}

/// Sends `s ↦ ζ_N^a` exactly.
pub(crate) fn to_cyclo(x: &Scalar, f: &Arc<CycloField>, a: u32) -> Result<Cyclo, ScalarError> {
    if x.has_spectral() {
        return Err(ScalarError::SpectralVariable);
    }
    let mut num = Cyclo::zero(f);
    for (m, c) in x.numerator().terms() {
        num = num.add(&Cyclo::zeta_pow(f, m[0] as i64 * a as i64).scale(c));
    }
    if x.denominator().is_one() {
        return Ok(num);
    }
    let mut den = Cyclo::zero(f);
    for (i, c) in x.denominator().coeffs().iter().enumerate() {
        den = den.add(&Cyclo::zeta_pow(f, i as i64 * a as i64).scale(c));
    }
    if den.is_zero() {
        return Err(ScalarError::PoleAtSpecialization);
    }
    Ok(num.mul(&den.inv()?))
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Generic => f.write_str("generic"),
            Specialization::Cyclotomic { n, a } => write!(f, "cyclo:{}:{}", n, a),
            Specialization::Rational(r) => write!(f, "rational:{}", r),
            Specialization::Complex(c) => write!(f, "complex:{}:{}", c.re, c.im),
        }
    }
}

impl FromStr for Specialization {
    type Err = ScalarError;

    /// Accepts `generic`, `root:ℓ`, `cyclo:N:a`, `rational:p/q`,
    /// `complex:re:im`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Parse(format!("unknown specialization `{}`", text));
        let parts: Vec<&str> = text.trim().split(':').collect();
        match parts.as_slice() {
            ["generic"] => Ok(Specialization::Generic),
            ["root", l] => {
                let ell: u32 = l.parse().map_err(|_| bad())?;
                if ell == 0 {
                    return Err(bad());
                }
                Ok(Specialization::root_of_unity(ell))
            }
            ["cyclo", n, a] => {
                let n: u32 = n.parse().map_err(|_| bad())?;
                let a: u32 = a.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(Specialization::Cyclotomic { n, a })
            }
            ["rational", r] => {
                let v: BigRational = r.parse().map_err(|_| bad())?;
                if v.is_zero() {
                    return Err(bad());
                }
                Ok(Specialization::Rational(v))
            }
            ["complex", re, im] => {
                let re: f64 = re.parse().map_err(|_| bad())?;
                let im: f64 = im.parse().map_err(|_| bad())?;
                Ok(Specialization::Complex(Complex64::new(re, im)))
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    #[test]
    fn beta_at_third_root() {
        let sp = Specialization::root_of_unity(3);
        assert_eq!(sp, Specialization::Cyclotomic { n: 12, a: 1 });
        let b = Scalar::beta().specialize(&sp).unwrap();
        let f = CycloField::get(12);
        assert_eq!(b, Specialized::Cyclotomic(Cyclo::one(&f)));
    }

    #[test]
    fn beta_at_i_vanishes() {
        let sp = Specialization::root_of_unity(2);
        let b = Scalar::beta().specialize(&sp).unwrap();
        match b {
            Specialized::Cyclotomic(c) => assert!(c.is_zero()),
            _ => panic!(),
        }
    }

    #[test]
    fn generic_is_identity() {
        let s = Scalar::s_pow(1);
        assert_eq!(s.specialize(&Specialization::Generic).unwrap(), Specialized::Symbolic(s));
    }

    #[test]
    fn pole_detected() {
        let x = Scalar::parse("1 / (s^4 - 1)").unwrap();
        let sp = Specialization::Rational(BigRational::from_integer(BigInt::from(1)));
        assert_eq!(x.specialize(&sp), Err(ScalarError::PoleAtSpecialization));
        let sp = Specialization::root_of_unity(2);
        assert!(x.specialize(&Specialization::Cyclotomic { n: 4, a: 1 }).is_err());
        assert!(x.specialize(&sp).is_ok());
    }

    #[test]
    fn parse_specs() {
        assert_eq!("generic".parse::<Specialization>().unwrap(), Specialization::Generic);
        assert_eq!(
            "root:2".parse::<Specialization>().unwrap(),
            Specialization::Cyclotomic { n: 16, a: 1 }
        );
        assert!("rational:3/2".parse::<Specialization>().is_ok());
        assert!("root:x".parse::<Specialization>().is_err());
    }
}
