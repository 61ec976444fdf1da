//! Recursive-descent parser for scalar expressions.
//!
//! Grammar: sums and differences of products and quotients of powers of
//! atoms. Atoms are integers, the variables `s u v w`, the shorthands `q`
//! (= s^4) and `beta`, or parenthesised expressions. Exponents are signed
//! integers.

use num::{BigInt, BigRational};

use super::{Scalar, ScalarError, Var};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(msg: impl Into<String>) -> ScalarError {
    ScalarError::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.try_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected integer at offset {}", start)));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err("integer overflow"))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(format!("expected `)` at offset {}", self.pos)));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().map_err(|_| err("bad integer"))?;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match std::str::from_utf8(&self.src[start..self.pos]).unwrap() {
                    "s" => Ok(Scalar::var(Var::S)),
                    "u" => Ok(Scalar::var(Var::U)),
                    "v" => Ok(Scalar::var(Var::V)),
                    "w" => Ok(Scalar::var(Var::W)),
                    "q" => Ok(Scalar::q_pow(1)),
                    "beta" => Ok(Scalar::beta()),
                    other => Err(err(format!("unknown identifier `{}`", other))),
                }
            }
            Some(c) => Err(err(format!("unexpected `{}` at offset {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_examples() {
        for t in [
            "0",
            "1",
            "-s^4 - s^-4",
            "3/2 * s^2 * u^-1 + v",
            "(s^2 - 1) / (s^6 + 2*s^2 + 1/3)",
            "beta * u^2 - q",
        ] {
            let a = parse_scalar(t).unwrap();
            let b = parse_scalar(&a.to_text()).unwrap();
            assert_eq!(a, b, "{}", t);
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_scalar("2 + 3 * 4").unwrap(), Scalar::from_int(14));
        assert_eq!(parse_scalar("-2^2").unwrap(), Scalar::from_int(-4));
        assert_eq!(parse_scalar("s^-1 * s").unwrap(), Scalar::one());
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1 / 0").is_err());
        assert!(parse_scalar("1 / (u + 1)").is_err());
        assert!(parse_scalar("(s").is_err());
    }
}
