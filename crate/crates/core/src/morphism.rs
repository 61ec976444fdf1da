//! Formal Scalar-linear combinations of diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Node};
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator index {i} out of range for {n} strands")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// The four solutions `α ∈ {±q^{±1/2}}` of the crossing equations;
/// the crossing is `α·1 + α⁻¹·e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossingChoice {
    #[default]
    PlusHalf,
    MinusHalf,
    PlusInverseHalf,
    MinusInverseHalf,
}

impl CrossingChoice {
    pub fn alpha(self) -> Scalar {
        match self {
            CrossingChoice::PlusHalf => Scalar::s_pow(2),
            CrossingChoice::MinusHalf => -Scalar::s_pow(2),
            CrossingChoice::PlusInverseHalf => Scalar::s_pow(-2),
            CrossingChoice::MinusInverseHalf => -Scalar::s_pow(-2),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    dst: usize,
    src: usize,
    dilute: bool,
    terms: BTreeMap<Diagram, Scalar>,
}

fn beta_pow(k: usize) -> Scalar {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<Vec<Scalar>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Scalar::one()]));
    let mut g = cache.lock().unwrap();
    while g.len() <= k {
        let next = g.last().unwrap() * &Scalar::beta();
        g.push(next);
    }
    g[k].clone()
}

impl Morphism {
    pub fn zero(dst: usize, src: usize, dilute: bool) -> Morphism {
        Morphism { dst, src, dilute, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: Diagram) -> Morphism {
        Self::from_term(Scalar::one(), d)
    }

    pub fn from_term(c: Scalar, d: Diagram) -> Morphism {
        let mut m = Self::zero(d.dst(), d.src(), d.is_dilute());
        if !c.is_zero() {
            m.terms.insert(d, c);
        }
        m
    }

    /// Builds a morphism from terms; repeated diagrams are summed.
    pub fn from_terms(
        dst: usize,
        src: usize,
        dilute: bool,
        terms: impl IntoIterator<Item = (Scalar, Diagram)>,
    ) -> Result<Morphism, MorphismError> {
        let mut m = Self::zero(dst, src, dilute);
        for (c, d) in terms {
            if (d.dst(), d.src(), d.is_dilute()) != (dst, src, dilute) {
                return Err(MorphismError::ShapeMismatch(format!("{} in {}<-{}", d, dst, src)));
            }
            m.add_term(c, d);
        }
        Ok(m)
    }

    fn add_term(&mut self, c: Scalar, d: Diagram) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn is_dilute(&self) -> bool {
        self.dilute
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Unit of End(n). In the dilute family this is the sum over the 2^n
    /// ways of making each strand a line or a pair of vacancies.
    pub fn identity(n: usize, dilute: bool) -> Morphism {
        if !dilute {
            return Self::from_diagram(Diagram::identity(n, false));
        }
        let mut m = Self::from_diagram(Diagram::vacant(0, 0));
        let one = Self::from_diagram(Diagram::identity(1, true))
            + Self::from_diagram(Diagram::vacant(1, 1));
        for _ in 0..n {
            m = m.tensor(&one).unwrap();
        }
        m
    }

    fn check_index(i: usize, n: usize) -> Result<(), MorphismError> {
        if i == 0 || i >= n {
            Err(MorphismError::IndexOutOfRange { i, n })
        } else {
            Ok(())
        }
    }

    pub fn e(i: usize, n: usize) -> Result<Morphism, MorphismError> {
        Self::check_index(i, n)?;
        Ok(Self::from_diagram(Diagram::e(i, n)))
    }

    /// `t_i(n) = q^{1/2} 1_n + q^{-1/2} e_i(n)`.
    pub fn t(i: usize, n: usize) -> Result<Morphism, MorphismError> {
        Self::t_with(i, n, CrossingChoice::PlusHalf)
    }

    /// `t_i(n)^{-1} = q^{-1/2} 1_n + q^{1/2} e_i(n)`.
    pub fn t_inv(i: usize, n: usize) -> Result<Morphism, MorphismError> {
        Self::check_index(i, n)?;
        Ok(Self::from_term(Scalar::s_pow(-2), Diagram::identity(n, false))
            + Self::from_term(Scalar::s_pow(2), Diagram::e(i, n)))
    }

    pub fn t_with(i: usize, n: usize, choice: CrossingChoice) -> Result<Morphism, MorphismError> {
        Self::check_index(i, n)?;
        let a = choice.alpha();
        let ai = a.inv()?;
        Ok(Self::from_term(a, Diagram::identity(n, false)) + Self::from_term(ai, Diagram::e(i, n)))
    }

    pub fn cup() -> Morphism {
        Self::from_diagram(Diagram::cup(false))
    }

    pub fn cap() -> Morphism {
        Self::from_diagram(Diagram::cap(false))
    }

    /// Nested cups `ῑ_m ∈ Hom(0, 2m)`.
    pub fn big_cup(m: usize) -> Morphism {
        let pairs: Vec<(Node, Node)> = (0..m).map(|j| (Node::Left(j), Node::Left(2 * m - 1 - j))).collect();
        Self::from_diagram(Diagram::from_node_pairs(2 * m, 0, false, &pairs).unwrap())
    }

    /// Nested caps `ē_m ∈ Hom(2m, 0)`.
    pub fn big_cap(m: usize) -> Morphism {
        Self::big_cup(m).transpose()
    }

    fn same_shape(&self, o: &Morphism) -> Result<(), MorphismError> {
        if (self.dst, self.src, self.dilute) != (o.dst, o.src, o.dilute) {
            return Err(MorphismError::ShapeMismatch(format!(
                "{}<-{} vs {}<-{}",
                self.dst, self.src, o.dst, o.src
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Morphism) -> Result<Morphism, MorphismError> {
        self.same_shape(o)?;
        let mut m = self.clone();
        for (d, c) in &o.terms {
            m.add_term(c.clone(), d.clone());
        }
        Ok(m)
    }

    pub fn try_sub(&self, o: &Morphism) -> Result<Morphism, MorphismError> {
        self.try_add(&-o)
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let mut m = Self::zero(self.dst, self.src, self.dilute);
        if c.is_zero() {
            return m;
        }
        for (d, x) in &self.terms {
            m.add_term(x * c, d.clone());
        }
        m
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism, MorphismError> {
        if self.dilute != g.dilute {
            return Err(DiagramError::FamilyMismatch.into());
        }
        if self.src != g.dst {
            return Err(DiagramError::InterfaceMismatch { left: self.src, right: g.dst }.into());
        }
        let mut acc: BTreeMap<Diagram, Scalar> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &g.terms {
                let o = a.compose(b)?;
                let Some(d) = o.diagram else { continue };
                let mut c = x * y;
                if o.loops > 0 {
                    c = &c * &beta_pow(o.loops);
                }
                match acc.get_mut(&d) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(d, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Morphism { dst: self.dst, src: g.src, dilute: self.dilute, terms: acc })
    }

    /// `self ⊗ g`, `self` on top.
    pub fn tensor(&self, g: &Morphism) -> Result<Morphism, MorphismError> {
        if self.dilute != g.dilute {
            return Err(DiagramError::FamilyMismatch.into());
        }
        let mut m = Self::zero(self.dst + g.dst, self.src + g.src, self.dilute);
        for (a, x) in &self.terms {
            for (b, y) in &g.terms {
                m.add_term(x * y, a.tensor(b)?);
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Morphism {
        let mut m = Self::zero(self.src, self.dst, self.dilute);
        for (d, c) in &self.terms {
            m.terms.insert(d.transpose(), c.clone());
        }
        m
    }

    /// Composition of a list, leftmost outermost.
    pub fn product<'a>(fs: impl IntoIterator<Item = &'a Morphism>) -> Result<Morphism, MorphismError> {
        let mut it = fs.into_iter();
        let mut acc = it
            .next()
            .ok_or_else(|| MorphismError::ShapeMismatch("empty product".into()))?
            .clone();
        for f in it {
            acc = acc.compose(f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> Result<Morphism, MorphismError> {
        if self.src != self.dst {
            return Err(MorphismError::ShapeMismatch("power of a non-endomorphism".into()));
        }
        let mut acc = Self::identity(self.src, self.dilute);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<Morphism, MorphismError> {
        let mut m = Self::zero(self.dst, self.src, self.dilute);
        for (d, c) in &self.terms {
            m.add_term(f(c)?, d.clone());
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Morphism, MorphismError> {
        parse_morphism(text)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| json!({ "diagram": d.to_text(), "coeff": c.to_text() }))
            .collect();
        json!({ "dst": self.dst, "src": self.src, "dilute": self.dilute, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Morphism, MorphismError> {
        let bad = |m: &str| MorphismError::Parse(m.to_string());
        let dst = v["dst"].as_u64().ok_or_else(|| bad("dst"))? as usize;
        let src = v["src"].as_u64().ok_or_else(|| bad("src"))? as usize;
        let dilute = v["dilute"].as_bool().ok_or_else(|| bad("dilute"))?;
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let d = Diagram::parse(t["diagram"].as_str().ok_or_else(|| bad("diagram"))?)?;
            let c = Scalar::parse(t["coeff"].as_str().ok_or_else(|| bad("coeff"))?)?;
            terms.push((c, d));
        }
        Self::from_terms(dst, src, dilute, terms)
    }
}

fn parse_morphism(text: &str) -> Result<Morphism, MorphismError> {
    let bad = |m: &str| MorphismError::Parse(format!("{} in `{}`", m, text));
    let (head, body) = text.split_once(':').ok_or_else(|| bad("missing `:`"))?;
    let (dst, src) = head.trim().split_once("<-").ok_or_else(|| bad("missing `<-`"))?;
    let dst: usize = dst.trim().parse().map_err(|_| bad("bad target"))?;
    let src: usize = src.trim().parse().map_err(|_| bad("bad source"))?;
    let body = body.trim();
    let mut m = Morphism::zero(dst, src, false);
    if body == "0" {
        return Ok(m);
    }
    let bytes = body.as_bytes();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if !first {
            if bytes.get(i) != Some(&b'+') {
                return Err(bad("expected `+` between terms"));
            }
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
        }
        first = false;
        if bytes.get(i) != Some(&b'(') {
            return Err(bad("coefficient must be parenthesised"));
        }
        let mut depth = 0;
        let start = i + 1;
        loop {
            match bytes.get(i) {
                Some(b'(') => depth += 1,
                Some(b')') => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                None => return Err(bad("unbalanced parentheses")),
                _ => {}
            }
            i += 1;
        }
        let c = Scalar::parse(&body[start..i])?;
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if bytes.get(i) != Some(&b'*') {
            return Err(bad("expected `*`"));
        }
        i += 1;
        let end = body[i..].find(']').ok_or_else(|| bad("expected diagram"))? + i + 1;
        let d = Diagram::parse(&body[i..end])?;
        if m.terms.is_empty() && d.is_dilute() {
            m.dilute = true;
        }
        if (d.dst(), d.src(), d.is_dilute()) != (dst, src, m.dilute) {
            return Err(bad("diagram shape disagrees with header"));
        }
        m.add_term(c, d);
        i = end;
    }
    Ok(m)
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<-{} : ", self.dst, self.src)?;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}) * {}", c, d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator forms panic on shape mismatch; use the `try_`/`compose`
// methods when shapes are not known statically.

impl Add for Morphism {
    type Output = Morphism;
    fn add(self, o: Morphism) -> Morphism {
        self.try_add(&o).expect("morphism shapes differ")
    }
}

impl<'a> Add<&'a Morphism> for &'a Morphism {
    type Output = Morphism;
    fn add(self, o: &Morphism) -> Morphism {
        self.try_add(o).expect("morphism shapes differ")
    }
}

impl<'a> Add<&'a Morphism> for Morphism {
    type Output = Morphism;
    fn add(self, o: &Morphism) -> Morphism {
        self.try_add(o).expect("morphism shapes differ")
    }
}

impl Sub for Morphism {
    type Output = Morphism;
    fn sub(self, o: Morphism) -> Morphism {
        self.try_sub(&o).expect("morphism shapes differ")
    }
}

impl<'a> Sub<&'a Morphism> for &'a Morphism {
    type Output = Morphism;
    fn sub(self, o: &Morphism) -> Morphism {
        self.try_sub(o).expect("morphism shapes differ")
    }
}

impl Neg for &Morphism {
    type Output = Morphism;
    fn neg(self) -> Morphism {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for Morphism {
    type Output = Morphism;
    fn neg(self) -> Morphism {
        -&self
    }
}

impl<'a> Mul<&'a Morphism> for &'a Morphism {
    type Output = Morphism;
    fn mul(self, o: &Morphism) -> Morphism {
        self.compose(o).expect("morphisms not composable")
    }
}

impl Mul for Morphism {
    type Output = Morphism;
    fn mul(self, o: Morphism) -> Morphism {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_squared_is_beta_e() {
        let e = Morphism::e(1, 2).unwrap();
        assert_eq!(&e * &e, e.scale(&Scalar::beta()));
    }

    #[test]
    fn tl_relations() {
        for n in 2..=6 {
            for i in 1..n {
                let ei = Morphism::e(i, n).unwrap();
                assert_eq!(&ei * &ei, ei.scale(&Scalar::beta()));
                for j in 1..n {
                    let ej = Morphism::e(j, n).unwrap();
                    if i.abs_diff(j) == 1 {
                        assert_eq!(&(&ei * &ej) * &ei, ei);
                    } else if i.abs_diff(j) > 1 {
                        assert_eq!(&ei * &ej, &ej * &ei);
                    }
                }
            }
        }
    }

    #[test]
    fn t_on_e() {
        let t = Morphism::t(1, 2).unwrap();
        let e = Morphism::e(1, 2).unwrap();
        assert_eq!(&t * &e, e.scale(&-Scalar::q_half_pow(-3)));
        assert_eq!(&t * &Morphism::t_inv(1, 2).unwrap(), Morphism::identity(2, false));
    }

    #[test]
    fn t_inserts_as_tensor() {
        let lhs = Morphism::identity(1, false).tensor(&Morphism::t(1, 2).unwrap()).unwrap();
        assert_eq!(lhs, Morphism::t(2, 3).unwrap());
    }

    #[test]
    fn zigzag() {
        for m in 1..=4 {
            let id = Morphism::identity(m, false);
            let a = id.tensor(&Morphism::big_cap(m)).unwrap();
            let b = Morphism::big_cup(m).tensor(&id).unwrap();
            assert_eq!(&a * &b, id);
            let a = Morphism::big_cap(m).tensor(&id).unwrap();
            let b = id.tensor(&Morphism::big_cup(m)).unwrap();
            assert_eq!(&a * &b, id);
        }
    }

    #[test]
    fn dilute_identity_is_unit() {
        for n in 0..=3 {
            let id = Morphism::identity(n, true);
            assert_eq!(id.len(), 1 << n);
            for d in Diagram::enumerate(n, n, true, None).iter() {
                let f = Morphism::from_diagram(d.clone());
                assert_eq!(&id * &f, f);
                assert_eq!(&f * &id, f);
            }
        }
    }

    #[test]
    fn crossing_choices_satisfy_inverse_form() {
        for c in [
            CrossingChoice::PlusHalf,
            CrossingChoice::MinusHalf,
            CrossingChoice::PlusInverseHalf,
            CrossingChoice::MinusInverseHalf,
        ] {
            let t = Morphism::t_with(1, 2, c).unwrap();
            let a = c.alpha();
            let ti = Morphism::from_term(a.inv().unwrap(), Diagram::identity(2, false))
                + Morphism::from_term(a.clone(), Diagram::e(1, 2));
            assert_eq!(&t * &ti, Morphism::identity(2, false), "{:?}", c);
        }
    }

    #[test]
    fn text_and_json_roundtrip() {
        let f = Morphism::t(1, 3).unwrap() + Morphism::e(2, 3).unwrap().scale(&Scalar::beta());
        assert_eq!(Morphism::parse(&f.to_text()).unwrap(), f);
        assert_eq!(Morphism::from_json(&f.to_json()).unwrap(), f);
        let z = Morphism::zero(2, 4, false);
        assert_eq!(Morphism::parse(&z.to_text()).unwrap(), z);
        let d = Morphism::identity(2, true);
        assert_eq!(Morphism::parse(&d.to_text()).unwrap(), d);
        assert!(Morphism::parse("2<-2 : (1) * 2x2:[(1,3)]").is_err());
    }

    #[test]
    fn index_errors() {
        assert!(Morphism::e(0, 3).is_err());
        assert!(Morphism::t(3, 3).is_err());
        assert!(Morphism::identity(2, false).compose(&Morphism::identity(3, false)).is_err());
    }
}
