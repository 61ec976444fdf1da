//! Planar link diagrams, ordinary and dilute.
//!
//! An (m,n)-diagram has `m` nodes on the left column and `n` on the right;
//! it is a basis element of Hom(n, m). Nodes are numbered along the
//! boundary: left column top to bottom gets positions 1..m, right column
//! bottom to top gets m+1..m+n. Planarity is then the absence of
//! interleaving pairs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Marker for a vacant node in a dilute diagram.
pub const VACANT: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("interface mismatch: left operand has {left} right nodes, right operand has {right} left nodes")]
    InterfaceMismatch { left: usize, right: usize },
    #[error("cannot combine a dilute diagram with an ordinary one")]
    FamilyMismatch,
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation needs an ordinary (non-dilute) diagram")]
    DiluteUnsupported,
    #[error("no factorization found")]
    NoFactorization,
}

/// A node, 0-based from the top of its column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Left(usize),
    Right(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    dst: u8,
    src: u8,
    dilute: bool,
    /// partner of each boundary position (0-based), or `VACANT`
    partner: Vec<u8>,
}

/// Result of gluing two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeOutcome {
    /// `None` when a dilute composition was annihilated.
    pub diagram: Option<Diagram>,
    /// Closed loops removed in the middle.
    pub loops: usize,
}

impl ComposeOutcome {
    pub fn annihilated(&self) -> bool {
        self.diagram.is_none()
    }
}

/// `c = a ∘ (1_k ⊗ z^{⊗(r-k)/2}) ∘ (1_k ⊗ (z^t)^{⊗(n-k)/2}) ∘ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub a: Diagram,
    pub k: usize,
    pub b: Diagram,
}

impl Diagram {
    fn raw(dst: usize, src: usize, dilute: bool, partner: Vec<u8>) -> Diagram {
        Diagram { dst: dst as u8, src: src as u8, dilute, partner }
    }

    pub fn dst(&self) -> usize {
        self.dst as usize
    }

    pub fn src(&self) -> usize {
        self.src as usize
    }

    pub fn is_dilute(&self) -> bool {
        self.dilute
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    /// Boundary position (0-based) of a node.
    pub fn pos(&self, node: Node) -> usize {
        match node {
            Node::Left(j) => j,
            Node::Right(j) => self.dst() + self.src() - 1 - j,
        }
    }

    pub fn node(&self, pos: usize) -> Node {
        if pos < self.dst() {
            Node::Left(pos)
        } else {
            Node::Right(self.dst() + self.src() - 1 - pos)
        }
    }

    pub fn partner(&self, node: Node) -> Option<Node> {
        let p = self.partner[self.pos(node)];
        if p == VACANT {
            None
        } else {
            Some(self.node(p as usize))
        }
    }

    /// Partner array in boundary order.
    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    fn check(dst: usize, src: usize, dilute: bool, partner: &[u8]) -> Result<(), DiagramError> {
        let n = dst + src;
        if n >= VACANT as usize {
            return Err(DiagramError::InvalidPairing("too many nodes".into()));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p == VACANT {
                if !dilute {
                    return Err(DiagramError::InvalidPairing(format!(
                        "node {} unpaired in an ordinary diagram",
                        i + 1
                    )));
                }
                continue;
            }
            let p = p as usize;
            if p >= n || p == i || partner[p] as usize != i {
                return Err(DiagramError::InvalidPairing(format!("node {} badly paired", i + 1)));
            }
        }
        for a in 0..n {
            let b = partner[a];
            if b == VACANT || (b as usize) < a {
                continue;
            }
            for c in a + 1..b as usize {
                let d = partner[c];
                if d != VACANT && (d as usize) > b as usize {
                    return Err(DiagramError::InvalidPairing(format!(
                        "pairs ({},{}) and ({},{}) cross",
                        a + 1,
                        b + 1,
                        c + 1,
                        d as usize + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a diagram from 1-based boundary positions.
    pub fn from_boundary_pairs(
        dst: usize,
        src: usize,
        dilute: bool,
        pairs: &[(usize, usize)],
    ) -> Result<Diagram, DiagramError> {
        let n = dst + src;
        let mut partner = vec![VACANT; n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(DiagramError::InvalidPairing(format!("({},{}) out of range", a, b)));
            }
            if partner[a - 1] != VACANT || partner[b - 1] != VACANT {
                return Err(DiagramError::InvalidPairing(format!("node reused in ({},{})", a, b)));
            }
            partner[a - 1] = (b - 1) as u8;
            partner[b - 1] = (a - 1) as u8;
        }
        Self::check(dst, src, dilute, &partner)?;
        Ok(Self::raw(dst, src, dilute, partner))
    }

    pub fn from_node_pairs(
        dst: usize,
        src: usize,
        dilute: bool,
        pairs: &[(Node, Node)],
    ) -> Result<Diagram, DiagramError> {
        let probe = Self::raw(dst, src, dilute, vec![]);
        let bp: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                let ok = |n: Node| match n {
                    Node::Left(j) => j < dst,
                    Node::Right(j) => j < src,
                };
                if ok(a) && ok(b) {
                    Ok((probe.pos(a) + 1, probe.pos(b) + 1))
                } else {
                    Err(DiagramError::InvalidPairing(format!("{:?}-{:?} out of range", a, b)))
                }
            })
            .collect::<Result<_, _>>()?;
        Self::from_boundary_pairs(dst, src, dilute, &bp)
    }

    /// 1-based boundary pairs `(a, b)` with `a < b`, sorted.
    pub fn boundary_pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p != VACANT && i < p as usize)
            .map(|(i, &p)| (i + 1, p as usize + 1))
            .collect()
    }

    /// The diagram with `n` horizontal through lines.
    pub fn identity(n: usize, dilute: bool) -> Diagram {
        let pairs: Vec<(Node, Node)> = (0..n).map(|j| (Node::Left(j), Node::Right(j))).collect();
        Self::from_node_pairs(n, n, dilute, &pairs).unwrap()
    }

    /// Dilute diagram with every node vacant.
    pub fn vacant(dst: usize, src: usize) -> Diagram {
        Self::raw(dst, src, true, vec![VACANT; dst + src])
    }

    /// Cup `z ∈ Hom(0, 2)`.
    pub fn cup(dilute: bool) -> Diagram {
        Self::from_node_pairs(2, 0, dilute, &[(Node::Left(0), Node::Left(1))]).unwrap()
    }

    /// Cap `z^t ∈ Hom(2, 0)`.
    pub fn cap(dilute: bool) -> Diagram {
        Self::cup(dilute).transpose()
    }

    /// `e_i(n)` as a diagram, 1 ≤ i ≤ n-1: arcs joining strands i and i+1
    /// on both sides, horizontal lines elsewhere.
    pub fn e(i: usize, n: usize) -> Diagram {
        assert!(i >= 1 && i < n, "e_{} undefined on {} strands", i, n);
        let mut pairs = vec![
            (Node::Left(i - 1), Node::Left(i)),
            (Node::Right(i - 1), Node::Right(i)),
        ];
        for j in (0..n).filter(|&j| j != i - 1 && j != i) {
            pairs.push((Node::Left(j), Node::Right(j)));
        }
        Self::from_node_pairs(n, n, false, &pairs).unwrap()
    }

    /// Number of strands joining the two columns.
    pub fn through_lines(&self) -> usize {
        (0..self.dst())
            .filter(|&j| {
                let p = self.partner[j];
                p != VACANT && p as usize >= self.dst()
            })
            .count()
    }

    pub fn vacancies(&self) -> usize {
        self.partner.iter().filter(|&&p| p == VACANT).count()
    }

    pub fn is_identity(&self) -> bool {
        self.dst == self.src && *self == Self::identity(self.dst(), self.dilute)
    }

    /// Mirror image exchanging the two columns.
    pub fn transpose(&self) -> Diagram {
        let (m, n) = (self.dst(), self.src());
        let mut out = Self::raw(n, m, self.dilute, vec![VACANT; m + n]);
        for pos in 0..m + n {
            if let Some(p) = self.partner(self.node(pos)) {
                let flip = |x: Node| match x {
                    Node::Left(j) => Node::Right(j),
                    Node::Right(j) => Node::Left(j),
                };
                let a = out.pos(flip(self.node(pos)));
                let b = out.pos(flip(p));
                out.partner[a] = b as u8;
            }
        }
        out
    }

    /// `self ⊗ other`: `self` on top.
    pub fn tensor(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.dilute != other.dilute {
            return Err(DiagramError::FamilyMismatch);
        }
        let (m1, n1) = (self.dst(), self.src());
        let (m2, n2) = (other.dst(), other.src());
        let mut out = Self::raw(m1 + m2, n1 + n2, self.dilute, vec![VACANT; m1 + m2 + n1 + n2]);
        let lift_a = |x: Node| x;
        let lift_b = |x: Node| match x {
            Node::Left(j) => Node::Left(j + m1),
            Node::Right(j) => Node::Right(j + n1),
        };
        for (d, lift) in [(self, &lift_a as &dyn Fn(Node) -> Node), (other, &lift_b)] {
            for pos in 0..d.size() {
                if let Some(p) = d.partner(d.node(pos)) {
                    let a = out.pos(lift(d.node(pos)));
                    let b = out.pos(lift(p));
                    out.partner[a] = b as u8;
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ b`: `self` drawn on the left of `b`, gluing the right column
    /// of `self` to the left column of `b`.
    pub fn compose(&self, b: &Diagram) -> Result<ComposeOutcome, DiagramError> {
        if self.dilute != b.dilute {
            return Err(DiagramError::FamilyMismatch);
        }
        if self.src() != b.dst() {
            return Err(DiagramError::InterfaceMismatch { left: self.src(), right: b.dst() });
        }
        let m = self.src();
        let mut out = Diagram::raw(self.dst(), b.src(), self.dilute, vec![VACANT; self.dst() + b.src()]);
        let mut seen = vec![false; m];
        let annihilated = ComposeOutcome { diagram: None, loops: 0 };

        // Outer nodes: (false, Left(j)) belongs to self, (true, Right(j)) to b.
        let outer: Vec<(bool, Node)> = (0..self.dst())
            .map(|j| (false, Node::Left(j)))
            .chain((0..b.src()).map(|j| (true, Node::Right(j))))
            .collect();
        for &(start_in_b, start) in &outer {
            let start_d = if start_in_b { b } else { self };
            let mut in_b = start_in_b;
            let mut cur = match start_d.partner(start) {
                None => continue,
                Some(p) => p,
            };
            let end = loop {
                match (in_b, cur) {
                    (false, Node::Left(_)) | (true, Node::Right(_)) => break (in_b, cur),
                    (false, Node::Right(j)) => {
                        seen[j] = true;
                        in_b = true;
                        match b.partner(Node::Left(j)) {
                            None => return Ok(annihilated),
                            Some(p) => cur = p,
                        }
                    }
                    (true, Node::Left(j)) => {
                        seen[j] = true;
                        in_b = false;
                        match self.partner(Node::Right(j)) {
                            None => return Ok(annihilated),
                            Some(p) => cur = p,
                        }
                    }
                }
            };
            let res = |in_b: bool, n: Node| match (in_b, n) {
                (false, Node::Left(j)) => Node::Left(j),
                (true, Node::Right(j)) => Node::Right(j),
                _ => unreachable!(),
            };
            let a = out.pos(res(start_in_b, start));
            let e = out.pos(res(end.0, end.1));
            out.partner[a] = e as u8;
            out.partner[e] = a as u8;
        }

        let mut loops = 0;
        for j0 in 0..m {
            if seen[j0] {
                continue;
            }
            let l = self.partner(Node::Right(j0));
            let r = b.partner(Node::Left(j0));
            match (l, r) {
                (None, None) => continue,
                (None, _) | (_, None) => return Ok(annihilated),
                _ => {}
            }
            // every middle node on this cycle is internal on both sides
            loops += 1;
            let mut j = j0;
            loop {
                seen[j] = true;
                let Some(Node::Left(k)) = b.partner(Node::Left(j)) else {
                    return Ok(annihilated);
                };
                seen[k] = true;
                let Some(Node::Right(nj)) = self.partner(Node::Right(k)) else {
                    return Ok(annihilated);
                };
                j = nj;
                if j == j0 {
                    break;
                }
            }
        }
        Ok(ComposeOutcome { diagram: Some(out), loops })
    }

    /// All (left,right)-diagrams, optionally with a fixed number of through
    /// lines, in ascending order.
    pub fn enumerate(left: usize, right: usize, dilute: bool, through: Option<usize>) -> Arc<Vec<Diagram>> {
        type Key = (usize, usize, bool, Option<usize>);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<Diagram>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (left, right, dilute, through);
        if let Some(v) = cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let n = left + right;
        let mut all = Vec::new();
        let mut buf = vec![VACANT; n];
        matchings(&mut buf, 0, n, dilute, &mut |p| {
            let d = Diagram::raw(left, right, dilute, p.to_vec());
            if through.map_or(true, |t| d.through_lines() == t) {
                all.push(d);
            }
        });
        all.sort();
        let v = Arc::new(all);
        cache.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Writes an ordinary diagram as `a ∘ (1_k ⊗ z^{⊗p}) ∘ (1_k ⊗ (z^t)^{⊗p'}) ∘ b`
    /// with `a`, `b` endomorphism diagrams and `k` the number of through lines.
    pub fn factor_through_lines(&self) -> Result<Factorization, DiagramError> {
        if self.dilute {
            return Err(DiagramError::DiluteUnsupported);
        }
        let (r, n) = (self.dst(), self.src());
        let k = self.through_lines();
        let left_through: Vec<usize> = (0..r)
            .filter(|&j| matches!(self.partner(Node::Left(j)), Some(Node::Right(_))))
            .collect();
        let right_through: Vec<usize> = (0..n)
            .filter(|&j| matches!(self.partner(Node::Right(j)), Some(Node::Left(_))))
            .collect();

        let mut lp = Vec::new();
        for j in 0..r {
            match self.partner(Node::Left(j)) {
                Some(Node::Left(i)) if i > j => lp.push((Node::Left(j), Node::Left(i))),
                Some(Node::Right(_)) => {
                    let t = left_through.iter().position(|&x| x == j).unwrap();
                    lp.push((Node::Left(j), Node::Right(t)));
                }
                _ => {}
            }
        }
        let big_l = Diagram::from_node_pairs(r, k, false, &lp)?;
        let mut rp = Vec::new();
        for j in 0..n {
            match self.partner(Node::Right(j)) {
                Some(Node::Right(i)) if i > j => rp.push((Node::Right(j), Node::Right(i))),
                Some(Node::Left(_)) => {
                    let t = right_through.iter().position(|&x| x == j).unwrap();
                    rp.push((Node::Left(t), Node::Right(j)));
                }
                _ => {}
            }
        }
        let big_r = Diagram::from_node_pairs(k, n, false, &rp)?;

        let m_l = Diagram::cups_below(k, (r - k) / 2);
        let m_r = Diagram::cups_below(k, (n - k) / 2).transpose();
        let a = Diagram::enumerate(r, r, false, None)
            .iter()
            .find(|a| a.compose(&m_l).ok().map_or(false, |o| o.loops == 0 && o.diagram.as_ref() == Some(&big_l)))
            .cloned()
            .ok_or(DiagramError::NoFactorization)?;
        let b = Diagram::enumerate(n, n, false, None)
            .iter()
            .find(|b| m_r.compose(b).ok().map_or(false, |o| o.loops == 0 && o.diagram.as_ref() == Some(&big_r)))
            .cloned()
            .ok_or(DiagramError::NoFactorization)?;
        Ok(Factorization { a, k, b })
    }

    /// `1_k ⊗ z^{⊗p} ∈ Hom(k, k + 2p)`.
    pub fn cups_below(k: usize, p: usize) -> Diagram {
        let mut d = Diagram::identity(k, false);
        for _ in 0..p {
            d = d.tensor(&Diagram::cup(false)).unwrap();
        }
        d
    }

    /// `{d}{m}x{n}:[(a,b),...]`, 1-based boundary positions.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
        text.parse()
    }
}

/// Calls `f` on every planar (partial, if dilute) matching of `buf[lo..hi]`.
fn matchings(buf: &mut Vec<u8>, lo: usize, hi: usize, dilute: bool, f: &mut dyn FnMut(&[u8])) {
    if lo >= hi {
        f(buf);
        return;
    }
    if dilute {
        buf[lo] = VACANT;
        matchings(buf, lo + 1, hi, dilute, f);
    }
    let step = if dilute { 1 } else { 2 };
    let mut j = lo + 1;
    while j < hi {
        buf[lo] = j as u8;
        buf[j] = lo as u8;
        // inside first, then the remainder, for each completion of the inside
        let mut inner = |bb: &[u8]| {
            let mut b2 = bb.to_vec();
            matchings(&mut b2, j + 1, hi, dilute, f);
        };
        let mut b1 = buf.clone();
        matchings(&mut b1, lo + 1, j, dilute, &mut inner);
        buf[j] = VACANT;
        j += step;
    }
    buf[lo] = VACANT;
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dilute {
            f.write_str("d")?;
        }
        write!(f, "{}x{}:[", self.dst, self.src)?;
        for (i, (a, b)) in self.boundary_pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", a, b)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |m: &str| DiagramError::Parse(format!("{} in `{}`", m, text));
        let (dilute, t) = match t.strip_prefix('d') {
            Some(rest) => (true, rest),
            None => (false, t.as_str()),
        };
        let (head, body) = t.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let (m, n) = head.split_once('x').ok_or_else(|| bad("missing `x`"))?;
        let m: usize = m.parse().map_err(|_| bad("bad left size"))?;
        let n: usize = n.parse().map_err(|_| bad("bad right size"))?;
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| bad("pairs must be in brackets"))?;
        let mut pairs = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let r = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let (inner, after) = r.split_once(')').ok_or_else(|| bad("expected `)`"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| bad("expected `,` in pair"))?;
            let a: usize = a.parse().map_err(|_| bad("bad node"))?;
            let b: usize = b.parse().map_err(|_| bad("bad node"))?;
            pairs.push((a, b));
            rest = after.strip_prefix(',').unwrap_or(after);
        }
        Diagram::from_boundary_pairs(m, n, dilute, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        let mut c = vec![1usize; n + 1];
        for i in 1..=n {
            c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
        }
        c[n]
    }

    fn motzkin(n: usize) -> usize {
        let mut m = vec![1usize; n + 1];
        for i in 2..=n {
            m[i] = m[i - 1] + (0..=i - 2).map(|k| m[k] * m[i - 2 - k]).sum::<usize>();
        }
        m[n]
    }

    #[test]
    fn counts() {
        for n in 0..=6 {
            assert_eq!(Diagram::enumerate(n, n, false, None).len(), catalan(n));
        }
        assert_eq!(Diagram::enumerate(4, 4, false, None).len(), 14);
        assert_eq!(Diagram::enumerate(2, 2, true, None).len(), 9);
        for n in 0..=4 {
            assert_eq!(Diagram::enumerate(n, n, true, None).len(), motzkin(2 * n));
        }
    }

    #[test]
    fn text_roundtrip() {
        let d: Diagram = "4x2:[(1,6),(2,3),(4,5)]".parse().unwrap();
        assert_eq!(d.to_string(), "4x2:[(1,6),(2,3),(4,5)]");
        assert_eq!(d.through_lines(), 2);
        for d in Diagram::enumerate(3, 3, true, None).iter() {
            assert_eq!(&Diagram::parse(&d.to_text()).unwrap(), d);
        }
        assert!(Diagram::parse("2x2:[(1,3),(2,4)]").is_err());
        assert!(Diagram::parse("2x2:[(1,2)]").is_err());
        assert!(Diagram::parse("d2x2:[(1,2)]").is_ok());
    }

    #[test]
    fn transpose_compose_gives_loop() {
        let d: Diagram = "4x2:[(1,6),(2,3),(4,5)]".parse().unwrap();
        let o = d.transpose().compose(&d).unwrap();
        assert_eq!(o.loops, 1);
        assert!(o.diagram.unwrap().is_identity());
        let o = Diagram::cap(false).compose(&Diagram::cup(false)).unwrap();
        assert_eq!(o.loops, 1);
        assert_eq!(o.diagram.unwrap().size(), 0);
    }

    #[test]
    fn e_relations() {
        for n in 2..=5 {
            for i in 1..n {
                let e = Diagram::e(i, n);
                let o = e.compose(&e).unwrap();
                assert_eq!((o.loops, o.diagram.unwrap()), (1, e.clone()));
                if i + 1 < n {
                    let f = Diagram::e(i + 1, n);
                    let o = e.compose(&f).unwrap().diagram.unwrap().compose(&e).unwrap();
                    assert_eq!((o.loops, o.diagram.unwrap()), (0, e.clone()));
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        let a = Diagram::enumerate(3, 3, false, None);
        for x in a.iter() {
            for y in a.iter() {
                for z in a.iter() {
                    let xy = x.compose(y).unwrap();
                    let l = xy.diagram.as_ref().unwrap().compose(z).unwrap();
                    let yz = y.compose(z).unwrap();
                    let r = x.compose(yz.diagram.as_ref().unwrap()).unwrap();
                    assert_eq!(l.diagram, r.diagram);
                    assert_eq!(xy.loops + l.loops, yz.loops + r.loops);
                }
            }
        }
    }

    #[test]
    fn dilute_annihilation() {
        let strand = Diagram::identity(1, true);
        let gap = Diagram::vacant(1, 1);
        assert!(strand.compose(&gap).unwrap().annihilated());
        assert_eq!(gap.compose(&gap).unwrap().diagram, Some(gap.clone()));
    }

    #[test]
    fn tensor_and_mismatch() {
        let d = Diagram::identity(1, false).tensor(&Diagram::cup(false)).unwrap();
        assert_eq!((d.dst(), d.src()), (3, 1));
        assert!(matches!(
            Diagram::identity(2, false).compose(&Diagram::identity(3, false)),
            Err(DiagramError::InterfaceMismatch { .. })
        ));
        assert_eq!(
            Diagram::identity(1, false).tensor(&Diagram::identity(1, true)),
            Err(DiagramError::FamilyMismatch)
        );
    }

    #[test]
    fn factorization_recomposes() {
        for (r, n) in [(4, 2), (4, 4), (3, 3), (5, 3), (2, 4)] {
            for c in Diagram::enumerate(r, n, false, None).iter() {
                let f = c.factor_through_lines().unwrap();
                let p = (r - f.k) / 2;
                let pp = (n - f.k) / 2;
                let mid = Diagram::cups_below(f.k, p)
                    .compose(&Diagram::cups_below(f.k, pp).transpose())
                    .unwrap();
                assert_eq!(mid.loops, 0);
                let x = f.a.compose(mid.diagram.as_ref().unwrap()).unwrap();
                let y = x.diagram.unwrap().compose(&f.b).unwrap();
                assert_eq!(x.loops + y.loops, 0);
                assert_eq!(y.diagram.as_ref(), Some(c));
            }
        }
    }
}
