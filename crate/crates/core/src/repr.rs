//! Link-state modules: standard modules `S_{n,k}` and the regular module
//! `End(n)`, as explicit matrix representations. Also the Wenzl-Jones
//! projectors and the rigidity checks.

use std::collections::HashMap;
use std::sync::Arc;

use num::BigRational;
use serde_json::json;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::linalg::{self, FieldCtx, Mat, RationalPoint, Symbolic};
use crate::morphism::{Morphism, MorphismError};
use crate::report::{CaseRecord, Report};
use crate::scalar::{Scalar, ScalarError, Specialization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error("no standard module S({n},{k})")]
    BadLabel { n: usize, k: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("action is not a multiple of the identity")]
    NotScalarAction,
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    /// `S_{n,k}`: (n,k)-diagrams with k through lines, action truncated
    /// when through lines are lost.
    Standard { k: usize },
    /// `End(n)` acting on itself by left composition.
    Regular,
}

/// A module over `TL_n` with a basis of diagrams in `Hom(r, n)`.
#[derive(Debug, Clone)]
pub struct LinkModule {
    n: usize,
    kind: ModuleKind,
    basis: Arc<Vec<Diagram>>,
    index: Arc<HashMap<Diagram, usize>>,
}

pub type StandardModule = LinkModule;

fn binom(n: usize, k: isize) -> usize {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = k as usize;
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl LinkModule {
    fn build(n: usize, kind: ModuleKind) -> LinkModule {
        let basis = match kind {
            ModuleKind::Standard { k } => Diagram::enumerate(n, k, false, Some(k)),
            ModuleKind::Regular => Diagram::enumerate(n, n, false, None),
        };
        let index = basis.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        LinkModule { n, kind, basis, index: Arc::new(index) }
    }

    pub fn standard(n: usize, k: usize) -> Result<LinkModule, ReprError> {
        if k > n || (n - k) % 2 != 0 {
            return Err(ReprError::BadLabel { n, k });
        }
        Ok(Self::build(n, ModuleKind::Standard { k }))
    }

    pub fn regular(n: usize) -> LinkModule {
        Self::build(n, ModuleKind::Regular)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    /// Through-line label for standard modules.
    pub fn k(&self) -> Option<usize> {
        match self.kind {
            ModuleKind::Standard { k } => Some(k),
            ModuleKind::Regular => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Diagram] {
        &self.basis
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// `C(n,(n-k)/2) − C(n,(n-k)/2 − 1)`.
    pub fn dim_formula(n: usize, k: usize) -> usize {
        if k > n || (n - k) % 2 != 0 {
            return 0;
        }
        let j = ((n - k) / 2) as isize;
        binom(n, j) - binom(n, j - 1)
    }

    pub fn label(&self) -> String {
        match self.kind {
            ModuleKind::Standard { k } => format!("S({},{})", self.n, k),
            ModuleKind::Regular => format!("End({})", self.n),
        }
    }

    /// Image of basis vector `j` under `f`, as (index, coefficient) pairs in
    /// the basis of `to`.
    pub(crate) fn image(&self, f: &Morphism, j: usize, to: &LinkModule) -> Result<Vec<(usize, Scalar)>, ReprError> {
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        let beta = Scalar::beta();
        for (d, c) in f.terms() {
            let o = d.compose(&self.basis[j]).map_err(MorphismError::from)?;
            let Some(res) = o.diagram else { continue };
            let Some(i) = to.index_of(&res) else { continue };
            let mut coeff = c.clone();
            for _ in 0..o.loops {
                coeff = &coeff * &beta;
            }
            match out.iter_mut().find(|(r, _)| *r == i) {
                Some((_, x)) => *x = &*x + &coeff,
                None => out.push((i, coeff)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(out)
    }
}

fn check_shapes(f: &Morphism, from: &LinkModule, to: &LinkModule) -> Result<(), ReprError> {
    let same_kind = match (from.kind, to.kind) {
        (ModuleKind::Standard { k: a }, ModuleKind::Standard { k: b }) => a == b,
        (ModuleKind::Regular, ModuleKind::Regular) => from.n == to.n,
        _ => false,
    };
    if f.is_dilute() || f.src() != from.n || f.dst() != to.n || !same_kind {
        return Err(ReprError::ShapeMismatch(format!(
            "{}<-{} between {} and {}",
            f.dst(),
            f.src(),
            from.label(),
            to.label()
        )));
    }
    Ok(())
}

/// Matrix of `f ∈ Hom(n, m)` from `from` (over n) to `to` (over m), rows
/// indexed by the basis of `to`.
pub fn act(f: &Morphism, from: &LinkModule, to: &LinkModule) -> Result<Mat<Scalar>, ReprError> {
    act_in(&Symbolic, f, from, to)
}

/// `act` with entries sent into another field.
pub fn act_in<K: FieldCtx>(k: &K, f: &Morphism, from: &LinkModule, to: &LinkModule) -> Result<Mat<K::E>, ReprError> {
    check_shapes(f, from, to)?;
    let mut m = linalg::zeros(k, to.dim(), from.dim());
    for j in 0..from.dim() {
        for (i, c) in from.image(f, j, to)? {
            m[i][j] = k.lift(&c)?;
        }
    }
    Ok(m)
}

/// Action of an endomorphism on a module.
pub fn act_end(f: &Morphism, m: &LinkModule) -> Result<Mat<Scalar>, ReprError> {
    act(f, m, m)
}

pub fn act_end_in<K: FieldCtx>(k: &K, f: &Morphism, m: &LinkModule) -> Result<Mat<K::E>, ReprError> {
    act_in(k, f, m, m)
}

/// The scalar by which `central` acts, if it does.
pub fn eigenvalue_on_standard(central: &Morphism, m: &LinkModule) -> Result<Scalar, ReprError> {
    let a = act_end(central, m)?;
    if a.is_empty() {
        return Err(ReprError::NotScalarAction);
    }
    let g = a[0][0].clone();
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { &g } else { &Scalar::zero() };
            if x != want {
                return Err(ReprError::NotScalarAction);
            }
        }
    }
    Ok(g)
}

/// `γ_{n,k} = q^{k(k+2)/2}`.
pub fn gamma(k: usize) -> Scalar {
    Scalar::s_pow((2 * k * (k + 2)) as i32)
}

/// Wenzl-Jones projector `wj_m ∈ End(m)` at generic `s`.
pub fn wenzl_jones(m: usize) -> Result<Morphism, ReprError> {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<Vec<Morphism>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Morphism::identity(0, false), Morphism::identity(1, false)]));
    loop {
        let have = cache.lock().unwrap().len();
        if have > m {
            return Ok(cache.lock().unwrap()[m].clone());
        }
        let prev = cache.lock().unwrap()[have - 1].clone();
        let next = wj_step(&prev, have - 1)?;
        cache.lock().unwrap().push(next);
    }
}

/// `wj_{k+1} = W − μ W e_k W` with `W = wj_k ⊗ 1_1` and μ fixed by
/// requiring `e_k wj_{k+1} = 0`.
fn wj_step(wj: &Morphism, k: usize) -> Result<Morphism, ReprError> {
    let w = wj.tensor(&Morphism::identity(1, false))?;
    if k == 0 {
        return Ok(w);
    }
    let e = Morphism::e(k, k + 1)?;
    let wew = &(&w * &e) * &w;
    let x = &e * &w;
    let y = &e * &wew;
    let (d, yd) = y
        .terms()
        .next()
        .ok_or_else(|| ReprError::ShapeMismatch("degenerate recursion".into()))?;
    let mu = x.coeff(d).try_div(yd)?;
    if x != y.scale(&mu) {
        return Err(ReprError::ShapeMismatch("recursion has no solution".into()));
    }
    Ok(&w - &wew.scale(&mu))
}

/// Specializes the coefficients of `wj_m`; fails with a pole when the
/// projector does not exist there.
pub fn wenzl_jones_at(m: usize, sp: &Specialization) -> Result<(), ReprError> {
    for (_, c) in wenzl_jones(m)?.terms() {
        c.specialize(sp)?;
    }
    Ok(())
}

/// Dimension of `{x ∈ End(m) : x e_i = e_i x = 0 for all i}` at `s = s0`.
/// Any `s0` bounds the generic dimension from above.
pub fn annihilated_dimension_at(m: usize, s0: BigRational) -> Result<usize, ReprError> {
    let k = RationalPoint { s0 };
    let basis = Diagram::enumerate(m, m, false, None);
    let idx: HashMap<&Diagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let nb = basis.len();
    let mut rows: Mat<BigRational> = Vec::new();
    let beta = k.lift(&Scalar::beta())?;
    for i in 1..m {
        let e = Diagram::e(i, m);
        for side in 0..2 {
            let mut block = linalg::zeros(&k, nb, nb);
            for (j, d) in basis.iter().enumerate() {
                let o = if side == 0 { d.compose(&e) } else { e.compose(d) }.map_err(MorphismError::from)?;
                let res = o.diagram.expect("ordinary composition");
                let mut c = k.one();
                for _ in 0..o.loops {
                    c = k.mul(&c, &beta);
                }
                let r = idx[&res];
                block[r][j] = k.add(&block[r][j], &c);
            }
            rows.extend(block);
        }
    }
    if rows.is_empty() {
        return Ok(nb);
    }
    Ok(nb - linalg::rank(&k, &rows))
}

fn zigzags(m: usize) -> (Morphism, Morphism) {
    let id = Morphism::identity(m, false);
    let a = &id.tensor(&Morphism::big_cap(m)).unwrap() * &Morphism::big_cup(m).tensor(&id).unwrap();
    let b = &Morphism::big_cap(m).tensor(&id).unwrap() * &id.tensor(&Morphism::big_cup(m)).unwrap();
    (a, b)
}

/// Zig-zag identities for `m ≤ max_zigzag`, projector properties for
/// `m ≤ max_wj`, and the projector-decorated zig-zag for `m ≤ max_decorated`.
pub fn verify_rigidity(max_zigzag: usize, max_wj: usize, max_decorated: usize) -> Report {
    let mut report = Report::new(
        "rigidity",
        json!({ "max_zigzag": max_zigzag, "max_wj": max_wj, "max_decorated": max_decorated }),
    );
    for m in 1..=max_zigzag {
        let (a, b) = zigzags(m);
        let id = Morphism::identity(m, false);
        report.push(CaseRecord::compare("zigzag-1", json!({ "m": m }), &a, &id));
        report.push(CaseRecord::compare("zigzag-2", json!({ "m": m }), &b, &id));
    }
    for m in 1..=max_wj {
        let p = json!({ "m": m });
        let wj = match wenzl_jones(m) {
            Ok(w) => w,
            Err(e) => {
                report.push(CaseRecord::fail("wj-build", p, e.to_string()));
                continue;
            }
        };
        report.push(CaseRecord::compare("wj-idempotent", p.clone(), &(&wj * &wj), &wj));
        let zero = Morphism::zero(m, m, false);
        for i in 1..m {
            let e = Morphism::e(i, m).unwrap();
            let pi = json!({ "m": m, "i": i });
            report.push(CaseRecord::compare("wj-e-left", pi.clone(), &(&e * &wj), &zero));
            report.push(CaseRecord::compare("wj-e-right", pi, &(&wj * &e), &zero));
        }
        report.push(CaseRecord::compare("wj-transpose", p.clone(), &wj.transpose(), &wj));
        let dim = annihilated_dimension_at(m, BigRational::new(3.into(), 2.into()));
        report.push(CaseRecord::check("wj-unique", p, dim == Ok(1), || format!("annihilated space: {:?}", dim)));
    }
    for m in 1..=max_decorated {
        let wj = wenzl_jones(m).unwrap();
        let id = Morphism::identity(m, false);
        let cap = &Morphism::big_cap(m) * &wj.tensor(&wj).unwrap();
        let lhs = &id.tensor(&cap).unwrap() * &Morphism::big_cup(m).tensor(&id).unwrap();
        report.push(CaseRecord::compare("wj-zigzag", json!({ "m": m }), &lhs, &wj));
    }
    report
}

/// Dense export of an action matrix as rows of scalar strings.
pub fn matrix_json(m: &Mat<Scalar>) -> serde_json::Value {
    json!(m.iter().map(|r| r.iter().map(|x| x.to_text()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        for n in 0..=8 {
            for k in (n % 2..=n).step_by(2) {
                assert_eq!(LinkModule::standard(n, k).unwrap().dim(), LinkModule::dim_formula(n, k));
            }
        }
        assert!(LinkModule::standard(3, 2).is_err());
        assert_eq!(LinkModule::standard(4, 2).unwrap().dim(), 3);
    }

    #[test]
    fn e_on_s20() {
        let s = LinkModule::standard(2, 0).unwrap();
        assert_eq!(act_end(&Morphism::e(1, 2).unwrap(), &s).unwrap(), vec![vec![Scalar::beta()]]);
    }

    #[test]
    fn homomorphism_exhaustive_small() {
        for n in 1..=4 {
            for k in (n % 2..=n).step_by(2) {
                let m = LinkModule::standard(n, k).unwrap();
                let ds = Diagram::enumerate(n, n, false, None);
                for a in ds.iter() {
                    for b in ds.iter() {
                        let fa = Morphism::from_diagram(a.clone());
                        let fb = Morphism::from_diagram(b.clone());
                        let lhs = act_end(&(&fa * &fb), &m).unwrap();
                        let rhs = linalg::mat_mul(&Symbolic, &act_end(&fa, &m).unwrap(), &act_end(&fb, &m).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn wj2_matches_linear_solve() {
        // x = 1 + a e with e x = 0 gives 1 + a β = 0.
        let a = Scalar::beta().inv().unwrap();
        let expect = Morphism::identity(2, false) - Morphism::e(1, 2).unwrap().scale(&a);
        assert_eq!(wenzl_jones(2).unwrap(), expect);
    }

    #[test]
    fn wj_pole_at_root() {
        assert!(wenzl_jones_at(2, &Specialization::root_of_unity(2)).is_err());
        assert!(wenzl_jones_at(3, &Specialization::Generic).is_ok());
    }

    #[test]
    fn rigidity_small() {
        let r = verify_rigidity(3, 4, 2);
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }
}
