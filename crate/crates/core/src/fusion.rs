//! Fusion of link modules as an explicit induced module, its decomposition at
//! generic `q`, and monodromy Jordan structure at roots of unity.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::braid::commutor;
use crate::diagram::Diagram;
use crate::linalg::{self, CyclotomicPoint, FieldCtx, Mat, RationalPoint, SparseEchelon, Symbolic};
use crate::morphism::{Morphism, MorphismError};
use crate::repr::{gamma, LinkModule, ReprError};
use crate::report::{CaseRecord, Report};
use crate::scalar::{Scalar, ScalarError, Specialization};
use crate::twist::twist_element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("expected eigenvalues collide for k = {0} and k = {1}")]
    AmbiguousEigenvalue(usize, usize),
    #[error("{0} is not an eigenvalue")]
    EigenvalueMismatch(String),
    #[error("unsupported specialization {0}")]
    Unsupported(String),
}

/// A factor of a fusion product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    Standard { n: usize, k: usize },
    Regular { n: usize },
}

impl Factor {
    pub fn n(self) -> usize {
        match self {
            Factor::Standard { n, .. } | Factor::Regular { n } => n,
        }
    }

    pub fn module(self) -> Result<LinkModule, ReprError> {
        match self {
            Factor::Standard { n, k } => LinkModule::standard(n, k),
            Factor::Regular { n } => Ok(LinkModule::regular(n)),
        }
    }

    /// Through-line labels of the cell modules the factor is built from.
    pub fn labels(self) -> Vec<usize> {
        match self {
            Factor::Standard { k, .. } => vec![k],
            Factor::Regular { n } => (n % 2..=n).step_by(2).collect(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Standard { n, k } => write!(f, "S{},{}", n, k),
            Factor::Regular { n } => write!(f, "End{}", n),
        }
    }
}

impl FromStr for Factor {
    type Err = FusionError;

    /// `S2,1` or `End2`.
    fn from_str(text: &str) -> Result<Factor, FusionError> {
        let bad = || FusionError::Unsupported(format!("module `{}`", text));
        let t = text.trim();
        if let Some(rest) = t.strip_prefix("End") {
            return Ok(Factor::Regular { n: rest.parse().map_err(|_| bad())? });
        }
        let rest = t.strip_prefix('S').ok_or_else(bad)?;
        let (n, k) = rest.split_once(',').ok_or_else(bad)?;
        let (n, k) = (n.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?);
        LinkModule::standard(n, k)?;
        Ok(Factor::Standard { n, k })
    }
}

/// `TL_{m+n} ⊗_{TL_m ⊗ TL_n} (M ⊗ N)` over the field `K`.
pub struct FusedModule<K: FieldCtx> {
    ctx: K,
    left: LinkModule,
    right: LinkModule,
    diagrams: Arc<Vec<Diagram>>,
    dindex: HashMap<Diagram, usize>,
    echelon: SparseEchelon<K::E>,
    free: Vec<usize>,
    free_index: HashMap<usize, usize>,
    beta: K::E,
}

impl<K: FieldCtx> FusedModule<K> {
    pub fn new(ctx: K, left: LinkModule, right: LinkModule) -> Result<Self, FusionError> {
        let (m, n) = (left.n(), right.n());
        let diagrams = Diagram::enumerate(m + n, m + n, false, None);
        let dindex = diagrams.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        let beta = ctx.lift(&Scalar::beta())?;
        let mut fm = FusedModule {
            ctx,
            left,
            right,
            diagrams,
            dindex,
            echelon: SparseEchelon::new(),
            free: Vec::new(),
            free_index: HashMap::new(),
            beta,
        };
        fm.build()?;
        Ok(fm)
    }

    fn col(&self, d: usize, x: usize, y: usize) -> usize {
        (d * self.left.dim() + x) * self.right.dim() + y
    }

    fn raw_dim(&self) -> usize {
        self.diagrams.len() * self.left.dim() * self.right.dim()
    }

    fn beta_pow(&self, l: usize) -> K::E {
        let mut c = self.ctx.one();
        for _ in 0..l {
            c = self.ctx.mul(&c, &self.beta);
        }
        c
    }

    /// `d ∘ a` for a single diagram `a`, as (index, β^loops).
    fn right_mul(&self, d: usize, a: &Diagram) -> Result<(usize, K::E), FusionError> {
        let o = self.diagrams[d].compose(a).map_err(MorphismError::from)?;
        let res = o.diagram.expect("ordinary composition");
        Ok((self.dindex[&res], self.beta_pow(o.loops)))
    }

    fn lifted_images(&self, module: &LinkModule, f: &Morphism) -> Result<Vec<Vec<(usize, K::E)>>, FusionError> {
        (0..module.dim())
            .map(|j| {
                module
                    .image(f, j, module)?
                    .into_iter()
                    .map(|(i, c)| Ok((i, self.ctx.lift(&c)?)))
                    .collect::<Result<Vec<_>, FusionError>>()
            })
            .collect()
    }

    fn build(&mut self) -> Result<(), FusionError> {
        let (m, n) = (self.left.n(), self.right.n());
        let k = &self.ctx;
        // generators a ⊗ 1 and 1 ⊗ b, with their factor-side images
        let mut gens: Vec<(Diagram, Vec<Vec<(usize, K::E)>>, bool)> = Vec::new();
        for i in 1..m {
            let a = Diagram::e(i, m).tensor(&Diagram::identity(n, false)).map_err(MorphismError::from)?;
            gens.push((a, self.lifted_images(&self.left, &Morphism::e(i, m)?)?, true));
        }
        for j in 1..n {
            let b = Diagram::identity(m, false).tensor(&Diagram::e(j, n)).map_err(MorphismError::from)?;
            gens.push((b, self.lifted_images(&self.right, &Morphism::e(j, n)?)?, false));
        }
        let mut echelon = SparseEchelon::new();
        for d in 0..self.diagrams.len() {
            for (a, images, on_left) in &gens {
                let (da, c) = self.right_mul(d, a)?;
                for x in 0..self.left.dim() {
                    for y in 0..self.right.dim() {
                        let mut v = vec![(self.col(da, x, y), c.clone())];
                        if *on_left {
                            for (x2, cx) in &images[x] {
                                v.push((self.col(d, *x2, y), k.neg(cx)));
                            }
                        } else {
                            for (y2, cy) in &images[y] {
                                v.push((self.col(d, x, *y2), k.neg(cy)));
                            }
                        }
                        echelon.insert(k, &normalize(k, v));
                    }
                }
            }
        }
        self.free = (0..self.raw_dim()).filter(|c| !echelon.is_pivot(*c)).collect();
        self.free_index = self.free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        self.echelon = echelon;
        Ok(())
    }

    pub fn ctx(&self) -> &K {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn strands(&self) -> usize {
        self.left.n() + self.right.n()
    }

    fn unpack(&self, c: usize) -> (usize, usize, usize) {
        let (dm, dn) = (self.left.dim(), self.right.dim());
        (c / (dm * dn), (c / dn) % dm, c % dn)
    }

    /// Coordinates of a raw vector in the quotient basis.
    fn reduce(&self, v: Vec<(usize, K::E)>) -> Vec<K::E> {
        let r = self.echelon.reduce(&self.ctx, &normalize(&self.ctx, v));
        let mut out = vec![self.ctx.zero(); self.dim()];
        for (c, x) in r {
            out[self.free_index[&c]] = x;
        }
        out
    }

    fn columns_to_mat(&self, cols: Vec<Vec<K::E>>) -> Mat<K::E> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Matrix of left composition by `f ∈ End(m+n)`.
    pub fn act(&self, f: &Morphism) -> Result<Mat<K::E>, FusionError> {
        if f.is_dilute() || f.src() != self.strands() || f.dst() != self.strands() {
            return Err(ReprError::ShapeMismatch(format!("{}<-{}", f.dst(), f.src())).into());
        }
        let mut terms = Vec::new();
        for (g, c) in f.terms() {
            terms.push((g.clone(), self.ctx.lift(c)?));
        }
        let mut cols = Vec::with_capacity(self.dim());
        for &fc in &self.free {
            let (d, x, y) = self.unpack(fc);
            let mut v = Vec::new();
            for (g, c) in &terms {
                let o = g.compose(&self.diagrams[d]).map_err(MorphismError::from)?;
                let res = o.diagram.expect("ordinary composition");
                v.push((self.col(self.dindex[&res], x, y), self.ctx.mul(c, &self.beta_pow(o.loops))));
            }
            cols.push(self.reduce(v));
        }
        Ok(self.columns_to_mat(cols))
    }

    /// Matrix of right composition `d ↦ d ∘ f` on the diagram leg.
    pub fn act_right(&self, f: &Morphism) -> Result<Mat<K::E>, FusionError> {
        let mut terms = Vec::new();
        for (g, c) in f.terms() {
            terms.push((g.clone(), self.ctx.lift(c)?));
        }
        let mut cols = Vec::with_capacity(self.dim());
        for &fc in &self.free {
            let (d, x, y) = self.unpack(fc);
            let mut v = Vec::new();
            for (g, c) in &terms {
                let (dg, b) = self.right_mul(d, g)?;
                v.push((self.col(dg, x, y), self.ctx.mul(c, &b)));
            }
            cols.push(self.reduce(v));
        }
        Ok(self.columns_to_mat(cols))
    }

    /// Matrix of `d ⊗ (x ⊗ y) ↦ d ⊗ (f x ⊗ g y)`.
    pub fn act_factors(&self, f: &Morphism, g: &Morphism) -> Result<Mat<K::E>, FusionError> {
        let fi = self.lifted_images(&self.left, f)?;
        let gi = self.lifted_images(&self.right, g)?;
        let mut cols = Vec::with_capacity(self.dim());
        for &fc in &self.free {
            let (d, x, y) = self.unpack(fc);
            let mut v = Vec::new();
            for (x2, a) in &fi[x] {
                for (y2, b) in &gi[y] {
                    v.push((self.col(d, *x2, *y2), self.ctx.mul(a, b)));
                }
            }
            cols.push(self.reduce(v));
        }
        Ok(self.columns_to_mat(cols))
    }

    pub fn generator_matrices(&self) -> Result<Vec<Mat<K::E>>, FusionError> {
        let n = self.strands();
        (1..n).map(|i| self.act(&Morphism::e(i, n)?)).collect()
    }

    /// Right composition by `η_{n,m} ∘ η_{m,n}`.
    pub fn monodromy_matrix(&self) -> Result<Mat<K::E>, FusionError> {
        let (m, n) = (self.left.n(), self.right.n());
        self.act_right(&(&commutor(n, m) * &commutor(m, n)))
    }

    /// `c_{m+n} (c_m ⊗ c_n)^{-1}`.
    pub fn twist_ratio_matrix(&self) -> Result<Mat<K::E>, FusionError> {
        let (m, n) = (self.left.n(), self.right.n());
        let c = self.act(&twist_element(m + n).value)?;
        let t = self.act_factors(&twist_element(m).value, &twist_element(n).value)?;
        let ti = linalg::inverse(&self.ctx, &t).ok_or_else(|| FusionError::EigenvalueMismatch("twist product".into()))?;
        Ok(linalg::mat_mul(&self.ctx, &c, &ti))
    }

    /// The defining relations of `TL_{m+n}` on the generator matrices.
    pub fn relations_hold(&self) -> Result<bool, FusionError> {
        let k = &self.ctx;
        let es = self.generator_matrices()?;
        for i in 0..es.len() {
            let sq = linalg::mat_mul(k, &es[i], &es[i]);
            if !linalg::mat_eq(k, &sq, &linalg::mat_scale(k, &self.beta, &es[i])) {
                return Ok(false);
            }
            for j in 0..es.len() {
                let ij = linalg::mat_mul(k, &es[i], &es[j]);
                let ok = if i.abs_diff(j) == 1 {
                    linalg::mat_eq(k, &linalg::mat_mul(k, &ij, &es[i]), &es[i])
                } else if i != j {
                    linalg::mat_eq(k, &ij, &linalg::mat_mul(k, &es[j], &es[i]))
                } else {
                    true
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn normalize<K: FieldCtx>(k: &K, mut v: Vec<(usize, K::E)>) -> Vec<(usize, K::E)> {
    v.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, K::E)> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = k.add(lx, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !k.is_zero(x));
    out
}

pub fn nullity<K: FieldCtx>(k: &K, a: &Mat<K::E>, lambda: &K::E) -> usize {
    a.len() - linalg::rank(k, &linalg::shift_diag(k, a, lambda))
}

/// Jordan block sizes of `a` at `λ`, largest first.
pub fn jordan_type<K: FieldCtx>(k: &K, a: &Mat<K::E>, lambda: &K::E) -> Result<Vec<usize>, FusionError> {
    let n = a.len();
    let shifted = linalg::shift_diag(k, a, lambda);
    let mut ranks = vec![n];
    let mut p = linalg::identity(k, n);
    loop {
        p = linalg::mat_mul(k, &p, &shifted);
        let r = linalg::rank(k, &p);
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
    }
    if ranks.len() == 1 {
        return Err(FusionError::EigenvalueMismatch(k.render(lambda)));
    }
    // blocks of size ≥ j: ranks[j-1] − ranks[j]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for j in 0..at_least.len() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..at_least[j] - next {
            blocks.push(j + 1);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    Ok(blocks)
}

/// `μ = γ_k / (γ_{k1} γ_{k2})`.
pub fn mu(k: usize, k1: usize, k2: usize) -> Scalar {
    let e = 2 * (k * (k + 2)) as i32 - 2 * (k1 * (k1 + 2)) as i32 - 2 * (k2 * (k2 + 2)) as i32;
    Scalar::s_pow(e)
}

/// `{|k1−k2|, |k1−k2|+2, …, k1+k2}` restricted to `k ≤ n`.
pub fn fusion_rule(n: usize, k1: usize, k2: usize) -> Vec<usize> {
    (k1.abs_diff(k2)..=(k1 + k2).min(n)).step_by(2).collect()
}

/// A random `s0 > 1` from the seed.
pub fn generic_point(seed: u64) -> RationalPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q: i64 = rng.gen_range(1..=7);
    let p: i64 = q + rng.gen_range(1..=20);
    RationalPoint { s0: BigRational::new(BigInt::from(p), BigInt::from(q)) }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summand {
    pub k: usize,
    pub multiplicity: usize,
    pub mu: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanEntry {
    pub lambda: String,
    pub symbolic: String,
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionTable {
    pub left: String,
    pub right: String,
    pub spec: String,
    pub point: String,
    pub dim: usize,
    pub summands: Vec<Summand>,
    pub jordan: Vec<JordanEntry>,
    pub routes_agree: bool,
    pub relations_hold: bool,
}

/// Distinct monodromy eigenvalue candidates `μ(k, k1, k2)` for the factors.
fn mu_candidates<K: FieldCtx>(ctx: &K, a: Factor, b: Factor) -> Result<Vec<(Scalar, K::E)>, FusionError> {
    let n = a.n() + b.n();
    let mut out: Vec<(Scalar, K::E)> = Vec::new();
    for k1 in a.labels() {
        for k2 in b.labels() {
            for k in fusion_rule(n, k1, k2) {
                let m = mu(k, k1, k2);
                let v = ctx.lift(&m)?;
                if !out.iter().any(|(_, w)| *w == v) {
                    out.push((m, v));
                }
            }
        }
    }
    Ok(out)
}

fn table_in<K: FieldCtx>(ctx: K, a: Factor, b: Factor, spec: &Specialization, generic: bool) -> Result<FusionTable, FusionError> {
    let fm = FusedModule::new(ctx, a.module()?, b.module()?)?;
    let k = fm.ctx();
    let n = fm.strands();
    let mono = fm.monodromy_matrix()?;
    let routes_agree = linalg::mat_eq(k, &mono, &fm.twist_ratio_matrix()?);
    let mut summands = Vec::new();
    if generic {
        let c = fm.act(&twist_element(n).value)?;
        let mut seen: Vec<(usize, K::E)> = Vec::new();
        for k1 in a.labels() {
            for k2 in b.labels() {
                for kk in fusion_rule(n, k1, k2) {
                    if summands.iter().any(|s: &Summand| s.k == kk) {
                        continue;
                    }
                    let g = k.lift(&gamma(kk))?;
                    if let Some((other, _)) = seen.iter().find(|(_, v)| *v == g) {
                        return Err(FusionError::AmbiguousEigenvalue(*other, kk));
                    }
                    seen.push((kk, g.clone()));
                    let mult = nullity(k, &c, &g) / LinkModule::dim_formula(n, kk);
                    summands.push(Summand { k: kk, multiplicity: mult, mu: mu(kk, k1, k2).to_text() });
                }
            }
        }
        summands.sort_by_key(|s| s.k);
    }
    let mut jordan = Vec::new();
    for (sym, v) in mu_candidates(k, a, b)? {
        if nullity(k, &mono, &v) == 0 {
            continue;
        }
        jordan.push(JordanEntry { lambda: k.render(&v), symbolic: sym.to_text(), blocks: jordan_type(k, &mono, &v)? });
    }
    Ok(FusionTable {
        left: a.to_string(),
        right: b.to_string(),
        spec: spec.to_string(),
        point: k.describe(),
        dim: fm.dim(),
        summands,
        jordan,
        routes_agree,
        relations_hold: fm.relations_hold()?,
    })
}

/// Fusion data for `a ×_f b`. Generic `q` is sampled at a seeded rational point.
pub fn fusion_table(a: Factor, b: Factor, spec: &Specialization, seed: u64) -> Result<FusionTable, FusionError> {
    match spec {
        Specialization::Generic => table_in(generic_point(seed), a, b, spec, true),
        Specialization::Rational(s0) => table_in(RationalPoint { s0: s0.clone() }, a, b, spec, true),
        Specialization::Cyclotomic { n, a: e } => table_in(CyclotomicPoint::new(*n, *e), a, b, spec, false),
        Specialization::Complex(_) => Err(FusionError::Unsupported(spec.to_string())),
    }
}

fn generic_cases<K: FieldCtx>(ctx: K, n1: usize, k1: usize, n2: usize, k2: usize) -> Result<Vec<CaseRecord>, FusionError> {
    let p = json!({ "n1": n1, "k1": k1, "n2": n2, "k2": k2, "point": ctx.describe() });
    let fm = FusedModule::new(ctx, LinkModule::standard(n1, k1)?, LinkModule::standard(n2, k2)?)?;
    let k = fm.ctx();
    let n = n1 + n2;
    let rule = fusion_rule(n, k1, k2);
    let want: usize = rule.iter().map(|&kk| LinkModule::dim_formula(n, kk)).sum();
    let mut out = vec![CaseRecord::check("dimension", p.clone(), fm.dim() == want, || {
        format!("dim {} expected {}", fm.dim(), want)
    })];
    out.push(CaseRecord::check("relations", p.clone(), fm.relations_hold()?, || "TL relations fail".into()));
    let c = fm.act(&twist_element(n).value)?;
    let mono = fm.monodromy_matrix()?;
    let mut spectrum = Vec::new();
    let mut mono_spectrum = Vec::new();
    for &kk in &rule {
        spectrum.push(nullity(k, &c, &k.lift(&gamma(kk))?));
        mono_spectrum.push(nullity(k, &mono, &k.lift(&mu(kk, k1, k2))?));
    }
    let dims: Vec<usize> = rule.iter().map(|&kk| LinkModule::dim_formula(n, kk)).collect();
    out.push(CaseRecord::check("c-spectrum", p.clone(), spectrum == dims, || {
        format!("eigenspace dims {:?} for k in {:?}, expected {:?}", spectrum, rule, dims)
    }));
    out.push(CaseRecord::check("monodromy-spectrum", p.clone(), mono_spectrum == dims, || {
        format!("eigenspace dims {:?} for k in {:?}, expected {:?}", mono_spectrum, rule, dims)
    }));
    let ratio = fm.twist_ratio_matrix()?;
    out.push(CaseRecord::check("monodromy-routes", p.clone(), linalg::mat_eq(k, &mono, &ratio), || {
        "commutor route differs from twist ratio".into()
    }));
    let commutes = fm.generator_matrices()?.iter().all(|e| {
        linalg::mat_eq(k, &linalg::mat_mul(k, &mono, e), &linalg::mat_mul(k, e, &mono))
    });
    out.push(CaseRecord::check("monodromy-natural", p, commutes, || "monodromy does not commute".into()));
    Ok(out)
}

/// All `S_{n1,k1} ×_f S_{n2,k2}` with `1 ≤ n1, n2` and `n1 + n2 ≤ max_total` at
/// a seeded rational point, symbolic confirmation of the smallest instances,
/// the unit law and `S_{k,k} ×_f S_{2,0} ≅ S_{k+2,k}`.
pub fn verify_fusion_generic(max_total: usize, seed: u64) -> Report {
    use rayon::prelude::*;
    let point = generic_point(seed);
    let mut report = Report::new("fusion-generic", json!({ "max_total": max_total, "point": point.describe() }));
    let mut labels = Vec::new();
    for n1 in 1..max_total {
        for n2 in 1..=max_total - n1 {
            for k1 in (n1 % 2..=n1).step_by(2) {
                for k2 in (n2 % 2..=n2).step_by(2) {
                    labels.push((n1, k1, n2, k2));
                }
            }
        }
    }
    let results: Vec<Vec<CaseRecord>> = labels
        .par_iter()
        .map(|&(n1, k1, n2, k2)| {
            generic_cases(point.clone(), n1, k1, n2, k2).unwrap_or_else(|e| {
                vec![CaseRecord::fail("build", json!({ "n1": n1, "k1": k1, "n2": n2, "k2": k2 }), e.to_string())]
            })
        })
        .collect();
    for r in results {
        report.extend(r);
    }
    for (n1, k1, n2, k2) in [(1, 1, 1, 1), (2, 2, 1, 1), (2, 0, 1, 1)] {
        match generic_cases(Symbolic, n1, k1, n2, k2) {
            Ok(cases) => report.extend(cases),
            Err(e) => report.push(CaseRecord::fail("symbolic", json!({ "n1": n1, "k1": k1, "n2": n2, "k2": k2 }), e.to_string())),
        }
    }
    report.push(CaseRecord::compare_text("mu-2-1-3", json!({ "k": 3, "k1": 2, "k2": 1 }), &mu(3, 2, 1), &Scalar::q_pow(2)));
    for n in 0..=max_total.min(4) {
        for k in (n % 2..=n).step_by(2) {
            let p = json!({ "n": n, "k": k });
            let unit = FusedModule::new(point.clone(), LinkModule::standard(0, 0).unwrap(), LinkModule::standard(n, k).unwrap());
            let dim = unit.as_ref().map(|f| f.dim()).map_err(|e| e.to_string());
            let want = LinkModule::dim_formula(n, k);
            report.push(CaseRecord::check("unit-law", p, dim == Ok(want), || format!("{:?} vs {}", dim, want)));
        }
    }
    for k in 0..=max_total.saturating_sub(2).min(3) {
        let p = json!({ "k": k });
        let res: Result<bool, FusionError> = (|| {
            let fm = FusedModule::new(point.clone(), LinkModule::standard(k, k)?, LinkModule::standard(2, 0)?)?;
            let c = fm.act(&twist_element(k + 2).value)?;
            let g = point.lift(&gamma(k))?;
            let d = LinkModule::dim_formula(k + 2, k);
            Ok(fm.dim() == d && nullity(&point, &c, &g) == d)
        })();
        report.push(CaseRecord::check("cup-induction", p, res == Ok(true), || format!("{:?}", res)));
    }
    report
}

/// The two root-of-unity examples: `S_{2,2} ×_f S_{1,1}` at `root:3` and
/// `End(2) ×_f End(2)` at `root:2`.
pub fn verify_fusion_roots() -> Report {
    let mut report = Report::new("fusion-roots", json!({}));
    let cases = [
        (Factor::Standard { n: 2, k: 2 }, Factor::Standard { n: 1, k: 1 }, 3u32, 3usize, Scalar::q_pow(2), vec![2, 1]),
        (Factor::Regular { n: 2 }, Factor::Regular { n: 2 }, 2, 14, Scalar::one(), vec![3, 3, 2, 2, 1, 1, 1, 1]),
    ];
    for (a, b, ell, dim, lambda, blocks) in cases {
        let sp = Specialization::root_of_unity(ell);
        let p = json!({ "left": a.to_string(), "right": b.to_string(), "spec": format!("root:{}", ell) });
        let t = match fusion_table(a, b, &sp, 0) {
            Ok(t) => t,
            Err(e) => {
                report.push(CaseRecord::fail("build", p, e.to_string()));
                continue;
            }
        };
        report.push(CaseRecord::compare_text("dimension", p.clone(), &t.dim, &dim));
        report.push(CaseRecord::check("relations", p.clone(), t.relations_hold, || "TL relations fail".into()));
        report.push(CaseRecord::check("monodromy-routes", p.clone(), t.routes_agree, || "routes differ".into()));
        let ctx = match sp {
            Specialization::Cyclotomic { n, a } => CyclotomicPoint::new(n, a),
            _ => unreachable!(),
        };
        let want = ctx.render(&ctx.lift(&lambda).unwrap());
        let sole = t.jordan.len() == 1 && t.jordan[0].lambda == want;
        report.push(CaseRecord::check("sole-eigenvalue", p.clone(), sole, || {
            format!("eigenvalues {:?}, expected {}", t.jordan.iter().map(|j| &j.lambda).collect::<Vec<_>>(), want)
        }));
        let got = t.jordan.first().map(|j| j.blocks.clone()).unwrap_or_default();
        report.push(CaseRecord::check("jordan-type", p, got == blocks, || format!("{:?} expected {:?}", got, blocks)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_of_identity_and_block() {
        let k = RationalPoint { s0: BigRational::from_integer(2.into()) };
        let one = k.one();
        let id = linalg::identity(&k, 3);
        assert_eq!(jordan_type(&k, &id, &one).unwrap(), vec![1, 1, 1]);
        let mut j = linalg::identity(&k, 3);
        j[0][1] = one.clone();
        assert_eq!(jordan_type(&k, &j, &one).unwrap(), vec![2, 1]);
        assert!(jordan_type(&k, &id, &k.zero()).is_err());
    }

    #[test]
    fn s11_times_s11() {
        let t = fusion_table(Factor::Standard { n: 1, k: 1 }, Factor::Standard { n: 1, k: 1 }, &Specialization::Generic, 1).unwrap();
        assert_eq!(t.dim, 2);
        assert_eq!(t.summands.iter().map(|s| (s.k, s.multiplicity)).collect::<Vec<_>>(), vec![(0, 1), (2, 1)]);
        assert_eq!(t.summands[0].mu, Scalar::q_pow(-3).to_text());
        assert_eq!(t.summands[1].mu, Scalar::q_pow(1).to_text());
        assert!(t.routes_agree && t.relations_hold);
    }

    #[test]
    fn factor_parse() {
        assert_eq!("S2,1".parse::<Factor>(), Err(FusionError::Repr(ReprError::BadLabel { n: 2, k: 1 })));
        assert_eq!("End3".parse::<Factor>().unwrap(), Factor::Regular { n: 3 });
        assert_eq!("S3,1".parse::<Factor>().unwrap().to_string(), "S3,1");
    }

    #[test]
    fn generic_small() {
        let r = verify_fusion_generic(4, 7);
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn roots() {
        let r = verify_fusion_roots();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
