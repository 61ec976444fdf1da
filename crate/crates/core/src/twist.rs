//! The twist: central elements `c_n` and their properties.

use rayon::prelude::*;
use serde_json::json;

use crate::braid::{commutor, commutor_inv, word_product, Family};
use crate::diagram::Diagram;
use crate::linalg::{self, Symbolic};
use crate::morphism::Morphism;
use crate::repr::{self, gamma, LinkModule};
use crate::report::{CaseRecord, Report};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct TwistElement {
    pub n: usize,
    pub value: Morphism,
}

/// Whether `c_n` carries the `q^{3n/2}` prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prefactor {
    #[default]
    Keep,
    Drop,
}

fn prefactor(n: usize, p: Prefactor) -> Scalar {
    match p {
        Prefactor::Keep => Scalar::s_pow(6 * n as i32),
        Prefactor::Drop => Scalar::one(),
    }
}

fn id(n: usize) -> Morphism {
    Morphism::identity(n, false)
}

fn e(i: usize, n: usize) -> Morphism {
    Morphism::e(i, n).expect("index in range")
}

/// `ρ_n = t_1 t_2 … t_{n-1}`.
pub fn rho(n: usize) -> Morphism {
    let w: Vec<usize> = (1..n).collect();
    word_product(&w, n, false, Family::Ordinary)
}

pub fn rho_inv(n: usize) -> Morphism {
    let w: Vec<usize> = (1..n).rev().collect();
    word_product(&w, n, true, Family::Ordinary)
}

/// `λ_n = t_{n-1} … t_2 t_1`.
pub fn lambda(n: usize) -> Morphism {
    let w: Vec<usize> = (1..n).rev().collect();
    word_product(&w, n, false, Family::Ordinary)
}

pub fn lambda_inv(n: usize) -> Morphism {
    let w: Vec<usize> = (1..n).collect();
    word_product(&w, n, true, Family::Ordinary)
}

/// `e_n = ρ_n e_{n-1} ρ_n^{-1}`, the generator joining the last and first strands.
pub fn en(n: usize) -> Morphism {
    assert!(n >= 3, "e_n needs at least 3 strands");
    &(&rho(n) * &e(n - 1, n)) * &rho_inv(n)
}

/// `e_0 = λ_n e_1 λ_n^{-1}`.
pub fn e0(n: usize) -> Morphism {
    assert!(n >= 3, "e_0 needs at least 3 strands");
    &(&lambda(n) * &e(1, n)) * &lambda_inv(n)
}

/// `c_n = q^{3n/2} ρ_n^n`.
pub fn twist_element(n: usize) -> TwistElement {
    twist_element_with(n, Prefactor::Keep)
}

pub fn twist_element_with(n: usize, p: Prefactor) -> TwistElement {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<usize, Morphism>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let cached = cache.lock().unwrap().get(&n).cloned();
    let bare = cached.unwrap_or_else(|| {
        let m = rho(n).pow(n).expect("endomorphism");
        cache.lock().unwrap().insert(n, m.clone());
        m
    });
    TwistElement { n, value: bare.scale(&prefactor(n, p)) }
}

/// `y_n = q^{3n/2} λ_n^n`.
pub fn y_element(n: usize) -> Morphism {
    lambda(n).pow(n).expect("endomorphism").scale(&prefactor(n, Prefactor::Keep))
}

/// `c_n^{-1} = q^{-3n/2} (ρ_n^{-1})^n`.
pub fn twist_inverse(n: usize) -> Morphism {
    rho_inv(n).pow(n).expect("endomorphism").scale(&Scalar::s_pow(-6 * n as i32))
}

fn c(n: usize) -> Morphism {
    twist_element(n).value
}

/// `c_n e_i = e_i c_n` for every `i`, and `c_n c_n^{-1} = 1`.
pub fn verify_centrality(n: usize) -> Report {
    let mut report = Report::new("centrality", json!({ "n": n }));
    let cn = c(n);
    report.extend((1..n).into_par_iter().map(|i| {
        let ei = e(i, n);
        CaseRecord::compare("central", json!({ "n": n, "i": i }), &(&cn * &ei), &(&ei * &cn))
    }).collect::<Vec<_>>());
    report.push(CaseRecord::compare("inverse", json!({ "n": n }), &(&cn * &twist_inverse(n)), &id(n)));
    report.push(CaseRecord::compare("rho-lambda", json!({ "n": n }), &cn, &y_element(n)));
    report
}

/// The twist condition `c_{r+s} = η_{s,r} η_{r,s} (c_r ⊗ c_s)`, the recursion
/// `c_{n+1} = η_{n,1} η_{1,n} (c_1 ⊗ c_n)`, and the two commutor
/// re-bracketings, for `r + s ≤ max_total`.
pub fn verify_twist_axiom(max_total: usize) -> Report {
    let mut report = Report::new("twist-axiom", json!({ "max_total": max_total }));
    let pairs: Vec<(usize, usize)> = (0..=max_total).flat_map(|t| (0..=t).map(move |r| (r, t - r))).collect();
    report.extend(pairs.par_iter().flat_map_iter(|&(r, s)| {
        let mut out = Vec::new();
        let p = json!({ "r": r, "s": s });
        let lhs = c(r + s);
        let rhs = &(&commutor(s, r) * &commutor(r, s)) * &c(r).tensor(&c(s)).unwrap();
        out.push(CaseRecord::compare("twist-condition", p.clone(), &lhs, &rhs));
        if r == 1 {
            let rhs = &(&commutor(s, 1) * &commutor(1, s)) * &c(1).tensor(&c(s)).unwrap();
            out.push(CaseRecord::compare("twist-recursion", json!({ "n": s }), &lhs, &rhs));
        }
        if r >= 1 {
            let a = &commutor(s + 1, r - 1) * &commutor(s, 1).tensor(&id(r - 1)).unwrap();
            let b = &commutor(s, r) * &id(s).tensor(&commutor(1, r - 1)).unwrap();
            out.push(CaseRecord::compare("commutor-shift-right", p.clone(), &a, &b));
            let a = &commutor(r - 1, s + 1) * &id(r - 1).tensor(&commutor(1, s)).unwrap();
            let b = &commutor(r, s) * &commutor(r - 1, 1).tensor(&id(s)).unwrap();
            out.push(CaseRecord::compare("commutor-shift-left", p, &a, &b));
        }
        out
    }).collect::<Vec<_>>());
    report
}

/// Cyclic conjugation by `ρ_n` and `λ_n`, and the relations of `e_0`, `e_n`.
pub fn verify_cyclic_lemma(n: usize) -> Report {
    let mut report = Report::new("cyclic-lemma", json!({ "n": n }));
    if n < 3 {
        return report;
    }
    let (r, ri, l, li) = (rho(n), rho_inv(n), lambda(n), lambda_inv(n));
    let conj = |a: &Morphism, x: &Morphism, b: &Morphism| &(a * x) * b;
    let (e_n, e_0) = (en(n), e0(n));
    let beta = Scalar::beta();
    let p = |i: usize| json!({ "n": n, "i": i });
    report.push(CaseRecord::compare("rho-lambda-inverse", p(0), &(&r * &ri), &id(n)));
    report.push(CaseRecord::compare("lambda-rho-inverse", p(0), &(&l * &li), &id(n)));
    for i in 1..n - 1 {
        report.push(CaseRecord::compare("rho-shift", p(i), &conj(&r, &e(i, n), &ri), &e(i + 1, n)));
    }
    for i in 2..n {
        report.push(CaseRecord::compare("lambda-shift", p(i), &conj(&l, &e(i, n), &li), &e(i - 1, n)));
    }
    report.push(CaseRecord::compare("rho-wrap", p(n), &conj(&r, &e_n, &ri), &e(1, n)));
    report.push(CaseRecord::compare("lambda-wrap", p(0), &conj(&l, &e_0, &li), &e(n - 1, n)));
    report.push(CaseRecord::compare("rho-into-e_n", p(n - 1), &conj(&r, &e(n - 1, n), &ri), &e_n));
    report.push(CaseRecord::compare("lambda-into-e_0", p(1), &conj(&l, &e(1, n), &li), &e_0));
    let em = e(n - 1, n);
    let e1 = e(1, n);
    report.push(CaseRecord::compare("e_n-square", p(n), &(&e_n * &e_n), &e_n.scale(&beta)));
    report.push(CaseRecord::compare("e_0-square", p(0), &(&e_0 * &e_0), &e_0.scale(&beta)));
    report.push(CaseRecord::compare("e_n-sandwich-left", p(n), &(&(&em * &e_n) * &em), &em));
    report.push(CaseRecord::compare("e_n-sandwich-right", p(n), &(&(&e_n * &em) * &e_n), &e_n));
    report.push(CaseRecord::compare("e_0-sandwich-left", p(0), &(&(&e_0 * &e1) * &e_0), &e_0));
    report.push(CaseRecord::compare("e_0-sandwich-right", p(0), &(&(&e1 * &e_0) * &e1), &e1));
    report
}

/// `c_dst ∘ f = f ∘ c_src`.
pub fn twist_naturality_check(f: &Morphism) -> Report {
    let mut report = Report::new("twist-naturality", json!({ "dst": f.dst(), "src": f.src() }));
    report.push(naturality_case(f));
    report
}

fn naturality_case(f: &Morphism) -> CaseRecord {
    let p = json!({ "f": f.to_text() });
    let lhs = &c(f.dst()) * f;
    let rhs = f * &c(f.src());
    CaseRecord::compare("twist-natural", p, &lhs, &rhs)
}

/// Naturality for every ordinary diagram with `src, dst ≤ max`.
pub fn verify_twist_naturality(max: usize) -> Report {
    let mut report = Report::new("twist-naturality", json!({ "max": max }));
    let mut shapes = Vec::new();
    for a in 0..=max {
        for b in (a % 2..=max).step_by(2) {
            shapes.push((a, b));
        }
    }
    for (a, b) in shapes {
        let ds = Diagram::enumerate(a, b, false, None);
        report.extend(ds.par_iter().map(|d| naturality_case(&Morphism::from_diagram(d.clone()))).collect::<Vec<_>>());
    }
    report
}

/// `c_{2p} ∘ z^{⊗p} = z^{⊗p}`.
pub fn verify_cup_fixing(max_p: usize) -> Report {
    let mut report = Report::new("cup-fixing", json!({ "max_p": max_p }));
    for p in 0..=max_p {
        let z = Morphism::from_diagram(Diagram::cups_below(0, p));
        report.push(CaseRecord::compare("cup-fixed", json!({ "p": p }), &(&c(2 * p) * &z), &z));
    }
    report
}

/// `c_n` acts on `S_{n,k}` as `γ_{n,k} = q^{k(k+2)/2}`.
pub fn verify_gamma(max_n: usize) -> Report {
    let mut report = Report::new("gamma", json!({ "max_n": max_n }));
    let labels: Vec<(usize, usize)> = (0..=max_n).flat_map(|n| (n % 2..=n).step_by(2).map(move |k| (n, k))).collect();
    report.extend(labels.par_iter().map(|&(n, k)| {
        let m = LinkModule::standard(n, k).unwrap();
        let p = json!({ "n": n, "k": k });
        match repr::eigenvalue_on_standard(&c(n), &m) {
            Ok(g) => CaseRecord::compare_text("gamma", p, &g, &gamma(k)),
            Err(e) => CaseRecord::fail("gamma", p, e.to_string()),
        }
    }).collect::<Vec<_>>());
    report
}

/// `det(t_1 on S_{n,k}) = q^{dim S_{n,k}/2} (−q^{-2})^{dim S_{n-2,k}}`.
pub fn expected_det_t1(n: usize, k: usize) -> Scalar {
    let d = LinkModule::dim_formula(n, k) as i32;
    let d2 = if n >= 2 { LinkModule::dim_formula(n - 2, k) as i32 } else { 0 };
    let sign = if d2 % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    &sign * &Scalar::s_pow(2 * d - 8 * d2)
}

pub fn det_t1(n: usize, k: usize) -> Scalar {
    let m = LinkModule::standard(n, k).expect("valid label");
    let a = repr::act_end(&Morphism::t(1, n).unwrap(), &m).unwrap();
    linalg::determinant(&Symbolic, &a)
}

pub fn verify_det_t1(max_n: usize) -> Report {
    let mut report = Report::new("det-t1", json!({ "max_n": max_n }));
    for n in 2..=max_n {
        for k in (n % 2..=n).step_by(2) {
            report.push(CaseRecord::compare_text("det-t1", json!({ "n": n, "k": k }), &det_t1(n, k), &expected_det_t1(n, k)));
        }
    }
    report
}

/// `η_{n,m}` is invertible with the reversed inverse word; used by callers that
/// need the inverse monodromy.
pub fn monodromy_inverse(n: usize, m: usize) -> Morphism {
    &commutor_inv(m, n) * &commutor_inv(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_twists() {
        assert_eq!(c(0), id(0));
        assert_eq!(c(1), id(1).scale(&Scalar::s_pow(6)));
        let t = Morphism::t(1, 2).unwrap();
        assert_eq!(c(2), (&t * &t).scale(&Scalar::q_pow(3)));
    }

    #[test]
    fn c2_expanded() {
        // q^3 (q^{1/2} + q^{-1/2} e)^2 = q^4 + q^3 (2 + β) e with β e^2 = β e folded in.
        let e1 = e(1, 2);
        let coeff = &Scalar::q_pow(3) * &(&Scalar::from_int(2) + &(&Scalar::q_pow(-1) * &Scalar::beta()));
        let expect = id(2).scale(&Scalar::q_pow(4)) + e1.scale(&coeff);
        assert_eq!(c(2), expect);
    }

    #[test]
    fn centrality_and_axiom_small() {
        for n in 0..=4 {
            assert!(verify_centrality(n).all_pass());
        }
        let r = verify_twist_axiom(4);
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn cyclic_small() {
        for n in 3..=4 {
            let r = verify_cyclic_lemma(n);
            assert!(r.all_pass(), "{:?}", r.failures().next());
        }
    }

    #[test]
    fn gamma_det_fixing() {
        assert!(verify_gamma(4).all_pass());
        let r = verify_det_t1(4);
        assert!(r.all_pass(), "{:?}", r.failures().next());
        assert!(verify_cup_fixing(2).all_pass());
        assert!(verify_twist_naturality(3).all_pass());
    }

    #[test]
    fn drop_prefactor() {
        assert_eq!(twist_element_with(1, Prefactor::Drop).value, id(1));
    }
}
