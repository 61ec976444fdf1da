//! Named verification suites, as run by the command line and the
//! acceptance harness.

use std::fmt;
use std::str::FromStr;

use num::integer::binomial;
use serde_json::json;

use crate::braid::{self, Family};
use crate::diagram::Diagram;
use crate::dilute;
use crate::fusion::{self, Factor};
use crate::integrable;
use crate::morphism::Morphism;
use crate::repr::{self, LinkModule};
use crate::report::{CaseRecord, Report};
use crate::scalar::{Scalar, Specialization};
use crate::twist;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tl,
    Combinatorics,
    Braid,
    Twist,
    Repr,
    Fusion,
    Integrable,
    Dilute,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = ["tl", "combinatorics", "braid", "twist", "repr", "fusion", "integrable", "dilute", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tl => "tl",
            Suite::Combinatorics => "combinatorics",
            Suite::Braid => "braid",
            Suite::Twist => "twist",
            Suite::Repr => "repr",
            Suite::Fusion => "fusion",
            Suite::Integrable => "integrable",
            Suite::Dilute => "dilute",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let all = [
            Suite::Tl,
            Suite::Combinatorics,
            Suite::Braid,
            Suite::Twist,
            Suite::Repr,
            Suite::Fusion,
            Suite::Integrable,
            Suite::Dilute,
            Suite::All,
        ];
        all.into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{}` (expected one of {})", s, Suite::NAMES.join(", ")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Largest strand count; each suite caps it at what stays tractable.
    pub max_n: usize,
    pub spec: Specialization,
    pub seed: u64,
    /// Random diagram pairs for naturality beyond the exhaustive range.
    pub random: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_n: 6, spec: Specialization::Generic, seed: 0, random: 200 }
    }
}

/// `e_i² = β e_i`, `e_i e_{i±1} e_i = e_i`, far commutation, and `t_i t_i^{-1} = 1`.
pub fn verify_tl_relations(max_n: usize) -> Report {
    let mut report = Report::new("tl-relations", json!({ "max_n": max_n }));
    for n in 2..=max_n {
        for i in 1..n {
            let ei = Morphism::e(i, n).unwrap();
            let p = json!({ "n": n, "i": i });
            report.push(CaseRecord::compare("e-squared", p.clone(), &(&ei * &ei), &ei.scale(&Scalar::beta())));
            let ti = Morphism::t(i, n).unwrap();
            let id = Morphism::identity(n, false);
            report.push(CaseRecord::compare("t-inverse", p, &(&ti * &Morphism::t_inv(i, n).unwrap()), &id));
            for j in 1..n {
                let ej = Morphism::e(j, n).unwrap();
                let p = json!({ "n": n, "i": i, "j": j });
                if i.abs_diff(j) == 1 {
                    report.push(CaseRecord::compare("e-adjacent", p, &(&(&ei * &ej) * &ei), &ei));
                } else if i.abs_diff(j) > 1 {
                    report.push(CaseRecord::compare("e-far", p, &(&ei * &ej), &(&ej * &ei)));
                }
            }
        }
    }
    report
}

fn catalan(n: usize) -> usize {
    binomial(2 * n, n) / (n + 1)
}

/// Basis counts of `End(n)` and `S_{n,k}` from enumeration against closed forms.
pub fn verify_combinatorics(max_n: usize) -> Report {
    let mut report = Report::new("combinatorics", json!({ "max_n": max_n }));
    for n in 0..=max_n {
        let got = Diagram::enumerate(n, n, false, None).len();
        report.push(CaseRecord::compare_text("catalan", json!({ "n": n }), &got, &catalan(n)));
        for k in (n % 2..=n).step_by(2) {
            let j = (n - k) / 2;
            let want = binomial(n, j) - if j > 0 { binomial(n, j - 1) } else { 0 };
            let got = LinkModule::standard(n, k).map(|m| m.dim()).unwrap_or(usize::MAX);
            report.push(CaseRecord::compare_text("standard-dim", json!({ "n": n, "k": k }), &got, &want));
        }
    }
    report
}

pub fn braid_suite(o: &SuiteOptions) -> Report {
    let n = o.max_n;
    let mut report = Report::new("braid", json!({ "max_n": n, "seed": o.seed, "random": o.random }));
    report.absorb(braid::verify_hexagons(n, Family::Ordinary));
    report.absorb(braid::verify_naturality(n, o.random, o.seed, Family::Ordinary));
    report.absorb(braid::verify_commutor_lemmas(n));
    report.absorb(braid::verify_braid_relations(n.max(3)));
    report.absorb(braid::verify_noncentral_witness());
    report
}

pub fn twist_suite(o: &SuiteOptions) -> Report {
    let n = o.max_n;
    let small = n.saturating_sub(1).max(2);
    let mut report = Report::new("twist", json!({ "max_n": n }));
    for k in 1..=n {
        report.absorb(twist::verify_centrality(k));
    }
    report.absorb(twist::verify_twist_axiom(n));
    report.absorb(twist::verify_twist_naturality(small));
    for k in 3..=small {
        report.absorb(twist::verify_cyclic_lemma(k));
    }
    report.absorb(twist::verify_cup_fixing(n / 2));
    report.absorb(twist::verify_gamma(n));
    report.absorb(twist::verify_det_t1(small));
    report
}

pub fn repr_suite(o: &SuiteOptions) -> Report {
    let n = o.max_n;
    let mut report = Report::new("repr", json!({ "max_n": n }));
    report.absorb(repr::verify_rigidity(n.min(4), n.saturating_sub(1).clamp(2, 5), n.min(3)));
    report
}

/// Generic and rational points run the full fusion checks. A root of unity
/// builds every table up to `max_n` and adds the worked examples for `root:2`
/// and `root:3`.
pub fn fusion_suite(o: &SuiteOptions) -> Report {
    let n = o.max_n;
    let mut report = Report::new("fusion", json!({ "max_n": n, "spec": o.spec.to_string(), "seed": o.seed }));
    match &o.spec {
        Specialization::Generic => report.absorb(fusion::verify_fusion_generic(n, o.seed)),
        Specialization::Cyclotomic { .. } => {
            for (a, b) in factor_pairs(n) {
                let p = json!({ "left": a.to_string(), "right": b.to_string(), "spec": o.spec.to_string() });
                match fusion::fusion_table(a, b, &o.spec, o.seed) {
                    Ok(t) => {
                        report.push(CaseRecord::check("relations", p.clone(), t.relations_hold, || "TL relations fail".into()));
                        report.push(CaseRecord::check("monodromy-routes", p, t.routes_agree, || "routes differ".into()));
                    }
                    Err(e) => report.push(CaseRecord::fail("build", p, e.to_string())),
                }
            }
            if let Some(ell) = [2u32, 3].into_iter().find(|&l| Specialization::root_of_unity(l) == o.spec) {
                let tag = format!("root:{}", ell);
                let roots = fusion::verify_fusion_roots();
                report.extend(roots.cases.into_iter().filter(|c| c.parameters["spec"] == tag.as_str()));
            }
        }
        _ => {
            for (a, b) in factor_pairs(n) {
                let p = json!({ "left": a.to_string(), "right": b.to_string(), "spec": o.spec.to_string() });
                match fusion::fusion_table(a, b, &o.spec, o.seed) {
                    Ok(t) => {
                        let (k1, k2) = (a.labels()[0], b.labels()[0]);
                        let want: Vec<usize> = fusion::fusion_rule(a.n() + b.n(), k1, k2);
                        let got: Vec<usize> = t.summands.iter().filter(|s| s.multiplicity > 0).map(|s| s.k).collect();
                        report.push(CaseRecord::check("summands", p.clone(), got == want, || format!("{:?} expected {:?}", got, want)));
                        report.push(CaseRecord::check("relations", p.clone(), t.relations_hold, || "TL relations fail".into()));
                        report.push(CaseRecord::check("monodromy-routes", p, t.routes_agree, || "routes differ".into()));
                    }
                    Err(e) => report.push(CaseRecord::fail("build", p, e.to_string())),
                }
            }
        }
    }
    report
}

fn factor_pairs(max_total: usize) -> Vec<(Factor, Factor)> {
    let mut out = vec![];
    for n1 in 1..max_total {
        for n2 in 1..=max_total - n1 {
            for k1 in (n1 % 2..=n1).step_by(2) {
                for k2 in (n2 % 2..=n2).step_by(2) {
                    out.push((Factor::Standard { n: n1, k: k1 }, Factor::Standard { n: n2, k: k2 }));
                }
            }
        }
    }
    out
}

/// Symbolic transfer commutation up to three sites, the four-site grid once
/// `max_n ≥ 4`.
pub fn integrable_suite(o: &SuiteOptions) -> Report {
    let grid = (o.max_n >= 4).then_some(4);
    integrable::verify_integrability(o.max_n.clamp(2, 3), grid)
}

pub fn dilute_suite(o: &SuiteOptions) -> Report {
    let mut report = Report::new("dilute", json!({ "max_n": o.max_n, "seed": o.seed }));
    report.absorb(dilute::verify_dilute_braiding(o.max_n.min(4), o.random, o.seed));
    report.absorb(integrable::verify_dilute_faces());
    report
}

pub fn run(suite: Suite, o: &SuiteOptions) -> Report {
    match suite {
        Suite::Tl => verify_tl_relations(o.max_n),
        Suite::Combinatorics => verify_combinatorics(o.max_n.max(8)),
        Suite::Braid => braid_suite(o),
        Suite::Twist => twist_suite(o),
        Suite::Repr => repr_suite(o),
        Suite::Fusion => fusion_suite(o),
        Suite::Integrable => integrable_suite(o),
        Suite::Dilute => dilute_suite(o),
        Suite::All => {
            let mut report = Report::new("all", json!({ "max_n": o.max_n, "spec": o.spec.to_string(), "seed": o.seed }));
            for s in [
                Suite::Tl,
                Suite::Combinatorics,
                Suite::Braid,
                Suite::Twist,
                Suite::Repr,
                Suite::Fusion,
                Suite::Integrable,
                Suite::Dilute,
            ] {
                report.absorb(run(s, o));
            }
            report
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().name(), n);
        }
        assert!("knots".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let o = SuiteOptions { max_n: 4, random: 10, ..Default::default() };
        for s in [Suite::Tl, Suite::Combinatorics, Suite::Braid, Suite::Repr] {
            let r = run(s, &o);
            assert!(r.all_pass(), "{} {:?}", s, r.failures().next());
        }
    }
}
