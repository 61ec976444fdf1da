//! The commutor `η_{r,s}` and the braiding identities.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::diagram::Diagram;
use crate::dilute;
use crate::morphism::Morphism;
use crate::report::{CaseRecord, Report};
use crate::scalar::Scalar;

/// Ordinary or dilute diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ordinary,
    Dilute,
}

impl Family {
    pub fn is_dilute(self) -> bool {
        self == Family::Dilute
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ordinary => "ordinary",
            Family::Dilute => "dilute",
        }
    }
}

/// The two closed forms of the commutor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommutorForm {
    /// `∏_{i=1}^{s} ∏_{j=r-1}^{0} t_{i+j}`
    LeftNested,
    /// `∏_{i=r}^{1} ∏_{j=0}^{s-1} t_{i+j}`
    RightNested,
}

/// `t_i(n) = 1_{i-1} ⊗ η_{1,1} ⊗ 1_{n-i-1}`.
pub fn crossing(i: usize, n: usize, family: Family) -> Morphism {
    match family {
        Family::Ordinary => Morphism::t(i, n).expect("crossing index in range"),
        Family::Dilute => dilute::t(i, n, false),
    }
}

pub fn crossing_inv(i: usize, n: usize, family: Family) -> Morphism {
    match family {
        Family::Ordinary => Morphism::t_inv(i, n).expect("crossing index in range"),
        Family::Dilute => dilute::t(i, n, true),
    }
}

/// Crossing indices of `η_{r,s}`, leftmost factor first.
pub fn commutor_word(r: usize, s: usize, form: CommutorForm) -> Vec<usize> {
    let mut w = Vec::with_capacity(r * s);
    match form {
        CommutorForm::LeftNested => {
            for i in (1..=s).rev() {
                for j in 0..r {
                    w.push(i + j);
                }
            }
        }
        CommutorForm::RightNested => {
            for i in 1..=r {
                for j in (0..s).rev() {
                    w.push(i + j);
                }
            }
        }
    }
    w
}

/// Product of crossings (or inverse crossings) along a word.
pub fn word_product(word: &[usize], n: usize, inverse: bool, family: Family) -> Morphism {
    let mut acc = Morphism::identity(n, family.is_dilute());
    for &i in word {
        let t = if inverse { crossing_inv(i, n, family) } else { crossing(i, n, family) };
        acc = &acc * &t;
    }
    acc
}

pub fn commutor_form(r: usize, s: usize, form: CommutorForm, family: Family) -> Morphism {
    word_product(&commutor_word(r, s, form), r + s, false, family)
}

type Key = (usize, usize, Family, bool);

fn cached(key: Key) -> Morphism {
    static CACHE: OnceLock<Mutex<HashMap<Key, Morphism>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&key) {
        return m.clone();
    }
    let (r, s, family, inverse) = key;
    let m = if inverse {
        let mut w = commutor_word(r, s, CommutorForm::LeftNested);
        w.reverse();
        word_product(&w, r + s, true, family)
    } else {
        commutor_form(r, s, CommutorForm::LeftNested, family)
    };
    cache.lock().unwrap().insert(key, m.clone());
    m
}

/// `η_{r,s} ∈ End(r+s)`.
pub fn commutor(r: usize, s: usize) -> Morphism {
    cached((r, s, Family::Ordinary, false))
}

/// `η_{r,s}^{-1}`, the reversed product of inverse crossings.
pub fn commutor_inv(r: usize, s: usize) -> Morphism {
    cached((r, s, Family::Ordinary, true))
}

pub fn commutor_in(r: usize, s: usize, family: Family) -> Morphism {
    cached((r, s, family, false))
}

pub fn commutor_inv_in(r: usize, s: usize, family: Family) -> Morphism {
    cached((r, s, family, true))
}

fn id(n: usize, family: Family) -> Morphism {
    Morphism::identity(n, family.is_dilute())
}

fn tensor(a: &Morphism, b: &Morphism) -> Morphism {
    a.tensor(b).expect("same family")
}

/// Closed-form agreement, inverses and both hexagons for all sizes up to
/// `max_total` strands.
pub fn verify_hexagons(max_total: usize, family: Family) -> Report {
    let mut report = Report::new("hexagons", json!({ "max_total": max_total, "family": family.name() }));
    let pairs: Vec<(usize, usize)> = (0..=max_total)
        .flat_map(|t| (0..=t).map(move |r| (r, t - r)))
        .collect();
    report.extend(pairs.par_iter().flat_map_iter(|&(r, s)| {
        let p = json!({ "r": r, "s": s });
        let a = commutor_form(r, s, CommutorForm::LeftNested, family);
        let b = commutor_form(r, s, CommutorForm::RightNested, family);
        let prod = &commutor_in(r, s, family) * &commutor_inv_in(r, s, family);
        vec![
            CaseRecord::compare("closed-forms-agree", p.clone(), &a, &b),
            CaseRecord::compare("commutor-inverse", p, &prod, &id(r + s, family)),
        ]
    }).collect::<Vec<_>>());

    let triples: Vec<(usize, usize, usize)> = (0..=max_total)
        .flat_map(|a| (0..=max_total - a).flat_map(move |b| (0..=max_total - a - b).map(move |c| (a, b, c))))
        .collect();
    report.extend(triples.par_iter().flat_map_iter(|&(n, m, k)| {
        let eta = |a, b| commutor_in(a, b, family);
        // η_{n,m+k} = (1_m ⊗ η_{n,k}) ∘ (η_{n,m} ⊗ 1_k)
        let lhs1 = eta(n, m + k);
        let rhs1 = &tensor(&id(m, family), &eta(n, k)) * &tensor(&eta(n, m), &id(k, family));
        // η_{u+v,w} = (η_{u,w} ⊗ 1_v) ∘ (1_u ⊗ η_{v,w}) with (u,v,w) = (n,m,k)
        let lhs2 = eta(n + m, k);
        let rhs2 = &tensor(&eta(n, k), &id(m, family)) * &tensor(&id(n, family), &eta(m, k));
        vec![
            CaseRecord::compare("hexagon-1", json!({ "n": n, "m": m, "k": k }), &lhs1, &rhs1),
            CaseRecord::compare("hexagon-2", json!({ "u": n, "v": m, "w": k }), &lhs2, &rhs2),
        ]
    }).collect::<Vec<_>>());
    report
}

/// `η_{r,s}(c ⊗ d) = (d ⊗ c) η_{n,m}` for a single pair.
pub fn naturality_holds(c: &Diagram, d: &Diagram, family: Family) -> (Morphism, Morphism) {
    let (r, n) = (c.dst(), c.src());
    let (s, m) = (d.dst(), d.src());
    let cm = Morphism::from_diagram(c.clone());
    let dm = Morphism::from_diagram(d.clone());
    let lhs = &commutor_in(r, s, family) * &tensor(&cm, &dm);
    let rhs = &tensor(&dm, &cm) * &commutor_in(n, m, family);
    (lhs, rhs)
}

fn naturality_block(r: usize, n: usize, s: usize, m: usize, family: Family) -> CaseRecord {
    let cs = Diagram::enumerate(r, n, family.is_dilute(), None);
    let ds = Diagram::enumerate(s, m, family.is_dilute(), None);
    let p = json!({ "r": r, "n": n, "s": s, "m": m, "pairs": cs.len() * ds.len() });
    for c in cs.iter() {
        for d in ds.iter() {
            let (lhs, rhs) = naturality_holds(c, d, family);
            if lhs != rhs {
                let mut rec = CaseRecord::compare("naturality", p, &lhs, &rhs);
                rec.diff = Some(format!("c = {}, d = {}; {}", c, d, rec.diff.unwrap_or_default()));
                return rec;
            }
        }
    }
    CaseRecord::pass("naturality", p)
}

/// Naturality over every pair of diagram shapes with `r+s, n+m ≤ max_total`,
/// plus `random` pairs drawn from the next two sizes.
pub fn verify_naturality(max_total: usize, random: usize, seed: u64, family: Family) -> Report {
    let mut report = Report::new(
        "naturality",
        json!({ "max_total": max_total, "random": random, "seed": seed, "family": family.name() }),
    );
    let parity_ok = |a: usize, b: usize| family.is_dilute() || (a + b) % 2 == 0;
    let mut blocks = Vec::new();
    for r in 0..=max_total {
        for s in 0..=max_total - r {
            for n in 0..=max_total {
                for m in 0..=max_total - n {
                    if parity_ok(r, n) && parity_ok(s, m) {
                        blocks.push((r, n, s, m));
                    }
                }
            }
        }
    }
    report.extend(
        blocks
            .par_iter()
            .map(|&(r, n, s, m)| naturality_block(r, n, s, m, family))
            .collect::<Vec<_>>(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::new();
    while draws.len() < random {
        let total_out = max_total + rng.gen_range(1..=2);
        let total_in = max_total + rng.gen_range(1..=2);
        let r = rng.gen_range(1..total_out);
        let n = rng.gen_range(1..total_in);
        let (s, m) = (total_out - r, total_in - n);
        if !(parity_ok(r, n) && parity_ok(s, m)) {
            continue;
        }
        let c = Diagram::enumerate(r, n, family.is_dilute(), None).choose(&mut rng).cloned().unwrap();
        let d = Diagram::enumerate(s, m, family.is_dilute(), None).choose(&mut rng).cloned().unwrap();
        draws.push((c, d));
    }
    report.extend(
        draws
            .par_iter()
            .map(|(c, d)| {
                let (lhs, rhs) = naturality_holds(c, d, family);
                let p = json!({ "c": c.to_text(), "d": d.to_text() });
                CaseRecord::compare("naturality-random", p, &lhs, &rhs)
            })
            .collect::<Vec<_>>(),
    );
    report
}

/// `η_{n,m} e_i = e_{m+i} η_{n,m}`, `η_{n,m} e_{n+j} = e_j η_{n,m}` and the
/// bubble identities, for sizes up to `max_total`.
pub fn verify_commutor_lemmas(max_total: usize) -> Report {
    let mut report = Report::new("commutor-lemmas", json!({ "max_total": max_total }));
    let e = |i, n| Morphism::e(i, n).unwrap();
    let mut cases = Vec::new();
    for n in 0..=max_total {
        for m in 0..=max_total - n {
            cases.push((n, m));
        }
    }
    report.extend(cases.par_iter().flat_map_iter(|&(n, m)| {
        let eta = commutor(n, m);
        let mut out = Vec::new();
        for i in 1..n {
            let p = json!({ "n": n, "m": m, "i": i });
            out.push(CaseRecord::compare("eta-e-left", p, &(&eta * &e(i, n + m)), &(&e(m + i, n + m) * &eta)));
        }
        for j in 1..m {
            let p = json!({ "n": n, "m": m, "j": j });
            out.push(CaseRecord::compare("eta-e-right", p, &(&eta * &e(n + j, n + m)), &(&e(j, n + m) * &eta)));
        }
        // bubbles, with m = 2p
        if m % 2 == 0 && m > 0 {
            let p = m / 2;
            let zp = (0..p).fold(Morphism::from_diagram(Diagram::identity(0, false)), |a, _| tensor(&a, &Morphism::cup()));
            let lhs = &commutor(n, m) * &tensor(&id(n, Family::Ordinary), &zp);
            let rhs = tensor(&zp, &id(n, Family::Ordinary));
            out.push(CaseRecord::compare("bubble-cup", json!({ "n": n, "p": p }), &lhs, &rhs));
            let zt = zp.transpose();
            let lhs = tensor(&zt, &id(n, Family::Ordinary));
            let rhs = &tensor(&id(n, Family::Ordinary), &zt) * &commutor(m, n);
            out.push(CaseRecord::compare("bubble-cap", json!({ "n": n, "p": p }), &lhs, &rhs));
        }
        out
    }).collect::<Vec<_>>());
    report
}

/// Braid-type relations among crossings on `n` strands.
pub fn verify_braid_relations(n: usize) -> Report {
    verify_braid_relations_in(n, Family::Ordinary)
}

pub fn verify_braid_relations_in(n: usize, family: Family) -> Report {
    let mut report = Report::new("braid-relations", json!({ "n": n, "family": family.name() }));
    let t = |i| crossing(i, n, family);
    for i in 1..n.saturating_sub(1) {
        let p = json!({ "n": n, "i": i });
        let lhs = &(&t(i) * &t(i + 1)) * &t(i);
        let rhs = &(&t(i + 1) * &t(i)) * &t(i + 1);
        report.push(CaseRecord::compare("braid", p.clone(), &lhs, &rhs));
        if family == Family::Ordinary {
            let e = |i| Morphism::e(i, n).unwrap();
            let ee = &e(i + 1) * &e(i);
            report.push(CaseRecord::compare("t-t-e-left", p.clone(), &(&(&t(i) * &t(i + 1)) * &e(i)), &ee));
            report.push(CaseRecord::compare("t-t-e-right", p.clone(), &(&e(i + 1) * &(&t(i) * &t(i + 1))), &ee));
            let ee = &e(i) * &e(i + 1);
            report.push(CaseRecord::compare("t-t-e-left-mirror", p.clone(), &(&(&t(i + 1) * &t(i)) * &e(i + 1)), &ee));
            report.push(CaseRecord::compare("t-t-e-right-mirror", p, &(&e(i) * &(&t(i + 1) * &t(i))), &ee));
        }
    }
    for i in 1..n {
        for j in i + 2..n {
            let p = json!({ "n": n, "i": i, "j": j });
            report.push(CaseRecord::compare("far-commutation", p, &(&t(i) * &t(j)), &(&t(j) * &t(i))));
        }
    }
    // t_i … t_{k-1} t_k t_{k-1} … t_i = t_k … t_i … t_k
    for i in 1..n {
        for k in i + 1..n {
            let mut w1: Vec<usize> = (i..k).collect();
            w1.push(k);
            w1.extend((i..k).rev());
            let mut w2: Vec<usize> = (i + 1..=k).rev().collect();
            w2.push(i);
            w2.extend(i + 1..=k);
            let lhs = word_product(&w1, n, false, family);
            let rhs = word_product(&w2, n, false, family);
            report.push(CaseRecord::compare("palindrome", json!({ "n": n, "i": i, "k": k }), &lhs, &rhs));
        }
    }
    report
}

/// `η_{2,1} η_{1,2} e_1 − e_1 η_{2,1} η_{1,2}` in End(3).
pub fn monodromy_noncentral_witness() -> Morphism {
    let mono = &commutor(2, 1) * &commutor(1, 2);
    let e1 = Morphism::e(1, 3).unwrap();
    &(&mono * &e1) - &(&e1 * &mono)
}

/// `q^{-2}(q − q^{-1})(e_1 e_2 − e_2 e_1)`.
pub fn expected_noncentral_witness() -> Morphism {
    let e1 = Morphism::e(1, 3).unwrap();
    let e2 = Morphism::e(2, 3).unwrap();
    let c = &Scalar::q_pow(-2) * &(&Scalar::q_pow(1) - &Scalar::q_pow(-1));
    (&(&e1 * &e2) - &(&e2 * &e1)).scale(&c)
}

pub fn verify_noncentral_witness() -> Report {
    let mut report = Report::new("noncentral-witness", json!({}));
    let w = monodromy_noncentral_witness();
    report.push(CaseRecord::compare("witness", json!({}), &w, &expected_noncentral_witness()));
    report.push(CaseRecord::check("witness-nonzero", json!({}), !w.is_zero(), || "witness vanished".into()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_commutors() {
        assert_eq!(commutor(1, 1), Morphism::t(1, 2).unwrap());
        assert_eq!(commutor(3, 0), Morphism::identity(3, false));
        assert_eq!(commutor(0, 2), Morphism::identity(2, false));
        let e1 = Morphism::e(1, 3).unwrap();
        let e2 = Morphism::e(2, 3).unwrap();
        let expect = Morphism::identity(3, false).scale(&Scalar::q_pow(1))
            + &e1 + &e2
            + (&e2 * &e1).scale(&Scalar::q_pow(-1));
        assert_eq!(commutor(1, 2), expect);
        let expect21 = Morphism::identity(3, false).scale(&Scalar::q_pow(1))
            + &e1 + &e2
            + (&e1 * &e2).scale(&Scalar::q_pow(-1));
        assert_eq!(commutor(2, 1), expect21);
    }

    #[test]
    fn words_match_worked_example() {
        assert_eq!(commutor_word(2, 3, CommutorForm::LeftNested), vec![3, 4, 2, 3, 1, 2]);
        assert_eq!(commutor_word(2, 3, CommutorForm::RightNested), vec![3, 2, 1, 4, 3, 2]);
    }

    #[test]
    fn eq_12() {
        let eta = commutor(1, 2);
        assert_eq!(&eta * &Morphism::e(2, 3).unwrap(), &Morphism::e(1, 3).unwrap() * &eta);
    }

    #[test]
    fn hexagons_small() {
        let r = verify_hexagons(4, Family::Ordinary);
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn naturality_small() {
        let r = verify_naturality(4, 10, 7, Family::Ordinary);
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn lemmas_and_relations() {
        assert!(verify_commutor_lemmas(5).all_pass());
        for n in 2..=5 {
            let r = verify_braid_relations(n);
            assert!(r.all_pass(), "{:?}", r.failures().next());
        }
    }

    #[test]
    fn witness() {
        assert!(verify_noncentral_witness().all_pass());
    }

    #[test]
    fn witness_vanishes_at_q_one() {
        let sp = crate::scalar::Specialization::Rational(num::BigRational::from_integer(1.into()));
        for (_, c) in monodromy_noncentral_witness().terms() {
            let v = c.specialize(&sp).unwrap();
            assert_eq!(v, crate::scalar::Specialized::Rational(num::BigRational::from_integer(0.into())));
        }
    }
}
