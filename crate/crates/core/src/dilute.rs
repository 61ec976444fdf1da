//! The dilute braiding.

use serde_json::json;

use crate::braid::{self, commutor_in, Family};
use crate::diagram::{Diagram, Node};
use crate::morphism::Morphism;
use crate::report::{CaseRecord, Report};
use crate::scalar::Scalar;

use Node::{Left as L, Right as R};

/// Named basis diagrams of dilute End(2). Nodes are numbered from the top.
pub mod d2 {
    use super::*;

    fn mk(pairs: &[(Node, Node)]) -> Diagram {
        Diagram::from_node_pairs(2, 2, true, pairs).unwrap()
    }

    /// Two horizontal strands.
    pub fn parallel() -> Diagram {
        mk(&[(L(0), R(0)), (L(1), R(1))])
    }

    /// Cup on the left, cap on the right.
    pub fn cupcap() -> Diagram {
        mk(&[(L(0), L(1)), (R(0), R(1))])
    }

    /// Single strand from the top left node to the bottom right node.
    pub fn down() -> Diagram {
        mk(&[(L(0), R(1))])
    }

    /// Single strand from the bottom left node to the top right node.
    pub fn up() -> Diagram {
        mk(&[(L(1), R(0))])
    }

    pub fn empty() -> Diagram {
        Diagram::vacant(2, 2)
    }

    pub fn top() -> Diagram {
        mk(&[(L(0), R(0))])
    }

    pub fn bottom() -> Diagram {
        mk(&[(L(1), R(1))])
    }

    pub fn left_arc() -> Diagram {
        mk(&[(L(0), L(1))])
    }

    pub fn right_arc() -> Diagram {
        mk(&[(R(0), R(1))])
    }
}

fn m(c: Scalar, d: Diagram) -> Morphism {
    Morphism::from_term(c, d)
}

/// `η_{1,1} = q^{1/2}·parallel + q^{-1/2}·cupcap + down + up + empty`.
pub fn eta11() -> Morphism {
    m(Scalar::s_pow(2), d2::parallel())
        + m(Scalar::s_pow(-2), d2::cupcap())
        + m(Scalar::one(), d2::down())
        + m(Scalar::one(), d2::up())
        + m(Scalar::one(), d2::empty())
}

/// The inverse exchanges `q^{1/2}` and `q^{-1/2}`.
pub fn eta11_inv() -> Morphism {
    m(Scalar::s_pow(-2), d2::parallel())
        + m(Scalar::s_pow(2), d2::cupcap())
        + m(Scalar::one(), d2::down())
        + m(Scalar::one(), d2::up())
        + m(Scalar::one(), d2::empty())
}

/// `a_1 P + a_5 C + a_2 down + a_3 up + a_4 empty`, the general candidate
/// left after the occupation conditions.
pub fn eta11_general(a: &[Scalar; 5]) -> Morphism {
    m(a[0].clone(), d2::parallel())
        + m(a[1].clone(), d2::down())
        + m(a[2].clone(), d2::up())
        + m(a[3].clone(), d2::empty())
        + m(a[4].clone(), d2::cupcap())
}

/// The dilute commutor `η_{r,s}`.
pub fn dilute_commutor(r: usize, s: usize) -> Morphism {
    commutor_in(r, s, Family::Dilute)
}

/// Dilute `t_i(n)` or its inverse.
pub fn t(i: usize, n: usize, inverse: bool) -> Morphism {
    assert!(i >= 1 && i < n, "t_{} undefined on {} strands", i, n);
    let core = if inverse { eta11_inv() } else { eta11() };
    let left = Morphism::identity(i - 1, true);
    let right = Morphism::identity(n - i - 1, true);
    left.tensor(&core).unwrap().tensor(&right).unwrap()
}

fn single(dst: usize, src: usize, pairs: &[(Node, Node)]) -> Morphism {
    Morphism::from_diagram(Diagram::from_node_pairs(dst, src, true, pairs).unwrap())
}

/// The algebraic conditions fixing `η_{1,1}`: the occupation swaps, the
/// quadratic equations on `a_1 … a_5`, the vacancy conditions, and the
/// sign choices.
pub fn verify_constraints() -> Report {
    let mut report = Report::new("dilute-constraints", json!({}));
    let eta = eta11();
    let tens = |a: &Morphism, b: &Morphism| a.tensor(b).unwrap();
    let solid = single(1, 1, &[(L(0), R(0))]);
    let vacant = Morphism::from_diagram(Diagram::vacant(1, 1));
    let id1 = Morphism::identity(1, true);
    for (name, x) in [("solid", &solid), ("vacant", &vacant)] {
        let p = json!({ "strand": name });
        report.push(CaseRecord::compare("occupation-swap-top", p.clone(), &(&eta * &tens(x, &id1)), &(&tens(&id1, x) * &eta)));
        report.push(CaseRecord::compare("occupation-swap-bottom", p, &(&eta * &tens(&id1, x)), &(&tens(x, &id1) * &eta)));
    }
    // η_{1,2}(a ⊗ b) = (b ⊗ a) η_{1,2} and η_{2,1}(b ⊗ a) = (a ⊗ b) η_{2,1}
    let (e12, e21) = (dilute_commutor(1, 2), dilute_commutor(2, 1));
    for a in Diagram::enumerate(1, 1, true, None).iter() {
        for b in Diagram::enumerate(2, 2, true, None).iter() {
            let (am, bm) = (Morphism::from_diagram(a.clone()), Morphism::from_diagram(b.clone()));
            let p = json!({ "a": a.to_text(), "b": b.to_text() });
            report.push(CaseRecord::compare("eta12-swap", p.clone(), &(&e12 * &tens(&am, &bm)), &(&tens(&bm, &am) * &e12)));
            report.push(CaseRecord::compare("eta21-swap", p, &(&e21 * &tens(&bm, &am)), &(&tens(&am, &bm) * &e21)));
        }
    }
    // vacancy conditions: b ∈ Hom(0,1) is the single vacant node
    let b = Morphism::from_diagram(Diagram::vacant(1, 0));
    for a in Diagram::enumerate(1, 1, true, None).iter() {
        let am = Morphism::from_diagram(a.clone());
        let p = json!({ "a": a.to_text() });
        report.push(CaseRecord::compare("vacancy-left", p.clone(), &(&eta * &tens(&am, &b)), &tens(&b, &am)));
        report.push(CaseRecord::compare("vacancy-right", p, &(&eta * &tens(&b, &am)), &tens(&am, &b)));
    }
    let (a1, a5) = (Scalar::q_half_pow(1), Scalar::q_half_pow(-1));
    let beta = Scalar::beta();
    let quad = &(&(&a1 * &a1) + &(&(&a1 * &a5) * &beta)) + &(&a5 * &a5);
    report.push(CaseRecord::check("quadratic", json!({ "a1": a1.to_text(), "a5": a5.to_text() }), quad.is_zero(), || quad.to_text()));
    report.push(CaseRecord::check("a1-a5-unit", json!({}), (&a1 * &a5).is_one(), || "a1 a5 != 1".into()));
    report.push(CaseRecord::compare("eta11-coefficients", json!({}), &eta, &eta11_general(&[a1, Scalar::one(), Scalar::one(), Scalar::one(), a5])));
    for (sa, e) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let a = &Scalar::from_int(sa) * &Scalar::q_half_pow(e);
        let ai = a.inv().unwrap();
        let val = &(&(&a * &a) + &beta) + &(&ai * &ai);
        report.push(CaseRecord::check("sign-choice", json!({ "a1": a.to_text() }), val.is_zero(), || val.to_text()));
    }
    let bad = Scalar::q_pow(1);
    let bi = bad.inv().unwrap();
    let val = &(&(&bad * &bad) + &beta) + &(&bi * &bi);
    report.push(CaseRecord::check("non-solution-rejected", json!({ "a1": bad.to_text() }), !val.is_zero(), || "q solves".into()));
    report
}

/// Braid relation and the `q`-twisted difference for the dilute `t_i` on three strands.
pub fn verify_dilute_relations() -> Report {
    let mut report = braid::verify_braid_relations_in(3, Family::Dilute);
    let w = |word: &[usize], inv: &[bool]| {
        let mut acc = Morphism::identity(3, true);
        for (&i, &b) in word.iter().zip(inv) {
            acc = &acc * &t(i, 3, b);
        }
        acc
    };
    let a = w(&[1, 2, 1], &[true, false, true]) - w(&[2, 1, 2], &[true, false, true]);
    let b = w(&[1, 2, 1], &[false, true, false]) - w(&[2, 1, 2], &[false, true, false]);
    report.push(CaseRecord::compare("twisted-difference", json!({}), &a, &b.scale(&Scalar::q_pow(1))));
    report.push(CaseRecord::compare("eta-inverse", json!({}), &(&eta11() * &eta11_inv()), &Morphism::identity(2, true)));
    report.push(CaseRecord::compare("eta-inverse-left", json!({}), &(&eta11_inv() * &eta11()), &Morphism::identity(2, true)));
    report.push(CaseRecord::compare("eta10", json!({}), &dilute_commutor(1, 0), &Morphism::identity(1, true)));
    report.push(CaseRecord::compare("eta11", json!({}), &dilute_commutor(1, 1), &eta11()));
    report
}

/// Hexagons, naturality, the constraint equations and the crossing relations
/// of the dilute braiding, for `r + s ≤ max_total`.
pub fn verify_dilute_braiding(max_total: usize, random: usize, seed: u64) -> Report {
    let mut report = Report::new("dilute", json!({ "max_total": max_total, "random": random, "seed": seed }));
    report.absorb(braid::verify_hexagons(max_total, Family::Dilute));
    report.absorb(braid::verify_naturality(max_total, random, seed, Family::Dilute));
    report.absorb(verify_constraints());
    report.absorb(verify_dilute_relations());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_basis_diagrams() {
        let mut v = vec![
            d2::parallel(),
            d2::cupcap(),
            d2::down(),
            d2::up(),
            d2::empty(),
            d2::top(),
            d2::bottom(),
            d2::left_arc(),
            d2::right_arc(),
        ];
        v.sort();
        assert_eq!(v, *Diagram::enumerate(2, 2, true, None));
    }

    #[test]
    fn constraints_and_relations() {
        let r = verify_constraints();
        assert!(r.all_pass(), "{:?}", r.failures().next());
        let r = verify_dilute_relations();
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn braiding_small() {
        let r = verify_dilute_braiding(3, 5, 3);
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn eta_inverse() {
        assert_eq!(&eta11() * &eta11_inv(), Morphism::identity(2, true));
        assert_eq!(&eta11_inv() * &eta11(), Morphism::identity(2, true));
    }
}
