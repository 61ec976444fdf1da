use num::BigRational;
use proptest::prelude::*;

use tlcore::braid::{self, Family};
use tlcore::diagram::Diagram;
use tlcore::morphism::Morphism;
use tlcore::scalar::{Scalar, Var};
use tlcore::twist;

fn diagram(left: usize, right: usize, dilute: bool) -> impl Strategy<Value = Diagram> {
    let all = Diagram::enumerate(left, right, dilute, None);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, -6i32..=6, -2i32..=2), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, ks, ku)| {
            let t = &(&Scalar::from_int(c) * &Scalar::s_pow(ks)) * &Scalar::var_pow(Var::U, ku);
            &acc + &t
        })
    })
}

fn morphism(dst: usize, src: usize) -> impl Strategy<Value = Morphism> {
    prop::collection::vec((scalar(), diagram(dst, src, false)), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(Morphism::zero(dst, src, false), |acc, (c, d)| acc + Morphism::from_diagram(d).scale(&c))
    })
}

fn point(s: i64, u: i64) -> [BigRational; 4] {
    let r = |x: i64| BigRational::from_integer(x.into());
    [r(s), r(u), r(1), r(1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(a in diagram(3, 5, false), b in diagram(5, 3, false), c in diagram(3, 1, false)) {
        let (a, b, c) = (Morphism::from_diagram(a), Morphism::from_diagram(b), Morphism::from_diagram(c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn dilute_composition_is_associative(a in diagram(2, 3, true), b in diagram(3, 2, true), c in diagram(2, 2, true)) {
        let (a, b, c) = (Morphism::from_diagram(a), Morphism::from_diagram(b), Morphism::from_diagram(c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn tensor_interchange(f in morphism(2, 2), g in morphism(1, 3), h in morphism(2, 2), k in morphism(3, 1)) {
        let lhs = &f.tensor(&g).unwrap() * &h.tensor(&k).unwrap();
        let rhs = (&f * &h).tensor(&(&g * &k)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_reverses_composition(f in morphism(2, 4), g in morphism(4, 2)) {
        prop_assert_eq!((&f * &g).transpose(), &g.transpose() * &f.transpose());
    }

    #[test]
    fn morphism_text_roundtrip(f in morphism(3, 3)) {
        prop_assert_eq!(Morphism::parse(&f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(Morphism::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() && !b.has_spectral() {
            prop_assert_eq!((&a * &b).try_div(&b).unwrap(), a.clone());
        }
        prop_assert_eq!(Scalar::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), s in 2i64..6, u in 2i64..6) {
        let p = point(s, u);
        prop_assert_eq!((&a * &b).eval(&p).unwrap(), a.eval(&p).unwrap() * b.eval(&p).unwrap());
        prop_assert_eq!((&a + &b).eval(&p).unwrap(), a.eval(&p).unwrap() + b.eval(&p).unwrap());
    }

    #[test]
    fn commutor_natural(c in diagram(2, 2, false), d in diagram(3, 1, false)) {
        let (l, r) = braid::naturality_holds(&c, &d, Family::Ordinary);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn dilute_commutor_natural(c in diagram(1, 3, true), d in diagram(2, 2, true)) {
        let (l, r) = braid::naturality_holds(&c, &d, Family::Dilute);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn twist_natural(f in morphism(4, 2)) {
        let r = twist::twist_naturality_check(&f);
        prop_assert!(r.all_pass());
    }
}
