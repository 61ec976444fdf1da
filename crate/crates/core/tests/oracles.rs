//! Values checked against independent recomputations or closed forms.

use num::complex::Complex64;
use num::BigRational;

use tlcore::braid;
use tlcore::diagram::Diagram;
use tlcore::fusion::{self, Factor};
use tlcore::integrable::{self, FaceFamily};
use tlcore::linalg::{self, RationalPoint};
use tlcore::morphism::Morphism;
use tlcore::repr::{self, LinkModule};
use tlcore::scalar::{Scalar, Specialization, Specialized, Var};
use tlcore::twist;

fn catalan_rec(n: usize) -> Vec<usize> {
    let mut c = vec![1usize];
    for m in 0..n {
        c.push((0..=m).map(|i| c[i] * c[m - i]).sum());
    }
    c
}

fn motzkin_rec(n: usize) -> Vec<usize> {
    let mut m = vec![1usize, 1];
    for k in 1..n {
        let pairs: usize = (0..k).map(|i| m[i] * m[k - 1 - i]).sum();
        m.push(m[k] + pairs);
    }
    m
}

/// dim S_{n,k} from the branching rule S_{n,k}↓ = S_{n-1,k-1} ⊕ S_{n-1,k+1}.
fn bratteli(n: usize, k: usize) -> usize {
    if k > n || (n - k) % 2 == 1 {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    let down = if k > 0 { bratteli(n - 1, k - 1) } else { 0 };
    down + bratteli(n - 1, k + 1)
}

#[test]
fn counts_match_recursions() {
    let c = catalan_rec(8);
    let m = motzkin_rec(8);
    for n in 0..=8 {
        assert_eq!(Diagram::enumerate(n, n, false, None).len(), c[n], "End({})", n);
        for k in (n % 2..=n).step_by(2) {
            assert_eq!(LinkModule::standard(n, k).unwrap().dim(), bratteli(n, k), "S({},{})", n, k);
        }
    }
    for total in 0..=8 {
        let left = total / 2;
        assert_eq!(Diagram::enumerate(left, total - left, true, None).len(), m[total], "dilute {}", total);
    }
}

#[test]
fn crossing_expansion() {
    // t = q^{1/2} 1 + q^{-1/2} e, t e = −q^{-3/2} e
    let t = Morphism::t(1, 2).unwrap();
    let e = Morphism::e(1, 2).unwrap();
    let want = Morphism::identity(2, false).scale(&Scalar::q_half_pow(1)) + e.scale(&Scalar::q_half_pow(-1));
    assert_eq!(t, want);
    assert_eq!(&t * &e, e.scale(&-Scalar::q_half_pow(-3)));
}

#[test]
fn noncentral_witness_exact() {
    let e1 = Morphism::e(1, 3).unwrap();
    let e2 = Morphism::e(2, 3).unwrap();
    let q = Scalar::q_pow(1);
    let coeff = &Scalar::q_pow(-2) * &(&q - &Scalar::q_pow(-1));
    let want = (&(&e1 * &e2) - &(&e2 * &e1)).scale(&coeff);
    let mono = &braid::commutor(2, 1) * &braid::commutor(1, 2);
    assert_eq!(&(&mono * &e1) - &(&e1 * &mono), want);
    assert_eq!(braid::monodromy_noncentral_witness(), want);
}

#[test]
fn wenzl_jones_closed_forms() {
    let b = Scalar::beta();
    let e = |i, n| Morphism::e(i, n).unwrap();
    let wj2 = Morphism::identity(2, false) - e(1, 2).scale(&b.inv().unwrap());
    assert_eq!(repr::wenzl_jones(2).unwrap(), wj2);
    // 1 − δ/(δ²−1)(e1 + e2) + 1/(δ²−1)(e1e2 + e2e1)
    let d = (&(&b * &b) - &Scalar::one()).inv().unwrap();
    let a = -(&b * &d);
    let wj3 = Morphism::identity(3, false)
        + (e(1, 3) + e(2, 3)).scale(&a)
        + (&(&e(1, 3) * &e(2, 3)) + &(&e(2, 3) * &e(1, 3))).scale(&d);
    assert_eq!(repr::wenzl_jones(3).unwrap(), wj3);
}

#[test]
fn twist_on_top_module() {
    // e_i kills S_{n,n}, so each t_i acts as q^{1/2}
    for n in 0..=6 {
        let m = LinkModule::standard(n, n).unwrap();
        let g = repr::eigenvalue_on_standard(&twist::twist_element(n).value, &m).unwrap();
        let want = &Scalar::q_half_pow(3 * n as i32) * &Scalar::q_half_pow((n * n.saturating_sub(1)) as i32);
        assert_eq!(g, want, "n = {}", n);
    }
    let m = LinkModule::standard(4, 2).unwrap();
    assert_eq!(repr::eigenvalue_on_standard(&twist::twist_element(4).value, &m).unwrap(), Scalar::q_pow(4));
}

#[test]
fn det_t1_from_rank_of_e1() {
    // e_1 has eigenvalues β and 0; t_1 then has −q^{-3/2} (multiplicity rank e_1) and q^{1/2}.
    let k0 = RationalPoint { s0: BigRational::new(5.into(), 3.into()) };
    for n in 2..=6 {
        for k in (n % 2..=n).step_by(2) {
            let m = LinkModule::standard(n, k).unwrap();
            let a = repr::act_in(&k0, &Morphism::e(1, n).unwrap(), &m, &m).unwrap();
            let r = linalg::rank(&k0, &a);
            assert_eq!(r, bratteli(n.saturating_sub(2), k), "rank e_1 on S({},{})", n, k);
            let d = m.dim();
            let neg = if r % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let want = &(&neg * &Scalar::q_half_pow(-3 * r as i32)) * &Scalar::q_half_pow((d - r) as i32);
            assert_eq!(twist::det_t1(n, k), want, "det t_1 on S({},{})", n, k);
        }
    }
}

#[test]
fn generic_fusion_dimensions() {
    for (n1, k1, n2, k2) in [(1, 1, 1, 1), (2, 2, 1, 1), (2, 0, 2, 2), (3, 1, 2, 0), (3, 3, 2, 2)] {
        let n = n1 + n2;
        let lo = if k1 > k2 { k1 - k2 } else { k2 - k1 };
        let want: usize = (lo..=k1 + k2).step_by(2).map(|k| bratteli(n, k)).sum();
        let t = fusion::fusion_table(Factor::Standard { n: n1, k: k1 }, Factor::Standard { n: n2, k: k2 }, &Specialization::Generic, 3).unwrap();
        assert_eq!(t.dim, want, "S({},{}) x S({},{})", n1, k1, n2, k2);
        let ks: Vec<usize> = t.summands.iter().filter(|s| s.multiplicity > 0).map(|s| s.k).collect();
        assert_eq!(ks, (lo..=k1 + k2).step_by(2).collect::<Vec<_>>());
    }
    let t = fusion::fusion_table(Factor::Standard { n: 2, k: 2 }, Factor::Standard { n: 1, k: 1 }, &Specialization::Generic, 3).unwrap();
    assert_eq!(t.summands.iter().map(|s| s.k).collect::<Vec<_>>(), vec![1, 3]);
    assert_eq!(fusion::mu(3, 2, 1), Scalar::q_pow(2));
}

#[test]
fn root_of_unity_eigenvalue_as_complex() {
    let t = fusion::fusion_table(Factor::Standard { n: 2, k: 2 }, Factor::Standard { n: 1, k: 1 }, &Specialization::root_of_unity(3), 0).unwrap();
    assert_eq!(t.dim, 3);
    assert_eq!(t.jordan.len(), 1);
    assert_eq!(t.jordan[0].blocks, vec![2, 1]);
    let sym = Scalar::parse(&t.jordan[0].symbolic).unwrap();
    // s = e^{2πi/12} for q = e^{2πi/3}
    let s = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
    let Specialized::Complex(z) = sym.specialize(&Specialization::Complex(s)).unwrap() else { panic!() };
    let want = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
    assert!((z - want).norm() < 1e-12, "{} vs {}", z, want);
}

#[test]
fn ordinary_inversion_residual() {
    let u = Scalar::var(Var::U);
    let ui = u.inv().unwrap();
    let rho = &(&Scalar::q_pow(2) + &Scalar::q_pow(-2)) - &(&(&u * &u) + &(&ui * &ui));
    assert_eq!(integrable::inversion_product(FaceFamily::Ordinary), Morphism::identity(2, false).scale(&rho));
}

#[test]
fn ik_inversion_is_scalar() {
    let rho = integrable::rho_hat().expect("scalar inversion");
    assert!(!rho.is_zero());
    assert!(rho.has_spectral());
}
