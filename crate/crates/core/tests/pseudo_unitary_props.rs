use num_complex::Complex64;
use proptest::prelude::*;
use pseudou::linalg::{cr, diag, dist_mod1, CMat};
use pseudou::pseudo_unitary::*;
use pseudou::random::*;
use rand::Rng;

const TOL: f64 = 1e-9;

fn shapes() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 1)), Just((2, 1)), Just((1, 2)), Just((2, 2)), Just((3, 1)), Just((3, 2))]
}

fn inv(m: &CMat) -> CMat {
    m.clone().try_inverse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectral_bookkeeping((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_su(m, n, 0.7, &mut r).g;
        let h = SignatureForm::standard(m, n);
        let sd = spectral_analysis(&g, &h, TOL).unwrap();
        prop_assert_eq!(sd.multiplicities.iter().sum::<usize>(), m + n);
        prop_assert_eq!(sd.n_plus.iter().sum::<usize>(), m);
        prop_assert_eq!(sd.n_minus.iter().sum::<usize>(), n);
        for &(i, j) in &sd.pairs {
            prop_assert_eq!(sd.multiplicities[i], sd.multiplicities[j]);
            prop_assert!((sd.eigenvalues[i] * sd.eigenvalues[j].conj() - cr(1.0)).norm() < 1e-6);
        }
        let cf = canonical_form(&g, &h, TOL).unwrap();
        prop_assert!(cf.residual < 1e-7);
    }

    #[test]
    fn conjugation_invariance((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_su(m, n, 0.6, &mut r).g;
        let k = random_su(m, n, 0.6, &mut r).g;
        let h = SignatureForm::standard(m, n);
        let a = dgw_phase(&g, &h, TOL).unwrap();
        let b = dgw_phase(&(&k * &g * inv(&k)), &h, TOL).unwrap();
        prop_assert!(dist_mod1(a, b) < 1e-7, "{} vs {}", a, b);
    }

    #[test]
    fn power_congruence((m, n) in shapes(), seed in any::<u64>(), k in 1u32..=6) {
        let mut r = rng(seed);
        let g = random_su(m, n, 0.3, &mut r).g;
        let h = SignatureForm::standard(m, n);
        let a = dgw_phase(&g, &h, TOL).unwrap();
        let gk = (1..k).fold(g.clone(), |acc, _| acc * &g);
        let b = dgw_phase(&gk, &h, TOL).unwrap();
        prop_assert!(dist_mod1(k as f64 * a, b) < 1e-6, "{} {} {}", k, a, b);
    }

    #[test]
    fn commuting_additivity((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = m + n;
        let k = random_su(m, n, 0.5, &mut r).g;
        let mut torus = || {
            let mut ph: Vec<f64> = (0..d).map(|_| r.gen_range(0.0..6.0)).collect();
            let s: f64 = ph.iter().sum();
            ph[0] -= s;
            diag(&ph.iter().map(|&t| Complex64::from_polar(1.0, t)).collect::<Vec<_>>())
        };
        let (d1, d2) = (torus(), torus());
        let h = SignatureForm::standard(m, n);
        let g1 = &k * d1 * inv(&k);
        let g2 = &k * d2 * inv(&k);
        let s = dgw_phase(&(&g1 * &g2), &h, TOL).unwrap();
        let a = dgw_phase(&g1, &h, TOL).unwrap() + dgw_phase(&g2, &h, TOL).unwrap();
        prop_assert!(dist_mod1(s, a) < 1e-7);
    }

    #[test]
    fn phase_matches_elliptic_determinant((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_su(m, n, 0.7, &mut r).g;
        let h = SignatureForm::standard(m, n);
        let q = dgw_phase(&g, &h, TOL).unwrap();
        let det = elliptic_positive_det(&g, &h, TOL).unwrap();
        let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * q);
        prop_assert!((det / det.norm() - want).norm() < 1e-6);
    }

    #[test]
    fn borel_elements_have_integral_phase((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, h) = random_borel(m, n, &mut r);
        let q = dgw_phase(&g, &h, TOL).unwrap();
        prop_assert!(dist_mod1(q, 0.0) < 1e-7, "{}", q);
    }

    #[test]
    fn phase_is_basis_independent((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_su(m, n, 0.5, &mut r).g;
        let (h, mm) = random_form(m, n, &mut r);
        let a = dgw_phase(&g, &SignatureForm::standard(m, n), TOL).unwrap();
        let b = dgw_phase(&(&mm * &g * inv(&mm)), &h, TOL).unwrap();
        prop_assert!(dist_mod1(a, b) < 1e-6);
    }

    #[test]
    fn cocycle_identity_and_compatibility((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = SignatureForm::standard(m, n);
        let g1 = random_su(m, n, 0.6, &mut r).g;
        let g2 = random_su(m, n, 0.6, &mut r).g;
        let g3 = random_su(m, n, 0.6, &mut r).g;
        let cc = |a: &CMat, b: &CMat| cocycle_auto(a, b, &h, TOL).unwrap();
        let lhs = cc(&g1, &g2) + cc(&(&g1 * &g2), &g3);
        let rhs = cc(&g1, &(&g2 * &g3)) + cc(&g2, &g3);
        prop_assert!((lhs - rhs).abs() < 1e-6, "{} {}", lhs, rhs);
        let c12 = cc(&g1, &g2);
        let v = |g: &CMat| v0(g, &h, TOL).unwrap();
        let ratio = v(&g1) * v(&g2) / v(&(&g1 * &g2));
        let e = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * c12);
        prop_assert!((e - ratio).norm() < 1e-6);
        prop_assert!(c12.abs() < 2.0);
    }

    #[test]
    fn cocycle_is_path_independent((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = SignatureForm::standard(m, n);
        let e1 = random_su(m, n, 0.6, &mut r);
        let e2 = random_su(m, n, 0.6, &mut r);
        let p1 = e1.path(&h, TOL).unwrap();
        let hh = h.clone();
        let g1 = e1.g.clone();
        let p2 = GroupPath::adaptive(&|t| e2.at(t), PathKind::Unitary(h.clone()), &|x| {
            Ok(vec![v0(x, &hh, TOL)?, v0(&(&g1 * x), &hh, TOL)?])
        }).unwrap();
        let a = cocycle(&e1.g, &e2.g, &p1, &p2, TOL).unwrap();
        let b = cocycle_auto(&e1.g, &e2.g, &h, TOL).unwrap();
        prop_assert!((a - b).abs() < 1e-6, "{} {}", a, b);
    }

    #[test]
    fn embedding_compatibility(n in 1usize..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_sp_algebra(n, 0.5, &mut r);
        let s = x.exp();
        let t = sp_to_su(&s, TOL).unwrap();
        let hs = SignatureForm::standard(n, n);
        prop_assert!(is_member(&t, &hs, 1e-9).unwrap().member);
        let a = dgw_phase(&t, &hs, TOL).unwrap();
        let b = dgw_phase(&s, &symplectic_hermitian_form(n), TOL).unwrap();
        prop_assert!(dist_mod1(a, b) < 1e-7);
        // lifts agree pointwise along t -> exp(tX)
        let sp = GroupPath::uniform(&|u| (&x * cr(u)).exp(), PathKind::Symplectic, 400);
        let su = GroupPath {
            samples: sp.samples.iter().map(|m| sp_to_su(m, 1e-8).unwrap()).collect(),
            kind: PathKind::Unitary(hs.clone()),
        };
        let l_sp: f64 = sp.samples.windows(2).map(|w| {
            (sp_phase(&w[1], TOL).unwrap() / sp_phase(&w[0], TOL).unwrap()).arg()
        }).sum::<f64>() / (2.0 * std::f64::consts::PI);
        prop_assert!((lift_phase(&su, TOL).unwrap() - l_sp).abs() < 1e-9);
    }

    #[test]
    fn su_to_sp_is_symplectic((m, n) in shapes(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_su(m, n, 0.6, &mut r).g;
        let s = su_to_sp(&g, m, n, TOL).unwrap();
        prop_assert!(symplectic_residual(&s) < 1e-9);
    }
}

#[test]
fn winding_doubles() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
        let g = generator_loop(m, n, 128);
        let img = GroupPath {
            samples: g.samples.iter().map(|x| su_to_sp(x, m, n, TOL).unwrap()).collect(),
            kind: PathKind::Symplectic,
        };
        let l = lift_phase(&g, TOL).unwrap();
        assert_eq!(sp_winding(&img, TOL).unwrap() as f64, 2.0 * l);
    }
}

#[test]
fn positive_part_has_trivial_v0() {
    let mut r = rng(3);
    for (m, n) in [(1, 1), (2, 1), (2, 3)] {
        let p = random_p_algebra(m, n, 1.0, &mut r).exp();
        let v = v0(&p, &SignatureForm::standard(m, n), TOL).unwrap();
        assert!((v - cr(1.0)).norm() < 1e-10);
    }
}

#[test]
fn hyperbolic_one_parameter_additivity() {
    let mut r = rng(8);
    let p = random_p_algebra(2, 1, 1.0, &mut r);
    let h = SignatureForm::standard(2, 1);
    let (a, b) = ((&p * cr(0.4)).exp(), (&p * cr(1.1)).exp());
    let s = dgw_phase(&(&a * &b), &h, TOL).unwrap();
    let t = dgw_phase(&a, &h, TOL).unwrap() + dgw_phase(&b, &h, TOL).unwrap();
    assert!(dist_mod1(s, t) < 1e-9);
}
