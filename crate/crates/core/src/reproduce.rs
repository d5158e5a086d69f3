//! Reference values and the twelve acceptance checks, shared by the
//! `reproduce-paper` subcommand and the acceptance test target.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::burau_squier::{
    count_noncompact_roots, principal_sqrt, reduced_burau, squier_definite, squier_form, threshold_check,
    BraidWord, BurauError,
};
use crate::conformal_blocks::{
    central_obstruction, congruence_check, dim_blocks, parity_checks, primitive_classes, signature, zagier,
};
use crate::cyclo_exact::{theta, theta_case_table, RootOfUnity};
use crate::linalg::{block, diag, dist_mod1, max_abs, CMat};
use crate::pseudo_unitary::{
    cocycle_auto, dgw_phase, elliptic_positive_det, generator_loop, lift_phase, realify, sp_to_su, sp_winding,
    su_to_sp, v0, GroupPath, PathKind, SignatureForm,
};
use crate::random::{gaussian_matrix, gaussian_vector, random_borel, random_su, rng};
use crate::recurrences::{builtin_spec, extend, mod_orbit, zero_locus_of};
use crate::su_commutators::{commutator_decomposition, Transvection};

/// `sigma(g, p, zeta_{2p}^e)` for `g = 1..=11`.
pub const REFERENCE_SIGMA: [((u64, u64), [i64; 11]); 8] = [
    ((5, 1), [2, 3, 3, 0, -9, -27, -54, -81, -81, 0, 243]),
    ((5, 3), [2, 5, 15, 50, 175, 625, 2250, 8125, 29375, 106250, 384375]),
    ((7, 1), [3, 8, 18, 29, 2, -237, -1275, -4703, -13750, -31156, -41167]),
    ((7, 3), [3, 14, 98, 833, 7546, 69629, 645869, 6000099, 55765626, 518361494, 4818550093]),
    ((7, 5), [3, 6, -10, -129, -406, 301, 8177, 32801, 15658, -472404, -2440135]),
    ((9, 1), [4, 16, 62, 211, 446, -1509, -29113, -259040, -1823114, -11137172, -60443933]),
    ((9, 5), [4, 30, 414, 7317, 137862, 2637765, 50664771, 974133540, 18734896134, 360344121174, 6930952607259]),
    ((9, 7), [4, 10, -102, -1259, -746, 90915, 687147, -2179104, -67636010, -303038972, 3064220783]),
];

/// `N(g, 5)` for `g = 1..=7`.
pub const REFERENCE_N5: [i64; 7] = [2, 5, 15, 50, 175, 625, 2250];

pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let limit = self.limit_seconds.map_or(String::new(), |l| format!(" (limit {l}s)"));
        format!(
            "[{}] criterion {:>2} {}: {} [{:.2}s{}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds,
            limit
        )
    }
}

fn timed(
    id: u8,
    name: &str,
    limit: Option<f64>,
    f: impl FnOnce() -> Result<String, String>,
) -> CriterionResult {
    let start = Instant::now();
    let out = f();
    let seconds = start.elapsed().as_secs_f64();
    let (mut pass, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let mut detail = detail;
    if let Some(l) = limit {
        if seconds >= l {
            pass = false;
            detail = format!("{detail}; exceeded time limit");
        }
    }
    CriterionResult { id, name: name.to_string(), pass, detail, seconds, limit_seconds: limit }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn sequences() -> CriterionResult {
    timed(1, "sequence reproduction", Some(1.0), || {
        for ((p, e), want) in REFERENCE_SIGMA {
            let spec = builtin_spec(p, e).map_err(|x| x.to_string())?;
            let got = extend(&spec, 11);
            let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
            ensure(got == want, || format!("({p}, {e}) differs"))?;
        }
        Ok(format!("{} sequences x 11 terms exact", REFERENCE_SIGMA.len()))
    })
}

pub fn brute_force_signatures() -> CriterionResult {
    timed(2, "brute-force/recurrence agreement", Some(120.0), || {
        let mut checked = 0;
        for (p, gmax) in [(5u64, 5usize), (7, 5), (9, 4)] {
            for z in primitive_classes(p) {
                let spec = builtin_spec(p, z.exponent()).map_err(|x| x.to_string())?;
                let seq = extend(&spec, gmax);
                for g in 1..=gmax {
                    let r = signature(g, p, z).map_err(|x| x.to_string())?;
                    ensure(r.sigma == seq[g - 1], || {
                        format!("sigma({g},{p},{z}) = {} but recurrence gives {}", r.sigma, seq[g - 1])
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} signatures equal"))
    })
}

pub fn dimensions() -> CriterionResult {
    timed(3, "dimension cross-checks", Some(60.0), || {
        for g in 2..=4 {
            for k in 2..=10u64 {
                let n = dim_blocks(g, 2 * k).map_err(|x| x.to_string())?;
                let z = zagier(g, k).ok_or("no closed form")?;
                ensure(n == z, || format!("N({g},{}) = {n} vs closed form {z}", 2 * k))?;
            }
        }
        for (i, &w) in REFERENCE_N5.iter().enumerate() {
            let n = dim_blocks(i + 1, 5).map_err(|x| x.to_string())?;
            ensure(n == BigInt::from(w), || format!("N({},5) = {n}", i + 1))?;
        }
        for (g, w) in [(2, 14), (3, 98)] {
            let n = dim_blocks(g, 7).map_err(|x| x.to_string())?;
            ensure(n == BigInt::from(w), || format!("N({g},7) = {n}"))?;
        }
        Ok("27 closed forms, N(g,5) g<=7, N(2,7), N(3,7)".into())
    })
}

pub fn congruences() -> CriterionResult {
    timed(4, "congruence and parity", Some(60.0), || {
        let mut n = 0;
        for p in (5..=13u64).step_by(2) {
            for g in 2..=5 {
                let r = congruence_check(g, p).map_err(|x| x.to_string())?;
                ensure(r.pass, || format!("N({g},{p}) = {} not divisible by theta = {}", r.n, r.theta))?;
                n += 1;
            }
        }
        for g in 1..=12 {
            let r = parity_checks(g, 5).map_err(|x| x.to_string())?;
            ensure(r.consistent, || format!("parity of N({g},5)"))?;
        }
        for p in [6u64, 10, 14] {
            let r = parity_checks(3, p).map_err(|x| x.to_string())?;
            ensure(r.consistent && r.predicted_odd.is_some(), || format!("parity at g=3, p={p}"))?;
        }
        Ok(format!("{n} congruences, 15 parity verdicts"))
    })
}

pub fn theta_table() -> CriterionResult {
    timed(5, "theta table", Some(1.0), || {
        for p in 3..=1000 {
            ensure(theta(p) == theta_case_table(p), || format!("p = {p}"))?;
        }
        Ok("3 <= p <= 1000".into())
    })
}

pub fn orbits() -> CriterionResult {
    timed(6, "mod-p orbits", Some(1.0), || {
        let o = mod_orbit(&builtin_spec(5, 1).unwrap(), 5).map_err(|x| x.to_string())?;
        let z = zero_locus_of(&o);
        ensure(o.period == 24 && z.classes == vec![4, 10, 16, 22] && z.transient.is_empty(), || {
            format!("(5,1) mod 5: period {} zeros {:?}", o.period, z.classes)
        })?;
        let o = mod_orbit(&builtin_spec(7, 1).unwrap(), 7).map_err(|x| x.to_string())?;
        let z = zero_locus_of(&o);
        ensure(o.period == 12 && z.classes == vec![11] && z.transient.is_empty(), || {
            format!("(7,1) mod 7: period {} zeros {:?}", o.period, z.classes)
        })?;
        let o = mod_orbit(&builtin_spec(7, 3).unwrap(), 7).map_err(|x| x.to_string())?;
        ensure(o.preperiod <= 55 && 36 % o.period == 0, || {
            format!("(7,3) mod 7: preperiod {} period {}", o.preperiod, o.period)
        })?;
        Ok(format!("periods 24, 12; (7,3) preperiod {} period {}", o.preperiod, o.period))
    })
}

fn inv(m: &CMat) -> CMat {
    m.clone().try_inverse().expect("invertible")
}

pub fn dgw_properties(seed: u64) -> CriterionResult {
    timed(7, "DGW phase properties", Some(30.0), || {
        let tol = crate::pseudo_unitary::DEFAULT_TOL;
        let mut r = rng(seed);
        let mut worst = 0.0f64;
        let mut count = 0;
        for (m, n) in [(1usize, 1usize), (2, 1), (2, 2)] {
            let h = SignatureForm::standard(m, n);
            let d = m + n;
            for _ in 0..200 {
                let e = r.gen_range(0.2..0.8);
                let g = random_su(m, n, e, &mut r).g;
                let k = random_su(m, n, 0.5, &mut r).g;
                let err = |x: &dyn std::fmt::Display| x.to_string();
                let q = dgw_phase(&g, &h, tol).map_err(|x| err(&x))?;
                // conjugation
                let qc = dgw_phase(&(&k * &g * inv(&k)), &h, tol).map_err(|x| err(&x))?;
                worst = worst.max(dist_mod1(q, qc));
                // powers
                let mut gk = g.clone();
                for j in 2..=6 {
                    gk = &gk * &g;
                    let qk = dgw_phase(&gk, &h, tol).map_err(|x| err(&x))?;
                    worst = worst.max(dist_mod1(qk, j as f64 * q));
                }
                // commuting pair in a conjugated torus
                let mut torus = || {
                    let mut ph: Vec<f64> = (0..d).map(|_| r.gen_range(0.0..2.0 * PI)).collect();
                    let s: f64 = ph.iter().sum();
                    ph[0] -= s;
                    diag(&ph.iter().map(|&t| Complex64::from_polar(1.0, t)).collect::<Vec<_>>())
                };
                let (t1, t2) = (&k * torus() * inv(&k), &k * torus() * inv(&k));
                let a = dgw_phase(&(&t1 * &t2), &h, tol).map_err(|x| err(&x))?;
                let b = dgw_phase(&t1, &h, tol).map_err(|x| err(&x))? + dgw_phase(&t2, &h, tol).map_err(|x| err(&x))?;
                worst = worst.max(dist_mod1(a, b));
                // Borel
                let (bg, bf) = random_borel(m, n, &mut r);
                worst = worst.max(dist_mod1(dgw_phase(&bg, &bf, tol).map_err(|x| err(&x))?, 0.0));
                // elliptic determinant
                let det = elliptic_positive_det(&g, &h, tol).map_err(|x| err(&x))?;
                let want = Complex64::from_polar(1.0, 2.0 * PI * q);
                worst = worst.max((det / det.norm() - want).norm());
                count += 1;
            }
        }
        ensure(worst < 1e-7, || format!("worst deviation {worst:.3e}"))?;
        Ok(format!("{count} elements, worst deviation {worst:.2e}"))
    })
}

pub fn cocycles(seed: u64) -> CriterionResult {
    timed(8, "cocycle suite", None, || {
        let tol = crate::pseudo_unitary::DEFAULT_TOL;
        let mut r = rng(seed ^ 0x5eed);
        let mut worst_id = 0.0f64;
        let mut worst_exp = 0.0f64;
        let mut worst_norm = 0.0f64;
        let shapes = [(1usize, 1usize), (2, 1), (2, 2)];
        for i in 0..100 {
            let (m, n) = shapes[i % 3];
            let h = SignatureForm::standard(m, n);
            let g: Vec<CMat> = (0..3).map(|_| random_su(m, n, 0.6, &mut r).g).collect();
            let cc = |a: &CMat, b: &CMat| cocycle_auto(a, b, &h, tol).map_err(|x| x.to_string());
            let lhs = cc(&g[0], &g[1])? + cc(&(&g[0] * &g[1]), &g[2])?;
            let rhs = cc(&g[0], &(&g[1] * &g[2]))? + cc(&g[1], &g[2])?;
            worst_id = worst_id.max((lhs - rhs).abs());
            let c01 = cc(&g[0], &g[1])?;
            let v = |x: &CMat| v0(x, &h, tol).map_err(|x| x.to_string());
            let ratio = v(&g[0])? * v(&g[1])? / v(&(&g[0] * &g[1]))?;
            worst_exp = worst_exp.max((Complex64::from_polar(1.0, -2.0 * PI * c01) - ratio).norm());
            let id = CMat::identity(m + n, m + n);
            worst_norm = worst_norm.max(cc(&g[0], &id)?.abs()).max(cc(&id, &g[0])?.abs());
        }
        let id2 = CMat::identity(2, 2);
        let h11 = SignatureForm::standard(1, 1);
        worst_norm = worst_norm.max(cocycle_auto(&id2, &id2, &h11, tol).map_err(|x| x.to_string())?.abs());
        ensure(worst_id < 1e-6 && worst_exp < 1e-8 && worst_norm < 1e-12, || {
            format!("identity {worst_id:.2e}, exp {worst_exp:.2e}, normalization {worst_norm:.2e}")
        })?;
        Ok(format!("100 triples: identity {worst_id:.1e}, exp {worst_exp:.1e}, normalization {worst_norm:.1e}"))
    })
}

pub fn embeddings(seed: u64) -> CriterionResult {
    timed(9, "embedding/winding", None, || {
        let tol = crate::pseudo_unitary::DEFAULT_TOL;
        let mut r = rng(seed ^ 0xe3b);
        let mut off = 0.0f64;
        for n in 1..=4 {
            for _ in 0..10 {
                let z = gaussian_matrix(n, n, &mut r);
                let (q, _) = z.qr().unpack();
                let t = sp_to_su(&realify(&q), tol).map_err(|x| x.to_string())?;
                off = off.max(max_abs(&block(&t, 0, n, n, n))).max(max_abs(&block(&t, n, 0, n, n)));
            }
        }
        ensure(off < 1e-10, || format!("off-diagonal residual {off:.2e}"))?;
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 2)] {
            let g = generator_loop(m, n, 256);
            let l = lift_phase(&g, tol).map_err(|x| x.to_string())?;
            ensure(l == 1.0, || format!("v0 winding {l} for ({m},{n})"))?;
            let img = GroupPath {
                samples: g.samples.iter().map(|x| su_to_sp(x, m, n, tol)).collect::<Result<_, _>>().map_err(|x| x.to_string())?,
                kind: PathKind::Symplectic,
            };
            let w = sp_winding(&img, tol).map_err(|x| x.to_string())?;
            ensure(w == 2, || format!("sp winding {w} for ({m},{n})"))?;
        }
        Ok(format!("off-diagonal {off:.1e}; windings 1 and 2"))
    })
}

fn random_isotropic<R: Rng>(h: &SignatureForm, rng: &mut R) -> CMat {
    let (vals, u) = crate::linalg::herm_eig(&h.matrix);
    let d = h.dim();
    let mut pos = CMat::zeros(d, 1);
    let mut neg = CMat::zeros(d, 1);
    let x = gaussian_vector(d, rng);
    for i in 0..d {
        let part = (u.columns(i, 1) * x[(i, 0)]).unscale(vals[i].abs().sqrt());
        if vals[i] > 0.0 {
            pos += part;
        } else {
            neg += part;
        }
    }
    let qp = (pos.adjoint() * &h.matrix * &pos)[(0, 0)].re;
    let qn = -(neg.adjoint() * &h.matrix * &neg)[(0, 0)].re;
    pos.unscale(qp.sqrt()) + neg.unscale(qn.sqrt())
}

fn rel(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b)) / (1.0 + max_abs(a).max(max_abs(b)))
}

/// Algebraic identities of transvections and quasi-reflections; returns the worst relative residual.
pub fn identity_suite<R: Rng>(g: &CMat, h: &SignatureForm, rng: &mut R) -> f64 {
    use crate::su_commutators::QuasiReflection;
    let tr = |u: &CMat, a: f64| Transvection { u: u.iter().copied().collect(), a: Complex64::new(0.0, a) };
    let qr = |u: &CMat, a: Complex64| QuasiReflection { u: u.iter().copied().collect(), a };
    let u = random_isotropic(h, rng);
    let w = gaussian_vector(h.dim(), rng);
    let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let c = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    let (za, zb) = (crate::random::unit(rng), crate::random::unit(rng));
    let mut worst = 0.0f64;
    worst = worst.max(rel(&(tr(&u, a).matrix(h) * tr(&u, b).matrix(h)), &tr(&u, a + b).matrix(h)));
    worst = worst.max(rel(&tr(&(&u * c), a).matrix(h), &tr(&u, c.norm_sqr() * a).matrix(h)));
    worst = worst.max(rel(&(g * tr(&u, a).matrix(h) * inv(g)), &tr(&(g * &u), a).matrix(h)));
    worst = worst.max(rel(&(qr(&w, za).matrix(h) * qr(&w, zb).matrix(h)), &qr(&w, za * zb).matrix(h)));
    worst = worst.max(rel(&qr(&(&w * c), za).matrix(h), &qr(&w, za).matrix(h)));
    let t = tr(&u, a).matrix(h);
    worst = worst.max(rel(&(&t * qr(&w, za).matrix(h) * inv(&t)), &qr(&(&t * &w), za).matrix(h)));
    worst
}

pub fn commutators(seed: u64) -> CriterionResult {
    timed(10, "commutator pipeline", Some(60.0), || {
        let tol = crate::pseudo_unitary::DEFAULT_TOL;
        let mut r = rng(seed ^ 0xc0);
        let mut worst = 0.0f64;
        let mut worst_id = 0.0f64;
        let mut most = 0.0f64;
        for (m, n) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
            let h = SignatureForm::standard(m, n);
            for _ in 0..100 {
                let g = random_su(m, n, 0.5, &mut r).g;
                let l = commutator_decomposition(&g, &h, tol).map_err(|x| format!("({m},{n}): {x}"))?;
                ensure(l.pairs.len() <= 14 * (m + n), || format!("{} commutators for ({m},{n})", l.pairs.len()))?;
                worst = worst.max(l.residual);
                most = most.max(l.pairs.len() as f64 / (14 * (m + n)) as f64);
                worst_id = worst_id.max(identity_suite(&g, &h, &mut r));
            }
        }
        ensure(worst < 1e-8 && worst_id < 1e-10, || {
            format!("residual {worst:.2e}, identities {worst_id:.2e}")
        })?;
        Ok(format!(
            "400 elements: residual {worst:.1e}, identities {worst_id:.1e}, at most {:.0}% of the bound",
            100.0 * most
        ))
    })
}

pub fn burau(seed: u64) -> CriterionResult {
    timed(11, "Burau/Squier", Some(60.0), || {
        let mut r = rng(seed ^ 0xb);
        let mut inv_res = 0.0f64;
        for k in 3..=7 {
            for _ in 0..20 {
                let q = crate::random::unit(&mut r);
                let j = squier_form(k, principal_sqrt(q)).map_err(|x| x.to_string())?;
                let w = BraidWord::random(k, 12, &mut r);
                let b = reduced_burau(&w, q).map_err(|x| x.to_string())?;
                inv_res = inv_res.max((b.adjoint() * &j * &b - &j).norm());
            }
            for i in 1..20 {
                let q = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / 20.0);
                let j = squier_form(k, principal_sqrt(q)).map_err(|x| x.to_string())?;
                let w = BraidWord::random_pure(k, 4, &mut r);
                let b = reduced_burau(&w, q).map_err(|x| x.to_string())?;
                inv_res = inv_res.max((b.adjoint() * &j * &b - &j).norm());
            }
        }
        ensure(inv_res < 1e-10, || format!("invariance residual {inv_res:.2e}"))?;
        let mut agreed = 0;
        for k in 3..=7 {
            for i in 0..40 {
                let q = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / 40.0);
                match squier_definite(k, q, 1e-10) {
                    Ok(_) => agreed += 1,
                    Err(BurauError::Singular) => {}
                    Err(e) => return Err(format!("k={k}, q=exp(2 pi i {i}/40): {e}")),
                }
            }
        }
        let mut thresholds = 0;
        for g in 4..=10 {
            for p in (5..=101u64).step_by(2) {
                let rc = count_noncompact_roots(g, p).map_err(|x| x.to_string())?;
                ensure(rc.bound_holds, || format!("count {} below bound {} at g={g} p={p}", rc.count, rc.bound))?;
                let t = threshold_check(g, p).map_err(|x| x.to_string())?;
                if t.applies {
                    ensure(t.count_exceeds, || format!("count {} <= t_g {} at g={g} p={p}", t.count, t.t_g))?;
                    thresholds += 1;
                }
            }
        }
        Ok(format!(
            "invariance {inv_res:.1e}; {agreed} definiteness agreements; bounds hold; {thresholds} threshold cases"
        ))
    })
}

pub fn obstruction() -> CriterionResult {
    timed(12, "central obstruction", None, || {
        let z = RootOfUnity::new(10, 1).unwrap();
        let mut worst = 0.0f64;
        for (g, hp, nonvanishing) in [(2usize, 4i64, true), (4, 25, false)] {
            let o = central_obstruction(g, 5, z).map_err(|x| x.to_string())?;
            ensure(o.record.h_plus == BigInt::from(hp) && o.nonvanishing == nonvanishing, || {
                format!("g={g}: h+ = {}, nonvanishing {}", o.record.h_plus, o.nonvanishing)
            })?;
            let want = (-6.0 * hp as f64 * z.arg()).rem_euclid(2.0 * PI);
            let d = (o.phase - want).abs();
            worst = worst.max(d.min(2.0 * PI - d));
        }
        ensure(worst < 1e-12, || format!("phase deviation {worst:.2e}"))?;
        Ok(format!("h+ = 4 (nonvanishing), 25 (vanishing); phase deviation {worst:.1e}"))
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        sequences(),
        brute_force_signatures(),
        dimensions(),
        congruences(),
        theta_table(),
        orbits(),
        dgw_properties(seed),
        cocycles(seed),
        embeddings(seed),
        commutators(seed),
        burau(seed),
        obstruction(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        for c in [sequences(), theta_table(), orbits(), obstruction()] {
            assert!(c.pass, "{}", c.line());
        }
    }

    #[test]
    fn fixtures_have_expected_lengths() {
        assert_eq!(REFERENCE_SIGMA.len(), 8);
        assert_eq!(&REFERENCE_SIGMA[1].1[..7], &REFERENCE_N5);
    }
}
