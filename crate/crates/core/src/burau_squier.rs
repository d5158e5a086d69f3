//! Reduced Burau representation at unit `q`, the Squier form and the root
//! counting behind the non-compact factor bound.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub type CMat = DMatrix<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BurauError {
    #[error("braid words need at least {min} strands, got {got}")]
    Strands { min: usize, got: usize },
    #[error("generator index {index} out of range for {strands} strands")]
    Letter { index: i32, strands: usize },
    #[error("q must be a unit complex number (|q| = {0})")]
    NotUnit(f64),
    #[error("Squier form is singular at this q")]
    Singular,
    #[error("window verdict {window} disagrees with eigenvalue verdict {eigen}")]
    Disagreement { window: bool, eigen: bool },
    #[error("genus {0} out of range")]
    Genus(usize),
    #[error("level {0} must be odd and at least 5")]
    Level(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    /// `i` for `sigma_i`, `-i` for its inverse.
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BurauError> {
        if strands < 2 {
            return Err(BurauError::Strands { min: 2, got: strands });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BurauError::Letter { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `A_{ij} = s_{j-1} .. s_{i+1} s_i^2 s_{i+1}^-1 .. s_{j-1}^-1`, `1 <= i < j <= strands`.
    pub fn pure_generator(strands: usize, i: usize, j: usize) -> Result<BraidWord, BurauError> {
        if !(1 <= i && i < j && j <= strands) {
            return Err(BurauError::Letter { index: j as i32, strands });
        }
        let mut letters: Vec<i32> = (i + 1..j).rev().map(|x| x as i32).collect();
        letters.push(i as i32);
        letters.push(i as i32);
        letters.extend((i + 1..j).map(|x| -(x as i32)));
        BraidWord::new(strands, letters)
    }

    pub fn random<R: Rng>(strands: usize, len: usize, rng: &mut R) -> BraidWord {
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord { strands, letters }
    }

    pub fn random_pure<R: Rng>(strands: usize, len: usize, rng: &mut R) -> BraidWord {
        let mut w = BraidWord { strands, letters: vec![] };
        for _ in 0..len {
            let i = rng.gen_range(1..strands);
            let j = rng.gen_range(i + 1..=strands);
            let a = BraidWord::pure_generator(strands, i, j).unwrap();
            w = w.concat(&if rng.gen_bool(0.5) { a } else { a.inverse() });
        }
        w
    }
}

fn check_unit(q: Complex64) -> Result<(), BurauError> {
    if (q.norm() - 1.0).abs() > 1e-9 {
        return Err(BurauError::NotUnit(q.norm()));
    }
    Ok(())
}

/// Reduced Burau matrix of `sigma_i` (1-based) on `k` strands.
pub fn generator(k: usize, i: usize, q: Complex64) -> CMat {
    let d = k - 1;
    let r = i - 1;
    let mut m = CMat::identity(d, d);
    m[(r, r)] = -q;
    if r > 0 {
        m[(r, r - 1)] = q;
    }
    if r + 1 < d {
        m[(r, r + 1)] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn reduced_burau(w: &BraidWord, q: Complex64) -> Result<CMat, BurauError> {
    if w.strands < 3 {
        return Err(BurauError::Strands { min: 3, got: w.strands });
    }
    check_unit(q)?;
    let k = w.strands;
    let gens: Vec<CMat> = (1..k).map(|i| generator(k, i, q)).collect();
    let invs: Vec<CMat> = gens.iter().map(|g| g.clone().try_inverse().expect("q != 0")).collect();
    let mut acc = CMat::identity(k - 1, k - 1);
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        acc *= if l > 0 { &gens[i] } else { &invs[i] };
    }
    Ok(acc)
}

/// Hermitian tridiagonal form with `beta* J beta = J` for `q = s^2`.
pub fn squier_form(k: usize, s: Complex64) -> Result<CMat, BurauError> {
    if k < 3 {
        return Err(BurauError::Strands { min: 3, got: k });
    }
    let d = k - 1;
    let mut j = CMat::zeros(d, d);
    for i in 0..d {
        j[(i, i)] = s + s.conj();
        if i + 1 < d {
            j[(i + 1, i)] = -s;
            j[(i, i + 1)] = -s.conj();
        }
    }
    Ok(j)
}

pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// `arg q` in `(-pi, pi]`.
pub fn principal_arg(q: Complex64) -> f64 {
    let a = q.arg();
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// The principal square root `exp(i arg(q) / 2)`.
pub fn principal_sqrt(q: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, principal_arg(q) / 2.0)
}

/// Closed-form spectrum `2 cos(theta/2) - 2 cos(j pi / k)` of the form at `s = exp(i theta/2)`.
pub fn squier_spectrum(k: usize, s: Complex64) -> Vec<f64> {
    let mut ev: Vec<f64> =
        (1..k).map(|j| 2.0 * s.re - 2.0 * (j as f64 * PI / k as f64).cos()).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// True when `q` has multiplicative order dividing `k` (and `q != 1`), within `tol`.
pub fn squier_singular(k: usize, q: Complex64, tol: f64) -> bool {
    let t = principal_arg(q);
    (1..k).any(|j| {
        let target = 2.0 * PI * j as f64 / k as f64;
        let d = (t - target).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d) < tol
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Definiteness {
    pub window: bool,
    pub eigen: bool,
    /// +1 positive definite, -1 negative definite, 0 indefinite, for the principal `s`
    pub sign: i8,
}

pub fn in_window(k: usize, q: Complex64) -> bool {
    principal_arg(q).abs() < 2.0 * PI / k as f64
}

pub fn squier_definite(k: usize, q: Complex64, tol: f64) -> Result<Definiteness, BurauError> {
    check_unit(q)?;
    if k < 3 {
        return Err(BurauError::Strands { min: 3, got: k });
    }
    if squier_singular(k, q, tol.max(1e-12)) {
        return Err(BurauError::Singular);
    }
    let window = in_window(k, q);
    let ev = hermitian_eigenvalues(&squier_form(k, principal_sqrt(q))?);
    let scale = ev.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let pos = ev.iter().all(|&x| x > tol * scale);
    let neg = ev.iter().all(|&x| x < -tol * scale);
    let eigen = pos || neg;
    if eigen != window {
        return Err(BurauError::Disagreement { window, eigen });
    }
    Ok(Definiteness { window, eigen, sign: if pos { 1 } else if neg { -1 } else { 0 } })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unitarizability {
    DefiniteWindow,
    PrincipalRoot,
    NonUnitarizable,
}

/// `q = exp(+-2 pi i / n)` for an integer `n >= 3`.
pub fn is_principal_root(q: Complex64, tol: f64) -> bool {
    let t = principal_arg(q).abs();
    if t < tol {
        return false;
    }
    let n = (2.0 * PI / t).round();
    n >= 3.0 && (t - 2.0 * PI / n).abs() < tol
}

pub fn unitarizable(k: usize, q: Complex64) -> Result<Unitarizability, BurauError> {
    check_unit(q)?;
    if k < 3 {
        return Err(BurauError::Strands { min: 3, got: k });
    }
    let tol = 1e-12;
    if principal_arg(q).abs() < 2.0 * PI / k as f64 - tol {
        Ok(Unitarizability::DefiniteWindow)
    } else if is_principal_root(q, tol) {
        Ok(Unitarizability::PrincipalRoot)
    } else {
        Ok(Unitarizability::NonUnitarizable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCount {
    pub g: usize,
    pub p: u64,
    /// roots outside the window and not principal
    pub count: u64,
    /// roots satisfying the two window inequalities
    pub inside: u64,
    pub principal_excluded: u64,
    /// `floor((2g-3)p / 4g) - 3`
    pub bound: i64,
    pub bound_holds: bool,
    /// `inside <= (3p + 6g) / 4g`
    pub inside_estimate_holds: bool,
    /// roots whose `arg q` lies in the window after reduction mod `2 pi`
    pub inside_mod_2pi: u64,
}

/// Counts `k` in `0..=(p-3)/2` with `zeta = exp((2k+1) pi i/p)`, `q = zeta^4`.
pub fn count_noncompact_roots(g: usize, p: u64) -> Result<RootCount, BurauError> {
    if g < 4 {
        return Err(BurauError::Genus(g));
    }
    if p < 5 || p % 2 == 0 {
        return Err(BurauError::Level(p));
    }
    let (gi, pi) = (g as i64, p as i64);
    let mut count = 0;
    let mut inside = 0;
    let mut principal = 0;
    let mut inside_mod = 0;
    for k in 0..=(pi - 3) / 2 {
        // arg q = x pi / p with x = 4(2k+1)
        let x = 4 * (2 * k + 1);
        let first = x * gi <= 2 * pi;
        let second = (x - 2 * pi).abs() * gi <= 2 * pi;
        let y = (x + pi).rem_euclid(2 * pi) - pi;
        if y.abs() * gi <= 2 * pi {
            inside_mod += 1;
        }
        let is_principal = (2 * (2 * k + 1) - 1).rem_euclid(pi) == 0 || (2 * (2 * k + 1) + 1).rem_euclid(pi) == 0;
        if first || second {
            inside += 1;
        } else if is_principal {
            principal += 1;
        } else {
            count += 1;
        }
    }
    let bound = Integer::div_floor(&((2 * gi - 3) * pi), &(4 * gi)) - 3;
    Ok(RootCount {
        g,
        p,
        count,
        inside,
        principal_excluded: principal,
        bound,
        bound_holds: count as i64 >= bound,
        inside_estimate_holds: 4 * gi * inside as i64 <= 3 * pi + 6 * gi,
        inside_mod_2pi: inside_mod,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub g: usize,
    pub t_g: u64,
    /// `2g(g+9) / (2g-3)` in lowest terms
    pub threshold: (u64, u64),
}

pub fn lattice_thresholds(g: usize) -> Result<Thresholds, BurauError> {
    if g < 4 {
        return Err(BurauError::Genus(g));
    }
    let g64 = g as u64;
    let num = 2 * g64 * (g64 + 9);
    let den = 2 * g64 - 3;
    let d = num.gcd(&den);
    Ok(Thresholds { g, t_g: 1 + g64 / 2, threshold: (num / d, den / d) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCheck {
    pub g: usize,
    pub p: u64,
    pub applies: bool,
    pub t_g: u64,
    pub count: u64,
    pub bound: i64,
    /// certified count of non-compact factors exceeds `t_g`
    pub count_exceeds: bool,
    /// the floored bound itself exceeds `t_g`
    pub bound_exceeds: bool,
}

/// For prime `p = 3 mod 4` above the threshold, compares the factor counts against `t_g`.
pub fn threshold_check(g: usize, p: u64) -> Result<ThresholdCheck, BurauError> {
    let th = lattice_thresholds(g)?;
    let rc = count_noncompact_roots(g, p)?;
    let applies = crate::conformal_blocks::is_prime(p)
        && p % 4 == 3
        && p * th.threshold.1 > th.threshold.0;
    Ok(ThresholdCheck {
        g,
        p,
        applies,
        t_g: th.t_g,
        count: rc.count,
        bound: rc.bound,
        count_exceeds: rc.count > th.t_g,
        bound_exceeds: rc.bound > th.t_g as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(t: f64) -> Complex64 {
        Complex64::from_polar(1.0, t)
    }

    fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn group_relations() {
        let q = unit(0.7);
        let id = CMat::identity(3, 3);
        assert!(close(&reduced_burau(&BraidWord::new(4, vec![]).unwrap(), q).unwrap(), &id, 1e-12));
        assert!(close(&reduced_burau(&BraidWord::new(4, vec![1, -1]).unwrap(), q).unwrap(), &id, 1e-12));
        let a = reduced_burau(&BraidWord::new(4, vec![1, 2, 1]).unwrap(), q).unwrap();
        let b = reduced_burau(&BraidWord::new(4, vec![2, 1, 2]).unwrap(), q).unwrap();
        assert!(close(&a, &b, 1e-12));
        let c = reduced_burau(&BraidWord::new(4, vec![1, 3]).unwrap(), q).unwrap();
        let d = reduced_burau(&BraidWord::new(4, vec![3, 1]).unwrap(), q).unwrap();
        assert!(close(&c, &d, 1e-12));
    }

    #[test]
    fn purity() {
        assert!(BraidWord::pure_generator(4, 1, 3).unwrap().is_pure());
        assert!(!BraidWord::new(3, vec![1]).unwrap().is_pure());
        assert!(BraidWord::new(3, vec![3]).is_err());
    }

    #[test]
    fn squier_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = unit(4.0 * 2.0 * PI / 14.0);
        let s = principal_sqrt(q);
        let j = squier_form(4, s).unwrap();
        for _ in 0..100 {
            let w = BraidWord::random(4, 12, &mut rng);
            let b = reduced_burau(&w, q).unwrap();
            assert!((b.adjoint() * &j * &b - &j).norm() < 1e-10);
        }
    }

    #[test]
    fn spectrum_matches_closed_form() {
        for k in 3..8 {
            for t in [0.1, 0.9, 2.0, -1.3, 3.0] {
                let s = unit(t / 2.0);
                let ev = hermitian_eigenvalues(&squier_form(k, s).unwrap());
                for (a, b) in ev.iter().zip(squier_spectrum(k, s)) {
                    assert!((a - b).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn singular_cases() {
        // order 4 divides k = 4
        let j = squier_form(4, principal_sqrt(unit(PI / 2.0))).unwrap();
        assert!(j.determinant().norm() < 1e-12);
        // order 3 does not divide 4: non-singular, the naive "order <= k" reading fails
        let j = squier_form(4, principal_sqrt(unit(2.0 * PI / 3.0))).unwrap();
        assert!(j.determinant().norm() > 0.1);
        // order 3 and k = 6
        let j = squier_form(6, principal_sqrt(unit(2.0 * PI / 3.0))).unwrap();
        assert!(j.determinant().norm() < 1e-12);
        assert!(squier_singular(6, unit(2.0 * PI / 3.0), 1e-12));
        assert!(!squier_singular(4, unit(2.0 * PI / 3.0), 1e-12));
    }

    #[test]
    fn sign_flip() {
        let q = unit(PI / 4.0);
        let s = principal_sqrt(q);
        let a = hermitian_eigenvalues(&squier_form(4, s).unwrap());
        let b = hermitian_eigenvalues(&squier_form(4, -s).unwrap());
        assert!(a.iter().all(|&x| x > 0.0));
        assert!(b.iter().all(|&x| x < 0.0));
    }

    #[test]
    fn definiteness_examples() {
        assert!(squier_definite(4, unit(PI / 4.0), 1e-9).unwrap().window);
        assert!(!squier_definite(4, unit(3.0 * PI / 4.0), 1e-9).unwrap().eigen);
        let edge = 2.0 * PI / 5.0;
        assert!(squier_definite(5, unit(edge - 1e-3), 1e-9).unwrap().eigen);
        assert!(!squier_definite(5, unit(edge + 1e-3), 1e-9).unwrap().eigen);
        assert_eq!(squier_definite(4, unit(PI / 2.0), 1e-9), Err(BurauError::Singular));
    }

    #[test]
    fn unitarizable_examples() {
        for k in 5..10 {
            assert_eq!(unitarizable(k, unit(2.0 * PI / 5.0)).unwrap(), Unitarizability::PrincipalRoot);
        }
        assert_eq!(unitarizable(3, unit(2.0 * PI / 5.0)).unwrap(), Unitarizability::DefiniteWindow);
        assert_eq!(unitarizable(5, unit(PI / 5.0)).unwrap(), Unitarizability::DefiniteWindow);
        assert_eq!(unitarizable(5, unit(4.0 * PI / 5.0)).unwrap(), Unitarizability::NonUnitarizable);
    }

    #[test]
    fn counting_examples() {
        let r = count_noncompact_roots(4, 31).unwrap();
        assert_eq!(r.bound, 6);
        assert!(r.count >= 6);
        let r = count_noncompact_roots(4, 5).unwrap();
        assert_eq!(r.bound, -2);
        // brute force over the roots themselves
        for g in 4..=10 {
            for p in (5..=101u64).step_by(2) {
                let r = count_noncompact_roots(g, p).unwrap();
                let mut brute = 0;
                let mut inside = 0;
                for k in 0..=(p - 3) / 2 {
                    let t = 4.0 * (2 * k + 1) as f64 * PI / p as f64;
                    let w = 2.0 * PI / g as f64;
                    let eps = 1e-9;
                    if t <= w + eps || (t - 2.0 * PI).abs() <= w + eps {
                        inside += 1;
                        continue;
                    }
                    // the excluded class is zeta = A_p up to conjugation
                    let a = crate::cyclo_exact::standard_root(p).unwrap().exponent();
                    let e = 2 * k + 1;
                    if e != a && e != 2 * p - a {
                        brute += 1;
                    }
                }
                assert_eq!((r.count, r.inside), (brute, inside), "g={g} p={p}");
            }
        }
    }

    #[test]
    fn thresholds() {
        let t = lattice_thresholds(4).unwrap();
        assert_eq!((t.t_g, t.threshold), (3, (104, 5)));
        let t = lattice_thresholds(5).unwrap();
        assert_eq!((t.t_g, t.threshold), (3, (20, 1)));
        // the floored bound alone misses t_g at exactly one point
        let c = threshold_check(10, 23).unwrap();
        assert!(c.applies && !c.bound_exceeds && c.count_exceeds);
    }
}
