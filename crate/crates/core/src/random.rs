//! Seeded random elements of `SU(m,n)` and `Sp(2n, R)` for tests and the CLI.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, cr, CMat};
use crate::pseudo_unitary::{GroupPath, PathKind, PuError, SignatureForm};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| c(normal(rng), normal(rng)) * std::f64::consts::FRAC_1_SQRT_2)
}

pub fn gaussian_vector<R: Rng>(d: usize, rng: &mut R) -> CMat {
    gaussian_matrix(d, 1, rng)
}

/// Traceless block-diagonal skew-Hermitian matrix (Lie algebra of `S(U(m) x U(n))`).
pub fn random_k_algebra<R: Rng>(m: usize, n: usize, rng: &mut R) -> CMat {
    let d = m + n;
    let mut a = CMat::zeros(d, d);
    for (r0, len) in [(0, m), (m, n)] {
        if len == 0 {
            continue;
        }
        let x = gaussian_matrix(len, len, rng);
        let s = (&x - x.adjoint()).scale(0.5);
        a.view_mut((r0, r0), (len, len)).copy_from(&s);
    }
    let tr = a.trace() / d as f64;
    a - CMat::identity(d, d) * tr
}

/// Hermitian `[[0, B], [B*, 0]]` with `B` scaled by `spread`.
pub fn random_p_algebra<R: Rng>(m: usize, n: usize, spread: f64, rng: &mut R) -> CMat {
    let d = m + n;
    let b = gaussian_matrix(m, n, rng).scale(spread);
    let mut p = CMat::zeros(d, d);
    p.view_mut((0, m), (m, n)).copy_from(&b);
    p.view_mut((m, 0), (n, m)).copy_from(&b.adjoint());
    p
}

/// `g = exp(A1) exp(P) exp(A2)` together with its factors.
#[derive(Debug, Clone)]
pub struct RandomElement {
    pub g: CMat,
    pub a1: CMat,
    pub p: CMat,
    pub a2: CMat,
}

impl RandomElement {
    pub fn at(&self, t: f64) -> CMat {
        (&self.a1 * cr(t)).exp() * (&self.p * cr(t)).exp() * (&self.a2 * cr(t)).exp()
    }

    /// The path `t -> exp(tA1) exp(tP) exp(tA2)`, sampled finely enough for the form.
    pub fn path(&self, h: &SignatureForm, tol: f64) -> Result<GroupPath, PuError> {
        let hh = h.clone();
        GroupPath::adaptive(&|t| self.at(t), PathKind::Unitary(h.clone()), &|m| {
            Ok(vec![crate::pseudo_unitary::v0(m, &hh, tol)?])
        })
    }
}

pub fn random_su<R: Rng>(m: usize, n: usize, spread: f64, rng: &mut R) -> RandomElement {
    let a1 = random_k_algebra(m, n, rng);
    let p = random_p_algebra(m, n, spread, rng);
    let a2 = random_k_algebra(m, n, rng);
    let g = a1.exp() * p.exp() * a2.exp();
    RandomElement { g, a1, p, a2 }
}

/// Random `X` in `sp(2n, R)`: `X = J S` with `S` real symmetric.
pub fn random_sp_algebra<R: Rng>(n: usize, spread: f64, rng: &mut R) -> CMat {
    let d = 2 * n;
    let s = CMat::from_fn(d, d, |_, _| cr(normal(rng)));
    let sym = (&s + s.transpose()).scale(0.5 * spread);
    crate::linalg::sym_j(n) * sym
}

pub fn random_symplectic<R: Rng>(n: usize, spread: f64, rng: &mut R) -> (CMat, CMat) {
    let x = random_sp_algebra(n, spread, rng);
    (x.exp(), x)
}

/// Hyperbolic form on `(e_1..e_r, w, f_r..f_1)` with `B(e_i, f_i) = 1`, `w` definite.
pub fn hyperbolic_form(m: usize, n: usize) -> SignatureForm {
    let d = m + n;
    let r = m.min(n);
    let mut h = CMat::zeros(d, d);
    for i in 0..r {
        h[(i, d - 1 - i)] = cr(1.0);
        h[(d - 1 - i, i)] = cr(1.0);
    }
    let sign = if m >= n { 1.0 } else { -1.0 };
    for i in r..d - r {
        h[(i, i)] = cr(sign);
    }
    SignatureForm { m, n, matrix: h }
}

/// Upper-triangular element of `AN` for [`hyperbolic_form`].
pub fn random_borel<R: Rng>(m: usize, n: usize, rng: &mut R) -> (CMat, SignatureForm) {
    let form = hyperbolic_form(m, n);
    let d = m + n;
    let r = m.min(n);
    let mut x = CMat::zeros(d, d);
    for i in 0..r {
        let a = 0.3 + rng.gen::<f64>() + i as f64;
        x[(i, i)] = cr(a);
        x[(d - 1 - i, d - 1 - i)] = cr(-a);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mid = (r..d - r).contains(&i) && (r..d - r).contains(&j);
            if !mid {
                x[(i, j)] = c(normal(rng), normal(rng)).scale(0.5);
            }
        }
    }
    let h = &form.matrix;
    let hinv = h.clone().try_inverse().expect("form invertible");
    let proj = (&x - hinv * x.adjoint() * h).scale(0.5);
    (proj.exp(), form)
}

/// A form `M^{-*} I_{m,n} M^{-1}` and the change of basis `M`.
pub fn random_form<R: Rng>(m: usize, n: usize, rng: &mut R) -> (SignatureForm, CMat) {
    let d = m + n;
    let mm = CMat::identity(d, d) + gaussian_matrix(d, d, rng).scale(0.3);
    let inv = mm.clone().try_inverse().expect("generic matrix");
    let h = inv.adjoint() * crate::linalg::ipq(m, n) * &inv;
    let h = (&h + h.adjoint()).scale(0.5);
    (SignatureForm { m, n, matrix: h }, mm)
}

pub fn unit<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * std::f64::consts::PI))
}
