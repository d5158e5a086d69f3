//! Transvections, quasi-reflections and the commutator decomposition of `SU(m,n)`.
//!
//! `B(v, u) = u* H v` and `Q(u) = B(u, u)`. Factor lists are read left to right:
//! `[F1, F2, F3]` stands for the product `F1 F2 F3`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{c, cr, herm_eig, inf_norm, matrix_serde, max_abs, null_space, CMat};
use crate::pseudo_unitary::{is_member, PuError, SignatureForm};
use crate::random::gaussian_vector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CommutatorError {
    #[error("vector is not isotropic (Q = {0:.3e})")]
    NotIsotropic(f64),
    #[error("vector is isotropic")]
    Isotropic,
    #[error("transvection parameter {0} is not purely imaginary")]
    NotImaginary(Complex64),
    #[error("quasi-reflection parameter {0} is not a unit")]
    NotUnit(Complex64),
    #[error("plane is not hyperbolic")]
    NotHyperbolic,
    #[error("form must be indefinite (m n != 0)")]
    Definite,
    #[error("determinant product {0} is not 1")]
    NotSpecial(Complex64),
    #[error("{stage}: {detail}")]
    Stage { stage: &'static str, detail: String },
    #[error(transparent)]
    Group(#[from] PuError),
}

type Result<T> = std::result::Result<T, CommutatorError>;

fn col(v: &[Complex64]) -> CMat {
    CMat::from_column_slice(v.len(), 1, v)
}

fn to_vec(m: &CMat) -> Vec<Complex64> {
    m.iter().copied().collect()
}

fn bform(h: &SignatureForm, v: &CMat, u: &CMat) -> Complex64 {
    (u.adjoint() * &h.matrix * v)[(0, 0)]
}

fn qform(h: &SignatureForm, u: &CMat) -> f64 {
    bform(h, u, u).re
}

fn is_isotropic(h: &SignatureForm, u: &CMat, tol: f64) -> bool {
    qform(h, u).abs() <= tol * u.norm_squared().max(f64::MIN_POSITIVE)
}

fn stage(stage: &'static str, detail: impl Into<String>) -> CommutatorError {
    CommutatorError::Stage { stage, detail: detail.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transvection {
    pub u: Vec<Complex64>,
    pub a: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiReflection {
    pub u: Vec<Complex64>,
    pub a: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Factor {
    Quasi(QuasiReflection),
    Trans(Transvection),
}

impl Transvection {
    pub fn new(u: &CMat, a: Complex64, h: &SignatureForm, tol: f64) -> Result<Self> {
        if !is_isotropic(h, u, tol) {
            return Err(CommutatorError::NotIsotropic(qform(h, u)));
        }
        if a.re.abs() > tol * (1.0 + a.norm()) {
            return Err(CommutatorError::NotImaginary(a));
        }
        Ok(Transvection { u: to_vec(u), a: c(0.0, a.im) })
    }

    pub fn matrix(&self, h: &SignatureForm) -> CMat {
        let u = col(&self.u);
        let d = u.nrows();
        CMat::identity(d, d) + &u * u.adjoint() * &h.matrix * self.a
    }

    pub fn inverse(&self) -> Self {
        Transvection { u: self.u.clone(), a: -self.a }
    }
}

impl QuasiReflection {
    pub fn new(u: &CMat, a: Complex64, h: &SignatureForm, tol: f64) -> Result<Self> {
        if is_isotropic(h, u, tol) {
            return Err(CommutatorError::Isotropic);
        }
        if (a.norm() - 1.0).abs() > tol {
            return Err(CommutatorError::NotUnit(a));
        }
        Ok(QuasiReflection { u: to_vec(u), a: a / a.norm() })
    }

    pub fn matrix(&self, h: &SignatureForm) -> CMat {
        let u = col(&self.u);
        let d = u.nrows();
        let q = qform(h, &u);
        CMat::identity(d, d) + &u * u.adjoint() * &h.matrix * ((self.a - cr(1.0)) / q)
    }
}

impl Factor {
    pub fn matrix(&self, h: &SignatureForm) -> CMat {
        match self {
            Factor::Quasi(q) => q.matrix(h),
            Factor::Trans(t) => t.matrix(h),
        }
    }
}

pub fn build_transvection(u: &[Complex64], a: Complex64, h: &SignatureForm, tol: f64) -> Result<CMat> {
    Ok(Transvection::new(&col(u), a, h, tol)?.matrix(h))
}

pub fn build_quasi_reflection(u: &[Complex64], a: Complex64, h: &SignatureForm, tol: f64) -> Result<CMat> {
    Ok(QuasiReflection::new(&col(u), a, h, tol)?.matrix(h))
}

pub fn product(factors: &[Factor], h: &SignatureForm) -> CMat {
    let d = h.dim();
    factors.iter().fold(CMat::identity(d, d), |acc, f| acc * f.matrix(h))
}

pub fn transvection_product(ts: &[Transvection], h: &SignatureForm) -> CMat {
    let d = h.dim();
    ts.iter().fold(CMat::identity(d, d), |acc, t| acc * t.matrix(h))
}

fn trans(u: &CMat, a: Complex64) -> Transvection {
    Transvection { u: to_vec(u), a: c(0.0, a.im) }
}

fn same_line(u: &CMat, v: &CMat, tol: f64) -> bool {
    let un = u.normalize();
    let vn = v.normalize();
    let overlap = (vn.adjoint() * &un)[(0, 0)];
    (un - vn * overlap).norm() <= tol.sqrt()
}

// single transvection sending [u] to [v] when B(u, v) != 0
fn line_step(u: &CMat, v: &CMat, h: &SignatureForm) -> Transvection {
    let buv = bform(h, u, v);
    let vp = v * (cr(1.0) / buv.conj());
    let a = c(0.0, 1.0);
    let x = u + &vp * a;
    let b = -cr(1.0) / a.conj();
    trans(&x, b)
}

fn generic_vectors(d: usize, count: usize, seed: u64) -> Vec<CMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gaussian_vector(d, &mut rng)).collect()
}

/// At most two transvections whose product sends the isotropic line `[u]` to `[v]`.
pub fn map_isotropic_line(u: &CMat, v: &CMat, h: &SignatureForm, tol: f64) -> Result<Vec<Transvection>> {
    for w in [u, v] {
        if !is_isotropic(h, w, tol) {
            return Err(CommutatorError::NotIsotropic(qform(h, w)));
        }
    }
    if same_line(u, v, tol) {
        return Ok(vec![]);
    }
    let buv = bform(h, u, v);
    if buv.norm() > tol.sqrt() * u.norm() * v.norm() {
        return Ok(vec![line_step(u, v, h)]);
    }
    // route through an isotropic x with B(u, x) != 0 != B(v, x)
    let d = u.nrows();
    let x = generic_vectors(d, 8, 7)
        .into_iter()
        .max_by(|a, b| {
            let s = |x: &CMat| bform(h, u, x).norm().min(bform(h, v, x).norm()) / x.norm();
            s(a).partial_cmp(&s(b)).unwrap()
        })
        .expect("candidates");
    let bux = bform(h, u, &x);
    let cc = -cr(qform(h, &x)) / (bux * 2.0);
    let x = x + u * cc;
    let first = line_step(u, &x, h);
    let second = line_step(&x, v, h);
    Ok(vec![second, first])
}

/// Hyperbolic pair `(e, f)` spanning the plane of `p1, p2`, with `B(e, f) = 1`.
pub fn hyperbolic_pair(p1: &CMat, p2: &CMat, h: &SignatureForm, tol: f64) -> Result<(CMat, CMat)> {
    let d = p1.nrows();
    let mut p = CMat::zeros(d, 2);
    p.set_column(0, &p1.column(0));
    p.set_column(1, &p2.column(0));
    let gram = p.adjoint() * &h.matrix * &p;
    let (vals, u) = herm_eig(&gram);
    let scale = p1.norm() * p2.norm() * inf_norm(&h.matrix);
    if !(vals[0] > tol * scale && vals[1] < -tol * scale) {
        return Err(CommutatorError::NotHyperbolic);
    }
    let wp = (&p * u.columns(0, 1)).scale(1.0 / vals[0].sqrt());
    let wm = (&p * u.columns(1, 1)).scale(1.0 / (-vals[1]).sqrt());
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(((&wp + &wm).scale(s), (&wp - &wm).scale(s)))
}

/// `diag(b, 1/b)` on a hyperbolic pair as four transvections (`a = i`).
pub fn diagonal_factors(e: &CMat, f: &CMat, b: f64) -> Vec<Transvection> {
    let a = c(0.0, 1.0);
    let binv = 1.0 / b;
    vec![
        trans(f, -a),
        trans(e, (cr(1.0 - binv)) / a),
        trans(f, a * b),
        trans(e, cr(binv * binv - binv) / a),
    ]
}

/// At most 7 transvections for `g` preserving `span(p1, p2)` and fixing its orthocomplement.
pub fn su11_to_transvections(
    g: &CMat,
    p1: &CMat,
    p2: &CMat,
    h: &SignatureForm,
    tol: f64,
) -> Result<Vec<Transvection>> {
    let (e, f) = hyperbolic_pair(p1, p2, h, tol)?;
    let d = g.nrows();
    let scale = inf_norm(g).max(1.0);
    if max_abs(&(g - CMat::identity(d, d))) <= tol * scale {
        return Ok(vec![]);
    }
    // ge = alpha e + beta f; tau_{f, -beta/alpha} returns it to [e]
    let ge = g * &e;
    let (ga, gb) = (bform(h, &ge, &f), bform(h, &ge, &e));
    let t1 = if gb.norm() <= tol * scale {
        vec![]
    } else if ga.norm() >= gb.norm() {
        vec![trans(&f, -gb / ga)]
    } else {
        map_isotropic_line(&ge, &e, h, tol * scale * scale)?
    };
    let h1 = transvection_product(&t1, h) * g;
    // h1 = diag(b, 1/b) tau_{e,c}; stripping the diagonal first keeps c bounded
    let b = bform(h, &(&h1 * &e), &f).re;
    let dinv = transvection_product(&diagonal_factors(&e, &f, 1.0 / b), h);
    let y = dinv * &h1 * &f;
    let cpar = -bform(h, &y, &f) / bform(h, &y, &e);
    let mut out: Vec<Transvection> = t1.iter().rev().map(Transvection::inverse).collect();
    if (b - 1.0).abs() > tol {
        out.extend(diagonal_factors(&e, &f, b));
    }
    if cpar.im.abs() > tol {
        out.push(trans(&e, cpar).inverse());
    }
    let resid = max_abs(&(transvection_product(&out, h) - g));
    if resid > 1e3 * tol * scale * scale {
        return Err(stage("su11", format!("reconstruction residual {resid:.3e}")));
    }
    Ok(out)
}

/// Extracts `(u, a)` when `g - I` has rank one with isotropic image.
fn as_transvection(g: &CMat, h: &SignatureForm, tol: f64) -> Option<Transvection> {
    let d = g.nrows();
    let n = g - CMat::identity(d, d);
    let (_, sv) = null_space(&n, 1);
    let top = sv[d - 1];
    if top <= tol || (d >= 2 && sv[d - 2] > 1e-6 * top) {
        return None;
    }
    let j = (0..d).max_by(|&a, &b| n.column(a).norm().partial_cmp(&n.column(b).norm()).unwrap())?;
    let u = n.columns(j, 1).normalize();
    if !is_isotropic(h, &u, 1e-6) {
        return None;
    }
    let row = u.adjoint() * &n;
    let hrow = u.adjoint() * &h.matrix;
    let lam = (&row * hrow.adjoint())[(0, 0)] / (&hrow * hrow.adjoint())[(0, 0)];
    let t = trans(&u, lam);
    if max_abs(&(t.matrix(h) - g)) > 1e-6 * top.max(1.0) {
        return None;
    }
    Some(t)
}

/// Quasi-reflections and transvections whose product is `g` (at most `m+n` on generic input).
pub fn reflection_factorization(g: &CMat, h: &SignatureForm, tol: f64) -> Result<Vec<Factor>> {
    let d = h.dim();
    let scale = inf_norm(g).max(1.0);
    let mb = is_member(g, h, tol * scale * scale)?;
    if !mb.member {
        return Err(PuError::NotMember(mb.residual).into());
    }
    let mut cur = g.clone();
    let mut fixed: Vec<CMat> = Vec::new();
    let mut out: Vec<Factor> = Vec::new();
    let mut seed = 11u64;
    let fix_tol = 1e-7 * scale;
    let hnorm = inf_norm(&h.matrix);
    for _ in 0..4 * d {
        if fixed.len() == d || max_abs(&(&cur - CMat::identity(d, d))) <= tol * scale {
            break;
        }
        if fixed.is_empty() {
            if let Some(t) = as_transvection(&cur, h, tol * scale) {
                out.push(Factor::Trans(t));
                break;
            }
        }
        // orthonormal basis of W = fixed^perp
        let mut m = CMat::zeros(d, d);
        for (i, v) in fixed.iter().enumerate() {
            m.set_row(i, &(v.adjoint() * &h.matrix).row(0));
        }
        let (w, _) = null_space(&m, d - fixed.len());
        let k = w.ncols();
        let mut cands: Vec<CMat> = (0..k).map(|i| w.columns(i, 1).into_owned()).collect();
        let compressed = w.adjoint() * &cur * &w;
        for lam in crate::linalg::eigenvalues(&compressed) {
            let (nv, _) = null_space(&(&compressed - CMat::identity(k, k) * lam), 1);
            cands.push(&w * nv);
        }
        seed += 1;
        for x in generic_vectors(k, 8, seed) {
            cands.push(&w * x);
        }
        let mut best: Option<(f64, CMat, bool)> = None;
        for v in cands {
            let v = v.normalize();
            let qv = qform(h, &v).abs() / hnorm;
            if qv < 1e-3 {
                continue;
            }
            let wv = &cur * &v - &v;
            if wv.norm() <= fix_tol {
                best = Some((f64::INFINITY, v, true));
                break;
            }
            let score = qv.min(qform(h, &wv).abs() / (hnorm * wv.norm_squared()));
            if best.as_ref().map_or(true, |b| score > b.0) {
                best = Some((score, v, false));
            }
        }
        match best {
            Some((_, v, true)) => fixed.push(v),
            Some((score, v, false)) if score > 1e-6 => {
                let wv = &cur * &v - &v;
                let wv = wv.unscale(wv.norm());
                let bvw = bform(h, &v, &wv);
                let a = -bvw.conj() / bvw;
                let rho = QuasiReflection { u: to_vec(&wv), a };
                let rinv = QuasiReflection { u: to_vec(&wv), a: a.conj() }.matrix(h);
                cur = rinv * &cur;
                out.push(Factor::Quasi(rho));
                fixed.push(v);
            }
            _ => {
                if let Some(t) = as_transvection(&cur, h, tol * scale) {
                    out.push(Factor::Trans(t));
                    break;
                }
                // preparatory transvection inside W breaks the degeneracy
                let hw = w.adjoint() * &h.matrix * &w;
                let (vals, u) = herm_eig(&hw);
                if vals[0] <= 0.0 || vals[k - 1] >= 0.0 {
                    return Err(stage("factorization", "degenerate residual on a definite subspace"));
                }
                let wp = (&w * u.columns(0, 1)).scale(1.0 / vals[0].sqrt());
                let wm = (&w * u.columns(k - 1, 1)).scale(1.0 / (-vals[k - 1]).sqrt());
                let x = &wp + &wm;
                let t = trans(&x, c(0.0, 0.7));
                cur = t.inverse().matrix(h) * &cur;
                out.push(Factor::Trans(t));
            }
        }
    }
    let resid = max_abs(&(product(&out, h) - g));
    if resid > 1e3 * tol * scale * scale {
        return Err(stage("factorization", format!("reconstruction residual {resid:.3e}")));
    }
    Ok(out)
}

fn opposite_vector(x: &CMat, y: &CMat, h: &SignatureForm) -> Result<CMat> {
    let sign = qform(h, x).signum();
    let (vals, u) = herm_eig(&h.matrix);
    let d = h.dim();
    let opp: Vec<usize> = (0..d).filter(|&i| vals[i] * sign < 0.0).collect();
    if opp.is_empty() {
        return Err(CommutatorError::Definite);
    }
    let mut cands: Vec<CMat> = opp.iter().map(|&i| u.columns(i, 1).into_owned()).collect();
    for coeffs in generic_vectors(opp.len(), 16, 3) {
        let mut v = CMat::zeros(d, 1);
        for (k, &i) in opp.iter().enumerate() {
            v += u.columns(i, 1) * coeffs[(k, 0)];
        }
        cands.push(v);
    }
    let hyper = |a: &CMat, b: &CMat| {
        let (a, b) = (a.normalize(), b.normalize());
        let g = [qform(h, &a), bform(h, &a, &b).norm(), qform(h, &b)];
        -(g[0] * g[2] - g[1] * g[1])
    };
    cands
        .into_iter()
        .map(|v| v.normalize())
        .filter(|v| qform(h, v) * sign < 0.0)
        .max_by(|a, b| {
            let s = |v: &CMat| hyper(x, v).min(hyper(v, y));
            s(a).partial_cmp(&s(b)).unwrap()
        })
        .ok_or(CommutatorError::Definite)
}

fn pair_to_transvections(
    x: &CMat,
    cx: Complex64,
    y: &CMat,
    h: &SignatureForm,
    tol: f64,
) -> Result<Vec<Transvection>> {
    if (cx - cr(1.0)).norm() <= tol {
        return Ok(vec![]);
    }
    let sx = QuasiReflection { u: to_vec(x), a: cx };
    let sy = QuasiReflection { u: to_vec(y), a: cx.conj() };
    if qform(h, x) * qform(h, y) < 0.0 {
        let g = sx.matrix(h) * sy.matrix(h);
        return su11_to_transvections(&g, x, y, h, tol);
    }
    let v = opposite_vector(x, y, h)?;
    let sv_inv = QuasiReflection { u: to_vec(&v), a: cx.conj() };
    let sv = QuasiReflection { u: to_vec(&v), a: cx };
    let mut out = su11_to_transvections(&(sx.matrix(h) * sv_inv.matrix(h)), x, &v, h, tol)?;
    out.extend(su11_to_transvections(&(sv.matrix(h) * sy.matrix(h)), &v, y, h, tol)?);
    Ok(out)
}

/// Converts a factor list of an `SU` element into at most `14 r` transvections
/// (`r` quasi-reflections), plus the transvections already present.
pub fn quasireflections_to_transvections(
    factors: &[Factor],
    h: &SignatureForm,
    tol: f64,
) -> Result<Vec<Transvection>> {
    let d = h.dim();
    // move transvections to the right: T sigma_{u,a} = sigma_{T u, a} T
    let mut acc = CMat::identity(d, d);
    let mut quasi: Vec<(CMat, Complex64)> = Vec::new();
    let mut tail: Vec<Transvection> = Vec::new();
    for f in factors {
        match f {
            Factor::Trans(t) => {
                acc = &acc * t.matrix(h);
                tail.push(t.clone());
            }
            Factor::Quasi(q) => {
                let x = &acc * col(&q.u);
                quasi.push((x.unscale(x.norm()), q.a))
            }
        }
    }
    let det: Complex64 = quasi.iter().map(|q| q.1).product();
    if (det - cr(1.0)).norm() > 1e-6 {
        return Err(CommutatorError::NotSpecial(det));
    }
    let mut out = Vec::new();
    let mut cum = cr(1.0);
    for k in 0..quasi.len().saturating_sub(1) {
        cum *= quasi[k].1;
        cum /= cum.norm();
        out.extend(pair_to_transvections(&quasi[k].0, cum, &quasi[k + 1].0, h, tol)?);
    }
    out.extend(tail);
    Ok(out)
}

/// `(A, B)` in `SU(m,n)` with `A B A^{-1} B^{-1} = tau_{u,a}`.
pub fn transvection_to_commutator(t: &Transvection, h: &SignatureForm, b: f64) -> Result<(CMat, CMat)> {
    if b == 0.0 || b.abs() == 1.0 || !b.is_finite() {
        return Err(stage("commutator", "b must avoid 0 and +-1"));
    }
    let d = h.dim();
    let u = col(&t.u);
    if t.a.norm() == 0.0 {
        return Ok((CMat::identity(d, d), CMat::identity(d, d)));
    }
    let w = &h.matrix * &u;
    let bwu = bform(h, &w, &u);
    if bwu.norm() <= f64::EPSILON * w.norm_squared() {
        return Err(stage("commutator", "cannot complete to a hyperbolic pair"));
    }
    let v = &w / bwu;
    let v = &v - &u * cr(qform(h, &v) / 2.0);
    let hv = v.adjoint() * &h.matrix;
    let hu = u.adjoint() * &h.matrix;
    let a = CMat::identity(d, d) + &u * hv * cr(b - 1.0) + &v * hu * cr(1.0 / b - 1.0);
    let cpar = t.a / (b * b - 1.0);
    let bm = trans(&u, cpar).matrix(h);
    Ok((a, bm))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommutatorPair {
    #[serde(with = "matrix_serde")]
    pub a: CMat,
    #[serde(with = "matrix_serde")]
    pub b: CMat,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommutatorList {
    pub pairs: Vec<CommutatorPair>,
    pub factor_count: usize,
    pub transvection_count: usize,
    pub bound: usize,
    pub residual: f64,
}

impl CommutatorList {
    pub fn product(&self) -> CMat {
        let d = self.pairs.first().map_or(0, |p| p.a.nrows());
        self.pairs.iter().fold(CMat::identity(d, d), |acc, p| {
            let ai = p.a.clone().try_inverse().expect("invertible");
            let bi = p.b.clone().try_inverse().expect("invertible");
            acc * &p.a * &p.b * ai * bi
        })
    }
}

pub fn commutator_decomposition(g: &CMat, h: &SignatureForm, tol: f64) -> Result<CommutatorList> {
    if h.m == 0 || h.n == 0 {
        return Err(CommutatorError::Definite);
    }
    let d = h.dim();
    let scale = inf_norm(g).max(1.0);
    let mb = is_member(g, h, tol * scale * scale)?;
    if !mb.member {
        return Err(PuError::NotMember(mb.residual).into());
    }
    if (g.determinant() - cr(1.0)).norm() > 1e-6 {
        return Err(CommutatorError::NotSpecial(g.determinant()));
    }
    let factors = reflection_factorization(g, h, tol)?;
    let ts = quasireflections_to_transvections(&factors, h, tol)?;
    let pairs = ts
        .iter()
        .map(|t| {
            let size = t.a.norm() * t.u.iter().map(|x| x.norm_sqr()).sum::<f64>();
            transvection_to_commutator(t, h, size.sqrt().max(2.0)).map(|(a, b)| CommutatorPair { a, b })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut list = CommutatorList {
        pairs,
        factor_count: factors.len(),
        transvection_count: ts.len(),
        bound: 14 * d,
        residual: 0.0,
    };
    let prod = if list.pairs.is_empty() { CMat::identity(d, d) } else { list.product() };
    list.residual = max_abs(&(prod - g));
    if list.residual > 1e3 * tol * scale * scale {
        return Err(stage("commutators", format!("reconstruction residual {:.3e}", list.residual)));
    }
    Ok(list)
}
