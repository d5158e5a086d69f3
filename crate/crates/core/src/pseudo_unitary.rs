//! Pseudo-unitary groups `U(m,n)`: membership, spectral data with positivity
//! multiplicities, canonical forms, the phase quasi-homomorphism, the `v0`
//! cocycle with path lifting, and the embeddings `Sp(2n) -> SU(n,n)` and
//! `U(m,n) -> Sp(2(m+n))`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    arg_2pi, block, c, cr, diag, eigenvalues, frac, herm_eig, herm_fn, inf_norm, ipq, is_hermitian,
    matrix_serde, max_abs, null_space, sym_j, CMat,
};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PuError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("not a member of the group (residual {0:.3e})")]
    NotMember(f64),
    #[error("eigenvalue {value} is defective: multiplicity {multiplicity}, singular value {singular:.3e}")]
    NotSemisimple { value: Complex64, multiplicity: usize, singular: f64 },
    #[error("ill-conditioned: {0}")]
    Conditioning(String),
    #[error("Cartan factor is not block diagonal (residual {0:.3e})")]
    Decomposition(f64),
    #[error("sampling too coarse at step {index}: phase jump {jump:.3}")]
    SamplingTooCoarse { index: usize, jump: f64 },
    #[error("not symplectic (residual {0:.3e})")]
    NotSymplectic(f64),
    #[error("invalid form: {0}")]
    BadForm(String),
    #[error("path error: {0}")]
    Path(String),
}

/// A non-degenerate Hermitian form of signature `(m, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureForm {
    pub m: usize,
    pub n: usize,
    #[serde(with = "matrix_serde")]
    pub matrix: CMat,
}

impl SignatureForm {
    pub fn standard(m: usize, n: usize) -> Self {
        SignatureForm { m, n, matrix: ipq(m, n) }
    }

    pub fn from_matrix(h: CMat, tol: f64) -> Result<Self, PuError> {
        if !h.is_square() {
            return Err(PuError::BadForm("not square".into()));
        }
        if !is_hermitian(&h, tol) {
            return Err(PuError::BadForm("not Hermitian".into()));
        }
        let (vals, _) = herm_eig(&h);
        let scale = vals.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        if vals.iter().any(|x| x.abs() <= tol * scale.max(1.0)) {
            return Err(PuError::BadForm("degenerate".into()));
        }
        let m = vals.iter().filter(|&&x| x > 0.0).count();
        let n = vals.len() - m;
        Ok(SignatureForm { m, n, matrix: h })
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn is_standard(&self) -> bool {
        self.matrix == ipq(self.m, self.n)
    }

    /// `S` with `S* H S = I_{m,n}`.
    pub fn standardizer(&self) -> CMat {
        let (vals, v) = herm_eig(&self.matrix);
        let d: Vec<Complex64> = vals.iter().map(|x| cr(1.0 / x.abs().sqrt())).collect();
        v * diag(&d)
    }

    /// `H(u, v) = v* H u`.
    pub fn pairing(&self, u: &CMat, v: &CMat) -> Complex64 {
        (v.adjoint() * &self.matrix * u)[(0, 0)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// `|det g - 1| <= tol`
    pub special: bool,
    pub residual: f64,
}

pub fn is_member(g: &CMat, h: &SignatureForm, tol: f64) -> Result<Membership, PuError> {
    if g.nrows() != h.dim() || !g.is_square() {
        return Err(PuError::Dimension(g.nrows(), h.dim()));
    }
    let residual = inf_norm(&(g.adjoint() * &h.matrix * g - &h.matrix));
    let det = g.determinant();
    Ok(Membership { member: residual <= tol, special: (det - cr(1.0)).norm() <= tol, residual })
}

fn scale(g: &CMat) -> f64 {
    inf_norm(g).max(1.0)
}

fn require_member(g: &CMat, h: &SignatureForm, tol: f64) -> Result<(), PuError> {
    let mb = is_member(g, h, tol * scale(g).powi(2))?;
    if !mb.member {
        return Err(PuError::NotMember(mb.residual));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    pub unit_circle: Vec<bool>,
    pub n_plus: Vec<usize>,
    pub n_minus: Vec<usize>,
    /// `(i, j)` with `|lambda_i| > 1` and `lambda_j = 1 / conj(lambda_i)`
    pub pairs: Vec<(usize, usize)>,
    #[serde(skip)]
    pub eigenspaces: Vec<CMat>,
}

fn clusters(ev: &[Complex64], radius: f64) -> Vec<Vec<usize>> {
    let n = ev.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (ev[i] - ev[j]).norm() < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(k) => groups[k].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

pub fn spectral_analysis(g: &CMat, h: &SignatureForm, tol: f64) -> Result<SpectralData, PuError> {
    require_member(g, h, tol)?;
    let d = g.nrows();
    let s = scale(g);
    let radius = 10.0 * tol * s;
    let ev = eigenvalues(g);
    let groups = clusters(&ev, radius);
    let mut out = SpectralData {
        eigenvalues: vec![],
        multiplicities: vec![],
        unit_circle: vec![],
        n_plus: vec![],
        n_minus: vec![],
        pairs: vec![],
        eigenspaces: vec![],
    };
    for grp in &groups {
        let k = grp.len();
        let center: Complex64 = grp.iter().map(|&i| ev[i]).sum::<Complex64>() / k as f64;
        let shifted = g - CMat::identity(d, d) * center;
        let (basis, sv) = null_space(&shifted, k);
        if sv[k - 1] > 10.0 * radius {
            return Err(PuError::NotSemisimple { value: center, multiplicity: k, singular: sv[k - 1] });
        }
        let on_circle = (center.norm() - 1.0).abs() <= 10.0 * tol * (1.0 + center.norm());
        let (np, nm) = if on_circle {
            let kf = basis.adjoint() * &h.matrix * &basis;
            let (vals, _) = herm_eig(&kf);
            if vals.iter().any(|x| x.abs() <= 10.0 * tol) {
                return Err(PuError::Conditioning(format!("form degenerate on eigenspace of {center}")));
            }
            let np = vals.iter().filter(|&&x| x > 0.0).count();
            (np, k - np)
        } else if center.norm() > 1.0 {
            (k, 0)
        } else {
            (0, k)
        };
        out.eigenvalues.push(center);
        out.multiplicities.push(k);
        out.unit_circle.push(on_circle);
        out.n_plus.push(np);
        out.n_minus.push(nm);
        out.eigenspaces.push(basis);
    }
    // pair |lambda| > 1 with 1/conj(lambda)
    let mut outer: Vec<usize> =
        (0..out.eigenvalues.len()).filter(|&i| !out.unit_circle[i] && out.eigenvalues[i].norm() > 1.0).collect();
    outer.sort_by(|&a, &b| out.eigenvalues[b].norm().partial_cmp(&out.eigenvalues[a].norm()).unwrap());
    let mut inner: Vec<usize> =
        (0..out.eigenvalues.len()).filter(|&i| !out.unit_circle[i] && out.eigenvalues[i].norm() < 1.0).collect();
    if outer.len() != inner.len() {
        return Err(PuError::Conditioning("unbalanced off-circle spectrum".into()));
    }
    for i in outer {
        let li = out.eigenvalues[i];
        let (pos, &j) = inner
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = (li * out.eigenvalues[*a.1].conj() - cr(1.0)).norm();
                let db = (li * out.eigenvalues[*b.1].conj() - cr(1.0)).norm();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        let resid = (li * out.eigenvalues[j].conj() - cr(1.0)).norm();
        if resid > 1e3 * radius * (1.0 + li.norm()) || out.multiplicities[i] != out.multiplicities[j] {
            return Err(PuError::Conditioning(format!("no partner for eigenvalue {li}")));
        }
        inner.remove(pos);
        out.pairs.push((i, j));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    /// `(lambda, epsilon)` per unit-circle basis vector
    pub units: Vec<(Complex64, i8)>,
    /// `(lambda, 1/conj(lambda))` per hyperbolic plane
    pub pairs: Vec<(Complex64, Complex64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalForm {
    #[serde(with = "matrix_serde")]
    pub c: CMat,
    pub report: BlockReport,
    /// `C^{-1} g C`
    #[serde(with = "matrix_serde")]
    pub blocks: CMat,
    /// `C* H C`
    #[serde(with = "matrix_serde")]
    pub pattern: CMat,
    pub residual: f64,
}

impl CanonicalForm {
    fn n_units(&self) -> usize {
        self.report.units.len()
    }

    /// `C diag(lambda/|lambda|) C^{-1}`.
    pub fn elliptic_part(&self) -> CMat {
        let mut d: Vec<Complex64> = self.report.units.iter().map(|(l, _)| l / l.norm()).collect();
        for (l, m) in &self.report.pairs {
            d.push(l / l.norm());
            d.push(m / m.norm());
        }
        &self.c * diag(&d) * self.c.clone().try_inverse().expect("C invertible")
    }

    /// H-orthonormal basis of a maximal positive subspace adapted to the blocks.
    pub fn positive_basis(&self) -> CMat {
        let d = self.c.nrows();
        let mut cols: Vec<CMat> = Vec::new();
        for (i, (_, e)) in self.report.units.iter().enumerate() {
            if *e > 0 {
                cols.push(self.c.columns(i, 1).into_owned());
            }
        }
        let u = self.n_units();
        for k in 0..self.report.pairs.len() {
            let x = self.c.columns(u + 2 * k, 1).into_owned();
            let y = self.c.columns(u + 2 * k + 1, 1).into_owned();
            cols.push((x + y).scale(std::f64::consts::FRAC_1_SQRT_2));
        }
        let mut p = CMat::zeros(d, cols.len());
        for (i, col) in cols.iter().enumerate() {
            p.set_column(i, &col.column(0));
        }
        p
    }
}

pub fn canonical_form(g: &CMat, h: &SignatureForm, tol: f64) -> Result<CanonicalForm, PuError> {
    let sd = spectral_analysis(g, h, tol)?;
    let d = g.nrows();
    let mut pos: Vec<(CMat, Complex64)> = Vec::new();
    let mut neg: Vec<(CMat, Complex64)> = Vec::new();
    for i in 0..sd.eigenvalues.len() {
        if !sd.unit_circle[i] {
            continue;
        }
        let e = &sd.eigenspaces[i];
        let kf = e.adjoint() * &h.matrix * e;
        let (vals, u) = herm_eig(&kf);
        for (j, &kv) in vals.iter().enumerate() {
            let w = (e * u.columns(j, 1)).scale(1.0 / kv.abs().sqrt());
            if kv > 0.0 {
                pos.push((w, sd.eigenvalues[i]));
            } else {
                neg.push((w, sd.eigenvalues[i]));
            }
        }
    }
    let mut cols: Vec<CMat> = Vec::new();
    let mut units = Vec::new();
    let mut dvals = Vec::new();
    for (w, l) in &pos {
        cols.push(w.clone());
        units.push((*l, 1i8));
        dvals.push(*l);
    }
    for (w, l) in &neg {
        cols.push(w.clone());
        units.push((*l, -1i8));
        dvals.push(*l);
    }
    let mut pairs = Vec::new();
    for &(i, j) in &sd.pairs {
        let x = &sd.eigenspaces[i];
        let yp = &sd.eigenspaces[j];
        let m = x.adjoint() * &h.matrix * yp;
        let minv = m
            .try_inverse()
            .ok_or_else(|| PuError::Conditioning("isotropic eigenspaces do not pair".into()))?;
        let y = yp * minv;
        for k in 0..x.ncols() {
            cols.push(x.columns(k, 1).into_owned());
            cols.push(y.columns(k, 1).into_owned());
            dvals.push(sd.eigenvalues[i]);
            dvals.push(sd.eigenvalues[j]);
            pairs.push((sd.eigenvalues[i], sd.eigenvalues[j]));
        }
    }
    let mut cm = CMat::zeros(d, d);
    for (k, col) in cols.iter().enumerate() {
        cm.set_column(k, &col.column(0));
    }
    let cinv = cm
        .clone()
        .try_inverse()
        .ok_or_else(|| PuError::Conditioning("canonical basis is singular".into()))?;
    let blocks = &cinv * g * &cm;
    let pattern = cm.adjoint() * &h.matrix * &cm;
    let mut want = CMat::zeros(d, d);
    for (k, (_, e)) in units.iter().enumerate() {
        want[(k, k)] = cr(*e as f64);
    }
    let u = units.len();
    for k in 0..pairs.len() {
        want[(u + 2 * k, u + 2 * k + 1)] = cr(1.0);
        want[(u + 2 * k + 1, u + 2 * k)] = cr(1.0);
    }
    let residual = max_abs(&(&blocks - diag(&dvals))).max(max_abs(&(&pattern - &want)));
    if residual > 1e3 * tol * scale(g).powi(2) {
        return Err(PuError::Conditioning(format!("canonical residual {residual:.3e}")));
    }
    Ok(CanonicalForm { c: cm, report: BlockReport { units, pairs }, blocks, pattern, residual })
}

/// `frac((1/2pi) sum n+(lambda) arg(lambda))`, `arg` in `[0, 2 pi)`.
pub fn dgw_phase(g: &CMat, h: &SignatureForm, tol: f64) -> Result<f64, PuError> {
    let sd = spectral_analysis(g, h, tol)?;
    Ok(phase_of(&sd))
}

pub fn phase_of(sd: &SpectralData) -> f64 {
    let total: f64 = sd
        .eigenvalues
        .iter()
        .zip(&sd.n_plus)
        .map(|(l, &np)| np as f64 * arg_2pi(*l))
        .sum();
    frac(total / (2.0 * PI))
}

/// `det(e(g)_+)` on the canonical positive subspace.
pub fn elliptic_positive_det(g: &CMat, h: &SignatureForm, tol: f64) -> Result<Complex64, PuError> {
    let cf = canonical_form(g, h, tol)?;
    let e = cf.elliptic_part();
    let p = cf.positive_basis();
    Ok((p.adjoint() * &h.matrix * e * &p).determinant())
}

/// `g` expressed in a basis where the form is `I_{m,n}`.
pub fn to_standard(g: &CMat, h: &SignatureForm) -> CMat {
    if h.is_standard() {
        return g.clone();
    }
    let s = h.standardizer();
    let sinv = s.clone().try_inverse().expect("form is non-degenerate");
    sinv * g * s
}

/// Cartan factors `g = k s` for `g` in standard form.
pub fn cartan(g: &CMat, m: usize, tol: f64) -> Result<(CMat, CMat), PuError> {
    let s2 = g.adjoint() * g;
    let sinv = herm_fn(&s2, |x| 1.0 / x.sqrt());
    let s = herm_fn(&s2, f64::sqrt);
    let k = g * sinv;
    let d = g.nrows();
    let off = max_abs(&block(&k, 0, m, m, d - m)).max(max_abs(&block(&k, m, 0, d - m, m)));
    if off > tol * scale(g).powi(2) * 10.0 {
        return Err(PuError::Decomposition(off));
    }
    Ok((k, s))
}

/// `det` of the `U(m)` block of the compact Cartan factor.
pub fn v0(g: &CMat, h: &SignatureForm, tol: f64) -> Result<Complex64, PuError> {
    require_member(g, h, tol)?;
    let gs = to_standard(g, h);
    let (k, _) = cartan(&gs, h.m, tol)?;
    if h.m == 0 {
        return Ok(cr(1.0));
    }
    let d = block(&k, 0, 0, h.m, h.m).determinant();
    Ok(d / d.norm())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Unitary(SignatureForm),
    Symplectic,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupPath {
    #[serde(with = "samples_serde")]
    pub samples: Vec<CMat>,
    pub kind: PathKind,
}

mod samples_serde {
    use super::*;
    use crate::linalg::MatrixJson;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[CMat], s: S) -> Result<S::Ok, S::Error> {
        let j: Vec<MatrixJson> = v.iter().map(MatrixJson::from_matrix).collect();
        j.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<CMat>, D::Error> {
        let j: Vec<MatrixJson> = Vec::deserialize(d)?;
        j.iter().map(|m| m.to_matrix().map_err(serde::de::Error::custom)).collect()
    }
}

impl GroupPath {
    pub fn uniform(f: &dyn Fn(f64) -> CMat, kind: PathKind, n: usize) -> Self {
        let samples = (0..=n).map(|i| f(i as f64 / n as f64)).collect();
        GroupPath { samples, kind }
    }

    /// Samples `f` on `[0, 1]`, bisecting until every tracked phase moves by less than `pi/4` per step.
    pub fn adaptive(
        f: &dyn Fn(f64) -> CMat,
        kind: PathKind,
        phases: &dyn Fn(&CMat) -> Result<Vec<Complex64>, PuError>,
    ) -> Result<Self, PuError> {
        let n0 = 16;
        let mut pts: Vec<(f64, CMat, Vec<Complex64>)> = Vec::new();
        for i in 0..=n0 {
            let t = i as f64 / n0 as f64;
            let m = f(t);
            let ph = phases(&m)?;
            pts.push((t, m, ph));
        }
        let mut i = 0;
        while i + 1 < pts.len() {
            let jump = pts[i]
                .2
                .iter()
                .zip(&pts[i + 1].2)
                .map(|(a, b)| (b / a).arg().abs())
                .fold(0.0, f64::max);
            if jump > PI / 4.0 && pts[i + 1].0 - pts[i].0 > 1e-9 && pts.len() < 200_000 {
                let t = 0.5 * (pts[i].0 + pts[i + 1].0);
                let m = f(t);
                let ph = phases(&m)?;
                pts.insert(i + 1, (t, m, ph));
            } else {
                i += 1;
            }
        }
        Ok(GroupPath { samples: pts.into_iter().map(|p| p.1).collect(), kind })
    }

    pub fn translate(&self, g: &CMat) -> GroupPath {
        GroupPath { samples: self.samples.iter().map(|s| g * s).collect(), kind: self.kind.clone() }
    }

    pub fn end(&self) -> &CMat {
        self.samples.last().expect("non-empty path")
    }

    fn phase(&self, m: &CMat, tol: f64) -> Result<Complex64, PuError> {
        match &self.kind {
            PathKind::Unitary(h) => v0(m, h, tol),
            PathKind::Symplectic => sp_phase(m, tol),
        }
    }
}

fn accumulate(phases: &[Complex64]) -> Result<f64, PuError> {
    let mut total = 0.0;
    for (i, w) in phases.windows(2).enumerate() {
        let jump = (w[1] / w[0]).arg();
        if jump.abs() >= PI / 2.0 {
            return Err(PuError::SamplingTooCoarse { index: i, jump });
        }
        total += jump;
    }
    Ok(total / (2.0 * PI))
}

fn phase_increment(path: &GroupPath, tol: f64) -> Result<f64, PuError> {
    let ph: Vec<Complex64> = path.samples.iter().map(|m| path.phase(m, tol)).collect::<Result<_, _>>()?;
    accumulate(&ph)
}

/// Continuous argument of `v0` along the path divided by `2 pi`.
pub fn lift_phase(path: &GroupPath, tol: f64) -> Result<f64, PuError> {
    let first = path.samples.first().ok_or_else(|| PuError::Path("empty path".into()))?;
    let d = first.nrows();
    if max_abs(&(first - CMat::identity(d, d))) > 1e-9 {
        return Err(PuError::Path("path does not start at the identity".into()));
    }
    phase_increment(path, tol)
}

/// `Phi(path1 * g1.path2) - Phi(path1) - Phi(path2)`.
pub fn cocycle(
    g1: &CMat,
    g2: &CMat,
    path1: &GroupPath,
    path2: &GroupPath,
    tol: f64,
) -> Result<f64, PuError> {
    for (p, g) in [(path1, g1), (path2, g2)] {
        if max_abs(&(p.end() - g)) > 1e-7 * scale(g) {
            return Err(PuError::Path("path does not end at its element".into()));
        }
    }
    let phi2 = lift_phase(path2, tol)?;
    let moved = phase_increment(&path2.translate(g1), tol)?;
    Ok(moved - phi2)
}

/// Log factors `(A, P)` with `g = exp(A) exp(P)`, `A` block-diagonal skew-Hermitian
/// (traceless when `det g = 1`), `P` Hermitian in the non-compact part. Standard form only.
pub fn cartan_log(g: &CMat, m: usize, tol: f64) -> Result<(CMat, CMat), PuError> {
    let d = g.nrows();
    let (k, _) = cartan(g, m, tol)?;
    let s2 = g.adjoint() * g;
    let p = herm_fn(&s2, |x| 0.5 * x.ln());
    let mut a = CMat::zeros(d, d);
    let mut phis: Vec<(usize, usize, f64, CMat)> = Vec::new();
    for (r0, len) in [(0, m), (m, d - m)] {
        if len == 0 {
            continue;
        }
        let kb = block(&k, r0, r0, len, len);
        let (q, t) = kb.schur().unpack();
        for j in 0..len {
            phis.push((r0, j, t[(j, j)].arg(), q.clone()));
        }
    }
    let total: f64 = phis.iter().map(|x| x.2).sum();
    let wind = (total / (2.0 * PI)).round();
    if (total - 2.0 * PI * wind).abs() < 1e-6 && !phis.is_empty() {
        phis[0].2 -= 2.0 * PI * wind;
    }
    for (r0, len) in [(0, m), (m, d - m)] {
        if len == 0 {
            continue;
        }
        let entries: Vec<&(usize, usize, f64, CMat)> = phis.iter().filter(|x| x.0 == r0).collect();
        let q = &entries[0].3;
        let dg: Vec<Complex64> = entries.iter().map(|x| c(0.0, x.2)).collect();
        let ab = q * diag(&dg) * q.adjoint();
        a.view_mut((r0, r0), (len, len)).copy_from(&ab);
    }
    Ok((a, p))
}

/// The path `t -> exp(tA) exp(tP)` from the identity to `g`.
pub fn default_path(g: &CMat, h: &SignatureForm, tol: f64) -> Result<GroupPath, PuError> {
    require_member(g, h, tol)?;
    let gs = to_standard(g, h);
    let (a, p) = cartan_log(&gs, h.m, tol)?;
    let (s, sinv) = if h.is_standard() {
        let d = g.nrows();
        (CMat::identity(d, d), CMat::identity(d, d))
    } else {
        let s = h.standardizer();
        let si = s.clone().try_inverse().unwrap();
        (s, si)
    };
    let f = move |t: f64| &s * ((&a * cr(t)).exp() * (&p * cr(t)).exp()) * &sinv;
    let hh = h.clone();
    GroupPath::adaptive(&f, PathKind::Unitary(h.clone()), &|m| Ok(vec![v0(m, &hh, tol)?]))
}

/// Cocycle with default Cartan paths, refined so the translated path is also well sampled.
pub fn cocycle_auto(g1: &CMat, g2: &CMat, h: &SignatureForm, tol: f64) -> Result<f64, PuError> {
    let p1 = default_path(g1, h, tol)?;
    let gs = to_standard(g2, h);
    let (a, p) = cartan_log(&gs, h.m, tol)?;
    let d = g2.nrows();
    let (s, sinv) = if h.is_standard() {
        (CMat::identity(d, d), CMat::identity(d, d))
    } else {
        let s = h.standardizer();
        let si = s.clone().try_inverse().unwrap();
        (s, si)
    };
    let f = move |t: f64| &s * ((&a * cr(t)).exp() * (&p * cr(t)).exp()) * &sinv;
    let hh = h.clone();
    let g1c = g1.clone();
    let p2 = GroupPath::adaptive(&f, PathKind::Unitary(h.clone()), &|m| {
        Ok(vec![v0(m, &hh, tol)?, v0(&(&g1c * m), &hh, tol)?])
    })?;
    cocycle(g1, g2, &p1, &p2, tol)
}

fn dmat() -> impl Fn(usize) -> CMat {
    |n: usize| {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut d = CMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            d[(i, i)] = cr(s);
            d[(n + i, n + i)] = cr(s);
            d[(i, n + i)] = c(0.0, -s);
            d[(n + i, i)] = c(0.0, -s);
        }
        d
    }
}

pub fn symplectic_residual(s: &CMat) -> f64 {
    let n = s.nrows() / 2;
    let j = sym_j(n);
    let imag = s.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
    max_abs(&(s.transpose() * &j * s - j)).max(imag)
}

/// `D S D^{-1}` with `D = (1/sqrt2)[[I, -iI], [-iI, I]]`.
pub fn sp_to_su(s: &CMat, tol: f64) -> Result<CMat, PuError> {
    if s.nrows() % 2 != 0 || !s.is_square() {
        return Err(PuError::Dimension(s.nrows(), s.ncols()));
    }
    let r = symplectic_residual(s);
    if r > tol * scale(s).powi(2) {
        return Err(PuError::NotSymplectic(r));
    }
    let d = dmat()(s.nrows() / 2);
    Ok(&d * s * d.adjoint())
}

/// `lambda(A+iB) = [[A, B], [-B, A]]`.
pub fn realify(t: &CMat) -> CMat {
    let n = t.nrows();
    let mut out = CMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = t[(i, j)];
            out[(i, j)] = cr(z.re);
            out[(i, n + j)] = cr(z.im);
            out[(n + i, j)] = cr(-z.im);
            out[(n + i, n + j)] = cr(z.re);
        }
    }
    out
}

/// `Z lambda(T) Z^{-1}` with `Z = diag(I_{m,n}, I_{m+n})`.
pub fn su_to_sp(t: &CMat, m: usize, n: usize, tol: f64) -> Result<CMat, PuError> {
    let h = SignatureForm::standard(m, n);
    require_member(t, &h, tol)?;
    let mut z = CMat::identity(2 * (m + n), 2 * (m + n));
    for i in m..m + n {
        z[(i, i)] = cr(-1.0);
    }
    Ok(&z * realify(t) * &z)
}

/// `det(U11 + i U12)` of the orthogonal polar factor, normalized.
pub fn sp_phase(s: &CMat, tol: f64) -> Result<Complex64, PuError> {
    let r = symplectic_residual(s);
    if r > tol * scale(s).powi(2) * 10.0 {
        return Err(PuError::NotSymplectic(r));
    }
    let n = s.nrows() / 2;
    let u = s * herm_fn(&(s.adjoint() * s), |x| 1.0 / x.sqrt());
    let x = block(&u, 0, 0, n, n) + block(&u, 0, n, n, n) * c(0.0, 1.0);
    let d = x.determinant();
    Ok(d / d.norm())
}

/// Winding of the polar phase along a closed symplectic loop.
pub fn sp_winding(path: &GroupPath, tol: f64) -> Result<i64, PuError> {
    if max_abs(&(path.samples[0].clone() - path.end())) > 1e-7 * scale(path.end()) {
        return Err(PuError::Path("loop is not closed".into()));
    }
    let ph: Vec<Complex64> = path.samples.iter().map(|m| sp_phase(m, tol)).collect::<Result<_, _>>()?;
    let w = accumulate(&ph)?;
    Ok(w.round() as i64)
}

/// The Hermitian form `-iJ` preserved by real symplectic matrices.
pub fn symplectic_hermitian_form(n: usize) -> SignatureForm {
    SignatureForm { m: n, n, matrix: sym_j(n) * c(0.0, -1.0) }
}

/// The generator loop `t -> diag(e^{2 pi i t}, I, e^{-2 pi i t}, I)` of `pi_1 SU(m,n)`.
pub fn generator_loop(m: usize, n: usize, samples: usize) -> GroupPath {
    let f = move |t: f64| {
        let mut d = vec![cr(1.0); m + n];
        d[0] = Complex64::from_polar(1.0, 2.0 * PI * t);
        d[m] = Complex64::from_polar(1.0, -2.0 * PI * t);
        diag(&d)
    };
    GroupPath::uniform(&f, PathKind::Unitary(SignatureForm::standard(m, n)), samples)
}
