//! Dense complex matrix helpers and the matrix JSON format.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `diag(I_m, -I_n)`.
pub fn ipq(m: usize, n: usize) -> CMat {
    let mut h = CMat::identity(m + n, m + n);
    for i in m..m + n {
        h[(i, i)] = cr(-1.0);
    }
    h
}

/// `[[0, I], [-I, 0]]` of size `2n`.
pub fn sym_j(n: usize) -> CMat {
    let mut j = CMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = cr(1.0);
        j[(n + i, i)] = cr(-1.0);
    }
    j
}

pub fn diag(d: &[Complex64]) -> CMat {
    let n = d.len();
    let mut m = CMat::zeros(n, n);
    for (i, &x) in d.iter().enumerate() {
        m[(i, i)] = x;
    }
    m
}

/// Induced infinity norm (max row sum).
pub fn inf_norm(m: &CMat) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    m.is_square() && max_abs(&(m - m.adjoint())) <= tol * (1.0 + max_abs(m))
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
pub fn herm_eig(m: &CMat) -> (Vec<f64>, CMat) {
    let h = (m + m.adjoint()).scale(0.5);
    let e = h.symmetric_eigen();
    let n = e.eigenvalues.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[b].partial_cmp(&e.eigenvalues[a]).unwrap());
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vecs.set_column(k, &e.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// `f(H)` for Hermitian `H`.
pub fn herm_fn(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, v) = herm_eig(m);
    let d: Vec<Complex64> = vals.iter().map(|&x| cr(f(x))).collect();
    &v * diag(&d) * v.adjoint()
}

/// Right singular vectors for the `k` smallest singular values, plus all singular values ascending.
pub fn null_space(m: &CMat, k: usize) -> (CMat, Vec<f64>) {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].partial_cmp(&svd.singular_values[b]).unwrap());
    let sv: Vec<f64> = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let mut basis = CMat::zeros(n, k);
    for (col, &i) in idx.iter().take(k).enumerate() {
        let row = vt.row(i).adjoint();
        basis.set_column(col, &row);
    }
    (basis, sv)
}

/// Eigenvalues via the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<Complex64> {
    let (_, t) = m.clone().schur().unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Principal argument in `[0, 2 pi)`.
pub fn arg_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// `x - floor(x)`, folding values within `1e-12` of 1 back to 0.
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f > 1.0 - 1e-12 {
        0.0
    } else {
        f
    }
}

/// Distance between two reals mod 1.
pub fn dist_mod1(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

pub fn block(m: &CMat, r0: usize, c0: usize, nr: usize, nc: usize) -> CMat {
    m.view((r0, c0), (nr, nc)).into_owned()
}

/// Wire format `{"dim": d, "entries": [[[re, im], ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<CMat, String> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(format!("matrix entries do not form a {0}x{0} array", self.dim));
        }
        if self.entries.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err("matrix has non-finite entries".into());
        }
        Ok(CMat::from_fn(self.dim, self.dim, |i, j| c(self.entries[i][j][0], self.entries[i][j][1])))
    }

    pub fn from_matrix(m: &CMat) -> Self {
        MatrixJson {
            dim: m.nrows(),
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }
}

/// Serde adapter for fields of type [`CMat`].
pub mod matrix_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMat, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMat, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        j.to_matrix().map_err(serde::de::Error::custom)
    }
}
