//! Exact arithmetic in cyclotomic rings `Z[zeta_N]`.
//!
//! Numbers are stored on the redundant basis `1, zeta, .., zeta^{N-1}` and
//! compared after reduction by the N-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default ceiling for the working precision of [`CyclotomicNumber::sign_of_real`].
pub const DEFAULT_MAX_PRECISION_BITS: u32 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("number is not real")]
    NotReal,
    #[error("root exp(2 pi i {exponent}/{order}) is not primitive of the required order")]
    NotPrimitive { order: u64, exponent: u64 },
    #[error("sign undecided at {bits} bits of working precision")]
    PrecisionExhausted { bits: u32 },
    #[error("invalid level {0}")]
    InvalidLevel(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `exp(2 pi i exponent / order)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let exponent = exponent.rem_euclid(order as i64) as u64;
        Ok(RootOfUnity { order, exponent })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_primitive(&self) -> bool {
        self.exponent.gcd(&self.order) == 1
    }

    pub fn multiplicative_order(&self) -> u64 {
        self.order / self.exponent.gcd(&self.order)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.order as i128);
        RootOfUnity { order: self.order, exponent: e as u64 }
    }

    pub fn conj(&self) -> RootOfUnity {
        self.pow(-1)
    }

    /// Principal argument in `[0, 2 pi)`.
    pub fn arg(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.exponent as f64 / self.order as f64
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(1.0, self.arg())
    }

    pub fn to_cyclotomic(&self) -> CyclotomicNumber {
        CyclotomicNumber::root(self.order as usize, self.exponent as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta_{}^{}", self.order, self.exponent)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CyclotomicNumber {
    order: usize,
    #[serde(with = "crate::json::big_vec")]
    coeffs: Vec<BigInt>,
}

static PHI_CACHE: Lazy<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (low to high) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div(&num, &phi_d);
        }
    }
    let out = Arc::new(num);
    PHI_CACHE.lock().unwrap().insert(n, out.clone());
    out
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qd = r.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

impl CyclotomicNumber {
    /// Builds a number from coefficients of `zeta^0, zeta^1, ...`; indices wrap mod `order`.
    pub fn new(order: usize, coeffs: Vec<BigInt>) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let mut c = vec![BigInt::zero(); order];
        for (k, x) in coeffs.into_iter().enumerate() {
            c[k % order] += x;
        }
        Ok(CyclotomicNumber { order, coeffs: c })
    }

    pub fn from_i64(order: usize, coeffs: &[i64]) -> Result<Self, CycloError> {
        Self::new(order, coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(order: usize) -> Self {
        CyclotomicNumber { order, coeffs: vec![BigInt::zero(); order] }
    }

    pub fn integer(order: usize, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(order: usize) -> Self {
        Self::integer(order, 1)
    }

    /// `zeta_order^k`.
    pub fn root(order: usize, k: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[k.rem_euclid(order as i64) as usize] = BigInt::one();
        z
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.order != other.order {
            return Err(CycloError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicNumber { order: self.order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicNumber { order: self.order, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let n = self.order;
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[(i + j) % n] += a * b;
                }
            }
        }
        Ok(CyclotomicNumber { order: n, coeffs: c })
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            base = base.mul(&base).expect("same order");
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation, `zeta^k -> zeta^{N-k}`.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut c = vec![BigInt::zero(); n];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[(n - k) % n] = x.clone();
        }
        CyclotomicNumber { order: n, coeffs: c }
    }

    /// Coordinates on the power basis `1, .., zeta^{phi(N)-1}`.
    pub fn canonical(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for top in (deg..r.len()).rev() {
            let c = std::mem::take(&mut r[top]);
            if c.is_zero() {
                continue;
            }
            let shift = top - deg;
            for (j, pj) in phi.iter().enumerate().take(deg) {
                r[shift + j] -= &c * pj;
            }
        }
        r.truncate(deg);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|x| x.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.sub(&self.conj()).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Value under `zeta -> exp(2 pi i / N)`.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n;
                num_complex::Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), t)
            })
            .sum()
    }

    pub fn sign_of_real(&self) -> Result<i8, CycloError> {
        self.sign_with_precision(default_max_precision())
    }

    /// Exact sign of a real element, escalating working precision up to `max_bits`.
    pub fn sign_with_precision(&self, max_bits: u32) -> Result<i8, CycloError> {
        if !self.is_real() {
            return Err(CycloError::NotReal);
        }
        if let Some(s) = self.sign_f64() {
            return Ok(s);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let mut bits = 128u32;
        loop {
            if let Some(s) = self.sign_fixed(bits) {
                return Ok(s);
            }
            if bits >= max_bits {
                return Err(CycloError::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max_bits.max(128));
        }
    }

    fn sign_f64(&self) -> Option<i8> {
        let n = self.order;
        let mut v = 0.0f64;
        let mut mass = 0.0f64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64()?;
            if !cf.is_finite() {
                return None;
            }
            v += cf * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
            mass += cf.abs();
        }
        let bound = mass * (n as f64 + 8.0) * 1e-15;
        if v.abs() > bound && bound.is_finite() {
            Some(if v > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    fn sign_fixed(&self, bits: u32) -> Option<i8> {
        let w = bits + 64;
        let n = self.order;
        let pi = pi_fixed(w);
        let mut cos_cache: HashMap<usize, (BigInt, u64)> = HashMap::new();
        let mut total = BigInt::zero();
        let mut err = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kk = k.min(n - k);
            let (cv, e) = cos_cache
                .entry(kk)
                .or_insert_with(|| {
                    let theta = (&pi * BigInt::from(2 * kk)) / BigInt::from(n);
                    cos_fixed(&theta, w)
                })
                .clone();
            total += c * &cv;
            err += c.abs() * BigInt::from(e);
        }
        if total.abs() > err {
            Some(if total.sign() == Sign::Minus { -1 } else { 1 })
        } else {
            None
        }
    }
}

fn default_max_precision() -> u32 {
    std::env::var("PSEUDOU_PRECISION")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&b| b >= 64)
        .unwrap_or(DEFAULT_MAX_PRECISION_BITS)
}

// atan(1/x) * 2^w, truncation error below 2 ulps per term
fn atan_inv(x: u64, w: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = (BigInt::one() << w) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    let wg = w + 16;
    let p = atan_inv(5, wg) * 16 - atan_inv(239, wg) * 4;
    p >> 16u32
}

/// cos(theta) * 2^w for theta (scaled by 2^w) in [0, pi]; returns value and an ulp error bound.
fn cos_fixed(theta: &BigInt, w: u32) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let t2 = (theta * theta) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = -((&term * &t2) >> w) / BigInt::from((2 * k - 1) * (2 * k));
        sum += &term;
        k += 1;
    }
    // angle error (a few ulps from pi) plus truncation per term
    (sum, 8 * k + 256)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*z{}^{}", c, self.order, k)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn cyclo_arith(
    a: &CyclotomicNumber,
    b: &CyclotomicNumber,
    op: ArithOp,
) -> Result<CyclotomicNumber, CycloError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

/// `[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})` as the geometric sum `sum_j A^{2(n-1-2j)}`.
pub fn quantum_integer(n: i64, a: RootOfUnity) -> Result<CyclotomicNumber, CycloError> {
    if !a.is_primitive() || a.order() % 2 != 0 {
        return Err(CycloError::NotPrimitive { order: a.order(), exponent: a.exponent() });
    }
    let ord = a.order() as usize;
    if n < 0 {
        return Ok(quantum_integer(-n, a)?.neg());
    }
    let mut out = CyclotomicNumber::zero(ord);
    for j in 0..n {
        let e = a.pow(2 * (n - 1 - 2 * j)).exponent() as usize;
        out.coeffs[e] += 1;
    }
    Ok(out)
}

/// `[n]! = [1][2]..[n]`.
pub fn quantum_factorial(n: u32, a: RootOfUnity) -> Result<CyclotomicNumber, CycloError> {
    let mut acc = CyclotomicNumber::one(a.order() as usize);
    for k in 1..=n {
        acc = acc.mul(&quantum_integer(k as i64, a)?)?;
    }
    Ok(acc)
}

/// The unitary root `A_p` with the corrected exponents.
pub fn standard_root(p: u64) -> Result<RootOfUnity, CycloError> {
    if p < 3 {
        return Err(CycloError::InvalidLevel(p as i64));
    }
    let exponent = if p % 2 == 0 {
        p + 1
    } else if p % 4 == 3 {
        (p - 1) / 2
    } else {
        (p + 1) / 2
    };
    let r = RootOfUnity::new(2 * p, exponent as i64)?;
    debug_assert!(r.is_primitive());
    Ok(r)
}

/// Order of `zeta_p^{-6 - p(p+1)/2}`.
pub fn theta(p: u64) -> u64 {
    assert!(p >= 3, "theta needs p >= 3");
    let p128 = p as u128;
    let r = ((6 + p128 * (p128 + 1) / 2) % p128) as u64;
    p / p.gcd(&r)
}

/// Closed-form case table for `theta`.
pub fn theta_case_table(p: u64) -> u64 {
    if p % 2 == 1 {
        if p % 3 == 0 {
            p / 3
        } else {
            p
        }
    } else if p % 12 == 0 {
        let s = p / 12;
        if s % 2 == 0 {
            2 * s
        } else {
            s
        }
    } else if p % 4 == 0 {
        let s = p / 4;
        if s % 2 == 0 {
            2 * s
        } else {
            s
        }
    } else if p % 6 == 0 {
        2 * (p / 6)
    } else {
        p
    }
}

/// Scalar of the central element in the congruence convention: `zeta_p^{-6-p(p+1)/2}`.
pub fn central_scalar_level(p: u64) -> RootOfUnity {
    let e = -6i128 - (p as i128) * (p as i128 + 1) / 2;
    RootOfUnity::new(p, (e.rem_euclid(p as i128)) as i64).expect("p > 0")
}

/// Scalar of the central element in the signature convention: `zeta^{-6}` for `zeta` of order 2p.
pub fn central_scalar_root(zeta: RootOfUnity) -> RootOfUnity {
    zeta.pow(-6)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(order: usize, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root(order, k)
    }

    #[test]
    fn phi_small() {
        let to_i = |v: &[BigInt]| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i(&cyclotomic_polynomial(10)), vec![1, -1, 1, -1, 1]);
        assert_eq!(to_i(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        for n in 1..60u64 {
            assert_eq!(cyclotomic_polynomial(n as usize).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn conjugate_sum_is_real() {
        let x = z(5, 1).add(&z(5, 4)).unwrap();
        assert!(x.is_real());
        assert!(!z(5, 1).is_real());
    }

    #[test]
    fn inverse_root() {
        for n in 2..20 {
            assert_eq!(z(n, 1).mul(&z(n, n as i64 - 1)).unwrap(), CyclotomicNumber::one(n));
        }
    }

    #[test]
    fn norm_of_one_plus_zeta5() {
        let mut acc = CyclotomicNumber::one(5);
        for k in 1..5 {
            acc = acc.mul(&CyclotomicNumber::one(5).add(&z(5, k)).unwrap()).unwrap();
        }
        assert_eq!(acc, CyclotomicNumber::one(5));
        // independent: prod over primitive roots of (1+x) = Phi_5(-1) = 1
        let phi = cyclotomic_polynomial(5);
        let v: BigInt = phi.iter().enumerate().map(|(k, c)| c * BigInt::from((-1i64).pow(k as u32))).sum();
        assert_eq!(v, BigInt::one());
    }

    #[test]
    fn order_mismatch() {
        assert!(matches!(z(5, 1).add(&z(6, 1)), Err(CycloError::OrderMismatch { .. })));
    }

    #[test]
    fn signs_of_small_reals() {
        assert_eq!(CyclotomicNumber::zero(5).sign_of_real().unwrap(), 0);
        assert_eq!(z(5, 1).add(&z(5, -1)).unwrap().sign_of_real().unwrap(), 1);
        assert_eq!(z(5, 2).add(&z(5, -2)).unwrap().sign_of_real().unwrap(), -1);
        assert_eq!(z(5, 1).sign_of_real(), Err(CycloError::NotReal));
        // 1 + zeta_3 + zeta_3^2 = 0 exactly even though coefficients are not all zero
        let s = CyclotomicNumber::from_i64(3, &[1, 1, 1]).unwrap();
        assert_eq!(s.sign_of_real().unwrap(), 0);
    }

    #[test]
    fn escalated_sign_agrees_with_float() {
        // large cancellation: (F_{k+1} + F_k * tau) style golden-ratio approximant minus its float value
        // tau = zeta_5 + zeta_5^4 = (sqrt5 - 1)/2; tau^40 is small and positive
        let tau = z(5, 1).add(&z(5, 4)).unwrap();
        let big = tau.pow(40);
        assert!(big.is_real());
        assert_eq!(big.sign_of_real().unwrap(), 1);
        // force the fixed-point path
        assert_eq!(big.sign_fixed(256), Some(1));
        let neg = tau.sub(&CyclotomicNumber::one(5)).unwrap().pow(41);
        assert_eq!(neg.sign_fixed(256), Some(-1));
        // the float embedding cannot separate this value from zero
        assert!(big.sign_f64().is_none());
    }

    #[test]
    fn fixed_point_pi_and_cos() {
        let w = 200;
        let pi = pi_fixed(w);
        let pf = pi.to_f64().unwrap() / 2f64.powi(w as i32);
        assert!((pf - std::f64::consts::PI).abs() < 1e-15);
        let (c, _) = cos_fixed(&(&pi / BigInt::from(3)), w);
        assert!((c.to_f64().unwrap() / 2f64.powi(w as i32) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn quantum_integers_basic() {
        let a = standard_root(5).unwrap();
        assert_eq!(quantum_integer(1, a).unwrap(), CyclotomicNumber::one(10));
        assert!(quantum_integer(0, a).unwrap().is_zero());
        let q2 = quantum_integer(2, a).unwrap();
        let expect = a.pow(2).to_cyclotomic().add(&a.pow(-2).to_cyclotomic()).unwrap();
        assert_eq!(q2, expect);
        // A = zeta_10^3: A^2 + A^-2 = 2 cos(216 deg) < 0
        let f = 2.0 * (216.0f64).to_radians().cos();
        assert!(f < 0.0);
        assert_eq!(q2.sign_of_real().unwrap(), -1);
        // [p] = 0 at a primitive 2p-th root
        assert!(quantum_integer(5, a).unwrap().is_zero());
        assert!(quantum_integer(3, RootOfUnity::new(10, 2).unwrap()).is_err());
    }

    #[test]
    fn quantum_integer_matches_float_ratio() {
        for p in 3..12u64 {
            for e in 1..(2 * p) {
                let a = RootOfUnity::new(2 * p, e as i64).unwrap();
                if !a.is_primitive() {
                    continue;
                }
                let ac = a.to_complex();
                for n in 1..(p as i64) {
                    let want = (ac.powi(2 * n as i32) - ac.powi(-2 * n as i32)) / (ac.powi(2) - ac.powi(-2));
                    let got = quantum_integer(n, a).unwrap().to_complex();
                    assert!((want - got).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn standard_roots() {
        assert_eq!(standard_root(7).unwrap(), RootOfUnity::new(14, 3).unwrap());
        assert_eq!(standard_root(5).unwrap(), RootOfUnity::new(10, 3).unwrap());
        let r4 = standard_root(4).unwrap();
        let want = -num_complex::Complex64::from_polar(1.0, std::f64::consts::PI / 4.0);
        assert!((r4.to_complex() - want).norm() < 1e-12);
        for p in 3..=1000 {
            assert_eq!(standard_root(p).unwrap().multiplicative_order(), 2 * p);
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(5), 5);
        assert_eq!(theta(9), 3);
        assert_eq!(theta(24), 4);
        for p in 3..=1000 {
            assert_eq!(theta(p), theta_case_table(p), "p={p}");
            assert_eq!(central_scalar_level(p).multiplicative_order(), theta(p));
        }
    }

    #[test]
    fn central_scalar_conventions_differ() {
        let zeta = RootOfUnity::new(10, 1).unwrap();
        assert_eq!(central_scalar_root(zeta), RootOfUnity::new(10, 4).unwrap());
        assert_eq!(central_scalar_level(5).multiplicative_order(), 5);
    }
}
