//! Integer linear recurrences for signature and dimension sequences.
//!
//! Sequences are indexed from `g = 1`. A spec with monic characteristic
//! polynomial `x^d + c_{d-1} x^{d-1} + .. + c_0` generates
//! `s(g+d) = -(c_0 s(g) + .. + c_{d-1} s(g+d-1))`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("no builtin polynomial for p={p}, zeta exponent {exponent}")]
    UnknownPair { p: u64, exponent: u64 },
    #[error("characteristic polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("expected {expected} initial terms, got {got}")]
    InitialLength { expected: usize, got: usize },
    #[error("modulus must be at least 2")]
    BadModulus,
    #[error("invertible constant term mod {0} but the zero set covers a full period")]
    Inconsistent(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    /// Coefficients low to high, last entry 1.
    #[serde(with = "crate::json::big_vec")]
    pub char_poly: Vec<BigInt>,
    /// Terms at `g = 1..=d`.
    #[serde(with = "crate::json::big_vec")]
    pub initial: Vec<BigInt>,
    /// `(p, zeta exponent)` for builtin specs.
    #[serde(default)]
    pub label: Option<(u64, u64)>,
}

impl RecurrenceSpec {
    pub fn new(char_poly: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self, RecurrenceError> {
        let spec = RecurrenceSpec { char_poly, initial, label: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RecurrenceError> {
        if self.char_poly.len() < 2 || !self.char_poly.last().unwrap().is_one() {
            return Err(RecurrenceError::NotMonic);
        }
        if self.initial.len() != self.degree() {
            return Err(RecurrenceError::InitialLength {
                expected: self.degree(),
                got: self.initial.len(),
            });
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.char_poly.len() - 1
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.char_poly[0]
    }

    fn step(&self, window: &[BigInt]) -> BigInt {
        let d = self.degree();
        let mut acc = BigInt::zero();
        for i in 0..d {
            acc -= &self.char_poly[i] * &window[i];
        }
        acc
    }

    /// Companion matrix `M` with `M (s_g, .., s_{g+d-1})^T = (s_{g+1}, .., s_{g+d})^T`.
    pub fn companion(&self) -> Vec<Vec<BigInt>> {
        let d = self.degree();
        let mut m = vec![vec![BigInt::zero(); d]; d];
        for i in 0..d - 1 {
            m[i][i + 1] = BigInt::one();
        }
        for j in 0..d {
            m[d - 1][j] = -&self.char_poly[j];
        }
        m
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Representative exponent of the conjugacy class `{e, 2p - e}`.
pub fn normalize_exponent(p: u64, e: u64) -> u64 {
    let e = e % (2 * p);
    e.min(2 * p - e)
}

/// The characteristic polynomials and leading terms for `p` in {5, 7, 9}.
pub fn builtin_spec(p: u64, exponent: u64) -> Result<RecurrenceSpec, RecurrenceError> {
    let e = normalize_exponent(p, exponent);
    let (poly, init): (&[i64], &[i64]) = match (p, e) {
        (5, 1) => (&[3, -3, 1], &[2, 3]),
        (5, 3) => (&[5, -5, 1], &[2, 5]),
        (7, 1) => (&[-23, 23, -8, 1], &[3, 8, 18]),
        (7, 3) => (&[-49, 49, -14, 1], &[3, 14, 98]),
        (7, 5) => (&[-23, 23, -6, 1], &[3, 6, -10]),
        (9, 1) => (&[257, -257, 97, -16, 1], &[4, 16, 62, 211]),
        (9, 5) => (&[729, -729, 243, -30, 1], &[4, 30, 414, 7317]),
        (9, 7) => (&[257, -257, 101, -10, 1], &[4, 10, -102, -1259]),
        _ => return Err(RecurrenceError::UnknownPair { p, exponent }),
    };
    Ok(RecurrenceSpec { char_poly: ints(poly), initial: ints(init), label: Some((p, e)) })
}

/// All `(p, exponent)` pairs with a builtin spec.
pub fn builtin_pairs() -> Vec<(u64, u64)> {
    vec![(5, 1), (5, 3), (7, 1), (7, 3), (7, 5), (9, 1), (9, 5), (9, 7)]
}

/// Terms `s(1), .., s(g_max)`.
pub fn extend(spec: &RecurrenceSpec, g_max: usize) -> Vec<BigInt> {
    let d = spec.degree();
    let mut out: Vec<BigInt> = spec.initial.iter().take(g_max).cloned().collect();
    while out.len() < g_max {
        let n = out.len();
        let next = spec.step(&out[n - d..]);
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModOrbit {
    pub modulus: u64,
    pub preperiod: usize,
    pub period: usize,
    /// `s(g) mod m` for `g = 1..=preperiod+period`.
    pub residues: Vec<u64>,
}

impl ModOrbit {
    pub fn residue(&self, g: usize) -> u64 {
        assert!(g >= 1);
        let i = g - 1;
        if i < self.residues.len() {
            self.residues[i]
        } else {
            let j = self.preperiod + (i - self.preperiod) % self.period;
            self.residues[j]
        }
    }
}

fn reduce(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

pub fn mod_orbit(spec: &RecurrenceSpec, m: u64) -> Result<ModOrbit, RecurrenceError> {
    if m < 2 {
        return Err(RecurrenceError::BadModulus);
    }
    let d = spec.degree();
    let coeffs: Vec<u64> = spec.char_poly.iter().map(|c| reduce(c, m)).collect();
    let mut state: Vec<u64> = spec.initial.iter().map(|x| reduce(x, m)).collect();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut residues = Vec::new();
    let m128 = m as u128;
    loop {
        if let Some(&start) = seen.get(&state) {
            return Ok(ModOrbit {
                modulus: m,
                preperiod: start,
                period: residues.len() - start,
                residues,
            });
        }
        seen.insert(state.clone(), residues.len());
        residues.push(state[0]);
        let mut acc: u128 = 0;
        for i in 0..d {
            acc = (acc + coeffs[i] as u128 * state[i] as u128) % m128;
        }
        let next = ((m128 - acc) % m128) as u64;
        state.remove(0);
        state.push(next);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroLocus {
    pub modulus: u64,
    pub preperiod: usize,
    pub period: usize,
    /// Residues `g mod period` of the periodic part where the term vanishes.
    pub classes: Vec<u64>,
    /// `g <= preperiod` where the term vanishes.
    pub transient: Vec<usize>,
}

pub fn zero_locus(spec: &RecurrenceSpec, m: u64) -> Result<ZeroLocus, RecurrenceError> {
    let orbit = mod_orbit(spec, m)?;
    Ok(zero_locus_of(&orbit))
}

pub fn zero_locus_of(orbit: &ModOrbit) -> ZeroLocus {
    let transient = (1..=orbit.preperiod).filter(|&g| orbit.residue(g) == 0).collect();
    let mut classes: Vec<u64> = (orbit.preperiod + 1..=orbit.preperiod + orbit.period)
        .filter(|&g| orbit.residue(g) == 0)
        .map(|g| (g % orbit.period) as u64)
        .collect();
    classes.sort_unstable();
    ZeroLocus {
        modulus: orbit.modulus,
        preperiod: orbit.preperiod,
        period: orbit.period,
        classes,
        transient,
    }
}

/// `P(0)` invertible mod the prime `p`; cross-checked against the zero locus.
pub fn invertibility_criterion(spec: &RecurrenceSpec, p: u64) -> Result<bool, RecurrenceError> {
    let ok = reduce(spec.constant_term(), p) != 0;
    if ok {
        let z = zero_locus(spec, p)?;
        if z.classes.len() >= z.period {
            return Err(RecurrenceError::Inconsistent(p));
        }
    }
    Ok(ok)
}

/// Determinant by fraction-free elimination.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Multiplicative order of the companion matrix in `GL(d, Z/m)`, if invertible there.
pub fn companion_order_mod(spec: &RecurrenceSpec, m: u64, limit: usize) -> Option<usize> {
    let d = spec.degree();
    let c: Vec<Vec<u64>> = spec
        .companion()
        .iter()
        .map(|row| row.iter().map(|x| reduce(x, m)).collect())
        .collect();
    let id: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
    let mut p = c.clone();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        let mut q = vec![vec![0u64; d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut acc: u128 = 0;
                for l in 0..d {
                    acc += p[i][l] as u128 * c[l][j] as u128;
                }
                q[i][j] = (acc % m as u128) as u64;
            }
        }
        p = q;
    }
    None
}

/// `g -> s(g)` as an `i64` when it fits, used by table output.
pub fn small(x: &BigInt) -> Option<i64> {
    if x.abs() < BigInt::from(1i64 << 53) {
        x.to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_i64(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    // power sums of the roots computed numerically, signs only compared
    fn roots_power_sums(spec: &RecurrenceSpec, n: usize) -> Vec<f64> {
        let d = spec.degree();
        let mut m = nalgebra::DMatrix::<f64>::zeros(d, d);
        for (i, row) in spec.companion().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.to_f64().unwrap();
            }
        }
        let ev = m.complex_eigenvalues();
        (1..=n)
            .map(|g| ev.iter().map(|l| l.powi(g as i32 - 1).re).sum())
            .collect()
    }

    #[test]
    fn builtin_examples() {
        let s = builtin_spec(5, 1).unwrap();
        assert_eq!(as_i64(&s.char_poly), vec![3, -3, 1]);
        assert_eq!(as_i64(&s.initial), vec![2, 3]);
        let s = builtin_spec(7, 3).unwrap();
        assert_eq!(as_i64(&s.char_poly), vec![-49, 49, -14, 1]);
        assert_eq!(as_i64(&s.initial), vec![3, 14, 98]);
        let s = builtin_spec(9, 7).unwrap();
        assert_eq!(as_i64(&s.char_poly), vec![257, -257, 101, -10, 1]);
        assert_eq!(builtin_spec(9, 11).unwrap(), builtin_spec(9, 7).unwrap());
        assert!(builtin_spec(9, 3).is_err());
    }

    #[test]
    fn sequence_is_power_sum_of_roots() {
        for (p, e) in builtin_pairs() {
            let s = builtin_spec(p, e).unwrap();
            let exact = extend(&s, 11);
            let approx = roots_power_sums(&s, 11);
            for (a, b) in exact.iter().zip(&approx) {
                let a = a.to_f64().unwrap();
                assert!((a - b).abs() <= 1e-6 * a.abs().max(1.0), "{p},{e}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn extend_examples() {
        assert_eq!(
            as_i64(&extend(&builtin_spec(5, 1).unwrap(), 11)),
            vec![2, 3, 3, 0, -9, -27, -54, -81, -81, 0, 243]
        );
        assert_eq!(
            as_i64(&extend(&builtin_spec(7, 1).unwrap(), 11)),
            vec![3, 8, 18, 29, 2, -237, -1275, -4703, -13750, -31156, -41167]
        );
        assert_eq!(
            as_i64(&extend(&builtin_spec(9, 5).unwrap(), 5)),
            vec![4, 30, 414, 7317, 137862]
        );
        assert_eq!(extend(&builtin_spec(9, 5).unwrap(), 2).len(), 2);
    }

    #[test]
    fn orbits() {
        let o = mod_orbit(&builtin_spec(5, 1).unwrap(), 5).unwrap();
        assert_eq!((o.preperiod, o.period), (0, 24));
        assert_eq!(&o.residues[..10], &[2, 3, 3, 0, 1, 3, 1, 4, 4, 0]);
        let z = zero_locus_of(&o);
        assert_eq!(z.classes, vec![4, 10, 16, 22]);

        let o = mod_orbit(&builtin_spec(7, 1).unwrap(), 7).unwrap();
        assert_eq!(o.period, 12);
        assert_eq!(o.residues, vec![3, 1, 4, 1, 2, 1, 6, 1, 5, 1, 0, 1]);
        assert_eq!(zero_locus_of(&o).classes, vec![11]);

        let s = builtin_spec(7, 3).unwrap();
        let o = mod_orbit(&s, 7).unwrap();
        assert!(o.preperiod <= 55 && 36 % o.period == 0);
        let seq = extend(&s, 250);
        for g in 55..=200 {
            assert_eq!(reduce(&seq[g + 36 - 1], 7), reduce(&seq[g - 1], 7));
        }
    }

    #[test]
    fn orbit_residues_match_direct_reduction() {
        for (p, e) in builtin_pairs() {
            let s = builtin_spec(p, e).unwrap();
            for m in [2u64, 3, 5, 7, 9, 11] {
                let o = mod_orbit(&s, m).unwrap();
                let seq = extend(&s, 300);
                for g in 1..=300 {
                    assert_eq!(o.residue(g), reduce(&seq[g - 1], m));
                }
            }
        }
    }

    #[test]
    fn invertibility() {
        assert!(invertibility_criterion(&builtin_spec(5, 1).unwrap(), 5).unwrap());
        assert!(invertibility_criterion(&builtin_spec(7, 5).unwrap(), 7).unwrap());
        assert!(!invertibility_criterion(&builtin_spec(7, 3).unwrap(), 7).unwrap());
        assert_eq!(reduce(&BigInt::from(-23), 7), 5);
    }

    #[test]
    fn companion_det_and_order() {
        for (p, e) in builtin_pairs() {
            let s = builtin_spec(p, e).unwrap();
            let d = det(s.companion());
            let sign = if s.degree() % 2 == 0 { 1 } else { -1 };
            assert_eq!(d, s.constant_term() * BigInt::from(sign));
            for m in [5u64, 7, 11, 13] {
                if reduce(s.constant_term(), m) == 0 {
                    continue;
                }
                let ord = companion_order_mod(&s, m, 100_000).unwrap();
                let o = mod_orbit(&s, m).unwrap();
                assert_eq!(o.preperiod, 0);
                assert_eq!(ord % o.period, 0);
            }
        }
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(
            RecurrenceSpec::new(ints(&[1, 2]), ints(&[1])),
            Err(RecurrenceError::NotMonic)
        );
        assert!(matches!(
            RecurrenceSpec::new(ints(&[1, 1]), ints(&[1, 2])),
            Err(RecurrenceError::InitialLength { .. })
        ));
        assert!(mod_orbit(&builtin_spec(5, 1).unwrap(), 1).is_err());
    }
}
