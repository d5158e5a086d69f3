//! C interface to `pseudou`.
//!
//! Every fallible call returns a [`PseudouStatus`]; on failure a message is kept
//! per thread and can be read with [`pseudou_last_error`]. Objects are opaque
//! handles released with their `_free` function. Strings returned by the library
//! are released with [`pseudou_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use pseudou::burau_squier::{squier_definite, BurauError};
use pseudou::cli::CliError;
use pseudou::conformal_blocks::{dim_blocks, signature};
use pseudou::cyclo_exact::{theta, RootOfUnity};
use pseudou::linalg::CMat;
use pseudou::pseudo_unitary::{cocycle_auto, dgw_phase, SignatureForm};
use pseudou::recurrences::{builtin_spec, extend};
use pseudou::su_commutators::{commutator_decomposition, CommutatorList};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudouStatus {
    Ok = 0,
    NullPointer = 1,
    InputError = 2,
    ConsistencyError = 3,
    Panic = 4,
}

/// Square complex matrix.
pub struct PseudouMatrix(CMat);

/// Hermitian form of signature `(m, n)`.
pub struct PseudouForm(SignatureForm);

/// Result of a commutator decomposition.
pub struct PseudouCommutators(CommutatorList);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PseudouStatus, msg: impl Into<String>) -> PseudouStatus {
    set_error(msg.into());
    status
}

fn from_cli(e: CliError) -> PseudouStatus {
    let status = match e {
        CliError::Input(_) => PseudouStatus::InputError,
        CliError::Consistency(_) => PseudouStatus::ConsistencyError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> PseudouStatus) -> PseudouStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(PseudouStatus::Panic, msg)
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(PseudouStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

fn give_string(s: String, out: *mut *mut c_char) -> PseudouStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PseudouStatus::Ok
        }
        Err(_) => fail(PseudouStatus::Panic, "string contains nul"),
    }
}

/// Last error message on this thread, or null. Owned by the library; valid until the next failing call.
#[no_mangle]
pub extern "C" fn pseudou_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `entries` holds `2 * dim * dim` doubles, row major, real and imaginary parts interleaved.
#[no_mangle]
pub unsafe extern "C" fn pseudou_matrix_new(
    dim: usize,
    entries: *const f64,
    out: *mut *mut PseudouMatrix,
) -> PseudouStatus {
    non_null!(entries, out);
    guard(|| {
        if dim == 0 {
            return fail(PseudouStatus::InputError, "dimension must be positive");
        }
        let data = std::slice::from_raw_parts(entries, 2 * dim * dim);
        if data.iter().any(|x| !x.is_finite()) {
            return fail(PseudouStatus::InputError, "matrix has non-finite entries");
        }
        let m = CMat::from_fn(dim, dim, |i, j| {
            let k = 2 * (i * dim + j);
            Complex64::new(data[k], data[k + 1])
        });
        *out = Box::into_raw(Box::new(PseudouMatrix(m)));
        PseudouStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_matrix_free(m: *mut PseudouMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_matrix_dim(m: *const PseudouMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.nrows())
}

/// Copies the entries into `out` (`2 * dim * dim` doubles, layout as in [`pseudou_matrix_new`]).
#[no_mangle]
pub unsafe extern "C" fn pseudou_matrix_entries(m: *const PseudouMatrix, out: *mut f64) -> PseudouStatus {
    non_null!(m, out);
    let m = &(*m).0;
    let d = m.nrows();
    let buf = std::slice::from_raw_parts_mut(out, 2 * d * d);
    for i in 0..d {
        for j in 0..d {
            buf[2 * (i * d + j)] = m[(i, j)].re;
            buf[2 * (i * d + j) + 1] = m[(i, j)].im;
        }
    }
    PseudouStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_form_standard(m: usize, n: usize, out: *mut *mut PseudouForm) -> PseudouStatus {
    non_null!(out);
    if m + n == 0 {
        return fail(PseudouStatus::InputError, "empty form");
    }
    *out = Box::into_raw(Box::new(PseudouForm(SignatureForm::standard(m, n))));
    PseudouStatus::Ok
}

/// Form from an invertible Hermitian matrix; the signature is read off its inertia.
#[no_mangle]
pub unsafe extern "C" fn pseudou_form_from_matrix(
    h: *const PseudouMatrix,
    tol: f64,
    out: *mut *mut PseudouForm,
) -> PseudouStatus {
    non_null!(h, out);
    guard(|| match SignatureForm::from_matrix((*h).0.clone(), tol) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(PseudouForm(f)));
            PseudouStatus::Ok
        }
        Err(e) => from_cli(e.into()),
    })
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_form_free(f: *mut PseudouForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes `m` and `n` of the form.
#[no_mangle]
pub unsafe extern "C" fn pseudou_form_signature(f: *const PseudouForm, m: *mut usize, n: *mut usize) -> PseudouStatus {
    non_null!(f, m, n);
    *m = (*f).0.m;
    *n = (*f).0.n;
    PseudouStatus::Ok
}

fn check_dims(g: &CMat, h: &SignatureForm) -> Result<(), PseudouStatus> {
    if g.nrows() != h.dim() {
        return Err(fail(
            PseudouStatus::InputError,
            format!("dimension mismatch: {} vs {}", g.nrows(), h.dim()),
        ));
    }
    Ok(())
}

/// Phase in `[0, 1)`.
#[no_mangle]
pub unsafe extern "C" fn pseudou_dgw_phase(
    g: *const PseudouMatrix,
    h: *const PseudouForm,
    tol: f64,
    out: *mut f64,
) -> PseudouStatus {
    non_null!(g, h, out);
    guard(|| {
        let (g, h) = (&(*g).0, &(*h).0);
        if let Err(s) = check_dims(g, h) {
            return s;
        }
        match dgw_phase(g, h, tol) {
            Ok(x) => {
                *out = x;
                PseudouStatus::Ok
            }
            Err(e) => from_cli(e.into()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_cocycle(
    g1: *const PseudouMatrix,
    g2: *const PseudouMatrix,
    h: *const PseudouForm,
    tol: f64,
    out: *mut f64,
) -> PseudouStatus {
    non_null!(g1, g2, h, out);
    guard(|| {
        let (g1, g2, h) = (&(*g1).0, &(*g2).0, &(*h).0);
        if let Err(s) = check_dims(g1, h).and_then(|_| check_dims(g2, h)) {
            return s;
        }
        match cocycle_auto(g1, g2, h, tol) {
            Ok(x) => {
                *out = x;
                PseudouStatus::Ok
            }
            Err(e) => from_cli(e.into()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_commutators(
    g: *const PseudouMatrix,
    h: *const PseudouForm,
    tol: f64,
    out: *mut *mut PseudouCommutators,
) -> PseudouStatus {
    non_null!(g, h, out);
    guard(|| {
        let (g, h) = (&(*g).0, &(*h).0);
        if let Err(s) = check_dims(g, h) {
            return s;
        }
        match commutator_decomposition(g, h, tol) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(PseudouCommutators(l)));
                PseudouStatus::Ok
            }
            Err(e) => from_cli(e.into()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_commutators_free(c: *mut PseudouCommutators) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_commutators_len(c: *const PseudouCommutators) -> usize {
    c.as_ref().map_or(0, |c| c.0.pairs.len())
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_commutators_residual(c: *const PseudouCommutators) -> f64 {
    c.as_ref().map_or(f64::NAN, |c| c.0.residual)
}

/// New handles for the `index`-th pair `(A, B)`; the product of all `A B A^-1 B^-1` is the input.
#[no_mangle]
pub unsafe extern "C" fn pseudou_commutators_pair(
    c: *const PseudouCommutators,
    index: usize,
    a: *mut *mut PseudouMatrix,
    b: *mut *mut PseudouMatrix,
) -> PseudouStatus {
    non_null!(c, a, b);
    let c = &*c;
    match c.0.pairs.get(index) {
        Some(p) => {
            *a = Box::into_raw(Box::new(PseudouMatrix(p.a.clone())));
            *b = Box::into_raw(Box::new(PseudouMatrix(p.b.clone())));
            PseudouStatus::Ok
        }
        None => fail(PseudouStatus::InputError, format!("pair index {index} out of range")),
    }
}

#[no_mangle]
pub unsafe extern "C" fn pseudou_theta(p: u64, out: *mut u64) -> PseudouStatus {
    non_null!(out);
    if p < 3 {
        return fail(PseudouStatus::InputError, format!("p must be at least 3, got {p}"));
    }
    *out = theta(p);
    PseudouStatus::Ok
}

/// `N(g, p)` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn pseudou_verlinde(g: usize, p: u64, out: *mut *mut c_char) -> PseudouStatus {
    non_null!(out);
    guard(|| match dim_blocks(g, p) {
        Ok(n) => give_string(n.to_string(), out),
        Err(e) => from_cli(e.into()),
    })
}

/// Signature record at `zeta = exp(pi i e / p)` as JSON.
#[no_mangle]
pub unsafe extern "C" fn pseudou_signature_json(
    g: usize,
    p: u64,
    exponent: u64,
    out: *mut *mut c_char,
) -> PseudouStatus {
    non_null!(out);
    guard(|| {
        let z = match RootOfUnity::new(2 * p, exponent as i64) {
            Ok(z) => z,
            Err(e) => return fail(PseudouStatus::InputError, e.to_string()),
        };
        match signature(g, p, z) {
            Ok(r) => give_string(serde_json::to_string(&r).expect("serializable"), out),
            Err(e) => from_cli(e.into()),
        }
    })
}

/// First `terms` values of a builtin signature recurrence as a JSON array.
#[no_mangle]
pub unsafe extern "C" fn pseudou_recurrence_json(
    p: u64,
    exponent: u64,
    terms: usize,
    out: *mut *mut c_char,
) -> PseudouStatus {
    non_null!(out);
    guard(|| match builtin_spec(p, exponent) {
        Ok(spec) => {
            let v: Vec<_> = extend(&spec, terms).iter().map(pseudou::json::to_value).collect();
            give_string(serde_json::to_string(&v).expect("serializable"), out)
        }
        Err(e) => from_cli(e.into()),
    })
}

/// Sign (+1 or -1) of the Squier form on `k` strands at `q`; fails if the form is singular or indefinite.
#[no_mangle]
pub unsafe extern "C" fn pseudou_squier_sign(
    k: usize,
    q_re: f64,
    q_im: f64,
    tol: f64,
    out: *mut i32,
) -> PseudouStatus {
    non_null!(out);
    guard(|| match squier_definite(k, Complex64::new(q_re, q_im), tol) {
        Ok(d) => {
            *out = d.sign as i32;
            PseudouStatus::Ok
        }
        Err(e @ BurauError::Disagreement { .. }) => fail(PseudouStatus::ConsistencyError, e.to_string()),
        Err(e) => fail(PseudouStatus::InputError, e.to_string()),
    })
}

/// Runs the command line with `argc` arguments (without the program name).
/// Standard input is empty; the output text is returned through `out`.
#[no_mangle]
pub unsafe extern "C" fn pseudou_cli(
    argc: usize,
    argv: *const *const c_char,
    stdin_json: *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> PseudouStatus {
    non_null!(out, exit_code);
    if argc > 0 && argv.is_null() {
        return fail(PseudouStatus::NullPointer, "`argv` is null");
    }
    guard(|| {
        let mut args = vec!["pseudou".to_string()];
        for i in 0..argc {
            let a = *argv.add(i);
            if a.is_null() {
                return fail(PseudouStatus::NullPointer, format!("argv[{i}] is null"));
            }
            match CStr::from_ptr(a).to_str() {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return fail(PseudouStatus::InputError, format!("argv[{i}] is not UTF-8")),
            }
        }
        let input = if stdin_json.is_null() { Vec::new() } else { CStr::from_ptr(stdin_json).to_bytes().to_vec() };
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let code = pseudou::cli::run(args, &mut input.as_slice(), &mut stdout, &mut stderr);
        *exit_code = code;
        if code != 0 && !stderr.is_empty() {
            set_error(String::from_utf8_lossy(&stderr).trim_end().to_string());
        }
        give_string(String::from_utf8_lossy(&stdout).into_owned(), out)
    })
}
