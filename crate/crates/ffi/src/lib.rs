//! C interface to `blobcell`.
//!
//! Every fallible function returns a [`BlobcellStatus`] and writes its result
//! through an out pointer. Objects are opaque handles released with the
//! matching `*_free` function; strings returned to the caller are released
//! with [`blobcell_string_free`]. After an error,
//! [`blobcell_last_error_message`] describes it (per thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blobcell::coxeter::CoxeterWord;
use blobcell::gram::GramBlock;
use blobcell::jantzen::{CellContext, JantzenReport};
use blobcell::tl::TLElement;
use blobcell::{BivarPoly, Error};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlobcellStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    VerificationFailed = 3,
    DivisionByZero = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Polynomial in `ℚ[x, y]`.
pub struct BlobcellPoly(BivarPoly);

/// Diagonal blocks of a blob Gram matrix.
pub struct BlobcellBlocks(Vec<GramBlock>);

/// Element of the Temperley-Lieb algebra.
pub struct BlobcellTl(TLElement);

/// Outcome of a graded sum formula check.
pub struct BlobcellReport(JantzenReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BlobcellStatus {
    match e {
        Error::InvalidArgument(_) => BlobcellStatus::InvalidArgument,
        Error::Parse(_) => BlobcellStatus::ParseError,
        Error::Verification(_) => BlobcellStatus::VerificationFailed,
        Error::DivisionByZero => BlobcellStatus::DivisionByZero,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F>(f: F) -> BlobcellStatus
where
    F: FnOnce() -> Result<(), BlobcellStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BlobcellStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            BlobcellStatus::Panic
        }
    }
}

fn lib<T>(r: blobcell::Result<T>) -> Result<T, BlobcellStatus> {
    r.map_err(|e| {
        let s = status_of(&e);
        set_error(e.to_string());
        s
    })
}

fn null_error() -> BlobcellStatus {
    set_error("null pointer argument".into());
    BlobcellStatus::NullPointer
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BlobcellStatus> {
    if p.is_null() {
        return Err(null_error());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        BlobcellStatus::ParseError
    })
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), BlobcellStatus> {
    if out.is_null() {
        return Err(null_error());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), BlobcellStatus> {
    if out.is_null() {
        return Err(null_error());
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, BlobcellStatus> {
    p.as_ref().ok_or_else(null_error)
}

fn parse_word(s: &str) -> Result<CoxeterWord, BlobcellStatus> {
    lib(s.parse::<CoxeterWord>())
}

/// Message for the last error on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn blobcell_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn blobcell_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial such as `"xy+(1/2)y^2"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_poly_parse(
    text: *const c_char,
    out: *mut *mut BlobcellPoly,
) -> BlobcellStatus {
    guard(|| {
        let s = read_str(text)?;
        let p = lib(s.parse::<BivarPoly>())?;
        write_out(out, BlobcellPoly(p))
    })
}

/// # Safety
/// `p` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_poly_to_string(
    p: *const BlobcellPoly,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| write_string(out, borrow(p)?.0.to_string()))
}

/// Writes 1 to `out` if the polynomials are equal, 0 otherwise.
///
/// # Safety
/// `a`, `b` must be valid handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_poly_equal(
    a: *const BlobcellPoly,
    b: *const BlobcellPoly,
    out: *mut i32,
) -> BlobcellStatus {
    guard(|| {
        let eq = borrow(a)?.0 == borrow(b)?.0;
        if out.is_null() {
            return Err(null_error());
        }
        *out = i32::from(eq);
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn blobcell_poly_free(p: *mut BlobcellPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `β_{k,λ}` computed from the Gram form.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_beta(
    k: usize,
    lambda: i64,
    out: *mut *mut BlobcellPoly,
) -> BlobcellStatus {
    guard(|| write_out(out, BlobcellPoly(lib(blobcell::gram::beta(k, lambda))?)))
}

/// The closed form of `β_{k,λ}` as a product of roots.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_beta_closed(
    k: usize,
    lambda: i64,
    out: *mut *mut BlobcellPoly,
) -> BlobcellStatus {
    guard(|| write_out(out, BlobcellPoly(blobcell::gram::beta_closed(k, lambda))))
}

/// Diagonal blocks of the Gram matrix of `Δ_n(λ)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_gram_blocks(
    n: usize,
    lambda: i64,
    out: *mut *mut BlobcellBlocks,
) -> BlobcellStatus {
    guard(|| {
        write_out(
            out,
            BlobcellBlocks(lib(blobcell::gram::gram_blocks(n, lambda))?),
        )
    })
}

/// # Safety
/// `b` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_blocks_len(
    b: *const BlobcellBlocks,
    out: *mut usize,
) -> BlobcellStatus {
    guard(|| {
        let len = borrow(b)?.0.len();
        if out.is_null() {
            return Err(null_error());
        }
        *out = len;
        Ok(())
    })
}

/// Block `i`: multiplicity, degree and the monic diagonal entry `c_i`.
///
/// # Safety
/// `b` must be a valid handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_blocks_get(
    b: *const BlobcellBlocks,
    i: usize,
    multiplicity: *mut usize,
    degree: *mut usize,
    c: *mut *mut BlobcellPoly,
) -> BlobcellStatus {
    guard(|| {
        let blocks = &borrow(b)?.0;
        let Some(block) = blocks.get(i) else {
            set_error(format!("block index {} out of range", i));
            return Err(BlobcellStatus::InvalidArgument);
        };
        if multiplicity.is_null() || degree.is_null() {
            return Err(null_error());
        }
        *multiplicity = block.multiplicity;
        *degree = block.degree;
        write_out(c, BlobcellPoly(block.c.clone()))
    })
}

/// # Safety
/// `b` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn blobcell_blocks_free(b: *mut BlobcellBlocks) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// The Gram matrix of `Δ_n(λ)` with its basis, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_gram_matrix_json(
    n: usize,
    lambda: i64,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| {
        let basis = lib(blobcell::blob::enumerate_blob_half(n, lambda))?;
        let g = lib(blobcell::blob::gram_matrix_blob(n, lambda))?;
        let v = serde_json::json!({ "n": n, "lambda": lambda, "basis": basis.basis, "matrix": g });
        write_string(out, v.to_string())
    })
}

/// The Jones-Wenzl idempotent `JW_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_jw(n: usize, out: *mut *mut BlobcellTl) -> BlobcellStatus {
    guard(|| {
        let j = lib(blobcell::jw::jw(n))?;
        write_out(out, BlobcellTl((*j).clone()))
    })
}

/// Number of diagrams with nonzero coefficient.
///
/// # Safety
/// `e` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_tl_num_terms(
    e: *const BlobcellTl,
    out: *mut usize,
) -> BlobcellStatus {
    guard(|| {
        let len = borrow(e)?.0.len();
        if out.is_null() {
            return Err(null_error());
        }
        *out = len;
        Ok(())
    })
}

/// Expansion as `[{"word": "U1", "coeff": "1/2"}, …]` in canonical order.
///
/// # Safety
/// `e` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_tl_to_json(
    e: *const BlobcellTl,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| {
        let e = &borrow(e)?.0;
        let n = e.iter().next().map_or(0, |(d, _)| d.bottom());
        let words = lib(blobcell::tl::reduced_words(n))?;
        let terms: Vec<serde_json::Value> = e
            .iter()
            .map(|(d, c)| {
                serde_json::json!({
                    "word": blobcell::tl::render_word(&words[d]),
                    "coeff": c.to_string(),
                })
            })
            .collect();
        write_string(out, serde_json::Value::Array(terms).to_string())
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn blobcell_tl_free(e: *mut BlobcellTl) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `dim_q Δ_n(λ)` as a Laurent polynomial string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_graded_dim_cell(
    n: usize,
    lambda: i64,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| {
        write_string(
            out,
            lib(blobcell::jantzen::graded_dim_cell(n, lambda))?.to_string(),
        )
    })
}

/// Graded sum formula for `Δ_w(v)`; words are strings over `{s, t}`, `"e"`
/// for the identity.
///
/// # Safety
/// `w`, `v` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_sum_formula_check(
    w: *const c_char,
    v: *const c_char,
    out: *mut *mut BlobcellReport,
) -> BlobcellStatus {
    guard(|| {
        let w = parse_word(read_str(w)?)?;
        let v = parse_word(read_str(v)?)?;
        let ctx = lib(CellContext::new(w, v))?;
        write_out(
            out,
            BlobcellReport(lib(blobcell::jantzen::sum_formula_check(&ctx))?),
        )
    })
}

/// Writes 1 to `out` if both sides agree.
///
/// # Safety
/// `r` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_report_pass(
    r: *const BlobcellReport,
    out: *mut i32,
) -> BlobcellStatus {
    guard(|| {
        let pass = borrow(r)?.0.pass;
        if out.is_null() {
            return Err(null_error());
        }
        *out = i32::from(pass);
        Ok(())
    })
}

/// Left side of the sum formula.
///
/// # Safety
/// `r` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_report_lhs(
    r: *const BlobcellReport,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| write_string(out, borrow(r)?.0.lhs.to_string()))
}

/// Right side of the sum formula.
///
/// # Safety
/// `r` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_report_rhs(
    r: *const BlobcellReport,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| write_string(out, borrow(r)?.0.rhs.to_string()))
}

/// The full report as JSON.
///
/// # Safety
/// `r` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_report_to_json(
    r: *const BlobcellReport,
    out: *mut *mut c_char,
) -> BlobcellStatus {
    guard(|| {
        let s = serde_json::to_string(&borrow(r)?.0).expect("serializable");
        write_string(out, s)
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn blobcell_report_free(r: *mut BlobcellReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs the verification suite with bounds capped at `max_n`; writes the
/// number of failing items to `failures`.
///
/// # Safety
/// `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blobcell_verify(max_n: usize, failures: *mut usize) -> BlobcellStatus {
    guard(|| {
        let items = lib(blobcell::suite::run_suite(max_n))?;
        if failures.is_null() {
            return Err(null_error());
        }
        *failures = items.iter().filter(|i| !i.pass).count();
        Ok(())
    })
}
