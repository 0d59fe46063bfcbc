//! C ABI over the `addtrans` library.
//!
//! Functions and tables are opaque handles created by `*_new` style calls and
//! released with the matching `*_free`. Every call returns an
//! [`AddtransStatus`]; on failure a description is available from
//! [`addtrans_last_error_message`] on the same thread. Exact values cross the
//! boundary as NUL-terminated strings (`"a"` or `"a/b"`) that the caller
//! releases with [`addtrans_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use addtrans::identities::{run_suite, IdentityId, Verdict};
use addtrans::transform::phi_of;
use addtrans::{
    convolve_at, convolve_table, factorize, factorize_u64, mobius_invert, partial_derivative, resolve, ArithFn, Error,
    Value, ValueTable,
};
use num_bigint::BigUint;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddtransStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnknownFunction = 3,
    UnknownIdentity = 4,
    Domain = 5,
    OutOfRange = 6,
    Undefined = 7,
    Resource = 8,
    Parse = 9,
    Precondition = 10,
    /// The value does not fit the requested fixed-width output.
    NotRepresentable = 11,
    Panic = 12,
}

impl From<&Error> for AddtransStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => AddtransStatus::Domain,
            Error::OutOfRange { .. } => AddtransStatus::OutOfRange,
            Error::Resource(_) => AddtransStatus::Resource,
            Error::Undefined { .. } => AddtransStatus::Undefined,
            Error::Precondition(_) => AddtransStatus::Precondition,
            Error::UnknownFunction(_) => AddtransStatus::UnknownFunction,
            Error::UnknownIdentity(_) => AddtransStatus::UnknownIdentity,
            Error::Parse(_) => AddtransStatus::Parse,
        }
    }
}

/// An arithmetic function resolved from a spec such as `"phi_of:big_omega"`.
pub struct AddtransFunction {
    inner: ArithFn,
}

/// Values of a function on `1..=len`.
pub struct AddtransTable {
    inner: ValueTable,
}

/// Report counts by verdict from [`addtrans_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AddtransVerdictCounts {
    pub pass: u64,
    pub fail: u64,
    pub erratum_candidate: u64,
    pub inapplicable: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

struct Failure(AddtransStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(AddtransStatus::from(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(body: impl FnOnce() -> Outcome) -> AddtransStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AddtransStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AddtransStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(AddtransStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(AddtransStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| Failure(AddtransStatus::Parse, "interior NUL".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn parse_n(s: &str) -> Result<BigUint, Failure> {
    s.trim().parse::<BigUint>().map_err(|e| Failure(AddtransStatus::Parse, format!("bad integer {s:?}: {e}")))
}

/// Resolves `spec` into a new function handle.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn addtrans_function_new(spec: *const c_char, out: *mut *mut AddtransFunction) -> AddtransStatus {
    guard(|| {
        let f = resolve(text(spec, "spec")?)?;
        put(out, Box::into_raw(Box::new(AddtransFunction { inner: f })))
    })
}

/// # Safety
/// `f` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn addtrans_function_free(f: *mut AddtransFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// New handle for the additive transform of `f`.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn addtrans_transform(
    f: *const AddtransFunction,
    out: *mut *mut AddtransFunction,
) -> AddtransStatus {
    guard(|| {
        let f = handle(f, "function")?;
        put(out, Box::into_raw(Box::new(AddtransFunction { inner: phi_of(&f.inner) })))
    })
}

/// `f(n)` for a decimal `n`, written as an exact string.
///
/// # Safety
/// `f` must be a live handle, `n` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_eval(
    f: *const AddtransFunction,
    n: *const c_char,
    out: *mut *mut c_char,
) -> AddtransStatus {
    guard(|| {
        let f = handle(f, "function")?;
        let n = factorize(&parse_n(text(n, "n")?)?)?;
        put_string(out, f.inner.eval(&n)?.to_string())
    })
}

/// `f(n)` as a reduced fraction `num/den` with `den > 0`.
///
/// # Safety
/// `f` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_eval_i64(
    f: *const AddtransFunction,
    n: u64,
    num: *mut i64,
    den: *mut u64,
) -> AddtransStatus {
    guard(|| {
        let f = handle(f, "function")?;
        let v = f.inner.eval(&factorize_u64(n)?)?;
        let (a, b) = v
            .to_i64_pair()
            .ok_or_else(|| Failure(AddtransStatus::NotRepresentable, format!("{v} does not fit i64/u64")))?;
        put(num, a)?;
        put(den, b)
    })
}

/// `∂f/∂p` at decimal `n`; fails with `Domain` when `p` does not divide `n`.
///
/// # Safety
/// `f` must be a live handle, `n` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_partial_derivative(
    f: *const AddtransFunction,
    p: u64,
    n: *const c_char,
    out: *mut *mut c_char,
) -> AddtransStatus {
    guard(|| {
        let f = handle(f, "function")?;
        let n = factorize(&parse_n(text(n, "n")?)?)?;
        put_string(out, partial_derivative(&f.inner, p, &n)?.to_string())
    })
}

/// `(f*g)(n)` by divisor sum at decimal `n`.
///
/// # Safety
/// `f`, `g` must be live handles, `n` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_convolve_at(
    f: *const AddtransFunction,
    g: *const AddtransFunction,
    n: *const c_char,
    out: *mut *mut c_char,
) -> AddtransStatus {
    guard(|| {
        let (f, g) = (handle(f, "f")?, handle(g, "g")?);
        let n = factorize(&parse_n(text(n, "n")?)?)?;
        put_string(out, convolve_at(&f.inner, &g.inner, &n)?.to_string())
    })
}

/// Table of `f` on `1..=bound`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_table_tabulate(
    f: *const AddtransFunction,
    bound: u64,
    out: *mut *mut AddtransTable,
) -> AddtransStatus {
    guard(|| {
        let f = handle(f, "function")?;
        let t = ValueTable::tabulate(&f.inner, bound)?;
        put(out, Box::into_raw(Box::new(AddtransTable { inner: t })))
    })
}

/// Table of `f*g` on `1..=bound`.
///
/// # Safety
/// `f`, `g` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_table_convolve(
    f: *const AddtransFunction,
    g: *const AddtransFunction,
    bound: u64,
    out: *mut *mut AddtransTable,
) -> AddtransStatus {
    guard(|| {
        let (f, g) = (handle(f, "f")?, handle(g, "g")?);
        let t = convolve_table(&f.inner, &g.inner, bound)?;
        put(out, Box::into_raw(Box::new(AddtransTable { inner: t })))
    })
}

/// Table of `μ*t`.
///
/// # Safety
/// `t` must be a live table handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_table_mobius_invert(
    t: *const AddtransTable,
    out: *mut *mut AddtransTable,
) -> AddtransStatus {
    guard(|| {
        let t = handle(t, "table")?;
        let inv = mobius_invert(&t.inner)?;
        put(out, Box::into_raw(Box::new(AddtransTable { inner: inv })))
    })
}

/// Number of entries; 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn addtrans_table_len(t: *const AddtransTable) -> u64 {
    t.as_ref().map_or(0, |t| t.inner.bound())
}

/// Entry at `n` (1-based) as an exact string.
///
/// # Safety
/// `t` must be a live table handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_table_get(t: *const AddtransTable, n: u64, out: *mut *mut c_char) -> AddtransStatus {
    guard(|| {
        let t = handle(t, "table")?;
        let v: &Value = t.inner.get(n).ok_or(Error::OutOfRange { n, bound: t.inner.bound() })?;
        put_string(out, v.to_string())
    })
}

/// # Safety
/// `t` must be null or a table handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn addtrans_table_free(t: *mut AddtransTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

/// Runs identity checks on `[1, n_max]`. `ids` and `functions` are
/// comma-separated; an empty `ids` gives an empty report and a null
/// `functions` selects the whole catalog. The JSON report goes to `json_out`
/// and per-verdict counts to `counts` (either may be null).
///
/// # Safety
/// `ids` must be NUL-terminated, `functions` null or NUL-terminated, and the
/// outputs null or writable.
#[no_mangle]
pub unsafe extern "C" fn addtrans_verify(
    ids: *const c_char,
    functions: *const c_char,
    n_max: u64,
    json_out: *mut *mut c_char,
    counts: *mut AddtransVerdictCounts,
) -> AddtransStatus {
    guard(|| {
        let ids = text(ids, "ids")?;
        let ids = split_list(ids).map(str::parse::<IdentityId>).collect::<Result<Vec<_>, _>>()?;
        let fs = if functions.is_null() {
            addtrans::catalog()
        } else {
            split_list(text(functions, "functions")?).map(resolve).collect::<Result<Vec<_>, _>>()?
        };
        let suite = run_suite(&ids, &fs, None, n_max)?;
        if !counts.is_null() {
            counts.write(AddtransVerdictCounts {
                pass: suite.count(Verdict::Pass) as u64,
                fail: suite.count(Verdict::Fail) as u64,
                erratum_candidate: suite.count(Verdict::ErratumCandidate) as u64,
                inapplicable: suite.count(Verdict::Inapplicable) as u64,
            });
        }
        if !json_out.is_null() {
            let json = serde_json::to_string(&suite).map_err(|e| Failure(AddtransStatus::Parse, e.to_string()))?;
            put_string(json_out, json)?;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn addtrans_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn addtrans_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn addtrans_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
