//! C ABI for `vinculum`.
//!
//! Conventions:
//!
//! * Every fallible function returns a [`VnStatus`] and writes its result
//!   through an out-pointer. On failure the out-pointer is left untouched and
//!   [`vn_last_error_message`] describes the error until the next call on
//!   the same thread.
//! * Objects are opaque handles created by `*_new`/`*_parse` functions and
//!   released with the matching `*_free`. Passing `NULL` to a `*_free`
//!   function is a no-op.
//! * Strings returned to the caller are NUL-terminated UTF-8 and must be
//!   released with [`vn_string_free`].
//! * Counts are exact. Functions with a `uint64_t` result report
//!   `VN_STATUS_OVERFLOW` when the value does not fit; the `_string`
//!   variants return the decimal expansion instead.
//! * Panics never cross the boundary; they are reported as
//!   `VN_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vinculum::eco::{eco_matrix, shift_diagonal};
use vinculum::formulas::{closed_form_count, column_gf};
use vinculum::oracle::{Oracle, OracleError};
use vinculum::{
    BuiltinRule, CountMatrix, PatternSet, RefinedDistribution, Statistic, SuccessionRule,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VnStatus {
    Ok = 0,
    /// A pointer was `NULL`, an index was out of range or a buffer too short.
    InvalidArgument = 1,
    /// A pattern, permutation or rule name could not be parsed.
    Parse = 2,
    /// The requested length exceeds the enumeration cap.
    ResourceCap = 3,
    /// No closed form or generating tree is known for the input.
    Unsupported = 4,
    /// The exact value does not fit the output type.
    Overflow = 5,
    /// An internal error was caught at the boundary.
    Panic = 6,
}

/// Refine by the first entry.
pub const VN_STAT_FIRST: u32 = 0;
/// Refine by the last entry.
pub const VN_STAT_LAST: u32 = 1;

/// A parsed set of generalized patterns.
pub struct VnPatternSet(PatternSet);

/// Avoiders counted by the value of their first or last entry.
pub struct VnDistribution(RefinedDistribution);

/// A matrix produced by a succession rule.
pub struct VnMatrix(CountMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(VnStatus, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure(VnStatus::InvalidArgument, msg.into())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let status = match e {
            OracleError::ResourceCap { .. } => VnStatus::ResourceCap,
            _ => VnStatus::Panic,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records any error message and converts it to a status.
fn guard<F>(f: F) -> VnStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            VnStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            VnStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::invalid(format!("{what} is NULL")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(VnStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::invalid(format!("{what} is NULL")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::invalid("output pointer is NULL"));
    }
    out.write(value);
    Ok(())
}

fn to_u64<T>(value: T) -> Result<u64, Failure>
where
    T: TryInto<u64> + ToString + Clone,
{
    value.clone().try_into().map_err(|_| {
        Failure(
            VnStatus::Overflow,
            format!("{} does not fit in 64 bits", value.to_string()),
        )
    })
}

fn oracle(cap: usize) -> Oracle {
    Oracle::new().with_cap(cap)
}

fn statistic(stat: u32) -> Result<Statistic, Failure> {
    match stat {
        VN_STAT_FIRST => Ok(Statistic::First),
        VN_STAT_LAST => Ok(Statistic::Last),
        other => Err(Failure::invalid(format!("unknown statistic {other}"))),
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Why the most recent call on this thread failed; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn vn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be `NULL` or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a comma-separated pattern list such as `"1-23,21-3"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_pattern_set_parse(
    text: *const c_char,
    out: *mut *mut VnPatternSet,
) -> VnStatus {
    guard(|| {
        let s = read_str(text, "pattern text")?;
        let ps: PatternSet = s.parse().map_err(|e: vinculum::pattern::PatternError| {
            Failure(VnStatus::Parse, e.to_string())
        })?;
        write_out(out, Box::into_raw(Box::new(VnPatternSet(ps))))
    })
}

/// Canonical text of a pattern set; free with [`vn_string_free`].
///
/// # Safety
/// `ps` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_pattern_set_to_string(
    ps: *const VnPatternSet,
    out: *mut *mut c_char,
) -> VnStatus {
    guard(|| {
        let ps = handle(ps, "pattern set")?;
        write_out(out, c_string(ps.0.to_string()))
    })
}

/// # Safety
/// `ps` must be `NULL` or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vn_pattern_set_free(ps: *mut VnPatternSet) {
    if !ps.is_null() {
        drop(Box::from_raw(ps));
    }
}

/// Number of permutations of length `n` avoiding every pattern in `ps`,
/// enumerated exhaustively up to length `cap`.
///
/// # Safety
/// `ps` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_count_avoiders(
    ps: *const VnPatternSet,
    n: usize,
    cap: usize,
    out: *mut u64,
) -> VnStatus {
    guard(|| {
        let ps = handle(ps, "pattern set")?;
        let count = oracle(cap).count_avoiders(n, &ps.0)?;
        write_out(out, to_u64(count)?)
    })
}

/// Decimal form of [`vn_count_avoiders`]; free with [`vn_string_free`].
///
/// # Safety
/// `ps` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_count_avoiders_string(
    ps: *const VnPatternSet,
    n: usize,
    cap: usize,
    out: *mut *mut c_char,
) -> VnStatus {
    guard(|| {
        let ps = handle(ps, "pattern set")?;
        let count = oracle(cap).count_avoiders(n, &ps.0)?;
        write_out(out, c_string(count.to_string()))
    })
}

/// Closed-form number of avoiders of length `n` whose distinguished entry
/// (first or last, depending on the set) equals `k`.
///
/// # Safety
/// `ps` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_closed_form_count(
    ps: *const VnPatternSet,
    n: usize,
    k: usize,
    out: *mut u64,
) -> VnStatus {
    guard(|| {
        let ps = handle(ps, "pattern set")?;
        let value = closed_form_count(&ps.0, n, k).map_err(|e| {
            let status = match e {
                vinculum::formulas::FormulaError::OutOfRange { .. } => VnStatus::InvalidArgument,
                _ => VnStatus::Unsupported,
            };
            Failure(status, e.to_string())
        })?;
        write_out(out, to_u64(value)?)
    })
}

/// Refined distribution for lengths `1..=n_max`; `stat` is
/// [`VN_STAT_FIRST`] or [`VN_STAT_LAST`].
///
/// # Safety
/// `ps` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_distribution_new(
    ps: *const VnPatternSet,
    stat: u32,
    n_max: usize,
    cap: usize,
    out: *mut *mut VnDistribution,
) -> VnStatus {
    guard(|| {
        let ps = handle(ps, "pattern set")?;
        let d = oracle(cap).refined_distribution(n_max, &ps.0, statistic(stat)?)?;
        write_out(out, Box::into_raw(Box::new(VnDistribution(d))))
    })
}

/// Largest length stored in `d`, or 0 for `NULL`.
///
/// # Safety
/// `d` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vn_distribution_n_max(d: *const VnDistribution) -> usize {
    d.as_ref().map_or(0, |d| d.0.n_max())
}

/// Entry for length `n` and value `k`, both counted from 1.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_distribution_get(
    d: *const VnDistribution,
    n: usize,
    k: usize,
    out: *mut u64,
) -> VnStatus {
    guard(|| {
        let d = handle(d, "distribution")?;
        let row =
            d.0.row(n)
                .ok_or_else(|| Failure::invalid(format!("no row {n}")))?;
        let value = k
            .checked_sub(1)
            .and_then(|i| row.get(i))
            .ok_or_else(|| Failure::invalid(format!("row {n} has no column {k}")))?;
        write_out(out, to_u64(value.clone())?)
    })
}

/// # Safety
/// `d` must be `NULL` or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vn_distribution_free(d: *mut VnDistribution) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Expands a built-in rule (`OMEGA_BELL`, `CATALAN`, `PAIR_INVOLUTION`,
/// `PHI_MOTZKIN`) to `depth` levels. `shifted` moves the diagonal of
/// `OMEGA_BELL` into the first column.
///
/// # Safety
/// `rule` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_matrix_new(
    rule: *const c_char,
    depth: usize,
    shifted: bool,
    out: *mut *mut VnMatrix,
) -> VnStatus {
    guard(|| {
        let name = read_str(rule, "rule name")?;
        let rule: BuiltinRule = name
            .parse()
            .map_err(|e: vinculum::eco::EcoError| Failure(VnStatus::Parse, e.to_string()))?;
        let mut m = eco_matrix(&SuccessionRule::builtin(rule), depth);
        if shifted {
            if rule != BuiltinRule::OmegaBell {
                return Err(Failure(
                    VnStatus::Unsupported,
                    format!("shifting applies to OMEGA_BELL only, not {rule}"),
                ));
            }
            m = shift_diagonal(&m).map_err(|e| Failure(VnStatus::Unsupported, e.to_string()))?;
        }
        write_out(out, Box::into_raw(Box::new(VnMatrix(m))))
    })
}

/// Number of rows in `m`, or 0 for `NULL`.
///
/// # Safety
/// `m` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vn_matrix_depth(m: *const VnMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.depth())
}

/// Stored width of row `n` (counted from 1).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_matrix_row_len(
    m: *const VnMatrix,
    n: usize,
    out: *mut usize,
) -> VnStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let row =
            m.0.row(n)
                .ok_or_else(|| Failure::invalid(format!("no row {n}")))?;
        write_out(out, row.len())
    })
}

/// Entry at row `n`, column `k` (both from 1); zero past the stored width.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vn_matrix_get(
    m: *const VnMatrix,
    n: usize,
    k: usize,
    out: *mut u64,
) -> VnStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        if n == 0 || n > m.0.depth() || k == 0 {
            return Err(Failure::invalid(format!("no entry ({n},{k})")));
        }
        write_out(out, to_u64(m.0.get(n, k))?)
    })
}

/// # Safety
/// `m` must be `NULL` or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vn_matrix_free(m: *mut VnMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Coefficients of x^0..x^order of the column generating function `C_k` of
/// the Motzkin pair, written to `buf`, which must hold `order + 1` values.
///
/// # Safety
/// `buf` must point to `len` writable `int64_t` values.
#[no_mangle]
pub unsafe extern "C" fn vn_column_gf(
    k: usize,
    order: usize,
    buf: *mut i64,
    len: usize,
) -> VnStatus {
    guard(|| {
        if buf.is_null() {
            return Err(Failure::invalid("buffer is NULL"));
        }
        let needed = order
            .checked_add(1)
            .ok_or_else(|| Failure::invalid("order too large"))?;
        if len < needed {
            return Err(Failure::invalid(format!(
                "buffer holds {len} values, {needed} needed"
            )));
        }
        let series =
            column_gf(k, order).map_err(|e| Failure(VnStatus::Unsupported, e.to_string()))?;
        let mut values = Vec::with_capacity(needed);
        for c in series.coeffs() {
            let v = i64::try_from(c)
                .map_err(|_| Failure(VnStatus::Overflow, format!("{c} does not fit in 64 bits")))?;
            values.push(v);
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}
