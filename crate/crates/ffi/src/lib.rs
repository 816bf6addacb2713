//! C ABI over `monetary-lens`.
//!
//! Economies and series cross the boundary as opaque heap handles created by
//! `ml_*_new`/`ml_*_load`-style constructors and released with the matching
//! `ml_*_free`. Every fallible call returns an [`MlStatus`]; on failure the
//! message is available from [`ml_last_error_message`] on the same thread.
//! Panics never unwind into C: they are caught and reported as
//! `ML_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use monetary_lens::exchange::{self, Economy};
use monetary_lens::normalize;
use monetary_lens::series::{self, Period, TimeSeries};
use monetary_lens::{ingest, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    MissingPeriod = 3,
    DegenerateBase = 4,
    Domain = 5,
    UnknownGood = 6,
    FlowShift = 7,
    Alignment = 8,
    Currency = 9,
    Splice = 10,
    UnknownSeries = 11,
    Io = 12,
    Parse = 13,
    Manifest = 14,
    OutOfRange = 15,
    Panic = 99,
}

impl From<&Error> for MlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Alignment { .. } => MlStatus::Alignment,
            Error::Currency { .. } => MlStatus::Currency,
            Error::Splice(_) => MlStatus::Splice,
            Error::MissingPeriod { .. } => MlStatus::MissingPeriod,
            Error::DegenerateBase(_) => MlStatus::DegenerateBase,
            Error::Domain(_) => MlStatus::Domain,
            Error::FlowShift { .. } => MlStatus::FlowShift,
            Error::UnknownGood(_) => MlStatus::UnknownGood,
            Error::UnknownSeries(_) => MlStatus::UnknownSeries,
            Error::InvalidSeries(_) | Error::InvalidEconomy(_) => MlStatus::InvalidArgument,
            Error::Io { .. } => MlStatus::Io,
            Error::Manifest(_) => MlStatus::Manifest,
            Error::Parse { .. } => MlStatus::Parse,
        }
    }
}

/// Opaque economy handle.
pub struct MlEconomy {
    inner: Economy,
}

/// Opaque time-series handle.
pub struct MlSeries {
    inner: TimeSeries,
}

/// Aggregates of one simulated period.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MlSummary {
    pub money_stock: f64,
    pub velocity: f64,
    pub goods_side: f64,
    pub price_level: f64,
    pub transaction_count: f64,
    pub gdp: f64,
    pub ledger_len: usize,
}

/// A normalized debt row. `alt_*` fields are meaningful only when
/// `has_alt` is true.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MlDebtRow {
    pub normalized_end: f64,
    pub pct_change: f64,
    pub has_alt: bool,
    pub alt_normalized_end: f64,
    pub alt_pct_change: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

enum Fail {
    Status(MlStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(MlStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MlStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MlStatus::Ok,
        Ok(Err(Fail::Status(status, msg))) => {
            set_last_error(msg);
            status
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(e.to_string());
            MlStatus::from(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            MlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(MlStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn economy_arg<'a>(p: *const MlEconomy) -> Result<&'a Economy, Fail> {
    p.as_ref().map(|e| &e.inner).ok_or_else(|| null("economy"))
}

unsafe fn series_arg<'a>(p: *const MlSeries, what: &str) -> Result<&'a TimeSeries, Fail> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(what))
}

fn boxed_economy(e: Economy) -> *mut MlEconomy {
    Box::into_raw(Box::new(MlEconomy { inner: e }))
}

fn boxed_series(s: TimeSeries) -> *mut MlSeries {
    Box::into_raw(Box::new(MlSeries { inner: s }))
}

/// Message of the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ml_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ml_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_fisher(out: *mut *mut MlEconomy) -> MlStatus {
    guard(|| {
        *out_arg(out, "out")? = boxed_economy(exchange::fisher_economy());
        Ok(())
    })
}

/// Loads an economy description file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_load(path: *const c_char, out: *mut *mut MlEconomy) -> MlStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let out = out_arg(out, "out")?;
        *out = boxed_economy(ingest::load_economy(Path::new(path))?);
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_free(e: *mut MlEconomy) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `e` must be a live economy handle; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_scale_production(
    e: *const MlEconomy,
    k: f64,
    out: *mut *mut MlEconomy,
) -> MlStatus {
    guard(|| {
        let e = economy_arg(e)?;
        let out = out_arg(out, "out")?;
        *out = boxed_economy(exchange::scale_production(e, k)?);
        Ok(())
    })
}

/// # Safety
/// `e` must be a live economy handle, `from`/`to` NUL-terminated strings,
/// `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_shift_flows(
    e: *const MlEconomy,
    from: *const c_char,
    to: *const c_char,
    count: u32,
    out: *mut *mut MlEconomy,
) -> MlStatus {
    guard(|| {
        let e = economy_arg(e)?;
        let from = str_arg(from, "from")?;
        let to = str_arg(to, "to")?;
        let out = out_arg(out, "out")?;
        *out = boxed_economy(exchange::shift_flows(e, from, to, count)?);
        Ok(())
    })
}

/// Solved unit price of one good.
///
/// # Safety
/// `e` must be a live economy handle, `good` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_price(e: *const MlEconomy, good: *const c_char, out: *mut f64) -> MlStatus {
    guard(|| {
        let e = economy_arg(e)?;
        let good = str_arg(good, "good")?;
        let out = out_arg(out, "out")?;
        *out = *exchange::solve_prices(e)
            .get(good)
            .ok_or_else(|| Error::UnknownGood(good.to_string()))?;
        Ok(())
    })
}

/// Runs one period and fills `out` with its aggregates.
///
/// # Safety
/// `e` must be a live economy handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ml_economy_summarize(e: *const MlEconomy, out: *mut MlSummary) -> MlStatus {
    guard(|| {
        let e = economy_arg(e)?;
        let out = out_arg(out, "out")?;
        let s = exchange::summarize(e)?;
        *out = MlSummary {
            money_stock: s.money_stock,
            velocity: s.velocity,
            goods_side: s.goods_side,
            price_level: s.price_level,
            transaction_count: s.transaction_count,
            gdp: s.gdp,
            ledger_len: s.ledger_len,
        };
        Ok(())
    })
}

/// Builds a series from parallel arrays of `len` years and values.
///
/// # Safety
/// `label` and `currency` must be NUL-terminated strings; `years` and
/// `values` must point to `len` readable elements (or may be null when `len`
/// is zero); `out` must be a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn ml_series_new(
    label: *const c_char,
    currency: *const c_char,
    unit_scale: f64,
    years: *const i32,
    values: *const f64,
    len: usize,
    out: *mut *mut MlSeries,
) -> MlStatus {
    guard(|| {
        let label = str_arg(label, "label")?;
        let currency = str_arg(currency, "currency")?;
        let out = out_arg(out, "out")?;
        let (years, values) = if len == 0 {
            (&[][..], &[][..])
        } else {
            if years.is_null() {
                return Err(null("years"));
            }
            if values.is_null() {
                return Err(null("values"));
            }
            (
                std::slice::from_raw_parts(years, len),
                std::slice::from_raw_parts(values, len),
            )
        };
        let points = years.iter().zip(values).map(|(&y, &v)| (Period(y), v)).collect();
        *out = boxed_series(TimeSeries::new(label, currency, unit_scale, points)?);
        Ok(())
    })
}

/// Loads a `year,value` CSV file.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn ml_series_load(
    path: *const c_char,
    label: *const c_char,
    currency: *const c_char,
    unit_scale: f64,
    out: *mut *mut MlSeries,
) -> MlStatus {
    guard(|| {
        let path = Path::new(str_arg(path, "path")?);
        let label = str_arg(label, "label")?;
        let currency = str_arg(currency, "currency")?;
        let out = out_arg(out, "out")?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        *out = boxed_series(ingest::parse_series(&text, path, label, currency, unit_scale)?);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ml_series_free(s: *mut MlSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn ml_series_len(s: *const MlSeries) -> usize {
    s.as_ref().map_or(0, |s| s.inner.len())
}

/// # Safety
/// `s` must be a live series handle; `year` and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn ml_series_point(
    s: *const MlSeries,
    index: usize,
    year: *mut i32,
    value: *mut f64,
) -> MlStatus {
    guard(|| {
        let s = series_arg(s, "series")?;
        let year = out_arg(year, "year")?;
        let value = out_arg(value, "value")?;
        let &(p, v) = s.points().get(index).ok_or_else(|| {
            Fail::Status(
                MlStatus::OutOfRange,
                format!("index {index} out of range for {} points", s.len()),
            )
        })?;
        *year = p.0;
        *value = v;
        Ok(())
    })
}

/// `s[to] / s[from]`.
///
/// # Safety
/// `s` must be a live series handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ml_series_growth_multiplier(
    s: *const MlSeries,
    from: i32,
    to: i32,
    out: *mut f64,
) -> MlStatus {
    guard(|| {
        let s = series_arg(s, "series")?;
        let out = out_arg(out, "out")?;
        *out = series::growth_multiplier(s, Period(from), Period(to))?;
        Ok(())
    })
}

/// Normalizes `raw` by the growth of `money` since `base`; the result is a new
/// series over the periods both inputs cover.
///
/// # Safety
/// `raw` and `money` must be live series handles; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn ml_normalize(
    raw: *const MlSeries,
    money: *const MlSeries,
    base: i32,
    out: *mut *mut MlSeries,
) -> MlStatus {
    guard(|| {
        let raw = series_arg(raw, "raw")?;
        let money = series_arg(money, "money")?;
        let out = out_arg(out, "out")?;
        let n = normalize::normalize(raw, money, Period(base))?;
        *out = boxed_series(n.values);
        Ok(())
    })
}

/// Debt at the end of a window deflated by a money-supply multiplier.
/// `alt_multiplier` may be null.
///
/// # Safety
/// `alt_multiplier` must be null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ml_normalize_debt_row(
    debt_start: f64,
    debt_end: f64,
    multiplier: f64,
    alt_multiplier: *const f64,
    out: *mut MlDebtRow,
) -> MlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let alt = alt_multiplier.as_ref().copied();
        let row = normalize::normalize_debt_row("", debt_start, debt_end, multiplier, alt)?;
        *out = MlDebtRow {
            normalized_end: row.normalized_end,
            pct_change: row.pct_change,
            has_alt: row.alt_normalized_end.is_some(),
            alt_normalized_end: row.alt_normalized_end.unwrap_or(0.0),
            alt_pct_change: row.alt_pct_change.unwrap_or(0.0),
        };
        Ok(())
    })
}

/// `consumption + investment + government + (exports - imports)`.
#[no_mangle]
pub extern "C" fn ml_gdp_expenditure(
    consumption: f64,
    investment: f64,
    government: f64,
    exports: f64,
    imports: f64,
) -> f64 {
    exchange::gdp_expenditure(consumption, investment, government, exports, imports)
}
