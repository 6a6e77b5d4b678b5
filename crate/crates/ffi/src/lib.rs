//! C ABI over `concordance-lab`.
//!
//! Every function returns a [`ClStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function. Strings returned by the library are NUL-terminated, owned by the
//! caller and released with [`cl_string_free`]. After a failure,
//! [`cl_last_error`] describes it until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use concordance_lab::cli::{parse_knot, register_knot, LoadedKnot};
use concordance_lab::diagram::Diagram;
use concordance_lab::engine::{Fact, KnowledgeBase, Node, Verdict};
use concordance_lab::error::{AlgebraError, EngineError, Error};
use concordance_lab::invariants::{
    alexander_polynomial, arf, determinant, fox_milnor, levine_tristram, signature, InvariantReport,
};
use concordance_lab::seifert::SeifertMatrix;
use concordance_lab::tower::CassonTower;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidDiagram = 4,
    /// Algebraic failure, e.g. a Levine-Tristram query at a root of the
    /// Alexander polynomial.
    Algebra = 5,
    InvalidTower = 6,
    UnknownSet = 7,
    Contradiction = 8,
    /// A value does not fit the C output type.
    Overflow = 9,
    Io = 10,
    Internal = 99,
}

/// Membership verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClVerdict {
    NonMember = -1,
    Unknown = 0,
    Member = 1,
}

/// A knot: a diagram with its Seifert matrix, or a bare Seifert matrix.
pub struct ClKnot(LoadedKnot);

/// Knowledge base of filtration facts.
pub struct ClKnowledgeBase(KnowledgeBase);

/// Casson tower as a signed-kink tree.
pub struct ClTower(CassonTower);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(ClStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Diagram(_) => ClStatus::InvalidDiagram,
            Error::Algebra(_) => ClStatus::Algebra,
            Error::Tower(_) => ClStatus::InvalidTower,
            Error::Engine(EngineError::Contradiction { .. }) => ClStatus::Contradiction,
            Error::Engine(EngineError::UnknownSet(_)) => ClStatus::UnknownSet,
            Error::Engine(_) => ClStatus::Internal,
            Error::Io(_) => ClStatus::Io,
            Error::Json(_) => ClStatus::InvalidJson,
            Error::Usage(_) => ClStatus::InvalidJson,
        };
        Fail(code, e.to_string())
    }
}

macro_rules! from_via_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}
from_via_error!(
    AlgebraError,
    EngineError,
    concordance_lab::error::DiagramError,
    concordance_lab::error::TowerError,
    serde_json::Error
);

type Res<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> Res<()>) -> ClStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            ClStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(ClStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(ClStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn deref_mut<'a, T>(p: *mut T) -> Res<&'a mut T> {
    p.as_mut().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).map_err(|_| Fail(ClStatus::Internal, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn cl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a knot from a PD code: `n_crossings` groups of four labels.
///
/// # Safety
/// `name` is a NUL-terminated string; `pd` points to `4 * n_crossings`
/// integers (may be NULL when `n_crossings` is 0); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_from_pd(
    name: *const c_char,
    pd: *const i64,
    n_crossings: usize,
    out: *mut *mut ClKnot,
) -> ClStatus {
    guard(|| {
        let name = str_arg(name)?.to_string();
        if pd.is_null() && n_crossings > 0 {
            return Err(null());
        }
        let flat: &[i64] = if n_crossings == 0 { &[] } else { std::slice::from_raw_parts(pd, 4 * n_crossings) };
        let code: Vec<Vec<i64>> = flat.chunks(4).map(<[i64]>::to_vec).collect();
        let d = Diagram::from_pd(&code)?;
        let matrix = SeifertMatrix::from_diagram(&d)?;
        put(out, boxed(ClKnot(LoadedKnot { name, diagram: Some(d), matrix })))
    })
}

/// Build a knot from JSON: a diagram file `{"name", "pd", ...}` or a matrix
/// file `{"name", "genus", "rows"}`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_from_json(json: *const c_char, out: *mut *mut ClKnot) -> ClStatus {
    guard(|| {
        let k = parse_knot(str_arg(json)?, "knot")?;
        put(out, boxed(ClKnot(k)))
    })
}

/// # Safety
/// `k` comes from a `cl_knot_*` constructor and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_free(k: *mut ClKnot) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Genus of the Seifert surface the matrix comes from.
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_genus(k: *const ClKnot, out: *mut usize) -> ClStatus {
    guard(|| put(out, deref(k)?.0.matrix.genus))
}

/// # Safety
/// Pointers are valid; `nullity` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_signature(k: *const ClKnot, sig: *mut i64, nullity: *mut usize) -> ClStatus {
    guard(|| {
        let (s, n) = signature(&deref(k)?.0.matrix);
        if !nullity.is_null() {
            nullity.write(n);
        }
        put(sig, s)
    })
}

/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_arf(k: *const ClKnot, out: *mut u8) -> ClStatus {
    guard(|| put(out, arf(&deref(k)?.0.matrix)))
}

/// |Delta(-1)|; `Overflow` if it does not fit.
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_determinant(k: *const ClKnot, out: *mut i64) -> ClStatus {
    guard(|| {
        let d = determinant(&deref(k)?.0.matrix);
        let v = d.to_i64().ok_or_else(|| Fail(ClStatus::Overflow, format!("determinant {d} exceeds 64 bits")))?;
        put(out, v)
    })
}

/// Whether Delta factors as f(t) f(1/t) up to units.
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_fox_milnor(k: *const ClKnot, out: *mut bool) -> ClStatus {
    guard(|| put(out, fox_milnor(&alexander_polynomial(&deref(k)?.0.matrix))?))
}

/// Levine-Tristram signature at exp(2 pi i num/den); `Algebra` at a root of
/// the Alexander polynomial.
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_levine_tristram(k: *const ClKnot, num: i64, den: i64, out: *mut i64) -> ClStatus {
    guard(|| {
        if den == 0 {
            return Err(Fail(ClStatus::Algebra, "zero denominator".into()));
        }
        let q = BigRational::new(num.into(), den.into());
        put(out, levine_tristram(&deref(k)?.0.matrix, &q)?)
    })
}

/// Normalized Alexander polynomial as text, e.g. "t - 1 + t^-1".
///
/// # Safety
/// Pointers are valid; free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_alexander(k: *const ClKnot, out: *mut *mut c_char) -> ClStatus {
    guard(|| put_string(out, alexander_polynomial(&deref(k)?.0.matrix).to_string()))
}

/// Full invariant report as JSON.
///
/// # Safety
/// Pointers are valid; free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_knot_report_json(k: *const ClKnot, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let k = &deref(k)?.0;
        let mut r = InvariantReport::compute(&k.name, &k.matrix, &[])?;
        if let Some(d) = &k.diagram {
            r.crossings = Some(d.crossing_count());
            r.writhe = Some(d.writhe());
        }
        put_string(out, serde_json::to_string(&r)?)
    })
}

/// Empty knowledge base with filtration indices up to `bound` (at least 2).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cl_kb_new(bound: u32, conjectures: bool, out: *mut *mut ClKnowledgeBase) -> ClStatus {
    guard(|| {
        if bound < 2 {
            return Err(Fail(ClStatus::UnknownSet, format!("bound {bound} is below 2")));
        }
        put(out, boxed(ClKnowledgeBase(KnowledgeBase::new(bound, conjectures))))
    })
}

/// # Safety
/// `kb` comes from `cl_kb_new` and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_kb_free(kb: *mut ClKnowledgeBase) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Register everything computable about a knot under its own name:
/// crossing-change certificates and classical obstructions.
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_kb_register_knot(kb: *mut ClKnowledgeBase, k: *const ClKnot) -> ClStatus {
    guard(|| Ok(register_knot(&mut deref_mut(kb)?.0, &deref(k)?.0)?))
}

/// Add facts from a JSON list of `{knot, set, polarity, justification}`.
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_kb_add_facts_json(kb: *mut ClKnowledgeBase, json: *const c_char) -> ClStatus {
    guard(|| {
        let kb = &mut deref_mut(kb)?.0;
        let facts: Vec<Fact> = serde_json::from_str(str_arg(json)?)?;
        for f in facts {
            kb.add_fact(f)?;
        }
        Ok(())
    })
}

/// Verdict for `knot` in the set named by `set` (e.g. "C+_3", "P_0", "T").
///
/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_kb_verdict(
    kb: *const ClKnowledgeBase,
    knot: *const c_char,
    set: *const c_char,
    out: *mut ClVerdict,
) -> ClStatus {
    guard(|| {
        let kb = &deref(kb)?.0;
        let node: Node = str_arg(set)?.parse()?;
        kb.lattice.locate(node)?;
        let v = match kb.deduce(str_arg(knot)?)?.verdict(node) {
            Verdict::Member => ClVerdict::Member,
            Verdict::NonMember => ClVerdict::NonMember,
            Verdict::Unknown => ClVerdict::Unknown,
        };
        put(out, v)
    })
}

/// All verdicts for `knot`, with derivation traces, as JSON.
///
/// # Safety
/// Pointers are valid; free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_kb_deduce_json(
    kb: *const ClKnowledgeBase,
    knot: *const c_char,
    out: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let d = deref(kb)?.0.deduce(str_arg(knot)?)?;
        put_string(out, serde_json::to_string(&d)?)
    })
}

/// Parse and validate a tower `{"pos", "neg", "children": [...]}`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cl_tower_from_json(json: *const c_char, out: *mut *mut ClTower) -> ClStatus {
    guard(|| {
        let t: CassonTower = serde_json::from_str(str_arg(json)?)?;
        t.validate()?;
        put(out, boxed(ClTower(t)))
    })
}

/// # Safety
/// `t` comes from `cl_tower_from_json` and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_tower_free(t: *mut ClTower) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn cl_tower_height(t: *const ClTower, out: *mut usize) -> ClStatus {
    guard(|| put(out, deref(t)?.0.height()))
}

/// The grope inside the tower, as JSON `{"genus", "children": [...]}`.
///
/// # Safety
/// Pointers are valid; free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_tower_to_grope_json(t: *const ClTower, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let g = deref(t)?.0.to_grope()?;
        put_string(out, serde_json::to_string(&g)?)
    })
}

/// Positivity certificate from blowing up the base kinks, as JSON.
///
/// # Safety
/// Pointers are valid; free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_tower_certify_json(t: *const ClTower, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let c = deref(t)?.0.blow_up_certificate()?;
        put_string(out, serde_json::to_string(&c)?)
    })
}
