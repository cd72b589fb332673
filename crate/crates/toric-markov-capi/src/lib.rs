//! C ABI over the toric-markov library.
//!
//! Conventions: every function returns a [`TmStatus`]; results come back
//! through out-parameters as NUL-terminated UTF-8 strings allocated by this
//! library and released with [`tm_string_free`]. Matrices are opaque
//! [`TmMatrix`] handles created by [`tm_matrix_new`] and released with
//! [`tm_matrix_free`]. On any non-zero status, [`tm_last_error`] returns a
//! human-readable message for the calling thread.
//!
//! Move lists are returned as JSON (`{"kind": "...", "moves": [[...]]}`,
//! lists of bases as `{"kind": "...", "bases": [[[...]]]}`), counts as plain
//! decimal strings, so no caller needs to understand Rust types. The header
//! in `include/toric_markov.h` is kept in sync with this file; regenerate it
//! with `cbindgen --config cbindgen.toml --output include/toric_markov.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;

use toric_markov::{
    collect_markov_bases, count_markov_from_seed, fiber_graph, fiber_graph_dot, generating_fibers,
    indispensable_from_seed, parse_key, parse_matrix, parse_moves, prufer_tree,
    random_markov_from_seed, seed_markov_basis_with_budget, universal_from_seed,
    verify_markov_basis, verify_seed_basis, CompletionBudget, ConfigMatrix, Error, MarkovBasis,
};

/// Status codes; zero is success, everything else is an error class aligned
/// with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    TmOk = 0,
    /// Text input could not be parsed (matrix, moves, key, or sequence).
    TmErrParse = 2,
    /// The matrix is not a configuration matrix.
    TmErrNotConfiguration = 3,
    /// A fiber, pair, or materialization limit was exceeded.
    TmErrLimit = 4,
    /// A supplied move set failed verification.
    TmErrVerify = 5,
    /// A required pointer argument was NULL.
    TmErrNullArgument = 6,
    /// A string argument was not valid UTF-8.
    TmErrUtf8 = 7,
    /// The library panicked; file a bug.
    TmErrPanic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn status_of(err: &Error) -> TmStatus {
    match err.exit_code() {
        3 => TmStatus::TmErrNotConfiguration,
        4 => TmStatus::TmErrLimit,
        5 => TmStatus::TmErrVerify,
        _ => TmStatus::TmErrParse,
    }
}

/// Opaque matrix handle: the admitted matrix, the completion budget, and a
/// lazily computed (or externally supplied) seed basis shared by the
/// analyses.
pub struct TmMatrix {
    matrix: ConfigMatrix,
    pairs_budget: usize,
    seed: Mutex<Option<MarkovBasis>>,
}

impl TmMatrix {
    fn seed_basis(&self) -> Result<MarkovBasis, Error> {
        let mut guard = self.seed.lock().unwrap();
        if guard.is_none() {
            let budget = CompletionBudget {
                max_pairs: self.pairs_budget,
                wall_limit: None,
            };
            *guard = Some(seed_markov_basis_with_budget(&self.matrix, &budget)?);
        }
        Ok(guard.as_ref().unwrap().clone())
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, TmStatus> {
    if ptr.is_null() {
        set_last_error("NULL string argument");
        return Err(TmStatus::TmErrNullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8");
        TmStatus::TmErrUtf8
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> TmStatus {
    if out.is_null() {
        set_last_error("NULL output argument");
        return TmStatus::TmErrNullArgument;
    }
    let sanitized = value.replace('\0', " ");
    let c = CString::new(sanitized).unwrap();
    unsafe { *out = c.into_raw() };
    TmStatus::TmOk
}

fn guard(body: impl FnOnce() -> TmStatus) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            TmStatus::TmErrPanic
        }
    }
}

fn moves_json(kind: &str, basis: &MarkovBasis) -> String {
    serde_json::json!({
        "kind": kind,
        "moves": basis.moves().iter().map(|m| m.vector().to_vec()).collect::<Vec<_>>(),
    })
    .to_string()
}

fn bases_json(kind: &str, bases: &[MarkovBasis]) -> String {
    serde_json::json!({
        "kind": kind,
        "bases": bases
            .iter()
            .map(|b| b.moves().iter().map(|m| m.vector().to_vec()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
    .to_string()
}

/// Parse and admit a configuration matrix with default limits.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer; the
/// returned handle must be released with [`tm_matrix_free`].
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_new(text: *const c_char, out: *mut *mut TmMatrix) -> TmStatus {
    tm_matrix_new_with_limits(text, 1_000_000, 1_000_000, out)
}

/// As [`tm_matrix_new`] with explicit fiber-size and S-pair caps.
///
/// # Safety
/// Same contract as [`tm_matrix_new`].
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_new_with_limits(
    text: *const c_char,
    fiber_limit: u64,
    pairs_budget: u64,
    out: *mut *mut TmMatrix,
) -> TmStatus {
    guard(|| {
        if out.is_null() {
            set_last_error("NULL output argument");
            return TmStatus::TmErrNullArgument;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let rows = match parse_matrix(text) {
            Ok(r) => r,
            Err(e) => {
                set_last_error(&e.to_string());
                return status_of(&e);
            }
        };
        match ConfigMatrix::admit(rows) {
            Ok(matrix) => {
                let handle = TmMatrix {
                    matrix: matrix.with_fiber_limit(fiber_limit as usize),
                    pairs_budget: pairs_budget as usize,
                    seed: Mutex::new(None),
                };
                *out = Box::into_raw(Box::new(handle));
                TmStatus::TmOk
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Release a matrix handle; NULL is ignored.
///
/// # Safety
/// `matrix` must come from a constructor of this library and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_free(matrix: *mut TmMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Install an externally supplied seed basis (one move per line). The set is
/// verified before being accepted; on failure the handle keeps its previous
/// seed state.
///
/// # Safety
/// `matrix` must be a live handle; `moves_text` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tm_matrix_set_seed_basis(
    matrix: *mut TmMatrix,
    moves_text: *const c_char,
) -> TmStatus {
    guard(|| {
        let Some(handle) = matrix.as_ref() else {
            set_last_error("NULL matrix handle");
            return TmStatus::TmErrNullArgument;
        };
        let text = match read_str(moves_text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let vectors = match parse_moves(text, handle.matrix.col_count()) {
            Ok(v) => v,
            Err(e) => {
                set_last_error(&e.to_string());
                return status_of(&e);
            }
        };
        match verify_seed_basis(&handle.matrix, &vectors) {
            Ok(basis) => {
                *handle.seed.lock().unwrap() = Some(basis);
                TmStatus::TmOk
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

macro_rules! with_seed {
    ($matrix:ident, $out:ident, $body:expr) => {
        guard(|| {
            let Some(handle) = (unsafe { $matrix.as_ref() }) else {
                set_last_error("NULL matrix handle");
                return TmStatus::TmErrNullArgument;
            };
            let seed = match handle.seed_basis() {
                Ok(s) => s,
                Err(e) => {
                    set_last_error(&e.to_string());
                    return status_of(&e);
                }
            };
            #[allow(clippy::redundant_closure_call)]
            match ($body)(handle, &seed) {
                Ok(text) => write_string($out, text),
                Err(e) => {
                    set_last_error(&e.to_string());
                    status_of(&e)
                }
            }
        })
    };
}

/// Exact number of minimal Markov bases as a decimal string.
///
/// # Safety
/// `matrix` must be a live handle; `out` receives a string to free with
/// [`tm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tm_count(matrix: *const TmMatrix, out: *mut *mut c_char) -> TmStatus {
    with_seed!(matrix, out, |h: &TmMatrix, seed: &MarkovBasis| {
        count_markov_from_seed(&h.matrix, seed).map(|c| c.to_string())
    })
}

/// The seed basis itself (JSON move list).
///
/// # Safety
/// As [`tm_count`].
#[no_mangle]
pub unsafe extern "C" fn tm_seed_basis(matrix: *const TmMatrix, out: *mut *mut c_char) -> TmStatus {
    with_seed!(matrix, out, |_h: &TmMatrix, seed: &MarkovBasis| {
        Ok::<_, Error>(moves_json("seed", seed))
    })
}

/// Moves in every minimal Markov basis (JSON move list).
///
/// # Safety
/// As [`tm_count`].
#[no_mangle]
pub unsafe extern "C" fn tm_indispensable_set(
    matrix: *const TmMatrix,
    out: *mut *mut c_char,
) -> TmStatus {
    with_seed!(matrix, out, |h: &TmMatrix, seed: &MarkovBasis| {
        indispensable_from_seed(&h.matrix, seed).map(|b| moves_json("indispensable", &b))
    })
}

/// Moves in some minimal Markov basis (JSON move list).
///
/// # Safety
/// As [`tm_count`].
#[no_mangle]
pub unsafe extern "C" fn tm_universal_markov(
    matrix: *const TmMatrix,
    out: *mut *mut c_char,
) -> TmStatus {
    with_seed!(matrix, out, |h: &TmMatrix, seed: &MarkovBasis| {
        universal_from_seed(&h.matrix, seed).map(|b| moves_json("universal", &b))
    })
}

/// All minimal Markov bases as JSON, refused beyond `limit` (0 keeps the
/// library default of 100000).
///
/// # Safety
/// As [`tm_count`].
#[no_mangle]
pub unsafe extern "C" fn tm_markov_bases(
    matrix: *const TmMatrix,
    limit: u64,
    out: *mut *mut c_char,
) -> TmStatus {
    with_seed!(matrix, out, |h: &TmMatrix, seed: &MarkovBasis| {
        let limit = if limit == 0 {
            None
        } else {
            Some(limit as usize)
        };
        collect_markov_bases(&h.matrix, seed, limit).map(|bases| bases_json("minimal", &bases))
    })
}

/// `count` exactly uniform samples from the minimal Markov bases, as JSON.
///
/// # Safety
/// As [`tm_count`].
#[no_mangle]
pub unsafe extern "C" fn tm_random_markov(
    matrix: *const TmMatrix,
    rng_seed: u64,
    count: u64,
    out: *mut *mut c_char,
) -> TmStatus {
    with_seed!(matrix, out, |h: &TmMatrix, seed: &MarkovBasis| {
        random_markov_from_seed(&h.matrix, seed, rng_seed, count as usize)
            .map(|bases| bases_json("sample", &bases))
    })
}

/// Verify a move set (one move per line) against the generating fibers:
/// returns `{"generates": bool, "minimal": bool, "certificate": ...}`.
///
/// # Safety
/// As [`tm_count`], plus `moves_text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tm_verify(
    matrix: *const TmMatrix,
    moves_text: *const c_char,
    out: *mut *mut c_char,
) -> TmStatus {
    let text = match read_str(moves_text) {
        Ok(t) => t.to_string(),
        Err(s) => return s,
    };
    with_seed!(matrix, out, |h: &TmMatrix, seed: &MarkovBasis| {
        let vectors = parse_moves(&text, h.matrix.col_count())?;
        let reference: Vec<_> = generating_fibers(&h.matrix, seed)?
            .iter()
            .map(|g| g.key().clone())
            .collect();
        let verdict = verify_markov_basis(&h.matrix, &vectors, &reference)?;
        Ok::<_, Error>(
            serde_json::json!({
                "generates": verdict.generates,
                "minimal": verdict.minimal,
                "certificate": verdict.certificate.as_ref().map(|c| {
                    serde_json::json!({
                        "fiber": c.fiber.coords().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "u": c.u,
                        "v": c.v,
                    })
                }),
            })
            .to_string(),
        )
    })
}

/// DOT rendering of one fiber graph; `key` is comma-separated coordinates.
///
/// # Safety
/// As [`tm_count`], plus `key` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tm_fiber_graph_dot(
    matrix: *const TmMatrix,
    key: *const c_char,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let Some(handle) = (unsafe { matrix.as_ref() }) else {
            set_last_error("NULL matrix handle");
            return TmStatus::TmErrNullArgument;
        };
        let key_text = match read_str(key) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = parse_key(key_text, handle.matrix.row_count())
            .and_then(|k| fiber_graph(&handle.matrix, &k));
        match result {
            Ok(g) => write_string(out, fiber_graph_dot(&g)),
            Err(e) => {
                set_last_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Decode a Prüfer sequence; returns `{"n": ..., "edges": [[u,v],...]}`.
///
/// # Safety
/// `seq` must point to `seq_len` readable entries (may be NULL when
/// `seq_len` is 0); `out` as in [`tm_count`].
#[no_mangle]
pub unsafe extern "C" fn tm_prufer_tree(
    seq: *const u64,
    seq_len: usize,
    n: u64,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        if seq.is_null() && seq_len > 0 {
            set_last_error("NULL sequence argument");
            return TmStatus::TmErrNullArgument;
        }
        let labels: Vec<usize> = if seq_len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(seq, seq_len)
                .iter()
                .map(|&v| v as usize)
                .collect()
        };
        match prufer_tree(&labels, n as usize) {
            Ok(edges) => write_string(
                out,
                serde_json::json!({ "n": n, "edges": edges }).to_string(),
            ),
            Err(e) => {
                set_last_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Message describing the last error on this thread; valid until the next
/// failing call on the same thread. Never NULL.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
