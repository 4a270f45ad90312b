//! C ABI for the LICS spectra and conversion library.
//!
//! Conventions:
//! * parameter sets live behind opaque handles created from plain
//!   `repr(C)` config structs; destroy them with the matching `_free`;
//! * every fallible call returns a [`LicsStatus`] and writes its result
//!   through out-pointers; on failure `lics_last_error_message` returns a
//!   thread-local description;
//! * all rates share one caller-chosen reference width, detunings included.
//!
//! The generated header is `include/lics.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use lics_core::folded::{
    closed_populations, folded_fwm_point, open_populations, FoldedFamily, FoldedParams, Pumping,
};
use lics_core::ladder::{ladder_fwm_setup, ladder_point};
use lics_core::params::{FanoSet, LadderParams, DEFAULT_POLE_TOL};
use lics_core::propagation::PropagationSetup;
use lics_core::sweep::{set_folded_param, set_ladder_param};
use lics_core::LicsError;

/// Call outcome. Everything other than `Ok` leaves the out-parameters
/// untouched.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LicsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The shared resonance denominator fell below the pole guard.
    ResonantPole = 3,
    /// Degenerate steady state (singular population balance).
    Degenerate = 4,
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &LicsError) -> LicsStatus {
    set_error(&err.to_string());
    match err {
        LicsError::ResonantPole { .. } => LicsStatus::ResonantPole,
        LicsError::DegenerateSteadyState { .. } => LicsStatus::Degenerate,
        LicsError::NonFinite { .. }
        | LicsError::OutOfRange { .. }
        | LicsError::UnknownParameter(_)
        | LicsError::NegativeDistance(_)
        | LicsError::Config(_)
        | LicsError::InvalidSweep(_) => LicsStatus::InvalidArgument,
        _ => LicsStatus::InternalError,
    }
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lics_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lics_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

// ---------------------------------------------------------------------
// ladder scheme
// ---------------------------------------------------------------------

/// Ladder-scheme parameters; all rates in one reference width.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LicsLadderConfig {
    pub gamma_gm: f64,
    pub gamma_gn: f64,
    pub gamma_gf: f64,
    /// Light-induced width of the two-photon continuum resonance.
    pub li_nn: f64,
    /// Light-induced width of the second continuum resonance.
    pub li_ff: f64,
    /// Dimensionless discrete-transition drive.
    pub g_mn: f64,
    pub omega_1: f64,
    pub omega_2: f64,
    pub omega_l: f64,
    pub q_gn: f64,
    pub q_gf: f64,
    pub q_fn: f64,
    pub q_nn: f64,
    pub q_ff: f64,
    /// Cross-channel ratio in [-1, 1]; 1 for a single dominant channel.
    pub s_nf: f64,
}

/// Opaque ladder-parameter handle.
pub struct LicsLadder(LadderParams);

/// Spectral point: complex responses of the fundamental and generated
/// waves plus the scaled mixing susceptibilities.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LicsLadderPoint {
    pub f1_re: f64,
    pub f1_im: f64,
    pub fs_re: f64,
    pub fs_im: f64,
    pub chi3_s_re: f64,
    pub chi3_s_im: f64,
    pub chi3_1_re: f64,
    pub chi3_1_im: f64,
}

/// Create a ladder handle from a config. Returns null on invalid input.
///
/// # Safety
/// `cfg` must point to a valid `LicsLadderConfig`.
#[no_mangle]
pub unsafe extern "C" fn lics_ladder_new(cfg: *const LicsLadderConfig) -> *mut LicsLadder {
    let Some(cfg) = (unsafe { cfg.as_ref() }) else {
        set_error("null config");
        return std::ptr::null_mut();
    };
    let p = LadderParams {
        gamma_gm: cfg.gamma_gm,
        gamma_gn: cfg.gamma_gn,
        gamma_gf: cfg.gamma_gf,
        li_nn: cfg.li_nn,
        li_ff: cfg.li_ff,
        g_mn: cfg.g_mn,
        omega_1: cfg.omega_1,
        omega_2: cfg.omega_2,
        omega_l: cfg.omega_l,
        fano: FanoSet {
            q_gn: cfg.q_gn,
            q_gf: cfg.q_gf,
            q_fn: cfg.q_fn,
            q_nn: cfg.q_nn,
            q_ff: cfg.q_ff,
        },
        s_nf: cfg.s_nf,
        pole_tol: DEFAULT_POLE_TOL,
    };
    if let Err(e) = p.validate() {
        status_of(&e);
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(LicsLadder(p)))
}

/// # Safety
/// `h` must be a pointer from `lics_ladder_new` (or null).
#[no_mangle]
pub unsafe extern "C" fn lics_ladder_free(h: *mut LicsLadder) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Set one parameter by its path name (`omega_1`, `li_nn`, `q_fn`, ...).
///
/// # Safety
/// `h` must be a live handle; `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lics_ladder_set(
    h: *mut LicsLadder,
    name: *const c_char,
    value: f64,
) -> LicsStatus {
    let Some(h) = (unsafe { h.as_mut() }) else {
        set_error("null handle");
        return LicsStatus::NullPointer;
    };
    if name.is_null() {
        set_error("null name");
        return LicsStatus::NullPointer;
    }
    let Ok(name) = (unsafe { CStr::from_ptr(name) }).to_str() else {
        set_error("name is not UTF-8");
        return LicsStatus::InvalidArgument;
    };
    match set_ladder_param(&mut h.0, name, value) {
        Ok(()) => LicsStatus::Ok,
        Err(e) => status_of(&e),
    }
}

/// Evaluate the closed-form spectral point.
///
/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lics_ladder_point(
    h: *const LicsLadder,
    out: *mut LicsLadderPoint,
) -> LicsStatus {
    let (Some(h), Some(out)) = (unsafe { h.as_ref() }, unsafe { out.as_mut() }) else {
        set_error("null pointer");
        return LicsStatus::NullPointer;
    };
    match ladder_point(&h.0) {
        Ok(pt) => {
            *out = LicsLadderPoint {
                f1_re: pt.f1.0.re,
                f1_im: pt.f1.0.im,
                fs_re: pt.fs.0.re,
                fs_im: pt.fs.0.im,
                chi3_s_re: pt.chi3_s_ratio.re,
                chi3_s_im: pt.chi3_s_ratio.im,
                chi3_1_re: pt.chi3_1_ratio.re,
                chi3_1_im: pt.chi3_1_ratio.im,
            };
            LicsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Scaled propagation inputs (absorption indices, nonlinear drive) at the
/// handle's detuning point.
///
/// # Safety
/// `h` must be a live handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn lics_ladder_fwm_setup(
    h: *const LicsLadder,
    c_ratio: f64,
    alpha1_bar: *mut f64,
    alpha_s_bar: *mut f64,
    eta_q0_bar: *mut f64,
) -> LicsStatus {
    let Some(h) = (unsafe { h.as_ref() }) else {
        set_error("null handle");
        return LicsStatus::NullPointer;
    };
    if alpha1_bar.is_null() || alpha_s_bar.is_null() || eta_q0_bar.is_null() {
        set_error("null out-pointer");
        return LicsStatus::NullPointer;
    }
    match ladder_fwm_setup(&h.0, c_ratio) {
        Ok(s) => {
            unsafe {
                *alpha1_bar = s.alpha1_bar;
                *alpha_s_bar = s.alpha_s_bar;
                *eta_q0_bar = s.eta_q0_bar;
            }
            LicsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------
// folded scheme
// ---------------------------------------------------------------------

/// Pumping layout of the folded scheme.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LicsPumping {
    /// Reservoir rates into m, n, f (`pump_m`, `pump_n`, `pump_f`).
    Open = 0,
    /// Ground-state transfer probabilities (`pump_n`, `pump_f`).
    Closed = 1,
}

/// Folded-scheme parameters with uniform light-induced families.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LicsFoldedConfig {
    pub rel_m: f64,
    pub rel_n: f64,
    pub rel_f: f64,
    pub coh_mn: f64,
    pub coh_mf: f64,
    pub coh_nf: f64,
    pub w_nm: f64,
    pub g_mn: f64,
    pub omega_mn: f64,
    pub omega_nf: f64,
    pub gamma_nn: f64,
    pub gamma_ff: f64,
    pub q_nn: f64,
    pub q_ff: f64,
    pub q_nf: f64,
    pub pumping: LicsPumping,
    pub pump_m: f64,
    pub pump_n: f64,
    pub pump_f: f64,
}

pub struct LicsFolded(FoldedParams);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LicsFoldedState {
    pub r_m: f64,
    pub r_n: f64,
    pub r_f: f64,
    pub r_nf_re: f64,
    pub r_nf_im: f64,
    /// Dissociation rate in the shared rate units.
    pub w_dot: f64,
}

/// # Safety
/// `cfg` must point to a valid config.
#[no_mangle]
pub unsafe extern "C" fn lics_folded_new(cfg: *const LicsFoldedConfig) -> *mut LicsFolded {
    let Some(cfg) = (unsafe { cfg.as_ref() }) else {
        set_error("null config");
        return std::ptr::null_mut();
    };
    let pumping = match cfg.pumping {
        LicsPumping::Open => Pumping::Open {
            q_m: cfg.pump_m,
            q_n: cfg.pump_n,
            q_f: cfg.pump_f,
        },
        LicsPumping::Closed => Pumping::Closed {
            w_n: cfg.pump_n,
            w_f: cfg.pump_f,
        },
    };
    let fam = FoldedFamily::uniform(cfg.gamma_nn, cfg.gamma_ff, cfg.q_nn, cfg.q_ff, cfg.q_nf);
    let p = FoldedParams {
        rel_m: cfg.rel_m,
        rel_n: cfg.rel_n,
        rel_f: cfg.rel_f,
        coh_mn: cfg.coh_mn,
        coh_mf: cfg.coh_mf,
        coh_nf: cfg.coh_nf,
        w_nm: cfg.w_nm,
        g_mn: cfg.g_mn,
        omega_mn: cfg.omega_mn,
        omega_nf: cfg.omega_nf,
        fam_m: fam,
        fam_n: fam,
        fam_f: fam,
        pumping,
    };
    if let Err(e) = p.validate() {
        status_of(&e);
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(LicsFolded(p)))
}

/// # Safety
/// `h` must be a pointer from `lics_folded_new` (or null).
#[no_mangle]
pub unsafe extern "C" fn lics_folded_free(h: *mut LicsFolded) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Set one parameter by path name (`omega_nf`, `g_mn`, `q_nf`, `w_n`, ...).
///
/// # Safety
/// `h` must be a live handle; `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lics_folded_set(
    h: *mut LicsFolded,
    name: *const c_char,
    value: f64,
) -> LicsStatus {
    let Some(h) = (unsafe { h.as_mut() }) else {
        set_error("null handle");
        return LicsStatus::NullPointer;
    };
    if name.is_null() {
        set_error("null name");
        return LicsStatus::NullPointer;
    }
    let Ok(name) = (unsafe { CStr::from_ptr(name) }).to_str() else {
        set_error("name is not UTF-8");
        return LicsStatus::InvalidArgument;
    };
    match set_folded_param(&mut h.0, name, value) {
        Ok(()) => LicsStatus::Ok,
        Err(e) => status_of(&e),
    }
}

/// Quasi-stationary populations and dissociation rate (open or closed per
/// the handle's pumping).
///
/// # Safety
/// `h` must be a live handle, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lics_folded_steady_state(
    h: *const LicsFolded,
    out: *mut LicsFoldedState,
) -> LicsStatus {
    let (Some(h), Some(out)) = (unsafe { h.as_ref() }, unsafe { out.as_mut() }) else {
        set_error("null pointer");
        return LicsStatus::NullPointer;
    };
    let state = match h.0.pumping {
        Pumping::Open { .. } => open_populations(&h.0),
        Pumping::Closed { .. } => closed_populations(&h.0),
    };
    match state {
        Ok(s) => {
            *out = LicsFoldedState {
                r_m: s.r_m,
                r_n: s.r_n,
                r_f: s.r_f,
                r_nf_re: s.r_nf.re,
                r_nf_im: s.r_nf.im,
                w_dot: s.w_dot,
            };
            LicsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Scaled propagation inputs for the folded mixing process.
///
/// # Safety
/// `h` must be a live handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn lics_folded_fwm_setup(
    h: *const LicsFolded,
    alpha1_bar: *mut f64,
    alpha_s_bar: *mut f64,
    eta_q0_bar: *mut f64,
) -> LicsStatus {
    let Some(h) = (unsafe { h.as_ref() }) else {
        set_error("null handle");
        return LicsStatus::NullPointer;
    };
    if alpha1_bar.is_null() || alpha_s_bar.is_null() || eta_q0_bar.is_null() {
        set_error("null out-pointer");
        return LicsStatus::NullPointer;
    }
    match folded_fwm_point(&h.0) {
        Ok(pt) => {
            unsafe {
                *alpha1_bar = pt.alpha1_bar;
                *alpha_s_bar = pt.alpha_s_bar;
                *eta_q0_bar = pt.eta_q0_bar;
            }
            LicsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------
// propagation
// ---------------------------------------------------------------------

/// Quantum conversion efficiency of the scaled coupled-wave solution at
/// optical depth `z_alpha10 = z * alpha_10`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lics_eta_q(
    alpha1_bar: f64,
    alpha_s_bar: f64,
    eta_q0_bar: f64,
    c_ratio: f64,
    z_alpha10: f64,
    out: *mut f64,
) -> LicsStatus {
    let Some(out) = (unsafe { out.as_mut() }) else {
        set_error("null out-pointer");
        return LicsStatus::NullPointer;
    };
    let setup = PropagationSetup {
        alpha1_bar,
        alpha_s_bar,
        eta_q0_bar,
        c_ratio,
    };
    match setup.eta_q(z_alpha10 / 2.0) {
        Ok(v) => {
            *out = v;
            LicsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Conversion-against-absorption balance; positive means oscillatory
/// transfer.
#[no_mangle]
pub extern "C" fn lics_conversion_rate_b(
    alpha1_bar: f64,
    alpha_s_bar: f64,
    eta_q0_bar: f64,
    c_ratio: f64,
) -> f64 {
    PropagationSetup {
        alpha1_bar,
        alpha_s_bar,
        eta_q0_bar,
        c_ratio,
    }
    .conversion_rate_b()
}

/// Unperturbed conversion scale `1 + q^2`.
#[no_mangle]
pub extern "C" fn lics_eta0_fano(q_gn: f64) -> f64 {
    lics_core::propagation::eta0_fano(q_gn)
}
