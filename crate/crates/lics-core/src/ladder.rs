//! Closed-form ladder-scheme spectra.
//!
//! `ladder_point` evaluates, from one set of dispersion factors:
//!
//! * `F_1`  — absorption/refraction of the weak fundamental at `omega_1`,
//! * `F_S`  — absorption/refraction of the weak generated field at `omega_S`,
//! * the scaled four-wave-mixing susceptibilities `chi3/chi3_0`.
//!
//! `F_S` has three algebraically equivalent forms which share the resonance
//! denominator `D = X_n X_f - K + A_m X_f`; all three are evaluated and the
//! spread is recorded so tests can pin their agreement. Near-pole points
//! return an error instead of a clamped value; sweeps turn those into gaps.

use num_complex::Complex64 as C64;

use crate::dispersion::{dispersion_factors, DispersionFactors};
use crate::error::{LicsError, Result};
use crate::params::{ComplexResponse, LadderParams};

/// Convention linking the back-conversion susceptibility `chi3_1` to the
/// generation one. The coupled-wave solution assumes the conjugate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chi1Convention {
    #[default]
    ConjugateOfChiS,
    SameAsChiS,
}

#[derive(Debug, Clone, Copy)]
pub struct LadderSpectrumPoint {
    pub f1: ComplexResponse,
    pub fs: ComplexResponse,
    pub chi3_s_ratio: C64,
    pub chi3_1_ratio: C64,
    /// Maximum relative disagreement between the three forms of `F_S`.
    pub fs_form_spread: f64,
}

fn one_minus_iq(q: f64) -> C64 {
    C64::new(1.0, -q)
}

/// The shared resonance denominator `D = X_n X_f - K + A_m X_f`.
pub fn resonance_denominator(f: &DispersionFactors) -> C64 {
    f.x_n * f.x_f - f.k + f.a_m * f.x_f
}

pub fn ladder_point(p: &LadderParams) -> Result<LadderSpectrumPoint> {
    ladder_point_with(p, Chi1Convention::default())
}

pub fn ladder_point_with(
    p: &LadderParams,
    convention: Chi1Convention,
) -> Result<LadderSpectrumPoint> {
    let f = dispersion_factors(p)?;
    let d = resonance_denominator(&f);
    let scale = (f.x_n * f.x_f).norm().max(1.0);
    if d.norm() < p.pole_tol * scale {
        return Err(LicsError::ResonantPole {
            magnitude: d.norm(),
            tol: p.pole_tol * scale,
            omega_1: p.omega_1,
            omega_2: p.omega_2,
            omega_l: p.omega_l,
        });
    }

    let f1 = (1.0 - f.a_m * f.x_f / d) / f.x_m;

    let fs_forms = fs_three_forms(&f, d);
    let fs = fs_forms[0];
    let mut spread: f64 = 0.0;
    for w in &fs_forms[1..] {
        spread = spread.max((fs - w).norm() / fs.norm().max(1.0));
    }

    let q = &p.fano;
    let chi_num = f.x_f
        - p.s_nf * f.beta_f * one_minus_iq(q.q_fn) * one_minus_iq(q.q_gf) / one_minus_iq(q.q_gn);
    let chi3_s_ratio = chi_num / (f.x_m * (1.0 + p.g_nn()) * d);
    let chi3_1_ratio = match convention {
        Chi1Convention::ConjugateOfChiS => chi3_s_ratio.conj(),
        Chi1Convention::SameAsChiS => chi3_s_ratio,
    };

    Ok(LadderSpectrumPoint {
        f1: ComplexResponse(f1),
        fs: ComplexResponse(fs),
        chi3_s_ratio,
        chi3_1_ratio,
        fs_form_spread: spread,
    })
}

/// The three equivalent expressions for `F_S`; the third replaces `A_n` with
/// the perturbed `A~_n` over the denominator `X_f X~_n - K` (equal to `D`).
pub(crate) fn fs_three_forms(f: &DispersionFactors, d: C64) -> [C64; 3] {
    let form1 = 1.0 - (f.x_f * f.x_n * (f.a_n + f.a_f) - f.u + f.a_m * f.a_f * f.x_f) / d;
    let form2 = 1.0
        - f.a_f
        - f.a_n
        - (f.k * (f.a_n + f.a_f) - f.u - f.a_m * f.a_n * f.x_f) / d;
    let d3 = f.x_f * f.x_n_tilde - f.k;
    let form3 = 1.0 - f.a_f - f.a_n_tilde - (f.k * (f.a_n_tilde + f.a_f) - f.u) / d3;
    [form1, form2, form3]
}

/// Assemble the scaled propagation inputs at one detuning point: scaled
/// absorption indices from `F_1`/`F_S` and the nonlinear drive
/// `eta0 = (1 + q_gn^2) |chi|^2 g_mn g_nn`.
pub fn ladder_fwm_setup(
    p: &LadderParams,
    c_ratio: f64,
) -> Result<crate::propagation::PropagationSetup> {
    let pt = ladder_point(p)?;
    let eta_q0_bar = crate::propagation::eta0_fano(p.fano.q_gn)
        * pt.chi3_s_ratio.norm_sqr()
        * p.g_mn
        * p.g_nn();
    Ok(crate::propagation::PropagationSetup {
        alpha1_bar: pt.f1.absorption(),
        alpha_s_bar: pt.fs.absorption(),
        eta_q0_bar,
        c_ratio,
    })
}

pub fn absorption_1(p: &LadderParams) -> Result<f64> {
    Ok(ladder_point(p)?.f1.absorption())
}

pub fn refraction_1(p: &LadderParams) -> Result<f64> {
    Ok(ladder_point(p)?.f1.refraction())
}

pub fn absorption_s(p: &LadderParams) -> Result<f64> {
    Ok(ladder_point(p)?.fs.absorption())
}

pub fn refraction_s(p: &LadderParams) -> Result<f64> {
    Ok(ladder_point(p)?.fs.refraction())
}
