//! Dimensionless parameter types shared by the ladder and folded schemes.
//!
//! All rates are expressed in units of a caller-chosen reference width; only
//! ratios enter the formulas. Light-induced shifts are never independent
//! inputs: they are derived as `delta = q * gamma`, with `q` the
//! intensity-independent Fano asymmetry of the corresponding resonance.

use num_complex::Complex64 as C64;

use crate::error::{LicsError, Result};

/// Fano asymmetry ratios `q_ij = delta_ij / gamma_ij` for the ladder scheme.
///
/// The cross parameter couples the two continuum structures and is symmetric
/// (`q_fn = q_nf`); a single field holds it.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FanoSet {
    /// g-n two-photon continuum resonance (enters the probe at `omega_S`).
    pub q_gn: f64,
    /// g-f continuum resonance (enters the probe at `omega_S`).
    pub q_gf: f64,
    /// Cross structure between the two laser-induced resonances.
    pub q_fn: f64,
    /// Self shift-to-width ratio of the n-resonance (`delta_nn = q_nn * gamma_nn`).
    pub q_nn: f64,
    /// Self shift-to-width ratio of the f-resonance.
    pub q_ff: f64,
}

impl FanoSet {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("q_gn", self.q_gn),
            ("q_gf", self.q_gf),
            ("q_fn", self.q_fn),
            ("q_nn", self.q_nn),
            ("q_ff", self.q_ff),
        ] {
            ensure_finite(name, v)?;
        }
        Ok(())
    }
}

/// Complex spectral response. The real part is absorption-like
/// (`alpha/alpha_0`), the imaginary part dispersion-like
/// (`(n-1)/2(n_max-1)`); both come from a single evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexResponse(pub C64);

impl ComplexResponse {
    pub fn absorption(&self) -> f64 {
        self.0.re
    }

    pub fn refraction(&self) -> f64 {
        self.0.im
    }
}

/// Dimensionless parameters of the ladder scheme g-m-n-(continuum) with two
/// laser-induced continuum structures.
///
/// `gamma_*` are homogeneous half-widths of the g-m, g-n and g-f transitions;
/// `li_nn` and `li_ff` are the light-induced widths of the two continuum
/// resonances (same rate units). Drive strengths are exposed as the usual
/// ratios `g_mn = |G_mn|^2/(gamma_gm gamma_gn)`, `g_nn = li_nn/gamma_gn`,
/// `g_ff = li_ff/gamma_gf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderParams {
    pub gamma_gm: f64,
    pub gamma_gn: f64,
    pub gamma_gf: f64,
    /// Light-induced width of the g-n two-photon resonance (field E3).
    pub li_nn: f64,
    /// Light-induced width of the g-f resonance (field E).
    pub li_ff: f64,
    /// Dimensionless drive of the discrete m-n transition (field E2).
    pub g_mn: f64,
    /// One-photon detuning of the probe from the g-m transition.
    pub omega_1: f64,
    /// Detuning of E2 from the m-n transition.
    pub omega_2: f64,
    /// Spacing between the two quasi-levels induced in the continuum.
    pub omega_l: f64,
    pub fano: FanoSet,
    /// Cross-width ratio: `li_nf = s_nf * sqrt(li_nn * li_ff)`. A single
    /// dominant continuum channel gives |s_nf| = 1.
    pub s_nf: f64,
    /// Pole guard for the shared resonance denominator, relative to
    /// `max(1, |X_n X_f|)`.
    pub pole_tol: f64,
}

pub const DEFAULT_POLE_TOL: f64 = 1e-12;

impl LadderParams {
    /// All couplings off, zero detunings, unit widths.
    pub fn bare() -> Self {
        LadderParams {
            gamma_gm: 1.0,
            gamma_gn: 1.0,
            gamma_gf: 1.0,
            li_nn: 0.0,
            li_ff: 0.0,
            g_mn: 0.0,
            omega_1: 0.0,
            omega_2: 0.0,
            omega_l: 0.0,
            fano: FanoSet::default(),
            s_nf: 1.0,
            pole_tol: DEFAULT_POLE_TOL,
        }
    }

    /// Figure-caption style constructor: widths fixed by the ratios
    /// `gamma_gm/gamma_gf` and `gamma_gm/gamma_gn` with `gamma_gf = 1`,
    /// drives given as the dimensionless `g` parameters.
    #[allow(clippy::too_many_arguments)]
    pub fn from_drives(
        ratio_gm_gf: f64,
        ratio_gm_gn: f64,
        g_mn: f64,
        g_nn: f64,
        g_ff: f64,
        omega_1: f64,
        omega_2: f64,
        omega_l: f64,
        fano: FanoSet,
    ) -> Self {
        let gamma_gm = ratio_gm_gf;
        let gamma_gn = ratio_gm_gf / ratio_gm_gn;
        let gamma_gf = 1.0;
        LadderParams {
            gamma_gm,
            gamma_gn,
            gamma_gf,
            li_nn: g_nn * gamma_gn,
            li_ff: g_ff * gamma_gf,
            g_mn,
            omega_1,
            omega_2,
            omega_l,
            fano,
            s_nf: 1.0,
            pole_tol: DEFAULT_POLE_TOL,
        }
    }

    pub fn g_nn(&self) -> f64 {
        self.li_nn / self.gamma_gn
    }

    pub fn g_ff(&self) -> f64 {
        self.li_ff / self.gamma_gf
    }

    /// Shift of the n-resonance, `delta_nn = q_nn * li_nn`.
    pub fn delta_nn(&self) -> f64 {
        self.fano.q_nn * self.li_nn
    }

    pub fn delta_ff(&self) -> f64 {
        self.fano.q_ff * self.li_ff
    }

    /// Cross light-induced width `li_nf = s_nf * sqrt(li_nn li_ff)`.
    pub fn li_nf(&self) -> f64 {
        self.s_nf * (self.li_nn * self.li_ff).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma_gm", self.gamma_gm),
            ("gamma_gn", self.gamma_gn),
            ("gamma_gf", self.gamma_gf),
            ("li_nn", self.li_nn),
            ("li_ff", self.li_ff),
            ("g_mn", self.g_mn),
            ("omega_1", self.omega_1),
            ("omega_2", self.omega_2),
            ("omega_l", self.omega_l),
            ("s_nf", self.s_nf),
            ("pole_tol", self.pole_tol),
        ] {
            ensure_finite(name, v)?;
        }
        self.fano.validate()?;
        for (name, v) in [
            ("gamma_gm", self.gamma_gm),
            ("gamma_gn", self.gamma_gn),
            ("gamma_gf", self.gamma_gf),
        ] {
            if v <= 0.0 {
                return Err(LicsError::OutOfRange {
                    name,
                    value: v,
                    constraint: "> 0",
                });
            }
        }
        for (name, v) in [("li_nn", self.li_nn), ("li_ff", self.li_ff), ("g_mn", self.g_mn)] {
            if v < 0.0 {
                return Err(LicsError::OutOfRange {
                    name,
                    value: v,
                    constraint: ">= 0",
                });
            }
        }
        if !(-1.0..=1.0).contains(&self.s_nf) {
            return Err(LicsError::OutOfRange {
                name: "s_nf",
                value: self.s_nf,
                constraint: "in [-1, 1]",
            });
        }
        Ok(())
    }
}

pub(crate) fn ensure_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(LicsError::NonFinite { name, value: v })
    }
}
