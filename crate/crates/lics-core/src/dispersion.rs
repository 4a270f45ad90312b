//! Elementary dispersion-function builders for the ladder scheme.
//!
//! Every closed-form spectrum is assembled from the complex factors below:
//!
//! ```text
//! X_i = 1 + i x_i            (unit-width Lorentzian denominators)
//! x_m = omega_1 / gamma_gm
//! x_n = (omega_1 + omega_2 - delta_nn) / (gamma_gn + li_nn)
//! x_f = (omega_1 + omega_2 - omega_l - delta_ff) / (gamma_gf + li_ff)
//!
//! beta_i = g_ii / (1 + g_ii)                 (saturation factors)
//! K      = beta_f beta_n (1 - i q_fn)^2      (two-LICS interference)
//! A_m    = g_mn / [X_m (1 + g_nn)]           (discrete-field splitting)
//! A_n    = beta_n (1 - i q_gn)^2 / X_n
//! A_f    = beta_f (1 - i q_gf)^2 / X_f
//! U      = 2 beta_f beta_n (1 - i q_gf)(1 - i q_fn)(1 - i q_gn)
//! X~_n   = X_n + A_m
//! A~_n   = beta_n (1 - i q_gn)^2 / X~_n      (two-photon resonance perturbed
//!                                             by the discrete field)
//! ```
//!
//! All functions here are pure and thread-safe.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::params::LadderParams;

#[derive(Debug, Clone, Copy)]
pub struct DispersionFactors {
    pub x_m: C64,
    pub x_n: C64,
    pub x_f: C64,
    /// Interference of the two laser-induced continuum structures.
    pub k: C64,
    pub a_m: C64,
    pub a_n: C64,
    pub a_f: C64,
    pub a_n_tilde: C64,
    pub x_n_tilde: C64,
    pub u: C64,
    pub beta_n: f64,
    pub beta_f: f64,
}

const I: C64 = C64::new(0.0, 1.0);

fn one_minus_iq(q: f64) -> C64 {
    C64::new(1.0, -q)
}

pub fn dispersion_factors(p: &LadderParams) -> Result<DispersionFactors> {
    p.validate()?;

    let x_m = 1.0 + I * (p.omega_1 / p.gamma_gm);
    let x_n = 1.0 + I * ((p.omega_1 + p.omega_2 - p.delta_nn()) / (p.gamma_gn + p.li_nn));
    let x_f = 1.0
        + I * ((p.omega_1 + p.omega_2 - p.omega_l - p.delta_ff()) / (p.gamma_gf + p.li_ff));

    let g_nn = p.g_nn();
    let g_ff = p.g_ff();
    let beta_n = g_nn / (1.0 + g_nn);
    let beta_f = g_ff / (1.0 + g_ff);

    let q = &p.fano;
    // The cross-channel ratio s_nf scales the interference factors: K carries
    // two nf cross widths, U one.
    let k = p.s_nf * p.s_nf * beta_f * beta_n * one_minus_iq(q.q_fn).powi(2);
    let a_m = p.g_mn / (x_m * (1.0 + g_nn));
    let a_n = beta_n * one_minus_iq(q.q_gn).powi(2) / x_n;
    let a_f = beta_f * one_minus_iq(q.q_gf).powi(2) / x_f;
    let x_n_tilde = x_n + a_m;
    let a_n_tilde = beta_n * one_minus_iq(q.q_gn).powi(2) / x_n_tilde;
    let u = 2.0
        * p.s_nf
        * beta_f
        * beta_n
        * one_minus_iq(q.q_gf)
        * one_minus_iq(q.q_fn)
        * one_minus_iq(q.q_gn);

    Ok(DispersionFactors {
        x_m,
        x_n,
        x_f,
        k,
        a_m,
        a_n,
        a_f,
        a_n_tilde,
        x_n_tilde,
        u,
        beta_n,
        beta_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{FanoSet, LadderParams};

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn all_drives_off() {
        let p = LadderParams::bare();
        let f = dispersion_factors(&p).unwrap();
        assert_eq!(f.x_m, C64::new(1.0, 0.0));
        assert_eq!(f.a_m, C64::new(0.0, 0.0));
        assert_eq!(f.k, C64::new(0.0, 0.0));
        assert_eq!(f.u, C64::new(0.0, 0.0));
    }

    #[test]
    fn beta_saturates_towards_one() {
        let mut p = LadderParams::bare();
        p.li_nn = 1e12;
        let f = dispersion_factors(&p).unwrap();
        assert!(f.beta_n > 1.0 - 1e-11);
        assert!(f.beta_n < 1.0);
    }

    // Independent re-evaluation of the interference factor for the fig4
    // drive set (g_ff = 150, g_nn = 200, g_mn = 9000, q_fn = 0): K reduces to
    // the plain product of saturation factors.
    #[test]
    fn fig4_interference_factor_is_real_product() {
        let p = LadderParams::from_drives(
            100.0,
            10.0,
            9000.0,
            200.0,
            150.0,
            0.0,
            0.0,
            0.0,
            FanoSet::default(),
        );
        let f = dispersion_factors(&p).unwrap();
        let expected = (150.0 / 151.0) * (200.0 / 201.0);
        assert!((f.k.re - expected).abs() < 1e-15);
        assert_eq!(f.k.im, 0.0);
    }

    #[test]
    fn detuning_moves_only_imaginary_part() {
        let mut p = LadderParams::bare();
        p.li_ff = 3.0;
        p.fano = FanoSet {
            q_gn: -0.5,
            q_gf: 0.9,
            q_fn: 1.5,
            q_nn: 0.5,
            q_ff: 0.9,
        };
        let mut last = f64::NEG_INFINITY;
        for k in 0..20 {
            p.omega_1 = -4.0 + 0.4 * k as f64;
            let f = dispersion_factors(&p).unwrap();
            assert_eq!(f.x_m.re, 1.0);
            assert!(f.x_m.im > last);
            last = f.x_m.im;
        }
    }

    #[test]
    fn x_n_tilde_is_shifted_by_a_m() {
        let mut p = LadderParams::bare();
        p.g_mn = 7.0;
        p.li_nn = 2.0;
        p.omega_1 = 0.3;
        let f = dispersion_factors(&p).unwrap();
        assert!(close(f.x_n_tilde, f.x_n + f.a_m, 1e-15));
        assert!(close(f.a_n_tilde * f.x_n_tilde, f.a_n * f.x_n, 1e-14));
    }
}
