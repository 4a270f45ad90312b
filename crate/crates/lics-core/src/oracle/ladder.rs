//! Direct linear-system validator for the ladder closed forms.
//!
//! The steady-state coherence equations, with the continuum integrals
//! replaced by their resolvent values `delta_ij + i gamma_ij`, form a
//! 5-unknown complex linear system per probe branch:
//!
//! ```text
//! unknowns: rho_gm, rho_gn, rho_gf, S_n, S_f
//! S_n = integral of rho_ge G_en over the continuum
//! S_f = integral of rho_ge G_ef over the continuum
//! ```
//!
//! This solver never touches the nested closed-form algebra in
//! [`crate::ladder`]; agreement between the two routes is asserted by the
//! acceptance suite at 1e-10 relative.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::oracle::linalg::solve_complex;
use crate::params::LadderParams;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderBranch {
    /// Probe at `omega_1` (drives `rho_gm`); yields `F_1` and the
    /// generation susceptibility.
    FundamentalProbe,
    /// Probe at `omega_S` (drives the continuum directly); yields `F_S`.
    GeneratedProbe,
}

#[derive(Debug, Clone)]
pub struct LadderOracleSolution {
    pub coherence_gm: C64,
    pub coherence_gn: C64,
    pub coherence_gf: C64,
    /// Aggregated continuum feedback entering the g-n equation.
    pub feedback_n: C64,
    /// Aggregated continuum feedback entering the g-f equation.
    pub feedback_f: C64,
    /// Relative residual of the linear solve.
    pub residual: f64,
}

struct Widths {
    g_nn: f64,
    g_ff: f64,
    g_nf: f64,
    d_nn: f64,
    d_ff: f64,
    d_nf: f64,
    /// probe-continuum cross widths in the single-channel factorization
    /// (reference continuum coupling set to one)
    g_gn: f64,
    g_gf: f64,
    d_gn: f64,
    d_gf: f64,
}

fn widths(p: &LadderParams) -> Widths {
    let g_nn = p.li_nn;
    let g_ff = p.li_ff;
    let g_nf = p.li_nf();
    let g_gn = g_nn.sqrt();
    let g_gf = g_ff.sqrt();
    Widths {
        g_nn,
        g_ff,
        g_nf,
        d_nn: p.fano.q_nn * g_nn,
        d_ff: p.fano.q_ff * g_ff,
        d_nf: p.fano.q_fn * g_nf,
        g_gn,
        g_gf,
        d_gn: p.fano.q_gn * g_gn,
        d_gf: p.fano.q_gf * g_gf,
    }
}

/// Resolvent value `delta + i gamma` of a continuum integral.
fn zeta(delta: f64, gamma: f64) -> C64 {
    C64::new(delta, gamma)
}

pub fn solve_ladder_linear_system(
    p: &LadderParams,
    branch: LadderBranch,
) -> Result<LadderOracleSolution> {
    p.validate()?;
    let w = widths(p);
    let g_mn = (p.g_mn * p.gamma_gm * p.gamma_gn).sqrt();

    let d_gm = C64::new(p.gamma_gm, p.omega_1);
    let d_gn = C64::new(p.gamma_gn, p.omega_1 + p.omega_2);
    let d_gf = C64::new(p.gamma_gf, p.omega_1 + p.omega_2 - p.omega_l);

    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);

    // rows: g-m, g-n, g-f equations, then the two resolvent identities
    let a = vec![
        vec![d_gm, -I * g_mn, zero, zero, zero],
        vec![C64::from(g_mn), I * d_gn, zero, one, zero],
        vec![zero, zero, I * d_gf, zero, one],
        vec![zero, -zeta(w.d_nn, w.g_nn), -zeta(w.d_nf, w.g_nf), one, zero],
        vec![zero, -zeta(w.d_nf, w.g_nf), -zeta(w.d_ff, w.g_ff), zero, one],
    ];

    let b = match branch {
        // unit drive G_gm = 1
        LadderBranch::FundamentalProbe => vec![I, zero, zero, zero, zero],
        // unit continuum drive; the g-n and g-f equations pick up the
        // resolvent of the probe coupling
        LadderBranch::GeneratedProbe => vec![
            zero,
            -zeta(w.d_gn, w.g_gn),
            -zeta(w.d_gf, w.g_gf),
            zero,
            zero,
        ],
    };

    let s = solve_complex(&a, &b)?;
    Ok(LadderOracleSolution {
        coherence_gm: s.x[0],
        coherence_gn: s.x[1],
        coherence_gf: s.x[2],
        feedback_n: s.x[3],
        feedback_f: s.x[4],
        residual: s.residual,
    })
}

/// `F_1` from the directly solved system: `rho_gm` normalized by its value
/// with every coupling and detuning off (`i G_gm / gamma_gm`).
pub fn oracle_f1(p: &LadderParams) -> Result<C64> {
    let s = solve_ladder_linear_system(p, LadderBranch::FundamentalProbe)?;
    Ok(-I * p.gamma_gm * s.coherence_gm)
}

/// `F_S` from the directly solved system: the continuum polarization is the
/// probe resolvent plus the solved coherence contributions.
pub fn oracle_fs(p: &LadderParams) -> Result<C64> {
    let s = solve_ladder_linear_system(p, LadderBranch::GeneratedProbe)?;
    let w = widths(p);
    let back_n = C64::new(1.0, -p.fano.q_gn) * w.g_gn;
    let back_f = C64::new(1.0, -p.fano.q_gf) * w.g_gf;
    Ok(1.0 + s.coherence_gn * back_n + s.coherence_gf * back_f)
}

/// Scaled generation susceptibility assembled from the fundamental-probe
/// solution, normalized so the value with all strong couplings and detunings
/// off equals one. Requires `g_mn > 0` and `li_nn > 0`.
pub fn oracle_chi3_s(p: &LadderParams) -> Result<C64> {
    let s = solve_ladder_linear_system(p, LadderBranch::FundamentalProbe)?;
    let w = widths(p);
    let g_mn = (p.g_mn * p.gamma_gm * p.gamma_gn).sqrt();
    let num = s.coherence_gn * C64::new(1.0, -p.fano.q_gn) * w.g_gn
        + s.coherence_gf * C64::new(1.0, -p.fano.q_gf) * w.g_gf;
    let bare = -g_mn * w.g_gn * C64::new(1.0, -p.fano.q_gn)
        / (p.gamma_gm * p.gamma_gn);
    Ok(num / bare)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::ladder_point;
    use crate::params::FanoSet;

    #[test]
    fn decoupled_probe_is_a_bare_lorentzian() {
        let mut p = LadderParams::bare();
        p.gamma_gm = 3.0;
        p.omega_1 = 1.5;
        let s = solve_ladder_linear_system(&p, LadderBranch::FundamentalProbe).unwrap();
        let expected = I / C64::new(p.gamma_gm, p.omega_1);
        assert!((s.coherence_gm - expected).norm() < 1e-15);
        assert_eq!(s.coherence_gn, C64::new(0.0, 0.0));
        assert!(s.residual < 1e-14);
    }

    #[test]
    fn three_level_case_matches_closed_form_tightly() {
        let p = LadderParams::from_drives(
            10.0,
            5.0,
            7.0,
            0.0,
            0.0,
            0.4,
            -0.2,
            0.0,
            FanoSet::default(),
        );
        let f1 = oracle_f1(&p).unwrap();
        let closed = ladder_point(&p).unwrap().f1.0;
        assert!((f1 - closed).norm() < 1e-12, "{f1} vs {closed}");
    }

    #[test]
    fn fig2a_sweep_agrees_with_closed_form() {
        // q_ff = 0.9, q_nn = 0.5, ratios 100 and 10, omega_2 = 0,
        // q_fn = 1.5, g_mn = 7, g_ff = 2, continuum-off curve.
        let fano = FanoSet {
            q_gn: 0.0,
            q_gf: 0.0,
            q_fn: 1.5,
            q_nn: 0.5,
            q_ff: 0.9,
        };
        let mut p = LadderParams::from_drives(100.0, 10.0, 7.0, 0.0, 2.0, 0.0, 0.0, 0.0, fano);
        for k in 0..=100 {
            p.omega_1 = -500.0 + 10.0 * k as f64;
            let f1 = oracle_f1(&p).unwrap();
            let closed = ladder_point(&p).unwrap().f1.0;
            assert!(
                (f1 - closed).norm() <= 1e-10 * closed.norm().max(1.0),
                "omega_1 = {}: {f1} vs {closed}",
                p.omega_1
            );
        }
    }
}
