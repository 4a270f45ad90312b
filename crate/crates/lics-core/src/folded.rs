//! Quasi-stationary solutions of the folded scheme: two excited bound states
//! `n` and `f` coupled to a shared dissociation continuum by two strong
//! fields, with a third field driving the discrete `m-n` transition.
//!
//! The steady state follows from the coherence equations
//!
//! ```text
//! i y_mn r_mn = (r_n - r_m) G - i a_m r_mf
//! i y_mf r_mf = G r_nf - i a_m r_mn
//! i y_nf r_nf = G r_mf - i r_f a_f+ - i r_n a_n
//! ```
//!
//! with `y_mn = (C_mn + g_nn^m) + i(O_mn - d_nn^m)` and so on, the
//! light-induced cross amplitudes `a_j = g_nf^j (1 - i q_nf^j)`,
//! `a_f+ = g_nf^f (1 + i q_nf^f)`, plus three population balance equations.
//! Eliminating the coherences leaves a 3x3 real system in the populations
//! whose coefficients are built from
//!
//! ```text
//! Y = y_mn y_mf - a_m^2          Z = y_nf Y + G^2 y_mn
//! ```
//!
//! Cross widths are taken symmetric within each family
//! (`gamma_nf = gamma_fn`, `q_nf = q_fn`), which is exact for a single
//! dominant continuum channel with real couplings.
//!
//! `w_nm` is an extra decay branch of level `n` into `m`: it adds to the
//! total loss of `n` and feeds the `m` balance.

use num_complex::Complex64 as C64;

use crate::error::{LicsError, Result};
use crate::oracle::linalg::solve_real;
use crate::params::ensure_finite;

/// Light-induced widths and Fano ratios of one superscript family
/// (evaluated at the continuum energy relevant for that coherence).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldedFamily {
    pub gamma_nn: f64,
    pub gamma_ff: f64,
    /// Cross width; defaults to `sqrt(gamma_nn * gamma_ff)`.
    pub gamma_nf: f64,
    pub q_nn: f64,
    pub q_ff: f64,
    pub q_nf: f64,
}

impl FoldedFamily {
    pub fn uniform(gamma_nn: f64, gamma_ff: f64, q_nn: f64, q_ff: f64, q_nf: f64) -> Self {
        FoldedFamily {
            gamma_nn,
            gamma_ff,
            gamma_nf: (gamma_nn * gamma_ff).sqrt(),
            q_nn,
            q_ff,
            q_nf,
        }
    }

    pub fn off() -> Self {
        FoldedFamily {
            gamma_nn: 0.0,
            gamma_ff: 0.0,
            gamma_nf: 0.0,
            q_nn: 0.0,
            q_ff: 0.0,
            q_nf: 0.0,
        }
    }

    fn delta_nn(&self) -> f64 {
        self.q_nn * self.gamma_nn
    }

    fn delta_ff(&self) -> f64 {
        self.q_ff * self.gamma_ff
    }

    fn validate(&self, which: &'static str) -> Result<()> {
        for (name, v) in [
            ("gamma_nn", self.gamma_nn),
            ("gamma_ff", self.gamma_ff),
            ("gamma_nf", self.gamma_nf),
            ("q_nn", self.q_nn),
            ("q_ff", self.q_ff),
            ("q_nf", self.q_nf),
        ] {
            ensure_finite(name, v).map_err(|_| LicsError::Config(format!(
                "non-finite {name} in family {which}"
            )))?;
        }
        if self.gamma_nn < 0.0 || self.gamma_ff < 0.0 {
            return Err(LicsError::OutOfRange {
                name: "gamma_nn/gamma_ff",
                value: self.gamma_nn.min(self.gamma_ff),
                constraint: ">= 0",
            });
        }
        Ok(())
    }
}

/// Incoherent excitation: either constant reservoir rates (open
/// configuration) or transfer probabilities from the ground level (closed
/// configuration, `m` is the ground state).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pumping {
    Open { q_m: f64, q_n: f64, q_f: f64 },
    Closed { w_n: f64, w_f: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldedParams {
    /// Population relaxation rates.
    pub rel_m: f64,
    pub rel_n: f64,
    pub rel_f: f64,
    /// Coherence half-widths.
    pub coh_mn: f64,
    pub coh_mf: f64,
    pub coh_nf: f64,
    /// Branching rate n -> m (adds to the decay of n).
    pub w_nm: f64,
    /// Discrete-transition coupling |G_mn| in rate units.
    pub g_mn: f64,
    /// Detunings; `omega_mf = omega_mn + omega_nf` by construction.
    pub omega_mn: f64,
    pub omega_nf: f64,
    /// Per-family light-induced widths (two-photon, E2-resonant and
    /// E3-resonant evaluation energies).
    pub fam_m: FoldedFamily,
    pub fam_n: FoldedFamily,
    pub fam_f: FoldedFamily,
    pub pumping: Pumping,
}

impl FoldedParams {
    /// Sodium-dimer relaxation set in units of the m-n coherence width:
    /// `rel_m = 2/7`, `rel_n = rel_f = 12/7`, coherence widths are the half
    /// sums of the population rates.
    pub fn na2(pumping: Pumping) -> Self {
        let rel_m = 2.0 / 7.0;
        let rel_n = 12.0 / 7.0;
        let rel_f = 12.0 / 7.0;
        FoldedParams {
            rel_m,
            rel_n,
            rel_f,
            coh_mn: 1.0,
            coh_mf: 1.0,
            coh_nf: 12.0 / 7.0,
            w_nm: 0.0,
            g_mn: 0.0,
            omega_mn: 0.0,
            omega_nf: 0.0,
            fam_m: FoldedFamily::off(),
            fam_n: FoldedFamily::off(),
            fam_f: FoldedFamily::off(),
            pumping,
        }
    }

    /// Set all three families to the same widths and Fano ratios, the usual
    /// reading of captions that quote a single gamma per channel.
    pub fn with_uniform_families(mut self, fam: FoldedFamily) -> Self {
        self.fam_m = fam;
        self.fam_n = fam;
        self.fam_f = fam;
        self
    }

    pub fn omega_mf(&self) -> f64 {
        self.omega_mn + self.omega_nf
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rel_m", self.rel_m),
            ("rel_n", self.rel_n),
            ("rel_f", self.rel_f),
            ("coh_mn", self.coh_mn),
            ("coh_mf", self.coh_mf),
            ("coh_nf", self.coh_nf),
            ("w_nm", self.w_nm),
            ("g_mn", self.g_mn),
            ("omega_mn", self.omega_mn),
            ("omega_nf", self.omega_nf),
        ] {
            ensure_finite(name, v)?;
        }
        for (name, v) in [
            ("rel_m", self.rel_m),
            ("rel_n", self.rel_n),
            ("rel_f", self.rel_f),
            ("w_nm", self.w_nm),
            ("g_mn", self.g_mn),
        ] {
            if v < 0.0 {
                return Err(LicsError::OutOfRange {
                    name,
                    value: v,
                    constraint: ">= 0",
                });
            }
        }
        for (name, v) in [
            ("coh_mn", self.coh_mn),
            ("coh_mf", self.coh_mf),
            ("coh_nf", self.coh_nf),
        ] {
            if v <= 0.0 {
                return Err(LicsError::OutOfRange {
                    name,
                    value: v,
                    constraint: "> 0",
                });
            }
        }
        self.fam_m.validate("m")?;
        self.fam_n.validate("n")?;
        self.fam_f.validate("f")?;
        match self.pumping {
            Pumping::Open { q_m, q_n, q_f } => {
                for (name, v) in [("q_m", q_m), ("q_n", q_n), ("q_f", q_f)] {
                    ensure_finite(name, v)?;
                    if v < 0.0 {
                        return Err(LicsError::OutOfRange {
                            name,
                            value: v,
                            constraint: ">= 0",
                        });
                    }
                }
            }
            Pumping::Closed { w_n, w_f } => {
                for (name, v) in [("w_n", w_n), ("w_f", w_f)] {
                    ensure_finite(name, v)?;
                    if v < 0.0 {
                        return Err(LicsError::OutOfRange {
                            name,
                            value: v,
                            constraint: ">= 0",
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Quasi-stationary state: populations, coherence amplitudes and the
/// dissociation rate.
#[derive(Debug, Clone, Copy)]
pub struct FoldedState {
    pub r_m: f64,
    pub r_n: f64,
    pub r_f: f64,
    pub r_mn: C64,
    pub r_mf: C64,
    pub r_nf: C64,
    /// Dissociation rate (same rate units as the inputs).
    pub w_dot: f64,
}

impl FoldedState {
    /// Fraction dissociated over an observation time; the closed forms
    /// silently assume this stays small.
    pub fn dissociated_fraction(&self, t_obs: f64) -> f64 {
        self.w_dot * t_obs
    }

    /// Quasi-stationarity guard: flags observation times for which the
    /// dissociated fraction is no longer negligible.
    pub fn quasi_stationary_ok(&self, t_obs: f64) -> bool {
        self.dissociated_fraction(t_obs) < 0.1
    }
}

const I: C64 = C64::new(0.0, 1.0);

/// Complex building blocks shared by all folded-scheme evaluations.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FoldedBlocks {
    pub y_mn: C64,
    pub y_mf: C64,
    pub y_nf: C64,
    pub a_m: C64,
    pub a_n: C64,
    pub a_fp: C64,
    pub y_big: C64,
    pub z_big: C64,
}

pub(crate) fn blocks(p: &FoldedParams) -> FoldedBlocks {
    let y_mn = C64::new(
        p.coh_mn + p.fam_m.gamma_nn,
        p.omega_mn - p.fam_m.delta_nn(),
    );
    let y_mf = C64::new(
        p.coh_mf + p.fam_m.gamma_ff,
        p.omega_mf() - p.fam_m.delta_ff(),
    );
    let y_nf = C64::new(
        p.coh_nf + p.fam_f.gamma_nn + p.fam_n.gamma_ff,
        p.omega_nf + p.fam_f.delta_nn() - p.fam_n.delta_ff(),
    );
    let a_m = p.fam_m.gamma_nf * C64::new(1.0, -p.fam_m.q_nf);
    let a_n = p.fam_n.gamma_nf * C64::new(1.0, -p.fam_n.q_nf);
    let a_fp = p.fam_f.gamma_nf * C64::new(1.0, p.fam_f.q_nf);
    let y_big = y_mn * y_mf - a_m * a_m;
    let g2 = p.g_mn * p.g_mn;
    let z_big = y_nf * y_big + g2 * y_mn;
    FoldedBlocks {
        y_mn,
        y_mf,
        y_nf,
        a_m,
        a_n,
        a_fp,
        y_big,
        z_big,
    }
}

/// Population balance matrix; rows in order (m, n, f). The pump vector is
/// not included.
fn balance_matrix(p: &FoldedParams, bl: &FoldedBlocks) -> [[f64; 3]; 3] {
    let g2 = p.g_mn * p.g_mn;
    let gs = g2 * (bl.y_mf / bl.y_big).re;
    let dd = g2 * g2 * (bl.a_m * bl.a_m / (bl.y_big * bl.z_big)).re;
    let m1 = g2 * (bl.a_m * bl.a_n / bl.z_big).re;
    let m34 = g2 * (bl.a_m * bl.a_fp / bl.z_big).re;
    let b1 = (bl.a_n * bl.a_n * bl.y_big / bl.z_big).re;
    let bx = (bl.a_n * bl.a_fp * bl.y_big / bl.z_big).re;
    let b2 = (bl.a_fp * bl.a_fp * bl.y_big / bl.z_big).re;
    let split = gs - dd;

    [
        [
            p.rel_m + 2.0 * split,
            -(p.w_nm + 2.0 * split + 2.0 * m1),
            -2.0 * m34,
        ],
        [
            -2.0 * split - 2.0 * m1,
            p.rel_n + p.w_nm + 2.0 * p.fam_n.gamma_nn + 2.0 * split + 4.0 * m1 - 2.0 * b1,
            2.0 * m34 - 2.0 * bx,
        ],
        [
            -2.0 * m34,
            2.0 * m34 - 2.0 * bx,
            p.rel_f + 2.0 * p.fam_f.gamma_ff - 2.0 * b2,
        ],
    ]
}

fn coherences_from_populations(
    p: &FoldedParams,
    bl: &FoldedBlocks,
    r_m: f64,
    r_n: f64,
    r_f: f64,
) -> (C64, C64, C64) {
    let g = p.g_mn;
    let pop = C64::from(r_n - r_m);
    let r_nf = (g * g * bl.a_m * pop - (r_f * bl.a_fp + r_n * bl.a_n) * bl.y_big) / bl.z_big;
    let r_mn = (-I * g * pop * bl.y_mf + I * g * bl.a_m * r_nf) / bl.y_big;
    let r_mf = I * (bl.a_m * g * pop - g * bl.y_mn * r_nf) / bl.y_big;
    (r_mn, r_mf, r_nf)
}

fn dissociation_rate(p: &FoldedParams, bl: &FoldedBlocks, r_n: f64, r_f: f64, r_nf: C64) -> f64 {
    2.0 * (p.fam_n.gamma_nn * r_n
        + p.fam_f.gamma_ff * r_f
        + (r_nf * (bl.a_n + bl.a_fp)).re)
}

/// Steady state of the open configuration (all three levels pumped from a
/// reservoir at constant rates).
pub fn open_populations(p: &FoldedParams) -> Result<FoldedState> {
    p.validate()?;
    let (q_m, q_n, q_f) = match p.pumping {
        Pumping::Open { q_m, q_n, q_f } => (q_m, q_n, q_f),
        Pumping::Closed { .. } => {
            return Err(LicsError::Config(
                "open_populations requires open pumping".into(),
            ))
        }
    };
    if p.rel_m <= 0.0 {
        return Err(LicsError::OutOfRange {
            name: "rel_m",
            value: p.rel_m,
            constraint: "> 0 in the open configuration",
        });
    }
    let bl = blocks(p);
    let a = balance_matrix(p, &bl);
    let det = det3(&a);
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if det.abs() < 1e-14 * scale.powi(3).max(f64::MIN_POSITIVE) {
        return Err(LicsError::DegenerateSteadyState {
            name: "population balance determinant",
            magnitude: det.abs(),
        });
    }
    let rows: Vec<Vec<f64>> = a.iter().map(|r| r.to_vec()).collect();
    let sol = solve_real(&rows, &[q_m, q_n, q_f])?;
    let (r_m, r_n, r_f) = (sol[0], sol[1], sol[2]);
    let (r_mn, r_mf, r_nf) = coherences_from_populations(p, &bl, r_m, r_n, r_f);
    let w_dot = dissociation_rate(p, &bl, r_n, r_f, r_nf);
    Ok(FoldedState {
        r_m,
        r_n,
        r_f,
        r_mn,
        r_mf,
        r_nf,
        w_dot,
    })
}

/// Open-configuration steady state with the discrete field off; the
/// populations decouple into a 2x2 interference problem.
pub fn open_populations_no_discrete_field(p: &FoldedParams) -> Result<FoldedState> {
    p.validate()?;
    if p.g_mn != 0.0 {
        return Err(LicsError::OutOfRange {
            name: "g_mn",
            value: p.g_mn,
            constraint: "= 0 in the no-discrete-field form",
        });
    }
    let (q_m, q_n, q_f) = match p.pumping {
        Pumping::Open { q_m, q_n, q_f } => (q_m, q_n, q_f),
        Pumping::Closed { .. } => {
            return Err(LicsError::Config(
                "open_populations_no_discrete_field requires open pumping".into(),
            ))
        }
    };
    let bl = blocks(p);
    let y_n = p.rel_n + p.w_nm + 2.0 * p.fam_n.gamma_nn
        - 2.0 * (bl.a_n * bl.a_n / bl.y_nf).re;
    let y_f = p.rel_f + 2.0 * p.fam_f.gamma_ff - 2.0 * (bl.a_fp * bl.a_fp / bl.y_nf).re;
    let cross = 2.0 * (bl.a_n * bl.a_fp / bl.y_nf).re;
    let delta = y_n * y_f - cross * cross;
    if delta.abs() < 1e-300 {
        return Err(LicsError::DegenerateSteadyState {
            name: "two-level balance determinant",
            magnitude: delta.abs(),
        });
    }
    let r_n = (q_n * y_f + q_f * cross) / delta;
    let r_f = (q_f * y_n + q_n * cross) / delta;
    let r_m = (q_m + p.w_nm * r_n) / p.rel_m;
    let r_nf = -(r_f * bl.a_fp + r_n * bl.a_n) / bl.y_nf;
    let w_dot = dissociation_rate(p, &bl, r_n, r_f, r_nf);
    Ok(FoldedState {
        r_m,
        r_n,
        r_f,
        r_mn: C64::new(0.0, 0.0),
        r_mf: C64::new(0.0, 0.0),
        r_nf,
        w_dot,
    })
}

/// Closed configuration: `m` is the ground state, `r_m + r_n + r_f = 1`
/// exactly, excitation proportional to the ground population.
pub fn closed_populations(p: &FoldedParams) -> Result<FoldedState> {
    p.validate()?;
    let (w_n, w_f) = match p.pumping {
        Pumping::Closed { w_n, w_f } => (w_n, w_f),
        Pumping::Open { .. } => {
            return Err(LicsError::Config(
                "closed_populations requires closed pumping".into(),
            ))
        }
    };
    let bl = blocks(p);
    let a = balance_matrix(p, &bl);
    // substitute r_m = 1 - r_n - r_f into the n and f balance rows with
    // pumps w_i * r_m
    let a11 = a[1][1] - a[1][0] + w_n;
    let a12 = a[1][2] - a[1][0] + w_n;
    let b1 = w_n - a[1][0];
    let a21 = a[2][1] - a[2][0] + w_f;
    let a22 = a[2][2] - a[2][0] + w_f;
    let b2 = w_f - a[2][0];
    let delta = a11 * a22 - a12 * a21;
    let scale = a11.abs().max(a12.abs()).max(a21.abs()).max(a22.abs());
    if delta.abs() < 1e-14 * (scale * scale).max(f64::MIN_POSITIVE) {
        return Err(LicsError::DegenerateSteadyState {
            name: "closed-configuration determinant",
            magnitude: delta.abs(),
        });
    }
    let r_n = (b1 * a22 - a12 * b2) / delta;
    let r_f = (a11 * b2 - b1 * a21) / delta;
    let r_m = 1.0 - r_n - r_f;
    let (r_mn, r_mf, r_nf) = coherences_from_populations(p, &bl, r_m, r_n, r_f);
    let w_dot = dissociation_rate(p, &bl, r_n, r_f, r_nf);
    Ok(FoldedState {
        r_m,
        r_n,
        r_f,
        r_mn,
        r_mf,
        r_nf,
        w_dot,
    })
}

/// Dissociation from an incoherently populated level `n` (discrete field and
/// E3 both off, closed scheme): `Wdot/2 = g w_n / (rel_n + w_nm + 2g + w_n)`.
pub fn dissociation_limit_incoherent(p: &FoldedParams) -> Result<f64> {
    let w_n = match p.pumping {
        Pumping::Closed { w_n, .. } => w_n,
        _ => {
            return Err(LicsError::Config(
                "dissociation limits use the closed configuration".into(),
            ))
        }
    };
    let g = p.fam_n.gamma_nn;
    Ok(g * w_n / (p.rel_n + p.w_nm + 2.0 * g + w_n))
}

/// Two-photon dissociation from the ground level with E3 off.
pub fn dissociation_limit_two_photon(p: &FoldedParams) -> Result<f64> {
    let w_n = match p.pumping {
        Pumping::Closed { w_n, .. } => w_n,
        _ => {
            return Err(LicsError::Config(
                "dissociation limits use the closed configuration".into(),
            ))
        }
    };
    let coh = p.coh_mn + p.fam_m.gamma_nn;
    let y2 = coh * coh + (p.omega_mn - p.fam_m.delta_nn()).powi(2);
    let pump2 = 2.0 * p.g_mn * p.g_mn * coh / y2;
    let gamma_tilde_n = p.rel_n + p.w_nm + 2.0 * p.fam_n.gamma_nn;
    Ok(p.fam_n.gamma_nn * (w_n + pump2) / (gamma_tilde_n + w_n + 2.0 * pump2))
}

/// Which of the two weak waves is treated as the driving probe in the
/// weak-field four-wave-mixing solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakProbe {
    /// `E_1` weak fundamental on the m-n transition.
    Fundamental,
    /// `E_S` weak generated wave on the m-f transition.
    Generated,
}

#[derive(Debug, Clone, Copy)]
pub struct WeakCoherences {
    /// Coherence on the transition the probe drives directly.
    pub direct: C64,
    /// Cross coherence generated through the continuum.
    pub cross: C64,
}

/// Weak-field coherences for the folded mixing process
/// `omega_S = omega_1 - omega_2 + omega_3`, ground population ~ 1.
/// Normalized to unit probe coupling.
pub fn folded_weak_coherences(p: &FoldedParams, probe: WeakProbe) -> Result<WeakCoherences> {
    p.validate()?;
    let bl = blocks_weak(p);
    match probe {
        WeakProbe::Fundamental => Ok(WeakCoherences {
            direct: I * bl.y_mf / bl.y_big,
            cross: -I * bl.a_m / bl.y_big,
        }),
        WeakProbe::Generated => Ok(WeakCoherences {
            direct: I * bl.y_mn / bl.y_big,
            cross: I * bl.a_m / bl.y_big,
        }),
    }
}

/// Blocks for the weak-probe problem: the discrete coupling is the probe
/// itself, so it does not enter Y.
fn blocks_weak(p: &FoldedParams) -> FoldedBlocks {
    let mut q = *p;
    q.g_mn = 0.0;
    blocks(&q)
}

/// Scale of the resonant unperturbed folded conversion kernel, fixed by the
/// fig13/fig16 landmark calibration of the conversion maxima.
pub const FOLDED_ETA0_SCALE: f64 = 2.4674011002723395; // (pi/2)^2

/// Scaled spectra feeding the coupled-wave solution for the folded mixing
/// process.
#[derive(Debug, Clone, Copy)]
pub struct FoldedFwmPoint {
    pub alpha1_bar: f64,
    pub alpha_s_bar: f64,
    pub chi_bar: C64,
    pub eta_q0_bar: f64,
}

pub fn folded_fwm_point(p: &FoldedParams) -> Result<FoldedFwmPoint> {
    p.validate()?;
    let bl = blocks_weak(p);
    let alpha1_bar = (p.coh_mn * bl.y_mf / bl.y_big).re;
    let alpha_s_bar = (p.coh_mf * bl.y_mn / bl.y_big).re;
    let s = if p.fam_m.gamma_nn > 0.0 && p.fam_m.gamma_ff > 0.0 {
        p.fam_m.gamma_nf / (p.fam_m.gamma_nn * p.fam_m.gamma_ff).sqrt()
    } else {
        1.0
    };
    let chi_bar = s * p.coh_mn * p.coh_mf / bl.y_big;
    let g_n = p.fam_m.gamma_nn / p.coh_mn;
    let g_f = p.fam_m.gamma_ff / p.coh_mf;
    let q_nf = p.fam_m.q_nf;
    let eta_q0_bar =
        FOLDED_ETA0_SCALE * (1.0 + q_nf * q_nf) * g_n * g_f * chi_bar.norm_sqr();
    Ok(FoldedFwmPoint {
        alpha1_bar,
        alpha_s_bar,
        chi_bar,
        eta_q0_bar,
    })
}

/// Propagation inputs for the folded mixing process at one detuning point.
pub fn folded_fwm_setup(
    p: &FoldedParams,
    c_ratio: f64,
) -> Result<crate::propagation::PropagationSetup> {
    let pt = folded_fwm_point(p)?;
    Ok(crate::propagation::PropagationSetup {
        alpha1_bar: pt.alpha1_bar,
        alpha_s_bar: pt.alpha_s_bar,
        eta_q0_bar: pt.eta_q0_bar,
        c_ratio,
    })
}

fn det3(a: &[[f64; 3]; 3]) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields_off_open(q_m: f64, q_n: f64, q_f: f64) -> FoldedParams {
        FoldedParams::na2(Pumping::Open { q_m, q_n, q_f })
    }

    #[test]
    fn open_fields_off_is_pump_over_width() {
        let p = fields_off_open(0.3, 0.5, 0.2);
        let s = open_populations(&p).unwrap();
        assert!((s.r_n - 0.5 / p.rel_n).abs() < 1e-14);
        assert!((s.r_f - 0.2 / p.rel_f).abs() < 1e-14);
        assert!((s.r_m - 0.3 / p.rel_m).abs() < 1e-14);
        assert_eq!(s.w_dot, 0.0);
    }

    #[test]
    fn open_e3_off_matches_two_photon_structure() {
        // E3 off: gamma_ff = gamma_nf = 0 everywhere; f decouples and
        // Wdot = 2 gamma_nn^n r_n.
        let mut p = fields_off_open(0.1, 0.4, 0.2);
        let fam = FoldedFamily {
            gamma_nn: 0.8,
            gamma_ff: 0.0,
            gamma_nf: 0.0,
            q_nn: 0.3,
            q_ff: 0.0,
            q_nf: 0.0,
        };
        p = p.with_uniform_families(fam);
        p.g_mn = 2.0;
        p.omega_mn = 0.5;
        let s = open_populations(&p).unwrap();
        assert!((s.r_f - 0.2 / p.rel_f).abs() < 1e-14);
        assert!((s.w_dot - 2.0 * fam.gamma_nn * s.r_n).abs() < 1e-13);
        assert_eq!(s.r_nf.norm(), 0.0);
    }

    #[test]
    fn no_cross_coupling_kills_nf_coherence() {
        let mut p = fields_off_open(0.1, 0.4, 0.2);
        let mut fam = FoldedFamily::uniform(0.8, 0.6, 0.3, -0.2, 0.0);
        fam.gamma_nf = 0.0;
        p = p.with_uniform_families(fam);
        let s = open_populations_no_discrete_field(&p).unwrap();
        assert_eq!(s.r_nf.norm(), 0.0);
        // independent one-channel rates only
        assert!(
            (s.w_dot - 2.0 * (fam.gamma_nn * s.r_n + fam.gamma_ff * s.r_f)).abs() < 1e-13
        );
    }

    #[test]
    fn g_limit_matches_no_discrete_field_form() {
        let fam = FoldedFamily::uniform(0.8, 0.6, 0.3, -0.2, 1.7);
        let mut p = fields_off_open(0.1, 0.4, 0.2).with_uniform_families(fam);
        p.omega_nf = 0.9;
        let exact = open_populations_no_discrete_field(&p).unwrap();
        p.g_mn = 1e-9;
        let lim = open_populations(&p).unwrap();
        for (a, b) in [
            (exact.r_m, lim.r_m),
            (exact.r_n, lim.r_n),
            (exact.r_f, lim.r_f),
            (exact.w_dot, lim.w_dot),
        ] {
            assert!((a - b).abs() <= 1e-6 * a.abs().max(1e-12), "{a} vs {b}");
        }
    }

    #[test]
    fn closed_conserves_population_exactly() {
        let fam = FoldedFamily::uniform(3.0, 3.0, 0.2, -0.5, 10.0);
        let mut p = FoldedParams::na2(Pumping::Closed {
            w_n: 0.1 * 12.0 / 7.0,
            w_f: 0.0,
        })
        .with_uniform_families(fam);
        p.g_mn = 20.0;
        p.omega_nf = -12.0;
        let s = closed_populations(&p).unwrap();
        assert!((s.r_m + s.r_n + s.r_f - 1.0).abs() < 1e-15);
        assert!(s.r_n >= 0.0 && s.r_f >= 0.0);
    }

    #[test]
    fn closed_all_off_stays_in_ground_state() {
        let p = FoldedParams::na2(Pumping::Closed { w_n: 0.0, w_f: 0.0 });
        let s = closed_populations(&p).unwrap();
        assert_eq!(s.r_m, 1.0);
        assert_eq!(s.r_n, 0.0);
        assert_eq!(s.r_f, 0.0);
        assert_eq!(s.w_dot, 0.0);
    }

    #[test]
    fn incoherent_limit_saturates() {
        let fam = FoldedFamily::uniform(0.7, 0.0, 0.0, 0.0, 0.0);
        let mk = |w_n: f64| {
            FoldedParams::na2(Pumping::Closed { w_n, w_f: 0.0 }).with_uniform_families(FoldedFamily {
                gamma_ff: 0.0,
                gamma_nf: 0.0,
                ..fam
            })
        };
        assert_eq!(dissociation_limit_incoherent(&mk(0.0)).unwrap(), 0.0);
        let w_big = dissociation_limit_incoherent(&mk(1e12)).unwrap();
        assert!((w_big - 0.7).abs() < 1e-9);
    }

    #[test]
    fn limits_agree_with_closed_populations() {
        // E3 off, on resonance: the closed 2x2 must collapse onto the
        // printed rational forms.
        let fam = FoldedFamily {
            gamma_nn: 0.9,
            gamma_ff: 0.0,
            gamma_nf: 0.0,
            q_nn: 0.0,
            q_ff: 0.0,
            q_nf: 0.0,
        };
        for (g, w_n) in [(0.0, 0.3), (1.4, 0.3), (5.0, 0.05)] {
            let mut p = FoldedParams::na2(Pumping::Closed { w_n, w_f: 0.0 })
                .with_uniform_families(fam);
            p.g_mn = g;
            p.omega_mn = 0.0;
            let s = closed_populations(&p).unwrap();
            let reference = if g == 0.0 {
                dissociation_limit_incoherent(&p).unwrap()
            } else {
                dissociation_limit_two_photon(&p).unwrap()
            };
            assert!(
                (s.w_dot / 2.0 - reference).abs() <= 1e-10 * reference.max(1e-12),
                "g = {g}: {} vs {reference}",
                s.w_dot / 2.0
            );
        }
    }

    #[test]
    fn weak_coherences_reduce_to_bare_driven_forms() {
        let mut p = FoldedParams::na2(Pumping::Closed { w_n: 0.0, w_f: 0.0 });
        // no continuum cross coupling: no cross pathway
        p = p.with_uniform_families(FoldedFamily {
            gamma_nn: 0.5,
            gamma_ff: 0.7,
            gamma_nf: 0.0,
            q_nn: 0.0,
            q_ff: 0.0,
            q_nf: 0.0,
        });
        let w = folded_weak_coherences(&p, WeakProbe::Fundamental).unwrap();
        assert_eq!(w.cross.norm(), 0.0);
        // bare driven coherence i/(coh + gamma) at zero detuning
        let expected = I / C64::new(p.coh_mn + 0.5, 0.0);
        assert!((w.direct - expected).norm() < 1e-15);
    }
}
