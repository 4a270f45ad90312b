//! Figure presets: parameter blocks transcribed from the reference-figure
//! captions, with the landmark values quoted in the accompanying text.
//!
//! Ladder presets are expressed in units of `gamma_gf`; every caption in
//! that family shares `gamma_gm/gamma_gf = 100` and
//! `gamma_gm/gamma_gn = 10`. Doppler presets use the probe Doppler HWHM as
//! the natural scale but are stored in the same `gamma_gf` units. Folded
//! presets use the sodium-dimer relaxation set in units of the m-n
//! coherence width.
//!
//! `fig3c` is omitted: its caption lists a negative half-width
//! (`gamma_gf = -1530`), which has no usable reading. Entries whose caption
//! has internally inconsistent sub-labels carry an `ambiguous` note and
//! transcribe what is printed.

use crate::doppler::DopplerConfig;
use crate::folded::{FoldedFamily, FoldedParams, Pumping};
use crate::params::{FanoSet, LadderParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    /// Probe absorption/refraction at the fundamental.
    LadderSpectrumFundamental,
    /// Probe absorption/refraction at the generated frequency.
    LadderSpectrumGenerated,
    /// Conversion-efficiency map over (omega_l, optical depth).
    LadderConversion,
    /// Doppler-averaged fundamental spectra.
    DopplerFundamental,
    /// Doppler-averaged generated-frequency spectra.
    DopplerGenerated,
    /// Closed-configuration dissociation/population surfaces.
    FoldedDissociation,
    /// Conversion-efficiency map for the folded mixing process.
    FoldedConversion,
}

#[derive(Debug, Clone, Copy)]
pub struct Landmark {
    pub quantity: &'static str,
    pub value: f64,
    /// Absolute tolerance unless `relative` is set.
    pub tol: f64,
    pub relative: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct AxisDef {
    pub path: &'static str,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone)]
pub struct FigurePreset {
    pub id: &'static str,
    pub kind: PresetKind,
    /// Caption values this block was transcribed from.
    pub citation: &'static str,
    pub ambiguous: Option<&'static str>,
    pub ladder: Option<LadderParams>,
    pub folded: Option<FoldedParams>,
    pub c_ratio: Option<f64>,
    pub doppler: Option<DopplerConfig>,
    pub axis1: AxisDef,
    pub axis2: Option<AxisDef>,
    pub landmarks: &'static [Landmark],
}

fn ladder_fig2_base(fano: FanoSet, g_mn: f64, g_nn: f64, g_ff: f64) -> LadderParams {
    LadderParams::from_drives(100.0, 10.0, g_mn, g_nn, g_ff, 0.0, 0.0, 0.0, fano)
}

/// Shared Fano set of the conversion figures.
fn conversion_fano() -> FanoSet {
    FanoSet {
        q_gn: -2.0,
        q_gf: 0.95,
        q_fn: 0.0,
        q_nn: -5.0,
        q_ff: 0.01,
    }
}

const FIG4_LANDMARKS: &[Landmark] = &[
    Landmark { quantity: "eta_q_max", value: 0.29, tol: 0.03, relative: false },
    Landmark { quantity: "z_alpha10_at_max", value: 4000.0, tol: 0.10, relative: true },
];
const FIG5_LANDMARKS: &[Landmark] = &[
    Landmark { quantity: "eta_q_first_max", value: 0.9, tol: 0.05, relative: false },
    Landmark { quantity: "z_alpha10_first_max", value: 125.0, tol: 0.5, relative: true },
];
const FIG6_LANDMARKS: &[Landmark] = &[
    Landmark { quantity: "eta_q_first_max", value: 0.54, tol: 0.05, relative: false },
    Landmark { quantity: "z_alpha10_first_max", value: 5.0, tol: 0.5, relative: true },
];
const FIG13A_LANDMARKS: &[Landmark] =
    &[Landmark { quantity: "eta_q_max", value: 0.996, tol: 0.01, relative: false }];
const FIG13B_LANDMARKS: &[Landmark] =
    &[Landmark { quantity: "eta_q_max", value: 0.919, tol: 0.01, relative: false }];
const FIG13C_LANDMARKS: &[Landmark] =
    &[Landmark { quantity: "eta_q_max", value: 0.569, tol: 0.01, relative: false }];
const FIG16_LANDMARKS: &[Landmark] =
    &[Landmark { quantity: "eta_q_max", value: 0.87, tol: 0.02, relative: false }];

fn folded_closed(
    gamma_nn: f64,
    gamma_ff: f64,
    q_nn: f64,
    q_ff: f64,
    q_nf: f64,
    w_n: f64,
    w_f: f64,
) -> FoldedParams {
    FoldedParams::na2(Pumping::Closed { w_n, w_f })
        .with_uniform_families(FoldedFamily::uniform(gamma_nn, gamma_ff, q_nn, q_ff, q_nf))
}

fn folded_conversion(g_n: f64, g_f: f64, q_nf: f64) -> FoldedParams {
    // caption drive ratios g_n = gamma_nn/coh_mn, g_f = gamma_ff/coh_mf
    folded_closed(g_n, g_f, 0.2, -0.5, q_nf, 0.0, 0.0)
}

pub fn all_presets() -> Vec<FigurePreset> {
    let mut v = Vec::new();

    // -- fundamental-probe spectra ------------------------------------
    let fano2 = FanoSet { q_gn: 0.0, q_gf: 0.0, q_fn: 1.5, q_nn: 0.5, q_ff: 0.9 };
    let mut p = ladder_fig2_base(fano2, 7.0, 0.0, 2.0);
    v.push(FigurePreset {
        id: "fig2a-1",
        kind: PresetKind::LadderSpectrumFundamental,
        citation: "q_ff=0.9 q_nn=0.5 ratios 100/10 omega_2=0 q_fn=1.5 g_mn=7 g_ff=2 li_nn=0",
        ambiguous: None,
        ladder: Some(p),
        folded: None,
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_1", start: -500.0, stop: 500.0, points: 801 },
        axis2: None,
        landmarks: &[],
    });
    p = ladder_fig2_base(fano2, 7.0, 5.0, 2.0);
    p.omega_l = 80.0;
    v.push(FigurePreset {
        id: "fig2a-2",
        kind: PresetKind::LadderSpectrumFundamental,
        citation: "as fig2a-1 with g_nn=5, omega_l/gamma_gm=0.8",
        ambiguous: None,
        ladder: Some(p),
        folded: None,
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_1", start: -500.0, stop: 500.0, points: 801 },
        axis2: None,
        landmarks: &[],
    });
    p = ladder_fig2_base(fano2, 7.0, 5.0, 2.0);
    v.push(FigurePreset {
        id: "fig2b",
        kind: PresetKind::LadderSpectrumFundamental,
        citation: "as fig2a with g_nn=5, omega_l=0",
        ambiguous: None,
        ladder: Some(p),
        folded: None,
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_1", start: -500.0, stop: 500.0, points: 801 },
        axis2: None,
        landmarks: &[],
    });
    let fano2c = FanoSet { q_fn: 15.0, ..fano2 };
    for (id, q_fn, li_nn) in [
        ("fig2c-1", 15.0, 0.0),
        ("fig2c-2", 15.0, 500.0),
        ("fig2d-1", 1.5, 0.0),
        ("fig2d-2", 1.5, 500.0),
    ] {
        let mut p = ladder_fig2_base(FanoSet { q_fn, ..fano2c }, 70.0, 0.0, 10.0);
        p.li_nn = li_nn;
        p.omega_2 = 30.0;
        p.omega_l = -110.0;
        v.push(FigurePreset {
            id,
            kind: PresetKind::LadderSpectrumFundamental,
            citation: "omega_2/gamma_gm=0.3 g_mn=70 g_ff=10 omega_l/gamma_gm=-1.1 g_nn in {0,50}",
            ambiguous: Some("caption scales omega_2 by a width the scheme does not define; gamma_gm is used"),
            ladder: Some(p),
            folded: None,
            c_ratio: None,
            doppler: None,
            axis1: AxisDef { path: "omega_1", start: -1500.0, stop: 1500.0, points: 801 },
            axis2: None,
            landmarks: &[],
        });
    }

    // -- generated-frequency spectra ----------------------------------
    let fano3ab = FanoSet { q_gn: -0.95, q_gf: -0.5, q_fn: 15.0, q_nn: 0.9, q_ff: 0.9 };
    let mut p = ladder_fig2_base(fano3ab, 70.0, 50.0, 10.0);
    p.omega_2 = 30.0;
    p.omega_l = -110.0;
    v.push(FigurePreset {
        id: "fig3a",
        kind: PresetKind::LadderSpectrumGenerated,
        citation: "q_gf=-0.5 q_gn=-0.95 q_fn=15 q_ff=q_nn=0.9 omega_l/gamma_gf=-110 omega_2/gamma_gf=30",
        ambiguous: Some("drive strengths are not listed for this panel; the neighbouring panel's g_mn=70, g_nn=50, g_ff=10 are used"),
        ladder: Some(p),
        folded: None,
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_probe", start: -400.0, stop: 200.0, points: 801 },
        axis2: None,
        landmarks: &[],
    });
    let fano3b = FanoSet { q_gn: -0.5, q_gf: -0.95, q_fn: 15.0, q_nn: 0.9, q_ff: 0.9 };
    for (id, g_mn, g_nn, g_ff, q_fn) in [
        ("fig3b-1", 0.0, 0.0, 10.0, 15.0),
        ("fig3b-2", 70.0, 50.0, 0.0, 15.0),
        ("fig3b-3", 70.0, 50.0, 10.0, 15.0),
        ("fig3b-4", 70.0, 50.0, 10.0, 150.0),
    ] {
        let mut p = ladder_fig2_base(FanoSet { q_fn, ..fano3b }, g_mn, g_nn, g_ff);
        p.omega_2 = 30.0;
        p.omega_l = -110.0;
        v.push(FigurePreset {
            id,
            kind: PresetKind::LadderSpectrumGenerated,
            citation: "q_gf=-0.95 q_gn=-0.5 curves: fields off / g_ff=0 / full / q_fn=150",
            ambiguous: None,
            ladder: Some(p),
            folded: None,
            c_ratio: None,
            doppler: None,
            axis1: AxisDef { path: "omega_probe", start: -400.0, stop: 200.0, points: 801 },
            axis2: None,
            landmarks: &[],
        });
    }

    // -- ladder conversion maps ---------------------------------------
    let mut p4 = LadderParams::from_drives(
        100.0, 10.0, 9000.0, 200.0, 150.0, 5000.0, -5100.0, 0.0, conversion_fano(),
    );
    p4.omega_l = 0.0;
    v.push(FigurePreset {
        id: "fig4",
        kind: PresetKind::LadderConversion,
        citation: "C=1e-5 g_ff=150 g_nn=200 g_mn=9000 omega_1/gamma_gf=5000 omega_2/gamma_gf=-5100 q_gf=0.95 q_gn=-2 q_ff=0.01 q_nn=-5 q_fn=0",
        ambiguous: None,
        ladder: Some(p4),
        folded: None,
        c_ratio: Some(1e-5),
        doppler: None,
        axis1: AxisDef { path: "omega_l", start: -450.0, stop: 250.0, points: 501 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 20000.0, points: 201 }),
        landmarks: FIG4_LANDMARKS,
    });
    let p5 = LadderParams::from_drives(
        100.0, 10.0, 8000.0, 500.0, 150.0, 5000.0, -5100.0, 0.0, conversion_fano(),
    );
    v.push(FigurePreset {
        id: "fig5",
        kind: PresetKind::LadderConversion,
        citation: "C=3e-2 g_nn=500 g_mn=8000, rest as fig4",
        ambiguous: None,
        ladder: Some(p5),
        folded: None,
        c_ratio: Some(3e-2),
        doppler: None,
        axis1: AxisDef { path: "omega_l", start: -450.0, stop: 250.0, points: 501 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 1000.0, points: 201 }),
        landmarks: FIG5_LANDMARKS,
    });
    let p6 = LadderParams::from_drives(
        100.0, 10.0, 7.0, 5.0, 100.0, 0.0, -250.0, 0.0, conversion_fano(),
    );
    v.push(FigurePreset {
        id: "fig6",
        kind: PresetKind::LadderConversion,
        citation: "g_ff=100 g_nn=5 g_mn=7 omega_1=0 omega_2/gamma_gf=-250, rest as fig5",
        ambiguous: None,
        ladder: Some(p6),
        folded: None,
        c_ratio: Some(3e-2),
        doppler: None,
        axis1: AxisDef { path: "omega_l", start: -450.0, stop: 50.0, points: 501 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 40.0, points: 201 }),
        landmarks: FIG6_LANDMARKS,
    });

    // -- Doppler-averaged spectra -------------------------------------
    // probe Doppler HWHM 16.65 gamma_gm; orientations k || k1,
    // k2 || k3 anti k1; ratios k2/k1=0.9, k3/k1=0.5, k/k1=0.6
    let dw1 = 16.65 * 100.0;
    let dop7 = DopplerConfig::fundamental_probe(dw1, -0.9, -0.5, 0.6);
    let fano7 = FanoSet { q_gn: 0.0, q_gf: 0.0, q_fn: 0.5, q_nn: 0.5, q_ff: 0.9 };
    let g_mn7 = dw1 * dw1 / (100.0 * 10.0);
    for (id, li_nn, li_ff, q_fn, omega_l) in [
        ("fig7a", 0.2 * dw1, 0.1 * dw1, 0.5, 0.0),
        ("fig7b", 0.2 * dw1, 0.1 * dw1, 0.5, -0.8 * dw1),
        ("fig7c", 0.8 * dw1, 0.3 * dw1, -1.5, -0.8 * dw1),
        ("fig7d", 0.2 * dw1, 0.8 * dw1, 1.5, -0.8 * dw1),
    ] {
        let mut p = ladder_fig2_base(FanoSet { q_fn, ..fano7 }, g_mn7, 0.0, 0.0);
        p.li_nn = li_nn;
        p.li_ff = li_ff;
        p.omega_2 = 9.0 * dw1;
        p.omega_l = omega_l;
        v.push(FigurePreset {
            id,
            kind: PresetKind::DopplerFundamental,
            citation: "dw_1D=16.65 gamma_gm, k||k1, k2||k3 anti k1, k2/k1=0.9 k3/k1=0.5 k/k1=0.6, |G_mn|^2/dw^2=1, omega_2/dw=9",
            ambiguous: None,
            ladder: Some(p),
            folded: None,
            c_ratio: None,
            doppler: Some(dop7.clone()),
            axis1: AxisDef { path: "omega_1", start: -3.0 * dw1, stop: 3.0 * dw1, points: 301 },
            axis2: None,
            landmarks: &[],
        });
    }
    // probe at omega_S: HWHM 5e3 gamma_gf, all wavevectors parallel,
    // k/kS=0.8 k3/kS=0.3 k2/kS=0.37
    let dws = 5.0e3;
    let dop8 = DopplerConfig::generated_probe(dws, 0.37, 0.3, 0.8);
    let fano8 = FanoSet { q_gn: 0.01, q_gf: 0.95, q_fn: 1.5, q_nn: -5.0, q_ff: 0.01 };
    let g_mn8 = dws * dws / (100.0 * 10.0);
    for (id, q_fn, omega_l, omega_2) in [
        ("fig8a", 1.5, 1.5 * dws, 2.2 * dws),
        ("fig8b", 15.0, 1.5 * dws, 0.0),
        ("fig8c", -1.5, 15.0 * dws, 0.0),
        ("fig8d", -1.5, -0.5 * dws, 0.0),
    ] {
        let mut p = ladder_fig2_base(FanoSet { q_fn, ..fano8 }, g_mn8, 0.4 * dws / 10.0, 0.8 * dws);
        // li_nn = 0.4 dw expressed through g_nn = li_nn/gamma_gn
        p.li_nn = 0.4 * dws;
        p.li_ff = 0.8 * dws;
        p.omega_2 = omega_2;
        p.omega_l = omega_l;
        v.push(FigurePreset {
            id,
            kind: PresetKind::DopplerGenerated,
            citation: "dw_SD=5e3 gamma_gf, all k parallel, k/kS=0.8 k3/kS=0.3 k2/kS=0.37, g_nn*gamma_gn=0.4 dw, g_ff=0.8 dw",
            ambiguous: None,
            ladder: Some(p),
            folded: None,
            c_ratio: None,
            doppler: Some(dop8.clone()),
            axis1: AxisDef { path: "omega_probe", start: -3.0 * dws, stop: 3.0 * dws, points: 301 },
            axis2: None,
            landmarks: &[],
        });
    }

    // -- folded dissociation / population surfaces ---------------------
    let w_n9 = 0.1 * 12.0 / 7.0;
    v.push(FigurePreset {
        id: "fig9a",
        kind: PresetKind::FoldedDissociation,
        citation: "gamma_nn/coh_mn=3 gamma_ff/coh_mf=3 q_nn=0.2 q_ff=-0.5 q_nf=10 w_n/rel_n=0.1 w_f=0 omega_mn=0",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_closed(3.0, 3.0, 0.2, -0.5, 10.0, w_n9, 0.0)),
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -100.0, stop: 100.0, points: 201 },
        axis2: Some(AxisDef { path: "g_mn", start: 0.0, stop: 50.0, points: 101 }),
        landmarks: &[],
    });
    let mut p10 = folded_closed(3.0, 3.0, 0.2, -0.5, 10.0, w_n9, 0.0);
    p10.g_mn = 50.0;
    v.push(FigurePreset {
        id: "fig10a",
        kind: PresetKind::FoldedDissociation,
        citation: "as fig9 with G_mn/coh_mn=50, swept Fano cross ratio",
        ambiguous: None,
        ladder: None,
        folded: Some(p10),
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -100.0, stop: 100.0, points: 201 },
        axis2: Some(AxisDef { path: "q_nf", start: -20.0, stop: 20.0, points: 81 }),
        landmarks: &[],
    });
    let p11 = folded_closed(3.0, 3.0, 0.2, -0.5, 10.0, w_n9, 0.0);
    v.push(FigurePreset {
        id: "fig11a",
        kind: PresetKind::FoldedDissociation,
        citation: "as fig10 with G_mn=0",
        ambiguous: None,
        ladder: None,
        folded: Some(p11),
        c_ratio: None,
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -100.0, stop: 100.0, points: 201 },
        axis2: Some(AxisDef { path: "q_nf", start: -20.0, stop: 20.0, points: 81 }),
        landmarks: &[],
    });

    // -- folded conversion maps ----------------------------------------
    v.push(FigurePreset {
        id: "fig12",
        kind: PresetKind::FoldedConversion,
        citation: "C=0.5 g_n=100 g_f=6000 omega_mn=0 q_ff=-0.5 q_nn=0.2 q_nf=0",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_conversion(100.0, 6000.0, 0.0)),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -2000.0, stop: 4000.0, points: 301 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 20000.0, points: 201 }),
        landmarks: &[],
    });
    v.push(FigurePreset {
        id: "fig13a",
        kind: PresetKind::FoldedConversion,
        citation: "g_n=10 g_f=20 q_nf=100, rest as fig12",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_conversion(10.0, 20.0, 100.0)),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -6000.0, stop: 2000.0, points: 401 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 100000.0, points: 201 }),
        landmarks: FIG13A_LANDMARKS,
    });
    v.push(FigurePreset {
        id: "fig13b",
        kind: PresetKind::FoldedConversion,
        citation: "g_n=10 g_f=20 q_nf=5",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_conversion(10.0, 20.0, 5.0)),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -500.0, stop: 300.0, points: 401 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 200.0, points: 201 }),
        landmarks: FIG13B_LANDMARKS,
    });
    v.push(FigurePreset {
        id: "fig13c",
        kind: PresetKind::FoldedConversion,
        citation: "g_n=10 g_f=20 q_nf=0",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_conversion(10.0, 20.0, 0.0)),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -300.0, stop: 300.0, points: 401 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 100.0, points: 201 }),
        landmarks: FIG13C_LANDMARKS,
    });
    v.push(FigurePreset {
        id: "fig14",
        kind: PresetKind::FoldedConversion,
        citation: "g_n=g_f=6000, rest as fig12",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_conversion(6000.0, 6000.0, 0.0)),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -30000.0, stop: 30000.0, points: 301 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 30000.0, points: 201 }),
        landmarks: &[],
    });
    v.push(FigurePreset {
        id: "fig15",
        kind: PresetKind::FoldedConversion,
        citation: "g_n=10 g_f=6.5, rest as fig12",
        ambiguous: None,
        ladder: None,
        folded: Some(folded_conversion(10.0, 6.5, 0.0)),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -300.0, stop: 300.0, points: 401 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 200.0, points: 201 }),
        landmarks: &[],
    });
    let mut p16 = folded_conversion(10.0, 20.0, 5.0);
    p16.omega_mn = 100.0;
    v.push(FigurePreset {
        id: "fig16",
        kind: PresetKind::FoldedConversion,
        citation: "q_nf=5 omega_mn/coh_mn=100, rest as fig13",
        ambiguous: None,
        ladder: None,
        folded: Some(p16),
        c_ratio: Some(0.5),
        doppler: None,
        axis1: AxisDef { path: "omega_nf", start: -600.0, stop: 400.0, points: 401 },
        axis2: Some(AxisDef { path: "z_alpha10", start: 0.0, stop: 400.0, points: 201 }),
        landmarks: FIG16_LANDMARKS,
    });

    v
}

pub fn preset(id: &str) -> Option<FigurePreset> {
    all_presets().into_iter().find(|p| p.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_params_valid() {
        let all = all_presets();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a.id, b.id);
            }
            if let Some(p) = &a.ladder {
                p.validate().unwrap_or_else(|e| panic!("{}: {e}", a.id));
            }
            if let Some(p) = &a.folded {
                p.validate().unwrap_or_else(|e| panic!("{}: {e}", a.id));
            }
            assert!(a.axis1.points >= 2, "{}", a.id);
        }
    }

    // Golden transcription check: the caption-cited drive values must
    // re-serialize to exactly the stored parameters.
    #[test]
    fn preset_integrity_golden_values() {
        let p4 = preset("fig4").unwrap();
        let l = p4.ladder.unwrap();
        assert_eq!(l.gamma_gm, 100.0);
        assert_eq!(l.gamma_gn, 10.0);
        assert_eq!(l.gamma_gf, 1.0);
        assert_eq!(l.g_mn, 9000.0);
        assert_eq!(l.g_nn(), 200.0);
        assert_eq!(l.g_ff(), 150.0);
        assert_eq!(l.omega_1, 5000.0);
        assert_eq!(l.omega_2, -5100.0);
        assert_eq!(l.fano.q_gn, -2.0);
        assert_eq!(l.fano.q_gf, 0.95);
        assert_eq!(l.fano.q_nn, -5.0);
        assert_eq!(l.fano.q_ff, 0.01);
        assert_eq!(l.fano.q_fn, 0.0);
        assert_eq!(p4.c_ratio, Some(1e-5));

        let p9 = preset("fig9a").unwrap();
        let f = p9.folded.unwrap();
        assert_eq!(f.fam_m.gamma_nn, 3.0);
        assert_eq!(f.fam_f.gamma_ff, 3.0);
        assert_eq!(f.fam_m.q_nf, 10.0);
        assert_eq!(f.omega_mn, 0.0);
        match f.pumping {
            crate::folded::Pumping::Closed { w_n, w_f } => {
                assert!((w_n - 0.1 * f.rel_n).abs() < 1e-15);
                assert_eq!(w_f, 0.0);
            }
            _ => panic!("fig9a must be closed"),
        }

        let p13 = preset("fig13b").unwrap();
        let f = p13.folded.unwrap();
        assert_eq!(f.fam_m.gamma_nn / f.coh_mn, 10.0);
        assert_eq!(f.fam_m.gamma_ff / f.coh_mf, 20.0);
        assert_eq!(f.fam_m.q_nf, 5.0);

        assert!(preset("fig3c").is_none(), "fig3c is excluded");
    }
}
