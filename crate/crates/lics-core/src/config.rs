//! Config-file ingestion: flat TOML sections of `key = value` mirroring the
//! preset fields. Precedence chain: preset values are loaded first, the
//! config overrides them, CLI flags override the config.

use std::path::Path;

use serde::Deserialize;

use crate::doppler::DopplerConfig;
use crate::error::{LicsError, Result};
use crate::folded::{FoldedFamily, FoldedParams, Pumping};
use crate::params::{FanoSet, LadderParams, DEFAULT_POLE_TOL};
use crate::presets::preset;
use crate::sweep::{AxisSpec, DopplerProbe, Scheme, SweepSpec};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub sweep: SweepSection,
    pub axis1: Option<AxisSection>,
    pub axis2: Option<AxisSection>,
    pub ladder: Option<LadderSection>,
    pub folded: Option<FoldedSection>,
    pub doppler: Option<DopplerSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub scheme: Option<String>,
    pub preset: Option<String>,
    pub outputs: Option<Vec<String>>,
    pub c_ratio: Option<f64>,
    pub max_points: Option<usize>,
    pub probe: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSection {
    pub path: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub log: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderSection {
    pub gamma_gm: Option<f64>,
    pub gamma_gn: Option<f64>,
    pub gamma_gf: Option<f64>,
    pub li_nn: Option<f64>,
    pub li_ff: Option<f64>,
    pub g_nn: Option<f64>,
    pub g_ff: Option<f64>,
    pub g_mn: Option<f64>,
    pub omega_1: Option<f64>,
    pub omega_2: Option<f64>,
    pub omega_l: Option<f64>,
    pub q_gn: Option<f64>,
    pub q_gf: Option<f64>,
    pub q_fn: Option<f64>,
    pub q_nn: Option<f64>,
    pub q_ff: Option<f64>,
    pub s_nf: Option<f64>,
    pub pole_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldedSection {
    pub rel_m: Option<f64>,
    pub rel_n: Option<f64>,
    pub rel_f: Option<f64>,
    pub coh_mn: Option<f64>,
    pub coh_mf: Option<f64>,
    pub coh_nf: Option<f64>,
    pub w_nm: Option<f64>,
    pub g_mn: Option<f64>,
    pub omega_mn: Option<f64>,
    pub omega_nf: Option<f64>,
    pub gamma_nn: Option<f64>,
    pub gamma_ff: Option<f64>,
    pub q_nn: Option<f64>,
    pub q_ff: Option<f64>,
    pub q_nf: Option<f64>,
    /// "open" or "closed"
    pub pumping: Option<String>,
    pub q_m: Option<f64>,
    pub q_n: Option<f64>,
    pub q_f: Option<f64>,
    pub w_n: Option<f64>,
    pub w_f: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DopplerSection {
    pub hwhm: Option<f64>,
    pub shifts: Option<Vec<f64>>,
    pub order: Option<usize>,
    pub convergence_tol: Option<f64>,
}

pub fn load(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| LicsError::Config(e.to_string()))
}

macro_rules! apply_opt {
    ($dst:expr, $src:expr) => {
        if let Some(v) = $src {
            $dst = v;
        }
    };
}

fn apply_ladder(p: &mut LadderParams, s: &LadderSection) {
    apply_opt!(p.gamma_gm, s.gamma_gm);
    apply_opt!(p.gamma_gn, s.gamma_gn);
    apply_opt!(p.gamma_gf, s.gamma_gf);
    apply_opt!(p.li_nn, s.li_nn);
    apply_opt!(p.li_ff, s.li_ff);
    if let Some(g) = s.g_nn {
        p.li_nn = g * p.gamma_gn;
    }
    if let Some(g) = s.g_ff {
        p.li_ff = g * p.gamma_gf;
    }
    apply_opt!(p.g_mn, s.g_mn);
    apply_opt!(p.omega_1, s.omega_1);
    apply_opt!(p.omega_2, s.omega_2);
    apply_opt!(p.omega_l, s.omega_l);
    apply_opt!(p.fano.q_gn, s.q_gn);
    apply_opt!(p.fano.q_gf, s.q_gf);
    apply_opt!(p.fano.q_fn, s.q_fn);
    apply_opt!(p.fano.q_nn, s.q_nn);
    apply_opt!(p.fano.q_ff, s.q_ff);
    apply_opt!(p.s_nf, s.s_nf);
    apply_opt!(p.pole_tol, s.pole_tol);
}

fn apply_folded(p: &mut FoldedParams, s: &FoldedSection) -> Result<()> {
    apply_opt!(p.rel_m, s.rel_m);
    apply_opt!(p.rel_n, s.rel_n);
    apply_opt!(p.rel_f, s.rel_f);
    apply_opt!(p.coh_mn, s.coh_mn);
    apply_opt!(p.coh_mf, s.coh_mf);
    apply_opt!(p.coh_nf, s.coh_nf);
    apply_opt!(p.w_nm, s.w_nm);
    apply_opt!(p.g_mn, s.g_mn);
    apply_opt!(p.omega_mn, s.omega_mn);
    apply_opt!(p.omega_nf, s.omega_nf);
    let fam0 = p.fam_m;
    let fam = FoldedFamily::uniform(
        s.gamma_nn.unwrap_or(fam0.gamma_nn),
        s.gamma_ff.unwrap_or(fam0.gamma_ff),
        s.q_nn.unwrap_or(fam0.q_nn),
        s.q_ff.unwrap_or(fam0.q_ff),
        s.q_nf.unwrap_or(fam0.q_nf),
    );
    *p = p.with_uniform_families(fam);
    match s.pumping.as_deref() {
        Some("open") => {
            p.pumping = Pumping::Open {
                q_m: s.q_m.unwrap_or(0.0),
                q_n: s.q_n.unwrap_or(0.0),
                q_f: s.q_f.unwrap_or(0.0),
            }
        }
        Some("closed") => {
            p.pumping = Pumping::Closed {
                w_n: s.w_n.unwrap_or(0.0),
                w_f: s.w_f.unwrap_or(0.0),
            }
        }
        Some(other) => {
            return Err(LicsError::Config(format!(
                "pumping must be `open` or `closed`, got `{other}`"
            )))
        }
        None => match &mut p.pumping {
            Pumping::Open { q_m, q_n, q_f } => {
                apply_opt!(*q_m, s.q_m);
                apply_opt!(*q_n, s.q_n);
                apply_opt!(*q_f, s.q_f);
            }
            Pumping::Closed { w_n, w_f } => {
                apply_opt!(*w_n, s.w_n);
                apply_opt!(*w_f, s.w_f);
            }
        },
    }
    Ok(())
}

fn axis_from_section(s: &AxisSection) -> AxisSpec {
    AxisSpec {
        path: s.path.clone(),
        start: s.start,
        stop: s.stop,
        points: s.points,
        log: s.log,
    }
}

/// Build a sweep spec from the precedence chain preset -> config.
/// `default_scheme` is used when neither a preset nor the config names one.
pub fn build_spec(cfg: &ConfigFile, default_scheme: Option<Scheme>) -> Result<SweepSpec> {
    let preset_def = match &cfg.sweep.preset {
        Some(id) => {
            Some(preset(id).ok_or_else(|| LicsError::UnknownPreset(id.clone()))?)
        }
        None => None,
    };

    let mut spec = match &preset_def {
        Some(p) => crate::sweep::spec_from_preset(p),
        None => {
            let scheme = match &cfg.sweep.scheme {
                Some(s) => Scheme::parse(s)?,
                None => default_scheme.ok_or_else(|| {
                    LicsError::Config("no scheme given (set [sweep] scheme or a preset)".into())
                })?,
            };
            SweepSpec {
                scheme,
                axis1: AxisSpec {
                    path: String::new(),
                    start: 0.0,
                    stop: 1.0,
                    points: 2,
                    log: false,
                },
                axis2: None,
                ladder: None,
                folded: None,
                c_ratio: 1.0,
                doppler: None,
                doppler_probe: DopplerProbe::Fundamental,
                outputs: Vec::new(),
                preset_id: None,
                max_points: 1_000_000,
            }
        }
    };

    if let Some(s) = &cfg.sweep.scheme {
        spec.scheme = Scheme::parse(s)?;
    }
    if let Some(a) = &cfg.axis1 {
        spec.axis1 = axis_from_section(a);
    }
    if let Some(a) = &cfg.axis2 {
        spec.axis2 = Some(axis_from_section(a));
    }
    if spec.axis1.path.is_empty() {
        return Err(LicsError::Config("axis1 is required".into()));
    }
    if let Some(ls) = &cfg.ladder {
        let mut p = spec.ladder.unwrap_or_else(|| {
            let mut p = LadderParams::bare();
            p.pole_tol = DEFAULT_POLE_TOL;
            p.fano = FanoSet::default();
            p
        });
        apply_ladder(&mut p, ls);
        spec.ladder = Some(p);
    }
    if let Some(fs) = &cfg.folded {
        let mut p = spec
            .folded
            .unwrap_or_else(|| FoldedParams::na2(Pumping::Closed { w_n: 0.0, w_f: 0.0 }));
        apply_folded(&mut p, fs)?;
        spec.folded = Some(p);
    }
    if let Some(ds) = &cfg.doppler {
        let mut d = spec
            .doppler
            .clone()
            .unwrap_or_else(|| DopplerConfig::new(0.0, vec![1.0, 0.0, 0.0]));
        apply_opt!(d.hwhm, ds.hwhm);
        if let Some(sh) = &ds.shifts {
            d.shifts = sh.clone();
        }
        apply_opt!(d.order, ds.order);
        apply_opt!(d.convergence_tol, ds.convergence_tol);
        spec.doppler = Some(d);
    }
    if let Some(c) = cfg.sweep.c_ratio {
        spec.c_ratio = c;
    }
    if let Some(o) = &cfg.sweep.outputs {
        spec.outputs = o.clone();
    }
    if let Some(m) = cfg.sweep.max_points {
        spec.max_points = m;
    }
    match cfg.sweep.probe.as_deref() {
        Some("fundamental") => spec.doppler_probe = DopplerProbe::Fundamental,
        Some("generated") => spec.doppler_probe = DopplerProbe::Generated,
        Some(other) => {
            return Err(LicsError::Config(format!(
                "probe must be `fundamental` or `generated`, got `{other}`"
            )))
        }
        None => {}
    }
    Ok(spec)
}
