//! Parameter sweeps over 1-D and 2-D grids with deterministic, axis-major
//! row order. Grid points that hit a resonant pole become gap rows (empty
//! output cells); every other error aborts the sweep.

use rayon::prelude::*;

use crate::doppler::{doppler_average, DopplerConfig};
use crate::emit::Table;
use crate::error::{LicsError, Result};
use crate::folded::{
    closed_populations, folded_fwm_setup, open_populations, FoldedParams, Pumping,
};
use crate::ladder::{ladder_fwm_setup, ladder_point};
use crate::params::LadderParams;
use crate::propagation::PropagationSetup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    LadderSpectrum,
    LadderConversion,
    FoldedPopulation,
    FoldedDissociation,
    FoldedConversion,
    Doppler,
}

impl Scheme {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "ladder-spectrum" => Scheme::LadderSpectrum,
            "ladder-conversion" => Scheme::LadderConversion,
            "folded-population" => Scheme::FoldedPopulation,
            "folded-dissociation" => Scheme::FoldedDissociation,
            "folded-conversion" => Scheme::FoldedConversion,
            "doppler" => Scheme::Doppler,
            other => {
                return Err(LicsError::InvalidSweep(format!("unknown scheme `{other}`")))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::LadderSpectrum => "ladder-spectrum",
            Scheme::LadderConversion => "ladder-conversion",
            Scheme::FoldedPopulation => "folded-population",
            Scheme::FoldedDissociation => "folded-dissociation",
            Scheme::FoldedConversion => "folded-conversion",
            Scheme::Doppler => "doppler",
        }
    }

    fn default_outputs(&self) -> Vec<String> {
        let names: &[&str] = match self {
            Scheme::LadderSpectrum => {
                &["absorption_1", "refraction_1", "absorption_s", "refraction_s"]
            }
            Scheme::LadderConversion | Scheme::FoldedConversion => &["eta_q"],
            Scheme::FoldedPopulation => &["r_m", "r_n", "r_f", "w_dot"],
            Scheme::FoldedDissociation => &["w_dot"],
            Scheme::Doppler => &["absorption_1", "refraction_1"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub path: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

impl AxisSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points < 2 {
            return Err(LicsError::InvalidSweep(format!(
                "axis `{}` needs >= 2 points",
                self.path
            )));
        }
        if self.log && (self.start <= 0.0 || self.stop <= 0.0) {
            return Err(LicsError::InvalidSweep(format!(
                "log axis `{}` needs positive bounds",
                self.path
            )));
        }
        let n = self.points;
        Ok((0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.start.ln() + f * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + f * (self.stop - self.start)
                }
            })
            .collect())
    }
}

/// Which weak wave a Doppler sweep probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DopplerProbe {
    #[default]
    Fundamental,
    Generated,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub scheme: Scheme,
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub ladder: Option<LadderParams>,
    pub folded: Option<FoldedParams>,
    pub c_ratio: f64,
    pub doppler: Option<DopplerConfig>,
    pub doppler_probe: DopplerProbe,
    pub outputs: Vec<String>,
    pub preset_id: Option<String>,
    /// Guard against runaway grids; raise explicitly for bigger maps.
    pub max_points: usize,
}

impl SweepSpec {
    pub fn outputs_or_default(&self) -> Vec<String> {
        if self.outputs.is_empty() {
            self.scheme.default_outputs()
        } else {
            self.outputs.clone()
        }
    }
}

pub fn set_ladder_param(p: &mut LadderParams, path: &str, v: f64) -> Result<()> {
    match path {
        "omega_1" => p.omega_1 = v,
        "omega_2" => p.omega_2 = v,
        "omega_l" => p.omega_l = v,
        // probe detuning of the generated wave: omega = omega_1 + omega_2 - omega_l
        "omega_probe" => p.omega_1 = v - p.omega_2 + p.omega_l,
        "g_mn" => p.g_mn = v,
        "li_nn" => p.li_nn = v,
        "li_ff" => p.li_ff = v,
        "g_nn" => p.li_nn = v * p.gamma_gn,
        "g_ff" => p.li_ff = v * p.gamma_gf,
        "gamma_gm" => p.gamma_gm = v,
        "gamma_gn" => p.gamma_gn = v,
        "gamma_gf" => p.gamma_gf = v,
        "q_gn" => p.fano.q_gn = v,
        "q_gf" => p.fano.q_gf = v,
        "q_fn" => p.fano.q_fn = v,
        "q_nn" => p.fano.q_nn = v,
        "q_ff" => p.fano.q_ff = v,
        "s_nf" => p.s_nf = v,
        other => return Err(LicsError::UnknownParameter(other.to_string())),
    }
    Ok(())
}

pub fn set_folded_param(p: &mut FoldedParams, path: &str, v: f64) -> Result<()> {
    match path {
        "omega_mn" => p.omega_mn = v,
        "omega_nf" => p.omega_nf = v,
        "g_mn" => p.g_mn = v,
        "w_nm" => p.w_nm = v,
        "rel_m" => p.rel_m = v,
        "rel_n" => p.rel_n = v,
        "rel_f" => p.rel_f = v,
        "coh_mn" => p.coh_mn = v,
        "coh_mf" => p.coh_mf = v,
        "coh_nf" => p.coh_nf = v,
        // uniform-family width/asymmetry paths
        "gamma_nn" => {
            for fam in [&mut p.fam_m, &mut p.fam_n, &mut p.fam_f] {
                fam.gamma_nn = v;
                fam.gamma_nf = (fam.gamma_nn * fam.gamma_ff).sqrt();
            }
        }
        "gamma_ff" => {
            for fam in [&mut p.fam_m, &mut p.fam_n, &mut p.fam_f] {
                fam.gamma_ff = v;
                fam.gamma_nf = (fam.gamma_nn * fam.gamma_ff).sqrt();
            }
        }
        "q_nn" => {
            for fam in [&mut p.fam_m, &mut p.fam_n, &mut p.fam_f] {
                fam.q_nn = v;
            }
        }
        "q_ff" => {
            for fam in [&mut p.fam_m, &mut p.fam_n, &mut p.fam_f] {
                fam.q_ff = v;
            }
        }
        "q_nf" => {
            for fam in [&mut p.fam_m, &mut p.fam_n, &mut p.fam_f] {
                fam.q_nf = v;
            }
        }
        "w_n" => match &mut p.pumping {
            Pumping::Closed { w_n, .. } => *w_n = v,
            _ => return Err(LicsError::InvalidSweep("w_n needs closed pumping".into())),
        },
        "w_f" => match &mut p.pumping {
            Pumping::Closed { w_f, .. } => *w_f = v,
            _ => return Err(LicsError::InvalidSweep("w_f needs closed pumping".into())),
        },
        "q_m" => match &mut p.pumping {
            Pumping::Open { q_m, .. } => *q_m = v,
            _ => return Err(LicsError::InvalidSweep("q_m needs open pumping".into())),
        },
        "q_n" => match &mut p.pumping {
            Pumping::Open { q_n, .. } => *q_n = v,
            _ => return Err(LicsError::InvalidSweep("q_n needs open pumping".into())),
        },
        "q_f" => match &mut p.pumping {
            Pumping::Open { q_f, .. } => *q_f = v,
            _ => return Err(LicsError::InvalidSweep("q_f needs open pumping".into())),
        },
        other => return Err(LicsError::UnknownParameter(other.to_string())),
    }
    Ok(())
}

fn is_gap(err: &LicsError) -> bool {
    matches!(err, LicsError::ResonantPole { .. })
}

enum PointValues {
    Values(Vec<f64>),
    Gap,
}

fn ladder_outputs(
    p: &LadderParams,
    c_ratio: f64,
    outputs: &[String],
) -> Result<PointValues> {
    let pt = match ladder_point(p) {
        Ok(pt) => pt,
        Err(e) if is_gap(&e) => return Ok(PointValues::Gap),
        Err(e) => return Err(e),
    };
    let setup = ladder_fwm_setup(p, c_ratio)?;
    let mut vals = Vec::with_capacity(outputs.len());
    for name in outputs {
        let v = match name.as_str() {
            "absorption_1" => pt.f1.absorption(),
            "refraction_1" => pt.f1.refraction(),
            "absorption_s" => pt.fs.absorption(),
            "refraction_s" => pt.fs.refraction(),
            "chi3_abs2" => pt.chi3_s_ratio.norm_sqr(),
            "alpha1_bar" => setup.alpha1_bar,
            "alpha_s_bar" => setup.alpha_s_bar,
            "eta_q0_bar" => setup.eta_q0_bar,
            "b_bar" => setup.conversion_rate_b(),
            other => return Err(LicsError::UnknownParameter(other.to_string())),
        };
        vals.push(v);
    }
    Ok(PointValues::Values(vals))
}

fn folded_outputs(p: &FoldedParams, outputs: &[String]) -> Result<PointValues> {
    let state = match p.pumping {
        Pumping::Open { .. } => open_populations(p),
        Pumping::Closed { .. } => closed_populations(p),
    };
    let state = match state {
        Ok(s) => s,
        Err(LicsError::DegenerateSteadyState { .. }) => return Ok(PointValues::Gap),
        Err(e) => return Err(e),
    };
    let mut vals = Vec::with_capacity(outputs.len());
    for name in outputs {
        let v = match name.as_str() {
            "r_m" => state.r_m,
            "r_n" => state.r_n,
            "r_f" => state.r_f,
            "w_dot" => state.w_dot,
            "r_nf_re" => state.r_nf.re,
            "r_nf_im" => state.r_nf.im,
            other => return Err(LicsError::UnknownParameter(other.to_string())),
        };
        vals.push(v);
    }
    Ok(PointValues::Values(vals))
}

fn conversion_outputs(
    setup: &PropagationSetup,
    z_alpha10: Option<f64>,
    outputs: &[String],
) -> Result<PointValues> {
    let mut vals = Vec::with_capacity(outputs.len());
    for name in outputs {
        let v = match name.as_str() {
            "eta_q" => {
                let z0 = z_alpha10.ok_or_else(|| {
                    LicsError::InvalidSweep("eta_q needs a z_alpha10 axis".into())
                })? / 2.0;
                setup.eta_q(z0)?
            }
            "alpha1_bar" => setup.alpha1_bar,
            "alpha_s_bar" => setup.alpha_s_bar,
            "eta_q0_bar" => setup.eta_q0_bar,
            "b_bar" => setup.conversion_rate_b(),
            other => return Err(LicsError::UnknownParameter(other.to_string())),
        };
        vals.push(v);
    }
    Ok(PointValues::Values(vals))
}

fn doppler_outputs(
    p: &LadderParams,
    cfg: &DopplerConfig,
    probe: DopplerProbe,
    outputs: &[String],
) -> Result<PointValues> {
    let base = [p.omega_1, p.omega_2, p.omega_l];
    let response = |d: &[f64]| {
        let mut q = *p;
        q.omega_1 = d[0];
        q.omega_2 = d[1];
        q.omega_l = d[2];
        let pt = ladder_point(&q)?;
        Ok(match probe {
            DopplerProbe::Fundamental => pt.f1.0,
            DopplerProbe::Generated => pt.fs.0,
        })
    };
    let avg = match doppler_average(response, &base, cfg) {
        Ok(v) => v,
        Err(e) if is_gap(&e) => return Ok(PointValues::Gap),
        Err(e) => return Err(e),
    };
    let mut vals = Vec::with_capacity(outputs.len());
    for name in outputs {
        let v = match name.as_str() {
            "absorption_1" | "absorption_s" => avg.re,
            "refraction_1" | "refraction_s" => avg.im,
            other => return Err(LicsError::UnknownParameter(other.to_string())),
        };
        vals.push(v);
    }
    Ok(PointValues::Values(vals))
}

fn evaluate_point(
    spec: &SweepSpec,
    outputs: &[String],
    a1: (&str, f64),
    a2: Option<(&str, f64)>,
) -> Result<PointValues> {
    let mut z_alpha10 = None;
    let conversion = matches!(
        spec.scheme,
        Scheme::LadderConversion | Scheme::FoldedConversion
    );

    let apply_ladder = |p: &mut LadderParams| -> Result<Option<f64>> {
        let mut z = None;
        for (path, v) in std::iter::once(a1).chain(a2) {
            if path == "z_alpha10" {
                z = Some(v);
            } else {
                set_ladder_param(p, path, v)?;
            }
        }
        Ok(z)
    };
    let apply_folded = |p: &mut FoldedParams| -> Result<Option<f64>> {
        let mut z = None;
        for (path, v) in std::iter::once(a1).chain(a2) {
            if path == "z_alpha10" {
                z = Some(v);
            } else {
                set_folded_param(p, path, v)?;
            }
        }
        Ok(z)
    };

    match spec.scheme {
        Scheme::LadderSpectrum => {
            let mut p = spec.ladder.ok_or_else(|| {
                LicsError::InvalidSweep("ladder parameters missing".into())
            })?;
            apply_ladder(&mut p)?;
            ladder_outputs(&p, spec.c_ratio, outputs)
        }
        Scheme::LadderConversion => {
            let mut p = spec.ladder.ok_or_else(|| {
                LicsError::InvalidSweep("ladder parameters missing".into())
            })?;
            z_alpha10 = apply_ladder(&mut p)?;
            let setup = match ladder_fwm_setup(&p, spec.c_ratio) {
                Ok(s) => s,
                Err(e) if is_gap(&e) => return Ok(PointValues::Gap),
                Err(e) => return Err(e),
            };
            conversion_outputs(&setup, z_alpha10, outputs)
        }
        Scheme::FoldedPopulation | Scheme::FoldedDissociation => {
            let mut p = spec.folded.ok_or_else(|| {
                LicsError::InvalidSweep("folded parameters missing".into())
            })?;
            apply_folded(&mut p)?;
            folded_outputs(&p, outputs)
        }
        Scheme::FoldedConversion => {
            let mut p = spec.folded.ok_or_else(|| {
                LicsError::InvalidSweep("folded parameters missing".into())
            })?;
            z_alpha10 = apply_folded(&mut p)?;
            let setup = folded_fwm_setup(&p, spec.c_ratio)?;
            conversion_outputs(&setup, z_alpha10, outputs)
        }
        Scheme::Doppler => {
            let mut p = spec.ladder.ok_or_else(|| {
                LicsError::InvalidSweep("ladder parameters missing".into())
            })?;
            apply_ladder(&mut p)?;
            let cfg = spec.doppler.as_ref().ok_or_else(|| {
                LicsError::InvalidSweep("doppler configuration missing".into())
            })?;
            doppler_outputs(&p, cfg, spec.doppler_probe, outputs)
        }
    }
    .map(|v| {
        let _ = z_alpha10;
        // conversion schemes validated inside; nothing else to do
        debug_assert!(conversion || true);
        v
    })
}

/// Run the sweep. Rows are axis-major: the outer (second) axis varies
/// slowest. The returned table carries the parameter block and located
/// extrema in its metadata.
pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    let outputs = spec.outputs_or_default();
    let ax1 = spec.axis1.values()?;
    let ax2 = match &spec.axis2 {
        Some(a) => Some(a.values()?),
        None => None,
    };
    let total = ax1.len() * ax2.as_ref().map_or(1, |a| a.len());
    if total > spec.max_points {
        return Err(LicsError::InvalidSweep(format!(
            "grid of {total} points exceeds the {} limit; raise max_points to allow it",
            spec.max_points
        )));
    }

    let mut columns = vec![annotate(&spec.axis1.path)];
    if let Some(a2) = &spec.axis2 {
        columns.push(annotate(&a2.path));
    }
    columns.extend(outputs.iter().map(|o| annotate(o)));

    // axis-major point list
    let points: Vec<(f64, Option<f64>)> = match &ax2 {
        Some(outer) => outer
            .iter()
            .flat_map(|&o| ax1.iter().map(move |&i| (i, Some(o))))
            .collect(),
        None => ax1.iter().map(|&i| (i, None)).collect(),
    };

    let rows: Result<Vec<Vec<Option<f64>>>> = points
        .par_iter()
        .map(|&(v1, v2)| {
            let a2 = v2.map(|v| (spec.axis2.as_ref().unwrap().path.as_str(), v));
            let res = evaluate_point(spec, &outputs, (spec.axis1.path.as_str(), v1), a2)?;
            let mut row: Vec<Option<f64>> = vec![Some(v1)];
            if let Some(v) = v2 {
                row.push(Some(v));
            }
            match res {
                PointValues::Values(vals) => row.extend(vals.into_iter().map(Some)),
                PointValues::Gap => row.extend(outputs.iter().map(|_| None)),
            }
            Ok(row)
        })
        .collect();
    let rows = rows?;

    let mut table = Table::new(columns);
    table.push_meta("tool", format!("lics {}", crate::VERSION));
    table.push_meta("scheme", spec.scheme.name());
    if let Some(id) = &spec.preset_id {
        table.push_meta("preset", id);
    }
    describe_params(spec, &mut table);
    for row in rows {
        table.push_row(row);
    }

    // summary block: located extrema per output column
    let n_axes = 1 + usize::from(spec.axis2.is_some());
    for (k, name) in outputs.iter().enumerate() {
        let col = n_axes + k;
        if let Some((row_idx, v)) = table.column_max(col) {
            let mut loc = format!("{}={}", spec.axis1.path, table.rows[row_idx][0].unwrap());
            if n_axes == 2 {
                loc.push_str(&format!(
                    ", {}={}",
                    spec.axis2.as_ref().unwrap().path,
                    table.rows[row_idx][1].unwrap()
                ));
            }
            table.push_meta(&format!("summary max({name})"), format!("{v} at {loc}"));
        }
    }
    Ok(table)
}

/// Column annotation: detunings, widths and rates are in units of the
/// caller's reference width `w0`; everything else is dimensionless.
fn annotate(name: &str) -> String {
    let rate_like = [
        "omega", "gamma", "li_", "coh_", "rel_", "w_n", "w_f", "w_nm", "w_dot", "q_m", "q_n",
        "q_f",
    ];
    let dimensionless_q = name.starts_with("q_")
        && ["q_gn", "q_gf", "q_fn", "q_nn", "q_ff", "q_nf"].contains(&name);
    if name == "z_alpha10" {
        format!("{name}[-]")
    } else if !dimensionless_q && rate_like.iter().any(|p| name.starts_with(p)) {
        format!("{name}[w0]")
    } else {
        format!("{name}[-]")
    }
}

fn describe_params(spec: &SweepSpec, table: &mut Table) {
    if let Some(p) = &spec.ladder {
        for (k, v) in [
            ("gamma_gm", p.gamma_gm),
            ("gamma_gn", p.gamma_gn),
            ("gamma_gf", p.gamma_gf),
            ("li_nn", p.li_nn),
            ("li_ff", p.li_ff),
            ("g_mn", p.g_mn),
            ("omega_1", p.omega_1),
            ("omega_2", p.omega_2),
            ("omega_l", p.omega_l),
            ("q_gn", p.fano.q_gn),
            ("q_gf", p.fano.q_gf),
            ("q_fn", p.fano.q_fn),
            ("q_nn", p.fano.q_nn),
            ("q_ff", p.fano.q_ff),
            ("s_nf", p.s_nf),
        ] {
            table.push_meta(&format!("param {k}"), v);
        }
    }
    if let Some(p) = &spec.folded {
        for (k, v) in [
            ("rel_m", p.rel_m),
            ("rel_n", p.rel_n),
            ("rel_f", p.rel_f),
            ("coh_mn", p.coh_mn),
            ("coh_mf", p.coh_mf),
            ("coh_nf", p.coh_nf),
            ("w_nm", p.w_nm),
            ("g_mn", p.g_mn),
            ("omega_mn", p.omega_mn),
            ("omega_nf", p.omega_nf),
            ("gamma_nn", p.fam_m.gamma_nn),
            ("gamma_ff", p.fam_m.gamma_ff),
            ("gamma_nf", p.fam_m.gamma_nf),
            ("q_nn", p.fam_m.q_nn),
            ("q_ff", p.fam_m.q_ff),
            ("q_nf", p.fam_m.q_nf),
        ] {
            table.push_meta(&format!("param {k}"), v);
        }
        match p.pumping {
            Pumping::Open { q_m, q_n, q_f } => {
                table.push_meta("param pumping", "open");
                table.push_meta("param q_m", q_m);
                table.push_meta("param q_n", q_n);
                table.push_meta("param q_f", q_f);
            }
            Pumping::Closed { w_n, w_f } => {
                table.push_meta("param pumping", "closed");
                table.push_meta("param w_n", w_n);
                table.push_meta("param w_f", w_f);
            }
        }
    }
    if matches!(
        spec.scheme,
        Scheme::LadderConversion | Scheme::FoldedConversion
    ) {
        table.push_meta("param c_ratio", spec.c_ratio);
    }
    if let Some(d) = &spec.doppler {
        table.push_meta("param doppler_hwhm", d.hwhm);
        table.push_meta(
            "param doppler_shifts",
            d.shifts
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        table.push_meta("param doppler_order", d.order);
    }
}

/// Build a sweep spec from a preset, keeping its default axes and scheme.
pub fn spec_from_preset(p: &crate::presets::FigurePreset) -> SweepSpec {
    use crate::presets::PresetKind;
    let scheme = match p.kind {
        PresetKind::LadderSpectrumFundamental | PresetKind::LadderSpectrumGenerated => {
            Scheme::LadderSpectrum
        }
        PresetKind::LadderConversion => Scheme::LadderConversion,
        PresetKind::DopplerFundamental | PresetKind::DopplerGenerated => Scheme::Doppler,
        PresetKind::FoldedDissociation => Scheme::FoldedDissociation,
        PresetKind::FoldedConversion => Scheme::FoldedConversion,
    };
    let outputs: Vec<String> = match p.kind {
        PresetKind::LadderSpectrumFundamental => {
            vec!["absorption_1".into(), "refraction_1".into()]
        }
        PresetKind::LadderSpectrumGenerated => {
            vec!["absorption_s".into(), "refraction_s".into()]
        }
        PresetKind::DopplerFundamental => vec!["absorption_1".into(), "refraction_1".into()],
        PresetKind::DopplerGenerated => vec!["absorption_s".into(), "refraction_s".into()],
        _ => Vec::new(),
    };
    SweepSpec {
        scheme,
        axis1: AxisSpec {
            path: p.axis1.path.to_string(),
            start: p.axis1.start,
            stop: p.axis1.stop,
            points: p.axis1.points,
            log: false,
        },
        axis2: p.axis2.map(|a| AxisSpec {
            path: a.path.to_string(),
            start: a.start,
            stop: a.stop,
            points: a.points,
            log: false,
        }),
        ladder: p.ladder,
        folded: p.folded,
        c_ratio: p.c_ratio.unwrap_or(1.0),
        doppler: p.doppler.clone(),
        doppler_probe: match p.kind {
            PresetKind::DopplerGenerated => DopplerProbe::Generated,
            _ => DopplerProbe::Fundamental,
        },
        outputs,
        preset_id: Some(p.id.to_string()),
        max_points: 1_000_000,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emit::{format_csv, parse_csv};

    fn flat_spectrum_spec() -> SweepSpec {
        SweepSpec {
            scheme: Scheme::LadderSpectrum,
            axis1: AxisSpec {
                path: "omega_probe".into(),
                start: -5.0,
                stop: 5.0,
                points: 11,
            log: false,
            },
            axis2: None,
            ladder: Some(LadderParams::bare()),
            folded: None,
            c_ratio: 1.0,
            doppler: None,
            doppler_probe: DopplerProbe::Fundamental,
            outputs: vec!["absorption_s".into()],
            preset_id: None,
            max_points: 1_000_000,
        }
    }

    #[test]
    fn drives_off_gives_flat_continuum_absorption() {
        let t = run_sweep(&flat_spectrum_spec()).unwrap();
        for row in &t.rows {
            assert!((row[1].unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unknown_path_is_rejected() {
        let mut spec = flat_spectrum_spec();
        spec.axis1.path = "omega_zz".into();
        match run_sweep(&spec) {
            Err(LicsError::UnknownParameter(p)) => assert_eq!(p, "omega_zz"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid_guard_trips() {
        let mut spec = flat_spectrum_spec();
        spec.max_points = 5;
        assert!(matches!(
            run_sweep(&spec),
            Err(LicsError::InvalidSweep(_))
        ));
    }

    #[test]
    fn pole_points_become_gap_rows() {
        let mut spec = flat_spectrum_spec();
        let mut p = LadderParams::bare();
        p.li_nn = 1e14;
        p.li_ff = 1e14;
        spec.ladder = Some(p);
        spec.axis1.path = "omega_1".into();
        let t = run_sweep(&spec).unwrap();
        // the resonance point sits at omega_1 = 0 on this grid
        let gap_rows: Vec<_> = t.rows.iter().filter(|r| r[1].is_none()).collect();
        assert!(!gap_rows.is_empty());
        let text = format_csv(&t);
        let back = parse_csv(&text).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn axis_major_order_is_deterministic() {
        let mut spec = flat_spectrum_spec();
        spec.axis1 = AxisSpec {
            path: "omega_1".into(),
            start: 0.0,
            stop: 1.0,
            points: 2,
            log: false,
        };
        spec.axis2 = Some(AxisSpec {
            path: "omega_2".into(),
            start: 10.0,
            stop: 20.0,
            points: 2,
            log: false,
        });
        let t = run_sweep(&spec).unwrap();
        let coords: Vec<(f64, f64)> = t
            .rows
            .iter()
            .map(|r| (r[0].unwrap(), r[1].unwrap()))
            .collect();
        assert_eq!(
            coords,
            vec![(0.0, 10.0), (1.0, 10.0), (0.0, 20.0), (1.0, 20.0)]
        );
        let a = format_csv(&run_sweep(&spec).unwrap());
        let b = format_csv(&t);
        assert_eq!(a, b);
    }
}
