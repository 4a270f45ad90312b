//! Command-line front end: figure presets, parameter sweeps, CSV/SVG
//! emission and the oracle validation runs.
//!
//! Exit codes: 0 success, 2 validation failure, 3 spec error (unknown
//! preset / parameter / bad config).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lics_core::config::{self, ConfigFile};
use lics_core::emit::{emit_csv, emit_heatmap, emit_line_plot, format_csv, Table};
use lics_core::error::{LicsError, Result};
use lics_core::folded::{FoldedParams, Pumping};
use lics_core::oracle::{self, DiscretizedContinuum};
use lics_core::params::LadderParams;
use lics_core::presets::{all_presets, preset};
use lics_core::propagation::surface_maximum;
use lics_core::sweep::{
    run_sweep, set_folded_param, set_ladder_param, spec_from_preset, Scheme, SweepSpec,
};

#[derive(Parser)]
#[command(name = "lics", version, about = "steady-state LICS spectra, dissociation and four-wave-mixing conversion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct CommonOpts {
    /// TOML config file (overrides preset values; flags override both)
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot path (line plot for 1-D sweeps, heatmap for 2-D)
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Grid override: "N" for axis1 or "NxM" for both axes
    #[arg(long)]
    grid: Option<String>,
    /// Worker threads for grid evaluation (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Parameter overrides, repeatable: --param omega_l=-250
    #[arg(long = "param", value_name = "PATH=VALUE")]
    params: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Ladder-scheme absorption/refraction spectra
    Spectrum(CommonOpts),
    /// Conversion-efficiency maps (ladder or folded, set by config/preset)
    Conversion(CommonOpts),
    /// Folded-scheme populations
    Populations(CommonOpts),
    /// Folded-scheme dissociation rate
    Dissociation(CommonOpts),
    /// Doppler-averaged spectra
    Doppler(CommonOpts),
    /// Run a figure preset by id (fig2a-1 ... fig16)
    Preset {
        id: String,
        #[command(flatten)]
        opts: CommonOpts,
        /// Check the preset landmarks after the sweep (exit 2 on miss)
        #[arg(long)]
        check: bool,
    },
    /// List available presets
    Presets,
    /// Run the oracle comparisons (exit 2 on disagreement)
    Validate {
        /// Relative tolerance scale for the ladder oracle comparison
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Faster run: fewer draws and a coarser continuum
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Spectrum(o) => sweep_command(o, Scheme::LadderSpectrum, None),
        Command::Conversion(o) => sweep_command(o, Scheme::LadderConversion, None),
        Command::Populations(o) => sweep_command(o, Scheme::FoldedPopulation, None),
        Command::Dissociation(o) => sweep_command(o, Scheme::FoldedDissociation, None),
        Command::Doppler(o) => sweep_command(o, Scheme::Doppler, None),
        Command::Preset { id, opts, check } => preset_command(&id, opts, check),
        Command::Presets => {
            for p in all_presets() {
                println!(
                    "{:10} {:28} {}",
                    p.id,
                    format!("{:?}", p.kind),
                    p.citation
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate {
            tolerance,
            quick,
            threads,
        } => {
            init_threads(threads)?;
            validate(tolerance, quick)
        }
    }
}

fn init_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| LicsError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn sweep_command(
    opts: CommonOpts,
    default_scheme: Scheme,
    preset_id: Option<&str>,
) -> Result<ExitCode> {
    init_threads(opts.threads)?;
    let mut cfg = match &opts.config {
        Some(path) => config::load(path)?,
        None => ConfigFile::default(),
    };
    if let Some(id) = preset_id {
        cfg.sweep.preset = Some(id.to_string());
    }
    let mut spec = config::build_spec(&cfg, Some(default_scheme))?;
    apply_cli_overrides(&mut spec, &opts)?;
    let table = run_sweep(&spec)?;
    write_outputs(&table, &spec, &opts)?;
    Ok(ExitCode::SUCCESS)
}

fn preset_command(id: &str, opts: CommonOpts, check: bool) -> Result<ExitCode> {
    init_threads(opts.threads)?;
    let p = preset(id).ok_or_else(|| LicsError::UnknownPreset(id.to_string()))?;
    let mut spec = spec_from_preset(&p);
    if let Some(path) = &opts.config {
        let cfg = config::load(path)?;
        // config overrides preset: rebuild through the normal chain
        let mut cfg = cfg;
        cfg.sweep.preset = Some(id.to_string());
        spec = config::build_spec(&cfg, None)?;
    }
    apply_cli_overrides(&mut spec, &opts)?;
    let table = run_sweep(&spec)?;
    write_outputs(&table, &spec, &opts)?;

    if check && !p.landmarks.is_empty() {
        let ok = check_landmarks(&p, &spec)?;
        if !ok {
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_landmarks(
    p: &lics_core::presets::FigurePreset,
    spec: &SweepSpec,
) -> Result<bool> {
    let omega_grid: Vec<f64> = spec.axis1.values()?;
    let z_limit = spec
        .axis2
        .as_ref()
        .map(|a| a.stop / 2.0)
        .unwrap_or(1e5);
    let located = match spec.scheme {
        Scheme::LadderConversion => {
            let base = spec.ladder.unwrap();
            let c = spec.c_ratio;
            surface_maximum(
                |w| {
                    let mut q = base;
                    set_ladder_param(&mut q, &spec.axis1.path, w)?;
                    lics_core::ladder::ladder_fwm_setup(&q, c)
                },
                &omega_grid,
                z_limit / 400.0,
                z_limit,
            )?
        }
        Scheme::FoldedConversion => {
            let base = spec.folded.unwrap();
            let c = spec.c_ratio;
            surface_maximum(
                |w| {
                    let mut q = base;
                    set_folded_param(&mut q, &spec.axis1.path, w)?;
                    lics_core::folded::folded_fwm_setup(&q, c)
                },
                &omega_grid,
                z_limit / 400.0,
                z_limit,
            )?
        }
        _ => None,
    };
    let Some((w, z_alpha10, eta)) = located else {
        eprintln!("landmark check: no maximum located");
        return Ok(false);
    };
    println!("# located maximum: eta_q = {eta} at {} = {w}, z_alpha10 = {z_alpha10}", spec.axis1.path);
    let mut all_ok = true;
    for lm in p.landmarks {
        let measured = match lm.quantity {
            "eta_q_max" | "eta_q_first_max" => eta,
            "z_alpha10_at_max" | "z_alpha10_first_max" => z_alpha10,
            other => {
                eprintln!("unknown landmark `{other}`");
                all_ok = false;
                continue;
            }
        };
        let err = if lm.relative {
            (measured - lm.value).abs() / lm.value.abs()
        } else {
            (measured - lm.value).abs()
        };
        let ok = err <= lm.tol;
        println!(
            "landmark {:24} expected {:10} measured {measured:.6} {}",
            lm.quantity,
            lm.value,
            if ok { "PASS" } else { "FAIL" }
        );
        all_ok &= ok;
    }
    Ok(all_ok)
}

fn apply_cli_overrides(spec: &mut SweepSpec, opts: &CommonOpts) -> Result<()> {
    if let Some(grid) = &opts.grid {
        let parts: Vec<&str> = grid.split('x').collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| LicsError::Config(format!("bad grid `{s}`: {e}")))
        };
        spec.axis1.points = parse(parts[0])?;
        if parts.len() > 1 {
            if let Some(a2) = &mut spec.axis2 {
                a2.points = parse(parts[1])?;
            }
        }
    }
    for kv in &opts.params {
        let (path, value) = kv
            .split_once('=')
            .ok_or_else(|| LicsError::Config(format!("--param needs PATH=VALUE, got `{kv}`")))?;
        let v: f64 = value
            .parse()
            .map_err(|e| LicsError::Config(format!("bad value in `{kv}`: {e}")))?;
        let mut applied = false;
        if path == "c_ratio" {
            spec.c_ratio = v;
            applied = true;
        }
        if !applied {
            if let Some(p) = &mut spec.ladder {
                if set_ladder_param(p, path, v).is_ok() {
                    applied = true;
                }
            }
        }
        if !applied {
            if let Some(p) = &mut spec.folded {
                if set_folded_param(p, path, v).is_ok() {
                    applied = true;
                }
            }
        }
        if !applied {
            return Err(LicsError::UnknownParameter(path.to_string()));
        }
    }
    Ok(())
}

fn write_outputs(table: &Table, spec: &SweepSpec, opts: &CommonOpts) -> Result<()> {
    match &opts.out {
        Some(path) => emit_csv(table, path)?,
        None => print!("{}", format_csv(table)),
    }
    if let Some(path) = &opts.plot {
        let n_axes = 1 + usize::from(spec.axis2.is_some());
        if n_axes == 2 {
            emit_heatmap(table, 0, 1, n_axes, path)?;
        } else {
            let y_cols: Vec<usize> = (1..table.columns.len()).collect();
            emit_line_plot(table, 0, &y_cols, path)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// validate: oracle comparisons
// ---------------------------------------------------------------------

fn validate(tolerance: f64, quick: bool) -> Result<ExitCode> {
    let mut rng = rand_pcg(0x5eed);
    let draws = if quick { 500 } else { 10_000 };
    let mut worst_f1 = 0.0f64;
    let mut worst_fs = 0.0f64;
    let mut worst_forms = 0.0f64;
    let mut failures = 0usize;

    for _ in 0..draws {
        let p = random_ladder(&mut rng);
        let closed = match lics_core::ladder::ladder_point(&p) {
            Ok(pt) => pt,
            Err(_) => continue,
        };
        let f1 = oracle::oracle_f1(&p)?;
        let fs = oracle::oracle_fs(&p)?;
        let e1 = (f1 - closed.f1.0).norm() / closed.f1.0.norm().max(1.0);
        let es = (fs - closed.fs.0).norm() / closed.fs.0.norm().max(1.0);
        worst_f1 = worst_f1.max(e1);
        worst_fs = worst_fs.max(es);
        worst_forms = worst_forms.max(closed.fs_form_spread);
        if e1 > tolerance || es > tolerance {
            failures += 1;
        }
    }
    println!(
        "ladder oracle: {draws} draws, worst F_1 deviation {worst_f1:.3e}, worst F_S {worst_fs:.3e}, worst F_S form spread {worst_forms:.3e}"
    );

    // folded: a handful of random sets against the continuum integration
    let sets = if quick { 3 } else { 10 };
    let density = if quick { 6.0 } else { 10.0 };
    let mut worst_folded = 0.0f64;
    for k in 0..sets {
        let (p, cont) = random_folded(&mut rng, k, density);
        let p_eff = cont.realize(&p);
        let run = oracle::integrate_folded_master(&p_eff, &cont, 400.0, 1e-8)?;
        if !run.converged {
            eprintln!("folded oracle set {k}: steady state not reached");
            failures += 1;
            continue;
        }
        let closed = match p_eff.pumping {
            Pumping::Open { .. } => lics_core::folded::open_populations(&run.effective)?,
            Pumping::Closed { .. } => lics_core::folded::closed_populations(&run.effective)?,
        };
        let err = folded_deviation(&run.state, &closed);
        worst_folded = worst_folded.max(err);
        if err > 0.02 {
            failures += 1;
            eprintln!("folded oracle set {k}: deviation {err:.3e}");
        }
    }
    println!("folded oracle: {sets} sets, worst deviation {worst_folded:.3e}");

    if failures == 0 && worst_f1 <= tolerance && worst_fs <= tolerance {
        println!("validate: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("validate: FAIL ({failures} failures)");
        Ok(ExitCode::from(2))
    }
}

fn folded_deviation(
    a: &lics_core::folded::FoldedState,
    b: &lics_core::folded::FoldedState,
) -> f64 {
    let scale = a
        .r_m
        .abs()
        .max(a.r_n.abs())
        .max(a.r_f.abs())
        .max(1e-12);
    let mut err: f64 = 0.0;
    for (x, y) in [(a.r_m, b.r_m), (a.r_n, b.r_n), (a.r_f, b.r_f)] {
        err = err.max((x - y).abs() / scale);
    }
    let wscale = a.w_dot.abs().max(b.w_dot.abs());
    if wscale > 1e-9 * scale {
        err = err.max((a.w_dot - b.w_dot).abs() / wscale);
    }
    err
}

fn rand_pcg(seed: u64) -> impl rand::Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn random_ladder<R: rand::Rng>(rng: &mut R) -> LadderParams {
    let mut p = LadderParams::bare();
    p.gamma_gm = 10f64.powf(rng.gen_range(-1.0..2.0));
    p.gamma_gn = 10f64.powf(rng.gen_range(-1.0..2.0));
    p.gamma_gf = 10f64.powf(rng.gen_range(-1.0..2.0));
    p.li_nn = rng.gen_range(0.0..1e4) * p.gamma_gn / 1e2;
    p.li_ff = rng.gen_range(0.0..1e4) * p.gamma_gf / 1e2;
    p.g_mn = rng.gen_range(0.0..1e4);
    p.omega_1 = rng.gen_range(-100.0..100.0) * p.gamma_gm;
    p.omega_2 = rng.gen_range(-100.0..100.0) * p.gamma_gm;
    p.omega_l = rng.gen_range(-100.0..100.0) * p.gamma_gf;
    p.fano.q_gn = rng.gen_range(-20.0..20.0);
    p.fano.q_gf = rng.gen_range(-20.0..20.0);
    p.fano.q_fn = rng.gen_range(-20.0..20.0);
    p.fano.q_nn = rng.gen_range(-20.0..20.0);
    p.fano.q_ff = rng.gen_range(-20.0..20.0);
    p
}

fn random_folded<R: rand::Rng>(
    rng: &mut R,
    k: usize,
    density: f64,
) -> (FoldedParams, DiscretizedContinuum) {
    let closed = k % 2 == 0;
    let pumping = if closed {
        Pumping::Closed {
            w_n: rng.gen_range(0.01..0.3),
            w_f: rng.gen_range(0.0..0.2),
        }
    } else {
        Pumping::Open {
            q_m: rng.gen_range(0.0..0.2),
            q_n: rng.gen_range(0.01..0.2),
            q_f: rng.gen_range(0.0..0.2),
        }
    };
    let mut p = FoldedParams::na2(pumping);
    p.g_mn = rng.gen_range(0.0..4.0);
    p.omega_mn = rng.gen_range(-2.0..2.0);
    p.omega_nf = rng.gen_range(-4.0..4.0);
    let gamma_nn: f64 = rng.gen_range(0.3..1.5);
    let gamma_ff: f64 = rng.gen_range(0.3..1.5);
    let span = 150.0 * gamma_nn.max(gamma_ff).max(1.0);
    let bins = (span * density / gamma_nn.min(gamma_ff)).ceil() as usize;
    let cont = DiscretizedContinuum::flat(gamma_nn, gamma_ff, 1.0, span, bins);
    (p, cont)
}
