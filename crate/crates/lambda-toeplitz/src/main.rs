//! Batch front door: parse an experiment config, run one command, emit CSV
//! and report files. One command per process; identical config and seed
//! give byte-identical outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use lambda_toeplitz::config::ExperimentConfig;
use lambda_toeplitz::error::Error;
use lambda_toeplitz::group::Character;
use lambda_toeplitz::operator::build_finite_section;
use lambda_toeplitz::spectral::{
    essential_spectrum, fredholm_index, full_spectrum, resolvent_probe, ResolventProbe,
    SpectrumDescriptor, CURVE_RESOLUTION,
};
use lambda_toeplitz::verify::{bundled_catalog, run_checks};

#[derive(Parser)]
#[command(
    name = "lambda-toeplitz",
    about = "Twisted Toeplitz operators over ordered duals: indices, spectra, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rotation, winding, and Fredholm indices for the configured data.
    Index(CommonArgs),
    /// Spectrum descriptors, sampled curves, and resolvent probes as CSV.
    Spectrum(CommonArgs),
    /// Run verification checks; nonzero exit on any failure.
    Verify(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment config file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV and report files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for all randomized internals.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run a single named check (verify).
    #[arg(long)]
    check: Option<String>,
    /// Override the sampling resolution (spectrum).
    #[arg(long)]
    resolution: Option<usize>,
    /// Override the window size (index/spectrum section export).
    #[arg(long)]
    window: Option<usize>,
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::create_dir_all(path.parent().unwrap_or(Path::new(".")))?;
    fs::write(path, text)?;
    Ok(())
}

fn cmd_index(args: &CommonArgs) -> Result<i32, Error> {
    let cfg = ExperimentConfig::load(&args.config)?;
    let op = cfg.build_operator()?;
    let spec = op.group();
    let dim = spec.dim();
    let params = cfg.index.clone().unwrap_or_else(|| {
        // no [index] section: report on the symbol alone
        lambda_toeplitz::config::IndexParams {
            characters: vec![],
            bruteforce_bound: None,
            symbol_winding: true,
            mu: vec![],
            q: None,
            chi0: None,
        }
    });
    let mut lines: Vec<String> = Vec::new();
    let mut records: Vec<serde_json::Value> = Vec::new();

    for exps in &params.characters {
        let chi = Character::from_exponents(exps);
        let index = spec.rotation_index(&chi)?;
        match index {
            Some(n) => lines.push(format!("character {}: index {}", chi.dense_string(dim), n)),
            None => lines.push(format!("character {}: no index", chi.dense_string(dim))),
        }
        records.push(serde_json::json!({
            "kind": "rotation_index",
            "character": chi.dense(dim),
            "index": index,
        }));
        if let Some(bound) = params.bruteforce_bound {
            match spec.rotation_index_bruteforce(&chi, bound) {
                Ok(b) => {
                    lines.push(format!(
                        "character {}: enumeration up to {bound} -> {b:?}",
                        chi.dense_string(dim)
                    ));
                    records.push(serde_json::json!({
                        "kind": "rotation_index_enumeration",
                        "character": chi.dense(dim),
                        "bound": bound,
                        "result": format!("{b:?}"),
                    }));
                }
                Err(e) => lines.push(format!(
                    "character {}: enumeration not applicable: {e}",
                    chi.dense_string(dim)
                )),
            }
        }
    }

    if params.symbol_winding && !op.phi().is_zero() {
        match op.phi().winding_index() {
            Ok(w) => {
                match w {
                    Some(w) => lines.push(format!("symbol winding index: {w}")),
                    None => lines.push("symbol winding index: no index".into()),
                }
                records.push(serde_json::json!({
                    "kind": "symbol_winding_index",
                    "index": w,
                }));
            }
            Err(e) => lines.push(format!("symbol winding index: {e}")),
        }
    }

    if !params.mu.is_empty() {
        let q = match params.q.or_else(|| op.lambda().order()) {
            Some(q) => q,
            None => {
                return Err(Error::NotApplicable(
                    "Fredholm indices need a finite-order point; set q or use a rational angle"
                        .into(),
                ))
            }
        };
        let chi0 = params
            .chi0
            .as_ref()
            .map(|e| Character::from_exponents(e))
            .or_else(|| spec.smallest_positive())
            .ok_or_else(|| {
                Error::NotApplicable("no cone generator; configure chi0 explicitly".into())
            })?;
        for m in &params.mu {
            let mu = Complex64::new(m[0], m[1]);
            match fredholm_index(&op, mu, q, &chi0) {
                Ok(ind) => {
                    match ind {
                        Some(v) => lines.push(format!("Fredholm index at mu={}: {v}", fmt_c(mu))),
                        None => lines.push(format!(
                            "Fredholm index at mu={}: no index (not Fredholm)",
                            fmt_c(mu)
                        )),
                    }
                    records.push(serde_json::json!({
                        "kind": "fredholm_index",
                        "mu": [mu.re, mu.im],
                        "q": q,
                        "index": ind,
                    }));
                }
                Err(e) => lines.push(format!("Fredholm index at mu={}: {e}", fmt_c(mu))),
            }
        }
    }

    // export the finite section alongside the indices; the flag overrides
    // the config window
    let window = match args.window {
        Some(n) => Some(ExperimentConfig::probe_window(spec, n)?),
        None => cfg.build_window()?,
    };
    if let Some(window) = window {
        let section = build_finite_section(&op, &window)?;
        let mut csv = Vec::new();
        section.write_csv(&mut csv)?;
        write_text(
            &args.out.join("section.csv"),
            &String::from_utf8(csv).expect("ascii csv"),
        )?;
        lines.push(format!(
            "finite section ({} characters) written to section.csv",
            window.size()
        ));
        records.push(serde_json::json!({
            "kind": "section_export",
            "window": window.size(),
            "file": "section.csv",
        }));
    }

    let text = lines.join("\n") + "\n";
    print!("{text}");
    write_text(&args.out.join("report.txt"), &text)?;
    let json = serde_json::to_string_pretty(&records).expect("records");
    write_text(&args.out.join("report.struct"), &json)?;
    Ok(0)
}

fn spectrum_csv(sets: &[(&str, &SpectrumDescriptor)], resolution: usize) -> String {
    let mut out = String::from("set,re,im\n");
    for (name, desc) in sets {
        for z in desc.boundary_samples(resolution) {
            out.push_str(&format!("{name},{:.16e},{:.16e}\n", z.re, z.im));
        }
    }
    out
}

fn probes_csv(probes: &[ResolventProbe]) -> String {
    let mut out = String::from("mu_re,mu_im,window_size,sigma_min\n");
    for p in probes {
        for (n, s) in p.window_sizes.iter().zip(p.min_singular_values.iter()) {
            out.push_str(&format!("{:.16e},{:.16e},{n},{:.16e}\n", p.mu.0, p.mu.1, s));
        }
    }
    out
}

fn cmd_spectrum(args: &CommonArgs) -> Result<i32, Error> {
    let cfg = ExperimentConfig::load(&args.config)?;
    let op = cfg.build_operator()?;
    let params = cfg.spectrum.clone().unwrap_or_default();
    let resolution = args
        .resolution
        .or(params.resolution)
        .unwrap_or(CURVE_RESOLUTION);
    let which = params.which.as_deref().unwrap_or("both");

    let mut sets: Vec<(&str, SpectrumDescriptor)> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    if which == "essential" || which == "both" {
        match essential_spectrum(&op, resolution) {
            Ok(d) => sets.push(("essential", d)),
            Err(e) => notes.push(format!("essential spectrum: {e}")),
        }
    }
    if which == "full" || which == "both" {
        match full_spectrum(&op, resolution) {
            Ok(d) => sets.push(("full", d)),
            Err(e) => notes.push(format!("full spectrum: {e}")),
        }
    }
    if sets.is_empty() {
        for n in &notes {
            eprintln!("{n}");
        }
        return Err(Error::NotApplicable(
            "no spectrum formula applies to this configuration".into(),
        ));
    }

    let borrowed: Vec<(&str, &SpectrumDescriptor)> = sets.iter().map(|(n, d)| (*n, d)).collect();
    write_text(
        &args.out.join("spectrum.csv"),
        &spectrum_csv(&borrowed, resolution),
    )?;

    let mut probes = Vec::new();
    if !params.probe_mu.is_empty() && !params.probe_windows.is_empty() {
        let windows = params
            .probe_windows
            .iter()
            .map(|&n| ExperimentConfig::probe_window(op.group(), n))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, m) in params.probe_mu.iter().enumerate() {
            let mu = Complex64::new(m[0], m[1]);
            probes.push(resolvent_probe(
                &op,
                mu,
                &windows,
                args.seed.wrapping_add(i as u64),
            )?);
        }
        write_text(&args.out.join("probes.csv"), &probes_csv(&probes))?;
    }

    // optional section export, mirroring the index command
    if let Some(n) = args.window {
        let window = ExperimentConfig::probe_window(op.group(), n)?;
        let section = build_finite_section(&op, &window)?;
        let mut csv = Vec::new();
        section.write_csv(&mut csv)?;
        write_text(
            &args.out.join("section.csv"),
            &String::from_utf8(csv).expect("ascii csv"),
        )?;
    }

    let mut summary: Vec<String> = Vec::new();
    for (name, desc) in &sets {
        let line = match desc {
            SpectrumDescriptor::Circle { radius } => {
                format!("{name}: circle of radius {radius:.16e}")
            }
            SpectrumDescriptor::Disk { radius } => {
                format!("{name}: closed disk of radius {radius:.16e}")
            }
            SpectrumDescriptor::Curve { samples } => {
                format!("{name}: curve with {} samples", samples.len())
            }
            SpectrumDescriptor::RootLift { q, .. } => {
                format!("{name}: {q}-fold root lift (see spectrum.csv)")
            }
            SpectrumDescriptor::PointCloud { points } => {
                format!("{name}: {} points", points.len())
            }
        };
        summary.push(line);
    }
    summary.extend(notes);
    let text = summary.join("\n") + "\n";
    print!("{text}");
    write_text(&args.out.join("report.txt"), &text)?;

    let records: Vec<serde_json::Value> = sets
        .iter()
        .map(|(name, d)| {
            serde_json::json!({
                "set": name,
                "descriptor": d.to_record(resolution.min(256)),
            })
        })
        .collect();
    write_text(
        &args.out.join("report.struct"),
        &serde_json::to_string_pretty(&records).expect("descriptor records"),
    )?;
    Ok(0)
}

fn cmd_verify(args: &CommonArgs) -> Result<i32, Error> {
    let cfg = ExperimentConfig::load(&args.config)?;
    let catalog = bundled_catalog()?;
    let which: Vec<String> = match (&args.check, &cfg.verify) {
        (Some(name), _) => vec![name.clone()],
        (None, Some(v)) if !v.checks.is_empty() => v.checks.clone(),
        _ => vec!["all".into()],
    };
    let reports = run_checks(&catalog, &which, args.seed)?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    text.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    print!("{text}");
    write_text(&args.out.join("report.txt"), &text)?;
    write_text(
        &args.out.join("report.struct"),
        &serde_json::to_string_pretty(&reports).expect("reports"),
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Index(args) => cmd_index(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
