use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cpspin_cli::export::{export_field, krawtchouk_table, print_model};
use cpspin_cli::parse::parse_rational;
use cpspin_cli::pipeline::run_pipeline;
use cpspin_cli::spec::{parse_checks, ModelSpec, SeedSpec};
use std::path::PathBuf;

/// Exact + numeric verification of CP^{2s} sigma-model projector chains and
/// their su(2) spin matrices.
#[derive(Parser)]
#[command(name = "cpspin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Flat key = value spec file (two_s, seed, checks, seed_rng, tolerances).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// 2s (N = 2s + 1); overrides the spec file.
    #[arg(long)]
    two_s: Option<u32>,
    /// "veronese" or a comma-separated list of holomorphic components.
    #[arg(long)]
    seed: Option<String>,
    /// RNG seed recorded in the report.
    #[arg(long)]
    rng_seed: Option<u64>,
}

impl ModelArgs {
    fn resolve(&self, checks: Option<&str>) -> Result<ModelSpec> {
        let mut spec = match &self.spec {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading spec file {}", path.display()))?;
                ModelSpec::from_spec_text(&text)?
            }
            None => {
                let two_s = self
                    .two_s
                    .context("either --spec or --two-s is required")?;
                ModelSpec::new(two_s, SeedSpec::Veronese)
            }
        };
        if let Some(two_s) = self.two_s {
            spec.two_s = two_s;
        }
        if let Some(seed) = &self.seed {
            spec.seed = SeedSpec::parse(seed);
        }
        if let Some(rng) = self.rng_seed {
            spec.seed_rng = rng;
        }
        if let Some(checks) = checks {
            spec.checks = parse_checks(checks).map_err(anyhow::Error::msg)?;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the chain and run verification checks; emits a JSON report.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated subset of: constraints, el, immersion, spin,
        /// decomposition, ladder, algebraic-recurrence, heisenberg; or "all".
        #[arg(long)]
        checks: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Suppress the per-check summary on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Sample the spherical spin field on a conjugate-locus grid as CSV.
    ExportField {
        #[command(flatten)]
        model: ModelArgs,
        /// Grid extents, e.g. 41x41.
        #[arg(long, default_value = "41x41")]
        grid: String,
        /// Coordinate range lo:hi applied to both axes.
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Krawtchouk table K_j(k; p, 2s) as CSV.
    Krawtchouk {
        #[arg(long)]
        two_s: u32,
        /// Rational parameter with 0 < p < 1, e.g. 1/2.
        #[arg(long)]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the chain objects (f_k, P_k, t_j, X_k, S^z) as text.
    PrintModel {
        #[command(flatten)]
        model: ModelArgs,
    },
}

fn write_out(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            model,
            checks,
            out,
            quiet,
        } => {
            let spec = model.resolve(checks.as_deref())?;
            let report = run_pipeline(&spec);
            write_out(out.as_ref(), &report.to_json())?;
            if !quiet {
                for line in report.summary_lines() {
                    eprintln!("{line}");
                }
            }
            if !report.all_pass() {
                std::process::exit(1);
            }
        }
        Command::ExportField {
            model,
            grid,
            range,
            out,
        } => {
            let spec = model.resolve(None)?;
            let (nx, ny) = parse_grid(&grid)?;
            let (lo, hi) = parse_range(&range)?;
            let csv = export_field(&spec, (nx, ny), (lo, hi))?;
            write_out(out.as_ref(), &csv)?;
        }
        Command::Krawtchouk { two_s, p, out } => {
            let p = parse_rational(&p).map_err(|e| anyhow::anyhow!("--p: {e}"))?;
            let csv = krawtchouk_table(two_s, &p)?;
            write_out(out.as_ref(), &csv)?;
        }
        Command::PrintModel { model } => {
            let spec = model.resolve(None)?;
            print!("{}", print_model(&spec)?);
        }
    }
    Ok(())
}

fn parse_grid(text: &str) -> Result<(usize, usize)> {
    let Some((a, b)) = text.split_once(['x', 'X']) else {
        bail!("--grid expects NXxNY, e.g. 41x41");
    };
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let Some((a, b)) = text.split_once(':') else {
        bail!("--range expects lo:hi, e.g. -2:2");
    };
    let lo: f64 = a.trim().parse()?;
    let hi: f64 = b.trim().parse()?;
    if lo >= hi {
        bail!("--range needs lo < hi");
    }
    Ok((lo, hi))
}
