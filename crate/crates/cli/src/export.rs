//! CSV exports: the sampled spherical spin field on a conjugate-locus grid,
//! the Krawtchouk table, and the plain-text model dump.

use crate::pipeline::build_model;
use crate::spec::ModelSpec;
use cpspin::veronese::{
    krawtchouk_rational, krawtchouk_rf, spherical_at, veronese_decomposition,
    KrawtchoukEvaluator,
};
use cpspin::{Rational, C64};
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ExportError {
    #[error("model construction failed: {0}")]
    Build(String),
    #[error("the spin matrix of this model has no Pauli-basis decomposition")]
    NoDecomposition,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("{0}")]
    Other(String),
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV columns x, y, alpha_x, alpha_y, alpha_z, theta, phi on an
/// evenly-spaced conjugate-locus grid, row-major, 17 significant digits.
pub fn export_field(
    spec: &ModelSpec,
    grid: (usize, usize),
    range: (f64, f64),
) -> Result<String, ExportError> {
    let (nx, ny) = grid;
    if nx < 1 || ny < 1 {
        return Err(ExportError::ParameterOutOfRange("empty grid".into()));
    }
    let model = build_model(spec).map_err(ExportError::Build)?;
    let dec = veronese_decomposition(&model).map_err(|e| ExportError::Other(e.to_string()))?;
    if !dec.exists {
        return Err(ExportError::NoDecomposition);
    }
    let (lo, hi) = range;
    let step = |i: usize, n: usize| {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = String::from("x,y,alpha_x,alpha_y,alpha_z,theta,phi\n");
    for i in 0..nx {
        let x = step(i, nx);
        for j in 0..ny {
            let y = step(j, ny);
            let sp = spherical_at(&dec, C64::new(x, y))
                .map_err(|e| ExportError::Other(e.to_string()))?;
            let phi = sp.phi.unwrap_or(f64::NAN);
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt17(x),
                fmt17(y),
                fmt17(sp.alpha[0]),
                fmt17(sp.alpha[1]),
                fmt17(sp.alpha[2]),
                fmt17(sp.theta),
                fmt17(phi)
            )
            .expect("string write");
        }
    }
    Ok(out)
}

/// CSV rows (j, k, exact value, float64 value) for 0 <= j, k <= 2s at an
/// exact rational p with 0 < p < 1.
pub fn krawtchouk_table(two_s: u32, p: &Rational) -> Result<String, ExportError> {
    if p <= &Rational::zero() || p >= &Rational::one() {
        return Err(ExportError::ParameterOutOfRange(format!(
            "p = {p} outside (0, 1)"
        )));
    }
    let mut out = String::from("j,k,exact,float\n");
    for j in 0..=two_s {
        for k in 0..=two_s {
            let exact = krawtchouk_rational(j, k, two_s, p)
                .map_err(|e| ExportError::Other(e.to_string()))?;
            let float = exact.to_f64().unwrap_or(f64::NAN);
            writeln!(out, "{j},{k},{exact},{}", fmt17(float)).expect("string write");
        }
    }
    Ok(out)
}

/// Human-readable dump of the whole chain: f_k, P_k, t_j, X_k and S^z.
pub fn print_model(spec: &ModelSpec) -> Result<String, ExportError> {
    let model = build_model(spec).map_err(ExportError::Build)?;
    let mut out = String::new();
    let n = model.n();
    writeln!(out, "CP^{} model, N = {n}, seed: {}", n - 1, spec.seed.describe()).unwrap();
    for k in 0..n {
        writeln!(out, "\nf_{k}:").unwrap();
        for (i, e) in model.homogeneous(k).unwrap().iter().enumerate() {
            writeln!(out, "  [{i}] {e}").unwrap();
        }
    }
    for (j, t) in model.recurrence_scalars().iter().enumerate() {
        writeln!(out, "\nt_{j} = {t}").unwrap();
    }
    for k in 0..n {
        writeln!(out, "\nP_{k}:\n{}", model.projector(k).unwrap()).unwrap();
    }
    for k in 0..n {
        writeln!(out, "\nX_{k}:\n{}", model.immersion(k).unwrap()).unwrap();
    }
    writeln!(out, "\nS^z:\n{}", model.spin_matrix()).unwrap();
    // symbolic Krawtchouk table at the chain parameter, for reference
    let eval = KrawtchoukEvaluator::chain(spec.two_s);
    writeln!(out, "\nKrawtchouk K_j(k) at p = {}:", eval.parameter()).unwrap();
    for j in 0..=spec.two_s {
        for k in 0..=spec.two_s {
            let value = krawtchouk_rf(j, k, spec.two_s, eval.parameter())
                .map_err(|e| ExportError::Other(e.to_string()))?;
            writeln!(out, "  K_{j}({k}) = {value}").unwrap();
        }
    }
    Ok(out)
}
