//! Check orchestration: builds the model, runs the requested checks in
//! dependency order, and aggregates exact residual strings and numeric
//! residual numbers into a [`VerificationReport`].

use crate::parse::parse_seed_expression;
use crate::report::{CheckRecord, Environment, ModelEcho, VerificationReport, SCHEMA_VERSION};
use crate::spec::{Check, ModelSpec, SeedSpec};
use cpspin::heisenberg::{
    congruence_test, constrained_el_exact, dynamics_residual_eval, dynamics_residual_exact,
    AlphaField, LatticeConfig, Region,
};
use cpspin::numeric::{random_unitary, sample_points, SampleMode};
use cpspin::sigma::SigmaModel;
use cpspin::veronese::{
    algebraic_lower_immersion, algebraic_lower_projector, algebraic_raise_immersion,
    algebraic_raise_projector, apply_ladder, decompose_spin, ladder_rhs, spherical_convention_report,
    spin_components, LadderOp, PauliBasis, SpinDecomposition,
};
use cpspin::scalar::Ring;
use cpspin::{Rf, VectorRf, C64};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Passed,
    Failed,
    /// Ran, produced a legitimate negative (e.g. no decomposition exists):
    /// dependents are skipped without failing the run.
    NegativeData,
}

struct Runner {
    records: Vec<CheckRecord>,
    timings: BTreeMap<String, u64>,
    outcomes: BTreeMap<&'static str, Outcome>,
}

impl Runner {
    fn push_all(&mut self, check: Check, records: Vec<CheckRecord>, negative_data: bool) {
        let all_pass = records.iter().all(|r| r.pass);
        let outcome = if !all_pass {
            Outcome::Failed
        } else if negative_data {
            Outcome::NegativeData
        } else {
            Outcome::Passed
        };
        self.outcomes.insert(check.name(), outcome);
        self.records.extend(records);
    }
}

/// Runs every requested check over a freshly built model. Module errors
/// surface as failed records, never as a crash; the process exit code is
/// nonzero exactly when some record fails.
pub fn run_pipeline(spec: &ModelSpec) -> VerificationReport {
    let total_start = Instant::now();
    let mut runner = Runner {
        records: Vec::new(),
        timings: BTreeMap::new(),
        outcomes: BTreeMap::new(),
    };

    // Heisenberg consumes the alpha field that only the decomposition
    // produces; pull it in when needed.
    let mut selected: Vec<Check> = Check::ALL
        .iter()
        .copied()
        .filter(|c| spec.checks.contains(c))
        .collect();
    if selected.contains(&Check::Heisenberg) && !selected.contains(&Check::Decomposition) {
        selected.push(Check::Decomposition);
        selected.sort();
    }

    let model = build_model(spec);
    let model = match model {
        Ok(m) => m,
        Err(msg) => {
            runner.records.push(
                CheckRecord::exact("build", false, msg.clone())
                    .with_details(json!({ "error": msg })),
            );
            for check in &selected {
                runner.records.push(CheckRecord::blocked(
                    check.name(),
                    "exact",
                    "model construction failed",
                ));
            }
            return finish(spec, None, runner, total_start);
        }
    };

    let mut decomposition: Option<SpinDecomposition> = None;
    for check in selected.clone() {
        // Skip dependents of failures; dependents of legitimate negative
        // outcomes are skipped without failing.
        let blocked_by = check.dependencies().iter().find(|dep| {
            matches!(runner.outcomes.get(dep.name()), Some(Outcome::Failed))
        });
        if let Some(dep) = blocked_by {
            runner.records.push(CheckRecord::blocked(
                check.name(),
                "exact",
                format!("dependency '{}' failed", dep.name()),
            ));
            runner.outcomes.insert(check.name(), Outcome::Failed);
            continue;
        }
        let negative_dep = check.dependencies().iter().find(|dep| {
            matches!(runner.outcomes.get(dep.name()), Some(Outcome::NegativeData))
        });
        if let Some(dep) = negative_dep {
            runner.records.push(CheckRecord::skipped(
                check.name(),
                "exact",
                format!("'{}' reported no usable data for this seed", dep.name()),
            ));
            runner.outcomes.insert(check.name(), Outcome::NegativeData);
            continue;
        }

        let start = Instant::now();
        let (records, negative) = match check {
            Check::Constraints => (run_constraints(&model), false),
            Check::El => (run_el(&model), false),
            Check::Immersion => (run_immersion(&model), false),
            Check::Spin => (run_spin(spec, &model), false),
            Check::Decomposition => {
                let (records, dec) = run_decomposition(spec, &model);
                let negative = dec.as_ref().map(|d| !d.exists).unwrap_or(true);
                decomposition = dec;
                (records, negative)
            }
            Check::Ladder => (run_ladder(spec, &model), false),
            Check::AlgebraicRecurrence => (run_algebraic(spec, &model), false),
            Check::Heisenberg => (run_heisenberg(spec, &model, decomposition.as_ref()), false),
        };
        runner
            .timings
            .insert(check.name().to_string(), start.elapsed().as_millis() as u64);
        runner.push_all(check, records, negative);
    }

    finish(spec, Some(&model), runner, total_start)
}

fn finish(
    spec: &ModelSpec,
    model: Option<&SigmaModel>,
    mut runner: Runner,
    total_start: Instant,
) -> VerificationReport {
    runner
        .timings
        .insert("total".into(), total_start.elapsed().as_millis() as u64);
    VerificationReport {
        schema: SCHEMA_VERSION,
        model: ModelEcho {
            two_s: spec.two_s,
            n: model.map(SigmaModel::n).unwrap_or(spec.two_s as usize + 1),
            seed: spec.seed.describe(),
            checks: spec.checks.iter().map(|c| c.name().to_string()).collect(),
            seed_rng: spec.seed_rng,
        },
        checks: runner.records,
        environment: Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seeds: BTreeMap::from([("rng".to_string(), spec.seed_rng)]),
            timings: runner.timings,
        },
    }
}

pub fn build_model(spec: &ModelSpec) -> Result<SigmaModel, String> {
    match &spec.seed {
        SeedSpec::Veronese => SigmaModel::veronese(spec.two_s).map_err(|e| e.to_string()),
        SeedSpec::Explicit(parts) => {
            let mut entries = Vec::with_capacity(parts.len());
            for part in parts {
                let poly =
                    parse_seed_expression(part).map_err(|e| format!("seed '{part}': {e}"))?;
                entries.push(Rf::from_poly(poly));
            }
            SigmaModel::build(spec.two_s, &VectorRf::new(entries)).map_err(|e| e.to_string())
        }
    }
}

fn run_constraints(model: &SigmaModel) -> Vec<CheckRecord> {
    let report = model.verify_constraints();
    let pass = report.is_ok();
    let residual = if pass {
        "0".to_string()
    } else {
        report.failures[0].clone()
    };
    vec![CheckRecord::exact("constraints", pass, residual)
        .with_details(json!({ "failures": report.failures }))]
}

fn run_el(model: &SigmaModel) -> Vec<CheckRecord> {
    let mut failures = Vec::new();
    let mut per_k = Vec::new();
    for k in 0..model.n() {
        match model.verify_el(k) {
            Ok(r) => {
                per_k.push(json!({
                    "k": k,
                    "commutator_zero": r.commutator_is_zero,
                    "conservation_zero": r.conservation_is_zero,
                }));
                if !r.is_zero() {
                    failures.push(format!("nonzero E-L or conservation residual at k={k}"));
                }
            }
            Err(e) => failures.push(format!("k={k}: {e}")),
        }
    }
    let pass = failures.is_empty();
    let residual = if pass { "0".into() } else { failures[0].clone() };
    vec![CheckRecord::exact("el", pass, residual)
        .with_details(json!({ "per_k": per_k, "failures": failures }))]
}

fn run_immersion(model: &SigmaModel) -> Vec<CheckRecord> {
    match model.verify_immersions() {
        Ok(report) => {
            let pass = report.is_ok();
            let residual = if pass {
                "0".to_string()
            } else {
                report.failures[0].clone()
            };
            let mut details = json!({ "failures": report.failures });
            if model.n() == 2 {
                let coincide = model.immersion(0).unwrap() == model.immersion(1).unwrap();
                details["x0_equals_x1"] = json!(coincide);
            }
            vec![CheckRecord::exact("immersion", pass, residual).with_details(details)]
        }
        Err(e) => vec![CheckRecord::exact("immersion", false, e.to_string())],
    }
}

fn run_spin(spec: &ModelSpec, model: &SigmaModel) -> Vec<CheckRecord> {
    match model.spin_properties(&spec.tolerances, spec.seed_rng.wrapping_add(1)) {
        Ok(props) => {
            let exact_pass =
                props.trace_is_zero && props.killing_ok && props.minpoly_is_zero && props.parity_ok;
            let exact = CheckRecord::exact(
                "spin",
                exact_pass,
                if exact_pass { "0" } else { "spin property failed" },
            )
            .with_details(json!({
                "trace_is_zero": props.trace_is_zero,
                "killing_ok": props.killing_ok,
                "killing_value": props.killing_value.to_string(),
                "minpoly_is_zero": props.minpoly_is_zero,
                "det_is_zero": props.det_is_zero,
                "parity_ok": props.parity_ok,
            }));
            let rank = CheckRecord::numeric(
                "spin.rank",
                props.rank_ok,
                (props.numeric_rank as f64) - (props.expected_rank as f64),
            )
            .with_details(json!({
                "numeric_rank": props.numeric_rank,
                "expected_rank": props.expected_rank,
                "svd_threshold": spec.tolerances.rank_svd_threshold,
            }));
            vec![exact, rank]
        }
        Err(e) => vec![CheckRecord::exact("spin", false, e.to_string())],
    }
}

fn run_decomposition(
    spec: &ModelSpec,
    model: &SigmaModel,
) -> (Vec<CheckRecord>, Option<SpinDecomposition>) {
    let basis = match PauliBasis::new(spec.two_s) {
        Ok(b) => b,
        Err(e) => {
            return (
                vec![CheckRecord::exact("decomposition", false, e.to_string())],
                None,
            )
        }
    };
    let dec = match decompose_spin(model.spin_matrix(), &basis) {
        Ok(d) => d,
        Err(e) => {
            return (
                vec![CheckRecord::exact("decomposition", false, e.to_string())],
                None,
            )
        }
    };
    let mut records = Vec::new();
    if dec.exists {
        let norm_zero = dec.normalization_residual().is_zero();
        records.push(
            CheckRecord::exact("decomposition", norm_zero, if norm_zero { "0" } else { "4 alpha.alpha != 1" })
                .with_details(json!({
                    "exists": true,
                    "alpha_x": dec.alpha[0].to_string(),
                    "alpha_y": dec.alpha[1].to_string(),
                    "alpha_z": dec.alpha[2].to_string(),
                })),
        );
        match spherical_convention_report(&dec, spec.seed_rng.wrapping_add(2), 100) {
            Ok(sph) => {
                let pass = sph.equator_max_theta_dev < 1e-12 && sph.theta_convention.is_some();
                records.push(
                    CheckRecord::numeric("decomposition.spherical", pass, sph.equator_max_theta_dev)
                        .with_details(json!({
                            "theta_convention": sph.theta_convention.map(|c| format!("{c:?}")),
                            "phi_convention": sph.phi_convention.map(|c| format!("{c:?}")),
                            "printed_closed_form": "theta = 2 arctan|xi|, phi = -arg xi",
                            "origin_alpha": sph.origin_alpha,
                            "origin_alpha_expected": [0.0, 0.0, -0.5],
                            "max_theta_dev": sph.max_theta_dev,
                            "max_phi_dev": sph.max_phi_dev,
                        })),
                );
            }
            Err(e) => {
                records.push(CheckRecord::numeric("decomposition.spherical", false, f64::NAN)
                    .with_details(json!({ "error": e.to_string() })));
            }
        }
    } else {
        // A negative outcome is itself the verified result here; record the
        // offending entries exactly.
        let n = model.n();
        let mut offenders = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !dec.residual.at(i, j).is_zero() {
                    offenders.push(json!({
                        "row": i + 1,
                        "col": j + 1,
                        "value": dec.residual.at(i, j).to_string(),
                    }));
                }
            }
        }
        records.push(
            CheckRecord::exact("decomposition", true, "decomposition does not exist")
                .with_details(json!({ "exists": false, "nonzero_residual_entries": offenders })),
        );
        records.push(CheckRecord::skipped(
            "decomposition.spherical",
            "numeric",
            "no decomposition exists for this seed",
        ));
    }
    (records, Some(dec))
}

fn run_ladder(spec: &ModelSpec, model: &SigmaModel) -> Vec<CheckRecord> {
    if !spec.seed.is_veronese() {
        return vec![CheckRecord::skipped(
            "ladder",
            "exact",
            "ladder identities apply to the veronese chain",
        )];
    }
    let two_s = spec.two_s;
    let mut failures = Vec::new();
    match spin_components(two_s) {
        Ok(comps) => {
            if comps.sz != *model.spin_matrix() {
                failures.push("S^z closed form differs from the chain spin matrix".to_string());
            }
            if comps.minus != comps.plus.dagger() {
                failures.push("S^- != (S^+)†".to_string());
            }
            match comps.sz.commutator(&comps.plus) {
                Ok(c) if c == comps.plus => {}
                _ => failures.push("[S^z, S^+] != S^+".to_string()),
            }
            match comps.sz.commutator(&comps.minus) {
                Ok(c) if c == comps.minus.map(|e| std::ops::Neg::neg(e.clone())) => {}
                _ => failures.push("[S^z, S^-] != -S^-".to_string()),
            }
            match comps.plus.commutator(&comps.minus) {
                Ok(c) if c == comps.sz.scalar_mul(&Rf::from_integer(2)) => {}
                _ => failures.push("[S^+, S^-] != 2 S^z".to_string()),
            }
            for k in 0..=two_s {
                for op in [LadderOp::Plus, LadderOp::Minus] {
                    let ok = match (apply_ladder(op, k, two_s, &comps), ladder_rhs(op, k, two_s)) {
                        (Ok(lhs), Ok(rhs)) => lhs == rhs,
                        _ => false,
                    };
                    if !ok {
                        failures.push(format!("ladder {op:?} at k={k} mismatch"));
                    }
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    let pass = failures.is_empty();
    let residual = if pass { "0".into() } else { failures[0].clone() };
    vec![CheckRecord::exact("ladder", pass, residual)
        .with_details(json!({ "failures": failures }))]
}

fn run_algebraic(spec: &ModelSpec, model: &SigmaModel) -> Vec<CheckRecord> {
    if !spec.seed.is_veronese() {
        return vec![CheckRecord::skipped(
            "algebraic-recurrence",
            "exact",
            "algebraic recurrences apply to the veronese chain",
        )];
    }
    let two_s = spec.two_s as usize;
    let mut failures = Vec::new();
    match spin_components(spec.two_s) {
        Ok(comps) => {
            for k in 0..two_s {
                match algebraic_raise_projector(model.projector(k).unwrap(), &comps, k) {
                    Ok(p) if p == *model.projector(k + 1).unwrap() => {}
                    _ => failures.push(format!("algebraic raise of P_{k} differs")),
                }
                match algebraic_raise_immersion(
                    model.immersion(k).unwrap(),
                    model.projector(k).unwrap(),
                    &comps,
                    k,
                ) {
                    Ok(x) if x == *model.immersion(k + 1).unwrap() => {}
                    _ => failures.push(format!("algebraic raise of X_{k} differs")),
                }
            }
            for k in 1..=two_s {
                match algebraic_lower_projector(model.projector(k).unwrap(), &comps, k) {
                    Ok(p) if p == *model.projector(k - 1).unwrap() => {}
                    _ => failures.push(format!("algebraic lower of P_{k} differs")),
                }
                match algebraic_lower_immersion(
                    model.immersion(k).unwrap(),
                    model.projector(k).unwrap(),
                    &comps,
                    k,
                ) {
                    Ok(x) if x == *model.immersion(k - 1).unwrap() => {}
                    _ => failures.push(format!("algebraic lower of X_{k} differs")),
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    let pass = failures.is_empty();
    let residual = if pass { "0".into() } else { failures[0].clone() };
    vec![CheckRecord::exact("algebraic-recurrence", pass, residual)
        .with_details(json!({ "failures": failures }))]
}

fn run_heisenberg(
    spec: &ModelSpec,
    model: &SigmaModel,
    dec: Option<&SpinDecomposition>,
) -> Vec<CheckRecord> {
    let Some(dec) = dec.filter(|d| d.exists) else {
        return vec![CheckRecord::skipped(
            "heisenberg",
            "exact",
            "no decomposition exists for this seed",
        )];
    };
    let alpha = match AlphaField::from_exact(dec.alpha.clone()) {
        Ok(a) => a,
        Err(e) => return vec![CheckRecord::exact("heisenberg", false, e.to_string())],
    };
    let mut records = Vec::new();

    // Exact spin-dynamics equation.
    match dynamics_residual_exact(&alpha) {
        Ok(r) => {
            let pass = r.iter().all(Rf::is_zero);
            records.push(
                CheckRecord::exact(
                    "heisenberg.dynamics",
                    pass,
                    if pass { "0" } else { "alpha x alpha_ddbar != 0" },
                )
                .with_details(json!({
                    "components_zero": r.iter().map(Rf::is_zero).collect::<Vec<_>>(),
                })),
            );
        }
        Err(e) => records.push(CheckRecord::exact("heisenberg.dynamics", false, e.to_string())),
    }

    // Numeric mirror of the same equation at 100 conjugate points.
    let points: Vec<C64> = sample_points(
        100,
        SampleMode::Conjugate,
        spec.seed_rng.wrapping_add(3),
    )
    .iter()
    .map(|p| p.xi)
    .collect();
    match dynamics_residual_eval(&alpha, &points) {
        Ok(worst) => {
            let pass = worst < spec.tolerances.identity_rtol;
            records.push(
                CheckRecord::numeric("heisenberg.dynamics-numeric", pass, worst).with_details(
                    json!({ "points": points.len(), "tolerance": spec.tolerances.identity_rtol }),
                ),
            );
        }
        Err(e) => records.push(CheckRecord::numeric("heisenberg.dynamics-numeric", false, f64::NAN)
            .with_details(json!({ "error": e.to_string() }))),
    }

    // Full constrained E-L equation with the multiplier.
    match constrained_el_exact(&alpha) {
        Ok(el) => {
            let pass = el.residual.iter().all(Rf::is_zero) && el.mu.is_sigma_real();
            records.push(
                CheckRecord::exact(
                    "heisenberg.constrained-el",
                    pass,
                    if pass { "0" } else { "(I - 4 alpha alpha) alpha_ddbar != 0" },
                )
                .with_details(json!({ "mu": el.mu.to_string() })),
            );
        }
        Err(e) => {
            records.push(CheckRecord::exact("heisenberg.constrained-el", false, e.to_string()))
        }
    }

    // Congruence under seeded random constant unitaries.
    match PauliBasis::new(spec.two_s) {
        Ok(basis) => {
            let sigma = basis.to_numeric();
            let mut worst = 0.0f64;
            let mut unitary_seeds = Vec::new();
            let mut failure = None;
            for idx in 0..4u64 {
                let seed = spec.seed_rng.wrapping_add(100 + idx);
                unitary_seeds.push(seed);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let u = random_unitary(model.n(), &mut rng);
                match congruence_test(&sigma, &alpha, &u, &points, spec.tolerances.fd_step) {
                    Ok(rep) => {
                        worst = worst
                            .max(rep.max_basis_commutator_residual)
                            .max(rep.max_spin_commutator_residual)
                            .max(rep.max_dynamics_residual);
                    }
                    Err(e) => failure = Some(e.to_string()),
                }
            }
            match failure {
                None => {
                    let pass = worst < spec.tolerances.residual_atol;
                    records.push(
                        CheckRecord::numeric("heisenberg.congruence", pass, worst).with_details(
                            json!({
                                "unitary_seeds": unitary_seeds,
                                "points": points.len(),
                                "tolerance": spec.tolerances.residual_atol,
                            }),
                        ),
                    );
                }
                Some(e) => records.push(
                    CheckRecord::numeric("heisenberg.congruence", false, f64::NAN)
                        .with_details(json!({ "error": e })),
                ),
            }
        }
        Err(e) => records.push(CheckRecord::numeric("heisenberg.congruence", false, f64::NAN)
            .with_details(json!({ "error": e.to_string() }))),
    }

    // Lattice stationarity through the substitution, three spacings.
    let cfg = LatticeConfig {
        j1: 1.0,
        j2: 1.0,
        j3: 0.25,
        a: 0.05,
        b: 0.05,
        nx: 24,
        ny: 24,
        region: Region {
            x0: -0.6,
            y0: -0.6,
            x1: 0.6,
            y1: 0.6,
        },
    };
    let spacings = [0.04, 0.02, 0.01];
    match cpspin::heisenberg::lattice_stationarity(&cfg, &alpha, &spacings) {
        Ok(rep) => {
            let pass = !rep.ratios.is_empty() && rep.ratios.iter().all(|r| (3.2..4.8).contains(r));
            let smallest = rep
                .residual_by_spacing
                .last()
                .map(|r| r.max_residual)
                .unwrap_or(f64::NAN);
            records.push(
                CheckRecord::numeric("heisenberg.lattice", pass, smallest).with_details(json!({
                    "config": cfg,
                    "report": rep,
                    "ratio_window": [3.2, 4.8],
                })),
            );
        }
        Err(e) => records.push(
            CheckRecord::numeric("heisenberg.lattice", false, f64::NAN)
                .with_details(json!({ "error": e.to_string() })),
        ),
    }

    records
}
