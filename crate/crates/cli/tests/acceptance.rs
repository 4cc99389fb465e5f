//! Acceptance suite: one test per criterion, printing one PASS/FAIL line
//! each. Run with `cargo test -p cpspin-cli --test acceptance` (add
//! `-- --nocapture --test-threads=1` to watch the lines in order).

use cpspin::heisenberg::{
    congruence_test, constrained_el_exact, dynamics_residual_eval, dynamics_residual_exact,
    AlphaField, LatticeConfig, Region,
};
use cpspin::numeric::{random_unitary, sample_points, SampleMode, ToleranceConfig};
use cpspin::poly::Var;
use cpspin::sigma::{projector_from_vector, SigmaModel};
use cpspin::veronese::{
    algebraic_lower_immersion, algebraic_lower_projector, algebraic_raise_immersion,
    algebraic_raise_projector, apply_ladder, closed_form_f, krawtchouk_orthogonality_residual,
    ladder_rhs, spherical_at, spherical_convention_report, spin_components,
    veronese_decomposition, LadderOp, PauliBasis, ThetaConvention,
};
use cpspin::{C64, MatrixRf, RadicalScalar, Rf, VectorRf};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::Neg;
use std::time::Instant;

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number:02} ({name}): {status} — {detail}");
    assert!(pass, "criterion {number:02} ({name}) failed: {detail}");
}

fn rf_int(n: i64) -> Rf {
    Rf::from_scalar(RadicalScalar::from_integer(n))
}

fn xi() -> Rf {
    Rf::variable(Var::Xi)
}

fn xibar() -> Rf {
    Rf::variable(Var::XiBar)
}

#[test]
fn criterion_01_counterexample_reproduction() {
    let start = Instant::now();
    let seed = VectorRf::new(vec![rf_int(1), xi(), &xi() * &xi()]);
    let model = SigmaModel::build(2, &seed).unwrap();
    let dec = veronese_decomposition(&model).unwrap();
    // expected (1,3) element: -3 xi xibar^3 / [(xi^2 xibar^2 + xi xibar + 1)(xi^2 xibar^2 + 4 xi xibar + 1)]
    let xx = &xi() * &xibar();
    let num = &rf_int(-3) * &(&xi() * &(&(&xibar() * &xibar()) * &xibar()));
    let d1 = &(&(&xx * &xx) + &xx) + &rf_int(1);
    let d2 = &(&(&xx * &xx) + &(&rf_int(4) * &xx)) + &rf_int(1);
    let expected = &num / &(&d1 * &d2);
    let equal = dec
        .residual
        .at(0, 2)
        .try_equal(&expected)
        .expect("within degree cap");
    let elapsed = start.elapsed();
    report(
        1,
        "counterexample reproduction",
        !dec.exists && equal && elapsed.as_secs_f64() < 10.0,
        &format!(
            "exists={}, (1,3) element matches by rf_equal={equal}, runtime {:.2}s < 10s",
            dec.exists,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_02_veronese_chain_integrity() {
    let start = Instant::now();
    let mut all_ok = true;
    let mut detail = String::new();
    for two_s in 1..=5u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        let constraints = model.verify_constraints();
        let mut el_ok = true;
        for k in 0..model.n() {
            let r = model.verify_el(k).unwrap();
            el_ok &= r.commutator_is_zero && r.conservation_is_zero;
        }
        let ok = constraints.is_ok() && el_ok;
        all_ok &= ok;
        detail.push_str(&format!("2s={two_s}:{} ", if ok { "ok" } else { "FAIL" }));
    }
    let elapsed = start.elapsed();
    report(
        2,
        "veronese chain integrity",
        all_ok && elapsed.as_secs_f64() < 300.0,
        &format!("{detail}— exact, runtime {:.1}s < 300s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_03_spin_matrix_properties() {
    let tol = ToleranceConfig::default();
    let mut all_ok = true;
    let mut detail = String::new();
    for two_s in 1..=5u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        let props = model.spin_properties(&tol, 1000 + two_s as u64).unwrap();
        let ok = props.trace_is_zero
            && props.killing_ok
            && props.minpoly_is_zero
            && props.parity_ok
            && props.rank_ok;
        all_ok &= ok;
        detail.push_str(&format!(
            "2s={two_s}: rank {}/{} killing {} ",
            props.numeric_rank,
            props.expected_rank,
            props.killing_value
        ));
        if two_s == 3 {
            all_ok &= props.killing_value == Rf::from_scalar(RadicalScalar::from_ratio(5, 4));
        }
    }
    report(3, "spin-matrix properties", all_ok, detail.trim());
}

#[test]
fn criterion_04_immersion_sum_identity() {
    let mut all_ok = true;
    for two_s in 1..=5u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        // S^z = (-i/2) sum_k X_k, exactly
        let mut sum = MatrixRf::zeros(model.n(), model.n());
        for k in 0..model.n() {
            sum = &sum + model.immersion(k).unwrap();
        }
        let half_minus_i = Rf::from_scalar(
            RadicalScalar::imaginary_unit()
                .scale_rational(&cpspin::Rational::new((-1).into(), 2.into())),
        );
        all_ok &= sum.scalar_mul(&half_minus_i) == *model.spin_matrix();
    }
    // X_0 = X_1 for 2s = 1
    let cp1 = SigmaModel::veronese(1).unwrap();
    let coincide = cp1.immersion(0).unwrap() == cp1.immersion(1).unwrap();
    all_ok &= coincide;
    report(
        4,
        "spin equals immersion sum",
        all_ok,
        &format!("S^z = (-i/2) sum X_k for 2s = 1..5; X_0 = X_1 at 2s=1: {coincide}"),
    );
}

#[test]
fn criterion_05_su2_structure_and_recurrences() {
    let mut all_ok = true;
    let mut notes = Vec::new();
    for two_s in 1..=5u32 {
        let comps = spin_components(two_s).unwrap();
        let model = SigmaModel::veronese(two_s).unwrap();
        let mut ok = comps.sz == *model.spin_matrix();
        ok &= comps.minus == comps.plus.dagger();
        ok &= comps.sz.commutator(&comps.plus).unwrap() == comps.plus;
        ok &= comps.sz.commutator(&comps.minus).unwrap()
            == comps.minus.map(|e| e.clone().neg());
        ok &= comps.plus.commutator(&comps.minus).unwrap() == comps.sz.scalar_mul(&rf_int(2));
        for k in 0..=two_s {
            for op in [LadderOp::Plus, LadderOp::Minus] {
                ok &= apply_ladder(op, k, two_s, &comps).unwrap()
                    == ladder_rhs(op, k, two_s).unwrap();
            }
        }
        for k in 0..two_s as usize {
            ok &= algebraic_raise_projector(model.projector(k).unwrap(), &comps, k).unwrap()
                == *model.projector(k + 1).unwrap();
            ok &= algebraic_raise_immersion(
                model.immersion(k).unwrap(),
                model.projector(k).unwrap(),
                &comps,
                k,
            )
            .unwrap()
                == *model.immersion(k + 1).unwrap();
        }
        for k in 1..=two_s as usize {
            ok &= algebraic_lower_projector(model.projector(k).unwrap(), &comps, k).unwrap()
                == *model.projector(k - 1).unwrap();
            ok &= algebraic_lower_immersion(
                model.immersion(k).unwrap(),
                model.projector(k).unwrap(),
                &comps,
                k,
            )
            .unwrap()
                == *model.immersion(k - 1).unwrap();
        }
        all_ok &= ok;
        notes.push(format!("2s={two_s}:{}", if ok { "ok" } else { "FAIL" }));
    }
    report(
        5,
        "su(2) structure, ladder and algebraic recurrences",
        all_ok,
        &format!("exact, zero tolerance — {}", notes.join(" ")),
    );
}

#[test]
fn criterion_06_closed_form_krawtchouk_equivalence() {
    let mut all_ok = true;
    for two_s in 1..=5u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        for k in 0..=two_s {
            let p = projector_from_vector(&closed_form_f(k, two_s).unwrap()).unwrap();
            all_ok &= p == *model.projector(k as usize).unwrap();
        }
        for k in 0..=two_s {
            for kp in 0..=two_s {
                let r = krawtchouk_orthogonality_residual(two_s, k, kp).unwrap();
                all_ok &= if k == kp { !r.is_zero() } else { r.is_zero() };
            }
        }
    }
    report(
        6,
        "closed-form/Krawtchouk equivalence",
        all_ok,
        "projectors from closed-form f_k equal recurrence P_k and lattice orthogonality holds exactly in p, 2s <= 5",
    );
}

#[test]
fn criterion_07_alpha_dynamics() {
    let mut all_ok = true;
    let mut worst_numeric = 0.0f64;
    for two_s in 1..=5u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        let dec = veronese_decomposition(&model).unwrap();
        all_ok &= dec.exists && dec.normalization_residual().is_zero();
        let alpha = AlphaField::from_exact(dec.alpha).unwrap();
        let dynamics = dynamics_residual_exact(&alpha).unwrap();
        all_ok &= dynamics.iter().all(Rf::is_zero);
        let el = constrained_el_exact(&alpha).unwrap();
        all_ok &= el.residual.iter().all(Rf::is_zero);
        let points: Vec<C64> = sample_points(100, SampleMode::Conjugate, 700 + two_s as u64)
            .iter()
            .map(|p| p.xi)
            .collect();
        let numeric = dynamics_residual_eval(&alpha, &points).unwrap();
        worst_numeric = worst_numeric.max(numeric);
        all_ok &= numeric < 1e-10;
    }
    report(
        7,
        "alpha dynamics",
        all_ok,
        &format!(
            "4a.a=1, a x a_ddbar = 0, (I-4aa)a_ddbar = 0 exact for 2s <= 5; numeric max {worst_numeric:.2e} < 1e-10 at 100 points"
        ),
    );
}

#[test]
fn criterion_08_congruence_proposition() {
    let mut all_ok = true;
    let mut worst = 0.0f64;
    for n in [2usize, 3, 4] {
        let two_s = (n - 1) as u32;
        let model = SigmaModel::veronese(two_s).unwrap();
        let dec = veronese_decomposition(&model).unwrap();
        let alpha = AlphaField::from_exact(dec.alpha).unwrap();
        let basis = PauliBasis::new(two_s).unwrap();
        let sigma = basis.to_numeric();
        let points: Vec<C64> = sample_points(100, SampleMode::Conjugate, 800 + n as u64)
            .iter()
            .map(|p| p.xi)
            .collect();
        for u_idx in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(9000 + 97 * n as u64 + u_idx);
            let u = random_unitary(n, &mut rng);
            let rep = congruence_test(&sigma, &alpha, &u, &points, 1e-4).unwrap();
            let case_worst = rep
                .max_basis_commutator_residual
                .max(rep.max_spin_commutator_residual)
                .max(rep.max_dynamics_residual);
            worst = worst.max(case_worst);
            all_ok &= case_worst < 1e-8;
        }
    }
    report(
        8,
        "congruent bases keep the dynamics",
        all_ok,
        &format!("10 seeded unitaries per N in {{2,3,4}}, 100 points each; worst residual {worst:.2e} < 1e-8"),
    );
}

#[test]
fn criterion_09_lattice_convergence() {
    let start = Instant::now();
    let model = SigmaModel::veronese(2).unwrap();
    let dec = veronese_decomposition(&model).unwrap();
    let alpha = AlphaField::from_exact(dec.alpha).unwrap();
    let cfg = LatticeConfig {
        j1: 1.0,
        j2: 1.5,
        j3: 0.25,
        a: 0.05,
        b: 0.05,
        nx: 128,
        ny: 128,
        region: Region {
            x0: -0.8,
            y0: -0.8,
            x1: 0.8,
            y1: 0.8,
        },
    };
    let spacings = [0.04, 0.02, 0.01, 0.005];
    let rep = cpspin::heisenberg::lattice_stationarity(&cfg, &alpha, &spacings).unwrap();
    let ratios_ok = rep.ratios.len() >= 3 && rep.ratios.iter().all(|r| (3.2..4.8).contains(r));
    let elapsed = start.elapsed();
    report(
        9,
        "heisenberg lattice convergence",
        ratios_ok && elapsed.as_secs_f64() < 60.0,
        &format!(
            "residual ratios {:?} all in [3.2, 4.8] across 4 spacings on a 128x128 grid; runtime {:.1}s < 60s",
            rep.ratios
                .iter()
                .map(|r| (r * 100.0).round() / 100.0)
                .collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_10_spherical_field_report() {
    let model = SigmaModel::veronese(2).unwrap();
    let dec = veronese_decomposition(&model).unwrap();
    let sph = spherical_convention_report(&dec, 4242, 200).unwrap();
    // |xi| = 1 gives theta = pi/2 to 1e-12
    let mut equator_ok = sph.equator_max_theta_dev < 1e-12;
    for k in 0..8 {
        let xi = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 8.0);
        let sp = spherical_at(&dec, xi).unwrap();
        equator_ok &= (sp.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12;
    }
    let convention_stated = sph.theta_convention.is_some() && sph.phi_convention.is_some();
    let probe_ok = (sph.origin_alpha[0]).abs() < 1e-14
        && (sph.origin_alpha[1]).abs() < 1e-14
        && (sph.origin_alpha[2] + 0.5).abs() < 1e-14;
    let pass = equator_ok && convention_stated && probe_ok;
    report(
        10,
        "spherical-field report",
        pass,
        &format!(
            "theta(|xi|=1) = pi/2 to 1e-12; constructed field satisfies {:?}/{:?} (printed closed form states theta = 2 arctan|xi|, phi = -arg xi); probe alpha(0) = {:?} vs derived (0, 0, -1/2)",
            sph.theta_convention.unwrap_or(ThetaConvention::TwoArctan),
            sph.phi_convention.unwrap(),
            sph.origin_alpha
        ),
    );
}

#[test]
fn criterion_11_report_determinism() {
    let bin = env!("CARGO_BIN_EXE_cpspin");
    let run = || {
        let out = std::process::Command::new(bin)
            .args([
                "verify",
                "--two-s",
                "2",
                "--seed",
                "veronese",
                "--rng-seed",
                "7",
                "--quiet",
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "verify exited nonzero");
        String::from_utf8(out.stdout).expect("utf-8 report")
    };
    let first = run();
    let second = run();
    let strip = |text: &str| {
        let mut value: serde_json::Value = serde_json::from_str(text).expect("valid JSON");
        value["environment"]["timings"] = serde_json::json!({});
        serde_json::to_string_pretty(&value).unwrap()
    };
    let identical = strip(&first) == strip(&second);
    report(
        11,
        "report determinism",
        identical,
        "two full runs with identical seeds are byte-identical modulo the timings block",
    );
}
