//! Veronese-layer invariants: closed form vs recurrence, ladder actions,
//! algebraic recurrences, decomposition round trip, tridiagonality, and the
//! su(2) closure of congruent bases.

use cpspin::numeric::{random_unitary, sample_points, unitary_deviation, SampleMode};
use cpspin::sigma::{projector_from_vector, SigmaModel};
use cpspin::veronese::{
    algebraic_lower_immersion, algebraic_lower_projector, algebraic_raise_immersion,
    algebraic_raise_projector, apply_ladder, closed_form_f, decompose_spin, ladder_rhs,
    spin_components, veronese_decomposition, LadderOp, PauliBasis,
};
use cpspin::{C64, MatrixRf};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_projectors_match_recurrence() {
    for two_s in 1..=4u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        for k in 0..=two_s {
            let f = closed_form_f(k, two_s).unwrap();
            let p = projector_from_vector(&f).unwrap();
            assert_eq!(p, *model.projector(k as usize).unwrap(), "2s={two_s} k={k}");
        }
    }
}

#[test]
fn ladder_actions_match_neighbours() {
    for two_s in 1..=3u32 {
        let comps = spin_components(two_s).unwrap();
        for k in 0..=two_s {
            for op in [LadderOp::Plus, LadderOp::Minus] {
                let lhs = apply_ladder(op, k, two_s, &comps).unwrap();
                let rhs = ladder_rhs(op, k, two_s).unwrap();
                assert_eq!(lhs, rhs, "2s={two_s} k={k} {op:?}");
            }
        }
    }
}

#[test]
fn algebraic_recurrences_match_analytic() {
    for two_s in 1..=3u32 {
        let comps = spin_components(two_s).unwrap();
        let model = SigmaModel::veronese(two_s).unwrap();
        for k in 0..two_s as usize {
            let up = algebraic_raise_projector(model.projector(k).unwrap(), &comps, k).unwrap();
            assert_eq!(up, *model.projector(k + 1).unwrap(), "raise 2s={two_s} k={k}");
            let x_up = algebraic_raise_immersion(
                model.immersion(k).unwrap(),
                model.projector(k).unwrap(),
                &comps,
                k,
            )
            .unwrap();
            assert_eq!(x_up, *model.immersion(k + 1).unwrap(), "X raise 2s={two_s} k={k}");
        }
        for k in 1..=two_s as usize {
            let down = algebraic_lower_projector(model.projector(k).unwrap(), &comps, k).unwrap();
            assert_eq!(down, *model.projector(k - 1).unwrap(), "lower 2s={two_s} k={k}");
            let x_down = algebraic_lower_immersion(
                model.immersion(k).unwrap(),
                model.projector(k).unwrap(),
                &comps,
                k,
            )
            .unwrap();
            assert_eq!(x_down, *model.immersion(k - 1).unwrap(), "X lower 2s={two_s} k={k}");
        }
    }
}

#[test]
fn decomposition_round_trip_and_tridiagonality() {
    for two_s in 1..=4u32 {
        let model = SigmaModel::veronese(two_s).unwrap();
        let basis = PauliBasis::new(two_s).unwrap();
        let dec = decompose_spin(model.spin_matrix(), &basis).unwrap();
        assert!(dec.exists, "2s = {two_s}");
        assert!(dec.normalization_residual().is_zero());
        // alpha components are sigma-real
        for a in &dec.alpha {
            assert!(a.is_sigma_real());
        }
        // rebuild is exact
        let rebuilt = &(&basis.x.scalar_mul(&dec.alpha[0]) + &basis.y.scalar_mul(&dec.alpha[1]))
            + &basis.z.scalar_mul(&dec.alpha[2]);
        assert_eq!(rebuilt, *model.spin_matrix());
        // existence forces tridiagonality
        let n = model.n();
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1 {
                    assert!(
                        model.spin_matrix().at(i, j).is_zero(),
                        "entry ({i},{j}) not zero for 2s={two_s}"
                    );
                }
            }
        }
    }
}

#[test]
fn congruent_bases_close_under_su2_numerically() {
    // U sigma^k U^{-1} satisfies the same commutators for seeded random
    // constant unitaries, to 1e-10.
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    for two_s in 1..=3u32 {
        let basis = PauliBasis::new(two_s).unwrap();
        let sigma = basis.to_numeric();
        let n = two_s as usize + 1;
        for _ in 0..4 {
            let u = random_unitary(n, &mut rng);
            assert!(unitary_deviation(&u) < 1e-12);
            let u_inv = u.adjoint();
            let s: Vec<_> = sigma.iter().map(|m| &u * m * &u_inv).collect();
            let two_i = C64::new(0.0, 2.0);
            for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let comm = &s[a] * &s[b] - &s[b] * &s[a];
                let dev = (&comm - &(&s[c] * two_i))
                    .iter()
                    .map(|e| e.norm())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-10, "commutator deviation {dev}");
            }
        }
    }
}

#[test]
fn spin_matrix_from_components_equals_chain_spin() {
    for two_s in 1..=4u32 {
        let comps = spin_components(two_s).unwrap();
        let model = SigmaModel::veronese(two_s).unwrap();
        assert_eq!(comps.sz, *model.spin_matrix(), "2s = {two_s}");
        assert_eq!(comps.minus, comps.plus.dagger());
    }
}

#[test]
fn veronese_alpha_numeric_normalization() {
    // every evaluated alpha sample keeps 4|alpha|^2 = 1 to 1e-12
    let model = SigmaModel::veronese(2).unwrap();
    let dec = veronese_decomposition(&model).unwrap();
    for p in sample_points(200, SampleMode::Conjugate, 99) {
        let a = cpspin::numeric::eval_real3(&dec.alpha, p.xi).unwrap();
        let norm = 4.0 * (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        assert!((norm - 1.0).abs() < 1e-12);
    }
}

#[test]
fn decompose_rejects_dimension_mismatch() {
    let basis = PauliBasis::new(2).unwrap();
    let wrong = MatrixRf::identity(2);
    assert!(decompose_spin(&wrong, &basis).is_err());
}
