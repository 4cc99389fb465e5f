//! Alpha-field dynamics: the spin-dynamics equation alpha x alpha_{xi xibar}
//! = 0, the full constrained Euler-Lagrange equation with its Lagrange
//! multiplier, congruence tests under constant unitaries, and the lattice
//! Heisenberg model whose continuum stationarity equation the substituted
//! field must satisfy.

use crate::linalg::LinalgError;
use crate::numeric::{self, NumericError};
use crate::poly::{SymbolicError, Var};
use crate::scalar::Ring;
use crate::{Rf, C64};
use nalgebra::DMatrix;
use num_traits::{One, Zero};
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum HeisenbergError {
    #[error("alpha field has no exact form")]
    NoExactForm,
    #[error("alpha field violates the normalization 4 alpha . alpha = 1: {0}")]
    InvalidAlpha(String),
    #[error("matrix is not numerically unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("invalid couplings: {0}")]
    InvalidCouplings(String),
    #[error("grid too small: {nx}x{ny} (need at least 3x3)")]
    GridTooSmall { nx: usize, ny: usize },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

type AlphaFn = Arc<dyn Fn(C64) -> [f64; 3] + Send + Sync>;

/// Normalized 3-vector field: exact rational-function components when
/// available, plus a numeric evaluator on the conjugate locus.
#[derive(Clone)]
pub struct AlphaField {
    exact: Option<[Rf; 3]>,
    numeric: AlphaFn,
}

impl std::fmt::Debug for AlphaField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlphaField")
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl AlphaField {
    /// Exact field; the normalization 4 alpha . alpha = 1 is enforced
    /// exactly at construction.
    pub fn from_exact(alpha: [Rf; 3]) -> Result<Self, HeisenbergError> {
        let dot = alpha.iter().fold(Rf::zero(), |acc, a| &acc + &(a * a));
        let quarter = &Rf::one() / &Rf::from_integer(4);
        if dot != quarter {
            return Err(HeisenbergError::InvalidAlpha(format!(
                "alpha . alpha = {dot}"
            )));
        }
        let captured = alpha.clone();
        let numeric: AlphaFn = Arc::new(move |xi| {
            numeric::eval_real3(&captured, xi).expect("alpha field evaluation off poles")
        });
        Ok(Self {
            exact: Some(alpha),
            numeric,
        })
    }

    /// Numeric-only field (e.g. a renormalized perturbation).
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(C64) -> [f64; 3] + Send + Sync + 'static,
    {
        Self {
            exact: None,
            numeric: Arc::new(f),
        }
    }

    pub fn exact(&self) -> Option<&[Rf; 3]> {
        self.exact.as_ref()
    }

    pub fn at(&self, xi: C64) -> [f64; 3] {
        (self.numeric)(xi)
    }
}

fn cross(a: &[Rf; 3], b: &[Rf; 3]) -> [Rf; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &[Rf; 3], b: &[Rf; 3]) -> Rf {
    a.iter()
        .zip(b)
        .fold(Rf::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Exact second Wirtinger derivative of each component.
pub fn second_wirtinger(alpha: &[Rf; 3]) -> Result<[Rf; 3], SymbolicError> {
    Ok([
        alpha[0].wirtinger(Var::Xi)?.wirtinger(Var::XiBar)?,
        alpha[1].wirtinger(Var::Xi)?.wirtinger(Var::XiBar)?,
        alpha[2].wirtinger(Var::Xi)?.wirtinger(Var::XiBar)?,
    ])
}

/// The spin-dynamics residual alpha x alpha_{xi xibar}, exactly.
pub fn dynamics_residual_exact(field: &AlphaField) -> Result<[Rf; 3], HeisenbergError> {
    let alpha = field.exact().ok_or(HeisenbergError::NoExactForm)?;
    let dd = second_wirtinger(alpha)?;
    Ok(cross(alpha, &dd))
}

/// The projected stationarity equation (I_3 - 4 alpha ⊗ alpha) alpha_{xi
/// xibar} together with the multiplier mu = alpha . alpha_{xi xibar}.
#[derive(Debug, Clone)]
pub struct ConstrainedEl {
    pub residual: [Rf; 3],
    pub mu: Rf,
}

pub fn constrained_el_exact(field: &AlphaField) -> Result<ConstrainedEl, HeisenbergError> {
    let alpha = field.exact().ok_or(HeisenbergError::NoExactForm)?;
    let dd = second_wirtinger(alpha)?;
    let mu = dot(alpha, &dd);
    let four_mu = &Rf::from_integer(4) * &mu;
    let residual = [
        &dd[0] - &(&four_mu * &alpha[0]),
        &dd[1] - &(&four_mu * &alpha[1]),
        &dd[2] - &(&four_mu * &alpha[2]),
    ];
    Ok(ConstrainedEl { residual, mu })
}

/// Exact perpendicularity of the field to its first derivatives,
/// alpha . d(alpha) = alpha . dbar(alpha) = 0; a consequence of the constant
/// norm that the continuum expansion relies on.
pub fn perpendicularity_residual(field: &AlphaField) -> Result<(Rf, Rf), HeisenbergError> {
    let alpha = field.exact().ok_or(HeisenbergError::NoExactForm)?;
    let d: Vec<Rf> = alpha
        .iter()
        .map(|a| a.wirtinger(Var::Xi))
        .collect::<Result<_, _>>()?;
    let db: Vec<Rf> = alpha
        .iter()
        .map(|a| a.wirtinger(Var::XiBar))
        .collect::<Result<_, _>>()?;
    let dx = dot(alpha, &[d[0].clone(), d[1].clone(), d[2].clone()]);
    let dbx = dot(alpha, &[db[0].clone(), db[1].clone(), db[2].clone()]);
    Ok((dx, dbx))
}

/// Max norm of alpha x alpha_{xi xibar} over points, with both factors
/// float-evaluated from the exact forms.
pub fn dynamics_residual_eval(field: &AlphaField, points: &[C64]) -> Result<f64, HeisenbergError> {
    let alpha = field.exact().ok_or(HeisenbergError::NoExactForm)?;
    let dd = second_wirtinger(alpha)?;
    let mut worst = 0.0f64;
    for xi in points {
        let a = numeric::eval_real3(alpha, *xi)?;
        let d = numeric::eval_real3(&dd, *xi)?;
        let c = [
            a[1] * d[2] - a[2] * d[1],
            a[2] * d[0] - a[0] * d[2],
            a[0] * d[1] - a[1] * d[0],
        ];
        worst = worst.max((c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt());
    }
    Ok(worst)
}

/// Max norm of alpha x alpha_{xi xibar} over points, with alpha_{xi xibar}
/// from finite differences.
pub fn dynamics_residual_numeric(field: &AlphaField, points: &[C64], h: f64) -> f64 {
    let f = |x: f64, y: f64| field.at(C64::new(x, y));
    let mut worst = 0.0f64;
    for xi in points {
        let a = field.at(*xi);
        let dd = numeric::fd_wirtinger2(&f, xi.re, xi.im, h);
        let c = [
            a[1] * dd[2] - a[2] * dd[1],
            a[2] * dd[0] - a[0] * dd[2],
            a[0] * dd[1] - a[1] * dd[0],
        ];
        let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        worst = worst.max(norm);
    }
    worst
}

/// Outcome of the congruence check for one constant unitary.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub unitary_deviation: f64,
    pub max_basis_commutator_residual: f64,
    pub max_spin_commutator_residual: f64,
    pub max_dynamics_residual: f64,
    pub samples: usize,
}

/// Builds s^k = U sigma^k U^{-1}, forms S^z = alpha . s, and checks that the
/// congruent basis keeps the su(2) commutators and that the commutator
/// [S^z, (S^z)_{xi xibar}] and the dynamics residual co-vanish numerically.
pub fn congruence_test(
    sigma: &[DMatrix<C64>; 3],
    alpha: &AlphaField,
    u: &DMatrix<C64>,
    points: &[C64],
    fd_step: f64,
) -> Result<CongruenceReport, HeisenbergError> {
    let deviation = numeric::unitary_deviation(u);
    if deviation > 1e-12 {
        return Err(HeisenbergError::NotUnitary(deviation));
    }
    let u_inv = u.adjoint();
    let s: Vec<DMatrix<C64>> = sigma.iter().map(|m| u * m * &u_inv).collect();

    // Congruent basis satisfies the same commutation relations.
    let two_i = C64::new(0.0, 2.0);
    let comm = |a: &DMatrix<C64>, b: &DMatrix<C64>| a * b - b * a;
    let mut basis_residual = 0.0f64;
    for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let r = comm(&s[x], &s[y]) - &s[z] * two_i;
        basis_residual = basis_residual.max(numeric::max_entry_norm(&r));
    }

    let combine = |a: &[f64; 3]| {
        let mut m = DMatrix::<C64>::zeros(s[0].nrows(), s[0].ncols());
        for k in 0..3 {
            m += &s[k] * C64::new(a[k], 0.0);
        }
        m
    };
    let spin_at = |x: f64, y: f64| combine(&alpha.at(C64::new(x, y)));
    let alpha_at = |x: f64, y: f64| alpha.at(C64::new(x, y));

    // Exact second derivatives when the field carries them; the fd stencil
    // only backs fields that exist numerically.
    let dd_exact = match alpha.exact() {
        Some(a) => Some(second_wirtinger(a)?),
        None => None,
    };

    let mut spin_comm_residual = 0.0f64;
    let mut dyn_residual = 0.0f64;
    for xi in points {
        let sz = spin_at(xi.re, xi.im);
        let dd_a = match &dd_exact {
            Some(dd) => numeric::eval_real3(dd, *xi)?,
            None => numeric::fd_wirtinger2(&alpha_at, xi.re, xi.im, fd_step),
        };
        let dd_sz = combine(&dd_a);
        let c = &sz * &dd_sz - &dd_sz * &sz;
        spin_comm_residual = spin_comm_residual.max(numeric::max_entry_norm(&c));

        let a = alpha.at(*xi);
        let cr = [
            a[1] * dd_a[2] - a[2] * dd_a[1],
            a[2] * dd_a[0] - a[0] * dd_a[2],
            a[0] * dd_a[1] - a[1] * dd_a[0],
        ];
        let norm = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
        dyn_residual = dyn_residual.max(norm);
    }

    Ok(CongruenceReport {
        unitary_deviation: deviation,
        max_basis_commutator_residual: basis_residual,
        max_spin_commutator_residual: spin_comm_residual,
        max_dynamics_residual: dyn_residual,
        samples: points.len(),
    })
}

/// Rectangle in the (x, y) plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

/// Rectangular-lattice Heisenberg model: nearest-neighbour couplings J1 (x),
/// J2 (y) and J3 over both cell diagonals, cell size a x b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeConfig {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub a: f64,
    pub b: f64,
    pub nx: usize,
    pub ny: usize,
    pub region: Region,
}

impl LatticeConfig {
    pub fn validate(&self) -> Result<(), HeisenbergError> {
        if self.nx < 3 || self.ny < 3 {
            return Err(HeisenbergError::GridTooSmall {
                nx: self.nx,
                ny: self.ny,
            });
        }
        if self.a <= 0.0 || self.b <= 0.0 {
            return Err(HeisenbergError::InvalidCouplings(
                "lattice constants must be positive".into(),
            ));
        }
        // The substitution needs both square roots real.
        if self.j2 + 2.0 * self.j3 <= 0.0 || self.j1 + 2.0 * self.j3 <= 0.0 {
            return Err(HeisenbergError::InvalidCouplings(format!(
                "J2 + 2 J3 = {} and J1 + 2 J3 = {} must both be positive",
                self.j2 + 2.0 * self.j3,
                self.j1 + 2.0 * self.j3
            )));
        }
        Ok(())
    }

    /// The substitution mapping lattice coordinates into the xi-plane:
    /// xi = x/(a sqrt(2(J2+2J3))) + i y/(b sqrt(2(J1+2J3))).
    pub fn substitution_xi(&self, x: f64, y: f64) -> C64 {
        let sx = self.a * (2.0 * (self.j2 + 2.0 * self.j3)).sqrt();
        let sy = self.b * (2.0 * (self.j1 + 2.0 * self.j3)).sqrt();
        C64::new(x / sx, y / sy)
    }

    /// (horizontal, vertical, diagonal) bond counts on the open-boundary
    /// nx x ny grid; diagonal counts both bonds of each cell.
    pub fn bond_counts(&self) -> (usize, usize, usize) {
        let h = (self.nx - 1) * self.ny;
        let v = self.nx * (self.ny - 1);
        let d = 2 * (self.nx - 1) * (self.ny - 1);
        (h, v, d)
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Exact open-boundary lattice sum of the Hamiltonian over spins sampled as
/// alpha at the substituted node positions x_k = x0 + k a, y_m = y0 + m b.
pub fn lattice_energy(cfg: &LatticeConfig, alpha: &AlphaField) -> Result<f64, HeisenbergError> {
    cfg.validate()?;
    let spins: Vec<Vec<[f64; 3]>> = (0..cfg.nx)
        .map(|k| {
            (0..cfg.ny)
                .map(|m| {
                    let x = cfg.region.x0 + k as f64 * cfg.a;
                    let y = cfg.region.y0 + m as f64 * cfg.b;
                    alpha.at(cfg.substitution_xi(x, y))
                })
                .collect()
        })
        .collect();
    let mut energy = 0.0;
    for k in 0..cfg.nx {
        for m in 0..cfg.ny {
            if k + 1 < cfg.nx {
                energy += cfg.j1 * dot3(&spins[k][m], &spins[k + 1][m]);
            }
            if m + 1 < cfg.ny {
                energy += cfg.j2 * dot3(&spins[k][m], &spins[k][m + 1]);
            }
            if k + 1 < cfg.nx && m + 1 < cfg.ny {
                energy += cfg.j3
                    * (dot3(&spins[k][m], &spins[k + 1][m + 1])
                        + dot3(&spins[k + 1][m], &spins[k][m + 1]));
            }
        }
    }
    Ok(energy)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpacingResidual {
    pub spacing: f64,
    pub max_residual: f64,
}

/// Discrete-stationarity record: max tangent-projected residual per
/// finite-difference spacing, with the ratios and convergence orders
/// between consecutive spacings.
#[derive(Debug, Clone, Serialize)]
pub struct StationarityReport {
    pub residual_by_spacing: Vec<SpacingResidual>,
    pub ratios: Vec<f64>,
    pub orders: Vec<f64>,
    pub lagrange_multiplier_samples: Vec<f64>,
}

/// Evaluates the discrete residual of
/// a^2 (J2 + 2 J3) alpha_xx + b^2 (J1 + 2 J3) alpha_yy - 2 mu alpha
/// at the interior nodes of the region grid, for each spacing. The
/// multiplier is eliminated by projecting out the alpha direction. A smooth
/// stationary field shows second-order convergence: halving the spacing
/// divides the max residual by about 4.
pub fn lattice_stationarity(
    cfg: &LatticeConfig,
    alpha: &AlphaField,
    spacings: &[f64],
) -> Result<StationarityReport, HeisenbergError> {
    cfg.validate()?;
    let field = |x: f64, y: f64| alpha.at(cfg.substitution_xi(x, y));
    let cx = cfg.a * cfg.a * (cfg.j2 + 2.0 * cfg.j3);
    let cy = cfg.b * cfg.b * (cfg.j1 + 2.0 * cfg.j3);
    let dx = (cfg.region.x1 - cfg.region.x0) / (cfg.nx - 1) as f64;
    let dy = (cfg.region.y1 - cfg.region.y0) / (cfg.ny - 1) as f64;

    let mut residual_by_spacing = Vec::with_capacity(spacings.len());
    let mut mu_samples = Vec::new();
    for (si, &h) in spacings.iter().enumerate() {
        let mut worst = 0.0f64;
        for i in 1..cfg.nx - 1 {
            for j in 1..cfg.ny - 1 {
                let x = cfg.region.x0 + i as f64 * dx;
                let y = cfg.region.y0 + j as f64 * dy;
                let c = field(x, y);
                let xp = field(x + h, y);
                let xm = field(x - h, y);
                let yp = field(x, y + h);
                let ym = field(x, y - h);
                let mut r = [0.0f64; 3];
                for k in 0..3 {
                    let d2x = (xp[k] - 2.0 * c[k] + xm[k]) / (h * h);
                    let d2y = (yp[k] - 2.0 * c[k] + ym[k]) / (h * h);
                    r[k] = cx * d2x + cy * d2y;
                }
                // 2 mu alpha is the normal component; |alpha| = 1/2 makes
                // the projector onto alpha equal to 4 alpha ⊗ alpha.
                let (proj, mu) = {
                    let ra = dot3(&r, &c);
                    (
                        [
                            r[0] - 4.0 * ra * c[0],
                            r[1] - 4.0 * ra * c[1],
                            r[2] - 4.0 * ra * c[2],
                        ],
                        2.0 * ra,
                    )
                };
                if si == 0 && i == cfg.nx / 2 && j == cfg.ny / 2 {
                    mu_samples.push(mu);
                }
                worst = worst.max(dot3(&proj, &proj).sqrt());
            }
        }
        residual_by_spacing.push(SpacingResidual {
            spacing: h,
            max_residual: worst,
        });
    }
    let mut ratios = Vec::new();
    let mut orders = Vec::new();
    for w in residual_by_spacing.windows(2) {
        let ratio = w[0].max_residual / w[1].max_residual;
        ratios.push(ratio);
        let step = w[0].spacing / w[1].spacing;
        orders.push(ratio.ln() / step.ln());
    }
    Ok(StationarityReport {
        residual_by_spacing,
        ratios,
        orders,
        lagrange_multiplier_samples: mu_samples,
    })
}
