//! Metric-operator construction: the η-ansatz, exact adjoint-action
//! coefficients, the Hermiticity constraint system, the closed-form
//! solution families with their Hermitian counterparts, the sl₂(ℝ) worked
//! examples, the two-particle constraints and the verification predicates.
//!
//! The constraint polynomials evaluated here are derived directly from the
//! adjoint action of η = exp(2εK₀ + 2νK₊ + 2νK₋) on the ordered coefficient
//! space. They are cross-checked in the tests against an independent route
//! (explicit 3×3 transform plus reordering) and against matrix-exponential
//! conjugation in truncated representations.

use crate::error::{QhError, Result};
use crate::numerics::{
    cosh_even, eigenvalues_hermitian, matrix_exp, sinhc_even, stable_arctanh_ratio, CMat,
};
use crate::rep::TruncatedRep;
use crate::su11::{hermiticity_defect, CoeffSet, TwoParticleCoeffSet, G0, GM, GP};
use serde::{Deserialize, Serialize};

/// Generator axis order used for all 3×3 coefficient maps: (0, +, −).
const Z: usize = 0;
const P: usize = 1;
const M: usize = 2;

/// Parameters of the Hermitian ansatz η = exp(2εK₀ + 2νK₊ + 2νK₋) with
/// ν = λε real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaParams {
    pub epsilon: f64,
    pub lambda: f64,
}

impl EtaParams {
    pub fn new(epsilon: f64, lambda: f64) -> Result<Self> {
        if !epsilon.is_finite() || !lambda.is_finite() {
            return Err(QhError::InvalidParameter("non-finite eta parameters".into()));
        }
        if lambda.abs() > 0.5 + 1e-12 {
            return Err(QhError::InvalidParameter(format!(
                "lambda = {lambda} outside [-1/2, 1/2]; eta^2 loses positivity"
            )));
        }
        Ok(EtaParams { epsilon, lambda })
    }

    pub fn nu(&self) -> f64 {
        self.lambda * self.epsilon
    }

    /// θ² = ε² − 4ν² = ε²(1 − 4λ²).
    pub fn theta_sq(&self) -> f64 {
        self.epsilon * self.epsilon * (1.0 - 4.0 * self.lambda * self.lambda)
    }

    pub fn theta(&self) -> f64 {
        self.theta_sq().max(0.0).sqrt()
    }

    /// Y = ε·tanh(θ)/θ, the variable the constraint polynomials run in.
    /// Continues smoothly through θ = 0.
    pub fn y(&self) -> f64 {
        let t2 = self.theta_sq();
        self.epsilon * sinhc_even(t2) / cosh_even(t2)
    }
}

/// The 3×3 adjoint-action coefficients: ηK_lη⁻¹ = Σ_m t[l][m] K_m on the
/// (0, +, −) axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjointCoeffs {
    pub t: [[f64; 3]; 3],
}

impl AdjointCoeffs {
    pub fn det(&self) -> f64 {
        let t = &self.t;
        t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1])
            - t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0])
            + t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0])
    }

    pub fn identity() -> Self {
        AdjointCoeffs { t: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }
}

/// Exact adjoint coefficients for η = exp(2εK₀ + 2νK₊ + 2νK₋):
///
/// t₀₀ = 1 − 8ν² sinh²θ/θ²,  t±± = (cosh θ ± ε sinh θ/θ)²,
/// t±∓ = 4ν² sinh²θ/θ²,      t₀± = ∓2ν sinhθ/θ (coshθ ± ε sinhθ/θ),
/// t±0 = ±4ν sinhθ/θ (coshθ ± ε sinhθ/θ),  θ = √(ε² − 4ν²).
///
/// θ enters only through θ², so the θ² < 0 continuation (trigonometric
/// branch) comes for free.
pub fn adjoint_coeffs_eps_nu(epsilon: f64, nu: f64) -> AdjointCoeffs {
    let t2 = epsilon * epsilon - 4.0 * nu * nu;
    let c = cosh_even(t2);
    let s = sinhc_even(t2);
    let up = c + epsilon * s;
    let um = c - epsilon * s;
    let mut t = [[0.0; 3]; 3];
    t[Z][Z] = 1.0 - 8.0 * nu * nu * s * s;
    t[Z][P] = -2.0 * nu * s * up;
    t[Z][M] = 2.0 * nu * s * um;
    t[P][Z] = 4.0 * nu * s * up;
    t[P][P] = up * up;
    t[P][M] = 4.0 * nu * nu * s * s;
    t[M][Z] = -4.0 * nu * s * um;
    t[M][P] = 4.0 * nu * nu * s * s;
    t[M][M] = um * um;
    AdjointCoeffs { t }
}

pub fn adjoint_coeffs(p: &EtaParams) -> AdjointCoeffs {
    adjoint_coeffs_eps_nu(p.epsilon, p.nu())
}

/// The adjoint coefficients with cosh²θ scaled out, polynomial in
/// (Y, λ). Used as an independent route for the constraint residuals; not
/// itself an algebra automorphism.
pub(crate) fn scaled_adjoint_poly(y: f64, lambda: f64) -> [[f64; 3]; 3] {
    let mut t = [[0.0; 3]; 3];
    t[Z][Z] = 1.0 - (1.0 + 4.0 * lambda * lambda) * y * y;
    t[Z][P] = -2.0 * lambda * y * (1.0 + y);
    t[Z][M] = 2.0 * lambda * y * (1.0 - y);
    t[P][Z] = 4.0 * lambda * y * (1.0 + y);
    t[P][P] = (1.0 + y) * (1.0 + y);
    t[P][M] = 4.0 * lambda * lambda * y * y;
    t[M][Z] = -4.0 * lambda * y * (1.0 - y);
    t[M][P] = 4.0 * lambda * lambda * y * y;
    t[M][M] = (1.0 - y) * (1.0 - y);
    t
}

/// Linear images and the bilinear outer-product tensor of a coefficient
/// set under a 3×3 generator map.
pub(crate) fn conjugate_parts(c: &CoeffSet, t: &[[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let lin = [c.mu_0, c.mu_p, c.mu_m]; // (0, +, −)
    let mut l = [0.0; 3];
    for m in 0..3 {
        l[m] = lin[Z] * t[Z][m] + lin[P] * t[P][m] + lin[M] * t[M][m];
    }
    // the six ordered pairs as ((n, m), coefficient)
    let pairs = [
        ((Z, Z), c.mu_00),
        ((P, M), c.mu_pm),
        ((P, Z), c.mu_p0),
        ((Z, M), c.mu_0m),
        ((P, P), c.mu_pp),
        ((M, M), c.mu_mm),
    ];
    let mut b = [[0.0; 3]; 3];
    for &((n, m), coeff) in &pairs {
        if coeff == 0.0 {
            continue;
        }
        for p in 0..3 {
            for q in 0..3 {
                b[p][q] += coeff * t[n][p] * t[m][q];
            }
        }
    }
    (l, b)
}

/// Transforms an ordered coefficient set by a generator map K_l ↦ Σ t_lm K_m,
/// re-expressing disordered products through the commutation relations:
/// K₀K₊ = K₊K₀ + K₊, K₋K₊ = K₊K₋ + 2K₀, K₋K₀ = K₀K₋ + K₋.
pub fn conjugate_coeffs(c: &CoeffSet, t: &AdjointCoeffs) -> CoeffSet {
    let (l, b) = conjugate_parts(c, &t.t);
    CoeffSet {
        mu_0: l[Z] + 2.0 * b[M][P],
        mu_p: l[P] + b[Z][P],
        mu_m: l[M] + b[M][Z],
        mu_00: b[Z][Z],
        mu_pp: b[P][P],
        mu_mm: b[M][M],
        mu_pm: b[P][M] + b[M][P],
        mu_p0: b[P][Z] + b[Z][P],
        mu_0m: b[Z][M] + b[M][Z],
    }
}

/// Conjugated set with the Hermitian pairs averaged, plus the largest
/// asymmetry that was averaged away. A valid metric solution has
/// asymmetry at rounding level.
pub fn conjugate_coeffs_symmetrized(c: &CoeffSet, t: &AdjointCoeffs) -> (CoeffSet, f64) {
    let raw = conjugate_coeffs(c, t);
    let d = hermiticity_defect(&raw);
    let sym = CoeffSet {
        mu_p: (raw.mu_p + raw.mu_m) / 2.0,
        mu_m: (raw.mu_p + raw.mu_m) / 2.0,
        mu_pp: (raw.mu_pp + raw.mu_mm) / 2.0,
        mu_mm: (raw.mu_pp + raw.mu_mm) / 2.0,
        mu_p0: (raw.mu_p0 + raw.mu_0m) / 2.0,
        mu_0m: (raw.mu_p0 + raw.mu_0m) / 2.0,
        ..raw
    };
    (sym, d.max_abs())
}

/// Coefficient tables of the three Hermiticity constraints as polynomials
/// in Y: residual r_i = Σ_j table[i][j][k] · μ_j · Y^k over the coupling
/// layout (μ₀, μ₊, μ₋, μ₀₀, μ₊₊, μ₋₋, μ₊₋, μ₊₀, μ₀₋).
///
/// r₁ tracks μ̂₊ − μ̂₋, r₂ tracks μ̂₊₊ − μ̂₋₋, r₃ tracks μ̂₊₀ − μ̂₀₋, each
/// scaled by the appropriate power of cosh θ so the result is polynomial.
pub fn cc_coeff_tables(lambda: f64) -> [[[f64; 5]; 9]; 3] {
    let l = lambda;
    let l2 = l * l;
    let l3 = l2 * l;
    let l4 = l2 * l2;
    let s2 = 1.0 - 4.0 * l2;
    let s4 = s2 * s2;

    let mut t = [[[0.0; 5]; 9]; 3];

    // r1: linear-sector defect
    t[0][0] = [0.0, -4.0 * l, 0.0, 4.0 * l * s2, 0.0];
    t[0][1] = [1.0, 2.0, 0.0, -2.0 * s2, -s4];
    t[0][2] = [-1.0, 2.0, 0.0, -2.0 * s2, s4];
    t[0][3] = [0.0, -4.0 * l, 0.0, 4.0 * l * (1.0 + 4.0 * l2), 0.0];
    t[0][4] = [0.0, 4.0 * l, 12.0 * l, 4.0 * l * (3.0 - 4.0 * l2), 4.0 * l * s2];
    t[0][5] = [0.0, 4.0 * l, -12.0 * l, 4.0 * l * (3.0 - 4.0 * l2), -4.0 * l * s2];
    t[0][6] = [0.0, 0.0, 0.0, 32.0 * l3, 0.0];
    t[0][7] = [0.0, 0.0, -12.0 * l2, -16.0 * l2, -4.0 * l2 * s2];
    t[0][8] = [0.0, 0.0, 12.0 * l2, -16.0 * l2, 4.0 * l2 * s2];

    // r2: K±² defect
    t[1][3] = [0.0, 0.0, 0.0, 16.0 * l2, 0.0];
    t[1][6] = [0.0, 0.0, 0.0, 16.0 * l2, 0.0];
    t[1][4] = [1.0, 4.0, 6.0, 4.0, 1.0 - 16.0 * l4];
    t[1][5] = [-1.0, 4.0, -6.0, 4.0, -(1.0 - 16.0 * l4)];
    t[1][7] = [0.0, -2.0 * l, -6.0 * l, -2.0 * l * (3.0 + 4.0 * l2), -2.0 * l * s2];
    t[1][8] = [0.0, -2.0 * l, 6.0 * l, -2.0 * l * (3.0 + 4.0 * l2), 2.0 * l * s2];

    // r3: mixed K±K₀ defect
    t[2][3] = [0.0, -8.0 * l, 0.0, 8.0 * l * (1.0 + 4.0 * l2), 0.0];
    t[2][6] = t[2][3];
    t[2][4] = [0.0, 8.0 * l, 24.0 * l, 8.0 * l * (3.0 - 4.0 * l2), 8.0 * l * s2];
    t[2][5] = [0.0, 8.0 * l, -24.0 * l, 8.0 * l * (3.0 - 4.0 * l2), -8.0 * l * s2];
    t[2][7] = [1.0, 2.0, -24.0 * l2, -2.0 * (1.0 + 12.0 * l2), -(1.0 - 16.0 * l4)];
    t[2][8] = [-1.0, 2.0, 24.0 * l2, -2.0 * (1.0 + 12.0 * l2), 1.0 - 16.0 * l4];

    t
}

fn eval_poly(p: &[f64; 5], y: f64) -> f64 {
    (((p[4] * y + p[3]) * y + p[2]) * y + p[1]) * y + p[0]
}

/// The raw residuals of the three constraint equations at (λ, Y).
pub fn constraint_residuals_cc(c: &CoeffSet, lambda: f64, y: f64) -> [f64; 3] {
    let tables = cc_coeff_tables(lambda);
    let mu = c.to_array();
    let mut r = [0.0; 3];
    for i in 0..3 {
        for j in 0..9 {
            if mu[j] != 0.0 {
                r[i] += mu[j] * eval_poly(&tables[i][j], y);
            }
        }
    }
    r
}

/// Independent evaluation of the same residuals through the polynomial
/// transform route. Tests pin the two routes against each other.
pub fn constraint_residuals_via_transform(c: &CoeffSet, lambda: f64, y: f64) -> [f64; 3] {
    let t = scaled_adjoint_poly(y, lambda);
    let (l, b) = conjugate_parts(c, &t);
    let s2 = 1.0 - 4.0 * lambda * lambda;
    let w = 1.0 - s2 * y * y; // 1/cosh²θ in polynomial form
    [
        w * (l[P] - l[M]) + (b[Z][P] - b[M][Z]),
        b[P][P] - b[M][M],
        (b[P][Z] + b[Z][P]) - (b[Z][M] + b[M][Z]),
    ]
}

// ---------------------------------------------------------------------------
// solution families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Tags for every printed solution family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyId {
    Sl2Example1,
    Sl2Example2,
    HermBilinear,
    HermLinear,
    GenericReducible,
    GenericNonReducible,
    LambdaZero,
    LambdaHalf(Sign),
    Reduced1Minus,
    Reduced1Plus,
    Reduced2Minus,
    Reduced2Plus,
    MultiParticle,
}

impl FamilyId {
    pub fn name(&self) -> String {
        match self {
            FamilyId::Sl2Example1 => "sl2-example-1".into(),
            FamilyId::Sl2Example2 => "sl2-example-2".into(),
            FamilyId::HermBilinear => "herm-bilinear".into(),
            FamilyId::HermLinear => "herm-linear".into(),
            FamilyId::GenericReducible => "generic-reducible".into(),
            FamilyId::GenericNonReducible => "generic-nonreducible".into(),
            FamilyId::LambdaZero => "lambda-zero".into(),
            FamilyId::LambdaHalf(Sign::Plus) => "lambda-half-plus".into(),
            FamilyId::LambdaHalf(Sign::Minus) => "lambda-half-minus".into(),
            FamilyId::Reduced1Minus => "reduced-1-minus".into(),
            FamilyId::Reduced1Plus => "reduced-1-plus".into(),
            FamilyId::Reduced2Minus => "reduced-2-minus".into(),
            FamilyId::Reduced2Plus => "reduced-2-plus".into(),
            FamilyId::MultiParticle => "multi-particle".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<FamilyId> {
        Some(match s {
            "sl2-example-1" => FamilyId::Sl2Example1,
            "sl2-example-2" => FamilyId::Sl2Example2,
            "herm-bilinear" => FamilyId::HermBilinear,
            "herm-linear" => FamilyId::HermLinear,
            "generic-reducible" => FamilyId::GenericReducible,
            "generic-nonreducible" => FamilyId::GenericNonReducible,
            "lambda-zero" => FamilyId::LambdaZero,
            "lambda-half-plus" => FamilyId::LambdaHalf(Sign::Plus),
            "lambda-half-minus" => FamilyId::LambdaHalf(Sign::Minus),
            "reduced-1-minus" => FamilyId::Reduced1Minus,
            "reduced-1-plus" => FamilyId::Reduced1Plus,
            "reduced-2-minus" => FamilyId::Reduced2Minus,
            "reduced-2-plus" => FamilyId::Reduced2Plus,
            "multi-particle" => FamilyId::MultiParticle,
            _ => return None,
        })
    }
}

/// A completed metric solution: coefficients, η parameters, the Hermitian
/// counterpart and the constraint residuals it was checked against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricSolution {
    pub family: FamilyId,
    pub completed: CoeffSet,
    pub eta: EtaParams,
    pub counterpart: CoeffSet,
    pub constraint_residuals: [f64; 3],
    /// Asymmetry of the raw conjugated set before symmetrization.
    pub conjugation_asymmetry: f64,
}

fn finish_solution(family: FamilyId, completed: CoeffSet, eta: EtaParams) -> MetricSolution {
    let t = adjoint_coeffs(&eta);
    let (counterpart, asym) = conjugate_coeffs_symmetrized(&completed, &t);
    let residuals = constraint_residuals_cc(&completed, eta.lambda, eta.y());
    MetricSolution {
        family,
        completed,
        eta,
        counterpart,
        constraint_residuals: residuals,
        conjugation_asymmetry: asym,
    }
}

fn check_lambda_interior(lambda: f64) -> Result<()> {
    if !(lambda.abs() < 0.5) {
        return Err(QhError::InvalidParameter(format!(
            "family requires |lambda| < 1/2, got {lambda}"
        )));
    }
    Ok(())
}

fn check_lambda_nonzero(lambda: f64) -> Result<()> {
    if lambda == 0.0 {
        return Err(QhError::InvalidParameter("family requires lambda != 0".into()));
    }
    Ok(())
}

/// Non-Hermitian linear term with Hermitian bilinear part. Free couplings:
/// μ₀, μ₊, μ₋, μ₀₀, μ₊₋. The bilinear ladder couplings are completed and
/// the tanh-2θ relation fixes ε.
pub fn solve_herm_bilinear(partial: &CoeffSet, lambda: f64) -> Result<MetricSolution> {
    check_lambda_interior(lambda)?;
    let l2 = lambda * lambda;
    let sigma = partial.mu_00 + partial.mu_pm;
    let beta = l2 * sigma / (1.0 + 2.0 * l2);
    let gamma = 2.0 * lambda * sigma / (1.0 + 2.0 * l2);
    let c = CoeffSet { mu_pp: beta, mu_mm: beta, mu_p0: gamma, mu_0m: gamma, ..*partial };
    // λ-cancelled form of the tanh-2θ ratio, regular at λ = 0
    let den = (c.mu_m + c.mu_p) + 2.0 * lambda * (c.mu_pm - c.mu_0)
        - 2.0 * lambda * sigma / (1.0 + 2.0 * l2);
    if den.abs() < 1e-14 * (1.0 + c.max_abs()) {
        return Err(QhError::DegenerateFamily("tanh-ratio denominator vanishes".into()));
    }
    let r = (c.mu_m - c.mu_p) / den;
    let eps = stable_arctanh_ratio(r, lambda, 2)?;
    Ok(finish_solution(FamilyId::HermBilinear, c, EtaParams::new(eps, lambda)?))
}

/// Hermitian linear term with non-Hermitian bilinear part. Free couplings:
/// μ₀, μ₀₀, μ₊₊, μ₋₋, μ₊₋.
pub fn solve_herm_linear(partial: &CoeffSet, lambda: f64) -> Result<MetricSolution> {
    check_lambda_interior(lambda)?;
    check_lambda_nonzero(lambda)?;
    let l2 = lambda * lambda;
    let mu_lin = lambda * (partial.mu_0 + partial.mu_00 - partial.mu_pp - partial.mu_mm);
    let shared = l2 * (partial.mu_pm - partial.mu_0);
    let c = CoeffSet {
        mu_p: mu_lin,
        mu_m: mu_lin,
        mu_p0: mu_lin + (shared + partial.mu_pp) / lambda,
        mu_0m: mu_lin + (shared + partial.mu_mm) / lambda,
        ..*partial
    };
    let den = 2.0 * lambda * c.mu_p + 2.0 * l2 * (c.mu_pm - c.mu_0) - (c.mu_pp + c.mu_mm);
    if den.abs() < 1e-14 * (1.0 + c.max_abs()) {
        return Err(QhError::DegenerateFamily("tanh-ratio denominator vanishes".into()));
    }
    let r = (c.mu_pp - c.mu_mm) / den;
    let eps = stable_arctanh_ratio(r, lambda, 2)?;
    Ok(finish_solution(FamilyId::HermLinear, c, EtaParams::new(eps, lambda)?))
}

/// Generic reducible family. Free couplings: μ₀, μ₊, μ₋, μ₊₊, μ₋₋, μ₊₋;
/// μ₀₀ and μ₀₋ come from the linear 2×2 system of the second and third
/// constraints, μ₊₀ from the first, ε from the tanh-2θ relation.
pub fn solve_generic_reducible(partial: &CoeffSet, lambda: f64) -> Result<MetricSolution> {
    check_lambda_interior(lambda)?;
    check_lambda_nonzero(lambda)?;
    let l2 = lambda * lambda;
    let (mu_p, mu_m, mu_pp, mu_mm) = (partial.mu_p, partial.mu_m, partial.mu_pp, partial.mu_mm);
    let db = mu_pp - mu_mm;
    // [ λ²  −λ ] [μ₀₀]   [ λ²(μ₊₊+μ₋₋−μ₊₋) − μ₋₋ ]
    // [ λdb −λdl]·[μ₀₋] = [ λdb(μ₊₊+μ₋₋−μ₀) − 2μ₊μ₋₋ + μ₋(μ₊₊+μ₋₋) ]
    let a11 = l2;
    let a12 = -lambda;
    let b1 = l2 * (mu_pp + mu_mm - partial.mu_pm) - mu_mm;
    let a21 = lambda * db;
    let a22 = -lambda * (mu_p - mu_m);
    let b2 = lambda * db * (mu_pp + mu_mm - partial.mu_0) - 2.0 * mu_p * mu_mm
        + mu_m * (mu_pp + mu_mm);
    let det = a11 * a22 - a12 * a21;
    let scale = [a11, a12, a21, a22].iter().fold(1.0f64, |a, b| a.max(b.abs()));
    if det.abs() < 1e-12 * scale * scale {
        return Err(QhError::DegenerateFamily(
            "constraint system singular (mu_mm - mu_pp = lambda (mu_m - mu_p))".into(),
        ));
    }
    let mu_00 = (b1 * a22 - b2 * a12) / det;
    let mu_0m = (a11 * b2 - a21 * b1) / det;
    let mu_p0 = mu_0m + db / lambda;
    let c = CoeffSet { mu_00, mu_0m, mu_p0, ..*partial };

    let num = lambda * (mu_m - mu_p) + db;
    let den = lambda * (mu_m + mu_p) + 2.0 * l2 * (c.mu_pm - c.mu_0) - (mu_pp + mu_mm);
    if den.abs() < 1e-14 * (1.0 + c.max_abs()) {
        return Err(QhError::DegenerateFamily("tanh-ratio denominator vanishes".into()));
    }
    let eps = stable_arctanh_ratio(num / den, lambda, 2)?;
    Ok(finish_solution(FamilyId::GenericReducible, c, EtaParams::new(eps, lambda)?))
}

/// Generic non-reducible family. Free couplings: μ₀, μ₊, μ₋, μ₋₋, μ₊₋.
/// Inputs with a Hermitian linear part are refused: in this family
/// μ₊ = μ₋ forces the bilinear part Hermitian as well.
pub fn solve_generic_nonreducible(partial: &CoeffSet, lambda: f64) -> Result<MetricSolution> {
    check_lambda_interior(lambda)?;
    check_lambda_nonzero(lambda)?;
    let scale = 1.0 + partial.max_abs();
    if (partial.mu_p - partial.mu_m).abs() < 1e-12 * scale {
        return Err(QhError::FamilyInapplicable(
            "non-reducible family requires mu_p != mu_m".into(),
        ));
    }
    let l2 = lambda * lambda;
    let mu_pp = partial.mu_mm + (partial.mu_p - partial.mu_m) / (2.0 * lambda);
    let mu_p0 = 2.0 * partial.mu_p + 2.0 * lambda * (partial.mu_pm - partial.mu_0);
    let mu_0m = mu_p0 - 2.0 * (partial.mu_p - partial.mu_m);
    let mu_00 = (partial.mu_p + 2.0 * l2 * (partial.mu_m - partial.mu_p + mu_p0)) / lambda
        - partial.mu_0
        - 2.0 * mu_pp;
    let c = CoeffSet { mu_pp, mu_p0, mu_0m, mu_00, ..*partial };

    let den = c.mu_mm + c.mu_pp + lambda * (c.mu_p - c.mu_m - c.mu_p0);
    if den.abs() < 1e-14 * (1.0 + c.max_abs()) {
        return Err(QhError::DegenerateFamily("tanh-4θ denominator vanishes".into()));
    }
    let r = (c.mu_mm - c.mu_pp) / den;
    let eps = stable_arctanh_ratio(r, lambda, 4)?;
    Ok(finish_solution(FamilyId::GenericNonReducible, c, EtaParams::new(eps, lambda)?))
}

/// λ = 0: η = exp(2εK₀). Free couplings: μ₀, μ₀₀, μ₊₋ plus the raising-side
/// couplings μ₊, μ₊₀, μ₊₊; the lowering side is completed by the e^{2ε}
/// weights. ε is read off the first available coupling ratio.
pub fn solve_lambda_zero(partial: &CoeffSet) -> Result<MetricSolution> {
    let eps = if partial.mu_pp != 0.0 || partial.mu_mm != 0.0 {
        if partial.mu_pp == 0.0 {
            return Err(QhError::DegenerateFamily("mu_pp = 0 with mu_mm != 0".into()));
        }
        let ratio = partial.mu_mm / partial.mu_pp;
        if ratio <= 0.0 {
            return Err(QhError::NoSolutionInFamily(format!(
                "mu_mm/mu_pp = {ratio} must be positive"
            )));
        }
        ratio.ln() / 8.0
    } else if partial.mu_p != 0.0 || partial.mu_m != 0.0 {
        if partial.mu_p == 0.0 {
            return Err(QhError::DegenerateFamily("mu_p = 0 with mu_m != 0".into()));
        }
        let ratio = partial.mu_m / partial.mu_p;
        if ratio <= 0.0 {
            return Err(QhError::NoSolutionInFamily(format!(
                "mu_m/mu_p = {ratio} must be positive"
            )));
        }
        ratio.ln() / 4.0
    } else if partial.mu_p0 != 0.0 || partial.mu_0m != 0.0 {
        if partial.mu_p0 == 0.0 {
            return Err(QhError::DegenerateFamily("mu_p0 = 0 with mu_0m != 0".into()));
        }
        let ratio = partial.mu_0m / partial.mu_p0;
        if ratio <= 0.0 {
            return Err(QhError::NoSolutionInFamily(format!(
                "mu_0m/mu_p0 = {ratio} must be positive"
            )));
        }
        ratio.ln() / 4.0
    } else {
        0.0
    };
    let w2 = (4.0 * eps).exp();
    let mut c = *partial;
    c.mu_m = c.mu_p * w2;
    c.mu_0m = c.mu_p0 * w2;
    c.mu_mm = c.mu_pp * w2 * w2;
    // cross-constraints of the family must hold for any supplied values
    let tol = 1e-9 * (1.0 + partial.max_abs().powi(2));
    if (partial.mu_m != 0.0 && (partial.mu_m - c.mu_m).abs() > tol)
        || (partial.mu_0m != 0.0 && (partial.mu_0m - c.mu_0m).abs() > tol)
    {
        return Err(QhError::NoSolutionInFamily(
            "supplied couplings violate mu_mm mu_p^2 = mu_pp mu_m^2 or its mixed analogue".into(),
        ));
    }
    Ok(finish_solution(FamilyId::LambdaZero, c, EtaParams::new(eps, 0.0)?))
}

/// Boundary family λ = ±1/2 (θ = 0). The three constraint cubics in ε
/// degenerate: eliminating the two bilinear unknowns leaves a linear
/// equation for ε, then μ₊₊ and μ₋₋ follow from a 2×2 solve. The seven
/// remaining couplings are free inputs.
pub fn solve_lambda_half(partial: &CoeffSet, sign: Sign) -> Result<MetricSolution> {
    let lambda = 0.5 * sign.as_f64();
    let tables = cc_coeff_tables(lambda);
    let mu = partial.to_array();
    // polynomial pieces from the seven free couplings (all but μ₊₊, μ₋₋)
    let mut a = [[0.0f64; 5]; 3];
    for i in 0..3 {
        for (j, &m) in mu.iter().enumerate() {
            if j == 4 || j == 5 || m == 0.0 {
                continue;
            }
            for k in 0..5 {
                a[i][k] += m * tables[i][j][k];
            }
        }
    }
    let qp = [tables[0][4], tables[1][4], tables[2][4]];
    let qm = [tables[0][5], tables[1][5], tables[2][5]];
    // r3's bilinear coefficients are exactly twice r1's at the boundary,
    // so 2r1 − r3 is bilinear-free and, after the cubic terms cancel,
    // linear in ε.
    let mut p = [0.0f64; 5];
    for k in 0..5 {
        p[k] = 2.0 * a[0][k] - a[2][k];
        debug_assert!((2.0 * qp[0][k] - qp[2][k]).abs() < 1e-12);
        debug_assert!((2.0 * qm[0][k] - qm[2][k]).abs() < 1e-12);
    }
    let scale = 1.0 + partial.max_abs();
    if p[2].abs() > 1e-10 * scale || p[3].abs() > 1e-10 * scale || p[4].abs() > 1e-10 * scale {
        return Err(QhError::Numerical("boundary elimination not linear".into()));
    }
    if p[1].abs() < 1e-12 * scale {
        return Err(if p[0].abs() < 1e-12 * scale {
            QhError::DegenerateFamily("boundary epsilon equation degenerate".into())
        } else {
            QhError::NoSolutionInFamily("boundary epsilon equation inconsistent".into())
        });
    }
    let eps = -p[0] / p[1];

    // 2×2 for (μ₊₊, μ₋₋) from r1 = 0 and r2 = 0 at ε
    let m11 = eval_poly(&qp[0], eps);
    let m12 = eval_poly(&qm[0], eps);
    let m21 = eval_poly(&qp[1], eps);
    let m22 = eval_poly(&qm[1], eps);
    let rhs1 = -eval_poly(&a[0], eps);
    let rhs2 = -eval_poly(&a[1], eps);
    let det = m11 * m22 - m12 * m21;
    if det.abs() < 1e-12 * (1.0 + m11.abs().max(m22.abs())).powi(2) {
        return Err(QhError::DegenerateFamily("boundary bilinear system singular".into()));
    }
    let mu_pp = (rhs1 * m22 - rhs2 * m12) / det;
    let mu_mm = (m11 * rhs2 - m21 * rhs1) / det;
    let c = CoeffSet { mu_pp, mu_mm, ..*partial };

    // supplied bilinears must agree with the family completion
    let tol = 1e-8 * scale.max(mu_pp.abs()).max(mu_mm.abs());
    if (partial.mu_pp != 0.0 && (partial.mu_pp - mu_pp).abs() > tol)
        || (partial.mu_mm != 0.0 && (partial.mu_mm - mu_mm).abs() > tol)
    {
        return Err(QhError::FamilyInapplicable(format!(
            "supplied (mu_pp, mu_mm) = ({}, {}) conflict with the boundary completion ({mu_pp:.6}, {mu_mm:.6})",
            partial.mu_pp, partial.mu_mm
        )));
    }
    Ok(finish_solution(FamilyId::LambdaHalf(sign), c, EtaParams::new(eps, lambda)?))
}

/// The four reduced cases with one ladder side absent. ε follows from the
/// same tanh relations as the parent family, evaluated on the completed
/// set, so no sign conventions are hard-coded.
pub fn solve_reduced(family: FamilyId, partial: &CoeffSet, lambda: f64) -> Result<MetricSolution> {
    check_lambda_interior(lambda)?;
    check_lambda_nonzero(lambda)?;
    let c = match family {
        FamilyId::Reduced1Minus => CoeffSet {
            mu_m: 0.0,
            mu_mm: 0.0,
            mu_0m: 0.0,
            mu_pp: lambda * partial.mu_p0,
            mu_00: lambda * partial.mu_p0 - partial.mu_0,
            mu_pm: partial.mu_0,
            ..*partial
        },
        FamilyId::Reduced1Plus => CoeffSet {
            mu_p: 0.0,
            mu_pp: 0.0,
            mu_p0: 0.0,
            mu_mm: lambda * partial.mu_0m,
            mu_00: lambda * partial.mu_0m - partial.mu_0,
            mu_pm: partial.mu_0,
            ..*partial
        },
        FamilyId::Reduced2Minus => CoeffSet {
            mu_m: 0.0,
            mu_mm: 0.0,
            mu_0m: 0.0,
            mu_pp: partial.mu_p / (2.0 * lambda),
            mu_p0: 2.0 * partial.mu_p,
            mu_00: 2.0 * lambda * partial.mu_p - partial.mu_0,
            mu_pm: partial.mu_0,
            ..*partial
        },
        FamilyId::Reduced2Plus => CoeffSet {
            mu_p: 0.0,
            mu_pp: 0.0,
            mu_p0: 0.0,
            mu_mm: partial.mu_m / (2.0 * lambda),
            mu_0m: 2.0 * partial.mu_m,
            mu_00: 2.0 * lambda * partial.mu_m - partial.mu_0,
            mu_pm: partial.mu_0,
            ..*partial
        },
        other => {
            return Err(QhError::InvalidParameter(format!(
                "solve_reduced does not handle {}",
                other.name()
            )))
        }
    };
    let (num, den, k) = match family {
        FamilyId::Reduced1Minus | FamilyId::Reduced1Plus => (
            lambda * (c.mu_m - c.mu_p) + c.mu_pp - c.mu_mm,
            lambda * (c.mu_m + c.mu_p) + 2.0 * lambda * lambda * (c.mu_pm - c.mu_0)
                - (c.mu_pp + c.mu_mm),
            2,
        ),
        _ => (
            c.mu_mm - c.mu_pp,
            c.mu_mm + c.mu_pp + lambda * (c.mu_p - c.mu_m - c.mu_p0),
            4,
        ),
    };
    if den.abs() < 1e-14 * (1.0 + c.max_abs()) {
        return Err(QhError::DegenerateFamily("tanh-ratio denominator vanishes".into()));
    }
    let eps = stable_arctanh_ratio(num / den, lambda, k)?;
    Ok(finish_solution(family, c, EtaParams::new(eps, lambda)?))
}

/// Dispatch by family tag. `lambda` is ignored by the λ = 0 and λ = ±1/2
/// families; `branch` is unused here (kept for uniformity with the sl₂ and
/// Bogoliubov entry points).
pub fn solve_family(family: FamilyId, partial: &CoeffSet, lambda: f64) -> Result<MetricSolution> {
    match family {
        FamilyId::HermBilinear => solve_herm_bilinear(partial, lambda),
        FamilyId::HermLinear => solve_herm_linear(partial, lambda),
        FamilyId::GenericReducible => solve_generic_reducible(partial, lambda),
        FamilyId::GenericNonReducible => solve_generic_nonreducible(partial, lambda),
        FamilyId::LambdaZero => solve_lambda_zero(partial),
        FamilyId::LambdaHalf(s) => solve_lambda_half(partial, s),
        FamilyId::Reduced1Minus
        | FamilyId::Reduced1Plus
        | FamilyId::Reduced2Minus
        | FamilyId::Reduced2Plus => solve_reduced(family, partial, lambda),
        FamilyId::Sl2Example1 | FamilyId::Sl2Example2 | FamilyId::MultiParticle => {
            Err(QhError::InvalidParameter(format!(
                "{} has a dedicated entry point",
                family.name()
            )))
        }
    }
}

// ---------------------------------------------------------------------------
// printed closed-form counterparts of the two generic families
// ---------------------------------------------------------------------------

/// Closed-form Hermitian counterpart of the reducible family. Valid on the
/// family's constraint surface with μ₋₋ ≠ μ₊₊; the square-root branch is
/// chosen to match the conjugation by η(ε) with ε from the tanh-2θ
/// relation.
pub fn counterpart_reducible(c: &CoeffSet, lambda: f64) -> Result<CoeffSet> {
    check_lambda_interior(lambda)?;
    check_lambda_nonzero(lambda)?;
    let l = lambda;
    let l2 = l * l;
    let s2 = 1.0 - 4.0 * l2;
    let dl = c.mu_m - c.mu_p;
    let db = c.mu_mm - c.mu_pp;
    let scale = 1.0 + c.max_abs();
    if db.abs() < 1e-12 * scale {
        return Err(QhError::DegenerateFamily("mu_mm = mu_pp".into()));
    }
    let den2 = db - l * dl;
    if den2.abs() < 1e-12 * scale {
        return Err(QhError::DegenerateFamily("mu_mm - mu_pp = lambda (mu_m - mu_p)".into()));
    }

    let a0 = c.mu_0 - 2.0 * l / s2 * dl * (c.mu_mm + 3.0 * c.mu_pp - 2.0 * l * c.mu_p0) / db;
    let a00 = (2.0 * (c.mu_mm * c.mu_p - c.mu_pp * c.mu_m)
        - 2.0 * l * db * (c.mu_0 + c.mu_pp + c.mu_mm)
        + 2.0 * l2 * dl * (c.mu_mm + c.mu_pp + c.mu_pm)
        - 8.0 * l2 * l * db * (c.mu_mm + c.mu_pp - c.mu_pm)
        + 8.0 * l2 * l2 * dl * (c.mu_mm + c.mu_pp - c.mu_pm))
        / (s2 * den2);
    let apm = ((c.mu_pp - c.mu_mm) * (c.mu_mm + c.mu_pp - c.mu_pm)
        - l * (c.mu_pm * dl - (c.mu_m + c.mu_p) * db)
        - 2.0 * l2 * db * (c.mu_pm + c.mu_0)
        + 4.0 * l2 * l * dl * c.mu_pm)
        / (s2 * den2);
    let ap = (-l * (c.mu_mm * c.mu_mm - dl * c.mu_p0 + 2.0 * c.mu_mm * c.mu_pp
        - 3.0 * c.mu_pp * c.mu_pp)
        + c.mu_p * (c.mu_mm + c.mu_pp)
        - 2.0 * c.mu_m * c.mu_pp
        - 2.0 * l2 * db * (c.mu_m + c.mu_p - c.mu_p0))
        / (s2 * l * db);
    let app = (l * c.mu_p0 - c.mu_pp - 2.0 * l2 * (c.mu_mm + c.mu_pp)) / (s2 * l);
    let rad = 2.0 * c.mu_pp * (c.mu_mm + c.mu_pp) - l * (c.mu_mm + 3.0 * c.mu_pp) * c.mu_p0
        + l2 * (c.mu_p0 * c.mu_p0 + db * db);
    if rad < 0.0 {
        return Err(QhError::ComplexCounterpart(format!("negative radicand {rad:.3e}")));
    }
    let b0 = 2.0 * rad.sqrt() / (s2 * db);

    Ok(CoeffSet {
        mu_0: a0 + 2.0 * dl * l * b0,
        mu_p: l * ap + 0.5 * (dl + 2.0 * db * l) * b0,
        mu_m: l * ap + 0.5 * (dl + 2.0 * db * l) * b0,
        mu_00: a00 / (2.0 * l) + 2.0 * db * b0,
        mu_pm: apm + db * b0,
        mu_pp: l * app + 0.5 * db * b0,
        mu_mm: l * app + 0.5 * db * b0,
        mu_p0: 2.0 * app + (1.0 + 4.0 * l2) / (2.0 * l) * db * b0,
        mu_0m: 2.0 * app + (1.0 + 4.0 * l2) / (2.0 * l) * db * b0,
    })
}

/// Closed-form Hermitian counterpart of the non-reducible family.
pub fn counterpart_nonreducible(c: &CoeffSet, lambda: f64) -> Result<CoeffSet> {
    check_lambda_interior(lambda)?;
    let l = lambda;
    let l2 = l * l;
    let s2 = 1.0 - 4.0 * l2;
    let db = c.mu_mm - c.mu_pp;

    let c0 = (c.mu_0 - l * (c.mu_m - c.mu_p) - 4.0 * l2 * (c.mu_pp + c.mu_0)
        + 2.0 * l2 * l * (c.mu_m + c.mu_p)
        + 4.0 * l2 * l2 * (c.mu_pm - c.mu_0))
        / s2;
    let c00 = c.mu_00 / 2.0 - 2.0 * l2 * (c.mu_mm + c.mu_pp - l * c.mu_p0 - 2.0 * l2 * db) / s2;
    let cpm = c0 + c.mu_pm - c.mu_0;
    let cp = (c.mu_p - 2.0 * l * c.mu_pp - l2 * (c.mu_m + c.mu_p) + 2.0 * l2 * l * (c.mu_pm - c.mu_0)) / s2;
    let cpp = (c.mu_p0 - 4.0 * l * c.mu_pp - 2.0 * l2 * c.mu_p0 - 4.0 * l2 * l * db) / (2.0 * s2);
    let rad = 4.0 * c.mu_mm * c.mu_pp
        + l2 * (c.mu_p0 * c.mu_p0 + 8.0 * c.mu_pp * (c.mu_pp - c.mu_mm))
        - 2.0 * l * c.mu_p0 * (c.mu_mm + c.mu_pp)
        + 4.0 * l2 * l * c.mu_p0 * db
        + 4.0 * l2 * l2 * db * db;
    if rad < 0.0 {
        return Err(QhError::ComplexCounterpart(format!("negative radicand {rad:.3e}")));
    }
    let d0 = rad.sqrt() / (2.0 * (4.0 * l2 - 1.0));

    Ok(CoeffSet {
        mu_0: c0 + 4.0 * l2 * d0,
        mu_p: cp + 2.0 * l * d0,
        mu_m: cp + 2.0 * l * d0,
        mu_00: 2.0 * (c00 + 4.0 * l2 * d0),
        mu_pm: cpm + 4.0 * l2 * d0,
        mu_pp: l * cpp + (1.0 - 2.0 * l2) * d0,
        mu_mm: l * cpp + (1.0 - 2.0 * l2) * d0,
        mu_p0: 2.0 * (cpp + 2.0 * l * d0),
        mu_0m: 2.0 * (cpp + 2.0 * l * d0),
    })
}

// ---------------------------------------------------------------------------
// sl2 worked examples
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sl2Solution {
    pub completed: CoeffSet,
    pub eta: EtaParams,
    pub counterpart: CoeffSet,
}

/// Purely linear sl₂ example: κ₀ = ±2√(κ₋κ₊) and a one-parameter η map the
/// Hamiltonian onto a multiple of J̃₋ alone.
pub fn solve_sl2_example1(kappa_p: f64, kappa_m: f64, lambda: f64, branch: Sign) -> Result<Sl2Solution> {
    if kappa_p <= 0.0 || kappa_m <= 0.0 {
        return Err(QhError::InvalidParameter("example 1 needs kappa_p, kappa_m > 0".into()));
    }
    check_lambda_interior(lambda)?;
    let sigma = branch.as_f64();
    let kappa_0 = 2.0 * sigma * (kappa_p * kappa_m).sqrt();
    let sp = kappa_p.sqrt();
    let sm = kappa_m.sqrt();
    let den = sp - 2.0 * sigma * lambda * sm;
    if den.abs() < 1e-14 * (sp + sm) {
        return Err(QhError::DegenerateFamily("Y denominator vanishes".into()));
    }
    let y = -sp / den;
    let eps = stable_arctanh_ratio(y, lambda, 1)?;
    let completed = CoeffSet::linear(kappa_0, kappa_p, kappa_m);
    let eta = EtaParams::new(eps, lambda)?;
    let t = adjoint_coeffs(&eta);
    let counterpart = conjugate_coeffs(&completed, &t);
    Ok(Sl2Solution { completed, eta, counterpart })
}

/// sl₂ example without raising terms: the printed coupling relations carry
/// the representation label n through the L²-adjoint of J₀ (J₀† = −J₀ −
/// (n+1) for the degree-n polynomial module); the counterpart is diagonal.
pub fn solve_sl2_example2(kappa_00: f64, lambda: f64, n: u32) -> Result<Sl2Solution> {
    if lambda == 0.0 {
        return Err(QhError::InvalidParameter("example 2 needs lambda != 0".into()));
    }
    check_lambda_interior(lambda)?;
    let nn = n as f64;
    let kappa_0 = -(nn + 1.0) * kappa_00;
    let completed = CoeffSet {
        mu_0: kappa_0,
        mu_m: -(nn / lambda) * kappa_00,
        mu_00: kappa_00,
        mu_mm: kappa_00 / (lambda * lambda),
        mu_0m: (2.0 / lambda) * kappa_00,
        ..CoeffSet::ZERO
    };
    // tanh χ = χ/ε with χ = ε√(1−4λ²)
    let eps = stable_arctanh_ratio(1.0, lambda, 1)?;
    let eta = EtaParams::new(eps, lambda)?;
    let counterpart = CoeffSet { mu_00: kappa_00, mu_0: -kappa_0, ..CoeffSet::ZERO };
    Ok(Sl2Solution { completed, eta, counterpart })
}

// ---------------------------------------------------------------------------
// numerical verification
// ---------------------------------------------------------------------------

/// η built in a representation: exp(2εK₀ + 2ν(K₊ + K₋)).
pub fn eta_matrix(p: &EtaParams, rep: &TruncatedRep) -> Result<CMat> {
    let nu = p.nu();
    let x = &rep.k0.scale_re(2.0 * p.epsilon) + &(&rep.kp + &rep.km).scale_re(2.0 * nu);
    matrix_exp(&x)
}

/// Max interior deviation of ηK_lη⁻¹ from Σ t_lm K_m with η built by the
/// matrix exponential.
pub fn verify_adjoint(p: &EtaParams, rep: &TruncatedRep) -> Result<f64> {
    let nu = p.nu();
    let x = &rep.k0.scale_re(2.0 * p.epsilon) + &(&rep.kp + &rep.km).scale_re(2.0 * nu);
    let eta = matrix_exp(&x)?;
    let eta_inv = matrix_exp(&x.scale_re(-1.0))?;
    let t = adjoint_coeffs(p);
    let gens = [&rep.k0, &rep.kp, &rep.km];
    let int = rep.interior_dim;
    let mut worst = 0.0f64;
    for l in 0..3 {
        let image = &(&eta * gens[l]) * &eta_inv;
        let mut expect = CMat::zeros(rep.dim);
        for m in 0..3 {
            if t.t[l][m] != 0.0 {
                expect = &expect + &gens[m].scale_re(t.t[l][m]);
            }
        }
        worst = worst.max((&image - &expect).top_left(int).frobenius_norm());
    }
    Ok(worst)
}

/// Residuals of the three Hermitization predicates: similarity to a
/// Hermitian matrix, quasi-Hermiticity H†ρ = ρH with ρ = η†η, and
/// positivity of ρ, all on the interior block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub similarity_residual: f64,
    pub quasi_hermiticity_residual: f64,
    pub rho_min_eig: f64,
    pub eta_condition: f64,
}

pub fn verify_predicates(h: &CMat, eta: &CMat, interior: usize) -> Result<VerificationReport> {
    let rho = &eta.adjoint() * eta;
    let rho_eigs = eigenvalues_hermitian(&rho)?;
    let (rho_min, rho_max) = (rho_eigs[0], rho_eigs[rho_eigs.len() - 1]);
    if rho_min <= 0.0 || rho_max / rho_min > 1e15 {
        return Err(QhError::SingularEta { cond: (rho_max / rho_min.abs().max(1e-300)).sqrt() });
    }
    let eta_inv = eta.inverse().ok_or(QhError::SingularEta { cond: f64::INFINITY })?;
    let transformed = &(eta * h) * &eta_inv;
    let similarity_residual = transformed.top_left(interior).hermiticity_residual();
    let quasi = &(&h.adjoint() * &rho) - &(&rho * h);
    let quasi_hermiticity_residual = quasi.top_left(interior).frobenius_norm();
    let rho_int = eigenvalues_hermitian(&rho.top_left(interior))?;
    Ok(VerificationReport {
        similarity_residual,
        quasi_hermiticity_residual,
        rho_min_eig: rho_int[0],
        eta_condition: (rho_max / rho_min).sqrt(),
    })
}

// ---------------------------------------------------------------------------
// two-particle constraints
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiParticleSolution {
    pub completed: TwoParticleCoeffSet,
    pub eta1: EtaParams,
    pub eta2: EtaParams,
}

/// su(1,1) ⊕ su(1,1) family: the cross couplings are pinned to μ₊₊ by the
/// 1/λᵢ weights and each particle solves its own linear tanh-2θ relation.
pub fn solve_multiparticle(
    partial: &TwoParticleCoeffSet,
    lambda1: f64,
    lambda2: f64,
) -> Result<MultiParticleSolution> {
    for l in [lambda1, lambda2] {
        check_lambda_interior(l)?;
        check_lambda_nonzero(l)?;
    }
    let w = partial.cross[GP][GP];
    let mut cross = [[0.0; 3]; 3];
    cross[G0][G0] = w / (lambda1 * lambda2);
    cross[G0][GP] = w / lambda1;
    cross[G0][GM] = w / lambda1;
    cross[GP][G0] = w / lambda2;
    cross[GM][G0] = w / lambda2;
    cross[GP][GP] = w;
    cross[GP][GM] = w;
    cross[GM][GP] = w;
    cross[GM][GM] = w;
    let completed = TwoParticleCoeffSet { cross, ..*partial };

    let eps_for = |lin: &[f64; 3], lambda: f64| -> Result<f64> {
        let den = lin[GM] + lin[GP] - 2.0 * lambda * lin[G0];
        if den.abs() < 1e-14 * (1.0 + lin.iter().fold(0.0f64, |a, b| a.max(b.abs()))) {
            return Err(QhError::DegenerateFamily("linear tanh denominator vanishes".into()));
        }
        stable_arctanh_ratio((lin[GM] - lin[GP]) / den, lambda, 2)
    };
    let eta1 = EtaParams::new(eps_for(&completed.linear1, lambda1)?, lambda1)?;
    let eta2 = EtaParams::new(eps_for(&completed.linear2, lambda2)?, lambda2)?;
    Ok(MultiParticleSolution { completed, eta1, eta2 })
}

/// Hermitian counterpart of a completed two-particle set: per-particle
/// conjugation on the linear parts, t⁽¹⁾ᵀ·cross·t⁽²⁾ on the cross block
/// (the copies commute, so no reordering terms arise).
pub fn multiparticle_counterpart(sol: &MultiParticleSolution) -> TwoParticleCoeffSet {
    let t1 = adjoint_coeffs(&sol.eta1).t;
    let t2 = adjoint_coeffs(&sol.eta2).t;
    let mut lin1 = [0.0; 3];
    let mut lin2 = [0.0; 3];
    for m in 0..3 {
        for l in 0..3 {
            lin1[m] += sol.completed.linear1[l] * t1[l][m];
            lin2[m] += sol.completed.linear2[l] * t2[l][m];
        }
    }
    let mut cross = [[0.0; 3]; 3];
    for p in 0..3 {
        for q in 0..3 {
            for n in 0..3 {
                for m in 0..3 {
                    cross[p][q] += sol.completed.cross[n][m] * t1[n][p] * t2[m][q];
                }
            }
        }
    }
    TwoParticleCoeffSet { linear1: lin1, linear2: lin2, cross }
}

/// Largest Hermiticity defect of a two-particle coefficient set:
/// per-particle linear defects plus the cross-block symmetry conditions
/// (ĉ₀₀ real, ĉ₊₊ = ĉ₋₋, ĉ₊₋ = ĉ₋₊, ĉ₊₀ = ĉ₋₀, ĉ₀₊ = ĉ₀₋).
pub fn multiparticle_defect(c: &TwoParticleCoeffSet) -> f64 {
    let mut worst: f64 = (c.linear1[GP] - c.linear1[GM]).abs();
    worst = worst.max((c.linear2[GP] - c.linear2[GM]).abs());
    worst = worst.max((c.cross[GP][GP] - c.cross[GM][GM]).abs());
    worst = worst.max((c.cross[GP][GM] - c.cross[GM][GP]).abs());
    worst = worst.max((c.cross[GP][G0] - c.cross[GM][G0]).abs());
    worst = worst.max((c.cross[G0][GP] - c.cross[G0][GM]).abs());
    worst
}

// ---------------------------------------------------------------------------
// family classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub family: FamilyId,
    pub applicable: bool,
    pub lambda: Option<f64>,
    pub epsilon: Option<f64>,
    pub obstruction: Option<String>,
    pub max_residual: Option<f64>,
}

fn coeffs_close(a: &CoeffSet, b: &CoeffSet, tol: f64) -> bool {
    a.to_array()
        .iter()
        .zip(b.to_array().iter())
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

/// Probes each su(1,1) family against a full coefficient set. λ is inferred
/// from the structural constraints where the family determines it; for the
/// bilinear-free linear case a caller-supplied λ is probed instead.
pub fn classify(c: &CoeffSet, probe_lambda: Option<f64>, tol: f64) -> Vec<FamilyVerdict> {
    let mut out = Vec::new();
    let mut push = |family: FamilyId, lambda: f64, result: Result<MetricSolution>| {
        let verdict = match result {
            Ok(sol) => {
                if coeffs_close(&sol.completed, c, tol) {
                    FamilyVerdict {
                        family,
                        applicable: true,
                        lambda: Some(lambda),
                        epsilon: Some(sol.eta.epsilon),
                        obstruction: None,
                        max_residual: Some(
                            sol.constraint_residuals.iter().fold(0.0f64, |a, b| a.max(b.abs())),
                        ),
                    }
                } else {
                    FamilyVerdict {
                        family,
                        applicable: false,
                        lambda: Some(lambda),
                        epsilon: None,
                        obstruction: Some("completion disagrees with supplied couplings".into()),
                        max_residual: None,
                    }
                }
            }
            Err(e) => FamilyVerdict {
                family,
                applicable: false,
                lambda: Some(lambda),
                epsilon: None,
                obstruction: Some(e.to_string()),
                max_residual: None,
            },
        };
        out.push(verdict);
    };

    let scale = 1.0 + c.max_abs();
    let near = |a: f64, b: f64| (a - b).abs() <= tol * scale;

    // herm-bilinear: λ from μ₊₀/μ₊₊ = 2/λ when the bilinears are present
    {
        let lam = if c.mu_pp.abs() > tol * scale && c.mu_p0.abs() > tol * scale {
            Some(2.0 * c.mu_pp / c.mu_p0)
        } else if c.mu_pp.abs() <= tol * scale && c.mu_p0.abs() <= tol * scale {
            probe_lambda
        } else {
            None
        };
        match lam {
            Some(l) if l.abs() < 0.5 => push(FamilyId::HermBilinear, l, solve_herm_bilinear(c, l)),
            Some(l) => out.push(FamilyVerdict {
                family: FamilyId::HermBilinear,
                applicable: false,
                lambda: Some(l),
                epsilon: None,
                obstruction: Some(format!("inferred lambda {l} outside (-1/2, 1/2)")),
                max_residual: None,
            }),
            None => out.push(FamilyVerdict {
                family: FamilyId::HermBilinear,
                applicable: false,
                lambda: None,
                epsilon: None,
                obstruction: Some("bilinear structure incompatible".into()),
                max_residual: None,
            }),
        }
    }

    // herm-linear: needs μ₊ = μ₋; λ from μ₊ = λ(μ₀+μ₀₀−μ₊₊−μ₋₋)
    {
        let den = c.mu_0 + c.mu_00 - c.mu_pp - c.mu_mm;
        if near(c.mu_p, c.mu_m) && den.abs() > tol * scale {
            let l = c.mu_p / den;
            if l.abs() < 0.5 && l != 0.0 {
                push(FamilyId::HermLinear, l, solve_herm_linear(c, l));
            } else {
                out.push(FamilyVerdict {
                    family: FamilyId::HermLinear,
                    applicable: false,
                    lambda: Some(l),
                    epsilon: None,
                    obstruction: Some(format!("inferred lambda {l} outside domain")),
                    max_residual: None,
                });
            }
        } else {
            out.push(FamilyVerdict {
                family: FamilyId::HermLinear,
                applicable: false,
                lambda: None,
                epsilon: None,
                obstruction: Some("linear part not Hermitian or lambda indeterminate".into()),
                max_residual: None,
            });
        }
    }

    // generic families: λ from the first constraint of each
    {
        let d_mixed = c.mu_p0 - c.mu_0m;
        if d_mixed.abs() > tol * scale {
            let l = (c.mu_pp - c.mu_mm) / d_mixed;
            if l != 0.0 && l.abs() < 0.5 {
                push(FamilyId::GenericReducible, l, solve_generic_reducible(c, l));
            } else {
                out.push(FamilyVerdict {
                    family: FamilyId::GenericReducible,
                    applicable: false,
                    lambda: Some(l),
                    epsilon: None,
                    obstruction: Some(format!("inferred lambda {l} outside domain")),
                    max_residual: None,
                });
            }
        } else {
            out.push(FamilyVerdict {
                family: FamilyId::GenericReducible,
                applicable: false,
                lambda: None,
                epsilon: None,
                obstruction: Some("mu_p0 = mu_0m leaves lambda indeterminate".into()),
                max_residual: None,
            });
        }
        let dq = c.mu_pp - c.mu_mm;
        if dq.abs() > tol * scale {
            let l = (c.mu_p - c.mu_m) / (2.0 * dq);
            if l != 0.0 && l.abs() < 0.5 {
                push(FamilyId::GenericNonReducible, l, solve_generic_nonreducible(c, l));
            } else {
                out.push(FamilyVerdict {
                    family: FamilyId::GenericNonReducible,
                    applicable: false,
                    lambda: Some(l),
                    epsilon: None,
                    obstruction: Some(format!("inferred lambda {l} outside domain")),
                    max_residual: None,
                });
            }
        } else {
            out.push(FamilyVerdict {
                family: FamilyId::GenericNonReducible,
                applicable: false,
                lambda: None,
                epsilon: None,
                obstruction: Some("mu_pp = mu_mm leaves lambda indeterminate".into()),
                max_residual: None,
            });
        }
    }

    push(FamilyId::LambdaZero, 0.0, solve_lambda_zero(c));
    push(FamilyId::LambdaHalf(Sign::Plus), 0.5, solve_lambda_half(c, Sign::Plus));
    push(FamilyId::LambdaHalf(Sign::Minus), -0.5, solve_lambda_half(c, Sign::Minus));

    // reduced cases: λ inferred from the leading bilinear ratio
    let reduced = [
        (FamilyId::Reduced1Minus, c.mu_p0, c.mu_pp, 1.0),
        (FamilyId::Reduced2Minus, 2.0 * c.mu_pp, c.mu_p, 1.0),
        (FamilyId::Reduced1Plus, c.mu_0m, c.mu_mm, 1.0),
        (FamilyId::Reduced2Plus, 2.0 * c.mu_mm, c.mu_m, 1.0),
    ];
    for (family, den, num, _) in reduced {
        if den.abs() > tol * scale {
            let l = num / den;
            if l != 0.0 && l.abs() < 0.5 {
                push(family, l, solve_reduced(family, c, l));
                continue;
            }
        }
        out.push(FamilyVerdict {
            family,
            applicable: false,
            lambda: None,
            epsilon: None,
            obstruction: Some("structural couplings absent or lambda outside domain".into()),
            max_residual: None,
        });
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_half() -> CoeffSet {
        CoeffSet {
            mu_0: -1.0,
            mu_p: 1.0,
            mu_m: -1.0,
            mu_00: 1.0,
            mu_pm: 1.0,
            mu_p0: 1.0,
            mu_0m: 1.0,
            mu_pp: 5.5,
            mu_mm: 0.5,
        }
    }

    #[test]
    fn adjoint_identity_at_eps_zero() {
        let t = adjoint_coeffs(&EtaParams::new(0.0, 0.3).unwrap());
        assert_eq!(t.t, AdjointCoeffs::identity().t);
    }

    #[test]
    fn adjoint_diagonal_at_lambda_zero() {
        let eps = 0.7;
        let t = adjoint_coeffs(&EtaParams::new(eps, 0.0).unwrap());
        assert!((t.t[Z][Z] - 1.0).abs() < 1e-14);
        assert!((t.t[P][P] - (2.0 * eps).exp()).abs() < 1e-12);
        assert!((t.t[M][M] - (-2.0 * eps).exp()).abs() < 1e-12);
        for (l, m) in [(Z, P), (Z, M), (P, Z), (P, M), (M, Z), (M, P)] {
            assert!(t.t[l][m].abs() < 1e-14);
        }
    }

    #[test]
    fn adjoint_t00_printed_value() {
        // ε = 1, λ = 1/4: t₀₀ = 1 − (1/2)·sinh²θ/θ², θ = √3/2
        let p = EtaParams::new(1.0, 0.25).unwrap();
        let t = adjoint_coeffs(&p);
        let theta: f64 = 3.0f64.sqrt() / 2.0;
        let want = 1.0 - 0.5 * (theta.sinh() / theta).powi(2);
        assert!((t.t[Z][Z] - want).abs() < 1e-14);
    }

    #[test]
    fn adjoint_det_one_and_automorphism() {
        for &(eps, lam) in &[(0.4, 0.2), (-0.8, 0.45), (1.2, -0.3), (-0.25, 0.5)] {
            let t = adjoint_coeffs(&EtaParams::new(eps, lam).unwrap()).t;
            let det = AdjointCoeffs { t }.det();
            assert!((det - 1.0).abs() < 1e-12, "det {det} at ({eps}, {lam})");
            // commutator preservation: [img(0), img(+)] = img(+)
            let bracket = |a: [f64; 3], b: [f64; 3]| {
                [2.0 * (a[M] * b[P] - a[P] * b[M]), a[Z] * b[P] - a[P] * b[Z], a[M] * b[Z] - a[Z] * b[M]]
            };
            let got = bracket(t[Z], t[P]);
            for k in 0..3 {
                assert!((got[k] - t[P][k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn scaled_poly_matches_adjoint() {
        // t = cosh²θ · T(Y, λ)
        for &(eps, lam) in &[(0.6, 0.2), (-0.4, 0.45), (0.9, -0.1)] {
            let p = EtaParams::new(eps, lam).unwrap();
            let t = adjoint_coeffs(&p).t;
            let c2 = cosh_even(p.theta_sq()).powi(2);
            let tp = scaled_adjoint_poly(p.y(), lam);
            for l in 0..3 {
                for m in 0..3 {
                    assert!(
                        (t[l][m] - c2 * tp[l][m]).abs() < 1e-12,
                        "mismatch at ({l},{m}) for ({eps},{lam})"
                    );
                }
            }
        }
    }

    #[test]
    fn cc_routes_agree() {
        let c = h_half();
        for &(lam, y) in &[(0.5, -0.25), (0.3, 0.4), (-0.45, -0.7), (0.0, 0.2)] {
            let a = constraint_residuals_cc(&c, lam, y);
            let b = constraint_residuals_via_transform(&c, lam, y);
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() < 1e-10, "route mismatch {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn cc_zero_for_hermitian_at_y_zero() {
        let c = CoeffSet {
            mu_0: 1.0,
            mu_p: 0.4,
            mu_m: 0.4,
            mu_pp: 0.2,
            mu_mm: 0.2,
            mu_p0: -0.7,
            mu_0m: -0.7,
            mu_00: 0.3,
            mu_pm: 0.1,
        };
        let r = constraint_residuals_cc(&c, 0.0, 0.0);
        assert_eq!(r, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn conjugation_preserves_casimir() {
        let cas = crate::su11::casimir_coeffs();
        for &(eps, lam) in &[(0.5, 0.25), (-1.0, 0.5), (0.3, 0.0)] {
            let t = adjoint_coeffs(&EtaParams::new(eps, lam).unwrap());
            let out = conjugate_coeffs(&cas, &t);
            for (a, b) in out.to_array().iter().zip(cas.to_array().iter()) {
                assert!((a - b).abs() < 1e-12, "Casimir moved: {out:?}");
            }
        }
    }

    #[test]
    fn lambda_half_boundary_solution() {
        // seven couplings of the printed λ = 1/2 example; the boundary
        // system pins ε = −1 and (μ₊₊, μ₋₋) = (−1/2, 1/6)
        let sol = solve_lambda_half(
            &CoeffSet { mu_pp: 0.0, mu_mm: 0.0, ..h_half() },
            Sign::Plus,
        )
        .unwrap();
        assert!((sol.eta.epsilon + 1.0).abs() < 1e-12, "eps = {}", sol.eta.epsilon);
        assert!((sol.completed.mu_pp + 0.5).abs() < 1e-12);
        assert!((sol.completed.mu_mm - 1.0 / 6.0).abs() < 1e-12);
        assert!(sol.conjugation_asymmetry < 1e-12);
        assert!(hermiticity_defect(&sol.counterpart).is_zero());
        for r in sol.constraint_residuals {
            assert!(r.abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_half_rejects_conflicting_bilinears() {
        assert!(matches!(
            solve_lambda_half(&h_half(), Sign::Plus),
            Err(QhError::FamilyInapplicable(_))
        ));
    }

    #[test]
    fn lambda_zero_example() {
        let e4 = 4.0f64.exp();
        let e8 = 8.0f64.exp();
        let c = CoeffSet {
            mu_pp: 1.0,
            mu_mm: e8,
            mu_p: 1.0,
            mu_m: e4,
            mu_p0: 1.0,
            mu_0m: e4,
            ..CoeffSet::ZERO
        };
        let sol = solve_lambda_zero(&c).unwrap();
        assert!((sol.eta.epsilon - 1.0).abs() < 1e-12);
        assert!(hermiticity_defect(&sol.counterpart).max_abs() < 1e-9);
        // sign violation rejected
        let bad = CoeffSet { mu_mm: -1.0, ..c };
        assert!(solve_lambda_zero(&bad).is_err());
    }

    #[test]
    fn reduced_one_minus_example() {
        let sol = solve_reduced(
            FamilyId::Reduced1Minus,
            &CoeffSet { mu_0: 1.0, mu_p0: 2.0, mu_p: 0.8, ..CoeffSet::ZERO },
            0.25,
        )
        .unwrap();
        assert!((sol.completed.mu_pp - 0.5).abs() < 1e-14);
        assert!((sol.completed.mu_00 + 0.5).abs() < 1e-14);
        assert!((sol.completed.mu_pm - 1.0).abs() < 1e-14);
        // |ε| = arctanh(√3/2)/√3; the machine sign is negative for this side
        let s: f64 = 0.75f64.sqrt();
        assert!((sol.eta.epsilon.abs() - s.atanh() / (2.0 * s)).abs() < 1e-12);
        for r in sol.constraint_residuals {
            assert!(r.abs() < 1e-10, "{:?}", sol.constraint_residuals);
        }
        assert!(hermiticity_defect(&sol.counterpart).is_zero());
    }

    #[test]
    fn sl2_example2_closed_form_eps() {
        let sol = solve_sl2_example2(1.0, 0.3, 4).unwrap();
        let want = 0.8f64.atanh() / 0.8;
        assert!((sol.eta.epsilon - want).abs() < 1e-12);
        // tanh(ε·0.8) = 0.8
        assert!(((sol.eta.epsilon * 0.8).tanh() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn multiparticle_symmetric_input() {
        let partial = TwoParticleCoeffSet {
            linear1: [1.0, 0.3, 0.7],
            linear2: [1.0, 0.3, 0.7],
            cross: [[0.0, 0.0, 0.0], [0.0, 0.2, 0.0], [0.0, 0.0, 0.0]],
            ..Default::default()
        };
        let sol = solve_multiparticle(&partial, 0.2, 0.2).unwrap();
        assert!((sol.eta1.epsilon - sol.eta2.epsilon).abs() < 1e-14);
        assert!((sol.completed.cross[G0][G0] - 0.2 / 0.04).abs() < 1e-12);
        let h = multiparticle_counterpart(&sol);
        assert!(multiparticle_defect(&h) < 1e-10, "defect {}", multiparticle_defect(&h));
    }

    #[test]
    fn multiparticle_decoupled_when_cross_zero() {
        let partial = TwoParticleCoeffSet {
            linear1: [1.0, 0.4, 0.9],
            linear2: [0.8, 0.2, 0.5],
            ..Default::default()
        };
        let sol = solve_multiparticle(&partial, 0.15, -0.3).unwrap();
        assert_eq!(sol.completed.cross, [[0.0; 3]; 3]);
        let h = multiparticle_counterpart(&sol);
        assert!(multiparticle_defect(&h) < 1e-10);
    }
}
