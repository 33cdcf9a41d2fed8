//! Generalized Bogoliubov transformations: the (c, d) operator pair, the
//! 3×3 mixing between K and Ǩ generators, the six reduction equations in
//! (y, z) = (α/γ, δ/β), every printed solution family with its closed-form
//! number-operator spectrum, and the bridging constraints back to the
//! metric construction.

use crate::error::{QhError, Result};
use crate::metric::{self, EtaParams, MetricSolution, Sign};
use crate::su11::CoeffSet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C64 = Complex64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Parameters of the transformation (d, c) = ((β, −δ), (−α, γ))·(a, a†),
/// constrained by βγ − αδ = 1 with β, γ ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogParams {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl BogParams {
    pub fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let p = BogParams { alpha, beta, gamma, delta };
        if (p.constraint() - c(1.0)).norm() > 1e-10 {
            return Err(QhError::InvalidParameter(format!(
                "beta*gamma - alpha*delta = {} != 1",
                p.constraint()
            )));
        }
        if beta.norm() == 0.0 || gamma.norm() == 0.0 {
            return Err(QhError::InvalidParameter("beta and gamma must be nonzero".into()));
        }
        Ok(p)
    }

    /// Representative parameters for given (y, z): β = γ = (1−yz)^{-1/2}.
    /// The six reduction equations depend on (y, z) alone.
    pub fn from_yz(y: C64, z: C64) -> Result<Self> {
        let w = c(1.0) - y * z;
        if w.norm() < 1e-12 {
            return Err(QhError::InvalidParameter("yz = 1 makes the mixing singular".into()));
        }
        let g = (c(1.0) / w).sqrt();
        BogParams::new(y * g, g, g, z * g)
    }

    pub fn constraint(&self) -> C64 {
        self.beta * self.gamma - self.alpha * self.delta
    }

    pub fn y(&self) -> C64 {
        self.alpha / self.gamma
    }

    pub fn z(&self) -> C64 {
        self.delta / self.beta
    }

    /// Unbroken PT requires all four parameters purely imaginary.
    pub fn is_pt_mode(&self, tol: f64) -> bool {
        [self.alpha, self.beta, self.gamma, self.delta]
            .iter()
            .all(|v| v.re.abs() <= tol * (1.0 + v.norm()))
    }
}

/// The printed mixing matrix: (K₀, K₊, K₋)ᵀ = M (Ǩ₀, Ǩ₊, Ǩ₋)ᵀ, and its
/// inverse from βγ − αδ = 1.
pub fn mixing_matrix(p: &BogParams) -> ([[C64; 3]; 3], [[C64; 3]; 3]) {
    let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
    let m = [
        [g * b + d * a, b * d, a * g],
        [c(2.0) * a * b, b * b, a * a],
        [c(2.0) * g * d, d * d, g * g],
    ];
    let minv = [
        [g * b + d * a, -g * d, -a * b],
        [c(-2.0) * g * a, g * g, a * a],
        [c(-2.0) * d * b, d * d, b * b],
    ];
    (m, minv)
}

/// M(y, z) in the rational normal form used by the reduction equations.
fn mixing_yz(y: C64, z: C64) -> Result<[[C64; 3]; 3]> {
    let w = c(1.0) - y * z;
    if w.norm() < 1e-12 {
        return Err(QhError::InvalidParameter("yz = 1 makes the mixing singular".into()));
    }
    Ok([
        [(c(1.0) + y * z) / w, z / w, y / w],
        [c(2.0) * y / w, c(1.0) / w, y * y / w],
        [c(2.0) * z / w, z * z / w, c(1.0) / w],
    ])
}

/// Transforms an ordered coefficient set through a complex generator map,
/// reordering disordered products exactly as in the metric conjugation.
/// Returns the nine coefficients in the standard layout.
pub fn transform_coeffs_complex(cs: &CoeffSet, t: &[[C64; 3]; 3]) -> [C64; 9] {
    const Z: usize = 0;
    const P: usize = 1;
    const M: usize = 2;
    let lin = [c(cs.mu_0), c(cs.mu_p), c(cs.mu_m)];
    let mut l = [c(0.0); 3];
    for m in 0..3 {
        l[m] = lin[Z] * t[Z][m] + lin[P] * t[P][m] + lin[M] * t[M][m];
    }
    let pairs = [
        ((Z, Z), cs.mu_00),
        ((P, M), cs.mu_pm),
        ((P, Z), cs.mu_p0),
        ((Z, M), cs.mu_0m),
        ((P, P), cs.mu_pp),
        ((M, M), cs.mu_mm),
    ];
    let mut b = [[c(0.0); 3]; 3];
    for &((n, m), coeff) in &pairs {
        if coeff == 0.0 {
            continue;
        }
        for p in 0..3 {
            for q in 0..3 {
                b[p][q] += c(coeff) * t[n][p] * t[m][q];
            }
        }
    }
    [
        l[Z] + c(2.0) * b[M][P],
        l[P] + b[Z][P],
        l[M] + b[M][Z],
        b[Z][Z],
        b[P][P],
        b[M][M],
        b[P][M] + b[M][P],
        b[P][Z] + b[Z][P],
        b[Z][M] + b[M][Z],
    ]
}

/// The six reduction equations evaluated as the coefficients of Ǩ₊, Ǩ₋,
/// Ǩ₊², Ǩ₋², Ǩ₊Ǩ₀ and Ǩ₀Ǩ₋ after the substitution K = M(y,z)·Ǩ,
/// scaled by (1−yz)² so the results are polynomial in (y, z).
///
/// Returned magnitudes in the order [μ̌₊, μ̌₋, μ̌₊₊, μ̌₋₋, μ̌₊₀, μ̌₀₋].
pub fn residuals_cong(cs: &CoeffSet, y: C64, z: C64) -> Result<[f64; 6]> {
    let m = mixing_yz(y, z)?;
    let mu = transform_coeffs_complex(cs, &m);
    let w = c(1.0) - y * z;
    let w2 = w * w;
    Ok([
        (mu[1] * w2).norm(),
        (mu[2] * w2).norm(),
        (mu[4] * w2).norm(),
        (mu[5] * w2).norm(),
        (mu[7] * w2).norm(),
        (mu[8] * w2).norm(),
    ])
}

/// Paper grouping of the number-operator form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grouping {
    /// quad·(Ň²+Ň) + lin·(Ň+1/2) + const
    NSqPlusN,
    /// quad·(Ň²−Ň) + lin·(Ň+1/8) + const
    NSqMinusN,
    /// lin·(Ň+1/2) + const
    Linear,
}

/// Closed-form spectrum E_n in one of the printed groupings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorForm {
    pub grouping: Grouping,
    pub quad: f64,
    pub lin: f64,
    pub constant: f64,
}

impl OscillatorForm {
    /// Canonical polynomial coefficients (c₂, c₁, c₀) with E_n = c₂n² + c₁n + c₀.
    pub fn canonical(&self) -> [f64; 3] {
        match self.grouping {
            Grouping::NSqPlusN => [
                self.quad,
                self.quad + self.lin,
                self.lin / 2.0 + self.constant,
            ],
            Grouping::NSqMinusN => [
                self.quad,
                -self.quad + self.lin,
                self.lin / 8.0 + self.constant,
            ],
            Grouping::Linear => [0.0, self.lin, self.lin / 2.0 + self.constant],
        }
    }

    fn from_canonical(grouping: Grouping, c2: f64, c1: f64, c0: f64) -> Self {
        match grouping {
            Grouping::NSqPlusN => {
                let lin = c1 - c2;
                OscillatorForm { grouping, quad: c2, lin, constant: c0 - lin / 2.0 }
            }
            Grouping::NSqMinusN => {
                let lin = c1 + c2;
                OscillatorForm { grouping, quad: c2, lin, constant: c0 - lin / 8.0 }
            }
            Grouping::Linear => OscillatorForm { grouping, quad: 0.0, lin: c1, constant: c0 - c1 / 2.0 },
        }
    }
}

/// E_n for n = 0..=n_max.
pub fn spectrum(form: &OscillatorForm, n_max: usize) -> Vec<f64> {
    let [c2, c1, c0] = form.canonical();
    (0..=n_max).map(|n| {
        let x = n as f64;
        c2 * x * x + c1 * x + c0
    }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BogFamily {
    Generic,
    HermLinear,
    HermBilinear,
    AsymDeltaZero,
    AsymAlphaZero,
}

impl BogFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BogFamily::Generic => "bog-generic",
            BogFamily::HermLinear => "bog-herm-linear",
            BogFamily::HermBilinear => "bog-herm-bilinear",
            BogFamily::AsymDeltaZero => "bog-asym-delta-zero",
            BogFamily::AsymAlphaZero => "bog-asym-alpha-zero",
        }
    }
}

/// A solved Bogoliubov reduction: completed couplings, the (y, z) pair,
/// the residuals of the six equations and the number-operator spectrum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BogSolution {
    pub family: BogFamily,
    pub completed: CoeffSet,
    pub y: C64,
    pub z: C64,
    pub residuals: [f64; 6],
    /// (c₂, c₁, c₀) of E_n = c₂n² + c₁n + c₀, possibly complex when the
    /// reality conditions fail.
    pub spectrum_canonical: [C64; 3],
    pub form: Option<OscillatorForm>,
    pub reality_ok: bool,
}

fn canonical_from_transform(mu: &[C64; 9]) -> [C64; 3] {
    // surviving couplings μ̌₀, μ̌₀₀, μ̌₊₋ with Ǩ₊Ǩ₋ = Ǩ₀² − Ǩ₀ + 1/8 and
    // Ǩ₀ = (Ň + 1/2)/2
    let a = (mu[3] + mu[6]) / 4.0;
    let b = (mu[0] - mu[6]) / 2.0;
    let c0 = (mu[3] + mu[6]) / 16.0 + mu[6] / 8.0;
    [a, a + b, b / 2.0 + c0]
}

fn finish(
    family: BogFamily,
    completed: CoeffSet,
    y: C64,
    z: C64,
    grouping: Grouping,
) -> Result<BogSolution> {
    if (y * z + c(1.0)).norm() < 1e-10 {
        return Err(QhError::YzMinusOne);
    }
    let m = mixing_yz(y, z)?;
    let mu = transform_coeffs_complex(&completed, &m);
    let w2 = (c(1.0) - y * z).powi(2);
    let residuals = [
        (mu[1] * w2).norm(),
        (mu[2] * w2).norm(),
        (mu[4] * w2).norm(),
        (mu[5] * w2).norm(),
        (mu[7] * w2).norm(),
        (mu[8] * w2).norm(),
    ];
    let canon = canonical_from_transform(&mu);
    let imag = canon.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let scale = 1.0 + canon.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let real_spectrum = imag < 1e-9 * scale;
    let bounded_below = real_spectrum
        && (canon[0].re > 1e-12 * scale
            || (canon[0].re.abs() <= 1e-12 * scale && canon[1].re > 0.0));
    let form = if real_spectrum {
        Some(OscillatorForm::from_canonical(grouping, canon[0].re, canon[1].re, canon[2].re))
    } else {
        None
    };
    Ok(BogSolution {
        family,
        completed,
        y,
        z,
        residuals,
        spectrum_canonical: canon,
        form,
        reality_ok: real_spectrum && bounded_below,
    })
}

/// Generic family: μ₊, μ₋, μ₊₊, μ₊₀ free and nonzero. Completes the
/// remaining four couplings and solves the quadratic
/// 2μ₊₊y² + μ₊₀y + 2μ₊₊μ₋/μ₊ = 0, z = (μ₊/μ₋)y.
pub fn solve_generic(partial: &CoeffSet, branch: Sign) -> Result<BogSolution> {
    for (v, n) in [
        (partial.mu_p, "mu_p"),
        (partial.mu_m, "mu_m"),
        (partial.mu_pp, "mu_pp"),
        (partial.mu_p0, "mu_p0"),
    ] {
        if v == 0.0 {
            return Err(QhError::InvalidParameter(format!("generic family needs {n} != 0")));
        }
    }
    let completed = CoeffSet {
        mu_mm: partial.mu_pp * partial.mu_m * partial.mu_m / (partial.mu_p * partial.mu_p),
        mu_0m: partial.mu_p0 * partial.mu_m / partial.mu_p,
        mu_pm: partial.mu_0 - partial.mu_p * partial.mu_p0 / (2.0 * partial.mu_pp)
            + partial.mu_p0 * partial.mu_p0 / (4.0 * partial.mu_pp),
        mu_00: -partial.mu_0 + partial.mu_p * partial.mu_p0 / (2.0 * partial.mu_pp)
            + 2.0 * partial.mu_m * partial.mu_pp / partial.mu_p,
        ..*partial
    };
    let disc = c(completed.mu_p0 * completed.mu_p0 / 16.0
        - completed.mu_pp * completed.mu_pp * completed.mu_m / completed.mu_p);
    let theta = disc.sqrt();
    let y = (theta * branch.as_f64() - c(completed.mu_p0 / 4.0)) / completed.mu_pp;
    let z = y * completed.mu_p / completed.mu_m;
    finish(BogFamily::Generic, completed, y, z, Grouping::NSqPlusN)
}

/// Hermitian linear term (μ₊ = μ₋ = 0) with non-Hermitian bilinears.
/// Free: μ₀, μ₀₀, μ₊₊, μ₊₀.
pub fn solve_herm_linear(partial: &CoeffSet, branch: Sign) -> Result<BogSolution> {
    if partial.mu_p != 0.0 || partial.mu_m != 0.0 {
        return Err(QhError::InvalidParameter("family requires mu_p = mu_m = 0".into()));
    }
    if partial.mu_pp == 0.0 || partial.mu_p0 == 0.0 {
        return Err(QhError::InvalidParameter("family needs mu_pp, mu_p0 != 0".into()));
    }
    let s = partial.mu_0 + partial.mu_00;
    if s.abs() < 1e-14 * (1.0 + partial.max_abs()) {
        return Err(QhError::DegenerateFamily("mu_0 + mu_00 = 0".into()));
    }
    let completed = CoeffSet {
        mu_mm: s * s / (4.0 * partial.mu_pp),
        mu_0m: partial.mu_p0 * s / (2.0 * partial.mu_pp),
        mu_pm: partial.mu_0 + partial.mu_p0 * partial.mu_p0 / (4.0 * partial.mu_pp),
        ..*partial
    };
    let disc = c(completed.mu_p0 * completed.mu_p0 / 16.0 - completed.mu_pp * s / 2.0);
    let y = (disc.sqrt() * branch.as_f64() - c(completed.mu_p0 / 4.0)) / completed.mu_pp;
    let z = y * 2.0 * completed.mu_pp / s;
    finish(BogFamily::HermLinear, completed, y, z, Grouping::NSqPlusN)
}

/// Hermitian bilinear limit: all four ladder bilinears vanish, μ₊, μ₋ ≠ 0.
/// Free: μ₀, μ₀₀, μ₊, μ₋; completes μ₊₋ = −μ₀₀.
pub fn solve_herm_bilinear(partial: &CoeffSet, branch: Sign) -> Result<BogSolution> {
    if partial.mu_pp != 0.0 || partial.mu_mm != 0.0 || partial.mu_p0 != 0.0 || partial.mu_0m != 0.0
    {
        return Err(QhError::InvalidParameter(
            "family requires mu_pp = mu_mm = mu_p0 = mu_0m = 0".into(),
        ));
    }
    if partial.mu_p == 0.0 || partial.mu_m == 0.0 {
        return Err(QhError::InvalidParameter("family needs mu_p, mu_m != 0".into()));
    }
    let completed = CoeffSet { mu_pm: -partial.mu_00, ..*partial };
    let s = completed.mu_0 + completed.mu_00;
    let disc = c(s * s / 4.0 - completed.mu_p * completed.mu_m);
    let y = (disc.sqrt() * branch.as_f64() - c(s / 2.0)) / completed.mu_p;
    let z = y * completed.mu_p / completed.mu_m;
    finish(BogFamily::HermBilinear, completed, y, z, Grouping::Linear)
}

/// Asymmetric transformations: δ = 0 keeps y free and kills the raising
/// couplings; α = 0 keeps z free and kills the lowering couplings.
pub fn solve_asymmetric(family: BogFamily, partial: &CoeffSet, param: f64) -> Result<BogSolution> {
    if param == 0.0 {
        return Err(QhError::InvalidParameter("asymmetric parameter must be nonzero".into()));
    }
    match family {
        BogFamily::AsymDeltaZero => {
            if partial.mu_mm == 0.0 {
                return Err(QhError::InvalidParameter("family needs mu_mm != 0".into()));
            }
            let y = param;
            let mu_00 = -partial.mu_0 - partial.mu_m / y;
            let completed = CoeffSet {
                mu_p: 0.0,
                mu_pp: 0.0,
                mu_p0: 0.0,
                mu_0m: -2.0 * partial.mu_mm / y,
                mu_00,
                mu_pm: partial.mu_mm / (y * y) - mu_00,
                ..*partial
            };
            finish(BogFamily::AsymDeltaZero, completed, c(y), c(0.0), Grouping::NSqMinusN)
        }
        BogFamily::AsymAlphaZero => {
            if partial.mu_pp == 0.0 {
                return Err(QhError::InvalidParameter("family needs mu_pp != 0".into()));
            }
            let z = param;
            let mu_00 = -partial.mu_0 - partial.mu_p / z;
            let completed = CoeffSet {
                mu_m: 0.0,
                mu_mm: 0.0,
                mu_0m: 0.0,
                mu_p0: -2.0 * partial.mu_pp / z,
                mu_00,
                mu_pm: partial.mu_pp / (z * z) - mu_00,
                ..*partial
            };
            finish(BogFamily::AsymAlphaZero, completed, c(0.0), c(z), Grouping::NSqMinusN)
        }
        other => Err(QhError::InvalidParameter(format!(
            "solve_asymmetric does not handle {}",
            other.name()
        ))),
    }
}

// ---------------------------------------------------------------------------
// bridges to the metric construction
// ---------------------------------------------------------------------------

/// Where the generic Bogoliubov solution also admits a metric: μ₊₀ = 2μ₊
/// with λ = μ₊²/(2(μ₊+μ₋)μ₊₊). Returns the metric solution for comparison.
pub fn bridge_generic_to_metric(sol: &BogSolution) -> Result<MetricSolution> {
    let cs = &sol.completed;
    let scale = 1.0 + cs.max_abs();
    if (cs.mu_p0 - 2.0 * cs.mu_p).abs() > 1e-9 * scale {
        return Err(QhError::FamilyInapplicable("bridge needs mu_p0 = 2 mu_p".into()));
    }
    let den = 2.0 * (cs.mu_p + cs.mu_m) * cs.mu_pp;
    if den.abs() < 1e-14 * scale * scale {
        return Err(QhError::FamilyInapplicable("mu_p + mu_m = 0 leaves lambda undefined".into()));
    }
    let lambda = cs.mu_p * cs.mu_p / den;
    if lambda.abs() > 0.5 {
        return Err(QhError::FamilyInapplicable(format!(
            "bridge lambda {lambda:.6} outside [-1/2, 1/2]"
        )));
    }
    metric::solve_generic_nonreducible(cs, lambda)
}

/// Bridge of the asymmetric families: a metric exists iff μ₊₋ = μ₀, with
/// λ = −1/(2y) (resp. −1/(2z)) and ε from the tanh-4θ relation.
pub fn bridge_asymmetric_to_metric(sol: &BogSolution) -> Result<EtaParams> {
    let cs = &sol.completed;
    let param = match sol.family {
        BogFamily::AsymDeltaZero => sol.y.re,
        BogFamily::AsymAlphaZero => sol.z.re,
        _ => {
            return Err(QhError::InvalidParameter(
                "asymmetric bridge applies to the asymmetric families".into(),
            ))
        }
    };
    let scale = 1.0 + cs.max_abs();
    if (cs.mu_pm - cs.mu_0).abs() > 1e-9 * scale {
        return Err(QhError::FamilyInapplicable("bridge needs mu_pm = mu_0".into()));
    }
    let lambda = -1.0 / (2.0 * param);
    if lambda.abs() > 0.5 + 1e-12 {
        return Err(QhError::FamilyInapplicable(format!(
            "bridge lambda {lambda:.6} outside [-1/2, 1/2] (|y| or |z| < 1)"
        )));
    }
    let r = 2.0 * param * param / (1.0 - 2.0 * param * param);
    let eps = crate::numerics::stable_arctanh_ratio(r, lambda, 4)?;
    EtaParams::new(eps, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixing_identity_at_trivial_params() {
        let p = BogParams::new(c(0.0), c(1.0), c(1.0), c(0.0)).unwrap();
        let (m, minv) = mixing_matrix(&p);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((m[i][j] - c(want)).norm() < 1e-14);
                assert!((minv[i][j] - c(want)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn mixing_identity_at_imaginary_unit_params() {
        // β = γ = i, α = δ = 0: the i's cancel in every bilinear entry
        let i = C64::new(0.0, 1.0);
        let p = BogParams::new(c(0.0), i, i, c(0.0));
        // βγ = −1 ≠ 1, so this parameter set violates the constraint
        assert!(p.is_err());
        // but the K-level map with β = γ = i, α = δ = 0 normalized through
        // from_yz(0, 0) is exactly the identity
        let p = BogParams::from_yz(c(0.0), c(0.0)).unwrap();
        let (m, _) = mixing_matrix(&p);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((m[i][j] - c(want)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn mixing_inverse_contract() {
        let p = BogParams::from_yz(c(0.3), c(-0.2)).unwrap();
        let (m, minv) = mixing_matrix(&p);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = c(0.0);
                for k in 0..3 {
                    s += m[i][k] * minv[k][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s - c(want)).norm() < 1e-12, "entry ({i},{j}) = {s}");
            }
        }
    }

    #[test]
    fn harmonic_oscillator_trivial_solution() {
        // only μ₀, μ₀₀, μ₊₋ nonzero: y = z = 0 solves everything
        let cs = CoeffSet { mu_0: 2.0, mu_00: 0.5, mu_pm: -0.5, ..CoeffSet::ZERO };
        let r = residuals_cong(&cs, c(0.0), c(0.0)).unwrap();
        for v in r {
            assert!(v < 1e-14);
        }
    }

    #[test]
    fn random_yz_nonzero_residuals() {
        let cs = CoeffSet { mu_0: 1.0, mu_p: 0.5, mu_m: 0.2, mu_pp: 0.3, ..CoeffSet::ZERO };
        let r = residuals_cong(&cs, c(0.3), c(0.7)).unwrap();
        assert!(r.iter().any(|&v| v > 1e-3), "{r:?}");
    }

    #[test]
    fn swanson_linear_spectrum() {
        // μ₀₀ = μ₊₋ = 0, μ₀ = 2, μ₊ = μ₋ = 1/2 → E_n = √3/2 (n + 1/2)
        let sol = solve_herm_bilinear(
            &CoeffSet { mu_0: 2.0, mu_p: 0.5, mu_m: 0.5, ..CoeffSet::ZERO },
            Sign::Plus,
        )
        .unwrap();
        for v in sol.residuals {
            assert!(v < 1e-12, "{:?}", sol.residuals);
        }
        let form = sol.form.expect("real spectrum");
        let want: f64 = 3.0f64.sqrt() / 2.0;
        assert!((form.lin - want).abs() < 1e-12);
        assert!(form.quad.abs() < 1e-12);
        let e = spectrum(&form, 3);
        for (n, v) in e.iter().enumerate() {
            assert!((v - want * (n as f64 + 0.5)).abs() < 1e-12);
        }
        assert!(sol.reality_ok);
    }

    #[test]
    fn herm_bilinear_reality_flag() {
        // μ₊μ₋ > (μ₀+μ₀₀)²/4 → complex closed form
        let sol = solve_herm_bilinear(
            &CoeffSet { mu_0: 0.2, mu_p: 2.0, mu_m: 2.0, ..CoeffSet::ZERO },
            Sign::Plus,
        )
        .unwrap();
        assert!(!sol.reality_ok);
        assert!(sol.form.is_none());
    }

    #[test]
    fn pure_harmonic_linear_grouping() {
        let form = OscillatorForm { grouping: Grouping::Linear, quad: 0.0, lin: 1.5, constant: 0.25 };
        let e = spectrum(&form, 2);
        assert!((e[0] - (0.75 + 0.25)).abs() < 1e-15);
        assert!((e[1] - (2.25 + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn generic_monotone_spectrum() {
        let sol = solve_generic(
            &CoeffSet { mu_0: 1.0, mu_p: 0.4, mu_m: 0.9, mu_pp: 0.6, mu_p0: 2.0, ..CoeffSet::ZERO },
            Sign::Plus,
        )
        .unwrap();
        for v in sol.residuals {
            assert!(v < 1e-10, "{:?}", sol.residuals);
        }
        if let Some(form) = sol.form {
            if form.quad > 0.0 && form.lin > 0.0 {
                let e = spectrum(&form, 6);
                assert!(e.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn asymmetric_alpha_zero_example() {
        // z = 1, μ₊₊ = 1, μ₊ = 1, μ₀ = 0 → μ₊₀ = −2, μ₀₀ = −1, μ₊₋ = 2
        let sol = solve_asymmetric(
            BogFamily::AsymAlphaZero,
            &CoeffSet { mu_0: 0.0, mu_p: 1.0, mu_pp: 1.0, ..CoeffSet::ZERO },
            1.0,
        )
        .unwrap();
        assert!((sol.completed.mu_p0 + 2.0).abs() < 1e-14);
        assert!((sol.completed.mu_00 + 1.0).abs() < 1e-14);
        assert!((sol.completed.mu_pm - 2.0).abs() < 1e-14);
        for v in sol.residuals {
            assert!(v < 1e-12, "{:?}", sol.residuals);
        }
    }

    #[test]
    fn asymmetric_bridge_lambda_window() {
        let base = CoeffSet { mu_0: 0.4, mu_m: 0.3, mu_mm: 0.7, ..CoeffSet::ZERO };
        // y = −1 → λ = 1/2 accepted (if μ₊₋ = μ₀ holds); y = −1/2 → λ = 1 rejected
        let sol_half = solve_asymmetric(BogFamily::AsymDeltaZero, &base, -0.5).unwrap();
        let err = bridge_asymmetric_to_metric(&sol_half).unwrap_err();
        assert!(matches!(err, QhError::FamilyInapplicable(_)), "{err}");
        // build an instance satisfying μ₊₋ = μ₀ at y = −1: μ₋₋/y² − μ₀₀ = μ₀
        // with μ₀₀ = −μ₀ − μ₋/y: μ₋₋ + μ₀ − μ₋ = μ₀ ⇒ μ₋₋ = μ₋
        let ok = CoeffSet { mu_0: 0.4, mu_m: 0.3, mu_mm: 0.3, ..CoeffSet::ZERO };
        let sol_one = solve_asymmetric(BogFamily::AsymDeltaZero, &ok, -1.0).unwrap();
        let eta = bridge_asymmetric_to_metric(&sol_one).unwrap();
        assert!((eta.lambda - 0.5).abs() < 1e-12);
    }
}
