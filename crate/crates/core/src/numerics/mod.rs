//! Shared numerical kernels: dense complex matrices, the matrix
//! exponential, general and Hermitian eigensolvers, stable inversion of the
//! tanh-ratio constraints, and truncation-convergence scans.

mod eig;
mod expm;
mod matrix;

pub use eig::{eigenvalues, eigenvalues_hermitian};
pub use expm::{exp_inverse_residual, matrix_exp, matrix_exp_with_cap, EXP_NORM_CAP};
pub use matrix::CMat;

use crate::error::{QhError, Result};
use crate::rep::{build_rep, RepKind};
use crate::su11::CoeffSet;
use num_complex::Complex64;

/// cosh(√x), continued to x < 0 as cos(√−x). Entire in x.
pub fn cosh_even(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + x / 2.0 + x * x / 24.0
    } else if x > 0.0 {
        x.sqrt().cosh()
    } else {
        (-x).sqrt().cos()
    }
}

/// sinh(√x)/√x, continued to x < 0 as sin(√−x)/√−x. Entire in x.
pub fn sinhc_even(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + x / 6.0 + x * x / 120.0
    } else if x > 0.0 {
        let t = x.sqrt();
        t.sinh() / t
    } else {
        let t = (-x).sqrt();
        t.sin() / t
    }
}

/// tanh(√x)/√x with the same even continuation.
pub fn tanhc_even(x: f64) -> f64 {
    sinhc_even(x) / cosh_even(x)
}

/// Solves tanh(kθ)/(θ/ε) = R for ε, with θ = ε√(1−4λ²).
///
/// For |λ| < 1/2 this is ε = arctanh(R s)/(k s), s = √(1−4λ²); the λ → ±1/2
/// limit is R/k. |λ| > 1/2 continues through the trigonometric branch,
/// ε = arctan(R s̄)/(k s̄) with s̄ = √(4λ²−1).
pub fn stable_arctanh_ratio(r: f64, lambda: f64, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(QhError::InvalidParameter("k must be positive".into()));
    }
    let s2 = 1.0 - 4.0 * lambda * lambda;
    let kk = k as f64;
    if s2.abs() < 1e-12 {
        return Ok(r / kk);
    }
    if s2 > 0.0 {
        let s = s2.sqrt();
        let arg = r * s;
        if arg.abs() >= 1.0 {
            return Err(QhError::ArctanhDomain { arg });
        }
        Ok(arg.atanh() / (kk * s))
    } else {
        let s = (-s2).sqrt();
        Ok((r * s).atan() / (kk * s))
    }
}

/// Eigenvalue drift per tracked level between successive truncation sizes.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub dims: Vec<usize>,
    /// Relative drift of level j between the two largest dims.
    pub drifts: Vec<f64>,
    pub converged_count: usize,
    pub tolerance: f64,
}

/// Tracks the lowest eigenvalues (by real part) of the assembled Hamiltonian
/// across increasing truncation sizes.
pub fn convergence_scan(
    c: &CoeffSet,
    kind: RepKind,
    dims: &[usize],
    levels: usize,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    if dims.len() < 2 {
        return Err(QhError::InvalidParameter("need at least two dims".into()));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QhError::InvalidParameter("dims must be increasing".into()));
    }
    let mut spectra: Vec<Vec<Complex64>> = Vec::new();
    for &d in dims {
        let rep = build_rep(kind, d)?;
        let h = crate::rep::assemble(c, &rep);
        spectra.push(eigenvalues(&h.matrix)?);
    }
    let last = &spectra[spectra.len() - 1];
    let prev = &spectra[spectra.len() - 2];
    let n = levels.min(prev.len()).min(last.len());
    let mut drifts = Vec::with_capacity(n);
    for j in 0..n {
        let a = prev[j];
        let b = last[j];
        let scale = b.norm().max(1.0);
        drifts.push((a - b).norm() / scale);
    }
    let converged_count = drifts.iter().filter(|&&d| d < tolerance).count();
    Ok(ConvergenceReport { dims: dims.to_vec(), drifts, converged_count, tolerance })
}

/// Lowest `k` eigenvalues by real part.
pub fn lowest_k(eigs: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut v = eigs.to_vec();
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    v.truncate(k);
    v
}

/// Max relative mismatch between two spectra over their lowest `k` levels.
pub fn spectral_mismatch(a: &[Complex64], b: &[Complex64], k: usize) -> f64 {
    let la = lowest_k(a, k);
    let lb = lowest_k(b, k);
    la.iter()
        .zip(lb.iter())
        .map(|(x, y)| (x - y).norm() / x.norm().max(1.0))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arctanh_ratio_zero() {
        assert_eq!(stable_arctanh_ratio(0.0, 0.3, 2).unwrap(), 0.0);
    }

    #[test]
    fn arctanh_ratio_boundary_limit() {
        // λ = 1/2, R = -1, k = 4 → ε = -1/4
        let eps = stable_arctanh_ratio(-1.0, 0.5, 4).unwrap();
        assert!((eps + 0.25).abs() < 1e-14);
    }

    #[test]
    fn arctanh_ratio_roundtrip() {
        // λ = 0, k = 2: forward-evaluate tanh(2ε)/(1) then invert
        let eps = 1.0;
        let r = (2.0 * eps).tanh();
        let back = stable_arctanh_ratio(r, 0.0, 2).unwrap();
        assert!((back - eps).abs() < 1e-12);
    }

    #[test]
    fn arctanh_domain_rejected() {
        assert!(matches!(
            stable_arctanh_ratio(1.2, 0.0, 2),
            Err(QhError::ArctanhDomain { .. })
        ));
    }

    #[test]
    fn even_kernels_match_direct() {
        for &t in &[0.3f64, 1.7, 4.0] {
            assert!((cosh_even(t * t) - t.cosh()).abs() < 1e-12);
            assert!((sinhc_even(t * t) - t.sinh() / t).abs() < 1e-12);
            assert!((cosh_even(-t * t) - t.cos()).abs() < 1e-12);
            assert!((sinhc_even(-t * t) - t.sin() / t).abs() < 1e-12);
        }
    }
}
