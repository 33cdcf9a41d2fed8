//! Finite truncated matrix representations of su(1,1) and the sl₂(ℝ)
//! polynomial representation, plus Hamiltonian assembly from coefficient
//! sets. Truncation corrupts only the top ladder band; every consistency
//! check is restricted to the interior block below it.

use crate::error::{QhError, Result};
use crate::numerics::CMat;
use crate::su11::{CoeffSet, TwoParticleCoeffSet, ORDERED_PAIRS};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const TENSOR_DIM_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RepKind {
    /// K₀ = ½(a†a + ½), K₊ = ½a†², K₋ = ½a². ω enters only through the
    /// a,a† ↔ x̂,p̂ dictionary.
    TwoBoson { omega: f64 },
    /// K₀ = N + ½, K₊ = √N a†, K₋ = a√N.
    HolsteinPrimakoff,
    /// n-boson generalization, k₀(N) = (2N+1)/(2n), with k± fixed by the
    /// closure [K₊,K₋] = −2K₀. n = 1, 2 reproduce the two cases above.
    MultiBoson { n: u32 },
    /// Abstract lowest-weight irrep with Bargmann index k: K₀ = diag(m+k),
    /// (K₊)_{m+1,m} = √((m+1)(m+2k)).
    DiscreteSeries { k: f64 },
    /// Two-mode representation K₀ = ½(N₁+N₂+1), K₊ = a₁†a₂†, basis graded
    /// by total quanta.
    TwoMode,
    /// sl₂(ℝ) polynomial representation on monomials of degree ≤ n:
    /// J₋ = ∂ₓ, J₀ = x∂ₓ − n/2, J₊ = x²∂ₓ − nx. Finite and exact.
    Sl2Polynomial { n: u32 },
    /// PT-rescaled variant J̃± = ±iJ±, J̃₀ = J₀.
    Sl2PolynomialPt { n: u32 },
}

impl RepKind {
    pub fn name(&self) -> &'static str {
        match self {
            RepKind::TwoBoson { .. } => "two-boson",
            RepKind::HolsteinPrimakoff => "holstein-primakoff",
            RepKind::MultiBoson { .. } => "multi-boson",
            RepKind::DiscreteSeries { .. } => "discrete-series",
            RepKind::TwoMode => "two-mode",
            RepKind::Sl2Polynomial { .. } => "sl2-polynomial",
            RepKind::Sl2PolynomialPt { .. } => "sl2-polynomial-pt",
        }
    }

    /// Largest quantum-number step of any single generator.
    fn ladder_step(&self) -> usize {
        match self {
            RepKind::TwoBoson { .. } => 2,
            RepKind::MultiBoson { n } => *n as usize,
            _ => 1,
        }
    }
}

/// Matrices of one truncated representation. The first `interior_dim`
/// basis states are free of truncation artifacts for products of up to two
/// generators.
#[derive(Debug, Clone)]
pub struct TruncatedRep {
    pub kind: RepKind,
    pub dim: usize,
    pub k0: CMat,
    pub kp: CMat,
    pub km: CMat,
    pub a: Option<CMat>,
    pub adag: Option<CMat>,
    pub interior_dim: usize,
}

pub fn build_rep(kind: RepKind, dim: usize) -> Result<TruncatedRep> {
    match kind {
        RepKind::Sl2Polynomial { n } | RepKind::Sl2PolynomialPt { n } => {
            return build_sl2_poly(kind, n);
        }
        _ => {}
    }
    if dim < 2 {
        return Err(QhError::InvalidDimension { dim, msg: "need dim >= 2".into() });
    }
    match kind {
        RepKind::TwoBoson { omega } => {
            if omega <= 0.0 {
                return Err(QhError::InvalidParameter(format!("omega = {omega} must be > 0")));
            }
            let (a, adag) = boson_ops(dim);
            let k0 = CMat::diag_real(&(0..dim).map(|m| (2 * m + 1) as f64 / 4.0).collect::<Vec<_>>());
            let kp = CMat::from_fn(dim, |i, j| {
                if i == j + 2 {
                    Complex64::new((((j + 1) * (j + 2)) as f64).sqrt() / 2.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let km = kp.transpose();
            Ok(TruncatedRep {
                kind,
                dim,
                k0,
                kp,
                km,
                a: Some(a),
                adag: Some(adag),
                interior_dim: dim.saturating_sub(8),
            })
        }
        RepKind::HolsteinPrimakoff => build_multi_boson(kind, 1, dim),
        RepKind::MultiBoson { n } => {
            if n < 1 {
                return Err(QhError::InvalidParameter("multi-boson order must be >= 1".into()));
            }
            build_multi_boson(kind, n as usize, dim)
        }
        RepKind::DiscreteSeries { k } => {
            if k <= 0.0 {
                return Err(QhError::InvalidParameter(format!("Bargmann index k = {k} must be > 0")));
            }
            let k0 = CMat::diag_real(&(0..dim).map(|m| m as f64 + k).collect::<Vec<_>>());
            let kp = CMat::from_fn(dim, |i, j| {
                if i == j + 1 {
                    Complex64::new(((j as f64 + 1.0) * (j as f64 + 2.0 * k)).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let km = kp.transpose();
            Ok(TruncatedRep { kind, dim, k0, kp, km, a: None, adag: None, interior_dim: dim.saturating_sub(4) })
        }
        RepKind::TwoMode => build_two_mode(dim),
        RepKind::Sl2Polynomial { .. } | RepKind::Sl2PolynomialPt { .. } => unreachable!(),
    }
}

fn boson_ops(dim: usize) -> (CMat, CMat) {
    let a = CMat::from_fn(dim, |i, j| {
        if i + 1 == j {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let adag = a.transpose();
    (a, adag)
}

fn build_multi_boson(kind: RepKind, n: usize, dim: usize) -> Result<TruncatedRep> {
    // closure condition [K₊,K₋] = −2K₀ with k₀(N) = (2N+1)/(2n) gives
    // g(r + jn) = j(2r+1)/n + j(j−1) for the squared ladder entries.
    let g = |m: usize| -> f64 {
        if m < n {
            return 0.0;
        }
        let r = m % n;
        let j = (m - r) / n;
        let j = j as f64;
        j * (2.0 * r as f64 + 1.0) / n as f64 + j * (j - 1.0)
    };
    let k0 = CMat::diag_real(&(0..dim).map(|m| (2 * m + 1) as f64 / (2.0 * n as f64)).collect::<Vec<_>>());
    let kp = CMat::from_fn(dim, |i, j| {
        if i == j + n {
            Complex64::new(g(i).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let km = kp.transpose();
    let (a, adag) = boson_ops(dim);
    Ok(TruncatedRep {
        kind,
        dim,
        k0,
        kp,
        km,
        a: Some(a),
        adag: Some(adag),
        interior_dim: dim.saturating_sub(4 * n),
    })
}

fn build_two_mode(dim: usize) -> Result<TruncatedRep> {
    // basis graded by total quanta s = n1 + n2, lexicographic within a shell
    let mut states: Vec<(usize, usize)> = Vec::with_capacity(dim);
    let mut s = 0;
    while states.len() < dim {
        for n1 in 0..=s {
            if states.len() == dim {
                break;
            }
            states.push((n1, s - n1));
        }
        s += 1;
    }
    let index_of = |n1: usize, n2: usize| -> Option<usize> {
        states.iter().position(|&(a, b)| a == n1 && b == n2)
    };
    let k0 = CMat::diag_real(
        &states.iter().map(|&(n1, n2)| (n1 + n2 + 1) as f64 / 2.0).collect::<Vec<_>>(),
    );
    let mut kp = CMat::zeros(dim);
    for (j, &(n1, n2)) in states.iter().enumerate() {
        if let Some(i) = index_of(n1 + 1, n2 + 1) {
            kp.set(i, j, Complex64::new((((n1 + 1) * (n2 + 1)) as f64).sqrt(), 0.0));
        }
    }
    let km = kp.transpose();
    // interior: full shells up to two below the last complete shell
    let last_full = (0..).take_while(|&q| (q + 1) * (q + 2) / 2 <= dim).last().unwrap_or(0);
    let interior_shell = last_full.saturating_sub(2);
    let interior_dim = states
        .iter()
        .filter(|&&(n1, n2)| n1 + n2 + 1 <= interior_shell)
        .count();
    Ok(TruncatedRep { kind: RepKind::TwoMode, dim, k0, kp, km, a: None, adag: None, interior_dim })
}

fn build_sl2_poly(kind: RepKind, n: u32) -> Result<TruncatedRep> {
    let dim = n as usize + 1;
    let nn = n as f64;
    let j0 = CMat::diag_real(&(0..dim).map(|k| k as f64 - nn / 2.0).collect::<Vec<_>>());
    // J₊ x^k = (k − n) x^{k+1}, J₋ x^k = k x^{k−1}
    let mut jp = CMat::zeros(dim);
    let mut jm = CMat::zeros(dim);
    for k in 0..dim {
        if k + 1 < dim {
            jp.set(k + 1, k, Complex64::new(k as f64 - nn, 0.0));
        }
        if k >= 1 {
            jm.set(k - 1, k, Complex64::new(k as f64, 0.0));
        }
    }
    let (jp, jm) = match kind {
        RepKind::Sl2PolynomialPt { .. } => {
            (jp.scale(Complex64::new(0.0, 1.0)), jm.scale(Complex64::new(0.0, -1.0)))
        }
        _ => (jp, jm),
    };
    Ok(TruncatedRep { kind, dim, k0: j0, kp: jp, km: jm, a: None, adag: None, interior_dim: dim })
}

/// J± → ±iJ±, J₀ → J₀; leaves the commutation relations unchanged.
pub fn pt_rescale(rep: &TruncatedRep) -> Result<TruncatedRep> {
    match rep.kind {
        RepKind::Sl2Polynomial { n } => {
            let mut out = rep.clone();
            out.kind = RepKind::Sl2PolynomialPt { n };
            out.kp = rep.kp.scale(Complex64::new(0.0, 1.0));
            out.km = rep.km.scale(Complex64::new(0.0, -1.0));
            Ok(out)
        }
        other => Err(QhError::WrongRepKind {
            expected: "sl2-polynomial".into(),
            found: other.name().into(),
        }),
    }
}

/// Max interior-block Frobenius residual over the three commutation
/// relations [K₀,K±] = ±K±, [K₊,K₋] = −2K₀.
pub fn commutator_residual(rep: &TruncatedRep) -> f64 {
    let int = rep.interior_dim;
    let comm = |a: &CMat, b: &CMat| -> CMat { &(a * b) - &(b * a) };
    let r1 = (&comm(&rep.k0, &rep.kp) - &rep.kp).top_left(int).frobenius_norm();
    let r2 = (&(&comm(&rep.k0, &rep.km) + &rep.km)).top_left(int).frobenius_norm();
    let r3 = (&comm(&rep.kp, &rep.km) + &rep.k0.scale_re(2.0)).top_left(int).frobenius_norm();
    r1.max(r2).max(r3)
}

/// A Hamiltonian matrix assembled from a coefficient set in a given
/// representation.
#[derive(Debug, Clone)]
pub struct HamMatrix<'a> {
    pub matrix: CMat,
    pub source: CoeffSet,
    pub rep: &'a TruncatedRep,
}

fn gen_of(rep: &TruncatedRep, g: crate::su11::GeneratorIndex) -> &CMat {
    use crate::su11::GeneratorIndex::*;
    match g {
        Zero => &rep.k0,
        Plus => &rep.kp,
        Minus => &rep.km,
    }
}

/// Σ μ_l K_l + Σ μ_nm K_n K_m over the six ordered pairs.
pub fn assemble<'a>(c: &CoeffSet, rep: &'a TruncatedRep) -> HamMatrix<'a> {
    let mut m = CMat::zeros(rep.dim);
    for &l in &crate::su11::GeneratorIndex::ALL {
        let coeff = c.linear_coeff(l);
        if coeff != 0.0 {
            m = &m + &gen_of(rep, l).scale_re(coeff);
        }
    }
    for &(n, mm) in &ORDERED_PAIRS {
        let coeff = c.bilinear_coeff(n, mm).unwrap();
        if coeff != 0.0 {
            m = &m + &(gen_of(rep, n) * gen_of(rep, mm)).scale_re(coeff);
        }
    }
    HamMatrix { matrix: m, source: *c, rep }
}

/// Two commuting copies K⁽¹⁾ = K ⊗ I, K⁽²⁾ = I ⊗ K.
#[derive(Debug, Clone)]
pub struct TwoParticleRep {
    pub dim: usize,
    pub k1: [CMat; 3],
    pub k2: [CMat; 3],
    /// Indices of states interior in both factors.
    pub interior: Vec<usize>,
    pub dims: (usize, usize),
}

pub fn build_tensor_product(rep1: &TruncatedRep, rep2: &TruncatedRep) -> Result<TwoParticleRep> {
    build_tensor_product_capped(rep1, rep2, TENSOR_DIM_CAP)
}

pub fn build_tensor_product_capped(
    rep1: &TruncatedRep,
    rep2: &TruncatedRep,
    cap: usize,
) -> Result<TwoParticleRep> {
    let dim = rep1.dim * rep2.dim;
    if dim > cap {
        return Err(QhError::DimensionOverflow { dim, cap });
    }
    let i1 = CMat::identity(rep1.dim);
    let i2 = CMat::identity(rep2.dim);
    let k1 = [rep1.k0.kron(&i2), rep1.kp.kron(&i2), rep1.km.kron(&i2)];
    let k2 = [i1.kron(&rep2.k0), i1.kron(&rep2.kp), i1.kron(&rep2.km)];
    let mut interior = Vec::new();
    for a in 0..rep1.dim {
        for b in 0..rep2.dim {
            if a < rep1.interior_dim && b < rep2.interior_dim {
                interior.push(a * rep2.dim + b);
            }
        }
    }
    Ok(TwoParticleRep { dim, k1, k2, interior, dims: (rep1.dim, rep2.dim) })
}

/// H_m = Σᵢ μ_l⁽ⁱ⁾ K_l⁽ⁱ⁾ + Σ μ_nm K_n⁽¹⁾ K_m⁽²⁾, all nine cross terms.
/// The copies commute, so cross products need no ordering.
pub fn assemble_multiparticle(c2: &TwoParticleCoeffSet, tp: &TwoParticleRep) -> CMat {
    let mut m = CMat::zeros(tp.dim);
    for l in 0..3 {
        if c2.linear1[l] != 0.0 {
            m = &m + &tp.k1[l].scale_re(c2.linear1[l]);
        }
        if c2.linear2[l] != 0.0 {
            m = &m + &tp.k2[l].scale_re(c2.linear2[l]);
        }
    }
    for n in 0..3 {
        for mm in 0..3 {
            let coeff = c2.cross[n][mm];
            if coeff != 0.0 {
                m = &m + &(&tp.k1[n] * &tp.k2[mm]).scale_re(coeff);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su11::CoeffSet;

    #[test]
    fn two_boson_k0_diagonal() {
        let rep = build_rep(RepKind::TwoBoson { omega: 1.0 }, 3).unwrap();
        for (i, want) in [0.25, 0.75, 1.25].iter().enumerate() {
            assert!((rep.k0.get(i, i).re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn sl2_poly_diagonal() {
        let rep = build_rep(RepKind::Sl2Polynomial { n: 1 }, 99).unwrap();
        assert_eq!(rep.dim, 2);
        assert!((rep.k0.get(0, 0).re + 0.5).abs() < 1e-15);
        assert!((rep.k0.get(1, 1).re - 0.5).abs() < 1e-15);
        assert_eq!(commutator_residual(&rep), 0.0);
    }

    #[test]
    fn discrete_series_quarter() {
        let rep = build_rep(RepKind::DiscreteSeries { k: 0.25 }, 3).unwrap();
        for (i, want) in [0.25, 1.25, 2.25].iter().enumerate() {
            assert!((rep.k0.get(i, i).re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn interior_commutators_small() {
        for kind in [
            RepKind::TwoBoson { omega: 1.0 },
            RepKind::HolsteinPrimakoff,
            RepKind::MultiBoson { n: 3 },
            RepKind::DiscreteSeries { k: 0.75 },
        ] {
            let rep = build_rep(kind, 32).unwrap();
            let r = commutator_residual(&rep);
            assert!(r < 1e-12, "{kind:?}: residual {r}");
        }
        let rep = build_rep(RepKind::TwoMode, 66).unwrap();
        assert!(commutator_residual(&rep) < 1e-12);
    }

    #[test]
    fn multi_boson_reproduces_special_cases() {
        let hp = build_rep(RepKind::HolsteinPrimakoff, 12).unwrap();
        let mb1 = build_rep(RepKind::MultiBoson { n: 1 }, 12).unwrap();
        assert!((&hp.kp - &mb1.kp).frobenius_norm() < 1e-13);
        assert!((&hp.k0 - &mb1.k0).frobenius_norm() < 1e-13);

        let tb = build_rep(RepKind::TwoBoson { omega: 1.0 }, 12).unwrap();
        let mb2 = build_rep(RepKind::MultiBoson { n: 2 }, 12).unwrap();
        assert!((&tb.kp - &mb2.kp).frobenius_norm() < 1e-13);
        assert!((&tb.k0 - &mb2.k0).frobenius_norm() < 1e-13);
    }

    #[test]
    fn pt_rescale_involution_and_commutators() {
        let rep = build_rep(RepKind::Sl2Polynomial { n: 1 }, 0).unwrap();
        let pt = pt_rescale(&rep).unwrap();
        // J̃₋ entry (0,1) = −i·1
        assert!((pt.km.get(0, 1) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(commutator_residual(&pt), 0.0);
        // double application negates J±
        let pt2_kp = pt.kp.scale(Complex64::new(0.0, 1.0));
        assert!((&pt2_kp + &rep.kp).frobenius_norm() < 1e-15);
        assert!(pt_rescale(&pt).is_err());
    }

    #[test]
    fn assemble_single_term() {
        let rep = build_rep(RepKind::TwoBoson { omega: 1.0 }, 4).unwrap();
        let h = assemble(&CoeffSet { mu_0: 1.0, ..CoeffSet::ZERO }, &rep);
        assert!((&h.matrix - &rep.k0).frobenius_norm() < 1e-15);
    }

    #[test]
    fn casimir_constant_in_irrep() {
        // true Casimir ordered form: mu_00 = 1, mu_pm = −1, mu_0 = −1;
        // diagonal with constant k(k−1) on the interior block
        let k = 0.3;
        let rep = build_rep(RepKind::DiscreteSeries { k }, 16).unwrap();
        let h = assemble(&crate::su11::casimir_coeffs(), &rep);
        let want = k * (k - 1.0);
        for i in 0..rep.interior_dim {
            assert!((h.matrix.get(i, i).re - want).abs() < 1e-12, "diag {i}");
            for j in 0..rep.interior_dim {
                if i != j {
                    assert!(h.matrix.get(i, j).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tensor_product_commutes() {
        let r1 = build_rep(RepKind::TwoBoson { omega: 1.0 }, 4).unwrap();
        let r2 = build_rep(RepKind::TwoBoson { omega: 1.0 }, 5).unwrap();
        let tp = build_tensor_product(&r1, &r2).unwrap();
        assert_eq!(tp.dim, 20);
        let cross = &(&tp.k1[1] * &tp.k2[2]) - &(&tp.k2[2] * &tp.k1[1]);
        assert_eq!(cross.frobenius_norm(), 0.0);
    }

    #[test]
    fn multiparticle_single_particle_embedding() {
        let r1 = build_rep(RepKind::TwoBoson { omega: 1.0 }, 4).unwrap();
        let r2 = build_rep(RepKind::TwoBoson { omega: 1.0 }, 4).unwrap();
        let tp = build_tensor_product(&r1, &r2).unwrap();
        let c2 = TwoParticleCoeffSet { linear1: [0.5, 1.0, -0.25], ..Default::default() };
        let hm = assemble_multiparticle(&c2, &tp);
        let h1 = assemble(&CoeffSet::linear(0.5, 1.0, -0.25), &r1);
        let want = h1.matrix.kron(&CMat::identity(4));
        assert!((&hm - &want).frobenius_norm() < 1e-13);
        assert_eq!(assemble_multiparticle(&TwoParticleCoeffSet::default(), &tp).frobenius_norm(), 0.0);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(build_rep(RepKind::TwoBoson { omega: -1.0 }, 8).is_err());
        assert!(build_rep(RepKind::DiscreteSeries { k: 0.0 }, 8).is_err());
        assert!(build_rep(RepKind::TwoBoson { omega: 1.0 }, 1).is_err());
    }
}
