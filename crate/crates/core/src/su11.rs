//! Representation-independent coefficient algebra for Hamiltonians of
//! su(1,1)/sl₂(ℝ) Lie-algebraic type: the nine-coupling space, the
//! normal-ordering convention, the Hermiticity defect, Casimir shifts and
//! the position-momentum coefficient map.

use serde::{Deserialize, Serialize};

/// Generator label with the fixed ordering `Plus > Zero > Minus` that
/// defines which bilinear products are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorIndex {
    Plus,
    Zero,
    Minus,
}

impl GeneratorIndex {
    pub const ALL: [GeneratorIndex; 3] = [GeneratorIndex::Zero, GeneratorIndex::Plus, GeneratorIndex::Minus];

    fn rank(self) -> u8 {
        match self {
            GeneratorIndex::Plus => 2,
            GeneratorIndex::Zero => 1,
            GeneratorIndex::Minus => 0,
        }
    }
}

impl PartialOrd for GeneratorIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// Normal ordering of a generator pair: the product K_n K_m is kept only
/// for n ≥ m; the disordered slot carries no coefficient.
pub fn normal_order(
    n: GeneratorIndex,
    m: GeneratorIndex,
) -> Option<(GeneratorIndex, GeneratorIndex)> {
    if n >= m {
        Some((n, m))
    } else {
        None
    }
}

/// The six ordered bilinear index pairs, in the layout used throughout:
/// (0,0), (+,−), (+,0), (0,−), (+,+), (−,−).
pub const ORDERED_PAIRS: [(GeneratorIndex, GeneratorIndex); 6] = [
    (GeneratorIndex::Zero, GeneratorIndex::Zero),
    (GeneratorIndex::Plus, GeneratorIndex::Minus),
    (GeneratorIndex::Plus, GeneratorIndex::Zero),
    (GeneratorIndex::Zero, GeneratorIndex::Minus),
    (GeneratorIndex::Plus, GeneratorIndex::Plus),
    (GeneratorIndex::Minus, GeneratorIndex::Minus),
];

/// The nine real couplings of H = Σ μ_l K_l + Σ μ_nm :K_n K_m:.
///
/// The same type carries the κ-sets of the sl₂(ℝ) form; the interpretation
/// is fixed by the representation chosen downstream.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoeffSet {
    pub mu_0: f64,
    pub mu_p: f64,
    pub mu_m: f64,
    pub mu_00: f64,
    pub mu_pp: f64,
    pub mu_mm: f64,
    pub mu_pm: f64,
    pub mu_p0: f64,
    pub mu_0m: f64,
}

impl CoeffSet {
    pub const ZERO: CoeffSet = CoeffSet {
        mu_0: 0.0,
        mu_p: 0.0,
        mu_m: 0.0,
        mu_00: 0.0,
        mu_pp: 0.0,
        mu_mm: 0.0,
        mu_pm: 0.0,
        mu_p0: 0.0,
        mu_0m: 0.0,
    };

    pub fn linear(mu_0: f64, mu_p: f64, mu_m: f64) -> Self {
        CoeffSet { mu_0, mu_p, mu_m, ..Self::ZERO }
    }

    /// Layout (μ₀, μ₊, μ₋, μ₀₀, μ₊₊, μ₋₋, μ₊₋, μ₊₀, μ₀₋), matching the
    /// column order of the x-p coefficient matrix.
    pub fn to_array(self) -> [f64; 9] {
        [
            self.mu_0, self.mu_p, self.mu_m, self.mu_00, self.mu_pp, self.mu_mm, self.mu_pm,
            self.mu_p0, self.mu_0m,
        ]
    }

    pub fn from_array(a: [f64; 9]) -> Self {
        CoeffSet {
            mu_0: a[0],
            mu_p: a[1],
            mu_m: a[2],
            mu_00: a[3],
            mu_pp: a[4],
            mu_mm: a[5],
            mu_pm: a[6],
            mu_p0: a[7],
            mu_0m: a[8],
        }
    }

    pub fn linear_coeff(&self, l: GeneratorIndex) -> f64 {
        match l {
            GeneratorIndex::Zero => self.mu_0,
            GeneratorIndex::Plus => self.mu_p,
            GeneratorIndex::Minus => self.mu_m,
        }
    }

    /// Coefficient of the ordered product :K_n K_m:. Disordered pairs have
    /// no slot and return None.
    pub fn bilinear_coeff(&self, n: GeneratorIndex, m: GeneratorIndex) -> Option<f64> {
        use GeneratorIndex::*;
        normal_order(n, m).map(|p| match p {
            (Zero, Zero) => self.mu_00,
            (Plus, Minus) => self.mu_pm,
            (Plus, Zero) => self.mu_p0,
            (Zero, Minus) => self.mu_0m,
            (Plus, Plus) => self.mu_pp,
            (Minus, Minus) => self.mu_mm,
            _ => unreachable!(),
        })
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0f64, |a, &b| a.max(b.abs()))
    }

    /// Swap + ↔ − everywhere: μ₊↔μ₋, μ₊₊↔μ₋₋, μ₊₀↔μ₀₋.
    pub fn mirror(&self) -> Self {
        CoeffSet {
            mu_0: self.mu_0,
            mu_p: self.mu_m,
            mu_m: self.mu_p,
            mu_00: self.mu_00,
            mu_pp: self.mu_mm,
            mu_mm: self.mu_pp,
            mu_pm: self.mu_pm,
            mu_p0: self.mu_0m,
            mu_0m: self.mu_p0,
        }
    }
}

/// Componentwise non-Hermiticity of a coefficient set under K₀† = K₀,
/// K±† = K∓: all three vanish iff the Hamiltonian is formally Hermitian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiticityDefect {
    pub d_lin: f64,
    pub d_quad: f64,
    pub d_mixed: f64,
}

impl HermiticityDefect {
    pub fn is_zero(&self) -> bool {
        self.d_lin == 0.0 && self.d_quad == 0.0 && self.d_mixed == 0.0
    }

    pub fn max_abs(&self) -> f64 {
        self.d_lin.abs().max(self.d_quad.abs()).max(self.d_mixed.abs())
    }
}

pub fn hermiticity_defect(c: &CoeffSet) -> HermiticityDefect {
    HermiticityDefect {
        d_lin: c.mu_p - c.mu_m,
        d_quad: c.mu_pp - c.mu_mm,
        d_mixed: c.mu_p0 - c.mu_0m,
    }
}

/// Adds κ·C, C = K₀² − {K₊,K₋}/2, in the ordered basis.
///
/// Expanding with [K₊,K₋] = −2K₀ gives C = K₀² − K₊K₋ − K₀, so the shift is
/// mu_00 += κ, mu_pm −= κ, mu_0 −= κ. (The sign of the K₀ term follows from
/// the commutator; the matrix identity assemble(add_casimir(c,κ)) =
/// assemble(c) + κ·C holds in every representation.)
pub fn add_casimir(c: &CoeffSet, kappa: f64) -> CoeffSet {
    let mut out = *c;
    out.mu_0 -= kappa;
    out.mu_00 += kappa;
    out.mu_pm -= kappa;
    out
}

/// The Casimir operator itself as an ordered coefficient set.
pub fn casimir_coeffs() -> CoeffSet {
    add_casimir(&CoeffSet::ZERO, 1.0)
}

/// Exact solvability test for the sl₂ polynomial representation: the flag
/// of polynomial subspaces is preserved iff no raising terms appear.
pub fn is_exactly_solvable_sl2(c: &CoeffSet) -> bool {
    c.mu_p == 0.0 && c.mu_pp == 0.0 && c.mu_p0 == 0.0
}

/// Coefficients of the x-p realization
/// H = γ₀ + γ₁x̂² + γ₂p̂² + γ₃x̂⁴ + γ₄p̂⁴ + iγ₅x̂p̂ + γ₆x̂²p̂² + iγ₇x̂p̂³ + iγ₈x̂³p̂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaSet(pub [f64; 9]);

/// Fixed coefficient matrix of the μ → γ map at ω = 1 (prefactor 1/16).
pub const MU_TO_GAMMA_MATRIX: [[f64; 9]; 9] = [
    [0.0, -4.0, 4.0, -2.0, 3.0, 3.0, 1.0, 2.0, -2.0],
    [4.0, 4.0, 4.0, 0.0, -6.0, 6.0, -4.0, -5.0, 1.0],
    [4.0, -4.0, -4.0, 0.0, 6.0, -6.0, -4.0, -1.0, 5.0],
    [0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
    [0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0],
    [0.0, -8.0, 8.0, -4.0, 12.0, 12.0, -4.0, 4.0, -4.0],
    [0.0, 0.0, 0.0, 2.0, -6.0, -6.0, 2.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 4.0, -4.0, 0.0, -2.0, 2.0],
    [0.0, 0.0, 0.0, 0.0, -4.0, 4.0, 0.0, -2.0, 2.0],
];

pub fn mu_to_gamma(c: &CoeffSet) -> GammaSet {
    let mu = c.to_array();
    let mut g = [0.0; 9];
    for (i, row) in MU_TO_GAMMA_MATRIX.iter().enumerate() {
        g[i] = row.iter().zip(mu.iter()).map(|(a, b)| a * b).sum::<f64>() / 16.0;
    }
    GammaSet(g)
}

pub fn gamma_to_mu(g: &GammaSet) -> CoeffSet {
    // Solve (Z/16) μ = γ by Gaussian elimination; Z is constant and
    // invertible so this always succeeds.
    let mut a = [[0.0f64; 10]; 9];
    for i in 0..9 {
        for j in 0..9 {
            a[i][j] = MU_TO_GAMMA_MATRIX[i][j] / 16.0;
        }
        a[i][9] = g.0[i];
    }
    for col in 0..9 {
        let piv = (col..9)
            .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).unwrap())
            .unwrap();
        a.swap(col, piv);
        let d = a[col][col];
        debug_assert!(d.abs() > 1e-12);
        for j in col..10 {
            a[col][j] /= d;
        }
        for r in 0..9 {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for j in col..10 {
                    a[r][j] -= f * a[col][j];
                }
            }
        }
    }
    let mut mu = [0.0; 9];
    for i in 0..9 {
        mu[i] = a[i][9];
    }
    CoeffSet::from_array(mu)
}

/// Determinant of the μ → γ matrix (nonzero; the map is a bijection).
pub fn mu_to_gamma_determinant() -> f64 {
    let mut a = [[0.0f64; 9]; 9];
    for i in 0..9 {
        for j in 0..9 {
            a[i][j] = MU_TO_GAMMA_MATRIX[i][j] / 16.0;
        }
    }
    let mut det = 1.0;
    for col in 0..9 {
        let piv = (col..9)
            .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).unwrap())
            .unwrap();
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let d = a[col][col];
        if d == 0.0 {
            return 0.0;
        }
        det *= d;
        for r in col + 1..9 {
            let f = a[r][col] / d;
            for j in col..9 {
                a[r][j] -= f * a[col][j];
            }
        }
    }
    det
}

/// Couplings of a two-particle su(1,1) ⊕ su(1,1) Hamiltonian: a linear set
/// per particle plus all nine cross couplings μ_nm K_n⁽¹⁾ K_m⁽²⁾.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoParticleCoeffSet {
    /// (μ₀, μ₊, μ₋) of particle 1.
    pub linear1: [f64; 3],
    /// (μ₀, μ₊, μ₋) of particle 2.
    pub linear2: [f64; 3],
    /// Cross couplings indexed [n][m] over the generator order (0, +, −).
    pub cross: [[f64; 3]; 3],
}

/// Index into the (0, +, −) axis used by `TwoParticleCoeffSet::cross`.
pub const G0: usize = 0;
pub const GP: usize = 1;
pub const GM: usize = 2;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use GeneratorIndex::*;

    #[test]
    fn ordering_convention() {
        assert_eq!(normal_order(Plus, Minus), Some((Plus, Minus)));
        assert_eq!(normal_order(Minus, Plus), None);
        assert_eq!(normal_order(Zero, Zero), Some((Zero, Zero)));
        // exactly three of the nine pairs are suppressed
        let mut kept = 0;
        for &n in &GeneratorIndex::ALL {
            for &m in &GeneratorIndex::ALL {
                if normal_order(n, m).is_some() {
                    kept += 1;
                }
            }
        }
        assert_eq!(kept, 6);
    }

    #[test]
    fn defect_examples() {
        let swanson = CoeffSet::linear(0.0, 1.0, 2.0);
        let d = hermiticity_defect(&swanson);
        assert_eq!((d.d_lin, d.d_quad, d.d_mixed), (-1.0, 0.0, 0.0));

        let herm = CoeffSet { mu_p: 3.0, mu_m: 3.0, mu_pp: 1.0, mu_mm: 1.0, mu_p0: 0.5, mu_0m: 0.5, ..CoeffSet::ZERO };
        assert!(hermiticity_defect(&herm).is_zero());

        // H_{1/2} from the λ = 1/2 worked example
        let h_half = CoeffSet {
            mu_0: -1.0,
            mu_p: 1.0,
            mu_m: -1.0,
            mu_00: 1.0,
            mu_pm: 1.0,
            mu_p0: 1.0,
            mu_0m: 1.0,
            mu_pp: 5.5,
            mu_mm: 0.5,
        };
        let d = hermiticity_defect(&h_half);
        assert_eq!((d.d_lin, d.d_quad, d.d_mixed), (2.0, 5.0, 0.0));
    }

    #[test]
    fn casimir_shift_and_inverse() {
        let c = CoeffSet { mu_0: 0.7, mu_p: 1.0, mu_m: -0.3, ..CoeffSet::ZERO };
        let shifted = add_casimir(&c, 1.0);
        assert_eq!(shifted.mu_00, 1.0);
        assert_eq!(shifted.mu_pm, -1.0);
        assert_eq!(shifted.mu_0, c.mu_0 - 1.0);
        assert_eq!(add_casimir(&add_casimir(&c, 1.0), -1.0), c);
        assert_eq!(add_casimir(&c, 0.0), c);
    }

    #[test]
    fn casimir_commutes_with_defect() {
        let c = CoeffSet { mu_0: 0.2, mu_p: 1.5, mu_m: 0.1, mu_pp: 0.4, mu_0m: -0.2, ..CoeffSet::ZERO };
        for &k in &[-2.0, 0.5, 3.0] {
            assert_eq!(hermiticity_defect(&add_casimir(&c, k)), hermiticity_defect(&c));
        }
    }

    #[test]
    fn solvability_condition() {
        assert!(is_exactly_solvable_sl2(&CoeffSet { mu_m: 2.0, mu_mm: 1.0, mu_0m: 3.0, ..CoeffSet::ZERO }));
        assert!(!is_exactly_solvable_sl2(&CoeffSet { mu_p: 1.0, ..CoeffSet::ZERO }));
        assert!(is_exactly_solvable_sl2(&CoeffSet::ZERO));
    }

    #[test]
    fn gamma_first_column() {
        let g = mu_to_gamma(&CoeffSet { mu_0: 1.0, ..CoeffSet::ZERO });
        let expect = [0.0, 4.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0].map(|x: f64| x / 16.0);
        for (a, b) in g.0.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(mu_to_gamma(&CoeffSet::ZERO).0, [0.0; 9]);
    }

    #[test]
    fn gamma_determinant_nonzero() {
        assert!(mu_to_gamma_determinant().abs() > 1e-12);
    }

    proptest! {
        #[test]
        fn gamma_roundtrip(v in proptest::array::uniform9(-10.0f64..10.0)) {
            let c = CoeffSet::from_array(v);
            let back = gamma_to_mu(&mu_to_gamma(&c));
            for (a, b) in back.to_array().iter().zip(v.iter()) {
                prop_assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
            }
        }

        #[test]
        fn defect_invariant_under_casimir(v in proptest::array::uniform9(-5.0f64..5.0), k in -3.0f64..3.0) {
            let c = CoeffSet::from_array(v);
            prop_assert_eq!(hermiticity_defect(&add_casimir(&c, k)), hermiticity_defect(&c));
        }
    }
}
