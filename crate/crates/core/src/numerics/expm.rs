use super::matrix::CMat;
use crate::error::{QhError, Result};
use num_complex::Complex64;

/// Default rejection bound for ‖A‖₁. Metric exponentials grow like
/// exp(ε·dim); past this bound the result would drown the verification
/// tolerances, so the caller is told instead of being handed noise.
pub const EXP_NORM_CAP: f64 = 50.0;

// Padé-13 coefficients (Higham, "The scaling and squaring method for the
// matrix exponential revisited").
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA_13: f64 = 5.371920351148152;

/// exp(A) by scaling-and-squaring with the [13/13] Padé approximant.
pub fn matrix_exp(a: &CMat) -> Result<CMat> {
    matrix_exp_with_cap(a, EXP_NORM_CAP)
}

pub fn matrix_exp_with_cap(a: &CMat, cap: f64) -> Result<CMat> {
    if !a.is_finite() {
        return Err(QhError::Numerical("matrix_exp: non-finite input".into()));
    }
    let norm = a.one_norm();
    if norm > cap {
        return Err(QhError::ExponentialOverflow { norm, cap });
    }

    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale_re(0.5f64.powi(s as i32));

    let n = a.dim();
    let ident = CMat::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let b = &PADE13;
    // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let w1 = &(&a6.scale_re(b[13]) + &a4.scale_re(b[11])) + &a2.scale_re(b[9]);
    let w2 = &(&(&a6.scale_re(b[7]) + &a4.scale_re(b[5])) + &a2.scale_re(b[3])) + &ident.scale_re(b[1]);
    let u = &scaled * &(&(&a6 * &w1) + &w2);
    // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = &(&a6.scale_re(b[12]) + &a4.scale_re(b[10])) + &a2.scale_re(b[8]);
    let v = &(&a6 * &z1) + &(&(&(&a6.scale_re(b[6]) + &a4.scale_re(b[4])) + &a2.scale_re(b[2])) + &ident.scale_re(b[0]));

    let num = &v + &u;
    let den = &v - &u;
    let mut r = den
        .solve(&num)
        .ok_or_else(|| QhError::Numerical("matrix_exp: Padé denominator singular".into()))?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

pub fn exp_inverse_residual(a: &CMat) -> Result<f64> {
    let e = matrix_exp(a)?;
    let em = matrix_exp(&a.scale_re(-1.0))?;
    Ok((&(&e * &em) - &CMat::identity(a.dim())).frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_zero_is_identity() {
        let e = matrix_exp(&CMat::zeros(5)).unwrap();
        assert!((&e - &CMat::identity(5)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn exp_diagonal() {
        let d = CMat::diag_real(&[0.3, -1.2, 2.5]);
        let e = matrix_exp(&d).unwrap();
        for (i, &x) in [0.3, -1.2, 2.5].iter().enumerate() {
            assert!((e.get(i, i) - Complex64::new(x.exp(), 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn exp_rejects_large_norm() {
        let d = CMat::diag_real(&[100.0, 0.0]);
        assert!(matches!(matrix_exp(&d), Err(QhError::ExponentialOverflow { .. })));
    }

    #[test]
    fn exp_inverse_identity() {
        // rotation generator, norm around 1
        let a = CMat::from_fn(6, |i, j| {
            if i + 1 == j {
                Complex64::new(0.4, 0.1)
            } else if j + 1 == i {
                Complex64::new(-0.4, 0.1)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        assert!(exp_inverse_residual(&a).unwrap() < 1e-12);
    }
}
