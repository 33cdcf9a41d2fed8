use super::matrix::CMat;
use crate::error::{QhError, Result};
use num_complex::Complex64;

/// Full spectrum of a general complex matrix, sorted by real part then
/// imaginary part. Hessenberg reduction followed by implicitly shifted QR.
pub fn eigenvalues(a: &CMat) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![a.get(0, 0)]);
    }
    let mut h = balance(a);
    hessenberg_in_place(&mut h);
    let mut eigs = qr_eigenvalues(&mut h)?;
    sort_complex(&mut eigs);
    Ok(eigs)
}

/// Eigenvalues of a Hermitian matrix, ascending. Householder
/// tridiagonalization plus implicit-shift QL on the real tridiagonal form.
pub fn eigenvalues_hermitian(a: &CMat) -> Result<Vec<f64>> {
    let n = a.dim();
    if n == 0 {
        return Ok(vec![]);
    }
    let (mut d, mut e) = tridiagonalize(a);
    tql_values(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

fn sort_complex(v: &mut [Complex64]) {
    v.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Parlett–Reinsch balancing (radix 2), eigenvalue-preserving diagonal
/// similarity that improves conditioning of non-normal inputs.
fn balance(a: &CMat) -> CMat {
    let n = a.dim();
    let mut m = a.clone();
    let radix = 2.0f64;
    let mut done = false;
    let mut rounds = 0;
    while !done && rounds < 50 {
        done = true;
        rounds += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m.get(j, i).norm();
                    r += m.get(i, j).norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let s = c + r;
            let mut cc = c;
            while cc < r / radix {
                f *= radix;
                cc *= radix * radix;
            }
            while cc > r * radix {
                f /= radix;
                cc /= radix * radix;
            }
            if (c * f + r / f) < 0.95 * s {
                done = false;
                for j in 0..n {
                    let v = m.get(i, j) / f;
                    m.set(i, j, v);
                }
                for j in 0..n {
                    let v = m.get(j, i) * f;
                    m.set(j, i, v);
                }
            }
        }
    }
    m
}

/// Householder reduction to upper Hessenberg form (in place).
fn hessenberg_in_place(h: &mut CMat) {
    let n = h.dim();
    for k in 0..n.saturating_sub(2) {
        // form the reflector annihilating column k below the subdiagonal
        let mut xnorm = 0.0;
        for i in k + 1..n {
            xnorm += h.get(i, k).norm_sqr();
        }
        xnorm = xnorm.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h.get(k + 1, k);
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * xnorm
        } else {
            Complex64::new(-xnorm, 0.0)
        };
        // v = x - alpha e1, normalized
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = h.get(i, k);
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2 v v†) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k + 1..n {
                dot += v[i].conj() * h.get(i, j);
            }
            let dot = dot * 2.0;
            for i in k + 1..n {
                let val = h.get(i, j) - v[i] * dot;
                h.set(i, j, val);
            }
        }
        // H <- H (I - 2 v v†)
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in k + 1..n {
                dot += h.get(i, j) * v[j];
            }
            let dot = dot * 2.0;
            for j in k + 1..n {
                let val = h.get(i, j) - dot * v[j].conj();
                h.set(i, j, val);
            }
        }
        for i in k + 2..n {
            h.set(i, k, Complex64::new(0.0, 0.0));
        }
    }
}

/// Implicit single-shift QR on an upper Hessenberg matrix; returns the
/// eigenvalues. Exceptional shifts break stagnation on defective inputs.
fn qr_eigenvalues(h: &mut CMat) -> Result<Vec<Complex64>> {
    let n = h.dim();
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n; // active window is 0..hi
    let scale = h.one_norm().max(f64::MIN_POSITIVE);
    let mut iters_this_block = 0usize;
    let max_block_iters = 60 * n.max(8);

    while hi > 0 {
        if hi == 1 {
            eigs.push(h.get(0, 0));
            hi = 0;
            continue;
        }
        // deflate negligible subdiagonals from the bottom of the window
        let mut lo = hi - 1;
        while lo > 0 {
            let s = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            let s = if s == 0.0 { scale } else { s };
            if h.get(lo, lo - 1).norm() <= f64::EPSILON * s {
                h.set(lo, lo - 1, Complex64::new(0.0, 0.0));
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 && (hi < 2 || h.get(hi - 1, hi - 2).norm() == 0.0) {
            // isolated 1x1 at the bottom
            eigs.push(h.get(hi - 1, hi - 1));
            hi -= 1;
            iters_this_block = 0;
            continue;
        }
        if hi >= 2 && h.get(hi - 1, hi - 2).norm() <= f64::EPSILON * scale.max(h.get(hi - 1, hi - 1).norm() + h.get(hi - 2, hi - 2).norm()) {
            eigs.push(h.get(hi - 1, hi - 1));
            hi -= 1;
            iters_this_block = 0;
            continue;
        }

        iters_this_block += 1;
        if iters_this_block > max_block_iters {
            return Err(QhError::EigNonConvergence { iters: iters_this_block });
        }

        // Wilkinson shift from the trailing 2x2 of the active window
        let a = h.get(hi - 2, hi - 2);
        let b = h.get(hi - 2, hi - 1);
        let c = h.get(hi - 1, hi - 2);
        let d = h.get(hi - 1, hi - 1);
        let tr = a + d;
        let det = a * d - b * c;
        let disc = (tr * tr - det * 4.0).sqrt();
        let mut l1 = (tr + disc) * 0.5;
        let l2 = (tr - disc) * 0.5;
        if (l1 - d).norm() > (l2 - d).norm() {
            l1 = l2;
        }
        let mut shift = l1;
        if iters_this_block % 16 == 0 {
            // exceptional shift: perturb to escape symmetric stagnation
            let mag = h.get(hi - 1, hi - 2).norm() + if hi >= 3 { h.get(hi - 2, hi - 3).norm() } else { 0.0 };
            shift = d + Complex64::new(1.5 * mag, 0.5 * mag);
        }

        // implicit shifted QR sweep on window lo..hi via Givens rotations
        let m = hi;
        let mut gs: Vec<(f64, Complex64)> = Vec::with_capacity(m - lo);
        let mut x = h.get(lo, lo) - shift;
        let mut y = h.get(lo + 1, lo);
        for k in lo..m - 1 {
            // rotation zeroing y against x
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (1.0, Complex64::new(0.0, 0.0))
            } else {
                (x.norm() / r, if x.norm() == 0.0 { y.conj() / r } else { (x / x.norm()).conj() * y.conj() / r })
            };
            gs.push((cs, sn));
            // apply G† from the left to rows k, k+1
            for j in lo..hi.max(k + 2).min(h.dim()) {
                let hkj = h.get(k, j);
                let hk1j = h.get(k + 1, j);
                h.set(k, j, hkj * cs + hk1j * sn);
                h.set(k + 1, j, -hkj * sn.conj() + hk1j * cs);
            }
            if k + 2 < m {
                x = h.get(k + 1, k);
                y = h.get(k + 2, k);
            }
        }
        for (k, (cs, sn)) in (lo..m - 1).zip(gs.iter()) {
            // apply G from the right to columns k, k+1
            let top = (k + 2).min(m - 1);
            for i in lo..=top.min(h.dim() - 1) {
                let hik = h.get(i, k);
                let hik1 = h.get(i, k + 1);
                h.set(i, k, hik * cs + hik1 * sn.conj());
                h.set(i, k + 1, -hik * *sn + hik1 * cs);
            }
        }
    }
    Ok(eigs)
}

/// Complex Householder tridiagonalization of a Hermitian matrix; returns the
/// real (diagonal, subdiagonal) of the unitarily equivalent tridiagonal form.
fn tridiagonalize(a: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = a.dim();
    let mut m = a.clone();
    for k in 0..n.saturating_sub(2) {
        let mut xnorm = 0.0;
        for i in k + 1..n {
            xnorm += m.get(i, k).norm_sqr();
        }
        xnorm = xnorm.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = m.get(k + 1, k);
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * xnorm
        } else {
            Complex64::new(-xnorm, 0.0)
        };
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = m.get(i, k);
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // two-sided Householder update, preserving Hermiticity
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k + 1..n {
                dot += v[i].conj() * m.get(i, j);
            }
            let dot = dot * 2.0;
            for i in k + 1..n {
                let val = m.get(i, j) - v[i] * dot;
                m.set(i, j, val);
            }
        }
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in k + 1..n {
                dot += m.get(i, j) * v[j];
            }
            let dot = dot * 2.0;
            for j in k + 1..n {
                let val = m.get(i, j) - dot * v[j].conj();
                m.set(i, j, val);
            }
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    for i in 0..n {
        d[i] = m.get(i, i).re;
    }
    // absorb subdiagonal phases so the tridiagonal is real non-negative
    for i in 0..n.saturating_sub(1) {
        e[i] = m.get(i + 1, i).norm();
    }
    (d, e)
}

/// Implicit-shift QL, eigenvalues only (Numerical-Recipes-style tqli).
fn tql_values(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let mut e_ext = e.to_vec();
    e_ext.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e_ext[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 80 {
                return Err(QhError::EigNonConvergence { iters: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e_ext[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e_ext[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            for i in (l..m).rev() {
                let mut f = s * e_ext[i];
                let b = c * e_ext[i];
                r = f.hypot(g);
                e_ext[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e_ext[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            d[l] -= p;
            e_ext[l] = g;
            e_ext[m] = 0.0;
        }
    }
    e.copy_from_slice(&e_ext[..n - 1]);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum() {
        let m = CMat::diag_real(&[3.0, 1.0, 2.0]);
        let e = eigenvalues(&m).unwrap();
        let re: Vec<f64> = e.iter().map(|z| z.re).collect();
        assert!((re[0] - 1.0).abs() < 1e-12);
        assert!((re[1] - 2.0).abs() < 1e-12);
        assert!((re[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn nilpotent_spectrum_near_zero() {
        // Jordan-like: all eigenvalues 0, defective
        let n = 8;
        let m = CMat::from_fn(n, |i, j| {
            if i + 1 == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let e = eigenvalues(&m).unwrap();
        for z in e {
            assert!(z.norm() < 1e-7, "nilpotent eigenvalue {z}");
        }
    }

    #[test]
    fn hermitian_matches_general() {
        let n = 12;
        let mut m = CMat::from_fn(n, |i, j| {
            let re = ((i * 13 + j * 7) % 11) as f64 / 11.0 - 0.5;
            let im = ((i * 5 + j * 17) % 13) as f64 / 13.0 - 0.5;
            Complex64::new(re, if i == j { 0.0 } else { im })
        });
        let m2 = m.adjoint();
        m = &m + &m2; // Hermitian
        let eh = eigenvalues_hermitian(&m).unwrap();
        let eg = eigenvalues(&m).unwrap();
        for (a, b) in eh.iter().zip(eg.iter()) {
            assert!((a - b.re).abs() < 1e-9 && b.im.abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn similarity_invariance() {
        let n = 10;
        let a = CMat::from_fn(n, |i, j| {
            Complex64::new(
                ((i * 3 + j * 5) % 7) as f64 / 7.0,
                ((i + j * 2) % 5) as f64 / 5.0 - 0.4,
            )
        });
        // well-conditioned S: identity plus small off-diagonal
        let s = CMat::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.05 / (1.0 + (i as f64 - j as f64).abs()), 0.0)
            }
        });
        let sinv = s.inverse().unwrap();
        let b = &(&s * &a) * &sinv;
        let ea = eigenvalues(&a).unwrap();
        let eb = eigenvalues(&b).unwrap();
        for (x, y) in ea.iter().zip(eb.iter()) {
            assert!((x - y).norm() < 1e-7, "{x} vs {y}");
        }
    }
}
