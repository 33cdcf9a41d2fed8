use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Dense square complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let v: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Top-left `k`-dimensional block.
    pub fn top_left(&self, k: usize) -> Self {
        assert!(k <= self.dim);
        Self::from_fn(k, |i, j| self.get(i, j))
    }

    /// Submatrix on an arbitrary index subset.
    pub fn select(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.dim {
            let mut s = 0.0;
            for i in 0..self.dim {
                s += self.get(i, j).norm();
            }
            best = best.max(s);
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let (da, db) = (self.dim, other.dim);
        let mut out = CMat::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self.get(i, j);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out.set(i * db + k, j * db + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row_k = &other.data[k * n..(k + 1) * n];
                let row_i = &mut out.data[i * n..(i + 1) * n];
                for (o, &b) in row_i.iter_mut().zip(row_k.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Solve A X = B by LU with partial pivoting, returning X.
    pub fn solve(&self, b: &CMat) -> Option<CMat> {
        assert_eq!(self.dim, b.dim);
        let n = self.dim;
        let mut lu = self.clone();
        let mut x = b.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let mut pivot = col;
            let mut best = lu.get(col, col).norm();
            for r in col + 1..n {
                let v = lu.get(r, col).norm();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = lu.get(col, j);
                    lu.set(col, j, lu.get(pivot, j));
                    lu.set(pivot, j, tmp);
                }
                perm.swap(col, pivot);
                for j in 0..n {
                    let tmp = x.get(col, j);
                    x.set(col, j, x.get(pivot, j));
                    x.set(pivot, j, tmp);
                }
            }
            let d = lu.get(col, col);
            for r in col + 1..n {
                let f = lu.get(r, col) / d;
                lu.set(r, col, f);
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col + 1..n {
                    let v = lu.get(r, j) - f * lu.get(col, j);
                    lu.set(r, j, v);
                }
                for j in 0..n {
                    let v = x.get(r, j) - f * x.get(col, j);
                    x.set(r, j, v);
                }
            }
        }
        // back substitution
        for col in (0..n).rev() {
            let d = lu.get(col, col);
            for j in 0..n {
                let v = x.get(col, j) / d;
                x.set(col, j, v);
            }
            for r in 0..col {
                let f = lu.get(r, col);
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = x.get(r, j) - f * x.get(col, j);
                    x.set(r, j, v);
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<CMat> {
        self.solve(&CMat::identity(self.dim))
    }

    /// ‖A − A†‖_F, the Hermiticity residual.
    pub fn hermiticity_residual(&self) -> f64 {
        (self - &self.adjoint()).frobenius_norm()
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
        out
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= *b;
        }
        out
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_roundtrip() {
        let a = CMat::from_fn(4, |i, j| {
            Complex64::new((i * 7 + j * 3 + 1) as f64, ((i + 2 * j) % 3) as f64 - 1.0)
        });
        let a = &a + &CMat::identity(4).scale_re(10.0);
        let inv = a.inverse().unwrap();
        let res = (&(&a * &inv) - &CMat::identity(4)).frobenius_norm();
        assert!(res < 1e-12, "residual {res}");
    }

    #[test]
    fn kron_dims() {
        let a = CMat::identity(3);
        let b = CMat::identity(5);
        assert_eq!(a.kron(&b).dim(), 15);
    }
}
