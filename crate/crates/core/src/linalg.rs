//! Dense complex 4-vectors and 4×4 matrices.
//!
//! Everything the Gaussian side needs fits in fixed-size arrays, so there is
//! no allocation here. Inverses use Gauss-Jordan elimination with partial
//! pivoting and report a 1-norm condition number.

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
#[allow(unused_imports)] // unused when a dependency links std
use num_traits::{Float, Zero};

use crate::{Error, Result};

pub type C64 = Complex<f64>;

/// Condition numbers above this are treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `e^{iθ}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    Complex::new(theta.cos(), theta.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4(pub [C64; 4]);

impl Vec4 {
    pub const fn zero() -> Self {
        Vec4([Complex::new(0.0, 0.0); 4])
    }

    pub fn conj(&self) -> Self {
        Vec4(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Vec4(self.0.map(|z| z * s))
    }

    /// `self† other`
    pub fn dot(&self, other: &Vec4) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Vec4) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Index<usize> for Vec4 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub const fn zero() -> Self {
        Mat4([[Complex::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::real_diag([1.0; 4])
    }

    /// `K = 1 ⊕ -1` in the `(a, b, a†, b†)` ordering.
    pub fn k() -> Self {
        Self::real_diag([1.0, 1.0, -1.0, -1.0])
    }

    pub fn real_diag(d: [f64; 4]) -> Self {
        Self::diag(d.map(|x| c(x, 0.0)))
    }

    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> C64) -> Self {
        Mat4(core::array::from_fn(|i| core::array::from_fn(|j| f(i, j))))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| {
            (0..4).map(|j| self.0[i][j] * v.0[j]).sum()
        }))
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Mat4) -> C64 {
        let mut t = C64::zero();
        for i in 0..4 {
            for j in 0..4 {
                t += self.0[i][j] * other.0[j][i];
            }
        }
        t
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest `|Σ_ij - conj(Σ_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..4)
            .map(|j| (0..4).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = c(1.0, 0.0);
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].is_zero() {
                return C64::zero();
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det *= p;
            for row in col + 1..4 {
                let f = a[row][col] / p;
                for k in col..4 {
                    let v = a[col][k];
                    a[row][k] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse together with its 1-norm condition number.
    ///
    /// Fails with [`Error::SingularMatrix`] if a pivot vanishes or the
    /// condition number exceeds [`MAX_CONDITION`].
    pub fn inverse_with_condition(&self) -> Result<(Mat4, f64)> {
        let mut a = self.0;
        let mut inv = Mat4::identity().0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].norm() == 0.0 {
                return Err(Error::SingularMatrix {
                    condition: f64::INFINITY,
                });
            }
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].inv();
            for k in 0..4 {
                a[col][k] *= p;
                inv[col][k] *= p;
            }
            for row in 0..4 {
                if row == col {
                    continue;
                }
                let f = a[row][col];
                if f.is_zero() {
                    continue;
                }
                for k in 0..4 {
                    let (av, iv) = (a[col][k], inv[col][k]);
                    a[row][k] -= f * av;
                    inv[row][k] -= f * iv;
                }
            }
        }
        let inv = Mat4(inv);
        let condition = self.norm_1() * inv.norm_1();
        if !condition.is_finite() || condition > MAX_CONDITION {
            return Err(Error::SingularMatrix { condition });
        }
        Ok((inv, condition))
    }

    pub fn inverse(&self) -> Result<Mat4> {
        self.inverse_with_condition().map(|(m, _)| m)
    }

    /// `L · self · L†`
    pub fn congruence(&self, l: &Mat4) -> Mat4 {
        *l * *self * l.adjoint()
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        Mat4::from_fn(|i, j| -self.0[i][j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Mat4 {
        Mat4::from_fn(|i, j| c((i * 4 + j) as f64 * 0.3 - 1.0, ((i + 2 * j) % 3) as f64 - 0.7))
            + Mat4::real_diag([3.0, -2.0, 4.0, 1.5])
    }

    #[test]
    fn inverse_round_trip() {
        let m = sample();
        let (inv, cond) = m.inverse_with_condition().unwrap();
        assert!(cond >= 1.0);
        assert!((m * inv).max_abs_diff(&Mat4::identity()) < 1e-12);
        assert!((inv * m).max_abs_diff(&Mat4::identity()) < 1e-12);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        fn minor(m: &[[C64; 4]; 4], skip: usize) -> C64 {
            // 3x3 determinant of rows 1..4 without column `skip`
            let cols: alloc::vec::Vec<usize> = (0..4).filter(|&j| j != skip).collect();
            let e = |r: usize, k: usize| m[r][cols[k]];
            e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1))
                - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
                + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
        }
        let m = sample();
        let expected: C64 = (0..4)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                m.0[0][j] * minor(&m.0, j) * sign
            })
            .sum();
        assert!((m.det() - expected).norm() < 1e-10 * expected.norm());
    }

    #[test]
    fn singular_is_rejected() {
        let mut m = sample();
        for j in 0..4 {
            m.0[3][j] = m.0[0][j] * 2.0;
        }
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix { .. })));
        assert!(m.det().norm() < 1e-10);
    }

    #[test]
    fn trace_of_product_matches() {
        let a = sample();
        let b = sample().adjoint();
        assert!(((a * b).trace() - a.trace_of_product(&b)).norm() < 1e-12);
    }
}
