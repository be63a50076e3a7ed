//! Thin singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Columns of the working matrix are rotated pairwise until every pair is
//! orthogonal to machine precision; the column norms are then the singular
//! values. The method is slow compared to bidiagonalization but has high
//! relative accuracy, and the left singular vectors of tiny singular values
//! come out orthogonal, which matters for the range bases built on top.

use num_complex::Complex;

use crate::matrix::ComplexMatrix;
use crate::scalar::{czero, Real};

const MAX_SWEEPS: usize = 80;

/// `A = U · diag(sigma) · V^*` with `p = min(m, n)` columns in `U` and `V`
/// and `sigma` sorted in non-increasing order.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    pub u: ComplexMatrix<T>,
    pub sigma: Vec<T>,
    pub v: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn sigma_max(&self) -> T {
        self.sigma.first().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values strictly above `cutoff`.
    pub fn count_above(&self, cutoff: T) -> usize {
        self.sigma.iter().take_while(|&&s| s > cutoff).count()
    }

    /// `sigma_max / sigma_min`, infinite when the smallest is zero.
    pub fn condition(&self) -> T {
        match self.sigma.last() {
            None => T::one(),
            Some(&s) if s == T::zero() => T::infinity(),
            Some(&s) => self.sigma_max() / s,
        }
    }
}

pub fn svd<T: Real>(a: &ComplexMatrix<T>) -> Svd<T> {
    if a.rows() < a.cols() {
        let Svd { u, sigma, v } = svd_tall(&a.adjoint());
        Svd { u: v, sigma, v: u }
    } else {
        svd_tall(a)
    }
}

fn dot<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter().zip(y).fold(czero(), |acc, (a, b)| acc + a.conj() * b)
}

fn norm_sq<T: Real>(x: &[Complex<T>]) -> T {
    x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// Applies the unitary column rotation `[[c, s e^{i phi}], [-s e^{-i phi}, c]]`.
fn rotate<T: Real>(cols: &mut [Vec<Complex<T>>], p: usize, q: usize, c: T, s: T, phase: Complex<T>) {
    let (lo, hi) = cols.split_at_mut(q);
    let (xp, xq) = (&mut lo[p], &mut hi[0]);
    let sp = phase * s;
    let sm = phase.conj() * s;
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let (ap, aq) = (*a, *b);
        *a = ap * c - aq * sm;
        *b = ap * sp + aq * c;
    }
}

fn svd_tall<T: Real>(a: &ComplexMatrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    let mut work = a.columns();
    let mut vcols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![czero(); n];
            e[j] = Complex::new(T::one(), T::zero());
            e
        })
        .collect();

    let eps = T::epsilon();
    let tiny = T::min_positive_value();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sq(&work[p]);
                let beta = norm_sq(&work[q]);
                if alpha <= tiny || beta <= tiny {
                    continue;
                }
                let gamma = dot(&work[p], &work[q]);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (g + g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut work, p, q, c, s, phase);
                rotate(&mut vcols, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(usize, T)> = work.iter().map(|c| norm_sq(c).sqrt()).enumerate().collect();
    order.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap_or(std::cmp::Ordering::Equal));

    let mut ucols = Vec::with_capacity(n);
    let mut vsorted = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    for &(j, s) in &order {
        let col = if s > T::zero() {
            work[j].iter().map(|&z| z / s).collect()
        } else {
            vec![czero(); m]
        };
        ucols.push(col);
        vsorted.push(vcols[j].clone());
        sigma.push(s);
    }
    Svd {
        u: ComplexMatrix::from_columns(m, &ucols),
        sigma,
        v: ComplexMatrix::from_columns(n, &vsorted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn reconstruct(s: &Svd<f64>) -> ComplexMatrix<f64> {
        let d = ComplexMatrix::from_diag(&s.sigma.iter().map(|&x| cx(x, 0.0)).collect::<Vec<_>>());
        s.u.matmul(&d).matmul(&s.v.adjoint())
    }

    #[test]
    fn single_row_rank_one() {
        let a = ComplexMatrix::<f64>::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let s = svd(&a);
        assert!((s.sigma[0] - 14f64.sqrt()).abs() < 1e-14);
        assert!(s.sigma[1].abs() < 1e-15 && s.sigma[2].abs() < 1e-15);
        assert!((&reconstruct(&s) - &a).norm_fro() < 1e-14);
    }

    #[test]
    fn complex_wide_and_tall() {
        let a = ComplexMatrix::from_fn(3, 5, |i, j| {
            cx((i * 5 + j) as f64 * 0.3 - 1.0, ((i + 2 * j) % 4) as f64 - 1.5)
        });
        for m in [a.clone(), a.adjoint()] {
            let s = svd(&m);
            assert_eq!(s.sigma.len(), 3);
            assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
            assert!((&reconstruct(&s) - &m).norm_fro() < 1e-13 * m.norm_fro());
            assert!(s.u.orthonormality_defect() < 1e-13);
            assert!(s.v.orthonormality_defect() < 1e-13);
        }
    }

    #[test]
    fn diagonal_values_exact() {
        let a = ComplexMatrix::from_diag(&[cx(0.0, 2.0), cx(-5.0, 0.0), cx(0.5, 0.0)]);
        let s = svd(&a);
        assert_eq!(s.sigma, vec![5.0, 2.0, 0.5]);
        assert_eq!(s.condition(), 10.0);
    }
}
