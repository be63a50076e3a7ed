//! Tolerance-governed primitives: numerical rank, range bases, unitary
//! completion, approximate equality and normalized powers.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{czero, Real};
use crate::svd::{svd, Svd};
use crate::tolerance::ToleranceContext;

/// Number of singular values above `max(atol, rtol * sigma_max)`.
pub fn rank<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> usize {
    let s = svd(a);
    s.count_above(tol.rank_cutoff(s.sigma_max()))
}

/// Rank with the relative cutoff taken against `reference` instead of the
/// matrix's own largest singular value. Used when `a` is derived from a
/// larger problem whose scale defines what "zero" means.
pub fn rank_with_reference<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>, reference: T) -> usize {
    svd(a).count_above(tol.rank_cutoff(reference))
}

/// Orthonormal basis of the numerical column space, `rows x rank`.
pub fn range_basis<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> ComplexMatrix<T> {
    let s = svd(a);
    let r = s.count_above(tol.rank_cutoff(s.sigma_max()));
    leading_left(&s, a.rows(), r)
}

pub fn range_basis_with_reference<T: Real>(
    a: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
    reference: T,
) -> ComplexMatrix<T> {
    let s = svd(a);
    let r = s.count_above(tol.rank_cutoff(reference));
    leading_left(&s, a.rows(), r)
}

/// Leading `r` left singular vectors, for when the rank is already known.
pub fn range_basis_of_rank<T: Real>(a: &ComplexMatrix<T>, r: usize) -> ComplexMatrix<T> {
    let s = svd(a);
    leading_left(&s, a.rows(), r.min(s.sigma.len()))
}

fn leading_left<T: Real>(s: &Svd<T>, rows: usize, r: usize) -> ComplexMatrix<T> {
    if r == 0 {
        ComplexMatrix::zeros(rows, 0)
    } else {
        s.u.select_columns(0, r)
    }
}

/// Orthogonal projector `Q Q^*`.
pub fn projector<T: Real>(q: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    q.matmul(&q.adjoint())
}

/// Largest tolerated `||Q^*Q - I||_F` for [`unitary_complete`].
pub fn orthonormal_threshold<T: Real>(n: usize) -> T {
    T::of(1e4) * T::of_usize(n.max(1)) * T::epsilon()
}

/// Extends orthonormal columns `q` (`n x r`) to an `n x n` unitary whose
/// first `r` columns are `q`.
///
/// New columns come from the standard basis vector with the largest
/// component outside the current span, orthogonalized twice.
pub fn unitary_complete<T: Real>(q: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (n, r) = q.shape();
    let defect = q.orthonormality_defect();
    if r > n || defect.is_nan() || defect > orthonormal_threshold::<T>(n) {
        return Err(Error::NonOrthonormalInput {
            residual: defect.as_f64(),
        });
    }
    let mut basis: Vec<Vec<Complex<T>>> = q.columns();
    while basis.len() < n {
        // ||e_i - P e_i||^2 = 1 - ||row_i of basis||^2
        let pick = (0..n)
            .map(|i| {
                let inside = basis.iter().fold(T::zero(), |acc, c| acc + c[i].norm_sqr());
                (i, T::one() - inside)
            })
            .fold(
                (0, T::neg_infinity()),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            )
            .0;
        let mut v = vec![czero(); n];
        v[pick] = Complex::new(T::one(), T::zero());
        for _ in 0..2 {
            for c in &basis {
                let h = c.iter().zip(&v).fold(czero(), |acc, (a, b)| acc + a.conj() * b);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= *ci * h;
                }
            }
        }
        let norm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        basis.push(v);
    }
    Ok(ComplexMatrix::from_columns(n, &basis))
}

/// `||A - B||_F <= atol + rtol * max(||A||_F, ||B||_F)`.
pub fn approx_eq<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<bool> {
    a.require_same_shape(b)?;
    let diff = (a - b).norm_fro();
    Ok(diff <= tol.bound(a.norm_fro().max(b.norm_fro())))
}

/// `A^p` carried as a matrix of moderate norm and a separate log-scale.
#[derive(Debug, Clone)]
pub struct ScaledPower<T: Real> {
    /// Normalized factor; zero when the power vanished.
    pub matrix: ComplexMatrix<T>,
    /// `ln s` with `A^p = s * matrix`; `-inf` when the power vanished.
    pub log_scale: T,
}

impl<T: Real> ScaledPower<T> {
    pub fn is_zero(&self) -> bool {
        self.log_scale == T::neg_infinity()
    }

    pub fn scale(&self) -> T {
        self.log_scale.exp()
    }

    /// The power itself, `s * matrix` (may overflow for huge powers).
    pub fn value(&self) -> ComplexMatrix<T> {
        if self.is_zero() {
            self.matrix.clone()
        } else {
            self.matrix.scale(self.scale())
        }
    }
}

/// `A^p` by repeated multiplication, renormalizing whenever the running
/// product leaves `[1/2, 2]` in Frobenius norm.
///
/// The power is reported as zero when it is exact zero or when
/// `||A^p|| <= 8 p n eps ||A||^p`, i.e. indistinguishable from the
/// rounding error of the product chain.
pub fn scaled_power_log<T: Real>(a: &ComplexMatrix<T>, p: usize) -> Result<ScaledPower<T>> {
    let n = a.require_square()?;
    let half = T::of(0.5);
    let two = T::of(2.0);
    let norm_a = a.norm_fro();
    let zero = || ScaledPower {
        matrix: ComplexMatrix::zeros(n, n),
        log_scale: T::neg_infinity(),
    };
    if n == 0 {
        return Ok(ScaledPower {
            matrix: ComplexMatrix::zeros(0, 0),
            log_scale: T::zero(),
        });
    }
    if p > 0 && norm_a == T::zero() {
        return Ok(zero());
    }
    let mut m = ComplexMatrix::identity(n);
    let mut log_s = T::zero();
    for _ in 0..p {
        m = m.matmul(a);
        let nm = m.norm_fro();
        if nm == T::zero() {
            return Ok(zero());
        }
        if nm < half || nm > two {
            m = m.scale(T::one() / nm);
            log_s += nm.ln();
        }
    }
    if p > 0 {
        let log_norm = log_s + m.norm_fro().ln();
        let floor = (T::of(8.0) * T::of_usize(p) * T::of_usize(n) * T::epsilon()).ln() + T::of_usize(p) * norm_a.ln();
        if log_norm <= floor {
            return Ok(zero());
        }
    }
    Ok(ScaledPower {
        matrix: m,
        log_scale: log_s,
    })
}

/// `(M, s)` with `s * M = A^p` and `||M||_F` in `[1/2, 2]`, or `(0, 0)`
/// when the power vanishes.
pub fn scaled_power<T: Real>(a: &ComplexMatrix<T>, p: usize) -> Result<(ComplexMatrix<T>, T)> {
    let sp = scaled_power_log(a, p)?;
    let s = if sp.is_zero() { T::zero() } else { sp.scale() };
    Ok((sp.matrix, s))
}

/// Pseudoinverse keeping the singular values above `cutoff`.
pub fn pinv_cutoff<T: Real>(a: &ComplexMatrix<T>, cutoff: T) -> ComplexMatrix<T> {
    let s = svd(a);
    let r = s.count_above(cutoff);
    pinv_from(&s, a.shape(), r)
}

/// Pseudoinverse of the best rank-`r` approximation of `a`.
pub fn pinv_of_rank<T: Real>(a: &ComplexMatrix<T>, r: usize) -> ComplexMatrix<T> {
    let s = svd(a);
    let r = r.min(s.sigma.len());
    pinv_from(&s, a.shape(), r)
}

pub(crate) fn pinv_from<T: Real>(s: &Svd<T>, (m, n): (usize, usize), r: usize) -> ComplexMatrix<T> {
    let mut out = ComplexMatrix::zeros(n, m);
    for k in 0..r {
        let inv = T::one() / s.sigma[k];
        for i in 0..n {
            let vik = s.v[(i, k)] * inv;
            for j in 0..m {
                out[(i, j)] += vik * s.u[(j, k)].conj();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn example_a() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    }

    fn example_b() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    }

    #[test]
    fn rank_examples() {
        let tol = ToleranceContext::default();
        assert_eq!(rank(&ComplexMatrix::<f64>::identity(3), &tol), 3);
        assert_eq!(rank(&example_a(), &tol), 1);
        assert_eq!(rank(&example_b(), &tol), 2);
        assert_eq!(rank(&ComplexMatrix::<f64>::zeros(3, 3), &tol), 0);
    }

    #[test]
    fn range_basis_examples() {
        let tol = ToleranceContext::default();
        let q = range_basis(&example_a(), &tol);
        assert_eq!(q.shape(), (3, 1));
        let e1 = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!((&projector(&q) - &e1).norm_fro() < 1e-14);

        let qi = range_basis(&ComplexMatrix::<f64>::identity(4), &tol);
        assert!((&projector(&qi) - &ComplexMatrix::identity(4)).norm_fro() < 1e-14);

        assert_eq!(range_basis(&ComplexMatrix::<f64>::zeros(3, 3), &tol).shape(), (3, 0));
    }

    #[test]
    fn unitary_complete_examples() {
        let e1 = ComplexMatrix::<f64>::from_real_rows(&[[1.0], [0.0], [0.0]]);
        assert_eq!(unitary_complete(&e1).unwrap(), ComplexMatrix::identity(3));
        assert_eq!(
            unitary_complete(&ComplexMatrix::<f64>::zeros(3, 0)).unwrap(),
            ComplexMatrix::identity(3)
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q = ComplexMatrix::<f64>::from_real_rows(&[[h], [h]]);
        let u = unitary_complete(&q).unwrap();
        // second column is (1, -1)/sqrt(2) up to a unit phase
        let second = u.select_columns(1, 1);
        let overlap = (second[(0, 0)] * h - second[(1, 0)] * h).norm();
        assert!((overlap - 1.0).abs() < 1e-14);
        assert!(u.orthonormality_defect() < 1e-14);

        let bad = ComplexMatrix::<f64>::from_real_rows(&[[1.0], [1.0]]);
        assert!(matches!(unitary_complete(&bad), Err(Error::NonOrthonormalInput { .. })));
    }

    #[test]
    fn approx_eq_examples() {
        let tol = ToleranceContext::new(1e-12, 0.0).unwrap();
        let a = example_b();
        assert!(approx_eq(&a, &a, &tol).unwrap());
        let z = ComplexMatrix::<f64>::zeros(3, 3);
        assert!(approx_eq(&z, &z, &tol).unwrap());
        let mut bumped = a.clone();
        bumped[(0, 0)] += cx(10.0 * 1e-12, 0.0);
        assert!(!approx_eq(&a, &bumped, &tol).unwrap());
        assert!(matches!(
            approx_eq(&a, &ComplexMatrix::zeros(2, 3), &tol),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn scaled_power_examples() {
        let (m, s) = scaled_power(&ComplexMatrix::<f64>::identity(3), 5).unwrap();
        assert_eq!((m, s), (ComplexMatrix::identity(3), 1.0));

        let shift = ComplexMatrix::<f64>::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let (m, s) = scaled_power(&shift, 2).unwrap();
        assert_eq!((m, s), (ComplexMatrix::zeros(2, 2), 0.0));

        let two = ComplexMatrix::<f64>::from_real_rows(&[[2.0, 0.0], [0.0, 2.0]]);
        let (m, s) = scaled_power(&two, 3).unwrap();
        let nm = m.norm_fro();
        assert!((0.5..=2.0).contains(&nm));
        assert!((&m.scale(s) - &ComplexMatrix::identity(2).scale(8.0)).norm_fro() < 1e-13);
    }

    #[test]
    fn pinv_rank_one() {
        let a = example_a();
        let x = pinv_of_rank(&a, 1);
        assert!((&x - &a.adjoint().scale(1.0 / 14.0)).norm_fro() < 1e-15);
    }
}
