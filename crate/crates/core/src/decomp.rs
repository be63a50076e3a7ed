//! Index, core form, core-EP decomposition, canonical block form and the
//! core-nilpotent decomposition.

use crate::error::{Error, Result};
use crate::inverses;
use crate::kernel::{
    pinv_of_rank, projector, range_basis, range_basis_of_rank, range_basis_with_reference, scaled_power_log,
    unitary_complete,
};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::svd::svd;
use crate::tolerance::{Residuals, ToleranceContext};

/// Rank chain of the powers of a square matrix.
#[derive(Debug, Clone)]
pub struct IndexAnalysis<T: Real> {
    /// `Ind(A)`.
    pub index: usize,
    /// `ranks[j] = rk(A^j)` for `j = 0..=index + 1`.
    pub ranks: Vec<usize>,
    /// Orthonormal basis of `R(A^index)`.
    pub power_basis: ComplexMatrix<T>,
}

impl<T: Real> IndexAnalysis<T> {
    pub fn core_rank(&self) -> usize {
        self.power_basis.cols()
    }
}

/// Computes the index together with a basis of `R(A^k)`.
///
/// Bases are propagated through `R(A^{j+1}) = A R(A^j)`, so each step
/// only sees `A` applied to orthonormal columns and never a high power of
/// `A`. Ranks are judged against `sigma_max(A)`, which makes the sequence
/// non-increasing by construction and stationary after at most `n` steps.
pub fn index_analysis<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<IndexAnalysis<T>> {
    let n = a.require_square()?;
    let reference = svd(a).sigma_max();
    let mut basis = ComplexMatrix::identity(n);
    let mut ranks = vec![n];
    loop {
        let next = range_basis_with_reference(&a.matmul(&basis), tol, reference);
        let (prev, cur) = (basis.cols(), next.cols());
        ranks.push(cur);
        if cur == prev {
            let index = ranks.len() - 2;
            return Ok(IndexAnalysis {
                index,
                ranks,
                power_basis: basis,
            });
        }
        basis = next;
    }
}

/// `Ind(A)`: 0 for nonsingular `A`, otherwise the least `k >= 1` with
/// `rk(A^{k+1}) = rk(A^k)`. The zero matrix has index 1.
pub fn index<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<usize> {
    Ok(index_analysis(a, tol)?.index)
}

/// `A = U [[T, S], [0, N]] U^*` with `T` of size `core_rank`.
#[derive(Debug, Clone)]
pub struct CanonicalForm<T: Real = f64> {
    pub u: ComplexMatrix<T>,
    pub t: ComplexMatrix<T>,
    pub s: ComplexMatrix<T>,
    pub nil: ComplexMatrix<T>,
    pub core_rank: usize,
    /// Index of the decomposed matrix.
    pub index: usize,
}

impl<T: Real> CanonicalForm<T> {
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    /// First `core_rank` columns of `U`.
    pub fn q(&self) -> ComplexMatrix<T> {
        self.u.select_columns(0, self.core_rank)
    }

    /// Remaining columns of `U`.
    pub fn q_perp(&self) -> ComplexMatrix<T> {
        self.u.select_columns(self.core_rank, self.n() - self.core_rank)
    }

    fn embed(&self, t: &ComplexMatrix<T>, s: &ComplexMatrix<T>, n: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let lower = ComplexMatrix::zeros(n.rows(), t.cols());
        ComplexMatrix::from_blocks(&[vec![t, s], vec![&lower, n]]).similarity(&self.u)
    }

    /// `U [[T, S], [0, N]] U^*`.
    pub fn reassemble(&self) -> ComplexMatrix<T> {
        self.embed(&self.t, &self.s, &self.nil)
    }

    /// `U [[T, S], [0, 0]] U^*`.
    pub fn core_part(&self) -> ComplexMatrix<T> {
        self.embed(
            &self.t,
            &self.s,
            &ComplexMatrix::zeros(self.nil.rows(), self.nil.cols()),
        )
    }

    /// `U [[0, 0], [0, N]] U^*`.
    pub fn nilpotent_part(&self) -> ComplexMatrix<T> {
        self.embed(
            &ComplexMatrix::zeros(self.t.rows(), self.t.cols()),
            &ComplexMatrix::zeros(self.s.rows(), self.s.cols()),
            &self.nil,
        )
    }

    /// `U [[X, 0], [0, 0]] U^*` for an `r x r` block `X`.
    pub fn lift_core_block(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let m = self.n() - self.core_rank;
        self.embed(x, &ComplexMatrix::zeros(self.core_rank, m), &ComplexMatrix::zeros(m, m))
    }

    /// Whether `sigma_min(T)` clears the rank cutoff relative to `reference`.
    pub fn t_is_nonsingular(&self, tol: &ToleranceContext<T>, reference: T) -> bool {
        if self.core_rank == 0 {
            return true;
        }
        let s = svd(&self.t);
        s.sigma.last().copied().unwrap_or_else(T::zero) > tol.rank_cutoff(reference)
    }

    /// Residuals of the structural invariants against the source matrix.
    pub fn check(&self, a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Residuals<T> {
        let n = self.n();
        let norm_a = a.norm_fro();
        let mut r = Residuals::new();
        r.insert(
            "unitary",
            tol.residual(self.u.orthonormality_defect(), T::of_usize(n).sqrt()),
        );
        r.insert("reassembly", tol.residual((a - &self.reassemble()).norm_fro(), norm_a));
        let m = self.nil.rows();
        let nil_pow = self.nil.pow(m);
        r.insert("nil_nilpotent", tol.residual(nil_pow.norm_fro(), norm_a.powi(m as i32)));
        r
    }
}

/// Unitary core form `A = U [[T, S], [0, 0]] U^*` with `R(U[:, ..r]) = R(A)`.
///
/// `T` is nonsingular exactly when `Ind(A) <= 1`; the `nil` block is the
/// zero `(n-r) x (n-r)` matrix.
pub fn core_form<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<CanonicalForm<T>> {
    let n = a.require_square()?;
    let q = range_basis(a, tol);
    let r = q.cols();
    let u = unitary_complete(&q)?;
    let qp = u.select_columns(r, n - r);
    let aq = a.matmul(&q);
    Ok(CanonicalForm {
        t: q.adjoint_mul(&aq),
        s: q.adjoint_mul(&a.matmul(&qp)),
        nil: ComplexMatrix::zeros(n - r, n - r),
        core_rank: r,
        index: index(a, tol)?,
        u,
    })
}

/// `A = U [[T, S], [0, N]] U^*` with the first `r` columns of `U` spanning
/// `R(A^k)`, `T` nonsingular and `N` nilpotent.
///
/// The lower-left block vanishes because `R(A^k)` is `A`-invariant; if it
/// does not, the rank/index decision upstream was unreliable and
/// `ResidualTooLarge` is returned.
pub fn canonical_form<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<CanonicalForm<T>> {
    let n = a.require_square()?;
    let analysis = index_analysis(a, tol)?;
    let q = analysis.power_basis;
    let r = q.cols();
    let u = unitary_complete(&q)?;
    let qp = u.select_columns(r, n - r);
    let aq = a.matmul(&q);
    let aqp = a.matmul(&qp);
    let lower_left = qp.adjoint_mul(&aq);
    let lower_norm = lower_left.norm_fro();
    let bound = tol.bound(a.norm_fro());
    if lower_norm.is_nan() || lower_norm > bound {
        return Err(Error::ResidualTooLarge {
            what: "lower-left block of canonical form",
            residual: lower_norm.as_f64(),
            bound: bound.as_f64(),
        });
    }
    Ok(CanonicalForm {
        t: q.adjoint_mul(&aq),
        s: q.adjoint_mul(&aqp),
        nil: qp.adjoint_mul(&aqp),
        core_rank: r,
        index: analysis.index,
        u,
    })
}

/// `A = A1 + A2` with `A1` core-invertible, `A2` nilpotent and
/// `A1^* A2 = A2 A1 = 0`.
#[derive(Debug, Clone)]
pub struct CoreEPParts<T: Real = f64> {
    pub a1: ComplexMatrix<T>,
    pub a2: ComplexMatrix<T>,
    pub index: usize,
}

impl<T: Real> CoreEPParts<T> {
    /// Residuals of the three defining conditions plus exact reconstruction.
    /// The index-one condition on `a1` is a rank identity; see
    /// [`CoreEPParts::a1_ranks`].
    pub fn check(&self, a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Residuals<T> {
        let norm_a = a.norm_fro();
        // for a nonsingular matrix the nilpotent part must vanish outright
        let p = self.index.max(1);
        let mut r = Residuals::new();
        r.insert(
            "reconstruction",
            tol.residual((a - &(&self.a1 + &self.a2)).norm_fro(), norm_a),
        );
        r.insert(
            "a2_pow_k",
            tol.residual(self.a2.pow(p).norm_fro(), norm_a.powi(p as i32)),
        );
        r.insert(
            "a1_adj_a2",
            tol.residual(self.a1.adjoint_mul(&self.a2).norm_fro(), norm_a * norm_a),
        );
        r.insert(
            "a2_a1",
            tol.residual(self.a2.matmul(&self.a1).norm_fro(), norm_a * norm_a),
        );
        r
    }

    /// `(rk(a1^2), rk(a1))`, both judged against `reference`.
    pub fn a1_ranks(&self, tol: &ToleranceContext<T>, reference: T) -> (usize, usize) {
        use crate::kernel::rank_with_reference;
        (
            rank_with_reference(&self.a1.matmul(&self.a1), tol, reference * reference),
            rank_with_reference(&self.a1, tol, reference),
        )
    }
}

/// Core-EP decomposition with `A1 = P A`, `P` the orthogonal projector onto
/// `R(A^k)`, and `A2 = A - A1`.
pub fn core_ep_decompose<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<CoreEPParts<T>> {
    a.require_square()?;
    let analysis = index_analysis(a, tol)?;
    let q = &analysis.power_basis;
    let a1 = q.matmul(&q.adjoint_mul(a));
    let a2 = a - &a1;
    Ok(CoreEPParts {
        a1,
        a2,
        index: analysis.index,
    })
}

/// `A1 = A^k (A^k)^† A` evaluated from a normalized power, with the
/// pseudoinverse truncated at `rk(A^k)`. Independent of the projector
/// route used by [`core_ep_decompose`] apart from the rank.
pub fn core_ep_part_via_powers<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<ComplexMatrix<T>> {
    let n = a.require_square()?;
    let analysis = index_analysis(a, tol)?;
    let r = analysis.core_rank();
    let power = scaled_power_log(a, analysis.index)?;
    if r == 0 || power.is_zero() {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let m = &power.matrix;
    Ok(m.matmul(&pinv_of_rank(m, r)).matmul(a))
}

/// Orthogonal projector onto `R(A^k)` computed from the normalized power.
pub fn power_range_projector<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<ComplexMatrix<T>> {
    let n = a.require_square()?;
    let analysis = index_analysis(a, tol)?;
    let power = scaled_power_log(a, analysis.index)?;
    if analysis.core_rank() == 0 || power.is_zero() {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    Ok(projector(&range_basis_of_rank(&power.matrix, analysis.core_rank())))
}

/// `A = C + N` with `C` group-invertible, `N` nilpotent, `CN = NC = 0`.
#[derive(Debug, Clone)]
pub struct CoreNilpotentParts<T: Real = f64> {
    pub core: ComplexMatrix<T>,
    pub nil: ComplexMatrix<T>,
    pub index: usize,
}

impl<T: Real> CoreNilpotentParts<T> {
    pub fn check(&self, a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Residuals<T> {
        let norm_a = a.norm_fro();
        // for a nonsingular matrix the nilpotent part must vanish outright
        let p = self.index.max(1);
        let mut r = Residuals::new();
        r.insert(
            "reconstruction",
            tol.residual((a - &(&self.core + &self.nil)).norm_fro(), norm_a),
        );
        r.insert(
            "nil_pow_k",
            tol.residual(self.nil.pow(p).norm_fro(), norm_a.powi(p as i32)),
        );
        r.insert(
            "core_nil",
            tol.residual(self.core.matmul(&self.nil).norm_fro(), norm_a * norm_a),
        );
        r.insert(
            "nil_core",
            tol.residual(self.nil.matmul(&self.core).norm_fro(), norm_a * norm_a),
        );
        r
    }
}

/// Core-nilpotent decomposition with `C = A A^D A`.
pub fn core_nilpotent_decompose<T: Real>(
    a: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<CoreNilpotentParts<T>> {
    a.require_square()?;
    let drazin = inverses::drazin(a, tol)?;
    let core = a.matmul(&drazin.value).matmul(a);
    let nil = a - &core;
    Ok(CoreNilpotentParts {
        core,
        nil,
        index: drazin.index,
    })
}

/// `rk(A^k)` with `k = Ind(A)`: the size of the nonsingular block.
pub fn core_rank<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<usize> {
    Ok(index_analysis(a, tol)?.core_rank())
}
