//! Moore-Penrose, Drazin, group, core and core-EP inverses.
//!
//! Each inverse is produced from a block (canonical) form and checked
//! against its defining equations; Drazin, core and core-EP additionally
//! evaluate an independent closed-form route and require agreement.

use std::fmt;

use crate::decomp::{canonical_form, core_form, index, index_analysis, CanonicalForm};
use crate::error::{Error, Operand, Result};
use crate::kernel::{pinv_from, projector, range_basis, scaled_power_log};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::svd::svd;
use crate::tolerance::{Residual, Residuals, ToleranceContext};

/// Route agreement is judged at this multiple of the residual tolerance.
pub const ROUTE_AGREEMENT_FACTOR: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Block / singular-value form.
    Canonical,
    /// Closed-form product of powers and a pseudoinverse.
    Formula,
    /// Cline's representation `A^k (A^{2k+1})^† A^k`.
    Cline,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Canonical => "canonical",
            Route::Formula => "formula",
            Route::Cline => "cline",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseKind {
    MoorePenrose,
    Drazin,
    Group,
    Core,
    CoreEp,
}

impl InverseKind {
    pub const ALL: [InverseKind; 5] = [
        InverseKind::MoorePenrose,
        InverseKind::Drazin,
        InverseKind::Group,
        InverseKind::Core,
        InverseKind::CoreEp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InverseKind::MoorePenrose => "mp",
            InverseKind::Drazin => "drazin",
            InverseKind::Group => "group",
            InverseKind::Core => "core",
            InverseKind::CoreEp => "coreep",
        }
    }

    pub fn compute<T: Real>(&self, a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<InverseResult<T>> {
        match self {
            InverseKind::MoorePenrose => moore_penrose(a, tol),
            InverseKind::Drazin => drazin(a, tol),
            InverseKind::Group => group(a, tol),
            InverseKind::Core => core(a, tol),
            InverseKind::CoreEp => core_ep(a, tol),
        }
    }
}

impl std::str::FromStr for InverseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        InverseKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown inverse '{s}'"))
    }
}

/// A generalized inverse together with the residuals of its defining
/// equations. Only constructed when every residual is within tolerance.
#[derive(Debug, Clone)]
pub struct InverseResult<T: Real = f64> {
    pub value: ComplexMatrix<T>,
    pub route: Route,
    pub residuals: Residuals<T>,
    /// Index of the input (0 for rectangular input to `moore_penrose`).
    pub index: usize,
    /// Condition number of the nonsingular block that was inverted.
    pub condition: Option<T>,
    pub warnings: Vec<String>,
}

fn finish<T: Real>(
    mut res: InverseResult<T>,
    tol: &ToleranceContext<T>,
    what: &'static str,
) -> Result<InverseResult<T>> {
    if let Some(cond) = res.condition {
        if cond * tol.rtol() > T::one() {
            res.warnings.push(format!(
                "{what}: condition number {:.3e} of the inverted block exceeds 1/rtol",
                cond.as_f64()
            ));
        }
    }
    let (agree, defining): (Vec<_>, Vec<_>) = res.residuals.iter().partition(|(k, _)| *k == "route_agreement");
    if let Some((name, r)) = defining.into_iter().find(|(_, r)| !r.passes()) {
        return Err(Error::ResidualTooLarge {
            what: name,
            residual: r.value.as_f64(),
            bound: r.bound.as_f64(),
        });
    }
    if let Some((_, r)) = agree.into_iter().find(|(_, r)| !r.passes()) {
        return Err(Error::RouteDisagreement {
            what,
            difference: r.value.as_f64(),
            bound: r.bound.as_f64(),
        });
    }
    Ok(res)
}

fn agreement<T: Real>(x: &ComplexMatrix<T>, other: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Residual<T> {
    tol.widened(T::of(ROUTE_AGREEMENT_FACTOR))
        .residual((x - other).norm_fro(), x.norm_fro().max(other.norm_fro()))
}

/// `||A X A - A||`-style residual with scale equal to the product of the
/// factor norms plus the norm of the target.
fn product_residual<T: Real>(
    tol: &ToleranceContext<T>,
    lhs: &ComplexMatrix<T>,
    rhs: &ComplexMatrix<T>,
    factor_norms: &[T],
) -> Residual<T> {
    let scale = factor_norms.iter().fold(T::one(), |acc, &x| acc * x) + rhs.norm_fro();
    tol.residual((lhs - rhs).norm_fro(), scale)
}

/// Moore-Penrose inverse by thresholded singular-value inversion.
pub fn moore_penrose<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<InverseResult<T>> {
    let s = svd(a);
    let r = s.count_above(tol.rank_cutoff(s.sigma_max()));
    let x = pinv_from(&s, a.shape(), r);
    let (na, nx) = (a.norm_fro(), x.norm_fro());
    let ax = a.matmul(&x);
    let xa = x.matmul(a);
    let mut res = Residuals::new();
    res.insert("penrose_1", product_residual(tol, &ax.matmul(a), a, &[na, nx, na]));
    res.insert("penrose_2", product_residual(tol, &xa.matmul(&x), &x, &[nx, na, nx]));
    res.insert("penrose_3", tol.residual(ax.hermitian_defect(), na * nx));
    res.insert("penrose_4", tol.residual(xa.hermitian_defect(), na * nx));
    let condition = (r > 0).then(|| s.sigma[0] / s.sigma[r - 1]);
    finish(
        InverseResult {
            value: x,
            route: Route::Canonical,
            residuals: res,
            index: if a.is_square() { index(a, tol)? } else { 0 },
            condition,
            warnings: Vec::new(),
        },
        tol,
        "moore_penrose",
    )
}

/// Inverse of the core block with its condition number.
fn invert_core_block<T: Real>(cf: &CanonicalForm<T>) -> Result<(ComplexMatrix<T>, Option<T>)> {
    if cf.core_rank == 0 {
        return Ok((ComplexMatrix::zeros(0, 0), None));
    }
    let tinv = cf.t.inverse()?;
    Ok((tinv, Some(svd(&cf.t).condition())))
}

/// A closed-form route's value and the condition number `sigma_1 / sigma_r`
/// of the matrix it pseudo-inverts.
///
/// The route's relative error is roughly `eps * condition`, so it is only
/// informative as a cross-check while that stays below the tolerance.
#[derive(Debug, Clone)]
pub struct RouteValue<T: Real = f64> {
    pub value: ComplexMatrix<T>,
    pub condition: T,
}

impl<T: Real> RouteValue<T> {
    /// Whether the route is accurate enough to be compared at `tol`.
    pub fn resolvable(&self, tol: &ToleranceContext<T>) -> bool {
        self.condition * T::epsilon() <= tol.rtol()
    }
}

/// `A^k G^† A^k`, or `A^k G^† (A^k)^*` when `adjoint_right` is set, from
/// normalized powers. `inner` receives the normalized `A^k` and returns a
/// normalized `G` with its log-scale; the pseudoinverse is truncated at
/// rank `r`.
fn sandwich<T: Real>(
    a: &ComplexMatrix<T>,
    k: usize,
    r: usize,
    adjoint_right: bool,
    inner: impl FnOnce(&ComplexMatrix<T>) -> Result<(ComplexMatrix<T>, T)>,
) -> Result<RouteValue<T>> {
    let n = a.rows();
    let pk = scaled_power_log(a, k)?;
    if r == 0 || pk.is_zero() {
        return Ok(RouteValue {
            value: ComplexMatrix::zeros(n, n),
            condition: T::one(),
        });
    }
    let (g, log_g) = inner(&pk.matrix)?;
    let gs = svd(&g);
    let ginv = pinv_from(&gs, g.shape(), r);
    let c = (pk.log_scale + pk.log_scale - log_g).exp();
    let right = if adjoint_right {
        pk.matrix.adjoint()
    } else {
        pk.matrix.clone()
    };
    Ok(RouteValue {
        value: pk.matrix.matmul(&ginv).matmul(&right).scale(c),
        condition: gs.sigma_max() / gs.sigma[r - 1],
    })
}

/// Cline's representation `A^k (A^{2k+1})^† A^k` of the Drazin inverse.
pub fn drazin_cline<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<RouteValue<T>> {
    a.require_square()?;
    let an = index_analysis(a, tol)?;
    let k = an.index;
    sandwich(a, k, an.core_rank(), false, |_| {
        let p = scaled_power_log(a, 2 * k + 1)?;
        Ok((p.matrix, p.log_scale))
    })
}

/// `A (A^* A^2)^† A^*`; requires index at most one.
pub fn core_formula<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<RouteValue<T>> {
    a.require_square()?;
    require_index_le_one(a, tol)?;
    let r = crate::kernel::rank(a, tol);
    sandwich(a, 1, r, true, |m| {
        let p = scaled_power_log(a, 2)?;
        Ok((
            m.adjoint_mul(&p.matrix),
            scaled_power_log(a, 1)?.log_scale + p.log_scale,
        ))
    })
}

/// `A^k ((A^*)^k A^{k+1})^† (A^k)^*` with the Moore-Penrose inverse as the
/// inner inverse.
pub fn core_ep_formula<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<RouteValue<T>> {
    a.require_square()?;
    let an = index_analysis(a, tol)?;
    let k = an.index;
    sandwich(a, k, an.core_rank(), true, |mk| {
        let p = scaled_power_log(a, k + 1)?;
        let pk_log = scaled_power_log(a, k)?.log_scale;
        Ok((mk.adjoint_mul(&p.matrix), pk_log + p.log_scale))
    })
}

/// Records agreement with a cross-check route, or a warning when the route
/// cannot be resolved at this tolerance.
fn cross_check<T: Real>(
    res: &mut Residuals<T>,
    warnings: &mut Vec<String>,
    x: &ComplexMatrix<T>,
    route: Result<RouteValue<T>>,
    tol: &ToleranceContext<T>,
) -> Result<()> {
    let route = route?;
    if route.resolvable(tol) {
        res.insert("route_agreement", agreement(x, &route.value, tol));
    } else {
        warnings.push(format!(
            "route agreement not checked: the cross-check route inverts a matrix of condition {:.3e}, beyond working precision at rtol {:.1e}",
            route.condition.as_f64(),
            tol.rtol().as_f64()
        ));
    }
    Ok(())
}

/// Drazin inverse.
///
/// Primary route: `U [[T^-1, Z], [0, 0]] U^*` with
/// `Z = sum_{i<k} T^{-(i+2)} S N^i`. Cross-check: `A^k (A^{2k+1})^† A^k`.
pub fn drazin<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<InverseResult<T>> {
    let n = a.require_square()?;
    let cf = canonical_form(a, tol)?;
    let (k, r) = (cf.index, cf.core_rank);
    let (tinv, condition) = invert_core_block(&cf)?;

    let mut z = ComplexMatrix::zeros(r, n - r);
    if r > 0 {
        let mut tpow = tinv.matmul(&tinv);
        let mut sn = cf.s.clone();
        for _ in 0..k {
            z = &z + &tpow.matmul(&sn);
            tpow = tpow.matmul(&tinv);
            sn = sn.matmul(&cf.nil);
        }
    }
    let zeros_lower = ComplexMatrix::zeros(n - r, r);
    let zeros_nn = ComplexMatrix::zeros(n - r, n - r);
    let x = ComplexMatrix::from_blocks(&[vec![&tinv, &z], vec![&zeros_lower, &zeros_nn]]).similarity(&cf.u);

    let pk = scaled_power_log(a, k)?;
    let (na, nx, nm) = (a.norm_fro(), x.norm_fro(), pk.matrix.norm_fro());
    let ax = a.matmul(&x);
    let mut res = Residuals::new();
    res.insert(
        "drazin_1k",
        product_residual(tol, &ax.matmul(&pk.matrix), &pk.matrix, &[na, nx, nm]),
    );
    res.insert("drazin_2", product_residual(tol, &x.matmul(&ax), &x, &[nx, na, nx]));
    res.insert("drazin_5", tol.residual((&ax - &x.matmul(a)).norm_fro(), na * nx));
    let mut warnings = Vec::new();
    cross_check(&mut res, &mut warnings, &x, drazin_cline(a, tol), tol)?;
    finish(
        InverseResult {
            value: x,
            route: Route::Canonical,
            residuals: res,
            index: k,
            condition,
            warnings,
        },
        tol,
        "drazin",
    )
}

fn require_index_le_one<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<usize> {
    let k = index(a, tol)?;
    if k > 1 {
        Err(Error::IndexTooLarge {
            operand: Operand::A,
            index: k,
        })
    } else {
        Ok(k)
    }
}

/// Group inverse: the Drazin inverse of a matrix of index at most one.
pub fn group<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<InverseResult<T>> {
    a.require_square()?;
    require_index_le_one(a, tol)?;
    let mut res = drazin(a, tol)?;
    let (na, nx) = (a.norm_fro(), res.value.norm_fro());
    let axa = a.matmul(&res.value).matmul(a);
    res.residuals
        .insert("group_1", product_residual(tol, &axa, a, &[na, nx, na]));
    finish(res, tol, "group")
}

/// Core inverse `U [[T^-1, 0], [0, 0]] U^*` from the core form; requires
/// index at most one. Cross-check: `A (A^* A^2)^† A^*`.
pub fn core<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<InverseResult<T>> {
    a.require_square()?;
    let k = require_index_le_one(a, tol)?;
    let cf = core_form(a, tol)?;
    let (tinv, condition) = invert_core_block(&cf)?;
    let x = cf.lift_core_block(&tinv);

    let mp = moore_penrose(a, tol)?.value;
    let aa_dag = a.matmul(&mp);
    let q = range_basis(a, tol);
    let outside = &x - &projector(&q).matmul(&x);
    let (na, nx) = (a.norm_fro(), x.norm_fro());
    let mut res = Residuals::new();
    res.insert(
        "core_ax_eq_aadag",
        product_residual(tol, &a.matmul(&x), &aa_dag, &[na, nx]),
    );
    res.insert("core_range", tol.residual(outside.norm_fro(), nx));
    let mut warnings = Vec::new();
    cross_check(&mut res, &mut warnings, &x, core_formula(a, tol), tol)?;
    finish(
        InverseResult {
            value: x,
            route: Route::Canonical,
            residuals: res,
            index: k,
            condition,
            warnings,
        },
        tol,
        "core",
    )
}

/// Core-EP inverse `U [[T^-1, 0], [0, 0]] U^*` from the canonical form.
/// Cross-check: `A^k ((A^*)^k A^{k+1})^† (A^k)^*`.
pub fn core_ep<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<InverseResult<T>> {
    a.require_square()?;
    let cf = canonical_form(a, tol)?;
    let k = cf.index;
    let (tinv, condition) = invert_core_block(&cf)?;
    let x = cf.lift_core_block(&tinv);

    let pk = scaled_power_log(a, k)?;
    let mk = &pk.matrix;
    let (na, nx, nm) = (a.norm_fro(), x.norm_fro(), mk.norm_fro());
    let ax = a.matmul(&x);
    let outside = &x - &projector(&cf.q()).matmul(&x);
    let mut res = Residuals::new();
    res.insert(
        "coreep_1k",
        product_residual(tol, &x.matmul(a).matmul(mk), mk, &[nx, na, nm]),
    );
    res.insert("coreep_2", product_residual(tol, &x.matmul(&ax), &x, &[nx, na, nx]));
    res.insert("coreep_3", tol.residual(ax.hermitian_defect(), na * nx));
    res.insert("coreep_range", tol.residual(outside.norm_fro(), nx));
    let mut warnings = Vec::new();
    cross_check(&mut res, &mut warnings, &x, core_ep_formula(a, tol), tol)?;
    finish(
        InverseResult {
            value: x,
            route: Route::Canonical,
            residuals: res,
            index: k,
            condition,
            warnings,
        },
        tol,
        "core_ep",
    )
}

/// `A A^{core-EP}`: the orthogonal projector onto `R(A^k)`.
pub fn core_ep_projector<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceContext<T>) -> Result<ComplexMatrix<T>> {
    let x = core_ep(a, tol)?;
    Ok(a.matmul(&x.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::approx_eq;

    fn m3(rows: &[[f64; 3]]) -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(rows)
    }

    fn example_a() -> ComplexMatrix<f64> {
        m3(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    }

    fn example_b() -> ComplexMatrix<f64> {
        m3(&[[1.0, 2.0, 3.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    }

    fn e11() -> ComplexMatrix<f64> {
        m3(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    }

    fn close(x: &ComplexMatrix<f64>, y: &ComplexMatrix<f64>, eps: f64) -> bool {
        (x - y).norm_fro() <= eps
    }

    fn shift3() -> ComplexMatrix<f64> {
        m3(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    }

    fn nonsingular() -> ComplexMatrix<f64> {
        m3(&[[2.0, 1.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 3.0]])
    }

    #[test]
    fn moore_penrose_examples() {
        let tol = ToleranceContext::default();
        let id = ComplexMatrix::<f64>::identity(3);
        assert!(close(&moore_penrose(&id, &tol).unwrap().value, &id, 1e-15));
        let x = moore_penrose(&example_a(), &tol).unwrap();
        assert!(close(&x.value, &example_a().adjoint().scale(1.0 / 14.0), 1e-15));
        assert_eq!(x.residuals.len(), 4);
        let z = moore_penrose(&ComplexMatrix::<f64>::zeros(3, 3), &tol).unwrap();
        assert_eq!(z.value, ComplexMatrix::zeros(3, 3));
        let rect = ComplexMatrix::<f64>::from_real_rows(&[[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]);
        assert_eq!(moore_penrose(&rect, &tol).unwrap().value.shape(), (3, 2));
    }

    #[test]
    fn drazin_examples() {
        let tol = ToleranceContext::default();
        let ns = nonsingular();
        let x = drazin(&ns, &tol).unwrap();
        assert!(close(&x.value, &ns.inverse().unwrap(), 1e-14));
        let bd = drazin(&example_b(), &tol).unwrap();
        assert!(close(
            &bd.value,
            &m3(&[[1.0, 2.0, 5.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            1e-12
        ));
        assert_eq!(bd.index, 2);
        let nil = drazin(&shift3(), &tol).unwrap();
        assert_eq!(nil.value, ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn group_examples() {
        let tol = ToleranceContext::default();
        let id = ComplexMatrix::<f64>::identity(3);
        assert!(close(&group(&id, &tol).unwrap().value, &id, 1e-15));
        assert!(close(&group(&example_a(), &tol).unwrap().value, &example_a(), 1e-13));
        assert_eq!(
            group(&example_b(), &tol).unwrap_err(),
            Error::IndexTooLarge {
                operand: Operand::A,
                index: 2
            }
        );
    }

    #[test]
    fn core_examples() {
        let tol = ToleranceContext::default();
        assert!(close(&core(&example_a(), &tol).unwrap().value, &e11(), 1e-14));
        let id = ComplexMatrix::<f64>::identity(3);
        assert!(close(&core(&id, &tol).unwrap().value, &id, 1e-15));
        let d = ComplexMatrix::<f64>::from_real_rows(&[[2.0, 0.0], [0.0, 0.0]]);
        let expected = ComplexMatrix::from_real_rows(&[[0.5, 0.0], [0.0, 0.0]]);
        assert!(close(&core(&d, &tol).unwrap().value, &expected, 1e-15));
        assert!(matches!(core(&example_b(), &tol), Err(Error::IndexTooLarge { .. })));
    }

    #[test]
    fn core_ep_examples() {
        let tol = ToleranceContext::default();
        let x = core_ep(&example_b(), &tol).unwrap();
        assert!(close(&x.value, &e11(), 1e-14));
        for a in [example_a(), nonsingular(), ComplexMatrix::identity(3)] {
            let lhs = core_ep(&a, &tol).unwrap().value;
            let rhs = core(&a, &tol).unwrap().value;
            assert!(approx_eq(&lhs, &rhs, &tol).unwrap());
        }
        assert_eq!(core_ep(&shift3(), &tol).unwrap().value, ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn core_ep_projector_examples() {
        let tol = ToleranceContext::default();
        assert!(close(&core_ep_projector(&example_b(), &tol).unwrap(), &e11(), 1e-14));
        let id = ComplexMatrix::<f64>::identity(3);
        assert!(close(&core_ep_projector(&id, &tol).unwrap(), &id, 1e-15));
        assert_eq!(core_ep_projector(&shift3(), &tol).unwrap(), ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("coreep".parse::<InverseKind>().unwrap(), InverseKind::CoreEp);
        assert!("star".parse::<InverseKind>().is_err());
    }
}
