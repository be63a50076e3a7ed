//! Decision procedures for the minus, sharp, core, Drazin, core-EP, C-N
//! and core-minus relations.
//!
//! Rank identities are compared as integers after tolerance-based rank
//! extraction. Residual identities use Frobenius norms scaled by
//! `max(||A||, ||B||)` times the norm of the inverse involved. Where a
//! second characterization exists it is evaluated independently and kept
//! in [`OrderVerdict::cross_check`].

use std::fmt;
use std::str::FromStr;

use crate::decomp::{core_ep_decompose, core_nilpotent_decompose, index};
use crate::error::{Error, Operand, Result};
use crate::inverses;
use crate::kernel::{rank_with_reference, scaled_power_log};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::svd::svd;
use crate::tolerance::{Residuals, ToleranceContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Minus,
    Sharp,
    Core,
    Drazin,
    CoreEp,
    Cn,
    CoreMinus,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::Minus,
        Relation::Sharp,
        Relation::Core,
        Relation::Drazin,
        Relation::CoreEp,
        Relation::Cn,
        Relation::CoreMinus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Minus => "minus",
            Relation::Sharp => "sharp",
            Relation::Core => "core",
            Relation::Drazin => "drazin",
            Relation::CoreEp => "coreep",
            Relation::Cn => "cn",
            Relation::CoreMinus => "coreminus",
        }
    }

    /// Whether both arguments must have index at most one.
    pub fn needs_index_le_one(&self) -> bool {
        matches!(self, Relation::Sharp | Relation::Core)
    }

    /// Decides `A <= B` under this relation.
    pub fn evaluate<T: Real>(
        &self,
        a: &ComplexMatrix<T>,
        b: &ComplexMatrix<T>,
        tol: &ToleranceContext<T>,
    ) -> Result<OrderVerdict<T>> {
        match self {
            Relation::Minus => le_minus(a, b, tol),
            Relation::Sharp => le_sharp(a, b, tol),
            Relation::Core => le_core(a, b, tol),
            Relation::Drazin => le_drazin(a, b, tol),
            Relation::CoreEp => le_core_ep(a, b, tol),
            Relation::Cn => le_cn(a, b, tol),
            Relation::CoreMinus => le_core_minus(a, b, tol),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown relation '{s}'"))
    }
}

/// Outcome of an order test.
///
/// `holds` is true iff every entry of `residuals` passes and the rank
/// identity (when `rank_witness` is present) holds exactly.
#[derive(Debug, Clone)]
pub struct OrderVerdict<T: Real = f64> {
    pub holds: bool,
    pub relation: Relation,
    pub residuals: Residuals<T>,
    /// `(rk(A), rk(B), rk(B - A))` of the minus-order component.
    pub rank_witness: Option<(usize, usize, usize)>,
    /// Residuals of the independent characterization, when one exists.
    pub cross_check: Residuals<T>,
    pub diagnostics: Vec<String>,
}

impl<T: Real> OrderVerdict<T> {
    fn new(relation: Relation) -> Self {
        Self {
            holds: false,
            relation,
            residuals: Residuals::new(),
            rank_witness: None,
            cross_check: Residuals::new(),
            diagnostics: Vec::new(),
        }
    }
}

fn same_square<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<()> {
    a.require_same_shape(b)?;
    a.require_square()?;
    Ok(())
}

fn spectral_reference<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    svd(a).sigma_max().max(svd(b).sigma_max())
}

fn require_index_le_one<T: Real>(m: &ComplexMatrix<T>, tol: &ToleranceContext<T>, operand: Operand) -> Result<()> {
    let k = index(m, tol)?;
    if k > 1 {
        Err(Error::IndexTooLarge { operand, index: k })
    } else {
        Ok(())
    }
}

/// Minus order with all ranks judged against a shared `reference` scale.
fn minus_with_reference<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
    reference: T,
) -> (bool, (usize, usize, usize)) {
    let ra = rank_with_reference(a, tol, reference);
    let rb = rank_with_reference(b, tol, reference);
    let rd = rank_with_reference(&(b - a), tol, reference);
    (rb >= ra && rb - ra == rd, (ra, rb, rd))
}

/// `A <=- B` iff `rk(B) - rk(A) = rk(B - A)`.
pub fn le_minus<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    a.require_same_shape(b)?;
    let (holds, witness) = minus_with_reference(a, b, tol, spectral_reference(a, b));
    let mut v = OrderVerdict::new(Relation::Minus);
    v.holds = holds;
    v.rank_witness = Some(witness);
    Ok(v)
}

/// Inserts `||X A - X B||` and `||A X - B X||` under the given names.
fn one_sided_pair<T: Real>(
    res: &mut Residuals<T>,
    names: (&'static str, &'static str),
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    x: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) {
    let scale = x.norm_fro() * a.norm_fro().max(b.norm_fro());
    let diff = a - b;
    res.insert(names.0, tol.residual(x.matmul(&diff).norm_fro(), scale));
    res.insert(names.1, tol.residual(diff.matmul(x).norm_fro(), scale));
}

/// `A <=# B` iff `A# A = A# B` and `A A# = B A#`; both must have index <= 1.
pub fn le_sharp<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    same_square(a, b)?;
    require_index_le_one(a, tol, Operand::A)?;
    require_index_le_one(b, tol, Operand::B)?;
    let x = inverses::group(a, tol)?.value;
    let mut v = OrderVerdict::new(Relation::Sharp);
    one_sided_pair(&mut v.residuals, ("sharp_left", "sharp_right"), a, b, &x, tol);
    v.holds = v.residuals.all_pass();
    Ok(v)
}

/// Core order `A^{core} A = A^{core} B`, `A A^{core} = B A^{core}`.
///
/// Cross-checked against `A† A = A† B`, `A^2 = B A`; disagreement is
/// reported as a diagnostic, not an error.
pub fn le_core<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    same_square(a, b)?;
    require_index_le_one(a, tol, Operand::A)?;
    require_index_le_one(b, tol, Operand::B)?;
    let x = inverses::core(a, tol)?.value;
    let mut v = OrderVerdict::new(Relation::Core);
    one_sided_pair(&mut v.residuals, ("core_left", "core_right"), a, b, &x, tol);
    v.holds = v.residuals.all_pass();

    let dag = inverses::moore_penrose(a, tol)?.value;
    let big = a.norm_fro().max(b.norm_fro());
    let diff = a - b;
    v.cross_check.insert(
        "core_alt_mp",
        tol.residual(dag.matmul(&diff).norm_fro(), dag.norm_fro() * big),
    );
    v.cross_check.insert(
        "core_alt_square",
        tol.residual(diff.matmul(a).norm_fro(), a.norm_fro() * big),
    );
    if v.cross_check.all_pass() != v.holds {
        v.diagnostics.push(format!(
            "core: defining conditions give {} but A†A = A†B, A² = BA gives {}",
            v.holds,
            v.cross_check.all_pass()
        ));
    }
    Ok(v)
}

/// Drazin pre-order `A^k B = B A^k = A^{k+1}` with `k = Ind(A)`.
pub fn le_drazin<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    same_square(a, b)?;
    let k = index(a, tol)?;
    let m = scaled_power_log(a, k)?.matrix;
    let scale = m.norm_fro() * a.norm_fro().max(b.norm_fro());
    let diff = b - a;
    let mut v = OrderVerdict::new(Relation::Drazin);
    v.residuals
        .insert("drazin_left", tol.residual(m.matmul(&diff).norm_fro(), scale));
    v.residuals
        .insert("drazin_right", tol.residual(diff.matmul(&m).norm_fro(), scale));
    v.holds = v.residuals.all_pass();
    Ok(v)
}

/// Core-EP pre-order `X A = X B`, `A X = B X` with `X` the core-EP inverse
/// of `A`, cross-checked against `A^{k+1} = B A^k`, `A^* A^k = B^* A^k`.
/// The two verdicts must agree.
pub fn le_core_ep<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    same_square(a, b)?;
    let inv = inverses::core_ep(a, tol)?;
    let mut v = OrderVerdict::new(Relation::CoreEp);
    one_sided_pair(&mut v.residuals, ("coreep_left", "coreep_right"), a, b, &inv.value, tol);
    v.holds = v.residuals.all_pass();

    let m = scaled_power_log(a, inv.index)?.matrix;
    let scale = m.norm_fro() * a.norm_fro().max(b.norm_fro());
    let diff = a - b;
    v.cross_check
        .insert("coreep_alt_power", tol.residual(diff.matmul(&m).norm_fro(), scale));
    v.cross_check.insert(
        "coreep_alt_adjoint",
        tol.residual(diff.adjoint_mul(&m).norm_fro(), scale),
    );
    if v.cross_check.all_pass() != v.holds {
        return Err(Error::CharacterizationDisagreement {
            relation: "coreep",
            detail: format!(
                "X A = X B, A X = B X gives {}; A^(k+1) = B A^k, A* A^k = B* A^k gives {}",
                v.holds,
                v.cross_check.all_pass()
            ),
        });
    }
    Ok(v)
}

/// C-N order: sharp order on the cores and minus order on the nilpotent
/// parts of the core-nilpotent decompositions.
pub fn le_cn<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    same_square(a, b)?;
    let da = core_nilpotent_decompose(a, tol)?;
    let db = core_nilpotent_decompose(b, tol)?;
    let sharp = le_sharp(&da.core, &db.core, tol)?;
    let (minus, witness) = minus_with_reference(&da.nil, &db.nil, tol, spectral_reference(a, b));
    let mut v = OrderVerdict::new(Relation::Cn);
    v.residuals = sharp.residuals;
    v.rank_witness = Some(witness);
    v.holds = sharp.holds && minus;
    Ok(v)
}

/// Core-minus partial order: core order on the core-EP parts `A1 <= B1`
/// and minus order on the nilpotent parts `A2 <=- B2`.
///
/// Cross-checked against "core-EP order and
/// `A - A X A <=- B - B Y B`" (`X`, `Y` the core-EP inverses); the two
/// verdicts must agree.
pub fn le_core_minus<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &ToleranceContext<T>,
) -> Result<OrderVerdict<T>> {
    same_square(a, b)?;
    let reference = spectral_reference(a, b);
    let pa = core_ep_decompose(a, tol)?;
    let pb = core_ep_decompose(b, tol)?;
    let core = le_core(&pa.a1, &pb.a1, tol)?;
    let (minus, witness) = minus_with_reference(&pa.a2, &pb.a2, tol, reference);
    let mut v = OrderVerdict::new(Relation::CoreMinus);
    v.residuals = core.residuals;
    v.diagnostics = core.diagnostics;
    v.rank_witness = Some(witness);
    v.holds = v.residuals.all_pass() && minus;

    let cep = le_core_ep(a, b, tol)?;
    let xa = inverses::core_ep(a, tol)?.value;
    let xb = inverses::core_ep(b, tol)?.value;
    let na = a - &a.matmul(&xa).matmul(a);
    let nb = b - &b.matmul(&xb).matmul(b);
    let (alt_minus, alt_witness) = minus_with_reference(&na, &nb, tol, reference);
    v.cross_check = cep.residuals;
    let alt = cep.holds && alt_minus;
    if alt != v.holds {
        return Err(Error::CharacterizationDisagreement {
            relation: "coreminus",
            detail: format!(
                "A1 <=core B1 and A2 <=- B2 gives {} (ranks {:?}); core-EP order with minus order on A - AXA gives {} (ranks {:?})",
                v.holds, witness, alt, alt_witness
            ),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(rows: &[[f64; 3]]) -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(rows)
    }

    fn example_a() -> ComplexMatrix<f64> {
        m3(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    }

    fn example_b() -> ComplexMatrix<f64> {
        m3(&[[1.0, 2.0, 3.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    }

    fn tol() -> ToleranceContext<f64> {
        ToleranceContext::default()
    }

    #[test]
    fn minus_examples() {
        let (a, b) = (example_a(), example_b());
        assert!(le_minus(&b, &b, &tol()).unwrap().holds);
        let v = le_minus(&a, &b, &tol()).unwrap();
        assert!(v.holds);
        assert_eq!(v.rank_witness, Some((1, 2, 1)));
        let e23 = m3(&[[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
        let v = le_minus(&e23, &ComplexMatrix::zeros(3, 3), &tol()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.rank_witness, Some((1, 0, 1)));
        assert!(matches!(
            le_minus(&a, &ComplexMatrix::zeros(2, 2), &tol()),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn sharp_examples() {
        let a = example_a();
        assert!(le_sharp(&a, &a, &tol()).unwrap().holds);
        let d1 = m3(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let d2 = m3(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(le_sharp(&d1, &d2, &tol()).unwrap().holds);
        let a2 = ComplexMatrix::<f64>::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        let b2 = ComplexMatrix::<f64>::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        let v = le_sharp(&a2, &b2, &tol()).unwrap();
        assert!(!v.holds);
        assert!(!v.residuals.get("sharp_left").unwrap().passes());
        assert!(v.residuals.get("sharp_right").unwrap().passes());
        assert_eq!(
            le_sharp(&example_b(), &example_b(), &tol()).unwrap_err(),
            Error::IndexTooLarge {
                operand: Operand::A,
                index: 2
            }
        );
        assert!(matches!(
            le_sharp(&a, &example_b(), &tol()),
            Err(Error::IndexTooLarge {
                operand: Operand::B,
                ..
            })
        ));
    }

    #[test]
    fn core_examples() {
        let a = example_a();
        assert!(le_core(&a, &a, &tol()).unwrap().holds);
        // B = [[T, S], [0, Z]] with Z = diag(1, 0) of index one
        let b = m3(&[[1.0, 2.0, 3.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        let v = le_core(&a, &b, &tol()).unwrap();
        assert!(v.holds && v.cross_check.all_pass() && v.diagnostics.is_empty());
        let a2 = ComplexMatrix::<f64>::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        let b2 = ComplexMatrix::<f64>::from_real_rows(&[[0.0, 0.0], [0.0, 1.0]]);
        let v = le_core(&a2, &b2, &tol()).unwrap();
        assert!(!v.holds && !v.cross_check.all_pass());
    }

    #[test]
    fn drazin_examples() {
        let (a, b) = (example_a(), example_b());
        assert!(le_drazin(&b, &b, &tol()).unwrap().holds);
        assert!(!le_drazin(&a, &b, &tol()).unwrap().holds);
        let z = ComplexMatrix::zeros(3, 3);
        assert!(le_drazin(&z, &b, &tol()).unwrap().holds);
    }

    #[test]
    fn core_ep_examples() {
        let (a, b) = (example_a(), example_b());
        assert!(le_core_ep(&a, &b, &tol()).unwrap().holds);
        assert!(le_core_ep(&b, &a, &tol()).unwrap().holds);
        let id = ComplexMatrix::<f64>::identity(3);
        assert!(!le_core_ep(&id, &b, &tol()).unwrap().holds);
        assert!(le_core_ep(&id, &id, &tol()).unwrap().holds);
    }

    #[test]
    fn cn_examples() {
        let b = example_b();
        assert!(le_cn(&b, &b, &tol()).unwrap().holds);
        let d1 = m3(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let d2 = m3(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(le_cn(&d1, &d2, &tol()).unwrap().holds);
        // nilpotent parts: rank 2 shift against rank 1 shift
        let big = m3(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
        let small = m3(&[[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let v = le_cn(&big, &small, &tol()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.rank_witness, Some((2, 1, 1)));
    }

    #[test]
    fn core_minus_examples() {
        let (a, b) = (example_a(), example_b());
        let v = le_core_minus(&a, &b, &tol()).unwrap();
        assert!(v.holds);
        assert_eq!(v.rank_witness, Some((0, 1, 1)));
        let v = le_core_minus(&b, &a, &tol()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.rank_witness, Some((1, 0, 1)));
        assert!(le_core_minus(&b, &b, &tol()).unwrap().holds);
    }

    #[test]
    fn relation_names_round_trip() {
        for r in Relation::ALL {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
    }
}
