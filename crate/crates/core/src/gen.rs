//! Seeded generators for matrices with prescribed core rank and index, and
//! for pairs and triples standing in a given order relation.
//!
//! Everything is built in `f64` from a ChaCha stream and cast at the end,
//! so a seed gives the same matrix bit-for-bit on every platform and for
//! every caller.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decomp::CanonicalForm;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::orders::Relation;
use crate::scalar::{cx, Real};
use crate::svd::svd;

type M = ComplexMatrix<f64>;

/// Shape parameters for generated instances.
///
/// For pairs and triples the spec describes the largest matrix (`B`, or
/// `C` in a triple): it has core rank `core_rank` and index
/// `nilpotency_index`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub core_rank: usize,
    /// Index of the generated matrix; 0 means nonsingular.
    pub nilpotency_index: usize,
    pub seed: u64,
    /// Upper bound on the condition number of the nonsingular `T` blocks.
    pub conditioning: f64,
}

impl GenSpec {
    pub fn new(n: usize, core_rank: usize, nilpotency_index: usize, seed: u64) -> Self {
        Self {
            n,
            core_rank,
            nilpotency_index,
            seed,
            conditioning: 10.0,
        }
    }

    pub fn with_conditioning(mut self, conditioning: f64) -> Self {
        self.conditioning = conditioning;
        self
    }

    /// Size of the nilpotent block.
    pub fn nil_size(&self) -> usize {
        self.n - self.core_rank.min(self.n)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, r, k) = (self.n, self.core_rank, self.nilpotency_index);
        if n == 0 {
            return Err(Error::InfeasibleSpec("n must be at least 1".into()));
        }
        if r > n {
            return Err(Error::InfeasibleSpec(format!("core rank {r} exceeds n = {n}")));
        }
        if k == 0 && r != n {
            return Err(Error::InfeasibleSpec(format!(
                "index 0 requires a nonsingular matrix, but core rank {r} < n = {n}"
            )));
        }
        if k > 0 && n - r < k {
            return Err(Error::InfeasibleSpec(format!(
                "index {k} needs a nilpotent block of size at least {k}, only {} available",
                n - r
            )));
        }
        if !(self.conditioning.is_finite() && self.conditioning >= 1.0) {
            return Err(Error::InfeasibleSpec(format!(
                "conditioning must be finite and at least 1, got {}",
                self.conditioning
            )));
        }
        Ok(())
    }
}

/// Which side of a relation a generated pair should land on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// How the nilpotent block of `A` relates to that of `B` in C-N and
/// core-minus pairs. Each family satisfies `N1 <=- N2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilFamily {
    Zero,
    Equal,
    /// `N1` keeps only the leading shift block of `N2`.
    Embedded,
}

/// A generated matrix together with the form it was built from.
#[derive(Debug, Clone)]
pub struct Structured<T: Real = f64> {
    pub matrix: ComplexMatrix<T>,
    pub form: CanonicalForm<T>,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> M {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    M::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        cx(re * s, im * s)
    })
}

/// Gram–Schmidt (applied twice) on the columns of `g`; `None` if a column
/// is numerically dependent on the previous ones.
fn orthonormalize(g: &M) -> Option<M> {
    let n = g.rows();
    let mut cols: Vec<Vec<num_complex::Complex<f64>>> = Vec::with_capacity(g.cols());
    for mut v in g.columns() {
        let norm0 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for q in &cols {
                let d: num_complex::Complex<f64> = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= d * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-8 * norm0 || norm == 0.0 {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    Some(M::from_columns(n, &cols))
}

fn unitary(rng: &mut ChaCha8Rng, n: usize) -> M {
    loop {
        if let Some(q) = orthonormalize(&gaussian(rng, n, n)) {
            return q;
        }
    }
}

/// Random unitary from orthonormalizing a complex Gaussian sample.
pub fn random_unitary<T: Real>(n: usize, seed: u64) -> ComplexMatrix<T> {
    unitary(&mut rng_for(seed), n).cast()
}

/// `W1 diag(sigma) W2^*` with singular values in `[1, c]`; both endpoints
/// are attained when `r >= 2`.
fn conditioned(rng: &mut ChaCha8Rng, r: usize, c: f64) -> M {
    if r == 0 {
        return M::zeros(0, 0);
    }
    let lc = c.ln();
    let sigma: Vec<_> = (0..r)
        .map(|i| {
            let e = match (i, r) {
                (_, 1) => rng.random_range(0.0..=1.0),
                (0, _) => 1.0,
                (i, r) if i == r - 1 => 0.0,
                _ => rng.random_range(0.0..=1.0),
            };
            cx((e * lc).exp(), 0.0)
        })
        .collect();
    let w1 = unitary(rng, r);
    let w2 = unitary(rng, r);
    w1.matmul(&M::from_diag(&sigma)).matmul(&w2.adjoint())
}

/// Strictly upper triangular `b x b` block with a nonzero superdiagonal,
/// so its nilpotency index is exactly `b`.
fn shift_block(rng: &mut ChaCha8Rng, b: usize) -> M {
    let mut out = M::zeros(b, b);
    for i in 0..b {
        for j in i + 1..b {
            out[(i, j)] = if j == i + 1 {
                let mag = rng.random_range(0.5..1.5);
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                num_complex::Complex::from_polar(mag, phase)
            } else {
                let g = gaussian(rng, 1, 1)[(0, 0)];
                g.scale(0.3)
            };
        }
    }
    out
}

/// Shift blocks whose sizes sum to `m`, the first of size exactly `k`
/// and the rest of size at most `k`.
fn shift_blocks(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Vec<M> {
    if m == 0 {
        return Vec::new();
    }
    assert!(k >= 1 && k <= m);
    let mut blocks = vec![shift_block(rng, k)];
    let mut left = m - k;
    while left > 0 {
        let b = rng.random_range(1..=k.min(left));
        blocks.push(shift_block(rng, b));
        left -= b;
    }
    blocks
}

fn diag_of(blocks: &[M]) -> M {
    M::block_diag(&blocks.iter().collect::<Vec<_>>())
}

/// Nilpotent `m x m` matrix of index exactly `k`, unitarily mixed.
fn nilpotent(rng: &mut ChaCha8Rng, m: usize, k: usize) -> M {
    let blocks = shift_blocks(rng, m, k);
    let w = unitary(rng, m);
    diag_of(&blocks).similarity(&w)
}

/// Nilpotent of size `m` with a random index (possibly the zero matrix).
fn any_nilpotent(rng: &mut ChaCha8Rng, m: usize) -> M {
    if m == 0 || rng.random_range(0..3) == 0 {
        return M::zeros(m, m);
    }
    let k = rng.random_range(1..=m);
    nilpotent(rng, m, k)
}

/// `(N1, N2)` with `N1 <=- N2`, `N2` of size `m` and index `k`.
fn nil_pair(rng: &mut ChaCha8Rng, m: usize, k: usize, family: NilFamily) -> (M, M) {
    let blocks = shift_blocks(rng, m, k);
    let w = unitary(rng, m);
    let n2 = diag_of(&blocks).similarity(&w);
    let n1 = match family {
        NilFamily::Zero => M::zeros(m, m),
        NilFamily::Equal => n2.clone(),
        NilFamily::Embedded => {
            let mut kept = blocks.clone();
            for b in kept.iter_mut().skip(1) {
                *b = M::zeros(b.rows(), b.cols());
            }
            diag_of(&kept).similarity(&w)
        }
    };
    (n1, n2)
}

/// Places blocks into an `n x n` matrix partitioned by `sizes`.
fn assemble(sizes: &[usize], blocks: &[(usize, usize, &M)]) -> M {
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut out = M::zeros(sizes.iter().sum(), sizes.iter().sum());
    for &(bi, bj, b) in blocks {
        assert_eq!(b.shape(), (sizes[bi], sizes[bj]));
        out.set_block(offsets[bi], offsets[bj], b);
    }
    out
}

fn split_rank(r: usize) -> (usize, usize) {
    let r1 = r.div_ceil(2);
    (r1, r - r1)
}

fn pick_family(rng: &mut ChaCha8Rng) -> NilFamily {
    [NilFamily::Zero, NilFamily::Equal, NilFamily::Embedded][rng.random_range(0..3)]
}

/// Adds `±1` to the `(0, 0)` entry, choosing the sign that keeps `t` better
/// conditioned.
fn perturb(t: &M) -> M {
    let candidates = [1.0, -1.0].map(|d| {
        let mut p = t.clone();
        p[(0, 0)] += cx(d, 0.0);
        p
    });
    let smin = |m: &M| svd(m).sigma.last().copied().unwrap_or(0.0);
    let [plus, minus] = candidates;
    if smin(&plus) >= smin(&minus) {
        plus
    } else {
        minus
    }
}

/// Well-conditioned invertible `n x n` matrix and its inverse.
fn invertible(rng: &mut ChaCha8Rng, n: usize) -> (M, M) {
    let p = conditioned(rng, n, 4.0);
    let inv = p.inverse().expect("conditioned matrices are invertible");
    (p, inv)
}

fn cast_pair<T: Real>((a, b): (M, M)) -> (ComplexMatrix<T>, ComplexMatrix<T>) {
    (a.cast(), b.cast())
}

/// `A = U [[T, S], [0, N]] U^*` with `T` nonsingular of the requested
/// conditioning and `N` nilpotent of index exactly `k`.
pub fn matrix_with_structure<T: Real>(spec: &GenSpec) -> Result<Structured<T>> {
    spec.validate()?;
    let mut rng = rng_for(spec.seed);
    let (n, r, k) = (spec.n, spec.core_rank, spec.nilpotency_index);
    let m = n - r;
    let u = unitary(&mut rng, n);
    let t = conditioned(&mut rng, r, spec.conditioning);
    let s = gaussian(&mut rng, r, m);
    let nil = nilpotent(&mut rng, m, k);
    let form = CanonicalForm {
        u: u.cast(),
        t: t.cast(),
        s: s.cast(),
        nil: nil.cast(),
        core_rank: r,
        index: k,
    };
    Ok(Structured {
        matrix: form.reassemble(),
        form,
    })
}

/// Upper block-triangular `B = [[T1, T2, S1], [0, T3, S2], [0, 0, N2]]`
/// and `A` sharing its first block row, with the given lower part.
fn nested(rng: &mut ChaCha8Rng, sizes: [usize; 3], c: f64, n2: &M, a_lower: &M, negative: bool) -> (M, M) {
    let [r1, r3, m] = sizes;
    let t1 = conditioned(rng, r1, c);
    let t2 = gaussian(rng, r1, r3);
    let s1 = gaussian(rng, r1, m);
    let t3 = conditioned(rng, r3, c);
    let s2 = gaussian(rng, r3, m);
    let a = assemble(
        &[r1, r3 + m],
        &[(0, 0, &t1), (0, 1, &M::from_blocks(&[vec![&t2, &s1]])), (1, 1, a_lower)],
    );
    let t1b = if negative { perturb(&t1) } else { t1 };
    let b = assemble(
        &sizes,
        &[
            (0, 0, &t1b),
            (0, 1, &t2),
            (0, 2, &s1),
            (1, 1, &t3),
            (1, 2, &s2),
            (2, 2, n2),
        ],
    );
    (a, b)
}

fn require_core(polarity: Polarity, r1: usize, what: &str) -> Result<()> {
    if polarity == Polarity::Negative && r1 == 0 {
        return Err(Error::InfeasibleSpec(format!(
            "a negative {what} pair needs core rank at least 1"
        )));
    }
    Ok(())
}

/// A pair `(A, B)` that satisfies `relation` (positive) or violates it
/// (negative) by construction. `B` has core rank `spec.core_rank` and index
/// `spec.nilpotency_index`; sharp and core pairs need index at most one.
pub fn order_pair<T: Real>(
    spec: &GenSpec,
    relation: Relation,
    polarity: Polarity,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    spec.validate()?;
    let mut rng = rng_for(spec.seed);
    let family = pick_family(&mut rng);
    pair_impl(&mut rng, spec, relation, polarity, family).map(cast_pair)
}

/// Core-minus pair with a chosen nilpotent family.
pub fn core_minus_pair<T: Real>(
    spec: &GenSpec,
    family: NilFamily,
    polarity: Polarity,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    spec.validate()?;
    let mut rng = rng_for(spec.seed);
    pair_impl(&mut rng, spec, Relation::CoreMinus, polarity, family).map(cast_pair)
}

fn pair_impl(
    rng: &mut ChaCha8Rng,
    spec: &GenSpec,
    relation: Relation,
    polarity: Polarity,
    family: NilFamily,
) -> Result<(M, M)> {
    let (n, r, k) = (spec.n, spec.core_rank, spec.nilpotency_index);
    let c = spec.conditioning;
    let m = n - r;
    let (r1, r3) = split_rank(r);
    let negative = polarity == Polarity::Negative;
    require_core(polarity, r1, relation.name())?;
    if relation.needs_index_le_one() && k > 1 {
        return Err(Error::InfeasibleSpec(format!(
            "{relation} pairs need index at most 1, got {k}"
        )));
    }
    let pair = match relation {
        Relation::Minus => {
            let (l, _) = invertible(rng, n);
            let (rr, _) = invertible(rng, n);
            let d1 = conditioned(rng, r1, c);
            let d2 = conditioned(rng, r3, c);
            let z = M::zeros(m, m);
            let za = M::zeros(r3, r3);
            let d1b = if negative { perturb(&d1) } else { d1.clone() };
            let a = M::block_diag(&[&d1, &za, &z]);
            let b = M::block_diag(&[&d1b, &d2, &z]);
            (l.matmul(&a).matmul(&rr), l.matmul(&b).matmul(&rr))
        }
        Relation::Sharp => {
            let (p, pinv) = invertible(rng, n);
            let t1 = conditioned(rng, r1, c);
            let t3 = conditioned(rng, r3, c);
            let t1b = if negative { perturb(&t1) } else { t1.clone() };
            let a = M::block_diag(&[&t1, &M::zeros(r3 + m, r3 + m)]);
            let b = M::block_diag(&[&t1b, &t3, &M::zeros(m, m)]);
            (p.matmul(&a).matmul(&pinv), p.matmul(&b).matmul(&pinv))
        }
        Relation::Core => {
            let u = unitary(rng, n);
            let (a, b) = nested(
                rng,
                [r1, r3, m],
                c,
                &M::zeros(m, m),
                &M::zeros(r3 + m, r3 + m),
                negative,
            );
            (a.similarity(&u), b.similarity(&u))
        }
        Relation::Drazin => {
            let (p, pinv) = invertible(rng, n);
            let t1 = conditioned(rng, r1, c);
            let t3 = conditioned(rng, r3, c);
            let s2 = gaussian(rng, r3, m);
            let n2 = nilpotent(rng, m, k);
            let rest = assemble(&[r3, m], &[(0, 0, &t3), (0, 1, &s2), (1, 1, &n2)]);
            let na = any_nilpotent(rng, r3 + m);
            let t1b = if negative { perturb(&t1) } else { t1.clone() };
            let a = M::block_diag(&[&t1, &na]);
            let b = M::block_diag(&[&t1b, &rest]);
            (p.matmul(&a).matmul(&pinv), p.matmul(&b).matmul(&pinv))
        }
        Relation::CoreEp => {
            let u = unitary(rng, n);
            let n2 = nilpotent(rng, m, k);
            let lower = any_nilpotent(rng, r3 + m);
            let (a, b) = nested(rng, [r1, r3, m], c, &n2, &lower, negative);
            (a.similarity(&u), b.similarity(&u))
        }
        Relation::Cn => {
            let (p, pinv) = invertible(rng, n);
            let t1 = conditioned(rng, r1, c);
            let t3 = conditioned(rng, r3, c);
            let (n1, n2) = nil_pair(rng, m, k, family);
            let t1b = if negative { perturb(&t1) } else { t1.clone() };
            let a = M::block_diag(&[&t1, &M::zeros(r3, r3), &n1]);
            let b = M::block_diag(&[&t1b, &t3, &n2]);
            (p.matmul(&a).matmul(&pinv), p.matmul(&b).matmul(&pinv))
        }
        Relation::CoreMinus => {
            let u = unitary(rng, n);
            let (n1, n2) = nil_pair(rng, m, k, family);
            let lower = M::block_diag(&[&M::zeros(r3, r3), &n1]);
            let (a, b) = nested(rng, [r1, r3, m], c, &n2, &lower, negative);
            (a.similarity(&u), b.similarity(&u))
        }
    };
    Ok(pair)
}

/// Pair `(A, B)` with `A <= B` and `B <= A` in the core-EP order: both
/// share the top block row `[T1, S1]` and differ only in their nilpotent
/// blocks, which coincide when `equal` is set.
pub fn core_ep_bidirectional_pair<T: Real>(
    spec: &GenSpec,
    equal: bool,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    spec.validate()?;
    let mut rng = rng_for(spec.seed);
    let (n, r, k) = (spec.n, spec.core_rank, spec.nilpotency_index);
    let m = n - r;
    let u = unitary(&mut rng, n);
    let t1 = conditioned(&mut rng, r, spec.conditioning);
    let s1 = gaussian(&mut rng, r, m);
    let nb = nilpotent(&mut rng, m, k);
    let na = if equal { nb.clone() } else { any_nilpotent(&mut rng, m) };
    let a = assemble(&[r, m], &[(0, 0, &t1), (0, 1, &s1), (1, 1, &na)]);
    let b = assemble(&[r, m], &[(0, 0, &t1), (0, 1, &s1), (1, 1, &nb)]);
    Ok(cast_pair((a.similarity(&u), b.similarity(&u))))
}

/// Triple `A <= B <= C` in the core-EP order. `C` has core rank
/// `spec.core_rank` (at least 1) and index `spec.nilpotency_index`.
pub fn core_ep_triple<T: Real>(spec: &GenSpec) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>, ComplexMatrix<T>)> {
    spec.validate()?;
    let (n, r, k) = (spec.n, spec.core_rank, spec.nilpotency_index);
    if r == 0 {
        return Err(Error::InfeasibleSpec(
            "a core-EP triple needs core rank at least 1".into(),
        ));
    }
    let mut rng = rng_for(spec.seed);
    let c = spec.conditioning;
    let m = n - r;
    let ra = r.div_ceil(3);
    let rb = (r - ra).div_ceil(2);
    let rc = r - ra - rb;
    let sizes = [ra, rb, rc, m];
    let u = unitary(&mut rng, n);
    let ta = conditioned(&mut rng, ra, c);
    let tb = conditioned(&mut rng, rb, c);
    let tc = conditioned(&mut rng, rc, c);
    let n3 = nilpotent(&mut rng, m, k);
    let off: Vec<(usize, usize, M)> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .into_iter()
        .map(|(i, j)| (i, j, gaussian(&mut rng, sizes[i], sizes[j])))
        .collect();
    let block = |i: usize, j: usize| off.iter().find(|b| b.0 == i && b.1 == j).map(|b| &b.2).unwrap();

    let mut cb: Vec<(usize, usize, &M)> = vec![(0, 0, &ta), (1, 1, &tb), (2, 2, &tc), (3, 3, &n3)];
    cb.extend(off.iter().map(|(i, j, b)| (*i, *j, b)));
    let cm = assemble(&sizes, &cb);

    let nb = any_nilpotent(&mut rng, rc + m);
    let bm = assemble(
        &[ra, rb, rc + m],
        &[
            (0, 0, &ta),
            (0, 1, block(0, 1)),
            (0, 2, &M::from_blocks(&[vec![block(0, 2), block(0, 3)]])),
            (1, 1, &tb),
            (1, 2, &M::from_blocks(&[vec![block(1, 2), block(1, 3)]])),
            (2, 2, &nb),
        ],
    );

    let na = any_nilpotent(&mut rng, n - ra);
    let top = M::from_blocks(&[vec![block(0, 1), block(0, 2), block(0, 3)]]);
    let am = assemble(&[ra, n - ra], &[(0, 0, &ta), (0, 1, &top), (1, 1, &na)]);

    Ok((
        am.similarity(&u).cast(),
        bm.similarity(&u).cast(),
        cm.similarity(&u).cast(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::index;
    use crate::kernel::{rank, scaled_power_log};
    use crate::tolerance::ToleranceContext;

    #[test]
    fn unitary_examples() {
        let u1 = random_unitary::<f64>(1, 3);
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-15);
        let u = random_unitary::<f64>(4, 11);
        assert!(u.orthonormality_defect() < 1e-12);
        assert_eq!(u.entries(), random_unitary::<f64>(4, 11).entries());
        assert_ne!(u.entries(), random_unitary::<f64>(4, 12).entries());
    }

    #[test]
    fn structure_matches_spec() {
        let tol = ToleranceContext::default();
        for (n, r, k) in [(3, 1, 2), (3, 3, 0), (2, 0, 2), (8, 4, 4), (6, 0, 6), (5, 2, 1)] {
            for (seed, c) in (0..10).zip([10.0, 1e3].into_iter().cycle()) {
                let spec = GenSpec::new(n, r, k, seed).with_conditioning(c);
                let s = matrix_with_structure::<f64>(&spec).unwrap();
                assert_eq!(index(&s.matrix, &tol).unwrap(), k, "{n} {r} {k} {seed}");
                assert!(svd(&s.form.t).condition() <= c * (1.0 + 1e-10));
                // T^k has condition up to c^k; beyond 1/rtol the rank of the
                // explicit power is not resolvable in double precision
                if c.powi(k as i32) <= 1e8 {
                    let p = scaled_power_log(&s.matrix, k).unwrap().matrix;
                    assert_eq!(rank(&p, &tol), r);
                }
            }
        }
    }

    #[test]
    fn infeasible_specs() {
        for spec in [
            GenSpec::new(3, 1, 0, 0),
            GenSpec::new(3, 2, 2, 0),
            GenSpec::new(2, 3, 1, 0),
        ] {
            assert!(matches!(
                matrix_with_structure::<f64>(&spec),
                Err(Error::InfeasibleSpec(_))
            ));
        }
        let spec = GenSpec::new(4, 0, 2, 0);
        assert!(matches!(
            order_pair::<f64>(&spec, Relation::CoreEp, Polarity::Negative),
            Err(Error::InfeasibleSpec(_))
        ));
        let spec = GenSpec::new(4, 2, 2, 0);
        assert!(matches!(
            order_pair::<f64>(&spec, Relation::Sharp, Polarity::Positive),
            Err(Error::InfeasibleSpec(_))
        ));
    }

    #[test]
    fn pairs_land_on_the_right_side() {
        let tol = ToleranceContext::default();
        for rel in Relation::ALL {
            let (r, k) = if rel.needs_index_le_one() { (3, 1) } else { (3, 2) };
            for seed in 0..4 {
                let spec = GenSpec::new(6, r, k, seed);
                let (a, b) = order_pair::<f64>(&spec, rel, Polarity::Positive).unwrap();
                assert!(rel.evaluate(&a, &b, &tol).unwrap().holds, "{rel} positive seed {seed}");
                let (a, b) = order_pair::<f64>(&spec, rel, Polarity::Negative).unwrap();
                assert!(!rel.evaluate(&a, &b, &tol).unwrap().holds, "{rel} negative seed {seed}");
            }
        }
    }

    #[test]
    fn core_minus_families() {
        let tol = ToleranceContext::default();
        let spec = GenSpec::new(6, 2, 3, 9);
        let (a, b) = core_minus_pair::<f64>(&spec, NilFamily::Equal, Polarity::Positive).unwrap();
        let v = crate::orders::le_core_minus(&a, &b, &tol).unwrap();
        assert!(v.holds);
        assert_eq!(v.rank_witness.unwrap().2, 0);
        assert!(crate::orders::le_minus(&a, &b, &tol).unwrap().holds);
    }
}
