use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute and relative thresholds behind every rank, equality and
/// residual decision.
///
/// A singular value counts toward the rank when it exceeds
/// `max(atol, rtol * reference)`; a residual passes when it is at most
/// `atol + rtol * scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceContext<T: Real = f64> {
    atol: T,
    rtol: T,
}

impl<T: Real> ToleranceContext<T> {
    pub fn new(atol: T, rtol: T) -> Result<Self> {
        let ok = atol.is_finite()
            && rtol.is_finite()
            && atol >= T::zero()
            && rtol >= T::zero()
            && (atol > T::zero() || rtol > T::zero());
        if ok {
            Ok(Self { atol, rtol })
        } else {
            Err(Error::InvalidTolerance {
                atol: atol.as_f64(),
                rtol: rtol.as_f64(),
            })
        }
    }

    /// Relative-only tolerance.
    pub fn relative(rtol: T) -> Result<Self> {
        Self::new(T::zero(), rtol)
    }

    /// The strict numerical-rank convention `rtol = n * eps`.
    pub fn machine(n: usize) -> Self {
        Self {
            atol: T::zero(),
            rtol: T::of_usize(n.max(1)) * T::epsilon(),
        }
    }

    pub fn atol(&self) -> T {
        self.atol
    }

    pub fn rtol(&self) -> T {
        self.rtol
    }

    /// Singular-value cutoff relative to `reference` (usually `sigma_max`).
    pub fn rank_cutoff(&self, reference: T) -> T {
        self.atol.max(self.rtol * reference)
    }

    /// Largest admissible residual for a quantity of magnitude `scale`.
    pub fn bound(&self, scale: T) -> T {
        self.atol + self.rtol * scale
    }

    /// Same tolerance widened by `factor`.
    pub fn widened(&self, factor: T) -> Self {
        Self {
            atol: self.atol * factor,
            rtol: self.rtol * factor,
        }
    }

    pub fn residual(&self, value: T, scale: T) -> Residual<T> {
        Residual {
            value,
            bound: self.bound(scale),
        }
    }
}

impl<T: Real> Default for ToleranceContext<T> {
    fn default() -> Self {
        Self {
            atol: T::zero(),
            rtol: T::DEFAULT_RTOL,
        }
    }
}

/// Frobenius-norm residual of one defining condition with the bound it was
/// judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<T: Real = f64> {
    pub value: T,
    pub bound: T,
}

impl<T: Real> Residual<T> {
    pub fn passes(&self) -> bool {
        self.value <= self.bound
    }
}

/// Named residuals in stable (sorted) key order.
#[derive(Debug, Clone, PartialEq)]
pub struct Residuals<T: Real = f64>(BTreeMap<&'static str, Residual<T>>);

impl<T: Real> Default for Residuals<T> {
    fn default() -> Self {
        Self(BTreeMap::new())
    }
}

impl<T: Real> Residuals<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &'static str, r: Residual<T>) {
        self.0.insert(name, r);
    }

    pub fn get(&self, name: &str) -> Option<&Residual<T>> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Residual<T>)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.0.values().all(Residual::passes)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Residual<T>)> {
        self.iter().find(|(_, r)| !r.passes())
    }

    /// Fails with `ResidualTooLarge` naming the first violated condition.
    pub fn require_all(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some((what, r)) => Err(Error::ResidualTooLarge {
                what,
                residual: r.value.as_f64(),
                bound: r.bound.as_f64(),
            }),
        }
    }
}
