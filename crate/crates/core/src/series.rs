use crate::{Error, Real, Result};

/// Whether a [`SeriesEval::tail_bound`] is a proven envelope or an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// The truncation error is provably at most `tail_bound` (rounding excluded).
    Rigorous,
    /// `tail_bound` is an asymptotic or empirical estimate.
    Heuristic,
}

/// A truncated infinite sum: its value, how many terms went in, and how far the
/// truncation may be from the full sum.
///
/// `tail_bound` covers truncation only; floating-point rounding is not included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval<T, V = T> {
    pub value: V,
    pub terms_used: usize,
    pub tail_bound: T,
    pub bound: BoundKind,
}

impl<T: Real, V> SeriesEval<T, V> {
    pub fn new(value: V, terms_used: usize, tail_bound: T, bound: BoundKind) -> Self {
        debug_assert!(tail_bound >= T::zero() || tail_bound.is_nan());
        SeriesEval {
            value,
            terms_used,
            tail_bound,
            bound,
        }
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> SeriesEval<T, W> {
        SeriesEval {
            value: f(self.value),
            terms_used: self.terms_used,
            tail_bound: self.tail_bound,
            bound: self.bound,
        }
    }

    /// Rigorous only if both inputs are.
    pub(crate) fn combine_kind(a: BoundKind, b: BoundKind) -> BoundKind {
        if a == BoundKind::Rigorous && b == BoundKind::Rigorous {
            BoundKind::Rigorous
        } else {
            BoundKind::Heuristic
        }
    }
}

/// Accuracy request for a truncated sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision<T> {
    pub target_abs_tol: T,
    pub max_terms: usize,
}

impl<T: Real> Precision<T> {
    pub fn new(target_abs_tol: T, max_terms: usize) -> Result<Self> {
        if !(target_abs_tol > T::zero()) || !target_abs_tol.is_finite() {
            return Err(Error::domain("target_abs_tol must be positive and finite"));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(Precision {
            target_abs_tol,
            max_terms,
        })
    }

    /// Same term budget, different tolerance.
    pub fn with_tol(self, target_abs_tol: T) -> Self {
        Precision {
            target_abs_tol,
            ..self
        }
    }

    pub(crate) fn tol(&self) -> T {
        self.target_abs_tol
    }
}

impl<T: Real> Default for Precision<T> {
    /// `1e-12` at `f64`; at narrower types, 64 ulps of one.
    fn default() -> Self {
        let floor = T::epsilon() * T::lit(64.0);
        Precision {
            target_abs_tol: T::lit(1e-12).max(floor),
            max_terms: 100_000,
        }
    }
}
