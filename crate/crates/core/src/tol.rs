use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};

/// Numeric tolerances shared by every module.
///
/// `abs` bounds exact-arithmetic residuals, `rel` scales equality tests by
/// the operand norm, and `classify` is the relative threshold applied to
/// criterion residuals and eigenvalues during classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
    pub classify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-9,
            classify: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn new(abs: f64, rel: f64, classify: f64) -> Result<Self> {
        for (name, v) in [("abs", abs), ("rel", rel), ("classify", classify)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(GameError::Domain(format!(
                    "tolerance `{name}` must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Self { abs, rel, classify })
    }

    /// Same defaults with a different classification threshold.
    pub fn with_classify(classify: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(d.abs, d.rel, classify)
    }

    /// Equality threshold for a quantity of magnitude `norm`.
    pub fn equality_bound(&self, norm: f64) -> f64 {
        self.abs + self.rel * norm
    }
}
