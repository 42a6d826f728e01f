//! The general sum-connectivity index chi_alpha, evaluated directly on the
//! realized graph and through the segment closed form, plus the classical
//! reductions (first Zagreb at alpha = 1, harmonic at alpha = -1).

use thiserror::Error;

use crate::chain::{LengthVector, PolyominoChain};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum IndexError {
    #[error("alpha must be nonzero")]
    AlphaZero,
    #[error("alpha {0} outside guard range [-{guard}, {guard}]", guard = Alpha::GUARD)]
    AlphaOutOfRange(f64),
    #[error("{what} needs a chain with at least 3 squares, got n = {n}")]
    TooFewSquares { what: &'static str, n: usize },
}

/// Nonzero exponent, clamped to a range where the per-edge terms stay far
/// from underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    pub const GUARD: f64 = 12.0;

    pub fn new(value: f64) -> Result<Alpha, IndexError> {
        if value == 0.0 || value.is_nan() {
            return Err(IndexError::AlphaZero);
        }
        if value.abs() > Alpha::GUARD {
            return Err(IndexError::AlphaOutOfRange(value));
        }
        Ok(Alpha(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// f(a) = 2*5^a - 6^(a+1) + 4*7^a, the per-segment coefficient.
pub fn f_val(a: f64) -> f64 {
    2.0 * 5f64.powf(a) - 6f64.powf(a + 1.0) + 4.0 * 7f64.powf(a)
}

/// g(a) = 2*6^a - 5^a - 7^a, the coefficient of the external length-2 flags.
pub fn g_val(a: f64) -> f64 {
    2.0 * 6f64.powf(a) - 5f64.powf(a) - 7f64.powf(a)
}

/// h(a) = 5*6^a - 2*5^a - 4*7^a + 8^a, the coefficient of the internal
/// length-2 flags.
pub fn h_val(a: f64) -> f64 {
    5.0 * 6f64.powf(a) - 2.0 * 5f64.powf(a) - 4.0 * 7f64.powf(a) + 8f64.powf(a)
}

/// Sum of (d_u + d_v)^alpha over the realized edges.
pub fn chi_direct(c: &PolyominoChain, alpha: Alpha) -> f64 {
    let a = alpha.value();
    c.edge_degree_sums().map(|s| f64::from(s).powf(a)).sum()
}

/// Segment-dependent part of the index: f*s + g*(beta_1 + beta_s)
/// + h*sum(alpha_i).
pub fn psi(lv: &LengthVector, alpha: Alpha) -> Result<f64, IndexError> {
    let n = lv.n();
    if n < 3 {
        return Err(IndexError::TooFewSquares { what: "psi", n });
    }
    Ok(psi_unchecked(lv, alpha.value()))
}

pub(crate) fn psi_unchecked(lv: &LengthVector, a: f64) -> f64 {
    let ind = lv.indicators();
    f_val(a) * lv.segment_count() as f64
        + g_val(a) * ind.external_two_count() as f64
        + h_val(a) * ind.internal_two_count() as f64
}

/// Closed form 3*6^a*n + (2*4^a + 2*5^a + 6^a - 4*7^a) + psi. Valid for
/// chains with n >= 3 whose internal length-3 segments carry no edge between
/// two degree-3 vertices; the caller asserts the latter.
pub fn chi_closed(lv: &LengthVector, alpha: Alpha) -> Result<f64, IndexError> {
    let n = lv.n();
    if n < 3 {
        return Err(IndexError::TooFewSquares { what: "closed form", n });
    }
    let a = alpha.value();
    Ok(3.0 * 6f64.powf(a) * n as f64 + closed_form_constant(a) + psi_unchecked(lv, a))
}

/// The n-independent constant 2*4^a + 2*5^a + 6^a - 4*7^a of the closed form.
pub fn closed_form_constant(a: f64) -> f64 {
    2.0 * 4f64.powf(a) + 2.0 * 5f64.powf(a) + 6f64.powf(a) - 4.0 * 7f64.powf(a)
}

/// First Zagreb index: sum of squared vertex degrees.
pub fn first_zagreb(c: &PolyominoChain) -> u64 {
    c.degrees().values().map(|&d| u64::from(d) * u64::from(d)).sum()
}

/// Harmonic index: sum of 2/(d_u + d_v) over edges.
pub fn harmonic(c: &PolyominoChain) -> f64 {
    c.edge_degree_sums().map(|s| 2.0 / f64::from(s)).sum()
}
