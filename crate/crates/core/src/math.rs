use crate::{PidError, Result, NEGATIVE_TOLERANCE};

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// `-p log2 p` with `0 log 0 = 0`.
#[inline]
pub(crate) fn neg_xlogx(p: f64) -> f64 {
    if p > 0.0 {
        -p * log2(p)
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Clamp tiny negative round-off to zero; reject anything larger.
pub(crate) fn clamp_nonnegative(value: f64, what: &str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -NEGATIVE_TOLERANCE {
        Ok(0.0)
    } else {
        Err(PidError::Internal(alloc::format!(
            "{what} evaluated to {value:e}"
        )))
    }
}
