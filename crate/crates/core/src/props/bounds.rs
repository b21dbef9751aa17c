//! Binomial tail bounds: the two Chernoff tails and the `(enp/k)^k` bound.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("deviation {0} must be positive")]
    Deviation(f64),
    #[error("threshold k must be at least 1")]
    Threshold,
}

/// Upper bounds on `Pr(X < (1-a)np)` and `Pr(X > (1+a)np)` for `X ~ Bin(n,p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffBounds {
    pub lower_tail: f64,
    /// `None` when `a >= 1`, where the upper-tail form does not apply.
    pub upper_tail: Option<f64>,
}

fn check_p(p: f64) -> Result<(), BoundError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(BoundError::Probability(p))
    }
}

/// `exp(-a^2 np / 2)` and, for `a < 1`, `exp(-a^2 np / 3)`, clamped to `[0,1]`.
pub fn chernoff_bounds(n: u64, p: f64, a: f64) -> Result<ChernoffBounds, BoundError> {
    check_p(p)?;
    if !(a > 0.0) {
        return Err(BoundError::Deviation(a));
    }
    let mu = n as f64 * p;
    let lower_tail = (-a * a * mu / 2.0).exp().clamp(0.0, 1.0);
    let upper_tail = (a < 1.0).then(|| (-a * a * mu / 3.0).exp().clamp(0.0, 1.0));
    Ok(ChernoffBounds {
        lower_tail,
        upper_tail,
    })
}

/// `Pr(X >= k) <= (enp/k)^k`, clamped to `[0,1]`.
pub fn trivial_tail_bound(n: u64, p: f64, k: u64) -> Result<f64, BoundError> {
    check_p(p)?;
    if k == 0 {
        return Err(BoundError::Threshold);
    }
    let base = std::f64::consts::E * n as f64 * p / k as f64;
    Ok((k as f64 * base.ln()).exp().clamp(0.0, 1.0))
}
