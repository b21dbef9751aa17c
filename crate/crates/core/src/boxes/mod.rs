//! Box games: the Chvátal–Erdős game Box(m, ℓ, b) and the monotone reverse
//! box game rBox(b_1..b_n, (p, q)).

pub mod forward;
pub mod reverse;

pub use forward::{boxmaker_strategy, boxmaker_vs_optimal_breaker, solve_box_exact, BoxRole, BoxState};
pub use reverse::{enforcer_rbox_strategy, enforcer_vs_optimal_avoider, solve_rbox_exact, RBoxRole, RBoxState};

use thiserror::Error;

/// Largest instance (total elements) the exact box solvers accept.
pub const BOX_EXACT_LIMIT: usize = 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoxError {
    #[error("box game needs m >= 2 for the threshold (got {0})")]
    TooFewBoxes(usize),
    #[error("instance has {elements} elements; exact search is limited to {limit}")]
    TooLarge { elements: usize, limit: usize },
    #[error("illegal box move: {0}")]
    Illegal(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
}

/// `ℓ / ln m`: BoxMaker wins Box(m, ℓ, b) for every `b` above it.
pub fn box_threshold(m: usize, l: usize) -> Result<f64, BoxError> {
    if m < 2 {
        return Err(BoxError::TooFewBoxes(m));
    }
    Ok(l as f64 / (m as f64).ln())
}

/// `2 e^(k/p)`: with at least this many boxes, each of size at most `k`,
/// Enforcer wins the reverse box game with biases `(p, 1)` whoever starts.
pub fn rbox_min_boxes(k: usize, p: usize) -> f64 {
    2.0 * (k as f64 / p as f64).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert!((box_threshold(3, 3).unwrap() - 2.730_717).abs() < 1e-6);
        let m = std::f64::consts::E.powi(2);
        assert!((4.0 / m.ln() - 2.0).abs() < 1e-12);
        assert!((box_threshold(7, 4).unwrap() - 4.0 / 7f64.ln()).abs() < 1e-15);
        assert_eq!(box_threshold(1, 3), Err(BoxError::TooFewBoxes(1)));
        assert!((rbox_min_boxes(2, 3) - 3.895_468).abs() < 1e-6);
    }
}
