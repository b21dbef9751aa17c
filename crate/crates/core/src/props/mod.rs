//! Graph property decision procedures and the G(n,p) audit suite.

pub mod audit;
pub mod bounds;
pub mod connectivity;
pub mod expander;
pub mod flow;
pub mod hamilton;
pub mod matching;

use thiserror::Error;

pub use audit::{audit_gnp_properties, AuditKnobs, AuditReport, Method, PropertyRecord, Witness};
pub use bounds::{chernoff_bounds, trivial_tail_bound, BoundError, ChernoffBounds};
pub use connectivity::{is_connected, is_k_connected};
pub use expander::{is_expander, ExpanderWitness};
pub use hamilton::{booster_set, is_hamiltonian, longest_path_length, posa_extend, BoosterReport, HamCheck};
pub use matching::has_perfect_matching;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PropError {
    #[error("{what} limited to size {limit}, got {size}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("{0}")]
    Parameter(String),
}
