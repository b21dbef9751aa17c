//! Biased Maker-Breaker and monotone Avoider-Enforcer games on random graphs.
//!
//! * [`graph`]: simple graphs, seeded G(n,p) sampling, set primitives;
//! * [`props`]: Hamiltonicity, matchings, connectivity, expansion, boosters
//!   and the random-graph property audit;
//! * [`game`]: the game engine and the fake-moves wrapper;
//! * [`hypergraph`]: winning criteria and potential strategies;
//! * [`boxes`]: box games and their strategies/solvers;
//! * [`strategies`]: isolators, minimum-degree and Hamiltonicity strategies;
//! * [`oracle`]: exact minimax for tiny boards;
//! * [`harness`]: trial batches, bias scans and persistence.

pub mod graph;
pub mod props;
pub mod rng;
pub mod game;
pub mod hypergraph;
pub mod oracle;
pub mod boxes;
pub mod strategies;
pub mod harness;
