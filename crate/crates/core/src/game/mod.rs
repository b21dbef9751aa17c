//! The game engine: specs, board state, the play loop, transcripts and the
//! fake-moves wrapper.

pub mod board;
pub mod engine;
pub mod fake_moves;
pub mod spec;
pub mod strategy;

pub use board::{BoardState, GameResult, Move, MoveError, Owner, Reason, ReplayError, SpecError};
pub use engine::{parse_transcript, play, play_from, replay_transcript, transcript, TranscriptError};
pub use fake_moves::{fake_moves_wrapper, FakeMoves};
pub use spec::{Convention, GameSpec, Role, Target};
pub use strategy::{params, random_subset, Cursor, Forfeit, GreedyLowest, Params, RandomStrategy, Scripted, Strategy};

use std::sync::Arc;

use crate::graph::Graph;

/// Starts a game: all edges free, `spec.first_player` to move.
pub fn new_game(spec: GameSpec, g: Arc<Graph>) -> Result<BoardState, SpecError> {
    BoardState::new(spec, g)
}
