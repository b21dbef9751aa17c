//! The play loop and move transcripts.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::Graph;
use crate::rng::{derive_seed, stream, tags};

use super::board::{BoardState, GameResult, Move, Reason, ReplayError, SpecError};
use super::spec::{GameSpec, Role};
use super::strategy::Strategy;

/// Plays a game to the end. The same seed and strategies give the same game.
///
/// Each player draws from its own random stream derived from `seed`. An
/// illegal claim or an explicit forfeit loses the game immediately with
/// reason [`Reason::Forfeit`].
pub fn play(
    spec: &GameSpec,
    board: Arc<Graph>,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    seed: u64,
) -> Result<GameResult, SpecError> {
    let state = BoardState::new(spec.clone(), board)?;
    Ok(play_from(state, maker, breaker, seed))
}

/// [`play`] starting from an arbitrary position.
pub fn play_from(
    mut state: BoardState,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    seed: u64,
) -> GameResult {
    let game_seed = derive_seed(seed, tags::GAME);
    let mut rng_m = stream(game_seed, tags::MAKER);
    let mut rng_b = stream(game_seed, tags::BREAKER);
    loop {
        if let Some(r) = state.check_winner() {
            return r;
        }
        let who = state.to_move();
        let claim = match who {
            Role::Maker => maker.choose(&state, &mut rng_m),
            Role::Breaker => breaker.choose(&state, &mut rng_b),
        };
        let err = match claim {
            Ok(edges) => match state.apply_claim(who, &edges) {
                Ok(()) => continue,
                Err(e) => format!("illegal move: {e}"),
            },
            Err(f) => f.0,
        };
        let detail = format!("{} forfeits: {err}", who.label(state.spec().convention));
        return GameResult {
            winner: who.other(),
            reason: Reason::Forfeit,
            move_count: state.move_count(),
            final_state: state,
            detail: Some(detail),
        };
    }
}

/// One line per move: `<round> <role> <u-v u-v ...>`.
pub fn transcript(state: &BoardState) -> String {
    let conv = state.spec().convention;
    let mut out = String::new();
    for (i, mv) in state.history().iter().enumerate() {
        let _ = write!(out, "{} {}", i / 2 + 1, mv.role.label(conv));
        for &e in &mv.edges {
            let _ = write!(out, " {}", state.board().edge(e));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TranscriptError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

/// Parses a transcript into moves on `board`.
pub fn parse_transcript(board: &Graph, text: &str) -> Result<Vec<Move>, TranscriptError> {
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| TranscriptError::Parse { line: i + 1, msg };
        let mut it = line.split_whitespace();
        it.next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| err("missing round number".into()))?;
        let role = it
            .next()
            .and_then(Role::from_label)
            .ok_or_else(|| err("missing or unknown role".into()))?;
        let mut edges = Vec::new();
        for tok in it {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| err(format!("bad edge `{tok}`")))?;
            let (a, b) = (
                a.parse::<usize>().map_err(|e| err(format!("{tok}: {e}")))?,
                b.parse::<usize>().map_err(|e| err(format!("{tok}: {e}")))?,
            );
            let id = board
                .edge_id(a, b)
                .ok_or_else(|| err(format!("{tok} is not a board edge")))?;
            edges.push(id);
        }
        moves.push(Move { role, edges });
    }
    Ok(moves)
}

/// Parses and replays a transcript.
pub fn replay_transcript(spec: GameSpec, board: Arc<Graph>, text: &str) -> Result<BoardState, TranscriptError> {
    let moves = parse_transcript(&board, text)?;
    Ok(BoardState::replay(spec, board, &moves)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::spec::Target;
    use crate::game::strategy::{GreedyLowest, RandomStrategy, Scripted};
    use crate::graph::{sample_gnp, GnpParams};

    #[test]
    fn deterministic_and_replayable() {
        let g = Arc::new(sample_gnp(&GnpParams::new(12, 0.6, 3).unwrap()).unwrap());
        let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 2);
        let r1 = play(&spec, g.clone(), &mut RandomStrategy, &mut RandomStrategy, 9).unwrap();
        let r2 = play(&spec, g.clone(), &mut RandomStrategy, &mut RandomStrategy, 9).unwrap();
        let t = transcript(&r1.final_state);
        assert_eq!(t, transcript(&r2.final_state));
        assert_eq!(r1.winner, r2.winner);
        let replayed = replay_transcript(spec, g, &t).unwrap();
        assert_eq!(replayed, r1.final_state);
        assert_eq!(replayed.outcome(), Some((r1.winner, r1.reason)));
    }

    #[test]
    fn transcript_format() {
        let g = Arc::new(Graph::complete(4));
        let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 2).with_cutoff(false);
        let r = play(&spec, g, &mut GreedyLowest, &mut GreedyLowest, 0).unwrap();
        let t = transcript(&r.final_state);
        assert!(t.starts_with("1 maker 0-1\n1 breaker 0-2 0-3\n2 maker 1-2\n"), "{t}");
    }

    #[test]
    fn illegal_move_forfeits() {
        let g = Arc::new(Graph::complete(4));
        let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 1);
        let mut bad = Scripted::new(vec![vec![0, 1]]);
        let r = play(&spec, g.clone(), &mut bad, &mut RandomStrategy, 0).unwrap();
        assert_eq!((r.winner, r.reason), (Role::Breaker, Reason::Forfeit));
        let mut bad = Scripted::new(vec![]);
        let spec = spec.with_first(Role::Breaker);
        let r = play(&spec, g, &mut RandomStrategy, &mut bad, 0).unwrap();
        assert_eq!((r.winner, r.reason), (Role::Maker, Reason::Forfeit));
        assert!(r.detail.unwrap().contains("script exhausted"));
    }

    #[test]
    fn both_first_players() {
        let g = Arc::new(Graph::complete(6));
        for first in [Role::Maker, Role::Breaker] {
            let spec = GameSpec::avoider_enforcer(Target::IsolateVertex, 1, 3).with_first(first);
            let r = play(&spec, g.clone(), &mut RandomStrategy, &mut RandomStrategy, 1).unwrap();
            assert_eq!(r.final_state.history()[0].role, first);
            assert_ne!(r.reason, Reason::Forfeit);
        }
    }

    #[test]
    fn malformed_transcripts() {
        let g = Graph::complete(3);
        assert!(parse_transcript(&g, "1 maker 0-5\n").is_err());
        assert!(parse_transcript(&g, "x maker 0-1\n").is_err());
        assert!(parse_transcript(&g, "1 wizard 0-1\n").is_err());
        assert_eq!(parse_transcript(&g, "# c\n1 avoider 1-0\n").unwrap()[0].edges, vec![0]);
    }
}
