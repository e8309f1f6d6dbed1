//! Interactive sessions: a human plays Spoiler, the library answers.

use serde_json::json;

use super::{CliError, Output, ReplIo};
use crate::game::{
    self, auto_respond, is_partial_embedding, step_spoiler, Play, PlayStatus, Side, SpoilerMove,
};
use crate::sized_boolean::{
    duplicator_respond, state_violation, verify_state, AlgebraSpec, AtomMove, PartitionState,
    RoundRecord, SizeLabel, SizedBooleanError, Transcript,
};
use crate::structure::FiniteStructure;

fn flush_transcript(
    lines: &str,
    path: Option<&str>,
    io: &mut dyn ReplIo,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, format!("{lines}\n"))?;
            io.write_line(&format!("transcript written to {p}"));
        }
        None => {
            io.write_line("transcript:");
            io.write_line(lines);
        }
    }
    Ok(())
}

fn show_pairs(play: &Play, io: &mut dyn ReplIo) {
    if play.pairs.is_empty() {
        io.write_line("pairs: (none)");
        return;
    }
    let s = play
        .pairs
        .iter()
        .map(|p| format!("({}, {})", p.m_element, p.n_element))
        .collect::<Vec<_>>()
        .join(" ");
    io.write_line(&format!("pairs: {s}"));
}

pub fn game_repl(
    m: &FiniteStructure,
    n: &FiniteStructure,
    rounds: usize,
    transcript_path: Option<&str>,
    io: &mut dyn ReplIo,
) -> Result<Output, CliError> {
    io.write_line(&format!(
        "You are Spoiler. Left structure M has {} elements, right structure N has {}.",
        m.universe(),
        n.universe()
    ));
    io.write_line("Moves: 'm <i>' or 'n <i>' to pick an element; 'quit' to stop.");
    let mut play = Play::new(rounds);
    let mut lines: Vec<String> = Vec::new();
    let mut round = 0usize;
    let winner = loop {
        match play.status(m, n) {
            PlayStatus::SpoilerWon => break "spoiler",
            PlayStatus::DuplicatorWon => break "duplicator",
            PlayStatus::InProgress => {}
        }
        show_pairs(&play, io);
        io.write_line(&format!(
            "round {} of {rounds}, your move:",
            round + 1
        ));
        let Some(line) = io.read_line() else { break "duplicator" };
        let line = line.trim().to_lowercase();
        if line == "quit" || line == "q" {
            break "duplicator";
        }
        let mv = match parse_game_move(&line) {
            Ok(mv) => mv,
            Err(msg) => {
                io.write_line(&format!("illegal input: {msg}"));
                continue;
            }
        };
        let after = match step_spoiler(m, n, &play, mv) {
            Ok(p) => p,
            Err(e) => {
                io.write_line(&format!("illegal move: {e}"));
                continue;
            }
        };
        round += 1;
        lines.push(game::transcript_line(round, mv.side, true, mv.element));
        let (answer, next) = auto_respond(m, n, &after)?;
        lines.push(game::transcript_line(round, mv.side.other(), false, answer));
        io.write_line(&format!("duplicator answers {answer}"));
        let ok = is_partial_embedding(m, n, &next.raw_pairs());
        io.write_line(&format!("partial embedding: {ok}"));
        play = next;
    };
    io.write_line(&format!("winner: {winner}"));
    flush_transcript(&lines.join("\n"), transcript_path, io)?;
    Ok(Output::new(
        json!({"winner": winner, "rounds_played": round}),
        format!("winner: {winner} after {round} rounds"),
    ))
}

fn parse_game_move(line: &str) -> Result<SpoilerMove, String> {
    let mut parts = line.split_whitespace();
    let side = match parts.next() {
        Some("m") => Side::M,
        Some("n") => Side::N,
        _ => return Err("expected 'm <i>' or 'n <i>'".into()),
    };
    let element = parts
        .next()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| "expected an element index".to_string())?;
    if parts.next().is_some() {
        return Err("too many tokens".into());
    }
    Ok(SpoilerMove { side, element })
}

fn show_atoms(state: &PartitionState, io: &mut dyn ReplIo) {
    let s = state
        .atoms
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{i}:({}, {})", p.left, p.right))
        .collect::<Vec<_>>()
        .join("  ");
    io.write_line(&format!("atoms: {s}"));
}

pub fn bagame_repl(
    left: AlgebraSpec,
    right: AlgebraSpec,
    rounds: u32,
    cap: Option<u32>,
    transcript_path: Option<&str>,
    io: &mut dyn ReplIo,
) -> Result<Output, CliError> {
    io.write_line(&format!(
        "You are Spoiler on the symbolic board: left = {}, right = {}.",
        left.name, right.name
    ));
    io.write_line(
        "Moves: '<left|right> <atom>:<part>/<copart> ...' with parts f<k>, inf, large; 'quit' to stop.",
    );
    let mut state = match cap {
        Some(cap) => PartitionState::initial_unbounded(left, right, cap),
        None => PartitionState::initial(left, right, rounds),
    };
    let mut transcript = Transcript::default();
    let mut outcome = "completed";
    while state.round < rounds {
        show_atoms(&state, io);
        io.write_line(&format!("round {} of {rounds}, your move:", state.round + 1));
        let Some(line) = io.read_line() else { break };
        let line = line.trim().to_lowercase();
        if line == "quit" || line == "q" {
            break;
        }
        let mv = match parse_bagame_move(&line, state.atoms.len()) {
            Ok(mv) => mv,
            Err(msg) => {
                io.write_line(&format!("illegal input: {msg}"));
                continue;
            }
        };
        match duplicator_respond(&state, &mv) {
            Ok((response, next)) => {
                let verified = verify_state(&next);
                io.write_line(&format!(
                    "duplicator answers {}",
                    describe_moves(&response)
                ));
                match state_violation(&next) {
                    None => io.write_line("condition (*) verified"),
                    Some(v) => io.write_line(&format!("condition (*) VIOLATED: {v}")),
                }
                transcript.records.push(RoundRecord {
                    round: next.round,
                    mv,
                    response,
                    atoms: next.atoms.clone(),
                    verified,
                });
                state = next;
            }
            Err(SizedBooleanError::IllegalMove(msg)) => {
                io.write_line(&format!("illegal move: {msg}"));
                continue;
            }
            Err(SizedBooleanError::Breakdown { round, reason, .. }) => {
                io.write_line(&format!("strategy breakdown at round {round}: {reason}"));
                outcome = "breakdown";
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    show_atoms(&state, io);
    io.write_line(&format!("session over after {} rounds ({outcome})", state.round));
    flush_transcript(&transcript.to_json_lines(), transcript_path, io)?;
    Ok(Output::new(
        json!({"outcome": outcome, "rounds_played": state.round}),
        format!("{outcome} after {} rounds", state.round),
    ))
}

fn describe_moves(moves: &[AtomMove]) -> String {
    moves
        .iter()
        .enumerate()
        .filter_map(|(i, m)| match m {
            AtomMove::Keep => None,
            AtomMove::Split(a, b) => Some(format!("{i}:({a}, {b})")),
        })
        .collect::<Vec<_>>()
        .join("  ")
}

fn parse_bagame_move(line: &str, atom_count: usize) -> Result<crate::sized_boolean::SpoilerMove, String> {
    let mut parts = line.split_whitespace();
    let side = match parts.next() {
        Some("left") | Some("l") => crate::sized_boolean::Side::Left,
        Some("right") | Some("r") => crate::sized_boolean::Side::Right,
        _ => return Err("expected 'left' or 'right'".into()),
    };
    let mut splits = vec![AtomMove::Keep; atom_count];
    let mut any = false;
    for token in parts {
        let (idx, rest) = token
            .split_once(':')
            .ok_or_else(|| format!("bad split '{token}', expected <atom>:<part>/<copart>"))?;
        let idx: usize = idx.parse().map_err(|_| format!("bad atom index '{idx}'"))?;
        if idx >= atom_count {
            return Err(format!("atom index {idx} out of range 0..{atom_count}"));
        }
        let (a, b) = rest
            .split_once('/')
            .ok_or_else(|| format!("bad split '{token}', expected <part>/<copart>"))?;
        splits[idx] = AtomMove::Split(parse_label(a)?, parse_label(b)?);
        any = true;
    }
    if !any {
        return Err("name at least one atom to split".into());
    }
    Ok(crate::sized_boolean::SpoilerMove { side, splits })
}

fn parse_label(s: &str) -> Result<SizeLabel, String> {
    match s {
        "inf" => Ok(SizeLabel::InfSmall),
        "large" => Ok(SizeLabel::Large),
        _ => {
            let k = s
                .strip_prefix('f')
                .and_then(|t| t.parse::<u64>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| format!("bad label '{s}' (f<k>, inf, large)"))?;
            Ok(SizeLabel::Fin(k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::ScriptIo;

    #[test]
    fn game_repl_three_rounds_duplicator_survives() {
        let m = FiniteStructure::linear_order(3);
        let n = FiniteStructure::linear_order(3);
        let mut io = ScriptIo::new(&["m 0", "n 2", "m 1"]);
        let out = game_repl(&m, &n, 3, None, &mut io).unwrap();
        assert_eq!(out.json["winner"], json!("duplicator"));
        assert_eq!(out.json["rounds_played"], json!(3));
        assert!(io.output.iter().any(|l| l.contains("partial embedding: true")));
    }

    #[test]
    fn game_repl_rejects_illegal_input_without_crashing() {
        let m = FiniteStructure::linear_order(2);
        let n = FiniteStructure::linear_order(2);
        let mut io = ScriptIo::new(&["zap", "m 99", "m 0", "quit"]);
        let out = game_repl(&m, &n, 2, None, &mut io).unwrap();
        assert!(io.output.iter().any(|l| l.contains("illegal input")));
        assert!(io.output.iter().any(|l| l.contains("illegal move")));
        assert_eq!(out.json["rounds_played"], json!(1));
    }

    #[test]
    fn game_repl_quit_flushes_transcript() {
        let m = FiniteStructure::linear_order(2);
        let n = FiniteStructure::linear_order(3);
        let mut io = ScriptIo::new(&["n 1", "quit"]);
        let out = game_repl(&m, &n, 5, None, &mut io).unwrap();
        assert_eq!(out.json["rounds_played"], json!(1));
        let t = io.output.iter().position(|l| l == "transcript:").unwrap();
        let lines = &io.output[t + 1];
        assert!(lines.contains("\"player\": \"I\""));
        assert!(lines.contains("\"player\": \"II\""));
    }

    #[test]
    fn bagame_repl_prints_star_verification() {
        let mut io = ScriptIo::new(&["left 0:inf/large", "right 1:large/large", "quit"]);
        let out = bagame_repl(
            AlgebraSpec::p_kappa(),
            AlgebraSpec::class_side(),
            5,
            None,
            None,
            &mut io,
        )
        .unwrap();
        assert_eq!(out.json["outcome"], json!("completed"));
        assert_eq!(out.json["rounds_played"], json!(2));
        assert_eq!(
            io.output.iter().filter(|l| l.contains("condition (*) verified")).count(),
            2
        );
    }

    #[test]
    fn bagame_repl_reports_breakdowns_as_results() {
        // aleph0 left side: create the lie pair then exhaust it; each
        // extraction shifts the remaining InfSmall pair one index right
        let mut input = vec!["right 0:inf/large".to_string()];
        for i in 0..10 {
            input.push(format!("right {i}:f1/inf"));
        }
        let refs: Vec<&str> = input.iter().map(|s| s.as_str()).collect();
        let mut io = ScriptIo::new(&refs);
        let out = bagame_repl(
            AlgebraSpec::aleph0_side(),
            AlgebraSpec::class_side(),
            50,
            Some(3),
            None,
            &mut io,
        )
        .unwrap();
        assert_eq!(out.json["outcome"], json!("breakdown"));
        assert!(io.output.iter().any(|l| l.contains("strategy breakdown")));
    }
}
