//! Brute-force Ehrenfeucht–Fraïssé games on finite linear orders.
//!
//! The minimax engine settles the n-round game exactly. On linear orders
//! the classical picture emerges: Duplicator survives n rounds on L_m vs
//! L_k exactly when m = k or both sizes are at least 2^n - 1.
//!
//! Run with: cargo run --example finite_ef_games

use eflab::game::{
    auto_respond, ef_rank_distinguishing, is_partial_embedding, step_spoiler, who_wins,
    GameOutcome, Play, RankResult, Side, SpoilerMove,
};
use eflab::structure::FiniteStructure;

fn main() {
    println!("who wins G_n(L_m, L_k)?  (D = Duplicator, S = Spoiler)\n");
    print!("  m\\k |");
    for k in 1..=8 {
        print!("  {k} ");
    }
    println!("   (3 rounds)");
    println!("  ----+{}", "----".repeat(8));
    for m in 1..=8usize {
        print!("   {m}  |");
        for k in 1..=8usize {
            let lm = FiniteStructure::linear_order(m);
            let lk = FiniteStructure::linear_order(k);
            let outcome = who_wins(&lm, &lk, 3).unwrap();
            let c = match outcome {
                GameOutcome::DuplicatorWins => 'D',
                GameOutcome::SpoilerWins(_) => 'S',
            };
            // classical criterion: D iff m = k or min(m, k) >= 2^3 - 1
            assert_eq!(c == 'D', m == k || m.min(k) >= 7);
            print!("  {c} ");
        }
        println!();
    }

    println!("\nleast distinguishing round counts:");
    for (m, k) in [(1, 2), (2, 3), (3, 4), (4, 8), (7, 8)] {
        let lm = FiniteStructure::linear_order(m);
        let lk = FiniteStructure::linear_order(k);
        match ef_rank_distinguishing(&lm, &lk, 5).unwrap() {
            RankResult::Rank(r) => println!("  L{m} vs L{k}: Spoiler needs {r} rounds"),
            RankResult::Indistinguishable => {
                println!("  L{m} vs L{k}: indistinguishable within 5 rounds")
            }
        }
    }

    // step through a short game with the built-in Duplicator answering
    println!("\na stepped 2-round game on L3 vs L4, Spoiler playing the ends of L4:");
    let m = FiniteStructure::linear_order(3);
    let n = FiniteStructure::linear_order(4);
    let mut play = Play::new(2);
    for spoiler_pick in [0usize, 3] {
        play = step_spoiler(&m, &n, &play, SpoilerMove { side: Side::N, element: spoiler_pick })
            .unwrap();
        let (answer, next) = auto_respond(&m, &n, &play).unwrap();
        println!("  Spoiler: N element {spoiler_pick}; Duplicator answers M element {answer}");
        play = next;
    }
    let ok = is_partial_embedding(&m, &n, &play.raw_pairs());
    println!("  pairing {:?} is a partial embedding: {ok}", play.raw_pairs());
}
