//! The symbolic game on Boolean algebras with ideals.
//!
//! The board pairs atoms of the two algebras by size label, and the
//! built-in Duplicator mirrors every cut, keeping condition (*): an
//! element is small on one side exactly when its partner is small on the
//! other, with finite cardinalities matched exactly.
//!
//! With infinite-small elements on both sides the strategy survives any
//! adversary. When one ideal is exactly the finite sets and play is
//! unbounded, an extraction attack eventually exhausts the horizon
//! answer — the engine reports that as a detectable breakdown.
//!
//! Run with: cargo run --example symbolic_duplicator

use eflab::sized_boolean::{
    run_adversarial, Adversary, AlgebraSpec, PartitionState, SizedBooleanError,
};

fn main() {
    // the default pairing: a powerset algebra with ideal [k]^{<l} against
    // the class side with the ideal of sets; both ideals contain infinite
    // members
    let initial =
        PartitionState::initial(AlgebraSpec::p_kappa(), AlgebraSpec::class_side(), 12);
    let t = run_adversarial(initial, 12, Adversary::Random { max_splits: 2 }, 7).unwrap();
    println!("random adversary, 12 rounds on the default pair:");
    for r in &t.records {
        let atoms = r
            .atoms
            .iter()
            .map(|p| format!("({},{})", p.left, p.right))
            .collect::<Vec<_>>()
            .join(" ");
        println!("  round {:2} verified={} {atoms}", r.round, r.verified);
    }
    assert!(t.records.iter().all(|r| r.verified));

    // the same strategy against the extraction attack, bounded horizon:
    // the 2^r answer outlives the game
    let initial =
        PartitionState::initial(AlgebraSpec::aleph0_side(), AlgebraSpec::class_side(), 6);
    let t = run_adversarial(initial, 6, Adversary::SingletonExtraction, 0).unwrap();
    println!("\nextraction attack, lambda = aleph_0 side, 6 bounded rounds:");
    for r in &t.records {
        let atoms = r
            .atoms
            .iter()
            .map(|p| format!("({},{})", p.left, p.right))
            .collect::<Vec<_>>()
            .join(" ");
        println!("  round {:2} verified={} {atoms}", r.round, r.verified);
    }

    // unbounded play with a fixed cap: the finite answer runs out
    let initial = PartitionState::initial_unbounded(
        AlgebraSpec::aleph0_side(),
        AlgebraSpec::class_side(),
        3,
    );
    match run_adversarial(initial, 50, Adversary::SingletonExtraction, 0) {
        Err(SizedBooleanError::Breakdown { round, reason, transcript }) => {
            println!(
                "\nunbounded play with cap 3: breakdown at round {round} after {} clean rounds",
                transcript.records.len()
            );
            println!("  reason: {reason}");
        }
        other => panic!("expected the horizon to be exhausted, got {other:?}"),
    }
}
