mod common;

use common::{soundness_campaign, soundness_corpus};

#[test]
fn verified_proofs_are_sound_and_mutants_die() {
    let corpus = soundness_corpus(500, 11);
    let c = soundness_campaign(&corpus, 10, 12, &Default::default());
    println!("{c:?}");
    let strict = pbforge::checker::CheckOptions { strict_hints: true };
    let s = soundness_campaign(&corpus, 10, 12, &strict);
    println!("strict {s:?}");
    assert!(c.unsound.is_empty());
    assert!(c.unsound_mutants.is_empty());
    assert!(c.verified_unsat > 50);
}

