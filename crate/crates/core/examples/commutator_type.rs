//! Types of a few commutators in x and the letters a_i.
use sandwichlab::constructions::{commutator_type, multi_weight, relation4_filter, CommutatorTree};

fn main() -> sandwichlab::Result<()> {
    for s in [
        "[x,a1]",
        "[x,a1,a2]",
        "[x,a1,a2,a3]",
        "[[x,a1],[x,a2],a3]",
        "[a1,a2]",
    ] {
        let t: CommutatorTree = s.parse()?;
        let w = multi_weight(&t);
        println!(
            "{t}: m = {}, e = {:?}, type {}, killed {}",
            w.m,
            w.e,
            commutator_type(&t),
            relation4_filter(&t)
        );
    }
    Ok(())
}
