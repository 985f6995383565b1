//! Replays the stored commutator identities of r_inv, beta and gamma.
use sandwichlab::catalog::lemma_replay;

fn main() -> sandwichlab::Result<()> {
    let r = lemma_replay("all")?;
    for o in &r.items {
        let mark = if o.matches { "ok" } else { "MISMATCH" };
        println!(
            "{:6} {} = {} [{mark}]",
            o.group,
            o.input,
            o.computed.as_deref().unwrap_or("?")
        );
    }
    println!("{} mismatches", r.mismatches);
    Ok(())
}
