//! Engel check and a non-nilpotence witness in the unipotent group built
//! from V*(n).
use sandwichlab::constructions::{
    build_unipotent_group, matrix_left_engel_check, nonnilpotence_witness,
};
use sandwichlab::report::SamplingPolicy;

fn main() -> sandwichlab::Result<()> {
    let ctx = build_unipotent_group(4)?;
    let engel = matrix_left_engel_check(&ctx, 3, &SamplingPolicy::sampled(200, 1))?;
    println!(
        "n = 4: {} generators, a left 3-Engel: {:?}",
        ctx.generators().len(),
        engel.verdict
    );
    let w = nonnilpotence_witness(&ctx, 2, &SamplingPolicy::sampled(10_000, 1))?;
    println!(
        "depth 2 witness found {} after {} attempts",
        w.found, w.attempts
    );
    for (i, g) in w.conjugators.iter().enumerate() {
        println!("  g{} = {g}", i + 1);
    }
    Ok(())
}
