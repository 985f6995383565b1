//! Left Engel degrees of the generators of r_inv, and the power identity.
use sandwichlab::catalog::builtin;
use sandwichlab::engel::{engel_power_identity_check, is_left_n_engel};
use sandwichlab::report::SamplingPolicy;

fn main() -> sandwichlab::Result<()> {
    let e = builtin("r_inv")?;
    let p = &e.presentation;
    let pol = SamplingPolicy::sampled(200, 3);
    for (name, a) in e.named_generators()? {
        let degree =
            (1..=4).find(|&n| is_left_n_engel(p, &a, n, &pol).is_ok_and(|r| r.verdict.is_pass()));
        let identity = engel_power_identity_check(p, &a, 1..=4, &pol)?;
        println!(
            "{name}: left {degree:?}-Engel, power identity {:?}",
            identity.verdict
        );
    }
    Ok(())
}
