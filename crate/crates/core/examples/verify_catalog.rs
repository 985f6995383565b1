//! Recomputes the recorded invariants of every small catalog entry.
use sandwichlab::catalog::verify_builtin;
use sandwichlab::report::SamplingPolicy;
use sandwichlab::subgroup::DEFAULT_MAX_CLASS;

fn main() -> sandwichlab::Result<()> {
    let pol = SamplingPolicy::sampled(200, 1);
    for key in ["r_inv", "graph4a", "graph4b", "d16"] {
        let r = verify_builtin(key, &pol, DEFAULT_MAX_CLASS)?;
        println!(
            "{key:8} order {:?} class {:?} sandwich ok {} -> {}",
            r.order.computed.map(|o| o.to_string()),
            r.class.computed,
            r.sandwich.ok,
            if r.passed { "passed" } else { "MISMATCH" }
        );
    }
    Ok(())
}
