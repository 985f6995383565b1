//! Sandwich and strong sandwich checks, with the dihedral negative control.
use sandwichlab::catalog::builtin;
use sandwichlab::engel::{is_sandwich_set, is_strong_sandwich_set};
use sandwichlab::report::SamplingPolicy;

fn main() -> sandwichlab::Result<()> {
    let pol = SamplingPolicy::sampled(300, 7);
    for key in ["r_inv", "d8", "d16"] {
        let e = builtin(key)?;
        let xs = e.generator_set()?;
        let plain = is_sandwich_set(&e.presentation, &xs, &pol)?;
        let strong = is_strong_sandwich_set(&e.presentation, &xs, &pol)?;
        println!(
            "{key}: sandwich {:?}, strong {:?}",
            plain.verdict, strong.verdict
        );
        if let Some(w) = plain.counterexample {
            println!("  witness {w:?}");
        }
    }
    Ok(())
}
