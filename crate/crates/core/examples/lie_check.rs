//! Axioms, sandwich elements and the simple ideal of the algebra V, plus the
//! characteristic 2 example where axa = 0 does not suffice.
use sandwichlab::constructions::{build_char2_example, build_v, verify_simple_ideal};
use sandwichlab::lie::odd_char_redundancy_check;

fn main() -> sandwichlab::Result<()> {
    let v = build_v();
    println!(
        "V: axioms {}, center dim {}",
        v.check_axioms().passed(),
        v.center().len()
    );
    let gens = ["x", "u", "v", "w"]
        .map(|s| v.named(s))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    println!("enveloping dimension {}", v.enveloping_dimension(&gens)?);
    let ideal = verify_simple_ideal(&v, &gens[1..])?;
    println!("span(u, v, w) simple: {}", ideal.simple);

    let l = build_char2_example(6)?;
    for name in ["a", "b", "u0"] {
        let x = l.named(name)?;
        let r = odd_char_redundancy_check(&l, &x)?;
        println!(
            "{name}: sandwich {}, check {:?} {:?}",
            l.is_sandwich_element(&x)?,
            r.verdict,
            r.counterexample
        );
    }
    Ok(())
}
