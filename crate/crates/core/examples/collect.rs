//! Collects a word in r_inv to normal form and shows a commutator.
use sandwichlab::catalog::builtin;
use sandwichlab::pc::PcWord;

fn main() -> sandwichlab::Result<()> {
    let p = builtin("r_inv")?.presentation;
    let w: PcWord = p.parse_word("g12 g14")?;
    let nf = p.collect(&w)?;
    println!("g12 g14 -> {}", p.format_element(&nf));
    let c = p.commutator(&p.gen(11)?, &p.gen(14)?)?;
    println!("[g11, g14] = {}", p.format_element(&c));
    Ok(())
}
