use super::algebra::{LieAlgebra, LieElement};
use crate::error::Result;
use crate::report::{witness, Mode, SamplingPolicy, Verdict, VerdictReport};

/// Whether `axya = 0` is implied by `axa = 0` for this `a`.
///
/// In odd characteristic the expansion `x(yaa) = xyaa - 2xaya + xaay` is
/// checked on every basis pair together with `axya = 0`. In characteristic 2
/// the basis pairs are searched for `axya != 0`, reported as a failure.
/// Vacuous when `a = 0` or when `axa = 0` does not hold.
pub fn odd_char_redundancy_check(l: &LieAlgebra, a: &LieElement) -> Result<VerdictReport> {
    const CHECK: &str = "odd-characteristic redundancy";
    let pol = SamplingPolicy {
        mode: Mode::Exhaustive,
        ..SamplingPolicy::default()
    };
    if a.is_zero() {
        return Ok(VerdictReport::vacuous(CHECK, &pol, "a = 0"));
    }
    let n = l.dim();
    let basis: Vec<LieElement> = (0..n).map(|i| l.basis(i)).collect();
    for x in &basis {
        if !l.left_normed(&[a, x, a])?.is_zero() {
            let note = format!("a x a = 0 fails at x = {}", l.format(x));
            return Ok(VerdictReport::vacuous(CHECK, &pol, note));
        }
    }
    let mut report = VerdictReport {
        check: CHECK.into(),
        verdict: Verdict::Pass,
        mode: Mode::Exhaustive,
        samples: 0,
        seed: pol.seed,
        inconclusive: 0,
        counterexample: None,
        notes: vec![format!("characteristic {}", l.characteristic())],
    };
    for x in &basis {
        for y in &basis {
            report.samples += 1;
            let axya = l.left_normed(&[a, x, y, a])?;
            let expansion_holds = l.characteristic() == 2 || {
                let lhs = l.bracket(x, &l.left_normed(&[y, a, a])?)?;
                let rhs = l.add(
                    &l.sub(
                        &l.left_normed(&[x, y, a, a])?,
                        &l.scale(2, &l.left_normed(&[x, a, y, a])?),
                    ),
                    &l.left_normed(&[x, a, a, y])?,
                );
                lhs == rhs
            };
            if !axya.is_zero() || !expansion_holds {
                report.verdict = Verdict::Fail;
                report.counterexample = Some(witness([
                    ("x", l.format(x)),
                    ("y", l.format(y)),
                    ("axya", l.format(&axya)),
                ]));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_char2_example;
    use crate::lie::parse_lie;

    #[test]
    fn char2_example_needs_the_second_condition() {
        let l = build_char2_example(4).unwrap();
        let r = odd_char_redundancy_check(&l, &l.named("a").unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.counterexample.unwrap();
        assert_eq!(
            (w["x"].as_str(), w["y"].as_str(), w["axya"].as_str()),
            ("b", "u0", "v2")
        );
        let c = odd_char_redundancy_check(&l, &l.named("u0").unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(
            odd_char_redundancy_check(&l, &l.zero()).unwrap().verdict,
            Verdict::Vacuous
        );
    }

    #[test]
    fn odd_characteristic_follows() {
        // Heisenberg algebra over GF(3): z is central, so every element of the
        // derived algebra satisfies a x a = 0.
        let l = parse_lie("char 3\ndim 3\nbasis p q z\n1 2 : 3\nend\n").unwrap();
        let r = odd_char_redundancy_check(&l, &l.named("z").unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.samples, 9);
        let p = odd_char_redundancy_check(&l, &l.named("p").unwrap()).unwrap();
        assert_eq!(p.verdict, Verdict::Pass);
    }
}
