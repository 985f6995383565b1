//! A non-nilpotent Lie algebra over GF(2) generated by elements `a, b, c`
//! with `axa = bxb = cxc = 0`, truncated to finite dimension.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;

/// Largest truncation index accepted by [`build_char2_example`].
pub const CHAR2_CAP: usize = 64;

/// Basis `a, b, y, u0..uN, v1..v(N+1)` with `y = ab`, `u_n = c(ab)^n` and
/// `v_{n+1} = c(ab)^n a`. Products that would leave the basis are zero, which
/// is the quotient by the ideal spanned by the higher `u` and `v`.
pub fn build_char2_example(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::Precondition(
            "truncation index must be at least 1".into(),
        ));
    }
    if n > CHAR2_CAP {
        return Err(Error::CapExceeded(format!(
            "truncation index {n} exceeds {CHAR2_CAP}"
        )));
    }
    let (a, b, y) = (0, 1, 2);
    let u = |k: usize| (k <= n).then_some(3 + k);
    let v = |k: usize| (1..=n + 1).contains(&k).then(|| 3 + (n + 1) + (k - 1));

    let mut names = vec!["a".to_string(), "b".into(), "y".into()];
    names.extend((0..=n).map(|k| format!("u{k}")));
    names.extend((1..=n + 1).map(|k| format!("v{k}")));
    let mut l = LieAlgebra::new(2, names)?;

    let mut set = |i: usize, j: usize, k: Option<usize>| -> Result<()> {
        match k {
            Some(k) => l.set_product(i, j, &[(k, 1)]),
            None => Ok(()),
        }
    };
    set(a, b, Some(y))?;
    for k in 0..=n {
        let uk = u(k).expect("in range");
        set(uk, a, v(k + 1))?;
        set(uk, y, u(k + 1))?;
    }
    for k in 1..=n + 1 {
        let vk = v(k).expect("in range");
        set(vk, b, u(k))?;
        set(vk, y, v(k + 1))?;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        let l = build_char2_example(1).unwrap();
        let e = |s: &str| l.named(s).unwrap();
        assert_eq!(l.bracket(&e("u0"), &e("y")).unwrap(), e("u1"));
        assert!(l.bracket(&e("y"), &e("a")).unwrap().is_zero());
        assert!(l.bracket(&e("u1"), &e("y")).unwrap().is_zero());
        assert_eq!(l.bracket(&e("v2"), &e("b")).unwrap(), l.zero());
        assert_eq!(l.bracket(&e("v1"), &e("b")).unwrap(), e("u1"));
        assert_eq!(l.dim(), 7);
        assert!(build_char2_example(0).is_err());
        assert!(build_char2_example(CHAR2_CAP + 1).is_err());
    }

    #[test]
    fn jacobi_holds_through_the_truncation() {
        for n in 1..=10 {
            let report = build_char2_example(n).unwrap().check_axioms();
            assert!(report.passed(), "N = {n}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn only_c_satisfies_both_sandwich_conditions() {
        let l = build_char2_example(6).unwrap();
        let e = |s: &str| l.named(s).unwrap();
        // a u_n b a = v_{n+2}: the second condition fails for a and b.
        assert!(!l.is_sandwich_element(&e("a")).unwrap());
        assert!(!l.is_sandwich_element(&e("b")).unwrap());
        assert!(l.is_sandwich_element(&e("u0")).unwrap());
        let w = l
            .left_normed(&[&e("a"), &e("u0"), &e("b"), &e("a")])
            .unwrap();
        assert_eq!(w, e("v2"));
    }

    #[test]
    fn u_chain_keeps_the_series_alive() {
        let l = build_char2_example(10).unwrap();
        let series = l.lower_central_series_upto(10);
        assert_eq!(series.len(), 10);
        assert!(series.iter().all(|t| !t.is_empty()));
    }
}
