use std::fmt;

use num_bigint::BigUint;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::Result;
use crate::pc::{PcElement, PcPresentation};

/// A group or element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite(n: u64) -> Self {
        Order::Finite(BigUint::from(n))
    }

    pub fn prime_power(p: u64, k: u32) -> Self {
        Order::Finite(BigUint::from(p).pow(k))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    /// `(p, k)` when the order is `p^k` for a prime `p` below 2^16 and `k >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        let Order::Finite(n) = self else { return None };
        let one = BigUint::from(1u32);
        if *n <= one {
            return None;
        }
        let p = (2u64..1 << 16).find(|&p| (n % p) == BigUint::from(0u32))?;
        let mut m = n.clone();
        let mut k = 0;
        while &m % p == BigUint::from(0u32) {
            m /= p;
            k += 1;
        }
        (m == one).then_some((p, k))
    }

    pub fn mul(&self, other: &Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a * b),
            _ => Order::Infinite,
        }
    }

    pub fn divides(&self, other: &Order) -> bool {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => b % a == BigUint::from(0u32),
            (Order::Finite(_), Order::Infinite) => true,
            (Order::Infinite, _) => false,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Infinite => write!(f, "infinite"),
            Order::Finite(n) => match self.as_prime_power() {
                Some((p, k)) if k > 1 => write!(f, "{p}^{k}"),
                _ => write!(f, "{n}"),
            },
        }
    }
}

/// Prime powers as `{"base": p, "exp": k}`, other finite orders as a decimal
/// string, and `"infinite"`.
impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (self, self.as_prime_power()) {
            (Order::Infinite, _) => s.serialize_str("infinite"),
            (_, Some((p, k))) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("base", &p)?;
                m.serialize_entry("exp", &k)?;
                m.end()
            }
            (Order::Finite(n), None) => s.serialize_str(&n.to_string()),
        }
    }
}

impl PcPresentation {
    /// Product of the relative orders; meaningful once the presentation is
    /// known to be consistent.
    pub fn group_order(&self) -> Order {
        if !self.is_finite() {
            return Order::Infinite;
        }
        Order::Finite(self.rel_orders.iter().map(|&o| BigUint::from(o)).product())
    }

    /// Order of `a`: with leading generator `x_j` of finite relative order `o`
    /// and leading exponent `e`, `a^m` (m = o / gcd(e, o)) lies strictly
    /// deeper, so the order is `m` times the order of `a^m`.
    pub fn element_order(&self, a: &PcElement) -> Result<Order> {
        let mut acc = BigUint::from(1u32);
        let mut cur = a.clone();
        while let Some(j) = cur.leading() {
            let o = self.rel_orders[j];
            if o == 0 {
                return Ok(Order::Infinite);
            }
            let e = cur.exponent(j).unsigned_abs();
            let m = o / num_integer_gcd(e, o);
            acc *= m;
            cur = self.power(&cur, m as i64)?;
        }
        Ok(Order::Finite(acc))
    }
}

fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(Order::prime_power(2, 28).as_prime_power(), Some((2, 28)));
        assert_eq!(Order::finite(12).as_prime_power(), None);
        assert_eq!(Order::finite(1).as_prime_power(), None);
        assert_eq!(Order::prime_power(2, 13).to_string(), "2^13");
        assert_eq!(Order::finite(2).to_string(), "2");
        assert_eq!(Order::finite(12).to_string(), "12");
    }

    #[test]
    fn serializes_exactly() {
        let j = serde_json::to_string(&Order::prime_power(2, 28)).unwrap();
        assert_eq!(j, r#"{"base":2,"exp":28}"#);
        assert_eq!(
            serde_json::to_string(&Order::Infinite).unwrap(),
            r#""infinite""#
        );
        assert_eq!(serde_json::to_string(&Order::finite(1)).unwrap(), r#""1""#);
    }
}
