use std::fmt;

/// Square matrix over GF(p), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoMatrix {
    n: usize,
    p: u64,
    data: Vec<u64>,
}

impl EndoMatrix {
    pub fn zero(n: usize, p: u64) -> Self {
        Self {
            n,
            p,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zero(n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.n + c] = v % self.p;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        Self { data, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        Self { data, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d = (*d + a * b) % self.p;
                }
            }
        }
        Self { data: out, ..*self }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_p() {
        let mut m = EndoMatrix::zero(2, 3);
        m.set(0, 1, 1);
        let one = EndoMatrix::identity(2, 3);
        let u = one.add(&m);
        assert_eq!(u.pow(3), one);
        assert!(m.pow(2).is_zero());
        assert_eq!(u.sub(&one), m);
        assert_eq!(u.mul(&u).get(0, 1), 2);
    }
}
