use std::fmt;

/// Exponent type used for words and normal forms.
pub type Exp = i64;

/// A word in the pc generators, read left to right.
///
/// Letters carry 0-based generator positions; the presentation maps positions
/// to the printed labels (`g<k>`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PcWord {
    letters: Vec<(usize, Exp)>,
}

impl PcWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a word, dropping zero exponents.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, Exp)>) -> Self {
        Self {
            letters: letters.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn generator(pos: usize) -> Self {
        Self {
            letters: vec![(pos, 1)],
        }
    }

    pub fn letters(&self) -> &[(usize, Exp)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &PcWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn push(&mut self, pos: usize, exp: Exp) {
        if exp != 0 {
            self.letters.push((pos, exp));
        }
    }

    /// Highest generator position mentioned, if any.
    pub fn max_position(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }
}

/// Canonical normal form `x_n^{e_n} ... x_1^{e_1}` stored as an exponent vector
/// indexed by generator position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PcElement {
    exps: Vec<Exp>,
}

impl PcElement {
    pub fn identity(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    pub fn generator(n: usize, pos: usize) -> Self {
        let mut exps = vec![0; n];
        exps[pos] = 1;
        Self { exps }
    }

    /// Wraps an exponent vector without normalizing it. Callers outside the
    /// collector should go through [`crate::pc::PcPresentation::element`].
    pub(crate) fn from_exponents_unchecked(exps: Vec<Exp>) -> Self {
        Self { exps }
    }

    pub fn exponents(&self) -> &[Exp] {
        &self.exps
    }

    pub fn exponent(&self, pos: usize) -> Exp {
        self.exps[pos]
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Position of the highest nonzero exponent (the depth of the element).
    pub fn leading(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    /// The normal-form word, highest position first.
    pub fn to_word(&self) -> PcWord {
        PcWord::from_letters(self.exps.iter().enumerate().rev().map(|(g, &e)| (g, e)))
    }
}

impl fmt::Display for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}
