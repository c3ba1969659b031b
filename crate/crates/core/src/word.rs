//! Free-group words on meridian generators `x1 .. xm`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u16, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: u16) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: u16) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group on `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u16,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: u16) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: u16, gen: u16) -> Result<Self> {
        Self::from_letters(rank, vec![Letter::pos(gen)])
    }

    /// Builds a word from raw letters, freely reducing them.
    pub fn from_letters(rank: u16, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if l.gen == 0 || l.gen > rank {
                return Err(Error::GeneratorOutOfRange { gen: l.gen, rank });
            }
        }
        Ok(Word { rank, letters: free_reduce(letters) })
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank: self.rank, letters })
    }

    /// `u v u^-1 v^-1`, freely reduced.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        let mut letters = Vec::with_capacity(2 * (self.len() + other.len()));
        for &l in self
            .letters
            .iter()
            .chain(&other.letters)
            .chain(self.inverse().letters.iter())
            .chain(other.inverse().letters.iter())
        {
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank: self.rank, letters })
    }

    /// `c w c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Result<Word> {
        c.mul(self)?.mul(&c.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..n.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word { rank: self.rank, letters }
    }

    /// Sum of the exponents of generator `gen`.
    pub fn exponent_sum(&self, gen: u16) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.sign()).sum()
    }

    /// Substitutes `images[g-1]` for every occurrence of generator `g`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let rank = images.first().map(|w| w.rank).unwrap_or(self.rank);
        let mut letters = Vec::new();
        for &l in &self.letters {
            let img = images
                .get(usize::from(l.gen) - 1)
                .ok_or(Error::GeneratorOutOfRange { gen: l.gen, rank: images.len() as u16 })?;
            if l.inverse {
                for &x in img.letters.iter().rev() {
                    push_reduced(&mut letters, x.inv());
                }
            } else {
                for &x in &img.letters {
                    push_reduced(&mut letters, x);
                }
            }
        }
        Ok(Word { rank, letters })
    }

    /// If the word is `w x_gen w^-1` (as a reduced word), returns `w`.
    pub fn split_conjugate(&self, gen: u16) -> Option<Word> {
        let n = self.letters.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let mid = n / 2;
        if self.letters[mid] != Letter::pos(gen) {
            return None;
        }
        let (left, right) = (&self.letters[..mid], &self.letters[mid + 1..]);
        let matches = left.iter().zip(right.iter().rev()).all(|(a, b)| *a == b.inv());
        matches.then(|| Word { rank: self.rank, letters: left.to_vec() })
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank as usize, right: other.rank as usize });
        }
        Ok(())
    }

    /// Parses `x1 x2^-1 ...` against an explicit rank.
    pub fn parse(rank: u16, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let (gen, inverse) = parse_token(tok, 'x').ok_or_else(|| Error::Parse {
                location: format!("token {}", pos + 1),
                message: format!("unknown token `{tok}`"),
            })?;
            letters.push(Letter::new(gen, inverse));
        }
        Word::from_letters(rank, letters)
    }
}

/// Parses tokens such as `x3`, `x3^-1` or `s2^-1` with the given prefix.
pub(crate) fn parse_token(tok: &str, prefix: char) -> Option<(u16, bool)> {
    let rest = tok.strip_prefix(prefix)?;
    let (num, inverse) = match rest.split_once('^') {
        Some((n, "-1")) => (n, true),
        Some((n, "1")) => (n, false),
        Some(_) => return None,
        None => (rest, false),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let gen: u16 = num.parse().ok()?;
    (gen > 0).then_some((gen, inverse))
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last().is_some_and(|&last| last.cancels(l)) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// Free reduction via a stack.
pub fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.gen)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses with the rank inferred as the largest generator index.
    fn from_str(s: &str) -> Result<Self> {
        let mut rank = 0;
        for tok in s.split_whitespace() {
            if let Some((g, _)) = parse_token(tok, 'x') {
                rank = rank.max(g);
            }
        }
        Word::parse(rank, s)
    }
}
