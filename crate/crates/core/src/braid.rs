//! Braid words and the Artin action on the free group.
//!
//! A braid word is read top to bottom and `b1 * b2` draws `b1` above `b2`.
//! Strands are oriented upward. The generator `s_k` is the positive crossing
//! in which the strand running from bottom position `k` to top position `k+1`
//! passes over the other one.
//!
//! The Artin image `phi_b(x_i)` expresses the meridian at top position `i` in
//! the meridians at the bottom of the braid. With this convention
//! `phi_{b1 b2} = phi_{b2} . phi_{b1}` (apply `phi_{b1}` first, then
//! substitute `phi_{b2}` for each letter).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{parse_token, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    gens: Vec<Letter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, gens: Vec::new() }
    }

    pub fn new(strands: usize, gens: Vec<Letter>) -> Result<Self> {
        for g in &gens {
            if g.gen == 0 || usize::from(g.gen) >= strands {
                return Err(Error::GeneratorOutOfRange {
                    gen: g.gen,
                    rank: strands.saturating_sub(1) as u16,
                });
            }
        }
        Ok(BraidWord { strands, gens })
    }

    /// `s_k^e` on the given number of strands.
    pub fn sigma(strands: usize, k: u16, exponent: i64) -> Result<Self> {
        let letter = Letter::new(k, exponent < 0);
        BraidWord::new(strands, vec![letter; exponent.unsigned_abs() as usize])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn gens(&self) -> &[Letter] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Stacks `self` above `other`, cancelling at the junction.
    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch { left: self.strands, right: other.strands });
        }
        let mut gens = self.gens.clone();
        for &g in &other.gens {
            if gens.last().is_some_and(|&l| l == g.inv()) {
                gens.pop();
            } else {
                gens.push(g);
            }
        }
        Ok(BraidWord { strands: self.strands, gens })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            gens: self.gens.iter().rev().map(|g| g.inv()).collect(),
        }
    }

    /// `c b c^-1`.
    pub fn conjugate(&self, c: &BraidWord) -> Result<BraidWord> {
        c.multiply(self)?.multiply(&c.inverse())
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, other: &BraidWord) -> Result<BraidWord> {
        self.multiply(other)?.multiply(&self.inverse())?.multiply(&other.inverse())
    }

    pub fn pow(&self, n: usize) -> BraidWord {
        let mut out = BraidWord::identity(self.strands);
        for _ in 0..n {
            out = out.multiply(self).expect("same strand count");
        }
        out
    }

    /// `perm[p-1]` is the bottom position (1-based) of the strand starting at
    /// top position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        // at_pos[q] = top position of the strand currently at position q
        let mut at_pos: Vec<usize> = (0..self.strands).collect();
        for g in &self.gens {
            let k = usize::from(g.gen) - 1;
            at_pos.swap(k, k + 1);
        }
        let mut perm = vec![0; self.strands];
        for (q, &top) in at_pos.iter().enumerate() {
            perm[top] = q + 1;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| p == i + 1)
    }

    pub fn require_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::NonPureBraid(self.permutation()))
        }
    }

    /// Images `phi_b(x_1), ..., phi_b(x_s)` under the Artin action.
    pub fn artin_images(&self) -> Vec<Word> {
        let rank = self.strands as u16;
        let mut img: Vec<Word> =
            (1..=rank).map(|g| Word::generator(rank, g).expect("in range")).collect();
        // phi_{s b'} = phi_{b'} . phi_s, so fold from the bottom letter upward.
        for g in self.gens.iter().rev() {
            let k = usize::from(g.gen) - 1;
            let (a, b) = (img[k].clone(), img[k + 1].clone());
            if g.inverse {
                // x_k -> x_{k+1}, x_{k+1} -> x_{k+1}^-1 x_k x_{k+1}
                img[k + 1] = a.conjugate_by(&b.inverse()).expect("same rank");
                img[k] = b;
            } else {
                // x_k -> x_k x_{k+1} x_k^-1, x_{k+1} -> x_k
                img[k] = b.conjugate_by(&a).expect("same rank");
                img[k + 1] = a;
            }
        }
        img
    }

    /// `phi_b(x_i)` for a 1-based strand index.
    pub fn artin_image(&self, i: usize) -> Result<Word> {
        if i == 0 || i > self.strands {
            return Err(Error::StrandOutOfRange { index: i, strands: self.strands });
        }
        Ok(self.artin_images().swap_remove(i - 1))
    }

    /// Half the signed crossing count between strands `i` and `j` of a pure
    /// braid closure.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.require_pure()?;
        for idx in [i, j] {
            if idx == 0 || idx > self.strands {
                return Err(Error::ComponentOutOfRange { index: idx, components: self.strands });
            }
        }
        let mut at_pos: Vec<usize> = (1..=self.strands).collect();
        let mut total = 0i64;
        for g in &self.gens {
            let k = usize::from(g.gen) - 1;
            let pair = (at_pos[k], at_pos[k + 1]);
            if pair == (i, j) || pair == (j, i) {
                total += g.sign();
            }
            at_pos.swap(k, k + 1);
        }
        Ok(total / 2)
    }

    /// Parses `s1 s2^-1 ...` on an explicit number of strands.
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord> {
        let mut gens = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let (k, inverse) = parse_token(tok, 's').ok_or_else(|| Error::Parse {
                location: format!("token {}", pos + 1),
                message: format!("unknown token `{tok}`"),
            })?;
            gens.push(Letter::new(k, inverse));
        }
        BraidWord::new(strands, gens)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}", g.gen)?;
            if g.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses with the strand count inferred as one more than the largest
    /// generator index.
    fn from_str(s: &str) -> Result<Self> {
        let mut top = 0usize;
        for tok in s.split_whitespace() {
            if let Some((k, _)) = parse_token(tok, 's') {
                top = top.max(usize::from(k));
            }
        }
        BraidWord::parse(top + 1, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br() -> BraidWord {
        BraidWord::parse(3, "s2 s1^-1 s2 s1^-1 s2 s1^-1").unwrap()
    }

    fn w(rank: u16, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn borromean_braid_is_pure() {
        assert!(br().is_pure());
        assert!(!BraidWord::parse(2, "s1").unwrap().is_pure());
    }

    #[test]
    fn inverse_and_cancel() {
        let b = BraidWord::parse(3, "s1 s2").unwrap();
        assert_eq!(b.inverse().to_string(), "s2^-1 s1^-1");
        let id = b.multiply(&b.inverse()).unwrap();
        assert!(id.is_empty());
        assert!(id.is_pure());
        assert_eq!(id.artin_images(), BraidWord::identity(3).artin_images());
    }

    #[test]
    fn artin_examples() {
        let id = BraidWord::identity(3);
        assert_eq!(id.artin_image(2).unwrap(), w(3, "x2"));
        let s1 = BraidWord::parse(2, "s1").unwrap();
        assert_eq!(s1.artin_image(1).unwrap(), w(2, "x1 x2 x1^-1"));
        // phi_{s1}(phi_{s1}(x1)) = phi(x1) phi(x2) phi(x1)^-1
        //   = (x1 x2 x1^-1) x1 (x1 x2^-1 x1^-1) = x1 x2 x1 x2^-1 x1^-1
        let s11 = BraidWord::parse(2, "s1 s1").unwrap();
        assert_eq!(s11.artin_image(1).unwrap(), w(2, "x1 x2 x1 x2^-1 x1^-1"));
        assert!(matches!(s1.artin_image(3), Err(Error::StrandOutOfRange { .. })));
    }

    #[test]
    fn artin_composition_order() {
        let b1 = BraidWord::parse(3, "s1 s2^-1").unwrap();
        let b2 = BraidWord::parse(3, "s2 s2 s1").unwrap();
        let prod = b1.multiply(&b2).unwrap();
        let imgs2 = b2.artin_images();
        for i in 1..=3 {
            let expect = b1.artin_image(i).unwrap().substitute(&imgs2).unwrap();
            assert_eq!(prod.artin_image(i).unwrap(), expect);
        }
    }

    #[test]
    fn product_of_generators_is_fixed() {
        let b = BraidWord::parse(4, "s1 s3^-1 s2 s2 s1^-1 s3").unwrap();
        let prod = w(4, "x1 x2 x3 x4");
        assert_eq!(prod.substitute(&b.artin_images()).unwrap(), prod);
    }

    #[test]
    fn pure_images_are_conjugates() {
        for (i, img) in br().artin_images().iter().enumerate() {
            assert!(img.split_conjugate(i as u16 + 1).is_some(), "{img}");
        }
    }

    #[test]
    fn linking_numbers() {
        let hopf = BraidWord::parse(2, "s1 s1").unwrap();
        assert_eq!(hopf.linking_number(1, 2).unwrap(), 1);
        assert_eq!(BraidWord::parse(2, "s1 s1 s1 s1").unwrap().linking_number(2, 1).unwrap(), 2);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(br().linking_number(i, j).unwrap(), 0);
        }
        assert!(BraidWord::parse(2, "s1").unwrap().linking_number(1, 2).is_err());
    }

    #[test]
    fn parse_print() {
        let text = "s2 s1^-1 s2 s1^-1 s2 s1^-1";
        assert_eq!(br().to_string(), text);
        assert_eq!(text.parse::<BraidWord>().unwrap().strands(), 3);
        assert!(BraidWord::parse(3, "s3").is_err());
        assert!(BraidWord::parse(3, "t1").is_err());
    }

    #[test]
    fn strand_mismatch() {
        let a = BraidWord::identity(2);
        let b = BraidWord::identity(3);
        assert!(a.multiply(&b).is_err());
    }
}
