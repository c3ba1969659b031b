//! Truncated power series in noncommuting variables and the Magnus expansion.
//!
//! A [`TruncatedSeries`] stores integer coefficients for monomials of total
//! degree `< q`. The bound `q` travels with the value and binary operations
//! refuse mismatched bounds.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::word::Word;

/// A noncommutative monomial `X_{i1} X_{i2} ... X_{ik}`, indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn new(indices: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(indices))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    fn with_power(&self, var: u16, k: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(var, k));
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.0.iter() {
            write!(f, "X{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    m: u16,
    q: usize,
    terms: HashMap<Monomial, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(m: u16, q: usize) -> Self {
        TruncatedSeries { m, q, terms: HashMap::new() }
    }

    pub fn one(m: u16, q: usize) -> Self {
        let mut s = Self::zero(m, q);
        if q > 0 {
            s.terms.insert(Monomial::one(), BigInt::one());
        }
        s
    }

    /// Builds a series from explicit terms, dropping zeros and terms of
    /// degree `>= q`.
    pub fn from_terms<I>(m: u16, q: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut s = Self::zero(m, q);
        for (mono, c) in terms {
            if let Some(&bad) = mono.indices().iter().find(|&&i| i == 0 || i > m) {
                return Err(Error::GeneratorOutOfRange { gen: bad, rank: m });
            }
            if mono.degree() < q {
                *s.terms.entry(mono).or_default() += c;
            }
        }
        s.prune();
        Ok(s)
    }

    pub fn rank(&self) -> u16 {
        self.m
    }

    pub fn truncation(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Terms sorted by degree, then lexicographically by indices.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(b.0)));
        v
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.m != other.m {
            return Err(Error::RankMismatch { left: self.m.into(), right: other.m.into() });
        }
        if self.q != other.q {
            return Err(Error::DegreeMismatch { left: self.q, right: other.q });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            *out.terms.entry(mono.clone()).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            m: self.m,
            q: self.q,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// Truncated product.
    pub fn multiply(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let q = self.q;
        let mut by_degree: Vec<Vec<(&Monomial, &BigInt)>> = vec![Vec::new(); q];
        for (mono, c) in &other.terms {
            by_degree[mono.degree()].push((mono, c));
        }
        let mut terms: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len().max(other.len()));
        for (ma, ca) in &self.terms {
            for bucket in by_degree.iter().take(q - ma.degree()) {
                for &(mb, cb) in bucket {
                    let prod = ca * cb;
                    match terms.get_mut(&ma.concat(mb)) {
                        Some(c) => *c += prod,
                        None => {
                            terms.insert(ma.concat(mb), prod);
                        }
                    }
                }
            }
        }
        let mut out = TruncatedSeries { m: self.m, q, terms };
        out.prune();
        Ok(out)
    }

    /// Right multiplication by `1 + X_var`.
    fn mul_generator(&mut self, var: u16) {
        let mut extra = Vec::new();
        for (mono, c) in &self.terms {
            if mono.degree() + 1 < self.q {
                extra.push((mono.with_power(var, 1), c.clone()));
            }
        }
        for (mono, c) in extra {
            *self.terms.entry(mono).or_default() += c;
        }
        self.prune();
    }

    /// Right multiplication by `1 - X_var + X_var^2 - ...`.
    fn mul_inverse_generator(&mut self, var: u16) {
        let mut extra = Vec::new();
        for (mono, c) in &self.terms {
            let room = self.q - mono.degree();
            for k in 1..room {
                let coeff = if k % 2 == 1 { -c.clone() } else { c.clone() };
                extra.push((mono.with_power(var, k), coeff));
            }
        }
        for (mono, c) in extra {
            *self.terms.entry(mono).or_default() += c;
        }
        self.prune();
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        if self.coefficient(&Monomial::one()) != BigInt::one() {
            return Err(Error::Invariant("inverse requires constant term 1".into()));
        }
        // (1 + a)^-1 = sum_k (-a)^k, and a has no constant term.
        let one = TruncatedSeries::one(self.m, self.q);
        let neg_a = one.sub(self)?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 1..self.q {
            power = power.multiply(&neg_a)?;
            if power.is_empty() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Smallest positive degree carrying a nonzero coefficient.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).filter(|&d| d > 0).min()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::one()).is_one()
    }

    /// Verifies the sparse-storage invariants.
    pub fn check_invariants(&self) -> Result<()> {
        for (mono, c) in &self.terms {
            if c.is_zero() {
                return Err(Error::Invariant(format!("stored zero coefficient at {mono}")));
            }
            if mono.degree() >= self.q {
                return Err(Error::Invariant(format!("term {mono} beyond truncation {}", self.q)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("\u{2212}")?,
                (0, false) => {}
                (_, true) => f.write_str(" \u{2212} ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.degree() == 0 {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}\u{b7}{}", c.abs(), mono)?;
            }
        }
        Ok(())
    }
}

/// Image of `w` under `x_i -> 1 + X_i`, truncated below degree `q`.
pub fn magnus_expand(w: &Word, q: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(w.rank(), q);
    for l in w.letters() {
        if l.inverse {
            s.mul_inverse_generator(l.gen);
        } else {
            s.mul_generator(l.gen);
        }
    }
    s
}

/// Coefficient of `mono` in the Magnus expansion of `w`, computed by a
/// dynamic program over prefixes of `mono` without materializing the series.
///
/// `dp[j]` holds the coefficient of the length-`j` prefix of `mono` in the
/// expansion of the letters processed so far. A positive letter `x_g` may
/// consume one `X_g`; an inverse letter may consume any run `X_g^r` with sign
/// `(-1)^r`.
pub fn coefficient(w: &Word, mono: &Monomial) -> BigInt {
    let target = mono.indices();
    let d = target.len();
    let mut dp: Vec<BigInt> = vec![BigInt::zero(); d + 1];
    dp[0] = BigInt::one();
    for l in w.letters() {
        let g = l.gen;
        if l.inverse {
            for j in 1..=d {
                if target[j - 1] == g {
                    let prev = dp[j - 1].clone();
                    dp[j] -= prev;
                }
            }
        } else {
            for j in (1..=d).rev() {
                if target[j - 1] == g {
                    let prev = dp[j - 1].clone();
                    dp[j] += prev;
                }
            }
        }
    }
    dp.swap_remove(d)
}

/// Degree `d` such that `w` lies in the `d`-th lower central term but not the
/// next one, detected by the first nonzero positive-degree Magnus term.
/// Returns `None` if nothing below degree `q` is nonzero.
pub fn lcs_residue_degree(w: &Word, q: usize) -> Option<usize> {
    magnus_expand(w, q).min_positive_degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: u16, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    fn mono(ix: &[u16]) -> Monomial {
        Monomial::new(ix)
    }

    fn series(m: u16, q: usize, terms: &[(&[u16], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(m, q, terms.iter().map(|(k, c)| (mono(k), BigInt::from(*c))))
            .unwrap()
    }

    #[test]
    fn expand_generators() {
        assert_eq!(magnus_expand(&w(1, "x1"), 4), series(1, 4, &[(&[], 1), (&[1], 1)]));
        assert_eq!(
            magnus_expand(&w(1, "x1^-1"), 4),
            series(1, 4, &[(&[], 1), (&[1], -1), (&[1, 1], 1), (&[1, 1, 1], -1)])
        );
        assert!(magnus_expand(&Word::identity(3), 5).is_one());
    }

    #[test]
    fn expand_commutator() {
        let c = magnus_expand(&w(2, "x1 x2 x1^-1 x2^-1"), 3);
        assert_eq!(c, series(2, 3, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)]));
        assert_eq!(c.to_string(), "1 + 1\u{b7}X1X2 \u{2212} 1\u{b7}X2X1");
    }

    #[test]
    fn products() {
        let a = series(2, 3, &[(&[], 1), (&[1], 1)]);
        let b = series(2, 3, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]);
        assert!(a.multiply(&b).unwrap().is_one());
        let c = series(2, 3, &[(&[], 1), (&[2], 1)]);
        assert_eq!(
            a.multiply(&c).unwrap(),
            series(2, 3, &[(&[], 1), (&[1], 1), (&[2], 1), (&[1, 2], 1)])
        );
    }

    #[test]
    fn mismatched_truncation_is_rejected() {
        let a = TruncatedSeries::one(2, 3);
        let b = TruncatedSeries::one(2, 4);
        assert!(matches!(a.multiply(&b), Err(Error::DegreeMismatch { .. })));
        let c = TruncatedSeries::one(3, 3);
        assert!(matches!(a.add(&c), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn series_inverse() {
        let s = magnus_expand(&w(2, "x1 x2 x1 x2^-1"), 5);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, magnus_expand(&w(2, "x2 x1^-1 x2^-1 x1^-1"), 5));
        assert!(s.multiply(&inv).unwrap().is_one());
    }

    #[test]
    fn targeted_coefficients() {
        assert_eq!(coefficient(&w(2, "x1 x2"), &mono(&[1, 2])), BigInt::from(1));
        assert_eq!(coefficient(&w(2, "x1 x2 x1^-1 x2^-1"), &mono(&[2, 1])), BigInt::from(-1));
        assert_eq!(coefficient(&w(1, "x1^-1"), &mono(&[1, 1])), BigInt::from(1));
        assert_eq!(coefficient(&w(2, "x1"), &mono(&[])), BigInt::from(1));
    }

    #[test]
    fn residue_degrees() {
        assert_eq!(lcs_residue_degree(&w(3, "x1"), 6), Some(1));
        assert_eq!(lcs_residue_degree(&w(3, "x1 x2 x1^-1 x2^-1"), 6), Some(2));
        let c12 = w(3, "x1 x2 x1^-1 x2^-1");
        let c13 = w(3, "x1 x3 x1^-1 x3^-1");
        assert_eq!(lcs_residue_degree(&c12.commutator(&c13).unwrap(), 6), Some(4));
        assert_eq!(lcs_residue_degree(&c12.commutator(&c13).unwrap(), 4), None);
    }

    #[test]
    fn display_negative_leading() {
        let s = series(2, 3, &[(&[1], -2), (&[2, 1], 3)]);
        assert_eq!(s.to_string(), "\u{2212}2\u{b7}X1 + 3\u{b7}X2X1");
        assert_eq!(TruncatedSeries::zero(1, 2).to_string(), "0");
    }
}
