//! Filtration non-membership derived from the first nonvanishing length.
//!
//! If every `mubar(I)` with `|I| < l` vanishes and some `mubar(I)` with
//! `|I| = l` does not, the link is not `(n)`-solvable (nor `n`-positive,
//! `n`-negative or `n`-bipolar) for any `n` with `2^(n+2) - 1 >= l`, does not
//! bound disjoint gropes of height `h` for `2^h >= l`, and is not null
//! `k`-cobordant for `2k >= l`. Nothing is ever claimed in the positive
//! direction.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{format_index, Entry, FirstNonvanishing, MuTable};

/// Smallest `n >= 0` with `2^(n+2) - 1 >= l`: the link is not `(n)`-solvable
/// for this `n` and every larger level. `None` without a nonvanishing length.
pub fn solvability_obstruction(first: Option<usize>) -> Option<u32> {
    let l = first?;
    (0u32..).find(|&n| (1u128 << (n + 2)) > l as u128)
}

/// Same threshold as solvability.
pub fn bipolar_obstruction(first: Option<usize>) -> Option<u32> {
    solvability_obstruction(first)
}

/// Smallest height `h` with `2^h >= l`.
pub fn grope_obstruction(first: Option<usize>) -> Option<u32> {
    let l = first?;
    (0u32..).find(|&h| (1u128 << h) >= l as u128)
}

/// Smallest `k` with `2k >= l`: not null `k`-cobordant from here on.
pub fn kcobordism_obstruction(first: Option<usize>) -> Option<usize> {
    first.map(|l| l.div_ceil(2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KCobordism {
    Consistent,
    /// The tables disagree at `index`, so the links are not `k`-cobordant.
    Violated { index: Vec<u16>, left: Box<Entry>, right: Box<Entry> },
}

/// Compares `mubar` of two links for all `|I| <= 2k`. Residues are compared
/// modulo the gcd of both indeterminacies. The reported witness is the
/// shortest, then lexicographically least, disagreement.
pub fn kcobordism_check(a: &MuTable, b: &MuTable, k: usize) -> Result<KCobordism> {
    if a.num_components() != b.num_components() {
        return Err(Error::RankMismatch { left: a.num_components(), right: b.num_components() });
    }
    let needed = 2 * k;
    let available = a.max_len().min(b.max_len());
    if needed > available {
        return Err(Error::InsufficientDepth { needed, available });
    }
    let mut keys: Vec<Vec<u16>> = a
        .nonzero_indices()
        .into_iter()
        .chain(b.nonzero_indices())
        .filter(|i| i.len() <= needed)
        .collect();
    keys.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    keys.dedup();
    for index in keys {
        let (ea, eb) = (a.entry(&index)?, b.entry(&index)?);
        let modulus: BigInt = ea.delta.gcd(&eb.delta);
        let diff: BigInt = &ea.mu - &eb.mu;
        let agree = if modulus == BigInt::from(0) {
            diff == BigInt::from(0)
        } else {
            diff.mod_floor(&modulus) == BigInt::from(0)
        };
        if !agree {
            return Ok(KCobordism::Violated { index, left: Box::new(ea), right: Box::new(eb) });
        }
    }
    Ok(KCobordism::Consistent)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub first_nonvanishing: Option<usize>,
    pub witness: Option<String>,
    pub value: Option<String>,
    pub searched_up_to: usize,
    pub excluded_solvable_from: Option<u32>,
    pub excluded_grope_from: Option<u32>,
    pub excluded_bipolar_from: Option<u32>,
    pub excluded_kcobordism_from: Option<usize>,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn new(first: &FirstNonvanishing, searched_up_to: usize) -> Self {
        let (l, witness, value) = match first {
            FirstNonvanishing::Found { length, witness, value } => {
                (Some(*length), Some(format_index(witness)), Some(value.to_string()))
            }
            FirstNonvanishing::AllVanish { .. } => (None, None, None),
        };
        let solvable = solvability_obstruction(l);
        let grope = grope_obstruction(l);
        let kcob = kcobordism_obstruction(l);
        let mut notes = Vec::new();
        match (l, solvable, grope, kcob) {
            (Some(l), Some(n), Some(h), Some(k)) => {
                notes.push(format!(
                    "first nonvanishing mu-bar has length {l}; it is well defined (indeterminacy 0)"
                ));
                notes.push(format!(
                    "not ({n})-solvable, hence not in any deeper level ({n}.5, {}, ...)",
                    n + 1
                ));
                notes.push(format!("not {n}-positive, {n}-negative or {n}-bipolar"));
                notes.push(format!("bounds no disjoint gropes of height {h} or more"));
                notes.push(format!("not null {k}-cobordant, nor for any larger k"));
            }
            _ => notes.push(format!(
                "all mu-bar vanish up to length {searched_up_to}; no obstruction found"
            )),
        }
        notes.push("statements are obstructions only; membership is never certified".into());
        ObstructionReport {
            first_nonvanishing: l,
            witness,
            value,
            searched_up_to,
            excluded_solvable_from: solvable,
            excluded_grope_from: grope,
            excluded_bipolar_from: bipolar_obstruction(l),
            excluded_kcobordism_from: kcob,
            notes,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}
