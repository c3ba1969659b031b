//! Milnor invariants `mu(I)`, their indeterminacy and residues.
//!
//! An index sequence `I = (i_1, ..., i_k)` selects the longitude of component
//! `i_k`; `mu(I)` is the coefficient of `X_{i_1} ... X_{i_{k-1}}` in its Magnus
//! expansion. The indeterminacy `Delta(I)` is the gcd of `mu(J)` over all `J`
//! obtained from `I` by deleting at least one of `i_1, ..., i_{k-1}` and
//! cyclically permuting what is left.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::longitude::PeripheralData;
use crate::par::{self, Mode};
use crate::series::Monomial;

/// Default cap on the number of coefficient extractions in a scan.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

const CHUNK: u128 = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    #[serde(rename = "I")]
    pub index: String,
    #[serde(serialize_with = "as_string")]
    pub mu: BigInt,
    #[serde(serialize_with = "as_string")]
    pub delta: BigInt,
    #[serde(serialize_with = "as_string")]
    pub mubar: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(small) => s.serialize_i64(small),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

/// Compact text form of an index sequence, e.g. `313323`. Components above 9
/// are separated by commas.
pub fn format_index(index: &[u16]) -> String {
    if index.iter().all(|&i| i < 10) {
        index.iter().map(|i| i.to_string()).collect()
    } else {
        index.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Parses `123` or `1,2,10`.
pub fn parse_index(text: &str) -> Result<Vec<u16>> {
    let bad = |msg: String| Error::Parse { location: format!("index `{text}`"), message: msg };
    let text = text.trim();
    if text.is_empty() {
        return Err(bad("empty index".into()));
    }
    if text.contains(',') {
        text.split(',')
            .map(|t| t.trim().parse::<u16>().map_err(|e| bad(e.to_string())))
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u16)
                    .ok_or_else(|| bad(format!("unexpected character `{c}`")))
            })
            .collect()
    }
}

fn validate(data: &PeripheralData, index: &[u16]) -> Result<()> {
    let m = data.num_components();
    if index.len() < 2 || index.iter().any(|&i| i == 0 || usize::from(i) > m) {
        return Err(Error::InvalidIndex(index.to_vec()));
    }
    if index.len() > data.degree() {
        return Err(Error::InsufficientDegree {
            index: index.to_vec(),
            len: index.len(),
            max: data.degree(),
        });
    }
    Ok(())
}

fn raw_mu(data: &PeripheralData, index: &[u16]) -> BigInt {
    let (last, prefix) = index.split_last().expect("validated length");
    data.longitude(usize::from(*last)).coefficient(&Monomial::new(prefix), data.degree())
}

/// `mu(I)`, the raw Magnus coefficient.
pub fn mu(data: &PeripheralData, index: &[u16]) -> Result<BigInt> {
    validate(data, index)?;
    Ok(raw_mu(data, index))
}

/// The shorter sequences whose `mu` values generate the indeterminacy of
/// `index`, in sorted order without repeats.
pub fn indeterminacy_sequences(index: &[u16]) -> Vec<Vec<u16>> {
    let Some((&last, prefix)) = index.split_last() else {
        return Vec::new();
    };
    let p = prefix.len();
    let mut out = BTreeSet::new();
    // `keep` ranges over proper subsets with at least one element, so the
    // result has length between 2 and |I| - 1.
    for keep in 1u64..(1u64 << p) - 1 {
        let mut seq: Vec<u16> =
            (0..p).filter(|b| keep >> b & 1 == 1).map(|b| prefix[b]).collect();
        seq.push(last);
        for r in 0..seq.len() {
            let mut rot = seq.clone();
            rot.rotate_left(r);
            out.insert(rot);
        }
    }
    out.into_iter().collect()
}

/// `Delta(I)` given a lookup for shorter `mu` values. An empty gcd is 0.
pub fn indeterminacy_with<F>(index: &[u16], mut mu_of: F) -> Result<BigInt>
where
    F: FnMut(&[u16]) -> Result<BigInt>,
{
    let mut g = BigInt::zero();
    for seq in indeterminacy_sequences(index) {
        let v = mu_of(&seq)?;
        g = g.gcd(&v);
    }
    Ok(g)
}

/// `Delta(I)`, computing every shorter `mu` directly.
pub fn indeterminacy(data: &PeripheralData, index: &[u16]) -> Result<BigInt> {
    validate(data, index)?;
    indeterminacy_with(index, |j| Ok(raw_mu(data, j)))
}

/// `mu mod delta` normalized to `[0, delta)`, or `mu` itself when `delta = 0`.
pub fn residue(mu: &BigInt, delta: &BigInt) -> BigInt {
    if delta.is_zero() {
        mu.clone()
    } else {
        mu.mod_floor(&delta.abs())
    }
}

/// `mu`, `Delta` and `mubar` of a single sequence.
pub fn mubar(data: &PeripheralData, index: &[u16]) -> Result<Entry> {
    let mu = mu(data, index)?;
    let delta = indeterminacy(data, index)?;
    Ok(Entry { index: format_index(index), mubar: residue(&mu, &delta), mu, delta })
}

/// Number of coefficient extractions in an exhaustive scan of lengths
/// `2..=max_len` on `m` components.
pub fn scan_cost(m: usize, max_len: usize) -> u128 {
    let m = m as u128;
    let mut total = 0u128;
    let mut power = m;
    for _ in 2..=max_len {
        power = power.saturating_mul(m);
        total = total.saturating_add(power);
    }
    total
}

pub fn check_budget(m: usize, max_len: usize, budget: u128) -> Result<()> {
    let required = scan_cost(m, max_len);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn decode(mut n: u128, m: u128, len: usize) -> Vec<u16> {
    let mut out = vec![0u16; len];
    for slot in out.iter_mut().rev() {
        *slot = (n % m) as u16 + 1;
        n /= m;
    }
    out
}

/// All nonzero `mu` of one length, in lexicographic order of `I`. With
/// `first_only` each chunk stops at its first hit.
fn scan_length(
    data: &PeripheralData,
    len: usize,
    mode: Mode,
    first_only: bool,
) -> Vec<(Vec<u16>, BigInt)> {
    let m = data.num_components() as u128;
    let total = m.pow(len as u32);
    let chunks: Vec<(u128, u128)> =
        (0..total.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total))).collect();
    let found = par::map_with(mode, &chunks, |&(lo, hi)| {
        let mut hits = Vec::new();
        for n in lo..hi {
            let index = decode(n, m, len);
            let v = raw_mu(data, &index);
            if !v.is_zero() {
                hits.push((index, v));
                if first_only {
                    break;
                }
            }
        }
        hits
    });
    found.into_iter().flatten().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FirstNonvanishing {
    Found { length: usize, witness: Vec<u16>, value: BigInt },
    AllVanish { up_to: usize },
}

impl FirstNonvanishing {
    pub fn length(&self) -> Option<usize> {
        match self {
            FirstNonvanishing::Found { length, .. } => Some(*length),
            FirstNonvanishing::AllVanish { .. } => None,
        }
    }
}

/// Exhaustive scan by increasing length for the first nonzero `mu`. The
/// witness is the lexicographically least sequence of that length. Fails
/// before doing any work if the full scan up to `max_len` would exceed
/// `budget` extractions.
pub fn first_nonvanishing(
    data: &PeripheralData,
    max_len: usize,
    budget: u128,
    mode: Mode,
) -> Result<FirstNonvanishing> {
    if max_len < 2 {
        return Err(Error::InvalidIndex(Vec::new()));
    }
    check_budget(data.num_components(), max_len, budget)?;
    if max_len > data.degree() {
        return Err(Error::InsufficientDegree {
            index: Vec::new(),
            len: max_len,
            max: data.degree(),
        });
    }
    for len in 2..=max_len {
        if let Some((witness, value)) = scan_length(data, len, mode, true).into_iter().next() {
            return Ok(FirstNonvanishing::Found { length: len, witness, value });
        }
    }
    Ok(FirstNonvanishing::AllVanish { up_to: max_len })
}

/// Every `mu(I)` for `2 <= |I| <= max_len`. Only nonzero values are stored;
/// any other sequence within the computed depth has `mu = 0`.
#[derive(Debug, Clone)]
pub struct MuTable {
    m: usize,
    max_len: usize,
    nonzero: HashMap<Vec<u16>, BigInt>,
}

impl MuTable {
    pub fn build(data: &PeripheralData, max_len: usize, budget: u128, mode: Mode) -> Result<Self> {
        if max_len < 2 {
            return Err(Error::InvalidIndex(Vec::new()));
        }
        check_budget(data.num_components(), max_len, budget)?;
        if max_len > data.degree() {
            return Err(Error::InsufficientDegree {
                index: Vec::new(),
                len: max_len,
                max: data.degree(),
            });
        }
        let mut nonzero = HashMap::new();
        for len in 2..=max_len {
            nonzero.extend(scan_length(data, len, mode, false));
        }
        let table = MuTable { m: data.num_components(), max_len, nonzero };
        table.check_well_defined()?;
        Ok(table)
    }

    pub fn num_components(&self) -> usize {
        self.m
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn mu(&self, index: &[u16]) -> Result<BigInt> {
        if index.len() < 2 || index.iter().any(|&i| i == 0 || usize::from(i) > self.m) {
            return Err(Error::InvalidIndex(index.to_vec()));
        }
        if index.len() > self.max_len {
            return Err(Error::MissingEntry(index.to_vec()));
        }
        Ok(self.nonzero.get(index).cloned().unwrap_or_default())
    }

    pub fn entry(&self, index: &[u16]) -> Result<Entry> {
        let mu = self.mu(index)?;
        let delta = indeterminacy_with(index, |j| self.mu(j))?;
        Ok(Entry { index: format_index(index), mubar: residue(&mu, &delta), mu, delta })
    }

    /// Sequences with nonzero `mu`, sorted by length and then
    /// lexicographically.
    pub fn nonzero_indices(&self) -> Vec<Vec<u16>> {
        let mut keys: Vec<Vec<u16>> = self.nonzero.keys().cloned().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        keys
    }

    pub fn nonzero_entries(&self) -> Vec<Entry> {
        self.nonzero_indices()
            .iter()
            .map(|k| self.entry(k).expect("stored keys are valid"))
            .collect()
    }

    pub fn first_nonvanishing(&self) -> FirstNonvanishing {
        self.nonzero
            .iter()
            .min_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .map(|(k, v)| FirstNonvanishing::Found {
                length: k.len(),
                witness: k.clone(),
                value: v.clone(),
            })
            .unwrap_or(FirstNonvanishing::AllVanish { up_to: self.max_len })
    }

    /// Every sequence of the first nonvanishing length must have `Delta = 0`.
    fn check_well_defined(&self) -> Result<()> {
        let Some(len) = self.first_nonvanishing().length() else {
            return Ok(());
        };
        for (k, _) in self.nonzero.iter().filter(|(k, _)| k.len() == len) {
            let delta = indeterminacy_with(k, |j| self.mu(j))?;
            if !delta.is_zero() {
                return Err(Error::Invariant(format!(
                    "first nonvanishing mu({}) has indeterminacy {delta}",
                    format_index(k)
                )));
            }
        }
        Ok(())
    }

    /// `{entries, summary}` with entries restricted to nonzero `mu`.
    pub fn to_json(&self) -> serde_json::Value {
        let summary = summary_json(&self.first_nonvanishing());
        serde_json::json!({
            "components": self.m,
            "max_len": self.max_len,
            "entries": self.nonzero_entries(),
            "summary": summary,
        })
    }
}

pub fn summary_json(first: &FirstNonvanishing) -> serde_json::Value {
    match first {
        FirstNonvanishing::Found { length, witness, value } => serde_json::json!({
            "first_nonvanishing_length": length,
            "witness": format_index(witness),
            "value": serde_json::to_value(BigWrap(value)).expect("integer"),
        }),
        FirstNonvanishing::AllVanish { up_to } => serde_json::json!({
            "first_nonvanishing_length": null,
            "witness": null,
            "value": null,
            "all_vanish_up_to": up_to,
        }),
    }
}

struct BigWrap<'a>(&'a BigInt);

impl Serialize for BigWrap<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        as_string(self.0, s)
    }
}

/// Sorted view of nonzero `mu` values, mainly for comparisons in tests.
pub fn nonzero_profile(table: &MuTable) -> BTreeMap<Vec<u16>, BigInt> {
    table.nonzero.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}
