//! Zero-framed longitudes as elements of the free group on the meridians.
//!
//! Two sources are supported:
//!
//! * closed pure braids, where the Artin image of each meridian is an exact
//!   conjugate `w_i x_i w_i^-1` and `w_i` is the raw longitude;
//! * PD codes, where every edge generator is approximated by iterated
//!   substitution through the Wirtinger relations. The iteration runs either
//!   on Magnus expansions (the default) or on explicit words.
//!
//! For PD codes the framing correction is prepended: the returned longitude
//! is `x_i^-e_i * w_i` with `e_i` the exponent sum of `x_i` in the raw
//! longitude `w_i`. For braids the conjugator read off the Artin image is
//! normalized on the right instead, which recovers the raw Wirtinger
//! longitude of the closure exactly.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::par;
use crate::pd::PdCode;
use crate::series::{self, magnus_expand, Monomial, TruncatedSeries};
use crate::word::{Letter, Word};

/// Above this value of `|w| * q` a word longitude answers coefficient queries
/// with the prefix dynamic program instead of a materialized expansion.
pub const DP_THRESHOLD: usize = 20_000;

/// Materialized expansions are only built below this many potential terms.
pub const EXPANSION_TERM_CAP: u128 = 250_000;

/// Default cap on the number of potential series terms in the Wirtinger
/// iteration.
pub const SERIES_TERM_CAP: u128 = 2_000_000;

#[derive(Debug, Clone)]
pub enum Longitude {
    Word { word: Word, expansion: OnceLock<TruncatedSeries> },
    Series(TruncatedSeries),
}

impl Longitude {
    pub fn from_word(word: Word) -> Self {
        Longitude::Word { word, expansion: OnceLock::new() }
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            Longitude::Word { word, .. } => Some(word),
            Longitude::Series(_) => None,
        }
    }

    /// Exponent sum of `x_gen`, i.e. the degree-one coefficient.
    pub fn exponent_sum(&self, gen: u16) -> i64 {
        match self {
            Longitude::Word { word, .. } => word.exponent_sum(gen),
            Longitude::Series(s) => s
                .coefficient(&Monomial::new(&[gen]))
                .to_i64()
                .expect("exponent sums fit in i64"),
        }
    }

    /// Magnus coefficient; `mono` must have degree `< q`.
    pub fn coefficient(&self, mono: &Monomial, q: usize) -> BigInt {
        match self {
            Longitude::Series(s) => s.coefficient(mono),
            Longitude::Word { word, expansion } => {
                let m = word.rank();
                let potential = potential_terms(m, q);
                if word.len() * q <= DP_THRESHOLD && potential <= EXPANSION_TERM_CAP {
                    expansion.get_or_init(|| magnus_expand(word, q)).coefficient(mono)
                } else {
                    series::coefficient(word, mono)
                }
            }
        }
    }

    /// Magnus expansion truncated below degree `q`.
    pub fn expansion(&self, q: usize) -> TruncatedSeries {
        match self {
            Longitude::Series(s) => s.clone(),
            Longitude::Word { word, .. } => magnus_expand(word, q),
        }
    }

    /// Lowest positive degree with a nonzero Magnus term, below `q`.
    pub fn residue_degree(&self, q: usize) -> Option<usize> {
        match self {
            Longitude::Series(s) => s.min_positive_degree(),
            Longitude::Word { word, .. } => series::lcs_residue_degree(word, q),
        }
    }
}

/// Number of monomials of degree `< q` in `m` variables.
pub fn potential_terms(m: u16, q: usize) -> u128 {
    let m = u128::from(m);
    let mut total = 0u128;
    let mut power = 1u128;
    for _ in 0..q {
        total = total.saturating_add(power);
        power = power.saturating_mul(m);
    }
    total
}

#[derive(Debug, Clone)]
pub struct PeripheralData {
    m: usize,
    q: usize,
    longitudes: Vec<Longitude>,
    framing_corrections: Vec<i64>,
}

impl PeripheralData {
    pub fn num_components(&self) -> usize {
        self.m
    }

    /// Truncation degree: coefficients of degree `< q` are exact, so index
    /// sequences up to length `q` are supported.
    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn longitudes(&self) -> &[Longitude] {
        &self.longitudes
    }

    pub fn longitude(&self, i: usize) -> &Longitude {
        &self.longitudes[i - 1]
    }

    pub fn framing_corrections(&self) -> &[i64] {
        &self.framing_corrections
    }

    /// Exponent sum of `x_j` in the longitude of component `i` (1-based).
    pub fn exponent_sum(&self, i: usize, j: usize) -> i64 {
        self.longitudes[i - 1].exponent_sum(j as u16)
    }

    /// JSON view for debugging reports.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct View<'a> {
            components: usize,
            degree: usize,
            framing_corrections: &'a [i64],
            longitudes: Vec<serde_json::Value>,
        }
        let longitudes = self
            .longitudes
            .iter()
            .map(|l| match l {
                Longitude::Word { word, .. } => serde_json::json!({ "word": word.to_string() }),
                Longitude::Series(s) => serde_json::json!({ "series": s.to_string() }),
            })
            .collect();
        serde_json::to_value(View {
            components: self.m,
            degree: self.q,
            framing_corrections: &self.framing_corrections,
            longitudes,
        })
        .expect("plain data serializes")
    }
}

/// Exact longitudes of the closure of a pure braid.
pub fn braid_longitudes(b: &BraidWord, q: usize) -> Result<PeripheralData> {
    b.require_pure()?;
    let rank = b.strands() as u16;
    let mut longitudes = Vec::with_capacity(b.strands());
    let mut corrections = Vec::with_capacity(b.strands());
    for (i, img) in b.artin_images().into_iter().enumerate() {
        let gen = i as u16 + 1;
        let raw = img.split_conjugate(gen).ok_or_else(|| {
            Error::Invariant(format!("Artin image of x{gen} is not a conjugate of x{gen}: {img}"))
        })?;
        // The conjugator is only defined up to right multiplication by powers
        // of x_i; the representative with zero x_i exponent is the product of
        // the over-crossing meridians met along the strand.
        let e = raw.exponent_sum(gen);
        let word = raw.mul(&Word::generator(rank, gen)?.pow(-e))?;
        longitudes.push(Longitude::from_word(word));
        corrections.push(e);
    }
    Ok(PeripheralData { m: b.strands(), q, longitudes, framing_corrections: corrections })
}

/// Edge labels of one component walk, and its longitude.
type WalkResult = (Vec<(u32, EdgeSeries)>, TruncatedSeries);

/// One step of a component traversal: the edge entered and, when the step
/// passes under a crossing, the over edge and the crossing sign.
#[derive(Debug, Clone, Copy)]
struct Step {
    to: u32,
    under: Option<(u32, i8)>,
}

/// Traversal plan for the Wirtinger iteration.
struct Plan {
    m: usize,
    /// Per component: base label and the steps around the cycle back to it.
    walks: Vec<(u32, Vec<Step>)>,
    /// Component (0-based) of each label.
    comp: HashMap<u32, usize>,
}

impl Plan {
    fn new(pd: &PdCode) -> Plan {
        let mut under_at: HashMap<u32, (u32, u32, i8)> = HashMap::new();
        let mut over_at: HashMap<u32, u32> = HashMap::new();
        for c in pd.crossings() {
            let (ui, uo) = c.under();
            let (oi, oo) = c.over();
            under_at.insert(ui, (uo, oi, c.sign));
            over_at.insert(oi, oo);
        }
        let mut comp = HashMap::new();
        let mut walks = Vec::with_capacity(pd.num_components());
        for (ci, cycle) in pd.components().iter().enumerate() {
            for &l in cycle {
                comp.insert(l, ci);
            }
            let base = *cycle.iter().min().expect("nonempty");
            let mut steps = Vec::new();
            let mut cur = base;
            loop {
                let step = if let Some(&(out, over, sign)) = under_at.get(&cur) {
                    Step { to: out, under: Some((over, sign)) }
                } else if let Some(&out) = over_at.get(&cur) {
                    Step { to: out, under: None }
                } else {
                    break; // crossingless loop
                };
                steps.push(step);
                cur = step.to;
                if cur == base {
                    break;
                }
            }
            walks.push((base, steps));
        }
        Plan { m: pd.num_components(), walks, comp }
    }
}

/// Conjugating element of an edge generator `g x_c g^-1`, kept together with
/// its inverse and the generator and inverse themselves.
#[derive(Clone)]
struct EdgeSeries {
    gen: TruncatedSeries,
    gen_inv: TruncatedSeries,
}

fn edge_series(m: u16, q: usize, c: u16, g: &TruncatedSeries, h: &TruncatedSeries) -> Result<EdgeSeries> {
    let x = magnus_expand(&Word::generator(m, c)?, q);
    let x_inv = magnus_expand(&Word::from_letters(m, vec![Letter::neg(c)])?, q);
    Ok(EdgeSeries { gen: g.multiply(&x)?.multiply(h)?, gen_inv: g.multiply(&x_inv)?.multiply(h)? })
}

/// Runs the Wirtinger iteration on Magnus expansions; returns raw longitude
/// series (before framing correction).
fn wirtinger_series_raw(pd: &PdCode, q: usize, iterations: usize) -> Result<Vec<TruncatedSeries>> {
    let plan = Plan::new(pd);
    let m = plan.m as u16;
    let potential = potential_terms(m, q);
    if potential > SERIES_TERM_CAP {
        return Err(Error::SizeExceeded { what: "Wirtinger series terms", size: potential, cap: SERIES_TERM_CAP });
    }
    let one = TruncatedSeries::one(m, q);
    let mut edges: HashMap<u32, EdgeSeries> = HashMap::new();
    for (&label, &c) in &plan.comp {
        edges.insert(label, edge_series(m, q, c as u16 + 1, &one, &one)?);
    }
    let mut raw = vec![one.clone(); plan.m];
    for _ in 0..iterations {
        let results: Vec<Result<WalkResult>> =
            par::map(&plan.walks, |(base, steps)| {
                let c = plan.comp[base] as u16 + 1;
                let mut g = one.clone();
                let mut h = one.clone();
                let mut cur = edges[base].clone();
                let mut out = Vec::with_capacity(steps.len());
                for step in steps {
                    if let Some((over, sign)) = step.under {
                        let o = &edges[&over];
                        let (fwd, back) = if sign > 0 { (&o.gen, &o.gen_inv) } else { (&o.gen_inv, &o.gen) };
                        g = fwd.multiply(&g)?;
                        h = h.multiply(back)?;
                        if step.to != *base {
                            cur = edge_series(m, q, c, &g, &h)?;
                        }
                    }
                    if step.to != *base {
                        out.push((step.to, cur.clone()));
                    }
                }
                Ok((out, g))
            });
        let mut next = edges.clone();
        for (ci, r) in results.into_iter().enumerate() {
            let (updates, g) = r?;
            for (label, e) in updates {
                next.insert(label, e);
            }
            raw[ci] = g;
        }
        edges = next;
    }
    Ok(raw)
}

fn frame_series(raw: Vec<TruncatedSeries>) -> Result<(Vec<Longitude>, Vec<i64>)> {
    let mut longitudes = Vec::with_capacity(raw.len());
    let mut corrections = Vec::with_capacity(raw.len());
    for (i, w) in raw.into_iter().enumerate() {
        let gen = i as u16 + 1;
        let e = w.coefficient(&Monomial::new(&[gen])).to_i64().expect("exponent sum fits");
        let m = w.rank();
        let q = w.truncation();
        let corr = magnus_expand(&Word::generator(m, gen)?.pow(-e), q);
        longitudes.push(Longitude::Series(corr.multiply(&w)?));
        corrections.push(e);
    }
    Ok((longitudes, corrections))
}

/// Longitudes of a PD code as Magnus expansions exact below degree `q`.
pub fn wirtinger_longitudes(pd: &PdCode, q: usize) -> Result<PeripheralData> {
    wirtinger_longitudes_with(pd, q, q)
}

fn wirtinger_longitudes_with(pd: &PdCode, q: usize, iterations: usize) -> Result<PeripheralData> {
    let raw = wirtinger_series_raw(pd, q, iterations)?;
    let (longitudes, framing_corrections) = frame_series(raw)?;
    Ok(PeripheralData { m: pd.num_components(), q, longitudes, framing_corrections })
}

/// Same iteration carried out on explicit words, `q` rounds. Fails with
/// [`Error::SizeExceeded`] once the total word length passes `cap`.
pub fn wirtinger_longitude_words(pd: &PdCode, q: usize, cap: usize) -> Result<PeripheralData> {
    let plan = Plan::new(pd);
    let m = plan.m as u16;
    // edge generator = conj * x_c * conj^-1; store conj
    let mut conj: HashMap<u32, Word> = plan.comp.keys().map(|&l| (l, Word::identity(m))).collect();
    let generator = |label: u32, conj: &HashMap<u32, Word>| -> Result<Word> {
        let c = plan.comp[&label] as u16 + 1;
        Word::generator(m, c)?.conjugate_by(&conj[&label])
    };
    let mut raw = vec![Word::identity(m); plan.m];
    for _ in 0..q {
        let mut next = conj.clone();
        let mut total = 0usize;
        for (ci, (base, steps)) in plan.walks.iter().enumerate() {
            let mut g = Word::identity(m);
            for step in steps {
                if let Some((over, sign)) = step.under {
                    let o = generator(over, &conj)?;
                    let o = if sign > 0 { o } else { o.inverse() };
                    g = o.mul(&g)?;
                    total += g.len();
                    if total > cap {
                        return Err(Error::SizeExceeded {
                            what: "Wirtinger word length",
                            size: total as u128,
                            cap: cap as u128,
                        });
                    }
                }
                if step.to != *base {
                    next.insert(step.to, g.clone());
                }
            }
            raw[ci] = g;
        }
        conj = next;
    }
    let mut longitudes = Vec::with_capacity(plan.m);
    let mut corrections = Vec::with_capacity(plan.m);
    for (i, w) in raw.into_iter().enumerate() {
        let gen = i as u16 + 1;
        let e = w.exponent_sum(gen);
        longitudes.push(Longitude::from_word(Word::generator(m, gen)?.pow(-e).mul(&w)?));
        corrections.push(e);
    }
    Ok(PeripheralData { m: plan.m, q, longitudes, framing_corrections: corrections })
}

/// True iff `q` and `q + 1` rounds of the Wirtinger iteration agree on every
/// coefficient below degree `q`.
pub fn stabilization_check(pd: &PdCode, q: usize) -> Result<bool> {
    let a = wirtinger_longitudes_with(pd, q, q)?;
    let b = wirtinger_longitudes_with(pd, q, q + 1)?;
    Ok(a.longitudes.iter().zip(&b.longitudes).all(|(x, y)| x.expansion(q) == y.expansion(q)))
}

/// Checks the zero-framing and linking invariants against the given linking
/// numbers (`lk(i, j)`, 1-based).
pub fn check_exponent_sums<F>(data: &PeripheralData, mut lk: F) -> Result<()>
where
    F: FnMut(usize, usize) -> Result<i64>,
{
    for i in 1..=data.m {
        for j in 1..=data.m {
            let got = data.exponent_sum(i, j);
            let want = if i == j { 0 } else { lk(i, j)? };
            if got != want {
                return Err(Error::Invariant(format!(
                    "longitude {i}: exponent sum of x{j} is {got}, expected {want}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br() -> BraidWord {
        BraidWord::parse(3, "s2 s1^-1 s2 s1^-1 s2 s1^-1").unwrap()
    }

    #[test]
    fn identity_braid_has_trivial_longitudes() {
        let data = braid_longitudes(&BraidWord::identity(3), 4).unwrap();
        assert!(data.longitudes().iter().all(|l| l.word().unwrap().is_empty()));
    }

    #[test]
    fn hopf_braid_longitudes() {
        let b = BraidWord::parse(2, "s1 s1").unwrap();
        let data = braid_longitudes(&b, 3).unwrap();
        assert_eq!(data.exponent_sum(1, 2), 1);
        assert_eq!(data.exponent_sum(1, 1), 0);
        check_exponent_sums(&data, |i, j| b.linking_number(i, j)).unwrap();
    }

    #[test]
    fn borromean_longitudes_are_commutators() {
        let data = braid_longitudes(&br(), 4).unwrap();
        for l in data.longitudes() {
            assert!(l.residue_degree(4).is_none_or(|d| d >= 2));
        }
    }

    #[test]
    fn non_pure_braid_rejected() {
        assert!(matches!(
            braid_longitudes(&BraidWord::parse(2, "s1").unwrap(), 3),
            Err(Error::NonPureBraid(_))
        ));
    }

    #[test]
    fn unknot_diagram() {
        let data = wirtinger_longitudes(&PdCode::unlink(1), 4).unwrap();
        assert!(data.longitude(1).expansion(4).is_one());
        assert!(stabilization_check(&PdCode::unlink(1), 4).unwrap());
    }

    #[test]
    fn closure_matches_braid_path() {
        for text in ["s1 s1", "s2 s1^-1 s2 s1^-1 s2 s1^-1", "s1 s2 s2 s1 s2^-1 s2^-1"] {
            let b: BraidWord = text.parse().unwrap();
            if !b.is_pure() {
                continue;
            }
            let q = 5;
            let exact = braid_longitudes(&b, q).unwrap();
            let pd = PdCode::braid_closure(&b);
            let approx = wirtinger_longitudes(&pd, q).unwrap();
            let words = wirtinger_longitude_words(&pd, q, 1 << 20).unwrap();
            for i in 1..=b.strands() {
                let e = exact.longitude(i).expansion(q);
                assert_eq!(approx.longitude(i).expansion(q), e, "{text} strand {i}");
                assert_eq!(words.longitude(i).expansion(q), e, "{text} strand {i} (words)");
            }
        }
    }
}
