//! Link and string-link representations and the link file format.
//!
//! A link file is JSON with a `type` tag:
//!
//! ```text
//! {"type": "braid", "strands": 3, "word": "s2 s1^-1 s2 s1^-1 s2 s1^-1"}
//! {"type": "pd", "components": [[1, 2], [3, 4]],
//!  "crossings": [{"arcs": [1, 4, 2, 3], "sign": 1}, ...]}
//! ```
//!
//! Braid files must hold pure braids; their closures have one component per
//! strand, numbered by strand position.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::longitude::{braid_longitudes, wirtinger_longitudes, PeripheralData};
use crate::pd::{Crossing, PdCode};

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum LinkFile {
    Braid { strands: usize, word: String },
    Pd { components: Vec<Vec<u32>>, crossings: Vec<CrossingFile> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingFile {
    arcs: [u32; 4],
    sign: i8,
}

/// An ordered, oriented link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkRepr {
    /// Closure of a pure braid.
    Braid(BraidWord),
    Pd(PdCode),
}

impl LinkRepr {
    pub fn braid(b: BraidWord) -> Result<Self> {
        b.require_pure()?;
        Ok(LinkRepr::Braid(b))
    }

    pub fn parse(text: &str) -> Result<Self> {
        match serde_json::from_str::<LinkFile>(text)? {
            LinkFile::Braid { strands, word } => {
                if strands == 0 {
                    return Err(Error::Parse {
                        location: "field `strands`".into(),
                        message: "a braid needs at least one strand".into(),
                    });
                }
                let b = BraidWord::parse(strands, &word).map_err(|e| match e {
                    Error::Parse { location, message } => {
                        Error::Parse { location: format!("field `word`, {location}"), message }
                    }
                    other => other,
                })?;
                LinkRepr::braid(b)
            }
            LinkFile::Pd { components, crossings } => {
                let crossings =
                    crossings.into_iter().map(|c| Crossing { arcs: c.arcs, sign: c.sign }).collect();
                Ok(LinkRepr::Pd(PdCode::new(crossings, components)?))
            }
        }
    }

    /// Deterministic text form; `parse` inverts it.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            LinkRepr::Braid(b) => {
                s.push_str("{\n  \"type\": \"braid\",\n");
                let _ = writeln!(s, "  \"strands\": {},", b.strands());
                let _ = writeln!(s, "  \"word\": \"{b}\"");
                s.push_str("}\n");
            }
            LinkRepr::Pd(pd) => {
                s.push_str("{\n  \"type\": \"pd\",\n  \"components\": [");
                let comps: Vec<String> = pd.components().iter().map(|c| json_list(c)).collect();
                s.push_str(&comps.join(", "));
                s.push_str("],\n  \"crossings\": [");
                for (i, c) in pd.crossings().iter().enumerate() {
                    s.push_str(if i == 0 { "\n" } else { ",\n" });
                    let _ = write!(s, "    {{\"arcs\": {}, \"sign\": {}}}", json_list(&c.arcs), c.sign);
                }
                if !pd.crossings().is_empty() {
                    s.push_str("\n  ");
                }
                s.push_str("]\n}\n");
            }
        }
        s
    }

    pub fn num_components(&self) -> usize {
        match self {
            LinkRepr::Braid(b) => b.strands(),
            LinkRepr::Pd(pd) => pd.num_components(),
        }
    }

    pub fn to_pd(&self) -> PdCode {
        match self {
            LinkRepr::Braid(b) => PdCode::braid_closure(b),
            LinkRepr::Pd(pd) => pd.clone(),
        }
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        let m = self.num_components();
        for idx in [i, j] {
            if idx == 0 || idx > m {
                return Err(Error::ComponentOutOfRange { index: idx, components: m });
            }
        }
        if i == j {
            return Err(Error::InvalidIndex(vec![i as u16, j as u16]));
        }
        match self {
            LinkRepr::Braid(b) => b.linking_number(i, j),
            LinkRepr::Pd(pd) => pd.linking_number(i, j),
        }
    }

    /// Longitudes exact in degrees below `q`.
    pub fn peripheral(&self, q: usize) -> Result<PeripheralData> {
        match self {
            LinkRepr::Braid(b) => braid_longitudes(b, q),
            LinkRepr::Pd(pd) => wirtinger_longitudes(pd, q),
        }
    }

    /// Reverses the orientation of the listed 1-based components. Braids are
    /// converted to PD codes.
    pub fn reverse_components(&self, which: &[usize]) -> Result<LinkRepr> {
        if which.is_empty() {
            return Ok(self.clone());
        }
        Ok(LinkRepr::Pd(reverse_components(&self.to_pd(), which)?))
    }
}

fn json_list(v: &[u32]) -> String {
    let items: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// Reverses the orientation of the listed 1-based components. Crossings
/// between a reversed and a kept component change sign.
pub fn reverse_components(pd: &PdCode, which: &[usize]) -> Result<PdCode> {
    let m = pd.num_components();
    let mut flip = vec![false; m];
    for &i in which {
        if i == 0 || i > m {
            return Err(Error::ComponentOutOfRange { index: i, components: m });
        }
        flip[i - 1] = true;
    }
    let comp_of = |l: u32| pd.component_of(l).expect("label in a component");
    let crossings = pd
        .crossings()
        .iter()
        .map(|c| {
            let (mut under, mut over) = (c.under(), c.over());
            let fu = flip[comp_of(under.0)];
            let fo = flip[comp_of(over.0)];
            if fu {
                under = (under.1, under.0);
            }
            if fo {
                over = (over.1, over.0);
            }
            let sign = if fu != fo { -c.sign } else { c.sign };
            Crossing::from_strands(under, over, sign)
        })
        .collect();
    let components = pd
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut c = c.clone();
            if flip[i] {
                c.reverse();
            }
            c
        })
        .collect();
    PdCode::new(crossings, components)
}

/// A string link given by a pure braid. Stacking puts `self` on top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringLink {
    braid: BraidWord,
}

impl StringLink {
    pub fn new(braid: BraidWord) -> Result<Self> {
        braid.require_pure()?;
        Ok(StringLink { braid })
    }

    pub fn identity(m: usize) -> Self {
        StringLink { braid: BraidWord::identity(m) }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn num_components(&self) -> usize {
        self.braid.strands()
    }

    pub fn stack(&self, other: &StringLink) -> Result<StringLink> {
        Ok(StringLink { braid: self.braid.multiply(&other.braid)? })
    }

    /// `n`-fold stack of `self`.
    pub fn power(&self, n: usize) -> StringLink {
        StringLink { braid: self.braid.pow(n) }
    }

    /// Concordance inverse: the mirror image with reversed orientation, which
    /// for braids is the group inverse.
    pub fn inverse(&self) -> StringLink {
        StringLink { braid: self.braid.inverse() }
    }

    pub fn closure(&self) -> LinkRepr {
        LinkRepr::Braid(self.braid.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = r#"{"type": "pd", "components": [[1, 2], [3, 4]],
        "crossings": [{"arcs": [1, 4, 2, 3], "sign": 1}, {"arcs": [3, 2, 4, 1], "sign": 1}]}"#;

    #[test]
    fn parse_hopf_pd() {
        let l = LinkRepr::parse(HOPF).unwrap();
        assert_eq!(l.num_components(), 2);
        assert_eq!(l.linking_number(1, 2).unwrap(), 1);
        assert_eq!(LinkRepr::parse(&l.to_text()).unwrap(), l);
    }

    #[test]
    fn braid_round_trip() {
        let text = "{\n  \"type\": \"braid\",\n  \"strands\": 3,\n  \"word\": \"s2 s1^-1 s2 s1^-1 s2 s1^-1\"\n}\n";
        let l = LinkRepr::parse(text).unwrap();
        assert_eq!(l.to_text(), text);
    }

    #[test]
    fn parse_errors() {
        let triple = r#"{"type": "pd", "components": [[1, 2]],
            "crossings": [{"arcs": [1, 1, 2, 1], "sign": 1}]}"#;
        assert!(matches!(LinkRepr::parse(triple), Err(Error::ArcMultiplicity { label: 1, count: 3 })));
        let token = r#"{"type": "braid", "strands": 2, "word": "s1 t1"}"#;
        let err = LinkRepr::parse(token).unwrap_err();
        assert!(err.to_string().contains("token 2"), "{err}");
        assert!(matches!(
            LinkRepr::parse(r#"{"type": "braid", "strands": 2, "word": "s1"}"#),
            Err(Error::NonPureBraid(_))
        ));
        let err = LinkRepr::parse("{\"type\": \"knot\"}").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn reversal() {
        let l = LinkRepr::parse(HOPF).unwrap();
        let r = l.reverse_components(&[2]).unwrap();
        assert_eq!(r.linking_number(1, 2).unwrap(), -1);
        let rr = r.reverse_components(&[2]).unwrap();
        assert_eq!(rr.linking_number(1, 2).unwrap(), 1);
        assert!(l.reverse_components(&[3]).is_err());
    }

    #[test]
    fn stacking() {
        let br = StringLink::new(BraidWord::parse(3, "s2 s1^-1 s2 s1^-1 s2 s1^-1").unwrap()).unwrap();
        assert_eq!(br.stack(&StringLink::identity(3)).unwrap(), br);
        assert!(br.stack(&StringLink::identity(2)).is_err());
        assert_eq!(br.power(3).braid().len(), 18);
        assert!(StringLink::new(BraidWord::parse(2, "s1").unwrap()).is_err());
    }
}
