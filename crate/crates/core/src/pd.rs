//! Planar-diagram codes for oriented, ordered links.
//!
//! Each crossing lists four edge labels counterclockwise, starting with the
//! incoming under-edge, together with an explicit sign. The under-strand runs
//! from position 0 to position 2. For a positive crossing the over-strand runs
//! from position 3 to position 1; for a negative one from 1 to 3.
//!
//! Components are explicit label cycles in traversal order. A component
//! without crossings is a single label that appears in no crossing.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    /// Builds the canonical tuple from the two strands and the sign.
    pub fn from_strands(under: (u32, u32), over: (u32, u32), sign: i8) -> Crossing {
        let (u_in, u_out) = under;
        let (o_in, o_out) = over;
        let arcs = if sign > 0 { [u_in, o_out, u_out, o_in] } else { [u_in, o_in, u_out, o_out] };
        Crossing { arcs, sign }
    }

    pub fn under(&self) -> (u32, u32) {
        (self.arcs[0], self.arcs[2])
    }

    pub fn over(&self) -> (u32, u32) {
        if self.sign > 0 {
            (self.arcs[3], self.arcs[1])
        } else {
            (self.arcs[1], self.arcs[3])
        }
    }

    /// Positions (0..4) at which an edge leaves the crossing.
    pub fn is_outgoing(&self, pos: usize) -> bool {
        match pos {
            0 => false,
            2 => true,
            1 => self.sign > 0,
            _ => self.sign < 0,
        }
    }
}

/// A position on a crossing: (crossing index, slot 0..4).
pub type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<Crossing>,
    components: Vec<Vec<u32>>,
}

impl PdCode {
    /// Validates and builds a diagram.
    pub fn new(crossings: Vec<Crossing>, components: Vec<Vec<u32>>) -> Result<PdCode> {
        let pd = PdCode { crossings, components };
        pd.validate()?;
        Ok(pd)
    }

    pub fn unlink(m: usize) -> PdCode {
        PdCode { crossings: Vec::new(), components: (1..=m as u32).map(|l| vec![l]).collect() }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidDiagram("no components".into()));
        }
        let mut occurrences: BTreeMap<u32, usize> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Orientation {
                    crossing: ci,
                    message: format!("sign must be +1 or -1, got {}", c.sign),
                });
            }
            for &a in &c.arcs {
                *occurrences.entry(a).or_default() += 1;
            }
        }
        for (&label, &count) in &occurrences {
            if count != 2 {
                return Err(Error::ArcMultiplicity { label, count });
            }
        }
        let mut seen: HashSet<u32> = HashSet::new();
        let mut succ: HashMap<u32, u32> = HashMap::new();
        for comp in &self.components {
            if comp.is_empty() {
                return Err(Error::InvalidDiagram("empty component cycle".into()));
            }
            for (k, &label) in comp.iter().enumerate() {
                if !seen.insert(label) {
                    return Err(Error::InvalidDiagram(format!(
                        "label {label} listed in more than one component position"
                    )));
                }
                if !occurrences.contains_key(&label) && comp.len() != 1 {
                    return Err(Error::ArcMultiplicity { label, count: 0 });
                }
                succ.insert(label, comp[(k + 1) % comp.len()]);
            }
        }
        if let Some(label) = occurrences.keys().find(|l| !seen.contains(l)) {
            return Err(Error::InvalidDiagram(format!("label {label} belongs to no component")));
        }
        for (ci, c) in self.crossings.iter().enumerate() {
            for (strand, (a, b)) in [("under", c.under()), ("over", c.over())] {
                if succ.get(&a) != Some(&b) {
                    return Err(Error::Orientation {
                        crossing: ci,
                        message: format!(
                            "{strand}-strand runs {a} -> {b}, but the component cycle continues {a} -> {}",
                            succ.get(&a).map_or("?".to_string(), |x| x.to_string())
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Index of the component containing `label`.
    pub fn component_of(&self, label: u32) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&label))
    }

    fn label_components(&self) -> HashMap<u32, usize> {
        let mut map = HashMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            for &l in comp {
                map.insert(l, i);
            }
        }
        map
    }

    /// Half the signed count of crossings between components `i` and `j`
    /// (1-based).
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
        let comp = self.label_components();
        let total: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let a = comp[&c.arcs[0]] + 1;
                let b = comp[&c.arcs[1]] + 1;
                (a, b) == (i, j) || (a, b) == (j, i)
            })
            .map(|c| i64::from(c.sign))
            .sum();
        Ok(total / 2)
    }

    /// Signed count of crossings of component `i` (1-based) with itself.
    pub fn self_writhe(&self, i: usize) -> i64 {
        let comp = self.label_components();
        self.crossings
            .iter()
            .filter(|c| comp[&c.arcs[0]] + 1 == i && comp[&c.arcs[1]] + 1 == i)
            .map(|c| i64::from(c.sign))
            .sum()
    }

    /// The two slots holding `label`: (incoming end, outgoing end).
    pub fn slots(&self) -> HashMap<u32, (Slot, Slot)> {
        slot_map(&self.crossings)
    }

    /// Face boundaries as cycles of (slot of arrival, edge label traversed
    /// next, whether traversal follows the edge orientation). Each face is
    /// walked with the face on the right.
    pub fn faces(&self) -> Vec<Vec<FaceStep>> {
        faces_of(&self.crossings)
    }

    /// Every connected piece with crossings satisfies Euler's formula on the
    /// sphere.
    pub fn is_planar(&self) -> bool {
        let faces = self.faces();
        let pieces = self.connected_pieces();
        let mut face_count: HashMap<usize, usize> = HashMap::new();
        for f in &faces {
            *face_count.entry(pieces[&f[0].slot.0]).or_default() += 1;
        }
        let mut crossing_count: HashMap<usize, usize> = HashMap::new();
        for piece in pieces.values() {
            *crossing_count.entry(*piece).or_default() += 1;
        }
        crossing_count.iter().all(|(p, &n)| face_count.get(p).copied().unwrap_or(0) == n + 2)
    }

    /// Maps each crossing index to a connected-piece id.
    pub fn connected_pieces(&self) -> HashMap<usize, usize> {
        let slots = self.slots();
        let mut piece: HashMap<usize, usize> = HashMap::new();
        let mut next = 0;
        for start in 0..self.crossings.len() {
            if piece.contains_key(&start) {
                continue;
            }
            let mut stack = vec![start];
            piece.insert(start, next);
            while let Some(c) = stack.pop() {
                for &a in &self.crossings[c].arcs {
                    let ((c1, _), (c2, _)) = slots[&a];
                    for n in [c1, c2] {
                        if let std::collections::hash_map::Entry::Vacant(e) = piece.entry(n) {
                            e.insert(next);
                            stack.push(n);
                        }
                    }
                }
            }
            next += 1;
        }
        piece
    }

    /// Closure of a braid. Components are the permutation cycles, ordered by
    /// their smallest strand position, and each is labeled consecutively
    /// starting from the bottom edge at that position.
    pub fn braid_closure(b: &BraidWord) -> PdCode {
        let s = b.strands();
        let mut next = 0u32;
        let mut fresh = || {
            next += 1;
            next
        };
        let bottom: Vec<u32> = (0..s).map(|_| fresh()).collect();
        let mut at = bottom.clone();
        let mut crossings = Vec::with_capacity(b.len());
        for g in b.gens().iter().rev() {
            let k = usize::from(g.gen) - 1;
            let (a_in, b_in) = (at[k], at[k + 1]);
            let (a_out, b_out) = (fresh(), fresh());
            // strand A climbs from position k to k+1, strand B the other way
            let c = if g.inverse {
                Crossing::from_strands((a_in, a_out), (b_in, b_out), -1)
            } else {
                Crossing::from_strands((b_in, b_out), (a_in, a_out), 1)
            };
            crossings.push(c);
            at[k + 1] = a_out;
            at[k] = b_out;
        }
        // identify the top edge at each position with the bottom edge
        let rename: HashMap<u32, u32> =
            at.iter().zip(&bottom).filter(|(t, b)| t != b).map(|(&t, &b)| (t, b)).collect();
        for c in &mut crossings {
            for a in &mut c.arcs {
                if let Some(&r) = rename.get(a) {
                    *a = r;
                }
            }
        }
        let mut reps = Vec::new();
        let mut covered: HashSet<u32> = HashSet::new();
        let succ = successor_map(&crossings);
        for &start in &bottom {
            if covered.contains(&start) {
                continue;
            }
            let cycle = trace(&succ, start);
            covered.extend(cycle);
            reps.push(start);
        }
        canonicalize(crossings, &reps)
    }

    /// Relabels so that each component reads 1.., consecutively, starting at
    /// its current lowest label.
    pub fn canonical(&self) -> PdCode {
        let reps: Vec<u32> = self.components.iter().map(|c| *c.iter().min().expect("nonempty")).collect();
        canonicalize(self.crossings.clone(), &reps)
    }

    /// Lowest label of each component; its Wirtinger arc carries the
    /// component's meridian generator.
    pub fn base_labels(&self) -> Vec<u32> {
        self.components.iter().map(|c| *c.iter().min().expect("nonempty")).collect()
    }

    /// Mirror image: every crossing changes sign with orientations kept.
    pub fn mirror(&self) -> PdCode {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                // rotate so the old over-strand becomes the under-strand
                let (o_in, o_out) = c.over();
                let (u_in, u_out) = c.under();
                Crossing::from_strands((o_in, o_out), (u_in, u_out), -c.sign)
            })
            .collect();
        PdCode { crossings, components: self.components.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceStep {
    /// Slot at which the walk arrives.
    pub slot: Slot,
    /// Edge leaving the next slot counterclockwise.
    pub edge: u32,
    /// Whether the walk follows the edge orientation.
    pub forward: bool,
}

pub(crate) fn slot_map(crossings: &[Crossing]) -> HashMap<u32, (Slot, Slot)> {
    let mut inc: HashMap<u32, Slot> = HashMap::new();
    let mut out: HashMap<u32, Slot> = HashMap::new();
    for (ci, c) in crossings.iter().enumerate() {
        for (p, &a) in c.arcs.iter().enumerate() {
            if c.is_outgoing(p) {
                out.insert(a, (ci, p));
            } else {
                inc.insert(a, (ci, p));
            }
        }
    }
    inc.into_iter().map(|(a, s)| (a, (s, out[&a]))).collect()
}

pub(crate) fn faces_of(crossings: &[Crossing]) -> Vec<Vec<FaceStep>> {
    let slots = slot_map(crossings);
    let mut visited: HashSet<Slot> = HashSet::new();
    let mut faces = Vec::new();
    for ci in 0..crossings.len() {
        for p in 0..4 {
            if visited.contains(&(ci, p)) {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = (ci, p);
            while visited.insert(cur) {
                let leave = (cur.0, (cur.1 + 1) % 4);
                let edge = crossings[leave.0].arcs[leave.1];
                let (in_slot, out_slot) = slots[&edge];
                let forward = out_slot == leave;
                face.push(FaceStep { slot: cur, edge, forward });
                cur = if forward { in_slot } else { out_slot };
            }
            faces.push(face);
        }
    }
    faces
}

pub(crate) fn successor_map(crossings: &[Crossing]) -> HashMap<u32, u32> {
    let mut succ = HashMap::new();
    for c in crossings {
        let (a, b) = c.under();
        succ.insert(a, b);
        let (a, b) = c.over();
        succ.insert(a, b);
    }
    succ
}

/// Follows successors from `start` until the cycle closes. A label with no
/// crossing is its own cycle.
pub(crate) fn trace(succ: &HashMap<u32, u32>, start: u32) -> Vec<u32> {
    let mut cycle = vec![start];
    let mut cur = start;
    while let Some(&n) = succ.get(&cur) {
        if n == start {
            break;
        }
        cycle.push(n);
        cur = n;
    }
    cycle
}

/// Traces components from the given representatives and renumbers labels
/// 1.. in traversal order.
pub(crate) fn canonicalize(crossings: Vec<Crossing>, reps: &[u32]) -> PdCode {
    let succ = successor_map(&crossings);
    let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
    let mut components = Vec::with_capacity(reps.len());
    let mut next = 0u32;
    for &r in reps {
        let cycle = trace(&succ, r);
        let mut comp = Vec::with_capacity(cycle.len());
        for l in cycle {
            next += 1;
            relabel.insert(l, next);
            comp.push(next);
        }
        components.push(comp);
    }
    let crossings = crossings
        .into_iter()
        .map(|c| Crossing { arcs: c.arcs.map(|a| relabel[&a]), sign: c.sign })
        .collect();
    PdCode { crossings, components }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> PdCode {
        PdCode::braid_closure(&BraidWord::parse(2, "s1 s1").unwrap())
    }

    #[test]
    fn closure_of_identity_is_unlink() {
        let pd = PdCode::braid_closure(&BraidWord::identity(3));
        assert_eq!(pd, PdCode::unlink(3));
    }

    #[test]
    fn hopf_closure() {
        let pd = hopf();
        assert_eq!(pd.num_crossings(), 2);
        assert_eq!(pd.num_components(), 2);
        assert!(PdCode::new(pd.crossings.clone(), pd.components.clone()).is_ok());
        assert_eq!(pd.linking_number(1, 2).unwrap(), 1);
        assert_eq!(pd.linking_number(2, 1).unwrap(), 1);
        assert!(pd.is_planar());
    }

    #[test]
    fn closure_linking_numbers() {
        let pd = PdCode::braid_closure(&BraidWord::parse(2, "s1 s1 s1 s1").unwrap());
        assert_eq!(pd.linking_number(1, 2).unwrap(), 2);
        let neg = PdCode::braid_closure(&BraidWord::parse(2, "s1^-1 s1^-1").unwrap());
        assert_eq!(neg.linking_number(1, 2).unwrap(), -1);
        assert!(matches!(pd.linking_number(1, 3), Err(Error::ComponentOutOfRange { .. })));
    }

    #[test]
    fn borromean_closure_is_planar() {
        let br = BraidWord::parse(3, "s2 s1^-1 s2 s1^-1 s2 s1^-1").unwrap();
        let pd = PdCode::braid_closure(&br);
        assert_eq!(pd.num_crossings(), 6);
        assert_eq!(pd.num_components(), 3);
        assert!(pd.is_planar());
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(pd.linking_number(i, j).unwrap(), 0);
        }
    }

    #[test]
    fn multiplicity_error() {
        let c = vec![
            Crossing { arcs: [1, 2, 3, 2], sign: 1 },
            Crossing { arcs: [3, 1, 1, 4], sign: 1 },
        ];
        let err = PdCode::new(c, vec![vec![1, 3], vec![2, 4]]).unwrap_err();
        assert!(matches!(err, Error::ArcMultiplicity { .. }), "{err}");
    }

    #[test]
    fn orientation_error() {
        let pd = PdCode::braid_closure(&BraidWord::parse(2, "s1 s1 s1 s1").unwrap());
        let mut comps = pd.components.clone();
        comps[0].reverse();
        let err = PdCode::new(pd.crossings.clone(), comps).unwrap_err();
        assert!(matches!(err, Error::Orientation { .. }), "{err}");
    }

    #[test]
    fn mirror_flips_linking() {
        let pd = hopf().mirror();
        assert!(PdCode::new(pd.crossings.clone(), pd.components.clone()).is_ok());
        assert_eq!(pd.linking_number(1, 2).unwrap(), -1);
    }

    #[test]
    fn nonpure_closure_components() {
        // trefoil: one component
        let pd = PdCode::braid_closure(&BraidWord::parse(2, "s1 s1 s1").unwrap());
        assert_eq!(pd.num_components(), 1);
        assert_eq!(pd.self_writhe(1), 3);
        assert!(pd.is_planar());
    }
}
