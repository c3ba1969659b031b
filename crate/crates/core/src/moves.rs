//! Reidemeister moves on PD codes, used to test invariance.
//!
//! Every move returns a relabeled diagram. The edge that carried the lowest
//! label of a component keeps that role (its tail piece survives any split
//! and wins any merge), so base meridians stay where they were.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::pd::{canonicalize, slot_map, Crossing, PdCode, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Adds a kink of the given sign on an edge. With `under_first` the strand
    /// passes under itself first.
    R1Add { edge: u32, sign: i8, under_first: bool },
    /// Removes a kink crossing.
    R1Remove { crossing: usize },
    /// Pushes edge `over` across edge `under`, creating two crossings. The
    /// edges must border a common face or lie in different split pieces.
    R2Add { over: u32, under: u32 },
    /// Removes a bigon bounded by the two crossings.
    R2Remove { first: usize, second: usize },
    /// Slides a strand across the crossing opposite it in a triangular face.
    R3 { crossings: [usize; 3] },
}

struct Edit {
    crossings: Vec<Crossing>,
    slots: HashMap<u32, (Slot, Slot)>,
    next: u32,
    reps: Vec<u32>,
}

impl Edit {
    fn new(pd: &PdCode) -> Self {
        let next = pd.components().iter().flatten().copied().max().unwrap_or(0);
        Edit {
            crossings: pd.crossings().to_vec(),
            slots: slot_map(pd.crossings()),
            next,
            reps: pd.base_labels(),
        }
    }

    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    /// Splits edge `e` at `k` new points. Returns `k + 1` pieces in
    /// orientation order; the first keeps the label `e`. On a crossingless
    /// loop the last piece is `e` again.
    fn split(&mut self, e: u32, k: usize) -> Vec<u32> {
        let mut pieces = vec![e];
        pieces.extend((1..k).map(|_| self.fresh()));
        match self.slots.get(&e) {
            Some(&(head, _)) => {
                let last = self.fresh();
                self.crossings[head.0].arcs[head.1] = last;
                pieces.push(last);
            }
            None => pieces.push(e),
        }
        pieces
    }

    /// Merges each group into one label, preferring a component
    /// representative as the survivor.
    fn merge(&mut self, groups: &[Vec<u32>]) {
        // groups that share a label collapse together
        let mut merged: Vec<Vec<u32>> = Vec::new();
        for g in groups {
            let mut acc = g.clone();
            merged.retain(|m| {
                if m.iter().any(|l| acc.contains(l)) {
                    acc.extend(m.iter().copied());
                    false
                } else {
                    true
                }
            });
            merged.push(acc);
        }
        let mut rename: HashMap<u32, u32> = HashMap::new();
        for g in &merged {
            let survivor = g.iter().copied().find(|l| self.reps.contains(l)).unwrap_or(g[0]);
            for &l in g {
                rename.insert(l, survivor);
            }
        }
        for c in &mut self.crossings {
            for a in &mut c.arcs {
                if let Some(&r) = rename.get(a) {
                    *a = r;
                }
            }
        }
    }

    fn finish(self) -> Result<PdCode> {
        let out = canonicalize(self.crossings, &self.reps);
        PdCode::new(out.crossings().to_vec(), out.components().to_vec())
    }
}

fn crossing_index(pd: &PdCode, c: usize) -> Result<()> {
    if c >= pd.num_crossings() {
        return Err(Error::InapplicableMove(format!("no crossing {c}")));
    }
    Ok(())
}

fn edge_exists(pd: &PdCode, e: u32) -> Result<()> {
    if pd.component_of(e).is_none() {
        return Err(Error::InapplicableMove(format!("no edge {e}")));
    }
    Ok(())
}

pub fn reidemeister_move(pd: &PdCode, mv: &Move) -> Result<PdCode> {
    match *mv {
        Move::R1Add { edge, sign, under_first } => r1_add(pd, edge, sign, under_first),
        Move::R1Remove { crossing } => r1_remove(pd, crossing),
        Move::R2Add { over, under } => r2_add(pd, over, under),
        Move::R2Remove { first, second } => r2_remove(pd, first, second),
        Move::R3 { crossings } => r3(pd, crossings),
    }
}

fn r1_add(pd: &PdCode, e: u32, sign: i8, under_first: bool) -> Result<PdCode> {
    edge_exists(pd, e)?;
    if sign != 1 && sign != -1 {
        return Err(Error::InapplicableMove(format!("kink sign {sign}")));
    }
    let mut ed = Edit::new(pd);
    let p = ed.split(e, 2);
    let (first, second) = ((p[0], p[1]), (p[1], p[2]));
    let c = if under_first {
        Crossing::from_strands(first, second, sign)
    } else {
        Crossing::from_strands(second, first, sign)
    };
    ed.crossings.push(c);
    ed.finish()
}

fn r1_remove(pd: &PdCode, ci: usize) -> Result<PdCode> {
    crossing_index(pd, ci)?;
    let c = pd.crossings()[ci];
    let loop_pos = (0..4).find(|&p| c.arcs[p] == c.arcs[(p + 1) % 4]).ok_or_else(|| {
        Error::InapplicableMove(format!("crossing {ci} is not a kink"))
    })?;
    let l = c.arcs[loop_pos];
    let rest: Vec<usize> = (0..4).filter(|&p| c.arcs[p] != l).collect();
    let (e_a, e_b) = match rest.as_slice() {
        [p, q] => {
            if c.is_outgoing(*p) {
                (c.arcs[*q], c.arcs[*p])
            } else {
                (c.arcs[*p], c.arcs[*q])
            }
        }
        // figure-eight curve with a single crossing: both labels are loops
        _ => {
            let other = c.arcs[(loop_pos + 2) % 4];
            (other, other)
        }
    };
    let mut ed = Edit::new(pd);
    ed.crossings.remove(ci);
    ed.merge(&[vec![e_a, l, e_b]]);
    ed.finish()
}

/// First face containing both edges, with the walk direction along each.
fn common_face(pd: &PdCode, e1: u32, e2: u32) -> Option<(bool, bool)> {
    for face in pd.faces() {
        let f1 = face.iter().find(|s| s.edge == e1);
        let f2 = face.iter().find(|s| s.edge == e2);
        if let (Some(a), Some(b)) = (f1, f2) {
            return Some((a.forward, b.forward));
        }
    }
    None
}

fn r2_add(pd: &PdCode, e1: u32, e2: u32) -> Result<PdCode> {
    edge_exists(pd, e1)?;
    edge_exists(pd, e2)?;
    if e1 == e2 {
        return Err(Error::InapplicableMove("R2 needs two different edges".into()));
    }
    let slots = pd.slots();
    let pieces = pd.connected_pieces();
    let piece_of = |e: u32| slots.get(&e).map(|&((c, _), _)| pieces[&c]);
    let split = match (piece_of(e1), piece_of(e2)) {
        (Some(a), Some(b)) => a != b,
        _ => true,
    };
    let (f1, f2) = if split {
        (true, true)
    } else {
        common_face(pd, e1, e2)
            .ok_or_else(|| Error::InapplicableMove(format!("edges {e1} and {e2} share no face")))?
    };
    let (d1, d2) = (if f1 { 1i8 } else { -1 }, if f2 { 1i8 } else { -1 });
    // Along the walk of e1 the finger meets P then Q; along the walk of e2
    // it meets Q then P.
    let sign_p = -d1 * d2;
    let mut ed = Edit::new(pd);
    let o = ed.split(e1, 2);
    let u = ed.split(e2, 2);
    let (o_p, o_q) = if f1 { ((o[0], o[1]), (o[1], o[2])) } else { ((o[1], o[2]), (o[0], o[1])) };
    let (u_p, u_q) = if f2 { ((u[1], u[2]), (u[0], u[1])) } else { ((u[0], u[1]), (u[1], u[2])) };
    ed.crossings.push(Crossing::from_strands(u_p, o_p, sign_p));
    ed.crossings.push(Crossing::from_strands(u_q, o_q, -sign_p));
    ed.finish()
}

fn bigon_edges(pd: &PdCode, a: usize, b: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let (ca, cb) = (pd.crossings()[a], pd.crossings()[b]);
    let chain = |x: (u32, u32), y: (u32, u32)| {
        if x.1 == y.0 {
            Some(vec![x.0, x.1, y.1])
        } else if y.1 == x.0 {
            Some(vec![y.0, y.1, x.1])
        } else {
            None
        }
    };
    let over = chain(ca.over(), cb.over())?;
    let under = chain(ca.under(), cb.under())?;
    let bounded = pd.faces().iter().any(|f| {
        f.len() == 2
            && f.iter().any(|s| s.edge == over[1])
            && f.iter().any(|s| s.edge == under[1])
    });
    bounded.then_some((over, under))
}

fn r2_remove(pd: &PdCode, a: usize, b: usize) -> Result<PdCode> {
    crossing_index(pd, a)?;
    crossing_index(pd, b)?;
    if a == b {
        return Err(Error::InapplicableMove("R2 needs two crossings".into()));
    }
    let (over, under) = bigon_edges(pd, a, b)
        .ok_or_else(|| Error::InapplicableMove(format!("crossings {a} and {b} bound no bigon")))?;
    let mut ed = Edit::new(pd);
    ed.crossings = pd
        .crossings()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != a && i != b)
        .map(|(_, c)| *c)
        .collect();
    ed.merge(&[over, under]);
    ed.finish()
}

struct Side {
    /// Crossing where the triangle edge starts and where it ends.
    from: usize,
    to: usize,
    in_ext: u32,
    edge: u32,
    out_ext: u32,
    over_at_from: bool,
    over_at_to: bool,
}

fn triangle(pd: &PdCode, cs: [usize; 3]) -> Option<Vec<Side>> {
    let want: HashSet<usize> = cs.iter().copied().collect();
    if want.len() != 3 {
        return None;
    }
    let slots = pd.slots();
    let face = pd.faces().into_iter().find(|f| {
        f.len() == 3 && f.iter().map(|s| s.slot.0).collect::<HashSet<_>>() == want
    })?;
    let sides: Vec<Side> = face
        .iter()
        .map(|s| {
            let t = s.edge;
            let (head, tail) = slots[&t];
            let arcs = |c: usize| pd.crossings()[c].arcs;
            Side {
                from: tail.0,
                to: head.0,
                in_ext: arcs(tail.0)[(tail.1 + 2) % 4],
                edge: t,
                out_ext: arcs(head.0)[(head.1 + 2) % 4],
                over_at_from: tail.1 % 2 == 1,
                over_at_to: head.1 % 2 == 1,
            }
        })
        .collect();
    let top = sides.iter().filter(|s| s.over_at_from && s.over_at_to).count();
    let bottom = sides.iter().filter(|s| !s.over_at_from && !s.over_at_to).count();
    (top == 1 && bottom == 1).then_some(sides)
}

fn r3(pd: &PdCode, cs: [usize; 3]) -> Result<PdCode> {
    for &c in &cs {
        crossing_index(pd, c)?;
    }
    let sides = triangle(pd, cs).ok_or_else(|| {
        Error::InapplicableMove(format!("crossings {cs:?} do not bound a movable triangle"))
    })?;
    type Strands = ((u32, u32), (u32, u32));
    let mut pairs: HashMap<usize, Strands> =
        cs.iter().map(|&c| (c, (pd.crossings()[c].under(), pd.crossings()[c].over()))).collect();
    for s in &sides {
        // the strand now meets `to` first and `from` second
        let set = |pairs: &mut HashMap<usize, Strands>, c: usize, over: bool, v: (u32, u32)| {
            let entry = pairs.get_mut(&c).expect("triangle crossing");
            if over {
                entry.1 = v;
            } else {
                entry.0 = v;
            }
        };
        set(&mut pairs, s.to, s.over_at_to, (s.in_ext, s.edge));
        set(&mut pairs, s.from, s.over_at_from, (s.edge, s.out_ext));
    }
    let mut ed = Edit::new(pd);
    for (&c, &(under, over)) in &pairs {
        ed.crossings[c] = Crossing::from_strands(under, over, pd.crossings()[c].sign);
    }
    ed.finish()
}

/// Removal and R3 moves applicable to the diagram, in a deterministic order.
pub fn simplifying_sites(pd: &PdCode) -> Vec<Move> {
    let n = pd.num_crossings();
    let mut out = Vec::new();
    for c in 0..n {
        let arcs = pd.crossings()[c].arcs;
        if (0..4).any(|p| arcs[p] == arcs[(p + 1) % 4]) {
            out.push(Move::R1Remove { crossing: c });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if bigon_edges(pd, a, b).is_some() {
                out.push(Move::R2Remove { first: a, second: b });
            }
        }
    }
    for face in pd.faces() {
        if face.len() == 3 {
            let mut cs: Vec<usize> = face.iter().map(|s| s.slot.0).collect();
            cs.sort_unstable();
            let cs = [cs[0], cs[1], cs[2]];
            if triangle(pd, cs).is_some() {
                out.push(Move::R3 { crossings: cs });
            }
        }
    }
    out
}

/// Ordered pairs of distinct edges on a common face, for R2 pokes.
pub fn r2_sites(pd: &PdCode) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for face in pd.faces() {
        for a in &face {
            for b in &face {
                if a.edge != b.edge && seen.insert((a.edge, b.edge)) {
                    out.push((a.edge, b.edge));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn hopf() -> PdCode {
        PdCode::braid_closure(&BraidWord::parse(2, "s1 s1").unwrap())
    }

    #[test]
    fn kink_round_trip() {
        for sign in [1, -1] {
            for under_first in [true, false] {
                let pd = hopf();
                let kinked = reidemeister_move(&pd, &Move::R1Add { edge: 2, sign, under_first }).unwrap();
                assert_eq!(kinked.num_crossings(), 3);
                assert!(kinked.is_planar(), "sign {sign} under_first {under_first}");
                let kink = kinked.crossings().len() - 1;
                let back = reidemeister_move(&kinked, &Move::R1Remove { crossing: kink }).unwrap();
                assert_eq!(back, pd);
            }
        }
    }

    #[test]
    fn kink_on_unknot() {
        let pd = PdCode::unlink(1);
        let k = reidemeister_move(&pd, &Move::R1Add { edge: 1, sign: 1, under_first: true }).unwrap();
        assert_eq!(k.num_crossings(), 1);
        assert!(k.is_planar());
        assert_eq!(reidemeister_move(&k, &Move::R1Remove { crossing: 0 }).unwrap(), pd);
    }

    #[test]
    fn poke_unlink() {
        let pd = PdCode::unlink(2);
        let poked = reidemeister_move(&pd, &Move::R2Add { over: 1, under: 2 }).unwrap();
        assert_eq!(poked.num_crossings(), 2);
        assert!(poked.is_planar());
        assert_eq!(poked.linking_number(1, 2).unwrap(), 0);
        let back = reidemeister_move(&poked, &Move::R2Remove { first: 0, second: 1 }).unwrap();
        assert_eq!(back, pd);
    }

    #[test]
    fn pokes_stay_planar() {
        let pd = hopf();
        for (a, b) in r2_sites(&pd) {
            let poked = reidemeister_move(&pd, &Move::R2Add { over: a, under: b }).unwrap();
            assert!(poked.is_planar(), "poke {a} over {b}");
            assert_eq!(poked.linking_number(1, 2).unwrap(), 1);
            let undo = simplifying_sites(&poked)
                .into_iter()
                .find(|m| matches!(m, Move::R2Remove { .. }))
                .expect("a bigon exists");
            let back = reidemeister_move(&poked, &undo).unwrap();
            assert!(back.is_planar());
            assert_eq!(back.num_crossings(), 2);
        }
    }

    #[test]
    fn inapplicable_sites() {
        let pd = hopf();
        assert!(reidemeister_move(&pd, &Move::R1Remove { crossing: 0 }).is_err());
        assert!(reidemeister_move(&pd, &Move::R2Remove { first: 0, second: 1 }).is_err());
        assert!(reidemeister_move(&pd, &Move::R1Remove { crossing: 7 }).is_err());
        assert!(reidemeister_move(&pd, &Move::R1Add { edge: 99, sign: 1, under_first: true }).is_err());
        assert!(reidemeister_move(&pd, &Move::R3 { crossings: [0, 1, 1] }).is_err());
    }

    #[test]
    fn third_move() {
        // s1 s2 s1 has a movable triangle; the move gives s2 s1 s2
        let pd = PdCode::braid_closure(&BraidWord::parse(3, "s1 s2 s1").unwrap());
        let sites: Vec<Move> =
            simplifying_sites(&pd).into_iter().filter(|m| matches!(m, Move::R3 { .. })).collect();
        assert!(!sites.is_empty());
        for mv in sites {
            let moved = reidemeister_move(&pd, &mv).unwrap();
            assert!(moved.is_planar());
            assert_eq!(moved.num_crossings(), 3);
            let again = reidemeister_move(&moved, &mv).unwrap();
            assert!(again.is_planar());
        }
    }
}
