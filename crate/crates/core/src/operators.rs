//! Link operators: Bing doubling, twisted Whitehead links and the braid
//! commutator example.
//!
//! Bing doubling is diagrammatic. Each targeted component `C` is replaced by
//! its blackboard 2-cable, whose two lines `L` (left of `C`, same direction)
//! and `R` (right of `C`, reversed) are joined on the base edge of `C` into
//! one long hairpin `A`. Before the hairpin tips, `k = t - w(C)` full twists
//! are inserted between the lines, where `w(C)` is the self-writhe, so that
//! the pattern is 0-framed when `t = 0`. A small ring `B` hooks both tips
//! with four crossings:
//!
//! ```text
//!   L ------------+     B      +------------ L
//!                 |  +-----+   |
//!                 |  |     |   |
//!                 |  +-----+   |
//!   R ------------+            +------------ R
//! ```
//!
//! `B` passes over both tips along its upper arc and under them along its
//! lower arc (clasp sign `+1`; `-1` swaps these). `A` takes the position of
//! `C`; `B` is appended after all existing components, in the order of the
//! targeted components.

use std::collections::HashMap;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::pd::{canonicalize, Crossing, PdCode};

/// Crossing cap for iterated doubling.
pub const DEFAULT_CROSSING_CAP: usize = 250_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    All,
    /// A 1-based component index.
    Component(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoublingSpec {
    pub target: Target,
    pub clasp_sign: i8,
    /// Extra full twists between the two lines of the hairpin.
    pub twist: i64,
}

impl Default for DoublingSpec {
    fn default() -> Self {
        DoublingSpec { target: Target::All, clasp_sign: 1, twist: 0 }
    }
}

type Dir = (i32, i32);

struct Builder {
    next: u32,
    crossings: Vec<Crossing>,
}

impl Builder {
    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    /// Adds a crossing whose sign follows from the planar directions of the
    /// two strands.
    fn cross(&mut self, under: (u32, u32), udir: Dir, over: (u32, u32), odir: Dir) {
        let z = odir.0 * udir.1 - odir.1 * udir.0;
        debug_assert!(z != 0);
        let sign = if z > 0 { 1 } else { -1 };
        self.crossings.push(Crossing::from_strands(under, over, sign));
    }
}

/// Segment labels of one original edge. For a doubled edge the labels at the
/// two ends differ only on the base edge, where the hairpin is inserted.
#[derive(Debug, Clone, Copy)]
enum Lines {
    Single(u32),
    Double { l_tail: u32, l_head: u32, r_tail: u32, r_head: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Line {
    Single,
    L,
    R,
}

impl Lines {
    /// Label of `line` at the tail (`outgoing = true`) or head end.
    fn end(&self, line: Line, outgoing: bool) -> u32 {
        match (*self, line) {
            (Lines::Single(l), _) => l,
            (Lines::Double { l_tail, l_head, .. }, Line::L) => {
                if outgoing {
                    l_tail
                } else {
                    l_head
                }
            }
            (Lines::Double { r_tail, r_head, .. }, _) => {
                if outgoing {
                    r_tail
                } else {
                    r_head
                }
            }
        }
    }

    fn width(&self) -> usize {
        match self {
            Lines::Single(_) => 1,
            Lines::Double { .. } => 2,
        }
    }
}

fn targets(pd: &PdCode, target: Target) -> Result<Vec<bool>> {
    let m = pd.num_components();
    match target {
        Target::All => Ok(vec![true; m]),
        Target::Component(i) if (1..=m).contains(&i) => {
            let mut t = vec![false; m];
            t[i - 1] = true;
            Ok(t)
        }
        Target::Component(i) => Err(Error::ComponentOutOfRange { index: i, components: m }),
    }
}

/// Number of crossings `bing_double` would produce.
pub fn doubled_crossing_count(pd: &PdCode, spec: &DoublingSpec) -> Result<u128> {
    let doubled = targets(pd, spec.target)?;
    let comp_of: HashMap<u32, usize> = pd
        .components()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&l| (l, i)))
        .collect();
    let mut total = 0u128;
    for c in pd.crossings() {
        let w = |l: u32| if doubled[comp_of[&l]] { 2u128 } else { 1 };
        total += w(c.arcs[0]) * w(c.arcs[1]);
    }
    for (i, &d) in doubled.iter().enumerate() {
        if d {
            let k = spec.twist - pd.self_writhe(i + 1);
            total += 4 + 2 * u128::from(k.unsigned_abs());
        }
    }
    Ok(total)
}

/// Bing double of the targeted components.
pub fn bing_double(pd: &PdCode, spec: &DoublingSpec) -> Result<PdCode> {
    if spec.clasp_sign != 1 && spec.clasp_sign != -1 {
        return Err(Error::InvalidDiagram(format!("clasp sign must be +1 or -1, got {}", spec.clasp_sign)));
    }
    let doubled = targets(pd, spec.target)?;
    let m = pd.num_components();
    let base = pd.base_labels();
    let mut b = Builder { next: 0, crossings: Vec::new() };

    let slots = pd.slots();
    let mut lines: HashMap<u32, Lines> = HashMap::new();
    for (ci, comp) in pd.components().iter().enumerate() {
        let crossingless = !slots.contains_key(&comp[0]);
        for &e in comp {
            let entry = if !doubled[ci] {
                Lines::Single(b.fresh())
            } else if e == base[ci] && !crossingless {
                let (l_tail, l_head, r_tail, r_head) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
                Lines::Double { l_tail, l_head, r_tail, r_head }
            } else {
                let (l, r) = (b.fresh(), b.fresh());
                Lines::Double { l_tail: l, l_head: l, r_tail: r, r_head: r }
            };
            lines.insert(e, entry);
        }
    }

    for c in pd.crossings() {
        cable_crossing(&mut b, c, &lines);
    }

    let mut reps: Vec<u32> = Vec::with_capacity(m);
    let mut rings = Vec::new();
    for (ci, &d) in doubled.iter().enumerate() {
        let e0 = lines[&base[ci]];
        match e0 {
            Lines::Single(l) => reps.push(l),
            Lines::Double { l_tail, l_head, r_tail, r_head } => {
                let k = spec.twist - pd.self_writhe(ci + 1);
                debug_assert!(d);
                let (l_w, r_w) = twist_chain(&mut b, l_tail, r_tail, k);
                rings.push(hairpin_tile(&mut b, (l_w, r_w), (l_head, r_head), spec.clasp_sign));
                reps.push(l_tail);
            }
        }
    }
    reps.extend(rings);

    let out = canonicalize(b.crossings, &reps);
    let covered: usize = out.components().iter().map(Vec::len).sum();
    if covered != b.next as usize {
        return Err(Error::Invariant(format!(
            "doubled diagram has {} labels but components cover {covered}",
            b.next
        )));
    }
    PdCode::new(out.crossings().to_vec(), out.components().to_vec())
}

/// Replaces one original crossing by the grid of crossings between the lines
/// of its two strands. The under-strand is drawn going north; the
/// over-strand goes east for a positive crossing and west otherwise.
fn cable_crossing(b: &mut Builder, c: &Crossing, lines: &HashMap<u32, Lines>) {
    let [a0, a1, a2, a3] = c.arcs;
    let east = c.sign > 0;
    let (south, north) = (lines[&a0], lines[&a2]);
    let (west, east_side) = (lines[&a3], lines[&a1]);

    // vertical lines west to east: L is on the left of a northbound strand
    let v_lines: Vec<Line> = if south.width() == 2 { vec![Line::L, Line::R] } else { vec![Line::Single] };
    // horizontal lines south to north: left of eastbound is north
    let h_lines: Vec<Line> = match (west.width(), east) {
        (1, _) => vec![Line::Single],
        (_, true) => vec![Line::R, Line::L],
        (_, false) => vec![Line::L, Line::R],
    };
    let (nv, nh) = (v_lines.len(), h_lines.len());

    // segment labels along each line, in geometric order
    let v_segs: Vec<Vec<u32>> = v_lines
        .iter()
        .map(|&ln| {
            let mut s = vec![south.end(ln, false)];
            s.extend((1..nh).map(|_| b.fresh()));
            s.push(north.end(ln, true));
            s
        })
        .collect();
    // the west end is the head end when the over-strand goes east
    let h_segs: Vec<Vec<u32>> = h_lines
        .iter()
        .map(|&ln| {
            let mut s = vec![west.end(ln, !east)];
            s.extend((1..nv).map(|_| b.fresh()));
            s.push(east_side.end(ln, east));
            s
        })
        .collect();

    for (j, &vl) in v_lines.iter().enumerate() {
        let north_bound = vl != Line::R;
        for (k, &hl) in h_lines.iter().enumerate() {
            let (below, above) = (v_segs[j][k], v_segs[j][k + 1]);
            let (w, e) = (h_segs[k][j], h_segs[k][j + 1]);
            let (under, udir) = if north_bound { ((below, above), (0, 1)) } else { ((above, below), (0, -1)) };
            let east_bound = east == (hl != Line::R);
            let (over, odir) = if east_bound { ((w, e), (1, 0)) } else { ((e, w), (-1, 0)) };
            b.cross(under, udir, over, odir);
        }
    }
}

/// Inserts `|k|` full twists between the two lines of the base edge, drawn
/// going east with `L` on top. Returns the labels of `L` and `R` east of the
/// twists. A full twist of handedness `h` changes the linking of the two
/// lines, taken parallel, by `-h`; the lines are antiparallel, so its
/// crossings have sign `h`.
fn twist_chain(b: &mut Builder, l_tail: u32, r_tail: u32, k: i64) -> (u32, u32) {
    let h = -k.signum() as i32;
    // (label, is L) on top and bottom
    let mut top = (l_tail, true);
    let mut bottom = (r_tail, false);
    for _ in 0..2 * k.unsigned_abs() {
        let (new_top, new_bottom) = (b.fresh(), b.fresh());
        // rising strand: bottom-west to top-east; falling: top-west to bottom-east
        let strand = |west: u32, east: u32, is_l: bool, dy: i32| {
            if is_l {
                ((west, east), (1, dy))
            } else {
                ((east, west), (-1, -dy))
            }
        };
        let rising = strand(bottom.0, new_top, bottom.1, 1);
        let falling = strand(top.0, new_bottom, top.1, -1);
        let (over, under) = if h > 0 { (rising, falling) } else { (falling, rising) };
        b.cross(under.0, under.1, over.0, over.1);
        let was_top = top;
        top = (new_top, bottom.1);
        bottom = (new_bottom, was_top.1);
    }
    debug_assert!(top.1 && !bottom.1);
    (top.0, bottom.0)
}

/// The hairpin tips and the ring hooking them. Returns the ring's base label.
fn hairpin_tile(b: &mut Builder, west: (u32, u32), east: (u32, u32), clasp: i8) -> u32 {
    let (l_w, r_w) = west;
    let (l_e, r_e) = east;
    let (m1, m2) = (b.fresh(), b.fresh());
    let [b1, b2, b3, b4] = [b.fresh(), b.fresh(), b.fresh(), b.fresh()];
    // ring runs counterclockwise: upper arc westward over both tips (b4 -> b1
    // at the east tip, b1 -> b2 at the west tip), lower arc eastward.
    let ring_over_top = clasp > 0;
    let mut hook = |tip: (u32, u32), tdir: Dir, ring: (u32, u32), rdir: Dir, ring_over: bool| {
        if ring_over {
            b.cross(tip, tdir, ring, rdir);
        } else {
            b.cross(ring, rdir, tip, tdir);
        }
    };
    // west tip descends from L to R
    hook((l_w, m1), (0, -1), (b1, b2), (-1, 0), ring_over_top);
    hook((m1, r_w), (0, -1), (b2, b3), (1, 0), !ring_over_top);
    // east tip climbs from R to L
    hook((r_e, m2), (0, 1), (b3, b4), (1, 0), !ring_over_top);
    hook((m2, l_e), (0, 1), (b4, b1), (-1, 0), ring_over_top);
    b1
}

/// `k`-fold Bing doubling of every component, failing before construction
/// when the diagram would exceed `cap` crossings.
pub fn iterated_bing_double(pd: &PdCode, k: usize, cap: usize) -> Result<PdCode> {
    if k == 0 {
        return Err(Error::InvalidDiagram("iteration count must be at least 1".into()));
    }
    let spec = DoublingSpec::default();
    let mut cur = pd.clone();
    for _ in 0..k {
        let size = doubled_crossing_count(&cur, &spec)?;
        if size > cap as u128 {
            return Err(Error::SizeExceeded { what: "crossings", size, cap: cap as u128 });
        }
        cur = bing_double(&cur, &spec)?;
    }
    Ok(cur)
}

/// The Whitehead link with `t` full twists in the clasp band: the Bing
/// double of the unknot with `t` extra twists. `t = 0` is the unlink and
/// `t = 1` the Whitehead link.
pub fn twisted_whitehead(t: i64) -> PdCode {
    let spec = DoublingSpec { target: Target::Component(1), clasp_sign: 1, twist: t };
    bing_double(&PdCode::unlink(1), &spec).expect("unknot doubles")
}

pub fn whitehead() -> PdCode {
    twisted_whitehead(1)
}

/// `s2 s1^-1 s2 s1^-1 s2 s1^-1`, the Borromean rings as a pure braid.
pub fn borromean_braid() -> BraidWord {
    BraidWord::parse(3, "s2 s1^-1 s2 s1^-1 s2 s1^-1").expect("valid braid")
}

/// `(BR)(s1 BR s1^-1)(BR)^-1(s1 BR s1^-1)^-1`.
pub fn braid_commutator_link() -> BraidWord {
    let br = borromean_braid();
    let s1 = BraidWord::sigma(3, 1, 1).expect("valid generator");
    let conj = br.conjugate(&s1).expect("same strands");
    br.commutator(&conj).expect("same strands")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> PdCode {
        PdCode::braid_closure(&BraidWord::parse(2, "s1 s1").unwrap())
    }

    #[test]
    fn unknot_double_shape() {
        let pd = bing_double(&PdCode::unlink(1), &DoublingSpec::default()).unwrap();
        assert_eq!(pd.num_components(), 2);
        assert_eq!(pd.num_crossings(), 4);
        assert_eq!(pd.linking_number(1, 2).unwrap(), 0);
        assert!(pd.is_planar());
    }

    #[test]
    fn hopf_double_shape() {
        let pd = bing_double(&hopf(), &DoublingSpec::default()).unwrap();
        assert_eq!(pd.num_components(), 4);
        assert_eq!(pd.num_crossings(), 2 * 4 + 2 * 4);
        assert!(pd.is_planar());
        for i in 1..=4 {
            for j in i + 1..=4 {
                assert_eq!(pd.linking_number(i, j).unwrap(), 0, "lk({i},{j})");
            }
        }
        let one = bing_double(&hopf(), &DoublingSpec { target: Target::Component(1), ..Default::default() })
            .unwrap();
        assert_eq!(one.num_components(), 3);
        assert!(one.is_planar());
    }

    #[test]
    fn writhe_is_cancelled() {
        let trefoil = PdCode::braid_closure(&BraidWord::parse(2, "s1 s1 s1").unwrap());
        let spec = DoublingSpec::default();
        let pd = bing_double(&trefoil, &spec).unwrap();
        assert!(pd.is_planar());
        assert_eq!(pd.num_crossings() as u128, doubled_crossing_count(&trefoil, &spec).unwrap());
        assert_eq!(pd.num_crossings(), 12 + 4 + 6);
    }

    #[test]
    fn whitehead_family_shape() {
        for t in [-2, 0, 1, 2, 4] {
            let pd = twisted_whitehead(t);
            assert!(pd.is_planar(), "t = {t}");
            assert_eq!(pd.linking_number(1, 2).unwrap(), 0);
            assert_eq!(pd.num_crossings() as i64, 4 + 2 * t.abs());
        }
    }

    #[test]
    fn iterated_sizes() {
        let br = PdCode::braid_closure(&borromean_braid());
        let bd2 = iterated_bing_double(&br, 2, DEFAULT_CROSSING_CAP).unwrap();
        assert_eq!(bd2.num_components(), 12);
        assert!(matches!(iterated_bing_double(&br, 2, 50), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn commutator_is_pure() {
        let l = braid_commutator_link();
        assert!(l.is_pure());
        assert_eq!(l.len(), 24);
    }
}
