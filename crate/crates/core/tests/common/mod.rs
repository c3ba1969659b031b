#![allow(dead_code)]

use std::collections::BTreeMap;

use mubar::invariants::DEFAULT_BUDGET;
use mubar::moves::{r2_sites, reidemeister_move, simplifying_sites, Move};
use mubar::{Letter, LinkRepr, Mode, MuTable, PdCode, Word};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

pub fn random_word(rng: &mut StdRng, rank: u16, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters =
        (0..len).map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))).collect();
    Word::from_letters(rank, letters).unwrap()
}

pub fn table(link: &LinkRepr, q: usize) -> MuTable {
    let data = link.peripheral(q).unwrap();
    MuTable::build(&data, q, DEFAULT_BUDGET, Mode::Parallel).unwrap()
}

/// Nonzero mu-bar residues up to length `q`.
pub fn mubar_profile(pd: &PdCode, q: usize) -> BTreeMap<String, BigInt> {
    table(&LinkRepr::Pd(pd.clone()), q)
        .nonzero_entries()
        .into_iter()
        .filter(|e| e.mubar != BigInt::from(0))
        .map(|e| (e.index, e.mubar))
        .collect()
}

/// Raw mu of every sequence whose indeterminacy vanishes in `t`.
pub fn exact_profile(t: &MuTable) -> BTreeMap<String, BigInt> {
    t.nonzero_entries()
        .into_iter()
        .filter(|e| e.delta == BigInt::from(0))
        .map(|e| (e.index, e.mu))
        .collect()
}

/// A random walk of Reidemeister moves that keeps the diagram within
/// `slack` crossings of where it started.
pub fn scramble(pd: &PdCode, rng: &mut StdRng, steps: usize, slack: usize) -> PdCode {
    let limit = pd.num_crossings() + slack;
    let mut cur = pd.clone();
    for _ in 0..steps {
        let grow = cur.num_crossings() + 2 <= limit && rng.gen_bool(0.6);
        let mv = if grow {
            if rng.gen_bool(0.5) {
                let sites = r2_sites(&cur);
                if sites.is_empty() {
                    continue;
                }
                let (over, under) = sites[rng.gen_range(0..sites.len())];
                Move::R2Add { over, under }
            } else {
                let edges: Vec<u32> = cur.components().iter().flatten().copied().collect();
                Move::R1Add {
                    edge: edges[rng.gen_range(0..edges.len())],
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                    under_first: rng.gen_bool(0.5),
                }
            }
        } else {
            let sites = simplifying_sites(&cur);
            if sites.is_empty() {
                continue;
            }
            sites[rng.gen_range(0..sites.len())]
        };
        cur = reidemeister_move(&cur, &mv).unwrap();
        assert!(cur.is_planar(), "{mv:?} broke planarity");
    }
    cur
}
