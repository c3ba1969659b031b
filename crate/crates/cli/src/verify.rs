//! Built-in regression checks over the shipped golden corpus.

use std::path::PathBuf;

use clap::Args;
use mubar::corpus::golden_links;
use mubar::invariants::{first_nonvanishing, mu, DEFAULT_BUDGET};
use mubar::obstruction::{grope_obstruction, solvability_obstruction};
use mubar::{magnus_expand, FirstNonvanishing, LinkRepr, Mode, StringLink, Word};
use num_bigint::BigInt;

use crate::{CliResult, Failure};

const GROUPS: [&str; 5] = ["golden", "magnus", "invariants", "operators", "obstruction"];

macro_rules! golden {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../golden/", $name)))),*]
    };
}

static EMBEDDED: &[(&str, &str)] = golden!(
    "hopf.pd",
    "unlink2.pd",
    "unlink3.pd",
    "br.braid",
    "br.pd",
    "whitehead.pd",
    "twisted-whitehead-2.pd",
    "twisted-whitehead-4.pd",
    "twisted-whitehead-6.pd",
    "commutator.braid",
    "bd-hopf.pd",
    "bd-br.pd",
);

#[derive(Args)]
pub struct VerifyArgs {
    /// Run one group: golden, magnus, invariants, operators, obstruction.
    #[arg(long)]
    pub only: Option<String>,
    /// Read golden files from this directory instead of the built-in copies.
    #[arg(long)]
    pub golden_dir: Option<PathBuf>,
}

type Check = Result<(), String>;

struct Corpus {
    files: Vec<(String, String)>,
}

impl Corpus {
    fn load(dir: Option<&PathBuf>) -> CliResult<Corpus> {
        let mut files = Vec::new();
        for (name, text) in EMBEDDED {
            let text = match dir {
                Some(d) => {
                    let p = d.join(name);
                    std::fs::read_to_string(&p)
                        .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?
                }
                None => (*text).to_string(),
            };
            files.push((name.to_string(), text));
        }
        Ok(Corpus { files })
    }

    fn link(&self, name: &str) -> Result<LinkRepr, String> {
        let (_, text) = self
            .files
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| format!("{name} not in corpus"))?;
        LinkRepr::parse(text).map_err(|e| format!("{name}: {e}"))
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn mu_of(link: &LinkRepr, index: &[u16]) -> Result<BigInt, String> {
    let data = link.peripheral(index.len()).map_err(|e| e.to_string())?;
    mu(&data, index).map_err(|e| e.to_string())
}

fn first_of(link: &LinkRepr, q: usize) -> Result<FirstNonvanishing, String> {
    let data = link.peripheral(q).map_err(|e| e.to_string())?;
    first_nonvanishing(&data, q, DEFAULT_BUDGET, Mode::Parallel).map_err(|e| e.to_string())
}

fn expect_first(link: &LinkRepr, q: usize, length: usize, abs_value: i64) -> Check {
    match first_of(link, q)? {
        FirstNonvanishing::Found { length: l, value, witness } => {
            expect_eq("first nonvanishing length", l, length)?;
            let v = if value < BigInt::from(0) { -value } else { value };
            expect_eq(&format!("|mu({witness:?})|"), v, BigInt::from(abs_value))
        }
        FirstNonvanishing::AllVanish { up_to } => Err(format!("all vanish up to {up_to}")),
    }
}

fn all_lk_zero(link: &LinkRepr) -> Check {
    let m = link.num_components();
    for i in 1..=m {
        for j in i + 1..=m {
            let lk = link.linking_number(i, j).map_err(|e| e.to_string())?;
            expect_eq(&format!("lk({i},{j})"), lk, 0)?;
        }
    }
    Ok(())
}

const WORDS: [&str; 6] = [
    "x1 x2 x1^-1 x2^-1",
    "x2 x2 x3^-1 x1",
    "x3^-1 x1 x1 x2^-1 x3",
    "x1^-1 x3 x2 x2 x1",
    "x2^-1 x1^-1 x3 x3 x2 x1",
    "x1 x3 x1^-1 x3^-1 x2",
];

type NamedCheck = (&'static str, Box<dyn Fn() -> Check>);

fn magnus_checks() -> Vec<NamedCheck> {
    vec![
        (
            "expansion is multiplicative",
            Box::new(|| {
                for a in WORDS {
                    for b in WORDS {
                        let (u, v) = (Word::parse(3, a).unwrap(), Word::parse(3, b).unwrap());
                        let lhs = magnus_expand(&u.mul(&v).unwrap(), 6);
                        let rhs = magnus_expand(&u, 6).multiply(&magnus_expand(&v, 6)).unwrap();
                        if lhs != rhs {
                            return Err(format!("M({a} * {b}) != M({a}) M({b})"));
                        }
                    }
                }
                Ok(())
            }),
        ),
        (
            "inverse words expand to inverse series",
            Box::new(|| {
                for a in WORDS {
                    let u = Word::parse(3, a).unwrap();
                    let inv = magnus_expand(&u, 6).inverse().unwrap();
                    if inv != magnus_expand(&u.inverse(), 6) {
                        return Err(format!("M({a})^-1 != M({a}^-1)"));
                    }
                }
                Ok(())
            }),
        ),
    ]
}

fn run_group(group: &str, corpus: &Corpus) -> Vec<(String, Check)> {
    let mut out: Vec<(String, Check)> = Vec::new();
    let mut push = |name: &str, c: Check| out.push((name.to_string(), c));
    match group {
        "golden" => {
            for (name, link) in golden_links() {
                let check = corpus
                    .files
                    .iter()
                    .find(|(n, _)| n == name)
                    .ok_or_else(|| "missing".to_string())
                    .and_then(|(_, text)| {
                        if *text == link.to_text() {
                            Ok(())
                        } else {
                            Err("differs from its generator".into())
                        }
                    });
                push(name, check);
            }
        }
        "magnus" => {
            for (name, f) in magnus_checks() {
                push(name, f());
            }
        }
        "invariants" => {
            push("br mu(123) braid = pd, |value| 1", (|| {
                let (b, p) = (corpus.link("br.braid")?, corpus.link("br.pd")?);
                let (vb, vp) = (mu_of(&b, &[1, 2, 3])?, mu_of(&p, &[1, 2, 3])?);
                expect_eq("braid vs pd", &vb, &vp)?;
                expect_eq("|mu(123)|", vb.magnitude().clone(), 1u32.into())
            })());
            push("whitehead mu(1122) = -1, shorter vanish", (|| {
                let w = corpus.link("whitehead.pd")?;
                expect_first(&w, 4, 4, 1)?;
                expect_eq("mu(1122)", mu_of(&w, &[1, 1, 2, 2])?, BigInt::from(-1))
            })());
            for t in [2i64, 4, 6] {
                push(&format!("twisted whitehead t={t}"), (|| {
                    let w = corpus.link(&format!("twisted-whitehead-{t}.pd"))?;
                    expect_eq("mu(1122)", mu_of(&w, &[1, 1, 2, 2])?, BigInt::from(-t))?;
                    expect_eq("mu(1212)", mu_of(&w, &[1, 2, 1, 2])?, BigInt::from(2 * t))
                })());
            }
            push("unlink3 vanishes to length 6", (|| {
                match first_of(&corpus.link("unlink3.pd")?, 6)? {
                    FirstNonvanishing::AllVanish { .. } => Ok(()),
                    other => Err(format!("{other:?}")),
                }
            })());
            push("commutator: lk 0, first length 6", (|| {
                let c = corpus.link("commutator.braid")?;
                all_lk_zero(&c)?;
                expect_first(&c, 6, 6, 1)
            })());
        }
        "operators" => {
            push("bd-hopf: lk 0, first length 4", (|| {
                let l = corpus.link("bd-hopf.pd")?;
                expect_eq("components", l.num_components(), 4)?;
                all_lk_zero(&l)?;
                expect_first(&l, 4, 4, 1)
            })());
            push("bd-br: lk 0, first length 6", (|| {
                let l = corpus.link("bd-br.pd")?;
                expect_eq("components", l.num_components(), 6)?;
                all_lk_zero(&l)?;
                expect_first(&l, 6, 6, 1)
            })());
            push("stacked br: mu(123) scales with k", (|| {
                let br = match corpus.link("br.braid")? {
                    LinkRepr::Braid(b) => StringLink::new(b).map_err(|e| e.to_string())?,
                    LinkRepr::Pd(_) => return Err("br.braid is not a braid".into()),
                };
                let one = mu_of(&br.closure(), &[1, 2, 3])?;
                for k in 1..=5usize {
                    let v = mu_of(&br.power(k).closure(), &[1, 2, 3])?;
                    expect_eq(&format!("k={k}"), v, &one * BigInt::from(k))?;
                }
                Ok(())
            })());
        }
        "obstruction" => {
            push("l=3 excludes (0)-solvable", expect_eq("n", solvability_obstruction(Some(3)), Some(0)));
            push("l=6 excludes (1)-solvable", expect_eq("n", solvability_obstruction(Some(6)), Some(1)));
            push("l=4 keeps n=0, excludes grope 2", (|| {
                expect_eq("n", solvability_obstruction(Some(4)), Some(1))?;
                expect_eq("h", grope_obstruction(Some(4)), Some(2))
            })());
        }
        _ => unreachable!("group names are checked before running"),
    }
    out
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let groups: Vec<&str> = match &args.only {
        Some(g) if GROUPS.contains(&g.as_str()) => vec![g.as_str()],
        Some(g) => {
            return Err(Failure::input(format!(
                "unknown group `{g}`; expected one of {}",
                GROUPS.join(", ")
            )))
        }
        None => GROUPS.to_vec(),
    };
    let corpus = Corpus::load(args.golden_dir.as_ref())?;
    let mut failed = 0usize;
    let mut total = 0usize;
    for group in groups {
        for (name, check) in run_group(group, &corpus) {
            total += 1;
            match check {
                Ok(()) => println!("PASS  {group:<12} {name}"),
                Err(why) => {
                    failed += 1;
                    println!("FAIL  {group:<12} {name}: {why}");
                }
            }
        }
    }
    println!("{} of {total} checks passed", total - failed);
    if failed > 0 {
        return Err(Failure::verify(format!("{failed} check(s) failed")));
    }
    Ok(())
}
