use std::path::PathBuf;

use clap::Args;
use mubar::invariants::{self, check_budget, parse_index, DEFAULT_BUDGET};
use mubar::{LinkRepr, Mode, MuTable, ObstructionReport};
use serde_json::{json, Value};

use crate::{emit, read_link, CliResult, Failure};

#[derive(Args)]
pub struct ComputeArgs {
    /// Link file (braid or PD).
    pub file: PathBuf,
    /// Scan every sequence of length 2..=Q.
    #[arg(long, default_value_t = 4)]
    pub max_len: usize,
    /// Compute only these sequences, e.g. `--index 123 --index 1,2,10`.
    #[arg(long)]
    pub index: Vec<String>,
    /// Cap on coefficient extractions.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Write the JSON report here and print a table to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// One `+` or `-` per component; `-` reverses that component.
    #[arg(long, allow_hyphen_values = true)]
    pub orientation: Option<String>,
    /// Scan on one thread.
    #[arg(long)]
    pub sequential: bool,
}

fn parse_orientation(text: &str, m: usize) -> CliResult<Vec<usize>> {
    let signs: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    if signs.len() != m {
        return Err(Failure::input(format!(
            "--orientation has {} signs, the link has {m} components",
            signs.len()
        )));
    }
    let mut flipped = Vec::new();
    for (i, c) in signs.into_iter().enumerate() {
        match c {
            '+' => {}
            '-' => flipped.push(i + 1),
            other => {
                return Err(Failure::input(format!("--orientation: unexpected `{other}`")))
            }
        }
    }
    Ok(flipped)
}

fn linking_matrix(link: &LinkRepr) -> CliResult<Vec<Vec<i64>>> {
    let m = link.num_components();
    let mut rows = vec![vec![0i64; m]; m];
    for i in 1..=m {
        for j in i + 1..=m {
            let lk = link.linking_number(i, j)?;
            rows[i - 1][j - 1] = lk;
            rows[j - 1][i - 1] = lk;
        }
    }
    Ok(rows)
}

pub fn run(args: &ComputeArgs) -> CliResult<()> {
    if args.budget == 0 {
        return Err(Failure::input("--budget must be positive"));
    }
    let mut link = read_link(&args.file)?;
    if let Some(text) = &args.orientation {
        let flipped = parse_orientation(text, link.num_components())?;
        link = link.reverse_components(&flipped)?;
    }
    let m = link.num_components();
    let mode = if args.sequential { Mode::Sequential } else { Mode::Parallel };
    let mut report = json!({
        "input": args.file.display().to_string(),
        "components": m,
        "orientation": args.orientation,
        "linking_numbers": linking_matrix(&link)?,
    });
    let mut table = String::new();

    if args.index.is_empty() {
        if args.max_len < 2 {
            return Err(Failure::input("--max-len must be at least 2"));
        }
        check_budget(m, args.max_len, args.budget)?;
        let data = link.peripheral(args.max_len)?;
        let mu = MuTable::build(&data, args.max_len, args.budget, mode)?;
        let first = mu.first_nonvanishing();
        let obstruction = ObstructionReport::new(&first, args.max_len);
        report["table"] = mu.to_json();
        report["obstruction"] = obstruction.to_json();
        table.push_str(&format!("{:<14} {:>12} {:>8} {:>12}\n", "I", "mu", "Delta", "mu-bar"));
        for e in mu.nonzero_entries() {
            table.push_str(&format!("{:<14} {:>12} {:>8} {:>12}\n", e.index, e.mu, e.delta, e.mubar));
        }
        for note in &obstruction.notes {
            table.push_str(&format!("- {note}\n"));
        }
    } else {
        let indices: Vec<Vec<u16>> =
            args.index.iter().map(|t| parse_index(t)).collect::<Result<_, _>>()?;
        let q = indices.iter().map(Vec::len).max().unwrap_or(2).max(2);
        // each entry needs its own coefficient plus at most 2^|I| shorter ones
        let cost: u128 = indices.iter().map(|i| 1u128 << i.len().min(100)).sum();
        if cost > args.budget {
            return Err(mubar::Error::BudgetExceeded { required: cost, budget: args.budget }.into());
        }
        let data = link.peripheral(q)?;
        let entries = indices
            .iter()
            .map(|i| invariants::mubar(&data, i))
            .collect::<Result<Vec<_>, _>>()?;
        table.push_str(&format!("{:<14} {:>12} {:>8} {:>12}\n", "I", "mu", "Delta", "mu-bar"));
        for e in &entries {
            table.push_str(&format!("{:<14} {:>12} {:>8} {:>12}\n", e.index, e.mu, e.delta, e.mubar));
        }
        report["degree"] = json!(q);
        report["entries"] = serde_json::to_value(&entries).map_err(mubar::Error::from)?;
    }

    let text = render(&report);
    match &args.output {
        Some(path) => {
            emit(Some(path), &text)?;
            print!("{table}");
        }
        None => emit(None, &text)?,
    }
    Ok(())
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
