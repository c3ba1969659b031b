use std::path::PathBuf;

use clap::{Args, Subcommand};
use mubar::operators::{
    bing_double, braid_commutator_link, doubled_crossing_count, twisted_whitehead, DoublingSpec,
    Target, DEFAULT_CROSSING_CAP,
};
use mubar::{Error, LinkRepr, StringLink};

use crate::{emit, read_link, CliResult, Failure};

#[derive(Args)]
pub struct OutputArg {
    /// Write the link file here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum OpCommand {
    /// Bing double a component, or every component.
    Bing {
        file: PathBuf,
        /// Apply the operator this many times.
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// 1-based component to double; all components when omitted.
        #[arg(long)]
        component: Option<usize>,
        /// Extra full twists in each doubled band.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        clasp_sign: i8,
        /// Refuse to build diagrams with more crossings than this.
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Whitehead link with `--twist` full twists.
    Whitehead {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        twist: i64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Stack pure-braid string links, first file on top.
    Stack {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Repeat the whole stack.
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The commutator of the Borromean braid with its conjugate by `s1`.
    Commutator {
        #[command(flatten)]
        out: OutputArg,
    },
}

pub fn run(op: &OpCommand) -> CliResult<()> {
    let (link, out) = match op {
        OpCommand::Bing { file, times, component, twist, clasp_sign, cap, out } => {
            if *times == 0 {
                return Err(Failure::input("--times must be at least 1"));
            }
            if !matches!(clasp_sign, 1 | -1) {
                return Err(Failure::input("--clasp-sign must be 1 or -1"));
            }
            let target = component.map_or(Target::All, Target::Component);
            let spec = DoublingSpec { target, clasp_sign: *clasp_sign, twist: *twist };
            let mut pd = read_link(file)?.to_pd();
            for _ in 0..*times {
                let size = doubled_crossing_count(&pd, &spec)?;
                if size > *cap as u128 {
                    return Err(Error::SizeExceeded { what: "crossings", size, cap: *cap as u128 }.into());
                }
                pd = bing_double(&pd, &spec)?;
            }
            (LinkRepr::Pd(pd), out)
        }
        OpCommand::Whitehead { twist, out } => (LinkRepr::Pd(twisted_whitehead(*twist)), out),
        OpCommand::Stack { files, times, out } => {
            if *times == 0 {
                return Err(Failure::input("--times must be at least 1"));
            }
            let mut parts = Vec::new();
            for f in files {
                match read_link(f)? {
                    LinkRepr::Braid(b) => parts.push(StringLink::new(b)?),
                    LinkRepr::Pd(_) => {
                        return Err(Failure::input(format!(
                            "{}: stacking needs braid input",
                            f.display()
                        )))
                    }
                }
            }
            let mut acc = parts[0].clone();
            for p in &parts[1..] {
                acc = acc.stack(p)?;
            }
            (acc.power(*times).closure(), out)
        }
        OpCommand::Commutator { out } => (LinkRepr::Braid(braid_commutator_link()), out),
    };
    emit(out.output.as_ref(), &link.to_text())
}
