//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 on success, 1 for malformed input or usage, 2 when
//! well-formed input fails a semantic check.

pub mod input;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::autc::ConjAut;
use crate::classical::{mu_link, parse_pd};
use crate::error::Result;
use crate::gauss::GaussData;
use crate::milnor4::{
    concordance_verdict, format_sequence, link_homotopy_verdict, mu4, MilnorTable, Verdict,
};
use crate::nilpotent::QuotientContext;

use input::{read_source, Welded};

#[derive(Parser, Debug)]
#[command(name = "milnor4", version, about = "Milnor invariants of welded string links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of μ⁽⁴⁾ invariants of a welded string link.
    Mu4 {
        /// Braid tokens, Gauss JSON, a file, or `-` for stdin.
        input: String,
        /// Maximal sequence length.
        #[arg(short, default_value_t = 3)]
        m: usize,
        /// Classical table of the boundary link (TSV or JSON).
        #[arg(long, value_name = "FILE")]
        indeterminacy: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Strand count (defaults to the largest index used).
        #[arg(short)]
        n: Option<usize>,
    },
    /// Compare two diagrams up to link-homotopy (default) or k-concordance.
    Compare {
        a: String,
        b: String,
        /// Compare up to link-homotopy.
        #[arg(long, conflicts_with = "k")]
        lh: bool,
        /// Compare all invariants of length at most K.
        #[arg(short, value_name = "K")]
        k: Option<usize>,
        #[arg(short)]
        n: Option<usize>,
    },
    /// Conjugators of the induced automorphism.
    Phi {
        input: String,
        /// Nilpotent grade (default: reduced free group).
        #[arg(short, conflicts_with = "reduced")]
        k: Option<usize>,
        #[arg(long)]
        reduced: bool,
        #[arg(short)]
        n: Option<usize>,
    },
    /// A diagram inducing the given automorphism (`i: word` lines).
    Realize { input: String },
    /// `a` below `b`, as Gauss JSON.
    Stack {
        a: String,
        b: String,
        #[arg(short)]
        n: Option<usize>,
    },
    /// The reflected diagram, as Gauss JSON.
    Mirror {
        input: String,
        #[arg(short)]
        n: Option<usize>,
    },
    /// Classical Milnor invariants of a link given by a PD code.
    Classical {
        input: String,
        #[arg(short, default_value_t = 3)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                1
            } else {
                2
            }
        }
    }
}

fn welded_pair(a: &str, b: &str, n: Option<usize>, stdin: &mut dyn Read) -> Result<(GaussData, GaussData)> {
    let a = Welded::parse(&read_source(a, stdin)?)?;
    let b = Welded::parse(&read_source(b, stdin)?)?;
    let n = n.unwrap_or_else(|| a.strands().max(b.strands()));
    Ok((a.into_gauss(n)?, b.into_gauss(n)?))
}

fn welded(arg: &str, n: Option<usize>, stdin: &mut dyn Read) -> Result<GaussData> {
    let w = Welded::parse(&read_source(arg, stdin)?)?;
    let n = n.unwrap_or_else(|| w.strands());
    w.into_gauss(n)
}

fn table_text(t: &MilnorTable, format: Format) -> String {
    match format {
        Format::Tsv => t.to_tsv(),
        Format::Json => t.to_json() + "\n",
    }
}

fn gauss_text(d: &GaussData) -> String {
    serde_json::to_string(d).expect("serializable") + "\n"
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<String> {
    match command {
        Command::Mu4 { input, m, indeterminacy, format, n } => {
            let d = welded(&input, n, stdin)?;
            let ind = match indeterminacy {
                Some(path) => Some(MilnorTable::parse(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            Ok(table_text(&mu4(&d, m, ind.as_ref())?, format))
        }
        Command::Compare { a, b, lh: _, k, n } => {
            let (a, b) = welded_pair(&a, &b, n, stdin)?;
            let verdict = match k {
                Some(k) => concordance_verdict(&a, &b, k)?,
                None => link_homotopy_verdict(&a, &b)?,
            };
            Ok(match verdict {
                Verdict::Equal => "EQUAL\n".to_string(),
                Verdict::Distinct { seq, left, right } => {
                    format!("DISTINCT\t{}\t{left}\t{right}\n", format_sequence(&seq))
                }
            })
        }
        Command::Phi { input, k, reduced: _, n } => {
            let d = welded(&input, n, stdin)?;
            let ctx = match k {
                Some(k) => QuotientContext::nilpotent(d.n(), k)?,
                None => QuotientContext::reduced(d.n()),
            };
            Ok(format!("{}\n", ConjAut::from_gauss(&d, ctx)?))
        }
        Command::Realize { input } => {
            let f = ConjAut::parse(&read_source(&input, stdin)?, None)?;
            Ok(gauss_text(&GaussData::realize(f.conjugators())?))
        }
        Command::Stack { a, b, n } => {
            let (a, b) = welded_pair(&a, &b, n, stdin)?;
            Ok(gauss_text(&a.stack(&b)?))
        }
        Command::Mirror { input, n } => Ok(gauss_text(&welded(&input, n, stdin)?.mirror())),
        Command::Classical { input, m, format } => {
            let d = parse_pd(&read_source(&input, stdin)?)?;
            Ok(table_text(&mu_link(&d, m)?, format))
        }
    }
}

/// Convenience for callers that only have argument strings.
pub fn run_to_strings(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("milnor4").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
