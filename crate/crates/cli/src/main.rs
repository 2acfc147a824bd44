use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use callan_core::bijections::{
    phi, phi_inverse, psi, psi_b, psi_r, relabel_max_min, relabel_min_max, PsiIntermediate,
};
use callan_core::combinat::{
    count_mbarred, enumerate_callan, enumerate_dumont, enumerate_mbarred, MBarredCallanSequence,
};
use callan_core::harness::{format_table, run_claim, Budget, Claim, VerificationReport};
use callan_core::numbers::{c_table, genocchi_list, poly_bernoulli_b, poly_bernoulli_c};
use callan_core::Exec;

#[derive(Parser)]
#[command(
    name = "callan",
    version,
    about = "Poly-Bernoulli numbers, m-barred Callan sequences and their bijections"
)]
struct Cli {
    /// Run every sweep on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genocchi numbers G_0..=G_max.
    Genocchi {
        #[arg(long)]
        max: usize,
    },
    /// A single B_n^(k) or C_n^(k), or the table of C_n^(-k-1) as CSV.
    Number {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// List or count combinatorial objects.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Red elements; for `dumont`, the permutation length (even).
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Bar parameter; for `callan`, the shift of both base sets.
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Apply a bijection to a sequence read from JSON (`-` for stdin).
    Map {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        input: String,
    },
    /// Certify identities and bijections; exits nonzero if any report fails.
    Verify {
        #[arg(long)]
        claim: String,
        /// Bounds n + 2m for alternating sums and k + n + m for per-cell sweeps.
        #[arg(long)]
        max_weight: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    B,
    C,
    Ctable,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Callan,
    Mbarred,
    Dumont,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Phi,
    PhiInv,
    Psi,
    PsiB,
    PsiR,
    Relabel,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let mut out = io::stdout().lock();
    match run(cli.command, exec, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, exec: Exec, out: &mut impl Write) -> Result<bool> {
    match command {
        Command::Genocchi { max } => {
            for (n, g) in genocchi_list(max)?.iter().enumerate() {
                writeln!(out, "{n} {g}")?;
            }
        }
        Command::Number { family, n, k } => match family {
            Family::B => writeln!(out, "{}", poly_bernoulli_b(n, k))?,
            Family::C => writeln!(out, "{}", poly_bernoulli_c(n, k))?,
            Family::Ctable => {
                let max_k = usize::try_from(k).context("--k must be nonnegative for ctable")?;
                write_ctable(out, n, max_k)?;
            }
        },
        Command::Enumerate {
            kind,
            k,
            n,
            m,
            count_only,
            json,
        } => enumerate(out, kind, k, n, m, count_only, json, exec)?,
        Command::Map { which, input } => map(out, which, &input)?,
        Command::Verify {
            claim,
            max_weight,
            json,
        } => return verify(out, &claim, max_weight, json, exec),
    }
    Ok(true)
}

fn write_ctable(out: &mut impl Write, max_n: usize, max_k: usize) -> Result<()> {
    let table = c_table(max_n, max_k)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n\\k".to_string()];
    header.extend((0..=max_k).map(|k| k.to_string()));
    w.write_record(&header)?;
    for (n, row) in table.iter().enumerate() {
        let mut record = vec![n.to_string()];
        record.extend(row.iter().map(ToString::to_string));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    out: &mut impl Write,
    kind: Kind,
    k: u32,
    n: u32,
    m: u32,
    count_only: bool,
    json: bool,
    exec: Exec,
) -> Result<()> {
    match kind {
        Kind::Callan => {
            if count_only {
                writeln!(out, "{}", enumerate_callan(k, n, m).count())?;
                return Ok(());
            }
            for c in enumerate_callan(k, n, m) {
                if json {
                    writeln!(out, "{}", serde_json::to_string(&c)?)?;
                } else {
                    writeln!(out, "{c}")?;
                }
            }
        }
        Kind::Mbarred => {
            if count_only {
                writeln!(out, "{}", count_mbarred(k, n, m, exec))?;
                return Ok(());
            }
            for s in enumerate_mbarred(k, n, m) {
                if json {
                    writeln!(out, "{}", s.to_json())?;
                } else {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Kind::Dumont => {
            let perms = enumerate_dumont(n)?;
            if count_only {
                writeln!(out, "{}", perms.len())?;
                return Ok(());
            }
            for p in perms {
                if json {
                    writeln!(out, "{}", serde_json::to_string(&p)?)?;
                } else {
                    writeln!(out, "{p}")?;
                }
            }
        }
    }
    Ok(())
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn map(out: &mut impl Write, which: Which, path: &str) -> Result<()> {
    let text = read_input(path)?;
    let s = MBarredCallanSequence::from_json(&text).context("parsing the input sequence")?;
    let (image, case): (MBarredCallanSequence, Value) = match which {
        Which::Phi => phi(&s).map(|(t, c)| (t, json!(c.as_str())))?,
        Which::PhiInv => phi_inverse(&s).map(|(t, c)| (t, json!(c.as_str())))?,
        Which::Psi => psi(&s).map(|(t, c)| (t, json!(c.as_str())))?,
        Which::PsiB => (psi_b(&s)?.0, Value::Null),
        Which::PsiR => psi_r(&PsiIntermediate(s)).map(|(t, c)| (t, json!(c.as_str())))?,
        Which::Relabel => {
            let t = if s.in_barred_max_subset() {
                relabel_max_min(&s)?
            } else {
                relabel_min_max(&s)?
            };
            (t, Value::Null)
        }
    };
    writeln!(out, "{{\"image\":{},\"case\":{case}}}", image.to_json())?;
    Ok(())
}

fn verify(
    out: &mut impl Write,
    claim: &str,
    max_weight: Option<u32>,
    json: bool,
    exec: Exec,
) -> Result<bool> {
    let claims: Vec<Claim> = if claim == "all" {
        Claim::ALL.to_vec()
    } else {
        match Claim::from_name(claim) {
            Some(c) => vec![c],
            None => bail!("unknown claim {claim:?}"),
        }
    };
    let budget = max_weight.map(Budget::uniform).unwrap_or_default();
    let mut reports: Vec<VerificationReport> = Vec::new();
    for c in claims {
        reports.extend(run_claim(c, &budget, exec)?);
    }
    if json {
        for r in &reports {
            writeln!(out, "{}", r.to_json_line())?;
        }
    } else {
        write!(out, "{}", format_table(&reports))?;
        let failed = reports.iter().filter(|r| !r.passed()).count();
        writeln!(out, "{} reports, {} failed", reports.len(), failed)?;
    }
    Ok(reports.iter().all(VerificationReport::passed))
}
