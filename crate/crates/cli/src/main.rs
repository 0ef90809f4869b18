use std::process::ExitCode;

use clap::{Parser, Subcommand};
use subcount::bounds::{bound_for_order, candidate_orders};
use subcount::catalog::{
    catalog_entries, invariant_violations, sequence_terms, spot_check_entries, verify_abelian_rows, verify_catalog,
    CATALOG_MAX_K,
};
use subcount::lattice::Lattice;
use subcount::similarity::enumerate_abelian_classes;
use subcount::{set_order_cap, Count, Error, FactoredOrder, GroupExpr};

/// Exact subgroup counts and classification tables for small finite groups.
#[derive(Parser, Debug)]
#[command(name = "subcount", version)]
struct Cli {
    /// Largest group order the tool will build.
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of subgroups of a group expression, e.g. "Z(9) x Z(3)".
    Count { expr: String },
    /// Total subgroup count, optionally split by subgroup order.
    Lattice {
        expr: String,
        #[arg(long)]
        by_order: bool,
    },
    /// Similarity classes of abelian groups with exactly K subgroups.
    AbelianClasses { k: Count },
    /// Lower bound on the subgroup count of a non-nilpotent group of this order.
    Bound {
        #[arg(value_name = "FACTORED_ORDER")]
        order: FactoredOrder,
    },
    /// Order families admitting a non-nilpotent group with at most K subgroups.
    Candidates { k: Count },
    /// Re-verify the classification tables.
    Verify {
        #[arg(value_parser = ["tables"])]
        what: String,
    },
    /// Number of similarity classes of groups with k subgroups, for k = 1..=K.
    Sequence {
        #[arg(default_value_t = CATALOG_MAX_K)]
        k: Count,
    },
}

enum Failure {
    Verification,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verification,
            e => Failure::Lib(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.max_order {
        set_order_cap(n);
    }
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeCap { .. } => ExitCode::from(3),
                Error::Verification(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

macro_rules! line {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write;
        writeln!($out, $($arg)*).expect("writing to a String");
    }};
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Count { expr } => {
            let g = GroupExpr::parse(&expr)?.eval()?;
            line!(out, "{}", Lattice::new(&g)?.len());
        }
        Command::Lattice { expr, by_order } => {
            let g = GroupExpr::parse(&expr)?.eval()?;
            let summary = Lattice::new(&g)?.summary();
            line!(out, "total\t{}", summary.total);
            if by_order {
                for (order, count) in &summary.by_order {
                    line!(out, "order {order}\t{count}");
                }
            }
        }
        Command::AbelianClasses { k } => {
            let classes = enumerate_abelian_classes(k)?;
            for c in &classes {
                line!(out, "{c}");
            }
            line!(out, "{}", classes.len());
        }
        Command::Bound { order } => {
            let r = bound_for_order(&order)?;
            line!(out, "{}\t{}", r.bound, r.theorem.tag());
        }
        Command::Candidates { k } => {
            for r in candidate_orders(k)? {
                line!(out, "{r}");
            }
        }
        Command::Verify { .. } => verify_tables(out)?,
        Command::Sequence { k } => {
            let terms: Vec<String> = sequence_terms(k)?.iter().map(usize::to_string).collect();
            line!(out, "{}", terms.join(", "));
        }
    }
    Ok(())
}

fn verify_tables(out: &mut String) -> Result<(), Failure> {
    let mut ok = true;
    for row in verify_abelian_rows(22)? {
        ok &= row.passed();
        line!(out, "{row}");
    }
    let catalog = catalog_entries();
    let entries: Vec<_> = catalog.iter().cloned().chain(spot_check_entries()).collect();
    for r in verify_catalog(&entries)? {
        ok &= r.passed();
        line!(out, "{r}");
    }
    for e in &catalog {
        let violations = invariant_violations(e)?;
        ok &= violations.is_empty();
        let verdict = if violations.is_empty() { "PASS" } else { "FAIL" };
        line!(out, "invariants {}\t{}\t{verdict}", e.name, violations.len());
        for v in violations {
            line!(out, "  {}: {}", v.check.name(), v.detail);
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
