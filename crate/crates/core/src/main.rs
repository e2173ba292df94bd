use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orbifold_hf::catalog;
use orbifold_hf::homology::{edge_reduce, homology_rank};
use orbifold_hf::io::{parse, serialize, serialize_type_a, serialize_type_d};
use orbifold_hf::orbifold::{d_n, hfo_with, lemma42_witness, orb_extend, OrbifoldOrders};
use orbifold_hf::tensor::box_a_d_with;
use orbifold_hf::{AnyStructure, Error, Execution, TypeAStructure, TypeDStructure};

/// Bordered Floer structures over the torus algebra and orbifold ranks.
///
/// Structure arguments are file paths or catalog names: `solid-torus`,
/// `lens:<p>`, `identity-da`, `random:<seed>`.
#[derive(Parser)]
#[command(name = "hfo", version)]
struct Cli {
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structure equation; prints PASS or FAIL.
    Check { file: String },
    /// Emit the type D structure D_n.
    Dn {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Box a type A with a type D structure and report the homology rank.
    Box { a: String, d: String },
    /// Emit the orbifold extension of a type A structure.
    Orbextend {
        a: String,
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank of the orbifold Floer homology for one ordering of orders.
    Hfo {
        a: String,
        #[arg(required = true)]
        orders: Vec<usize>,
    },
    /// Cancel idempotent-labeled edges of a type D structure.
    Reduce {
        d: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that extending by n and boxing with D_1 matches boxing with D_n.
    VerifyLemma42 { a: String, n: usize },
    /// Emit a catalog structure.
    Catalog {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure reported on one line of stderr.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn load(arg: &str) -> Result<AnyStructure, Failure> {
    if let Some(entry) = catalog::lookup(arg) {
        return entry.map_err(|e| Failure(format!("{arg}: {e}")));
    }
    let text = fs::read_to_string(arg).map_err(|e| Failure(format!("{arg}: {e}")))?;
    parse(&text).map_err(|e| Failure(format!("{arg}: {e}")))
}

fn load_a(arg: &str) -> Result<TypeAStructure, Failure> {
    match load(arg)? {
        AnyStructure::A(a) => Ok(a),
        other => Err(Failure(format!(
            "{arg}: expected typeA, found {}",
            other.kind()
        ))),
    }
}

fn load_d(arg: &str) -> Result<TypeDStructure, Failure> {
    match load(arg)? {
        AnyStructure::D(d) => Ok(d),
        other => Err(Failure(format!(
            "{arg}: expected typeD, found {}",
            other.kind()
        ))),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(pass: bool, detail: Option<String>) -> ExitCode {
    if pass {
        println!("PASS");
        ExitCode::SUCCESS
    } else {
        match detail {
            Some(d) => println!("FAIL {d}"),
            None => println!("FAIL"),
        }
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Check { file } => match load(&file)? {
            AnyStructure::D(d) => {
                d.validate_idempotents()?;
                let v = d.structure_equation_violation();
                Ok(verdict(
                    v.is_none(),
                    v.map(|(x, c, z)| {
                        format!(
                            "at {} -> {} with product {c}",
                            d.generator(x).name,
                            d.generator(z).name
                        )
                    }),
                ))
            }
            AnyStructure::A(a) => {
                a.validate_idempotents()?;
                let v = a.structure_equation_violation_with(exec);
                Ok(verdict(v.is_none(), v.map(|v| v.to_string())))
            }
            AnyStructure::DA(da) => {
                da.validate_idempotents()?;
                Ok(verdict(true, None))
            }
        },
        Command::Dn { n, output } => {
            emit(&serialize_type_d(&d_n(n)?), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Box { a, d } => {
            let (a, d) = (load_a(&a)?, load_d(&d)?);
            let c = box_a_d_with(&a, &d, exec)?;
            println!("generators {}", c.len());
            println!("boundary-entries {}", c.boundary().nnz());
            println!("rank {}", homology_rank(&c)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbextend { a, n, output } => {
            let e = orb_extend(&load_a(&a)?, n)?;
            emit(&serialize_type_a(&e), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hfo { a, orders } => {
            let a = load_a(&a)?;
            let orders = OrbifoldOrders::new(orders)?;
            println!("rank {}", hfo_with(&a, &orders, exec)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { d, output } => {
            let r = edge_reduce(&load_d(&d)?)?;
            emit(&serialize_type_d(&r), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyLemma42 { a, n } => {
            let w = lemma42_witness(&load_a(&a)?, n)?;
            Ok(verdict(w.intertwines, None))
        }
        Command::Catalog { name, output } => {
            let s = catalog::lookup(&name)
                .ok_or_else(|| Failure(format!("unknown catalog name `{name}`")))?
                .map_err(|e| Failure(format!("{name}: {e}")))?;
            emit(&serialize(&s), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
