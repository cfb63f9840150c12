//! Command-line surface over the stabzx library.
//!
//! Exit codes are a scripting contract: 0 = success (or "equal"),
//! 1 = unequal, 2 = usage, parse or validation error, 3 = oracle qubit
//! bound exceeded. Documents go to standard output with a trailing
//! newline; diagnostics go to standard error.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stabzx::diagram::Diagram;
use stabzx::equality::equal_diagrams;
use stabzx::gslc::state_to_diagram;
use stabzx::normalize::{reduce, to_gslc};
use stabzx::rules::soundness_instances;
use stabzx::semantics::{
    interpret_bounded, random_stabilizer_diagram, scalar_equal, SemanticsError,
    DEFAULT_MAX_QUBITS,
};

#[derive(Parser)]
#[command(name = "stabzx", version, about = "ZX-calculus equality checking for stabilizer quantum mechanics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitFormat {
    Gslc,
    Diagram,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a diagram, printing its canonical form.
    Parse { file: String },
    /// Contract a diagram to its exact matrix.
    Interpret {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
    /// Bring a diagram into reduced GS-LC normal form.
    Normalize {
        file: String,
        #[arg(long, value_enum, default_value = "gslc")]
        emit: EmitFormat,
    },
    /// Decide whether two diagrams denote the same state or map.
    Equal {
        file1: String,
        file2: String,
        /// Cross-check the verdict against the exact matrix oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
    /// Render a diagram in DOT format.
    Dot { file: String },
    /// Run the exhaustive rule-soundness suite.
    RulesCheck,
    /// Generate a seeded random stabilizer state diagram.
    Random {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn load(path: &str) -> Result<Diagram, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("stabzx: cannot read {path}: {e}");
        ExitCode::from(2)
    })?;
    Diagram::parse(&text).map_err(|e| {
        eprintln!("stabzx: {path}: {e}");
        ExitCode::from(2)
    })
}

fn run() -> Result<ExitCode, ExitCode> {
    match Cli::parse().command {
        Command::Parse { file } => {
            let d = load(&file)?;
            println!("{}", d.serialize());
            Ok(ExitCode::SUCCESS)
        }
        Command::Interpret { file, max_qubits } => {
            let d = load(&file)?;
            match interpret_bounded(&d, max_qubits) {
                Ok(m) => {
                    print!("{}", m.render());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ SemanticsError::BoundExceeded { .. }) => {
                    eprintln!("stabzx: {e}");
                    Ok(ExitCode::from(3))
                }
                Err(e) => {
                    eprintln!("stabzx: {e}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Normalize { file, emit } => {
            let d = load(&file)?;
            if let Err(e) = d.validate() {
                eprintln!("stabzx: {file}: {e}");
                return Ok(ExitCode::from(2));
            }
            let bent = if d.n_inputs() > 0 {
                eprintln!("stabzx: bending {} inputs into outputs", d.n_inputs());
                d.bend_inputs()
            } else {
                d
            };
            let state = to_gslc(&bent).expect("bent diagrams have no inputs");
            let reduced = reduce(&state).to_gslc_state();
            match emit {
                EmitFormat::Gslc => println!("{}", reduced.to_json()),
                EmitFormat::Diagram => println!("{}", state_to_diagram(&reduced).serialize()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Equal {
            file1,
            file2,
            oracle,
            max_qubits,
        } => {
            let d1 = load(&file1)?;
            let d2 = load(&file2)?;
            let verdict = match equal_diagrams(&d1, &d2) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("stabzx: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            if oracle {
                let m1 = match interpret_bounded(&d1, max_qubits) {
                    Ok(m) => m,
                    Err(e @ SemanticsError::BoundExceeded { .. }) => {
                        eprintln!("stabzx: {e}");
                        return Ok(ExitCode::from(3));
                    }
                    Err(e) => {
                        eprintln!("stabzx: {e}");
                        return Ok(ExitCode::from(2));
                    }
                };
                let m2 = match interpret_bounded(&d2, max_qubits) {
                    Ok(m) => m,
                    Err(e @ SemanticsError::BoundExceeded { .. }) => {
                        eprintln!("stabzx: {e}");
                        return Ok(ExitCode::from(3));
                    }
                    Err(e) => {
                        eprintln!("stabzx: {e}");
                        return Ok(ExitCode::from(2));
                    }
                };
                let oracle_verdict =
                    (m1.rows(), m1.cols()) == (m2.rows(), m2.cols()) && scalar_equal(&m1, &m2);
                if oracle_verdict != verdict {
                    eprintln!(
                        "stabzx: BUG: decision procedure says {} but the oracle says {}",
                        if verdict { "equal" } else { "unequal" },
                        if oracle_verdict { "equal" } else { "unequal" },
                    );
                    return Ok(ExitCode::from(2));
                }
            }
            if verdict {
                println!("equal");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("unequal");
                Ok(ExitCode::from(1))
            }
        }
        Command::Dot { file } => {
            let d = load(&file)?;
            print!("{}", d.export_dot());
            Ok(ExitCode::SUCCESS)
        }
        Command::RulesCheck => {
            let instances = soundness_instances();
            let mut failures = 0;
            for inst in &instances {
                let lhs = interpret_bounded(&inst.lhs, DEFAULT_MAX_QUBITS)
                    .expect("rule templates are tiny");
                let rhs = interpret_bounded(&inst.rhs, DEFAULT_MAX_QUBITS)
                    .expect("rule templates are tiny");
                if !scalar_equal(&lhs, &rhs) {
                    failures += 1;
                    eprintln!(
                        "stabzx: rule {} ({:?}, phases {:?}) is NOT sound",
                        inst.rule.cli_name(),
                        inst.colour,
                        inst.phases
                    );
                }
            }
            if failures == 0 {
                println!("rules: all sound ({} instances)", instances.len());
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("stabzx: {failures} unsound rule instances");
                Ok(ExitCode::from(2))
            }
        }
        Command::Random {
            qubits,
            depth,
            seed,
        } => {
            if qubits == 0 {
                eprintln!("stabzx: --qubits must be at least 1");
                return Ok(ExitCode::from(2));
            }
            println!(
                "{}",
                random_stabilizer_diagram(qubits, depth, seed).serialize()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(code) => code,
    }
}
