//! Command-line driver for the qabacus library.
//!
//! Every subcommand prints machine-readable output (JSON by default) and
//! exits 0 on success, 1 when a verification ran and failed, and 2 on
//! usage or runtime errors.  All randomized checks take an explicit
//! `--seed` (default 0), so repeated runs are byte-identical.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qabacus::fock::{boson_ladder, verify_ccr, FockCutoff};
use qabacus::oscillator::{
    block_isomorphism_check, degeneracy_table, hamiltonian_2d, OscillatorSpec,
};
use qabacus::report::VerificationReport;
use qabacus::stellar::{poly_from_stars, stars_from_poly, HomogeneousPoly, StarConfiguration};
use qabacus::suites;
use qabacus::sym::symmetrizer;
use qabacus::tape::{
    append_blank, apply_gate, graded_inner, symmetrize_tape, GatePolicy, GradedVector,
};
use qabacus::{car, SparseOp};

#[derive(Parser)]
#[command(
    name = "qabacus",
    version,
    about = "Ladder-operator toolkit: fermionic and bosonic relation checks, \
             symmetric-subspace constructions, star decompositions, and graded \
             tape states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Pretty-printed JSON with sorted keys (byte-deterministic)
    Json,
    /// Human-readable lines
    Plain,
    /// Matrix Market text of the subcommand's operator, where one exists
    MatrixMarket,
}

#[derive(Subcommand)]
enum Command {
    /// Verify fermionic ladder relations for an n-mode register, built two
    /// ways (anticommuting generator pairs and string-operator products),
    /// including the agreement of the two constructions
    Car {
        /// Number of fermionic modes (register dimension is 2^modes)
        #[arg(long, default_value_t = 4)]
        modes: usize,
        /// Tolerance for every checked relation
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the mode-0 lowering operator to PATH in Matrix Market format
        #[arg(long)]
        export: Option<String>,
    },
    /// Verify truncated bosonic ladder relations: identity commutator on
    /// interior states, a -n_max defect at the cutoff, and zero trace
    Ccr {
        /// Number of bosonic modes
        #[arg(long, default_value_t = 1)]
        modes: usize,
        /// Occupation cutoff per mode (each mode holds 0..=n_max quanta)
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the mode-0 lowering operator to PATH in Matrix Market format
        #[arg(long)]
        export: Option<String>,
    },
    /// Verify symmetric-subspace constructions for grades 1..=GRADE:
    /// symmetrizer idempotence and rank, embedding isometry, induced 2x2
    /// unitaries, and ladder basis changes
    Sym {
        /// Largest symmetric grade to check
        #[arg(long, default_value_t = 6)]
        grade: usize,
        /// Random unitary pairs per grade for the homomorphism check
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        /// Seed for the random unitary pairs
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for construction-exact relations
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Tolerance for the induced-unitary homomorphism check
        #[arg(long, default_value_t = 1e-10)]
        su2_tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the grade-GRADE symmetrizer to PATH in Matrix Market format
        #[arg(long)]
        export: Option<String>,
    },
    /// Convert between polynomial coefficients and star configurations
    #[command(subcommand)]
    Stellar(StellarCommand),
    /// Create and transform graded tape states (JSON in, JSON out)
    #[command(subcommand)]
    Tape(TapeCommand),
    /// Two-mode oscillator level structure and per-level ladder blocks
    #[command(subcommand)]
    Oscillator(OscillatorCommand),
    /// Run every verification suite at pinned parameters and print one
    /// aggregate JSON report; exits 0 only if everything passes
    VerifyAll {
        /// Seed for all randomized checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum StellarCommand {
    /// Factor a degree-k binary form into its k projective stars
    ToStars {
        /// Comma-separated complex coefficients in HIGHEST-DEGREE-FIRST
        /// order a_k,...,a_0: the form is a_k x^k + a_(k-1) x^(k-1) y +
        /// ... + a_0 y^k.  Complex syntax: 1, -2.5, 3i, 1+2i, 1e-3-2i
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Expand a star configuration back into polynomial coefficients
    /// (highest degree first)
    FromStars {
        /// Star-configuration JSON file, "-" for stdin
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TapeCommand {
    /// Print the basis word for a cell pattern, e.g. --cells 0110
    New {
        /// Cell values, one 0/1 character per cell; empty for the blank word
        #[arg(long, default_value = "")]
        cells: String,
        /// Grade cap: no component may use more than this many cells
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Append a blank cell at the rightmost slot (grade k -> k+1)
    Append {
        /// Tape-state JSON file, "-" for stdin
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Apply a named unitary gate on a window of contiguous cells
    Gate {
        #[arg(long, default_value = "-")]
        input: String,
        /// Gate name: x, y, z, h, s, cnot, swap
        #[arg(long)]
        name: String,
        /// Leftmost cell of the gate window
        #[arg(long, default_value_t = 0)]
        cell: usize,
        /// Error out when an occupied grade is too short for the window
        /// (default: leave short grades untouched)
        #[arg(long)]
        strict: bool,
    },
    /// Inner product of two tape states
    Inner {
        #[arg(long)]
        input: String,
        /// Second tape-state JSON file
        #[arg(long)]
        with: String,
    },
    /// Project each grade onto its symmetric subspace coordinates
    Symmetrize {
        #[arg(long, default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum OscillatorCommand {
    /// Energy levels with multiplicities, flagging levels distorted by the
    /// occupation cutoff
    Table {
        /// Occupation cutoff per mode
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Angular frequency
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Planck constant over 2 pi
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the Hamiltonian to PATH in Matrix Market format
        #[arg(long)]
        export: Option<String>,
    },
    /// Verify that two-mode ladder operators act as the single-grade
    /// ladders between energy-level blocks
    Block {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Check a single level (default: every level up to the cutoff)
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Car {
            modes,
            tol,
            format,
            export,
        } => {
            let report = suites::car_suite(&[modes], tol).map_err(err)?;
            let ops = car::fermion_ladder_jordan_wigner(modes).map_err(err)?;
            let subject = (&ops.a[0], "mode-0 fermionic lowering operator");
            finish_report(&report, format, export.as_deref(), Some(subject))
        }
        Command::Ccr {
            modes,
            nmax,
            tol,
            format,
            export,
        } => {
            let cutoff = FockCutoff::new(modes, nmax).map_err(err)?;
            let ops = boson_ladder(cutoff).map_err(err)?;
            let report = verify_ccr(&ops, tol);
            let subject = (&ops.c[0], "mode-0 bosonic lowering operator");
            finish_report(&report, format, export.as_deref(), Some(subject))
        }
        Command::Sym {
            grade,
            pairs,
            seed,
            tol,
            su2_tol,
            format,
            export,
        } => {
            let report =
                suites::sym_suite(grade, grade.min(8), pairs, seed, tol, su2_tol).map_err(err)?;
            let p = symmetrizer(grade).map_err(err)?;
            let subject = (&p, "symmetric-subspace projector");
            finish_report(&report, format, export.as_deref(), Some(subject))
        }
        Command::Stellar(cmd) => run_stellar(cmd),
        Command::Tape(cmd) => run_tape(cmd),
        Command::Oscillator(cmd) => run_oscillator(cmd),
        Command::VerifyAll { seed, format } => {
            let reports = suites::verify_all(seed).map_err(err)?;
            let pass = suites::all_pass(&reports);
            match format {
                Format::Json => emit(&serde_json::json!({
                    "pass": pass,
                    "seed": seed,
                    "suites": reports,
                }))?,
                Format::Plain => {
                    for (name, r) in &reports {
                        println!(
                            "{name}: {} ({} checks, worst deviation {:.3e})",
                            verdict(r.pass),
                            r.checks.len(),
                            r.worst()
                        );
                    }
                    println!("overall: {}", verdict(pass));
                }
                Format::MatrixMarket => {
                    return Err("verify-all has no operator to print; pick json or plain".into())
                }
            }
            Ok(exit_for(pass))
        }
    }
}

fn run_stellar(cmd: StellarCommand) -> Result<ExitCode, String> {
    match cmd {
        StellarCommand::ToStars { coeffs, format } => {
            let parsed: Vec<Complex64> = coeffs
                .iter()
                .map(|s| parse_complex(s))
                .collect::<Result<_, _>>()?;
            if parsed.len() < 2 {
                return Err("need at least two coefficients (a_k .. a_0 with k >= 1)".into());
            }
            let poly = HomogeneousPoly::new(parsed.len() - 1, parsed).map_err(err)?;
            let cfg = stars_from_poly(&poly).map_err(err)?;
            match format {
                Format::Json => emit(&cfg)?,
                Format::Plain => {
                    println!("k = {}", cfg.k);
                    println!("scale = {}", fmt_complex(cfg.scale));
                    for (i, s) in cfg.stars.iter().enumerate() {
                        match s.zeta() {
                            Some(z) => println!("star {i}: zeta = {}", fmt_complex(z)),
                            None => println!("star {i}: pole"),
                        }
                    }
                }
                Format::MatrixMarket => {
                    return Err("to-stars has no operator to print; pick json or plain".into())
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        StellarCommand::FromStars { input, format } => {
            let text = read_input(&input)?;
            let cfg: StarConfiguration = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let poly = poly_from_stars(&cfg);
            match format {
                Format::Json => emit(&serde_json::json!({
                    "k": poly.k,
                    "coeffs": poly
                        .coeffs
                        .iter()
                        .map(|z| [z.re, z.im])
                        .collect::<Vec<_>>(),
                }))?,
                Format::Plain => {
                    for z in &poly.coeffs {
                        println!("{}", fmt_complex(*z));
                    }
                }
                Format::MatrixMarket => {
                    return Err("from-stars has no operator to print; pick json or plain".into())
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_tape(cmd: TapeCommand) -> Result<ExitCode, String> {
    match cmd {
        TapeCommand::New { cells, cap } => {
            let pattern: Vec<bool> = cells
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(format!("cell characters must be 0 or 1, got '{other}'")),
                })
                .collect::<Result<_, _>>()?;
            let psi = GradedVector::basis_word(cap, &pattern).map_err(err)?;
            emit(&psi)?;
            Ok(ExitCode::SUCCESS)
        }
        TapeCommand::Append { input } => {
            let psi = read_tape(&input)?;
            emit(&append_blank(&psi).map_err(err)?)?;
            Ok(ExitCode::SUCCESS)
        }
        TapeCommand::Gate {
            input,
            name,
            cell,
            strict,
        } => {
            let psi = read_tape(&input)?;
            let gate = named_gate(&name)?;
            let policy = if strict {
                GatePolicy::Strict
            } else {
                GatePolicy::SkipShortGrades
            };
            emit(&apply_gate(&psi, &gate, cell, policy).map_err(err)?)?;
            Ok(ExitCode::SUCCESS)
        }
        TapeCommand::Inner { input, with } => {
            let a = read_tape(&input)?;
            let b = read_tape(&with)?;
            let z = graded_inner(&a, &b);
            emit(&serde_json::json!({ "re": z.re, "im": z.im }))?;
            Ok(ExitCode::SUCCESS)
        }
        TapeCommand::Symmetrize { input } => {
            let psi = read_tape(&input)?;
            emit(&symmetrize_tape(&psi).map_err(err)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_oscillator(cmd: OscillatorCommand) -> Result<ExitCode, String> {
    match cmd {
        OscillatorCommand::Table {
            nmax,
            omega,
            hbar,
            format,
            export,
        } => {
            let spec = OscillatorSpec::new(omega, hbar, nmax).map_err(err)?;
            let table = degeneracy_table(&spec);
            if let Some(path) = &export {
                let h = hamiltonian_2d(&spec).map_err(err)?;
                export_matrix(&h, "two-mode oscillator Hamiltonian", path)?;
            }
            match format {
                Format::Json => emit(&table)?,
                Format::Plain => {
                    for row in &table {
                        let flag = if row.truncated { "  (truncated)" } else { "" };
                        println!(
                            "n={} E={} multiplicity={}{flag}",
                            row.n, row.energy, row.multiplicity
                        );
                    }
                }
                Format::MatrixMarket => {
                    let h = hamiltonian_2d(&spec).map_err(err)?;
                    print_matrix(&h, "two-mode oscillator Hamiltonian")?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        OscillatorCommand::Block {
            nmax,
            level,
            tol,
            format,
        } => {
            let spec = OscillatorSpec::with_cutoff(nmax).map_err(err)?;
            let report = match level {
                Some(n) => block_isomorphism_check(&spec, n, tol).map_err(err)?,
                None => {
                    let mut all = VerificationReport::new(tol);
                    for n in 0..=nmax {
                        all.absorb(block_isomorphism_check(&spec, n, tol).map_err(err)?);
                    }
                    all
                }
            };
            finish_report(&report, format, None, None)
        }
    }
}

fn err(e: qabacus::Error) -> String {
    e.to_string()
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Serializes through `Value` so object keys come out sorted, making the
/// output byte-deterministic.
fn emit<T: serde::Serialize>(value: &T) -> Result<(), String> {
    let v = serde_json::to_value(value).map_err(|e| e.to_string())?;
    let text = serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn print_report_lines(report: &VerificationReport) {
    for c in &report.checks {
        println!(
            "{} i={} j={} deviation={:.3e} {}",
            c.relation,
            c.i,
            c.j,
            c.max_abs_deviation,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    println!("overall: {} (tol {:e})", verdict(report.pass), report.tol);
}

fn finish_report(
    report: &VerificationReport,
    format: Format,
    export: Option<&str>,
    subject: Option<(&SparseOp, &str)>,
) -> Result<ExitCode, String> {
    if let Some(path) = export {
        let (op, desc) = subject.ok_or("this subcommand has no operator to export")?;
        export_matrix(op, desc, path)?;
    }
    match format {
        Format::Json => emit(report)?,
        Format::Plain => print_report_lines(report),
        Format::MatrixMarket => {
            let (op, desc) =
                subject.ok_or("this subcommand has no operator to print; pick json or plain")?;
            print_matrix(op, desc)?;
        }
    }
    Ok(exit_for(report.pass))
}

fn export_matrix(op: &SparseOp, desc: &str, path: &str) -> Result<(), String> {
    let mut file = fs::File::create(path).map_err(|e| format!("{path}: {e}"))?;
    op.write_matrix_market(&mut file, &[desc])
        .map_err(|e| format!("{path}: {e}"))
}

fn print_matrix(op: &SparseOp, desc: &str) -> Result<(), String> {
    let mut out = Vec::new();
    op.write_matrix_market(&mut out, &[desc])
        .map_err(|e| e.to_string())?;
    print!("{}", String::from_utf8(out).map_err(|e| e.to_string())?);
    Ok(())
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_tape(path: &str) -> Result<GradedVector, String> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn named_gate(name: &str) -> Result<SparseOp, String> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = |r: usize, c: usize, re: f64, im: f64| (r, c, Complex64::new(re, im));
    let (dim, trips) = match name {
        "x" => (2, vec![t(0, 1, 1.0, 0.0), t(1, 0, 1.0, 0.0)]),
        "y" => (2, vec![t(0, 1, 0.0, -1.0), t(1, 0, 0.0, 1.0)]),
        "z" => (2, vec![t(0, 0, 1.0, 0.0), t(1, 1, -1.0, 0.0)]),
        "h" => (
            2,
            vec![
                t(0, 0, h, 0.0),
                t(0, 1, h, 0.0),
                t(1, 0, h, 0.0),
                t(1, 1, -h, 0.0),
            ],
        ),
        "s" => (2, vec![t(0, 0, 1.0, 0.0), t(1, 1, 0.0, 1.0)]),
        "cnot" => (
            4,
            vec![
                t(0, 0, 1.0, 0.0),
                t(1, 1, 1.0, 0.0),
                t(2, 3, 1.0, 0.0),
                t(3, 2, 1.0, 0.0),
            ],
        ),
        "swap" => (
            4,
            vec![
                t(0, 0, 1.0, 0.0),
                t(1, 2, 1.0, 0.0),
                t(2, 1, 1.0, 0.0),
                t(3, 3, 1.0, 0.0),
            ],
        ),
        other => {
            return Err(format!(
                "unknown gate '{other}' (known: x, y, z, h, s, cnot, swap)"
            ))
        }
    };
    Ok(SparseOp::from_triplets(dim, dim, trips))
}

/// Parses "1", "-2.5", "3i", "1+2i", "1e-3-2i", "i", "-i".
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty coefficient".into());
    }
    if !t.ends_with(['i', 'I']) {
        return t
            .parse::<f64>()
            .map(|x| Complex64::new(x, 0.0))
            .map_err(|_| format!("cannot parse '{text}' as a number"));
    }
    let body = &t[..t.len() - 1];
    let bytes = body.as_bytes();
    // Split at the last sign that is neither leading nor an exponent sign.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_str, im_str) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s
            .parse::<f64>()
            .map_err(|_| format!("cannot parse '{text}' as a complex number"))?,
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str
            .parse::<f64>()
            .map_err(|_| format!("cannot parse '{text}' as a complex number"))?
    };
    Ok(Complex64::new(re, im))
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
