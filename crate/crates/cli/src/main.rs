use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use affine_classify::{
    biregularly_conjugate, canonical_form, classify, parse_rational, rational_string,
    reduce_no_fixed_point, run_invariance_suite, BiregularClassInvariant, GenConfig, MatrixQ,
    OperatorQ, PolyQ, Rational, VectorQ,
};

/// Exit-code contract: 0 = positive answer, 1 = negative answer,
/// 2 = usage/parse error.
const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "affop",
    about = "Classify affine operators f(x)=Ax+b up to biregular conjugacy, exactly over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the conjugacy-class invariant of an operator
    Classify {
        file: PathBuf,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two operators are biregularly conjugate
    Conjugate {
        file_f: PathBuf,
        file_g: PathBuf,
        /// On a negative answer, say which invariant component differs
        #[arg(long)]
        explain: bool,
    },
    /// Print the exact canonical representative of an operator's class
    Canon {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a fixed-point-free operator to (A*, c) ⊕ (J∘, 0) with an
    /// affine witness
    Reduce {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the randomized invariance suite
    Selftest {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum operator dimension exercised
        #[arg(long, default_value_t = 6)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Emit a deterministically generated operator fixture
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// Probability (percent) of planting a nilpotent block
        #[arg(long, default_value_t = 50)]
        nilpotent_bias: u64,
    },
}

/// On-disk form of an operator (canonical extension `.affop.json`). Numbers
/// are strings in "p/q" or "p" form, arbitrary precision, never floats.
#[derive(Serialize, Deserialize)]
struct OperatorDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    matrix: Vec<Vec<String>>,
    translation: Vec<String>,
}

impl OperatorDocument {
    fn parse(&self) -> Result<OperatorQ, String> {
        let n = self.matrix.len();
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(format!(
                    "matrix[{i}]: expected {n} entries for a {n}x{n} matrix, got {}",
                    row.len()
                ));
            }
            let mut parsed = Vec::with_capacity(n);
            for (j, s) in row.iter().enumerate() {
                parsed.push(parse_rational(s).map_err(|e| format!("matrix[{i}][{j}]: {e}"))?);
            }
            rows.push(parsed);
        }
        if self.translation.len() != n {
            return Err(format!(
                "translation: expected {n} entries, got {}",
                self.translation.len()
            ));
        }
        let mut b = Vec::with_capacity(n);
        for (i, s) in self.translation.iter().enumerate() {
            b.push(parse_rational(s).map_err(|e| format!("translation[{i}]: {e}"))?);
        }
        let matrix = if n == 0 {
            MatrixQ::zero(0, 0)
        } else {
            MatrixQ::from_rows(rows)
        };
        OperatorQ::new(matrix, VectorQ::new(b)).map_err(|e| e.to_string())
    }

    fn render(op: &OperatorQ, name: Option<String>) -> Self {
        let n = op.dim();
        OperatorDocument {
            name,
            matrix: (0..n)
                .map(|i| (0..n).map(|j| rational_string(&op.matrix()[(i, j)])).collect())
                .collect(),
            translation: op
                .translation()
                .entries()
                .iter()
                .map(rational_string)
                .collect(),
        }
    }
}

fn load_operator(path: &PathBuf) -> Result<OperatorQ, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: OperatorDocument =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.parse().map_err(|e| format!("{}: {e}", path.display()))
}

fn poly_json(p: &PolyQ) -> serde_json::Value {
    json!({
        "text": affine_classify::poly::factored_string(p),
        "coefficients": p.coeffs().iter().map(rational_string).collect::<Vec<_>>(),
    })
}

fn vector_json(v: &VectorQ) -> Vec<String> {
    v.entries().iter().map(rational_string).collect()
}

fn invariant_json(inv: &BiregularClassInvariant<Rational>, fixed: Option<&VectorQ>) -> serde_json::Value {
    match inv {
        BiregularClassInvariant::FixedPointCase { factors } => json!({
            "case": "fixed-point",
            "invariant_factors": factors.chain().iter().map(poly_json).collect::<Vec<_>>(),
            "fixed_point": fixed.map(vector_json),
        }),
        BiregularClassInvariant::NoFixedPointCase {
            q_star,
            nil_partition,
        } => json!({
            "case": "no-fixed-point",
            "q_star": poly_json(q_star),
            "partition": nil_partition.parts(),
        }),
    }
}

fn cmd_classify(file: &PathBuf, as_json: bool) -> Result<u8, String> {
    let f = load_operator(file)?;
    let inv = classify(&f);
    let fixed = f.fixed_point();
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&invariant_json(&inv, fixed.as_ref())).unwrap()
        );
    } else {
        println!("{inv}");
        if let Some(p) = fixed {
            println!("fixed point: {p}");
        }
    }
    Ok(0)
}

fn explain_difference(f: &OperatorQ, g: &OperatorQ) -> String {
    if f.dim() != g.dim() {
        return format!("dimensions differ: {} vs {}", f.dim(), g.dim());
    }
    match (classify(f), classify(g)) {
        (
            BiregularClassInvariant::FixedPointCase { factors: a },
            BiregularClassInvariant::FixedPointCase { factors: b },
        ) => {
            if a != b {
                format!("invariant factors differ: {a} vs {b}")
            } else {
                "invariants agree".to_string()
            }
        }
        (
            BiregularClassInvariant::NoFixedPointCase {
                q_star: qa,
                nil_partition: pa,
            },
            BiregularClassInvariant::NoFixedPointCase {
                q_star: qb,
                nil_partition: pb,
            },
        ) => {
            if qa != qb {
                format!(
                    "q* differs: {} vs {}",
                    affine_classify::poly::factored_string(&qa),
                    affine_classify::poly::factored_string(&qb)
                )
            } else if pa != pb {
                format!("nilpotent partitions differ: {pa} vs {pb}")
            } else {
                "invariants agree".to_string()
            }
        }
        _ => "one operator has a fixed point, the other does not".to_string(),
    }
}

fn cmd_conjugate(file_f: &PathBuf, file_g: &PathBuf, explain: bool) -> Result<u8, String> {
    let f = load_operator(file_f)?;
    let g = load_operator(file_g)?;
    if biregularly_conjugate(&f, &g) {
        println!("CONJUGATE");
        Ok(0)
    } else {
        println!("NOT CONJUGATE");
        if explain {
            println!("{}", explain_difference(&f, &g));
        }
        Ok(EXIT_NO)
    }
}

fn cmd_canon(file: &PathBuf, as_json: bool) -> Result<u8, String> {
    let f = load_operator(file)?;
    let cf = canonical_form(&f);
    let doc = OperatorDocument::render(&cf.representative, None);
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "representative": serde_json::to_value(&doc).unwrap(),
                "descriptor": cf.descriptor,
                "invariant": invariant_json(&cf.invariant, None),
            }))
            .unwrap()
        );
    } else {
        println!("{}", serde_json::to_string(&doc).unwrap());
        println!("{}", cf.descriptor);
    }
    Ok(0)
}

fn cmd_reduce(file: &PathBuf, as_json: bool) -> Result<u8, String> {
    let f = load_operator(file)?;
    let trace = match reduce_no_fixed_point(&f) {
        Ok(t) => t,
        Err(_) => {
            println!(
                "operator has a fixed point: it is biregularly conjugate to its linear part; nothing to reduce"
            );
            return Ok(EXIT_NO);
        }
    };
    // verify the conjugation equation before printing anything
    assert_eq!(
        f.conjugate_by(&trace.witness),
        trace.reduced,
        "internal: reduction witness failed verification"
    );
    let n = f.dim();
    let linear: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rational_string(&trace.witness.linear()[(i, j)]))
                .collect()
        })
        .collect();
    let reduced_doc = OperatorDocument::render(&trace.reduced, None);
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "witness": {
                    "linear": linear,
                    "shift": vector_json(trace.witness.shift()),
                },
                "reduced": serde_json::to_value(&reduced_doc).unwrap(),
                "star_dim": trace.star_dim,
            }))
            .unwrap()
        );
    } else {
        println!("witness linear part: {linear:?}");
        println!("witness shift: {}", trace.witness.shift());
        println!("reduced operator: {}", serde_json::to_string(&reduced_doc).unwrap());
        println!("nonsingular summand dimension: {}", trace.star_dim);
    }
    Ok(0)
}

fn cmd_selftest(trials: usize, seed: u64, dim: usize, bound: u64) -> Result<u8, String> {
    let biases = [0, 50, 100];
    let dims: Vec<usize> = (1..=dim.max(1)).collect();
    let cells: Vec<(usize, u64)> = dims
        .iter()
        .flat_map(|&d| biases.iter().map(move |&b| (d, b)))
        .collect();
    let per_cell = (trials + cells.len() - 1) / cells.len();
    let mut total = 0;
    let mut failures = 0;
    let mut max_bits = 0;
    for (i, (d, bias)) in cells.iter().enumerate() {
        let cfg = GenConfig::new(*d, bound, seed.wrapping_add(i as u64)).with_bias_percent(*bias);
        let report = run_invariance_suite(per_cell, &cfg);
        total += report.trials;
        failures += report.failures.len();
        max_bits = max_bits.max(report.max_coefficient_bits);
        for fail in &report.failures {
            println!(
                "FAIL dim {d} bias {bias}% trial {} seed {}: {}",
                fail.trial, fail.seed, fail.what
            );
        }
    }
    println!("trials: {total}");
    println!("failures: {failures}");
    println!("max coefficient bits: {max_bits}");
    Ok(if failures == 0 { 0 } else { EXIT_NO })
}

fn cmd_random(seed: u64, dim: usize, bound: u64, bias: u64) -> Result<u8, String> {
    if bias > 100 {
        return Err("nilpotent-bias must be 0..=100".to_string());
    }
    let cfg = GenConfig::new(dim, bound.max(1), seed).with_bias_percent(bias);
    let f = affine_classify::random_affine_operator(&cfg);
    let doc = OperatorDocument::render(&f, Some(format!("random-{seed}-{dim}")));
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify { file, json } => cmd_classify(file, *json),
        Command::Conjugate {
            file_f,
            file_g,
            explain,
        } => cmd_conjugate(file_f, file_g, *explain),
        Command::Canon { file, json } => cmd_canon(file, *json),
        Command::Reduce { file, json } => cmd_reduce(file, *json),
        Command::Selftest {
            trials,
            seed,
            dim,
            bound,
        } => cmd_selftest(*trials, *seed, *dim, *bound),
        Command::Random {
            seed,
            dim,
            bound,
            nilpotent_bias,
        } => cmd_random(*seed, *dim, *bound, *nilpotent_bias),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
