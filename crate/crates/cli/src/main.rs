use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use weylcheb::angle_op::angle_operator;
use weylcheb::cartesian::{
    derive, derive_cartesian_undetermined_capped, verify_eigen, CartesianOperator, OperatorJson,
    DEGREE_CAP,
};
use weylcheb::cheb::cheb_polynomial;
use weylcheb::coeff_rep::{fixed_space, SymbolVector};
use weylcheb::orbit_eval::{oracle_relative_error, sample_points, ORACLE_SEED, ORACLE_TOLERANCE};
use weylcheb::poly::Style;
use weylcheb::reproduce::reproduce;
use weylcheb::weyl::{AlgebraId, Weight};

const USAGE: u8 = 1;
const EMPTY: u8 = 2;
const FAILED: u8 = 3;

/// Bivariate Chebyshev polynomials and their eigen-operators.
#[derive(Parser)]
#[command(name = "weylcheb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant operators of a given order, in angle and Cartesian form.
    Derive {
        #[arg(long)]
        algebra: AlgebraId,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        order: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest coefficient degree allowed when fitting operators.
        #[arg(long, default_value_t = DEGREE_CAP)]
        degree_cap: usize,
    },
    /// Print the Chebyshev polynomial with index (m, n).
    Poly {
        #[arg(long)]
        algebra: AlgebraId,
        #[arg(short)]
        m: u32,
        #[arg(short, default_value_t = 0)]
        n: u32,
    },
    /// Check eigen-relations and numeric agreement on 0 <= m, n <= max-index.
    Verify {
        #[arg(long)]
        algebra: AlgebraId,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        order: u32,
        #[arg(long)]
        max_index: u32,
        #[arg(long)]
        json: bool,
        /// Verify operators from a JSON file written by `derive --format json`.
        #[arg(long)]
        operator: Option<PathBuf>,
        #[arg(long, default_value_t = DEGREE_CAP)]
        degree_cap: usize,
    },
    /// Recompute every published value and report agreement.
    Reproduce {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Serialize, Deserialize)]
struct OperatorChecks {
    eigen_checked: usize,
    eigen_passed: usize,
    first_order_law: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    methods_agree: Option<bool>,
}

impl OperatorChecks {
    fn ok(&self) -> bool {
        self.eigen_checked == self.eigen_passed && self.first_order_law && self.methods_agree != Some(false)
    }
}

#[derive(Serialize, Deserialize)]
struct DerivedOperator {
    operator: OperatorJson,
    checks: OperatorChecks,
}

#[derive(Serialize, Deserialize)]
struct DeriveOutput {
    algebra: String,
    order: usize,
    basis: Vec<Vec<serde_json::Number>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cartesian: Option<serde_json::Value>,
    operators: Vec<DerivedOperator>,
    checks: serde_json::Value,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn symbol_numbers(v: &SymbolVector) -> Vec<serde_json::Number> {
    v.to_integers()
        .expect("canonical basis vectors are integral")
        .iter()
        .map(|c| c.to_string().parse().expect("integer is a JSON number"))
        .collect()
}

fn check_operator(op: &CartesianOperator, cap: usize) -> weylcheb::Result<OperatorChecks> {
    let report = verify_eigen(op, 6, 6)?;
    let methods_agree = if op.order() == 2 {
        let fit = derive_cartesian_undetermined_capped(op.algebra, &op.spectrum, 2, cap)?;
        Some(fit == *op)
    } else {
        None
    };
    Ok(OperatorChecks {
        eigen_checked: report.checked,
        eigen_passed: report.passed,
        first_order_law: op.first_order_law_holds(),
        methods_agree,
    })
}

fn cmd_derive(algebra: AlgebraId, order: usize, format: Format, cap: usize) -> ExitCode {
    let basis = match fixed_space(algebra, order) {
        Ok(b) => b,
        Err(e) => return fail(USAGE, e),
    };
    let mut derived = Vec::new();
    for v in &basis {
        let result = angle_operator(algebra, v.clone()).and_then(|angle| {
            let cart = derive(&angle, cap)?;
            let checks = check_operator(&cart, cap)?;
            Ok((angle, cart, checks))
        });
        match result {
            Ok(d) => derived.push(d),
            Err(e) => return fail(FAILED, format!("{algebra} order {order}, symbol {v}: {e}")),
        }
    }
    let all_ok = derived.iter().all(|(_, _, c)| c.ok());

    match format {
        Format::Json => {
            let operators: Vec<DerivedOperator> = derived
                .iter()
                .map(|(_, cart, checks)| DerivedOperator {
                    operator: cart.to_json(),
                    checks: checks.clone(),
                })
                .collect();
            let out = DeriveOutput {
                algebra: algebra.to_string(),
                order,
                basis: basis.iter().map(symbol_numbers).collect(),
                spectrum: operators.first().map(|o| o.operator.spectrum.clone()),
                cartesian: operators
                    .first()
                    .map(|o| serde_json::to_value(&o.operator.cartesian).expect("serializable")),
                checks: serde_json::json!({
                    "fixed_dim": basis.len(),
                    "molien": algebra.data().molien_dimension(order),
                    "all_passed": all_ok,
                }),
                operators,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Text => {
            println!("{algebra}, order {order}");
            println!("fixed space dimension {}", basis.len());
            for (angle, cart, checks) in &derived {
                println!("symbol {}", angle.symbol());
                println!("  spectrum  E(m,n) = {}", angle.spectrum.render());
                println!("  operator  {}", cart.render_text());
                print!("  checks    eigen {}/{}", checks.eigen_passed, checks.eigen_checked);
                print!(", first-order law {}", if checks.first_order_law { "ok" } else { "FAILED" });
                if let Some(agree) = checks.methods_agree {
                    print!(", methods {}", if agree { "agree" } else { "DISAGREE" });
                }
                println!();
            }
        }
        Format::Latex => {
            for (angle, cart, _) in &derived {
                println!("% {algebra}, order {order}, symbol {}", angle.symbol());
                println!("L_{{\\phi}} = {}", angle.to_latex());
                println!("E(m,n) = {}", angle.symbol().render(Style::Latex));
                println!("L = {}", cart.to_latex());
            }
        }
    }
    if basis.is_empty() {
        eprintln!("{algebra} has no invariant operators of order {order}");
        return ExitCode::from(EMPTY);
    }
    if !all_ok {
        return fail(FAILED, "derived operator failed its checks");
    }
    ExitCode::SUCCESS
}

fn cmd_poly(algebra: AlgebraId, m: u32, n: u32) -> ExitCode {
    let coords: Vec<i64> = if algebra.rank() == 1 {
        if n != 0 {
            return fail(USAGE, format!("{algebra} has rank 1; -n must be 0"));
        }
        vec![m.into()]
    } else {
        vec![m.into(), n.into()]
    };
    match cheb_polynomial(algebra, &Weight::new(&coords)) {
        Ok(p) => {
            println!("{p}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(USAGE, e),
    }
}

#[derive(Serialize)]
struct VerifySummary {
    algebra: String,
    order: usize,
    max_index: u32,
    operators: Vec<VerifyEntry>,
    oracle: OracleSummary,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyEntry {
    spectrum: String,
    checked: usize,
    passed: usize,
    failures: Vec<weylcheb::cartesian::EigenFailure>,
}

#[derive(Serialize)]
struct OracleSummary {
    points: usize,
    checked: usize,
    passed: usize,
    max_relative_error: f64,
}

fn load_operators(path: &PathBuf) -> Result<Vec<CartesianOperator>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let bad = |e: serde_json::Error| format!("{}: {e}", path.display());
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    // Either a full `derive` document or a single operator.
    let raw: Vec<OperatorJson> = match value.get_mut("operators") {
        Some(ops) => serde_json::from_value::<Vec<DerivedOperator>>(ops.take())
            .map_err(bad)?
            .into_iter()
            .map(|d| d.operator)
            .collect(),
        None => vec![serde_json::from_value(value).map_err(bad)?],
    };
    raw.iter()
        .map(|j| CartesianOperator::from_json(j).map_err(|e| e.to_string()))
        .collect()
}

fn cmd_verify(
    algebra: AlgebraId,
    order: usize,
    max_index: u32,
    json: bool,
    operator: Option<PathBuf>,
    cap: usize,
) -> ExitCode {
    let operators = match operator {
        Some(path) => match load_operators(&path) {
            Ok(ops) => ops,
            Err(e) => return fail(USAGE, e),
        },
        None => {
            let basis = match fixed_space(algebra, order) {
                Ok(b) => b,
                Err(e) => return fail(USAGE, e),
            };
            if basis.is_empty() {
                eprintln!("{algebra} has no invariant operators of order {order}");
                return ExitCode::from(EMPTY);
            }
            let built: weylcheb::Result<Vec<_>> = basis
                .into_iter()
                .map(|v| derive(&angle_operator(algebra, v)?, cap))
                .collect();
            match built {
                Ok(ops) => ops,
                Err(e) => return fail(FAILED, e),
            }
        }
    };
    if let Some(op) = operators.iter().find(|op| op.algebra != algebra) {
        return fail(USAGE, format!("operator file is for {}, not {algebra}", op.algebra));
    }

    let max = max_index as usize;
    let mut entries = Vec::new();
    for op in &operators {
        match verify_eigen(op, max, max) {
            Ok(r) => entries.push(VerifyEntry {
                spectrum: op.spectrum.render(),
                checked: r.checked,
                passed: r.passed,
                failures: r.failures,
            }),
            Err(e) => return fail(FAILED, e),
        }
    }

    let points = sample_points(algebra, 200, ORACLE_SEED);
    let mut oracle = OracleSummary {
        points: points.len(),
        checked: 0,
        passed: 0,
        max_relative_error: 0.0,
    };
    let second = if algebra.rank() == 1 { 0 } else { max_index };
    for m in 0..=max_index {
        for n in 0..=second {
            let coords: Vec<i64> = if algebra.rank() == 1 {
                vec![m.into()]
            } else {
                vec![m.into(), n.into()]
            };
            let err = match oracle_relative_error(algebra, &Weight::new(&coords), &points) {
                Ok(e) => e,
                Err(e) => return fail(FAILED, e),
            };
            oracle.checked += 1;
            if err <= ORACLE_TOLERANCE {
                oracle.passed += 1;
            }
            oracle.max_relative_error = oracle.max_relative_error.max(err);
        }
    }

    let passed = entries.iter().all(|e| e.failures.is_empty()) && oracle.passed == oracle.checked;
    let summary = VerifySummary {
        algebra: algebra.to_string(),
        order: operators.first().map_or(order, CartesianOperator::order),
        max_index,
        operators: entries,
        oracle,
        passed,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    } else {
        for e in &summary.operators {
            println!(
                "{algebra} E(m,n) = {}: {}/{} eigen-relations pass",
                e.spectrum, e.passed, e.checked
            );
            for f in &e.failures {
                println!("  FAIL at {:?}: residual {}", f.index, f.residual);
            }
        }
        println!(
            "oracle: {}/{} polynomials agree with orbit sums at {} points (max relative error {:.1e})",
            summary.oracle.passed, summary.oracle.checked, summary.oracle.points, summary.oracle.max_relative_error
        );
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    }
}

fn cmd_reproduce(format: Format) -> ExitCode {
    match reproduce() {
        Ok(report) => {
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"))
                }
                _ => print!("{}", report.render_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(FAILED, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Derive {
            algebra,
            order,
            format,
            degree_cap,
        } => cmd_derive(algebra, order as usize, format, degree_cap),
        Command::Poly { algebra, m, n } => cmd_poly(algebra, m, n),
        Command::Verify {
            algebra,
            order,
            max_index,
            json,
            operator,
            degree_cap,
        } => cmd_verify(algebra, order as usize, max_index, json, operator, degree_cap),
        Command::Reproduce { format } => cmd_reproduce(format),
    }
}
