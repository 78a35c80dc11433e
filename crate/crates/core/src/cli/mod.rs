//! The `qsk` command-line driver.
//!
//! [`run`] parses arguments, executes one subcommand and writes a JSON
//! document to `out`. Exit codes: `0` when every check passed, `1` when a
//! verification failed, `2` on input errors (usage or message on `err`).

pub mod files;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::double::{check_double_star, double_trace_on, drinfeld_double, DoubleError};
use crate::finalg::algebra::{gram_positivity, is_tracial, validate_algebra, POSITIVITY_FLOOR};
use crate::finalg::scalar::{format_rational, GaussRat, Laurent};
use crate::finalg::wedderburn::{
    wedderburn_blocks, BlockDecomposition, WedderburnConfig, DEFAULT_SEED,
};
use crate::fusion_zero::{
    coproduct_power_check, depth_two_dimensions, fusion_from_hopf, omega_on_corner,
    validate_fusion, weight_zero_modules, zero_level_algebra, FusionError, Sign,
};
use crate::hopf::{
    check_hopf_axioms, check_pairing, dual_opposite, function_algebra, group_algebra, HopfError,
    HopfStarAlgebra, PairingMatrix,
};
use crate::report::{Report, Witness};
use crate::temperley_lieb::{
    compose, compose_all, jones_projection, jones_word, markov_trace, star, tl_basis, JonesVariant,
    TLElement,
};
use files::{
    algebra_to_json, fusion_to_json, parse_algebra, parse_fusion, parse_group, parse_pairing,
    render, AnyDoc, Doc,
};

/// Environment variable overriding the Wedderburn seed.
pub const SEED_ENV: &str = "QSK_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "qsk",
    version,
    about = "Exact verification of Kac algebras, Drinfeld doubles, zero-level fusion algebras and Temperley–Lieb identities"
)]
struct Cli {
    /// Tolerance for the floating-point steps (block sizes, multiplicities).
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the *-algebra axioms of an algebra file.
    CheckAlgebra {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check the *-algebra and Hopf/Kac axioms of an algebra file with a hopf block.
    CheckHopf {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build the group algebra of a group table.
    Group {
        #[arg(long)]
        table: PathBuf,
        /// Emit the axiom report instead of the algebra.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the function algebra of a group table.
    Functions {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the dual of the opposite algebra.
    DualOp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a pairing between two Hopf algebras (default: evaluation pairing).
    Pair {
        #[arg(long)]
        plus: PathBuf,
        #[arg(long)]
        minus: PathBuf,
        #[arg(long)]
        pairing: Option<PathBuf>,
    },
    /// Build the Drinfeld double.
    Double {
        #[arg(long = "in")]
        input: PathBuf,
        /// Check the Hopf axioms, the unit and the two star formulas.
        #[arg(long)]
        check: bool,
        /// Report the Wedderburn block sizes of the double.
        #[arg(long)]
        irreps: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the product Haar trace on the double is tracial and positive.
    DoubleTrace {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Wedderburn block sizes of an algebra.
    Irreps {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check the axioms of a fusion datum.
    FusionValidate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build the zero-level algebra, check ω and count weight-zero modules.
    FusionZero {
        #[arg(long = "in")]
        input: PathBuf,
        /// Corner to use: `+` or `-`.
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fusion datum of the representation category of a Kac algebra.
    FusionFromHopf {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the depth-two dimension law dim P_{k+1} = (dim H)^k for k = 1..=K.
        #[arg(long)]
        depth_two: Option<usize>,
    },
    /// Temperley–Lieb computations in TL_n.
    Tl {
        #[arg(long)]
        n: usize,
        /// Check the TL relations, the Markov trace and the star exactly.
        #[arg(long)]
        verify_relations: bool,
        /// List the diagram basis.
        #[arg(long)]
        basis: bool,
        /// Build e_[-1,k] (`-1`) or e_[l,k+l] (`l ≥ 0`).
        #[arg(long, allow_negative_numbers = true)]
        jones_word: Option<i64>,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

/// Failure modes of a subcommand: bad input (exit 2) or an I/O problem.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// A finished command: its JSON document and whether every check passed.
struct Outcome {
    doc: Value,
    passed: bool,
}

/// Runs the CLI with `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let result = seed_from_env().and_then(|seed| {
        let cfg = WedderburnConfig { tol: cli.tol, seed };
        execute(&cli.cmd, &cfg)
    });
    match result {
        Ok(o) => {
            if out.write_all(render(&o.doc).as_bytes()).is_err() {
                return 2;
            }
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn seed_from_env() -> Result<u64, InputError> {
    match std::env::var(SEED_ENV) {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(s) => {
            let t = s.trim();
            let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => t.parse(),
            };
            parsed.map_err(|_| {
                InputError(format!(
                    "{SEED_ENV}=`{s}` is not an unsigned 64-bit integer"
                ))
            })
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Option<PathBuf>, v: &Value) -> Result<(), InputError> {
    if let Some(p) = path {
        std::fs::write(p, render(v))
            .map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn load(path: &Path) -> Result<AnyDoc, InputError> {
    parse_algebra(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_gauss_hopf(path: &Path) -> Result<HopfStarAlgebra<GaussRat>, InputError> {
    match load(path)? {
        AnyDoc::Gauss(Doc::Hopf(h)) => Ok(h),
        AnyDoc::Gauss(Doc::Plain(_)) => Err(InputError(format!(
            "{}: needs a `hopf` block",
            path.display()
        ))),
        AnyDoc::Laurent(_) => Err(InputError(format!(
            "{}: this command needs scalar `gaussian_rational`",
            path.display()
        ))),
    }
}

/// `{"value": x, "tolerance": t}`.
fn numeric(value: f64, tolerance: f64) -> Value {
    json!({"value": value, "tolerance": tolerance})
}

fn report_json(command: &str, report: &Report, results: Map<String, Value>) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let mut o = Map::new();
            o.insert("name".into(), json!(c.name));
            o.insert(
                "outcome".into(),
                json!(if c.passed { "pass" } else { "fail" }),
            );
            if let Some(w) = &c.witness {
                o.insert(
                    "witness".into(),
                    json!({"indices": w.indices, "detail": w.detail}),
                );
            }
            Value::Object(o)
        })
        .collect();
    let mut o = Map::new();
    o.insert("command".into(), json!(command));
    o.insert(
        "status".into(),
        json!(if report.is_ok() { "pass" } else { "fail" }),
    );
    o.insert("checks".into(), Value::Array(checks));
    o.insert("results".into(), Value::Object(results));
    Value::Object(o)
}

fn finish(command: &str, report: Report, results: Map<String, Value>) -> Outcome {
    Outcome {
        passed: report.is_ok(),
        doc: report_json(command, &report, results),
    }
}

fn blocks_json(b: &BlockDecomposition, tol: f64) -> Map<String, Value> {
    let mut r = Map::new();
    r.insert("block_dims".into(), json!(b.block_dims));
    r.insert("sorted_block_dims".into(), json!(b.sorted_dims()));
    r.insert("sum_of_squares".into(), json!(b.sum_of_squares()));
    r.insert("center_dim".into(), json!(b.center_dim));
    r.insert("seed".into(), json!(b.seed));
    r.insert("max_residual".into(), numeric(b.max_residual, tol));
    r
}

/// Hopf report with the algebra checks prefixed `algebra.` and the Hopf
/// checks prefixed `hopf.`.
fn hopf_report<S: crate::finalg::Scalar>(h: &HopfStarAlgebra<S>) -> Report {
    let mut r = Report::new();
    r.extend_prefixed("algebra.", validate_algebra(h.algebra()));
    r.extend_prefixed("hopf.", check_hopf_axioms(h));
    r
}

/// Turns "the input is not a Kac algebra" into a failed report.
fn hopf_failure(command: &str, e: HopfError) -> Result<Outcome, InputError> {
    match e {
        HopfError::AxiomsFailed(r) => {
            let mut report = Report::new();
            report.extend_prefixed("input.hopf.", r);
            Ok(finish(command, report, Map::new()))
        }
        other => {
            let mut report = Report::new();
            report.fail("input", Witness::new([], other.to_string()));
            Ok(finish(command, report, Map::new()))
        }
    }
}

fn build_output(
    command: &str,
    h: HopfStarAlgebra<GaussRat>,
    check: bool,
    out: &Option<PathBuf>,
) -> Result<Outcome, InputError> {
    let file = algebra_to_json(h.algebra(), Some(&h));
    write_file(out, &file)?;
    if check {
        let mut results = Map::new();
        results.insert("dim".into(), json!(h.dim()));
        Ok(finish(command, hopf_report(&h), results))
    } else {
        Ok(Outcome {
            doc: file,
            passed: true,
        })
    }
}

fn execute(cmd: &Cmd, cfg: &WedderburnConfig) -> Result<Outcome, InputError> {
    match cmd {
        Cmd::CheckAlgebra { input } => {
            let doc = load(input)?;
            let (report, dim) = match &doc {
                AnyDoc::Gauss(d) => (validate_algebra(d.algebra()), d.algebra().dim()),
                AnyDoc::Laurent(d) => (validate_algebra(d.algebra()), d.algebra().dim()),
            };
            let mut results = Map::new();
            results.insert("dim".into(), json!(dim));
            results.insert("scalar".into(), json!(doc.kind().as_str()));
            Ok(finish("check-algebra", report, results))
        }
        Cmd::CheckHopf { input } => {
            let doc = load(input)?;
            let missing = || InputError(format!("{}: needs a `hopf` block", input.display()));
            let (report, dim) = match &doc {
                AnyDoc::Gauss(d) => {
                    let h = d.hopf().ok_or_else(missing)?;
                    (hopf_report(h), h.dim())
                }
                AnyDoc::Laurent(d) => {
                    let h = d.hopf().ok_or_else(missing)?;
                    (hopf_report(h), h.dim())
                }
            };
            let mut results = Map::new();
            results.insert("dim".into(), json!(dim));
            results.insert("scalar".into(), json!(doc.kind().as_str()));
            Ok(finish("check-hopf", report, results))
        }
        Cmd::Group { table, check, out } => {
            let g = parse_group(&read(table)?)?;
            build_output("group", group_algebra(&g), *check, out)
        }
        Cmd::Functions { table, check, out } => {
            let g = parse_group(&read(table)?)?;
            build_output("functions", function_algebra(&g), *check, out)
        }
        Cmd::DualOp { input, check, out } => {
            let h = load_gauss_hopf(input)?;
            match dual_opposite(&h) {
                Ok(d) => build_output("dual-op", d, *check, out),
                Err(e) => hopf_failure("dual-op", e),
            }
        }
        Cmd::Pair {
            plus,
            minus,
            pairing,
        } => {
            let hp = load_gauss_hopf(plus)?;
            let hm = load_gauss_hopf(minus)?;
            let b = match pairing {
                Some(p) => parse_pairing(&read(p)?)?,
                None => PairingMatrix::evaluation(hp.dim()),
            };
            let mut results = Map::new();
            results.insert("dim".into(), json!(hp.dim()));
            results.insert(
                "pairing".into(),
                json!(if pairing.is_some() {
                    "file"
                } else {
                    "evaluation"
                }),
            );
            Ok(finish("pair", check_pairing(&hp, &hm, &b), results))
        }
        Cmd::Double {
            input,
            check,
            irreps,
            out,
        } => {
            let h = load_gauss_hopf(input)?;
            let d = match drinfeld_double(&h) {
                Ok(d) => d,
                Err(DoubleError::Hopf(e)) => return hopf_failure("double", e),
                Err(e) => return Err(InputError(e.to_string())),
            };
            let file = algebra_to_json(d.algebra(), Some(&d));
            write_file(out, &file)?;
            if !check && !irreps {
                return Ok(Outcome {
                    doc: file,
                    passed: true,
                });
            }
            let mut report = Report::new();
            let mut results = Map::new();
            results.insert("dim".into(), json!(d.dim()));
            if *check {
                report.extend_prefixed("", hopf_report(&d));
                report.extend_prefixed(
                    "double.",
                    check_double_star(&h, &d).map_err(InputError::from)?,
                );
            }
            if *irreps {
                match wedderburn_blocks(d.algebra(), cfg) {
                    Ok(b) => {
                        report.pass("wedderburn");
                        results.extend(blocks_json(&b, cfg.tol));
                    }
                    Err(e) => report.fail("wedderburn", Witness::new([], e.to_string())),
                }
            }
            Ok(finish("double", report, results))
        }
        Cmd::DoubleTrace { input } => {
            let h = load_gauss_hopf(input)?;
            let d = match drinfeld_double(&h) {
                Ok(d) => d,
                Err(DoubleError::Hopf(e)) => return hopf_failure("double-trace", e),
                Err(e) => return Err(InputError(e.to_string())),
            };
            let mut report = Report::new();
            let mut results = Map::new();
            results.insert("dim".into(), json!(d.dim()));
            match double_trace_on(&h, &d) {
                Ok(t) => {
                    report.pass("tracial");
                    let g = gram_positivity(d.algebra(), &t).map_err(InputError::from)?;
                    report.pass("positive_definite");
                    results.insert(
                        "min_eigenvalue".into(),
                        numeric(g.min_eigenvalue, POSITIVITY_FLOOR),
                    );
                    let coords: Vec<Value> = t
                        .coords
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                        .map(|(i, c)| json!([i, format_rational(&c.re), format_rational(&c.im)]))
                        .collect();
                    results.insert("trace".into(), Value::Array(coords));
                }
                Err(DoubleError::NotTracial) => {
                    report.fail("tracial", Witness::new([], "t₋⋈t₊ is not tracial"))
                }
                Err(DoubleError::NotPositive(m)) => {
                    report.pass("tracial");
                    report.fail(
                        "positive_definite",
                        Witness::new([], format!("min eigenvalue {m:e}")),
                    );
                    results.insert("min_eigenvalue".into(), numeric(m, POSITIVITY_FLOOR));
                }
                Err(e) => report.fail("haar", Witness::new([], e.to_string())),
            }
            Ok(finish("double-trace", report, results))
        }
        Cmd::Irreps { input } => {
            let a = match load(input)? {
                AnyDoc::Gauss(d) => d.algebra().clone(),
                AnyDoc::Laurent(_) => {
                    return Err(InputError(format!(
                        "{}: block decomposition needs scalar `gaussian_rational`",
                        input.display()
                    )))
                }
            };
            let mut report = Report::new();
            let mut results = Map::new();
            results.insert("dim".into(), json!(a.dim()));
            match wedderburn_blocks(&a, cfg) {
                Ok(b) => {
                    report.pass("wedderburn");
                    results.extend(blocks_json(&b, cfg.tol));
                }
                Err(e) => report.fail("wedderburn", Witness::new([], e.to_string())),
            }
            Ok(finish("irreps", report, results))
        }
        Cmd::FusionValidate { input } => {
            let d = parse_fusion(&read(input)?)?;
            let mut results = Map::new();
            results.insert("labels".into(), json!(d.len()));
            Ok(finish("fusion-validate", validate_fusion(&d), results))
        }
        Cmd::FusionZero { input, sign, out } => {
            let eps = match sign.as_str() {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                other => {
                    return Err(InputError(format!(
                        "--sign must be `+` or `-`, got `{other}`"
                    )))
                }
            };
            let d = parse_fusion(&read(input)?)?;
            let z = match zero_level_algebra(&d) {
                Ok(z) => z,
                Err(FusionError::InvalidFusion(r)) => {
                    let mut report = Report::new();
                    report.extend_prefixed("fusion.", r);
                    return Ok(finish("fusion-zero", report, Map::new()));
                }
                Err(e) => return Err(InputError(e.to_string())),
            };
            write_file(out, &algebra_to_json(&z.algebra, None))?;
            let mut report = Report::new();
            report.extend_prefixed("algebra.", validate_algebra(&z.algebra));
            let corner = z.corner(eps);
            let omega = omega_on_corner(&corner, &z);
            let mut results = Map::new();
            results.insert("dim".into(), json!(z.algebra.dim()));
            results.insert("corner_dim".into(), json!(corner.algebra.dim()));
            results.insert("sign".into(), json!(eps.to_string()));
            report.record(
                "omega_tracial",
                (!is_tracial(&corner.algebra, &omega))
                    .then(|| Witness::new([], "ω is not tracial on the corner")),
            );
            let g = gram_positivity(&corner.algebra, &omega).map_err(InputError::from)?;
            results.insert(
                "min_eigenvalue".into(),
                numeric(g.min_eigenvalue, POSITIVITY_FLOOR),
            );
            report.record(
                "omega_positive_definite",
                (!g.is_positive_definite)
                    .then(|| Witness::new([], format!("min eigenvalue {:e}", g.min_eigenvalue))),
            );
            if report.is_ok() {
                match weight_zero_modules(&d, eps, cfg) {
                    Ok(b) => {
                        report.pass("weight_zero_modules");
                        results.insert("module_dims".into(), json!(b.sorted_dims()));
                        results.extend(blocks_json(&b, cfg.tol));
                    }
                    Err(e) => report.fail("weight_zero_modules", Witness::new([], e.to_string())),
                }
            }
            Ok(finish("fusion-zero", report, results))
        }
        Cmd::FusionFromHopf {
            input,
            out,
            depth_two,
        } => {
            let h = load_gauss_hopf(input)?;
            let hf = match fusion_from_hopf(&h, cfg) {
                Ok(hf) => hf,
                Err(FusionError::Hopf(e)) => return hopf_failure("fusion-from-hopf", e),
                Err(e) => {
                    let mut report = Report::new();
                    report.fail("fusion_from_hopf", Witness::new([], e.to_string()));
                    return Ok(finish("fusion-from-hopf", report, Map::new()));
                }
            };
            let datum = fusion_to_json(&hf.datum);
            write_file(out, &datum)?;
            let mut report = Report::new();
            report.extend_prefixed("fusion.", validate_fusion(&hf.datum));
            let mut results = Map::new();
            results.insert("datum".into(), datum);
            results.insert("block_dims".into(), json!(hf.dims));
            results.insert("max_residual".into(), numeric(hf.max_residual, cfg.tol));
            if let Some(kmax) = depth_two {
                let dims = depth_two_dimensions(&hf, kmax + 1);
                let n = h.dim() as u64;
                let mut tensor_dims = Vec::new();
                for k in 1..=*kmax {
                    let expected = n.pow(k as u32);
                    report.record(
                        &format!("depth_two_law.k{k}"),
                        (dims[k + 1] != expected).then(|| {
                            Witness::new(
                                [k],
                                format!("dim P_{} = {} ≠ {expected}", k + 1, dims[k + 1]),
                            )
                        }),
                    );
                    let (r, dim) = coproduct_power_check(&h, k);
                    report.extend_prefixed(&format!("tensor_power.k{k}."), r);
                    report.record(
                        &format!("tensor_power.k{k}.dimension"),
                        (dim as u64 != expected)
                            .then(|| Witness::new([k], format!("dim H^⊗{k} = {dim} ≠ {expected}"))),
                    );
                    tensor_dims.push(dim);
                }
                results.insert("relative_commutant_dims".into(), json!(dims));
                results.insert("tensor_power_dims".into(), json!(tensor_dims));
            }
            Ok(finish("fusion-from-hopf", report, results))
        }
        Cmd::Tl {
            n,
            verify_relations,
            basis,
            jones_word: variant,
            k,
        } => tl_command(*n, *verify_relations, *basis, *variant, *k),
    }
}

fn laurent_str(x: &Laurent) -> String {
    x.to_string()
}

fn tl_command(
    n: usize,
    verify: bool,
    basis: bool,
    variant: Option<i64>,
    k: usize,
) -> Result<Outcome, InputError> {
    let mut report = Report::new();
    let mut results = Map::new();
    results.insert("n".into(), json!(n));
    let diagrams = tl_basis(n);
    results.insert("basis_size".into(), json!(diagrams.len()));
    if basis {
        results.insert(
            "basis".into(),
            json!(diagrams.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
        );
    }
    if verify {
        let mut residuals = Map::new();
        let e = |i: usize| jones_projection(n, i).map_err(InputError::from);
        let record = |name: String,
                      lhs: TLElement,
                      rhs: TLElement,
                      report: &mut Report,
                      residuals: &mut Map<String, Value>|
         -> Result<(), InputError> {
            let diff = lhs.sub(&rhs)?;
            report.record(
                &name,
                (!diff.is_zero()).then(|| Witness::new([], diff.to_string())),
            );
            residuals.insert(name, json!(diff.to_string()));
            Ok(())
        };
        for i in 1..n {
            record(
                format!("idempotent.e{i}"),
                compose(&e(i)?, &e(i)?)?,
                e(i)?,
                &mut report,
                &mut residuals,
            )?;
            record(
                format!("self_adjoint.e{i}"),
                star(&e(i)?),
                e(i)?,
                &mut report,
                &mut residuals,
            )?;
            if i + 1 < n {
                let d2 = Laurent::delta_pow(-2);
                let lhs = compose_all(n, &[e(i)?, e(i + 1)?, e(i)?])?;
                record(
                    format!("jones_relation.e{i}e{}e{i}", i + 1),
                    lhs,
                    e(i)?.scale(&d2),
                    &mut report,
                    &mut residuals,
                )?;
                let lhs = compose_all(n, &[e(i + 1)?, e(i)?, e(i + 1)?])?;
                record(
                    format!("jones_relation.e{}e{i}e{}", i + 1, i + 1),
                    lhs,
                    e(i + 1)?.scale(&d2),
                    &mut report,
                    &mut residuals,
                )?;
            }
            for j in i + 2..n {
                let lhs = compose(&e(i)?, &e(j)?)?;
                let rhs = compose(&e(j)?, &e(i)?)?;
                record(
                    format!("far_commutation.e{i}e{j}"),
                    lhs,
                    rhs,
                    &mut report,
                    &mut residuals,
                )?;
            }
            let tr = markov_trace(&e(i)?);
            let diff = tr.clone() - Laurent::delta_pow(-2);
            report.record(
                &format!("trace.e{i}"),
                (!num_traits::Zero::is_zero(&diff)).then(|| Witness::new([i], laurent_str(&tr))),
            );
            residuals.insert(format!("trace.e{i}"), json!(laurent_str(&diff)));
        }
        // Markov property on the basis of TL_{n-1}, and traciality on TL_n.
        if n >= 1 {
            let mut markov_fail = None;
            let mut max_terms = Laurent::default();
            if n >= 2 {
                let en = e(n - 1)?;
                for (idx, d) in tl_basis(n - 1).into_iter().enumerate() {
                    let x = TLElement::diagram(d, Laurent::delta_pow(0));
                    let lhs = markov_trace(&compose(&x.embed(1), &en)?);
                    let rhs = markov_trace(&x) * &Laurent::delta_pow(-2);
                    let diff = lhs - rhs;
                    if !num_traits::Zero::is_zero(&diff) && markov_fail.is_none() {
                        markov_fail = Some(Witness::new([idx], laurent_str(&diff)));
                        max_terms = diff;
                    }
                }
            }
            report.record("markov_property", markov_fail);
            residuals.insert("markov_property".into(), json!(laurent_str(&max_terms)));
            let mut trace_fail = None;
            let elems: Vec<TLElement> = diagrams
                .iter()
                .map(|d| TLElement::diagram(d.clone(), Laurent::delta_pow(0)))
                .collect();
            if n <= 5 {
                'outer: for (i, x) in elems.iter().enumerate() {
                    for (j, y) in elems.iter().enumerate() {
                        let diff = markov_trace(&compose(x, y)?) - markov_trace(&compose(y, x)?);
                        if !num_traits::Zero::is_zero(&diff) {
                            trace_fail = Some(Witness::new([i, j], laurent_str(&diff)));
                            break 'outer;
                        }
                    }
                }
                report.record("trace_tracial", trace_fail);
            }
        }
        results.insert("residuals".into(), Value::Object(residuals));
    }
    if let Some(v) = variant {
        let jv = match v {
            -1 => JonesVariant::MinusOne,
            l if l >= 0 => JonesVariant::Shift(l as usize),
            other => {
                return Err(InputError(format!(
                    "--jones-word must be -1 or a non-negative shift, got {other}"
                )))
            }
        };
        let (word, power) = jv.word(k);
        let mut w = Map::new();
        w.insert("variant".into(), json!(v));
        w.insert("k".into(), json!(k));
        w.insert("generators".into(), json!(word));
        w.insert("delta_power".into(), json!(power));
        match jones_word(jv, k, n) {
            Ok(x) => {
                report.pass("jones_word.idempotent");
                report.pass("jones_word.self_adjoint");
                w.insert("element".into(), json!(x.to_string()));
                w.insert("trace".into(), json!(laurent_str(&markov_trace(&x))));
            }
            Err(crate::temperley_lieb::TlError::NotProjection(why)) => {
                report.fail("jones_word.projection", Witness::new([], why));
            }
            Err(e) => return Err(InputError(e.to_string())),
        }
        results.insert("jones_word".into(), Value::Object(w));
    }
    Ok(finish("tl", report, results))
}
