use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use serde_json::json;

use blobcell::blob::{enumerate_blob_half, gram_matrix_blob};
use blobcell::coxeter::{bruhat_leq, bruhat_lt, word_mul, CoxeterWord, PositiveRoot};
use blobcell::gram::{beta, beta_closed, gram_blocks, render_factored};
use blobcell::jantzen::{
    delta_alpha_dim, graded_dim_cell, graded_dim_delta_w, sum_formula_check, sum_formula_check_w0,
    CellContext, JantzenReport,
};
use blobcell::jw::{jw, set_fault_injection};
use blobcell::poly::Rational;
use blobcell::suite::run_suite;
use blobcell::tl::{reduced_words, render_word};
use blobcell::{Error, LaurentPoly};

#[derive(Parser)]
#[command(
    name = "blobcell",
    version,
    about = "Exact Gram forms of blob and Temperley-Lieb cell modules"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix of the blob cell module Delta_n(lambda).
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
    },
    /// Diagonal blocks c_i * I_{d_i} of the Gram matrix.
    Diag {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
    },
    /// beta_{k,lambda}, in factored form.
    Beta {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
    },
    /// Expansion of the Jones-Wenzl idempotent JW_n.
    Jw {
        #[arg(long)]
        n: usize,
    },
    /// Graded sum formula for Delta_w(v).
    Sumformula {
        #[arg(long)]
        w: CoxeterWord,
        #[arg(long)]
        v: CoxeterWord,
        /// Same as --format json.
        #[arg(long)]
        json: bool,
    },
    /// Graded sum formula for a Bruhat ideal W0 (comma separated words).
    SumformulaW0 {
        #[arg(long, value_delimiter = ',')]
        w0: Vec<CoxeterWord>,
        #[arg(long)]
        v: CoxeterWord,
    },
    /// Graded dimension of Delta_n(lambda), or of Delta_w(v).
    Dims {
        #[arg(long, requires = "lambda", conflicts_with_all = ["w", "v"])]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<i64>,
        #[arg(long, requires = "v")]
        w: Option<CoxeterWord>,
        #[arg(long, requires = "w")]
        v: Option<CoxeterWord>,
    },
    /// Graded dimension of the submodule of Delta_w(v) attached to a root.
    Delta {
        #[arg(long)]
        w: CoxeterWord,
        #[arg(long)]
        v: CoxeterWord,
        /// Positive root, e.g. a_x[3].
        #[arg(long)]
        root: PositiveRoot,
    },
    /// Runs the verification suite.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

/// Rendered output and whether the command's check passed.
type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("BLOBCELL_THREADS") {
        let Ok(threads) = v.parse::<usize>() else {
            eprintln!(
                "error: BLOBCELL_THREADS must be a positive integer, got {:?}",
                v
            );
            return ExitCode::from(2);
        };
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((out, pass)) => {
            print!("{}", out);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {}", msg);
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Gram { n, lambda } => cmd_gram(n, lambda, fmt),
        Command::Diag { n, lambda } => cmd_diag(n, lambda, fmt),
        Command::Beta { k, lambda } => cmd_beta(k, lambda, fmt),
        Command::Jw { n } => cmd_jw(n, fmt),
        Command::Sumformula { w, v, json } => {
            cmd_sumformula(w, v, if json { Format::Json } else { fmt })
        }
        Command::SumformulaW0 { w0, v } => cmd_sumformula_w0(&w0, &v, fmt),
        Command::Dims { n, lambda, w, v } => match (n, lambda, w, v) {
            (Some(n), Some(l), None, None) => cmd_dims_cell(n, l, fmt),
            (None, None, Some(w), Some(v)) => cmd_dims_context(w, v, fmt),
            _ => Err(Failure::Usage(
                "dims needs either --n and --lambda, or --w and --v".into(),
            )),
        },
        Command::Delta { w, v, root } => cmd_delta(w, v, root, fmt),
        Command::Verify {
            max_n,
            inject_fault,
        } => {
            set_fault_injection(inject_fault);
            cmd_verify(max_n, fmt)
        }
    }
}

fn to_json(v: &serde_json::Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable")
    )
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{:<w$}", s, w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn csv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(",") + "\n").collect()
}

fn cmd_gram(n: usize, lambda: i64, fmt: Format) -> Outcome {
    let basis = enumerate_blob_half(n, lambda)?;
    let g = gram_matrix_blob(n, lambda)?;
    let cells: Vec<Vec<String>> = g
        .iter()
        .map(|r| r.iter().map(|p| p.to_string()).collect())
        .collect();
    let out = match fmt {
        Format::Pretty => {
            format!(
                "Gram matrix of Delta_{}({}), dimension {}\n",
                n,
                lambda,
                basis.len()
            ) + &table(&cells)
        }
        Format::Csv => csv(&cells),
        Format::Json => to_json(&json!({
            "n": n,
            "lambda": lambda,
            "basis": basis.basis,
            "matrix": g,
        })),
    };
    Ok((out, true))
}

fn cmd_diag(n: usize, lambda: i64, fmt: Format) -> Outcome {
    let blocks = gram_blocks(n, lambda)?;
    let out = match fmt {
        Format::Json => to_json(&json!({
            "n": n,
            "lambda": lambda,
            "blocks": blocks.iter().map(|b| json!({
                "i": b.index,
                "c": b.c.to_string(),
                "d": b.multiplicity,
                "deg": b.degree,
                "ratio": b.ratio.to_string(),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let bound = n as u32 + 2;
            let mut rows = vec![vec!["i", "d", "deg", "c", "ratio"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>()];
            for b in &blocks {
                rows.push(vec![
                    b.index.to_string(),
                    b.multiplicity.to_string(),
                    b.degree.to_string(),
                    if fmt == Format::Pretty {
                        render_factored(&b.c, bound)
                    } else {
                        b.c.to_string()
                    },
                    if fmt == Format::Pretty {
                        render_factored(&b.ratio, bound)
                    } else {
                        b.ratio.to_string()
                    },
                ]);
            }
            if fmt == Format::Pretty {
                table(&rows)
            } else {
                csv(&rows)
            }
        }
    };
    Ok((out, true))
}

fn cmd_beta(k: usize, lambda: i64, fmt: Format) -> Outcome {
    let b = beta(k, lambda)?;
    let matches = b == beta_closed(k, lambda);
    let n = 2 * k as u32 + lambda.unsigned_abs() as u32;
    let factored = render_factored(&b, n + 2);
    let out = match fmt {
        Format::Pretty => {
            let mut s = format!("{}\n", factored);
            if !matches {
                s.push_str("does not match the closed form\n");
            }
            s
        }
        Format::Csv => csv(&[
            vec![
                "k".into(),
                "lambda".into(),
                "beta".into(),
                "factored".into(),
                "closed_form".into(),
            ],
            vec![
                k.to_string(),
                lambda.to_string(),
                b.to_string(),
                factored,
                matches.to_string(),
            ],
        ]),
        Format::Json => to_json(&json!({
            "k": k,
            "lambda": lambda,
            "beta": b.to_string(),
            "factored": factored,
            "closed_form": matches,
        })),
    };
    Ok((out, matches))
}

fn coeff_prefix(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("({})", c)
    }
}

fn cmd_jw(n: usize, fmt: Format) -> Outcome {
    let j = jw(n)?;
    let words = reduced_words(n)?;
    let terms: Vec<(String, Rational)> = j
        .iter()
        .map(|(d, c)| (render_word(&words[d]), c.clone()))
        .collect();
    let out = match fmt {
        Format::Pretty => {
            let mut s = String::new();
            for (idx, (w, c)) in terms.iter().enumerate() {
                let mag = c.abs();
                if idx > 0 {
                    s.push_str(if c.is_negative() { " - " } else { " + " });
                } else if c.is_negative() {
                    s.push('-');
                }
                match (mag.is_one(), w.as_str()) {
                    (true, _) => s.push_str(w),
                    (false, "1") => s.push_str(&coeff_prefix(&mag)),
                    (false, _) => {
                        let _ = write!(s, "{}{}", coeff_prefix(&mag), w);
                    }
                }
            }
            s + "\n"
        }
        Format::Csv => {
            let mut rows = vec![vec!["word".to_string(), "coeff".to_string()]];
            rows.extend(terms.iter().map(|(w, c)| vec![w.clone(), c.to_string()]));
            csv(&rows)
        }
        Format::Json => to_json(&json!({
            "n": n,
            "terms": terms.iter().map(|(w, c)| json!({"word": w, "coeff": c.to_string()})).collect::<Vec<_>>(),
        })),
    };
    Ok((out, true))
}

fn render_report(r: &JantzenReport) -> String {
    let mut s = String::new();
    let kind = if r.complement { "complement" } else { "tail" };
    let _ = writeln!(
        s,
        "w = {}, v = {}, lambda = {} ({})",
        r.w, r.v, r.lambda, kind
    );
    if r.identity_v {
        s.push_str("note: v = e enters through the complement shift rule\n");
    }
    for l in &r.layers {
        let _ = writeln!(s, "layer {}: {}", l.k, l.dim);
    }
    let _ = writeln!(s, "LHS = {}", r.lhs);
    let _ = writeln!(s, "RHS = {}", r.rhs);
    s.push_str(if r.pass { "PASS\n" } else { "FAIL\n" });
    s
}

fn cmd_sumformula(w: CoxeterWord, v: CoxeterWord, fmt: Format) -> Outcome {
    let r = sum_formula_check(&CellContext::new(w, v)?)?;
    let out = match fmt {
        Format::Pretty => render_report(&r),
        Format::Json => to_json(&serde_json::to_value(&r).expect("serializable")),
        Format::Csv => csv(&[
            vec![
                "w".into(),
                "v".into(),
                "lambda".into(),
                "lhs".into(),
                "rhs".into(),
                "pass".into(),
            ],
            vec![
                r.w.to_string(),
                r.v.to_string(),
                r.lambda.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.pass.to_string(),
            ],
        ]),
    };
    Ok((out, r.pass))
}

fn cmd_sumformula_w0(w0: &[CoxeterWord], v: &CoxeterWord, fmt: Format) -> Outcome {
    let r = sum_formula_check_w0(w0, v)?;
    let out = match fmt {
        Format::Json => to_json(&serde_json::to_value(&r).expect("serializable")),
        Format::Csv => {
            let mut rows = vec![vec!["z".to_string(), "lhs".to_string(), "rhs".to_string()]];
            rows.extend(
                r.components
                    .iter()
                    .map(|c| vec![c.w.to_string(), c.lhs.to_string(), c.rhs.to_string()]),
            );
            rows.push(vec!["total".into(), r.lhs.to_string(), r.rhs.to_string()]);
            csv(&rows)
        }
        Format::Pretty => {
            let ideal: Vec<String> = r.ideal.iter().map(|z| z.to_string()).collect();
            let mut s = format!("W0 = {{{}}}, v = {}\n", ideal.join(", "), r.v);
            for c in &r.components {
                let _ = writeln!(s, "  z = {}: LHS = {}, RHS = {}", c.w, c.lhs, c.rhs);
            }
            let _ = writeln!(s, "LHS = {}", r.lhs);
            let _ = writeln!(s, "RHS = {}", r.rhs);
            s.push_str(if r.pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    Ok((out, r.pass))
}

fn render_dims(label: &str, lambda: i64, dim: &LaurentPoly, fmt: Format) -> String {
    match fmt {
        Format::Pretty => format!("{}\ndim = {}\ndim_q = {}\n", label, dim.eval_at_one(), dim),
        Format::Csv => csv(&[
            vec![
                "module".into(),
                "lambda".into(),
                "dim".into(),
                "dim_q".into(),
            ],
            vec![
                label.into(),
                lambda.to_string(),
                dim.eval_at_one().to_string(),
                dim.to_string(),
            ],
        ]),
        Format::Json => to_json(&json!({
            "module": label,
            "lambda": lambda,
            "dim": dim.eval_at_one(),
            "dim_q": dim.to_string(),
        })),
    }
}

fn cmd_dims_cell(n: usize, lambda: i64, fmt: Format) -> Outcome {
    let dim = graded_dim_cell(n, lambda)?;
    Ok((
        render_dims(&format!("Delta_{}({})", n, lambda), lambda, &dim, fmt),
        true,
    ))
}

fn cmd_dims_context(w: CoxeterWord, v: CoxeterWord, fmt: Format) -> Outcome {
    let ctx = CellContext::new(w, v)?;
    let dim = graded_dim_delta_w(&ctx)?;
    let label = format!("Delta_{}({})", ctx.w(), ctx.v());
    Ok((render_dims(&label, ctx.lambda(), &dim, fmt), true))
}

fn cmd_delta(w: CoxeterWord, v: CoxeterWord, root: PositiveRoot, fmt: Format) -> Outcome {
    let ctx = CellContext::new(w.clone(), v.clone())?;
    let got = delta_alpha_dim(&ctx, root)?;
    let u = word_mul(&root.reflection(), &v);
    let expected = if bruhat_lt(&v, &u) && bruhat_leq(&u, &w) {
        graded_dim_delta_w(&CellContext::new(w.clone(), u.clone())?)?
            .shift(u.len() as i64 - v.len() as i64)
    } else {
        LaurentPoly::zero()
    };
    let pass = got == expected;
    let out = match fmt {
        Format::Pretty => format!(
            "w = {}, v = {}, root = {}\ndim_q = {}\nexpected = {}\n{}\n",
            w,
            v,
            root,
            got,
            expected,
            if pass { "PASS" } else { "FAIL" }
        ),
        Format::Csv => csv(&[
            vec![
                "w".into(),
                "v".into(),
                "root".into(),
                "dim_q".into(),
                "expected".into(),
            ],
            vec![
                w.to_string(),
                v.to_string(),
                root.to_string(),
                got.to_string(),
                expected.to_string(),
            ],
        ]),
        Format::Json => to_json(&json!({
            "w": w.to_string(),
            "v": v.to_string(),
            "root": root.to_string(),
            "dim_q": got.to_string(),
            "expected": expected.to_string(),
            "pass": pass,
        })),
    };
    Ok((out, pass))
}

fn cmd_verify(max_n: usize, fmt: Format) -> Outcome {
    let items = run_suite(max_n)?;
    let passed = items.iter().filter(|i| i.pass).count();
    let all = passed == items.len();
    let out = match fmt {
        Format::Json => to_json(&json!({ "max_n": max_n, "items": items, "pass": all })),
        Format::Csv => {
            let mut rows = vec![vec![
                "name".to_string(),
                "pass".to_string(),
                "detail".to_string(),
            ]];
            rows.extend(items.iter().map(|i| {
                vec![
                    i.name.clone(),
                    i.pass.to_string(),
                    i.detail.replace(',', ";"),
                ]
            }));
            csv(&rows)
        }
        Format::Pretty => {
            let mut s = String::new();
            for i in &items {
                let _ = writeln!(
                    s,
                    "{} {}: {}",
                    if i.pass { "PASS" } else { "FAIL" },
                    i.name,
                    i.detail
                );
            }
            let _ = writeln!(s, "{}/{} passed", passed, items.len());
            s
        }
    };
    Ok((out, all))
}
