//! Thin command-line adapter over the `spgr` library: every subcommand
//! parses arguments, calls one library entry point, and formats the result.
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spgr::verify::{Runner, Suite};
use spgr::weyl::default_cap;
use spgr::words::{format_word, parse_word};
use spgr::{Error, Session};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "spgr",
    about = "Schubert calculus of the affine Grassmannian of the symplectic group",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Override the group-table length cap (default 12 for n <= 3, else 8;
    /// always at least 2n).
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the graded Bruhat ideal Z as sorted word strings.
    Zee {
        #[arg(long)]
        n: usize,
        /// Restrict to one length.
        #[arg(long)]
        r: Option<usize>,
    },
    /// The special Grassmannian element rho_i (its reduced word).
    Rho {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// The special Schubert element pp_r in the A_w basis.
    Pp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// The Schubert element pp_w of a Grassmannian word, by exact solve.
    Ppw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// The affine Stanley function of a word, in the M basis; with
    /// --degree, the full table over all Grassmannian words of that length.
    Qfun {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "degree")]
        word: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The dual Schubert polynomial of a Grassmannian word, in the Schur-P
    /// basis; with --degree, the full table for that length.
    Pfun {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "degree")]
        word: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Pieri product: special class of degree i times the class of word.
    Pieri {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        word: String,
    },
    /// Evaluated coproduct of A_word (or of pp_r with --r) as tensors.
    Coproduct {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "r")]
        word: Option<String>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// The partition of a Grassmannian word under the rho-factorization
    /// bijection.
    Lee {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Run a verification suite against the golden tables and properties.
    Verify {
        /// One of: appendix-a, appendix-b, appendix-c, properties, all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (e.g. `spgr ... | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn session(n: usize, cap: Option<usize>) -> Session {
    Session::with_cap(n, cap.unwrap_or_else(|| default_cap(n)))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Zee { n, r } => {
            let s = session(*n, cli.cap);
            let layers: Vec<usize> = match r {
                Some(r) => vec![*r],
                None => (0..=2 * n).collect(),
            };
            let mut obj = serde_json::Map::new();
            for &layer in &layers {
                let words: Vec<String> = s
                    .zee()
                    .layer(layer)
                    .iter()
                    .map(|&e| s.table().word_string(e))
                    .collect();
                if json {
                    obj.insert(layer.to_string(), json!(words));
                } else {
                    println!("Z_{layer}: {}", words.join(" "));
                }
            }
            if json {
                emit(json!({"op": "zee", "n": n, "layers": obj}));
            }
        }
        Command::Rho { n, i } => {
            let word = spgr::zee::rho_word(*n, *i)?;
            let rendered = format_word(&word, *n);
            if json {
                emit(json!({"op": "rho", "n": n, "i": i, "word": rendered}));
            } else {
                println!("{rendered}");
            }
        }
        Command::Pp { n, r } => {
            let s = session(*n, cli.cap);
            let pp = spgr::nilcoxeter::pp_generator(s.table(), s.zee(), *r)?;
            print_nilcox(&s, "pp", &pp, json);
        }
        Command::Ppw { n, word } => {
            let s = session(*n, cli.cap);
            let e = s.table().from_word(&parse_word(word, *n)?)?;
            let pp = spgr::nilcoxeter::pp_schubert(s.table(), e)?;
            print_nilcox(&s, "ppw", &pp, json);
        }
        Command::Qfun { n, word, degree } => {
            let s = session(*n, cli.cap);
            match (word, degree) {
                (Some(word), None) => {
                    let e = s.table().from_word(&parse_word(word, *n)?)?;
                    let q = spgr::schubert::affine_stanley(s.table(), s.zee(), e)?;
                    if json {
                        let terms: Vec<Value> = q
                            .terms()
                            .map(|(p, c)| json!({"coeff": c, "partition": p.render()}))
                            .collect();
                        emit(json!({"basis": "M", "n": n, "op": "qfun", "terms": terms, "word": word}));
                    } else {
                        println!("{}", q.render());
                    }
                }
                (None, Some(d)) => {
                    let rows = stanley_table(&s, *d)?;
                    print_table(&s, "qfun", *n, rows, json);
                }
                _ => {
                    return Err(Error::Domain(
                        "qfun needs exactly one of --word or --degree".into(),
                    ))
                }
            }
        }
        Command::Pfun { n, word, degree } => {
            let s = session(*n, cli.cap);
            match (word, degree) {
                (Some(word), None) => {
                    let e = s.table().from_word(&parse_word(word, *n)?)?;
                    let p = spgr::schubert::dual_kschur(s.table(), s.zee(), e)?;
                    if json {
                        let terms: Vec<Value> = p
                            .iter()
                            .map(|(p, c)| json!({"coeff": c, "partition": p.render()}))
                            .collect();
                        emit(json!({"basis": "P", "n": n, "op": "pfun", "terms": terms, "word": word}));
                    } else if p.is_empty() {
                        println!("1");
                    } else {
                        let rendered: Vec<String> = p
                            .iter()
                            .map(|(part, c)| {
                                if part.is_empty() {
                                    c.to_string()
                                } else if *c == 1 {
                                    format!("P_{}", part.render())
                                } else {
                                    format!("{c} P_{}", part.render())
                                }
                            })
                            .collect();
                        println!("{}", rendered.join(" + "));
                    }
                }
                (None, Some(d)) => {
                    let layer = spgr::schubert::dual_kschur_layer(s.table(), s.zee(), *d)?;
                    let rows: TableRows = layer
                        .iter()
                        .map(|(&w, terms)| {
                            (
                                s.table().word_string(w),
                                terms
                                    .iter()
                                    .map(|(p, c)| (p.render(), *c))
                                    .collect(),
                            )
                        })
                        .collect();
                    print_table(&s, "pfun", *n, rows, json);
                }
                _ => {
                    return Err(Error::Domain(
                        "pfun needs exactly one of --word or --degree".into(),
                    ))
                }
            }
        }
        Command::Pieri { n, i, word } => {
            let s = session(*n, cli.cap);
            let e = s.table().from_word(&parse_word(word, *n)?)?;
            let out = spgr::nilcoxeter::pieri(s.table(), s.zee(), *i, e)?;
            if json {
                let terms: Vec<Value> = out
                    .iter()
                    .map(|(&w, &c)| json!({"coeff": c, "word": s.table().word_string(w)}))
                    .collect();
                emit(json!({"i": i, "n": n, "op": "pieri", "terms": terms, "word": word}));
            } else {
                let rendered: Vec<String> = out
                    .iter()
                    .map(|(&w, &c)| {
                        let ws = s.table().word_string(w);
                        if c == 1 {
                            format!("xi_{ws}")
                        } else {
                            format!("{c} xi_{ws}")
                        }
                    })
                    .collect();
                println!("{}", rendered.join(" + "));
            }
        }
        Command::Coproduct { n, word, r } => {
            let s = session(*n, cli.cap);
            let tensor = match (word, r) {
                (Some(w), None) => {
                    let e = s.table().from_word(&parse_word(w, *n)?)?;
                    spgr::coproduct::phi0_delta_closed(s.table(), e)?
                }
                (None, Some(r)) => {
                    let pp = spgr::nilcoxeter::pp_generator(s.table(), s.zee(), *r)?;
                    spgr::coproduct::phi0_delta_on_elem(s.table(), &pp)?
                }
                _ => {
                    return Err(Error::Domain(
                        "coproduct needs exactly one of --word or --r".into(),
                    ))
                }
            };
            if json {
                let terms: Vec<Value> = tensor
                    .iter()
                    .map(|(&(a, b), &c)| {
                        json!({
                            "coeff": c,
                            "left": s.table().word_string(a),
                            "right": s.table().word_string(b),
                        })
                    })
                    .collect();
                emit(json!({"n": n, "op": "coproduct", "terms": terms}));
            } else {
                for (&(a, b), &c) in &tensor {
                    println!("{c}\t{} (x) {}", display_a(&s, a), display_a(&s, b));
                }
            }
        }
        Command::Lee { n, word } => {
            let s = session(*n, cli.cap);
            let e = s.table().from_word(&parse_word(word, *n)?)?;
            let lambda = spgr::zee::lee_partition(s.table(), e)?;
            if json {
                emit(json!({"n": n, "op": "lee", "partition": lambda.render(), "word": word}));
            } else {
                println!("{lambda}");
            }
        }
        Command::Verify { suite } => {
            let suite = Suite::from_str(suite)?;
            let runner = Runner::new();
            let results = runner.run(suite)?;
            let failed = results.iter().filter(|r| !r.passed).count();
            if json {
                let checks: Vec<Value> = results
                    .iter()
                    .map(|r| json!({"detail": r.detail, "name": r.name, "passed": r.passed}))
                    .collect();
                emit(json!({"checks": checks, "failed": failed, "op": "verify"}));
            } else {
                for r in &results {
                    println!("{r}");
                }
                println!("{} checks, {failed} failed", results.len());
            }
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

type TableRows = Vec<(String, Vec<(String, i64)>)>;

fn stanley_table(s: &Session, d: usize) -> Result<TableRows, Error> {
    let mut rows = Vec::new();
    for &e in s.table().layer(d) {
        if !s.table().is_grassmannian(e) {
            continue;
        }
        let q = spgr::schubert::affine_stanley(s.table(), s.zee(), e)?;
        rows.push((
            s.table().word_string(e),
            q.terms().map(|(p, c)| (p.render(), c)).collect(),
        ));
    }
    Ok(rows)
}

/// Emits a degree table mirroring the reference layout: one row per word,
/// one column per partition, zero columns suppressed, larger partitions
/// first.
fn print_table(s: &Session, op: &str, n: usize, rows: TableRows, json: bool) {
    // Sort rows by the partition of the word, ascending.
    let mut rows = rows;
    rows.sort_by_key(|(word, _)| {
        let e = s
            .table()
            .from_word(&parse_word(word, n).expect("own words parse"))
            .expect("own words resolve");
        spgr::zee::lee_partition(s.table(), e).expect("rows are Grassmannian")
    });
    if json {
        let obj: Vec<Value> = rows
            .iter()
            .map(|(word, terms)| {
                let cols: serde_json::Map<String, Value> = terms
                    .iter()
                    .map(|(p, c)| (p.clone(), json!(c)))
                    .collect();
                json!({"columns": cols, "word": word})
            })
            .collect();
        emit(json!({"n": n, "op": op, "rows": obj}));
        return;
    }
    // Collect nonzero columns, widest partitions first.
    let mut cols: Vec<String> = Vec::new();
    for (_, terms) in &rows {
        for (p, _) in terms {
            if !cols.contains(p) {
                cols.push(p.clone());
            }
        }
    }
    cols.sort_by(|a, b| {
        let pa = spgr::symfunc::partition::Partition::parse(a).expect("own partitions parse");
        let pb = spgr::symfunc::partition::Partition::parse(b).expect("own partitions parse");
        pb.lex_cmp(&pa)
    });
    let word_width = rows.iter().map(|(w, _)| w.len()).max().unwrap_or(1).max(4);
    let widths: Vec<usize> = cols.iter().map(|c| c.len().max(2)).collect();
    print!("{:word_width$}", "");
    for (c, w) in cols.iter().zip(&widths) {
        print!("  {c:>w$}");
    }
    println!();
    for (word, terms) in &rows {
        print!("{word:word_width$}");
        for (c, w) in cols.iter().zip(&widths) {
            let v = terms
                .iter()
                .find(|(p, _)| p == c)
                .map(|&(_, v)| v)
                .unwrap_or(0);
            if v == 0 {
                print!("  {:>w$}", "");
            } else {
                print!("  {v:>w$}");
            }
        }
        println!();
    }
}

fn display_a(s: &Session, e: spgr::weyl::ElemId) -> String {
    let word = s.table().word_string(e);
    if word.is_empty() {
        "A_e".into()
    } else {
        format!("A_{word}")
    }
}

fn print_nilcox(s: &Session, op: &str, pp: &spgr::nilcoxeter::NilCoxElem, json: bool) {
    if json {
        let terms: Vec<Value> = pp
            .terms()
            .map(|(e, c)| json!({"coeff": c, "word": s.table().word_string(e)}))
            .collect();
        emit(json!({"n": s.n(), "op": op, "terms": terms}));
    } else {
        println!("{}", pp.render(s.table()));
    }
}

fn emit(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).unwrap());
}
