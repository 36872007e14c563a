//! The `mwkit` command line: every library operation bound to file inputs and
//! deterministic, machine-parsable text output.
//!
//! Exit codes: 0 = success / property verified, 2 = a refutation or
//! counterexample was computed (still a successful run), 1 = input error.

use crate::coloring::{color_bounded_mw, color_structural};
use crate::extraction::{eh_pair, nc_exact, nc_sample, nc_witness_minimize};
use crate::flips::{apply_flip, hideout_check, hideout_from_witness, HideoutCheck, KFlip, Verification};
use crate::graph::{parse_graph, Family, Graph};
use crate::mergeseq::{parse_mseq, MergeSequence, SyncResult};
use crate::solver::exact_merge_width;
use crate::BitSet;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "mwkit", version, about = "Merge sequences on graphs: validation, width, search, certificates", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a sequence against a graph; print ok or the first violation.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radius-r width of a sequence.
    Width {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite the resolved sets into the forced minimal family.
    Minimize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact merge-width by branch and bound (small graphs).
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a sequence to an induced subgraph.
    Restrict {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        /// Comma-separated one-indexed vertex ids to keep.
        #[arg(long)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the two-step witness sequence.
    TrivialSeq {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Proper colouring bounded by (t+1)! k^(2t-2).
    Color {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Proper colouring from a structurally bounded sequence.
    ColorSb {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete or anti-complete pair certificate.
    Eh {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Neighbourhood complexity: exact, or a sampled lower bound with --trials.
    Nc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimise a trace witness at a given alpha.
    NcWitness {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        alpha: usize,
        /// Comma-separated one-indexed vertex ids for X.
        #[arg(long)]
        x_set: String,
        /// Comma-separated one-indexed vertex ids for Y.
        #[arg(long)]
        y_set: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hideout certificate from a trace witness (alpha = 2^(2k+1)).
    Hideout {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x_set: String,
        #[arg(long)]
        y_set: String,
        /// Upgrade by exhaustive flip enumeration.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a k-flip from a .flip file.
    Flip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        flip: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a graph from a named family.
    Gen {
        #[arg(long)]
        family: String,
        /// Comma-separated numeric parameters.
        #[arg(long)]
        params: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the synchronisation property of resolved pairs.
    SyncCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Everything a run produces: the output text, where to put it, and the code.
struct Outcome {
    text: String,
    out: Option<PathBuf>,
    code: i32,
}

fn input_err(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        text: format!("error: {msg}\n"),
        out: None,
        code: 1,
    }
}

/// Runs the CLI on `argv` (without the program name), writing to `sink`.
pub fn run<W: Write>(argv: &[String], sink: &mut W) -> i32 {
    let mut full = vec!["mwkit".to_string()];
    full.extend(argv.iter().cloned());
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, anything else is an
            // input error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    let outcome = dispatch(cli.command);
    match outcome.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.text) {
                let _ = writeln!(sink, "error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let _ = write!(sink, "{}", outcome.text);
        }
    }
    outcome.code
}

fn load_graph(path: &PathBuf) -> Result<Graph, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_seq(path: &PathBuf) -> Result<MergeSequence, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    parse_mseq(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn parse_vertex_csv(csv: &str, n: usize) -> Result<Vec<usize>, Outcome> {
    let mut out = Vec::new();
    for field in csv.split(',') {
        let field = field.trim();
        if field.is_empty() {
            continue;
        }
        let v: usize = field
            .parse()
            .map_err(|_| input_err(format!("bad vertex id {field:?}")))?;
        if v == 0 || v > n {
            return Err(input_err(format!("vertex {v} out of range 1..={n}")));
        }
        out.push(v - 1);
    }
    if out.is_empty() {
        return Err(input_err("empty vertex list"));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn dispatch(command: Command) -> Outcome {
    match run_command(command) {
        Ok(outcome) => outcome,
        Err(outcome) => outcome,
    }
}

fn run_command(command: Command) -> Result<Outcome, Outcome> {
    let outcome = match command {
        Command::Validate { graph, seq, out } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            match s.validate(&g) {
                Ok(()) => Outcome {
                    text: "valid\n".into(),
                    out,
                    code: 0,
                },
                Err(v) if v.is_input_error() => return Err(input_err(v)),
                Err(v) => Outcome {
                    text: format!("invalid: {v}\n"),
                    out,
                    code: 2,
                },
            }
        }
        Command::Width {
            graph,
            seq,
            radius,
            out,
        } => {
            let s = load_seq(&seq)?;
            if let Some(graph) = graph {
                let g = load_graph(&graph)?;
                s.validate(&g).map_err(input_err)?;
            } else {
                s.validate_structure().map_err(input_err)?;
            }
            Outcome {
                text: format!("width {}\n", s.width(radius)),
                out,
                code: 0,
            }
        }
        Command::Minimize { graph, seq, out } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            let m = s.minimize(&g).map_err(input_err)?;
            Outcome {
                text: m.to_text(),
                out,
                code: 0,
            }
        }
        Command::Solve {
            graph,
            radius,
            budget,
            out,
        } => {
            let g = load_graph(&graph)?;
            let result = exact_merge_width(&g, radius, budget).map_err(input_err)?;
            let header = if result.optimal {
                format!("mw {}\n", result.value)
            } else {
                format!("mw-upper-bound {}\n", result.value)
            };
            Outcome {
                text: format!("{header}{}", result.witness.to_text()),
                out,
                code: 0,
            }
        }
        Command::Restrict {
            graph,
            seq,
            params,
            out,
        } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            let keep_ids = parse_vertex_csv(&params, g.n())?;
            let keep = BitSet::from_iter(g.n(), keep_ids.iter().copied());
            let (restricted, map) = s.restrict(&g, &keep).map_err(input_err)?;
            let mut text = String::new();
            for (new, old) in map.iter().enumerate() {
                text.push_str(&format!("c map {} {}\n", new + 1, old + 1));
            }
            text.push_str(&restricted.to_text());
            Outcome { text, out, code: 0 }
        }
        Command::TrivialSeq { graph, out } => {
            let g = load_graph(&graph)?;
            if g.n() == 0 {
                return Err(input_err("graph has no vertices"));
            }
            Outcome {
                text: MergeSequence::trivial(&g).to_text(),
                out,
                code: 0,
            }
        }
        Command::Color { graph, seq, out } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            let col = color_bounded_mw(&g, &s).map_err(input_err)?;
            Outcome {
                text: col.to_text(),
                out,
                code: 0,
            }
        }
        Command::ColorSb { graph, seq, out } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            let col = color_structural(&g, &s).map_err(input_err)?;
            Outcome {
                text: col.to_text(),
                out,
                code: 0,
            }
        }
        Command::Eh { graph, seq, out } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            let result = eh_pair(&g, &s).map_err(input_err)?;
            Outcome {
                text: result.certificate.to_text(),
                out,
                code: 0,
            }
        }
        Command::Nc {
            graph,
            p,
            trials,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let text = match trials {
                None => {
                    let (value, witness) = nc_exact(&g, p).map_err(input_err)?;
                    format!(
                        "pi {p} {value}\nX {}\n",
                        crate::extraction::ids_1indexed(&witness)
                    )
                }
                Some(trials) => {
                    let (value, witness) =
                        nc_sample(&g, p, trials, seed.unwrap_or(0)).map_err(input_err)?;
                    format!(
                        "pi-lb {p} {value}\nX {}\n",
                        crate::extraction::ids_1indexed(&witness)
                    )
                }
            };
            Outcome { text, out, code: 0 }
        }
        Command::NcWitness {
            graph,
            alpha,
            x_set,
            y_set,
            out,
        } => {
            let g = load_graph(&graph)?;
            let x = parse_vertex_csv(&x_set, g.n())?;
            let y = parse_vertex_csv(&y_set, g.n())?;
            let w = nc_witness_minimize(&g, &x, &y, alpha).map_err(input_err)?;
            Outcome {
                text: w.to_text(),
                out,
                code: 0,
            }
        }
        Command::Hideout {
            graph,
            k,
            x_set,
            y_set,
            verify,
            out,
        } => {
            let g = load_graph(&graph)?;
            let x = parse_vertex_csv(&x_set, g.n())?;
            let y = parse_vertex_csv(&y_set, g.n())?;
            if k == 0 {
                return Err(input_err("k must be positive"));
            }
            let alpha = 1usize << (2 * k + 1).min(62);
            let w = nc_witness_minimize(&g, &x, &y, alpha).map_err(input_err)?;
            let mut cert = hideout_from_witness(&g, k, &w).map_err(input_err)?;
            if verify {
                match hideout_check(&g, &cert.u, cert.r, cert.k, cert.d).map_err(input_err)? {
                    HideoutCheck::Verified => cert.verified = Verification::BruteForce,
                    HideoutCheck::Violated(flip) => {
                        return Ok(Outcome {
                            text: format!("violated by flip:\n{}", flip.to_text()),
                            out,
                            code: 2,
                        });
                    }
                }
            }
            Outcome {
                text: cert.to_text(),
                out,
                code: 0,
            }
        }
        Command::Flip { graph, flip, out } => {
            let g = load_graph(&graph)?;
            let text = std::fs::read_to_string(&flip)
                .map_err(|e| input_err(format!("cannot read {}: {e}", flip.display())))?;
            let f = KFlip::parse(g.n(), &text).map_err(input_err)?;
            let flipped = apply_flip(&g, &f).map_err(input_err)?;
            Outcome {
                text: flipped.to_text(),
                out,
                code: 0,
            }
        }
        Command::Gen {
            family,
            params,
            seed,
            out,
        } => {
            let mut values = Vec::new();
            for field in params.split(',') {
                let field = field.trim();
                if field.is_empty() {
                    continue;
                }
                let v: f64 = field
                    .parse()
                    .map_err(|_| input_err(format!("bad parameter {field:?}")))?;
                values.push(v);
            }
            let fam = Family::parse(&family, &values, seed).map_err(input_err)?;
            let g = crate::graph::generate(&fam).map_err(input_err)?;
            Outcome {
                text: g.to_text(),
                out,
                code: 0,
            }
        }
        Command::SyncCheck { graph, seq, out } => {
            let g = load_graph(&graph)?;
            let s = load_seq(&seq)?;
            match s.check_sync(&g).map_err(input_err)? {
                SyncResult::Ok => Outcome {
                    text: "sync ok\n".into(),
                    out,
                    code: 0,
                },
                counterexample => Outcome {
                    text: format!("{counterexample}\n"),
                    out,
                    code: 2,
                },
            }
        }
    };
    Ok(outcome)
}
