//! Command-line surface: argument parsing, file plumbing, report
//! rendering, and exit-code mapping for every subcommand.
//!
//! Exit codes are a stable contract: 0 = yes/ok, 1 = no, 2 =
//! unknown/budget exhausted, 3 and above = error. Verdict-carrying
//! subcommands print a `verdict <word>` first line; record-producing
//! subcommands then emit the record in the serialization selected by
//! `--format`. Input records are sniffed by their first token (`p` =
//! text, `type` = structured), so any output can feed any input. File
//! arguments accept `-` for stdin, and all reports go to stdout.

use std::ffi::OsString;
use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use crate::connectivity::{verify, CutCertificate, SteinerInstance, Verdict};
use crate::graph::{orient, ArcId, Orientation, VertexId};
use crate::hardness::{
    gen_3col_to_modified, gen_max2sat_to_3col, gen_mnae_to_k2, gen_modified_to_4term, lift_k,
    pad_terminals, Formula, ModifiedInstance,
};
use crate::io::{
    parse_catalog, parse_formula, parse_instance, parse_modified, parse_orientation,
    parse_rinstance, parse_structured_catalog, parse_structured_formula, parse_structured_instance,
    parse_structured_modified, parse_structured_orientation, parse_structured_rinstance,
    serialize_catalog, serialize_formula, serialize_instance, serialize_modified,
    serialize_orientation, structured_catalog, structured_formula, structured_instance,
    structured_modified, structured_orientation,
};
use crate::minor::{
    catalog_decide, enumerate_minimal, fixed_topo_minor, Catalog, CatalogVerdict, MinorError,
};
use crate::reductions::{reduce_degree_k, reduce_r, three_regularize};
use crate::solver::{brute_force_solve, cap_parallel, solve, RInstance, SolveResult};
use crate::structure::{
    check_lemma_minimality, find_s_ordered_witness, is_s_essential, max_disjoint_cycles,
    min_feedback_arc_set, min_feedback_vertex_set, simple_cycles, tight_cut_lattice_check,
    MinimalityViolation,
};

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_UNKNOWN: i32 = 2;
const EXIT_ERROR: i32 = 3;

/// Output serialization for emitted records; reports are identical in
/// both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "steiner-orient",
    about = "Decide, verify, normalize, enumerate, and analyze rooted k-arc-connected orientations.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Search-node budget for the solver and minor searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Worker threads for parallel enumeration; never affects verdicts.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Serialization for emitted records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled analyses; never affects verdicts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Decide feasibility; on yes, emit a witness orientation.
    Solve { instance: String },
    /// Check an orientation; on failure, report the violated cut.
    Verify {
        instance: String,
        orientation: String,
    },
    /// Decide feasibility by exhaustive orientation enumeration.
    Oracle { instance: String },
    /// Normalize an instance while preserving feasibility.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Build hardness-construction instances and formulas.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Enumerate minimal feasible instances up to a vertex bound.
    EnumerateMinimal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        max_vertices: usize,
    },
    /// Test whether the pattern embeds in the host as a topological minor
    /// fixing the root and terminals (which must coincide).
    MinorTest { pattern: String, host: String },
    /// Decide a 3-regular instance against a catalog of minimal
    /// instances.
    CatalogDecide {
        instance: String,
        /// Catalog file produced by enumerate-minimal.
        #[arg(long)]
        catalog: String,
        /// Treat the catalog as exhaustive even if its header says
        /// otherwise.
        #[arg(long)]
        complete: bool,
    },
    /// Structural reports on an oriented instance.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Find the largest k for which the instance is feasible.
    MaximizeK { instance: String },
}

#[derive(Debug, Subcommand)]
enum ReduceCmd {
    /// Cap parallel bundles at 2k edges.
    Cap { instance: String },
    /// Give the root and terminals degree exactly k via bundled copies.
    Degk { instance: String },
    /// Expand internal vertices so all non-members have degree 3.
    Threg { instance: String },
    /// Turn a per-pair demand instance into a rooted instance.
    Rdemand { rinstance: String },
}

#[derive(Debug, Subcommand)]
enum GenerateCmd {
    /// Monotone NAE-3-SAT formula to a k=2 instance.
    MnaeK2 { formula: String },
    /// Raise a k=2 instance with tight terminal boundaries to larger k.
    LiftK {
        instance: String,
        #[arg(long)]
        k_target: usize,
    },
    /// MAX-2-SAT threshold formula to a clause-colored one.
    #[command(name = "max2sat-3col")]
    Max2sat3col { formula: String },
    /// Clause-colored formula to an instance with a preoriented boundary.
    #[command(name = "3col-modified")]
    ThreeColModified { formula: String },
    /// Preoriented-boundary instance to a plain 4-terminal instance.
    #[command(name = "modified-4t")]
    Modified4t { modified: String },
    /// Pad an instance with force-fed extra terminals.
    PadT {
        instance: String,
        #[arg(long)]
        t_target: usize,
    },
}

#[derive(Debug, Subcommand)]
enum AnalyzeCmd {
    /// Minimum feedback arc set of the oriented instance.
    Fas {
        instance: String,
        orientation: String,
        /// Largest cyclic-core arc count attacked exactly.
        #[arg(long, default_value_t = 24)]
        exact_limit: usize,
    },
    /// Minimum feedback vertex set of the oriented instance.
    Fvs {
        instance: String,
        orientation: String,
        #[arg(long, default_value_t = 24)]
        exact_limit: usize,
    },
    /// Simple cycles and a maximum vertex-disjoint cycle packing.
    Cycles {
        instance: String,
        orientation: String,
        #[arg(long, default_value_t = 24)]
        exact_limit: usize,
    },
    /// Classify every simple cycle as essential or not for one terminal.
    Essential {
        instance: String,
        orientation: String,
        /// Terminal to classify against; defaults to the first one.
        #[arg(long)]
        terminal: Option<VertexId>,
    },
    /// Search an ordered tight-cut witness over a disjoint cycle packing.
    Ordered {
        instance: String,
        orientation: String,
        #[arg(long)]
        terminal: Option<VertexId>,
        #[arg(long, default_value_t = 24)]
        exact_limit: usize,
    },
    /// Check the cycle-coverage conditions of minimally connected
    /// orientations.
    LemmaMin {
        instance: String,
        orientation: String,
    },
    /// Sample tight cuts and check closure under union and intersection.
    TightLattice {
        instance: String,
        orientation: String,
        #[arg(long)]
        terminal: Option<VertexId>,
        /// Constraint draws (and pair checks) to sample.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

/// Parses `argv` and runs the command against real stdin/stdout,
/// returning the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Render clap's own help/usage text but keep the error exit
            // code contract (clap would exit 2, which means "unknown").
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match execute(cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// True when the record's first token is `type` (structured format).
fn is_structured(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .find_map(|l| l.split_whitespace().next())
        == Some("type")
}

fn load_instance(path: &str) -> Result<SteinerInstance> {
    let text = read_input(path)?;
    let parsed = if is_structured(&text) {
        parse_structured_instance(&text)
    } else {
        parse_instance(&text)
    };
    parsed.with_context(|| format!("parsing instance from {path}"))
}

fn load_orientation(path: &str, edge_count: usize) -> Result<Orientation> {
    let text = read_input(path)?;
    let parsed = if is_structured(&text) {
        parse_structured_orientation(&text)
    } else {
        parse_orientation(&text)
    };
    let o = parsed.with_context(|| format!("parsing orientation from {path}"))?;
    if o.len() != edge_count {
        bail!(
            "orientation from {path} has {} directions but the instance has {} edges",
            o.len(),
            edge_count
        );
    }
    Ok(o)
}

fn load_rinstance(path: &str) -> Result<RInstance> {
    let text = read_input(path)?;
    let parsed = if is_structured(&text) {
        parse_structured_rinstance(&text)
    } else {
        parse_rinstance(&text)
    };
    parsed.with_context(|| format!("parsing demand instance from {path}"))
}

fn load_formula(path: &str) -> Result<Formula> {
    let text = read_input(path)?;
    let parsed = if is_structured(&text) {
        parse_structured_formula(&text)
    } else {
        parse_formula(&text)
    };
    parsed.with_context(|| format!("parsing formula from {path}"))
}

fn load_modified(path: &str) -> Result<ModifiedInstance> {
    let text = read_input(path)?;
    let parsed = if is_structured(&text) {
        parse_structured_modified(&text)
    } else {
        parse_modified(&text)
    };
    parsed.with_context(|| format!("parsing preoriented instance from {path}"))
}

fn load_catalog(path: &str) -> Result<Catalog> {
    let text = read_input(path)?;
    let parsed = if is_structured(&text) {
        parse_structured_catalog(&text)
    } else {
        parse_catalog(&text)
    };
    parsed.with_context(|| format!("parsing catalog from {path}"))
}

fn emit_instance<W: Write>(out: &mut W, format: Format, inst: &SteinerInstance) -> Result<()> {
    let text = match format {
        Format::Text => serialize_instance(inst),
        Format::Structured => structured_instance(inst),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_orientation<W: Write>(out: &mut W, format: Format, o: &Orientation) -> Result<()> {
    let text = match format {
        Format::Text => serialize_orientation(o),
        Format::Structured => structured_orientation(o),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_formula<W: Write>(out: &mut W, format: Format, f: &Formula) -> Result<()> {
    let text = match format {
        Format::Text => serialize_formula(f),
        Format::Structured => structured_formula(f),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_modified<W: Write>(out: &mut W, format: Format, mi: &ModifiedInstance) -> Result<()> {
    let text = match format {
        Format::Text => serialize_modified(mi),
        Format::Structured => structured_modified(mi),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_catalog<W: Write>(out: &mut W, format: Format, c: &Catalog) -> Result<()> {
    let text = match format {
        Format::Text => serialize_catalog(c),
        Format::Structured => structured_catalog(c),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn join_ids(ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_verdict<W: Write>(out: &mut W, word: &str) -> Result<()> {
    writeln!(out, "verdict {word}")?;
    Ok(())
}

fn write_certificate<W: Write>(out: &mut W, cert: &CutCertificate, k: usize) -> Result<()> {
    writeln!(out, "separated_terminal {}", cert.separated_terminal)?;
    writeln!(out, "out_degree {}", cert.out_degree)?;
    writeln!(out, "required {k}")?;
    writeln!(out, "side {}", join_ids(cert.side.iter().copied()))?;
    Ok(())
}

fn solve_exit<W: Write>(
    out: &mut W,
    result: SolveResult,
    format: Format,
    emit_witness: bool,
) -> Result<i32> {
    match result {
        SolveResult::Yes(o) => {
            write_verdict(out, "yes")?;
            if emit_witness {
                emit_orientation(out, format, &o)?;
            }
            Ok(EXIT_YES)
        }
        SolveResult::No => {
            write_verdict(out, "no")?;
            Ok(EXIT_NO)
        }
        SolveResult::Unknown(_) => {
            write_verdict(out, "unknown")?;
            Ok(EXIT_UNKNOWN)
        }
    }
}

/// Picks the terminal an analysis runs against: the `--terminal` flag
/// when given (validated), otherwise the first terminal.
fn pick_terminal(inst: &SteinerInstance, flag: Option<VertexId>) -> Result<VertexId> {
    match flag {
        Some(s) => {
            if !inst.is_terminal(s) {
                bail!("vertex {s} is not a terminal of the instance");
            }
            Ok(s)
        }
        None => inst
            .terminals()
            .first()
            .copied()
            .context("the instance has no terminals"),
    }
}

fn load_oriented(
    instance: &str,
    orientation: &str,
) -> Result<(SteinerInstance, crate::graph::DiGraph)> {
    let inst = load_instance(instance)?;
    let o = load_orientation(orientation, inst.graph().edge_count())?;
    let d = orient(inst.graph(), &o);
    Ok((inst, d))
}

fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    // The pool is processwide; later calls are no-ops, which is fine
    // because thread count never affects any output.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global();
    let budget = cli.budget;
    let format = cli.format;
    match cli.command {
        Cmd::Solve { instance } => {
            let inst = load_instance(&instance)?;
            solve_exit(out, solve(&inst, budget), format, true)
        }
        Cmd::Verify {
            instance,
            orientation,
        } => {
            let inst = load_instance(&instance)?;
            let o = load_orientation(&orientation, inst.graph().edge_count())?;
            match verify(&inst, &o) {
                Verdict::Ok => {
                    write_verdict(out, "ok")?;
                    Ok(EXIT_YES)
                }
                Verdict::Violated(cert) => {
                    write_verdict(out, "violated")?;
                    write_certificate(out, &cert, inst.k())?;
                    Ok(EXIT_NO)
                }
            }
        }
        Cmd::Oracle { instance } => {
            let inst = load_instance(&instance)?;
            let result = brute_force_solve(&inst)?;
            solve_exit(out, result, format, false)
        }
        Cmd::Reduce(kind) => {
            let inst = match kind {
                ReduceCmd::Cap { instance } => cap_parallel(&load_instance(&instance)?).0,
                ReduceCmd::Degk { instance } => {
                    reduce_degree_k(&load_instance(&instance)?).instance
                }
                ReduceCmd::Threg { instance } => {
                    three_regularize(&load_instance(&instance)?)?.instance
                }
                ReduceCmd::Rdemand { rinstance } => {
                    reduce_r(&load_rinstance(&rinstance)?)?.instance
                }
            };
            emit_instance(out, format, &inst)?;
            Ok(EXIT_YES)
        }
        Cmd::Generate(kind) => {
            match kind {
                GenerateCmd::MnaeK2 { formula } => {
                    let f = match load_formula(&formula)? {
                        Formula::Nae(f) => f,
                        other => {
                            bail!("mnae-k2 needs a nae3 formula, got {}", formula_kind(&other))
                        }
                    };
                    emit_instance(out, format, &gen_mnae_to_k2(&f))?;
                }
                GenerateCmd::LiftK { instance, k_target } => {
                    let inst = load_instance(&instance)?;
                    emit_instance(out, format, &lift_k(&inst, k_target)?)?;
                }
                GenerateCmd::Max2sat3col { formula } => {
                    let f = match load_formula(&formula)? {
                        Formula::TwoCnf(f) => f,
                        other => bail!(
                            "max2sat-3col needs a cnf2 formula, got {}",
                            formula_kind(&other)
                        ),
                    };
                    emit_formula(out, format, &Formula::Colored(gen_max2sat_to_3col(&f)?))?;
                }
                GenerateCmd::ThreeColModified { formula } => {
                    let f = match load_formula(&formula)? {
                        Formula::Colored(f) => f,
                        other => bail!(
                            "3col-modified needs a cnf2col formula, got {}",
                            formula_kind(&other)
                        ),
                    };
                    emit_modified(out, format, &gen_3col_to_modified(&f)?)?;
                }
                GenerateCmd::Modified4t { modified } => {
                    let mi = load_modified(&modified)?;
                    emit_instance(out, format, &gen_modified_to_4term(&mi))?;
                }
                GenerateCmd::PadT { instance, t_target } => {
                    let inst = load_instance(&instance)?;
                    emit_instance(out, format, &pad_terminals(&inst, t_target)?)?;
                }
            }
            Ok(EXIT_YES)
        }
        Cmd::EnumerateMinimal { k, t, max_vertices } => {
            let catalog = enumerate_minimal(k, t, max_vertices, budget);
            emit_catalog(out, format, &catalog)?;
            Ok(if catalog.complete {
                EXIT_YES
            } else {
                EXIT_UNKNOWN
            })
        }
        Cmd::MinorTest { pattern, host } => {
            let pattern = load_instance(&pattern)?;
            let host = load_instance(&host)?;
            if pattern.root() != host.root() || pattern.terminals() != host.terminals() {
                bail!("pattern and host must agree on root and terminal ids");
            }
            let mut w = vec![pattern.root()];
            w.extend_from_slice(pattern.terminals());
            match fixed_topo_minor(host.graph(), pattern.graph(), &w, budget) {
                Ok(Some(emb)) => {
                    write_verdict(out, "yes")?;
                    writeln!(
                        out,
                        "vertex_map {}",
                        join_ids(emb.vertex_map.iter().copied())
                    )?;
                    for path in &emb.paths {
                        writeln!(out, "path {}", join_ids(path.iter().copied()))?;
                    }
                    Ok(EXIT_YES)
                }
                Ok(None) => {
                    write_verdict(out, "no")?;
                    Ok(EXIT_NO)
                }
                Err(MinorError::BudgetExhausted { .. }) => {
                    write_verdict(out, "unknown")?;
                    Ok(EXIT_UNKNOWN)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::CatalogDecide {
            instance,
            catalog,
            complete,
        } => {
            let inst = load_instance(&instance)?;
            let cat = load_catalog(&catalog)?;
            let complete = complete || cat.complete;
            match catalog_decide(&inst, &cat, complete, budget) {
                Ok(CatalogVerdict::Yes { entry }) => {
                    write_verdict(out, "yes")?;
                    writeln!(out, "entry {entry}")?;
                    Ok(EXIT_YES)
                }
                Ok(CatalogVerdict::No) => {
                    write_verdict(out, "no")?;
                    Ok(EXIT_NO)
                }
                Ok(CatalogVerdict::NoWithinCatalog) => {
                    write_verdict(out, "unknown")?;
                    Ok(EXIT_UNKNOWN)
                }
                Err(MinorError::BudgetExhausted { .. }) => {
                    write_verdict(out, "unknown")?;
                    Ok(EXIT_UNKNOWN)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Analyze(kind) => run_analyze(kind, cli.seed, out),
        Cmd::MaximizeK { instance } => {
            let inst = load_instance(&instance)?;
            if inst.terminals().is_empty() {
                bail!("maximize-k needs at least one terminal");
            }
            let mut best = 0;
            let mut k = 1;
            loop {
                let cand = SteinerInstance::new(
                    inst.graph().clone(),
                    inst.root(),
                    inst.terminals().to_vec(),
                    k,
                )
                .expect("members already validated");
                match solve(&cand, budget) {
                    SolveResult::Yes(_) => {
                        best = k;
                        k += 1;
                    }
                    SolveResult::No => break,
                    SolveResult::Unknown(_) => {
                        writeln!(out, "k {best}")?;
                        write_verdict(out, "unknown")?;
                        return Ok(EXIT_UNKNOWN);
                    }
                }
            }
            writeln!(out, "k {best}")?;
            Ok(EXIT_YES)
        }
    }
}

fn formula_kind(f: &Formula) -> &'static str {
    match f {
        Formula::Nae(_) => "nae3",
        Formula::TwoCnf(_) => "cnf2",
        Formula::Colored(_) => "cnf2col",
    }
}

fn write_cycle_line<W: Write>(out: &mut W, key: &str, arcs: &[ArcId]) -> Result<()> {
    writeln!(out, "{key} {}", join_ids(arcs.iter().copied()))?;
    Ok(())
}

fn run_analyze<W: Write>(kind: AnalyzeCmd, seed: u64, out: &mut W) -> Result<i32> {
    match kind {
        AnalyzeCmd::Fas {
            instance,
            orientation,
            exact_limit,
        } => {
            let (_, d) = load_oriented(&instance, &orientation)?;
            let (arcs, exact) = min_feedback_arc_set(&d, exact_limit);
            writeln!(out, "size {}", arcs.len())?;
            writeln!(out, "exact {}", exact as u8)?;
            writeln!(out, "arcs {}", join_ids(arcs.iter().copied()))?;
            Ok(EXIT_YES)
        }
        AnalyzeCmd::Fvs {
            instance,
            orientation,
            exact_limit,
        } => {
            let (_, d) = load_oriented(&instance, &orientation)?;
            let (vertices, exact) = min_feedback_vertex_set(&d, exact_limit);
            writeln!(out, "size {}", vertices.len())?;
            writeln!(out, "exact {}", exact as u8)?;
            writeln!(out, "vertices {}", join_ids(vertices.iter().copied()))?;
            Ok(EXIT_YES)
        }
        AnalyzeCmd::Cycles {
            instance,
            orientation,
            exact_limit,
        } => {
            let (_, d) = load_oriented(&instance, &orientation)?;
            let cycles = simple_cycles(&d);
            let (packing, exact) = max_disjoint_cycles(&d, exact_limit);
            writeln!(out, "count {}", cycles.len())?;
            writeln!(out, "disjoint {}", packing.len())?;
            writeln!(out, "exact {}", exact as u8)?;
            for c in &cycles {
                write_cycle_line(out, "cycle", c)?;
            }
            Ok(EXIT_YES)
        }
        AnalyzeCmd::Essential {
            instance,
            orientation,
            terminal,
        } => {
            let (inst, d) = load_oriented(&instance, &orientation)?;
            let s = pick_terminal(&inst, terminal)?;
            for c in simple_cycles(&d) {
                let word = if is_s_essential(&d, inst.root(), s, &c, inst.k())? {
                    "essential"
                } else {
                    "inessential"
                };
                write_cycle_line(out, word, &c)?;
            }
            Ok(EXIT_YES)
        }
        AnalyzeCmd::Ordered {
            instance,
            orientation,
            terminal,
            exact_limit,
        } => {
            let (inst, d) = load_oriented(&instance, &orientation)?;
            let s = pick_terminal(&inst, terminal)?;
            let (packing, _) = max_disjoint_cycles(&d, exact_limit);
            match find_s_ordered_witness(&d, inst.root(), s, &packing, inst.k())? {
                Some(w) => {
                    write_verdict(out, "yes")?;
                    for (c, cut) in w.cycles.iter().zip(&w.cuts) {
                        write_cycle_line(out, "cycle", c)?;
                        writeln!(out, "cut {}", join_ids(cut.side.iter().copied()))?;
                    }
                    Ok(EXIT_YES)
                }
                None => {
                    write_verdict(out, "no")?;
                    Ok(EXIT_NO)
                }
            }
        }
        AnalyzeCmd::LemmaMin {
            instance,
            orientation,
        } => {
            let (inst, d) = load_oriented(&instance, &orientation)?;
            let violations = check_lemma_minimality(&d, inst.root(), inst.terminals(), inst.k())?;
            writeln!(out, "violations {}", violations.len())?;
            for v in &violations {
                match v {
                    MinimalityViolation::Uncovered { cycle } => {
                        write_cycle_line(out, "uncovered", cycle)?;
                    }
                    MinimalityViolation::Swallowed { cycle, terminal } => {
                        writeln!(
                            out,
                            "swallowed {terminal} {}",
                            join_ids(cycle.iter().copied())
                        )?;
                    }
                }
            }
            Ok(if violations.is_empty() {
                EXIT_YES
            } else {
                EXIT_NO
            })
        }
        AnalyzeCmd::TightLattice {
            instance,
            orientation,
            terminal,
            samples,
        } => {
            let (inst, d) = load_oriented(&instance, &orientation)?;
            let s = pick_terminal(&inst, terminal)?;
            let report = tight_cut_lattice_check(&d, inst.root(), s, inst.k(), samples, seed)?;
            writeln!(out, "cuts {}", report.cuts_found)?;
            writeln!(out, "pairs {}", report.pairs_checked)?;
            writeln!(out, "violations {}", report.violations.len())?;
            for (a, b) in &report.violations {
                writeln!(out, "violation_a {}", join_ids(a.iter().copied()))?;
                writeln!(out, "violation_b {}", join_ids(b.iter().copied()))?;
            }
            Ok(if report.violations.is_empty() {
                EXIT_YES
            } else {
                EXIT_NO
            })
        }
    }
}
