use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use raag_core::dot::{graph_to_dot, subgraph_to_dot, write_dot};
use raag_core::ext::{build_axial, build_ball, build_chain, build_lambda, ext_distance, DistanceMode};
use raag_core::graph::GraphSpec;
use raag_core::oracles::{bundled_instances, run_agreement_suite, run_lemma_suite, Instance, OracleReport, SuiteParams};
use raag_core::reproduce::reproduce;
use raag_core::translation::{spectrum_scan, SpectrumBudget};
use raag_core::word::{classify, EllipticWitness, cyclic_syllable_reduce, enumerate_syllable_decompositions, format_syllables, star_length};
use raag_core::{load_graph, tau, Element, ExtSubgraph, ExtVertex, SimplicialGraph, SyllableSeq, TauOptions, VertexId};

#[derive(Parser, Debug)]
#[command(name = "raag", version, about = "Right-angled Artin groups and translation lengths on extension graphs")]
struct Cli {
    /// Defining graph: `path:n`, `cycle:n`, `star:n`, `gamma:k` or a JSON file.
    #[arg(long, global = true)]
    graph: Option<String>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "RAAG_THREADS")]
    threads: Option<usize>,

    /// Cap on syllable decompositions when building Λ.
    #[arg(long, global = true, env = "RAAG_LAMBDA_CAP", default_value_t = TauOptions::default().lambda_cap,
          value_parser = positive)]
    lambda_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Args, Debug)]
struct WordArg {
    /// Whitespace-separated tokens `name` or `name^k`, leftmost letter first.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elliptic or loxodromic, with a witness.
    Classify(WordArg),
    /// Normal form, optionally after a power or a conjugation.
    Nf {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, allow_hyphen_values = true)]
        power: Option<i64>,
        /// Conjugate as `h⁻¹ g h`.
        #[arg(long, allow_hyphen_values = true)]
        conjugate_by: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        times: Option<String>,
    },
    /// Syllable length, decompositions, cyclic reduction and star length.
    Syllables {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 100, value_parser = positive)]
        cap: usize,
    },
    /// Extension-graph distance between two vertices `v` or `v ^ (word)`.
    Dist {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "auto")]
        mode: DistanceMode,
    },
    /// Asymptotic translation length with its certificate.
    Tau(WordArg),
    /// Translation lengths over all conjugacy classes up to a syllable budget.
    Spectrum {
        #[arg(long, default_value_t = 4)]
        max_syllables: usize,
        /// Comma-separated nonzero exponents.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1i64, 1])]
        exponents: Vec<i64>,
        /// Only words whose syllables use pairwise distinct vertices.
        #[arg(long)]
        distinct: bool,
        #[arg(long, default_value_t = 2_000_000)]
        max_elements: usize,
        /// Write the per-class values as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Ball of conjugates `w^(h c)` with `|h|` at most the radius.
    Ball {
        #[arg(long)]
        center: String,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long, default_value_t = 200_000)]
        limit: usize,
    },
    /// Truncated axial subgraph of a cyclically reduced loxodromic element.
    Axial {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// DOT rendering of the defining graph or of a subgraph built from a word.
    ExportDot {
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::Chain)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariant and brute-force agreement checks on the bundled instances.
    LemmaSuite {
        /// Elements to exercise when `--graph` is given.
        #[arg(long, allow_hyphen_values = true)]
        word: Vec<String>,
        /// Skip the brute-force agreement checks.
        #[arg(long)]
        lemmas_only: bool,
    },
    /// Recompute every reference value and compare.
    Reproduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Chain,
    Lambda,
    Axial,
}

/// Bad invocation detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

struct Ctx {
    graph: Option<String>,
    format: Option<Format>,
    opts: TauOptions,
}

impl Ctx {
    fn graph(&self) -> Result<Arc<SimplicialGraph>> {
        let src = self.graph.as_deref().ok_or_else(|| Usage("--graph is required for this command".into()))?;
        Ok(Arc::new(load_graph(src).with_context(|| format!("loading graph `{src}`"))?))
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn parse(word: &str, g: &Arc<SimplicialGraph>) -> Result<Element> {
    Element::parse(word, g).with_context(|| format!("parsing word `{word}`"))
}

fn names(g: &SimplicialGraph, vs: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    vs.into_iter().map(|v| g.name(v).to_string()).collect()
}

fn emit(format: Format, value: &impl Serialize, table: impl FnOnce() -> String) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string(value)?)),
        Format::Table => Ok(table()),
        Format::Dot => bail!("this command has no DOT output"),
    }
}

fn element_json(e: &Element) -> Value {
    json!({
        "nf": e.to_string(),
        "syllables": e,
        "syllable_length": e.len(),
        "word_length": e.word_length(),
        "support": names(e.graph(), e.support()),
    })
}

fn cmd_classify(ctx: &Ctx, w: &WordArg) -> Result<String> {
    let g = ctx.graph()?;
    let e = parse(&w.word, &g)?;
    let c = classify(&e);
    let named = |vs: &[VertexId]| names(&g, vs.iter().copied());
    let witness = match (&c.elliptic, &c.loxodromic) {
        (Some(EllipticWitness::SmallSupport), _) => json!({ "small_support": true }),
        (Some(EllipticWitness::Join { a, b }), _) => json!({ "join": { "a": named(a), "b": named(b) } }),
        (Some(EllipticWitness::Dominated { w }), _) => json!({ "dominated_by": g.name(*w) }),
        (None, Some(l)) => json!({
            "complement_tree": l.complement_tree.iter().map(|&(x, y)| [g.name(x), g.name(y)]).collect::<Vec<_>>(),
            "undominated": l.undominated.iter().map(|&(x, y)| [g.name(x), g.name(y)]).collect::<Vec<_>>(),
        }),
        (None, None) => Value::Null,
    };
    let v = json!({
        "kind": c.kind,
        "support": named(&c.support),
        "witness": witness,
        "verified": c.verify(&g),
    });
    emit(ctx.format(Format::Json), &v, || {
        let kind = if c.is_loxodromic() { "loxodromic" } else { "elliptic" };
        format!("{e}\t{kind}\tsupport {}\n", names(&g, c.support.iter().copied()).join(" "))
    })
}

fn cmd_nf(ctx: &Ctx, w: &WordArg, power: Option<i64>, by: Option<&str>, times: Option<&str>) -> Result<String> {
    let g = ctx.graph()?;
    let mut e = parse(&w.word, &g)?;
    if let Some(t) = times {
        e = e.checked_mul(&parse(t, &g)?)?;
    }
    if let Some(n) = power {
        e = e.pow(n)?;
    }
    if let Some(h) = by {
        e = e.conjugate(&parse(h, &g)?)?;
    }
    emit(ctx.format(Format::Json), &element_json(&e), || format!("{e}\n"))
}

fn cmd_syllables(ctx: &Ctx, w: &WordArg, cap: usize) -> Result<String> {
    let g = ctx.graph()?;
    let e = parse(&w.word, &g)?;
    let (reduced, conj) = cyclic_syllable_reduce(&e);
    let (st, factors) = star_length(&e)?;
    let decomps = if e.is_identity() {
        None
    } else {
        Some(enumerate_syllable_decompositions(&e, cap)?)
    };
    let seqs: Vec<String> = decomps
        .iter()
        .flat_map(|d| d.seqs.iter().map(|s| format_syllables(s.graph(), s.syllables())))
        .collect();
    let v = json!({
        "element": element_json(&e),
        "decompositions": seqs,
        "decompositions_overflow": decomps.as_ref().is_some_and(|d| d.overflow),
        "cyclic_reduction": { "reduced": reduced.to_string(), "conjugator": conj.to_string(), "syllable_length": reduced.len() },
        "star_length": st,
        "star_factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });
    emit(ctx.format(Format::Json), &v, || {
        let mut out = format!(
            "nf\t{e}\nsyllable_length\t{}\nstar_length\t{st}\ncyclic_reduction\t{reduced}\tby {conj}\n",
            e.len()
        );
        for s in &seqs {
            out.push_str(&format!("decomposition\t{s}\n"));
        }
        out
    })
}

fn ext_vertex(text: &str, g: &Arc<SimplicialGraph>) -> Result<ExtVertex> {
    ExtVertex::parse(text, g).with_context(|| format!("parsing vertex `{text}`"))
}

fn cmd_dist(ctx: &Ctx, from: &str, to: &str, mode: DistanceMode) -> Result<String> {
    let g = ctx.graph()?;
    let (x, y) = (ext_vertex(from, &g)?, ext_vertex(to, &g)?);
    let d = ext_distance(&x, &y, mode, ctx.opts.lambda_cap)?;
    emit(ctx.format(Format::Table), &json!({ "from": x.to_string(), "to": y.to_string(), "distance": d }), || {
        format!("{d}\n")
    })
}

fn cmd_tau(ctx: &Ctx, w: &WordArg) -> Result<String> {
    let g = ctx.graph()?;
    let e = parse(&w.word, &g)?;
    let r = tau(&e, &ctx.opts)?;
    emit(ctx.format(Format::Json), &r, || {
        format!("{}\t{}\t{}\n", r.tau, r.method.as_str(), if r.exact { "exact" } else { "upper bound" })
    })
}

fn cmd_spectrum(ctx: &Ctx, budget: SpectrumBudget, csv: Option<&PathBuf>) -> Result<String> {
    if budget.exponents.contains(&0) {
        bail!("exponents must be nonzero");
    }
    let g = ctx.graph()?;
    let report = spectrum_scan(&g, &budget, &ctx.opts);
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    if !report.failures.is_empty() {
        for (w, err) in &report.failures {
            eprintln!("{w}: {err}");
        }
        bail!("{} elements failed", report.failures.len());
    }
    let values: Vec<Value> = report
        .values()
        .iter()
        .map(|(t, n)| json!({ "tau": t, "count": n }))
        .collect();
    let v = json!({
        "graph": report.graph,
        "budget": report.budget,
        "enumerated": report.enumerated,
        "truncated": report.truncated,
        "classes": report.entries.len(),
        "facts": report.facts,
        "values": values,
    });
    emit(ctx.format(Format::Json), &v, || {
        let f = &report.facts;
        let mut out = format!(
            "classes\t{}\nall_even\t{}\nall_integer\t{}\nmax_denominator\t{}\nexact_entries\t{}\n",
            report.entries.len(),
            f.all_even,
            f.all_integer,
            f.max_denominator,
            f.exact_entries
        );
        for (t, n) in report.values() {
            out.push_str(&format!("value\t{t}\t{n}\n"));
        }
        out
    })
}

fn subgraph_out(ctx: &Ctx, s: &ExtSubgraph) -> Result<String> {
    match ctx.format(Format::Json) {
        Format::Dot => Ok(subgraph_to_dot(s)),
        f => emit(f, &s.to_json(), || {
            format!("vertices\t{}\nedges\t{}\ndistance_exact\t{}\n", s.len(), s.edge_count(), s.distance_exact())
        }),
    }
}

fn cmd_ball(ctx: &Ctx, center: &str, radius: usize, limit: usize) -> Result<String> {
    let g = ctx.graph()?;
    let s = build_ball(&ext_vertex(center, &g)?, radius, limit)?;
    subgraph_out(ctx, &s)
}

fn axial(g: &Arc<SimplicialGraph>, word: &str, m: usize) -> Result<ExtSubgraph> {
    let e = parse(word, g)?;
    Ok(build_axial(&SyllableSeq::from_element(&e), m)?)
}

fn cmd_axial(ctx: &Ctx, w: &WordArg, m: usize) -> Result<String> {
    let g = ctx.graph()?;
    subgraph_out(ctx, &axial(&g, &w.word, m)?)
}

fn cmd_export_dot(ctx: &Ctx, word: Option<&str>, kind: Kind, m: usize, out: Option<&PathBuf>) -> Result<String> {
    let g = ctx.graph()?;
    let text = match word {
        None => graph_to_dot(&g),
        Some(w) => {
            let s = match kind {
                Kind::Chain => build_chain(&SyllableSeq::from_element(&parse(w, &g)?)),
                Kind::Lambda => build_lambda(&parse(w, &g)?, ctx.opts.lambda_cap)?,
                Kind::Axial => axial(&g, w, m)?,
            };
            subgraph_to_dot(&s)
        }
    };
    match out {
        Some(path) => {
            write_dot(&text, path).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_lemma_suite(ctx: &Ctx, words: &[String], lemmas_only: bool) -> Result<String> {
    let instances = match &ctx.graph {
        None => bundled_instances(),
        Some(src) => {
            let g = load_graph(src).with_context(|| format!("loading graph `{src}`"))?;
            let spec = src.parse::<GraphSpec>().ok();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            for w in &refs {
                parse(w, &Arc::new(g.clone()))?;
            }
            vec![Instance::new(src, g, spec, &refs)]
        }
    };
    let params = SuiteParams {
        tau: ctx.opts,
        ..SuiteParams::default()
    };
    let reports: Vec<OracleReport> = instances
        .par_iter()
        .map(|inst| {
            let mut r = run_lemma_suite(inst, &params);
            if !lemmas_only {
                r.extend(run_agreement_suite(inst, &params));
            }
            r
        })
        .collect::<Vec<_>>()
        .concat();
    let failed = reports.iter().filter(|r| !r.pass).count();
    let out = emit(ctx.format(Format::Table), &reports, || {
        let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
        out.push_str(&format!("{} checks, {failed} failed\n", reports.len()));
        out
    })?;
    if failed > 0 {
        print!("{out}");
        bail!("{failed} checks failed");
    }
    Ok(out)
}

fn cmd_reproduce(ctx: &Ctx) -> Result<(String, bool)> {
    let rows = reproduce(&ctx.opts);
    let ok = rows.iter().all(|r| r.matched);
    let out = emit(ctx.format(Format::Table), &rows, || {
        let mut out = String::from("id\tinstance\texpected\tcomputed\tmatch\tnote\n");
        for r in &rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.id, r.instance, r.expected, r.computed, r.matched, r.note
            ));
        }
        out
    })?;
    Ok((out, ok))
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let ctx = Ctx {
        graph: cli.graph,
        format: cli.format,
        opts: TauOptions {
            lambda_cap: cli.lambda_cap,
            ..TauOptions::default()
        },
    };
    let out = match &cli.command {
        Command::Classify(w) => cmd_classify(&ctx, w)?,
        Command::Nf {
            word,
            power,
            conjugate_by,
            times,
        } => cmd_nf(&ctx, word, *power, conjugate_by.as_deref(), times.as_deref())?,
        Command::Syllables { word, cap } => cmd_syllables(&ctx, word, *cap)?,
        Command::Dist { from, to, mode } => cmd_dist(&ctx, from, to, *mode)?,
        Command::Tau(w) => cmd_tau(&ctx, w)?,
        Command::Spectrum {
            max_syllables,
            exponents,
            distinct,
            max_elements,
            csv,
        } => {
            let budget = SpectrumBudget {
                max_syllables: *max_syllables,
                exponents: exponents.clone(),
                distinct_vertices: *distinct,
                max_elements: *max_elements,
            };
            cmd_spectrum(&ctx, budget, csv.as_ref())?
        }
        Command::Ball { center, radius, limit } => cmd_ball(&ctx, center, *radius, *limit)?,
        Command::Axial { word, m } => cmd_axial(&ctx, word, *m)?,
        Command::ExportDot { word, kind, m, out } => cmd_export_dot(&ctx, word.as_deref(), *kind, *m, out.as_ref())?,
        Command::LemmaSuite { word, lemmas_only } => cmd_lemma_suite(&ctx, word, *lemmas_only)?,
        Command::Reproduce => {
            let (out, ok) = cmd_reproduce(&ctx)?;
            print!("{out}");
            if !ok {
                eprintln!("reproduce: mismatch");
                return Ok(ExitCode::from(3));
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<Usage>().is_some() { 2 } else { 1 })
        }
    }
}
