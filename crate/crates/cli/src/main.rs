//! Command-line front end: classification, embeddings, deformation
//! closure, lattice queries, Picard arithmetic on F2, table verification
//! and DOT export.
//!
//! Exit status: 0 on success, 1 when `verify` has a failing check, 2 on a
//! usage error, 3 on a data error (unparsable input, size limits, invalid
//! arguments).

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cubic_sing::catalog;
use cubic_sing::deformation::{closure, maximal_elements, DeformationPoset};
use cubic_sing::graph::parse_edge_list;
use cubic_sing::lattice::{
    complement_generator_obstruction, o16_lattice, parse_lattice_expr, parse_lattice_text,
    rank_signature_obstruction, IntLattice,
};
use cubic_sing::picard::{enumerate_splittings, parse_divisor_class, solve_genus, SplittingEntry};
use cubic_sing::singularity::parse_config_list;
use cubic_sing::verify::{self, Report};
use cubic_sing::{parse_config, Configuration, DivisorClass, Error, SimpleGraph};

const SCHEMA: &str = "v1";

#[derive(Parser)]
#[command(name = "cubic-sing", version, about = "Singularity configurations on cubic threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph, or the subgraph induced on some of its labels, as
    /// an ADE configuration.
    Classify {
        /// Edge-list file or builtin:gamma, builtin:delta, builtin:e6tilde.
        #[arg(long)]
        graph: String,
        /// Comma-separated vertex labels to keep.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<u32>>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Decide whether the diagram of a configuration is an induced
    /// subgraph of a host.
    Embed {
        #[arg(long)]
        pattern: String,
        /// A configuration or a builtin/edge-list graph.
        #[arg(long)]
        host: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Downward closure of seed configurations under deformation.
    Closure {
        /// Comma-separated configurations.
        #[arg(long)]
        seeds: String,
        /// Print only the maximal elements.
        #[arg(long)]
        maximal_only: bool,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// All ADE configurations whose diagrams are induced subgraphs of a
    /// graph.
    Enumerate {
        #[arg(long)]
        host: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Lattice invariants and embedding obstructions.
    Lattice {
        #[arg(value_enum)]
        query: LatticeQuery,
        /// Lattice expression such as T, 3D4+2U, A12, 15A1.
        #[arg(long = "type", required_unless_present = "file", conflicts_with = "file")]
        ty: Option<String>,
        /// Lattice text file (header "rank n", then rows).
        #[arg(long)]
        file: Option<String>,
        /// Host lattice expression for obstructions.
        #[arg(long, default_value = "T")]
        host: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Divisor class arithmetic on F2.
    Picard {
        #[arg(value_enum)]
        query: PicardQuery,
        /// Class as a,b or a*s+b*f.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        class2: Option<String>,
        /// Number of parts for split.
        #[arg(long, default_value_t = 2)]
        parts: usize,
        /// Fibre coefficient b for solve-genus.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        /// Target genus for solve-genus.
        #[arg(long, allow_hyphen_values = true)]
        genus: Option<i64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Run the table and theorem checks.
    Verify {
        /// Run a single check.
        #[arg(long)]
        only: Option<String>,
        /// Record wall time per check.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Graphviz export of a graph or of a deformation poset.
    ExportDot {
        #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
        graph: Option<String>,
        /// Comma-separated configurations.
        #[arg(long)]
        poset: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeQuery {
    Signature,
    Discriminant,
    Obstruction,
}

#[derive(Clone, Copy, ValueEnum)]
enum PicardQuery {
    Intersect,
    Genus,
    Split,
    SolveGenus,
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        let mut json = json;
        if let Value::Object(map) = &mut json {
            map.insert("schema".into(), SCHEMA.into());
        }
        Output {
            text: text.into(),
            json,
        }
    }

    fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
        }
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load_graph(spec: &str) -> Result<SimpleGraph, Error> {
    match spec {
        "builtin:gamma" => Ok(catalog::gamma()),
        "builtin:delta" => Ok(catalog::delta()),
        "builtin:e6tilde" => Ok(catalog::e6_tilde()),
        s if s.starts_with("builtin:") => Err(Error::InvalidArgument(format!(
            "unknown builtin graph '{s}'; known: builtin:gamma, builtin:delta, builtin:e6tilde"
        ))),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
            parse_edge_list(&text)
        }
    }
}

fn config_lines(set: impl IntoIterator<Item = Configuration>) -> (String, Vec<String>) {
    let items: Vec<String> = set.into_iter().map(|c| c.to_string()).collect();
    (items.join("\n"), items)
}

fn classify(graph: &str, subset: Option<&[u32]>) -> Result<Output, Error> {
    let mut g = load_graph(graph)?;
    if let Some(labels) = subset {
        let mask = g.mask_of_labels(labels)?;
        g = g.induced_by_mask(mask);
    }
    let c = g.classify_ade();
    let text = c.as_ref().map_or("not ADE".to_string(), |c| c.to_string());
    Ok(Output::new(
        text,
        json!({ "vertices": g.n(), "configuration": c.map(|c| c.to_string()) }),
    ))
}

fn embed(pattern: &str, host: &str) -> Result<Output, Error> {
    let p = parse_config(pattern)?.diagram()?;
    let h = if host.starts_with("builtin:") || host.contains('/') || host.ends_with(".txt") {
        load_graph(host)?
    } else {
        parse_config(host)?.diagram()?
    };
    let map = h.find_induced_embedding(&p);
    let labels = map
        .as_ref()
        .map(|m| m.iter().map(|&v| h.label(v)).collect::<Vec<u32>>());
    Ok(Output::new(
        map.is_some().to_string(),
        json!({ "embeddable": map.is_some(), "host_labels": labels }),
    ))
}

fn closure_cmd(seeds: &str, maximal_only: bool) -> Result<Output, Error> {
    let seeds = parse_config_list(seeds)?;
    let set = closure(&seeds)?;
    let set = if maximal_only {
        maximal_elements(&set.into_iter().collect::<Vec<_>>())?
    } else {
        set
    };
    let count = set.len();
    let (text, items) = config_lines(set);
    Ok(Output::new(text, json!({ "count": count, "configurations": items })))
}

fn enumerate(host: &str) -> Result<Output, Error> {
    let set = load_graph(host)?.enumerate_induced_ade()?;
    let count = set.len();
    let (text, items) = config_lines(set);
    Ok(Output::new(
        text,
        json!({ "host": host, "count": count, "configurations": items }),
    ))
}

fn lattice(q: LatticeQuery, ty: Option<&str>, file: Option<&str>, host: &str) -> Result<Output, Error> {
    let l: IntLattice = match (ty, file) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
            parse_lattice_text(&text)?
        }
        (Some(t), None) => parse_lattice_expr(t)?,
        (None, None) => return Err(Error::InvalidArgument("--type or --file is required".into())),
    };
    Ok(match q {
        LatticeQuery::Signature => {
            let (p, n) = l.signature();
            Output::new(
                format!("({p},{n})"),
                json!({ "rank": l.rank(), "n_plus": p, "n_minus": n, "det": l.det().to_string() }),
            )
        }
        LatticeQuery::Discriminant => {
            let g = l.discriminant_group()?;
            let text = if g.is_trivial() { "trivial".to_string() } else { g.to_string() };
            Output::new(
                text,
                json!({ "invariant_factors": g.invariant_factors, "order": g.order().to_string() }),
            )
        }
        LatticeQuery::Obstruction => {
            let h = if host == "T" { o16_lattice() } else { parse_lattice_expr(host)? };
            let reports = [
                rank_signature_obstruction(&l, &h)?,
                complement_generator_obstruction(&l, &h)?,
            ];
            let text = reports
                .iter()
                .map(|r| format!("{} {}", r.obstruction, if r.fires { "fires" } else { "silent" }))
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(text, json!({ "host": host, "obstructions": to_value(&reports) }))
        }
    })
}

fn class_arg(s: Option<&str>, flag: &str) -> Result<DivisorClass, Error> {
    let s = s.ok_or_else(|| Error::InvalidArgument(format!("{flag} is required")))?;
    parse_divisor_class(s)
}

fn picard(
    q: PicardQuery,
    class: Option<&str>,
    class2: Option<&str>,
    parts: usize,
    b: Option<i64>,
    genus: Option<i64>,
) -> Result<Output, Error> {
    Ok(match q {
        PicardQuery::Intersect => {
            let (x, y) = (class_arg(class, "--class")?, class_arg(class2, "--class2")?);
            let v = x.intersect(y);
            Output::new(v.to_string(), json!({ "class": x, "class2": y, "intersection": v }))
        }
        PicardQuery::Genus => {
            let x = class_arg(class, "--class")?;
            let g = x.genus();
            Output::new(g.to_string(), json!({ "class": x, "genus": g.to_string() }))
        }
        PicardQuery::Split => {
            let x = class_arg(class, "--class")?;
            let entries: Vec<SplittingEntry> =
                enumerate_splittings(x, parts)?.into_iter().map(SplittingEntry::new).collect();
            let text = entries
                .iter()
                .map(|e| {
                    e.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(
                text,
                json!({ "class": x, "parts": parts, "splittings": to_value(&entries) }),
            )
        }
        PicardQuery::SolveGenus => {
            let (b, g) = match (b, genus, class) {
                (Some(b), Some(g), _) => (b, g),
                (None, Some(g), Some(_)) => (class_arg(class, "--class")?.b, g),
                _ => {
                    return Err(Error::InvalidArgument(
                        "solve-genus needs --genus and either --b or --class".into(),
                    ))
                }
            };
            let roots: Vec<i64> = solve_genus(b, g).into_iter().collect();
            let text = roots.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            Output::new(text, json!({ "b": b, "genus": g, "a": roots }))
        }
    })
}

fn export_dot(graph: Option<&str>, poset: Option<&str>) -> Result<String, Error> {
    match (graph, poset) {
        (Some(g), _) => {
            let name = g.strip_prefix("builtin:").unwrap_or("g");
            let name: String = name.chars().filter(char::is_ascii_alphanumeric).collect();
            Ok(load_graph(g)?.to_dot(if name.is_empty() { "g" } else { &name }))
        }
        (None, Some(p)) => Ok(DeformationPoset::new(&parse_config_list(p)?)?.to_dot()),
        (None, None) => Err(Error::InvalidArgument("--graph or --poset is required".into())),
    }
}

fn verify_cmd(only: Option<&str>, timings: bool, fmt: Format) -> Result<(String, bool), Error> {
    let report = match only {
        Some(id) => Report::from_checks(vec![verify::run_check(id, timings)?]),
        None => verify::run_all(timings),
    };
    let out = match fmt {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    Ok((out, report.passed))
}

fn run(cli: Cli) -> Result<(String, ExitCode), Error> {
    let ok = |o: Output, f: FormatArg| Ok((o.render(f.format), ExitCode::SUCCESS));
    match cli.command {
        Command::Classify { graph, subset, fmt } => ok(classify(&graph, subset.as_deref())?, fmt),
        Command::Embed { pattern, host, fmt } => ok(embed(&pattern, &host)?, fmt),
        Command::Closure {
            seeds,
            maximal_only,
            fmt,
        } => ok(closure_cmd(&seeds, maximal_only)?, fmt),
        Command::Enumerate { host, fmt } => ok(enumerate(&host)?, fmt),
        Command::Lattice {
            query,
            ty,
            file,
            host,
            fmt,
        } => ok(lattice(query, ty.as_deref(), file.as_deref(), &host)?, fmt),
        Command::Picard {
            query,
            class,
            class2,
            parts,
            b,
            genus,
            fmt,
        } => ok(
            picard(query, class.as_deref(), class2.as_deref(), parts, b, genus)?,
            fmt,
        ),
        Command::Verify { only, timings, fmt } => {
            let (out, passed) = verify_cmd(only.as_deref(), timings, fmt.format)?;
            Ok((out, if passed { ExitCode::SUCCESS } else { ExitCode::from(1) }))
        }
        Command::ExportDot { graph, poset } => {
            Ok((export_dot(graph.as_deref(), poset.as_deref())?, ExitCode::SUCCESS))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
