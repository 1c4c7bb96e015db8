//! Embedded classification data: the carrier graphs, the 204-row golden
//! table, maximal configurations, vertex deletions, unimodal adjacencies and
//! the 1-symmetric threefold tables.
//!
//! Every table ships as a text file under `data/` and is parsed once on
//! first use. Loaders validate all type invariants and report a
//! [`Error::DataIntegrity`] naming the file and line on failure.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::graph::{parse_edge_list, SimpleGraph};
use crate::singularity::{parse_config, Configuration, SingularityType};

const GOLDEN: &str = include_str!("../data/golden_204.txt");
const GOLDEN_ERRATA: &str = include_str!("../data/golden_errata.txt");
const GAMMA: &str = include_str!("../data/gamma.txt");
const TABLE5: &str = include_str!("../data/table5.txt");
const TABLE8: &str = include_str!("../data/table8_edges.txt");
const MAXIMAL_ADE: &str = include_str!("../data/maximal_ade.txt");
const MAXIMAL_AN: &str = include_str!("../data/maximal_an.txt");
const DPW_SEMISIMPLE: &str = include_str!("../data/dpw_semisimple.txt");
const DPW_ERRATA: &str = include_str!("../data/dpw_errata.txt");
const DPW_UNIPOTENT: &str = include_str!("../data/dpw_unipotent.txt");

/// Cubic-surface projection data (documentation only).
pub const TABLE1_SURFACES: &str = include_str!("../data/table1_surfaces.txt");
/// Corank 3 singularities and their plane cubics (documentation only).
pub const TABLE3_CORANK3: &str = include_str!("../data/table3_corank3.txt");
/// Corank 2 singularities with nonvanishing third jet (documentation only).
pub const TABLE4_CORANK2: &str = include_str!("../data/table4_corank2.txt");

/// Number of rows in the golden table.
pub const GOLDEN_ROW_COUNT: u32 = 204;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn integrity(file: &str, line: usize, err: impl fmt::Display) -> Error {
    Error::DataIntegrity(format!("{file}:{line}: {err}"))
}

fn cached<T: Send + Sync>(
    cell: &'static OnceLock<Result<T>>,
    load: impl FnOnce() -> Result<T>,
) -> Result<&'static T> {
    cell.get_or_init(load).as_ref().map_err(Clone::clone)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Table {
    /// Rows 1-18: a corank >= 3 singularity.
    A,
    /// Rows 19-95: a corank 2 singularity with nonvanishing third jet.
    B,
    /// Rows 96-204: only A_n singularities.
    C,
}

impl Table {
    pub fn of_index(index: u32) -> Option<Table> {
        match index {
            1..=18 => Some(Table::A),
            19..=95 => Some(Table::B),
            96..=GOLDEN_ROW_COUNT => Some(Table::C),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub index: u32,
    pub mu: u64,
    pub k: usize,
    pub config: Configuration,
    pub table: Table,
}

impl fmt::Display for GoldenRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};{}", self.index, self.mu, self.k, self.config)
    }
}

impl FromStr for GoldenRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_golden_line(s)
    }
}

fn field_number<T: FromStr>(field: &str, pos: usize, what: &str) -> Result<T, ParseError> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) || field.len() > 9 {
        return Err(ParseError::syntax(pos, format!("expected {what}, found '{field}'")));
    }
    field
        .parse()
        .map_err(|_| ParseError::syntax(pos, format!("expected {what}, found '{field}'")))
}

/// Parses one golden row `T;mu;k;config`. The mu and k columns are read as
/// given; comparing them with the configuration is a verification check.
pub fn parse_golden_line(line: &str) -> Result<GoldenRow> {
    let fields: Vec<&str> = line.trim().split(';').collect();
    let [t, mu, k, config] = fields.as_slice() else {
        return Err(ParseError::syntax(0, "expected four ';'-separated fields").into());
    };
    let index: u32 = field_number(t, 0, "a row index")?;
    let table = Table::of_index(index).ok_or_else(|| {
        ParseError::semantic(format!("row index {index} outside 1..={GOLDEN_ROW_COUNT}"))
    })?;
    let mu_pos = t.len() + 1;
    let mu: u64 = field_number(mu, mu_pos, "mu")?;
    let k: usize = field_number(k, mu_pos + fields[1].len() + 1, "k")?;
    Ok(GoldenRow {
        index,
        mu,
        k,
        config: parse_config(config)?,
        table,
    })
}

fn load_golden() -> Result<Vec<GoldenRow>> {
    let mut rows = Vec::with_capacity(GOLDEN_ROW_COUNT as usize);
    for (line, text) in data_lines(GOLDEN) {
        let row = parse_golden_line(text).map_err(|e| integrity("golden_204.txt", line, e))?;
        let expected = rows.len() as u32 + 1;
        if row.index != expected {
            return Err(integrity(
                "golden_204.txt",
                line,
                format!("row index {} where {expected} was expected", row.index),
            ));
        }
        rows.push(row);
    }
    if rows.len() != GOLDEN_ROW_COUNT as usize {
        return Err(Error::DataIntegrity(format!(
            "golden_204.txt: {} rows, expected {GOLDEN_ROW_COUNT}",
            rows.len()
        )));
    }
    Ok(rows)
}

/// The 204 golden rows, in index order.
pub fn golden_rows() -> Result<&'static [GoldenRow]> {
    static CELL: OnceLock<Result<Vec<GoldenRow>>> = OnceLock::new();
    cached(&CELL, load_golden).map(Vec::as_slice)
}

/// Golden rows whose parts are all ADE.
pub fn golden_ade_configs() -> Result<Vec<Configuration>> {
    Ok(golden_rows()?
        .iter()
        .filter(|r| r.config.is_ade())
        .map(|r| r.config.clone())
        .collect())
}

/// Configurations of one golden table.
pub fn golden_table(table: Table) -> Result<Vec<Configuration>> {
    Ok(golden_rows()?
        .iter()
        .filter(|r| r.table == table)
        .map(|r| r.config.clone())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Column {
    Mu,
    K,
}

/// A printed golden-table entry that disagrees with its configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub index: u32,
    pub column: Column,
    pub printed: u64,
    pub corrected: u64,
}

fn load_golden_errata() -> Result<Vec<Erratum>> {
    let mut out = Vec::new();
    for (line, text) in data_lines(GOLDEN_ERRATA) {
        let bad = |msg: &str| integrity("golden_errata.txt", line, msg);
        let f: Vec<&str> = text.split(';').collect();
        let [index, column, printed, corrected] = f.as_slice() else {
            return Err(bad("expected four fields"));
        };
        let column = match *column {
            "mu" => Column::Mu,
            "k" => Column::K,
            _ => return Err(bad("column must be mu or k")),
        };
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad("expected a number"));
        out.push(Erratum {
            index: num(index)? as u32,
            column,
            printed: num(printed)?,
            corrected: num(corrected)?,
        });
    }
    Ok(out)
}

/// Printed golden entries that were corrected in the embedded data.
pub fn golden_errata() -> Result<&'static [Erratum]> {
    static CELL: OnceLock<Result<Vec<Erratum>>> = OnceLock::new();
    cached(&CELL, load_golden_errata).map(Vec::as_slice)
}

/// The golden rows with the printed (uncorrected) mu and k values.
pub fn printed_golden_rows() -> Result<Vec<GoldenRow>> {
    let mut rows = golden_rows()?.to_vec();
    for e in golden_errata()? {
        let row = rows
            .iter_mut()
            .find(|r| r.index == e.index)
            .ok_or_else(|| Error::DataIntegrity(format!("erratum for missing row {}", e.index)))?;
        match e.column {
            Column::Mu => row.mu = e.printed,
            Column::K => row.k = e.printed as usize,
        }
    }
    Ok(rows)
}

fn load_config_list(file: &str, text: &str) -> Result<Vec<Configuration>> {
    data_lines(text)
        .map(|(line, t)| parse_config(t).map_err(|e| integrity(file, line, e)))
        .collect()
}

/// The twelve maximal ADE configurations.
pub fn maximal_ade() -> Result<&'static [Configuration]> {
    static CELL: OnceLock<Result<Vec<Configuration>>> = OnceLock::new();
    cached(&CELL, || load_config_list("maximal_ade.txt", MAXIMAL_ADE)).map(Vec::as_slice)
}

/// The eight maximal configurations of A_n singularities.
pub fn maximal_an() -> Result<&'static [Configuration]> {
    static CELL: OnceLock<Result<Vec<Configuration>>> = OnceLock::new();
    cached(&CELL, || load_config_list("maximal_an.txt", MAXIMAL_AN)).map(Vec::as_slice)
}

/// The ADE configurations realized by neither the carrier graph nor its
/// subgraphs, yet occurring on cubic threefolds.
pub fn extra_ade() -> [Configuration; 2] {
    ["10A1", "5A2"].map(|s| s.parse().expect("valid literal"))
}

fn load_gamma() -> Result<SimpleGraph> {
    let g = parse_edge_list(GAMMA).map_err(|e| integrity("gamma.txt", 0, e))?;
    let mut labelled = SimpleGraph::with_labels((1..=g.n() as u32).collect())?;
    for (u, v) in g.edges() {
        labelled.add_edge(u, v)?;
    }
    Ok(labelled)
}

/// The carrier graph: K_{3,3} on {1,3,5} x {2,4,6} with every edge
/// subdivided (vertices 7..15), labelled 1..15.
pub fn gamma() -> SimpleGraph {
    static CELL: OnceLock<Result<SimpleGraph>> = OnceLock::new();
    cached(&CELL, load_gamma)
        .expect("embedded gamma.txt is valid")
        .clone()
}

/// The carrier graph with vertices 1 and 3 removed: three D4 stars around
/// the centre 5, joined to it through their free ends.
pub fn delta() -> SimpleGraph {
    gamma()
        .without_labels(&[1, 3])
        .expect("labels 1 and 3 exist")
}

/// Label of the central vertex of [`delta`].
pub const DELTA_CENTER: u32 = 5;

/// Affine E6: centre 0 with arms 1-2, 3-4, 5-6.
pub fn e6_tilde() -> SimpleGraph {
    SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        .expect("static edge list")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table5Row {
    pub config: Configuration,
    /// Labels of carrier-graph vertices to delete.
    pub remove: Vec<u32>,
}

fn load_table5() -> Result<Vec<Table5Row>> {
    let mut out = Vec::new();
    for (line, text) in data_lines(TABLE5) {
        let bad = |e: &dyn fmt::Display| integrity("table5.txt", line, e);
        let (config, verts) = text.split_once(';').ok_or_else(|| bad(&"missing ';'"))?;
        let config = parse_config(config).map_err(|e| bad(&e))?;
        let remove = verts
            .split(',')
            .map(|v| v.trim().parse::<u32>().map_err(|e| bad(&e)))
            .collect::<Result<Vec<_>>>()?;
        out.push(Table5Row { config, remove });
    }
    Ok(out)
}

/// Vertex deletions from the carrier graph realizing the maximal ADE
/// configurations other than 5A2 and 10A1.
pub fn table5() -> Result<&'static [Table5Row]> {
    static CELL: OnceLock<Result<Vec<Table5Row>>> = OnceLock::new();
    cached(&CELL, load_table5).map(Vec::as_slice)
}

/// One drawn arrow `from -> to` of the unimodal adjacency diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AdjacencyEdge {
    pub from: SingularityType,
    pub to: SingularityType,
}

fn load_table8() -> Result<Vec<AdjacencyEdge>> {
    let mut out = Vec::new();
    for (line, text) in data_lines(TABLE8) {
        let bad = |e: &dyn fmt::Display| integrity("table8_edges.txt", line, e);
        let (a, b) = text.split_once(';').ok_or_else(|| bad(&"missing ';'"))?;
        let from: SingularityType = a.parse().map_err(|e| bad(&e))?;
        let to: SingularityType = b.parse().map_err(|e| bad(&e))?;
        if from == to {
            return Err(bad(&"self-adjacency"));
        }
        out.push(AdjacencyEdge { from, to });
    }
    Ok(out)
}

pub fn unimodal_adjacency() -> Result<&'static [AdjacencyEdge]> {
    static CELL: OnceLock<Result<Vec<AdjacencyEdge>>> = OnceLock::new();
    cached(&CELL, load_table8).map(Vec::as_slice)
}

/// A row of the semisimple 1-symmetric table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpwRow {
    pub mu: u64,
    /// Rows where further singularities may appear.
    pub starred: bool,
    pub weights: [i64; 5],
    /// The weight vector exactly as printed.
    pub weights_text: String,
    pub config: Configuration,
    /// Possible additional singularities on starred rows.
    pub extras: Vec<Configuration>,
}

fn parse_weights(text: &str) -> Result<[i64; 5], ParseError> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::syntax(0, "weights must be bracketed"))?;
    let v = inner
        .split(',')
        .map(|w| {
            w.trim()
                .parse::<i64>()
                .map_err(|_| ParseError::syntax(0, format!("bad weight '{w}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into()
        .map_err(|_| ParseError::semantic("expected five weights"))
}

fn load_dpw_semisimple() -> Result<Vec<DpwRow>> {
    let mut out = Vec::new();
    for (line, text) in data_lines(DPW_SEMISIMPLE) {
        let bad = |e: &dyn fmt::Display| integrity("dpw_semisimple.txt", line, e);
        let f: Vec<&str> = text.split(';').collect();
        let [mu, weights, config, extras] = f.as_slice() else {
            return Err(bad(&"expected four fields"));
        };
        let (mu, starred) = match mu.strip_suffix('*') {
            Some(m) => (m, true),
            None => (*mu, false),
        };
        let extras = if extras.is_empty() {
            Vec::new()
        } else {
            crate::singularity::parse_config_list(extras).map_err(|e| bad(&e))?
        };
        out.push(DpwRow {
            mu: mu.parse().map_err(|e| bad(&e))?,
            starred,
            weights: parse_weights(weights).map_err(|e| bad(&e))?,
            weights_text: weights.to_string(),
            config: parse_config(config).map_err(|e| bad(&e))?,
            extras,
        });
    }
    Ok(out)
}

pub fn dpw_semisimple() -> Result<&'static [DpwRow]> {
    static CELL: OnceLock<Result<Vec<DpwRow>>> = OnceLock::new();
    cached(&CELL, load_dpw_semisimple).map(Vec::as_slice)
}

pub fn dpw_unipotent() -> Result<&'static [Configuration]> {
    static CELL: OnceLock<Result<Vec<Configuration>>> = OnceLock::new();
    cached(&CELL, || load_config_list("dpw_unipotent.txt", DPW_UNIPOTENT)).map(Vec::as_slice)
}

/// A corrected configuration entry of the semisimple table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpwErratum {
    pub weights_text: String,
    pub printed: Configuration,
    pub corrected: Configuration,
}

fn load_dpw_errata() -> Result<Vec<DpwErratum>> {
    let mut out = Vec::new();
    for (line, text) in data_lines(DPW_ERRATA) {
        let bad = |e: &dyn fmt::Display| integrity("dpw_errata.txt", line, e);
        let f: Vec<&str> = text.split(';').collect();
        let [weights, "config", printed, corrected] = f.as_slice() else {
            return Err(bad(&"expected weights;config;printed;corrected"));
        };
        out.push(DpwErratum {
            weights_text: weights.to_string(),
            printed: parse_config(printed).map_err(|e| bad(&e))?,
            corrected: parse_config(corrected).map_err(|e| bad(&e))?,
        });
    }
    Ok(out)
}

pub fn dpw_errata() -> Result<&'static [DpwErratum]> {
    static CELL: OnceLock<Result<Vec<DpwErratum>>> = OnceLock::new();
    cached(&CELL, load_dpw_errata).map(Vec::as_slice)
}

/// The semisimple table with the printed configurations restored.
pub fn printed_dpw_semisimple() -> Result<Vec<DpwRow>> {
    let mut rows = dpw_semisimple()?.to_vec();
    for e in dpw_errata()? {
        let row = rows
            .iter_mut()
            .find(|r| r.weights_text == e.weights_text)
            .ok_or_else(|| Error::DataIntegrity(format!("erratum for missing row {}", e.weights_text)))?;
        row.config = e.printed.clone();
    }
    Ok(rows)
}
