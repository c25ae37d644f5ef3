//! Delimited text input (incidence, labels, signals) and report output.
//!
//! Every input file carries a header row; the delimiter is a comma unless the
//! header line contains a tab. Columns are located by name.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CspError, Result};
use crate::eval::MetricReport;
use crate::hypergraph::{Hypergraph, HypergraphBuilder, IdMaps};
use crate::labels::Labels;
use crate::signal::SignalMatrix;

pub const NODE_COLUMN: &str = "nodeId";
pub const EDGE_COLUMN: &str = "edgeId";
pub const LABEL_COLUMN: &str = "label";

fn sniff_delimiter(path: &Path) -> Result<u8> {
    let mut first = String::new();
    BufReader::new(File::open(path)?).read_line(&mut first)?;
    Ok(if first.contains('\t') { b'\t' } else { b',' })
}

struct Table {
    path: PathBuf,
    reader: csv::Reader<File>,
    headers: Vec<String>,
}

impl Table {
    fn open(path: &Path) -> Result<Self> {
        let delimiter = sniff_delimiter(path)?;
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .has_headers(true)
            .trim(csv::Trim::All)
            .flexible(false)
            .from_path(path)
            .map_err(|e| csv_error(path, e))?;
        let headers = reader
            .headers()
            .map_err(|e| csv_error(path, e))?
            .iter()
            .map(|h| h.trim_start_matches('\u{feff}').to_owned())
            .collect();
        Ok(Self { path: path.to_owned(), reader, headers })
    }

    fn column(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CspError::MissingColumn { path: self.path.clone(), column: name.to_owned() })
    }

    /// Visit each data record with its 1-based line number.
    fn for_each(&mut self, mut f: impl FnMut(u64, &csv::StringRecord) -> Result<()>) -> Result<()> {
        let mut record = csv::StringRecord::new();
        loop {
            match self.reader.read_record(&mut record) {
                Ok(true) => {
                    let line = record.position().map_or(0, |p| p.line());
                    f(line, &record)?;
                }
                Ok(false) => return Ok(()),
                Err(e) => return Err(csv_error(&self.path, e)),
            }
        }
    }
}

fn csv_error(path: &Path, e: csv::Error) -> CspError {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CspError::Io(io),
        kind => CspError::Parse { path: path.to_owned(), line, message: format!("{kind:?}") },
    }
}

fn field<'r>(path: &Path, line: u64, record: &'r csv::StringRecord, col: usize) -> Result<&'r str> {
    match record.get(col) {
        Some(v) if !v.is_empty() => Ok(v),
        _ => Err(CspError::Parse { path: path.to_owned(), line, message: format!("empty field in column {col}") }),
    }
}

/// Node identifiers from the `nodeId` column of any headered file, in order.
pub fn read_node_ids(path: &Path) -> Result<Vec<String>> {
    let mut table = Table::open(path)?;
    let col = table.column(NODE_COLUMN)?;
    let p = table.path.clone();
    let mut ids = Vec::new();
    table.for_each(|line, rec| {
        ids.push(field(&p, line, rec, col)?.to_owned());
        Ok(())
    })?;
    Ok(ids)
}

/// Load an incidence file with `nodeId` and `edgeId` columns.
///
/// Nodes listed in `node_universe` (any headered file with a `nodeId`
/// column) but absent from the incidence file become isolated nodes, indexed
/// after all incidence nodes.
pub fn load_incidence(path: &Path, node_universe: Option<&Path>) -> Result<(Hypergraph, IdMaps)> {
    let mut table = Table::open(path)?;
    let node_col = table.column(NODE_COLUMN)?;
    let edge_col = table.column(EDGE_COLUMN)?;
    let p = table.path.clone();
    let mut builder = HypergraphBuilder::new();
    table.for_each(|line, rec| {
        let node = field(&p, line, rec, node_col)?;
        let edge = field(&p, line, rec, edge_col)?;
        builder.add_pair(node, edge);
        Ok(())
    })?;
    if let Some(universe) = node_universe {
        for id in read_node_ids(universe)? {
            builder.add_node(&id);
        }
    }
    builder.build()
}

/// Load `nodeId,label` rows aligned to `ids`. A node may appear on several
/// rows, which makes it multi-label.
///
/// Integer class names are ordered numerically, anything else by first
/// appearance.
pub fn load_labels(path: &Path, ids: &IdMaps) -> Result<Labels> {
    let mut table = Table::open(path)?;
    let node_col = table.column(NODE_COLUMN)?;
    let label_col = table.column(LABEL_COLUMN)?;
    let p = table.path.clone();

    let mut raw: Vec<(usize, String)> = Vec::new();
    let mut class_order: Vec<String> = Vec::new();
    let mut seen: HashMap<String, ()> = HashMap::new();
    table.for_each(|line, rec| {
        let node = field(&p, line, rec, node_col)?;
        let label = field(&p, line, rec, label_col)?;
        let ix = ids.nodes.get(node).ok_or_else(|| CspError::UnknownNode(node.to_owned()))?;
        if seen.insert(label.to_owned(), ()).is_none() {
            class_order.push(label.to_owned());
        }
        raw.push((ix, label.to_owned()));
        Ok(())
    })?;

    let numeric: Option<Vec<i64>> = class_order.iter().map(|c| c.parse::<i64>().ok()).collect();
    if let Some(mut nums) = numeric.map(|n| n.into_iter().zip(class_order.clone()).collect::<Vec<_>>()) {
        nums.sort_by_key(|(n, _)| *n);
        class_order = nums.into_iter().map(|(_, name)| name).collect();
    }
    let class_ix: HashMap<&str, u32> =
        class_order.iter().enumerate().map(|(i, c)| (c.as_str(), i as u32)).collect();

    let mut node_classes = vec![Vec::new(); ids.nodes.len()];
    for (node, label) in &raw {
        node_classes[*node].push(class_ix[label.as_str()]);
    }
    if let Some(i) = node_classes.iter().position(|c| c.is_empty()) {
        return Err(CspError::UnlabeledNode(ids.nodes.id(i).to_owned()));
    }
    Labels::new(class_order, node_classes)
}

/// Read a `nodeId,<col>...` signal file. Nodes that are not listed get 0.
pub fn load_signal(path: &Path, ids: &IdMaps) -> Result<SignalMatrix> {
    let mut table = Table::open(path)?;
    let node_col = table.column(NODE_COLUMN)?;
    let value_cols: Vec<usize> = (0..table.headers.len()).filter(|&c| c != node_col).collect();
    if value_cols.is_empty() {
        return Err(CspError::MissingColumn { path: table.path.clone(), column: "<value>".into() });
    }
    let n = ids.nodes.len();
    let mut x = SignalMatrix::zeros(n, value_cols.len());
    let p = table.path.clone();
    table.for_each(|line, rec| {
        let node = field(&p, line, rec, node_col)?;
        let ix = ids.nodes.get(node).ok_or_else(|| CspError::UnknownNode(node.to_owned()))?;
        for (out_col, &c) in value_cols.iter().enumerate() {
            let raw = field(&p, line, rec, c)?;
            let v: f64 = raw.parse().map_err(|_| CspError::Parse {
                path: p.clone(),
                line,
                message: format!("cannot parse {raw:?} as a number"),
            })?;
            if !v.is_finite() {
                return Err(CspError::Parse { path: p.clone(), line, message: format!("non-finite value {raw:?}") });
            }
            x.set(ix, out_col, v);
        }
        Ok(())
    })?;
    Ok(x)
}

/// Column headers of a signal file, excluding `nodeId`.
pub fn signal_columns(path: &Path) -> Result<Vec<String>> {
    let table = Table::open(path)?;
    Ok(table.headers.iter().filter(|h| *h != NODE_COLUMN).cloned().collect())
}

/// Write `nodeId,<columns>` rows for every node in index order.
pub fn write_signal(x: &SignalMatrix, ids: &IdMaps, columns: &[String], out: &mut impl Write) -> Result<()> {
    let mut w = BufWriter::new(out);
    write!(w, "{NODE_COLUMN}")?;
    for c in columns {
        write!(w, ",{c}")?;
    }
    writeln!(w)?;
    for i in 0..x.n_rows() {
        write!(w, "{}", ids.nodes.id(i))?;
        for c in 0..x.n_cols() {
            write!(w, ",{}", x.get(i, c))?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = CspError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(CspError::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

pub fn report_to_json(report: &MetricReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn report_from_json(s: &str) -> Result<MetricReport> {
    Ok(serde_json::from_str(s)?)
}

/// `class,fold,metric,value,micros`: one row per scored cell, then a single
/// aggregate row with class and fold `*`.
pub fn report_to_csv(report: &MetricReport) -> String {
    let mut s = String::from("class,fold,metric,value,micros\n");
    for c in &report.cells {
        s.push_str(&format!("{},{},{},{},{}\n", csv_escape(&c.class), c.fold, report.metric, c.value, c.micros));
    }
    let total: u64 = report.cells.iter().map(|c| c.micros).sum();
    let mean_micros = if report.cells.is_empty() { 0 } else { total / report.cells.len() as u64 };
    let value = report.mean_metric.map_or_else(|| "NaN".to_owned(), |v| v.to_string());
    s.push_str(&format!("*,*,mean_{},{},{}\n", report.metric, value, mean_micros));
    s
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn write_report(report: &MetricReport, path: &Path, format: ReportFormat) -> Result<()> {
    let body = match format {
        ReportFormat::Json => report_to_json(report)?,
        ReportFormat::Csv => report_to_csv(report),
    };
    std::fs::write(path, body)?;
    Ok(())
}

/// `v` with 17 significant digits in plain decimal notation.
pub fn format_sig17(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return format!("{:.16}", 0.0);
    }
    let exponent = v.abs().log10().floor() as i32;
    if !(-300..=300).contains(&exponent) {
        return format!("{v:.16e}");
    }
    let decimals = (16 - exponent).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // log10 can be off by one right below a power of ten
    let digits = s.chars().filter(|c| c.is_ascii_digit()).collect::<String>();
    let significant = digits.trim_start_matches('0').len();
    if significant > 17 && decimals > 0 {
        let d = decimals - 1;
        return format!("{v:.d$}");
    }
    s
}

/// Reference counts per dataset, used to sanity-check loaded files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetProfile {
    pub name: &'static str,
    pub nodes: usize,
    pub isolated_nodes: usize,
    pub hyperedges: usize,
    pub nnz: usize,
    pub classes: usize,
}

pub const KNOWN_DATASETS: [DatasetProfile; 8] = [
    DatasetProfile { name: "citeseer", nodes: 3312, isolated_nodes: 1854, hyperedges: 1079, nnz: 3453, classes: 6 },
    DatasetProfile { name: "cora-ca", nodes: 2708, isolated_nodes: 320, hyperedges: 1072, nnz: 4585, classes: 7 },
    DatasetProfile { name: "cora-cc", nodes: 2708, isolated_nodes: 1274, hyperedges: 1579, nnz: 4786, classes: 7 },
    DatasetProfile { name: "dblp", nodes: 41302, isolated_nodes: 0, hyperedges: 22363, nnz: 99561, classes: 6 },
    DatasetProfile { name: "pubmed", nodes: 19717, isolated_nodes: 15877, hyperedges: 7963, nnz: 34629, classes: 3 },
    DatasetProfile { name: "corona", nodes: 44955, isolated_nodes: 0, hyperedges: 998, nnz: 3455918, classes: 5 },
    DatasetProfile { name: "movie-ra", nodes: 62423, isolated_nodes: 3376, hyperedges: 162541, nnz: 25000095, classes: 20 },
    DatasetProfile { name: "movie-ta", nodes: 62423, isolated_nodes: 17172, hyperedges: 14592, nnz: 1093360, classes: 20 },
];

pub fn known_profile(name: &str) -> Option<&'static DatasetProfile> {
    let key = name.to_ascii_lowercase();
    KNOWN_DATASETS.iter().find(|p| p.name == key)
}

/// Human-readable mismatches between a loaded dataset and its reference counts.
pub fn profile_mismatches(profile: &DatasetProfile, h: &Hypergraph, labels: &Labels) -> Vec<String> {
    let s = h.summary();
    let checks = [
        ("nodes", profile.nodes, s.n_nodes),
        ("isolated nodes", profile.isolated_nodes, s.isolated_nodes),
        ("hyperedges", profile.hyperedges, s.n_edges),
        ("incidences", profile.nnz, s.nnz),
        ("classes", profile.classes, labels.n_classes()),
    ];
    checks
        .iter()
        .filter(|(_, want, got)| want != got)
        .map(|(what, want, got)| format!("{}: {what} = {got}, reference {want}", profile.name))
        .collect()
}

/// Loaded hypergraph, identifier maps and labels of a named dataset.
#[derive(Debug, Clone)]
pub struct DatasetBundle {
    pub name: String,
    pub hypergraph: Hypergraph,
    pub ids: IdMaps,
    pub labels: Labels,
}

impl DatasetBundle {
    /// The labels file doubles as the node universe, so labeled nodes without
    /// incidences are kept as isolated nodes.
    pub fn load(name: &str, incidence: &Path, labels: &Path) -> Result<Self> {
        let (hypergraph, ids) = load_incidence(incidence, Some(labels))?;
        let labels = load_labels(labels, &ids)?;
        Ok(Self { name: name.to_owned(), hypergraph, ids, labels })
    }

    pub fn profile_warnings(&self) -> Vec<String> {
        known_profile(&self.name).map_or_else(Vec::new, |p| profile_mismatches(p, &self.hypergraph, &self.labels))
    }
}
