//! Text formats for networks, basins and metric reports.
//!
//! Every writer takes a list of header lines (tool version, configuration
//! hash, seed, ...) and emits them as comments in the format's own syntax.
//! Floats are written with Rust's `Display`, which produces the shortest
//! decimal string that parses back to the same value.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::extract::BasinMap;
use crate::landscape::Direction;
use crate::metrics::{Distributions, MetricsReport, SELF_LOOP_POLICY};
use crate::network::{EdgeModel, LocalOptimaNetwork, LonEdge, LonNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetworkFormat {
    Pajek,
    GraphMl,
    Dot,
    EdgeCsv,
}

impl NetworkFormat {
    pub const ALL: [NetworkFormat; 4] = [
        NetworkFormat::Pajek,
        NetworkFormat::GraphMl,
        NetworkFormat::Dot,
        NetworkFormat::EdgeCsv,
    ];

    pub fn extension(self) -> &'static str {
        match self {
            NetworkFormat::Pajek => "net",
            NetworkFormat::GraphMl => "graphml",
            NetworkFormat::Dot => "dot",
            NetworkFormat::EdgeCsv => "edges.csv",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NetworkFormat::Pajek => "pajek",
            NetworkFormat::GraphMl => "graphml",
            NetworkFormat::Dot => "dot",
            NetworkFormat::EdgeCsv => "edge-csv",
        }
    }
}

impl std::str::FromStr for NetworkFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NetworkFormat::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown network format {s:?}")))
    }
}

/// Graph-level attributes as `(key, value)` pairs, in a fixed order.
fn graph_attributes(net: &LocalOptimaNetwork) -> Vec<(&'static str, String)> {
    let mut attrs = vec![("edge_model", net.model().to_string())];
    match net.model() {
        EdgeModel::BasinTransition => {}
        EdgeModel::Escape {
            distance,
            normalized,
        } => {
            attrs.push(("escape_distance", distance.to_string()));
            attrs.push(("normalized", normalized.to_string()));
        }
    }
    attrs.push(("direction", net.direction().to_string()));
    attrs.push(("provenance", net.provenance().to_string()));
    attrs
}

pub fn write_network<W: Write>(
    net: &LocalOptimaNetwork,
    format: NetworkFormat,
    header: &[String],
    out: &mut W,
) -> io::Result<()> {
    match format {
        NetworkFormat::Pajek => write_pajek(net, header, out),
        NetworkFormat::GraphMl => write_graphml(net, header, out),
        NetworkFormat::Dot => write_dot(net, header, out),
        NetworkFormat::EdgeCsv => write_edge_csv(net, header, out),
    }
}

pub fn network_to_string(
    net: &LocalOptimaNetwork,
    format: NetworkFormat,
    header: &[String],
) -> String {
    let mut buf = Vec::new();
    write_network(net, format, header, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("writers emit UTF-8")
}

/// Pajek `.net`. Vertices are numbered from 1; each vertex line is
/// `index "rank" fitness [basin_size]`. Graph attributes go in `%` lines as
/// `% key: value`.
pub fn write_pajek<W: Write>(
    net: &LocalOptimaNetwork,
    header: &[String],
    out: &mut W,
) -> io::Result<()> {
    for line in header {
        writeln!(out, "% {line}")?;
    }
    for (k, v) in graph_attributes(net) {
        writeln!(out, "% {k}: {v}")?;
    }
    writeln!(out, "*Vertices {}", net.node_count())?;
    for n in net.nodes() {
        write!(out, "{} \"{}\" {}", n.id + 1, n.rank, n.fitness)?;
        if let Some(b) = n.basin_size {
            write!(out, " {b}")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "*Arcs")?;
    for e in net.edges() {
        writeln!(out, "{} {} {}", e.source + 1, e.target + 1, e.weight)?;
    }
    Ok(())
}

fn parse_field<T: std::str::FromStr>(tok: &str, line: usize, col: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, col, format!("expected {what}, found {tok:?}")))
}

/// Reads a network written by [`write_pajek`].
pub fn read_pajek(text: &str) -> Result<LocalOptimaNetwork> {
    let mut model = None::<String>;
    let mut distance = None::<u32>;
    let mut normalized = None::<bool>;
    let mut direction = None::<Direction>;
    let mut provenance = String::new();
    let mut nodes: Vec<LonNode> = Vec::new();
    let mut edges: Vec<LonEdge> = Vec::new();
    let mut declared = None::<usize>;
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Vertices,
        Arcs,
    }
    let mut section = Section::Preamble;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('%') {
            if let Some((key, value)) = comment.trim().split_once(": ") {
                let col = raw.find(value).unwrap_or(0) + 1;
                match key {
                    "edge_model" => model = Some(value.to_string()),
                    "escape_distance" => {
                        distance = Some(parse_field(value, line_no, col, "a distance")?)
                    }
                    "normalized" => normalized = Some(parse_field(value, line_no, col, "a flag")?),
                    "direction" => {
                        direction = Some(match value {
                            "maximize" => Direction::Maximize,
                            "minimize" => Direction::Minimize,
                            _ => return Err(Error::parse(line_no, col, "unknown direction")),
                        })
                    }
                    "provenance" => provenance = value.to_string(),
                    _ => {}
                }
            }
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if lower.starts_with("*vertices") {
            let count = line.split_whitespace().nth(1).unwrap_or("");
            declared = Some(parse_field(count, line_no, 11, "a vertex count")?);
            section = Section::Vertices;
            continue;
        }
        if lower.starts_with("*arcs") {
            section = Section::Arcs;
            continue;
        }
        if lower.starts_with('*') {
            return Err(Error::parse(
                line_no,
                1,
                format!("unsupported section {line:?}"),
            ));
        }
        match section {
            Section::Preamble => {
                return Err(Error::parse(line_no, 1, "data before *Vertices"));
            }
            Section::Vertices => {
                let (index, rest) = line
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::parse(line_no, 1, "truncated vertex line"))?;
                let index: usize = parse_field(index, line_no, 1, "a vertex index")?;
                if index != nodes.len() + 1 {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("vertex {index} out of order, expected {}", nodes.len() + 1),
                    ));
                }
                let rest = rest.trim_start();
                let label_col = raw.len() - rest.len() + 1;
                let rest = rest
                    .strip_prefix('"')
                    .ok_or_else(|| Error::parse(line_no, label_col, "expected quoted label"))?;
                let (label, tail) = rest
                    .split_once('"')
                    .ok_or_else(|| Error::parse(line_no, label_col, "unterminated label"))?;
                let rank = parse_field(label, line_no, label_col, "a solution rank")?;
                let mut fields = tail.split_whitespace();
                let fitness = parse_field(
                    fields
                        .next()
                        .ok_or_else(|| Error::parse(line_no, raw.len(), "missing fitness"))?,
                    line_no,
                    label_col,
                    "a fitness",
                )?;
                let basin_size = fields
                    .next()
                    .map(|t| parse_field(t, line_no, label_col, "a basin size"))
                    .transpose()?;
                nodes.push(LonNode {
                    id: (index - 1) as u32,
                    rank,
                    fitness,
                    basin_size,
                });
            }
            Section::Arcs => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        1,
                        "arc lines need source, target and weight",
                    ));
                }
                let endpoint = |t: &str| -> Result<u32> {
                    let v: u32 = parse_field(t, line_no, 1, "a vertex index")?;
                    if v == 0 {
                        return Err(Error::parse(line_no, 1, "vertex indices start at 1"));
                    }
                    Ok(v - 1)
                };
                edges.push(LonEdge {
                    source: endpoint(toks[0])?,
                    target: endpoint(toks[1])?,
                    weight: parse_field(toks[2], line_no, 1, "a weight")?,
                });
            }
        }
    }
    match declared {
        None => return Err(Error::parse(0, 0, "missing *Vertices section")),
        Some(d) if d != nodes.len() => {
            return Err(Error::parse(
                0,
                0,
                format!(
                    "*Vertices declares {d} vertices but {} are listed",
                    nodes.len()
                ),
            ))
        }
        _ => {}
    }
    let model = match model.as_deref() {
        None | Some("basin-transition") => EdgeModel::BasinTransition,
        Some(_) => EdgeModel::Escape {
            distance: distance
                .ok_or_else(|| Error::parse(0, 0, "escape network without distance"))?,
            normalized: normalized.unwrap_or(true),
        },
    };
    LocalOptimaNetwork::new(
        nodes,
        edges,
        model,
        direction.unwrap_or(Direction::Maximize),
        provenance,
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn write_graphml<W: Write>(
    net: &LocalOptimaNetwork,
    header: &[String],
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    for line in header {
        writeln!(out, "<!-- {} -->", xml_escape(line).replace("--", "- -"))?;
    }
    writeln!(
        out,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">"#
    )?;
    let attrs = graph_attributes(net);
    for (k, _) in &attrs {
        writeln!(
            out,
            r#"  <key id="{k}" for="graph" attr.name="{k}" attr.type="string"/>"#
        )?;
    }
    writeln!(
        out,
        r#"  <key id="rank" for="node" attr.name="rank" attr.type="long"/>"#
    )?;
    writeln!(
        out,
        r#"  <key id="fitness" for="node" attr.name="fitness" attr.type="double"/>"#
    )?;
    writeln!(
        out,
        r#"  <key id="basin_size" for="node" attr.name="basin_size" attr.type="long"/>"#
    )?;
    writeln!(
        out,
        r#"  <key id="weight" for="edge" attr.name="weight" attr.type="double"/>"#
    )?;
    writeln!(out, r#"  <graph id="lon" edgedefault="directed">"#)?;
    for (k, v) in &attrs {
        writeln!(out, r#"    <data key="{k}">{}</data>"#, xml_escape(v))?;
    }
    for n in net.nodes() {
        write!(
            out,
            r#"    <node id="n{}"><data key="rank">{}</data><data key="fitness">{}</data>"#,
            n.id, n.rank, n.fitness
        )?;
        if let Some(b) = n.basin_size {
            write!(out, r#"<data key="basin_size">{b}</data>"#)?;
        }
        writeln!(out, "</node>")?;
    }
    for e in net.edges() {
        writeln!(
            out,
            r#"    <edge source="n{}" target="n{}"><data key="weight">{}</data></edge>"#,
            e.source, e.target, e.weight
        )?;
    }
    writeln!(out, "  </graph>")?;
    writeln!(out, "</graphml>")
}

/// Graphviz DOT; practical for small networks only.
pub fn write_dot<W: Write>(
    net: &LocalOptimaNetwork,
    header: &[String],
    out: &mut W,
) -> io::Result<()> {
    for line in header {
        writeln!(out, "// {line}")?;
    }
    writeln!(out, "digraph lon {{")?;
    for (k, v) in graph_attributes(net) {
        writeln!(out, "  {k}=\"{}\";", v.replace('"', "\\\""))?;
    }
    for n in net.nodes() {
        write!(out, "  n{} [rank={}, fitness={}", n.id, n.rank, n.fitness)?;
        if let Some(b) = n.basin_size {
            write!(out, ", basin_size={b}")?;
        }
        writeln!(out, "];")?;
    }
    for e in net.edges() {
        writeln!(
            out,
            "  n{} -> n{} [weight={}];",
            e.source, e.target, e.weight
        )?;
    }
    writeln!(out, "}}")
}

/// `src,dst,weight` rows after `#` comment lines and a header row.
pub fn write_edge_csv<W: Write>(
    net: &LocalOptimaNetwork,
    header: &[String],
    out: &mut W,
) -> io::Result<()> {
    write_comments(header, out)?;
    for (k, v) in graph_attributes(net) {
        writeln!(out, "# {k}: {v}")?;
    }
    writeln!(out, "src,dst,weight")?;
    for e in net.edges() {
        writeln!(out, "{},{},{}", e.source, e.target, e.weight)?;
    }
    Ok(())
}

pub fn write_comments<W: Write>(header: &[String], out: &mut W) -> io::Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

/// Empty for a missing value.
pub fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per optimum: id, rank, solution, fitness, basin size, interior count.
pub fn write_basins_csv<W: Write>(bm: &BasinMap, header: &[String], out: &mut W) -> io::Result<()> {
    write_comments(header, out)?;
    writeln!(out, "# provenance: {}", bm.description())?;
    writeln!(out, "id,rank,solution,fitness,basin_size,interior_count")?;
    for o in bm.optima() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            o.id,
            o.rank,
            o.representative.to_string().replace(',', " "),
            o.fitness,
            o.basin_size,
            bm.interior_counts()[o.id as usize]
        )?;
    }
    Ok(())
}

pub const REPORT_COLUMNS: &[&str] = &[
    "label",
    "nodes",
    "edges",
    "edge_density",
    "edge_density_percent",
    "mean_out_degree",
    "mean_clustering",
    "mean_weighted_clustering",
    "mean_disparity",
    "mean_strength",
    "mean_path_length",
    "unreachable_pairs",
    "global_optimum",
    "optimum_path_length",
    "unreachable_to_optimum",
    "self_loop_mean_weight",
    "off_diagonal_mean_weight",
];

pub fn report_csv_header() -> String {
    REPORT_COLUMNS.join(",")
}

/// Flat CSV row matching [`REPORT_COLUMNS`]; missing values are empty.
pub fn report_csv_row(label: &str, r: &MetricsReport) -> String {
    let fields = [
        label.replace(',', ";"),
        r.node_count.to_string(),
        r.edge_count.to_string(),
        r.edge_density.to_string(),
        r.edge_density_percent.to_string(),
        r.mean_out_degree.to_string(),
        r.mean_clustering.to_string(),
        r.mean_weighted_clustering.to_string(),
        opt(r.mean_disparity),
        r.mean_strength.to_string(),
        opt(r.mean_path_length()),
        r.mean_path
            .map(|p| p.unreachable_pairs.to_string())
            .unwrap_or_default(),
        r.path_to_optimum
            .map(|p| p.global_optimum.to_string())
            .unwrap_or_default(),
        opt(r.optimum_path_length()),
        r.path_to_optimum
            .map(|p| p.unreachable.to_string())
            .unwrap_or_default(),
        r.self_loop_mean_weight.to_string(),
        opt(r.off_diagonal_mean_weight),
    ];
    fields.join(",")
}

/// Human-readable report, one `name: value` per line.
pub fn report_text(r: &MetricsReport) -> String {
    let mut s = String::new();
    let header = report_csv_header();
    let row = report_csv_row("-", r);
    for (k, v) in header.split(',').zip(row.split(',')).skip(1) {
        let v = if v.is_empty() { "absent" } else { v };
        let _ = writeln!(s, "{k}: {v}");
    }
    if let Some(p) = r.path_to_optimum.filter(|p| p.trivial) {
        let _ = writeln!(
            s,
            "note: single-node network, path to optimum {} by convention",
            p.mean
        );
    }
    let _ = writeln!(s, "self-loop policy:");
    for (metric, policy) in SELF_LOOP_POLICY {
        let _ = writeln!(s, "  {metric}: {policy}");
    }
    s
}

/// Two-column CSV files: `(file stem, contents)` for each histogram and its
/// complementary cumulative form.
pub fn histogram_csvs(d: &Distributions, header: &[String]) -> Vec<(&'static str, String)> {
    let mut prefix = Vec::new();
    write_comments(header, &mut prefix).expect("writing to memory");
    let prefix = String::from_utf8(prefix).expect("UTF-8");
    let degree = |stem, column: &str, values: &[f64]| {
        let mut s = prefix.clone();
        let _ = writeln!(s, "k,{column}");
        for (k, p) in values.iter().enumerate() {
            let _ = writeln!(s, "{k},{p}");
        }
        (stem, s)
    };
    let weight = |stem, column: &str, h: &crate::metrics::LogHistogram, cumulative: bool| {
        let mut s = prefix.clone();
        let _ = writeln!(
            s,
            "# log bins, {} per decade; bin b covers [10^(b/{0}), 10^((b+1)/{0})); w is the lower edge",
            h.bins_per_decade
        );
        let _ = writeln!(s, "w,{column}");
        for b in &h.bins {
            let v = if cumulative { b.ccdf } else { b.probability };
            let _ = writeln!(s, "{},{v}", b.lower);
        }
        (stem, s)
    };
    vec![
        degree("degree_in", "p", &d.in_degree.probabilities),
        degree("degree_in_ccdf", "ccdf", &d.in_degree.ccdf()),
        degree("degree_out", "p", &d.out_degree.probabilities),
        degree("degree_out_ccdf", "ccdf", &d.out_degree.ccdf()),
        weight("weight_in", "p", &d.in_weight, false),
        weight("weight_in_ccdf", "ccdf", &d.in_weight, true),
        weight("weight_out", "p", &d.out_weight, false),
        weight("weight_out_ccdf", "ccdf", &d.out_weight, true),
    ]
}
