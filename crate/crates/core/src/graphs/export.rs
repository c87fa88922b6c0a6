use std::fmt::Write;

use serde_json::{json, Value};

use super::{Graph, GraphReport};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Undirected DOT, vertices labelled by element name.
pub fn to_dot(graph: &Graph) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "graph \"{}\" {{",
        escape(&format!("{} {}", graph.label, graph.kind))
    )
    .unwrap();
    for (v, name) in graph.names.iter().enumerate() {
        writeln!(out, "  {v} [label=\"{}\"];", escape(name)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One `u,v` row per edge (element ids, `u < v`) under a header.
pub fn to_csv(graph: &Graph) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["u", "v"]).unwrap();
    for (u, v) in graph.edges() {
        w.serialize((u, v)).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// The report with a schema version and element names for isolated vertices.
pub fn report_json(report: &GraphReport, graph: &Graph) -> Value {
    let mut v = serde_json::to_value(report).expect("report serializes");
    v["schema_version"] = json!(REPORT_SCHEMA_VERSION);
    v["isolated_names"] = json!(report
        .isolated
        .iter()
        .map(|&x| &graph.names[x])
        .collect::<Vec<_>>());
    v
}
