//! Text, JSON and DOT encodings of a single graph.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use stgraph_core::{Entry, StableGraphMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// The `g`, `n`, `l` rows followed by the full adjacency matrix.
    #[default]
    Text,
    /// One JSON object per line.
    Json,
    /// Graphviz multigraph.
    Dot,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    genera: Vec<Entry>,
    marks: Vec<Entry>,
    loops: Vec<Entry>,
    adjacency: Vec<Vec<Entry>>,
}

fn join(row: impl IntoIterator<Item = Entry>) -> String {
    row.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Encodes `m`, without a trailing newline.
pub fn encode_graph(m: &StableGraphMatrix, format: Format) -> String {
    let k = m.vertices();
    match format {
        Format::Text => {
            let mut rows = vec![
                join(m.genera().iter().copied()),
                join(m.marks().iter().copied()),
                join(m.loops()),
            ];
            rows.extend((0..k).map(|i| join(m.row(i).iter().copied())));
            rows.join("\n")
        }
        Format::Json => {
            let json = GraphJson {
                genera: m.genera().to_vec(),
                marks: m.marks().to_vec(),
                loops: m.loops(),
                adjacency: (0..k).map(|i| m.row(i).to_vec()).collect(),
            };
            serde_json::to_string(&json).expect("plain integers always serialize")
        }
        Format::Dot => {
            let mut out = String::from("graph {\n");
            for v in 0..k {
                writeln!(
                    out,
                    "  {v} [label=\"g={},n={}\"];",
                    m.genus_at(v),
                    m.marks_at(v)
                )
                .unwrap();
            }
            for i in 0..k {
                for j in i..k {
                    for _ in 0..m.edges(i, j) {
                        writeln!(out, "  {i} -- {j};").unwrap();
                    }
                }
            }
            out.push('}');
            out
        }
    }
}

/// Parses one line of [`Format::Json`] output.
pub fn decode_json(line: &str) -> Result<StableGraphMatrix, String> {
    let json: GraphJson = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let k = json.genera.len();
    if json.marks.len() != k || json.loops.len() != k {
        return Err("genera, marks and loops differ in length".into());
    }
    if json.adjacency.len() != k || json.adjacency.iter().any(|row| row.len() != k) {
        return Err(format!("adjacency is not {k}x{k}"));
    }
    if (0..k).any(|i| json.adjacency[i][i] != json.loops[i]) {
        return Err("adjacency diagonal disagrees with loops".into());
    }
    StableGraphMatrix::from_full(&json.genera, &json.marks, &json.adjacency)
        .map_err(|e| e.to_string())
}
