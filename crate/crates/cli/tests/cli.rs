use std::process::Command;

use stgraph_cli::{decode_json, run, Format, Mode, RunConfig};
use stgraph_core::GraphType;

const SMALL: &[(u32, u32)] = &[
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 0),
    (2, 1),
    (2, 2),
    (3, 0),
    (3, 1),
];

fn config(g: u32, n: u32) -> RunConfig {
    RunConfig::new(GraphType::new(g, n).unwrap())
}

fn output(config: &RunConfig) -> (String, stgraph_cli::RunSummary) {
    let mut buf = Vec::new();
    let summary = run(config, &mut buf).unwrap();
    (String::from_utf8(buf).unwrap(), summary)
}

#[test]
fn count_equals_list_length() {
    for &(g, n) in SMALL {
        let (count, _) = output(&config(g, n));
        let mut list = config(g, n);
        list.mode = Mode::List;
        list.format = Format::Json;
        let (lines, _) = output(&list);
        assert_eq!(
            count.trim().parse::<usize>().unwrap(),
            lines.lines().count(),
            "({g}, {n})"
        );
    }
}

#[test]
fn json_round_trip() {
    for &(g, n) in SMALL {
        let mut c = config(g, n);
        c.mode = Mode::List;
        c.format = Format::Json;
        let (lines, _) = output(&c);
        for line in lines.lines() {
            let m = decode_json(line).unwrap();
            assert_eq!(stgraph_cli::encode_graph(&m, Format::Json), line);
        }
    }
}

#[test]
fn jobs_agree() {
    let mut base = config(2, 3);
    base.mode = Mode::List;
    base.format = Format::Json;
    let (reference, first) = output(&base);
    let mut sorted_lines: Vec<&str> = reference.lines().collect();
    sorted_lines.sort_unstable();
    for jobs in [2, 4] {
        let mut c = base.clone();
        c.jobs = jobs;
        let (unordered, summary) = output(&c);
        assert_eq!(summary.report.distinct(), first.report.distinct());
        assert_eq!(summary.key_digest, first.key_digest);
        let mut lines: Vec<&str> = unordered.lines().collect();
        lines.sort_unstable();
        assert_eq!(lines, sorted_lines);
        c.sorted = true;
        assert_eq!(output(&c).0, reference);
    }
}

#[test]
fn stats_rows() {
    let mut c = config(2, 0);
    c.mode = Mode::Stats;
    let (csv, _) = output(&c);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "G,N,K,emitted,duplicates,distinct,seconds");
    assert!(rows[1].starts_with("2,0,1,3,0,3,"));
    assert!(rows[2].starts_with("2,0,2,4,0,4,"));
    assert_eq!(rows.len(), 3);
}

#[test]
fn fixed_vertex_count() {
    let mut c = config(2, 0);
    c.vertices = Some(2);
    assert_eq!(output(&c).0, "4\n");
    c.vertices = Some(3);
    assert!(run(&c, &mut Vec::new()).is_err());
}

#[test]
fn text_list_separates_graphs() {
    let mut c = config(1, 1);
    c.mode = Mode::List;
    let (text, _) = output(&c);
    assert_eq!(text, "0\n1\n1\n1\n\n1\n1\n0\n0\n");
}

fn stgraph(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_stgraph"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn binary_exit_codes() {
    let ok = stgraph(&["--genus", "0", "--marked", "3", "--mode", "count"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1\n");

    assert_eq!(
        stgraph(&["--genus", "0", "--marked", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(stgraph(&["--genus", "1"]).status.code(), Some(2));
    assert_eq!(
        stgraph(&["--genus", "1", "--marked", "1", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stgraph(&["--genus", "1", "--marked", "1", "--mode", "nope"])
            .status
            .code(),
        Some(2)
    );
    let tripped = stgraph(&["--genus", "0", "--marked", "6", "--dedup-guard", "1"]);
    assert_eq!(tripped.status.code(), Some(3));
}

#[test]
fn output_file_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let status = stgraph(&[
        "--genus",
        "2",
        "--marked",
        "2",
        "--output",
        path.to_str().unwrap(),
    ])
    .status;
    assert!(status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let oracle = stgraph(&["oracle", "--genus", "2", "--marked", "2"]);
    assert_eq!(String::from_utf8_lossy(&oracle.stdout), written);
}
