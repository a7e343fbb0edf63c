//! Deterministic text, JSON and DOT renderings.

use std::fmt::Write;

use crate::digraph::Digraph;
use crate::edge_graph::EdgeGraphModel;
use crate::hamilton::CycleSet;
use crate::matrix::BinaryMatrix;
use crate::normal_form::CheckReport;
use crate::reduction::FormingResult;

pub fn check_report(report: &CheckReport) -> String {
    let mut out = format!(
        "{} {} violations={}",
        if report.passed { "PASS" } else { "FAIL" },
        report.mode.as_str(),
        report.violations.len()
    );
    for v in &report.violations {
        write!(out, "\n{} ({},{}) value={}", v.kind.as_str(), v.cell.0, v.cell.1, v.value).unwrap();
        if let Some((r, c)) = &v.minor_of {
            write!(out, " minor_of=({r},{c})").unwrap();
        }
    }
    out
}

/// JSON with keys `passed`, `mode`, `violations[{kind, cell, value, minor_of}]`.
pub fn check_report_json(report: &CheckReport) -> String {
    serde_json::to_string_pretty(report).expect("report is always serializable")
}

pub fn cycles(set: &CycleSet) -> String {
    let mut out = format!("{} {}", set.count(), if set.count() == 1 { "cycle" } else { "cycles" });
    for c in &set.cycles {
        write!(out, "\n{}->{}", c.join("->"), c[0]).unwrap();
    }
    out
}

/// Reduction table with columns `excluded | pair | element`, then the
/// forming set.
pub fn forming(result: &FormingResult) -> String {
    let rows: Vec<[String; 3]> = result
        .removed
        .iter()
        .map(|r| {
            [
                r.alpha.clone(),
                format!("({},{}),({},{})", r.x, r.alpha, r.alpha, r.y),
                format!("({},{})", r.x, r.y),
            ]
        })
        .collect();
    let header = ["excluded".to_string(), "pair".to_string(), "element".to_string()];
    let mut widths = header.each_ref().map(String::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String; 3]| {
        format!("{:<w0$} | {:<w1$} | {}", cells[0], cells[1], cells[2], w0 = widths[0], w1 = widths[1])
            .trim_end()
            .to_string()
    };
    let mut out = line(&header);
    for row in &rows {
        out.push('\n');
        out.push_str(&line(row));
    }
    write!(
        out,
        "\nforming set: {}\nfully_forming={}",
        result.matrix.labels().join(","),
        result.fully_forming
    )
    .unwrap();
    out
}

/// `nu=<cyclomatic> components=<p> ones=<count>`.
pub fn invariants(m: &BinaryMatrix) -> String {
    format!("nu={} components={} ones={}", m.cyclomatic_number(), m.weak_components(), m.ones())
}

fn dot_id(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// DOT digraph; nodes in vertex order, edges sorted by tail then label.
pub fn dot(g: &Digraph) -> String {
    let mut out = String::from("digraph H {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    let mut edges: Vec<_> = g.edges().iter().collect();
    edges.sort_by(|a, b| a.tail.cmp(&b.tail).then_with(|| a.id.cmp(&b.id)));
    for e in edges {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&g.vertices()[e.tail]),
            dot_id(&g.vertices()[e.head]),
            dot_id(&e.id)
        )
        .unwrap();
    }
    out.push('}');
    out
}

/// Block list and the per-edge vertex numbers (N_hn, N_hk).
pub fn edge_graph_summary(model: &EdgeGraphModel) -> String {
    let d = &model.decomposition;
    let mut out = format!(
        "vertices={} edges={} blocks={} nu(H)={}",
        model.h.vertex_count(),
        model.h.edge_count(),
        d.blocks.len(),
        model.cyclomatic_number()
    );
    for b in &d.blocks {
        let (k, p) = b.shape();
        write!(out, "\nv{} {k}x{p} in={} out={}", b.number, b.in_rows.join(","), b.out_cols.join(","))
            .unwrap();
    }
    let width = model.labels.iter().map(String::len).max().unwrap_or(0).max(4);
    write!(out, "\n{:<width$} N_hn N_hk", "edge").unwrap();
    for q in &model.labels {
        let added = if model.added_labels.contains(q) { " +" } else { "" };
        write!(out, "\n{:<width$} {:>4} {:>4}{added}", q, model.tails[q], model.heads[q]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_graph::build_edge_graph;
    use crate::matrix::fixtures::*;
    use crate::normal_form::quasicanonical_check;
    use crate::reduction::reduce_to_forming;

    #[test]
    fn passing_report() {
        assert_eq!(check_report(&quasicanonical_check(&chain())), "PASS quasicanonical violations=0");
    }

    #[test]
    fn json_keys_are_stable() {
        let json = check_report_json(&quasicanonical_check(&zero_diagonal3()));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["passed"], false);
        assert_eq!(v["mode"], "quasicanonical");
        let w = &v["violations"][0];
        for key in ["kind", "cell", "value", "minor_of"] {
            assert!(w.get(key).is_some(), "missing {key}");
        }
        assert_eq!(w["kind"], "minor-c");
    }

    #[test]
    fn one_cycle() {
        let set = CycleSet { cycles: vec![vec!["q1".into(), "q2".into(), "q3".into()]] };
        assert_eq!(cycles(&set), "1 cycle\nq1->q2->q3->q1");
        assert_eq!(cycles(&CycleSet::default()), "0 cycles");
    }

    #[test]
    fn forming_table() {
        let text = forming(&reduce_to_forming(&path_abc(), false));
        let lines: Vec<&str> = text.lines().collect();
        let cols = |l: &str| l.split('|').map(str::trim).map(String::from).collect::<Vec<_>>();
        assert_eq!(cols(lines[0]), ["excluded", "pair", "element"]);
        assert_eq!(cols(lines[1]), ["b", "(a,b),(b,c)", "(a,c)"]);
        assert_eq!(lines[2], "forming set: a,c");
    }

    #[test]
    fn dot_output() {
        let model = build_edge_graph(&chain(), None).unwrap();
        assert_eq!(
            dot(&model.h),
            "digraph H {\n  v1;\n  v_init;\n  v_fin;\n  v1 -> v_fin [label=q2];\n  v_init -> v1 [label=q1];\n}"
        );
        let tri = build_edge_graph(&cycle3(), None).unwrap();
        assert_eq!(dot(&tri.h).matches("->").count(), 3);
        assert_eq!(dot(&Digraph::new()), "digraph H {\n}");
    }
}
