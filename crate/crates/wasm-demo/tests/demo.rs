use dgdual_wasm::{check, edge_graph_svg, hamilton, HAMILTON_CAP};

const TRIANGLE: &str = "n 3\nlabels q1,q2,q3\n0 1 0\n0 0 1\n1 0 0";
const ZERO_DIAGONAL: &str = "n 3\n0 1 1\n1 0 1\n1 1 0";

#[test]
fn check_reports() {
    assert_eq!(check(TRIANGLE, "quasi"), "PASS quasicanonical violations=0");
    assert!(check(ZERO_DIAGONAL, "canonical").starts_with("FAIL canonical"));
    assert!(check("n 2\n0 1", "quasi").starts_with("error: "));
}

#[test]
fn svg_has_every_vertex_and_edge() {
    let svg = edge_graph_svg(TRIANGLE, false);
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 3);
    assert_eq!(svg.matches("marker-end").count(), 3);

    // quasinormalization adds dashed edges
    let svg = edge_graph_svg(ZERO_DIAGONAL, true);
    assert!(svg.contains("stroke-dasharray"));

    let loops = edge_graph_svg("n 2\n1 1\n1 1", false);
    assert!(loops.contains(" A"));
    assert!(edge_graph_svg("junk", false).contains("error: "));
    assert_eq!(edge_graph_svg(TRIANGLE, false), edge_graph_svg(TRIANGLE, false));
}

#[test]
fn hamilton_text() {
    assert_eq!(hamilton(TRIANGLE, false), "1 cycle\nq1->q2->q3->q1");
    assert_eq!(hamilton(TRIANGLE, true), hamilton(TRIANGLE, false));
    assert!(hamilton(ZERO_DIAGONAL, false).starts_with("2 cycles"));
    let n = HAMILTON_CAP + 1;
    let row = vec!["1"; n].join(" ");
    let big = format!("n {n}\n{}", vec![row; n].join("\n"));
    assert!(hamilton(&big, false).contains("demo cap"));
}
