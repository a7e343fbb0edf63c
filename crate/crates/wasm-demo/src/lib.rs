//! Browser bindings: check a matrix, draw its edge graph, list Hamilton
//! cycles. Every function takes the matrix text format and returns text, so
//! the page needs no glue beyond `wasm-bindgen`.

use std::f64::consts::PI;
use std::fmt::Write;

use dgdual_core::{
    build_edge_graph_with, canonical_check, hamilton_cycles, quasicanonical_check, quasinormalize,
    render, BinaryMatrix, Digraph, HamiltonOptions, NormalForm, TerminalMode,
};
use wasm_bindgen::prelude::*;

/// Largest order the page will search for Hamilton cycles.
pub const HAMILTON_CAP: usize = 10;

fn parse(text: &str) -> Result<BinaryMatrix, String> {
    BinaryMatrix::parse(text).map_err(|e| format!("error: {e}"))
}

/// Check report for `mode` = "quasi" or "canonical".
#[wasm_bindgen]
pub fn check(text: &str, mode: &str) -> String {
    let m = match parse(text) {
        Ok(m) => m,
        Err(e) => return e,
    };
    match mode {
        "canonical" => render::check_report(&canonical_check(&m)),
        _ => render::check_report(&quasicanonical_check(&m)),
    }
}

/// SVG drawing of the edge graph of the quasinormalized matrix.
#[wasm_bindgen]
pub fn edge_graph_svg(text: &str, split_terminals: bool) -> String {
    let built = parse(text).and_then(|m| {
        let (q, trace) = quasinormalize(&m).map_err(|e| format!("error: {e}"))?;
        let mode = if split_terminals { TerminalMode::Split } else { TerminalMode::Shared };
        build_edge_graph_with(&q, Some(&trace), mode).map_err(|e| format!("error: {e}"))
    });
    match built {
        Ok(model) => svg(&model.h, |id| model.added_labels.contains(id)),
        Err(e) => format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"40\"><text x=\"8\" y=\"24\">{}</text></svg>", escape(&e)),
    }
}

/// Hamilton cycles, one per line after a count line.
#[wasm_bindgen]
pub fn hamilton(text: &str, canonical: bool) -> String {
    let m = match parse(text) {
        Ok(m) => m,
        Err(e) => return e,
    };
    if m.order() > HAMILTON_CAP {
        return format!("error: order {} is above the demo cap of {HAMILTON_CAP}", m.order());
    }
    let form = if canonical { NormalForm::Canonical } else { NormalForm::Quasicanonical };
    match hamilton_cycles(&m, HamiltonOptions { form, ..Default::default() }) {
        Ok(set) => render::cycles(&set),
        Err(e) => format!("error: {e}"),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Vertices on a circle; parallel edges bend apart, loops are drawn as
/// small circles outside the vertex. Inserted edges are dashed.
fn svg(h: &Digraph, inserted: impl Fn(&str) -> bool) -> String {
    const SIZE: f64 = 420.0;
    const RADIUS: f64 = 150.0;
    let n = h.vertex_count().max(1) as f64;
    let centre = SIZE / 2.0;
    let pos: Vec<(f64, f64)> = (0..h.vertex_count())
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n - PI / 2.0;
            (centre + RADIUS * a.cos(), centre + RADIUS * a.sin())
        })
        .collect();

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\">\n\
         <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"22\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n"
    );
    let mut seen: Vec<((usize, usize), usize)> = Vec::new();
    for e in h.edges() {
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        let rank = match seen.iter_mut().find(|(k, _)| *k == key) {
            Some((_, r)) => {
                *r += 1;
                *r
            }
            None => {
                seen.push((key, 0));
                0
            }
        };
        let dash = if inserted(&e.id) { " stroke-dasharray=\"5,4\"" } else { "" };
        let (x1, y1) = pos[e.tail];
        let (x2, y2) = pos[e.head];
        let (path, lx, ly) = if e.tail == e.head {
            let (dx, dy) = (x1 - centre, y1 - centre);
            let len = dx.hypot(dy).max(1.0);
            let r = 14.0 + 8.0 * rank as f64;
            let (cx, cy) = (x1 + dx / len * r, y1 + dy / len * r);
            (
                format!("M{x1:.1},{y1:.1} A{r:.1},{r:.1} 0 1,1 {:.1},{:.1}", x1 + 0.1, y1 + 0.1),
                cx + dx / len * r,
                cy + dy / len * r,
            )
        } else {
            // bend alternates side per parallel edge, growing with rank
            let side = if rank % 2 == 0 { 1.0 } else { -1.0 };
            let bend =
                side * (18.0 + 22.0 * (rank / 2) as f64) * if e.tail < e.head { 1.0 } else { -1.0 };
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = dx.hypot(dy).max(1.0);
            let (cx, cy) = (mx - dy / len * bend, my + dx / len * bend);
            (
                format!("M{x1:.1},{y1:.1} Q{cx:.1},{cy:.1} {x2:.1},{y2:.1}"),
                (mx + cx) / 2.0,
                (my + cy) / 2.0,
            )
        };
        writeln!(
            out,
            "<path d=\"{path}\" fill=\"none\" stroke=\"#333\"{dash} marker-end=\"url(#arrow)\"/>\
             <text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"12\" fill=\"#a33\" text-anchor=\"middle\">{}</text>",
            escape(&e.id)
        )
        .unwrap();
    }
    for (v, (x, y)) in h.vertices().iter().zip(&pos) {
        writeln!(
            out,
            "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"12\" fill=\"#eef\" stroke=\"#336\"/>\
             <text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            y + 3.5,
            escape(v)
        )
        .unwrap();
    }
    out.push_str("</svg>");
    out
}
