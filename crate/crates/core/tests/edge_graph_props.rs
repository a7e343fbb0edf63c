mod common;

use dgdual_core::edge_graph::build_edge_graph_with;
use dgdual_core::*;

fn check_model(m: &BinaryMatrix, model: &EdgeGraphModel) {
    assert!(validate_duality(m, model).unwrap(), "duality fails for\n{m}");
    // tails and heads agree with the blocks
    for b in &model.decomposition.blocks {
        for q in &b.in_rows {
            assert_eq!(model.heads[q], b.number);
        }
        for q in &b.out_cols {
            assert_eq!(model.tails[q], b.number);
        }
    }
    // f is the collapsed vertex adjacency
    for h in 0..model.h.vertex_count() {
        for g in 0..model.h.vertex_count() {
            let any = model.h.edges().iter().any(|e| e.tail == h && e.head == g);
            assert_eq!(model.f.get(h, g), any);
        }
    }
    let cells: usize =
        model.decomposition.blocks.iter().map(|b| b.in_rows.len() * b.out_cols.len()).sum();
    assert_eq!(cells, m.ones());
}

#[test]
fn duality_on_every_normalized_order_three_matrix() {
    for bits in 0u64..(1 << 9) {
        let m = BinaryMatrix::from_bits(3, bits);
        let (q, trace) = quasinormalize(&m).unwrap();
        let model = build_edge_graph(&q, Some(&trace)).unwrap();
        check_model(&q, &model);
        assert_eq!(transit_adjacency(&model, &trace).unwrap(), m);
    }
}

#[test]
fn duality_and_transit_on_random_matrices() {
    let mut rng = common::rng(21);
    for _ in 0..300 {
        let m = common::random_mixed(&mut rng, 1, 8);
        let (q, trace) = quasinormalize(&m).unwrap();
        for mode in [TerminalMode::Shared, TerminalMode::Split] {
            let model = build_edge_graph_with(&q, Some(&trace), mode).unwrap();
            check_model(&q, &model);
            assert_eq!(transit_adjacency(&model, &trace).unwrap(), m);
        }
    }
}

#[test]
fn canonical_transit_round_trip() {
    let mut rng = common::rng(22);
    for _ in 0..150 {
        let m = common::random_mixed(&mut rng, 1, 7);
        let (k, trace) = canonicalize(&m).unwrap();
        let model = build_edge_graph(&k, Some(&trace)).unwrap();
        check_model(&k, &model);
        assert_eq!(transit_adjacency(&model, &trace).unwrap(), m);
    }
}

#[test]
fn vertex_graph_nu_bounds_edge_graph_nu() {
    let mut rng = common::rng(23);
    for _ in 0..300 {
        let m = common::random_mixed(&mut rng, 1, 8);
        let (q, trace) = quasinormalize(&m).unwrap();
        let model = build_edge_graph_with(&q, Some(&trace), TerminalMode::Split).unwrap();
        assert!(q.cyclomatic_number() >= model.cyclomatic_number(), "{q}");
        // the gap is the sum of (k - 1)(p - 1) over blocks
        let gap: i64 = model
            .decomposition
            .blocks
            .iter()
            .map(|b| ((b.in_rows.len() - 1) * (b.out_cols.len() - 1)) as i64)
            .sum();
        assert_eq!(q.cyclomatic_number() - model.cyclomatic_number(), gap);
    }
}

#[test]
fn canonical_graphs_have_equal_nu() {
    let mut rng = common::rng(24);
    for _ in 0..300 {
        let m = common::random_mixed(&mut rng, 1, 7);
        let (k, trace) = canonicalize(&m).unwrap();
        let model = build_edge_graph_with(&k, Some(&trace), TerminalMode::Split).unwrap();
        let g = k.to_digraph();
        let nu_g = g.edge_count() as i64 - g.vertex_count() as i64 + g.weak_components() as i64;
        let nu_h = model.h.edge_count() as i64 - model.h.vertex_count() as i64
            + model.h.weak_components() as i64;
        assert_eq!(nu_g, nu_h, "{k}");
        assert_eq!(k.weak_components(), model.h.weak_components());
    }
}

#[test]
fn shared_terminals_merge_sources() {
    // two separate chains: the shared initial and final vertices tie them together
    let m = BinaryMatrix::from_pairs(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
    let shared = build_edge_graph(&m, None).unwrap();
    let split = build_edge_graph_with(&m, None, TerminalMode::Split).unwrap();
    assert_eq!(m.cyclomatic_number(), 0);
    assert_eq!(shared.cyclomatic_number(), 1);
    assert_eq!(split.cyclomatic_number(), 0);
}
