//! Construction of the edge graph `H` from a quasicanonical matrix.
//!
//! Every quasicanonical matrix splits into all-ones blocks: the rows of a
//! block are the edges entering one vertex of `H`, its columns the edges
//! leaving it. Edges with an empty column start at an initial vertex and
//! edges with an empty row end at a final vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::normal_form::quasicanonical_check;
use crate::trace::{StepKind, TransformTrace};

/// One vertex of `H`: the edges entering it (rows) and leaving it (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub number: usize,
    pub in_rows: Vec<String>,
    pub out_cols: Vec<String>,
}

impl Block {
    /// (k, p): number of entering and leaving edges.
    pub fn shape(&self) -> (usize, usize) {
        (self.in_rows.len(), self.out_cols.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Terminal {
    pub number: usize,
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Shared start of every edge with an empty column.
    pub initial: Option<Terminal>,
    /// Shared end of every edge with an empty row.
    pub final_: Option<Terminal>,
}

/// How source and sink edges are attached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TerminalMode {
    /// One initial vertex for all source edges, one final vertex for all sinks.
    #[default]
    Shared,
    /// A private initial (final) vertex for every source (sink) edge.
    Split,
}

#[derive(Debug, Clone)]
pub struct EdgeGraphModel {
    /// Vertex `k` of `h` has vertex number `k + 1`.
    pub h: Digraph,
    pub decomposition: BlockDecomposition,
    pub f: BinaryMatrix,
    /// Vertex number each edge leaves (N_hn).
    pub tails: BTreeMap<String, usize>,
    /// Vertex number each edge enters (N_hk).
    pub heads: BTreeMap<String, usize>,
    pub added_labels: BTreeSet<String>,
    /// Edge labels in matrix order.
    pub labels: Vec<String>,
}

impl EdgeGraphModel {
    /// `|edges| - |vertices| + components` of `h`.
    pub fn cyclomatic_number(&self) -> i64 {
        self.h.cyclomatic_number()
    }

    pub fn vertex_name(&self, number: usize) -> &str {
        &self.h.vertices()[number - 1]
    }
}

/// Groups the rows of a quasicanonical matrix into all-ones blocks.
///
/// Blocks are numbered by their smallest row index; the initial vertex
/// follows the blocks and the final vertex comes last.
pub fn decompose_blocks(m: &BinaryMatrix) -> Result<BlockDecomposition> {
    if !quasicanonical_check(m).passed {
        return Err(Error::NotQuasicanonical);
    }
    let n = m.order();
    let labels = m.labels();

    let mut by_pattern: HashMap<&[u8], usize> = HashMap::new();
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, row) in m.rows().enumerate() {
        if row.iter().all(|&v| v == 0) {
            continue;
        }
        let k = *by_pattern.entry(row).or_insert_with(|| {
            let cols = (0..n).filter(|&j| row[j] == 1).collect();
            groups.push((Vec::new(), cols));
            groups.len() - 1
        });
        groups[k].0.push(i);
    }

    let mut col_owner = vec![None; n];
    for (k, (rows, cols)) in groups.iter().enumerate() {
        let members: HashSet<usize> = rows.iter().copied().collect();
        for &j in cols {
            if col_owner[j].replace(k).is_some() {
                return Err(Error::InconsistentBlocks(format!(
                    "column `{}` belongs to two blocks",
                    labels[j]
                )));
            }
            let support: HashSet<usize> = (0..n).filter(|&i| m.get(i, j)).collect();
            if support != members {
                return Err(Error::InconsistentBlocks(format!(
                    "column `{}` does not match the rows of its block",
                    labels[j]
                )));
            }
        }
    }

    let names = |idx: &[usize]| idx.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
    let blocks: Vec<Block> = groups
        .iter()
        .enumerate()
        .map(|(k, (rows, cols))| Block { number: k + 1, in_rows: names(rows), out_cols: names(cols) })
        .collect();

    let (rowsums, colsums) = m.row_col_sums();
    let sources: Vec<String> = (0..n).filter(|&j| colsums[j] == 0).map(|j| labels[j].clone()).collect();
    let sinks: Vec<String> = (0..n).filter(|&i| rowsums[i] == 0).map(|i| labels[i].clone()).collect();
    let mut next = blocks.len() + 1;
    let mut terminal = |edges: Vec<String>| {
        (!edges.is_empty()).then(|| {
            next += 1;
            Terminal { number: next - 1, edges }
        })
    };
    let initial = terminal(sources);
    let final_ = terminal(sinks);
    Ok(BlockDecomposition { blocks, initial, final_ })
}

/// Builds `H` for a quasicanonical matrix, with shared terminals.
pub fn build_edge_graph(m: &BinaryMatrix, trace: Option<&TransformTrace>) -> Result<EdgeGraphModel> {
    build_edge_graph_with(m, trace, TerminalMode::Shared)
}

pub fn build_edge_graph_with(
    m: &BinaryMatrix,
    trace: Option<&TransformTrace>,
    mode: TerminalMode,
) -> Result<EdgeGraphModel> {
    let decomposition = decompose_blocks(m)?;
    let mut h = Digraph::new();
    let mut tails: BTreeMap<String, usize> = BTreeMap::new();
    let mut heads: BTreeMap<String, usize> = BTreeMap::new();

    for b in &decomposition.blocks {
        h.add_vertex(format!("v{}", b.number));
        for q in &b.in_rows {
            heads.insert(q.clone(), b.number);
        }
        for q in &b.out_cols {
            tails.insert(q.clone(), b.number);
        }
    }
    let initial = decomposition.initial.as_ref().map(|t| t.edges.as_slice()).unwrap_or(&[]);
    let final_ = decomposition.final_.as_ref().map(|t| t.edges.as_slice()).unwrap_or(&[]);
    match mode {
        TerminalMode::Shared => {
            if !initial.is_empty() {
                let v = h.add_vertex("v_init") + 1;
                for q in initial {
                    tails.insert(q.clone(), v);
                }
            }
            if !final_.is_empty() {
                let v = h.add_vertex("v_fin") + 1;
                for q in final_ {
                    heads.insert(q.clone(), v);
                }
            }
        }
        TerminalMode::Split => {
            for q in initial {
                let v = h.add_vertex(format!("v_init_{q}")) + 1;
                tails.insert(q.clone(), v);
            }
            for q in final_ {
                let v = h.add_vertex(format!("v_fin_{q}")) + 1;
                heads.insert(q.clone(), v);
            }
        }
    }
    for q in m.labels() {
        h.add_edge(q.clone(), tails[q] - 1, heads[q] - 1)?;
    }

    let added_labels = trace.map(|t| t.added_labels().into_iter().collect()).unwrap_or_default();
    let mut model = EdgeGraphModel {
        h,
        decomposition,
        f: BinaryMatrix::from_rows(&[vec![0]])?,
        tails,
        heads,
        added_labels,
        labels: m.labels().to_vec(),
    };
    model.f = f_matrix(&model);
    Ok(model)
}

/// Vertex adjacency of `H`: `f_hg = 1` iff some edge runs from `h` to `g`.
/// Parallel edges collapse to a single 1.
pub fn f_matrix(model: &EdgeGraphModel) -> BinaryMatrix {
    let h = &model.h;
    let mut f = BinaryMatrix::zeros(h.vertices().to_vec()).expect("vertex names are distinct");
    for e in h.edges() {
        f.set(e.tail, e.head, true);
    }
    f
}

/// True iff the edge adjacency of `model.h`, in `m`'s label order, equals `m`.
pub fn validate_duality(m: &BinaryMatrix, model: &EdgeGraphModel) -> Result<bool> {
    let ids: BTreeSet<&str> = model.h.edges().iter().map(|e| e.id.as_str()).collect();
    let labels: BTreeSet<&str> = m.labels().iter().map(String::as_str).collect();
    if ids != labels {
        return Err(Error::LabelMismatch);
    }
    let r = model.h.edge_adjacency()?.restrict(m.labels())?;
    Ok(r == *m)
}

/// Reconstructs the relation over the original labels from `H`: `(x, y)` is
/// set when `y` leaves the head of `x` directly, or when a chain of inserted
/// edges that the trace created for the relation `x < y` leads there.
pub fn transit_adjacency(model: &EdgeGraphModel, trace: &TransformTrace) -> Result<BinaryMatrix> {
    let h = &model.h;
    let mismatch = |what: String| Error::TraceMismatch(what);

    let trace_added: BTreeSet<String> = trace.added_labels().into_iter().collect();
    if trace_added != model.added_labels {
        return Err(mismatch("inserted labels differ from the model".into()));
    }
    for step in &trace.steps {
        if step.kind != StepKind::Subdivide {
            return Err(mismatch(format!("contraction of `{}` in a normalization trace", step.label)));
        }
        for l in [&step.x, &step.y, &step.label] {
            if h.edge(l).is_none() {
                return Err(mismatch(format!("unknown label `{l}`")));
            }
        }
    }
    for l in &trace.original_labels {
        if h.edge(l).is_none() || model.added_labels.contains(l) {
            return Err(mismatch(format!("`{l}` is not an original edge of the model")));
        }
    }

    // Each inserted edge remembers the original relation it was cut out of.
    let mut cell_origin: HashMap<(String, String), (String, String)> = HashMap::new();
    let mut origin: HashMap<String, (String, String)> = HashMap::new();
    for s in &trace.steps {
        let key = (s.x.clone(), s.y.clone());
        let o = cell_origin.get(&key).cloned().unwrap_or(key);
        cell_origin.insert((s.x.clone(), s.label.clone()), o.clone());
        cell_origin.insert((s.label.clone(), s.y.clone()), o.clone());
        origin.insert(s.label.clone(), o);
    }

    let mut out = BinaryMatrix::zeros(trace.original_labels.clone())?;
    for (i, x) in trace.original_labels.iter().enumerate() {
        let start = h.edge(x).expect("checked above").head;
        let mut stack: Vec<(usize, Option<&(String, String)>)> = vec![(start, None)];
        let mut seen = HashSet::new();
        while let Some((v, want)) = stack.pop() {
            if !seen.insert((v, want)) {
                continue;
            }
            for k in h.out_edges(v) {
                let e = &h.edges()[k];
                match origin.get(&e.id) {
                    None => {
                        let direct = want.is_none();
                        let chained = want.is_some_and(|(ox, oy)| ox == x && *oy == e.id);
                        if direct || chained {
                            out.set(i, out.index_of(&e.id)?, true);
                        }
                    }
                    Some(o) => {
                        if o.0 == *x && want.is_none_or(|w| w == o) {
                            stack.push((e.head, Some(o)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
