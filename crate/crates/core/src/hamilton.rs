//! Hamilton cycles of `G` as closed walks in the edge graph `H`.
//!
//! Once `G`'s relation matrix is normalized, a Hamilton cycle of `G` is a
//! closed walk in `H` that traverses every original edge exactly once,
//! possibly passing through edges inserted by subdivision. In a canonical
//! `H` such a walk enters each vertex at most once (every vertex has in- and
//! out-degree 1 in the walk); in a quasicanonical `H` a complicated vertex
//! with `k` entering and `p` leaving edges may be passed up to `min(k, p)`
//! times.
//!
//! The brute-force enumerators at the bottom of this module are the oracles
//! the search is checked against.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;

use crate::digraph::Digraph;
use crate::edge_graph::{build_edge_graph, EdgeGraphModel};
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::normal_form::{canonicalize, quasinormalize};

/// A closed walk in `H` covering every original edge exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EulerPartial {
    pub edges: Vec<String>,
    /// Vertex numbers of `H` the walk passes through.
    pub vertices: BTreeSet<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleSet {
    /// Each cycle starts at its smallest label; the list is sorted.
    pub cycles: Vec<Vec<String>>,
}

impl CycleSet {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    fn from_cycles(cycles: impl IntoIterator<Item = Vec<String>>) -> Self {
        let set: BTreeSet<Vec<String>> = cycles.into_iter().collect();
        CycleSet { cycles: set.into_iter().collect() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NormalForm {
    #[default]
    Quasicanonical,
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonOptions {
    pub limit: Option<usize>,
    pub form: NormalForm,
    pub threads: usize,
}

impl Default for HamiltonOptions {
    fn default() -> Self {
        HamiltonOptions { limit: None, form: NormalForm::Quasicanonical, threads: 1 }
    }
}

/// How many times the walk may enter each vertex of `h`.
fn vertex_caps(h: &Digraph) -> Vec<usize> {
    (0..h.vertex_count()).map(|v| h.in_degree(v).min(h.out_degree(v)).max(1)).collect()
}

struct Search<'a> {
    h: &'a Digraph,
    required: Vec<bool>,
    caps: Vec<usize>,
    /// Outgoing edge indices per vertex, sorted by label.
    out: Vec<Vec<usize>>,
    anchor: usize,
    limit: usize,
}

struct State {
    walk: Vec<usize>,
    used: Vec<bool>,
    visits: Vec<usize>,
    required_left: usize,
}

impl<'a> Search<'a> {
    fn new(model: &'a EdgeGraphModel, limit: usize) -> Option<Self> {
        let h = &model.h;
        let required: Vec<bool> =
            h.edges().iter().map(|e| !model.added_labels.contains(&e.id)).collect();
        let anchor = (0..h.edge_count())
            .filter(|&k| required[k])
            .min_by(|&a, &b| h.edges()[a].id.cmp(&h.edges()[b].id))?;
        let out = (0..h.vertex_count())
            .map(|v| h.out_edges(v).sorted_by(|&a, &b| h.edges()[a].id.cmp(&h.edges()[b].id)).collect())
            .collect();
        Some(Search { h, required, caps: vertex_caps(h), out, anchor, limit })
    }

    fn start(&self) -> State {
        let n_edges = self.h.edge_count();
        let mut st = State {
            walk: Vec::new(),
            used: vec![false; n_edges],
            visits: vec![0; self.h.vertex_count()],
            required_left: self.required.iter().filter(|&&r| r).count(),
        };
        self.push(&mut st, self.anchor);
        st
    }

    fn push(&self, st: &mut State, e: usize) {
        st.walk.push(e);
        st.used[e] = true;
        st.visits[self.h.edges()[e].head] += 1;
        if self.required[e] {
            st.required_left -= 1;
        }
    }

    fn pop(&self, st: &mut State) {
        let e = st.walk.pop().expect("non-empty walk");
        st.used[e] = false;
        st.visits[self.h.edges()[e].head] -= 1;
        if self.required[e] {
            st.required_left += 1;
        }
    }

    fn can_enter(&self, st: &State, e: usize) -> bool {
        !st.used[e] && st.visits[self.h.edges()[e].head] < self.caps[self.h.edges()[e].head]
    }

    /// Every unused required edge, and the start vertex, must still be
    /// reachable from `from` over unused edges.
    fn reachable(&self, st: &State, from: usize) -> bool {
        let mut seen = vec![false; self.h.vertex_count()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let head = self.h.edges()[e].head;
                if !st.used[e] && !seen[head] {
                    seen[head] = true;
                    queue.push_back(head);
                }
            }
        }
        let start = self.h.edges()[self.anchor].tail;
        seen[start]
            && (0..self.h.edge_count())
                .all(|e| !self.required[e] || st.used[e] || seen[self.h.edges()[e].tail])
    }

    fn dfs(&self, st: &mut State, found: &mut Vec<Vec<usize>>) {
        if found.len() >= self.limit {
            return;
        }
        let cur = self.h.edges()[*st.walk.last().expect("walk starts at the anchor")].head;
        if cur == self.h.edges()[self.anchor].tail && st.required_left == 0 {
            found.push(st.walk.clone());
            return;
        }
        if !self.reachable(st, cur) {
            return;
        }
        for &e in &self.out[cur] {
            if self.can_enter(st, e) {
                self.push(st, e);
                self.dfs(st, found);
                self.pop(st);
                if found.len() >= self.limit {
                    return;
                }
            }
        }
    }

    /// Walks extending the anchor by `first`.
    fn branch(&self, first: usize) -> Vec<Vec<usize>> {
        let mut st = self.start();
        let mut found = Vec::new();
        if !self.can_enter(&st, first) {
            return found;
        }
        self.push(&mut st, first);
        self.dfs(&mut st, &mut found);
        found
    }

    fn run(&self, threads: usize) -> Vec<Vec<usize>> {
        let st = self.start();
        let cur = self.h.edges()[self.anchor].head;
        if cur == self.h.edges()[self.anchor].tail && st.required_left == 0 {
            return vec![st.walk];
        }
        if !self.reachable(&st, cur) {
            return Vec::new();
        }
        let branches = &self.out[cur];
        let per_branch: Vec<Vec<Vec<usize>>> = if threads <= 1 || branches.len() <= 1 {
            branches.iter().map(|&b| self.branch(b)).collect()
        } else {
            let chunk = branches.len().div_ceil(threads);
            std::thread::scope(|scope| {
                let handles: Vec<_> = branches
                    .chunks(chunk)
                    .map(|part| {
                        scope.spawn(move || part.iter().map(|&b| self.branch(b)).collect::<Vec<_>>())
                    })
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("search worker panicked")).collect()
            })
        };
        per_branch.into_iter().flatten().take(self.limit).collect()
    }
}

fn to_partial(h: &Digraph, walk: &[usize]) -> EulerPartial {
    EulerPartial {
        edges: walk.iter().map(|&e| h.edges()[e].id.clone()).collect(),
        vertices: walk.iter().map(|&e| h.edges()[e].head + 1).collect(),
    }
}

/// All closed walks of `H` that cover every original edge once, up to
/// `limit`. Walks start at the original edge with the smallest label and
/// branch in label order.
pub fn euler_partial_graphs(model: &EdgeGraphModel, limit: Option<usize>) -> Vec<EulerPartial> {
    euler_partial_graphs_par(model, limit, 1)
}

/// As [`euler_partial_graphs`], fanning the first branch out over `threads`
/// workers. The result does not depend on `threads`.
pub fn euler_partial_graphs_par(
    model: &EdgeGraphModel,
    limit: Option<usize>,
    threads: usize,
) -> Vec<EulerPartial> {
    let Some(search) = Search::new(model, limit.unwrap_or(usize::MAX)) else {
        return Vec::new();
    };
    if search.limit == 0 {
        return Vec::new();
    }
    search.run(threads).iter().map(|w| to_partial(&model.h, w)).collect()
}

fn rotate_to_smallest(mut cycle: Vec<String>) -> Vec<String> {
    if let Some(k) = cycle.iter().position_min() {
        cycle.rotate_left(k);
    }
    cycle
}

/// Reads the original edges of a walk, in order, as a Hamilton cycle of `G`.
pub fn hamilton_from_euler(ep: &EulerPartial, model: &EdgeGraphModel) -> Result<Vec<String>> {
    let h = &model.h;
    let invalid = |why: String| Error::InvalidPartial(why);
    if ep.edges.is_empty() {
        return Err(invalid("empty walk".into()));
    }
    let edges = ep
        .edges
        .iter()
        .map(|id| h.edge(id).ok_or_else(|| invalid(format!("unknown edge `{id}`"))))
        .collect::<Result<Vec<_>>>()?;
    for (a, b) in edges.iter().circular_tuple_windows() {
        if a.head != b.tail {
            return Err(invalid(format!("`{}` does not lead into `{}`", a.id, b.id)));
        }
    }
    if !ep.edges.iter().all_unique() {
        return Err(invalid("an edge is used twice".into()));
    }
    let caps = vertex_caps(h);
    let mut visits = vec![0; h.vertex_count()];
    for e in &edges {
        visits[e.head] += 1;
        if visits[e.head] > caps[e.head] {
            return Err(invalid(format!("vertex {} entered too often", e.head + 1)));
        }
    }
    let cycle: Vec<String> =
        ep.edges.iter().filter(|id| !model.added_labels.contains(*id)).cloned().collect();
    let required = model.labels.iter().filter(|l| !model.added_labels.contains(*l)).count();
    if cycle.len() != required {
        return Err(invalid(format!("walk covers {} of {required} original edges", cycle.len())));
    }
    Ok(rotate_to_smallest(cycle))
}

fn is_cycle_of(m: &BinaryMatrix, cycle: &[String]) -> Result<bool> {
    if cycle.len() != m.order() || !cycle.iter().all_unique() {
        return Ok(false);
    }
    for (x, y) in cycle.iter().circular_tuple_windows() {
        if !m.get_by_label(x, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hamilton cycles of the digraph with vertex matrix `m`, loops ignored.
pub fn hamilton_cycles(m: &BinaryMatrix, opts: HamiltonOptions) -> Result<CycleSet> {
    let g = m.without_loops();
    if g.order() < 2 {
        return Ok(CycleSet::default());
    }
    let (norm, trace) = match opts.form {
        NormalForm::Quasicanonical => quasinormalize(&g)?,
        NormalForm::Canonical => canonicalize(&g)?,
    };
    let model = build_edge_graph(&norm, Some(&trace))?;
    let mut cycles = Vec::new();
    for ep in euler_partial_graphs_par(&model, opts.limit, opts.threads.max(1)) {
        let cycle = hamilton_from_euler(&ep, &model)?;
        if !is_cycle_of(&g, &cycle)? {
            return Err(Error::InvalidPartial(format!("{} is not a cycle of G", cycle.join("->"))));
        }
        cycles.push(cycle);
    }
    Ok(CycleSet::from_cycles(cycles))
}

/// Default order cap of [`brute_force_hamilton`].
pub const BRUTE_FORCE_CAP: usize = 9;

/// Hamilton cycles by trying every cyclic order that starts at the smallest
/// label. Loops are ignored.
pub fn brute_force_hamilton(m: &BinaryMatrix, cap: usize) -> Result<CycleSet> {
    let n = m.order();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n < 2 {
        return Ok(CycleSet::default());
    }
    let labels = m.labels();
    let first = (0..n).min_by_key(|&i| &labels[i]).expect("n >= 2");
    let rest: Vec<usize> = (0..n).filter(|&i| i != first).collect();
    let mut cycles = Vec::new();
    for perm in rest.iter().copied().permutations(rest.len()) {
        let order: Vec<usize> = std::iter::once(first).chain(perm).collect();
        if order.iter().circular_tuple_windows().all(|(&a, &b)| m.get(a, b)) {
            cycles.push(order.iter().map(|&i| labels[i].clone()).collect());
        }
    }
    Ok(CycleSet::from_cycles(cycles))
}

/// Default order cap of [`realizability_oracle`].
pub const REALIZABILITY_CAP: usize = 5;

/// Whether some digraph with edges labeled like `m` has edge adjacency `m`.
///
/// Tries every way of identifying the `2n` edge endpoints into vertices
/// (set partitions in restricted-growth form).
pub fn realizability_oracle(m: &BinaryMatrix, cap: usize) -> Result<bool> {
    let n = m.order();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let points = 2 * n;
    // endpoint 2i is the tail of edge i, 2i + 1 its head
    let mut block = vec![0usize; points];
    loop {
        let vertices = block.iter().max().map_or(0, |&b| b + 1);
        let mut h = Digraph::new();
        for v in 0..vertices {
            h.add_vertex(format!("v{v}"));
        }
        for (i, label) in m.labels().iter().enumerate() {
            h.add_edge(label.clone(), block[2 * i], block[2 * i + 1])?;
        }
        if h.edge_adjacency()? == *m {
            return Ok(true);
        }
        if !next_partition(&mut block) {
            return Ok(false);
        }
    }
}

/// Advances a restricted-growth string; false after the last one.
fn next_partition(a: &mut [usize]) -> bool {
    for k in (1..a.len()).rev() {
        let max_prefix = a[..k].iter().copied().max().unwrap_or(0);
        if a[k] <= max_prefix {
            a[k] += 1;
            a[k + 1..].iter_mut().for_each(|v| *v = 0);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::fixtures::*;
    use crate::normal_form::canonicalize;

    fn complete(n: usize) -> BinaryMatrix {
        let rows: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| (i != j) as u8).collect()).collect();
        BinaryMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        for (len, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (6, 203)] {
            let mut a = vec![0; len];
            let mut count = 1;
            while next_partition(&mut a) {
                count += 1;
            }
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn triangle_has_one_partial() {
        let model = build_edge_graph(&cycle3(), None).unwrap();
        let eps = euler_partial_graphs(&model, None);
        assert_eq!(eps.len(), 1);
        assert_eq!(eps[0].edges, ["q1", "q2", "q3"]);
        assert_eq!(eps[0].vertices.len(), 3);
        assert_eq!(hamilton_from_euler(&eps[0], &model).unwrap(), ["q1", "q2", "q3"]);
    }

    #[test]
    fn path_has_no_partial() {
        let model = build_edge_graph(&chain(), None).unwrap();
        assert!(euler_partial_graphs(&model, None).is_empty());
    }

    #[test]
    fn canonical_complete_three_has_two_partials() {
        let (k, trace) = canonicalize(&complete(3)).unwrap();
        let model = build_edge_graph(&k, Some(&trace)).unwrap();
        let eps = euler_partial_graphs(&model, None);
        assert_eq!(eps.len(), 2);
        for ep in &eps {
            // every vertex of the walk is entered once
            assert_eq!(ep.vertices.len(), ep.edges.len());
        }
        assert_eq!(euler_partial_graphs(&model, Some(1)).len(), 1);
    }

    #[test]
    fn added_edges_are_skipped() {
        let (q, trace) = quasinormalize(&complete(3)).unwrap();
        let model = build_edge_graph(&q, Some(&trace)).unwrap();
        let eps = euler_partial_graphs(&model, None);
        assert!(!eps.is_empty());
        let ep = &eps[0];
        assert!(ep.edges.iter().any(|e| model.added_labels.contains(e)));
        let cycle = hamilton_from_euler(ep, &model).unwrap();
        assert_eq!(cycle.len(), 3);
        assert!(cycle.iter().all(|l| !model.added_labels.contains(l)));
    }

    #[test]
    fn incomplete_walk_is_rejected() {
        let model = build_edge_graph(&cycle3(), None).unwrap();
        let ep = EulerPartial { edges: vec!["q1".into(), "q2".into()], vertices: BTreeSet::new() };
        assert!(matches!(hamilton_from_euler(&ep, &model), Err(Error::InvalidPartial(_))));
    }

    #[test]
    fn cycle_examples() {
        let opts = HamiltonOptions::default();
        let c = hamilton_cycles(&cycle3(), opts).unwrap();
        assert_eq!(c.cycles, vec![vec!["q1", "q2", "q3"]]);
        assert_eq!(hamilton_cycles(&chain(), opts).unwrap().count(), 0);
        assert_eq!(hamilton_cycles(&complete(3), opts).unwrap().count(), 2);
        assert_eq!(hamilton_cycles(&all_ones(1), opts).unwrap().count(), 0);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_hamilton(&cycle3(), 9).unwrap().count(), 1);
        assert_eq!(brute_force_hamilton(&complete(4), 9).unwrap().count(), 6);
        let zero = BinaryMatrix::from_rows(&vec![vec![0; 3]; 3]).unwrap();
        assert_eq!(brute_force_hamilton(&zero, 9).unwrap().count(), 0);
        assert!(matches!(brute_force_hamilton(&complete(10), 9), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn realizability_examples() {
        assert!(!realizability_oracle(&zero_diagonal3(), 5).unwrap());
        assert!(realizability_oracle(&chain(), 5).unwrap());
        assert!(realizability_oracle(&all_ones(2), 5).unwrap());
        assert!(matches!(realizability_oracle(&complete(6), 5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let m = complete(5);
        let one = hamilton_cycles(&m, HamiltonOptions { threads: 1, ..Default::default() }).unwrap();
        let four = hamilton_cycles(&m, HamiltonOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.count(), 24);
    }
}
