//! Labeled directed multigraphs. Loops and parallel edges are allowed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Dsu};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex and returns its index.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.vertices.push(label.into());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, id: impl Into<String>, tail: usize, head: usize) -> Result<()> {
        let id = id.into();
        let n = self.vertices.len();
        if tail >= n || head >= n {
            return Err(Error::InvalidGraph(format!("edge `{id}` has an endpoint out of range")));
        }
        if self.edge_index.contains_key(&id) {
            return Err(Error::InvalidGraph(format!("duplicate edge id `{id}`")));
        }
        self.edge_index.insert(id.clone(), self.edges.len());
        self.edges.push(Edge { id, tail, head });
        Ok(())
    }

    /// Moves the head of edge `id` to another vertex.
    pub fn retarget_head(&mut self, id: &str, head: usize) -> Result<()> {
        if head >= self.vertices.len() {
            return Err(Error::InvalidGraph(format!("vertex {head} out of range")));
        }
        let k = *self.edge_index.get(id).ok_or_else(|| Error::UnknownLabel(id.to_string()))?;
        self.edges[k].head = head;
        Ok(())
    }

    /// Moves the tail of edge `id` to another vertex.
    pub fn retarget_tail(&mut self, id: &str, tail: usize) -> Result<()> {
        if tail >= self.vertices.len() {
            return Err(Error::InvalidGraph(format!("vertex {tail} out of range")));
        }
        let k = *self.edge_index.get(id).ok_or_else(|| Error::UnknownLabel(id.to_string()))?;
        self.edges[k].tail = tail;
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_index.get(id).map(|&k| &self.edges[k])
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v).count()
    }

    /// Indices of edges leaving `v`, in insertion order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.tail == v).map(|(k, _)| k)
    }

    /// Weakly connected components; 0 for the empty graph.
    pub fn weak_components(&self) -> usize {
        let mut dsu = Dsu::new(self.vertices.len());
        for e in &self.edges {
            dsu.union(e.tail, e.head);
        }
        dsu.count()
    }

    /// `edges - vertices + components`.
    pub fn cyclomatic_number(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.weak_components() as i64
    }

    /// Edge adjacency matrix over edge ids in insertion order:
    /// `r_ij = 1` iff edge `i` ends at the vertex where edge `j` starts.
    ///
    /// This is the defining relation every duality claim is checked against.
    pub fn edge_adjacency(&self) -> Result<BinaryMatrix> {
        if self.edges.is_empty() {
            return Err(Error::InvalidGraph("edge adjacency of a graph without edges".into()));
        }
        let labels: Vec<String> = self.edges.iter().map(|e| e.id.clone()).collect();
        let mut m = BinaryMatrix::zeros(labels)
            .map_err(|_| Error::InvalidGraph("edge ids are not usable as matrix labels".into()))?;
        for (i, a) in self.edges.iter().enumerate() {
            for (j, b) in self.edges.iter().enumerate() {
                if a.head == b.tail {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }
}

/// Free-function form of [`Digraph::edge_adjacency`].
pub fn edge_adjacency_of(h: &Digraph) -> Result<BinaryMatrix> {
    h.edge_adjacency()
}
