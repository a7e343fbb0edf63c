//! Labeled square 0/1 matrices and the matrix text format.
//!
//! The text format is line based:
//!
//! ```text
//! # optional comment lines
//! n 3
//! labels a,b,c
//! 0 1 0
//! 0 0 1
//! 1 0 0
//! ```
//!
//! The `labels` line is optional; missing labels are generated as
//! `q1..qn` in row order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A binary relation matrix with labels on both axes.
///
/// Relation matrices carry the same labels on rows and columns. Only
/// [`BinaryMatrix::minor`] produces matrices whose axes differ; those are
/// used for excess computations and reporting.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    order: usize,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    cells: Vec<u8>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if label.is_empty() {
            return Err(Error::MalformedInput { line: 0, reason: "empty label".into() });
        }
        if label.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::MalformedInput {
                line: 0,
                reason: format!("label `{label}` contains whitespace or a comma"),
            });
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::MalformedInput { line: 0, reason: format!("duplicate label `{label}`") });
        }
    }
    Ok(())
}

/// `q1..qn`, the labels given to unlabeled input.
pub fn generated_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("q{i}")).collect()
}

impl BinaryMatrix {
    /// Builds a relation matrix from labels and rows of 0/1 values.
    pub fn new(labels: Vec<String>, rows: &[Vec<u8>]) -> Result<Self> {
        Self::with_axes(labels.clone(), labels, rows)
    }

    /// Builds a relation matrix with labels `q1..qn`.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        Self::new(generated_labels(rows.len()), rows)
    }

    fn with_axes(row_labels: Vec<String>, col_labels: Vec<String>, rows: &[Vec<u8>]) -> Result<Self> {
        let order = row_labels.len();
        if order == 0 {
            return Err(Error::MalformedInput { line: 0, reason: "order must be positive".into() });
        }
        if col_labels.len() != order || rows.len() != order {
            return Err(Error::MalformedInput {
                line: 0,
                reason: format!("expected {order} rows and labels"),
            });
        }
        check_labels(&row_labels)?;
        check_labels(&col_labels)?;
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::MalformedInput {
                    line: i + 1,
                    reason: format!("row {} has {} cells, expected {order}", i + 1, row.len()),
                });
            }
            for &v in row {
                if v > 1 {
                    return Err(Error::MalformedInput {
                        line: i + 1,
                        reason: format!("cell value {v} is not 0 or 1"),
                    });
                }
                cells.push(v);
            }
        }
        Ok(BinaryMatrix { order, row_labels, col_labels, cells })
    }

    /// All-zero relation matrix over `labels`.
    pub fn zeros(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        Self::new(labels, &vec![vec![0; n]; n])
    }

    /// Relation matrix with a 1 for every `(row, col)` label pair in `ones`.
    pub fn from_pairs<S: AsRef<str>>(labels: &[S], ones: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut m = Self::zeros(labels)?;
        for (x, y) in ones {
            let i = m.index_of(x.as_ref())?;
            let j = m.index_of(y.as_ref())?;
            m.set(i, j, true);
        }
        Ok(m)
    }

    /// Decodes a row-major bit pattern: bit `i * n + j` of `bits` is cell `(i, j)`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n > 0 && n * n <= 64, "from_bits supports 1 <= n <= 8");
        let cells = (0..n * n).map(|k| ((bits >> k) & 1) as u8).collect();
        let labels = generated_labels(n);
        BinaryMatrix { order: n, row_labels: labels.clone(), col_labels: labels, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Row labels; for relation matrices these are also the column labels.
    pub fn labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn is_relation(&self) -> bool {
        self.row_labels == self.col_labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.row_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn col_index_of(&self, label: &str) -> Result<usize> {
        self.col_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.order + j] == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.cells[i * self.order + j] = value as u8;
    }

    /// Cell by row and column label.
    pub fn get_by_label(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.get(self.index_of(x)?, self.col_index_of(y)?))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.cells.chunks(self.order)
    }

    /// Total number of 1-cells.
    pub fn ones(&self) -> usize {
        self.cells.iter().map(|&v| v as usize).sum()
    }

    /// Positions of 1-cells in row-major order.
    pub fn one_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order;
        self.cells.iter().enumerate().filter(|(_, &v)| v == 1).map(move |(k, _)| (k / n, k % n))
    }

    /// Row sums (out-degrees) and column sums (in-degrees).
    pub fn row_col_sums(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.order;
        let mut rows = vec![0; n];
        let mut cols = vec![0; n];
        for (i, j) in self.one_cells() {
            rows[i] += 1;
            cols[j] += 1;
        }
        (rows, cols)
    }

    /// The matrix with row `i` and column `j` deleted (0-based indices).
    pub fn minor(&self, i: usize, j: usize) -> Result<BinaryMatrix> {
        let n = self.order;
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { row: i, col: j, order: n });
        }
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        let mut cells = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != i) {
            for c in (0..n).filter(|&c| c != j) {
                cells.push(self.cells[r * n + c]);
            }
        }
        let drop = |labels: &[String], k: usize| {
            labels.iter().enumerate().filter(|&(x, _)| x != k).map(|(_, l)| l.clone()).collect()
        };
        Ok(BinaryMatrix {
            order: n - 1,
            row_labels: drop(&self.row_labels, i),
            col_labels: drop(&self.col_labels, j),
            cells,
        })
    }

    /// Number of weakly connected components of the vertex digraph.
    /// Isolated vertices count as components.
    pub fn weak_components(&self) -> usize {
        let mut dsu = Dsu::new(self.order);
        for (i, j) in self.one_cells() {
            dsu.union(i, j);
        }
        dsu.count()
    }

    /// `ones - n + p`, the cyclomatic number of the vertex digraph.
    pub fn cyclomatic_number(&self) -> i64 {
        self.ones() as i64 - self.order as i64 + self.weak_components() as i64
    }

    /// Vertex digraph: one vertex per label, one edge `i -> j` per 1-cell.
    /// Edge ids are `label_i>label_j`.
    pub fn to_digraph(&self) -> Digraph {
        let mut g = Digraph::new();
        for label in &self.row_labels {
            g.add_vertex(label.clone());
        }
        for (i, j) in self.one_cells() {
            let id = format!("{}>{}", self.row_labels[i], self.col_labels[j]);
            g.add_edge(id, i, j).expect("vertex digraph edges are unique");
        }
        g
    }

    /// Same matrix with row/column order given by `perm` (new position `k`
    /// holds old index `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> BinaryMatrix {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut cells = Vec::with_capacity(n * n);
        for &r in perm {
            for &c in perm {
                cells.push(self.cells[r * n + c]);
            }
        }
        BinaryMatrix {
            order: n,
            row_labels: perm.iter().map(|&k| self.row_labels[k].clone()).collect(),
            col_labels: perm.iter().map(|&k| self.col_labels[k].clone()).collect(),
            cells,
        }
    }

    /// Matrix restricted to the given labels, in the given order.
    pub fn restrict(&self, labels: &[String]) -> Result<BinaryMatrix> {
        let idx: Vec<usize> = labels.iter().map(|l| self.index_of(l)).collect::<Result<_>>()?;
        let rows: Vec<Vec<u8>> =
            idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j) as u8).collect()).collect();
        BinaryMatrix::new(labels.to_vec(), &rows)
    }

    /// Relation matrix with the diagonal cleared.
    pub fn without_loops(&self) -> BinaryMatrix {
        let mut m = self.clone();
        for i in 0..self.order {
            m.set(i, i, false);
        }
        m
    }

    /// Appends a fresh all-zero row and column named `label`.
    pub(crate) fn grow(&mut self, label: String) {
        let n = self.order;
        let mut cells = vec![0u8; (n + 1) * (n + 1)];
        for i in 0..n {
            cells[i * (n + 1)..i * (n + 1) + n].copy_from_slice(&self.cells[i * n..(i + 1) * n]);
        }
        self.cells = cells;
        self.order = n + 1;
        self.row_labels.push(label.clone());
        self.col_labels.push(label);
    }

    /// Deletes row and column `k` of a relation matrix.
    pub(crate) fn remove(&mut self, k: usize) {
        let n = self.order;
        let mut cells = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != k) {
            for c in (0..n).filter(|&c| c != k) {
                cells.push(self.cells[r * n + c]);
            }
        }
        self.cells = cells;
        self.order = n - 1;
        self.row_labels.remove(k);
        self.col_labels.remove(k);
    }

    /// Parses the matrix text format.
    pub fn parse(text: &str) -> Result<BinaryMatrix> {
        text.parse()
    }

    /// Serializes to the matrix text format (no trailing newline).
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> Error {
    Error::MalformedInput { line, reason: reason.into() }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if !text.is_ascii() {
            return Err(malformed(0, "input is not ASCII"));
        }
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

        let (line_no, header) = lines.next().ok_or_else(|| malformed(0, "missing `n` line"))?;
        let order: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", v] => v.parse().map_err(|_| malformed(line_no, format!("bad order `{v}`")))?,
            _ => return Err(malformed(line_no, "expected `n <int>`")),
        };
        if order == 0 {
            return Err(malformed(line_no, "order must be positive"));
        }

        let mut labels = None;
        let mut rows = Vec::with_capacity(order.min(256));
        for (line_no, line) in lines {
            if labels.is_none() && rows.is_empty() {
                if let Some(rest) = line.strip_prefix("labels ") {
                    let ls: Vec<String> = rest.trim().split(',').map(str::to_string).collect();
                    if ls.len() != order {
                        return Err(malformed(
                            line_no,
                            format!("{} labels for order {order}", ls.len()),
                        ));
                    }
                    check_labels(&ls).map_err(|e| match e {
                        Error::MalformedInput { reason, .. } => malformed(line_no, reason),
                        other => other,
                    })?;
                    labels = Some(ls);
                    continue;
                }
            }
            if rows.len() == order {
                return Err(malformed(line_no, format!("more than {order} rows")));
            }
            let row = line
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => Err(malformed(line_no, format!("cell `{other}` is not 0 or 1"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            if row.len() != order {
                return Err(malformed(
                    line_no,
                    format!("row has {} cells, expected {order}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != order {
            return Err(malformed(0, format!("{} rows for order {order}", rows.len())));
        }
        BinaryMatrix::new(labels.unwrap_or_else(|| generated_labels(order)), &rows)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n {}\nlabels {}", self.order, self.row_labels.join(","))?;
        for row in self.rows() {
            f.write_str("\n")?;
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Disjoint-set union with path halving.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    sets: usize,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), sets: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_unlabeled_matrix() {
        let m = BinaryMatrix::parse("n 2\n0 1\n0 0").unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(m.labels(), ["q1", "q2"]);
        assert_eq!(m.one_cells().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn parses_comments_labels_and_trailing_newline() {
        let m = BinaryMatrix::parse("# g\n# more\nn 2\nlabels a,b\n1 1\n0 1\n").unwrap();
        assert_eq!(m.labels(), ["a", "b"]);
        assert!(m.get_by_label("a", "a").unwrap());
        assert!(!m.get_by_label("b", "a").unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "n 2\n0 1\n0",
            "n 1\n2",
            "n 2\nlabels a,a\n0 1\n0 0",
            "n 2\nlabels a\n0 1\n0 0",
            "n 2\n0 1\n0 0\n1 1",
            "n 0",
            "m 2\n0 1\n0 0",
            "",
            "n 1\n0 0",
        ] {
            assert!(
                matches!(BinaryMatrix::parse(bad), Err(Error::MalformedInput { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn serializes_in_file_format() {
        assert_eq!(chain().serialize(), "n 2\nlabels q1,q2\n0 1\n0 0");
        let one = BinaryMatrix::from_rows(&[vec![0]]).unwrap();
        assert_eq!(one.serialize(), "n 1\nlabels q1\n0");
    }

    #[test]
    fn row_and_column_sums() {
        assert_eq!(zero_diagonal3().row_col_sums(), (vec![2, 2, 2], vec![2, 2, 2]));
        assert_eq!(chain().row_col_sums(), (vec![1, 0], vec![0, 1]));
        let z = BinaryMatrix::zeros(generated_labels(3)).unwrap();
        assert_eq!(z.row_col_sums(), (vec![0; 3], vec![0; 3]));
    }

    #[test]
    fn minor_deletes_row_and_column() {
        let m = zero_diagonal3();
        let a = m.minor(2, 0).unwrap();
        assert_eq!(a.rows().collect::<Vec<_>>(), vec![&[1, 1][..], &[0, 1][..]]);
        assert_eq!(a.row_labels(), ["q1", "q2"]);
        assert_eq!(a.col_labels(), ["q2", "q3"]);
        let b = m.minor(1, 1).unwrap();
        assert_eq!(b.rows().collect::<Vec<_>>(), vec![&[0, 1][..], &[1, 0][..]]);
        assert_eq!(all_ones(1).minor(0, 0), Err(Error::OrderTooSmall(1)));
        assert!(matches!(m.minor(3, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn components_and_cyclomatic_number() {
        assert_eq!(zero_diagonal3().weak_components(), 1);
        let two_chains = BinaryMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(two_chains.weak_components(), 2);
        assert_eq!(BinaryMatrix::from_rows(&[vec![0]]).unwrap().weak_components(), 1);

        assert_eq!(chain().cyclomatic_number(), 0);
        assert_eq!(cycle3().cyclomatic_number(), 1);
        // cycle-space rank on the explicit digraph
        let g = zero_diagonal3().to_digraph();
        assert_eq!(g.edge_count() as i64 - g.vertex_count() as i64 + g.weak_components() as i64, 4);
        assert_eq!(zero_diagonal3().cyclomatic_number(), 4);
    }

    #[test]
    fn vertex_digraph() {
        let g = chain().to_digraph();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!((g.edges()[0].tail, g.edges()[0].head), (0, 1));
        let lp = all_ones(1).to_digraph();
        assert_eq!((lp.edges()[0].tail, lp.edges()[0].head), (0, 0));
        let tri = cycle3().to_digraph();
        let pairs: Vec<_> = tri.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 0)]);
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = BinaryMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0u8..=1, n * n).prop_map(move |cells| {
                let rows: Vec<Vec<u8>> = cells.chunks(n).map(<[u8]>::to_vec).collect();
                BinaryMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(m in arb_matrix(8)) {
            prop_assert_eq!(BinaryMatrix::parse(&m.serialize()).unwrap(), m);
        }

        #[test]
        fn cyclomatic_matches_explicit_digraph(m in arb_matrix(8)) {
            let g = m.to_digraph();
            let rank = g.edge_count() as i64 - g.vertex_count() as i64 + g.weak_components() as i64;
            prop_assert_eq!(m.cyclomatic_number(), rank);
        }

        #[test]
        fn minor_preserves_other_cells(m in arb_matrix(8), a in 0usize..8, b in 0usize..8) {
            let n = m.order();
            prop_assume!(n >= 2);
            let (i, j) = (a % n, b % n);
            let minor = m.minor(i, j).unwrap();
            prop_assert_eq!(minor.order(), n - 1);
            for r in 0..n - 1 {
                for c in 0..n - 1 {
                    let (sr, sc) = (r + (r >= i) as usize, c + (c >= j) as usize);
                    prop_assert_eq!(minor.get(r, c), m.get(sr, sc));
                }
            }
        }
    }
}
