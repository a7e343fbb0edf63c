//! Excess matrices, the quasicanonical and canonical tests, and the
//! subdivision loops that bring any relation matrix into those forms.
//!
//! For a 1-cell `(i, j)` the charge is `s_ij = rowsum_i + colsum_j`, and the
//! excess `c_ij` is how far `s_ij` sits above the smallest nonzero charge in
//! its row plus how far it sits above the smallest nonzero charge in its
//! column. A matrix is *quasicanonical* when its own excess matrix is zero
//! and so is the excess matrix of every minor taken at a 1-cell; exactly
//! those matrices are edge adjacency matrices of some digraph. It is
//! *canonical* when additionally every 1-cell has `min(rowsum, colsum) = 1`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::trace::{fresh_label, Step, TransformTrace};

/// Plain integer matrix, row-major `Vec` of rows.
pub type IntMatrix = Vec<Vec<usize>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Quasicanonical,
    Canonical,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Quasicanonical => "quasicanonical",
            CheckMode::Canonical => "canonical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Nonzero excess in the matrix itself.
    FullMatrixC,
    /// Nonzero excess in the minor taken at `minor_of`.
    MinorC,
    /// A 1-cell whose row and column both carry two or more ones.
    ComplicatedBlock,
    /// A loop in a matrix of order 1, whose minor does not exist.
    UndefinedMinor,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::FullMatrixC => "full-matrix-c",
            ViolationKind::MinorC => "minor-c",
            ViolationKind::ComplicatedBlock => "complicated-block",
            ViolationKind::UndefinedMinor => "undefined-minor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// (row label, column label) of the offending cell.
    pub cell: (String, String),
    pub value: usize,
    pub minor_of: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub mode: CheckMode,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn from_violations(mode: CheckMode, violations: Vec<Violation>) -> Self {
        CheckReport { passed: violations.is_empty(), mode, violations }
    }
}

/// Direction in which cells are visited when choosing subdivision targets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ScanOrder {
    #[default]
    RowMajor,
    ColumnMajor,
}

impl ScanOrder {
    fn cells(self, n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n * n).map(move |k| match self {
            ScanOrder::RowMajor => (k / n, k % n),
            ScanOrder::ColumnMajor => (k % n, k / n),
        })
    }
}

fn flat_s(m: &BinaryMatrix) -> Vec<usize> {
    let n = m.order();
    let (rows, cols) = m.row_col_sums();
    let mut s = vec![0; n * n];
    for (i, j) in m.one_cells() {
        s[i * n + j] = rows[i] + cols[j];
    }
    s
}

fn flat_c(m: &BinaryMatrix) -> Vec<usize> {
    let n = m.order();
    let s = flat_s(m);
    let mut row_min = vec![usize::MAX; n];
    let mut col_min = vec![usize::MAX; n];
    for (k, &v) in s.iter().enumerate() {
        if v != 0 {
            row_min[k / n] = row_min[k / n].min(v);
            col_min[k % n] = col_min[k % n].min(v);
        }
    }
    s.iter()
        .enumerate()
        .map(|(k, &v)| if v == 0 { 0 } else { (v - row_min[k / n]) + (v - col_min[k % n]) })
        .collect()
}

fn unflatten(n: usize, flat: Vec<usize>) -> IntMatrix {
    flat.chunks(n).map(<[usize]>::to_vec).collect()
}

/// `s_ij = rowsum_i + colsum_j` on 1-cells, 0 elsewhere.
pub fn s_matrix(m: &BinaryMatrix) -> IntMatrix {
    unflatten(m.order(), flat_s(m))
}

/// Row excess plus column excess of `s_ij` over the nonzero minima, on 1-cells.
pub fn c_matrix(m: &BinaryMatrix) -> IntMatrix {
    unflatten(m.order(), flat_c(m))
}

/// Nonzero excess cells of `m` as (row, col, value), row-major.
fn excess_cells(m: &BinaryMatrix) -> Vec<(usize, usize, usize)> {
    let n = m.order();
    flat_c(m).into_iter().enumerate().filter(|&(_, v)| v != 0).map(|(k, v)| (k / n, k % n, v)).collect()
}

fn label_pair(m: &BinaryMatrix, i: usize, j: usize) -> (String, String) {
    (m.row_labels()[i].clone(), m.col_labels()[j].clone())
}

/// Witnesses for the minor taken at 1-cell `(i, j)`.
fn minor_violations(m: &BinaryMatrix, i: usize, j: usize) -> Vec<Violation> {
    if m.order() == 1 {
        return vec![Violation {
            kind: ViolationKind::UndefinedMinor,
            cell: label_pair(m, i, j),
            value: 0,
            minor_of: Some(label_pair(m, i, j)),
        }];
    }
    let minor = m.minor(i, j).expect("indices of a 1-cell are in range");
    excess_cells(&minor)
        .into_iter()
        .map(|(r, c, value)| Violation {
            kind: ViolationKind::MinorC,
            cell: label_pair(&minor, r, c),
            value,
            minor_of: Some(label_pair(m, i, j)),
        })
        .collect()
}

fn quasi_violations(m: &BinaryMatrix) -> Vec<Violation> {
    let mut out: Vec<Violation> = excess_cells(m)
        .into_iter()
        .map(|(i, j, value)| Violation {
            kind: ViolationKind::FullMatrixC,
            cell: label_pair(m, i, j),
            value,
            minor_of: None,
        })
        .collect();
    for (i, j) in m.one_cells() {
        out.extend(minor_violations(m, i, j));
    }
    out
}

/// 1-cells lying in a block with at least two rows and two columns.
fn complicated_cells(m: &BinaryMatrix) -> Vec<(usize, usize, usize)> {
    let (rows, cols) = m.row_col_sums();
    m.one_cells()
        .filter(|&(i, j)| rows[i].min(cols[j]) >= 2)
        .map(|(i, j)| (i, j, rows[i].min(cols[j])))
        .collect()
}

/// Tests whether `m` is the edge adjacency matrix of some digraph: the
/// excess matrix is zero, and so is the excess matrix of the minor at every
/// 1-cell. A loop in a matrix of order 1 fails, since its minor is undefined.
pub fn quasicanonical_check(m: &BinaryMatrix) -> CheckReport {
    CheckReport::from_violations(CheckMode::Quasicanonical, quasi_violations(m))
}

/// Quasicanonical, and no 1-cell lies in a complicated block
/// (`min(rowsum, colsum) = 1` for every 1-cell).
pub fn canonical_check(m: &BinaryMatrix) -> CheckReport {
    let mut violations = quasi_violations(m);
    violations.extend(complicated_cells(m).into_iter().map(|(i, j, value)| Violation {
        kind: ViolationKind::ComplicatedBlock,
        cell: label_pair(m, i, j),
        value,
        minor_of: None,
    }));
    CheckReport::from_violations(CheckMode::Canonical, violations)
}

/// Subdivides relation `x < y` into `x < t < y`, where `t` is the smallest
/// unused label of the form `t<k>`. The new row and column go last.
pub fn delta_n(m: &BinaryMatrix, x: &str, y: &str) -> Result<(BinaryMatrix, Step)> {
    let step = Step::subdivide(x, y, fresh_label(m));
    let mut out = m.clone();
    step.apply(&mut out)?;
    Ok((out, step))
}

struct Normalizer {
    m: BinaryMatrix,
    trace: TransformTrace,
    originals: HashSet<String>,
    scan: ScanOrder,
    limit: usize,
}

impl Normalizer {
    fn new(m: &BinaryMatrix, scan: ScanOrder, limit: usize) -> Self {
        Normalizer {
            m: m.clone(),
            trace: TransformTrace::new(m.labels().to_vec()),
            originals: m.labels().iter().cloned().collect(),
            scan,
            limit,
        }
    }

    fn subdivide_all(&mut self, targets: Vec<(String, String)>) -> Result<()> {
        let mut seen = HashSet::new();
        for (x, y) in targets {
            if !seen.insert((x.clone(), y.clone())) {
                continue;
            }
            if !self.m.get_by_label(&x, &y)? {
                continue;
            }
            if self.trace.subdivisions() + 1 > self.limit {
                return Err(Error::BoundExceeded {
                    limit: self.limit,
                    used: self.trace.subdivisions() + 1,
                });
            }
            let (next, step) = delta_n(&self.m, &x, &y)?;
            self.m = next;
            self.trace.steps.push(step);
        }
        Ok(())
    }

    fn ordered(&self, cells: impl IntoIterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
        let set: HashSet<(usize, usize)> = cells.into_iter().collect();
        self.scan.cells(self.m.order()).filter(|c| set.contains(c)).collect()
    }

    /// Cells with nonzero excess in the current matrix.
    fn excess_targets(&self) -> Vec<(String, String)> {
        let cells = self.ordered(excess_cells(&self.m).into_iter().map(|(i, j, _)| (i, j)));
        cells.into_iter().map(|(i, j)| label_pair(&self.m, i, j)).collect()
    }

    /// 1-cells whose minor has nonzero excess. When such a cell touches an
    /// inserted label, the witnesses inside its minor are used instead so
    /// that only original relations are ever subdivided.
    fn minor_targets(&self) -> Vec<(String, String)> {
        let m = &self.m;
        let mut targets = Vec::new();
        for (i, j) in self.ordered(m.one_cells()) {
            let witnesses = minor_violations(m, i, j);
            if witnesses.is_empty() {
                continue;
            }
            let (x, y) = label_pair(m, i, j);
            if self.originals.contains(&x) && self.originals.contains(&y) {
                targets.push((x, y));
            } else {
                targets.extend(witnesses.into_iter().map(|w| w.cell));
            }
        }
        targets
    }

    fn quasinormalize(&mut self) -> Result<()> {
        loop {
            let targets = self.excess_targets();
            if !targets.is_empty() {
                self.subdivide_all(targets)?;
                continue;
            }
            let targets = self.minor_targets();
            if targets.is_empty() {
                return Ok(());
            }
            self.subdivide_all(targets)?;
        }
    }

    fn canonicalize(&mut self) -> Result<()> {
        loop {
            self.quasinormalize()?;
            let cells = self.ordered(complicated_cells(&self.m).into_iter().map(|(i, j, _)| (i, j)));
            if cells.is_empty() {
                return Ok(());
            }
            let targets = cells.into_iter().map(|(i, j)| label_pair(&self.m, i, j)).collect();
            self.subdivide_all(targets)?;
        }
    }
}

/// Largest number of subdivisions quasinormalization may use on an input of
/// order `n`. A lone loop is the one order-1 input that needs a subdivision.
pub fn quasi_bound(n: usize) -> usize {
    if n == 1 {
        1
    } else {
        n * n - 1
    }
}

/// Subdivides relations until the matrix is quasicanonical.
pub fn quasinormalize(m: &BinaryMatrix) -> Result<(BinaryMatrix, TransformTrace)> {
    quasinormalize_with(m, ScanOrder::RowMajor)
}

pub fn quasinormalize_with(m: &BinaryMatrix, scan: ScanOrder) -> Result<(BinaryMatrix, TransformTrace)> {
    let mut norm = Normalizer::new(m, scan, quasi_bound(m.order()));
    norm.quasinormalize()?;
    Ok((norm.m, norm.trace))
}

/// Subdivides relations until the matrix is canonical.
pub fn canonicalize(m: &BinaryMatrix) -> Result<(BinaryMatrix, TransformTrace)> {
    canonicalize_with(m, ScanOrder::RowMajor)
}

pub fn canonicalize_with(m: &BinaryMatrix, scan: ScanOrder) -> Result<(BinaryMatrix, TransformTrace)> {
    let n = m.order();
    let mut norm = Normalizer::new(m, scan, n * n);
    norm.canonicalize()?;
    Ok((norm.m, norm.trace))
}
