//! Contraction of elementary vertices (the inverse of subdivision).
//!
//! A label `a` with exactly one predecessor `x` and one successor `y`
//! (`rowsum * colsum = 1`) can be removed and replaced by the relation
//! `x < y`. Contractions that would land on an existing relation are refused,
//! since they would lower the cyclomatic number.

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::trace::{Step, TransformTrace};

/// One row of the reduction table: `alpha` removed, `(x, alpha), (alpha, y)`
/// replaced by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedRecord {
    pub alpha: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormingResult {
    pub matrix: BinaryMatrix,
    pub removed: Vec<RemovedRecord>,
    /// No elementary vertex (one in, one out) is left.
    pub fully_forming: bool,
    pub trace: TransformTrace,
}

/// `rowsum_i * colsum_i` for every label.
pub fn sigma_diagonal(m: &BinaryMatrix) -> Vec<usize> {
    let (rows, cols) = m.row_col_sums();
    rows.iter().zip(&cols).map(|(r, c)| r * c).collect()
}

fn contraction(m: &BinaryMatrix, a: usize, allow_loops: bool) -> Result<(usize, usize)> {
    let n = m.order();
    let label = &m.labels()[a];
    let sigma = sigma_diagonal(m)[a];
    if sigma != 1 {
        return Err(Error::NotContractible { label: label.clone(), sigma });
    }
    let x = (0..n).find(|&i| m.get(i, a)).expect("colsum is 1");
    let y = (0..n).find(|&j| m.get(a, j)).expect("rowsum is 1");
    if x == a || y == a {
        // a loop is the single relation of `a`
        return Err(Error::NotContractible { label: label.clone(), sigma });
    }
    if m.get(x, y) {
        return Err(Error::WouldMergeParallel {
            alpha: label.clone(),
            x: m.labels()[x].clone(),
            y: m.labels()[y].clone(),
        });
    }
    if x == y && !allow_loops {
        return Err(Error::WouldCreateLoop { alpha: label.clone(), x: m.labels()[x].clone() });
    }
    Ok((x, y))
}

/// Removes `alpha` and joins its unique predecessor to its unique successor.
pub fn reduce_step(
    m: &BinaryMatrix,
    alpha: &str,
    allow_loops: bool,
) -> Result<(BinaryMatrix, RemovedRecord)> {
    let a = m.index_of(alpha)?;
    let (x, y) = contraction(m, a, allow_loops)?;
    let record =
        RemovedRecord { alpha: alpha.to_string(), x: m.labels()[x].clone(), y: m.labels()[y].clone() };
    let mut out = m.clone();
    out.set(x, y, true);
    out.remove(a);
    Ok((out, record))
}

/// True iff no label can be contracted.
pub fn is_forming(m: &BinaryMatrix, allow_loops: bool) -> bool {
    (0..m.order()).all(|a| contraction(m, a, allow_loops).is_err())
}

fn has_elementary_vertex(m: &BinaryMatrix) -> bool {
    sigma_diagonal(m).contains(&1)
}

/// Contracts the smallest contractible label until none is left.
pub fn reduce_to_forming(m: &BinaryMatrix, allow_loops: bool) -> FormingResult {
    let mut cur = m.clone();
    let mut removed = Vec::new();
    let mut trace = TransformTrace::new(m.labels().to_vec());
    while let Some(a) = (0..cur.order()).find(|&a| contraction(&cur, a, allow_loops).is_ok()) {
        let alpha = cur.labels()[a].clone();
        let (next, record) = reduce_step(&cur, &alpha, allow_loops).expect("legal contraction");
        trace.steps.push(Step::contract(record.x.clone(), record.y.clone(), alpha));
        removed.push(record);
        cur = next;
    }
    FormingResult { fully_forming: !has_elementary_vertex(&cur), matrix: cur, removed, trace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::fixtures::*;
    use crate::normal_form::delta_n;

    fn abc(extra: &[(&'static str, &'static str)]) -> BinaryMatrix {
        let mut ones = vec![("a", "b"), ("b", "c")];
        ones.extend_from_slice(extra);
        BinaryMatrix::from_pairs(&["a", "b", "c"], &ones).unwrap()
    }

    fn cycle_abc() -> BinaryMatrix {
        abc(&[("c", "a")])
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_diagonal(&path_abc()), vec![0, 1, 0]);
        assert_eq!(sigma_diagonal(&cycle3()), vec![1, 1, 1]);
        assert_eq!(sigma_diagonal(&all_ones(2)), vec![4, 4]);
    }

    #[test]
    fn reduce_step_examples() {
        let (m, rec) = reduce_step(&path_abc(), "b", false).unwrap();
        assert_eq!(m.labels(), ["a", "c"]);
        assert_eq!(m.one_cells().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(rec, RemovedRecord { alpha: "b".into(), x: "a".into(), y: "c".into() });
        assert_eq!(m.cyclomatic_number(), 0);

        let (m, _) = reduce_step(&cycle_abc(), "b", false).unwrap();
        assert_eq!(m.one_cells().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!(m.cyclomatic_number(), 1);
        assert_eq!(cycle_abc().cyclomatic_number(), 1);

        let shortcut = abc(&[("a", "c")]);
        assert_eq!(shortcut.cyclomatic_number(), 1);
        assert!(matches!(reduce_step(&shortcut, "b", false), Err(Error::WouldMergeParallel { .. })));
        assert!(matches!(reduce_step(&path_abc(), "a", false), Err(Error::NotContractible { .. })));
    }

    #[test]
    fn loop_contraction_is_opt_in() {
        let contour = BinaryMatrix::from_pairs(&["a", "c"], &[("a", "c"), ("c", "a")]).unwrap();
        assert!(matches!(reduce_step(&contour, "c", false), Err(Error::WouldCreateLoop { .. })));
        let (m, _) = reduce_step(&contour, "c", true).unwrap();
        assert_eq!(m.labels(), ["a"]);
        assert!(m.get(0, 0));
        assert!(is_forming(&contour, false));
        assert!(!is_forming(&contour, true));
        // a lone loop has sigma 1 but nothing to contract into
        assert!(is_forming(&m, true));
    }

    #[test]
    fn reduce_to_forming_examples() {
        let r = reduce_to_forming(&path_abc(), false);
        assert_eq!(r.matrix.labels(), ["a", "c"]);
        assert_eq!(r.removed, vec![RemovedRecord { alpha: "b".into(), x: "a".into(), y: "c".into() }]);
        assert!(r.fully_forming);
        assert_eq!(r.trace.replay(&path_abc()).unwrap(), r.matrix);

        // `a` is the smallest contractible label
        let r = reduce_to_forming(&cycle_abc(), false);
        assert_eq!(r.matrix.labels(), ["b", "c"]);
        assert_eq!(r.matrix.ones(), 2);
        assert!(!r.fully_forming);

        let r = reduce_to_forming(&cycle_abc(), true);
        assert_eq!(r.matrix.order(), 1);
        assert!(!r.fully_forming);
        assert_eq!(r.matrix.cyclomatic_number(), 1);

        let r = reduce_to_forming(&chain(), false);
        assert_eq!(r.matrix, chain());
        assert!(r.removed.is_empty() && r.fully_forming);
    }

    #[test]
    fn contraction_undoes_subdivision() {
        let m = zero_diagonal3();
        let (sub, step) = delta_n(&m, "q1", "q2").unwrap();
        let (back, _) = reduce_step(&sub, &step.label, false).unwrap();
        assert_eq!(back, m);
    }
}
