//! Ordered logs of subdivisions and contractions.
//!
//! Text format, one step per line after a `trace v1` header:
//!
//! ```text
//! trace v1
//! S q1 q2 t1
//! C a c b
//! ```
//!
//! `S x y t` replaced the relation `x < y` by `x < t < y`; `C x y a` removed
//! `a` and joined its unique predecessor `x` to its unique successor `y`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Subdivide,
    Contract,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub kind: StepKind,
    pub x: String,
    pub y: String,
    /// The inserted label for a subdivision, the removed label for a contraction.
    pub label: String,
}

impl Step {
    pub fn subdivide(x: impl Into<String>, y: impl Into<String>, t: impl Into<String>) -> Self {
        Step { kind: StepKind::Subdivide, x: x.into(), y: y.into(), label: t.into() }
    }

    pub fn contract(x: impl Into<String>, y: impl Into<String>, a: impl Into<String>) -> Self {
        Step { kind: StepKind::Contract, x: x.into(), y: y.into(), label: a.into() }
    }

    /// Applies this step to `m`, checking that it is legal there.
    pub fn apply(&self, m: &mut BinaryMatrix) -> Result<()> {
        match self.kind {
            StepKind::Subdivide => {
                let (i, j) = (m.index_of(&self.x)?, m.index_of(&self.y)?);
                if !m.get(i, j) {
                    return Err(Error::NotARelation { x: self.x.clone(), y: self.y.clone() });
                }
                if m.index_of(&self.label).is_ok() {
                    return Err(Error::TraceMismatch(format!("label `{}` already present", self.label)));
                }
                m.set(i, j, false);
                m.grow(self.label.clone());
                let t = m.order() - 1;
                m.set(i, t, true);
                m.set(t, j, true);
            }
            StepKind::Contract => {
                let a = m.index_of(&self.label)?;
                let (i, j) = (m.index_of(&self.x)?, m.index_of(&self.y)?);
                if !m.get(i, a) || !m.get(a, j) || m.get(i, j) {
                    return Err(Error::TraceMismatch(format!(
                        "contraction of `{}` between `{}` and `{}` does not fit the matrix",
                        self.label, self.x, self.y
                    )));
                }
                m.set(i, j, true);
                m.remove(a);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransformTrace {
    pub original_labels: Vec<String>,
    pub steps: Vec<Step>,
}

impl TransformTrace {
    pub fn new(original_labels: Vec<String>) -> Self {
        TransformTrace { original_labels, steps: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn subdivisions(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Subdivide).count()
    }

    /// Labels inserted by subdivisions, in creation order.
    pub fn added_labels(&self) -> Vec<String> {
        self.steps.iter().filter(|s| s.kind == StepKind::Subdivide).map(|s| s.label.clone()).collect()
    }

    /// Replays every step on a copy of `input`.
    pub fn replay(&self, input: &BinaryMatrix) -> Result<BinaryMatrix> {
        let mut m = input.clone();
        for step in &self.steps {
            step.apply(&mut m)?;
        }
        Ok(m)
    }

    /// Checks that inserted labels are fresh and pairwise distinct.
    pub fn check_fresh_labels(&self) -> Result<()> {
        let mut seen: HashSet<&str> = self.original_labels.iter().map(String::as_str).collect();
        for label in self.added_labels().iter() {
            if !seen.insert(label.as_str()) {
                return Err(Error::TraceMismatch(format!("label `{label}` is not fresh")));
            }
        }
        Ok(())
    }

    /// Parses the text format. The original label set is not part of the
    /// file and is supplied by the caller.
    pub fn parse(text: &str, original_labels: Vec<String>) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, l)) if l.trim() == "trace v1" => {}
            _ => {
                return Err(Error::MalformedInput {
                    line: 1,
                    reason: "missing `trace v1` header".into(),
                })
            }
        }
        let mut trace = TransformTrace::new(original_labels);
        for (k, line) in lines {
            let step = match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["S", x, y, t] => Step::subdivide(*x, *y, *t),
                ["C", x, y, a] => Step::contract(*x, *y, *a),
                _ => {
                    return Err(Error::MalformedInput {
                        line: k + 1,
                        reason: format!("bad trace step `{line}`"),
                    })
                }
            };
            trace.steps.push(step);
        }
        Ok(trace)
    }
}

impl fmt::Display for TransformTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("trace v1")?;
        for s in &self.steps {
            let tag = match s.kind {
                StepKind::Subdivide => 'S',
                StepKind::Contract => 'C',
            };
            write!(f, "\n{tag} {} {} {}", s.x, s.y, s.label)?;
        }
        Ok(())
    }
}

/// Smallest `t<k>` not already used as a label of `m`.
pub(crate) fn fresh_label(m: &BinaryMatrix) -> String {
    let used: HashSet<&str> = m.labels().iter().map(String::as_str).collect();
    (1..).map(|k| format!("t{k}")).find(|l| !used.contains(l.as_str())).expect("unbounded")
}
