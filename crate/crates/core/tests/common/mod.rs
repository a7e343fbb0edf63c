#![allow(dead_code)]

use dgdual_core::BinaryMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random relation matrix with a density drawn per instance.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> BinaryMatrix {
    let density: f64 = rng.gen_range(0.1..0.9);
    let rows: Vec<Vec<u8>> =
        (0..n).map(|_| (0..n).map(|_| rng.gen_bool(density) as u8).collect()).collect();
    BinaryMatrix::from_rows(&rows).unwrap()
}

/// Every third instance is a disjoint union of two random pieces.
pub fn random_mixed(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> BinaryMatrix {
    let n = rng.gen_range(min_n..=max_n);
    if n >= 2 && rng.gen_ratio(1, 3) {
        let a = rng.gen_range(1..n);
        let left = random_matrix(rng, a);
        let right = random_matrix(rng, n - a);
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i < a, j < a) {
                        (true, true) => left.get(i, j) as u8,
                        (false, false) => right.get(i - a, j - a) as u8,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        BinaryMatrix::from_rows(&rows).unwrap()
    } else {
        random_matrix(rng, n)
    }
}

/// Rows pairwise equal or disjoint: the textbook line-digraph criterion.
pub fn rows_equal_or_disjoint(m: &BinaryMatrix) -> bool {
    let rows: Vec<&[u8]> = m.rows().collect();
    rows.iter().enumerate().all(|(i, a)| {
        rows[i + 1..].iter().all(|b| a == b || a.iter().zip(b.iter()).all(|(x, y)| x & y == 0))
    })
}
