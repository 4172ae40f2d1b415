//! Deterministic instance generators and a few named small instances, used by
//! the test suites and benchmarks. All randomness is seeded ChaCha, so the
//! same seed always yields the same instance.

use crate::arrangement::Arrangement;
use crate::graph::Graph;
use crate::linalg::{FieldSpec, Mat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random arrangement: n parts, each spanned by 1..=max_part_cols random
/// columns in GF(q)^r.
pub fn random_arrangement(seed: u64, q: u16, r: usize, n: usize, max_part_cols: usize) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_arrangement_with(&mut rng, q, r, n, max_part_cols)
}

pub fn random_arrangement_with(
    rng: &mut impl Rng,
    q: u16,
    r: usize,
    n: usize,
    max_part_cols: usize,
) -> Arrangement {
    let f = FieldSpec::new(q);
    let mut partition = Vec::new();
    let mut cols: Vec<Vec<u8>> = Vec::new();
    for _ in 0..n {
        let d = rng.gen_range(1..=max_part_cols);
        let start = cols.len();
        for _ in 0..d {
            cols.push((0..r).map(|_| rng.gen_range(0..q as u8)).collect());
        }
        partition.push((start..cols.len()).collect());
    }
    let rows: Vec<Vec<u8>> = (0..r).map(|row| cols.iter().map(|c| c[row]).collect()).collect();
    let matrix =
        if cols.is_empty() { Mat::zero(f, r, 0) } else { Mat::from_rows(f, &rows) };
    Arrangement::new(matrix, partition).unwrap()
}

/// Random permutation of 0..n.
pub fn random_layout(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut layout: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        layout.swap(i, rng.gen_range(0..=i));
    }
    layout
}


/// The uniform matroid U_{2,4} represented over GF(3) by the columns
/// (1,0),(0,1),(1,1),(1,2); each column is its own part.
pub fn u24_arrangement() -> Arrangement {
    let m = u24_generator();
    Arrangement::new(m, (0..4).map(|c| vec![c]).collect()).unwrap()
}

pub fn u24_generator() -> Mat {
    Mat::from_rows(FieldSpec::new(3), &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]])
}

/// Generator whose equal column pairs are scattered: columns e1,e2,e3,e2,e3,e1.
pub fn scattered_pairs_generator() -> Mat {
    Mat::from_rows(
        FieldSpec::new(2),
        &[vec![1, 0, 0, 0, 0, 1], vec![0, 1, 0, 1, 0, 0], vec![0, 0, 1, 0, 1, 0]],
    )
}

/// Generator with equal column pairs adjacent: columns e1,e1,e2,e2,e3,e3.
pub fn adjacent_pairs_generator() -> Mat {
    Mat::from_rows(
        FieldSpec::new(2),
        &[vec![1, 1, 0, 0, 0, 0], vec![0, 0, 1, 1, 0, 0], vec![0, 0, 0, 0, 1, 1]],
    )
}

pub fn scattered_pairs_arrangement() -> Arrangement {
    let m = scattered_pairs_generator();
    Arrangement::new(m, (0..6).map(|c| vec![c]).collect()).unwrap()
}

pub fn adjacent_pairs_arrangement() -> Arrangement {
    let m = adjacent_pairs_generator();
    Arrangement::new(m, (0..6).map(|c| vec![c]).collect()).unwrap()
}


/// Random simple graph on n vertices with independent edge probability p.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Path graph P_n with vertices 0..n.
pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

/// Cycle graph C_n.
pub fn cycle_graph(n: usize) -> Graph {
    let mut g = path_graph(n);
    if n >= 3 {
        g.add_edge(n - 1, 0);
    }
    g
}

/// Complete graph K_n.
pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let a = random_arrangement(99, 3, 4, 5, 2);
        let b = random_arrangement(99, 3, 4, 5, 2);
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.partition(), b.partition());
        assert_ne!(random_arrangement(100, 3, 4, 5, 2).matrix(), a.matrix());
    }
}
