//! Subspace arrangements: a matrix over GF(q) with a partition of its columns
//! into parts, each part spanning one subspace. Provides the connectivity
//! function, layout widths, the text format, and the row/column reduction
//! pipeline that bounds the instance size before dynamic programming.

mod bd;

pub use bd::{bd_width, caterpillar_bd, compute_boundaries, BdNode, BoundaryData, BranchDecomposition};

use crate::error::{Error, Result};
use crate::linalg::{column_basis, rank, rref, FieldSpec, Mat, Subspace};

/// A subspace arrangement. Part `i` spans the column space of the columns
/// listed in `partition[i]`; parts may be empty (zero-dimensional).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    matrix: Mat,
    partition: Vec<Vec<usize>>,
}

/// A permutation of part indices, `order[j]` = part placed at position j.
pub type LinearLayout = Vec<usize>;

/// Records how `row_reduce` permuted columns: `new_to_old[j]` is the original
/// index of the column now at position j.
#[derive(Clone, Debug)]
pub struct ColumnPermRecord {
    pub new_to_old: Vec<usize>,
}

impl Arrangement {
    pub fn new(matrix: Mat, partition: Vec<Vec<usize>>) -> Result<Arrangement> {
        let m = matrix.cols();
        let mut seen = vec![false; m];
        for part in &partition {
            for &c in part {
                if c >= m {
                    return Err(Error::InvalidInput(format!("column index {c} out of range")));
                }
                if seen[c] {
                    return Err(Error::InvalidInput(format!("column {c} assigned twice")));
                }
                seen[c] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidInput("some column is assigned to no part".into()));
        }
        Ok(Arrangement { matrix, partition })
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// Number of parts.
    pub fn n_parts(&self) -> usize {
        self.partition.len()
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.partition[i]
    }

    pub fn partition(&self) -> &[Vec<usize>] {
        &self.partition
    }

    /// The subspace spanned by part i.
    pub fn part_space(&self, i: usize) -> Subspace {
        Subspace::from_spanning(&self.matrix.select_cols(&self.partition[i]))
    }

    /// Span of the union of the given parts.
    pub fn span_of(&self, parts: &[usize]) -> Subspace {
        let cols = self.columns_of(parts);
        Subspace::from_spanning(&self.matrix.select_cols(&cols))
    }

    fn columns_of(&self, parts: &[usize]) -> Vec<usize> {
        let mut cols = Vec::new();
        for &p in parts {
            cols.extend_from_slice(&self.partition[p]);
        }
        cols
    }

    /// dim(span of parts in x ∩ span of the remaining parts), computed as
    /// rank(X) + rank(rest) - rank(all).
    pub fn connectivity(&self, x: &[usize]) -> usize {
        for &p in x {
            assert!(p < self.n_parts(), "part index {p} out of range");
        }
        let in_x: Vec<bool> = {
            let mut v = vec![false; self.n_parts()];
            for &p in x {
                v[p] = true;
            }
            v
        };
        let rest: Vec<usize> = (0..self.n_parts()).filter(|&p| !in_x[p]).collect();
        let cols_x = self.columns_of(x);
        let cols_rest = self.columns_of(&rest);
        let rx = rank(&self.matrix.select_cols(&cols_x));
        let rr = rank(&self.matrix.select_cols(&cols_rest));
        let mut all = cols_x.clone();
        all.extend_from_slice(&cols_rest);
        let rall = rank(&self.matrix.select_cols(&all));
        rx + rr - rall
    }

    /// Max connectivity over the proper prefixes of the layout; 0 when n <= 1.
    pub fn layout_width(&self, layout: &[usize]) -> usize {
        self.assert_layout(layout);
        let n = self.n_parts();
        if n <= 1 {
            return 0;
        }
        (1..n).map(|i| self.connectivity(&layout[..i])).max().unwrap_or(0)
    }

    pub fn assert_layout(&self, layout: &[usize]) {
        assert_eq!(layout.len(), self.n_parts(), "layout length mismatch");
        let mut seen = vec![false; self.n_parts()];
        for &p in layout {
            assert!(p < self.n_parts() && !seen[p], "layout is not a permutation");
            seen[p] = true;
        }
    }

    /// Whether the first rows() columns form an identity matrix.
    pub fn is_standard_form(&self) -> bool {
        let r = self.matrix.rows();
        if self.matrix.cols() < r {
            return false;
        }
        for i in 0..r {
            for j in 0..r {
                let want = u8::from(i == j);
                if self.matrix[(i, j)] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Restriction to a subset of parts (part j of the result is parts[j]).
    pub fn restrict_to_parts(&self, parts: &[usize]) -> Arrangement {
        let mut new_partition = Vec::with_capacity(parts.len());
        let mut cols = Vec::new();
        for &p in parts {
            let start = cols.len();
            cols.extend_from_slice(&self.partition[p]);
            new_partition.push((start..cols.len()).collect());
        }
        Arrangement { matrix: self.matrix.select_cols(&cols), partition: new_partition }
    }

    /// Parses the text format: line 1 `q r m n`; line 2 m integers in 1..n
    /// assigning each column to a part; then r rows of m entries in [0,q).
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut tok = Tokenizer::new(text);
        let q = tok.next_int("field order q")? as u16;
        if !(2..=crate::linalg::MAX_FIELD_ORDER as usize).contains(&(q as usize)) {
            return Err(Error::Parse { line: tok.line, message: format!("bad field order {q}") });
        }
        let field = std::panic::catch_unwind(|| FieldSpec::new(q)).map_err(|_| Error::Parse {
            line: tok.line,
            message: format!("field order {q} is not prime"),
        })?;
        let r = tok.next_int("row count r")?;
        let m = tok.next_int("column count m")?;
        let n = tok.next_int("part count n")?;
        let mut partition: Vec<Vec<usize>> = vec![Vec::new(); n];
        for c in 0..m {
            let p = tok.next_int("column part assignment")?;
            if p == 0 || p > n {
                return Err(Error::Parse {
                    line: tok.line,
                    message: format!("part id {p} out of range 1..{n}"),
                });
            }
            partition[p - 1].push(c);
        }
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let mut row = Vec::with_capacity(m);
            for _ in 0..m {
                let e = tok.next_int("matrix entry")?;
                if e >= q as usize {
                    return Err(Error::Parse {
                        line: tok.line,
                        message: format!("entry {e} not a residue mod {q}"),
                    });
                }
                row.push(e as u8);
            }
            rows.push(row);
        }
        if let Some(line) = tok.trailing() {
            return Err(Error::Parse { line, message: "trailing tokens after matrix".into() });
        }
        let matrix = Mat::from_rows(field, &rows);
        Arrangement::new(matrix, partition)
    }
}

pub(crate) fn parse_tokens(text: &str) -> Tokenizer<'_> {
    Tokenizer::new(text)
}

pub(crate) struct Tokenizer<'a> {
    tokens: std::vec::IntoIter<(usize, &'a str)>,
    pub line: usize,
}

impl<'a> Tokenizer<'a> {
    pub fn new(text: &'a str) -> Tokenizer<'a> {
        let mut tokens = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            for t in content.split_whitespace() {
                tokens.push((ln + 1, t));
            }
        }
        Tokenizer { tokens: tokens.into_iter(), line: 1 }
    }

    pub fn next_int(&mut self, what: &str) -> Result<usize> {
        match self.tokens.next() {
            Some((ln, t)) => {
                self.line = ln;
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: ln,
                    message: format!("expected {what}, found {t:?}"),
                })
            }
            None => Err(Error::Parse {
                line: self.line,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    pub fn trailing(&mut self) -> Option<usize> {
        self.tokens.next().map(|(ln, _)| ln)
    }
}

/// Row reduction: brings the matrix to standard form (first r' columns equal
/// the identity, r' = rank) by row operations, dropping dependent rows and
/// permuting columns. Part membership travels with each column, so every
/// layout has the same width before and after.
pub fn row_reduce(a: &Arrangement) -> (Arrangement, ColumnPermRecord) {
    let (red, pivots, rk) = rref(a.matrix());
    // keep only the first `rk` rows of the reduced matrix
    let rows: Vec<usize> = (0..rk).collect();
    let all_cols: Vec<usize> = (0..red.cols()).collect();
    let trimmed = red.submatrix(&rows, &all_cols);
    // move pivot columns to the front, preserving relative order elsewhere
    let mut new_to_old: Vec<usize> = pivots.clone();
    for c in 0..trimmed.cols() {
        if !pivots.contains(&c) {
            new_to_old.push(c);
        }
    }
    let permuted = trimmed.select_cols(&new_to_old);
    let mut old_to_new = vec![0usize; new_to_old.len()];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = new;
    }
    let partition: Vec<Vec<usize>> = a
        .partition()
        .iter()
        .map(|part| {
            let mut cols: Vec<usize> = part.iter().map(|&c| old_to_new[c]).collect();
            cols.sort_unstable();
            cols
        })
        .collect();
    (Arrangement { matrix: permuted, partition }, ColumnPermRecord { new_to_old })
}

/// Column reduction with bound θ: replaces each part's columns by a basis of
/// V_i ∩ span(rest), so every part ends with at most θ independent columns
/// and all connectivity values over part subsets are unchanged. Returns the
/// index of an offending part if some dim(V_i ∩ span(rest)) > θ.
///
/// The input must be in standard form.
pub fn column_reduce(a: &Arrangement, theta: usize) -> std::result::Result<Arrangement, usize> {
    assert!(a.is_standard_form(), "column_reduce requires standard form");
    let r = a.matrix().rows();
    let m = a.matrix().cols();
    let f = a.field();
    let n = a.n_parts();

    // For part i with identity rows Z∩I_i: V_i ∩ span(rest) is spanned by
    //  - columns of other parts restricted to rows Z∩I_i (block B), and
    //  - columns of part i restricted to the remaining rows (block C),
    // after zeroing the blocks that do not affect either column space.
    let mut part_of_col = vec![0usize; m];
    for (i, part) in a.partition().iter().enumerate() {
        for &c in part {
            part_of_col[c] = i;
        }
    }

    let mut new_cols: Vec<Vec<u8>> = Vec::new();
    let mut new_partition: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let zi: Vec<usize> = a.part(i).iter().copied().filter(|&c| c < r).collect();
        let z_not_i: Vec<usize> = (0..r).filter(|&row| !zi.contains(&row)).collect();
        let others_non_id: Vec<usize> =
            (r..m).filter(|&c| part_of_col[c] != i).collect();
        let own_non_id: Vec<usize> = a.part(i).iter().copied().filter(|&c| c >= r).collect();

        let block_b = a.matrix().submatrix(&zi, &others_non_id);
        let block_c = a.matrix().submatrix(&z_not_i, &own_non_id);
        let xs = column_basis(&block_b, None);
        let ys = column_basis(&block_c, None);
        if xs.len() + ys.len() > theta {
            return Err(i);
        }
        let mut part_cols = Vec::new();
        for &x in &xs {
            // column of B, padded with zeros on rows outside Z∩I_i
            let mut col = vec![0u8; r];
            for (bi, &row) in zi.iter().enumerate() {
                col[row] = block_b[(bi, x)];
            }
            part_cols.push(col);
        }
        for &y in &ys {
            let mut col = vec![0u8; r];
            for (ci, &row) in z_not_i.iter().enumerate() {
                col[row] = block_c[(ci, y)];
            }
            part_cols.push(col);
        }
        let start = new_cols.len();
        new_cols.extend(part_cols);
        new_partition.push((start..new_cols.len()).collect());
    }

    let rows: Vec<Vec<u8>> =
        (0..r).map(|row| new_cols.iter().map(|c| c[row]).collect()).collect();
    let matrix = if new_cols.is_empty() {
        Mat::zero(f, r, 0)
    } else {
        Mat::from_rows(f, &rows)
    };
    Ok(Arrangement { matrix, partition: new_partition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{
        adjacent_pairs_arrangement as adjacent_pairs, random_arrangement_with as random_arrangement,
        scattered_pairs_arrangement as scattered_pairs,
    };
    use rand::{Rng, SeedableRng};

    fn gf(q: u16) -> FieldSpec {
        FieldSpec::new(q)
    }

    #[test]
    fn connectivity_of_empty_and_full() {
        let a = scattered_pairs();
        assert_eq!(a.connectivity(&[]), 0);
        assert_eq!(a.connectivity(&[0, 1, 2, 3, 4, 5]), 0);
    }

    #[test]
    fn connectivity_first_three_columns() {
        let a = scattered_pairs();
        // {e1,e2,e3} vs {e2,e3,e1}: both sides span GF(2)^3
        assert_eq!(a.connectivity(&[0, 1, 2]), 3);
    }

    #[test]
    fn connectivity_is_symmetric_and_submodular() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = random_arrangement(&mut rng, 2, 4, 6, 2);
            let n = a.n_parts();
            let subsets: Vec<Vec<usize>> = (0..1usize << n)
                .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
                .collect();
            let conn: Vec<usize> = subsets.iter().map(|s| a.connectivity(s)).collect();
            for (mask, s) in subsets.iter().enumerate() {
                let comp: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
                assert_eq!(conn[mask], a.connectivity(&comp));
                let _ = s;
            }
            for x in 0..1usize << n {
                for y in 0..1usize << n {
                    let inter = x & y;
                    let union = x | y;
                    assert!(conn[x] + conn[y] >= conn[inter] + conn[union]);
                }
            }
        }
    }

    #[test]
    fn layout_width_examples() {
        let single = {
            let m = Mat::from_rows(gf(2), &[vec![1]]);
            Arrangement::new(m, vec![vec![0]]).unwrap()
        };
        assert_eq!(single.layout_width(&[0]), 0);

        let c = scattered_pairs();
        assert_eq!(c.layout_width(&[0, 1, 2, 3, 4, 5]), 3);
        let cp = adjacent_pairs();
        assert_eq!(cp.layout_width(&[0, 1, 2, 3, 4, 5]), 1);
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        let text = "# a 2x3 instance\n2 2 3 2\n1 1 2\n1 0 1\n0 1 1\n";
        let a = Arrangement::parse(text).unwrap();
        assert_eq!(a.n_parts(), 2);
        assert_eq!(a.part(0), &[0, 1]);
        assert_eq!(a.part(1), &[2]);

        let bad = "2 2 3 2\n1 1 9\n1 0 1\n0 1 1\n";
        match Arrangement::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_entry = "3 1 2 2\n1 2\n1 5\n";
        match Arrangement::parse(bad_entry) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn row_reduce_rank_one() {
        let m = Mat::from_rows(gf(2), &[vec![1, 1], vec![1, 1]]);
        let a = Arrangement::new(m, vec![vec![0], vec![1]]).unwrap();
        let (red, _) = row_reduce(&a);
        assert_eq!(red.matrix().rows(), 1);
        assert_eq!(red.matrix().cols(), 2);
        assert!(red.is_standard_form());
        assert_eq!(red.matrix().row(0), &[1, 1]);
    }

    #[test]
    fn row_reduce_standard_form_is_stable() {
        let a = scattered_pairs();
        let (red, _) = row_reduce(&a);
        assert!(red.is_standard_form());
        let (red2, _) = row_reduce(&red);
        assert_eq!(red.matrix(), red2.matrix());
    }

    #[test]
    fn row_reduce_preserves_layout_widths() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let a = random_arrangement(&mut rng, 3, 4, 5, 2);
            let (red, _) = row_reduce(&a);
            for _ in 0..10 {
                let mut layout: Vec<usize> = (0..a.n_parts()).collect();
                for i in (1..layout.len()).rev() {
                    layout.swap(i, rng.gen_range(0..=i));
                }
                assert_eq!(a.layout_width(&layout), red.layout_width(&layout));
            }
        }
    }

    #[test]
    fn column_reduce_basic_example() {
        // columns (1,0),(1,1) as part 1 and (0,1) as part 2 over GF(2), θ=1:
        // both parts shrink to one column spanning V_1 ∩ V_2.
        let m = Mat::from_rows(gf(2), &[vec![1, 1, 0], vec![0, 1, 1]]);
        let a0 = Arrangement::new(m, vec![vec![0, 1], vec![2]]).unwrap();
        let (a, _) = row_reduce(&a0);
        let before = a.connectivity(&[0]);
        assert_eq!(before, 1);
        let red = column_reduce(&a, 1).unwrap();
        assert_eq!(red.connectivity(&[0]), 1);
        assert_eq!(red.part(0).len(), 1);
        assert_eq!(red.part(1).len(), 1);
        // both parts now span the same line, the image of V_1 ∩ V_2
        let v0 = red.part_space(0);
        let v1 = red.part_space(1);
        assert_eq!(v0, v1);
        assert_eq!(v0.dim(), 1);
        assert_eq!(v0, a.part_space(0).intersection(&a.part_space(1)));
    }

    #[test]
    fn column_reduce_disjoint_parts_become_zero() {
        let m = Mat::identity(gf(2), 2);
        let a = Arrangement::new(m, vec![vec![0], vec![1]]).unwrap();
        let red = column_reduce(&a, 1).unwrap();
        assert_eq!(red.part_space(0).dim(), 0);
        assert_eq!(red.part_space(1).dim(), 0);
        assert_eq!(red.connectivity(&[0]), a.connectivity(&[0]));
    }

    #[test]
    fn column_reduce_fails_when_theta_too_small() {
        // two equal 1-dim parts intersect in dimension 1 > 0
        let m = Mat::from_rows(gf(2), &[vec![1, 1]]);
        let a = Arrangement::new(m, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(column_reduce(&a, 0), Err(0));
    }

    #[test]
    fn column_reduce_preserves_all_connectivities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let a0 = random_arrangement(&mut rng, 2, 4, 5, 2);
            let (a, _) = row_reduce(&a0);
            let theta = 4;
            let red = match column_reduce(&a, theta) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let n = a.n_parts();
            for mask in 0..1usize << n {
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(a.connectivity(&s), red.connectivity(&s));
            }
            // part columns are independent and at most theta of them
            for i in 0..n {
                assert!(red.part(i).len() <= theta.min(a.part(i).len()));
                let cols = red.matrix().select_cols(red.part(i));
                assert_eq!(rank(&cols), cols.cols());
            }
        }
    }

    #[test]
    fn pipeline_bounds_rows_and_columns() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let a0 = random_arrangement(&mut rng, 2, 6, 4, 3);
            let (a1, _) = row_reduce(&a0);
            let theta = 3;
            if let Ok(a2) = column_reduce(&a1, theta) {
                let (a3, _) = row_reduce(&a2);
                let n = a3.n_parts();
                assert!(a3.matrix().cols() <= theta * n);
                assert!(a3.matrix().rows() <= theta * n);
            }
        }
    }
}
