//! Dense matrices over a prime field, with the elimination routines the rest
//! of the crate is built on: reduced row echelon form, linear solving, kernel
//! bases and column-basis selection.

use super::field::FieldSpec;

/// A dense row-major matrix over GF(q).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = u8;
    fn index(&self, (r, c): (usize, usize)) -> &u8 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u8 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row slices. Panics if entries are not residues
    /// mod q or rows are ragged.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<u8>]) -> Mat {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            for &x in row {
                assert!(field.is_element(x), "entry {x} out of range for GF({})", field.order());
                data.push(x);
            }
        }
        Mat { field, rows: rows.len(), cols: ncols, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row count mismatch in hcat");
        assert_eq!(self.field, other.field);
        let mut m = Mat::zero(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)];
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)];
            }
        }
        m
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        let mut m = Mat::zero(self.field, row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                m[(i, j)] = self[(r, c)];
            }
        }
        m
    }

    pub fn select_cols(&self, col_idx: &[usize]) -> Mat {
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, col_idx)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let mut m = Mat::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = f.mul(a, other[(k, c)]);
                    m[(r, c)] = f.add(m[(r, c)], prod);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u8;
                for c in 0..self.cols {
                    acc = f.add(acc, f.mul(self[(r, c)], v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Reduced row echelon form. Returns the reduced matrix, the pivot columns in
/// increasing order, and the rank.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>, usize) {
    let f = m.field();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pr = 0usize; // next pivot row
    for pc in 0..a.cols() {
        // find a nonzero entry at or below pr in column pc
        let Some(sel) = (pr..a.rows()).find(|&r| a[(r, pc)] != 0) else {
            continue;
        };
        if sel != pr {
            for c in 0..a.cols() {
                let tmp = a[(sel, c)];
                a[(sel, c)] = a[(pr, c)];
                a[(pr, c)] = tmp;
            }
        }
        let inv = f.inv(a[(pr, pc)]);
        for c in 0..a.cols() {
            a[(pr, c)] = f.mul(a[(pr, c)], inv);
        }
        for r in 0..a.rows() {
            if r != pr && a[(r, pc)] != 0 {
                let factor = a[(r, pc)];
                for c in 0..a.cols() {
                    let t = f.mul(factor, a[(pr, c)]);
                    a[(r, c)] = f.sub(a[(r, c)], t);
                }
            }
        }
        pivots.push(pc);
        pr += 1;
        if pr == a.rows() {
            break;
        }
    }
    let rank = pivots.len();
    (a, pivots, rank)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).2
}

/// Solves a·X = b for X, returning None if the system is inconsistent.
/// Free variables are set to zero, so the solution is deterministic.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows(), "row count mismatch in solve");
    assert_eq!(a.field(), b.field());
    let aug = a.hcat(b);
    let (red, pivots, _) = rref(&aug);
    // a pivot in the b-part means inconsistency
    if pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    let mut x = Mat::zero(a.field(), a.cols(), b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x[(p, c)] = red[(r, a.cols() + c)];
        }
    }
    Some(x)
}

/// A basis of the null space of `a`, one kernel vector per column.
/// The column count equals cols(a) - rank(a).
pub fn kernel_basis(a: &Mat) -> Mat {
    let f = a.field();
    let (red, pivots, rank) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut k = Mat::zero(f, a.cols(), free.len());
    for (j, &fc) in free.iter().enumerate() {
        k[(fc, j)] = 1;
        for (r, &p) in pivots.iter().enumerate().take(rank) {
            k[(p, j)] = f.neg(red[(r, fc)]);
        }
    }
    k
}

/// Greedily selects a column basis, scanning `prefer` first (panicking if
/// those columns are dependent) and then the remaining columns left to right,
/// keeping a column iff it increases the rank.
pub fn column_basis(m: &Mat, prefer: Option<&[usize]>) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut cur = Mat::zero(m.field(), m.rows(), 0);
    let mut cur_rank = 0usize;
    let try_col = |c: usize, chosen: &mut Vec<usize>, cur: &mut Mat, cur_rank: &mut usize| {
        let cand = cur.hcat(&m.select_cols(&[c]));
        let r = rank(&cand);
        if r > *cur_rank {
            *cur = cand;
            *cur_rank = r;
            chosen.push(c);
            true
        } else {
            false
        }
    };
    if let Some(pref) = prefer {
        for &c in pref {
            assert!(c < m.cols(), "prefer column {c} out of range");
            let kept = try_col(c, &mut chosen, &mut cur, &mut cur_rank);
            assert!(kept, "prefer columns are linearly dependent");
        }
    }
    for c in 0..m.cols() {
        if chosen.contains(&c) {
            continue;
        }
        try_col(c, &mut chosen, &mut cur, &mut cur_rank);
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u16) -> FieldSpec {
        FieldSpec::new(q)
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let m = Mat::identity(gf(2), 3);
        let (r, pivots, rank) = rref(&m);
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_detects_dependent_row() {
        // third row is the sum of the first two over GF(2)
        let m = Mat::from_rows(
            gf(2),
            &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]],
        );
        let (_, _, rank) = rref(&m);
        assert_eq!(rank, 2);
    }

    /// Rank by exhaustive minor expansion, usable up to 5x5.
    fn rank_by_minors(m: &Mat) -> usize {
        fn det(m: &Mat, rows: &[usize], cols: &[usize]) -> u8 {
            let f = m.field();
            let n = rows.len();
            if n == 1 {
                return m[(rows[0], cols[0])];
            }
            let mut acc = 0u8;
            for (j, &c) in cols.iter().enumerate() {
                let sub_rows = &rows[1..];
                let sub_cols: Vec<usize> =
                    cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
                let minor = det(m, sub_rows, &sub_cols);
                let term = f.mul(m[(rows[0], c)], minor);
                acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        for size in (1..=m.rows().min(m.cols())).rev() {
            for rows in subsets(m.rows(), size) {
                for cols in subsets(m.cols(), size) {
                    if det(m, &rows, &cols) != 0 {
                        return size;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_rank_matches_minor_expansion_gf3() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let f = gf(3);
        for _ in 0..30 {
            let rows: Vec<Vec<u8>> =
                (0..5).map(|_| (0..5).map(|_| rng.gen_range(0..3)).collect()).collect();
            let m = Mat::from_rows(f, &rows);
            assert_eq!(rank(&m), rank_by_minors(&m));
        }
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = gf(5);
        let a = Mat::identity(f, 3);
        let b = Mat::from_rows(f, &[vec![1], vec![4], vec![2]]);
        assert_eq!(solve(&a, &b).unwrap(), b);
    }

    #[test]
    fn solve_homogeneous_underdetermined() {
        let f = gf(2);
        let a = Mat::from_rows(f, &[vec![1, 1]]);
        let b = Mat::from_rows(f, &[vec![0]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn solve_inconsistent_returns_none() {
        let f = gf(2);
        let a = Mat::from_rows(f, &[vec![1, 1], vec![0, 0]]);
        let b = Mat::from_rows(f, &[vec![0], vec![1]]);
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_basis(&Mat::identity(gf(3), 4));
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 4);
    }

    #[test]
    fn kernel_of_sum_row_gf2() {
        let a = Mat::from_rows(gf(2), &[vec![1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![1, 1]);
    }

    #[test]
    fn kernel_spans_exact_null_space_gf3() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = gf(3);
        for _ in 0..10 {
            let rows: Vec<Vec<u8>> =
                (0..4).map(|_| (0..6).map(|_| rng.gen_range(0..3)).collect()).collect();
            let m = Mat::from_rows(f, &rows);
            let k = kernel_basis(&m);
            assert_eq!(k.cols(), 6 - rank(&m));
            // every kernel column maps to zero
            for c in 0..k.cols() {
                assert!(m.mul(&k.select_cols(&[c])).is_zero());
            }
            // exhaustive: every vector in the null space lies in the span of k
            let nvecs = 3usize.pow(6);
            let mut in_null = 0usize;
            for code in 0..nvecs {
                let mut v = vec![0u8; 6];
                let mut x = code;
                for e in v.iter_mut() {
                    *e = (x % 3) as u8;
                    x /= 3;
                }
                if m.mul_vec(&v).iter().all(|&t| t == 0) {
                    in_null += 1;
                    // membership: solve k · y = v
                    let vm = Mat::from_rows(f, &v.iter().map(|&t| vec![t]).collect::<Vec<_>>());
                    assert!(solve(&k, &vm).is_some());
                }
            }
            assert_eq!(in_null, 3usize.pow(k.cols() as u32));
        }
    }

    #[test]
    fn column_basis_identity_keeps_all() {
        let m = Mat::identity(gf(2), 3);
        assert_eq!(column_basis(&m, None), vec![0, 1, 2]);
    }

    #[test]
    fn column_basis_prefers_first_duplicate() {
        let m = Mat::from_rows(gf(2), &[vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(column_basis(&m, None), vec![0, 2]);
    }

    #[test]
    fn column_basis_honors_prefer_set() {
        let m = Mat::from_rows(gf(3), &[vec![1, 2, 0], vec![0, 1, 1]]);
        let basis = column_basis(&m, Some(&[2]));
        assert!(basis.contains(&2));
        assert_eq!(rank(&m.select_cols(&basis)), rank(&m));
    }

    #[test]
    #[should_panic]
    fn column_basis_panics_on_dependent_prefer() {
        let m = Mat::from_rows(gf(2), &[vec![1, 1], vec![0, 0]]);
        column_basis(&m, Some(&[0, 1]));
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let q = *[2u16, 3, 5].iter().nth(rng.gen_range(0..3)).unwrap();
            let f = FieldSpec::new(q);
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..6);
            let rows: Vec<Vec<u8>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(0..q as u8)).collect())
                .collect();
            let m = Mat::from_rows(f, &rows);
            let (r1, p1, k1) = rref(&m);
            let (r2, p2, k2) = rref(&r1);
            prop_assert_eq!(&r1, &r2);
            prop_assert_eq!(p1, p2);
            prop_assert_eq!(k1, k2);
            // rank equals rank of the transpose
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }
    }
}
