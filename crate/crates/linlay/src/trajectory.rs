//! The statistics calculus the dynamic program runs on.
//!
//! A statistic is a triple (L, R, λ) of two subspaces of a boundary space B
//! and a hidden intersection dimension. A trajectory is a monotone sequence
//! of statistics encoding how a partial layout interacts with B. This module
//! implements compactification, the fits-below relation, projection to a
//! smaller boundary, and path-indexed sums of two trajectories.
//!
//! All subspaces here live in coordinates relative to a declared basis of B,
//! so the ambient dimension of every statistic equals dim B.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, FieldSpec, Mat, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statistic {
    pub left: Subspace,
    pub right: Subspace,
    pub lambda: usize,
}

impl Statistic {
    pub fn new(left: Subspace, right: Subspace, lambda: usize) -> Statistic {
        assert_eq!(left.ambient_dim(), right.ambient_dim());
        Statistic { left, right, lambda }
    }

    /// Pointwise order: equal subspaces, lambda dominated.
    pub fn le(&self, other: &Statistic) -> bool {
        self.left == other.left && self.right == other.right && self.lambda <= other.lambda
    }

    fn same_spaces(&self, other: &Statistic) -> bool {
        self.left == other.left && self.right == other.right
    }
}

/// A B-trajectory: a nonempty sequence of statistics with L nondecreasing,
/// R nonincreasing, and R(first) = L(last).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trajectory {
    boundary_dim: usize,
    stats: Vec<Statistic>,
}

impl Trajectory {
    pub fn new(boundary_dim: usize, stats: Vec<Statistic>) -> Trajectory {
        assert!(!stats.is_empty(), "a trajectory has at least one statistic");
        let t = Trajectory { boundary_dim, stats };
        debug_assert!(t.is_valid(), "invalid trajectory: {t:?}");
        t
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundary_dim
    }

    pub fn len(&self) -> usize {
        self.stats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn stats(&self) -> &[Statistic] {
        &self.stats
    }

    pub fn stat(&self, i: usize) -> &Statistic {
        &self.stats[i]
    }

    pub fn field(&self) -> FieldSpec {
        self.stats[0].left.field()
    }

    /// Maximum lambda over the statistics.
    pub fn width(&self) -> usize {
        self.stats.iter().map(|s| s.lambda).max().unwrap()
    }

    pub fn is_valid(&self) -> bool {
        let d = self.boundary_dim;
        if self.stats.iter().any(|s| s.left.ambient_dim() != d || s.right.ambient_dim() != d) {
            return false;
        }
        for w in self.stats.windows(2) {
            if !w[0].left.is_subspace_of(&w[1].left) || !w[1].right.is_subspace_of(&w[0].right) {
                return false;
            }
        }
        self.stats[0].right == self.stats[self.stats.len() - 1].left
    }

    pub fn is_compact(&self) -> bool {
        compactify(self) == *self
    }
}

/// The typical sequence of a sequence of integers: both compression
/// operations applied to a fixed point. The fixed point is unique; the
/// brute-force oracle re-derives it by exhaustive operation application.
pub fn typical_sequence(xs: &[usize]) -> Vec<usize> {
    let mut s = xs.to_vec();
    loop {
        let mut changed = false;
        let before = s.len();
        s.dedup();
        changed |= s.len() != before;
        'search: for i in 0..s.len() {
            for j in (i + 2..s.len()).rev() {
                let up = (i + 1..j).all(|t| s[i] <= s[t] && s[t] <= s[j]);
                let down = (i + 1..j).all(|t| s[i] >= s[t] && s[t] >= s[j]);
                if up || down {
                    s.drain(i + 1..j);
                    changed = true;
                    break 'search;
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

/// All typical sequences over {0..=k}, generated by prefix-closed search.
pub fn enumerate_typical(k: usize) -> Vec<Vec<usize>> {
    // a prefix of a typical sequence is typical, and appending v stays
    // typical iff v differs from the last entry and closes no removable
    // interval ending at v
    fn extend(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for v in 0..=k {
            let last = *prefix.last().unwrap();
            if v == last {
                continue;
            }
            let j = prefix.len();
            let closes = (0..j.saturating_sub(1)).any(|i| {
                let up = (i + 1..j).all(|t| prefix[i] <= prefix[t] && prefix[t] <= v);
                let down = (i + 1..j).all(|t| prefix[i] >= prefix[t] && prefix[t] >= v);
                up || down
            });
            if closes {
                continue;
            }
            prefix.push(v);
            assert!(prefix.len() <= 2 * k + 1, "typical sequence length bound violated");
            extend(prefix, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..=k {
        let mut prefix = vec![v];
        extend(&mut prefix, k, &mut out);
    }
    out.sort();
    out
}

/// Compactification: within each maximal run of constant (L, R) the lambda
/// values are replaced by their typical sequence. Idempotent and
/// width-preserving; the result is extension-equivalent to the input.
pub fn compactify(t: &Trajectory) -> Trajectory {
    let mut out: Vec<Statistic> = Vec::with_capacity(t.len());
    let mut i = 0;
    while i < t.len() {
        let mut j = i + 1;
        while j < t.len() && t.stat(j).same_spaces(t.stat(i)) {
            j += 1;
        }
        let lambdas: Vec<usize> = (i..j).map(|x| t.stat(x).lambda).collect();
        for l in typical_sequence(&lambdas) {
            out.push(Statistic::new(t.stat(i).left.clone(), t.stat(i).right.clone(), l));
        }
        i = j;
    }
    Trajectory::new(t.boundary_dim(), out)
}

fn admissibility_grid(t1: &Trajectory, t2: &Trajectory) -> Vec<Vec<bool>> {
    (0..t1.len())
        .map(|i| (0..t2.len()).map(|j| t1.stat(i).le(t2.stat(j))).collect())
        .collect()
}

/// The fits-below relation: some extensions of t1 and t2 align pointwise.
/// Decided by reachability over the admissibility grid with steps right,
/// up, and diagonal.
pub fn traj_le(t1: &Trajectory, t2: &Trajectory) -> bool {
    traj_le_witness(t1, t2).is_some()
}

/// Like [`traj_le`], but returns a witnessing lattice path with diagonal
/// steps through admissible cells, as 1-based (index into t1, index into t2)
/// points from (1,1) to (len1, len2).
pub fn traj_le_witness(t1: &Trajectory, t2: &Trajectory) -> Option<Vec<(usize, usize)>> {
    assert_eq!(t1.boundary_dim(), t2.boundary_dim(), "boundary dimension mismatch");
    let (n1, n2) = (t1.len(), t2.len());
    let adm = admissibility_grid(t1, t2);
    let mut reach = vec![vec![false; n2]; n1];
    for i in 0..n1 {
        for j in 0..n2 {
            if !adm[i][j] {
                continue;
            }
            reach[i][j] = (i == 0 && j == 0)
                || (i > 0 && reach[i - 1][j])
                || (j > 0 && reach[i][j - 1])
                || (i > 0 && j > 0 && reach[i - 1][j - 1]);
        }
    }
    if !reach[n1 - 1][n2 - 1] {
        return None;
    }
    let mut path = vec![(n1, n2)];
    let (mut i, mut j) = (n1 - 1, n2 - 1);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && reach[i - 1][j - 1] {
            i -= 1;
            j -= 1;
        } else if i > 0 && reach[i - 1][j] {
            i -= 1;
        } else {
            j -= 1;
        }
        path.push((i + 1, j + 1));
    }
    path.reverse();
    Some(path)
}

/// Extension-equivalence.
pub fn traj_equiv(t1: &Trajectory, t2: &Trajectory) -> bool {
    traj_le(t1, t2) && traj_le(t2, t1)
}

/// Projection to a subspace B' of B, given in B-coordinates. Statistic-wise:
/// (L∩B', R∩B', λ + dim(L∩R) - dim(L∩R∩B')), re-expressed in the basis of B'.
pub fn project(t: &Trajectory, b_prime: &Subspace) -> Trajectory {
    assert_eq!(b_prime.ambient_dim(), t.boundary_dim(), "projection target not in B-coordinates");
    let stats = t
        .stats()
        .iter()
        .map(|s| {
            let lr = s.left.intersection(&s.right);
            let lrb = lr.intersection(b_prime);
            let lambda = s.lambda + lr.dim() - lrb.dim();
            let left = s.left.intersection(b_prime).coordinates_in(b_prime);
            let right = s.right.intersection(b_prime).coordinates_in(b_prime);
            Statistic::new(left, right, lambda)
        })
        .collect();
    Trajectory::new(b_prime.dim(), stats)
}

/// Re-expresses a trajectory in the coordinates of a larger boundary space.
/// `transition` maps old B-coordinates to new B'-coordinates (dim B' rows,
/// dim B columns). The statistics are unchanged as subspaces.
pub fn transport(t: &Trajectory, transition: &Mat) -> Trajectory {
    assert_eq!(transition.cols(), t.boundary_dim(), "transition dimension mismatch");
    let stats = t
        .stats()
        .iter()
        .map(|s| {
            Statistic::new(s.left.map_through(transition), s.right.map_through(transition), s.lambda)
        })
        .collect();
    Trajectory::new(transition.rows(), stats)
}

/// Visits every plain lattice path from (1,1) to (a,b) as a slice of 1-based
/// points. The number of paths is C(a+b-2, a-1).
pub fn for_each_plain_path(a: usize, b: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    let mut path = Vec::with_capacity(a + b - 1);
    fn rec(x: usize, y: usize, a: usize, b: usize, path: &mut Vec<(usize, usize)>, f: &mut impl FnMut(&[(usize, usize)])) {
        path.push((x, y));
        if x == a && y == b {
            f(path);
        } else {
            if x < a {
                rec(x + 1, y, a, b, path, f);
            }
            if y < b {
                rec(x, y + 1, a, b, path, f);
            }
        }
        path.pop();
    }
    rec(1, 1, a, b, &mut path, f);
}

/// Sum of two trajectories along a plain lattice path from (1,1) to
/// (len1, len2). Entry i is t1(x_i) * t2(y_i) shifted by the correction
/// dim(R(t1(1)) ∩ R(t2(1))) - dim((L1+R1) ∩ (L2+R2)) at the path point.
pub fn sum_along_path(t1: &Trajectory, t2: &Trajectory, path: &[(usize, usize)]) -> Trajectory {
    assert_eq!(t1.boundary_dim(), t2.boundary_dim(), "boundary dimension mismatch");
    assert_eq!(path.first(), Some(&(1, 1)), "path must start at (1,1)");
    assert_eq!(path.last(), Some(&(t1.len(), t2.len())), "path must end at (len1, len2)");
    assert_eq!(path.len(), t1.len() + t2.len() - 1, "path must use plain steps only");
    for w in path.windows(2) {
        let dx = w[1].0 - w[0].0;
        let dy = w[1].1 - w[0].1;
        assert!(dx + dy == 1, "path step must be (1,0) or (0,1)");
    }
    let corr_base = t1.stat(0).right.intersection(&t2.stat(0).right).dim();
    let stats = path
        .iter()
        .map(|&(x, y)| {
            let s1 = t1.stat(x - 1);
            let s2 = t2.stat(y - 1);
            let left = s1.left.sum(&s2.left);
            let right = s1.right.sum(&s2.right);
            let open1 = s1.left.sum(&s1.right);
            let open2 = s2.left.sum(&s2.right);
            let cross = open1.intersection(&open2).dim();
            debug_assert!(corr_base >= cross);
            let lambda = s1.lambda + s2.lambda + corr_base - cross;
            Statistic::new(left, right, lambda)
        })
        .collect();
    Trajectory::new(t1.boundary_dim(), stats)
}

/// The sum set: compactified sums over all plain lattice paths, deduplicated
/// and sorted.
pub fn sum_set(t1: &Trajectory, t2: &Trajectory) -> Vec<Trajectory> {
    let mut out = Vec::new();
    for_each_plain_path(t1.len(), t2.len(), &mut |path| {
        out.push(compactify(&sum_along_path(t1, t2, path)));
    });
    out.sort();
    out.dedup();
    out
}

/// The canonical B-trajectory of a layout: statistic i traces the prefix
/// V_1+..+V_{i-1} and suffix V_i+..+V_m against B. `b_basis` is a matrix of
/// independent columns spanning B in the arrangement's ambient space; the
/// output statistics are in coordinates relative to those columns.
pub fn canonical_trajectory(a: &Arrangement, layout: &[usize], b_basis: &Mat) -> Trajectory {
    a.assert_layout(layout);
    assert_eq!(b_basis.rows(), a.matrix().rows(), "boundary basis ambient mismatch");
    let f = a.field();
    let r = a.matrix().rows();
    let n = layout.len();
    let b_space = Subspace::from_spanning(b_basis);
    assert_eq!(b_space.dim(), b_basis.cols(), "boundary basis columns are dependent");
    let b_sub = BasisView { basis: b_basis, space: &b_space };

    let mut prefixes = Vec::with_capacity(n + 1);
    prefixes.push(Subspace::zero(f, r));
    for i in 0..n {
        let next = prefixes[i].sum(&a.part_space(layout[i]));
        prefixes.push(next);
    }
    let mut suffixes = vec![Subspace::zero(f, r); n + 2];
    for i in (1..=n).rev() {
        suffixes[i] = suffixes[i + 1].sum(&a.part_space(layout[i - 1]));
    }

    let stats = (1..=n + 1)
        .map(|i| {
            let p = &prefixes[i - 1];
            let s = &suffixes[i];
            let left = b_sub.coords_of(&p.intersection(&b_space));
            let right = b_sub.coords_of(&s.intersection(&b_space));
            let ps = p.intersection(s);
            let lambda = ps.dim() - ps.intersection(&b_space).dim();
            Statistic::new(left, right, lambda)
        })
        .collect();
    Trajectory::new(b_basis.cols(), stats)
}

/// Coordinates relative to an explicit (not necessarily canonical) basis.
struct BasisView<'a> {
    basis: &'a Mat,
    space: &'a Subspace,
}

impl BasisView<'_> {
    fn coords_of(&self, sub: &Subspace) -> Subspace {
        debug_assert!(sub.is_subspace_of(self.space));
        if sub.is_zero() {
            return Subspace::zero(self.basis.field(), self.basis.cols());
        }
        let coords = crate::linalg::solve(self.basis, sub.basis())
            .expect("subspace not contained in the declared boundary space");
        Subspace::from_spanning(&coords)
    }
}

/// All compact B-trajectories of width at most k over a boundary of dimension
/// at most 2, for k at most 2. This is a test oracle; the production DP never
/// materializes this set. Errors out if the gate or the element cap is
/// exceeded.
pub fn enumerate_uk(boundary: &Subspace, k: usize) -> Result<Vec<Trajectory>> {
    let d = boundary.dim();
    if d > 2 {
        return Err(Error::SizeLimit { what: "enumerate_uk boundary dimension", limit: 2, actual: d });
    }
    if k > 2 {
        return Err(Error::SizeLimit { what: "enumerate_uk width bound", limit: 2, actual: k });
    }
    const CAP: usize = 2_000_000;
    let f = boundary.field();
    let subspaces = all_subspaces(f, d);
    let typicals = enumerate_typical(k);

    // run structures: sequences of distinct (L, R) pairs with L nondecreasing
    // and R nonincreasing; each run carries one typical lambda sequence
    let mut out: Vec<Trajectory> = Vec::new();
    struct Ctx<'a> {
        subspaces: &'a [Subspace],
        typicals: &'a [Vec<usize>],
        d: usize,
    }
    fn emit(runs: &[(usize, usize)], ctx: &Ctx, out: &mut Vec<Trajectory>) -> Result<()> {
        // R of the first statistic must equal L of the last
        if ctx.subspaces[runs[0].1] != ctx.subspaces[runs[runs.len() - 1].0] {
            return Ok(());
        }
        // assign every run a typical sequence
        fn assign(
            idx: usize,
            runs: &[(usize, usize)],
            ctx: &Ctx,
            acc: &mut Vec<Statistic>,
            out: &mut Vec<Trajectory>,
        ) -> Result<()> {
            if idx == runs.len() {
                out.push(Trajectory::new(ctx.d, acc.clone()));
                if out.len() > 2_000_000 {
                    return Err(Error::SizeLimit {
                        what: "enumerate_uk element count",
                        limit: 2_000_000,
                        actual: out.len(),
                    });
                }
                return Ok(());
            }
            let (li, ri) = runs[idx];
            for t in ctx.typicals {
                let start = acc.len();
                for &l in t {
                    acc.push(Statistic::new(
                        ctx.subspaces[li].clone(),
                        ctx.subspaces[ri].clone(),
                        l,
                    ));
                }
                assign(idx + 1, runs, ctx, acc, out)?;
                acc.truncate(start);
            }
            Ok(())
        }
        let mut acc = Vec::new();
        assign(0, runs, ctx, &mut acc, out)
    }
    fn grow(
        runs: &mut Vec<(usize, usize)>,
        max_runs: usize,
        ctx: &Ctx,
        out: &mut Vec<Trajectory>,
    ) -> Result<()> {
        emit(runs, ctx, out)?;
        if runs.len() == max_runs {
            return Ok(());
        }
        let (ll, lr) = *runs.last().unwrap();
        for (nl, l) in ctx.subspaces.iter().enumerate() {
            if !ctx.subspaces[ll].is_subspace_of(l) {
                continue;
            }
            for (nr, r) in ctx.subspaces.iter().enumerate() {
                if (nl, nr) == (ll, lr) {
                    continue;
                }
                if !r.is_subspace_of(&ctx.subspaces[lr]) {
                    continue;
                }
                runs.push((nl, nr));
                grow(runs, max_runs, ctx, out)?;
                runs.pop();
            }
        }
        Ok(())
    }
    let ctx = Ctx { subspaces: &subspaces, typicals: &typicals, d };
    let max_runs = 2 * d + 1;
    for li in 0..subspaces.len() {
        for ri in 0..subspaces.len() {
            let mut runs = vec![(li, ri)];
            grow(&mut runs, max_runs, &ctx, &mut out)?;
        }
    }
    if out.len() > CAP {
        return Err(Error::SizeLimit { what: "enumerate_uk element count", limit: CAP, actual: out.len() });
    }
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|t| t.is_compact() && t.width() <= k));
    Ok(out)
}

/// A trajectory over B = {0}: statistics are determined by their lambdas.
pub fn zero_boundary_trajectory(f: FieldSpec, lambdas: &[usize]) -> Trajectory {
    let z = Subspace::zero(f, 0);
    Trajectory::new(
        0,
        lambdas.iter().map(|&l| Statistic::new(z.clone(), z.clone(), l)).collect(),
    )
}
