//! Full-set dynamic programming over a branch-decomposition.
//!
//! A full set at a node collects the compact width-<=k trajectories that
//! dominate some trajectory realizable by a layout of the parts under the
//! node. Full sets are upward closed under the fits-below relation, so they
//! are represented here by their minimal elements: an antichain of certified
//! trajectories. Every element carries a certificate recording how it was
//! composed (leaf, expand, join, shrink), which the backtracking pass walks
//! to print an actual layout.

use crate::arrangement::{Arrangement, BdNode, BranchDecomposition};
use crate::linalg::{FieldSpec, Mat, Subspace};
use crate::trajectory::{
    compactify, for_each_plain_path, project, sum_along_path, traj_le, traj_le_witness, transport,
    Statistic, Trajectory,
};
use std::sync::Arc;

/// Knobs for the dynamic program. `parallel` is honored only when the crate
/// is built with the `parallel` feature; otherwise everything is sequential.
#[derive(Clone, Copy, Debug)]
pub struct DpOptions {
    pub parallel: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { parallel: cfg!(feature = "parallel") }
    }
}

/// One element of a full set: a trajectory plus the certificate of how it
/// arose. Certificates form a DAG since children are shared.
#[derive(Debug)]
pub struct CertNode {
    pub traj: Trajectory,
    pub kind: CertKind,
}

#[derive(Debug)]
pub enum CertKind {
    /// The canonical trajectory of the single part at a leaf.
    Leaf { part: usize },
    /// `child` fits below this trajectory; `ext_map[j]` (1-based) is the
    /// child index aligned with statistic j+1, nondecreasing, ending at the
    /// child's length. Used for re-coordinatizations and compactifications.
    Up { child: Arc<CertNode>, ext_map: Vec<usize> },
    /// Sum of the children along the stored plain lattice path.
    Join { left: Arc<CertNode>, right: Arc<CertNode>, path: Vec<(usize, usize)> },
    /// Statistic-wise projection of the child (same length).
    Shrink { child: Arc<CertNode> },
}

/// An antichain of certified compact trajectories of width at most k over a
/// boundary of the given dimension. Its upward closure within the compact
/// width-<=k trajectories is the full set it represents.
#[derive(Clone, Debug)]
pub struct FullSetRep {
    pub boundary_dim: usize,
    pub k: usize,
    pub elems: Vec<Arc<CertNode>>,
}

impl FullSetRep {
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }
}

/// Wraps `node` in an Up certificate carrying its compactification, unless it
/// is already compact.
fn compact_cert(node: Arc<CertNode>) -> Arc<CertNode> {
    let c = compactify(&node.traj);
    if c == node.traj {
        return node;
    }
    let ext_map = extension_map(&node.traj, &c);
    Arc::new(CertNode { traj: c, kind: CertKind::Up { child: node, ext_map } })
}

/// For child fits-below parent, returns x_1..x_{|parent|} such that the
/// witnessing diagonal-step lattice path passes through (x_j, j), with
/// x_1 = 1 and x_{|parent|} = |child|.
fn extension_map(child: &Trajectory, parent: &Trajectory) -> Vec<usize> {
    let path = traj_le_witness(child, parent)
        .expect("extension_map: child does not fit below parent");
    let mut xs = vec![usize::MAX; parent.len()];
    for &(x, j) in &path {
        let slot = &mut xs[j - 1];
        *slot = (*slot).min(x);
    }
    xs[parent.len() - 1] = child.len();
    debug_assert!(xs[0] == 1);
    debug_assert!(xs.windows(2).all(|w| w[0] <= w[1]));
    xs
}

fn sort_key(t: &Trajectory) -> (usize, usize) {
    (t.width(), t.len())
}

/// Deduplicates candidates and keeps only the fits-below-minimal ones.
/// Deterministic: candidates are sorted by (width, length, structure) and
/// inserted in that order.
fn prune_to_antichain(mut cands: Vec<Arc<CertNode>>) -> Vec<Arc<CertNode>> {
    cands.sort_by(|a, b| sort_key(&a.traj).cmp(&sort_key(&b.traj)).then_with(|| a.traj.cmp(&b.traj)));
    cands.dedup_by(|a, b| a.traj == b.traj);
    let mut kept: Vec<Arc<CertNode>> = Vec::new();
    for c in cands {
        if kept.iter().any(|d| traj_le(&d.traj, &c.traj)) {
            continue;
        }
        kept.retain(|d| !traj_le(&c.traj, &d.traj));
        kept.push(c);
    }
    kept.sort_by(|a, b| sort_key(&a.traj).cmp(&sort_key(&b.traj)).then_with(|| a.traj.cmp(&b.traj)));
    kept
}

/// Full set of a single part at a leaf with boundary space B_v (given in its
/// own coordinates, so only the dimension and field matter). The unique
/// layout of one part has the canonical trajectory ({0},B,0),(B,{0},0).
pub fn init_leaf(part: usize, field: FieldSpec, boundary_dim: usize, k: usize) -> FullSetRep {
    let traj = if boundary_dim == 0 {
        let z = Subspace::zero(field, 0);
        Trajectory::new(0, vec![Statistic::new(z.clone(), z, 0)])
    } else {
        let z = Subspace::zero(field, boundary_dim);
        let b = Subspace::full(field, boundary_dim);
        Trajectory::new(
            boundary_dim,
            vec![Statistic::new(z.clone(), b.clone(), 0), Statistic::new(b, z, 0)],
        )
    };
    debug_assert!(traj.is_compact());
    let elem = Arc::new(CertNode { traj, kind: CertKind::Leaf { part } });
    FullSetRep { boundary_dim, k, elems: vec![elem] }
}

/// Expands a full set to a larger boundary space B'. `transition` maps old
/// B-coordinates to B'-coordinates. Statistics are unchanged as subspaces, so
/// the antichain transfers element by element.
pub fn expand(fs: &FullSetRep, transition: &Mat, k: usize) -> FullSetRep {
    assert_eq!(transition.cols(), fs.boundary_dim, "transition dimension mismatch");
    let elems = fs
        .elems
        .iter()
        .map(|e| {
            let traj = transport(&e.traj, transition);
            let ext_map = (1..=traj.len()).collect();
            Arc::new(CertNode { traj, kind: CertKind::Up { child: Arc::clone(e), ext_map } })
        })
        .collect();
    FullSetRep { boundary_dim: transition.rows(), k, elems }
}

fn candidates_for_pair(e1: &Arc<CertNode>, e2: &Arc<CertNode>, k: usize) -> Vec<Arc<CertNode>> {
    let mut out = Vec::new();
    for_each_plain_path(e1.traj.len(), e2.traj.len(), &mut |path| {
        let s = sum_along_path(&e1.traj, &e2.traj, path);
        if s.width() > k {
            return;
        }
        let node = Arc::new(CertNode {
            traj: s,
            kind: CertKind::Join {
                left: Arc::clone(e1),
                right: Arc::clone(e2),
                path: path.to_vec(),
            },
        });
        out.push(compact_cert(node));
    });
    out.sort_by(|a, b| a.traj.cmp(&b.traj));
    out.dedup_by(|a, b| a.traj == b.traj);
    out
}

/// Joins two full sets over the same boundary: all path-indexed sums of all
/// element pairs, width-filtered, compactified, pruned to an antichain.
/// Discarding sums wider than k is sound because fits-below never decreases
/// width.
pub fn join(fs1: &FullSetRep, fs2: &FullSetRep, k: usize, opts: &DpOptions) -> FullSetRep {
    assert_eq!(fs1.boundary_dim, fs2.boundary_dim, "boundary dimension mismatch");
    let pairs: Vec<(usize, usize)> = (0..fs1.elems.len())
        .flat_map(|i| (0..fs2.elems.len()).map(move |j| (i, j)))
        .collect();
    let per_pair = |&(i, j): &(usize, usize)| candidates_for_pair(&fs1.elems[i], &fs2.elems[j], k);
    #[cfg(feature = "parallel")]
    let cands: Vec<Vec<Arc<CertNode>>> = if opts.parallel {
        use rayon::prelude::*;
        pairs.par_iter().map(per_pair).collect()
    } else {
        pairs.iter().map(per_pair).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cands: Vec<Vec<Arc<CertNode>>> = {
        let _ = opts;
        pairs.iter().map(per_pair).collect()
    };
    let flat: Vec<Arc<CertNode>> = cands.into_iter().flatten().collect();
    FullSetRep { boundary_dim: fs1.boundary_dim, k, elems: prune_to_antichain(flat) }
}

/// Shrinks a full set to a subspace of its boundary (given in the current
/// B-coordinates): project every element, compactify, drop anything wider
/// than k, prune.
pub fn shrink(fs: &FullSetRep, target: &Subspace, k: usize) -> FullSetRep {
    assert_eq!(target.ambient_dim(), fs.boundary_dim, "shrink target not in B-coordinates");
    let mut cands = Vec::with_capacity(fs.elems.len());
    for e in &fs.elems {
        let projected = project(&e.traj, target);
        if projected.width() > k {
            continue;
        }
        let node = Arc::new(CertNode {
            traj: projected,
            kind: CertKind::Shrink { child: Arc::clone(e) },
        });
        cands.push(compact_cert(node));
    }
    FullSetRep { boundary_dim: target.dim(), k, elems: prune_to_antichain(cands) }
}

/// Runs the full-set dynamic program over a branch-decomposition with
/// computed boundaries, returning the full set of every node (indexed by
/// node id). Nodes are processed farthest-from-the-root first, ties by
/// index.
pub fn run_dp_nodes(
    a: &Arrangement,
    bd: &BranchDecomposition,
    k: usize,
    opts: &DpOptions,
) -> Vec<FullSetRep> {
    assert!(bd.validate_for(a), "branch decomposition does not match the arrangement");
    let b = bd.boundaries();
    let f = a.field();
    let mut sets: Vec<Option<FullSetRep>> = (0..bd.n_nodes()).map(|_| None).collect();
    for v in bd.postorder() {
        let fs = match bd.node(v) {
            BdNode::Leaf { part } => init_leaf(*part, f, b.basis[v].cols(), k),
            BdNode::Internal { children } => {
                let [w1, w2] = *children;
                let joint = b.joint_basis[v].as_ref().unwrap();
                let [t1, t2] = b.transitions[v].as_ref().unwrap();
                let e1 = expand(sets[w1].as_ref().unwrap(), t1, k);
                let e2 = expand(sets[w2].as_ref().unwrap(), t2, k);
                let joined = join(&e1, &e2, k, opts);
                // B_v sits inside the joint basis as its first dim(B_v)
                // columns, so the shrink target is the coordinate subspace
                let d_v = b.basis[v].cols();
                let mut prefix = Mat::zero(f, joint.cols(), d_v);
                for i in 0..d_v {
                    prefix[(i, i)] = 1;
                }
                shrink(&joined, &Subspace::from_spanning(&prefix), k)
            }
        };
        sets[v] = Some(fs);
    }
    sets.into_iter().map(Option::unwrap).collect()
}

/// The root full set; nonempty iff the arrangement under the decomposition
/// admits a layout of width at most k.
pub fn run_dp(a: &Arrangement, bd: &BranchDecomposition, k: usize, opts: &DpOptions) -> FullSetRep {
    let root = bd.root();
    run_dp_nodes(a, bd, k, opts).swap_remove(root)
}

/// Minimum-width element; ties broken by length, then structure.
pub fn min_width_element(fs: &FullSetRep) -> Option<&Arc<CertNode>> {
    fs.elems
        .iter()
        .min_by(|a, b| sort_key(&a.traj).cmp(&sort_key(&b.traj)).then_with(|| a.traj.cmp(&b.traj)))
}

/// Reconstructs a linear layout from a root full-set element by walking its
/// certificate DAG. Parts at leaves whose boundary space is {0} are emitted
/// first (their position never affects any cut); the rest are placed by
/// recursing through the gaps of each trajectory.
pub fn backtrack(elem: &Arc<CertNode>, bd: &BranchDecomposition) -> Vec<usize> {
    let b = bd.boundaries();
    let mut layout: Vec<usize> = Vec::new();
    // zero-boundary leaves first, in part order
    let mut front: Vec<usize> = (0..bd.n_nodes())
        .filter_map(|v| match bd.node(v) {
            BdNode::Leaf { part } if b.basis[v].cols() == 0 => Some(*part),
            _ => None,
        })
        .collect();
    front.sort_unstable();
    layout.extend_from_slice(&front);

    fn emit(node: &CertNode, gap: usize, out: &mut Vec<usize>) {
        debug_assert!(gap >= 1 && gap < node.traj.len());
        match &node.kind {
            CertKind::Leaf { part } => {
                debug_assert_eq!(gap, 1);
                out.push(*part);
            }
            CertKind::Up { child, ext_map } => {
                for j in ext_map[gap - 1]..ext_map[gap] {
                    emit(child, j, out);
                }
            }
            CertKind::Join { left, right, path } => {
                let (x, y) = path[gap - 1];
                let (nx, ny) = path[gap];
                if nx == x + 1 && ny == y {
                    emit(left, x, out);
                } else {
                    emit(right, y, out);
                }
            }
            CertKind::Shrink { child } => emit(child, gap, out),
        }
    }
    for gap in 1..elem.traj.len() {
        emit(elem, gap, &mut layout);
    }
    layout
}

/// Literal-mode reference route: the paper's full sets computed by raw
/// trajectory composition with no pruning, no compactification and no width
/// filtering. Together with [`crate::trajectory::enumerate_uk`] this lets
/// tests materialize full sets exactly and compare them with the antichain
/// representation.
pub mod literal {
    use super::*;
    use crate::error::Result;

    /// Generator sets per node: at a leaf the canonical two-statistic
    /// trajectory; at an internal node every path-indexed sum of the
    /// children's generators (transported to the joint basis), projected to
    /// the node boundary. The full set of node v is the upward closure of
    /// `generators[v]` within the compact width-<=k trajectories.
    pub fn generators(a: &Arrangement, bd: &BranchDecomposition) -> Vec<Vec<Trajectory>> {
        assert!(bd.validate_for(a));
        let b = bd.boundaries();
        let f = a.field();
        let mut gens: Vec<Vec<Trajectory>> = vec![Vec::new(); bd.n_nodes()];
        for v in bd.postorder() {
            gens[v] = match bd.node(v) {
                BdNode::Leaf { .. } => {
                    let d = b.basis[v].cols();
                    let t = if d == 0 {
                        let z = Subspace::zero(f, 0);
                        Trajectory::new(0, vec![Statistic::new(z.clone(), z, 0)])
                    } else {
                        let z = Subspace::zero(f, d);
                        let full = Subspace::full(f, d);
                        Trajectory::new(
                            d,
                            vec![
                                Statistic::new(z.clone(), full.clone(), 0),
                                Statistic::new(full, z, 0),
                            ],
                        )
                    };
                    vec![t]
                }
                BdNode::Internal { children } => {
                    let [w1, w2] = *children;
                    let [t1, t2] = b.transitions[v].as_ref().unwrap();
                    let joint_dim = b.joint_basis[v].as_ref().unwrap().cols();
                    let d_v = b.basis[v].cols();
                    let mut prefix = Mat::zero(f, joint_dim, d_v);
                    for i in 0..d_v {
                        prefix[(i, i)] = 1;
                    }
                    let target = Subspace::from_spanning(&prefix);
                    let g1: Vec<Trajectory> =
                        gens[w1].iter().map(|t| transport(t, t1)).collect();
                    let g2: Vec<Trajectory> =
                        gens[w2].iter().map(|t| transport(t, t2)).collect();
                    let mut out = Vec::new();
                    for a1 in &g1 {
                        for a2 in &g2 {
                            for_each_plain_path(a1.len(), a2.len(), &mut |path| {
                                out.push(project(&sum_along_path(a1, a2, path), &target));
                            });
                        }
                    }
                    out.sort();
                    out.dedup();
                    out
                }
            };
        }
        gens
    }

    /// Materialized full set at a node: all members of U_k(B_v) dominating
    /// some generator.
    pub fn full_set_in_uk(
        generators: &[Trajectory],
        boundary: &Subspace,
        k: usize,
    ) -> Result<Vec<Trajectory>> {
        let uk = crate::trajectory::enumerate_uk(boundary, k)?;
        Ok(membership(generators, &uk))
    }

    /// Members of `uk` dominating some generator.
    pub fn membership(generators: &[Trajectory], uk: &[Trajectory]) -> Vec<Trajectory> {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            uk.par_iter()
                .filter(|g| generators.iter().any(|d| traj_le(d, g)))
                .cloned()
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            uk.iter()
                .filter(|g| generators.iter().any(|d| traj_le(d, g)))
                .cloned()
                .collect()
        }
    }

    /// Whether the antichain and the generator set have identical upward
    /// closures within the compact width-<=k trajectories. Equivalent to
    /// materializing U_k and comparing memberships: closures agree iff the
    /// generator sets dominate each other elementwise (fits-below is
    /// transitive and compactification is extension-equivalent).
    pub fn same_closure(antichain: &FullSetRep, generators: &[Trajectory], k: usize) -> bool {
        let forward = antichain
            .elems
            .iter()
            .all(|s| generators.iter().any(|g| traj_le(g, &s.traj)));
        let backward = generators
            .iter()
            .filter(|g| g.width() <= k)
            .all(|g| antichain.elems.iter().any(|s| traj_le(&s.traj, g)));
        forward && backward
    }
}
