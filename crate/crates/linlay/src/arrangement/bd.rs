//! Rooted branch-decompositions of an arrangement, with per-node boundary
//! bases and child-to-parent transition matrices for the dynamic program.

use super::{row_reduce, Arrangement};
use crate::linalg::{column_basis, solve, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BdNode {
    Leaf { part: usize },
    Internal { children: [usize; 2] },
}

/// A rooted binary directed tree whose leaves are in bijection with the parts
/// of an arrangement. Requires n >= 2 parts.
#[derive(Clone, Debug)]
pub struct BranchDecomposition {
    nodes: Vec<BdNode>,
    parent: Vec<Option<usize>>,
    root: usize,
    boundaries: Option<BoundaryData>,
}

/// Boundary bases per node. All matrices are in the coordinates of `reduced`,
/// the row-reduced copy of the arrangement the bases were computed from.
#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub reduced: Arrangement,
    /// Basis of the boundary space B_v, one r x dim(B_v) matrix per node.
    pub basis: Vec<Mat>,
    /// At internal nodes, a basis of B_{w1} + B_{w2} whose first dim(B_v)
    /// columns are exactly `basis[v]`.
    pub joint_basis: Vec<Option<Mat>>,
    /// At internal nodes, transition matrices T_{w1}, T_{w2} with
    /// joint_basis[v] . T_{wi} = basis[w_i].
    pub transitions: Vec<Option<[Mat; 2]>>,
}

impl BranchDecomposition {
    /// Builds a decomposition from an unrooted subcubic tree given by its
    /// adjacency lists and the leaf -> part map. The tree is rooted by
    /// subdividing the edge incident to the leaf of the lowest part index.
    pub fn from_unrooted(adjacency: &[Vec<usize>], leaf_part: &[Option<usize>]) -> BranchDecomposition {
        let n_nodes = adjacency.len();
        for (v, adj) in adjacency.iter().enumerate() {
            match leaf_part[v] {
                Some(_) => assert_eq!(adj.len(), 1, "leaf {v} must have degree 1"),
                None => assert_eq!(adj.len(), 3, "internal node {v} must have degree 3"),
            }
        }
        let (anchor, _) = leaf_part
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .min_by_key(|&(_, p)| p)
            .expect("tree has no leaves");

        let mut nodes = Vec::new();
        let mut parent = Vec::new();
        // recursively orient away from the anchor leaf
        fn build(
            v: usize,
            from: usize,
            adjacency: &[Vec<usize>],
            leaf_part: &[Option<usize>],
            nodes: &mut Vec<BdNode>,
            parent: &mut Vec<Option<usize>>,
        ) -> usize {
            let id = nodes.len();
            match leaf_part[v] {
                Some(p) => {
                    nodes.push(BdNode::Leaf { part: p });
                    parent.push(None);
                    id
                }
                None => {
                    nodes.push(BdNode::Internal { children: [usize::MAX; 2] });
                    parent.push(None);
                    let kids: Vec<usize> =
                        adjacency[v].iter().copied().filter(|&w| w != from).collect();
                    debug_assert_eq!(kids.len(), 2);
                    let c0 = build(kids[0], v, adjacency, leaf_part, nodes, parent);
                    let c1 = build(kids[1], v, adjacency, leaf_part, nodes, parent);
                    nodes[id] = BdNode::Internal { children: [c0, c1] };
                    parent[c0] = Some(id);
                    parent[c1] = Some(id);
                    id
                }
            }
        }

        if n_nodes == 2 {
            // single edge between two leaves: the root is the subdivision point
            let p0 = leaf_part[0].unwrap();
            let p1 = leaf_part[1].unwrap();
            let nodes = vec![
                BdNode::Leaf { part: p0 },
                BdNode::Leaf { part: p1 },
                BdNode::Internal { children: [0, 1] },
            ];
            let parent = vec![Some(2), Some(2), None];
            return BranchDecomposition { nodes, parent, root: 2, boundaries: None };
        }

        let neighbor = adjacency[anchor][0];
        let anchor_id = {
            nodes.push(BdNode::Leaf { part: leaf_part[anchor].unwrap() });
            parent.push(None);
            0
        };
        let other = build(neighbor, anchor, adjacency, leaf_part, &mut nodes, &mut parent);
        let root = nodes.len();
        nodes.push(BdNode::Internal { children: [anchor_id, other] });
        parent.push(None);
        parent[anchor_id] = Some(root);
        parent[other] = Some(root);
        BranchDecomposition { nodes, parent, root, boundaries: None }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, v: usize) -> &BdNode {
        &self.nodes[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn boundaries(&self) -> &BoundaryData {
        self.boundaries.as_ref().expect("boundaries not computed; call compute_boundaries")
    }

    /// Part indices at the leaves under each node.
    pub fn parts_under(&self) -> Vec<Vec<usize>> {
        let mut under: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for v in self.postorder() {
            match &self.nodes[v] {
                BdNode::Leaf { part } => under[v].push(*part),
                BdNode::Internal { children } => {
                    let mut u = under[children[0]].clone();
                    u.extend_from_slice(&under[children[1]]);
                    u.sort_unstable();
                    under[v] = u;
                }
            }
        }
        under
    }

    /// Nodes ordered children-before-parents, deepest first, ties by index.
    pub fn postorder(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if let BdNode::Internal { children } = &self.nodes[v] {
                for &c in children {
                    depth[c] = depth[v] + 1;
                    stack.push(c);
                }
            }
        }
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
        order
    }

    /// Checks that the leaves are a bijection onto the parts of `a`.
    pub fn validate_for(&self, a: &Arrangement) -> bool {
        let mut seen = vec![false; a.n_parts()];
        for node in &self.nodes {
            if let BdNode::Leaf { part } = node {
                if *part >= a.n_parts() || seen[*part] {
                    return false;
                }
                seen[*part] = true;
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Width of a branch-decomposition: the maximum, over tree edges, of the
/// connectivity of the leaf parts on one side.
pub fn bd_width(a: &Arrangement, bd: &BranchDecomposition) -> usize {
    assert!(bd.validate_for(a), "branch decomposition does not match the arrangement");
    let under = bd.parts_under();
    (0..bd.n_nodes())
        .filter(|&v| v != bd.root())
        .map(|v| a.connectivity(&under[v]))
        .max()
        .unwrap_or(0)
}

/// Caterpillar branch-decomposition following a layout: a path with one leaf
/// per position. Every edge cut is either a prefix cut of the layout or a
/// single part against the rest.
pub fn caterpillar_bd(a: &Arrangement, layout: &[usize]) -> BranchDecomposition {
    a.assert_layout(layout);
    let n = layout.len();
    assert!(n >= 2, "caterpillar needs at least two parts");
    if n == 2 {
        let adjacency = vec![vec![1], vec![0]];
        let leaf_part = vec![Some(layout[0]), Some(layout[1])];
        return BranchDecomposition::from_unrooted(&adjacency, &leaf_part);
    }
    // nodes 0..n are leaves in layout order, n..2n-2 the spine
    let n_spine = n - 2;
    let total = n + n_spine;
    let mut adjacency = vec![Vec::new(); total];
    let mut leaf_part = vec![None; total];
    for (j, &p) in layout.iter().enumerate() {
        leaf_part[j] = Some(p);
    }
    let spine = |i: usize| n + i;
    for i in 0..n_spine - 1 {
        adjacency[spine(i)].push(spine(i + 1));
        adjacency[spine(i + 1)].push(spine(i));
    }
    adjacency[0].push(spine(0));
    adjacency[spine(0)].push(0);
    for j in 1..=n_spine {
        adjacency[j].push(spine(j - 1));
        adjacency[spine(j - 1)].push(j);
    }
    adjacency[n - 1].push(spine(n_spine - 1));
    adjacency[spine(n_spine - 1)].push(n - 1);
    BranchDecomposition::from_unrooted(&adjacency, &leaf_part)
}

/// Computes boundary bases, joint bases and transition matrices for every
/// node. Works on a row-reduced copy of the arrangement; the copy is returned
/// inside `BoundaryData` so callers can interpret the bases.
pub fn compute_boundaries(a: &Arrangement, bd: &BranchDecomposition) -> BranchDecomposition {
    assert!(bd.validate_for(a), "branch decomposition does not match the arrangement");
    let (ra, _) = row_reduce(a);
    let r = ra.matrix().rows();
    let m = ra.matrix().cols();
    let under = bd.parts_under();

    let compute_basis = |parts: &[usize]| -> Mat {
        let mut in_set = vec![false; m];
        for &p in parts {
            for &c in ra.part(p) {
                in_set[c] = true;
            }
        }
        // standard form: column c < r is the identity column for row c
        let zi: Vec<usize> = (0..r).filter(|&c| in_set[c]).collect();
        let z_not: Vec<usize> = (0..r).filter(|&c| !in_set[c]).collect();
        let others_non_id: Vec<usize> = (r..m).filter(|&c| !in_set[c]).collect();
        let own_non_id: Vec<usize> = (r..m).filter(|&c| in_set[c]).collect();
        let block_b = ra.matrix().submatrix(&zi, &others_non_id);
        let block_c = ra.matrix().submatrix(&z_not, &own_non_id);
        let xs = column_basis(&block_b, None);
        let ys = column_basis(&block_c, None);
        let mut basis = Mat::zero(ra.field(), r, xs.len() + ys.len());
        for (j, &x) in xs.iter().enumerate() {
            for (bi, &row) in zi.iter().enumerate() {
                basis[(row, j)] = block_b[(bi, x)];
            }
        }
        for (j, &y) in ys.iter().enumerate() {
            for (ci, &row) in z_not.iter().enumerate() {
                basis[(row, xs.len() + j)] = block_c[(ci, y)];
            }
        }
        basis
    };

    let order = bd.postorder();
    #[cfg(feature = "parallel")]
    let basis: Vec<Mat> = {
        use rayon::prelude::*;
        (0..bd.n_nodes()).into_par_iter().map(|v| compute_basis(&under[v])).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let basis: Vec<Mat> = (0..bd.n_nodes()).map(|v| compute_basis(&under[v])).collect();

    let mut joint_basis: Vec<Option<Mat>> = vec![None; bd.n_nodes()];
    let mut transitions: Vec<Option<[Mat; 2]>> = vec![None; bd.n_nodes()];
    for &v in &order {
        let BdNode::Internal { children } = bd.node(v) else { continue };
        let [w1, w2] = *children;
        let all = basis[v].hcat(&basis[w1]).hcat(&basis[w2]);
        let prefer: Vec<usize> = (0..basis[v].cols()).collect();
        let chosen = column_basis(&all, Some(&prefer));
        let joint = all.select_cols(&chosen);
        let t1 = solve(&joint, &basis[w1]).expect("child boundary not inside joint space");
        let t2 = solve(&joint, &basis[w2]).expect("child boundary not inside joint space");
        joint_basis[v] = Some(joint);
        transitions[v] = Some([t1, t2]);
    }

    let mut out = bd.clone();
    out.boundaries = Some(BoundaryData { reduced: ra, basis, joint_basis, transitions });
    out
}
