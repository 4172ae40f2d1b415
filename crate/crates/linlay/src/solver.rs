//! End-to-end drivers: decide whether a width-k layout exists (building the
//! needed branch-decompositions by iterative compression), and compute the
//! exact path-width.

use crate::arrangement::{
    bd_width, caterpillar_bd, column_reduce, compute_boundaries, row_reduce, Arrangement,
    BranchDecomposition, LinearLayout,
};
use crate::error::{Error, Result};
use crate::fullset::{backtrack, min_width_element, run_dp, DpOptions};

/// Outcome of a width-k decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A layout of width at most k, over the original part indices.
    Layout(LinearLayout),
    No(NoWitness),
}

/// Why no width-k layout exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoWitness {
    /// Some part has dim(V_i ∩ span(rest)) > 2k, which already contradicts
    /// path-width <= k.
    OverwideIntersection { part: usize, bound: usize },
    /// The root full set came out empty while solving the first
    /// `parts_tried` parts.
    EmptyFullSet { parts_tried: usize },
}

impl Decision {
    pub fn layout(&self) -> Option<&LinearLayout> {
        match self {
            Decision::Layout(l) => Some(l),
            Decision::No(_) => None,
        }
    }
}

/// Decides whether the arrangement has a linear layout of width at most k,
/// and produces one if so. Preprocesses with θ = 2k (row reduction, column
/// reduction, row reduction), then inserts parts one by one: the width-k
/// layout of the first ℓ-1 parts extends to a width-3k layout of the first
/// ℓ, whose caterpillar decomposition feeds the next DP run.
pub fn decide_pathwidth(a: &Arrangement, k: usize, opts: &DpOptions) -> Decision {
    let n = a.n_parts();
    if n == 0 {
        return Decision::Layout(Vec::new());
    }
    let (a1, _) = row_reduce(a);
    let a2 = match column_reduce(&a1, 2 * k) {
        Ok(a2) => a2,
        Err(part) => return Decision::No(NoWitness::OverwideIntersection { part, bound: 2 * k }),
    };
    let (a3, _) = row_reduce(&a2);

    // zero-dimensional parts never affect a cut; they go to the front
    let zero_parts: Vec<usize> = (0..n).filter(|&i| a3.part(i).is_empty()).collect();
    let live: Vec<usize> = (0..n).filter(|&i| !a3.part(i).is_empty()).collect();
    if live.len() <= 1 {
        let mut layout = zero_parts;
        layout.extend_from_slice(&live);
        debug_assert_eq!(a.layout_width(&layout), 0);
        return Decision::Layout(layout);
    }

    let w = a3.restrict_to_parts(&live);
    // iterative compression over the live parts in input order
    let mut sigma: Vec<usize> = vec![0];
    for l in 2..=w.n_parts() {
        let sub_parts: Vec<usize> = (0..l).collect();
        let sub = w.restrict_to_parts(&sub_parts);
        let mut candidate = sigma.clone();
        candidate.push(l - 1);
        let bd = compute_boundaries(&sub, &caterpillar_bd(&sub, &candidate));
        let fs = run_dp(&sub, &bd, k, opts);
        let Some(best) = min_width_element(&fs) else {
            return Decision::No(NoWitness::EmptyFullSet { parts_tried: l });
        };
        sigma = backtrack(best, &bd);
        debug_assert!(sub.layout_width(&sigma) <= k);
    }

    let mut layout = zero_parts;
    layout.extend(sigma.into_iter().map(|j| live[j]));
    debug_assert!(a.layout_width(&layout) <= k);
    Decision::Layout(layout)
}

/// Single DP run over a caller-supplied branch-decomposition. The
/// decomposition must be valid for the arrangement; its width θ governs the
/// DP's table sizes but not correctness.
pub fn decide_pathwidth_with_bd(
    a: &Arrangement,
    bd: &BranchDecomposition,
    k: usize,
    opts: &DpOptions,
) -> Result<Decision> {
    let n = a.n_parts();
    if n <= 1 {
        return Ok(Decision::Layout((0..n).collect()));
    }
    if !bd.validate_for(a) {
        return Err(Error::InvalidInput(
            "branch decomposition leaves do not match the arrangement parts".into(),
        ));
    }
    let bd = compute_boundaries(a, bd);
    let fs = run_dp(a, &bd, k, opts);
    match min_width_element(&fs) {
        Some(best) => {
            let layout = backtrack(best, &bd);
            debug_assert!(a.layout_width(&layout) <= k);
            Ok(Decision::Layout(layout))
        }
        None => Ok(Decision::No(NoWitness::EmptyFullSet { parts_tried: n })),
    }
}

/// Exact path-width with a witness layout of exactly that width.
///
/// With a branch-decomposition of width θ supplied, one DP run at
/// k = θ·⌊log₂ n⌋ suffices (the root full set cannot be empty at that
/// parameter); otherwise k is grown from 0 until the decision succeeds.
pub fn exact_pathwidth(
    a: &Arrangement,
    bd: Option<&BranchDecomposition>,
    opts: &DpOptions,
) -> Result<(usize, LinearLayout)> {
    let n = a.n_parts();
    if n <= 1 {
        return Ok((0, (0..n).collect()));
    }
    match bd {
        Some(bd) => {
            if !bd.validate_for(a) {
                return Err(Error::InvalidInput(
                    "branch decomposition leaves do not match the arrangement parts".into(),
                ));
            }
            let theta = bd_width(a, bd);
            let k = theta * n.ilog2() as usize;
            let bd = compute_boundaries(a, bd);
            let fs = run_dp(a, &bd, k, opts);
            let best = min_width_element(&fs).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "root full set empty at k = θ·⌊log2 n⌋ = {k}, which cannot happen"
                ))
            })?;
            let width = best.traj.width();
            let layout = backtrack(best, &bd);
            if a.layout_width(&layout) != width {
                return Err(Error::Inconsistent(
                    "backtracked layout width differs from the minimum full-set width".into(),
                ));
            }
            Ok((width, layout))
        }
        None => {
            for k in 0.. {
                if let Decision::Layout(layout) = decide_pathwidth(a, k, opts) {
                    let width = a.layout_width(&layout);
                    debug_assert_eq!(width, k.min(width));
                    return Ok((width, layout));
                }
            }
            unreachable!("every arrangement has a finite path-width")
        }
    }
}
