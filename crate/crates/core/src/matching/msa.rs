//! Primal-dual maximum-weight bipartite matching.
//!
//! Every UAV carries a potential `p` and every slot a potential `q`, kept
//! dual feasible (`p_i + q_c >= w_ic`, both nonnegative). A UAV whose
//! potential is still positive grows an alternating tree over tight edges;
//! when the tree stalls all its potentials shift by the largest step that
//! keeps feasibility. The search ends by reaching a free slot (augment) or
//! by driving a tree UAV's potential to zero (that UAV drops out).
//! Either way the matching stays optimal for the UAVs seen so far.

use serde::{Deserialize, Serialize};

use super::{MatchResult, SavingMatrix};
use crate::scalar::{lit, Scalar};

/// Dual certificate of an optimal matching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualState<T = f64> {
    /// UAV potentials.
    pub p: Vec<T>,
    /// Slot potentials, one per expanded column.
    pub q: Vec<T>,
    /// UAVs in the last tree that needed a potential shift.
    pub reachable_uavs: Vec<usize>,
    /// Slots in that tree.
    pub reachable_vehicles: Vec<usize>,
    /// Size of that last shift.
    pub epsilon: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MsaSolution<T = f64> {
    pub result: MatchResult<T>,
    pub duals: DualState<T>,
    /// Tree-growth passes, each ending in a potential shift, an
    /// augmentation or a dropout.
    pub iterations: usize,
}

enum Grown {
    Free(usize),
    Stalled,
}

/// Maximum total saving assignment.
pub fn msa_match<T: Scalar>(m: &SavingMatrix<T>) -> MsaSolution<T> {
    let (ni, nc) = (m.n_uavs(), m.n_columns());
    let tight = m.max_weight() * lit::<T>(64.0) * T::epsilon();

    let mut p: Vec<T> = (0..ni)
        .map(|i| (0..nc).map(|c| m.weight(i, c)).fold(T::zero(), T::max))
        .collect();
    let mut q = vec![T::zero(); nc];
    let mut col_of: Vec<Option<usize>> = vec![None; ni];
    let mut uav_of: Vec<Option<usize>> = vec![None; nc];
    let mut iterations = 0;
    let mut epsilon = T::zero();
    let mut last_uavs = Vec::new();
    let mut last_cols = Vec::new();

    let mut slack = vec![T::infinity(); nc];
    let mut slack_from = vec![0usize; nc];
    let mut parent = vec![0usize; nc];
    let mut in_tree_c = vec![false; nc];
    let mut tree_u: Vec<usize> = Vec::with_capacity(ni);
    let mut tree_c: Vec<usize> = Vec::with_capacity(nc);

    for root in 0..ni {
        if p[root] <= T::zero() {
            continue;
        }
        slack.fill(T::infinity());
        in_tree_c.fill(false);
        tree_u.clear();
        tree_c.clear();

        let scan = |n: usize,
                    p: &[T],
                    q: &[T],
                    slack: &mut [T],
                    slack_from: &mut [usize],
                    in_tree_c: &[bool]| {
            for c in 0..nc {
                let w = m.weight(n, c);
                if in_tree_c[c] || w <= T::zero() {
                    continue;
                }
                let s = (p[n] + q[c] - w).max(T::zero());
                if s < slack[c] {
                    slack[c] = s;
                    slack_from[c] = n;
                }
            }
        };
        tree_u.push(root);
        scan(root, &p, &q, &mut slack, &mut slack_from, &in_tree_c);

        loop {
            iterations += 1;
            let grown = loop {
                let next = (0..nc)
                    .filter(|&c| !in_tree_c[c] && slack[c] <= tight)
                    .min_by(|&a, &b| slack[a].partial_cmp(&slack[b]).unwrap().then(a.cmp(&b)));
                let Some(c) = next else { break Grown::Stalled };
                in_tree_c[c] = true;
                tree_c.push(c);
                parent[c] = slack_from[c];
                match uav_of[c] {
                    None => break Grown::Free(c),
                    Some(n) => {
                        tree_u.push(n);
                        scan(n, &p, &q, &mut slack, &mut slack_from, &in_tree_c);
                    }
                }
            };

            match grown {
                Grown::Free(c) => {
                    flip(root, c, &parent, &mut col_of, &mut uav_of);
                    break;
                }
                Grown::Stalled => {
                    let to_slot = (0..nc)
                        .filter(|&c| !in_tree_c[c])
                        .map(|c| slack[c])
                        .fold(T::infinity(), T::min);
                    let to_zero = tree_u.iter().map(|&n| p[n]).fold(T::infinity(), T::min);
                    let delta = to_slot.min(to_zero);
                    for &n in &tree_u {
                        p[n] = (p[n] - delta).max(T::zero());
                    }
                    for &c in &tree_c {
                        q[c] = q[c] + delta;
                    }
                    for c in 0..nc {
                        if !in_tree_c[c] && slack[c].is_finite() {
                            slack[c] = (slack[c] - delta).max(T::zero());
                        }
                    }
                    epsilon = delta;
                    last_uavs.clone_from(&tree_u);
                    last_cols.clone_from(&tree_c);

                    if to_zero <= to_slot {
                        // lowest-index tree UAV whose potential hit zero leaves
                        let out = tree_u
                            .iter()
                            .copied()
                            .filter(|&n| p[n] <= T::zero())
                            .min()
                            .expect("a tree potential reached zero");
                        for &n in &tree_u {
                            if p[n] <= T::zero() {
                                p[n] = T::zero();
                            }
                        }
                        if out != root {
                            let c = col_of[out].take().expect("non-root tree UAVs are matched");
                            uav_of[c] = None;
                            flip(root, c, &parent, &mut col_of, &mut uav_of);
                        }
                        break;
                    }
                }
            }
        }
    }
    debug_assert!(iterations <= ni * (nc + 1));

    let duals = DualState {
        p,
        q,
        reachable_uavs: last_uavs,
        reachable_vehicles: last_cols,
        epsilon,
    };
    MsaSolution {
        result: MatchResult::from_columns(m, col_of),
        duals,
        iterations,
    }
}

/// Shifts the matching along the tree path from `root` to slot `c`.
fn flip(
    root: usize,
    mut c: usize,
    parent: &[usize],
    col_of: &mut [Option<usize>],
    uav_of: &mut [Option<usize>],
) {
    loop {
        let n = parent[c];
        let prev = col_of[n];
        col_of[n] = Some(c);
        uav_of[c] = Some(n);
        if n == root {
            return;
        }
        c = prev.expect("inner tree UAVs are matched");
    }
}
