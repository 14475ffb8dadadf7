use super::{DualState, MatchResult, SavingMatrix};
use crate::scalar::Scalar;

/// Checks that `duals` certify `result` as a maximum-saving matching.
///
/// Requires nonnegative potentials, `p_i + q_c >= w_ic` everywhere,
/// equality on matched pairs and zero potentials on unmatched UAVs and
/// slots, all up to `tol`. Together these make the dual objective equal
/// the matched saving.
pub fn verify_duals<T: Scalar>(
    m: &SavingMatrix<T>,
    result: &MatchResult<T>,
    duals: &DualState<T>,
    tol: T,
) -> bool {
    let (ni, nc) = (m.n_uavs(), m.n_columns());
    if duals.p.len() != ni || duals.q.len() != nc || !result.is_consistent(m, tol) {
        return false;
    }
    if duals
        .p
        .iter()
        .chain(&duals.q)
        .any(|v| !(v.is_finite() && *v >= -tol))
    {
        return false;
    }
    for i in 0..ni {
        for c in 0..nc {
            if duals.p[i] + duals.q[c] < m.weight(i, c) - tol {
                return false;
            }
        }
    }
    let mut slot_used = vec![false; nc];
    for (i, col) in result.columns.iter().enumerate() {
        match *col {
            Some(c) => {
                slot_used[c] = true;
                if (duals.p[i] + duals.q[c] - m.weight(i, c)).abs() > tol {
                    return false;
                }
            }
            None if duals.p[i].abs() > tol => return false,
            None => {}
        }
    }
    slot_used
        .iter()
        .zip(&duals.q)
        .all(|(&used, q)| used || q.abs() <= tol)
}
