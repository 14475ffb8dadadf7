use super::{MatchResult, SavingMatrix};
use crate::scalar::Scalar;

/// Baseline: repeatedly takes the largest remaining saving.
///
/// Ties go to the lowest UAV index, then the lowest slot.
pub fn greedy_match<T: Scalar>(m: &SavingMatrix<T>) -> MatchResult<T> {
    let (ni, nc) = (m.n_uavs(), m.n_columns());
    let mut edges: Vec<(usize, usize)> = (0..ni)
        .flat_map(|i| (0..nc).map(move |c| (i, c)))
        .filter(|&(i, c)| m.weight(i, c) > T::zero())
        .collect();
    edges.sort_by(|&a, &b| {
        m.weight(b.0, b.1)
            .partial_cmp(&m.weight(a.0, a.1))
            .unwrap()
            .then(a.cmp(&b))
    });

    let mut columns = vec![None; ni];
    let mut taken = vec![false; nc];
    for (i, c) in edges {
        if columns[i].is_none() && !taken[c] {
            columns[i] = Some(c);
            taken[c] = true;
        }
    }
    MatchResult::from_columns(m, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_can_be_suboptimal() {
        let m = SavingMatrix::from_rows(&[vec![10.0, 9.0], vec![9.0, 0.0]]).unwrap();
        let g = greedy_match(&m);
        assert_eq!(g.assignment, vec![Some(0), None]);
        assert_eq!(g.total_saving, 10.0);
        assert_eq!(crate::matching::msa_match(&m).result.total_saving, 18.0);
    }

    #[test]
    fn ties_prefer_low_indices() {
        let m = SavingMatrix::from_rows(&[vec![0.2, 0.2], vec![0.2, 0.2]]).unwrap();
        let g = greedy_match(&m);
        assert_eq!(g.assignment, vec![Some(0), Some(1)]);
    }
}
