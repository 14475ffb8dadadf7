use super::{MatchResult, SavingMatrix};
use crate::error::{HitchError, Result};
use crate::scalar::Scalar;

/// Largest UAV or vehicle count accepted by [`brute_force_match`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Exhaustive search over all assignments that respect vehicle capacities.
///
/// Meant as a reference for small instances; at most
/// [`BRUTE_FORCE_LIMIT`] UAVs and as many distinct vehicles.
pub fn brute_force_match<T: Scalar>(m: &SavingMatrix<T>) -> Result<MatchResult<T>> {
    let (ni, nj) = (m.n_uavs(), m.n_vehicles());
    if ni > BRUTE_FORCE_LIMIT || nj > BRUTE_FORCE_LIMIT {
        return Err(HitchError::SizeGuard {
            uavs: ni,
            vehicles: nj,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let rows: Vec<Vec<T>> = (0..ni).map(|i| m.vehicle_row(i)).collect();
    let mut search = Search {
        rows: &rows,
        left: (0..nj).map(|j| m.capacity(j)).collect(),
        current: vec![None; ni],
        best: vec![None; ni],
        best_total: T::zero(),
    };
    search.run(0, T::zero());

    // k-th rider of a vehicle takes its k-th slot
    let mut next_slot = vec![0usize; nj];
    let columns = search
        .best
        .iter()
        .map(|v| {
            v.map(|j| {
                let c = m
                    .column_origin()
                    .iter()
                    .enumerate()
                    .filter(|&(_, &o)| o == j)
                    .nth(next_slot[j])
                    .map(|(c, _)| c)
                    .expect("capacity respected");
                next_slot[j] += 1;
                c
            })
        })
        .collect();
    Ok(MatchResult::from_columns(m, columns))
}

struct Search<'a, T> {
    rows: &'a [Vec<T>],
    left: Vec<usize>,
    current: Vec<Option<usize>>,
    best: Vec<Option<usize>>,
    best_total: T,
}

impl<T: Scalar> Search<'_, T> {
    fn run(&mut self, i: usize, total: T) {
        if i == self.rows.len() {
            if total > self.best_total {
                self.best_total = total;
                self.best.clone_from(&self.current);
            }
            return;
        }
        self.run(i + 1, total);
        for j in 0..self.left.len() {
            let w = self.rows[i][j];
            if self.left[j] == 0 || w <= T::zero() {
                continue;
            }
            self.left[j] -= 1;
            self.current[i] = Some(j);
            self.run(i + 1, total + w);
            self.current[i] = None;
            self.left[j] += 1;
        }
    }
}
