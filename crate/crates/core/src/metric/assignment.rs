//! Dense O(n³) minimum-cost perfect matching (Hungarian method with potentials).

use crate::error::{Error, Result};

/// Solves the square assignment problem for a row-major `n × n` cost matrix.
///
/// Returns `assignment` with row `i` matched to column `assignment[i]`.
/// Costs must be finite. Scratch space is allocated per call.
pub fn min_cost_assignment(cost: &[f64], n: usize) -> Result<Vec<usize>> {
    if cost.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: cost.len(),
        });
    }
    if let Some(index) = cost.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // 1-based rows/columns; column 0 and row 0 are sentinels.
    let mut row_pot = vec![0.0; n + 1];
    let mut col_pot = vec![0.0; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut min_slack = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];

    for row in 1..=n {
        col_owner[0] = row;
        let mut col0 = 0usize;
        min_slack.fill(f64::INFINITY);
        used.fill(false);

        loop {
            used[col0] = true;
            let i0 = col_owner[col0];
            let base = (i0 - 1) * n;
            let mut delta = f64::INFINITY;
            let mut col1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let slack = cost[base + j - 1] - row_pot[i0] - col_pot[j];
                if slack < min_slack[j] {
                    min_slack[j] = slack;
                    way[j] = col0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    col1 = j;
                }
            }
            debug_assert!(col1 != 0, "finite costs always yield an augmenting column");
            for j in 0..=n {
                if used[j] {
                    row_pot[col_owner[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col0 = col1;
            if col_owner[col0] == 0 {
                break;
            }
        }

        // augment along the alternating path
        loop {
            let prev = way[col0];
            col_owner[col0] = col_owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[col_owner[j] - 1] = j - 1;
    }
    Ok(assignment)
}
