//! Minimum-cost perfect matching on a square cost matrix (Hungarian method
//! with row/column potentials, O(n^3)).

/// Optimal assignment: row `i` is matched to column `cols[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub cols: Vec<usize>,
    /// `sum_i cost[i][cols[i]]`, accumulated in row order.
    pub cost: f64,
}

pub fn solve(cost: &[Vec<f64>]) -> Assignment {
    let n = cost.len();
    if n == 0 {
        return Assignment {
            cols: Vec::new(),
            cost: 0.0,
        };
    }
    debug_assert!(cost.iter().all(|row| row.len() == n));

    // 1-based: column 0 and row 0 are sentinels.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of_col[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut cols = vec![0; n];
    for j in 1..=n {
        cols[row_of_col[j] - 1] = j - 1;
    }
    let cost = cols.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    Assignment { cols, cost }
}
