//! Euclidean distance from the origin to the convex hull of finitely many
//! points, by Wolfe's minimum-norm-point algorithm.

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(points: &[&[f64]], weights: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; points[0].len()];
    for (p, w) in points.iter().zip(weights) {
        for (o, v) in out.iter_mut().zip(p.iter()) {
            *o += w * v;
        }
    }
    out
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting; `None`
/// when the system is numerically singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                let (upper, lower) = a.split_at_mut(row);
                for (x, y) in lower[0][col..n].iter_mut().zip(&upper[col][col..n]) {
                    *x -= f * y;
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Affine minimiser of `|sum v_i s_i|` subject to `sum v_i = 1`.
fn affine_min_norm(set: &[&[f64]]) -> Option<Vec<f64>> {
    let k = set.len();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = dot(set[i], set[j]);
        }
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    let mut b = vec![0.0; k + 1];
    b[k] = 1.0;
    solve(a, b).map(|mut v| {
        v.truncate(k);
        v
    })
}

/// Weights (indexed like `points`) of the point of `conv(points)` closest to
/// the origin, together with that point.
pub(crate) fn min_norm_point(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    assert!(!points.is_empty());
    let scale = points.iter().map(|p| dot(p, p)).fold(0.0f64, f64::max).max(1e-300);
    let eps = 1e-12;

    let first = (0..points.len())
        .min_by(|&i, &j| dot(&points[i], &points[i]).total_cmp(&dot(&points[j], &points[j])))
        .unwrap();
    let mut active = vec![first];
    let mut weights = vec![1.0];
    let mut x = points[first].clone();

    for _ in 0..(50 * points.len() + 100) {
        let xx = dot(&x, &x);
        let (j, xp) = (0..points.len())
            .map(|j| (j, dot(&x, &points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if xp >= xx - eps * scale || active.contains(&j) {
            break;
        }
        active.push(j);
        weights.push(0.0);

        loop {
            let set: Vec<&[f64]> = active.iter().map(|&i| points[i].as_slice()).collect();
            let Some(v) = affine_min_norm(&set) else {
                // degenerate corral: drop the newest point and stop refining
                active.pop();
                weights.pop();
                break;
            };
            if v.iter().all(|&vi| vi > eps) {
                weights = v;
                x = combine(&set, &weights);
                break;
            }
            let theta = weights
                .iter()
                .zip(&v)
                .filter(|(_, &vi)| vi <= eps)
                .map(|(&w, &vi)| w / (w - vi))
                .fold(1.0f64, f64::min);
            for (w, vi) in weights.iter_mut().zip(&v) {
                *w += theta * (vi - *w);
            }
            let keep: Vec<bool> = weights.iter().map(|&w| w > eps).collect();
            let mut idx = 0;
            active.retain(|_| {
                idx += 1;
                keep[idx - 1]
            });
            weights.retain(|&w| w > eps);
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            let set: Vec<&[f64]> = active.iter().map(|&i| points[i].as_slice()).collect();
            x = combine(&set, &weights);
        }
    }

    let mut full = vec![0.0; points.len()];
    for (&i, &w) in active.iter().zip(&weights) {
        full[i] += w;
    }
    (full, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_inside_triangle() {
        let pts = vec![vec![-1.0, -1.0], vec![2.0, -1.0], vec![-1.0, 2.0]];
        let (_, x) = min_norm_point(&pts);
        assert!(dot(&x, &x).sqrt() < 1e-12);
    }

    #[test]
    fn segment_off_the_origin() {
        let pts = vec![vec![-4.0], vec![-5.0]];
        let (w, x) = min_norm_point(&pts);
        assert_eq!(x, vec![-4.0]);
        assert_eq!(w, vec![1.0, 0.0]);
    }

    #[test]
    fn projection_onto_an_edge() {
        let pts = vec![vec![1.0, -1.0], vec![1.0, 1.0], vec![3.0, 0.0]];
        let (w, x) = min_norm_point(&pts);
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12);
        assert!((w[0] - 0.5).abs() < 1e-12 && (w[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn square_in_three_dimensions() {
        let pts = vec![
            vec![1.0, 1.0, 2.0],
            vec![-1.0, 1.0, 2.0],
            vec![1.0, -1.0, 2.0],
            vec![-1.0, -1.0, 2.0],
        ];
        let (_, x) = min_norm_point(&pts);
        assert!((dot(&x, &x).sqrt() - 2.0).abs() < 1e-12);
    }
}
