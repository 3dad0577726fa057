//! Maximum-weight one-to-one assignment on rectangular matrices.
//!
//! The solver is the O(n²m) shortest-augmenting-path form of the Hungarian
//! method with row and column potentials. A rectangular matrix is handled
//! directly (equivalent to zero-padding it to a square), and the returned
//! assignment always has exactly `min(rows, cols)` pairs.

/// Row-major dense weight matrix view.
#[derive(Debug, Clone, Copy)]
pub struct Weights<'a> {
    data: &'a [f64],
    rows: usize,
    cols: usize,
}

impl<'a> Weights<'a> {
    pub fn new(data: &'a [f64], rows: usize, cols: usize) -> Self {
        assert_eq!(data.len(), rows * cols, "weight matrix has wrong length");
        Weights { data, rows, cols }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Column assigned to each row, `None` for rows left out when `rows > cols`.
pub fn max_weight_assignment(w: Weights<'_>) -> Vec<Option<usize>> {
    let (n, m) = (w.rows, w.cols);
    if n == 0 || m == 0 {
        return vec![None; n];
    }
    if n <= m {
        solve_min_cost(n, m, |i, j| -w.get(i, j))
    } else {
        // Assign every column a row, then invert.
        let by_col = solve_min_cost(m, n, |j, i| -w.get(i, j));
        let mut by_row = vec![None; n];
        for (j, i) in by_col.into_iter().enumerate() {
            by_row[i.expect("every column is assigned")] = Some(j);
        }
        by_row
    }
}

/// Sum of the assigned weights, added in row order.
pub fn assignment_total(w: Weights<'_>, assignment: &[Option<usize>]) -> f64 {
    assignment
        .iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| w.get(i, j)))
        .sum()
}

pub fn max_weight_total(w: Weights<'_>) -> f64 {
    assignment_total(w, &max_weight_assignment(w))
}

/// Minimum-cost assignment of `n` rows into `m >= n` columns.
fn solve_min_cost(n: usize, m: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<Option<usize>> {
    debug_assert!(n <= m);
    // 1-based indexing; column 0 is a virtual source.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    let mut minv = vec![0.0f64; m + 1];
    let mut used = vec![false; m + 1];

    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0usize;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![None; n];
    for j in 1..=m {
        if owner[j] != 0 {
            assignment[owner[j] - 1] = Some(j - 1);
        }
    }
    assignment
}

/// Among all maximum-weight assignments, the one whose pair list (sorted by
/// row) is lexicographically smallest. Totals within `tol` of the optimum
/// count as optimal.
#[allow(clippy::needless_range_loop)]
pub fn canonical_max_weight_assignment(w: Weights<'_>, tol: f64) -> Vec<Option<usize>> {
    let (n, m) = (w.rows, w.cols);
    let need = n.min(m);
    let best = max_weight_total(w);
    let mut assignment = vec![None; n];
    let mut free: Vec<usize> = (0..m).collect();
    let mut acc = 0.0;
    let mut placed = 0;

    for i in 0..n {
        let still = need - placed;
        if still == 0 {
            break;
        }
        let rows_after: Vec<usize> = (i + 1..n).collect();
        let mut chosen = None;
        for (pos, &j) in free.iter().enumerate() {
            let cols_after: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &c)| c)
                .collect();
            if rows_after.len().min(cols_after.len()) < still - 1 {
                continue;
            }
            let rest = sub_total(w, &rows_after, &cols_after);
            if acc + w.get(i, j) + rest >= best - tol {
                chosen = Some(pos);
                break;
            }
        }
        if let Some(pos) = chosen {
            let j = free.remove(pos);
            acc += w.get(i, j);
            assignment[i] = Some(j);
            placed += 1;
        }
    }
    assignment
}

fn sub_total(w: Weights<'_>, rows: &[usize], cols: &[usize]) -> f64 {
    if rows.is_empty() || cols.is_empty() {
        return 0.0;
    }
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &i in rows {
        for &j in cols {
            data.push(w.get(i, j));
        }
    }
    max_weight_total(Weights::new(&data, rows.len(), cols.len()))
}

#[cfg(test)]
pub(crate) mod brute {
    /// Exhaustive maximum over all one-to-one pairings of size min(n, m).
    pub fn best_total(data: &[f64], rows: usize, cols: usize) -> f64 {
        fn go(
            data: &[f64],
            rows: usize,
            cols: usize,
            i: usize,
            used: &mut Vec<bool>,
            left: usize,
        ) -> f64 {
            if left == 0 {
                return 0.0;
            }
            if rows - i < left {
                return f64::NEG_INFINITY;
            }
            // Skip row i.
            let mut best = go(data, rows, cols, i + 1, used, left);
            for j in 0..cols {
                if !used[j] {
                    used[j] = true;
                    let v = data[i * cols + j] + go(data, rows, cols, i + 1, used, left - 1);
                    used[j] = false;
                    best = best.max(v);
                }
            }
            best
        }
        go(data, rows, cols, 0, &mut vec![false; cols], rows.min(cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_example() {
        let data = [
            7.0, 5.0, 11.0, //
            5.0, 4.0, 1.0, //
            9.0, 3.0, 2.0,
        ];
        let w = Weights::new(&data, 3, 3);
        let a = max_weight_assignment(w);
        assert_eq!(assignment_total(w, &a), 24.0);
        assert_eq!(a, vec![Some(2), Some(1), Some(0)]);
    }

    #[test]
    fn rectangular_both_ways() {
        let data = [0.1, 0.9, 0.3, 0.8, 0.2, 0.7];
        let wide = Weights::new(&data, 2, 3);
        let a = max_weight_assignment(wide);
        assert_eq!(a.iter().flatten().count(), 2);
        assert!((assignment_total(wide, &a) - 1.7).abs() < 1e-15);

        let tall = Weights::new(&data, 3, 2);
        let a = max_weight_assignment(tall);
        assert_eq!(a.iter().flatten().count(), 2);
        assert!((assignment_total(tall, &a) - brute::best_total(&data, 3, 2)).abs() < 1e-15);
    }

    #[test]
    fn zero_weights_still_pair() {
        let data = [0.0; 6];
        let a = max_weight_assignment(Weights::new(&data, 2, 3));
        assert_eq!(a.iter().flatten().count(), 2);
    }

    #[test]
    fn canonical_prefers_smallest_pairs() {
        // Every perfect assignment has the same total.
        let data = [1.0; 9];
        let a = canonical_max_weight_assignment(Weights::new(&data, 3, 3), 1e-12);
        assert_eq!(a, vec![Some(0), Some(1), Some(2)]);

        let tall = [0.0, 0.0, 0.5, 0.0, 0.0, 0.0];
        let a = canonical_max_weight_assignment(Weights::new(&tall, 3, 2), 1e-12);
        assert_eq!(a, vec![Some(1), Some(0), None]);
    }

    proptest! {
        #[test]
        fn matches_brute_force(rows in 1usize..=6, cols in 1usize..=6, seed in any::<u64>()) {
            let mut x = seed | 1;
            let data: Vec<f64> = (0..rows * cols)
                .map(|_| {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    (x % 1000) as f64 / 997.0
                })
                .collect();
            let w = Weights::new(&data, rows, cols);
            let expected = brute::best_total(&data, rows, cols);
            let fast = max_weight_assignment(w);
            prop_assert_eq!(fast.iter().flatten().count(), rows.min(cols));
            prop_assert!((assignment_total(w, &fast) - expected).abs() < 1e-12);
            let canon = canonical_max_weight_assignment(w, 1e-12);
            prop_assert_eq!(canon.iter().flatten().count(), rows.min(cols));
            prop_assert!((assignment_total(w, &canon) - expected).abs() < 1e-12);
        }
    }
}
