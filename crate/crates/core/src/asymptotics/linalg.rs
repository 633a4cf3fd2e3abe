//! Dense Gaussian elimination with partial pivoting at working precision.

use crate::analytic::hp::{self, Real};

/// Solve `a x = rhs` in place. Returns `None` when a pivot vanishes.
pub fn solve(mut a: Vec<Vec<Real>>, mut rhs: Vec<Real>) -> Option<Vec<Real>> {
    let n = rhs.len();
    for col in 0..n {
        let mut best = col;
        let mut best_abs = hp::abs(&a[col][col]);
        for (row, r) in a.iter().enumerate().skip(col + 1) {
            let v = hp::abs(&r[col]);
            if v > best_abs {
                best = row;
                best_abs = v;
            }
        }
        if hp::is_zero(&best_abs) {
            return None;
        }
        a.swap(col, best);
        rhs.swap(col, best);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let pivot = pivot_row[col].clone();
        for (k, row) in rest.iter_mut().enumerate() {
            if hp::is_zero(&row[col]) {
                continue;
            }
            let f = &row[col] / &pivot;
            for c in col..n {
                let t = &f * &pivot_row[c];
                row[c] -= t;
            }
            let t = &f * &rhs[col];
            rhs[col + 1 + k] -= t;
        }
    }
    let mut x: Vec<Real> = vec![hp::real_int(0, rhs[0].precision()); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for j in i + 1..n {
            acc -= &a[i][j] * &x[j];
        }
        x[i] = acc / &a[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        let b = 128;
        let r = |v: i64| hp::real_int(v, b);
        let a = vec![vec![r(0), r(2), r(1)], vec![r(1), r(1), r(1)], vec![r(2), r(1), r(3)]];
        let x = solve(a, vec![r(7), r(6), r(13)]).unwrap();
        let xs: Vec<f64> = x.iter().map(hp::to_f64).collect();
        for (got, want) in xs.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-30);
        }
        let singular = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(solve(singular, vec![r(1), r(2)]).is_none());
    }
}
