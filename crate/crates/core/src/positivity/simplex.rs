//! Exact phase-I simplex for `{c ≥ 0, Σ c_j v_j = 0, Σ c_j = 1}` with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A feasible point, one coefficient per column.
    Feasible(Vec<Rational>),
    /// φ with φ(v_j) ≥ 1 for every column, exactly.
    Infeasible(Vec<Rational>),
}

/// Decides whether 0 lies in the convex hull of `columns` (all of the same length).
pub fn zero_in_hull(columns: &[Vec<Rational>]) -> Feasibility {
    let n = columns.len();
    let dim = columns.first().map_or(0, Vec::len);
    let m = dim + 1;
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t = vec![vec![Rational::zero(); width]; m];
    for (j, col) in columns.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            t[r][j] = *x;
        }
        t[dim][j] = Rational::one();
    }
    for (r, row) in t.iter_mut().enumerate() {
        row[n + r] = Rational::one();
    }
    t[dim][rhs] = Rational::one();
    let cost = |j: usize| if j >= n { Rational::one() } else { Rational::zero() };
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let reduced = |j: usize, t: &[Vec<Rational>], basis: &[usize]| -> Rational {
            cost(j) - basis.iter().enumerate().map(|(r, &b)| cost(b) * t[r][j]).sum::<Rational>()
        };
        let Some(enter) = (0..n + m).find(|&j| !basis.contains(&j) && reduced(j, &t, &basis).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = t[r][rhs] / t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // Phase I is bounded below by 0, so a positive pivot always exists.
        let (pr, _) = leave.expect("phase-I objective is bounded");
        let p = t[pr][enter];
        for x in t[pr].iter_mut() {
            *x /= p;
        }
        let pivot_row = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        basis[pr] = enter;
    }

    let objective: Rational = basis.iter().enumerate().map(|(r, &b)| cost(b) * t[r][rhs]).sum();
    if objective.is_zero() {
        let mut c = vec![Rational::zero(); n];
        for (r, &b) in basis.iter().enumerate() {
            if b < n {
                c[b] = t[r][rhs];
            }
        }
        return Feasibility::Feasible(c);
    }
    // Dual y = c_B^T B^{-1}; B^{-1} sits in the artificial columns.
    let y: Vec<Rational> =
        (0..m).map(|col| basis.iter().enumerate().map(|(r, &b)| cost(b) * t[r][n + col]).sum()).collect();
    let phi: Vec<Rational> = y[..dim].iter().map(|x| -x).collect();
    let min = columns.iter().map(|v| v.iter().zip(&phi).map(|(a, b)| a * b).sum::<Rational>()).min().expect("nonempty");
    debug_assert!(min.is_positive());
    Feasibility::Infeasible(phi.iter().map(|x| x / min).collect())
}
