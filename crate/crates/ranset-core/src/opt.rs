//! Shared numerical machinery: dense linear algebra, a damped-Newton
//! maximizer, simplex projection and a small two-phase LP simplex.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Solves a square system by Gaussian elimination with partial pivoting,
/// followed by one step of iterative residual refinement.
pub fn solve_square(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let solve_once = |rhs: &[f64]| -> Result<Vec<f64>> {
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let mut x: Vec<f64> = rhs.to_vec();
        for col in 0..n {
            let (pivot, pmax) = (col..n)
                .map(|r| (r, math::abs(m[r][col])))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if pmax < 1e-12 {
                return Err(Error::SingularSystem);
            }
            m.swap(col, pivot);
            x.swap(col, pivot);
            for r in (col + 1)..n {
                let factor = m[r][col] / m[col][col];
                if factor != 0.0 {
                    for c in col..n {
                        m[r][c] -= factor * m[col][c];
                    }
                    x[r] -= factor * x[col];
                }
            }
        }
        for col in (0..n).rev() {
            let mut s = x[col];
            for c in (col + 1)..n {
                s -= m[col][c] * x[c];
            }
            x[col] = s / m[col][col];
        }
        Ok(x)
    };
    let mut x = solve_once(b)?;
    // Residual refinement.
    let mut residual = vec![0.0; n];
    for (i, row) in a.iter().enumerate() {
        let ax: f64 = row.iter().zip(&x).map(|(aij, xj)| aij * xj).sum();
        residual[i] = b[i] - ax;
    }
    if math::sup_norm(&residual) > 0.0 {
        if let Ok(correction) = solve_once(&residual) {
            for (xi, ci) in x.iter_mut().zip(correction) {
                *xi += ci;
            }
        }
    }
    Ok(x)
}

/// Numeric rank of a dense matrix via row echelon with partial pivoting.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some((pivot, pmax)) = (rank..m.len())
            .map(|r| (r, math::abs(m[r][col])))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        else {
            break;
        };
        if pmax <= tol {
            continue;
        }
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0.0 {
                let factor = m[r][col] / m[rank][col];
                for c in col..ncols {
                    m[r][c] -= factor * m[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Orthogonal-free null-space basis of the row space: returns vectors `v`
/// with `rows · v = 0`, one per free column of the RREF.
pub fn null_space(rows: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let (pivot, pmax) = (rank..m.len())
            .map(|r| (r, math::abs(m[r][col])))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if pmax <= tol {
            continue;
        }
        m.swap(rank, pivot);
        let inv = 1.0 / m[rank][col];
        for c in 0..ncols {
            m[rank][c] *= inv;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0.0 {
                let factor = m[r][col];
                for c in 0..ncols {
                    m[r][c] -= factor * m[rank][c];
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0.0; ncols];
        v[free] = 1.0;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Outcome of [`maximize_newton`].
pub struct MaximizeOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    #[allow(dead_code)]
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective at the start point and after every accepted step.
    pub values: Vec<f64>,
}

/// Maximizes a smooth function with a damped-Newton method; the Hessian is
/// built by central differences of the analytic gradient. `f` returns `None`
/// outside the feasible domain, which backtracking treats as a rejected step.
pub fn maximize_newton<F>(
    f: &F,
    x0: &[f64],
    grad_tol: f64,
    max_iter: usize,
) -> MaximizeOutcome
where
    F: Fn(&[f64]) -> Option<(f64, Vec<f64>)>,
{
    let k = x0.len();
    let mut x = x0.to_vec();
    let (mut value, mut grad) = match f(&x) {
        Some(vg) => vg,
        None => {
            return MaximizeOutcome {
                x,
                value: f64::NEG_INFINITY,
                grad_norm: f64::INFINITY,
                iterations: 0,
                converged: false,
                values: Vec::new(),
            }
        }
    };
    let mut values = vec![value];
    let mut iterations = 0;
    while iterations < max_iter {
        let grad_norm = math::sup_norm(&grad);
        if grad_norm <= grad_tol {
            return MaximizeOutcome {
                x,
                value,
                grad_norm,
                iterations,
                converged: true,
                values,
            };
        }
        iterations += 1;

        // Central-difference Hessian from the gradient.
        let mut hess = vec![vec![0.0; k]; k];
        let mut ok = true;
        for j in 0..k {
            let h = 1e-6 * math::max(1.0, math::abs(x[j]));
            let mut xp = x.clone();
            xp[j] += h;
            let mut xm = x.clone();
            xm[j] -= h;
            match (f(&xp), f(&xm)) {
                (Some((_, gp)), Some((_, gm))) => {
                    for i in 0..k {
                        hess[i][j] = (gp[i] - gm[i]) / (2.0 * h);
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        // Symmetrize and try Newton directions with increasing damping.
        let mut step: Option<Vec<f64>> = None;
        if ok {
            for i in 0..k {
                for j in (i + 1)..k {
                    let avg = 0.5 * (hess[i][j] + hess[j][i]);
                    hess[i][j] = avg;
                    hess[j][i] = avg;
                }
            }
            let mut damping = 0.0;
            for _ in 0..8 {
                let mut a = hess.clone();
                for (i, row) in a.iter_mut().enumerate() {
                    row[i] -= damping;
                }
                let neg_grad: Vec<f64> = grad.iter().map(|g| -g).collect();
                if let Ok(d) = solve_square(&a, &neg_grad) {
                    let ascent: f64 = d.iter().zip(&grad).map(|(di, gi)| di * gi).sum();
                    if ascent > 0.0 && d.iter().all(|v| v.is_finite()) {
                        step = Some(d);
                        break;
                    }
                }
                damping = if damping == 0.0 { 1e-6 } else { damping * 100.0 };
            }
        }
        let direction = step.unwrap_or_else(|| grad.clone());

        // Armijo backtracking.
        let slope: f64 = direction.iter().zip(&grad).map(|(di, gi)| di * gi).sum();
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let cand: Vec<f64> = x
                .iter()
                .zip(&direction)
                .map(|(xi, di)| xi + t * di)
                .collect();
            if let Some((v, g)) = f(&cand) {
                if v >= value + 1e-4 * t * slope && v.is_finite() {
                    x = cand;
                    value = v;
                    grad = g;
                    values.push(v);
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            // No improving step along this direction: report where we are.
            return MaximizeOutcome {
                grad_norm: math::sup_norm(&grad),
                x,
                value,
                iterations,
                converged: math::sup_norm(&grad) <= grad_tol,
                values,
            };
        }
    }
    let grad_norm = math::sup_norm(&grad);
    MaximizeOutcome {
        x,
        value,
        grad_norm,
        iterations,
        converged: grad_norm <= grad_tol,
        values,
    }
}

/// Euclidean projection onto the simplex `{x ≥ 0, Σx = total}`.
pub fn project_simplex(x: &[f64], total: f64) -> Vec<f64> {
    let mut sorted = x.to_vec();
    sorted.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumulative = 0.0;
    let mut theta = (sorted.iter().sum::<f64>() - total) / sorted.len() as f64;
    for (i, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - total) / (i + 1) as f64;
        if v - candidate > 0.0 {
            theta = candidate;
        } else {
            break;
        }
    }
    x.iter().map(|&v| math::max(v - theta, 0.0)).collect()
}

/// Minimizes `c'x` subject to `A x = b`, `x ≥ 0` with a dense two-phase
/// simplex (Bland's rule). Returns the optimal `x`.
pub fn simplex_lp(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<Vec<f64>> {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == m);

    // Normalize to b ≥ 0.
    let mut rows: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for i in 0..m {
        if rhs[i] < 0.0 {
            rhs[i] = -rhs[i];
            for v in rows[i].iter_mut() {
                *v = -*v;
            }
        }
    }

    // Tableau with artificial variables n..n+m.
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m];
    for i in 0..m {
        t[i][..n].copy_from_slice(&rows[i]);
        t[i][n + i] = 1.0;
        t[i][width - 1] = rhs[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let pivot = |t: &mut Vec<Vec<f64>>, basis: &mut Vec<usize>, row: usize, col: usize| {
        let inv = 1.0 / t[row][col];
        for v in t[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..t.len() {
            if r != row && t[r][col] != 0.0 {
                let factor = t[r][col];
                for c in 0..t[r].len() {
                    t[r][c] -= factor * t[row][c];
                }
            }
        }
        basis[row] = col;
    };

    // Runs simplex iterations for the given objective row; Bland's rule.
    let run = |t: &mut Vec<Vec<f64>>,
               basis: &mut Vec<usize>,
               cost: &mut Vec<f64>,
               allowed: usize|
     -> Result<()> {
        for _ in 0..20_000 {
            let mut entering = None;
            for (j, &cj) in cost.iter().enumerate().take(allowed) {
                if cj < -1e-9 {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, f64)> = None;
            for (r, row) in t.iter().enumerate() {
                if row[col] > 1e-9 {
                    let ratio = row[width - 1] / row[col];
                    match leaving {
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12
                                || (math::abs(ratio - lratio) <= 1e-12 && basis[r] < basis[lr])
                            {
                                leaving = Some((r, ratio));
                            }
                        }
                        None => leaving = Some((r, ratio)),
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Err(Error::Domain("linear program is unbounded"));
            };
            pivot(t, basis, row, col);
            // Update the reduced-cost row.
            let factor = cost[col];
            for c in 0..width {
                if c < cost.len() {
                    cost[c] -= factor * t[row][c];
                }
            }
        }
        Err(Error::NonConvergence)
    };

    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![0.0; width];
    for j in n..n + m {
        cost[j] = 1.0;
    }
    // Price out the initial basis.
    for r in 0..m {
        for c in 0..width {
            cost[c] -= t[r][c];
        }
    }
    run(&mut t, &mut basis, &mut cost, n + m)?;
    let phase1 = -cost[width - 1];
    if phase1 > 1e-8 {
        return Err(Error::Domain("linear program is infeasible"));
    }
    // Drive artificials out of the basis where possible.
    for r in 0..m {
        if basis[r] >= n {
            if let Some(col) = (0..n).find(|&c| math::abs(t[r][c]) > 1e-9) {
                pivot(&mut t, &mut basis, r, col);
            }
        }
    }

    // Phase 2.
    let mut cost2 = vec![0.0; width];
    cost2[..n].copy_from_slice(c);
    for r in 0..m {
        if basis[r] < n && cost2[basis[r]] != 0.0 {
            let factor = cost2[basis[r]];
            for ccol in 0..width {
                cost2[ccol] -= factor * t[r][ccol];
            }
        }
    }
    // Forbid artificials from re-entering.
    run(&mut t, &mut basis, &mut cost2, n)?;

    let mut x = vec![0.0; n];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[r][width - 1];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![2.0, 1.0, -1.0],
            vec![-3.0, -1.0, 2.0],
            vec![-2.0, 1.0, 2.0],
        ];
        let b = vec![8.0, -11.0, -3.0];
        let x = solve_square(&a, &b).unwrap();
        assert!(math::abs(x[0] - 2.0) < 1e-12);
        assert!(math::abs(x[1] - 3.0) < 1e-12);
        assert!(math::abs(x[2] + 1.0) < 1e-12);
    }

    #[test]
    fn singular_system_is_detected() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert_eq!(solve_square(&a, &[1.0, 2.0]), Err(Error::SingularSystem));
    }

    #[test]
    fn rank_and_null_space() {
        let rows = vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]];
        assert_eq!(rank(&rows, 1e-10), 2);
        let basis = null_space(&rows, 1e-10);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        for row in &rows {
            let dot: f64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(math::abs(dot) < 1e-12);
        }
    }

    #[test]
    fn newton_maximizes_concave_quadratic() {
        let f = |x: &[f64]| {
            let v = -(x[0] - 1.0) * (x[0] - 1.0) - 2.0 * (x[1] + 0.5) * (x[1] + 0.5);
            Some((v, vec![-2.0 * (x[0] - 1.0), -4.0 * (x[1] + 0.5)]))
        };
        let out = maximize_newton(&f, &[5.0, 5.0], 1e-10, 100);
        assert!(out.converged);
        assert!(math::abs(out.x[0] - 1.0) < 1e-8);
        assert!(math::abs(out.x[1] + 0.5) < 1e-8);
    }

    #[test]
    fn simplex_projection_is_feasible_and_idempotent() {
        let p = project_simplex(&[0.8, 0.9, -0.2], 1.0);
        let sum: f64 = p.iter().sum();
        assert!(math::abs(sum - 1.0) < 1e-12);
        assert!(p.iter().all(|&v| v >= 0.0));
        let q = project_simplex(&p, 1.0);
        for (a, b) in p.iter().zip(&q) {
            assert!(math::abs(a - b) < 1e-12);
        }
    }

    #[test]
    fn lp_solves_textbook_instance() {
        // min -x - y  s.t.  x + y + s = 1, x,y,s ≥ 0  →  x + y = 1, optimum -1.
        let a = vec![vec![1.0, 1.0, 1.0]];
        let b = vec![1.0];
        let c = vec![-1.0, -1.0, 0.0];
        let x = simplex_lp(&a, &b, &c).unwrap();
        assert!(math::abs(x[0] + x[1] - 1.0) < 1e-9);
        assert!(math::abs(x[2]) < 1e-9);
    }

    #[test]
    fn lp_detects_infeasibility() {
        // x = -1 with x ≥ 0 is infeasible.
        let a = vec![vec![1.0]];
        let b = vec![-1.0];
        let c = vec![1.0];
        assert!(simplex_lp(&a, &b, &c).is_err());
    }
}
