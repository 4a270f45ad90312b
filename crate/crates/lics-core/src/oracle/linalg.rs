//! Dense complex linear solves for the oracle back ends.
//!
//! Gaussian elimination with partial pivoting; small systems only (the
//! largest solved here is 5x5). The relative residual of every solve is
//! returned so callers can assert `||Ax - b|| / ||b|| < 1e-12`.

use num_complex::Complex64 as C64;

use crate::error::{LicsError, Result};

#[derive(Debug, Clone)]
pub struct Solved {
    pub x: Vec<C64>,
    pub residual: f64,
}

/// Solve `A x = b` in place of copies; `a` is row-major `n x n`.
pub fn solve_complex(a: &[Vec<C64>], b: &[C64]) -> Result<Solved> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut rhs: Vec<C64> = b.to_vec();

    for col in 0..n {
        let (piv_row, piv_mag) = (col..n)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if piv_mag == 0.0 || !piv_mag.is_finite() {
            return Err(LicsError::SingularSystem { pivot: piv_mag });
        }
        m.swap(col, piv_row);
        rhs.swap(col, piv_row);
        let pivot = m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / pivot;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let v = m[col][k];
                m[row][k] -= factor * v;
            }
            let r = rhs[col];
            rhs[row] -= factor * r;
        }
    }

    let mut x = vec![C64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }

    // residual against the original system
    let mut rnorm2 = 0.0;
    let mut bnorm2 = 0.0;
    for row in 0..n {
        let mut ax = C64::new(0.0, 0.0);
        for k in 0..n {
            ax += a[row][k] * x[k];
        }
        rnorm2 += (ax - b[row]).norm_sqr();
        bnorm2 += b[row].norm_sqr();
    }
    let residual = if bnorm2 > 0.0 {
        (rnorm2 / bnorm2).sqrt()
    } else {
        rnorm2.sqrt()
    };

    Ok(Solved { x, residual })
}

/// Solve a small real system (used by the folded population balance).
pub fn solve_real(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let ac: Vec<Vec<C64>> = a
        .iter()
        .map(|r| r.iter().map(|&v| C64::new(v, 0.0)).collect())
        .collect();
    let bc: Vec<C64> = b.iter().map(|&v| C64::new(v, 0.0)).collect();
    let s = solve_complex(&ac, &bc)?;
    Ok(s.x.into_iter().take(n).map(|z| z.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_known_system() {
        let i = C64::new(0.0, 1.0);
        let a = vec![
            vec![C64::new(2.0, 0.0), i],
            vec![-i, C64::new(1.0, 0.0)],
        ];
        // pick x, form b
        let x_true = [C64::new(1.0, -2.0), C64::new(0.5, 3.0)];
        let b: Vec<C64> = (0..2)
            .map(|r| a[r][0] * x_true[0] + a[r][1] * x_true[1])
            .collect();
        let s = solve_complex(&a, &b).unwrap();
        assert!((s.x[0] - x_true[0]).norm() < 1e-13);
        assert!((s.x[1] - x_true[1]).norm() < 1e-13);
        assert!(s.residual < 1e-13);
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![
            vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
            vec![C64::new(2.0, 0.0), C64::new(4.0, 0.0)],
        ];
        let b = vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)];
        assert!(solve_complex(&a, &b).is_err());
    }
}
