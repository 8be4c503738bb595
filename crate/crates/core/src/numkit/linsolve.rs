use super::Matrix;
use crate::error::{Error, Result};

/// Relative pivot tolerance: a pivot is rejected when its magnitude does not
/// exceed `PIVOT_TOL * max|a_ij|`.
pub const PIVOT_TOL: f64 = 1e-12;

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Malformed(format!(
            "solve_linear needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if b.len() != n {
        return Err(Error::Malformed(format!(
            "right-hand side has length {}, expected {n}",
            b.len()
        )));
    }
    if b.iter().any(|v| !v.is_finite()) {
        return Err(Error::Malformed("right-hand side must be finite".into()));
    }
    let scale = a.max_abs();
    let threshold = PIVOT_TOL * scale;

    // augmented working copy, row-major with n+1 columns
    let w = n + 1;
    let mut m = vec![0.0; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(a.row(i));
        m[i * w + n] = b[i];
    }

    for col in 0..n {
        let (piv, piv_abs) =
            (col..n)
                .map(|r| (r, m[r * w + col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if piv_abs <= threshold || scale == 0.0 {
            return Err(Error::SingularMatrix { column: col });
        }
        if piv != col {
            for j in 0..w {
                m.swap(piv * w + j, col * w + j);
            }
        }
        let p = m[col * w + col];
        for r in col + 1..n {
            let f = m[r * w + col] / p;
            if f == 0.0 {
                continue;
            }
            m[r * w + col] = 0.0;
            for j in col + 1..w {
                m[r * w + j] -= f * m[col * w + j];
            }
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = m[i * w + n];
        for j in i + 1..n {
            acc -= m[i * w + j] * x[j];
        }
        x[i] = acc / m[i * w + i];
    }
    Ok(x)
}
