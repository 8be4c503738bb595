//! Eigenvalues of small dense real matrices.
//!
//! The matrix is first brought to upper Hessenberg form with Householder
//! reflections, then the Francis double-shift QR iteration deflates it into
//! 1x1 and 2x2 blocks whose eigenvalues are read off directly.

use super::Matrix;
use crate::error::{Error, Result};

/// Relative tolerance for declaring a subdiagonal entry negligible.
pub const DEFLATION_TOL: f64 = 1e-12;
/// Total QR sweep budget across all deflations.
pub const MAX_ITERATIONS: usize = 10_000;
/// Half-width of the band around 1 where `is_spectral_radius_lt_one` refuses to answer.
pub const RADIUS_MARGIN: f64 = 1e-9;
/// Highest power inspected by the norm and trace shortcuts.
pub const MAX_POWER: usize = 64;

/// All eigenvalues of `m` as `(re, im)` pairs, in no particular order.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<(f64, f64)>> {
    if !m.is_square() {
        return Err(Error::Malformed(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut h: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    hessenberg(&mut h);
    hqr(&mut h)
}

/// Largest eigenvalue magnitude of `m`.
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    Ok(eigenvalues(m)?
        .into_iter()
        .map(|(re, im)| re.hypot(im))
        .fold(0.0, f64::max))
}

/// Decides `spectral_radius(m) < 1`.
///
/// Two sound shortcuts run before the eigensolver: `||m^k||_inf < 1` for some
/// `k <= 64` proves `rho < 1`, and `|tr(m^k)| / n >= 1` proves `rho >= 1`.
/// Otherwise the eigenvalue estimate decides, and an estimate within
/// [`RADIUS_MARGIN`] of 1 yields [`Error::Undecided`].
pub fn is_spectral_radius_lt_one(m: &Matrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Malformed(
            "spectral radius of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(true);
    }
    let mut power = m.clone();
    for k in 1..=MAX_POWER {
        let norm = power.inf_norm();
        if norm < 1.0 {
            return Ok(true);
        }
        // rho^k >= |sum of k-th powers of eigenvalues| / n
        if power.trace().abs() / n as f64 >= 1.0 {
            return Ok(false);
        }
        if !norm.is_finite() || norm > 1e150 || k == MAX_POWER {
            break;
        }
        power = power.mul(m);
    }
    let rho = spectral_radius(m)?;
    if rho < 1.0 - RADIUS_MARGIN {
        Ok(true)
    } else if rho > 1.0 + RADIUS_MARGIN {
        Ok(false)
    } else {
        Err(Error::Undecided { estimate: rho })
    }
}

fn hessenberg(h: &mut [Vec<f64>]) {
    let n = h.len();
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0; n];
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| h[i][m - 1].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut hh = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[i][m - 1] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;

        for j in m..n {
            let f = (m..=high).rev().map(|i| ort[i] * h[i][j]).sum::<f64>() / hh;
            for i in m..=high {
                h[i][j] -= f * ort[i];
            }
        }
        for row in h.iter_mut().take(high + 1) {
            let f = (m..=high).rev().map(|j| ort[j] * row[j]).sum::<f64>() / hh;
            for j in m..=high {
                row[j] -= f * ort[j];
            }
        }
        ort[m] *= scale;
        h[m][m - 1] = scale * g;
    }
    for (i, row) in h.iter_mut().enumerate() {
        for v in row.iter_mut().take(i.saturating_sub(1)) {
            *v = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hqr(a: &mut [Vec<f64>]) -> Result<Vec<(f64, f64)>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let mut anorm = 0.0;
    for (i, row) in a.iter().enumerate() {
        for v in row.iter().skip(i.saturating_sub(1)) {
            anorm += v.abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let mut total = 0usize;

    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l >= 1 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() <= DEFLATION_TOL * s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                out.push((x + t, 0.0));
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    let r1 = x + z;
                    let r2 = if z != 0.0 { x - w / z } else { r1 };
                    out.push((r1, 0.0));
                    out.push((r2, 0.0));
                } else {
                    out.push((x + p, z));
                    out.push((x + p, -z));
                }
                nn -= 2;
                break;
            }

            if total >= MAX_ITERATIONS {
                return Err(Error::NoConvergence { iterations: total });
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                    row[i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;

            let (mut p, mut q, mut r);
            let mut m = nu - 2;
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let mut s = p.abs() + q.abs() + r.abs();
                if s == 0.0 {
                    s = 1.0;
                }
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }
            for k in m..nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = if k != nu - 1 { a[k + 2][k - 1] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[k][k - 1] = -a[k][k - 1];
                    }
                } else {
                    a[k][k - 1] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nu {
                    let mut pp = a[k][j] + q * a[k + 1][j];
                    if k != nu - 1 {
                        pp += r * a[k + 2][j];
                        a[k + 2][j] -= pp * z;
                    }
                    a[k + 1][j] -= pp * y;
                    a[k][j] -= pp * x;
                }
                let mmin = nu.min(k + 3);
                for row in a.iter_mut().take(mmin + 1).skip(l) {
                    let mut pp = x * row[k] + y * row[k + 1];
                    if k != nu - 1 {
                        pp += z * row[k + 2];
                        row[k + 2] -= pp * r;
                    }
                    row[k + 1] -= pp * q;
                    row[k] -= pp;
                }
            }
        }
    }
    Ok(out)
}
