use psrl::numkit::{ConstraintSystem, Matrix};

/// Max root modulus of a 2×2 matrix from its characteristic polynomial.
pub fn char_poly_roots_2(a: &Matrix) -> f64 {
    let (p, q, r, s) = (a.row(0)[0], a.row(0)[1], a.row(1)[0], a.row(1)[1]);
    let tr = p + s;
    let det = p * s - q * r;
    let disc = tr * tr / 4.0 - det;
    if disc >= 0.0 {
        let h = disc.sqrt();
        (tr / 2.0 + h).abs().max((tr / 2.0 - h).abs())
    } else {
        det.sqrt()
    }
}

fn det3(a: &Matrix) -> f64 {
    let r = |i: usize, j: usize| a.row(i)[j];
    r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1))
        - r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0))
        + r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0))
}

/// Max root modulus of λ³ − c₂λ² + c₁λ − c₀ by Cardano / Viète.
pub fn char_poly_roots_3(a: &Matrix) -> f64 {
    let r = |i: usize, j: usize| a.row(i)[j];
    let c2 = r(0, 0) + r(1, 1) + r(2, 2);
    let c1 = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0) + r(0, 0) * r(2, 2) - r(0, 2) * r(2, 0)
        + r(1, 1) * r(2, 2)
        - r(1, 2) * r(2, 1);
    let c0 = det3(a);
    // λ = t + c₂/3 gives t³ + pt + q
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = -2.0 * c2.powi(3) / 27.0 + c2 * c1 / 3.0 - c0;
    let d = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    if d > 0.0 {
        let u = (-q / 2.0 + d.sqrt()).cbrt();
        let v = (-q / 2.0 - d.sqrt()).cbrt();
        let real = u + v + shift;
        let re = -(u + v) / 2.0 + shift;
        let im = 3f64.sqrt() / 2.0 * (u - v);
        real.abs().max(re.hypot(im))
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = if m == 0.0 {
            0.0
        } else {
            (3.0 * q / (p * m)).clamp(-1.0, 1.0)
        };
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| {
                (m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift).abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn grid_search(sys: &ConstraintSystem, slack: f64) -> bool {
    // For each x on the grid the constraints confine y to an interval; check
    // whether that interval holds a grid value of y.
    const STEPS: i64 = 10_000;
    let step = 1e-3;
    for i in 0..=STEPS {
        let x = -5.0 + i as f64 * step;
        let (mut lo, mut hi) = (-5.0f64, 5.0f64);
        let mut ok = true;
        let mut clip = |c: &[f64], lower: f64, upper: f64| {
            // lower ≤ c0·x + c1·y ≤ upper
            let (l, u) = (lower - c[0] * x, upper - c[0] * x);
            if c[1].abs() < 1e-15 {
                if l > 0.0 || u < 0.0 {
                    ok = false;
                }
            } else if c[1] > 0.0 {
                lo = lo.max(l / c[1]);
                hi = hi.min(u / c[1]);
            } else {
                lo = lo.max(u / c[1]);
                hi = hi.min(l / c[1]);
            }
        };
        for r in &sys.abs_rows {
            clip(
                &r.coeffs,
                r.target - r.bound - slack,
                r.target + r.bound + slack,
            );
        }
        for r in &sys.eq_rows {
            clip(&r.coeffs, r.value - slack, r.value + slack);
        }
        if ok && lo <= hi {
            let j = ((lo + 5.0) / step).ceil();
            if -5.0 + j * step <= hi + 1e-12 {
                return true;
            }
        }
    }
    false
}
