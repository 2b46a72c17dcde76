//! Small numeric helpers shared by the experiments.

/// Arithmetic mean, summed in slice order. NaN for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n - 1 denominator). Zero for fewer than two values.
pub fn std_dev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

/// Quantile with linear interpolation between order statistics
/// (`h = (n - 1) q`). `sorted` must be ascending and non-empty.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Least-squares slope and intercept of `ln y` against `ln x`.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (mx, my) = (mean(&lx), mean(&ly));
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Inverts a sampled curve `(x_i, y_i)` in log-log space: returns the first `x`
/// (scanning in the given order) at which the piecewise-linear interpolant of
/// `(ln x, ln y)` equals `target`. `None` if no segment brackets the target.
pub fn loglog_solve_x(xs: &[f64], ys: &[f64], target: f64) -> Option<f64> {
    if target.is_nan() || target <= 0.0 || xs.len() != ys.len() {
        return None;
    }
    let lt = target.ln();
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() == 1 && (pts[0].1 - lt).abs() < 1e-15 {
        return Some(pts[0].0.exp());
    }
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let (lo, hi) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
        if lt < lo || lt > hi {
            continue;
        }
        if y1 == y0 {
            return Some(x0.exp());
        }
        let f = (lt - y0) / (y1 - y0);
        return Some((x0 + f * (x1 - x0)).exp());
    }
    None
}

/// `n` points evenly spaced in log between `lo` and `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == 0 {
                        lo
                    } else if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quantiles() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile_sorted(&v, 0.5), 3.0);
        assert_eq!(quantile_sorted(&v, 0.0), 1.0);
        assert_eq!(quantile_sorted(&v, 1.0), 5.0);
        assert_relative_eq!(quantile_sorted(&v, 0.05), 1.2);
        assert_eq!(quantile_sorted(&[7.0], 0.95), 7.0);
    }

    #[test]
    fn loglog_fit_recovers_power_law() {
        let xs = [1e2, 1e3, 1e4, 1e5];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-0.5)).collect();
        let (slope, icpt) = loglog_fit(&xs, &ys);
        assert_relative_eq!(slope, -0.5, epsilon = 1e-12);
        assert_relative_eq!(icpt, 3f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn loglog_solve_is_exact_on_power_law() {
        let xs = [10.0, 100.0, 1000.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| x.powf(-0.5)).collect();
        let x = loglog_solve_x(&xs, &ys, 0.05).unwrap();
        assert_relative_eq!(x, 400.0, epsilon = 1e-9);
        assert!(loglog_solve_x(&xs, &ys, 0.5).is_none());
        assert!(loglog_solve_x(&xs, &ys, 0.01).is_none());
        assert_relative_eq!(
            loglog_solve_x(&xs, &ys, ys[2]).unwrap(),
            1000.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn log_space_endpoints() {
        let g = log_space(1e-3, 1e-1, 3);
        assert_eq!(g[0], 1e-3);
        assert_relative_eq!(g[1], 1e-2, epsilon = 1e-12);
        assert_eq!(g[2], 1e-1);
    }
}
