//! Cubic spline interpolation with natural or periodic end conditions.

/// Solves a tridiagonal system in place. `a` sub, `b` diag, `c` super.
fn solve_tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &mut [f64]) {
    let n = d.len();
    let mut cp = vec![0.0; n];
    let mut bp = b[0];
    d[0] /= bp;
    for i in 1..n {
        cp[i - 1] = c[i - 1] / bp;
        bp = b[i] - a[i] * cp[i - 1];
        d[i] = (d[i] - a[i] * d[i - 1]) / bp;
    }
    for i in (0..n - 1).rev() {
        d[i] -= cp[i] * d[i + 1];
    }
}

/// Cubic spline through `(xs[i], ys[i])`.
///
/// Periodic splines treat the last node as wrapping to the first with the
/// given period; the sample list must not duplicate the wrap point.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    m2: Vec<f64>, // second derivatives at the nodes
    period: Option<f64>,
}

impl CubicSpline {
    pub fn natural(xs: &[f64], ys: &[f64]) -> Self {
        let n = xs.len();
        assert!(n >= 3);
        let mut sub = vec![0.0; n - 2];
        let mut diag = vec![0.0; n - 2];
        let mut sup = vec![0.0; n - 2];
        let mut rhs = vec![0.0; n - 2];
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            sub[i - 1] = h0;
            diag[i - 1] = 2.0 * (h0 + h1);
            sup[i - 1] = h1;
            rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
        }
        solve_tridiagonal(&sub, &diag, &sup, &mut rhs);
        let mut m2 = vec![0.0; n];
        m2[1..n - 1].copy_from_slice(&rhs);
        Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            m2,
            period: None,
        }
    }

    /// Periodic spline over one period; `xs` covers `[x0, x0 + period)`.
    pub fn periodic(xs: &[f64], ys: &[f64], period: f64) -> Self {
        let n = xs.len();
        assert!(n >= 3);
        // intervals h[i] = x_{i+1} - x_i with wrap h[n-1]
        let h: Vec<f64> = (0..n)
            .map(|i| {
                if i + 1 < n {
                    xs[i + 1] - xs[i]
                } else {
                    xs[0] + period - xs[n - 1]
                }
            })
            .collect();
        let y = |i: usize| ys[i % n];
        // cyclic tridiagonal for M_0..M_{n-1}, via Sherman-Morrison
        let mut diag = vec![0.0; n];
        let mut sub = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            let hm = h[(i + n - 1) % n];
            let hp = h[i];
            sub[i] = hm;
            diag[i] = 2.0 * (hm + hp);
            sup[i] = hp;
            rhs[i] = 6.0 * ((y(i + 1) - y(i)) / hp - (y(i) - y((i + n - 1) % n)) / hm);
        }
        // corner entries: sup[n-1] couples row n-1 to col 0, sub[0] row 0 to col n-1
        let alpha = sub[0];
        let beta = sup[n - 1];
        let gamma = -diag[0];
        let mut b = diag.clone();
        b[0] -= gamma;
        b[n - 1] -= alpha * beta / gamma;
        let mut x1 = rhs.clone();
        solve_tridiagonal(&sub, &b, &sup, &mut x1);
        let mut u = vec![0.0; n];
        u[0] = gamma;
        u[n - 1] = beta;
        let mut x2 = u.clone();
        solve_tridiagonal(&sub, &b, &sup, &mut x2);
        // v = (1, alpha/gamma, 0, ..)^T acting on rows 0 and n-1
        let fact = (x1[0] + alpha / gamma * x1[n - 1]) / (1.0 + x2[0] + alpha / gamma * x2[n - 1]);
        let m2: Vec<f64> = (0..n).map(|i| x1[i] - fact * x2[i]).collect();
        Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            m2,
            period: Some(period),
        }
    }

    /// Interpolated value at `x`. Periodic splines wrap `x` into range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let (i, x, xi, xi1, yi, yi1, mi, mi1) = match self.period {
            Some(p) => {
                let mut t = (x - self.xs[0]).rem_euclid(p) + self.xs[0];
                // guard against rem_euclid returning exactly p from rounding
                if t >= self.xs[0] + p {
                    t = self.xs[0];
                }
                let i = match self.xs.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
                    Ok(i) => i,
                    Err(i) => i.saturating_sub(1),
                };
                let wrap = i + 1 == n;
                let j = if wrap { 0 } else { i + 1 };
                let xi1 = if wrap { self.xs[0] + p } else { self.xs[j] };
                (i, t, self.xs[i], xi1, self.ys[i], self.ys[j], self.m2[i], self.m2[j])
            }
            None => {
                let t = x.clamp(self.xs[0], self.xs[n - 1]);
                let i = match self.xs.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
                    Ok(i) => i.min(n - 2),
                    Err(i) => i.saturating_sub(1).min(n - 2),
                };
                (
                    i,
                    t,
                    self.xs[i],
                    self.xs[i + 1],
                    self.ys[i],
                    self.ys[i + 1],
                    self.m2[i],
                    self.m2[i + 1],
                )
            }
        };
        let _ = i;
        let h = xi1 - xi;
        let a = (xi1 - x) / h;
        let b = (x - xi) / h;
        a * yi + b * yi1 + ((a * a * a - a) * mi + (b * b * b - b) * mi1) * h * h / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn natural_spline_interpolates_nodes_and_smooth_data() {
        let xs: Vec<f64> = (0..21).map(|i| i as f64 / 20.0).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| (2.0 * x).exp()).collect();
        let sp = CubicSpline::natural(&xs, &ys);
        for (x, y) in xs.iter().zip(ys.iter()) {
            assert!((sp.eval(*x) - y).abs() < 1e-12);
        }
        let err = (sp.eval(0.517) - (2.0 * 0.517f64).exp()).abs();
        assert!(err < 1e-5, "err {err}");
    }

    #[test]
    fn periodic_spline_wraps_and_matches_trig() {
        let m = 64;
        let xs: Vec<f64> = (0..m).map(|i| 2.0 * PI * i as f64 / m as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| x.sin()).collect();
        let sp = CubicSpline::periodic(&xs, &ys, 2.0 * PI);
        for &x in &[0.1234, 3.7, 6.2, -1.0, 7.5] {
            let err = (sp.eval(x) - x.sin()).abs();
            assert!(err < 2e-6, "x={x} err={err}");
        }
    }
}
