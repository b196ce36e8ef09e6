//! Differentiation kernels: Fornberg finite-difference weights on arbitrary
//! grids and trigonometric (spectral) differentiation on periodic uniform
//! grids.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use ndarray::Array1;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Fornberg weights for the `k`-th derivative at `x0` from the nodes `xs`.
///
/// Classic recursion (Fornberg 1988); exact for polynomials of degree
/// `xs.len() - 1`, so a stencil of `k + 4` nodes is order 4.
pub fn fornberg_weights(x0: f64, xs: &[f64], k: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(k < n, "stencil too small for derivative order");
    // delta[m][j] = weight of node j for derivative order m
    let mut delta = vec![vec![0.0; n]; k + 1];
    delta[0][0] = 1.0;
    let mut c1 = 1.0;
    for i in 1..n {
        let mut c2 = 1.0;
        let mn = k.min(i);
        let c4 = xs[i] - x0;
        let c5 = xs[i - 1] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            // the new column i must read column i-1 before it is overwritten
            if j == i - 1 {
                for m in (1..=mn).rev() {
                    delta[m][i] = c1 / c2 * (m as f64 * delta[m - 1][j] - c5 * delta[m][j]);
                }
                delta[0][i] = -c1 / c2 * c5 * delta[0][j];
            }
            for m in (1..=mn).rev() {
                delta[m][j] = (c4 * delta[m][j] - m as f64 * delta[m - 1][j]) / c3;
            }
            delta[0][j] = c4 * delta[0][j] / c3;
        }
        c1 = c2;
    }
    delta[k].clone()
}

/// k-th derivative of sampled values on an open (non-periodic) grid.
///
/// Stencil width `k + 4` (clamped to the grid size) gives order-4 centered
/// stencils in the interior and order-4 one-sided stencils at the ends.
pub fn open_derivative(values: &Array1<f64>, params: &Array1<f64>, k: usize) -> Array1<f64> {
    let m = values.len();
    if k == 0 {
        return values.clone();
    }
    let width = (k + 4).min(m);
    let mut out = Array1::zeros(m);
    for i in 0..m {
        let start = i.saturating_sub(width / 2).min(m - width);
        let xs: Vec<f64> = (start..start + width).map(|j| params[j]).collect();
        let w = fornberg_weights(params[i], &xs, k);
        let mut acc = 0.0;
        for (j, wj) in w.iter().enumerate() {
            acc += wj * values[start + j];
        }
        out[i] = acc;
    }
    out
}

thread_local! {
    static FFT_CACHE: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> =
        RefCell::new(HashMap::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    FFT_CACHE.with(|c| {
        c.borrow_mut()
            .entry((len, inverse))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                if inverse {
                    planner.plan_fft_inverse(len)
                } else {
                    planner.plan_fft_forward(len)
                }
            })
            .clone()
    })
}

fn fft_forward(values: &Array1<f64>) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    plan(buf.len(), false).process(&mut buf);
    buf
}

fn fft_inverse_real(mut buf: Vec<Complex<f64>>) -> Array1<f64> {
    let m = buf.len();
    plan(m, true).process(&mut buf);
    Array1::from_iter(buf.iter().map(|c| c.re / m as f64))
}

/// Signed frequency of bin `j` for an `m`-point transform with period `p`.
fn omega(j: usize, m: usize, p: f64) -> f64 {
    let jj = if j <= m / 2 { j as i64 } else { j as i64 - m as i64 };
    2.0 * std::f64::consts::PI * jj as f64 / p
}

/// k-th derivative of periodic samples on a uniform grid with period `p`.
pub fn spectral_derivative(values: &Array1<f64>, p: f64, k: usize) -> Array1<f64> {
    let m = values.len();
    if k == 0 {
        return values.clone();
    }
    let mut buf = fft_forward(values);
    for (j, c) in buf.iter_mut().enumerate() {
        // the Nyquist bin has no well-defined sign for odd derivatives
        if m % 2 == 0 && j == m / 2 && k % 2 == 1 {
            *c = Complex::new(0.0, 0.0);
            continue;
        }
        let iw = Complex::new(0.0, omega(j, m, p));
        *c *= iw.powu(k as u32);
    }
    fft_inverse_real(buf)
}

/// Cumulative integral of periodic samples at the grid points, anchored to
/// zero at the first sample. Spectrally accurate via the FFT antiderivative;
/// the mean contributes a linear-in-u term.
pub fn spectral_cumulative(values: &Array1<f64>, params: &Array1<f64>, p: f64) -> Array1<f64> {
    let m = values.len();
    let buf = fft_forward(values);
    let mean = buf[0].re / m as f64;
    let mut anti = buf;
    anti[0] = Complex::new(0.0, 0.0);
    for (j, c) in anti.iter_mut().enumerate() {
        if j == 0 {
            continue;
        }
        // 1/(iω) is odd in ω, so the Nyquist bin is dropped like an odd derivative
        if m % 2 == 0 && j == m / 2 {
            *c = Complex::new(0.0, 0.0);
            continue;
        }
        *c /= Complex::new(0.0, omega(j, m, p));
    }
    let periodic_part = fft_inverse_real(anti);
    let u0 = params[0];
    let base = periodic_part[0];
    Array1::from_iter(
        (0..m).map(|i| mean * (params[i] - u0) + periodic_part[i] - base),
    )
}

/// Evaluates the polynomial interpolating `(xs, ys)` at `x` (Neville's scheme).
pub fn neville_eval(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let mut q = ys.to_vec();
    for level in 1..n {
        for i in 0..n - level {
            q[i] = ((x - xs[i + level]) * q[i] + (xs[i] - x) * q[i + 1]) / (xs[i] - xs[i + level]);
        }
    }
    q[0]
}

/// Integral over `[a, b]` of the cubic through the 4 stencil nodes, by
/// 3-point Gauss-Legendre (exact for cubics).
pub fn cubic_panel_integral(xs: &[f64], ys: &[f64], a: f64, b: f64) -> f64 {
    const GL_X: [f64; 3] = [-0.7745966692414834, 0.0, 0.7745966692414834];
    const GL_W: [f64; 3] = [0.5555555555555556, 0.8888888888888888, 0.5555555555555556];
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL_X.iter().zip(GL_W.iter()) {
        acc += w * neville_eval(xs, ys, mid + half * x);
    }
    acc * half
}

/// Cumulative integral of samples on an open grid at the grid points,
/// integrating the local cubic interpolant over each panel (order 4).
pub fn open_cumulative(values: &Array1<f64>, params: &Array1<f64>) -> Array1<f64> {
    let m = values.len();
    let mut out = Array1::zeros(m);
    let mut acc = 0.0;
    for i in 0..m - 1 {
        let width = 4.min(m);
        let start = i.saturating_sub(1).min(m - width);
        let xs: Vec<f64> = (start..start + width).map(|j| params[j]).collect();
        let ys: Vec<f64> = (start..start + width).map(|j| values[j]).collect();
        acc += cubic_panel_integral(&xs, &ys, params[i], params[i + 1]);
        out[i + 1] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(m: usize, a: f64, b: f64) -> Array1<f64> {
        Array1::from_iter((0..m).map(|i| a + (b - a) * i as f64 / (m - 1) as f64))
    }

    #[test]
    fn fornberg_reproduces_polynomial_derivatives() {
        let xs = [0.0, 0.3, 0.7, 1.1, 1.6];
        // f(x) = x^3 - 2x, f''(x) = 6x
        let ys: Vec<f64> = xs.iter().map(|&x| x * x * x - 2.0 * x).collect();
        let w = fornberg_weights(0.7, &xs, 2);
        let d2: f64 = w.iter().zip(ys.iter()).map(|(a, b)| a * b).sum();
        assert!((d2 - 4.2).abs() < 1e-10);
    }

    #[test]
    fn open_derivative_converges_at_order_four() {
        let errs: Vec<f64> = [64usize, 128]
            .iter()
            .map(|&m| {
                let p = grid(m, 0.0, 2.0);
                let v = p.mapv(f64::sin);
                let d = open_derivative(&v, &p, 1);
                (&d - &p.mapv(f64::cos))
                    .iter()
                    .fold(0.0f64, |a, &b| a.max(b.abs()))
            })
            .collect();
        let order = (errs[0] / errs[1]).log2();
        assert!(order > 3.5, "order {order}");
    }

    #[test]
    fn spectral_derivative_is_machine_accurate_on_trig() {
        let m = 64;
        let p = Array1::from_iter((0..m).map(|i| 2.0 * PI * i as f64 / m as f64));
        let v = p.mapv(|u| (3.0 * u).sin());
        let d = spectral_derivative(&v, 2.0 * PI, 2);
        let exact = p.mapv(|u| -9.0 * (3.0 * u).sin());
        let err = (&d - &exact).iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        assert!(err < 1e-10, "err {err}");
    }

    #[test]
    fn cumulatives_integrate_known_functions() {
        let m = 128;
        let p = Array1::from_iter((0..m).map(|i| 2.0 * PI * i as f64 / m as f64));
        let v = p.mapv(|u| 1.0 + 0.5 * u.cos());
        let s = spectral_cumulative(&v, &p, 2.0 * PI);
        for i in 0..m {
            let exact = p[i] + 0.5 * p[i].sin();
            assert!((s[i] - exact).abs() < 1e-10);
        }

        let po = grid(101, 0.0, 1.0);
        let vo = po.mapv(|u| u * u * u);
        let so = open_cumulative(&vo, &po);
        assert!((so[100] - 0.25).abs() < 1e-12);
    }
}
