//! Discrete curves in Euclidean n-space: sampling, differentiation,
//! arclength and reparameterization.
//!
//! Closed curves live on uniform grids and are differentiated spectrally;
//! open curves use order-4 finite differences (one-sided at the ends).

pub mod diff;
pub mod spline;

use ndarray::{Array1, Array2};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use spline::CubicSpline;

pub const MIN_SAMPLES_OPEN: usize = 4;
pub const MIN_SAMPLES_CLOSED: usize = 8;
/// Scale-invariant guard against division by the speed.
pub const SPEED_EPS_REL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Open,
    Closed,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Open => "open",
            Topology::Closed => "closed",
        }
    }
}

/// A sampled curve in Rⁿ over a strictly increasing parameter grid.
#[derive(Debug, Clone)]
pub struct DiscreteCurve {
    dim: usize,
    samples: Array2<f64>, // m x dim
    params: Array1<f64>,
    topology: Topology,
    period: Option<f64>,
}

impl DiscreteCurve {
    pub fn new(samples: Array2<f64>, params: Array1<f64>, topology: Topology) -> Result<Self> {
        let m = samples.nrows();
        let dim = samples.ncols();
        if dim < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: dim });
        }
        let need = match topology {
            Topology::Open => MIN_SAMPLES_OPEN,
            Topology::Closed => MIN_SAMPLES_CLOSED,
        };
        if m < need {
            return Err(Error::InsufficientSamples {
                got: m,
                need,
                topology: topology.as_str(),
            });
        }
        if params.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: params.len(),
            });
        }
        for (i, p) in params.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { what: "params", index: i });
            }
            if i > 0 && params[i] <= params[i - 1] {
                return Err(Error::NonIncreasingGrid { index: i });
            }
        }
        for (i, row) in samples.rows().into_iter().enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { what: "samples", index: i });
            }
        }
        let period = match topology {
            Topology::Open => None,
            Topology::Closed => {
                let h = params[1] - params[0];
                let span = params[m - 1] - params[0];
                for i in 1..m {
                    let hi = params[i] - params[i - 1];
                    if (hi - h).abs() > 1e-9 * h.abs().max(1.0) {
                        return Err(Error::NonUniformClosedGrid { index: i });
                    }
                }
                Some(span + h)
            }
        };
        Ok(Self {
            dim,
            samples,
            params,
            topology,
            period,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.samples.nrows()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &Array2<f64> {
        &self.samples
    }

    pub fn params(&self) -> &Array1<f64> {
        &self.params
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Period of the parameter grid (closed curves only).
    pub fn period(&self) -> Option<f64> {
        self.period
    }

    /// Replaces the samples, keeping grid and topology. Sample positions must
    /// stay finite; used by the time integrator.
    pub fn with_samples(&self, samples: Array2<f64>) -> Result<Self> {
        DiscreteCurve::new(samples, self.params.clone(), self.topology)
    }

    /// k-th derivative of a scalar field aligned with the curve, w.r.t. u.
    pub fn diff_field(&self, field: &Array1<f64>, k: usize) -> Array1<f64> {
        match self.topology {
            Topology::Closed => diff::spectral_derivative(field, self.period.unwrap(), k),
            Topology::Open => diff::open_derivative(field, &self.params, k),
        }
    }

    /// Columnwise k-th derivative of a vector field w.r.t. u.
    pub fn diff_vector(&self, field: &Array2<f64>, k: usize) -> Array2<f64> {
        let mut out = Array2::zeros(field.raw_dim());
        for (c, col) in field.columns().into_iter().enumerate() {
            let d = self.diff_field(&col.to_owned(), k);
            out.column_mut(c).assign(&d);
        }
        out
    }

    /// Per-sample k-th derivative of the curve itself, 1 ≤ k ≤ dim.
    pub fn derivative(&self, k: usize) -> Result<Array2<f64>> {
        if k == 0 || k > self.dim {
            return Err(Error::OrderTooHigh { order: k, dim: self.dim });
        }
        Ok(self.diff_vector(&self.samples, k))
    }

    /// Pointwise speed v = ‖dα/du‖, guarded against near-vanishing values.
    pub fn speed(&self) -> Result<Array1<f64>> {
        let d1 = self.derivative(1)?;
        let v = Array1::from_iter(
            d1.rows()
                .into_iter()
                .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt()),
        );
        let max = v.iter().fold(0.0f64, |a, &b| a.max(b));
        let min = v.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let threshold = SPEED_EPS_REL * max;
        if !(min > threshold) {
            return Err(Error::DegenerateSpeed { min, threshold });
        }
        Ok(v)
    }

    /// Cumulative arclength at grid points, S(u₀) = 0.
    pub fn cumulative_arclength(&self) -> Result<Array1<f64>> {
        let v = self.speed()?;
        Ok(match self.topology {
            Topology::Closed => diff::spectral_cumulative(&v, &self.params, self.period.unwrap()),
            Topology::Open => diff::open_cumulative(&v, &self.params),
        })
    }

    /// Total arclength: full-period integral for closed curves, S(u_end) for open.
    pub fn total_arclength(&self) -> Result<f64> {
        let v = self.speed()?;
        Ok(match self.topology {
            // trapezoid on periodic data = mean * period, spectrally accurate
            Topology::Closed => v.mean().unwrap() * self.period.unwrap(),
            Topology::Open => {
                let s = diff::open_cumulative(&v, &self.params);
                s[s.len() - 1]
            }
        })
    }

    /// Arclength S(u*) from the first grid point. Closed curves accept any
    /// u*, taken modulo the period with whole loops accumulated.
    pub fn arclength(&self, ustar: f64) -> Result<f64> {
        let m = self.len();
        let v = self.speed()?;
        let s = self.cumulative_arclength()?;
        let u0 = self.params[0];
        match self.topology {
            Topology::Open => {
                let u_end = self.params[m - 1];
                if ustar < u0 - 1e-12 || ustar > u_end + 1e-12 {
                    return Err(Error::OutOfRange {
                        value: ustar,
                        lo: u0,
                        hi: u_end,
                    });
                }
                let ustar = ustar.clamp(u0, u_end);
                let i = interval_index(&self.params, ustar);
                let width = 4.min(m);
                let start = i.saturating_sub(1).min(m - width);
                let xs: Vec<f64> = (start..start + width).map(|j| self.params[j]).collect();
                let ys: Vec<f64> = (start..start + width).map(|j| v[j]).collect();
                Ok(s[i] + diff::cubic_panel_integral(&xs, &ys, self.params[i], ustar))
            }
            Topology::Closed => {
                let p = self.period.unwrap();
                let total = self.total_arclength()?;
                let t = ustar - u0;
                let rem = t.rem_euclid(p);
                let loops = ((t - rem) / p).round();
                let i = interval_index(&self.params, u0 + rem);
                // wrap the 4-point stencil around the period
                let mut xs = Vec::with_capacity(4);
                let mut ys = Vec::with_capacity(4);
                for off in -1i64..3 {
                    let j = (i as i64 + off).rem_euclid(m as i64) as usize;
                    let shift = if (i as i64 + off) < 0 {
                        -p
                    } else if (i as i64 + off) >= m as i64 {
                        p
                    } else {
                        0.0
                    };
                    xs.push(self.params[j] + shift);
                    ys.push(v[j]);
                }
                let partial = diff::cubic_panel_integral(&xs, &ys, self.params[i], u0 + rem);
                Ok(loops * total + s[i] + partial)
            }
        }
    }

    /// Derivative with respect to arclength of a scalar field: (1/v) d/du.
    pub fn d_ds_scalar(&self, field: &Array1<f64>) -> Result<Array1<f64>> {
        let v = self.speed()?;
        Ok(self.diff_field(field, 1) / &v)
    }

    /// Derivative with respect to arclength of a vector field.
    pub fn d_ds_vector(&self, field: &Array2<f64>) -> Result<Array2<f64>> {
        let v = self.speed()?;
        let mut out = self.diff_vector(field, 1);
        for (mut row, vi) in out.rows_mut().into_iter().zip(v.iter()) {
            row.mapv_inplace(|x| x / vi);
        }
        Ok(out)
    }

    /// Resamples the curve at `m_new` points uniform in arclength.
    ///
    /// Coordinates are interpolated by cubic splines (periodic for closed
    /// curves, natural for open); the new parameter grid is the arclength
    /// itself, so the result has speed ≈ 1.
    pub fn reparameterize_arclength(&self, m_new: usize) -> Result<DiscreteCurve> {
        let need = match self.topology {
            Topology::Open => MIN_SAMPLES_OPEN,
            Topology::Closed => MIN_SAMPLES_CLOSED,
        };
        if m_new < need {
            return Err(Error::InsufficientSamples {
                got: m_new,
                need,
                topology: self.topology.as_str(),
            });
        }
        let m = self.len();
        let s_grid = self.cumulative_arclength()?;
        let total = self.total_arclength()?;
        let u0 = self.params[0];
        let xs: Vec<f64> = self.params.to_vec();

        // spline of S(u); for closed curves spline the periodic part only
        let (s_spline, linear_rate) = match self.topology {
            Topology::Open => (
                CubicSpline::natural(&xs, &s_grid.to_vec()),
                0.0,
            ),
            Topology::Closed => {
                let p = self.period.unwrap();
                let rate = total / p;
                let per: Vec<f64> = (0..m).map(|i| s_grid[i] - rate * (xs[i] - u0)).collect();
                (CubicSpline::periodic(&xs, &per, p), rate)
            }
        };
        let s_of_u = |u: f64| s_spline.eval(u) + linear_rate * (u - u0);

        let coord_splines: Vec<CubicSpline> = (0..self.dim)
            .map(|c| {
                let ys: Vec<f64> = self.samples.column(c).to_vec();
                match self.topology {
                    Topology::Open => CubicSpline::natural(&xs, &ys),
                    Topology::Closed => CubicSpline::periodic(&xs, &ys, self.period.unwrap()),
                }
            })
            .collect();

        let targets: Vec<f64> = match self.topology {
            Topology::Closed => (0..m_new).map(|j| j as f64 * total / m_new as f64).collect(),
            Topology::Open => (0..m_new)
                .map(|j| j as f64 * total / (m_new - 1) as f64)
                .collect(),
        };

        let u_max = match self.topology {
            Topology::Closed => u0 + self.period.unwrap(),
            Topology::Open => self.params[m - 1],
        };

        let mut new_samples = Array2::zeros((m_new, self.dim));
        for (j, &target) in targets.iter().enumerate() {
            // bisection on the monotone map u -> S(u)
            let (mut lo, mut hi) = (u0, u_max);
            for _ in 0..64 {
                let mid = 0.5 * (lo + hi);
                if s_of_u(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let u = 0.5 * (lo + hi);
            for (c, sp) in coord_splines.iter().enumerate() {
                new_samples[[j, c]] = sp.eval(u);
            }
        }
        let new_params = Array1::from_vec(targets);
        DiscreteCurve::new(new_samples, new_params, self.topology)
    }
}

fn interval_index(params: &Array1<f64>, u: f64) -> usize {
    let m = params.len();
    match params
        .as_slice()
        .unwrap()
        .binary_search_by(|v| v.partial_cmp(&u).unwrap())
    {
        Ok(i) => i.min(m - 2),
        Err(i) => i.saturating_sub(1).min(m - 2),
    }
}

/// Analytic curve presets plus tabulated data.
#[derive(Debug, Clone)]
pub enum CurvePreset {
    /// (r cos u, r sin u), closed, period 2π.
    Circle { r: f64 },
    /// (a cos u, b sin u), closed, period 2π.
    Ellipse { a: f64, b: f64 },
    /// (a cos u, a sin u, b u), open on [0, 2π].
    Helix { a: f64, b: f64 },
    /// (cos au, sin au, cos bu, sin bu)/√2 in E⁴, closed; a, b integers.
    FlatTorus { a: f64, b: f64 },
    /// Straight segment between two points, open.
    Segment { from: Vec<f64>, to: Vec<f64> },
    /// (u, amp sin(freq u)) in R², open on [0, length].
    Sine { amp: f64, freq: f64, length: f64 },
    /// (u, ay sin(wy u), az cos(wz u)) in R³, open on [0, length].
    Wave {
        ay: f64,
        wy: f64,
        az: f64,
        wz: f64,
        length: f64,
    },
    /// Explicit samples with their parameter grid.
    Points {
        samples: Vec<Vec<f64>>,
        params: Vec<f64>,
        topology: Topology,
    },
}

impl CurvePreset {
    pub fn dim(&self) -> usize {
        match self {
            CurvePreset::Circle { .. } | CurvePreset::Ellipse { .. } | CurvePreset::Sine { .. } => 2,
            CurvePreset::Helix { .. } | CurvePreset::Wave { .. } => 3,
            CurvePreset::FlatTorus { .. } => 4,
            CurvePreset::Segment { from, .. } => from.len(),
            CurvePreset::Points { samples, .. } => samples.first().map_or(0, |s| s.len()),
        }
    }

    pub fn natural_topology(&self) -> Topology {
        match self {
            CurvePreset::Circle { .. }
            | CurvePreset::Ellipse { .. }
            | CurvePreset::FlatTorus { .. } => Topology::Closed,
            CurvePreset::Points { topology, .. } => *topology,
            _ => Topology::Open,
        }
    }

    /// Samples the preset at `m` points in its natural parameter.
    pub fn build(&self, m: usize) -> Result<DiscreteCurve> {
        let topology = self.natural_topology();
        match self {
            CurvePreset::Points { samples, params, topology } => {
                let dim = samples.first().map_or(0, |s| s.len());
                let mut arr = Array2::zeros((samples.len(), dim));
                for (i, row) in samples.iter().enumerate() {
                    if row.len() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            got: row.len(),
                        });
                    }
                    for (c, &x) in row.iter().enumerate() {
                        arr[[i, c]] = x;
                    }
                }
                DiscreteCurve::new(arr, Array1::from_vec(params.clone()), *topology)
            }
            _ => {
                let (lo, hi) = match self {
                    CurvePreset::Sine { length, .. } | CurvePreset::Wave { length, .. } => {
                        (0.0, *length)
                    }
                    CurvePreset::Segment { .. } => (0.0, 1.0),
                    _ => (0.0, 2.0 * PI),
                };
                let params: Array1<f64> = match topology {
                    Topology::Closed => {
                        Array1::from_iter((0..m).map(|i| lo + (hi - lo) * i as f64 / m as f64))
                    }
                    Topology::Open => Array1::from_iter(
                        (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1).max(1) as f64),
                    ),
                };
                let dim = self.dim();
                let mut arr = Array2::zeros((m, dim));
                for (i, &u) in params.iter().enumerate() {
                    let p = self.point(u);
                    for (c, &x) in p.iter().enumerate() {
                        arr[[i, c]] = x;
                    }
                }
                DiscreteCurve::new(arr, params, topology)
            }
        }
    }

    /// Point on the preset at parameter `u` (not for `Points`).
    pub fn point(&self, u: f64) -> Vec<f64> {
        match self {
            CurvePreset::Circle { r } => vec![r * u.cos(), r * u.sin()],
            CurvePreset::Ellipse { a, b } => vec![a * u.cos(), b * u.sin()],
            CurvePreset::Helix { a, b } => vec![a * u.cos(), a * u.sin(), b * u],
            CurvePreset::FlatTorus { a, b } => {
                let c = std::f64::consts::FRAC_1_SQRT_2;
                vec![
                    c * (a * u).cos(),
                    c * (a * u).sin(),
                    c * (b * u).cos(),
                    c * (b * u).sin(),
                ]
            }
            CurvePreset::Segment { from, to } => from
                .iter()
                .zip(to.iter())
                .map(|(&f, &t)| f + u * (t - f))
                .collect(),
            CurvePreset::Sine { amp, freq, length: _ } => vec![u, amp * (freq * u).sin()],
            CurvePreset::Wave { ay, wy, az, wz, .. } => {
                vec![u, ay * (wy * u).sin(), az * (wz * u).cos()]
            }
            CurvePreset::Points { .. } => panic!("Points preset has no analytic form"),
        }
    }
}
