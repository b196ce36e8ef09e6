//! Flow fields ∂α/∂t = Σ fᵢVᵢ, the inextensibility constraint on the
//! tangential speed, and explicit time integration of curve evolution.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::frenet::{frenet_frame, FrenetData};
use crate::geometry::{diff, DiscreteCurve, Topology};

/// Relative tolerance on the loop integral ∮ f₂k₁ ds for closed curves under
/// the constrained tangential policy.
pub const PERIODICITY_EPS: f64 = 1e-6;

/// Specification of one scalar speed component fᵢ.
#[derive(Debug, Clone, PartialEq)]
pub enum SpeedSpec {
    Zero,
    Constant(f64),
    /// sin(ω s + φ) of the arclength s from the first sample.
    Sin { omega: f64, phase: f64 },
    /// cos(ω s + φ).
    Cos { omega: f64, phase: f64 },
    /// Polynomial in s, coefficients low-to-high.
    Poly(Vec<f64>),
    /// fᵢ = kⱼ (1-based curvature index).
    Curvature(usize),
    /// fᵢ = ∂kⱼ/∂s.
    CurvatureDeriv(usize),
    /// Per-sample values aligned with the curve.
    Tabulated(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TangentialPolicy {
    /// f₁ is given like any other component.
    Explicit,
    /// f₁ is solved from ∂f₁/∂s = f₂k₁ with the given anchor value f₁(s₀).
    Constrained { anchor: f64 },
}

#[derive(Debug, Clone)]
pub struct FlowField {
    components: Vec<SpeedSpec>,
    policy: TangentialPolicy,
}

impl FlowField {
    pub fn new(components: Vec<SpeedSpec>, policy: TangentialPolicy) -> Result<Self> {
        if let TangentialPolicy::Constrained { .. } = policy {
            if components.first() != Some(&SpeedSpec::Zero) {
                return Err(Error::TangentialComponentSpecified);
            }
        }
        Ok(Self { components, policy })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn policy(&self) -> TangentialPolicy {
        self.policy
    }

    pub fn components(&self) -> &[SpeedSpec] {
        &self.components
    }
}

fn eval_spec(
    spec: &SpeedSpec,
    s: &Array1<f64>,
    curve: &DiscreteCurve,
    frenet: &FrenetData,
) -> Result<Array1<f64>> {
    let m = s.len();
    let n = curve.dim();
    Ok(match spec {
        SpeedSpec::Zero => Array1::zeros(m),
        SpeedSpec::Constant(c) => Array1::from_elem(m, *c),
        SpeedSpec::Sin { omega, phase } => s.mapv(|x| (omega * x + phase).sin()),
        SpeedSpec::Cos { omega, phase } => s.mapv(|x| (omega * x + phase).cos()),
        SpeedSpec::Poly(coeffs) => s.mapv(|x| {
            coeffs
                .iter()
                .rev()
                .fold(0.0, |acc, &c| acc * x + c)
        }),
        SpeedSpec::Curvature(j) => {
            if *j == 0 || *j >= n {
                return Err(Error::CurvatureIndexOutOfRange { index: *j, max: n - 1 });
            }
            frenet.curvature_field(*j)
        }
        SpeedSpec::CurvatureDeriv(j) => {
            if *j == 0 || *j >= n {
                return Err(Error::CurvatureIndexOutOfRange { index: *j, max: n - 1 });
            }
            curve.d_ds_scalar(&frenet.curvature_field(*j))?
        }
        SpeedSpec::Tabulated(vals) => {
            if vals.len() != m {
                return Err(Error::TabulatedLengthMismatch {
                    expected: m,
                    got: vals.len(),
                });
            }
            Array1::from_vec(vals.clone())
        }
    })
}

/// Integrates ∂f₁/∂s = f₂k₁ along the curve from the anchor value.
///
/// For closed curves the loop integral ∮ f₂k₁ ds must vanish (relative to
/// ∮ |f₂k₁| ds) or no periodic tangential speed exists.
pub fn solve_tangential(
    curve: &DiscreteCurve,
    frenet: &FrenetData,
    f2: &Array1<f64>,
    anchor: f64,
) -> Result<Array1<f64>> {
    let k1 = frenet.curvature_field(1);
    // ∫ f₂k₁ ds = ∫ f₂k₁ v du
    let integrand = f2 * &k1 * &frenet.speed;
    let cumulative = match curve.topology() {
        Topology::Closed => {
            let p = curve.period().unwrap();
            let defect = integrand.mean().unwrap() * p;
            let scale = integrand.mapv(f64::abs).mean().unwrap() * p;
            let tolerance = PERIODICITY_EPS * scale;
            if scale > 0.0 && defect.abs() > tolerance {
                return Err(Error::NoPeriodicSolution {
                    defect,
                    tolerance,
                });
            }
            diff::spectral_cumulative(&integrand, curve.params(), p)
        }
        Topology::Open => diff::open_cumulative(&integrand, curve.params()),
    };
    Ok(cumulative + anchor)
}

/// Realizes all fᵢ on a curve as an m×n array (column i−1 holds fᵢ).
pub fn realize_speeds(
    curve: &DiscreteCurve,
    frenet: &FrenetData,
    flow: &FlowField,
) -> Result<Array2<f64>> {
    let n = curve.dim();
    if flow.components.len() != n {
        return Err(Error::ComponentCountMismatch {
            expected: n,
            got: flow.components.len(),
        });
    }
    let s = curve.cumulative_arclength()?;
    let m = curve.len();
    let mut out = Array2::zeros((m, n));
    for (i, spec) in flow.components.iter().enumerate() {
        let vals = eval_spec(spec, &s, curve, frenet)?;
        out.column_mut(i).assign(&vals);
    }
    if let TangentialPolicy::Constrained { anchor } = flow.policy {
        let f2 = out.column(1).to_owned();
        let f1 = solve_tangential(curve, frenet, &f2, anchor)?;
        out.column_mut(0).assign(&f1);
    }
    Ok(out)
}

/// Pointwise velocity field Σ fᵢVᵢ.
pub fn velocity(frenet: &FrenetData, speeds: &Array2<f64>) -> Array2<f64> {
    let m = frenet.len();
    let n = frenet.dim();
    let mut vel = Array2::zeros((m, n));
    for p in 0..m {
        for c in 0..n {
            let mut acc = 0.0;
            for i in 0..n {
                acc += speeds[[p, i]] * frenet.frames[[p, i, c]];
            }
            vel[[p, c]] = acc;
        }
    }
    vel
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Euler,
    Rk4,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Euler => "euler",
            Scheme::Rk4 => "rk4",
        }
    }
}

/// One time level of a trajectory, with the frame and the realized speeds
/// recorded for verification.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub curve: DiscreteCurve,
    pub frenet: FrenetData,
    pub speeds: Array2<f64>,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub dt: f64,
    pub scheme: Scheme,
    /// True if the curve was reparameterized mid-run; fixed-u comparisons
    /// across snapshots are then invalid.
    pub resampled: bool,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.snapshots[0].curve.dim()
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }
}

fn eval_state(curve: &DiscreteCurve, flow: &FlowField) -> Result<(FrenetData, Array2<f64>)> {
    let frenet = frenet_frame(curve)?;
    let speeds = realize_speeds(curve, &frenet, flow)?;
    Ok((frenet, speeds))
}

fn stage_velocity(curve: &DiscreteCurve, flow: &FlowField) -> Result<Array2<f64>> {
    let (frenet, speeds) = eval_state(curve, flow)?;
    Ok(velocity(&frenet, &speeds))
}

/// Advances the curve by one time step. Every RK4 stage recomputes the frame
/// and the constrained tangential speed on the stage curve.
pub fn step(curve: &DiscreteCurve, flow: &FlowField, dt: f64, scheme: Scheme) -> Result<DiscreteCurve> {
    match scheme {
        Scheme::Euler => {
            let vel = stage_velocity(curve, flow)?;
            curve.with_samples(curve.samples() + &(vel * dt))
        }
        Scheme::Rk4 => {
            let k1 = stage_velocity(curve, flow)?;
            let c2 = curve.with_samples(curve.samples() + &(&k1 * (dt / 2.0)))?;
            let k2 = stage_velocity(&c2, flow)?;
            let c3 = curve.with_samples(curve.samples() + &(&k2 * (dt / 2.0)))?;
            let k3 = stage_velocity(&c3, flow)?;
            let c4 = curve.with_samples(curve.samples() + &(&k3 * dt))?;
            let k4 = stage_velocity(&c4, flow)?;
            let incr = (k1 + &(k2 * 2.0) + &(k3 * 2.0) + k4) * (dt / 6.0);
            curve.with_samples(curve.samples() + &incr)
        }
    }
}

/// Evolves a curve over `[0, t_end]` with uniform steps.
///
/// `resample_every = q > 0` reparameterizes the curve to arclength every q
/// steps (and marks the trajectory accordingly); 0 never resamples.
pub fn evolve(
    curve: &DiscreteCurve,
    flow: &FlowField,
    t_end: f64,
    dt: f64,
    scheme: Scheme,
    resample_every: usize,
) -> Result<Trajectory> {
    if !(t_end > 0.0) || !(dt > 0.0) {
        return Err(Error::BadTimeGrid { t_end, dt });
    }
    let steps_f = t_end / dt;
    let steps = steps_f.round();
    if (steps_f - steps).abs() > 1e-9 * steps_f.max(1.0) || steps < 1.0 {
        return Err(Error::BadTimeGrid { t_end, dt });
    }
    let steps = steps as usize;

    let mut snapshots = Vec::with_capacity(steps + 1);
    let mut current = curve.clone();
    let mut resampled = false;
    for step_idx in 0..=steps {
        let t = step_idx as f64 * dt;
        let (frenet, speeds) = eval_state(&current, flow)?;
        snapshots.push(Snapshot {
            t,
            curve: current.clone(),
            frenet,
            speeds,
        });
        if step_idx == steps {
            break;
        }
        current = step(&current, flow, dt, scheme)?;
        if resample_every > 0 && (step_idx + 1) % resample_every == 0 && step_idx + 1 < steps {
            current = current.reparameterize_arclength(current.len())?;
            resampled = true;
        }
    }
    Ok(Trajectory {
        snapshots,
        dt,
        scheme,
        resampled,
    })
}

/// Total arclength of each snapshot minus the initial total arclength.
pub fn arclength_drift(traj: &Trajectory) -> Result<Vec<f64>> {
    let s0 = traj.snapshots[0].curve.total_arclength()?;
    traj.snapshots
        .iter()
        .map(|s| Ok(s.curve.total_arclength()? - s0))
        .collect()
}
