//! Residual checks of the analytic identities an inextensible flow must
//! satisfy: the speed-evolution lemma, the frame-evolution formulas, and the
//! curvature evolution PDE system in both of its published forms.
//!
//! Time derivatives of speeds, frames and curvatures are taken by central
//! differences across adjacent snapshots at fixed u, so trajectories must
//! not have been resampled mid-run. Endpoint snapshots are excluded from all
//! norms.

use ndarray::{Array1, Array2, Array3};
use std::fmt;

use crate::error::{Error, Result};
use crate::flow::Trajectory;

/// The curvature-PDE system appears in two internally inconsistent forms;
/// both are implemented and reported side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// As displayed in the theorem statement.
    Statement,
    /// As derived in the proof.
    Proof,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Statement => "statement",
            Variant::Proof => "proof",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantSel {
    Statement,
    Proof,
    Both,
}

impl VariantSel {
    fn list(self) -> Vec<Variant> {
        match self {
            VariantSel::Statement => vec![Variant::Statement],
            VariantSel::Proof => vec![Variant::Proof],
            VariantSel::Both => vec![Variant::Statement, Variant::Proof],
        }
    }
}

/// One named residual: max norm and RMS over samples and interior snapshots.
#[derive(Debug, Clone)]
pub struct ResidualEntry {
    pub identity: String,
    pub variant: Option<Variant>,
    pub max: f64,
    pub rms: f64,
}

impl ResidualEntry {
    pub fn key(&self) -> String {
        match self.variant {
            Some(v) => format!("{}[{}]", self.identity, v.as_str()),
            None => self.identity.clone(),
        }
    }
}

impl fmt::Display for ResidualEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: max={:.3e} rms={:.3e}", self.key(), self.max, self.rms)
    }
}

/// Grid/step parameters a report was computed at.
#[derive(Debug, Clone)]
pub struct GridParams {
    pub m: usize,
    pub dim: usize,
    pub dt: f64,
    pub scheme: &'static str,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub entries: Vec<ResidualEntry>,
    pub params: GridParams,
}

impl VerificationReport {
    pub fn get(&self, key: &str) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| e.key() == key)
    }
}

/// Accumulates max and RMS norms of residual values.
#[derive(Debug, Default, Clone)]
struct NormAcc {
    max: f64,
    sum_sq: f64,
    count: usize,
}

impl NormAcc {
    fn push(&mut self, value: f64) {
        let a = value.abs();
        self.max = self.max.max(a);
        self.sum_sq += value * value;
        self.count += 1;
    }

    fn entry(&self, identity: &str, variant: Option<Variant>) -> ResidualEntry {
        ResidualEntry {
            identity: identity.to_string(),
            variant,
            max: self.max,
            rms: if self.count > 0 {
                (self.sum_sq / self.count as f64).sqrt()
            } else {
                0.0
            },
        }
    }
}

fn grid_params(traj: &Trajectory) -> GridParams {
    GridParams {
        m: traj.snapshots[0].curve.len(),
        dim: traj.dim(),
        dt: traj.dt,
        scheme: traj.scheme.as_str(),
    }
}

fn require_comparable(traj: &Trajectory) -> Result<()> {
    if traj.resampled {
        return Err(Error::ResamplingBreaksComparison);
    }
    if traj.len() < 3 {
        return Err(Error::TooFewSnapshots {
            got: traj.len(),
            need: 3,
        });
    }
    Ok(())
}

/// Central time difference of the frames at interior snapshot `idx`:
/// out[[p, j, c]] ≈ ∂(V_{j+1})_c/∂t.
fn frame_time_derivative(traj: &Trajectory, idx: usize) -> Array3<f64> {
    let prev = &traj.snapshots[idx - 1].frenet.frames;
    let next = &traj.snapshots[idx + 1].frenet.frames;
    (next - prev) / (2.0 * traj.dt)
}

fn curvature_time_derivative(traj: &Trajectory, idx: usize) -> Array2<f64> {
    let prev = &traj.snapshots[idx - 1].frenet.curvatures;
    let next = &traj.snapshots[idx + 1].frenet.curvatures;
    (next - prev) / (2.0 * traj.dt)
}

/// Per-sample Ψ matrix at an interior snapshot:
/// entries[[p, k, j]] = Ψ_{(k+1)(j+1)} = ⟨∂V_{j+1}/∂t, V_{k+1}⟩.
#[derive(Debug, Clone)]
pub struct PsiMatrix {
    pub entries: Array3<f64>,
    /// max |Ψ + Ψᵀ| over samples (diagonal included twice, so this also
    /// bounds 2·|diag|).
    pub antisymmetry_defect: f64,
}

pub fn psi_matrix(traj: &Trajectory, idx: usize) -> Result<PsiMatrix> {
    require_comparable(traj)?;
    if idx == 0 || idx + 1 >= traj.len() {
        return Err(Error::NotInteriorSnapshot {
            index: idx,
            max: traj.len() - 1,
        });
    }
    let n = traj.dim();
    let m = traj.snapshots[0].curve.len();
    let dvdt = frame_time_derivative(traj, idx);
    let frames = &traj.snapshots[idx].frenet.frames;
    let mut entries = Array3::zeros((m, n, n));
    for p in 0..m {
        for k in 0..n {
            for j in 0..n {
                let mut dot = 0.0;
                for c in 0..n {
                    dot += dvdt[[p, j, c]] * frames[[p, k, c]];
                }
                entries[[p, k, j]] = dot;
            }
        }
    }
    let mut defect = 0.0f64;
    for p in 0..m {
        for k in 0..n {
            for j in 0..n {
                defect = defect.max((entries[[p, k, j]] + entries[[p, j, k]]).abs());
            }
        }
    }
    Ok(PsiMatrix {
        entries,
        antisymmetry_defect: defect,
    })
}

/// Residual of ∂v/∂t = ∂f₁/∂u − f₂ v k₁ over all interior snapshots.
pub fn lemma_speed_residual(traj: &Trajectory) -> Result<VerificationReport> {
    require_comparable(traj)?;
    let mut acc = NormAcc::default();
    for idx in 1..traj.len() - 1 {
        let snap = &traj.snapshots[idx];
        let prev = &traj.snapshots[idx - 1].frenet.speed;
        let next = &traj.snapshots[idx + 1].frenet.speed;
        let dvdt = (next - prev) / (2.0 * traj.dt);
        let f1 = snap.speeds.column(0).to_owned();
        let df1du = snap.curve.diff_field(&f1, 1);
        let f2 = snap.speeds.column(1);
        let k1 = snap.frenet.curvature_field(1);
        for p in 0..snap.curve.len() {
            let rhs = df1du[p] - f2[p] * snap.frenet.speed[p] * k1[p];
            acc.push(dvdt[p] - rhs);
        }
    }
    Ok(VerificationReport {
        entries: vec![acc.entry("lemma_speed", None)],
        params: grid_params(traj),
    })
}

/// Indexing helpers treating out-of-range symbols as zero (k₀ = kₙ = 0,
/// f beyond n absent, Ψ beyond n absent). Indices are 1-based.
struct SnapFields<'a> {
    n: usize,
    f: &'a Array2<f64>,
    dfds: Array2<f64>,
    k: &'a Array2<f64>,
}

impl<'a> SnapFields<'a> {
    fn f(&self, p: usize, i: i64) -> f64 {
        if i >= 1 && (i as usize) <= self.n {
            self.f[[p, i as usize - 1]]
        } else {
            0.0
        }
    }

    fn dfds(&self, p: usize, i: i64) -> f64 {
        if i >= 1 && (i as usize) <= self.n {
            self.dfds[[p, i as usize - 1]]
        } else {
            0.0
        }
    }

    fn k(&self, p: usize, i: i64) -> f64 {
        if i >= 1 && (i as usize) <= self.n - 1 {
            self.k[[p, i as usize - 1]]
        } else {
            0.0
        }
    }

    /// aᵢ = f_{i−1}k_{i−1} + ∂fᵢ/∂s − f_{i+1}kᵢ, the V₁-coupling coefficient.
    fn coeff(&self, p: usize, i: i64) -> f64 {
        self.f(p, i - 1) * self.k(p, i - 1) + self.dfds(p, i) - self.f(p, i + 1) * self.k(p, i)
    }
}

fn snap_fields<'a>(snap: &'a crate::flow::Snapshot) -> Result<SnapFields<'a>> {
    let n = snap.curve.dim();
    let mut dfds = Array2::zeros(snap.speeds.raw_dim());
    for i in 0..n {
        let col = snap.speeds.column(i).to_owned();
        dfds.column_mut(i).assign(&snap.curve.d_ds_scalar(&col)?);
    }
    Ok(SnapFields {
        n,
        f: &snap.speeds,
        dfds,
        k: &snap.frenet.curvatures,
    })
}

/// Residuals of the frame-evolution formulas:
/// `frame_evolution.V1` — ∂V₁/∂t against its explicit expansion;
/// `frame_evolution.inner` — ⟨∂Vⱼ/∂t, V₁⟩ + aⱼ for 1 < j < n;
/// `frame_evolution.Vn` — ⟨∂Vₙ/∂t, V₁⟩ + aₙ;
/// `frame_evolution.reconstruction` — ∂Vⱼ/∂t against −aⱼV₁ + Σ Ψ_{kj}V_k;
/// `psi_antisymmetry` — max |Ψ + Ψᵀ|.
pub fn frame_evolution_residual(traj: &Trajectory) -> Result<VerificationReport> {
    require_comparable(traj)?;
    let n = traj.dim();
    let m = traj.snapshots[0].curve.len();
    let mut acc_v1 = NormAcc::default();
    let mut acc_inner = NormAcc::default();
    let mut acc_vn = NormAcc::default();
    let mut acc_rec = NormAcc::default();
    let mut psi_defect = 0.0f64;
    for idx in 1..traj.len() - 1 {
        let snap = &traj.snapshots[idx];
        let fields = snap_fields(snap)?;
        let dvdt = frame_time_derivative(traj, idx);
        let psi = psi_matrix(traj, idx)?;
        psi_defect = psi_defect.max(psi.antisymmetry_defect);
        let frames = &snap.frenet.frames;
        for p in 0..m {
            // (a) ∂V₁/∂t = Σ_{i=2}^{n} aᵢVᵢ (the i = n term carries kₙ = 0)
            let mut norm2 = 0.0;
            for c in 0..n {
                let mut rhs = 0.0;
                for i in 2..=n {
                    rhs += fields.coeff(p, i as i64) * frames[[p, i - 1, c]];
                }
                let d = dvdt[[p, 0, c]] - rhs;
                norm2 += d * d;
            }
            acc_v1.push(norm2.sqrt());

            // (b) inner rows 1 < j < n, (c) row n
            for j in 2..=n {
                let mut dot = 0.0;
                for c in 0..n {
                    dot += dvdt[[p, j - 1, c]] * frames[[p, 0, c]];
                }
                let r = dot + fields.coeff(p, j as i64);
                if j < n {
                    acc_inner.push(r);
                } else {
                    acc_vn.push(r);
                }

                // reconstruction from −aⱼV₁ + Σ_{k≥2, k≠j} Ψ_{kj}V_k
                let mut norm2 = 0.0;
                for c in 0..n {
                    let mut rhs = -fields.coeff(p, j as i64) * frames[[p, 0, c]];
                    for k in 2..=n {
                        if k == j {
                            continue;
                        }
                        rhs += psi.entries[[p, k - 1, j - 1]] * frames[[p, k - 1, c]];
                    }
                    let d = dvdt[[p, j - 1, c]] - rhs;
                    norm2 += d * d;
                }
                acc_rec.push(norm2.sqrt());
            }
        }
    }
    let mut entries = vec![acc_v1.entry("frame_evolution.V1", None)];
    if n > 2 {
        entries.push(acc_inner.entry("frame_evolution.inner", None));
    }
    entries.push(acc_vn.entry("frame_evolution.Vn", None));
    entries.push(acc_rec.entry("frame_evolution.reconstruction", None));
    entries.push(ResidualEntry {
        identity: "psi_antisymmetry".to_string(),
        variant: None,
        max: psi_defect,
        rms: psi_defect,
    });
    Ok(VerificationReport {
        entries,
        params: grid_params(traj),
    })
}

/// Residuals of the curvature evolution PDE system.
///
/// The k₁ equation's third term and the middle ∂kᵢ/∂t index pattern differ
/// between the two published forms; `variant` selects which (or both):
/// statement uses −2(∂f₂/∂s)k₂ and ∂Ψ_{(i−1)i}/∂s − Ψ_{(i+2)i}k_{i+2},
/// proof uses −2(∂f₃/∂s)k₂ and ∂Ψ_{(i+1)i}/∂s − Ψ_{(i+2)i}k_{i+1}.
pub fn curvature_pde_residual(traj: &Trajectory, variant: VariantSel) -> Result<VerificationReport> {
    require_comparable(traj)?;
    let n = traj.dim();
    let m = traj.snapshots[0].curve.len();
    let variants = variant.list();

    let mut acc_k1: Vec<NormAcc> = variants.iter().map(|_| NormAcc::default()).collect();
    let mut acc_mid_right: Vec<NormAcc> = variants.iter().map(|_| NormAcc::default()).collect();
    let mut acc_mid_left = NormAcc::default();
    let mut acc_last = NormAcc::default();

    for idx in 1..traj.len() - 1 {
        let snap = &traj.snapshots[idx];
        let fields = snap_fields(snap)?;
        let dkdt = curvature_time_derivative(traj, idx);
        let psi = psi_matrix(traj, idx)?;

        // ∂Ψ_{kj}/∂s fields
        let mut dpsids = Array3::zeros((m, n, n));
        for k in 0..n {
            for j in 0..n {
                let col =
                    Array1::from_iter((0..m).map(|p| psi.entries[[p, k, j]]));
                let d = snap.curve.d_ds_scalar(&col)?;
                for p in 0..m {
                    dpsids[[p, k, j]] = d[p];
                }
            }
        }
        // 1-based Ψ accessors with out-of-range indices defined as zero
        let psi_at = |p: usize, k: i64, j: i64| -> f64 {
            if k >= 1 && j >= 1 && (k as usize) <= n && (j as usize) <= n {
                psi.entries[[p, k as usize - 1, j as usize - 1]]
            } else {
                0.0
            }
        };
        let dpsids_at = |p: usize, k: i64, j: i64| -> f64 {
            if k >= 1 && j >= 1 && (k as usize) <= n && (j as usize) <= n {
                dpsids[[p, k as usize - 1, j as usize - 1]]
            } else {
                0.0
            }
        };

        let f2 = snap.speeds.column(1).to_owned();
        let df2ds = snap.curve.d_ds_scalar(&f2)?;
        let d2f2ds2 = snap.curve.d_ds_scalar(&df2ds)?;
        let dk1ds = snap.curve.d_ds_scalar(&snap.frenet.curvature_field(1))?;
        let dk2ds = if n >= 3 {
            snap.curve.d_ds_scalar(&snap.frenet.curvature_field(2))?
        } else {
            Array1::zeros(m)
        };

        for p in 0..m {
            let k1 = fields.k(p, 1);
            let k2 = fields.k(p, 2);
            let k3 = fields.k(p, 3);
            for (vi, v) in variants.iter().enumerate() {
                let third = match v {
                    Variant::Statement => -2.0 * fields.dfds(p, 2) * k2,
                    Variant::Proof => -2.0 * fields.dfds(p, 3) * k2,
                };
                let rhs = fields.f(p, 2) * k1 * k1
                    + fields.f(p, 1) * dk1ds[p]
                    + d2f2ds2[p]
                    + third
                    - fields.f(p, 3) * dk2ds[p]
                    - fields.f(p, 2) * k2 * k2
                    - fields.f(p, 4) * k3 * k2;
                acc_k1[vi].push(dkdt[[p, 0]] - rhs);
            }

            // middle equations, i = 2..n−1
            for i in 2..n {
                let ii = i as i64;
                // ∂k_{i−1}/∂t = −∂Ψ_{(i−1)i}/∂s − Ψ_{(i−2)i}k_{i−2}
                let rhs_left =
                    -dpsids_at(p, ii - 1, ii) - psi_at(p, ii - 2, ii) * fields.k(p, ii - 2);
                acc_mid_left.push(dkdt[[p, i - 2]] - rhs_left);

                // ∂kᵢ/∂t, variant-dependent
                for (vi, v) in variants.iter().enumerate() {
                    let rhs_right = match v {
                        Variant::Statement => {
                            dpsids_at(p, ii - 1, ii) - psi_at(p, ii + 2, ii) * fields.k(p, ii + 2)
                        }
                        Variant::Proof => {
                            dpsids_at(p, ii + 1, ii) - psi_at(p, ii + 2, ii) * fields.k(p, ii + 1)
                        }
                    };
                    acc_mid_right[vi].push(dkdt[[p, i - 1]] - rhs_right);
                }
            }

            // ∂k_{n−1}/∂t = −∂Ψ_{(n−1)n}/∂s − Ψ_{(n−2)n}k_{n−2}
            if n >= 3 {
                let nn = n as i64;
                let rhs_last =
                    -dpsids_at(p, nn - 1, nn) - psi_at(p, nn - 2, nn) * fields.k(p, nn - 2);
                acc_last.push(dkdt[[p, n - 2]] - rhs_last);
            }
        }
    }

    let mut entries = Vec::new();
    for (vi, v) in variants.iter().enumerate() {
        entries.push(acc_k1[vi].entry("pde.k1", Some(*v)));
    }
    if n >= 3 {
        entries.push(acc_mid_left.entry("pde.k_mid_left", None));
        for (vi, v) in variants.iter().enumerate() {
            entries.push(acc_mid_right[vi].entry("pde.k_mid_right", Some(*v)));
        }
        entries.push(acc_last.entry("pde.k_last", None));
    }
    Ok(VerificationReport {
        entries,
        params: grid_params(traj),
    })
}

/// One refinement level of a convergence study.
#[derive(Debug, Clone)]
pub struct StudyLevel {
    pub label: String,
    /// Representative mesh size of the level (e.g. 1/m or dt).
    pub h: f64,
    pub entries: Vec<ResidualEntry>,
}

#[derive(Debug, Clone)]
pub struct StudyReport {
    pub levels: Vec<StudyLevel>,
    /// Least-squares slope of log(max residual) vs log(h) per identity key;
    /// `None` means the residual sits at the numerical floor.
    pub orders: Vec<(String, Option<f64>)>,
}

/// Residuals below this are treated as roundoff floor in order estimates.
pub const ORDER_FLOOR: f64 = 1e-11;

/// Runs `runner` at each level and estimates convergence orders.
pub fn convergence_study<F>(hs: &[f64], labels: &[String], runner: F) -> Result<StudyReport>
where
    F: Fn(usize) -> Result<Vec<ResidualEntry>>,
{
    assert!(hs.len() >= 2 && hs.len() == labels.len());
    let mut levels = Vec::new();
    for (i, (&h, label)) in hs.iter().zip(labels.iter()).enumerate() {
        levels.push(StudyLevel {
            label: label.clone(),
            h,
            entries: runner(i)?,
        });
    }
    let keys: Vec<String> = levels[0].entries.iter().map(|e| e.key()).collect();
    let mut orders = Vec::new();
    for key in keys {
        let vals: Vec<f64> = levels
            .iter()
            .filter_map(|l| l.entries.iter().find(|e| e.key() == key).map(|e| e.max))
            .collect();
        if vals.len() != levels.len() {
            continue;
        }
        let order = if vals.iter().all(|&v| v < ORDER_FLOOR) {
            None
        } else {
            Some(lsq_slope(
                &levels.iter().map(|l| l.h.ln()).collect::<Vec<_>>(),
                &vals.iter().map(|&v| v.max(f64::MIN_POSITIVE).ln()).collect::<Vec<_>>(),
            ))
        };
        orders.push((key, order));
    }
    Ok(StudyReport { levels, orders })
}

fn lsq_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys.iter()).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{evolve, FlowField, Scheme, SpeedSpec, TangentialPolicy};
    use crate::geometry::CurvePreset;

    fn translation_trajectory() -> Trajectory {
        let c = CurvePreset::Circle { r: 1.0 }.build(128).unwrap();
        let flow = FlowField::new(
            vec![
                SpeedSpec::Zero,
                SpeedSpec::Cos { omega: 1.0, phase: 0.0 },
            ],
            TangentialPolicy::Constrained { anchor: 0.0 },
        )
        .unwrap();
        evolve(&c, &flow, 0.01, 1e-3, Scheme::Rk4, 0).unwrap()
    }

    #[test]
    fn zero_flow_residuals_are_roundoff() {
        let c = CurvePreset::Circle { r: 1.0 }.build(64).unwrap();
        let flow = FlowField::new(
            vec![SpeedSpec::Zero, SpeedSpec::Zero],
            TangentialPolicy::Explicit,
        )
        .unwrap();
        let traj = evolve(&c, &flow, 0.01, 1e-3, Scheme::Rk4, 0).unwrap();
        let rep = lemma_speed_residual(&traj).unwrap();
        assert!(rep.get("lemma_speed").unwrap().max < 1e-12);
    }

    #[test]
    fn rigid_translation_has_vanishing_psi() {
        let traj = translation_trajectory();
        let psi = psi_matrix(&traj, traj.len() / 2).unwrap();
        let worst = psi.entries.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        assert!(worst < 1e-6, "max psi {worst}");
        assert!(psi.antisymmetry_defect < 1e-6);
    }

    #[test]
    fn rigid_translation_frame_evolution_residuals_vanish() {
        let traj = translation_trajectory();
        let rep = frame_evolution_residual(&traj).unwrap();
        for entry in &rep.entries {
            assert!(entry.max < 1e-6, "{entry}");
        }
    }

    #[test]
    fn rigid_translation_k1_equation_balances() {
        // n = 2: ∂k₁/∂t = 0 and the right side cancels pointwise
        let traj = translation_trajectory();
        let rep = curvature_pde_residual(&traj, VariantSel::Both).unwrap();
        assert!(rep.get("pde.k1[statement]").unwrap().max < 1e-5);
        assert!(rep.get("pde.k1[proof]").unwrap().max < 1e-5);
    }

    #[test]
    fn resampled_trajectory_is_rejected() {
        let c = CurvePreset::Circle { r: 1.0 }.build(64).unwrap();
        let flow = FlowField::new(
            vec![SpeedSpec::Zero, SpeedSpec::Curvature(1)],
            TangentialPolicy::Explicit,
        )
        .unwrap();
        let traj = evolve(&c, &flow, 0.01, 1e-3, Scheme::Rk4, 2).unwrap();
        assert!(traj.resampled);
        assert!(matches!(
            lemma_speed_residual(&traj),
            Err(Error::ResamplingBreaksComparison)
        ));
    }

    #[test]
    fn psi_requires_interior_snapshot() {
        let traj = translation_trajectory();
        assert!(matches!(
            psi_matrix(&traj, 0),
            Err(Error::NotInteriorSnapshot { .. })
        ));
    }

    #[test]
    fn convergence_study_reports_floor_when_exact() {
        let hs = [0.1, 0.05, 0.025];
        let labels: Vec<String> = hs.iter().map(|h| format!("h={h}")).collect();
        let rep = convergence_study(&hs, &labels, |_| {
            Ok(vec![ResidualEntry {
                identity: "exact".into(),
                variant: None,
                max: 1e-15,
                rms: 1e-15,
            }])
        })
        .unwrap();
        assert_eq!(rep.orders[0].1, None);
    }

    #[test]
    fn convergence_study_recovers_slope() {
        let hs = [0.1, 0.05, 0.025];
        let labels: Vec<String> = hs.iter().map(|h| format!("h={h}")).collect();
        let rep = convergence_study(&hs, &labels, |i| {
            Ok(vec![ResidualEntry {
                identity: "quadratic".into(),
                variant: None,
                max: hs[i] * hs[i],
                rms: hs[i] * hs[i],
            }])
        })
        .unwrap();
        let slope = rep.orders[0].1.unwrap();
        assert!((slope - 2.0).abs() < 1e-9);
    }
}
