//! Moving Frenet frames and curvature functions of discrete curves.
//!
//! Frames are built per sample by modified Gram-Schmidt on the derivatives
//! α′, α″, …, α⁽ⁿ⁻¹⁾ with one reorthogonalization pass; the last vector Vₙ
//! completes a positively oriented basis via the generalized cross product.
//! Curvatures are extracted as kᵢ = ⟨(1/v) dVᵢ/du, V_{i+1}⟩, so k₁..k_{n−2}
//! inherit positivity from the construction and k_{n−1} keeps its sign.

use ndarray::{Array1, Array2, Array3};

use crate::error::{Error, Result};
use crate::geometry::DiscreteCurve;

/// Relative Gram-Schmidt residual below which a derivative is treated as
/// linearly dependent on its predecessors.
pub const GS_EPS: f64 = 1e-8;
/// Default ambient-dimension cap; differentiation to order n−1 gets noisy
/// beyond this.
pub const DIM_CAP: usize = 8;

/// Frames, curvatures and speed of a curve.
#[derive(Debug, Clone)]
pub struct FrenetData {
    /// frames[[p, i, c]] = c-th component of V_{i+1} at sample p.
    pub frames: Array3<f64>,
    /// curvatures[[p, i]] = k_{i+1} at sample p.
    pub curvatures: Array2<f64>,
    pub speed: Array1<f64>,
}

impl FrenetData {
    pub fn dim(&self) -> usize {
        self.frames.shape()[1]
    }

    pub fn len(&self) -> usize {
        self.frames.shape()[0]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Frame vector Vᵢ (1-based) as an m×n field.
    pub fn frame_field(&self, i: usize) -> Array2<f64> {
        self.frames.index_axis(ndarray::Axis(1), i - 1).to_owned()
    }

    /// Curvature kᵢ (1-based) as a scalar field.
    pub fn curvature_field(&self, i: usize) -> Array1<f64> {
        self.curvatures.column(i - 1).to_owned()
    }

    /// Max deviation of ⟨Vᵢ,Vⱼ⟩ from δᵢⱼ over all samples.
    pub fn orthonormality_defect(&self) -> f64 {
        let (m, n, _) = (self.len(), self.dim(), 0);
        let mut worst = 0.0f64;
        for p in 0..m {
            for i in 0..n {
                for j in i..n {
                    let dot: f64 = (0..n)
                        .map(|c| self.frames[[p, i, c]] * self.frames[[p, j, c]])
                        .sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((dot - target).abs());
                }
            }
        }
        worst
    }

    /// Min of det[V₁…Vₙ] over samples (should be +1).
    pub fn min_orientation(&self) -> f64 {
        let (m, n) = (self.len(), self.dim());
        let mut worst = f64::INFINITY;
        for p in 0..m {
            let mut mat = Array2::zeros((n, n));
            for i in 0..n {
                for c in 0..n {
                    mat[[i, c]] = self.frames[[p, i, c]];
                }
            }
            worst = worst.min(det(&mat));
        }
        worst
    }
}

/// Determinant by LU with partial pivoting; n ≤ 8 here.
fn det(mat: &Array2<f64>) -> f64 {
    let n = mat.nrows();
    let mut a = mat.clone();
    let mut sign = 1.0;
    let mut d = 1.0;
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[[r, col]].abs() > a[[piv, col]].abs() {
                piv = r;
            }
        }
        if a[[piv, col]] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..n {
                let tmp = a[[col, c]];
                a[[col, c]] = a[[piv, c]];
                a[[piv, c]] = tmp;
            }
            sign = -sign;
        }
        d *= a[[col, col]];
        for r in col + 1..n {
            let f = a[[r, col]] / a[[col, col]];
            for c in col..n {
                a[[r, c]] -= f * a[[col, c]];
            }
        }
    }
    sign * d
}

/// Unit vector completing v[0..n-1] to a positively oriented orthonormal
/// basis: component k is the cofactor of the missing last row.
fn oriented_completion(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len() + 1;
    let mut w = vec![0.0; n];
    for k in 0..n {
        // minor: drop column k
        let mut minor = Array2::zeros((n - 1, n - 1));
        for (r, row) in rows.iter().enumerate() {
            let mut cc = 0;
            for c in 0..n {
                if c == k {
                    continue;
                }
                minor[[r, cc]] = row[c];
                cc += 1;
            }
        }
        let sign = if (n + k + 1) % 2 == 0 { 1.0 } else { -1.0 };
        w[k] = sign * det(&minor);
    }
    let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in w.iter_mut() {
        *x /= norm;
    }
    w
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
///
/// Returns the orthonormal vectors and the relative residual of each input
/// (norm after projection over norm before). `Err` carries the 1-based index
/// of the first dependent vector.
fn gram_schmidt(inputs: &[Vec<f64>], eps: f64) -> std::result::Result<(Vec<Vec<f64>>, Vec<f64>), usize> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(inputs.len());
    let mut residuals = Vec::with_capacity(inputs.len());
    for (idx, input) in inputs.iter().enumerate() {
        let scale: f64 = input.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut w = input.clone();
        for _pass in 0..2 {
            for b in &basis {
                let proj: f64 = w.iter().zip(b.iter()).map(|(a, b)| a * b).sum();
                for (wi, bi) in w.iter_mut().zip(b.iter()) {
                    *wi -= proj * bi;
                }
            }
        }
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let rel = if scale > 0.0 { norm / scale } else { 0.0 };
        residuals.push(rel);
        if !(rel >= eps) {
            return Err(idx + 1);
        }
        for x in w.iter_mut() {
            *x /= norm;
        }
        basis.push(w);
    }
    Ok((basis, residuals))
}

fn derivative_rows(curve: &DiscreteCurve, orders: usize) -> Result<Vec<Array2<f64>>> {
    (1..=orders).map(|k| curve.derivative(k)).collect()
}

/// Computes the Frenet frame and curvatures of a curve.
pub fn frenet_frame(curve: &DiscreteCurve) -> Result<FrenetData> {
    let n = curve.dim();
    if n > DIM_CAP {
        return Err(Error::OrderTooHigh { order: n, dim: DIM_CAP });
    }
    let m = curve.len();
    let v = curve.speed()?;
    let derivs = derivative_rows(curve, n - 1)?;

    let mut frames = Array3::zeros((m, n, n));
    for p in 0..m {
        let inputs: Vec<Vec<f64>> = derivs
            .iter()
            .map(|d| (0..n).map(|c| d[[p, c]]).collect())
            .collect();
        let (basis, _res) = gram_schmidt(&inputs, GS_EPS).map_err(|idx| Error::DegenerateCurve {
            index: idx,
            location: curve.params()[p],
        })?;
        for (i, b) in basis.iter().enumerate() {
            for c in 0..n {
                frames[[p, i, c]] = b[c];
            }
        }
        let last = oriented_completion(&basis);
        for c in 0..n {
            frames[[p, n - 1, c]] = last[c];
        }
    }

    // kᵢ = ⟨(1/v) dVᵢ/du, V_{i+1}⟩
    let mut curvatures = Array2::zeros((m, n - 1));
    for i in 0..n - 1 {
        let vi = frames.index_axis(ndarray::Axis(1), i).to_owned();
        let dvi = curve.diff_vector(&vi, 1);
        for p in 0..m {
            let mut dot = 0.0;
            for c in 0..n {
                dot += dvi[[p, c]] * frames[[p, i + 1, c]];
            }
            curvatures[[p, i]] = dot / v[p];
        }
    }

    Ok(FrenetData {
        frames,
        curvatures,
        speed: v,
    })
}

/// Non-degeneracy report: Gram-Schmidt residuals over derivatives 1..n.
#[derive(Debug, Clone)]
pub struct NondegeneracyReport {
    pub ok: bool,
    /// 1-based derivative index of the first failure.
    pub first_failing_index: Option<usize>,
    /// Parameter value where the failure occurs.
    pub location: Option<f64>,
    /// Smallest relative residual observed anywhere.
    pub min_residual: f64,
}

/// Checks that the derivatives α′..α⁽ⁿ⁾ stay linearly independent to `tol`
/// (relative) at every sample. That is the discrete form of all curvatures
/// vanishing nowhere.
pub fn check_nondegenerate(curve: &DiscreteCurve, tol: f64) -> Result<NondegeneracyReport> {
    let n = curve.dim();
    let m = curve.len();
    let derivs = derivative_rows(curve, n)?;
    let mut min_res = f64::INFINITY;
    for p in 0..m {
        let inputs: Vec<Vec<f64>> = derivs
            .iter()
            .map(|d| (0..n).map(|c| d[[p, c]]).collect())
            .collect();
        match gram_schmidt(&inputs, tol) {
            Ok((_, res)) => {
                for r in res {
                    min_res = min_res.min(r);
                }
            }
            Err(idx) => {
                return Ok(NondegeneracyReport {
                    ok: false,
                    first_failing_index: Some(idx),
                    location: Some(curve.params()[p]),
                    min_residual: 0.0,
                })
            }
        }
    }
    Ok(NondegeneracyReport {
        ok: true,
        first_failing_index: None,
        location: None,
        min_residual: min_res,
    })
}

/// Max-norm residual of the Frenet system (1/v) Vᵢ′ = −k_{i−1}V_{i−1} + kᵢV_{i+1}
/// (k₀ = kₙ = 0), the module's self-consistency metric.
pub fn frenet_residual(curve: &DiscreteCurve, data: &FrenetData) -> f64 {
    let n = data.dim();
    let m = data.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let vi = data.frames.index_axis(ndarray::Axis(1), i).to_owned();
        let dvi = curve.diff_vector(&vi, 1);
        for p in 0..m {
            let mut norm2 = 0.0;
            for c in 0..n {
                let mut rhs = 0.0;
                if i > 0 {
                    rhs -= data.curvatures[[p, i - 1]] * data.frames[[p, i - 1, c]];
                }
                if i + 1 < n {
                    rhs += data.curvatures[[p, i]] * data.frames[[p, i + 1, c]];
                }
                let lhs = dvi[[p, c]] / data.speed[p];
                norm2 += (lhs - rhs) * (lhs - rhs);
            }
            worst = worst.max(norm2.sqrt());
        }
    }
    worst
}
