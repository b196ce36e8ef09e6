//! Independent oracles shared by the integration suites. Everything here is
//! computed from closed-form expressions or textbook algorithms, never from
//! the library under test.

#![allow(dead_code)]

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Circular helix (a cos u, a sin u, b u) with its closed-form Frenet data.
pub struct Helix {
    pub a: f64,
    pub b: f64,
}

impl Helix {
    pub fn point(&self, u: f64) -> [f64; 3] {
        [self.a * u.cos(), self.a * u.sin(), self.b * u]
    }

    /// k-th derivative with respect to u (k >= 1).
    pub fn derivative(&self, u: f64, k: usize) -> [f64; 3] {
        // d^k cos = cos(u + k pi/2), d^k sin = sin(u + k pi/2)
        let shift = u + k as f64 * std::f64::consts::FRAC_PI_2;
        let z = if k == 1 { self.b } else { 0.0 };
        [self.a * shift.cos(), self.a * shift.sin(), z]
    }

    pub fn speed(&self) -> f64 {
        (self.a * self.a + self.b * self.b).sqrt()
    }

    pub fn k1(&self) -> f64 {
        self.a / (self.a * self.a + self.b * self.b)
    }

    pub fn k2(&self) -> f64 {
        self.b / (self.a * self.a + self.b * self.b)
    }

    /// Frame rows (V1, V2, V3) at parameter u.
    pub fn frame(&self, u: f64) -> [[f64; 3]; 3] {
        let c = self.speed();
        let v1 = [-self.a * u.sin() / c, self.a * u.cos() / c, self.b / c];
        let v2 = [-u.cos(), -u.sin(), 0.0];
        let v3 = [
            v1[1] * v2[2] - v1[2] * v2[1],
            v1[2] * v2[0] - v1[0] * v2[2],
            v1[0] * v2[1] - v1[1] * v2[0],
        ];
        [v1, v2, v3]
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut sign = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            sign = -sign;
        }
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    sign * (0..n).map(|i| m[i][i]).product::<f64>()
}

/// Curvatures from Gram determinants of the derivative vectors.
///
/// With D_j = det Gram(d1..dj) and D_0 = 1, the i-th curvature is
/// k_i = sqrt(D_{i+1} D_{i-1}) / (D_i |d1|). Requires derivatives d1..d_{i+1}.
pub fn gram_curvature(derivs: &[Vec<f64>], i: usize) -> f64 {
    let gram_det = |j: usize| -> f64 {
        if j == 0 {
            return 1.0;
        }
        let g: Vec<Vec<f64>> = (0..j)
            .map(|r| (0..j).map(|c| dot(&derivs[r], &derivs[c])).collect())
            .collect();
        det(g)
    };
    let v = dot(&derivs[0], &derivs[0]).sqrt();
    (gram_det(i + 1) * gram_det(i - 1)).sqrt() / (gram_det(i) * v)
}

/// Flat torus curve in 4-space: (cos au, sin au, cos bu, sin bu) / sqrt 2.
pub struct FlatTorus {
    pub a: f64,
    pub b: f64,
}

impl FlatTorus {
    pub fn derivative(&self, u: f64, k: usize) -> Vec<f64> {
        let s = std::f64::consts::FRAC_PI_2 * k as f64;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        vec![
            r * self.a.powi(k as i32) * (self.a * u + s).cos(),
            r * self.a.powi(k as i32) * (self.a * u + s).sin(),
            r * self.b.powi(k as i32) * (self.b * u + s).cos(),
            r * self.b.powi(k as i32) * (self.b * u + s).sin(),
        ]
    }

    /// k_i from the Gram oracle on exact derivatives; constant in u.
    pub fn curvature(&self, i: usize) -> f64 {
        let derivs: Vec<Vec<f64>> = (1..=i + 1).map(|k| self.derivative(0.3, k)).collect();
        gram_curvature(&derivs, i)
    }
}
