//! Frame and curvature checks against symbolic oracles and invariance laws.

mod common;

use common::{FlatTorus, Helix};
use frenetflow::frenet::{check_nondegenerate, frenet_frame, frenet_residual, GS_EPS};
use frenetflow::CurvePreset;
use ndarray::Array2;
use proptest::prelude::*;

#[test]
fn helix_frame_and_curvatures_match_closed_form() {
    let h = Helix { a: 1.0, b: 0.5 };
    let curve = CurvePreset::Helix { a: 1.0, b: 0.5 }.build(512).unwrap();
    let data = frenet_frame(&curve).unwrap();
    for p in (0..curve.len()).step_by(37) {
        let frame = h.frame(curve.params()[p]);
        for (i, exact_vi) in frame.iter().enumerate() {
            for c in 0..3 {
                assert!(
                    (data.frames[[p, i, c]] - exact_vi[c]).abs() < 1e-6,
                    "V{} component {c} at sample {p}",
                    i + 1
                );
            }
        }
        assert!((data.curvatures[[p, 0]] - h.k1()).abs() < 1e-6);
        assert!((data.curvatures[[p, 1]] - h.k2()).abs() < 1e-6);
    }
}

#[test]
fn flat_torus_curvatures_match_gram_oracle() {
    let torus = FlatTorus { a: 1.0, b: 2.0 };
    let curve = CurvePreset::FlatTorus { a: 1.0, b: 2.0 }.build(512).unwrap();
    let data = frenet_frame(&curve).unwrap();
    for i in 1..=3usize {
        let oracle = torus.curvature(i);
        let field = data.curvature_field(i);
        for &k in field.iter() {
            assert!(
                (k - oracle).abs() < 1e-6,
                "k{i} = {k} vs gram oracle {oracle}"
            );
        }
    }
    assert!(frenet_residual(&curve, &data) < 1e-6);
    assert!(check_nondegenerate(&curve, GS_EPS).unwrap().ok);
}

/// Rotation about the three coordinate axes composed with a translation.
fn rigid_motion(samples: &Array2<f64>, angles: [f64; 3], shift: [f64; 3]) -> Array2<f64> {
    let mut out = samples.clone();
    for (axis_a, axis_b, th) in [(0, 1, angles[0]), (1, 2, angles[1]), (0, 2, angles[2])] {
        for mut row in out.rows_mut() {
            let (x, y) = (row[axis_a], row[axis_b]);
            row[axis_a] = th.cos() * x - th.sin() * y;
            row[axis_b] = th.sin() * x + th.cos() * y;
        }
    }
    for mut row in out.rows_mut() {
        for c in 0..3 {
            row[c] += shift[c];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn curvatures_are_rigid_motion_invariant(
        a1 in 0.0..std::f64::consts::TAU,
        a2 in 0.0..std::f64::consts::TAU,
        a3 in 0.0..std::f64::consts::TAU,
        tx in -1.0..1.0f64,
        ty in -1.0..1.0f64,
        tz in -1.0..1.0f64,
    ) {
        // coarse grid: the invariance is exact in real arithmetic, and the
        // roundoff amplified by the stencil weights must stay below 1e-10
        let curve = CurvePreset::Helix { a: 1.0, b: 0.5 }.build(64).unwrap();
        let moved = curve
            .with_samples(rigid_motion(curve.samples(), [a1, a2, a3], [tx, ty, tz]))
            .unwrap();
        let k0 = frenet_frame(&curve).unwrap().curvatures;
        let k1 = frenet_frame(&moved).unwrap().curvatures;
        let rel = (&k1 - &k0)
            .iter()
            .zip(k0.iter())
            .fold(0.0f64, |acc, (&d, &k)| acc.max((d / k).abs()));
        prop_assert!(rel < 1e-10, "relative curvature change {rel}");
    }

    #[test]
    fn curvatures_scale_inversely_with_dilation(lambda in 0.2..5.0f64) {
        let curve = CurvePreset::Ellipse { a: 2.0, b: 1.0 }.build(256).unwrap();
        let scaled = curve.with_samples(curve.samples() * lambda).unwrap();
        let k0 = frenet_frame(&curve).unwrap().curvatures;
        let k1 = frenet_frame(&scaled).unwrap().curvatures;
        for (&a, &b) in k0.iter().zip(k1.iter()) {
            prop_assert!(((b * lambda - a) / a).abs() < 1e-8);
        }
    }
}
