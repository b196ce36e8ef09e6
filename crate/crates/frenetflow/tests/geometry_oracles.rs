//! Arclength and derivative checks against quadrature and closed forms.

mod common;

use common::{adaptive_simpson, Helix};
use frenetflow::CurvePreset;
use std::f64::consts::PI;

#[test]
fn ellipse_perimeter_matches_adaptive_quadrature() {
    let (a, b) = (2.0, 1.0);
    let oracle = adaptive_simpson(
        &|u: f64| ((a * u.sin()).powi(2) + (b * u.cos()).powi(2)).sqrt(),
        0.0,
        2.0 * PI,
        1e-12,
    );
    let curve = CurvePreset::Ellipse { a, b }.build(512).unwrap();
    let total = curve.total_arclength().unwrap();
    assert!(
        (total - oracle).abs() < 1e-9,
        "perimeter {total} vs quadrature {oracle}"
    );
}

#[test]
fn partial_arclength_matches_quadrature_on_ellipse() {
    let (a, b) = (2.0, 1.0);
    let curve = CurvePreset::Ellipse { a, b }.build(512).unwrap();
    for ustar in [0.7, PI, 5.5] {
        let oracle = adaptive_simpson(
            &|u: f64| ((a * u.sin()).powi(2) + (b * u.cos()).powi(2)).sqrt(),
            0.0,
            ustar,
            1e-12,
        );
        let s = curve.arclength(ustar).unwrap();
        assert!((s - oracle).abs() < 1e-8, "s({ustar}) = {s} vs {oracle}");
    }
}

#[test]
fn helix_derivatives_match_symbolic_oracle() {
    let h = Helix { a: 1.0, b: 0.5 };
    let curve = CurvePreset::Helix { a: 1.0, b: 0.5 }.build(512).unwrap();
    for k in 1..=3usize {
        let d = curve.derivative(k).unwrap();
        // interior point away from the one-sided stencils
        let i = 256;
        let exact = h.derivative(curve.params()[i], k);
        for c in 0..3 {
            assert!(
                (d[[i, c]] - exact[c]).abs() < 1e-6,
                "order {k} component {c}: {} vs {}",
                d[[i, c]],
                exact[c]
            );
        }
    }
}

#[test]
fn arclength_is_additive_across_the_seam() {
    // wrapping past the period accumulates whole loops
    let curve = CurvePreset::Circle { r: 2.0 }.build(256).unwrap();
    let total = curve.total_arclength().unwrap();
    let s1 = curve.arclength(1.0).unwrap();
    let s_wrapped = curve.arclength(1.0 + 2.0 * PI).unwrap();
    assert!((s_wrapped - s1 - total).abs() < 1e-9);
}

#[test]
fn reparameterization_preserves_total_length() {
    let curve = CurvePreset::Ellipse { a: 2.0, b: 1.0 }.build(512).unwrap();
    let before = curve.total_arclength().unwrap();
    let repar = curve.reparameterize_arclength(512).unwrap();
    let after = repar.total_arclength().unwrap();
    assert!(
        (before - after).abs() / before < 1e-6,
        "{before} vs {after}"
    );
    let v = repar.speed().unwrap();
    for &x in v.iter() {
        assert!((x - 1.0).abs() < 1e-4, "speed {x} not unit");
    }
}
