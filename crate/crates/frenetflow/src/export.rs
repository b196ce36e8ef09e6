//! Deterministic serialization: trajectory/report CSV, SVG plane
//! projections, and the run manifest.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::flow::Trajectory;
use crate::scenario::ScenarioConfig;
use crate::verify::{StudyReport, VerificationReport};

/// 17 significant digits; round-trips to the same f64 bit pattern.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Trajectory CSV: one row per (snapshot, sample), columns
/// t, sample_index, u, s, x1..xn, v, k1..k_{n-1}, f1..fn. LF newlines.
pub fn trajectory_csv(traj: &Trajectory) -> Result<String> {
    let n = traj.dim();
    let mut out = String::new();
    out.push_str("t,sample_index,u,s");
    for c in 1..=n {
        let _ = write!(out, ",x{c}");
    }
    out.push_str(",v");
    for i in 1..n {
        let _ = write!(out, ",k{i}");
    }
    for i in 1..=n {
        let _ = write!(out, ",f{i}");
    }
    out.push('\n');
    for snap in &traj.snapshots {
        let s = snap.curve.cumulative_arclength()?;
        for p in 0..snap.curve.len() {
            let _ = write!(out, "{},{p}", fmt_f64(snap.t));
            let _ = write!(out, ",{}", fmt_f64(snap.curve.params()[p]));
            let _ = write!(out, ",{}", fmt_f64(s[p]));
            for c in 0..n {
                let _ = write!(out, ",{}", fmt_f64(snap.curve.samples()[[p, c]]));
            }
            let _ = write!(out, ",{}", fmt_f64(snap.frenet.speed[p]));
            for i in 0..n - 1 {
                let _ = write!(out, ",{}", fmt_f64(snap.frenet.curvatures[[p, i]]));
            }
            for i in 0..n {
                let _ = write!(out, ",{}", fmt_f64(snap.speeds[[p, i]]));
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Report CSV: one row per (identity, variant, norm) triple.
pub fn report_csv(reports: &[&VerificationReport]) -> String {
    let mut out = String::from("identity,variant,norm,value\n");
    for rep in reports {
        for e in &rep.entries {
            let variant = e.variant.map_or("-", |v| v.as_str());
            let _ = writeln!(out, "{},{},max,{}", e.identity, variant, fmt_f64(e.max));
            let _ = writeln!(out, "{},{},rms,{}", e.identity, variant, fmt_f64(e.rms));
        }
    }
    out
}

/// Convergence study CSV: residuals per level plus estimated orders.
pub fn study_csv(study: &StudyReport) -> String {
    let mut out = String::from("level,h,identity,max,rms\n");
    for level in &study.levels {
        for e in &level.entries {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                level.label,
                fmt_f64(level.h),
                e.key(),
                fmt_f64(e.max),
                fmt_f64(e.rms)
            );
        }
    }
    out.push_str("identity,estimated_order\n");
    for (key, order) in &study.orders {
        match order {
            Some(o) => {
                let _ = writeln!(out, "{},{}", key, fmt_f64(*o));
            }
            None => {
                let _ = writeln!(out, "{key},n/a (floor)");
            }
        }
    }
    out
}

fn fmt_coord(x: f64) -> String {
    format!("{x:.9}")
}

/// SVG projection onto an axes pair (1-based), one polyline per selected
/// snapshot, earliest lightest. Deterministic bytes for fixed input.
pub fn svg_projection(traj: &Trajectory, axes: (usize, usize), stride: usize) -> Result<String> {
    let n = traj.dim();
    for axis in [axes.0, axes.1] {
        if axis == 0 || axis > n {
            return Err(Error::AxisOutOfRange { axis, dim: n });
        }
    }
    let stride = stride.max(1);
    let selected: Vec<usize> = (0..traj.len()).step_by(stride).collect();
    let (ax, ay) = (axes.0 - 1, axes.1 - 1);

    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for &i in &selected {
        let s = traj.snapshots[i].curve.samples();
        for p in 0..s.nrows() {
            xmin = xmin.min(s[[p, ax]]);
            xmax = xmax.max(s[[p, ax]]);
            ymin = ymin.min(s[[p, ay]]);
            ymax = ymax.max(s[[p, ay]]);
        }
    }
    let margin_x = 0.05 * (xmax - xmin).max(1e-12);
    let margin_y = 0.05 * (ymax - ymin).max(1e-12);
    let (x0, y0) = (xmin - margin_x, ymin - margin_y);
    let (w, h) = (
        xmax - xmin + 2.0 * margin_x,
        ymax - ymin + 2.0 * margin_y,
    );

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt_coord(x0),
        fmt_coord(y0),
        fmt_coord(w),
        fmt_coord(h)
    );
    let count = selected.len();
    for (rank, &i) in selected.iter().enumerate() {
        // earliest snapshot lightest
        let shade = if count > 1 {
            220 - (180 * rank / (count - 1)) as i32
        } else {
            40
        };
        let snap = &traj.snapshots[i];
        let s = snap.curve.samples();
        let mut points = String::new();
        for p in 0..s.nrows() {
            if p > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{},{}", fmt_coord(s[[p, ax]]), fmt_coord(s[[p, ay]]));
        }
        if snap.curve.topology() == crate::geometry::Topology::Closed {
            let _ = write!(points, " {},{}", fmt_coord(s[[0, ax]]), fmt_coord(s[[0, ay]]));
        }
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"rgb({shade},{shade},{shade})\" stroke-width=\"{}\" points=\"{points}\"/>",
            fmt_coord(0.004 * w.max(h))
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Run manifest: tool version, thread cap, resolved configuration and the
/// verbatim scenario text.
pub fn manifest(config: &ScenarioConfig, threads: Option<usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tool = frenetflow {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        "threads = {}",
        threads.map_or("default".to_string(), |t| t.to_string())
    );
    out.push_str("\n[resolved]\n");
    for (k, v) in config.resolved() {
        let _ = writeln!(out, "{k} = {v}");
    }
    out.push_str("\n[scenario]\n");
    out.push_str(&config.raw_text);
    if !config.raw_text.ends_with('\n') {
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents.as_bytes())?;
    Ok(())
}
