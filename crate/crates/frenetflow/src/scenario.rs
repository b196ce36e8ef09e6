//! Scenario configuration: a line-oriented `section.key = value` format with
//! `#` comments. Unknown keys are errors; every default is centralized here
//! and echoed into the run manifest.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::Result as CrateResult;
use crate::flow::{FlowField, Scheme, SpeedSpec, TangentialPolicy};
use crate::geometry::{CurvePreset, DiscreteCurve, Topology};
use crate::verify::VariantSel;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key `{key}` at line {line}")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value for `{field}`: {reason}")]
    Validation { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

#[derive(Debug, Clone)]
pub struct Tolerances {
    pub psi_antisymmetry: f64,
    pub lemma: f64,
    pub frame: f64,
    pub pde: f64,
    pub drift: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            psi_antisymmetry: 1e-6,
            lemma: 1e-4,
            frame: 1e-4,
            pde: 1e-4,
            drift: 1e-5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    /// Original scenario text, echoed into the manifest.
    pub raw_text: String,
    pub preset: CurvePreset,
    pub m: usize,
    /// Reparameterize the initial curve to arclength before running.
    pub arclength_start: bool,
    pub components: Vec<SpeedSpec>,
    pub policy: TangentialPolicy,
    pub t_end: f64,
    pub dt: f64,
    pub scheme: Scheme,
    pub resample_every: usize,
    pub variant: VariantSel,
    pub check_lemma: bool,
    pub check_frame: bool,
    pub check_pde: bool,
    pub tolerances: Tolerances,
    pub study_m: Vec<usize>,
    pub study_dt: Vec<f64>,
    pub out_csv: String,
    pub out_report_csv: String,
    pub out_svg: Option<String>,
    pub svg_axes: (usize, usize),
    pub svg_stride: usize,
}

impl ScenarioConfig {
    pub fn dim(&self) -> usize {
        self.preset.dim()
    }

    pub fn build_curve(&self) -> CrateResult<DiscreteCurve> {
        self.build_curve_at(self.m)
    }

    pub fn build_curve_at(&self, m: usize) -> CrateResult<DiscreteCurve> {
        let curve = self.preset.build(m)?;
        if self.arclength_start {
            curve.reparameterize_arclength(m)
        } else {
            Ok(curve)
        }
    }

    pub fn build_flow(&self) -> CrateResult<FlowField> {
        FlowField::new(self.components.clone(), self.policy)
    }

    /// Deterministic `key = value` listing of the resolved configuration.
    pub fn resolved(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        out.push(("curve.preset".into(), format!("{:?}", self.preset)));
        out.push(("curve.m".into(), self.m.to_string()));
        out.push(("curve.arclength".into(), self.arclength_start.to_string()));
        for (i, c) in self.components.iter().enumerate() {
            out.push((format!("flow.f{}", i + 1), format!("{c:?}")));
        }
        out.push((
            "flow.tangential".into(),
            match self.policy {
                TangentialPolicy::Explicit => "explicit".to_string(),
                TangentialPolicy::Constrained { anchor } => format!("constrained(anchor={anchor})"),
            },
        ));
        out.push(("sim.t_end".into(), format!("{}", self.t_end)));
        out.push(("sim.dt".into(), format!("{}", self.dt)));
        out.push(("sim.scheme".into(), self.scheme.as_str().to_string()));
        out.push(("sim.resample_every".into(), self.resample_every.to_string()));
        out.push((
            "verify.variant".into(),
            match self.variant {
                VariantSel::Statement => "statement",
                VariantSel::Proof => "proof",
                VariantSel::Both => "both",
            }
            .to_string(),
        ));
        out.push(("verify.lemma".into(), self.check_lemma.to_string()));
        out.push(("verify.frame".into(), self.check_frame.to_string()));
        out.push(("verify.pde".into(), self.check_pde.to_string()));
        out.push((
            "tol.psi_antisymmetry".into(),
            format!("{}", self.tolerances.psi_antisymmetry),
        ));
        out.push(("tol.lemma".into(), format!("{}", self.tolerances.lemma)));
        out.push(("tol.frame".into(), format!("{}", self.tolerances.frame)));
        out.push(("tol.pde".into(), format!("{}", self.tolerances.pde)));
        out.push(("tol.drift".into(), format!("{}", self.tolerances.drift)));
        if !self.study_m.is_empty() {
            out.push((
                "study.m".into(),
                self.study_m.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
        if !self.study_dt.is_empty() {
            out.push((
                "study.dt".into(),
                self.study_dt.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
        out.push(("output.csv".into(), self.out_csv.clone()));
        out.push(("output.report_csv".into(), self.out_report_csv.clone()));
        if let Some(svg) = &self.out_svg {
            out.push(("output.svg".into(), svg.clone()));
            out.push((
                "output.svg_axes".into(),
                format!("{},{}", self.svg_axes.0, self.svg_axes.1),
            ));
            out.push(("output.svg_stride".into(), self.svg_stride.to_string()));
        }
        out
    }
}

const KNOWN_KEYS: &[&str] = &[
    "curve.preset",
    "curve.r",
    "curve.a",
    "curve.b",
    "curve.amp",
    "curve.freq",
    "curve.length",
    "curve.ay",
    "curve.wy",
    "curve.az",
    "curve.wz",
    "curve.from",
    "curve.to",
    "curve.points",
    "curve.params",
    "curve.topology",
    "curve.m",
    "curve.arclength",
    "flow.f1",
    "flow.f2",
    "flow.f3",
    "flow.f4",
    "flow.f5",
    "flow.f6",
    "flow.f7",
    "flow.f8",
    "flow.tangential",
    "flow.anchor",
    "sim.t_end",
    "sim.dt",
    "sim.scheme",
    "sim.resample_every",
    "verify.variant",
    "verify.lemma",
    "verify.frame",
    "verify.pde",
    "tol.psi_antisymmetry",
    "tol.lemma",
    "tol.frame",
    "tol.pde",
    "tol.drift",
    "study.m",
    "study.dt",
    "output.csv",
    "output.report_csv",
    "output.svg",
    "output.svg_axes",
    "output.svg_stride",
];

fn parse_f64(field: &str, v: &str) -> Result<f64> {
    v.trim().parse::<f64>().map_err(|_| ScenarioError::Validation {
        field: field.to_string(),
        reason: format!("`{v}` is not a number"),
    })
}

fn parse_usize(field: &str, v: &str) -> Result<usize> {
    v.trim().parse::<usize>().map_err(|_| ScenarioError::Validation {
        field: field.to_string(),
        reason: format!("`{v}` is not a non-negative integer"),
    })
}

fn parse_bool(field: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(ScenarioError::Validation {
            field: field.to_string(),
            reason: format!("`{other}` is not true/false"),
        }),
    }
}

fn parse_f64_list(field: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|p| parse_f64(field, p)).collect()
}

fn parse_speed_spec(field: &str, v: &str) -> Result<SpeedSpec> {
    let v = v.trim();
    let (head, args) = match v.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (v, None),
    };
    let two_args = |field: &str, args: Option<&str>, d0: f64, d1: f64| -> Result<(f64, f64)> {
        match args {
            None => Ok((d0, d1)),
            Some(a) => {
                let parts = parse_f64_list(field, a)?;
                match parts.len() {
                    1 => Ok((parts[0], d1)),
                    2 => Ok((parts[0], parts[1])),
                    _ => Err(ScenarioError::Validation {
                        field: field.to_string(),
                        reason: "expected at most two arguments".into(),
                    }),
                }
            }
        }
    };
    Ok(match head {
        "zero" => SpeedSpec::Zero,
        "const" => SpeedSpec::Constant(parse_f64(field, args.unwrap_or("0"))?),
        "sin" => {
            let (omega, phase) = two_args(field, args, 1.0, 0.0)?;
            SpeedSpec::Sin { omega, phase }
        }
        "cos" => {
            let (omega, phase) = two_args(field, args, 1.0, 0.0)?;
            SpeedSpec::Cos { omega, phase }
        }
        "poly" => SpeedSpec::Poly(parse_f64_list(field, args.unwrap_or(""))?),
        "curvature" => SpeedSpec::Curvature(parse_usize(field, args.unwrap_or("1"))?),
        "dcurvature" => SpeedSpec::CurvatureDeriv(parse_usize(field, args.unwrap_or("1"))?),
        "tab" => SpeedSpec::Tabulated(parse_f64_list(field, args.unwrap_or(""))?),
        other => {
            return Err(ScenarioError::Validation {
                field: field.to_string(),
                reason: format!("unknown speed spec `{other}`"),
            })
        }
    })
}

/// Parses and validates a scenario text.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let mut values: BTreeMap<String, (String, usize)> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let stripped = stripped.trim();
        if stripped.is_empty() {
            continue;
        }
        let (key, value) = stripped.split_once('=').ok_or_else(|| ScenarioError::Syntax {
            line,
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ScenarioError::UnknownKey { line, key });
        }
        if values.insert(key.clone(), (value, line)).is_some() {
            return Err(ScenarioError::Syntax {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
    }

    let get = |k: &str| values.get(k).map(|(v, _)| v.as_str());

    let preset_name = get("curve.preset").ok_or_else(|| ScenarioError::Validation {
        field: "curve.preset".into(),
        reason: "missing".into(),
    })?;
    let getf = |k: &str, d: f64| -> Result<f64> {
        match get(k) {
            Some(v) => parse_f64(k, v),
            None => Ok(d),
        }
    };
    let preset = match preset_name {
        "circle" => CurvePreset::Circle { r: getf("curve.r", 1.0)? },
        "ellipse" => CurvePreset::Ellipse {
            a: getf("curve.a", 2.0)?,
            b: getf("curve.b", 1.0)?,
        },
        "helix" => CurvePreset::Helix {
            a: getf("curve.a", 1.0)?,
            b: getf("curve.b", 1.0)?,
        },
        "flat_torus" => {
            let a = getf("curve.a", 1.0)?;
            let b = getf("curve.b", 2.0)?;
            if a.fract() != 0.0 || b.fract() != 0.0 {
                return Err(ScenarioError::Validation {
                    field: "curve.a".into(),
                    reason: "flat_torus frequencies must be integers for a closed curve".into(),
                });
            }
            CurvePreset::FlatTorus { a, b }
        }
        "segment" => {
            let from = parse_f64_list("curve.from", get("curve.from").unwrap_or("0,0"))?;
            let to = parse_f64_list("curve.to", get("curve.to").unwrap_or("1,0"))?;
            if from.len() != to.len() {
                return Err(ScenarioError::Validation {
                    field: "curve.to".into(),
                    reason: "endpoint dimensions differ".into(),
                });
            }
            CurvePreset::Segment { from, to }
        }
        "sine" => CurvePreset::Sine {
            amp: getf("curve.amp", 0.3)?,
            freq: getf("curve.freq", 1.0)?,
            length: getf("curve.length", 2.0 * std::f64::consts::PI)?,
        },
        "wave" => CurvePreset::Wave {
            ay: getf("curve.ay", 0.4)?,
            wy: getf("curve.wy", 1.0)?,
            az: getf("curve.az", 0.3)?,
            wz: getf("curve.wz", 1.0)?,
            length: getf("curve.length", 2.0 * std::f64::consts::PI)?,
        },
        "points" => {
            let pts_text = get("curve.points").ok_or_else(|| ScenarioError::Validation {
                field: "curve.points".into(),
                reason: "missing for preset points".into(),
            })?;
            let samples: Vec<Vec<f64>> = pts_text
                .split(';')
                .map(|p| parse_f64_list("curve.points", p))
                .collect::<Result<_>>()?;
            let params = parse_f64_list(
                "curve.params",
                get("curve.params").ok_or_else(|| ScenarioError::Validation {
                    field: "curve.params".into(),
                    reason: "missing for preset points".into(),
                })?,
            )?;
            let topology = match get("curve.topology").unwrap_or("open") {
                "open" => Topology::Open,
                "closed" => Topology::Closed,
                other => {
                    return Err(ScenarioError::Validation {
                        field: "curve.topology".into(),
                        reason: format!("`{other}` is not open/closed"),
                    })
                }
            };
            CurvePreset::Points {
                samples,
                params,
                topology,
            }
        }
        other => {
            return Err(ScenarioError::Validation {
                field: "curve.preset".into(),
                reason: format!("unknown preset `{other}`"),
            })
        }
    };

    if preset_name != "points" {
        if let Some(t) = get("curve.topology") {
            let natural = preset.natural_topology().as_str();
            if t != natural {
                return Err(ScenarioError::Validation {
                    field: "curve.topology".into(),
                    reason: format!("preset `{preset_name}` is {natural}"),
                });
            }
        }
    }

    let m = match get("curve.m") {
        Some(v) => parse_usize("curve.m", v)?,
        None => 256,
    };
    let dim = preset.dim();
    if dim < 2 {
        return Err(ScenarioError::Validation {
            field: "curve.preset".into(),
            reason: "curve dimension must be at least 2".into(),
        });
    }

    let mut components = vec![SpeedSpec::Zero; dim];
    for i in 1..=8 {
        let key = format!("flow.f{i}");
        if let Some(v) = get(&key) {
            if i > dim {
                return Err(ScenarioError::Validation {
                    field: key.clone(),
                    reason: format!("component index exceeds curve dimension {dim}"),
                });
            }
            components[i - 1] = parse_speed_spec(&key, v)?;
        }
    }

    let anchor = getf("flow.anchor", 0.0)?;
    let policy = match get("flow.tangential").unwrap_or("explicit") {
        "explicit" => TangentialPolicy::Explicit,
        "constrained" => {
            if components[0] != SpeedSpec::Zero {
                return Err(ScenarioError::Validation {
                    field: "flow.f1".into(),
                    reason: "must be unspecified under constrained tangential policy".into(),
                });
            }
            TangentialPolicy::Constrained { anchor }
        }
        other => {
            return Err(ScenarioError::Validation {
                field: "flow.tangential".into(),
                reason: format!("`{other}` is not explicit/constrained"),
            })
        }
    };

    let t_end = getf("sim.t_end", 1.0)?;
    let dt = getf("sim.dt", 1e-3)?;
    if !(t_end > 0.0) || !(dt > 0.0) {
        return Err(ScenarioError::Validation {
            field: "sim.dt".into(),
            reason: "t_end and dt must be positive".into(),
        });
    }
    let scheme = match get("sim.scheme").unwrap_or("rk4") {
        "euler" => Scheme::Euler,
        "rk4" => Scheme::Rk4,
        other => {
            return Err(ScenarioError::Validation {
                field: "sim.scheme".into(),
                reason: format!("`{other}` is not euler/rk4"),
            })
        }
    };
    let resample_every = match get("sim.resample_every") {
        Some(v) => parse_usize("sim.resample_every", v)?,
        None => 0,
    };

    let variant = match get("verify.variant").unwrap_or("both") {
        "statement" => VariantSel::Statement,
        "proof" => VariantSel::Proof,
        "both" => VariantSel::Both,
        other => {
            return Err(ScenarioError::Validation {
                field: "verify.variant".into(),
                reason: format!("`{other}` is not statement/proof/both"),
            })
        }
    };
    let getb = |k: &str, d: bool| -> Result<bool> {
        match get(k) {
            Some(v) => parse_bool(k, v),
            None => Ok(d),
        }
    };
    let defaults = Tolerances::default();
    let tolerances = Tolerances {
        psi_antisymmetry: getf("tol.psi_antisymmetry", defaults.psi_antisymmetry)?,
        lemma: getf("tol.lemma", defaults.lemma)?,
        frame: getf("tol.frame", defaults.frame)?,
        pde: getf("tol.pde", defaults.pde)?,
        drift: getf("tol.drift", defaults.drift)?,
    };

    let study_m = match get("study.m") {
        Some(v) => v
            .split(',')
            .map(|p| parse_usize("study.m", p))
            .collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    let study_dt = match get("study.dt") {
        Some(v) => parse_f64_list("study.dt", v)?,
        None => vec![],
    };
    if study_m.len() != study_dt.len() && !(study_m.is_empty() || study_dt.is_empty()) {
        return Err(ScenarioError::Validation {
            field: "study.dt".into(),
            reason: "study.m and study.dt must have the same length".into(),
        });
    }

    let svg_axes = match get("output.svg_axes") {
        Some(v) => {
            let parts = v.split(',').collect::<Vec<_>>();
            if parts.len() != 2 {
                return Err(ScenarioError::Validation {
                    field: "output.svg_axes".into(),
                    reason: "expected two comma-separated indices".into(),
                });
            }
            (
                parse_usize("output.svg_axes", parts[0])?,
                parse_usize("output.svg_axes", parts[1])?,
            )
        }
        None => (1, 2),
    };
    let svg_stride = match get("output.svg_stride") {
        Some(v) => parse_usize("output.svg_stride", v)?.max(1),
        None => 100,
    };

    Ok(ScenarioConfig {
        raw_text: text.to_string(),
        preset,
        m,
        arclength_start: getb("curve.arclength", false)?,
        components,
        policy,
        t_end,
        dt,
        scheme,
        resample_every,
        variant,
        check_lemma: getb("verify.lemma", true)?,
        check_frame: getb("verify.frame", true)?,
        check_pde: getb("verify.pde", true)?,
        tolerances,
        study_m,
        study_dt,
        out_csv: get("output.csv").unwrap_or("trajectory.csv").to_string(),
        out_report_csv: get("output.report_csv").unwrap_or("report.csv").to_string(),
        out_svg: get("output.svg").map(|s| s.to_string()),
        svg_axes,
        svg_stride,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_fills_defaults() {
        let cfg = parse_scenario("curve.preset = circle\n").unwrap();
        assert_eq!(cfg.m, 256);
        assert_eq!(cfg.dt, 1e-3);
        assert_eq!(cfg.scheme, Scheme::Rk4);
        assert_eq!(cfg.components.len(), 2);
        assert!(matches!(cfg.policy, TangentialPolicy::Explicit));
    }

    #[test]
    fn missing_preset_is_a_validation_error() {
        let err = parse_scenario("curve.m = 128\n").unwrap_err();
        match err {
            ScenarioError::Validation { field, reason } => {
                assert_eq!(field, "curve.preset");
                assert_eq!(reason, "missing");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_reports_line_number() {
        let err = parse_scenario("curve.preset = circle\ncurve.radius = 2\n").unwrap_err();
        match err {
            ScenarioError::UnknownKey { line, key } => {
                assert_eq!(line, 2);
                assert_eq!(key, "curve.radius");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_line_number() {
        let err = parse_scenario("curve.preset circle\n").unwrap_err();
        assert!(matches!(err, ScenarioError::Syntax { line: 1, .. }));
    }

    #[test]
    fn constrained_translation_flow_parses() {
        let cfg = parse_scenario(
            "curve.preset = circle\nflow.f2 = cos\nflow.tangential = constrained\n",
        )
        .unwrap();
        assert!(matches!(cfg.policy, TangentialPolicy::Constrained { .. }));
        assert_eq!(
            cfg.components[1],
            SpeedSpec::Cos { omega: 1.0, phase: 0.0 }
        );
    }

    #[test]
    fn component_beyond_dimension_is_rejected() {
        let err = parse_scenario("curve.preset = circle\nflow.f3 = const:1\n").unwrap_err();
        assert!(matches!(err, ScenarioError::Validation { .. }));
    }
}
