//! Parameter sweeps: JSON configs, single-point evaluation and CSV output.
//!
//! A config names a scenario, overrides any of its parameters and sweeps one
//! of them over a linear grid:
//!
//! ```json
//! { "scenario": "qnd", "params": { "temperature": 2.0 },
//!   "axis": { "name": "t", "start": 0.0, "stop": 15.0, "count": 151 } }
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::baths::{OpticalBathSpec, QndBathSpec, SgadBathSpec};
use crate::channels::{evolve_two_qubit_vacuum, DressedTwoQubitState, EinsteinCoefficients, TwoQubitGeometry};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::parallel::{par_map, Execution};
use crate::rotations::EulerAngles;
use crate::tomography::{
    acs_qnd_tomogram, acs_sgad_tomogram, optical_tomogram, optical_tomogram_curve, qutrit_se_tomogram,
    spin1_tomogram, two_qubit_tomogram, TomogramVector, DEFAULT_CURVE_POINTS,
};

/// Tolerance on `sum w = 1` for every emitted row.
pub const ROW_NORMALIZATION_TOL: f64 = 1e-10;
/// Tolerance on the integral of the optical curve through each point.
pub const CURVE_NORMALIZATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Qnd,
    Sgad,
    TwoQubit,
    Spin1,
    Qutrit,
    Optical,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::Qnd,
        ScenarioKind::Sgad,
        ScenarioKind::TwoQubit,
        ScenarioKind::Spin1,
        ScenarioKind::Qutrit,
        ScenarioKind::Optical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Qnd => "qnd",
            ScenarioKind::Sgad => "sgad",
            ScenarioKind::TwoQubit => "two_qubit",
            ScenarioKind::Spin1 => "spin1",
            ScenarioKind::Qutrit => "qutrit",
            ScenarioKind::Optical => "optical",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario `{s}` (expected one of qnd, sgad, two_qubit, spin1, qutrit, optical)")))
    }

    /// Output column names after the swept value.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            ScenarioKind::Qnd | ScenarioKind::Sgad => &["w_up", "w_down"],
            ScenarioKind::TwoQubit => &["w_up_up", "w_up_down", "w_down_up", "w_down_down"],
            ScenarioKind::Spin1 => &["w_plus1", "w_0", "w_minus1"],
            ScenarioKind::Qutrit => &["w_0", "w_1", "w_2"],
            ScenarioKind::Optical => &["density"],
        }
    }
}

/// Spin-1/2 atomic coherent state in a dephasing bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QndPoint {
    pub alpha: f64,
    pub beta: f64,
    pub analyzer_alpha: f64,
    pub analyzer_beta: f64,
    pub analyzer_gamma: f64,
    pub t: f64,
    pub temperature: f64,
    pub gamma0: f64,
    pub cutoff: f64,
    pub squeezing: f64,
    pub squeezing_phase: f64,
    pub omega: f64,
}

impl Default for QndPoint {
    fn default() -> Self {
        Self {
            alpha: FRAC_PI_2,
            beta: FRAC_PI_3,
            analyzer_alpha: 0.0,
            analyzer_beta: FRAC_PI_3,
            analyzer_gamma: FRAC_PI_4,
            t: 1.0,
            temperature: 1.0,
            gamma0: 0.1,
            cutoff: 100.0,
            squeezing: 0.0,
            squeezing_phase: 0.0,
            omega: 1.0,
        }
    }
}

/// Spin-1/2 atomic coherent state in a squeezed generalized amplitude
/// damping bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SgadPoint {
    pub alpha: f64,
    pub beta: f64,
    pub analyzer_alpha: f64,
    pub analyzer_beta: f64,
    pub analyzer_gamma: f64,
    pub t: f64,
    pub temperature: f64,
    pub squeezing: f64,
    pub squeezing_phase: f64,
    pub gamma0: f64,
    pub omega: f64,
}

impl Default for SgadPoint {
    fn default() -> Self {
        Self {
            alpha: FRAC_PI_2,
            beta: FRAC_PI_3,
            analyzer_alpha: 0.0,
            analyzer_beta: FRAC_PI_3,
            analyzer_gamma: FRAC_PI_4,
            t: 1.0,
            temperature: 1.0,
            squeezing: 0.0,
            squeezing_phase: PI,
            gamma0: 0.25,
            omega: 1.0,
        }
    }
}

/// Two qubits in a shared vacuum bath, starting from `|e>|g>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TwoQubitPoint {
    pub t: f64,
    pub gamma: f64,
    pub k0: f64,
    pub r12: f64,
    pub mu_dot_r: f64,
    pub omega0: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub gamma2: f64,
}

impl Default for TwoQubitPoint {
    fn default() -> Self {
        Self {
            t: 1.0,
            gamma: 0.05,
            k0: 1.0,
            r12: 0.05,
            mu_dot_r: 0.0,
            omega0: 1.0,
            alpha1: 0.0,
            beta1: FRAC_PI_3,
            gamma1: FRAC_PI_3,
            alpha2: 0.0,
            beta2: FRAC_PI_4,
            gamma2: FRAC_PI_4,
        }
    }
}

/// Pure spin-1 state with amplitudes `a e^{i a_phase}`, ... over `m = 1, 0, -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Spin1Point {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub a_phase: f64,
    pub b_phase: f64,
    pub c_phase: f64,
    pub analyzer_alpha: f64,
    pub analyzer_beta: f64,
    pub analyzer_gamma: f64,
}

impl Default for Spin1Point {
    fn default() -> Self {
        let amp = 1.0 / 3f64.sqrt();
        Self {
            a: amp,
            b: amp,
            c: amp,
            a_phase: 0.0,
            b_phase: 0.0,
            c_phase: 0.0,
            analyzer_alpha: 0.0,
            analyzer_beta: FRAC_PI_3,
            analyzer_gamma: FRAC_PI_4,
        }
    }
}

/// Qutrit under spontaneous emission, phase-state tomogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QutritPoint {
    pub t: f64,
    pub eta1: f64,
    pub eta2: f64,
}

impl Default for QutritPoint {
    fn default() -> Self {
        Self { t: 1.0, eta1: 2.0, eta2: 4.0 }
    }
}

/// Coherent state `|beta>` of a damped oscillator in a squeezed thermal bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OpticalPoint {
    pub x: f64,
    pub theta: f64,
    pub t: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub n_thermal: f64,
    pub squeezing: f64,
    pub dissipation: f64,
}

impl Default for OpticalPoint {
    fn default() -> Self {
        Self {
            x: 1.0,
            theta: FRAC_PI_3,
            t: 1.0,
            beta_re: 2.0,
            beta_im: 0.0,
            n_thermal: 5.0,
            squeezing: 1.0,
            dissipation: 0.5,
        }
    }
}

/// One fully specified evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    Qnd(QndPoint),
    Sgad(SgadPoint),
    TwoQubit(TwoQubitPoint),
    Spin1(Spin1Point),
    Qutrit(QutritPoint),
    Optical(OpticalPoint),
}

fn parse_params<T: DeserializeOwned>(kind: ScenarioKind, params: Value) -> Result<T> {
    serde_json::from_value(params).map_err(|e| Error::Config(format!("{} params: {e}", kind.name())))
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("time must be finite and >= 0, got {t}")))
    }
}

impl Scenario {
    /// Scenario defaults overlaid with `params` (a JSON object).
    pub fn from_params(kind: ScenarioKind, params: Value) -> Result<Self> {
        Ok(match kind {
            ScenarioKind::Qnd => Scenario::Qnd(parse_params(kind, params)?),
            ScenarioKind::Sgad => Scenario::Sgad(parse_params(kind, params)?),
            ScenarioKind::TwoQubit => Scenario::TwoQubit(parse_params(kind, params)?),
            ScenarioKind::Spin1 => Scenario::Spin1(parse_params(kind, params)?),
            ScenarioKind::Qutrit => Scenario::Qutrit(parse_params(kind, params)?),
            ScenarioKind::Optical => Scenario::Optical(parse_params(kind, params)?),
        })
    }

    pub fn defaults(kind: ScenarioKind) -> Self {
        Self::from_params(kind, Value::Object(Map::new())).expect("defaults deserialize")
    }

    pub fn kind(&self) -> ScenarioKind {
        match self {
            Scenario::Qnd(_) => ScenarioKind::Qnd,
            Scenario::Sgad(_) => ScenarioKind::Sgad,
            Scenario::TwoQubit(_) => ScenarioKind::TwoQubit,
            Scenario::Spin1(_) => ScenarioKind::Spin1,
            Scenario::Qutrit(_) => ScenarioKind::Qutrit,
            Scenario::Optical(_) => ScenarioKind::Optical,
        }
    }

    /// Parameter record as a JSON object with every field present.
    pub fn params(&self) -> Value {
        match self {
            Scenario::Qnd(p) => serde_json::to_value(p),
            Scenario::Sgad(p) => serde_json::to_value(p),
            Scenario::TwoQubit(p) => serde_json::to_value(p),
            Scenario::Spin1(p) => serde_json::to_value(p),
            Scenario::Qutrit(p) => serde_json::to_value(p),
            Scenario::Optical(p) => serde_json::to_value(p),
        }
        .expect("plain structs serialize")
    }

    /// Copy with parameter `name` set to `value`.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let mut params = self.params();
        let obj = params.as_object_mut().expect("params are an object");
        if !obj.contains_key(name) {
            return Err(Error::Config(format!("{} has no parameter `{name}`", self.kind().name())));
        }
        let number = serde_json::Number::from_f64(value)
            .ok_or_else(|| Error::Config(format!("parameter `{name}` must be finite, got {value}")))?;
        obj.insert(name.to_owned(), Value::Number(number));
        Self::from_params(self.kind(), params)
    }

    /// Domain checks without evaluating the tomogram.
    pub fn validate(&self) -> Result<()> {
        match self {
            Scenario::Qnd(p) => {
                check_time(p.t)?;
                EulerAngles::new(p.analyzer_alpha, p.analyzer_beta, p.analyzer_gamma)?;
                qnd_bath(p).validate()
            }
            Scenario::Sgad(p) => {
                check_time(p.t)?;
                EulerAngles::new(p.analyzer_alpha, p.analyzer_beta, p.analyzer_gamma)?;
                let ok = p.temperature >= 0.0 && p.squeezing >= 0.0 && p.gamma0 >= 0.0;
                if !ok || ![p.temperature, p.squeezing, p.squeezing_phase, p.gamma0, p.omega].iter().all(|x| x.is_finite()) {
                    return Err(Error::InvalidParameter(format!("SGAD bath needs T, r, gamma0 >= 0 (got {p:?})")));
                }
                Ok(())
            }
            Scenario::TwoQubit(p) => {
                check_time(p.t)?;
                EulerAngles::new(p.alpha1, p.beta1, p.gamma1)?;
                EulerAngles::new(p.alpha2, p.beta2, p.gamma2)?;
                geometry(p).validate()
            }
            Scenario::Spin1(p) => {
                EulerAngles::new(p.analyzer_alpha, p.analyzer_beta, p.analyzer_gamma)?;
                if p.a * p.a + p.b * p.b + p.c * p.c == 0.0 {
                    return Err(Error::ZeroState);
                }
                Ok(())
            }
            Scenario::Qutrit(p) => {
                check_time(p.t)?;
                EinsteinCoefficients::new(p.eta1, p.eta2).map(|_| ())
            }
            Scenario::Optical(p) => {
                check_time(p.t)?;
                optical_bath(p).validate()
            }
        }
    }

    /// Tomogram components, in the order of [`ScenarioKind::columns`].
    pub fn evaluate(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let vector = match self {
            Scenario::Qnd(p) => acs_qnd_tomogram(p.alpha, p.beta, &analyzer(p.analyzer_alpha, p.analyzer_beta, p.analyzer_gamma)?, p.t, &qnd_bath(p))?,
            Scenario::Sgad(p) => {
                let bath = SgadBathSpec {
                    temperature: p.temperature,
                    squeezing: p.squeezing,
                    squeezing_phase: p.squeezing_phase,
                    gamma0: p.gamma0,
                    omega: p.omega,
                };
                acs_sgad_tomogram(p.alpha, p.beta, &analyzer(p.analyzer_alpha, p.analyzer_beta, p.analyzer_gamma)?, p.t, &bath.params())?
            }
            Scenario::TwoQubit(p) => {
                let rho = evolve_two_qubit_vacuum(&DressedTwoQubitState::initial_e1g2(), p.t, &geometry(p))?;
                two_qubit_tomogram(&rho, &analyzer(p.alpha1, p.beta1, p.gamma1)?, &analyzer(p.alpha2, p.beta2, p.gamma2)?)
            }
            Scenario::Spin1(p) => spin1_tomogram(
                C64::from_polar(p.a, p.a_phase),
                C64::from_polar(p.b, p.b_phase),
                C64::from_polar(p.c, p.c_phase),
                &analyzer(p.analyzer_alpha, p.analyzer_beta, p.analyzer_gamma)?,
            )?,
            Scenario::Qutrit(p) => qutrit_se_tomogram(p.t, &EinsteinCoefficients::new(p.eta1, p.eta2)?)?,
            Scenario::Optical(p) => return evaluate_optical(p),
        };
        check_vector(&vector)?;
        Ok(vector.probs)
    }
}

fn analyzer(alpha: f64, beta: f64, gamma: f64) -> Result<EulerAngles> {
    EulerAngles::new(alpha, beta, gamma)
}

fn qnd_bath(p: &QndPoint) -> QndBathSpec {
    QndBathSpec {
        temperature: p.temperature,
        gamma0: p.gamma0,
        cutoff: p.cutoff,
        squeezing: p.squeezing,
        squeezing_phase: p.squeezing_phase,
        omega: p.omega,
    }
}

fn geometry(p: &TwoQubitPoint) -> TwoQubitGeometry {
    TwoQubitGeometry { gamma: p.gamma, k0: p.k0, r12: p.r12, mu_dot_r: p.mu_dot_r, omega0: p.omega0 }
}

fn optical_bath(p: &OpticalPoint) -> OpticalBathSpec {
    OpticalBathSpec { n_thermal: p.n_thermal, squeezing: p.squeezing, dissipation: p.dissipation }
}

fn check_vector(v: &TomogramVector) -> Result<()> {
    let dev = v.normalization_deviation();
    if !(dev <= ROW_NORMALIZATION_TOL) || v.range_violation() > ROW_NORMALIZATION_TOL {
        return Err(Error::InvalidParameter(format!(
            "tomogram {:?} fails normalization (|sum - 1| = {dev:e})",
            v.probs
        )));
    }
    Ok(())
}

fn evaluate_optical(p: &OpticalPoint) -> Result<Vec<f64>> {
    let bath = optical_bath(p);
    let beta = C64::new(p.beta_re, p.beta_im);
    let curve = optical_tomogram_curve(p.theta, p.t, beta, &bath, DEFAULT_CURVE_POINTS)?;
    let dev = (curve.trapezoid() - 1.0).abs();
    if !(dev <= CURVE_NORMALIZATION_TOL) {
        return Err(Error::InvalidParameter(format!("optical curve integrates to 1 +- {dev:e}")));
    }
    Ok(vec![optical_tomogram(p.x, p.theta, p.t, beta, &bath)?])
}

/// Linear grid over one named parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    scenario: ScenarioKind,
    #[serde(default)]
    params: Option<Value>,
    axis: Axis,
    #[serde(default)]
    execution: Execution,
    #[serde(default)]
    out: Option<String>,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub axis: Axis,
    pub execution: Execution,
    /// Output path from the config; the command line may override it.
    pub out: Option<String>,
}

/// Parses `key=value`. The value is read as JSON when it parses, otherwise as
/// a string.
pub fn parse_override(s: &str) -> Result<(String, Value)> {
    let (key, raw) = s
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{s}` is not key=value")))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(Error::Config(format!("override `{s}` has an empty key")));
    }
    let raw = raw.trim();
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    Ok((key.to_owned(), value))
}

/// Sets a dotted path such as `params.t` or `axis.count`, creating objects
/// along the way.
pub fn apply_override(root: &mut Value, key: &str, value: Value) -> Result<()> {
    let mut node = root;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if node.is_null() {
            *node = Value::Object(Map::new());
        }
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("override `{key}`: `{}` is not an object", parts[..i].join("."))))?;
        if i + 1 == parts.len() {
            obj.insert((*part).to_owned(), value);
            return Ok(());
        }
        node = obj.entry((*part).to_owned()).or_insert(Value::Null);
    }
    unreachable!("split yields at least one part")
}

impl SweepSpec {
    pub fn from_value(value: Value) -> Result<Self> {
        let raw: RawSweep = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        let scenario = Scenario::from_params(raw.scenario, raw.params.unwrap_or_else(|| Value::Object(Map::new())))?;
        let spec = Self { scenario, axis: raw.axis, execution: raw.execution, out: raw.out };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses a JSON config, then applies `key=value` overrides in order.
    pub fn from_json(text: &str, overrides: &[String]) -> Result<Self> {
        let mut value: Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("config is not valid JSON: {e}")))?;
        for o in overrides {
            let (k, v) = parse_override(o)?;
            apply_override(&mut value, &k, v)?;
        }
        Self::from_value(value)
    }

    fn validate(&self) -> Result<()> {
        let a = &self.axis;
        if a.count < 2 {
            return Err(Error::Config(format!("axis.count must be >= 2, got {}", a.count)));
        }
        if !(a.start.is_finite() && a.stop.is_finite()) {
            return Err(Error::Config("axis bounds must be finite".into()));
        }
        for v in a.values() {
            self.scenario
                .with_param(&a.name, v)?
                .validate()
                .map_err(|e| Error::Config(format!("axis value {} = {v}: {e}", a.name)))?;
        }
        Ok(())
    }

    pub fn columns(&self) -> Vec<String> {
        std::iter::once(self.axis.name.clone())
            .chain(self.scenario.kind().columns().iter().map(|c| (*c).to_owned()))
            .collect()
    }

    /// Parameter record written into the output header.
    pub fn record(&self) -> Value {
        serde_json::json!({
            "scenario": self.scenario.kind().name(),
            "params": self.scenario.params(),
            "axis": self.axis,
        })
    }
}

/// Rows of a finished sweep: swept value followed by the tomogram components.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub record: Value,
}

/// Evaluates every grid point, in parallel when requested; rows come back in
/// grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    let xs = spec.axis.values();
    let rows = par_map(&xs, spec.execution, |&x| {
        let mut row = vec![x];
        row.extend(spec.scenario.with_param(&spec.axis.name, x)?.evaluate()?);
        Ok(row)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { columns: spec.columns(), rows, record: spec.record() })
}

/// Float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# opentomo sweep\n");
        out.push_str("# units: hbar = k_B = 1\n");
        let _ = writeln!(out, "# parameters: {}", self.record);
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Scenario defaults with overrides applied, for single evaluations.
pub fn point_from_overrides(kind: ScenarioKind, overrides: &[(String, Value)]) -> Result<Scenario> {
    let mut params = Value::Object(Map::new());
    for (k, v) in overrides {
        apply_override(&mut params, k, v.clone())?;
    }
    let scenario = Scenario::from_params(kind, params)?;
    scenario.validate()?;
    Ok(scenario)
}
