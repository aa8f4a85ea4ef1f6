use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A float serialized with 17 significant digits (`null` when non-finite).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

/// `x` formatted with 17 significant digits.
pub fn format_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format_num(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// A parameter value in a report: a label or a number.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Str(String),
    Num(f64),
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Str(s) => serializer.serialize_str(s),
            ParamValue::Num(x) => Num(*x).serialize(serializer),
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Str(s) => f.write_str(s),
            ParamValue::Num(x) => write!(f, "{x}"),
        }
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Str(s.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(s: String) -> Self {
        ParamValue::Str(s)
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Num(x)
    }
}

impl From<usize> for ParamValue {
    fn from(x: usize) -> Self {
        ParamValue::Num(x as f64)
    }
}

/// Error values over a refinement schedule and the fitted log-log slope.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Convergence {
    pub label: String,
    pub levels: Vec<Num>,
    pub values: Vec<Num>,
    pub slope: Num,
}

/// Outcome of one verification check. `pass` holds exactly when
/// `metric <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, ParamValue>,
    pub metric: Num,
    pub tolerance: Num,
    pub pass: bool,
    pub max: Num,
    pub rms: Num,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Num>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub convergence: Vec<Convergence>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, params: BTreeMap<String, ParamValue>) -> Self {
        CheckReport {
            check: check.into(),
            params,
            metric: Num(0.0),
            tolerance: Num(0.0),
            pass: true,
            max: Num(0.0),
            rms: Num(0.0),
            details: BTreeMap::new(),
            convergence: Vec::new(),
        }
    }

    pub fn detail(mut self, key: impl Into<String>, value: f64) -> Self {
        self.details.insert(key.into(), Num(value));
        self
    }

    /// Records pointwise deviations; `metric` becomes their max abs value.
    pub fn with_samples(mut self, samples: &[f64], tolerance: f64) -> Self {
        let (max, rms) = max_rms(samples);
        self.max = Num(max);
        self.rms = Num(rms);
        self.finish(max, tolerance)
    }

    /// Sets the decisive metric and its tolerance.
    pub fn finish(mut self, metric: f64, tolerance: f64) -> Self {
        self.metric = Num(metric);
        self.tolerance = Num(tolerance);
        self.pass = metric <= tolerance;
        self
    }

    /// Re-judges the current metric against `tolerance`.
    pub fn with_tolerance(self, tolerance: f64) -> Self {
        let metric = self.metric.0;
        self.finish(metric, tolerance)
    }

    pub fn metric(&self) -> f64 {
        self.metric.0
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.0
    }

    /// Key used for deterministic ordering of report streams.
    pub fn sort_key(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}|{}", self.check, params.join(";"))
    }

    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                ParamValue::Str(s) => format!("{k}={s}"),
                ParamValue::Num(x) => format!("{k}={}", format_num(*x)),
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// `(max |v|, sqrt(mean v^2))`; NaN entries make the max NaN.
pub fn max_rms(samples: &[f64]) -> (f64, f64) {
    if samples.is_empty() {
        return (0.0, 0.0);
    }
    let mut max: f64 = 0.0;
    let mut sq = 0.0;
    for &s in samples {
        if s.is_nan() {
            max = f64::NAN;
        } else if !max.is_nan() {
            max = max.max(s.abs());
        }
        sq += s * s;
    }
    (max, (sq / samples.len() as f64).sqrt())
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> BTreeMap<String, ParamValue>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<ParamValue>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_metric_within_tolerance() {
        let r = CheckReport::new("x", BTreeMap::new()).with_samples(&[1e-9, -3e-9], 2e-9);
        assert!(!r.pass);
        assert_eq!(r.metric(), 3e-9);
        let r = CheckReport::new("x", BTreeMap::new()).finish(1.0, 1.0);
        assert!(r.pass);
        let r = CheckReport::new("x", BTreeMap::new()).with_samples(&[f64::NAN], 1.0);
        assert!(!r.pass);
    }

    #[test]
    fn slope_of_power_law() {
        let x = [1e-2, 1e-3, 1e-4];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(1.5)).collect();
        assert!((log_log_slope(&x, &y) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn json_numbers_have_seventeen_digits() {
        let r = CheckReport::new(
            "ortho",
            params([("family", ParamValue::from("L1")), ("g", 1.5.into())]),
        )
        .finish(0.1, 1.0);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"metric\":1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"g\":1.5000000000000000e0"), "{s}");
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["metric"].as_f64().unwrap(), 0.1);
        assert_eq!(v["params"]["family"], "L1");
    }
}
