//! Run configuration: JSON in, validated `RunConfig` out.

use crate::error::CliError;
use crate::suites::SUITES;
use freegen::func::SmoothFunction;
use freegen::{Complex64, Measure, Tail};
use serde::{Deserialize, Deserializer, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Density,
    Kernel,
    Flow,
    Generator,
    Qkernel,
    Qdensity,
    Verify,
    Qverify,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailSpec {
    Repeat,
    Finite,
    Semicircle(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExplicitMeasure {
    Atomic { atoms: Vec<(f64, f64)> },
    Grid { lo: f64, hi: f64, values: Vec<f64> },
    Jacobi { alphas: Vec<f64>, betas: Vec<f64>, tail: TailSpec },
}

/// A measure given either by a shorthand such as "semicircle(0,1)" or by
/// an explicit representation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    Named(String),
    Explicit(ExplicitMeasure),
}

impl<'de> Deserialize<'de> for MeasureSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => Ok(MeasureSpec::Named(s)),
            serde_json::Value::Object(_) => serde_json::from_value(v)
                .map(MeasureSpec::Explicit)
                .map_err(|e| D::Error::custom(format!("measure: {e}"))),
            other => Err(D::Error::custom(format!("measure: expected a name or an object, got {other}"))),
        }
    }
}

fn parse_args(name: &str, text: &str, want: usize) -> Result<Vec<f64>, CliError> {
    let args: Vec<f64> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|a| a.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(format!("measure: bad argument in {name}({text}): {e}")))?
    };
    if args.len() != want {
        return Err(CliError::Usage(format!("measure: {name} takes {want} arguments, got {}", args.len())));
    }
    if args.iter().any(|a| !a.is_finite()) {
        return Err(CliError::Usage(format!("measure: {name} arguments must be finite")));
    }
    Ok(args)
}

impl MeasureSpec {
    pub fn to_measure(&self) -> Result<Measure, CliError> {
        let m = match self {
            MeasureSpec::Named(s) => {
                let s = s.trim();
                let (name, args) = match s.find('(') {
                    Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
                    _ => (s, ""),
                };
                match name.trim() {
                    "bernoulli" => {
                        parse_args(name, args, 0)?;
                        Measure::bernoulli()
                    }
                    "dirac" => Measure::dirac(parse_args(name, args, 1)?[0]),
                    "semicircle" => {
                        let a = parse_args(name, args, 2)?;
                        Measure::semicircle(a[0], a[1])?
                    }
                    "arcsine" => Measure::arcsine(parse_args(name, args, 1)?[0])?,
                    "meixner" => {
                        let a = parse_args(name, args, 3)?;
                        Measure::free_meixner(a[0], a[1], a[2])?
                    }
                    other => {
                        return Err(CliError::Usage(format!(
                            "measure: unknown name '{other}' (known: semicircle(mean,var), bernoulli, meixner(b,c,t), dirac(a), arcsine(r))"
                        )))
                    }
                }
            }
            MeasureSpec::Explicit(ExplicitMeasure::Atomic { atoms }) => Measure::atomic(atoms.clone())?,
            MeasureSpec::Explicit(ExplicitMeasure::Grid { lo, hi, values }) => Measure::grid(*lo, *hi, values.clone())?,
            MeasureSpec::Explicit(ExplicitMeasure::Jacobi { alphas, betas, tail }) => {
                let tail = match tail {
                    TailSpec::Repeat => Tail::Repeat,
                    TailSpec::Finite => Tail::Finite,
                    TailSpec::Semicircle(b) => Tail::Semicircle(*b),
                };
                Measure::jacobi(alphas.clone(), betas.clone(), tail)?
            }
        };
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionSpec {
    /// 1/(z - x) with z = pole[0] + i pole[1].
    Resolvent { pole: [f64; 2] },
    Polynomial { coeffs: Vec<f64> },
}

impl Default for FunctionSpec {
    fn default() -> Self {
        FunctionSpec::Resolvent { pole: [0.0, 1.0] }
    }
}

impl FunctionSpec {
    pub fn to_function(&self) -> Result<SmoothFunction, CliError> {
        match self {
            FunctionSpec::Resolvent { pole } => Ok(SmoothFunction::single_resolvent(Complex64::new(pole[0], pole[1]))?),
            FunctionSpec::Polynomial { coeffs } => Ok(SmoothFunction::polynomial(coeffs.clone())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    /// LO:HI:N
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid '{s}' must look like LO:HI:N"));
        }
        let lo = parts[0].trim().parse::<f64>().map_err(|e| format!("grid lo: {e}"))?;
        let hi = parts[1].trim().parse::<f64>().map_err(|e| format!("grid hi: {e}"))?;
        let n = parts[2].trim().parse::<usize>().map_err(|e| format!("grid n: {e}"))?;
        Ok(GridSpec { lo, hi, n })
    }
}

fn default_measure() -> MeasureSpec {
    MeasureSpec::Named("dirac(0)".into())
}

fn default_t() -> f64 {
    1.0
}

fn default_z() -> [f64; 2] {
    [0.0, 1.0]
}

pub const DEFAULT_SEED: u64 = 42;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default = "default_measure")]
    pub measure: MeasureSpec,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub s: f64,
    #[serde(default = "default_t")]
    pub t: f64,
    #[serde(default)]
    pub x: f64,
    #[serde(default)]
    pub q: f64,
    /// Starting point of `flow`, as [re, im].
    #[serde(default = "default_z")]
    pub z: [f64; 2],
    /// Test function of `generator`.
    #[serde(default)]
    pub function: FunctionSpec,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub monotone: bool,
    #[serde(default)]
    pub two_state: bool,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    fn validate(&self) -> Result<(), CliError> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(CliError::Usage(format!("{name} must be finite")))
            }
        };
        for (name, v) in [("alpha", self.alpha), ("s", self.s), ("t", self.t), ("x", self.x), ("q", self.q), ("z", self.z[0]), ("z", self.z[1])] {
            finite(name, v)?;
        }
        if self.s < 0.0 || self.t < 0.0 {
            return Err(CliError::Usage("s and t must be nonnegative".into()));
        }
        if !(self.q > -1.0 && self.q < 1.0) {
            return Err(CliError::Usage(format!("q = {} must lie in (-1, 1)", self.q)));
        }
        if !(self.z[1] > 0.0) {
            return Err(CliError::Usage("z must lie in the upper half-plane".into()));
        }
        if let Some(e) = self.eps {
            finite("eps", e)?;
            if !(e > 0.0) {
                return Err(CliError::Usage("eps must be positive".into()));
            }
        }
        if let Some(g) = self.grid {
            finite("grid.lo", g.lo)?;
            finite("grid.hi", g.hi)?;
            if !(g.lo < g.hi) || g.n < 2 {
                return Err(CliError::Usage("grid needs lo < hi and n >= 2".into()));
            }
        }
        match &self.function {
            FunctionSpec::Resolvent { pole } => {
                finite("function.pole", pole[0])?;
                finite("function.pole", pole[1])?;
            }
            FunctionSpec::Polynomial { coeffs } => {
                for c in coeffs {
                    finite("function.coeffs", *c)?;
                }
            }
        }
        self.function.to_function()?;
        if self.monotone && self.two_state {
            return Err(CliError::Usage("monotone and two_state are exclusive".into()));
        }
        for name in &self.suites {
            if !SUITES.contains(&name.as_str()) {
                return Err(CliError::Usage(format!("unknown suite '{name}'; valid suites: {}", SUITES.join(", "))));
            }
        }
        self.measure.to_measure()?;
        Ok(())
    }
}

/// Parses and validates a JSON configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}
