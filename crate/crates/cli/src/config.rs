//! JSON experiment description and its translation into library problems.

use std::path::{Path, PathBuf};

use fdde::solvers::DEFAULT_STEP;
use fdde::{ForcingFn, HistoryFn, LinearProblem, NonlinearProblem, OperatorKind, Order, SolverMode};
use serde::{Deserialize, Serialize};

use crate::error::{config_err, CliError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub tau: f64,
    pub y0: f64,
    /// `"constant"`, `"ramp"` or a path to a two-column `t,phi` CSV.
    pub history: String,
    /// `"zero"`, `"const(c)"`, `"cos(A,w)"`, `"sin(A,w)"` or a CSV path.
    #[serde(default = "default_forcing")]
    pub forcing: String,
    /// `"linear"` or `"logistic(a,b)"` for `g = -a y (b - y(t - tau))`.
    #[serde(default = "default_rhs")]
    pub rhs: String,
    #[serde(default = "default_operator")]
    pub operator: String,
    #[serde(default = "default_step")]
    pub h: f64,
    #[serde(rename = "T")]
    pub t_end: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// `"explicit"` (default) or `"fixed-point"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// `"auto"` (default), `"pi"`, `"gl"`, `"pi-corrective"` or `"exact"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
}

fn default_forcing() -> String {
    "zero".into()
}

fn default_rhs() -> String {
    "linear".into()
}

fn default_operator() -> String {
    "caputo".into()
}

fn default_step() -> f64 {
    DEFAULT_STEP
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rhs {
    Linear {
        lambda: f64,
    },
    /// `g = -a y (b - y_d)`.
    Logistic {
        a: f64,
        b: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Pi,
    Gl,
    PiCorrective,
    Exact,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "auto" => Ok(Method::Auto),
            "pi" => Ok(Method::Pi),
            "gl" => Ok(Method::Gl),
            "pi-corrective" => Ok(Method::PiCorrective),
            "exact" => Ok(Method::Exact),
            _ => config_err(format!("unknown method '{s}' (auto, pi, gl, pi-corrective, exact)")),
        }
    }
}

/// Command-line values that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub alpha: Option<f64>,
    pub operator: Option<String>,
    pub method: Option<String>,
}

/// A validated configuration plus the directory its relative paths refer to.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    base_dir: PathBuf,
    pub alpha: Order,
    pub operator: OperatorKind,
    pub rhs: Rhs,
    pub mode: SolverMode,
    pub method: Method,
    history: HistoryFn,
    forcing: ForcingFn,
}

pub fn parse_operator(s: &str) -> Result<OperatorKind, CliError> {
    match s {
        "caputo" => Ok(OperatorKind::Caputo),
        "phitau" => Ok(OperatorKind::PhiTau),
        _ => config_err(format!("unknown operator '{s}' (caputo, phitau)")),
    }
}

fn call_args<'a>(s: &'a str, name: &str) -> Option<Vec<&'a str>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

fn numbers(args: &[&str], n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    if args.len() != n {
        return config_err(format!("{what} expects {n} argument(s), got {}", args.len()));
    }
    args.iter()
        .map(|a| match a.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => config_err(format!("{what}: '{a}' is not a finite number")),
        })
        .collect()
}

pub fn parse_rhs(s: &str, lambda: Option<f64>) -> Result<Rhs, CliError> {
    if s == "linear" {
        return match lambda {
            Some(l) if l.is_finite() => Ok(Rhs::Linear { lambda: l }),
            Some(l) => config_err(format!("lambda must be finite, got {l}")),
            None => config_err("rhs 'linear' requires 'lambda'"),
        };
    }
    if let Some(args) = call_args(s, "logistic") {
        let v = numbers(&args, 2, "logistic(a,b)")?;
        return Ok(Rhs::Logistic { a: v[0], b: v[1] });
    }
    config_err(format!("unknown rhs '{s}' (linear, logistic(a,b))"))
}

impl Experiment {
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Experiment::new(config, base, overrides)
    }

    pub fn new(mut config: ExperimentConfig, base_dir: PathBuf, o: &Overrides) -> Result<Self, CliError> {
        if let Some(h) = o.h {
            config.h = h;
        }
        if let Some(t) = o.t_end {
            config.t_end = t;
        }
        if let Some(a) = o.alpha {
            config.alpha = a;
        }
        if let Some(op) = &o.operator {
            config.operator = op.clone();
        }
        if let Some(m) = &o.method {
            config.method = Some(m.clone());
        }

        let alpha = Order::new(config.alpha).map_err(CliError::from)?;
        if !(config.tau > 0.0) || !config.tau.is_finite() {
            return config_err(format!("tau must be positive, got {}", config.tau));
        }
        if !config.y0.is_finite() {
            return config_err("y0 must be finite");
        }
        if !(config.h > 0.0) || !config.h.is_finite() {
            return config_err(format!("h must be positive, got {}", config.h));
        }
        if !(config.t_end >= 0.0) || !config.t_end.is_finite() {
            return config_err(format!("T must be non-negative, got {}", config.t_end));
        }
        let operator = parse_operator(&config.operator)?;
        let rhs = parse_rhs(&config.rhs, config.lambda)?;
        let mode = match config.mode.as_deref() {
            None | Some("explicit") => SolverMode::Explicit,
            Some("fixed-point") => SolverMode::DEFAULT_FIXED_POINT,
            Some(m) => return config_err(format!("unknown mode '{m}' (explicit, fixed-point)")),
        };
        let method = Method::parse(config.method.as_deref().unwrap_or("auto"))?;

        let mut exp = Experiment {
            config,
            base_dir,
            alpha,
            operator,
            rhs,
            mode,
            method,
            history: HistoryFn::Constant { y0: 0.0 },
            forcing: ForcingFn::Zero,
        };
        exp.history = exp.parse_history()?;
        exp.forcing = exp.parse_forcing()?;
        if matches!(exp.rhs, Rhs::Logistic { .. }) && !exp.forcing.is_zero() {
            return config_err("forcing only applies to the linear rhs");
        }
        Ok(exp)
    }

    fn resolve(&self, p: &str) -> PathBuf {
        let path = Path::new(p);
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    fn parse_history(&self) -> Result<HistoryFn, CliError> {
        let c = &self.config;
        let h = match c.history.as_str() {
            "constant" => HistoryFn::constant(c.y0)?,
            "ramp" => HistoryFn::ramp(c.y0, c.tau)?,
            path => {
                let h = HistoryFn::from_csv(self.resolve(path), c.tau)?;
                if (h.y0() - c.y0).abs() > 1e-12 * c.y0.abs().max(1.0) {
                    return config_err(format!("history file ends at phi(0) = {}, but y0 = {}", h.y0(), c.y0));
                }
                h
            }
        };
        Ok(h)
    }

    fn parse_forcing(&self) -> Result<ForcingFn, CliError> {
        let s = self.config.forcing.as_str();
        if s == "zero" {
            return Ok(ForcingFn::Zero);
        }
        if let Some(args) = call_args(s, "const") {
            return Ok(ForcingFn::Constant(numbers(&args, 1, "const(c)")?[0]));
        }
        if let Some(args) = call_args(s, "cos") {
            let v = numbers(&args, 2, "cos(A,w)")?;
            return Ok(ForcingFn::Cosine {
                amplitude: v[0],
                omega: v[1],
            });
        }
        if let Some(args) = call_args(s, "sin") {
            let v = numbers(&args, 2, "sin(A,w)")?;
            return Ok(ForcingFn::Sine {
                amplitude: v[0],
                omega: v[1],
            });
        }
        Ok(ForcingFn::from_csv(self.resolve(s))?)
    }

    pub fn history(&self) -> &HistoryFn {
        &self.history
    }

    pub fn forcing(&self) -> &ForcingFn {
        &self.forcing
    }

    pub fn linear_problem(&self) -> Result<LinearProblem, CliError> {
        match self.rhs {
            Rhs::Linear { lambda } => Ok(LinearProblem::new(
                self.alpha,
                lambda,
                self.config.tau,
                self.history.clone(),
                self.forcing.clone(),
            )?),
            Rhs::Logistic { .. } => config_err("this command needs the linear rhs"),
        }
    }

    pub fn nonlinear_problem(&self) -> Result<NonlinearProblem, CliError> {
        match self.rhs {
            Rhs::Linear { .. } => Ok(self.linear_problem()?.to_nonlinear()),
            Rhs::Logistic { a, b } => Ok(NonlinearProblem::new(
                self.alpha,
                self.config.tau,
                self.history.clone(),
                move |_, y, yd| -a * y * (b - yd),
            )?),
        }
    }

    /// Has a closed-form solution for the selected operator.
    pub fn has_exact(&self) -> bool {
        matches!(self.rhs, Rhs::Linear { .. })
            && matches!(self.history, HistoryFn::Constant { .. } | HistoryFn::LinearRamp { .. })
    }

    pub fn h(&self) -> f64 {
        self.config.h
    }

    pub fn t_end(&self) -> f64 {
        self.config.t_end
    }

    /// Output grid `0, h, 2h, ...` up to `T` (a single node when `T = 0`).
    pub fn grid(&self) -> Vec<f64> {
        if self.config.t_end == 0.0 {
            return vec![0.0];
        }
        let steps = fdde::SolverConfig::new(fdde::Scheme::PiRect, self.config.h, self.config.t_end)
            .map(|c| c.steps())
            .unwrap_or(0);
        (0..=steps).map(|n| n as f64 * self.config.h).collect()
    }
}
