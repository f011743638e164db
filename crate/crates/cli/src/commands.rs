//! The computations behind each subcommand, returning tables ready for CSV.

use std::io::Write;

use fdde::exact::{corrective_response, exact_solution, solution_difference};
use fdde::io::{format_float, write_table};
use fdde::solvers::{solve, solve_dde_euler_ref, solve_phitau_via_corrective};
use fdde::{HistoryFn, OperatorKind, Scheme, SolverConfig, Trajectory};

use crate::config::{Experiment, Method};
use crate::error::{config_err, CliError};

/// Step sizes used by `converge` when none are given.
pub const DEFAULT_H_LIST: [f64; 5] = [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn write(&self, out: &mut dyn Write) -> Result<(), CliError> {
        write_table(out, &self.header, self.rows.iter().cloned()).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

fn trajectory_table(tr: &Trajectory) -> Table {
    Table {
        header: vec!["t", "y"],
        rows: tr.points().map(|(t, y)| vec![t, y]).collect(),
    }
}

/// Grid evaluation of the closed-form solution.
pub fn exact(exp: &Experiment) -> Result<Table, CliError> {
    let p = exp.linear_problem()?;
    if matches!(p.history(), HistoryFn::Sampled { .. }) {
        return config_err("closed forms exist only for constant and ramp histories");
    }
    let rows = exp
        .grid()
        .into_iter()
        .map(|t| Ok(vec![t, exact_solution(&p, exp.operator, t)?]))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Table {
        header: vec!["t", "y"],
        rows,
    })
}

fn solver_config(exp: &Experiment, scheme: Scheme, h: f64) -> Result<SolverConfig, CliError> {
    if exp.t_end() <= 0.0 {
        return config_err("solvers need T > 0");
    }
    Ok(SolverConfig::with_mode(scheme, exp.mode, h, exp.t_end())?)
}

fn resolved_method(exp: &Experiment) -> Method {
    match (exp.method, exp.operator) {
        (Method::Auto, OperatorKind::Caputo) => Method::Pi,
        (Method::Auto, OperatorKind::PhiTau) => Method::Gl,
        (m, _) => m,
    }
}

/// Numerical trajectory at step `h` with the configured method.
pub fn trajectory(exp: &Experiment, h: f64) -> Result<Trajectory, CliError> {
    let p = exp.nonlinear_problem()?;
    let tr = match resolved_method(exp) {
        Method::Pi => solve(&p, &solver_config(exp, Scheme::PiRect, h)?)?,
        Method::Gl => solve(&p, &solver_config(exp, Scheme::GlPhiTau, h)?)?,
        Method::PiCorrective => solve_phitau_via_corrective(&p, &solver_config(exp, Scheme::PiRect, h)?)?,
        Method::Exact | Method::Auto => return config_err("method 'exact' has no trajectory; use the exact command"),
    };
    Ok(tr)
}

pub fn solve_table(exp: &Experiment) -> Result<Table, CliError> {
    if resolved_method(exp) == Method::Exact {
        return exact(exp);
    }
    Ok(trajectory_table(&trajectory(exp, exp.h())?))
}

/// Caputo and history-aware trajectories side by side.
pub fn pair(exp: &Experiment) -> Result<Table, CliError> {
    let p = exp.nonlinear_problem()?;
    let a = solve(&p, &solver_config(exp, Scheme::PiRect, exp.h())?)?;
    let b = solve(&p, &solver_config(exp, Scheme::GlPhiTau, exp.h())?)?;
    let rows = a
        .points()
        .zip(b.values())
        .map(|((t, y), &yh)| vec![t, y, yh, yh - y])
        .collect();
    Ok(Table {
        header: vec!["t", "y_caputo", "y_phitau", "diff"],
        rows,
    })
}

/// Classical delay equation (order one) with the same right-hand side.
pub fn euler(exp: &Experiment) -> Result<Table, CliError> {
    if exp.t_end() <= 0.0 {
        return config_err("solvers need T > 0");
    }
    let p = exp.nonlinear_problem()?;
    Ok(trajectory_table(&solve_dde_euler_ref(&p, exp.h(), exp.t_end())?))
}

/// Both closed-form ramp solutions, their difference and the generalized
/// integral of the corrective term; also returns the largest mismatch
/// between the last two.
pub fn compare(exp: &Experiment) -> Result<(Table, f64), CliError> {
    let p = exp.linear_problem()?;
    if !matches!(p.history(), HistoryFn::LinearRamp { .. }) {
        return config_err("compare needs the ramp history");
    }
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for t in exp.grid() {
        let y = exact_solution(&p, OperatorKind::Caputo, t)?;
        let yh = exact_solution(&p, OperatorKind::PhiTau, t)?;
        let diff = if t > 0.0 { solution_difference(&p, t)? } else { 0.0 };
        let j = corrective_response(&p, t)?;
        worst = worst.max((diff - j).abs());
        rows.push(vec![t, y, yh, diff, j]);
    }
    Ok((
        Table {
            header: vec!["t", "y", "y_hat", "diff", "j_corrective"],
            rows,
        },
        worst,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub max_error: f64,
    /// `None` for the first row or when both errors vanish.
    pub observed_order: Option<f64>,
}

/// Errors against the closed form when one exists, otherwise against a
/// solution with a quarter of the smallest step.
pub fn converge(exp: &Experiment, h_list: &[f64]) -> Result<(Vec<ConvergenceRow>, &'static str), CliError> {
    if h_list.len() < 2 {
        return config_err("converge needs at least two step sizes");
    }
    if h_list.iter().any(|h| !(*h > 0.0) || !h.is_finite()) {
        return config_err("step sizes must be positive");
    }
    let method = resolved_method(exp);
    let exact_problem = if exp.has_exact() {
        Some(exp.linear_problem()?)
    } else {
        None
    };
    if method == Method::Exact && exact_problem.is_none() {
        return config_err("method 'exact' needs a linear problem with constant or ramp history");
    }
    let fine: Option<Trajectory> = match &exact_problem {
        Some(_) => None,
        None => {
            let h_min = h_list.iter().cloned().fold(f64::INFINITY, f64::min);
            Some(trajectory(exp, h_min / 4.0)?)
        }
    };
    let reference = |t: f64| -> Result<f64, CliError> {
        match (&exact_problem, &fine) {
            (Some(p), _) => Ok(exact_solution(p, exp.operator, t)?),
            (None, Some(tr)) => Ok(tr.value_at(t)?),
            _ => unreachable!(),
        }
    };

    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &h in h_list {
        let max_error = if method == Method::Exact {
            0.0
        } else {
            let tr = trajectory(exp, h)?;
            let mut e: f64 = 0.0;
            for (t, y) in tr.points() {
                e = e.max((y - reference(t)?).abs());
            }
            e
        };
        let observed_order = rows.last().and_then(|prev: &ConvergenceRow| {
            if prev.max_error > 0.0 && max_error > 0.0 {
                Some((prev.max_error / max_error).ln() / (prev.h / h).ln())
            } else {
                None
            }
        });
        rows.push(ConvergenceRow {
            h,
            max_error,
            observed_order,
        });
    }
    let kind = if exact_problem.is_some() { "exact" } else { "self" };
    Ok((rows, kind))
}

pub fn write_convergence(out: &mut dyn Write, rows: &[ConvergenceRow]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Output(e.to_string());
    writeln!(out, "h,max_error,observed_order").map_err(io)?;
    for r in rows {
        let order = r.observed_order.map(format_float).unwrap_or_default();
        writeln!(out, "{},{},{}", format_float(r.h), format_float(r.max_error), order).map_err(io)?;
    }
    Ok(())
}
