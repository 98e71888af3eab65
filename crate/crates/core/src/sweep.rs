//! Parameter sweeps over states, frequencies and radii, emitted as rows in
//! request order.

use std::str::FromStr;

use crate::eigensolve::solve_energy;
use crate::error::{Error, Result};
use crate::model::{parse_state_label, EnergyLevel, Radius, StateSpec, System};
use crate::pipeline::{evaluate_all, ComputeSettings, StateReport};
use crate::table::{format_input, format_radius, format_value, Table};

/// Columns of a single-state Fisher report.
pub const FISHER_HEADER: [&str; 14] = [
    "system",
    "label",
    "n_r",
    "l",
    "m",
    "omega",
    "rc",
    "energy",
    "I_r",
    "I_p",
    "I_t",
    "bound_low",
    "bound_high",
    "route_residual",
];

const KEY_HEADER: [&str; 7] = ["system", "label", "n_r", "l", "m", "omega", "rc"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Output {
    Energy,
    IR,
    IP,
    IT,
    Bounds,
    Residual,
    Moments,
}

impl Output {
    /// Everything except the raw moments, matching [`FISHER_HEADER`].
    pub const DEFAULT: [Output; 6] = [
        Output::Energy,
        Output::IR,
        Output::IP,
        Output::IT,
        Output::Bounds,
        Output::Residual,
    ];

    fn columns(&self) -> &'static [&'static str] {
        match self {
            Output::Energy => &["energy"],
            Output::IR => &["I_r"],
            Output::IP => &["I_p"],
            Output::IT => &["I_t"],
            Output::Bounds => &["bound_low", "bound_high"],
            Output::Residual => &["route_residual"],
            Output::Moments => &["r2", "rm2", "p2", "pm2", "v_mean", "t_mean"],
        }
    }

    fn values(&self, level: &EnergyLevel, report: Option<&StateReport>) -> Vec<f64> {
        let Some(r) = report else {
            return vec![level.energy];
        };
        let f = &r.fisher;
        let m = &r.moments;
        match self {
            Output::Energy => vec![level.energy],
            Output::IR => vec![f.i_r],
            Output::IP => vec![f.i_p],
            Output::IT => vec![f.i_t],
            Output::Bounds => vec![f.bound_low, f.bound_high],
            Output::Residual => vec![f.route_residual],
            Output::Moments => vec![m.r2, m.rm2, m.p2, m.pm2, m.v_mean, m.t_mean],
        }
    }
}

impl FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "energy" => Ok(Output::Energy),
            "i_r" | "ir" => Ok(Output::IR),
            "i_p" | "ip" => Ok(Output::IP),
            "i_t" | "it" => Ok(Output::IT),
            "bounds" => Ok(Output::Bounds),
            "residual" | "route_residual" => Ok(Output::Residual),
            "moments" => Ok(Output::Moments),
            other => Err(Error::Parse(format!("unknown output `{other}`"))),
        }
    }
}

/// One requested state: a spectroscopic label and a magnetic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateRequest {
    pub label: String,
    pub m: i32,
}

impl FromStr for StateRequest {
    type Err = Error;

    /// `2p` or `2p:1`.
    fn from_str(s: &str) -> Result<Self> {
        let (label, m) = match s.split_once(':') {
            Some((l, m)) => (
                l.trim(),
                m.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad magnetic number in `{s}`")))?,
            ),
            None => (s.trim(), 0),
        };
        parse_state_label(label)?;
        Ok(Self {
            label: label.to_string(),
            m,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub system: System,
    pub states: Vec<StateRequest>,
    pub radii: Vec<Radius>,
    pub omegas: Vec<f64>,
    pub outputs: Vec<Output>,
}

impl SweepRequest {
    /// Every state spec of the sweep, in row order (state, then omega,
    /// then radius). An unconfined radius in an oscillator sweep yields
    /// the free oscillator.
    pub fn specs(&self) -> Result<Vec<StateSpec>> {
        let mut out = Vec::new();
        for st in &self.states {
            let (n_r, l) = parse_state_label(&st.label)?;
            for &omega in &self.omegas {
                if !(omega > 0.0) || !omega.is_finite() {
                    return Err(Error::InvalidState(format!("omega must be positive, got {omega}")));
                }
                for &radius in &self.radii {
                    let system = match (self.system, radius) {
                        (System::Cho, Radius::Unconfined) => System::Fho,
                        (s, _) => s,
                    };
                    out.push(StateSpec::new(system, n_r, l, st.m, omega, radius)?);
                }
            }
        }
        Ok(out)
    }

    pub fn header(&self) -> Vec<String> {
        KEY_HEADER
            .iter()
            .chain(self.outputs.iter().flat_map(|o| o.columns().iter()))
            .map(|s| s.to_string())
            .collect()
    }

    fn energy_only(&self) -> bool {
        self.outputs.iter().all(|o| *o == Output::Energy)
    }
}

pub fn key_columns(spec: &StateSpec) -> Vec<String> {
    vec![
        spec.system.to_string(),
        spec.label(),
        spec.n_r.to_string(),
        spec.l.to_string(),
        spec.m.to_string(),
        format_input(spec.omega),
        format_radius(spec.radius),
    ]
}

/// A row in the [`FISHER_HEADER`] layout.
pub fn fisher_row(report: &StateReport) -> Vec<String> {
    let mut row = key_columns(&report.spec);
    let f = &report.fisher;
    row.extend(
        [
            report.level.energy,
            f.i_r,
            f.i_p,
            f.i_t,
            f.bound_low,
            f.bound_high,
            f.route_residual,
        ]
        .iter()
        .map(|&v| format_value(v)),
    );
    row
}

/// Validate everything, then compute in parallel; the first failure in
/// row order is reported.
pub fn run_sweep(request: &SweepRequest, settings: &ComputeSettings) -> Result<Table> {
    let specs = request.specs()?;
    let mut table = Table::new(request.header());
    if request.energy_only() {
        use rayon::prelude::*;
        let levels: Vec<Result<EnergyLevel>> = specs.par_iter().map(solve_energy).collect();
        for (spec, level) in specs.iter().zip(levels) {
            let level = level?;
            let mut row = key_columns(spec);
            for o in &request.outputs {
                row.extend(o.values(&level, None).into_iter().map(format_value));
            }
            table.push(row);
        }
        return Ok(table);
    }
    for (spec, report) in specs.iter().zip(evaluate_all(&specs, settings)) {
        let report = report?;
        let mut row = key_columns(spec);
        for o in &request.outputs {
            row.extend(o.values(&report.level, Some(&report)).into_iter().map(format_value));
        }
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(states: &[&str], radii: &[f64]) -> SweepRequest {
        SweepRequest {
            system: System::Cho,
            states: states.iter().map(|s| s.parse().unwrap()).collect(),
            radii: radii.iter().map(|&r| Radius::Finite(r)).collect(),
            omegas: vec![1.0],
            outputs: Output::DEFAULT.to_vec(),
        }
    }

    #[test]
    fn empty_request_is_header_only() {
        let t = run_sweep(&request(&[], &[0.1]), &ComputeSettings::default()).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.header, FISHER_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_m_fails_before_computing() {
        let r = request(&["1s:1"], &[0.1]);
        assert!(matches!(r.specs(), Err(Error::InvalidState(_))));
    }

    #[test]
    fn state_request_parsing() {
        let s: StateRequest = "2p:-1".parse().unwrap();
        assert_eq!((s.label.as_str(), s.m), ("2p", -1));
        assert!("2j".parse::<StateRequest>().is_err());
        assert!("2p:x".parse::<StateRequest>().is_err());
    }

    #[test]
    fn rows_follow_request_order() {
        let t = run_sweep(&request(&["1s"], &[0.5, 0.1]), &ComputeSettings::default()).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0][6], "0.5");
        assert_eq!(t.rows[1][6], "0.1");
        let i_r = t.column("I_r").unwrap();
        let v: f64 = t.rows[1][i_r].parse().unwrap();
        assert!((v / 3947.84176 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn unconfined_oscillator_rows_are_free() {
        let mut r = request(&["1s"], &[]);
        r.radii = vec![Radius::Unconfined];
        let specs = r.specs().unwrap();
        assert_eq!(specs[0].system, System::Fho);
    }
}
