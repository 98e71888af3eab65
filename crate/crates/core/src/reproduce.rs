//! Regenerate the reference energy and Fisher-information tables and the
//! radius sweeps behind the two figures.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::eigensolve::solve_energy;
use crate::error::{Error, Result};
use crate::model::{format_state_label, Radius, StateSpec, System};
use crate::observables::fho_fisher_closed_form;
use crate::pipeline::{evaluate_all, ComputeSettings, StateReport};
use crate::svg::{Plot, Series};
use crate::table::{format_input, format_radius, format_value, Delimiter, Table};

pub const TABLE1_RADII: [f64; 5] = [0.01, 0.05, 0.1, 0.2, 0.5];
pub const TABLE3_RADII: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 7.0];
pub const FIGURE_OMEGA2: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 32.0];
pub const FIGURE_POINTS: usize = 40;
pub const FIGURE_RC_MIN: f64 = 0.1;
pub const FIGURE_RC_MAX: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Table1,
    Table2,
    Table3,
    Table4,
    Fig1,
    Fig2,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Table1,
        Target::Table2,
        Target::Table3,
        Target::Table4,
        Target::Fig1,
        Target::Fig2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Target::Table1 => "table1",
            Target::Table2 => "table2",
            Target::Table3 => "table3",
            Target::Table4 => "table4",
            Target::Fig1 => "fig1",
            Target::Fig2 => "fig2",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown target `{s}`")))
    }
}

/// A named output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

fn radius_column(r: f64) -> String {
    format!("rc_{}", format_input(r))
}

/// 40 radii spaced evenly in log r_c between 0.1 and 20.
pub fn figure_radii() -> Vec<f64> {
    let span = (FIGURE_RC_MAX / FIGURE_RC_MIN).ln();
    (0..FIGURE_POINTS)
        .map(|i| {
            if i + 1 == FIGURE_POINTS {
                FIGURE_RC_MAX
            } else {
                FIGURE_RC_MIN * (span * i as f64 / (FIGURE_POINTS - 1) as f64).exp()
            }
        })
        .collect()
}

/// Evaluate specs (m = 0 variants) in parallel, failing on the first error.
fn evaluate(specs: &[StateSpec], settings: &ComputeSettings) -> Result<Vec<StateReport>> {
    evaluate_all(specs, settings).into_iter().collect()
}

/// Circular-state energies of the oscillator and the box, l = 0..4.
pub fn table1() -> Result<Table> {
    let mut header = vec!["system".to_string(), "l".to_string()];
    header.extend(TABLE1_RADII.iter().map(|&r| radius_column(r)));
    let mut table = Table::new(header);
    for system in [System::Cho, System::Pisb] {
        let specs: Vec<StateSpec> = (0..=4)
            .flat_map(|l| {
                TABLE1_RADII
                    .iter()
                    .map(move |&r| StateSpec::new(system, 0, l, 0, 1.0, Radius::Finite(r)))
            })
            .collect::<Result<_>>()?;
        let levels: Vec<_> = specs.par_iter().map(solve_energy).collect::<Result<_>>()?;
        for l in 0..=4usize {
            let mut row = vec![system.to_string(), l.to_string()];
            row.extend((0..TABLE1_RADII.len()).map(|j| format_value(levels[l * TABLE1_RADII.len() + j].energy)));
            table.push(row);
        }
    }
    Ok(table)
}

/// I_r and I_p of the m = 0 circular states, oscillator and box.
pub fn table2(settings: &ComputeSettings) -> Result<Table> {
    let mut header = vec!["quantity".to_string(), "system".to_string(), "l".to_string()];
    header.extend(TABLE1_RADII.iter().map(|&r| radius_column(r)));
    let mut table = Table::new(header);
    let mut blocks = Vec::new();
    for system in [System::Cho, System::Pisb] {
        let specs: Vec<StateSpec> = (0..=4)
            .flat_map(|l| {
                TABLE1_RADII
                    .iter()
                    .map(move |&r| StateSpec::new(system, 0, l, 0, 1.0, Radius::Finite(r)))
            })
            .collect::<Result<_>>()?;
        blocks.push((system, evaluate(&specs, settings)?));
    }
    for quantity in ["I_r", "I_p"] {
        for (system, reports) in &blocks {
            for l in 0..=4usize {
                let mut row = vec![quantity.to_string(), system.to_string(), l.to_string()];
                row.extend((0..TABLE1_RADII.len()).map(|j| {
                    let f = &reports[l * TABLE1_RADII.len() + j].fisher;
                    format_value(if quantity == "I_r" { f.i_r } else { f.i_p })
                }));
                table.push(row);
            }
        }
    }
    Ok(table)
}

/// Rows of (state, |m|) against TABLE3_RADII plus the free limit.
fn fisher_by_m_table(states: &[(u32, u32)], ms: impl Fn(u32) -> Vec<u32>, key: &str, settings: &ComputeSettings) -> Result<Table> {
    let mut header = vec!["quantity".to_string(), "state".to_string(), key.to_string()];
    header.extend(TABLE3_RADII.iter().map(|&r| radius_column(r)));
    header.push("rc_inf".into());
    let mut table = Table::new(header);

    let specs: Vec<StateSpec> = states
        .iter()
        .flat_map(|&(n_r, l)| TABLE3_RADII.iter().map(move |&r| StateSpec::cho(n_r, l, 0, 1.0, r)))
        .collect::<Result<_>>()?;
    let reports = evaluate(&specs, settings)?;

    for quantity in ["I_r", "I_p"] {
        for (si, &(n_r, l)) in states.iter().enumerate() {
            for abs_m in ms(l) {
                let label = format_state_label(n_r, l)?;
                let mut row = vec![
                    quantity.to_string(),
                    label,
                    if key == "l" { l.to_string() } else { abs_m.to_string() },
                ];
                for j in 0..TABLE3_RADII.len() {
                    let r = reports[si * TABLE3_RADII.len() + j].for_m(abs_m as i32)?;
                    row.push(format_value(if quantity == "I_r" { r.fisher.i_r } else { r.fisher.i_p }));
                }
                let (ir, ip) = fho_fisher_closed_form(n_r, l, abs_m as i32, 1.0)?;
                row.push(format_value(if quantity == "I_r" { ir } else { ip }));
                table.push(row);
            }
        }
    }
    Ok(table)
}

/// 1p, 1d, 1f with every |m|.
pub fn table3(settings: &ComputeSettings) -> Result<Table> {
    fisher_by_m_table(&[(0, 1), (0, 2), (0, 3)], |l| (0..=l).collect(), "abs_m", settings)
}

/// 2p through 2m with |m| = 1.
pub fn table4(settings: &ComputeSettings) -> Result<Table> {
    let states: Vec<(u32, u32)> = (1..=9).map(|l| (1, l)).collect();
    fisher_by_m_table(&states, |_| vec![1], "l", settings)
}

/// One sample of a figure series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePoint {
    pub omega2: f64,
    pub abs_m: u32,
    pub radius: Radius,
    pub i_r: f64,
    pub i_p: f64,
}

fn figure_data(n_r: u32, l: u32, omega2s: &[f64], ms: &[u32], settings: &ComputeSettings) -> Result<Vec<FigurePoint>> {
    let radii = figure_radii();
    let mut specs = Vec::new();
    for &w2 in omega2s {
        for &r in &radii {
            specs.push(StateSpec::cho(n_r, l, 0, w2.sqrt(), r)?);
        }
    }
    let reports = evaluate(&specs, settings)?;
    let mut out = Vec::new();
    for (wi, &w2) in omega2s.iter().enumerate() {
        for &m in ms {
            for (ri, &r) in radii.iter().enumerate() {
                let rep = reports[wi * radii.len() + ri].for_m(m as i32)?;
                out.push(FigurePoint {
                    omega2: w2,
                    abs_m: m,
                    radius: Radius::Finite(r),
                    i_r: rep.fisher.i_r,
                    i_p: rep.fisher.i_p,
                });
            }
            let (i_r, i_p) = fho_fisher_closed_form(n_r, l, m as i32, w2.sqrt())?;
            out.push(FigurePoint {
                omega2: w2,
                abs_m: m,
                radius: Radius::Unconfined,
                i_r,
                i_p,
            });
        }
    }
    Ok(out)
}

/// 1g at omega = 1, every |m|.
pub fn fig1_data(settings: &ComputeSettings) -> Result<Vec<FigurePoint>> {
    figure_data(0, 4, &[1.0], &[0, 1, 2, 3, 4], settings)
}

/// 1p at five frequencies, |m| = 0 and 1.
pub fn fig2_data(settings: &ComputeSettings) -> Result<Vec<FigurePoint>> {
    figure_data(0, 1, &FIGURE_OMEGA2, &[0, 1], settings)
}

fn figure_table(state: &str, points: &[FigurePoint]) -> Table {
    let mut t = Table::new(["state", "omega2", "abs_m", "rc", "I_r", "I_p"]);
    for p in points {
        t.push(vec![
            state.to_string(),
            format_input(p.omega2),
            p.abs_m.to_string(),
            format_radius(p.radius),
            format_value(p.i_r),
            format_value(p.i_p),
        ]);
    }
    t
}

fn figure_plot(title: String, y_label: &str, points: &[FigurePoint], pick: fn(&FigurePoint) -> f64, label: fn(&FigurePoint) -> String) -> Plot {
    let mut series: Vec<Series> = Vec::new();
    for p in points {
        let Radius::Finite(r) = p.radius else { continue };
        let name = label(p);
        match series.iter_mut().find(|s| s.label == name) {
            Some(s) => s.points.push((r, pick(p))),
            None => series.push(Series {
                label: name,
                points: vec![(r, pick(p))],
            }),
        }
    }
    Plot {
        title,
        x_label: "r_c (bohr)".into(),
        y_label: y_label.into(),
        log_x: true,
        log_y: true,
        series,
    }
}

/// Files for one target.
pub fn reproduce(target: Target, settings: &ComputeSettings, delimiter: Delimiter) -> Result<Vec<Artifact>> {
    let ext = delimiter.extension();
    let table = |t: Table| {
        vec![Artifact {
            file_name: format!("{target}.{ext}"),
            contents: t.render(delimiter),
        }]
    };
    match target {
        Target::Table1 => Ok(table(table1()?)),
        Target::Table2 => Ok(table(table2(settings)?)),
        Target::Table3 => Ok(table(table3(settings)?)),
        Target::Table4 => Ok(table(table4(settings)?)),
        Target::Fig1 => {
            let pts = fig1_data(settings)?;
            let m_label = |p: &FigurePoint| format!("|m| = {}", p.abs_m);
            Ok(vec![
                Artifact {
                    file_name: format!("fig1.{ext}"),
                    contents: figure_table("1g", &pts).render(delimiter),
                },
                Artifact {
                    file_name: "fig1_I_r.svg".into(),
                    contents: figure_plot("I_r of 1g".into(), "I_r", &pts, |p| p.i_r, m_label).render(),
                },
                Artifact {
                    file_name: "fig1_I_p.svg".into(),
                    contents: figure_plot("I_p of 1g".into(), "I_p", &pts, |p| p.i_p, m_label).render(),
                },
            ])
        }
        Target::Fig2 => {
            let pts = fig2_data(settings)?;
            let w_label = |p: &FigurePoint| format!("omega^2 = {}", format_input(p.omega2));
            let mut out = vec![Artifact {
                file_name: format!("fig2.{ext}"),
                contents: figure_table("1p", &pts).render(delimiter),
            }];
            for m in [0u32, 1] {
                let sub: Vec<FigurePoint> = pts.iter().copied().filter(|p| p.abs_m == m).collect();
                out.push(Artifact {
                    file_name: format!("fig2_I_r_m{m}.svg"),
                    contents: figure_plot(format!("I_r of 1p, |m| = {m}"), "I_r", &sub, |p| p.i_r, w_label).render(),
                });
                out.push(Artifact {
                    file_name: format!("fig2_I_p_m{m}.svg"),
                    contents: figure_plot(format!("I_p of 1p, |m| = {m}"), "I_p", &sub, |p| p.i_p, w_label).render(),
                });
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_span_the_range() {
        let r = figure_radii();
        assert_eq!(r.len(), 40);
        assert!((r[0] - 0.1).abs() < 1e-15);
        assert_eq!(r[39], 20.0);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn targets_parse() {
        for t in Target::ALL {
            assert_eq!(t.as_str().parse::<Target>().unwrap(), t);
        }
        assert!("table5".parse::<Target>().is_err());
    }

    #[test]
    fn table1_layout() {
        let t = table1().unwrap();
        assert_eq!(t.rows.len(), 10);
        assert_eq!(t.header[2], "rc_0.01");
        assert_eq!(t.rows[0][0], "cho");
        assert_eq!(t.rows[5][0], "pisb");
        let v: f64 = t.rows[0][2].parse().unwrap();
        assert!((v / 49348.02202373 - 1.0).abs() < 1e-8);
    }
}
