//! Normalized position-space radial functions on composite Gauss-Legendre
//! grids.

use crate::error::{Error, Result};
use crate::model::{EnergyLevel, RadialFunction, Space, StateSpec, System};
use crate::specfun::{
    composite_gauss_legendre, derivative_from_sequence, kummer_series, spherical_bessel_sequence,
    QuadratureRule, SplitParameter,
};

/// Default Gauss-Legendre order per panel.
pub const DEFAULT_ORDER: usize = 128;

/// Default number of equal panels over the radial interval.
pub const DEFAULT_PANELS: usize = 4;

/// Samples below this fraction of max|R| carry no sign for node counting.
const NODE_FLOOR: f64 = 1e-10;

/// Radial cutoff for unconfined states: e^{-omega r^2} < 1e-34 beyond it.
pub fn unconfined_extent(omega: f64) -> f64 {
    (80.0 / omega).sqrt()
}

/// Closed-form radial function, evaluable anywhere in its domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialShape {
    /// scale * r^l 1F1(a; l + 3/2; omega r^2) e^{-omega r^2 / 2}
    Kummer {
        l: u32,
        omega: f64,
        a: SplitParameter,
        scale: f64,
    },
    /// scale * j_l(k r)
    Bessel { l: u32, k: f64, scale: f64 },
}

impl RadialShape {
    /// Unnormalized shape for a solved state.
    pub fn for_state(spec: &StateSpec, level: &EnergyLevel) -> Result<Self> {
        match spec.system {
            System::Pisb => Ok(RadialShape::Bessel {
                l: spec.l,
                k: (2.0 * level.energy).sqrt(),
                scale: 1.0,
            }),
            System::Cho | System::Fho => {
                let a = level.kummer_a.unwrap_or_else(|| {
                    SplitParameter::new(0.5 * (spec.l as f64 + 1.5 - level.energy / spec.omega))
                });
                Ok(RadialShape::Kummer {
                    l: spec.l,
                    omega: spec.omega,
                    a,
                    scale: 1.0,
                })
            }
        }
    }

    pub fn l(&self) -> u32 {
        match *self {
            RadialShape::Kummer { l, .. } | RadialShape::Bessel { l, .. } => l,
        }
    }

    pub fn scaled(self, by: f64) -> Self {
        match self {
            RadialShape::Kummer { l, omega, a, scale } => RadialShape::Kummer {
                l,
                omega,
                a,
                scale: scale * by,
            },
            RadialShape::Bessel { l, k, scale } => RadialShape::Bessel {
                l,
                k,
                scale: scale * by,
            },
        }
    }

    /// (R(r), dR/dr) for r > 0.
    pub fn eval(&self, r: f64) -> Result<(f64, f64)> {
        match *self {
            RadialShape::Kummer { l, omega, a, scale } => {
                let b = l as f64 + 1.5;
                let x = omega * r * r;
                let m0 = kummer_series(a, b, x)?;
                let m1 = kummer_series(a.shifted(1), b + 1.0, x)?;
                let ln_f = l as f64 * r.ln() - 0.5 * x + scale.abs().ln();
                let sign = scale.signum();
                let v = m0.scaled_value(ln_f);
                // M'(x) = (a/b) 1F1(a + 1; b + 1; x)
                // The prefactor goes into the exponent: a can be exactly 0
                // while M(a+1) e^{-x/2} overflows.
                let av = a.value();
                let dm = if av == 0.0 {
                    0.0
                } else {
                    av.signum() * m1.scaled_value(ln_f + (av.abs() / b).ln())
                };
                let d = (l as f64 / r - omega * r) * v + 2.0 * omega * r * dm;
                Ok((sign * v, sign * d))
            }
            RadialShape::Bessel { l, k, scale } => {
                let mut seq = vec![0.0; l as usize + 2];
                spherical_bessel_sequence(k * r, &mut seq);
                Ok((
                    scale * seq[l as usize],
                    scale * k * derivative_from_sequence(l as usize, &seq),
                ))
            }
        }
    }

    /// Values and slopes at every node of `rule`.
    pub fn sample(&self, rule: &QuadratureRule) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut values = Vec::with_capacity(rule.len());
        let mut slopes = Vec::with_capacity(rule.len());
        for &r in &rule.nodes {
            let (v, d) = self.eval(r)?;
            values.push(v);
            slopes.push(d);
        }
        Ok((values, slopes))
    }
}

/// Normalized R(r) on `DEFAULT_PANELS` panels of the given order.
pub fn build_position_wavefunction(spec: &StateSpec, level: &EnergyLevel, order: usize) -> Result<RadialFunction> {
    build_position_wavefunction_with(spec, level, order, DEFAULT_PANELS)
}

pub fn build_position_wavefunction_with(
    spec: &StateSpec,
    level: &EnergyLevel,
    order: usize,
    panels: usize,
) -> Result<RadialFunction> {
    let wall = spec.r_c();
    let extent = wall.unwrap_or_else(|| unconfined_extent(spec.omega));
    let rule = composite_gauss_legendre(order, 0.0, extent, panels)?;
    let raw = RadialShape::for_state(spec, level)?;
    let (values, _) = raw.sample(&rule)?;
    let norm2 = rule.integrate_indexed(|i, r| values[i] * values[i] * r * r);
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::Normalization(format!(
            "integral of R^2 r^2 is {norm2} for {}",
            spec.label()
        )));
    }
    let shape = raw.scaled(1.0 / norm2.sqrt());
    let (values, slopes) = shape.sample(&rule)?;

    let check = composite_gauss_legendre(order, 0.0, extent, panels + 1)?;
    let (cv, _) = shape.sample(&check)?;
    let norm_residual = (check.integrate_indexed(|i, r| cv[i] * cv[i] * r * r) - 1.0).abs();

    Ok(RadialFunction {
        space: Space::Position,
        l: spec.l,
        grid: rule.nodes.clone(),
        values,
        slopes,
        rule,
        norm_residual,
        wall,
        shape: Some(shape),
        tail: None,
    })
}

/// R at the Dirichlet wall relative to max|R| on the grid.
pub fn wall_ratio(f: &RadialFunction) -> Option<f64> {
    let wall = f.wall?;
    let shape = f.shape?;
    let (v, _) = shape.eval(wall).ok()?;
    Some(v.abs() / f.max_abs())
}

/// Strict sign changes of R inside the interval, ignoring negligible samples.
pub fn count_interior_nodes(f: &RadialFunction) -> usize {
    let floor = NODE_FLOOR * f.max_abs();
    let mut last = 0.0_f64;
    let mut nodes = 0;
    for &v in &f.values {
        if v.abs() <= floor {
            continue;
        }
        let s = v.signum();
        if last != 0.0 && s != last {
            nodes += 1;
        }
        last = s;
    }
    nodes
}
