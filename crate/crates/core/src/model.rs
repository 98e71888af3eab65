//! Problem definition and solver products shared by every stage.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::momentum::AsymptoticTail;
use crate::specfun::{QuadratureRule, SplitParameter};
use crate::wavefun::RadialShape;

/// Spectroscopic letters for l = 0, 1, 2, ... (no `j`).
pub const ORBITAL_LETTERS: [char; 10] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k', 'l', 'm'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    /// Oscillator inside an impenetrable sphere.
    Cho,
    /// Free particle inside an impenetrable sphere.
    Pisb,
    /// Free isotropic oscillator.
    Fho,
}

impl System {
    pub fn as_str(&self) -> &'static str {
        match self {
            System::Cho => "cho",
            System::Pisb => "pisb",
            System::Fho => "fho",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cho" => Ok(System::Cho),
            "pisb" => Ok(System::Pisb),
            "fho" => Ok(System::Fho),
            other => Err(Error::Parse(format!("unknown system `{other}`"))),
        }
    }
}

/// Confinement radius in bohr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Radius {
    Finite(f64),
    Unconfined,
}

impl Radius {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Radius::Finite(r) => Some(r),
            Radius::Unconfined => None,
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Unconfined => f.write_str("inf"),
        }
    }
}

impl FromStr for Radius {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Radius::Unconfined);
        }
        let r: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad confinement radius `{s}`")))?;
        if r.is_infinite() && r > 0.0 {
            return Ok(Radius::Unconfined);
        }
        if !(r > 0.0) {
            return Err(Error::Parse(format!("confinement radius must be > 0, got `{s}`")));
        }
        Ok(Radius::Finite(r))
    }
}

/// Quantum numbers, oscillator frequency, confinement and system.
///
/// The principal number n = 2 n_r + l is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub system: System,
    pub n_r: u32,
    pub l: u32,
    pub m: i32,
    /// Oscillator frequency. Carried but unused for the box.
    pub omega: f64,
    pub radius: Radius,
}

impl StateSpec {
    pub fn new(system: System, n_r: u32, l: u32, m: i32, omega: f64, radius: Radius) -> Result<Self> {
        let spec = Self {
            system,
            n_r,
            l,
            m,
            omega,
            radius,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cho(n_r: u32, l: u32, m: i32, omega: f64, r_c: f64) -> Result<Self> {
        Self::new(System::Cho, n_r, l, m, omega, Radius::Finite(r_c))
    }

    pub fn pisb(n_r: u32, l: u32, m: i32, r_c: f64) -> Result<Self> {
        Self::new(System::Pisb, n_r, l, m, 1.0, Radius::Finite(r_c))
    }

    pub fn fho(n_r: u32, l: u32, m: i32, omega: f64) -> Result<Self> {
        Self::new(System::Fho, n_r, l, m, omega, Radius::Unconfined)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m.unsigned_abs() > self.l {
            return Err(Error::InvalidState(format!("|m| = {} exceeds l = {}", self.m.abs(), self.l)));
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidState(format!("omega must be positive, got {}", self.omega)));
        }
        match (self.system, self.radius) {
            (_, Radius::Finite(r)) if !(r > 0.0 && r.is_finite()) => Err(Error::InvalidState(format!(
                "confinement radius must be positive, got {r}"
            ))),
            (System::Pisb, Radius::Unconfined) => Err(Error::InvalidState(
                "a spherical box needs a finite radius".into(),
            )),
            (System::Fho, Radius::Finite(_)) => Err(Error::InvalidState(
                "the free oscillator is unconfined; use --rc inf".into(),
            )),
            (System::Cho, Radius::Unconfined) => Err(Error::InvalidState(
                "an unconfined oscillator is the fho system".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn r_c(&self) -> Option<f64> {
        self.radius.finite()
    }

    pub fn principal(&self) -> u32 {
        2 * self.n_r + self.l
    }

    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    /// Spectroscopic label such as `2p`; falls back to `n_r=..,l=..` past `m`.
    pub fn label(&self) -> String {
        format_state_label(self.n_r, self.l)
            .unwrap_or_else(|_| format!("n_r={},l={}", self.n_r, self.l))
    }

    pub fn with_m(&self, m: i32) -> Result<Self> {
        Self::new(self.system, self.n_r, self.l, m, self.omega, self.radius)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.system, self.n_r, self.l, self.m, omega, self.radius)
    }

    pub fn with_radius(&self, radius: Radius) -> Result<Self> {
        Self::new(self.system, self.n_r, self.l, self.m, self.omega, radius)
    }
}

/// `"2p"` -> `(1, 1)`: the integer is n_r + 1, the letter gives l.
pub fn parse_state_label(label: &str) -> Result<(u32, u32)> {
    let t = label.trim();
    let letter = t
        .chars()
        .last()
        .ok_or_else(|| Error::Parse("empty state label".into()))?;
    let digits = &t[..t.len() - letter.len_utf8()];
    let n: u32 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("state label `{label}` must start with a positive integer")))?;
    if n == 0 {
        return Err(Error::Parse(format!("state label `{label}`: leading integer must be >= 1")));
    }
    let l = ORBITAL_LETTERS
        .iter()
        .position(|&c| c == letter.to_ascii_lowercase())
        .ok_or_else(|| Error::Parse(format!("state label `{label}`: unknown orbital letter `{letter}`")))?;
    Ok((n - 1, l as u32))
}

pub fn format_state_label(n_r: u32, l: u32) -> Result<String> {
    let letter = ORBITAL_LETTERS
        .get(l as usize)
        .ok_or_else(|| Error::Parse(format!("no spectroscopic letter for l = {l}")))?;
    Ok(format!("{}{}", n_r + 1, letter))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    Position,
    Momentum,
}

/// A normalized radial amplitude sampled on the nodes of a quadrature rule.
///
/// In position space the grid lies in (0, r_c) or (0, r_max); in momentum
/// space in (0, p_max), with the part of momentum space beyond p_max carried
/// by `tail`.
#[derive(Debug, Clone)]
pub struct RadialFunction {
    pub space: Space,
    pub l: u32,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// dR/dx at the grid points.
    pub slopes: Vec<f64>,
    pub rule: QuadratureRule,
    /// |integral of R^2 x^2 - 1|, measured on a rule independent of `rule`
    /// in position space and including the tail in momentum space.
    pub norm_residual: f64,
    /// Dirichlet wall for confined position-space functions.
    pub wall: Option<f64>,
    /// Closed-form evaluator for position-space functions.
    pub shape: Option<RadialShape>,
    /// Large-momentum asymptotics beyond the last panel.
    pub tail: Option<AsymptoticTail>,
}

impl RadialFunction {
    /// Right end of the sampled interval.
    pub fn extent(&self) -> f64 {
        self.rule.b
    }

    /// <x^k> = integral of R^2 x^(k+2), including the asymptotic tail.
    pub fn moment(&self, k: i32) -> f64 {
        let body = self
            .rule
            .integrate_indexed(|i, x| self.values[i] * self.values[i] * x.powi(k + 2));
        body + self.tail.as_ref().map_or(0.0, |t| t.moment(k, self.extent()))
    }

    /// integral of (R'^2 + l(l+1) R^2 / x^2) x^2, the gradient form of the
    /// conjugate second moment.
    pub fn gradient_moment(&self) -> f64 {
        let ll = (self.l * (self.l + 1)) as f64;
        let body = self.rule.integrate_indexed(|i, x| {
            let r = self.values[i];
            let d = self.slopes[i];
            d * d * x * x + ll * r * r
        });
        body + self.tail.as_ref().map_or(0.0, |t| t.gradient_moment(self.extent()))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// A converged eigenvalue with the diagnostics of the solve that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    /// Hartree.
    pub energy: f64,
    /// Final bisection bracket in energy.
    pub bracket: (f64, f64),
    /// Boundary function at the solution, relative to the size of its terms.
    pub residual: f64,
    pub iterations: u32,
    /// First 1F1 parameter refined beyond the energy resolution; present for
    /// oscillator states.
    #[serde(skip)]
    pub kummer_a: Option<SplitParameter>,
}

/// Expectation values of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    /// <r^2> from the position density.
    pub r2: f64,
    /// <r^-2> from the position density.
    pub rm2: f64,
    /// <p^2> from the momentum density.
    pub p2: f64,
    /// <p^-2> from the momentum density.
    pub pm2: f64,
    /// <r^2> recomputed from momentum-space gradients.
    pub r2_momentum: f64,
    /// <v(r)>, zero for the box.
    pub v_mean: f64,
    /// <T> = E - <v>.
    pub t_mean: f64,
}

/// Position, momentum and product Fisher information with cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherReport {
    /// 4<p^2> - 2(2l+1)|m|<r^-2> with <p^2> from the momentum density.
    pub i_r: f64,
    /// 4<r^2> - 2(2l+1)|m|<p^-2> with <r^2> from momentum-space gradients.
    pub i_p: f64,
    pub i_t: f64,
    /// 8E - 8<v> - 2(2l+1)|m|<r^-2>.
    pub i_r_energy_route: f64,
    /// 4<r^2> - 2(2l+1)|m|<p^-2> with <r^2> from the position density.
    pub i_p_energy_route: f64,
    /// 81 / (<r^2><p^2>).
    pub bound_low: f64,
    /// 16 <r^2><p^2>.
    pub bound_high: f64,
    pub route_residual: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_from_the_tables() {
        assert_eq!(parse_state_label("1g").unwrap(), (0, 4));
        assert_eq!(parse_state_label("1s").unwrap(), (0, 0));
        assert_eq!(parse_state_label("2m").unwrap(), (1, 9));
        assert_eq!(parse_state_label("2k").unwrap(), (1, 7));
    }

    #[test]
    fn label_round_trip() {
        for n_r in 0..3 {
            for l in 0..10 {
                let s = format_state_label(n_r, l).unwrap();
                assert_eq!(parse_state_label(&s).unwrap(), (n_r, l), "{s}");
            }
        }
    }

    #[test]
    fn bad_labels() {
        assert!(parse_state_label("1j").is_err());
        assert!(parse_state_label("0s").is_err());
        assert!(parse_state_label("p").is_err());
        assert!(parse_state_label("").is_err());
        assert!(format_state_label(0, 10).is_err());
    }

    #[test]
    fn state_invariants() {
        assert!(StateSpec::cho(0, 1, 2, 1.0, 0.5).is_err());
        assert!(StateSpec::new(System::Pisb, 0, 0, 0, 1.0, Radius::Unconfined).is_err());
        assert!(StateSpec::new(System::Fho, 0, 0, 0, 1.0, Radius::Finite(2.0)).is_err());
        assert!(StateSpec::cho(0, 0, 0, -1.0, 0.5).is_err());
        assert!(StateSpec::cho(0, 0, 0, 1.0, 0.0).is_err());
        let s = StateSpec::cho(1, 3, -2, 1.0, 0.5).unwrap();
        assert_eq!(s.principal(), 5);
        assert_eq!(s.abs_m(), 2);
        assert_eq!(s.label(), "2f");
    }

    #[test]
    fn radius_parsing() {
        assert_eq!("inf".parse::<Radius>().unwrap(), Radius::Unconfined);
        assert_eq!("0.5".parse::<Radius>().unwrap(), Radius::Finite(0.5));
        assert!("-1".parse::<Radius>().is_err());
        assert!("abc".parse::<Radius>().is_err());
    }
}
