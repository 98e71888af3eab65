//! Energy eigenvalues for the three systems.
//!
//! Oscillator levels inside the sphere are roots of the boundary function
//! E -> 1F1(a(E); l + 3/2; omega r_c^2). A sign-change scan brackets the
//! (n_r + 1)-th root, bisection in E narrows it to 1e-12 relative, and a
//! second bisection in the offset of `a` from its nearest integer finishes
//! the job. The second stage matters for wide spheres, where the wall
//! condition pins `a` to a nonpositive integer far more tightly than an
//! energy in double precision can express.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{EnergyLevel, StateSpec, System};
use crate::specfun::{bessel_zero, kummer_series, ScaledSum, SplitParameter};

/// Relative width of the final energy bracket.
pub const ENERGY_REL_TOL: f64 = 1e-12;

const SCAN_START_SHRINK: f64 = 1e-9;
const MAX_BISECTIONS: u32 = 400;
const MAX_POLISH_STEPS: u32 = 5000;

/// E -> 1F1(1/2 (l + 3/2 - E/omega); l + 3/2; omega r_c^2) for one state.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryFunction {
    pub l: u32,
    pub omega: f64,
    pub r_c: f64,
    /// l + 3/2.
    pub b: f64,
    /// omega r_c^2.
    pub x: f64,
}

impl BoundaryFunction {
    pub fn new(spec: &StateSpec) -> Result<Self> {
        let r_c = spec.r_c().ok_or_else(|| {
            Error::InvalidState("the boundary function needs a finite radius".into())
        })?;
        Ok(Self {
            l: spec.l,
            omega: spec.omega,
            r_c,
            b: spec.l as f64 + 1.5,
            x: spec.omega * r_c * r_c,
        })
    }

    pub fn parameter(&self, energy: f64) -> f64 {
        0.5 * (self.b - energy / self.omega)
    }

    pub fn energy_of(&self, a: SplitParameter) -> f64 {
        self.omega * (self.b - 2.0 * a.integer as f64 - 2.0 * a.offset)
    }

    pub fn evaluate(&self, energy: f64) -> Result<ScaledSum> {
        kummer_series(SplitParameter::new(self.parameter(energy)), self.b, self.x)
    }

    pub fn evaluate_split(&self, a: SplitParameter) -> Result<ScaledSum> {
        kummer_series(a, self.b, self.x)
    }
}

/// Dispatch on the system.
pub fn solve_energy(spec: &StateSpec) -> Result<EnergyLevel> {
    match spec.system {
        System::Cho => solve_cho_energy(spec),
        System::Pisb => solve_pisb_energy(spec),
        System::Fho => solve_fho_energy(spec),
    }
}

pub fn solve_fho_energy(spec: &StateSpec) -> Result<EnergyLevel> {
    if spec.system != System::Fho {
        return Err(Error::InvalidState(format!("{} state passed to the fho solver", spec.system)));
    }
    let e = spec.omega * (2.0 * spec.n_r as f64 + spec.l as f64 + 1.5);
    Ok(EnergyLevel {
        energy: e,
        bracket: (e, e),
        residual: 0.0,
        iterations: 0,
        kummer_a: Some(SplitParameter::from_parts(-(spec.n_r as i64), 0.0)),
    })
}

pub fn solve_pisb_energy(spec: &StateSpec) -> Result<EnergyLevel> {
    let r_c = match (spec.system, spec.r_c()) {
        (System::Pisb, Some(r)) => r,
        _ => {
            return Err(Error::InvalidState(format!("{} state passed to the pisb solver", spec.system)))
        }
    };
    let z = bessel_zero(spec.l as usize, spec.n_r as usize + 1)?;
    let e = z * z / (2.0 * r_c * r_c);
    Ok(EnergyLevel {
        energy: e,
        bracket: (e, e),
        residual: crate::specfun::spherical_bessel_j(spec.l as usize, z),
        iterations: 0,
        kummer_a: None,
    })
}

pub fn solve_cho_energy(spec: &StateSpec) -> Result<EnergyLevel> {
    if spec.system != System::Cho {
        return Err(Error::InvalidState(format!("{} state passed to the cho solver", spec.system)));
    }
    let bf = BoundaryFunction::new(spec)?;
    let omega = spec.omega;
    let r_c = bf.r_c;
    let z = bessel_zero(spec.l as usize, spec.n_r as usize + 1)?;
    let box_energy = z * z / (2.0 * r_c * r_c);
    let ceiling = 50.0 * omega + 10.0 * box_energy;
    let step = if r_c >= 1.0 {
        omega
    } else {
        omega.max(0.2 * PI * PI / (2.0 * r_c * r_c))
    };

    let target = spec.n_r + 1;
    let mut found = 0;
    let mut e_lo = omega * bf.b * (1.0 - SCAN_START_SHRINK);
    let mut s_lo = bf.evaluate(e_lo)?.signum();
    let mut iterations = 0u32;
    loop {
        if e_lo > ceiling {
            return Err(Error::BracketExhausted(format!(
                "found {found} of {target} roots for {} below E = {ceiling:.6e}",
                spec.label()
            )));
        }
        let mut e_hi = e_lo + step;
        let mut s_hi = bf.evaluate(e_hi)?.signum();
        if s_hi == 0.0 {
            e_hi += 1e-6 * step;
            s_hi = bf.evaluate(e_hi)?.signum();
        }
        iterations += 1;
        if s_lo * s_hi < 0.0 {
            found += 1;
            if found == target {
                return refine(&bf, e_lo, e_hi, s_lo, iterations);
            }
        }
        e_lo = e_hi;
        s_lo = s_hi;
    }
}

fn refine(bf: &BoundaryFunction, mut lo: f64, mut hi: f64, s_lo: f64, mut iterations: u32) -> Result<EnergyLevel> {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ENERGY_REL_TOL * lo.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = bf.evaluate(mid)?.signum();
        iterations += 1;
        if s == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo > ENERGY_REL_TOL * lo.max(1.0) {
        return Err(Error::NonConvergence(format!(
            "energy bisection stalled at [{lo}, {hi}]"
        )));
    }

    let mid = 0.5 * (lo + hi);
    let n_star = (-bf.parameter(mid)).round() as i64;
    // Higher energy means smaller a, hence smaller offset.
    let d_lo = bf.parameter(hi) + n_star as f64;
    let d_hi = bf.parameter(lo) + n_star as f64;
    let f_lo = bf.evaluate_split(SplitParameter::from_parts(-n_star, d_lo))?;
    let f_hi = bf.evaluate_split(SplitParameter::from_parts(-n_star, d_hi))?;

    if f_lo.signum() * f_hi.signum() < 0.0 {
        let (a, ends, f, steps) = polish(bf, n_star, (d_lo, f_lo), (d_hi, f_hi))?;
        let e = bf.energy_of(a);
        let e_a = bf.energy_of(SplitParameter::from_parts(-n_star, ends.1));
        let e_b = bf.energy_of(SplitParameter::from_parts(-n_star, ends.0));
        return Ok(EnergyLevel {
            energy: e,
            bracket: (e_a.min(e_b).min(e), e_a.max(e_b).max(e)),
            residual: f.relative(),
            iterations: iterations + steps,
            kummer_a: Some(a),
        });
    }

    // Rounding in the change of variable hid the sign change; keep the
    // energy-space answer.
    let a = SplitParameter::from_parts(-n_star, bf.parameter(mid) + n_star as f64);
    let f = bf.evaluate_split(a)?;
    Ok(EnergyLevel {
        energy: mid,
        bracket: (lo, hi),
        residual: f.relative(),
        iterations,
        kummer_a: Some(a),
    })
}

type PolishOutcome = (SplitParameter, (f64, f64), ScaledSum, u32);

/// Bisection on the offset d in a = -n* + d. Brackets on one side of zero
/// are split geometrically; a bracket touching zero uses the smallest
/// subnormal as its stand-in.
fn polish(
    bf: &BoundaryFunction,
    n_star: i64,
    lo: (f64, ScaledSum),
    hi: (f64, ScaledSum),
) -> Result<PolishOutcome> {
    let (mut d_lo, mut f_lo) = lo;
    let (mut d_hi, mut f_hi) = hi;
    let tiny = f64::from_bits(1);
    let mut steps = 0;
    while steps < MAX_POLISH_STEPS {
        let mid = if d_lo < 0.0 && d_hi > 0.0 {
            0.0
        } else if d_lo >= 0.0 {
            log_midpoint(d_lo.max(tiny), d_hi)
        } else {
            -log_midpoint((-d_hi).max(tiny), -d_lo)
        };
        if !(mid > d_lo && mid < d_hi) {
            break;
        }
        let f_mid = bf.evaluate_split(SplitParameter::from_parts(-n_star, mid))?;
        steps += 1;
        if f_mid.signum() == 0.0 {
            d_lo = mid;
            d_hi = mid;
            f_lo = f_mid;
            f_hi = f_mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            d_lo = mid;
            f_lo = f_mid;
        } else {
            d_hi = mid;
            f_hi = f_mid;
        }
    }
    let (d, f) = if f_lo.ln_abs() <= f_hi.ln_abs() {
        (d_lo, f_lo)
    } else {
        (d_hi, f_hi)
    };
    Ok((SplitParameter::from_parts(-n_star, d), (d_lo, d_hi), f, steps))
}

fn log_midpoint(a: f64, b: f64) -> f64 {
    let m = (0.5 * (a.ln() + b.ln())).exp();
    if m <= a || m >= b {
        // Adjacent in log space; fall back to the arithmetic midpoint.
        a + 0.5 * (b - a)
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cho(n_r: u32, l: u32, omega: f64, r_c: f64) -> f64 {
        solve_cho_energy(&StateSpec::cho(n_r, l, 0, omega, r_c).unwrap())
            .unwrap()
            .energy
    }

    #[test]
    fn table_energies() {
        let e = cho(0, 0, 1.0, 0.5);
        assert!((e / 19.77453418 - 1.0).abs() < 1e-8, "{e}");
        let e = cho(0, 4, 1.0, 0.01);
        assert!((e / 334771.55964446 - 1.0).abs() < 1e-8, "{e}");
    }

    #[test]
    fn wide_sphere_reaches_free_oscillator() {
        let e = cho(0, 0, 1.0, 30.0);
        assert!((e - 1.5).abs() < 1e-10, "{e}");
        let e = cho(2, 3, 1.0, 30.0);
        assert!((e - 8.5).abs() < 1e-10, "{e}");
    }

    #[test]
    fn box_energies() {
        let e = solve_pisb_energy(&StateSpec::pisb(0, 1, 0, 0.1).unwrap()).unwrap().energy;
        assert!((e / 1009.53642782 - 1.0).abs() < 1e-9, "{e}");
        let e = solve_pisb_energy(&StateSpec::pisb(0, 0, 0, 0.5).unwrap()).unwrap().energy;
        assert!((e / 19.73920880 - 1.0).abs() < 1e-9, "{e}");
        let e = solve_pisb_energy(&StateSpec::pisb(0, 0, 0, 1.0).unwrap()).unwrap().energy;
        assert!((e - PI * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn free_oscillator_closed_form() {
        let e = |n_r, l, w| solve_fho_energy(&StateSpec::fho(n_r, l, 0, w).unwrap()).unwrap().energy;
        assert_eq!(e(0, 0, 1.0), 1.5);
        assert_eq!(e(0, 1, 1.0), 2.5);
        assert_eq!(e(1, 9, 2.0), 25.0);
    }

    #[test]
    fn bracket_invariant() {
        for &(n_r, l, r_c) in &[(0, 0, 0.5), (2, 3, 1.0), (1, 9, 7.0), (0, 2, 0.05)] {
            let lv = solve_cho_energy(&StateSpec::cho(n_r, l, 0, 1.0, r_c).unwrap()).unwrap();
            let (lo, hi) = lv.bracket;
            assert!(lo <= lv.energy && lv.energy <= hi);
            assert!(hi - lo <= 1e-12 * lv.energy.max(1.0));
            assert!(lv.energy > 0.0);
        }
    }

    #[test]
    fn small_sphere_tracks_the_box() {
        for l in 0..=4 {
            for n_r in 0..=2 {
                let c = cho(n_r, l, 1.0, 0.01);
                let p = solve_pisb_energy(&StateSpec::pisb(n_r, l, 0, 0.01).unwrap()).unwrap().energy;
                assert!((c - p).abs() / p < 1e-6, "n_r={n_r} l={l}");
            }
        }
    }

    #[test]
    fn wrong_system_is_rejected() {
        let s = StateSpec::fho(0, 0, 0, 1.0).unwrap();
        assert!(solve_cho_energy(&s).is_err());
        assert!(solve_pisb_energy(&s).is_err());
    }
}
