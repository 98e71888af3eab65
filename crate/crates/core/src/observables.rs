//! Radial moments and Fisher information, each by two independent routes,
//! with the uncertainty bounds and scaling identities used to check them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{EnergyLevel, FisherReport, Moments, RadialFunction, Radius, StateSpec, System};
use crate::pipeline::{evaluate_state, ComputeSettings};

/// Relative tolerance for <p^2> = 2<T>.
pub const KINETIC_TOLERANCE: f64 = 1e-6;

/// Relative disagreement between Fisher routes that is treated as a fault.
pub const ROUTE_TOLERANCE: f64 = 1e-5;

/// Relative slack granted to the uncertainty bounds when they saturate.
pub const BOUND_SLACK: f64 = 1e-9;

pub fn potential_mean(spec: &StateSpec, r2: f64) -> f64 {
    match spec.system {
        System::Pisb => 0.0,
        System::Cho | System::Fho => 0.5 * spec.omega * spec.omega * r2,
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// 2(2l+1)|m|, the coefficient of the inverse-square moments.
pub fn magnetic_coefficient(spec: &StateSpec) -> f64 {
    2.0 * (2.0 * spec.l as f64 + 1.0) * spec.abs_m() as f64
}

pub fn compute_moments(
    f_r: &RadialFunction,
    f_p: &RadialFunction,
    spec: &StateSpec,
    level: &EnergyLevel,
) -> Result<Moments> {
    let r2 = f_r.moment(2);
    let rm2 = f_r.moment(-2);
    let p2 = f_p.moment(2);
    let pm2 = f_p.moment(-2);
    let r2_momentum = f_p.gradient_moment();
    let v_mean = potential_mean(spec, r2);
    let t_mean = level.energy - v_mean;
    let gap = relative_gap(p2, 2.0 * t_mean);
    if gap > KINETIC_TOLERANCE {
        return Err(Error::Consistency(format!(
            "<p^2> = {p2} but 2<T> = {} for {} (relative gap {gap:.2e})",
            2.0 * t_mean,
            spec.label()
        )));
    }
    Ok(Moments {
        r2,
        rm2,
        p2,
        pm2,
        r2_momentum,
        v_mean,
        t_mean,
    })
}

pub fn fisher_information(moments: &Moments, spec: &StateSpec, level: &EnergyLevel) -> Result<FisherReport> {
    let c = magnetic_coefficient(spec);
    let i_r = 4.0 * moments.p2 - c * moments.rm2;
    let i_p = 4.0 * moments.r2_momentum - c * moments.pm2;
    let i_r_energy_route = 8.0 * level.energy - 8.0 * moments.v_mean - c * moments.rm2;
    let i_p_energy_route = 4.0 * moments.r2 - c * moments.pm2;
    let i_t = i_r * i_p;
    let product = moments.r2 * moments.p2;
    let bound_low = 81.0 / product;
    let bound_high = 16.0 * product;
    let route_residual = relative_gap(i_r, i_r_energy_route).max(relative_gap(i_p, i_p_energy_route));

    if !(i_r > 0.0 && i_p > 0.0) {
        return Err(Error::Consistency(format!(
            "non-positive Fisher information for {}: I_r = {i_r}, I_p = {i_p}",
            spec.label()
        )));
    }
    if i_t < bound_low * (1.0 - BOUND_SLACK) || i_t > bound_high * (1.0 + BOUND_SLACK) {
        return Err(Error::BoundViolation(format!(
            "I_t = {i_t} outside [{bound_low}, {bound_high}] for {}",
            spec.label()
        )));
    }
    if route_residual > ROUTE_TOLERANCE {
        return Err(Error::RouteDisagreement(format!(
            "relative gap {route_residual:.2e} for {}: I_r {i_r} vs {i_r_energy_route}, I_p {i_p} vs {i_p_energy_route}",
            spec.label()
        )));
    }
    Ok(FisherReport {
        i_r,
        i_p,
        i_t,
        i_r_energy_route,
        i_p_energy_route,
        bound_low,
        bound_high,
        route_residual,
    })
}

/// (I_r, I_p) of the free oscillator: 4 omega k and 4 k / omega with
/// k = 2 n_r + l - |m| + 3/2.
pub fn fho_fisher_closed_form(n_r: u32, l: u32, m: i32, omega: f64) -> Result<(f64, f64)> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidState(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    if !(omega > 0.0) {
        return Err(Error::InvalidState(format!("omega must be positive, got {omega}")));
    }
    let k = 2.0 * n_r as f64 + l as f64 - m.unsigned_abs() as f64 + 1.5;
    Ok((4.0 * omega * k, 4.0 * k / omega))
}

/// Response of the Fisher information to a change of frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingReport {
    pub omega_1: f64,
    pub omega_2: f64,
    /// I_r(omega_2) / I_r(omega_1) at the same radius.
    pub measured_ratio: f64,
    /// omega_2 / omega_1, exact without a wall.
    pub predicted_ratio: f64,
    /// The same ratio with the extra 1/sqrt(2) of the literal scaling formula.
    pub sqrt2_ratio: f64,
    /// I_r(omega_2, r_c) from a direct solve.
    pub direct_i_r: f64,
    /// (omega_2 / omega_1) I_r(omega_1, sqrt(omega_2 / omega_1) r_c).
    pub rescaled_i_r: f64,
    pub direct_i_p: f64,
    /// (omega_1 / omega_2) I_p(omega_1, sqrt(omega_2 / omega_1) r_c).
    pub rescaled_i_p: f64,
    pub rescaling_residual: f64,
    /// I_t(omega_2) / I_t(omega_1) at the same radius.
    pub i_t_ratio: f64,
}

/// Compare solves at two frequencies. Coordinate scaling maps the state
/// at (omega_2, r_c) onto (omega_1, sqrt(omega_2/omega_1) r_c), so the
/// rescaled values must match the direct ones for any radius.
pub fn omega_scaling_check(
    spec: &StateSpec,
    omega_1: f64,
    omega_2: f64,
    settings: &ComputeSettings,
) -> Result<ScalingReport> {
    if spec.system == System::Pisb {
        return Err(Error::InvalidState("the box has no frequency to scale".into()));
    }
    let s = omega_2 / omega_1;
    let at_1 = evaluate_state(&spec.with_omega(omega_1)?, settings)?;
    let at_2 = evaluate_state(&spec.with_omega(omega_2)?, settings)?;
    let stretched = match spec.radius {
        Radius::Finite(r) => Radius::Finite(s.sqrt() * r),
        Radius::Unconfined => Radius::Unconfined,
    };
    let mapped = evaluate_state(&spec.with_omega(omega_1)?.with_radius(stretched)?, settings)?;
    let rescaled_i_r = s * mapped.fisher.i_r;
    let rescaled_i_p = mapped.fisher.i_p / s;
    Ok(ScalingReport {
        omega_1,
        omega_2,
        measured_ratio: at_2.fisher.i_r / at_1.fisher.i_r,
        predicted_ratio: s,
        sqrt2_ratio: s / std::f64::consts::SQRT_2,
        direct_i_r: at_2.fisher.i_r,
        rescaled_i_r,
        direct_i_p: at_2.fisher.i_p,
        rescaled_i_p,
        rescaling_residual: relative_gap(at_2.fisher.i_r, rescaled_i_r)
            .max(relative_gap(at_2.fisher.i_p, rescaled_i_p)),
        i_t_ratio: at_2.fisher.i_t / at_1.fisher.i_t,
    })
}

/// I_r = 8<T> and I_p = 8<v>/omega^2 for m = 0 states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VirialReport {
    pub i_r: f64,
    pub eight_t: f64,
    pub kinetic_residual: f64,
    pub i_p: f64,
    /// 8<v>/omega^2; absent for the box, which has no potential.
    pub eight_v_over_omega2: Option<f64>,
    pub potential_residual: Option<f64>,
}

pub fn virial_identities(moments: &Moments, spec: &StateSpec, level: &EnergyLevel) -> Result<VirialReport> {
    if spec.m != 0 {
        return Err(Error::InvalidState(format!(
            "the kinetic and potential identities hold for m = 0, got m = {}",
            spec.m
        )));
    }
    let i_r = 4.0 * moments.p2;
    let i_p = 4.0 * moments.r2_momentum;
    let eight_t = 8.0 * (level.energy - moments.v_mean);
    let eight_v = match spec.system {
        System::Pisb => None,
        _ => Some(8.0 * moments.v_mean / (spec.omega * spec.omega)),
    };
    Ok(VirialReport {
        i_r,
        eight_t,
        kinetic_residual: relative_gap(i_r, eight_t),
        i_p,
        eight_v_over_omega2: eight_v,
        potential_residual: eight_v.map(|v| relative_gap(i_p, v)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: StateSpec) -> crate::pipeline::StateReport {
        evaluate_state(&spec, &ComputeSettings::default()).unwrap()
    }

    #[test]
    fn free_ground_state_moments_split_evenly() {
        let r = run(StateSpec::fho(0, 0, 0, 1.0).unwrap());
        assert!((r.moments.r2 - 1.5).abs() < 1e-12);
        assert!((r.moments.p2 - 1.5).abs() < 1e-12);
    }

    #[test]
    fn free_p_state_inverse_moments() {
        let r = run(StateSpec::fho(0, 1, 0, 1.0).unwrap());
        assert!((r.moments.rm2 - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.moments.pm2 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn box_second_moment() {
        let r = run(StateSpec::pisb(0, 0, 0, 0.5).unwrap());
        assert!((r.moments.r2 / (0.28267274151 / 4.0) - 1.0).abs() < 1e-9);
        assert_eq!(r.moments.v_mean, 0.0);
    }

    #[test]
    fn table_fisher_values() {
        let r = run(StateSpec::cho(0, 0, 0, 1.0, 0.1).unwrap());
        assert!((r.fisher.i_r / 3947.84176 - 1.0).abs() < 1e-8);
        assert!((r.fisher.i_p / 0.01130690073 - 1.0).abs() < 1e-8);
        let r = run(StateSpec::cho(0, 1, 1, 1.0, 7.0).unwrap());
        assert!((r.fisher.i_r - 6.0).abs() < 1e-8);
        assert!((r.fisher.i_p - 6.0).abs() < 1e-4);
    }

    #[test]
    fn free_ground_state_saturates_both_bounds() {
        let r = run(StateSpec::fho(0, 0, 0, 1.0).unwrap());
        assert!((r.fisher.i_t - 36.0).abs() < 1e-10);
        assert!((r.fisher.bound_low - 36.0).abs() < 1e-10);
        assert!((r.fisher.bound_high - 36.0).abs() < 1e-10);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(fho_fisher_closed_form(0, 1, 0, 1.0).unwrap(), (10.0, 10.0));
        assert_eq!(fho_fisher_closed_form(1, 9, 1, 1.0).unwrap(), (46.0, 46.0));
        assert_eq!(fho_fisher_closed_form(0, 0, 0, 3.0).unwrap(), (18.0, 2.0));
        assert!(fho_fisher_closed_form(0, 1, 2, 1.0).is_err());
    }

    #[test]
    fn frequency_scaling() {
        let s = ComputeSettings::default();
        let free = omega_scaling_check(&StateSpec::fho(0, 0, 0, 1.0).unwrap(), 1.0, 4.0, &s).unwrap();
        assert!((free.measured_ratio - 4.0).abs() < 1e-12);
        assert!((free.i_t_ratio - 1.0).abs() < 1e-12);
        let confined = omega_scaling_check(&StateSpec::cho(0, 1, 0, 1.0, 1.0).unwrap(), 1.0, 4.0, &s).unwrap();
        assert!(confined.rescaling_residual < 1e-8, "{confined:?}");
    }

    #[test]
    fn virial_split() {
        let r = run(StateSpec::fho(0, 0, 0, 1.0).unwrap());
        let v = virial_identities(&r.moments, &r.spec, &r.level).unwrap();
        assert!((v.eight_t - 6.0).abs() < 1e-12 && v.kinetic_residual < 1e-12);
        let r = run(StateSpec::cho(0, 0, 0, 1.0, 0.5).unwrap());
        let v = virial_identities(&r.moments, &r.spec, &r.level).unwrap();
        assert!((v.eight_t / 157.913740 - 1.0).abs() < 1e-8);
        assert!((r.moments.v_mean / (0.28253330127 / 8.0) - 1.0).abs() < 1e-8);
        let r = run(StateSpec::pisb(0, 0, 0, 0.1).unwrap());
        let v = virial_identities(&r.moments, &r.spec, &r.level).unwrap();
        assert!((v.eight_t / (8.0 * r.level.energy) - 1.0).abs() < 1e-15);
        assert!(v.potential_residual.is_none());
    }
}
