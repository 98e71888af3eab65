//! Energy, wavefunctions, moments and Fisher information for one state.

use rayon::prelude::*;
use serde::Serialize;

use crate::eigensolve::solve_energy;
use crate::error::Result;
use crate::model::{EnergyLevel, FisherReport, Moments, StateSpec};
use crate::momentum::{to_momentum_space, TransformSettings};
use crate::observables::{compute_moments, fisher_information};
use crate::wavefun::{build_position_wavefunction_with, count_interior_nodes, DEFAULT_ORDER, DEFAULT_PANELS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeSettings {
    /// Gauss-Legendre order per panel in position space.
    pub order: usize,
    pub panels: usize,
    pub transform: TransformSettings,
}

impl Default for ComputeSettings {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            panels: DEFAULT_PANELS,
            transform: TransformSettings::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StateReport {
    pub spec: StateSpec,
    pub level: EnergyLevel,
    pub moments: Moments,
    pub fisher: FisherReport,
    pub position_norm_residual: f64,
    pub momentum_norm_residual: f64,
    pub interior_nodes: usize,
    /// Momentum cutoff actually used.
    pub p_max: f64,
}

pub fn evaluate_state(spec: &StateSpec, settings: &ComputeSettings) -> Result<StateReport> {
    spec.validate()?;
    let level = solve_energy(spec)?;
    let f_r = build_position_wavefunction_with(spec, &level, settings.order, settings.panels)?;
    let f_p = to_momentum_space(&f_r, spec, &level, &settings.transform)?;
    let moments = compute_moments(&f_r, &f_p, spec, &level)?;
    let fisher = fisher_information(&moments, spec, &level)?;
    Ok(StateReport {
        spec: *spec,
        level,
        moments,
        fisher,
        position_norm_residual: f_r.norm_residual,
        momentum_norm_residual: f_p.norm_residual,
        interior_nodes: count_interior_nodes(&f_r),
        p_max: f_p.extent(),
    })
}

impl StateReport {
    /// The same radial state with another magnetic number; only the
    /// Fisher combination depends on m.
    pub fn for_m(&self, m: i32) -> Result<StateReport> {
        let spec = self.spec.with_m(m)?;
        let fisher = fisher_information(&self.moments, &spec, &self.level)?;
        Ok(StateReport {
            spec,
            fisher,
            ..self.clone()
        })
    }
}

/// Evaluate many states in parallel; results keep the input order.
pub fn evaluate_all(specs: &[StateSpec], settings: &ComputeSettings) -> Vec<Result<StateReport>> {
    specs.par_iter().map(|s| evaluate_state(s, settings)).collect()
}
