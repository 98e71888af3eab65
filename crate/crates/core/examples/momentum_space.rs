//! Momentum-space wavefunctions by spherical Bessel transform, including
//! the analytic large-p tail produced by the wall.
//!
//! cargo run --release --example momentum_space

use chofisher::eigensolve::solve_energy;
use chofisher::model::StateSpec;
use chofisher::momentum::{to_momentum_space, TransformSettings};
use chofisher::wavefun::{build_position_wavefunction, DEFAULT_ORDER};

fn main() -> chofisher::Result<()> {
    for spec in [StateSpec::cho(0, 0, 0, 1.0, 30.0)?, StateSpec::cho(0, 1, 0, 1.0, 0.5)?, StateSpec::pisb(0, 0, 0, 1.0)?] {
        let level = solve_energy(&spec)?;
        let f_r = build_position_wavefunction(&spec, &level, DEFAULT_ORDER)?;
        let f_p = to_momentum_space(&f_r, &spec, &level, &TransformSettings::default())?;
        println!(
            "{} {} rc={}: p_max={:.1} nodes={} norm deficit={:.1e} <p^2>={:.10} <p^-2>={:.10}",
            spec.system,
            spec.label(),
            spec.radius,
            f_p.extent(),
            f_p.grid.len(),
            f_p.norm_residual,
            f_p.moment(2),
            f_p.moment(-2)
        );
    }
    // the wide-sphere ground state is the Gaussian, which is self-reciprocal
    Ok(())
}
