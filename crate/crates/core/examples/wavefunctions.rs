//! Radial wavefunctions: normalization, node counts and the wall.
//!
//! cargo run --release --example wavefunctions

use chofisher::eigensolve::solve_energy;
use chofisher::model::StateSpec;
use chofisher::wavefun::{build_position_wavefunction, count_interior_nodes, wall_ratio, RadialShape, DEFAULT_ORDER};

fn main() -> chofisher::Result<()> {
    for (n_r, l, rc) in [(0, 0, 0.5), (1, 0, 2.0), (2, 1, 3.0), (0, 1, 0.5)] {
        let spec = StateSpec::cho(n_r, l, 0, 1.0, rc)?;
        let level = solve_energy(&spec)?;
        let f = build_position_wavefunction(&spec, &level, DEFAULT_ORDER)?;
        println!(
            "{} rc={rc}: E={:.10} nodes={} norm residual={:.1e} |R(rc)|/max={:.1e}",
            spec.label(),
            level.energy,
            count_interior_nodes(&f),
            f.norm_residual,
            wall_ratio(&f).unwrap_or(0.0)
        );
    }
    // R and R' at any radius from the analytic form
    let spec = StateSpec::cho(1, 0, 0, 1.0, 2.0)?;
    let f = build_position_wavefunction(&spec, &solve_energy(&spec)?, DEFAULT_ORDER)?;
    let shape = f.shape.unwrap_or(RadialShape::for_state(&spec, &solve_energy(&spec)?)?);
    for r in [0.0f64, 0.5, 1.0, 1.5, 2.0] {
        let (v, d) = shape.eval(r.max(1e-12))?;
        println!("  r={r:.1}  R={v:+.8}  R'={d:+.8}");
    }
    Ok(())
}
