//! The independent finite-difference solver next to the analytic route.
//!
//! cargo run --release --example finite_difference_oracle

use chofisher::model::StateSpec;
use chofisher::oracle::{extrapolated_moment, fd_solve, inverse_momentum_moment};
use chofisher::pipeline::{evaluate_state, ComputeSettings};

fn main() -> chofisher::Result<()> {
    let spec = StateSpec::cho(0, 1, 0, 1.0, 2.0)?;
    let exact = evaluate_state(&spec, &ComputeSettings::default())?;
    for n in [2000, 4000, 8000] {
        let sol = fd_solve(&spec, n, 2)?;
        println!(
            "N={n:>5}: E_h={:.10} E_extrap={:.12} <r^2>={:.12} <p^-2>={:.12}",
            sol.energies[0],
            sol.extrapolated[0],
            extrapolated_moment(&sol, 0, 2)?,
            inverse_momentum_moment(&sol, 0)?
        );
    }
    println!(
        "analytic:  E={:.12} <r^2>={:.12} <p^-2>={:.12}",
        exact.level.energy, exact.moments.r2, exact.moments.pm2
    );
    Ok(())
}
