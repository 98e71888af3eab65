//! Fisher information of one state by both routes, with the uncertainty
//! bounds, and the free-oscillator closed form.
//!
//! cargo run --release --example fisher_information

use chofisher::model::StateSpec;
use chofisher::observables::fho_fisher_closed_form;
use chofisher::pipeline::{evaluate_state, ComputeSettings};

fn main() -> chofisher::Result<()> {
    let settings = ComputeSettings::default();
    let report = evaluate_state(&StateSpec::cho(0, 2, 0, 1.0, 1.0)?, &settings)?;
    // m only enters the final combination; reuse the solve
    for m in 0..=2 {
        let r = report.for_m(m)?;
        let f = r.fisher;
        println!(
            "1d m={m} rc=1: I_r={:.10} (energy route {:.10})  I_p={:.10} (position route {:.10})",
            f.i_r, f.i_r_energy_route, f.i_p, f.i_p_energy_route
        );
        println!("          {:.6} <= I_t={:.6} <= {:.6}", f.bound_low, f.i_t, f.bound_high);
    }
    let (i_r, i_p) = fho_fisher_closed_form(0, 2, 1, 1.0)?;
    let free = evaluate_state(&StateSpec::fho(0, 2, 1, 1.0)?, &settings)?;
    println!("free 1d m=1: closed form ({i_r}, {i_p}), computed ({:.12}, {:.12})", free.fisher.i_r, free.fisher.i_p);
    Ok(())
}
