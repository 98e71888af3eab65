//! Frequency scaling of the confined oscillator and the kinetic/potential
//! identities satisfied by I_r and I_p at m = 0.
//!
//! cargo run --release --example scaling_and_virial

use chofisher::model::StateSpec;
use chofisher::observables::{omega_scaling_check, virial_identities};
use chofisher::pipeline::{evaluate_state, ComputeSettings};

fn main() -> chofisher::Result<()> {
    let settings = ComputeSettings::default();
    let spec = StateSpec::cho(0, 1, 0, 1.0, 1.5)?;
    let s = omega_scaling_check(&spec, 1.0, 4.0, &settings)?;
    println!(
        "1p rc=1.5, omega 1 -> 4: I_r {:.10} vs rescaled {:.10}; I_p {:.10} vs rescaled {:.10}; residual {:.1e}",
        s.direct_i_r, s.rescaled_i_r, s.direct_i_p, s.rescaled_i_p, s.rescaling_residual
    );
    let free = omega_scaling_check(&StateSpec::fho(1, 2, 0, 1.0)?, 1.0, 4.0, &settings)?;
    println!("free 2d: I_r ratio {:.12}, I_t ratio {:.12}", free.measured_ratio, free.i_t_ratio);

    for rc in [0.5, 2.0, 6.0] {
        let spec = StateSpec::cho(1, 0, 0, 2.0, rc)?;
        let r = evaluate_state(&spec, &settings)?;
        let v = virial_identities(&r.moments, &spec, &r.level)?;
        println!(
            "2s omega=2 rc={rc}: I_r={:.10} 8<T>={:.10}  I_p={:.10} 8<v>/w^2={:.10}",
            v.i_r,
            v.eight_t,
            v.i_p,
            v.eight_v_over_omega2.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
