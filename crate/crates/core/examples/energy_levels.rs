//! Circular-state energies of the confined oscillator as the sphere grows,
//! next to the box (same radius) and free oscillator (same frequency).
//!
//! cargo run --release --example energy_levels

use chofisher::eigensolve::solve_energy;
use chofisher::model::StateSpec;

fn main() -> chofisher::Result<()> {
    println!("{:>4} {:>6} {:>18} {:>18} {:>8}", "l", "r_c", "E(cho)", "E(box)", "E(free)");
    for l in 0..=2 {
        for rc in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let cho = solve_energy(&StateSpec::cho(0, l, 0, 1.0, rc)?)?;
            let pisb = solve_energy(&StateSpec::pisb(0, l, 0, rc)?)?;
            let fho = solve_energy(&StateSpec::fho(0, l, 0, 1.0)?)?;
            println!("{l:>4} {rc:>6} {:>18.10} {:>18.10} {:>8}", cho.energy, pisb.energy, fho.energy);
        }
    }
    // small spheres: kinetic energy dominates and the box is a good guide;
    // large spheres: the wall no longer matters
    Ok(())
}
