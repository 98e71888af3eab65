//! A sweep over states, frequencies and log-spaced radii, written as CSV.
//!
//! cargo run --release --example sweep > sweep.csv

use chofisher::model::{Radius, System};
use chofisher::pipeline::ComputeSettings;
use chofisher::sweep::{run_sweep, Output, SweepRequest};
use chofisher::table::Delimiter;

fn main() -> chofisher::Result<()> {
    let radii = (0..12).map(|i| Radius::Finite(0.2 * 30f64.powf(i as f64 / 11.0))).chain([Radius::Unconfined]);
    let request = SweepRequest {
        system: System::Cho,
        states: vec!["1s".parse()?, "1p:1".parse()?, "2d:2".parse()?],
        radii: radii.collect(),
        omegas: vec![1.0, 2.0],
        outputs: vec![Output::Energy, Output::IR, Output::IP, Output::IT, Output::Moments],
    };
    let table = run_sweep(&request, &ComputeSettings::default())?;
    print!("{}", table.render(Delimiter::Csv));
    Ok(())
}
