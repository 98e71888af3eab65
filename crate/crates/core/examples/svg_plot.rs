//! A custom log-log plot: I_r of the 1s state against the radius for
//! several frequencies, with the free limits as flat reference lines.
//!
//! cargo run --release --example svg_plot > ir_1s.svg

use chofisher::model::StateSpec;
use chofisher::observables::fho_fisher_closed_form;
use chofisher::pipeline::{evaluate_all, ComputeSettings};
use chofisher::svg::{Plot, Series};

fn main() -> chofisher::Result<()> {
    let radii: Vec<f64> = (0..30).map(|i| 0.1 * 100f64.powf(i as f64 / 29.0)).collect();
    let mut series = Vec::new();
    for omega in [0.5, 1.0, 4.0] {
        let specs = radii.iter().map(|&r| StateSpec::cho(0, 0, 0, omega, r)).collect::<chofisher::Result<Vec<_>>>()?;
        let reports = evaluate_all(&specs, &ComputeSettings::default());
        let points = radii
            .iter()
            .zip(reports)
            .map(|(&r, rep)| rep.map(|rep| (r, rep.fisher.i_r)))
            .collect::<chofisher::Result<Vec<_>>>()?;
        series.push(Series { label: format!("omega = {omega}"), points });
        let (limit, _) = fho_fisher_closed_form(0, 0, 0, omega)?;
        series.push(Series { label: format!("free, omega = {omega}"), points: vec![(radii[0], limit), (radii[29], limit)] });
    }
    let plot = Plot {
        title: "I_r of 1s".into(),
        x_label: "r_c".into(),
        y_label: "I_r".into(),
        log_x: true,
        log_y: true,
        series,
    };
    print!("{}", plot.render());
    Ok(())
}
