//! The numerical kernels: Kummer's function with cancellation accounting,
//! spherical Bessel functions and zeros, Gauss-Legendre rules.
//!
//! cargo run --release --example special_functions

use chofisher::specfun::{
    bessel_zero, composite_gauss_legendre, kummer_1f1, kummer_series, spherical_bessel_j, SplitParameter,
};

fn main() -> chofisher::Result<()> {
    // 1F1(a; b; x) at a few points; cancelled digits grow with -a and x
    for (a, b, x) in [(0.5, 1.5, 2.0), (-3.2, 2.5, 10.0), (-14.7, 10.6, 25.6)] {
        let s = kummer_series(SplitParameter::new(a), b, x)?;
        println!("1F1({a}, {b}, {x}) = {:.15e}  ({:.1} digits cancelled)", kummer_1f1(a, b, x)?, s.cancelled_digits());
    }
    // an integer part carried exactly: a = -2 + 1e-30 is not the polynomial
    let near = SplitParameter::from_parts(-2, 1e-30);
    println!("1F1(-2 + 1e-30; 1.5; 40) = {:.6e}", kummer_series(near, 1.5, 40.0)?.value());

    for l in 0..4 {
        let zeros: Vec<String> = (1..=3).map(|k| bessel_zero(l, k).map(|z| format!("{z:.12}"))).collect::<Result<_, _>>()?;
        println!("j_{l}: j(1) = {:+.15e}, zeros {}", spherical_bessel_j(l, 1.0), zeros.join(" "));
    }

    let rule = composite_gauss_legendre(64, 0.0, std::f64::consts::PI, 4)?;
    println!("int_0^pi sin = {:.15}", rule.integrate(f64::sin));
    Ok(())
}
