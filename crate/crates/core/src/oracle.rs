//! Brute-force cross-check: second-order finite differences for u = rR on
//! a uniform grid, eigenvalues by Sturm bisection, eigenvectors by inverse
//! iteration, and trapezoid-rule moments.

use crate::error::{Error, Result};
use crate::model::{StateSpec, System};

/// Smallest grid the oracle accepts.
pub const MIN_GRID_POINTS: usize = 2000;
pub const MAX_LEVELS: usize = 10;

#[derive(Debug, Clone)]
pub struct FdSolution {
    pub grid_points: usize,
    /// r_c / (N + 1).
    pub spacing: f64,
    pub l: u32,
    /// Lowest eigenvalues on the N-point grid, ascending.
    pub energies: Vec<f64>,
    /// u = rR at r_i = i h, i = 1..N, with h * sum u^2 = 1.
    pub vectors: Vec<Vec<f64>>,
    /// Eigenvalues on the 2N+1 point grid (spacing h/2).
    pub fine_energies: Vec<f64>,
    /// Eigenvectors on the 2N+1 point grid.
    pub fine_vectors: Vec<Vec<f64>>,
    /// (4 E_fine - E_coarse) / 3.
    pub extrapolated: Vec<f64>,
}

struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

fn assemble(spec: &StateSpec, n: usize) -> Result<(Tridiagonal, f64)> {
    let r_c = spec
        .r_c()
        .ok_or_else(|| Error::InvalidState("the finite-difference oracle needs a finite radius".into()))?;
    let omega = if spec.system == System::Pisb { 0.0 } else { spec.omega };
    let h = r_c / (n + 1) as f64;
    let ll = (spec.l * (spec.l + 1)) as f64;
    let diag = (1..=n)
        .map(|i| {
            let r = i as f64 * h;
            1.0 / (h * h) + 0.5 * ll / (r * r) + 0.5 * omega * omega * r * r
        })
        .collect();
    Ok((Tridiagonal { diag, off: -0.5 / (h * h) }, h))
}

impl Tridiagonal {
    /// Number of eigenvalues below x.
    fn count_below(&self, x: f64) -> usize {
        let e2 = self.off * self.off;
        let mut q = 1.0;
        let mut count = 0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// The j-th smallest eigenvalue (j from 0).
    fn eigenvalue(&self, j: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solve (T - shift) y = rhs by the Thomas algorithm.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let e = self.off;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut b0 = self.diag[0] - shift;
        if b0 == 0.0 {
            b0 = f64::EPSILON;
        }
        c[0] = e / b0;
        d[0] = rhs[0] / b0;
        for i in 1..n {
            let mut m = self.diag[i] - shift - e * c[i - 1];
            if m == 0.0 {
                m = f64::EPSILON;
            }
            c[i] = e / m;
            d[i] = (rhs[i] - e * d[i - 1]) / m;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = d[i] - c[i] * y[i + 1];
        }
        y
    }

    fn eigenvector(&self, lambda: f64, h: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = lambda * (1.0 + 1e-13) + 1e-300;
        // deterministic start with components along every eigenvector
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (1.3 * i as f64 + 0.7).sin()).collect();
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            let norm = (h * v.iter().map(|x| x * x).sum::<f64>()).sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        let first = v.iter().copied().find(|x| x.abs() > 1e-8).unwrap_or(1.0);
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }
}

/// Lowest `k` levels of the radial equation on N interior points, plus a
/// Richardson estimate from a second grid of half the spacing.
pub fn fd_solve(spec: &StateSpec, n: usize, k: usize) -> Result<FdSolution> {
    if n < MIN_GRID_POINTS {
        return Err(Error::InvalidState(format!("grid of {n} points; need at least {MIN_GRID_POINTS}")));
    }
    if k == 0 || k > MAX_LEVELS {
        return Err(Error::InvalidState(format!("level count {k} outside 1..={MAX_LEVELS}")));
    }
    let (coarse, h) = assemble(spec, n)?;
    let (fine, _) = assemble(spec, 2 * n + 1)?;
    let energies: Vec<f64> = (0..k).map(|j| coarse.eigenvalue(j)).collect();
    let fine_energies: Vec<f64> = (0..k).map(|j| fine.eigenvalue(j)).collect();
    let extrapolated = energies
        .iter()
        .zip(&fine_energies)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    let vectors = energies.iter().map(|&e| coarse.eigenvector(e, h)).collect();
    let fine_vectors = fine_energies.iter().map(|&e| fine.eigenvector(e, 0.5 * h)).collect();
    Ok(FdSolution {
        grid_points: n,
        spacing: h,
        l: spec.l,
        energies,
        vectors,
        fine_energies,
        fine_vectors,
        extrapolated,
    })
}

/// <r^k> of level `index` by the trapezoid rule, k in {-2, 2}.
///
/// For l = 0 and k = -2 the integrand u^2/r^2 is finite at the origin;
/// its value there is extrapolated linearly from the first two nodes,
/// since dropping the endpoint would leave an O(h) error.
pub fn trapezoid_moment(sol: &FdSolution, index: usize, k_power: i32) -> Result<f64> {
    let u = sol
        .vectors
        .get(index)
        .ok_or_else(|| Error::Domain(format!("no level {index} in the oracle solution")))?;
    grid_moment(u, sol.spacing, sol.l, k_power)
}

/// (4 m_fine - m_coarse) / 3 from the trapezoid moments on both grids.
pub fn extrapolated_moment(sol: &FdSolution, index: usize, k_power: i32) -> Result<f64> {
    let coarse = trapezoid_moment(sol, index, k_power)?;
    let u = sol
        .fine_vectors
        .get(index)
        .ok_or_else(|| Error::Domain(format!("no level {index} in the oracle solution")))?;
    let fine = grid_moment(u, 0.5 * sol.spacing, sol.l, k_power)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// <p^-2> from the position-space Green's function of the Laplacian,
/// 2/(2l+1) int u r^-l A, A(r) = int_0^r u r'^(l+1); Richardson on both grids.
/// Needs no momentum-space representation.
pub fn inverse_momentum_moment(sol: &FdSolution, index: usize) -> Result<f64> {
    let missing = || Error::Domain(format!("no level {index} in the oracle solution"));
    let coarse = green_moment(sol.vectors.get(index).ok_or_else(missing)?, sol.spacing, sol.l);
    let fine = green_moment(sol.fine_vectors.get(index).ok_or_else(missing)?, 0.5 * sol.spacing, sol.l);
    Ok((4.0 * fine - coarse) / 3.0)
}

fn green_moment(u: &[f64], h: f64, l: u32) -> f64 {
    let (mut inner, mut prev, mut outer) = (0.0, 0.0, 0.0);
    for (i, &ui) in u.iter().enumerate() {
        let r = (i + 1) as f64 * h;
        let g = ui * r.powi(l as i32 + 1);
        inner += 0.5 * h * (prev + g);
        prev = g;
        outer += ui * r.powi(-(l as i32)) * inner;
    }
    2.0 * h * outer / (2 * l + 1) as f64
}

fn grid_moment(u: &[f64], h: f64, l: u32, k_power: i32) -> Result<f64> {
    if k_power != -2 && k_power != 2 {
        return Err(Error::Domain(format!("moment power {k_power} not in {{-2, 2}}")));
    }
    let f = |i: usize| {
        let r = (i + 1) as f64 * h;
        u[i] * u[i] * r.powi(k_power)
    };
    let interior: f64 = (0..u.len()).map(f).sum();
    let origin = if k_power == -2 && l == 0 { 2.0 * f(0) - f(1) } else { 0.0 };
    Ok(h * (interior + 0.5 * origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn green_inverse_momentum_of_free_states() {
        // A wide sphere is the free oscillator, self-reciprocal at omega = 1:
        // <p^-2> = <r^-2> = 2/(2l+1) for n_r = 0.
        let s = fd_solve(&StateSpec::cho(0, 1, 0, 1.0, 12.0).unwrap(), 4000, 1).unwrap();
        let v = inverse_momentum_moment(&s, 0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-7, "{v}");
        let s = fd_solve(&StateSpec::cho(0, 0, 0, 1.0, 12.0).unwrap(), 4000, 1).unwrap();
        assert!((inverse_momentum_moment(&s, 0).unwrap() - 2.0).abs() < 1e-7);
    }

    #[test]
    fn small_sphere_ground_state() {
        let s = fd_solve(&StateSpec::cho(0, 0, 0, 1.0, 0.5).unwrap(), 4000, 1).unwrap();
        assert!((s.energies[0] / 19.77453418 - 1.0).abs() < 1e-5);
        assert!((s.extrapolated[0] / 19.77453418 - 1.0).abs() < 1e-8);
        let r2 = trapezoid_moment(&s, 0, 2).unwrap();
        assert!((4.0 * r2 / 0.28253330127 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn vanishing_frequency_gives_the_box() {
        let s = fd_solve(&StateSpec::cho(0, 0, 0, 1e-6, 1.0).unwrap(), 2000, 1).unwrap();
        assert!((s.extrapolated[0] - PI * PI / 2.0).abs() < 1e-6);
        // <r^2> of sqrt(2) pi j0(pi r) on the unit ball: 1/3 - 1/(2 pi^2)
        let r2 = trapezoid_moment(&s, 0, 2).unwrap();
        assert!((r2 - (1.0 / 3.0 - 0.5 / (PI * PI))).abs() < 1e-6);
    }

    #[test]
    fn wide_sphere_limits() {
        let s = fd_solve(&StateSpec::cho(0, 1, 0, 1.0, 30.0).unwrap(), 4000, 1).unwrap();
        assert!((s.extrapolated[0] - 2.5).abs() < 1e-7);
        let s = fd_solve(&StateSpec::cho(0, 0, 0, 1.0, 30.0).unwrap(), 4000, 1).unwrap();
        let r2 = trapezoid_moment(&s, 0, 2).unwrap();
        assert!((r2 - 1.5).abs() < 1e-4, "{r2}");
        let r2 = extrapolated_moment(&s, 0, 2).unwrap();
        assert!((r2 - 1.5).abs() < 1e-6, "{r2}");
    }

    #[test]
    fn second_order_convergence() {
        let spec = StateSpec::cho(0, 2, 0, 1.0, 1.0).unwrap();
        let exact = crate::eigensolve::solve_energy(&spec).unwrap().energy;
        let s = fd_solve(&spec, 2000, 1).unwrap();
        let ratio = (s.energies[0] - exact) / (s.fine_energies[0] - exact);
        assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn vectors_are_orthonormal() {
        let s = fd_solve(&StateSpec::cho(0, 1, 0, 1.0, 2.0).unwrap(), 2000, 4).unwrap();
        assert!(s.energies.windows(2).all(|w| w[0] < w[1]));
        for i in 0..4 {
            for j in 0..4 {
                let dot: f64 = s.spacing * s.vectors[i].iter().zip(&s.vectors[j]).map(|(a, b)| a * b).sum::<f64>();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-8, "{i} {j} {dot}");
            }
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let spec = StateSpec::cho(0, 0, 0, 1.0, 1.0).unwrap();
        assert!(fd_solve(&spec, 100, 1).is_err());
        assert!(fd_solve(&spec, 2000, 11).is_err());
        assert!(fd_solve(&StateSpec::fho(0, 0, 0, 1.0).unwrap(), 2000, 1).is_err());
    }
}
