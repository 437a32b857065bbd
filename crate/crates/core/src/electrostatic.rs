//! Point-charge electrostatics of the nonlinear theory.
//!
//! Spherical symmetry reduces the problem to radial profiles: the
//! displacement D(r) = q/(4πr²) solves the Gauss law exactly, and the
//! constitutive law E = D/√(1 + D²/k²) — the inverse of
//! D = ∂L/∂E = E/√(1 − E²/k²) at B = 0 — caps the field at k. The energy
//! density u = D·E − L(E) = k²(√(1 + D²/k²) − 1) then makes the total
//! electrostatic energy finite where the quadratic theory's ½D² diverges
//! as 1/r_min. Everything is one-dimensional quadrature; no lattice noise
//! enters the finiteness claim.
//!
//! Natural units with ∇·E = ρ; the 4π appears only through D(r).

use serde::Serialize;

use crate::error::{DomainError, QuadratureError};
use crate::lagrangian::BiParameter;
use crate::quad::adaptive_simpson_log;
use crate::scalar::{r, RealScalar};

/// A point charge, the field scale, and the radii to sample.
#[derive(Clone, Debug)]
pub struct ChargeProfile<R> {
    pub q: R,
    pub k: BiParameter<R>,
    pub r_samples: Vec<R>,
}

impl<R: RealScalar> ChargeProfile<R> {
    pub fn new(q: R, k: BiParameter<R>, r_samples: Vec<R>) -> Result<Self, DomainError> {
        if !q.is_finite() {
            return Err(DomainError::NonFinite);
        }
        let increasing = r_samples.windows(2).all(|w| w[0] < w[1]);
        if r_samples.is_empty() || !increasing || r_samples[0] <= R::zero() {
            return Err(DomainError::BadRadii);
        }
        Ok(ChargeProfile { q, k, r_samples })
    }
}

/// The characteristic radius r₀ = √(q/(4πk)) where D(r₀) = k.
pub fn saturation_radius<R: RealScalar>(q: R, k: &BiParameter<R>) -> R {
    (q.abs() / (r::<R>(4.0) * R::PI() * k.k())).sqrt()
}

/// D(r) = q/(4πr²).
pub fn displacement<R: RealScalar>(q: R, radius: R) -> R {
    q / (r::<R>(4.0) * R::PI() * radius * radius)
}

/// Constitutive law D(E) = E/√(1 − E²/k²), from differentiating the
/// invariant-form density at B = 0.
pub fn d_of_e<R: RealScalar>(e: R, k: &BiParameter<R>) -> R {
    e / (R::one() - (e * e) / k.k_squared()).sqrt()
}

/// Inverse constitutive law E(D) = D/√(1 + D²/k²); satisfies |E| < k.
pub fn e_of_d<R: RealScalar>(d: R, k: &BiParameter<R>) -> R {
    d / (R::one() + (d * d) / k.k_squared()).sqrt()
}

/// Energy density u = D·E − L(E) in closed form: k²(√(1 + D²/k²) − 1),
/// written cancellation-free for small D/k.
pub fn energy_density_bi<R: RealScalar>(d: R, k: &BiParameter<R>) -> R {
    let x_sq = (d * d) / k.k_squared();
    k.k_squared() * x_sq / (R::one() + (R::one() + x_sq).sqrt())
}

/// Quadratic-theory energy density ½D².
pub fn energy_density_maxwell<R: RealScalar>(d: R) -> R {
    d * d / r::<R>(2.0)
}

/// One radius of the profile: (r, D, E, u, u_quadratic).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PointChargeSample<R> {
    pub radius: R,
    pub d: R,
    pub e: R,
    pub u_bi: R,
    pub u_maxwell: R,
}

/// Radial profile of the point-charge field and energy densities.
pub fn bi_pointcharge_profile<R: RealScalar>(c: &ChargeProfile<R>) -> Vec<PointChargeSample<R>> {
    c.r_samples
        .iter()
        .map(|&radius| {
            let d = displacement(c.q, radius);
            PointChargeSample {
                radius,
                d,
                e: e_of_d(d, &c.k),
                u_bi: energy_density_bi(d, &c.k),
                u_maxwell: energy_density_maxwell(d),
            }
        })
        .collect()
}

/// Total energies over a radial shell [r_min, r_max].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ShellEnergies<R> {
    pub r_min: R,
    pub r_max: R,
    pub u_bi: R,
    pub u_maxwell: R,
    /// The quadratic theory's closed form q²/(8π)(1/r_min − 1/r_max),
    /// kept beside the quadrature value as its oracle.
    pub u_maxwell_closed: R,
}

/// U = ∫ u(r)·4πr² dr on [r_min, r_max] by adaptive quadrature in log r.
pub fn bi_electrostatic_energy<R: RealScalar>(
    q: R,
    k: &BiParameter<R>,
    r_min: R,
    r_max: R,
) -> Result<ShellEnergies<R>, QuadratureError> {
    assert!(R::zero() < r_min && r_min < r_max, "need 0 < r_min < r_max");
    let four_pi = r::<R>(4.0) * R::PI();
    let closed = q * q / (r::<R>(8.0) * R::PI()) * (R::one() / r_min - R::one() / r_max);
    if q == R::zero() {
        return Ok(ShellEnergies {
            r_min,
            r_max,
            u_bi: R::zero(),
            u_maxwell: R::zero(),
            u_maxwell_closed: closed,
        });
    }

    // absolute tolerance from the known analytic scales
    let core = four_pi * k.k_squared() * saturation_radius(q, k).powi(3);
    let scale = closed.abs() + core + R::one();
    let tol = r::<R>(1e-13) * scale;

    let u_bi = adaptive_simpson_log(
        |radius: R| four_pi * radius * radius * energy_density_bi(displacement(q, radius), k),
        r_min,
        r_max,
        tol,
        60,
    )?;
    let u_maxwell = adaptive_simpson_log(
        |radius: R| four_pi * radius * radius * energy_density_maxwell(displacement(q, radius)),
        r_min,
        r_max,
        tol,
        60,
    )?;
    Ok(ShellEnergies {
        r_min,
        r_max,
        u_bi,
        u_maxwell,
        u_maxwell_closed: closed,
    })
}

/// One row of the shrinking-r_min series.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvergenceRow<R> {
    pub r_min: R,
    pub u_bi: R,
    pub u_maxwell: R,
    /// |U_BI(this r_min) − U_BI(previous r_min)|.
    pub delta_u_bi: R,
}

/// The finiteness study: energies over [r_min, r_max] for r_min shrinking by
/// decades below r₀.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceStudy<R> {
    pub r0: R,
    pub r_max: R,
    pub rows: Vec<ConvergenceRow<R>>,
    /// Log-log slope of U_Maxwell against r_min (−1 for the Coulomb
    /// divergence).
    pub maxwell_slope: R,
    /// Last |ΔU_BI| over the final U_BI.
    pub final_relative_delta: R,
    /// True when ΔU_BI shrinks at least geometrically and the final
    /// relative delta is below 1e−3.
    pub bi_converged: bool,
}

/// Run the series r_min ∈ {10⁻¹, …, 10⁻ᵈ}·r₀ with r_max = 100·r₀.
pub fn convergence_study<R: RealScalar>(
    q: R,
    k: &BiParameter<R>,
    decades: usize,
) -> Result<ConvergenceStudy<R>, QuadratureError> {
    let r0 = saturation_radius(q, k);
    let r_max = r::<R>(100.0) * r0;
    let mut rows: Vec<ConvergenceRow<R>> = Vec::with_capacity(decades);
    for d in 1..=decades {
        let r_min = r0 * r::<R>(10f64.powi(-(d as i32)));
        let shell = bi_electrostatic_energy(q, k, r_min, r_max)?;
        let delta = rows
            .last()
            .map(|prev: &ConvergenceRow<R>| (shell.u_bi - prev.u_bi).abs())
            .unwrap_or(R::zero());
        rows.push(ConvergenceRow {
            r_min,
            u_bi: shell.u_bi,
            u_maxwell: shell.u_maxwell,
            delta_u_bi: delta,
        });
    }

    // least-squares slope of ln U_Maxwell vs ln r_min
    let pts: Vec<(R, R)> = rows
        .iter()
        .map(|row| (row.r_min.ln(), row.u_maxwell.ln()))
        .collect();
    let n = r::<R>(pts.len() as f64);
    let sx = pts.iter().map(|p| p.0).fold(R::zero(), |a, b| a + b);
    let sy = pts.iter().map(|p| p.1).fold(R::zero(), |a, b| a + b);
    let sxx = pts.iter().map(|p| p.0 * p.0).fold(R::zero(), |a, b| a + b);
    let sxy = pts.iter().map(|p| p.0 * p.1).fold(R::zero(), |a, b| a + b);
    let maxwell_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    let last = rows.last().expect("at least one decade");
    let final_relative_delta = last.delta_u_bi / last.u_bi.abs().max(R::min_positive_value());
    let geometric = rows
        .windows(2)
        .skip(1)
        .all(|w| w[1].delta_u_bi <= w[0].delta_u_bi * r::<R>(0.5));
    Ok(ConvergenceStudy {
        r0,
        r_max,
        rows,
        maxwell_slope,
        final_relative_delta,
        bi_converged: geometric && final_relative_delta < r::<R>(1e-3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::{l_bi_invariant, FieldPoint};
    use crate::vec3::Vec3;
    use approx::assert_relative_eq;

    fn k(v: f64) -> BiParameter<f64> {
        BiParameter::new(v).unwrap()
    }

    #[test]
    fn constitutive_round_trip() {
        let kk = k(2.0);
        // the inversion is well-conditioned while (k/D)² stays well above
        // machine epsilon; huge D is covered by the saturation test instead
        for d in [1e-6, 0.1, 1.0, 20.0] {
            let e = e_of_d(d, &kk);
            assert!(e.abs() < 2.0, "saturation violated at d = {d}");
            assert_relative_eq!(d_of_e(e, &kk), d, max_relative = 1e-12);
        }
        assert!(e_of_d(1e8, &kk).abs() <= 2.0);
    }

    #[test]
    fn constitutive_law_matches_density_derivative() {
        // D = ∂L/∂E at B = 0, checked against a finite difference
        let kk = k(1.5);
        let h = 1e-7;
        for e in [0.1, 0.5, 1.0] {
            let l = |ev: f64| {
                let p = FieldPoint::new(Vec3::new(ev, 0.0, 0.0), Vec3::zero()).unwrap();
                l_bi_invariant(&p, &kk).unwrap().re()
            };
            let fd = (l(e + h) - l(e - h)) / (2.0 * h);
            assert_relative_eq!(d_of_e(e, &kk), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn field_saturates_at_small_radius() {
        let kk = k(1.0);
        // E → k·(1 − ½(k/D)² + …) as D → ∞
        for d in [1e3, 1e6] {
            let e = e_of_d(d, &kk);
            let expansion = 1.0 - 0.5 / (d * d);
            assert_relative_eq!(e, expansion, max_relative = 1e-9);
        }
        // and E/D → 1 at large radius: within 1e−6 at D/k = 1e−3
        let ratio = e_of_d(1e-3, &kk) / 1e-3;
        assert!((ratio - 1.0).abs() < 1e-6);
    }

    #[test]
    fn profile_is_saturating_and_monotone() {
        let radii: Vec<f64> = (1..40).map(|i| 1e-4 * 1.6f64.powi(i)).collect();
        let profile = bi_pointcharge_profile(&ChargeProfile::new(1.0, k(1.0), radii).unwrap());
        for pair in profile.windows(2) {
            assert!(pair[0].e > pair[1].e, "E not decreasing in r");
        }
        for s in &profile {
            assert!(s.e.abs() < 1.0, "|E| = {} ≥ k", s.e);
            // Coulomb limit bound: |E/D − 1| ≤ (D/k)²/2 (1 + 10%)
            let rel = (s.e / s.d - 1.0).abs();
            let bound = 0.5 * (s.d * s.d) * 1.1;
            if s.d < 0.1 {
                assert!(rel <= bound, "r = {}: {rel} > {bound}", s.radius);
            }
        }
    }

    #[test]
    fn maxwell_energy_matches_coulomb_closed_form() {
        let shell = bi_electrostatic_energy(1.0, &k(1.0), 1e-3, 10.0).unwrap();
        assert_relative_eq!(
            shell.u_maxwell,
            shell.u_maxwell_closed,
            max_relative = 1e-10
        );
    }

    #[test]
    fn zero_charge_zero_energy() {
        let shell = bi_electrostatic_energy(0.0, &k(1.0), 0.1, 10.0).unwrap();
        assert_eq!(shell.u_bi, 0.0);
        assert_eq!(shell.u_maxwell, 0.0);
    }

    #[test]
    fn finiteness_study() {
        let study = convergence_study(1.0, &k(1.0), 5).unwrap();
        assert!(study.bi_converged, "{study:?}");
        assert!(
            (study.maxwell_slope + 1.0).abs() < 0.05,
            "slope {}",
            study.maxwell_slope
        );
        assert!(study.final_relative_delta < 1e-3);
    }
}
