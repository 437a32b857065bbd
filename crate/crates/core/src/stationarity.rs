//! The four-way dynamics comparison on a lattice configuration.
//!
//! What is measured, on the given potentials and sources:
//!
//! * (a) ‖grad Re S_complex − grad S_quadratic‖ — the complex action's real
//!   part carries exactly the quadratic dynamics;
//! * (b) ‖grad S_complexified-nonlinear − grad S_complex‖ — the complexified
//!   nonlinear action, differentiated through its determinant, is the
//!   complex action: no nonlinearity survives;
//! * (c) ‖grad S_nonlinear − grad S_quadratic‖ as the field amplitude
//!   sweeps, with its log-log slope — the *real* nonlinear theory deviates
//!   at third order in the amplitude;
//! * (d) the gradient norm of Im S_complex, with a refinement trend; this
//!   discretization happens to annihilate it to roundoff, which is reported,
//!   not asserted.

use serde::Serialize;

use crate::error::LagrangianError;
use crate::lagrangian::{BiParameter, LagrangianKind};
use crate::lattice::{
    action_gradient, ActionPart, PotentialGradient, PotentialLattice, SourceLattice,
};
use crate::scalar::{r, RealScalar};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepPoint<R> {
    pub amplitude: R,
    pub deviation_l2: R,
}

#[derive(Clone, Debug, Serialize)]
pub struct StationarityReport<R> {
    /// ‖grad S_quadratic‖∞, the scale the equalities are judged against.
    pub maxwell_grad_scale: R,
    /// (a): ‖grad Re S_complex − grad S_quadratic‖∞.
    pub re_complex_vs_maxwell: R,
    /// (b): ‖grad S_complexified − grad S_complex‖∞, real part.
    pub bic_vs_complex_real: R,
    /// (b): the same for the imaginary part.
    pub bic_vs_complex_imag: R,
    /// (c): deviation of the nonlinear gradient from the quadratic one per
    /// amplitude.
    pub bi_sweep: Vec<SweepPoint<R>>,
    /// (c): least-squares log-log slope of the sweep (≈ 3).
    pub bi_slope: R,
    /// (d): ‖grad Im S_complex‖∞ on the given configuration.
    pub im_complex_grad_norm: R,
    /// (d): the same norm on refined samplings of the same closed-form
    /// potentials, as (node count, norm).
    pub im_refinement: Vec<(usize, R)>,
}

/// Build the report. `sweep_amplitudes` are target field amplitudes for (c)
/// (zero sources there; the coupling cancels in the difference anyway);
/// `refinements` are finer samplings of the same potentials for (d).
pub fn stationarity_equivalence_report<R: RealScalar>(
    p: &PotentialLattice<R>,
    s: &SourceLattice<R>,
    k: &BiParameter<R>,
    sweep_amplitudes: &[R],
    refinements: &[PotentialLattice<R>],
) -> Result<StationarityReport<R>, LagrangianError> {
    let grad_maxwell = action_gradient(p, s, LagrangianKind::Maxwell, k, ActionPart::Real)?;
    let grad_re_c = action_gradient(p, s, LagrangianKind::Complex, k, ActionPart::Real)?;
    let grad_im_c = action_gradient(p, s, LagrangianKind::Complex, k, ActionPart::Imag)?;
    let grad_bic_re = action_gradient(p, s, LagrangianKind::ComplexBi, k, ActionPart::Real)?;
    let grad_bic_im = action_gradient(p, s, LagrangianKind::ComplexBi, k, ActionPart::Imag)?;

    let re_complex_vs_maxwell = grad_re_c.sub(&grad_maxwell).max_abs();
    let bic_vs_complex_real = grad_bic_re.sub(&grad_re_c).max_abs();
    let bic_vs_complex_imag = grad_bic_im.sub(&grad_im_c).max_abs();

    // (c): amplitude sweep on the same potential shape, sources off
    let zero_sources = SourceLattice::zero(&p.spec);
    let base_amplitude = p.field_amplitude();
    let mut bi_sweep = Vec::with_capacity(sweep_amplitudes.len());
    for &amp in sweep_amplitudes {
        let scaled = p.scaled(amp / base_amplitude);
        let g_bi = action_gradient(
            &scaled,
            &zero_sources,
            LagrangianKind::BornInfeld,
            k,
            ActionPart::Real,
        )?;
        let g_mx = action_gradient(
            &scaled,
            &zero_sources,
            LagrangianKind::Maxwell,
            k,
            ActionPart::Real,
        )?;
        bi_sweep.push(SweepPoint {
            amplitude: amp,
            deviation_l2: g_bi.sub(&g_mx).norm_l2(),
        });
    }
    let bi_slope = fit_loglog_slope(&bi_sweep);

    let mut im_refinement = vec![(p.spec.node_count(), grad_im_c.max_abs())];
    for refined in refinements {
        let g: PotentialGradient<R> = action_gradient(
            refined,
            &SourceLattice::zero(&refined.spec),
            LagrangianKind::Complex,
            k,
            ActionPart::Imag,
        )?;
        im_refinement.push((refined.spec.node_count(), g.max_abs()));
    }

    Ok(StationarityReport {
        maxwell_grad_scale: grad_maxwell.max_abs(),
        re_complex_vs_maxwell,
        bic_vs_complex_real,
        bic_vs_complex_imag,
        bi_sweep,
        bi_slope,
        im_complex_grad_norm: grad_im_c.max_abs(),
        im_refinement,
    })
}

fn fit_loglog_slope<R: RealScalar>(sweep: &[SweepPoint<R>]) -> R {
    let pts: Vec<(R, R)> = sweep
        .iter()
        .filter(|p| p.deviation_l2 > R::zero())
        .map(|p| (p.amplitude.ln(), p.deviation_l2.ln()))
        .collect();
    if pts.len() < 2 {
        return R::zero();
    }
    let n = r::<R>(pts.len() as f64);
    let sx = pts.iter().map(|p| p.0).fold(R::zero(), |a, b| a + b);
    let sy = pts.iter().map(|p| p.1).fold(R::zero(), |a, b| a + b);
    let sxx = pts.iter().map(|p| p.0 * p.0).fold(R::zero(), |a, b| a + b);
    let sxy = pts.iter().map(|p| p.0 * p.1).fold(R::zero(), |a, b| a + b);
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Smooth random periodic potentials from a handful of Fourier modes; the
/// same closed form samples consistently at any lattice resolution, which is
/// what the refinement trend needs.
pub fn fourier_potentials<R: RealScalar>(
    spec: crate::lattice::LatticeSpec<R>,
    seed: u64,
    amplitude: R,
) -> PotentialLattice<R> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // a few low modes per component: coefficient, integer wave 4-vector, phase
    let mut modes = |count: usize| -> Vec<(f64, [i32; 4], f64)> {
        (0..count)
            .map(|_| {
                (
                    rng.gen_range(-1.0..1.0),
                    [
                        rng.gen_range(-2..=2),
                        rng.gen_range(-2..=2),
                        rng.gen_range(-2..=2),
                        rng.gen_range(-2..=2),
                    ],
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect()
    };
    let phi_modes = modes(4);
    let a_modes: [Vec<(f64, [i32; 4], f64)>; 3] = [modes(4), modes(4), modes(4)];

    let lengths = spec.lengths();
    let eval = |modes: &[(f64, [i32; 4], f64)], x: &[R; 4]| -> R {
        let mut acc = R::zero();
        for (c, n, phase) in modes {
            let mut arg = r::<R>(*phase);
            for axis in 0..4 {
                arg += r::<R>(n[axis] as f64) * r::<R>(std::f64::consts::TAU) * x[axis]
                    / lengths[axis];
            }
            acc += r::<R>(*c) * arg.cos();
        }
        acc * amplitude
    };

    PotentialLattice::from_fn(
        spec,
        |x| eval(&phi_modes, &x),
        |x| {
            crate::vec3::Vec3::new(
                eval(&a_modes[0], &x),
                eval(&a_modes[1], &x),
                eval(&a_modes[2], &x),
            )
        },
    )
}
