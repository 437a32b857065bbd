//! Time-domain evolution of the complex field vector F = E + iB.
//!
//! The first-order system ∂F/∂t = −i∇×F − j is integrated by classical RK4
//! with either exact spectral curls ([`RsScheme::Rk4Spectral`]) or centered
//! differences ([`RsScheme::Rk4Fd`]). As an independent oracle, the same
//! physics runs as a staggered two-field scheme ([`TwoFieldState`]): E on
//! edges at integer steps, B on faces at half steps, the classical leapfrog
//! arrangement. The two discretizations share nothing but the continuum
//! limit, so their agreement at second order is a genuine cross-check.
//!
//! Stability bounds (c = 1): RK4's imaginary-axis interval gives
//! dt ≤ 2√2/|k|max for the spectral curl (|k|max the largest resolved
//! wavenumber) and dt ≤ 2√2/√(Σ 1/d²) for centered differences; the
//! leapfrog bound is dt ≤ 1/√(Σ 1/d²).

use num_complex::Complex;
use rustfft::FftNum;

use crate::error::SolverError;
use crate::scalar::{r, RealScalar};
use crate::spectral::{Grid3, SpectralOps};
use crate::vec3::Vec3;

/// Time-dependent sources for the evolution: a real current density and the
/// charge density tracked by the Gauss constraint.
pub trait RsSources<R: RealScalar> {
    fn current(&self, grid: &Grid3<R>, t: R) -> Vec<Vec3<R>>;
    fn charge(&self, grid: &Grid3<R>, t: R) -> Vec<R>;
}

/// The complex field on a periodic spatial grid at one instant.
#[derive(Clone, Debug)]
pub struct RsState<R> {
    pub grid: Grid3<R>,
    pub f: Vec<Vec3<Complex<R>>>,
    pub t: R,
}

impl<R: RealScalar> RsState<R> {
    pub fn zero(grid: Grid3<R>) -> Self {
        RsState {
            grid,
            f: vec![Vec3::zero(); grid.node_count()],
            t: R::zero(),
        }
    }

    /// Sample a closed-form field F(x, y, z, t) at the grid nodes.
    pub fn from_fn(
        grid: Grid3<R>,
        t: R,
        mut f: impl FnMut(R, R, R, R) -> Vec3<Complex<R>>,
    ) -> Self {
        let values = (0..grid.node_count())
            .map(|idx| {
                let (x, y, z) = grid.coords(idx);
                f(x, y, z, t)
            })
            .collect();
        RsState { grid, f: values, t }
    }
}

/// ½ Σ |F|² dV = ½ Σ (E² + B²) dV.
pub fn energy<R: RealScalar>(state: &RsState<R>) -> R {
    let dv = state.grid.cell_volume();
    let sum = state
        .f
        .iter()
        .map(|v| v.x.norm_sqr() + v.y.norm_sqr() + v.z.norm_sqr())
        .fold(R::zero(), |a, b| a + b);
    sum * dv / r::<R>(2.0)
}

/// L² distance between two fields on the same grid: √(Σ|a−b|² dV).
pub fn l2_distance<R: RealScalar>(
    grid: &Grid3<R>,
    a: &[Vec3<Complex<R>>],
    b: &[Vec3<Complex<R>>],
) -> R {
    let dv = grid.cell_volume();
    let sum = a
        .iter()
        .zip(b)
        .map(|(u, v)| (u.x - v.x).norm_sqr() + (u.y - v.y).norm_sqr() + (u.z - v.z).norm_sqr())
        .fold(R::zero(), |a, b| a + b);
    (sum * dv).sqrt()
}

/// Time integrator / spatial operator pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsScheme {
    Rk4Spectral,
    Rk4Fd,
}

impl RsScheme {
    pub fn name(&self) -> &'static str {
        match self {
            RsScheme::Rk4Spectral => "rk4-spectral",
            RsScheme::Rk4Fd => "rk4-fd",
        }
    }
}

/// Largest stable dt for the scheme on this grid (c = 1).
pub fn stability_limit<R: RealScalar + FftNum>(scheme: RsScheme, grid: &Grid3<R>) -> R {
    let rk4_interval = r::<R>(2.0) * r::<R>(2.0).sqrt();
    match scheme {
        RsScheme::Rk4Spectral => {
            let ops = SpectralOps::new(*grid);
            rk4_interval / ops.max_wavenumber()
        }
        RsScheme::Rk4Fd => {
            let inv = R::one() / (grid.dx * grid.dx)
                + R::one() / (grid.dy * grid.dy)
                + R::one() / (grid.dz * grid.dz);
            rk4_interval / inv.sqrt()
        }
    }
}

/// Per-step conservation diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct StepDiagnostics<R> {
    pub t: R,
    pub energy: R,
    /// max-norm of ∇·F − ρ under the scheme's own divergence operator.
    pub gauss_residual: R,
}

#[derive(Clone, Debug)]
pub struct RsTrajectory<R> {
    pub snapshots: Vec<RsState<R>>,
    pub diagnostics: Vec<StepDiagnostics<R>>,
    pub final_state: RsState<R>,
}

/// Evolution controls. `snapshot_stride = 0` keeps only the initial and
/// final states.
#[derive(Clone, Copy, Debug)]
pub struct EvolveOptions<R> {
    pub dt: R,
    pub steps: usize,
    pub scheme: RsScheme,
    pub snapshot_stride: usize,
    pub source_continuity_tol: R,
}

impl<R: RealScalar> EvolveOptions<R> {
    pub fn new(dt: R, steps: usize, scheme: RsScheme) -> Self {
        EvolveOptions {
            dt,
            steps,
            scheme,
            snapshot_stride: 0,
            source_continuity_tol: r(1e-8),
        }
    }
}

struct Operators<'a, R: RealScalar + FftNum> {
    grid: &'a Grid3<R>,
    spectral: Option<SpectralOps<R>>,
}

impl<'a, R: RealScalar + FftNum> Operators<'a, R> {
    fn curl(&self, f: &[Vec3<Complex<R>>]) -> Vec<Vec3<Complex<R>>> {
        match &self.spectral {
            Some(ops) => ops.curl(f),
            None => self.grid.curl_fd(f),
        }
    }

    fn divergence(&self, f: &[Vec3<Complex<R>>]) -> Vec<Complex<R>> {
        match &self.spectral {
            Some(ops) => ops.divergence(f),
            None => self.grid.divergence_fd(f),
        }
    }
}

/// Integrate ∂F/∂t = −i∇×F − j from the given state.
///
/// Errors: `UnstableStep` when dt exceeds the scheme's bound,
/// `NonconservedSources` when the supplied sources violate discrete
/// continuity at the initial time.
pub fn evolve_rs<R: RealScalar + FftNum>(
    s0: &RsState<R>,
    sources: Option<&dyn RsSources<R>>,
    options: &EvolveOptions<R>,
) -> Result<RsTrajectory<R>, SolverError> {
    let grid = s0.grid;
    let limit = stability_limit(options.scheme, &grid);
    if options.dt > limit {
        return Err(SolverError::UnstableStep {
            dt: options.dt.to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }

    let ops = Operators {
        grid: &grid,
        spectral: match options.scheme {
            RsScheme::Rk4Spectral => Some(SpectralOps::new(grid)),
            RsScheme::Rk4Fd => None,
        },
    };

    if let Some(src) = sources {
        let dt = options.dt;
        let rho_plus = src.charge(&grid, s0.t + dt);
        let rho_minus = src.charge(&grid, s0.t - dt);
        let j: Vec<Vec3<Complex<R>>> = src
            .current(&grid, s0.t)
            .iter()
            .map(|v| v.map(|c| Complex::new(*c, R::zero())))
            .collect();
        let div_j = ops.divergence(&j);
        let mut residual = R::zero();
        let mut scale = R::one();
        for idx in 0..grid.node_count() {
            let drho_dt = (rho_plus[idx] - rho_minus[idx]) / (dt + dt);
            residual = residual.max((drho_dt + div_j[idx].re).abs());
            scale = scale.max(drho_dt.abs()).max(div_j[idx].re.abs());
        }
        if residual > options.source_continuity_tol * scale {
            return Err(SolverError::NonconservedSources {
                residual: residual.to_f64().unwrap_or(f64::NAN),
                tolerance: (options.source_continuity_tol * scale)
                    .to_f64()
                    .unwrap_or(f64::NAN),
            });
        }
    }

    let minus_i = Complex::new(R::zero(), -R::one());
    let rhs = |f: &[Vec3<Complex<R>>], t: R| -> Vec<Vec3<Complex<R>>> {
        let mut out: Vec<Vec3<Complex<R>>> = ops
            .curl(f)
            .into_iter()
            .map(|v| v.map(|c| minus_i * c))
            .collect();
        if let Some(src) = sources {
            let j = src.current(&grid, t);
            for (o, jv) in out.iter_mut().zip(&j) {
                o.x -= Complex::new(jv.x, R::zero());
                o.y -= Complex::new(jv.y, R::zero());
                o.z -= Complex::new(jv.z, R::zero());
            }
        }
        out
    };

    let n = grid.node_count();
    let axpy = |f: &[Vec3<Complex<R>>], k: &[Vec3<Complex<R>>], a: R| -> Vec<Vec3<Complex<R>>> {
        let ca = Complex::new(a, R::zero());
        (0..n)
            .map(|i| {
                Vec3::new(
                    f[i].x + ca * k[i].x,
                    f[i].y + ca * k[i].y,
                    f[i].z + ca * k[i].z,
                )
            })
            .collect()
    };

    let diag = |f: &RsState<R>| -> StepDiagnostics<R> {
        let div = ops.divergence(&f.f);
        let rho = sources
            .map(|s| s.charge(&grid, f.t))
            .unwrap_or_else(|| vec![R::zero(); n]);
        let gauss = (0..n)
            .map(|i| (div[i] - Complex::new(rho[i], R::zero())).norm())
            .fold(R::zero(), R::max);
        StepDiagnostics {
            t: f.t,
            energy: energy(f),
            gauss_residual: gauss,
        }
    };

    let mut state = s0.clone();
    let mut snapshots = vec![state.clone()];
    let mut diagnostics = vec![diag(&state)];
    let dt = options.dt;
    let half = dt / r::<R>(2.0);
    let sixth = dt / r::<R>(6.0);

    for step in 0..options.steps {
        let k1 = rhs(&state.f, state.t);
        let k2 = rhs(&axpy(&state.f, &k1, half), state.t + half);
        let k3 = rhs(&axpy(&state.f, &k2, half), state.t + half);
        let k4 = rhs(&axpy(&state.f, &k3, dt), state.t + dt);
        let two = r::<R>(2.0);
        for i in 0..n {
            let incr = Vec3::new(
                k1[i].x + (k2[i].x + k3[i].x).scale(two) + k4[i].x,
                k1[i].y + (k2[i].y + k3[i].y).scale(two) + k4[i].y,
                k1[i].z + (k2[i].z + k3[i].z).scale(two) + k4[i].z,
            );
            state.f[i].x += incr.x.scale(sixth);
            state.f[i].y += incr.y.scale(sixth);
            state.f[i].z += incr.z.scale(sixth);
        }
        state.t += dt;
        diagnostics.push(diag(&state));
        if options.snapshot_stride > 0 && (step + 1) % options.snapshot_stride == 0 {
            snapshots.push(state.clone());
        }
    }
    if snapshots.last().map(|s| s.t) != Some(state.t) {
        snapshots.push(state.clone());
    }

    Ok(RsTrajectory {
        snapshots,
        diagnostics,
        final_state: state,
    })
}

/// Staggered two-field state: E components on edges at integer times, B
/// components on faces at the following half step.
///
/// Layout (array index (i,j,k) ↔ staggered location):
/// `ex[i,j,k] = E_x(i+½,j,k)`, `ey = E_y(i,j+½,k)`, `ez = E_z(i,j,k+½)`,
/// `bx[i,j,k] = B_x(i,j+½,k+½)`, `by = B_y(i+½,j,k+½)`, `bz = B_z(i+½,j+½,k)`.
#[derive(Clone, Debug)]
pub struct TwoFieldState<R> {
    pub grid: Grid3<R>,
    /// Time of the E arrays; B sits at t + dt/2.
    pub t: R,
    pub e: [Vec<R>; 3],
    pub b: [Vec<R>; 3],
}

impl<R: RealScalar> TwoFieldState<R> {
    /// Sample closed-form fields at their staggered locations: E at time t,
    /// B at t + dt/2.
    pub fn from_fn(
        grid: Grid3<R>,
        t: R,
        dt: R,
        mut e_fn: impl FnMut(R, R, R, R) -> Vec3<R>,
        mut b_fn: impl FnMut(R, R, R, R) -> Vec3<R>,
    ) -> Self {
        let n = grid.node_count();
        let half = r::<R>(0.5);
        let mut e = [vec![R::zero(); n], vec![R::zero(); n], vec![R::zero(); n]];
        let mut b = [vec![R::zero(); n], vec![R::zero(); n], vec![R::zero(); n]];
        let tb = t + dt * half;
        for idx in 0..n {
            let (x, y, z) = grid.coords(idx);
            let hx = grid.dx * half;
            let hy = grid.dy * half;
            let hz = grid.dz * half;
            e[0][idx] = e_fn(x + hx, y, z, t).x;
            e[1][idx] = e_fn(x, y + hy, z, t).y;
            e[2][idx] = e_fn(x, y, z + hz, t).z;
            b[0][idx] = b_fn(x, y + hy, z + hz, tb).x;
            b[1][idx] = b_fn(x + hx, y, z + hz, tb).y;
            b[2][idx] = b_fn(x + hx, y + hy, z, tb).z;
        }
        TwoFieldState { grid, t, e, b }
    }

    pub fn zero(grid: Grid3<R>) -> Self {
        let n = grid.node_count();
        TwoFieldState {
            grid,
            t: R::zero(),
            e: [vec![R::zero(); n], vec![R::zero(); n], vec![R::zero(); n]],
            b: [vec![R::zero(); n], vec![R::zero(); n], vec![R::zero(); n]],
        }
    }
}

/// Leapfrog stability bound dt ≤ 1/√(1/dx² + 1/dy² + 1/dz²).
pub fn two_field_stability_limit<R: RealScalar>(grid: &Grid3<R>) -> R {
    let inv = R::one() / (grid.dx * grid.dx)
        + R::one() / (grid.dy * grid.dy)
        + R::one() / (grid.dz * grid.dz);
    R::one() / inv.sqrt()
}

#[derive(Clone, Debug)]
pub struct TwoFieldTrajectory<R> {
    pub state: TwoFieldState<R>,
    /// B at the final integer time minus dt/2, for time-averaging.
    pub b_prev: [Vec<R>; 3],
}

/// March the staggered pair: E^{n+1} = E^n + dt(∇×B − j), then
/// B^{n+3/2} = B^{n+1/2} − dt ∇×E^{n+1}, with the current sampled at the
/// staggered E locations and half-step times.
#[allow(clippy::needless_range_loop)] // several parallel arrays share the node index
pub fn evolve_two_field<R: RealScalar>(
    s0: &TwoFieldState<R>,
    mut current: Option<&mut dyn FnMut(R, R, R, R) -> Vec3<R>>,
    dt: R,
    steps: usize,
) -> Result<TwoFieldTrajectory<R>, SolverError> {
    let grid = s0.grid;
    let limit = two_field_stability_limit(&grid);
    if dt > limit {
        return Err(SolverError::UnstableStep {
            dt: dt.to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }

    let n = grid.node_count();
    let mut state = s0.clone();
    let mut b_prev = state.b.clone();
    let half = r::<R>(0.5);

    for _ in 0..steps {
        // E update from the curl of B (backward differences land on edges)
        let t_mid = state.t + dt * half;
        let mut new_e = state.e.clone();
        for idx in 0..n {
            let jm = grid.neighbor(idx, 1, -1);
            let km = grid.neighbor(idx, 2, -1);
            let im = grid.neighbor(idx, 0, -1);
            let curl_x = (state.b[2][idx] - state.b[2][jm]) / grid.dy
                - (state.b[1][idx] - state.b[1][km]) / grid.dz;
            let curl_y = (state.b[0][idx] - state.b[0][km]) / grid.dz
                - (state.b[2][idx] - state.b[2][im]) / grid.dx;
            let curl_z = (state.b[1][idx] - state.b[1][im]) / grid.dx
                - (state.b[0][idx] - state.b[0][jm]) / grid.dy;
            new_e[0][idx] += dt * curl_x;
            new_e[1][idx] += dt * curl_y;
            new_e[2][idx] += dt * curl_z;
        }
        if let Some(j) = current.as_mut() {
            for idx in 0..n {
                let (x, y, z) = grid.coords(idx);
                let hx = grid.dx * half;
                let hy = grid.dy * half;
                let hz = grid.dz * half;
                new_e[0][idx] -= dt * j(x + hx, y, z, t_mid).x;
                new_e[1][idx] -= dt * j(x, y + hy, z, t_mid).y;
                new_e[2][idx] -= dt * j(x, y, z + hz, t_mid).z;
            }
        }
        state.e = new_e;
        state.t += dt;

        // B update from the curl of E (forward differences land on faces)
        b_prev = state.b.clone();
        for idx in 0..n {
            let jp = grid.neighbor(idx, 1, 1);
            let kp = grid.neighbor(idx, 2, 1);
            let ip = grid.neighbor(idx, 0, 1);
            let curl_x = (state.e[2][jp] - state.e[2][idx]) / grid.dy
                - (state.e[1][kp] - state.e[1][idx]) / grid.dz;
            let curl_y = (state.e[0][kp] - state.e[0][idx]) / grid.dz
                - (state.e[2][ip] - state.e[2][idx]) / grid.dx;
            let curl_z = (state.e[1][ip] - state.e[1][idx]) / grid.dx
                - (state.e[0][jp] - state.e[0][idx]) / grid.dy;
            state.b[0][idx] -= dt * curl_x;
            state.b[1][idx] -= dt * curl_y;
            state.b[2][idx] -= dt * curl_z;
        }
    }

    Ok(TwoFieldTrajectory { state, b_prev })
}

/// Second-order interpolation of the staggered pair to the grid nodes as a
/// complex field E + iB at the final integer time (spatial averaging plus
/// time-averaging of the two B half steps).
pub fn collocated_view<R: RealScalar>(traj: &TwoFieldTrajectory<R>) -> Vec<Vec3<Complex<R>>> {
    let grid = traj.state.grid;
    let n = grid.node_count();
    let half = r::<R>(0.5);
    let quarter = r::<R>(0.25);
    (0..n)
        .map(|idx| {
            let im = grid.neighbor(idx, 0, -1);
            let jm = grid.neighbor(idx, 1, -1);
            let km = grid.neighbor(idx, 2, -1);
            let e = Vec3::new(
                (traj.state.e[0][idx] + traj.state.e[0][im]) * half,
                (traj.state.e[1][idx] + traj.state.e[1][jm]) * half,
                (traj.state.e[2][idx] + traj.state.e[2][km]) * half,
            );
            let b_avg = |comp: usize, a1: usize, a2: usize| -> R {
                let m1 = grid.neighbor(idx, a1, -1);
                let m2 = grid.neighbor(idx, a2, -1);
                let m12 = grid.neighbor(m1, a2, -1);
                let face = |b: &[Vec<R>; 3]| {
                    (b[comp][idx] + b[comp][m1] + b[comp][m2] + b[comp][m12]) * quarter
                };
                (face(&traj.state.b) + face(&traj.b_prev)) * half
            };
            let b = Vec3::new(b_avg(0, 1, 2), b_avg(1, 0, 2), b_avg(2, 0, 1));
            Vec3::new(
                Complex::new(e.x, b.x),
                Complex::new(e.y, b.y),
                Complex::new(e.z, b.z),
            )
        })
        .collect()
}

/// The reference plane wave: F(x, t) = (0, cos(x−t), i·cos(x−t)), an exact
/// solution translating along +x.
pub fn plane_wave<R: RealScalar>(x: R, t: R) -> Vec3<Complex<R>> {
    let c = (x - t).cos();
    Vec3::new(
        Complex::new(R::zero(), R::zero()),
        Complex::new(c, R::zero()),
        Complex::new(R::zero(), c),
    )
}

/// Grid tuned to the plane wave: nx nodes across one period in x.
pub fn plane_wave_grid<R: RealScalar>(nx: usize) -> Grid3<R> {
    Grid3 {
        nx,
        ny: 4,
        nz: 4,
        dx: r::<R>(2.0) * R::PI() / r::<R>(nx as f64),
        dy: R::one(),
        dz: R::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    type C = Complex64;

    #[test]
    fn zero_field_stays_zero() {
        let grid = Grid3::cubic(8, 0.5);
        let s0 = RsState::zero(grid);
        let opts = EvolveOptions::new(0.05, 20, RsScheme::Rk4Spectral);
        let traj = evolve_rs(&s0, None, &opts).unwrap();
        for v in &traj.final_state.f {
            assert_eq!(v.x, C::new(0.0, 0.0));
        }
        assert_eq!(traj.diagnostics.last().unwrap().energy, 0.0);
    }

    #[test]
    fn unstable_dt_is_rejected() {
        let grid = plane_wave_grid::<f64>(32);
        let s0 = RsState::zero(grid);
        let limit = stability_limit(RsScheme::Rk4Spectral, &grid);
        let opts = EvolveOptions::new(limit * 2.0, 1, RsScheme::Rk4Spectral);
        assert!(matches!(
            evolve_rs(&s0, None, &opts),
            Err(SolverError::UnstableStep { .. })
        ));

        let s0 = TwoFieldState::<f64>::zero(grid);
        let yee_limit = two_field_stability_limit(&grid);
        assert!(matches!(
            evolve_two_field(&s0, None, yee_limit * 1.5, 1),
            Err(SolverError::UnstableStep { .. })
        ));
    }

    #[test]
    fn plane_wave_advects_spectrally() {
        let grid = plane_wave_grid::<f64>(32);
        let s0 = RsState::from_fn(grid, 0.0, |x, _, _, t| plane_wave(x, t));
        let period = 2.0 * std::f64::consts::PI;
        let steps = 640;
        let opts = EvolveOptions::new(period / steps as f64, steps, RsScheme::Rk4Spectral);
        let traj = evolve_rs(&s0, None, &opts).unwrap();
        let exact = RsState::from_fn(grid, period, |x, _, _, t| plane_wave(x, t));
        let err = l2_distance(&grid, &traj.final_state.f, &exact.f);
        assert!(err <= 1e-8, "L2 error {err:e}");
    }

    #[test]
    fn energy_and_gauss_conserved_in_vacuum() {
        let grid = plane_wave_grid::<f64>(32);
        // standing superposition of two counter-propagating waves
        let s0 = RsState::from_fn(grid, 0.0, |x, _, _, _| {
            Vec3::new(
                C::new(0.0, 0.0),
                C::new(2.0 * x.cos(), 0.0),
                C::new(0.0, 0.0),
            )
        });
        let opts = EvolveOptions::new(0.01, 200, RsScheme::Rk4Spectral);
        let traj = evolve_rs(&s0, None, &opts).unwrap();
        let e0 = traj.diagnostics[0].energy;
        for d in &traj.diagnostics {
            assert!((d.energy - e0).abs() / e0 < 1e-10, "drift at t = {}", d.t);
            assert!(d.gauss_residual < 1e-10);
        }
    }

    #[test]
    fn evolution_is_linear_in_vacuum() {
        let grid = plane_wave_grid::<f64>(16);
        let f1 = RsState::from_fn(grid, 0.0, |x, _, _, t| plane_wave(x, t));
        let f2 = RsState::from_fn(grid, 0.0, |x, _, _, _| {
            Vec3::new(
                C::new((2.0 * x).sin(), 0.3),
                C::new(0.0, x.cos()),
                C::new(0.1, 0.0),
            )
        });
        let alpha = C::new(1.3, -0.4);
        let beta = C::new(-0.7, 0.9);
        let combined = RsState {
            grid,
            t: 0.0,
            f: (0..grid.node_count())
                .map(|i| {
                    Vec3::new(
                        alpha * f1.f[i].x + beta * f2.f[i].x,
                        alpha * f1.f[i].y + beta * f2.f[i].y,
                        alpha * f1.f[i].z + beta * f2.f[i].z,
                    )
                })
                .collect(),
        };
        let opts = EvolveOptions::new(0.02, 50, RsScheme::Rk4Spectral);
        let t1 = evolve_rs(&f1, None, &opts).unwrap().final_state;
        let t2 = evolve_rs(&f2, None, &opts).unwrap().final_state;
        let tc = evolve_rs(&combined, None, &opts).unwrap().final_state;
        for i in 0..grid.node_count() {
            let expect = alpha * t1.f[i].y + beta * t2.f[i].y;
            assert!((tc.f[i].y - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn fd_scheme_agrees_with_spectral_at_truncation_order() {
        let grid = plane_wave_grid::<f64>(32);
        let s0 = RsState::from_fn(grid, 0.0, |x, _, _, t| plane_wave(x, t));
        let opts_s = EvolveOptions::new(0.01, 100, RsScheme::Rk4Spectral);
        let opts_f = EvolveOptions::new(0.01, 100, RsScheme::Rk4Fd);
        let spectral = evolve_rs(&s0, None, &opts_s).unwrap().final_state;
        let fd = evolve_rs(&s0, None, &opts_f).unwrap().final_state;
        let dev = l2_distance(&grid, &spectral.f, &fd.f);
        // centered differences at n = 32: truncation ~ (kh)²/6 per step
        assert!(dev > 1e-6 && dev < 0.1, "deviation {dev:e}");
    }

    #[test]
    fn static_uniform_e_is_unchanged_by_two_field_scheme() {
        let grid = Grid3::cubic(8, 0.5);
        let s0 = TwoFieldState::from_fn(
            grid,
            0.0,
            0.1,
            |_, _, _, _| Vec3::new(1.5f64, -0.5, 2.0),
            |_, _, _, _| Vec3::zero(),
        );
        let traj = evolve_two_field(&s0, None, 0.1, 25).unwrap();
        for idx in 0..grid.node_count() {
            assert!((traj.state.e[0][idx] - 1.5).abs() < 1e-14);
            assert!((traj.state.e[1][idx] + 0.5).abs() < 1e-14);
            assert!((traj.state.e[2][idx] - 2.0).abs() < 1e-14);
            assert_eq!(traj.state.b[0][idx], 0.0);
        }
    }

    #[test]
    fn two_field_plane_wave_matches_rs_solver_at_second_order() {
        let mut deviations = Vec::new();
        for n in [16usize, 32, 64] {
            let grid = plane_wave_grid::<f64>(n);
            let dt = 0.4 * grid.dx;
            let period = 2.0 * std::f64::consts::PI;
            let steps = (period / dt).round() as usize;
            let dt = period / steps as f64;

            let yee0 = TwoFieldState::from_fn(
                grid,
                0.0,
                dt,
                |x, _, _, t| Vec3::new(0.0, (x - t).cos(), 0.0),
                |x, _, _, t| Vec3::new(0.0, 0.0, (x - t).cos()),
            );
            let yee = evolve_two_field(&yee0, None, dt, steps).unwrap();
            let yee_nodes = collocated_view(&yee);

            let rs0 = RsState::from_fn(grid, 0.0, |x, _, _, t| plane_wave(x, t));
            let opts = EvolveOptions::new(dt, steps, RsScheme::Rk4Spectral);
            let rs = evolve_rs(&rs0, None, &opts).unwrap().final_state;

            let dev = (0..grid.node_count())
                .map(|i| {
                    (yee_nodes[i].x - rs.f[i].x)
                        .norm()
                        .max((yee_nodes[i].y - rs.f[i].y).norm())
                        .max((yee_nodes[i].z - rs.f[i].z).norm())
                })
                .fold(0.0, f64::max);
            deviations.push(dev);
        }
        let order1 = (deviations[0] / deviations[1]).log2();
        let order2 = (deviations[1] / deviations[2]).log2();
        assert!(
            (order1 - 2.0).abs() < 0.2 && (order2 - 2.0).abs() < 0.2,
            "orders {order1} {order2}, deviations {deviations:?}"
        );
    }
}


#[cfg(test)]
mod energy_tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn unit_field_on_unit_volume_has_energy_half() {
        // 8³ nodes at spacing 1/8 → unit total volume; F = 1 everywhere
        // along x gives energy ½·|F|²·V = ½
        let grid = Grid3::cubic(8, 0.125);
        let volume = grid.node_count() as f64 * grid.cell_volume();
        let state = RsState {
            grid,
            t: 0.0,
            f: vec![
                Vec3::new(
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                );
                grid.node_count()
            ],
        };
        assert!((energy(&state) - 0.5 * volume).abs() < 1e-14);
        assert_eq!(energy(&RsState::zero(grid)), 0.0);
    }

    #[test]
    fn two_field_zero_data_stays_zero() {
        let grid = Grid3::cubic(8, 0.5);
        let s0 = TwoFieldState::<f64>::zero(grid);
        let traj = evolve_two_field(&s0, None, 0.1, 30).unwrap();
        for c in 0..3 {
            assert!(traj.state.e[c].iter().all(|&v| v == 0.0));
            assert!(traj.state.b[c].iter().all(|&v| v == 0.0));
        }
    }
}
