//! Discretized least-action engine on a periodic space-time lattice.
//!
//! Potentials (φ, A) live on every node of a 4D periodic lattice; fields come
//! out of centered differences, E = −∇φ − ∂A/∂t and B = ∇×A. Centered
//! differences along distinct axes commute exactly, so the homogeneous
//! identities ∇·B = 0 and ∇×E + ∂B/∂t = 0 hold at roundoff for *any*
//! potentials — structure preservation, not truncation accuracy.
//!
//! Actions are plain Riemann sums of the pointwise densities; gradients with
//! respect to every potential degree of freedom are assembled analytically
//! through the adjoints of the difference operators (a centered difference
//! is skew-adjoint on a periodic lattice). The finite-difference oracle for
//! that assembly lives in the tests.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{LagrangianError, LatticeError};
use crate::lagrangian::{
    free_density, free_density_derivatives, BiParameter, FieldPoint, LagrangianKind,
};
use crate::scalar::{r, RealScalar};
use crate::vec3::{rs_vector, Vec3};

/// Axis order: 0 = t, 1 = x, 2 = y, 3 = z.
pub const AXES: [&str; 4] = ["t", "x", "y", "z"];

/// Periodic space-time lattice extents and spacings. All extents ≥ 4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeSpec<R> {
    pub nt: usize,
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub dt: R,
    pub dx: R,
    pub dy: R,
    pub dz: R,
}

impl<R: RealScalar> LatticeSpec<R> {
    pub fn new(extents: [usize; 4], spacings: [R; 4]) -> Result<Self, LatticeError> {
        for (axis, &n) in AXES.iter().zip(extents.iter()) {
            if n < 4 {
                return Err(LatticeError::ExtentTooSmall { axis, n });
            }
        }
        for (axis, &d) in AXES.iter().zip(spacings.iter()) {
            if !(d > R::zero() && d.is_finite()) {
                return Err(LatticeError::BadSpacing { axis });
            }
        }
        Ok(LatticeSpec {
            nt: extents[0],
            nx: extents[1],
            ny: extents[2],
            nz: extents[3],
            dt: spacings[0],
            dx: spacings[1],
            dy: spacings[2],
            dz: spacings[3],
        })
    }

    /// Uniform lattice: same extent and spacing on every axis.
    pub fn hypercubic(n: usize, d: R) -> Result<Self, LatticeError> {
        Self::new([n; 4], [d; 4])
    }

    pub fn extents(&self) -> [usize; 4] {
        [self.nt, self.nx, self.ny, self.nz]
    }

    pub fn spacing(&self, axis: usize) -> R {
        [self.dt, self.dx, self.dy, self.dz][axis]
    }

    pub fn node_count(&self) -> usize {
        self.nt * self.nx * self.ny * self.nz
    }

    /// dt·dx·dy·dz, the measure of one cell.
    pub fn volume_element(&self) -> R {
        self.dt * self.dx * self.dy * self.dz
    }

    pub fn index(&self, it: usize, ix: usize, iy: usize, iz: usize) -> usize {
        ((it * self.nx + ix) * self.ny + iy) * self.nz + iz
    }

    pub fn node_indices(&self, idx: usize) -> [usize; 4] {
        let iz = idx % self.nz;
        let iy = (idx / self.nz) % self.ny;
        let ix = (idx / (self.ny * self.nz)) % self.nx;
        let it = idx / (self.nx * self.ny * self.nz);
        [it, ix, iy, iz]
    }

    /// (t, x, y, z) coordinates of a node.
    pub fn coords(&self, idx: usize) -> [R; 4] {
        let [it, ix, iy, iz] = self.node_indices(idx);
        [
            r::<R>(it as f64) * self.dt,
            r::<R>(ix as f64) * self.dx,
            r::<R>(iy as f64) * self.dy,
            r::<R>(iz as f64) * self.dz,
        ]
    }

    /// Axis lengths (extent × spacing), the periods of the box.
    pub fn lengths(&self) -> [R; 4] {
        [
            self.dt * r::<R>(self.nt as f64),
            self.dx * r::<R>(self.nx as f64),
            self.dy * r::<R>(self.ny as f64),
            self.dz * r::<R>(self.nz as f64),
        ]
    }

    pub fn neighbor(&self, idx: usize, axis: usize, step: isize) -> usize {
        let mut n = self.node_indices(idx);
        let extent = self.extents()[axis];
        n[axis] = ((n[axis] as isize + step).rem_euclid(extent as isize)) as usize;
        self.index(n[0], n[1], n[2], n[3])
    }

    /// Centered difference of a scalar lattice field along an axis.
    pub fn centered_diff(&self, field: &[R], axis: usize) -> Vec<R> {
        let two_d = self.spacing(axis) * r::<R>(2.0);
        (0..field.len())
            .map(|idx| {
                (field[self.neighbor(idx, axis, 1)] - field[self.neighbor(idx, axis, -1)]) / two_d
            })
            .collect()
    }

    fn component<T: Copy>(f: &[Vec3<T>], c: usize) -> Vec<T> {
        f.iter().map(|v| *v.components()[c]).collect()
    }

    /// Spatial curl (axes 1..3) of a vector lattice field.
    pub fn curl(&self, f: &[Vec3<R>]) -> Vec<Vec3<R>> {
        let fx = Self::component(f, 0);
        let fy = Self::component(f, 1);
        let fz = Self::component(f, 2);
        let dfz_dy = self.centered_diff(&fz, 2);
        let dfy_dz = self.centered_diff(&fy, 3);
        let dfx_dz = self.centered_diff(&fx, 3);
        let dfz_dx = self.centered_diff(&fz, 1);
        let dfy_dx = self.centered_diff(&fy, 1);
        let dfx_dy = self.centered_diff(&fx, 2);
        (0..f.len())
            .map(|i| {
                Vec3::new(
                    dfz_dy[i] - dfy_dz[i],
                    dfx_dz[i] - dfz_dx[i],
                    dfy_dx[i] - dfx_dy[i],
                )
            })
            .collect()
    }

    /// Spatial divergence of a vector lattice field.
    pub fn divergence(&self, f: &[Vec3<R>]) -> Vec<R> {
        let dx = self.centered_diff(&Self::component(f, 0), 1);
        let dy = self.centered_diff(&Self::component(f, 1), 2);
        let dz = self.centered_diff(&Self::component(f, 2), 3);
        (0..f.len()).map(|i| dx[i] + dy[i] + dz[i]).collect()
    }

    /// Time derivative (axis 0) of a vector lattice field.
    pub fn time_diff(&self, f: &[Vec3<R>]) -> Vec<Vec3<R>> {
        let dx = self.centered_diff(&Self::component(f, 0), 0);
        let dy = self.centered_diff(&Self::component(f, 1), 0);
        let dz = self.centered_diff(&Self::component(f, 2), 0);
        (0..f.len())
            .map(|i| Vec3::new(dx[i], dy[i], dz[i]))
            .collect()
    }

    /// Spatial gradient of a scalar lattice field.
    pub fn gradient3(&self, field: &[R]) -> Vec<Vec3<R>> {
        let gx = self.centered_diff(field, 1);
        let gy = self.centered_diff(field, 2);
        let gz = self.centered_diff(field, 3);
        (0..field.len())
            .map(|i| Vec3::new(gx[i], gy[i], gz[i]))
            .collect()
    }
}

/// The variational unknowns: φ and A on every node.
#[derive(Clone, Debug)]
pub struct PotentialLattice<R> {
    pub spec: LatticeSpec<R>,
    pub phi: Vec<R>,
    pub a: Vec<Vec3<R>>,
}

impl<R: RealScalar> PotentialLattice<R> {
    pub fn zero(spec: LatticeSpec<R>) -> Self {
        let n = spec.node_count();
        PotentialLattice {
            spec,
            phi: vec![R::zero(); n],
            a: vec![Vec3::zero(); n],
        }
    }

    /// Sample closed-form potentials at the node coordinates.
    pub fn from_fn(
        spec: LatticeSpec<R>,
        mut phi: impl FnMut([R; 4]) -> R,
        mut a: impl FnMut([R; 4]) -> Vec3<R>,
    ) -> Self {
        let n = spec.node_count();
        let mut out = PotentialLattice {
            spec,
            phi: Vec::with_capacity(n),
            a: Vec::with_capacity(n),
        };
        for idx in 0..n {
            let x = spec.coords(idx);
            out.phi.push(phi(x));
            out.a.push(a(x));
        }
        out
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        let n = self.spec.node_count();
        if self.phi.len() != n || self.a.len() != n {
            return Err(LatticeError::ShapeMismatch {
                got: self.phi.len().min(self.a.len()),
                expected: n,
            });
        }
        Ok(())
    }

    /// Largest |E| or |B| magnitude the potentials generate.
    pub fn field_amplitude(&self) -> R {
        fields_from_potentials(self).max_field()
    }

    /// Scale φ and A (hence E and B) by a constant.
    pub fn scaled(&self, factor: R) -> Self {
        PotentialLattice {
            spec: self.spec,
            phi: self.phi.iter().map(|&v| v * factor).collect(),
            a: self.a.iter().map(|v| v.scale(&factor)).collect(),
        }
    }

    /// Apply the discrete pure-gauge transform (φ, A) → (φ − ∂_t χ, A + ∇χ).
    /// Because the difference operators commute, the fields are unchanged to
    /// roundoff.
    pub fn apply_gauge(&mut self, chi: &[R]) {
        let dchi_dt = self.spec.centered_diff(chi, 0);
        let grad_chi = self.spec.gradient3(chi);
        for idx in 0..self.spec.node_count() {
            self.phi[idx] -= dchi_dt[idx];
            self.a[idx] = self.a[idx] + grad_chi[idx];
        }
    }
}

/// Charge and current densities on the lattice.
#[derive(Clone, Debug)]
pub struct SourceLattice<R> {
    pub rho: Vec<R>,
    pub j: Vec<Vec3<R>>,
}

impl<R: RealScalar> SourceLattice<R> {
    pub fn zero(spec: &LatticeSpec<R>) -> Self {
        let n = spec.node_count();
        SourceLattice {
            rho: vec![R::zero(); n],
            j: vec![Vec3::zero(); n],
        }
    }

    /// Build exactly conserved sources from three generator fields:
    /// ρ = Σ_c ∂_c u_c and j = −∂_t u, so ∂_t ρ + ∇·j = 0 by operator
    /// commutation.
    pub fn conserved_from_generators(spec: &LatticeSpec<R>, u: &[Vec3<R>]) -> Self {
        let ux: Vec<R> = u.iter().map(|v| v.x).collect();
        let uy: Vec<R> = u.iter().map(|v| v.y).collect();
        let uz: Vec<R> = u.iter().map(|v| v.z).collect();
        let dx = spec.centered_diff(&ux, 1);
        let dy = spec.centered_diff(&uy, 2);
        let dz = spec.centered_diff(&uz, 3);
        let jt_x = spec.centered_diff(&ux, 0);
        let jt_y = spec.centered_diff(&uy, 0);
        let jt_z = spec.centered_diff(&uz, 0);
        let n = spec.node_count();
        SourceLattice {
            rho: (0..n).map(|i| dx[i] + dy[i] + dz[i]).collect(),
            j: (0..n)
                .map(|i| Vec3::new(-jt_x[i], -jt_y[i], -jt_z[i]))
                .collect(),
        }
    }

    /// Max-norm of the discrete continuity residual ∂_t ρ + ∇·j.
    pub fn continuity_residual(&self, spec: &LatticeSpec<R>) -> R {
        let drho_dt = spec.centered_diff(&self.rho, 0);
        let div_j = spec.divergence(&self.j);
        (0..self.rho.len())
            .map(|i| (drho_dt[i] + div_j[i]).abs())
            .fold(R::zero(), R::max)
    }
}

/// E and B on every node, derived from potentials.
#[derive(Clone, Debug)]
pub struct FieldLattice<R> {
    pub spec: LatticeSpec<R>,
    pub e: Vec<Vec3<R>>,
    pub b: Vec<Vec3<R>>,
}

impl<R: RealScalar> FieldLattice<R> {
    /// The complex view F = E + iB at one node.
    pub fn rs(&self, idx: usize) -> Vec3<Complex<R>> {
        rs_vector(&self.e[idx], &self.b[idx])
    }

    /// The complex view on all nodes.
    pub fn rs_all(&self) -> Vec<Vec3<Complex<R>>> {
        (0..self.e.len()).map(|i| self.rs(i)).collect()
    }

    pub fn max_field(&self) -> R {
        (0..self.e.len())
            .map(|i| self.e[i].norm().max(self.b[i].norm()))
            .fold(R::zero(), R::max)
    }
}

/// E = −∇φ − ∂A/∂t, B = ∇×A with centered differences.
pub fn fields_from_potentials<R: RealScalar>(p: &PotentialLattice<R>) -> FieldLattice<R> {
    let grad_phi = p.spec.gradient3(&p.phi);
    let da_dt = p.spec.time_diff(&p.a);
    let b = p.spec.curl(&p.a);
    let e: Vec<Vec3<R>> = (0..p.spec.node_count())
        .map(|i| -(grad_phi[i] + da_dt[i]))
        .collect();
    FieldLattice { spec: p.spec, e, b }
}

/// Max-norm residuals of the two homogeneous identities:
/// (‖∇·B‖∞, ‖∇×E + ∂B/∂t‖∞). Both vanish to roundoff for fields built by
/// [`fields_from_potentials`].
pub fn homogeneous_identity_check<R: RealScalar>(f: &FieldLattice<R>) -> (R, R) {
    let div_b = f.spec.divergence(&f.b);
    let curl_e = f.spec.curl(&f.e);
    let db_dt = f.spec.time_diff(&f.b);
    let r1 = div_b.iter().map(|v| v.abs()).fold(R::zero(), R::max);
    let r2 = (0..f.e.len())
        .map(|i| (curl_e[i] + db_dt[i]).max_abs())
        .fold(0.0, f64::max);
    (r1, r::<R>(r2))
}

/// Riemann sum of the selected density over the lattice: Σ L·dt·dx·dy·dz.
/// Real kinds return a zero imaginary part.
pub fn action<R: RealScalar>(
    p: &PotentialLattice<R>,
    s: &SourceLattice<R>,
    kind: LagrangianKind,
    k: &BiParameter<R>,
) -> Result<Complex<R>, LagrangianError> {
    let fields = fields_from_potentials(p);
    let n = p.spec.node_count();
    let mut acc = Complex::new(R::zero(), R::zero());
    for idx in 0..n {
        let point = FieldPoint {
            e: fields.e[idx],
            b: fields.b[idx],
        };
        let coupling = -(s.rho[idx] * p.phi[idx]) + s.j[idx].dot(&p.a[idx]);
        acc = acc + free_density(kind, &point, k)? + Complex::new(coupling, R::zero());
    }
    Ok(acc * Complex::new(p.spec.volume_element(), R::zero()))
}

/// Which part of a complex action the gradient differentiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActionPart {
    Real,
    Imag,
}

/// Gradient of an action with respect to every potential degree of freedom.
#[derive(Clone, Debug)]
pub struct PotentialGradient<R> {
    pub phi: Vec<R>,
    pub a: Vec<Vec3<R>>,
}

impl<R: RealScalar> PotentialGradient<R> {
    pub fn max_abs(&self) -> R {
        let p = self.phi.iter().map(|v| v.abs()).fold(R::zero(), R::max);
        let a = self
            .a
            .iter()
            .map(|v| r::<R>(v.max_abs()))
            .fold(R::zero(), R::max);
        p.max(a)
    }

    pub fn norm_l2(&self) -> R {
        let mut acc = R::zero();
        for v in &self.phi {
            acc += *v * *v;
        }
        for v in &self.a {
            acc += v.norm_sq();
        }
        acc.sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        PotentialGradient {
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(a, b)| *a - *b)
                .collect(),
            a: self.a.iter().zip(&other.a).map(|(a, b)| *a - *b).collect(),
        }
    }
}

/// Exact discrete gradient of the selected part of the action, assembled by
/// the chain rule through the difference operators:
///
/// ```text
/// ∂S/∂φ(n) = dV·( ∇·g_E − ρ )(n)
/// ∂S/∂A(n) = dV·( ∂_t g_E + ∇×g_B + j )(n)
/// ```
///
/// with (g_E, g_B) = (∂L/∂E, ∂L/∂B) of the selected part at each node. The
/// source terms are real, so they enter only the real part.
pub fn action_gradient<R: RealScalar>(
    p: &PotentialLattice<R>,
    s: &SourceLattice<R>,
    kind: LagrangianKind,
    k: &BiParameter<R>,
    part: ActionPart,
) -> Result<PotentialGradient<R>, LagrangianError> {
    let fields = fields_from_potentials(p);
    let n = p.spec.node_count();

    let mut g_e: Vec<Vec3<R>> = Vec::with_capacity(n);
    let mut g_b: Vec<Vec3<R>> = Vec::with_capacity(n);
    for idx in 0..n {
        let point = FieldPoint {
            e: fields.e[idx],
            b: fields.b[idx],
        };
        let (de, db) = free_density_derivatives(kind, &point, k)?;
        let select = |v: &Vec3<Complex<R>>| match part {
            ActionPart::Real => v.map(|c| c.re),
            ActionPart::Imag => v.map(|c| c.im),
        };
        g_e.push(select(&de));
        g_b.push(select(&db));
    }

    let dv = p.spec.volume_element();
    let div_ge = p.spec.divergence(&g_e);
    let dge_dt = p.spec.time_diff(&g_e);
    let curl_gb = p.spec.curl(&g_b);

    let phi: Vec<R> = (0..n)
        .map(|i| {
            let source = match part {
                ActionPart::Real => -s.rho[i],
                ActionPart::Imag => R::zero(),
            };
            dv * (div_ge[i] + source)
        })
        .collect();
    let a: Vec<Vec3<R>> = (0..n)
        .map(|i| {
            let source = match part {
                ActionPart::Real => s.j[i],
                ActionPart::Imag => Vec3::zero(),
            };
            (dge_dt[i] + curl_gb[i] + source).scale(&dv)
        })
        .collect();
    Ok(PotentialGradient { phi, a })
}

/// Per-node residuals of the first-order complex field equations:
/// R₁ = ∇·F − ρ and R₂ = ∇×F − i·∂F/∂t − i·j, with F = E + iB.
#[derive(Clone, Debug)]
pub struct MaxwellResidual<R> {
    pub gauss: Vec<Complex<R>>,
    pub curl: Vec<Vec3<Complex<R>>>,
}

impl<R: RealScalar> MaxwellResidual<R> {
    pub fn max_gauss(&self) -> R {
        self.gauss.iter().map(|v| v.norm()).fold(R::zero(), R::max)
    }

    pub fn max_curl(&self) -> R {
        self.curl
            .iter()
            .map(|v| r::<R>(v.max_abs()))
            .fold(R::zero(), R::max)
    }
}

pub fn maxwell_residual<R: RealScalar>(
    f: &FieldLattice<R>,
    s: &SourceLattice<R>,
) -> MaxwellResidual<R> {
    let spec = &f.spec;
    let n = spec.node_count();
    let i = Complex::new(R::zero(), R::one());

    let comp = |c: usize| -> Vec<Complex<R>> {
        (0..n)
            .map(|idx| Complex::new(*f.e[idx].components()[c], *f.b[idx].components()[c]))
            .collect()
    };
    let fx = comp(0);
    let fy = comp(1);
    let fz = comp(2);

    let cdiff = |field: &[Complex<R>], axis: usize| -> Vec<Complex<R>> {
        let two_d = Complex::new(spec.spacing(axis) * r::<R>(2.0), R::zero());
        (0..n)
            .map(|idx| {
                (field[spec.neighbor(idx, axis, 1)] - field[spec.neighbor(idx, axis, -1)]) / two_d
            })
            .collect()
    };

    let dfx_dx = cdiff(&fx, 1);
    let dfy_dy = cdiff(&fy, 2);
    let dfz_dz = cdiff(&fz, 3);

    let dfz_dy = cdiff(&fz, 2);
    let dfy_dz = cdiff(&fy, 3);
    let dfx_dz = cdiff(&fx, 3);
    let dfz_dx = cdiff(&fz, 1);
    let dfy_dx = cdiff(&fy, 1);
    let dfx_dy = cdiff(&fx, 2);

    let dfx_dt = cdiff(&fx, 0);
    let dfy_dt = cdiff(&fy, 0);
    let dfz_dt = cdiff(&fz, 0);

    let gauss = (0..n)
        .map(|idx| dfx_dx[idx] + dfy_dy[idx] + dfz_dz[idx] - Complex::new(s.rho[idx], R::zero()))
        .collect();
    let curl = (0..n)
        .map(|idx| {
            let curl_f = Vec3::new(
                dfz_dy[idx] - dfy_dz[idx],
                dfx_dz[idx] - dfz_dx[idx],
                dfy_dx[idx] - dfx_dy[idx],
            );
            let df_dt = Vec3::new(dfx_dt[idx], dfy_dt[idx], dfz_dt[idx]);
            Vec3::new(
                curl_f.x - i * df_dt.x - i * Complex::new(s.j[idx].x, R::zero()),
                curl_f.y - i * df_dt.y - i * Complex::new(s.j[idx].y, R::zero()),
                curl_f.z - i * df_dt.z - i * Complex::new(s.j[idx].z, R::zero()),
            )
        })
        .collect();
    MaxwellResidual { gauss, curl }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::BiParameter;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec4() -> LatticeSpec<f64> {
        LatticeSpec::hypercubic(4, 0.5).unwrap()
    }

    fn random_potentials(
        spec: LatticeSpec<f64>,
        seed: u64,
        amplitude: f64,
    ) -> PotentialLattice<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = spec.node_count();
        let mut p = PotentialLattice::zero(spec);
        for i in 0..n {
            p.phi[i] = rng.gen_range(-amplitude..amplitude);
            p.a[i] = Vec3::new(
                rng.gen_range(-amplitude..amplitude),
                rng.gen_range(-amplitude..amplitude),
                rng.gen_range(-amplitude..amplitude),
            );
        }
        p
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            LatticeSpec::new([3, 4, 4, 4], [0.5; 4]),
            Err(LatticeError::ExtentTooSmall { axis: "t", n: 3 })
        ));
        assert!(matches!(
            LatticeSpec::new([4; 4], [0.5, 0.0, 0.5, 0.5]),
            Err(LatticeError::BadSpacing { axis: "x" })
        ));
    }

    #[test]
    fn constant_potentials_give_zero_fields() {
        let p = PotentialLattice::from_fn(spec4(), |_| 2.5, |_| Vec3::new(1.0, -3.0, 0.5));
        let f = fields_from_potentials(&p);
        for i in 0..p.spec.node_count() {
            assert_eq!(f.e[i], Vec3::zero());
            assert_eq!(f.b[i], Vec3::zero());
        }
    }

    #[test]
    fn linear_time_vector_potential_gives_uniform_e_interior() {
        // A = (a·t, 0, 0): E = (−a, 0, 0) exactly at interior times
        let a = 0.7;
        let p = PotentialLattice::from_fn(spec4(), |_| 0.0, |x| Vec3::new(a * x[0], 0.0, 0.0));
        let f = fields_from_potentials(&p);
        let spec = p.spec;
        for idx in 0..spec.node_count() {
            let [it, _, _, _] = spec.node_indices(idx);
            if it == 0 || it == spec.nt - 1 {
                continue; // wrap-around sees the sawtooth jump
            }
            assert!((f.e[idx].x + a).abs() < 1e-13);
            assert!(f.e[idx].y.abs() < 1e-13 && f.e[idx].z.abs() < 1e-13);
            assert_eq!(f.b[idx], Vec3::zero());
        }
    }

    #[test]
    fn sine_vector_potential_curl_converges_second_order() {
        // A_y = sin(x) on [0, 2π): B_z = cos(x)
        let mut errors = Vec::new();
        for n in [8usize, 16, 32] {
            let l = 2.0 * std::f64::consts::PI;
            let spec = LatticeSpec::new([4, n, 4, 4], [0.5, l / n as f64, 0.5, 0.5]).unwrap();
            let p = PotentialLattice::from_fn(spec, |_| 0.0, |x| Vec3::new(0.0, x[1].sin(), 0.0));
            let f = fields_from_potentials(&p);
            let err = (0..spec.node_count())
                .map(|idx| {
                    let x = spec.coords(idx)[1];
                    (f.b[idx].z - x.cos()).abs()
                })
                .fold(0.0, f64::max);
            errors.push(err);
        }
        let order = (errors[0] / errors[1]).log2();
        assert!((order - 2.0).abs() < 0.15, "order {order}, {errors:?}");
    }

    #[test]
    fn homogeneous_identities_hold_at_roundoff_for_random_potentials() {
        let p = random_potentials(spec4(), 7, 1.0);
        let f = fields_from_potentials(&p);
        let scale = f.max_field();
        let (div_b, faraday) = homogeneous_identity_check(&f);
        assert!(div_b <= 1e-12 * scale, "div B = {div_b:e}");
        assert!(faraday <= 1e-12 * scale, "faraday = {faraday:e}");

        // identity, not truncation: residual stays at roundoff under refinement
        let spec8 = LatticeSpec::hypercubic(8, 0.25).unwrap();
        let p8 = random_potentials(spec8, 11, 1.0);
        let f8 = fields_from_potentials(&p8);
        let scale8 = f8.max_field();
        let (div_b8, faraday8) = homogeneous_identity_check(&f8);
        assert!(div_b8 <= 1e-12 * scale8 && faraday8 <= 1e-12 * scale8);
    }

    #[test]
    fn zero_potentials_zero_action_all_kinds() {
        let spec = spec4();
        let p = PotentialLattice::zero(spec);
        let s = SourceLattice::zero(&spec);
        let k = BiParameter::new(1.0).unwrap();
        for kind in LagrangianKind::ALL {
            let a = action(&p, &s, kind, &k).unwrap();
            assert_eq!(a, Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn complex_action_real_part_is_maxwell_action() {
        let p = random_potentials(spec4(), 3, 0.4);
        let s = SourceLattice::zero(&spec4());
        let k = BiParameter::new(10.0).unwrap();
        let maxwell = action(&p, &s, LagrangianKind::Maxwell, &k).unwrap();
        let complex = action(&p, &s, LagrangianKind::Complex, &k).unwrap();
        assert!((complex.re - maxwell.re).abs() < 1e-13 * (1.0 + maxwell.re.abs()));
        assert_eq!(maxwell.im, 0.0);
    }

    #[test]
    fn complexified_nonlinear_action_equals_complex_action() {
        let p = random_potentials(spec4(), 5, 0.3);
        let s = SourceLattice::zero(&spec4());
        for kv in [0.5, 1.0, 10.0] {
            let k = BiParameter::new(kv).unwrap();
            let c = action(&p, &s, LagrangianKind::Complex, &k).unwrap();
            let bic = action(&p, &s, LagrangianKind::ComplexBi, &k).unwrap();
            assert!(
                (c - bic).norm() <= 1e-12 * (1.0 + c.norm()),
                "k = {kv}: {c:?} vs {bic:?}"
            );
        }
    }

    #[test]
    fn vacuum_gradient_is_zero() {
        let spec = spec4();
        let p = PotentialLattice::zero(spec);
        let s = SourceLattice::zero(&spec);
        let k = BiParameter::new(1.0).unwrap();
        let g = action_gradient(&p, &s, LagrangianKind::Maxwell, &k, ActionPart::Real).unwrap();
        assert_eq!(g.max_abs(), 0.0);
    }

    #[test]
    fn analytic_gradient_matches_finite_differences_all_kinds() {
        let spec = spec4();
        let p = random_potentials(spec, 13, 0.05);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let u: Vec<Vec3<f64>> = (0..spec.node_count())
            .map(|_| {
                Vec3::new(
                    rng.gen_range(-0.05..0.05),
                    rng.gen_range(-0.05..0.05),
                    rng.gen_range(-0.05..0.05),
                )
            })
            .collect();
        let s = SourceLattice::conserved_from_generators(&spec, &u);
        let k = BiParameter::new(10.0).unwrap();
        let eps = 1e-6;

        for kind in LagrangianKind::ALL {
            for part in [ActionPart::Real, ActionPart::Imag] {
                let grad = action_gradient(&p, &s, kind, &k, part).unwrap();
                let part_of = |v: Complex<f64>| match part {
                    ActionPart::Real => v.re,
                    ActionPart::Imag => v.im,
                };
                // probe a scattered subset of degrees of freedom
                for probe in 0..24 {
                    let idx = (probe * 37) % spec.node_count();
                    let comp = probe % 4;
                    let mut plus = p.clone();
                    let mut minus = p.clone();
                    match comp {
                        0 => {
                            plus.phi[idx] += eps;
                            minus.phi[idx] -= eps;
                        }
                        1 => {
                            plus.a[idx].x += eps;
                            minus.a[idx].x -= eps;
                        }
                        2 => {
                            plus.a[idx].y += eps;
                            minus.a[idx].y -= eps;
                        }
                        _ => {
                            plus.a[idx].z += eps;
                            minus.a[idx].z -= eps;
                        }
                    }
                    let fd = (part_of(action(&plus, &s, kind, &k).unwrap())
                        - part_of(action(&minus, &s, kind, &k).unwrap()))
                        / (2.0 * eps);
                    let analytic = match comp {
                        0 => grad.phi[idx],
                        1 => grad.a[idx].x,
                        2 => grad.a[idx].y,
                        _ => grad.a[idx].z,
                    };
                    let scale = 1.0 + analytic.abs().max(fd.abs());
                    assert!(
                        (fd - analytic).abs() / scale < 1e-6,
                        "{kind:?} {part:?} dof {probe}: fd {fd:e} vs analytic {analytic:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn gauge_transform_leaves_fields_unchanged() {
        let spec = spec4();
        let mut p = random_potentials(spec, 21, 0.5);
        let before = fields_from_potentials(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let chi: Vec<f64> = (0..spec.node_count())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        p.apply_gauge(&chi);
        let after = fields_from_potentials(&p);
        let scale = before.max_field().max(1.0);
        for i in 0..spec.node_count() {
            assert!((after.e[i] - before.e[i]).max_abs() <= 1e-12 * scale);
            assert!((after.b[i] - before.b[i]).max_abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn conserved_sources_have_zero_continuity_residual() {
        let spec = spec4();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u: Vec<Vec3<f64>> = (0..spec.node_count())
            .map(|_| {
                Vec3::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
            })
            .collect();
        let s = SourceLattice::conserved_from_generators(&spec, &u);
        assert!(s.continuity_residual(&spec) < 1e-13);
    }

    #[test]
    fn maxwell_residual_zero_for_vacuum() {
        let spec = spec4();
        let p = PotentialLattice::zero(spec);
        let f = fields_from_potentials(&p);
        let s = SourceLattice::zero(&spec);
        let res = maxwell_residual(&f, &s);
        assert_eq!(res.max_gauss(), 0.0);
        assert_eq!(res.max_curl(), 0.0);
    }

    #[test]
    fn plane_wave_maxwell_residual_converges_second_order() {
        // F = (0, cos(x−t), i cos(x−t)) solves the continuum equations.
        // dt ≠ dx, otherwise the centered operators cancel exactly along the
        // characteristic and there is no truncation error to measure.
        let mut errors = Vec::new();
        for n in [8usize, 16, 32] {
            let l = 2.0 * std::f64::consts::PI;
            let d = l / n as f64;
            let spec = LatticeSpec::new([2 * n, n, 4, 4], [d / 2.0, d, 0.7, 0.7]).unwrap();
            let nodes = spec.node_count();
            let mut f = FieldLattice {
                spec,
                e: vec![Vec3::zero(); nodes],
                b: vec![Vec3::zero(); nodes],
            };
            for idx in 0..nodes {
                let c = spec.coords(idx);
                let phase = (c[1] - c[0]).cos();
                f.e[idx] = Vec3::new(0.0, phase, 0.0);
                f.b[idx] = Vec3::new(0.0, 0.0, phase);
            }
            let s = SourceLattice::zero(&spec);
            let res = maxwell_residual(&f, &s);
            errors.push(res.max_gauss().max(res.max_curl()));
        }
        let order = (errors[0] / errors[1]).log2();
        assert!((order - 2.0).abs() < 0.2, "order {order}, {errors:?}");
    }
}

#[cfg(test)]
mod plane_wave_gradient_tests {
    use super::*;
    use crate::lagrangian::BiParameter;

    #[test]
    fn maxwell_gradient_vanishes_at_plane_wave_at_second_order() {
        // A_y = cos(x − t) solves the continuum field equations; the
        // discrete gradient is pure truncation error. dt ≠ dx so the
        // centered operators do not cancel exactly along the characteristic.
        let k = BiParameter::new(1.0).unwrap();
        let mut residuals = Vec::new();
        for n in [8usize, 16, 32] {
            let l = 2.0 * std::f64::consts::PI;
            let d = l / n as f64;
            let spec = LatticeSpec::new([2 * n, n, 4, 4], [d / 2.0, d, 0.9, 0.9]).unwrap();
            let p = PotentialLattice::from_fn(
                spec,
                |_| 0.0,
                |x| Vec3::new(0.0, 0.1 * (x[1] - x[0]).cos(), 0.0),
            );
            let s = SourceLattice::zero(&spec);
            let g = action_gradient(&p, &s, LagrangianKind::Maxwell, &k, ActionPart::Real).unwrap();
            // per-node Euler-Lagrange residual: gradient over the cell measure
            residuals.push(g.max_abs() / spec.volume_element());
        }
        let order1 = (residuals[0] / residuals[1]).log2();
        let order2 = (residuals[1] / residuals[2]).log2();
        assert!(
            (order1 - 2.0).abs() < 0.2 && (order2 - 2.0).abs() < 0.2,
            "orders {order1} {order2}, residuals {residuals:?}"
        );
    }
}
