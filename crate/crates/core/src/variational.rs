//! Saddle-point variational calculus for complex-valued functions.
//!
//! A complex-valued f = P + iQ has a *minimum* at z₀ when (x₀, y₀) is a
//! saddle of P: min over the real parts and max over the imaginary parts of
//! P coincide there. For analytic f the candidates are the stationary points
//! f′(z₀) = 0, which [`find_stationary`] locates by damped Newton iteration;
//! [`verify_saddle`] then checks the min-max structure by sampling P over a
//! box around the candidate. Verification is a sampled surrogate, not a
//! proof: box radius and sample counts are explicit parameters.

use num_complex::Complex;

use crate::error::VariationalError;
use crate::scalar::{r, RealScalar};

type Evaluator<R> = Box<dyn Fn(&[Complex<R>]) -> Complex<R> + Send + Sync>;
type DerivativeEvaluator<R> = Box<dyn Fn(&[Complex<R>]) -> Vec<Complex<R>> + Send + Sync>;

/// A function from Cⁿ to C, with an optional analytic derivative used as an
/// oracle. Analyticity is checked, not assumed: see
/// [`cauchy_riemann_residual`].
pub struct HolomorphicFn<R> {
    name: String,
    dim: usize,
    f: Evaluator<R>,
    analytic_derivative: Option<DerivativeEvaluator<R>>,
}

impl<R: RealScalar> HolomorphicFn<R> {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        f: impl Fn(&[Complex<R>]) -> Complex<R> + Send + Sync + 'static,
    ) -> Self {
        HolomorphicFn {
            name: name.into(),
            dim,
            f: Box::new(f),
            analytic_derivative: None,
        }
    }

    pub fn with_derivative(
        mut self,
        df: impl Fn(&[Complex<R>]) -> Vec<Complex<R>> + Send + Sync + 'static,
    ) -> Self {
        self.analytic_derivative = Some(Box::new(df));
        self
    }

    pub fn eval(&self, z: &[Complex<R>]) -> Complex<R> {
        (self.f)(z)
    }

    pub fn analytic_derivative(&self, z: &[Complex<R>]) -> Option<Vec<Complex<R>>> {
        self.analytic_derivative.as_ref().map(|df| df(z))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    // Built-in one-dimensional test set.

    /// z², the canonical saddle example: min_x max_y (x² − y²) = 0 at z₀ = 0.
    pub fn z_squared() -> Self {
        HolomorphicFn::new("z^2", 1, |z: &[Complex<R>]| z[0] * z[0])
            .with_derivative(|z: &[Complex<R>]| vec![Complex::new(r::<R>(2.0), R::zero()) * z[0]])
    }

    /// (z − c)², the translated saddle with z₀ = c.
    pub fn shifted_square(c: Complex<R>) -> Self {
        HolomorphicFn::new(format!("(z - ({c}))^2"), 1, move |z: &[Complex<R>]| {
            (z[0] - c) * (z[0] - c)
        })
        .with_derivative(move |z: &[Complex<R>]| {
            vec![Complex::new(r::<R>(2.0), R::zero()) * (z[0] - c)]
        })
    }

    /// z³ − 3z, stationary at z = ±1; useful for a gap that shrinks under
    /// grid refinement.
    pub fn cubic() -> Self {
        let three = Complex::new(r::<R>(3.0), R::zero());
        HolomorphicFn::new("z^3 - 3z", 1, move |z: &[Complex<R>]| {
            z[0] * z[0] * z[0] - three * z[0]
        })
        .with_derivative(move |z: &[Complex<R>]| {
            vec![three * (z[0] * z[0] - Complex::new(R::one(), R::zero()))]
        })
    }

    /// exp(z) + exp(−2z), stationary at z = ln(2)/3.
    pub fn exp_mix() -> Self {
        let two = Complex::new(r::<R>(2.0), R::zero());
        HolomorphicFn::new("exp(z) + exp(-2z)", 1, move |z: &[Complex<R>]| {
            z[0].exp() + (-two * z[0]).exp()
        })
        .with_derivative(move |z: &[Complex<R>]| vec![z[0].exp() - two * (-two * z[0]).exp()])
    }

    /// conj(z): the canonical non-analytic detector.
    pub fn conjugate() -> Self {
        HolomorphicFn::new("conj(z)", 1, |z: &[Complex<R>]| z[0].conj())
    }

    /// |z|²: real-valued, non-analytic away from 0.
    pub fn abs_squared() -> Self {
        HolomorphicFn::new("|z|^2", 1, |z: &[Complex<R>]| {
            Complex::new(z[0].norm_sqr(), R::zero())
        })
    }

    /// Look up a built-in by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "z2" | "z^2" => Some(Self::z_squared()),
            "cubic" => Some(Self::cubic()),
            "exp-mix" => Some(Self::exp_mix()),
            "conj" => Some(Self::conjugate()),
            "abs2" | "|z|^2" => Some(Self::abs_squared()),
            _ => None,
        }
    }
}

fn fd_step<R: RealScalar>(scale: R) -> R {
    scale.max(R::one()) * R::epsilon().powf(R::one() / r::<R>(3.0))
}

fn central_diff<R: RealScalar>(
    f: &HolomorphicFn<R>,
    z: &[Complex<R>],
    j: usize,
    step: Complex<R>,
) -> Complex<R> {
    let mut plus = z.to_vec();
    plus[j] += step;
    let mut minus = z.to_vec();
    minus[j] -= step;
    (f.eval(&plus) - f.eval(&minus)) / (step + step)
}

/// Componentwise derivative by Richardson-extrapolated central differences in
/// the real direction. Errors out when the two step sizes disagree beyond
/// tolerance, which catches non-smooth or noisy evaluations.
pub fn holomorphic_derivative<R: RealScalar>(
    f: &HolomorphicFn<R>,
    z: &[Complex<R>],
) -> Result<Vec<Complex<R>>, VariationalError> {
    let mut out = Vec::with_capacity(z.len());
    for j in 0..z.len() {
        let h = fd_step(z[j].norm());
        let coarse = central_diff(f, z, j, Complex::new(h, R::zero()));
        let fine = central_diff(f, z, j, Complex::new(h / r::<R>(2.0), R::zero()));
        let four = Complex::new(r::<R>(4.0), R::zero());
        let third = Complex::new(r::<R>(1.0 / 3.0), R::zero());
        let extrapolated = (fine * four - coarse) * third;
        let disagreement = (fine - coarse).norm();
        let scale = R::one() + extrapolated.norm();
        if !disagreement.is_finite() || disagreement > r::<R>(1e-5) * scale {
            return Err(VariationalError::NumericallyUnstable {
                disagreement: disagreement.to_f64().unwrap_or(f64::NAN),
            });
        }
        out.push(extrapolated);
    }
    Ok(out)
}

/// Max over components of |∂P/∂x − ∂Q/∂y| + |∂P/∂y + ∂Q/∂x| by central
/// differences: ~1e−11 for analytic functions, order one for non-analytic
/// ones (conj(z) gives exactly 2).
pub fn cauchy_riemann_residual<R: RealScalar>(f: &HolomorphicFn<R>, z: &[Complex<R>]) -> R {
    let i = Complex::new(R::zero(), R::one());
    let mut worst = R::zero();
    for j in 0..z.len() {
        let h = fd_step(z[j].norm());
        let d_x = central_diff(f, z, j, Complex::new(h, R::zero()));
        // the imaginary-direction quotient divides by 2ih, so multiply back
        // by i to recover ∂f/∂y
        let d_y = i * central_diff(f, z, j, Complex::new(R::zero(), h));
        // d_x = P_x + iQ_x, d_y = P_y + iQ_y
        let residual = (d_x.re - d_y.im).abs() + (d_y.re + d_x.im).abs();
        worst = worst.max(residual);
    }
    worst
}

/// Sampled min-max verification of the saddle structure of Re f around z0.
#[derive(Clone, Debug)]
pub struct MinimaxReport<R> {
    /// min over sampled x of (max over sampled y of P).
    pub min_max: R,
    /// max over sampled y of (min over sampled x of P).
    pub max_min: R,
    pub p_at_z0: R,
    /// max(|min_max − P(z0)|, |max_min − P(z0)|).
    pub gap: R,
    pub saddle_verified: bool,
    pub samples_per_axis: usize,
    pub radius: R,
    pub tolerance: R,
}

/// Default verification tolerance: floor plus a grid-resolution term, so a
/// true saddle passes at any sane sampling while a non-stationary point
/// (gap of order one) fails.
pub fn default_saddle_tolerance<R: RealScalar>(radius: R, samples: usize) -> R {
    let step = (radius + radius) / r::<R>(samples as f64);
    r::<R>(1e-6) + r::<R>(10.0) * step * step
}

/// Estimate min_x max_y P and max_y min_x P over a box of the given radius
/// around z0, sampling `samples` points per axis (center-symmetric grid).
///
/// Cost is `samples^(2n)` evaluations for an n-dimensional argument.
pub fn verify_saddle<R: RealScalar>(
    f: &HolomorphicFn<R>,
    z0: &[Complex<R>],
    radius: R,
    samples: usize,
) -> MinimaxReport<R> {
    let tol = default_saddle_tolerance(radius, samples);
    verify_saddle_with_tolerance(f, z0, radius, samples, tol)
}

#[allow(clippy::needless_range_loop)] // row/column reductions share the grid index
pub fn verify_saddle_with_tolerance<R: RealScalar>(
    f: &HolomorphicFn<R>,
    z0: &[Complex<R>],
    radius: R,
    samples: usize,
    tolerance: R,
) -> MinimaxReport<R> {
    assert!(radius > R::zero(), "box radius must be positive");
    assert!(samples >= 8, "at least 8 samples per axis");
    let n = z0.len();

    // Offsets symmetric about the center: r·((2m+1)/samples − 1).
    let offsets: Vec<R> = (0..samples)
        .map(|m| radius * (r::<R>((2 * m + 1) as f64) / r::<R>(samples as f64) - R::one()))
        .collect();

    let p_at = |dx: &[usize], dy: &[usize]| {
        let z: Vec<Complex<R>> = (0..n)
            .map(|c| z0[c] + Complex::new(offsets[dx[c]], offsets[dy[c]]))
            .collect();
        f.eval(&z).re
    };

    let grid_count = samples.pow(n as u32);
    let unrank = |mut idx: usize| {
        let mut digits = vec![0usize; n];
        for d in digits.iter_mut() {
            *d = idx % samples;
            idx /= samples;
        }
        digits
    };

    let mut row_max = vec![R::neg_infinity(); grid_count]; // per x-point
    let mut col_min = vec![R::infinity(); grid_count]; // per y-point
    for xi in 0..grid_count {
        let dx = unrank(xi);
        for yi in 0..grid_count {
            let dy = unrank(yi);
            let p = p_at(&dx, &dy);
            if p > row_max[xi] {
                row_max[xi] = p;
            }
            if p < col_min[yi] {
                col_min[yi] = p;
            }
        }
    }
    let min_max = row_max.iter().cloned().fold(R::infinity(), R::min);
    let max_min = col_min.iter().cloned().fold(R::neg_infinity(), R::max);

    let p0 = f.eval(z0).re;
    let gap = (min_max - p0).abs().max((max_min - p0).abs());
    let scale = R::one() + p0.abs();
    MinimaxReport {
        min_max,
        max_min,
        p_at_z0: p0,
        gap,
        saddle_verified: gap <= tolerance * scale,
        samples_per_axis: samples,
        radius,
        tolerance,
    }
}

/// Outcome of the stationary-point search plus the saddle verification run
/// at the located point.
#[derive(Clone, Debug)]
pub struct SaddleResult<R> {
    pub z0: Vec<Complex<R>>,
    pub derivative_norm: R,
    pub saddle_verified: bool,
    pub minimax_gap: R,
    pub iterations: usize,
    pub minimax: MinimaxReport<R>,
}

/// Options for the Newton search and the follow-up verification.
#[derive(Clone, Copy, Debug)]
pub struct StationaryOptions<R> {
    pub max_iterations: usize,
    pub derivative_tolerance: R,
    pub cauchy_riemann_tolerance: R,
    pub verify_radius: R,
    pub verify_samples: usize,
}

impl<R: RealScalar> Default for StationaryOptions<R> {
    fn default() -> Self {
        StationaryOptions {
            max_iterations: 100,
            derivative_tolerance: r(1e-10),
            cauchy_riemann_tolerance: r(1e-6),
            verify_radius: r(0.5),
            verify_samples: 64,
        }
    }
}

fn norm<R: RealScalar>(v: &[Complex<R>]) -> R {
    v.iter()
        .map(|c| c.norm_sqr())
        .fold(R::zero(), |a, b| a + b)
        .sqrt()
}

/// Solve H·x = rhs for a small complex system by partial-pivot elimination.
#[allow(clippy::needless_range_loop)] // rows indexed in lockstep with rhs
fn solve_dense<R: RealScalar>(
    h: &mut [Vec<Complex<R>>],
    rhs: &mut [Complex<R>],
) -> Option<Vec<Complex<R>>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&a, &b| {
            h[a][col]
                .norm_sqr()
                .partial_cmp(&h[b][col].norm_sqr())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if h[pivot_row][col].norm_sqr() == R::zero() {
            return None;
        }
        h.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in (col + 1)..n {
            let factor = h[row][col] / h[col][col];
            for k in col..n {
                let sub = factor * h[col][k];
                h[row][k] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[row] -= sub;
        }
    }
    let mut x = vec![Complex::new(R::zero(), R::zero()); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..n {
            acc -= h[row][k] * x[k];
        }
        x[row] = acc / h[row][row];
    }
    Some(x)
}

/// Damped Newton iteration on f′(z) = 0 with a finite-difference Jacobian
/// (the Hessian of f). On success the saddle structure at the root is
/// sampled and stored in the result.
#[allow(clippy::needless_range_loop)] // Hessian columns indexed alongside probe vectors
pub fn find_stationary<R: RealScalar>(
    f: &HolomorphicFn<R>,
    z_start: &[Complex<R>],
    options: &StationaryOptions<R>,
) -> Result<SaddleResult<R>, VariationalError> {
    let n = z_start.len();
    let mut z = z_start.to_vec();

    let check_analytic = |z: &[Complex<R>]| -> Result<(), VariationalError> {
        let residual = cauchy_riemann_residual(f, z);
        if residual > options.cauchy_riemann_tolerance {
            Err(VariationalError::NonAnalytic {
                residual: residual.to_f64().unwrap_or(f64::NAN),
            })
        } else {
            Ok(())
        }
    };

    check_analytic(&z)?;
    let mut grad = holomorphic_derivative(f, &z)?;
    let mut grad_norm = norm(&grad);

    let finish = |z: Vec<Complex<R>>, grad_norm: R, iterations: usize| {
        let minimax = verify_saddle(f, &z, options.verify_radius, options.verify_samples);
        SaddleResult {
            z0: z,
            derivative_norm: grad_norm,
            saddle_verified: minimax.saddle_verified,
            minimax_gap: minimax.gap,
            iterations,
            minimax,
        }
    };

    for iteration in 0..options.max_iterations {
        if grad_norm <= options.derivative_tolerance {
            return Ok(finish(z, grad_norm, iteration));
        }

        // Hessian by central differences of the derivative components.
        let mut hessian: Vec<Vec<Complex<R>>> =
            vec![vec![Complex::new(R::zero(), R::zero()); n]; n];
        for j in 0..n {
            let h = fd_step(z[j].norm()) * r::<R>(16.0);
            let mut plus = z.clone();
            plus[j] += Complex::new(h, R::zero());
            let mut minus = z.clone();
            minus[j] -= Complex::new(h, R::zero());
            let gp = holomorphic_derivative(f, &plus)?;
            let gm = holomorphic_derivative(f, &minus)?;
            for i in 0..n {
                hessian[i][j] = (gp[i] - gm[i]) / Complex::new(h + h, R::zero());
            }
        }

        let mut rhs: Vec<Complex<R>> = grad.iter().map(|g| -g).collect();
        let step = solve_dense(&mut hessian, &mut rhs).ok_or(VariationalError::NoConvergence {
            iterations: iteration,
            derivative_norm: grad_norm.to_f64().unwrap_or(f64::NAN),
        })?;

        // Halve the step until the derivative norm decreases.
        let mut lambda = R::one();
        let mut accepted = false;
        for _ in 0..40 {
            let candidate: Vec<Complex<R>> = (0..n)
                .map(|i| z[i] + step[i] * Complex::new(lambda, R::zero()))
                .collect();
            check_analytic(&candidate)?;
            let cand_grad = holomorphic_derivative(f, &candidate)?;
            let cand_norm = norm(&cand_grad);
            if cand_norm < grad_norm {
                z = candidate;
                grad = cand_grad;
                grad_norm = cand_norm;
                accepted = true;
                break;
            }
            lambda /= r::<R>(2.0);
        }
        if !accepted {
            return Err(VariationalError::NoConvergence {
                iterations: iteration,
                derivative_norm: grad_norm.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    if grad_norm <= options.derivative_tolerance {
        return Ok(finish(z, grad_norm, options.max_iterations));
    }
    Err(VariationalError::NoConvergence {
        iterations: options.max_iterations,
        derivative_norm: grad_norm.to_f64().unwrap_or(f64::NAN),
    })
}


#[cfg(test)]
mod basin_tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn every_builtin_with_known_stationary_point_is_found_from_its_basin() {
        let cases: [(HolomorphicFn<f64>, Complex64, Complex64); 4] = [
            (
                HolomorphicFn::z_squared(),
                Complex64::new(0.8, -0.6),
                Complex64::new(0.0, 0.0),
            ),
            (
                HolomorphicFn::shifted_square(Complex64::new(-1.5, 2.0)),
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.5, 2.0),
            ),
            (
                HolomorphicFn::cubic(),
                Complex64::new(-1.2, 0.1),
                Complex64::new(-1.0, 0.0),
            ),
            (
                HolomorphicFn::exp_mix(),
                Complex64::new(0.0, 0.0),
                Complex64::new(2f64.ln() / 3.0, 0.0),
            ),
        ];
        for (f, start, expected) in cases {
            let result = find_stationary(&f, &[start], &StationaryOptions::default()).unwrap();
            assert!(
                (result.z0[0] - expected).norm() < 1e-8,
                "{}: found {} expected {}",
                f.name(),
                result.z0[0],
                expected
            );
        }
    }
}
