//! Pointwise evaluation of the four Lagrangian densities, in every form the
//! lab cross-checks.
//!
//! * `l_maxwell` / `l_maxwell_tensor` — the quadratic density ½(E²−B²) − ρφ + j·A
//!   and its tensor-contraction form.
//! * `l_bi_invariant` / `l_bi_det` — the nonlinear density with field scale k,
//!   in invariant and determinant form. The determinant form is normalized so
//!   both forms agree (and so small fields recover the quadratic density);
//!   see `compare_real_vs_complex_bi` for how it differs from the complex one.
//! * `l_c`, `l_c_tensor_contraction`, `l_c_det` — the complex density ½F²,
//!   its literal tensor contraction (which yields F², a documented factor-2
//!   convention gap), and its determinant form.
//! * `l_bic_det` / `l_bic_closed` — the complexified nonlinear density, which
//!   collapses to ½F² independent of k.
//!
//! Square roots of complex quantities carry an explicit [`SqrtBranch`];
//! the default `ReductionConsistent` branch picks the root that matches the
//! closed-form reduction.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{DomainError, LagrangianError};

use crate::scalar::{r, RealScalar};
use crate::tensor::{
    build_complex_faraday, build_faraday, hodge_dual, metric_contraction, metric_plus_scaled,
};
use crate::vec3::{rs_square, rs_vector, Vec3};

/// Field sample (E, B) at one event. Components are validated finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldPoint<R> {
    pub e: Vec3<R>,
    pub b: Vec3<R>,
}

impl<R: RealScalar> FieldPoint<R> {
    pub fn new(e: Vec3<R>, b: Vec3<R>) -> Result<Self, DomainError> {
        e.check_finite()?;
        b.check_finite()?;
        Ok(FieldPoint { e, b })
    }

    pub fn zero() -> Self {
        FieldPoint {
            e: Vec3::zero(),
            b: Vec3::zero(),
        }
    }

    /// F = E + iB at this point.
    pub fn rs(&self) -> Vec3<Complex<R>> {
        rs_vector(&self.e, &self.b)
    }

    /// F·F = (E²−B²) + 2i(E·B).
    pub fn f_squared(&self) -> Complex<R> {
        rs_square(&self.rs())
    }
}

/// Charge/current densities and potentials entering the source coupling
/// −ρφ + j·A.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SourcePoint<R> {
    pub rho: R,
    pub j: Vec3<R>,
    pub phi: R,
    pub a: Vec3<R>,
}

impl<R: RealScalar> SourcePoint<R> {
    pub fn new(rho: R, j: Vec3<R>, phi: R, a: Vec3<R>) -> Result<Self, DomainError> {
        if !rho.is_finite() || !phi.is_finite() {
            return Err(DomainError::NonFinite);
        }
        j.check_finite()?;
        a.check_finite()?;
        Ok(SourcePoint { rho, j, phi, a })
    }

    pub fn zero() -> Self {
        SourcePoint {
            rho: R::zero(),
            j: Vec3::zero(),
            phi: R::zero(),
            a: Vec3::zero(),
        }
    }

    /// −j_μA^μ = −ρφ + j·A.
    pub fn coupling(&self) -> R {
        -(self.rho * self.phi) + self.j.dot(&self.a)
    }
}

/// Field-strength scale of the nonlinear theory; strictly positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiParameter<R> {
    k: R,
}

impl<R: RealScalar> BiParameter<R> {
    pub fn new(k: R) -> Result<Self, DomainError> {
        if k > R::zero() && k.is_finite() {
            Ok(BiParameter { k })
        } else {
            Err(DomainError::NonPositiveScale(
                k.to_f64().unwrap_or(f64::NAN),
            ))
        }
    }

    pub fn k(&self) -> R {
        self.k
    }

    pub fn k_squared(&self) -> R {
        self.k * self.k
    }
}

/// Which density drives action and gradient dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LagrangianKind {
    Maxwell,
    BornInfeld,
    Complex,
    ComplexBi,
}

impl LagrangianKind {
    pub const ALL: [LagrangianKind; 4] = [
        LagrangianKind::Maxwell,
        LagrangianKind::BornInfeld,
        LagrangianKind::Complex,
        LagrangianKind::ComplexBi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LagrangianKind::Maxwell => "maxwell",
            LagrangianKind::BornInfeld => "born-infeld",
            LagrangianKind::Complex => "complex",
            LagrangianKind::ComplexBi => "complex-bi",
        }
    }
}

/// A density value; real densities carry a zero imaginary part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LagrangianValue<R> {
    pub value: Complex<R>,
}

impl<R: RealScalar> LagrangianValue<R> {
    pub fn real(v: R) -> Self {
        LagrangianValue {
            value: Complex::new(v, R::zero()),
        }
    }

    pub fn complex(v: Complex<R>) -> Self {
        LagrangianValue { value: v }
    }

    pub fn re(&self) -> R {
        self.value.re
    }
}

/// Branch policy for square roots of complex quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SqrtBranch {
    Principal,
    /// Pick the root closest to the closed-form reduction target.
    ReductionConsistent,
}

/// A value whose square root branch may be ambiguous.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchedValue<R> {
    pub value: Complex<R>,
    /// True when the principal root and the reduction branch differ, i.e.
    /// Re(1 − F²/k²) ≤ 0. Reported, never raised.
    pub branch_ambiguous: bool,
}

fn pick_root<R: RealScalar>(principal: Complex<R>, target: &Complex<R>) -> Complex<R> {
    if (principal - target).norm_sqr() <= (-principal - target).norm_sqr() {
        principal
    } else {
        -principal
    }
}

/// ½(E²−B²) − ρφ + j·A.
pub fn l_maxwell<R: RealScalar>(p: &FieldPoint<R>, s: &SourcePoint<R>) -> LagrangianValue<R> {
    let free = (p.e.norm_sq() - p.b.norm_sq()) / r::<R>(2.0);
    LagrangianValue::real(free + s.coupling())
}

/// −¼ F_{μν}F^{μν} − j_μA^μ, evaluated through the tensor.
pub fn l_maxwell_tensor<R: RealScalar>(
    p: &FieldPoint<R>,
    s: &SourcePoint<R>,
) -> LagrangianValue<R> {
    let f = build_faraday(&p.e, &p.b).expect("validated field point");
    let contraction = metric_contraction(&f);
    LagrangianValue::real(-contraction / r::<R>(4.0) + s.coupling())
}

/// Free parts of the quadratic density via the tensor and via its dual:
/// (−¼ F_{μν}F^{μν}, +¼ F*_{μν}F*^{μν}). Both equal ½(E²−B²).
pub fn maxwell_contraction_forms<R: RealScalar>(p: &FieldPoint<R>) -> (R, R) {
    let f = build_faraday(&p.e, &p.b).expect("validated field point");
    let dual = hodge_dual(&f).expect("builder output is antisymmetric");
    (
        -metric_contraction(&f) / r::<R>(4.0),
        metric_contraction(&dual) / r::<R>(4.0),
    )
}

/// 1 − (E²−B²)/k² − (E·B)²/k⁴, the radicand of the invariant form.
pub fn bi_radicand<R: RealScalar>(p: &FieldPoint<R>, k: &BiParameter<R>) -> R {
    let i1 = p.e.norm_sq() - p.b.norm_sq();
    let i2 = p.e.dot(&p.b);
    R::one() - i1 / k.k_squared() - (i2 * i2) / (k.k_squared() * k.k_squared())
}

/// −k²(√(1 − (E²−B²)/k² − (E·B)²/k⁴) − 1), free-field part.
pub fn l_bi_invariant<R: RealScalar>(
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
) -> Result<LagrangianValue<R>, LagrangianError> {
    let radicand = bi_radicand(p, k);
    if radicand < R::zero() {
        return Err(LagrangianError::NegativeRadicand {
            radicand: radicand.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(LagrangianValue::real(
        -k.k_squared() * (radicand.sqrt() - R::one()),
    ))
}

/// Determinant form of the nonlinear density: −k²(√(−det(g + F/k)) − √(−det g)),
/// with the normalization that recovers ½(E²−B²) for small fields (the same
/// one the invariant form carries). Agrees with `l_bi_invariant` wherever both
/// are defined.
pub fn l_bi_det<R: RealScalar>(
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
) -> Result<LagrangianValue<R>, LagrangianError> {
    let f = build_faraday(&p.e, &p.b).expect("validated field point");
    let m = metric_plus_scaled(&f, &(R::one() / k.k()));
    let radicand = -m.det();
    if radicand < R::zero() {
        return Err(LagrangianError::NegativeRadicand {
            radicand: radicand.to_f64().unwrap_or(f64::NAN),
        });
    }
    // √(−det g) = 1 for diag(1,−1,−1,−1)
    Ok(LagrangianValue::real(
        -k.k_squared() * (radicand.sqrt() - R::one()),
    ))
}

/// Canonical complex density ½F² − ρφ + j·A. Its real part is `l_maxwell`.
pub fn l_c<R: RealScalar>(p: &FieldPoint<R>, s: &SourcePoint<R>) -> LagrangianValue<R> {
    let half = Complex::new(r::<R>(0.5), R::zero());
    let value = half * p.f_squared() + Complex::new(s.coupling(), R::zero());
    LagrangianValue::complex(value)
}

/// The literal contraction −¼ F_{Cμν}F_C^{μν} under the pinned index
/// convention. Evaluates to F², i.e. twice the canonical free part ½F²; the
/// factor-2 gap is surfaced, not hidden (see the identity suite's annotated
/// check).
pub fn l_c_tensor_contraction<R: RealScalar>(p: &FieldPoint<R>) -> Complex<R> {
    let fc = build_complex_faraday(&p.e, &p.b).expect("validated field point");
    let quarter = Complex::new(r::<R>(0.25), R::zero());
    -quarter * metric_contraction(&fc)
}

/// Determinant form of the complex density: ½√(−det F_C) − j_μA^μ with the
/// chosen root branch. Equals `l_c` on the reduction-consistent branch.
pub fn l_c_det_with_branch<R: RealScalar>(
    p: &FieldPoint<R>,
    s: &SourcePoint<R>,
    branch: SqrtBranch,
) -> LagrangianValue<R> {
    let fc = build_complex_faraday(&p.e, &p.b).expect("validated field point");
    let principal = (-fc.det()).sqrt();
    let root = match branch {
        SqrtBranch::Principal => principal,
        SqrtBranch::ReductionConsistent => pick_root(principal, &p.f_squared()),
    };
    let half = Complex::new(r::<R>(0.5), R::zero());
    LagrangianValue::complex(half * root + Complex::new(s.coupling(), R::zero()))
}

pub fn l_c_det<R: RealScalar>(p: &FieldPoint<R>, s: &SourcePoint<R>) -> LagrangianValue<R> {
    l_c_det_with_branch(p, s, SqrtBranch::ReductionConsistent)
}

/// Complexified nonlinear density through the determinant:
/// −(k²/2)(√(−det(g + F_C/k)) − 1). On the reduction-consistent branch this
/// collapses to ½F² for every k.
pub fn l_bic_det_with_branch<R: RealScalar>(
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
    branch: SqrtBranch,
) -> BranchedValue<R> {
    let fc = build_complex_faraday(&p.e, &p.b).expect("validated field point");
    let inv_k = Complex::new(R::one() / k.k(), R::zero());
    let m = metric_plus_scaled(&fc, &inv_k);
    let principal = (-m.det()).sqrt();

    let k_sq = Complex::new(k.k_squared(), R::zero());
    let reduction_target = Complex::<R>::new(R::one(), R::zero()) - p.f_squared() / k_sq;
    let root = match branch {
        SqrtBranch::Principal => principal,
        SqrtBranch::ReductionConsistent => pick_root(principal, &reduction_target),
    };
    let half_k_sq = Complex::new(k.k_squared() / r::<R>(2.0), R::zero());
    BranchedValue {
        value: -half_k_sq * (root - Complex::new(R::one(), R::zero())),
        branch_ambiguous: reduction_target.re <= R::zero(),
    }
}

pub fn l_bic_det<R: RealScalar>(p: &FieldPoint<R>, k: &BiParameter<R>) -> BranchedValue<R> {
    l_bic_det_with_branch(p, k, SqrtBranch::ReductionConsistent)
}

/// The closed form the complexified density reduces to: exactly ½F²,
/// independent of k.
pub fn l_bic_closed<R: RealScalar>(p: &FieldPoint<R>, _k: &BiParameter<R>) -> LagrangianValue<R> {
    let half = Complex::new(r::<R>(0.5), R::zero());
    LagrangianValue::complex(half * p.f_squared())
}

/// Side-by-side comparison of the real nonlinear density and the real part of
/// the complexified one. The two differ generically: the real part of a
/// complex square root is not the square root of the real part.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComparisonReport<R> {
    pub re_l_bic: R,
    pub l_bi: R,
    pub difference: R,
    /// Leading-order difference for small fields:
    /// (E·B)²/(2k²) + (E²−B²)²/(8k²).
    pub leading_order_estimate: R,
}

pub fn compare_real_vs_complex_bi<R: RealScalar>(
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
) -> Result<ComparisonReport<R>, LagrangianError> {
    let l_bi = l_bi_invariant(p, k)?.re();
    let re_l_bic = l_bic_closed(p, k).re();
    let i1 = p.e.norm_sq() - p.b.norm_sq();
    let i2 = p.e.dot(&p.b);
    let k_sq = k.k_squared();
    let leading = (i2 * i2) / (r::<R>(2.0) * k_sq) + (i1 * i1) / (r::<R>(8.0) * k_sq);
    Ok(ComparisonReport {
        re_l_bic,
        l_bi,
        difference: l_bi - re_l_bic,
        leading_order_estimate: leading,
    })
}

/// Free-field density for a kind; source coupling is added by the caller.
pub fn free_density<R: RealScalar>(
    kind: LagrangianKind,
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
) -> Result<Complex<R>, LagrangianError> {
    let half = Complex::new(r::<R>(0.5), R::zero());
    match kind {
        LagrangianKind::Maxwell => Ok(Complex::new(
            (p.e.norm_sq() - p.b.norm_sq()) / r::<R>(2.0),
            R::zero(),
        )),
        LagrangianKind::BornInfeld => Ok(Complex::new(l_bi_invariant(p, k)?.re(), R::zero())),
        LagrangianKind::Complex => Ok(half * p.f_squared()),
        LagrangianKind::ComplexBi => Ok(l_bic_det(p, k).value),
    }
}

/// (∂L/∂E, ∂L/∂B) as complex vectors.
pub type FieldDerivatives<R> = (Vec3<Complex<R>>, Vec3<Complex<R>>);

/// Pointwise (∂L/∂E, ∂L/∂B) of the free-field density, as complex vectors.
///
/// The complexified nonlinear kind is differentiated through the determinant
/// (cofactor chain rule), not through its ½F² reduction, so the equality of
/// its gradient with the canonical complex one is a measured result rather
/// than a restatement.
pub fn free_density_derivatives<R: RealScalar>(
    kind: LagrangianKind,
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
) -> Result<FieldDerivatives<R>, LagrangianError> {
    match kind {
        LagrangianKind::Maxwell => Ok((
            p.e.map(|c| Complex::new(*c, R::zero())),
            p.b.map(|c| Complex::new(-*c, R::zero())),
        )),
        LagrangianKind::BornInfeld => {
            let radicand = bi_radicand(p, k);
            if radicand < R::zero() {
                return Err(LagrangianError::NegativeRadicand {
                    radicand: radicand.to_f64().unwrap_or(f64::NAN),
                });
            }
            let inv_sqrt = R::one() / radicand.sqrt();
            let i2 = p.e.dot(&p.b);
            let k_sq = k.k_squared();
            let ge = (p.e + p.b.scale(&(i2 / k_sq))).scale(&inv_sqrt);
            let gb = ((-p.b) + p.e.scale(&(i2 / k_sq))).scale(&inv_sqrt);
            Ok((
                ge.map(|c| Complex::new(*c, R::zero())),
                gb.map(|c| Complex::new(*c, R::zero())),
            ))
        }
        LagrangianKind::Complex => {
            let f = p.rs();
            let i = Complex::<R>::i();
            Ok((f, f.map(|c| i * c)))
        }
        LagrangianKind::ComplexBi => Ok(bic_det_derivatives(p, k)),
    }
}

/// dF_C/dF_c: positions and unit coefficients of the component c in the
/// complex tensor layout, for c = x, y, z.
fn fc_sensitivity<R: RealScalar>(c: usize) -> [(usize, usize, Complex<R>); 4] {
    let one = Complex::new(R::one(), R::zero());
    let i = Complex::<R>::i();
    match c {
        0 => [(0, 1, -one), (1, 0, one), (2, 3, i), (3, 2, -i)],
        1 => [(0, 2, -one), (2, 0, one), (1, 3, -i), (3, 1, i)],
        2 => [(0, 3, -one), (3, 0, one), (1, 2, i), (2, 1, -i)],
        _ => unreachable!("component index"),
    }
}

/// Chain rule through −(k²/2)(√(−det(g + F_C/k)) − 1) on the
/// reduction-consistent branch: dL/dE_c = dL/dF_c and dL/dB_c = i·dL/dF_c.
fn bic_det_derivatives<R: RealScalar>(
    p: &FieldPoint<R>,
    k: &BiParameter<R>,
) -> FieldDerivatives<R> {
    let fc = build_complex_faraday(&p.e, &p.b).expect("validated field point");
    let inv_k = Complex::new(R::one() / k.k(), R::zero());
    let m = metric_plus_scaled(&fc, &inv_k);

    let k_sq = Complex::new(k.k_squared(), R::zero());
    let reduction_target = Complex::<R>::new(R::one(), R::zero()) - p.f_squared() / k_sq;
    let root = pick_root((-m.det()).sqrt(), &reduction_target);

    // L = −(k²/2)(s − 1) with s² = −det M, so dL/dx = (k²/4s)·d(det M)/dx.
    let quarter_k_sq = Complex::new(k.k_squared() / r::<R>(4.0), R::zero());
    let factor = quarter_k_sq / root;

    let mut d_f = [Complex::<R>::new(R::zero(), R::zero()); 3];
    for (c, slot) in d_f.iter_mut().enumerate() {
        let mut ddet = Complex::new(R::zero(), R::zero());
        for (i, j, coeff) in fc_sensitivity::<R>(c) {
            ddet += m.cofactor(i, j) * coeff * inv_k;
        }
        *slot = factor * ddet;
    }

    let ge = Vec3::new(d_f[0], d_f[1], d_f[2]);
    let i = Complex::<R>::i();
    let gb = ge.map(|c| i * c);
    (ge, gb)
}

pub mod exact;
