//! Exact-domain forms of the density identities.
//!
//! Square roots do not exist over the rationals, so the determinant forms are
//! verified through their branch-free content: the radicand identities and
//! the collapsed reductions. Everything here is polynomial in the inputs and
//! holds with zero residual.

use num_complex::Complex;
use num_traits::One;

use crate::scalar::{ComplexScalar, RingScalar};
use crate::tensor::{
    build_complex_faraday, build_faraday, hodge_dual, metric_contraction, metric_plus_scaled,
};
use crate::vec3::{rs_square, rs_vector, Vec3};

fn half<R: RingScalar>() -> R {
    R::one() / (R::one() + R::one())
}

fn quarter<R: RingScalar>() -> R {
    half::<R>() * half::<R>()
}

/// ½(E²−B²) − ρφ + j·A over any ring.
pub fn l_maxwell<R: RingScalar>(
    e: &Vec3<R>,
    b: &Vec3<R>,
    rho: &R,
    j: &Vec3<R>,
    phi: &R,
    a: &Vec3<R>,
) -> R {
    half::<R>() * (e.norm_sq() - b.norm_sq()) - rho.clone() * phi.clone() + j.dot(a)
}

/// ½F² − ρφ + j·A.
pub fn l_c<R: RingScalar>(
    e: &Vec3<R>,
    b: &Vec3<R>,
    rho: &R,
    j: &Vec3<R>,
    phi: &R,
    a: &Vec3<R>,
) -> Complex<R> {
    let f_sq = rs_square(&rs_vector(e, b));
    Complex::from_real(half::<R>()) * f_sq
        + Complex::from_real(-(rho.clone() * phi.clone()) + j.dot(a))
}

/// Free parts of the quadratic density via tensor contraction:
/// (−¼F_{μν}F^{μν}, +¼F*_{μν}F*^{μν}).
pub fn maxwell_contraction_forms<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>) -> (R, R) {
    let f = build_faraday(e, b).expect("exact inputs are finite");
    let dual = hodge_dual(&f).expect("builder output is antisymmetric");
    (
        -(quarter::<R>() * metric_contraction(&f)),
        quarter::<R>() * metric_contraction(&dual),
    )
}

/// −¼F_{Cμν}F_C^{μν}, the literal complex contraction (equals F²).
pub fn l_c_tensor_contraction<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>) -> Complex<R> {
    let fc = build_complex_faraday(e, b).expect("exact inputs are finite");
    -(Complex::from_real(quarter::<R>()) * metric_contraction(&fc))
}

/// Both sides of the real determinant-form radicand identity:
/// (−det(g + F/k), 1 − (E²−B²)/k² − (E·B)²/k⁴). Their equality is the exact
/// content of the equivalence between the determinant and invariant forms.
pub fn bi_radicand_forms<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>, k: &R) -> (R, R) {
    let f = build_faraday(e, b).expect("exact inputs are finite");
    let m = metric_plus_scaled(&f, &(R::one() / k.clone()));
    let det_side = -m.det();

    let k_sq = k.clone() * k.clone();
    let i1 = e.norm_sq() - b.norm_sq();
    let i2 = e.dot(b);
    let invariant_side = R::one() - i1 / k_sq.clone() - (i2.clone() * i2) / (k_sq.clone() * k_sq);
    (det_side, invariant_side)
}

/// Exact reduction of the complexified nonlinear density. Verifies the
/// determinant collapses to the perfect square −(1 − F²/k²)², then returns
/// −(k²/2)((1 − F²/k²) − 1). `None` if the collapse fails (it never does on
/// valid inputs; the check is what the function is for).
pub fn l_bic_reduced<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>, k: &R) -> Option<Complex<R>> {
    let fc = build_complex_faraday(e, b).expect("exact inputs are finite");
    let inv_k = Complex::from_real(R::one() / k.clone());
    let det = metric_plus_scaled(&fc, &inv_k).det();

    let k_sq = Complex::from_real(k.clone() * k.clone());
    let f_sq = rs_square(&rs_vector(e, b));
    let root = Complex::<R>::one() - f_sq / k_sq.clone();
    if det != -(root.clone() * root.clone()) {
        return None;
    }
    let half_k_sq = Complex::from_real(half::<R>()) * k_sq;
    Some(-half_k_sq * (root - Complex::<R>::one()))
}

/// ½F², the closed form the complexified density reduces to.
pub fn l_bic_closed<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>) -> Complex<R> {
    Complex::from_real(half::<R>()) * rs_square(&rs_vector(e, b))
}
