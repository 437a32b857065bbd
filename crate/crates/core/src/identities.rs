//! Lorentz invariants and the determinant identities of the field tensors.
//!
//! The five relations checked here, for any field pair (E, B) and scale k:
//!
//! 1. det F = (E·B)²
//! 2. det F* = (E·B)²
//! 3. det F_C = −(F²)² with F² = (E+iB)·(E+iB)
//! 4. √(−det F_C), on the branch matched to F², equals F²
//! 5. det(g + F_C/k) = −(1 − F²/k²)²
//!
//! All but the square root are polynomial, so they can be established with
//! zero residual over exact rationals; the float path checks them to 1e−12
//! relative.

use num_complex::Complex;
use num_traits::One;
use serde::Serialize;

use crate::error::{DomainError, TensorError};
use crate::scalar::{ComplexScalar, RealScalar, RingScalar};
use crate::tensor::{build_complex_faraday, build_faraday, hodge_dual, metric_plus_scaled};
use crate::vec3::{rs_square, rs_vector, Vec3};

/// The two Lorentz invariants: i1 = E²−B², i2 = E·B.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantPair<R> {
    pub i1: R,
    pub i2: R,
}

/// Both invariants at once; consistent with `rs_square` via
/// i1 + 2i·i2 = F·F.
pub fn lorentz_invariants<R: RingScalar>(e: &Vec3<R>, b: &Vec3<R>) -> InvariantPair<R> {
    InvariantPair {
        i1: e.norm_sq() - b.norm_sq(),
        i2: e.dot(b),
    }
}

/// One verified relation: expected vs actual with a scale-relative residual.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: [f64; 2],
    pub actual: [f64; 2],
    pub residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityCheck {
    fn from_parts(
        name: &str,
        expected: [f64; 2],
        actual: [f64; 2],
        residual: f64,
        pass: bool,
    ) -> Self {
        IdentityCheck {
            name: name.to_string(),
            expected,
            actual,
            residual,
            pass,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Outcome of `verify_det_identities`; failures are data, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl IdentityReport {
    fn from_checks(checks: Vec<IdentityCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        IdentityReport { checks, pass }
    }

    pub fn worst_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Raw material for the five relations, computed in whichever scalar domain.
pub struct IdentityQuantities<R: RingScalar> {
    pub det_f: R,
    pub det_f_dual: R,
    pub e_dot_b_sq: R,
    pub det_fc: Complex<R>,
    pub f_sq: Complex<R>,
    pub minus_f_sq_sq: Complex<R>,
    pub det_g_fc_k: Complex<R>,
    pub expected_det_g_fc_k: Complex<R>,
}

pub fn identity_quantities<R: RingScalar>(
    e: &Vec3<R>,
    b: &Vec3<R>,
    k: &R,
) -> Result<IdentityQuantities<R>, TensorError> {
    let f = build_faraday(e, b)?;
    let f_dual = hodge_dual(&f)?;
    let fc = build_complex_faraday(e, b)?;
    let f_sq = rs_square(&rs_vector(e, b));
    let e_dot_b = e.dot(b);

    let inv_k = Complex::from_real(R::one() / k.clone());
    let det_g_fc_k = metric_plus_scaled(&fc, &inv_k).det();
    // −(1 − F²/k²)²
    let k_sq = Complex::from_real(k.clone() * k.clone());
    let one_minus = Complex::<R>::one() - f_sq.clone() / k_sq;
    let expected_det_g_fc_k = -(one_minus.clone() * one_minus);

    Ok(IdentityQuantities {
        det_f: f.det(),
        det_f_dual: f_dual.det(),
        e_dot_b_sq: e_dot_b.clone() * e_dot_b,
        det_fc: fc.det(),
        f_sq: f_sq.clone(),
        minus_f_sq_sq: -(f_sq.clone() * f_sq),
        det_g_fc_k,
        expected_det_g_fc_k,
    })
}

fn rel_residual(expected: [f64; 2], actual: [f64; 2]) -> f64 {
    let diff = (expected[0] - actual[0]).hypot(expected[1] - actual[1]);
    let scale = expected[0]
        .hypot(expected[1])
        .max(actual[0].hypot(actual[1]));
    diff / (1.0 + scale)
}

fn parts<R: RealScalar>(z: &Complex<R>) -> [f64; 2] {
    [z.re.to_f64().unwrap(), z.im.to_f64().unwrap()]
}

const FLOAT_TOL: f64 = 1e-12;

/// Check the five determinant relations at one float field point.
///
/// Failures are reported in the result, not raised; only a non-positive k or
/// non-finite input is an error.
pub fn verify_det_identities<R: RealScalar>(
    e: &Vec3<R>,
    b: &Vec3<R>,
    k: R,
) -> Result<IdentityReport, DomainError> {
    if k <= R::zero() {
        return Err(DomainError::NonPositiveScale(
            k.to_f64().unwrap_or(f64::NAN),
        ));
    }
    e.check_finite()?;
    b.check_finite()?;
    let q = identity_quantities(e, b, &k).map_err(|_| DomainError::NonFinite)?;

    let mut checks = Vec::with_capacity(5);
    let real = |x: &R| [x.to_f64().unwrap(), 0.0];

    for (name, expected, actual) in [
        ("det F = (E.B)^2", real(&q.e_dot_b_sq), real(&q.det_f)),
        ("det F* = (E.B)^2", real(&q.e_dot_b_sq), real(&q.det_f_dual)),
        (
            "det F_C = -(F^2)^2",
            parts(&q.minus_f_sq_sq),
            parts(&q.det_fc),
        ),
    ] {
        let residual = rel_residual(expected, actual);
        checks.push(IdentityCheck::from_parts(
            name,
            expected,
            actual,
            residual,
            residual <= FLOAT_TOL,
        ));
    }

    // Branch-corrected square root: ±√(−det F_C), sign chosen to match F².
    let minus_det_fc = -q.det_fc;
    let principal = minus_det_fc.sqrt();
    let f_sq = q.f_sq;
    let selected = if (principal - f_sq).norm() <= (-principal - f_sq).norm() {
        principal
    } else {
        -principal
    };
    let residual = rel_residual(parts(&f_sq), parts(&selected));
    let mut root_check = IdentityCheck::from_parts(
        "sqrt(-det F_C) = F^2 (branch-corrected)",
        parts(&f_sq),
        parts(&selected),
        residual,
        residual <= FLOAT_TOL,
    );
    if selected != principal {
        root_check = root_check.with_note("principal root negated to match F^2");
    }
    checks.push(root_check);

    let residual = rel_residual(parts(&q.expected_det_g_fc_k), parts(&q.det_g_fc_k));
    checks.push(IdentityCheck::from_parts(
        "det(g + F_C/k) = -(1 - F^2/k^2)^2",
        parts(&q.expected_det_g_fc_k),
        parts(&q.det_g_fc_k),
        residual,
        residual <= FLOAT_TOL,
    ));

    Ok(IdentityReport::from_checks(checks))
}

/// Exact-domain version: every polynomial relation must hold with zero
/// residual; the square-root relation is asserted in its branch-free squared
/// form.
pub fn verify_det_identities_exact<R>(e: &Vec3<R>, b: &Vec3<R>, k: &R) -> IdentityReport
where
    R: RingScalar,
{
    let q = identity_quantities(e, b, k).expect("exact inputs are always finite");

    let approx = |x: &R| [x.approx_abs(), 0.0];
    let capprox = |z: &Complex<R>| [z.re.approx_abs(), z.im.approx_abs()];

    let mut checks = Vec::with_capacity(5);
    for (name, pass, expected, actual) in [
        (
            "det F = (E.B)^2",
            q.det_f == q.e_dot_b_sq,
            approx(&q.e_dot_b_sq),
            approx(&q.det_f),
        ),
        (
            "det F* = (E.B)^2",
            q.det_f_dual == q.e_dot_b_sq,
            approx(&q.e_dot_b_sq),
            approx(&q.det_f_dual),
        ),
        (
            "det F_C = -(F^2)^2",
            q.det_fc == q.minus_f_sq_sq,
            capprox(&q.minus_f_sq_sq),
            capprox(&q.det_fc),
        ),
        (
            "-det F_C = (F^2)^2 (root identity, branch-free)",
            -q.det_fc.clone() == q.f_sq.clone() * q.f_sq.clone(),
            capprox(&(q.f_sq.clone() * q.f_sq.clone())),
            capprox(&-q.det_fc.clone()),
        ),
        (
            "det(g + F_C/k) = -(1 - F^2/k^2)^2",
            q.det_g_fc_k == q.expected_det_g_fc_k,
            capprox(&q.expected_det_g_fc_k),
            capprox(&q.det_g_fc_k),
        ),
    ] {
        checks.push(IdentityCheck::from_parts(
            name,
            expected,
            actual,
            if pass { 0.0 } else { f64::NAN },
            pass,
        ));
    }

    IdentityReport::from_checks(checks)
}
