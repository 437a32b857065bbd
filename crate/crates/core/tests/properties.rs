//! Property tests for the structural invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use fieldlab_core::lagrangian::{self, BiParameter, FieldPoint, SourcePoint};
use fieldlab_core::tensor::{build_complex_faraday, build_faraday, hodge_dual};
use fieldlab_core::vec3::{rs_square, rs_vector, Vec3};

fn field() -> impl Strategy<Value = Vec3<f64>> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

proptest! {
    #[test]
    fn builders_produce_antisymmetric_tensors(e in field(), b in field()) {
        let f = build_faraday(&e, &b).unwrap();
        prop_assert_eq!(f.antisymmetry_violation(), 0.0);
        let dual = hodge_dual(&f).unwrap();
        prop_assert_eq!(dual.antisymmetry_violation(), 0.0);
        let fc = build_complex_faraday(&e, &b).unwrap();
        prop_assert_eq!(fc.antisymmetry_violation(), 0.0);
    }

    #[test]
    fn double_dual_is_negation(e in field(), b in field()) {
        let f = build_faraday(&e, &b).unwrap();
        let dd = hodge_dual(&hodge_dual(&f).unwrap()).unwrap();
        prop_assert_eq!(dd, f.neg());
    }

    #[test]
    fn pfaffian_squared_is_determinant(e in field(), b in field()) {
        let f = build_faraday(&e, &b).unwrap();
        let pf = f.pfaffian().unwrap();
        let scale = 1.0 + f.det().abs();
        prop_assert!((pf * pf - f.det()).abs() <= 1e-12 * scale);

        let fc = build_complex_faraday(&e, &b).unwrap();
        let pfc = fc.pfaffian().unwrap();
        let scale = 1.0 + fc.det().norm();
        prop_assert!((pfc * pfc - fc.det()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn dual_preserves_determinant(e in field(), b in field()) {
        let f = build_faraday(&e, &b).unwrap();
        let dual = hodge_dual(&f).unwrap();
        let scale = 1.0 + f.det().abs();
        prop_assert!((f.det() - dual.det()).abs() <= 1e-12 * scale);
    }

    #[test]
    fn invariant_pair_consistent_with_rs_square(e in field(), b in field()) {
        let pair = fieldlab_core::identities::lorentz_invariants(&e, &b);
        let f2 = rs_square(&rs_vector(&e, &b));
        let expect = Complex64::new(pair.i1, 2.0 * pair.i2);
        prop_assert!((f2 - expect).norm() <= 1e-13 * (1.0 + f2.norm()));
    }

    #[test]
    fn complex_density_real_part_is_quadratic_density(
        e in field(),
        b in field(),
        rho in -2.0..2.0f64,
        phi in -2.0..2.0f64,
    ) {
        let p = FieldPoint::new(e, b).unwrap();
        let s = SourcePoint::new(rho, Vec3::zero(), phi, Vec3::zero()).unwrap();
        let lc = lagrangian::l_c(&p, &s);
        let lm = lagrangian::l_maxwell(&p, &s);
        prop_assert!((lc.value.re - lm.re()).abs() <= 1e-13 * (1.0 + lm.re().abs()));
    }

    #[test]
    fn nonlinear_forms_agree_inside_the_bound(e in field(), b in field()) {
        // k = 10 keeps |fields| ≤ 3·√3 well inside the bound
        let k = BiParameter::new(10.0).unwrap();
        let p = FieldPoint::new(e, b).unwrap();
        let det_form = lagrangian::l_bi_det(&p, &k).unwrap().re();
        let inv_form = lagrangian::l_bi_invariant(&p, &k).unwrap().re();
        prop_assert!((det_form - inv_form).abs() <= 1e-12 * (1.0 + inv_form.abs()));
    }

    #[test]
    fn complexified_density_collapses_for_any_field(e in field(), b in field()) {
        let k = BiParameter::new(10.0).unwrap();
        let p = FieldPoint::new(e, b).unwrap();
        let det_route = lagrangian::l_bic_det(&p, &k).value;
        let closed = lagrangian::l_bic_closed(&p, &k).value;
        prop_assert!((det_route - closed).norm() <= 1e-12 * (1.0 + closed.norm()));
    }
}
