//! Rank-2 field tensors on flat space-time and their determinant algebra.
//!
//! Index convention (contravariant, metric diag(1,−1,−1,−1)):
//!
//! ```text
//! T^{0i} = −E_i        T^{ij} = −ε^{ijk} B_k
//! ```
//!
//! so the complex tensor built from F = E + iB reads, row by row,
//! `(0, −Fx, −Fy, −Fz; Fx, 0, iFz, −iFy; Fy, −iFz, 0, iFx; Fz, iFy, −iFx, 0)`.
//! The Hodge dual is the substitution (E, B) → (B, −E) in this layout.
//!
//! Everything here is generic over the scalar ring, so the same code runs in
//! `Complex<f64>` for the solvers and in `Complex<BigRational>` for exact
//! identity checks. [`Tensor4::det`] is a division-free cofactor expansion
//! for that reason.

use num_complex::Complex;

use crate::error::TensorError;
use num_traits::Zero;

use crate::scalar::RingScalar;
use crate::vec3::{rs_vector, Vec3};

/// Dense 4×4 tensor over a ring scalar. Row index first.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4<T> {
    entries: [[T; 4]; 4],
}

impl<T: RingScalar> Tensor4<T> {
    pub fn from_entries(entries: [[T; 4]; 4]) -> Self {
        Tensor4 { entries }
    }

    pub fn zero() -> Self {
        Tensor4::from_entries(std::array::from_fn(|_| std::array::from_fn(|_| T::zero())))
    }

    /// The metric diag(1, −1, −1, −1).
    pub fn metric() -> Self {
        let mut g = Self::zero();
        g.entries[0][0] = T::one();
        for i in 1..4 {
            g.entries[i][i] = -T::one();
        }
        g
    }

    pub fn get(&self, mu: usize, nu: usize) -> &T {
        &self.entries[mu][nu]
    }

    pub fn entries(&self) -> &[[T; 4]; 4] {
        &self.entries
    }

    pub fn map<U: RingScalar>(&self, mut f: impl FnMut(&T) -> U) -> Tensor4<U> {
        Tensor4::from_entries(std::array::from_fn(|i| {
            std::array::from_fn(|j| f(&self.entries[i][j]))
        }))
    }

    pub fn add(&self, other: &Self) -> Self {
        Tensor4::from_entries(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[i][j].clone() + other.entries[i][j].clone())
        }))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|e| e.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e.clone())
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|row| row.iter().all(|e| e.is_finite_scalar()))
    }

    /// Largest entry magnitude, for scale-relative tolerances.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter())
            .map(RingScalar::approx_abs)
            .fold(0.0, f64::max)
    }

    /// max over (μ,ν) of |T^{μν} + T^{νμ}|, as f64.
    pub fn antisymmetry_violation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in i..4 {
                let v = (self.entries[i][j].clone() + self.entries[j][i].clone()).approx_abs();
                worst = worst.max(v);
            }
        }
        worst
    }

    /// Exact in a rational domain; tolerant of 1 ulp-scale noise in float.
    pub fn check_antisymmetric(&self) -> Result<(), TensorError> {
        let violation = self.antisymmetry_violation();
        if violation <= 1e-12 * (1.0 + self.max_abs()) {
            Ok(())
        } else {
            Err(TensorError::NotAntisymmetric {
                max_violation: violation,
            })
        }
    }

    /// Pfaffian of an antisymmetric 4×4: a01·a23 − a02·a13 + a03·a12.
    /// Satisfies pf(T)² = det(T).
    pub fn pfaffian(&self) -> Result<T, TensorError> {
        self.check_antisymmetric()?;
        let a = &self.entries;
        Ok(
            a[0][1].clone() * a[2][3].clone() - a[0][2].clone() * a[1][3].clone()
                + a[0][3].clone() * a[1][2].clone(),
        )
    }

    /// Determinant by cofactor expansion along the first row (division-free).
    pub fn det(&self) -> T {
        let mut acc = T::zero();
        for j in 0..4 {
            let term = self.entries[0][j].clone() * self.minor3(0, j);
            if j % 2 == 0 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        acc
    }

    /// Cofactor C_{ij} = ∂det/∂T^{ij}.
    pub fn cofactor(&self, i: usize, j: usize) -> T {
        let m = self.minor3(i, j);
        if (i + j).is_multiple_of(2) {
            m
        } else {
            -m
        }
    }

    fn minor3(&self, skip_row: usize, skip_col: usize) -> T {
        let mut m: Vec<&T> = Vec::with_capacity(9);
        for (i, row) in self.entries.iter().enumerate() {
            if i == skip_row {
                continue;
            }
            for (j, e) in row.iter().enumerate() {
                if j == skip_col {
                    continue;
                }
                m.push(e);
            }
        }
        let p = |a: &T, b: &T, c: &T| a.clone() * b.clone() * c.clone();
        p(m[0], m[4], m[8]) - p(m[0], m[5], m[7]) - p(m[1], m[3], m[8])
            + p(m[1], m[5], m[6])
            + p(m[2], m[3], m[7])
            - p(m[2], m[4], m[6])
    }
}

/// Real Faraday tensor from the field pair (E, B).
pub fn build_faraday<T: RingScalar>(e: &Vec3<T>, b: &Vec3<T>) -> Result<Tensor4<T>, TensorError> {
    if !(e.is_finite() && b.is_finite()) {
        return Err(TensorError::NonFinite);
    }
    let z = T::zero;
    Ok(Tensor4::from_entries([
        [z(), -e.x.clone(), -e.y.clone(), -e.z.clone()],
        [e.x.clone(), z(), -b.z.clone(), b.y.clone()],
        [e.y.clone(), b.z.clone(), z(), -b.x.clone()],
        [e.z.clone(), -b.y.clone(), b.x.clone(), z()],
    ]))
}

/// Read the field pair back out of a tensor in Faraday layout.
pub fn faraday_fields<T: RingScalar>(t: &Tensor4<T>) -> (Vec3<T>, Vec3<T>) {
    let a = t.entries();
    let e = Vec3::new(-a[0][1].clone(), -a[0][2].clone(), -a[0][3].clone());
    let b = Vec3::new(-a[2][3].clone(), a[1][3].clone(), -a[1][2].clone());
    (e, b)
}

/// Hodge dual via the substitution (E, B) → (B, −E).
/// Applying it twice negates the input.
pub fn hodge_dual<T: RingScalar>(t: &Tensor4<T>) -> Result<Tensor4<T>, TensorError> {
    t.check_antisymmetric()?;
    let (e, b) = faraday_fields(t);
    build_faraday(&b, &(-e))
}

/// Complex Faraday tensor F + i·F*, equal to the Faraday layout evaluated on
/// the complex vector F = E + iB.
pub fn build_complex_faraday<R: RingScalar>(
    e: &Vec3<R>,
    b: &Vec3<R>,
) -> Result<Tensor4<Complex<R>>, TensorError> {
    let f = rs_vector(e, b);
    let i = Complex::<R>::i();
    let z = Complex::<R>::zero;
    Ok(Tensor4::from_entries([
        [z(), -f.x.clone(), -f.y.clone(), -f.z.clone()],
        [
            f.x.clone(),
            z(),
            i.clone() * f.z.clone(),
            -(i.clone() * f.y.clone()),
        ],
        [
            f.y.clone(),
            -(i.clone() * f.z.clone()),
            z(),
            i.clone() * f.x.clone(),
        ],
        [
            f.z.clone(),
            i.clone() * f.y.clone(),
            -(i.clone() * f.x.clone()),
            z(),
        ],
    ]))
}

/// g + T/k, the matrix under the Born-Infeld determinant.
pub fn metric_plus_scaled<T: RingScalar>(t: &Tensor4<T>, inv_k: &T) -> Tensor4<T> {
    Tensor4::metric().add(&t.scale(inv_k))
}

/// T_{μν} T^{μν}: the double contraction with both indices lowered by
/// diag(1, −1, −1, −1).
pub fn metric_contraction<T: RingScalar>(t: &Tensor4<T>) -> T {
    let sign = |mu: usize| mu == 0;
    let mut acc = T::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let upper = t.get(mu, nu).clone();
            let term = upper.clone() * upper;
            // lowered entry differs from the upper one by the product of the
            // two metric signs
            if sign(mu) == sign(nu) {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    #[test]
    fn faraday_of_zero_fields_is_zero() {
        let t = build_faraday(&v(0.0, 0.0, 0.0), &v(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(t, Tensor4::zero());
    }

    #[test]
    fn faraday_unit_e_field() {
        let t = build_faraday(&v(1.0, 0.0, 0.0), &v(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(*t.get(0, 1), -1.0);
        assert_eq!(*t.get(1, 0), 1.0);
        let explicit = [(0usize, 1usize), (1, 0)];
        for i in 0..4 {
            for j in 0..4 {
                if !explicit.contains(&(i, j)) {
                    assert_eq!(*t.get(i, j), 0.0, "entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn faraday_unit_b_field() {
        let t = build_faraday(&v(0.0, 0.0, 0.0), &v(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(*t.get(1, 2), -1.0);
        assert_eq!(*t.get(2, 1), 1.0);
        assert_eq!(t.pfaffian().unwrap(), 0.0);
    }

    #[test]
    fn faraday_rejects_non_finite() {
        let r = build_faraday(&v(f64::NAN, 0.0, 0.0), &v(0.0, 0.0, 0.0));
        assert_eq!(r, Err(TensorError::NonFinite));
    }

    #[test]
    fn fields_round_trip_through_layout() {
        let e = v(1.5, -2.0, 0.25);
        let b = v(-0.5, 3.0, 1.0);
        let t = build_faraday(&e, &b).unwrap();
        assert_eq!(faraday_fields(&t), (e, b));
    }

    #[test]
    fn dual_swaps_fields_and_double_dual_negates() {
        let e = v(1.0, 0.0, 0.0);
        let b = v(0.0, 0.0, 0.0);
        let t = build_faraday(&e, &b).unwrap();
        let dual = hodge_dual(&t).unwrap();
        // (E, B) -> (B, -E)
        assert_eq!(dual, build_faraday(&b, &-e).unwrap());
        let dd = hodge_dual(&dual).unwrap();
        assert_eq!(dd, t.neg());
    }

    #[test]
    fn dual_rejects_non_antisymmetric() {
        let mut entries = [[0.0; 4]; 4];
        entries[0][0] = 1.0;
        let t = Tensor4::from_entries(entries);
        assert!(matches!(
            hodge_dual(&t),
            Err(TensorError::NotAntisymmetric { .. })
        ));
    }

    #[test]
    fn complex_faraday_matches_real_plus_i_dual() {
        let e = v(0.3, -1.2, 0.7);
        let b = v(2.0, 0.1, -0.4);
        let fc = build_complex_faraday(&e, &b).unwrap();
        let f = build_faraday(&e, &b).unwrap();
        let fd = hodge_dual(&f).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = Complex64::new(*f.get(i, j), *fd.get(i, j));
                let diff = (*fc.get(i, j) - expect).norm();
                assert!(diff < 1e-15, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn complex_faraday_displayed_entries() {
        // F = (1, 0, 0): entries (0,1) = −1, (2,3) = i, (3,2) = −i.
        let fc = build_complex_faraday(&v(1.0, 0.0, 0.0), &v(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(*fc.get(0, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(*fc.get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(*fc.get(2, 3), Complex64::new(0.0, 1.0));
        assert_eq!(*fc.get(3, 2), Complex64::new(0.0, -1.0));

        // F = (0, 1, i) from E=(0,1,0), B=(0,0,1):
        // (0,2) = −1, (0,3) = −i, (1,2) = i·i = −1, (1,3) = −i.
        let fc = build_complex_faraday(&v(0.0, 1.0, 0.0), &v(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(*fc.get(0, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(*fc.get(0, 3), Complex64::new(0.0, -1.0));
        assert_eq!(*fc.get(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(*fc.get(1, 3), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn pfaffian_of_faraday_is_e_dot_b() {
        let e = v(0.5, -1.0, 2.0);
        let b = v(1.25, 0.75, -0.5);
        let t = build_faraday(&e, &b).unwrap();
        let pf = t.pfaffian().unwrap();
        assert!((pf - e.dot(&b)).abs() < 1e-14);
        assert!((pf * pf - t.det()).abs() < 1e-14);
    }

    #[test]
    fn pfaffian_of_complex_faraday_is_minus_i_f_squared() {
        let e = v(0.5, -1.0, 2.0);
        let b = v(1.25, 0.75, -0.5);
        let fc = build_complex_faraday(&e, &b).unwrap();
        let pf = fc.pfaffian().unwrap();
        let f2 = crate::vec3::rs_square(&rs_vector(&e, &b));
        let expect = -Complex64::i() * f2;
        assert!((pf - expect).norm() < 1e-13);
    }

    #[test]
    fn det_of_identity_and_metric() {
        let id = Tensor4::<f64>::from_entries(std::array::from_fn(|r| {
            std::array::from_fn(|c| if r == c { 1.0 } else { 0.0 })
        }));
        assert_eq!(id.det(), 1.0);
        assert_eq!(Tensor4::<f64>::metric().det(), -1.0);
    }

    #[test]
    fn det_of_metric_plus_complex_faraday_null_case() {
        // E = (0,1,0), B = 0, k = 1: det(g + F_C) = −(1 − F²)² = 0.
        let fc = build_complex_faraday(&v(0.0, 1.0, 0.0), &v(0.0, 0.0, 0.0)).unwrap();
        let m = metric_plus_scaled(&fc, &Complex64::new(1.0, 0.0));
        assert!(m.det().norm() < 1e-14);
    }

    #[test]
    fn cofactor_is_determinant_derivative() {
        let e = v(0.4, 0.9, -0.3);
        let b = v(-0.2, 0.6, 1.1);
        let m = metric_plus_scaled(&build_faraday(&e, &b).unwrap(), &0.5);
        let h = 1e-6;
        for i in 0..4 {
            for j in 0..4 {
                let mut plus = *m.entries();
                plus[i][j] += h;
                let mut minus = *m.entries();
                minus[i][j] -= h;
                let fd = (Tensor4::from_entries(plus).det() - Tensor4::from_entries(minus).det())
                    / (2.0 * h);
                assert!((fd - m.cofactor(i, j)).abs() < 1e-8, "entry ({i},{j})");
            }
        }
    }
}
