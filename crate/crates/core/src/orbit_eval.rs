//! Floating-point evaluation of orbit functions and generalized cosines.
//!
//! This is the numeric oracle for the exact machinery in [`crate::cheb`]:
//! everything here sums exponentials directly over the Weyl group.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cheb::cheb_polynomial;
use crate::error::{Error, Result};
use crate::weyl::{orbit, weyl_group, AlgebraId, Weight, WeylElement};

/// Seed for the reproducible sample angles used by oracle checks.
pub const ORACLE_SEED: u64 = 0x5eed_c0de;
/// Relative tolerance for exact-vs-numeric comparisons.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

/// Angle coordinates in the coroot basis, radians.
#[derive(Clone, Debug, PartialEq)]
pub struct AnglePoint(pub Vec<f64>);

impl AnglePoint {
    pub fn new1(phi: f64) -> Self {
        AnglePoint(vec![phi])
    }

    pub fn new2(phi: f64, psi: f64) -> Self {
        AnglePoint(vec![phi, psi])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Contragredient action: `(w n, phi) = (n, w^T phi)`.
    pub fn transformed(&self, w: &WeylElement) -> AnglePoint {
        let r = self.rank();
        AnglePoint(
            (0..r)
                .map(|j| (0..r).map(|i| w.matrix[i][j] as f64 * self.0[i]).sum())
                .collect(),
        )
    }
}

fn check_point(algebra: AlgebraId, p: &AnglePoint) -> Result<()> {
    if p.rank() != algebra.rank() {
        return Err(Error::RankMismatch {
            algebra,
            weight: Weight::zero(p.rank()),
            got: p.rank(),
            rank: algebra.rank(),
        });
    }
    Ok(())
}

fn exp_pairing(n: &Weight, p: &AnglePoint) -> Complex64 {
    let arg: f64 = n.to_f64().iter().zip(&p.0).map(|(a, b)| a * b).sum();
    Complex64::from_polar(1.0, arg)
}

/// `sum_{w in W} exp(i (w n, phi))`, unnormalized.
pub fn orbit_sum_eval(algebra: AlgebraId, n: &Weight, p: &AnglePoint) -> Result<Complex64> {
    algebra.data().check_rank(n)?;
    check_point(algebra, p)?;
    Ok(weyl_group(algebra)
        .iter()
        .map(|w| exp_pairing(&w.apply(n), p))
        .sum())
}

/// Generalized cosines `x_i = orbit sum of lambda_i / k_i`. For A1 the second
/// coordinate is zero.
///
/// These are real for A1, C2 and G2. For A2 the orbit of `lambda_1` does not
/// contain `-lambda_1`, so `x` is complex and `y` is its conjugate.
pub fn cosine_coords(algebra: AlgebraId, p: &AnglePoint) -> Result<[Complex64; 2]> {
    let data = algebra.data();
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for i in 1..=data.rank {
        let s = orbit_sum_eval(algebra, &data.fundamental_weight(i), p)?;
        out[i - 1] = s / data.stabilizer_normalizers[i - 1] as f64;
    }
    Ok(out)
}

/// Orbit sum divided by the stabilizer order: the numeric value of the
/// Chebyshev polynomial with index `n`.
pub fn cheb_eval_numeric(algebra: AlgebraId, n: &Weight, p: &AnglePoint) -> Result<Complex64> {
    if !n.is_dominant() {
        return Err(Error::NonDominant(n.clone()));
    }
    let stab = orbit(algebra, n)?.stabilizer_order as f64;
    Ok(orbit_sum_eval(algebra, n, p)? / stab)
}

/// `count` angle points, uniform on `[0, 2 pi)` per coordinate.
pub fn sample_points(algebra: AlgebraId, count: usize, seed: u64) -> Vec<AnglePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| AnglePoint((0..algebra.rank()).map(|_| rng.gen_range(0.0..TAU)).collect()))
        .collect()
}

/// Largest relative gap between the exact polynomial `pi_n`, evaluated at the
/// generalized cosines of each point, and the direct orbit sum there.
pub fn oracle_relative_error(algebra: AlgebraId, n: &Weight, points: &[AnglePoint]) -> Result<f64> {
    let pi = cheb_polynomial(algebra, n)?;
    let mut worst = 0.0f64;
    for p in points {
        let [x, y] = cosine_coords(algebra, p)?;
        let direct = cheb_eval_numeric(algebra, n, p)?;
        let gap = |v: Complex64| (v - direct).norm() / direct.norm().max(1.0);
        let mut err = gap(pi.eval_float(x, y));
        if err.is_nan() || err > ORACLE_TOLERANCE * 1e-3 {
            err = gap(pi.eval_complex(x, y));
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn orbit_sum_examples() {
        let origin = AnglePoint::new2(0.0, 0.0);
        let v = orbit_sum_eval(AlgebraId::A2, &w(&[1, 0]), &origin).unwrap();
        assert!((v - Complex64::new(6.0, 0.0)).norm() < 1e-12);
        for p in sample_points(AlgebraId::A2, 5, 1) {
            let v = orbit_sum_eval(AlgebraId::A2, &w(&[0, 0]), &p).unwrap();
            assert!((v - Complex64::new(6.0, 0.0)).norm() < 1e-12);
        }
        let v = orbit_sum_eval(AlgebraId::C2, &w(&[1, 0]), &AnglePoint::new2(PI, 0.0)).unwrap();
        assert!((v - Complex64::new(-8.0, 0.0)).norm() < 1e-12);
    }

    fn re_pair(z: [Complex64; 2]) -> [f64; 2] {
        assert!(z.iter().all(|c| c.im.abs() < 1e-12));
        [z[0].re, z[1].re]
    }

    #[test]
    fn cosine_coords_at_origin() {
        let origin = AnglePoint::new2(0.0, 0.0);
        assert_eq!(re_pair(cosine_coords(AlgebraId::A2, &origin).unwrap()), [3.0, 3.0]);
        assert_eq!(re_pair(cosine_coords(AlgebraId::C2, &origin).unwrap()), [4.0, 4.0]);
        assert_eq!(re_pair(cosine_coords(AlgebraId::G2, &origin).unwrap()), [6.0, 6.0]);
        let a1 = cosine_coords(AlgebraId::A1, &AnglePoint::new1(0.0)).unwrap();
        assert_eq!(re_pair(a1), [2.0, 0.0]);
    }

    #[test]
    fn a2_cosines_are_conjugate() {
        for p in sample_points(AlgebraId::A2, 20, 11) {
            let [x, y] = cosine_coords(AlgebraId::A2, &p).unwrap();
            assert!((x - y.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn a1_classical_value() {
        let v = cheb_eval_numeric(AlgebraId::A1, &w(&[2]), &AnglePoint::new1(PI / 3.0)).unwrap();
        assert!((v.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn a2_fundamental_and_product() {
        for p in sample_points(AlgebraId::A2, 50, 7) {
            let [x, y] = cosine_coords(AlgebraId::A2, &p).unwrap();
            let v10 = cheb_eval_numeric(AlgebraId::A2, &w(&[1, 0]), &p).unwrap();
            assert!((v10 - x).norm() < 1e-12);
            let v11 = cheb_eval_numeric(AlgebraId::A2, &w(&[1, 1]), &p).unwrap();
            assert!((v11 - (x * y - 3.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn non_dominant_index_rejected() {
        let p = AnglePoint::new2(0.1, 0.2);
        assert!(matches!(
            cheb_eval_numeric(AlgebraId::A2, &w(&[-1, 2]), &p),
            Err(Error::NonDominant(_))
        ));
    }

    #[test]
    fn weyl_invariance_and_conjugation() {
        for id in AlgebraId::RANK_TWO {
            for p in sample_points(id, 20, 3) {
                for n in [w(&[1, 0]), w(&[2, 3]), w(&[0, 5])] {
                    let base = orbit_sum_eval(id, &n, &p).unwrap();
                    if id != AlgebraId::A2 {
                        assert!(base.im.abs() < 1e-10);
                    }
                    for g in weyl_group(id) {
                        let moved_index = orbit_sum_eval(id, &g.apply(&n), &p).unwrap();
                        assert!((moved_index - base).norm() < 1e-9);
                        let moved_point = orbit_sum_eval(id, &n, &p.transformed(g)).unwrap();
                        assert!((moved_point - base).norm() < 1e-9);
                    }
                    let neg = orbit_sum_eval(id, &-&n, &p).unwrap();
                    assert!((neg - base.conj()).norm() < 1e-9);
                    if id == AlgebraId::A2 {
                        // -(m,n) lies in the orbit of (n,m).
                        let swapped = Weight(vec![n.0[1].clone(), n.0[0].clone()]);
                        let s = orbit_sum_eval(id, &swapped, &p).unwrap();
                        assert!((s - base.conj()).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_polynomials_agree_with_orbit_sums() {
        for id in AlgebraId::ALL {
            let pts = sample_points(id, 10, ORACLE_SEED);
            let n = if id.rank() == 1 { w(&[5]) } else { w(&[3, 2]) };
            assert!(oracle_relative_error(id, &n, &pts).unwrap() < ORACLE_TOLERANCE);
        }
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(
            sample_points(AlgebraId::G2, 10, ORACLE_SEED),
            sample_points(AlgebraId::G2, 10, ORACLE_SEED)
        );
    }
}
