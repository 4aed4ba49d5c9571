//! Rob's qubit as seen from Rindler region I.
//!
//! In the single-mode approximation the Unruh vacuum and excitation map to
//! `|0>_U -> cos r |0>_I |0>_II + sin r |1>_I |1>_II` and
//! `|1>_U -> |1>_I |0>_II`. Region II is causally disconnected from Rob, so
//! it is traced out.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::qmat::{c, partial_trace, ComplexMatrix, DensityMatrix, Strictness};
use crate::xstate::{x_state_matrix, XStateCoeffs};

/// Dimensionless acceleration parameter `r` in `[0, pi/4]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AccelerationParam(f64);

impl AccelerationParam {
    pub const ZERO: Self = Self(0.0);
    pub const INFINITE: Self = Self(FRAC_PI_4);

    pub fn new(r: f64) -> Result<Self> {
        // Allow the last ulp so that linspace(0, pi/4) endpoints pass.
        if !(r.is_finite() && (0.0..=FRAC_PI_4 + 1e-15).contains(&r)) {
            return Err(Error::BadRindlerParam(r));
        }
        Ok(Self(r.min(FRAC_PI_4)))
    }

    pub fn r(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalAcceleration {
    /// Proper acceleration, m/s^2.
    pub a: f64,
    /// Dirac mode frequency, rad/s.
    pub omega: f64,
    /// Speed of light, m/s.
    pub c_light: f64,
}

impl PhysicalAcceleration {
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

    pub fn new(a: f64, omega: f64) -> Self {
        Self {
            a,
            omega,
            c_light: Self::SPEED_OF_LIGHT,
        }
    }
}

/// `cos r = (exp(-2 pi omega c / a) + 1)^(-1/2)`, evaluated as
/// `r = atan(exp(-pi omega c / a))` which stays accurate in both limits.
pub fn acceleration_to_r(phys: &PhysicalAcceleration) -> Result<AccelerationParam> {
    let PhysicalAcceleration { a, omega, c_light } = *phys;
    let ok = |x: f64| x.is_finite() && x > 0.0;
    if !(ok(a) && ok(omega) && ok(c_light)) {
        return Err(Error::BadPhysicalParam { a, omega, c_light });
    }
    let x = 2.0 * PI * omega * c_light / a;
    AccelerationParam::new((-0.5 * x).exp().atan())
}

/// Alice-Rob(region I) density matrix after the Unruh transformation.
pub fn unruh_transform(coeffs: &XStateCoeffs, r: AccelerationParam) -> Result<DensityMatrix> {
    let coeffs = XStateCoeffs::new(coeffs.c1, coeffs.c2, coeffs.c3)?;
    let (cp, cm, c3) = (coeffs.c_plus(), coeffs.c_minus(), coeffs.c3);
    let (sr, cr) = r.r().sin_cos();
    let (s2, c2) = (sr * sr, cr * cr);

    let mut e = [0.0; 16];
    e[0] = (1.0 + c3) * c2;
    e[5] = (1.0 + c3) * s2 + (1.0 - c3);
    e[10] = (1.0 - c3) * c2;
    e[15] = (1.0 + c3) + (1.0 - c3) * s2;
    e[3] = cm * cr;
    e[12] = cm * cr;
    e[6] = cp * cr;
    e[9] = cp * cr;
    DensityMatrix::new(
        ComplexMatrix::from_real(4, &e.map(|x| 0.25 * x)),
        Strictness::PaperConvention,
    )
}

/// Isometry from Rob's Unruh qubit into region I (x) region II.
fn unruh_isometry(r: f64) -> ComplexMatrix {
    // 4x4 with only the first two columns used: columns are |0>_U, |1>_U,
    // rows are |I II> in the order 00, 01, 10, 11.
    let (sr, cr) = r.sin_cos();
    let mut v = ComplexMatrix::zeros(4);
    v[(0, 0)] = c(cr, 0.0);
    v[(3, 0)] = c(sr, 0.0);
    v[(2, 1)] = c(1.0, 0.0);
    v
}

/// Brute-force counterpart of [`unruh_transform`]: embeds the state in
/// Alice (x) I (x) II (dimension 8) and traces out region II.
pub fn unruh_oracle(coeffs: &XStateCoeffs, r: AccelerationParam) -> Result<DensityMatrix> {
    let coeffs = XStateCoeffs::new(coeffs.c1, coeffs.c2, coeffs.c3)?;
    let rho = x_state_matrix(&coeffs);
    let full = embed_region_ii(&rho, r.r());
    let reduced = partial_trace(&full, &[2, 2, 2], 2)?;
    DensityMatrix::new(reduced, Strictness::PaperConvention)
}

/// The 8x8 Alice (x) I (x) II operator before region II is discarded.
pub fn embed_region_ii(rho: &ComplexMatrix, r: f64) -> ComplexMatrix {
    let v = unruh_isometry(r);
    // Lift the 2x4-padded isometry to act on Alice (x) Rob: rows index
    // (a, I, II), columns index (a, rob) with rob in {0,1}.
    let mut w = ComplexMatrix::zeros(8);
    for a in 0..2 {
        for row in 0..4 {
            for rob in 0..2 {
                w[(a * 4 + row, a * 2 + rob)] = v[(row, rob)];
            }
        }
    }
    let mut padded = ComplexMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            padded[(i, j)] = rho[(i, j)];
        }
    }
    w.sandwich(&padded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::{build_x_state, is_x_form};

    fn coeffs(c1: f64, c2: f64, c3: f64) -> XStateCoeffs {
        XStateCoeffs::new(c1, c2, c3).unwrap()
    }

    #[test]
    fn isometry_is_isometric() {
        let v = unruh_isometry(0.3);
        let g = &v.adjoint() * &v;
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)].re - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn zero_acceleration_is_identity() {
        let cs = coeffs(0.3, -0.5, 0.6);
        let x = build_x_state(&cs, Strictness::PaperConvention).unwrap();
        assert_eq!(unruh_transform(&cs, AccelerationParam::ZERO).unwrap(), x);
        assert!(
            unruh_oracle(&cs, AccelerationParam::ZERO)
                .unwrap()
                .matrix()
                .max_abs_diff(x.matrix())
                < 1e-15
        );
    }

    #[test]
    fn singlet_at_infinite_acceleration() {
        let cs = coeffs(-1.0, -1.0, -1.0);
        let rho = unruh_transform(&cs, AccelerationParam::INFINITE).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| rho.matrix()[(i, i)].re).collect();
        for (got, want) in diag.iter().zip([0.0, 0.5, 0.25, 0.25]) {
            assert!((got - want).abs() < 1e-15, "{diag:?}");
        }
        let oracle = unruh_oracle(&cs, AccelerationParam::INFINITE).unwrap();
        assert!(oracle.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn maximally_mixed_has_no_coherences() {
        let r = AccelerationParam::new(0.5).unwrap();
        let rho = unruh_transform(&coeffs(0.0, 0.0, 0.0), r).unwrap();
        let (s2, c2) = (0.5f64.sin().powi(2), 0.5f64.cos().powi(2));
        let want = [c2, s2 + 1.0, c2, 1.0 + s2].map(|x| x / 4.0);
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::diagonal(&want)) < 1e-15);
    }

    #[test]
    fn outputs_are_unit_trace_x_states() {
        let rs = [0.0, 0.2, 0.5, FRAC_PI_4];
        for c1 in [-1.0, 0.0, 0.7] {
            for c3 in [-0.4, 1.0] {
                for &r in &rs {
                    let rho = unruh_transform(&coeffs(c1, 0.9, c3), AccelerationParam::new(r).unwrap()).unwrap();
                    assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
                    assert!(is_x_form(rho.matrix()));
                }
            }
        }
    }

    #[test]
    fn region_ii_trace_preserved() {
        let cs = coeffs(1.0, -1.0, 1.0);
        let full = embed_region_ii(&x_state_matrix(&cs), FRAC_PI_4);
        assert!((full.trace().re - 1.0).abs() < 1e-12);
        let reduced = unruh_oracle(&cs, AccelerationParam::INFINITE).unwrap();
        assert!((reduced.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range_r() {
        assert!(matches!(AccelerationParam::new(-0.1), Err(Error::BadRindlerParam(_))));
        assert!(matches!(AccelerationParam::new(1.0), Err(Error::BadRindlerParam(_))));
        assert!(AccelerationParam::new(FRAC_PI_4).is_ok());
    }

    #[test]
    fn acceleration_limits_and_monotonicity() {
        let omega = 1.0;
        let tiny = acceleration_to_r(&PhysicalAcceleration::new(1e-3, omega)).unwrap();
        assert!(tiny.r() < 1e-12);
        let huge = acceleration_to_r(&PhysicalAcceleration::new(1e30, omega)).unwrap();
        assert!((huge.r() - FRAC_PI_4).abs() < 1e-12);

        // cos r = (e^{-x} + 1)^{-1/2} cross-check on a log grid.
        let mut prev = 0.0;
        for k in 0..60 {
            let a = 10f64.powf(k as f64 * 0.5);
            let phys = PhysicalAcceleration::new(a, omega);
            let r = acceleration_to_r(&phys).unwrap().r();
            let x = 2.0 * PI * omega * phys.c_light / a;
            let cos_direct = ((-x).exp() + 1.0).powf(-0.5);
            assert!((r.cos() - cos_direct).abs() < 1e-14);
            assert!(r >= prev && r <= FRAC_PI_4);
            prev = r;
        }
    }

    #[test]
    fn rejects_bad_physical_params() {
        for (a, w) in [
            (0.0, 1.0),
            (-1.0, 1.0),
            (1.0, 0.0),
            (f64::NAN, 1.0),
            (f64::INFINITY, 1.0),
        ] {
            assert!(matches!(
                acceleration_to_r(&PhysicalAcceleration::new(a, w)),
                Err(Error::BadPhysicalParam { .. })
            ));
        }
    }
}
