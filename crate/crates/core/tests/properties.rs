//! Property tests for the linear algebra kernel and the physics pipeline.

use proptest::prelude::*;

use rindler_noise::channels::{apply_channel, Application, ChannelKind, ChannelSpec};
use rindler_noise::concurrence::{wootters_concurrence, wootters_lambdas_similarity, xstate_concurrence};
use rindler_noise::qmat::{
    hermitian_eigen, partial_trace, pauli, psd_sqrt, tensor, ComplexMatrix, DensityMatrix, Strictness, C64,
};
use rindler_noise::unruh::{unruh_transform, AccelerationParam};
use rindler_noise::xstate::XStateCoeffs;

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim)
        .prop_map(|v| ComplexMatrix::from_entries(v.into_iter().map(|(re, im)| C64::new(re, im)).collect()))
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|a| &a + &a.adjoint())
}

/// A A^dag / tr, full rank with probability one.
fn density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    matrix(dim).prop_map(|a| {
        let m = &a * &a.adjoint();
        let tr = m.trace().re;
        let m = m.scale(1.0 / tr);
        // Exact Hermitian symmetrisation before validation.
        let m = &m.scale(0.5) + &m.adjoint().scale(0.5);
        DensityMatrix::new(m, Strictness::Strict).unwrap()
    })
}

/// `cos t I - i sin t (n . sigma)` for a unit vector `n`.
fn qubit_unitary() -> impl Strategy<Value = ComplexMatrix> {
    (
        0.0..std::f64::consts::PI,
        0.0..std::f64::consts::PI,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(t, th, ph)| {
            let n = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
            let mut u = pauli(0).scale(t.cos());
            for (k, nk) in n.iter().enumerate() {
                let term = pauli(k + 1).scale(nk * t.sin());
                for i in 0..2 {
                    for j in 0..2 {
                        u[(i, j)] -= C64::new(0.0, 1.0) * term[(i, j)];
                    }
                }
            }
            u
        })
}

fn physical_coeffs() -> impl Strategy<Value = XStateCoeffs> {
    (-1.0..=1.0f64, -1.0..=1.0f64, -1.0..=1.0f64).prop_filter_map("unphysical", |(a, b, c)| {
        XStateCoeffs::new(a, b, c).ok().filter(|c| c.is_physical())
    })
}

fn kind() -> impl Strategy<Value = ChannelKind> {
    prop::sample::select(ChannelKind::ALL.to_vec())
}

fn application() -> impl Strategy<Value = Application> {
    prop::sample::select(Application::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_of_product(a in matrix(2), b in matrix(2)) {
        let ab = tensor(&a, &b);
        let left = partial_trace(&ab, &[2, 2], 1).unwrap();
        let right = partial_trace(&ab, &[2, 2], 0).unwrap();
        prop_assert!(left.max_abs_diff(&scaled(&a, b.trace())) < 1e-12);
        prop_assert!(right.max_abs_diff(&scaled(&b, a.trace())) < 1e-12);
    }

    #[test]
    fn eigen_decomposition_reconstructs(h in hermitian(4)) {
        let eig = hermitian_eigen(&h).unwrap();
        let sum: f64 = eig.values.iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-12);
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(eig.reconstruct_with(|x| x).max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn eigen_on_eight_by_eight(h in hermitian(8)) {
        let eig = hermitian_eigen(&h).unwrap();
        prop_assert!(eig.reconstruct_with(|x| x).max_abs_diff(&h) < 1e-11);
    }

    #[test]
    fn sqrt_squares_back(rho in density(4)) {
        let s = psd_sqrt(rho.matrix()).unwrap();
        prop_assert!((&s * &s).max_abs_diff(rho.matrix()) < 1e-12);
        prop_assert!(s.hermiticity_residual() < 1e-12);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(rho in density(4), ua in qubit_unitary(), ub in qubit_unitary()) {
        let u = tensor(&ua, &ub);
        let rotated = u.sandwich(rho.matrix());
        let rotated = &rotated.scale(0.5) + &rotated.adjoint().scale(0.5);
        let rotated = DensityMatrix::new(rotated, Strictness::Strict).unwrap();
        let c0 = wootters_concurrence(&rho).unwrap().value;
        let c1 = wootters_concurrence(&rotated).unwrap().value;
        prop_assert!((c0 - c1).abs() < 1e-10, "{c0} vs {c1}");
        prop_assert!((0.0..=1.0).contains(&c0));
    }

    #[test]
    fn wootters_routes_agree(rho in density(4)) {
        let w = wootters_concurrence(&rho).unwrap();
        let lam = wootters_lambdas_similarity(&rho).unwrap();
        let sim = (lam[0] - lam[1] - lam[2] - lam[3]).max(0.0);
        prop_assert!((w.value - sim).abs() < 1e-7);
    }

    #[test]
    fn pipeline_outputs_are_physical_x_states(
        c in physical_coeffs(),
        kind in kind(),
        app in application(),
        p in 0.0..=1.0f64,
        mu in 0.0..=1.0f64,
        r in 0.0..=std::f64::consts::FRAC_PI_4,
    ) {
        let rho = unruh_transform(&c, AccelerationParam::new(r).unwrap()).unwrap();
        let out = apply_channel(&rho, &ChannelSpec::new(kind, p, mu, app).unwrap()).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.is_psd());
        let w = wootters_concurrence(&out).unwrap().value;
        let x = xstate_concurrence(&out).unwrap().value;
        prop_assert!((w - x).abs() < 1e-10, "{w} vs {x}");
    }

    #[test]
    fn pauli_channels_are_affine_in_mu(
        c in physical_coeffs(),
        depol in any::<bool>(),
        p in 0.0..=1.0f64,
        mu in 0.0..=1.0f64,
    ) {
        let kind = if depol { ChannelKind::Depolarizing } else { ChannelKind::BitFlip };
        let rho = DensityMatrix::new(rindler_noise::xstate::x_state_matrix(&c), Strictness::Strict).unwrap();
        let at = |m: f64| {
            let spec = ChannelSpec::new(kind, p, m, Application::SingleCorrelatedUse).unwrap();
            apply_channel(&rho, &spec).unwrap().into_matrix()
        };
        let mix = &at(0.0).scale(1.0 - mu) + &at(1.0).scale(mu);
        prop_assert!(at(mu).max_abs_diff(&mix) < 1e-12);
    }
}

fn scaled(m: &ComplexMatrix, s: C64) -> ComplexMatrix {
    let mut out = m.clone();
    let n = out.dim();
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] *= s;
        }
    }
    out
}
