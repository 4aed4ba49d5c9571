//! Two-qubit concurrence: Wootters' general formula, the X-state shortcut,
//! and closed-form expressions for the three channels.

use std::f64::consts::FRAC_PI_4;

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::qmat::{
    hermitian_eigen, hermitian_eigenvalues, pauli, psd_sqrt, tensor, ComplexMatrix, DensityMatrix, EIGEN_CLAMP,
};
use crate::xstate::{is_x_form, XStateCoeffs};

/// Radicands at or above `-RADICAND_CLAMP` are treated as zero.
pub const RADICAND_CLAMP: f64 = 1e-12;
/// Radicands below `-RADICAND_ERROR` are reported as domain errors.
pub const RADICAND_ERROR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Wootters,
    XShortcut,
    ClosedForm,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wootters" => Ok(Self::Wootters),
            "xform" | "x" => Ok(Self::XShortcut),
            "closed" => Ok(Self::ClosedForm),
            other => Err(Error::BadSweepSpec(format!("unknown concurrence method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    /// Concurrence clamped to `[0, 1]`.
    pub value: f64,
    pub method: Method,
    /// Square roots of the spectrum of `rho rho~`, descending (Wootters only).
    pub lambdas: Option<[f64; 4]>,
    /// Value before clamping.
    pub raw: f64,
}

impl ConcurrenceResult {
    fn new(raw: f64, method: Method, lambdas: Option<[f64; 4]>) -> Self {
        Self {
            value: raw.clamp(0.0, 1.0),
            method,
            lambdas,
            raw,
        }
    }

    /// How far the raw value was moved by clamping into `[0, 1]`; a negative
    /// raw value from the `max(0, .)` branch does not count.
    pub fn clamp_excess(&self) -> f64 {
        (self.raw - 1.0).max(0.0)
    }
}

fn sigma_yy() -> ComplexMatrix {
    tensor(&pauli(2), &pauli(2))
}

fn check_dim(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    Ok(())
}

/// `(s_y (x) s_y) rho* (s_y (x) s_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    let yy = sigma_yy();
    &(&yy * &rho.matrix().conj()) * &yy
}

/// Wootters' concurrence `max(0, l1 - l2 - l3 - l4)`.
///
/// The `l_i` are computed as the singular values of `T = A^T (s_y (x) s_y) A`
/// where `rho = A A^dag`, read off the Hermitian embedding
/// `[[0, T], [T^dag, 0]]`. This avoids taking square roots of round-off
/// sized eigenvalues, which the `sqrt(rho) rho~ sqrt(rho)` route cannot.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    check_dim(rho)?;
    let eig = hermitian_eigen(rho.matrix())?;
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min < -EIGEN_CLAMP {
        return Err(Error::NotPSD { min_eigenvalue: min });
    }
    let mut a = eig.vectors.clone();
    for (k, &l) in eig.values.iter().enumerate() {
        let s = l.max(0.0).sqrt();
        for i in 0..4 {
            a[(i, k)] *= s;
        }
    }
    let t = &(&a.transpose() * &sigma_yy()) * &a;

    let mut h = ComplexMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            h[(i, 4 + j)] = t[(i, j)];
            h[(4 + j, i)] = t[(i, j)].conj();
        }
    }
    let sv = hermitian_eigenvalues(&h)?;
    let lambdas = [sv[0], sv[1], sv[2], sv[3]].map(|x| x.max(0.0));
    let raw = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(ConcurrenceResult::new(raw.max(0.0), Method::Wootters, Some(lambdas)))
}

/// The `l_i` via the Hermitian similarity `sqrt(rho) rho~ sqrt(rho)`.
///
/// Loses about half the significant digits on rank-deficient states; kept
/// as an independent cross-check of [`wootters_concurrence`].
pub fn wootters_lambdas_similarity(rho: &DensityMatrix) -> Result<[f64; 4]> {
    check_dim(rho)?;
    let root = psd_sqrt(rho.matrix())?;
    let r = &(&root * &spin_flip(rho)) * &root;
    let r = &r.scale(0.5) + &r.adjoint().scale(0.5);
    let ev = hermitian_eigenvalues(&r)?;
    Ok([ev[0], ev[1], ev[2], ev[3]].map(|x| x.max(0.0).sqrt()))
}

/// `2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44))`.
pub fn xstate_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    check_dim(rho)?;
    let m = rho.matrix();
    if !is_x_form(m) {
        return Err(Error::NotXForm);
    }
    let prod = |i: usize, j: usize| (m[(i, j)] * m[(j, i)]).re.max(0.0).sqrt();
    let first = prod(0, 3) - diag_root(m, 1, 2);
    let second = prod(1, 2) - diag_root(m, 0, 3);
    let raw = 2.0 * first.max(second).max(0.0);
    Ok(ConcurrenceResult::new(raw, Method::XShortcut, None))
}

fn diag_root(m: &ComplexMatrix, i: usize, j: usize) -> f64 {
    (m[(i, i)].re * m[(j, j)].re).max(0.0).sqrt()
}

fn root(term: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value >= -RADICAND_ERROR {
        Ok(0.0)
    } else {
        Err(Error::ClosedFormDomainError { term, value })
    }
}

/// Evaluates the closed-form concurrence for `kind`, term by term.
///
/// With `magnitudes_mode` the coefficients enter as `|c_i|`. The raw value is
/// kept in [`ConcurrenceResult::raw`]; `value` is clamped to `[0, 1]`.
pub fn closed_form_concurrence(
    kind: ChannelKind,
    coeffs: &XStateCoeffs,
    r: f64,
    p: f64,
    mu: f64,
    magnitudes_mode: bool,
) -> Result<ConcurrenceResult> {
    if !(r.is_finite() && (0.0..=FRAC_PI_4 + 1e-15).contains(&r)) {
        return Err(Error::BadRindlerParam(r));
    }
    for (name, value) in [("p", p), ("mu", mu)] {
        if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
            return Err(Error::BadProbability { name, value });
        }
    }
    let c = if magnitudes_mode { coeffs.magnitudes() } else { *coeffs };
    let terms = ClosedFormTerms {
        cp: c.c_plus(),
        cm: c.c_minus(),
        c3: c.c3,
        cos2: r.cos().powi(2),
        cos_2r: (2.0 * r).cos(),
        p,
        mu,
    };
    let raw = match kind {
        ChannelKind::AmplitudeDamping => terms.amplitude_damping()?,
        ChannelKind::Depolarizing => terms.depolarizing()?,
        ChannelKind::BitFlip => terms.bit_flip()?,
    };
    Ok(ConcurrenceResult::new(raw, Method::ClosedForm, None))
}

/// Shared subexpressions of the three expressions.
struct ClosedFormTerms {
    cp: f64,
    cm: f64,
    c3: f64,
    /// `cos^2 r`
    cos2: f64,
    /// `cos 2r`
    cos_2r: f64,
    p: f64,
    mu: f64,
}

impl ClosedFormTerms {
    fn amplitude_damping(&self) -> Result<f64> {
        let Self {
            cp,
            cm: _,
            c3,
            cos2,
            cos_2r,
            p,
            mu,
        } = *self;
        let coherence = cp * cp * (p * (mu - 1.0) + 1.0).powi(2) * cos2;
        let left =
            2.0 * (c3 + 1.0) * p * mu * cos2 + ((p - 2.0) * p * (mu - 1.0) - 1.0) * (c3 + (c3 + 1.0) * cos_2r - 3.0);
        let right = (p + 1.0) * (mu - 1.0) * (c3 * (p - 1.0) + (c3 + 1.0) * cos_2r * (p - 1.0) - 3.0 * p - 1.0)
            - 2.0 * (c3 + 1.0) * (p - 1.0) * mu * cos2;
        Ok((2.0 * root("ad.coherence", coherence)? - root("ad.population", left * right)?) / 8.0)
    }

    fn depolarizing(&self) -> Result<f64> {
        let Self {
            cp,
            cm,
            c3,
            cos2,
            cos_2r: _,
            p,
            mu,
        } = *self;
        let shared = (c3 + 1.0) * p * (cm * mu + cp * (-4.0 * p + (4.0 * p - 7.0) * mu + 4.0)) * cos2;
        let a1 = shared - 2.0 * cp * (p * (mu - 2.0) + 4.0);
        let a2 = shared - 2.0 * (cp * (4.0 * (mu - 1.0) * p * p + (6.0 - 8.0 * mu) * p - 4.0) + cm * p * mu);
        let first = -cos2 * a1 * a2;

        let b1 = (-4.0 * (mu - 1.0) * p * p + 8.0 * (mu - 1.0) * p + 4.0) * cm * cm - cp * p * mu * cm
            + (c3 + 1.0).powi(2) * (p * (mu - 4.0) + 4.0) * cos2
            + 4.0 * (c3 + 1.0) * p;
        let b2 = 0.25 * (c3 + 1.0).powi(2) * (p * (mu - 4.0) + 4.0) * cos2 * cos2
            - 0.25
                * (4.0 * ((mu - 1.0) * p * p - 2.0 * (mu - 1.0) * p - 1.0) * cm * cm
                    + cp * p * mu * cm
                    + 4.0 * c3 * (p * (mu - 3.0) + 4.0)
                    + 4.0 * (p * (mu - 3.0) + 4.0))
                * cos2
            + p * (mu - 2.0)
            + 4.0;
        let second = cos2 * b1 * b2;
        Ok((root("dep.first", first)? - 2.0 * root("dep.second", second)?) / 16.0)
    }

    fn bit_flip(&self) -> Result<f64> {
        let Self {
            cp,
            cm,
            c3,
            cos2,
            cos_2r: _,
            p,
            mu,
        } = *self;
        let amp =
            cp * (2.0 * (mu - 1.0) * p * p - 2.0 * (mu - 1.0) * p - 1.0) + 2.0 * cm * p * (-mu * p + p + mu - 1.0);
        let coherence = amp * amp * cos2;
        let population =
            (2.0 * p - (c3 + 1.0) * (2.0 * p - 1.0) * cos2) * ((c3 + 1.0) * (2.0 * p - 1.0) * cos2 - 2.0 * p + 2.0);
        Ok(root("bf.coherence", coherence)? - 0.5 * root("bf.population", population)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{c, Strictness};
    use crate::xstate::build_x_state;

    fn x(c1: f64, c2: f64, c3: f64) -> DensityMatrix {
        build_x_state(&XStateCoeffs::new(c1, c2, c3).unwrap(), Strictness::PaperConvention).unwrap()
    }

    #[test]
    fn spin_flip_examples() {
        let mixed = x(0.0, 0.0, 0.0);
        assert!(spin_flip(&mixed).max_abs_diff(mixed.matrix()) < 1e-16);
        let phi = x(1.0, -1.0, 1.0);
        assert!(spin_flip(&phi).max_abs_diff(phi.matrix()) < 1e-16);
        let ground = DensityMatrix::new(ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]), Strictness::Strict).unwrap();
        assert!(spin_flip(&ground).max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 0.0, 0.0, 1.0])) < 1e-16);
    }

    #[test]
    fn spin_flip_conjugates() {
        // |psi> = (|00> + i|11>)/sqrt2 is spin-flip invariant only with rho*.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = ComplexMatrix::projector(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, s)]);
        let rho = DensityMatrix::new(psi, Strictness::Strict).unwrap();
        let flipped = spin_flip(&rho);
        assert!(flipped.max_abs_diff(rho.matrix()) < 1e-15);
        assert!((wootters_concurrence(&rho).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wootters_examples() {
        assert!((wootters_concurrence(&x(1.0, -1.0, 1.0)).unwrap().value - 1.0).abs() < 1e-14);
        assert_eq!(wootters_concurrence(&x(0.0, 0.0, 0.0)).unwrap().value, 0.0);
        // Werner singlet with weight 0.8: C = (3 * 0.8 - 1) / 2.
        let w = wootters_concurrence(&x(-0.8, -0.8, -0.8)).unwrap();
        assert!((w.value - 0.7).abs() < 1e-14, "{w:?}");
        let l = w.lambdas.unwrap();
        for (got, want) in l.iter().zip([0.85, 0.05, 0.05, 0.05]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn wootters_rejects_unphysical() {
        assert!(matches!(
            wootters_concurrence(&x(0.7, 0.9, 0.4)),
            Err(Error::NotPSD { .. })
        ));
    }

    #[test]
    fn similarity_route_agrees_on_full_rank_states() {
        let rho = x(-0.6, -0.5, -0.3);
        let a = wootters_concurrence(&rho).unwrap().lambdas.unwrap();
        let b = wootters_lambdas_similarity(&rho).unwrap();
        for (p, q) in a.iter().zip(b) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn xstate_examples() {
        assert_eq!(xstate_concurrence(&x(0.0, 0.0, 0.0)).unwrap().value, 0.0);
        assert!((xstate_concurrence(&x(1.0, -1.0, 1.0)).unwrap().value - 1.0).abs() < 1e-15);
        let mut m = ComplexMatrix::identity(4).scale(0.25);
        m[(0, 1)] = c(0.1, 0.0);
        m[(1, 0)] = c(0.1, 0.0);
        let rho = DensityMatrix::new(m, Strictness::Strict).unwrap();
        assert!(matches!(xstate_concurrence(&rho), Err(Error::NotXForm)));
    }

    #[test]
    fn closed_form_range_checks() {
        let c = XStateCoeffs::new(-1.0, -1.0, -1.0).unwrap();
        assert!(closed_form_concurrence(ChannelKind::BitFlip, &c, 1.0, 0.1, 0.1, true).is_err());
        assert!(closed_form_concurrence(ChannelKind::BitFlip, &c, 0.1, 1.1, 0.1, true).is_err());
        assert!(closed_form_concurrence(ChannelKind::BitFlip, &c, 0.1, 0.1, -0.1, true).is_err());
    }

    #[test]
    fn closed_form_hand_values() {
        // Amplitude damping at p = 0, r = 0: radicands reduce to
        // 4 c+^2 and 4 (1 - c3^2), so C = (|c+| - sqrt(1 - c3^2)) / 4.
        let c = XStateCoeffs::new(0.3, 0.5, 0.6).unwrap();
        let v = closed_form_concurrence(ChannelKind::AmplitudeDamping, &c, 0.0, 0.0, 0.0, false).unwrap();
        assert!((v.raw - (0.8 - 0.8) / 4.0).abs() < 1e-15);
        let c28 = XStateCoeffs::new(0.3, 0.5, 0.28).unwrap();
        let v = closed_form_concurrence(ChannelKind::AmplitudeDamping, &c28, 0.0, 0.0, 0.0, false).unwrap();
        assert!((v.raw + 0.04).abs() < 1e-15);

        // Bit flip at p = 0, r = 0: |c+| - sqrt(-(c3 + 1)(c3 + 1 - 2))/2
        //   = |c+| - sqrt(1 - c3^2)/2.
        let v = closed_form_concurrence(ChannelKind::BitFlip, &c, 0.0, 0.0, 0.0, false).unwrap();
        assert!((v.raw - (0.8 - 0.4)).abs() < 1e-15);

        // Bell magnitudes give the memoryless depolarizing value 1 at p = 0.
        let bell = XStateCoeffs::new(-1.0, -1.0, -1.0).unwrap();
        let v = closed_form_concurrence(ChannelKind::Depolarizing, &bell, 0.0, 0.0, 0.0, true).unwrap();
        assert!((v.raw - 1.0).abs() < 1e-15);
    }

    #[test]
    fn depolarizing_closed_form_positive_at_full_noise_with_memory() {
        let bell = XStateCoeffs::new(-1.0, -1.0, -1.0).unwrap();
        for magnitudes in [true, false] {
            let v = closed_form_concurrence(ChannelKind::Depolarizing, &bell, FRAC_PI_4, 1.0, 0.5, magnitudes).unwrap();
            assert!(v.value > 0.0);
        }
    }

    #[test]
    fn domain_error_carries_term() {
        match root("bf.population", -0.5) {
            Err(Error::ClosedFormDomainError { term, value }) => {
                assert_eq!(term, "bf.population");
                assert_eq!(value, -0.5);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(root("x", -1e-13).unwrap(), 0.0);
    }
}
