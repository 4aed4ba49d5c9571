//! Single-qubit Kraus sets and their memory-correlated two-qubit versions.
//!
//! Pauli-type channels (depolarizing, bit flip) use the partial-memory
//! construction `A_ij = sqrt(p_i [(1 - mu) p_j + mu delta_ij]) s_i (x) s_j`:
//! with probability `mu` the second qubit sees the same Pauli error as the
//! first. Amplitude damping uses a two-branch mixture of independent damping
//! and the correlated pair `{diag(cos chi, 1, 1, 1), sin chi |11><00|}` with
//! `sin chi = sqrt(p)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmat::{c, pauli, tensor, ComplexMatrix, DensityMatrix};

/// Completeness must hold to this max-abs residual.
pub const COMPLETENESS_TOL: f64 = 1e-12;
/// Trace/Hermiticity tolerance on channel outputs.
pub const OUTPUT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    AmplitudeDamping,
    Depolarizing,
    BitFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [Self::AmplitudeDamping, Self::Depolarizing, Self::BitFlip];

    pub fn label(self) -> &'static str {
        match self {
            Self::AmplitudeDamping => "ad",
            Self::Depolarizing => "dep",
            Self::BitFlip => "bf",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ad" | "amplitude-damping" => Ok(Self::AmplitudeDamping),
            "dep" | "depolarizing" => Ok(Self::Depolarizing),
            "bf" | "bit-flip" => Ok(Self::BitFlip),
            _ => Err(Error::UnknownChannel(s.to_string())),
        }
    }
}

/// How the correlated two-qubit map is applied to the shared pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Application {
    /// One use of the correlated map on Alice (x) Rob.
    #[default]
    SingleCorrelatedUse,
    /// Two consecutive uses: `sum_{k1,k2} A_k2 A_k1 rho A_k1^dag A_k2^dag`.
    DoubleStreamed,
}

impl Application {
    pub const ALL: [Application; 2] = [Self::SingleCorrelatedUse, Self::DoubleStreamed];

    pub fn label(self) -> &'static str {
        match self {
            Self::SingleCorrelatedUse => "single",
            Self::DoubleStreamed => "double",
        }
    }
}

impl fmt::Display for Application {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Application {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Self::SingleCorrelatedUse),
            "double" => Ok(Self::DoubleStreamed),
            _ => Err(Error::BadSweepSpec(format!("unknown application mode `{s}`"))),
        }
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::BadProbability { name, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub p: f64,
    pub mu: f64,
    pub application: Application,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, p: f64, mu: f64, application: Application) -> Result<Self> {
        Ok(Self {
            kind,
            p: check_probability("p", p)?,
            mu: check_probability("mu", mu)?,
            application,
        })
    }

    /// The Kraus set of one channel use.
    pub fn kraus_set(&self) -> Result<KrausSet> {
        match self.kind {
            ChannelKind::AmplitudeDamping => correlated_ad_channel(self.p, self.mu),
            kind => correlated_pauli_kraus(kind, self.p, self.mu),
        }
    }
}

/// Kraus operators `K_k`, optionally with mixture weights `w_k` so that the
/// map is `rho -> sum_k w_k K_k rho K_k^dag`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    dim: usize,
    ops: Vec<ComplexMatrix>,
    weights: Option<Vec<f64>>,
}

impl KrausSet {
    pub fn new(ops: Vec<ComplexMatrix>) -> Self {
        let dim = ops.first().map_or(0, ComplexMatrix::dim);
        assert!(
            ops.iter().all(|k| k.dim() == dim),
            "Kraus operators must share a dimension"
        );
        Self {
            dim,
            ops,
            weights: None,
        }
    }

    pub fn weighted(ops: Vec<ComplexMatrix>, weights: Vec<f64>) -> Self {
        assert_eq!(ops.len(), weights.len());
        let mut set = Self::new(ops);
        set.weights = Some(weights);
        set
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn weight(&self, k: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[k])
    }

    /// `sum_k w_k K_k^dag K_k`.
    pub fn completeness_sum(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for (k, op) in self.ops.iter().enumerate() {
            acc = &acc + &(&op.adjoint() * op).scale(self.weight(k));
        }
        acc
    }

    /// Max-abs distance of the completeness sum from the identity.
    pub fn completeness_residual(&self) -> f64 {
        self.completeness_sum().max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim);
        for (k, op) in self.ops.iter().enumerate() {
            let w = self.weight(k);
            if w == 0.0 {
                continue;
            }
            out = &out + &op.sandwich(rho).scale(w);
        }
        out
    }
}

/// Single-qubit Kraus operators of each channel.
pub fn single_qubit_kraus(kind: ChannelKind, p: f64) -> Result<KrausSet> {
    let p = check_probability("p", p)?;
    let z = c(0.0, 0.0);
    let ops = match kind {
        ChannelKind::AmplitudeDamping => vec![
            ComplexMatrix::from_entries(vec![c(1.0, 0.0), z, z, c((1.0 - p).sqrt(), 0.0)]),
            ComplexMatrix::from_entries(vec![z, c(p.sqrt(), 0.0), z, z]),
        ],
        _ => {
            let probs = pauli_probabilities(kind, p)?;
            (0..4)
                .filter(|&i| kind == ChannelKind::Depolarizing || i < 2)
                .map(|i| pauli(i).scale(probs[i].sqrt()))
                .collect()
        }
    };
    Ok(KrausSet::new(ops))
}

/// Pauli error distribution over `(I, X, Y, Z)`.
pub fn pauli_probabilities(kind: ChannelKind, p: f64) -> Result<[f64; 4]> {
    let p = check_probability("p", p)?;
    match kind {
        ChannelKind::Depolarizing => Ok([1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p]),
        ChannelKind::BitFlip => Ok([1.0 - p, p, 0.0, 0.0]),
        ChannelKind::AmplitudeDamping => Err(Error::NotAPauliChannel),
    }
}

/// Weight `p_i [(1 - mu) p_j + mu delta_ij]` of the `s_i (x) s_j` error.
pub fn correlated_pauli_weight(probs: &[f64; 4], mu: f64, i: usize, j: usize) -> f64 {
    let delta = if i == j { 1.0 } else { 0.0 };
    probs[i] * ((1.0 - mu) * probs[j] + mu * delta)
}

/// The 16 operators `A_ij`, index `4 i + j`; zero-weight operators are kept.
pub fn correlated_pauli_kraus(kind: ChannelKind, p: f64, mu: f64) -> Result<KrausSet> {
    let probs = pauli_probabilities(kind, p)?;
    let mu = check_probability("mu", mu)?;
    let mut ops = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let w = correlated_pauli_weight(&probs, mu, i, j);
            ops.push(tensor(&pauli(i), &pauli(j)).scale(w.max(0.0).sqrt()));
        }
    }
    Ok(KrausSet::new(ops))
}

/// Mixture-form correlated amplitude damping: four independent-damping
/// operators with weight `1 - mu`, then `A^c_00`, `A^c_11` with weight `mu`.
pub fn correlated_ad_channel(p: f64, mu: f64) -> Result<KrausSet> {
    let p = check_probability("p", p)?;
    let mu = check_probability("mu", mu)?;
    let single = single_qubit_kraus(ChannelKind::AmplitudeDamping, p)?;
    let mut ops = Vec::with_capacity(6);
    for a in single.ops() {
        for b in single.ops() {
            ops.push(tensor(a, b));
        }
    }
    let (sin_chi, cos_chi) = (p.sqrt(), (1.0 - p).sqrt());
    ops.push(ComplexMatrix::diagonal(&[cos_chi, 1.0, 1.0, 1.0]));
    let mut a11 = ComplexMatrix::zeros(4);
    a11[(3, 0)] = c(sin_chi, 0.0);
    ops.push(a11);

    let weights = [vec![1.0 - mu; 4], vec![mu; 2]].concat();
    Ok(KrausSet::weighted(ops, weights))
}

/// Applies the channel described by `spec` to a two-qubit state.
pub fn apply_channel(rho: &DensityMatrix, spec: &ChannelSpec) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let set = spec.kraus_set()?;
    let residual = set.completeness_residual();
    if residual > COMPLETENESS_TOL {
        return Err(Error::ChannelNotTracePreserving { residual });
    }
    let once = set.apply(rho.matrix());
    let out = match spec.application {
        Application::SingleCorrelatedUse => once,
        Application::DoubleStreamed => set.apply(&once),
    };
    DensityMatrix::with_tolerance(out, rho.strictness(), OUTPUT_TOL)
}
