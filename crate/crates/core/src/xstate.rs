//! Two-qubit X-states `1/4 (I + c1 XX + c2 YY + c3 ZZ)` and the named presets.
//!
//! Basis order is |00>, |01>, |10>, |11> with the inertial observer on the
//! left. In this basis the state is real, with the populations on the
//! diagonal and the coherences `c- = c1 - c2` (corners) and `c+ = c1 + c2`
//! (inner anti-diagonal).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmat::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix, Strictness, EIGEN_CLAMP};

/// Threshold below which an off-X entry counts as zero.
pub const X_FORM_TOL: f64 = 1e-12;

/// Signed correlation coefficients of an X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl XStateCoeffs {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for value in [c1, c2, c3] {
            if !value.is_finite() || value.abs() > 1.0 {
                return Err(Error::BadCoefficient { value });
            }
        }
        Ok(Self { c1, c2, c3 })
    }

    /// `c1 + c2`
    pub fn c_plus(&self) -> f64 {
        self.c1 + self.c2
    }

    /// `c1 - c2`
    pub fn c_minus(&self) -> f64 {
        self.c1 - self.c2
    }

    pub fn magnitudes(&self) -> Self {
        Self {
            c1: self.c1.abs(),
            c2: self.c2.abs(),
            c3: self.c3.abs(),
        }
    }

    /// Closed-form spectrum `1/4(1+c3 +- c-)`, `1/4(1-c3 +- c+)`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let (cp, cm, c3) = (self.c_plus(), self.c_minus(), self.c3);
        [
            0.25 * (1.0 + c3 + cm),
            0.25 * (1.0 + c3 - cm),
            0.25 * (1.0 - c3 + cp),
            0.25 * (1.0 - c3 - cp),
        ]
    }

    pub fn is_physical(&self) -> bool {
        self.eigenvalues().iter().all(|&l| l >= -EIGEN_CLAMP)
    }
}

impl fmt::Display for XStateCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1, self.c2, self.c3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    Bell,
    Werner,
    General,
    Custom,
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bell" => Ok(Self::Bell),
            "werner" => Ok(Self::Werner),
            "general" => Ok(Self::General),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Coefficients of a named preset with the default sign convention:
/// Bell and Werner take the singlet-family signs `(-|c1|, -|c2|, -|c3|)`,
/// General takes `(+0.7, +0.9, +0.4)`.
pub fn preset_coeffs(name: PresetName) -> Result<XStateCoeffs> {
    match name {
        PresetName::Bell => XStateCoeffs::new(-1.0, -1.0, -1.0),
        PresetName::Werner => XStateCoeffs::new(-0.8, -0.8, -0.8),
        PresetName::General => XStateCoeffs::new(0.7, 0.9, 0.4),
        PresetName::Custom => Err(Error::UnknownPreset("custom".into())),
    }
}

/// A named initial state as used by sweeps and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePreset {
    pub name: PresetName,
    pub coeffs: XStateCoeffs,
    /// Feed `|c_i|` to the closed-form concurrence expressions.
    pub magnitudes_mode: bool,
}

impl StatePreset {
    pub fn named(name: PresetName) -> Result<Self> {
        Ok(Self {
            name,
            coeffs: preset_coeffs(name)?,
            magnitudes_mode: true,
        })
    }

    pub fn bell() -> Self {
        Self::named(PresetName::Bell).expect("builtin preset")
    }

    pub fn werner() -> Self {
        Self::named(PresetName::Werner).expect("builtin preset")
    }

    pub fn general() -> Self {
        Self::named(PresetName::General).expect("builtin preset")
    }

    pub fn custom(coeffs: XStateCoeffs) -> Self {
        Self {
            name: PresetName::Custom,
            coeffs,
            magnitudes_mode: false,
        }
    }

    /// The three presets of the figure panels, in panel order.
    pub fn figure_presets() -> [Self; 3] {
        [Self::bell(), Self::werner(), Self::general()]
    }

    /// Coefficients handed to the closed-form expressions.
    pub fn closed_form_coeffs(&self) -> XStateCoeffs {
        if self.magnitudes_mode {
            self.coeffs.magnitudes()
        } else {
            self.coeffs
        }
    }

    /// Short label, free of commas so it can sit in a CSV cell.
    pub fn label(&self) -> String {
        match self.name {
            PresetName::Bell => "bell".into(),
            PresetName::Werner => "werner".into(),
            PresetName::General => "general".into(),
            PresetName::Custom => {
                let c = self.coeffs;
                format!("custom:{}/{}/{}", c.c1, c.c2, c.c3)
            }
        }
    }
}

impl FromStr for StatePreset {
    type Err = Error;

    /// `bell`, `werner`, `general` or `custom:c1,c2,c3`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("custom:") {
            let parts: Vec<f64> = rest
                .split([',', '/'])
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnknownPreset(s.to_string()))?;
            if parts.len() != 3 {
                return Err(Error::UnknownPreset(s.to_string()));
            }
            return Ok(Self::custom(XStateCoeffs::new(parts[0], parts[1], parts[2])?));
        }
        Self::named(s.parse()?)
    }
}

/// Raw X-state matrix, no validation beyond the coefficient range.
pub fn x_state_matrix(c: &XStateCoeffs) -> ComplexMatrix {
    let (cp, cm, c3) = (c.c_plus(), c.c_minus(), c.c3);
    let mut entries = [0.0; 16];
    entries[0] = 1.0 + c3;
    entries[5] = 1.0 - c3;
    entries[10] = 1.0 - c3;
    entries[15] = 1.0 + c3;
    entries[3] = cm;
    entries[12] = cm;
    entries[6] = cp;
    entries[9] = cp;
    ComplexMatrix::from_real(4, &entries.map(|x| 0.25 * x))
}

pub fn build_x_state(c: &XStateCoeffs, strictness: Strictness) -> Result<DensityMatrix> {
    let c = XStateCoeffs::new(c.c1, c.c2, c.c3)?;
    if strictness == Strictness::Strict && !c.is_physical() {
        return Err(Error::UnphysicalState {
            eigenvalues: c.eigenvalues(),
        });
    }
    DensityMatrix::new(x_state_matrix(&c), strictness)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace: f64,
    pub hermiticity_residual: f64,
    pub min_eigenvalue: f64,
    pub is_x_form: bool,
}

impl StateDiagnostics {
    pub fn is_physical(&self) -> bool {
        self.min_eigenvalue >= -EIGEN_CLAMP
    }
}

/// True when every entry off the diagonal and anti-diagonal is below
/// [`X_FORM_TOL`] in magnitude.
pub fn is_x_form(m: &ComplexMatrix) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || i + j == n - 1 || m[(i, j)].norm() < X_FORM_TOL))
}

pub fn state_diagnostics(rho: &DensityMatrix) -> StateDiagnostics {
    let m = rho.matrix();
    StateDiagnostics {
        trace: m.trace().re,
        hermiticity_residual: m.hermiticity_residual(),
        min_eigenvalue: hermitian_eigenvalues(m)
            .expect("density matrix is Hermitian")
            .last()
            .copied()
            .unwrap_or(0.0),
        is_x_form: is_x_form(m),
    }
}
