//! On-disk state format: a small JSON schema carrying either a pure-state
//! amplitude vector or a row-major density matrix, with explicit factor
//! dimensions. Complex numbers are always two-element `[re, im]` arrays.
//!
//! Serialization writes every float with 17 significant digits, which is
//! enough for `f64` round trips to be bit-exact.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qent::numerics::{ComplexMatrix, TensorStructure};
use qent::states::{DensityMatrix, PureState};

use crate::{CliError, ExitKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Mixed,
}

/// Schema of a state file. `data` holds amplitudes for `pure`, row-major
/// matrix entries for `mixed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub kind: StateKind,
    pub dims: Vec<usize>,
    pub data: Vec<[f64; 2]>,
}

/// A state file parsed and validated into a live value.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl LoadedState {
    pub fn kind(&self) -> StateKind {
        match self {
            LoadedState::Pure(_) => StateKind::Pure,
            LoadedState::Mixed(_) => StateKind::Mixed,
        }
    }

    /// View as a density matrix regardless of kind.
    pub fn density(&self) -> DensityMatrix {
        match self {
            LoadedState::Pure(psi) => DensityMatrix::from_pure(psi),
            LoadedState::Mixed(rho) => rho.clone(),
        }
    }
}

impl StateFile {
    pub fn parse(json: &str) -> Result<Self, CliError> {
        serde_json::from_str(json)
            .map_err(|e| CliError::new(ExitKind::State, format!("cannot parse state file: {e}")))
    }

    /// Read, hash, and parse a state file. Returns the parsed schema and
    /// the content digest of the raw bytes.
    pub fn load(path: &Path) -> Result<(Self, String), CliError> {
        let bytes = std::fs::read(path).map_err(|e| {
            CliError::new(
                ExitKind::State,
                format!("cannot read state file {}: {e}", path.display()),
            )
        })?;
        let digest = format!("sha256:{}", hex_digest(&bytes));
        let text = String::from_utf8(bytes).map_err(|_| {
            CliError::new(ExitKind::State, "state file is not valid UTF-8".to_string())
        })?;
        Ok((Self::parse(&text)?, digest))
    }

    /// Validate and convert into a live state value.
    pub fn to_state(&self) -> Result<LoadedState, CliError> {
        let structure = TensorStructure::new(self.dims.clone())
            .map_err(|e| CliError::new(ExitKind::State, e.to_string()))?;
        let total = structure.total_dim();
        let entries: Vec<Complex64> = self
            .data
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        match self.kind {
            StateKind::Pure => {
                if entries.len() != total {
                    return Err(CliError::new(
                        ExitKind::State,
                        format!(
                            "pure state over dims {:?} needs {total} amplitudes, found {}",
                            self.dims,
                            entries.len()
                        ),
                    ));
                }
                let psi = PureState::new(entries, structure)
                    .map_err(|e| CliError::new(ExitKind::State, e.to_string()))?;
                Ok(LoadedState::Pure(psi))
            }
            StateKind::Mixed => {
                if entries.len() != total * total {
                    return Err(CliError::new(
                        ExitKind::State,
                        format!(
                            "mixed state over dims {:?} needs {} entries, found {}",
                            self.dims,
                            total * total,
                            entries.len()
                        ),
                    ));
                }
                let matrix = ComplexMatrix::from_fn(total, total, |i, j| entries[i * total + j]);
                let rho = DensityMatrix::new(matrix, structure)
                    .map_err(|e| CliError::new(ExitKind::State, e.to_string()))?;
                Ok(LoadedState::Mixed(rho))
            }
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            kind: StateKind::Pure,
            dims: psi.structure().dims().to_vec(),
            data: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self {
            kind: StateKind::Mixed,
            dims: rho.structure().dims().to_vec(),
            data: rho.matrix().entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Serialize with 17-significant-digit floats (bit-exact reload).
    pub fn to_json_string(&self) -> String {
        let kind = match self.kind {
            StateKind::Pure => "pure",
            StateKind::Mixed => "mixed",
        };
        let dims = self
            .dims
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let mut out = String::new();
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "  \"kind\": \"{kind}\",");
        let _ = writeln!(out, "  \"dims\": [{dims}],");
        let _ = writeln!(out, "  \"data\": [");
        for (i, [re, im]) in self.data.iter().enumerate() {
            let sep = if i + 1 == self.data.len() { "" } else { "," };
            let _ = writeln!(out, "    [{re:.16e}, {im:.16e}]{sep}");
        }
        let _ = writeln!(out, "  ]");
        let _ = write!(out, "}}");
        out
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in hash {
        let _ = write!(out, "{b:02x}");
    }
    out
}
