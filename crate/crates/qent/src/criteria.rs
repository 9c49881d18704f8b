//! Mixed-state and many-particle entanglement detection.
//!
//! For any complete orthonormal Hermitian basis the summed variances obey
//! the identity `Σ_i (δO_i)² = d − Tr ρ²`, hence are at least `d − 1`.
//! Separable states then satisfy `Σ_i (δ(O_iA − O_iB))² ≥ 2(d−1)` for
//! bipartite systems and `Σ_i (δ Σ_K O_iK)² ≥ N(d−1)` for `N` particles;
//! a value below the bound certifies entanglement. A PPT (negative
//! partial-transpose eigenvalue) baseline is included for comparison
//! scans across state families.

use serde::Serialize;

use crate::bases::{conjugate_basis, OperatorBasis};
use crate::error::{Error, Result};
use crate::measures::expectation;
use crate::numerics::{eigh, embed_at, partial_trace, partial_transpose, ComplexMatrix};
use crate::states::{werner_state, DensityMatrix};
use crate::tol::VERDICT_MARGIN;

/// Which entanglement test produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    UncertaintyIdentity,
    LocalUncertainty,
    CollectiveUncertainty,
    Ppt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EntangledDetected,
    NotDetected,
}

/// Choice of B-side operators in the bipartite criterion: the same basis
/// elements, or their entrywise conjugates.
///
/// The separable bound holds either way, but detection power differs: the
/// conjugate convention annihilates the maximally entangled state, which
/// is where the criterion actually bites. Reports always record the
/// convention used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BSide {
    Same,
    Conjugate,
}

/// Outcome of one entanglement test on one state.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: CriterionKind,
    pub value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_side: Option<BSide>,
    /// Residual of the sum-uncertainty identity (identity reports only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_residual: Option<f64>,
    /// Family parameter when the report is a scan row entry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
}

/// Values within [`VERDICT_MARGIN`] of the threshold are not violations:
/// the criteria are strict inequalities and product pure states sit
/// exactly on the bound.
fn verdict_for(value: f64, threshold: f64) -> Verdict {
    if value < threshold - VERDICT_MARGIN {
        Verdict::EntangledDetected
    } else {
        Verdict::NotDetected
    }
}

fn require_hermitian_basis(basis: &OperatorBasis) -> Result<()> {
    if !basis.is_hermitian() {
        return Err(Error::Domain(format!(
            "uncertainty criteria need a Hermitian basis; '{}' is not",
            basis.name()
        )));
    }
    Ok(())
}

/// Summed variances of a complete Hermitian basis and the residual of the
/// identity `Σ_i (δO_i)² = d − Tr ρ²`.
#[derive(Debug, Clone, Serialize)]
pub struct UncertaintySum {
    pub sum: f64,
    pub residual: f64,
}

/// Evaluate `Σ_i [Tr(ρO_i²) − (Tr ρO_i)²]` and its deviation from
/// `d − Tr ρ²`. The residual is a numerical health check: the equality is
/// an operator identity and holds to ~1e-13 for any valid input.
pub fn uncertainty_identity(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<UncertaintySum> {
    require_hermitian_basis(basis)?;
    let d = rho.dim();
    if basis.dim() != d {
        return Err(Error::Shape(format!(
            "basis dimension {} does not match state dimension {d}",
            basis.dim()
        )));
    }
    let mut sum = 0.0;
    for el in basis.elements() {
        let sq = el.matmul(el)?;
        let second = expectation(rho.matrix(), &sq).re;
        let first = expectation(rho.matrix(), el).re;
        sum += second - first * first;
    }
    let residual = (sum - (d as f64 - rho.purity())).abs();
    Ok(UncertaintySum { sum, residual })
}

/// [`uncertainty_identity`] packaged as a report with the universal lower
/// bound `d − 1` as threshold. No valid state can fall below it, so a
/// detection verdict here signals numerical breakage rather than physics.
pub fn uncertainty_identity_report(
    rho: &DensityMatrix,
    basis: &OperatorBasis,
) -> Result<CriterionReport> {
    let s = uncertainty_identity(rho, basis)?;
    let threshold = rho.dim() as f64 - 1.0;
    Ok(CriterionReport {
        criterion: CriterionKind::UncertaintyIdentity,
        value: s.sum,
        threshold,
        verdict: verdict_for(s.sum, threshold),
        basis_name: Some(basis.name().to_string()),
        b_side: None,
        identity_residual: Some(s.residual),
        parameter: None,
    })
}

/// Bipartite sum-uncertainty criterion on a `d ⊗ d` state:
/// `Σ_i (δD_i)² < 2(d−1)` with `D_i = O_i ⊗ I − I ⊗ O'_i` certifies
/// entanglement. `O'_i` is `O_i` itself or its conjugate per `b_side`.
pub fn local_uncertainty_criterion(
    rho: &DensityMatrix,
    basis: &OperatorBasis,
    b_side: BSide,
) -> Result<CriterionReport> {
    let dims = rho.structure().dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::Argument(format!(
            "local uncertainty criterion needs a d⊗d state, got {dims:?}"
        )));
    }
    let d = dims[0];
    require_hermitian_basis(basis)?;
    if basis.dim() != d {
        return Err(Error::Shape(format!(
            "basis dimension {} does not match local dimension {d}",
            basis.dim()
        )));
    }

    let b_basis = match b_side {
        BSide::Same => basis.clone(),
        BSide::Conjugate => conjugate_basis(basis),
    };
    let id = ComplexMatrix::identity(d);
    let mut value = 0.0;
    for (oa, ob) in basis.elements().iter().zip(b_basis.elements()) {
        let diff = oa.kron(&id).checked_sub(&id.kron(ob))?;
        let mean = expectation(rho.matrix(), &diff).re;
        let second = expectation(rho.matrix(), &diff.matmul(&diff)?).re;
        value += second - mean * mean;
    }

    let threshold = 2.0 * (d as f64 - 1.0);
    Ok(CriterionReport {
        criterion: CriterionKind::LocalUncertainty,
        value,
        threshold,
        verdict: verdict_for(value, threshold),
        basis_name: Some(basis.name().to_string()),
        b_side: Some(b_side),
        identity_residual: None,
        parameter: None,
    })
}

/// Upper size limit for materializing collective operators as full
/// `d^N × d^N` matrices; beyond it the evaluation contracts one- and
/// two-particle reduced density matrices instead. Both paths are
/// cross-checked against each other in the tests.
const MATERIALIZE_LIMIT: usize = 12;

fn collective_value_explicit(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<f64> {
    let structure = rho.structure();
    let n = structure.num_factors();
    let total = structure.total_dim();
    let mut value = 0.0;
    for el in basis.elements() {
        let mut collective = ComplexMatrix::zeros(total, total);
        for k in 0..n {
            collective = collective.checked_add(&embed_at(el, structure, k)?)?;
        }
        let mean = expectation(rho.matrix(), &collective).re;
        let second = expectation(rho.matrix(), &collective.matmul(&collective)?).re;
        value += second - mean * mean;
    }
    Ok(value)
}

fn collective_value_implicit(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<f64> {
    let structure = rho.structure();
    let n = structure.num_factors();
    let singles: Vec<ComplexMatrix> = (0..n)
        .map(|k| partial_trace(rho.matrix(), structure, &[k]))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for k in 0..n {
        for l in (k + 1)..n {
            pairs.push(partial_trace(rho.matrix(), structure, &[k, l])?);
        }
    }
    let mut value = 0.0;
    for el in basis.elements() {
        let sq = el.matmul(el)?;
        let pair_op = el.kron(el);
        let mut mean = 0.0;
        let mut second = 0.0;
        for single in &singles {
            mean += expectation(single, el).re;
            second += expectation(single, &sq).re;
        }
        for pair in &pairs {
            second += 2.0 * expectation(pair, &pair_op).re;
        }
        value += second - mean * mean;
    }
    Ok(value)
}

/// Collective sum-uncertainty criterion for `N` identical particles:
/// `Σ_i (δ Σ_K O_iK)² < N(d−1)` certifies entanglement. For qubits with
/// the Pauli basis the collective operators are the total-spin components
/// up to a constant factor.
pub fn collective_uncertainty_criterion(
    rho: &DensityMatrix,
    basis: &OperatorBasis,
) -> Result<CriterionReport> {
    let structure = rho.structure();
    let d = structure.uniform_dim().ok_or_else(|| {
        Error::Argument(format!(
            "collective criterion needs equal local dimensions, got {:?}",
            structure.dims()
        ))
    })?;
    let n = structure.num_factors();
    if n < 2 {
        return Err(Error::Argument("collective criterion needs ≥ 2 particles".into()));
    }
    require_hermitian_basis(basis)?;
    if basis.dim() != d {
        return Err(Error::Shape(format!(
            "basis dimension {} does not match local dimension {d}",
            basis.dim()
        )));
    }

    let value = if n * d <= MATERIALIZE_LIMIT {
        collective_value_explicit(rho, basis)?
    } else {
        collective_value_implicit(rho, basis)?
    };
    let threshold = n as f64 * (d as f64 - 1.0);
    Ok(CriterionReport {
        criterion: CriterionKind::CollectiveUncertainty,
        value,
        threshold,
        verdict: verdict_for(value, threshold),
        basis_name: Some(basis.name().to_string()),
        b_side: None,
        identity_residual: None,
        parameter: None,
    })
}

/// Peres-Horodecki baseline: a negative eigenvalue of the partial
/// transpose certifies entanglement. Exact (iff) on 2⊗2 and 2⊗3.
pub fn ppt_criterion(rho: &DensityMatrix) -> Result<CriterionReport> {
    if !rho.structure().is_bipartite() {
        return Err(Error::Argument(format!(
            "PPT criterion needs a bipartite state, got {} factors",
            rho.structure().num_factors()
        )));
    }
    let pt = partial_transpose(rho.matrix(), rho.structure(), 1)?;
    let eig = eigh(&pt)?;
    let value = *eig.eigenvalues.last().expect("nonempty spectrum");
    Ok(CriterionReport {
        criterion: CriterionKind::Ppt,
        value,
        threshold: 0.0,
        verdict: verdict_for(value, 0.0),
        basis_name: None,
        b_side: None,
        identity_residual: None,
        parameter: None,
    })
}

/// Parametrized state family for criterion scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    /// `p·|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4`; entangled iff `p > 1/3`.
    Werner,
}

impl StateFamily {
    pub fn state(&self, parameter: f64) -> Result<DensityMatrix> {
        match self {
            StateFamily::Werner => werner_state(parameter),
        }
    }
}

/// One criterion to evaluate at every grid point of a scan.
#[derive(Debug, Clone)]
pub enum CriterionSpec<'a> {
    Identity { basis: &'a OperatorBasis },
    Local { basis: &'a OperatorBasis, b_side: BSide },
    Collective { basis: &'a OperatorBasis },
    Ppt,
}

impl CriterionSpec<'_> {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        match self {
            CriterionSpec::Identity { basis } => uncertainty_identity_report(rho, basis),
            CriterionSpec::Local { basis, b_side } => {
                local_uncertainty_criterion(rho, basis, *b_side)
            }
            CriterionSpec::Collective { basis } => collective_uncertainty_criterion(rho, basis),
            CriterionSpec::Ppt => ppt_criterion(rho),
        }
    }
}

/// One grid point of a scan: the family parameter and one report per
/// requested criterion, in request order.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub parameter: f64,
    pub reports: Vec<CriterionReport>,
}

/// Evaluate a list of criteria across a parameter grid of a state family.
/// Rows are returned in grid order.
pub fn criterion_scan(
    family: StateFamily,
    specs: &[CriterionSpec<'_>],
    grid: &[f64],
) -> Result<Vec<ScanRow>> {
    if grid.is_empty() {
        return Err(Error::Argument("scan grid must be nonempty".into()));
    }
    if specs.is_empty() {
        return Err(Error::Argument("scan needs at least one criterion".into()));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &parameter in grid {
        let rho = family.state(parameter)?;
        let mut reports = Vec::with_capacity(specs.len());
        for spec in specs {
            let mut report = spec.evaluate(&rho)?;
            report.parameter = Some(parameter);
            reports.push(report);
        }
        rows.push(ScanRow { parameter, reports });
    }
    Ok(rows)
}
