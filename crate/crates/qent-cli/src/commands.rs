//! Command implementations. Each returns a [`Report`]; `main.rs` decides
//! how to print it and maps [`CliError`] kinds onto exit codes.

use std::path::Path;

use clap::ValueEnum;

use qent::bases::{
    gellmann_basis, pauli_basis, verify_completeness, verify_hermitian_sum_rule,
    verify_orthonormality, weyl_basis, OperatorBasis,
};
use qent::criteria::{
    collective_uncertainty_criterion, criterion_scan, local_uncertainty_criterion, ppt_criterion,
    uncertainty_identity_report, BSide, CriterionSpec, StateFamily,
};
use qent::measures::{
    me2_gellmann_closed_form, me2_identical, me2_weyl_closed_form, me_chain, me_direct,
    MeasureResult,
};
use qent::states::{schmidt_spectrum, symmetry_report, PureState, RNG_ALGORITHM};
use qent::tol::EQ_TOL;

use crate::report::{Report, ResultEntry, RngInfo};
use crate::statefile::{LoadedState, StateFile};
use crate::{CliError, ExitKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// 1 − Tr ρ_Aⁿ by matrix powers
    Direct,
    /// Nested operator-expectation sum (needs `--basis`)
    Chain,
    /// Closed form from SU(d) generators (n = 2)
    Gellmann,
    /// Closed form from clock/shift monomials (n = 2)
    Weyl,
    /// Single-particle measure for N identical particles (n = 2)
    Identical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    /// Sum-uncertainty identity Σ(δO)² = d − Tr ρ²
    Identity,
    /// Bipartite local-difference uncertainty criterion
    Local,
    /// Collective-operator uncertainty criterion
    Collective,
    /// Peres-Horodecki partial-transpose baseline
    Ppt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BSideArg {
    Same,
    Conjugate,
}

impl From<BSideArg> for BSide {
    fn from(b: BSideArg) -> Self {
        match b {
            BSideArg::Same => BSide::Same,
            BSideArg::Conjugate => BSide::Conjugate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// p·|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4 on two qubits
    Werner,
}

/// Instantiate a basis family by name at the dimension the state demands.
pub fn build_basis(name: &str, dim: usize) -> Result<OperatorBasis, CliError> {
    match name {
        "pauli" => {
            if dim != 2 {
                return Err(CliError::argument(format!(
                    "pauli basis is defined for dim 2 (requested dim {dim})"
                )));
            }
            Ok(pauli_basis())
        }
        "gellmann" => Ok(gellmann_basis(dim)?),
        "weyl" => Ok(weyl_basis(dim)?),
        other => Err(CliError::argument(format!(
            "unknown basis '{other}' (expected pauli, gellmann, or weyl)"
        ))),
    }
}

fn require_hermitian(basis: &OperatorBasis) -> Result<(), CliError> {
    if !basis.is_hermitian() {
        return Err(CliError::argument(format!(
            "criterion needs a Hermitian basis; '{}' is unitary — use pauli or gellmann",
            basis.name()
        )));
    }
    Ok(())
}

fn parse_keep(keep: Option<&str>) -> Result<Vec<usize>, CliError> {
    match keep {
        None => Ok(vec![0]),
        Some(list) => list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::argument(format!("bad factor index '{tok}' in --keep")))
            })
            .collect(),
    }
}

fn load_pure(path: &Path) -> Result<(PureState, String), CliError> {
    let (file, digest) = StateFile::load(path)?;
    match file.to_state()? {
        LoadedState::Pure(psi) => Ok((psi, digest)),
        LoadedState::Mixed(_) => Err(CliError::new(
            ExitKind::State,
            "entanglement measures are defined for pure states only; \
             use `qent criterion` for mixed-state entanglement tests",
        )),
    }
}

fn measure_entry(result: MeasureResult, per_particle: Option<Vec<f64>>) -> ResultEntry {
    let i_concurrence = result.i_concurrence();
    ResultEntry::Measure {
        result,
        i_concurrence,
        per_particle,
    }
}

fn require_n2(n: u32, method: &str) -> Result<(), CliError> {
    if n != 2 {
        return Err(CliError::argument(format!(
            "method '{method}' evaluates M(2); pass --n 2 (got {n})"
        )));
    }
    Ok(())
}

fn symmetry_advisory(psi: &PureState, warnings: &mut Vec<String>) {
    if let Ok(report) = symmetry_report(psi) {
        let best = report
            .symmetric_residual
            .min(report.antisymmetric_residual);
        if best > 1e-8 {
            warnings.push(format!(
                "state is neither permutation-symmetric nor antisymmetric \
                 (residuals: sym {:.3e}, antisym {:.3e}); identical-particle \
                 interpretation is ambiguous",
                report.symmetric_residual, report.antisymmetric_residual
            ));
        }
    }
}

pub fn cmd_measure(
    echo: Vec<String>,
    state: &Path,
    n: u32,
    method: MethodArg,
    basis_names: &[String],
    keep: Option<&str>,
) -> Result<Report, CliError> {
    let (psi, digest) = load_pure(state)?;
    let mut report = Report::new(echo);
    report.input_digest = Some(digest);
    let keep = parse_keep(keep)?;

    match method {
        MethodArg::Direct => {
            if !basis_names.is_empty() {
                return Err(CliError::argument(
                    "--basis applies to the chain method only",
                ));
            }
            report.results.push(measure_entry(me_direct(&psi, n, &keep)?, None));
        }
        MethodArg::Chain => {
            if n < 2 {
                return Err(CliError::argument(format!("measure needs n ≥ 2, got {n}")));
            }
            let slots = (n - 1) as usize;
            let names: Vec<&str> = match basis_names.len() {
                0 => {
                    return Err(CliError::argument(
                        "chain method needs --basis (one flag per slot, or one to broadcast)",
                    ))
                }
                1 => vec![basis_names[0].as_str(); slots],
                k if k == slots => basis_names.iter().map(String::as_str).collect(),
                k => {
                    return Err(CliError::argument(format!(
                        "chain for n = {n} needs {slots} --basis flags (or a single one), got {k}"
                    )))
                }
            };
            let reduced_dim = psi.structure().substructure(&keep)?.total_dim();
            let bases: Vec<OperatorBasis> = names
                .iter()
                .map(|name| build_basis(name, reduced_dim))
                .collect::<Result<_, _>>()?;
            let refs: Vec<&OperatorBasis> = bases.iter().collect();
            report
                .results
                .push(measure_entry(me_chain(&psi, n, &refs, &keep)?, None));
        }
        MethodArg::Gellmann | MethodArg::Weyl => {
            let name = if method == MethodArg::Gellmann {
                "gellmann"
            } else {
                "weyl"
            };
            require_n2(n, name)?;
            if !basis_names.is_empty() {
                return Err(CliError::argument(
                    "closed-form methods fix their own basis; drop --basis",
                ));
            }
            if keep != [0] {
                return Err(CliError::argument(
                    "closed-form methods act on factor 0; drop --keep",
                ));
            }
            let result = if method == MethodArg::Gellmann {
                me2_gellmann_closed_form(&psi)?
            } else {
                me2_weyl_closed_form(&psi)?
            };
            report.results.push(measure_entry(result, None));
        }
        MethodArg::Identical => {
            require_n2(n, "identical")?;
            if keep != [0] {
                return Err(CliError::argument(
                    "the identical-particle measure uses every particle; drop --keep",
                ));
            }
            let m = me2_identical(&psi)?;
            symmetry_advisory(&psi, &mut report.warnings);
            if m.values_disagree() {
                let values: Vec<String> =
                    m.per_particle.iter().map(|v| format!("{v:.12}")).collect();
                report.warnings.push(format!(
                    "per-particle measure values disagree beyond 1e-9: [{}]",
                    values.join(", ")
                ));
            }
            report
                .results
                .push(measure_entry(m.result, Some(m.per_particle)));
        }
    }
    Ok(report)
}

pub fn cmd_criterion(
    echo: Vec<String>,
    state: &Path,
    kind: CriterionArg,
    basis_name: &str,
    b_side: BSideArg,
) -> Result<Report, CliError> {
    let (file, digest) = StateFile::load(state)?;
    let loaded = file.to_state()?;
    let rho = loaded.density();
    let mut report = Report::new(echo);
    report.input_digest = Some(digest);

    let criterion = match kind {
        CriterionArg::Identity => {
            let basis = build_basis(basis_name, rho.dim())?;
            require_hermitian(&basis)?;
            let r = uncertainty_identity_report(&rho, &basis)?;
            let residual = r.identity_residual.expect("identity report has residual");
            if residual > EQ_TOL {
                return Err(CliError::new(
                    ExitKind::Numeric,
                    format!(
                        "uncertainty-identity residual {residual:.3e} exceeds {EQ_TOL:.1e}"
                    ),
                ));
            }
            r
        }
        CriterionArg::Local => {
            let dims = rho.structure().dims();
            if dims.len() != 2 || dims[0] != dims[1] {
                return Err(CliError::argument(format!(
                    "local criterion needs a d⊗d state, got dims {dims:?}"
                )));
            }
            let basis = build_basis(basis_name, dims[0])?;
            require_hermitian(&basis)?;
            local_uncertainty_criterion(&rho, &basis, b_side.into())?
        }
        CriterionArg::Collective => {
            let d = rho.structure().uniform_dim().ok_or_else(|| {
                CliError::argument(format!(
                    "collective criterion needs equal local dimensions, got {:?}",
                    rho.structure().dims()
                ))
            })?;
            let basis = build_basis(basis_name, d)?;
            require_hermitian(&basis)?;
            if let LoadedState::Pure(psi) = &loaded {
                symmetry_advisory(psi, &mut report.warnings);
            }
            collective_uncertainty_criterion(&rho, &basis)?
        }
        CriterionArg::Ppt => ppt_criterion(&rho)?,
    };
    report.results.push(ResultEntry::Criterion { report: criterion });
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Pauli,
    Gellmann,
    Weyl,
}

impl BasisArg {
    fn name(self) -> &'static str {
        match self {
            BasisArg::Pauli => "pauli",
            BasisArg::Gellmann => "gellmann",
            BasisArg::Weyl => "weyl",
        }
    }
}

pub fn cmd_basis_check(
    echo: Vec<String>,
    kind: BasisArg,
    dim: usize,
    probes: usize,
    seed: u64,
) -> Result<Report, CliError> {
    let basis = build_basis(kind.name(), dim)?;
    let mut report = Report::new(echo);
    report.rng = Some(RngInfo {
        algorithm: RNG_ALGORITHM,
        seed,
    });

    let orthonormality = verify_orthonormality(&basis);
    let completeness = verify_completeness(&basis, probes, seed)?;
    let sum_rule = if basis.is_hermitian() {
        Some(verify_hermitian_sum_rule(&basis)?)
    } else {
        report.warnings.push(format!(
            "sum rule skipped: '{}' basis is not Hermitian",
            basis.name()
        ));
        None
    };

    let worst = orthonormality
        .max(completeness)
        .max(sum_rule.unwrap_or(0.0));
    if worst > EQ_TOL {
        return Err(CliError::new(
            ExitKind::Numeric,
            format!("basis identity residual {worst:.3e} exceeds {EQ_TOL:.1e}"),
        ));
    }

    report.results.push(ResultEntry::BasisCheck {
        basis: basis.name().to_string(),
        dim,
        probes,
        orthonormality_residual: orthonormality,
        completeness_residual: completeness,
        sum_rule_residual: sum_rule,
    });
    Ok(report)
}

pub fn cmd_schmidt(echo: Vec<String>, state: &Path) -> Result<Report, CliError> {
    let (psi, digest) = load_pure(state)?;
    let spectrum = schmidt_spectrum(&psi)?;
    let mut measures = Vec::new();
    for n in 2..=5 {
        measures.push(me_direct(&psi, n, &[0])?);
    }
    let mut report = Report::new(echo);
    report.input_digest = Some(digest);
    report.results.push(ResultEntry::Schmidt {
        spectrum: spectrum.coefficients,
        measures,
    });
    Ok(report)
}

fn parse_grid(grid: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::argument(format!(
            "grid '{grid}' must be start:stop:step"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::argument(format!("bad grid number '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() || step <= 0.0 {
        return Err(CliError::argument(format!(
            "grid '{grid}' needs finite bounds and step > 0"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor();
    if count < 0.0 {
        return Err(CliError::argument(format!("grid '{grid}' is empty")));
    }
    Ok((0..=count as u64)
        .map(|k| start + k as f64 * step)
        .collect())
}

pub fn cmd_scan(
    echo: Vec<String>,
    family: FamilyArg,
    grid: &str,
    criteria: &str,
    basis_name: &str,
    b_side: BSideArg,
) -> Result<Report, CliError> {
    let grid = parse_grid(grid)?;
    let choices: Vec<CriterionArg> = criteria
        .split(',')
        .map(|tok| {
            CriterionArg::from_str(tok.trim(), true)
                .map_err(|_| CliError::argument(format!("unknown criterion '{tok}'")))
        })
        .collect::<Result<_, _>>()?;
    if choices.is_empty() {
        return Err(CliError::argument("no criteria requested"));
    }

    // Werner states live on 2⊗2: local/collective criteria see local
    // dimension 2, the identity sees the full dimension 4.
    let (local_dim, total_dim, state_family) = match family {
        FamilyArg::Werner => (2usize, 4usize, StateFamily::Werner),
    };

    let mut local_basis = None;
    let mut identity_basis = None;
    for choice in &choices {
        match choice {
            CriterionArg::Local | CriterionArg::Collective => {
                if local_basis.is_none() {
                    let b = build_basis(basis_name, local_dim)?;
                    require_hermitian(&b)?;
                    local_basis = Some(b);
                }
            }
            CriterionArg::Identity => {
                if identity_basis.is_none() {
                    let b = build_basis(basis_name, total_dim)?;
                    require_hermitian(&b)?;
                    identity_basis = Some(b);
                }
            }
            CriterionArg::Ppt => {}
        }
    }

    let specs: Vec<CriterionSpec<'_>> = choices
        .iter()
        .map(|choice| match choice {
            CriterionArg::Identity => CriterionSpec::Identity {
                basis: identity_basis.as_ref().expect("built above"),
            },
            CriterionArg::Local => CriterionSpec::Local {
                basis: local_basis.as_ref().expect("built above"),
                b_side: b_side.into(),
            },
            CriterionArg::Collective => CriterionSpec::Collective {
                basis: local_basis.as_ref().expect("built above"),
            },
            CriterionArg::Ppt => CriterionSpec::Ppt,
        })
        .collect();

    let rows = criterion_scan(state_family, &specs, &grid)?;
    for row in &rows {
        for r in &row.reports {
            if let Some(residual) = r.identity_residual {
                if residual > EQ_TOL {
                    return Err(CliError::new(
                        ExitKind::Numeric,
                        format!(
                            "uncertainty-identity residual {residual:.3e} at p = {} exceeds {EQ_TOL:.1e}",
                            row.parameter
                        ),
                    ));
                }
            }
        }
    }

    let mut report = Report::new(echo);
    report.results.push(ResultEntry::Scan {
        family: "werner".to_string(),
        rows,
    });
    Ok(report)
}
