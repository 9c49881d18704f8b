//! Pure states, density matrices, Schmidt spectra, and seeded samplers.
//!
//! Samplers take explicit seeds and are fully deterministic; ensemble runs
//! can partition the seed space across workers with no shared state. The
//! generator is ChaCha12 (see [`RNG_ALGORITHM`]) and Gaussian variates come
//! from Box-Muller on its uniform output, so sampled states are
//! reproducible across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{eigh, partial_trace, ComplexMatrix, TensorStructure};
use crate::tol::{HERM_TOL, NORM_TOL, PSD_TOL};

/// Name of the pseudo-random generator backing all samplers; surfaced in
/// report metadata so runs can be reproduced.
pub const RNG_ALGORITHM: &str = "chacha12";

pub(crate) fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// One standard complex Gaussian via Box-Muller on uniform draws.
pub(crate) fn standard_complex(rng: &mut ChaCha12Rng) -> Complex64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1], keeps ln finite
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    // Both components are N(0, 1); the joint is the standard complex
    // Gaussian up to overall scale, which normalization removes anyway.
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Normalized pure state over an explicitly factored Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    structure: TensorStructure,
}

impl PureState {
    /// Validates length, finiteness, and unit norm (within [`NORM_TOL`]).
    pub fn new(amplitudes: Vec<Complex64>, structure: TensorStructure) -> Result<Self> {
        if amplitudes.len() != structure.total_dim() {
            return Err(Error::Shape(format!(
                "{} amplitudes for structure {:?} (needs {})",
                amplitudes.len(),
                structure.dims(),
                structure.total_dim()
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("amplitudes contain NaN or Inf".into()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!(
                "state norm² = {norm_sq} is not 1 within {NORM_TOL:.1e}"
            )));
        }
        Ok(Self {
            amplitudes,
            structure,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn structure(&self) -> &TensorStructure {
        &self.structure
    }

    /// Projector `|ψ⟩⟨ψ|` as a plain matrix.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }

    /// Computational basis state with the given digit per factor.
    pub fn computational(structure: TensorStructure, digits: &[usize]) -> Result<Self> {
        if digits.len() != structure.num_factors() {
            return Err(Error::Argument(format!(
                "{} digits for {} factors",
                digits.len(),
                structure.num_factors()
            )));
        }
        for (f, (&digit, &dim)) in digits.iter().zip(structure.dims()).enumerate() {
            if digit >= dim {
                return Err(Error::Argument(format!(
                    "digit {digit} out of range for factor {f} (dim {dim})"
                )));
            }
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); structure.total_dim()];
        let strides = structure.strides();
        let index: usize = digits.iter().zip(&strides).map(|(d, s)| d * s).sum();
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            structure,
        })
    }

    /// `(|00⟩ + |11⟩)/√2` on two qubits.
    pub fn bell_phi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: vec![
                Complex64::new(s, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(s, 0.0),
            ],
            structure: TensorStructure::bipartite(2, 2).expect("2x2"),
        }
    }

    /// `(|01⟩ - |10⟩)/√2` on two qubits.
    pub fn singlet() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            structure: TensorStructure::bipartite(2, 2).expect("2x2"),
        }
    }

    /// `(|0...0⟩ + |1...1⟩)/√2` on `n ≥ 2` qubits.
    pub fn ghz(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument("GHZ needs at least 2 qubits".into()));
        }
        let dim = 1usize << n;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[0] = Complex64::new(s, 0.0);
        amplitudes[dim - 1] = Complex64::new(s, 0.0);
        Ok(Self {
            amplitudes,
            structure: TensorStructure::uniform(2, n)?,
        })
    }

    /// Equal superposition of single-excitation states on `n ≥ 2` qubits.
    pub fn w_state(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument("W state needs at least 2 qubits".into()));
        }
        let dim = 1usize << n;
        let amp = 1.0 / (n as f64).sqrt();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        for k in 0..n {
            amplitudes[1 << (n - 1 - k)] = Complex64::new(amp, 0.0);
        }
        Ok(Self {
            amplitudes,
            structure: TensorStructure::uniform(2, n)?,
        })
    }

    /// Maximally entangled two-qudit state `Σ_k |kk⟩/√d`.
    pub fn maximally_entangled(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Argument("local dimension must be ≥ 2".into()));
        }
        let amp = 1.0 / (d as f64).sqrt();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            amplitudes[k * d + k] = Complex64::new(amp, 0.0);
        }
        Ok(Self {
            amplitudes,
            structure: TensorStructure::bipartite(d, d)?,
        })
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator with an explicit
/// tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    structure: TensorStructure,
}

impl DensityMatrix {
    /// Full validation: shape, Hermiticity within [`HERM_TOL`], unit trace,
    /// and minimum eigenvalue ≥ `-PSD_TOL`.
    pub fn new(matrix: ComplexMatrix, structure: TensorStructure) -> Result<Self> {
        let d = matrix.dim()?;
        if d != structure.total_dim() {
            return Err(Error::Shape(format!(
                "matrix dimension {d} does not match structure {:?}",
                structure.dims()
            )));
        }
        if matrix
            .entries()
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("density matrix contains NaN or Inf".into()));
        }
        let defect = matrix.hermiticity_defect();
        if defect > HERM_TOL {
            return Err(Error::Domain(format!(
                "density matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = matrix.trace()?;
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::Domain(format!(
                "density matrix trace {tr} is not 1"
            )));
        }
        let eig = eigh(&matrix)?;
        let min = *eig.eigenvalues.last().expect("nonempty spectrum");
        if min < -PSD_TOL {
            return Err(Error::Domain(format!(
                "density matrix has eigenvalue {min:.3e} < -{PSD_TOL:.1e}"
            )));
        }
        Ok(Self { matrix, structure })
    }

    /// Valid-by-construction inputs skip the eigendecomposition check.
    pub(crate) fn unchecked(matrix: ComplexMatrix, structure: TensorStructure) -> Self {
        Self { matrix, structure }
    }

    /// `|ψ⟩⟨ψ|` of a validated pure state.
    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            matrix: psi.projector(),
            structure: psi.structure().clone(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn structure(&self) -> &TensorStructure {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.structure.total_dim()
    }

    /// `Re Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.power_trace(2).expect("square by invariant").re
    }

    /// Reinterpret the same matrix over a different factorization of the
    /// same total dimension.
    pub fn with_structure(self, structure: TensorStructure) -> Result<Self> {
        if structure.total_dim() != self.structure.total_dim() {
            return Err(Error::Shape(format!(
                "structure {:?} does not match dimension {}",
                structure.dims(),
                self.structure.total_dim()
            )));
        }
        Ok(Self {
            matrix: self.matrix,
            structure,
        })
    }
}

/// Squared Schmidt coefficients (eigenvalues of `ρ_A`), descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    pub coefficients: Vec<f64>,
}

/// Reduced density operator of a pure state on the kept factors.
pub fn reduced_density(psi: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let reduced = partial_trace(&psi.projector(), psi.structure(), keep)?;
    let sub = psi.structure().substructure(keep)?;
    Ok(DensityMatrix::unchecked(reduced, sub))
}

/// Schmidt spectrum of a bipartite pure state: descending eigenvalues of
/// the A-side reduced density matrix, truncated to `min(d_A, d_B)` entries
/// (eigenvalues beyond the Schmidt rank bound are zero).
pub fn schmidt_spectrum(psi: &PureState) -> Result<SchmidtSpectrum> {
    if !psi.structure().is_bipartite() {
        return Err(Error::Argument(format!(
            "Schmidt spectrum needs a bipartite state, got {} factors",
            psi.structure().num_factors()
        )));
    }
    let rho_a = reduced_density(psi, &[0])?;
    let eig = eigh(rho_a.matrix())?;
    let keep = psi.structure().dims().iter().copied().min().expect("bipartite");
    let coefficients = eig.eigenvalues[..keep]
        .iter()
        .map(|&l| l.max(0.0))
        .collect();
    Ok(SchmidtSpectrum { coefficients })
}

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized. Deterministic for a fixed seed.
pub fn haar_random_pure(structure: &TensorStructure, seed: u64) -> PureState {
    let mut rng = seeded_rng(seed);
    let dim = structure.total_dim();
    let mut amplitudes: Vec<Complex64> = (0..dim).map(|_| standard_complex(&mut rng)).collect();
    let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    debug_assert!(norm > 0.0, "Gaussian vector collapsed to zero");
    for z in &mut amplitudes {
        *z /= norm;
    }
    PureState {
        amplitudes,
        structure: structure.clone(),
    }
}

/// Haar-random unitary: QR of a complex Ginibre matrix via modified
/// Gram-Schmidt (the R diagonal comes out positive, which fixes the phase
/// convention needed for Haar distribution).
pub fn haar_random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| standard_complex(&mut rng)).collect())
        .collect();
    for j in 0..dim {
        for i in 0..j {
            let proj: Complex64 = cols[i]
                .iter()
                .zip(cols[j].iter())
                .map(|(qi, vj)| qi.conj() * vj)
                .sum();
            let (head, tail) = cols.split_at_mut(j);
            for (v, q) in tail[0].iter_mut().zip(&head[i]) {
                *v -= proj * q;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        debug_assert!(norm > 0.0, "rank-deficient Ginibre sample");
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Random mixed state by purification: Haar-random pure state on
/// `dim × ancilla_dim`, ancilla traced out. Positive semidefinite by
/// construction.
pub fn random_mixed(dim: usize, ancilla_dim: usize, seed: u64) -> Result<DensityMatrix> {
    if dim < 1 || ancilla_dim < 1 {
        return Err(Error::Argument("dimensions must be ≥ 1".into()));
    }
    let structure = TensorStructure::bipartite(dim, ancilla_dim)?;
    let psi = haar_random_pure(&structure, seed);
    reduced_density(&psi, &[0])
}

/// `p·|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4` on two qubits; entangled iff `p > 1/3`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!(
            "Werner parameter {p} outside [0, 1]"
        )));
    }
    let bell = PureState::bell_phi_plus().projector();
    let matrix = bell
        .scale_re(p)
        .checked_add(&ComplexMatrix::identity(4).scale_re((1.0 - p) / 4.0))?;
    Ok(DensityMatrix::unchecked(
        matrix,
        TensorStructure::bipartite(2, 2)?,
    ))
}

/// Random separable state: a convex mixture of `k` product states, with
/// `k` uniform in `1..=dims[0]²`, Dirichlet-uniform weights, and
/// Haar-random factors. Separable by construction, so it can certify that
/// an entanglement criterion produces no false positives.
pub fn random_separable(structure: &TensorStructure, seed: u64) -> DensityMatrix {
    let mut rng = seeded_rng(seed);
    let max_terms = structure.dims()[0] * structure.dims()[0];
    let k = rng.gen_range(1..=max_terms);
    // Dirichlet(1, ..., 1) via normalized exponentials.
    let mut weights: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let dim = structure.total_dim();
    let mut matrix = ComplexMatrix::zeros(dim, dim);
    for &w in &weights {
        // Product state: per-factor Gaussian amplitudes, Kronecker-joined
        // then normalized.
        let mut joint = vec![Complex64::new(1.0, 0.0)];
        for &d in structure.dims() {
            let factor: Vec<Complex64> = (0..d).map(|_| standard_complex(&mut rng)).collect();
            let mut next = Vec::with_capacity(joint.len() * d);
            for a in &joint {
                for b in &factor {
                    next.push(a * b);
                }
            }
            joint = next;
        }
        let norm: f64 = joint.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut joint {
            *z /= norm;
        }
        matrix = matrix
            .checked_add(&ComplexMatrix::outer(&joint).scale_re(w))
            .expect("same shape");
    }
    DensityMatrix::unchecked(matrix, structure.clone())
}

/// Permutation-symmetry advisory for an `N`-particle state: largest
/// 2-norm residual of `P ψ ∓ ψ` over adjacent transpositions `P`. Small
/// `symmetric` means bosonic-like, small `antisymmetric` fermionic-like.
/// This is a warning signal only; nothing is enforced on construction.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub symmetric_residual: f64,
    pub antisymmetric_residual: f64,
}

/// Advisory permutation-symmetry check for identical-particle states.
pub fn symmetry_report(psi: &PureState) -> Result<SymmetryReport> {
    let structure = psi.structure();
    let d = structure
        .uniform_dim()
        .ok_or_else(|| Error::Argument("identical particles need uniform factor dims".into()))?;
    let n = structure.num_factors();
    if n < 2 {
        return Err(Error::Argument("need at least 2 particles".into()));
    }
    let strides = structure.strides();
    let mut sym: f64 = 0.0;
    let mut anti: f64 = 0.0;
    for k in 0..n - 1 {
        let mut sq_minus = 0.0;
        let mut sq_plus = 0.0;
        for (idx, amp) in psi.amplitudes().iter().enumerate() {
            let dk = (idx / strides[k]) % d;
            let dk1 = (idx / strides[k + 1]) % d;
            let swapped = idx - dk * strides[k] - dk1 * strides[k + 1]
                + dk1 * strides[k]
                + dk * strides[k + 1];
            let diff = psi.amplitudes()[swapped] - amp;
            let sum = psi.amplitudes()[swapped] + amp;
            sq_minus += diff.norm_sqr();
            sq_plus += sum.norm_sqr();
        }
        sym = sym.max(sq_minus.sqrt());
        anti = anti.max(sq_plus.sqrt());
    }
    Ok(SymmetryReport {
        symmetric_residual: sym,
        antisymmetric_residual: anti,
    })
}
