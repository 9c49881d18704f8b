//! Complete operator bases: Pauli, generalized Gell-Mann, and Weyl
//! clock/shift monomials, plus the verification routines for the
//! identities that make them work.
//!
//! A complete basis here is a set of d² operators orthonormal under the
//! Hilbert-Schmidt inner product `⟨P|Q⟩ = Tr(P†Q)`. Completeness is
//! equivalent to the twirl identity `Σ_i O_i† Y O_i = Tr(Y)·I` for every
//! d×d operator `Y`, and to expansion exactness
//! `P = Σ_i ⟨O_i|P⟩ O_i`; [`verify_completeness`] probes both forms with
//! random operators rather than materializing the d²×d² superoperator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::states::{seeded_rng, standard_complex};

/// Ordered set of d² operators orthonormal under the Hilbert-Schmidt
/// inner product.
///
/// The named constructors ([`pauli_basis`], [`gellmann_basis`],
/// [`weyl_basis`]) guarantee orthonormality and completeness;
/// [`OperatorBasis::from_elements`] checks shapes only, which is exactly
/// what lets the verification routines exercise deliberately broken bases.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    name: String,
    dim: usize,
    elements: Vec<ComplexMatrix>,
    labels: Vec<String>,
    is_hermitian: bool,
    is_unitary_scaled: bool,
}

impl OperatorBasis {
    /// Assemble a basis from explicit elements. Shapes and label counts
    /// are validated; orthonormality and completeness are not (use the
    /// `verify_*` functions for that).
    pub fn from_elements(
        name: impl Into<String>,
        elements: Vec<ComplexMatrix>,
        labels: Vec<String>,
        is_hermitian: bool,
        is_unitary_scaled: bool,
    ) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Argument("basis needs at least one element".into()));
        }
        let dim = elements[0].dim()?;
        for (i, el) in elements.iter().enumerate() {
            if el.dim()? != dim {
                return Err(Error::Shape(format!(
                    "element {i} is {}x{}, expected {dim}x{dim}",
                    el.rows(),
                    el.cols()
                )));
            }
        }
        if labels.len() != elements.len() {
            return Err(Error::Argument(format!(
                "{} labels for {} elements",
                labels.len(),
                elements.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            dim,
            elements,
            labels,
            is_hermitian,
            is_unitary_scaled,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Local dimension d (elements are d×d; a complete basis has d² of them).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ComplexMatrix {
        &self.elements[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// All elements Hermitian (true for Pauli and Gell-Mann bases).
    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian
    }

    /// Elements are unitaries divided by √d (true for the Weyl basis).
    pub fn is_unitary_scaled(&self) -> bool {
        self.is_unitary_scaled
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The qubit basis `{I, σ_x, σ_y, σ_z}/√2`.
pub fn pauli_basis() -> OperatorBasis {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let scaled = |rows: [[Complex64; 2]; 2]| {
        ComplexMatrix::from_fn(2, 2, |i, j| rows[i][j] * s)
    };
    let elements = vec![
        scaled([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]),
        scaled([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
        scaled([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]),
        scaled([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]),
    ];
    let labels = ["I", "X", "Y", "Z"].map(String::from).to_vec();
    OperatorBasis {
        name: "pauli".into(),
        dim: 2,
        elements,
        labels,
        is_hermitian: true,
        is_unitary_scaled: false,
    }
}

/// The d²−1 traceless Hermitian generators of SU(d), normalized to
/// `Tr λ_a λ_b = 2δ_ab`. Ordering: symmetric pairs `(j,k)` lexicographic,
/// then antisymmetric pairs, then the d−1 diagonal generators.
pub fn gellmann_generators(d: usize) -> Result<Vec<(String, ComplexMatrix)>> {
    if d < 2 {
        return Err(Error::Argument(format!(
            "Gell-Mann generators need d ≥ 2, got {d}"
        )));
    }
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = c(1.0, 0.0);
            m[(k, j)] = c(1.0, 0.0);
            out.push((format!("S({j},{k})"), m));
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = c(0.0, -1.0);
            m[(k, j)] = c(0.0, 1.0);
            out.push((format!("A({j},{k})"), m));
        }
    }
    for l in 1..d {
        let scale = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..l {
            m[(j, j)] = c(scale, 0.0);
        }
        m[(l, l)] = c(-(l as f64) * scale, 0.0);
        out.push((format!("D({l})"), m));
    }
    Ok(out)
}

/// Hermitian basis `{I/√d} ∪ {λ_i/√2}` from the SU(d) generators.
///
/// At d = 2 this reproduces [`pauli_basis`] element for element.
pub fn gellmann_basis(d: usize) -> Result<OperatorBasis> {
    let generators = gellmann_generators(d)?;
    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    let inv_sqrt_2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut elements = vec![ComplexMatrix::identity(d).scale_re(inv_sqrt_d)];
    let mut labels = vec!["I".to_string()];
    for (label, g) in generators {
        elements.push(g.scale_re(inv_sqrt_2));
        labels.push(label);
    }
    Ok(OperatorBasis {
        name: "gellmann".into(),
        dim: d,
        elements,
        labels,
        is_hermitian: true,
        is_unitary_scaled: false,
    })
}

/// Table of the d-th roots of unity `q^k`, `q = e^{i2π/d}`. Quadrant
/// angles get exact values, so the d = 2 clock is exactly `σ_z` and the
/// d = 4 table is exact Gaussian integers.
fn unity_roots(d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|k| {
            if (4 * k) % d == 0 {
                match (4 * k / d) % 4 {
                    0 => c(1.0, 0.0),
                    1 => c(0.0, 1.0),
                    2 => c(-1.0, 0.0),
                    _ => c(0.0, -1.0),
                }
            } else {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64)
            }
        })
        .collect()
}

/// The monomial `Z^m X^n` on a d-level system, with exponents reduced
/// mod d (the clock and shift satisfy `Z^d = X^d = I` exactly under this
/// construction, honoring `q^d = 1`).
///
/// Entries: `(Z^m X^n)_{j, (j+n) mod d} = q^{j·m mod d}`.
pub fn weyl_monomial(d: usize, m: usize, n: usize) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::Argument(format!("Weyl monomial needs d ≥ 2, got {d}")));
    }
    let roots = unity_roots(d);
    let mut out = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        out[(j, (j + n) % d)] = roots[(j * m) % d];
    }
    Ok(out)
}

/// The clock operator `Z = Σ_k q^k |k⟩⟨k|`, `q = e^{i2π/d}`.
pub fn clock(d: usize) -> Result<ComplexMatrix> {
    weyl_monomial(d, 1, 0)
}

/// The shift operator `X = Σ_k |k⟩⟨k+1 mod d|`.
pub fn shift(d: usize) -> Result<ComplexMatrix> {
    weyl_monomial(d, 0, 1)
}

/// Unitary basis `{Z^m X^n / √d}` in lexicographic `(m, n)` order.
pub fn weyl_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::Argument(format!("Weyl basis needs d ≥ 2, got {d}")));
    }
    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    let mut elements = Vec::with_capacity(d * d);
    let mut labels = Vec::with_capacity(d * d);
    for m in 0..d {
        for n in 0..d {
            elements.push(weyl_monomial(d, m, n)?.scale_re(inv_sqrt_d));
            labels.push(format!("Z^{m}X^{n}"));
        }
    }
    Ok(OperatorBasis {
        name: "weyl".into(),
        dim: d,
        elements,
        labels,
        is_hermitian: false,
        is_unitary_scaled: true,
    })
}

/// Entrywise complex conjugate of every element. Orthonormality and
/// completeness survive conjugation, so the result is again a complete
/// basis; for Hermitian bases this flips the sign of the antisymmetric
/// generators.
pub fn conjugate_basis(basis: &OperatorBasis) -> OperatorBasis {
    OperatorBasis {
        name: format!("{}*", basis.name),
        dim: basis.dim,
        elements: basis.elements.iter().map(ComplexMatrix::conj).collect(),
        labels: basis.labels.clone(),
        is_hermitian: basis.is_hermitian,
        is_unitary_scaled: basis.is_unitary_scaled,
    }
}

/// Largest deviation of the Gram matrix `⟨O_i|O_j⟩` from the identity.
pub fn verify_orthonormality(basis: &OperatorBasis) -> f64 {
    let mut residual = 0.0f64;
    for (i, a) in basis.elements.iter().enumerate() {
        for (j, b) in basis.elements.iter().enumerate() {
            let inner = a.hs_inner(b).expect("equal dims by construction");
            let expected = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((inner - expected).norm());
        }
    }
    residual
}

/// Probe the completeness identity with `trials` random operators.
///
/// For each probe `Y` this evaluates both equivalent statements:
/// the twirl `Σ_i O_i† Y O_i = Tr(Y)·I` and expansion exactness
/// `Y = Σ_i ⟨O_i|Y⟩ O_i`. Returns the worst max-norm residual seen.
/// A complete orthonormal basis stays below ~1e-12; removing a single
/// element pushes the residual above 0.1.
pub fn verify_completeness(basis: &OperatorBasis, trials: usize, seed: u64) -> Result<f64> {
    if trials < 1 {
        return Err(Error::Argument("need at least one probe".into()));
    }
    let d = basis.dim;
    let mut rng = seeded_rng(seed);
    let mut residual = 0.0f64;
    for _ in 0..trials {
        let probe = ComplexMatrix::from_fn(d, d, |_, _| standard_complex(&mut rng));
        let target = ComplexMatrix::identity(d).scale(probe.trace()?);

        let mut twirl = ComplexMatrix::zeros(d, d);
        let mut expansion = ComplexMatrix::zeros(d, d);
        for el in &basis.elements {
            twirl = twirl.checked_add(&el.dagger().matmul(&probe)?.matmul(el)?)?;
            let coeff = el.hs_inner(&probe)?;
            expansion = expansion.checked_add(&el.scale(coeff))?;
        }
        residual = residual.max(twirl.max_abs_diff(&target));
        residual = residual.max(expansion.max_abs_diff(&probe));
    }
    Ok(residual)
}

/// Max-norm residual of `Σ_i O_i² − d·I`, which vanishes for any complete
/// orthonormal Hermitian basis (the `Y = I` case of the twirl identity).
pub fn verify_hermitian_sum_rule(basis: &OperatorBasis) -> Result<f64> {
    if !basis.is_hermitian {
        return Err(Error::Domain(format!(
            "sum rule applies to Hermitian bases; '{}' is not flagged Hermitian",
            basis.name
        )));
    }
    let d = basis.dim;
    let mut sum = ComplexMatrix::zeros(d, d);
    for el in &basis.elements {
        sum = sum.checked_add(&el.matmul(el)?)?;
    }
    Ok(sum.max_abs_diff(&ComplexMatrix::identity(d).scale_re(d as f64)))
}
