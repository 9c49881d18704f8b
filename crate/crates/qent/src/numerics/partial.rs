use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, TensorStructure};

fn check_operator_shape(op: &ComplexMatrix, structure: &TensorStructure) -> Result<()> {
    let d = op.dim()?;
    if d != structure.total_dim() {
        return Err(Error::Shape(format!(
            "operator dimension {d} does not match tensor structure {:?} (total {})",
            structure.dims(),
            structure.total_dim()
        )));
    }
    Ok(())
}

/// Trace out every factor not listed in `keep`, preserving factor order.
///
/// If `keep` covers all factors the input is returned unchanged.
pub fn partial_trace(
    op: &ComplexMatrix,
    structure: &TensorStructure,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    check_operator_shape(op, structure)?;
    let kept = structure.checked_subset(keep)?;
    let traced: Vec<usize> = (0..structure.num_factors())
        .filter(|f| !kept.contains(f))
        .collect();
    if traced.is_empty() {
        return Ok(op.clone());
    }

    let kept_table = structure.embedding_table(&kept);
    let traced_table = structure.embedding_table(&traced);
    let out_dim = kept_table.len();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for (a, &ka) in kept_table.iter().enumerate() {
        for (b, &kb) in kept_table.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &t in &traced_table {
                acc += op[(ka + t, kb + t)];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Transpose one factor of a bipartite operator, leaving the other alone.
pub fn partial_transpose(
    op: &ComplexMatrix,
    structure: &TensorStructure,
    factor: usize,
) -> Result<ComplexMatrix> {
    if !structure.is_bipartite() {
        return Err(Error::Argument(format!(
            "partial transpose needs a bipartite structure, got {} factors",
            structure.num_factors()
        )));
    }
    if factor > 1 {
        return Err(Error::Argument(format!(
            "factor index {factor} out of range for bipartite structure"
        )));
    }
    check_operator_shape(op, structure)?;

    let (da, db) = (structure.dims()[0], structure.dims()[1]);
    let d = da * db;
    let mut out = ComplexMatrix::zeros(d, d);
    for a1 in 0..da {
        for a2 in 0..db {
            for b1 in 0..da {
                for b2 in 0..db {
                    let (r, c) = (a1 * db + a2, b1 * db + b2);
                    let (sr, sc) = if factor == 0 {
                        (b1 * db + a2, a1 * db + b2)
                    } else {
                        (a1 * db + b2, b1 * db + a2)
                    };
                    out[(r, c)] = op[(sr, sc)];
                }
            }
        }
    }
    Ok(out)
}

/// Embed a single-factor operator at position `factor`, i.e.
/// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` over the given structure.
pub fn embed_at(
    op: &ComplexMatrix,
    structure: &TensorStructure,
    factor: usize,
) -> Result<ComplexMatrix> {
    let d = op.dim()?;
    if factor >= structure.num_factors() {
        return Err(Error::Argument(format!(
            "factor index {factor} out of range for {} factors",
            structure.num_factors()
        )));
    }
    if structure.dims()[factor] != d {
        return Err(Error::Shape(format!(
            "operator dimension {d} does not match factor {factor} dimension {}",
            structure.dims()[factor]
        )));
    }
    let left: usize = structure.dims()[..factor].iter().product();
    let right: usize = structure.dims()[factor + 1..].iter().product();
    Ok(ComplexMatrix::identity(left)
        .kron(op)
        .kron(&ComplexMatrix::identity(right)))
}
