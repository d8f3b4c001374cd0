//! Gram–Schmidt under an indefinite real bilinear form on matrices.

use crate::basis::{Metric, Sign, SignedBasis, SignedBasisVector};
use crate::error::{Error, Result};
use crate::group::GroupId;
use crate::matrix::ComplexMatrix;

/// Smallest `|B(v, v)|` accepted as a pivot.
pub const NULL_THRESHOLD: f64 = 1e-9;

/// Orthonormalizes a real-linearly independent set under `metric`.
///
/// At each step the remaining vector with the largest `|B(v, v)|` (after
/// projection) is taken as pivot, since indefinite forms have isotropic
/// directions. Output order is pivot order.
pub fn gram_schmidt_indefinite(
    group: GroupId,
    spanning: &[ComplexMatrix],
    metric: Metric,
) -> Result<SignedBasis> {
    let mut remaining: Vec<ComplexMatrix> = spanning.to_vec();
    let mut out: Vec<SignedBasisVector> = Vec::with_capacity(remaining.len());
    let mut index = 0;
    while !remaining.is_empty() {
        let (best, value) = remaining
            .iter()
            .map(|v| metric.inner(v, v))
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("non-empty");
        if value.abs() < NULL_THRESHOLD {
            return Err(Error::Degenerate { index, value });
        }
        let v = remaining.swap_remove(best);
        let sign = Sign::of(value);
        let e = v.scale_real(1.0 / value.abs().sqrt());
        // two passes of projection against the new vector keep B-orthogonality tight
        for _ in 0..2 {
            for r in remaining.iter_mut() {
                let c = sign.value() * metric.inner(r, &e);
                *r = r.add_scaled(-c, &e);
            }
        }
        out.push(SignedBasisVector::new(e, sign));
        index += 1;
    }
    Ok(SignedBasis::new(group, metric, out))
}

/// Picks a real-linearly independent subset spanning the same space
/// (modified Gram–Schmidt under `Re trace(ZW*)`, dropping residuals with
/// Frobenius norm below `threshold`). Returns the orthonormalized residuals.
pub fn independent_span(vectors: &[ComplexMatrix], threshold: f64) -> Vec<ComplexMatrix> {
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = r.real_inner(b);
                r = r.add_scaled(-c, b);
            }
        }
        let norm = r.frobenius_norm();
        if norm > threshold {
            basis.push(r.scale_real(1.0 / norm));
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{gen, Generator};

    fn g2() -> GroupId {
        GroupId::GlcSplit { n: 2 }
    }

    #[test]
    fn single_vectors_keep_their_sign() {
        let x = gen(Generator::X(0, 1), 2);
        let y = gen(Generator::Y(0, 1), 2);
        let b = gram_schmidt_indefinite(g2(), std::slice::from_ref(&x), Metric::Split).unwrap();
        assert_eq!(b.vectors, vec![SignedBasisVector::plus(x)]);
        let b = gram_schmidt_indefinite(g2(), std::slice::from_ref(&y), Metric::Split).unwrap();
        assert_eq!(b.vectors, vec![SignedBasisVector::minus(y)]);
    }

    #[test]
    fn isotropic_combination_is_resolved_by_pivoting() {
        // X + Y is null under Re trace(ZW); hand Gram–Schmidt gives {(X,+1),(Y,−1)}
        let x = gen(Generator::X(0, 1), 2);
        let y = gen(Generator::Y(0, 1), 2);
        let xy = &x + &y;
        assert!(Metric::Split.inner(&xy, &xy).abs() < 1e-15);
        let b = gram_schmidt_indefinite(g2(), &[x.clone(), xy], Metric::Split).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.vectors[0].sign, Sign::Plus);
        assert!(b.vectors[0].matrix.max_abs_diff(&x) < 1e-15);
        assert_eq!(b.vectors[1].sign, Sign::Minus);
        assert!(b.vectors[1].matrix.max_abs_diff(&y) < 1e-15);
    }

    #[test]
    fn null_vector_is_degenerate() {
        let x = gen(Generator::X(0, 1), 2);
        let y = gen(Generator::Y(0, 1), 2);
        let err = gram_schmidt_indefinite(g2(), &[&x + &y], Metric::Split).unwrap_err();
        assert!(matches!(err, Error::Degenerate { index: 0, .. }));
    }

    #[test]
    fn dependent_vectors_are_dropped_by_independent_span() {
        let x = gen(Generator::X(0, 1), 3);
        let y = gen(Generator::Y(1, 2), 3);
        let span = independent_span(&[x.clone(), y.clone(), &x + &y, x.scale_real(3.0)], 1e-9);
        assert_eq!(span.len(), 2);
    }
}
