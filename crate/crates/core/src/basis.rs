//! Generator matrices and orthonormal bases of the classical Lie algebras.
//!
//! Indices are zero-based throughout: `Generator::E(0, 1)` is the matrix with
//! a single one in row 0, column 1.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::group::GroupId;
use crate::matrix::{ComplexMatrix, C64, I, ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `(E_ij)_kl = δ_ik δ_jl`
    E(usize, usize),
    /// `D_t = E_tt`
    D(usize),
    /// `(E_rs + E_sr)/√2`, `r < s`
    X(usize, usize),
    /// `(E_rs − E_sr)/√2`, `r < s`
    Y(usize, usize),
}

impl Generator {
    pub fn matrix(self, n: usize) -> Result<ComplexMatrix> {
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(Error::Argument(format!("index {i} out of range for n = {n}")))
            }
        };
        let mut m = ComplexMatrix::zeros(n);
        match self {
            Generator::E(i, j) => {
                check(i)?;
                check(j)?;
                m[(i, j)] = ONE;
            }
            Generator::D(t) => {
                check(t)?;
                m[(t, t)] = ONE;
            }
            Generator::X(r, s) | Generator::Y(r, s) => {
                check(r)?;
                check(s)?;
                if r >= s {
                    return Err(Error::Argument(format!("expected r < s, got ({r}, {s})")));
                }
                let h = C64::new(FRAC_1_SQRT_2, 0.0);
                m[(r, s)] = h;
                m[(s, r)] = if matches!(self, Generator::X(..)) { h } else { -h };
            }
        }
        Ok(m)
    }
}

/// Shorthand for `g.matrix(n)` on indices already known to be valid.
pub(crate) fn gen(g: Generator, n: usize) -> ComplexMatrix {
    g.matrix(n).expect("generator indices checked by caller")
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |r| (r + 1..n).map(move |s| (r, s)))
}

/// The bilinear form a basis is orthonormal for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// `Re trace(Z·W*)`, positive definite.
    Euclidean,
    /// `Re trace(Z·W)`, positive on Hermitian and negative on skew-Hermitian matrices.
    Split,
}

impl Metric {
    pub fn inner(self, z: &ComplexMatrix, w: &ComplexMatrix) -> f64 {
        match self {
            Metric::Euclidean => z.real_inner(w),
            Metric::Split => z.split_inner(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(v: f64) -> Self {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignedBasisVector {
    pub matrix: ComplexMatrix,
    pub sign: Sign,
}

impl SignedBasisVector {
    pub fn new(matrix: ComplexMatrix, sign: Sign) -> Self {
        Self { matrix, sign }
    }

    pub fn plus(matrix: ComplexMatrix) -> Self {
        Self::new(matrix, Sign::Plus)
    }

    pub fn minus(matrix: ComplexMatrix) -> Self {
        Self::new(matrix, Sign::Minus)
    }
}

/// An orthonormal basis of a (possibly semi-Riemannian) Lie algebra, with the
/// sign `ε = g(Z, Z)` recorded per vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedBasis {
    pub group: GroupId,
    pub metric: Metric,
    pub vectors: Vec<SignedBasisVector>,
}

impl SignedBasis {
    pub fn new(group: GroupId, metric: Metric, vectors: Vec<SignedBasisVector>) -> Self {
        Self {
            group,
            metric,
            vectors,
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn matrix_dim(&self) -> usize {
        self.group.matrix_dim()
    }

    pub fn matrices(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.vectors.iter().map(|v| &v.matrix)
    }

    /// Union of two bases of orthogonal subspaces under the same metric.
    pub fn concat(group: GroupId, a: &SignedBasis, b: &SignedBasis) -> Self {
        debug_assert_eq!(a.metric, b.metric);
        let mut vectors = a.vectors.clone();
        vectors.extend(b.vectors.iter().cloned());
        Self::new(group, a.metric, vectors)
    }

    /// Largest deviation of the Gram matrix from `diag(ε)`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, va) in self.vectors.iter().enumerate() {
            for (b, vb) in self.vectors.iter().enumerate().skip(a) {
                let g = self.metric.inner(&va.matrix, &vb.matrix);
                let target = if a == b { va.sign.value() } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

/// Orthonormal basis of the compact algebra 𝔰𝔬(n), 𝔲(n), 𝔰𝔲(n) or 𝔰𝔭(n)
/// under `Re trace(ZW*)`.
pub fn compact_basis(group: GroupId) -> Result<SignedBasis> {
    group.validate()?;
    let matrices = match group {
        GroupId::So { n } => pairs(n).map(|(r, s)| gen(Generator::Y(r, s), n)).collect(),
        GroupId::U { n } => {
            let mut v = unitary_offdiagonal(n);
            v.extend((0..n).map(|t| gen(Generator::D(t), n).scale(I)));
            v
        }
        GroupId::Su { n } => {
            let mut v = unitary_offdiagonal(n);
            v.extend((1..n).map(|k| traceless_diagonal(n, k)));
            v
        }
        GroupId::Sp { n } => symplectic_basis(n),
        other => {
            return Err(Error::Argument(format!(
                "{other} is not one of the compact groups SO, U, SU, Sp"
            )))
        }
    };
    Ok(SignedBasis::new(
        group,
        Metric::Euclidean,
        matrices.into_iter().map(SignedBasisVector::plus).collect(),
    ))
}

fn unitary_offdiagonal(n: usize) -> Vec<ComplexMatrix> {
    pairs(n)
        .flat_map(|(r, s)| [gen(Generator::Y(r, s), n), gen(Generator::X(r, s), n).scale(I)])
        .collect()
}

/// `i(D_1 + … + D_k − k·D_{k+1}) / √(k(k+1))` for `1 ≤ k ≤ n−1`.
fn traceless_diagonal(n: usize, k: usize) -> ComplexMatrix {
    let norm = ((k * (k + 1)) as f64).sqrt();
    let mut d = vec![C64::new(0.0, 0.0); n];
    for v in d.iter_mut().take(k) {
        *v = I / norm;
    }
    d[k] = I * (-(k as f64) / norm);
    ComplexMatrix::diagonal(&d)
}

fn symplectic_basis(n: usize) -> Vec<ComplexMatrix> {
    let zero = ComplexMatrix::zeros(n);
    let block = |a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix| {
        ComplexMatrix::from_blocks(a, b, c, d)
            .expect("equal block sizes")
            .scale_real(FRAC_1_SQRT_2)
    };
    let mut out = Vec::with_capacity(n * (2 * n + 1));
    for (r, s) in pairs(n) {
        let y = gen(Generator::Y(r, s), n);
        let ix = gen(Generator::X(r, s), n).scale(I);
        out.push(block(&y, &zero, &zero, &y));
        out.push(block(&ix, &zero, &zero, &-&ix));
    }
    for (r, s) in pairs(n) {
        let x = gen(Generator::X(r, s), n);
        let ix = x.scale(I);
        out.push(block(&zero, &ix, &ix, &zero));
        out.push(block(&zero, &x, &-&x, &zero));
    }
    for t in 0..n {
        let d = gen(Generator::D(t), n);
        let id = d.scale(I);
        out.push(block(&id, &zero, &zero, &-&id));
        out.push(block(&zero, &id, &id, &zero));
        out.push(block(&zero, &d, &-&d, &zero));
    }
    out
}

/// Orthonormal bases of the Hermitian (`ε = +1`) and skew-Hermitian
/// (`ε = −1`) parts of 𝔤𝔩ₙ(ℂ) under `Re trace(ZW)`.
pub fn glc_split_basis(n: usize) -> Result<(SignedBasis, SignedBasis)> {
    let group = GroupId::GlcSplit { n };
    group.validate()?;
    let mut plus = Vec::with_capacity(n * n);
    let mut minus = Vec::with_capacity(n * n);
    for (r, s) in pairs(n) {
        let x = gen(Generator::X(r, s), n);
        let y = gen(Generator::Y(r, s), n);
        plus.push(x.clone());
        plus.push(y.scale(I));
        minus.push(y);
        minus.push(x.scale(I));
    }
    for t in 0..n {
        let d = gen(Generator::D(t), n);
        plus.push(d.clone());
        minus.push(d.scale(I));
    }
    Ok((
        SignedBasis::new(
            group,
            Metric::Split,
            plus.into_iter().map(SignedBasisVector::plus).collect(),
        ),
        SignedBasis::new(
            group,
            Metric::Split,
            minus.into_iter().map(SignedBasisVector::minus).collect(),
        ),
    ))
}

/// The complex 2n×2n image `[[z, w], [−w̄, z̄]]` of the quaternionic matrix `z + jw`.
pub fn quaternion_embed(z: &ComplexMatrix, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if z.dim() != w.dim() {
        return Err(Error::Argument(format!(
            "quaternion blocks differ in size: {} vs {}",
            z.dim(),
            w.dim()
        )));
    }
    ComplexMatrix::from_blocks(z, w, &-&w.conj(), &z.conj())
}

/// `I_pq = diag(−I_p, I_q)`.
pub fn i_pq(p: usize, q: usize) -> ComplexMatrix {
    let mut d = vec![ONE; p + q];
    for v in d.iter_mut().take(p) {
        *v = -ONE;
    }
    ComplexMatrix::diagonal(&d)
}

/// `J_n = [[0, I_n], [−I_n, 0]]`.
pub fn j_n(n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(n);
    ComplexMatrix::from_blocks(&ComplexMatrix::zeros(n), &id, &-&id, &ComplexMatrix::zeros(n))
        .expect("equal block sizes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: f64 = FRAC_1_SQRT_2;

    #[test]
    fn generator_values() {
        let e = Generator::E(0, 1).matrix(2).unwrap();
        assert_eq!(e, ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap());
        let y = Generator::Y(0, 1).matrix(2).unwrap();
        assert_eq!(y, ComplexMatrix::from_real_rows(&[&[0.0, S], &[-S, 0.0]]).unwrap());
        let x = Generator::X(0, 1).matrix(2).unwrap();
        assert_eq!(x, ComplexMatrix::from_real_rows(&[&[0.0, S], &[S, 0.0]]).unwrap());
        assert_eq!(Generator::D(1).matrix(2).unwrap(), Generator::E(1, 1).matrix(2).unwrap());
    }

    #[test]
    fn generator_rejects_bad_indices() {
        assert!(Generator::E(2, 0).matrix(2).is_err());
        assert!(Generator::X(1, 1).matrix(3).is_err());
        assert!(Generator::Y(2, 1).matrix(3).is_err());
        assert!(Generator::D(5).matrix(5).is_err());
    }

    #[test]
    fn compact_basis_cardinalities() {
        for n in 1..=5 {
            assert_eq!(compact_basis(GroupId::So { n }).unwrap().len(), n * (n - 1) / 2);
            assert_eq!(compact_basis(GroupId::U { n }).unwrap().len(), n * n);
            assert_eq!(compact_basis(GroupId::Su { n }).unwrap().len(), n * n - 1);
            assert_eq!(compact_basis(GroupId::Sp { n }).unwrap().len(), n * (2 * n + 1));
        }
        assert!(compact_basis(GroupId::SlR { n: 2 }).is_err());
    }

    #[test]
    fn compact_bases_are_orthonormal_and_in_the_algebra() {
        let j = |n| j_n(n);
        for n in 1..=5 {
            for g in [
                GroupId::So { n },
                GroupId::U { n },
                GroupId::Su { n },
                GroupId::Sp { n },
            ] {
                let b = compact_basis(g).unwrap();
                assert!(b.orthonormality_defect() < 1e-12, "{g}");
                for z in b.matrices() {
                    // skew-Hermitian
                    assert!((z + &z.adjoint()).max_abs() < 1e-15, "{g}");
                    match g {
                        GroupId::So { .. } => assert!(z.max_imag() == 0.0),
                        GroupId::Su { .. } => assert!(z.trace().norm() < 1e-15),
                        GroupId::Sp { n } => {
                            // Z^t J + J Z = 0
                            let lhs = z.transpose().matmul(&j(n)) + j(n).matmul(z);
                            assert!(lhs.max_abs() < 1e-15);
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn sp1_basis_is_the_diagonal_set() {
        let b = compact_basis(GroupId::Sp { n: 1 }).unwrap();
        let expected = [
            ComplexMatrix::diagonal(&[I * S, -I * S]),
            ComplexMatrix::from_rows(vec![vec![C64::new(0.0, 0.0), I * S], vec![I * S, C64::new(0.0, 0.0)]])
                .unwrap(),
            ComplexMatrix::from_real_rows(&[&[0.0, S], &[-S, 0.0]]).unwrap(),
        ];
        for (z, e) in b.matrices().zip(&expected) {
            assert!(z.max_abs_diff(e) < 1e-16);
        }
    }

    #[test]
    fn glc_split_signs() {
        let (plus, minus) = glc_split_basis(1).unwrap();
        assert_eq!(plus.vectors[0].matrix, ComplexMatrix::identity(1));
        assert_eq!(minus.vectors[0].matrix, ComplexMatrix::identity(1).scale(I));
        for n in 1..=4 {
            let (plus, minus) = glc_split_basis(n).unwrap();
            assert_eq!(plus.len(), n * n);
            assert_eq!(minus.len(), n * n);
            let all = SignedBasis::concat(GroupId::GlcSplit { n }, &plus, &minus);
            assert!(all.orthonormality_defect() < 1e-12);
            for v in &all.vectors {
                assert!((v.sign.value() * v.matrix.split_inner(&v.matrix) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quaternion_units() {
        let c = |re: f64, im: f64| ComplexMatrix::from_rows(vec![vec![C64::new(re, im)]]).unwrap();
        assert_eq!(quaternion_embed(&c(1.0, 0.0), &c(0.0, 0.0)).unwrap(), ComplexMatrix::identity(2));
        assert_eq!(
            quaternion_embed(&c(0.0, 0.0), &c(1.0, 0.0)).unwrap(),
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap()
        );
        assert_eq!(
            quaternion_embed(&c(0.0, 1.0), &c(0.0, 0.0)).unwrap(),
            ComplexMatrix::diagonal(&[I, -I])
        );
        assert!(quaternion_embed(&ComplexMatrix::zeros(1), &ComplexMatrix::zeros(2)).is_err());
    }

    #[test]
    fn structure_matrices_square_to_plus_minus_identity() {
        let ipq = i_pq(2, 3);
        assert_eq!(ipq.matmul(&ipq), ComplexMatrix::identity(5));
        let j = j_n(3);
        assert_eq!(j.matmul(&j), -&ComplexMatrix::identity(6));
    }
}
