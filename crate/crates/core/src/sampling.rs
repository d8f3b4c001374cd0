//! Seeded sample generation.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 (`seed_from_u64`).
//! Uniform reals are `lo + (hi − lo)·u` with `u = (next_u64 >> 11)·2⁻⁵³`, so
//! any implementation of the same generator reproduces the sample stream.
//! A group sample is `exp(A₁)·exp(A₂)` with `A_m = Σ c_i Z_i` over a basis,
//! drawing all coefficients of `A₁` before those of `A₂`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::basis::{i_pq, j_n, SignedBasis};
use crate::expr::Polynomial;
use crate::group::GroupId;
use crate::matrix::{ComplexMatrix, C64, ONE};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_RADIUS: f64 = 0.5;

pub struct SampleRng(Xoshiro256PlusPlus);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform on the closed unit disc, by rejection from the square.
    pub fn unit_disc(&mut self) -> C64 {
        loop {
            let z = C64::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0));
            if z.norm_sqr() <= 1.0 {
                return z;
            }
        }
    }

    pub fn complex_vector(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.unit_disc()).collect()
    }

    /// A [`complex_vector`](Self::complex_vector) rescaled to unit Euclidean norm.
    pub fn unit_vector(&mut self, n: usize) -> Vec<C64> {
        loop {
            let v = self.complex_vector(n);
            let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-3 {
                return v.into_iter().map(|c| c / norm).collect();
            }
        }
    }
}

/// A random element `Σ c_i Z_i` with `c_i` uniform on `[−radius, radius]`.
pub fn random_algebra_element(basis: &SignedBasis, radius: f64, rng: &mut SampleRng) -> ComplexMatrix {
    let n = basis.matrix_dim();
    basis.matrices().fold(ComplexMatrix::zeros(n), |acc, z| {
        let c = rng.uniform(-radius, radius);
        acc.add_scaled(c, z)
    })
}

/// `count` points `exp(A₁)·exp(A₂)` generated sequentially from `rng`.
pub fn sample_from_basis(
    basis: &SignedBasis,
    count: usize,
    radius: f64,
    rng: &mut SampleRng,
) -> Vec<ComplexMatrix> {
    (0..count)
        .map(|_| {
            let a1 = random_algebra_element(basis, radius, rng);
            let a2 = random_algebra_element(basis, radius, rng);
            a1.exp().matmul(&a2.exp())
        })
        .collect()
}

/// How far `x` is from the group (or, for non-compact real forms, from the
/// complex group containing the aligned real form).
pub fn group_defect(group: GroupId, x: &ComplexMatrix) -> f64 {
    let n = x.dim();
    let id = ComplexMatrix::identity(n);
    let unitary = || x.matmul(&x.adjoint()).max_abs_diff(&id);
    let orthogonal = || x.matmul(&x.transpose()).max_abs_diff(&id);
    let unimodular = || (x.det() - ONE).norm();
    let symplectic = || {
        let j = j_n(n / 2);
        x.matmul(&j).matmul(&x.transpose()).max_abs_diff(&j)
    };
    match group {
        GroupId::So { .. } => orthogonal().max(unimodular()).max(x.max_imag()),
        GroupId::U { .. } => unitary(),
        GroupId::Su { .. } => unitary().max(unimodular()),
        GroupId::Sp { .. } => unitary().max(symplectic()),
        GroupId::GlcSplit { .. } => {
            if x.det().norm() > 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        }
        GroupId::SlR { .. } => unimodular().max(x.max_imag()),
        GroupId::SuStar { .. } => unimodular(),
        GroupId::SuPq { p, q } => {
            let ipq = i_pq(p, q);
            unimodular().max(x.matmul(&ipq).matmul(&x.adjoint()).max_abs_diff(&ipq))
        }
        GroupId::SoStar { .. } | GroupId::SoPq { .. } => orthogonal().max(unimodular()),
        GroupId::SpR { .. } | GroupId::SpPq { .. } => symplectic(),
    }
}

/// Every exponent vector of total degree `degree` in `nvars` variables, in
/// lexicographically descending order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(nvars, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Homogeneous polynomial with every monomial present and coefficients
/// uniform on the complex unit disc.
pub fn random_hom_poly(nvars: usize, degree: u32, rng: &mut SampleRng) -> Polynomial {
    let terms = monomials_of_degree(nvars, degree)
        .into_iter()
        .map(|e| (e, rng.unit_disc()))
        .collect::<Vec<_>>();
    Polynomial::from_terms(nvars, terms).expect("exponent vectors have nvars entries")
}
