#![allow(dead_code)]

use lgh::basis::compact_basis;
use lgh::expr::{FunctionExpr, Polynomial};
use lgh::sampling::{random_hom_poly, sample_from_basis};
use lgh::{ComplexMatrix, GroupId, SampleRng, SignedBasis, C64};

pub const COMPACT: [GroupId; 7] = [
    GroupId::So { n: 3 },
    GroupId::So { n: 4 },
    GroupId::U { n: 2 },
    GroupId::U { n: 3 },
    GroupId::Su { n: 3 },
    GroupId::Sp { n: 1 },
    GroupId::Sp { n: 2 },
];

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn basis_and_point(group: GroupId, seed: u64) -> (SignedBasis, ComplexMatrix) {
    let basis = compact_basis(group).unwrap();
    let x = sample_from_basis(&basis, 1, 0.5, &mut SampleRng::new(seed)).remove(0);
    (basis, x)
}

/// A random homogeneous polynomial of degree `degree` in up to four entries of
/// an `n×n` matrix.
pub fn random_entry_poly(n: usize, degree: u32, rng: &mut SampleRng) -> FunctionExpr {
    let nvars = 4.min(n * n);
    let args: Vec<FunctionExpr> = (0..nvars)
        .map(|_| {
            let k = (rng.next_u64() % (n * n) as u64) as usize;
            FunctionExpr::entry(k / n, k % n)
        })
        .collect();
    let poly = random_hom_poly(nvars, degree, rng);
    FunctionExpr::hom_poly(degree, poly, args).unwrap()
}

pub fn poly_is_nonzero(f: &FunctionExpr) -> bool {
    match f {
        FunctionExpr::HomPoly(h) => !h.poly().is_zero(),
        _ => true,
    }
}

pub fn linear_in(n: usize, rng: &mut SampleRng) -> Polynomial {
    random_hom_poly(n, 1, rng)
}

/// One of the verified family constructions, picked by `kind` and filled from `rng`.
pub fn random_family(kind: usize, rng: &mut SampleRng) -> lgh::Eigenfamily {
    use lgh::families::*;
    match kind % 8 {
        0 => so_family_v(4, &rng.unit_vector(4), &maximal_isotropic_subspace(4)),
        1 => so_family_v(5, &rng.unit_vector(5), &maximal_isotropic_subspace(5)),
        2 => {
            let (z, w) = (rng.unit_disc(), rng.unit_disc());
            so_family_special(4, &so4_deformation(z, w))
        }
        3 => u_family(2, &rng.unit_vector(2)),
        4 => u_family(3, &rng.unit_vector(3)),
        5 => su_family(3, &rng.unit_vector(3)),
        6 => sp_family(1, &rng.unit_vector(1)),
        _ => sp_family(2, &rng.unit_vector(2)),
    }
    .unwrap()
}

pub const FAMILY_KINDS: usize = 8;
