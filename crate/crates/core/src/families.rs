//! Eigenfamilies on SO(n), U(n), SU(n) and Sp(n), and their verification.
//!
//! An eigenfamily is a set of functions with `τ(φ) = λφ` and `κ(φ,ψ) = μφψ`
//! for fixed complex `λ, μ`. Every family built here consists of linear
//! functions `φ_a(x) = trace(pᵗa·xᵗ)` of the matrix entries, stored with a
//! finite generating list (one member per standard basis vector `a = e_j`).

use serde::{Deserialize, Serialize};

use crate::basis::SignedBasis;
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::group::GroupId;
use crate::jets::{FrameJets, LocalFrame};
use crate::matrix::{ComplexMatrix, C64, I, ONE, ZERO};
use crate::report::{max_over_samples, nan_max, ReportBuilder, VerificationReport};
use crate::sampling::group_defect;

/// Tolerance for isotropy and nonzero checks on input vectors.
pub const ISOTROPY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `a` ranges over an isotropic subspace `V ⊂ ℂⁿ`, on SO(n).
    IsotropicSubspace,
    /// `p` isotropic and `a` arbitrary, on SO(n). Relies on `x·xᵗ = I`.
    IsotropicVector,
    Unitary,
    Quaternionic,
    /// k-fold products of another family.
    Power,
    /// Quotients over a shared denominator (`λ = μ = 0`).
    OrthogonalQuotients,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenfamily {
    pub group: GroupId,
    pub members: Vec<FunctionExpr>,
    pub lambda: C64,
    pub mu: C64,
    pub provenance: Provenance,
    /// Whether the defining identities hold off the compact group, so that the
    /// family can be carried to a non-compact dual.
    pub dual_continuable: bool,
}

impl Eigenfamily {
    pub fn new(
        group: GroupId,
        members: Vec<FunctionExpr>,
        lambda: C64,
        mu: C64,
        provenance: Provenance,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Validation("an eigenfamily needs at least one member".into()));
        }
        Ok(Self {
            group,
            members,
            lambda,
            mu,
            dual_continuable: provenance != Provenance::IsotropicVector,
            provenance,
        })
    }

    /// The same member list viewed on SU(n) instead of U(n), with the constants
    /// adjusted for the missing `iI/√n` direction.
    pub fn on_special_unitary(&self) -> Result<Self> {
        let GroupId::U { n } = self.group else {
            return Err(Error::Argument(format!(
                "only U(n) families can be restricted to SU(n), got {}",
                self.group
            )));
        };
        let (lambda, mu) = constants(GroupId::Su { n }).expect("SU constants exist");
        Ok(Self {
            group: GroupId::Su { n },
            lambda,
            mu,
            ..self.clone()
        })
    }

    pub fn with_constants(&self, lambda: C64, mu: C64) -> Self {
        Self {
            lambda,
            mu,
            ..self.clone()
        }
    }
}

/// `(λ, μ)` for the linear families on each compact group.
pub fn constants(group: GroupId) -> Option<(C64, C64)> {
    let r = |v: f64| C64::new(v, 0.0);
    match group {
        GroupId::So { n } => Some((r(-(n as f64 - 1.0) / 2.0), r(-0.5))),
        GroupId::U { n } => Some((r(-(n as f64)), r(-1.0))),
        GroupId::Su { n } => {
            let nf = n as f64;
            Some((r(-(nf * nf - 1.0) / nf), r(-(nf - 1.0) / nf)))
        }
        GroupId::Sp { n } => Some((r(-(2.0 * n as f64 + 1.0) / 2.0), r(-0.5))),
        _ => None,
    }
}

/// Complex bilinear `(a, b) = Σ a_k b_k` (no conjugation).
pub fn bilinear(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `pᵗa` as an n×n matrix: `(pᵗa)_ij = p_i a_j`.
pub fn outer(p: &[C64], a: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(p.len(), |i, j| p[i] * a[j])
}

fn standard_vector(n: usize, k: usize) -> Vec<C64> {
    let mut e = vec![ZERO; n];
    e[k] = ONE;
    e
}

fn check_vector(name: &str, v: &[C64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Argument(format!(
            "{name} has length {}, expected {n}",
            v.len()
        )));
    }
    if v.iter().all(|c| c.norm() <= ISOTROPY_TOL) {
        return Err(Error::Validation(format!("{name} must be non-zero")));
    }
    Ok(())
}

/// `span{e_{2k−1} + i·e_{2k} : k = 1..⌊n/2⌋}`.
pub fn maximal_isotropic_subspace(n: usize) -> Vec<Vec<C64>> {
    (0..n / 2)
        .map(|k| {
            let mut v = vec![ZERO; n];
            v[2 * k] = ONE;
            v[2 * k + 1] = I;
            v
        })
        .collect()
}

/// `p(z, w) = (1 + zw, i(1 − zw), i(z + w), z − w)`, isotropic in ℂ⁴ for all `z, w`.
pub fn so4_deformation(z: C64, w: C64) -> [C64; 4] {
    let zw = z * w;
    [ONE + zw, I * (ONE - zw), I * (z + w), z - w]
}

/// `{φ_a = trace(pᵗa·xᵗ) : a ∈ V}` on SO(n) for an isotropic `V`.
pub fn so_family_v(n: usize, p: &[C64], v: &[Vec<C64>]) -> Result<Eigenfamily> {
    GroupId::So { n }.validate()?;
    check_vector("p", p, n)?;
    if v.is_empty() {
        return Err(Error::Validation("isotropic subspace basis is empty".into()));
    }
    for (k, a) in v.iter().enumerate() {
        check_vector(&format!("V[{k}]"), a, n)?;
    }
    for (ka, a) in v.iter().enumerate() {
        for (kb, b) in v.iter().enumerate().skip(ka) {
            let ab = bilinear(a, b);
            if ab.norm() > ISOTROPY_TOL {
                return Err(Error::Validation(format!(
                    "V is not isotropic: (V[{ka}], V[{kb}]) = {ab}"
                )));
            }
        }
    }
    let members = v
        .iter()
        .map(|a| FunctionExpr::linear_trace(outer(p, a)))
        .collect();
    let (lambda, mu) = constants(GroupId::So { n }).expect("SO constants");
    Eigenfamily::new(GroupId::So { n }, members, lambda, mu, Provenance::IsotropicSubspace)
}

/// `{φ_a = trace(pᵗa·xᵗ) : a ∈ ℂⁿ}` on SO(n) for an isotropic `p`, generated by
/// `a = e_1..e_n`. Not dual-continuable: the identities use `x·xᵗ = I`.
pub fn so_family_special(n: usize, p: &[C64]) -> Result<Eigenfamily> {
    GroupId::So { n }.validate()?;
    check_vector("p", p, n)?;
    let pp = bilinear(p, p);
    if pp.norm() > ISOTROPY_TOL {
        return Err(Error::Validation(format!("p is not isotropic: (p, p) = {pp}")));
    }
    let members = (0..n)
        .map(|k| FunctionExpr::linear_trace(outer(p, &standard_vector(n, k))))
        .collect();
    let (lambda, mu) = constants(GroupId::So { n }).expect("SO constants");
    Eigenfamily::new(GroupId::So { n }, members, lambda, mu, Provenance::IsotropicVector)
}

/// `{φ_a = trace(pᵗa·zᵗ) : a ∈ ℂⁿ}` on U(n).
pub fn u_family(n: usize, p: &[C64]) -> Result<Eigenfamily> {
    GroupId::U { n }.validate()?;
    check_vector("p", p, n)?;
    let members = (0..n)
        .map(|k| FunctionExpr::linear_trace(outer(p, &standard_vector(n, k))))
        .collect();
    let (lambda, mu) = constants(GroupId::U { n }).expect("U constants");
    Eigenfamily::new(GroupId::U { n }, members, lambda, mu, Provenance::Unitary)
}

/// The U(n) family restricted to SU(n).
pub fn su_family(n: usize, p: &[C64]) -> Result<Eigenfamily> {
    u_family(n, p)?.on_special_unitary()
}

/// `{φ_ab = trace(pᵗa·zᵗ + pᵗb·wᵗ)}` on Sp(n), where `z` and `w` are the top
/// two n×n blocks of the 2n×2n embedding. Generated by `(e_i, 0)` and `(0, e_i)`.
pub fn sp_family(n: usize, p: &[C64]) -> Result<Eigenfamily> {
    GroupId::Sp { n }.validate()?;
    check_vector("p", p, n)?;
    let embed = |block_col: usize, a: &[C64]| {
        let mut m = ComplexMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, block_col * n + j)] = p[i] * a[j];
            }
        }
        FunctionExpr::linear_trace(m)
    };
    let mut members = Vec::with_capacity(2 * n);
    for block in 0..2 {
        for k in 0..n {
            members.push(embed(block, &standard_vector(n, k)));
        }
    }
    let (lambda, mu) = constants(GroupId::Sp { n }).expect("Sp constants");
    Eigenfamily::new(GroupId::Sp { n }, members, lambda, mu, Provenance::Quaternionic)
}

/// `max |τ(φ) − λφ|` and `max |κ(φ,ψ) − μφψ|` over members and ordered pairs
/// (including `φ = ψ`) at one point.
pub(crate) fn eigen_residuals_at(
    frame: &LocalFrame,
    members: &[FunctionExpr],
    lambda: C64,
    mu: C64,
) -> Result<[f64; 2]> {
    let jets = members
        .iter()
        .map(|f| frame.jets(f))
        .collect::<Result<Vec<FrameJets>>>()?;
    let mut tau = 0.0f64;
    let mut kappa = 0.0f64;
    for a in &jets {
        tau = nan_max(tau, (a.tau() - lambda * a.value).norm());
        for b in &jets {
            kappa = nan_max(kappa, (a.kappa(b) - mu * a.value * b.value).norm());
        }
    }
    Ok([tau, kappa])
}

pub(crate) fn eigen_residuals(
    members: &[FunctionExpr],
    lambda: C64,
    mu: C64,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
) -> Result<Vec<f64>> {
    max_over_samples(samples, 2, |x| {
        let frame = LocalFrame::new(x, basis)?;
        Ok(eigen_residuals_at(&frame, members, lambda, mu)?.to_vec())
    })
}

pub(crate) fn max_defect(group: GroupId, samples: &[ComplexMatrix]) -> f64 {
    samples
        .iter()
        .map(|x| group_defect(group, x))
        .fold(0.0, nan_max)
}

/// Checks `τ(φ) = λφ` and `κ(φ,ψ) = μφψ` for every member and ordered pair at
/// every sample.
pub fn verify_eigenfamily(
    fam: &Eigenfamily,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    if basis.group != fam.group {
        return Err(Error::Precondition(format!(
            "basis is for {} but the family lives on {}",
            basis.group, fam.group
        )));
    }
    let builder = ReportBuilder::new("eigenfamily", fam.group.to_string())
        .param("provenance", fam.provenance)
        .param("members", fam.members.len())
        .param("lambda", fam.lambda)
        .param("mu", fam.mu);
    let r = eigen_residuals(&fam.members, fam.lambda, fam.mu, basis, samples)?;
    Ok(builder
        .residuals(["tau", "kappa"], &r, tol)
        .samples(samples.len(), 0)
        .sample_defect(max_defect(fam.group, samples))
        .finish())
}

/// Checks the coordinate-function formulas for τ and κ on SO(n), U(n) or Sp(n)
/// for every index combination.
pub fn verify_coordinate_lemmas(
    group: GroupId,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    if basis.group != group {
        return Err(Error::Precondition(format!(
            "basis is for {} but lemmas were requested on {group}",
            basis.group
        )));
    }
    let builder = ReportBuilder::new("coordinate_lemmas", group.to_string());
    let builder = match group {
        GroupId::So { n } => {
            let r = max_over_samples(samples, 3, |x| orthogonal_lemma_at(n, x, basis))?;
            builder.residuals(["tau_x", "kappa_x", "kappa_x_simplified"], &r, tol)
        }
        GroupId::U { n } => {
            let r = max_over_samples(samples, 2, |x| unitary_lemma_at(n, x, basis))?;
            builder.residuals(["tau_z", "kappa_z"], &r, tol)
        }
        GroupId::Sp { n } => {
            let r = max_over_samples(samples, 6, |x| quaternionic_lemma_at(n, x, basis))?;
            builder
                .residuals(
                    ["tau_z", "tau_w", "kappa_zz", "kappa_ww", "kappa_zw"],
                    &r[..5],
                    tol,
                )
                .residual("block_zwt_minus_wzt", r[5], tol.min(BLOCK_IDENTITY_TOL))
        }
        other => {
            return Err(Error::Argument(format!(
                "coordinate lemmas are stated for SO(n), U(n), Sp(n); got {other}"
            )))
        }
    };
    Ok(builder
        .param("n", group.matrix_dim())
        .samples(samples.len(), 0)
        .sample_defect(max_defect(group, samples))
        .finish())
}

/// Tolerance on `z·wᵗ − w·zᵗ = 0` for Sp(n) samples.
pub const BLOCK_IDENTITY_TOL: f64 = 1e-10;

fn entry_jets(frame: &LocalFrame, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Result<Vec<Vec<FrameJets>>> {
    rows.map(|i| {
        cols.clone()
            .map(|j| frame.jets(&FunctionExpr::entry(i, j)))
            .collect::<Result<Vec<_>>>()
    })
    .collect()
}

fn orthogonal_lemma_at(n: usize, x: &ComplexMatrix, basis: &SignedBasis) -> Result<Vec<f64>> {
    let frame = LocalFrame::new(x, basis)?;
    let jets = entry_jets(&frame, 0..n, 0..n)?;
    let half_n1 = (n as f64 - 1.0) / 2.0;
    let mut out = vec![0.0f64; 3];
    for i in 0..n {
        for j in 0..n {
            let xij = x[(i, j)];
            out[0] = nan_max(out[0], (jets[i][j].tau() + xij * half_n1).norm());
            for k in 0..n {
                // Σ_t x_it x_kt
                let row_dot: C64 = (0..n).map(|t| x[(i, t)] * x[(k, t)]).sum();
                for l in 0..n {
                    let kap = jets[i][j].kappa(&jets[k][l]);
                    let cross = x[(i, l)] * x[(k, j)];
                    let djl = if j == l { ONE } else { ZERO };
                    let dik = if i == k { ONE } else { ZERO };
                    let general = (cross - djl * row_dot) * -0.5;
                    let simplified = (dik * djl - cross) * 0.5;
                    out[1] = nan_max(out[1], (kap - general).norm());
                    out[2] = nan_max(out[2], (kap - simplified).norm());
                }
            }
        }
    }
    Ok(out)
}

fn unitary_lemma_at(n: usize, x: &ComplexMatrix, basis: &SignedBasis) -> Result<Vec<f64>> {
    let frame = LocalFrame::new(x, basis)?;
    let jets = entry_jets(&frame, 0..n, 0..n)?;
    let mut out = vec![0.0f64; 2];
    for i in 0..n {
        for j in 0..n {
            out[0] = nan_max(out[0], (jets[i][j].tau() + x[(i, j)] * n as f64).norm());
            for k in 0..n {
                for l in 0..n {
                    let expected = -(x[(i, l)] * x[(k, j)]);
                    out[1] = nan_max(out[1], (jets[i][j].kappa(&jets[k][l]) - expected).norm());
                }
            }
        }
    }
    Ok(out)
}

fn quaternionic_lemma_at(n: usize, g: &ComplexMatrix, basis: &SignedBasis) -> Result<Vec<f64>> {
    let frame = LocalFrame::new(g, basis)?;
    let zj = entry_jets(&frame, 0..n, 0..n)?;
    let wj = entry_jets(&frame, 0..n, n..2 * n)?;
    let z = |i: usize, j: usize| g[(i, j)];
    let w = |i: usize, j: usize| g[(i, n + j)];
    let lambda = -(2.0 * n as f64 + 1.0) / 2.0;
    let mut out = vec![0.0f64; 6];
    for i in 0..n {
        for k in 0..n {
            // Σ_t (z_it w_kt − w_it z_kt) = (z·wᵗ − w·zᵗ)_ik
            let block: C64 = (0..n).map(|t| z(i, t) * w(k, t) - w(i, t) * z(k, t)).sum();
            out[5] = nan_max(out[5], block.norm());
        }
    }
    for i in 0..n {
        for j in 0..n {
            out[0] = nan_max(out[0], (zj[i][j].tau() - z(i, j) * lambda).norm());
            out[1] = nan_max(out[1], (wj[i][j].tau() - w(i, j) * lambda).norm());
            for k in 0..n {
                let block: C64 = (0..n).map(|t| z(i, t) * w(k, t) - w(i, t) * z(k, t)).sum();
                for l in 0..n {
                    let zz = z(i, l) * z(k, j) * -0.5;
                    let ww = w(i, l) * w(k, j) * -0.5;
                    let djl = if j == l { ONE } else { ZERO };
                    let zw = (w(i, l) * z(k, j) - djl * block) * -0.5;
                    out[2] = nan_max(out[2], (zj[i][j].kappa(&zj[k][l]) - zz).norm());
                    out[3] = nan_max(out[3], (wj[i][j].kappa(&wj[k][l]) - ww).norm());
                    out[4] = nan_max(out[4], (zj[i][j].kappa(&wj[k][l]) - zw).norm());
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::compact_basis;
    use crate::sampling::{sample_from_basis, SampleRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn samples(g: GroupId, count: usize, seed: u64) -> (SignedBasis, Vec<ComplexMatrix>) {
        let b = compact_basis(g).unwrap();
        let s = sample_from_basis(&b, count, 0.5, &mut SampleRng::new(seed));
        (b, s)
    }

    #[test]
    fn so_family_v_small_example() {
        let fam = so_family_v(2, &[ONE, ZERO], &[vec![ONE, I]]).unwrap();
        assert_eq!(fam.members.len(), 1);
        let x = ComplexMatrix::from_fn(2, |i, j| c(1.0 + i as f64, 2.0 * j as f64 - 0.5));
        let v = fam.members[0].eval_point(&x).unwrap();
        assert!((v - (x[(0, 0)] + I * x[(0, 1)])).norm() < 1e-15);
        assert_eq!((fam.lambda, fam.mu), (c(-0.5, 0.0), c(-0.5, 0.0)));
    }

    #[test]
    fn so_family_v_rejects_non_isotropic() {
        let err = so_family_v(2, &[ONE, ZERO], &[vec![ONE, ZERO]]).unwrap_err();
        assert!(matches!(err, Error::Validation(m) if m.contains("V[0]")));
        let err = so_family_v(4, &[ONE, ZERO, ZERO, ZERO], &[vec![ONE, I, ZERO, ZERO], vec![ONE, ZERO, I, ZERO]])
            .unwrap_err();
        assert!(matches!(err, Error::Validation(m) if m.contains("(V[0], V[1])")));
        assert!(so_family_v(2, &[ZERO, ZERO], &[vec![ONE, I]]).is_err());
    }

    #[test]
    fn maximal_isotropic_is_isotropic() {
        let v = maximal_isotropic_subspace(5);
        assert_eq!(v.len(), 2);
        for a in &v {
            for b in &v {
                assert_eq!(bilinear(a, b), ZERO);
            }
        }
    }

    #[test]
    fn so_family_special_columns() {
        let fam = so_family_special(2, &[ONE, I]).unwrap();
        let x = ComplexMatrix::from_fn(2, |i, j| c(0.3 * i as f64 + 0.1, -0.7 * j as f64 + 0.2));
        let m0 = fam.members[0].eval_point(&x).unwrap();
        let m1 = fam.members[1].eval_point(&x).unwrap();
        assert!((m0 - (x[(0, 0)] + I * x[(1, 0)])).norm() < 1e-15);
        assert!((m1 - (x[(0, 1)] + I * x[(1, 1)])).norm() < 1e-15);
        assert!(!fam.dual_continuable);
        assert!(so_family_special(2, &[ONE, ZERO]).is_err());
    }

    #[test]
    fn so4_deformation_values() {
        assert_eq!(so4_deformation(ZERO, ZERO), [ONE, I, ZERO, ZERO]);
        let p = so4_deformation(ONE, -ONE);
        assert_eq!(p, [ZERO, c(0.0, 2.0), ZERO, c(2.0, 0.0)]);
        let mut rng = SampleRng::new(11);
        for _ in 0..50 {
            let p = so4_deformation(rng.unit_disc() * 3.0, rng.unit_disc() * 3.0);
            assert!(bilinear(&p, &p).norm() < 1e-12);
        }
        assert_eq!(so_family_special(4, &so4_deformation(ZERO, ZERO)).unwrap().members.len(), 4);
    }

    #[test]
    fn unitary_family_members_and_constants() {
        let fam = u_family(2, &[ONE, ZERO]).unwrap();
        let x = ComplexMatrix::from_fn(2, |i, j| c(i as f64 + 0.5, j as f64 - 0.25));
        assert_eq!(fam.members[0].eval_point(&x).unwrap(), x[(0, 0)]);
        assert_eq!(fam.members[1].eval_point(&x).unwrap(), x[(0, 1)]);
        assert_eq!((fam.lambda, fam.mu), (c(-2.0, 0.0), c(-1.0, 0.0)));
        let su = fam.on_special_unitary().unwrap();
        assert_eq!((su.lambda, su.mu), (c(-1.5, 0.0), c(-0.5, 0.0)));
        assert!(u_family(2, &[ZERO, ZERO]).is_err());
    }

    #[test]
    fn su2_constants_match_direct_jet_measurement() {
        let (basis, pts) = samples(GroupId::Su { n: 2 }, 30, 5);
        let z11 = FunctionExpr::entry(0, 0);
        for x in pts.iter().filter(|x| x[(0, 0)].norm() > 0.1) {
            let frame = LocalFrame::new(x, &basis).unwrap();
            let j = frame.jets(&z11).unwrap();
            assert!((j.tau() / j.value - c(-1.5, 0.0)).norm() < 1e-10);
            assert!((j.kappa(&j) / (j.value * j.value) - c(-0.5, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn sp1_family_matches_su2_constants() {
        let fam = sp_family(1, &[ONE]).unwrap();
        assert_eq!(fam.members.len(), 2);
        assert_eq!(fam.lambda, c(-1.5, 0.0));
        assert_eq!(constants(GroupId::Sp { n: 1 }), constants(GroupId::Su { n: 2 }));
    }

    #[test]
    fn unitary_family_verifies_and_perturbed_constants_fail() {
        let (basis, pts) = samples(GroupId::U { n: 2 }, 100, 1);
        let fam = u_family(2, &[ONE, ZERO]).unwrap();
        let r = verify_eigenfamily(&fam, &basis, &pts, 1e-8).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.max_sample_defect.unwrap() < 1e-10);

        let bad = fam.with_constants(fam.lambda + 0.1, fam.mu);
        let r = verify_eigenfamily(&bad, &basis, &pts, 1e-8).unwrap();
        assert!(!r.passed());
        // residual is 0.1·max|φ|
        let max_phi = pts
            .iter()
            .flat_map(|x| fam.members.iter().map(move |f| f.eval_point(x).unwrap().norm()))
            .fold(0.0, f64::max);
        assert!((r.residual("tau").unwrap() - 0.1 * max_phi).abs() < 1e-10);
    }

    #[test]
    fn isotropic_subspace_family_on_so4() {
        let (basis, pts) = samples(GroupId::So { n: 4 }, 50, 2);
        let fam = so_family_v(4, &[ONE, ZERO, ZERO, ZERO], &maximal_isotropic_subspace(4)).unwrap();
        assert_eq!(fam.members.len(), 2);
        let r = verify_eigenfamily(&fam, &basis, &pts, 1e-8).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn wrong_basis_is_a_precondition_error() {
        let basis = compact_basis(GroupId::So { n: 2 }).unwrap();
        let fam = u_family(2, &[ONE, ZERO]).unwrap();
        assert!(matches!(
            verify_eigenfamily(&fam, &basis, &[], 1e-8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn so3_tau_ratio() {
        let (basis, pts) = samples(GroupId::So { n: 3 }, 40, 9);
        for x in &pts {
            let frame = LocalFrame::new(x, &basis).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    if x[(i, j)].norm() > 0.1 {
                        let t = frame.tau(&FunctionExpr::entry(i, j)).unwrap();
                        assert!((t / x[(i, j)] + 1.0).norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn unitary_kappa_at_identity() {
        let basis = compact_basis(GroupId::U { n: 2 }).unwrap();
        let z11 = FunctionExpr::entry(0, 0);
        let k = LocalFrame::new(&ComplexMatrix::identity(2), &basis)
            .unwrap()
            .kappa(&z11, &z11)
            .unwrap();
        assert!((k + 1.0).norm() < 1e-14);
    }

    #[test]
    fn lemmas_hold_on_small_groups() {
        for g in [GroupId::So { n: 3 }, GroupId::U { n: 2 }, GroupId::Sp { n: 2 }] {
            let (basis, pts) = samples(g, 20, 4);
            let r = verify_coordinate_lemmas(g, &basis, &pts, 1e-8).unwrap();
            assert!(r.passed(), "{r:#?}");
        }
    }

    #[test]
    fn lemma_request_on_unsupported_group() {
        let basis = compact_basis(GroupId::Su { n: 2 }).unwrap();
        assert!(verify_coordinate_lemmas(GroupId::Su { n: 2 }, &basis, &[], 1e-8).is_err());
    }
}
