//! Non-compact duals of the compact groups and the sign flip of eigenfamilies.
//!
//! Each non-compact group is realized as an aligned real form: with `θ` an
//! involution of the compact algebra `𝔲 = 𝔨 ⊕ 𝔪` (`𝔨` fixed, `𝔪` negated),
//! the dual algebra is `𝔨 ⊕ i𝔪` inside the same complex matrices. Under
//! `h(Z, W) = Re trace(ZW)` the frame of `𝔨` has `ε = −1` and that of `𝔭 = i𝔪`
//! has `ε = +1`, so `τ` changes sign and an eigenfamily with constants `(λ, μ)`
//! on the compact side has `(−λ, −μ)` on the dual.

use serde::{Deserialize, Serialize};

use crate::basis::{compact_basis, i_pq, j_n, Metric, SignedBasis};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::families::{eigen_residuals, max_defect, Eigenfamily, Provenance};
use crate::gram_schmidt::{gram_schmidt_indefinite, independent_span, NULL_THRESHOLD};
use crate::group::GroupId;
use crate::matrix::{ComplexMatrix, I};
use crate::report::{ReportBuilder, VerificationReport};
use crate::sampling::{sample_from_basis, SampleRng};

pub const INVOLUTION_TOL: f64 = 1e-12;
pub const AUTOMORPHISM_TOL: f64 = 1e-10;
pub const CLOSURE_TOL: f64 = 1e-9;
pub const SIGN_TOL: f64 = 1e-10;
/// Largest sampling radius accepted for non-compact samples.
pub const MAX_RADIUS: f64 = 1.0;

/// A linear involution of the compact algebra, acting on its matrix embedding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Involution {
    Identity,
    /// `Z ↦ conj(Z)`.
    Conjugate,
    /// `Z ↦ J·conj(Z)·J⁻¹`.
    SymplecticConjugate { half: usize },
    /// `Z ↦ J·Z·J⁻¹`.
    Symplectic { half: usize },
    /// `Z ↦ I_pq·Z·I_pq`.
    Signature { p: usize, q: usize },
    /// `Z ↦ K·Z·K` with `K = diag(I_pq, I_pq)`.
    DoubledSignature { p: usize, q: usize },
}

impl Involution {
    pub fn apply(&self, z: &ComplexMatrix) -> ComplexMatrix {
        match *self {
            Involution::Identity => z.clone(),
            Involution::Conjugate => z.conj(),
            Involution::SymplecticConjugate { half } => {
                let j = j_n(half);
                // J⁻¹ = −J
                -&j.matmul(&z.conj()).matmul(&j)
            }
            Involution::Symplectic { half } => {
                let j = j_n(half);
                -&j.matmul(z).matmul(&j)
            }
            Involution::Signature { p, q } => {
                let s = i_pq(p, q);
                s.matmul(z).matmul(&s)
            }
            Involution::DoubledSignature { p, q } => {
                let s = i_pq(p, q);
                let zero = ComplexMatrix::zeros(p + q);
                let k = ComplexMatrix::from_blocks(&s, &zero, &zero, &s).expect("equal blocks");
                k.matmul(z).matmul(&k)
            }
        }
    }

    /// The involution whose dual is `noncompact`, with the compact partner.
    pub fn for_group(noncompact: GroupId) -> Result<(GroupId, Involution)> {
        noncompact.validate()?;
        let inv = match noncompact {
            GroupId::SlR { .. } | GroupId::SpR { .. } => Involution::Conjugate,
            GroupId::SuStar { n } => Involution::SymplecticConjugate { half: n / 2 },
            GroupId::SoStar { n } => Involution::Symplectic { half: n / 2 },
            GroupId::SoPq { p, q } | GroupId::SuPq { p, q } => Involution::Signature { p, q },
            GroupId::SpPq { p, q } => Involution::DoubledSignature { p, q },
            other => {
                return Err(Error::Argument(format!(
                    "{other} is not one of SL(n,R), SU*(2n), Sp(n,R), SO*(2n), SO(p,q), SU(p,q), Sp(p,q)"
                )))
            }
        };
        let compact = noncompact.compact_form().expect("non-compact duals have a compact form");
        Ok((compact, inv))
    }
}

/// Measured values of the structural invariants of a pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairInvariants {
    pub involution: f64,
    pub automorphism: f64,
    pub closure: f64,
    pub sign: f64,
    pub dim_k: usize,
    pub dim_p: usize,
    pub dim_compact: usize,
}

impl PairInvariants {
    pub fn holds(&self) -> bool {
        self.involution < INVOLUTION_TOL
            && self.automorphism < AUTOMORPHISM_TOL
            && self.closure < CLOSURE_TOL
            && self.sign < SIGN_TOL
            && self.dim_k + self.dim_p == self.dim_compact
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualPair {
    pub compact: GroupId,
    pub noncompact: GroupId,
    pub involution: Involution,
    /// Frame of the θ-fixed part, `ε = −1`.
    pub k_basis: SignedBasis,
    /// Frame of `i·(θ-anti-fixed part)`, `ε = +1`.
    pub p_basis: SignedBasis,
    /// `k_basis ∪ p_basis`, labelled with the non-compact group.
    pub basis: SignedBasis,
    pub invariants: PairInvariants,
}

impl DualPair {
    pub fn ambient_dim(&self) -> usize {
        self.compact.matrix_dim()
    }

    pub fn label(&self) -> String {
        format!("{} / {}", self.noncompact, self.compact)
    }
}

fn frame(group: GroupId, spanning: &[ComplexMatrix]) -> Result<SignedBasis> {
    let span = independent_span(spanning, NULL_THRESHOLD);
    gram_schmidt_indefinite(group, &span, Metric::Split)
}

fn build(compact: GroupId, noncompact: GroupId, involution: Involution) -> Result<DualPair> {
    let cb = compact_basis(compact)?;
    let fixed: Vec<_> = cb
        .matrices()
        .map(|z| (z + &involution.apply(z)).scale_real(0.5))
        .collect();
    let anti: Vec<_> = cb
        .matrices()
        .map(|z| (z - &involution.apply(z)).scale(I * 0.5))
        .collect();
    let k_basis = frame(noncompact, &fixed)?;
    let p_basis = frame(noncompact, &anti)?;
    let basis = SignedBasis::concat(noncompact, &k_basis, &p_basis);
    let invariants = measure_invariants(&cb, &involution, &k_basis, &p_basis);
    let pair = DualPair {
        compact,
        noncompact,
        involution,
        k_basis,
        p_basis,
        basis,
        invariants,
    };
    if !pair.invariants.holds() {
        return Err(Error::Construction(format!(
            "{}: structural invariants fail: {:?}",
            pair.label(),
            pair.invariants
        )));
    }
    Ok(pair)
}

/// The compact partner, involution and Cartan frames for a non-compact group.
pub fn dual_pair(noncompact: GroupId) -> Result<DualPair> {
    let (compact, involution) = Involution::for_group(noncompact)?;
    build(compact, noncompact, involution)
}

/// The identity involution on a compact group: `𝔨` is the whole algebra
/// (with `ε = −1`) and `𝔭` is empty.
pub fn degenerate_pair(compact: GroupId) -> Result<DualPair> {
    if !compact.is_compact() {
        return Err(Error::Argument(format!("{compact} is not compact")));
    }
    build(compact, compact, Involution::Identity)
}

/// `Σ ε_b h(v, b)·b`, the projection onto a frame's span.
fn project(v: &ComplexMatrix, frame: &SignedBasis) -> ComplexMatrix {
    frame.vectors.iter().fold(ComplexMatrix::zeros(v.dim()), |acc, b| {
        acc.add_scaled(b.sign.value() * Metric::Split.inner(v, &b.matrix), &b.matrix)
    })
}

fn measure_invariants(
    compact: &SignedBasis,
    theta: &Involution,
    k: &SignedBasis,
    p: &SignedBasis,
) -> PairInvariants {
    let mats: Vec<&ComplexMatrix> = compact.matrices().collect();
    let mut involution = 0.0f64;
    let mut automorphism = 0.0f64;
    for (a, z) in mats.iter().enumerate() {
        let tz = theta.apply(z);
        involution = involution.max(theta.apply(&tz).max_abs_diff(z));
        for w in &mats[a + 1..] {
            let lhs = theta.apply(&z.commutator(w));
            let rhs = tz.commutator(&theta.apply(w));
            automorphism = automorphism.max(lhs.max_abs_diff(&rhs));
        }
    }
    // each bracket must lie in the stated part; the residual also catches
    // components outside the algebra
    let mut closure = 0.0f64;
    let mut check = |x: &SignedBasis, y: &SignedBasis, target: &SignedBasis| {
        for a in x.matrices() {
            for b in y.matrices() {
                let v = a.commutator(b);
                closure = closure.max((&v - &project(&v, target)).frobenius_norm());
            }
        }
    };
    check(k, k, k);
    check(k, p, p);
    check(p, p, k);
    let mut sign = 0.0f64;
    for v in &k.vectors {
        sign = sign.max((Metric::Split.inner(&v.matrix, &v.matrix) + 1.0).abs());
    }
    for v in &p.vectors {
        sign = sign.max((Metric::Split.inner(&v.matrix, &v.matrix) - 1.0).abs());
    }
    let joint = SignedBasis::concat(k.group, k, p);
    sign = sign.max(joint.orthonormality_defect());
    PairInvariants {
        involution,
        automorphism,
        closure,
        sign,
        dim_k: k.len(),
        dim_p: p.len(),
        dim_compact: compact.len(),
    }
}

pub fn verify_pair_invariants(pair: &DualPair) -> VerificationReport {
    let inv = &pair.invariants;
    let dim_gap = (inv.dim_k + inv.dim_p).abs_diff(inv.dim_compact) as f64;
    ReportBuilder::new("pair_invariants", pair.label())
        .param("involution_kind", &pair.involution)
        .param("dim_k", inv.dim_k)
        .param("dim_p", inv.dim_p)
        .residual("involution", inv.involution, INVOLUTION_TOL)
        .residual("automorphism", inv.automorphism, AUTOMORPHISM_TOL)
        .residual("bracket_closure", inv.closure, CLOSURE_TOL)
        .residual("sign", inv.sign, SIGN_TOL)
        .residual("dimension_gap", dim_gap, 0.5)
        .finish()
}

/// Carries a function of the compact group's matrix entries to the dual.
/// Polynomials and quotients of entries continue to themselves.
pub fn continue_function(f: &FunctionExpr) -> Result<FunctionExpr> {
    if f.is_holomorphic() {
        Ok(f.clone())
    } else {
        Err(Error::Unsupported(
            "expressions with conjugated entries have no holomorphic continuation".into(),
        ))
    }
}

/// `exp(A₁)·exp(A₂)` with `A_m` random in `𝔨 ⊕ 𝔭`.
pub fn sample_noncompact(pair: &DualPair, count: usize, radius: f64, seed: u64) -> Vec<ComplexMatrix> {
    sample_from_basis(&pair.basis, count, radius, &mut SampleRng::new(seed))
}

fn dual_report(
    check: &str,
    pair: &DualPair,
    fam: &Eigenfamily,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<ReportBuilder> {
    let members = fam
        .members
        .iter()
        .map(continue_function)
        .collect::<Result<Vec<_>>>()?;
    let (lambda, mu) = (-fam.lambda, -fam.mu);
    let builder = ReportBuilder::new(check, pair.label())
        .param("provenance", fam.provenance)
        .param("members", fam.members.len())
        .param("lambda", lambda)
        .param("mu", mu);
    if samples.is_empty() {
        return Ok(builder);
    }
    let r = eigen_residuals(&members, lambda, mu, &pair.basis, samples)?;
    Ok(builder
        .residuals(["tau", "kappa"], &r, tol)
        .samples(samples.len(), 0)
        .sample_defect(max_defect(pair.noncompact, samples)))
}

fn check_group(pair: &DualPair, fam: &Eigenfamily) -> Result<()> {
    if fam.group != pair.compact {
        return Err(Error::Precondition(format!(
            "family lives on {} but the pair's compact group is {}",
            fam.group, pair.compact
        )));
    }
    Ok(())
}

/// Checks `τ(φ) = −λφ` and `κ(φ,ψ) = −μφψ` on the dual for a family with
/// constants `(λ, μ)` on the compact side.
pub fn verify_dual_eigenfamily(
    pair: &DualPair,
    fam: &Eigenfamily,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    check_group(pair, fam)?;
    if !fam.dual_continuable {
        return Err(Error::Precondition(format!(
            "{:?} families depend on identities of the compact group and cannot be continued",
            fam.provenance
        )));
    }
    Ok(dual_report("dual_eigenfamily", pair, fam, samples, tol)?.finish())
}

/// Dual residuals for a family built from a single isotropic vector, reported
/// without a verdict.
pub fn probe_noncontinuable(
    pair: &DualPair,
    fam: &Eigenfamily,
    samples: &[ComplexMatrix],
) -> Result<VerificationReport> {
    check_group(pair, fam)?;
    if fam.provenance != Provenance::IsotropicVector {
        return Err(Error::Precondition(format!(
            "probe expects an isotropic-vector family, got {:?}",
            fam.provenance
        )));
    }
    Ok(dual_report("dual_probe", pair, fam, samples, f64::INFINITY)?
        .informational()
        .finish())
}

/// Non-compact pairs exercised by the acceptance suite.
pub fn standard_pairs() -> Vec<GroupId> {
    vec![
        GroupId::SlR { n: 2 },
        GroupId::SlR { n: 3 },
        GroupId::SuStar { n: 4 },
        GroupId::SpR { n: 1 },
        GroupId::SpR { n: 2 },
        GroupId::SoStar { n: 4 },
        GroupId::SoPq { p: 1, q: 2 },
        GroupId::SoPq { p: 2, q: 2 },
        GroupId::SuPq { p: 1, q: 1 },
        GroupId::SuPq { p: 1, q: 2 },
        GroupId::SpPq { p: 1, q: 1 },
    ]
}
