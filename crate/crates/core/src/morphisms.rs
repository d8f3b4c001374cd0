//! Harmonic morphisms built from eigenfamilies.
//!
//! If `{φ_1..φ_m}` is an eigenfamily and `P, Q` are linearly independent
//! homogeneous polynomials of the same degree, then `P(φ)/Q(φ)` is a harmonic
//! morphism where `Q(φ) ≠ 0`. Products of `k` members form an eigenfamily with
//! `λ_k = kλ + k(k−1)μ` and `μ_k = k²μ`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::SignedBasis;
use crate::error::{Error, Result};
use crate::expr::{FunctionExpr, Polynomial, DEFAULT_DOMAIN_FLOOR};
use crate::families::{max_defect, verify_eigenfamily, Eigenfamily, Provenance};
use crate::jets::LocalFrame;
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::report::{nan_max, ReportBuilder, VerificationReport};
use crate::sampling::{monomials_of_degree, random_hom_poly, sample_from_basis, SampleRng};

/// Relative Cauchy–Schwarz gap below which two coefficient vectors count as proportional.
pub const PROPORTIONALITY_TOL: f64 = 1e-12;

/// Draw at most this many times the requested number of samples when
/// looking for points inside a quotient's domain.
pub const MAX_OVERSAMPLING: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct PowerFamily {
    pub base: Eigenfamily,
    pub k: u32,
    /// Exponent vector over `base.members` for each member, in the order of
    /// [`monomials_of_degree`].
    pub exponents: Vec<Vec<u32>>,
    pub members: Vec<FunctionExpr>,
    pub lambda_k: C64,
    pub mu_k: C64,
}

impl PowerFamily {
    pub fn as_eigenfamily(&self) -> Eigenfamily {
        Eigenfamily {
            group: self.base.group,
            members: self.members.clone(),
            lambda: self.lambda_k,
            mu: self.mu_k,
            provenance: Provenance::Power,
            dual_continuable: self.base.dual_continuable,
        }
    }
}

/// `λ_k = kλ + k(k−1)μ`, `μ_k = k²μ`.
pub fn power_constants(lambda: C64, mu: C64, k: u32) -> (C64, C64) {
    let kf = k as f64;
    (lambda * kf + mu * (kf * (kf - 1.0)), mu * (kf * kf))
}

/// All degree-`k` monomials in the members of `fam`.
pub fn power_family(fam: &Eigenfamily, k: u32) -> Result<PowerFamily> {
    if k == 0 {
        return Err(Error::Argument("power family degree must be at least 1".into()));
    }
    let m = fam.members.len();
    let (lambda_k, mu_k) = power_constants(fam.lambda, fam.mu, k);
    let exponents = monomials_of_degree(m, k);
    let members = if k == 1 {
        fam.members.clone()
    } else {
        exponents
            .iter()
            .map(|e| {
                let poly = Polynomial::from_terms(m, [(e.clone(), ONE)])?;
                FunctionExpr::hom_poly(k, poly, fam.members.clone())
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(PowerFamily {
        base: fam.clone(),
        k,
        exponents,
        members,
        lambda_k,
        mu_k,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMorphism {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    pub degree: u32,
    pub family: Eigenfamily,
    pub floor: f64,
}

impl RationalMorphism {
    /// `P(φ)/Q(φ)` as an expression with domain `|Q(φ)| > floor`.
    pub fn expr(&self) -> FunctionExpr {
        let hp = |p: &Polynomial| {
            FunctionExpr::hom_poly(self.degree, p.clone(), self.family.members.clone())
                .expect("validated at construction")
        };
        FunctionExpr::quotient(hp(&self.numerator), hp(&self.denominator), self.floor)
    }

    /// The same map with `P` and `Q` both multiplied by `c`.
    pub fn rescaled(&self, c: C64) -> Result<Self> {
        quotient_morphism(
            &self.family,
            self.numerator.scale(c),
            self.denominator.scale(c),
            self.floor,
        )
    }

    /// Rescales `P` and `Q` jointly so that the median of `|Q(φ(x))|` over
    /// `pilot` is 1, which makes the domain floor relative to the size of `Q`.
    pub fn normalized_on(&self, pilot: &[ComplexMatrix]) -> Result<Self> {
        let den = self.denominator_expr();
        let mut mags = pilot
            .iter()
            .map(|x| den.eval_point(x).map(|q| q.norm()))
            .collect::<Result<Vec<_>>>()?;
        if mags.is_empty() {
            return Ok(self.clone());
        }
        mags.sort_by(f64::total_cmp);
        let median = mags[mags.len() / 2];
        if !(median > 0.0 && median.is_finite()) {
            return Ok(self.clone());
        }
        self.rescaled(C64::new(1.0 / median, 0.0))
    }

    pub fn numerator_expr(&self) -> FunctionExpr {
        FunctionExpr::hom_poly(self.degree, self.numerator.clone(), self.family.members.clone())
            .expect("validated at construction")
    }

    pub fn denominator_expr(&self) -> FunctionExpr {
        FunctionExpr::hom_poly(self.degree, self.denominator.clone(), self.family.members.clone())
            .expect("validated at construction")
    }
}

fn check_over_family(name: &str, p: &Polynomial, fam: &Eigenfamily) -> Result<u32> {
    if p.nvars() != fam.members.len() {
        return Err(Error::Argument(format!(
            "{name} has {} variables but the family has {} members",
            p.nvars(),
            fam.members.len()
        )));
    }
    if p.is_zero() {
        return Err(Error::Validation(format!("{name} is the zero polynomial")));
    }
    p.homogeneous_degree()
        .ok_or_else(|| Error::Validation(format!("{name} is not homogeneous")))
}

/// `true` if the coefficient vectors of `p` and `q` are complex multiples of
/// each other (Cauchy–Schwarz equality to [`PROPORTIONALITY_TOL`]).
pub fn proportional(p: &Polynomial, q: &Polynomial) -> bool {
    let mut keys: Vec<&Vec<u32>> = p.terms().keys().chain(q.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    let (mut pq, mut pp, mut qq) = (ZERO, 0.0, 0.0);
    for e in keys {
        let (a, b) = (p.coefficient(e), q.coefficient(e));
        pq += a.conj() * b;
        pp += a.norm_sqr();
        qq += b.norm_sqr();
    }
    if pp == 0.0 || qq == 0.0 {
        return true;
    }
    1.0 - pq.norm_sqr() / (pp * qq) < PROPORTIONALITY_TOL
}

pub fn quotient_morphism(
    fam: &Eigenfamily,
    p: Polynomial,
    q: Polynomial,
    floor: f64,
) -> Result<RationalMorphism> {
    let dp = check_over_family("P", &p, fam)?;
    let dq = check_over_family("Q", &q, fam)?;
    if dp != dq {
        return Err(Error::Validation(format!(
            "P has degree {dp} but Q has degree {dq}"
        )));
    }
    if dp == 0 {
        return Err(Error::Validation("P and Q must have degree at least 1".into()));
    }
    if proportional(&p, &q) {
        return Err(Error::Validation("P and Q are proportional".into()));
    }
    if !(floor > 0.0) {
        return Err(Error::Argument(format!("domain floor must be positive, got {floor}")));
    }
    Ok(RationalMorphism {
        numerator: p,
        denominator: q,
        degree: dp,
        family: fam.clone(),
        floor,
    })
}

/// A random pair of independent degree-`d` polynomials over `fam`, with
/// coefficients uniform on the complex unit disc.
pub fn random_morphism(
    fam: &Eigenfamily,
    degree: u32,
    floor: f64,
    rng: &mut SampleRng,
) -> Result<RationalMorphism> {
    let m = fam.members.len();
    loop {
        let p = random_hom_poly(m, degree, rng);
        let q = random_hom_poly(m, degree, rng);
        match quotient_morphism(fam, p, q, floor) {
            Err(Error::Validation(_)) if m == 1 && degree >= 1 => {
                return Err(Error::Validation(
                    "a one-member family has no independent pair of equal degree".into(),
                ))
            }
            Err(Error::Validation(_)) => continue,
            other => return other,
        }
    }
}

/// `(aP + bQ)/(cP + dQ)`.
pub fn mobius(m: &RationalMorphism, a: C64, b: C64, c: C64, d: C64) -> Result<RationalMorphism> {
    let det = a * d - b * c;
    if det.norm() <= PROPORTIONALITY_TOL {
        return Err(Error::Validation(format!("ad − bc = {det} is zero")));
    }
    let p = m.numerator.scale(a).add(&m.denominator.scale(b))?;
    let q = m.numerator.scale(c).add(&m.denominator.scale(d))?;
    quotient_morphism(&m.family, p, q, m.floor)
}

fn in_domain(f: &FunctionExpr, x: &ComplexMatrix) -> Result<bool> {
    match f.eval_point(x) {
        Ok(_) => Ok(true),
        Err(Error::Pole { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Draws samples until `count` of them lie in the domain of `f`, giving up
/// after `MAX_OVERSAMPLING · count` draws. Returns the accepted samples and
/// the number rejected.
pub fn select_in_domain(
    f: &FunctionExpr,
    basis: &SignedBasis,
    count: usize,
    radius: f64,
    rng: &mut SampleRng,
) -> Result<(Vec<ComplexMatrix>, usize)> {
    let mut accepted = Vec::with_capacity(count);
    let mut rejected = 0;
    let budget = count * MAX_OVERSAMPLING;
    while accepted.len() < count && accepted.len() + rejected < budget {
        let x = sample_from_basis(basis, 1, radius, rng).pop().expect("one sample");
        if in_domain(f, &x)? {
            accepted.push(x);
        } else {
            rejected += 1;
        }
    }
    Ok((accepted, rejected))
}

/// `max |τ(f)|` and `max |κ(f, f)|` over samples where `f` is defined.
/// Samples at which a quotient denominator falls below its floor are
/// discarded; if none remain the result is [`Error::Inconclusive`].
pub fn verify_harmonic_function(
    f: &FunctionExpr,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    let builder = ReportBuilder::new("harmonic_morphism", basis.group.to_string());
    let rows: Vec<Result<Option<[f64; 2]>>> = samples
        .par_iter()
        .map(|x| {
            let frame = LocalFrame::new(x, basis)?;
            match frame.jets(f) {
                Ok(j) => Ok(Some([j.tau().norm(), j.kappa(&j).norm()])),
                Err(Error::Pole { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut acc = [0.0f64; 2];
    let mut used = 0;
    for row in rows {
        if let Some(r) = row? {
            used += 1;
            acc[0] = nan_max(acc[0], r[0]);
            acc[1] = nan_max(acc[1], r[1]);
        }
    }
    let discarded = samples.len() - used;
    if used == 0 {
        return Err(Error::Inconclusive { discarded });
    }
    Ok(builder
        .residuals(["tau", "kappa"], &acc, tol)
        .samples(used, discarded)
        .sample_defect(max_defect(basis.group, samples))
        .finish())
}

pub fn verify_harmonic_morphism(
    m: &RationalMorphism,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = verify_harmonic_function(&m.expr(), basis, samples, tol)?;
    let den = m.denominator_expr();
    let min_den = samples
        .iter()
        .filter_map(|x| den.eval_point(x).ok())
        .map(|q| q.norm())
        .filter(|&q| q > m.floor)
        .fold(f64::INFINITY, f64::min);
    if let serde_json::Value::Object(params) = &mut r.params {
        params.insert("min_abs_denominator".into(), min_den.into());
        params.insert("degree".into(), m.degree.into());
        params.insert("family_members".into(), m.family.members.len().into());
        params.insert("floor".into(), m.floor.into());
    }
    Ok(r)
}

/// Checks `Q²κ(P,P) = PQκ(P,Q) = P²κ(Q,Q)` and `τ(P) = λ_{d_P}P`,
/// `τ(Q) = λ_{d_Q}Q`, where `P, Q` are polynomials in the members of `fam`.
/// When the degrees agree, also checks that the common value is `μ_d·P²Q²`.
pub fn verify_quotient_condition(
    fam: &Eigenfamily,
    p: &Polynomial,
    q: &Polynomial,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    let dp = check_over_family("P", p, fam)?;
    let dq = check_over_family("Q", q, fam)?;
    let pe = FunctionExpr::hom_poly(dp, p.clone(), fam.members.clone())?;
    let qe = FunctionExpr::hom_poly(dq, q.clone(), fam.members.clone())?;
    let (lp, _) = power_constants(fam.lambda, fam.mu, dp);
    let (lq, _) = power_constants(fam.lambda, fam.mu, dq);
    let mu_d = (dp == dq).then(|| power_constants(fam.lambda, fam.mu, dp).1);
    let width = if mu_d.is_some() { 5 } else { 4 };
    let r = crate::report::max_over_samples(samples, width, |x| {
        let frame = LocalFrame::new(x, basis)?;
        let pj = frame.jets(&pe)?;
        let qj = frame.jets(&qe)?;
        let (pv, qv) = (pj.value, qj.value);
        let a = qv * qv * pj.kappa(&pj);
        let b = pv * qv * pj.kappa(&qj);
        let c = pv * pv * qj.kappa(&qj);
        let mut out = vec![
            (a - b).norm(),
            (b - c).norm(),
            (pj.tau() - lp * pv).norm(),
            (qj.tau() - lq * qv).norm(),
        ];
        if let Some(mu) = mu_d {
            out.push((a - mu * pv * pv * qv * qv).norm());
        }
        Ok(out)
    })?;
    let mut builder = ReportBuilder::new("quotient_condition", fam.group.to_string())
        .param("degree_p", dp)
        .param("degree_q", dq)
        .residuals(["qq_kpp_vs_pq_kpq", "pq_kpq_vs_pp_kqq", "tau_p", "tau_q"], &r[..4], tol);
    if mu_d.is_some() {
        builder = builder.residual("common_value_vs_mu_d", r[4], tol);
    }
    Ok(builder
        .samples(samples.len(), 0)
        .sample_defect(max_defect(fam.group, samples))
        .finish())
}

/// `{P_i(φ)/Q(φ)}`: quotients over one shared denominator form an eigenfamily
/// with `λ = μ = 0`.
pub fn orthogonal_quotient_family(
    fam: &Eigenfamily,
    numerators: Vec<Polynomial>,
    denominator: Polynomial,
    floor: f64,
) -> Result<Eigenfamily> {
    if numerators.is_empty() {
        return Err(Error::Validation("no numerators given".into()));
    }
    let members = numerators
        .into_iter()
        .map(|p| quotient_morphism(fam, p, denominator.clone(), floor).map(|m| m.expr()))
        .collect::<Result<Vec<_>>>()?;
    Eigenfamily::new(fam.group, members, ZERO, ZERO, Provenance::OrthogonalQuotients)
}

/// `h(φ_1, …, φ_n)` for an orthogonal harmonic family `φ`. The family is
/// verified on `samples` first; the result again has `τ = 0` and `κ = 0`.
pub fn compose_orthogonal(
    family: &Eigenfamily,
    h: &Polynomial,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<FunctionExpr> {
    if family.lambda != ZERO || family.mu != ZERO {
        return Err(Error::Precondition(format!(
            "family constants are ({}, {}), not (0, 0)",
            family.lambda, family.mu
        )));
    }
    if h.nvars() != family.members.len() {
        return Err(Error::Argument(format!(
            "h has {} variables but the family has {} members",
            h.nvars(),
            family.members.len()
        )));
    }
    let report = verify_orthogonal_family(family, basis, samples, tol)?;
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "family is not orthogonal harmonic on the samples (worst residual {:e})",
            report.worst()
        )));
    }
    let terms = h.terms();
    if terms.len() == 1 {
        let (e, c) = terms.iter().next().expect("one term");
        if *c == ONE && e.iter().sum::<u32>() == 1 {
            let k = e.iter().position(|&v| v == 1).expect("degree one");
            return Ok(family.members[k].clone());
        }
    }
    let max_degree = terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
    let mut parts = Vec::new();
    for d in 0..=max_degree {
        let piece = Polynomial::from_terms(
            h.nvars(),
            terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), *c)),
        )?;
        if piece.is_zero() {
            continue;
        }
        if d == 0 {
            parts.push(FunctionExpr::constant(piece.coefficient(&vec![0; h.nvars()])));
        } else {
            parts.push(FunctionExpr::hom_poly(d, piece, family.members.clone())?);
        }
    }
    Ok(match parts.len() {
        0 => FunctionExpr::constant(ZERO),
        1 => parts.pop().expect("one part"),
        _ => FunctionExpr::sum(parts),
    })
}

/// Like [`verify_eigenfamily`] but discarding samples outside the members' domains.
pub fn verify_orthogonal_family(
    family: &Eigenfamily,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    let mut kept = Vec::with_capacity(samples.len());
    for x in samples {
        let mut ok = true;
        for f in &family.members {
            ok &= in_domain(f, x)?;
        }
        if ok {
            kept.push(x.clone());
        }
    }
    if kept.is_empty() {
        return Err(Error::Inconclusive { discarded: samples.len() });
    }
    let mut r = verify_eigenfamily(family, basis, &kept, tol)?;
    r.samples_discarded = samples.len() - kept.len();
    Ok(r)
}

/// Serializable description of a morphism over a family, for configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub p: Polynomial,
    pub q: Polynomial,
    #[serde(default = "default_floor")]
    pub floor: f64,
}

fn default_floor() -> f64 {
    DEFAULT_DOMAIN_FLOOR
}
