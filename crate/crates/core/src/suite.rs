//! The full acceptance matrix as one seeded, reproducible run.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::basis::{compact_basis, SignedBasis};
use crate::duality::{
    dual_pair, sample_noncompact, standard_pairs, verify_dual_eigenfamily, verify_pair_invariants,
};
use crate::error::{Error, Result};
use crate::expr::{FunctionExpr, Polynomial, DEFAULT_DOMAIN_FLOOR};
use crate::families::{
    constants, maximal_isotropic_subspace, so4_deformation, so_family_special, so_family_v,
    sp_family, su_family, u_family, verify_coordinate_lemmas, verify_eigenfamily, Eigenfamily,
};
use crate::group::GroupId;
use crate::harness::{compact_samples, IDENTITY_TOL};
use crate::identities::verify_matrix_identities;
use crate::jets::LocalFrame;
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::morphisms::{
    power_family, quotient_morphism, random_morphism, select_in_domain, verify_harmonic_function,
    verify_harmonic_morphism, verify_quotient_condition, RationalMorphism,
};
use crate::report::{max_over_samples, nan_max, ReportBuilder, Residual, VerificationReport};
use crate::sampling::{sample_from_basis, SampleRng, DEFAULT_RADIUS, DEFAULT_SEED};

pub const LEMMA_SAMPLES: usize = 200;
pub const LEMMA_TOL: f64 = 1e-8;
pub const FAMILY_SAMPLES: usize = 100;
pub const FAMILY_TOL: f64 = 1e-8;
pub const FACTORY_PAIRS: usize = 20;
pub const FACTORY_MAX_DEGREE: u32 = 3;
pub const FACTORY_SAMPLES: usize = 50;
pub const FACTORY_TOL: f64 = 1e-7;
/// Domain floor `|Q(φ)| > FACTORY_FLOOR` for the random morphisms, after
/// `P` and `Q` are scaled so that the median `|Q|` over a pilot sample is 1.
pub const FACTORY_FLOOR: f64 = 0.1;
pub const FACTORY_PILOT: usize = 21;
pub const HOPF_SAMPLES: usize = 100;
pub const HOPF_TOL: f64 = 1e-9;
/// The Hopf map is sampled where `|w| > 0.1`.
pub const HOPF_FLOOR: f64 = 0.1;
pub const POWER_TOL: f64 = 1e-8;
/// Ratios `τ(φ)/φ` are only measured where `|φ|` exceeds this.
pub const RATIO_FLOOR: f64 = 0.1;
pub const QUOTIENT_CONDITION_TOL: f64 = 1e-7;
pub const DUAL_SAMPLES: usize = 100;
pub const DUAL_TOL: f64 = 1e-8;
pub const DEFORMATIONS: usize = 10;
/// Agreement required between the negative control's residual and `2·max|z_11|`.
pub const CONTROL_MATCH_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Replaces every per-check sample count when set.
    pub samples: Option<usize>,
    /// Replaces every per-check tolerance when set.
    pub tol: Option<f64>,
    pub radius: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: None,
            tol: None,
            radius: DEFAULT_RADIUS,
        }
    }
}

impl SuiteConfig {
    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    /// Independent stream per check, derived from the suite seed.
    fn rng(&self, tag: u64) -> SampleRng {
        SampleRng::new(self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub wall_time_ms: f64,
    pub reports: Vec<VerificationReport>,
}

impl CriterionResult {
    fn from_reports(id: u8, title: &str, started: Instant, reports: Vec<VerificationReport>) -> Self {
        let pass = reports.iter().all(|r| r.pass != Some(false));
        Self {
            id,
            title: title.to_string(),
            pass,
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            reports,
        }
    }

    /// The report with the largest `worst()` residual among failing reports,
    /// or among all reports if none fail.
    pub fn worst_report(&self) -> Option<&VerificationReport> {
        let failing: Vec<_> = self.reports.iter().filter(|r| r.pass == Some(false)).collect();
        let pool = if failing.is_empty() {
            self.reports.iter().collect()
        } else {
            failing
        };
        pool.into_iter().max_by(|a, b| a.worst().total_cmp(&b.worst()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    /// Every residual in run order as `(check/group/name, bits)`.
    pub fn residual_bits(&self) -> Vec<(String, u64)> {
        let mut out = Vec::new();
        for c in &self.criteria {
            for r in &c.reports {
                for res in &r.residuals {
                    out.push((
                        format!("{}:{}:{}:{}", c.id, r.check, r.group, res.name),
                        res.max_abs.to_bits(),
                    ));
                }
            }
        }
        out
    }

    pub fn criterion(&self, id: u8) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }
}

pub fn criterion_identities(cfg: &SuiteConfig) -> Result<CriterionResult> {
    let t = Instant::now();
    let reports = (2..=10)
        .map(|n| verify_matrix_identities(n, cfg.tol(IDENTITY_TOL)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionResult::from_reports(1, "matrix identities, 2 ≤ n ≤ 10", t, reports))
}

fn lemma_reports(cfg: &SuiteConfig, tag: u64, groups: &[GroupId]) -> Result<Vec<VerificationReport>> {
    groups
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let basis = compact_basis(g)?;
            let mut rng = cfg.rng(tag * 100 + k as u64);
            let samples = sample_from_basis(&basis, cfg.samples(LEMMA_SAMPLES), cfg.radius, &mut rng);
            verify_coordinate_lemmas(g, &basis, &samples, cfg.tol(LEMMA_TOL))
        })
        .collect()
}

pub fn criterion_orthogonal_lemma(cfg: &SuiteConfig) -> Result<CriterionResult> {
    let t = Instant::now();
    let groups: Vec<_> = (2..=6).map(|n| GroupId::So { n }).collect();
    let reports = lemma_reports(cfg, 2, &groups)?;
    Ok(CriterionResult::from_reports(2, "coordinate formulas on SO(n), 2 ≤ n ≤ 6", t, reports))
}

pub fn criterion_unitary_lemma(cfg: &SuiteConfig) -> Result<CriterionResult> {
    let t = Instant::now();
    let groups: Vec<_> = (2..=4).map(|n| GroupId::U { n }).collect();
    let reports = lemma_reports(cfg, 3, &groups)?;
    Ok(CriterionResult::from_reports(3, "coordinate formulas on U(n), 2 ≤ n ≤ 4", t, reports))
}

pub fn criterion_quaternionic_lemma(cfg: &SuiteConfig) -> Result<CriterionResult> {
    let t = Instant::now();
    let groups: Vec<_> = (1..=3).map(|n| GroupId::Sp { n }).collect();
    let reports = lemma_reports(cfg, 4, &groups)?;
    Ok(CriterionResult::from_reports(4, "coordinate formulas on Sp(n), 1 ≤ n ≤ 3", t, reports))
}

/// The eigenfamilies exercised by the family, factory and quotient checks:
/// isotropic-subspace families on SO(4..6), ten deformed isotropic-vector
/// families on SO(4), unitary families on U(2), U(3), SU(2), SU(3) and
/// quaternionic families on Sp(1), Sp(2). Vectors are drawn from `cfg`.
pub fn standard_families(cfg: &SuiteConfig) -> Result<Vec<Eigenfamily>> {
    let mut rng = cfg.rng(5);
    let mut out = Vec::new();
    for n in 4..=6 {
        let p = rng.unit_vector(n);
        out.push(so_family_v(n, &p, &maximal_isotropic_subspace(n))?);
    }
    for _ in 0..DEFORMATIONS {
        let (z, w) = (rng.unit_disc(), rng.unit_disc());
        out.push(so_family_special(4, &so4_deformation(z, w))?);
    }
    for n in 2..=3 {
        let p = rng.unit_vector(n);
        out.push(u_family(n, &p)?);
    }
    for n in 2..=3 {
        let p = rng.unit_vector(n);
        out.push(su_family(n, &p)?);
    }
    for n in 1..=2 {
        let p = rng.unit_vector(n);
        out.push(sp_family(n, &p)?);
    }
    Ok(out)
}

pub fn criterion_eigenfamilies(cfg: &SuiteConfig) -> Result<CriterionResult> {
    let t = Instant::now();
    let mut reports = Vec::new();
    for (k, fam) in standard_families(cfg)?.iter().enumerate() {
        let basis = compact_basis(fam.group)?;
        let mut rng = cfg.rng(500 + k as u64);
        let samples = sample_from_basis(&basis, cfg.samples(FAMILY_SAMPLES), cfg.radius, &mut rng);
        reports.push(verify_eigenfamily(fam, &basis, &samples, cfg.tol(FAMILY_TOL))?);
    }
    let sp1 = constants(GroupId::Sp { n: 1 }).expect("Sp constants");
    let su2 = constants(GroupId::Su { n: 2 }).expect("SU constants");
    let expected = (C64::new(-1.5, 0.0), C64::new(-0.5, 0.0));
    let gap = |a: (C64, C64), b: (C64, C64)| nan_max((a.0 - b.0).norm(), (a.1 - b.1).norm());
    reports.push(
        ReportBuilder::new("constants_cross_check", "Sp(1) / SU(2)")
            .residual("sp1_vs_su2", gap(sp1, su2), cfg.tol(IDENTITY_TOL))
            .residual("sp1_vs_expected", gap(sp1, expected), cfg.tol(IDENTITY_TOL))
            .finish(),
    );
    Ok(CriterionResult::from_reports(5, "eigenfamilies on SO, U, SU, Sp", t, reports))
}

/// One random `P/Q` over a standard family with its in-domain samples.
#[derive(Clone, Debug)]
pub struct FactoryInstance {
    pub morphism: RationalMorphism,
    pub samples: Vec<ComplexMatrix>,
    pub rejected: usize,
}

/// `FACTORY_PAIRS` random morphisms per standard family, degrees cycling
/// through `1..=FACTORY_MAX_DEGREE`.
pub fn factory_instances(cfg: &SuiteConfig) -> Result<Vec<(Eigenfamily, Vec<FactoryInstance>)>> {
    let families = standard_families(cfg)?;
    let mut out = Vec::with_capacity(families.len());
    for (k, fam) in families.into_iter().enumerate() {
        let basis = compact_basis(fam.group)?;
        let mut rng = cfg.rng(600 + k as u64);
        let mut instances = Vec::with_capacity(FACTORY_PAIRS);
        for j in 0..FACTORY_PAIRS {
            let degree = 1 + (j as u32 % FACTORY_MAX_DEGREE);
            let pilot = sample_from_basis(&basis, FACTORY_PILOT, cfg.radius, &mut rng);
            let morphism = random_morphism(&fam, degree, FACTORY_FLOOR, &mut rng)?.normalized_on(&pilot)?;
            let (samples, rejected) = select_in_domain(
                &morphism.expr(),
                &basis,
                cfg.samples(FACTORY_SAMPLES),
                cfg.radius,
                &mut rng,
            )?;
            instances.push(FactoryInstance {
                morphism,
                samples,
                rejected,
            });
        }
        out.push((fam, instances));
    }
    Ok(out)
}

fn factory_reports(
    cfg: &SuiteConfig,
    instances: &[(Eigenfamily, Vec<FactoryInstance>)],
) -> Result<Vec<VerificationReport>> {
    let required = cfg.samples(FACTORY_SAMPLES);
    let mut reports = Vec::new();
    for (fam, list) in instances {
        let basis = compact_basis(fam.group)?;
        for inst in list {
            let tol = cfg.tol(FACTORY_TOL);
            let mut r = match verify_harmonic_morphism(&inst.morphism, &basis, &inst.samples, tol) {
                Err(Error::Inconclusive { discarded }) => ReportBuilder::new("harmonic_morphism", fam.group.to_string())
                    .param("inconclusive", true)
                    .samples(0, discarded)
                    .finish(),
                other => other?,
            };
            r.samples_discarded += inst.rejected;
            let shortfall = required.saturating_sub(r.samples_used) as f64;
            r.residuals.push(Residual {
                name: "in_domain_shortfall".into(),
                max_abs: shortfall,
                tol: 0.5,
            });
            r.pass = Some(r.residuals.iter().all(Residual::passes));
            reports.push(r);
        }
    }
    Ok(reports)
}

fn hopf_report(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let fam = su_family(2, &[ONE, ZERO])?;
    let m = quotient_morphism(
        &fam,
        Polynomial::variable(0, 2),
        Polynomial::variable(1, 2),
        HOPF_FLOOR,
    )?;
    let basis = compact_basis(GroupId::Su { n: 2 })?;
    let (samples, rejected) =
        select_in_domain(&m.expr(), &basis, cfg.samples(HOPF_SAMPLES), cfg.radius, &mut cfg.rng(61))?;
    let mut r = verify_harmonic_morphism(&m, &basis, &samples, cfg.tol(HOPF_TOL))?;
    r.check = "hopf_map".into();
    r.samples_discarded += rejected;
    Ok(r)
}

/// `z_11 / 1` on U(2) must fail, with `τ` residual `2·max|z_11|`.
fn negative_control(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let g = GroupId::U { n: 2 };
    let basis = compact_basis(g)?;
    let samples = sample_from_basis(&basis, cfg.samples(FAMILY_SAMPLES), cfg.radius, &mut cfg.rng(62));
    let f = FunctionExpr::quotient(FunctionExpr::entry(0, 0), FunctionExpr::constant(ONE), DEFAULT_DOMAIN_FLOOR);
    let inner = verify_harmonic_function(&f, &basis, &samples, cfg.tol(FACTORY_TOL))?;
    let tau = inner.residual("tau").unwrap_or(f64::NAN);
    let expected = samples.iter().map(|x| 2.0 * x[(0, 0)].norm()).fold(0.0, nan_max);
    let detected = if inner.passed() { f64::INFINITY } else { 0.0 };
    Ok(ReportBuilder::new("negative_control", g.to_string())
        .param("tau_residual", tau)
        .param("expected_tau_residual", expected)
        .residual("control_not_detected", detected, 0.5)
        .residual("tau_vs_two_max_z11", (tau - expected).abs(), CONTROL_MATCH_TOL * expected.max(1.0))
        .samples(inner.samples_used, inner.samples_discarded)
        .finish())
}

pub fn criterion_factory(
    cfg: &SuiteConfig,
    instances: &[(Eigenfamily, Vec<FactoryInstance>)],
) -> Result<CriterionResult> {
    let t = Instant::now();
    let mut reports = factory_reports(cfg, instances)?;
    reports.push(hopf_report(cfg)?);
    reports.push(negative_control(cfg)?);
    Ok(CriterionResult::from_reports(6, "harmonic morphisms P/Q from eigenfamilies", t, reports))
}

/// `max |τ(φ)/φ − λ| ` and `max |κ(φ,φ)/φ² − μ|` over members and samples with `|φ| > RATIO_FLOOR`.
pub fn measured_ratio_report(
    fam: &Eigenfamily,
    basis: &SignedBasis,
    samples: &[ComplexMatrix],
    tol: f64,
) -> Result<VerificationReport> {
    let r = max_over_samples(samples, 3, |x| {
        let frame = LocalFrame::new(x, basis)?;
        let mut out = vec![0.0f64; 3];
        for f in &fam.members {
            let j = frame.jets(f)?;
            if j.value.norm() > RATIO_FLOOR {
                out[0] = nan_max(out[0], (j.tau() / j.value - fam.lambda).norm());
                out[1] = nan_max(out[1], (j.kappa(&j) / (j.value * j.value) - fam.mu).norm());
                out[2] += 1.0;
            }
        }
        Ok(out)
    })?;
    Ok(ReportBuilder::new("measured_ratios", fam.group.to_string())
        .param("members", fam.members.len())
        .param("lambda", fam.lambda)
        .param("mu", fam.mu)
        .residuals(["tau_over_phi", "kappa_over_phi_sq"], &r[..2], tol)
        .samples(samples.len(), 0)
        .finish())
}

pub fn criterion_power_and_quotients(
    cfg: &SuiteConfig,
    instances: &[(Eigenfamily, Vec<FactoryInstance>)],
) -> Result<CriterionResult> {
    let t = Instant::now();
    let mut rng = cfg.rng(7);
    let bases = [
        u_family(2, &rng.unit_vector(2))?,
        so_family_v(4, &rng.unit_vector(4), &maximal_isotropic_subspace(4))?,
    ];
    let mut reports = Vec::new();
    for (b, fam) in bases.iter().enumerate() {
        let basis = compact_basis(fam.group)?;
        for k in 2..=3 {
            let pf = power_family(fam, k)?.as_eigenfamily();
            let mut srng = cfg.rng(700 + 10 * b as u64 + k as u64);
            let samples = sample_from_basis(&basis, cfg.samples(FAMILY_SAMPLES), cfg.radius, &mut srng);
            let mut r = verify_eigenfamily(&pf, &basis, &samples, cfg.tol(POWER_TOL))?;
            r.check = format!("power_family_k{k}");
            reports.push(r);
            let mut r = measured_ratio_report(&pf, &basis, &samples, cfg.tol(POWER_TOL))?;
            r.check = format!("power_ratios_k{k}");
            reports.push(r);
        }
    }
    for (fam, list) in instances {
        let basis = compact_basis(fam.group)?;
        for inst in list {
            let m = &inst.morphism;
            reports.push(verify_quotient_condition(
                fam,
                &m.numerator,
                &m.denominator,
                &basis,
                &inst.samples,
                cfg.tol(QUOTIENT_CONDITION_TOL),
            )?);
        }
    }
    Ok(CriterionResult::from_reports(7, "power families and the quotient condition", t, reports))
}

/// The compact-side family used for each dual pair.
pub fn pair_family(compact: GroupId, rng: &mut SampleRng) -> Result<Eigenfamily> {
    match compact {
        GroupId::Su { n } => su_family(n, &rng.unit_vector(n)),
        GroupId::So { n } => so_family_v(n, &rng.unit_vector(n), &maximal_isotropic_subspace(n)),
        GroupId::Sp { n } => sp_family(n, &rng.unit_vector(n)),
        GroupId::U { n } => u_family(n, &rng.unit_vector(n)),
        other => Err(Error::Argument(format!("{other} is not compact"))),
    }
}

pub fn criterion_duality(cfg: &SuiteConfig) -> Result<CriterionResult> {
    let t = Instant::now();
    let mut reports = Vec::new();
    for (k, g) in standard_pairs().into_iter().enumerate() {
        let pair = dual_pair(g)?;
        reports.push(verify_pair_invariants(&pair));
        let fam = pair_family(pair.compact, &mut cfg.rng(800 + k as u64))?;
        let count = cfg.samples(DUAL_SAMPLES);
        let seed = cfg.seed ^ (900 + k as u64);
        let compact = compact_samples(pair.compact, count, cfg.radius, seed)?;
        let basis = compact_basis(pair.compact)?;
        reports.push(verify_eigenfamily(&fam, &basis, &compact, cfg.tol(DUAL_TOL))?);
        let samples = sample_noncompact(&pair, count, cfg.radius, seed);
        reports.push(verify_dual_eigenfamily(&pair, &fam, &samples, cfg.tol(DUAL_TOL))?);
    }
    Ok(CriterionResult::from_reports(8, "non-compact duals with negated constants", t, reports))
}

/// Criteria 1–8 in order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let instances = factory_instances(cfg)?;
    let criteria = vec![
        criterion_identities(cfg)?,
        criterion_orthogonal_lemma(cfg)?,
        criterion_unitary_lemma(cfg)?,
        criterion_quaternionic_lemma(cfg)?,
        criterion_eigenfamilies(cfg)?,
        criterion_factory(cfg, &instances)?,
        criterion_power_and_quotients(cfg, &instances)?,
        criterion_duality(cfg)?,
    ];
    Ok(SuiteReport {
        config: cfg.clone(),
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    })
}

/// Runs the suite twice, the second time on a single thread, and appends a
/// criterion comparing every residual bit for bit.
pub fn run_suite_with_determinism(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut first = run_suite(cfg)?;
    let t = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let second = pool.install(|| run_suite(cfg))?;
    let (a, b) = (first.residual_bits(), second.residual_bits());
    let mismatches = if a.len() == b.len() {
        a.iter().zip(&b).filter(|(x, y)| x != y).count()
    } else {
        a.len().max(b.len())
    };
    let report = ReportBuilder::new("determinism", "suite")
        .param("residuals_compared", a.len())
        .residual("mismatched_residuals", mismatches as f64, 0.5)
        .finish();
    first
        .criteria
        .push(CriterionResult::from_reports(9, "bit-identical residuals across runs", t, vec![report]));
    first.pass = first.criteria.iter().all(|c| c.pass);
    Ok(first)
}
