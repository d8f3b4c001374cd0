//! Entry points behind each command-line subcommand.

use crate::basis::compact_basis;
use crate::config::RunConfig;
use crate::duality::{
    dual_pair, probe_noncontinuable, sample_noncompact, verify_dual_eigenfamily,
    verify_pair_invariants,
};
use crate::error::{Error, Result};
use crate::families::{verify_coordinate_lemmas, verify_eigenfamily};
use crate::group::GroupId;
use crate::identities::verify_matrix_identities;
use crate::matrix::ComplexMatrix;
use crate::morphisms::{quotient_morphism, select_in_domain, verify_harmonic_morphism};
use crate::report::VerificationReport;
use crate::sampling::{sample_from_basis, SampleRng};

/// Tolerance for the exact matrix identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// `count` seeded samples of a compact group.
pub fn compact_samples(group: GroupId, count: usize, radius: f64, seed: u64) -> Result<Vec<ComplexMatrix>> {
    let basis = compact_basis(group)?;
    Ok(sample_from_basis(&basis, count, radius, &mut SampleRng::new(seed)))
}

pub fn run_identities(n: usize, tol: f64) -> Result<VerificationReport> {
    verify_matrix_identities(n, tol)
}

pub fn run_lemma(group: GroupId, cfg: &RunConfig) -> Result<VerificationReport> {
    let basis = compact_basis(group)?;
    let samples = sample_from_basis(&basis, cfg.samples, cfg.radius, &mut SampleRng::new(cfg.seed));
    let mut r = verify_coordinate_lemmas(group, &basis, &samples, cfg.tol)?;
    echo_run(&mut r, cfg);
    Ok(r)
}

pub fn run_family(cfg: &RunConfig) -> Result<VerificationReport> {
    let fam = cfg.require_family()?;
    let basis = compact_basis(fam.group)?;
    let samples = sample_from_basis(&basis, cfg.samples, cfg.radius, &mut SampleRng::new(cfg.seed));
    let mut r = verify_eigenfamily(&fam, &basis, &samples, cfg.tol)?;
    echo_run(&mut r, cfg);
    Ok(r)
}

/// Draws `samples` in-domain points (with bounded oversampling) and checks
/// that `P/Q` is harmonic and horizontally conformal.
pub fn run_morphism(cfg: &RunConfig) -> Result<VerificationReport> {
    let fam = cfg.require_family()?;
    let spec = cfg.require_morphism()?;
    let m = quotient_morphism(&fam, spec.p.clone(), spec.q.clone(), spec.floor)
        .map_err(|e| Error::Config(format!("field `morphism`: {e}")))?;
    let basis = compact_basis(fam.group)?;
    let (samples, rejected) =
        select_in_domain(&m.expr(), &basis, cfg.samples, cfg.radius, &mut SampleRng::new(cfg.seed))?;
    if samples.is_empty() {
        return Err(Error::Inconclusive { discarded: rejected });
    }
    let mut r = verify_harmonic_morphism(&m, &basis, &samples, cfg.tol)?;
    r.samples_discarded += rejected;
    echo_run(&mut r, cfg);
    Ok(r)
}

/// Pair invariants, the family on the compact side, and the family with
/// negated constants on the dual side.
pub fn run_duality(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let pair = dual_pair(cfg.require_pair()?)?;
    let fam = cfg.require_family()?;
    let compact = compact_samples(fam.group, cfg.samples, cfg.radius, cfg.seed)?;
    let basis = compact_basis(fam.group)?;
    let mut compact_report = verify_eigenfamily(&fam, &basis, &compact, cfg.tol)?;
    let samples = sample_noncompact(&pair, cfg.samples, cfg.radius, cfg.seed);
    let mut dual_report = verify_dual_eigenfamily(&pair, &fam, &samples, cfg.tol)?;
    echo_run(&mut compact_report, cfg);
    echo_run(&mut dual_report, cfg);
    Ok(vec![verify_pair_invariants(&pair), compact_report, dual_report])
}

pub fn run_probe(cfg: &RunConfig) -> Result<VerificationReport> {
    let pair = dual_pair(cfg.require_pair()?)?;
    let fam = cfg.require_family()?;
    let samples = sample_noncompact(&pair, cfg.samples, cfg.radius, cfg.seed);
    let mut r = probe_noncontinuable(&pair, &fam, &samples)?;
    echo_run(&mut r, cfg);
    Ok(r)
}

fn echo_run(r: &mut VerificationReport, cfg: &RunConfig) {
    if let serde_json::Value::Object(p) = &mut r.params {
        p.insert("seed".into(), cfg.seed.into());
        p.insert("radius".into(), cfg.radius.into());
        p.insert("tol".into(), cfg.tol.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::FamilySpec;
    use crate::matrix::{I, ONE, ZERO};

    #[test]
    fn lemma_run_echoes_parameters() {
        let cfg = RunConfig { samples: 10, seed: 7, ..RunConfig::default() };
        let r = run_lemma(GroupId::So { n: 3 }, &cfg).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["seed"], 7);
        assert_eq!(r.samples_used, 10);
    }

    #[test]
    fn duality_run_produces_three_reports() {
        let cfg = RunConfig {
            samples: 10,
            pair: Some(GroupId::SoPq { p: 1, q: 2 }),
            family: Some(FamilySpec::IsotropicSubspace { n: 3, p: vec![ONE, I, ONE], v: None }),
            ..RunConfig::default()
        };
        let rs = run_duality(&cfg).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(VerificationReport::passed), "{rs:#?}");
    }

    #[test]
    fn missing_blocks_are_config_errors() {
        assert!(matches!(run_family(&RunConfig::default()), Err(Error::Config(_))));
        let cfg = RunConfig {
            family: Some(FamilySpec::Unitary { n: 2, p: vec![ONE, ZERO] }),
            ..RunConfig::default()
        };
        assert!(matches!(run_morphism(&cfg), Err(Error::Config(m)) if m.contains("morphism")));
        assert!(matches!(run_probe(&cfg), Err(Error::Config(m)) if m.contains("pair")));
    }
}
