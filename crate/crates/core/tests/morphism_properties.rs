mod common;

use common::{c, random_family, FAMILY_KINDS};
use lgh::basis::compact_basis;
use lgh::morphisms::{mobius, random_morphism, select_in_domain, verify_harmonic_morphism, verify_quotient_condition};
use lgh::sampling::sample_from_basis;
use lgh::{RationalMorphism, SampleRng, SignedBasis};
use proptest::prelude::*;

const FLOOR: f64 = 0.1;
const PILOT: usize = 21;
const SAMPLES: usize = 50;
const TOL: f64 = 1e-7;

fn checked(m: &RationalMorphism, basis: &SignedBasis, rng: &mut SampleRng) -> Result<(), TestCaseError> {
    let pilot = sample_from_basis(basis, PILOT, 0.5, rng);
    let m = m.normalized_on(&pilot).unwrap();
    let (samples, _) = select_in_domain(&m.expr(), basis, SAMPLES, 0.5, rng).unwrap();
    prop_assert_eq!(samples.len(), SAMPLES);
    let r = verify_harmonic_morphism(&m, basis, &samples, TOL).unwrap();
    prop_assert!(r.passed(), "{:?}", r.residuals);
    let q = verify_quotient_condition(&m.family, &m.numerator, &m.denominator, basis, &samples, TOL).unwrap();
    prop_assert!(q.passed(), "{:?}", q.residuals);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_quotients_are_harmonic_morphisms(kind in 0..FAMILY_KINDS, seed in any::<u64>(), degree in 1u32..=3) {
        let mut rng = SampleRng::new(seed);
        let fam = random_family(kind, &mut rng);
        prop_assume!(fam.members.len() >= 2);
        let basis = compact_basis(fam.group).unwrap();
        let m = random_morphism(&fam, degree, FLOOR, &mut rng).unwrap();
        checked(&m, &basis, &mut rng)?;
    }

    #[test]
    fn mobius_images_stay_harmonic(
        kind in 0..FAMILY_KINDS,
        seed in any::<u64>(),
        degree in 1u32..=2,
        coeffs in prop::array::uniform8(-1.0f64..1.0),
    ) {
        let [ar, ai, br, bi, cr, ci, dr, di] = coeffs;
        let (a, b, cc, d) = (c(ar, ai), c(br, bi), c(cr, ci), c(dr, di));
        prop_assume!((a * d - b * cc).norm() > 0.1);
        let mut rng = SampleRng::new(seed);
        let fam = random_family(kind, &mut rng);
        prop_assume!(fam.members.len() >= 2);
        let basis = compact_basis(fam.group).unwrap();
        let m = random_morphism(&fam, degree, FLOOR, &mut rng).unwrap();
        let image = mobius(&m, a, b, cc, d).unwrap();
        checked(&image, &basis, &mut rng)?;
    }
}
