use lgh::SampleRng;
use lgh::basis::compact_basis;
use lgh::duality::{degenerate_pair, dual_pair, sample_noncompact, standard_pairs, verify_dual_eigenfamily};
use lgh::families::verify_eigenfamily;
use lgh::sampling::sample_from_basis;
use lgh::suite::pair_family;
use lgh::{ComplexMatrix, GroupId};
use proptest::prelude::*;

/// Every non-compact form handled, with ambient matrix size between 2 and 6.
fn pairs_up_to_six() -> Vec<GroupId> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(GroupId::SlR { n });
    }
    for n in [2, 4, 6] {
        out.push(GroupId::SuStar { n });
        out.push(GroupId::SoStar { n });
    }
    for n in 1..=3 {
        out.push(GroupId::SpR { n });
    }
    for p in 1..6 {
        for q in 1..=(6 - p) {
            out.push(GroupId::SoPq { p, q });
            out.push(GroupId::SuPq { p, q });
            if 2 * (p + q) <= 6 {
                out.push(GroupId::SpPq { p, q });
            }
        }
    }
    out
}

#[test]
fn every_small_pair_satisfies_its_invariants() {
    for g in pairs_up_to_six() {
        let pair = dual_pair(g).unwrap_or_else(|e| panic!("{g}: {e}"));
        let inv = &pair.invariants;
        assert!((2..=6).contains(&pair.ambient_dim()), "{g}");
        assert!(inv.holds(), "{g}: {inv:?}");
        assert_eq!(inv.dim_k + inv.dim_p, pair.compact.algebra_dim(), "{g}");
        assert_eq!(pair.basis.len(), pair.compact.algebra_dim(), "{g}");
    }
}

#[test]
fn split_samples_are_real_unimodular() {
    for n in 2..=4 {
        let pair = dual_pair(GroupId::SlR { n }).unwrap();
        for x in sample_noncompact(&pair, 20, 0.5, 3) {
            assert!(x.max_imag() < 1e-10, "SL({n},R) sample has imaginary part {}", x.max_imag());
            assert!((x.det() - 1.0).norm() < 1e-9);
        }
    }
}

#[test]
fn aligned_indefinite_orthogonal_samples_keep_the_bilinear_form() {
    // the aligned algebra is inside so(n, C), so the fixed form is the identity
    for (p, q) in [(1, 2), (2, 2), (1, 4), (3, 2)] {
        let pair = dual_pair(GroupId::SoPq { p, q }).unwrap();
        let id = ComplexMatrix::identity(p + q);
        for x in sample_noncompact(&pair, 20, 0.5, 11) {
            assert!(x.matmul(&x.transpose()).max_abs_diff(&id) < 1e-9, "SO({p},{q})");
        }
    }
}

#[test]
fn zero_radius_gives_the_identity() {
    for g in standard_pairs() {
        let pair = dual_pair(g).unwrap();
        let id = ComplexMatrix::identity(pair.ambient_dim());
        assert!(sample_noncompact(&pair, 3, 0.0, 1).iter().all(|x| x.max_abs_diff(&id) == 0.0), "{g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn identity_involution_reproduces_compact_residuals(g in 0usize..5, seed in any::<u64>()) {
        let compact = [GroupId::So { n: 4 }, GroupId::U { n: 2 }, GroupId::Su { n: 3 }, GroupId::Sp { n: 1 }, GroupId::Sp { n: 2 }][g];
        let fam = pair_family(compact, &mut SampleRng::new(seed)).unwrap();
        let pair = degenerate_pair(compact).unwrap();
        prop_assert!(pair.p_basis.is_empty());
        let basis = compact_basis(compact).unwrap();
        let samples = sample_from_basis(&basis, 10, 0.5, &mut SampleRng::new(seed ^ 9));
        let direct = verify_eigenfamily(&fam, &basis, &samples, 1e-8).unwrap();
        let degenerate = verify_dual_eigenfamily(&pair, &fam, &samples, 1e-8).unwrap();
        prop_assert!(direct.passed() && degenerate.passed());
        for (a, b) in direct.residuals.iter().zip(&degenerate.residuals) {
            prop_assert!((a.max_abs - b.max_abs).abs() < 1e-12, "{}: {} vs {}", a.name, a.max_abs, b.max_abs);
        }
    }

    #[test]
    fn compact_and_dual_verdicts_agree(k in 0usize..11, seed in any::<u64>(), wrong in any::<bool>()) {
        let pair = dual_pair(standard_pairs()[k]).unwrap();
        let mut fam = pair_family(pair.compact, &mut SampleRng::new(seed)).unwrap();
        if wrong {
            fam = fam.with_constants(fam.lambda * 1.5, fam.mu);
        }
        let basis = compact_basis(pair.compact).unwrap();
        let compact = sample_from_basis(&basis, 20, 0.5, &mut SampleRng::new(seed ^ 1));
        let dual = sample_noncompact(&pair, 20, 0.5, seed ^ 2);
        let a = verify_eigenfamily(&fam, &basis, &compact, 1e-8).unwrap().passed();
        let b = verify_dual_eigenfamily(&pair, &fam, &dual, 1e-8).unwrap().passed();
        prop_assert_eq!(a, !wrong);
        prop_assert_eq!(b, !wrong);
    }
}
