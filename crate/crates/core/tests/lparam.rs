use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use langlands_core::fuzz::{self, FuzzConfig};
use langlands_core::lparam::{
    assemble, check_prop_7_1, classify, is_relevant, is_tempered, new_lparameter, twist, z_of, z_star_of,
    GLnLParameter, GLnStandardTriple, Mode,
};
use langlands_core::Rational;

const MODES: [Mode; 2] = [Mode::Quotient, Mode::Sub];

fn parameter() -> impl Strategy<Value = GLnLParameter> {
    any::<u64>().prop_map(|seed| fuzz::parameter(&mut ChaCha8Rng::seed_from_u64(seed), &FuzzConfig::default()))
}

fn triple() -> impl Strategy<Value = GLnStandardTriple> {
    any::<u64>().prop_map(|seed| fuzz::triple(&mut ChaCha8Rng::seed_from_u64(seed), &FuzzConfig::default()))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| Rational::new(a, b))
}

fn shifted(xs: &[Rational], by: Rational) -> Vec<Rational> {
    xs.iter().map(|x| x + by).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn tempered_iff_z_trivial(phi in parameter()) {
        prop_assert_eq!(is_tempered(&phi), z_of(&phi).is_identity());
    }

    #[test]
    fn twisting_shifts_both_invariants(phi in parameter(), beta in rational()) {
        let psi = twist(&phi, beta).unwrap();
        let (z, z_psi) = (z_of(&phi), z_of(&psi));
        prop_assert_eq!(z_psi.exponents().to_vec(), shifted(z.exponents(), beta));
        let (zs, zs_psi) = (z_star_of(&phi).unwrap(), z_star_of(&psi).unwrap());
        prop_assert_eq!(zs_psi.exponents().to_vec(), shifted(zs.exponents(), beta));
    }

    #[test]
    fn z_depends_on_the_multiset_only(phi in parameter(), seed in any::<u64>()) {
        let mut segs = phi.segments().to_vec();
        segs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let again = new_lparameter(phi.n(), phi.d(), segs).unwrap();
        prop_assert_eq!(z_of(&again), z_of(&phi));
        prop_assert_eq!(again, phi);
    }

    #[test]
    fn classification_round_trips(phi in parameter(), t in triple()) {
        for mode in MODES {
            let c = classify(&phi, mode).unwrap();
            prop_assert!(c.validate().is_ok());
            prop_assert_eq!(c.n(), phi.n());
            prop_assert_eq!(&assemble(&c, mode).unwrap(), &phi);
            let psi = assemble(&t, mode).unwrap();
            prop_assert!(is_relevant(&psi));
            prop_assert_eq!(&classify(&psi, mode).unwrap(), &t);
        }
    }

    #[test]
    fn twists_move_only_the_betas(phi in parameter(), beta in rational()) {
        let psi = twist(&phi, beta).unwrap();
        let (a, b) = (classify(&phi, Mode::Quotient).unwrap(), classify(&psi, Mode::Quotient).unwrap());
        prop_assert_eq!(b.betas(), shifted(&a.betas(), beta));
        for (x, y) in a.blocks.iter().zip(&b.blocks) {
            prop_assert_eq!((x.m, &x.tempered), (y.m, &y.tempered));
        }
    }

    #[test]
    fn component_groups_agree(phi in parameter()) {
        prop_assert!(check_prop_7_1(&phi).unwrap());
    }
}
