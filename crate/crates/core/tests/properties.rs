use ldescent_core::cli::case::{generate_random_case, random_enhanced, CaseBounds};
use ldescent_core::epsilon::eps_pair;
use ldescent_core::ggp::eta;
use ldescent_core::hermitian::Family;
use ldescent_core::LocalField;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(i: usize) -> LocalField {
    [LocalField::PAdic(2), LocalField::PAdic(3), LocalField::PAdic(5), LocalField::PAdic(7), LocalField::Real][i % 5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_is_symmetric_and_bimultiplicative(f in 0usize..5, a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let cl = field(f).square_classes();
        let (a, b, c) = (cl[a % cl.len()], cl[b % cl.len()], cl[c % cl.len()]);
        prop_assert_eq!(a.hilbert(b), b.hilbert(a));
        prop_assert_eq!(a.hilbert(b * c), a.hilbert(b) * a.hilbert(c));
        prop_assert!(!a.hilbert(field(f).minus_one() * a).is_minus());
    }

    #[test]
    fn eta_is_a_homomorphism(seed in any::<u64>(), fam in 0usize..5) {
        let c = generate_random_case(Family::ALL[fam], seed, &CaseBounds::default()).unwrap();
        let m = &c.model;
        let cg = c.phi.component_group(&m.alphabet);
        let z = m.ext().norm_class_group().elements;
        for &a in &z {
            for &b in &z {
                let ab = m.ext().reduce(a * b);
                prop_assert_eq!(eta(m, &c.phi, ab).unwrap(), cg.mul(eta(m, &c.phi, a).unwrap(), eta(m, &c.phi, b).unwrap()));
            }
        }
    }

    #[test]
    fn eps_is_multiplicative_in_the_second_list(seed in any::<u64>(), fam in 0usize..4, cut in 0usize..8) {
        let c = generate_random_case(Family::ALL[fam], seed, &CaseBounds::default()).unwrap();
        let m = &c.model;
        let alph = &m.alphabet;
        let (h, dim) = match c.phi.family() {
            Family::SoOdd => (Family::SoEven, 4),
            Family::SoEven => (Family::SoOdd, 3),
            Family::Sp => (Family::Mp, 4),
            _ => (Family::Sp, 2),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(psi) = random_enhanced(&mut rng, m, h, dim, None, &c.search).unwrap() else {
            return Ok(());
        };
        let list = psi.phi.summands();
        let cut = cut % (list.len() + 1);
        let (l, r) = list.split_at(cut);
        for &(s, _) in c.phi.summands().iter().filter(|(s, _)| s.duality(alph) == c.phi.kind()) {
            let whole = eps_pair(m, s, list).unwrap();
            prop_assert_eq!(whole, eps_pair(m, s, l).unwrap() * eps_pair(m, s, r).unwrap());
        }
    }

    #[test]
    fn twist_is_an_involution(seed in any::<u64>(), fam in 0usize..4) {
        let c = generate_random_case(Family::ALL[fam], seed, &CaseBounds::default()).unwrap();
        let alph = &c.model.alphabet;
        for z in c.field().square_classes() {
            prop_assert_eq!(&c.phi.twist(alph, z).unwrap().twist(alph, z).unwrap(), &c.phi);
        }
    }

    #[test]
    fn characters_round_trip_through_json(seed in any::<u64>(), fam in 0usize..5) {
        let c = generate_random_case(Family::ALL[fam], seed, &CaseBounds::default()).unwrap();
        let alph = &c.model.alphabet;
        let cg = c.phi.component_group(alph);
        for ch in cg.characters() {
            let v = cg.to_json(alph, ch);
            prop_assert!(v["chi"].is_object());
            prop_assert_eq!(cg.from_json(alph, &v).unwrap(), ch);
        }
    }
}
