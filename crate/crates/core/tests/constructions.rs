use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lscat_core::chain::homology::{homology_dims, is_quasi_iso};
use lscat_core::chain::{
    cocylinder_factor, cocylinder_map, cylinder_factor, cylinder_map, dualize, dualize_map, pullback, pullback_mediator,
    pushout, pushout_mediator, ChainMap, Complex,
};
use lscat_core::instance::RandomComplexes;

fn sample(seed: u64) -> (ChaCha8Rng, RandomComplexes) {
    (ChaCha8Rng::seed_from_u64(seed), RandomComplexes::narrow(-2, 3, 2))
}

fn random_map(seed: u64) -> ChainMap {
    let (mut rng, shape) = sample(seed);
    let (x, y) = (shape.complex(&mut rng), shape.complex(&mut rng));
    shape.map(&mut rng, &x, &y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cylinder_is_a_c_factorization(seed in any::<u64>()) {
        let f = random_map(seed);
        let fact = cylinder_factor(&f).unwrap();
        prop_assert!(fact.first.is_injective());
        prop_assert!(is_quasi_iso(&fact.second));
        prop_assert_eq!(fact.second.after(&fact.first).unwrap(), f);
    }

    #[test]
    fn cocylinder_is_an_f_factorization(seed in any::<u64>()) {
        let f = random_map(seed);
        let fact = cocylinder_factor(&f).unwrap();
        prop_assert!(fact.second.is_surjective());
        prop_assert!(is_quasi_iso(&fact.first));
        prop_assert_eq!(fact.second.after(&fact.first).unwrap(), f);
    }

    #[test]
    fn factorizations_are_functorial(seed in any::<u64>()) {
        let f = random_map(seed);
        let x = f.source().clone();
        let y = f.target().clone();
        let id = |c: &Complex| ChainMap::identity(c.clone());
        let cyl = cylinder_map(&f, &f, &id(&x), &id(&y)).unwrap();
        prop_assert!(cyl.is_identity());
        let cocyl = cocylinder_map(&f, &f, &id(&x), &id(&y)).unwrap();
        prop_assert!(cocyl.is_identity());
        // Scaling both ends by 2 gives the degreewise block map.
        let two = lscat_core::linalg::Rational::from_int(2);
        let m = cylinder_map(&f, &f, &id(&x).scale(&two), &id(&y).scale(&two)).unwrap();
        let fact = cylinder_factor(&f).unwrap();
        prop_assert_eq!(m.after(&fact.first).unwrap(), fact.first.after(&id(&x).scale(&two)).unwrap());
    }

    #[test]
    fn pullback_along_surjection(seed in any::<u64>()) {
        let (mut rng, shape) = sample(seed);
        let f = random_map(seed.wrapping_add(1));
        let e = shape.complex(&mut rng);
        let p = cocylinder_factor(&shape.map(&mut rng, &e, f.target())).unwrap().second;
        let pb = pullback(&f, &p).unwrap();
        prop_assert_eq!(f.after(&pb.pr_f).unwrap(), p.after(&pb.pr_p).unwrap());
        prop_assert!(pb.pr_f.is_surjective());
        let m = pullback_mediator(&pb, &pb.pr_f, &pb.pr_p).unwrap().unwrap();
        prop_assert!(m.is_identity());
    }

    #[test]
    fn pushout_along_injection(seed in any::<u64>()) {
        let (mut rng, shape) = sample(seed);
        let g = random_map(seed.wrapping_add(1));
        let z = shape.complex(&mut rng);
        let i = cylinder_factor(&shape.map(&mut rng, g.source(), &z)).unwrap().first;
        let po = pushout(&i, &g).unwrap();
        prop_assert_eq!(po.in_i.after(&i).unwrap(), po.in_g.after(&g).unwrap());
        prop_assert!(po.in_g.is_injective());
        let m = pushout_mediator(&po, &po.in_i, &po.in_g).unwrap().unwrap();
        prop_assert!(m.is_identity());
    }

    #[test]
    fn dualization_is_an_involution(seed in any::<u64>()) {
        let f = random_map(seed);
        prop_assert_eq!(dualize(&dualize(f.source())), f.source().clone());
        prop_assert_eq!(dualize_map(&dualize_map(&f)), f.clone());
        let h = homology_dims(f.source());
        let hd = homology_dims(&dualize(f.source()));
        prop_assert!(h.iter().all(|(n, d)| hd.get(-n) == d));
    }
}

#[test]
fn mediator_absent_when_legs_disagree() {
    let s = Complex::sphere(0);
    let id = ChainMap::identity(s.clone());
    let pb = pullback(&id, &id).unwrap();
    let two = id.scale(&lscat_core::linalg::Rational::from_int(2));
    assert!(pullback_mediator(&pb, &id, &two).unwrap().is_none());
    let po = pushout(&id, &id).unwrap();
    assert!(pushout_mediator(&po, &id, &two).unwrap().is_none());
}
