//! The closed-form homology criteria against the diagrammatic decisions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lscat_core::chain::{lift_through, ChainMap};
use lscat_core::engine::Engine;
use lscat_core::instance::{
    cat_oracle, domination_oracle, weak_section_oracle, ChainInstance, FactorizationStrategy, RandomComplexes,
};
use lscat_core::jcat::StructuredCategory;

const SAMPLES: usize = 60;

#[test]
fn weak_section_agrees_with_homology_surjectivity() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let shape = RandomComplexes::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut yes, mut no) = (0, 0);
    for k in 0..SAMPLES {
        let y = shape.complex(&mut rng);
        let x = shape.complex(&mut rng);
        let g = match k % 3 {
            0 => shape.map(&mut rng, &x, &y),
            1 => shape.weq_to(&mut rng, &y),
            _ => ChainMap::zero(x, y),
        };
        let engine = e.weak_section(&g).unwrap().is_some();
        assert_eq!(engine, weak_section_oracle(&g), "{g:?}");
        if engine { yes += 1 } else { no += 1 }
    }
    assert!(yes > 5 && no > 5, "{yes} with, {no} without");
}

#[test]
fn strict_section_exists_for_surjective_fibrations() {
    let inst = ChainInstance::default();
    let shape = RandomComplexes::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..SAMPLES {
        let y = shape.complex(&mut rng);
        let g = shape.weq_to(&mut rng, &y);
        assert!(inst.is_fibration(&g) && weak_section_oracle(&g));
        assert!(lift_through(&ChainMap::identity(y), &g).unwrap().is_some());
    }
}

#[test]
fn domination_agrees_with_graded_dimensions() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let shape = RandomComplexes::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..SAMPLES {
        let (x, y) = (shape.complex(&mut rng), shape.complex(&mut rng));
        let w = e.dominates(&x, &y).unwrap();
        assert_eq!(w.is_some(), domination_oracle(&x, &y));
        if let Some(w) = w {
            assert_eq!(e.check_domination(&w, &x, &y), Ok(()));
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 5 && no > 5, "{yes} dominated, {no} not");
}

#[test]
fn cat_agrees_with_closed_form() {
    let shape = RandomComplexes::default();
    for strategy in [FactorizationStrategy::Standard, FactorizationStrategy::Detour] {
        let inst = ChainInstance::default().with_strategy(strategy);
        let e = Engine::new(&inst);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..SAMPLES {
            let x = shape.complex(&mut rng);
            assert_eq!(e.cat_of(&x).unwrap().value, Some(cat_oracle(&x)));
        }
    }
}
