use lscat_core::instance::{ChainInstance, ChainSampler, FactorizationStrategy, ReplacementMode};
use lscat_core::jcat::{check_j1, check_j2, check_m1m2, replay, Axiom};

const SAMPLES: usize = 40;

#[test]
fn chain_instance_satisfies_the_axioms() {
    let s = ChainSampler::default();
    for inst in [
        ChainInstance::default(),
        ChainInstance::default().with_strategy(FactorizationStrategy::Detour).with_replacement(ReplacementMode::Generic),
    ] {
        for seed in [0, 9] {
            for report in [check_j1(&inst, &s, SAMPLES, seed), check_j2(&inst, &s, SAMPLES, seed), check_m1m2(&inst, &s, SAMPLES, seed)] {
                assert!(report.passed(), "{} seed {seed}: {:?}", report.axiom, report.failures.first().map(|f| &f.clause));
                assert_eq!(report.samples, SAMPLES);
            }
        }
    }
}

#[test]
fn corrupted_fibrations_are_detected_and_replayable() {
    let s = ChainSampler::default();
    let bad = ChainInstance { corrupt_fibrations: true, ..ChainInstance::default() };
    let report = check_j2(&bad, &s, SAMPLES, 0);
    assert!(!report.passed());
    let first = &report.failures[0];
    let again = replay(Axiom::J2, &bad, &s, first).expect("failure reproduces");
    assert_eq!(&again, first);
    assert!(replay(Axiom::J2, &ChainInstance::default(), &s, first).is_none());
}

#[test]
fn reports_are_deterministic() {
    let s = ChainSampler::default();
    let bad = ChainInstance { corrupt_fibrations: true, ..ChainInstance::default() };
    let a = serde_json::to_string(&check_j2(&bad, &s, 16, 3)).unwrap();
    let b = serde_json::to_string(&check_j2(&bad, &s, 16, 3)).unwrap();
    assert_eq!(a, b);
}
