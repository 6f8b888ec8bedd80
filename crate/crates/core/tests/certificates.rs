use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lscat_core::chain::{direct_sum, ChainMap, Complex};
use lscat_core::engine::{Engine, IndcatCertificate, Origin};
use lscat_core::instance::{ChainCertificate, ChainInstance, RandomComplexes};

fn complexes(seed: u64, count: usize) -> Vec<Complex> {
    let shape = RandomComplexes::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| shape.complex(&mut rng)).collect()
}

#[test]
fn indcat_equals_cat_on_random_complexes() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let start = std::time::Instant::now();
    for x in complexes(11, 40) {
        let cat = e.cat_of(&x).unwrap().value.unwrap();
        let cert = e.canonical_certificate(&x).unwrap();
        assert_eq!(cert.value(), cat);
        assert_eq!(e.verify_certificate_detailed(&cert, &x), Ok(()));
    }
    eprintln!("40 certificates in {:?}", start.elapsed());
}

#[test]
fn canonical_shapes() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let (v, cert) = e.indcat_of(&Complex::disc(2)).unwrap();
    assert_eq!(v, 0);
    assert!(matches!(cert, IndcatCertificate::Base { .. }));
    let (v, cert) = e.indcat_of(&Complex::sphere(2)).unwrap();
    assert_eq!(v, 1);
    assert!(matches!(cert, IndcatCertificate::Step { origin: Origin::GaneaLevel(1), .. }));
}

#[test]
fn value_zero_claim_for_sphere_is_rejected() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let base = e.canonical_certificate(&Complex::zero()).unwrap();
    let IndcatCertificate::Base { witness, .. } = base else { panic!("zero complex has a base certificate") };
    let forged: ChainCertificate = IndcatCertificate::Base { target: Complex::sphere(2), witness };
    let failure = e.verify_certificate_detailed(&forged, &Complex::sphere(2)).unwrap_err();
    assert_eq!(failure.path, "base");
}

#[test]
fn wrong_target_and_broken_cofibre_are_rejected() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let x = Complex::sphere(1);
    let cert = e.canonical_certificate(&x).unwrap();
    assert!(!e.verify_certificate(&cert, &Complex::sphere(2)));
    let mut broken = cert.clone();
    if let IndcatCertificate::Step { cofibre, .. } = &mut broken {
        cofibre.pushout.in_g = cofibre.pushout.in_g.scale(&lscat_core::linalg::Rational::from_int(3));
    }
    let failure = e.verify_certificate_detailed(&broken, &x).unwrap_err();
    assert_eq!(failure.equation, "C is the pushout of k and f");
}

/// Certificates built by hand from a chosen cofibre sequence.
fn supplied(e: &Engine<'_, ChainInstance>, f: &ChainMap, x: &Complex, inner: ChainCertificate) -> Option<ChainCertificate> {
    let cofibre = e.cofibre_sequence(f).unwrap();
    let domination = e.dominates(cofibre.object(), x).unwrap()?;
    Some(IndcatCertificate::Step { target: x.clone(), origin: Origin::Supplied, cofibre, domination, inner: Box::new(inner) })
}

#[test]
fn synthesis_from_supplied_and_adversarial_certificates() {
    let inst = ChainInstance::default();
    let e = Engine::new(&inst);
    let mut certs: Vec<(Complex, ChainCertificate)> = Vec::new();
    // Cofibres of spheres into acyclics.
    for n in -1..=2 {
        let y = Complex::disc(n + 1);
        let f = ChainMap::zero(Complex::sphere(n), y.clone());
        let x = Complex::sphere(n + 1);
        let inner = e.canonical_certificate(&y).unwrap();
        certs.push((x.clone(), supplied(&e, &f, &x, inner).unwrap()));
    }
    // Non-minimal levels.
    for x in [Complex::zero(), Complex::disc(1), Complex::sphere(0), direct_sum(&Complex::sphere(0), &Complex::sphere(2))] {
        for k in 1..=2 {
            certs.push((x.clone(), e.certificate_at_level(&x, k).unwrap()));
        }
    }
    for (x, cert) in &certs {
        assert_eq!(e.verify_certificate_detailed(cert, x), Ok(()));
        let s = e.synthesize_from_certificate(cert).unwrap();
        assert!(s.p_n.after(&s.sigma).unwrap().is_identity());
        assert_eq!(s.matches_canonical, Some(true));
        let n = cert.value();
        assert!(e.cat_of(s.cofibre.object()).unwrap().value.unwrap() <= n);
        assert!(e.cat_of(x).unwrap().value.unwrap() <= n);
    }
}
