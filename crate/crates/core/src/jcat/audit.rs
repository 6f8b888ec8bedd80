//! Sampled audits of (J1), (J2), (M1) and (M2).
//!
//! Sample `k` of a run with seed `s` draws from its own generator seeded with
//! [`sample_seed`]`(s, k)`, so a failure can be replayed from the recorded
//! sample seed alone. Samples are independent and evaluated in parallel; the
//! report lists failures in sample order.

use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FactorizationKind, LiftingSquare, StructuredCategory};

/// Random data for the audits. Implementations must be deterministic in the
/// generator they are handed.
pub trait Sampler<C: StructuredCategory>: Sync {
    fn object(&self, rng: &mut ChaCha8Rng) -> C::Object;
    fn morphism(&self, rng: &mut ChaCha8Rng, source: &C::Object, target: &C::Object) -> C::Morphism;
    fn automorphism(&self, rng: &mut ChaCha8Rng, x: &C::Object) -> C::Morphism;
    /// Some weak equivalence with source `x`.
    fn weak_equivalence_from(&self, rng: &mut ChaCha8Rng, x: &C::Object) -> C::Morphism;
    /// Some weak equivalence with target `y`.
    fn weak_equivalence_to(&self, rng: &mut ChaCha8Rng, y: &C::Object) -> C::Morphism;
    /// Random `top`, `bottom` completing a commuting square with the given
    /// sides, or `None` if none could be found.
    fn lifting_square(
        &self,
        rng: &mut ChaCha8Rng,
        left: &C::Morphism,
        right: &C::Morphism,
    ) -> Option<LiftingSquare<C::Morphism>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    J1,
    J2,
    M1M2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::J1 => "J1",
            Axiom::J2 => "J2",
            Axiom::M1M2 => "M1M2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomFailure<M> {
    pub sample_index: usize,
    pub sample_seed: u64,
    pub clause: String,
    pub payload: Vec<M>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport<M> {
    pub axiom: Axiom,
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<AxiomFailure<M>>,
}

impl<M> AxiomReport<M> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Outcome<M> = Result<(), (String, Vec<M>)>;

pub fn sample_seed(seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng.next_u64()
}

fn ensure<M>(ok: bool, clause: &str, payload: impl FnOnce() -> Vec<M>) -> Outcome<M> {
    if ok {
        Ok(())
    } else {
        Err((clause.to_string(), payload()))
    }
}

macro_rules! tri {
    ($e:expr, $clause:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Err((format!("{}: {}", $clause, err), Vec::new())),
        }
    };
}

fn run_one<C, S>(axiom: Axiom, c: &C, s: &S, sample_seed: u64) -> Outcome<C::Morphism>
where
    C: StructuredCategory,
    S: Sampler<C>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    match axiom {
        Axiom::J1 => sample_j1(c, s, &mut rng),
        Axiom::J2 => sample_j2(c, s, &mut rng),
        Axiom::M1M2 => sample_m1m2(c, s, &mut rng),
    }
}

fn run<C, S>(axiom: Axiom, c: &C, s: &S, samples: usize, seed: u64) -> AxiomReport<C::Morphism>
where
    C: StructuredCategory,
    S: Sampler<C>,
{
    let failures = (0..samples)
        .into_par_iter()
        .filter_map(|k| {
            let ks = sample_seed(seed, k);
            run_one(axiom, c, s, ks).err().map(|(clause, payload)| AxiomFailure {
                sample_index: k,
                sample_seed: ks,
                clause,
                payload,
            })
        })
        .collect();
    AxiomReport { axiom, samples, seed, failures }
}

pub fn check_j1<C: StructuredCategory, S: Sampler<C>>(
    c: &C,
    s: &S,
    samples: usize,
    seed: u64,
) -> AxiomReport<C::Morphism> {
    run(Axiom::J1, c, s, samples, seed)
}

pub fn check_j2<C: StructuredCategory, S: Sampler<C>>(
    c: &C,
    s: &S,
    samples: usize,
    seed: u64,
) -> AxiomReport<C::Morphism> {
    run(Axiom::J2, c, s, samples, seed)
}

pub fn check_m1m2<C: StructuredCategory, S: Sampler<C>>(
    c: &C,
    s: &S,
    samples: usize,
    seed: u64,
) -> AxiomReport<C::Morphism> {
    run(Axiom::M1M2, c, s, samples, seed)
}

/// Re-runs the single sample recorded in a failure.
pub fn replay<C: StructuredCategory, S: Sampler<C>>(
    axiom: Axiom,
    c: &C,
    s: &S,
    failure: &AxiomFailure<C::Morphism>,
) -> Option<AxiomFailure<C::Morphism>> {
    run_one(axiom, c, s, failure.sample_seed).err().map(|(clause, payload)| AxiomFailure {
        sample_index: failure.sample_index,
        sample_seed: failure.sample_seed,
        clause,
        payload,
    })
}

fn sample_j1<C: StructuredCategory, S: Sampler<C>>(
    c: &C,
    s: &S,
    rng: &mut ChaCha8Rng,
) -> Outcome<C::Morphism> {
    let x = s.object(rng);
    for m in [s.automorphism(rng, &x), c.identity(&x)] {
        ensure(
            c.is_weq(&m) && c.is_fibration(&m) && c.is_cofibration(&m),
            "isomorphism is a trivial fibration and a trivial cofibration",
            || vec![m.clone()],
        )?;
    }

    // Composable fibrations W ->> Y ->> Z.
    let (y0, z) = (s.object(rng), s.object(rng));
    let g = s.morphism(rng, &y0, &z);
    let b = tri!(c.f_factorize(&g), "F-factorization").second;
    let w = s.object(rng);
    let h = s.morphism(rng, &w, &c.source(&b));
    let a = tri!(c.f_factorize(&h), "F-factorization").second;
    let ba = tri!(c.compose(&b, &a), "composition");
    ensure(c.is_fibration(&ba), "composite of fibrations is a fibration", || vec![a, b])?;

    // Composable cofibrations X >-> M >-> N.
    let i1 = tri!(c.c_factorize(&s.morphism(rng, &x, &y0)), "C-factorization").first;
    let k = s.morphism(rng, &c.target(&i1), &z);
    let i2 = tri!(c.c_factorize(&k), "C-factorization").first;
    let ii = tri!(c.compose(&i2, &i1), "composition");
    ensure(c.is_cofibration(&ii), "composite of cofibrations is a cofibration", || vec![i1, i2])?;

    // Two out of three.
    let f = if rng.gen_bool(0.5) {
        s.weak_equivalence_from(rng, &x)
    } else {
        let y = s.object(rng);
        s.morphism(rng, &x, &y)
    };
    let y = c.target(&f);
    let g = if rng.gen_bool(0.5) {
        s.weak_equivalence_from(rng, &y)
    } else {
        let z = s.object(rng);
        s.morphism(rng, &y, &z)
    };
    let gf = tri!(c.compose(&g, &f), "composition");
    let flags = [c.is_weq(&f), c.is_weq(&g), c.is_weq(&gf)];
    ensure(
        flags.iter().filter(|&&b| b).count() != 2,
        "two out of three weak equivalences",
        || vec![f, g],
    )
}

fn sample_j2<C: StructuredCategory, S: Sampler<C>>(
    c: &C,
    s: &S,
    rng: &mut ChaCha8Rng,
) -> Outcome<C::Morphism> {
    let zero = c.zero_object();

    // A fibration p: E ->> B, sometimes trivial, sometimes any map the
    // instance classifies as a fibration.
    let p = match rng.gen_range(0..3) {
        0 => {
            let (w, b) = (s.object(rng), s.object(rng));
            tri!(c.f_factorize(&s.morphism(rng, &w, &b)), "F-factorization").second
        }
        1 => {
            let (w, b) = (s.object(rng), s.object(rng));
            tri!(c.c_factorize(&s.morphism(rng, &w, &b)), "C-factorization").second
        }
        _ => {
            let e = s.object(rng);
            let cand = s.weak_equivalence_from(rng, &e);
            if c.is_fibration(&cand) {
                cand
            } else {
                tri!(c.f_factorize(&cand), "F-factorization").second
            }
        }
    };
    let b = c.target(&p);
    let f = match rng.gen_range(0..5) {
        0 => c.zero_morphism(&zero, &b),
        1 | 2 => s.weak_equivalence_to(rng, &b),
        _ => {
            let b2 = s.object(rng);
            s.morphism(rng, &b2, &b)
        }
    };
    let pb = tri!(c.pullback(&f, &p), "pullback");
    let lhs = tri!(c.compose(&f, &pb.pr_f), "composition");
    let rhs = tri!(c.compose(&p, &pb.pr_p), "composition");
    let payload = || vec![f.clone(), p.clone()];
    ensure(lhs == rhs, "pullback square commutes", payload)?;
    ensure(c.is_fibration(&pb.pr_f), "base extension of a fibration is a fibration", payload)?;
    if c.is_weq(&p) {
        ensure(c.is_weq(&pb.pr_f), "base extension of a trivial fibration is a weq", payload)?;
    }
    if c.is_weq(&f) {
        ensure(c.is_weq(&pb.pr_p), "base extension of a weq along a fibration is a weq", payload)?;
    }

    // A cofibration i: A >-> X, sometimes trivial.
    let a = s.object(rng);
    let i = match rng.gen_range(0..3) {
        0 => {
            let y = s.object(rng);
            tri!(c.c_factorize(&s.morphism(rng, &a, &y)), "C-factorization").first
        }
        1 => {
            let y = s.object(rng);
            tri!(c.f_factorize(&s.morphism(rng, &a, &y)), "F-factorization").first
        }
        _ => {
            let cand = s.weak_equivalence_from(rng, &a);
            if c.is_cofibration(&cand) {
                cand
            } else {
                tri!(c.c_factorize(&cand), "C-factorization").first
            }
        }
    };
    let g = match rng.gen_range(0..5) {
        0 => c.zero_morphism(&a, &zero),
        1 | 2 => s.weak_equivalence_from(rng, &a),
        _ => {
            let a2 = s.object(rng);
            s.morphism(rng, &a, &a2)
        }
    };
    let po = tri!(c.pushout(&i, &g), "pushout");
    let lhs = tri!(c.compose(&po.in_i, &i), "composition");
    let rhs = tri!(c.compose(&po.in_g, &g), "composition");
    let payload = || vec![i.clone(), g.clone()];
    ensure(lhs == rhs, "pushout square commutes", payload)?;
    ensure(c.is_cofibration(&po.in_g), "cobase extension of a cofibration is a cofibration", payload)?;
    if c.is_weq(&i) {
        ensure(c.is_weq(&po.in_g), "cobase extension of a trivial cofibration is a weq", payload)?;
    }
    if c.is_weq(&g) {
        ensure(c.is_weq(&po.in_i), "cobase extension of a weq along a cofibration is a weq", payload)?;
    }
    Ok(())
}

fn sample_m1m2<C: StructuredCategory, S: Sampler<C>>(
    c: &C,
    s: &S,
    rng: &mut ChaCha8Rng,
) -> Outcome<C::Morphism> {
    let (x, y) = (s.object(rng), s.object(rng));
    let f = s.morphism(rng, &x, &y);

    let ff = tri!(c.f_factorize(&f), "F-factorization");
    let comp = tri!(c.compose(&ff.second, &ff.first), "composition");
    let payload = || vec![f.clone()];
    ensure(ff.kind == FactorizationKind::F && comp == f, "F-factorization composes to f", payload)?;
    ensure(
        c.is_weq(&ff.first) && c.is_cofibration(&ff.first) && c.is_fibration(&ff.second),
        "F-factorization classes",
        payload,
    )?;
    let cf = tri!(c.c_factorize(&f), "C-factorization");
    let comp = tri!(c.compose(&cf.second, &cf.first), "composition");
    ensure(cf.kind == FactorizationKind::C && comp == f, "C-factorization composes to f", payload)?;
    ensure(
        c.is_cofibration(&cf.first) && c.is_fibration(&cf.second) && c.is_weq(&cf.second),
        "C-factorization classes",
        payload,
    )?;

    let square = match rng.gen_range(0..4) {
        // Trivial cofibration against a fibration.
        0 => {
            let left = ff.first.clone();
            let (w, b) = (s.object(rng), s.object(rng));
            let right = tri!(c.f_factorize(&s.morphism(rng, &w, &b)), "F-factorization").second;
            s.lifting_square(rng, &left, &right)
        }
        // Cofibration against a trivial fibration.
        1 => {
            let left = cf.first.clone();
            let (w, b) = (s.object(rng), s.object(rng));
            let right = tri!(c.c_factorize(&s.morphism(rng, &w, &b)), "C-factorization").second;
            s.lifting_square(rng, &left, &right)
        }
        // The filler must be a strict section of a trivial fibration.
        2 => {
            let right = cf.second.clone();
            let zero = c.zero_object();
            Some(LiftingSquare {
                left: c.zero_morphism(&zero, &y),
                top: c.zero_morphism(&zero, &cf.middle),
                bottom: c.identity(&y),
                right,
            })
        }
        _ => {
            let id = c.identity(&x);
            Some(LiftingSquare { left: id.clone(), right: id.clone(), top: id.clone(), bottom: id })
        }
    };
    let Some(square) = square else {
        return Err(("sampler could not complete a lifting square".into(), payload()));
    };
    let sq = || vec![square.left.clone(), square.right.clone(), square.top.clone(), square.bottom.clone()];
    let Some(h) = tri!(c.lift(&square), "lift") else {
        return Err(("lifting square has a filler".into(), sq()));
    };
    let upper = tri!(c.compose(&h, &square.left), "composition");
    let lower = tri!(c.compose(&square.right, &h), "composition");
    ensure(upper == square.top && lower == square.bottom, "filler makes both triangles commute", sq)
}
