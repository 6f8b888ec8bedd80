use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use lscat_core::chain::homology::{are_weakly_equivalent, chain_dims, homology_dims};
use lscat_core::chain::{dualize, dualize_map, ChainMap, Complex};
use lscat_core::engine::{Engine, EngineConfig, IndcatCertificate, Origin};
use lscat_core::instance::{domination_oracle, ChainCertificate, ChainInstance, ChainSampler};
use lscat_core::jcat::{check_j1, check_j2, check_m1m2, AxiomReport};
use lscat_core::Error;

use crate::{Cli, Command};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SupportGuard { .. } => 3,
            Error::ShapeMismatch(_)
            | Error::DimensionMismatch(_)
            | Error::InvalidComplex(_)
            | Error::InvalidChainMap(_)
            | Error::NotComposable(_)
            | Error::TargetMismatch(_)
            | Error::SourceMismatch(_)
            | Error::Precondition(_)
            | Error::Parse(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_doc<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    fs::write(path, s).map_err(|e| CliError { code: 2, message: format!("{}: {e}", path.display()) })
}

fn describe(x: &Complex) -> String {
    format!("chain {}, homology {}", chain_dims(x), homology_dims(x))
}

fn outline(cert: &ChainCertificate) -> String {
    let mut parts = Vec::new();
    let mut node = cert;
    loop {
        match node {
            IndcatCertificate::Base { .. } => {
                parts.push("base".to_string());
                return parts.join(" > ");
            }
            IndcatCertificate::Step { origin, inner, .. } => {
                parts.push(match origin {
                    Origin::GaneaLevel(k) => format!("step (ganea level {k})"),
                    Origin::Supplied => "step (supplied)".to_string(),
                });
                node = inner;
            }
        }
    }
}

struct Ctx {
    inst: ChainInstance,
    config: EngineConfig,
}

impl Ctx {
    fn engine(&self) -> Engine<'_, ChainInstance> {
        Engine::with_config(&self.inst, self.config)
    }

    fn complex(&self, path: &Path) -> Result<Complex> {
        let x: Complex = load(path)?;
        self.inst.check_support(&x)?;
        Ok(x)
    }

    fn map(&self, path: &Path) -> Result<ChainMap> {
        let f: ChainMap = load(path)?;
        self.inst.check_support(f.source())?;
        self.inst.check_support(f.target())?;
        Ok(f)
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let ctx = Ctx {
        inst: ChainInstance::default().with_support_guard(cli.support_guard),
        config: EngineConfig { max_n: cli.max_n, domination_budget: cli.budget },
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Cat { complex } => cat(&ctx, complex, out, false),
        Command::Cocat { complex } => cat(&ctx, complex, out, true),
        Command::Indcat { complex, emit_cert } => indcat(&ctx, complex, emit_cert.as_deref().or(out), false),
        Command::Indcocat { complex, emit_cert } => indcat(&ctx, complex, emit_cert.as_deref().or(out), true),
        Command::VerifyCert { cert, complex } => verify_cert(&ctx, cert, complex),
        Command::Join { f, g } => join(&ctx, f, g, out),
        Command::Ganea { complex, n } => ganea(&ctx, complex, *n, out),
        Command::Dominates { x, y } => dominates(&ctx, x, y, out),
        Command::Weq { x, y } => weq(&ctx, x, y, out),
        Command::Dualize { file } => dualize_file(&ctx, file, out),
        Command::CheckAxioms { samples, corrupt_fibrations } => {
            check_axioms(&ctx, *samples, cli.seed, *corrupt_fibrations, out)
        }
    }
}

fn cat(ctx: &Ctx, path: &Path, out: Option<&Path>, dual: bool) -> Result<Outcome> {
    let mut x = ctx.complex(path)?;
    if dual {
        x = dualize(&x);
    }
    let name = if dual { "cocat" } else { "cat" };
    let r = ctx.engine().cat_of(&x)?;
    if let Some(p) = out {
        write_doc(p, &r)?;
    }
    let mut text = String::new();
    let code = match r.value {
        Some(n) => {
            writeln!(text, "{name} = {n}").unwrap();
            let g = &r.tower.levels[n].object;
            writeln!(text, "witness: weak section of p_{n}: G_{n} -> X, G_{n} has {}", describe(g)).unwrap();
            0
        }
        None => {
            writeln!(text, "{name} > {} (no weak section up to the last level)", ctx.config.max_n).unwrap();
            1
        }
    };
    writeln!(text, "{}: {}", if dual { "dual" } else { "complex" }, describe(&x)).unwrap();
    Ok(Outcome { text, code })
}

fn indcat(ctx: &Ctx, path: &Path, emit: Option<&Path>, dual: bool) -> Result<Outcome> {
    let mut x = ctx.complex(path)?;
    if dual {
        x = dualize(&x);
    }
    let name = if dual { "indcocat" } else { "indcat" };
    let (value, cert) = match ctx.engine().indcat_of(&x) {
        Ok(r) => r,
        Err(Error::CatExceeded(n)) => {
            return Ok(Outcome { text: format!("{name} > {n} (no certificate up to the last level)\n"), code: 1 });
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = emit {
        write_doc(p, &cert)?;
    }
    let text = format!("{name} = {value}\ncertificate: {}\nverified: yes\n", outline(&cert));
    Ok(Outcome { text, code: 0 })
}

fn verify_cert(ctx: &Ctx, cert: &Path, complex: &Path) -> Result<Outcome> {
    let raw: serde_json::Value =
        serde_json::from_str(&read(cert)?).map_err(|e| CliError::input(format!("{}: {e}", cert.display())))?;
    let x = ctx.complex(complex)?;
    let cert = match ChainCertificate::deserialize(raw) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome { text: format!("certificate rejected: {e}\n"), code: 1 }),
    };
    Ok(match ctx.engine().verify_certificate_detailed(&cert, &x) {
        Ok(()) => Outcome { text: format!("certificate verified: indcat <= {}\n", cert.value()), code: 0 },
        Err(f) => Outcome { text: format!("certificate rejected at {}: {}\n", f.path, f.equation), code: 1 },
    })
}

fn join(ctx: &Ctx, f: &Path, g: &Path, out: Option<&Path>) -> Result<Outcome> {
    let (f, g) = (ctx.map(f)?, ctx.map(g)?);
    let j = ctx.engine().join(&f, &g)?;
    if let Some(p) = out {
        write_doc(p, &j)?;
    }
    let text = format!(
        "join: {}\nfibre E': {}\nbase: {}\n",
        describe(j.object()),
        describe(j.fibre()),
        describe(f.target())
    );
    Ok(Outcome { text, code: 0 })
}

fn ganea(ctx: &Ctx, path: &Path, n: usize, out: Option<&Path>) -> Result<Outcome> {
    let x = ctx.complex(path)?;
    let e = ctx.engine();
    let tower = e.ganea_tower(&x, n)?;
    if let Some(p) = out {
        write_doc(p, &tower)?;
    }
    let mut text = format!("base: {}\n", describe(&x));
    let mut first = None;
    for (k, level) in tower.levels.iter().enumerate() {
        let section = e.weak_section(&level.map)?.is_some();
        if section && first.is_none() {
            first = Some(k);
        }
        let mark = if section { "yes" } else { "no" };
        writeln!(text, "level {k}: {}; weak section: {mark}", describe(&level.object)).unwrap();
    }
    match first {
        Some(k) => writeln!(text, "section found at level {k}").unwrap(),
        None => writeln!(text, "no section up to level {n}").unwrap(),
    }
    Ok(Outcome { text, code: 0 })
}

fn dominates(ctx: &Ctx, x: &Path, y: &Path, out: Option<&Path>) -> Result<Outcome> {
    let (x, y) = (ctx.complex(x)?, ctx.complex(y)?);
    match ctx.engine().dominates(&x, &y)? {
        Some(w) => {
            if let Some(p) = out {
                write_doc(p, &w)?;
            }
            Ok(Outcome { text: format!("dominates: yes\nE: {}\n", describe(&w.factorization.middle)), code: 0 })
        }
        None => {
            let oracle = if domination_oracle(&x, &y) { "disagrees" } else { "agrees" };
            let text = format!(
                "dominates: no ({} candidates tried; graded homology {oracle})\nH(X) = {}, H(Y) = {}\n",
                ctx.config.domination_budget,
                homology_dims(&x),
                homology_dims(&y)
            );
            Ok(Outcome { text, code: 1 })
        }
    }
}

fn weq(ctx: &Ctx, x: &Path, y: &Path, out: Option<&Path>) -> Result<Outcome> {
    let (x, y) = (ctx.complex(x)?, ctx.complex(y)?);
    match are_weakly_equivalent(&x, &y) {
        Some(z) => {
            if let Some(p) = out {
                write_doc(p, &z)?;
            }
            let text = format!("weakly equivalent: yes\nzigzag: X <- H -> Y with H {}\n", describe(&z.middle));
            Ok(Outcome { text, code: 0 })
        }
        None => Ok(Outcome {
            text: format!("weakly equivalent: no\nH(X) = {}, H(Y) = {}\n", homology_dims(&x), homology_dims(&y)),
            code: 1,
        }),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Dual {
    Complex(Complex),
    Map(ChainMap),
}

fn dualize_file(ctx: &Ctx, path: &Path, out: Option<&Path>) -> Result<Outcome> {
    let raw = read(path)?;
    let dual = match serde_json::from_str::<Complex>(&raw) {
        Ok(x) => {
            ctx.inst.check_support(&x)?;
            Dual::Complex(dualize(&x))
        }
        Err(complex_err) => match serde_json::from_str::<ChainMap>(&raw) {
            Ok(f) => Dual::Map(dualize_map(&f)),
            Err(_) => return Err(CliError::input(format!("{}: {complex_err}", path.display()))),
        },
    };
    match out {
        Some(p) => {
            write_doc(p, &dual)?;
            Ok(Outcome { text: String::new(), code: 0 })
        }
        None => {
            let mut text = serde_json::to_string_pretty(&dual).expect("documents serialize");
            text.push('\n');
            Ok(Outcome { text, code: 0 })
        }
    }
}

fn check_axioms(ctx: &Ctx, samples: usize, seed: u64, corrupt: bool, out: Option<&Path>) -> Result<Outcome> {
    let inst = ChainInstance { corrupt_fibrations: corrupt, ..ctx.inst.clone() };
    let s = ChainSampler::default();
    let reports: Vec<AxiomReport<ChainMap>> =
        vec![check_j1(&inst, &s, samples, seed), check_j2(&inst, &s, samples, seed), check_m1m2(&inst, &s, samples, seed)];
    if let Some(p) = out {
        write_doc(p, &reports)?;
    }
    let mut text = String::new();
    for r in &reports {
        match r.failures.first() {
            None => writeln!(text, "{}: pass ({} samples, seed {})", r.axiom, r.samples, r.seed).unwrap(),
            Some(f) => writeln!(
                text,
                "{}: FAIL in {} of {} samples (seed {}); first at sample {}, replay seed {}: {}",
                r.axiom,
                r.failures.len(),
                r.samples,
                r.seed,
                f.sample_index,
                f.sample_seed,
                f.clause
            )
            .unwrap(),
        }
    }
    let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
    Ok(Outcome { text, code })
}
