use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};

use opcalc::axioms::AxiomReport;
use opcalc::collections::{circ, circ_orbitwise, Collection};
use opcalc::format::{self, character_table, Object};
use opcalc::free::{free_operad, reduced_free_operad};
use opcalc::hopf::{
    check_hopf_map, coalgebra_convolution_module, multiplicative_z2, path_chain_check, reduced_convolution, Chain,
    ConvolutionOperad, HopfObject,
};
use opcalc::linalg::{Matrix, SparseVec, Q};
use opcalc::modalg::schur_functor;
use opcalc::operads::{com_operad, sigma_split_verify, Operad, OperadMorphism};
use opcalc::oracles::{egf_compose, fixed_point_character, species_circ, FormalSeries, SetSpeciesCollection};
use opcalc::oracles::species::SpeciesArity;
use opcalc::{Error, Result};

/// Exact computations with symmetric collections, operads, modules and
/// convolution operads.
#[derive(Parser)]
#[command(name = "opcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Circle product A ∘ X with dimension and character tables.
    Circ {
        a: String,
        x: String,
        #[arg(long)]
        max_arity: usize,
        /// Sum over orbits of block compositions instead of coinvariants.
        #[arg(long)]
        orbitwise: bool,
        /// List basis labels.
        #[arg(long)]
        labels: bool,
    },
    /// Check the operad axioms.
    CheckOperad { operad: String },
    /// Free operad on a collection of generators.
    Free {
        generators: String,
        #[arg(long)]
        max_arity: usize,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Free algebra on a vector space of the given dimension.
    Schur {
        operad: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_arity: usize,
    },
    /// Check the left module axioms.
    CheckModule { module: String },
    /// Convolution operad P^{TH}, or its reduced version along P -> Com.
    Convolve {
        operad: String,
        hopf: String,
        #[arg(long)]
        reduced_along: Option<String>,
    },
    /// Algebraic identities of the path-object chain.
    PathChain {
        operad: String,
        hopf: String,
        #[arg(long)]
        reduced: bool,
        /// Augmentation P -> Com for the reduced chain; defaults to sending
        /// every basis vector to 1.
        #[arg(long)]
        augmentation: Option<String>,
        /// Images `a,b` of 0 and 1 under I[{0,1}] -> H, as labels of H.
        #[arg(long)]
        interval_map: Option<String>,
    },
    /// Coalgebra convolution module M^B over Q ⊙ P.
    CoalgConv { q: String, b: String, p: String, m: String },
    /// Compare the circle product with an independent engine.
    OracleCompare {
        a: String,
        x: String,
        #[arg(long)]
        max_arity: usize,
        #[arg(long, value_enum)]
        mode: OracleMode,
    },
    /// Verify a retraction P -> P ∧ Ass -> P.
    SigmaSplit { operad: String, iota: String, rho: String },
    /// Print the canonical manifest of a reference.
    Emit { reference: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Species,
    Egf,
}

struct Report {
    lines: Vec<String>,
    passed: bool,
}

impl Report {
    fn new(echo: &str) -> Self {
        Report { lines: vec![format!("command: {echo}")], passed: true }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn dims(&mut self, label: &str, dims: &[usize]) {
        let d: Vec<String> = dims.iter().map(|x| x.to_string()).collect();
        self.line(format!("{label}: {}", d.join(" ")));
    }

    fn collection(&mut self, c: &Collection) {
        self.dims("dims", &c.dims());
        self.line("characters:");
        for l in character_table(c) {
            self.line(format!("  {l}"));
        }
    }

    fn checks(&mut self, r: &AxiomReport) {
        self.line("checks:");
        for o in &r.outcomes {
            match &o.failure {
                None => self.line(format!("  {}: pass ({} instances)", o.family, o.instances)),
                Some(msg) => self.line(format!("  {}: FAIL {msg}", o.family)),
            }
        }
        self.passed &= r.passed();
    }

    fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push_str(&format!("\nresult: {}\n", if self.passed { "pass" } else { "fail" }));
        out
    }
}

fn load(reference: &str) -> Result<Object> {
    format::resolve(reference, Some(&PathBuf::from("."))).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Manifest(format!("{reference}:{line}:{column}: {message}")),
        other => other,
    })
}

fn operad_dims(p: &Operad) -> Vec<usize> {
    p.collection().dims()
}

fn default_interval_map(h: &HopfObject) -> Result<Matrix> {
    let interval = multiplicative_z2();
    let d = h.dim();
    let mut found = None;
    for x0 in 0..d {
        for x1 in 0..d {
            let j = Matrix::from_columns(d, vec![SparseVec::unit(x0), SparseVec::unit(x1)]);
            if check_hopf_map(&j, &interval, h).passed() && (found.is_none() || x0 != x1) {
                let better = x0 != x1;
                found = Some(j);
                if better {
                    return Ok(found.unwrap());
                }
            }
        }
    }
    found.ok_or_else(|| Error::InvalidHopf("no bialgebra map from I[{0,1}] on basis elements".into()))
}

fn parse_interval_map(h: &HopfObject, spec: &str) -> Result<Matrix> {
    let labels: Vec<&str> = spec.split(',').map(str::trim).collect();
    let idx = |l: &str| {
        h.labels().iter().position(|x| x == l).ok_or_else(|| Error::Manifest(format!("no element labelled `{l}`")))
    };
    match labels.as_slice() {
        [a, b] => Ok(Matrix::from_columns(h.dim(), vec![SparseVec::unit(idx(a)?), SparseVec::unit(idx(b)?)])),
        _ => Err(Error::Manifest("--interval-map expects two labels `a,b`".into())),
    }
}

/// Every basis vector to 1 in `Com`.
fn default_augmentation(p: &Operad) -> Result<OperadMorphism> {
    let com = com_operad(p.max_arity())?;
    let alpha = OperadMorphism::from_fn(p.clone(), com, |_, _| SparseVec::unit(0))?;
    if let Some(msg) = alpha.check().first_failure() {
        return Err(Error::Precondition(format!("sending every basis vector to 1 is not an operad map ({msg}); pass --augmentation")));
    }
    Ok(alpha)
}

fn species_of(c: &Collection) -> Result<SetSpeciesCollection> {
    let arities = (0..=c.max_arity())
        .map(|n| {
            let rep = c.rep(n);
            let generators = rep
                .generators()
                .iter()
                .map(|g| {
                    (0..rep.dim())
                        .map(|j| {
                            let col = g.column(j);
                            match col.iter().collect::<Vec<_>>().as_slice() {
                                [(i, x)] if x.is_one() => Ok(*i),
                                _ => Err(Error::Precondition(format!("arity {n} is not a permutation representation"))),
                            }
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SpeciesArity { size: rep.dim(), generators })
        })
        .collect::<Result<Vec<_>>>()?;
    SetSpeciesCollection::new(arities)
}

fn run(command: &Command, report: &mut Report) -> Result<()> {
    match command {
        Command::Circ { a, x, max_arity, orbitwise, labels } => {
            let a = load(a)?.into_collection()?;
            let x = load(x)?.into_collection()?;
            let (coll, names) = if *orbitwise {
                circ_orbitwise(&a, &x, *max_arity)?
            } else {
                let c = circ(&a, &x, *max_arity)?;
                let names = (0..=*max_arity).map(|n| c.labels(n).to_vec()).collect();
                (c.into_collection(), names)
            };
            report.collection(&coll);
            if *labels {
                report.line("labels:");
                for (n, ls) in names.iter().enumerate() {
                    for (i, l) in ls.iter().enumerate() {
                        report.line(format!("  arity {n} #{}: {l}", i + 1));
                    }
                }
            }
        }
        Command::CheckOperad { operad } => {
            let p = load(operad)?.into_operad()?;
            report.collection(p.collection());
            report.checks(&p.check_axioms());
        }
        Command::Free { generators, max_arity, reduced, max_vertices } => {
            let a = load(generators)?.into_collection()?;
            let f = if *reduced {
                reduced_free_operad(&a, *max_arity, *max_vertices)?
            } else {
                free_operad(&a, *max_arity, *max_vertices)?
            };
            report.collection(f.operad.collection());
            report.line(format!("truncated: {}", if f.truncated { "yes" } else { "no" }));
            report.checks(&f.operad.check_axioms());
        }
        Command::Schur { operad, dim, max_arity } => {
            let p = load(operad)?.into_operad()?;
            let s = schur_functor(&p, *dim, *max_arity)?;
            report.dims("component dims", &s.component_dims);
            report.line(format!("total dim: {}", s.algebra.carrier_dim()));
            report.line(format!("truncated: {}", if s.algebra.is_truncated() { "yes" } else { "no" }));
            report.checks(&s.algebra.check());
        }
        Command::CheckModule { module } => {
            let m = load(module)?.into_module()?;
            report.collection(m.underlying());
            report.checks(&m.check());
        }
        Command::Convolve { operad, hopf, reduced_along } => {
            let p = load(operad)?.into_operad()?;
            let h = load(hopf)?.into_hopf()?;
            match reduced_along {
                Some(alpha) => {
                    let alpha = load(alpha)?.into_morphism()?;
                    if alpha.source() != &p {
                        return Err(Error::OperadMismatch("the augmentation does not start at the given operad".into()));
                    }
                    let r = reduced_convolution(&alpha, &h)?;
                    report.collection(r.operad().collection());
                    report.checks(&r.operad().check_axioms());
                }
                None => {
                    let c = ConvolutionOperad::new(&p, &h)?;
                    report.collection(c.operad.collection());
                    let mut checks = c.operad.check_axioms();
                    let coaug = c.coaugmentation()?.check();
                    let instances = coaug.outcomes.iter().map(|o| o.instances).sum();
                    checks.outcomes.push(opcalc::axioms::CheckOutcome {
                        family: "coaugmentation is an operad map".into(),
                        instances,
                        failure: coaug.first_failure().map(str::to_string),
                    });
                    report.checks(&checks);
                }
            }
        }
        Command::PathChain { operad, hopf, reduced, augmentation, interval_map } => {
            let p = load(operad)?.into_operad()?;
            let h = load(hopf)?.into_hopf()?;
            let j = match interval_map {
                Some(spec) => parse_interval_map(&h, spec)?,
                None => default_interval_map(&h)?,
            };
            let images: Vec<&str> = (0..2)
                .map(|c| j.column(c).iter().next().map_or("0", |(i, _)| h.labels()[i].as_str()))
                .collect();
            report.line(format!("interval map: 0 -> {}, 1 -> {}", images[0], images[1]));
            let r = if *reduced {
                let alpha = match augmentation {
                    Some(a) => load(a)?.into_morphism()?,
                    None => default_augmentation(&p)?,
                };
                path_chain_check(&p, Some(&alpha), &h, &j, Chain::Reduced)?
            } else {
                path_chain_check(&p, None, &h, &j, Chain::Unreduced)?
            };
            report.dims("dims", &operad_dims(&p));
            report.checks(&r);
        }
        Command::CoalgConv { q, b, p, m } => {
            let q = load(q)?.into_operad()?;
            let b = load(b)?.into_coalgebra()?;
            let p = load(p)?.into_operad()?;
            let m = load(m)?.into_module()?;
            if b.operad() != &q {
                return Err(Error::OperadMismatch("the coalgebra is not over Q".into()));
            }
            if m.operad() != &p {
                return Err(Error::OperadMismatch("the module is not over P".into()));
            }
            let mb = coalgebra_convolution_module(&b, &m)?;
            report.collection(mb.underlying());
            report.checks(&mb.check());
        }
        Command::OracleCompare { a, x, max_arity, mode } => {
            let a = load(a)?.into_collection()?;
            let x = load(x)?.into_collection()?;
            let linear = circ(&a, &x, *max_arity)?.into_collection();
            report.dims("linear dims", &linear.dims());
            let mut checks = AxiomReport::default();
            match mode {
                OracleMode::Species => {
                    let s = species_circ(&species_of(&a)?, &species_of(&x)?, *max_arity)?;
                    report.dims("species sizes", &s.sizes());
                    let size_fail = (0..=*max_arity).find(|&n| s.size(n) != linear.dim(n));
                    let mut failure = size_fail.map(|n| format!("arity {n}: {} structures, dimension {}", s.size(n), linear.dim(n)));
                    checks_push(&mut checks, "cardinalities", *max_arity + 1, failure.take());
                    let mut count = 0;
                    for n in 0..=*max_arity {
                        for (cls, chi) in linear.rep(n).characters_on_classes() {
                            count += 1;
                            let fixed = fixed_point_character(&s, n, &cls)?;
                            if Q::from_integer((fixed as i64).into()) != chi && failure.is_none() {
                                failure = Some(format!("arity {n}, cycle type {cls:?}: {fixed} fixed structures, character {chi}"));
                            }
                        }
                    }
                    checks_push(&mut checks, "fixed-point characters", count, failure);
                }
                OracleMode::Egf => {
                    let series = |c: &Collection| {
                        FormalSeries::from_dims(&(0..=*max_arity).map(|n| Q::from_integer((c.dim(n) as i64).into())).collect::<Vec<_>>())
                    };
                    let composed = egf_compose(&series(&a), &series(&x))?;
                    let egf: Vec<Q> = composed.dims();
                    let d: Vec<String> = egf.iter().map(|q| q.to_string()).collect();
                    report.line(format!("egf dims: {}", d.join(" ")));
                    let failure = (0..=*max_arity)
                        .find(|&n| egf.get(n).cloned().unwrap_or_else(Q::zero) != Q::from_integer((linear.dim(n) as i64).into()))
                        .map(|n| format!("arity {n}: series gives {}, dimension {}", egf[n], linear.dim(n)));
                    checks_push(&mut checks, "dimension series", *max_arity + 1, failure);
                }
            }
            report.checks(&checks);
        }
        Command::SigmaSplit { operad, iota, rho } => {
            let p = load(operad)?.into_operad()?;
            let iota = load(iota)?.into_morphism()?;
            let rho = load(rho)?.into_morphism()?;
            report.dims("dims", &operad_dims(&p));
            report.checks(&sigma_split_verify(&p, &iota, &rho)?);
        }
        Command::Emit { .. } => unreachable!("handled before reporting"),
    }
    Ok(())
}

fn checks_push(r: &mut AxiomReport, family: &str, instances: usize, failure: Option<String>) {
    r.outcomes.push(opcalc::axioms::CheckOutcome { family: family.into(), instances, failure });
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Command::Emit { reference } = &cli.command {
        return match load(reference) {
            Ok(obj) => {
                print!("{}", format::print(&obj));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let start = Instant::now();
    let mut report = Report::new(&format!("opcalc {}", args[1..].join(" ")));
    match run(&cli.command, &mut report) {
        Ok(()) => {
            print!("{}", report.render());
            println!("elapsed-ms: {}", start.elapsed().as_millis());
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
