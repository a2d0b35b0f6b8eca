//! `qsl`: build, export and check Fock-module representations from the shell.
//!
//! Data goes to stdout (or `--output`), diagnostics to stderr.
//! Exit codes: 0 success, 1 a residual above tolerance or a failed
//! `--expect-unitary`, 2 usage or domain errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qsl_core::export::MatrixExport;
use qsl_core::oscillator::{
    adjoint_deviation, check_deformed_relations, check_equivalence, check_homomorphism, check_oscillator_relations,
    compare_realizations, fermionic_exponential_residual, Generator, OscFockSpace, OscNormalization,
    RealizationMap,
};
use qsl_core::qnum::{parse_complex, DEFAULT_TOLERANCE};
use qsl_core::rep::{
    check_gl_relations, check_lemma_identities, check_theorem1, gram_check, unitarity_check, unitary_scan,
};
use qsl_core::stats::{canonical_limit_check, mean_occupations, partition_function, SpectrumConfig};
use qsl_core::{FockBasis, GradedOperator, Jacobson, ModeSignature, Normalization, QMode, QParameter, RepContext};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "qsl", version, about = "Fock-module representations of U_q[sl(n+1|m)]")]
struct Cli {
    /// Residual tolerance used by every check.
    #[arg(long, global = true, env = "QSL_TOL", value_name = "TOL")]
    tol: Option<f64>,

    /// Write data here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the occupation basis as JSON lines.
    Basis {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Export one generator of the module as a sparse matrix.
    Matrix {
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value = "classical")]
        q: QArg,
        #[arg(long, value_enum, default_value_t = Norm::Un)]
        norm: Norm,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a relation suite and report {relation: residual} as JSON.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value = "classical")]
        q: QArg,
        /// Largest power used by the lemma suite.
        #[arg(long, default_value_t = 3)]
        r_max: u32,
        /// Exit 1 when the unitary suite finds a non-unitary module.
        #[arg(long)]
        expect_unitary: bool,
    },
    /// Sweep q = e^{iφ} and tabulate unitarity as CSV.
    UnitaryScan {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0.01)]
        phi_min: f64,
        #[arg(long, default_value_t = 3.13)]
        phi_max: f64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Exit 1 if any grid point is non-unitary.
        #[arg(long)]
        expect_unitary: bool,
    },
    /// Export the image of a generator under an oscillator realization.
    Realize {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value = "classical")]
        q: QArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Partition function of the truncated occupation space.
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u32,
        /// Single-mode energies, comma separated.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        eps: Vec<f64>,
        #[arg(long)]
        beta: f64,
        /// Also report mean occupations.
        #[arg(long)]
        mean_occ: bool,
    },
    /// Large-p residuals of the rescaled ladder operators as CSV.
    LimitCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        window: u32,
        /// One q spec per p, separated by ';'. Classical when omitted.
        #[arg(long, value_delimiter = ';')]
        q_list: Option<Vec<QArg>>,
    },
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Highest weight label: an integer, a real, or a complex `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    p: PArg,
    /// Truncation degree. Defaults to p for integer p.
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    gen: GenKind,
    #[arg(long)]
    i: usize,
    /// Second index, only for `--gen e`.
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
struct PArg(Complex64);

#[derive(Clone, Copy, Debug)]
struct QArg(QParameter);

impl std::str::FromStr for PArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_complex(s).map(PArg).map_err(|e| e.to_string())
    }
}

impl std::str::FromStr for QArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<QParameter>().map(QArg).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    #[value(name = "H")]
    H,
    #[value(name = "a+")]
    Up,
    #[value(name = "a-")]
    Down,
    #[value(name = "e")]
    E,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Norm {
    Un,
    Ortho,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Dyson,
    Hp,
    HpDeformed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Theorem1,
    Gl,
    Lemmas,
    Unitary,
    Dyson,
    Hp,
    Equivalence,
    Oscillator,
}

/// Anything that should end the run with a nonzero code.
enum Failure {
    /// Bad flags or a request outside the domain of the construction.
    Usage(String),
    /// Computation finished but a check did not pass.
    Check(String),
}

impl From<qsl_core::Error> for Failure {
    fn from(e: qsl_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, (Option<String>, Failure)>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli.tol.unwrap_or(DEFAULT_TOLERANCE);
    if !(tol.is_finite() && tol > 0.0) {
        eprintln!("error: --tol must be a positive finite number");
        return ExitCode::from(2);
    }
    let (data, failure) = match run(cli.command, tol) {
        Ok(data) => (Some(data), None),
        Err((data, f)) => (data, Some(f)),
    };
    if let Some(data) = data {
        let written = match &cli.output {
            Some(path) => std::fs::write(path, &data).map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => {
                print!("{data}");
                Ok(())
            }
        };
        if let Err(msg) = written {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Some(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn usage(msg: impl Into<String>) -> (Option<String>, Failure) {
    (None, Failure::Usage(msg.into()))
}

fn lift<T>(r: qsl_core::Result<T>) -> Result<T, (Option<String>, Failure)> {
    r.map_err(|e| (None, e.into()))
}

fn run(command: Command, tol: f64) -> Outcome {
    match command {
        Command::Basis { module } => {
            let sig = lift(ModeSignature::new(module.n, module.m))?;
            let cutoff = module.resolve_cutoff()?;
            let basis = FockBasis::enumerate(sig, module.p.0, cutoff);
            let mut out = String::new();
            for (rank, r) in basis.vectors().iter().enumerate() {
                #[derive(Serialize)]
                struct Line<'a> {
                    rank: usize,
                    r: &'a [u32],
                    #[serde(rename = "R")]
                    degree: u32,
                }
                let line = Line { rank, r: r.as_slice(), degree: r.degree() };
                out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
                out.push('\n');
            }
            Ok(out)
        }
        Command::Matrix { gen, module, q, norm, format } => {
            let g = gen.resolve()?;
            let ctx = module.context(q.0, tol, norm.into())?;
            let op = match g {
                Generator::Jacobson(j) => ctx.jg_matrix(j),
                Generator::CartanWeyl(a, b) => ctx.cw_matrix(a, b),
            };
            Ok(render(&lift(op)?, format))
        }
        Command::Realize { kind, gen, module, q, format } => {
            let g = gen.resolve()?;
            let map = module.realization(kind, q.0, tol)?;
            Ok(render(&lift(map.realize(g))?, format))
        }
        Command::Verify { suite, module, q, r_max, expect_unitary } => {
            if expect_unitary && !matches!(suite, Suite::Unitary) {
                return Err(usage("--expect-unitary only applies to --suite unitary"));
            }
            verify(suite, &module, q.0, tol, r_max, expect_unitary)
        }
        Command::UnitaryScan { p, steps, phi_min, phi_max, n, m, expect_unitary } => {
            if steps == 0 {
                return Err(usage("--steps must be at least 1"));
            }
            if !(phi_min.is_finite() && phi_max.is_finite()) || phi_min > phi_max {
                return Err(usage("need finite --phi-min <= --phi-max"));
            }
            let sig = lift(ModeSignature::new(n, m))?;
            let grid: Vec<f64> = if steps == 1 {
                vec![phi_min]
            } else {
                let h = (phi_max - phi_min) / (steps - 1) as f64;
                (0..steps).map(|k| phi_min + h * k as f64).collect()
            };
            let rows = lift(unitary_scan(sig, p, &grid))?;
            let mut out = String::from("phi,min_bracket,unitary\n");
            for row in &rows {
                writeln!(out, "{},{},{}", row.phi, row.min_bracket, row.unitary).unwrap();
            }
            if expect_unitary {
                if let Some(bad) = rows.iter().find(|r| !r.unitary) {
                    let msg = format!("module is not unitary at phi = {}", bad.phi);
                    return Err((Some(out), Failure::Check(msg)));
                }
            }
            Ok(out)
        }
        Command::Partition { n, m, p, eps, beta, mean_occ } => {
            let sig = lift(ModeSignature::new(n, m))?;
            let cfg = lift(SpectrumConfig::new(&sig, eps, beta))?;
            #[derive(Serialize)]
            struct Out {
                #[serde(rename = "Z")]
                z: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                mean_occ: Option<Vec<f64>>,
            }
            let z = lift(partition_function(sig, p, &cfg))?;
            let mean_occ = if mean_occ { Some(lift(mean_occupations(sig, p, &cfg))?) } else { None };
            Ok(serde_json::to_string(&Out { z, mean_occ }).expect("plain data serializes") + "\n")
        }
        Command::LimitCheck { n, m, p_list, window, q_list } => {
            let sig = lift(ModeSignature::new(n, m))?;
            let qs: Option<Vec<QParameter>> = q_list.map(|v| v.into_iter().map(|q| q.0).collect());
            let rows = lift(canonical_limit_check(sig, &p_list, qs.as_deref(), window))?;
            let mut out = String::from("p,relation,residual\n");
            for row in &rows {
                writeln!(out, "{},{},{}", row.p, row.relation, row.residual).unwrap();
            }
            Ok(out)
        }
    }
}

fn verify(suite: Suite, module: &ModuleArgs, q: QParameter, tol: f64, r_max: u32, expect_unitary: bool) -> Outcome {
    let mut report: BTreeMap<String, f64> = BTreeMap::new();
    let mut absorb = |prefix: &str, rep: qsl_core::RelationReport| {
        for (k, v) in rep.residuals {
            report.insert(format!("{prefix}{k}"), v);
        }
    };
    let mut not_unitary = None;
    match suite {
        Suite::Theorem1 => absorb("", lift(check_theorem1(&module.context(q, tol, Normalization::Unnormalized)?))?),
        Suite::Gl => absorb("", lift(check_gl_relations(&module.context(q, tol, Normalization::Unnormalized)?))?),
        Suite::Lemmas => absorb(
            "",
            lift(check_lemma_identities(&module.context(q, tol, Normalization::Unnormalized)?, r_max))?,
        ),
        Suite::Unitary => {
            let ctx = module.context(q, tol, Normalization::Unnormalized)?;
            let rep = lift(unitarity_check(&ctx))?;
            if let Some(dev) = rep.max_adjoint_deviation {
                report.insert("adjoint".into(), dev);
            }
            if matches!(ctx.q().mode(), QMode::Phase(_) | QMode::Classical) && ctx.is_exact() {
                report.insert("gram".into(), lift(gram_check(&ctx))?);
            }
            if !rep.unitary {
                not_unitary = Some(match rep.offending_bracket {
                    Some(k) => format!("[{k}] is not positive"),
                    None => "generators are not adjoint in the orthonormal basis".into(),
                });
            }
        }
        Suite::Dyson => {
            let map = module.realization(Kind::Dyson, q, tol)?;
            absorb("", lift(check_homomorphism(&map))?);
            let ctx = module.context(q, tol, Normalization::Unnormalized)?;
            report.insert("equivalence".into(), lift(check_equivalence(&map, &ctx))?);
        }
        Suite::Hp => {
            let map = module.realization(Kind::Hp, q, tol)?;
            absorb("", lift(check_homomorphism(&map))?);
            report.insert("adjoint".into(), lift(adjoint_deviation(&map))?);
            let deformed = module.realization(Kind::HpDeformed, q, tol)?;
            report.insert("hp-vs-deformed".into(), lift(compare_realizations(&map, &deformed))?);
        }
        Suite::Equivalence => {
            let dyson = module.realization(Kind::Dyson, q, tol)?;
            let un = module.context(q, tol, Normalization::Unnormalized)?;
            report.insert("dyson".into(), lift(check_equivalence(&dyson, &un))?);
            let hp = module.realization(Kind::Hp, q, tol)?;
            let ortho = module.context(q, tol, Normalization::Orthonormal)?;
            report.insert("hp".into(), lift(check_equivalence(&hp, &ortho))?);
            let deformed = module.realization(Kind::HpDeformed, q, tol)?;
            report.insert("hp-deformed".into(), lift(check_equivalence(&deformed, &ortho))?);
        }
        Suite::Oscillator => {
            let sig = lift(ModeSignature::new(module.n, module.m))?;
            let q = lift(q.with_tolerance(tol))?;
            let space = OscFockSpace::new(sig, module.resolve_cutoff()?, OscNormalization::Normalized);
            absorb("", lift(check_oscillator_relations(&space))?);
            absorb("", lift(check_deformed_relations(&space, &q))?);
            if sig.m() > 0 {
                report.insert("fermionic-exponential".into(), lift(fermionic_exponential_residual(&space, &q))?);
            }
        }
    }
    let data = serde_json::to_string_pretty(&report).expect("plain data serializes") + "\n";
    let failed: Vec<String> =
        report.iter().filter(|(_, v)| v.is_nan() || **v > tol).map(|(k, v)| format!("{k} = {v:e}")).collect();
    if !failed.is_empty() {
        return Err((Some(data), Failure::Check(failed.join("; "))));
    }
    if let Some(why) = not_unitary {
        if expect_unitary {
            return Err((Some(data), Failure::Check(format!("module is not unitary: {why}"))));
        }
        eprintln!("note: module is not unitary: {why}");
    }
    Ok(data)
}

impl ModuleArgs {
    fn resolve_cutoff(&self) -> Result<usize, (Option<String>, Failure)> {
        match (self.cutoff, qsl_core::rep::as_nonnegative_integer(self.p.0)) {
            (Some(k), _) => Ok(k),
            (None, Some(p)) => Ok(p as usize),
            (None, None) => Ok(qsl_core::rep::default_cutoff(self.p.0)),
        }
    }

    fn context(&self, q: QParameter, tol: f64, norm: Normalization) -> Result<RepContext, (Option<String>, Failure)> {
        let sig = lift(ModeSignature::new(self.n, self.m))?;
        let q = lift(q.with_tolerance(tol))?;
        lift(RepContext::new(sig, self.p.0, q, Some(self.resolve_cutoff()?), norm))
    }

    fn realization(&self, kind: Kind, q: QParameter, tol: f64) -> Result<RealizationMap, (Option<String>, Failure)> {
        let sig = lift(ModeSignature::new(self.n, self.m))?;
        let q = lift(q.with_tolerance(tol))?;
        let cutoff = Some(self.resolve_cutoff()?);
        lift(match kind {
            Kind::Dyson => RealizationMap::dyson(sig, self.p.0, q, cutoff),
            Kind::Hp => RealizationMap::holstein_primakoff(sig, self.p.0, q, cutoff, false),
            Kind::HpDeformed => RealizationMap::holstein_primakoff(sig, self.p.0, q, cutoff, true),
        })
    }
}

impl GenArgs {
    fn resolve(&self) -> Result<Generator, (Option<String>, Failure)> {
        match (self.gen, self.j) {
            (GenKind::E, Some(j)) => Ok(Generator::CartanWeyl(self.i, j)),
            (GenKind::E, None) => Err(usage("--gen e needs --j")),
            (_, Some(_)) => Err(usage("--j is only accepted with --gen e")),
            (GenKind::H, None) => Ok(Generator::Jacobson(Jacobson::Cartan(self.i))),
            (GenKind::Up, None) => Ok(Generator::Jacobson(Jacobson::Raising(self.i))),
            (GenKind::Down, None) => Ok(Generator::Jacobson(Jacobson::Lowering(self.i))),
        }
    }
}

impl From<Norm> for Normalization {
    fn from(n: Norm) -> Self {
        match n {
            Norm::Un => Normalization::Unnormalized,
            Norm::Ortho => Normalization::Orthonormal,
        }
    }
}

fn render(op: &GradedOperator, format: Format) -> String {
    let export = MatrixExport::from_operator(op);
    match format {
        Format::Json => export.to_json() + "\n",
        Format::Csv => export.to_csv(),
    }
}
