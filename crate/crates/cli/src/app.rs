use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use segreta::chow::{
    effectivity_check, huh_logconcavity_check, join_class, zeta_expand, zeta_from_segre,
    ChowClass, ChowError,
};
use segreta::engine::{
    csm_hypersurface_with, residual_degrees, tensored_from_report, EngineError, SegreJob,
    DEFAULT_MAX_RETRIES,
};
use segreta::kernel::{Field, Ideal, KernelError, PolyRing, PrimeField, Rationals, DEFAULT_PRIME};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::envelope::{ChecksOut, ClassOut, CsmOut, ResultEnvelope, ZetaOut, SCHEMA_VERSION};
use crate::ideal_file::{parse_ideal, FieldSpec, IdealFile, IdealFileError};

pub const SEED_ENV: &str = "SEGRETA_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "segreta",
    version,
    about = "Segre classes, Segre zeta functions and CSM classes of projective schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ideal file.
    #[arg(long)]
    pub input: PathBuf,
    /// Seed for the random combinations; falls back to $SEGRETA_SEED, then
    /// to a hash of the input file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coefficient field, `Q` or `Fp:<prime>`; overrides the file.
    #[arg(long)]
    pub field: Option<FieldSpec>,
    /// Redraws allowed per residual scheme with excess dimension.
    #[arg(long)]
    pub retries: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Residual degrees, tensored and ordinary Segre classes.
    Segre(Common),
    /// Segre zeta numerator and its expansion in P^N.
    Zeta {
        #[command(flatten)]
        common: Common,
        /// Target dimension of the expansion (defaults to the ambient one).
        #[arg(long = "N")]
        big: Option<usize>,
    },
    /// Tensored class of the join with a P^m.
    Join {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// CSM class of the hypersurface given by the single generator.
    Csm(Common),
    /// Effectivity and log-concavity checks.
    Check(Common),
    /// Residual schemes only.
    Residual(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Segre(c) | Command::Csm(c) | Command::Check(c) | Command::Residual(c) => c,
            Command::Zeta { common, .. } | Command::Join { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Segre(_) => "segre",
            Command::Zeta { .. } => "zeta",
            Command::Join { .. } => "join",
            Command::Csm(_) => "csm",
            Command::Check(_) => "check",
            Command::Residual(_) => "residual",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: IdealFileError,
    },
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Engine(e.into())
    }
}

impl From<ChowError> for CliError {
    fn from(e: ChowError) -> Self {
        CliError::Engine(e.into())
    }
}

impl CliError {
    /// 0 success, 1 internal failure, 2 invalid input, 3 retries exhausted.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(e) => e.exit_code() as u8,
            CliError::Io { .. } | CliError::Input { .. } | CliError::Validation(_) => 2,
            CliError::Engine(e) => match e {
                EngineError::RetryExhausted { .. } => 3,
                EngineError::Kernel(
                    KernelError::InexactDivision
                    | KernelError::DivisionByZero
                    | KernelError::RingMismatch { .. }
                    | KernelError::ZeroCombination(_),
                ) => 1,
                _ => 2,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub envelope: ResultEnvelope,
    pub format: OutputFormat,
}

impl Outcome {
    pub fn render(&self) -> String {
        match self.format {
            OutputFormat::Json => render_json(&self.envelope),
            OutputFormat::Text => render_text(&self.envelope),
        }
    }
}

pub fn render_json(env: &ResultEnvelope) -> String {
    let mut s = serde_json::to_string_pretty(env).expect("envelope serializes");
    s.push('\n');
    s
}

/// Parse `argv` (without the program name) and run the command.
pub fn run_command(argv: &[String], env_seed: Option<&str>) -> Result<Outcome, CliError> {
    let cli = Cli::try_parse_from(std::iter::once("segreta".to_string()).chain(argv.iter().cloned()))?;
    let common = cli.command.common().clone();
    let bytes = std::fs::read(&common.input).map_err(|source| CliError::Io {
        path: common.input.clone(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Validation(format!("{} is not UTF-8", common.input.display())))?;
    let file = parse_ideal(&text).map_err(|source| CliError::Input {
        path: common.input.clone(),
        source,
    })?;

    let (seed, seed_source) = match (common.seed, env_seed) {
        (Some(s), _) => (s, "flag"),
        (None, Some(v)) => (
            v.trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("{SEED_ENV}='{v}' is not a u64")))?,
            "env",
        ),
        (None, None) => (input_hash_seed(&bytes), "input-hash"),
    };
    let default_field = match cli.command {
        Command::Csm(_) => FieldSpec::Rationals,
        _ => FieldSpec::Prime(DEFAULT_PRIME),
    };
    let field = common.field.or(file.field).unwrap_or(default_field);
    let retries = common.retries.unwrap_or(DEFAULT_MAX_RETRIES);

    let mut envelope = ResultEnvelope {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name().to_string(),
        argv: argv.to_vec(),
        seed,
        seed_source: seed_source.to_string(),
        field: field.to_string(),
        probabilistic: field != FieldSpec::Rationals,
        timing_ms: 0.0,
        ambient_dim: file.nvars() - 1,
        degree: file.degree,
        counts: None,
        tensored_class: None,
        ordinary_class: None,
        zeta: None,
        expansion: None,
        join_class: None,
        csm: None,
        checks: None,
        residual: None,
    };
    let start = Instant::now();
    match field {
        FieldSpec::Rationals => compute(Rationals, &file, &cli.command, seed, retries, &mut envelope)?,
        FieldSpec::Prime(p) => compute(
            PrimeField::new(p).map_err(|e| CliError::Validation(e.to_string()))?,
            &file,
            &cli.command,
            seed,
            retries,
            &mut envelope,
        )?,
    }
    envelope.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(Outcome {
        envelope,
        format: common.output,
    })
}

/// First eight bytes of the SHA-256 of the input, little endian.
pub fn input_hash_seed(bytes: &[u8]) -> u64 {
    let digest = Sha256::digest(bytes);
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

fn compute<K: Field>(
    field: K,
    file: &IdealFile,
    command: &Command,
    seed: u64,
    retries: u32,
    env: &mut ResultEnvelope,
) -> Result<(), CliError> {
    let ring = PolyRing::new(field, file.nvars())?;
    let gens = file.generators.iter().map(|g| g.to_ring(&ring)).collect::<Vec<_>>();
    if let Some(i) = gens.iter().position(|g| g.is_zero()) {
        return Err(CliError::Validation(format!(
            "generator {} vanishes over {}",
            i + 1,
            env.field
        )));
    }
    let n = file.nvars() - 1;
    let d = file.degree;

    if let Command::Csm(_) = command {
        if gens.len() != 1 {
            return Err(CliError::Validation(format!(
                "csm needs exactly one generator, found {}",
                gens.len()
            )));
        }
        let r = csm_hypersurface_with(&ring, &gens[0], seed, retries, Some(file.names.clone()))?;
        env.csm = Some(CsmOut {
            ambient_dim: n,
            coeffs: r.class.coeffs().to_vec(),
            euler_characteristic: r.euler_characteristic,
        });
        if let Some(report) = r.singular_report {
            env.counts = Some(report.counts.clone());
            env.residual = Some(report);
        }
        return Ok(());
    }

    let ideal = Ideal::new(&ring, gens)?;
    let job = SegreJob::new(ideal, d, seed)?
        .with_retries(retries)
        .with_names(file.names.clone());
    let report = residual_degrees(&job)?;
    let tensored = tensored_from_report(&report);
    let ordinary = tensored.to_ordinary();
    env.counts = Some(report.counts.clone());
    env.tensored_class = Some(ClassOut::twisted(&tensored));
    env.ordinary_class = Some(ClassOut::ordinary(&ordinary));

    match command {
        Command::Segre(_) | Command::Csm(_) => {}
        Command::Residual(_) => {
            env.tensored_class = None;
            env.ordinary_class = None;
            env.residual = Some(report);
        }
        Command::Check(_) => {
            env.checks = Some(ChecksOut::new(
                effectivity_check(&tensored),
                huh_logconcavity_check(&tensored, d)?,
            ));
        }
        Command::Zeta { big, .. } => {
            let big = big.unwrap_or(n);
            if big < n {
                return Err(CliError::Validation(format!("--N {big} is below the ambient dimension {n}")));
            }
            let zeta = zeta_from_segre(&ordinary, d)?;
            env.expansion = Some(ClassOut::ordinary(&zeta_expand(&zeta, big)?));
            env.zeta = Some(ZetaOut::from(&zeta));
        }
        Command::Join { m, .. } => {
            let joined = join_class(&tensored, *m)?;
            let zeta = zeta_from_segre(&ordinary, d)?;
            env.expansion = Some(ClassOut::ordinary(&zeta_expand(&zeta, n + m + 1)?));
            env.join_class = Some(ClassOut::twisted(&joined));
            env.zeta = Some(ZetaOut::from(&zeta));
        }
    }
    Ok(())
}

/// `2[P^2] + 18[P^1] - 334[P^0]`.
pub fn format_class(n: usize, coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &a) in coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let abs = a.unsigned_abs();
        if out.is_empty() {
            if a < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if a < 0 { " - " } else { " + " });
        }
        if abs != 1 {
            write!(out, "{abs}").unwrap();
        }
        write!(out, "[P^{}]", n - i).unwrap();
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn format_poly(coeffs: &[i64], var: &str) -> String {
    let class = ChowClass::from_coeffs(coeffs.iter().rev().copied().collect());
    let n = class.ambient_dim();
    format_class(n, class.coeffs())
        .replace("[P^0]", "")
        .replace("[P^1]", &format!("[{var}]"))
        .replace(['[', ']'], "")
        .replace("P^", &format!("{var}^"))
}

fn render_text(e: &ResultEnvelope) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{}: P^{}, degree {}, field {}, seed {} ({})",
        e.command, e.ambient_dim, e.degree, e.field, e.seed, e.seed_source
    )
    .unwrap();
    let list = |v: &[i64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    if let Some(c) = &e.counts {
        writeln!(s, "N              = ({})", list(c)).unwrap();
    }
    if let Some(c) = &e.tensored_class {
        writeln!(
            s,
            "s(Z)^O({})     = {}",
            c.twist,
            format_class(c.ambient_dim, &c.coeffs)
        )
        .unwrap();
    }
    if let Some(c) = &e.ordinary_class {
        writeln!(s, "s(Z)           = {}", format_class(c.ambient_dim, &c.coeffs)).unwrap();
    }
    if let Some(z) = &e.zeta {
        writeln!(
            s,
            "zeta           = ({}) / (1 + {}H)^{}",
            format_poly(&z.numerator, "H"),
            z.d,
            z.n + 1
        )
        .unwrap();
    }
    if let Some(c) = &e.join_class {
        writeln!(
            s,
            "join^O({})     = {}",
            c.twist,
            format_class(c.ambient_dim, &c.coeffs)
        )
        .unwrap();
    }
    if let Some(c) = &e.expansion {
        writeln!(
            s,
            "in P^{:<10}= {}",
            c.ambient_dim,
            format_class(c.ambient_dim, &c.coeffs)
        )
        .unwrap();
    }
    if let Some(c) = &e.csm {
        writeln!(s, "c_SM           = {}", format_class(c.ambient_dim, &c.coeffs)).unwrap();
        writeln!(s, "euler          = {}", c.euler_characteristic).unwrap();
    }
    if let Some(c) = &e.checks {
        writeln!(s, "effective      = {}", c.effective).unwrap();
        if !c.offending.is_empty() {
            writeln!(s, "negative at    = {:?}", c.offending).unwrap();
        }
        writeln!(s, "log-concave    = {}", c.log_concave).unwrap();
    }
    if let Some(r) = &e.residual {
        for step in &r.steps {
            let dim = step
                .proj_dim
                .map_or("empty".to_string(), |d| format!("dim {d}"));
            writeln!(
                s,
                "R_{}: {}, degree {}, retries {}",
                step.k, dim, step.degree, step.retries
            )
            .unwrap();
            for g in &step.generators {
                writeln!(s, "    {g}").unwrap();
            }
        }
    }
    if e.probabilistic {
        writeln!(s, "(computed over a finite field: correct with high probability)").unwrap();
    }
    s
}
