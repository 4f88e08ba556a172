use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobkit::endpresent::{build_generators, relations_report, to_dot, verify_center, verify_generation, verify_tensor_rules};
use frobkit::exactfield::{FieldCtx, FieldElement};
use frobkit::homology::certify_generic_seed;
use frobkit::report::Report;
use frobkit::steinberg::{hat_borel_irreducibles, steinberg_block_equivalence, verify_restriction_simplicity, verify_steinberg};
use frobkit::vermatwist::{generic_seeds, verify_equivalence, verify_hom_iso, verify_projectives, verify_twist};
use frobkit::Error;

const EXIT_CHECKS_FAILED: u8 = 1;
const EXIT_NON_GENERIC: u8 = 3;
const EXIT_ERROR: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "frobkit", version, about = "Exact checks for modules over higher Frobenius kernels of SL2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// characteristic
    #[arg(long, global = true, default_value_t = 3, value_parser = parse_p)]
    p: u32,
    /// degree of the coefficient field over F_p
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    ext: u32,
    /// number of Frobenius levels
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=3))]
    r: u64,
    /// generic weight seed: "auto" or coefficients "a,b" meaning a + b x
    #[arg(long = "d-seed", global = true, default_value = "auto")]
    d_seed: String,
    /// graded window radius
    #[arg(long, global = true, default_value_t = 2)]
    window: i64,
    /// RNG seed
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// also write the generator graph (relations, generation) as DOT
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// tensor product theorem, restricted and generic (r >= 2)
    Steinberg,
    /// simple modules stay simple on restriction from r+1 to r levels
    Restriction,
    /// hat-Borel irreducibles (r >= 2)
    HatBorel,
    /// indecomposable projectives as tensor products
    Projectives,
    /// twist coefficients against the closed form
    Twist,
    /// Hom(Z, Z (x) V) against weight spaces of V
    HomIso,
    /// twisted End algebra against the generic one
    Equivalence,
    /// tensor rules and commuting diagrams among generators (r <= 2)
    Relations,
    /// monomials in the generators span End (r <= 2)
    Generation,
    /// centre of End on every block (r <= 2)
    Center,
    /// Hom dimensions under M -> M^(1) (x) St
    BlockEquivalence,
    /// every command above
    All,
}

fn parse_p(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(p @ (3 | 5 | 7)) => Ok(p),
        _ => Err(format!("p must be 3, 5 or 7, got {s}")),
    }
}

enum Failure {
    NonGeneric(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonGeneric(_) => Failure::NonGeneric(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn resolve_seed(ctx: FieldCtx, spec: &str) -> Result<FieldElement, Failure> {
    if spec == "auto" {
        for d in generic_seeds(ctx, ctx.size()) {
            if certify_generic_seed(d).is_ok() {
                return Ok(d);
            }
        }
        return Err(Failure::NonGeneric(format!("no generic seed in F_{}^{}; use --ext 2", ctx.p(), ctx.k())));
    }
    let coeffs: Vec<u32> = spec
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Other(format!("cannot parse --d-seed {spec}")))?;
    let d = ctx.from_coeffs(&coeffs)?;
    certify_generic_seed(d)?;
    Ok(d)
}

fn run_one(cli: &Cli, cmd: Command, ctx: FieldCtx) -> Result<Report, Failure> {
    let r = cli.r as usize;
    let d = || resolve_seed(ctx, &cli.d_seed);
    let rep = match cmd {
        Command::Steinberg => {
            let r = r.max(2);
            let mut rep = Report::new("steinberg").with_conventions(ctx).param("r", r);
            rep.absorb(verify_steinberg(ctx, r, None)?);
            rep.absorb(verify_steinberg(ctx, r, Some(d()?))?);
            rep
        }
        Command::Restriction => verify_restriction_simplicity(ctx, r + 1, r)?,
        Command::HatBorel => hat_borel_irreducibles(ctx, r.max(2), d()?)?,
        Command::Projectives => verify_projectives(ctx, r, Some(d()?), cli.seed)?,
        Command::Twist => verify_twist(ctx, &generic_seeds(ctx, 6))?,
        Command::HomIso => verify_hom_iso(ctx, d()?, cli.window, cli.seed)?,
        Command::Equivalence => verify_equivalence(ctx, d()?, cli.window, cli.seed)?,
        Command::Relations | Command::Generation | Command::Center => {
            let pres = build_generators(ctx, r.min(2), cli.seed)?;
            if let Some(path) = &cli.dot {
                std::fs::write(path, to_dot(&pres)).map_err(|e| Failure::Other(e.to_string()))?;
            }
            match cmd {
                Command::Relations => {
                    let mut rep = relations_report(&pres, cli.seed)?;
                    rep.absorb(verify_tensor_rules(ctx, cli.seed)?);
                    rep
                }
                Command::Generation => {
                    let all: Vec<usize> = (0..pres.objects.len()).collect();
                    verify_generation(&pres, &all, cli.window)?
                }
                _ => verify_center(&pres)?,
            }
        }
        Command::BlockEquivalence => steinberg_block_equivalence(ctx, cli.seed)?,
        Command::All => {
            let mut rep = Report::new("all")
                .with_conventions(ctx)
                .param("p", ctx.p())
                .param("r", r)
                .param("window", cli.window)
                .param("seed", cli.seed);
            for c in [
                Command::Twist,
                Command::Steinberg,
                Command::Restriction,
                Command::HatBorel,
                Command::Projectives,
                Command::HomIso,
                Command::Equivalence,
                Command::Relations,
                Command::Generation,
                Command::Center,
                Command::BlockEquivalence,
            ] {
                rep.absorb(run_one(cli, c, ctx)?);
            }
            rep
        }
    };
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match FieldCtx::new(cli.p, cli.ext) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rep = match run_one(&cli, cli.command, ctx) {
        Ok(rep) => rep,
        Err(Failure::NonGeneric(msg)) => {
            eprintln!("non-generic weight seed: {msg}");
            return ExitCode::from(EXIT_NON_GENERIC);
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let text = match cli.format {
        Format::Json => rep.to_json() + "\n",
        Format::Csv => rep.to_csv(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
        }
        None => print!("{text}"),
    }
    let failures = rep.failures();
    if failures > 0 {
        eprintln!("{failures} check(s) failed");
        return ExitCode::from(EXIT_CHECKS_FAILED);
    }
    ExitCode::SUCCESS
}
