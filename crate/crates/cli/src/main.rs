//! Command-line interface: classification queries against the charge
//! lattice and Betti engine, plus construction, verification and
//! serialization of the explicit matrix factorizations.
//!
//! Exit codes: 0 on success, 1 on domain errors (invalid charges,
//! points off the curve, failed verification), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use cubic_mcm::betti::{
    betti_general, complete_resolution, descriptor_syzygy, BettiError, ObjectDescriptor, Variant,
};
use cubic_mcm::charge::{reduce3, reduce6, Charge, LatticeError};
use cubic_mcm::hilbert::{hilbert_coefficients, hilbert_data};
use cubic_mcm::matfac::{
    hesse, koszul_mf, koszul_reference, moore_mf, point_search, skyscraper_explicit, skyscraper_mf,
    standard_decomposition, verify_mf, CurvePoint, HesseCubic, MatFacError, MatrixFactorization,
    Side,
};
use cubic_mcm::poly::PolyError;
use cubic_mcm::scalar::{parse_scalar, Field, Scalar};

use cubic_mcm_cli::doc::{self, DocError};
use cubic_mcm_cli::render::{self, Format};

#[derive(Parser)]
#[command(
    name = "cubic-mcm",
    version,
    about = "Betti tables and matrix factorizations over the cone of a smooth plane cubic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Generic,
    Atiyah,
    Special,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Betti table of the module with the given charge (any nonzero
    /// charge; reduced into the fundamental domain first)
    #[command(allow_negative_numbers = true)]
    Betti {
        r: i64,
        d: i64,
        /// Family on the ambiguous rays d=0 and 3r=2d of the reduced
        /// charge; rejected off those rays
        #[arg(long)]
        variant: Option<VariantArg>,
        /// Point label for members of the continuous families
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduce a charge into the fundamental domain of the shift action
    #[command(allow_negative_numbers = true)]
    Reduce {
        r: i64,
        d: i64,
        /// 3 for the shift action, 6 for the shift-and-syzygy action
        #[arg(long, default_value_t = 3)]
        order: u8,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Segment of the two-periodic complete resolution
    #[command(allow_negative_numbers = true)]
    Resolution {
        r: i64,
        d: i64,
        #[arg(long)]
        variant: Option<VariantArg>,
        #[arg(long)]
        lambda: Option<String>,
        /// Homological positions -steps..=steps
        #[arg(long, default_value_t = 2)]
        steps: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiplicity, generator count, module rank and Hilbert numerator
    #[command(allow_negative_numbers = true)]
    Invariants {
        r: i64,
        d: i64,
        #[arg(long)]
        variant: Option<VariantArg>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Values of the Hilbert function
    #[command(allow_negative_numbers = true)]
    Hilbert {
        r: i64,
        d: i64,
        #[arg(long)]
        variant: Option<VariantArg>,
        /// Number of graded pieces (0..=terms)
        #[arg(long, default_value_t = 8)]
        terms: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Syzygy of a classified module
    #[command(allow_negative_numbers = true)]
    Syzygy {
        r: i64,
        d: i64,
        #[arg(long)]
        variant: Option<VariantArg>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Construct, verify and inspect matrix factorizations
    Mf {
        #[command(subcommand)]
        command: MfCommand,
    },
    /// Enumerate the projective points of the cubic over a prime field
    Points {
        /// q for the rationals, fp:P for a prime field
        #[arg(long, default_value = "q")]
        field: String,
        /// Normal-form parameter (integer or num/den)
        #[arg(long, default_value = "0")]
        psi: String,
        /// Keep only points with all coordinates nonzero
        #[arg(long)]
        nonzero: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MfCommand {
    /// Koszul factorization of the cubic (4x4)
    Koszul {
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value = "0")]
        psi: String,
        /// Emit the hand-written reference pair instead of the
        /// generated tensor product
        #[arg(long)]
        reference: bool,
        /// Write the document here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All-linear 3x3 factorization at a curve point with nonzero
    /// coordinates
    Moore {
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value = "0")]
        psi: String,
        /// Point coordinates a0,a1,a2
        #[arg(long)]
        point: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 2x2 factorization of a point's residue module
    Skyscraper {
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value = "0")]
        psi: String,
        /// Point coordinates a0,a1,a2
        #[arg(long)]
        point: String,
        /// Use the explicit coordinate formulas (needs all coordinates
        /// nonzero) instead of the coefficient-space solve
        #[arg(long)]
        explicit: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the factorization identities of a document
    Verify { file: PathBuf },
    /// Betti window of one side of a factorization document
    Betti {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Skip re-running the identity checks on load
        #[arg(long)]
        no_verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

macro_rules! domain_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}
domain_from!(BettiError, LatticeError, MatFacError, PolyError, DocError);

struct CmdOutput {
    stdout: String,
    success: bool,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            success: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_field_flag(s: &str) -> Result<Field, CliError> {
    if s == "q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Usage(format!("--field expects q or fp:P, got {s:?}")))?;
        return Ok(Field::prime(p)?);
    }
    Err(CliError::Usage(format!(
        "--field expects q or fp:P, got {s:?}"
    )))
}

fn parse_psi_flag(field: Field, s: &str) -> Result<Scalar, CliError> {
    parse_scalar(field, s)
        .map_err(|_| CliError::Usage(format!("--psi expects a scalar, got {s:?}")))
}

fn parse_point_flag(curve: &HesseCubic, s: &str) -> Result<CurvePoint, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "--point expects a0,a1,a2, got {s:?}"
        )));
    }
    let mut coords = Vec::with_capacity(3);
    for part in parts {
        coords.push(
            parse_scalar(curve.field(), part)
                .map_err(|_| CliError::Usage(format!("--point has a bad coordinate {part:?}")))?,
        );
    }
    let coords: [Scalar; 3] = coords.try_into().expect("three coordinates");
    Ok(CurvePoint::new(curve, coords)?)
}

fn on_atiyah_ray(c: Charge) -> bool {
    c.d == 0
}

fn on_special_ray(c: Charge) -> bool {
    3 * (c.r as i128) == 2 * (c.d as i128)
}

/// Resolves the variant flag against the (reduced) charge it applies
/// to: mandatory on the two ambiguous rays, rejected elsewhere unless
/// it names the continuous family.
fn resolve_variant(rep: Charge, flag: Option<VariantArg>) -> Result<Variant, CliError> {
    let ray = if on_atiyah_ray(rep) {
        Some("atiyah")
    } else if on_special_ray(rep) {
        Some("special")
    } else {
        None
    };
    match (flag, ray) {
        (None, Some(name)) => Err(CliError::Usage(format!(
            "charge {rep} lies on an ambiguous ray; pass --variant generic or --variant {name}"
        ))),
        (None, None) => Ok(Variant::Generic),
        (Some(VariantArg::Generic), _) => Ok(Variant::Generic),
        (Some(VariantArg::Atiyah), _) => Ok(Variant::Atiyah),
        (Some(VariantArg::Special), _) => Ok(Variant::SpecialS),
    }
}

/// Builds a fundamental-domain descriptor from command arguments.
fn build_descriptor(
    r: i64,
    d: i64,
    flag: Option<VariantArg>,
    lambda: Option<String>,
) -> Result<ObjectDescriptor, CliError> {
    let charge = Charge::new(r, d);
    if !cubic_mcm::charge::in_domain3(charge) {
        return Err(CliError::Domain(format!(
            "charge {charge} is not in the fundamental domain; use `reduce` first"
        )));
    }
    let variant = resolve_variant(charge, flag)?;
    Ok(ObjectDescriptor::new(charge, variant, lambda)?)
}

fn reject_tex(format: Format) -> Result<(), CliError> {
    if format == Format::Tex {
        return Err(CliError::Usage(
            "--format tex is not available for this command".into(),
        ));
    }
    Ok(())
}

fn run(command: Command) -> Result<CmdOutput, CliError> {
    match command {
        Command::Betti {
            r,
            d,
            variant,
            lambda,
            format,
        } => cmd_betti(r, d, variant, lambda, format),
        Command::Reduce {
            r,
            d,
            order,
            format,
        } => cmd_reduce(r, d, order, format),
        Command::Resolution {
            r,
            d,
            variant,
            lambda,
            steps,
            format,
        } => cmd_resolution(r, d, variant, lambda, steps, format),
        Command::Invariants {
            r,
            d,
            variant,
            format,
        } => cmd_invariants(r, d, variant, format),
        Command::Hilbert {
            r,
            d,
            variant,
            terms,
            format,
        } => cmd_hilbert(r, d, variant, terms, format),
        Command::Syzygy {
            r,
            d,
            variant,
            lambda,
            format,
        } => cmd_syzygy(r, d, variant, lambda, format),
        Command::Points {
            field,
            psi,
            nonzero,
            format,
        } => cmd_points(&field, &psi, nonzero, format),
        Command::Mf { command } => run_mf(command),
    }
}

fn cmd_betti(
    r: i64,
    d: i64,
    variant: Option<VariantArg>,
    lambda: Option<String>,
    format: Format,
) -> Result<CmdOutput, CliError> {
    let charge = Charge::new(r, d);
    let (k, rep) = reduce3(charge)?;
    let variant = resolve_variant(rep, variant)?;
    let (table, shift) = betti_general(charge, variant)?;
    let shift = (k != 0).then_some(shift);
    let out = match format {
        Format::Text => render::betti_text(rep, variant, lambda.as_deref(), shift, &table),
        Format::Json => render::betti_json(rep, variant, lambda.as_deref(), shift, &table),
        Format::Tex => render::betti_tex(&table),
    };
    Ok(CmdOutput::ok(out))
}

fn cmd_reduce(r: i64, d: i64, order: u8, format: Format) -> Result<CmdOutput, CliError> {
    reject_tex(format)?;
    let charge = Charge::new(r, d);
    let (k, rep) = match order {
        3 => reduce3(charge)?,
        6 => reduce6(charge)?,
        other => {
            return Err(CliError::Usage(format!(
                "--order expects 3 or 6, got {other}"
            )))
        }
    };
    let out = match format {
        Format::Text => format!("k={k}, charge {rep}\n"),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct ReduceJson {
                order: u8,
                k: u8,
                charge: render::ChargeJson,
            }
            render::to_json(&ReduceJson {
                order,
                k,
                charge: rep.into(),
            })
        }
        Format::Tex => unreachable!(),
    };
    Ok(CmdOutput::ok(out))
}

fn cmd_resolution(
    r: i64,
    d: i64,
    variant: Option<VariantArg>,
    lambda: Option<String>,
    steps: u32,
    format: Format,
) -> Result<CmdOutput, CliError> {
    let desc = build_descriptor(r, d, variant, lambda)?;
    let res = complete_resolution(&desc, steps);
    let out = match format {
        Format::Text => render::resolution_text(&desc, &res),
        Format::Json => render::resolution_json(&desc, steps, &res),
        Format::Tex => render::resolution_tex(&res),
    };
    Ok(CmdOutput::ok(out))
}

fn cmd_invariants(
    r: i64,
    d: i64,
    variant: Option<VariantArg>,
    format: Format,
) -> Result<CmdOutput, CliError> {
    reject_tex(format)?;
    let desc = build_descriptor(r, d, variant, None)?;
    let data = hilbert_data(&desc);
    let out = match format {
        Format::Text => format!(
            "charge {}, variant {}\ne = {}\nmu = {}\nrank = {}\nP = {}\n",
            desc.charge(),
            render::variant_name(desc.variant()),
            data.multiplicity,
            data.min_generators,
            data.module_rank,
            data.numerator,
        ),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct InvariantsJson {
                charge: render::ChargeJson,
                variant: String,
                e: u64,
                mu: u64,
                rank: u64,
                p: String,
                b: String,
            }
            render::to_json(&InvariantsJson {
                charge: desc.charge().into(),
                variant: render::variant_name(desc.variant()).to_string(),
                e: data.multiplicity,
                mu: data.min_generators,
                rank: data.module_rank,
                p: data.numerator.to_string(),
                b: data.alternating.to_string(),
            })
        }
        Format::Tex => unreachable!(),
    };
    Ok(CmdOutput::ok(out))
}

fn cmd_hilbert(
    r: i64,
    d: i64,
    variant: Option<VariantArg>,
    terms: u32,
    format: Format,
) -> Result<CmdOutput, CliError> {
    reject_tex(format)?;
    let desc = build_descriptor(r, d, variant, None)?;
    let dims = hilbert_coefficients(&desc, terms);
    let out = match format {
        Format::Text => {
            let mut s = format!(
                "charge {}, variant {}\n",
                desc.charge(),
                render::variant_name(desc.variant())
            );
            for (k, dim) in dims.iter().enumerate() {
                s.push_str(&format!("{k}: {dim}\n"));
            }
            s
        }
        Format::Json => {
            #[derive(serde::Serialize)]
            struct HilbertJson {
                charge: render::ChargeJson,
                variant: String,
                dims: Vec<u64>,
            }
            render::to_json(&HilbertJson {
                charge: desc.charge().into(),
                variant: render::variant_name(desc.variant()).to_string(),
                dims,
            })
        }
        Format::Tex => unreachable!(),
    };
    Ok(CmdOutput::ok(out))
}

fn cmd_syzygy(
    r: i64,
    d: i64,
    variant: Option<VariantArg>,
    lambda: Option<String>,
    format: Format,
) -> Result<CmdOutput, CliError> {
    reject_tex(format)?;
    let desc = build_descriptor(r, d, variant, lambda)?;
    let (image, shift) = descriptor_syzygy(&desc);
    let out = match format {
        Format::Text => {
            let mut s = format!(
                "charge {}, variant {}",
                image.charge(),
                render::variant_name(image.variant())
            );
            if let Some(l) = image.lambda() {
                s.push_str(&format!(", point {l}"));
            }
            s.push_str(&format!(", internal shift {shift}\n"));
            s
        }
        Format::Json => {
            #[derive(serde::Serialize)]
            struct SyzygyJson {
                charge: render::ChargeJson,
                variant: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                lambda: Option<String>,
                internal_shift: i64,
            }
            render::to_json(&SyzygyJson {
                charge: image.charge().into(),
                variant: render::variant_name(image.variant()).to_string(),
                lambda: image.lambda().map(str::to_string),
                internal_shift: shift,
            })
        }
        Format::Tex => unreachable!(),
    };
    Ok(CmdOutput::ok(out))
}

fn cmd_points(
    field: &str,
    psi: &str,
    nonzero: bool,
    format: Format,
) -> Result<CmdOutput, CliError> {
    reject_tex(format)?;
    let field = parse_field_flag(field)?;
    let psi = parse_psi_flag(field, psi)?;
    let curve = hesse(psi)?;
    let points = point_search(&curve, nonzero)?;
    let out = match format {
        Format::Text => {
            let mut s = String::new();
            for p in &points {
                s.push_str(&format!("{p}\n"));
            }
            s
        }
        Format::Json => {
            #[derive(serde::Serialize)]
            struct PointsJson {
                field: String,
                psi: String,
                count: usize,
                points: Vec<[String; 3]>,
            }
            render::to_json(&PointsJson {
                field: curve.field().to_string(),
                psi: curve.psi().to_string(),
                count: points.len(),
                points: points
                    .iter()
                    .map(|p| {
                        [
                            p.coord(0).to_string(),
                            p.coord(1).to_string(),
                            p.coord(2).to_string(),
                        ]
                    })
                    .collect(),
            })
        }
        Format::Tex => unreachable!(),
    };
    Ok(CmdOutput::ok(out))
}

fn emit_document(
    mf: &MatrixFactorization,
    psi: &Scalar,
    note: &str,
    output: Option<PathBuf>,
) -> Result<CmdOutput, CliError> {
    let text = doc::document_to_string(&doc::encode_mf(mf, psi, note));
    match output {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(CmdOutput::ok(String::new()))
        }
        None => Ok(CmdOutput::ok(text)),
    }
}

fn run_mf(command: MfCommand) -> Result<CmdOutput, CliError> {
    match command {
        MfCommand::Koszul {
            field,
            psi,
            reference,
            output,
        } => {
            let field = parse_field_flag(&field)?;
            let psi = parse_psi_flag(field, &psi)?;
            let curve = hesse(psi.clone())?;
            let (mf, note) = if reference {
                (
                    koszul_reference(&curve),
                    format!("reference koszul pair, psi = {psi}"),
                )
            } else {
                (
                    koszul_mf(&standard_decomposition(&curve))?,
                    format!("koszul factorization of the cubic, psi = {psi}"),
                )
            };
            emit_document(&mf, &psi, &note, output)
        }
        MfCommand::Moore {
            field,
            psi,
            point,
            output,
        } => {
            let field = parse_field_flag(&field)?;
            let psi = parse_psi_flag(field, &psi)?;
            let curve = hesse(psi.clone())?;
            let point = parse_point_flag(&curve, &point)?;
            let mf = moore_mf(&curve, &point)?;
            let note = format!("moore factorization at {point}, psi = {psi}");
            emit_document(&mf, &psi, &note, output)
        }
        MfCommand::Skyscraper {
            field,
            psi,
            point,
            explicit,
            output,
        } => {
            let field = parse_field_flag(&field)?;
            let psi = parse_psi_flag(field, &psi)?;
            let curve = hesse(psi.clone())?;
            let point = parse_point_flag(&curve, &point)?;
            let (mf, note) = if explicit {
                (
                    skyscraper_explicit(&curve, &point)?,
                    format!("explicit skyscraper factorization at {point}, psi = {psi}"),
                )
            } else {
                (
                    skyscraper_mf(&curve, &point)?,
                    format!("skyscraper factorization at {point}, psi = {psi}"),
                )
            };
            emit_document(&mf, &psi, &note, output)
        }
        MfCommand::Verify { file } => {
            let text = std::fs::read_to_string(file)?;
            let (mf, _psi) = doc::read_mf(&text, false)?;
            let report = verify_mf(&mf);
            let ok = report.all_pass();
            let verdict = if ok { "PASS" } else { "FAIL" };
            Ok(CmdOutput {
                stdout: format!("{report}\nresult: {verdict}\n"),
                success: ok,
            })
        }
        MfCommand::Betti {
            file,
            side,
            no_verify,
            format,
        } => {
            reject_tex(format)?;
            let text = std::fs::read_to_string(file)?;
            let (mf, _psi) = doc::read_mf(&text, !no_verify)?;
            let side = match side {
                SideArg::A => Side::A,
                SideArg::B => Side::B,
            };
            let table = cubic_mcm::matfac::betti_from_mf(&mf, side)?;
            let side_name = match side {
                Side::A => "A",
                Side::B => "B",
            };
            let out = match format {
                Format::Text => {
                    let mut s = format!("side {side_name}\n");
                    s.push_str("  j   i=0   i=1\n");
                    for (j, row) in render::layout_rows(&table).iter().enumerate() {
                        s.push_str(&format!("{j:>3} {:>5} {:>5}\n", row[0], row[1]));
                    }
                    let fmt_multiset = |row: &[(i64, u64)]| {
                        row.iter()
                            .map(|&(deg, count)| format!("{deg} x{count}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    s.push_str(&format!(
                        "generators: {}\n",
                        fmt_multiset(&table.generator_degrees())
                    ));
                    s.push_str(&format!(
                        "relations: {}\n",
                        fmt_multiset(&table.relation_degrees())
                    ));
                    s
                }
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct MfBettiJson {
                        side: String,
                        rows: Vec<[u64; 2]>,
                        window: Vec<render::WindowEntryJson>,
                    }
                    render::to_json(&MfBettiJson {
                        side: side_name.to_string(),
                        rows: render::layout_rows(&table),
                        window: table
                            .window()
                            .map(|(i, j, count)| render::WindowEntryJson { i, j, count })
                            .collect(),
                    })
                }
                Format::Tex => unreachable!(),
            };
            Ok(CmdOutput::ok(out))
        }
    }
}
