//! `toric` — exact computations on smooth complete toric varieties from fan
//! documents: validation, tangent splitting types on invariant curves,
//! positivity classification, divisor polytopes, angle trichotomies, theorem
//! verification, a bounded surface census, and SVG rendering.

mod document;
mod error;
mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use toric::{
    angle_sum_sign, anticanonical, census, classify_tangent, polytope_from_divisor,
    splitting_type, verify_theorem, DivisorCoefficients, Fan, LatticePolytope, Wall,
};

use document::{build_fan, parse_divisor, parse_fan};
use error::{CliError, Kind};

#[derive(Parser)]
#[command(name = "toric", version, about = "Tangent-bundle positivity on smooth complete toric varieties, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DivisorChoice {
    /// Divisor document {"coeffs":[...]}, aligned with the fan's rays.
    #[arg(long, value_name = "DIV")]
    divisor: Option<PathBuf>,
    /// Use the anticanonical divisor (all coefficients 1).
    #[arg(long)]
    anticanonical: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan document: smoothness, fan condition, completeness.
    Validate { fan: PathBuf },
    /// Splitting type of the tangent bundle on invariant curves.
    Splitting {
        fan: PathBuf,
        /// Address one wall by the ray indices of its shared rays,
        /// comma-separated (a single index in dimension 2).
        #[arg(long, value_name = "INDEX")]
        wall: Option<String>,
    },
    /// Classify the tangent bundle: Ample, NefNotAmple, or NotNef.
    Classify { fan: PathBuf },
    /// Build the lattice polytope of an ample divisor.
    Polytope {
        fan: PathBuf,
        #[command(flatten)]
        divisor: DivisorChoice,
    },
    /// Angle-sum trichotomy on every (wall, 2-face) incidence.
    Angles {
        fan: PathBuf,
        #[command(flatten)]
        divisor: DivisorChoice,
    },
    /// Check that an ample tangent bundle forces projective space.
    Verify {
        fan: PathBuf,
        /// Optional divisor document; defaults to the anticanonical divisor
        /// when that is ample, otherwise to a computed ample divisor.
        #[arg(long, value_name = "DIV")]
        divisor: Option<PathBuf>,
    },
    /// Enumerate and classify smooth complete toric surfaces.
    Census {
        #[arg(long)]
        max_rays: usize,
        #[arg(long)]
        max_abs_d: i64,
    },
    /// Render the fan (and the polytope, given a divisor) as SVG.
    Render {
        fan: PathBuf,
        #[arg(long, value_name = "DIV")]
        divisor: Option<PathBuf>,
        /// Output file.
        #[arg(short, long, value_name = "FILE.svg")]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok((value, code)) => {
            println!("{value}");
            ExitCode::from(code)
        }
        Err(err) => {
            println!("{}", err.to_json());
            eprintln!("error: {err}");
            ExitCode::from(err.kind.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(Kind::Input, format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<(Fan, Option<String>), CliError> {
    let doc = parse_fan(&read(path)?)?;
    let fan = build_fan(&doc)?;
    Ok((fan, doc.name))
}

fn load_divisor(fan: &Fan, path: &Path) -> Result<DivisorCoefficients, CliError> {
    let doc = parse_divisor(&read(path)?)?;
    if doc.coeffs.len() != fan.rays().len() {
        return Err(CliError::new(
            Kind::Input,
            format!(
                "divisor has {} coefficients, fan has {} rays",
                doc.coeffs.len(),
                fan.rays().len()
            ),
        ));
    }
    Ok(DivisorCoefficients::from_i64(&doc.coeffs))
}

fn resolve_divisor(fan: &Fan, choice: &DivisorChoice) -> Result<DivisorCoefficients, CliError> {
    match &choice.divisor {
        Some(path) => load_divisor(fan, path),
        None => Ok(anticanonical(fan)),
    }
}

/// Find the wall addressed by the comma-separated shared ray indices.
fn resolve_wall(fan: &Fan, walls: &[Wall], spec: &str) -> Result<usize, CliError> {
    let mut indices = spec
        .split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                CliError::new(
                    Kind::Input,
                    format!("--wall expects comma-separated ray indices, got '{spec}'"),
                )
            })
        })
        .collect::<Result<Vec<usize>, _>>()?;
    indices.sort_unstable();
    if indices.len() + 1 != fan.dim() {
        return Err(CliError::new(
            Kind::Input,
            format!(
                "--wall needs {} shared ray indices in dimension {}",
                fan.dim() - 1,
                fan.dim()
            ),
        ));
    }
    walls
        .iter()
        .position(|w| w.shared_rays == indices)
        .ok_or_else(|| {
            CliError::new(Kind::Input, format!("no wall has shared rays {indices:?}"))
        })
}

fn run(command: Command) -> Result<(Value, u8), CliError> {
    match command {
        Command::Validate { fan } => cmd_validate(&fan),
        Command::Splitting { fan, wall } => cmd_splitting(&fan, wall.as_deref()),
        Command::Classify { fan } => cmd_classify(&fan),
        Command::Polytope { fan, divisor } => cmd_polytope(&fan, &divisor),
        Command::Angles { fan, divisor } => cmd_angles(&fan, &divisor),
        Command::Verify { fan, divisor } => cmd_verify(&fan, divisor.as_deref()),
        Command::Census { max_rays, max_abs_d } => cmd_census(max_rays, max_abs_d),
        Command::Render { fan, divisor, output } => cmd_render(&fan, divisor.as_deref(), &output),
    }
}

fn cmd_validate(path: &Path) -> Result<(Value, u8), CliError> {
    let doc = parse_fan(&read(path)?)?;
    let fan = build_fan(&doc)?;
    let complete = fan.is_complete();
    let walls = if complete {
        Value::from(fan.walls()?.len())
    } else {
        Value::Null
    };
    let value = json!({
        "name": doc.name,
        "dim": fan.dim(),
        "rays": fan.rays().len(),
        "max_cones": fan.max_cones().len(),
        "smooth": true,
        "complete": complete,
        "walls": walls,
        "warnings": fan.warnings(),
        "canonical": document::serialize_fan(&doc),
    });
    Ok((value, if complete { 0 } else { 2 }))
}

fn cmd_splitting(path: &Path, wall_spec: Option<&str>) -> Result<(Value, u8), CliError> {
    let (fan, _) = load_fan(path)?;
    let walls = fan.walls()?;
    match wall_spec {
        Some(spec) => {
            let idx = resolve_wall(&fan, &walls, spec)?;
            let split = splitting_type(&fan, &walls[idx])?;
            Ok((report::splitting(&split)?, 0))
        }
        None => {
            let entries = walls
                .iter()
                .map(|w| report::splitting(&splitting_type(&fan, w)?))
                .collect::<Result<Vec<Value>, CliError>>()?;
            Ok((json!({ "walls": entries }), 0))
        }
    }
}

fn cmd_classify(path: &Path) -> Result<(Value, u8), CliError> {
    let (fan, _) = load_fan(path)?;
    let class = classify_tangent(&fan)?;
    Ok((report::positivity(&class), 0))
}

fn build_polytope<'a>(
    fan: &'a Fan,
    divisor: &DivisorCoefficients,
) -> Result<LatticePolytope<'a>, CliError> {
    Ok(polytope_from_divisor(fan, divisor)?)
}

fn cmd_polytope(path: &Path, choice: &DivisorChoice) -> Result<(Value, u8), CliError> {
    let (fan, _) = load_fan(path)?;
    let divisor = resolve_divisor(&fan, choice)?;
    let poly = build_polytope(&fan, &divisor)?;
    let vertices = poly
        .vertices()
        .iter()
        .map(report::vector)
        .collect::<Result<Vec<Value>, _>>()?;
    let edges: Vec<Value> = poly
        .walls()
        .iter()
        .map(|w| json!({ "shared_rays": w.shared_rays, "from": w.side_a, "to": w.side_b }))
        .collect();
    let faces: Vec<Value> = poly
        .two_faces()
        .iter()
        .map(|f| json!({ "rays": f.rays, "cone_cycle": f.cone_cycle, "wall_cycle": f.wall_cycle }))
        .collect();
    let value = json!({
        "divisor": report::divisor(&divisor)?,
        "vertices": vertices,
        "edges": edges,
        "two_faces": faces,
    });
    Ok((value, 0))
}

fn cmd_angles(path: &Path, choice: &DivisorChoice) -> Result<(Value, u8), CliError> {
    let (fan, _) = load_fan(path)?;
    let divisor = resolve_divisor(&fan, choice)?;
    let poly = build_polytope(&fan, &divisor)?;
    let mut angles = Vec::new();
    for (fidx, face) in poly.two_faces().iter().enumerate() {
        for &widx in &face.wall_cycle {
            let sign = angle_sum_sign(&poly, widx, fidx)?;
            angles.push(json!({
                "wall": report::wall(&poly.walls()[widx]),
                "face_rays": face.rays,
                "sign": sign.sign,
            }));
        }
    }
    let value = json!({
        "divisor": report::divisor(&divisor)?,
        "angles": angles,
    });
    Ok((value, 0))
}

fn cmd_verify(path: &Path, divisor: Option<&Path>) -> Result<(Value, u8), CliError> {
    let (fan, _) = load_fan(path)?;
    let divisor = divisor.map(|p| load_divisor(&fan, p)).transpose()?;
    let report = verify_theorem(&fan, divisor.as_ref())?;
    let code = if report.pass { 0 } else { 3 };
    Ok((report::theorem(&report)?, code))
}

fn cmd_census(max_rays: usize, max_abs_d: i64) -> Result<(Value, u8), CliError> {
    if max_rays < 3 || max_abs_d < 1 {
        return Err(CliError::new(
            Kind::Input,
            "census requires --max-rays >= 3 and --max-abs-d >= 1",
        ));
    }
    let table = census(max_rays, max_abs_d)?;
    let entries = table
        .entries
        .iter()
        .map(|e| {
            let code = e
                .code
                .values()
                .iter()
                .map(report::int)
                .collect::<Result<Vec<i64>, _>>()?;
            Ok(json!({
                "code": code,
                "verdict": report::verdict(e.classification.verdict),
            }))
        })
        .collect::<Result<Vec<Value>, CliError>>()?;
    let value = json!({
        "max_rays": max_rays,
        "max_abs_d": max_abs_d,
        "entries": entries,
        "counts": {
            "ample": table.count(toric::Verdict::Ample),
            "nef_not_ample": table.count(toric::Verdict::NefNotAmple),
            "not_nef": table.count(toric::Verdict::NotNef),
        },
    });
    Ok((value, 0))
}

fn cmd_render(
    path: &Path,
    divisor: Option<&Path>,
    output: &Path,
) -> Result<(Value, u8), CliError> {
    let (fan, _) = load_fan(path)?;
    let divisor = divisor.map(|p| load_divisor(&fan, p)).transpose()?;
    let svg_text = match &divisor {
        Some(c) => {
            let poly = build_polytope(&fan, c)?;
            svg::render_svg(&fan, Some(&poly))?
        }
        None => svg::render_svg(&fan, None)?,
    };
    std::fs::write(output, &svg_text)
        .map_err(|e| CliError::new(Kind::Input, format!("{}: {e}", output.display())))?;
    let value = json!({
        "output": output.display().to_string(),
        "bytes": svg_text.len(),
    });
    Ok((value, 0))
}
