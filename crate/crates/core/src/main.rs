use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use isocanted::classes::{isocanted_matrix, IsocantedSpec, Placement};
use isocanted::combinatorics::{build_face_lattice, fvector_formula};
use isocanted::conjectures::{run_all, run_check, ConjectureReport, DimRange};
use isocanted::error::{Error, Result};
use isocanted::geometry::{enumerate_vertices_oracle, hrep_from_matrix, isocanted_vertices};
use isocanted::io::{build_mesh, classify, matrix_to_json, parse_matrix_json, DEFAULT_PRECISION};
use isocanted::rational::{format_rational, parse_rational, Rational};

#[derive(Parser)]
#[command(
    name = "isocanted",
    version,
    about = "Isocanted alcoved polytopes: matrices, vertices, faces and f-vector checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Off,
    Obj,
}

#[derive(Args)]
struct SpecArgs {
    /// Dimension d
    #[arg(long)]
    dim: usize,
    /// Edge length of the bounding cube
    #[arg(long, value_parser = parse_rational_arg)]
    ell: Rational,
    /// Cant parameter, 0 < a < ell
    #[arg(long, value_parser = parse_rational_arg)]
    a: Rational,
    #[arg(long, value_enum, default_value = "vni")]
    placement: PlacementArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    Vni,
    Sni,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Vni => Placement::Vni,
            PlacementArg::Sni => Placement::Sni,
        }
    }
}

impl SpecArgs {
    fn spec(&self) -> Result<IsocantedSpec> {
        IsocantedSpec::new(self.dim, self.ell.clone(), self.a.clone())
    }
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix file (use "-" for stdin)
    Classify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the isocanted matrix as a matrix file
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the labelled vertices
    Vertices {
        #[command(flatten)]
        spec: SpecArgs,
        /// Enumerate with the brute-force oracle instead of the closed form
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the f-vector
    Fvector {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List every proper face as an interval [X, Y]
    Lattice {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the conjecture checks; exits 1 if any fails
    Verify {
        /// Check names (default: all)
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long, default_value = "2..60")]
        range: DimRange,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export the 3-dimensional polytope as a mesh
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "off")]
        format: MeshFormat,
        /// Significant digits for coordinates
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn spec_json(spec: &IsocantedSpec, placement: Placement) -> serde_json::Value {
    json!({
        "d": spec.d(),
        "ell": spec.ell().map(format_rational),
        "a": format_rational(spec.a()),
        "placement": placement,
    })
}

fn reports_table(reports: &[ConjectureReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:<12} {:>3}..{:<3} {status}", r.name, r.d_min, r.d_max);
        for w in r.failures() {
            let _ = writeln!(out, "    d={}: {}", w.d, w.counterexample.as_deref().unwrap_or("failed"));
        }
    }
    out
}

/// `Ok(true)` on success, `Ok(false)` on a verification failure.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Classify { input, format, output } => {
            let text = if input.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&input)?
            };
            let report = classify(&parse_matrix_json(&text)?);
            let out = match format {
                Format::Json => pretty(&report)?,
                Format::Table => report.to_table(),
            };
            emit(&output, &out)?;
        }
        Command::Build { spec, output } => {
            let s = spec.spec()?;
            emit(&output, &matrix_to_json(&isocanted_matrix(&s, spec.placement.into())))?;
        }
        Command::Vertices { spec, oracle, format, output } => {
            let s = spec.spec()?;
            let placement: Placement = spec.placement.into();
            let set = if oracle {
                let h = hrep_from_matrix(&isocanted_matrix(&s, placement))?;
                enumerate_vertices_oracle(&h)?.with_isocanted_labels(&s, placement)?
            } else {
                isocanted_vertices(&s, placement)?
            };
            let out = match format {
                Format::Json => {
                    let vertices: Vec<_> =
                        set.labeled.iter().map(|(w, p)| json!({"label": w, "length": w.len(), "point": p})).collect();
                    let unlabeled: Vec<_> = set.unlabeled.iter().collect();
                    pretty(&json!({
                        "spec": spec_json(&s, placement),
                        "source": if oracle { "oracle" } else { "closed-form" },
                        "vertices": vertices,
                        "unlabeled": unlabeled,
                    }))?
                }
                Format::Table => {
                    let mut t = String::new();
                    for (w, p) in &set.labeled {
                        let _ = writeln!(t, "{w:<10} {p}");
                    }
                    for p in &set.unlabeled {
                        let _ = writeln!(t, "{:<10} {p}", "?");
                    }
                    t
                }
            };
            emit(&output, &out)?;
        }
        Command::Fvector { dim, format, output } => {
            let f = fvector_formula(dim)?;
            let out = match format {
                Format::Json => pretty(&json!({"d": dim, "fvector": f}))?,
                Format::Table => f.to_string(),
            };
            emit(&output, &out)?;
        }
        Command::Lattice { dim, format, output } => {
            let lattice = build_face_lattice(dim)?;
            let out = match format {
                Format::Json => {
                    let faces: Vec<_> =
                        lattice.iter().map(|f| json!({"dim": f.dim(), "bottom": f.bottom(), "top": f.top()})).collect();
                    pretty(&json!({"d": dim, "counts": lattice.counts(), "faces": faces}))?
                }
                Format::Table => {
                    let mut t = String::new();
                    for f in lattice.iter() {
                        let _ = writeln!(t, "{} {f}", f.dim());
                    }
                    t
                }
            };
            emit(&output, &out)?;
        }
        Command::Verify { checks, range, format, output } => {
            let reports = if checks.is_empty() {
                run_all(range)?
            } else {
                let mut v = Vec::new();
                for name in &checks {
                    match run_check(name, range)? {
                        Some(r) => v.push(r),
                        None => return Err(Error::InvalidRange(format!("{name} has no dimension in {range}"))),
                    }
                }
                v
            };
            let out = match format {
                Format::Json => pretty(&reports)?,
                Format::Table => reports_table(&reports),
            };
            emit(&output, &out)?;
            return Ok(reports.iter().all(ConjectureReport::passed));
        }
        Command::Export { spec, format, precision, output } => {
            let s = spec.spec()?;
            let mesh = build_mesh(&s, spec.placement.into(), precision)?;
            let out = match format {
                MeshFormat::Off => mesh.to_off(),
                MeshFormat::Obj => mesh.to_obj(),
            };
            emit(&output, &out)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
