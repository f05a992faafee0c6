//! `chirolab` command line. Every subcommand prints one JSON document (or CSV
//! / SVG where asked) on stdout and exits 0 on success, 1 when a check finds
//! a violation and 2 on usage errors.

use std::ffi::OsString;
use std::path::PathBuf;

use chirolab::chirotope::{chirotope_of, family, signs_of, Chirotope};
use chirolab::classification::{
    alt_base_chirotope, classify, classify_batch, classify_fast, degeneracy_on_base_line,
    inequality_profile, region_minus, region_plus, region_zero, symbolic_determinant_table,
    ClassifyError, Label,
};
use chirolab::configuration::{agreement_check, closed_form, ParamPoint};
use chirolab::exact::{format_rational, parse_rational, poly_identities, Rational, Sign};
use chirolab::render::{render_svg, InfinityStyle, RenderOptions};
use chirolab::topology::{
    classify_grid, components_json, separation_witness, zero_sheet_samples, Adjacency, GridSpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "CHIRO_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn json(code: u8, payload: Value) -> Self {
        CommandResult {
            code,
            stdout: format!("{payload}\n"),
            stderr: String::new(),
        }
    }

    fn text(code: u8, stdout: String) -> Self {
        CommandResult {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: u8, message: String) -> Self {
        CommandResult {
            code,
            stdout: format!("{}\n", json!({ "error": message })),
            stderr: format!("error: {message}\n"),
        }
    }

    pub fn payload(&self) -> Option<Value> {
        serde_json::from_str(&self.stdout).ok()
    }
}

/// Sizes the global rayon pool from `CHIRO_THREADS`, if set.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "chirolab", version, about = "Exact checks for a 13-point family of rank-3 oriented matroids")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Member {
    Minus,
    Zero,
    Plus,
}

impl Member {
    fn sign(self) -> Sign {
        match self {
            Member::Minus => Sign::Neg,
            Member::Zero => Sign::Zero,
            Member::Plus => Sign::Pos,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Minus,
    Plus,
}

impl Target {
    fn label(self) -> Label {
        match self {
            Target::Minus => Label::Minus,
            Target::Plus => Label::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Neighbourhood {
    Face,
    FaceEdge,
    Full,
}

impl From<Neighbourhood> for Adjacency {
    fn from(n: Neighbourhood) -> Adjacency {
        match n {
            Neighbourhood::Face => Adjacency::Face,
            Neighbourhood::FaceEdge => Adjacency::FaceEdge,
            Neighbourhood::Full => Adjacency::Full,
        }
    }
}

#[derive(Debug, Args)]
struct Point {
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    s: Rational,
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    t: Rational,
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    u: Rational,
}

impl Point {
    fn param(&self) -> ParamPoint {
        ParamPoint::new(self.s.clone(), self.t.clone(), self.u.clone())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the chirotope axioms for one member of the family.
    Axioms { member: Member },
    /// Label a parameter point, or a batch of `s t u` lines with --batch.
    Classify {
        #[arg(value_parser = rational_arg, allow_hyphen_values = true, num_args = 3, value_names = ["S", "T", "U"], required_unless_present = "batch")]
        point: Vec<Rational>,
        /// Read points from a file (`-` for stdin) and write CSV.
        #[arg(long, conflicts_with = "point")]
        batch: Option<PathBuf>,
        /// Inequality route only.
        #[arg(long)]
        fast: bool,
    },
    /// Print the chirotope of X(s,t,u).
    Chirotope {
        #[command(flatten)]
        point: Point,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Expand the three factor identities.
    Identities,
    /// Check the ten determinant formulas symbolically.
    DetTable,
    /// Compare the construction sequence with the closed form.
    Agreement {
        #[command(flatten)]
        point: Point,
    },
    /// Count lattice components of a region.
    Components {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 32)]
        resolution: u32,
        #[arg(long, value_enum, default_value = "face-edge")]
        adjacency: Neighbourhood,
    },
    /// Certificate that the plane s = 1/2 separates a region.
    Separation {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 32)]
        resolution: u32,
    },
    /// Sample both sheets of the zero region and the path joining them.
    ZeroSheets {
        #[arg(long, default_value_t = 16)]
        m: u32,
    },
    /// Draw the affine image of X(s,t,u) as SVG.
    Render {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_lines: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        omit_infinity: bool,
    },
    /// Chirotope of the alternative base point X(1/2, 1/2, u').
    AltBase {
        #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
        u_prime: Rational,
    },
}

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                CommandResult::text(code, rendered)
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    dispatch(cli.command)
}

fn violation_code(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn classify_error(e: ClassifyError) -> CommandResult {
    CommandResult::error(EXIT_VIOLATION, e.to_string())
}

fn dispatch(command: Command) -> CommandResult {
    match command {
        Command::Axioms { member } => {
            let chi = family(member.sign());
            let r = chi.check_axioms();
            CommandResult::json(
                violation_code(r.passes()),
                json!({
                    "member": format!("{:?}", member).to_lowercase(),
                    "not_identically_zero": r.not_identically_zero,
                    "alternating": r.alternating,
                    "six_tuples_checked": 13u64.pow(6),
                    "violations": r.axiom3_violations.len(),
                    "first_violations": r.axiom3_violations.iter().take(10).collect::<Vec<_>>(),
                    "passes": r.passes(),
                }),
            )
        }
        Command::Classify { point, batch, fast } => {
            if let Some(path) = batch {
                let input = if path.as_os_str() == "-" {
                    std::io::read_to_string(std::io::stdin())
                } else {
                    std::fs::read_to_string(&path)
                };
                let input = match input {
                    Ok(s) => s,
                    Err(e) => return CommandResult::error(EXIT_USAGE, format!("{}: {e}", path.display())),
                };
                return match classify_batch(&input) {
                    Ok(csv) => CommandResult::text(EXIT_OK, csv),
                    Err(e @ chirolab::classification::BatchError::Classify(_)) => {
                        CommandResult::error(EXIT_VIOLATION, e.to_string())
                    }
                    Err(e) => CommandResult::error(EXIT_USAGE, e.to_string()),
                };
            }
            let p = ParamPoint::new(point[0].clone(), point[1].clone(), point[2].clone());
            let label = if fast { Ok(classify_fast(&p)) } else { classify(&p) };
            let label = match label {
                Ok(l) => l,
                Err(e) => return classify_error(e),
            };
            let sheets = region_zero(&p);
            let piece = |x: Option<chirolab::classification::Piece>| x.map(|p| format!("{p:?}"));
            CommandResult::json(
                EXIT_OK,
                json!({
                    "point": p.to_json(),
                    "label": label.as_str(),
                    "checked": !fast,
                    "sheet_s": sheets.sheet_s,
                    "sheet_t": sheets.sheet_t,
                    "region_minus": piece(region_minus(&p)),
                    "region_plus": piece(region_plus(&p)),
                    "profile": inequality_profile(&p).to_json(),
                }),
            )
        }
        Command::Chirotope { point, json: _, csv } => {
            let chi = signs_of(&closed_form(&point.param()));
            if csv {
                CommandResult::text(EXIT_OK, chi.to_csv())
            } else {
                let mut v = chi.to_json();
                v["point"] = point.param().to_json();
                v["identically_zero"] = json!(chi.is_identically_zero());
                CommandResult::json(EXIT_OK, v)
            }
        }
        Command::Identities => {
            let ids = poly_identities();
            let ok = ids.iter().all(|i| i.holds());
            let rows: Vec<Value> = ids
                .iter()
                .map(|i| {
                    json!({
                        "name": i.name,
                        "lhs": i.lhs.to_string(),
                        "rhs": i.rhs.to_string(),
                        "difference": i.difference.to_string(),
                        "holds": i.holds(),
                    })
                })
                .collect();
            CommandResult::json(violation_code(ok), json!({ "identities": rows, "verified": ok }))
        }
        Command::DetTable => {
            let table = symbolic_determinant_table();
            let ok = table.iter().all(|r| r.holds());
            CommandResult::json(
                violation_code(ok),
                json!({
                    "rows": table.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    "verified": ok,
                }),
            )
        }
        Command::Agreement { point } => match agreement_check(&point.param()) {
            Ok(report) => CommandResult::json(violation_code(report.passes()), report.to_json()),
            Err(e) => CommandResult::error(EXIT_VIOLATION, e.to_string()),
        },
        Command::Components {
            target,
            resolution,
            adjacency,
        } => {
            let spec = match GridSpec::new(resolution) {
                Ok(s) => s,
                Err(e) => return CommandResult::error(EXIT_USAGE, e.to_string()),
            };
            match classify_grid(spec) {
                Ok(grid) => {
                    let g = grid.graph(target.label(), adjacency.into());
                    let mut v = components_json(&g);
                    v["adjacency"] = json!(adjacency.to_possible_value().map(|v| v.get_name().to_string()));
                    CommandResult::json(EXIT_OK, v)
                }
                Err(e) => CommandResult::error(EXIT_VIOLATION, e.to_string()),
            }
        }
        Command::Separation { target, resolution } => match separation_witness(target.label(), resolution) {
            Ok(cert) => CommandResult::json(violation_code(cert.certified()), cert.to_json()),
            Err(chirolab::topology::TopologyError::Classify(e)) => classify_error(e),
            Err(e) => CommandResult::error(EXIT_USAGE, e.to_string()),
        },
        Command::ZeroSheets { m } => match zero_sheet_samples(m) {
            Ok(z) => CommandResult::json(violation_code(z.passes()), z.to_json()),
            Err(chirolab::topology::TopologyError::Classify(e)) => classify_error(e),
            Err(e) => CommandResult::error(EXIT_USAGE, e.to_string()),
        },
        Command::Render {
            point,
            out,
            no_lines,
            no_labels,
            omit_infinity,
        } => {
            let options = RenderOptions {
                draw_lines: !no_lines,
                label_points: !no_labels,
                infinity_style: if omit_infinity {
                    InfinityStyle::Omit
                } else {
                    InfinityStyle::Arrow
                },
                ..RenderOptions::default()
            };
            let svg = match render_svg(&closed_form(&point.param()), &options) {
                Ok(svg) => svg,
                Err(e) => return CommandResult::error(EXIT_VIOLATION, e.to_string()),
            };
            match out {
                Some(path) => match std::fs::write(&path, &svg) {
                    Ok(()) => CommandResult::json(
                        EXIT_OK,
                        json!({ "out": path.display().to_string(), "bytes": svg.len() }),
                    ),
                    Err(e) => CommandResult::error(EXIT_USAGE, format!("{}: {e}", path.display())),
                },
                None => CommandResult::text(EXIT_OK, svg),
            }
        }
        Command::AltBase { u_prime } => {
            let degeneracy = degeneracy_on_base_line(&u_prime).to_json();
            match alt_base_chirotope(&u_prime) {
                Ok(chi) => {
                    let base = chirotope_of(&closed_form(&ParamPoint::base())).ok();
                    CommandResult::json(
                        EXIT_OK,
                        json!({
                            "u_prime": format_rational(&u_prime),
                            "equals_base": base.as_ref() == Some(&chi),
                            "zero_triples": zero_labels(&chi),
                            "degeneracy": degeneracy,
                        }),
                    )
                }
                Err(e) => CommandResult::json(
                    EXIT_VIOLATION,
                    json!({ "error": e.to_string(), "degeneracy": degeneracy }),
                ),
            }
        }
    }
}

fn zero_labels(chi: &Chirotope) -> Vec<[u8; 3]> {
    chi.zero_set().iter().map(|t| t.labels()).collect()
}
