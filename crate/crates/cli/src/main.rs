use std::process::ExitCode;

use acstk_core::cayley_dickson::CDElement;
use acstk_core::genera::{bernoulli_numbers, l_polynomial, q_series};
use acstk_core::obstruction::{
    classify_range, classify_sphere_with, Certificate, SphereVerdict, DEFAULT_SAMPLES,
};
use acstk_core::rational::{format_q, parse_q_list};
use acstk_core::sphere_acs::{
    compare_nijenhuis_associator, level_for_sphere, nijenhuis_report, rational_sphere_point,
    tangent_projection, verify_j, SpherePoint, TangentVector,
};
use acstk_core::{Error, Q};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "acstk",
    version,
    about = "Exact computations for almost complex structures on spheres"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled checks
    #[arg(long, global = true, env = "ACSTK_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether S^n admits an almost complex structure
    Classify {
        n: Option<u32>,
        /// Inclusive range `A..B`
        #[arg(long, value_parser = parse_range, conflicts_with = "n")]
        range: Option<(u32, u32)>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Print the L-polynomials L_1..L_K
    Lpoly {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        latex: bool,
    },
    /// Print a power series
    Series {
        #[command(subcommand)]
        which: SeriesKind,
    },
    /// Check J^2 = -Id, tangency and isometry on random rational samples
    VerifyJ {
        #[arg(long, value_parser = parse_sphere)]
        sphere: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Evaluate the Nijenhuis tensor of J at a point
    Nijenhuis {
        #[arg(long, value_parser = parse_sphere)]
        sphere: u32,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Compare <N(u,v), w> with the associator [u,v,w] on S^6
    AssocCompare {
        #[arg(long, value_parser = parse_s6)]
        sphere: u32,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Print the Bernoulli numbers B_1..B_K (B_1 = 1/6)
    Bernoulli {
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum SeriesKind {
    /// sqrt(z)/tanh(sqrt(z))
    Q {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args)]
struct PointArgs {
    /// Stereographic parameters q1,...,qn of the base point
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    /// Ambient imaginary coordinates of u, projected to the tangent space
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    /// Ambient imaginary coordinates of v, projected to the tangent space
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("range must satisfy 1 <= A <= B, got {s}"));
    }
    Ok((a, b))
}

fn parse_sphere(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(n @ (2 | 6)) => Ok(n),
        _ => Err(format!("sphere must be 2 or 6, got {s}")),
    }
}

fn parse_s6(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(6) => Ok(6),
        _ => Err(format!("only S^6 is supported, got {s}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn run(cli: &Cli) -> acstk_core::Result<String> {
    match &cli.command {
        Command::Classify { n, range, samples } => {
            let verdicts = match (n, range) {
                (Some(n), None) => vec![classify_sphere_with(*n, *samples, cli.seed)?],
                (None, Some((a, b))) => classify_range(*a..=*b, *samples, cli.seed)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give either <n> or --range A..B".into(),
                    ))
                }
            };
            if cli.json {
                return Ok(match (n, verdicts.as_slice()) {
                    (Some(_), [v]) => to_json(v),
                    _ => to_json(&verdicts),
                });
            }
            Ok(verdicts
                .iter()
                .map(verdict_line)
                .collect::<Vec<_>>()
                .join("\n"))
        }
        Command::Lpoly { k, latex } => {
            if *k == 0 {
                return Err(Error::InvalidArgument("--k must be at least 1".into()));
            }
            let mut polys = Vec::with_capacity(*k);
            for i in 1..=*k {
                polys.push(l_polynomial(i)?);
            }
            if cli.json {
                let rows: Vec<_> = polys
                    .iter()
                    .enumerate()
                    .map(|(i, p)| json!({"k": i + 1, "polynomial": p.to_string(), "latex": p.to_latex()}))
                    .collect();
                return Ok(to_json(&rows));
            }
            Ok(polys
                .iter()
                .enumerate()
                .map(|(i, p)| match latex {
                    true => format!("L_{{{}}} = {}", i + 1, p.to_latex()),
                    false => format!("L{} = {}", i + 1, p),
                })
                .collect::<Vec<_>>()
                .join("\n"))
        }
        Command::Series {
            which: SeriesKind::Q { order },
        } => {
            let qs = q_series(*order);
            let coeffs: Vec<String> = qs.coeffs().iter().map(format_q).collect();
            if cli.json {
                return Ok(to_json(
                    &json!({"series": "q", "order": order, "coefficients": coeffs}),
                ));
            }
            Ok(coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| format!("z^{k}: {c}"))
                .collect::<Vec<_>>()
                .join("\n"))
        }
        Command::VerifyJ { sphere, samples } => {
            let report = verify_j(*sphere, *samples, cli.seed)?;
            if !report.passed {
                return Err(Error::Invariant(format!(
                    "J checks failed on S^{sphere}: {}",
                    to_json(&report)
                )));
            }
            if cli.json {
                return Ok(to_json(&report));
            }
            Ok(format!(
                "S^{}: {}/{} samples with J^2 = -Id, {} tangent, {} isometric (seed {})",
                report.sphere,
                report.j_squared_is_minus_identity,
                report.samples,
                report.j_tangent,
                report.isometry,
                report.seed
            ))
        }
        Command::Nijenhuis { sphere, point } => {
            let (p, u, v) = point_and_tangents(*sphere, point)?;
            let report = nijenhuis_report(&p, &u, &v)?;
            if cli.json {
                return Ok(to_json(&report));
            }
            Ok(format!(
                "p = {}\nu = {}\nv = {}\nN(u, v) = {}",
                report.point, report.u, report.v, report.nijenhuis
            ))
        }
        Command::AssocCompare { sphere, point, w } => {
            let (p, u, v) = point_and_tangents(*sphere, point)?;
            let w = tangent(&p, w, "--w")?;
            let report = compare_nijenhuis_associator(&p, &u, &v, &w)?;
            if cli.json {
                return Ok(to_json(&report));
            }
            let ratio = report
                .ratio
                .as_ref()
                .map_or_else(|| "undefined".to_string(), format_q);
            Ok(format!(
                "N(u, v) = {}\n<N(u, v), w> = {}\n[u, v, w] = {}\nratio = {}",
                report.nijenhuis,
                format_q(&report.nijenhuis_pairing),
                report.associator,
                ratio
            ))
        }
        Command::Bernoulli { k } => {
            if *k == 0 {
                return Err(Error::InvalidArgument("--k must be at least 1".into()));
            }
            let values: Vec<String> = bernoulli_numbers(*k).iter().map(format_q).collect();
            if cli.json {
                return Ok(to_json(&json!({"bernoulli": values})));
            }
            Ok(values
                .iter()
                .enumerate()
                .map(|(i, b)| format!("B{} = {b}", i + 1))
                .collect::<Vec<_>>()
                .join("\n"))
        }
    }
}

fn verdict_line(v: &SphereVerdict) -> String {
    let status = serde_json::to_value(v.status).expect("status serializes");
    let reason = serde_json::to_value(v.reason).expect("reason serializes");
    let witness = match &v.certificate {
        Certificate::OddDimension(c) => format!("(det J)^2 = {}", format_q(&c.det_squared)),
        Certificate::PontryaginEuler(c) => format!("pairing {}", format_q(&c.pairing)),
        Certificate::SignatureLGenus(c) => format!("witness {}", format_q(&c.witness)),
        Certificate::ChernDivisibility(c) => format!("{}! does not divide 2", c.rank - 1),
        Certificate::ExplicitConstruction(c) => {
            format!("{} samples verified", c.verification.samples)
        }
    };
    let mut line = format!(
        "S^{}: {} ({}), {}",
        v.n,
        status.as_str().unwrap_or_default(),
        reason.as_str().unwrap_or_default(),
        witness
    );
    for c in &v.corroborating {
        if let Certificate::SignatureLGenus(s) = c {
            line.push_str(&format!("; signature witness {}", format_q(&s.witness)));
        }
    }
    line
}

fn ambient(sphere: u32, text: &str, flag: &str) -> acstk_core::Result<CDElement> {
    let coords: Vec<Q> = parse_q_list(text)?;
    let expected = sphere as usize + 1;
    if coords.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "{flag} needs {expected} coordinates, got {}",
            coords.len()
        )));
    }
    CDElement::imaginary(level_for_sphere(sphere)?, coords)
}

fn tangent(p: &SpherePoint, text: &str, flag: &str) -> acstk_core::Result<TangentVector> {
    tangent_projection(p, &ambient(p.sphere_dim(), text, flag)?)
}

fn point_and_tangents(
    sphere: u32,
    args: &PointArgs,
) -> acstk_core::Result<(SpherePoint, TangentVector, TangentVector)> {
    let p = rational_sphere_point(sphere, &parse_q_list(&args.point)?)?;
    let u = tangent(&p, &args.u, "--u")?;
    let v = tangent(&p, &args.v, "--v")?;
    Ok((p, u, v))
}
