mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cone_walls::arith::{int, is_square, isqrt, sqrt_decimal};
use cone_walls::cones::{enumerate_walls, movable_boundary, table1, Table1Row, WallCaps};
use cone_walls::cones::{TABLE1_DEGREES, TABLE1_SQUARE_DEGREES};
use cone_walls::nested::{eps_inf, mds_obstructed, nagata_value_compare, NestedSurface};
use cone_walls::pell::{first_with_divisibility, pell_solutions, solve_two_term, PellSolution};
use cone_walls::seshadri::{
    best_bound, bound_general_type, bound_k3, check_observation, knutsen_bound, scan_comparison,
    szemberg_conjecture_bound, table2, ScanOptions, Table2Row, TABLE2_DEGREES,
};
use num_bigint::BigInt;
use serde_json::json;

use report::{Cell, Format, Report, Row};

const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const M_MAX_ENV: &str = "CONE_WALLS_M_MAX";

#[derive(Parser)]
#[command(
    name = "cone-walls",
    version,
    about = "Movable cones, walls and Seshadri bounds for Hilbert schemes of points"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    /// Decimal places for rounded rational output.
    #[arg(long, default_value_t = 3, global = true)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Degree {
    /// Number of points n of X^[n].
    #[arg(long)]
    n: u64,
    /// Degree H·H of the polarisation (even).
    #[arg(long)]
    h2: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary ray H - mu·B of the movable cone.
    Movable(Degree),
    /// Interior walls of the movable cone.
    Walls {
        #[command(flatten)]
        degree: Degree,
        /// Largest |m| searched (overrides CONE_WALLS_M_MAX and the default rule).
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// Movable cones and walls of X^[3] for the reference degrees.
    Table1 {
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// K3 Seshadri bounds against floor(sqrt(H^2)).
    Table2 {
        /// Even degrees up to this value.
        #[arg(long, default_value_t = 80)]
        max_h2: u64,
        /// Only the reference degrees 8, 14, ..., 80.
        #[arg(long)]
        paper_rows: bool,
        #[arg(long)]
        include_squares: bool,
    },
    /// Fraction of even degrees where the K3 bound beats floor(sqrt(H^2)).
    Scan {
        #[arg(long)]
        max_h2: u64,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        include_squares: bool,
    },
    /// Seshadri lower bounds side by side.
    Bounds {
        #[arg(long)]
        h2: u64,
        /// K = a·H.
        #[arg(long, default_value_t = 0)]
        a: u64,
        /// Smallest b with b·H effective (general type only).
        #[arg(long)]
        b: Option<u64>,
    },
    /// Where H^[3] - (eps/2)·B sits in the movable cone.
    CheckObservation {
        #[arg(long)]
        h2: u64,
    },
    /// Pell equations: x^2 - D y^2 = 1, or A x^2 - B y^2 = 1 with --a/--b.
    Pell {
        #[arg(long, required_unless_present = "a", conflicts_with_all = ["a", "b"])]
        d: Option<u64>,
        /// First solution with q | x + 1.
        #[arg(long, requires = "d", conflicts_with = "count")]
        q: Option<u64>,
        /// Number of solutions to list.
        #[arg(long, requires = "d")]
        count: Option<usize>,
        #[arg(long, requires = "b")]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
    },
    /// Infimum Seshadri constants from nested Hilbert schemes X^[r, r+1].
    Nested {
        #[arg(long, value_enum)]
        surface: SurfaceArg,
        #[arg(long)]
        r: u64,
        /// K3 degree.
        #[arg(long, required_if_eq("surface", "k3"))]
        h2: Option<u64>,
        /// Hirzebruch F_e with H = a·C + b·F.
        #[arg(long, required_if_eq("surface", "hirzebruch"))]
        e: Option<u64>,
        #[arg(long, required_if_eq("surface", "hirzebruch"))]
        a: Option<u64>,
        #[arg(long, required_if_eq("surface", "hirzebruch"))]
        b: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Plane,
    Hirzebruch,
    K3,
}

/// A failure after parsing: bad environment (usage) or a library error.
enum Failure {
    Usage(String),
    Domain(cone_walls::Error),
}

impl From<cone_walls::Error> for Failure {
    fn from(e: cone_walls::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (name, inputs) = describe(&cli.command);
    match run(&cli.command, cli.precision) {
        Ok(report) => {
            print!("{}", report.render(cli.format, cli.precision));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(err)) => {
            if cli.format == Format::Json {
                let inputs = Report::new(name, inputs).json_value(cli.precision)["inputs"].clone();
                let doc = json!({ "command": name, "inputs": inputs, "error": err.to_string() });
                print!("{}", report::pretty(&doc));
            }
            eprintln!("error: {err}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

fn describe(cmd: &Command) -> (&'static str, Row) {
    match cmd {
        Command::Movable(g) => ("movable", vec![("n", g.n.into()), ("h2", g.h2.into())]),
        Command::Walls { degree: g, m_max } => (
            "walls",
            vec![
                ("n", g.n.into()),
                ("h2", g.h2.into()),
                ("m_max", (*m_max).into()),
            ],
        ),
        Command::Table1 { m_max } => ("table1", vec![("m_max", (*m_max).into())]),
        Command::Table2 {
            max_h2,
            paper_rows,
            include_squares,
        } => (
            "table2",
            vec![
                ("max_h2", (!paper_rows).then_some(*max_h2).into()),
                ("paper_rows", (*paper_rows).into()),
                ("include_squares", (*include_squares).into()),
            ],
        ),
        Command::Scan {
            max_h2,
            jobs,
            include_squares,
        } => (
            "scan",
            vec![
                ("max_h2", (*max_h2).into()),
                ("jobs", jobs.map(|j| j as u64).into()),
                ("include_squares", (*include_squares).into()),
            ],
        ),
        Command::Bounds { h2, a, b } => (
            "bounds",
            vec![("h2", (*h2).into()), ("a", (*a).into()), ("b", (*b).into())],
        ),
        Command::CheckObservation { h2 } => ("check-observation", vec![("h2", (*h2).into())]),
        Command::Pell { d, q, count, a, b } => (
            "pell",
            vec![
                ("d", (*d).into()),
                ("q", (*q).into()),
                ("count", count.map(|c| c as u64).into()),
                ("a", (*a).into()),
                ("b", (*b).into()),
            ],
        ),
        Command::Nested {
            surface,
            r,
            h2,
            e,
            a,
            b,
        } => (
            "nested",
            vec![
                ("surface", surface_name(*surface).into()),
                ("r", (*r).into()),
                ("h2", (*h2).into()),
                ("e", (*e).into()),
                ("a", (*a).into()),
                ("b", (*b).into()),
            ],
        ),
    }
}

fn run(cmd: &Command, places: u32) -> Outcome {
    let (name, inputs) = describe(cmd);
    let report = Report::new(name, inputs);
    match cmd {
        Command::Movable(g) => movable(report, g),
        Command::Walls { degree, m_max } => walls(report, degree, *m_max),
        Command::Table1 { m_max } => cmd_table1(report, *m_max),
        Command::Table2 {
            max_h2,
            paper_rows,
            include_squares,
        } => cmd_table2(report, *max_h2, *paper_rows, *include_squares, places),
        Command::Scan {
            max_h2,
            jobs,
            include_squares,
        } => scan(report, *max_h2, *jobs, *include_squares),
        Command::Bounds { h2, a, b } => bounds(report, *h2, *a, *b),
        Command::CheckObservation { h2 } => observation(report, *h2),
        Command::Pell { d, q, count, a, b } => pell(report, *d, *q, *count, *a, *b),
        Command::Nested {
            surface,
            r,
            h2,
            e,
            a,
            b,
        } => nested(report, places, *surface, *r, *h2, *e, *a, *b),
    }
}

fn half(h2: u64) -> Result<u64, Failure> {
    if h2 < 2 || h2 % 2 == 1 {
        return Err(cone_walls::Error::InvalidInput(format!(
            "H^2 = {h2} must be even and at least 2"
        ))
        .into());
    }
    Ok(h2 / 2)
}

/// `--m-max`, else `CONE_WALLS_M_MAX`, else the library default.
fn cap_override(flag: Option<u64>) -> Result<Option<WallCaps>, Failure> {
    let m_max = match flag {
        Some(m) => Some(m),
        None => match std::env::var(M_MAX_ENV) {
            Ok(raw) => Some(
                raw.trim()
                    .parse::<u64>()
                    .ok()
                    .filter(|m| *m > 0)
                    .ok_or_else(|| {
                        Failure::Usage(format!("{M_MAX_ENV}={raw:?} is not a positive integer"))
                    })?,
            ),
            Err(_) => None,
        },
    };
    Ok(m_max.map(|m_max| WallCaps { m_max }))
}

fn pell_pair(sol: &PellSolution) -> [(&'static str, Cell); 2] {
    [
        ("x", Cell::Big(sol.x().clone())),
        ("y", Cell::Big(sol.y().clone())),
    ]
}

fn movable(report: Report, g: &Degree) -> Outcome {
    let d = half(g.h2)?;
    let cone = movable_boundary(g.n, d)?;
    Ok(report.row(vec![
        ("mu", cone.mu.clone().into()),
        ("case", u64::from(cone.case.number()).into()),
        ("case_name", cone.case.name().into()),
        ("witness", cone.witness.to_string().into()),
        ("witness_x", Cell::Big(cone.witness.x().clone())),
        ("witness_y", Cell::Big(cone.witness.y().clone())),
    ]))
}

fn walls(mut report: Report, g: &Degree, m_max: Option<u64>) -> Outcome {
    let d = half(g.h2)?;
    let set = enumerate_walls(g.n, d, cap_override(m_max)?)?;
    let status = |row: &mut Row| {
        row.push(("m_max", set.caps.m_max.into()));
        row.push(("cap_warning", set.cap_warning.into()));
    };
    for w in &set.walls {
        let mut row: Row = vec![
            ("kind", "wall".into()),
            ("slope", w.slope.clone().into()),
            ("witness", w.witness.to_string().into()),
        ];
        status(&mut row);
        report = report.row(row);
    }
    let mut row: Row = vec![
        ("kind", "boundary".into()),
        ("slope", set.cone.mu.clone().into()),
        (
            "witness",
            set.boundary_witness.as_ref().map(|a| a.to_string()).into(),
        ),
    ];
    status(&mut row);
    Ok(report.row(row))
}

fn cmd_table1(mut report: Report, m_max: Option<u64>) -> Outcome {
    let degrees: Vec<u64> = TABLE1_DEGREES
        .iter()
        .chain(&TABLE1_SQUARE_DEGREES)
        .copied()
        .collect();
    let rows = match cap_override(m_max)? {
        None => table1(&degrees)?,
        Some(caps) => degrees
            .iter()
            .map(|&h2| {
                let set = enumerate_walls(3, h2 / 2, Some(caps))?;
                Ok(Table1Row {
                    h2,
                    walls: set.slopes(),
                    mu: set.cone.mu.clone(),
                    case: set.cone.case,
                    cap_warning: set.cap_warning,
                })
            })
            .collect::<cone_walls::Result<Vec<_>>>()?,
    };
    for row in rows {
        report = report.row(vec![
            ("h2", row.h2.into()),
            (
                "walls",
                Cell::List(row.walls.into_iter().map(Cell::Ratio).collect()),
            ),
            ("mu", row.mu.into()),
            ("case", u64::from(row.case.number()).into()),
            ("cap_warning", row.cap_warning.into()),
        ]);
    }
    Ok(report)
}

fn cmd_table2(
    mut report: Report,
    max_h2: u64,
    paper_rows: bool,
    include_squares: bool,
    places: u32,
) -> Outcome {
    let degrees: Vec<u64> = if paper_rows {
        TABLE2_DEGREES.to_vec()
    } else {
        (1..=max_h2 / 2)
            .map(|d| 2 * d)
            .filter(|h| include_squares || !is_square(&BigInt::from(*h)))
            .collect()
    };
    // decimals are rendered at output time; the library's strings go unused
    let rows: Vec<Table2Row> = table2(&degrees, 0)?;
    for row in rows {
        let better = row.bound > int(row.knutsen);
        report = report.row(vec![
            ("h2", row.h2.into()),
            ("n", row.n.into()),
            ("bound", row.bound.into()),
            ("knutsen", row.knutsen.into()),
            (
                "sqrt_h2",
                sqrt_decimal(&BigInt::from(row.h2), places).into(),
            ),
            ("better", better.into()),
        ]);
    }
    Ok(report)
}

fn scan(report: Report, max_h2: u64, jobs: Option<usize>, include_squares: bool) -> Outcome {
    if jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let summary = scan_comparison(
        max_h2,
        ScanOptions {
            include_squares,
            jobs,
        },
    )?;
    let millis = start.elapsed().as_millis() as u64;
    let fraction = match summary.fraction_exact() {
        Some(q) => Cell::Ratio(q),
        None => "0/0".into(),
    };
    Ok(report.row(vec![
        ("better", summary.better.into()),
        ("total", summary.total.into()),
        ("fraction", fraction),
        ("duration_ms", millis.into()),
    ]))
}

fn bounds(report: Report, h2: u64, a: u64, b: Option<u64>) -> Outcome {
    let corollary = match (a, b) {
        (_, Some(b)) => Some(bound_general_type(h2, a, b)?),
        (0, None) if h2.is_multiple_of(2) => Some(bound_k3(h2)?),
        _ => None,
    };
    let best = best_bound(h2, a)?;
    let szemberg = match szemberg_conjecture_bound(h2) {
        Ok(q) => Some(q),
        Err(cone_walls::Error::PerfectSquare(_)) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(report.row(vec![
        ("knutsen", knutsen_bound(h2).into()),
        (
            "corollary",
            corollary.as_ref().map(|c| c.value.clone()).into(),
        ),
        ("corollary_n", corollary.as_ref().map(|c| c.n).into()),
        ("best", best.value.into()),
        ("best_n", best.n.into()),
        ("szemberg_conjecture", szemberg.into()),
    ]))
}

fn observation(report: Report, h2: u64) -> Outcome {
    half(h2)?;
    let r = check_observation(h2)?;
    Ok(report.row(vec![
        ("verdict", r.verdict.to_string().into()),
        ("epsilon", r.epsilon.value.clone().into()),
        ("status", r.epsilon.status.to_string().into()),
        (
            "source",
            (!r.epsilon.source.is_empty())
                .then_some(r.epsilon.source)
                .into(),
        ),
        ("slope", r.slope.clone().into()),
        ("mu", r.mu.clone().into()),
        (
            "walls",
            Cell::List(r.walls.iter().cloned().map(Cell::Ratio).collect()),
        ),
    ]))
}

fn pell(
    mut report: Report,
    d: Option<u64>,
    q: Option<u64>,
    count: Option<usize>,
    a: Option<u64>,
    b: Option<u64>,
) -> Outcome {
    report.empty = "no solution";
    if let (Some(a), Some(b)) = (a, b) {
        return Ok(match solve_two_term(a, b)? {
            Some(sol) => report.row(pell_pair(&sol).into()),
            None => report,
        });
    }
    let d = d.expect("clap enforces --d or --a/--b");
    if let Some(q) = q {
        return Ok(match first_with_divisibility(d, q)? {
            Some(sol) => report.row(pell_pair(&sol).into()),
            None => report,
        });
    }
    let sols = pell_solutions(d, count.unwrap_or(1))?;
    for (k, sol) in sols.iter().enumerate() {
        let mut row: Row = vec![("k", (k as u64 + 1).into())];
        row.extend(pell_pair(sol));
        report = report.row(row);
    }
    Ok(report)
}

fn surface_name(s: SurfaceArg) -> &'static str {
    match s {
        SurfaceArg::Plane => "plane",
        SurfaceArg::Hirzebruch => "hirzebruch",
        SurfaceArg::K3 => "k3",
    }
}

/// `√(h2 / r)` rounded half-to-even to `places` digits, as a string.
fn sqrt_ratio_decimal(h2: u64, r: u64, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(2 * places);
    let num = BigInt::from(h2) * &scale;
    let den = BigInt::from(r);
    // floor(√(num/den)) = floor(√floor(num/den))
    let mut root = isqrt(&(&num / &den));
    let up: BigInt = &root * 2u32 + 1u32;
    // round up when (root + 1/2)² < num/den; ties are impossible
    if &up * &up * &den < num * 4u32 {
        root += 1u32;
    }
    let digits = format!("{:0>width$}", root, width = places as usize + 1);
    let (whole, frac) = digits.split_at(digits.len() - places as usize);
    if places == 0 {
        whole.to_string()
    } else {
        format!("{whole}.{frac}")
    }
}

fn nested(
    report: Report,
    places: u32,
    surface: SurfaceArg,
    r: u64,
    h2: Option<u64>,
    e: Option<u64>,
    a: Option<u64>,
    b: Option<u64>,
) -> Outcome {
    let (s, degree) = match surface {
        SurfaceArg::Plane => (NestedSurface::ProjectivePlane, 1),
        SurfaceArg::K3 => {
            let h2 = h2.expect("clap requires --h2");
            (NestedSurface::k3(h2)?, h2)
        }
        SurfaceArg::Hirzebruch => {
            let (e, a, b) = (e.unwrap(), a.unwrap(), b.unwrap());
            let s = NestedSurface::hirzebruch(e, a, b)?;
            // H² = (aC + bF)² = -a²e + 2ab
            (s, 2 * a * b - a * a * e)
        }
    };
    let eps = eps_inf(&s, r)?;
    let cmp = nagata_value_compare(degree, r, &eps)?;
    let mds = mds_obstructed(degree, r, matches!(surface, SurfaceArg::Plane))?;
    Ok(report.row(vec![
        ("h2", degree.into()),
        ("eps_inf", eps.into()),
        ("nagata", sqrt_ratio_decimal(degree, r, places).into()),
        ("versus_nagata", cmp.to_string().into()),
        ("mds", format!("{:?}", mds.verdict).into()),
        ("assumes_nagata", mds.assumes_nagata.into()),
        (
            "plane_square_obstruction",
            mds.plane_square_obstruction.into(),
        ),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_ratio_rounding() {
        assert_eq!(sqrt_ratio_decimal(1, 16, 3), "0.250");
        assert_eq!(sqrt_ratio_decimal(2, 1, 3), "1.414");
        assert_eq!(sqrt_ratio_decimal(10, 3, 4), "1.8257");
        assert_eq!(sqrt_ratio_decimal(80, 1, 0), "9");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
