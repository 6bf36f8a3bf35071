use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gscheme::algebra::json::AlgebraJson;
use gscheme::algebra::FiniteAlgebra;
use gscheme::error::Error;
use gscheme::exactalg::ring::elem_to_string;
use gscheme::exactalg::{Elem, Ring};
use gscheme::groups::{parse_group, parse_tower, CatalogGroup, Tower};
use gscheme::hopf::HopfAlgebra;
use gscheme::primitive::{
    is_nonnull_point, is_primitive_point, nonnull_scheme, primitive_scheme, PointJson, QuotientSchemeReport, ReportJson,
};
use gscheme::verify::{run_suite, Suite};
use serde_json::json;

const GRAMMAR: &str = "\
groups:
  constant:<n1>x<n2>...      constant group Z/n1 x Z/n2 x ...
  mu:<N>                     roots of unity of order N
  alpha:<p>                  alpha_p (ring of characteristic p)
  oort-tate:<p>:<a>          k[x]/(x^p - a x)
  raynaud:<p>:<d1>,...,<dn>  k[x_i]/(x_i^p - d_i x_(i+1))
towers:
  tower:mu:<p>:<r>
  tower:constant:<p>:<r>:<h>
  tower:product:<tower>+<tower>
rings:
  z, q, zmod:<N>";

#[derive(Parser)]
#[command(
    name = "gscheme",
    version,
    about = "Finite flat group schemes as Hopf algebras: non-null and primitive subschemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Common {
    /// Base ring: z, q or zmod:<N>.
    #[arg(long, default_value = "z")]
    ring: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog group or tower level and print its structure.
    Catalog {
        #[arg(long, conflicts_with = "tower")]
        group: Option<String>,
        #[arg(long)]
        tower: Option<String>,
        #[arg(long, requires = "tower")]
        level: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Non-null subscheme: the ideal J_G and the rank of A/J_G.
    Nonnull {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Primitive-element subscheme of a tower level.
    Primitive {
        #[arg(long)]
        tower: String,
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Test points read from a JSON file: non-null for a group, primitive for a tower level.
    Point {
        #[arg(long, conflicts_with = "tower", required_unless_present = "tower")]
        group: Option<String>,
        #[arg(long, requires = "level")]
        tower: Option<String>,
        #[arg(long)]
        level: Option<usize>,
        /// JSON array of {"target_ring": {...}, "values": [...]}.
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a property suite over the built-in grid: raynaud, products, extensions, towers or all.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A failure and its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidParams(_)
            | Error::InvalidElement(..)
            | Error::InvalidPoint(_)
            | Error::CharacteristicMismatch(_)
            | Error::UnsupportedRing(_)
            | Error::UnsupportedHom(..) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog {
            group,
            tower,
            level,
            common,
        } => catalog(group, tower, level, &common),
        Command::Nonnull { group, common } => nonnull(&group, &common),
        Command::Primitive { tower, level, common } => primitive(&tower, level, &common),
        Command::Point {
            group,
            tower,
            level,
            points,
            common,
        } => point(group, tower, level, &points, &common),
        Command::Verify { suite, format } => return verify(&suite, format),
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn ring_of(common: &Common) -> Result<Ring, Failure> {
    Ok(Ring::parse(&common.ring)?)
}

fn join(parts: impl IntoIterator<Item = String>) -> String {
    parts.into_iter().collect::<Vec<_>>().join(", ")
}

fn tensor_term(a: &FiniteAlgebra, j: usize, k: usize, c: &Elem) -> String {
    let c = a.ring().display_value(c);
    let basis = format!("{}⊗{}", a.labels()[j], a.labels()[k]);
    if c == Elem::from_integer(1.into()) {
        basis
    } else if c == Elem::from_integer((-1).into()) {
        format!("-{basis}")
    } else {
        format!("{}*{basis}", elem_to_string(&c))
    }
}

fn describe_hopf(h: &HopfAlgebra, out: &mut String) {
    let a = h.algebra();
    for i in 0..h.rank() {
        let terms: Vec<String> = h.coproduct(i).map(|(j, k, c)| tensor_term(a, j, k, c)).collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+").replace("+-", "-")
        };
        let _ = writeln!(out, "  Δ({}) = {body}", a.labels()[i]);
    }
}

fn describe(name: &str, g: &CatalogGroup) -> String {
    let aug = g.aug();
    let a = aug.algebra();
    let mut out = String::new();
    let _ = writeln!(out, "{name} over {}", a.ring());
    let _ = writeln!(out, "rank = {}", a.rank());
    let _ = writeln!(out, "basis = {}", join(a.labels().iter().cloned()));
    let unit = a.unit().to_vec();
    let products: Vec<String> = (0..a.rank())
        .flat_map(|i| (i..a.rank()).map(move |j| (i, j)))
        .filter(|&(i, j)| a.basis_vector(i) != unit && a.basis_vector(j) != unit)
        .map(|(i, j)| {
            let v = a.multiply(&a.basis_vector(i), &a.basis_vector(j));
            format!("{}*{} = {}", a.labels()[i], a.labels()[j], a.format_vector(&v))
        })
        .collect();
    if !products.is_empty() {
        let _ = writeln!(out, "products:");
        for p in products {
            let _ = writeln!(out, "  {p}");
        }
    }
    let _ = write!(out, "counit = ({})", join(aug.counit().iter().map(elem_to_string)));
    if let Some(h) = g.hopf() {
        let _ = writeln!(out, "\ncomultiplication:");
        describe_hopf(h, &mut out);
        out.pop();
    }
    out
}

fn level_of(t: &Tower, level: usize) -> Result<&HopfAlgebra, Failure> {
    Ok(t.level(level)?)
}

fn catalog(group: Option<String>, tower: Option<String>, level: Option<usize>, common: &Common) -> Outcome {
    let ring = ring_of(common)?;
    match (group, tower) {
        (Some(spec), _) => {
            let g = parse_group(&spec, &ring)?;
            Ok(match common.format {
                Format::Text => describe(&spec, &g),
                Format::Json => match &g {
                    CatalogGroup::Hopf(h) => h.to_json().to_json_string(),
                    CatalogGroup::Augmented(a) => AlgebraJson::from_augmented(a).to_json_string(),
                },
            })
        }
        (None, Some(spec)) => {
            let t = parse_tower(&spec, &ring)?;
            match (level, common.format) {
                (Some(i), Format::Text) => Ok(describe(
                    &format!("{spec} level {i}"),
                    &CatalogGroup::Hopf(level_of(&t, i)?.clone()),
                )),
                (Some(i), Format::Json) => Ok(level_of(&t, i)?.to_json().to_json_string()),
                (None, Format::Text) => {
                    let mut out = format!("{spec} over {ring}: p = {}, height = {}", t.p(), t.height());
                    for i in 1..=t.len() {
                        let _ = write!(out, "\n  level {i}: rank {}", level_of(&t, i)?.rank());
                    }
                    Ok(out)
                }
                (None, Format::Json) => {
                    let ranks = (1..=t.len())
                        .map(|i| level_of(&t, i).map(|l| l.rank()))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(json!({"tower": spec, "p": t.p(), "height": t.height(), "ranks": ranks}).to_string())
                }
            }
        }
        (None, None) => match common.format {
            Format::Text => Ok(GRAMMAR.to_string()),
            Format::Json => Err(usage("catalog --format json needs --group or --tower".into())),
        },
    }
}

fn generators(a: &FiniteAlgebra, r: &QuotientSchemeReport) -> String {
    join(r.generators.iter().map(|g| a.format_vector(g)))
}

fn report_json(a: &FiniteAlgebra, r: &QuotientSchemeReport) -> String {
    serde_json::to_string(&ReportJson::new(a, r)).expect("report serializes")
}

fn summand_check(r: &QuotientSchemeReport) -> Result<(), Failure> {
    if r.ideal_is_summand && r.is_free {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!(
                "ideal is not a direct summand (summand = {}, free quotient = {})",
                r.ideal_is_summand, r.is_free
            ),
        })
    }
}

fn nonnull(spec: &str, common: &Common) -> Outcome {
    let ring = ring_of(common)?;
    let g = parse_group(spec, &ring)?;
    let a = g.aug().algebra();
    let r = nonnull_scheme(g.aug())?;
    summand_check(&r)?;
    Ok(match common.format {
        Format::Json => report_json(a, &r),
        Format::Text => match g {
            CatalogGroup::Hopf(_) => format!("J = <{}>, rank(G^x) = {}", generators(a, &r), r.rank),
            CatalogGroup::Augmented(_) => format!("J = <{}>, rank = {}", generators(a, &r), r.rank),
        },
    })
}

fn primitive(spec: &str, level: usize, common: &Common) -> Outcome {
    let ring = ring_of(common)?;
    let t = parse_tower(spec, &ring)?;
    let a = level_of(&t, level)?.algebra();
    let r = primitive_scheme(&t, level)?;
    Ok(match common.format {
        Format::Json => report_json(a, &r),
        Format::Text => format!(
            "ideal = <{}>, rank = {}, expected = {}, OK",
            generators(a, &r),
            r.rank,
            r.expected_rank
        ),
    })
}

fn read_points(path: &PathBuf) -> Result<Vec<PointJson>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let value = if value.is_array() {
        value
    } else {
        serde_json::Value::Array(vec![value])
    };
    serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn point(
    group: Option<String>,
    tower: Option<String>,
    level: Option<usize>,
    path: &PathBuf,
    common: &Common,
) -> Outcome {
    let ring = ring_of(common)?;
    let pts = read_points(path)?;
    let (verdict, results) = match (group, tower, level) {
        (Some(spec), _, _) => {
            let g = parse_group(&spec, &ring)?;
            let res = pts
                .iter()
                .map(|p| {
                    let pt = p.to_point(g.aug().algebra())?;
                    Ok((p, is_nonnull_point(g.aug(), &pt)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            ("non-null", res)
        }
        (None, Some(spec), Some(i)) => {
            let t = parse_tower(&spec, &ring)?;
            let a = level_of(&t, i)?.algebra();
            let res = pts
                .iter()
                .map(|p| {
                    let pt = p.to_point(a)?;
                    Ok((p, is_primitive_point(&t, i, &pt)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            ("primitive", res)
        }
        _ => return Err(usage("point needs --group, or --tower with --level".into())),
    };
    Ok(match common.format {
        Format::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|(p, ok)| json!({"target_ring": p.target_ring, "values": p.values, verdict: ok}))
                .collect();
            serde_json::Value::Array(rows).to_string()
        }
        Format::Text => results
            .iter()
            .map(|(p, ok)| {
                let target = Ring::try_from(&p.target_ring)
                    .map(|r| r.to_string())
                    .unwrap_or_default();
                let not = if *ok { "" } else { "not " };
                format!("({}) over {target}: {not}{verdict}", p.values.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn verify(suite: &str, format: Format) -> ExitCode {
    let suite = match Suite::parse(suite) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let results = run_suite(suite);
    let failed = results.iter().filter(|c| !c.pass).count();
    match format {
        Format::Json => println!("{}", serde_json::to_string(&results).expect("results serialize")),
        Format::Text => {
            for c in &results {
                println!("{c}");
            }
            if failed == 0 {
                println!("{}/{} OK", results.len(), results.len());
            } else {
                println!("{failed} of {} checks FAILED", results.len());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
