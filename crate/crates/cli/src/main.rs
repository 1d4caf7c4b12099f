use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rtorsion::arith::{Field, FieldTag, Polynomial, Rational, RationalFunction, Ring};
use rtorsion::chain_map::{dual_map, ChainMap};
use rtorsion::complex::ChainComplex;
use rtorsion::gen::{Generator, Profile, Sample};
use rtorsion::io::{self, AnyComplex, AnyMap, ComplexDocument};
use rtorsion::linalg::Matrix;
use rtorsion::torsion;
use rtorsion::ufd;
use rtorsion::Error;

/// Exact Reidemeister torsion of chain maps and complexes over Q and Q(t).
#[derive(Parser)]
#[command(name = "rtorsion", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex or map document is well formed.
    Validate(Input),
    /// Betti numbers and homology representatives of a complex.
    Homology {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
    },
    /// Torsion of a quasi-isomorphism.
    Torsion {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Torsion of an acyclic complex.
    TorsionAcyclic {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
    },
    /// Torsion of a self-map from the determinants of its matrices.
    TorsionSelf {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Dual of a complex or map, as a document.
    Dual(Input),
    /// Smith normal form of boundary matrices over Q[t].
    Snf {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        /// Only this boundary.
        #[arg(long, value_name = "I")]
        degree: Option<usize>,
    },
    /// Order of the homology module in one degree over Q[t].
    Ord {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        #[arg(long, value_name = "I")]
        degree: usize,
    },
    /// Alternating product of homology orders over Q[t].
    Turaev {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
    },
    /// Seeded random chain map, as a document.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Top degree of the complexes.
        #[arg(long, visible_alias = "m", default_value_t = 2)]
        length: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// iso, qiso, self, acyclic or non-qiso.
        #[arg(long, default_value = "qiso")]
        profile: String,
        #[arg(long, value_enum, default_value_t = FieldArg::Q)]
        field: FieldArg,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct Input {
    #[arg(long, value_name = "FILE")]
    complex: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    map: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Q(t)", alias = "Qt")]
    Qt,
}

/// What a command produced: a text summary and a JSON report.
struct Output {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n"
            } else {
                out.text
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> rtorsion::Result<Output> {
    match cmd {
        Command::Validate(input) => validate(input),
        Command::Homology { complex } => match load_complex(complex)? {
            AnyComplex::Q(c) => Ok(homology(&c)),
            AnyComplex::Qt(c) => Ok(homology(&c)),
        },
        Command::Torsion { map } => match load_map(map)? {
            AnyMap::Q(f) => torsion_of(&f),
            AnyMap::Qt(f) => torsion_of(&f),
        },
        Command::TorsionAcyclic { complex } => match load_complex(complex)? {
            AnyComplex::Q(c) => Ok(tau(torsion::torsion_acyclic(&c)?)),
            AnyComplex::Qt(c) => Ok(tau(torsion::torsion_acyclic(&c)?)),
        },
        Command::TorsionSelf { map } => match load_map(map)? {
            AnyMap::Q(f) => Ok(tau(torsion::torsion_self_map(&f)?)),
            AnyMap::Qt(f) => Ok(tau(torsion::torsion_self_map(&f)?)),
        },
        Command::Dual(input) => dual(input),
        Command::Snf { complex, degree } => snf(&load_poly(complex)?, *degree),
        Command::Ord { complex, degree } => {
            let ord = ufd::order_of_homology(&load_poly(complex)?, *degree)?;
            Ok(Output {
                text: format!("ord H_{degree} = {ord}\n"),
                json: json!({ "degree": degree, "order": ord.to_string() }),
            })
        }
        Command::Turaev { complex } => turaev(&load_poly(complex)?),
        Command::Gen {
            seed,
            length,
            max_dim,
            profile,
            field,
        } => {
            let profile: Profile = profile.parse()?;
            match field {
                FieldArg::Q => generate::<Rational>(*seed, *length, *max_dim, profile),
                FieldArg::Qt => generate::<RationalFunction>(*seed, *length, *max_dim, profile),
            }
        }
    }
}

fn load_complex_doc(path: &Path) -> rtorsion::Result<ComplexDocument> {
    io::load_complex(path)
}

fn load_complex(path: &Path) -> rtorsion::Result<AnyComplex> {
    AnyComplex::from_doc(&load_complex_doc(path)?).map_err(|e| e.at(path.display().to_string()))
}

fn load_map(path: &Path) -> rtorsion::Result<AnyMap> {
    AnyMap::from_resolved(&io::load_map(path)?).map_err(|e| e.at(path.display().to_string()))
}

fn load_poly(path: &Path) -> rtorsion::Result<ufd::PolyComplex> {
    io::poly_complex_from_doc(&load_complex_doc(path)?).map_err(|e| e.at(path.display().to_string()))
}

fn strings<R: Ring>(m: &Matrix<R>) -> Value {
    m.iter_rows()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
        .collect()
}

fn tau<F: Field>(value: F) -> Output {
    Output {
        text: format!("tau = {value}\n"),
        json: json!({ "tau": value.to_string() }),
    }
}

fn validate(input: &Input) -> rtorsion::Result<Output> {
    if let Some(path) = &input.complex {
        let (field, dims, acyclic) = match load_complex(path)? {
            AnyComplex::Q(c) => (FieldTag::Q, c.dims().to_vec(), c.is_acyclic()),
            AnyComplex::Qt(c) => (FieldTag::Qt, c.dims().to_vec(), c.is_acyclic()),
        };
        return Ok(Output {
            text: format!("valid complex over {field}, dims {dims:?}, acyclic: {acyclic}\n"),
            json: json!({ "kind": "complex", "field": field, "dims": dims, "acyclic": acyclic }),
        });
    }
    let path = input.map.as_ref().expect("clap requires one input");
    let (field, length, qiso) = match load_map(path)? {
        AnyMap::Q(f) => (FieldTag::Q, f.length(), f.is_quasi_isomorphism()),
        AnyMap::Qt(f) => (FieldTag::Qt, f.length(), f.is_quasi_isomorphism()),
    };
    Ok(Output {
        text: format!("valid chain map over {field}, length {length}, quasi-isomorphism: {qiso}\n"),
        json: json!({ "kind": "map", "field": field, "length": length, "quasi_isomorphism": qiso }),
    })
}

fn homology<F: Field>(c: &ChainComplex<F>) -> Output {
    let h = c.homology();
    let mut text = String::new();
    let mut degrees = Vec::new();
    for (i, d) in h.degrees.iter().enumerate() {
        text += &format!("H_{i}: dimension {}\n", d.betti());
        for r in d.reps.iter_rows() {
            let r: Vec<String> = r.iter().map(ToString::to_string).collect();
            text += &format!("  [{}]\n", r.join(", "));
        }
        degrees.push(json!({
            "degree": i,
            "betti": d.betti(),
            "boundary_rank": d.boundary_rank(),
            "representatives": strings(&d.reps),
        }));
    }
    Output {
        text,
        json: json!({ "field": c.field(), "degrees": degrees }),
    }
}

fn torsion_of<F: Field>(f: &ChainMap<F>) -> rtorsion::Result<Output> {
    let report = torsion::torsion_report(f)?;
    let brackets: Vec<Value> = report
        .brackets
        .iter()
        .enumerate()
        .map(|(i, b)| json!({ "degree": i, "source": b.source.to_string(), "target": b.target.to_string() }))
        .collect();
    Ok(Output {
        text: format!("tau = {}\n", report.value),
        json: json!({ "tau": report.value.to_string(), "brackets": brackets }),
    })
}

fn dual(input: &Input) -> rtorsion::Result<Output> {
    let doc = if let Some(path) = &input.complex {
        let doc = match load_complex(path)? {
            AnyComplex::Q(c) => io::complex_to_doc(&c.dual(), FieldTag::Q),
            AnyComplex::Qt(c) => io::complex_to_doc(&c.dual(), FieldTag::Qt),
        };
        serde_json::to_value(doc)
    } else {
        let path = input.map.as_ref().expect("clap requires one input");
        let doc = match load_map(path)? {
            AnyMap::Q(f) => io::map_to_doc(&dual_map(&f), FieldTag::Q),
            AnyMap::Qt(f) => io::map_to_doc(&dual_map(&f), FieldTag::Qt),
        };
        serde_json::to_value(doc)
    }
    .expect("documents serialize");
    Ok(document(doc))
}

/// Documents print as JSON in both modes.
fn document(doc: Value) -> Output {
    Output {
        text: serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n",
        json: doc,
    }
}

fn snf(c: &ufd::PolyComplex, degree: Option<usize>) -> rtorsion::Result<Output> {
    let degrees: Vec<usize> = match degree {
        Some(i) if i >= c.length() => {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                length: c.length(),
            })
        }
        Some(i) => vec![i],
        None => (0..c.length()).collect(),
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    for i in degrees {
        let s = ufd::smith_normal_form(c.boundary(i));
        let factors: Vec<String> = s.invariant_factors().iter().map(Polynomial::to_string).collect();
        text += &format!(
            "boundary {i}: rank {}, invariant factors [{}]\n",
            s.rank(),
            factors.join(", ")
        );
        reports.push(json!({
            "degree": i,
            "rank": s.rank(),
            "invariant_factors": factors,
            "u": strings(&s.u),
            "v": strings(&s.v),
            "d": strings(&s.d),
        }));
    }
    Ok(Output {
        text,
        json: json!({ "boundaries": reports }),
    })
}

const UNIT_NOTE: &str = "up to a nonzero rational factor (a unit of Q[t])";

fn turaev(c: &ufd::PolyComplex) -> rtorsion::Result<Output> {
    let value = ufd::turaev_torsion(c)?;
    let direct = ufd::torsion_of_tensor(c)?;
    let unit = ufd::unit_ratio(&direct, &value);
    let unit_text = unit.as_ref().map_or("none".to_string(), ToString::to_string);
    Ok(Output {
        text: format!("tau = {value}\nnote: {UNIT_NOTE}; torsion over Q(t) = {direct}, unit factor {unit_text}\n"),
        json: json!({
            "tau": value.to_string(),
            "note": UNIT_NOTE,
            "torsion_over_fractions": direct.to_string(),
            "unit": unit.map(|u| u.to_string()),
        }),
    })
}

fn generate<F: Field + Sample>(seed: u64, length: usize, max_dim: usize, profile: Profile) -> rtorsion::Result<Output> {
    let mut g = Generator::<F>::new(seed, length, max_dim)?;
    let f = g.instance(profile);
    let doc = serde_json::to_value(io::map_to_doc(&f, F::TAG)).expect("documents serialize");
    Ok(document(doc))
}
