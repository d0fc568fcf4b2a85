use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use shapenerve::complex::SimplicialComplex;
use shapenerve::error::{Error, Result};
use shapenerve::fixtures;
use shapenerve::homology::{betti, nerve_theorem_check, BettiReport};
use shapenerve::io::{self, ShapeDocument};
use shapenerve::nerve::{maximal_nucleus_clusters, shape_nerve_complex, shape_subcomplex, star_cover, SubComplex};
use shapenerve::number::{format_rational, parse_rational};
use shapenerve::proximity::{self, check_axioms, AxiomSuite, Feature, ProximityConfig, Relation};
use shapenerve::svg::{render_svg, Overlays};
use shapenerve::triangulation::{build_shape_complex, triangulate_shape};

#[derive(Parser)]
#[command(
    name = "shapenerve",
    version,
    about = "Triangulate planar shapes and study their nerves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a shape, triangulate it and label the triangles.
    Triangulate {
        shape: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every shape-vertex star and the overlap graph.
    Nerves {
        complex: PathBuf,
        #[arg(long)]
        shape: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report the maximal nucleus clusters.
    Mnc {
        complex: PathBuf,
        #[arg(long)]
        shape: PathBuf,
    },
    /// Evaluate a proximity relation between two complexes.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        relation: RelationArg,
        #[arg(long, value_delimiter = ',', default_value = "area")]
        features: Vec<String>,
        #[arg(long)]
        quantum: Option<String>,
    },
    /// Check proximity axioms on a seeded random family of sub-complexes.
    Axioms {
        complex: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 20)]
        sets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "area")]
        features: Vec<String>,
        #[arg(long)]
        quantum: Option<String>,
    },
    /// Betti numbers of the shape, optionally with a nerve-versus-union check.
    Homology {
        complex: PathBuf,
        #[arg(long, value_enum)]
        cover: Option<CoverArg>,
    },
    /// Draw the complex as SVG.
    Render {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',')]
        nerves: Vec<usize>,
        #[arg(long)]
        shape: Option<PathBuf>,
        /// Outline the maximal nucleus clusters (needs --shape).
        #[arg(long, requires = "shape")]
        mnc: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Near,
    Snear,
    Dnear,
    Dsnear,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Cech,
    Lodato,
    Strong,
    Desc,
    DescStrong,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverArg {
    Stars,
}

enum Outcome {
    Success,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let reason = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("{}", io::error_line(&Error::InvalidConfig { reason }));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{}", io::error_line(&e));
            ExitCode::from(1)
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    io::parse_complex(&read(path)?)
}

fn load_shape(path: &Path) -> Result<ShapeDocument> {
    io::parse_shape(&read(path)?)
}

fn config(host: &SimplicialComplex, features: &[String], quantum: Option<&str>) -> Result<ProximityConfig> {
    let features = features
        .iter()
        .map(|f| {
            Feature::parse(f).ok_or_else(|| Error::InvalidConfig {
                reason: format!("unknown feature {f:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let quantum = match quantum {
        Some(q) => parse_rational(q).ok_or_else(|| Error::NumberParse {
            value: q.to_string(),
            context: "--quantum".into(),
        })?,
        None => ProximityConfig::area_default(host).quantum().clone(),
    };
    ProximityConfig::new(features, quantum)
}

fn betti_line(r: &BettiReport) -> String {
    format!(
        "b0={} b1={} χ={} b2={} V={} E={} T={}",
        r.b0, r.b1, r.euler, r.b2, r.v, r.e, r.t
    )
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Triangulate { shape, output } => {
            let doc = load_shape(&shape)?;
            let sc = triangulate_shape(&doc.shape, &doc.sampling)?;
            emit(&io::write_complex(sc.complex()), output.as_deref())?;
            if output.is_some() {
                println!(
                    "triangulated: {} vertices, {} triangles, {} shape triangles",
                    sc.complex().num_vertices(),
                    sc.complex().num_triangles(),
                    sc.shape_triangle_ids().len()
                );
            }
        }
        Command::Nerves { complex, shape, output } => {
            let sc = build_shape_complex(load_complex(&complex)?, load_shape(&shape)?.shape);
            let snc = shape_nerve_complex(&sc);
            for n in &snc.nerves {
                let kind = if n.nucleus_is_interior() {
                    "interior"
                } else {
                    "boundary"
                };
                let ids: Vec<String> = n.triangle_ids().iter().map(usize::to_string).collect();
                println!(
                    "nucleus {} ({kind}): {} triangles [{}]",
                    n.nucleus(),
                    n.len(),
                    ids.join(",")
                );
            }
            println!(
                "overlap graph: {} nerves, {} edges, {} components",
                snc.nerves.len(),
                snc.overlap_edges().len(),
                snc.report.components
            );
            if let Some(path) = output {
                emit(&io::write_nerves(&snc), Some(&path))?;
            }
        }
        Command::Mnc { complex, shape } => {
            let sc = build_shape_complex(load_complex(&complex)?, load_shape(&shape)?.shape);
            let clusters = maximal_nucleus_clusters(&sc);
            match clusters.first() {
                None => println!("no shape nerves"),
                Some(first) => {
                    println!("maximal nucleus clusters: {} of size {}", clusters.len(), first.len());
                    for n in &clusters {
                        let p = sc.complex().vertex(n.nucleus());
                        println!(
                            "nucleus {} at ({}, {})",
                            n.nucleus(),
                            format_rational(&p.x),
                            format_rational(&p.y)
                        );
                    }
                }
            }
        }
        Command::Compare {
            a,
            b,
            relation,
            features,
            quantum,
        } => {
            let (ka, kb) = (load_complex(&a)?, load_complex(&b)?);
            let (host, ids) = SimplicialComplex::merge(&[&ka, &kb])?;
            let sa = SubComplex::new(&host, ids[0].iter().copied())?;
            let sb = SubComplex::new(&host, ids[1].iter().copied())?;
            let cfg = config(&host, &features, quantum.as_deref())?;
            let relation = match relation {
                RelationArg::Near => Relation::Near,
                RelationArg::Snear => Relation::StronglyNear,
                RelationArg::Dnear => Relation::DescriptivelyNear,
                RelationArg::Dsnear => Relation::StronglyDescriptivelyNear,
            };
            let holds = proximity::relate(relation, &sa, &sb, &cfg)?;
            println!("{holds}");
            for line in witnesses(relation, &host, &sa, &sb, &cfg)? {
                println!("{line}");
            }
        }
        Command::Axioms {
            complex,
            suite,
            sets,
            seed,
            features,
            quantum,
        } => {
            let host = load_complex(&complex)?;
            let cfg = config(&host, &features, quantum.as_deref())?;
            let mut rng = fixtures::rng(seed);
            let family = fixtures::random_family(&mut rng, &host, sets);
            let suites = match suite {
                SuiteArg::Cech => vec![AxiomSuite::Cech],
                SuiteArg::Lodato => vec![AxiomSuite::Lodato],
                SuiteArg::Strong => vec![AxiomSuite::Strong],
                SuiteArg::Desc => vec![AxiomSuite::DescLodato],
                SuiteArg::DescStrong => vec![AxiomSuite::DescStrong],
                SuiteArg::All => AxiomSuite::all().to_vec(),
            };
            let mut ok = true;
            for s in suites {
                let report = check_axioms(&family, &cfg, s)?;
                print!("{report}");
                ok &= report.holds();
            }
            if !ok {
                println!("axiom failures found");
                return Ok(Outcome::Failed);
            }
            println!("all axioms hold");
        }
        Command::Homology { complex, cover } => {
            let host = load_complex(&complex)?;
            let shape = shape_subcomplex(&host);
            println!("{}", betti_line(&betti(&shape)));
            if cover.is_some() {
                let check = nerve_theorem_check(&star_cover(&shape))?;
                println!("nerve: {}", betti_line(&check.nerve));
                println!("union: {}", betti_line(&check.union));
                let flagged = check.elements_acyclic.iter().filter(|ok| !**ok).count();
                if check.hypothesis_holds() {
                    println!("hypothesis: holds");
                } else {
                    println!(
                        "hypothesis: violated ({flagged} cyclic elements, {} cyclic intersections)",
                        check.cyclic_intersections.len()
                    );
                }
                println!("consistent: {}", check.consistent);
                if !check.consistent {
                    return Ok(Outcome::Failed);
                }
            }
        }
        Command::Render {
            complex,
            nerves,
            shape,
            mnc,
            output,
        } => {
            let host = load_complex(&complex)?;
            let shape = shape.as_deref().map(load_shape).transpose()?.map(|d| d.shape);
            let highlight = match (&shape, mnc) {
                (Some(s), true) => {
                    let sc = build_shape_complex(host.clone(), s.clone());
                    maximal_nucleus_clusters(&sc).iter().map(|n| n.nucleus()).collect()
                }
                _ => Vec::new(),
            };
            let overlays = Overlays {
                shape: shape.as_ref(),
                nerves,
                highlight,
            };
            emit(&render_svg(&host, &overlays)?, output.as_deref())?;
        }
    }
    Ok(Outcome::Success)
}

fn witnesses(
    relation: Relation,
    host: &SimplicialComplex,
    a: &SubComplex<'_>,
    b: &SubComplex<'_>,
    cfg: &ProximityConfig,
) -> Result<Vec<String>> {
    let point = |v: usize| {
        let p = host.vertex(v);
        format!("({}, {})", format_rational(&p.x), format_rational(&p.y))
    };
    let triangle = |t: usize| {
        let [x, y, z] = host.triangle(t);
        format!("triangle {} {} {}", point(x), point(y), point(z))
    };
    Ok(match relation {
        Relation::Near => (&a.closure_vertices() & &b.closure_vertices())
            .into_iter()
            .map(|v| format!("shared vertex {}", point(v)))
            .collect(),
        Relation::StronglyNear => (a.triangle_ids() & b.triangle_ids())
            .into_iter()
            .map(|t| format!("shared {}", triangle(t)))
            .collect(),
        Relation::DescriptivelyNear | Relation::StronglyDescriptivelyNear => {
            proximity::descriptive_intersection(a, b, cfg)?
                .triangles
                .into_iter()
                .map(|t| format!("matching {}", triangle(t)))
                .collect()
        }
    })
}
