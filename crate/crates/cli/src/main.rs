use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use tfano_core::enumeration::{enumerate_empty_polygons, enumerate_terminal_fano, EnumConfig};
use tfano_core::fixtures::{builtin, load_dir, verify_theorem1, FixtureCheck};
use tfano_core::format::{read_polytope, write_polytope};
use tfano_core::invariants::{lattice_quotient, wps_polytope};
use tfano_core::polytope::{classify, facet_vertex_counts};
use tfano_core::report::invariant_report;
use tfano_core::symmetry::{
    affine_normal_form_2d, automorphism_group, fixed_subspace_dim, invariant_class_rank, normal_form, vertex_orbits,
};
use tfano_core::{IntMatrix, LatticePolytope, Rational};

/// Toric Fano polytopes: properties, invariants, symmetries and enumeration.
#[derive(Parser)]
#[command(name = "tfano", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Fano, terminal, canonical, reflexive, simplicial and regular flags.
    Props {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print ranks, degree, genus and automorphism data of a Fano polytope.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Identifier to report; defaults to the file stem.
        #[arg(long)]
        id: Option<String>,
    },
    /// Print the polytope of the weighted projective space P(w0, w1, w2, w3).
    Wps { weights: Vec<u64> },
    /// Print the polytope of the quotient by the cyclic group generated by a
    /// rational point.
    Quotient {
        file: PathBuf,
        /// Generator as comma-separated fractions, e.g. 1/2,1/2,1/2.
        #[arg(long = "gen")]
        generator: String,
    },
    /// Print the normal form (columns are vertices).
    NormalForm { file: PathBuf },
    /// Print the lattice automorphism group and its vertex orbits.
    Aut { file: PathBuf },
    /// Enumerate terminal Fano polytopes (3D) or empty polygons (2D) in a box.
    Enumerate {
        #[arg(long = "box")]
        box_bound: i64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Recompute the invariants of the thirteen G-Fano fixtures.
    VerifyTheorem1 {
        /// Fixture directory; defaults to $TFANO_FIXTURES, then the builtin set.
        dir: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
}

fn load(path: &Path) -> anyhow::Result<LatticePolytope> {
    read_polytope(path).with_context(|| format!("{}", path.display()))
}

fn print_matrix(m: &IntMatrix) {
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("{}", cells.join(" "));
    }
}

fn props(file: &Path, json: bool) -> anyhow::Result<Outcome> {
    let p = load(file)?;
    let flags = classify(&p);
    if json {
        println!("{}", serde_json::to_string_pretty(&flags)?);
    } else {
        println!("vertices: {}", p.n_vertices());
        println!("fano: {}", flags.is_fano);
        println!("terminal: {}", flags.is_terminal);
        println!("canonical: {}", flags.is_canonical);
        println!("reflexive: {}", flags.is_reflexive);
        println!("simplicial: {}", flags.is_simplicial);
        println!("regular: {}", flags.is_regular);
    }
    Ok(Outcome::Ok)
}

fn invariants(file: &Path, json: bool, id: Option<String>) -> anyhow::Result<Outcome> {
    let p = load(file)?;
    let id = id.unwrap_or_else(|| file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    let r = invariant_report(&id, &p)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&r)?);
    } else {
        println!("id: {}", r.id);
        println!("vertices: {}", r.n_vertices);
        println!("rk_cl: {}", r.rk_cl);
        println!("rk_pic: {}", r.rk_pic);
        println!("degree: {}", r.degree);
        println!("genus: {}", r.genus);
        println!("aut_order: {}", r.aut_order);
        println!("n_orbits: {}", r.n_orbits);
        println!("fixed_dim: {}", r.fixed_dim);
        println!("inv_cl_rank: {}", r.inv_cl_rank);
        println!("is_gfano: {}", r.is_gfano);
    }
    Ok(Outcome::Ok)
}

fn wps(weights: &[u64]) -> anyhow::Result<Outcome> {
    let w: [u64; 4] = weights.try_into().map_err(|_| anyhow!("expected four weights, got {}", weights.len()))?;
    let p = wps_polytope(w)?;
    let label = format!("P({},{},{},{})", w[0], w[1], w[2], w[3]);
    print!("{}", write_polytope(&p, Some(&label)));
    Ok(Outcome::Ok)
}

fn quotient(file: &Path, generator: &str) -> anyhow::Result<Outcome> {
    let p = load(file)?;
    let g = generator
        .split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| anyhow!("bad fraction {s:?} in --gen")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let order = generator_order(&g)?;
    let q = lattice_quotient(&p, &g, order)?;
    print!("{}", write_polytope(&q, Some(&format!("quotient by <({generator})>, order {order}"))));
    Ok(Outcome::Ok)
}

/// Smallest k with k * g integral: the lcm of the reduced denominators.
fn generator_order(g: &[Rational]) -> anyhow::Result<u64> {
    let mut order = 1u64;
    for q in g {
        let d: u64 = q.denom().try_into().map_err(|_| anyhow!("denominator {} too large", q.denom()))?;
        let (mut a, mut b) = (order, d);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        order = order / a * d;
    }
    Ok(order)
}

fn normal_form_cmd(file: &Path) -> anyhow::Result<Outcome> {
    let p = load(file)?;
    let nf = if p.dim() == 2 { affine_normal_form_2d(&p)? } else { normal_form(&p) };
    print_matrix(&nf);
    Ok(Outcome::Ok)
}

fn aut(file: &Path) -> anyhow::Result<Outcome> {
    let p = load(file)?;
    let g = automorphism_group(&p);
    let orbits = vertex_orbits(&p, &g)?;
    println!("order: {}", g.order());
    for (i, orbit) in orbits.orbits.iter().enumerate() {
        let pts: Vec<String> = orbit.iter().map(|&v| p.vertices()[v].to_string()).collect();
        println!("orbit {}: {}", i + 1, pts.join(" "));
    }
    println!("fixed_dim: {}", fixed_subspace_dim(&g));
    println!("inv_cl_rank: {}", invariant_class_rank(&p, &g)?);
    for (i, a) in g.elements().iter().enumerate() {
        println!("element {}:", i + 1);
        print_matrix(a);
    }
    Ok(Outcome::Ok)
}

fn enumerate(box_bound: i64, dim: usize, jobs: usize) -> anyhow::Result<Outcome> {
    if box_bound < 1 {
        bail!("--box must be at least 1");
    }
    if dim != 2 && dim != 3 {
        bail!("--dim must be 2 or 3");
    }
    let mut cfg = EnumConfig::new(box_bound, dim);
    cfg.jobs = jobs;
    let classes = if dim == 2 { enumerate_empty_polygons(&cfg) } else { enumerate_terminal_fano(&cfg) };
    println!("{} classes", classes.len());
    for c in &classes {
        let p = &c.polytope;
        let pts: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
        if dim == 3 {
            let facets: Vec<String> = facet_vertex_counts(p).iter().map(|k| k.to_string()).collect();
            println!("v={} facets=[{}] {}", p.n_vertices(), facets.join(","), pts.join(" "));
        } else {
            println!("v={} {}", p.n_vertices(), pts.join(" "));
        }
    }
    Ok(Outcome::Ok)
}

fn print_checks(checks: &[FixtureCheck]) {
    println!("{:<5} {:<28} {:>6} {:>6} {:>10} {:>5}  status", "id", "label", "rk_cl", "rk_pic", "degree", "genus");
    for c in checks {
        let e = &c.expected;
        let status = if c.passed() { "ok".to_string() } else { format!("MISMATCH {}", c.mismatches.join("; ")) };
        println!(
            "{:<5} {:<28} {:>6} {:>6} {:>10} {:>5}  {status}",
            c.id, c.label, e.rk_cl, e.rk_pic, e.degree.to_string(), e.genus
        );
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} fixtures pass", checks.len());
}

fn verify(dir: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let dir = dir.or_else(|| std::env::var_os("TFANO_FIXTURES").map(PathBuf::from));
    let fixtures = match &dir {
        Some(d) => load_dir(d)?,
        None => builtin(),
    };
    let checks = verify_theorem1(&fixtures);
    print_checks(&checks);
    Ok(if checks.iter().all(FixtureCheck::passed) { Outcome::Ok } else { Outcome::Mismatch })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Props { file, json } => props(&file, json),
        Command::Invariants { file, json, id } => invariants(&file, json, id),
        Command::Wps { weights } => wps(&weights),
        Command::Quotient { file, generator } => quotient(&file, &generator),
        Command::NormalForm { file } => normal_form_cmd(&file),
        Command::Aut { file } => aut(&file),
        Command::Enumerate { box_bound, dim, jobs } => enumerate(box_bound, dim, jobs),
        Command::VerifyTheorem1 { dir } => verify(dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
