use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use totgeo::catalog::{self, shipped};
use totgeo::cert::{self, Certificate, VerifyOptions};
use totgeo::scalar::{abs_q, format_q, parse_q, Scalar};
use totgeo::search::{self, SearchConfig};
use totgeo::{flats, orbits, triple, Error, SymmetricSpaceModel, Q};

#[derive(Parser)]
#[command(name = "totgeo", version, about = "Totally geodesic submanifolds of symmetric spaces of noncompact type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Supported spaces.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Rank with a witness flat.
    Rank {
        space: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify a certificate.
    Verify {
        cert: PathBuf,
        #[arg(long)]
        with_transversal: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write a bundled certificate.
    Generate {
        pair_id: String,
        /// `k=N`; may be repeated.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Search for a maximal flat meeting a certified subspace only in 0.
    Flats {
        space: String,
        #[arg(long)]
        transversal: PathBuf,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Isotropy orbit through a vector of p.
    Orbit {
        space: String,
        /// Comma-separated rationals in the basis of p.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        symmetric_test: bool,
        #[arg(long)]
        curvature_normals: bool,
    },
    /// Numerical search for Lie triple systems of a given codimension.
    Search {
        space: String,
        #[arg(long)]
        codim: usize,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probe codimensions 1..=C instead of a single one.
        #[arg(long)]
        probe_max: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> totgeo::Result<Verdict> {
    match command {
        Command::Catalog { action: CatalogAction::List } => {
            println!("{:<12} {:>5} {:>5}", "space", "dim", "rank");
            for f in shipped() {
                println!("{:<12} {:>5} {:>5}", f.to_string(), f.expected_dim_p(), f.expected_rank());
            }
            Ok(Verdict::Pass)
        }
        Command::Rank { space, seed } => {
            let model = catalog::build(&space)?;
            let (r, _) = triple::rank_stable(&model, seed)?;
            let (flat, witness) = model.standard_flat();
            println!("{} ({}): rank {r}", model.spec(), model.label());
            println!("flat:");
            for v in flat.basis() {
                println!("  {}", fmt_vec(&model, v));
            }
            println!("regular witness: {}", fmt_vec(&model, witness));
            Ok(Verdict::Pass)
        }
        Command::Verify { cert, with_transversal, seed } => {
            let c = Certificate::load(&cert)?;
            let report = cert::verify_certificate(&c, &VerifyOptions { with_transversal, seed, budget: 1000 })?;
            println!("{report}");
            Ok(if report.overall { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Generate { pair_id, params, output } => {
            let mut map = BTreeMap::new();
            for p in &params {
                let (key, value) = p
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {p:?}")))?;
                let n = value.trim().parse().map_err(|_| Error::Parse(format!("not a count: {value:?}")))?;
                map.insert(key.trim().to_string(), n);
            }
            let c = cert::generate_certificate(&pair_id, &map)?;
            std::fs::write(&output, c.to_json())?;
            println!("wrote {} ({}, codim {})", output.display(), c.space, c.claims.codim);
            Ok(Verdict::Pass)
        }
        Command::Flats { space, transversal, budget, seed } => {
            let model = catalog::build(&space)?;
            let c = Certificate::load(&transversal)?;
            if catalog::build(&c.space)?.spec() != model.spec() {
                return Err(Error::MalformedCertificate(format!("certificate is for {}, not {}", c.space, model.spec())));
            }
            let vectors = c.p_vectors(&model).ok_or(Error::NotInP)?;
            let w = totgeo::Subspace::from_independent(model.dim_p(), &vectors)?;
            match flats::transversal_flat(&model, &w, budget, seed) {
                Ok(t) => {
                    println!("PASS transversal flat after {} trials", t.trials);
                    for v in t.flat.subspace.basis() {
                        println!("  {}", fmt_vec(&model, v));
                    }
                    println!("regular witness: {}", fmt_vec(&model, &t.flat.regular_witness));
                    Ok(Verdict::Pass)
                }
                Err(e @ Error::BudgetExhausted { .. }) => {
                    println!("FAIL {e}");
                    Ok(Verdict::Fail)
                }
                Err(e) => Err(e),
            }
        }
        Command::Orbit { space, vector, symmetric_test, curvature_normals } => {
            let model = catalog::build(&space)?;
            let v = vector.split(',').map(parse_q).collect::<totgeo::Result<Vec<Q>>>()?;
            model.check_p(&v)?;
            orbit(&model, &v, symmetric_test, curvature_normals)
        }
        Command::Search { space, codim, restarts, seed, probe_max } => {
            let model = catalog::build(&space)?;
            let config = SearchConfig { restarts, seed, ..SearchConfig::new(codim) };
            match probe_max {
                Some(cmax) => {
                    let probe = search::index_probe(&model, cmax, &config)?;
                    println!("{}: rank {} is a lower bound for the index", model.spec(), probe.rank);
                    for r in &probe.results {
                        print_search(&model, r)?;
                    }
                    match probe.index {
                        Some(i) => println!("least accepted codimension: {i}"),
                        None => println!("least accepted codimension: none <= {cmax}"),
                    }
                }
                None => print_search(&model, &search::lts_search(&model, &config)?)?,
            }
            Ok(Verdict::Pass)
        }
    }
}

fn orbit(model: &SymmetricSpaceModel, v: &[Q], symmetric: bool, normals: bool) -> totgeo::Result<Verdict> {
    let o = orbits::orbit_spaces(model, v)?;
    println!("orbit dimension {}, normal dimension {}", o.tangent.dim(), o.normal.dim());
    let mut ok = true;
    if !o.tangent.is_zero() {
        let minus_id = orbits::shape_operator(model, v, v)?.is_minus_identity();
        ok &= minus_id;
        println!("{} A_v = -id", if minus_id { "PASS" } else { "FAIL" });
    }
    println!("tangent is a Lie triple system: {}", triple::is_lts(model, &o.tangent).unwrap_or(true));
    println!("normal is a Lie triple system: {}", triple::is_lts(model, &o.normal)?);
    if symmetric {
        println!("symmetric submanifold: {}", orbits::symmetric_submanifold_test(model, v)?);
    }
    if normals {
        let c = orbits::curvature_normals(model, v)?;
        println!("curvature normals: m = {}, g = {}", c.m, c.g);
        for (n, mult) in c.normals.iter().zip(&c.multiplicities) {
            let coords: Vec<String> = n.iter().map(|x| format!("{x:.6}")).collect();
            println!("  [{}] multiplicity {mult}", coords.join(", "));
        }
        println!("span the flat: {}, eigenspaces confirmed exactly: {}", c.spans_flat, c.exact_confirmed);
        println!("2 rank + 1 <= dim p: {}", c.inequality_holds);
        ok &= c.spans_flat && c.exact_confirmed && c.inequality_holds;
    }
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn print_search(model: &SymmetricSpaceModel, r: &search::SearchResult) -> totgeo::Result<()> {
    println!("codim {}: best residual {:.3e} over {} restarts", r.codim, r.best_residual, r.residuals.len());
    for (decade, count) in &r.residual_histogram {
        println!("  [1e{decade}, 1e{}) {}", decade + 1, "#".repeat(*count));
    }
    if r.unconverged > 0 {
        println!("  {} restarts hit the iteration cap", r.unconverged);
    }
    if !r.accepted {
        println!("  not accepted");
        return Ok(());
    }
    match &r.refined_exact {
        Some(w) => {
            let c = cert::certificate_for(model, w, format!("search result, codim {}", r.codim))?;
            println!("  accepted, exact refinement verified; candidate certificate:");
            print!("{}", c.to_json());
        }
        None => println!("  accepted, numerical-only (exact refinement failed)"),
    }
    Ok(())
}

/// A `p` vector as a combination of basis names.
fn fmt_vec(model: &SymmetricSpaceModel, v: &[Q]) -> String {
    let mut out = String::new();
    for (c, n) in v.iter().zip(model.p_names()) {
        if c.is_zero() {
            continue;
        }
        let sign = if *c < Q::zero() { "-" } else { "+" };
        let a = abs_q(c);
        let term = if a == Q::one() { n.clone() } else { format!("{} {n}", format_q(&a)) };
        if out.is_empty() {
            out = if sign == "-" { format!("-{term}") } else { term };
        } else {
            out.push_str(&format!(" {sign} {term}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
