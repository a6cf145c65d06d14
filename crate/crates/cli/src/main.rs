use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use semap_core::auxgraphs::orbit_separator;
use semap_core::diskcounts::{verify_lemma, ALL_LEMMAS};
use semap_core::growth::grow_patch;
use semap_core::quotients::{
    census, default_census_budget, torus_quotient, SublatticeBasis, CENSUS_CSV_HEADER,
};
use semap_core::sublattice_props::{delete_centers, lambda7, u0_members_quotient};
use semap_core::symmetry::{automorphism_group, isomorphic, vertex_orbits};
use semap_core::tilings::{patch, template, TilingId};
use semap_core::{Error, FlagMap, MapJson, Result, VertexSymbol};

#[derive(Parser)]
#[command(
    name = "tiler",
    about = "Semi-equivelar maps on the torus: patches, quotients, orbits, growth"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a finite patch of one of the eleven plane tilings
    Patch {
        /// Tiling id, E1 through E11
        #[arg(long)]
        tiling: TilingId,
        /// Number of translation cells in each direction around the origin
        #[arg(long)]
        radius: i32,
        /// Output file for the map JSON (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient a tiling by a sublattice of its translation group
    Quotient {
        #[arg(long)]
        tiling: TilingId,
        /// Sublattice basis as a row-major 2x2 integer matrix "a,b,c,d"
        #[arg(long)]
        basis: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all quotients of a tiling up to a lattice index
    Census {
        #[arg(long)]
        tiling: TilingId,
        /// Largest sublattice index (type-dependent default when omitted)
        #[arg(long)]
        max_index: Option<i64>,
        /// Output CSV file (stdout when omitted)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Automorphism-orbit analysis of a map JSON file
    Orbits {
        map: PathBuf,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Orbit-separating auxiliary graph of a map, with DOT export
    Auxgraph {
        map: PathBuf,
        /// Output DOT file (stdout when omitted)
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Grow a patch from a vertex symbol by forced completion sweeps
    Grow {
        /// Vertex symbol, e.g. "3^4.6"
        #[arg(long = "type")]
        symbol: String,
        #[arg(long)]
        rings: usize,
        /// Output file for the first outcome's map JSON (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Branch log file
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Check the seven disk counting lemmas over a parameter sweep
    VerifyLemmas {
        #[arg(long, default_value_t = 600)]
        max_n: i64,
        #[arg(long, default_value_t = 60)]
        max_k: i64,
    },
    /// Build a snub hexagonal map by deleting the distinguished vertex
    /// class from a triangular-tiling quotient
    SnubFromTriangular {
        /// Sublattice basis (row-major 2x2 matrix) inside the index-7 lattice
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test two map JSON files for isomorphism
    Iso { a: PathBuf, b: PathBuf },
}

fn parse_matrix(s: &str) -> Result<SublatticeBasis> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Io(format!("bad matrix entry in '{s}': {e}")))?;
    let [m00, m01, m10, m11] = parts[..] else {
        return Err(Error::Io(format!(
            "expected four comma-separated integers, got '{s}'"
        )));
    };
    SublatticeBasis::from_columns(m00, m10, m01, m11)
}

fn load_map(path: &PathBuf) -> Result<FlagMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path:?}: {e}")))?;
    let json: MapJson =
        serde_json::from_str(&text).map_err(|e| Error::Io(format!("{path:?}: {e}")))?;
    FlagMap::from_json(&json)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{path:?}: {e}")))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, json: &MapJson) -> Result<()> {
    let text = serde_json::to_string_pretty(json).map_err(|e| Error::Io(e.to_string()))?;
    emit(out, &text)
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Patch {
            tiling,
            radius,
            out,
        } => {
            let p = patch(template(tiling), radius);
            let mut json = p.map.to_json();
            json.interior = Some(p.interior.clone());
            emit_json(&out, &json)?;
        }
        Cmd::Quotient { tiling, basis, out } => {
            let lat = parse_matrix(&basis)?;
            let q = torus_quotient(template(tiling), &lat);
            emit_json(&out, &q.to_json())?;
        }
        Cmd::Census {
            tiling,
            max_index,
            csv,
        } => {
            let t = template(tiling);
            let budget = max_index.unwrap_or_else(|| default_census_budget(t));
            let mut text = String::from(CENSUS_CSV_HEADER);
            for rec in census(t, budget) {
                text.push('\n');
                text.push_str(&rec.csv_row());
            }
            emit(&csv, &text)?;
        }
        Cmd::Orbits { map, json } => {
            let m = load_map(&map)?;
            let orbits = vertex_orbits(&m);
            let group_order = automorphism_group(&m).len();
            if json {
                let v = serde_json::json!({
                    "orbits": orbits.orbit_count(),
                    "class_sizes": orbits.class_sizes(),
                    "group_order": group_order,
                });
                println!("{v}");
            } else {
                println!("orbits: {}", orbits.orbit_count());
                println!("class sizes: {:?}", orbits.class_sizes());
                println!("group order: {group_order}");
            }
        }
        Cmd::Auxgraph { map, dot } => {
            let m = load_map(&map)?;
            let cert = orbit_separator(&m)?;
            eprintln!(
                "cycles: {:?}, orbit lower bound: {}",
                cert.graph.cycle_lengths(),
                cert.lower_bound
            );
            emit(&dot, &cert.graph.to_dot("aux"))?;
        }
        Cmd::Grow {
            symbol,
            rings,
            out,
            log,
        } => {
            let sym = VertexSymbol::parse(&symbol)?;
            let outcomes = grow_patch(&sym, rings)?;
            let mut lines = Vec::new();
            for (i, o) in outcomes.iter().enumerate() {
                if o.branch_log.is_empty() {
                    lines.push(format!("outcome {i}: no branches"));
                }
                for e in &o.branch_log {
                    lines.push(format!(
                        "outcome {i}: branch at vertex {}, took {} of {}",
                        e.vertex, e.taken, e.choices
                    ));
                }
            }
            if let Some(path) = &log {
                std::fs::write(path, lines.join("\n") + "\n")
                    .map_err(|e| Error::Io(format!("{path:?}: {e}")))?;
            } else {
                for l in &lines {
                    eprintln!("{l}");
                }
            }
            let m = &outcomes[0].map;
            let mut json = m.to_json();
            json.interior = Some(
                (0..m.num_vertices())
                    .filter(|&v| m.is_interior_vertex(v))
                    .collect(),
            );
            emit_json(&out, &json)?;
        }
        Cmd::VerifyLemmas { max_n, max_k } => {
            let mut failed = false;
            println!("{:<8} {:>15} {:>8}", "lemma", "feasible-cases", "status");
            for lemma in ALL_LEMMAS {
                match verify_lemma(lemma, max_n, max_k) {
                    Ok(cases) => println!("{lemma:<8} {cases:>15} {:>8}", "pass"),
                    Err(e) => {
                        failed = true;
                        println!("{lemma:<8} {:>15} {:>8}  ({e})", "-", "FAIL");
                    }
                }
            }
            if failed {
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::SnubFromTriangular { lattice, out } => {
            let lat = parse_matrix(&lattice)?;
            if !lambda7().contains_lattice(&lat) {
                return Err(Error::WrongHost(format!(
                    "lattice {lattice} does not lie inside the index-7 sublattice"
                )));
            }
            let q = torus_quotient(template(TilingId::E1), &lat);
            let s = u0_members_quotient(TilingId::E1, &lat)?;
            let snub = delete_centers(&q, &s)?;
            emit_json(&out, &snub.to_json())?;
        }
        Cmd::Iso { a, b } => {
            let ma = load_map(&a)?;
            let mb = load_map(&b)?;
            match isomorphic(&ma, &mb) {
                Some(_) => println!("isomorphic"),
                None => println!("not isomorphic"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
