use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use toric4::charpair::{parse_edges_json, violations, CharacteristicPair, EdgeVectors, NormalizedPair};
use toric4::cohomology::{
    cup_matrix_pid, cup_matrix_smooth, cup_triangle, groups_over_ring, int_json, RingElem, RingSpec,
};
use toric4::intlinalg::{format_rational, IntVec2, RatMatrix};
use toric4::morphisms::{
    build_compatible_pair, cellular_index_map, induced_substitution, parse_morphism_json, solve_lifting,
    validate_compatible, LiftResult,
};
use toric4::srengine::{gram_matrix_natural, oracle_cup_matrix_smooth};
use toric4::sweep::fuzz;
use toric4::Error;

#[derive(Parser)]
#[command(name = "toric4", version, about = "Cohomology rings of 4-dimensional toric orbifolds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Auto,
    Smooth,
    Triangle,
    Pid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Auto,
    Smooth,
    Half,
}

#[derive(Subcommand)]
enum Command {
    /// Check the characteristic-pair conditions.
    Validate { pair: PathBuf },
    /// Cohomology groups in degrees 0 to 4.
    Groups {
        pair: PathBuf,
        /// z, q or zmod:<m>.
        #[arg(long, default_value = "z")]
        ring: RingSpec,
    },
    /// Cup-product matrix from the applicable closed form.
    Cup {
        pair: PathBuf,
        #[arg(long)]
        ring: Option<RingSpec>,
        #[arg(long, value_enum, default_value_t = Theorem::Auto)]
        theorem: Theorem,
        /// Edge index used for normalization.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Compare the smooth closed form with the rational quotient computation.
    Oracle {
        pair: PathBuf,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Relabel and change basis into a normal form.
    Normalize {
        pair: PathBuf,
        #[arg(long, value_enum, default_value_t = Flavor::Auto)]
        flavor: Flavor,
        #[arg(long)]
        index: Option<usize>,
        /// Shear applied after a half normalization.
        #[arg(long, allow_hyphen_values = true)]
        shear: Option<i64>,
    },
    /// Build a morphism and check compatibility.
    Morph {
        pair: PathBuf,
        #[arg(long)]
        morph: PathBuf,
    },
    /// Solve for the integral lifting of a morphism.
    Lift {
        pair: PathBuf,
        #[arg(long)]
        morph: PathBuf,
    },
    /// Run the randomized property suite.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

/// A report plus the exit code it should produce.
struct Outcome {
    report: Value,
    code: u8,
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Outcome { report, code: 0 }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = std::result::Result<Outcome, Failure>;

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_vectors(path: &Path) -> std::result::Result<Vec<IntVec2>, Failure> {
    Ok(parse_edges_json(&read_input(path)?)?)
}

fn read_pair(path: &Path) -> std::result::Result<CharacteristicPair, Failure> {
    Ok(CharacteristicPair::validate(read_vectors(path)?)?)
}

fn rat_matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| json!(format_rational(x))).collect())).collect(),
    )
}

fn validate(path: &Path) -> Run {
    let v = read_vectors(path)?;
    if v.len() < 3 {
        return Err(Error::TooFewEdges(v.len()).into());
    }
    let bad = violations(&v);
    if !bad.is_empty() {
        let names: Vec<String> = bad.iter().map(|x| x.to_string()).collect();
        return Ok(Outcome { report: json!({ "valid": false, "violations": names }), code: 1 });
    }
    let p = CharacteristicPair::validate(v)?;
    Ok(json!({ "valid": true, "smooth_pairs": p.smooth_edge_pairs(), "k": int_json(p.torsion_order()) }).into())
}

fn normalization_json(np: &NormalizedPair) -> Value {
    json!({ "rotation": np.rotation, "basis_change": np.basis_change, "shear": np.shear })
}

fn cup_smooth(p: &CharacteristicPair, index: Option<usize>, ring: Option<RingSpec>) -> Run {
    let np = p.normalize_smooth(index)?;
    let mut m = cup_matrix_smooth(&np)?;
    if let Some(RingSpec::IntegersMod(q)) = ring {
        m.ring = RingSpec::IntegersMod(q);
        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = RingElem::residue(e.as_i128().unwrap(), q);
            }
        }
    }
    let mut out = m.to_json();
    out["normalization"] = normalization_json(&np);
    out["edges"] = json!(np.pair.vectors());
    Ok(out.into())
}

fn cup_tri(p: &CharacteristicPair, index: Option<usize>) -> Run {
    let np = p.normalize_half(index, None)?;
    let t = cup_triangle(&np)?;
    Ok(json!({ "theorem": "1.2", "k": int_json(t.k), "c": int_json(t.c), "sign_freedom": t.sign_freedom }).into())
}

fn cup_pid(p: &CharacteristicPair, index: Option<usize>, ring: RingSpec) -> Run {
    let np = p.normalize_half(index, None)?;
    let mut out = cup_matrix_pid(&np, ring)?.to_json();
    out["normalization"] = normalization_json(&np);
    out["edges"] = json!(np.pair.vectors());
    Ok(out.into())
}

fn cup(path: &Path, ring: Option<RingSpec>, theorem: Theorem, index: Option<usize>) -> Run {
    let p = read_pair(path)?;
    let over_z = matches!(ring, None | Some(RingSpec::Integers));
    match theorem {
        Theorem::Smooth => cup_smooth(&p, index, ring),
        Theorem::Triangle => {
            if p.m() != 3 {
                return Err(Error::NotNormalized(format!("the triangle formula needs 3 edges, got {}", p.m())).into());
            }
            cup_tri(&p, index)
        }
        Theorem::Pid => cup_pid(&p, index, ring.unwrap_or(RingSpec::Rationals)),
        Theorem::Auto if !p.smooth_edge_pairs().is_empty() => cup_smooth(&p, index, ring),
        Theorem::Auto if p.m() == 3 && over_z => cup_tri(&p, index),
        Theorem::Auto => match ring {
            Some(r) => cup_pid(&p, index, r),
            None => Err(Failure::Usage("no smooth vertex and not a triangle: pass --ring for the PID formula".into())),
        },
    }
}

fn groups(path: &Path, ring: RingSpec) -> Run {
    Ok(groups_over_ring(&read_pair(path)?, ring).to_json().into())
}

fn oracle(path: &Path, index: Option<usize>) -> Run {
    let np = read_pair(path)?.normalize_smooth(index)?;
    let formula = cup_matrix_smooth(&np)?.to_rational().expect("integer matrix");
    let oracle = oracle_cup_matrix_smooth(&np.pair)?;
    let (gram, basis) = gram_matrix_natural(&np.pair)?;
    Ok(json!({
        "edges": np.pair.vectors(),
        "normalization": normalization_json(&np),
        "formula": rat_matrix_json(&formula),
        "oracle": rat_matrix_json(&oracle),
        "agree": formula == oracle,
        "gram_natural": rat_matrix_json(&gram),
        "gram_basis": basis,
    })
    .into())
}

fn normalize(path: &Path, flavor: Flavor, index: Option<usize>, shear: Option<i64>) -> Run {
    let p = read_pair(path)?;
    let np = match flavor {
        Flavor::Smooth => p.normalize_smooth(index)?,
        Flavor::Half => p.normalize_half(index, shear)?,
        Flavor::Auto if shear.is_none() && !p.smooth_edge_pairs().is_empty() => p.normalize_smooth(index)?,
        Flavor::Auto => p.normalize_half(index, shear)?,
    };
    Ok(np.to_json().into())
}

fn morphism(pair: &Path, morph: &Path) -> std::result::Result<toric4::morphisms::CompatiblePair, Failure> {
    let p = read_pair(pair)?;
    let spec = parse_morphism_json(&read_input(morph)?)?;
    Ok(build_compatible_pair(&spec, &p)?)
}

fn morph(pair: &Path, morph_path: &Path) -> Run {
    let cp = morphism(pair, morph_path)?;
    let report = validate_compatible(&cp)?;
    let index_map = match cellular_index_map(&cp.edge_map) {
        Ok(m) => json!({ "u": m.u, "v": "v" }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({
        "morphism": cp.to_json(),
        "target_characteristic": cp.target.is_characteristic(),
        "compatible": report.is_compatible(),
        "violations": report.violations,
        "degenerate_vertices": report.degenerate_vertices,
        "cellular_index_map": index_map,
    })
    .into())
}

fn lift(pair: &Path, morph_path: &Path) -> Run {
    let cp = morphism(pair, morph_path)?;
    let report = validate_compatible(&cp)?;
    if !report.is_compatible() {
        let first = &report.violations[0];
        return Err(Error::InvalidMorphism(format!("not compatible at edge {}: {}", first.edge, first.reason)).into());
    }
    Ok(match solve_lifting(&cp)? {
        LiftResult::Lifted(l) => {
            let sub = induced_substitution(&l);
            let images: Vec<String> = (1..=sub.target_size()).map(|i| sub.generator(i).to_string()).collect();
            json!({ "lifting": l.matrix.to_rows(), "substitution": images })
        }
        LiftResult::NoLifting { reason, .. } => json!({ "lifting": null, "reason": reason }),
    }
    .into())
}

fn run_fuzz(seed: u64, count: usize) -> Run {
    let r = fuzz(seed, count);
    Ok(Outcome { report: r.to_json(), code: if r.all_passed() { 0 } else { 2 } })
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let inner: Vec<String> = a.iter().map(|x| scalar_text(x).unwrap_or_else(|| x.to_string())).collect();
            Some(format!("[{}]", inner.join(", ")))
        }
        _ => None,
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in map {
        let pad = " ".repeat(indent);
        match scalar_text(v) {
            Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_value(v, indent + 2, out);
            }
        }
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(m) => render_object(m, indent, out),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{}[{i}]\n", " ".repeat(indent)));
                render_value(x, indent + 2, out);
            }
        }
        other => out.push_str(&format!("{}{}\n", " ".repeat(indent), scalar_text(other).unwrap())),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(v).expect("serializable report")),
        Format::Text => {
            let mut s = String::new();
            render_value(v, 0, &mut s);
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Validate { pair } => validate(pair),
        Command::Groups { pair, ring } => groups(pair, *ring),
        Command::Cup { pair, ring, theorem, index } => cup(pair, *ring, *theorem, *index),
        Command::Oracle { pair, index } => oracle(pair, *index),
        Command::Normalize { pair, flavor, index, shear } => normalize(pair, *flavor, *index, *shear),
        Command::Morph { pair, morph: m } => morph(pair, m),
        Command::Lift { pair, morph: m } => lift(pair, m),
        Command::Fuzz { seed, count } => run_fuzz(*seed, *count),
    };
    match result {
        Ok(o) => {
            print!("{}", render(&o.report, cli.format));
            ExitCode::from(o.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { 2 } else { 1 })
        }
    }
}
