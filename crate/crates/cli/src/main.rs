use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cohomology_ops::cohomology_ops::{adem_secondary, cup_product_table, operation_matrix, sq2_kernel, Operation};
use cohomology_ops::exact_algebra::{PrimeFieldMatrix, Ring};
use cohomology_ops::minimal_model::{cohomology_presentations, homology_presentations, GroupPresentation, ModelCache};
use cohomology_ops::simplicial::{collapse_thin, SimplicialComplex};
use cohomology_ops::Error;

/// Homology, cohomology and cohomology operations of finite simplicial complexes.
#[derive(Parser, Debug)]
#[command(name = "cohomops", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Input {
    /// Complex file: one maximal simplex per line, increasing vertex ids
    input: PathBuf,
    /// Collapse free pairs first; results are still expressed on the input complex
    #[arg(long)]
    thin: bool,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Homology groups in every degree
    Homology {
        #[command(flatten)]
        input: Input,
        /// z or zp:<p>
        #[arg(long, default_value = "z", value_parser = parse_coefficients)]
        coefficients: Ring,
        /// Only this degree
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cohomology groups in every degree
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// z or zp:<p>
        #[arg(long, default_value = "z", value_parser = parse_coefficients)]
        coefficients: Ring,
        /// Only this degree
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Matrix of a cohomology operation on H^dim
    Operation {
        #[command(flatten)]
        input: Input,
        /// sq:<i>, p1:<p> or cup
        #[arg(long, value_parser = parse_op)]
        op: OpSpec,
        /// Source degree
        #[arg(long)]
        dim: usize,
        /// zp:<p>; must agree with the operation
        #[arg(long, value_parser = parse_coefficients)]
        coefficients: Option<Ring>,
    },
    /// Adem secondary operation on a class of N^2
    Secondary {
        #[command(flatten)]
        input: Input,
        /// Comma-separated mod-2 coordinates on the generators of H^2(K; Z)
        #[arg(long, value_delimiter = ',', required = true)]
        class: Vec<u64>,
    },
    /// Check the minimal-model contractions over Z and Z2
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Collapse free pairs and print the thinned complex
    Thin {
        /// Complex file
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug)]
enum OpSpec {
    Sq(usize),
    P1(u64),
    Cup,
}

fn parse_coefficients(s: &str) -> Result<Ring, String> {
    if s == "z" {
        return Ok(Ring::Integers);
    }
    let p = s
        .strip_prefix("zp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("expected z or zp:<p>, got {s:?}"))?;
    Ring::prime_field(p).map_err(|e| e.to_string())
}

fn parse_op(s: &str) -> Result<OpSpec, String> {
    let bad = || format!("expected sq:<i>, p1:<p> or cup, got {s:?}");
    match s.split_once(':') {
        None if s == "cup" => Ok(OpSpec::Cup),
        Some(("sq", i)) => i.parse().map(OpSpec::Sq).map_err(|_| bad()),
        Some(("p1", p)) => p.parse().map(OpSpec::P1).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

enum Failure {
    Input(String),
    Arguments(String),
    Consistency(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Arguments(_) => 2,
            Failure::Consistency(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Arguments(m) | Failure::Consistency(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::Parse { .. } | Error::InvalidSimplex(_) => Failure::Input(m),
            Error::Consistency(_) => Failure::Consistency(m),
            _ => Failure::Arguments(m),
        }
    }
}

fn read_complex(path: &PathBuf) -> Result<SimplicialComplex, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    SimplicialComplex::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<ModelCache, Failure> {
    let k = read_complex(&input.input)?;
    Ok(if input.thin {
        ModelCache::thinned(k)
    } else {
        ModelCache::new(k)
    })
}

/// `Z^r + Z/t₁ + ⋯`, or `0`; over ℤ_p the base is written `Zp`.
fn render_presentation(g: &GroupPresentation, ring: Ring) -> String {
    let base = ring.to_string();
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push(base.clone()),
        r => parts.push(format!("{base}^{r}")),
    }
    let mut torsion = g.torsion.clone();
    torsion.sort();
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn render_matrix(out: &mut String, m: &PrimeFieldMatrix) {
    writeln!(out, "matrix {}x{}:", m.nrows(), m.ncols()).unwrap();
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(u64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
}

fn render_vector(v: &[u64]) -> String {
    if v.is_empty() {
        "(none)".into()
    } else {
        v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn groups(
    out: &mut String,
    symbol: &str,
    list: &[GroupPresentation],
    ring: Ring,
    dim: Option<usize>,
) -> Result<(), Failure> {
    if let Some(q) = dim {
        if q >= list.len() {
            return Err(Failure::Arguments(format!(
                "degree {q} exceeds the dimension of the complex"
            )));
        }
    }
    for (q, g) in list.iter().enumerate() {
        if dim.is_none_or(|d| d == q) {
            writeln!(out, "{symbol}{q} = {}", render_presentation(g, ring)).unwrap();
        }
    }
    Ok(())
}

fn operation(cache: &ModelCache, op: OpSpec, dim: usize, coefficients: Option<Ring>) -> Result<String, Failure> {
    let ring = match (op, coefficients) {
        (OpSpec::Sq(_), c) => {
            if c.is_some_and(|r| r != Ring::Mod(2)) {
                return Err(Failure::Arguments("sq:<i> needs --coefficients zp:2".into()));
            }
            Ring::Mod(2)
        }
        (OpSpec::P1(p), c) => {
            if c.is_some_and(|r| r != Ring::Mod(p)) {
                return Err(Failure::Arguments(format!("p1:{p} needs --coefficients zp:{p}")));
            }
            Ring::prime_field(p)?
        }
        (OpSpec::Cup, None) => Ring::Mod(2),
        (OpSpec::Cup, Some(Ring::Integers)) => {
            return Err(Failure::Arguments("cup needs --coefficients zp:<p>".into()));
        }
        (OpSpec::Cup, Some(r)) => r,
    };
    let mut out = String::new();
    match op {
        OpSpec::Sq(i) => render_matrix(&mut out, &operation_matrix(cache, Operation::Sq(i), dim)?.matrix),
        OpSpec::P1(p) => render_matrix(&mut out, &operation_matrix(cache, Operation::P1(p), dim)?.matrix),
        OpSpec::Cup => {
            // Column i·n + j holds the coordinates of a_i ⌣ a_j.
            let p = ring.characteristic();
            let table = cup_product_table(cache, p, dim)?;
            let rows = cache.model(ring).cohomology_basis(2 * dim)?.dim();
            let columns: Vec<Vec<u64>> = table.into_iter().flatten().collect();
            let m = PrimeFieldMatrix::from_columns(p, rows, &columns)?;
            render_matrix(&mut out, &m);
        }
    }
    Ok(out)
}

fn secondary(cache: &ModelCache, class: &[u64]) -> Result<String, Failure> {
    let n2 = sq2_kernel(cache, 2)?;
    let value = adem_secondary(cache, class)?;
    let mut out = String::new();
    writeln!(out, "H^2(Z) generators: {}", n2.generators.len()).unwrap();
    writeln!(out, "value: {}", render_vector(&value.representative)).unwrap();
    writeln!(out, "indeterminacy: {} vectors", value.indeterminacy.len()).unwrap();
    for v in &value.indeterminacy {
        writeln!(out, "{}", render_vector(v)).unwrap();
    }
    let zero = value.is_zero()?;
    writeln!(out, "coset: {}", if zero { "zero" } else { "nonzero" }).unwrap();
    Ok(out)
}

fn validate(cache: &ModelCache) -> Result<String, Failure> {
    let mut parts = Vec::new();
    let mut failed = Vec::new();
    for ring in [Ring::Integers, Ring::Mod(2)] {
        let built = cache.model(ring);
        let report = built.contraction.check();
        let dual = built.dual.check();
        if report.is_ok() && dual.is_ok() {
            parts.push(format!("OK ({ring})"));
        } else {
            parts.push(format!("FAILED ({ring})"));
            failed.push(format!("{ring}: {report}; dual: {dual}"));
        }
    }
    let line = format!("contraction: {}\n", parts.join(", "));
    if failed.is_empty() {
        Ok(line)
    } else {
        Err(Failure::Consistency(format!("{line}{}", failed.join("\n"))))
    }
}

fn thin(path: &PathBuf) -> Result<String, Failure> {
    let k = read_complex(path)?;
    let t = collapse_thin(&k);
    let report = t.contraction.check();
    if !report.is_ok() {
        return Err(Failure::Consistency(format!("collapse contraction: {report}")));
    }
    Ok(format!(
        "# {} simplices, {} after collapsing\n{}",
        k.total_count(),
        t.complex.total_count(),
        t.complex.to_file_string()
    ))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.verb {
        Verb::Homology {
            input,
            coefficients,
            dim,
        } => {
            let cache = load(&input)?;
            let list = homology_presentations(&cache.model(coefficients).model);
            let mut out = String::new();
            groups(&mut out, "H_", &list, coefficients, dim)?;
            Ok(out)
        }
        Verb::Cohomology {
            input,
            coefficients,
            dim,
        } => {
            let cache = load(&input)?;
            let list = cohomology_presentations(&cache.model(coefficients).model);
            let mut out = String::new();
            groups(&mut out, "H^", &list, coefficients, dim)?;
            Ok(out)
        }
        Verb::Operation {
            input,
            op,
            dim,
            coefficients,
        } => operation(&load(&input)?, op, dim, coefficients),
        Verb::Secondary { input, class } => secondary(&load(&input)?, &class),
        Verb::Validate { input } => validate(&load(&input)?),
        Verb::Thin { input } => thin(&input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
