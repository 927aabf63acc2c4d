use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use galois5::classify::{classify, ClassificationResult};
use galois5::cover::{self, CoverError, IntermediateCovering};
use galois5::decomp::{self, DecompError};
use galois5::genvec::{self, construct_witness, enumerate_monodromy, GenvecError, Witness};
use galois5::grp::TransitiveClass;
use galois5::ram::{multisets, RamData, TypeCounts};

const PARSE_ERROR: u8 = 2;
const UNREALIZABLE: u8 = 3;
const BUDGET_EXCEEDED: u8 = 4;

/// Degree-5 branched coverings: monodromy, intermediate coverings and
/// Jacobian decompositions.
#[derive(Parser)]
#[command(name = "galois5", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Possible monodromy groups and the clause that decides them.
    Classify {
        /// Ramification data, e.g. "g=0; 4,1:4,1:2,2,1".
        data: String,
        #[command(flatten)]
        common: Common,
    },
    /// A generating vector for each possible group.
    Witness {
        data: String,
        #[command(flatten)]
        common: Common,
    },
    /// Genus and ramification of every intermediate covering.
    Cover {
        data: String,
        #[command(flatten)]
        common: Common,
    },
    /// Group algebra decomposition of the Jacobian of the Galois closure.
    Decompose {
        /// Ramification data; omit it and pass --counts for a symbolic base genus.
        data: Option<String>,
        /// Branch type counts, e.g. "n2=2,n3=1".
        #[arg(long, conflicts_with = "data")]
        counts: Option<String>,
        /// Base genus to use with --counts.
        #[arg(long, requires = "counts")]
        genus: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the classifier with exhaustive search over a grid and
    /// re-check witnesses, covering tables and decompositions.
    Verify {
        /// Maximal base genus, number of branch values and total degree.
        #[arg(long, default_value = "1,4,12")]
        grid: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// C5, D5, AffF5, A5 or S5.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bound on the size of exhaustive searches.
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(m: impl ToString) -> Failure {
        Failure {
            code: PARSE_ERROR,
            message: m.to_string(),
        }
    }

    fn unrealizable(m: impl ToString) -> Failure {
        Failure {
            code: UNREALIZABLE,
            message: m.to_string(),
        }
    }
}

impl From<GenvecError> for Failure {
    fn from(e: GenvecError) -> Failure {
        let code = match e {
            GenvecError::BudgetExceeded { .. } => BUDGET_EXCEEDED,
            GenvecError::NotRealizable { .. } => UNREALIZABLE,
            GenvecError::LengthMismatch { .. } => PARSE_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Failure {
        Failure::unrealizable(e)
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Failure {
        Failure::unrealizable(e)
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Classify { common, .. }
        | Command::Witness { common, .. }
        | Command::Cover { common, .. }
        | Command::Decompose { common, .. }
        | Command::Verify { common, .. } => common.format,
    };
    match run(cli.command) {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            match format {
                Format::Text => eprintln!("error: {}", f.message),
                Format::Json => println!("{}", json!({ "error": f.message, "exit_code": f.code })),
            }
            ExitCode::from(f.code)
        }
    }
}

fn parse_data(s: &str) -> Result<RamData, Failure> {
    s.parse().map_err(Failure::parse)
}

fn parse_group(s: &Option<String>) -> Result<Option<TransitiveClass>, Failure> {
    s.as_deref()
        .map(|g| g.parse().map_err(Failure::parse))
        .transpose()
}

fn json_of<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable report")
}

/// The group the user named, or the only possible one.
fn chosen_group(r: &ClassificationResult, named: Option<TransitiveClass>) -> Result<TransitiveClass, Failure> {
    if r.possible.is_empty() {
        return Err(Failure::unrealizable(format!("{} is not realizable", r.ramification)));
    }
    match named {
        Some(g) if r.allows(g) => Ok(g),
        Some(g) => Err(Failure::unrealizable(format!(
            "{g} is not a monodromy group for {}",
            r.ramification
        ))),
        None if r.possible.len() == 1 => Ok(*r.possible.iter().next().unwrap()),
        None => Err(Failure::parse(format!(
            "several groups are possible for {}; choose one with --group",
            r.ramification
        ))),
    }
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Classify { data, common } => run_classify(&parse_data(&data)?, &common),
        Command::Witness { data, common } => run_witness(&parse_data(&data)?, &common),
        Command::Cover { data, common } => run_cover(&parse_data(&data)?, &common),
        Command::Decompose {
            data,
            counts,
            genus,
            common,
        } => run_decompose(data, counts, genus, &common),
        Command::Verify { grid, common } => run_verify(&grid, &common),
    }
}

fn run_classify(d: &RamData, common: &Common) -> Result<Output, Failure> {
    let r = classify(d);
    let mut text = r.to_string();
    let mut json = json_of(&r);
    if let Some(budget) = common.budget {
        let found = enumerate_monodromy(d, budget)?;
        let agrees = found == r.possible;
        text.push_str(&format!(
            "Exhaustive search {}.\n",
            if agrees { "agrees" } else { "disagrees" }
        ));
        json["oracle"] = json!({ "possible": found, "agrees": agrees });
    }
    let code = if r.possible.is_empty() { UNREALIZABLE } else { 0 };
    Ok(Output { text, json, code })
}

fn witnesses(d: &RamData, common: &Common) -> Result<Vec<Witness>, Failure> {
    let r = classify(d);
    let groups: Vec<TransitiveClass> = match parse_group(&common.group)? {
        Some(g) => vec![chosen_group(&r, Some(g))?],
        None if r.possible.is_empty() => {
            return Err(Failure::unrealizable(format!("{d} is not realizable")))
        }
        None => r.possible.iter().copied().collect(),
    };
    groups
        .into_iter()
        .map(|g| Ok(construct_witness(d, g)?))
        .collect()
}

fn run_witness(d: &RamData, common: &Common) -> Result<Output, Failure> {
    let ws = witnesses(d, common)?;
    let mut text = String::new();
    for w in &ws {
        text.push_str(&format!("{}: {}\n", w.group, w.vector));
    }
    Ok(Output {
        text,
        json: json!({ "ramification": d, "witnesses": ws }),
        code: 0,
    })
}

fn cover_rows(d: &RamData, cls: TransitiveClass) -> Result<Vec<IntermediateCovering>, Failure> {
    let w = construct_witness(d, cls)?;
    let sig = cover::geometric_signature(&w.vector, d)?;
    Ok(cover::cover_table(&sig, cls)?)
}

fn run_cover(d: &RamData, common: &Common) -> Result<Output, Failure> {
    let cls = chosen_group(&classify(d), parse_group(&common.group)?)?;
    let rows = cover_rows(d, cls)?;
    let closure = d.closure_signature(cls);
    let mut text = format!("group: {cls}\nsignature: {closure}\n");
    text.push_str(&format!(
        "{:<6} {:>6} {:>6} {:>10} {:>12}  orbits\n",
        "H", "[G:H]", "genus", "deg R(H)", "deg R(X^/H)"
    ));
    for r in &rows {
        let orbits: Vec<String> = r
            .ram_profile_per_branch
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        text.push_str(&format!(
            "{:<6} {:>6} {:>6} {:>10} {:>12}  {}\n",
            r.node.unwrap_or("?"),
            r.degree_over_base,
            r.genus,
            r.deg_ram_to_base,
            r.deg_ram_from_closure,
            orbits.join(" | ")
        ));
    }
    Ok(Output {
        text,
        json: json!({ "group": cls, "signature": closure.to_string(), "coverings": rows }),
        code: 0,
    })
}

fn run_decompose(
    data: Option<String>,
    counts: Option<String>,
    genus: Option<u32>,
    common: &Common,
) -> Result<Output, Failure> {
    let named = parse_group(&common.group)?;
    let report = match (data, counts) {
        (Some(data), None) => {
            let d = parse_data(&data)?;
            let cls = chosen_group(&classify(&d), named)?;
            decomp::decompose_jacobian(&d, cls)?
        }
        (None, Some(counts)) => {
            let n: TypeCounts = counts.parse().map_err(Failure::parse)?;
            let cls = named.ok_or_else(|| Failure::parse("--counts needs --group"))?;
            if let Some(g) = genus {
                let d = RamData::new(g, n.types());
                if !classify(&d).allows(cls) {
                    return Err(Failure::unrealizable(format!(
                        "{cls} is not a monodromy group for {d}"
                    )));
                }
            }
            decomp::report(cls, genus, &n)?
        }
        _ => return Err(Failure::parse("give ramification data or --counts")),
    };
    Ok(Output {
        text: report.to_string(),
        json: json_of(&report),
        code: 0,
    })
}

#[derive(Serialize, Default)]
struct VerifySummary {
    cases: usize,
    disagreements: Vec<String>,
    witness_failures: Vec<String>,
    table_failures: Vec<String>,
    decomposition_failures: Vec<String>,
}

impl VerifySummary {
    fn passed(&self) -> bool {
        self.disagreements.is_empty()
            && self.witness_failures.is_empty()
            && self.table_failures.is_empty()
            && self.decomposition_failures.is_empty()
    }
}

fn parse_grid(s: &str) -> Result<(u32, usize, u32), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure::parse(format!("bad grid {s:?}, expected gmax,nmax,degmax"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

fn verify_case(d: &RamData, budget: u128, s: &mut VerifySummary) -> Result<(), Failure> {
    let r = classify(d);
    let found = enumerate_monodromy(d, budget)?;
    if found != r.possible {
        s.disagreements.push(format!(
            "{d}: classifier {:?}, search {:?}",
            r.possible, found
        ));
    }
    let n = d.counts();
    for cls in &r.possible {
        let w = construct_witness(d, *cls)?;
        let valid = genvec::validate(&w.vector, d).is_ok_and(|v| v.is_valid())
            && w.vector.generated() == *cls.group();
        if !valid {
            s.witness_failures.push(format!("{d} {cls}"));
            continue;
        }
        let sig = cover::geometric_signature(&w.vector, d)?;
        for row in cover::cover_table(&sig, *cls)? {
            let Some(label) = row.node else { continue };
            let f = cover::table_form(*cls, label)?;
            let agrees = f.genus.eval_int(d.base_genus, &n) == Some(row.genus as i64)
                && f.deg_to_base.eval_int(d.base_genus, &n) == Some(row.deg_ram_to_base as i64)
                && f.deg_from_closure.eval_int(d.base_genus, &n)
                    == Some(row.deg_ram_from_closure as i64);
            if !agrees {
                s.table_failures.push(format!("{d} {cls} {label}"));
            }
        }
        let rep = decomp::decompose_jacobian(d, *cls)?;
        for c in rep.checks.iter().filter(|c| !c.pass) {
            s.decomposition_failures.push(format!("{d} {cls}: {}", c.name));
        }
    }
    s.cases += 1;
    Ok(())
}

fn run_verify(grid: &str, common: &Common) -> Result<Output, Failure> {
    let (gmax, nmax, degmax) = parse_grid(grid)?;
    let budget = common.budget.unwrap_or(genvec::DEFAULT_BUDGET);
    let mut s = VerifySummary::default();
    for c in multisets(nmax, degmax) {
        for g in 0..=gmax {
            verify_case(&RamData::new(g, c.types()), budget, &mut s)?;
        }
    }
    let pass = s.passed();
    let mut text = format!("{} cases\n", s.cases);
    for (name, list) in [
        ("classifier/search disagreements", &s.disagreements),
        ("invalid witnesses", &s.witness_failures),
        ("covering table mismatches", &s.table_failures),
        ("failed decomposition checks", &s.decomposition_failures),
    ] {
        text.push_str(&format!("{name}: {}\n", list.len()));
        for x in list {
            text.push_str(&format!("  {x}\n"));
        }
    }
    text.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    let mut json = json_of(&s);
    json["pass"] = json!(pass);
    Ok(Output {
        text,
        json,
        code: if pass { 0 } else { 1 },
    })
}
