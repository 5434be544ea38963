use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use crate::chartab::{builtin, ActionCharacter, CharacterTable};
use crate::endo::{random_automorphism, random_torelli, EndoSpec};
use crate::error::{Error, Result};
use crate::johnson::{md_cocycle, module_a, module_a_w, skew_check, submodule_w, CocycleValue, Degree2Basis};
use crate::magnus::{GroupKind, RingContext, DEFAULT_DEGREE};
use crate::padic_linalg::{ModuleStructure, PadicContext, DEFAULT_PRECISION};

use super::files::{AutoSpecFile, CharTableFile, Overrides, DEFAULT_PRIME};
use super::{demo_fricke_macbeath, demo_hyperelliptic, torsion_verdict};

#[derive(Debug, Parser)]
#[command(name = "mdjohnson", version, about = "Modified-diagonal and Johnson cocycles at finite l-adic precision")]
struct Cli {
    /// Coefficient prime l [default: 2, or the input file's value]
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Work modulo l^N [default: 16, or the input file's value]
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Truncate series modulo I^d [default: 3, or the input file's value]
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Seed for commands that draw random data
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Machine-readable output; all numbers are decimal strings
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the cocycle matrix of an automorphism
    Cocycle { spec: PathBuf },
    /// Reduce the cocycle into A(G) and print its coordinates
    Johnson { spec: PathBuf },
    /// Structure of A(G), W and A_W(G)
    #[command(group(ArgGroup::new("group").required(true).args(["free", "surface"])))]
    AgStructure {
        #[arg(long)]
        free: Option<usize>,
        #[arg(long)]
        surface: Option<usize>,
    },
    /// Skew-symmetry of the cocycle of a Torelli automorphism
    SkewCheck { spec: PathBuf },
    /// Torsion criterion for a group acting through the given character
    #[command(group(ArgGroup::new("source").required(true).args(["table", "builtin"])))]
    CharCheck {
        table: Option<PathBuf>,
        /// Built-in table: psl2-8, trivial, or cN for the cyclic group of order N ≤ 256
        #[arg(long)]
        builtin: Option<String>,
        /// Integer combination of irreducibles, e.g. "2*chi_2"
        #[arg(long)]
        action: String,
    },
    /// Worked examples
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Print a random automorphism as a spec file (deterministic in --seed)
    RandomSpec {
        #[arg(long)]
        free: usize,
        /// Draw from the Torelli subgroup
        #[arg(long)]
        torelli: bool,
        #[arg(long, default_value_t = 2)]
        complexity: usize,
    },
}

#[derive(Debug, Subcommand)]
enum Demo {
    FrickeMacbeath,
    Hyperelliptic {
        #[arg(long)]
        genus: usize,
    },
}

enum Outcome {
    Ok(String),
    CheckFailed(String),
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 when a check fails, 2 on invalid input.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Ok(Outcome::CheckFailed(text)) => {
            let _ = out.write_all(text.as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn overrides(cli: &Cli) -> Overrides {
    Overrides { prime: cli.prime, precision: cli.precision, degree: cli.degree }
}

fn load_endo(cli: &Cli, spec: &PathBuf) -> Result<EndoSpec> {
    AutoSpecFile::load(spec)?.to_endo(overrides(cli))
}

fn flag_context(cli: &Cli, kind: GroupKind) -> Result<RingContext> {
    let padic = PadicContext::new(cli.prime.unwrap_or(DEFAULT_PRIME), cli.precision.unwrap_or(DEFAULT_PRECISION))?;
    RingContext::new(kind, padic, cli.degree.unwrap_or(DEFAULT_DEGREE))
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn context_json(ctx: RingContext) -> Value {
    let (kind, size) = match ctx.kind() {
        GroupKind::Free { rank } => ("free", rank),
        GroupKind::Surface { genus } => ("surface", genus),
    };
    json!({
        "kind": kind,
        "size": size.to_string(),
        "prime": ctx.padic().prime().to_string(),
        "precision": ctx.padic().precision().to_string(),
        "degree": ctx.degree().to_string(),
    })
}

fn structure_json(m: &ModuleStructure) -> Value {
    json!({
        "free_rank": m.free_rank.to_string(),
        "torsion_exponents": m.torsion_exponents.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "precision": m.precision.to_string(),
    })
}

fn word_label(ctx: RingContext, w: &crate::magnus::Monomial) -> String {
    w.letters().iter().map(|&i| ctx.generator_label(i as usize)).collect()
}

fn cocycle_json(c: &CocycleValue) -> Value {
    let ctx = c.context();
    let basis = Degree2Basis::new(ctx);
    let columns: Vec<Value> = (0..ctx.generators())
        .map(|j| {
            json!({
                "generator": ctx.generator_label(j),
                "coefficients": c.matrix().column(j).iter().map(|s| s.signed().to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "context": context_json(ctx),
        "basis": basis.words().iter().map(|w| word_label(ctx, w)).collect::<Vec<_>>(),
        "columns": columns,
    })
}

fn builtin_table(name: &str) -> Result<CharacterTable> {
    match name {
        "psl2-8" => Ok(builtin::psl2_8()),
        "trivial" => Ok(builtin::trivial()),
        _ => {
            let n = name
                .strip_prefix('c')
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| (1..=256).contains(&n))
                .ok_or_else(|| Error::Schema(format!("unknown built-in table '{name}'")))?;
            builtin::cyclic(n)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Cocycle { spec } => {
            let e = load_endo(cli, spec)?;
            let c = md_cocycle(&e)?;
            if cli.json {
                return Ok(Outcome::Ok(render_json(&cocycle_json(&c))));
            }
            Ok(Outcome::Ok(format!("cocycle over {}\n{c}", e.context())))
        }
        Command::Johnson { spec } => {
            let e = load_endo(cli, spec)?;
            let c = md_cocycle(&e)?;
            let a = module_a(e.context());
            let v = a.reduce(&c)?;
            if cli.json {
                let coords: Vec<Value> = v
                    .coordinates()
                    .iter()
                    .zip(v.exponents())
                    .map(|(x, e)| json!({ "value": x.to_string(), "exponent": e.to_string() }))
                    .collect();
                let doc = json!({
                    "context": context_json(e.context()),
                    "module": structure_json(a.structure()),
                    "coordinates": coords,
                    "is_zero": v.is_zero(),
                });
                return Ok(Outcome::Ok(render_json(&doc)));
            }
            let mut text = format!("A(G): {}\n", a.structure());
            if v.is_zero() {
                text.push_str("Johnson class: 0\n");
            } else {
                let coords: Vec<String> = v
                    .coordinates()
                    .iter()
                    .zip(v.exponents())
                    .map(|(x, e)| if *e == a.structure().precision { x.to_string() } else { format!("{x} mod l^{e}") })
                    .collect();
                text.push_str(&format!("Johnson class: [{}]\n", coords.join(", ")));
            }
            Ok(Outcome::Ok(text))
        }
        Command::AgStructure { free, surface } => {
            let kind = match (free, surface) {
                (Some(r), _) => GroupKind::Free { rank: *r },
                (None, Some(g)) => GroupKind::Surface { genus: *g },
                (None, None) => unreachable!("clap enforces the group"),
            };
            let ctx = flag_context(cli, kind)?;
            let a = module_a(ctx);
            let w = submodule_w(ctx);
            let aw = module_a_w(ctx)?;
            if cli.json {
                let doc = json!({
                    "context": context_json(ctx),
                    "A": structure_json(a.structure()),
                    "W_rank": w.rank().to_string(),
                    "A_W": structure_json(aw.structure()),
                });
                return Ok(Outcome::Ok(render_json(&doc)));
            }
            Ok(Outcome::Ok(format!(
                "{ctx}\nA(G): {}\nW: rank {}\nA_W(G): {}\n",
                a.structure(),
                w.rank(),
                aw.structure()
            )))
        }
        Command::SkewCheck { spec } => {
            let e = load_endo(cli, spec)?;
            let report = skew_check(&e)?;
            let text = if cli.json {
                let violations: Vec<Value> = report
                    .violations
                    .iter()
                    .map(|v| {
                        json!({
                            "generator": v.generator.to_string(),
                            "k": v.k.to_string(),
                            "l": v.l.to_string(),
                            "sum": v.sum.signed().to_string(),
                        })
                    })
                    .collect();
                render_json(&json!({
                    "context": context_json(e.context()),
                    "skew": report.skew,
                    "violations": violations,
                    "precision_boundary_diagonals": report.precision_boundary_diagonals.iter()
                        .map(|(i, k)| vec![i.to_string(), k.to_string()]).collect::<Vec<_>>(),
                    "witness": report.witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "passed": report.passed(),
                }))
            } else {
                let mut t = format!("skew-symmetric: {}\n", if report.skew { "yes" } else { "no" });
                for v in &report.violations {
                    let ctx = e.context();
                    t.push_str(&format!(
                        "  b({})[{},{}] + b({})[{},{}] = {}\n",
                        ctx.generator_label(v.generator),
                        v.k + 1,
                        v.l + 1,
                        ctx.generator_label(v.generator),
                        v.l + 1,
                        v.k + 1,
                        v.sum.signed()
                    ));
                }
                for (i, k) in &report.precision_boundary_diagonals {
                    t.push_str(&format!("  flagged: diagonal b({})[{},{}] = l^(N-1) at l = 2\n", e.context().generator_label(*i), k + 1, k + 1));
                }
                let zero = report.witness_is_zero();
                t.push_str(&format!("comultiplication witness: {}\n", if zero { "zero" } else { "NONZERO" }));
                if !zero {
                    for (i, w) in report.witness.iter().enumerate() {
                        t.push_str(&format!("  {}: {w}\n", e.context().generator_label(i)));
                    }
                }
                t
            };
            Ok(if report.passed() { Outcome::Ok(text) } else { Outcome::CheckFailed(text) })
        }
        Command::CharCheck { table, builtin, action } => {
            let table = match (table, builtin) {
                (Some(path), _) => CharTableFile::load(path)?.to_table()?,
                (None, Some(name)) => builtin_table(name)?,
                (None, None) => unreachable!("clap enforces the group"),
            };
            let chi = ActionCharacter::parse(&table, action)?;
            let verdict = torsion_verdict(&chi, table.order())?;
            let text = if cli.json { render_json(&verdict.to_json()) } else { verdict.to_string() };
            Ok(if verdict.is_certified() { Outcome::Ok(text) } else { Outcome::CheckFailed(text) })
        }
        Command::Demo { demo } => match demo {
            Demo::FrickeMacbeath => {
                let r = demo_fricke_macbeath()?;
                Ok(Outcome::Ok(if cli.json { render_json(&r.to_json()) } else { r.to_string() }))
            }
            Demo::Hyperelliptic { genus } => {
                let r = demo_hyperelliptic(*genus)?;
                Ok(Outcome::Ok(if cli.json { render_json(&r.to_json()) } else { r.to_string() }))
            }
        },
        Command::RandomSpec { free, torelli, complexity } => {
            let ctx = flag_context(cli, GroupKind::Free { rank: *free })?;
            let seed = cli.seed.unwrap_or(0);
            let e = if *torelli {
                random_torelli(ctx, seed, *complexity)?
            } else {
                random_automorphism(ctx, seed, *complexity)?
            };
            let mut text = AutoSpecFile::from_endo(&e).to_json();
            text.push('\n');
            Ok(Outcome::Ok(text))
        }
    }
}
