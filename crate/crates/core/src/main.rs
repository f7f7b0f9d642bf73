use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use lipknot::certify::{certify_with, content_hash, verify_corpus};
use lipknot::corpus::{concrete_names, corpus, corpus_names, CorpusEntry};
use lipknot::diagram::{parse_braid, parse_pd, LinkDiagram};
use lipknot::germ::{
    attach_knot, break_bridge, insert_bridge, load_germ, save_germ, tangent_cone, twist_bridge, Germ,
};
use lipknot::invariants::{invariant_profile, jones, kauffman_bracket, linking_number, writhe};
use lipknot::random::{random_braid_diagram, random_insertions};
use lipknot::rational::parse_rational;
use lipknot::render::render_germ;
use lipknot::{Error, Result};

#[derive(Parser)]
#[command(name = "lipknot", version, about = "Decorated link diagrams for surface germs in R⁴")]
struct Cli {
    /// Suppress the JSON report.
    #[arg(long, global = true)]
    quiet: bool,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Seed for random-move checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    #[arg(long)]
    pd: Option<String>,
    #[arg(long)]
    braid: Option<String>,
    /// Germ document, or a corpus name.
    #[arg(long)]
    germ: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram or germ and echo its canonical form.
    Parse(Input),
    /// Writhe, linking numbers, bracket, Jones and profile.
    Invariants(Input),
    #[command(subcommand)]
    Op(Op),
    /// Certify that two germs (documents or corpus names) are not equivalent.
    Certify {
        first: String,
        second: String,
        #[arg(short)]
        p: Option<String>,
    },
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Draw a diagram or germ as SVG.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Subcommand)]
enum Op {
    Break {
        #[arg(long)]
        germ: String,
        #[arg(long)]
        site: String,
        #[arg(short)]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Twist {
        #[arg(long)]
        germ: String,
        #[arg(long)]
        site: String,
        #[arg(short, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Attach {
        #[arg(long)]
        germ: String,
        #[arg(long, default_value_t = 0)]
        component: usize,
        #[arg(long)]
        pd: Option<String>,
        #[arg(long)]
        braid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    InsertBridge {
        #[arg(long)]
        germ: String,
        #[arg(long)]
        face: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<u32>,
        #[arg(long)]
        q: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    TangentCone {
        #[arg(long)]
        germ: String,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    /// Write every corpus germ as `<name>.germ` into a directory.
    Make { dir: PathBuf },
    /// Check every corpus pair against its expected verdict.
    Verify,
}

/// Outcome of a command: the report payload and whether an expectation
/// failed.
struct Outcome {
    inputs: Value,
    output: Value,
    mismatch: bool,
}

fn ok(inputs: Value, output: Value) -> Result<Outcome> {
    Ok(Outcome { inputs, output, mismatch: false })
}

fn load(arg: &str) -> Result<Germ> {
    let path = Path::new(arg);
    if path.exists() {
        return load_germ(path);
    }
    // `ex3.X.germ` names the corpus file even before `corpus make` wrote it
    let name = arg.strip_suffix(".germ").unwrap_or(arg);
    match corpus(name) {
        Ok(CorpusEntry::Single(g)) => Ok(g),
        Ok(CorpusEntry::Pair(..)) => Err(Error::UnknownCorpus(format!("{arg} names a pair"))),
        Err(Error::UnknownCorpus(_)) => Err(Error::Io(format!("{arg}: no such file or corpus name"))),
        Err(e) => Err(e),
    }
}

fn read_input(input: &Input) -> Result<(Germ, Value)> {
    match (&input.pd, &input.braid, &input.germ) {
        (Some(pd), None, None) => Ok((Germ::cone("pd", parse_pd(pd)?), json!({"pd": content_hash(pd)}))),
        (None, Some(b), None) => Ok((Germ::cone("braid", parse_braid(b)?), json!({"braid": content_hash(b)}))),
        (None, None, Some(g)) => {
            let germ = load(g)?;
            let h = content_hash(&germ.to_json());
            Ok((germ, json!({"germ": h})))
        }
        _ => Err(Error::Schema("give exactly one of --pd, --braid, --germ".into())),
    }
}

fn knot_input(pd: &Option<String>, braid: &Option<String>) -> Result<LinkDiagram> {
    match (pd, braid) {
        (Some(p), None) => parse_pd(p),
        (None, Some(b)) => parse_braid(b),
        _ => Err(Error::Schema("give exactly one of --pd, --braid for the knot".into())),
    }
}

fn germ_value(g: &Germ) -> Value {
    serde_json::from_str(&g.to_json()).expect("germ JSON parses")
}

fn emit_germ(g: &Germ, out: &Option<PathBuf>, inputs: Value) -> Result<Outcome> {
    if let Some(path) = out {
        save_germ(g, path)?;
    }
    ok(inputs, germ_value(g))
}

fn invariants_value(d: &LinkDiagram) -> Result<Value> {
    let n = d.component_count();
    let mut lks = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            lks.push(json!({"components": [i, j], "lk": linking_number(d, i, j)?}));
        }
    }
    Ok(json!({
        "components": n,
        "crossings": d.crossing_count(),
        "writhe": writhe(d),
        "linking_numbers": lks,
        "bracket": kauffman_bracket(d)?,
        "jones": jones(d)?,
        "profile": invariant_profile(d)?,
    }))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Parse(input) => {
            let (g, inputs) = read_input(input)?;
            let d = &g.diagram;
            ok(
                inputs,
                json!({
                    "pd": d.serialize(),
                    "crossings": d.crossing_count(),
                    "components": d.component_count(),
                    "free_loops": d.free_loops(),
                    "faces": d.faces().len(),
                    "bridges": g.bridges.len(),
                    "pinches": g.pinches.len(),
                }),
            )
        }
        Command::Invariants(input) => {
            let (g, inputs) = read_input(input)?;
            ok(inputs, invariants_value(&g.diagram)?)
        }
        Command::Op(op) => match op {
            Op::Break { germ, site, p, out } => {
                let g = load(germ)?;
                let r = break_bridge(&g, site, parse_rational(p)?)?;
                emit_germ(&r, out, json!({"germ": content_hash(&g.to_json())}))
            }
            Op::Twist { germ, site, k, out } => {
                let g = load(germ)?;
                let r = twist_bridge(&g, site, *k)?;
                emit_germ(&r, out, json!({"germ": content_hash(&g.to_json())}))
            }
            Op::Attach { germ, component, pd, braid, out } => {
                let g = load(germ)?;
                let r = attach_knot(&g, *component, &knot_input(pd, braid)?)?;
                emit_germ(&r, out, json!({"germ": content_hash(&g.to_json())}))
            }
            Op::InsertBridge { germ, face, edges, q, beta, out } => {
                let g = load(germ)?;
                let [a, b] = edges[..] else {
                    return Err(Error::Schema("--edges takes two labels".into()));
                };
                let r = insert_bridge(&g, *face, [a, b], parse_rational(q)?, parse_rational(beta)?)?;
                emit_germ(&r, out, json!({"germ": content_hash(&g.to_json())}))
            }
            Op::TangentCone { germ } => {
                let g = load(germ)?;
                let c = tangent_cone(&g)?;
                let comps = c
                    .components
                    .iter()
                    .map(|d| Ok(json!({"pd": d.serialize(), "jones": jones(d)?})))
                    .collect::<Result<Vec<Value>>>()?;
                ok(
                    json!({"germ": content_hash(&g.to_json())}),
                    json!({"link": c.link.serialize(), "components": comps, "incidences": c.incidences}),
                )
            }
        },
        Command::Certify { first, second, p } => {
            let (a, b) = (load(first)?, load(second)?);
            let p = p.as_deref().map(parse_rational).transpose()?;
            let cert = certify_with(&a, &b, p)?;
            ok(
                json!({"first": cert.germs[0].sha256, "second": cert.germs[1].sha256}),
                serde_json::to_value(&cert).expect("certificate serializes"),
            )
        }
        Command::Corpus(c) => match c {
            CorpusCmd::List => ok(json!({}), json!(corpus_names())),
            CorpusCmd::Make { dir } => {
                std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                let mut written = Vec::new();
                for name in concrete_names() {
                    let g = load(&name)?;
                    let path = dir.join(format!("{name}.germ"));
                    save_germ(&g, &path)?;
                    written.push(json!({"name": name, "sha256": content_hash(&g.to_json())}));
                }
                ok(json!({}), json!(written))
            }
            CorpusCmd::Verify => {
                let mut checks = verify_corpus()?;
                if let Some(seed) = cli.seed {
                    checks.push(random_invariance(seed)?);
                }
                let mismatch = checks.iter().any(|c| !c.passed);
                Ok(Outcome { inputs: json!({"seed": cli.seed}), output: json!(checks), mismatch })
            }
        },
        Command::Render { input, svg } => {
            let (g, inputs) = read_input(input)?;
            let text = render_germ(&g);
            std::fs::write(svg, &text).map_err(|e| Error::Io(format!("{}: {e}", svg.display())))?;
            ok(inputs, json!({"svg": svg.display().to_string(), "sha256": content_hash(&text)}))
        }
    }
}

/// Jones and linking numbers under seeded random Reidemeister insertions.
fn random_invariance(seed: u64) -> Result<lipknot::certify::Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..20 {
        let d = random_braid_diagram(&mut rng, 8);
        let before = invariant_profile(&d)?;
        for (_, e) in random_insertions(&mut rng, &d, 5) {
            if invariant_profile(&e)? != before {
                failures += 1;
            }
        }
    }
    Ok(lipknot::certify::Check {
        name: format!("random moves seed {seed}"),
        passed: failures == 0,
        detail: format!("{failures} profile changes over 100 moves"),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse(_) => "parse",
        Command::Invariants(_) => "invariants",
        Command::Op(Op::Break { .. }) => "op break",
        Command::Op(Op::Twist { .. }) => "op twist",
        Command::Op(Op::Attach { .. }) => "op attach",
        Command::Op(Op::InsertBridge { .. }) => "op insert-bridge",
        Command::Op(Op::TangentCone { .. }) => "op tangent-cone",
        Command::Certify { .. } => "certify",
        Command::Corpus(CorpusCmd::List) => "corpus list",
        Command::Corpus(CorpusCmd::Make { .. }) => "corpus make",
        Command::Corpus(CorpusCmd::Verify) => "corpus verify",
        Command::Render { .. } => "render",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            if !cli.quiet {
                let mut report = json!({
                    "command": command_name(&cli.command),
                    "version": env!("CARGO_PKG_VERSION"),
                    "inputs": out.inputs,
                    "output": out.output,
                });
                if cli.timing {
                    report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
                }
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            ExitCode::from(if out.mismatch { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
