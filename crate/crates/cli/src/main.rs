//! `bgr` — detectors, classifiers, constructions, closed-form values and
//! verification search for exact edge-colorings of complete bipartite graphs.
//!
//! Exit codes: 0 the question is answered "holds/found/value", 1 answered
//! "fails/absent", 2 usage or input error, 3 inconclusive (budget).

mod grammar;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use bgr_core::bigraph::{BigraphJson, ColoredBigraph};
use bgr_core::catalog::{self, BgrOutcome};
use bgr_core::constructions::{self, SporadicP5};
use bgr_core::patterns::{find_monochromatic, find_rainbow};
use bgr_core::search::report::VerificationReport;
use bgr_core::search::verify::{BgrPointOptions, PointMode, StructureCheckOptions};
use bgr_core::search::{self, AvoidSpec, SearchError, SearchStats};
use bgr_core::structure::{classify, Classification, StructureTheorem};
use bgr_core::Certificate;

use grammar::{parse_pattern, parse_target};

#[derive(Parser)]
#[command(name = "bgr", version, about = "Exact edge-colorings of complete bipartite graphs: rainbow/monochromatic detection, structure classification, extremal constructions, closed-form values, and machine verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect a rainbow pattern or a monochromatic target in a coloring.
    Detect {
        /// `.cbg` file ("-" for stdin)
        #[arg(long)]
        input: PathBuf,
        /// rainbow pattern to look for: P4, P5 or K1,3
        #[arg(long)]
        rainbow: Option<String>,
        /// monochromatic target, e.g. "P2+P4" or "K3,3"
        #[arg(long)]
        mono: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a rainbow-free coloring into a structure-theorem case.
    Classify {
        /// T13 (rainbow P4), T14 (rainbow P5) or T21 (rainbow K1,3)
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit an extremal lower-bound coloring (or a sporadic coloring).
    Construct {
        /// T31, T32, T33, T34, C31, T36, T41 or T42
        #[arg(long, conflicts_with = "sporadic")]
        theorem: Option<String>,
        /// the monochromatic target the theorem speaks about
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        k: Option<u16>,
        /// `n3` or `n4`: the sporadic rainbow-P5-free colorings
        #[arg(long)]
        sporadic: Option<String>,
        /// write the `.cbg` here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a closed-form bipartite Gallai-Ramsey value.
    Formula {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: u16,
        #[arg(long)]
        json: bool,
    },
    /// Bipartition statistics s, t, s*, t* (and the two-sided bounds with --k).
    Stats {
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: Option<u16>,
        #[arg(long)]
        json: bool,
    },
    /// Avoidance searches.
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    /// Machine checks of the structure theorems and closed-form values.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// node budget before giving up (inconclusive)
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    /// worker threads for the subtree task pool
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Two-color bipartite Ramsey search: does K_{n,n} admit an exact
    /// 2-coloring without a monochromatic copy of the target?
    Br2 {
        #[arg(long)]
        target: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// General avoidance search over exact k-colorings.
    Avoid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u16,
        #[arg(long)]
        rainbow: Option<String>,
        #[arg(long)]
        mono: Option<String>,
        /// admit colorings that use fewer than k colors
        #[arg(long)]
        allow_inexact: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check a structure theorem over every rainbow-free exact coloring of
    /// K_{n,n} with up to kmax colors.
    Structure {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        kmax: u16,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Verify a closed-form value point: extremal construction, per-N
    /// absence (exhaustive or seeded sampling), catalog agreement.
    Point {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: u16,
        /// comma-separated board sizes N to check (default: value, value+1)
        #[arg(long)]
        nvalues: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// seed for randomized adversaries; no hidden entropy
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// auto, exhaustive or randomized
        #[arg(long, default_value = "auto")]
        mode: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_coloring(path: &PathBuf) -> Result<ColoredBigraph, String> {
    let text = if path.as_os_str() == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    ColoredBigraph::parse(&text).map_err(|e| e.to_string())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DetectOutput {
    query: String,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassifyOutput {
    theorem: String,
    outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<bgr_core::structure::StructureWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FormulaOutput {
    pattern: String,
    target: String,
    k: u16,
    outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    theorems: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    hypotheses_checked: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nearest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violated: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StatsOutput {
    target: String,
    s: usize,
    t: usize,
    s_star: usize,
    t_star: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    li_bounds: Option<LiBoundsOutput>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LiBoundsOutput {
    lower: u64,
    upper: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<u64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SearchOutput {
    question: String,
    outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BigraphJson>,
    stats: SearchStats,
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Detect { input, rainbow, mono, json } => {
            let g = read_coloring(&input)?;
            let (query, cert) = match (rainbow, mono) {
                (Some(p), None) => {
                    let pattern = parse_pattern(&p)?;
                    (format!("rainbow {pattern}"), find_rainbow(&g, pattern))
                }
                (None, Some(h)) => {
                    let target = parse_target(&h)?;
                    (format!("monochromatic {target}"), find_monochromatic(&g, &target))
                }
                _ => return Err("pass exactly one of --rainbow or --mono".into()),
            };
            let found = cert.is_some();
            if json {
                let out = DetectOutput { query: query.clone(), found, certificate: cert };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else if let Some(c) = &cert {
                println!("{query}: found, color {:?}, edges {:?}", c.color, c.edges);
            } else {
                println!("{query}: absent");
            }
            Ok(if found { EXIT_YES } else { EXIT_NO })
        }
        Command::Classify { theorem, input, json } => {
            let t = StructureTheorem::parse(&theorem)
                .ok_or_else(|| format!("unknown theorem `{theorem}`; one of T13, T14, T21"))?;
            let g = read_coloring(&input)?;
            let classification = classify(&g, t).map_err(|e| e.to_string())?;
            let (out, code) = match classification {
                Classification::Case { label, witness } => (
                    ClassifyOutput {
                        theorem: t.to_string(),
                        outcome: "case".into(),
                        case: Some(label.to_string()),
                        witness,
                        certificate: None,
                    },
                    EXIT_YES,
                ),
                Classification::NotApplicable(cert) => (
                    ClassifyOutput {
                        theorem: t.to_string(),
                        outcome: "rainbow-present".into(),
                        case: None,
                        witness: None,
                        certificate: Some(*cert),
                    },
                    EXIT_NO,
                ),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                match &out.case {
                    Some(c) => println!("{t} case ({c})"),
                    None => println!("{t} not applicable: the coloring has a rainbow {}", t.pattern()),
                }
            }
            Ok(code)
        }
        Command::Construct { theorem, target, k, sporadic, output } => {
            let g = if let Some(which) = sporadic {
                match which.to_ascii_lowercase().as_str() {
                    "n3" => constructions::sporadic_p5(SporadicP5::N3),
                    "n4" => constructions::sporadic_p5(SporadicP5::N4),
                    other => return Err(format!("unknown sporadic coloring `{other}`; n3 or n4")),
                }
            } else {
                let theorem = theorem.ok_or("pass --theorem with --target and --k, or --sporadic")?;
                let id = catalog::TheoremId::parse(&theorem)
                    .ok_or_else(|| format!("unknown theorem id `{theorem}`"))?;
                let target = parse_target(&target.ok_or("--target is required with --theorem")?)?;
                let k = k.ok_or("--k is required with --theorem")?;
                let instance = catalog::match_instances(id.pattern(), &target, k)
                    .into_iter()
                    .find(|inst| inst.id() == id)
                    .ok_or_else(|| format!("target {target} is not in {id}'s family"))?;
                instance.check_hypotheses().map_err(|clause| clause.to_string())?;
                constructions::lower_bound_for(&instance).map_err(|e| e.to_string())?
            };
            let text = g.render();
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(EXIT_YES)
        }
        Command::Formula { pattern, target, k, json } => {
            let p = parse_pattern(&pattern)?;
            let h = parse_target(&target)?;
            let outcome = catalog::bgr_value(p, &h, k).map_err(|e| e.to_string())?;
            let (out, code) = match outcome {
                BgrOutcome::Value { value, theorems, hypotheses_checked } => (
                    FormulaOutput {
                        pattern: p.to_string(),
                        target: h.to_string(),
                        k,
                        outcome: "value".into(),
                        theorem_id: Some(theorems[0].to_string()),
                        value: Some(value),
                        theorems: theorems.iter().map(|t| t.to_string()).collect(),
                        hypotheses_checked,
                        nearest: None,
                        violated: None,
                    },
                    EXIT_YES,
                ),
                BgrOutcome::OutOfTheoremRange { nearest, violated } => (
                    FormulaOutput {
                        pattern: p.to_string(),
                        target: h.to_string(),
                        k,
                        outcome: "outOfTheoremRange".into(),
                        theorem_id: None,
                        value: None,
                        theorems: vec![],
                        hypotheses_checked: vec![],
                        nearest: nearest.map(|t| t.to_string()),
                        violated,
                    },
                    EXIT_NO,
                ),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else if let Some(v) = out.value {
                println!("bgr_{k}({p} : {h}) = {v}  [{}]", out.theorems.join(", "));
            } else {
                println!(
                    "bgr_{k}({p} : {h}): no theorem applies{}",
                    match (&out.nearest, &out.violated) {
                        (Some(near), Some(clause)) => format!("; nearest {near}, violated: {clause}"),
                        _ => String::new(),
                    }
                );
            }
            Ok(code)
        }
        Command::Stats { target, k, json } => {
            let h = parse_target(&target)?;
            let st = catalog::bipartition_stats(&h);
            let li = match k {
                Some(k) => match catalog::li_bounds(&h, k) {
                    Ok(b) => Some(LiBoundsOutput { lower: b.lower, upper: b.upper, exact: b.exact }),
                    Err(e) => {
                        eprintln!("note: {e}");
                        None
                    }
                },
                None => None,
            };
            let out = StatsOutput {
                target: h.to_string(),
                s: st.s,
                t: st.t,
                s_star: st.s_star,
                t_star: st.t_star,
                li_bounds: li,
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{h}: s={} t={} s*={} t*={}", st.s, st.t, st.s_star, st.t_star);
                if let Some(li) = &out.li_bounds {
                    match li.exact {
                        Some(v) => println!("bgr bounds (rainbow P4): exactly {v}"),
                        None => println!("bgr bounds (rainbow P4): [{}, {}]", li.lower, li.upper),
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Command::Search { what } => run_search(what),
        Command::Verify { what } => run_verify(what),
    }
}

fn run_search(cmd: SearchCmd) -> Result<u8, String> {
    let (question, spec, budget, json) = match cmd {
        SearchCmd::Br2 { target, n, budget, json } => {
            let h = parse_target(&target)?;
            (
                format!("exact 2-coloring of K_{{{n},{n}}} avoiding monochromatic {h}"),
                AvoidSpec { n, k: 2, forbid_rainbow: None, forbid_mono: Some(h), require_exact: true },
                budget,
                json,
            )
        }
        SearchCmd::Avoid { n, k, rainbow, mono, allow_inexact, budget, json } => {
            let forbid_rainbow = rainbow.map(|p| parse_pattern(&p)).transpose()?;
            let forbid_mono = mono.map(|h| parse_target(&h)).transpose()?;
            if forbid_rainbow.is_none() && forbid_mono.is_none() {
                return Err("pass --rainbow and/or --mono".into());
            }
            let q = format!(
                "exact {k}-coloring of K_{{{n},{n}}} avoiding {}",
                match (&forbid_rainbow, &forbid_mono) {
                    (Some(p), Some(h)) => format!("rainbow {p} and monochromatic {h}"),
                    (Some(p), None) => format!("rainbow {p}"),
                    (None, Some(h)) => format!("monochromatic {h}"),
                    (None, None) => unreachable!(),
                }
            );
            (
                q,
                AvoidSpec { n, k, forbid_rainbow, forbid_mono, require_exact: !allow_inexact },
                budget,
                json,
            )
        }
    };
    match search::exists_avoiding(&spec, budget.budget, budget.jobs) {
        Ok((witness, stats)) => {
            let found = witness.is_some();
            let out = SearchOutput {
                question: question.clone(),
                outcome: if found { "found" } else { "absent" }.into(),
                witness: witness.as_ref().map(BigraphJson::from),
                stats,
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else if let Some(g) = &witness {
                println!("{question}: found");
                print!("{g}");
            } else {
                println!("{question}: absent (complete search, {} nodes)", stats.nodes);
            }
            Ok(if found { EXIT_YES } else { EXIT_NO })
        }
        Err(SearchError::BudgetExceeded { budget, visited }) => {
            let out = SearchOutput {
                question: question.clone(),
                outcome: "inconclusive".into(),
                witness: None,
                stats: SearchStats { nodes: visited, ..Default::default() },
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{question}: inconclusive (budget {budget} exhausted)");
            }
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<u8, String> {
    let (report, json): (VerificationReport, bool) = match cmd {
        VerifyCmd::Structure { theorem, n, kmax, budget, json } => {
            let t = StructureTheorem::parse(&theorem)
                .ok_or_else(|| format!("unknown theorem `{theorem}`; one of T13, T14, T21"))?;
            let opts = StructureCheckOptions { k_max: kmax, node_budget: budget.budget, jobs: budget.jobs };
            (
                search::check_structure_theorem(t, n, &opts).map_err(|e| e.to_string())?,
                json,
            )
        }
        VerifyCmd::Point { pattern, target, k, nvalues, samples, seed, mode, budget, json } => {
            let p = parse_pattern(&pattern)?;
            let h = parse_target(&target)?;
            let n_values = nvalues
                .map(|s| {
                    s.split(',')
                        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad N `{x}`")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            let mode = match mode.as_str() {
                "auto" => PointMode::Auto,
                "exhaustive" => PointMode::Exhaustive,
                "randomized" => PointMode::Randomized,
                other => return Err(format!("unknown mode `{other}`")),
            };
            let opts = BgrPointOptions {
                n_values,
                samples_per_shape: samples,
                seed,
                node_budget: budget.budget,
                jobs: budget.jobs,
                mode,
            };
            (
                search::verify_bgr_point(p, &h, k, &opts).map_err(|e| e.to_string())?,
                json,
            )
        }
    };
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    Ok(report.exit_code() as u8)
}
