use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flagdesign::constructions::{ag32_design, complete_design, example1_details, example2_baer, paley_complement_11};
use flagdesign::design::{is_flag_transitive, verify_2design, Certificate, DesignJson, IncidenceStructure};
use flagdesign::filters::{admissible_params, case_filter, params_from_r, table2_report, tab1_report, CandidateParams, TABLE2_PAIRS};
use flagdesign::group::{coset_action, Bounds};
use flagdesign::lattice::Strategy;
use flagdesign::psl2::{build_group_str, Catalog, SubgroupTag};
use flagdesign::search::{base_block_search, classify_bounds, classify_theorem_main, Outcome, SearchTask};
use flagdesign::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "flagdesign", version, about = "Flag-transitive 2-(v,k,3) designs with socle PSL(2,q)")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file with `max_cosets`, `max_elements`, `max_exhaustive`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Catalog,
    Exhaustive,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, degree and generators of a group such as `PSL(2,11)` or `M10`.
    Group { spec: String },
    /// Subdegrees of a group on the cosets of a catalog subgroup of its socle.
    Subdegrees {
        #[arg(long)]
        group: String,
        /// Catalog tag: Borel, D+, D-, A4, S4, A5, C<n>, E<n>, SylowP, PSL(2,q0), PGL(2,q0).
        #[arg(long)]
        stab: String,
    },
    /// Builds a known design: example1, example2, ag32, paley11, complete.
    Construct {
        name: String,
        #[arg(long, default_value_t = 25)]
        q: u64,
        #[arg(long, default_value_t = 5)]
        v: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Checks a Design JSON file, and flag-transitivity under a group in its natural action.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Arithmetic filters: a case chain, the stabilizer table, subdegrees, or admissible parameters.
    Filter {
        #[arg(long)]
        case: Option<u8>,
        /// `a..b`, inclusive.
        #[arg(long = "q-range", default_value = "4..100")]
        q_range: String,
        #[arg(long)]
        tab1: bool,
        #[arg(long)]
        table2: bool,
        #[arg(long)]
        admissible: Option<u64>,
    },
    /// Searches a group for a flag-transitive design with parameters `v,b,r,k`.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        params: String,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
    },
    /// Runs the full pipeline for every q up to `--q-max`.
    Classify {
        #[arg(long = "q-max", default_value_t = 25)]
        q_max: u64,
        /// Directory for one Design JSON certificate per result.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn to_json<T: Serialize>(x: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(x).map_err(|e| usage(e.to_string()))
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>, Failure> {
    let (a, b) = s.split_once("..").ok_or_else(|| usage(format!("bad range `{s}`, expected a..b")))?;
    let a = a.trim().parse().map_err(|_| usage(format!("bad range start `{a}`")))?;
    let b = b.trim_start_matches('=').trim().parse().map_err(|_| usage(format!("bad range end `{b}`")))?;
    Ok(a..=b)
}

fn parse_params(s: &str) -> Result<CandidateParams, Failure> {
    let xs: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad parameter `{t}`"))))
        .collect::<Result<_, _>>()?;
    let [v, b, r, k] = xs[..] else {
        return Err(usage("expected --params v,b,r,k"));
    };
    match params_from_r(v, r, 3) {
        Some(p) if p.b == b && p.k == k => Ok(p),
        _ => Err(usage(format!("({v},{b},{r},{k}) are not admissible 2-(v,k,3) parameters"))),
    }
}

fn design_output(d: &IncidenceStructure, cert: Option<Certificate>) -> Result<String, Failure> {
    let mut json = DesignJson::from_design(d);
    json.certificate = cert;
    to_json(&json)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let bounds = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<Bounds>(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => Bounds::default(),
    };
    let json = cli.json;
    match cli.cmd {
        Cmd::Group { spec } => {
            let x = build_group_str(&spec)?;
            if json {
                return to_json(&x.group.to_json());
            }
            Ok(format!(
                "{}\norder {}\ndegree {}\ngenerators {}",
                x.spec,
                x.spec.order(),
                x.degree(),
                x.group.generators().len()
            ))
        }
        Cmd::Subdegrees { group, stab } => {
            let x = build_group_str(&group)?;
            let tag: SubgroupTag = stab.parse()?;
            let h = Catalog::new(&x.socle()).build(tag)?;
            let (action, _) = coset_action(&x.group, &h, &bounds)?;
            let report = action.subdegrees()?;
            if json {
                return to_json(&report);
            }
            Ok(report.display())
        }
        Cmd::Construct { name, q, v, k } => {
            let (d, group, base): (IncidenceStructure, String, Option<Vec<u32>>) = match name.as_str() {
                "example1" => {
                    let e = example1_details()?;
                    (e.design, "PSL(2,11)".into(), e.invariant_orbits.first().cloned())
                }
                "example2" => {
                    let (d, _) = example2_baer(q)?;
                    (d, format!("PSL(2,{q})"), None)
                }
                "ag32" => (ag32_design()?.0, "PSL(2,7)".into(), None),
                "paley11" => (paley_complement_11()?.0, "PSL(2,11)".into(), None),
                "complete" => (complete_design(v, k)?, format!("S{v}"), None),
                other => return Err(usage(format!("unknown construction `{other}`"))),
            };
            let base = base.unwrap_or_else(|| d.blocks[0].clone());
            let cert = Certificate {
                group,
                flag_orbit_size: d.blocks.iter().map(|b| b.len() as u64).sum(),
                base_block: base,
            };
            design_output(&d, Some(cert))
        }
        Cmd::Verify { input, group } => {
            let text = fs::read_to_string(&input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let dj: DesignJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let d = dj.structure()?;
            let p = verify_2design(&d);
            let flag = match &group {
                Some(g) => {
                    let x = build_group_str(g)?;
                    if x.degree() != d.v {
                        return Err(Failure::Usage(
                            Error::DegreeMismatch {
                                expected: d.v,
                                got: x.degree(),
                            }
                            .to_string(),
                        ));
                    }
                    Some(is_flag_transitive(&x.group, &d))
                }
                None => None,
            };
            if json {
                #[derive(Serialize)]
                struct Out {
                    params: Option<flagdesign::design::DesignParams>,
                    error: Option<String>,
                    flag: Option<flagdesign::design::FlagCertificate>,
                }
                let (params, error) = match p {
                    Ok(p) => (Some(p), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                return to_json(&Out {
                    params,
                    error,
                    flag: flag.map(|f| f.1),
                });
            }
            let head = match p {
                Ok(p) => p.short(),
                Err(e) => format!("not a 2-design: {e}"),
            };
            Ok(match flag {
                Some((ft, _)) => format!("{head}, flag-transitive: {ft}"),
                None => head,
            })
        }
        Cmd::Filter {
            case,
            q_range,
            tab1,
            table2,
            admissible,
        } => {
            if let Some(v) = admissible {
                if v < 4 {
                    return Err(usage("--admissible needs v >= 4"));
                }
                let ps = admissible_params(v, 3);
                if json {
                    return to_json(&ps);
                }
                let mut out = format!("{:>8} {:>8} {:>6} {:>6}  r^2>3v\n", "v", "b", "r", "k");
                for p in ps {
                    out.push_str(&format!("{:>8} {:>8} {:>6} {:>6}  {}\n", p.v, p.b, p.r, p.k, p.r_squared_ok()));
                }
                return Ok(out.trim_end().to_string());
            }
            if tab1 {
                let rows = tab1_report()?;
                if json {
                    return to_json(&rows);
                }
                let mut out = format!("{:>4} {:<14} {:<11} {:>6} {:>4}  verdict\n", "line", "G", "G_a", "v", "R");
                for r in rows {
                    out.push_str(&format!(
                        "{:>4} {:<14} {:<11} {:>6} {:>4}  {}\n",
                        r.line,
                        r.group,
                        r.stabilizer,
                        r.v,
                        r.r_bound,
                        if r.eliminated { format!("eliminated: {}", r.reason) } else { "survives".into() }
                    ));
                }
                return Ok(out.trim_end().to_string());
            }
            if table2 {
                let rows = table2_report(&TABLE2_PAIRS)?;
                if json {
                    return to_json(&rows);
                }
                let mut out = String::new();
                for r in rows {
                    out.push_str(&format!("q={:<3} |H|={:<3} {}  [{}]\n", r.q, r.h_order, r.computed.display(), r.note));
                }
                return Ok(out.trim_end().to_string());
            }
            let case = case.ok_or_else(|| usage("filter needs --case, --tab1, --table2 or --admissible"))?;
            let report = case_filter(case, parse_range(&q_range)?)?;
            if json {
                return to_json(&report.survivors());
            }
            let mut out = format!("case {case}\n{:>8} {:>10} {:>10} {:>6} {:>6}  chain\n", "q", "v", "b", "r", "k");
            for (c, w) in report.survivors() {
                let chain: Vec<String> = w.chain.iter().map(|d| format!("{} | {}", d.divisor, d.dividend)).collect();
                out.push_str(&format!("{:>8} {:>10} {:>10} {:>6} {:>6}  {}\n", w.q, c.v, c.b, c.r, c.k, chain.join("; ")));
            }
            Ok(out.trim_end().to_string())
        }
        Cmd::Search { group, params, strategy } => {
            let p = parse_params(&params)?;
            let mut task = SearchTask::new(group.parse()?, p).with_strategy(match strategy {
                StrategyArg::Catalog => Strategy::Catalog,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
            });
            task.bounds = bounds;
            let v = base_block_search(&task)?;
            if json {
                return to_json(&v);
            }
            let mut out = format!("{} {:?}: {}\n", v.group, p.tuple(), v.outcome.label());
            if let Outcome::DesignFound(f) = &v.outcome {
                out.push_str(&format!(
                    "{} with |G_a| = {}, |G_B| = {}, G_B-orbits {:?}\n",
                    f.params.short(),
                    f.point_stabilizer_order,
                    f.block_stabilizer_order,
                    f.k_orbit_lengths
                ));
            }
            for t in &v.trace {
                out.push_str(&format!(
                    "  action {} candidate {} (order {}): orbits {:?} -> {:?}\n",
                    t.point_action, t.candidate, t.candidate_order, t.orbit_lengths, t.stage
                ));
            }
            out.push_str(&v.completeness);
            Ok(out)
        }
        Cmd::Classify { q_max, out } => {
            let b = if cli.config.is_some() { bounds } else { classify_bounds() };
            let report = classify_theorem_main(q_max, &b)?;
            if let Some(dir) = &out {
                fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
                for r in &report.results {
                    let p = &r.params;
                    let path = dir.join(format!("q{}_{}_{}_{}.json", r.q, p.v, p.k, p.lambda));
                    let mut dj = r.design.design.clone();
                    if let Some(c) = dj.certificate.as_mut() {
                        c.group = r.groups.join(", ");
                    }
                    fs::write(&path, to_json(&dj)? + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?;
                }
            }
            if json {
                return to_json(&report);
            }
            let mut text = format!("{:<12} groups\n", "design");
            for (d, groups) in report.lines() {
                text.push_str(&format!("{d:<12} {}\n", groups.join(", ")));
            }
            Ok(text.trim_end().to_string())
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
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Bound(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
