//! The `tempo-sep` command line. [`run`] returns the exit code and captured
//! output so the binary is a thin wrapper.
//!
//! Exit codes: 0 yes/found/valid, 1 no/none/invalid, 2 usage or input error,
//! 3 contract violation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classes::classify;
use crate::generators::{generate, ClassConstraint, GenSpec};
use crate::graph::{TemporalGraph, Vertex};
use crate::io::{parse_ordering, parse_td, parse_tg, write_tg};
use crate::oracle::{is_separator, min_separator_up_to, Instance, InstanceError, OracleError, Separator};
use crate::reachability::{find_temporal_path, Mode};
use crate::reductions::ReductionKind;
use crate::solvers::auto::work_cap_from_env;
use crate::solvers::{
    build_tree_decomposition, solve_auto, solve_interval_dp, solve_search_tree, solve_treewidth_dp,
    static_cut_graph, static_min_vertex_cut, Backend, Hints, SolveError,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "tempo-sep", version, about = "Minimum temporal (s,z)-separators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Brute,
    SearchTree,
    Treewidth,
    Interval,
    StaticCut,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a temporal (s,z)-path.
    Path {
        input: PathBuf,
        #[arg(long)]
        s: Vertex,
        #[arg(long)]
        z: Vertex,
        #[arg(long)]
        strict: bool,
    },
    /// Decide whether a separator of size at most k exists.
    Solve {
        input: PathBuf,
        #[arg(long)]
        s: Vertex,
        #[arg(long)]
        z: Vertex,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
        /// Print only `yes` or `no`.
        #[arg(long)]
        quiet: bool,
    },
    /// Report the structural class parameters.
    Classify { input: PathBuf },
    /// Apply an answer-preserving transformation.
    Reduce {
        #[arg(long)]
        kind: String,
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long)]
        s: Vertex,
        #[arg(long)]
        z: Vertex,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        report: bool,
    },
    /// Generate a seeded random instance with s = 0 and z = n - 1.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: u32,
        /// Edge probability (density for unit-interval layers).
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// none | unit-interval | periodic:<p>:<r> | steady:<lambda> | monotone:<p>
        #[arg(long, default_value = "none")]
        class: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check a candidate separator.
    Verify {
        input: PathBuf,
        #[arg(long)]
        s: Vertex,
        #[arg(long)]
        z: Vertex,
        /// Comma-separated vertex ids; empty for the empty set.
        #[arg(long, default_value = "")]
        separator: String,
        #[arg(long)]
        strict: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn contract(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONTRACT,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<TemporalGraph, Failure> {
    parse_tg(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn instance(g: TemporalGraph, s: Vertex, z: Vertex, k: usize) -> Result<Instance, Failure> {
    Instance::new(g, s, z, k).map_err(|e| match e {
        InstanceError::TerminalEdgePresent { .. } => contract(e.to_string()),
        _ => usage(e.to_string()),
    })
}

fn mode(strict: bool) -> Mode {
    if strict {
        Mode::Strict
    } else {
        Mode::NonStrict
    }
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::NotAPermutation => usage(e.to_string()),
        _ => contract(e.to_string()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_class(text: &str) -> Result<ClassConstraint, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| usage(format!("invalid number `{s}` in class `{text}`")));
    match parts.as_slice() {
        ["none"] => Ok(ClassConstraint::None),
        ["unit-interval"] => Ok(ClassConstraint::OrderPreservingUnitInterval),
        ["periodic", p, r] => Ok(ClassConstraint::Periodic {
            p: num(p)? as u32,
            r: num(r)? as u32,
        }),
        ["steady", l] => Ok(ClassConstraint::Steady { lambda: num(l)? }),
        ["monotone", p] => Ok(ClassConstraint::Monotone { p: num(p)? }),
        _ => Err(usage(format!("unknown class `{text}`"))),
    }
}

fn parse_separator(text: &str) -> Result<Vec<Vertex>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("invalid vertex `{t}` in separator"))))
        .collect()
}

struct Solved {
    separator: Option<Separator>,
    backend: Backend,
}

fn solve(
    inst: &Instance,
    algo: Algo,
    ordering: Option<&Path>,
    td: Option<&Path>,
    m: Mode,
) -> Result<Solved, Failure> {
    let g = inst.graph();
    let ordering = match ordering {
        Some(p) => Some(parse_ordering(&read(p)?, g.n()).map_err(|e| usage(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let td = match td {
        Some(p) => Some(parse_td(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let non_strict = |name: &'static str| {
        if m == Mode::Strict {
            Err(solve_error(SolveError::StrictUnsupported(name)))
        } else {
            Ok(())
        }
    };
    let within = |sep: Separator| (sep.len() <= inst.k()).then_some(sep);
    let (separator, backend) = match algo {
        Algo::Auto => {
            let hints = Hints {
                ordering,
                decomposition: td,
                work_cap: Some(work_cap_from_env()),
            };
            let r = solve_auto(inst, &hints, m).map_err(solve_error)?;
            (r.separator, r.backend)
        }
        Algo::Brute => (min_separator_up_to(inst, m, inst.k()), Backend::Brute),
        Algo::SearchTree => (solve_search_tree(inst, m), Backend::SearchTree),
        Algo::Treewidth => {
            non_strict("treewidth")?;
            let nice = build_tree_decomposition(&g.underlying(), inst.s(), inst.z(), td.as_ref())
                .map_err(|e| solve_error(e.into()))?;
            (solve_treewidth_dp(inst, &nice).map_err(solve_error)?, Backend::Treewidth)
        }
        Algo::Interval => {
            non_strict("interval")?;
            let ord = ordering.ok_or_else(|| usage("--algo interval needs --ordering"))?;
            (solve_interval_dp(inst, &ord).map_err(solve_error)?, Backend::Interval)
        }
        Algo::StaticCut => {
            non_strict("static-cut")?;
            let layer = static_cut_graph(inst)
                .ok_or_else(|| contract("static-cut needs a single-peaked or sufficiently periodic instance"))?;
            let cut = static_min_vertex_cut(&layer, inst.s(), inst.z()).map_err(solve_error)?;
            (within(Separator::new(cut)), Backend::StaticCut)
        }
    };
    Ok(Solved { separator, backend })
}

fn dispatch(cli: Cli, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    match cli.command {
        Command::Path { input, s, z, strict } => {
            let g = load_graph(&input)?;
            for v in [s, z] {
                if v >= g.n() {
                    return Err(usage(format!("terminal {v} out of range for n={}", g.n())));
                }
            }
            match find_temporal_path(&g, s, z, mode(strict)) {
                Some(p) => {
                    let steps: Vec<String> = p.steps().iter().map(|st| format!("{}-{}@{}", st.from, st.to, st.t)).collect();
                    writeln!(out, "path=found steps={}", steps.join(",")).unwrap();
                    Ok(EXIT_YES)
                }
                None => {
                    writeln!(out, "path=none").unwrap();
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Solve {
            input,
            s,
            z,
            k,
            algo,
            ordering,
            td,
            strict,
            quiet,
        } => {
            let g = load_graph(&input)?;
            let stats = format!("n={} edges={} tau={}", g.n(), g.num_edges(), g.tau());
            let inst = instance(g, s, z, k)?;
            let m = mode(strict);
            let start = Instant::now();
            let solved = solve(&inst, algo, ordering.as_deref(), td.as_deref(), m)?;
            let elapsed = start.elapsed();
            writeln!(err, "{stats} backend={} time_ms={:.3}", solved.backend, elapsed.as_secs_f64() * 1e3).unwrap();
            match solved.separator {
                Some(sep) => {
                    let ok = is_separator(&inst, sep.vertices(), m).unwrap_or(false) && sep.len() <= k;
                    if !ok {
                        return Err(contract(format!("backend {} returned an invalid separator {sep}", solved.backend)));
                    }
                    if quiet {
                        writeln!(out, "yes").unwrap();
                    } else {
                        writeln!(out, "verdict=yes separator={sep} backend={}", solved.backend).unwrap();
                    }
                    Ok(EXIT_YES)
                }
                None => {
                    writeln!(out, "{}", if quiet { "no" } else { "verdict=no" }).unwrap();
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Classify { input } => {
            let g = load_graph(&input)?;
            let c = classify(&g);
            match &c.monotone {
                Some(m) => {
                    let peaks: Vec<String> = m.peaks.iter().map(u32::to_string).collect();
                    writeln!(out, "monotone p={} peaks={}", m.p, peaks.join(",")).unwrap();
                }
                None => writeln!(out, "monotone none").unwrap(),
            }
            writeln!(out, "periodic p={} r={}", c.periodic.p, c.periodic.r).unwrap();
            writeln!(out, "steady lambda={}", c.steady_lambda).unwrap();
            writeln!(out, "interval-connected maxT={}", c.interval_connected_max_t).unwrap();
            Ok(EXIT_YES)
        }
        Command::Reduce {
            kind,
            input,
            output,
            s,
            z,
            k,
            report,
        } => {
            let kind = ReductionKind::from_name(&kind).ok_or_else(|| usage(format!("unknown reduction `{kind}`")))?;
            let inst = instance(load_graph(&input)?, s, z, k)?;
            let (reduced, rep) = kind.apply(&inst).map_err(|e| contract(e.to_string()))?;
            write_file(&output, &write_tg(reduced.graph()))?;
            if report {
                out.push_str(&rep.to_text());
            } else {
                writeln!(out, "kind={} s={} z={} k={}", kind.name(), reduced.s(), reduced.z(), reduced.k()).unwrap();
            }
            if rep.all_passed() {
                Ok(EXIT_YES)
            } else {
                Err(contract("structural checks failed"))
            }
        }
        Command::Gen {
            n,
            tau,
            p,
            class,
            seed,
            output,
        } => {
            let spec = GenSpec::new(n, tau, p, seed).with_class(parse_class(&class)?);
            let inst = generate(&spec).map_err(|e| usage(e.to_string()))?;
            let text = write_tg(inst.graph());
            match output {
                Some(path) => write_file(&path, &text)?,
                None => out.push_str(&text),
            }
            Ok(EXIT_YES)
        }
        Command::Verify {
            input,
            s,
            z,
            separator,
            strict,
        } => {
            let inst = instance(load_graph(&input)?, s, z, 0)?;
            let sep = parse_separator(&separator)?;
            match is_separator(&inst, &sep, mode(strict)) {
                Ok(valid) => {
                    writeln!(out, "valid={valid}").unwrap();
                    Ok(if valid { EXIT_YES } else { EXIT_NO })
                }
                Err(e @ OracleError::TerminalInSeparator(_)) => Err(contract(e.to_string())),
                Err(e) => Err(usage(e.to_string())),
            }
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_YES,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match dispatch(cli, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(f) => {
            writeln!(stderr, "error: {}", f.message).unwrap();
            f.code
        }
    };
    Output { code, stdout, stderr }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names() {
        assert_eq!(parse_class("periodic:2:3").ok(), Some(ClassConstraint::Periodic { p: 2, r: 3 }));
        assert!(parse_class("steady").is_err());
        assert_eq!(parse_separator(" 1, 2").ok(), Some(vec![1, 2]));
        assert_eq!(parse_separator("").ok(), Some(vec![]));
    }

    #[test]
    fn usage_errors() {
        let o = run(["tempo-sep", "solve"]);
        assert_eq!(o.code, EXIT_USAGE);
        let o = run(["tempo-sep", "--help"]);
        assert_eq!(o.code, EXIT_YES);
        assert!(o.stdout.contains("solve"));
    }
}
