//! `sscx` command line: runs verification suites over parameter grids and
//! writes one JSON report per line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::complexes::{verify_bicomplex, verify_et_cohomology, verify_koszul, verify_snake};
use crate::fiber::{verify_ces, verify_cross, verify_identities, FiberModel};
use crate::report::{sort_reports, Report};
use crate::weights::{
    bbw_pushforward, euler_check_kt, phi_cs_survivors, pieri_dim_check, tphi_closed_form, verify_staircase_pushforward,
    verify_vanishing_band, Weight,
};

#[derive(Parser, Debug)]
#[command(
    name = "sscx",
    version,
    about = "Exact verification of secondary staircase complexes on IGr(2, 2n) and Gr(k, 2n)"
)]
pub struct Cli {
    /// write reports here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// worker threads
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// record wall-clock time per check (output is then not reproducible)
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fiberwise checks of E_t and its bicomplex on IGr(2, 2n)
    VerifyFiber {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        t: TRange,
        /// comma-separated; all checks when omitted
        #[arg(long, value_delimiter = ',')]
        checks: Vec<FiberCheck>,
    },
    /// Weight-level checks for the pushforward to Gr(k, 2n)
    VerifyWeights {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "all")]
        t: TRange,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<WeightCheck>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TRange {
    All,
    One(usize),
}

impl FromStr for TRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(TRange::All);
        }
        s.parse().map(TRange::One).map_err(|_| format!("expected a non-negative integer or `all`, got `{s}`"))
    }
}

impl TRange {
    fn values(self, top: usize) -> Result<Vec<usize>, String> {
        match self {
            TRange::All => Ok((0..=top).collect()),
            TRange::One(t) if t <= top => Ok(vec![t]),
            TRange::One(t) => Err(format!("--t {t} is outside 0 … {top}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum FiberCheck {
    Cohomology,
    Bicomplex,
    Snake,
    Koszul,
    Ces,
    D2zero,
    Cross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum WeightCheck {
    Bbw,
    Staircase,
    Euler,
    Phics,
    Pieri,
    Vanishing,
}

type Task = Box<dyn Fn() -> Result<Report, String> + Send + Sync>;

fn task<F, E>(f: F) -> Task
where
    F: Fn() -> Result<Report, E> + Send + Sync + 'static,
    E: std::fmt::Display,
{
    Box::new(move || f().map_err(|e| e.to_string()))
}

fn selected<T: ValueEnum + Ord + Copy>(checks: &[T]) -> Vec<T> {
    let mut v = if checks.is_empty() { T::value_variants().to_vec() } else { checks.to_vec() };
    v.sort();
    v.dedup();
    v
}

fn fiber_tasks(n: usize, t: TRange, checks: &[FiberCheck]) -> Result<Vec<Task>, String> {
    if !(2..=6).contains(&n) {
        return Err(format!("verify-fiber supports 2 ≤ n ≤ 6, got {n}"));
    }
    let model = std::sync::Arc::new(FiberModel::new(n).map_err(|e| e.to_string())?);
    let ts = t.values(2 * n - 2)?;
    let mut tasks: Vec<Task> = Vec::new();
    for check in selected(checks) {
        for &t in &ts {
            let m = model.clone();
            match check {
                FiberCheck::Cohomology => tasks.push(task(move || verify_et_cohomology(&m, t))),
                FiberCheck::Bicomplex => tasks.push(task(move || verify_bicomplex(&m, t))),
                FiberCheck::Snake => tasks.push(task(move || verify_snake(&m, t))),
                FiberCheck::Koszul => tasks.push(task(move || verify_koszul(&m, t))),
                FiberCheck::Ces | FiberCheck::D2zero | FiberCheck::Cross => {
                    for a in 0..=t {
                        let (m, b) = (model.clone(), t - a);
                        match check {
                            FiberCheck::Ces if a >= 1 => tasks.push(task(move || verify_ces(&m, a, b))),
                            FiberCheck::D2zero => tasks.push(task(move || verify_identities(&m, a, b))),
                            FiberCheck::Cross => tasks.push(task(move || verify_cross(&m, a, b))),
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Ok(tasks)
}

fn bbw_report(n: usize, k: usize, alpha1: i64, alpha2: i64) -> Report {
    let computed = bbw_pushforward(&Weight::padded(&[alpha1, alpha2], k));
    Report::new("bbw")
        .param("n", n)
        .param("k", k)
        .param("alpha1", alpha1)
        .param("alpha2", alpha2)
        .check("pushforward", tphi_closed_form(alpha1, alpha2, k).to_json(), computed.to_json())
        .finish()
}

fn phics_report(k: usize) -> Result<Report, String> {
    let survivors = phi_cs_survivors(k).map_err(|e| e.to_string())?;
    let found: Vec<_> = survivors.iter().map(|((i, j, s), _)| json!([i, j, s])).collect();
    Ok(Report::new("phics").param("k", k).check("survivors", json!([[k - 2, 0, 0]]), json!(found)).finish())
}

fn pieri_report(k: usize, i: usize, j: usize) -> Report {
    Report::new("pieri")
        .param("k", k)
        .param("i", i)
        .param("j", j)
        .check("dims_match", true, pieri_dim_check(k - 2, i, j))
        .finish()
}

fn weight_tasks(n: usize, k: usize, t: TRange, checks: &[WeightCheck]) -> Result<Vec<Task>, String> {
    if !(2 <= k && k <= n) {
        return Err(format!("verify-weights needs 2 ≤ k ≤ n, got n={n}, k={k}"));
    }
    if n > 12 {
        return Err(format!("verify-weights supports n ≤ 12, got {n}"));
    }
    let ts = t.values(2 * n - k)?;
    let top = (2 * n - k) as i64;
    let mut tasks: Vec<Task> = Vec::new();
    let checks = if checks.is_empty() && k < 3 { vec![WeightCheck::Euler] } else { selected(checks) };
    for check in checks {
        if k < 3 && check != WeightCheck::Euler {
            return Err(format!("{check:?} needs k ≥ 3").to_lowercase());
        }
        match check {
            WeightCheck::Bbw => {
                for a1 in -1..=top {
                    for a2 in -1..=a1 {
                        tasks.push(task(move || Ok::<_, String>(bbw_report(n, k, a1, a2))));
                    }
                }
            }
            WeightCheck::Staircase => {
                for a1 in 0..=top {
                    for a2 in 0..=a1 {
                        tasks.push(task(move || verify_staircase_pushforward(a1, a2, k, n)));
                    }
                }
            }
            WeightCheck::Vanishing => {
                for a1 in top + 1..=2 * n as i64 - 2 {
                    for a2 in 0..=a1 {
                        tasks.push(task(move || verify_vanishing_band(a1, a2, k, n)));
                    }
                }
            }
            WeightCheck::Euler => {
                for &t in &ts {
                    tasks.push(task(move || euler_check_kt(n, k, t)));
                }
            }
            WeightCheck::Phics => tasks.push(task(move || phics_report(k))),
            WeightCheck::Pieri => {
                for i in 0..=k - 2 {
                    for j in 0..=k - 2 {
                        tasks.push(task(move || Ok::<_, String>(pieri_report(k, i, j))));
                    }
                }
            }
        }
    }
    Ok(tasks)
}

fn execute(tasks: &[Task], timings: bool) -> Vec<Report> {
    let run = |f: &Task| {
        let start = Instant::now();
        let mut report = f().unwrap_or_else(|e| Report::new("error").note("error", e).finish());
        report.elapsed_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
        report
    };
    let mut reports: Vec<Report> = tasks.par_iter().map(run).collect();
    sort_reports(&mut reports);
    reports
}

/// Reports for a parsed invocation, or a usage message.
pub fn collect_reports(cli: &Cli) -> Result<Vec<Report>, String> {
    let tasks = match &cli.command {
        Command::VerifyFiber { n, t, checks } => fiber_tasks(*n, *t, checks)?,
        Command::VerifyWeights { n, k, t, checks } => weight_tasks(*n, *k, *t, checks)?,
    };
    if cli.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().map_err(|e| e.to_string())?;
    Ok(pool.install(|| execute(&tasks, cli.timings)))
}

pub fn write_reports<W: Write>(reports: &[Report], mut w: W) -> io::Result<()> {
    for r in reports {
        writeln!(w, "{}", r.to_json_line())?;
    }
    w.flush()
}

/// Exit code: 0 all pass, 1 some check failed, 2 usage or I/O error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let reports = match collect_reports(&cli) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|f| write_reports(&reports, BufWriter::new(f))),
        None => write_reports(&reports, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if reports.iter().all(Report::passed) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("sscx").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn t_range_parsing() {
        assert_eq!("all".parse::<TRange>(), Ok(TRange::All));
        assert_eq!("3".parse::<TRange>(), Ok(TRange::One(3)));
        assert!("-1".parse::<TRange>().is_err());
        assert_eq!(TRange::All.values(4).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(TRange::One(99).values(4).is_err());
    }

    #[test]
    fn checks_parse_as_csv() {
        let cli = parse(&["verify-fiber", "--n", "3", "--checks", "snake,koszul,snake"]);
        match cli.command {
            Command::VerifyFiber { checks, .. } => {
                assert_eq!(selected(&checks), vec![FiberCheck::Snake, FiberCheck::Koszul])
            }
            _ => panic!(),
        }
        assert!(Cli::try_parse_from(["sscx", "verify-fiber", "--n", "3", "--checks", "bogus"]).is_err());
    }

    #[test]
    fn out_of_band_t_is_usage() {
        assert!(collect_reports(&parse(&["verify-fiber", "--n", "3", "--t", "99"])).is_err());
        assert!(collect_reports(&parse(&["verify-weights", "--n", "3", "--k", "4"])).is_err());
        assert!(collect_reports(&parse(&["verify-weights", "--n", "3", "--k", "2", "--checks", "bbw"])).is_err());
    }

    #[test]
    fn koszul_grid_is_sorted_and_passes() {
        let reports =
            collect_reports(&parse(&["verify-fiber", "--n", "3", "--checks", "koszul", "--jobs", "3"])).unwrap();
        let ts: Vec<i64> = reports.iter().map(|r| r.params["t"]).collect();
        assert_eq!(ts, vec![0, 1, 2, 3, 4]);
        assert!(reports.iter().all(Report::passed));
        assert!(reports.iter().all(|r| r.elapsed_ms == 0));
    }

    #[test]
    fn weights_grid_counts() {
        let reports =
            collect_reports(&parse(&["verify-weights", "--n", "4", "--k", "3", "--checks", "euler,bbw"])).unwrap();
        let euler = reports.iter().filter(|r| r.suite == "euler").count();
        let bbw = reports.iter().filter(|r| r.suite == "bbw").count();
        assert_eq!(euler, 6);
        // −1 ≤ α₂ ≤ α₁ ≤ 5
        assert_eq!(bbw, 7 * 8 / 2);
        assert!(reports.iter().all(Report::passed));
    }
}
