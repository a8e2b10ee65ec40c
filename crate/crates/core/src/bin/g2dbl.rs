use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use g2dbl::checks::{self, CheckError, Entry, RunConfig};
use g2dbl::report::CheckReport;
use g2dbl::weyl::{index_set, levi_without, words, WeylGroup, WeylWord};
use g2dbl::zeta;

#[derive(Parser)]
#[command(name = "g2dbl", version, about = "Run exact verification checks", args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Option<Cmd>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run checks (the default).
    Run(RunArgs),
    /// List check ids and their parameters.
    List,
    /// Coset counts and the reduced words of the surviving representatives.
    Cosets {
        #[arg(long)]
        json: bool,
    },
    /// Print a named rational function, e.g. `named I0 2 1`.
    Named {
        id: String,
        params: Vec<i64>,
    },
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    /// JSON manifest: [{"id": ..., "params": {...}}]
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Check id; may be repeated.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Run every registered check.
    #[arg(long)]
    all: bool,
    /// Truncation degree for checks that take `D`.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    #[arg(long)]
    json: bool,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        None => run(cli.run),
        Some(Cmd::Run(a)) => run(a),
        Some(Cmd::List) => {
            for c in checks::REGISTRY {
                println!("{:<26} {}", c.id, c.params.join(" "));
            }
            0
        }
        Some(Cmd::Cosets { json }) => cosets(json),
        Some(Cmd::Named { id, params }) => match zeta::named(&id, &params) {
            Ok(f) => {
                println!("{f}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
    };
    ExitCode::from(code as u8)
}

fn manifest(a: &RunArgs) -> Result<Vec<Entry>, CheckError> {
    let mut entries = Vec::new();
    if let Some(p) = &a.manifest {
        let s = std::fs::read_to_string(p).map_err(|e| CheckError::Manifest(format!("{}: {e}", p.display())))?;
        entries.extend(checks::parse_manifest(&s)?);
    }
    entries.extend(a.checks.iter().map(|c| Entry::new(c)));
    if a.all || (a.manifest.is_none() && a.checks.is_empty()) {
        entries.extend(checks::default_manifest());
    }
    Ok(entries)
}

fn render(reports: &[CheckReport], json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
        s.push('\n');
        s
    } else {
        reports.iter().map(|r| r.line() + "\n").collect()
    }
}

fn run(a: RunArgs) -> i32 {
    let cfg = RunConfig { degree: a.degree, jobs: a.jobs };
    let reports = match manifest(&a).and_then(|m| checks::run(&m, &cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let out = render(&reports, a.json);
    let written = match &a.output {
        Some(p) => std::fs::write(p, out).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(out.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    checks::exit_status(&reports)
}

fn cosets(json: bool) -> i32 {
    let g = WeylGroup::e8();
    let ev = |s: &str| g.evaluate(&WeylWord::parse(s).expect("named word")).expect("named word");
    let j = levi_without(8, 2);
    let dc = g.enumerate_double_cosets(&j, &index_set(&[4, 7]));
    let supp: Vec<_> = words::SUPPORT.iter().map(|r| g2dbl::rootsys::Root::parse(r).expect("root")).collect();
    let (surv, _) = g.support_filter(&dc, &supp);
    let c = g.classify(&surv, &j, &levi_without(8, 1), &ev(words::W_SHT), &ev(words::W_LNG), (4, 7));
    let word = |w: &g2dbl::weyl::WeylElt| g.reduced_word(w).0.iter().map(|d| d.to_string()).collect::<String>();
    let list = |v: &[g2dbl::weyl::WeylElt]| v.iter().map(word).collect::<Vec<_>>();
    if json {
        let v = serde_json::json!({
            "double_cosets": dc.len(),
            "survivors": list(&surv),
            "sht": list(&c.sht),
            "lng": list(&c.lng),
            "lng_prime": list(&c.lng_prime),
            "other": list(&c.other),
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        println!("double cosets {}", dc.len());
        println!("survivors {}", surv.len());
        for (name, v) in [("sht", &c.sht), ("lng", &c.lng), ("lng_prime", &c.lng_prime), ("other", &c.other)] {
            println!("{name} {}", v.len());
            for w in list(v) {
                println!("  {w}");
            }
        }
    }
    0
}
