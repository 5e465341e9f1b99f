use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use squadk::chain::{build_window, ChainError, DimCap, WindowCaps};
use squadk::derived::{build_comparison, check_saturation, verify_lemma_la, verify_theorem_el, DEPTH_CAP};
use squadk::lattice::{smith_normal_form, IntMatrix, LatticeError};
use squadk::squad::{parse_sqpres, write_sqpres, Squad, SquadError};
use squadk::waldhausen::{budget, parse_wcat, present_dstar, validate_window, write_wcat, WaldhausenWindow, WindowError};

#[derive(Parser, Debug)]
#[command(name = "squadk", version, about = "Stable quadratic modules of finite Waldhausen windows")]
struct Cli {
    /// Report layout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Search budget; overrides SQUADK_BUDGET.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Flavor {
    /// `D*W`
    W,
    /// `DD*W`
    D,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the category laws and Waldhausen axioms of a window.
    Validate { window: PathBuf },
    /// Emit the presentation of a window as a .sqpres file.
    Present {
        window: PathBuf,
        #[arg(long, value_enum, default_value_t = Flavor::W)]
        flavor: Flavor,
    },
    /// Homotopy groups and k-invariant of a presentation.
    Homotopy {
        presentation: PathBuf,
        #[arg(long)]
        pi0: bool,
        #[arg(long)]
        pi1: bool,
        #[arg(long)]
        k: bool,
    },
    /// Build both presentations and the maps between them, then check they
    /// are mutually inverse.
    Compare { window: PathBuf },
    /// Check that homotopic weak equivalences have equal classes.
    Verify {
        window: PathBuf,
        #[arg(long, required = true)]
        lemma_la: bool,
    },
    /// Generate a window of bounded complexes over a prime field.
    GenChain {
        #[arg(long)]
        p: u32,
        /// Degree range `LO:HI`.
        #[arg(long, value_parser = parse_degrees, allow_hyphen_values = true)]
        degrees: (i32, i32),
        #[arg(long)]
        max_dim: usize,
        /// Cap each degree instead of the total dimension.
        #[arg(long)]
        per_degree: bool,
    },
    /// Smith normal form of an integer matrix file.
    Snf { matrix: PathBuf },
}

fn parse_degrees(s: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.trim().parse().map_err(|_| format!("bad degree '{lo}'"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad degree '{hi}'"))?;
    if hi < lo {
        return Err("HI must not be below LO".into());
    }
    Ok((lo, hi))
}

/// Failure of a command, with the exit status it maps to.
enum Failure {
    Usage(String),
    Computation(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn computation(e: impl Display) -> Failure {
    Failure::Computation(e.to_string())
}

/// Parse errors are input errors; everything else is a finding of the run.
fn located(path: &Path, e: WindowError) -> Failure {
    match e {
        WindowError::Parse { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        e => Failure::Computation(format!("{}: {e}", path.display())),
    }
}

fn squad_located(path: &Path, e: SquadError) -> Failure {
    match e {
        SquadError::Parse { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        e => Failure::Computation(format!("{}: {e}", path.display())),
    }
}

/// Ordered key/value report.
struct Report {
    format: Format,
    lines: Vec<(String, String)>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report { format, lines: Vec::new() }
    }

    fn put(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    fn list(&mut self, key: &str, items: &[String]) {
        self.put(&format!("{key}.count"), items.len());
        for (i, item) in items.iter().enumerate() {
            self.put(&format!("{key}.{i}"), item);
        }
    }

    fn render(&self) -> String {
        let sep = match self.format {
            Format::Text => ": ",
            Format::Kv => " = ",
        };
        self.lines.iter().map(|(k, v)| format!("{k}{sep}{v}\n")).collect()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_window(path: &Path) -> Result<WaldhausenWindow, Failure> {
    parse_wcat(&read(path)?).map_err(|e| located(path, e))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn iso_word(ok: bool) -> &'static str {
    if ok {
        "iso"
    } else {
        "not iso"
    }
}

/// Runs a command and returns whether it found problems.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let budget = cli.budget.unwrap_or_else(budget);
    let mut report = Report::new(cli.format);
    let findings = match &cli.command {
        Command::Validate { window } => {
            let w = load_window(window)?;
            let r = validate_window(&w, budget);
            report.put("objects", w.cat.n_objects());
            report.put("morphisms", w.cat.n_morphisms());
            report.list("violation", &r.violations);
            report.list("gap", &r.gaps);
            report.list("info", &r.info);
            report.put("valid", r.is_valid());
            !r.is_valid()
        }
        Command::Present { window, flavor } => {
            let w = load_window(window)?;
            let pres = match flavor {
                Flavor::W => present_dstar(&w).map_err(|e| located(window, e))?.presentation,
                Flavor::D => {
                    squadk::derived::present_ddstar(&w, DEPTH_CAP).map_err(|e| located(window, e))?.presentation
                }
            };
            let bad = Squad::check_well_formed(&pres).map_err(computation)?;
            if !bad.is_empty() {
                return Err(Failure::Computation(format!("{} relations with nontrivial boundary", bad.len())));
            }
            return emit(&cli.output, &write_sqpres(&pres)).map(|_| false);
        }
        Command::Homotopy { presentation, pi0, pi1, k } => {
            let pres = parse_sqpres(&read(presentation)?).map_err(|e| squad_located(presentation, e))?;
            let s = Squad::new(pres).map_err(|e| squad_located(presentation, e))?;
            let all = !(*pi0 || *pi1 || *k);
            if all || *pi0 {
                report.put("pi0", s.pi0().invariant_factors());
            }
            if all || *pi1 {
                report.put("pi1", s.pi1().map_err(computation)?.group.invariant_factors());
            }
            if all || *k {
                let kh = s.k_invariant().map_err(computation)?;
                let zero = (0..kh.matrix.cols())
                    .map(|j| kh.codomain.is_zero_element(&kh.matrix.column(j)))
                    .collect::<Result<Vec<bool>, LatticeError>>()
                    .map_err(computation)?
                    .into_iter()
                    .all(|z| z);
                report.put("k", if zero { "zero" } else { "nonzero" });
                let m = kh.canonical_matrix();
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                report.put("k.matrix", format!("[{}]", rows.join("; ")));
            }
            false
        }
        Command::Compare { window } => {
            let w = load_window(window)?;
            let cmp = build_comparison(&w).map_err(|e| located(window, e))?;
            let el = verify_theorem_el(&w, &cmp).map_err(computation)?;
            report.put("dstar.gens1", cmp.dstar.presentation.gens1.len());
            report.put("ddstar.gens1", cmp.derived.presentation.gens1.len());
            report.put("ddstar.rels1", cmp.derived.presentation.rels1.len());
            report.put("pi0", cmp.d.pi0().invariant_factors());
            report.put("pi1", cmp.d.pi1().map_err(computation)?.group.invariant_factors());
            report.put("mu0", iso_word(el.mu0_iso));
            report.put("mu1", iso_word(el.mu1_iso));
            report.put("generators_checked", el.generators_checked);
            report.put("alternates_checked", el.alternates_checked);
            report.list("failure", &el.failures);
            report.put("theorem-el", verdict(el.passed()));
            !el.passed()
        }
        Command::Verify { window, .. } => {
            let w = load_window(window)?;
            let d = Squad::new(present_dstar(&w).map_err(|e| located(window, e))?.presentation).map_err(computation)?;
            let la = verify_lemma_la(&w, &d).map_err(computation)?;
            let sat = check_saturation(&w).map_err(computation)?;
            report.put("homotopic_pairs", la.pairs_checked);
            report.list("failure", &la.failures);
            report.list("unsaturated", &sat);
            report.put("lemma-la", verdict(la.passed()));
            !la.passed()
        }
        Command::GenChain { p, degrees, max_dim, per_degree } => {
            let cap = if *per_degree { DimCap::PerDegree(*max_dim) } else { DimCap::Total(*max_dim) };
            let caps = WindowCaps { budget, ..WindowCaps::default() };
            let cw = build_window(*p, degrees.0, degrees.1, cap, caps).map_err(|e| match e {
                ChainError::NotPrime(_) | ChainError::Range { .. } => Failure::Usage(e.to_string()),
                e => computation(e),
            })?;
            let mut text = String::new();
            for o in &cw.omitted {
                text.push_str(&format!("# omitted: {o}\n"));
            }
            text.push_str(&write_wcat(&cw.window));
            return emit(&cli.output, &text).map(|_| false);
        }
        Command::Snf { matrix } => {
            let m = IntMatrix::parse(&read(matrix)?).map_err(|e| Failure::Usage(format!("{}: {e}", matrix.display())))?;
            let f = smith_normal_form(&m);
            return emit(&cli.output, &format!("U\n{}S\n{}V\n{}", f.u, f.s, f.v)).map(|_| false);
        }
    };
    emit(&cli.output, &report.render())?;
    Ok(findings)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
