use std::fmt::Write as _;
use std::fs;
use std::io::IsTerminal;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use design_analyzer::pca::{
    less_responsive_class, most_significant_measure, Selection, SelectionOptions,
};
use design_analyzer::report::{
    emit_dot, emit_metrics_csv, emit_report_json, format_class_selection, format_measure_selection,
    format_metrics_table, to_json, what_if, Analysis,
};
use design_analyzer::{Error, Exec, InteractionKind, Severity};

#[derive(Parser)]
#[command(
    name = "design-analyzer",
    version,
    about = "Coupling analysis and PCA-guided design recommendations for Java sources"
)]
struct Cli {
    /// Parse and compute sequentially on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the interaction graph and the metrics table.
    Analyze {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Fail when any source produced a warning.
        #[arg(long)]
        strict: bool,
    },
    /// Principal component analysis over the metrics table.
    Pca {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0.95)]
        variance_target: f64,
        /// Use exactly N components instead of the variance target.
        #[arg(long, value_name = "N")]
        components: Option<usize>,
        /// Scale each column to unit variance before the decomposition.
        #[arg(long)]
        standardize: bool,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Add a hypothetical class and diff the metrics.
    Whatif {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long = "new", value_name = "NAME")]
        new_class: String,
        #[arg(long, value_delimiter = ',', value_name = "A,B,...")]
        connect: Vec<String>,
        #[arg(long, value_enum, default_value_t = KindArg::ObjectDeclaration)]
        kind: KindArg,
        #[arg(long, value_name = "FILE")]
        dot_before: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        dot_after: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Recommend the class new code should attach to.
    Recommend {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Measures,
    Classes,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    ObjectDeclaration,
    Inheritance,
    Parameter,
    ReturnType,
}

impl From<KindArg> for InteractionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::ObjectDeclaration => InteractionKind::ObjectDeclaration,
            KindArg::Inheritance => InteractionKind::Inheritance,
            KindArg::Parameter => InteractionKind::Parameter,
            KindArg::ReturnType => InteractionKind::ReturnType,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Analysis(Error),
    Strict(usize),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Analysis(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Analysis(Error::NoInput) => 2,
            Failure::Analysis(Error::Degenerate(_) | Error::InsufficientData(_)) => 3,
            Failure::Analysis(Error::Validation(_) | Error::UnknownClass(_)) => 4,
            _ => 1,
        }
    }
}

struct Out {
    styled: bool,
    text: String,
}

impl Out {
    fn new() -> Self {
        Out {
            styled: std::env::var_os("DESIGN_ANALYZER_NO_COLOR").is_none()
                && std::io::stdout().is_terminal(),
            text: String::new(),
        }
    }

    fn heading(&mut self, text: &str) {
        if self.styled {
            let _ = writeln!(self.text, "\x1b[1m{text}\x1b[0m");
        } else {
            let _ = writeln!(self.text, "{text}");
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load(paths: &[PathBuf], exec: Exec) -> Result<Analysis, Error> {
    let analysis = Analysis::from_paths(paths, exec)?;
    for d in analysis.diagnostics() {
        if d.severity >= Severity::Warning {
            eprintln!("{d}");
        }
    }
    Ok(analysis)
}

fn select(analysis: &Analysis, mode: Mode, opts: &SelectionOptions) -> Result<Selection, Error> {
    match mode {
        Mode::Measures => most_significant_measure(&analysis.metrics, opts),
        Mode::Classes => less_responsive_class(&analysis.metrics, opts),
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<(), Failure> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.command {
        Command::Analyze {
            paths,
            dot,
            csv,
            json,
            strict,
        } => {
            let analysis = load(&paths, exec)?;
            let warnings = analysis.warning_count();
            if strict && warnings > 0 {
                return Err(Failure::Strict(warnings));
            }
            if let Some(p) = dot {
                write_file(&p, &emit_dot(&analysis.graph))?;
            }
            if let Some(p) = csv {
                write_file(&p, &emit_metrics_csv(&analysis.metrics))?;
            }
            if let Some(p) = json {
                write_file(&p, &emit_report_json(&analysis.report(None)))?;
            }
            out.heading("Summary");
            let _ = writeln!(
                out.text,
                "{} files, {} classes, {} evidences, {} edges, {} warnings",
                analysis.model.files.len(),
                analysis.model.classes.len(),
                analysis.evidences.len(),
                analysis.graph.edge_count(),
                warnings
            );
            out.text.push('\n');
            out.heading("Metrics");
            out.text.push_str(&format_metrics_table(&analysis.metrics));
        }
        Command::Pca {
            paths,
            mode,
            variance_target,
            components,
            standardize,
            json,
        } => {
            if !(variance_target > 0.0 && variance_target <= 1.0) {
                return Err(Failure::Usage(format!(
                    "--variance-target must be in (0, 1], got {variance_target}"
                )));
            }
            let analysis = load(&paths, exec)?;
            let base = match mode {
                Mode::Measures => SelectionOptions::for_measures(),
                Mode::Classes => SelectionOptions::for_classes(),
            };
            let opts = SelectionOptions {
                variance_target,
                components,
                standardize,
                ..base
            };
            let sel = select(&analysis, mode, &opts)?;
            if let Some(p) = json {
                write_file(&p, &emit_report_json(&analysis.report(Some(&sel))))?;
            }
            match mode {
                Mode::Measures => {
                    out.heading("Most significant measure");
                    out.text.push_str(&format_measure_selection(&sel));
                }
                Mode::Classes => {
                    out.heading("Less responsive class");
                    out.text.push_str(&format_class_selection(&sel));
                }
            }
        }
        Command::Whatif {
            paths,
            new_class,
            connect,
            kind,
            dot_before,
            dot_after,
            json,
        } => {
            let before = load(&paths, exec)?;
            let outcome = what_if(&before, &new_class, &connect, kind.into(), exec)?;
            if let Some(p) = dot_before {
                write_file(&p, &emit_dot(&before.graph))?;
            }
            if let Some(p) = dot_after {
                write_file(&p, &emit_dot(&outcome.after.graph))?;
            }
            if let Some(p) = json {
                write_file(&p, &to_json(&outcome.report(&before)))?;
            }
            out.heading(&format!("Adding {} ({})", outcome.new_class, outcome.kind));
            let _ = writeln!(
                out.text,
                "{:<24} {:>6} {:>6} {:>6} {:>6} {:>15} {:>15}",
                "class", "NUCD", "TNUCD", "NUCC", "TNUCC", "ClassCoupling", "VisibleMembers"
            );
            for d in &outcome.diff {
                let name = if d.added {
                    format!("{} (new)", d.class)
                } else {
                    d.class.clone()
                };
                let _ = writeln!(
                    out.text,
                    "{:<24} {:>+6} {:>+6} {:>+6} {:>+6} {:>+15} {:>+15}",
                    name, d.nucd, d.tnucd, d.nucc, d.tnucc, d.class_coupling, d.visible_members
                );
            }
        }
        Command::Recommend { paths, json } => {
            let analysis = load(&paths, exec)?;
            let sel = less_responsive_class(&analysis.metrics, &SelectionOptions::for_classes())?;
            if let Some(p) = json {
                write_file(&p, &emit_report_json(&analysis.report(Some(&sel))))?;
            }
            let r = &sel.report;
            out.heading(&format!("Attach new code to {}", r.chosen));
            let qualified = if r.fallback { 0 } else { r.rationale.len() };
            let _ = writeln!(
                out.text,
                "{qualified} of {} classes are negative on all {} retained component(s) ({:.2}% of the variance).",
                r.labels.len(),
                r.component_count,
                r.retained_variance * 100.0
            );
            if r.fallback {
                out.text.push_str(
                    "No class qualified, so the class with the lowest class coupling was chosen.\n",
                );
            } else {
                let _ = writeln!(
                    out.text,
                    "Among them it has the lowest class coupling ({}).",
                    r.rationale[0].value
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors exit 1 so that 2 keeps meaning "no input"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = Out::new();
    let result = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.text.as_bytes())
        .and_then(|()| stdout.flush())
    {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Analysis(e) => eprintln!("error: {e}"),
                Failure::Strict(n) => eprintln!("error: {n} warning(s) with --strict"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
