//! Command-line surface. `main` parses [`Cli`] and calls [`run`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unionpid_core::{
    canonical, run_axiom_suite, CorpusName, JointDistribution, OptimizerConfig, SourceCollection,
};

use crate::error::{CliError, Result};
use crate::io::{load_distribution, save_distribution};
use crate::measures::Measure;
use crate::reproduce::{counterexamples, results_table, sec2_cases};
use crate::sweep::{even_grid, parse_family, sweep};

#[derive(Debug, Parser)]
#[command(
    name = "unionpid",
    version,
    about = "Partial information decomposition measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate measures on one distribution.
    Measure(MeasureArgs),
    /// Recompute a reference table and compare with the reference values.
    Reproduce(ReproduceArgs),
    /// Evaluate measures along a parametric family, writing CSV.
    Sweep(SweepArgs),
    /// Run the randomized axiom suite.
    Axioms(AxiomArgs),
    /// Write a distribution to a file in the text format.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Seed for the optimizer's random restarts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random restarts of the redundancy optimizer.
    #[arg(long, default_value_t = OptimizerConfig::default().restarts)]
    pub restarts: usize,
    /// Convergence tolerance of the optimizers.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Iteration cap of the optimizers.
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

impl SolverArgs {
    pub fn config(&self) -> Result<OptimizerConfig> {
        let mut c = OptimizerConfig {
            restarts: self.restarts,
            seed: self.seed,
            ..OptimizerConfig::default()
        };
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::arg(format!("tolerance {t} must be positive")));
            }
            c.tolerance = t;
        }
        if let Some(n) = self.max_iterations {
            c.max_iterations = n;
        }
        Ok(c)
    }
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// `corpus:NAME`, `corpus:NAME(r)` or a distribution file.
    #[arg(long)]
    pub dist: String,
    /// Target variable names, comma separated. Defaults to the corpus target,
    /// or `T` for files.
    #[arg(long)]
    pub target: Option<String>,
    /// Sources such as `Y1;Y2` or `Y1,Y2;Y3`. Defaults to every non-target
    /// variable on its own.
    #[arg(long)]
    pub sources: Option<String>,
    /// Measure names, repeatable or comma separated.
    #[arg(long = "measure", required = true, value_delimiter = ',')]
    pub measures: Vec<String>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    ResultsTable,
    /// The bivariate case studies.
    #[value(alias = "case-studies")]
    Sec2Cases,
    Counterexamples,
    All,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub which: Table,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// ADAPTED_XOR, ADAPTED_XOR_V2 or ADAPTED_REDUCED_OR.
    #[arg(long)]
    pub family: String,
    /// Explicit grid points, comma separated.
    #[arg(long = "r", value_delimiter = ',', conflicts_with = "steps")]
    pub grid: Vec<f64>,
    /// Number of even steps over [0, 1] when no grid is given.
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    #[arg(long = "measure", required = true, value_delimiter = ',')]
    pub measures: Vec<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub out: PathBuf,
}

/// A distribution given on the command line, with the target it implies.
pub struct LoadedDistribution {
    pub dist: JointDistribution,
    pub default_target: String,
}

/// Resolves `corpus:NAME`, `corpus:NAME(r)` or a file path.
pub fn resolve_distribution(spec: &str) -> Result<LoadedDistribution> {
    let Some(rest) = spec.strip_prefix("corpus:") else {
        return Ok(LoadedDistribution {
            dist: load_distribution(std::path::Path::new(spec))?,
            default_target: "T".into(),
        });
    };
    let (name, param) = match rest.split_once('(') {
        Some((name, tail)) => {
            let inner = tail
                .strip_suffix(')')
                .ok_or_else(|| CliError::arg(format!("unbalanced parenthesis in {spec}")))?;
            let r: f64 = inner
                .trim()
                .parse()
                .map_err(|_| CliError::arg(format!("invalid parameter {inner} in {spec}")))?;
            (name, Some(r))
        }
        None => (rest, None),
    };
    let name: CorpusName = name.trim().parse()?;
    Ok(LoadedDistribution {
        dist: canonical(name, param)?,
        default_target: name.target_var().into(),
    })
}

fn parse_measures(names: &[String]) -> Result<Vec<Measure>> {
    names.iter().map(|n| n.trim().parse()).collect()
}

/// Runs one command, writing data to `out`. Returns whether every check
/// the command performs passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let text = match &cli.command {
        Command::Measure(a) => {
            let measures = parse_measures(&a.measures)?;
            let config = a.solver.config()?;
            let loaded = resolve_distribution(&a.dist)?;
            let d = &loaded.dist;
            let target_spec = a.target.as_deref().unwrap_or(&loaded.default_target);
            let names: Vec<&str> = target_spec.split(',').map(str::trim).collect();
            let t = d.vars(&names)?;
            let sources = match &a.sources {
                Some(s) => SourceCollection::parse(s, d)?,
                None => SourceCollection::singletons(d.complement(t))?,
            };
            let mut text = String::new();
            for m in measures {
                text.push_str(&format!(
                    "{m}\t{:.6}\n",
                    m.evaluate(d, t, &sources, &config)?
                ));
            }
            return write_out(out, &text).map(|_| true);
        }
        Command::Reproduce(a) => {
            let config = a.solver.config()?;
            let reports = match a.which {
                Table::ResultsTable => vec![results_table(&config)],
                Table::Sec2Cases => vec![sec2_cases(&config)],
                Table::Counterexamples => vec![counterexamples(&config)],
                Table::All => vec![
                    results_table(&config),
                    sec2_cases(&config),
                    counterexamples(&config),
                ],
            };
            let text: Vec<String> = reports.iter().map(|r| r.render()).collect();
            write_out(out, &text.join("\n"))?;
            return Ok(reports.iter().all(|r| r.passed()));
        }
        Command::Sweep(a) => {
            let family = parse_family(&a.family)?;
            let measures = parse_measures(&a.measures)?;
            let grid = if a.grid.is_empty() {
                even_grid(a.steps)?
            } else {
                a.grid.clone()
            };
            let csv = sweep(family, &grid, &measures, &a.solver.config()?)?;
            match &a.out {
                Some(path) => {
                    std::fs::write(path, csv).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    String::new()
                }
                None => csv,
            }
        }
        Command::Axioms(a) => {
            if a.trials == 0 {
                return Err(CliError::arg("trials must be at least 1"));
            }
            let report = run_axiom_suite(a.trials, a.seed)?;
            write_out(out, &report.render())?;
            return Ok(report.passed());
        }
        Command::Export(a) => {
            save_distribution(&resolve_distribution(&a.dist)?.dist, &a.out)?;
            String::new()
        }
    };
    write_out(out, &text).map(|_| true)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<(bool, String)> {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::arg(e.to_string()))?;
        let mut buf = Vec::new();
        let ok = run(&cli, &mut buf)?;
        Ok((ok, String::from_utf8(buf).unwrap()))
    }

    #[test]
    fn corpus_specs_resolve() {
        let d = resolve_distribution("corpus:ADAPTED_XOR(0.25)").unwrap();
        assert_eq!(d.dist.entries().len(), 5);
        assert_eq!(d.default_target, "T");
        assert_eq!(
            resolve_distribution("corpus:COPY_XOR_TARGETS")
                .unwrap()
                .default_target,
            "T1"
        );
        assert!(resolve_distribution("corpus:XOR(0.5)").is_err());
        assert!(resolve_distribution("corpus:ADAPTED_XOR(0.5").is_err());
        assert!(resolve_distribution("corpus:NOPE").is_err());
    }

    #[test]
    fn measure_prints_tab_separated_lines() {
        let (ok, out) = run_args(&[
            "unionpid",
            "measure",
            "--dist",
            "corpus:XOR",
            "--target",
            "T",
            "--sources",
            "Y1;Y2",
            "--measure",
            "s_ci,i_total",
        ])
        .unwrap();
        assert!(ok);
        assert_eq!(out, "s_ci\t1.000000\ni_total\t1.000000\n");
    }

    #[test]
    fn unknown_measure_is_an_argument_error() {
        let e = run_args(&[
            "unionpid",
            "measure",
            "--dist",
            "corpus:XOR",
            "--measure",
            "s_x",
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
