use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ordinal_irt::figures;
use ordinal_irt::ordering::{invariant_step_ordering, ItemSet};
use ordinal_irt::ordinality::{check_all, find_counterexample, SearchConfig, Separation, ThetaGrid};
use ordinal_irt::report::{
    concept_row, concept_table, ordering_csv, render_concept_table, strength_table, svg_plot, sweep_csv,
    CsvTable, Series,
};
use ordinal_irt::strength::{
    collapse_categories, flatness_diagnostic, strength_with, sweep_threshold, trace_g, DefiningFunction, Population,
    Quadrature, QuadratureConfig, QuadratureMethod,
};
use ordinal_irt::{Error, Model, TraitPoint};

#[derive(Parser)]
#[command(name = "ordinal-irt", version, about = "Ordinal item response models: evaluation, ordinality checks and strength")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print category probabilities at a trait point
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// Trait coordinates, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        theta: Vec<f64>,
    },
    /// Run the split, paired and conditional checks
    Check {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Also print the overview for generic members of the classical families
        #[arg(long)]
        overview: bool,
    },
    /// Strength measure for every comparison of one model
    Strength {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = FunctionArg::Split)]
        function: FunctionArg,
        #[command(flatten)]
        population: PopulationArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Split strengths while one threshold of a cumulative model moves
    Sweep {
        #[arg(long)]
        model: PathBuf,
        /// 1-based threshold index
        #[arg(long)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        low: f64,
        #[arg(long, allow_hyphen_values = true)]
        high: f64,
        #[arg(long, default_value_t = 61)]
        steps: usize,
        #[command(flatten)]
        population: PopulationArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fuse two adjacent categories of a cumulative model
    Collapse {
        #[arg(long)]
        model: PathBuf,
        /// Threshold to drop; categories r-1 and r are fused
        #[arg(long)]
        r: usize,
        /// Where to write the collapsed model spec (stdout if absent)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Order items by a conditional step function
    Order {
        #[arg(long, num_args = 1.., required = true)]
        items: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a model separating two ordinality concepts
    Counterexample {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Where to write the model spec (stdout if absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the adjacent-function panels and the threshold sweep
    Figures {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Also write SVG plots
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        quadrature: QuadratureArgs,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    lower: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    upper: f64,
    #[arg(long, default_value_t = 2001)]
    points: usize,
    /// Trait dimension that varies (0-based)
    #[arg(long, default_value_t = 0)]
    dim: usize,
    /// Values of the other trait dimensions, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    base: Vec<f64>,
}

impl GridArgs {
    fn grid(&self) -> Result<ThetaGrid, Error> {
        Ok(ThetaGrid::new(self.lower, self.upper, self.points)?.along(self.dim, self.base.clone()))
    }
}

#[derive(Args)]
struct QuadratureArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::GaussHermite)]
    method: MethodArg,
    #[arg(long, default_value_t = 101)]
    nodes: usize,
    #[arg(long, default_value_t = 100_000)]
    trapezoid_points: usize,
    #[arg(long, default_value_t = 8.0)]
    range_sd: f64,
}

impl QuadratureArgs {
    fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            method: match self.method {
                MethodArg::GaussHermite => QuadratureMethod::GaussHermite,
                MethodArg::Trapezoid => QuadratureMethod::Trapezoid,
            },
            nodes: self.nodes,
            trapezoid_points: self.trapezoid_points,
            range_sd: self.range_sd,
        }
    }
}

#[derive(Args)]
struct PopulationArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    mean: f64,
    #[arg(long, default_value_t = 1.0)]
    sd: f64,
    #[command(flatten)]
    quadrature: QuadratureArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// CSV destination (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionArg {
    Split,
    Adjacent,
    Conditional,
}

impl From<FunctionArg> for DefiningFunction {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Split => DefiningFunction::Split,
            FunctionArg::Adjacent => DefiningFunction::Adjacent,
            FunctionArg::Conditional => DefiningFunction::Conditional,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    GaussHermite,
    Trapezoid,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    SplitNotConditional,
    ConditionalNotPaired,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Which {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn population(args: &PopulationArgs) -> Result<(Population, Quadrature), Error> {
    Ok((Population::new(args.mean, args.sd)?, Quadrature::new(args.quadrature.config())?))
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Eval { model, theta } => {
            let model = Model::load(&model)?;
            let probs = model.category_probabilities(&TraitPoint::new(theta))?;
            let mut table = CsvTable::new(vec!["category".into(), "probability".into()]);
            for (r, p) in probs.as_slice().iter().enumerate() {
                table.push(vec![Some(r as f64), Some(*p)]);
            }
            emit(&table.to_csv_string(), None)
        }
        Command::Check { model, grid, overview } => {
            let model = Model::load(&model)?;
            let grid = grid.grid()?;
            let mut text = String::new();
            for report in check_all(&model, &grid)? {
                text.push_str(&report.to_string());
            }
            text.push('\n');
            let mut rows = vec![concept_row(&model, &grid)?];
            if overview {
                rows.extend(concept_table(&grid)?);
            }
            text.push_str(&render_concept_table(&rows));
            emit(&text, None)
        }
        Command::Strength { model, function, population: pop, output } => {
            let model = Model::load(&model)?;
            let (p, rule) = population(&pop)?;
            let function = DefiningFunction::from(function);
            let values = (1..=model.k())
                .map(|r| strength_with(&model, function, r, &p, &rule))
                .collect::<Result<Vec<_>, _>>()?;
            let table = strength_table(&values)
                .with_metadata(format!("population=normal mean={} sd={}", pop.mean, pop.sd));
            if let Some(svg) = &output.svg {
                let grid = ThetaGrid::new(p.mean() - 4.0 * p.sd(), p.mean() + 4.0 * p.sd(), 401)?;
                let series = (1..=model.k())
                    .map(|r| {
                        let t = trace_g(&model, function, r, &grid)?;
                        Ok(Series { label: format!("g_{r}"), points: t.points })
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                write_file(svg, &svg_plot(&format!("{function} functions"), "theta", "g", &series))?;
            }
            emit(&table.to_csv_string(), output.out.as_deref())
        }
        Command::Sweep { model, index, low, high, steps, population: pop, output } => {
            let Model::Cumulative(template) = Model::load(&model)? else {
                return Err(Error::InvalidParameter("sweep needs a cumulative model".into()));
            };
            let (p, _) = population(&pop)?;
            let sweep = sweep_threshold(&template, index, (low, high), steps, &p, &pop.quadrature.config())?;
            let table = sweep_csv(&sweep)
                .with_metadata(format!("population=normal mean={} sd={}", pop.mean, pop.sd));
            if let Some(svg) = &output.svg {
                write_file(svg, &sweep_svg(&sweep))?;
            }
            emit(&table.to_csv_string(), output.out.as_deref())
        }
        Command::Collapse { model, r, out, grid } => {
            let model = Model::load(&model)?;
            let grid = grid.grid()?;
            let collapsed: Model = collapse_categories(&model, r)?.into();
            let before = flatness_diagnostic(&model, &grid, ordinal_irt::strength::DEFAULT_FLATNESS_THRESHOLD)?;
            let after = flatness_diagnostic(&collapsed, &grid, ordinal_irt::strength::DEFAULT_FLATNESS_THRESHOLD)?;
            eprintln!("flat comparisons before: {:?}, after: {:?}", before.flagged(), after.flagged());
            emit(&(collapsed.to_json() + "\n"), out.as_deref())
        }
        Command::Order { items, r, grid, out } => {
            let models = items.iter().map(Model::load).collect::<Result<Vec<_>, _>>()?;
            let set = ItemSet::new(models)?;
            let record = invariant_step_ordering(&set, r, &grid.grid()?)?;
            emit(&ordering_csv(&record).to_csv_string(), out.as_deref())
        }
        Command::Counterexample { target, seed, budget, k, out } => {
            let target = match target {
                TargetArg::SplitNotConditional => Separation::SplitNotConditional,
                TargetArg::ConditionalNotPaired => Separation::ConditionalNotPaired,
            };
            let config = SearchConfig { k, seed, budget, ..SearchConfig::default() };
            let found = find_counterexample(target, &config)?;
            let h = found.hierarchy;
            eprintln!(
                "{} found after {} draws: paired={} conditional={} split={}",
                target.name(),
                found.draws,
                h.paired,
                h.conditional,
                h.split
            );
            emit(&(Model::from(found.model).to_json() + "\n"), out.as_deref())
        }
        Command::Figures { which, out_dir, svg, quadrature } => {
            fs::create_dir_all(&out_dir)?;
            if which != Which::Three {
                let grid = ThetaGrid::default();
                let panels = figures::adjacent_panels(&grid)?;
                for (panel, flat) in panels.iter().zip(figures::flatness_tables(&panels)) {
                    let stem = format!("figure2_{}", panel.name);
                    write_file(&out_dir.join(format!("{stem}.csv")), &panel.table.to_csv_string())?;
                    write_file(&out_dir.join(format!("{stem}_flatness.csv")), &flat.to_csv_string())?;
                    if svg {
                        let series = panel_series(&panel.table);
                        let plot = svg_plot(&format!("adjacent functions, {}", panel.name), "theta", "g_adj", &series);
                        write_file(&out_dir.join(format!("{stem}.svg")), &plot)?;
                    }
                }
            }
            if which != Which::Two {
                let (sweep, table) = figures::threshold_sweep(&quadrature.config())?;
                write_file(&out_dir.join("figure3.csv"), &table.to_csv_string())?;
                if svg {
                    write_file(&out_dir.join("figure3.svg"), &sweep_svg(&sweep))?;
                }
            }
            Ok(())
        }
    }
}

fn panel_series(table: &CsvTable) -> Vec<Series> {
    let theta: Vec<f64> = table.rows.iter().map(|r| r[0].unwrap_or(f64::NAN)).collect();
    table.header[1..]
        .iter()
        .enumerate()
        .map(|(j, name)| Series {
            label: name.clone(),
            points: theta
                .iter()
                .zip(&table.rows)
                .map(|(&t, row)| (t, row[j + 1].unwrap_or(f64::NAN)))
                .collect(),
        })
        .collect()
}

fn sweep_svg(sweep: &ordinal_irt::strength::SweepTable) -> String {
    let series: Vec<Series> = (0..sweep.k)
        .map(|j| Series {
            label: format!("m_{}", j + 1),
            points: sweep.valid_rows().map(|(d, s)| (d, s[j].m)).collect(),
        })
        .collect();
    svg_plot(&format!("split strengths, threshold {} varies", sweep.index), "delta", "m", &series)
}
