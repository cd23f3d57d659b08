//! Defining functions `g_r` and the population-based strength measure
//!
//! ```text
//! m_r = ∫ g_r'(θ) f(θ) dθ
//! ```
//!
//! where `f` is a normal trait density. Three families of defining functions
//! are supported: split (`P(Y ≥ r)`), adjacent (`P(Y = r | Y ∈ {r−1, r})`)
//! and conditional (`P(Y ≥ r | Y ≥ r − 1)`).

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use gauss_quad::hermite::GaussHermite;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{CumulativeModel, Model};
use crate::numeric::expit;
use crate::ordinality::ThetaGrid;

/// Step of the central difference used when `g_r'` has no closed form.
pub const DIFFERENCE_STEP: f64 = 1e-5;
/// Disagreement between step `h` and `h/2` that triggers Richardson
/// extrapolation.
pub const RICHARDSON_TRIGGER: f64 = 1e-6;
/// Largest tolerated gap between the two quadrature rules.
pub const QUADRATURE_AGREEMENT: f64 = 1e-6;
pub const DEFAULT_FLATNESS_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefiningFunction {
    Split,
    Adjacent,
    Conditional,
}

impl DefiningFunction {
    pub fn name(self) -> &'static str {
        match self {
            DefiningFunction::Split => "split",
            DefiningFunction::Adjacent => "adjacent",
            DefiningFunction::Conditional => "conditional",
        }
    }
}

impl fmt::Display for DefiningFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DefiningFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(DefiningFunction::Split),
            "adjacent" => Ok(DefiningFunction::Adjacent),
            "conditional" => Ok(DefiningFunction::Conditional),
            other => Err(Error::InvalidParameter(format!("unknown defining function `{other}`"))),
        }
    }
}

/// Normal trait distribution of the population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Population {
    mean: f64,
    sd: f64,
}

impl Population {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !mean.is_finite() || !sd.is_finite() || sd <= 0.0 {
            return Err(Error::InvalidPopulation(format!(
                "need finite mean and positive sd, got mean {mean}, sd {sd}"
            )));
        }
        Ok(Population { mean, sd })
    }

    pub fn standard() -> Self {
        Population { mean: 0.0, sd: 1.0 }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }

    pub fn density(&self, theta: f64) -> f64 {
        let z = (theta - self.mean) / self.sd;
        (-0.5 * z * z).exp() / (self.sd * (2.0 * PI).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    GaussHermite,
    Trapezoid,
}

impl QuadratureMethod {
    pub fn name(self) -> &'static str {
        match self {
            QuadratureMethod::GaussHermite => "gauss-hermite",
            QuadratureMethod::Trapezoid => "trapezoid",
        }
    }

    fn other(self) -> Self {
        match self {
            QuadratureMethod::GaussHermite => QuadratureMethod::Trapezoid,
            QuadratureMethod::Trapezoid => QuadratureMethod::GaussHermite,
        }
    }
}

impl FromStr for QuadratureMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss-hermite" => Ok(QuadratureMethod::GaussHermite),
            "trapezoid" => Ok(QuadratureMethod::Trapezoid),
            other => Err(Error::InvalidQuadrature(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Rule that produces the reported value; the other one cross-checks it.
    pub method: QuadratureMethod,
    pub nodes: usize,
    pub trapezoid_points: usize,
    /// Half-width of the trapezoid range in standard deviations.
    pub range_sd: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            method: QuadratureMethod::GaussHermite,
            nodes: 101,
            trapezoid_points: 100_000,
            range_sd: 8.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 11 {
            return Err(Error::InvalidQuadrature(format!(
                "need at least 11 gauss-hermite nodes, got {}",
                self.nodes
            )));
        }
        if self.trapezoid_points < 11 {
            return Err(Error::InvalidQuadrature(format!(
                "need at least 11 trapezoid points, got {}",
                self.trapezoid_points
            )));
        }
        if !(self.range_sd.is_finite() && self.range_sd > 0.0) {
            return Err(Error::InvalidQuadrature("range must be positive".into()));
        }
        Ok(())
    }
}

/// Both integration rules, ready to integrate against a population.
pub struct Quadrature {
    config: QuadratureConfig,
    hermite: Vec<(f64, f64)>,
}

impl Quadrature {
    pub fn new(config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        let rule = GaussHermite::new(NonZeroUsize::new(config.nodes).expect("validated"));
        Ok(Quadrature {
            config,
            hermite: rule.as_node_weight_pairs().to_vec(),
        })
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    /// `∫ h(θ) f(θ) dθ` for the population density `f`.
    pub fn integrate(&self, method: QuadratureMethod, pop: &Population, h: impl Fn(f64) -> f64) -> f64 {
        match method {
            QuadratureMethod::GaussHermite => {
                let scale = SQRT_2 * pop.sd();
                let sum: f64 = self
                    .hermite
                    .iter()
                    .map(|&(x, w)| w * h(pop.mean() + scale * x))
                    .sum();
                sum / PI.sqrt()
            }
            QuadratureMethod::Trapezoid => {
                let n = self.config.trapezoid_points;
                let lo = pop.mean() - self.config.range_sd * pop.sd();
                let hi = pop.mean() + self.config.range_sd * pop.sd();
                let step = (hi - lo) / (n - 1) as f64;
                let mut sum = 0.0;
                for i in 0..n {
                    let theta = lo + step * i as f64;
                    let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                    sum += w * h(theta) * pop.density(theta);
                }
                sum * step
            }
        }
    }
}

/// `g_r` sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionTrace {
    pub function: DefiningFunction,
    pub r: usize,
    pub points: Vec<(f64, f64)>,
}

impl FunctionTrace {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// `max g − min g` over the trace.
    pub fn range(&self) -> f64 {
        let (lo, hi) = self
            .values()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrengthValue {
    /// Population average of `g_r'`. Zero for a flat `g_r`, positive for an
    /// increasing one; a decreasing `g_r` gives a negative value.
    pub m: f64,
    pub r: usize,
    pub function: DefiningFunction,
    pub method: QuadratureMethod,
    /// The same integral from the other rule.
    pub cross_check: f64,
}

fn check_index(model: &Model, r: usize) -> Result<()> {
    if r == 0 || r > model.k() {
        return Err(Error::IndexOutOfRange {
            what: "comparison",
            index: r,
            min: 1,
            max: model.k(),
        });
    }
    Ok(())
}

/// `g_r` at full trait coordinates.
pub(crate) fn g_at(model: &Model, function: DefiningFunction, r: usize, coords: &[f64]) -> f64 {
    let theta = coords[0];
    match (model, function) {
        (Model::Cumulative(m), DefiningFunction::Split) => {
            return m.link().cdf_raw(theta - m.thresholds()[r - 1]);
        }
        (Model::Sequential(m), DefiningFunction::Conditional) => {
            return m.link().cdf_raw(theta - m.steps()[r - 1]);
        }
        (Model::Adjacent(m), DefiningFunction::Adjacent) => {
            return m.link().cdf_raw(theta - m.thresholds()[r - 1]);
        }
        _ => {}
    }
    let mut lp = Vec::with_capacity(model.k() + 1);
    model.ln_probs_into(coords, &mut lp);
    match function {
        DefiningFunction::Adjacent => expit(lp[r] - lp[r - 1]),
        DefiningFunction::Split | DefiningFunction::Conditional => {
            let mut tails = Vec::with_capacity(model.k() + 2);
            model.ln_tails(coords, &lp, &mut tails);
            if function == DefiningFunction::Split {
                tails[r].exp()
            } else {
                (tails[r] - tails[r - 1]).exp()
            }
        }
    }
}

/// `g_r'(θ)` along dimension 0 with other coordinates at 0. Closed form for
/// cumulative split, sequential conditional and adjacent-model adjacent
/// functions; central differences otherwise.
pub fn g_derivative(model: &Model, function: DefiningFunction, r: usize, theta: f64) -> f64 {
    match (model, function) {
        (Model::Cumulative(m), DefiningFunction::Split) => {
            return m.link().density(theta - m.thresholds()[r - 1]);
        }
        (Model::Sequential(m), DefiningFunction::Conditional) => {
            return m.link().density(theta - m.steps()[r - 1]);
        }
        (Model::Adjacent(m), DefiningFunction::Adjacent) => {
            return m.link().density(theta - m.thresholds()[r - 1]);
        }
        _ => {}
    }
    numeric_derivative(|t| g_scalar(model, function, r, t), theta)
}

fn g_scalar(model: &Model, function: DefiningFunction, r: usize, theta: f64) -> f64 {
    let mut coords = vec![0.0; model.dim()];
    coords[0] = theta;
    g_at(model, function, r, &coords)
}

/// Central difference at `DIFFERENCE_STEP`, refined by Richardson
/// extrapolation when halving the step moves the estimate by more than
/// `RICHARDSON_TRIGGER`.
pub fn numeric_derivative(g: impl Fn(f64) -> f64, x: f64) -> f64 {
    let central = |h: f64| (g(x + h) - g(x - h)) / (2.0 * h);
    let coarse = central(DIFFERENCE_STEP);
    let fine = central(DIFFERENCE_STEP / 2.0);
    if (coarse - fine).abs() > RICHARDSON_TRIGGER {
        (4.0 * fine - coarse) / 3.0
    } else {
        coarse
    }
}

pub fn trace_g(model: &Model, function: DefiningFunction, r: usize, grid: &ThetaGrid) -> Result<FunctionTrace> {
    check_index(model, r)?;
    grid.validate_for(model)?;
    let dim = model.dim();
    let points = grid
        .values()
        .into_iter()
        .map(|theta| (theta, g_at(model, function, r, &grid.coords(theta, dim))))
        .collect();
    Ok(FunctionTrace { function, r, points })
}

/// `m_r` for one defining function; the trait varies along dimension 0.
pub fn strength_measure(
    model: &Model,
    function: DefiningFunction,
    r: usize,
    pop: &Population,
    quad: &QuadratureConfig,
) -> Result<StrengthValue> {
    let rule = Quadrature::new(*quad)?;
    strength_with(model, function, r, pop, &rule)
}

pub fn strength_with(
    model: &Model,
    function: DefiningFunction,
    r: usize,
    pop: &Population,
    rule: &Quadrature,
) -> Result<StrengthValue> {
    check_index(model, r)?;
    let method = rule.config().method;
    let derivative = |t: f64| g_derivative(model, function, r, t);
    let m = rule.integrate(method, pop, derivative);
    let cross_check = rule.integrate(method.other(), pop, derivative);
    if !((m - cross_check).abs() <= QUADRATURE_AGREEMENT) {
        return Err(Error::QuadratureUnstable {
            primary: m,
            secondary: cross_check,
        });
    }
    Ok(StrengthValue {
        m,
        r,
        function,
        method,
        cross_check,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: f64,
    /// Split strengths `m_1..m_k`; `None` when this value breaks the
    /// threshold order.
    pub strengths: Option<Vec<StrengthValue>>,
}

impl SweepRow {
    pub fn is_degenerate(&self) -> bool {
        self.strengths.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    /// 1-based index of the threshold that varies.
    pub index: usize,
    pub k: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn valid_rows(&self) -> impl Iterator<Item = (f64, &[StrengthValue])> {
        self.rows
            .iter()
            .filter_map(|row| row.strengths.as_deref().map(|s| (row.delta, s)))
    }

    pub fn degenerate_deltas(&self) -> Vec<f64> {
        self.rows.iter().filter(|r| r.is_degenerate()).map(|r| r.delta).collect()
    }
}

/// Split strengths of a cumulative model while threshold `index` moves
/// over `steps` evenly spaced values in `[low, high]`.
pub fn sweep_threshold(
    template: &CumulativeModel,
    index: usize,
    range: (f64, f64),
    steps: usize,
    pop: &Population,
    quad: &QuadratureConfig,
) -> Result<SweepTable> {
    let k = template.k();
    if index == 0 || index > k {
        return Err(Error::IndexOutOfRange {
            what: "threshold",
            index,
            min: 1,
            max: k,
        });
    }
    let (low, high) = range;
    if !(low.is_finite() && high.is_finite()) || low > high || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "sweep needs finite low <= high and steps >= 1, got [{low}, {high}] with {steps} steps"
        )));
    }
    let rule = Quadrature::new(*quad)?;
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let delta = if steps == 1 {
            low
        } else if i + 1 == steps {
            high
        } else {
            low + (high - low) * i as f64 / (steps - 1) as f64
        };
        let mut thresholds = template.thresholds().to_vec();
        thresholds[index - 1] = delta;
        let strengths = match CumulativeModel::new(thresholds, template.link()) {
            Ok(model) => {
                let model: Model = model.into();
                let values = (1..=k)
                    .map(|r| strength_with(&model, DefiningFunction::Split, r, pop, &rule))
                    .collect::<Result<Vec<_>>>()?;
                Some(values)
            }
            Err(Error::UnorderedThresholds { .. }) => None,
            Err(e) => return Err(e),
        };
        rows.push(SweepRow { delta, strengths });
    }
    if rows.iter().all(SweepRow::is_degenerate) {
        return Err(Error::EmptySweep);
    }
    Ok(SweepTable { index, k, rows })
}

/// Fuses categories `r − 1` and `r` of a cumulative model by dropping
/// threshold `δ_r`. Only cumulative models stay in their family under
/// collapsing.
pub fn collapse_categories(model: &Model, r: usize) -> Result<CumulativeModel> {
    let Model::Cumulative(m) = model else {
        return Err(Error::NotCollapsible(format!(
            "only cumulative models are closed under collapsing, got `{}`",
            model.family()
        )));
    };
    let k = m.k();
    if k < 2 {
        return Err(Error::NotCollapsible("a model with k = 1 has nothing to fuse".into()));
    }
    if r == 0 || r > k {
        return Err(Error::IndexOutOfRange {
            what: "threshold",
            index: r,
            min: 1,
            max: k,
        });
    }
    let mut thresholds = m.thresholds().to_vec();
    thresholds.remove(r - 1);
    CumulativeModel::new(thresholds, m.link())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatnessRow {
    /// Compares categories `r − 1` and `r`.
    pub r: usize,
    pub min: f64,
    pub max: f64,
    pub range: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatnessTable {
    pub threshold: f64,
    pub rows: Vec<FlatnessRow>,
}

impl FlatnessTable {
    pub fn flagged(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.flagged).map(|r| r.r).collect()
    }
}

/// Range of every adjacent function `g_r^adj` over the grid; comparisons
/// whose range falls below `threshold` are candidates for collapsing.
pub fn flatness_diagnostic(model: &Model, grid: &ThetaGrid, threshold: f64) -> Result<FlatnessTable> {
    let rows = (1..=model.k())
        .map(|r| {
            let trace = trace_g(model, DefiningFunction::Adjacent, r, grid)?;
            let (min, max) = trace
                .values()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            Ok(FlatnessRow {
                r,
                min,
                max,
                range: max - min,
                flagged: max - min < threshold,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FlatnessTable { threshold, rows })
}
