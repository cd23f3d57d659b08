//! Mechanical checks of the three ordinality concepts.
//!
//! * split: `P(Y ≥ r | θ)` increasing for every `r`;
//! * paired: `π_r(θ) / π_s(θ)` increasing for every pair `s < r`;
//! * conditional: `P(Y ≥ r | Y ≥ r − 1, θ)` increasing for every `r`.
//!
//! "Increasing" means strictly increasing, and it is decided on a finite
//! grid. Each defining function is classified on its log-odds scale
//! (log-ratio scale for the paired concept). That transform is strictly
//! increasing, so it never changes the answer, but unlike the probability
//! itself it does not round to a constant in the far tails of the links.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::Link;
use crate::models::{ln_cdf_diff, BockModel, CumulativeModel, Model, TabulatedModel, TraitPoint};
use crate::numeric::ln_sum_exp;

/// Minimum successive difference that counts as a strict increase.
pub const STRICTNESS_TOLERANCE: f64 = 1e-12;

/// Evenly spaced trait values along one dimension, with the other
/// dimensions held at fixed values.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid {
    lower: f64,
    upper: f64,
    points: usize,
    active: usize,
    base: Vec<f64>,
}

impl Default for ThetaGrid {
    /// `[-10, 10]` with 2001 points, varying dimension 0.
    fn default() -> Self {
        ThetaGrid {
            lower: -10.0,
            upper: 10.0,
            points: 2001,
            active: 0,
            base: Vec::new(),
        }
    }
}

impl ThetaGrid {
    pub fn new(lower: f64, upper: f64, points: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower >= upper {
            return Err(Error::InvalidGrid(format!(
                "need finite lower < upper, got [{lower}, {upper}]"
            )));
        }
        if points < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 points, got {points}")));
        }
        Ok(ThetaGrid {
            lower,
            upper,
            points,
            active: 0,
            base: Vec::new(),
        })
    }

    /// Vary dimension `active`; the other coordinates come from `base`
    /// (missing entries are 0).
    pub fn along(mut self, active: usize, base: Vec<f64>) -> Self {
        self.active = active;
        self.base = base;
        self
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn active(&self) -> usize {
        self.active
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.upper;
        }
        self.lower + (self.upper - self.lower) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }

    /// Index of the middle grid point.
    pub fn mid_index(&self) -> usize {
        self.points / 2
    }

    pub fn midpoint(&self) -> f64 {
        self.value(self.mid_index())
    }

    pub(crate) fn validate_for(&self, model: &Model) -> Result<()> {
        let dim = model.dim();
        if self.active >= dim {
            return Err(Error::DimensionOutOfRange {
                dim: self.active,
                available: dim,
            });
        }
        if self.base.len() > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.base.len(),
            });
        }
        if let Some(&bad) = self.base.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(())
    }

    /// Full trait coordinates with the active dimension set to `theta`.
    pub fn coords(&self, theta: f64, dim: usize) -> Vec<f64> {
        let mut c = self.base.clone();
        c.resize(dim, 0.0);
        c[self.active] = theta;
        c
    }

    pub fn trait_point(&self, theta: f64, dim: usize) -> TraitPoint {
        TraitPoint::new(self.coords(theta, dim))
    }
}

/// Shape of a function sampled on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Increasing,
    Flat,
    Decreasing,
    /// Anything else, including weakly monotone functions with flat stretches.
    NonMonotone,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Increasing => "increasing",
            Trend::Flat => "flat",
            Trend::Decreasing => "decreasing",
            Trend::NonMonotone => "non-monotone",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityVerdict {
    pub trend: Trend,
    /// Smallest successive difference.
    pub min_step: f64,
    /// Left end of the step where `min_step` occurs.
    pub worst_at: f64,
    pub tolerance: f64,
}

impl MonotonicityVerdict {
    pub fn classify(thetas: &[f64], values: &[f64], tolerance: f64) -> Self {
        assert_eq!(thetas.len(), values.len());
        assert!(values.len() >= 2);
        let mut min_step = f64::INFINITY;
        let mut worst_at = thetas[0];
        let (mut up, mut down, mut level) = (true, true, true);
        let mut finite = true;
        for (i, w) in values.windows(2).enumerate() {
            let d = w[1] - w[0];
            if !d.is_finite() {
                finite = false;
                min_step = f64::NAN;
                worst_at = thetas[i];
                break;
            }
            if d < min_step {
                min_step = d;
                worst_at = thetas[i];
            }
            up &= d > tolerance;
            down &= d < -tolerance;
            level &= d.abs() <= tolerance;
        }
        let trend = if !finite {
            Trend::NonMonotone
        } else if up {
            Trend::Increasing
        } else if down {
            Trend::Decreasing
        } else if level {
            Trend::Flat
        } else {
            Trend::NonMonotone
        };
        MonotonicityVerdict {
            trend,
            min_step,
            worst_at,
            tolerance,
        }
    }

    pub fn is_increasing(&self) -> bool {
        self.trend == Trend::Increasing
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Concept {
    Split,
    Paired,
    Conditional,
}

impl Concept {
    pub const ALL: [Concept; 3] = [Concept::Paired, Concept::Conditional, Concept::Split];

    pub fn name(self) -> &'static str {
        match self {
            Concept::Split => "split",
            Concept::Paired => "paired",
            Concept::Conditional => "conditional",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a single verdict compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// Split or conditional comparison at category `r`.
    Step(usize),
    /// Paired comparison of category `r` against `s < r`.
    Pair { s: usize, r: usize },
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Step(r) => write!(f, "r={r}"),
            Comparison::Pair { s, r } => write!(f, "({r},{s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub comparison: Comparison,
    pub verdict: MonotonicityVerdict,
    /// Whether a closed-form derivative of the defining function is positive
    /// at every grid point; `None` when the family has no closed form for it.
    pub analytic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrdinalityReport {
    pub concept: Concept,
    pub comparisons: Vec<ComparisonVerdict>,
}

impl OrdinalityReport {
    /// True iff every comparison is increasing.
    pub fn overall(&self) -> bool {
        self.comparisons.iter().all(|c| c.verdict.is_increasing())
    }

    pub fn verdict(&self, comparison: Comparison) -> Option<&MonotonicityVerdict> {
        self.comparisons
            .iter()
            .find(|c| c.comparison == comparison)
            .map(|c| &c.verdict)
    }
}

impl fmt::Display for OrdinalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} concept: {}", self.concept, if self.overall() { "ordinal" } else { "not ordinal" })?;
        for c in &self.comparisons {
            writeln!(
                f,
                "  {:<8} {:<13} min step {:>12} at theta {}",
                c.comparison.to_string(),
                c.verdict.trend.to_string(),
                crate::numeric::fmt_sig(c.verdict.min_step),
                crate::numeric::fmt_sig(c.verdict.worst_at)
            )?;
        }
        Ok(())
    }
}

/// Log probabilities and log tails of a model over a grid.
pub(crate) struct GridEvaluation {
    pub thetas: Vec<f64>,
    pub lp: Vec<Vec<f64>>,
    pub tails: Vec<Vec<f64>>,
    pub heads: Vec<Vec<f64>>,
}

impl GridEvaluation {
    pub fn new(model: &Model, grid: &ThetaGrid) -> Result<Self> {
        grid.validate_for(model)?;
        let dim = model.dim();
        let thetas = grid.values();
        let mut lp = Vec::with_capacity(thetas.len());
        let mut tails = Vec::with_capacity(thetas.len());
        let mut heads = Vec::with_capacity(thetas.len());
        for &theta in &thetas {
            let c = grid.coords(theta, dim);
            let mut p = Vec::with_capacity(model.k() + 1);
            model.ln_probs_into(&c, &mut p);
            let mut t = Vec::with_capacity(model.k() + 2);
            model.ln_tails(&c, &p, &mut t);
            let mut h = Vec::with_capacity(model.k() + 2);
            model.ln_heads(&c, &p, &mut h);
            lp.push(p);
            tails.push(t);
            heads.push(h);
        }
        Ok(GridEvaluation {
            thetas,
            lp,
            tails,
            heads,
        })
    }

    pub fn split_log_odds(&self, r: usize) -> Vec<f64> {
        self.tails.iter().zip(&self.heads).map(|(t, h)| t[r] - h[r]).collect()
    }

    pub fn conditional_log_odds(&self, r: usize) -> Vec<f64> {
        self.tails.iter().zip(&self.lp).map(|(t, p)| t[r] - p[r - 1]).collect()
    }

    pub fn pair_log_ratio(&self, s: usize, r: usize) -> Vec<f64> {
        self.lp.iter().map(|p| p[r] - p[s]).collect()
    }

    /// Log-odds of `P(Y = r | Y ∈ {s, r})`, normalized within the pair.
    pub fn pair_conditional_log_odds(&self, s: usize, r: usize) -> Vec<f64> {
        self.lp
            .iter()
            .map(|p| {
                let norm = ln_sum_exp(&[p[s], p[r]]);
                (p[r] - norm) - (p[s] - norm)
            })
            .collect()
    }
}

fn hazard(link: Link, x: f64) -> f64 {
    (link.ln_density(x) - link.ln_cdf(x) - link.ln_sf(x)).exp()
}

/// Closed-form derivative (in the active dimension) of the log-odds of the
/// defining function, where the family has one.
fn analytic_slope(model: &Model, comparison: Comparison, concept: Concept, active: usize, theta: f64) -> Option<f64> {
    match (model, concept, comparison) {
        (Model::Cumulative(m), Concept::Split, Comparison::Step(r)) => {
            Some(hazard(m.link(), theta - m.thresholds()[r - 1]))
        }
        (Model::Sequential(m), Concept::Conditional, Comparison::Step(r)) => {
            Some(hazard(m.link(), theta - m.steps()[r - 1]))
        }
        (Model::Adjacent(m), Concept::Paired, Comparison::Pair { s, r }) => Some(
            m.thresholds()[s..r]
                .iter()
                .map(|d| hazard(m.link(), theta - d))
                .sum(),
        ),
        (Model::Multidim(m), Concept::Paired, Comparison::Pair { s, r }) => {
            Some(m.weights()[s..r].iter().map(|w| w[active]).sum())
        }
        (Model::Bock(m), Concept::Paired, Comparison::Pair { s, r }) => Some(m.log_ratio_slope(r, s)),
        (Model::Cumulative(m), Concept::Paired, Comparison::Pair { s, r })
            if m.link() == Link::Logistic =>
        {
            // d/dθ ln(π_r/π_s) = [F(x_s) − F(x_r)] + [F(x_{s+1}) − F(x_{r+1})]
            // with x_j = θ − δ_j, x_0 = +∞, x_{k+1} = −∞.
            let x = |j: usize| {
                if j == 0 {
                    f64::INFINITY
                } else if j > m.k() {
                    f64::NEG_INFINITY
                } else {
                    theta - m.thresholds()[j - 1]
                }
            };
            let link = m.link();
            Some(ln_cdf_diff(link, x(s), x(r)).exp() + ln_cdf_diff(link, x(s + 1), x(r + 1)).exp())
        }
        _ => None,
    }
}

fn analytic_positive(model: &Model, grid: &ThetaGrid, thetas: &[f64], concept: Concept, comparison: Comparison) -> Option<bool> {
    let mut all = true;
    for &t in thetas {
        let slope = analytic_slope(model, comparison, concept, grid.active(), t)?;
        all &= slope > 0.0;
    }
    Some(all)
}

fn report(
    model: &Model,
    grid: &ThetaGrid,
    eval: &GridEvaluation,
    concept: Concept,
    comparisons: Vec<(Comparison, Vec<f64>)>,
) -> OrdinalityReport {
    let comparisons = comparisons
        .into_iter()
        .map(|(comparison, values)| ComparisonVerdict {
            comparison,
            verdict: MonotonicityVerdict::classify(&eval.thetas, &values, STRICTNESS_TOLERANCE),
            analytic: analytic_positive(model, grid, &eval.thetas, concept, comparison),
        })
        .collect();
    OrdinalityReport { concept, comparisons }
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k).flat_map(|r| (0..r).map(move |s| (s, r)))
}

/// Split concept: `θ ↦ P(Y ≥ r | θ)` for `r = 1..=k`.
pub fn check_split(model: &Model, grid: &ThetaGrid) -> Result<OrdinalityReport> {
    let eval = GridEvaluation::new(model, grid)?;
    Ok(split_report(model, grid, &eval))
}

fn split_report(model: &Model, grid: &ThetaGrid, eval: &GridEvaluation) -> OrdinalityReport {
    let cmp = (1..=model.k())
        .map(|r| (Comparison::Step(r), eval.split_log_odds(r)))
        .collect();
    report(model, grid, eval, Concept::Split, cmp)
}

/// Paired categories concept: `θ ↦ π_r(θ) / π_s(θ)` for every `s < r`.
pub fn check_paired(model: &Model, grid: &ThetaGrid) -> Result<OrdinalityReport> {
    let eval = GridEvaluation::new(model, grid)?;
    Ok(paired_report(model, grid, &eval))
}

fn paired_report(model: &Model, grid: &ThetaGrid, eval: &GridEvaluation) -> OrdinalityReport {
    let cmp = pairs(model.k())
        .map(|(s, r)| (Comparison::Pair { s, r }, eval.pair_log_ratio(s, r)))
        .collect();
    report(model, grid, eval, Concept::Paired, cmp)
}

/// Conditional concept: `θ ↦ P(Y ≥ r | Y ≥ r − 1, θ)` for `r = 1..=k`.
pub fn check_conditional(model: &Model, grid: &ThetaGrid) -> Result<OrdinalityReport> {
    let eval = GridEvaluation::new(model, grid)?;
    Ok(conditional_report(model, grid, &eval))
}

fn conditional_report(model: &Model, grid: &ThetaGrid, eval: &GridEvaluation) -> OrdinalityReport {
    let cmp = (1..=model.k())
        .map(|r| (Comparison::Step(r), eval.conditional_log_odds(r)))
        .collect();
    report(model, grid, eval, Concept::Conditional, cmp)
}

/// All three reports from one grid evaluation.
pub fn check_all(model: &Model, grid: &ThetaGrid) -> Result<[OrdinalityReport; 3]> {
    let eval = GridEvaluation::new(model, grid)?;
    Ok([
        paired_report(model, grid, &eval),
        conditional_report(model, grid, &eval),
        split_report(model, grid, &eval),
    ])
}

/// Overall verdicts of the three equivalent formulations of the paired
/// concept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedEquivalence {
    /// `π_r / π_s` increasing for all `s < r`.
    pub ratios: bool,
    /// `P(Y = r | Y ∈ {s, r})` increasing for all `s < r`.
    pub pair_conditionals: bool,
    /// `P(Y = r | Y ∈ {r − 1, r})` increasing for all `r`.
    pub adjacent_conditionals: bool,
}

impl PairedEquivalence {
    pub fn consistent(&self) -> bool {
        self.ratios == self.pair_conditionals && self.ratios == self.adjacent_conditionals
    }
}

pub fn check_paired_equivalences(model: &Model, grid: &ThetaGrid) -> Result<PairedEquivalence> {
    let eval = GridEvaluation::new(model, grid)?;
    let k = model.k();
    let increasing = |values: Vec<f64>| {
        MonotonicityVerdict::classify(&eval.thetas, &values, STRICTNESS_TOLERANCE).is_increasing()
    };
    Ok(PairedEquivalence {
        ratios: pairs(k).all(|(s, r)| increasing(eval.pair_log_ratio(s, r))),
        pair_conditionals: pairs(k).all(|(s, r)| increasing(eval.pair_conditional_log_odds(s, r))),
        adjacent_conditionals: (1..=k).all(|r| increasing(eval.pair_conditional_log_odds(r - 1, r))),
    })
}

/// Overall verdicts of the three concepts plus the implication check
/// `paired ⇒ conditional ⇒ split`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyRecord {
    pub paired: bool,
    pub conditional: bool,
    pub split: bool,
    /// Set when `paired ∧ ¬conditional` or `conditional ∧ ¬split`.
    pub violation: bool,
}

pub fn verify_hierarchy(model: &Model, grid: &ThetaGrid) -> Result<HierarchyRecord> {
    let [paired, conditional, split] = check_all(model, grid)?;
    let (paired, conditional, split) = (paired.overall(), conditional.overall(), split.overall());
    Ok(HierarchyRecord {
        paired,
        conditional,
        split,
        violation: (paired && !conditional) || (conditional && !split),
    })
}

/// Bock's model is paired-ordinal iff `α_0 < α_1 < … < α_k`.
pub fn bock_criterion(model: &BockModel) -> bool {
    model.slopes().windows(2).all(|w| w[0] < w[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureRecord {
    /// `max |π_{k−r}(θ) − π'_r(−θ)|` over the grid and categories, where
    /// `π'` belongs to the reversed model.
    pub max_deviation: f64,
    pub worst_theta: f64,
}

/// Compares the reversed category order of a cumulative model with the
/// cumulative model of negated trait and reflected thresholds.
pub fn check_reversal_closure(model: &CumulativeModel, grid: &ThetaGrid) -> Result<ClosureRecord> {
    let original: Model = model.clone().into();
    let reversed: Model = model.reversed().into();
    let k = model.k();
    let mut record = ClosureRecord {
        max_deviation: 0.0,
        worst_theta: grid.lower(),
    };
    for theta in grid.values() {
        let p = original.category_probabilities(&TraitPoint::scalar(theta))?;
        let q = reversed.category_probabilities(&TraitPoint::scalar(-theta))?;
        for r in 0..=k {
            let dev = (p.as_slice()[k - r] - q.as_slice()[r]).abs();
            if dev > record.max_deviation {
                record.max_deviation = dev;
                record.worst_theta = theta;
            }
        }
    }
    Ok(record)
}

/// Which implication between concepts a counterexample should break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    /// Split-ordinal but not conditional-ordinal.
    SplitNotConditional,
    /// Conditional-ordinal but not paired-ordinal.
    ConditionalNotPaired,
}

impl Separation {
    pub fn name(self) -> &'static str {
        match self {
            Separation::SplitNotConditional => "split-not-conditional",
            Separation::ConditionalNotPaired => "conditional-not-paired",
        }
    }

    fn accepts(self, [paired, conditional, split]: [bool; 3]) -> bool {
        match self {
            Separation::SplitNotConditional => split && !conditional,
            Separation::ConditionalNotPaired => conditional && !paired,
        }
    }
}

impl std::str::FromStr for Separation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split-not-conditional" => Ok(Separation::SplitNotConditional),
            "conditional-not-paired" => Ok(Separation::ConditionalNotPaired),
            other => Err(Error::InvalidParameter(format!("unknown separation target `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub k: usize,
    pub seed: u64,
    pub budget: usize,
    pub knots: usize,
    pub grid: ThetaGrid,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k: 2,
            seed: 0,
            budget: 100_000,
            knots: 5,
            grid: ThetaGrid::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub model: TabulatedModel,
    /// Number of random tables drawn, including the accepted one.
    pub draws: usize,
    pub hierarchy: HierarchyRecord,
}

/// Random search over piecewise-linear probability tables for a model that
/// satisfies the weaker concept of `target` but not the stronger one.
///
/// Each draw picks continuation probabilities at evenly spaced knots across
/// the grid (each step sequence sorted or not by a coin flip) and turns them
/// into category probabilities. Candidates are screened on the knots, where
/// the verdicts of piecewise-linear tables are decided, and then re-checked
/// on the full grid.
pub fn find_counterexample(target: Separation, config: &SearchConfig) -> Result<Counterexample> {
    let k = config.k;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if config.knots < 3 {
        return Err(Error::InvalidParameter("need at least 3 knots".into()));
    }
    let grid = &config.grid;
    let knot_grid = ThetaGrid::new(grid.lower(), grid.upper(), config.knots)?;
    let knots = knot_grid.values();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for draw in 1..=config.budget {
        let table = random_table(&mut rng, k, knots.len());
        let model: Model = TabulatedModel::new(knots.clone(), table)?.into();
        let screen = check_all(&model, &knot_grid)?.map(|r| r.overall());
        if !target.accepts(screen) {
            continue;
        }
        let hierarchy = verify_hierarchy(&model, grid)?;
        if target.accepts([hierarchy.paired, hierarchy.conditional, hierarchy.split]) {
            let Model::Table(model) = model else { unreachable!() };
            return Ok(Counterexample {
                model,
                draws: draw,
                hierarchy,
            });
        }
    }
    Err(Error::SearchFailed {
        target: target.name().to_string(),
        budget: config.budget,
    })
}

fn random_table(rng: &mut ChaCha8Rng, k: usize, knots: usize) -> Vec<Vec<f64>> {
    let steps: Vec<Vec<f64>> = (0..k)
        .map(|_| {
            let mut c: Vec<f64> = (0..knots).map(|_| rng.random_range(0.02..0.98)).collect();
            if rng.random_bool(0.5) {
                c.sort_by(f64::total_cmp);
            }
            c
        })
        .collect();
    (0..knots)
        .map(|j| {
            let mut row = Vec::with_capacity(k + 1);
            let mut reach = 1.0;
            for step in &steps {
                row.push(reach * (1.0 - step[j]));
                reach *= step[j];
            }
            row.push(reach);
            let sum: f64 = row.iter().sum();
            row.iter_mut().for_each(|p| *p /= sum);
            row
        })
        .collect()
}
