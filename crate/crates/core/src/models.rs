//! Model families and their response probabilities.
//!
//! Every family evaluates the full vector of log category probabilities
//! `ln π_0(θ), …, ln π_k(θ)` at a trait point. Cumulative and continuation
//! probabilities and pairwise ratios are derived from it, except where a
//! family defines one of them directly (cumulative tails, sequential steps),
//! in which case the defining expression is used as is.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::Link;
use crate::numeric::{ln_diff_exp, ln_sum_exp};

const LN_HALF: f64 = -std::f64::consts::LN_2;

/// A point in the latent trait space.
#[derive(Debug, Clone, PartialEq)]
pub struct TraitPoint(Vec<f64>);

impl TraitPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        TraitPoint(coords)
    }

    pub fn scalar(theta: f64) -> Self {
        TraitPoint(vec![theta])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<f64> for TraitPoint {
    fn from(theta: f64) -> Self {
        TraitPoint::scalar(theta)
    }
}

impl From<Vec<f64>> for TraitPoint {
    fn from(coords: Vec<f64>) -> Self {
        TraitPoint(coords)
    }
}

/// Category probabilities `π_0, …, π_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, r: usize) -> Option<f64> {
        self.0.get(r).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Model family tag, also the `family` token of a model-spec file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cumulative,
    Sequential,
    Adjacent,
    Bock,
    IrTree,
    Multidim,
    Pcmrs,
    Table,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cumulative => "cumulative",
            Family::Sequential => "sequential",
            Family::Adjacent => "adjacent",
            Family::Bock => "bock",
            Family::IrTree => "ir-tree",
            Family::Multidim => "multidim",
            Family::Pcmrs => "pcmrs",
            Family::Table => "table",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_finite(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidParameter(format!(
            "{what}[{i}] = {} is not finite",
            values[i]
        ))),
        None => Ok(()),
    }
}

fn check_nonempty(what: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        Err(Error::InvalidParameter(format!("{what} needs k >= 1")))
    } else {
        Ok(())
    }
}

/// Graded response model: `P(Y ≥ r | θ) = F(θ − δ_r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeModel {
    thresholds: Vec<f64>,
    link: Link,
}

impl CumulativeModel {
    /// Thresholds must be strictly increasing; ties would give a category
    /// probability of exactly zero.
    pub fn new(thresholds: Vec<f64>, link: Link) -> Result<Self> {
        check_nonempty("cumulative thresholds", &thresholds)?;
        check_finite("thresholds", &thresholds)?;
        for (i, w) in thresholds.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::UnorderedThresholds {
                    index: i + 1,
                    left: w[0],
                    right: w[1],
                });
            }
        }
        Ok(CumulativeModel { thresholds, link })
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn link(&self) -> Link {
        self.link
    }

    pub fn k(&self) -> usize {
        self.thresholds.len()
    }

    /// The model obtained by reversing the category order and negating the
    /// trait: thresholds `δ'_r = −δ_{k+1−r}`.
    pub fn reversed(&self) -> CumulativeModel {
        CumulativeModel {
            thresholds: self.thresholds.iter().rev().map(|d| -d).collect(),
            link: self.link,
        }
    }

    fn ln_probs(&self, theta: f64, out: &mut Vec<f64>) {
        let link = self.link;
        let k = self.k();
        out.clear();
        out.push(link.ln_sf(theta - self.thresholds[0]));
        for r in 1..k {
            let upper = theta - self.thresholds[r - 1];
            let lower = theta - self.thresholds[r];
            out.push(ln_cdf_diff(link, upper, lower));
        }
        out.push(link.ln_cdf(theta - self.thresholds[k - 1]));
    }
}

/// `ln(F(upper) − F(lower))` for `upper > lower`, picking whichever tail
/// keeps the difference well conditioned. Infinite arguments stand for
/// `F = 1` and `F = 0`.
pub(crate) fn ln_cdf_diff(link: Link, upper: f64, lower: f64) -> f64 {
    if upper == f64::INFINITY {
        return link.ln_sf(lower);
    }
    if lower == f64::NEG_INFINITY {
        return link.ln_cdf(upper);
    }
    let ln_cdf_upper = link.ln_cdf(upper);
    let ln_sf_lower = link.ln_sf(lower);
    if ln_cdf_upper <= LN_HALF {
        ln_diff_exp(ln_cdf_upper, link.ln_cdf(lower))
    } else if ln_sf_lower <= LN_HALF {
        ln_diff_exp(ln_sf_lower, link.ln_sf(upper))
    } else {
        (-(link.ln_sf(upper).exp() + link.ln_cdf(lower).exp())).ln_1p()
    }
}

/// Sequential (continuation-ratio) model:
/// `P(Y ≥ r | Y ≥ r − 1, θ) = F(θ − δ_r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialModel {
    steps: Vec<f64>,
    link: Link,
}

impl SequentialModel {
    pub fn new(steps: Vec<f64>, link: Link) -> Result<Self> {
        check_nonempty("sequential steps", &steps)?;
        check_finite("steps", &steps)?;
        Ok(SequentialModel { steps, link })
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn link(&self) -> Link {
        self.link
    }

    pub fn k(&self) -> usize {
        self.steps.len()
    }

    fn ln_probs(&self, theta: f64, out: &mut Vec<f64>) {
        out.clear();
        let mut passed = 0.0;
        for &d in &self.steps {
            out.push(passed + self.link.ln_sf(theta - d));
            passed += self.link.ln_cdf(theta - d);
        }
        out.push(passed);
    }
}

/// Adjacent categories model:
/// `P(Y = r | Y ∈ {r−1, r}, θ) = F(θ − δ_r)`. With the logistic link this is
/// the partial credit model.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacentModel {
    thresholds: Vec<f64>,
    link: Link,
}

impl AdjacentModel {
    pub fn new(thresholds: Vec<f64>, link: Link) -> Result<Self> {
        check_nonempty("adjacent thresholds", &thresholds)?;
        check_finite("thresholds", &thresholds)?;
        Ok(AdjacentModel { thresholds, link })
    }

    pub fn partial_credit(thresholds: Vec<f64>) -> Result<Self> {
        Self::new(thresholds, Link::Logistic)
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn link(&self) -> Link {
        self.link
    }

    pub fn k(&self) -> usize {
        self.thresholds.len()
    }

    fn ln_probs(&self, theta: f64, out: &mut Vec<f64>) {
        let link = self.link;
        cumulate_logits(self.thresholds.iter().map(|d| link.log_odds(theta - d)), out);
    }
}

/// Turns adjacent log-odds `η_1..η_k` into normalized log probabilities.
fn cumulate_logits(logits: impl Iterator<Item = f64>, out: &mut Vec<f64>) {
    out.clear();
    out.push(0.0);
    let mut acc = 0.0;
    for eta in logits {
        acc += eta;
        out.push(acc);
    }
    let norm = ln_sum_exp(out);
    out.iter_mut().for_each(|v| *v -= norm);
}

/// Bock's nominal model,
/// `π_r ∝ exp(α_r (θ − β_r))`, with the baseline `α_0 = β_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BockModel {
    slopes: Vec<f64>,
    locations: Vec<f64>,
}

impl BockModel {
    /// `slopes` and `locations` cover categories `0..=k`; both must start at 0.
    pub fn new(slopes: Vec<f64>, locations: Vec<f64>) -> Result<Self> {
        if slopes.len() < 2 {
            return Err(Error::InvalidParameter(
                "bock model needs at least two categories".into(),
            ));
        }
        if locations.len() != slopes.len() {
            return Err(Error::ArityMismatch {
                what: "bock locations",
                expected: slopes.len(),
                found: locations.len(),
            });
        }
        check_finite("slopes", &slopes)?;
        check_finite("locations", &locations)?;
        if slopes[0] != 0.0 || locations[0] != 0.0 {
            return Err(Error::InvalidParameter(
                "bock baseline category must have slope 0 and location 0".into(),
            ));
        }
        Ok(BockModel { slopes, locations })
    }

    /// Builds the model from the free parameters of categories `1..=k`.
    pub fn from_free(slopes: &[f64], locations: &[f64]) -> Result<Self> {
        let mut a = vec![0.0];
        a.extend_from_slice(slopes);
        let mut b = vec![0.0];
        b.extend_from_slice(locations);
        Self::new(a, b)
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn locations(&self) -> &[f64] {
        &self.locations
    }

    pub fn k(&self) -> usize {
        self.slopes.len() - 1
    }

    /// Intercept of `ln(π_r / π_s)` as a linear function of θ:
    /// `−(α_r β_r − α_s β_s)`.
    pub fn log_ratio_intercept(&self, r: usize, s: usize) -> f64 {
        -(self.slopes[r] * self.locations[r] - self.slopes[s] * self.locations[s])
    }

    pub fn log_ratio_slope(&self, r: usize, s: usize) -> f64 {
        self.slopes[r] - self.slopes[s]
    }

    fn ln_probs(&self, theta: f64, out: &mut Vec<f64>) {
        out.clear();
        out.extend(
            self.slopes
                .iter()
                .zip(&self.locations)
                .map(|(a, b)| a * (theta - b)),
        );
        let norm = ln_sum_exp(out);
        out.iter_mut().for_each(|v| *v -= norm);
    }
}

/// Four-category IR-tree: an agreement node driven by θ and two extremity
/// nodes driven by the auxiliary traits θ⁽²⁾ (disagree side) and θ⁽³⁾
/// (agree side). Trait points are `(θ, θ⁽²⁾, θ⁽³⁾)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IrTreeModel {
    params: [f64; 3],
    link: Link,
}

impl IrTreeModel {
    pub fn new(agreement: f64, disagree_extremity: f64, agree_extremity: f64, link: Link) -> Result<Self> {
        let params = [agreement, disagree_extremity, agree_extremity];
        check_finite("ir-tree parameters", &params)?;
        Ok(IrTreeModel { params, link })
    }

    pub fn params(&self) -> [f64; 3] {
        self.params
    }

    pub fn link(&self) -> Link {
        self.link
    }

    fn ln_probs(&self, theta: &[f64], out: &mut Vec<f64>) {
        let link = self.link;
        let [d1, d2, d3] = self.params;
        let agree = theta[0] - d1;
        let low = theta[1] - d2;
        let high = theta[2] - d3;
        out.clear();
        out.extend([
            link.ln_sf(agree) + link.ln_sf(low),
            link.ln_sf(agree) + link.ln_cdf(low),
            link.ln_cdf(agree) + link.ln_sf(high),
            link.ln_cdf(agree) + link.ln_cdf(high),
        ]);
    }
}

/// Multidimensional partial credit type model,
/// `ln(π_r / π_{r−1}) = Σ_d ω_{rd} θ_d − δ_r`, logistic by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MultidimAdjacentModel {
    weights: Vec<Vec<f64>>,
    thresholds: Vec<f64>,
    response_style: bool,
}

impl MultidimAdjacentModel {
    /// `weights` has one row of `D` scoring weights per threshold.
    pub fn new(weights: Vec<Vec<f64>>, thresholds: Vec<f64>) -> Result<Self> {
        check_nonempty("multidimensional thresholds", &thresholds)?;
        check_finite("thresholds", &thresholds)?;
        if weights.len() != thresholds.len() {
            return Err(Error::ArityMismatch {
                what: "weight rows",
                expected: thresholds.len(),
                found: weights.len(),
            });
        }
        let dims = weights[0].len();
        if dims == 0 {
            return Err(Error::InvalidParameter("need D >= 1".into()));
        }
        for row in &weights {
            if row.len() != dims {
                return Err(Error::ArityMismatch {
                    what: "weight row",
                    expected: dims,
                    found: row.len(),
                });
            }
            check_finite("weights", row)?;
        }
        Ok(MultidimAdjacentModel {
            weights,
            thresholds,
            response_style: false,
        })
    }

    /// Partial credit model with a response-style trait: weights
    /// `(1, m − r + 0.5)` with middle category `m = k/2`. Needs even `k`
    /// (an odd number of categories).
    pub fn pcmrs(thresholds: Vec<f64>) -> Result<Self> {
        let k = thresholds.len();
        if k == 0 || k % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "pcmrs needs an odd number of categories (even k >= 2), got k = {k}"
            )));
        }
        let middle = (k / 2) as f64;
        let weights = (1..=k)
            .map(|r| vec![1.0, middle - r as f64 + 0.5])
            .collect();
        let mut model = Self::new(weights, thresholds)?;
        model.response_style = true;
        Ok(model)
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn is_response_style(&self) -> bool {
        self.response_style
    }

    pub fn dims(&self) -> usize {
        self.weights[0].len()
    }

    pub fn k(&self) -> usize {
        self.thresholds.len()
    }

    fn ln_probs(&self, theta: &[f64], out: &mut Vec<f64>) {
        let logits = self.weights.iter().zip(&self.thresholds).map(|(w, d)| {
            w.iter().zip(theta).map(|(w, t)| w * t).sum::<f64>() - d
        });
        cumulate_logits(logits, out);
    }
}

/// Model given by explicit category probability curves, piecewise linear
/// in θ between knots and constant outside the knot range.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedModel {
    knots: Vec<f64>,
    table: Vec<Vec<f64>>,
}

impl TabulatedModel {
    /// `table[j]` is the probability vector at `knots[j]`; every entry must
    /// be positive and every row must sum to one.
    pub fn new(knots: Vec<f64>, table: Vec<Vec<f64>>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidParameter("table needs at least two knots".into()));
        }
        check_finite("knots", &knots)?;
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("knots must be strictly increasing".into()));
        }
        if table.len() != knots.len() {
            return Err(Error::ArityMismatch {
                what: "table rows",
                expected: knots.len(),
                found: table.len(),
            });
        }
        let width = table[0].len();
        if width < 2 {
            return Err(Error::InvalidParameter("table needs at least two categories".into()));
        }
        for (j, row) in table.iter().enumerate() {
            if row.len() != width {
                return Err(Error::ArityMismatch {
                    what: "table row",
                    expected: width,
                    found: row.len(),
                });
            }
            if row.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
                return Err(Error::InvalidParameter(format!(
                    "table row {j} has a non-positive probability"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "table row {j} sums to {sum}, not 1"
                )));
            }
        }
        Ok(TabulatedModel { knots, table })
    }

    /// Probabilities `1/(k+1)` everywhere.
    pub fn constant(k: usize, lower: f64, upper: f64) -> Result<Self> {
        let p = 1.0 / (k + 1) as f64;
        Self::new(vec![lower, upper], vec![vec![p; k + 1]; 2])
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn k(&self) -> usize {
        self.table[0].len() - 1
    }

    fn ln_probs(&self, theta: f64, out: &mut Vec<f64>) {
        out.clear();
        let last = self.knots.len() - 1;
        if theta <= self.knots[0] {
            out.extend(self.table[0].iter().map(|p| p.ln()));
            return;
        }
        if theta >= self.knots[last] {
            out.extend(self.table[last].iter().map(|p| p.ln()));
            return;
        }
        let j = self.knots.partition_point(|&x| x <= theta) - 1;
        let w = (theta - self.knots[j]) / (self.knots[j + 1] - self.knots[j]);
        out.extend(
            self.table[j]
                .iter()
                .zip(&self.table[j + 1])
                .map(|(a, b)| (a + w * (b - a)).ln()),
        );
    }
}

/// Any of the supported model families, for a single item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::spec::ModelSpec", into = "crate::spec::ModelSpec")]
pub enum Model {
    Cumulative(CumulativeModel),
    Sequential(SequentialModel),
    Adjacent(AdjacentModel),
    Bock(BockModel),
    IrTree(IrTreeModel),
    Multidim(MultidimAdjacentModel),
    Table(TabulatedModel),
}

impl Model {
    pub fn family(&self) -> Family {
        match self {
            Model::Cumulative(_) => Family::Cumulative,
            Model::Sequential(_) => Family::Sequential,
            Model::Adjacent(_) => Family::Adjacent,
            Model::Bock(_) => Family::Bock,
            Model::IrTree(_) => Family::IrTree,
            Model::Multidim(m) if m.is_response_style() => Family::Pcmrs,
            Model::Multidim(_) => Family::Multidim,
            Model::Table(_) => Family::Table,
        }
    }

    pub fn link(&self) -> Option<Link> {
        match self {
            Model::Cumulative(m) => Some(m.link),
            Model::Sequential(m) => Some(m.link),
            Model::Adjacent(m) => Some(m.link),
            Model::IrTree(m) => Some(m.link),
            Model::Multidim(_) => Some(Link::Logistic),
            Model::Bock(_) | Model::Table(_) => None,
        }
    }

    /// Highest category index; categories are `0..=k`.
    pub fn k(&self) -> usize {
        match self {
            Model::Cumulative(m) => m.k(),
            Model::Sequential(m) => m.k(),
            Model::Adjacent(m) => m.k(),
            Model::Bock(m) => m.k(),
            Model::IrTree(_) => 3,
            Model::Multidim(m) => m.k(),
            Model::Table(m) => m.k(),
        }
    }

    /// Dimension of the trait points the model accepts.
    pub fn dim(&self) -> usize {
        match self {
            Model::IrTree(_) => 3,
            Model::Multidim(m) => m.dims(),
            _ => 1,
        }
    }

    fn check_point(&self, t: &TraitPoint) -> Result<()> {
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: t.dim(),
            });
        }
        if let Some(&bad) = t.coords().iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(())
    }

    fn check_step(&self, r: usize) -> Result<()> {
        if r == 0 || r > self.k() {
            return Err(Error::IndexOutOfRange {
                what: "category",
                index: r,
                min: 1,
                max: self.k(),
            });
        }
        Ok(())
    }

    /// Log category probabilities into `out`; `theta` must have the model's
    /// dimension.
    pub(crate) fn ln_probs_into(&self, theta: &[f64], out: &mut Vec<f64>) {
        match self {
            Model::Cumulative(m) => m.ln_probs(theta[0], out),
            Model::Sequential(m) => m.ln_probs(theta[0], out),
            Model::Adjacent(m) => m.ln_probs(theta[0], out),
            Model::Bock(m) => m.ln_probs(theta[0], out),
            Model::IrTree(m) => m.ln_probs(theta, out),
            Model::Multidim(m) => m.ln_probs(theta, out),
            Model::Table(m) => m.ln_probs(theta[0], out),
        }
    }

    /// `ln P(Y ≥ r)` for `r = 0..=k+1`, using the family's own tail
    /// expression where it has one.
    pub(crate) fn ln_tails(&self, theta: &[f64], lp: &[f64], out: &mut Vec<f64>) {
        let k = self.k();
        out.clear();
        match self {
            Model::Cumulative(m) => {
                out.push(0.0);
                out.extend(m.thresholds.iter().map(|d| m.link.ln_cdf(theta[0] - d)));
            }
            Model::Sequential(m) => {
                out.push(0.0);
                let mut acc = 0.0;
                for d in &m.steps {
                    acc += m.link.ln_cdf(theta[0] - d);
                    out.push(acc);
                }
            }
            _ => {
                out.extend((0..=k).map(|r| ln_sum_exp(&lp[r..]).min(0.0)));
                out[0] = 0.0;
            }
        }
        out.push(f64::NEG_INFINITY);
    }

    /// `ln P(Y < r)` for `r = 0..=k+1`.
    pub(crate) fn ln_heads(&self, theta: &[f64], lp: &[f64], out: &mut Vec<f64>) {
        let k = self.k();
        out.clear();
        out.push(f64::NEG_INFINITY);
        match self {
            Model::Cumulative(m) => {
                out.extend(m.thresholds.iter().map(|d| m.link.ln_sf(theta[0] - d)));
            }
            _ => {
                out.extend((1..=k).map(|r| ln_sum_exp(&lp[..r]).min(0.0)));
            }
        }
        out.push(0.0);
    }

    pub fn log_probabilities(&self, t: &TraitPoint) -> Result<Vec<f64>> {
        self.check_point(t)?;
        let mut lp = Vec::with_capacity(self.k() + 1);
        self.ln_probs_into(t.coords(), &mut lp);
        Ok(lp)
    }

    pub fn category_probabilities(&self, t: &TraitPoint) -> Result<ProbabilityVector> {
        let lp = self.log_probabilities(t)?;
        Ok(ProbabilityVector(lp.into_iter().map(f64::exp).collect()))
    }

    /// `P(Y ≥ r | θ)` for `1 ≤ r ≤ k`.
    pub fn cumulative_probability(&self, t: &TraitPoint, r: usize) -> Result<f64> {
        self.check_point(t)?;
        self.check_step(r)?;
        if let Model::Cumulative(m) = self {
            return m.link.cdf(t.coords()[0] - m.thresholds[r - 1]);
        }
        Ok(self.ln_tail(t.coords(), r).exp())
    }

    /// `P(Y ≥ r | Y ≥ r − 1, θ)` for `1 ≤ r ≤ k`.
    pub fn continuation_probability(&self, t: &TraitPoint, r: usize) -> Result<f64> {
        self.check_point(t)?;
        self.check_step(r)?;
        if let Model::Sequential(m) = self {
            return m.link.cdf(t.coords()[0] - m.steps[r - 1]);
        }
        let theta = t.coords();
        Ok((self.ln_tail(theta, r) - self.ln_tail(theta, r - 1)).exp())
    }

    /// `π_r / π_s` for `0 ≤ s < r ≤ k`.
    pub fn pair_ratio(&self, t: &TraitPoint, r: usize, s: usize) -> Result<f64> {
        Ok(self.log_pair_ratio(t, r, s)?.exp())
    }

    /// `ln(π_r / π_s)` for `0 ≤ s < r ≤ k`.
    pub fn log_pair_ratio(&self, t: &TraitPoint, r: usize, s: usize) -> Result<f64> {
        self.check_point(t)?;
        if s >= r || r > self.k() {
            return Err(Error::InvalidPair { s, r, k: self.k() });
        }
        let mut lp = Vec::with_capacity(self.k() + 1);
        self.ln_probs_into(t.coords(), &mut lp);
        Ok(lp[r] - lp[s])
    }

    fn ln_tail(&self, theta: &[f64], r: usize) -> f64 {
        let mut lp = Vec::with_capacity(self.k() + 1);
        self.ln_probs_into(theta, &mut lp);
        let mut tails = Vec::with_capacity(self.k() + 2);
        self.ln_tails(theta, &lp, &mut tails);
        tails[r]
    }
}

impl From<CumulativeModel> for Model {
    fn from(m: CumulativeModel) -> Self {
        Model::Cumulative(m)
    }
}

impl From<SequentialModel> for Model {
    fn from(m: SequentialModel) -> Self {
        Model::Sequential(m)
    }
}

impl From<AdjacentModel> for Model {
    fn from(m: AdjacentModel) -> Self {
        Model::Adjacent(m)
    }
}

impl From<BockModel> for Model {
    fn from(m: BockModel) -> Self {
        Model::Bock(m)
    }
}

impl From<IrTreeModel> for Model {
    fn from(m: IrTreeModel) -> Self {
        Model::IrTree(m)
    }
}

impl From<MultidimAdjacentModel> for Model {
    fn from(m: MultidimAdjacentModel) -> Self {
        Model::Multidim(m)
    }
}

impl From<TabulatedModel> for Model {
    fn from(m: TabulatedModel) -> Self {
        Model::Table(m)
    }
}
