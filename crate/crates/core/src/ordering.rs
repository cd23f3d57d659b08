//! Ordering items by their conditional step functions
//!
//! For step `r` every item has `g_r^{cond,i}(θ) = P(Y_i ≥ r | Y_i ≥ r − 1, θ)`.
//! The steps are invariantly ordered when, after relabeling, these curves
//! never cross. This orders steps, not items as wholes, and never looks at
//! expected scores.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::Model;
use crate::ordinality::{ThetaGrid, STRICTNESS_TOLERANCE};
use crate::strength::{trace_g, DefiningFunction, FunctionTrace};

/// Items with a common number of categories.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemSet {
    items: Vec<Model>,
}

impl ItemSet {
    pub fn new(items: Vec<Model>) -> Result<Self> {
        let Some(first) = items.first() else {
            return Err(Error::ItemSet("an item set needs at least one item".into()));
        };
        let k = first.k();
        if let Some((i, m)) = items.iter().enumerate().find(|(_, m)| m.k() != k) {
            return Err(Error::ItemSet(format!(
                "item {i} has k = {}, item 0 has k = {k}",
                m.k()
            )));
        }
        Ok(ItemSet { items })
    }

    pub fn items(&self) -> &[Model] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn k(&self) -> usize {
        self.items[0].k()
    }
}

/// Step-`r` conditional trace of every item on one grid.
pub fn step_traces(items: &ItemSet, r: usize, grid: &ThetaGrid) -> Result<Vec<FunctionTrace>> {
    items
        .items()
        .iter()
        .map(|m| trace_g(m, DefiningFunction::Conditional, r, grid))
        .collect()
}

/// Place where the traces of two items swap order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub first: usize,
    pub second: usize,
    /// Linear interpolation of the sign change between two grid points.
    pub theta: f64,
}

/// Sign changes of `a − b`, ignoring differences within the tie tolerance.
pub fn crossings(a: &FunctionTrace, b: &FunctionTrace) -> Vec<f64> {
    let mut out = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (pa, pb) in a.points.iter().zip(&b.points) {
        let d = pa.1 - pb.1;
        if d.abs() <= STRICTNESS_TOLERANCE {
            continue;
        }
        if let Some((theta0, d0)) = last {
            if d0.signum() != d.signum() {
                let t = d0 / (d0 - d);
                out.push(theta0 + t * (pa.0 - theta0));
            }
        }
        last = Some((pa.0, d));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingRow {
    pub item: usize,
    /// `δ_{i,r}` when the conditional step has a closed form.
    pub step: Option<f64>,
    pub midpoint: f64,
    /// 1-based position in the sorted order.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingRecord {
    pub r: usize,
    pub midpoint_theta: f64,
    /// Item indices from the lowest to the highest step-`r` trace.
    pub permutation: Vec<usize>,
    pub invariant: bool,
    /// Rows in original item order.
    pub rows: Vec<OrderingRow>,
    pub crossings: Vec<Crossing>,
}

fn closed_form_step(model: &Model, r: usize) -> Option<f64> {
    match model {
        Model::Sequential(m) => Some(m.steps()[r - 1]),
        _ => None,
    }
}

/// Sorts items by their step-`r` trace at the grid midpoint and checks that
/// the order holds at every grid point. Ties keep the original item order.
pub fn invariant_step_ordering(items: &ItemSet, r: usize, grid: &ThetaGrid) -> Result<OrderingRecord> {
    let traces = step_traces(items, r, grid)?;
    let mid = grid.mid_index();
    // Saturated traces can tie at the midpoint; the nearest grid points
    // where they differ decide.
    let n = grid.len();
    let scan: Vec<usize> = std::iter::once(mid)
        .chain((1..n).flat_map(|d| [mid.checked_sub(d), Some(mid + d).filter(|&i| i < n)]).flatten())
        .collect();
    let keys: Vec<Vec<f64>> = traces.iter().map(|t| scan.iter().map(|&i| t.points[i].1).collect()).collect();
    let mut permutation: Vec<usize> = (0..items.len()).collect();
    permutation.sort_by(|&a, &b| {
        keys[a]
            .iter()
            .zip(&keys[b])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let invariant = permutation.windows(2).all(|w| {
        let (lo, hi) = (&traces[w[0]], &traces[w[1]]);
        lo.points
            .iter()
            .zip(&hi.points)
            .all(|(a, b)| a.1 <= b.1 + STRICTNESS_TOLERANCE)
    });

    let mut ranks = vec![0; items.len()];
    for (pos, &item) in permutation.iter().enumerate() {
        ranks[item] = pos + 1;
    }
    let rows = items
        .items()
        .iter()
        .enumerate()
        .map(|(i, m)| OrderingRow {
            item: i,
            step: closed_form_step(m, r),
            midpoint: traces[i].points[mid].1,
            rank: ranks[i],
        })
        .collect();

    let mut found = Vec::new();
    for i in 0..traces.len() {
        for j in i + 1..traces.len() {
            found.extend(crossings(&traces[i], &traces[j]).into_iter().map(|theta| Crossing {
                first: i,
                second: j,
                theta,
            }));
        }
    }

    Ok(OrderingRecord {
        r,
        midpoint_theta: grid.midpoint(),
        permutation,
        invariant,
        rows,
        crossings: found,
    })
}
