#![allow(dead_code)]

use ordinal_irt::{AdjacentModel, BockModel, CumulativeModel, Link, Model, SequentialModel};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub const FAMILIES: [&str; 3] = ["cumulative", "sequential", "adjacent"];

/// `k` draws from N(0, 2) (standard deviation 2).
pub fn params(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let n = Normal::new(0.0, 2.0).unwrap();
    (0..k).map(|_| n.sample(rng)).collect()
}

/// Sorted draws with a minimal gap so cumulative thresholds stay strictly
/// ordered.
pub fn thresholds(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let mut p = params(rng, k);
        p.sort_by(f64::total_cmp);
        if p.windows(2).all(|w| w[1] - w[0] > 1e-6) {
            return p;
        }
    }
}

pub fn classical(rng: &mut ChaCha8Rng, family: &str, link: Link, k: usize) -> Model {
    match family {
        "cumulative" => CumulativeModel::new(thresholds(rng, k), link).unwrap().into(),
        "sequential" => SequentialModel::new(params(rng, k), link).unwrap().into(),
        "adjacent" => AdjacentModel::new(params(rng, k), link).unwrap().into(),
        other => panic!("unknown family {other}"),
    }
}

/// Bock model with baseline `α_0 = β_0 = 0`; half of the draws get sorted
/// slopes.
pub fn bock(rng: &mut ChaCha8Rng, k: usize) -> BockModel {
    let mut slopes = params(rng, k);
    if rng.random_bool(0.5) {
        slopes.iter_mut().for_each(|a| *a = a.abs());
        slopes.sort_by(f64::total_cmp);
    }
    let locations = params(rng, k);
    BockModel::from_free(&slopes, &locations).unwrap()
}

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Standard normal density.
pub fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Composite trapezoid of `f` over `[a, b]` with `n` points.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / (n - 1) as f64;
    let inner: f64 = (1..n - 1).map(|i| f(a + h * i as f64)).sum();
    h * (inner + 0.5 * (f(a) + f(b)))
}
