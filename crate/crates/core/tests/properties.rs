mod common;

use approx::assert_relative_eq;
use ordinal_irt::ordering::{invariant_step_ordering, ItemSet};
use ordinal_irt::ordinality::{check_all, check_split, ThetaGrid, Trend};
use ordinal_irt::strength::{
    collapse_categories, g_derivative, numeric_derivative, strength_measure, trace_g, DefiningFunction, Population,
    QuadratureConfig,
};
use ordinal_irt::{
    AdjacentModel, BockModel, CumulativeModel, IrTreeModel, Link, Model, MultidimAdjacentModel, SequentialModel,
    TabulatedModel, TraitPoint,
};
use proptest::prelude::*;

fn arb_link() -> impl Strategy<Value = Link> {
    prop::sample::select(Link::ALL.to_vec())
}

fn arb_params(k: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0f64..4.0, k)
}

fn arb_thresholds() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..2.0, 1..7).prop_flat_map(|gaps| {
        (-4.0f64..0.0).prop_map(move |start| {
            gaps.iter()
                .scan(start, |acc, g| {
                    *acc += g;
                    Some(*acc)
                })
                .collect()
        })
    })
}

fn arb_model() -> impl Strategy<Value = Model> {
    prop_oneof![
        (arb_thresholds(), arb_link()).prop_map(|(d, l)| CumulativeModel::new(d, l).unwrap().into()),
        (arb_params(1..7), arb_link()).prop_map(|(d, l)| SequentialModel::new(d, l).unwrap().into()),
        (arb_params(1..7), arb_link()).prop_map(|(d, l)| AdjacentModel::new(d, l).unwrap().into()),
        (arb_params(3..4), arb_link()).prop_map(|(d, l)| IrTreeModel::new(d[0], d[1], d[2], l).unwrap().into()),
        (arb_params(2..4), arb_params(2..4)).prop_map(|(a, b)| {
            let n = a.len().min(b.len());
            BockModel::from_free(&a[..n], &b[..n]).unwrap().into()
        }),
        arb_params(2..3).prop_map(|d| MultidimAdjacentModel::pcmrs(vec![d[0], d[0] + 0.5, d[1], d[1] + 1.0]).unwrap().into()),
    ]
}

fn point(model: &Model, theta: f64) -> TraitPoint {
    let mut c = vec![0.0; model.dim()];
    c[0] = theta;
    if c.len() > 1 {
        c[1] = 0.3;
    }
    TraitPoint::new(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probabilities_are_normalized(model in arb_model(), theta in -10.0f64..10.0) {
        let p = model.category_probabilities(&point(&model, theta)).unwrap();
        prop_assert_eq!(p.len(), model.k() + 1);
        prop_assert!((p.sum() - 1.0).abs() <= 1e-12);
        prop_assert!(p.as_slice().iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn tails_telescope_into_continuations(model in arb_model(), theta in -10.0f64..10.0) {
        let t = point(&model, theta);
        let mut product = 1.0;
        for r in 1..=model.k() {
            product *= model.continuation_probability(&t, r).unwrap();
            prop_assert!((model.cumulative_probability(&t, r).unwrap() - product).abs() <= 1e-12);
        }
        let p = model.category_probabilities(&t).unwrap();
        prop_assert!((model.cumulative_probability(&t, 1).unwrap() - (1.0 - p.as_slice()[0])).abs() <= 1e-12);
    }

    #[test]
    fn pair_ratio_matches_probabilities(model in arb_model(), theta in -6.0f64..6.0) {
        let t = point(&model, theta);
        let p = model.category_probabilities(&t).unwrap();
        for r in 1..=model.k() {
            for s in 0..r {
                let (pr, ps) = (p.as_slice()[r], p.as_slice()[s]);
                if pr < 1e-200 || ps < 1e-200 {
                    continue;
                }
                let ratio = model.pair_ratio(&t, r, s).unwrap();
                prop_assert!(((ratio - pr / ps) / (pr / ps)).abs() <= 1e-10, "r={} s={}", r, s);
            }
        }
    }

    #[test]
    fn partial_credit_log_ratio_is_linear(d in arb_params(1..7), theta in -10.0f64..10.0) {
        let model: Model = AdjacentModel::partial_credit(d.clone()).unwrap().into();
        let t = TraitPoint::scalar(theta);
        for r in 1..=d.len() {
            let lr = model.log_pair_ratio(&t, r, r - 1).unwrap();
            prop_assert!((lr - (theta - d[r - 1])).abs() <= 1e-12);
        }
    }

    #[test]
    fn binary_models_have_one_verdict(model in arb_model().prop_filter("unidimensional", |m| m.dim() == 1), theta0 in -3.0f64..3.0) {
        // Restrict to one threshold by collapsing everything above category 1
        let binary: Model = match &model {
            Model::Cumulative(m) => CumulativeModel::new(vec![m.thresholds()[0] + theta0], m.link()).unwrap().into(),
            Model::Sequential(m) => SequentialModel::new(vec![m.steps()[0]], m.link()).unwrap().into(),
            Model::Adjacent(m) => AdjacentModel::new(vec![m.thresholds()[0]], m.link()).unwrap().into(),
            Model::Bock(m) => BockModel::new(m.slopes()[..2].to_vec(), m.locations()[..2].to_vec()).unwrap().into(),
            _ => TabulatedModel::constant(1, -10.0, 10.0).unwrap().into(),
        };
        let grid = ThetaGrid::new(-10.0, 10.0, 401).unwrap();
        let [paired, conditional, split] = check_all(&binary, &grid).unwrap();
        let trends = |r: &ordinal_irt::ordinality::OrdinalityReport| r.comparisons.iter().map(|c| c.verdict.trend).collect::<Vec<_>>();
        prop_assert_eq!(trends(&paired), trends(&split));
        prop_assert_eq!(trends(&conditional), trends(&split));
    }

    #[test]
    fn split_ordinal_models_are_stochastically_ordered(
        model in arb_model().prop_filter("unidimensional", |m| m.dim() == 1),
        a in -10.0f64..10.0,
        b in -10.0f64..10.0,
    ) {
        let grid = ThetaGrid::new(-10.0, 10.0, 201).unwrap();
        prop_assume!(check_split(&model, &grid).unwrap().overall());
        // snap to grid points, which is where the verdict speaks
        let snap = |x: f64| grid.value(((x + 10.0) / 0.1).round() as usize);
        let (lo, hi) = (snap(a.min(b)), snap(a.max(b)));
        prop_assume!(lo < hi);
        for r in 1..=model.k() {
            let plo = model.cumulative_probability(&TraitPoint::scalar(lo), r).unwrap();
            let phi = model.cumulative_probability(&TraitPoint::scalar(hi), r).unwrap();
            prop_assert!(plo <= phi, "r={} {} {}", r, plo, phi);
            // strict wherever the clamped cdf can still resolve the difference
            let resolvable = |p: f64| p > 1e-300 && p < 1.0 - f64::EPSILON / 2.0;
            if resolvable(plo) || resolvable(phi) {
                prop_assert!(plo < phi, "r={} {} {}", r, plo, phi);
            }
        }
    }

    #[test]
    fn cumulative_logistic_log_ratios_increase(d in arb_thresholds()) {
        let k = d.len();
        let model: Model = CumulativeModel::new(d.clone(), Link::Logistic).unwrap().into();
        for i in 0..=40 {
            let theta = -10.0 + 0.5 * i as f64;
            for r in 1..=k {
                for s in 0..r {
                    let f = |t: f64| model.log_pair_ratio(&TraitPoint::scalar(t), r, s).unwrap();
                    let numeric = numeric_derivative(f, theta);
                    // F(x_s) − F(x_r) + F(x_{s+1}) − F(x_{r+1}) with x_j = θ − δ_j,
                    // x_0 = +∞ and x_{k+1} = −∞
                    let cdf = |j: usize| {
                        if j == 0 { 1.0 } else if j == k + 1 { 0.0 } else { common::logistic(theta - d[j - 1]) }
                    };
                    let closed = cdf(s) - cdf(r) + cdf(s + 1) - cdf(r + 1);
                    prop_assert!(closed > 0.0);
                    prop_assert!(numeric > 0.0, "theta={} r={} s={}", theta, r, s);
                    prop_assert!((numeric - closed).abs() < 1e-5, "{} vs {}", numeric, closed);
                }
            }
        }
    }

    #[test]
    fn ordinal_models_have_positive_strength(model in arb_model().prop_filter("unidimensional", |m| m.dim() == 1)) {
        let grid = ThetaGrid::new(-10.0, 10.0, 401).unwrap();
        let [_, conditional, split] = check_all(&model, &grid).unwrap();
        let quad = QuadratureConfig { trapezoid_points: 20_001, ..QuadratureConfig::default() };
        let pop = Population::standard();
        for (report, function) in [(split, DefiningFunction::Split), (conditional, DefiningFunction::Conditional)] {
            for c in &report.comparisons {
                let ordinal_irt::ordinality::Comparison::Step(r) = c.comparison else { unreachable!() };
                let Ok(s) = strength_measure(&model, function, r, &pop, &quad) else { continue };
                if c.verdict.trend == Trend::Increasing {
                    prop_assert!(s.m > 0.0, "{:?} r={} m={}", function, r, s.m);
                }
            }
        }
    }

    #[test]
    fn collapsing_keeps_a_split_ordinal_cumulative_model(d in arb_thresholds(), link in arb_link(), pick in 0usize..6, theta in -10.0f64..10.0) {
        prop_assume!(d.len() >= 2);
        let model: Model = CumulativeModel::new(d.clone(), link).unwrap().into();
        let r = 1 + pick % d.len();
        let collapsed: Model = collapse_categories(&model, r).unwrap().into();
        prop_assert!(check_split(&collapsed, &ThetaGrid::new(-10.0, 10.0, 401).unwrap()).unwrap().overall());
        let t = TraitPoint::scalar(theta);
        let p = model.category_probabilities(&t).unwrap().into_vec();
        let q = collapsed.category_probabilities(&t).unwrap().into_vec();
        let mut fused = p.clone();
        fused[r - 1] += fused.remove(r);
        for (a, b) in fused.iter().zip(&q) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn shared_link_sequential_items_order_by_step(
        steps in prop::collection::vec(prop::collection::vec(-4.0f64..4.0, 2), 1..6),
        link in arb_link(),
        r in 1usize..3,
    ) {
        let items: Vec<Model> = steps.iter().map(|s| SequentialModel::new(s.clone(), link).unwrap().into()).collect();
        let set = ItemSet::new(items).unwrap();
        let rec = invariant_step_ordering(&set, r, &ThetaGrid::new(-10.0, 10.0, 401).unwrap()).unwrap();
        prop_assert!(rec.invariant);
        let mut expected: Vec<usize> = (0..steps.len()).collect();
        expected.sort_by(|&a, &b| steps[b][r - 1].total_cmp(&steps[a][r - 1]));
        prop_assert_eq!(rec.permutation, expected);
    }
}

#[test]
fn analytic_split_derivative_matches_trace_differences() {
    let grid = ThetaGrid::default();
    for link in Link::ALL {
        let model: Model = CumulativeModel::new(vec![-1.5, 0.2, 2.0], link).unwrap().into();
        for r in 1..=3 {
            let trace = trace_g(&model, DefiningFunction::Split, r, &grid).unwrap();
            for w in trace.points.windows(3).step_by(13) {
                let central = (w[2].1 - w[0].1) / (w[2].0 - w[0].0);
                let analytic = g_derivative(&model, DefiningFunction::Split, r, w[1].0);
                // step 0.01 central differences carry O(h²) error
                assert!((central - analytic).abs() < 1e-4, "{link:?} r={r} theta={}", w[1].0);
                let fine = numeric_derivative(|t| link.cdf_raw(t - [-1.5, 0.2, 2.0][r - 1]), w[1].0);
                assert!((fine - analytic).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn strength_oracle_matches_fine_trapezoid() {
    // 10^6-point trapezoid of logistic'(θ)·φ(θ) over ±10
    let oracle = common::trapezoid(|t| {
        let f = common::logistic(t);
        f * (1.0 - f) * common::phi(t)
    }, -10.0, 10.0, 1_000_000);
    let model: Model = CumulativeModel::new(vec![0.0], Link::Logistic).unwrap().into();
    let s = strength_measure(&model, DefiningFunction::Split, 1, &Population::standard(), &QuadratureConfig::default()).unwrap();
    assert_relative_eq!(s.m, oracle, epsilon = 1e-8);
    assert_relative_eq!(s.cross_check, oracle, epsilon = 1e-8);
}

#[test]
fn shifted_population_matches_shifted_threshold() {
    let quad = QuadratureConfig::default();
    let a: Model = CumulativeModel::new(vec![1.0], Link::Normal).unwrap().into();
    let b: Model = CumulativeModel::new(vec![0.0], Link::Normal).unwrap().into();
    let ma = strength_measure(&a, DefiningFunction::Split, 1, &Population::new(1.0, 1.5).unwrap(), &quad).unwrap();
    let mb = strength_measure(&b, DefiningFunction::Split, 1, &Population::new(0.0, 1.5).unwrap(), &quad).unwrap();
    assert_relative_eq!(ma.m, mb.m, epsilon = 1e-12);
    // Φ' against N(0, 1.5²) integrates to the N(0, 1 + 1.5²) density at 0
    let expected = common::phi(0.0) / (1.0f64 + 2.25).sqrt();
    assert_relative_eq!(mb.m, expected, epsilon = 1e-10);
}
