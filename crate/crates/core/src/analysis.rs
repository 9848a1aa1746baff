//! Number-theoretic bounds on built systems and the growth-exponent harness.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::{FamilyError, FamilySpec};
use crate::sims::{build_with_stats, BuildStats, SimsError, Strategy};
use crate::transversal::TransversalSystem;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("theta is undefined for 0")]
    ThetaOfZero,
    #[error("s = {s} is outside 0..{limit} for n = {n}")]
    SumOutOfRange { n: usize, s: usize, limit: usize },
    #[error("sizes must be strictly increasing and non-empty")]
    BadSizes,
    #[error("family {0} needs at least one seed")]
    MissingSeeds(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Sims(#[from] SimsError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Number of prime factors of `n`, counted with multiplicity.
pub fn theta(n: &BigUint) -> Result<u32, AnalysisError> {
    if n.is_zero() {
        return Err(AnalysisError::ThetaOfZero);
    }
    let mut rest = n.clone();
    let mut count = 0;
    let mut d: u64 = 2;
    while BigUint::from(d) * BigUint::from(d) <= rest {
        while (&rest % d).is_zero() {
            rest /= d;
            count += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        count += 1;
    }
    Ok(count)
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Smallest product of `s_1 * ... * s_n` subject to `sum(s_k - 1) = s` and
/// `1 <= s_k <= k`, valid for `0 <= s < n(n-1)/2`.
///
/// The minimum fills the top levels completely: `s_k = k` for `k > q`,
/// `s_q = r`, and `s_k = 1` below, where `C(n,2) - s - 1 = C(q,2) - r` with
/// `1 <= r < q <= n`. The product is `r * n! / q!`.
pub fn minimal_product(n: usize, s: usize) -> Result<BigUint, AnalysisError> {
    let limit = choose2(n);
    if s >= limit {
        return Err(AnalysisError::SumOutOfRange { n, s, limit });
    }
    let target = limit - s - 1;
    // C(q-1, 2) <= target < C(q, 2) fixes q; r = C(q, 2) - target.
    let mut q = 2;
    while choose2(q) <= target {
        q += 1;
    }
    let r = choose2(q) - target;
    debug_assert!(1 <= r && r < q && q <= n);
    let falling: BigUint = (q + 1..=n).map(BigUint::from).product();
    Ok(BigUint::from(r) * falling)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().map_or(f64::INFINITY, f64::ln)
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Bounds checked on a finished system.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub g: BigUint,
    pub theta_g: u32,
    /// `min(n, theta(g))`.
    pub l_n_g: u32,
    pub log_n_g: f64,
    pub sum_s_minus_1: usize,
    /// `P(n, sum(s(k) - 1))`, or `n!` when every slot is filled.
    pub minimal_product_bound: BigUint,
    /// Every slot is filled, so the sum sits at its maximum `C(n,2)`.
    pub s_at_maximum: bool,
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `s(k) <= k`, `t(k) <= 2k - 3` (for `k >= 2`), `t(k) <= theta(g)`,
/// that at most `theta(g)` levels have `s(k) > 1`, and `g >= P(n, sum(s(k) - 1))`.
pub fn check_bounds(sys: &TransversalSystem) -> BoundReport {
    let n = sys.degree();
    let g = sys.order();
    let theta_g = theta(&g).expect("order is positive");
    let mut violations = Vec::new();
    let mut nontrivial_levels = 0;
    for level in sys.levels() {
        let (k, s, t) = (level.k(), level.s(), level.t());
        if s > k {
            violations.push(format!("s({k}) = {s} > {k}"));
        }
        if k >= 2 && t > 2 * k - 3 {
            violations.push(format!("t({k}) = {t} > 2k-3 = {}", 2 * k - 3));
        }
        if k == 1 && t > 0 {
            violations.push(format!("t(1) = {t} > 0"));
        }
        if t as u64 > theta_g as u64 {
            violations.push(format!("t({k}) = {t} > theta(g) = {theta_g}"));
        }
        if s > 1 {
            nontrivial_levels += 1;
        }
    }
    if nontrivial_levels > theta_g {
        violations.push(format!(
            "{nontrivial_levels} levels with s(k) > 1 exceed theta(g) = {theta_g}"
        ));
    }
    let sum = sys.filled_slots();
    let s_at_maximum = sum == choose2(n);
    let minimal_product_bound = if s_at_maximum {
        factorial(n)
    } else {
        minimal_product(n, sum).expect("sum below C(n,2)")
    };
    if g < minimal_product_bound {
        violations.push(format!("g = {g} < P(n, {sum}) = {minimal_product_bound}"));
    }
    let log_n_g = if n >= 2 {
        ln_big(&g) / (n as f64).ln()
    } else {
        0.0
    };
    BoundReport {
        n,
        g,
        theta_g,
        l_n_g: theta_g.min(n as u32),
        log_n_g,
        sum_s_minus_1: sum,
        minimal_product_bound,
        s_at_maximum,
        violations,
    }
}

/// One CSV row per built instance.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchRow {
    pub family: String,
    pub label: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub strategy: Strategy,
    pub mult_cost_units: u64,
    pub product_tests: u64,
    pub b_invocations: u64,
    pub slots_filled: u64,
    pub order: String,
    pub theta_g: u32,
    pub wall_ms: f64,
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), AnalysisError> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Measured cost growth across a chain of sizes.
#[derive(Clone, Debug)]
pub struct GrowthFit {
    pub label: String,
    /// Family size parameters as given (`h` for doubling families).
    pub sizes: Vec<usize>,
    /// Degrees of the built instances.
    pub degrees: Vec<usize>,
    /// Mean `mult_cost_units` per size, over seeds for random families.
    pub costs: Vec<f64>,
    /// `ln(cost[i+1] / cost[i]) / ln(n[i+1] / n[i])`; for a doubling chain
    /// this is `log2(cost(2n) / cost(n))`.
    pub pairwise_exponents: Vec<f64>,
    pub rows: Vec<BenchRow>,
}

/// Limits for [`growth_fit`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GrowthOptions {
    /// Per-instance ceiling on `mult_cost_units`.
    pub cost_ceiling: Option<u64>,
}

/// Builds one instance and reports its row.
pub fn measure(
    family: &FamilySpec,
    strategy: Strategy,
    options: GrowthOptions,
) -> Result<BenchRow, AnalysisError> {
    let gens = family.generate()?;
    let mut stats = BuildStats::new(strategy, gens.degree());
    stats.cost_ceiling = options.cost_ceiling;
    let start = Instant::now();
    let (sys, stats) = build_with_stats(&gens, stats)?;
    let wall_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let order = sys.order();
    Ok(BenchRow {
        family: family.name().to_string(),
        label: gens.label().to_string(),
        n: gens.degree(),
        seed: family.seed(),
        strategy,
        mult_cost_units: stats.mult_cost_units,
        product_tests: stats.product_tests,
        b_invocations: stats.b_invocations,
        slots_filled: stats.slots_filled,
        theta_g: theta(&order).expect("positive"),
        order: order.to_string(),
        wall_ms,
    })
}

/// Builds the family at each size (and each seed, for the random family),
/// then fits per-step growth exponents to the mean cost. Cells run in
/// parallel; results are keyed by `(size, seed)` so order is deterministic.
pub fn growth_fit(
    family: &FamilySpec,
    sizes: &[usize],
    strategy: Strategy,
    seeds: &[u64],
    options: GrowthOptions,
) -> Result<GrowthFit, AnalysisError> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AnalysisError::BadSizes);
    }
    let seeds: Vec<Option<u64>> = if family.is_random() {
        if seeds.is_empty() {
            match family.seed() {
                Some(seed) => vec![Some(seed)],
                None => return Err(AnalysisError::MissingSeeds(family.name().into())),
            }
        } else {
            seeds.iter().copied().map(Some).collect()
        }
    } else {
        vec![None]
    };
    let cells: Vec<(usize, Option<u64>)> = sizes
        .iter()
        .flat_map(|&size| seeds.iter().map(move |&seed| (size, seed)))
        .collect();
    let results: BTreeMap<(usize, Option<u64>), BenchRow> = cells
        .par_iter()
        .map(|&(size, seed)| {
            let mut spec = family.with_size(size);
            if let Some(seed) = seed {
                spec = spec.with_seed(seed);
            }
            measure(&spec, strategy, options).map(|row| ((size, seed), row))
        })
        .collect::<Result<_, _>>()?;

    let mut degrees = Vec::new();
    let mut costs = Vec::new();
    for &size in sizes {
        let rows: Vec<&BenchRow> = results
            .range((size, None)..=(size, Some(u64::MAX)))
            .map(|(_, r)| r)
            .collect();
        degrees.push(rows[0].n);
        costs.push(rows.iter().map(|r| r.mult_cost_units as f64).sum::<f64>() / rows.len() as f64);
    }
    let pairwise_exponents = (1..sizes.len())
        .map(|i| (costs[i] / costs[i - 1]).ln() / (degrees[i] as f64 / degrees[i - 1] as f64).ln())
        .collect();
    Ok(GrowthFit {
        label: format!("{} {strategy}", family.name()),
        sizes: sizes.to_vec(),
        degrees,
        costs,
        pairwise_exponents,
        rows: results.into_values().collect(),
    })
}
