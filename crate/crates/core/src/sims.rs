//! Incremental construction of a transversal system from generators.
//!
//! `A(k, p)` appends `p` to the generator list of level `k` and restores the
//! invariant that the representatives of levels `1..=k` describe exactly the
//! group generated by that list. It does so by submitting products
//! `sigma * tau` to `B(k, _)`, which files its argument into an empty slot,
//! confirms it by sifting, or hands the sifted remainder to `A(k - 1, _)`.
//!
//! Two orders for the `sigma * tau` loop are provided (see [`Strategy`]). The
//! mutual recursion runs on an explicit stack of loop frames, so depth is
//! bounded by heap rather than by the thread's stack.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::GeneratorSet;
use crate::perm::{right_divide_in_place, transversal_times_into, InverseRep, Perm, PermError};
use crate::transversal::TransversalSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimsError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("level {k} is out of range 2..={degree}")]
    LevelOutOfRange { k: usize, degree: usize },
    #[error("perm {perm} moves a point above level {k}")]
    NotInLevel { perm: String, k: usize },
    #[error("cost ceiling of {ceiling} units exceeded")]
    CostCeiling { ceiling: u64 },
}

/// How step A2 walks the `sigma * tau` products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// `B(k, sigma * p)` for each representative present when `A(k, p)`
    /// starts; a newly filled slot immediately submits itself times every
    /// generator of its level.
    #[default]
    Recursive,
    /// Per-column counts record how many generators each representative has
    /// been multiplied by; the loop runs until every count reaches `t(k)`.
    Iterative,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Recursive, Strategy::Iterative];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Recursive => "recursive",
            Strategy::Iterative => "iterative",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recursive" => Ok(Strategy::Recursive),
            "iterative" => Ok(Strategy::Iterative),
            other => Err(format!(
                "unknown strategy '{other}' (expected recursive or iterative)"
            )),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelCounters {
    pub a_invocations: u64,
    pub b_invocations: u64,
    pub product_tests: u64,
    pub mult_cost_units: u64,
    pub slots_filled: u64,
}

/// Counters gathered while building.
///
/// `mult_cost_units` charges `k` for every multiplication at level `k` whose
/// right-hand factor (or transversal factor) is not the identity: forming
/// `sigma * tau`, dividing by `sigma(k, j)` in step B3, and each division
/// during a sift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildStats {
    pub strategy: Strategy,
    pub b_invocations: u64,
    /// Products `sigma * tau` submitted to `B` from step A2 or from a slot
    /// cascade.
    pub product_tests: u64,
    pub mult_cost_units: u64,
    pub slots_filled: u64,
    /// Top-level sifts of input generators.
    pub membership_tests: u64,
    /// Indexed by `k - 1`.
    pub per_level: Vec<LevelCounters>,
    /// Abort with [`SimsError::CostCeiling`] once `mult_cost_units` passes this.
    pub cost_ceiling: Option<u64>,
}

impl BuildStats {
    pub fn new(strategy: Strategy, degree: usize) -> Self {
        BuildStats {
            strategy,
            b_invocations: 0,
            product_tests: 0,
            mult_cost_units: 0,
            slots_filled: 0,
            membership_tests: 0,
            per_level: vec![LevelCounters::default(); degree],
            cost_ceiling: None,
        }
    }

    pub fn with_cost_ceiling(mut self, ceiling: u64) -> Self {
        self.cost_ceiling = Some(ceiling);
        self
    }

    pub fn level(&self, k: usize) -> &LevelCounters {
        &self.per_level[k - 1]
    }

    fn charge(&mut self, k: usize, units: u64) {
        self.mult_cost_units += units;
        self.per_level[k - 1].mult_cost_units += units;
    }
}

#[derive(Clone, Copy, Debug)]
enum Frame {
    /// Iterative step A2 at level `k`, resuming at column index `i`.
    Iterative { k: usize, i: usize },
    /// Recursive step A2 at level `k`: `B(k, sigma_i * tau)` for column
    /// indices `i..end`, `tau` being generator `tau` of the level.
    Recursive {
        k: usize,
        i: usize,
        end: usize,
        tau: usize,
    },
    /// Recursive step B2: `B(k, sigma_col * tau_l)` for generators `l..t(k)`.
    Cascade { k: usize, col: usize, l: usize },
}

struct Engine<'a> {
    sys: &'a mut TransversalSystem,
    stats: &'a mut BuildStats,
    stack: Vec<Frame>,
    scratch: Vec<u32>,
}

impl<'a> Engine<'a> {
    fn new(sys: &'a mut TransversalSystem, stats: &'a mut BuildStats) -> Self {
        let n = sys.degree();
        if stats.per_level.len() < n {
            stats.per_level.resize(n, LevelCounters::default());
        }
        Engine {
            sys,
            stats,
            stack: Vec::new(),
            scratch: vec![0; n],
        }
    }

    fn strategy(&self) -> Strategy {
        self.stats.strategy
    }

    /// Step A1, then schedule step A2.
    fn begin_a(&mut self, k: usize, p: Arc<Perm>) {
        debug_assert!(k >= 2, "level 1 admits only the identity");
        debug_assert!(p.largest_moved_point() <= k);
        self.stats.per_level[k - 1].a_invocations += 1;
        self.sys.push_gen(k, p);
        let level = self.sys.level(k);
        let frame = match self.strategy() {
            Strategy::Iterative => Frame::Iterative { k, i: 0 },
            Strategy::Recursive => Frame::Recursive {
                k,
                i: 0,
                end: level.s(),
                tau: level.t() - 1,
            },
        };
        self.stack.push(frame);
    }

    /// `sigma_col * tau` at level `k`, sharing `tau` when `sigma` is the identity.
    fn product(&mut self, k: usize, col: usize, tau: usize) -> Arc<Perm> {
        let level = self.sys.level(k);
        let tau = &level.gens()[tau];
        match level.column_rep(col) {
            None => Arc::clone(tau),
            Some(q) => {
                let mut out = vec![0; tau.degree()];
                transversal_times_into(q.raw(), tau.raw(), &mut out);
                self.stats.charge(k, k as u64);
                Arc::new(Perm::from_raw(out))
            }
        }
    }

    fn submit(&mut self, k: usize, col: usize, tau: usize) {
        let product = self.product(k, col, tau);
        self.stats.product_tests += 1;
        self.stats.per_level[k - 1].product_tests += 1;
        self.algorithm_b(k, product);
    }

    /// Steps B1 to B4. B4 only performs A1 and schedules the A2 loop.
    fn algorithm_b(&mut self, k: usize, p: Arc<Perm>) {
        debug_assert!(k >= 2);
        self.stats.b_invocations += 1;
        self.stats.per_level[k - 1].b_invocations += 1;

        let j = p.image(k);
        if !self.sys.level(k).is_defined(j) {
            let rep = InverseRep::from_perm(&p, k).expect("products stay within their level");
            let col = self.sys.fill_slot(k, j, rep);
            self.stats.slots_filled += 1;
            self.stats.per_level[k - 1].slots_filled += 1;
            if self.strategy() == Strategy::Recursive {
                self.stack.push(Frame::Cascade { k, col, l: 0 });
            }
            return;
        }

        let residue = if j == k {
            p
        } else {
            let q = self.sys.level(k).slot(j).expect("defined column");
            let mut d = p.raw().to_vec();
            right_divide_in_place(&mut d, q.raw());
            self.stats.charge(k, k as u64);
            Arc::new(Perm::from_raw(d))
        };

        self.scratch.copy_from_slice(residue.raw());
        let reduction = self.sys.reduce(&mut self.scratch, k - 1);
        self.stats.charge(k, reduction.cost);
        if !reduction.member {
            self.begin_a(k - 1, residue);
        }
    }

    /// Drains the frame stack. On hitting the cost ceiling the system is left
    /// part-way through an update and must be discarded.
    fn run(&mut self) -> Result<(), SimsError> {
        while let Some(frame) = self.stack.pop() {
            if let Some(ceiling) = self.stats.cost_ceiling {
                if self.stats.mult_cost_units > ceiling {
                    return Err(SimsError::CostCeiling { ceiling });
                }
            }
            match frame {
                Frame::Iterative { k, mut i } => {
                    let level = self.sys.level(k);
                    let t = level.t();
                    while i < level.s() && level.counts()[i] >= t {
                        i += 1;
                    }
                    if i == level.s() {
                        continue;
                    }
                    let l = level.counts()[i];
                    // Nothing below level k reads c(k, _), so the count may
                    // advance before the product is tested.
                    self.sys.counts_mut(k)[i] = l + 1;
                    self.stack.push(Frame::Iterative { k, i });
                    self.submit(k, i, l);
                }
                Frame::Recursive { k, i, end, tau } => {
                    if i < end {
                        self.stack.push(Frame::Recursive {
                            k,
                            i: i + 1,
                            end,
                            tau,
                        });
                        self.submit(k, i, tau);
                    }
                }
                Frame::Cascade { k, col, l } => {
                    if l < self.sys.t(k) {
                        self.stack.push(Frame::Cascade { k, col, l: l + 1 });
                        self.submit(k, col, l);
                    }
                }
            }
        }
        Ok(())
    }
}

fn at_system_degree(sys: &TransversalSystem, p: &Perm) -> Result<Perm, SimsError> {
    if p.degree() == sys.degree() {
        Ok(p.clone())
    } else {
        Ok(p.with_degree(sys.degree())?)
    }
}

/// Sifts `p` and, if it is not yet a member, runs `A(n, p)`. Returns whether
/// the system changed.
///
/// Generators fixing the top points still enter at level `n`: the cascade
/// through `B(n, _)` is what places them in every `T(k)` above their largest
/// moved point.
pub fn insert_generator(
    sys: &mut TransversalSystem,
    p: &Perm,
    stats: &mut BuildStats,
) -> Result<bool, SimsError> {
    let p = at_system_degree(sys, p)?;
    let n = sys.degree();
    stats.membership_tests += 1;
    let mut work = p.raw().to_vec();
    let reduction = sys.reduce(&mut work, n);
    let mut engine = Engine::new(sys, stats);
    engine.stats.charge(n, reduction.cost);
    if reduction.member {
        return Ok(false);
    }
    engine.begin_a(n, Arc::new(p));
    engine.run()?;
    Ok(true)
}

/// Runs `A(k, p)` directly. Requires the system to be up to date through
/// level `k`, `p` to fix every point above `k`, and `p` not to be a member of
/// the group of levels `1..=k`.
pub fn algorithm_a(
    sys: &mut TransversalSystem,
    k: usize,
    p: &Perm,
    stats: &mut BuildStats,
) -> Result<(), SimsError> {
    check_level(sys, k, p)?;
    let p = at_system_degree(sys, p)?;
    debug_assert!(!sys.contains(&p), "A(k, p) requires p outside the group");
    let mut engine = Engine::new(sys, stats);
    engine.begin_a(k, Arc::new(p));
    engine.run()
}

/// Runs `B(k, p)` directly. Requires `k > 1`, the system up to date through
/// level `k - 1`, and `p` in the group generated by `T(k)`.
pub fn algorithm_b(
    sys: &mut TransversalSystem,
    k: usize,
    p: &Perm,
    stats: &mut BuildStats,
) -> Result<(), SimsError> {
    check_level(sys, k, p)?;
    let p = at_system_degree(sys, p)?;
    let mut engine = Engine::new(sys, stats);
    engine.algorithm_b(k, Arc::new(p));
    engine.run()
}

fn check_level(sys: &TransversalSystem, k: usize, p: &Perm) -> Result<(), SimsError> {
    if k < 2 || k > sys.degree() {
        return Err(SimsError::LevelOutOfRange {
            k,
            degree: sys.degree(),
        });
    }
    if p.largest_moved_point() > k {
        return Err(SimsError::NotInLevel {
            perm: p.to_string(),
            k,
        });
    }
    Ok(())
}

/// Builds a system from the generators in order.
pub fn build(
    gens: &GeneratorSet,
    strategy: Strategy,
) -> Result<(TransversalSystem, BuildStats), SimsError> {
    build_with_stats(gens, BuildStats::new(strategy, gens.degree()))
}

/// [`build`] starting from caller-supplied counters (for example with a cost
/// ceiling set).
pub fn build_with_stats(
    gens: &GeneratorSet,
    mut stats: BuildStats,
) -> Result<(TransversalSystem, BuildStats), SimsError> {
    let mut sys = TransversalSystem::new(gens.degree())?;
    for p in gens.perms() {
        insert_generator(&mut sys, p, &mut stats)?;
    }
    Ok((sys, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn perm(text: &str, degree: usize) -> Perm {
        parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn identity_generator_is_a_no_op() {
        let mut sys = TransversalSystem::new(6).unwrap();
        let mut stats = BuildStats::new(Strategy::Recursive, 6);
        assert!(!insert_generator(&mut sys, &Perm::identity(6), &mut stats).unwrap());
        assert_eq!(stats.b_invocations, 0);
        assert_eq!(stats.membership_tests, 1);
        assert_eq!(sys.filled_slots(), 0);
    }

    #[test]
    fn single_transposition() {
        for strategy in Strategy::ALL {
            let mut sys = TransversalSystem::new(4).unwrap();
            let mut stats = BuildStats::new(strategy, 4);
            insert_generator(&mut sys, &perm("[2,3]", 4), &mut stats).unwrap();
            assert_eq!(sys.s(3), 2);
            assert_eq!(sys.order(), 2u32.into());
            assert_eq!(sys.t(4), 1);
            assert_eq!(sys.t(3), 1);
            assert_eq!(sys.t(2), 0);
            // both generator lists share one allocation
            assert!(Arc::ptr_eq(
                &sys.level(4).gens()[0],
                &sys.level(3).gens()[0]
            ));
            assert_eq!(sys.strong_generators(), vec![perm("[2,3]", 4)]);
            sys.check_invariants().unwrap();
            assert_eq!(stats.slots_filled, 1);
        }
    }

    #[test]
    fn duplicate_generator_is_skipped() {
        let mut sys = TransversalSystem::new(5).unwrap();
        let mut stats = BuildStats::new(Strategy::Iterative, 5);
        let p = perm("[1,2,3,4,5]", 5);
        assert!(insert_generator(&mut sys, &p, &mut stats).unwrap());
        let before = stats.clone();
        assert!(!insert_generator(&mut sys, &p, &mut stats).unwrap());
        assert_eq!(stats.b_invocations, before.b_invocations);
        assert_eq!(stats.membership_tests, 2);
    }

    #[test]
    fn b_fills_an_empty_slot() {
        let mut sys = TransversalSystem::new(4).unwrap();
        let mut stats = BuildStats::new(Strategy::Iterative, 4);
        let p = perm("[1,4]", 4);
        algorithm_b(&mut sys, 4, &p, &mut stats).unwrap();
        assert_eq!(sys.transversal(4, 1).unwrap(), p);
        assert_eq!(stats.slots_filled, 1);
        assert_eq!(stats.b_invocations, 1);
    }

    #[test]
    fn b_touches_only_lower_levels() {
        // C6 at level 6, then tau appended to T(6) without running A2: the
        // system is up to date of order 5 but not 6, as inside step A2.
        let n = 6;
        let mut sys = TransversalSystem::new(n).unwrap();
        let mut stats = BuildStats::new(Strategy::Iterative, n);
        insert_generator(&mut sys, &perm("[1,2,3,4,5,6]", n), &mut stats).unwrap();
        let tau = perm("[5,6]", n);
        sys.push_gen(n, Arc::new(tau.clone()));
        let before = sys.level(n).clone();
        for j in 1..=n {
            let sigma = sys.transversal(n, j).unwrap_or_else(|| Perm::identity(n));
            let p = sigma.compose(&tau).unwrap();
            algorithm_b(&mut sys, n, &p, &mut stats).unwrap();
            let after = sys.level(n);
            assert_eq!(after.gens().len(), before.gens().len());
            assert_eq!(after.counts(), before.counts());
            assert_eq!(after.columns(), before.columns());
        }
        assert!(sys.t(5) > 0);
        sys.check_invariants().unwrap();
    }

    #[test]
    fn preconditions_are_reported() {
        let mut sys = TransversalSystem::new(4).unwrap();
        let mut stats = BuildStats::new(Strategy::Recursive, 4);
        let p = perm("[1,2]", 4);
        assert!(matches!(
            algorithm_b(&mut sys, 1, &p, &mut stats),
            Err(SimsError::LevelOutOfRange { k: 1, .. })
        ));
        assert!(matches!(
            algorithm_a(&mut sys, 3, &perm("[1,4]", 4), &mut stats),
            Err(SimsError::NotInLevel { k: 3, .. })
        ));
        assert!(insert_generator(&mut sys, &perm("[1,5]", 5), &mut stats).is_err());
    }

    #[test]
    fn strategy_parses() {
        assert_eq!(
            "iterative".parse::<Strategy>().unwrap(),
            Strategy::Iterative
        );
        assert_eq!(Strategy::Recursive.to_string(), "recursive");
        assert!("sideways".parse::<Strategy>().is_err());
    }
}
