//! Transversal systems: per-level coset representatives, generator lists, and
//! the membership test that sifts a perm down through the levels.
//!
//! Level `k` holds representatives `sigma(k, j)` for `j < k`, each fixing every
//! point above `k` and taking `k` to `j`. The representative for `j = k` is the
//! identity and is never stored. A perm is a member of the group described by
//! levels `1..=k` iff repeatedly dividing by the representative selected by the
//! image of the current top point reaches the identity.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::perm::{right_divide_in_place, InverseRep, Perm, PermError};

/// One level of the system.
#[derive(Clone, Debug)]
pub struct Level {
    k: usize,
    // slots[j - 1] for 1 <= j < k; None is an empty slot.
    slots: Vec<Option<InverseRep>>,
    // j(k, 1..=s(k)); columns[0] == k.
    columns: Vec<usize>,
    // c(k, i), parallel to `columns`.
    counts: Vec<usize>,
    gens: Vec<Arc<Perm>>,
}

impl Level {
    fn new(k: usize) -> Self {
        Level {
            k,
            slots: vec![None; k - 1],
            columns: vec![k],
            counts: vec![0],
            gens: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of representatives, counting the implicit identity.
    pub fn s(&self) -> usize {
        self.columns.len()
    }

    pub fn t(&self) -> usize {
        self.gens.len()
    }

    /// Defined columns in creation order, starting with `k` itself.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn gens(&self) -> &[Arc<Perm>] {
        &self.gens
    }

    /// Stored representative for column `j < k`; `None` for an empty slot and
    /// for `j = k`, whose representative is the implicit identity.
    pub fn slot(&self, j: usize) -> Option<&InverseRep> {
        if j == 0 || j >= self.k {
            return None;
        }
        self.slots[j - 1].as_ref()
    }

    /// Representative for the `i`-th defined column (0-based), `None` for the
    /// identity column.
    pub(crate) fn column_rep(&self, i: usize) -> Option<&InverseRep> {
        match self.columns[i] {
            j if j == self.k => None,
            j => self.slots[j - 1].as_ref(),
        }
    }

    pub(crate) fn is_defined(&self, j: usize) -> bool {
        j == self.k || self.slots[j - 1].is_some()
    }
}

/// Result of sifting a perm through a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipTrace {
    pub member: bool,
    /// `(k, j)` for each level where a stored representative was divided out.
    pub path: Vec<(usize, usize)>,
    /// Identity when `member`, otherwise the remainder at the failing level.
    pub residue: Perm,
    /// `(k, j)` of the empty slot that stopped the sift.
    pub failure: Option<(usize, usize)>,
    /// Sum of `k` over the non-identity multiplications performed.
    pub cost_units: u64,
}

impl MembershipTrace {
    pub fn multiplications(&self) -> usize {
        self.path.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStat {
    pub k: usize,
    pub s: usize,
    pub t: usize,
}

/// Outcome of the allocation-free sift used inside the update algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Reduction {
    pub member: bool,
    pub cost: u64,
}

#[derive(Clone, Debug)]
pub struct TransversalSystem {
    degree: usize,
    levels: Vec<Level>,
    // Every perm ever appended to some T(k), once per allocation, in order.
    gen_log: Vec<Arc<Perm>>,
}

impl TransversalSystem {
    /// Empty system of degree `n`: every slot empty, every generator list
    /// empty. It describes the trivial group and is up to date.
    pub fn new(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(TransversalSystem {
            degree: n,
            levels: (1..=n).map(Level::new).collect(),
            gen_log: Vec::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    pub(crate) fn level_mut(&mut self, k: usize) -> &mut Level {
        &mut self.levels[k - 1]
    }

    pub fn levels(&self) -> impl Iterator<Item = &Level> {
        self.levels.iter()
    }

    pub fn s(&self, k: usize) -> usize {
        self.level(k).s()
    }

    pub fn t(&self, k: usize) -> usize {
        self.level(k).t()
    }

    /// Direct form of `sigma(k, j)` at the system degree; identity for `j = k`.
    pub fn transversal(&self, k: usize, j: usize) -> Option<Perm> {
        if j == k {
            return Some(Perm::identity(self.degree));
        }
        self.level(k)
            .slot(j)
            .map(|q| q.to_perm_with_degree(self.degree))
    }

    /// Every stored (non-identity) representative, ascending `k` then `j`.
    pub fn stored_slots(&self) -> impl Iterator<Item = (usize, usize, &InverseRep)> {
        self.levels.iter().flat_map(|level| {
            level
                .slots
                .iter()
                .enumerate()
                .filter_map(move |(j, s)| s.as_ref().map(|q| (level.k, j + 1, q)))
        })
    }

    /// Number of stored representatives, i.e. the sum of `s(k) - 1`.
    pub fn filled_slots(&self) -> usize {
        self.levels.iter().map(|l| l.s() - 1).sum()
    }

    /// Group order, the product of the `s(k)`.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.s()))
    }

    /// Union of all generator lists without duplicates, in first-insertion order.
    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut seen = HashSet::new();
        self.gen_log
            .iter()
            .filter(|p| seen.insert((***p).clone()))
            .map(|p| (**p).clone())
            .collect()
    }

    pub fn level_stats(&self) -> Vec<LevelStat> {
        self.levels
            .iter()
            .map(|l| LevelStat {
                k: l.k,
                s: l.s(),
                t: l.t(),
            })
            .collect()
    }

    /// Sifts `p` and reports the path taken. The system is not modified.
    pub fn sift(&self, p: &Perm) -> Result<MembershipTrace, PermError> {
        let mut work = p.with_degree(self.degree)?.raw().to_vec();
        let mut path = Vec::new();
        let mut cost = 0;
        let top = p.largest_moved_point();
        for k in (2..=top).rev() {
            let j = work[k - 1] as usize + 1;
            if j == k {
                continue;
            }
            match self.level(k).slot(j) {
                Some(q) => {
                    right_divide_in_place(&mut work, q.raw());
                    path.push((k, j));
                    cost += k as u64;
                }
                None => {
                    return Ok(MembershipTrace {
                        member: false,
                        path,
                        residue: Perm::from_raw(work),
                        failure: Some((k, j)),
                        cost_units: cost,
                    });
                }
            }
        }
        Ok(MembershipTrace {
            member: true,
            path,
            residue: Perm::from_raw(work),
            failure: None,
            cost_units: cost,
        })
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.sift(p).map(|t| t.member).unwrap_or(false)
    }

    /// Membership of `work` (a perm fixing every point above `top`) in the
    /// group of levels `1..=top`. `work` is consumed as scratch space.
    pub(crate) fn reduce(&self, work: &mut [u32], top: usize) -> Reduction {
        let mut cost = 0;
        for k in (2..=top).rev() {
            let j = work[k - 1] as usize + 1;
            if j == k {
                continue;
            }
            match self.levels[k - 1].slots[j - 1].as_ref() {
                Some(q) => {
                    right_divide_in_place(work, q.raw());
                    cost += k as u64;
                }
                None => {
                    return Reduction {
                        member: false,
                        cost,
                    }
                }
            }
        }
        Reduction { member: true, cost }
    }

    /// Stores `sigma(k, j)` and opens a new column with count zero. Returns the
    /// new column index.
    pub(crate) fn fill_slot(&mut self, k: usize, j: usize, rep: InverseRep) -> usize {
        let level = self.level_mut(k);
        debug_assert!(j < k && level.slots[j - 1].is_none());
        level.slots[j - 1] = Some(rep);
        level.columns.push(j);
        level.counts.push(0);
        level.columns.len() - 1
    }

    pub(crate) fn push_gen(&mut self, k: usize, p: Arc<Perm>) {
        if !self.gen_log.iter().any(|q| Arc::ptr_eq(q, &p)) {
            self.gen_log.push(Arc::clone(&p));
        }
        self.level_mut(k).gens.push(p);
    }

    pub(crate) fn counts_mut(&mut self, k: usize) -> &mut Vec<usize> {
        &mut self.level_mut(k).counts
    }

    /// Checks the structural invariants: stored representatives fix points
    /// above their level and take `k` to `j`, columns match the stored slots,
    /// `s(k) <= k`, `t(k) <= 2k - 3` for `k >= 2`, `c(k, i) <= t(k)`.
    pub fn check_invariants(&self) -> Result<(), String> {
        for level in &self.levels {
            let k = level.k;
            for (j, slot) in level.slots.iter().enumerate() {
                let j = j + 1;
                if let Some(q) = slot {
                    let p = q.to_perm();
                    if p.degree() != k || p.image(k) != j {
                        return Err(format!("sigma({k},{j}) does not take {k} to {j}"));
                    }
                }
            }
            if level.columns.first() != Some(&k) {
                return Err(format!("level {k}: first column is not {k}"));
            }
            let mut cols: Vec<usize> = level.columns.clone();
            cols.sort_unstable();
            cols.dedup();
            let defined: Vec<usize> = (1..=k).filter(|&j| level.is_defined(j)).collect();
            if cols.len() != level.columns.len() || cols != defined {
                return Err(format!("level {k}: column list does not match slots"));
            }
            if level.s() > k {
                return Err(format!("level {k}: s = {} exceeds k", level.s()));
            }
            if k >= 2 && level.t() > 2 * k - 3 {
                return Err(format!("level {k}: t = {} exceeds 2k-3", level.t()));
            }
            if k == 1 && level.t() > 0 {
                return Err("level 1 has generators".into());
            }
            if level.counts.len() != level.columns.len()
                || level.counts.iter().any(|&c| c > level.t())
            {
                return Err(format!("level {k}: counts out of range"));
            }
            for g in &level.gens {
                if g.largest_moved_point() > k {
                    return Err(format!("level {k}: generator {g} moves a point above {k}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    #[test]
    fn new_system_is_trivial() {
        let sys = TransversalSystem::new(14).unwrap();
        assert!(sys.level_stats().iter().all(|l| l.s == 1 && l.t == 0));
        assert_eq!(sys.order(), BigUint::from(1u32));
        assert!(sys.strong_generators().is_empty());
        assert_eq!(sys.level(5).columns(), &[5]);
        sys.check_invariants().unwrap();
        assert_eq!(
            TransversalSystem::new(1).unwrap().order(),
            BigUint::from(1u32)
        );
        assert_eq!(
            TransversalSystem::new(0).unwrap_err(),
            PermError::ZeroDegree
        );
    }

    #[test]
    fn sift_in_empty_system() {
        let sys = TransversalSystem::new(5).unwrap();
        let id = sys.sift(&Perm::identity(5)).unwrap();
        assert!(id.member);
        assert!(id.path.is_empty());
        assert_eq!(id.cost_units, 0);

        let t = sys.sift(&parse_cycles("[1,2]", 5).unwrap()).unwrap();
        assert!(!t.member);
        assert_eq!(t.failure, Some((2, 1)));
        assert_eq!(t.residue, parse_cycles("[1,2]", 5).unwrap());
    }

    #[test]
    fn sift_rejects_perms_beyond_degree() {
        let sys = TransversalSystem::new(3).unwrap();
        assert!(sys.sift(&parse_cycles("[3,4]", 4).unwrap()).is_err());
        // trailing fixed points are fine
        assert!(sys.sift(&Perm::identity(9)).unwrap().member);
    }

    #[test]
    fn hand_filled_slot_is_used_by_sift() {
        let mut sys = TransversalSystem::new(3).unwrap();
        let c = parse_cycles("[1,2,3]", 3).unwrap();
        // sigma(3,1) must take 3 to 1
        sys.fill_slot(3, 1, InverseRep::from_perm(&c, 3).unwrap());
        let trace = sys.sift(&c).unwrap();
        assert!(trace.member);
        assert_eq!(trace.path, vec![(3, 1)]);
        assert_eq!(trace.cost_units, 3);
        assert_eq!(sys.s(3), 2);
        assert_eq!(sys.order(), BigUint::from(2u32));
        assert_eq!(sys.transversal(3, 1).unwrap(), c);
        assert_eq!(sys.transversal(3, 3).unwrap(), Perm::identity(3));
        assert!(sys.transversal(3, 2).is_none());
        sys.check_invariants().unwrap();

        let mut work = c.power(2).raw().to_vec();
        // c^2 takes 3 to 2, slot empty
        assert!(!sys.reduce(&mut work, 3).member);
    }
}
