//! Generator families with known behaviour, and a brute-force closure used as
//! an independent oracle for small degrees.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{parse_cycles, Perm, PermError};

/// Default element cap for [`brute_force_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: parameter {param} = {value} is out of range ({expected})")]
    BadParameter {
        family: &'static str,
        param: &'static str,
        value: usize,
        expected: &'static str,
    },
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("unknown family spec '{0}'")]
    UnknownFamily(String),
    #[error("malformed family spec '{spec}': {reason}")]
    Malformed { spec: String, reason: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Ordered generators with a declared degree. Order matters to the build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    perms: Vec<Perm>,
    label: String,
}

impl GeneratorSet {
    /// Every perm is brought to `degree`; one moving a point above it is rejected.
    pub fn new(
        degree: usize,
        perms: impl IntoIterator<Item = Perm>,
        label: impl Into<String>,
    ) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let perms = perms
            .into_iter()
            .map(|p| {
                if p.degree() == degree {
                    Ok(p)
                } else {
                    p.with_degree(degree)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(GeneratorSet {
            degree,
            perms,
            label: label.into(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Same generators in reverse order.
    pub fn reversed(&self) -> GeneratorSet {
        GeneratorSet {
            degree: self.degree,
            perms: self.perms.iter().rev().cloned().collect(),
            label: format!("{} (reversed)", self.label),
        }
    }
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Perm {
    let points: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<usize> = (1..=degree).collect();
    for (i, &x) in points.iter().enumerate() {
        images[x - 1] = points[(i + 1) % points.len()];
    }
    Perm::from_images(&images).expect("distinct points")
}

/// The single-perm family of degree `2^h - 2` with cycles of lengths
/// `2^(h-1), ..., 2`.
///
/// Cycle `i` (length `2^(h-i)`) takes the next `2^(h-i) - 1` unused points
/// from 1 upward and is closed by one of the top points `n-h+2..=n`. Without
/// relabeling the longest cycle closes with `n`; relabeled, the assignment of
/// top points is reversed so the shortest cycle closes with `n`.
pub fn doubling_cycle_perm(h: usize, relabeled: bool) -> Result<GeneratorSet, FamilyError> {
    if !(2..=20).contains(&h) {
        return Err(FamilyError::BadParameter {
            family: "doubling",
            param: "h",
            value: h,
            expected: "2 <= h <= 20",
        });
    }
    let n = (1usize << h) - 2;
    let top_base = n - h + 2;
    let mut images: Vec<usize> = (1..=n).collect();
    let mut next = 1;
    for i in 1..h {
        let len = 1usize << (h - i);
        let closer = if relabeled {
            top_base + (i - 1)
        } else {
            n - (i - 1)
        };
        let mut points: Vec<usize> = (next..next + len - 1).collect();
        next += len - 1;
        points.push(closer);
        for (x, &p) in points.iter().enumerate() {
            images[p - 1] = points[(x + 1) % points.len()];
        }
    }
    let name = if relabeled {
        "doubling-relabeled"
    } else {
        "doubling"
    };
    let p = Perm::from_images(&images)?;
    Ok(GeneratorSet::new(n, [p], format!("{name}:h={h}"))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StaircaseKind {
    /// `pi_k = [k, k-1]`.
    AdjacentTransposition,
    /// `pi_k = [k, k-1, ..., 1]`.
    DescendingCycle,
    /// `pi_k` uniform among the `(k-1)!` perms fixing points above `k` and
    /// taking `k` to `k-1`.
    Random(u64),
}

/// Generators `pi_2, ..., pi_n` in increasing order of `k`; each `pi_k` fixes
/// every point above `k` and takes `k` to `k - 1`.
pub fn staircase_family(n: usize, kind: StaircaseKind) -> Result<GeneratorSet, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadParameter {
            family: "stairs",
            param: "n",
            value: n,
            expected: "n >= 2",
        });
    }
    let (perms, label): (Vec<Perm>, String) = match kind {
        StaircaseKind::AdjacentTransposition => (
            (2..=n).map(|k| cycle([k, k - 1], n)).collect(),
            format!("stairs-adjacent:n={n}"),
        ),
        StaircaseKind::DescendingCycle => (
            (2..=n).map(|k| cycle((1..=k).rev(), n)).collect(),
            format!("stairs-cycle:n={n}"),
        ),
        StaircaseKind::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let perms = (2..=n).map(|k| random_stair(k, n, &mut rng)).collect();
            (perms, format!("stairs-random:n={n},seed={seed}"))
        }
    };
    Ok(GeneratorSet::new(n, perms, label)?)
}

/// Perms of degree `n` fixing points above `k` and taking `k` to `k - 1` are
/// in bijection with bijections `{1..k-1} -> {1..k} \ {k-1}`; a uniform
/// shuffle of the targets picks one uniformly.
fn random_stair(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut targets: Vec<usize> = (1..=k).filter(|&x| x != k - 1).collect();
    targets.shuffle(rng);
    let mut images: Vec<usize> = (1..=n).collect();
    images[..k - 1].copy_from_slice(&targets);
    images[k - 1] = k - 1;
    Perm::from_images(&images).expect("bijection by construction")
}

/// `sigma_n = [1, 2, ..., n]` followed by `tau_n = [n-1, n]`.
pub fn two_generator_family(n: usize) -> Result<GeneratorSet, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadParameter {
            family: "two-gen",
            param: "n",
            value: n,
            expected: "n >= 2",
        });
    }
    Ok(GeneratorSet::new(
        n,
        [cycle(1..=n, n), cycle([n - 1, n], n)],
        format!("two-gen:n={n}"),
    )?)
}

/// `[n-1,n]`, `[n-3,n-2][n-1,n]`, ..., `[1,2]...[n-1,n]`; the group is
/// elementary abelian of order `2^(n/2)`.
pub fn transposition_products_family(n: usize) -> Result<GeneratorSet, FamilyError> {
    if n < 2 || n % 2 == 1 {
        return Err(FamilyError::BadParameter {
            family: "transposition-products",
            param: "n",
            value: n,
            expected: "even n >= 2",
        });
    }
    let perms = (1..=n / 2).map(|i| {
        let mut images: Vec<usize> = (1..=n).collect();
        for pair in 0..i {
            let hi = n - 2 * pair;
            images.swap(hi - 1, hi - 2);
        }
        Perm::from_images(&images).expect("disjoint transpositions")
    });
    Ok(GeneratorSet::new(
        n,
        perms,
        format!("transposition-products:n={n}"),
    )?)
}

/// The classic degree-7 pair: `[1,2,4,5,7,3,6]` and `[2,4][3,5]`.
pub fn sims_example() -> GeneratorSet {
    GeneratorSet::new(
        7,
        [
            parse_cycles("[1,2,4,5,7,3,6]", 7).expect("valid"),
            parse_cycles("[2,4][3,5]", 7).expect("valid"),
        ],
        "sims-example",
    )
    .expect("valid")
}

/// Every element of the group generated by `gens`, by breadth-first search
/// from the identity under right multiplication by generators.
pub fn brute_force_closure(gens: &GeneratorSet, cap: usize) -> Result<HashSet<Perm>, FamilyError> {
    let id = Perm::identity(gens.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens.perms() {
            let y = x.compose(g)?;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(FamilyError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// A parsed `--family` value such as `stairs-random:n=16,seed=1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Doubling {
        h: Option<usize>,
        relabeled: bool,
    },
    Stairs {
        n: Option<usize>,
        kind: StairsKind,
        seed: Option<u64>,
    },
    TwoGen {
        n: Option<usize>,
    },
    TranspositionProducts {
        n: Option<usize>,
    },
    SimsExample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StairsKind {
    Adjacent,
    Cycle,
    Random,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Doubling {
                relabeled: false, ..
            } => "doubling",
            FamilySpec::Doubling {
                relabeled: true, ..
            } => "doubling-relabeled",
            FamilySpec::Stairs {
                kind: StairsKind::Adjacent,
                ..
            } => "stairs-adjacent",
            FamilySpec::Stairs {
                kind: StairsKind::Cycle,
                ..
            } => "stairs-cycle",
            FamilySpec::Stairs {
                kind: StairsKind::Random,
                ..
            } => "stairs-random",
            FamilySpec::TwoGen { .. } => "two-gen",
            FamilySpec::TranspositionProducts { .. } => "transposition-products",
            FamilySpec::SimsExample => "sims-example",
        }
    }

    /// The size parameter: `h` for the doubling families, `n` otherwise.
    pub fn size(&self) -> Option<usize> {
        match *self {
            FamilySpec::Doubling { h, .. } => h,
            FamilySpec::Stairs { n, .. }
            | FamilySpec::TwoGen { n }
            | FamilySpec::TranspositionProducts { n } => n,
            FamilySpec::SimsExample => Some(7),
        }
    }

    pub fn with_size(mut self, size: usize) -> Self {
        match &mut self {
            FamilySpec::Doubling { h, .. } => *h = Some(size),
            FamilySpec::Stairs { n, .. }
            | FamilySpec::TwoGen { n }
            | FamilySpec::TranspositionProducts { n } => *n = Some(size),
            FamilySpec::SimsExample => {}
        }
        self
    }

    pub fn is_random(&self) -> bool {
        matches!(
            self,
            FamilySpec::Stairs {
                kind: StairsKind::Random,
                ..
            }
        )
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            FamilySpec::Stairs { seed, .. } => seed,
            _ => None,
        }
    }

    pub fn with_seed(mut self, new_seed: u64) -> Self {
        if let FamilySpec::Stairs { seed, .. } = &mut self {
            *seed = Some(new_seed);
        }
        self
    }

    pub fn generate(&self) -> Result<GeneratorSet, FamilyError> {
        let missing = |param| FamilyError::Malformed {
            spec: self.name().to_string(),
            reason: format!("missing parameter {param}"),
        };
        match *self {
            FamilySpec::Doubling { h, relabeled } => {
                doubling_cycle_perm(h.ok_or_else(|| missing("h"))?, relabeled)
            }
            FamilySpec::Stairs { n, kind, seed } => {
                let n = n.ok_or_else(|| missing("n"))?;
                let kind = match kind {
                    StairsKind::Adjacent => StaircaseKind::AdjacentTransposition,
                    StairsKind::Cycle => StaircaseKind::DescendingCycle,
                    StairsKind::Random => {
                        StaircaseKind::Random(seed.ok_or_else(|| missing("seed"))?)
                    }
                };
                staircase_family(n, kind)
            }
            FamilySpec::TwoGen { n } => two_generator_family(n.ok_or_else(|| missing("n"))?),
            FamilySpec::TranspositionProducts { n } => {
                transposition_products_family(n.ok_or_else(|| missing("n"))?)
            }
            FamilySpec::SimsExample => Ok(sims_example()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let key = match self {
            FamilySpec::Doubling { .. } => "h",
            FamilySpec::SimsExample => return Ok(()),
            _ => "n",
        };
        let mut sep = ':';
        if let Some(size) = self.size() {
            write!(f, "{sep}{key}={size}")?;
            sep = ',';
        }
        if let Some(seed) = self.seed() {
            write!(f, "{sep}seed={seed}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let spec = spec.trim();
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        let malformed = |reason: String| FamilyError::Malformed {
            spec: spec.to_string(),
            reason,
        };
        let mut family = match name {
            "doubling" => FamilySpec::Doubling {
                h: None,
                relabeled: false,
            },
            "doubling-relabeled" => FamilySpec::Doubling {
                h: None,
                relabeled: true,
            },
            "stairs-adjacent" => FamilySpec::Stairs {
                n: None,
                kind: StairsKind::Adjacent,
                seed: None,
            },
            "stairs-cycle" => FamilySpec::Stairs {
                n: None,
                kind: StairsKind::Cycle,
                seed: None,
            },
            "stairs-random" => FamilySpec::Stairs {
                n: None,
                kind: StairsKind::Random,
                seed: None,
            },
            "two-gen" => FamilySpec::TwoGen { n: None },
            "transposition-products" => FamilySpec::TranspositionProducts { n: None },
            "sims-example" => FamilySpec::SimsExample,
            _ => return Err(FamilyError::UnknownFamily(spec.to_string())),
        };
        for param in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = param
                .split_once('=')
                .ok_or_else(|| malformed(format!("expected key=value, found '{param}'")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| malformed(format!("'{value}' is not a non-negative integer")))?;
            match (key.trim(), &family) {
                ("h", FamilySpec::Doubling { .. }) => family = family.with_size(value as usize),
                (
                    "n",
                    FamilySpec::Stairs { .. }
                    | FamilySpec::TwoGen { .. }
                    | FamilySpec::TranspositionProducts { .. },
                ) => family = family.with_size(value as usize),
                (
                    "seed",
                    FamilySpec::Stairs {
                        kind: StairsKind::Random,
                        ..
                    },
                ) => family = family.with_seed(value),
                (key, _) => {
                    return Err(malformed(format!(
                        "parameter '{key}' does not apply to {name}"
                    )))
                }
            }
        }
        Ok(family)
    }
}
