//! Permutations of `{1..n}` and the array-level products used by the sifting loop.
//!
//! Points are 1-indexed at the API boundary. Products are read left to right:
//! `a.compose(&b)` applies `a` first, then `b`.

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

mod cycles;
mod inverse;

pub use cycles::{parse_cycles, ParseCyclesError, ParseErrorKind};
pub use inverse::{mult_by_inverse_transversal, mult_transversal_by_perm, InverseRep};
pub(crate) use inverse::{right_divide_in_place, transversal_times_into};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("image array is not a permutation of 1..{degree}")]
    NotBijective { degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} is not a positive integer")]
    InvalidPoint { point: usize },
    #[error("perm moves point {point}, beyond degree {degree}")]
    DegreeExceeded { point: usize, degree: usize },
}

/// A bijection of `{1..degree}`; points above the degree are fixed.
///
/// Equality and hashing ignore trailing fixed points, so perms of different
/// degree compare as if the smaller one were padded.
#[derive(Clone)]
pub struct Perm {
    // 0-based images: images[i] is the image of point i+1, minus one.
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a perm from 1-indexed images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        let mut raw = Vec::with_capacity(degree);
        for &x in images {
            if x == 0 || x > degree || seen[x - 1] {
                return Err(PermError::NotBijective { degree });
            }
            seen[x - 1] = true;
            raw.push((x - 1) as u32);
        }
        Ok(Perm { images: raw })
    }

    /// Caller guarantees `raw` is a 0-based permutation of `0..raw.len()`.
    pub(crate) fn from_raw(raw: Vec<u32>) -> Self {
        debug_assert!(is_permutation(&raw));
        Perm { images: raw }
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-indexed image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn apply(&self, point: usize) -> Result<usize, PermError> {
        if point == 0 {
            return Err(PermError::InvalidPoint { point });
        }
        Ok(self.image(point))
    }

    /// Image of a 1-indexed point; points beyond the degree are fixed.
    #[inline]
    pub(crate) fn image(&self, point: usize) -> usize {
        match self.images.get(point - 1) {
            Some(&x) => x as usize + 1,
            None => point,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.largest_moved_point() == 0
    }

    /// Largest point not fixed, or 0 for the identity. A perm with largest
    /// moved point `k` lies in the subgroup fixing every point above `k`.
    pub fn largest_moved_point(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .rev()
            .find(|&(i, &x)| i as u32 != x)
            .map_or(0, |(i, _)| i + 1)
    }

    /// Same perm with a different degree. Shrinking requires every dropped
    /// point to be fixed.
    pub fn with_degree(&self, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let lmp = self.largest_moved_point();
        if lmp > degree {
            return Err(PermError::DegreeExceeded { point: lmp, degree });
        }
        let mut images = self.images.clone();
        images.truncate(degree);
        images.extend(images.len() as u32..degree as u32);
        Ok(Perm { images })
    }

    /// Left-to-right product: the result takes `i` to `other(self(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Ok(Perm { images })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `r`-fold product; negative exponents go through the inverse.
    pub fn power(&self, r: i64) -> Perm {
        let base = if r < 0 { self.inverse() } else { self.clone() };
        let mut exp = r.unsigned_abs();
        let mut result = Perm::identity(self.degree());
        let mut square = base;
        // Powers of one perm commute, so square-and-multiply is order-safe.
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.compose(&square).expect("same degree");
            }
            square = square.compose(&square).expect("same degree");
            exp >>= 1;
        }
        result
    }

    /// Disjoint cycles of length at least 2, each starting at its smallest
    /// point, ordered by smallest point. Points are 1-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Canonical cycle notation; the identity formats as `()`.
    pub fn format_cycles(&self) -> String {
        self.to_string()
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }
}

pub(crate) fn is_permutation(raw: &[u32]) -> bool {
    let mut seen = vec![false; raw.len()];
    raw.iter().all(|&x| {
        let x = x as usize;
        x < seen.len() && !std::mem::replace(&mut seen[x], true)
    })
}

impl PartialEq for Perm {
    fn eq(&self, other: &Self) -> bool {
        let (short, long) = if self.degree() <= other.degree() {
            (&self.images, &other.images)
        } else {
            (&other.images, &self.images)
        };
        long[..short.len()] == short[..]
            && long[short.len()..]
                .iter()
                .enumerate()
                .all(|(i, &x)| x as usize == i + short.len())
    }
}

impl Eq for Perm {}

impl Hash for Perm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images[..self.largest_moved_point()].hash(state);
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("[")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({}; degree {})", self, self.degree())
    }
}
