use super::{is_permutation, Perm, PermError};

/// A perm of degree `k` stored by inverse images: the perm takes `q[i]` to `i`.
///
/// Transversal elements are kept in this form so that both products the
/// sifting loop needs are single passes over `k` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseRep {
    // 0-based: the perm takes preimages[i] to i.
    preimages: Vec<u32>,
}

impl InverseRep {
    /// Inverse-image form of `p` restricted to `{1..degree}`; `p` must fix
    /// every point above `degree`.
    pub fn from_perm(p: &Perm, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let lmp = p.largest_moved_point();
        if lmp > degree {
            return Err(PermError::DegreeExceeded { point: lmp, degree });
        }
        let mut preimages: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in p.raw().iter().take(degree).enumerate() {
            preimages[x as usize] = i as u32;
        }
        Ok(InverseRep { preimages })
    }

    /// Builds from 1-indexed preimages: the represented perm takes `q[i - 1]` to `i`.
    pub fn from_preimages(q: &[usize]) -> Result<Self, PermError> {
        let direct = Perm::from_images(q)?;
        Ok(InverseRep {
            preimages: direct.raw().to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.preimages.len()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.preimages
    }

    /// 1-indexed preimage array.
    pub fn preimages(&self) -> Vec<usize> {
        self.preimages.iter().map(|&x| x as usize + 1).collect()
    }

    /// Direct-image form of the represented perm, at this rep's degree.
    pub fn to_perm(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &q) in self.preimages.iter().enumerate() {
            images[q as usize] = i as u32;
        }
        Perm::from_raw(images)
    }

    /// Direct form padded with fixed points up to `degree`.
    pub(crate) fn to_perm_with_degree(&self, degree: usize) -> Perm {
        debug_assert!(degree >= self.degree());
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &q) in self.preimages.iter().enumerate() {
            images[q as usize] = i as u32;
        }
        Perm::from_raw(images)
    }

    pub fn is_identity(&self) -> bool {
        self.preimages
            .iter()
            .enumerate()
            .all(|(i, &x)| i as u32 == x)
    }
}

fn fitted(p: &Perm, degree: usize) -> Result<Perm, PermError> {
    if p.degree() == degree {
        Ok(p.clone())
    } else {
        p.with_degree(degree)
    }
}

/// `p * s^-1`, computed as `d[i] = q[p[i]]`. The result has degree `s.degree()`.
pub fn mult_by_inverse_transversal(p: &Perm, s: &InverseRep) -> Result<Perm, PermError> {
    let mut d = fitted(p, s.degree())?.images;
    right_divide_in_place(&mut d, s.raw());
    Ok(Perm::from_raw(d))
}

/// `s * p`, computed as `d[q[i]] = p[i]`. The result has degree `s.degree()`.
pub fn mult_transversal_by_perm(s: &InverseRep, p: &Perm) -> Result<Perm, PermError> {
    let p = fitted(p, s.degree())?;
    let mut d = vec![0; s.degree()];
    transversal_times_into(s.raw(), p.raw(), &mut d);
    Ok(Perm::from_raw(d))
}

/// `work <- work * s^-1` on the first `q.len()` entries. `work` must fix every
/// point at or above `q.len()` (0-based), so entries past the prefix are untouched.
#[inline]
pub(crate) fn right_divide_in_place(work: &mut [u32], q: &[u32]) {
    let k = q.len();
    for x in &mut work[..k] {
        *x = q[*x as usize];
    }
}

/// `out <- s * p` where `s` has inverse images `q` of length `k` and `p` fixes
/// every point past `k`. `out` and `p` share a length of at least `k`.
#[inline]
pub(crate) fn transversal_times_into(q: &[u32], p: &[u32], out: &mut [u32]) {
    let k = q.len();
    for i in 0..k {
        out[q[i] as usize] = p[i];
    }
    out[k..].copy_from_slice(&p[k..]);
    debug_assert!(is_permutation(out));
}
