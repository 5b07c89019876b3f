//! Type-D root-system computations: the Weyl group as signed permutations,
//! longest elements of the full group and of a Levi of type A x A3, and the
//! simple-root action of their product, whose behavior on the A3 factor
//! flips exactly when the rank is even.

use crate::error::{Error, Result};

/// The root system of type D of the given rank, with simple roots in the
/// standard coordinates: a_i = e_i - e_{i+1} for i < r and a_r = e_{r-1} + e_r.
pub struct RootSystemD {
    rank: usize,
    simple: Vec<Vec<i64>>,
}

/// An element of the Weyl group: a permutation of coordinates with signs,
/// sending e_j to sign[j] e_{perm[j]}. Elements produced by reflections in
/// roots always carry an even number of minus signs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i64>,
}

impl SignedPerm {
    pub fn identity(rank: usize) -> Self {
        SignedPerm { perm: (0..rank).collect(), sign: vec![1; rank] }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (j, &x) in v.iter().enumerate() {
            out[self.perm[j]] += self.sign[j] * x;
        }
        out
    }

    /// Composition acting as `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let rank = self.rank();
        let mut perm = vec![0; rank];
        let mut sign = vec![1; rank];
        for j in 0..rank {
            perm[j] = self.perm[other.perm[j]];
            sign[j] = other.sign[j] * self.sign[other.perm[j]];
        }
        SignedPerm { perm, sign }
    }

    pub fn num_sign_changes(&self) -> usize {
        self.sign.iter().filter(|&&s| s < 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.sign.iter().all(|&s| s == 1)
    }

    /// The matrix of the element, row i column j being the coefficient of
    /// e_i in the image of e_j.
    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0; r]; r];
        for j in 0..r {
            m[self.perm[j]][j] = self.sign[j];
        }
        m
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A root is positive exactly when its first nonzero coordinate is.
fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

impl RootSystemD {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 4 {
            return Err(Error::BadInput("type D needs rank at least 4".into()));
        }
        let mut simple = Vec::with_capacity(rank);
        for i in 0..rank - 1 {
            let mut v = vec![0; rank];
            v[i] = 1;
            v[i + 1] = -1;
            simple.push(v);
        }
        let mut v = vec![0; rank];
        v[rank - 2] = 1;
        v[rank - 1] = 1;
        simple.push(v);
        Ok(RootSystemD { rank, simple })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Simple root with 1-based index i.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple[i - 1]
    }

    /// All positive roots e_i - e_j and e_i + e_j with i < j.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                for s in [-1i64, 1] {
                    let mut v = vec![0; self.rank];
                    v[i] = 1;
                    v[j] = s;
                    out.push(v);
                }
            }
        }
        out
    }

    /// The reflection in the simple root with 1-based index i, as a signed
    /// permutation. All type-D roots have squared length 2, so the
    /// reflection is v - (v, a) a.
    pub fn simple_reflection(&self, i: usize) -> SignedPerm {
        let alpha = &self.simple[i - 1];
        let mut w = SignedPerm::identity(self.rank);
        for j in 0..self.rank {
            let mut e = vec![0; self.rank];
            e[j] = 1;
            let c = dot(&e, alpha);
            for (k, &a) in alpha.iter().enumerate() {
                e[k] -= c * a;
            }
            let pos = e.iter().position(|&x| x != 0).expect("reflection image is nonzero");
            w.perm[j] = pos;
            w.sign[j] = e[pos];
        }
        w
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &SignedPerm) -> usize {
        self.positive_roots()
            .iter()
            .filter(|r| !is_positive(&w.apply(r)))
            .count()
    }

    /// Longest element of the parabolic subgroup generated by the given
    /// simple reflections (1-based indices), by greedy descent: keep
    /// multiplying by a simple reflection whose root is still sent to a
    /// positive root.
    pub fn longest_element(&self, subset: &[usize]) -> SignedPerm {
        let refl: Vec<SignedPerm> = subset.iter().map(|&i| self.simple_reflection(i)).collect();
        let mut w = SignedPerm::identity(self.rank);
        loop {
            let next = subset
                .iter()
                .position(|&i| is_positive(&w.apply(self.simple_root(i))));
            match next {
                Some(k) => w = w.compose(&refl[k]),
                None => return w,
            }
        }
    }

    /// Longest element of the whole group.
    pub fn longest(&self) -> SignedPerm {
        self.longest_element(&(1..=self.rank).collect::<Vec<_>>())
    }
}

/// The simple-root action of w0 = w_G w_M for the Levi of type
/// A_{n-1} x A3 inside D_{n+3}: the A part on simple roots 1..n-1 and the
/// A3 part on the last three simple roots.
pub struct LeviAction {
    pub n: usize,
    pub rank: usize,
    /// Images of the Levi's simple roots: pairs (i, j) with w0(a_i) = a_j,
    /// 1-based indices.
    pub action: Vec<(usize, usize)>,
    /// Whether the two outer simple roots of the A3 factor are swapped.
    pub a3_flipped: bool,
    /// Whether the A_{n-1} factor is reversed, a_j going to a_{n-j}.
    pub a_factor_flipped: bool,
    pub length_w0: usize,
}

/// Levi simple-root indices (1-based) for the A_{n-1} x A3 Levi in D_{n+3}.
fn levi_subset(n: usize, rank: usize) -> Vec<usize> {
    let mut subset: Vec<usize> = (1..n).collect();
    subset.extend([rank - 2, rank - 1, rank]);
    subset
}

pub fn w0_for_levi(n: usize) -> Result<LeviAction> {
    if !(1..=8).contains(&n) {
        return Err(Error::BadInput("supported range is 1 through 8".into()));
    }
    let rank = n + 3;
    let d = RootSystemD::new(rank)?;
    let subset = levi_subset(n, rank);
    let w_g = d.longest();
    let w_m = d.longest_element(&subset);
    let w0 = w_g.compose(&w_m);

    let mut action = Vec::with_capacity(subset.len());
    for &i in &subset {
        let image = w0.apply(d.simple_root(i));
        let j = subset
            .iter()
            .copied()
            .find(|&j| *d.simple_root(j) == image)
            .ok_or_else(|| {
                Error::Inconsistency(format!(
                    "image of simple root {i} is not a Levi simple root"
                ))
            })?;
        action.push((i, j));
    }
    let image_of = |i: usize| action.iter().find(|&&(a, _)| a == i).map(|&(_, b)| b);
    let a3_flipped = image_of(rank - 1) == Some(rank);
    let a_factor_flipped = (1..n).all(|j| image_of(j) == Some(n - j));

    let length_w0 = d.length(&w0);
    if length_w0 != d.length(&w_g) - d.length(&w_m) {
        return Err(Error::Inconsistency("length of w0 is not the difference".into()));
    }
    Ok(LeviAction { n, rank, action, a3_flipped, a_factor_flipped, length_w0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_of_full_group() {
        for rank in 4..=9 {
            let d = RootSystemD::new(rank).unwrap();
            let w = d.longest();
            let m = w.to_matrix();
            for i in 0..rank {
                for j in 0..rank {
                    let expected = if i != j {
                        0
                    } else if rank % 2 == 0 || i != rank - 1 {
                        -1
                    } else {
                        1
                    };
                    assert_eq!(m[i][j], expected, "rank {rank} entry ({i},{j})");
                }
            }
            assert_eq!(d.length(&w), rank * (rank - 1));
            assert!(w.compose(&w).is_identity());
        }
    }

    #[test]
    fn empty_subset_gives_identity() {
        let d = RootSystemD::new(5).unwrap();
        assert!(d.longest_element(&[]).is_identity());
    }

    #[test]
    fn sign_changes_stay_even() {
        let d = RootSystemD::new(6).unwrap();
        let mut w = SignedPerm::identity(6);
        for i in [1, 6, 3, 5, 2, 6, 4, 1] {
            w = w.compose(&d.simple_reflection(i));
            assert_eq!(w.num_sign_changes() % 2, 0);
        }
    }

    #[test]
    fn rank4_swaps_last_two() {
        let act = w0_for_levi(1).unwrap();
        assert!(act.a3_flipped);
        assert!(act.action.contains(&(3, 4)));
        assert!(act.action.contains(&(4, 3)));
        assert!(act.action.contains(&(2, 2)));
    }

    #[test]
    fn rank5_fixes_the_a3_factor() {
        let act = w0_for_levi(2).unwrap();
        assert!(!act.a3_flipped);
        assert!(act.action.contains(&(4, 4)));
        assert!(act.action.contains(&(5, 5)));
        assert!(act.action.contains(&(1, 1)));
    }

    #[test]
    fn rank6_flips_both_factors() {
        let act = w0_for_levi(3).unwrap();
        assert!(act.a3_flipped);
        assert!(act.action.contains(&(1, 2)));
        assert!(act.action.contains(&(2, 1)));
    }

    #[test]
    fn parity_dichotomy() {
        for n in 1..=8 {
            let act = w0_for_levi(n).unwrap();
            assert_eq!(act.a3_flipped, act.rank % 2 == 0, "n = {n}");
            if n >= 2 {
                assert!(act.a_factor_flipped, "n = {n}");
            }
            // the middle simple root of the A3 factor never moves
            assert!(act.action.contains(&(act.rank - 2, act.rank - 2)));
            // the action permutes the Levi's simple roots
            let mut images: Vec<usize> = act.action.iter().map(|&(_, j)| j).collect();
            images.sort_unstable();
            let mut sources: Vec<usize> = act.action.iter().map(|&(i, _)| i).collect();
            sources.sort_unstable();
            assert_eq!(images, sources);
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(w0_for_levi(0).is_err());
        assert!(w0_for_levi(9).is_err());
        assert!(RootSystemD::new(3).is_err());
    }
}
