//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Products act on the right: `a.then(&b)` maps `x` to `b(a(x))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Parse("image array is not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    #[must_use]
    pub fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                images[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[must_use]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    #[must_use]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    #[must_use]
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    #[must_use]
    pub fn pow(&self, mut e: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// `g^-1 · self · g` in the right-action convention: maps `x^g` to `x^(self g)`.
    #[must_use]
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[g.images[x] as usize] = g.images[y as usize];
        }
        Perm { images }
    }

    /// Order as the lcm of cycle lengths.
    #[must_use]
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            ord = ord / crate::arith::gcd(ord, len) * len;
        }
        ord
    }

    #[must_use]
    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.images.len() as u32)
            .filter(|&i| self.images[i as usize] == i)
            .collect()
    }

    /// Smallest point moved, if any.
    #[must_use]
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Image of a set, sorted.
    #[must_use]
    pub fn image_of_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.images[x as usize]).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let s = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let g = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let c = s.conjugate_by(&g);
        assert_eq!(c, g.inverse().then(&s).then(&g));
    }

    #[test]
    fn order_is_lcm_of_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }
}
