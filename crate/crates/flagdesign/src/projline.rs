//! The projective line PG(1,q), semilinear maps and Baer sublines.
//!
//! Points are indexed `0 = ∞ = (1:0)` and `1 + a` for the affine point `a = (a:1)`,
//! with `a` the integer encoding of the field element.

use std::collections::BTreeSet;

use crate::arith::exact_sqrt;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::perm::Perm;

/// Homogeneous coordinates `(x0 : x1)` normalised so the last nonzero entry is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub x0: Elem,
    pub x1: Elem,
}

impl ProjPoint {
    pub const INFINITY: ProjPoint = ProjPoint { x0: 1, x1: 0 };

    #[must_use]
    pub fn affine(a: Elem) -> Self {
        ProjPoint { x0: a, x1: 1 }
    }

    /// Canonical representative of `(x0 : x1)`; `None` for the zero vector.
    #[must_use]
    pub fn normalize(k: &FieldSpec, x0: Elem, x1: Elem) -> Option<Self> {
        if x1 != 0 {
            let inv = k.inv(x1).ok()?;
            Some(ProjPoint {
                x0: k.mul(x0, inv),
                x1: 1,
            })
        } else if x0 != 0 {
            Some(Self::INFINITY)
        } else {
            None
        }
    }

    #[must_use]
    pub fn index(self) -> u32 {
        if self.x1 == 0 {
            0
        } else {
            self.x0 + 1
        }
    }

    #[must_use]
    pub fn from_index(i: u32) -> Self {
        if i == 0 {
            Self::INFINITY
        } else {
            Self::affine(i - 1)
        }
    }
}

/// All q+1 points: ∞ first, then the affine points in encoding order.
#[must_use]
pub fn proj_points(k: &FieldSpec) -> Vec<ProjPoint> {
    (0..=k.q()).map(ProjPoint::from_index).collect()
}

/// `v ↦ A · v^(p^e)`; `matrix` is row-major `[a, b, c, d]` acting on column vectors,
/// so the affine action is `x ↦ (a x^σ + b) / (c x^σ + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    pub matrix: [Elem; 4],
    pub frob: u32,
}

impl SemilinearMap {
    pub fn new(k: &FieldSpec, matrix: [Elem; 4], frob: u32) -> Result<Self> {
        if det(k, &matrix) == 0 {
            return Err(Error::ConstructionFailed("singular matrix".into()));
        }
        Ok(SemilinearMap {
            matrix,
            frob: frob % k.f(),
        })
    }

    #[must_use]
    pub fn mobius(matrix: [Elem; 4]) -> Self {
        SemilinearMap { matrix, frob: 0 }
    }

    #[must_use]
    pub fn identity() -> Self {
        Self::mobius([1, 0, 0, 1])
    }

    #[must_use]
    pub fn frobenius(e: u32) -> Self {
        SemilinearMap {
            matrix: [1, 0, 0, 1],
            frob: e,
        }
    }

    /// `(A,e)∘(B,e') = (A·B^(p^e), e+e')`: apply `other` first, then `self`.
    #[must_use]
    pub fn compose(&self, k: &FieldSpec, other: &SemilinearMap) -> SemilinearMap {
        let b = other.matrix.map(|x| k.frob(x, self.frob));
        let a = &self.matrix;
        let m = [
            k.add(k.mul(a[0], b[0]), k.mul(a[1], b[2])),
            k.add(k.mul(a[0], b[1]), k.mul(a[1], b[3])),
            k.add(k.mul(a[2], b[0]), k.mul(a[3], b[2])),
            k.add(k.mul(a[2], b[1]), k.mul(a[3], b[3])),
        ];
        SemilinearMap {
            matrix: m,
            frob: (self.frob + other.frob) % k.f(),
        }
    }

    #[must_use]
    pub fn apply(&self, k: &FieldSpec, pt: ProjPoint) -> ProjPoint {
        let x0 = k.frob(pt.x0, self.frob);
        let x1 = k.frob(pt.x1, self.frob);
        let m = &self.matrix;
        let y0 = k.add(k.mul(m[0], x0), k.mul(m[1], x1));
        let y1 = k.add(k.mul(m[2], x0), k.mul(m[3], x1));
        ProjPoint::normalize(k, y0, y1).expect("nonsingular map")
    }

    /// The permutation of `proj_points` induced by the map.
    #[must_use]
    pub fn to_perm(&self, k: &FieldSpec) -> Perm {
        Perm::from_images_unchecked(
            (0..=k.q())
                .map(|i| self.apply(k, ProjPoint::from_index(i)).index())
                .collect(),
        )
    }
}

#[must_use]
pub fn det(k: &FieldSpec, m: &[Elem; 4]) -> Elem {
    k.sub(k.mul(m[0], m[3]), k.mul(m[1], m[2]))
}

/// Applies the map to a point.
#[must_use]
pub fn apply_map(k: &FieldSpec, m: &SemilinearMap, pt: ProjPoint) -> ProjPoint {
    m.apply(k, pt)
}

/// The Möbius map sending ∞, 0, 1 to `a`, `b`, `c`.
pub fn mobius_through(k: &FieldSpec, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> Result<SemilinearMap> {
    // Columns λA and μB with λA + μB = C.
    let d = k.sub(k.mul(a.x0, b.x1), k.mul(b.x0, a.x1));
    if d == 0 || a == c || b == c {
        return Err(Error::ConstructionFailed("points are not distinct".into()));
    }
    let lambda = k.div(k.sub(k.mul(c.x0, b.x1), k.mul(b.x0, c.x1)), d)?;
    let mu = k.div(k.sub(k.mul(a.x0, c.x1), k.mul(c.x0, a.x1)), d)?;
    SemilinearMap::new(
        k,
        [
            k.mul(lambda, a.x0),
            k.mul(mu, b.x0),
            k.mul(lambda, a.x1),
            k.mul(mu, b.x1),
        ],
        0,
    )
}

fn sqrt_subfield(k: &FieldSpec) -> Result<(FieldSpec, Vec<Elem>)> {
    if k.f() % 2 != 0 {
        return Err(Error::NotASquare(u64::from(k.q())));
    }
    debug_assert!(exact_sqrt(u64::from(k.q())).is_some());
    k.subfield(k.f() / 2)
}

/// Point indices of the standard subline PG(1,√q) = {∞} ∪ GF(√q).
pub fn standard_subline(k: &FieldSpec) -> Result<Vec<u32>> {
    let (sub, emb) = sqrt_subfield(k)?;
    let mut pts: Vec<u32> = std::iter::once(0)
        .chain(sub.elements().map(|a| emb[a as usize] + 1))
        .collect();
    pts.sort_unstable();
    Ok(pts)
}

/// The Baer subline through three distinct points, as sorted point indices.
pub fn baer_subline_through(k: &FieldSpec, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> Result<Vec<u32>> {
    let base = standard_subline(k)?;
    let m = mobius_through(k, a, b, c)?;
    let mut pts: Vec<u32> = base
        .iter()
        .map(|&i| m.apply(k, ProjPoint::from_index(i)).index())
        .collect();
    pts.sort_unstable();
    Ok(pts)
}

/// All Baer sublines, deduplicated and sorted lexicographically.
pub fn all_baer_sublines(k: &FieldSpec) -> Result<Vec<Vec<u32>>> {
    sqrt_subfield(k)?;
    let n = k.q() + 1;
    let mut seen = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let s = baer_subline_through(
                    k,
                    ProjPoint::from_index(x),
                    ProjPoint::from_index(y),
                    ProjPoint::from_index(z),
                )?;
                seen.insert(s);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(proj_points(&FieldSpec::new(2, 2).unwrap()).len(), 5);
        assert_eq!(proj_points(&FieldSpec::new(5, 2).unwrap()).len(), 26);
        assert_eq!(proj_points(&FieldSpec::new(3, 4).unwrap()).len(), 82);
    }

    #[test]
    fn translation_over_gf4() {
        let k = FieldSpec::new(2, 2).unwrap();
        let t = SemilinearMap::mobius([1, 1, 0, 1]).to_perm(&k);
        assert_eq!(t.image(0), 0);
        assert_eq!(t.order(), 2);
        assert!((1..5).all(|i| t.image(i) != i));
    }

    #[test]
    fn inversion_swaps_zero_and_infinity() {
        let k = FieldSpec::new(7, 1).unwrap();
        let m = SemilinearMap::mobius([0, 1, 1, 0]);
        assert_eq!(m.apply(&k, ProjPoint::affine(0)), ProjPoint::INFINITY);
        assert_eq!(m.apply(&k, ProjPoint::INFINITY), ProjPoint::affine(0));
    }

    #[test]
    fn frobenius_fixes_the_prime_subline() {
        let k = FieldSpec::new(5, 2).unwrap();
        let fixed: Vec<u32> = (0..26)
            .filter(|&i| SemilinearMap::frobenius(1).apply(&k, ProjPoint::from_index(i)).index() == i)
            .collect();
        assert_eq!(fixed, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn q9_standard_subline() {
        let k = FieldSpec::new(3, 2).unwrap();
        let s = baer_subline_through(&k, ProjPoint::INFINITY, ProjPoint::affine(0), ProjPoint::affine(1)).unwrap();
        // ∞ and the affine points 0, 1, 2
        assert_eq!(s, vec![0, 1, 2, 3]);
    }

    #[test]
    fn subline_counts() {
        assert_eq!(all_baer_sublines(&FieldSpec::new(3, 2).unwrap()).unwrap().len(), 30);
        assert_eq!(all_baer_sublines(&FieldSpec::new(5, 2).unwrap()).unwrap().len(), 130);
        assert_eq!(
            all_baer_sublines(&FieldSpec::new(7, 1).unwrap()),
            Err(Error::NotASquare(7))
        );
    }
}
