//! Incidence structures, 2-design verification and flag-transitivity.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{coset_action, Bounds, GenGroup};

/// Points `0..v` and a multiset of blocks, each sorted; the block list is sorted too.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub v: usize,
    pub blocks: Vec<Vec<u32>>,
}

impl IncidenceStructure {
    pub fn new(v: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        for b in &blocks {
            if b.iter().any(|&x| x as usize >= v) {
                return Err(Error::Parse(format!("block {b:?} has a point outside 0..{v}")));
            }
        }
        blocks.sort();
        Ok(IncidenceStructure { v, blocks })
    }

    #[must_use]
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Common block size, if all blocks have one.
    #[must_use]
    pub fn block_size(&self) -> Option<usize> {
        let k = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }

    /// Number of blocks through each point.
    #[must_use]
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.v];
        for b in &self.blocks {
            for &x in b {
                r[x as usize] += 1;
            }
        }
        r
    }

    /// Pair counts as a dense `v × v` upper-triangular table (row-major, `i < j`).
    #[must_use]
    pub fn pair_counts(&self) -> Vec<u64> {
        let v = self.v;
        let mut c = vec![0u64; v * v];
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    c[x as usize * v + y as usize] += 1;
                }
            }
        }
        c
    }
}

/// Parameters `2-(v,k,λ)` with `b` blocks and replication `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DesignParams {
    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.b == self.v
    }

    /// `k = 2` or `k ≥ v-1`.
    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.k <= 2 || self.k + 1 >= self.v
    }

    #[must_use]
    pub fn short(&self) -> String {
        format!("2-({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Checks every pair of points.
///
/// On failure the witness is the first pair (lexicographically) of least count among
/// points lying on some block; if those pairs are all balanced, the first pair
/// involving a point on no block.
pub fn verify_2design(d: &IncidenceStructure) -> Result<DesignParams> {
    let k = d.block_size().ok_or(Error::UnequalBlockSizes)?;
    let v = d.v;
    let counts = d.pair_counts();
    let rep = d.replication();
    let covered: Vec<usize> = (0..v).filter(|&x| rep[x] > 0).collect();
    let mut best: Option<((u32, u32), u64)> = None;
    let mut first: Option<u64> = None;
    let mut balanced = true;
    for (i, &x) in covered.iter().enumerate() {
        for &y in &covered[i + 1..] {
            let c = counts[x * v + y];
            match first {
                None => first = Some(c),
                Some(f) if f != c => balanced = false,
                _ => {}
            }
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some(((x as u32, y as u32), c));
            }
        }
    }
    let lambda = first.unwrap_or(0);
    if !balanced {
        let (pair, count) = best.expect("at least one pair");
        let max = (0..v)
            .flat_map(|x| (x + 1..v).map(move |y| (x, y)))
            .map(|(x, y)| counts[x * v + y])
            .max()
            .unwrap_or(0);
        return Err(Error::NotTwoDesign {
            pair,
            count,
            expected: max,
        });
    }
    if covered.len() < v {
        let u = (0..v).find(|&x| rep[x] == 0).expect("uncovered point");
        let pair = if u == 0 { (0, 1) } else { (0, u as u32) };
        return Err(Error::NotTwoDesign {
            pair,
            count: 0,
            expected: lambda,
        });
    }
    let r = rep[0] as u64;
    Ok(DesignParams {
        v: v as u64,
        b: d.b() as u64,
        r,
        k: k as u64,
        lambda,
    })
}

/// The orbit of a base block under `g`.
pub fn orbit_design(g: &GenGroup, base: &[u32]) -> Result<IncidenceStructure> {
    let v = g.degree();
    let k = base.len();
    if k <= 2 || k + 1 >= v {
        return Err(Error::BlockSizeInvalid { v, k });
    }
    let orbit = g.set_orbit(base, usize::MAX)?;
    IncidenceStructure::new(v, orbit)
}

/// The orbit of a flag and the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCertificate {
    pub point: u32,
    pub block: usize,
    pub orbit_size: u64,
    pub flags: u64,
    pub preserves_design: bool,
}

impl FlagCertificate {
    #[must_use]
    pub fn flag_transitive(&self) -> bool {
        self.preserves_design && self.orbit_size == self.flags
    }
}

/// Orbit of the flag `(first point of the first block, first block)` on flags.
#[must_use]
pub fn is_flag_transitive(g: &GenGroup, d: &IncidenceStructure) -> (bool, FlagCertificate) {
    let flags: u64 = d.blocks.iter().map(|b| b.len() as u64).sum();
    let Some(b0) = d.blocks.first() else {
        let cert = FlagCertificate {
            point: 0,
            block: 0,
            orbit_size: 0,
            flags,
            preserves_design: true,
        };
        return (false, cert);
    };
    let index: HashMap<&[u32], usize> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let preserves = g.degree() == d.v
        && g.generators().iter().all(|s| {
            d.blocks
                .iter()
                .all(|b| index.contains_key(s.image_of_set(b).as_slice()))
        });
    let start = (b0[0], 0usize);
    let mut cert = FlagCertificate {
        point: start.0,
        block: start.1,
        orbit_size: 0,
        flags,
        preserves_design: preserves,
    };
    if !preserves {
        return (false, cert);
    }
    let mut seen = HashSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some((x, bi)) = stack.pop() {
        for s in g.generators() {
            let img = s.image_of_set(&d.blocks[bi]);
            let y = (s.image(x), index[img.as_slice()]);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    cert.orbit_size = seen.len() as u64;
    (cert.flag_transitive(), cert)
}

/// Each block replaced by its complement.
#[must_use]
pub fn complement(d: &IncidenceStructure) -> IncidenceStructure {
    let blocks = d
        .blocks
        .iter()
        .map(|b| (0..d.v as u32).filter(|x| b.binary_search(x).is_err()).collect())
        .collect();
    IncidenceStructure::new(d.v, blocks).expect("points in range")
}

/// Points are right cosets of `p`, blocks right cosets of `q`, incident when they meet.
pub fn coset_geometry(g: &GenGroup, p: &GenGroup, q: &GenGroup, bounds: &Bounds) -> Result<IncidenceStructure> {
    if !g.contains_group(p) || !g.contains_group(q) {
        return Err(Error::NotASubgroup);
    }
    let (points, ptable) = coset_action(g, p, bounds)?;
    let v = points.degree();
    // Q x meets P y iff P y lies in the Q x-orbit image of the coset P
    let qimage = GenGroup::new(v, q.generators().iter().map(|s| ptable.act(s)).collect())?;
    let base = qimage.orbit(0);
    let blocks = if q.order() == g.order() {
        vec![base]
    } else {
        let (_, qtable) = coset_action(g, q, bounds)?;
        qtable
            .representatives()
            .iter()
            .map(|x| ptable.act(x).image_of_set(&base))
            .collect()
    };
    IncidenceStructure::new(v, blocks)
}

/// Paley 2-(p,(p-1)/2,(p-3)/4) design: translates of the nonzero squares mod `p`, `p ≡ 3 (mod 4)`.
pub fn paley_design(p: u32) -> Result<IncidenceStructure> {
    if !crate::arith::is_prime(u64::from(p)) || p % 4 != 3 {
        return Err(Error::ConstructionFailed(format!("Paley design needs a prime p ≡ 3 mod 4, got {p}")));
    }
    let squares: HashSet<u32> = (1..p).map(|x| x * x % p).collect();
    let blocks = (0..p)
        .map(|t| squares.iter().map(|&s| (s + t) % p).collect())
        .collect();
    IncidenceStructure::new(p as usize, blocks)
}

/// Group reference plus base block, as carried by the Design JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: String,
    pub base_block: Vec<u32>,
    pub flag_orbit_size: u64,
}

/// `{"v", "blocks", "params"?, "certificate"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignJson {
    pub v: usize,
    pub blocks: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<DesignParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl DesignJson {
    #[must_use]
    pub fn from_design(d: &IncidenceStructure) -> Self {
        DesignJson {
            v: d.v,
            blocks: d.blocks.clone(),
            params: verify_2design(d).ok(),
            certificate: None,
        }
    }

    pub fn structure(&self) -> Result<IncidenceStructure> {
        IncidenceStructure::new(self.v, self.blocks.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn refutation_witness() {
        let d = IncidenceStructure::new(5, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        match verify_2design(&d) {
            Err(Error::NotTwoDesign { pair, count, .. }) => {
                assert_eq!(pair, (2, 3));
                assert_eq!(count, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unequal_blocks_rejected() {
        let d = IncidenceStructure::new(5, vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert_eq!(verify_2design(&d), Err(Error::UnequalBlockSizes));
    }

    #[test]
    fn paley_and_complement() {
        let p = paley_design(11).unwrap();
        let pp = verify_2design(&p).unwrap();
        assert_eq!((pp.v, pp.b, pp.r, pp.k, pp.lambda), (11, 11, 5, 5, 2));
        let c = verify_2design(&complement(&p)).unwrap();
        assert_eq!((c.v, c.b, c.r, c.k, c.lambda), (11, 11, 6, 6, 3));
        assert_eq!(complement(&complement(&p)), p);
    }

    #[test]
    fn trivial_group_is_not_flag_transitive() {
        let d = IncidenceStructure::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let (ft, cert) = is_flag_transitive(&GenGroup::trivial(5), &d);
        assert!(!ft);
        assert_eq!(cert.orbit_size, 1);
    }

    #[test]
    fn orbit_design_under_cyclic_group() {
        let c7 = GenGroup::new(7, vec![Perm::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap()]).unwrap();
        // {0,1,3} is a difference set mod 7: the Fano plane
        let d = orbit_design(&c7, &[0, 1, 3]).unwrap();
        let p = verify_2design(&d).unwrap();
        assert_eq!((p.b, p.r, p.lambda), (7, 3, 1));
        assert!(is_flag_transitive(&c7, &d).1.orbit_size == 7);
        assert_eq!(orbit_design(&c7, &[0, 1]), Err(Error::BlockSizeInvalid { v: 7, k: 2 }));
    }
}
